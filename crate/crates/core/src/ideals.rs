//! Ad-nilpotent ideals of a Borel subalgebra of `s` (up-closed sets of
//! positive roots) and the Borel subalgebras of the superalgebra they
//! produce.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::linalg::{q, q_frac, Rational};
use crate::rootsys::RootDatum;
use crate::{Error, Result};

/// A set of positive roots, stored as a bitset over the root order of the
/// datum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RootIdeal {
    pub bits: u64,
}

impl RootIdeal {
    pub fn empty() -> Self {
        RootIdeal { bits: 0 }
    }

    pub fn full(np: usize) -> Self {
        RootIdeal {
            bits: if np == 64 { u64::MAX } else { (1u64 << np) - 1 },
        }
    }

    pub fn from_members(members: &[usize]) -> Self {
        RootIdeal {
            bits: members.iter().fold(0, |b, &k| b | (1u64 << k)),
        }
    }

    pub fn contains(&self, k: usize) -> bool {
        self.bits >> k & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn members(&self) -> Vec<usize> {
        (0..64).filter(|&k| self.contains(k)).collect()
    }

    fn with(&self, k: usize) -> Self {
        RootIdeal { bits: self.bits | 1 << k }
    }
}

impl fmt::Display for RootIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, k) in self.members().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str("}")
    }
}

fn check_size(rd: &RootDatum) -> Result<usize> {
    let np = rd.num_positive_roots();
    if np > 64 {
        return Err(Error::DimensionCap {
            needed: np as u128,
            cap: 64,
        });
    }
    Ok(np)
}

/// `up[k]`: indices of the roots `α_k + α_i` for simple `α_i`.
fn cover_table(rd: &RootDatum) -> Vec<Vec<usize>> {
    let roots = rd.positive_roots();
    roots
        .iter()
        .map(|c| {
            (0..rd.rank())
                .filter_map(|i| {
                    let mut d = c.clone();
                    d[i] += 1;
                    rd.root_position(&d)
                })
                .collect()
        })
        .collect()
}

/// Up-closure under adding simple roots, which generates the relation
/// `α ≤ α + β`.
pub fn is_ideal(rd: &RootDatum, set: &RootIdeal) -> bool {
    let np = rd.num_positive_roots();
    if np < 64 && set.bits >> np != 0 {
        return false;
    }
    let up = cover_table(rd);
    (0..np).filter(|&k| set.contains(k)).all(|k| up[k].iter().all(|&j| set.contains(j)))
}

/// All ideals, ordered by size and then by bit pattern.
pub fn enumerate_ideals(rd: &RootDatum) -> Result<Vec<RootIdeal>> {
    let np = check_size(rd)?;
    let up = cover_table(rd);
    let mut seen = BTreeSet::new();
    let mut stack = vec![RootIdeal::empty()];
    seen.insert(RootIdeal::empty());
    while let Some(cur) = stack.pop() {
        for k in 0..np {
            if cur.contains(k) || !up[k].iter().all(|&j| cur.contains(j)) {
                continue;
            }
            let next = cur.with(k);
            if seen.insert(next) {
                stack.push(next);
            }
        }
    }
    let mut out: Vec<RootIdeal> = seen.into_iter().collect();
    out.sort_by_key(|i| (i.len(), i.bits));
    Ok(out)
}

/// Number of conjugacy classes of Borel subalgebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BorelCount {
    /// `2/|W| · ∏ (h + e_i + 1)`.
    pub closed_form: u128,
    /// Twice the number of enumerated ideals, when the enumeration ran.
    pub enumerated: Option<u128>,
}

impl BorelCount {
    pub fn classes(&self) -> u128 {
        self.closed_form
    }
}

pub fn closed_form_count(rd: &RootDatum) -> u128 {
    let h = rd.coxeter_number() as u128;
    let prod: u128 = rd.exponents().iter().map(|&e| h + e as u128 + 1).product();
    2 * prod / rd.weyl_group_order()
}

/// Closed form and, when at most 64 positive roots, the enumeration. The two
/// must agree.
pub fn count_borel_classes(rd: &RootDatum) -> Result<BorelCount> {
    let closed_form = closed_form_count(rd);
    let enumerated = if rd.num_positive_roots() <= 64 {
        Some(2 * enumerate_ideals(rd)?.len() as u128)
    } else {
        None
    };
    if let Some(e) = enumerated {
        if e != closed_form {
            return Err(Error::Internal(format!(
                "{}: enumeration gives {e} Borel classes, closed form {closed_form}",
                rd.name()
            )));
        }
    }
    Ok(BorelCount {
        closed_form,
        enumerated,
    })
}

/// A subspace `N = b^s ⊕ span{s_{−α} : α ∈ negatives}` of `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ComplementIdeal {
    /// Positive roots `α` with `s_{−α} ⊆ N`.
    pub negatives: RootIdeal,
}

impl ComplementIdeal {
    pub fn dim(&self, rd: &RootDatum) -> usize {
        rd.num_positive_roots() + rd.rank() + self.negatives.len()
    }
}

/// `N ⊇ b^s` is stable under `b^s` iff whenever `s_{−α} ⊆ N` and `α − β` is
/// a positive root for positive `β`, also `s_{−(α−β)} ⊆ N`.
fn is_borel_stable(rd: &RootDatum, c: &ComplementIdeal) -> bool {
    let roots = rd.positive_roots();
    for a in c.negatives.members() {
        for b in 0..roots.len() {
            let d: Vec<i64> = roots[a].iter().zip(&roots[b]).map(|(x, y)| x - y).collect();
            if let Some(k) = rd.root_position(&d) {
                if !c.negatives.contains(k) {
                    return false;
                }
            }
        }
    }
    true
}

/// The ideal `N ⊇ b^s` matched with `N' ⊆ n^s`: it contains `s_{−α}` exactly
/// for the roots `α` outside `N'`.
pub fn complement_ideal(rd: &RootDatum, nprime: &RootIdeal) -> Result<ComplementIdeal> {
    let np = check_size(rd)?;
    if !is_ideal(rd, nprime) {
        return Err(Error::InvalidArgument(format!("{nprime} is not an ideal of {}", rd.name())));
    }
    let c = ComplementIdeal {
        negatives: RootIdeal {
            bits: !nprime.bits & RootIdeal::full(np).bits,
        },
    };
    if !is_borel_stable(rd, &c) {
        return Err(Error::Internal(format!("complement of {nprime} is not b-stable")));
    }
    Ok(c)
}

/// Inverse of [`complement_ideal`].
pub fn ideal_from_complement(rd: &RootDatum, c: &ComplementIdeal) -> Result<RootIdeal> {
    let np = check_size(rd)?;
    if !is_borel_stable(rd, c) {
        return Err(Error::InvalidArgument(String::from("subspace is not b-stable")));
    }
    let n = RootIdeal {
        bits: !c.negatives.bits & RootIdeal::full(np).bits,
    };
    if !is_ideal(rd, &n) {
        return Err(Error::Internal(format!("{n} is not up-closed")));
    }
    Ok(n)
}

/// `Σ coeffs_i x_i > rhs`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Strict {
    coeffs: Vec<Rational>,
    rhs: Rational,
}

impl Strict {
    /// Scales so that the first nonzero coefficient is ±1.
    fn normalized(mut self) -> Self {
        if let Some(c) = self.coeffs.iter().find(|c| !c.is_zero()).cloned() {
            let s = c.abs();
            for x in self.coeffs.iter_mut() {
                *x /= &s;
            }
            self.rhs /= &s;
        }
        self
    }
}

/// Keeps the tightest right-hand side per coefficient vector.
fn prune(system: Vec<Strict>) -> Result<Vec<Strict>> {
    let mut best: BTreeMap<Vec<Rational>, Rational> = BTreeMap::new();
    for c in system {
        let c = c.normalized();
        if c.coeffs.iter().all(|x| x.is_zero()) {
            if !c.rhs.is_negative() {
                return Err(Error::Internal(String::from("inequality system is infeasible")));
            }
            continue;
        }
        best.entry(c.coeffs)
            .and_modify(|r| {
                if c.rhs > *r {
                    *r = c.rhs.clone();
                }
            })
            .or_insert(c.rhs);
    }
    Ok(best.into_iter().map(|(coeffs, rhs)| Strict { coeffs, rhs }).collect())
}

/// A point satisfying all strict inequalities, by Fourier–Motzkin elimination
/// (last variable first) and back-substitution at interval midpoints.
fn solve_strict(n: usize, system: Vec<Strict>) -> Result<Vec<Rational>> {
    let mut levels: Vec<Vec<Strict>> = vec![Vec::new(); n];
    let mut cur = prune(system)?;
    for k in (0..n).rev() {
        levels[k] = cur.clone();
        if k == 0 {
            break;
        }
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for c in cur {
            if c.coeffs[k].is_positive() {
                pos.push(c);
            } else if c.coeffs[k].is_negative() {
                neg.push(c);
            } else {
                rest.push(c);
            }
        }
        for p in &pos {
            for m in &neg {
                let sp = p.coeffs[k].clone();
                let sm = -m.coeffs[k].clone();
                let coeffs = p.coeffs.iter().zip(&m.coeffs).map(|(x, y)| x / &sp + y / &sm).collect();
                rest.push(Strict {
                    coeffs,
                    rhs: &p.rhs / &sp + &m.rhs / &sm,
                });
            }
        }
        cur = prune(rest)?;
    }
    let mut x: Vec<Rational> = Vec::with_capacity(n);
    for (k, level) in levels.iter().enumerate() {
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for c in level {
            let a = &c.coeffs[k];
            if a.is_zero() {
                continue;
            }
            let mut r = c.rhs.clone();
            for (i, xi) in x.iter().enumerate() {
                r -= &c.coeffs[i] * xi;
            }
            let bound = r / a;
            if a.is_positive() {
                if lo.as_ref().is_none_or(|l| bound > *l) {
                    lo = Some(bound);
                }
            } else if hi.as_ref().is_none_or(|h| bound < *h) {
                hi = Some(bound);
            }
        }
        let v = match (lo, hi) {
            (Some(l), Some(h)) if l < h => (l + h) / q(2),
            (Some(_), Some(_)) => return Err(Error::Internal(String::from("empty interval during back-substitution"))),
            (Some(l), None) => l + q_frac(1, 2),
            (None, Some(h)) => h - q_frac(1, 2),
            (None, None) => q(0),
        };
        x.push(v);
    }
    Ok(x)
}

/// `α(h)` for the `k`-th positive root, `h` in fundamental-coweight
/// coordinates.
pub fn root_value(rd: &RootDatum, k: usize, h: &[Rational]) -> Rational {
    rd.positive_roots()[k].iter().zip(h).map(|(&c, x)| q(c) * x).fold(q(0), |a, b| a + b)
}

/// True when `α(h) > 1` on the ideal and `0 < α(h) < 1` elsewhere.
pub fn is_shi_witness(rd: &RootDatum, nprime: &RootIdeal, h: &[Rational]) -> bool {
    (0..rd.num_positive_roots()).all(|k| {
        let v = root_value(rd, k, h);
        if nprime.contains(k) {
            v > q(1)
        } else {
            v > q(0) && v < q(1)
        }
    })
}

/// An element `h` of the Cartan subalgebra, in fundamental-coweight
/// coordinates, with `α(h) > 1` exactly on the ideal and `0 < α(h) < 1` on
/// the other positive roots.
pub fn shi_witness(rd: &RootDatum, nprime: &RootIdeal) -> Result<Vec<Rational>> {
    let np = check_size(rd)?;
    if !is_ideal(rd, nprime) {
        return Err(Error::InvalidArgument(format!("{nprime} is not an ideal of {}", rd.name())));
    }
    let r = rd.rank();
    let mut system = Vec::new();
    for k in 0..np {
        let coeffs: Vec<Rational> = rd.positive_roots()[k].iter().map(|&c| q(c)).collect();
        if nprime.contains(k) {
            system.push(Strict { coeffs, rhs: q(1) });
        } else {
            let neg = coeffs.iter().map(|c| -c).collect();
            system.push(Strict { coeffs, rhs: q(0) });
            system.push(Strict { coeffs: neg, rhs: q(-1) });
        }
    }
    let h = solve_strict(r, system)?;
    if !is_shi_witness(rd, nprime, &h) {
        return Err(Error::Internal(format!("witness for {nprime} fails its inequalities")));
    }
    Ok(h)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BorelKind {
    /// Odd part `N ⊗ ξ` with `b^s ⊆ N`.
    ContainsBorel,
    /// Odd part `N' ⊗ ξ + C∂_ξ` with `N' ⊆ n^s`.
    InsideNilradical,
}

/// One Borel subalgebra with even part `b^s ⊕ Cξ∂_ξ`, with a regular element
/// `H = h ± ξ∂_ξ` that produces it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorelDescription {
    pub kind: BorelKind,
    /// The ideal `N' ⊆ n^s` the description is built from.
    pub ideal: RootIdeal,
    /// `s_{−α} ⊆ N` for these `α` (only for [`BorelKind::ContainsBorel`]).
    pub complement: Option<ComplementIdeal>,
    pub includes_del_xi: bool,
    /// `h`, in fundamental-coweight coordinates.
    pub h: Vec<Rational>,
    /// Coefficient of `ξ∂_ξ` in `H`.
    pub xi_coefficient: i64,
    pub odd_dim: usize,
}

/// Odd root vectors with positive `H`-eigenvalue, as (positive roots `α`
/// with `s_α ⊗ ξ`, negative roots `−α` with `s_{−α} ⊗ ξ`, `h ⊗ ξ` present,
/// `∂_ξ` present). `x ⊗ ξ` has eigenvalue `α(h) + c` and `∂_ξ` has `−c`.
fn odd_part(rd: &RootDatum, h: &[Rational], c: i64) -> Result<(RootIdeal, RootIdeal, bool, bool)> {
    let cq = q(c);
    let mut pos = RootIdeal::empty();
    let mut neg = RootIdeal::empty();
    for k in 0..rd.num_positive_roots() {
        let v = root_value(rd, k, h);
        for (val, set) in [(&v + &cq, &mut pos), (-&v + &cq, &mut neg)] {
            if val.is_zero() {
                return Err(Error::Internal(String::from("H is not regular")));
            }
            if val.is_positive() {
                *set = set.with(k);
            }
        }
    }
    Ok((pos, neg, c > 0, c < 0))
}

/// Both Borel subalgebras attached to every ideal, each checked against the
/// triangular decomposition of its regular element.
pub fn classify_borels(rd: &RootDatum) -> Result<Vec<BorelDescription>> {
    let np = check_size(rd)?;
    let r = rd.rank();
    let mut out = Vec::new();
    for ideal in enumerate_ideals(rd)? {
        let h = shi_witness(rd, &ideal)?;
        let comp = complement_ideal(rd, &ideal)?;
        let (pos, neg, cartan, del) = odd_part(rd, &h, 1)?;
        if pos != RootIdeal::full(np) || neg != comp.negatives || !cartan || del {
            return Err(Error::Internal(format!("H = h + ξ∂_ξ does not produce the Borel for {ideal}")));
        }
        out.push(BorelDescription {
            kind: BorelKind::ContainsBorel,
            ideal,
            complement: Some(comp),
            includes_del_xi: false,
            h: h.clone(),
            xi_coefficient: 1,
            odd_dim: comp.dim(rd),
        });
        let (pos, neg, cartan, del) = odd_part(rd, &h, -1)?;
        if pos != ideal || !neg.is_empty() || cartan || !del {
            return Err(Error::Internal(format!("H = h − ξ∂_ξ does not produce the Borel for {ideal}")));
        }
        out.push(BorelDescription {
            kind: BorelKind::InsideNilradical,
            ideal,
            complement: None,
            includes_del_xi: true,
            h,
            xi_coefficient: -1,
            odd_dim: ideal.len() + 1,
        });
    }
    debug_assert!(out.iter().all(|d| d.odd_dim <= 2 * np + r));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Series;

    fn rd(s: Series, r: usize) -> RootDatum {
        RootDatum::new(s, r).unwrap()
    }

    /// Up-closed subsets by brute force over all subsets.
    fn brute_force(x: &RootDatum) -> usize {
        let np = x.num_positive_roots();
        let roots = x.positive_roots();
        let mut count = 0;
        for bits in 0u64..(1 << np) {
            let ok = (0..np).all(|a| {
                bits >> a & 1 == 0
                    || (0..np).all(|b| {
                        let s: Vec<i64> = roots[a].iter().zip(&roots[b]).map(|(x, y)| x + y).collect();
                        x.root_position(&s).is_none_or(|k| bits >> k & 1 == 1)
                    })
            });
            if ok {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn enumeration() {
        assert_eq!(enumerate_ideals(&rd(Series::A, 1)).unwrap(), vec![RootIdeal::empty(), RootIdeal { bits: 1 }]);
        for (s, r, n) in [(Series::A, 2, 5), (Series::B, 2, 6), (Series::G, 2, 8), (Series::A, 3, 14), (Series::B, 3, 20)] {
            let x = rd(s, r);
            let ideals = enumerate_ideals(&x).unwrap();
            assert_eq!(ideals.len(), n);
            assert!(ideals.iter().all(|i| is_ideal(&x, i)));
            if x.num_positive_roots() <= 12 {
                assert_eq!(brute_force(&x), n);
            }
        }
    }

    #[test]
    fn counts() {
        for (s, r, n) in [
            (Series::A, 1, 4),
            (Series::A, 2, 10),
            (Series::A, 3, 28),
            (Series::B, 2, 12),
            (Series::C, 3, 40),
            (Series::D, 4, 100),
            (Series::G, 2, 16),
            (Series::F, 4, 210),
        ] {
            let c = count_borel_classes(&rd(s, r)).unwrap();
            assert_eq!(c.classes(), n);
            assert_eq!(c.enumerated, Some(n));
        }
        // 833 and 4160 ideals for E6 and E7 by enumeration
        assert_eq!(count_borel_classes(&rd(Series::E, 6)).unwrap().enumerated, Some(1666));
        assert_eq!(count_borel_classes(&rd(Series::E, 7)).unwrap().enumerated, Some(8320));
        let e8 = count_borel_classes(&rd(Series::E, 8)).unwrap();
        assert_eq!(e8.closed_form, 2 * 25080);
        assert_eq!(e8.enumerated, None);
        assert!(enumerate_ideals(&rd(Series::E, 8)).is_err());
    }

    #[test]
    fn complements() {
        let a2 = rd(Series::A, 2);
        let full = RootIdeal::full(3);
        assert_eq!(complement_ideal(&a2, &RootIdeal::empty()).unwrap().negatives, full);
        assert_eq!(complement_ideal(&a2, &full).unwrap().negatives, RootIdeal::empty());
        let theta = RootIdeal::from_members(&[a2.highest_root_index()]);
        let c = complement_ideal(&a2, &theta).unwrap();
        assert!(!c.negatives.contains(a2.highest_root_index()));
        assert_eq!(c.negatives.len(), 2);
        assert!(complement_ideal(&a2, &RootIdeal::from_members(&[0])).is_err());
        for x in [rd(Series::B, 3), rd(Series::G, 2)] {
            for i in enumerate_ideals(&x).unwrap() {
                let c = complement_ideal(&x, &i).unwrap();
                assert_eq!(ideal_from_complement(&x, &c).unwrap(), i);
            }
        }
    }

    #[test]
    fn witnesses() {
        let a1 = rd(Series::A, 1);
        assert_eq!(shi_witness(&a1, &RootIdeal { bits: 1 }).unwrap(), vec![q_frac(3, 2)]);
        let a2 = rd(Series::A, 2);
        let h = shi_witness(&a2, &RootIdeal::empty()).unwrap();
        assert!(is_shi_witness(&a2, &RootIdeal::empty(), &h));
        assert!(is_shi_witness(&a2, &RootIdeal::empty(), &[q_frac(1, 3), q_frac(1, 3)]));
        let theta = RootIdeal::from_members(&[a2.highest_root_index()]);
        assert!(is_shi_witness(&a2, &theta, &shi_witness(&a2, &theta).unwrap()));
        assert!(is_shi_witness(&a2, &theta, &[q_frac(2, 3), q_frac(2, 3)]));
        for (s, r) in [(Series::A, 3), (Series::B, 3), (Series::C, 3), (Series::D, 4), (Series::G, 2)] {
            let x = rd(s, r);
            for i in enumerate_ideals(&x).unwrap() {
                let h = shi_witness(&x, &i).unwrap();
                assert!(is_shi_witness(&x, &i, &h));
            }
        }
    }

    #[test]
    fn borels() {
        let a1 = rd(Series::A, 1);
        let b = classify_borels(&a1).unwrap();
        assert_eq!(b.len(), 4);
        let max = b.iter().max_by_key(|d| d.odd_dim).unwrap();
        assert_eq!((max.kind, max.ideal, max.odd_dim), (BorelKind::ContainsBorel, RootIdeal::empty(), 3));
        let min = b.iter().min_by_key(|d| d.odd_dim).unwrap();
        assert_eq!((min.kind, min.ideal, min.odd_dim), (BorelKind::InsideNilradical, RootIdeal::empty(), 1));
        let b2 = rd(Series::B, 2);
        assert_eq!(classify_borels(&b2).unwrap().len(), 12);
    }
}
