//! Block labels for the finite-dimensional category and for category O, and
//! explicit linkage chains connecting a simple module to its block
//! representative.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::rootsys::{RootDatum, Series, Weight};
use crate::takiff::{SuperWeight, Takiff};
use crate::{Error, Limits, Result};

/// The three `sl(2)` blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sl2Block {
    /// `[2n] + aδ`.
    Even,
    /// `[1+2n] + (2a−n)δ`.
    OddA,
    /// `[1+2n] + (2a−n−1)δ`.
    OddB,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BlockLabel {
    Minuscule(Weight),
    Sl2(Sl2Block),
}

impl fmt::Display for BlockLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockLabel::Minuscule(w) => write!(f, "{w}"),
            BlockLabel::Sl2(Sl2Block::Even) => f.write_str("even"),
            BlockLabel::Sl2(Sl2Block::OddA) => f.write_str("odd_a"),
            BlockLabel::Sl2(Sl2Block::OddB) => f.write_str("odd_b"),
        }
    }
}

/// Finite-dimensional category or category O.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Category {
    F,
    O,
}

fn is_sl2(rd: &RootDatum) -> bool {
    rd.series() == Series::A && rd.rank() == 1
}

fn sl2_label(m: i64, a: i64) -> Sl2Block {
    if m.rem_euclid(2) == 0 {
        return Sl2Block::Even;
    }
    let n = (m - 1).div_euclid(2);
    if (a + n).rem_euclid(2) == 0 {
        Sl2Block::OddA
    } else {
        Sl2Block::OddB
    }
}

/// Block of `L(x)` in category O; `x` need not be dominant.
pub fn block_label_o(rd: &RootDatum, x: &SuperWeight) -> Result<BlockLabel> {
    rd.check_rank(&x.lambda)?;
    Ok(if is_sl2(rd) {
        BlockLabel::Sl2(sl2_label(x.lambda.0[0], x.a))
    } else {
        BlockLabel::Minuscule(rd.minuscule_representative(&x.lambda))
    })
}

/// Block of the finite-dimensional simple module `L(x)`.
pub fn block_label_f(rd: &RootDatum, x: &SuperWeight) -> Result<BlockLabel> {
    rd.check_rank(&x.lambda)?;
    if !x.is_dominant() {
        return Err(Error::NotDominant(format!("{x}")));
    }
    block_label_o(rd, x)
}

/// Number of blocks; the same for both categories.
pub fn num_blocks(rd: &RootDatum, _category: Category) -> usize {
    if is_sl2(rd) {
        3
    } else {
        rd.det()
    }
}

/// All block labels of the type, in a fixed order.
pub fn block_labels(rd: &RootDatum) -> Vec<BlockLabel> {
    if is_sl2(rd) {
        [Sl2Block::Even, Sl2Block::OddA, Sl2Block::OddB].into_iter().map(BlockLabel::Sl2).collect()
    } else {
        rd.minuscule_weights().into_iter().map(BlockLabel::Minuscule).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkageRule {
    /// `λ + aδ` to `λ + 2ρ + (a−ℓ)δ`, or back.
    RaiseByTwoRho,
    /// `λ + bδ` to `λ − α_i + (b−1)δ`.
    RootDescent,
    /// `λ + bδ` to `λ + (b±1)δ`.
    LevelShift,
}

impl LinkageRule {
    pub fn name(self) -> &'static str {
        match self {
            LinkageRule::RaiseByTwoRho => "raise_2rho",
            LinkageRule::RootDescent => "root_descent",
            LinkageRule::LevelShift => "level_shift",
        }
    }
}

/// One edge of a linkage chain: `[Δ(standard) : L(simple)] = multiplicity > 0`
/// where `{standard, simple} = {from, to}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkageStep {
    pub from: SuperWeight,
    pub to: SuperWeight,
    pub rule: LinkageRule,
    pub standard: SuperWeight,
    pub simple: SuperWeight,
    pub multiplicity: BigInt,
}

/// Smallest `k ≥ 0` such that `p + 2kρ + β` is dominant for every root `β`
/// and every `p` on the path.
fn regular_shift(rd: &RootDatum, path: &[Weight]) -> i64 {
    let roots = rd.all_root_weights();
    let mut need = 0i64;
    for p in path {
        for b in &roots {
            for (x, y) in p.0.iter().zip(&b.0) {
                need = need.max(-(x + y));
            }
        }
    }
    (need + 1) / 2
}

/// Descent from `λ` to `ν` by simple roots, `λ − ν ∈ Q₊`.
fn descent_path(rd: &RootDatum, lambda: &Weight, nu: &Weight) -> Result<(Vec<Weight>, Vec<usize>)> {
    let mut c = rd
        .root_lattice_coords(&(lambda - nu))
        .ok_or_else(|| Error::Internal(format!("{lambda} and {nu} lie in different cosets")))?;
    if c.iter().any(|&x| x < 0) {
        return Err(Error::Internal(format!("{nu} is not below {lambda}")));
    }
    let mut path = alloc::vec![lambda.clone()];
    let mut order = Vec::new();
    let mut cur = lambda.clone();
    while let Some(i) = c.iter().position(|&x| x > 0) {
        c[i] -= 1;
        cur = &cur - rd.simple_root(i);
        path.push(cur.clone());
        order.push(i);
    }
    Ok((path, order))
}

struct ChainBuilder<'t, 'a> {
    tk: &'t Takiff<'a>,
    steps: Vec<LinkageStep>,
    cap: usize,
}

impl ChainBuilder<'_, '_> {
    /// Adds the edge `from → to`, witnessed by `[Δ(std) : L(simple)]`.
    /// Returns false when the witness vanishes.
    fn push(&mut self, from: SuperWeight, to: SuperWeight, rule: LinkageRule, downward: bool) -> Result<bool> {
        if self.steps.len() >= self.cap {
            return Err(Error::DimensionCap {
                needed: self.steps.len() as u128 + 1,
                cap: self.cap,
            });
        }
        let (standard, simple) = if downward { (from.clone(), to.clone()) } else { (to.clone(), from.clone()) };
        let m = self.tk.delta_mult(&standard, &simple)?;
        if m.is_zero() {
            return Ok(false);
        }
        self.steps.push(LinkageStep {
            from,
            to,
            rule,
            standard,
            simple,
            multiplicity: m,
        });
        Ok(true)
    }
}

fn planned_length(k: i64, descent: usize, a: i64) -> u128 {
    let shift = (descent as i64 - a).unsigned_abs() as u128;
    2 * k as u128 + descent as u128 + shift
}

fn try_chain(tk: &Takiff<'_>, x: &SuperWeight, nu: &Weight, k: i64, cap: usize) -> Result<Option<Vec<LinkageStep>>> {
    let rd = tk.datum();
    let ell = rd.num_positive_roots() as i64;
    let two_rho = rd.rho().scale(2);
    let (path, order) = descent_path(rd, &x.lambda, nu)?;
    let needed = planned_length(k, order.len(), x.a);
    if needed > cap as u128 {
        return Err(Error::DimensionCap { needed, cap });
    }
    let mut b = ChainBuilder {
        tk,
        steps: Vec::new(),
        cap,
    };
    let mut cur = x.clone();
    for _ in 0..k {
        let next = SuperWeight::new(&cur.lambda + &two_rho, cur.a - ell);
        if !b.push(cur, next.clone(), LinkageRule::RaiseByTwoRho, true)? {
            return Ok(None);
        }
        cur = next;
    }
    let shift = two_rho.scale(k);
    for p in &path[1..] {
        let next = SuperWeight::new(p + &shift, cur.a - 1);
        if !b.push(cur, next.clone(), LinkageRule::RootDescent, true)? {
            return Ok(None);
        }
        cur = next;
    }
    let target = -k * ell;
    while cur.a != target {
        let down = cur.a > target;
        let next = SuperWeight::new(cur.lambda.clone(), if down { cur.a - 1 } else { cur.a + 1 });
        if !b.push(cur, next.clone(), LinkageRule::LevelShift, down)? {
            return Ok(None);
        }
        cur = next;
    }
    for _ in 0..k {
        let next = SuperWeight::new(&cur.lambda - &two_rho, cur.a + ell);
        if !b.push(cur, next.clone(), LinkageRule::RaiseByTwoRho, false)? {
            return Ok(None);
        }
        cur = next;
    }
    debug_assert_eq!(cur, SuperWeight::new(nu.clone(), 0));
    Ok(Some(b.steps))
}

/// A chain of simple modules from `L(x)` to `L(ν)`, `ν` the minuscule block
/// label, in which consecutive modules are linked through a standard module.
/// Every step carries a recomputed nonzero multiplicity.
pub fn linkage_chain(tk: &Takiff<'_>, x: &SuperWeight, limits: &Limits) -> Result<Vec<LinkageStep>> {
    let rd = tk.datum();
    if rd.rank() < 2 {
        return Err(Error::Precondition(format!("linkage chains need rank ≥ 2, got {}", rd.name())));
    }
    let BlockLabel::Minuscule(nu) = block_label_f(rd, x)? else {
        return Err(Error::Internal(format!("no minuscule label for {x}")));
    };
    if x.lambda == nu && x.a == 0 {
        return Ok(Vec::new());
    }
    let (path, _) = descent_path(rd, &x.lambda, &nu)?;
    let k0 = regular_shift(rd, &path).max(1);
    for k in k0..k0 + 4 {
        if let Some(steps) = try_chain(tk, x, &nu, k, limits.chain_cap)? {
            return Ok(steps);
        }
    }
    Err(Error::Internal(format!("no linkage chain found for {x}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;
    use alloc::vec;

    fn sw(c: &[i64], a: i64) -> SuperWeight {
        SuperWeight::new(Weight(c.to_vec()), a)
    }

    #[test]
    fn counts() {
        for (s, r, n) in [
            (Series::A, 1, 3),
            (Series::A, 2, 3),
            (Series::A, 3, 4),
            (Series::B, 3, 2),
            (Series::D, 4, 4),
            (Series::G, 2, 1),
            (Series::F, 4, 1),
            (Series::E, 8, 1),
        ] {
            let rd = RootDatum::new(s, r).unwrap();
            assert_eq!(num_blocks(&rd, Category::F), n);
            assert_eq!(num_blocks(&rd, Category::O), n);
            assert_eq!(block_labels(&rd).len(), n);
        }
    }

    #[test]
    fn sl2_sets() {
        let a1 = RootDatum::new(Series::A, 1).unwrap();
        // members of the three sets, generated directly from their parametrisations
        let mut even = BTreeSet::new();
        let mut odd_a = BTreeSet::new();
        let mut odd_b = BTreeSet::new();
        for n in -6i64..=6 {
            for a in -12i64..=12 {
                even.insert((2 * n, a));
                odd_a.insert((1 + 2 * n, 2 * a - n));
                odd_b.insert((1 + 2 * n, 2 * a - n - 1));
            }
        }
        for m in -5i64..=5 {
            for a in -4i64..=4 {
                let expect = if even.contains(&(m, a)) {
                    Sl2Block::Even
                } else if odd_a.contains(&(m, a)) {
                    Sl2Block::OddA
                } else {
                    assert!(odd_b.contains(&(m, a)));
                    Sl2Block::OddB
                };
                let x = sw(&[m], a);
                assert_eq!(block_label_o(&a1, &x).unwrap(), BlockLabel::Sl2(expect));
                if m >= 0 {
                    assert_eq!(block_label_f(&a1, &x).unwrap(), BlockLabel::Sl2(expect));
                } else {
                    assert!(block_label_f(&a1, &x).is_err());
                }
            }
        }
        assert_eq!(block_label_f(&a1, &sw(&[3], 1)).unwrap(), BlockLabel::Sl2(Sl2Block::OddA));
    }

    #[test]
    fn standard_factors_stay_in_block() {
        for (s, r) in [(Series::A, 1), (Series::A, 2), (Series::B, 2)] {
            let rd = RootDatum::new(s, r).unwrap();
            let tk = Takiff::new(&rd);
            for c in 0..3 {
                let lam = Weight::fundamental(r, 0).scale(c);
                let x = SuperWeight::new(lam, 1);
                let l = block_label_f(&rd, &x).unwrap();
                for (y, _) in tk.delta_factors(&x).unwrap() {
                    assert_eq!(block_label_f(&rd, &y).unwrap(), l, "{x} vs {y}");
                }
            }
        }
    }

    #[test]
    fn o_labels() {
        let a2 = RootDatum::new(Series::A, 2).unwrap();
        for a in -2..=2 {
            assert_eq!(block_label_o(&a2, &sw(&[-1, 0], a)).unwrap(), BlockLabel::Minuscule(Weight(vec![0, 1])));
            assert_eq!(block_label_f(&a2, &sw(&[1, 1], a)).unwrap(), BlockLabel::Minuscule(Weight(vec![0, 0])));
        }
    }

    #[test]
    fn chains() {
        let a2 = RootDatum::new(Series::A, 2).unwrap();
        let tk = Takiff::new(&a2);
        let limits = Limits::default();
        assert!(linkage_chain(&tk, &sw(&[1, 0], 0), &limits).unwrap().is_empty());
        for x in [sw(&[1, 1], 0), sw(&[2, 2], 0), sw(&[3, 0], -2)] {
            let chain = linkage_chain(&tk, &x, &limits).unwrap();
            assert_eq!(chain.first().unwrap().from, x);
            let nu = match block_label_f(&a2, &x).unwrap() {
                BlockLabel::Minuscule(nu) => nu,
                _ => unreachable!(),
            };
            assert_eq!(chain.last().unwrap().to, SuperWeight::new(nu, 0));
            for w in chain.windows(2) {
                assert_eq!(w[0].to, w[1].from);
            }
            for s in &chain {
                assert!(s.multiplicity > BigInt::zero());
                assert_eq!(tk.delta_mult(&s.standard, &s.simple).unwrap(), s.multiplicity);
            }
        }
        let chain = linkage_chain(&tk, &sw(&[2, 2], 0), &limits).unwrap();
        assert!(chain.iter().any(|s| s.rule == LinkageRule::RaiseByTwoRho));
        let tight = Limits { chain_cap: 2, ..Limits::default() };
        assert!(matches!(linkage_chain(&tk, &sw(&[2, 2], 0), &tight), Err(Error::DimensionCap { .. })));
        let a1 = RootDatum::new(Series::A, 1).unwrap();
        assert!(linkage_chain(&Takiff::new(&a1), &sw(&[2], 0), &limits).is_err());
    }
}
