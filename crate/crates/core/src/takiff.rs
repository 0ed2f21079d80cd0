//! Super weights `λ + aδ` and the composition multiplicities of standard and
//! projective modules.
//!
//! Highest weights are taken with respect to the Borel subalgebra
//! `b^s ⊕ Cξ∂_ξ ⊕ C∂_ξ`, with `δ(ξ∂_ξ) = −1`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::charring::{CharacterEngine, FormalCharacter, IrrDecomposition};
use crate::rootsys::{RootDatum, Weight};
use crate::{Error, Result};

/// The weight `λ + aδ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SuperWeight {
    pub lambda: Weight,
    pub a: i64,
}

impl SuperWeight {
    pub fn new(lambda: Weight, a: i64) -> Self {
        SuperWeight { lambda, a }
    }

    pub fn is_dominant(&self) -> bool {
        self.lambda.is_dominant()
    }

    /// `a mod 2`.
    pub fn parity(&self) -> u8 {
        self.a.rem_euclid(2) as u8
    }
}

impl fmt::Display for SuperWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.lambda, self.a)
    }
}

pub fn parity(x: &SuperWeight) -> u8 {
    x.parity()
}

/// Which graded piece of `s` a cached power is taken from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Power {
    Exterior,
    Symmetric,
}

/// Multiplicity engine over one root datum. Exterior and symmetric powers of
/// the adjoint character, and their tensor products with simple characters,
/// are cached.
pub struct Takiff<'a> {
    engine: CharacterEngine<'a>,
    adjoint: FormalCharacter,
    powers: RefCell<BTreeMap<(Power, usize), Rc<FormalCharacter>>>,
    products: RefCell<BTreeMap<(Power, usize, Weight), Rc<IrrDecomposition>>>,
}

impl<'a> Takiff<'a> {
    pub fn new(rd: &'a RootDatum) -> Self {
        let engine = CharacterEngine::new(rd);
        let adjoint = engine.adjoint();
        Takiff {
            engine,
            adjoint,
            powers: RefCell::new(BTreeMap::new()),
            products: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn datum(&self) -> &'a RootDatum {
        self.engine.datum()
    }

    pub fn engine(&self) -> &CharacterEngine<'a> {
        &self.engine
    }

    pub fn dim_s(&self) -> usize {
        2 * self.datum().num_positive_roots() + self.datum().rank()
    }

    fn power(&self, kind: Power, i: usize) -> Rc<FormalCharacter> {
        if let Some(c) = self.powers.borrow().get(&(kind, i)) {
            return c.clone();
        }
        let c = Rc::new(match kind {
            Power::Exterior if i > self.dim_s() => FormalCharacter::zero(self.datum().rank()),
            Power::Exterior => self.adjoint.exterior_power(i),
            Power::Symmetric => self.adjoint.symmetric_power(i),
        });
        self.powers.borrow_mut().insert((kind, i), c.clone());
        c
    }

    /// Character of `∧^i s`.
    pub fn exterior(&self, i: usize) -> Rc<FormalCharacter> {
        self.power(Power::Exterior, i)
    }

    /// Character of `S^i s`.
    pub fn symmetric(&self, i: usize) -> Rc<FormalCharacter> {
        self.power(Power::Symmetric, i)
    }

    fn product(&self, kind: Power, i: usize, lambda: &Weight) -> Result<Rc<IrrDecomposition>> {
        let key = (kind, i, lambda.clone());
        if let Some(d) = self.products.borrow().get(&key) {
            return Ok(d.clone());
        }
        let ch = self.power(kind, i);
        let d = Rc::new(self.engine.tensor_with_irr(&ch, lambda)?);
        self.products.borrow_mut().insert(key, d.clone());
        Ok(d)
    }

    /// `[∧^i s ⊗ L⁰_λ : L⁰_μ]`.
    pub fn exterior_bracket(&self, i: usize, lambda: &Weight, mu: &Weight) -> Result<BigInt> {
        Ok(self.product(Power::Exterior, i, lambda)?.get(mu))
    }

    /// `[S^i s ⊗ L⁰_λ : L⁰_μ]`.
    pub fn symmetric_bracket(&self, i: usize, lambda: &Weight, mu: &Weight) -> Result<BigInt> {
        Ok(self.product(Power::Symmetric, i, lambda)?.get(mu))
    }

    /// Decomposition of `∧^i s ⊗ L⁰_λ`.
    pub fn exterior_product(&self, i: usize, lambda: &Weight) -> Result<Rc<IrrDecomposition>> {
        self.product(Power::Exterior, i, lambda)
    }

    fn check(&self, x: &SuperWeight) -> Result<()> {
        self.datum().check_rank(&x.lambda)?;
        if x.is_dominant() {
            Ok(())
        } else {
            Err(Error::NotDominant(format!("{x}")))
        }
    }

    /// Restriction of `L(λ + aδ)` to `g₀`, as `g₀`-highest weights.
    pub fn restrict_simple(&self, x: &SuperWeight) -> Result<Vec<SuperWeight>> {
        self.check(x)?;
        if x.lambda.is_zero() {
            Ok(vec![x.clone()])
        } else {
            Ok(vec![x.clone(), SuperWeight::new(x.lambda.clone(), x.a - 1)])
        }
    }

    /// `dim L(λ + aδ)`.
    pub fn dim_simple(&self, x: &SuperWeight) -> BigInt {
        if x.lambda.is_zero() {
            BigInt::one()
        } else {
            self.datum().weyl_dimension(&x.lambda) * 2
        }
    }

    /// `[Δ(x) : L(y)]`.
    pub fn delta_mult(&self, x: &SuperWeight, y: &SuperWeight) -> Result<BigInt> {
        self.check(x)?;
        self.check(y)?;
        if y.a > x.a {
            return Ok(BigInt::zero());
        }
        let d = (x.a - y.a) as usize;
        let m = if y.lambda.is_zero() {
            self.exterior_bracket(d, &x.lambda, &y.lambda)?
        } else {
            let mut s = BigInt::zero();
            for i in 0..=d.min(self.dim_s()) {
                let t = self.exterior_bracket(i, &x.lambda, &y.lambda)?;
                if (d - i) % 2 == 0 {
                    s += t;
                } else {
                    s -= t;
                }
            }
            s
        };
        if m.is_negative() {
            return Err(Error::Internal(format!("[Δ({x}) : L({y})] = {m} < 0")));
        }
        Ok(m)
    }

    /// `[P(x) : L(y)]`.
    pub fn proj_mult(&self, x: &SuperWeight, y: &SuperWeight) -> Result<BigInt> {
        self.check(x)?;
        self.check(y)?;
        if !x.lambda.is_zero() {
            return self.delta_mult(x, y);
        }
        let zero = self.datum().zero();
        if y.a == x.a + 1 {
            return Ok(if y.lambda.is_zero() { BigInt::one() } else { BigInt::zero() });
        }
        if y.a > x.a {
            return Ok(BigInt::zero());
        }
        let d = (x.a - y.a) as usize;
        if y.lambda.is_zero() {
            Ok(self.exterior_bracket(d, &zero, &zero)? + self.exterior_bracket(d + 1, &zero, &zero)?)
        } else {
            self.exterior_bracket(d + 1, &zero, &y.lambda)
        }
    }

    /// All simple factors of `Δ(x)` with their multiplicities.
    pub fn delta_factors(&self, x: &SuperWeight) -> Result<Vec<(SuperWeight, BigInt)>> {
        self.check(x)?;
        let mut tops: BTreeSet<Weight> = BTreeSet::new();
        for i in 0..=self.dim_s() {
            tops.extend(self.exterior_product(i, &x.lambda)?.iter().map(|(w, _)| w.clone()));
        }
        let mut out = Vec::new();
        for d in 0..=self.dim_s() as i64 + 1 {
            for mu in &tops {
                let y = SuperWeight::new(mu.clone(), x.a - d);
                let m = self.delta_mult(x, &y)?;
                if !m.is_zero() {
                    out.push((y, m));
                }
            }
        }
        Ok(out)
    }

    /// `L(x)*` as a simple module.
    pub fn dual_simple(&self, x: &SuperWeight) -> Result<SuperWeight> {
        self.check(x)?;
        Ok(if x.lambda.is_zero() {
            SuperWeight::new(x.lambda.clone(), -x.a)
        } else {
            SuperWeight::new(self.datum().longest_element_negate(&x.lambda), 1 - x.a)
        })
    }

    /// `(P(x) : Δ(κ))`: one for `κ = x`, one more for `κ = (a+1)δ` when `λ = 0`.
    pub fn standard_filtration(&self, x: &SuperWeight) -> Vec<SuperWeight> {
        let mut v = vec![x.clone()];
        if x.lambda.is_zero() {
            v.push(SuperWeight::new(x.lambda.clone(), x.a + 1));
        }
        v
    }

    /// `Σ_κ (P(x):Δ(κ))·[Δ(κ):L(y)] = [P(x):L(y)]` for every `y` in the sample.
    pub fn bgg_consistency(&self, x: &SuperWeight, sample: &[SuperWeight]) -> Result<bool> {
        let kappas = self.standard_filtration(x);
        for y in sample {
            let mut lhs = BigInt::zero();
            for k in &kappas {
                lhs += self.delta_mult(k, y)?;
            }
            if lhs != self.proj_mult(x, y)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Series;

    fn sw(c: &[i64], a: i64) -> SuperWeight {
        SuperWeight::new(Weight(c.to_vec()), a)
    }

    fn factors(tk: &Takiff<'_>, x: &SuperWeight) -> BTreeMap<SuperWeight, BigInt> {
        tk.delta_factors(x).unwrap().into_iter().collect()
    }

    fn ones(items: &[SuperWeight]) -> BTreeMap<SuperWeight, BigInt> {
        items.iter().map(|y| (y.clone(), BigInt::one())).collect()
    }

    #[test]
    fn parity_and_restriction() {
        let a2 = RootDatum::new(Series::A, 2).unwrap();
        let tk = Takiff::new(&a2);
        assert_eq!(parity(&sw(&[0, 0], 0)), 0);
        assert_eq!(parity(&sw(&[1, 0], 3)), 1);
        assert_eq!(parity(&sw(&[1, 0], -3)), 1);
        assert_eq!(tk.restrict_simple(&sw(&[0, 0], 5)).unwrap(), vec![sw(&[0, 0], 5)]);
        assert_eq!(
            tk.restrict_simple(&sw(&[1, 1], 0)).unwrap(),
            vec![sw(&[1, 1], 0), sw(&[1, 1], -1)]
        );
        assert!(tk.restrict_simple(&sw(&[-1, 0], 0)).is_err());
    }

    #[test]
    fn sl2_standard_modules() {
        let a1 = RootDatum::new(Series::A, 1).unwrap();
        let tk = Takiff::new(&a1);
        for n in [3, 4, 6] {
            for a in [-2, 0, 3] {
                let expect = ones(&[sw(&[n], a), sw(&[n + 2], a - 1), sw(&[n - 2], a - 1), sw(&[n], a - 2)]);
                assert_eq!(factors(&tk, &sw(&[n], a)), expect);
            }
        }
        // at n = 2 the trivial module also appears two levels down: ∧²s ≅ s
        let expect = ones(&[sw(&[2], 0), sw(&[4], -1), sw(&[0], -1), sw(&[2], -2), sw(&[0], -2)]);
        assert_eq!(factors(&tk, &sw(&[2], 0)), expect);
        for a in [-1, 0, 2] {
            let expect = ones(&[sw(&[1], a), sw(&[3], a - 1), sw(&[1], a - 2)]);
            assert_eq!(factors(&tk, &sw(&[1], a)), expect);
        }
        for a in [-1, 0, 2] {
            let expect = ones(&[sw(&[0], a), sw(&[2], a - 1), sw(&[0], a - 3)]);
            assert_eq!(factors(&tk, &sw(&[0], a)), expect);
        }
        assert_eq!(tk.delta_mult(&sw(&[5], 1), &sw(&[5], 1)).unwrap(), BigInt::one());
    }

    #[test]
    fn projective_cover_of_minus_delta() {
        let a1 = RootDatum::new(Series::A, 1).unwrap();
        let tk = Takiff::new(&a1);
        let x = sw(&[0], -1);
        let expect = [sw(&[0], 0), sw(&[0], -1), sw(&[0], -3), sw(&[0], -4), sw(&[2], -1), sw(&[2], -2)];
        let mut found = Vec::new();
        for mu in 0..=6 {
            for b in -8..=3 {
                let y = sw(&[mu], b);
                let m = tk.proj_mult(&x, &y).unwrap();
                if !m.is_zero() {
                    assert_eq!(m, BigInt::one());
                    found.push(y);
                }
            }
        }
        found.sort();
        let mut e = expect.to_vec();
        e.sort();
        assert_eq!(found, e);
        for a in -3..3 {
            assert_eq!(tk.proj_mult(&sw(&[0], a), &sw(&[0], a + 1)).unwrap(), BigInt::one());
        }
    }

    #[test]
    fn dimension_bookkeeping() {
        for (s, r) in [(Series::A, 1), (Series::A, 2)] {
            let rd = RootDatum::new(s, r).unwrap();
            let tk = Takiff::new(&rd);
            let lams: Vec<Weight> = match r {
                1 => vec![Weight(vec![0]), Weight(vec![1]), Weight(vec![3])],
                _ => vec![Weight(vec![0, 0]), Weight(vec![1, 0]), Weight(vec![1, 1])],
            };
            for lam in lams {
                let x = SuperWeight::new(lam.clone(), 2);
                let total: BigInt = tk
                    .delta_factors(&x)
                    .unwrap()
                    .iter()
                    .map(|(y, m)| m * tk.dim_simple(y))
                    .sum();
                let expect = (BigInt::one() << tk.dim_s()) * rd.weyl_dimension(&lam);
                assert_eq!(total, expect);
            }
        }
    }

    #[test]
    fn duality_and_bgg() {
        let a2 = RootDatum::new(Series::A, 2).unwrap();
        let tk = Takiff::new(&a2);
        assert_eq!(tk.dual_simple(&sw(&[0, 0], 7)).unwrap(), sw(&[0, 0], -7));
        assert_eq!(tk.dual_simple(&sw(&[1, 0], 0)).unwrap(), sw(&[0, 1], 1));
        for x in [sw(&[2, 1], 3), sw(&[0, 0], -2)] {
            assert_eq!(tk.dual_simple(&tk.dual_simple(&x).unwrap()).unwrap(), x);
        }
        let sample: Vec<SuperWeight> = (0..3)
            .flat_map(|i| (-3..=1).map(move |b| sw(&[i, 2 - i], b)))
            .collect();
        assert!(tk.bgg_consistency(&sw(&[1, 1], 0), &sample).unwrap());
        assert!(tk.bgg_consistency(&sw(&[0, 0], 0), &sample).unwrap());
        assert!(tk.bgg_consistency(&sw(&[0, 0], 0), &[]).unwrap());

        let a1 = RootDatum::new(Series::A, 1).unwrap();
        let tk = Takiff::new(&a1);
        let sample: Vec<SuperWeight> = (0..10).map(|k| sw(&[2 * (k % 3)], 1 - k / 2)).collect();
        assert!(tk.bgg_consistency(&sw(&[0], 0), &sample).unwrap());
    }

    #[test]
    fn projective_bounds() {
        let a1 = RootDatum::new(Series::A, 1).unwrap();
        let tk = Takiff::new(&a1);
        for lam in 0..4 {
            for a in -2..2 {
                let x = sw(&[lam], a);
                assert_eq!(tk.proj_mult(&x, &x).unwrap(), BigInt::one());
                for mu in 0..5 {
                    assert!(tk.proj_mult(&x, &sw(&[mu], a + 2)).unwrap().is_zero());
                }
            }
        }
    }
}
