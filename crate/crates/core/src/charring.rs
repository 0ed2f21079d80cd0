//! Formal characters: Freudenthal multiplicities, decomposition into simple
//! characters, tensor products, Adams operations and plethysm.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::rc::Rc;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::Rational;
use crate::rootsys::{RootDatum, Weight};
use crate::{Error, Result};

/// Finitely supported map from weights to integer multiplicities. Virtual
/// characters (negative entries) are allowed as intermediates.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FormalCharacter {
    rank: usize,
    support: BTreeMap<Weight, BigInt>,
}

impl FormalCharacter {
    pub fn zero(rank: usize) -> Self {
        FormalCharacter {
            rank,
            support: BTreeMap::new(),
        }
    }

    /// The character of the trivial module.
    pub fn trivial(rank: usize) -> Self {
        let mut c = Self::zero(rank);
        c.add_weight(Weight::zero(rank), BigInt::one());
        c
    }

    pub fn from_weights<I: IntoIterator<Item = Weight>>(rank: usize, weights: I) -> Self {
        let mut c = Self::zero(rank);
        for w in weights {
            c.add_weight(w, BigInt::one());
        }
        c
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn add_weight(&mut self, w: Weight, m: BigInt) {
        if m.is_zero() {
            return;
        }
        let e = self.support.entry(w.clone()).or_default();
        *e += m;
        if e.is_zero() {
            self.support.remove(&w);
        }
    }

    pub fn mult(&self, w: &Weight) -> BigInt {
        self.support.get(w).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &BigInt)> {
        self.support.iter()
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn dim(&self) -> BigInt {
        self.support.values().sum()
    }

    /// All multiplicities nonnegative.
    pub fn is_effective(&self) -> bool {
        self.support.values().all(|m| !m.is_negative())
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        let mut c = Self::zero(self.rank);
        if k.is_zero() {
            return c;
        }
        for (w, m) in &self.support {
            c.support.insert(w.clone(), m * k);
        }
        c
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut c = self.clone();
        c.add_assign_scaled(other, &BigInt::one());
        c
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut c = self.clone();
        c.add_assign_scaled(other, &-BigInt::one());
        c
    }

    pub fn add_assign_scaled(&mut self, other: &Self, k: &BigInt) {
        for (w, m) in &other.support {
            let e = self.support.entry(w.clone()).or_default();
            *e += m * k;
        }
        self.support.retain(|_, v| !v.is_zero());
    }

    /// Character of the tensor product.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out: BTreeMap<Weight, BigInt> = BTreeMap::new();
        for (a, ma) in &self.support {
            for (b, mb) in &other.support {
                *out.entry(a + b).or_default() += ma * mb;
            }
        }
        out.retain(|_, v| !v.is_zero());
        FormalCharacter {
            rank: self.rank,
            support: out,
        }
    }

    /// Adams operation `ψ^m`: every weight multiplied by `m`.
    pub fn adams(&self, m: i64) -> Self {
        FormalCharacter {
            rank: self.rank,
            support: self
                .support
                .iter()
                .map(|(w, v)| (w.scale(m), v.clone()))
                .collect(),
        }
    }

    /// Exterior power `∧^k` via `k·e_k = Σ_{i=1}^{k} (−1)^{i−1} ψ^i·e_{k−i}`.
    pub fn exterior_power(&self, k: usize) -> Self {
        self.power_series(k, true).pop().unwrap_or_else(|| Self::trivial(self.rank))
    }

    /// Symmetric power `S^k` via `k·s_k = Σ_{i=1}^{k} ψ^i·s_{k−i}`.
    pub fn symmetric_power(&self, k: usize) -> Self {
        self.power_series(k, false).pop().unwrap_or_else(|| Self::trivial(self.rank))
    }

    /// `[P^0, …, P^k]` where `P` is `∧` (alternating) or `S`.
    pub fn power_series(&self, k: usize, alternating: bool) -> Vec<Self> {
        let mut out = alloc::vec![Self::trivial(self.rank)];
        let adams: Vec<Self> = (1..=k as i64).map(|i| self.adams(i)).collect();
        for n in 1..=k {
            let mut acc = Self::zero(self.rank);
            for i in 1..=n {
                let sign = if alternating && i % 2 == 0 {
                    -BigInt::one()
                } else {
                    BigInt::one()
                };
                let term = adams[i - 1].tensor(&out[n - i]);
                acc.add_assign_scaled(&term, &sign);
            }
            let nb = BigInt::from(n);
            for v in acc.support.values_mut() {
                let (quo, rem) = v.div_rem(&nb);
                debug_assert!(rem.is_zero());
                *v = quo;
            }
            out.push(acc);
        }
        out
    }
}

/// Multiplicities of simple characters, keyed by dominant highest weight.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IrrDecomposition(pub BTreeMap<Weight, BigInt>);

impl IrrDecomposition {
    pub fn get(&self, w: &Weight) -> BigInt {
        self.0.get(w).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &BigInt)> {
        self.0.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&mut self, w: Weight, m: BigInt) {
        if m.is_zero() {
            return;
        }
        let e = self.0.entry(w.clone()).or_default();
        *e += m;
        if e.is_zero() {
            self.0.remove(&w);
        }
    }

    /// `Σ mult · dim L(key)`.
    pub fn dim(&self, rd: &RootDatum) -> BigInt {
        self.0.iter().map(|(w, m)| m * rd.weyl_dimension(w)).sum()
    }
}

/// Height `(w, ρ^∨)` of a weight, i.e. the sum of its simple-root coordinates.
fn height(rd: &RootDatum, w: &Weight) -> Rational {
    rd.depth(w)
}

type DominantTable = BTreeMap<Weight, BigInt>;

/// Character computations over one root datum, with memoised Freudenthal
/// tables. The caches live in `RefCell`s, so an engine is confined to the
/// thread that owns it.
pub struct CharacterEngine<'a> {
    rd: &'a RootDatum,
    dominant: RefCell<BTreeMap<Weight, Rc<DominantTable>>>,
    full: RefCell<BTreeMap<Weight, Rc<FormalCharacter>>>,
}

impl<'a> CharacterEngine<'a> {
    pub fn new(rd: &'a RootDatum) -> Self {
        CharacterEngine {
            rd,
            dominant: RefCell::new(BTreeMap::new()),
            full: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn datum(&self) -> &'a RootDatum {
        self.rd
    }

    fn check_dominant(&self, lambda: &Weight) -> Result<()> {
        self.rd.check_rank(lambda)?;
        if lambda.is_dominant() {
            Ok(())
        } else {
            Err(Error::NotDominant(format!("{lambda}")))
        }
    }

    /// Multiplicities of the dominant weights of `L(λ)` (Freudenthal).
    pub fn dominant_multiplicities(&self, lambda: &Weight) -> Result<Rc<DominantTable>> {
        self.check_dominant(lambda)?;
        if let Some(t) = self.dominant.borrow().get(lambda) {
            return Ok(t.clone());
        }
        let t = Rc::new(self.freudenthal(lambda));
        self.dominant.borrow_mut().insert(lambda.clone(), t.clone());
        Ok(t)
    }

    fn freudenthal(&self, lambda: &Weight) -> DominantTable {
        let rd = self.rd;
        let np = rd.num_positive_roots();
        // dominant weights below λ, each with its depth
        let mut depth: BTreeMap<Weight, i64> = BTreeMap::new();
        let mut queue = VecDeque::new();
        depth.insert(lambda.clone(), 0);
        queue.push_back(lambda.clone());
        while let Some(v) = queue.pop_front() {
            let d = depth[&v];
            for k in 0..np {
                let u = &v - rd.root_weight(k);
                if u.is_dominant() && !depth.contains_key(&u) {
                    depth.insert(u.clone(), d + rd.height(k));
                    queue.push_back(u);
                }
            }
        }
        let mut order: Vec<(i64, Weight)> = depth.iter().map(|(w, &d)| (d, w.clone())).collect();
        order.sort();

        let rho = rd.rho();
        let lr = lambda + &rho;
        let top = rd.inner(&lr, &lr);
        let mut mult: DominantTable = BTreeMap::new();
        mult.insert(lambda.clone(), BigInt::one());
        for (_, mu) in order.into_iter().skip(1) {
            let mr = &mu + &rho;
            let denom = top - rd.inner(&mr, &mr);
            let mut num = BigInt::zero();
            for k in 0..np {
                let alpha = rd.root_weight(k);
                let mut j = 1;
                loop {
                    let nu = mu.add_scaled(alpha, j);
                    let (dom, _) = rd.to_dominant(&nu);
                    let Some(m) = mult.get(&dom) else {
                        break;
                    };
                    num += m * rd.inner(&nu, alpha);
                    j += 1;
                }
            }
            num *= 2;
            let (m, rem) = num.div_rem(&BigInt::from(denom));
            debug_assert!(rem.is_zero(), "Freudenthal division not exact");
            if !m.is_zero() {
                mult.insert(mu, m);
            }
        }
        mult
    }

    /// Character of the simple module `L(λ)`.
    pub fn irr_character(&self, lambda: &Weight) -> Result<FormalCharacter> {
        Ok((*self.irr_character_rc(lambda)?).clone())
    }

    pub fn irr_character_rc(&self, lambda: &Weight) -> Result<Rc<FormalCharacter>> {
        if let Some(c) = self.full.borrow().get(lambda) {
            return Ok(c.clone());
        }
        let dom = self.dominant_multiplicities(lambda)?;
        let mut ch = FormalCharacter::zero(self.rd.rank());
        for (mu, m) in dom.iter() {
            for w in self.rd.weyl_orbit(mu) {
                ch.support.insert(w, m.clone());
            }
        }
        let ch = Rc::new(ch);
        self.full.borrow_mut().insert(lambda.clone(), ch.clone());
        Ok(ch)
    }

    /// The adjoint character.
    pub fn adjoint(&self) -> FormalCharacter {
        self.irr_character(self.rd.theta())
            .unwrap_or_else(|_| FormalCharacter::zero(self.rd.rank()))
    }

    /// Decomposition of a (possibly virtual) W-invariant character.
    pub fn decompose_virtual(&self, ch: &FormalCharacter) -> Result<IrrDecomposition> {
        let rd = self.rd;
        let mut rest: BTreeMap<Weight, BigInt> = ch
            .support
            .iter()
            .filter(|(w, _)| w.is_dominant())
            .map(|(w, m)| (w.clone(), m.clone()))
            .collect();
        let mut out = IrrDecomposition::default();
        while !rest.is_empty() {
            let top = rest
                .keys()
                .map(|w| (height(rd, w), w))
                .max()
                .map(|(_, w)| w.clone())
                .ok_or_else(|| Error::Internal(format!("empty support")))?;
            let m = rest[&top].clone();
            let table = self.dominant_multiplicities(&top)?;
            for (w, k) in table.iter() {
                let e = rest.entry(w.clone()).or_default();
                *e -= &m * k;
                if e.is_zero() {
                    rest.remove(w);
                }
            }
            out.add(top, m);
        }
        Ok(out)
    }

    /// Decomposition of a module character; negative coefficients are an error.
    pub fn decompose(&self, ch: &FormalCharacter) -> Result<IrrDecomposition> {
        let d = self.decompose_virtual(ch)?;
        if let Some((w, m)) = d.0.iter().find(|(_, m)| m.is_negative()) {
            return Err(Error::NotModuleCharacter(format!(
                "coefficient {m} at highest weight {w}"
            )));
        }
        Ok(d)
    }

    /// `[ch : L(μ)]`.
    pub fn bracket(&self, ch: &FormalCharacter, mu: &Weight) -> Result<BigInt> {
        Ok(self.decompose(ch)?.get(mu))
    }

    /// Decomposition of `V ⊗ L(λ)` by the Brauer–Klimyk rule, where `V` is
    /// given by its full character.
    pub fn tensor_with_irr(&self, v: &FormalCharacter, lambda: &Weight) -> Result<IrrDecomposition> {
        self.check_dominant(lambda)?;
        let mut out = IrrDecomposition::default();
        for (nu, m) in v.iter() {
            let (dom, sign) = self.rd.dot_to_dominant(&(lambda + nu));
            if sign != 0 {
                out.add(dom, m * BigInt::from(sign));
            }
        }
        Ok(out)
    }

    /// `[V ⊗ L(λ) : L(μ)]`.
    pub fn tensor_bracket(&self, v: &FormalCharacter, lambda: &Weight, mu: &Weight) -> Result<BigInt> {
        Ok(self.tensor_with_irr(v, lambda)?.get(mu))
    }

    /// W-invariance of a character, checked on every orbit of its support.
    pub fn is_weyl_invariant(&self, ch: &FormalCharacter) -> bool {
        let mut seen = BTreeSet::new();
        for (w, m) in ch.iter() {
            let (dom, _) = self.rd.to_dominant(w);
            if !seen.insert(dom.clone()) {
                continue;
            }
            if self.rd.weyl_orbit(&dom).iter().any(|u| &ch.mult(u) != m) {
                return false;
            }
        }
        true
    }
}

/// Character of `L(λ)` with a throwaway engine.
pub fn irr_character(rd: &RootDatum, lambda: &Weight) -> Result<FormalCharacter> {
    CharacterEngine::new(rd).irr_character(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Series;
    use alloc::vec;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn w(c: &[i64]) -> Weight {
        Weight(c.to_vec())
    }

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    /// Elementary and complete symmetric functions of the weight multiset,
    /// by expanding `∏(1 ± t·e^w)^{∓1}` directly.
    fn power_oracle(ch: &FormalCharacter, k: usize, alternating: bool) -> FormalCharacter {
        let rank = ch.rank();
        let mut layers = vec![FormalCharacter::trivial(rank)];
        layers.extend((0..k).map(|_| FormalCharacter::zero(rank)));
        for (wt, m) in ch.iter() {
            let single = FormalCharacter::from_weights(rank, [wt.clone()]);
            let copies: usize = m.try_into().unwrap();
            for _ in 0..copies {
                if alternating {
                    for n in (1..=k).rev() {
                        let t = layers[n - 1].tensor(&single);
                        layers[n] = layers[n].add(&t);
                    }
                } else {
                    for n in 1..=k {
                        let t = layers[n - 1].tensor(&single);
                        layers[n] = layers[n].add(&t);
                    }
                }
            }
        }
        layers.pop().unwrap()
    }

    #[test]
    fn small_characters() {
        let a1 = RootDatum::new(Series::A, 1).unwrap();
        let e = CharacterEngine::new(&a1);
        let adj = e.irr_character(&w(&[2])).unwrap();
        assert_eq!(adj, FormalCharacter::from_weights(1, [w(&[2]), w(&[0]), w(&[-2])]));

        let a2 = RootDatum::new(Series::A, 2).unwrap();
        let e = CharacterEngine::new(&a2);
        let adj = e.irr_character(a2.theta()).unwrap();
        assert_eq!(adj.mult(&w(&[0, 0])), b(2));
        assert_eq!(e.irr_character(&w(&[2, 2])).unwrap().dim(), b(27));
        assert!(e.irr_character(&w(&[-1, 0])).is_err());
    }

    #[test]
    fn decompositions() {
        let a2 = RootDatum::new(Series::A, 2).unwrap();
        let e = CharacterEngine::new(&a2);
        let prod = e.irr_character(&w(&[1, 0])).unwrap().tensor(&e.irr_character(&w(&[0, 1])).unwrap());
        let d = e.decompose(&prod).unwrap();
        assert_eq!(d.0.len(), 2);
        assert_eq!(d.get(&w(&[1, 1])), b(1));
        assert_eq!(d.get(&w(&[0, 0])), b(1));

        // L(λ) ⊗ s for λ = 2ρ₀ contains every L(λ+β) once and L(λ) twice
        let lam = w(&[2, 2]);
        let adj = e.adjoint();
        let d = e.decompose(&e.irr_character(&lam).unwrap().tensor(&adj)).unwrap();
        assert_eq!(d.get(&lam), b(2));
        for beta in a2.all_root_weights() {
            assert_eq!(d.get(&(&lam + &beta)), b(1));
        }
        assert_eq!(d.0.len(), 7);
        assert_eq!(e.tensor_with_irr(&adj, &lam).unwrap(), d);

        let irr = e.irr_character(&w(&[3, 1])).unwrap();
        let d = e.decompose(&irr).unwrap();
        assert_eq!(d.0.into_iter().collect::<Vec<_>>(), vec![(w(&[3, 1]), b(1))]);

        let virt = FormalCharacter::trivial(2).sub(&adj);
        assert!(matches!(e.decompose(&virt), Err(Error::NotModuleCharacter(_))));
    }

    #[test]
    fn plethysm() {
        let a1 = RootDatum::new(Series::A, 1).unwrap();
        let e = CharacterEngine::new(&a1);
        let adj = e.adjoint();
        assert_eq!(adj.exterior_power(3), FormalCharacter::trivial(1));
        assert_eq!(adj.exterior_power(4), FormalCharacter::zero(1));
        let s2 = e.decompose(&adj.symmetric_power(2)).unwrap();
        assert_eq!(s2.get(&w(&[4])), b(1));
        assert_eq!(s2.get(&w(&[0])), b(1));
        assert_eq!(e.bracket(&adj, &w(&[0])).unwrap(), b(0));
        assert_eq!(e.bracket(&adj.symmetric_power(2), &w(&[0])).unwrap(), b(1));

        let a2 = RootDatum::new(Series::A, 2).unwrap();
        let e = CharacterEngine::new(&a2);
        let adj = e.adjoint();
        let lam = w(&[1, 0]);
        let top = adj.exterior_power(a2.num_positive_roots());
        let two_rho = a2.rho().scale(2);
        assert_eq!(e.tensor_bracket(&top, &lam, &(&lam + &two_rho)).unwrap(), b(1));
        for k in 0..=8 {
            assert_eq!(adj.exterior_power(k), power_oracle(&adj, k, true));
        }
        for k in 0..=3 {
            assert_eq!(adj.symmetric_power(k), power_oracle(&adj, k, false));
        }
    }

    #[test]
    fn newton_recurrences_hold() {
        let b2 = RootDatum::new(Series::B, 2).unwrap();
        let e = CharacterEngine::new(&b2);
        let v = e.irr_character(&w(&[1, 0])).unwrap();
        let ext = v.power_series(5, true);
        let sym = v.power_series(4, false);
        for k in 1..=5usize {
            let mut rhs = FormalCharacter::zero(2);
            for i in 1..=k {
                let sign = if i % 2 == 0 { b(-1) } else { b(1) };
                rhs.add_assign_scaled(&v.adams(i as i64).tensor(&ext[k - i]), &sign);
            }
            assert_eq!(ext[k].scaled(&b(k as i64)), rhs);
        }
        for k in 1..=4usize {
            let mut rhs = FormalCharacter::zero(2);
            for i in 1..=k {
                rhs.add_assign_scaled(&v.adams(i as i64).tensor(&sym[k - i]), &b(1));
            }
            assert_eq!(sym[k].scaled(&b(k as i64)), rhs);
        }
    }

    fn datum_strategy() -> impl Strategy<Value = (Series, usize)> {
        prop_oneof![
            Just((Series::A, 1)),
            Just((Series::A, 2)),
            Just((Series::A, 3)),
            Just((Series::B, 2)),
            Just((Series::G, 2)),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn freudenthal_matches_weyl_dimension((s, r) in datum_strategy(), coords in proptest::collection::vec(0i64..4, 3)) {
            let rd = RootDatum::new(s, r).unwrap();
            let lam = Weight(coords[..r].to_vec());
            let e = CharacterEngine::new(&rd);
            let ch = e.irr_character(&lam).unwrap();
            prop_assert_eq!(ch.dim(), rd.weyl_dimension(&lam));
            prop_assert!(e.is_weyl_invariant(&ch));
        }

        #[test]
        fn decompose_inverts_sum((s, r) in datum_strategy(), terms in proptest::collection::vec((proptest::collection::vec(0i64..3, 3), 1i64..3), 1..4)) {
            let rd = RootDatum::new(s, r).unwrap();
            let e = CharacterEngine::new(&rd);
            let mut expected = IrrDecomposition::default();
            let mut ch = FormalCharacter::zero(r);
            for (c, m) in terms {
                let lam = Weight(c[..r].to_vec());
                ch.add_assign_scaled(&e.irr_character(&lam).unwrap(), &b(m));
                expected.add(lam, b(m));
            }
            prop_assert_eq!(e.decompose(&ch).unwrap(), expected);
        }

        #[test]
        fn tensor_commutative_associative(x in proptest::collection::vec(0i64..2, 2), y in proptest::collection::vec(0i64..2, 2), z in proptest::collection::vec(0i64..2, 2)) {
            let rd = RootDatum::new(Series::A, 2).unwrap();
            let e = CharacterEngine::new(&rd);
            let a = e.irr_character(&Weight(x)).unwrap();
            let bb = e.irr_character(&Weight(y)).unwrap();
            let c = e.irr_character(&Weight(z)).unwrap();
            prop_assert_eq!(a.tensor(&bb), bb.tensor(&a));
            prop_assert_eq!(a.tensor(&bb).tensor(&c), a.tensor(&bb.tensor(&c)));
        }

        #[test]
        fn klimyk_matches_decompose((s, r) in datum_strategy(), x in proptest::collection::vec(0i64..3, 3), y in proptest::collection::vec(0i64..2, 3)) {
            let rd = RootDatum::new(s, r).unwrap();
            let e = CharacterEngine::new(&rd);
            let lam = Weight(x[..r].to_vec());
            let v = e.irr_character(&Weight(y[..r].to_vec())).unwrap();
            let direct = e.decompose(&v.tensor(&e.irr_character(&lam).unwrap())).unwrap();
            prop_assert_eq!(e.tensor_with_irr(&v, &lam).unwrap(), direct);
        }
    }
}
