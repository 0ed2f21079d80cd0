//! Dimensions of Ext groups between simple modules.
//!
//! Two engines are available. The closed engine evaluates character
//! formulas (brackets of symmetric powers of `s`), the oracle builds the
//! contraction maps `Dⁿ[L⁰_λ]` as exact matrices and reads kernels and
//! cokernels off their ranks. Both are exact; the oracle is bounded by
//! [`Limits::dim_cap`].

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::vec::Vec;
use core::cell::{OnceCell, RefCell};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::blocks::{block_label_f, BlockLabel};
use crate::charring::IrrDecomposition;
use crate::dmap::{adjoint_module, dmap_matrix, symmetric_power_module, ChevalleyBasis};
use crate::rootsys::{RootDatum, Series, Weight};
use crate::takiff::{SuperWeight, Takiff};
use crate::{Error, Limits, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Engine {
    Closed,
    Oracle,
    Auto,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Closed => "closed",
            Engine::Oracle => "oracle",
            Engine::Auto => "auto",
        }
    }
}

/// `dim Ext^i(L(source), L(target))`, to be evaluated with `engine`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtQuery {
    pub i: usize,
    pub source: SuperWeight,
    pub target: SuperWeight,
    pub engine: Engine,
}

/// A computed Ext dimension and the engine that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtValue {
    pub dim: BigInt,
    pub engine: Engine,
}

fn kron(b: bool) -> BigInt {
    if b {
        BigInt::one()
    } else {
        BigInt::zero()
    }
}

/// Ext engines over one root datum, with caches for characters and maps.
pub struct ExtEngine<'a> {
    tk: Takiff<'a>,
    limits: Limits,
    max_oracle_degree: usize,
    basis: OnceCell<ChevalleyBasis>,
    kernels: RefCell<BTreeMap<(Weight, usize), Rc<(IrrDecomposition, IrrDecomposition)>>>,
    sym_oracle: RefCell<BTreeMap<usize, Rc<IrrDecomposition>>>,
}

impl<'a> ExtEngine<'a> {
    pub fn new(rd: &'a RootDatum, limits: Limits) -> Self {
        ExtEngine {
            tk: Takiff::new(rd),
            limits,
            max_oracle_degree: 4,
            basis: OnceCell::new(),
            kernels: RefCell::new(BTreeMap::new()),
            sym_oracle: RefCell::new(BTreeMap::new()),
        }
    }

    /// Largest `i` accepted by the oracle engine.
    pub fn with_max_oracle_degree(mut self, i: usize) -> Self {
        self.max_oracle_degree = i;
        self
    }

    pub fn datum(&self) -> &'a RootDatum {
        self.tk.datum()
    }

    pub fn takiff(&self) -> &Takiff<'a> {
        &self.tk
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    fn basis(&self) -> Result<&ChevalleyBasis> {
        if let Some(b) = self.basis.get() {
            return Ok(b);
        }
        let b = ChevalleyBasis::new(self.datum())?;
        Ok(self.basis.get_or_init(|| b))
    }

    fn check(&self, x: &SuperWeight) -> Result<()> {
        self.datum().check_rank(&x.lambda)?;
        if x.is_dominant() {
            Ok(())
        } else {
            Err(Error::NotDominant(format!("{x}")))
        }
    }

    /// `[S^i s : L⁰_μ]` from characters.
    fn sym_bracket(&self, i: usize, mu: &Weight) -> Result<BigInt> {
        self.tk.symmetric_bracket(i, &self.datum().zero(), mu)
    }

    /// `[S^i s : L⁰_μ]` from the explicit module `S^i(s)`.
    fn sym_bracket_oracle(&self, i: usize, mu: &Weight) -> Result<BigInt> {
        if let Some(d) = self.sym_oracle.borrow().get(&i) {
            return Ok(d.get(mu));
        }
        let cb = self.basis()?;
        let m = symmetric_power_module(&adjoint_module(cb), i, &self.limits)?;
        let mut ch = m.character();
        if ch.rank() == 0 {
            ch = crate::charring::FormalCharacter::trivial(self.datum().rank());
        }
        let d = Rc::new(self.tk.engine().decompose(&ch)?);
        let v = d.get(mu);
        self.sym_oracle.borrow_mut().insert(i, d);
        Ok(v)
    }

    /// Kernel and cokernel decompositions of `Dⁿ[L⁰_λ]`.
    pub fn ker_coker(&self, lambda: &Weight, n: usize) -> Result<Rc<(IrrDecomposition, IrrDecomposition)>> {
        let key = (lambda.clone(), n);
        if let Some(v) = self.kernels.borrow().get(&key) {
            return Ok(v.clone());
        }
        let d = dmap_matrix(self.basis()?, lambda, n, &self.limits)?;
        let v = Rc::new(d.ker_coker_multiplicities(self.tk.engine())?);
        self.kernels.borrow_mut().insert(key, v.clone());
        Ok(v)
    }

    /// True when the closed engine is defined for the query.
    pub fn closed_available(&self, i: usize, x: &SuperWeight, y: &SuperWeight) -> bool {
        x.lambda.is_zero() || y.lambda.is_zero() || i <= 1 || !self.datum().in_root_lattice(&x.lambda)
    }

    pub fn ext_dim(&self, q: &ExtQuery) -> Result<ExtValue> {
        self.check(&q.source)?;
        self.check(&q.target)?;
        let engine = match q.engine {
            Engine::Auto if self.closed_available(q.i, &q.source, &q.target) => Engine::Closed,
            Engine::Auto => Engine::Oracle,
            Engine::Closed if !self.closed_available(q.i, &q.source, &q.target) => {
                return Err(Error::InvalidArgument(format!(
                    "no closed formula for Ext^{} from {} (weight in the root lattice, i ≥ 2)",
                    q.i, q.source
                )))
            }
            e => e,
        };
        if engine == Engine::Oracle && q.i > self.max_oracle_degree {
            return Err(Error::InvalidArgument(format!(
                "oracle degree {} exceeds the maximum {}",
                q.i, self.max_oracle_degree
            )));
        }
        let dim = match engine {
            Engine::Closed => self.closed(q.i, &q.source, &q.target)?,
            _ => self.oracle(q.i, &q.source, &q.target)?,
        };
        Ok(ExtValue { dim, engine })
    }

    /// Shorthand for [`ExtEngine::ext_dim`] returning only the dimension.
    pub fn dim(&self, i: usize, x: &SuperWeight, y: &SuperWeight, engine: Engine) -> Result<BigInt> {
        Ok(self
            .ext_dim(&ExtQuery {
                i,
                source: x.clone(),
                target: y.clone(),
                engine,
            })?
            .dim)
    }

    fn zero_cases(&self, i: usize, x: &SuperWeight, y: &SuperWeight, oracle: bool) -> Result<BigInt> {
        let d = x.a - y.a;
        let i64i = i as i64;
        let sym = |k: usize, mu: &Weight| {
            if oracle {
                self.sym_bracket_oracle(k, mu)
            } else {
                self.sym_bracket(k, mu)
            }
        };
        match (x.lambda.is_zero(), y.lambda.is_zero()) {
            (false, true) if d == i64i + 1 => sym(i, &x.lambda),
            (true, false) if d == i64i => sym(i, &y.lambda),
            (true, true) if (d + i64i) % 2 == 0 && -i64i <= d && d <= i64i => {
                sym(((d + i64i) / 2) as usize, &x.lambda)
            }
            _ => Ok(BigInt::zero()),
        }
    }

    fn closed(&self, i: usize, x: &SuperWeight, y: &SuperWeight) -> Result<BigInt> {
        if x.lambda.is_zero() || y.lambda.is_zero() {
            return self.zero_cases(i, x, y, false);
        }
        let d = x.a - y.a;
        match i {
            0 => Ok(kron(x == y)),
            1 => self.ext1_closed(x, y),
            _ => {
                if d != i as i64 {
                    return Ok(BigInt::zero());
                }
                let v = self.tk.symmetric_bracket(i, &x.lambda, &y.lambda)?
                    - self.tk.symmetric_bracket(i - 1, &x.lambda, &y.lambda)?;
                if v.is_negative() {
                    return Err(Error::Internal(format!("negative kernel multiplicity for Ext^{i}({x}, {y})")));
                }
                Ok(v)
            }
        }
    }

    fn oracle(&self, i: usize, x: &SuperWeight, y: &SuperWeight) -> Result<BigInt> {
        if x.lambda.is_zero() || y.lambda.is_zero() {
            return self.zero_cases(i, x, y, true);
        }
        let d = x.a - y.a;
        if d == i as i64 {
            if i == 0 {
                return Ok(kron(x.lambda == y.lambda));
            }
            return Ok(self.ker_coker(&x.lambda, i)?.0.get(&y.lambda));
        }
        if d == i as i64 + 1 {
            return Ok(self.ker_coker(&x.lambda, i + 1)?.1.get(&y.lambda));
        }
        Ok(BigInt::zero())
    }

    /// `[s ⊗ L⁰_λ : L⁰_μ] − δ_{λ,μ}`, checked to be nonnegative.
    fn adjoint_excess(&self, lambda: &Weight, mu: &Weight) -> Result<BigInt> {
        let v = self.tk.symmetric_bracket(1, lambda, mu)? - kron(lambda == mu);
        if v.is_negative() {
            return Err(Error::Internal(format!("[s ⊗ L({lambda}) : L({mu})] < δ")));
        }
        Ok(v)
    }

    /// `dim Ext¹` in the finite-dimensional category, from the closed formulas.
    pub fn ext1_closed(&self, x: &SuperWeight, y: &SuperWeight) -> Result<BigInt> {
        self.check(x)?;
        self.check(y)?;
        let theta = self.datum().theta();
        let d = x.a - y.a;
        match (x.lambda.is_zero(), y.lambda.is_zero()) {
            (false, false) if d == 1 => self.adjoint_excess(&x.lambda, &y.lambda),
            (false, false) => Ok(BigInt::zero()),
            (false, true) => Ok(kron(d == 2 && &x.lambda == theta)),
            (true, false) => Ok(kron(d == 1 && &y.lambda == theta)),
            (true, true) => Ok(kron(y.a - x.a == 1)),
        }
    }

    /// `dim Ext¹` between the corresponding simple conformal modules.
    pub fn ext1_conformal(&self, x: &SuperWeight, y: &SuperWeight) -> Result<BigInt> {
        self.check(x)?;
        self.check(y)?;
        let rd = self.datum();
        let sl2 = rd.series() == Series::A && rd.rank() == 1;
        let theta = rd.theta();
        let d = x.a - y.a;
        match (x.lambda.is_zero(), y.lambda.is_zero()) {
            (false, false) if d == 1 || (sl2 && d == 2) => self.adjoint_excess(&x.lambda, &y.lambda),
            (false, false) => Ok(BigInt::zero()),
            (false, true) => Ok(kron(d == 1 && &x.lambda == theta)),
            (true, false) => Ok(BigInt::zero()),
            (true, true) => Ok(kron(y.a - x.a == 1)),
        }
    }
}

/// Finite box of dominant super weights: `0 ≤ λ_i ≤ max_coord`,
/// `min_a ≤ a ≤ max_a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub max_coord: i64,
    pub min_a: i64,
    pub max_a: i64,
}

impl Window {
    pub fn contains(&self, x: &SuperWeight) -> bool {
        x.lambda.0.iter().all(|&c| 0 <= c && c <= self.max_coord) && self.min_a <= x.a && x.a <= self.max_a
    }

    pub fn is_empty(&self) -> bool {
        self.max_coord < 0 || self.min_a > self.max_a
    }
}

/// Dominant weights of `rank` with all coordinates in `0..=max`.
fn dominant_box(rank: usize, max: i64) -> Vec<Weight> {
    let mut out = alloc::vec![Weight::zero(rank)];
    if max < 0 {
        return Vec::new();
    }
    for i in 0..rank {
        let mut next = Vec::new();
        for w in &out {
            for c in 0..=max {
                let mut v = w.clone();
                v.0[i] = c;
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Simple modules of the block inside the window, in sorted order.
pub fn block_vertices(rd: &RootDatum, label: &BlockLabel, window: &Window) -> Result<Vec<SuperWeight>> {
    let mut out = Vec::new();
    if window.is_empty() {
        return Ok(out);
    }
    for lam in dominant_box(rd.rank(), window.max_coord) {
        for a in window.min_a..=window.max_a {
            let x = SuperWeight::new(lam.clone(), a);
            if &block_label_f(rd, &x)? == label {
                out.push(x);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Which Ext¹ formulas a quiver is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuiverKind {
    /// Finite-dimensional modules of the superalgebra.
    F,
    /// Finite conformal modules of the current algebra.
    C,
}

/// Ext¹ quiver of a block inside a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverGraph {
    pub kind: QuiverKind,
    pub window: Window,
    pub vertices: Vec<SuperWeight>,
    /// `(source, target, dim Ext¹)` with nonzero labels, sorted.
    pub edges: Vec<(usize, usize, BigInt)>,
}

impl QuiverGraph {
    pub fn edge(&self, from: &SuperWeight, to: &SuperWeight) -> BigInt {
        let i = self.vertices.binary_search(from);
        let j = self.vertices.binary_search(to);
        match (i, j) {
            (Ok(i), Ok(j)) => self
                .edges
                .iter()
                .find(|e| e.0 == i && e.1 == j)
                .map(|e| e.2.clone())
                .unwrap_or_default(),
            _ => BigInt::zero(),
        }
    }
}

pub fn build_quiver(ext: &ExtEngine<'_>, label: &BlockLabel, window: &Window, kind: QuiverKind) -> Result<QuiverGraph> {
    let vertices = block_vertices(ext.datum(), label, window)?;
    let mut edges = Vec::new();
    for (i, x) in vertices.iter().enumerate() {
        for (j, y) in vertices.iter().enumerate() {
            let v = match kind {
                QuiverKind::F => ext.ext1_closed(x, y)?,
                QuiverKind::C => ext.ext1_conformal(x, y)?,
            };
            if !v.is_zero() {
                edges.push((i, j, v));
            }
        }
    }
    Ok(QuiverGraph {
        kind,
        window: *window,
        vertices,
        edges,
    })
}

/// Every dominant weight that either Ext¹ formula can connect to `x`, in
/// either direction.
fn candidate_neighbours(rd: &RootDatum, x: &SuperWeight) -> Vec<SuperWeight> {
    let mut lams: Vec<Weight> = rd.all_root_weights().iter().map(|b| &x.lambda + b).collect();
    lams.push(x.lambda.clone());
    if &x.lambda == rd.theta() {
        lams.push(rd.zero());
    }
    if x.lambda.is_zero() {
        lams.push(rd.theta().clone());
    }
    let mut out = Vec::new();
    for lam in lams.into_iter().filter(|l| l.is_dominant()) {
        for da in -2..=2 {
            if da != 0 {
                out.push(SuperWeight::new(lam.clone(), x.a + da));
            }
        }
    }
    out
}

/// Vertices whose possible Ext¹ neighbours in the block all lie in the window.
pub fn interior_vertices(rd: &RootDatum, q: &QuiverGraph) -> Result<Vec<SuperWeight>> {
    let mut out = Vec::new();
    for x in &q.vertices {
        let label = block_label_f(rd, x)?;
        let mut inside = true;
        for y in candidate_neighbours(rd, x) {
            if block_label_f(rd, &y)? == label && !q.window.contains(&y) {
                inside = false;
                break;
            }
        }
        if inside {
            out.push(x.clone());
        }
    }
    Ok(out)
}

/// Edges touching an interior vertex on which the two quivers disagree, as
/// `(from, to, label in qf, label in qc)`.
pub fn quiver_differences(
    rd: &RootDatum,
    qf: &QuiverGraph,
    qc: &QuiverGraph,
) -> Result<Vec<(SuperWeight, SuperWeight, BigInt, BigInt)>> {
    if qf.vertices != qc.vertices {
        return Err(Error::InvalidArgument(format!(
            "quivers have different vertex sets ({} vs {})",
            qf.vertices.len(),
            qc.vertices.len()
        )));
    }
    let interior = interior_vertices(rd, qf)?;
    let mut out = Vec::new();
    for x in &qf.vertices {
        for y in &qf.vertices {
            if interior.binary_search(x).is_err() && interior.binary_search(y).is_err() {
                continue;
            }
            let (a, b) = (qf.edge(x, y), qc.edge(x, y));
            if a != b {
                out.push((x.clone(), y.clone(), a, b));
            }
        }
    }
    Ok(out)
}

/// Label-preserving equality of the two quivers around interior vertices.
pub fn compare_quivers(rd: &RootDatum, qf: &QuiverGraph, qc: &QuiverGraph) -> Result<bool> {
    Ok(quiver_differences(rd, qf, qc)?.is_empty())
}

/// A nonzero `Ext^i(L(x), L(y))` with `i ≠ a − b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulViolation {
    pub i: usize,
    pub source: SuperWeight,
    pub target: SuperWeight,
    pub dim: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulReport {
    pub label: BlockLabel,
    pub pairs_checked: usize,
    pub queries: usize,
    pub violations: Vec<KoszulViolation>,
}

fn is_principal(rd: &RootDatum, label: &BlockLabel) -> Result<bool> {
    Ok(&block_label_f(rd, &SuperWeight::new(rd.zero(), 0))? == label)
}

/// Evaluates `Ext^i` for `i ≤ imax` on each pair and records every nonzero
/// value off the diagonal `i = a − b`. Works for any block.
pub fn koszul_report(
    ext: &ExtEngine<'_>,
    label: &BlockLabel,
    pairs: &[(SuperWeight, SuperWeight)],
    imax: usize,
) -> Result<KoszulReport> {
    let rd = ext.datum();
    let mut violations = Vec::new();
    let mut queries = 0;
    for (x, y) in pairs {
        for z in [x, y] {
            if &block_label_f(rd, z)? != label {
                return Err(Error::InvalidArgument(format!("{z} is not in block {label}")));
            }
        }
        for i in 0..=imax {
            let dim = ext.dim(i, x, y, Engine::Auto)?;
            queries += 1;
            if !dim.is_zero() && x.a - y.a != i as i64 {
                violations.push(KoszulViolation {
                    i,
                    source: x.clone(),
                    target: y.clone(),
                    dim,
                });
            }
        }
    }
    Ok(KoszulReport {
        label: label.clone(),
        pairs_checked: pairs.len(),
        queries,
        violations,
    })
}

/// The diagonal Ext check on a non-principal block of rank at least 2.
pub fn koszul_diagonal_check(
    ext: &ExtEngine<'_>,
    label: &BlockLabel,
    pairs: &[(SuperWeight, SuperWeight)],
    imax: usize,
) -> Result<KoszulReport> {
    let rd = ext.datum();
    if rd.rank() < 2 {
        return Err(Error::Precondition(format!("the diagonal check needs rank ≥ 2, got {}", rd.name())));
    }
    if is_principal(rd, label)? {
        return Err(Error::Precondition(format!("block {label} is the principal block")));
    }
    koszul_report(ext, label, pairs, imax)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::Sl2Block;
    use alloc::vec;

    fn sw(c: &[i64], a: i64) -> SuperWeight {
        SuperWeight::new(Weight(c.to_vec()), a)
    }

    #[test]
    fn small_degrees() {
        let a1 = RootDatum::new(Series::A, 1).unwrap();
        let ext = ExtEngine::new(&a1, Limits::default());
        assert_eq!(ext.dim(1, &sw(&[0], 0), &sw(&[0], 1), Engine::Auto).unwrap(), BigInt::one());
        assert_eq!(ext.dim(2, &sw(&[0], 0), &sw(&[0], 2), Engine::Auto).unwrap(), BigInt::one());
        assert_eq!(ext.dim(4, &sw(&[0], 0), &sw(&[0], 0), Engine::Closed).unwrap(), BigInt::one());
        assert_eq!(ext.dim(4, &sw(&[0], 0), &sw(&[0], 0), Engine::Oracle).unwrap(), BigInt::one());
        assert!(ext.dim(5, &sw(&[0], 0), &sw(&[0], 0), Engine::Oracle).is_err());
        for x in [sw(&[0], 0), sw(&[2], 1), sw(&[3], -1)] {
            for y in [sw(&[0], 0), sw(&[2], 1), sw(&[3], -1), sw(&[2], 0)] {
                for e in [Engine::Closed, Engine::Oracle] {
                    assert_eq!(ext.dim(0, &x, &y, e).unwrap(), kron(x == y));
                }
            }
        }
    }

    #[test]
    fn ext1_formulas() {
        let a2 = RootDatum::new(Series::A, 2).unwrap();
        let ext = ExtEngine::new(&a2, Limits::default());
        let one = BigInt::one();
        assert_eq!(ext.ext1_closed(&sw(&[1, 1], 2), &sw(&[0, 0], 0)).unwrap(), one);
        assert_eq!(ext.ext1_closed(&sw(&[0, 0], 3), &sw(&[1, 1], 2)).unwrap(), one);
        assert_eq!(ext.ext1_closed(&sw(&[1, 0], 1), &sw(&[1, 0], 0)).unwrap(), BigInt::zero());
        assert_eq!(ext.ext1_closed(&sw(&[1, 1], 1), &sw(&[1, 1], 0)).unwrap(), one);
        assert_eq!(ext.ext1_conformal(&sw(&[0, 0], 3), &sw(&[1, 1], 2)).unwrap(), BigInt::zero());
        assert_eq!(ext.ext1_conformal(&sw(&[1, 1], 1), &sw(&[0, 0], 0)).unwrap(), one);
        let a1 = RootDatum::new(Series::A, 1).unwrap();
        let ext = ExtEngine::new(&a1, Limits::default());
        assert_eq!(ext.ext1_conformal(&sw(&[2], 2), &sw(&[2], 0)).unwrap(), BigInt::zero());
        assert_eq!(ext.ext1_conformal(&sw(&[2], 2), &sw(&[4], 0)).unwrap(), one);
        assert_eq!(ext.ext1_closed(&sw(&[2], 2), &sw(&[4], 0)).unwrap(), BigInt::zero());
    }

    #[test]
    fn engines_agree_on_a1() {
        let a1 = RootDatum::new(Series::A, 1).unwrap();
        let ext = ExtEngine::new(&a1, Limits::default());
        for l in 0..4 {
            for m in 0..4 {
                for d in -1..=3 {
                    let x = sw(&[l], d);
                    let y = sw(&[m], 0);
                    for i in 0..=2 {
                        if ext.closed_available(i, &x, &y) {
                            let c = ext.dim(i, &x, &y, Engine::Closed).unwrap();
                            let o = ext.dim(i, &x, &y, Engine::Oracle).unwrap();
                            assert_eq!(c, o, "Ext^{i}({x}, {y})");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn duality_at_degree_one() {
        let a2 = RootDatum::new(Series::A, 2).unwrap();
        let ext = ExtEngine::new(&a2, Limits::default());
        let tk = ext.takiff();
        let lams = [vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 0], vec![2, 1]];
        for l in &lams {
            for m in &lams {
                for d in -1..=3 {
                    let x = sw(l, d);
                    let y = sw(m, 0);
                    let lhs = ext.ext1_closed(&x, &y).unwrap();
                    let rhs = ext.ext1_closed(&tk.dual_simple(&y).unwrap(), &tk.dual_simple(&x).unwrap()).unwrap();
                    assert_eq!(lhs, rhs, "{x} {y}");
                }
            }
        }
    }

    #[test]
    fn quivers() {
        let a2 = RootDatum::new(Series::A, 2).unwrap();
        let ext = ExtEngine::new(&a2, Limits::default());
        let w = Window { max_coord: 2, min_a: -2, max_a: 2 };
        let label = BlockLabel::Minuscule(Weight(vec![1, 0]));
        let qf = build_quiver(&ext, &label, &w, QuiverKind::F).unwrap();
        let qc = build_quiver(&ext, &label, &w, QuiverKind::C).unwrap();
        assert!(!qf.edges.is_empty());
        assert!(compare_quivers(&a2, &qf, &qc).unwrap());
        assert!(qf.edges.iter().all(|e| e.0 != e.1));
        let empty = Window { max_coord: -1, min_a: 0, max_a: 0 };
        let qe = build_quiver(&ext, &label, &empty, QuiverKind::F).unwrap();
        assert!(qe.vertices.is_empty());
        assert!(compare_quivers(&a2, &qe, &qe).unwrap());

        let a1 = RootDatum::new(Series::A, 1).unwrap();
        let ext = ExtEngine::new(&a1, Limits::default());
        let w = Window { max_coord: 6, min_a: -4, max_a: 4 };
        let label = BlockLabel::Sl2(Sl2Block::Even);
        let qf = build_quiver(&ext, &label, &w, QuiverKind::F).unwrap();
        let qc = build_quiver(&ext, &label, &w, QuiverKind::C).unwrap();
        let diff = quiver_differences(&a1, &qf, &qc).unwrap();
        assert!(diff.iter().any(|(x, y, f, c)| x == &sw(&[2], 2) && y == &sw(&[0], 0) && f == &BigInt::one() && c.is_zero()));
        assert!(diff.iter().any(|(x, y, f, c)| x == &sw(&[2], 1) && y == &sw(&[0], 0) && f.is_zero() && c == &BigInt::one()));
    }

    #[test]
    fn koszul() {
        let a2 = RootDatum::new(Series::A, 2).unwrap();
        let ext = ExtEngine::new(&a2, Limits::default());
        let label = BlockLabel::Minuscule(Weight(vec![1, 0]));
        let w = Window { max_coord: 2, min_a: -1, max_a: 2 };
        let verts = block_vertices(&a2, &label, &w).unwrap();
        let pairs: Vec<_> = verts
            .iter()
            .flat_map(|x| verts.iter().map(move |y| (x.clone(), y.clone())))
            .filter(|(x, y)| (0..=3).contains(&(x.a - y.a)))
            .step_by(7)
            .collect();
        let r = koszul_diagonal_check(&ext, &label, &pairs, 3).unwrap();
        assert!(r.violations.is_empty());
        assert!(koszul_diagonal_check(&ext, &BlockLabel::Minuscule(Weight(vec![0, 0])), &pairs[..0], 3).is_err());

        let a1 = RootDatum::new(Series::A, 1).unwrap();
        let ext = ExtEngine::new(&a1, Limits::default());
        let label = BlockLabel::Sl2(Sl2Block::Even);
        let r = koszul_report(&ext, &label, &[(sw(&[2], 2), sw(&[0], 0))], 2).unwrap();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].i, 1);
    }
}
