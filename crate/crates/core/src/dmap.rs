//! Explicit exact matrices: a Chevalley basis of `s`, simple modules built as
//! quotients of Verma modules, symmetric powers, and the contraction maps
//! `Dⁿ[V]: Sⁿ(s) ⊗ V → Sⁿ⁻¹(s) ⊗ V`, `X₁⋯Xₙ ⊗ v ↦ Σᵢ X₁⋯X̂ᵢ⋯Xₙ ⊗ Xᵢv`.
//!
//! Basis of `s`: `e_α` for the positive roots in height order, then the `f_α`
//! in the same order, then `h_1, …, h_r`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::charring::{CharacterEngine, FormalCharacter, IrrDecomposition};
use crate::linalg::{self, q, Rational};
use crate::rootsys::{RootDatum, Weight};
use crate::{Error, Limits, Result};

/// Sparse vector: sorted `(index, value)` pairs without zeros.
pub type SparseVec = Vec<(usize, Rational)>;

fn collect(map: BTreeMap<usize, Rational>) -> SparseVec {
    map.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

fn accumulate(map: &mut BTreeMap<usize, Rational>, v: &[(usize, Rational)], s: &Rational) {
    for (i, x) in v {
        *map.entry(*i).or_insert_with(Rational::zero) += x * s;
    }
}

/// Column-sparse exact matrix: column `j` is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, ncols: usize) -> Self {
        SparseMatrix {
            rows,
            cols: vec![Vec::new(); ncols],
        }
    }

    pub fn from_columns(rows: usize, cols: Vec<SparseVec>) -> Self {
        SparseMatrix { rows, cols }
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let cols = entries
            .iter()
            .enumerate()
            .map(|(i, x)| if x.is_zero() { Vec::new() } else { vec![(i, x.clone())] })
            .collect();
        SparseMatrix {
            rows: entries.len(),
            cols,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.cols[c]
            .iter()
            .find(|(i, _)| *i == r)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn apply(&self, v: &[(usize, Rational)]) -> SparseVec {
        let mut acc = BTreeMap::new();
        for (j, x) in v {
            accumulate(&mut acc, &self.cols[*j], x);
        }
        collect(acc)
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        SparseMatrix {
            rows: self.rows,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: &Rational, other: &SparseMatrix, b: &Rational) -> SparseMatrix {
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(x, y)| {
                let mut acc = BTreeMap::new();
                accumulate(&mut acc, x, a);
                accumulate(&mut acc, y, b);
                collect(acc)
            })
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols,
        }
    }

    pub fn scale(&self, s: &Rational) -> SparseMatrix {
        self.combine(s, self, &Rational::zero())
    }

    pub fn commutator(&self, other: &SparseMatrix) -> SparseMatrix {
        self.mul(other).combine(&q(1), &other.mul(self), &q(-1))
    }
}

/// Matrices of the simple generators `e_i`, `f_i` on a weight basis.
struct SimpleAction {
    weights: Vec<Weight>,
    e: Vec<SparseMatrix>,
    f: Vec<SparseMatrix>,
}

/// Builds `L(λ)` as the quotient of the Verma module by its maximal
/// submodule. A vector of weight `μ ≠ λ` vanishes in the simple quotient
/// exactly when every `e_i` kills it, so each weight space is the image of the
/// span of the `f_j b` under `u ↦ (e_i u)_i`.
fn verma_quotient(engine: &CharacterEngine<'_>, lambda: &Weight) -> Result<SimpleAction> {
    let rd = engine.datum();
    let r = rd.rank();
    let ch = engine.irr_character(lambda)?;
    let dim: usize = ch
        .dim()
        .to_usize()
        .ok_or_else(|| Error::Internal(String::from("dimension overflow")))?;

    let mut weights: Vec<Weight> = Vec::with_capacity(dim);
    let mut blocks: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    let mut e_cols: Vec<Vec<SparseVec>> = vec![Vec::with_capacity(dim); r];
    let mut f_cols: Vec<Vec<SparseVec>> = vec![Vec::with_capacity(dim); r];

    let push = |w: &Weight,
                weights: &mut Vec<Weight>,
                e_cols: &mut Vec<Vec<SparseVec>>,
                f_cols: &mut Vec<Vec<SparseVec>>| {
        weights.push(w.clone());
        for i in 0..r {
            e_cols[i].push(Vec::new());
            f_cols[i].push(Vec::new());
        }
        weights.len() - 1
    };

    let top = push(lambda, &mut weights, &mut e_cols, &mut f_cols);
    blocks.insert(lambda.clone(), vec![top]);
    let mut level: BTreeSet<Weight> = BTreeSet::new();
    level.insert(lambda.clone());

    while !level.is_empty() {
        let mut next: BTreeSet<Weight> = BTreeSet::new();
        for nu in &level {
            for j in 0..r {
                let mu = nu - rd.simple_root(j);
                if !ch.mult(&mu).is_zero() {
                    next.insert(mu);
                }
            }
        }
        for mu in &next {
            // candidates f_j b, b a basis vector of weight μ + α_j
            let mut cands: Vec<(usize, usize)> = Vec::new();
            for j in 0..r {
                if let Some(bs) = blocks.get(&(mu + rd.simple_root(j))) {
                    cands.extend(bs.iter().map(|&b| (j, b)));
                }
            }
            // columns: basis vectors of the weights μ + α_i
            let mut col_of: BTreeMap<usize, usize> = BTreeMap::new();
            let mut col_owner: Vec<(usize, usize)> = Vec::new();
            for i in 0..r {
                if let Some(bs) = blocks.get(&(mu + rd.simple_root(i))) {
                    for &b in bs {
                        col_of.insert(b, col_owner.len());
                        col_owner.push((i, b));
                    }
                }
            }
            let m = col_owner.len();
            let mut images: Vec<Vec<Rational>> = Vec::with_capacity(cands.len());
            for &(j, b) in &cands {
                let mut row = vec![Rational::zero(); m];
                for i in 0..r {
                    // e_i f_j b = f_j e_i b + δ_ij ⟨wt b, α_i^∨⟩ b
                    for (u, x) in &e_cols[i][b] {
                        for (t, y) in &f_cols[j][*u] {
                            row[col_of[t]] += x * y;
                        }
                    }
                    if i == j {
                        let c = weights[b].0[i];
                        if c != 0 {
                            row[col_of[&b]] += q(c);
                        }
                    }
                }
                images.push(row);
            }
            // RREF of the transpose: pivot columns pick an independent set of
            // candidates, the reduced entries express the rest in it.
            let mut mat: Vec<Vec<Rational>> =
                (0..m).map(|t| images.iter().map(|row| row[t].clone()).collect()).collect();
            let pivots = linalg::rref(&mut mat);
            let expected = ch.mult(mu).to_usize().unwrap_or(0);
            if pivots.len() != expected {
                return Err(Error::Internal(format!(
                    "weight space {mu} of L({lambda}) has dimension {} instead of {expected}",
                    pivots.len()
                )));
            }
            let mut new_ids = Vec::with_capacity(pivots.len());
            for &p in &pivots {
                let id = push(mu, &mut weights, &mut e_cols, &mut f_cols);
                for (t, x) in images[p].iter().enumerate() {
                    if !x.is_zero() {
                        let (i, b) = col_owner[t];
                        e_cols[i][id].push((b, x.clone()));
                    }
                }
                new_ids.push(id);
            }
            for col in e_cols.iter_mut() {
                for &id in &new_ids {
                    col[id].sort_by_key(|(b, _)| *b);
                }
            }
            for (c, &(j, b)) in cands.iter().enumerate() {
                let v: SparseVec = (0..pivots.len())
                    .filter(|&t| !mat[t][c].is_zero())
                    .map(|t| (new_ids[t], mat[t][c].clone()))
                    .collect();
                f_cols[j][b] = v;
            }
            blocks.insert(mu.clone(), new_ids);
        }
        level = next;
    }

    let n = weights.len();
    Ok(SimpleAction {
        e: e_cols.into_iter().map(|c| SparseMatrix::from_columns(n, c)).collect(),
        f: f_cols.into_iter().map(|c| SparseMatrix::from_columns(n, c)).collect(),
        weights,
    })
}

/// Chevalley basis of `s` with its integer bracket table.
#[derive(Clone, Debug)]
pub struct ChevalleyBasis {
    rd: RootDatum,
    np: usize,
    /// `[x_a, x_b]` as a sparse integer vector.
    table: Vec<Vec<Vec<(usize, i64)>>>,
    /// For a non-simple positive root `α_k`: `(i, k')` with `α_k = α_i + α_{k'}`
    /// and `i` minimal.
    recursion: Vec<Option<(usize, usize)>>,
}

impl ChevalleyBasis {
    pub fn new(rd: &RootDatum) -> Result<ChevalleyBasis> {
        let r = rd.rank();
        let np = rd.num_positive_roots();
        let mut recursion = vec![None; np];
        for (k, slot) in recursion.iter_mut().enumerate().skip(r) {
            let c = &rd.positive_roots()[k];
            *slot = (0..r).find_map(|i| {
                let mut d = c.clone();
                d[i] -= 1;
                rd.root_position(&d).map(|kb| (i, kb))
            });
        }

        let engine = CharacterEngine::new(rd);
        let adj = verma_quotient(&engine, rd.theta())?;
        let n = adj.weights.len();
        let mut e = adj.e.clone();
        let mut f = adj.f.clone();
        for k in r..np {
            let (i, kb) = recursion[k].ok_or_else(|| Error::Internal(String::from("root recursion")))?;
            let p = string_length_below(rd, &rd.positive_roots()[kb], i);
            let s = q(1) / q(p + 1);
            let ek = e[i].commutator(&e[kb]).scale(&s);
            let fk = f[i].commutator(&f[kb]).scale(&-s);
            e.push(ek);
            f.push(fk);
        }
        let h: Vec<SparseMatrix> = (0..r)
            .map(|i| {
                let d: Vec<Rational> = adj.weights.iter().map(|w| q(w.0[i])).collect();
                SparseMatrix::diagonal(&d)
            })
            .collect();
        let mats: Vec<SparseMatrix> = e.into_iter().chain(f).chain(h).collect();
        let dim = mats.len();
        debug_assert_eq!(dim, n);

        let mut cb = ChevalleyBasis {
            rd: rd.clone(),
            np,
            table: Vec::new(),
            recursion,
        };
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                if b < a {
                    table[a][b] = table[b][a].iter().map(|&(c, v): &(usize, i64)| (c, -v)).collect();
                    continue;
                }
                let c = mats[a].commutator(&mats[b]);
                table[a][b] = cb.express(&mats, &c, &(&cb.weight(a) + &cb.weight(b)))?;
            }
        }
        cb.table = table;
        for k in 0..np {
            let hk = cb.coroot_vector(k);
            if cb.bracket(cb.e(k), cb.f(k)) != hk.as_slice() {
                return Err(Error::Internal(format!("[e_α, f_α] ≠ h_α for root {k}")));
            }
        }
        Ok(cb)
    }

    /// Writes a weight-homogeneous matrix in terms of the basis matrices.
    fn express(&self, mats: &[SparseMatrix], c: &SparseMatrix, wt: &Weight) -> Result<Vec<(usize, i64)>> {
        if c.is_zero() {
            return Ok(Vec::new());
        }
        let fail = || Error::Internal(format!("bracket of weight {wt} is not in the basis"));
        let to_int = |x: &Rational| {
            if x.is_integer() {
                x.to_integer().to_i64().ok_or_else(fail)
            } else {
                Err(fail())
            }
        };
        if wt.is_zero() {
            let r = self.rd.rank();
            let n = c.ncols();
            let rows: Vec<Vec<Rational>> = (0..r)
                .map(|i| (0..n).map(|v| mats[2 * self.np + i].get(v, v)).collect())
                .collect();
            let diag: Vec<Rational> = (0..n).map(|v| c.get(v, v)).collect();
            let x = linalg::solve_left(&rows, &diag).ok_or_else(fail)?;
            let mut out = Vec::new();
            let mut check = SparseMatrix::zero(c.nrows(), n);
            for (i, xi) in x.iter().enumerate() {
                if !xi.is_zero() {
                    out.push((2 * self.np + i, to_int(xi)?));
                    check = check.combine(&q(1), &mats[2 * self.np + i], xi);
                }
            }
            if &check != c {
                return Err(fail());
            }
            return Ok(out);
        }
        let idx = self.root_basis_index(wt).ok_or_else(fail)?;
        let m = &mats[idx];
        let (row, col) = m
            .cols
            .iter()
            .enumerate()
            .find_map(|(j, colv)| colv.first().map(|(i, _)| (*i, j)))
            .ok_or_else(fail)?;
        let coeff = c.get(row, col) / m.get(row, col);
        if &m.scale(&coeff) != c {
            return Err(fail());
        }
        Ok(vec![(idx, to_int(&coeff)?)])
    }

    pub fn datum(&self) -> &RootDatum {
        &self.rd
    }

    pub fn dim(&self) -> usize {
        2 * self.np + self.rd.rank()
    }

    pub fn num_positive_roots(&self) -> usize {
        self.np
    }

    pub fn e(&self, k: usize) -> usize {
        k
    }

    pub fn f(&self, k: usize) -> usize {
        self.np + k
    }

    pub fn h(&self, i: usize) -> usize {
        2 * self.np + i
    }

    /// Weight of a basis element under the adjoint action.
    pub fn weight(&self, a: usize) -> Weight {
        if a < self.np {
            self.rd.root_weight(a).clone()
        } else if a < 2 * self.np {
            -self.rd.root_weight(a - self.np)
        } else {
            self.rd.zero()
        }
    }

    /// Basis index of the root vector of weight `wt`, if `wt` is a root.
    pub fn root_basis_index(&self, wt: &Weight) -> Option<usize> {
        let c = self.rd.root_lattice_coords(wt)?;
        if let Some(k) = self.rd.root_position(&c) {
            return Some(self.e(k));
        }
        let neg: Vec<i64> = c.iter().map(|x| -x).collect();
        self.rd.root_position(&neg).map(|k| self.f(k))
    }

    /// `h_α` for the `k`-th positive root, in the basis `h_1, …, h_r`.
    pub fn coroot_vector(&self, k: usize) -> Vec<(usize, i64)> {
        self.rd
            .coroot_coords(k)
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c != 0)
            .map(|(i, c)| (self.h(i), c))
            .collect()
    }

    /// `[x_a, x_b]`.
    pub fn bracket(&self, a: usize, b: usize) -> &[(usize, i64)] {
        &self.table[a][b]
    }

    /// `N_{α,β}` with `[e_α, e_β] = N_{α,β} e_{α+β}` for roots given as basis
    /// indices of root vectors; zero when `α + β` is not a root.
    pub fn structure_constant(&self, a: usize, b: usize) -> i64 {
        let wt = &self.weight(a) + &self.weight(b);
        match self.root_basis_index(&wt) {
            Some(c) => self.table[a][b].iter().find(|(i, _)| *i == c).map(|(_, v)| *v).unwrap_or(0),
            None => 0,
        }
    }

    /// Decomposition of non-simple positive roots used to build `e_α`.
    pub fn root_recursion(&self, k: usize) -> Option<(usize, usize)> {
        self.recursion[k]
    }

    fn bracket_vec(&self, a: usize, v: &[(usize, i64)]) -> BTreeMap<usize, i64> {
        let mut out = BTreeMap::new();
        for &(b, x) in v {
            for &(c, y) in &self.table[a][b] {
                *out.entry(c).or_insert(0) += x * y;
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Jacobi identity on every triple of basis elements.
    pub fn check_jacobi(&self) -> bool {
        let n = self.dim();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let mut sum: BTreeMap<usize, i64> = BTreeMap::new();
                    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                        for (k, v) in self.bracket_vec(x, &self.table[y][z]) {
                            *sum.entry(k).or_insert(0) += v;
                        }
                    }
                    if sum.values().any(|&v| v != 0) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `[h_i, x] = wt(x)(h_i) x`, `[e_α, f_α] = h_α`, and `|N_{α,β}| = p + 1`
    /// for all roots `α, β` with `α + β` a root.
    pub fn check_structure(&self) -> bool {
        let r = self.rd.rank();
        let n = self.dim();
        for i in 0..r {
            for a in 0..n {
                let w = self.weight(a).0[i];
                let expect: Vec<(usize, i64)> = if w == 0 { Vec::new() } else { vec![(a, w)] };
                if self.table[self.h(i)][a] != expect {
                    return false;
                }
            }
        }
        for k in 0..self.np {
            if self.table[self.e(k)][self.f(k)] != self.coroot_vector(k) {
                return false;
            }
        }
        let roots: Vec<usize> = (0..2 * self.np).collect();
        for &a in &roots {
            for &b in &roots {
                let sum = &self.weight(a) + &self.weight(b);
                if self.root_basis_index(&sum).is_none() {
                    continue;
                }
                let mut p = 0;
                loop {
                    let probe = self.weight(b).add_scaled(&self.weight(a), -(p + 1));
                    if self.root_basis_index(&probe).is_some() {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if self.structure_constant(a, b).abs() != p + 1 {
                    return false;
                }
            }
        }
        true
    }

    /// Largest `|N_{α,β}|`.
    pub fn max_structure_constant(&self) -> i64 {
        let mut m = 0;
        for a in 0..2 * self.np {
            for b in 0..2 * self.np {
                m = m.max(self.structure_constant(a, b).abs());
            }
        }
        m
    }
}

/// Largest `p` with `β − pα_i` a root, for a positive root `β ≠ α_i`.
fn string_length_below(rd: &RootDatum, beta: &[i64], i: usize) -> i64 {
    let mut p = 0;
    let mut probe = beta.to_vec();
    loop {
        probe[i] -= 1;
        if rd.root_position(&probe).is_some() {
            p += 1;
        } else {
            return p;
        }
    }
}

/// An `s`-module given by exact matrices for every Chevalley basis element.
#[derive(Clone, Debug)]
pub struct ExplicitModule {
    weights: Vec<Weight>,
    mats: Vec<SparseMatrix>,
    highest_weight: Option<Weight>,
}

impl ExplicitModule {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    /// Matrix of the Chevalley basis element with the given index.
    pub fn action(&self, a: usize) -> &SparseMatrix {
        &self.mats[a]
    }

    pub fn highest_weight(&self) -> Option<&Weight> {
        self.highest_weight.as_ref()
    }

    pub fn character(&self) -> FormalCharacter {
        let rank = self.weights.first().map(|w| w.rank()).unwrap_or(0);
        FormalCharacter::from_weights(rank, self.weights.iter().cloned())
    }

    /// `[X_a, X_b] = X_{[a,b]}` as matrices, for all pairs with `a` in `gens`.
    pub fn check_relations(&self, cb: &ChevalleyBasis, gens: &[usize]) -> bool {
        let n = cb.dim();
        for &a in gens {
            for b in 0..n {
                let lhs = self.mats[a].commutator(&self.mats[b]);
                let mut rhs = SparseMatrix::zero(self.dim(), self.dim());
                for &(c, v) in cb.bracket(a, b) {
                    rhs = rhs.combine(&q(1), &self.mats[c], &q(v));
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Indices of `e_i`, `f_i`, `h_i` for the simple roots.
    pub fn simple_generators(cb: &ChevalleyBasis) -> Vec<usize> {
        let r = cb.datum().rank();
        (0..r)
            .flat_map(|i| [cb.e(i), cb.f(i), cb.h(i)])
            .collect()
    }
}

fn check_cap(needed: u128, limits: &Limits) -> Result<()> {
    if needed > limits.dim_cap as u128 {
        Err(Error::DimensionCap {
            needed,
            cap: limits.dim_cap,
        })
    } else {
        Ok(())
    }
}

/// The simple module `L(λ)` with matrices for the full Chevalley basis.
pub fn simple_module(cb: &ChevalleyBasis, lambda: &Weight, limits: &Limits) -> Result<ExplicitModule> {
    let rd = cb.datum();
    rd.check_rank(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(format!("{lambda}")));
    }
    let dim = rd.weyl_dimension(lambda);
    check_cap(dim.to_u128().unwrap_or(u128::MAX), limits)?;
    let engine = CharacterEngine::new(rd);
    let act = verma_quotient(&engine, lambda)?;
    let r = rd.rank();
    let np = cb.num_positive_roots();
    let mut e = act.e;
    let mut f = act.f;
    for k in r..np {
        let (i, kb) = cb
            .root_recursion(k)
            .ok_or_else(|| Error::Internal(String::from("root recursion")))?;
        let ne = cb.structure_constant(cb.e(i), cb.e(kb));
        let nf = cb.structure_constant(cb.f(i), cb.f(kb));
        let ek = e[i].commutator(&e[kb]).scale(&(q(1) / q(ne)));
        let fk = f[i].commutator(&f[kb]).scale(&(q(1) / q(nf)));
        e.push(ek);
        f.push(fk);
    }
    let h = (0..r).map(|i| {
        let d: Vec<Rational> = act.weights.iter().map(|w| q(w.0[i])).collect();
        SparseMatrix::diagonal(&d)
    });
    let mats = e.into_iter().chain(f).chain(h).collect();
    Ok(ExplicitModule {
        weights: act.weights,
        mats,
        highest_weight: Some(lambda.clone()),
    })
}

/// The adjoint module, read off the bracket table.
pub fn adjoint_module(cb: &ChevalleyBasis) -> ExplicitModule {
    let n = cb.dim();
    let mats = (0..n)
        .map(|a| {
            let cols = (0..n)
                .map(|b| cb.bracket(a, b).iter().map(|&(c, v)| (c, q(v))).collect())
                .collect();
            SparseMatrix::from_columns(n, cols)
        })
        .collect();
    ExplicitModule {
        weights: (0..n).map(|a| cb.weight(a)).collect(),
        mats,
        highest_weight: Some(cb.datum().theta().clone()),
    }
}

/// `Sⁿ(M)` together with its monomial basis.
#[derive(Clone, Debug)]
pub struct SymmetricPower {
    pub module: ExplicitModule,
    pub monomials: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
}

impl SymmetricPower {
    pub fn position(&self, mono: &[usize]) -> Option<usize> {
        self.index.get(mono).copied()
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

/// Non-decreasing index tuples of length `n` over `0..d`, in lexicographic order.
fn multisets(d: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(d: usize, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            rec(d, n, i, cur, out);
            cur.pop();
        }
    }
    rec(d, n, 0, &mut cur, &mut out);
    out
}

pub fn symmetric_power(m: &ExplicitModule, n: usize, limits: &Limits) -> Result<SymmetricPower> {
    let d = m.dim();
    check_cap(binomial((d + n).saturating_sub(1) as u128, n as u128), limits)?;
    let monomials = multisets(d, n);
    let index: BTreeMap<Vec<usize>, usize> =
        monomials.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect();
    let rank = m.weights.first().map(|w| w.rank()).unwrap_or(0);
    let weights: Vec<Weight> = monomials
        .iter()
        .map(|mono| {
            mono.iter()
                .fold(Weight::zero(rank), |acc, &b| &acc + &m.weights[b])
        })
        .collect();
    let mats = m
        .mats
        .iter()
        .map(|x| {
            let cols = monomials
                .iter()
                .map(|mono| {
                    let mut acc = BTreeMap::new();
                    for k in 0..mono.len() {
                        if k > 0 && mono[k] == mono[k - 1] {
                            continue;
                        }
                        let reps = mono.iter().filter(|&&b| b == mono[k]).count() as i64;
                        for (c, v) in x.column(mono[k]) {
                            let mut t = mono.clone();
                            t[k] = *c;
                            t.sort_unstable();
                            *acc.entry(index[&t]).or_insert_with(Rational::zero) += v * q(reps);
                        }
                    }
                    collect(acc)
                })
                .collect();
            SparseMatrix::from_columns(monomials.len(), cols)
        })
        .collect();
    Ok(SymmetricPower {
        module: ExplicitModule {
            weights,
            mats,
            highest_weight: None,
        },
        monomials,
        index,
    })
}

/// `Sⁿ(M)` with generators acting by derivations.
pub fn symmetric_power_module(m: &ExplicitModule, n: usize, limits: &Limits) -> Result<ExplicitModule> {
    Ok(symmetric_power(m, n, limits)?.module)
}

/// The matrix of `Dⁿ[L(λ)]` together with the modules it was built from.
#[derive(Clone, Debug)]
pub struct DMapMatrix {
    n: usize,
    lambda: Weight,
    module: ExplicitModule,
    source: SymmetricPower,
    target: SymmetricPower,
    cols: Vec<SparseVec>,
}

/// `Dⁿ[L(λ)]: Sⁿ(s) ⊗ L(λ) → Sⁿ⁻¹(s) ⊗ L(λ)`.
pub fn dmap_matrix(cb: &ChevalleyBasis, lambda: &Weight, n: usize, limits: &Limits) -> Result<DMapMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument(String::from("Dⁿ needs n ≥ 1")));
    }
    let rd = cb.datum();
    let dl = rd.weyl_dimension(lambda).to_u128().unwrap_or(u128::MAX);
    let ds = binomial((cb.dim() + n - 1) as u128, n as u128);
    check_cap(ds.saturating_mul(dl), limits)?;
    let module = simple_module(cb, lambda, limits)?;
    let adj = adjoint_module(cb);
    let source = symmetric_power(&adj, n, limits)?;
    let target = symmetric_power(&adj, n - 1, limits)?;
    dmap_for(module, source, target, lambda.clone(), n)
}

fn dmap_for(
    module: ExplicitModule,
    source: SymmetricPower,
    target: SymmetricPower,
    lambda: Weight,
    n: usize,
) -> Result<DMapMatrix> {
    let dl = module.dim();
    let mut cols = Vec::with_capacity(source.monomials.len() * dl);
    for mono in &source.monomials {
        for v in 0..dl {
            let mut acc = BTreeMap::new();
            for k in 0..mono.len() {
                let mut rest = mono.clone();
                let x = rest.remove(k);
                let base = target.index[&rest] * dl;
                for (u, c) in module.action(x).column(v) {
                    *acc.entry(base + u).or_insert_with(Rational::zero) += c;
                }
            }
            cols.push(collect(acc));
        }
    }
    Ok(DMapMatrix {
        n,
        lambda,
        module,
        source,
        target,
        cols,
    })
}

impl DMapMatrix {
    pub fn level(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    pub fn source_dim(&self) -> usize {
        self.cols.len()
    }

    pub fn target_dim(&self) -> usize {
        self.target.monomials.len() * self.module.dim()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    fn source_weight(&self, j: usize) -> Weight {
        let dl = self.module.dim();
        &self.source.module.weights[j / dl] + &self.module.weights[j % dl]
    }

    fn target_weight(&self, j: usize) -> Weight {
        let dl = self.module.dim();
        &self.target.module.weights[j / dl] + &self.module.weights[j % dl]
    }

    /// `X·(m ⊗ v) = (X·m) ⊗ v + m ⊗ (X·v)`.
    fn tensor_act(sym: &SymmetricPower, module: &ExplicitModule, x: usize, j: usize) -> SparseVec {
        let dl = module.dim();
        let (m, v) = (j / dl, j % dl);
        let mut acc = BTreeMap::new();
        for (m2, c) in sym.module.action(x).column(m) {
            *acc.entry(m2 * dl + v).or_insert_with(Rational::zero) += c;
        }
        for (v2, c) in module.action(x).column(v) {
            *acc.entry(m * dl + v2).or_insert_with(Rational::zero) += c;
        }
        collect(acc)
    }

    fn apply(&self, v: &[(usize, Rational)]) -> SparseVec {
        let mut acc = BTreeMap::new();
        for (j, x) in v {
            accumulate(&mut acc, &self.cols[*j], x);
        }
        collect(acc)
    }

    /// `X·D = D·X` on every source basis vector, for the given generators.
    pub fn check_equivariance(&self, gens: &[usize]) -> bool {
        for &x in gens {
            for j in 0..self.source_dim() {
                let lhs = self.apply(&Self::tensor_act(&self.source, &self.module, x, j));
                let mut acc = BTreeMap::new();
                for (t, c) in &self.cols[j] {
                    accumulate(&mut acc, &Self::tensor_act(&self.target, &self.module, x, *t), c);
                }
                if lhs != collect(acc) {
                    return false;
                }
            }
        }
        true
    }

    fn blocks(&self) -> (BTreeMap<Weight, Vec<usize>>, BTreeMap<Weight, Vec<usize>>) {
        let mut src: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for j in 0..self.source_dim() {
            src.entry(self.source_weight(j)).or_default().push(j);
        }
        let mut tgt: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for j in 0..self.target_dim() {
            tgt.entry(self.target_weight(j)).or_default().push(j);
        }
        (src, tgt)
    }

    fn block_rank(&self, src: &[usize], tgt: &[usize]) -> usize {
        if src.is_empty() || tgt.is_empty() {
            return 0;
        }
        let pos: BTreeMap<usize, usize> = tgt.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        let rows: Vec<Vec<BigInt>> = src
            .iter()
            .map(|&j| {
                let mut row = vec![Rational::zero(); tgt.len()];
                for (t, c) in &self.cols[j] {
                    row[pos[t]] = c.clone();
                }
                linalg::integer_row(&row)
            })
            .collect();
        linalg::rank_int(rows)
    }

    /// `(dim source_μ, dim target_μ, rank_μ)` for each weight `μ`, restricted
    /// to dominant weights when `dominant_only`. `D` preserves weights, so it
    /// is block diagonal.
    pub fn weight_ranks(&self, dominant_only: bool) -> BTreeMap<Weight, (usize, usize, usize)> {
        let (src, tgt) = self.blocks();
        let keys: BTreeSet<&Weight> = src.keys().chain(tgt.keys()).collect();
        let empty = Vec::new();
        keys.into_iter()
            .filter(|w| !dominant_only || w.is_dominant())
            .map(|w| {
                let s = src.get(w).unwrap_or(&empty);
                let t = tgt.get(w).unwrap_or(&empty);
                (w.clone(), (s.len(), t.len(), self.block_rank(s, t)))
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.weight_ranks(false).values().map(|x| x.2).sum()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target_dim()
    }

    /// Decompositions of `ker Dⁿ` and `coker Dⁿ` into simple modules.
    pub fn ker_coker_multiplicities(&self, engine: &CharacterEngine<'_>) -> Result<(IrrDecomposition, IrrDecomposition)> {
        let rank = self.lambda.rank();
        let mut ker = FormalCharacter::zero(rank);
        let mut coker = FormalCharacter::zero(rank);
        for (w, (s, t, r)) in self.weight_ranks(true) {
            ker.add_weight(w.clone(), BigInt::from(s - r));
            coker.add_weight(w, BigInt::from(t - r));
        }
        let k = engine.decompose(&ker).map_err(|e| Error::Internal(format!("kernel: {e}")))?;
        let c = engine.decompose(&coker).map_err(|e| Error::Internal(format!("cokernel: {e}")))?;
        Ok((k, c))
    }
}

/// Kernel/cokernel decompositions of `Dⁿ[L(λ)]`, read off the matrix.
pub fn ker_coker_multiplicities(d: &DMapMatrix, engine: &CharacterEngine<'_>) -> Result<(IrrDecomposition, IrrDecomposition)> {
    d.ker_coker_multiplicities(engine)
}
