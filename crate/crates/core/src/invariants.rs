//! Schur–Weyl experiments for `s = sl(n)`: the realisation of `g` inside
//! `gl(n|n)`, the action on `V^{⊗r}` for `V = C^{n|n}`, commutants and the
//! image of the symmetric group.
//!
//! `g` is realised by the block matrices `[[A, bI], [C, A + dI]]` with
//! `tr A = tr C = 0`. The first `n` coordinates of `V` are even.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linalg::{rank_int, SparseEchelon, SparseRow};
use crate::{Error, Limits, Result};

/// A `2n × 2n` integer matrix with a parity tag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperMatrix {
    pub entries: Vec<Vec<i64>>,
    pub odd: bool,
}

impl SuperMatrix {
    fn zero(size: usize, odd: bool) -> Self {
        SuperMatrix { entries: vec![vec![0; size]; size], odd }
    }

    fn size(&self) -> usize {
        self.entries.len()
    }

    fn mul(&self, other: &SuperMatrix) -> Vec<Vec<i64>> {
        let s = self.size();
        let mut out = vec![vec![0; s]; s];
        for i in 0..s {
            for k in 0..s {
                let x = self.entries[i][k];
                if x != 0 {
                    for j in 0..s {
                        out[i][j] += x * other.entries[k][j];
                    }
                }
            }
        }
        out
    }

    /// `[X, Y] = XY − (−1)^{|X||Y|} YX`.
    pub fn superbracket(&self, other: &SuperMatrix) -> SuperMatrix {
        let xy = self.mul(other);
        let yx = other.mul(self);
        let sign = if self.odd && other.odd { -1 } else { 1 };
        let entries = xy
            .iter()
            .zip(&yx)
            .map(|(a, b)| a.iter().zip(b).map(|(p, q)| p - sign * q).collect())
            .collect();
        SuperMatrix { entries, odd: self.odd ^ other.odd }
    }

    fn flat(&self) -> Vec<BigInt> {
        self.entries.iter().flatten().map(|&x| BigInt::from(x)).collect()
    }

    fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|&x| x == 0)
    }
}

/// A basis of a Lie superalgebra of `2n × 2n` matrices.
#[derive(Clone, Debug)]
pub struct SuperMatrixRep {
    pub n: usize,
    pub basis: Vec<SuperMatrix>,
}

impl SuperMatrixRep {
    pub fn even_dim(&self) -> usize {
        self.basis.iter().filter(|m| !m.odd).count()
    }

    pub fn odd_dim(&self) -> usize {
        self.basis.iter().filter(|m| m.odd).count()
    }

    /// Every basis element has the shape `[[A, bI], [C, A + dI]]` with
    /// `tr A = tr C = 0`, and its parity tag matches its blocks.
    pub fn check_block_form(&self) -> bool {
        let n = self.n;
        self.basis.iter().all(|m| {
            let e = &m.entries;
            let a = |i: usize, j: usize| e[i][j];
            let b = e[0][n];
            let d = e[n][n] - e[0][0];
            let mut ok = (0..n).map(|i| a(i, i)).sum::<i64>() == 0
                && (0..n).map(|i| e[n + i][i]).sum::<i64>() == 0;
            for i in 0..n {
                for j in 0..n {
                    let id = i64::from(i == j);
                    ok &= e[i][n + j] == b * id;
                    ok &= e[n + i][n + j] == a(i, j) + d * id;
                }
            }
            let has_even = (0..n).any(|i| (0..n).any(|j| a(i, j) != 0)) || d != 0;
            let has_odd = b != 0 || (0..n).any(|i| (0..n).any(|j| e[n + i][j] != 0));
            ok && if m.odd { !has_even } else { !has_odd }
        })
    }

    /// The superbracket of any two basis elements lies in the span of the
    /// basis elements of the right parity.
    pub fn check_closure(&self) -> bool {
        let span = |odd: bool| -> Vec<Vec<BigInt>> {
            self.basis.iter().filter(|m| m.odd == odd).map(SuperMatrix::flat).collect()
        };
        let even = span(false);
        let odd = span(true);
        let (re, ro) = (rank_int(even.clone()), rank_int(odd.clone()));
        for x in &self.basis {
            for y in &self.basis {
                let z = x.superbracket(y);
                if z.is_zero() {
                    continue;
                }
                let (mut rows, r) = if z.odd { (odd.clone(), ro) } else { (even.clone(), re) };
                rows.push(z.flat());
                if rank_int(rows) != r {
                    return false;
                }
            }
        }
        true
    }
}

fn unit(size: usize, i: usize, j: usize, odd: bool) -> SuperMatrix {
    let mut m = SuperMatrix::zero(size, odd);
    m.entries[i][j] = 1;
    m
}

/// Traceless `n × n` basis: `E_ij` for `i ≠ j`, then `E_ii − E_{i+1,i+1}`.
fn sl_basis(n: usize) -> Vec<Vec<(usize, usize, i64)>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(vec![(i, j, 1)]);
            }
        }
    }
    for i in 0..n - 1 {
        out.push(vec![(i, i, 1), (i + 1, i + 1, -1)]);
    }
    out
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Precondition(format!("n = {n}, need n ≥ 2")));
    }
    Ok(())
}

/// The realisation of `g` for `s = sl(n)` inside `gl(n|n)`.
pub fn realize_g(n: usize) -> Result<SuperMatrixRep> {
    check_n(n)?;
    let size = 2 * n;
    let mut basis = Vec::new();
    for terms in sl_basis(n) {
        let mut m = SuperMatrix::zero(size, false);
        for &(i, j, v) in &terms {
            m.entries[i][j] = v;
            m.entries[n + i][n + j] = v;
        }
        basis.push(m);
    }
    let mut d = SuperMatrix::zero(size, false);
    for i in 0..n {
        d.entries[n + i][n + i] = 1;
    }
    basis.push(d);
    for terms in sl_basis(n) {
        let mut m = SuperMatrix::zero(size, true);
        for &(i, j, v) in &terms {
            m.entries[n + i][j] = v;
        }
        basis.push(m);
    }
    let mut b = SuperMatrix::zero(size, true);
    for i in 0..n {
        b.entries[i][n + i] = 1;
    }
    basis.push(b);
    Ok(SuperMatrixRep { n, basis })
}

/// All elementary matrices of `gl(n|n)`.
pub fn realize_gl(n: usize) -> Result<SuperMatrixRep> {
    check_n(n)?;
    let size = 2 * n;
    let mut basis = Vec::new();
    for i in 0..size {
        for j in 0..size {
            basis.push(unit(size, i, j, (i < n) != (j < n)));
        }
    }
    Ok(SuperMatrixRep { n, basis })
}

/// A linear operator on a tensor space, stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operator {
    pub cols: Vec<Vec<(usize, i64)>>,
}

impl Operator {
    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn identity(dim: usize) -> Self {
        Operator { cols: (0..dim).map(|i| vec![(i, 1)]).collect() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Operator) -> Operator {
        let cols = other
            .cols
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for &(k, x) in col {
                    for &(i, y) in &self.cols[k] {
                        *acc.entry(i).or_insert(0) += x * y;
                    }
                }
                acc.into_iter().filter(|&(_, v)| v != 0).collect()
            })
            .collect();
        Operator { cols }
    }

    /// Rows of the operator: `rows[i]` lists `(j, M_ij)`.
    fn rows(&self) -> Vec<Vec<(usize, i64)>> {
        let mut rows = vec![Vec::new(); self.dim()];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, x) in col {
                rows[i].push((j, x));
            }
        }
        rows
    }
}

/// `(C^{n|n})^{⊗r}` with its pure-tensor basis in row-major order (the
/// first factor is the most significant digit).
#[derive(Clone, Debug)]
pub struct TensorSpace {
    pub n: usize,
    pub r: usize,
    pub dim: usize,
    /// Parity of each basis vector.
    pub parity: Vec<u8>,
    /// `prefix[u * r + k]`: number of odd factors before position `k`.
    prefix: Vec<u8>,
}

impl TensorSpace {
    pub fn new(n: usize, r: usize, limits: &Limits) -> Result<Self> {
        check_n(n)?;
        if r == 0 {
            return Err(Error::Precondition(String::from("r must be at least 1")));
        }
        let needed = (2 * n as u128).checked_pow(r as u32).unwrap_or(u128::MAX);
        if needed > limits.tensor_cap as u128 {
            return Err(Error::DimensionCap { needed, cap: limits.tensor_cap });
        }
        let dim = needed as usize;
        let mut parity = Vec::with_capacity(dim);
        let mut prefix = Vec::with_capacity(dim * r);
        for u in 0..dim {
            let mut p = 0u8;
            for k in 0..r {
                prefix.push(p);
                p += u8::from(Self::digit_of(n, r, u, k) >= n);
            }
            parity.push(p % 2);
        }
        Ok(TensorSpace { n, r, dim, parity, prefix })
    }

    fn digit_of(n: usize, r: usize, u: usize, k: usize) -> usize {
        (u / (2 * n).pow((r - 1 - k) as u32)) % (2 * n)
    }

    pub fn digit(&self, u: usize, k: usize) -> usize {
        Self::digit_of(self.n, self.r, u, k)
    }

    pub fn digits(&self, u: usize) -> Vec<usize> {
        (0..self.r).map(|k| self.digit(u, k)).collect()
    }

    fn place(&self, k: usize) -> usize {
        (2 * self.n).pow((self.r - 1 - k) as u32)
    }

    fn is_odd_index(&self, i: usize) -> bool {
        i >= self.n
    }

    /// Action of a homogeneous matrix by the super Leibniz rule.
    pub fn act(&self, x: &SuperMatrix) -> Operator {
        let s = 2 * self.n;
        let xcols: Vec<Vec<(usize, i64)>> = (0..s)
            .map(|j| (0..s).filter(|&i| x.entries[i][j] != 0).map(|i| (i, x.entries[i][j])).collect())
            .collect();
        let cols = (0..self.dim)
            .map(|u| {
                let mut out = Vec::new();
                for k in 0..self.r {
                    let i = self.digit(u, k);
                    let sign = if x.odd && self.prefix[u * self.r + k] % 2 == 1 { -1 } else { 1 };
                    let pl = self.place(k);
                    for &(j, v) in &xcols[i] {
                        out.push((u - i * pl + j * pl, sign * v));
                    }
                }
                out.sort_by_key(|e| e.0);
                merge_sorted(out)
            })
            .collect();
        Operator { cols }
    }

    /// The operator moving the factor in position `a` to position `perm[a]`,
    /// with a sign for every pair of odd factors whose order is reversed.
    pub fn permutation(&self, perm: &[usize]) -> Result<Operator> {
        let r = self.r;
        let mut seen = vec![false; r];
        if perm.len() != r || perm.iter().any(|&p| p >= r || core::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidArgument(format!("{perm:?} is not a permutation of 0..{r}")));
        }
        let cols = (0..self.dim)
            .map(|u| {
                let d = self.digits(u);
                let mut v = 0;
                for a in 0..r {
                    v += d[a] * self.place(perm[a]);
                }
                let mut flips = 0;
                for a in 0..r {
                    for b in a + 1..r {
                        if perm[a] > perm[b] && self.is_odd_index(d[a]) && self.is_odd_index(d[b]) {
                            flips += 1;
                        }
                    }
                }
                vec![(v, if flips % 2 == 0 { 1 } else { -1 })]
            })
            .collect();
        Ok(Operator { cols })
    }

    /// The adjacent transposition of factors `k` and `k + 1`.
    pub fn transposition(&self, k: usize) -> Result<Operator> {
        let mut perm: Vec<usize> = (0..self.r).collect();
        if k + 1 >= self.r {
            return Err(Error::InvalidArgument(format!("no transposition s_{k} for r = {}", self.r)));
        }
        perm.swap(k, k + 1);
        self.permutation(&perm)
    }
}

fn merge_sorted(v: Vec<(usize, i64)>) -> Vec<(usize, i64)> {
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 += x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

/// Operators of every basis element of `rep` on `V^{⊗r}`.
pub fn tensor_action(rep: &SuperMatrixRep, r: usize, limits: &Limits) -> Result<(TensorSpace, Vec<Operator>)> {
    let space = TensorSpace::new(rep.n, r, limits)?;
    let ops = rep.basis.iter().map(|x| space.act(x)).collect();
    Ok((space, ops))
}

/// Operators of the adjacent transpositions `s_1, …, s_{r−1}`.
pub fn sym_action(n: usize, r: usize, limits: &Limits) -> Result<Vec<Operator>> {
    let space = TensorSpace::new(n, r, limits)?;
    (0..r.saturating_sub(1)).map(|k| space.transposition(k)).collect()
}

/// `[T, X] = 0` against every operator, where `T` is even.
pub fn commutes_with_all(t: &Operator, ops: &[Operator]) -> bool {
    ops.iter().all(|x| t.compose(x) == x.compose(t))
}

/// All permutations of `0..r` in lexicographic order.
pub fn permutations(r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..r).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..r).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..r).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// Which algebra the commutant is taken for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algebra {
    G,
    Gl,
}

impl Algebra {
    pub fn name(self) -> &'static str {
        match self {
            Algebra::G => "g",
            Algebra::Gl => "gl",
        }
    }
}

/// Dimensions of the even and odd parts of a commutant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CommutantDims {
    pub even: usize,
    pub odd: usize,
}

impl CommutantDims {
    pub fn total(&self) -> usize {
        self.even + self.odd
    }
}

/// Weight of a basis vector. For `g` the torus is spanned by `diag(H, H)`
/// and `d`, so the weight is the content modulo `i ↦ i mod n` together with
/// the number of odd factors; for `gl(n|n)` it is the full content.
fn weight_key(space: &TensorSpace, u: usize, alg: Algebra) -> Vec<u8> {
    let n = space.n;
    match alg {
        Algebra::Gl => {
            let mut c = vec![0u8; 2 * n];
            for k in 0..space.r {
                c[space.digit(u, k)] += 1;
            }
            c
        }
        Algebra::G => {
            let mut c = vec![0u8; n + 1];
            for k in 0..space.r {
                let i = space.digit(u, k);
                c[i % n] += 1;
                c[n] += u8::from(i >= n);
            }
            c
        }
    }
}

/// Generators of the algebra modulo its Cartan subalgebra, which is
/// accounted for by restricting to weight-preserving `T`.
fn generators(n: usize, alg: Algebra) -> Vec<SuperMatrix> {
    let size = 2 * n;
    match alg {
        Algebra::Gl => (0..size - 1)
            .flat_map(|i| {
                let odd = i + 1 == n;
                [unit(size, i, i + 1, odd), unit(size, i + 1, i, odd)]
            })
            .collect(),
        Algebra::G => {
            let mut out = Vec::new();
            for i in 0..n - 1 {
                for (a, b) in [(i, i + 1), (i + 1, i)] {
                    let mut m = SuperMatrix::zero(size, false);
                    m.entries[a][b] = 1;
                    m.entries[n + a][n + b] = 1;
                    out.push(m);
                }
            }
            let mut b = SuperMatrix::zero(size, true);
            for i in 0..n {
                b.entries[i][n + i] = 1;
            }
            out.push(b);
            out.push(unit(size, n, n - 1, true));
            out
        }
    }
}

/// Dimension of `{T : T X = (−1)^{|T||X|} X T}` over the given operators,
/// with `T` ranging over weight-preserving endomorphisms.
fn commutant_of(space: &TensorSpace, ops: &[(Operator, bool)], key: impl Fn(usize) -> Vec<u8>) -> CommutantDims {
    let mut blocks: BTreeMap<Vec<u8>, Vec<usize>> = BTreeMap::new();
    for u in 0..space.dim {
        blocks.entry(key(u)).or_default().push(u);
    }
    let mut block_of = vec![0usize; space.dim];
    let mut pos = vec![0usize; space.dim];
    let mut offset = Vec::new();
    let mut members = Vec::new();
    let mut total = 0usize;
    for (b, (_, m)) in blocks.into_iter().enumerate() {
        for (p, &u) in m.iter().enumerate() {
            block_of[u] = b;
            pos[u] = p;
        }
        offset.push(total);
        total += m.len() * m.len();
        members.push(m);
    }
    let col = |a: usize, b: usize| -> Option<usize> {
        let bl = block_of[a];
        (bl == block_of[b]).then(|| offset[bl] + pos[a] * members[bl].len() + pos[b])
    };
    let par = &space.parity;
    let mut unknowns = [0usize; 2];
    for m in &members {
        for &a in m {
            for &b in m {
                unknowns[usize::from(par[a] ^ par[b])] += 1;
            }
        }
    }
    let mut echelons = [SparseEchelon::new(), SparseEchelon::new()];
    for (x, xodd) in ops {
        let xrows = x.rows();
        let mut eqs: BTreeMap<(usize, usize), Vec<(usize, i64)>> = BTreeMap::new();
        for m in &members {
            for &a in m {
                for &b in m {
                    let c = col(a, b).unwrap();
                    let todd = par[a] ^ par[b] == 1;
                    let sign = if todd && *xodd { -1 } else { 1 };
                    // (T X)_{a v} += T_ab X_bv
                    for &(v, val) in &xrows[b] {
                        eqs.entry((a, v)).or_default().push((c, val));
                    }
                    // (X T)_{u b} += X_ua T_ab
                    for &(u, val) in &x.cols[a] {
                        eqs.entry((u, b)).or_default().push((c, -sign * val));
                    }
                }
            }
        }
        for ((u, v), mut row) in eqs {
            row.sort_by_key(|e| e.0);
            let row = merge_sorted(row);
            if row.is_empty() {
                continue;
            }
            let class = usize::from(par[u] ^ par[v] ^ u8::from(*xodd));
            let row: SparseRow = row.into_iter().map(|(c, v)| (c, BigInt::from(v))).collect();
            echelons[class].insert(row);
        }
    }
    CommutantDims {
        even: unknowns[0] - echelons[0].rank(),
        odd: unknowns[1] - echelons[1].rank(),
    }
}

/// `dim End_A(V^{⊗r})` for `A = g` or `A = gl(n|n)`, split by parity.
pub fn commutant_dim(n: usize, r: usize, alg: Algebra, limits: &Limits) -> Result<CommutantDims> {
    let space = TensorSpace::new(n, r, limits)?;
    let ops: Vec<(Operator, bool)> = generators(n, alg).iter().map(|x| (space.act(x), x.odd)).collect();
    Ok(commutant_of(&space, &ops, |u| weight_key(&space, u, alg)))
}

/// The commutant of every basis element of `rep`, without weight blocking.
/// Quadratic in `dim V^{⊗r}`; only meant as a cross-check for tiny cases.
pub fn commutant_dim_unblocked(rep: &SuperMatrixRep, r: usize, limits: &Limits) -> Result<CommutantDims> {
    let (space, ops) = tensor_action(rep, r, limits)?;
    let ops: Vec<(Operator, bool)> = ops.into_iter().zip(rep.basis.iter().map(|x| x.odd)).collect();
    Ok(commutant_of(&space, &ops, |_| Vec::new()))
}

/// Rank of the span of the `r!` signed permutation operators.
pub fn phi_image_dim(n: usize, r: usize, limits: &Limits) -> Result<usize> {
    let space = TensorSpace::new(n, r, limits)?;
    let mut ech = SparseEchelon::new();
    for perm in permutations(r) {
        let op = space.permutation(&perm)?;
        let mut row: SparseRow = op
            .cols
            .iter()
            .enumerate()
            .flat_map(|(j, col)| col.iter().map(move |&(i, x)| (i * space.dim + j, BigInt::from(x))))
            .collect();
        row.sort_by_key(|e| e.0);
        ech.insert(row);
    }
    Ok(ech.rank())
}

/// Outcome of comparing `C S_r` with `End_g(V^{⊗r})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ItVerdict {
    pub n: usize,
    pub r: usize,
    pub injective: bool,
    pub surjective: bool,
    pub commutant: CommutantDims,
    pub image: usize,
    pub group_order: BigInt,
    /// Known facts the computed data contradicts; nonempty means a bug.
    pub violations: Vec<String>,
}

/// Computes `φ_r` data for `s = sl(n)` and checks it against the known
/// injectivity and surjectivity statements.
pub fn it_verdict(n: usize, r: usize, limits: &Limits) -> Result<ItVerdict> {
    let commutant = commutant_dim(n, r, Algebra::G, limits)?;
    let image = phi_image_dim(n, r, limits)?;
    let group_order: BigInt = (1..=r).map(BigInt::from).product();
    let injective = BigInt::from(image) == group_order;
    let surjective = commutant.total() == image;
    let mut violations = Vec::new();
    if image > commutant.total() {
        violations.push(format!("image {image} exceeds commutant {}", commutant.total()));
    }
    if (r < n || (r == n && n >= 3)) && !surjective {
        violations.push(format!("r = {r}, n = {n}: expected an isomorphism"));
    }
    if r == 2 && n == 2 && surjective {
        violations.push(String::from("r = n = 2: expected not surjective"));
    }
    if r > 2 * n - 2 && surjective {
        violations.push(format!("r = {r} > 2n − 2: expected not surjective"));
    }
    if r < (n + 1) * (n + 1) && !injective {
        violations.push(format!("r = {r} < (n+1)²: expected injective"));
    }
    if r >= (n + 1) * (n + 1) && injective {
        violations.push(format!("r = {r} ≥ (n+1)²: expected not injective"));
    }
    Ok(ItVerdict { n, r, injective, surjective, commutant, image, group_order, violations })
}

/// Partitions of `r` in decreasing lexicographic order.
pub fn partitions(r: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(r, r, &mut Vec::new(), &mut out);
    out
}

/// `dim S_λ` by the hook length formula.
pub fn specht_dim(lambda: &[usize]) -> BigInt {
    let r: usize = lambda.iter().sum();
    let mut num: BigInt = (1..=r).map(BigInt::from).product();
    let mut den = BigInt::one();
    for (i, &row) in lambda.iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = lambda[i + 1..].iter().filter(|&&l| l > j).count();
            den *= arm + leg + 1;
        }
    }
    num /= den;
    num
}

/// `Σ (dim S_λ)²` over partitions `λ ⊢ r` with `λ_{n+1} ≤ n`.
pub fn gl_commutant_formula(n: usize, r: usize) -> BigInt {
    partitions(r)
        .iter()
        .filter(|p| p.get(n).is_none_or(|&l| l <= n))
        .map(|p| {
            let d = specht_dim(p);
            &d * &d
        })
        .sum()
}

/// One graded piece of `∧ⁿ V` with `k` odd factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPiece {
    pub k: usize,
    pub computed: usize,
    pub expected: BigInt,
}

/// `∧ⁿ V` as the image of the signed antisymmetriser on `V^{⊗n}`, compared
/// weight by weight with `⊕_k ∧^{n−k} V₀ ⊗ S^k V₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorCheck {
    pub n: usize,
    pub pieces: Vec<GradedPiece>,
    /// Every `gl(n|n)` weight space has the predicted dimension.
    pub weights_match: bool,
}

impl ExteriorCheck {
    pub fn holds(&self) -> bool {
        self.weights_match && self.pieces.iter().all(|p| BigInt::from(p.computed) == p.expected)
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

pub fn exterior_power_check(n: usize, limits: &Limits) -> Result<ExteriorCheck> {
    let space = TensorSpace::new(n, n, limits)?;
    let perms = permutations(n);
    let ops: Vec<(Operator, i64)> = perms
        .iter()
        .map(|p| Ok((space.permutation(p)?, perm_sign(p))))
        .collect::<Result<_>>()?;
    let mut blocks: BTreeMap<Vec<u8>, Vec<usize>> = BTreeMap::new();
    for u in 0..space.dim {
        blocks.entry(weight_key(&space, u, Algebra::Gl)).or_default().push(u);
    }
    let mut computed = vec![0usize; n + 1];
    let mut weights_match = true;
    for (content, m) in &blocks {
        let index: BTreeMap<usize, usize> = m.iter().enumerate().map(|(p, &u)| (u, p)).collect();
        let mut rows = vec![vec![BigInt::zero(); m.len()]; m.len()];
        for (j, &u) in m.iter().enumerate() {
            for (op, sign) in &ops {
                for &(v, x) in &op.cols[u] {
                    rows[j][index[&v]] += sign * x;
                }
            }
        }
        let rank = rank_int(rows);
        let k: usize = content[n..].iter().map(|&c| c as usize).sum();
        computed[k] += rank;
        let expected = usize::from(content[..n].iter().all(|&c| c <= 1));
        weights_match &= rank == expected;
    }
    let pieces = (0..=n)
        .map(|k| GradedPiece {
            k,
            computed: computed[k],
            expected: binomial(n, n - k) * binomial(n + k - 1, k),
        })
        .collect();
    Ok(ExteriorCheck { n, pieces, weights_match })
}

fn perm_sign(p: &[usize]) -> i64 {
    let mut inv = 0;
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            inv += usize::from(p[a] > p[b]);
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn realisation() {
        for n in 2..=3 {
            let g = realize_g(n).unwrap();
            assert_eq!(g.even_dim(), n * n);
            assert_eq!(g.odd_dim(), n * n);
            assert!(g.check_block_form());
            assert!(g.check_closure());
        }
        let gl = realize_gl(2).unwrap();
        assert!(gl.check_closure());
        assert!(!gl.check_block_form());
        assert!(realize_g(1).is_err());
    }

    #[test]
    fn tensor_operators() {
        let lim = lim();
        let g = realize_g(2).unwrap();
        let (_, ops) = tensor_action(&g, 1, &lim).unwrap();
        for (x, op) in g.basis.iter().zip(&ops) {
            for j in 0..4 {
                for i in 0..4 {
                    let e = op.cols[j].iter().find(|c| c.0 == i).map_or(0, |c| c.1);
                    assert_eq!(e, x.entries[i][j]);
                }
            }
        }
        let s = sym_action(2, 3, &lim).unwrap();
        let id = Operator::identity(64);
        for t in &s {
            assert_eq!(t.compose(t), id);
        }
        assert_eq!(s[0].compose(&s[1]).compose(&s[0]), s[1].compose(&s[0]).compose(&s[1]));
        let (_, ops) = tensor_action(&g, 3, &lim).unwrap();
        for t in &s {
            assert!(commutes_with_all(t, &ops));
        }
        // the action is a representation: ρ([x, y]) = [ρ(x), ρ(y)]
        let space = TensorSpace::new(2, 2, &lim).unwrap();
        for x in &g.basis {
            for y in &g.basis {
                let lhs = space.act(&x.superbracket(y));
                let (px, py) = (space.act(x), space.act(y));
                let sign = if x.odd && y.odd { -1 } else { 1 };
                let a = px.compose(&py);
                let b = py.compose(&px);
                for j in 0..space.dim {
                    let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                    for &(i, v) in &a.cols[j] {
                        *acc.entry(i).or_insert(0) += v;
                    }
                    for &(i, v) in &b.cols[j] {
                        *acc.entry(i).or_insert(0) -= sign * v;
                    }
                    let rhs: Vec<(usize, i64)> = acc.into_iter().filter(|e| e.1 != 0).collect();
                    assert_eq!(lhs.cols[j], rhs);
                }
            }
        }
    }

    #[test]
    fn cap_enforced() {
        let small = Limits { tensor_cap: 100, ..Limits::default() };
        assert!(matches!(TensorSpace::new(2, 4, &small), Err(Error::DimensionCap { needed: 256, .. })));
        assert!(TensorSpace::new(2, 3, &small).is_ok());
    }

    #[test]
    fn blocked_matches_unblocked() {
        let lim = lim();
        for alg in [Algebra::G, Algebra::Gl] {
            let rep = match alg {
                Algebra::G => realize_g(2).unwrap(),
                Algebra::Gl => realize_gl(2).unwrap(),
            };
            assert_eq!(
                commutant_dim(2, 2, alg, &lim).unwrap(),
                commutant_dim_unblocked(&rep, 2, &lim).unwrap()
            );
        }
    }

    #[test]
    fn small_commutants() {
        let lim = lim();
        let c = commutant_dim(3, 2, Algebra::G, &lim).unwrap();
        assert_eq!(c.total(), 2);
        assert_eq!(phi_image_dim(3, 2, &lim).unwrap(), 2);
        assert_eq!(commutant_dim(2, 2, Algebra::Gl, &lim).unwrap().total(), 2);
        let c = commutant_dim(2, 2, Algebra::G, &lim).unwrap();
        assert!(c.total() > 2);
        assert_eq!(c.odd, 0);
    }

    #[test]
    fn verdicts() {
        let lim = lim();
        let v = it_verdict(3, 2, &lim).unwrap();
        assert!(v.surjective && v.injective && v.violations.is_empty());
        let v = it_verdict(2, 2, &lim).unwrap();
        assert!(!v.surjective && v.violations.is_empty());
        let v = it_verdict(2, 3, &lim).unwrap();
        assert!(!v.surjective && v.violations.is_empty());
        assert_eq!(v.image, 6);
        assert!(v.image < v.commutant.total());
        let v = it_verdict(3, 3, &lim).unwrap();
        assert!(v.surjective && v.violations.is_empty());
    }

    #[test]
    fn hook_lengths() {
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(specht_dim(&[2, 1]), BigInt::from(2));
        assert_eq!(specht_dim(&[3, 2]), BigInt::from(5));
        assert_eq!(specht_dim(&[2, 2, 1]), BigInt::from(5));
        for r in 1..7 {
            let total: BigInt = partitions(r).iter().map(|p| specht_dim(p) * specht_dim(p)).sum();
            assert_eq!(total, (1..=r).map(BigInt::from).product::<BigInt>());
        }
        assert_eq!(gl_commutant_formula(1, 4), BigInt::from(24 - 4));
    }

    #[test]
    fn gl_double_commutant_small() {
        let lim = lim();
        for (n, r) in [(2, 1), (2, 2), (2, 3), (3, 2)] {
            let c = commutant_dim(n, r, Algebra::Gl, &lim).unwrap();
            assert_eq!(BigInt::from(c.total()), gl_commutant_formula(n, r), "n={n} r={r}");
        }
    }

    #[test]
    fn exterior_power() {
        for n in 2..=3 {
            let c = exterior_power_check(n, &lim()).unwrap();
            assert!(c.holds(), "{c:?}");
        }
    }
}
