//! Exact linear algebra over ℤ and ℚ.
//!
//! Dense routines use fraction-free (Bareiss) elimination; the sparse
//! incremental echelon form keeps primitive integer rows so that no rational
//! normalisation is needed while reducing.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer determinant via Bareiss elimination.
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Rank of an integer matrix by fraction-free elimination.
pub fn rank_int(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            let lead = core::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = &pivot_row[c] * &row[j] - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = pivot_row[c].clone();
        r += 1;
    }
    r
}

/// Scales a rational row to a primitive integer row with the same span.
pub fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for x in row {
        den = den.lcm(x.denom());
    }
    row.iter().map(|x| x.numer() * (&den / x.denom())).collect()
}

pub fn rank_rational(rows: &[Vec<Rational>]) -> usize {
    rank_int(rows.iter().map(|r| integer_row(r)).collect())
}

/// Reduced row echelon form over ℚ. Returns the pivot column of each
/// nonzero row, in order.
pub fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let sub = &f * &m[r][j];
                    m[i][j] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Inverse of a square rational matrix, if it exists.
pub fn inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { q(1) } else { q(0) }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `x · a = b` for a row vector `x`, where `a` is `k × n`. Returns
/// `None` when `b` is not in the row space.
pub fn solve_left(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let k = a.len();
    let n = b.len();
    // transpose: a^T x^T = b^T
    let mut sys: Vec<Vec<Rational>> = (0..n)
        .map(|j| {
            let mut row: Vec<Rational> = (0..k).map(|i| a[i][j].clone()).collect();
            row.push(b[j].clone());
            row
        })
        .collect();
    let pivots = rref(&mut sys);
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut x = alloc::vec![q(0); k];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = sys[row][k].clone();
    }
    Some(x)
}

/// Sparse row over ℤ, sorted by column, no explicit zeros.
pub type SparseRow = Vec<(usize, BigInt)>;

/// Incrementally built echelon basis of a row space over ℚ, stored as
/// primitive integer rows keyed by their leading column.
#[derive(Default, Debug, Clone)]
pub struct SparseEchelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds a row; returns `true` if it enlarged the row space.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        row.retain(|(_, v)| !v.is_zero());
        row.sort_by_key(|(c, _)| *c);
        make_primitive(&mut row);
        loop {
            let Some((lead, lead_val)) = row.first().cloned() else {
                return false;
            };
            match self.pivots.get(&lead) {
                None => {
                    self.pivots.insert(lead, row);
                    return true;
                }
                Some(p) => {
                    let g = lead_val.gcd(&p[0].1);
                    let fr = &p[0].1 / &g;
                    let fp = &lead_val / &g;
                    row = combine(&row, &fr, p, &fp);
                    make_primitive(&mut row);
                }
            }
        }
    }

    /// Adds a row given with rational entries.
    pub fn insert_rational(&mut self, row: &[(usize, Rational)]) -> bool {
        let mut den = BigInt::one();
        for (_, x) in row {
            den = den.lcm(x.denom());
        }
        self.insert(
            row.iter()
                .map(|(c, x)| (*c, x.numer() * (&den / x.denom())))
                .collect(),
        )
    }
}

/// `a * fa - b * fb` for sparse rows.
fn combine(a: &SparseRow, fa: &BigInt, b: &SparseRow, fb: &BigInt) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|x| x.0).unwrap_or(usize::MAX);
        let cb = b.get(j).map(|x| x.0).unwrap_or(usize::MAX);
        if ca < cb {
            out.push((ca, &a[i].1 * fa));
            i += 1;
        } else if cb < ca {
            out.push((cb, -(&b[j].1 * fb)));
            j += 1;
        } else {
            let v = &a[i].1 * fa - &b[j].1 * fb;
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn make_primitive(row: &mut SparseRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() {
        return;
    }
    if row[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn rref_rank(m: &[Vec<i64>]) -> usize {
        let mut r: Vec<Vec<Rational>> = m.iter().map(|row| row.iter().map(|&x| q(x)).collect()).collect();
        rref(&mut r).len()
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&[vec![2, -1], vec![-1, 2]]), BigInt::from(3));
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(determinant(&[vec![1, 2], vec![2, 4]]), BigInt::from(0));
    }

    #[test]
    fn inverse_and_solve() {
        let m = vec![vec![q(2), q(-1)], vec![q(-1), q(2)]];
        let inv = inverse(&m).unwrap();
        assert_eq!(inv[0][0], q_frac(2, 3));
        assert_eq!(inv[0][1], q_frac(1, 3));
        let x = solve_left(&m, &[q(1), q(1)]).unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
        assert!(solve_left(&[vec![q(1), q(0)]], &[q(0), q(1)]).is_none());
    }

    proptest! {
        #[test]
        fn bareiss_rank_matches_rref(rows in 1usize..6, cols in 1usize..6, seed in proptest::collection::vec(-3i64..4, 36)) {
            let m: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 6 + j]).collect()).collect();
            let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            prop_assert_eq!(rank_int(big), rref_rank(&m));
        }

        #[test]
        fn sparse_echelon_rank_matches_rref(rows in 1usize..7, cols in 1usize..7, seed in proptest::collection::vec(-2i64..3, 49)) {
            let m: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 7 + j]).collect()).collect();
            let mut e = SparseEchelon::new();
            for r in &m {
                e.insert(r.iter().enumerate().map(|(c, &x)| (c, BigInt::from(x))).collect());
            }
            prop_assert_eq!(e.rank(), rref_rank(&m));
        }
    }
}
