//! Root data of the simple Lie algebras, weight arithmetic and Weyl-group
//! helpers.
//!
//! Simple roots follow Bourbaki numbering. Weights are stored in
//! fundamental-weight coordinates, roots in simple-root coordinates.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::linalg::{self, q, Rational};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn from_letter(c: char) -> Option<Series> {
        Some(match c.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return None,
        })
    }

    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }

    pub fn valid_rank(self, rank: usize) -> bool {
        match self {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        }
    }
}

/// An integral weight in fundamental-weight coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Weight {
        Weight(vec![0; rank])
    }

    /// The fundamental weight `ω_{i+1}` (zero-based index).
    pub fn fundamental(rank: usize, i: usize) -> Weight {
        let mut w = Weight::zero(rank);
        w.0[i] = 1;
        w
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|&c| c * k).collect())
    }

    pub fn add_scaled(&self, other: &Weight, k: i64) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(&a, &b)| a + k * b).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        self.add_scaled(rhs, 1)
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        self.add_scaled(rhs, -1)
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        self.scale(-1)
    }
}

/// Root system and Weyl-group data of a simple Lie algebra.
#[derive(Clone, Debug)]
pub struct RootDatum {
    series: Series,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    cartan_inv: Vec<Vec<Rational>>,
    /// `(α_i, α_i)` with short roots of length 2.
    simple_norms: Vec<i64>,
    positive_roots: Vec<Vec<i64>>,
    root_weights: Vec<Weight>,
    root_norms: Vec<i64>,
    root_index: BTreeMap<Vec<i64>, usize>,
    coxeter_number: usize,
    exponents: Vec<usize>,
    highest_root: usize,
    /// Integer Gram matrix of the fundamental weights, scaled by `form_scale`.
    form: Vec<Vec<i64>>,
    form_scale: i64,
}

fn inner_products(series: Series, r: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; r]; r];
    let link = |m: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        m[i][j] = v;
        m[j][i] = v;
    };
    match series {
        Series::A => {
            for i in 0..r {
                m[i][i] = 2;
            }
            for i in 0..r.saturating_sub(1) {
                link(&mut m, i, i + 1, -1);
            }
        }
        Series::B => {
            for i in 0..r - 1 {
                m[i][i] = 4;
                link(&mut m, i, i + 1, -2);
            }
            m[r - 1][r - 1] = 2;
        }
        Series::C => {
            for i in 0..r - 1 {
                m[i][i] = 2;
            }
            m[r - 1][r - 1] = 4;
            for i in 0..r - 2 {
                link(&mut m, i, i + 1, -1);
            }
            link(&mut m, r - 2, r - 1, -2);
        }
        Series::D => {
            for i in 0..r {
                m[i][i] = 2;
            }
            for i in 0..r - 2 {
                link(&mut m, i, i + 1, -1);
            }
            link(&mut m, r - 3, r - 1, -1);
        }
        Series::E => {
            for i in 0..r {
                m[i][i] = 2;
            }
            link(&mut m, 0, 2, -1);
            link(&mut m, 1, 3, -1);
            for i in 2..r - 1 {
                link(&mut m, i, i + 1, -1);
            }
        }
        Series::F => {
            m[0][0] = 4;
            m[1][1] = 4;
            m[2][2] = 2;
            m[3][3] = 2;
            link(&mut m, 0, 1, -2);
            link(&mut m, 1, 2, -2);
            link(&mut m, 2, 3, -1);
        }
        Series::G => {
            m[0][0] = 2;
            m[1][1] = 6;
            link(&mut m, 0, 1, -3);
        }
    }
    m
}

impl RootDatum {
    pub fn new(series: Series, rank: usize) -> Result<RootDatum> {
        if !series.valid_rank(rank) {
            return Err(Error::InvalidType {
                series: series.letter(),
                rank,
            });
        }
        let r = rank;
        let sym = inner_products(series, r);
        let simple_norms: Vec<i64> = (0..r).map(|i| sym[i][i]).collect();
        let cartan: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..r).map(|j| 2 * sym[i][j] / sym[j][j]).collect())
            .collect();

        // Positive roots by closure over root strings, level by level.
        let mut roots: Vec<Vec<i64>> = Vec::new();
        let mut known: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut level: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                let mut v = vec![0; r];
                v[i] = 1;
                v
            })
            .collect();
        while !level.is_empty() {
            for b in &level {
                known.insert(b.clone());
            }
            roots.extend(level.iter().cloned());
            let mut next = BTreeSet::new();
            for b in &level {
                for i in 0..r {
                    let pairing: i64 = (0..r).map(|j| b[j] * cartan[j][i]).sum();
                    let mut qdown = 0;
                    let mut probe = b.clone();
                    loop {
                        probe[i] -= 1;
                        if known.contains(&probe) {
                            qdown += 1;
                        } else {
                            break;
                        }
                    }
                    if qdown - pairing > 0 {
                        let mut up = b.clone();
                        up[i] += 1;
                        next.insert(up);
                    }
                }
            }
            level = next.into_iter().collect();
        }
        roots.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });

        let root_weights: Vec<Weight> = roots
            .iter()
            .map(|c| Weight((0..r).map(|j| (0..r).map(|i| c[i] * cartan[i][j]).sum()).collect()))
            .collect();
        let root_norms: Vec<i64> = roots
            .iter()
            .map(|c| {
                let mut s = 0;
                for i in 0..r {
                    for j in 0..r {
                        s += c[i] * c[j] * sym[i][j];
                    }
                }
                s
            })
            .collect();
        let root_index = roots.iter().enumerate().map(|(k, c)| (c.clone(), k)).collect();

        let max_height = roots.last().map(|c| c.iter().sum::<i64>()).unwrap_or(0) as usize;
        let mut per_height = vec![0usize; max_height + 2];
        for c in &roots {
            per_height[c.iter().sum::<i64>() as usize] += 1;
        }
        let mut exponents = Vec::new();
        for k in 1..=max_height {
            for _ in 0..per_height[k] - per_height[k + 1] {
                exponents.push(k);
            }
        }
        let highest_root = roots.len() - 1;
        let coxeter_number = 2 * roots.len() / r;

        let cartan_rat: Vec<Vec<Rational>> =
            cartan.iter().map(|row| row.iter().map(|&x| q(x)).collect()).collect();
        let cartan_inv = linalg::inverse(&cartan_rat)
            .ok_or_else(|| Error::Internal(String::from("singular Cartan matrix")))?;

        let mut den = BigInt::one();
        for i in 0..r {
            for k in 0..r {
                let v = &cartan_inv[i][k] * q(simple_norms[k]) / q(2);
                den = den.lcm(v.denom());
            }
        }
        let form_scale = den.to_i64().unwrap_or(1);
        let form: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|k| {
                        let v = &cartan_inv[i][k] * q(simple_norms[k]) / q(2) * q(form_scale);
                        v.to_integer().to_i64().unwrap_or(0)
                    })
                    .collect()
            })
            .collect();

        let rd = RootDatum {
            series,
            rank,
            cartan,
            cartan_inv,
            simple_norms,
            positive_roots: roots,
            root_weights,
            root_norms,
            root_index,
            coxeter_number,
            exponents,
            highest_root,
            form,
            form_scale,
        };
        rd.check_invariants()?;
        Ok(rd)
    }

    fn check_invariants(&self) -> Result<()> {
        let np = self.positive_roots.len();
        let ok = 2 * np == self.rank * self.coxeter_number
            && self.exponents.len() == self.rank
            && self.exponents.iter().sum::<usize>() == np
            && self.height(self.highest_root) as usize + 1 == self.coxeter_number
            && self.cartan_determinant() >= BigInt::one();
        if ok {
            Ok(())
        } else {
            Err(Error::Internal(format!(
                "root datum invariants fail for {}{}",
                self.series.letter(),
                self.rank
            )))
        }
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Conventional name such as `"A2"`.
    pub fn name(&self) -> String {
        format!("{}{}", self.series.letter(), self.rank)
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn cartan_determinant(&self) -> BigInt {
        linalg::determinant(&self.cartan)
    }

    /// Number of blocks, equivalently of minuscule weights (including 0).
    pub fn det(&self) -> usize {
        self.cartan_determinant().to_usize().unwrap_or(0)
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// Positive roots in simple-root coordinates, sorted by height.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// The `k`-th positive root as a weight.
    pub fn root_weight(&self, k: usize) -> &Weight {
        &self.root_weights[k]
    }

    pub fn root_weights(&self) -> &[Weight] {
        &self.root_weights
    }

    /// Index of a positive root given in simple-root coordinates.
    pub fn root_position(&self, coords: &[i64]) -> Option<usize> {
        self.root_index.get(coords).copied()
    }

    /// Index of the simple root `α_{i+1}` among the positive roots.
    pub fn simple_root_index(&self, i: usize) -> usize {
        i
    }

    pub fn simple_root(&self, i: usize) -> &Weight {
        &self.root_weights[i]
    }

    /// `(α, α)` for the `k`-th positive root, short roots having length 2.
    pub fn root_norm(&self, k: usize) -> i64 {
        self.root_norms[k]
    }

    pub fn simple_norm(&self, i: usize) -> i64 {
        self.simple_norms[i]
    }

    pub fn height(&self, k: usize) -> i64 {
        self.positive_roots[k].iter().sum()
    }

    pub fn coxeter_number(&self) -> usize {
        self.coxeter_number
    }

    pub fn exponents(&self) -> &[usize] {
        &self.exponents
    }

    pub fn weyl_group_order(&self) -> u128 {
        self.exponents.iter().map(|&e| e as u128 + 1).product()
    }

    pub fn highest_root_index(&self) -> usize {
        self.highest_root
    }

    /// The highest root `θ` as a weight.
    pub fn theta(&self) -> &Weight {
        &self.root_weights[self.highest_root]
    }

    /// `ρ₀`, the half sum of positive roots.
    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank])
    }

    pub fn zero(&self) -> Weight {
        Weight::zero(self.rank)
    }

    /// Coordinates of the coroot `α^∨` in the basis of simple coroots.
    pub fn coroot_coords(&self, k: usize) -> Vec<i64> {
        let n = self.root_norms[k];
        self.positive_roots[k]
            .iter()
            .zip(&self.simple_norms)
            .map(|(&c, &d)| c * d / n)
            .collect()
    }

    /// `⟨λ, α^∨⟩` for the `k`-th positive root.
    pub fn pairing(&self, w: &Weight, k: usize) -> i64 {
        let n = self.root_norms[k];
        self.positive_roots[k]
            .iter()
            .zip(&self.simple_norms)
            .zip(&w.0)
            .map(|((&c, &d), &x)| c * d / n * x)
            .sum()
    }

    /// Scaled inner product `form_scale · (λ, μ)`.
    pub fn inner(&self, a: &Weight, b: &Weight) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if a.0[i] == 0 {
                continue;
            }
            for k in 0..self.rank {
                s += a.0[i] * self.form[i][k] * b.0[k];
            }
        }
        s
    }

    pub fn form_scale(&self) -> i64 {
        self.form_scale
    }

    pub fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() == self.rank {
            Ok(())
        } else {
            Err(Error::WrongRank {
                expected: self.rank,
                got: w.rank(),
            })
        }
    }

    pub fn dominant(&self, w: &Weight) -> bool {
        w.is_dominant()
    }

    /// `s_i(λ) = λ − ⟨λ, α_i^∨⟩ α_i`.
    pub fn reflect(&self, w: &Weight, i: usize) -> Weight {
        w.add_scaled(&self.root_weights[i], -w.0[i])
    }

    /// Dominant representative of the orbit of `w`, with `(−1)^ℓ(w)` for the
    /// element used, or sign 0 when `w` lies on a wall.
    pub fn to_dominant(&self, w: &Weight) -> (Weight, i8) {
        let mut cur = w.clone();
        let mut sign = 1i8;
        while let Some(i) = cur.0.iter().position(|&c| c < 0) {
            cur = self.reflect(&cur, i);
            sign = -sign;
        }
        if cur.0.contains(&0) {
            (cur, 0)
        } else {
            (cur, sign)
        }
    }

    /// Dot action: dominant `ν` and sign with `w·λ = ν`, or sign 0 when
    /// `λ + ρ₀` is singular.
    pub fn dot_to_dominant(&self, w: &Weight) -> (Weight, i8) {
        let rho = self.rho();
        let (d, s) = self.to_dominant(&(w + &rho));
        (&d - &rho, s)
    }

    /// The Weyl orbit of `w`, by reflection closure.
    pub fn weyl_orbit(&self, w: &Weight) -> Vec<Weight> {
        let (dom, _) = self.to_dominant(w);
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(dom.clone());
        queue.push_back(dom);
        while let Some(v) = queue.pop_front() {
            for i in 0..self.rank {
                if v.0[i] > 0 {
                    let u = self.reflect(&v, i);
                    if seen.insert(u.clone()) {
                        queue.push_back(u);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }

    /// `−w₀λ`.
    pub fn longest_element_negate(&self, w: &Weight) -> Weight {
        self.to_dominant(&-w).0
    }

    /// Coordinates of `w` in the basis of simple roots.
    pub fn root_coordinates(&self, w: &Weight) -> Vec<Rational> {
        (0..self.rank)
            .map(|j| {
                let mut s = q(0);
                for i in 0..self.rank {
                    if w.0[i] != 0 {
                        s += &self.cartan_inv[i][j] * q(w.0[i]);
                    }
                }
                s
            })
            .collect()
    }

    pub fn in_root_lattice(&self, w: &Weight) -> bool {
        self.root_coordinates(w).iter().all(|c| c.is_integer())
    }

    /// Integer coordinates in simple roots, when `w` lies in the root lattice.
    pub fn root_lattice_coords(&self, w: &Weight) -> Option<Vec<i64>> {
        self.root_coordinates(w)
            .iter()
            .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
            .collect()
    }

    /// Dominant weights `ν` (including 0) whose simple module has a single
    /// Weyl orbit of weights, one per coset of the root lattice.
    pub fn minuscule_weights(&self) -> Vec<Weight> {
        let mut out = vec![self.zero()];
        for i in 0..self.rank {
            let w = Weight::fundamental(self.rank, i);
            if (0..self.positive_roots.len()).all(|k| self.pairing(&w, k) <= 1) {
                out.push(w);
            }
        }
        out
    }

    /// The minuscule weight congruent to `w` modulo the root lattice.
    pub fn minuscule_representative(&self, w: &Weight) -> Weight {
        self.minuscule_weights()
            .into_iter()
            .find(|nu| self.in_root_lattice(&(w - nu)))
            .unwrap_or_else(|| self.zero())
    }

    /// Dimension of the simple module with dominant highest weight `λ`.
    pub fn weyl_dimension(&self, w: &Weight) -> BigInt {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for k in 0..self.positive_roots.len() {
            let cc = self.coroot_coords(k);
            let a: i64 = cc.iter().zip(&w.0).map(|(c, x)| c * (x + 1)).sum();
            let b: i64 = cc.iter().sum();
            num *= a;
            den *= b;
        }
        let (d, rem) = num.div_rem(&den);
        debug_assert!(rem.is_zero());
        d
    }

    /// `λ + aα` for the `k`-th positive root.
    pub fn shift_by_root(&self, w: &Weight, k: usize, a: i64) -> Weight {
        w.add_scaled(&self.root_weights[k], a)
    }

    /// All roots (positive and negative) as weights.
    pub fn all_root_weights(&self) -> Vec<Weight> {
        let mut v: Vec<Weight> = self.root_weights.clone();
        v.extend(self.root_weights.iter().map(|w| -w));
        v
    }

    /// Dominance order: `μ ≤ λ` iff `λ − μ` is a nonnegative integer
    /// combination of simple roots.
    pub fn below(&self, mu: &Weight, lambda: &Weight) -> bool {
        match self.root_lattice_coords(&(lambda - mu)) {
            Some(c) => c.iter().all(|&x| x >= 0),
            None => false,
        }
    }

    /// Height of `λ − μ` in simple roots (rational when not in the root lattice).
    pub fn depth(&self, w: &Weight) -> Rational {
        self.root_coordinates(w).into_iter().fold(q(0), |a, b| a + b)
    }
}
