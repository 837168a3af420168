//! Exact linear algebra: rational matrices, cone feasibility by
//! Fourier–Motzkin elimination, and matrices over `F_p`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::sign::Sign;

/// Arbitrary-precision rational number, always stored gcd-reduced with a
/// positive denominator.
pub type Rational = BigRational;

/// Dense row-major matrix over `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl MatrixQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixQ { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    /// Builds a matrix whose rows are the given integer vectors.
    pub fn from_integer_rows(cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut m = MatrixQ::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            for (j, &v) in row.iter().enumerate() {
                m.entries[i * cols + j] = Rational::from_integer(BigInt::from(v));
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> MatrixQ {
        let mut t = MatrixQ::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Rank over `Q` by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.entries.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pivot) = (rank..rows).find(|&r| !a[r * cols + col].is_zero()) else {
                continue;
            };
            for j in 0..cols {
                a.swap(rank * cols + j, pivot * cols + j);
            }
            let inv = a[rank * cols + col].recip();
            for r in 0..rows {
                if r == rank || a[r * cols + col].is_zero() {
                    continue;
                }
                let factor = &a[r * cols + col] * &inv;
                for j in col..cols {
                    let delta = &factor * &a[rank * cols + j];
                    a[r * cols + j] -= delta;
                }
            }
            rank += 1;
        }
        rank
    }
}

/// One inequality `coeffs · x >= rhs` with integer data.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Inequality {
    coeffs: Vec<BigInt>,
    rhs: BigInt,
}

impl Inequality {
    fn normalize(mut self) -> Self {
        let mut g = self.rhs.abs();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        if !g.is_zero() && !g.is_one() {
            for c in &mut self.coeffs {
                *c = &*c / &g;
            }
            self.rhs = &self.rhs / &g;
        }
        self
    }

    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

/// Decides whether the sign pattern is realized by a point: `⟨a_v, x⟩ = 0`
/// where the pattern is `0`, `> 0` where it is `+` and `< 0` where it is `-`.
///
/// Strict inequalities are normalized to `s·⟨a_v, x⟩ >= 1`, which is
/// equivalent for homogeneous systems. Equalities are eliminated by exact
/// integer Gaussian elimination, the remaining inequalities by
/// Fourier–Motzkin.
pub fn cone_feasible(normals: &[Vec<i64>], pattern: &[Sign]) -> Result<bool> {
    if normals.len() != pattern.len() {
        return Err(Error::DimensionMismatch { expected: normals.len(), found: pattern.len() });
    }
    let dim = normals.first().map_or(0, Vec::len);
    if let Some(bad) = normals.iter().find(|n| n.len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: bad.len() });
    }

    let to_big = |v: &Vec<i64>| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    let mut equalities: Vec<Vec<BigInt>> = Vec::new();
    let mut inequalities: Vec<Inequality> = Vec::new();
    for (normal, &s) in normals.iter().zip(pattern) {
        match s {
            Sign::Zero => equalities.push(to_big(normal)),
            Sign::Pos => inequalities.push(Inequality { coeffs: to_big(normal), rhs: BigInt::one() }),
            Sign::Neg => inequalities.push(Inequality {
                coeffs: normal.iter().map(|&x| BigInt::from(-x)).collect(),
                rhs: BigInt::one(),
            }),
        }
    }

    // Substitute out the equality subspace.
    while let Some(eq) = equalities.pop() {
        let Some(col) = eq.iter().position(|c| !c.is_zero()) else {
            continue;
        };
        let mut pivot = eq;
        if pivot[col].is_negative() {
            for c in &mut pivot {
                *c = -&*c;
            }
        }
        let a = pivot[col].clone();
        for other in &mut equalities {
            let c = other[col].clone();
            if c.is_zero() {
                continue;
            }
            for (o, p) in other.iter_mut().zip(&pivot) {
                *o = &a * &*o - &c * p;
            }
        }
        for ineq in &mut inequalities {
            let c = ineq.coeffs[col].clone();
            if c.is_zero() {
                continue;
            }
            for (o, p) in ineq.coeffs.iter_mut().zip(&pivot) {
                *o = &a * &*o - &c * p;
            }
            ineq.rhs = &a * &ineq.rhs;
        }
    }

    fourier_motzkin(inequalities, dim)
}

fn fourier_motzkin(rows: Vec<Inequality>, dim: usize) -> Result<bool> {
    let mut rows: Vec<Inequality> = rows.into_iter().map(Inequality::normalize).collect();
    let mut remaining: Vec<usize> = (0..dim).collect();
    loop {
        // Trivial rows are either contradictions or redundant.
        let mut kept = Vec::with_capacity(rows.len());
        let mut seen = HashSet::new();
        for row in rows {
            if row.is_trivial() {
                if row.rhs.is_positive() {
                    return Ok(false);
                }
            } else if seen.insert(row.clone()) {
                kept.push(row);
            }
        }
        rows = kept;
        if rows.is_empty() {
            return Ok(true);
        }

        // Eliminate the variable producing the fewest combined rows.
        let (slot, var) = remaining
            .iter()
            .enumerate()
            .map(|(slot, &var)| {
                let pos = rows.iter().filter(|r| r.coeffs[var].is_positive()).count();
                let neg = rows.iter().filter(|r| r.coeffs[var].is_negative()).count();
                (pos * neg, slot, var)
            })
            .min()
            .map(|(_, slot, var)| (slot, var))
            .ok_or_else(|| Error::inconsistent("Fourier–Motzkin ran out of variables"))?;
        remaining.swap_remove(slot);

        let (mut pos, mut neg, mut next) = (Vec::new(), Vec::new(), Vec::new());
        for row in rows {
            if row.coeffs[var].is_positive() {
                pos.push(row);
            } else if row.coeffs[var].is_negative() {
                neg.push(row);
            } else {
                next.push(row);
            }
        }
        for p in &pos {
            for n in &neg {
                let a = p.coeffs[var].clone();
                let b = -&n.coeffs[var];
                let coeffs = p.coeffs.iter().zip(&n.coeffs).map(|(x, y)| &b * x + &a * y).collect();
                let rhs = &b * &p.rhs + &a * &n.rhs;
                next.push(Inequality { coeffs, rhs }.normalize());
            }
        }
        rows = next;
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Reduces an integer into `[0, p)`.
pub fn reduce_mod(value: i64, p: u32) -> u32 {
    value.rem_euclid(p as i64) as u32
}

fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    let (mut base, mut exp, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

/// Dense row-major matrix over the prime field `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixFp {
    p: u32,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl MatrixFp {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        MatrixFp { p, rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = MatrixFp::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Row-major integer data reduced mod `p`.
    pub fn from_i64(p: u32, rows: usize, cols: usize, data: &[i64]) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(MatrixFp { p, rows, cols, entries: data.iter().map(|&v| reduce_mod(v, p)).collect() })
    }

    /// Matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(p: u32, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = MatrixFp::zeros(p, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.entries[i * self.cols + j] = v % self.p;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: i64) {
        let cur = self.get(i, j) as i64;
        self.set(i, j, reduce_mod(cur + v, self.p));
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> MatrixFp {
        let mut t = MatrixFp::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &MatrixFp) -> Result<MatrixFp> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let p = self.p as u64;
        let mut out = MatrixFp::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.entries[idx] = ((out.entries[idx] as u64 + a * other.get(k, j) as u64) % p) as u32;
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let s: u64 = self.row(i).iter().zip(v).map(|(&a, &b)| a as u64 * b as u64 % p).sum();
                (s % p) as u32
            })
            .collect()
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (MatrixFp, Vec<usize>) {
        let p = self.p as u64;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            for j in 0..m.cols {
                m.entries.swap(r * m.cols + j, pr * m.cols + j);
            }
            let inv = inv_mod(m.get(r, c), self.p) as u64;
            for j in 0..m.cols {
                let v = m.get(r, j) as u64 * inv % p;
                m.entries[r * m.cols + j] = v as u32;
            }
            for i in 0..m.rows {
                let f = m.get(i, c) as u64;
                if i == r || f == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let sub = f * m.get(r, j) as u64 % p;
                    let cur = m.get(i, j) as u64;
                    m.entries[i * m.cols + j] = ((cur + p - sub) % p) as u32;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{v : self · v = 0}`, one vector per free column.
    pub fn nullspace_basis(&self) -> Vec<Vec<u32>> {
        let (r, pivots) = self.rref();
        let p = self.p;
        let pivot_set: HashSet<usize> = pivots.iter().copied().collect();
        (0..self.cols)
            .filter(|c| !pivot_set.contains(c))
            .map(|free| {
                let mut v = vec![0u32; self.cols];
                v[free] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    let e = r.get(row, free);
                    v[pc] = (p - e) % p;
                }
                v
            })
            .collect()
    }

    /// Some `x` with `self · x = b`, if one exists.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        let mut aug = MatrixFp::zeros(self.p, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols);
        }
        Some(x)
    }
}

impl fmt::Display for MatrixFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(u32::to_string).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

pub fn fp_rank(m: &MatrixFp) -> usize {
    m.rank()
}

pub fn fp_nullspace_basis(m: &MatrixFp) -> Vec<Vec<u32>> {
    m.nullspace_basis()
}

/// Column-sparse matrix over `F_p` for the large boundary matrices of
/// subdivided complexes.
#[derive(Debug, Clone)]
pub struct SparseMatrixFp {
    p: u32,
    rows: usize,
    columns: Vec<Vec<(usize, u32)>>,
}

impl SparseMatrixFp {
    pub fn new(p: u32, rows: usize) -> Self {
        SparseMatrixFp { p, rows, columns: Vec::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    /// Appends a column given as `(row, value)` pairs; duplicates are summed.
    pub fn push_column(&mut self, entries: impl IntoIterator<Item = (usize, i64)>) {
        let mut acc: HashMap<usize, i64> = HashMap::new();
        for (r, v) in entries {
            *acc.entry(r).or_default() += v;
        }
        let mut col: Vec<(usize, u32)> =
            acc.into_iter().map(|(r, v)| (r, reduce_mod(v, self.p))).filter(|&(_, v)| v != 0).collect();
        col.sort_unstable();
        self.columns.push(col);
    }

    /// Rank by the standard column reduction keyed on the lowest nonzero row.
    pub fn rank(&self) -> usize {
        let p = self.p as u64;
        let mut pivot_of_low: HashMap<usize, Vec<(usize, u32)>> = HashMap::new();
        let mut rank = 0;
        for col in &self.columns {
            let mut col = col.clone();
            while let Some(&(low, lv)) = col.last() {
                let Some(piv) = pivot_of_low.get(&low) else {
                    break;
                };
                // col -= (lv / piv_low) * piv
                let factor = lv as u64 * inv_mod(piv.last().unwrap().1, self.p) as u64 % p;
                col = axpy(&col, piv, (p - factor) as u32, self.p);
            }
            if let Some(&(low, _)) = col.last() {
                pivot_of_low.insert(low, col);
                rank += 1;
            }
        }
        rank
    }
}

/// `a + factor · b` for sorted sparse vectors.
fn axpy(a: &[(usize, u32)], b: &[(usize, u32)], factor: u32, p: u32) -> Vec<(usize, u32)> {
    let p64 = p as u64;
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            let v = (factor as u64 * b[j].1 as u64 % p64) as u32;
            if v != 0 {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = ((a[i].1 as u64 + factor as u64 * b[j].1 as u64) % p64) as u32;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pat(s: &str) -> Vec<Sign> {
        s.chars().filter_map(Sign::from_char).collect()
    }

    /// The normals a_1..a_9 exactly as listed for the center-of-mass
    /// arrangement in four coordinates.
    fn listed_normals() -> Vec<Vec<i64>> {
        vec![
            vec![1, -1, 0, 0],
            vec![0, 1, -1, 0],
            vec![0, 0, 1, -1],
            vec![1, 0, -1, 0],
            vec![1, 0, 0, -1],
            vec![0, 1, 0, -1],
            vec![1, 1, -1, -1],
            vec![1, -1, 1, -1],
            vec![1, -1, -1, 1],
        ]
    }

    #[test]
    fn half_space_is_feasible() {
        assert!(cone_feasible(&[vec![1, -1]], &pat("+")).unwrap());
    }

    #[test]
    fn listed_region_is_feasible() {
        // x_2 < x_3 < x_1 < x_4 with x_1 + x_3 < x_2 + x_4.
        assert!(cone_feasible(&listed_normals(), &pat("+--+--|--+")).unwrap());
    }

    #[test]
    fn transitivity_violation_is_infeasible() {
        let normals = vec![vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]];
        assert!(!cone_feasible(&normals, &pat("++-")).unwrap());
        assert!(cone_feasible(&normals, &pat("+++")).unwrap());
        assert!(!cone_feasible(&normals, &pat("00+")).unwrap());
        assert!(cone_feasible(&normals, &pat("000")).unwrap());
    }

    #[test]
    fn pattern_length_mismatch_is_an_error() {
        let err = cone_feasible(&[vec![1, 0]], &pat("+-")).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn fp_rank_examples() {
        assert_eq!(MatrixFp::identity(5, 2).rank(), 2);
        assert_eq!(MatrixFp::from_i64(2, 1, 1, &[2]).unwrap().rank(), 0);
        // Vertex boundary of each of the three 1-cell generators is 2·vertex.
        assert_eq!(MatrixFp::from_i64(3, 1, 3, &[2, 2, 2]).unwrap().rank(), 1);
    }

    #[test]
    fn nullspace_examples() {
        assert!(MatrixFp::identity(7, 3).nullspace_basis().is_empty());
        assert_eq!(MatrixFp::zeros(3, 2, 3).nullspace_basis().len(), 3);
    }

    #[test]
    fn non_prime_modulus_is_rejected() {
        assert!(matches!(MatrixFp::from_i64(4, 1, 1, &[1]), Err(Error::NotPrime(4))));
    }

    #[test]
    fn rational_rank() {
        let m = MatrixQ::from_integer_rows(3, &[vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]]).unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.transpose().rank(), 2);
    }

    #[test]
    fn sparse_rank_matches_dense() {
        let data = [1i64, 2, 0, 3, 0, 1, 1, 1, 2, 0, 4, 1];
        let dense = MatrixFp::from_i64(5, 3, 4, &data).unwrap();
        let mut sparse = SparseMatrixFp::new(5, 3);
        for j in 0..4 {
            sparse.push_column((0..3).map(|i| (i, data[i * 4 + j])));
        }
        assert_eq!(sparse.rank(), dense.rank());
    }

    fn small_prime() -> impl Strategy<Value = u32> {
        prop::sample::select(vec![2u32, 3, 5, 7])
    }

    fn matrix(p: u32) -> impl Strategy<Value = MatrixFp> {
        (1usize..6, 1usize..6).prop_flat_map(move |(r, c)| {
            prop::collection::vec(0i64..(p as i64), r * c)
                .prop_map(move |d| MatrixFp::from_i64(p, r, c, &d).unwrap())
        })
    }

    /// Brute-force oracle: sample sign patterns of grid points and of
    /// points on intersections of the hyperplanes.
    fn sampled_patterns(normals: &[Vec<i64>], dim: usize) -> HashSet<Vec<Sign>> {
        let mut seen = HashSet::new();
        let range: Vec<i64> = (-4..=4).collect();
        let mut point = vec![0i64; dim];
        fn rec(
            k: usize,
            point: &mut Vec<i64>,
            range: &[i64],
            normals: &[Vec<i64>],
            seen: &mut HashSet<Vec<Sign>>,
        ) {
            if k == point.len() {
                let pat = normals
                    .iter()
                    .map(|n| Sign::of(n.iter().zip(point.iter()).map(|(a, b)| a * b).sum::<i64>()))
                    .collect();
                seen.insert(pat);
                return;
            }
            for &v in range {
                point[k] = v;
                rec(k + 1, point, range, normals, seen);
            }
        }
        rec(0, &mut point, &range, normals, &mut seen);
        seen
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant(m in small_prime().prop_flat_map(matrix)) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
            prop_assert_eq!(m.nullspace_basis().len(), m.cols() - m.rank());
            for v in m.nullspace_basis() {
                prop_assert!(m.apply(&v).iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn composable_ranks_bounded(p in small_prime(), a in prop::collection::vec(-3i64..4, 12)) {
            // B spans part of the nullspace of A, so A·B = 0.
            let am = MatrixFp::from_i64(p, 3, 4, &a).unwrap();
            let null = am.nullspace_basis();
            let bm = MatrixFp::from_columns(p, 4, &null);
            prop_assert!(am.mul(&bm).unwrap().is_zero());
            prop_assert!(am.rank() + bm.rank() <= am.cols());
        }

        #[test]
        fn agrees_with_grid_sampling(
            normals in prop::collection::vec(prop::collection::vec(-1i64..2, 3), 1..4),
        ) {
            prop_assume!(normals.iter().all(|n| n.iter().any(|&x| x != 0)));
            let sampled = sampled_patterns(&normals, 3);
            let signs = [Sign::Neg, Sign::Zero, Sign::Pos];
            let k = normals.len();
            for code in 0..3usize.pow(k as u32) {
                let pattern: Vec<Sign> = (0..k).map(|i| signs[(code / 3usize.pow(i as u32)) % 3]).collect();
                prop_assert_eq!(cone_feasible(&normals, &pattern).unwrap(), sampled.contains(&pattern));
            }
        }
    }
}
