//! Exact scalars, dense matrices and integer lattice routines.
//!
//! Everything is arbitrary precision. Integer matrices are reduced with
//! deterministic row operations, so the kernel bases returned here are stable
//! across runs.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{GkzError, Result};

pub type Int = BigInt;
pub type Rat = BigRational;
pub type IntVector = Vec<Int>;
pub type RatVector = Vec<Rat>;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Int = n.trim().parse().ok()?;
            let d: Int = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}

/// `p` or `p/q`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn fmt_rat_vec(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_rat).collect();
    format!("({})", parts.join(","))
}

pub fn to_i64(v: &Int) -> Result<i64> {
    v.to_i64().ok_or_else(|| GkzError::Overflow(v.to_string()))
}

pub fn factorial(n: u32) -> Int {
    (1..=n).fold(Int::one(), |acc, k| acc * Int::from(k))
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<Int>;
pub type RatMatrix = Matrix<Rat>;

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn from_row_vecs(rows: Vec<Vec<T>>, cols: usize) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(GkzError::DimensionMismatch(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    r.len(),
                    cols
                )));
            }
            data.extend(r);
        }
        Ok(Matrix { rows: nrows, cols, data })
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(columns: &[Vec<T>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                m[(i, k)] = self[(i, j)].clone();
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> =
                (0..self.cols).map(|j| self.data[i * self.cols + j].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl IntMatrix {
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_row_vecs(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect(), cols)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn to_rat(&self) -> RatMatrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| Rat::from_integer(x.clone())).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Int]) -> IntVector {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn mul_i64(&self, v: &[i64]) -> IntVector {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, &b)| a * Int::from(b)).sum())
            .collect()
    }

    pub fn mul_rat(&self, v: &[Rat]) -> RatVector {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rat::zero(), |acc, (a, b)| acc + Rat::from_integer(a.clone()) * b)
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.to_rat().rank()
    }

    /// Determinant of a square matrix by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
                m[(i, k)] = Int::zero();
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }
}

/// Result of [`hermite_form`]: `transform * input = hnf`, `transform` unimodular.
#[derive(Clone, Debug)]
pub struct HermiteForm {
    pub hnf: IntMatrix,
    pub transform: IntMatrix,
    pub rank: usize,
}

/// Row-style Hermite normal form with its unimodular transformation.
///
/// Pivots are positive and entries above a pivot are reduced into `[0, pivot)`.
pub fn hermite_form(m: &IntMatrix) -> HermiteForm {
    let rows = m.rows;
    let cols = m.cols;
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut pivot = 0;
    for c in 0..cols {
        if pivot == rows {
            break;
        }
        loop {
            // smallest nonzero |entry| at or below the pivot row
            let best = (pivot..rows)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&a, &b| h[(a, c)].abs().cmp(&h[(b, c)].abs()).then(a.cmp(&b)));
            let Some(best) = best else { break };
            h.swap_rows(best, pivot);
            u.swap_rows(best, pivot);
            let mut done = true;
            for i in pivot + 1..rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = h[(i, c)].div_floor(&h[(pivot, c)]);
                row_sub(&mut h, i, pivot, &q);
                row_sub(&mut u, i, pivot, &q);
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(pivot, c)].is_zero() {
            continue;
        }
        if h[(pivot, c)].is_negative() {
            row_neg(&mut h, pivot);
            row_neg(&mut u, pivot);
        }
        for i in 0..pivot {
            let q = h[(i, c)].div_floor(&h[(pivot, c)]);
            if !q.is_zero() {
                row_sub(&mut h, i, pivot, &q);
                row_sub(&mut u, i, pivot, &q);
            }
        }
        pivot += 1;
    }
    HermiteForm { hnf: h, transform: u, rank: pivot }
}

fn row_sub(m: &mut IntMatrix, target: usize, src: usize, q: &Int) {
    for j in 0..m.cols {
        let v = &m[(src, j)] * q;
        m[(target, j)] -= v;
    }
}

fn row_neg(m: &mut IntMatrix, r: usize) {
    for j in 0..m.cols {
        let v = -m[(r, j)].clone();
        m[(r, j)] = v;
    }
}

/// Nonzero invariant factors of the Smith normal form, in divisibility order.
pub fn smith_invariants(m: &IntMatrix) -> Vec<Int> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pick the smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[(i, j)].is_zero()
                    && best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap_rows(bi, t);
        for i in 0..rows {
            let k1 = i * cols + bj;
            let k2 = i * cols + t;
            a.data.swap(k1, k2);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                row_sub(&mut a, i, t, &q);
                if !a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                for i in 0..rows {
                    let v = &a[(i, t)] * &q;
                    a[(i, j)] -= v;
                }
                if !a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // divisibility of the remaining block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&a[(i, j)] % &a[(t, t)]).is_zero());
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in 0..cols {
                            let v = a[(i, j)].clone();
                            a[(t, j)] += v;
                        }
                    }
                }
                continue;
            }
            // move the new minimum into position
            let mut best = (t, t);
            for i in t..rows {
                if !a[(i, t)].is_zero() && a[(i, t)].abs() < a[best].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !a[(t, j)].is_zero() && a[(t, j)].abs() < a[best].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap_rows(best.0, t);
            } else if best.1 != t {
                for i in 0..rows {
                    a.data.swap(i * cols + best.1, i * cols + t);
                }
            }
        }
        out.push(a[(t, t)].abs());
        t += 1;
    }
    out
}

/// `true` when the columns span a saturated sublattice: every invariant
/// factor is 1.
pub fn smith_certificate(vectors: &[IntVector], dim: usize) -> bool {
    if vectors.is_empty() {
        return true;
    }
    let m = IntMatrix::from_columns(vectors, dim);
    let inv = smith_invariants(&m);
    inv.len() == vectors.len() && inv.iter().all(|x| x.is_one())
}

/// A ℤ-basis of `{u ∈ ℤⁿ | A u = 0}`.
///
/// The basis comes from the unimodular transform of the Hermite form of `Aᵀ`,
/// followed by a greedy pairwise size reduction. Dependent rows are allowed.
pub fn kernel_basis(a: &IntMatrix) -> Result<Vec<IntVector>> {
    let hf = hermite_form(&a.transpose());
    let mut basis: Vec<IntVector> =
        (hf.rank..a.cols()).map(|i| hf.transform.row(i).to_vec()).collect();
    size_reduce(&mut basis);
    debug_assert!(basis.iter().all(|u| a.mul_vec(u).iter().all(Zero::is_zero)));
    Ok(basis)
}

/// `Err(RankDeficient)` unless `rank(A) ≥ d`.
pub fn check_rank(a: &IntMatrix, d: usize) -> Result<()> {
    let r = a.rank();
    if r < d {
        return Err(GkzError::RankDeficient { expected: d, found: r });
    }
    Ok(())
}

/// Indices of the first maximal set of linearly independent rows.
pub fn row_basis(a: &IntMatrix) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..a.rows() {
        let mut rows: Vec<Vec<Int>> = chosen.iter().map(|&k| a.row(k).to_vec()).collect();
        rows.push(a.row(i).to_vec());
        let m = IntMatrix::from_row_vecs(rows, a.cols()).expect("consistent widths");
        if m.rank() == chosen.len() + 1 {
            chosen.push(i);
        }
    }
    chosen
}

/// The submatrix on [`row_basis`]: same row space, full row rank.
pub fn independent_rows(a: &IntMatrix) -> IntMatrix {
    let rows = row_basis(a).into_iter().map(|i| a.row(i).to_vec()).collect();
    IntMatrix::from_row_vecs(rows, a.cols()).expect("consistent widths")
}

fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn size_reduce(basis: &mut [IntVector]) {
    let k = basis.len();
    loop {
        let mut changed = false;
        for i in 0..k {
            for j in 0..k {
                if i == j {
                    continue;
                }
                let nn = dot(&basis[j], &basis[j]);
                if nn.is_zero() {
                    continue;
                }
                let d = dot(&basis[i], &basis[j]);
                // nearest integer to d / nn
                let q = (Int::from(2) * &d + &nn).div_floor(&(Int::from(2) * &nn));
                if q.is_zero() {
                    continue;
                }
                let cand: IntVector =
                    basis[i].iter().zip(&basis[j]).map(|(x, y)| x - &q * y).collect();
                if dot(&cand, &cand) < dot(&basis[i], &basis[i]) {
                    basis[i] = cand;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
}

/// gcd of the absolute values of all nonzero maximal minors, taken on a row
/// basis when `A` has dependent rows.
pub fn maximal_minor_gcd(a: &IntMatrix) -> Result<Int> {
    let b = independent_rows(a);
    let d = b.rows();
    if d == 0 {
        return Err(GkzError::RankDeficient { expected: a.rows(), found: 0 });
    }
    let mut g = Int::zero();
    for cols in combinations(b.cols(), d) {
        let m = b.select_columns(&cols).det();
        g = g.gcd(&m);
        if g.is_one() {
            break;
        }
    }
    Ok(g)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Reduced row echelon form over ℚ; returns the pivot columns.
pub fn rref(m: &mut RatMatrix) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else { continue };
        m.swap_rows(p, r);
        let inv = m[(r, c)].recip();
        for j in c..m.cols {
            let v = &m[(r, j)] * &inv;
            m[(r, j)] = v;
        }
        for i in 0..m.rows {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let f = m[(i, c)].clone();
            for j in c..m.cols {
                let v = &f * &m[(r, j)];
                m[(i, j)] -= v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl RatMatrix {
    pub fn rank(&self) -> usize {
        rref(&mut self.clone()).len()
    }

    pub fn mul_vec(&self, v: &[Rat]) -> RatVector {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(Rat::zero(), |acc, (a, b)| acc + a * b))
            .collect()
    }

    /// Basis of `{x | M x = 0}`, one vector per free column, each with a 1 in
    /// its free column.
    pub fn nullspace(&self) -> Vec<RatVector> {
        let mut m = self.clone();
        let pivots = rref(&mut m);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rat::zero(); self.cols];
                x[f] = Rat::one();
                for (r, &p) in pivots.iter().enumerate() {
                    x[p] = -m[(r, f)].clone();
                }
                x
            })
            .collect()
    }
}

/// The unique `x` with `M x = b`, or `None` when the system is inconsistent.
pub fn solve_exact(m: &RatMatrix, b: &[Rat]) -> Result<Option<RatVector>> {
    if b.len() != m.rows() {
        return Err(GkzError::DimensionMismatch(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            m.rows()
        )));
    }
    let k = m.cols();
    let mut aug = RatMatrix::zeros(m.rows(), k + 1);
    for i in 0..m.rows() {
        for j in 0..k {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, k)] = b[i].clone();
    }
    let pivots = rref(&mut aug);
    if pivots.contains(&k) {
        return Ok(None);
    }
    if pivots.len() < k {
        return Err(GkzError::ColumnRankDeficient);
    }
    Ok(Some((0..k).map(|r| aug[(r, k)].clone()).collect()))
}

/// `true` when `target` lies in the ℚ-span of `vectors` (the empty span is `{0}`).
pub fn in_rational_span(vectors: &[RatVector], target: &[Rat]) -> bool {
    if vectors.is_empty() {
        return target.iter().all(Zero::is_zero);
    }
    let m = RatMatrix::from_columns(vectors, target.len());
    let r = m.rank();
    let mut cols = vectors.to_vec();
    cols.push(target.to_vec());
    RatMatrix::from_columns(&cols, target.len()).rank() == r
}
