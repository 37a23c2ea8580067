//! Exact integer matrices: Hermite and Smith normal forms, determinants,
//! kernels, and linear solving over Z and Q.
//!
//! Everything is arbitrary precision; no floating point exists anywhere in
//! this crate. Row convention throughout: vectors are rows, a sublattice is
//! the row span of its basis matrix.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact integer scalar used across the crate.
pub type Int = BigInt;

/// Shorthand for building an `Int` from a machine integer.
pub fn int(x: i64) -> Int {
    Int::from(x)
}

/// Convert a slice of machine integers into an exact vector.
pub fn ivec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

/// Dot product of two equal-length vectors.
pub fn dot(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Divide by the gcd of the entries; the zero vector is returned unchanged.
pub fn primitive(v: &[Int]) -> Vec<Int> {
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// True if every entry is zero.
pub fn is_zero_vec(v: &[Int]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Negate a vector.
pub fn neg_vec(v: &[Int]) -> Vec<Int> {
    v.iter().map(|x| -x).collect()
}

/// a + b componentwise.
pub fn add_vec(a: &[Int], b: &[Int]) -> Vec<Int> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// a - b componentwise.
pub fn sub_vec(a: &[Int], b: &[Int]) -> Vec<Int> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// c * v componentwise.
pub fn scale_vec(c: &Int, v: &[Int]) -> Vec<Int> {
    v.iter().map(|x| c * x).collect()
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    /// Build from row vectors; all rows must share one length.
    pub fn from_rows(rows: Vec<Vec<Int>>, cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in &rows {
            assert_eq!(r.len(), cols, "ragged row passed to IntMatrix");
            data.extend(r.iter().cloned());
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Test helper: build from machine integers.
    pub fn from_i64(rows: &[&[i64]], cols: usize) -> Self {
        Self::from_rows(rows.iter().map(|r| ivec(r)).collect(), cols)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn matmul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut m = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = m.get(i, j) + a * other.get(k, j);
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    /// Row vector times matrix: x . self.
    pub fn left_mul_vec(&self, x: &[Int]) -> Vec<Int> {
        assert_eq!(x.len(), self.rows);
        let mut out = vec![Int::zero(); self.cols];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                out[j] += xi * self.get(i, j);
            }
        }
        out
    }

    /// Matrix times column vector: self . v, returned as a plain vector.
    pub fn right_mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }

    /// row_i -= q * row_k
    fn row_sub_mul(&mut self, i: usize, k: usize, q: &Int) {
        for j in 0..self.cols {
            let v = self.get(i, j) - q * self.get(k, j);
            self.set(i, j, v);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// col_j -= q * col_k
    fn col_sub_mul(&mut self, j: usize, k: usize, q: &Int) {
        for i in 0..self.rows {
            let v = self.get(i, j) - q * self.get(i, k);
            self.set(i, j, v);
        }
    }

    /// Row-style Hermite normal form. Returns (h, u) with u unimodular and
    /// u * self = h. Canonical: pivots positive, entries above each pivot
    /// reduced into [0, pivot), zero rows at the bottom.
    pub fn hermite_normal_form(&self) -> (IntMatrix, IntMatrix) {
        let mut h = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row >= h.rows {
                break;
            }
            // Euclidean elimination below pivot_row in this column.
            loop {
                let mut best: Option<usize> = None;
                for i in pivot_row..h.rows {
                    if !h.get(i, col).is_zero() {
                        best = match best {
                            None => Some(i),
                            Some(b) if h.get(i, col).abs() < h.get(b, col).abs() => Some(i),
                            keep => keep,
                        };
                    }
                }
                let Some(b) = best else { break };
                h.swap_rows(pivot_row, b);
                u.swap_rows(pivot_row, b);
                let mut clear = true;
                for i in pivot_row + 1..h.rows {
                    if h.get(i, col).is_zero() {
                        continue;
                    }
                    // Truncated quotient shrinks |entry| strictly.
                    let q = h.get(i, col) / h.get(pivot_row, col);
                    if !q.is_zero() {
                        h.row_sub_mul(i, pivot_row, &q);
                        u.row_sub_mul(i, pivot_row, &q);
                    }
                    if !h.get(i, col).is_zero() {
                        clear = false;
                    }
                }
                if clear {
                    break;
                }
            }
            if h.get(pivot_row, col).is_zero() {
                continue; // no pivot in this column
            }
            if h.get(pivot_row, col).is_negative() {
                h.negate_row(pivot_row);
                u.negate_row(pivot_row);
            }
            // Reduce entries above the pivot into [0, pivot).
            for i in 0..pivot_row {
                let q = h.get(i, col).div_floor(h.get(pivot_row, col));
                if !q.is_zero() {
                    h.row_sub_mul(i, pivot_row, &q);
                    u.row_sub_mul(i, pivot_row, &q);
                }
            }
            pivot_row += 1;
        }
        (h, u)
    }

    /// Rank over Q (= number of nonzero HNF rows).
    pub fn rank(&self) -> usize {
        let (h, _) = self.hermite_normal_form();
        (0..h.rows).filter(|&i| !is_zero_vec(h.row(i))).count()
    }

    /// Smith normal form invariant factors d1 | d2 | ..., length
    /// min(rows, cols), zeros padding past the rank.
    pub fn smith_normal_form(&self) -> Vec<Int> {
        let mut m = self.clone();
        let n = self.rows.min(self.cols);
        let mut t = 0;
        while t < n {
            // Move a minimal-absolute-value nonzero entry of the remaining
            // submatrix to (t, t).
            let mut best: Option<(usize, usize)> = None;
            for i in t..m.rows {
                for j in t..m.cols {
                    if !m.get(i, j).is_zero() {
                        best = match best {
                            None => Some((i, j)),
                            Some((bi, bj)) if m.get(i, j).abs() < m.get(bi, bj).abs() => {
                                Some((i, j))
                            }
                            keep => keep,
                        };
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            m.swap_rows(t, bi);
            m.swap_cols(t, bj);
            // One reduction pass over column and row; loop until both clear.
            let mut col_clear = true;
            for i in t + 1..m.rows {
                if m.get(i, t).is_zero() {
                    continue;
                }
                let q = m.get(i, t) / m.get(t, t);
                if !q.is_zero() {
                    m.row_sub_mul(i, t, &q);
                }
                if !m.get(i, t).is_zero() {
                    col_clear = false;
                }
            }
            let mut row_clear = true;
            for j in t + 1..m.cols {
                if m.get(t, j).is_zero() {
                    continue;
                }
                let q = m.get(t, j) / m.get(t, t);
                if !q.is_zero() {
                    m.col_sub_mul(j, t, &q);
                }
                if !m.get(t, j).is_zero() {
                    row_clear = false;
                }
            }
            if !(col_clear && row_clear) {
                continue; // pivot shrank; repeat with the new minimum
            }
            // Divisibility sweep: the pivot must divide the rest.
            let mut fixed = true;
            'sweep: for i in t + 1..m.rows {
                for j in t + 1..m.cols {
                    if !m.get(i, j).mod_floor(m.get(t, t)).is_zero() {
                        // Fold the offending row into row t; pivot will shrink.
                        for jj in 0..m.cols {
                            let v = m.get(t, jj) + m.get(i, jj);
                            m.set(t, jj, v);
                        }
                        fixed = false;
                        break 'sweep;
                    }
                }
            }
            if !fixed {
                continue;
            }
            if m.get(t, t).is_negative() {
                m.negate_row(t);
            }
            t += 1;
        }
        let mut factors = Vec::with_capacity(n);
        for i in 0..n {
            factors.push(if i < t { m.get(i, i).clone() } else { Int::zero() });
        }
        factors
    }

    /// Exact determinant of a square matrix (Bareiss, fraction-free).
    pub fn determinant(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let swap = (k + 1..n).find(|&i| !m.get(i, k).is_zero());
                match swap {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1).clone()
    }

    /// Basis (as rows) of {x : x . self = 0}, saturated and HNF-canonical.
    pub fn left_kernel(&self) -> IntMatrix {
        let (h, u) = self.hermite_normal_form();
        let rows: Vec<Vec<Int>> = (0..h.rows)
            .filter(|&i| is_zero_vec(h.row(i)))
            .map(|i| u.row(i).to_vec())
            .collect();
        let kernel = IntMatrix::from_rows(rows, self.rows);
        let (hk, _) = kernel.hermite_normal_form();
        // Rows of a unimodular matrix are independent; HNF has no zero rows.
        hk
    }

    /// Solve x . self = b over Q. Returns None if inconsistent.
    pub fn solve_left_rational(&self, b: &[Int]) -> Option<Vec<BigRational>> {
        self.transpose().solve_right_rational(b)
    }

    /// Solve self . x = b over Q (x a column, returned as a vector).
    pub fn solve_right_rational(&self, b: &[Int]) -> Option<Vec<BigRational>> {
        assert_eq!(b.len(), self.rows);
        let rows = self.rows;
        let cols = self.cols;
        // Augmented rational Gaussian elimination.
        let mut a: Vec<Vec<BigRational>> = (0..rows)
            .map(|i| {
                let mut r: Vec<BigRational> = self
                    .row(i)
                    .iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect();
                r.push(BigRational::from_integer(b[i].clone()));
                r
            })
            .collect();
        let mut pivot_cols = Vec::new();
        let mut pr = 0;
        for pc in 0..cols {
            let Some(sel) = (pr..rows).find(|&i| !a[i][pc].is_zero()) else {
                continue;
            };
            a.swap(pr, sel);
            let inv = a[pr][pc].clone();
            for j in pc..=cols {
                let v = &a[pr][j] / &inv;
                a[pr][j] = v;
            }
            for i in 0..rows {
                if i != pr && !a[i][pc].is_zero() {
                    let f = a[i][pc].clone();
                    for j in pc..=cols {
                        let v = &a[i][j] - &f * &a[pr][j];
                        a[i][j] = v;
                    }
                }
            }
            pivot_cols.push(pc);
            pr += 1;
            if pr == rows {
                break;
            }
        }
        // Inconsistent if a zero row has nonzero rhs.
        for i in pr..rows {
            if !a[i][cols].is_zero() {
                return None;
            }
        }
        let mut x = vec![BigRational::zero(); cols];
        for (k, &pc) in pivot_cols.iter().enumerate() {
            x[pc] = a[k][cols].clone();
        }
        Some(x)
    }

    /// Solve x . self = b over Z. Returns None if no integral solution.
    pub fn solve_left_integer(&self, b: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(b.len(), self.cols);
        let (h, u) = self.hermite_normal_form();
        // x . self = b  <=>  y . h = b with x = y . u.
        let mut residual = b.to_vec();
        let mut y = vec![Int::zero(); h.rows];
        for i in 0..h.rows {
            let Some(pc) = (0..h.cols).find(|&j| !h.get(i, j).is_zero()) else {
                break; // zero rows follow
            };
            let (q, r) = residual[pc].div_rem(h.get(i, pc));
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for j in 0..h.cols {
                    residual[j] -= &q * h.get(i, j);
                }
            }
            y[i] = q;
        }
        if !is_zero_vec(&residual) {
            return None;
        }
        Some(u.left_mul_vec(&y))
    }

    /// Solve self . x = b over Z (x a column, returned as a vector).
    pub fn solve_right_integer(&self, b: &[Int]) -> Option<Vec<Int>> {
        self.transpose().solve_left_integer(b)
    }
}
