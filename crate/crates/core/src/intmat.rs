//! Integer matrices, Smith normal form and exact determinants.
//!
//! Carrier for Cartan-matrix invariants only; entries are arbitrary-precision
//! so the SNF reduction never overflows.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

fn is_zero(x: &BigInt) -> bool {
    x.is_zero()
}

fn abs(x: &BigInt) -> BigInt {
    x.abs()
}

fn sign(x: &BigInt) -> BigInt {
    x.signum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![BigInt::from(0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::from(1));
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        IntMat { rows, cols, data: entries.iter().map(|&e| BigInt::from(e)).collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries_i64(&self) -> Option<Vec<i64>> {
        self.data.iter().map(|v| i64::try_from(v.clone()).ok()).collect()
    }

    /// Smith normal form diagonal `d_1 | d_2 | ...`, entries nonnegative,
    /// padded with zeros up to `min(rows, cols)`.
    pub fn snf_diagonal(&self) -> Vec<BigInt> {
        let mut m = self.clone();
        let n = m.rows.min(m.cols);
        let mut diag = Vec::with_capacity(n);
        for k in 0..n {
            if !m.reduce_corner(k) {
                break;
            }
            diag.push(abs(m.get(k, k)));
        }
        while diag.len() < n {
            diag.push(BigInt::from(0));
        }
        diag
    }

    /// Clears row and column `k` using the usual pivot-and-divide loop;
    /// afterwards `m[k][k]` divides every entry of the trailing block.
    /// Returns false when the trailing block is zero.
    fn reduce_corner(&mut self, k: usize) -> bool {
        loop {
            // find the entry of smallest nonzero absolute value in the block
            let mut best: Option<(usize, usize)> = None;
            for i in k..self.rows {
                for j in k..self.cols {
                    if !is_zero(self.get(i, j)) {
                        let better = match best {
                            None => true,
                            Some((bi, bj)) => abs(self.get(i, j)) < abs(self.get(bi, bj)),
                        };
                        if better {
                            best = Some((i, j));
                        }
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return false;
            };
            self.swap_rows(k, pi);
            self.swap_cols(k, pj);

            let mut dirty = false;
            let pivot = self.get(k, k).clone();
            for i in k + 1..self.rows {
                let q = div_round(self.get(i, k), &pivot);
                if !is_zero(&q) {
                    self.row_axpy(i, k, &-q);
                }
                if !is_zero(self.get(i, k)) {
                    dirty = true;
                }
            }
            let pivot = self.get(k, k).clone();
            for j in k + 1..self.cols {
                let q = div_round(self.get(k, j), &pivot);
                if !is_zero(&q) {
                    self.col_axpy(j, k, &-q);
                }
                if !is_zero(self.get(k, j)) {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // enforce the divisibility condition on the trailing block
            let pivot = self.get(k, k).clone();
            let mut offender = None;
            'scan: for i in k + 1..self.rows {
                for j in k + 1..self.cols {
                    if !is_zero(&(self.get(i, j) % &pivot)) {
                        offender = Some(i);
                        let _ = j;
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    // add the offending row to row k and start over
                    for j in k..self.cols {
                        let v = self.get(k, j) + self.get(i, j);
                        self.set(k, j, v);
                    }
                }
                None => return true,
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
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

    /// row[i] += q * row[k]
    fn row_axpy(&mut self, i: usize, k: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(i, j) + q * self.get(k, j);
            self.set(i, j, v);
        }
    }

    /// col[j] += q * col[k]
    fn col_axpy(&mut self, j: usize, k: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, j) + q * self.get(i, k);
            self.set(i, j, v);
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::from(1);
        }
        let mut m = self.clone();
        let mut prev = BigInt::from(1);
        let mut sgn = 1i32;
        for k in 0..n - 1 {
            if is_zero(m.get(k, k)) {
                let Some(pi) = (k + 1..n).find(|&i| !is_zero(m.get(i, k))) else {
                    return BigInt::from(0);
                };
                m.swap_rows(k, pi);
                sgn = -sgn;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
                m.set(i, k, BigInt::from(0));
            }
            prev = m.get(k, k).clone();
        }
        let d = m.get(n - 1, n - 1).clone();
        if sgn < 0 {
            -d
        } else {
            d
        }
    }
}

/// Rounded division keeping remainders small in magnitude.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let q = a / b;
    let r = a - &q * b;
    // round toward the nearest multiple
    if abs(&(&r * 2)) > abs(b) {
        q + sign(&r) * sign(b)
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn snf_identity() {
        assert_eq!(IntMat::identity(2).snf_diagonal(), vec![BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn snf_diag_2_3() {
        // elementary divisors of diag(2,3) are 1 | 6
        let m = IntMat::from_i64(2, 2, &[2, 0, 0, 3]);
        assert_eq!(m.snf_diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn snf_zero() {
        let m = IntMat::zeros(2, 2);
        assert_eq!(m.snf_diagonal(), vec![BigInt::from(0), BigInt::from(0)]);
    }

    #[test]
    fn det_small() {
        let m = IntMat::from_i64(2, 2, &[1, 2, 3, 4]);
        assert_eq!(m.det(), BigInt::from(-2));
        assert_eq!(IntMat::identity(3).det(), BigInt::from(1));
        assert_eq!(IntMat::zeros(2, 2).det(), BigInt::from(0));
    }

    #[test]
    fn snf_divisibility_and_det_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.random_range(1..5);
            let entries: Vec<i64> = (0..n * n).map(|_| rng.random_range(-6..7)).collect();
            let m = IntMat::from_i64(n, n, &entries);
            let d = m.snf_diagonal();
            for w in d.windows(2) {
                if !is_zero(&w[0]) {
                    assert!(is_zero(&(&w[1] % &w[0])));
                } else {
                    assert!(is_zero(&w[1]));
                }
            }
            let det = m.det();
            if !is_zero(&det) {
                let prod: BigInt = d.iter().product();
                assert_eq!(prod, abs(&det));
            }
        }
    }
}
