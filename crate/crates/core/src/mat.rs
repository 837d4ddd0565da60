//! Dense matrices over F_p with exact Gauss-Jordan kernels.
//!
//! Storage is row-major, the modulus is carried on the matrix, and
//! 0-dimensional matrices are first-class: zero modules and empty blocks show
//! up constantly in cones and gluings, so every operation must accept them.

use std::fmt;

use crate::error::LinAlgError;
use crate::fp::Fp;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub prime: u64,
    data: Vec<u64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize, prime: u64) -> Self {
        Mat { rows, cols, prime, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, prime: u64) -> Self {
        let mut m = Mat::zeros(n, n, prime);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from row-major entries (arbitrary integers, reduced mod p).
    pub fn from_rows(rows: usize, cols: usize, entries: &[i64], prime: u64) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must equal rows*cols");
        let p = prime as i64;
        let data = entries.iter().map(|&e| (((e % p) + p) % p) as u64).collect();
        Mat { rows, cols, prime, data }
    }

    pub fn from_fn(rows: usize, cols: usize, prime: u64, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut m = Mat::zeros(rows, cols, prime);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = v % self.prime;
    }

    pub fn scalar(&self, i: usize, j: usize) -> Fp {
        Fp { value: self.get(i, j), prime: self.prime }
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u64::from(i == j)))
    }

    fn same_shape(&self, other: &Mat) {
        assert_eq!(self.prime, other.prime, "mixed primes");
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
    }

    pub fn add(&self, other: &Mat) -> Mat {
        self.same_shape(other);
        let p = self.prime;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| {
                let s = a + b;
                if s >= p { s - p } else { s }
            })
            .collect();
        Mat { rows: self.rows, cols: self.cols, prime: p, data }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.same_shape(other);
        let p = self.prime;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| if a >= b { a - b } else { a + p - b })
            .collect();
        Mat { rows: self.rows, cols: self.cols, prime: p, data }
    }

    pub fn neg(&self) -> Mat {
        let p = self.prime;
        let data = self.data.iter().map(|&a| if a == 0 { 0 } else { p - a }).collect();
        Mat { rows: self.rows, cols: self.cols, prime: p, data }
    }

    pub fn scale(&self, c: u64) -> Mat {
        let p = self.prime;
        let c = c % p;
        let data = self.data.iter().map(|&a| a * c % p).collect();
        Mat { rows: self.rows, cols: self.cols, prime: p, data }
    }

    pub fn matmul(&self, other: &Mat) -> Mat {
        assert_eq!(self.prime, other.prime, "mixed primes");
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let p = self.prime;
        let mut out = Mat::zeros(self.rows, other.cols, p);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let dst = i * out.cols;
                let src = k * other.cols;
                for j in 0..other.cols {
                    let v = out.data[dst + j] + a * other.data[src + j] % p;
                    out.data[dst + j] = v % p;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows, self.prime);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Row-vector action: `v * self` for a single row `v`.
    pub fn apply_row(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.rows);
        let p = self.prime;
        let mut out = vec![0u64; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let src = k * self.cols;
            for j in 0..self.cols {
                out[j] = (out[j] + a * self.data[src + j]) % p;
            }
        }
        out
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.prime, other.prime);
        let mut out = Mat::zeros(self.rows, self.cols + other.cols, self.prime);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        assert_eq!(self.prime, other.prime);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat { rows: self.rows + other.rows, cols: self.cols, prime: self.prime, data }
    }

    pub fn block_diag(&self, other: &Mat) -> Mat {
        assert_eq!(self.prime, other.prime);
        let mut out = Mat::zeros(self.rows + other.rows, self.cols + other.cols, self.prime);
        out.paste(0, 0, self);
        out.paste(self.rows, self.cols, other);
        out
    }

    /// Copies `block` into `self` with upper-left corner `(i0, j0)`.
    pub fn paste(&mut self, i0: usize, j0: usize, block: &Mat) {
        assert_eq!(self.prime, block.prime);
        assert!(i0 + block.rows <= self.rows && j0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(i0 + i, j0 + j, block.get(i, j));
            }
        }
    }

    pub fn submatrix(&self, i0: usize, j0: usize, rows: usize, cols: usize) -> Mat {
        assert!(i0 + rows <= self.rows && j0 + cols <= self.cols);
        Mat::from_fn(rows, cols, self.prime, |i, j| self.get(i0 + i, j0 + j))
    }

    pub fn select_rows(&self, sel: &[usize]) -> Mat {
        Mat::from_fn(sel.len(), self.cols, self.prime, |i, j| self.get(sel[i], j))
    }

    pub fn select_cols(&self, sel: &[usize]) -> Mat {
        Mat::from_fn(self.rows, sel.len(), self.prime, |i, j| self.get(i, sel[j]))
    }

    /// Row-convention Kronecker product: acting on row vectors indexed by
    /// pairs `(a, b) -> a * other.rows + b`, `(x ⊗ y) · (P ⊗ Q) = xP ⊗ yQ`.
    pub fn kron(&self, other: &Mat) -> Mat {
        assert_eq!(self.prime, other.prime);
        let p = self.prime;
        let mut out = Mat::zeros(self.rows * other.rows, self.cols * other.cols, p);
        for a in 0..self.rows {
            for c in 0..self.cols {
                let s = self.get(a, c);
                if s == 0 {
                    continue;
                }
                for b in 0..other.rows {
                    for d in 0..other.cols {
                        let v = s * other.get(b, d) % p;
                        out.set(a * other.rows + b, c * other.cols + d, v);
                    }
                }
            }
        }
        out
    }

    /// Gauss-Jordan elimination. Returns the reduced row echelon form and the
    /// strictly increasing pivot column indices.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let p = self.prime;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for j in 0..m.cols {
                    let t = m.get(row, j);
                    m.set(row, j, m.get(pr, j));
                    m.set(pr, j, t);
                }
            }
            let inv = Fp { value: m.get(row, col), prime: p }.inverse().unwrap().value;
            for j in col..m.cols {
                m.set(row, j, m.get(row, j) * inv % p);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let f = m.get(r, col);
                if f == 0 {
                    continue;
                }
                for j in col..m.cols {
                    let v = m.get(r, j) + (p - f) * m.get(row, j) % p;
                    m.set(r, j, v % p);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the column null space: columns of `K` satisfy `self * K = 0`,
    /// and `rank + K.cols == self.cols`.
    pub fn kernel(&self) -> Mat {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Mat::zeros(self.cols, free.len(), self.prime);
        for (idx, &fc) in free.iter().enumerate() {
            k.set(fc, idx, 1);
            for (prow, &pc) in pivots.iter().enumerate() {
                let v = r.get(prow, fc);
                if v != 0 {
                    k.set(pc, idx, self.prime - v);
                }
            }
        }
        k
    }

    /// Basis of the column space, taken from the original pivot columns.
    pub fn image(&self) -> Mat {
        let (_, pivots) = self.rref();
        self.select_cols(&pivots)
    }

    /// Rows spanning `{ x : x * self = 0 }`.
    pub fn left_kernel(&self) -> Mat {
        self.transpose().kernel().transpose()
    }

    /// Basis of the row space as rows (in reduced echelon form).
    pub fn row_basis(&self) -> Mat {
        let (r, pivots) = self.rref();
        Mat::from_fn(pivots.len(), self.cols, self.prime, |i, j| r.get(i, j))
    }

    /// Solves `self * X = B` columnwise. Free variables are set to zero.
    /// Returns `None` when the system is inconsistent.
    pub fn solve(&self, b: &Mat) -> Option<Mat> {
        rref_solve(self, b).ok().and_then(|(_, _, x)| x)
    }
}

/// Reduced-row-echelon solve of `A * X = B`.
///
/// Returns the RREF of `A`, the pivot columns, and the solution with free
/// variables zero (or `None` if inconsistent).
pub fn rref_solve(a: &Mat, b: &Mat) -> Result<(Mat, Vec<usize>, Option<Mat>), LinAlgError> {
    if a.rows != b.rows {
        return Err(LinAlgError::DimensionMismatch(format!(
            "A has {} rows but B has {}",
            a.rows, b.rows
        )));
    }
    if a.prime != b.prime {
        return Err(LinAlgError::DimensionMismatch("mixed primes".into()));
    }
    let aug = a.hstack(b);
    let (r, pivots_aug) = aug.rref();
    // a pivot landing in the B-part means inconsistency
    if pivots_aug.iter().any(|&c| c >= a.cols) {
        let (rref_a, pivots) = a.rref();
        return Ok((rref_a, pivots, None));
    }
    let pivots = pivots_aug;
    let mut x = Mat::zeros(a.cols, b.cols, a.prime);
    for (prow, &pc) in pivots.iter().enumerate() {
        for j in 0..b.cols {
            x.set(pc, j, r.get(prow, a.cols + j));
        }
    }
    let rref_a = r.submatrix(0, 0, a.rows, a.cols);
    Ok((rref_a, pivots, Some(x)))
}

/// Kernel and image bases in one call, per the column conventions of
/// [`Mat::kernel`] and [`Mat::image`].
pub fn kernel_image(a: &Mat) -> (Mat, Mat) {
    (a.kernel(), a.image())
}

/// Change of coordinates for a quotient space `F_p^dim / rowspace(sub)`.
///
/// `proj` maps ambient row coordinates onto quotient coordinates; `lift`
/// sends quotient basis vectors to ambient representatives with
/// `lift * proj = identity`.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    pub dim: usize,
    pub ambient: usize,
    pub proj: Mat,
    pub lift: Mat,
}

impl QuotientSpace {
    pub fn new(ambient_dim: usize, sub_rows: &Mat, prime: u64) -> Self {
        assert_eq!(sub_rows.cols, ambient_dim);
        let (r, pivots) = sub_rows.rref();
        let free: Vec<usize> = (0..ambient_dim).filter(|c| !pivots.contains(c)).collect();
        let dim = free.len();
        // reduce each ambient unit vector modulo the subspace, read off free coords
        let mut proj = Mat::zeros(ambient_dim, dim, prime);
        for amb in 0..ambient_dim {
            if let Some(pos) = free.iter().position(|&f| f == amb) {
                proj.set(amb, pos, 1);
            } else {
                let prow = pivots.iter().position(|&pc| pc == amb).unwrap();
                // e_amb ≡ -(free part of the pivot row) in the quotient
                for (pos, &f) in free.iter().enumerate() {
                    let v = r.get(prow, f);
                    if v != 0 {
                        proj.set(amb, pos, prime - v);
                    }
                }
            }
        }
        let mut lift = Mat::zeros(dim, ambient_dim, prime);
        for (pos, &f) in free.iter().enumerate() {
            lift.set(pos, f, 1);
        }
        QuotientSpace { dim, ambient: ambient_dim, proj, lift }
    }
}

/// Expresses each row of `targets` in the given basis rows: returns `C` with
/// `C * basis = targets`, or `None` if some target is outside the span.
pub fn express_rows(basis: &Mat, targets: &Mat) -> Option<Mat> {
    assert_eq!(basis.cols, targets.cols);
    let x = basis.transpose().solve(&targets.transpose())?;
    Some(x.transpose())
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} mod {}", self.rows, self.cols, self.prime)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const P: u64 = 101;

    fn random_mat(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Mat {
        Mat::from_fn(rows, cols, P, |_, _| rng.random_range(0..P))
    }

    #[test]
    fn rref_solve_identity() {
        let a = Mat::identity(2, P);
        let b = Mat::identity(2, P);
        let (r, pivots, x) = rref_solve(&a, &b).unwrap();
        assert_eq!(r, Mat::identity(2, P));
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(x.unwrap(), Mat::identity(2, P));
    }

    #[test]
    fn rref_solve_zero() {
        let a = Mat::zeros(2, 2, P);
        let b = Mat::zeros(2, 1, P);
        let (r, pivots, x) = rref_solve(&a, &b).unwrap();
        assert!(r.is_zero());
        assert!(pivots.is_empty());
        assert_eq!(x.unwrap(), Mat::zeros(2, 1, P));
    }

    #[test]
    fn rref_solve_rank_one() {
        // hand Gaussian elimination: rank 1, free variable set to zero
        let a = Mat::from_rows(2, 2, &[1, 2, 2, 4], P);
        let b = Mat::from_rows(2, 1, &[3, 6], P);
        let (_, pivots, x) = rref_solve(&a, &b).unwrap();
        assert_eq!(pivots, vec![0]);
        assert_eq!(x.unwrap(), Mat::from_rows(2, 1, &[3, 0], P));
    }

    #[test]
    fn rref_solve_inconsistent() {
        let a = Mat::from_rows(2, 2, &[1, 2, 2, 4], P);
        let b = Mat::from_rows(2, 1, &[3, 7], P);
        let (_, _, x) = rref_solve(&a, &b).unwrap();
        assert!(x.is_none());
    }

    #[test]
    fn rref_solve_dimension_mismatch() {
        let a = Mat::identity(2, P);
        let b = Mat::zeros(3, 1, P);
        assert!(rref_solve(&a, &b).is_err());
    }

    #[test]
    fn kernel_image_identity_and_zero() {
        let (k, im) = kernel_image(&Mat::identity(3, P));
        assert_eq!(k.cols, 0);
        assert_eq!(im.cols, 3);
        let (k, im) = kernel_image(&Mat::zeros(3, 3, P));
        assert_eq!(k.cols, 3);
        assert_eq!(im.cols, 0);
    }

    #[test]
    fn kernel_image_rank_one() {
        let a = Mat::from_rows(2, 2, &[1, 1, 1, 1], P);
        let (k, im) = kernel_image(&a);
        assert_eq!(k.cols, 1);
        assert_eq!(im.cols, 1);
        assert!(a.matmul(&k).is_zero());
    }

    #[test]
    fn rank_nullity_and_rref_idempotent_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let rows = rng.random_range(0..6);
            let cols = rng.random_range(0..6);
            let a = random_mat(&mut rng, rows, cols);
            let (k, _) = kernel_image(&a);
            assert!(a.matmul(&k).is_zero());
            assert_eq!(a.rank() + k.cols, a.cols);
            let (r, _) = a.rref();
            let (rr, _) = r.rref();
            assert_eq!(r, rr);
        }
    }

    #[test]
    fn quotient_space_roundtrip() {
        let sub = Mat::from_rows(1, 3, &[1, 1, 0], P);
        let q = QuotientSpace::new(3, &sub, P);
        assert_eq!(q.dim, 2);
        assert!(q.lift.matmul(&q.proj).is_identity());
        // the subspace maps to zero
        assert!(sub.matmul(&q.proj).is_zero());
    }

    #[test]
    fn express_rows_in_basis() {
        let basis = Mat::from_rows(2, 3, &[1, 0, 1, 0, 1, 1], P);
        let t = Mat::from_rows(1, 3, &[1, 1, 2], P);
        let c = express_rows(&basis, &t).unwrap();
        assert_eq!(c.matmul(&basis), t);
        let bad = Mat::from_rows(1, 3, &[1, 0, 0], P);
        assert!(express_rows(&basis, &bad).is_none());
    }

    #[test]
    fn kron_row_convention() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_mat(&mut rng, 2, 3);
        let b = random_mat(&mut rng, 3, 2);
        let x = random_mat(&mut rng, 1, 2);
        let y = random_mat(&mut rng, 1, 3);
        // (x ⊗ y)(a ⊗ b) = xa ⊗ yb
        let mut xy = Mat::zeros(1, 6, P);
        for i in 0..2 {
            for j in 0..3 {
                xy.set(0, i * 3 + j, x.get(0, i) * y.get(0, j) % P);
            }
        }
        let lhs = xy.matmul(&a.kron(&b));
        let xa = x.matmul(&a);
        let yb = y.matmul(&b);
        let mut rhs = Mat::zeros(1, 6, P);
        for i in 0..3 {
            for j in 0..2 {
                rhs.set(0, i * 2 + j, xa.get(0, i) * yb.get(0, j) % P);
            }
        }
        assert_eq!(lhs, rhs);
    }
}
