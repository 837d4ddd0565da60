//! Module and bimodule representations.
//!
//! Conventions, fixed once for the whole crate:
//! - Right modules act on row vectors from the right: `v -> v * rho(a)`, with
//!   `rho(ab) = rho(a) * rho(b)`.
//! - Left actions are stored in column convention: `(s * v)^T = lambda(s) * v^T`
//!   with `lambda(ss') = lambda(s) * lambda(s')`. As an operator on row
//!   vectors the left action of `s` is therefore `lambda(s)^T`.
//! - Bimodule compatibility is `lambda(s)^T * rho(r) = rho(r) * lambda(s)^T`,
//!   i.e. the transposed left action commutes with the right action. This
//!   realizes an (S,R)-bimodule as a right module over `S^op (x) R`.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::ModuleError;
use crate::mat::{express_rows, Mat, QuotientSpace};

#[derive(Clone, Debug)]
pub struct ModuleRep {
    pub algebra: Arc<Algebra>,
    pub dim: usize,
    /// One `dim x dim` matrix per algebra basis element (row convention).
    pub actions: Vec<Mat>,
}

/// A homomorphism candidate between two modules over the same algebra; the
/// matrix maps source row coordinates to target row coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub matrix: Mat,
}

impl ModuleMap {
    pub fn new(matrix: Mat) -> Self {
        ModuleMap { matrix }
    }

    pub fn validate(&self, src: &ModuleRep, tgt: &ModuleRep) -> Result<(), ModuleError> {
        if !Arc::ptr_eq(&src.algebra, &tgt.algebra) && src.algebra != tgt.algebra {
            return Err(ModuleError::AlgebraMismatch);
        }
        if self.matrix.rows != src.dim || self.matrix.cols != tgt.dim {
            return Err(ModuleError::BadShape(format!(
                "map is {}x{} between modules of dims {} and {}",
                self.matrix.rows, self.matrix.cols, src.dim, tgt.dim
            )));
        }
        for i in 0..src.algebra.dim {
            if src.actions[i].matmul(&self.matrix) != self.matrix.matmul(&tgt.actions[i]) {
                return Err(ModuleError::NotAModuleMap(i));
            }
        }
        Ok(())
    }
}

impl ModuleRep {
    pub fn zero(algebra: Arc<Algebra>) -> Self {
        let p = algebra.prime;
        let actions = (0..algebra.dim).map(|_| Mat::zeros(0, 0, p)).collect();
        ModuleRep { algebra, dim: 0, actions }
    }

    /// The right regular representation.
    pub fn regular(algebra: Arc<Algebra>) -> Self {
        let actions = (0..algebra.dim).map(|i| algebra.right_mult(&algebra.basis_element(i))).collect();
        ModuleRep { dim: algebra.dim, algebra, actions }
    }

    pub fn action_of(&self, x: &[u64]) -> Mat {
        let p = self.algebra.prime;
        let mut m = Mat::zeros(self.dim, self.dim, p);
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                m = m.add(&self.actions[i].scale(c));
            }
        }
        m
    }

    pub fn validate(&self) -> Result<(), ModuleError> {
        let n = self.algebra.dim;
        for a in &self.actions {
            if a.rows != self.dim || a.cols != self.dim {
                return Err(ModuleError::BadShape("action matrix shape".into()));
            }
        }
        if self.actions.len() != n {
            return Err(ModuleError::BadShape("one action matrix per basis element".into()));
        }
        if self.dim > 0 || n > 0 {
            if !self.action_of(&self.algebra.unit).is_identity() {
                return Err(ModuleError::UnitFails);
            }
        }
        for i in 0..n {
            for j in 0..n {
                let prod = self.actions[i].matmul(&self.actions[j]);
                let law = self.action_of(self.algebra.basis_product(i, j));
                if prod != law {
                    return Err(ModuleError::LawFails(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &ModuleRep) -> ModuleRep {
        assert!(self.algebra == other.algebra, "direct sum over one algebra");
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a, b)| a.block_diag(b))
            .collect();
        ModuleRep { algebra: self.algebra.clone(), dim: self.dim + other.dim, actions }
    }

    /// Restricts the action to an action-stable row space. Rows must be
    /// linearly independent and closed under the action.
    pub fn submodule(&self, rows: &Mat) -> (ModuleRep, Mat) {
        assert_eq!(rows.cols, self.dim);
        let actions = self
            .actions
            .iter()
            .map(|a| {
                express_rows(rows, &rows.matmul(a)).expect("rows must span an action-stable subspace")
            })
            .collect();
        (ModuleRep { algebra: self.algebra.clone(), dim: rows.rows, actions }, rows.clone())
    }

    /// Quotient by an action-stable row space.
    pub fn quotient(&self, sub_rows: &Mat) -> (ModuleRep, QuotientSpace) {
        let q = QuotientSpace::new(self.dim, sub_rows, self.algebra.prime);
        let actions = self.actions.iter().map(|a| q.lift.matmul(a).matmul(&q.proj)).collect();
        (ModuleRep { algebra: self.algebra.clone(), dim: q.dim, actions }, q)
    }

    /// Smallest action-stable row space containing the given rows.
    pub fn span_closure(&self, seed: &Mat) -> Mat {
        let gens = self.algebra.generating_set();
        let mut span = seed.row_basis();
        loop {
            let mut next = span.clone();
            for &g in &gens {
                next = next.vstack(&span.matmul(&self.actions[g]));
            }
            let next = next.row_basis();
            if next.rows == span.rows {
                return next;
            }
            span = next;
        }
    }

    /// Linear dual as a right module over the opposite algebra.
    pub fn dual(&self, opposite: &Arc<Algebra>) -> ModuleRep {
        assert_eq!(opposite.dim, self.algebra.dim);
        let actions = self.actions.iter().map(Mat::transpose).collect();
        ModuleRep { algebra: opposite.clone(), dim: self.dim, actions }
    }

    /// The submodule `X * f` for an element `f` (typically an idempotent).
    pub fn times_element(&self, f: &[u64]) -> Mat {
        let a = self.action_of(f);
        Mat::identity(self.dim, self.algebra.prime).matmul(&a).row_basis()
    }
}

/// The indecomposable projective `f A` for an idempotent `f`: the row space
/// of left multiplication by `f` inside the regular module, together with
/// its basis rows (in `A`-coordinates).
pub fn idempotent_projective(algebra: &Arc<Algebra>, f: &[u64]) -> (ModuleRep, Mat) {
    let rows = algebra.left_mult(f).row_basis();
    let regular = ModuleRep::regular(algebra.clone());
    let (module, _) = regular.submodule(&rows);
    (module, rows)
}

#[derive(Clone, Debug)]
pub struct BimoduleRep {
    pub left_algebra: Arc<Algebra>,
    pub right_algebra: Arc<Algebra>,
    pub dim: usize,
    /// Column-convention left actions, one per `left_algebra` basis element.
    pub left: Vec<Mat>,
    /// Row-convention right actions, one per `right_algebra` basis element.
    pub right: Vec<Mat>,
}

impl BimoduleRep {
    pub fn zero(left_algebra: Arc<Algebra>, right_algebra: Arc<Algebra>) -> Self {
        let p = right_algebra.prime;
        BimoduleRep {
            left: (0..left_algebra.dim).map(|_| Mat::zeros(0, 0, p)).collect(),
            right: (0..right_algebra.dim).map(|_| Mat::zeros(0, 0, p)).collect(),
            left_algebra,
            right_algebra,
            dim: 0,
        }
    }

    /// The diagonal bimodule: `A` as an (A,A)-bimodule.
    pub fn diagonal(algebra: &Arc<Algebra>) -> Self {
        let left = (0..algebra.dim)
            .map(|i| algebra.left_mult(&algebra.basis_element(i)).transpose())
            .collect();
        let right = (0..algebra.dim)
            .map(|i| algebra.right_mult(&algebra.basis_element(i)))
            .collect();
        BimoduleRep {
            left_algebra: algebra.clone(),
            right_algebra: algebra.clone(),
            dim: algebra.dim,
            left,
            right,
        }
    }

    /// Views a right module as a (k, R)-bimodule with trivial left action of
    /// the base field.
    pub fn trivial_left(field: &Arc<Algebra>, module: &ModuleRep) -> Self {
        assert_eq!(field.dim, 1);
        BimoduleRep {
            left_algebra: field.clone(),
            right_algebra: module.algebra.clone(),
            dim: module.dim,
            left: vec![Mat::identity(module.dim, module.algebra.prime)],
            right: module.actions.clone(),
        }
    }

    /// Row-convention operator of the left action of `x`.
    pub fn left_operator(&self, x: &[u64]) -> Mat {
        let p = self.right_algebra.prime;
        let mut m = Mat::zeros(self.dim, self.dim, p);
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                m = m.add(&self.left[i].transpose().scale(c));
            }
        }
        m
    }

    pub fn right_action_of(&self, x: &[u64]) -> Mat {
        let p = self.right_algebra.prime;
        let mut m = Mat::zeros(self.dim, self.dim, p);
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                m = m.add(&self.right[i].scale(c));
            }
        }
        m
    }

    /// Forgets the left action.
    pub fn right_module(&self) -> ModuleRep {
        ModuleRep {
            algebra: self.right_algebra.clone(),
            dim: self.dim,
            actions: self.right.clone(),
        }
    }

    /// Forgets the right action; returns the left action as a right module
    /// over the given opposite algebra (`v * rho(s^op) = s * v`).
    pub fn left_as_right_module(&self, left_opposite: &Arc<Algebra>) -> ModuleRep {
        assert_eq!(left_opposite.dim, self.left_algebra.dim);
        let actions = self.left.iter().map(Mat::transpose).collect();
        ModuleRep { algebra: left_opposite.clone(), dim: self.dim, actions }
    }

    pub fn validate(&self) -> Result<(), ModuleError> {
        let (ns, nr) = (self.left_algebra.dim, self.right_algebra.dim);
        if self.left.len() != ns || self.right.len() != nr {
            return Err(ModuleError::BadShape("one action matrix per basis element".into()));
        }
        for m in self.left.iter().chain(&self.right) {
            if m.rows != self.dim || m.cols != self.dim {
                return Err(ModuleError::BadShape("action matrix shape".into()));
            }
        }
        if !self.right_action_of(&self.right_algebra.unit).is_identity()
            || !self.left_operator(&self.left_algebra.unit).is_identity()
        {
            return Err(ModuleError::UnitFails);
        }
        for i in 0..nr {
            for j in 0..nr {
                let prod = self.right[i].matmul(&self.right[j]);
                let law = self.right_action_of(self.right_algebra.basis_product(i, j));
                if prod != law {
                    return Err(ModuleError::LawFails(i, j));
                }
            }
        }
        for i in 0..ns {
            for j in 0..ns {
                let prod = self.left[i].matmul(&self.left[j]);
                let mut law = Mat::zeros(self.dim, self.dim, self.right_algebra.prime);
                for (k, &c) in self.left_algebra.basis_product(i, j).iter().enumerate() {
                    if c != 0 {
                        law = law.add(&self.left[k].scale(c));
                    }
                }
                if prod != law {
                    return Err(ModuleError::LeftLawFails(i, j));
                }
            }
        }
        for i in 0..ns {
            let lt = self.left[i].transpose();
            for j in 0..nr {
                if lt.matmul(&self.right[j]) != self.right[j].matmul(&lt) {
                    return Err(ModuleError::ActionsDontCommute(i, j));
                }
            }
        }
        Ok(())
    }

    /// Linear dual: an (R,S)-bimodule. Duality simply swaps the two action
    /// families (both laws are multiplicative in the same order).
    pub fn dual(&self) -> BimoduleRep {
        BimoduleRep {
            left_algebra: self.right_algebra.clone(),
            right_algebra: self.left_algebra.clone(),
            dim: self.dim,
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }

    pub fn direct_sum(&self, other: &BimoduleRep) -> BimoduleRep {
        assert!(self.left_algebra == other.left_algebra && self.right_algebra == other.right_algebra);
        BimoduleRep {
            left_algebra: self.left_algebra.clone(),
            right_algebra: self.right_algebra.clone(),
            dim: self.dim + other.dim,
            left: self.left.iter().zip(&other.left).map(|(a, b)| a.block_diag(b)).collect(),
            right: self.right.iter().zip(&other.right).map(|(a, b)| a.block_diag(b)).collect(),
        }
    }

    /// `A` as an (`A^e`, k)-bimodule: the left action of `x (x) y^op` sends
    /// `m` to `x m y`, the right action of the base field is trivial. This is
    /// the gluing datum of one-point (co)extensions.
    pub fn left_enveloping_diagonal(
        a: &Arc<Algebra>,
        env: &Arc<Algebra>,
        field: &Arc<Algebra>,
    ) -> BimoduleRep {
        let n = a.dim;
        assert_eq!(env.dim, n * n);
        assert_eq!(field.dim, 1);
        let mut left = Vec::with_capacity(n * n);
        for i in 0..n {
            let li = a.left_mult(&a.basis_element(i));
            for j in 0..n {
                let rj = a.right_mult(&a.basis_element(j));
                left.push(li.matmul(&rj).transpose());
            }
        }
        BimoduleRep {
            left_algebra: env.clone(),
            right_algebra: field.clone(),
            dim: n,
            left,
            right: vec![Mat::identity(n, a.prime)],
        }
    }

    /// An (A,A)-bimodule as a right module over the enveloping algebra
    /// `A (x) A^op`: `m * (x (x) y^op) = y m x`.
    pub fn as_right_enveloping_module(&self, env: &Arc<Algebra>) -> ModuleRep {
        assert!(self.left_algebra == self.right_algebra, "enveloping form needs A = left = right");
        let n = self.left_algebra.dim;
        assert_eq!(env.dim, n * n);
        let mut actions = Vec::with_capacity(n * n);
        for i in 0..n {
            let ri = &self.right[i];
            for j in 0..n {
                let lj = self.left[j].transpose();
                actions.push(lj.matmul(ri));
            }
        }
        ModuleRep { algebra: env.clone(), dim: self.dim, actions }
    }

    /// An (S,R)-bimodule as a right module over `S^op (x) R` (basis pairs
    /// flattened as `(i, j) -> i * dim R + j`).
    pub fn as_right_tensor_module(&self, tensor_op_r: &Arc<Algebra>) -> ModuleRep {
        let (ns, nr) = (self.left_algebra.dim, self.right_algebra.dim);
        assert_eq!(tensor_op_r.dim, ns * nr);
        let mut actions = Vec::with_capacity(ns * nr);
        for i in 0..ns {
            let li = self.left[i].transpose();
            for j in 0..nr {
                actions.push(li.matmul(&self.right[j]));
            }
        }
        ModuleRep { algebra: tensor_op_r.clone(), dim: self.dim, actions }
    }

    /// Inverse of [`Self::as_right_tensor_module`].
    pub fn from_right_tensor_module(
        s: &Arc<Algebra>,
        r: &Arc<Algebra>,
        w: &ModuleRep,
    ) -> BimoduleRep {
        let (ns, nr) = (s.dim, r.dim);
        assert_eq!(w.algebra.dim, ns * nr);
        let p = r.prime;
        let right = (0..nr)
            .map(|j| {
                let mut m = Mat::zeros(w.dim, w.dim, p);
                for (i, &u) in s.unit.iter().enumerate() {
                    if u != 0 {
                        m = m.add(&w.actions[i * nr + j].scale(u));
                    }
                }
                m
            })
            .collect();
        let left = (0..ns)
            .map(|i| {
                let mut m = Mat::zeros(w.dim, w.dim, p);
                for (j, &u) in r.unit.iter().enumerate() {
                    if u != 0 {
                        m = m.add(&w.actions[i * nr + j].scale(u));
                    }
                }
                m.transpose()
            })
            .collect();
        BimoduleRep {
            left_algebra: s.clone(),
            right_algebra: r.clone(),
            dim: w.dim,
            left,
            right,
        }
    }
}

/// A basis of `Hom_A(X, Y)` with a cached coordinate solver.
#[derive(Clone, Debug)]
pub struct HomBasis {
    pub src_dim: usize,
    pub tgt_dim: usize,
    pub maps: Vec<Mat>,
    stacked: Mat,
}

impl HomBasis {
    pub fn from_maps(src_dim: usize, tgt_dim: usize, maps: Vec<Mat>, prime: u64) -> Self {
        let mut stacked = Mat::zeros(maps.len(), src_dim * tgt_dim, prime);
        for (r, m) in maps.iter().enumerate() {
            for i in 0..src_dim {
                for j in 0..tgt_dim {
                    stacked.set(r, i * tgt_dim + j, m.get(i, j));
                }
            }
        }
        HomBasis { src_dim, tgt_dim, maps, stacked }
    }

    pub fn dim(&self) -> usize {
        self.maps.len()
    }

    /// Coordinates of a map in this basis, if it lies in the span.
    pub fn coords_of(&self, m: &Mat) -> Option<Vec<u64>> {
        let mut target = Mat::zeros(1, self.src_dim * self.tgt_dim, m.prime);
        for i in 0..self.src_dim {
            for j in 0..self.tgt_dim {
                target.set(0, i * self.tgt_dim + j, m.get(i, j));
            }
        }
        let c = express_rows(&self.stacked, &target)?;
        Some(c.row(0).to_vec())
    }

    pub fn combo(&self, coords: &[u64], prime: u64) -> Mat {
        let mut out = Mat::zeros(self.src_dim, self.tgt_dim, prime);
        for (c, m) in coords.iter().zip(&self.maps) {
            if *c != 0 {
                out = out.add(&m.scale(*c));
            }
        }
        out
    }
}

/// Solves the intertwining system and returns a basis of `Hom_A(X, Y)`.
pub fn hom_space(x: &ModuleRep, y: &ModuleRep) -> Result<HomBasis, ModuleError> {
    if x.algebra != y.algebra {
        return Err(ModuleError::AlgebraMismatch);
    }
    let p = x.algebra.prime;
    let (xd, yd) = (x.dim, y.dim);
    let nvars = xd * yd;
    let gens = x.algebra.generating_set();
    let mut sys = Mat::zeros(gens.len() * nvars, nvars, p);
    for (gi, &g) in gens.iter().enumerate() {
        let rx = &x.actions[g];
        let ry = &y.actions[g];
        for r in 0..xd {
            for c in 0..yd {
                let row = gi * nvars + r * yd + c;
                for k in 0..xd {
                    let v = rx.get(r, k);
                    if v != 0 {
                        sys.set(row, k * yd + c, (sys.get(row, k * yd + c) + v) % p);
                    }
                }
                for k in 0..yd {
                    let v = ry.get(k, c);
                    if v != 0 {
                        let cur = sys.get(row, r * yd + k);
                        sys.set(row, r * yd + k, (cur + p - v) % p);
                    }
                }
            }
        }
    }
    let kernel = sys.kernel();
    let maps = (0..kernel.cols)
        .map(|b| Mat::from_fn(xd, yd, p, |i, j| kernel.get(i * yd + j, b)))
        .collect();
    Ok(HomBasis::from_maps(xd, yd, maps, p))
}

/// Endomorphism algebra of `T` together with the induced (E,R)-bimodule
/// structure on `T`. Multiplication in `E` is composition,
/// `(f * g)(t) = f(g(t))`, so `mat(f * g) = mat(g) * mat(f)`.
pub fn end_algebra(t: &ModuleRep) -> Result<(Arc<Algebra>, BimoduleRep), ModuleError> {
    let hom = hom_space(t, t)?;
    let e_dim = hom.dim();
    let p = t.algebra.prime;
    if e_dim == 0 {
        let e = Algebra::zero(p);
        return Ok((
            e.clone(),
            BimoduleRep {
                left_algebra: e,
                right_algebra: t.algebra.clone(),
                dim: t.dim,
                left: vec![],
                right: t.actions.clone(),
            },
        ));
    }
    let mut sc = vec![0u64; e_dim * e_dim * e_dim];
    for i in 0..e_dim {
        for j in 0..e_dim {
            let prod = hom.maps[j].matmul(&hom.maps[i]);
            let coords = hom
                .coords_of(&prod)
                .expect("Hom(T,T) is closed under composition");
            for (k, &c) in coords.iter().enumerate() {
                sc[(i * e_dim + j) * e_dim + k] = c;
            }
        }
    }
    let unit = hom
        .coords_of(&Mat::identity(t.dim, p))
        .expect("identity is an endomorphism");
    let e = Arc::new(Algebra::new(p, e_dim, sc, unit).expect("shape by construction"));
    let left = hom.maps.iter().map(Mat::transpose).collect();
    let bim = BimoduleRep {
        left_algebra: e.clone(),
        right_algebra: t.algebra.clone(),
        dim: t.dim,
        left,
        right: t.actions.clone(),
    };
    Ok((e, bim))
}

/// The tensor product `X ⊗_S M` of a right S-module with an (S,R)-bimodule,
/// with its right R-module structure and the quotient bookkeeping.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub module: ModuleRep,
    pub space: QuotientSpace,
}

pub fn tensor_over_algebra(
    x: &ModuleRep,
    m: &BimoduleRep,
) -> Result<TensorProduct, ModuleError> {
    if x.algebra != m.left_algebra {
        return Err(ModuleError::AlgebraMismatch);
    }
    let p = x.algebra.prime;
    let (xd, md) = (x.dim, m.dim);
    let ambient = xd * md;
    let gens = x.algebra.generating_set();
    let mut relators = Mat::zeros(gens.len() * xd * md, ambient, p);
    let mut row = 0;
    for &s in &gens {
        let rx = &x.actions[s];
        let lm = &m.left[s];
        for a in 0..xd {
            for b in 0..md {
                // (x_a · e_s) ⊗ m_b  -  x_a ⊗ (e_s · m_b)
                for c in 0..xd {
                    let v = rx.get(a, c);
                    if v != 0 {
                        relators.set(row, c * md + b, (relators.get(row, c * md + b) + v) % p);
                    }
                }
                for d in 0..md {
                    let v = lm.get(d, b);
                    if v != 0 {
                        let cur = relators.get(row, a * md + d);
                        relators.set(row, a * md + d, (cur + p - v) % p);
                    }
                }
                row += 1;
            }
        }
    }
    let space = QuotientSpace::new(ambient, &relators, p);
    let idx = Mat::identity(xd, p);
    let actions = (0..m.right_algebra.dim)
        .map(|j| {
            let big = idx.kron(&m.right[j]);
            space.lift.matmul(&big).matmul(&space.proj)
        })
        .collect();
    let module = ModuleRep { algebra: m.right_algebra.clone(), dim: space.dim, actions };
    Ok(TensorProduct { module, space })
}

/// `X ⊗_S M` for a (T,S)-bimodule X: the result carries the residual left
/// T-action.
pub fn tensor_bimodule(
    x: &BimoduleRep,
    m: &BimoduleRep,
) -> Result<(BimoduleRep, QuotientSpace), ModuleError> {
    let tp = tensor_over_algebra(&x.right_module(), m)?;
    let md = m.dim;
    let idm = Mat::identity(md, x.right_algebra.prime);
    let left = (0..x.left_algebra.dim)
        .map(|i| {
            let big = x.left[i].transpose().kron(&idm);
            tp.space.lift.matmul(&big).matmul(&tp.space.proj).transpose()
        })
        .collect();
    let bim = BimoduleRep {
        left_algebra: x.left_algebra.clone(),
        right_algebra: m.right_algebra.clone(),
        dim: tp.module.dim,
        left,
        right: tp.module.actions.clone(),
    };
    Ok((bim, tp.space))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::DEFAULT_PRIME;
    use crate::samples::{projective_at_vertex as projective, simple_at_vertex as simple_top};

    const P: u64 = DEFAULT_PRIME;

    fn ka2() -> crate::quiver::PathAlgebra {
        crate::samples::ka2(P)
    }

    #[test]
    fn regular_module_is_valid() {
        let pa = ka2();
        let reg = ModuleRep::regular(pa.algebra.clone());
        assert!(reg.validate().is_ok());
    }

    #[test]
    fn regular_bimodule_is_valid() {
        let pa = ka2();
        let bim = BimoduleRep::diagonal(&pa.algebra);
        assert!(bim.validate().is_ok());
    }

    #[test]
    fn swapped_actions_fail_law() {
        let pa = ka2();
        let mut reg = ModuleRep::regular(pa.algebra.clone());
        reg.actions.swap(pa.vertex_idempotent[0], pa.arrow_element[0]);
        assert!(matches!(
            reg.validate(),
            Err(ModuleError::LawFails(..)) | Err(ModuleError::UnitFails)
        ));
    }

    #[test]
    fn hom_of_regular_is_algebra_dim() {
        let pa = ka2();
        let reg = ModuleRep::regular(pa.algebra.clone());
        let hom = hom_space(&reg, &reg).unwrap();
        assert_eq!(hom.dim(), pa.algebra.dim);
    }

    #[test]
    fn hom_between_projectives_over_a2() {
        let pa = ka2();
        let p1 = projective(&pa, 0);
        let p2 = projective(&pa, 1);
        assert_eq!(p1.dim, 2);
        assert_eq!(p2.dim, 1);
        // Hom(P_1, P_2) = e_2 A e_1 = 0, Hom(P_2, P_1) = e_1 A e_2 = <arrow>
        assert_eq!(hom_space(&p1, &p2).unwrap().dim(), 0);
        assert_eq!(hom_space(&p2, &p1).unwrap().dim(), 1);
    }

    #[test]
    fn hom_into_zero_module() {
        let pa = ka2();
        let p1 = projective(&pa, 0);
        let zero = ModuleRep::zero(pa.algebra.clone());
        assert_eq!(hom_space(&p1, &zero).unwrap().dim(), 0);
    }

    #[test]
    fn end_of_regular_is_the_algebra() {
        let pa = ka2();
        let reg = ModuleRep::regular(pa.algebra.clone());
        let (e, t_bim) = end_algebra(&reg).unwrap();
        assert_eq!(e.dim, pa.algebra.dim);
        assert!(e.validate().is_ok());
        assert!(t_bim.validate().is_ok());
    }

    #[test]
    fn end_of_zero_module() {
        let pa = ka2();
        let zero = ModuleRep::zero(pa.algebra.clone());
        let (e, _) = end_algebra(&zero).unwrap();
        assert_eq!(e.dim, 0);
    }

    #[test]
    fn end_of_apr_tilt_has_dim_three() {
        let pa = ka2();
        let t = projective(&pa, 0).direct_sum(&simple_top(&pa, 0));
        let (e, bim) = end_algebra(&t).unwrap();
        assert_eq!(e.dim, 3);
        assert!(e.validate().is_ok());
        assert!(bim.validate().is_ok());
        assert!(!e.is_commutative());
    }

    #[test]
    fn tensor_unit_bimodule() {
        let pa = ka2();
        let reg = ModuleRep::regular(pa.algebra.clone());
        let unit_bim = BimoduleRep::diagonal(&pa.algebra);
        // X ⊗_A A = X
        let tp = tensor_over_algebra(&reg, &unit_bim).unwrap();
        assert_eq!(tp.module.dim, reg.dim);
        assert!(tp.module.validate().is_ok());
    }

    #[test]
    fn tensor_regular_gives_bimodule_back() {
        // S ⊗_S M = M, including the actions
        let pa = ka2();
        let m = BimoduleRep::diagonal(&pa.algebra);
        let s_reg = ModuleRep::regular(pa.algebra.clone());
        let tp = tensor_over_algebra(&s_reg, &m).unwrap();
        assert_eq!(tp.module.dim, m.dim);
        let hom = hom_space(&tp.module, &m.right_module()).unwrap();
        assert!(hom.dim() > 0);
    }

    #[test]
    fn tensor_zero_module() {
        let pa = ka2();
        let m = BimoduleRep::diagonal(&pa.algebra);
        let zero = ModuleRep::zero(pa.algebra.clone());
        let tp = tensor_over_algebra(&zero, &m).unwrap();
        assert_eq!(tp.module.dim, 0);
    }

    #[test]
    fn dual_swaps_and_doubles_back() {
        let pa = ka2();
        let opp = Arc::new(pa.algebra.opposite());
        let p1 = projective(&pa, 0);
        let d = p1.dual(&opp);
        assert!(d.validate().is_ok());
        let back_alg = Arc::new(opp.opposite());
        let dd = d.dual(&back_alg);
        assert_eq!(dd.dim, p1.dim);
        for (a, b) in dd.actions.iter().zip(&p1.actions) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn dual_bimodule_dim_preserved() {
        let pa = ka2();
        let bim = BimoduleRep::diagonal(&pa.algebra);
        let d = bim.dual();
        assert_eq!(d.dim, 3);
        assert!(d.validate().is_ok());
    }

    #[test]
    fn hom_dim_matches_dual_hom_dim() {
        let pa = ka2();
        let opp = Arc::new(pa.algebra.opposite());
        let p1 = projective(&pa, 0);
        let s1 = simple_top(&pa, 0);
        let fwd = hom_space(&p1, &s1).unwrap().dim();
        let bwd = hom_space(&s1.dual(&opp), &p1.dual(&opp)).unwrap().dim();
        assert_eq!(fwd, bwd);
    }

    #[test]
    fn enveloping_module_roundtrip() {
        let pa = ka2();
        let env = Arc::new(pa.algebra.enveloping());
        let bim = BimoduleRep::diagonal(&pa.algebra);
        let w = bim.as_right_enveloping_module(&env);
        assert!(w.validate().is_ok());
    }

    #[test]
    fn tensor_module_roundtrip() {
        let pa = ka2();
        let t = Arc::new(pa.algebra.opposite().tensor(&pa.algebra).unwrap());
        let bim = BimoduleRep::diagonal(&pa.algebra);
        let w = bim.as_right_tensor_module(&t);
        assert!(w.validate().is_ok());
        let back = BimoduleRep::from_right_tensor_module(&pa.algebra, &pa.algebra, &w);
        assert!(back.validate().is_ok());
        for (a, b) in back.left.iter().zip(&bim.left) {
            assert_eq!(a, b);
        }
        for (a, b) in back.right.iter().zip(&bim.right) {
            assert_eq!(a, b);
        }
    }
}
