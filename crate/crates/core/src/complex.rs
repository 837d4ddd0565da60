//! Bounded cochain complexes of module representations.
//!
//! Cohomological grading with differentials of degree +1. The shift is
//! `X[k]^n = X^{n+k}` with `d_{X[k]} = (-1)^k d_X`; the cone of `f: X -> Y`
//! is `cone(f)^n = X^{n+1} + Y^n` with differential
//! `(x, y) -> (-d x, f(x) + d y)`, so `cone(id)` is contractible and the
//! canonical maps `Y -> cone(f) -> X[1]` are chain maps.
//!
//! Linear duals of complexes are taken without Koszul signs, which makes the
//! double dual literally the identity; nothing downstream depends on the
//! sign choice.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::ComplexError;
use crate::mat::{express_rows, Mat, QuotientSpace};
use crate::module::ModuleRep;

#[derive(Clone, Debug)]
pub struct Complex {
    pub algebra: Arc<Algebra>,
    pub lo: i32,
    pub terms: Vec<ModuleRep>,
    /// `diffs[i]` maps `terms[i]` to `terms[i + 1]`.
    pub diffs: Vec<Mat>,
}

impl Complex {
    pub fn new(
        algebra: Arc<Algebra>,
        lo: i32,
        terms: Vec<ModuleRep>,
        diffs: Vec<Mat>,
    ) -> Result<Self, ComplexError> {
        assert_eq!(diffs.len(), terms.len().saturating_sub(1));
        let c = Complex { algebra, lo, terms, diffs };
        c.check_dd()?;
        debug_assert!(c.check_maps().is_ok());
        Ok(c)
    }

    pub fn zero(algebra: Arc<Algebra>) -> Self {
        Complex { algebra, lo: 0, terms: vec![], diffs: vec![] }
    }

    pub fn from_module(m: ModuleRep, degree: i32) -> Self {
        Complex { algebra: m.algebra.clone(), lo: degree, terms: vec![m], diffs: vec![] }
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_dim(&self, n: i32) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.terms[(n - self.lo) as usize].dim
        }
    }

    pub fn term(&self, n: i32) -> ModuleRep {
        if n < self.lo || n > self.hi() {
            ModuleRep::zero(self.algebra.clone())
        } else {
            self.terms[(n - self.lo) as usize].clone()
        }
    }

    /// The differential out of degree `n`, zero-shaped outside the support.
    pub fn diff(&self, n: i32) -> Mat {
        let p = self.algebra.prime;
        if n >= self.lo && n < self.hi() {
            self.diffs[(n - self.lo) as usize].clone()
        } else {
            Mat::zeros(self.term_dim(n), self.term_dim(n + 1), p)
        }
    }

    fn check_dd(&self) -> Result<(), ComplexError> {
        for i in 0..self.diffs.len().saturating_sub(1) {
            if !self.diffs[i].matmul(&self.diffs[i + 1]).is_zero() {
                let n = self.lo + i as i32;
                return Err(ComplexError::DifferentialSquare(n, n + 1));
            }
        }
        Ok(())
    }

    fn check_maps(&self) -> Result<(), ComplexError> {
        for (i, d) in self.diffs.iter().enumerate() {
            let src = &self.terms[i];
            let tgt = &self.terms[i + 1];
            for g in 0..self.algebra.dim {
                if src.actions[g].matmul(d) != d.matmul(&tgt.actions[g]) {
                    return Err(ComplexError::DifferentialNotMap(self.lo + i as i32));
                }
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ComplexError> {
        self.check_dd()?;
        self.check_maps()
    }

    /// Drops zero modules at both ends of the support.
    pub fn trimmed(&self) -> Complex {
        let mut lo_idx = 0;
        let mut hi_idx = self.terms.len();
        while lo_idx < hi_idx && self.terms[lo_idx].dim == 0 {
            lo_idx += 1;
        }
        while hi_idx > lo_idx && self.terms[hi_idx - 1].dim == 0 {
            hi_idx -= 1;
        }
        Complex {
            algebra: self.algebra.clone(),
            lo: self.lo + lo_idx as i32,
            terms: self.terms[lo_idx..hi_idx].to_vec(),
            diffs: if hi_idx > lo_idx { self.diffs[lo_idx..hi_idx - 1].to_vec() } else { vec![] },
        }
    }

    pub fn shift(&self, k: i32) -> Complex {
        let sign = k.rem_euclid(2) == 1;
        let diffs = self.diffs.iter().map(|d| if sign { d.neg() } else { d.clone() }).collect();
        Complex { algebra: self.algebra.clone(), lo: self.lo - k, terms: self.terms.clone(), diffs }
    }

    pub fn direct_sum(&self, other: &Complex) -> Complex {
        if self.is_empty() {
            return other.clone();
        }
        if other.is_empty() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let mut terms = Vec::new();
        let mut diffs = Vec::new();
        for n in lo..=hi {
            terms.push(self.term(n).direct_sum(&other.term(n)));
            if n < hi {
                diffs.push(self.diff(n).block_diag(&other.diff(n)));
            }
        }
        Complex { algebra: self.algebra.clone(), lo, terms, diffs }
    }

    pub fn euler_characteristic(&self) -> i64 {
        let mut chi = 0i64;
        for (i, t) in self.terms.iter().enumerate() {
            let n = self.lo + i as i32;
            let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
            chi += sign * t.dim as i64;
        }
        chi
    }

    /// Per-degree cohomology: the induced module structure plus representing
    /// cycle rows in term coordinates.
    pub fn homology(&self) -> Vec<(i32, HomologyAt)> {
        let mut out = Vec::new();
        for n in self.lo..=self.hi() {
            out.push((n, self.homology_at(n)));
        }
        out
    }

    pub fn homology_at(&self, n: i32) -> HomologyAt {
        let p = self.algebra.prime;
        let term = self.term(n);
        let cycles = self.diff(n).left_kernel().row_basis();
        let boundaries = {
            let dm = self.diff(n - 1);
            Mat::identity(self.term_dim(n - 1), p).matmul(&dm).row_basis()
        };
        let b_in_z = express_rows(&cycles, &boundaries)
            .expect("boundaries are cycles");
        let q = QuotientSpace::new(cycles.rows, &b_in_z, p);
        // induced action on homology coordinates
        let actions = (0..self.algebra.dim)
            .map(|g| {
                let za = express_rows(&cycles, &cycles.matmul(&term.actions[g]))
                    .expect("cycles form a submodule");
                q.lift.matmul(&za).matmul(&q.proj)
            })
            .collect();
        let module = ModuleRep { algebra: self.algebra.clone(), dim: q.dim, actions };
        let rep_rows = q.lift.matmul(&cycles);
        HomologyAt { module, rep_rows }
    }

    pub fn homology_dims(&self) -> Vec<(i32, usize)> {
        (self.lo..=self.hi())
            .map(|n| (n, self.homology_at(n).module.dim))
            .collect()
    }

    pub fn total_homology_dim(&self) -> usize {
        self.homology_dims().iter().map(|&(_, d)| d).sum()
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology_dims().iter().all(|&(_, d)| d == 0)
    }

    /// Degreewise linear dual over the opposite algebra, supported on the
    /// negated degrees. No Koszul signs: the double dual is the identity.
    pub fn dual(&self, opposite: &Arc<Algebra>) -> Complex {
        if self.is_empty() {
            return Complex::zero(opposite.clone());
        }
        let lo = -self.hi();
        let hi = -self.lo;
        let mut terms = Vec::new();
        let mut diffs = Vec::new();
        for n in lo..=hi {
            terms.push(self.term(-n).dual(opposite));
            if n < hi {
                diffs.push(self.diff(-n - 1).transpose());
            }
        }
        Complex { algebra: opposite.clone(), lo, terms, diffs }
    }
}

#[derive(Clone, Debug)]
pub struct HomologyAt {
    pub module: ModuleRep,
    /// Rows: representing cycles in the coordinates of the degree-n term.
    pub rep_rows: Mat,
}

/// A degreewise map of complexes commuting with the differentials.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: Complex,
    pub target: Complex,
    pub lo: i32,
    maps: Vec<Mat>,
}

impl ChainMap {
    pub fn new(source: Complex, target: Complex, lo: i32, maps: Vec<Mat>) -> Result<Self, ComplexError> {
        if source.algebra != target.algebra {
            return Err(ComplexError::AlgebraMismatch);
        }
        let f = ChainMap { source, target, lo, maps };
        f.validate()?;
        Ok(f)
    }

    pub fn zero(source: Complex, target: Complex) -> Self {
        ChainMap { lo: source.lo, maps: vec![], source, target }
    }

    pub fn identity(x: &Complex) -> Self {
        let maps = (x.lo..=x.hi())
            .map(|n| Mat::identity(x.term_dim(n), x.algebra.prime))
            .collect();
        ChainMap { source: x.clone(), target: x.clone(), lo: x.lo, maps }
    }

    pub fn component(&self, n: i32) -> Mat {
        let idx = n - self.lo;
        if idx >= 0 && (idx as usize) < self.maps.len() {
            let m = &self.maps[idx as usize];
            if m.rows == self.source.term_dim(n) && m.cols == self.target.term_dim(n) {
                return m.clone();
            }
        }
        Mat::zeros(self.source.term_dim(n), self.target.term_dim(n), self.source.algebra.prime)
    }

    pub fn validate(&self) -> Result<(), ComplexError> {
        let lo = self.source.lo.min(self.target.lo) - 1;
        let hi = self.source.hi().max(self.target.hi()) + 1;
        for n in lo..=hi {
            let lhs = self.source.diff(n).matmul(&self.component(n + 1));
            let rhs = self.component(n).matmul(&self.target.diff(n));
            if lhs != rhs {
                return Err(ComplexError::NotChainMap(n));
            }
        }
        Ok(())
    }

    pub fn shift(&self, k: i32) -> ChainMap {
        ChainMap {
            source: self.source.shift(k),
            target: self.target.shift(k),
            lo: self.lo - k,
            maps: self.maps.clone(),
        }
    }

    pub fn direct_sum(&self, other: &ChainMap) -> ChainMap {
        let source = self.source.direct_sum(&other.source);
        let target = self.target.direct_sum(&other.target);
        let lo = source.lo;
        let maps = (lo..=source.hi())
            .map(|n| {
                // block-diagonal with the correct (possibly zero) shapes
                let a = self.component(n);
                let b = other.component(n);
                let mut m = Mat::zeros(
                    a.rows + b.rows,
                    a.cols + b.cols,
                    source.algebra.prime,
                );
                m.paste(0, 0, &a);
                m.paste(a.rows, a.cols, &b);
                m
            })
            .collect();
        ChainMap { source, target, lo, maps }
    }
}

/// Mapping cone of `f` together with the inclusion of the target and the
/// projection onto the shifted source.
pub fn cone(f: &ChainMap) -> (Complex, ChainMap, ChainMap) {
    let src = &f.source;
    let tgt = &f.target;
    let algebra = src.algebra.clone();
    let p = algebra.prime;
    if src.is_empty() && tgt.is_empty() {
        let z = Complex::zero(algebra);
        return (z.clone(), ChainMap::zero(tgt.clone(), z.clone()), ChainMap::zero(z.clone(), src.shift(1)));
    }
    let lo = (src.lo - 1).min(tgt.lo);
    let hi = (src.hi() - 1).max(tgt.hi());
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    for n in lo..=hi {
        terms.push(src.term(n + 1).direct_sum(&tgt.term(n)));
        if n < hi {
            let (sx, sy) = (src.term_dim(n + 1), tgt.term_dim(n));
            let (tx, ty) = (src.term_dim(n + 2), tgt.term_dim(n + 1));
            let mut d = Mat::zeros(sx + sy, tx + ty, p);
            d.paste(0, 0, &src.diff(n + 1).neg());
            d.paste(0, tx, &f.component(n + 1));
            d.paste(sx, tx, &tgt.diff(n));
            diffs.push(d);
        }
    }
    let cone = Complex { algebra, lo, terms, diffs };
    let incl_maps = (lo..=hi)
        .map(|n| {
            let mut m = Mat::zeros(tgt.term_dim(n), cone.term_dim(n), p);
            let sx = src.term_dim(n + 1);
            for i in 0..tgt.term_dim(n) {
                m.set(i, sx + i, 1);
            }
            m
        })
        .collect();
    let incl = ChainMap { source: tgt.clone(), target: cone.clone(), lo, maps: incl_maps };
    let shifted = src.shift(1);
    let proj_maps = (lo..=hi)
        .map(|n| {
            let mut m = Mat::zeros(cone.term_dim(n), shifted.term_dim(n), p);
            for i in 0..src.term_dim(n + 1) {
                m.set(i, i, 1);
            }
            m
        })
        .collect();
    let proj = ChainMap { source: cone.clone(), target: shifted, lo, maps: proj_maps };
    debug_assert!(incl.validate().is_ok());
    debug_assert!(proj.validate().is_ok());
    (cone, incl, proj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::DEFAULT_PRIME;
    use crate::module::{hom_space, ModuleRep};
    use crate::samples::{projective_at_vertex as projective, simple_at_vertex as simple_top};

    const P: u64 = DEFAULT_PRIME;

    fn ka2() -> crate::quiver::PathAlgebra {
        crate::samples::ka2(P)
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let pa = ka2();
        let reg = ModuleRep::regular(pa.algebra.clone());
        let x = Complex::from_module(reg, 0);
        let id = ChainMap::identity(&x);
        let (c, _, _) = cone(&id);
        assert!(c.validate().is_ok());
        assert!(c.is_acyclic());
    }

    #[test]
    fn cone_of_map_from_zero() {
        let pa = ka2();
        let x = Complex::from_module(ModuleRep::regular(pa.algebra.clone()), 0);
        let z = Complex::zero(pa.algebra.clone());
        let f = ChainMap::zero(z, x.clone());
        let (c, incl, _) = cone(&f);
        assert_eq!(c.term_dim(0), x.term_dim(0));
        assert!(incl.component(0).is_identity());
    }

    #[test]
    fn cone_of_projective_inclusion_over_a2() {
        let pa = ka2();
        let p1 = projective(&pa, 0);
        let p2 = projective(&pa, 1);
        let hom = hom_space(&p2, &p1).unwrap();
        assert_eq!(hom.dim(), 1);
        let f = ChainMap::new(
            Complex::from_module(p2, 0),
            Complex::from_module(p1, 0),
            0,
            vec![hom.maps[0].clone()],
        )
        .unwrap();
        let (c, _, _) = cone(&f);
        let dims: Vec<(i32, usize)> = c.homology_dims();
        // homology concentrated in degree 0 with dimension 1 (the simple top)
        for (n, d) in dims {
            if n == 0 {
                assert_eq!(d, 1);
            } else {
                assert_eq!(d, 0);
            }
        }
    }

    #[test]
    fn homology_of_concentrated_module() {
        let pa = ka2();
        let m = ModuleRep::regular(pa.algebra.clone());
        let x = Complex::from_module(m.clone(), 0);
        let h = x.homology_at(0);
        assert_eq!(h.module.dim, m.dim);
        assert_eq!(x.homology_at(1).module.dim, 0);
    }

    #[test]
    fn homology_of_two_term_inclusion() {
        // 0 -> P_2 -> P_1 -> 0 in degrees -1, 0: H^0 has dim 1, H^{-1} = 0
        let pa = ka2();
        let p1 = projective(&pa, 0);
        let p2 = projective(&pa, 1);
        let hom = hom_space(&p2, &p1).unwrap();
        let x = Complex::new(
            pa.algebra.clone(),
            -1,
            vec![p2, p1],
            vec![hom.maps[0].clone()],
        )
        .unwrap();
        assert_eq!(x.homology_at(0).module.dim, 1);
        assert_eq!(x.homology_at(-1).module.dim, 0);
        // Euler characteristic equals the alternating sum of term dims
        assert_eq!(x.euler_characteristic(), 2 - 1);
        let total: i64 = x
            .homology_dims()
            .iter()
            .map(|&(n, d)| if n.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })
            .sum();
        assert_eq!(total, x.euler_characteristic());
    }

    #[test]
    fn shift_moves_homology() {
        let pa = ka2();
        let p1 = projective(&pa, 0);
        let s1 = simple_top(&pa, 0);
        let hom = hom_space(&p1, &s1).unwrap();
        let x = Complex::new(pa.algebra.clone(), 0, vec![p1, s1], vec![hom.maps[0].clone()]).unwrap();
        let shifted = x.shift(2);
        assert!(shifted.validate().is_ok());
        for (n, d) in x.homology_dims() {
            assert_eq!(shifted.homology_at(n - 2).module.dim, d);
        }
    }

    #[test]
    fn euler_check_for_cones() {
        let pa = ka2();
        let p1 = projective(&pa, 0);
        let s1 = simple_top(&pa, 0);
        let hom = hom_space(&p1, &s1).unwrap();
        let f = ChainMap::new(
            Complex::from_module(p1, 0),
            Complex::from_module(s1, 0),
            0,
            vec![hom.maps[0].clone()],
        )
        .unwrap();
        let (c, _, _) = cone(&f);
        assert_eq!(
            c.euler_characteristic(),
            f.target.euler_characteristic() - f.source.euler_characteristic()
        );
    }

    #[test]
    fn dual_complex_double_dual_identity() {
        let pa = ka2();
        let opp = std::sync::Arc::new(pa.algebra.opposite());
        let p1 = projective(&pa, 0);
        let s1 = simple_top(&pa, 0);
        let hom = hom_space(&p1, &s1).unwrap();
        let x = Complex::new(pa.algebra.clone(), -1, vec![p1, s1], vec![hom.maps[0].clone()]).unwrap();
        let d = x.dual(&opp);
        assert!(d.validate().is_ok());
        // homology dims flip degree
        for (n, dim) in x.homology_dims() {
            assert_eq!(d.homology_at(-n).module.dim, dim);
        }
        let back = Arc::new(opp.opposite());
        let dd = d.dual(&back);
        assert_eq!(dd.lo, x.lo);
        for n in x.lo..=x.hi() {
            assert_eq!(dd.diff(n), x.diff(n));
        }
    }

    #[test]
    fn validates_dd_zero() {
        let pa = ka2();
        let reg = ModuleRep::regular(pa.algebra.clone());
        let id = Mat::identity(reg.dim, P);
        let bad = Complex::new(
            pa.algebra.clone(),
            0,
            vec![reg.clone(), reg.clone(), reg.clone()],
            vec![id.clone(), id],
        );
        assert!(matches!(bad, Err(ComplexError::DifferentialSquare(..))));
    }
}
