//! Upper-triangular gluings `tri(S, R, M)` and their module category in the
//! triple model.
//!
//! The glued algebra has basis blocks `[S | M | R]` in that order; the only
//! nonzero block products are `S·S`, `R·R`, `S·M` and `M·R`. A right module
//! over the gluing is the same as a triple `(U, V, phi)` with `U` a right
//! S-module, `V` a right R-module and `phi: U ⊗_S M -> V` R-linear; the
//! conversion in both directions is implemented and round-trips.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::complex::{cone, ChainMap, Complex};
use crate::error::TriangularError;
use crate::mat::{express_rows, Mat};
use crate::module::{
    hom_space, tensor_over_algebra, BimoduleRep, ModuleRep, TensorProduct,
};

#[derive(Clone, Debug)]
pub struct TriangularAlgebra {
    pub s: Arc<Algebra>,
    pub r: Arc<Algebra>,
    pub m: BimoduleRep,
    pub lambda: Arc<Algebra>,
    /// `unit(S)` and `unit(R)` embedded in the gluing.
    pub eps_s: Vec<u64>,
    pub eps_r: Vec<u64>,
}

impl TriangularAlgebra {
    pub fn s_dim(&self) -> usize {
        self.s.dim
    }
    pub fn m_dim(&self) -> usize {
        self.m.dim
    }
    pub fn r_dim(&self) -> usize {
        self.r.dim
    }
    fn m_off(&self) -> usize {
        self.s.dim
    }
    fn r_off(&self) -> usize {
        self.s.dim + self.m.dim
    }
}

/// Assembles `tri(S, R, M)` blockwise.
pub fn build_triangular(
    s: &Arc<Algebra>,
    r: &Arc<Algebra>,
    m: &BimoduleRep,
) -> Result<TriangularAlgebra, TriangularError> {
    if s.dim == 0 || r.dim == 0 {
        return Err(TriangularError::ZeroAlgebra);
    }
    if *m.left_algebra != **s || *m.right_algebra != **r {
        return Err(TriangularError::InvalidBimodule(
            "bimodule sides do not match the diagonal algebras".into(),
        ));
    }
    m.validate().map_err(|e| TriangularError::InvalidBimodule(e.to_string()))?;
    let p = s.prime;
    let (ns, nm, nr) = (s.dim, m.dim, r.dim);
    let n = ns + nm + nr;
    let m_off = ns;
    let r_off = ns + nm;
    let mut sc = vec![0u64; n * n * n];
    let mut put = |i: usize, j: usize, k: usize, v: u64| {
        if v != 0 {
            sc[(i * n + j) * n + k] = v % p;
        }
    };
    for i in 0..ns {
        for j in 0..ns {
            for k in 0..ns {
                put(i, j, k, s.sc(i, j, k));
            }
        }
    }
    for i in 0..nr {
        for j in 0..nr {
            for k in 0..nr {
                put(r_off + i, r_off + j, r_off + k, r.sc(i, j, k));
            }
        }
    }
    // e^S_i · e^M_b = sum_d lambda(e_i)[d][b] e^M_d
    for i in 0..ns {
        for b in 0..nm {
            for d in 0..nm {
                put(i, m_off + b, m_off + d, m.left[i].get(d, b));
            }
        }
    }
    // e^M_b · e^R_j = sum_d rho(e_j)[b][d] e^M_d
    for b in 0..nm {
        for j in 0..nr {
            for d in 0..nm {
                put(m_off + b, r_off + j, m_off + d, m.right[j].get(b, d));
            }
        }
    }
    let mut unit = vec![0u64; n];
    let mut eps_s = vec![0u64; n];
    let mut eps_r = vec![0u64; n];
    for i in 0..ns {
        unit[i] = s.unit[i];
        eps_s[i] = s.unit[i];
    }
    for j in 0..nr {
        unit[r_off + j] = r.unit[j];
        eps_r[r_off + j] = r.unit[j];
    }
    let lambda = Algebra::new(p, n, sc, unit)
        .map_err(|e| TriangularError::InvalidBimodule(e.to_string()))?;
    debug_assert!(lambda.validate().is_ok());
    Ok(TriangularAlgebra {
        s: s.clone(),
        r: r.clone(),
        m: m.clone(),
        lambda: Arc::new(lambda),
        eps_s,
        eps_r,
    })
}

/// A module over the gluing in triple form.
#[derive(Clone, Debug)]
pub struct Triple {
    pub u: ModuleRep,
    pub v: ModuleRep,
    /// Map `(U ⊗_S M) -> V` in the quotient coordinates of `tensor`.
    pub phi: Mat,
    pub tensor: TensorProduct,
}

impl Triple {
    pub fn new(
        t: &TriangularAlgebra,
        u: ModuleRep,
        v: ModuleRep,
        phi: Mat,
    ) -> Result<Triple, TriangularError> {
        let tensor = tensor_over_algebra(&u, &t.m)
            .map_err(|e| TriangularError::InvalidBimodule(e.to_string()))?;
        if phi.rows != tensor.module.dim || phi.cols != v.dim {
            return Err(TriangularError::NotATriple(format!(
                "phi is {}x{}, expected {}x{}",
                phi.rows, phi.cols, tensor.module.dim, v.dim
            )));
        }
        for g in 0..t.r.dim {
            if tensor.module.actions[g].matmul(&phi) != phi.matmul(&v.actions[g]) {
                return Err(TriangularError::NotATriple(format!(
                    "phi is not R-linear at basis element {g}"
                )));
            }
        }
        Ok(Triple { u, v, phi, tensor })
    }

    pub fn zero(t: &TriangularAlgebra) -> Triple {
        let u = ModuleRep::zero(t.s.clone());
        let v = ModuleRep::zero(t.r.clone());
        let tensor = tensor_over_algebra(&u, &t.m).unwrap();
        Triple { u, v, phi: Mat::zeros(0, 0, t.s.prime), tensor }
    }

    pub fn dim(&self) -> usize {
        self.u.dim + self.v.dim
    }

    /// The associated right module over the gluing.
    pub fn to_module(&self, t: &TriangularAlgebra) -> ModuleRep {
        let p = t.lambda.prime;
        let (ud, vd) = (self.u.dim, self.v.dim);
        let dim = ud + vd;
        let mut actions = Vec::with_capacity(t.lambda.dim);
        for i in 0..t.s_dim() {
            let mut a = Mat::zeros(dim, dim, p);
            a.paste(0, 0, &self.u.actions[i]);
            actions.push(a);
        }
        let md = t.m_dim();
        for b in 0..md {
            // u_a -> phi(u_a ⊗ m_b)
            let mut a = Mat::zeros(dim, dim, p);
            for row in 0..ud {
                let full_idx = row * md + b;
                let qrow = Mat::from_fn(1, self.tensor.space.dim, p, |_, j| {
                    self.tensor.space.proj.get(full_idx, j)
                });
                let img = qrow.matmul(&self.phi);
                for c in 0..vd {
                    a.set(row, ud + c, img.get(0, c));
                }
            }
            actions.push(a);
        }
        for j in 0..t.r_dim() {
            let mut a = Mat::zeros(dim, dim, p);
            a.paste(ud, ud, &self.v.actions[j]);
            actions.push(a);
        }
        ModuleRep { algebra: t.lambda.clone(), dim, actions }
    }

    /// Splits a module over the gluing into a triple along the diagonal
    /// idempotents.
    pub fn from_module(t: &TriangularAlgebra, x: &ModuleRep) -> Result<Triple, TriangularError> {
        if *x.algebra != *t.lambda {
            return Err(TriangularError::NotATriple("module is not over the gluing".into()));
        }
        let p = t.lambda.prime;
        let u_rows = x.action_of(&t.eps_s).row_basis();
        let v_rows = x.action_of(&t.eps_r).row_basis();
        if u_rows.rows + v_rows.rows != x.dim {
            return Err(TriangularError::NotATriple(
                "diagonal idempotents do not split the module".into(),
            ));
        }
        let restrict = |rows: &Mat, action: &Mat| -> Result<Mat, TriangularError> {
            express_rows(rows, &rows.matmul(action)).ok_or_else(|| {
                TriangularError::NotATriple("block is not stable under its diagonal action".into())
            })
        };
        let mut u_actions = Vec::new();
        for i in 0..t.s_dim() {
            u_actions.push(restrict(&u_rows, &x.actions[i])?);
        }
        let u = ModuleRep { algebra: t.s.clone(), dim: u_rows.rows, actions: u_actions };
        let mut v_actions = Vec::new();
        for j in 0..t.r_dim() {
            v_actions.push(restrict(&v_rows, &x.actions[t.r_off() + j])?);
        }
        let v = ModuleRep { algebra: t.r.clone(), dim: v_rows.rows, actions: v_actions };
        let tensor = tensor_over_algebra(&u, &t.m)
            .map_err(|e| TriangularError::NotATriple(e.to_string()))?;
        // full-tensor map u_a ⊗ m_b -> (u_a as x-element) · e^M_b, in V rows
        let md = t.m_dim();
        let mut full = Mat::zeros(u.dim * md, v.dim, p);
        for a in 0..u.dim {
            let xa = Mat::from_fn(1, x.dim, p, |_, j| u_rows.get(a, j));
            for b in 0..md {
                let img = xa.matmul(&x.actions[t.m_off() + b]);
                let coords = express_rows(&v_rows, &img).ok_or_else(|| {
                    TriangularError::NotATriple("M-block does not map U into V".into())
                })?;
                for c in 0..v.dim {
                    full.set(a * md + b, c, coords.get(0, c));
                }
            }
        }
        let phi = tensor.space.lift.matmul(&full);
        // the full map must factor through the balanced quotient
        if tensor.space.proj.matmul(&phi) != full {
            return Err(TriangularError::NotATriple(
                "M-block action is not balanced over S".into(),
            ));
        }
        Triple::new(t, u, v, phi)
    }

    pub fn direct_sum(&self, t: &TriangularAlgebra, other: &Triple) -> Triple {
        let m = self.to_module(t).direct_sum(&other.to_module(t));
        Triple::from_module(t, &m).expect("sum of triples is a triple")
    }
}

/// A complex of triples: componentwise triples with a chain condition.
#[derive(Clone, Debug)]
pub struct TripleComplex {
    pub u: Complex,
    pub v: Complex,
    /// Chain map `(U ⊗_S M)• -> V•`.
    pub phi: ChainMap,
}

impl TripleComplex {
    pub fn zero(t: &TriangularAlgebra) -> TripleComplex {
        let u = Complex::zero(t.s.clone());
        let v = Complex::zero(t.r.clone());
        let um = crate::homalg::tensor_complex(&u, &t.m).unwrap();
        TripleComplex { phi: ChainMap::zero(um.complex, v.clone()), u, v }
    }

    pub fn from_triple(t: &TriangularAlgebra, triple: &Triple, degree: i32) -> TripleComplex {
        let u = Complex::from_module(triple.u.clone(), degree);
        let v = Complex::from_module(triple.v.clone(), degree);
        let um = crate::homalg::tensor_complex(&u, &t.m).unwrap();
        let phi = ChainMap::new(um.complex, v.clone(), degree, vec![triple.phi.clone()])
            .expect("triple map is a chain map in one degree");
        TripleComplex { u, v, phi }
    }

    pub fn to_lambda_complex(&self, t: &TriangularAlgebra) -> Complex {
        let lo = self.u.lo.min(self.v.lo);
        let hi = self.u.hi().max(self.v.hi());
        let p = t.lambda.prime;
        let mut terms = Vec::new();
        let mut diffs = Vec::new();
        let mut triples = Vec::new();
        for n in lo..=hi {
            let triple = self.triple_at(t, n);
            terms.push(triple.to_module(t));
            triples.push(triple);
        }
        for n in lo..hi {
            let i = (n - lo) as usize;
            let (ud0, vd0) = (triples[i].u.dim, triples[i].v.dim);
            let (ud1, vd1) = (triples[i + 1].u.dim, triples[i + 1].v.dim);
            let mut d = Mat::zeros(ud0 + vd0, ud1 + vd1, p);
            d.paste(0, 0, &self.u.diff(n));
            d.paste(ud0, ud1, &self.v.diff(n));
            diffs.push(d);
        }
        Complex::new(t.lambda.clone(), lo, terms, diffs).expect("triple complex squares to zero")
    }

    pub fn from_lambda_complex(
        t: &TriangularAlgebra,
        x: &Complex,
    ) -> Result<TripleComplex, TriangularError> {
        let x = x.trimmed();
        let p = t.lambda.prime;
        if x.is_empty() {
            return Ok(TripleComplex::zero(t));
        }
        let mut triples = Vec::new();
        let mut u_rows_all = Vec::new();
        let mut v_rows_all = Vec::new();
        for n in x.lo..=x.hi() {
            let term = x.term(n);
            u_rows_all.push(term.action_of(&t.eps_s).row_basis());
            v_rows_all.push(term.action_of(&t.eps_r).row_basis());
            triples.push(Triple::from_module(t, &term)?);
        }
        let mut u_terms = Vec::new();
        let mut v_terms = Vec::new();
        for tr in &triples {
            u_terms.push(tr.u.clone());
            v_terms.push(tr.v.clone());
        }
        let mut u_diffs = Vec::new();
        let mut v_diffs = Vec::new();
        for n in x.lo..x.hi() {
            let i = (n - x.lo) as usize;
            let d = x.diff(n);
            let du = express_rows(&u_rows_all[i + 1], &u_rows_all[i].matmul(&d))
                .ok_or_else(|| TriangularError::NotATriple("differential leaves U".into()))?;
            let dv = express_rows(&v_rows_all[i + 1], &v_rows_all[i].matmul(&d))
                .ok_or_else(|| TriangularError::NotATriple("differential leaves V".into()))?;
            u_diffs.push(du);
            v_diffs.push(dv);
        }
        let u = Complex::new(t.s.clone(), x.lo, u_terms, u_diffs)
            .map_err(|e| TriangularError::NotATriple(e.to_string()))?;
        let v = Complex::new(t.r.clone(), x.lo, v_terms, v_diffs)
            .map_err(|e| TriangularError::NotATriple(e.to_string()))?;
        let um = crate::homalg::tensor_complex(&u, &t.m)
            .map_err(|e| TriangularError::NotATriple(e.to_string()))?;
        let phis = triples.iter().map(|tr| tr.phi.clone()).collect();
        let phi = ChainMap::new(um.complex, v.clone(), x.lo, phis)
            .map_err(|e| TriangularError::NotATriple(e.to_string()))?;
        let _ = p;
        Ok(TripleComplex { u, v, phi })
    }

    pub fn triple_at(&self, t: &TriangularAlgebra, n: i32) -> Triple {
        Triple::new(t, self.u.term(n), self.v.term(n), self.phi.component(n))
            .expect("components of a triple complex are triples")
    }

    pub fn direct_sum(&self, t: &TriangularAlgebra, other: &TripleComplex) -> TripleComplex {
        let a = self.to_lambda_complex(t);
        let b = other.to_lambda_complex(t);
        TripleComplex::from_lambda_complex(t, &a.direct_sum(&b)).expect("sum of triples")
    }

    pub fn shift(&self, t: &TriangularAlgebra, k: i32) -> TripleComplex {
        TripleComplex::from_lambda_complex(t, &self.to_lambda_complex(t).shift(k))
            .expect("shift of a triple complex")
    }

    /// Per-degree homology dimensions of the two components.
    pub fn component_homology_dims(&self) -> (Vec<(i32, usize)>, Vec<(i32, usize)>) {
        (self.u.homology_dims(), self.v.homology_dims())
    }
}

/// `i(d) = (0, d, 0)`: the inclusion of R-modules.
pub fn recollement_i(t: &TriangularAlgebra, d: &ModuleRep) -> Triple {
    let u = ModuleRep::zero(t.s.clone());
    let tensor = tensor_over_algebra(&u, &t.m).unwrap();
    Triple { u, v: d.clone(), phi: Mat::zeros(0, d.dim, t.lambda.prime), tensor }
}

/// `p(x) = U`: project to the S-component.
pub fn recollement_p(x: &Triple) -> ModuleRep {
    x.u.clone()
}

/// `p_L(c) = (c, c ⊗_S M, id)`: the left adjoint section of `p`.
pub fn recollement_p_l(t: &TriangularAlgebra, c: &ModuleRep) -> Triple {
    let tensor = tensor_over_algebra(c, &t.m).expect("module over S");
    let phi = Mat::identity(tensor.module.dim, t.lambda.prime);
    Triple { u: c.clone(), v: tensor.module.clone(), phi, tensor }
}

/// `p_R(c) = (c, 0, 0)`: the right adjoint section of `p`.
pub fn recollement_p_r(t: &TriangularAlgebra, c: &ModuleRep) -> Triple {
    let tensor = tensor_over_algebra(c, &t.m).expect("module over S");
    let v = ModuleRep::zero(t.r.clone());
    Triple { u: c.clone(), v, phi: Mat::zeros(tensor.module.dim, 0, t.lambda.prime), tensor }
}

/// `i_R(x) = V`: the right adjoint of `i`.
pub fn recollement_i_r(x: &Triple) -> ModuleRep {
    x.v.clone()
}

/// `i_L(x) = cofib(phi)`: complex-level left adjoint of `i`. On a plain
/// triple this returns a two-term complex in degrees -1 and 0.
pub fn recollement_i_l(t: &TriangularAlgebra, x: &TripleComplex) -> Complex {
    let _ = t;
    let (c, _, _) = cone(&x.phi);
    c
}

/// The canonical isomorphism `S ⊗_S M -> M` (quotient coordinates to M
/// coordinates), with the verification that it intertwines the R-actions.
pub fn tensor_regular_iso(t: &TriangularAlgebra) -> (Triple, Mat, bool) {
    let s_reg = ModuleRep::regular(t.s.clone());
    let pl = recollement_p_l(t, &s_reg);
    let p = t.lambda.prime;
    let md = t.m_dim();
    let mut full = Mat::zeros(t.s_dim() * md, md, p);
    for a in 0..t.s_dim() {
        let lop = t.m.left_operator(&t.s.basis_element(a));
        for b in 0..md {
            for c in 0..md {
                full.set(a * md + b, c, lop.get(b, c));
            }
        }
    }
    let iso = pl.tensor.space.lift.matmul(&full);
    let m_right = t.m.right_module();
    let mut ok = iso.rank() == md && pl.tensor.module.dim == md;
    if ok {
        for g in 0..t.r.dim {
            if pl.tensor.module.actions[g].matmul(&iso) != iso.matmul(&m_right.actions[g]) {
                ok = false;
            }
        }
    }
    (pl, iso, ok)
}

/// Verification of the compact-generator computation: the four Hom blocks
/// between `i(R)` and `p_L(S)` have dims `(dim S, dim M, 0, dim R)`, and
/// `End(i(R) ⊕ p_L(S))` is the gluing itself under the canonical
/// identification.
#[derive(Clone, Debug)]
pub struct GeneratorReport {
    pub hom_dims: [usize; 4],
    pub expected: [usize; 4],
    pub end_dim: usize,
    pub lambda_dim: usize,
    pub canonical_iso: bool,
    pub structure_match: bool,
}

impl GeneratorReport {
    pub fn ok(&self) -> bool {
        self.hom_dims == self.expected
            && self.end_dim == self.lambda_dim
            && self.canonical_iso
            && self.structure_match
    }
}

pub fn generator_check(t: &TriangularAlgebra) -> GeneratorReport {
    let p = t.lambda.prime;
    let s_reg = ModuleRep::regular(t.s.clone());
    let r_reg = ModuleRep::regular(t.r.clone());
    let pl = recollement_p_l(t, &s_reg).to_module(t);
    let ir = recollement_i(t, &r_reg).to_module(t);
    let hom_dims = [
        hom_space(&pl, &pl).unwrap().dim(),
        hom_space(&ir, &pl).unwrap().dim(),
        hom_space(&pl, &ir).unwrap().dim(),
        hom_space(&ir, &ir).unwrap().dim(),
    ];
    let expected = [t.s_dim(), t.m_dim(), 0, t.r_dim()];
    let x = pl.direct_sum(&ir);
    let end_dim = hom_space(&x, &x).unwrap().dim();
    let lambda_dim = t.lambda.dim;

    // canonical identification X = [S | S⊗M | R] -> Lambda coordinates
    let (pl_triple, tensor_iso, tensor_ok) = tensor_regular_iso(t);
    let _ = pl_triple;
    let mut theta = Mat::zeros(x.dim, lambda_dim, p);
    theta.paste(0, 0, &Mat::identity(t.s_dim(), p));
    theta.paste(t.s_dim(), t.s_dim(), &tensor_iso);
    theta.paste(t.s_dim() + t.m_dim(), t.s_dim() + t.m_dim(), &Mat::identity(t.r_dim(), p));
    let regular = ModuleRep::regular(t.lambda.clone());
    let mut canonical_iso = tensor_ok && x.dim == lambda_dim && theta.rank() == lambda_dim;
    if canonical_iso {
        for g in 0..t.lambda.dim {
            if x.actions[g].matmul(&theta) != theta.matmul(&regular.actions[g]) {
                canonical_iso = false;
                break;
            }
        }
    }

    // structure constants: e -> theta . L_e . theta^{-1} is multiplicative
    let mut structure_match = canonical_iso;
    if canonical_iso {
        let theta_inv = theta
            .solve(&Mat::identity(lambda_dim, p))
            .expect("canonical identification is invertible");
        let cands: Vec<Mat> = (0..lambda_dim)
            .map(|k| {
                theta
                    .matmul(&t.lambda.left_mult(&t.lambda.basis_element(k)))
                    .matmul(&theta_inv)
            })
            .collect();
        'check: for i in 0..lambda_dim {
            for j in 0..lambda_dim {
                // End product cand_i * cand_j has matrix cand_j . cand_i
                let prod = cands[j].matmul(&cands[i]);
                let mut expect = Mat::zeros(x.dim, x.dim, p);
                for (k, &c) in t.lambda.basis_product(i, j).iter().enumerate() {
                    if c != 0 {
                        expect = expect.add(&cands[k].scale(c));
                    }
                }
                if prod != expect {
                    structure_match = false;
                    break 'check;
                }
            }
        }
    }

    GeneratorReport { hom_dims, expected, end_dim, lambda_dim, canonical_iso, structure_match }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::DEFAULT_PRIME;
    use crate::samples::{ka2, projective_at_vertex, random_algebra, random_bimodule};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const P: u64 = DEFAULT_PRIME;

    fn field_tri() -> TriangularAlgebra {
        let k = Algebra::field(P);
        let m = BimoduleRep::diagonal(&k);
        build_triangular(&k, &k, &m).unwrap()
    }

    #[test]
    fn tri_of_fields_is_a2() {
        let t = field_tri();
        assert_eq!(t.lambda.dim, 3);
        assert!(t.lambda.validate().is_ok());
        // compare with the path algebra of A_2 under the reordering
        // [s, m, r] -> [e_0, a, e_1]
        let pa = ka2(P);
        let perm = [pa.vertex_idempotent[0], pa.arrow_element[0], pa.vertex_idempotent[1]];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    assert_eq!(
                        t.lambda.sc(i, j, k),
                        pa.algebra.sc(perm[i], perm[j], perm[k]),
                        "structure constants differ at ({i},{j},{k})"
                    );
                }
            }
        }
    }

    #[test]
    fn tri_with_zero_bimodule_is_product() {
        let pa = ka2(P);
        let k = Algebra::field(P);
        let m = BimoduleRep::zero(pa.algebra.clone(), k.clone());
        let t = build_triangular(&pa.algebra, &k, &m).unwrap();
        let prod = pa.algebra.product(&k).unwrap();
        assert_eq!(*t.lambda, prod);
    }

    #[test]
    fn one_point_extension_dimension() {
        // tri(A^e, k, A) for A = kA_2 has dimension 9 + 3 + 1 = 13
        let pa = ka2(P);
        let env = Arc::new(pa.algebra.enveloping());
        let k = Algebra::field(P);
        let m = BimoduleRep::left_enveloping_diagonal(&pa.algebra, &env, &k);
        assert!(m.validate().is_ok());
        let t = build_triangular(&env, &k, &m).unwrap();
        assert_eq!(t.lambda.dim, 13);
        assert!(t.lambda.validate().is_ok());
    }

    #[test]
    fn zero_algebra_rejected() {
        let k = Algebra::field(P);
        let z = Algebra::zero(P);
        let m = BimoduleRep::zero(z.clone(), k.clone());
        assert!(matches!(build_triangular(&z, &k, &m), Err(TriangularError::ZeroAlgebra)));
    }

    #[test]
    fn regular_module_splits_as_pl_plus_i() {
        let pa = ka2(P);
        let k = Algebra::field(P);
        let field = k.clone();
        let p1 = projective_at_vertex(&pa, 0);
        let m = BimoduleRep::trivial_left(&field, &p1);
        let t = build_triangular(&k, &pa.algebra, &m).unwrap();
        let reg = ModuleRep::regular(t.lambda.clone());
        let tr = Triple::from_module(&t, &reg).unwrap();
        assert_eq!(tr.u.dim, t.s_dim());
        assert_eq!(tr.v.dim, t.m_dim() + t.r_dim());
        // and back
        let back = tr.to_module(&t);
        assert_eq!(back.dim, reg.dim);
        assert!(back.validate().is_ok());
        let h = hom_space(&back, &reg).unwrap();
        assert_eq!(h.dim(), t.lambda.dim);
    }

    #[test]
    fn inflation_roundtrip() {
        // (0, V, 0) converts to the inflation along the projection to R
        let t = field_tri();
        let v = ModuleRep::regular(t.r.clone());
        let tr = recollement_i(&t, &v);
        let module = tr.to_module(&t);
        assert!(module.validate().is_ok());
        let back = Triple::from_module(&t, &module).unwrap();
        assert_eq!(back.u.dim, 0);
        assert_eq!(back.v.dim, v.dim);
    }

    #[test]
    fn u_only_triple_with_zero_target_is_legal() {
        // (S, 0, 0) with phi = 0 into the zero module
        let t = field_tri();
        let u = ModuleRep::regular(t.s.clone());
        let triple = recollement_p_r(&t, &u);
        let module = triple.to_module(&t);
        assert!(module.validate().is_ok());
        let back = Triple::from_module(&t, &module).unwrap();
        assert_eq!(back.u.dim, 1);
        assert_eq!(back.v.dim, 0);
    }

    #[test]
    fn recollement_units() {
        let pa = ka2(P);
        let k = Algebra::field(P);
        let p1 = projective_at_vertex(&pa, 0);
        let m = BimoduleRep::trivial_left(&k, &p1);
        let t = build_triangular(&k, &pa.algebra, &m).unwrap();
        // p(p_L(c)) = c
        let c = ModuleRep::regular(t.s.clone());
        let plc = recollement_p_l(&t, &c);
        assert_eq!(recollement_p(&plc).dim, c.dim);
        // i_R(p_L(S)) = S ⊗_S M = M
        let (_, iso, ok) = tensor_regular_iso(&t);
        assert!(ok, "canonical iso S⊗M -> M fails");
        assert_eq!(iso.rank(), t.m_dim());
        // i_L(i(d)) = d: cone of 0 -> d
        let d = ModuleRep::regular(t.r.clone());
        let id_triple = recollement_i(&t, &d);
        let tc = TripleComplex::from_triple(&t, &id_triple, 0);
        let cofib = recollement_i_l(&t, &tc);
        let dims: Vec<usize> = cofib.homology_dims().iter().map(|&(_, d)| d).collect();
        assert_eq!(dims.iter().sum::<usize>(), d.dim);
        assert_eq!(cofib.homology_at(0).module.dim, d.dim);
    }

    #[test]
    fn generator_check_on_field_gluing() {
        let t = field_tri();
        let rep = generator_check(&t);
        assert_eq!(rep.hom_dims, [1, 1, 0, 1]);
        assert_eq!(rep.end_dim, 3);
        assert!(rep.ok(), "{rep:?}");
    }

    #[test]
    fn generator_check_zero_bimodule() {
        let pa = ka2(P);
        let k = Algebra::field(P);
        let m = BimoduleRep::zero(pa.algebra.clone(), k.clone());
        let t = build_triangular(&pa.algebra, &k, &m).unwrap();
        let rep = generator_check(&t);
        assert_eq!(rep.hom_dims[1], 0);
        assert!(rep.ok());
    }

    #[test]
    fn generator_check_one_point_extension() {
        let pa = ka2(P);
        let env = Arc::new(pa.algebra.enveloping());
        let k = Algebra::field(P);
        let m = BimoduleRep::left_enveloping_diagonal(&pa.algebra, &env, &k);
        let t = build_triangular(&env, &k, &m).unwrap();
        let rep = generator_check(&t);
        assert_eq!(rep.hom_dims, [9, 3, 0, 1]);
        assert!(rep.ok(), "{rep:?}");
    }

    #[test]
    fn generator_check_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..6 {
            let s = random_algebra(&mut rng, P, 3);
            let r = random_algebra(&mut rng, P, 3);
            let m = random_bimodule(&mut rng, &s, &r, 4);
            let t = build_triangular(&s, &r, &m).unwrap();
            let rep = generator_check(&t);
            assert!(rep.ok(), "{rep:?}");
        }
    }

    #[test]
    fn triple_complex_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let s = random_algebra(&mut rng, P, 2);
        let r = random_algebra(&mut rng, P, 3);
        let m = random_bimodule(&mut rng, &s, &r, 3);
        let t = build_triangular(&s, &r, &m).unwrap();
        // random two-term complex over the gluing via a cone
        let reg = ModuleRep::regular(t.lambda.clone());
        let x = Complex::from_module(reg, 0);
        let id = ChainMap::identity(&x);
        let (c, _, _) = cone(&id);
        let tc = TripleComplex::from_lambda_complex(&t, &c).unwrap();
        let back = tc.to_lambda_complex(&t);
        for (n, d) in c.homology_dims() {
            assert_eq!(back.homology_at(n).module.dim, d);
        }
        assert_eq!(back.term_dim(-1), c.term_dim(-1));
        assert_eq!(back.term_dim(0), c.term_dim(0));
    }
}
