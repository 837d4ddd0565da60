//! Dualising bimodules of a finite-dimensional algebra: the linear dual
//! `DA`, the inverse dualising complex `RHom_{A^e}(A, A^e)`, and its
//! relative variant along a (possibly non-unital) algebra map `B -> A`.
//!
//! The relative counit is `Ae ⊗_B eA -> A` with `e = f(1_B)`; for `B = 0`
//! the source vanishes, the cofibre is `A` itself and the relative answer
//! reproduces the absolute one.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::complex::Complex;
use crate::error::{EngineError, Error};
use crate::homalg::{
    hom_into_regular, projective_resolution, ResolutionContext, Strategy,
};
use crate::mat::{express_rows, Mat};
use crate::module::{tensor_bimodule, BimoduleRep, ModuleRep};

#[derive(Clone, Debug)]
pub struct DualisingReport {
    pub algebra_dim: usize,
    pub da_dim: usize,
    /// Properness is automatic for finite-dimensional algebras.
    pub proper: bool,
    pub smooth_within_bound: bool,
    pub resolution_term_dims: Vec<(i32, usize)>,
    pub omega_term_dims: Vec<(i32, usize)>,
    pub omega_homology: Vec<(i32, usize)>,
    pub omega_euler: i64,
    pub relative: Option<RelativeReport>,
    pub d_max: usize,
}

#[derive(Clone, Debug)]
pub struct RelativeReport {
    pub base_dim: usize,
    pub counit_source_dim: usize,
    pub cofibre_term_dims: Vec<(i32, usize)>,
    pub omega_rel_homology: Vec<(i32, usize)>,
    /// Whether the relative homology dims agree degreewise with the
    /// absolute ones (expected exactly when `B = 0`).
    pub reproduces_absolute: bool,
}

/// `A e` as an (A, B)-bimodule for an idempotent `e = f(1_B)`.
fn left_corner_bimodule(
    a: &Arc<Algebra>,
    b: &Arc<Algebra>,
    f: &Mat,
    e: &[u64],
) -> BimoduleRep {
    let rows = a.right_mult(e).row_basis();
    let left = (0..a.dim)
        .map(|i| {
            let lop = a.left_mult(&a.basis_element(i));
            express_rows(&rows, &rows.matmul(&lop))
                .expect("Ae is stable under left multiplication")
                .transpose()
        })
        .collect();
    let right = (0..b.dim)
        .map(|j| {
            let fb = f.row(j).to_vec();
            let rop = a.right_mult(&fb);
            express_rows(&rows, &rows.matmul(&rop))
                .expect("Ae is stable under right multiplication by f(B)")
        })
        .collect();
    BimoduleRep {
        left_algebra: a.clone(),
        right_algebra: b.clone(),
        dim: rows.rows,
        left,
        right,
    }
}

/// `e A` as a (B, A)-bimodule.
fn right_corner_bimodule(
    a: &Arc<Algebra>,
    b: &Arc<Algebra>,
    f: &Mat,
    e: &[u64],
) -> BimoduleRep {
    let rows = a.left_mult(e).row_basis();
    let right = (0..a.dim)
        .map(|i| {
            let rop = a.right_mult(&a.basis_element(i));
            express_rows(&rows, &rows.matmul(&rop))
                .expect("eA is stable under right multiplication")
        })
        .collect();
    let left = (0..b.dim)
        .map(|j| {
            let fb = f.row(j).to_vec();
            let lop = a.left_mult(&fb);
            express_rows(&rows, &rows.matmul(&lop))
                .expect("eA is stable under left multiplication by f(B)")
                .transpose()
        })
        .collect();
    BimoduleRep {
        left_algebra: b.clone(),
        right_algebra: a.clone(),
        dim: rows.rows,
        left,
        right,
    }
}

/// A right module over `(A^e)^op` (a left `A^e`-module, as produced by
/// `hom_into_regular`) converted back to an (A,A)-bimodule.
pub fn env_op_module_to_bimodule(a: &Arc<Algebra>, w: &ModuleRep) -> BimoduleRep {
    let n = a.dim;
    assert_eq!(w.algebra.dim, n * n);
    let coords_left = |i: usize| -> Vec<u64> {
        // e_i (x) 1^op in the enveloping basis (i, j) -> i n + j
        let mut v = vec![0u64; n * n];
        for (j, &u) in a.unit.iter().enumerate() {
            v[i * n + j] = u;
        }
        v
    };
    let coords_right = |j: usize| -> Vec<u64> {
        let mut v = vec![0u64; n * n];
        for (i, &u) in a.unit.iter().enumerate() {
            v[i * n + j] = u;
        }
        v
    };
    let left = (0..n).map(|i| w.action_of(&coords_left(i)).transpose()).collect();
    let right = (0..n).map(|j| w.action_of(&coords_right(j))).collect();
    BimoduleRep {
        left_algebra: a.clone(),
        right_algebra: a.clone(),
        dim: w.dim,
        left,
        right,
    }
}

/// Checks that the matrix rows define a multiplicative (not necessarily
/// unital) algebra map `B -> A` and returns `e = f(1_B)`.
fn validate_algebra_map(b: &Arc<Algebra>, a: &Arc<Algebra>, f: &Mat) -> Result<Vec<u64>, Error> {
    if f.rows != b.dim || f.cols != a.dim {
        return Err(Error::Engine(EngineError::BadInterface(format!(
            "map matrix is {}x{}, expected {}x{}",
            f.rows, f.cols, b.dim, a.dim
        ))));
    }
    for i in 0..b.dim {
        for j in 0..b.dim {
            let lhs = a.mul(&f.row(i).to_vec(), &f.row(j).to_vec());
            let rhs_row = Mat::from_fn(1, b.dim, a.prime, |_, k| b.sc(i, j, k)).matmul(f);
            if lhs != rhs_row.row(0).to_vec() {
                return Err(Error::Engine(EngineError::BadInterface(format!(
                    "map is not multiplicative at basis pair ({i}, {j})"
                ))));
            }
        }
    }
    let e = if b.dim == 0 {
        vec![0u64; a.dim]
    } else {
        Mat::from_fn(1, b.dim, a.prime, |_, k| b.unit[k]).matmul(f).row(0).to_vec()
    };
    if a.mul(&e, &e) != e {
        return Err(Error::Engine(EngineError::BadInterface(
            "image of the base unit is not idempotent".into(),
        )));
    }
    Ok(e)
}

/// Computes `DA`, the inverse dualising complex, and optionally the
/// relative variant along `f: B -> A`.
pub fn dualising(
    a: &Arc<Algebra>,
    relative: Option<(&Arc<Algebra>, &Mat)>,
    d_max: usize,
    seed: u64,
) -> Result<DualisingReport, Error> {
    let da = BimoduleRep::diagonal(a).dual();
    da.validate()?;
    let env = Arc::new(a.enveloping());
    let env_op = Arc::new(env.opposite());
    let ctx_env = ResolutionContext::new(&env, seed, Strategy::Minimal)?;
    let a_env = BimoduleRep::diagonal(a).as_right_enveloping_module(&env);
    let res = projective_resolution(
        &ctx_env,
        &Complex::from_module(a_env.clone(), 0),
        -(d_max as i32) - 1,
    );
    let resolution_term_dims: Vec<(i32, usize)> = (res.complex.lo..=res.complex.hi())
        .map(|n| (n, res.complex.term_dim(n)))
        .collect();
    let omega = hom_into_regular(&ctx_env, &res, &env_op);
    let omega_term_dims: Vec<(i32, usize)> =
        (omega.lo..=omega.hi()).map(|n| (n, omega.term_dim(n))).collect();
    let omega_homology: Vec<(i32, usize)> = omega
        .homology_dims()
        .into_iter()
        .filter(|&(_, d)| d > 0)
        .collect();
    // sanity: homology carries well-defined two-sided actions
    for n in omega.lo..=omega.hi() {
        let h = omega.homology_at(n);
        if h.module.dim > 0 {
            let bim = env_op_module_to_bimodule(a, &h.module);
            debug_assert!(bim.validate().is_ok(), "homology bimodule at degree {n}");
        }
    }

    let relative_report = match relative {
        None => None,
        Some((b, f)) => {
            let e = validate_algebra_map(b, a, f)?;
            let x = left_corner_bimodule(a, b, f, &e);
            let y = right_corner_bimodule(a, b, f, &e);
            debug_assert!(x.validate().is_ok());
            debug_assert!(y.validate().is_ok());
            let (source, space) = tensor_bimodule(&x, &y)?;
            // counit: (x e) ⊗ (e y) -> x e y by multiplication
            let p = a.prime;
            let x_rows = a.right_mult(&e).row_basis();
            let y_rows = a.left_mult(&e).row_basis();
            let mut full = Mat::zeros(x.dim * y.dim, a.dim, p);
            for i in 0..x.dim {
                for j in 0..y.dim {
                    let prod = a.mul(&x_rows.row(i).to_vec(), &y_rows.row(j).to_vec());
                    for (k, &v) in prod.iter().enumerate() {
                        full.set(i * y.dim + j, k, v);
                    }
                }
            }
            let eps = space.lift.matmul(&full);
            debug_assert_eq!(space.proj.matmul(&eps), full, "counit is B-balanced");
            let source_env = source.as_right_enveloping_module(&env);
            let cofibre = if source_env.dim == 0 {
                Complex::from_module(a_env.clone(), 0)
            } else {
                Complex::new(env.clone(), -1, vec![source_env, a_env.clone()], vec![eps])
                    .map_err(|err| Error::Complex(err))?
            };
            let cof_dims: Vec<(i32, usize)> = (cofibre.lo..=cofibre.hi())
                .map(|n| (n, cofibre.term_dim(n)))
                .collect();
            let res_rel =
                projective_resolution(&ctx_env, &cofibre, -(d_max as i32) - 2);
            let omega_rel = hom_into_regular(&ctx_env, &res_rel, &env_op);
            let omega_rel_homology: Vec<(i32, usize)> = omega_rel
                .homology_dims()
                .into_iter()
                .filter(|&(_, d)| d > 0)
                .collect();
            let reproduces_absolute = omega_rel_homology == omega_homology;
            Some(RelativeReport {
                base_dim: b.dim,
                counit_source_dim: source.dim,
                cofibre_term_dims: cof_dims,
                omega_rel_homology,
                reproduces_absolute,
            })
        }
    };

    Ok(DualisingReport {
        algebra_dim: a.dim,
        da_dim: da.dim,
        proper: true,
        smooth_within_bound: res.terminated,
        resolution_term_dims,
        omega_term_dims,
        omega_homology,
        omega_euler: omega.euler_characteristic(),
        relative: relative_report,
        d_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::DEFAULT_SEED;
    use crate::fp::DEFAULT_PRIME;
    use crate::samples::{dual_numbers, ka2};

    const P: u64 = DEFAULT_PRIME;

    #[test]
    fn base_field_is_smooth_and_trivial() {
        let k = Algebra::field(P);
        let rep = dualising(&k, None, 4, DEFAULT_SEED).unwrap();
        assert_eq!(rep.da_dim, 1);
        assert!(rep.smooth_within_bound);
        assert_eq!(rep.omega_homology, vec![(0, 1)]);
        assert_eq!(rep.omega_euler, 1);
    }

    #[test]
    fn ka2_dualising_data() {
        let pa = ka2(P);
        let rep = dualising(&pa.algebra, None, 4, DEFAULT_SEED).unwrap();
        assert_eq!(rep.da_dim, 3);
        assert!(rep.smooth_within_bound);
        // minimal bimodule resolution: vertex term of dim 4, arrow term of
        // dim 1; the Hom'd complex has terms (4, 4) with Euler
        // characteristic 0
        assert_eq!(rep.resolution_term_dims, vec![(-1, 1), (0, 4)]);
        assert_eq!(rep.omega_term_dims, vec![(0, 4), (1, 4)]);
        assert_eq!(rep.omega_euler, 0);
        assert_eq!(rep.omega_homology, vec![(0, 1), (1, 1)]);
    }

    #[test]
    fn zero_base_reproduces_absolute() {
        let pa = ka2(P);
        let zero = Algebra::zero(P);
        let f = Mat::zeros(0, 3, P);
        let rep = dualising(&pa.algebra, Some((&zero, &f)), 4, DEFAULT_SEED).unwrap();
        let rel = rep.relative.unwrap();
        assert_eq!(rel.counit_source_dim, 0);
        assert!(rel.reproduces_absolute);
        assert_eq!(rel.omega_rel_homology, rep.omega_homology);
    }

    #[test]
    fn unital_base_field_inclusion() {
        // B = k included unitally: the counit A ⊗ A -> A is onto with
        // 6-dimensional kernel for kA_2
        let pa = ka2(P);
        let k = Algebra::field(P);
        let mut unit_row = Mat::zeros(1, 3, P);
        for (i, &u) in pa.algebra.unit.iter().enumerate() {
            unit_row.set(0, i, u);
        }
        let rep = dualising(&pa.algebra, Some((&k, &unit_row)), 3, DEFAULT_SEED).unwrap();
        let rel = rep.relative.unwrap();
        assert_eq!(rel.counit_source_dim, 9);
        assert!(!rel.reproduces_absolute);
    }

    #[test]
    fn non_multiplicative_map_rejected() {
        let pa = ka2(P);
        let k = Algebra::field(P);
        let bad = Mat::from_rows(1, 3, &[0, 0, 1], P);
        assert!(dualising(&pa.algebra, Some((&k, &bad)), 3, DEFAULT_SEED).is_err());
    }

    #[test]
    fn dual_numbers_not_smooth() {
        let a = dual_numbers(P).algebra;
        let rep = dualising(&a, None, 5, DEFAULT_SEED).unwrap();
        assert!(!rep.smooth_within_bound);
    }
}
