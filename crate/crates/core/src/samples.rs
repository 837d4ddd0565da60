//! Named small algebras and seeded random generators.
//!
//! The verification suites run over randomly generated instances; everything
//! here is deterministic given the seed, so reports built on top of these
//! generators reproduce byte for byte.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::mat::Mat;
use crate::module::{
    hom_space, idempotent_projective, BimoduleRep, ModuleRep,
};
use crate::quiver::{a2_quiver, path_algebra, PathAlgebra, PathTerm, Quiver, DEFAULT_LENGTH_CAP};

/// The path algebra of `0 -> 1` (upper triangular 2x2 matrices).
pub fn ka2(prime: u64) -> PathAlgebra {
    path_algebra(&a2_quiver(), &[], prime, DEFAULT_LENGTH_CAP).expect("A_2 is finite dimensional")
}

/// Dual numbers `F_p[x]/(x^2)` as a one-loop quiver algebra.
pub fn dual_numbers(prime: u64) -> PathAlgebra {
    let q = Quiver { vertices: 1, arrows: vec![(0, 0)] };
    let rel = vec![vec![PathTerm { coeff: 1, arrows: vec![0, 0] }]];
    path_algebra(&q, &rel, prime, DEFAULT_LENGTH_CAP).expect("dual numbers")
}

/// The indecomposable projective `e_v A` of a path algebra.
pub fn projective_at_vertex(pa: &PathAlgebra, v: usize) -> ModuleRep {
    let f = pa.algebra.basis_element(pa.vertex_idempotent[v]);
    idempotent_projective(&pa.algebra, &f).0
}

/// The simple top of `e_v A`: quotient by the span of all positive-length
/// path actions.
pub fn simple_at_vertex(pa: &PathAlgebra, v: usize) -> ModuleRep {
    let p_v = projective_at_vertex(pa, v);
    let prime = pa.algebra.prime;
    let mut rad = Mat::zeros(0, p_v.dim, prime);
    for g in 0..pa.algebra.dim {
        if pa.vertex_idempotent.contains(&g) {
            continue;
        }
        rad = rad.vstack(&p_v.actions[g]);
    }
    p_v.quotient(&rad.row_basis()).0
}

/// A quadratic non-residue mod p (p odd), by direct scan.
fn non_residue(prime: u64) -> u64 {
    (2..prime)
        .find(|&c| (1..prime).all(|y| y * y % prime != c))
        .expect("odd prime has a non-residue")
}

/// The field extension `F_{p^2} = F_p[x]/(x^2 - c)` with `c` a non-residue.
pub fn quadratic_field_extension(prime: u64) -> Arc<Algebra> {
    let c = non_residue(prime);
    let n = 2;
    let mut sc = vec![0u64; 8];
    let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
    sc[idx(0, 0, 0)] = 1;
    sc[idx(0, 1, 1)] = 1;
    sc[idx(1, 0, 1)] = 1;
    sc[idx(1, 1, 0)] = c;
    Arc::new(Algebra::new(prime, 2, sc, vec![1, 0]).unwrap())
}

/// A random valid algebra of dimension at most `max_dim`, drawn from a
/// toolbox of fields, local algebras, path algebras, matrix algebras,
/// products, opposites and triangular gluings.
pub fn random_algebra(rng: &mut ChaCha8Rng, prime: u64, max_dim: usize) -> Arc<Algebra> {
    let max_dim = max_dim.max(1);
    for _ in 0..32 {
        let pick = rng.random_range(0..8u32);
        let candidate: Arc<Algebra> = match pick {
            0 => Algebra::field(prime),
            1 if max_dim >= 2 => quadratic_field_extension(prime),
            2 if max_dim >= 2 => dual_numbers(prime).algebra,
            3 if max_dim >= 3 => ka2(prime).algebra,
            4 if max_dim >= 3 => {
                // k[x]/(x^3)
                let q = Quiver { vertices: 1, arrows: vec![(0, 0)] };
                let rel = vec![vec![PathTerm { coeff: 1, arrows: vec![0, 0, 0] }]];
                path_algebra(&q, &rel, prime, DEFAULT_LENGTH_CAP).unwrap().algebra
            }
            5 if max_dim >= 4 => Algebra::full_matrix(prime, 2),
            6 if max_dim >= 2 => {
                let a = random_algebra(rng, prime, max_dim / 2);
                let b = random_algebra(rng, prime, max_dim - a.dim.min(max_dim / 2));
                Arc::new(a.product(&b).unwrap())
            }
            7 => {
                let a = random_algebra(rng, prime, max_dim);
                Arc::new(a.opposite())
            }
            _ => Algebra::field(prime),
        };
        if candidate.dim <= max_dim {
            return candidate;
        }
    }
    Algebra::field(prime)
}

/// A random right module built from the regular representation by taking
/// closures of random rows and quotients.
pub fn random_module(rng: &mut ChaCha8Rng, algebra: &Arc<Algebra>, max_dim: usize) -> ModuleRep {
    let prime = algebra.prime;
    let copies = rng.random_range(1..=2usize);
    let mut x = ModuleRep::regular(algebra.clone());
    for _ in 1..copies {
        x = x.direct_sum(&ModuleRep::regular(algebra.clone()));
    }
    for _ in 0..rng.random_range(1..=2u32) {
        if x.dim == 0 {
            break;
        }
        let nrows = rng.random_range(1..=2usize);
        let seed = Mat::from_fn(nrows, x.dim, prime, |_, _| rng.random_range(0..prime));
        let span = x.span_closure(&seed);
        if rng.random_bool(0.5) {
            x = x.submodule(&span).0;
        } else {
            x = x.quotient(&span).0;
        }
    }
    while x.dim > max_dim {
        let seed = Mat::from_fn(1, x.dim, prime, |_, _| rng.random_range(0..prime));
        let span = x.span_closure(&seed);
        let next = if span.rows < x.dim && span.rows > 0 {
            x.submodule(&span).0
        } else {
            x.quotient(&span).0
        };
        if next.dim == x.dim {
            break;
        }
        x = next;
    }
    x
}

pub fn random_module_nonzero(
    rng: &mut ChaCha8Rng,
    algebra: &Arc<Algebra>,
    max_dim: usize,
) -> ModuleRep {
    for _ in 0..16 {
        let x = random_module(rng, algebra, max_dim);
        if x.dim > 0 {
            return x;
        }
    }
    ModuleRep::regular(algebra.clone())
}

/// A random (S,R)-bimodule, generated as a random right module over
/// `S^op ⊗ R` and converted back.
pub fn random_bimodule(
    rng: &mut ChaCha8Rng,
    s: &Arc<Algebra>,
    r: &Arc<Algebra>,
    max_dim: usize,
) -> BimoduleRep {
    let t = Arc::new(s.opposite().tensor(r).unwrap());
    let w = random_module(rng, &t, max_dim);
    let bim = BimoduleRep::from_right_tensor_module(s, r, &w);
    debug_assert!(bim.validate().is_ok());
    bim
}

/// A random element of `Hom(X, Y)` (zero when the Hom space vanishes).
pub fn random_hom(rng: &mut ChaCha8Rng, x: &ModuleRep, y: &ModuleRep) -> Mat {
    let hom = hom_space(x, y).expect("same algebra");
    let prime = x.algebra.prime;
    let coords: Vec<u64> = (0..hom.dim()).map(|_| rng.random_range(0..prime)).collect();
    hom.combo(&coords, prime)
}

/// A bimodule of the shape `V ⊗_k P` with `P` free as a right module; such
/// bimodules are projective on the right, so every gluing hypothesis holds
/// with `T = R` regular.
pub fn random_right_projective_bimodule(
    rng: &mut ChaCha8Rng,
    s: &Arc<Algebra>,
    r: &Arc<Algebra>,
    max_v_dim: usize,
) -> BimoduleRep {
    let prime = r.prime;
    let s_op = Arc::new(s.opposite());
    let mut v_op = random_module(rng, &s_op, max_v_dim);
    if v_op.dim == 0 {
        v_op = ModuleRep::regular(s_op.clone());
    }
    // left S-module structure from the right S^op-module
    let lambda_v: Vec<Mat> = v_op.actions.iter().map(Mat::transpose).collect();
    let p_free = ModuleRep::regular(r.clone());
    let idv = Mat::identity(v_op.dim, prime);
    let idp = Mat::identity(p_free.dim, prime);
    let left = (0..s.dim).map(|i| lambda_v[i].kron(&idp)).collect();
    let right = (0..r.dim).map(|j| idv.kron(&p_free.actions[j])).collect();
    let bim = BimoduleRep {
        left_algebra: s.clone(),
        right_algebra: r.clone(),
        dim: v_op.dim * p_free.dim,
        left,
        right,
    };
    debug_assert!(bim.validate().is_ok());
    bim
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::DEFAULT_PRIME;
    use rand::SeedableRng;

    const P: u64 = DEFAULT_PRIME;

    #[test]
    fn random_algebras_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..25 {
            let a = random_algebra(&mut rng, P, 5);
            assert!(a.dim >= 1 && a.dim <= 5);
            assert!(a.validate().is_ok(), "algebra of dim {} invalid", a.dim);
        }
    }

    #[test]
    fn random_modules_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..25 {
            let a = random_algebra(&mut rng, P, 4);
            let m = random_module(&mut rng, &a, 6);
            assert!(m.validate().is_ok());
        }
    }

    #[test]
    fn random_bimodules_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..15 {
            let s = random_algebra(&mut rng, P, 3);
            let r = random_algebra(&mut rng, P, 3);
            let m = random_bimodule(&mut rng, &s, &r, 5);
            assert!(m.validate().is_ok());
        }
    }

    #[test]
    fn right_projective_bimodules_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..10 {
            let s = random_algebra(&mut rng, P, 3);
            let r = random_algebra(&mut rng, P, 3);
            let m = random_right_projective_bimodule(&mut rng, &s, &r, 2);
            assert!(m.validate().is_ok());
        }
    }

    #[test]
    fn quadratic_extension_is_a_field_algebra() {
        let f = quadratic_field_extension(P);
        assert!(f.validate().is_ok());
        assert!(f.is_commutative());
    }
}
