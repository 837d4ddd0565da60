//! Best-effort randomized search for an explicit algebra isomorphism.
//!
//! A found map is verified exactly (unital, multiplicative, bijective)
//! before being returned, so a `Some` answer is a certificate. A `None`
//! answer is inconclusive by design: the search samples Peirce-adapted
//! linear maps and succeeds with good probability on split basic algebras
//! with small radical depth, which covers the endomorphism algebras this
//! crate produces at desk scale.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::analysis::analyze;
use crate::mat::{express_rows, Mat};

/// Verifies that `theta` (rows: images of the basis of `a`) is an algebra
/// isomorphism `a -> b`.
pub fn verify_iso(a: &Algebra, b: &Algebra, theta: &Mat) -> bool {
    if a.dim != b.dim || theta.rows != a.dim || theta.cols != b.dim {
        return false;
    }
    if theta.rank() != a.dim {
        return false;
    }
    let unit_row = Mat::from_fn(1, a.dim, a.prime, |_, j| a.unit[j]);
    if unit_row.matmul(theta).row(0).to_vec() != b.unit {
        return false;
    }
    for i in 0..a.dim {
        for j in 0..a.dim {
            let lhs = {
                let prod = Mat::from_fn(1, a.dim, a.prime, |_, k| a.sc(i, j, k));
                prod.matmul(theta).row(0).to_vec()
            };
            let rhs = b.mul(&theta.row(i).to_vec(), &theta.row(j).to_vec());
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

fn peirce_rows(alg: &Algebra, idems: &[Vec<u64>], i: usize, j: usize) -> Mat {
    let li = alg.left_mult(&idems[i]);
    let rj = alg.right_mult(&idems[j]);
    li.matmul(&rj).row_basis()
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize, p: u64) -> Mat {
    loop {
        let m = Mat::from_fn(n, n, p, |_, _| rng.random_range(0..p));
        if m.rank() == n {
            return m;
        }
    }
}

/// Searches for an isomorphism `a -> b`, returned as the matrix of basis
/// images. Deterministic given the seed; `None` is inconclusive.
pub fn iso_search(
    a: &Arc<Algebra>,
    b: &Arc<Algebra>,
    seed: u64,
    tries: usize,
) -> Option<Mat> {
    if a.dim != b.dim {
        return None;
    }
    if a.dim == 0 {
        return Some(Mat::zeros(0, 0, a.prime));
    }
    let p = a.prime;
    let an_a = analyze(a, seed).ok()?;
    let an_b = analyze(b, seed).ok()?;
    if an_a.idempotents.len() != an_b.idempotents.len()
        || an_a.radical.rows != an_b.radical.rows
        || an_a.block_count != an_b.block_count
    {
        return None;
    }
    let k = an_a.idempotents.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x15015);
    for _ in 0..tries {
        // conjugate the idempotent set of b by an invertible element
        let v: Vec<u64> = (0..b.dim).map(|_| rng.random_range(0..p)).collect();
        let lv = b.left_mult(&v);
        if lv.rank() != b.dim {
            continue;
        }
        let unit = Mat::from_fn(1, b.dim, p, |_, j| b.unit[j]);
        let v_inv = match lv.transpose().solve(&unit.transpose()) {
            Some(m) => m.transpose().row(0).to_vec(),
            None => continue,
        };
        let idems_b: Vec<Vec<u64>> = an_b
            .idempotents
            .iter()
            .map(|g| b.mul(&b.mul(&v_inv, g), &v))
            .collect();
        let mut perm: Vec<usize> = (0..k).collect();
        perm.shuffle(&mut rng);
        // Peirce piece dimensions must match under the permutation
        let mut piece_rows_a = Vec::new();
        let mut piece_rows_b = Vec::new();
        let mut compatible = true;
        for i in 0..k {
            for j in 0..k {
                let pa = peirce_rows(a, &an_a.idempotents, i, j);
                let pb = peirce_rows(b, &idems_b, perm[i], perm[j]);
                if pa.rows != pb.rows {
                    compatible = false;
                    break;
                }
                piece_rows_a.push(pa);
                piece_rows_b.push(pb);
            }
            if !compatible {
                break;
            }
        }
        if !compatible {
            continue;
        }
        // assemble theta: on each corner pin f_i -> g_{perm(i)}, elsewhere a
        // random invertible piece map
        let mut domain = Mat::zeros(0, a.dim, p);
        let mut images = Mat::zeros(0, b.dim, p);
        for i in 0..k {
            for j in 0..k {
                let pa = &piece_rows_a[i * k + j];
                let pb = &piece_rows_b[i * k + j];
                if pa.rows == 0 {
                    continue;
                }
                if i == j {
                    // basis of the corner with the idempotent first, on both
                    // sides, so the idempotent maps to the idempotent
                    let fa = Mat::from_fn(1, a.dim, p, |_, c| an_a.idempotents[i][c]);
                    let fb = Mat::from_fn(1, b.dim, p, |_, c| idems_b[perm[i]][c]);
                    let mut dom_piece = fa.clone();
                    for r in 0..pa.rows {
                        let cand = pa.select_rows(&[r]);
                        if dom_piece.vstack(&cand).rank() > dom_piece.rows {
                            dom_piece = dom_piece.vstack(&cand);
                        }
                    }
                    let mut img_piece = fb.clone();
                    for r in 0..pb.rows {
                        let cand = pb.select_rows(&[r]);
                        if img_piece.vstack(&cand).rank() > img_piece.rows {
                            img_piece = img_piece.vstack(&cand);
                        }
                    }
                    if dom_piece.rows != img_piece.rows {
                        continue;
                    }
                    // fix the idempotent, randomize the complement
                    let mut g = Mat::identity(dom_piece.rows, p);
                    if dom_piece.rows > 1 {
                        let sub = random_invertible(&mut rng, dom_piece.rows - 1, p);
                        g.paste(1, 1, &sub);
                    }
                    domain = domain.vstack(&dom_piece);
                    images = images.vstack(&g.matmul(&img_piece));
                } else {
                    let g = random_invertible(&mut rng, pa.rows, p);
                    domain = domain.vstack(pa);
                    images = images.vstack(&g.matmul(pb));
                }
            }
        }
        if domain.rows != a.dim || domain.rank() != a.dim {
            continue;
        }
        // theta: basis of a expressed in the domain rows, then mapped
        let coords = match express_rows(&domain, &Mat::identity(a.dim, p)) {
            Some(c) => c,
            None => continue,
        };
        let theta = coords.matmul(&images);
        if verify_iso(a, b, &theta) {
            return Some(theta);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::DEFAULT_SEED;
    use crate::fp::DEFAULT_PRIME;
    use crate::module::{end_algebra, ModuleRep};
    use crate::samples::{ka2, projective_at_vertex, simple_at_vertex};

    const P: u64 = DEFAULT_PRIME;

    #[test]
    fn identity_iso_found() {
        let pa = ka2(P);
        let theta = iso_search(&pa.algebra, &pa.algebra, DEFAULT_SEED, 64).unwrap();
        assert!(verify_iso(&pa.algebra, &pa.algebra, &theta));
    }

    #[test]
    fn opposite_of_a2_is_isomorphic() {
        // A_2 with reversed orientation is isomorphic to A_2
        let pa = ka2(P);
        let opp = Arc::new(pa.algebra.opposite());
        let theta = iso_search(&pa.algebra, &opp, DEFAULT_SEED, 128).unwrap();
        assert!(verify_iso(&pa.algebra, &opp, &theta));
    }

    #[test]
    fn apr_endomorphism_algebra_is_a2() {
        let pa = ka2(P);
        let t = projective_at_vertex(&pa, 0).direct_sum(&simple_at_vertex(&pa, 0));
        let (e, _) = end_algebra(&t).unwrap();
        let theta = iso_search(&e, &pa.algebra, DEFAULT_SEED, 128);
        assert!(theta.is_some(), "End(P_1 + S_1) should be found isomorphic to kA_2");
    }

    #[test]
    fn different_dims_rejected() {
        let pa = ka2(P);
        let k = Algebra::field(P);
        assert!(iso_search(&pa.algebra, &k, DEFAULT_SEED, 8).is_none());
    }

    #[test]
    fn field_and_dual_numbers_distinguished() {
        let d = crate::samples::dual_numbers(P).algebra;
        let kk = Arc::new(Algebra::field(P).product(&Algebra::field(P)).unwrap());
        assert!(iso_search(&d, &kk, DEFAULT_SEED, 32).is_none());
        let m = ModuleRep::regular(d.clone());
        let _ = m;
    }
}
