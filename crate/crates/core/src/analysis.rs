//! Structure analysis of a finite-dimensional algebra: radical, semisimple
//! quotient, a complete set of primitive orthogonal idempotents, block data,
//! and the derived invariants built on them.
//!
//! The radical is the kernel of the trace form `(x, y) -> tr(L_{xy})`, valid
//! for `p > dim A`. Idempotents are found in the semisimple quotient by
//! Frobenius fixed-space splitting (the fixed space of `x -> x^p` on a
//! commutative subalgebra has one dimension per block) and lifted along the
//! nilpotent radical by Newton iteration. The search for a splitting element
//! in a noncommutative corner is seeded-random, but every produced set is
//! verified exactly: pairwise orthogonal, summing to one, with field
//! corners.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::error::AnalysisError;
use crate::fp::Fp;
use crate::intmat::IntMat;
use crate::mat::{express_rows, Mat, QuotientSpace};

pub const DEFAULT_SEED: u64 = 0;

#[derive(Clone, Debug)]
pub struct AlgebraAnalysis {
    pub algebra: Arc<Algebra>,
    /// Rows: basis of the Jacobson radical.
    pub radical: Mat,
    pub semisimple_dim: usize,
    /// Complete set of primitive orthogonal idempotents (coefficient
    /// vectors in the algebra).
    pub idempotents: Vec<Vec<u64>>,
    /// Block index of each idempotent.
    pub block_of: Vec<usize>,
    pub block_count: usize,
    /// True when every corner `f A f mod J` is one-dimensional (the field is
    /// splitting for this algebra).
    pub splitting: bool,
    pub certified: bool,
    pub notes: Vec<String>,
}

impl AlgebraAnalysis {
    /// One representative idempotent per block (the Cartan ordering).
    pub fn block_representatives(&self) -> Vec<usize> {
        let mut reps = Vec::new();
        for b in 0..self.block_count {
            if let Some(i) = self.block_of.iter().position(|&x| x == b) {
                reps.push(i);
            }
        }
        reps
    }
}

/// Element arithmetic helpers on an algebra.
struct Ambient {
    alg: Algebra,
}

impl Ambient {
    fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        self.alg.mul(x, y)
    }

    fn pow(&self, x: &[u64], mut e: u64) -> Vec<u64> {
        let mut base = x.to_vec();
        let mut acc = self.alg.unit.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn add_scaled(&self, x: &[u64], y: &[u64], c: u64) -> Vec<u64> {
        let p = self.alg.prime;
        x.iter().zip(y).map(|(&a, &b)| (a + c * b) % p).collect()
    }

    fn scale(&self, x: &[u64], c: u64) -> Vec<u64> {
        let p = self.alg.prime;
        x.iter().map(|&a| a * c % p).collect()
    }

    fn is_zero(&self, x: &[u64]) -> bool {
        x.iter().all(|&a| a == 0)
    }
}

fn rows_of(v: &[Vec<u64>], cols: usize, p: u64) -> Mat {
    let mut m = Mat::zeros(v.len(), cols, p);
    for (i, r) in v.iter().enumerate() {
        for (j, &x) in r.iter().enumerate() {
            m.set(i, j, x);
        }
    }
    m
}

/// A commutative subalgebra, by basis rows in ambient coordinates.
struct CommSub {
    rows: Mat,
}

impl CommSub {
    /// Basis (rows in ambient coordinates) of the fixed space of `x -> x^p`.
    /// Its dimension is the number of primitive idempotents below the unit
    /// of the subalgebra.
    fn frobenius_fixed(&self, amb: &Ambient) -> Mat {
        let p = amb.alg.prime;
        let k = self.rows.rows;
        let mut frob = Mat::zeros(k, k, p);
        for i in 0..k {
            let xi = self.rows.row(i).to_vec();
            let xp = amb.pow(&xi, p);
            let coords = express_rows(&self.rows, &rows_of(&[xp], self.rows.cols, p))
                .expect("Frobenius preserves the subalgebra");
            for j in 0..k {
                frob.set(i, j, coords.get(0, j));
            }
        }
        let diff = frob.sub(&Mat::identity(k, p));
        let fixed_coords = diff.left_kernel().row_basis();
        fixed_coords.matmul(&self.rows)
    }
}

fn poly_eval(mu: &[u64], a: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for &c in mu.iter().rev() {
        acc = (acc * a + c) % p;
    }
    acc
}

/// Minimal polynomial of `b` in the corner algebra with unit `f`
/// (coefficients low degree first, monic).
fn min_poly_in_corner(amb: &Ambient, f: &[u64], b: &[u64]) -> Vec<u64> {
    let n = amb.alg.dim;
    let p = amb.alg.prime;
    let mut powers: Vec<Vec<u64>> = vec![f.to_vec()];
    loop {
        let stacked = rows_of(&powers, n, p);
        let next = amb.mul(powers.last().unwrap(), b);
        if let Some(c) = express_rows(&stacked, &rows_of(&[next.clone()], n, p)) {
            let k = powers.len();
            let mut mu = vec![0u64; k + 1];
            for i in 0..k {
                mu[i] = (p - c.get(0, i) % p) % p;
            }
            mu[k] = 1;
            return mu;
        }
        powers.push(next);
    }
}

/// Splits `f` along a fixed-space element `b` of its corner whose minimal
/// polynomial has at least two (distinct, linear) roots. The refinement is
/// verified exactly before being returned.
fn split_by_element(amb: &Ambient, f: &[u64], b: &[u64]) -> Option<Vec<Vec<u64>>> {
    let p = amb.alg.prime;
    let mu = min_poly_in_corner(amb, f, b);
    let mut roots = Vec::new();
    for a in 0..p {
        if poly_eval(&mu, a, p) == 0 {
            roots.push(a);
        }
    }
    if roots.len() < 2 || roots.len() != mu.len() - 1 {
        return None;
    }
    let mut parts = Vec::new();
    for (i, &ai) in roots.iter().enumerate() {
        // Lagrange projector onto the a_i eigenspace inside f A f
        let mut eps = f.to_vec();
        for (j, &aj) in roots.iter().enumerate() {
            if i == j {
                continue;
            }
            // eps *= (b - a_j f) / (a_i - a_j)
            let factor = amb.add_scaled(b, f, (p - aj % p) % p);
            let denom = Fp::new(ai as i64 - aj as i64, p).inverse().unwrap().value;
            eps = amb.scale(&amb.mul(&eps, &factor), denom);
        }
        if amb.is_zero(&eps) {
            return None;
        }
        parts.push(eps);
    }
    for i in 0..parts.len() {
        for j in 0..parts.len() {
            let prod = amb.mul(&parts[i], &parts[j]);
            let expected = if i == j { parts[i].clone() } else { vec![0; parts[i].len()] };
            if prod != expected {
                return None;
            }
        }
    }
    let mut sum = vec![0u64; f.len()];
    for part in &parts {
        sum = amb.add_scaled(&sum, part, 1);
    }
    if sum != *f {
        return None;
    }
    Some(parts)
}

/// Basis rows of the corner `f A f`.
fn corner_rows(amb: &Ambient, f: &[u64]) -> Mat {
    let n = amb.alg.dim;
    let p = amb.alg.prime;
    let mut rows = Mat::zeros(n, n, p);
    for i in 0..n {
        let e = amb.alg.basis_element(i);
        let v = amb.mul(&amb.mul(f, &e), f);
        for j in 0..n {
            rows.set(i, j, v[j]);
        }
    }
    rows.row_basis()
}

fn corner_is_commutative(amb: &Ambient, rows: &Mat) -> bool {
    for i in 0..rows.rows {
        for j in i + 1..rows.rows {
            let x = rows.row(i).to_vec();
            let y = rows.row(j).to_vec();
            if amb.mul(&x, &y) != amb.mul(&y, &x) {
                return false;
            }
        }
    }
    true
}

/// The commutative subalgebra `F_p[b]` inside the corner with unit `f`.
fn generated_commutative(amb: &Ambient, f: &[u64], b: &[u64]) -> CommSub {
    let n = amb.alg.dim;
    let p = amb.alg.prime;
    let mut powers: Vec<Vec<u64>> = vec![f.to_vec()];
    loop {
        let stacked = rows_of(&powers, n, p);
        let next = amb.mul(powers.last().unwrap(), b);
        if express_rows(&stacked, &rows_of(&[next.clone()], n, p)).is_some() {
            return CommSub { rows: stacked.row_basis() };
        }
        powers.push(next);
    }
}

/// Tries to refine `f` using the Frobenius fixed space of `F_p[b]`.
fn try_split_via(amb: &Ambient, f: &[u64], b: &[u64]) -> Option<Vec<Vec<u64>>> {
    let sub = generated_commutative(amb, f, b);
    if sub.rows.rows < 2 {
        return None;
    }
    let fixed = sub.frobenius_fixed(amb);
    if fixed.rows < 2 {
        return None;
    }
    let f_row = rows_of(&[f.to_vec()], amb.alg.dim, amb.alg.prime);
    for i in 0..fixed.rows {
        let cand = fixed.row(i).to_vec();
        let stacked = f_row.vstack(&rows_of(&[cand.clone()], amb.alg.dim, amb.alg.prime));
        if stacked.rank() == 2 {
            if let Some(parts) = split_by_element(amb, f, &cand) {
                return Some(parts);
            }
        }
    }
    None
}

/// Decomposes the unit of a semisimple algebra into primitive orthogonal
/// idempotents.
fn primitive_idempotents_semisimple(
    amb: &Ambient,
    seed: u64,
) -> Result<Vec<Vec<u64>>, AnalysisError> {
    let p = amb.alg.prime;
    let n = amb.alg.dim;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut work: Vec<Vec<u64>> = vec![amb.alg.unit.clone()];
    let mut done: Vec<Vec<u64>> = Vec::new();
    while let Some(f) = work.pop() {
        let rows = corner_rows(amb, &f);
        if rows.rows == 1 {
            done.push(f);
            continue;
        }
        if corner_is_commutative(amb, &rows) {
            let sub = CommSub { rows: rows.clone() };
            if sub.frobenius_fixed(amb).rows == 1 {
                // commutative with a single block: a field corner
                done.push(f);
                continue;
            }
        }
        // splitting element search: corner basis, pairwise sums, seeded random
        let mut split: Option<Vec<Vec<u64>>> = None;
        'search: {
            for i in 0..rows.rows {
                if let Some(s) = try_split_via(amb, &f, &rows.row(i).to_vec()) {
                    split = Some(s);
                    break 'search;
                }
            }
            for i in 0..rows.rows {
                for j in i + 1..rows.rows {
                    let cand = amb.add_scaled(&rows.row(i).to_vec(), &rows.row(j).to_vec(), 1);
                    if let Some(s) = try_split_via(amb, &f, &cand) {
                        split = Some(s);
                        break 'search;
                    }
                }
            }
            for _ in 0..256 {
                let mut cand = vec![0u64; n];
                for i in 0..rows.rows {
                    let c = rng.random_range(0..p);
                    cand = amb.add_scaled(&cand, &rows.row(i).to_vec(), c);
                }
                if let Some(s) = try_split_via(amb, &f, &cand) {
                    split = Some(s);
                    break 'search;
                }
            }
        }
        match split {
            Some(parts) => work.extend(parts),
            None => return Err(AnalysisError::SplitSearchExhausted { tries: 256 }),
        }
    }
    Ok(done)
}

/// Full analysis. Requires `p > dim A` for the trace-form radical.
pub fn analyze(algebra: &Arc<Algebra>, seed: u64) -> Result<AlgebraAnalysis, AnalysisError> {
    let p = algebra.prime;
    let n = algebra.dim;
    if p <= n as u64 {
        return Err(AnalysisError::IdempotentsUnavailable { p, dim: n });
    }
    if n == 0 {
        return Ok(AlgebraAnalysis {
            algebra: algebra.clone(),
            radical: Mat::zeros(0, 0, p),
            semisimple_dim: 0,
            idempotents: vec![],
            block_of: vec![],
            block_count: 0,
            splitting: true,
            certified: true,
            notes: vec![],
        });
    }

    // radical = kernel of the trace form (x, y) -> tr(L_{xy})
    let traces = algebra.left_mult_traces();
    let gram = Mat::from_fn(n, n, p, |i, j| {
        let mut t = 0u64;
        for (k, &tk) in traces.iter().enumerate() {
            t = (t + algebra.sc(i, j, k) * tk) % p;
        }
        t
    });
    let radical = gram.left_kernel().row_basis();

    // semisimple quotient
    let q = QuotientSpace::new(n, &radical, p);
    let ss_dim = q.dim;
    let mut ss_sc = vec![0u64; ss_dim * ss_dim * ss_dim];
    for i in 0..ss_dim {
        let xi = q.lift.row(i).to_vec();
        for j in 0..ss_dim {
            let xj = q.lift.row(j).to_vec();
            let prod = algebra.mul(&xi, &xj);
            let bar = rows_of(&[prod], n, p).matmul(&q.proj);
            for k in 0..ss_dim {
                ss_sc[(i * ss_dim + j) * ss_dim + k] = bar.get(0, k);
            }
        }
    }
    let ss_unit = rows_of(&[algebra.unit.clone()], n, p).matmul(&q.proj).row(0).to_vec();
    let quotient = Algebra::new(p, ss_dim, ss_sc, ss_unit).expect("quotient shape");
    debug_assert!(quotient.validate().is_ok());
    let amb = Ambient { alg: quotient };

    // primitive idempotents of the quotient, then Newton lifts
    let bar_idempotents = primitive_idempotents_semisimple(&amb, seed)?;
    let mut idempotents: Vec<Vec<u64>> = Vec::new();
    let mut remaining = algebra.unit.clone();
    for (pos, bar) in bar_idempotents.iter().enumerate() {
        if pos + 1 == bar_idempotents.len() {
            idempotents.push(remaining.clone());
            break;
        }
        let lift0 = rows_of(&[bar.clone()], ss_dim, p).matmul(&q.lift).row(0).to_vec();
        let mut y = algebra.mul(&algebra.mul(&remaining, &lift0), &remaining);
        let mut converged = false;
        for _ in 0..64 {
            let y2 = algebra.mul(&y, &y);
            if y2 == y {
                converged = true;
                break;
            }
            // y <- 3y^2 - 2y^3
            let y3 = algebra.mul(&y2, &y);
            let mut next = vec![0u64; n];
            for k in 0..n {
                next[k] = (3 * y2[k] % p + (p - 2 * y3[k] % p) % p) % p;
            }
            y = next;
        }
        assert!(converged, "idempotent lifting did not converge");
        idempotents.push(y.clone());
        for k in 0..n {
            remaining[k] = (remaining[k] + p - y[k]) % p;
        }
    }
    if idempotents.is_empty() {
        idempotents.push(algebra.unit.clone());
    }

    // exact verification
    let mut certified = true;
    let mut notes = Vec::new();
    let mut sum = vec![0u64; n];
    for e in &idempotents {
        for k in 0..n {
            sum[k] = (sum[k] + e[k]) % p;
        }
    }
    if sum != algebra.unit {
        certified = false;
        notes.push("idempotent sum differs from the unit".into());
    }
    for i in 0..idempotents.len() {
        for j in 0..idempotents.len() {
            let prod = algebra.mul(&idempotents[i], &idempotents[j]);
            let expect = if i == j { idempotents[i].clone() } else { vec![0; n] };
            if prod != expect {
                certified = false;
                notes.push(format!("idempotents {i} and {j} are not orthogonal"));
            }
        }
    }

    // blocks: primitive idempotents of the centre of the quotient
    let center_rows = amb.alg.center_basis();
    let centrals = central_primitives(&amb, &center_rows);
    let block_count = centrals.len();
    let mut block_of = Vec::with_capacity(idempotents.len());
    for e in &idempotents {
        let bar = rows_of(&[e.clone()], n, p).matmul(&q.proj).row(0).to_vec();
        let mut block = usize::MAX;
        for (b, z) in centrals.iter().enumerate() {
            if !amb.is_zero(&amb.mul(&bar, z)) {
                block = b;
                break;
            }
        }
        assert!(block != usize::MAX, "every idempotent lies in a block");
        block_of.push(block);
    }

    // splitting field check: all quotient corners of the primitives are F_p
    let mut splitting = true;
    for e in &idempotents {
        let bar = rows_of(&[e.clone()], n, p).matmul(&q.proj).row(0).to_vec();
        if corner_rows(&amb, &bar).rows != 1 {
            splitting = false;
        }
    }
    if !splitting {
        notes.push(
            "non-splitting corner: block counts may under-count simples over extensions".into(),
        );
    }

    Ok(AlgebraAnalysis {
        algebra: algebra.clone(),
        radical,
        semisimple_dim: ss_dim,
        idempotents,
        block_of,
        block_count,
        splitting,
        certified,
        notes,
    })
}

/// Primitive idempotents of the centre by the same Frobenius splitting.
/// A commutative corner that resists splitting is a field extension of F_p
/// and therefore already primitive.
fn central_primitives(amb: &Ambient, rows: &Mat) -> Vec<Vec<u64>> {
    let mut work = vec![amb.alg.unit.clone()];
    let mut done = Vec::new();
    'outer: while let Some(f) = work.pop() {
        let fz: Vec<Vec<u64>> = (0..rows.rows)
            .map(|i| amb.mul(&f, &rows.row(i).to_vec()))
            .collect();
        let fz_rows = rows_of(&fz, amb.alg.dim, amb.alg.prime).row_basis();
        if fz_rows.rows == 1 {
            done.push(f);
            continue;
        }
        for i in 0..fz_rows.rows {
            if let Some(parts) = try_split_via(amb, &f, &fz_rows.row(i).to_vec()) {
                work.extend(parts);
                continue 'outer;
            }
        }
        done.push(f);
    }
    done
}

/// Derived invariants: the F_p-Cartan matrix over block representatives
/// (`C[i][j] = dim e_i A e_j`), its Smith normal form and determinant, and
/// the centre dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedInvariants {
    pub cartan: Vec<Vec<i64>>,
    pub cartan_snf: Vec<BigInt>,
    pub cartan_det: BigInt,
    pub center_dim: usize,
}

pub fn derived_invariants(analysis: &AlgebraAnalysis) -> DerivedInvariants {
    let a = &analysis.algebra;
    let reps = analysis.block_representatives();
    let t = reps.len();
    let mut cartan = vec![vec![0i64; t]; t];
    for (ri, &i) in reps.iter().enumerate() {
        let li = a.left_mult(&analysis.idempotents[i]);
        for (rj, &j) in reps.iter().enumerate() {
            let rjm = a.right_mult(&analysis.idempotents[j]);
            cartan[ri][rj] = li.matmul(&rjm).rank() as i64;
        }
    }
    let flat: Vec<i64> = cartan.iter().flatten().copied().collect();
    let im = IntMat::from_i64(t, t, &flat);
    DerivedInvariants {
        cartan_snf: im.snf_diagonal(),
        cartan_det: im.det(),
        cartan,
        center_dim: a.center_basis().rows,
    }
}
