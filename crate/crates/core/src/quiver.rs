//! Path algebras of finite quivers with admissible relations.
//!
//! Paths compose left to right: an arrow `a: i -> j` satisfies
//! `e_i · a = a = a · e_j`, so `e_i A e_j` is spanned by the paths from `i`
//! to `j`. The basis consists of the paths irreducible under a rewriting
//! system completed from the relations in the length-lexicographic order,
//! with a length cap to detect infinite dimensionality.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::QuiverError;
use crate::fp::Fp;

pub const DEFAULT_LENGTH_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: usize,
    /// `(source, target)` per arrow, 0-indexed.
    pub arrows: Vec<(usize, usize)>,
}

/// A path: its source vertex and the arrow indices traversed in order.
/// Trivial paths have an empty arrow list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub source: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    fn len(&self) -> usize {
        self.arrows.len()
    }
}

/// One summand of a relation: `coeff` times the path given by arrow indices.
#[derive(Clone, Debug)]
pub struct PathTerm {
    pub coeff: i64,
    pub arrows: Vec<usize>,
}

pub type Relation = Vec<PathTerm>;

/// Length-lexicographic order used everywhere below.
fn word_cmp(a: &Path, b: &Path) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.arrows.cmp(&b.arrows)).then_with(|| a.source.cmp(&b.source))
}

type Poly = BTreeMap<Path, u64>;

fn poly_insert(poly: &mut Poly, path: Path, coeff: u64, p: u64) {
    if coeff % p == 0 {
        return;
    }
    let e = poly.entry(path).or_insert(0);
    *e = (*e + coeff) % p;
    if *e == 0 {
        poly.retain(|_, &mut c| c != 0);
    }
}

fn leading(poly: &Poly) -> Option<(&Path, u64)> {
    poly.iter().max_by(|(a, _), (b, _)| word_cmp(a, b)).map(|(p, &c)| (p, c))
}

struct Rule {
    lead: Path,
    rhs: Poly,
}

struct Rewriter {
    quiver: Quiver,
    prime: u64,
    rules: Vec<Rule>,
}

impl Rewriter {
    fn path_target(&self, path: &Path) -> usize {
        path.arrows.last().map_or(path.source, |&a| self.quiver.arrows[a].1)
    }

    /// Concatenation `left · mid · right`. Rule right-hand sides share the
    /// lead's endpoints, so the splice always composes.
    fn concat3(&self, left: &Path, mid: &Poly, right: &[usize]) -> Poly {
        let mut out = Poly::new();
        for (m, &c) in mid {
            debug_assert_eq!(self.path_target(left), m.source);
            let mut arrows = left.arrows.clone();
            arrows.extend_from_slice(&m.arrows);
            arrows.extend_from_slice(right);
            poly_insert(&mut out, Path { source: left.source, arrows }, c, self.prime);
        }
        out
    }

    /// Fully reduces a polynomial modulo the rewriting rules. Terminates
    /// because the length-lex order is admissible.
    fn reduce(&self, mut poly: Poly) -> Poly {
        loop {
            let mut found: Option<(Path, u64, usize, usize)> = None;
            'search: for (mono, &coeff) in poly.iter() {
                for (ri, rule) in self.rules.iter().enumerate() {
                    let ll = rule.lead.arrows.len();
                    if mono.arrows.len() < ll {
                        continue;
                    }
                    for pos in 0..=mono.arrows.len() - ll {
                        if mono.arrows[pos..pos + ll] == rule.lead.arrows[..] {
                            found = Some((mono.clone(), coeff, ri, pos));
                            break 'search;
                        }
                    }
                }
            }
            let Some((mono, coeff, ri, pos)) = found else {
                return poly;
            };
            let rule = &self.rules[ri];
            let ll = rule.lead.arrows.len();
            let left = Path { source: mono.source, arrows: mono.arrows[..pos].to_vec() };
            let right = mono.arrows[pos + ll..].to_vec();
            let replaced = self.concat3(&left, &rule.rhs, &right);
            poly.remove(&mono);
            for (m, c) in replaced {
                poly_insert(&mut poly, m, c * coeff % self.prime, self.prime);
            }
        }
    }

    /// Turns a reduced nonzero polynomial into a monic rule `lead -> rest`.
    fn rule_from(&self, poly: Poly) -> Option<Rule> {
        let (lead, coeff) = leading(&poly)?;
        let lead = lead.clone();
        let inv = Fp { value: coeff, prime: self.prime }.inverse().unwrap().value;
        let mut rhs = Poly::new();
        for (m, &c) in &poly {
            if *m == lead {
                continue;
            }
            let neg = (self.prime - c % self.prime) % self.prime;
            poly_insert(&mut rhs, m.clone(), neg * inv % self.prime, self.prime);
        }
        Some(Rule { lead, rhs })
    }

    /// Resolves overlap ambiguities up to `2 * cap + 1` letters (enough for
    /// confluence on products of two basis words of length <= cap).
    fn complete(&mut self, cap: usize) {
        let bound = 2 * cap + 1;
        loop {
            let mut new_rules: Vec<Rule> = Vec::new();
            for i in 0..self.rules.len() {
                for j in 0..self.rules.len() {
                    let (u, v) = (&self.rules[i].lead, &self.rules[j].lead);
                    // suffix-of-u = prefix-of-v overlaps
                    for s in 1..u.arrows.len().min(v.arrows.len()) {
                        if u.arrows[u.arrows.len() - s..] != v.arrows[..s] {
                            continue;
                        }
                        let mut word = u.arrows.clone();
                        word.extend_from_slice(&v.arrows[s..]);
                        if word.len() > bound {
                            continue;
                        }
                        if let Some(r) = self.spoly(u.source, &word, i, 0, j, word.len() - v.arrows.len()) {
                            new_rules.push(r);
                        }
                    }
                    // v inside u (including duplicate leads from separate rules)
                    if i != j && v.arrows.len() <= u.arrows.len() {
                        for pos in 0..=u.arrows.len() - v.arrows.len() {
                            if u.arrows[pos..pos + v.arrows.len()] == v.arrows[..] {
                                if let Some(r) = self.spoly(u.source, &u.arrows.clone(), i, 0, j, pos) {
                                    new_rules.push(r);
                                }
                            }
                        }
                    }
                }
                if !new_rules.is_empty() {
                    break;
                }
            }
            if new_rules.is_empty() {
                return;
            }
            self.rules.extend(new_rules);
        }
    }

    /// Reduces `word` first by rule `i` at `pos_i` and by rule `j` at
    /// `pos_j`; a nonzero difference after full reduction yields a new rule.
    fn spoly(
        &self,
        source: usize,
        word: &[usize],
        i: usize,
        pos_i: usize,
        j: usize,
        pos_j: usize,
    ) -> Option<Rule> {
        let apply = |rule: &Rule, pos: usize| -> Poly {
            let ll = rule.lead.arrows.len();
            let left = Path { source, arrows: word[..pos].to_vec() };
            let right = word[pos + ll..].to_vec();
            self.concat3(&left, &rule.rhs, &right)
        };
        let a = self.reduce(apply(&self.rules[i], pos_i));
        let b = self.reduce(apply(&self.rules[j], pos_j));
        let mut diff = a;
        for (m, c) in b {
            let neg = (self.prime - c) % self.prime;
            poly_insert(&mut diff, m, neg, self.prime);
        }
        let diff = self.reduce(diff);
        if diff.is_empty() {
            None
        } else {
            self.rule_from(diff)
        }
    }

    fn is_normal(&self, word: &[usize]) -> bool {
        for rule in &self.rules {
            let ll = rule.lead.arrows.len();
            if word.len() < ll {
                continue;
            }
            for pos in 0..=word.len() - ll {
                if word[pos..pos + ll] == rule.lead.arrows[..] {
                    return false;
                }
            }
        }
        true
    }
}

/// The assembled path algebra together with its path basis.
#[derive(Clone, Debug)]
pub struct PathAlgebra {
    pub algebra: Arc<Algebra>,
    pub basis: Vec<Path>,
    /// Basis index of each trivial path `e_v`.
    pub vertex_idempotent: Vec<usize>,
    /// Basis index of each arrow that survives reduction (arrows never reduce
    /// under admissible relations, which live in path length >= 2).
    pub arrow_element: Vec<usize>,
}

/// Builds the path algebra of `quiver` modulo `relations`.
pub fn path_algebra(
    quiver: &Quiver,
    relations: &[Relation],
    prime: u64,
    length_cap: usize,
) -> Result<PathAlgebra, QuiverError> {
    if quiver.vertices == 0 {
        return Err(QuiverError::BadQuiver("quiver needs at least one vertex".into()));
    }
    for &(s, t) in &quiver.arrows {
        if s >= quiver.vertices || t >= quiver.vertices {
            return Err(QuiverError::BadQuiver(format!("arrow ({s}, {t}) out of range")));
        }
    }

    let mut rw = Rewriter { quiver: quiver.clone(), prime, rules: Vec::new() };

    for rel in relations {
        let mut poly = Poly::new();
        let mut endpoints: Option<(usize, usize)> = None;
        for term in rel {
            if term.coeff == 0 {
                continue;
            }
            if term.arrows.len() < 2 {
                return Err(QuiverError::BadRelation(
                    "relation terms must be paths of length at least 2".into(),
                ));
            }
            for w in term.arrows.windows(2) {
                if quiver.arrows[w[0]].1 != quiver.arrows[w[1]].0 {
                    return Err(QuiverError::BadRelation(format!(
                        "arrows {} and {} do not compose",
                        w[0], w[1]
                    )));
                }
            }
            let src = quiver.arrows[term.arrows[0]].0;
            let tgt = quiver.arrows[*term.arrows.last().unwrap()].1;
            match endpoints {
                None => endpoints = Some((src, tgt)),
                Some(e) if e != (src, tgt) => {
                    return Err(QuiverError::BadRelation(
                        "relation terms must share source and target".into(),
                    ))
                }
                _ => {}
            }
            let p = prime as i64;
            let c = (((term.coeff % p) + p) % p) as u64;
            poly_insert(&mut poly, Path { source: src, arrows: term.arrows.clone() }, c, prime);
        }
        let poly = rw.reduce(poly);
        if let Some(rule) = rw.rule_from(poly) {
            rw.rules.push(rule);
        }
    }

    rw.complete(length_cap);

    // enumerate normal words breadth-first by length
    let mut basis: Vec<Path> = (0..quiver.vertices).map(|v| Path { source: v, arrows: vec![] }).collect();
    let mut level: Vec<Path> = basis.clone();
    for len in 1..=length_cap + 1 {
        let mut next = Vec::new();
        for path in &level {
            let tgt = rw.path_target(path);
            for (a, &(s, _)) in quiver.arrows.iter().enumerate() {
                if s != tgt {
                    continue;
                }
                let mut arrows = path.arrows.clone();
                arrows.push(a);
                if rw.is_normal(&arrows) {
                    next.push(Path { source: path.source, arrows });
                }
            }
        }
        if next.is_empty() {
            break;
        }
        if len > length_cap {
            return Err(QuiverError::InfiniteDimensional { cap: length_cap });
        }
        basis.extend(next.iter().cloned());
        level = next;
    }

    basis.sort_by(word_cmp);
    let index_of = |path: &Path| basis.iter().position(|b| b == path);
    let n = basis.len();
    let mut sc = vec![0u64; n * n * n];
    for (i, pi) in basis.iter().enumerate() {
        for (j, pj) in basis.iter().enumerate() {
            if rw.path_target(pi) != pj.source {
                continue;
            }
            let mut arrows = pi.arrows.clone();
            arrows.extend_from_slice(&pj.arrows);
            let mut poly = Poly::new();
            poly_insert(&mut poly, Path { source: pi.source, arrows }, 1, prime);
            let reduced = rw.reduce(poly);
            for (m, c) in reduced {
                let k = index_of(&m).expect("reduced monomial must be a basis word");
                sc[(i * n + j) * n + k] = c;
            }
        }
    }
    let mut unit = vec![0u64; n];
    let mut vertex_idempotent = vec![0usize; quiver.vertices];
    for v in 0..quiver.vertices {
        let k = index_of(&Path { source: v, arrows: vec![] }).unwrap();
        unit[k] = 1;
        vertex_idempotent[v] = k;
    }
    let arrow_element = quiver
        .arrows
        .iter()
        .enumerate()
        .filter_map(|(a, &(s, _))| index_of(&Path { source: s, arrows: vec![a] }))
        .collect();

    let algebra = Algebra::new(prime, n, sc, unit).map_err(|e| {
        QuiverError::BadQuiver(format!("internal structure constant assembly failed: {e}"))
    })?;
    debug_assert!(algebra.validate().is_ok());
    Ok(PathAlgebra {
        algebra: Arc::new(algebra),
        basis,
        vertex_idempotent,
        arrow_element,
    })
}

/// The A_2 quiver `0 -> 1`; ubiquitous in tests and the example catalog.
pub fn a2_quiver() -> Quiver {
    Quiver { vertices: 2, arrows: vec![(0, 1)] }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::DEFAULT_PRIME;

    const P: u64 = DEFAULT_PRIME;

    #[test]
    fn a2_path_algebra() {
        let pa = path_algebra(&a2_quiver(), &[], P, DEFAULT_LENGTH_CAP).unwrap();
        assert_eq!(pa.algebra.dim, 3);
        assert!(pa.algebra.validate().is_ok());
        // e_0 A e_1 is spanned by the arrow, e_1 A e_0 is zero
        let e0 = pa.vertex_idempotent[0];
        let e1 = pa.vertex_idempotent[1];
        let a = pa.arrow_element[0];
        let prod = pa.algebra.mul(&pa.algebra.basis_element(e0), &pa.algebra.basis_element(a));
        assert_eq!(prod, pa.algebra.basis_element(a));
        let prod = pa.algebra.mul(&pa.algebra.basis_element(a), &pa.algebra.basis_element(e1));
        assert_eq!(prod, pa.algebra.basis_element(a));
        let prod = pa.algebra.mul(&pa.algebra.basis_element(e1), &pa.algebra.basis_element(a));
        assert!(prod.iter().all(|&c| c == 0));
    }

    #[test]
    fn dual_numbers_from_loop() {
        let q = Quiver { vertices: 1, arrows: vec![(0, 0)] };
        let rel = vec![vec![PathTerm { coeff: 1, arrows: vec![0, 0] }]];
        let pa = path_algebra(&q, &rel, P, DEFAULT_LENGTH_CAP).unwrap();
        assert_eq!(pa.algebra.dim, 2);
        assert!(pa.algebra.validate().is_ok());
        let x = pa.arrow_element[0];
        let sq = pa.algebra.mul(&pa.algebra.basis_element(x), &pa.algebra.basis_element(x));
        assert!(sq.iter().all(|&c| c == 0));
    }

    #[test]
    fn free_loop_is_infinite_dimensional() {
        let q = Quiver { vertices: 1, arrows: vec![(0, 0)] };
        let err = path_algebra(&q, &[], P, DEFAULT_LENGTH_CAP).unwrap_err();
        assert!(matches!(err, QuiverError::InfiniteDimensional { .. }));
    }

    #[test]
    fn a3_with_zero_relation() {
        // 0 -> 1 -> 2 with the composite set to zero: basis e0,e1,e2,a,b
        let q = Quiver { vertices: 3, arrows: vec![(0, 1), (1, 2)] };
        let rel = vec![vec![PathTerm { coeff: 1, arrows: vec![0, 1] }]];
        let pa = path_algebra(&q, &rel, P, DEFAULT_LENGTH_CAP).unwrap();
        assert_eq!(pa.algebra.dim, 5);
        assert!(pa.algebra.validate().is_ok());
    }

    #[test]
    fn commuting_square() {
        // two paths around a square identified; dim = 4 vertices + 4 arrows + 1 diagonal
        let q = Quiver { vertices: 4, arrows: vec![(0, 1), (0, 2), (1, 3), (2, 3)] };
        let rel = vec![vec![
            PathTerm { coeff: 1, arrows: vec![0, 2] },
            PathTerm { coeff: -1, arrows: vec![1, 3] },
        ]];
        let pa = path_algebra(&q, &rel, P, DEFAULT_LENGTH_CAP).unwrap();
        assert_eq!(pa.algebra.dim, 9);
        assert!(pa.algebra.validate().is_ok());
    }

    #[test]
    fn bad_relation_rejected() {
        let q = a2_quiver();
        let rel = vec![vec![PathTerm { coeff: 1, arrows: vec![0] }]];
        assert!(matches!(path_algebra(&q, &rel, P, 12), Err(QuiverError::BadRelation(_))));
    }
}
