//! The instance file format: a JSON document declaring algebras, modules and
//! bimodules by name, a role binding `(S, R, M, T)` for equivalence runs,
//! and an optional dualising section.
//!
//! Matrices are row-major integer arrays, reduced mod p on load. Every
//! declared object is validated; loading fails with a path-qualified
//! diagnostic otherwise.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;

use crate::algebra::Algebra;
use crate::error::Error;
use crate::fp::{check_prime, DEFAULT_PRIME};
use crate::mat::Mat;
use crate::module::{BimoduleRep, ModuleRep};
use crate::quiver::{path_algebra, PathTerm, Quiver, DEFAULT_LENGTH_CAP};

pub const DEFAULT_DEGREE_BOUND: usize = 6;

#[derive(Clone, Debug, Deserialize)]
pub struct InstanceFile {
    pub schema_version: u32,
    #[serde(default)]
    pub field: FieldSpec,
    #[serde(default)]
    pub params: ParamsSpec,
    #[serde(default)]
    pub algebras: BTreeMap<String, AlgebraSpec>,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleSpec>,
    #[serde(default)]
    pub bimodules: BTreeMap<String, BimoduleSpec>,
    #[serde(default)]
    pub instance: Option<RoleBinding>,
    #[serde(default)]
    pub dualising: Option<DualisingSpec>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct FieldSpec {
    pub prime: u64,
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec { prime: DEFAULT_PRIME }
    }
}

#[derive(Clone, Debug, Deserialize, Default)]
pub struct ParamsSpec {
    #[serde(default)]
    pub degree_bound: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraSpec {
    Field {},
    Zero {},
    StructureConstants { dim: usize, table: Vec<i64>, unit: Vec<i64> },
    Quiver {
        vertices: usize,
        arrows: Vec<(usize, usize)>,
        #[serde(default)]
        relations: Vec<Vec<RelTermSpec>>,
        #[serde(default)]
        length_cap: Option<usize>,
    },
    Opposite(String),
    Enveloping(String),
    Tensor(String, String),
    Product(String, String),
}

#[derive(Clone, Debug, Deserialize)]
pub struct RelTermSpec {
    pub coeff: i64,
    pub path: Vec<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleSpec {
    Action { over: String, dim: usize, matrices: Vec<Vec<i64>> },
    Regular(String),
    Zero(String),
    DirectSum(Vec<String>),
    Dual { module: String, over: String },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BimoduleSpec {
    Actions {
        left_over: String,
        right_over: String,
        dim: usize,
        left: Vec<Vec<i64>>,
        right: Vec<Vec<i64>>,
    },
    Diagonal(String),
    TrivialLeft { field: String, module: String },
    LeftEnvelopingDiagonal { algebra: String, enveloping: String, field: String },
    Dual(String),
    Zero { left_over: String, right_over: String },
}

#[derive(Clone, Debug, Deserialize)]
pub struct RoleBinding {
    pub s: String,
    pub r: String,
    pub m: String,
    pub t: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct DualisingSpec {
    pub algebra: String,
    #[serde(default)]
    pub base: Option<String>,
    #[serde(default)]
    pub map: Option<Vec<Vec<i64>>>,
}

/// Parameter overrides supplied on the command line.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub prime: Option<u64>,
    pub degree_bound: Option<usize>,
    pub seed: Option<u64>,
}

/// A fully validated instance.
#[derive(Debug)]
pub struct Loaded {
    pub prime: u64,
    pub degree_bound: usize,
    pub seed: u64,
    pub algebras: BTreeMap<String, Arc<Algebra>>,
    pub modules: BTreeMap<String, ModuleRep>,
    pub bimodules: BTreeMap<String, BimoduleRep>,
    pub binding: Option<RoleBinding>,
    pub dualising: Option<DualisingSpec>,
}

fn err(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Instance { path: path.into(), message: message.into() }
}

pub fn parse(text: &str) -> Result<InstanceFile, Error> {
    serde_json::from_str(text).map_err(|e| {
        err(
            format!("line {}, column {}", e.line(), e.column()),
            e.to_string(),
        )
    })
}

fn to_mat(rows: usize, cols: usize, entries: &[i64], prime: u64, path: &str) -> Result<Mat, Error> {
    if entries.len() != rows * cols {
        return Err(err(
            path,
            format!("expected {} entries for a {}x{} matrix, got {}", rows * cols, rows, cols, entries.len()),
        ));
    }
    Ok(Mat::from_rows(rows, cols, entries, prime))
}

pub fn load(file: &InstanceFile, over: Overrides) -> Result<Loaded, Error> {
    if file.schema_version != 1 {
        return Err(err("schema_version", format!("unsupported version {}", file.schema_version)));
    }
    let prime = over.prime.unwrap_or(file.field.prime);
    check_prime(prime)?;
    let degree_bound = over
        .degree_bound
        .or(file.params.degree_bound)
        .unwrap_or(DEFAULT_DEGREE_BOUND);
    let seed = over.seed.or(file.params.seed).unwrap_or(0);

    // algebras, resolved by a worklist over name references
    let mut algebras: BTreeMap<String, Arc<Algebra>> = BTreeMap::new();
    let mut pending: Vec<(&String, &AlgebraSpec)> = file.algebras.iter().collect();
    while !pending.is_empty() {
        let mut progressed = false;
        let mut still = Vec::new();
        for (name, spec) in pending {
            let path = format!("algebras.{name}");
            let built: Option<Arc<Algebra>> = match spec {
                AlgebraSpec::Field {} => Some(Algebra::field(prime)),
                AlgebraSpec::Zero {} => Some(Algebra::zero(prime)),
                AlgebraSpec::StructureConstants { dim, table, unit } => {
                    let sc: Vec<u64> = table
                        .iter()
                        .map(|&v| (((v % prime as i64) + prime as i64) % prime as i64) as u64)
                        .collect();
                    let un: Vec<u64> = unit
                        .iter()
                        .map(|&v| (((v % prime as i64) + prime as i64) % prime as i64) as u64)
                        .collect();
                    let a = Algebra::new(prime, *dim, sc, un)
                        .map_err(|e| err(&path, e.to_string()))?;
                    a.validate().map_err(|e| err(&path, e.to_string()))?;
                    Some(Arc::new(a))
                }
                AlgebraSpec::Quiver { vertices, arrows, relations, length_cap } => {
                    let q = Quiver { vertices: *vertices, arrows: arrows.clone() };
                    let rels: Vec<Vec<PathTerm>> = relations
                        .iter()
                        .map(|r| {
                            r.iter()
                                .map(|t| PathTerm { coeff: t.coeff, arrows: t.path.clone() })
                                .collect()
                        })
                        .collect();
                    let pa = path_algebra(&q, &rels, prime, length_cap.unwrap_or(DEFAULT_LENGTH_CAP))
                        .map_err(|e| err(&path, e.to_string()))?;
                    Some(pa.algebra)
                }
                AlgebraSpec::Opposite(base) => {
                    algebras.get(base).map(|a| Arc::new(a.opposite()))
                }
                AlgebraSpec::Enveloping(base) => {
                    algebras.get(base).map(|a| Arc::new(a.enveloping()))
                }
                AlgebraSpec::Tensor(x, y) => match (algebras.get(x), algebras.get(y)) {
                    (Some(a), Some(b)) => {
                        Some(Arc::new(a.tensor(b).map_err(|e| err(&path, e.to_string()))?))
                    }
                    _ => None,
                },
                AlgebraSpec::Product(x, y) => match (algebras.get(x), algebras.get(y)) {
                    (Some(a), Some(b)) => {
                        Some(Arc::new(a.product(b).map_err(|e| err(&path, e.to_string()))?))
                    }
                    _ => None,
                },
            };
            match built {
                Some(a) => {
                    algebras.insert(name.clone(), a);
                    progressed = true;
                }
                None => still.push((name, spec)),
            }
        }
        if !progressed {
            let names: Vec<&str> = still.iter().map(|(n, _)| n.as_str()).collect();
            return Err(err(
                "algebras",
                format!("unresolvable references (cycle or unknown name): {names:?}"),
            ));
        }
        pending = still;
    }

    let get_algebra = |name: &str, path: &str| -> Result<Arc<Algebra>, Error> {
        algebras
            .get(name)
            .cloned()
            .ok_or_else(|| err(path, format!("unknown algebra '{name}'")))
    };

    // modules
    let mut modules: BTreeMap<String, ModuleRep> = BTreeMap::new();
    let mut pending: Vec<(&String, &ModuleSpec)> = file.modules.iter().collect();
    while !pending.is_empty() {
        let mut progressed = false;
        let mut still = Vec::new();
        for (name, spec) in pending {
            let path = format!("modules.{name}");
            let built: Option<ModuleRep> = match spec {
                ModuleSpec::Action { over, dim, matrices } => {
                    let a = get_algebra(over, &path)?;
                    if matrices.len() != a.dim {
                        return Err(err(
                            &path,
                            format!("need {} action matrices, got {}", a.dim, matrices.len()),
                        ));
                    }
                    let actions = matrices
                        .iter()
                        .enumerate()
                        .map(|(i, m)| to_mat(*dim, *dim, m, prime, &format!("{path}.matrices[{i}]")))
                        .collect::<Result<Vec<_>, _>>()?;
                    let m = ModuleRep { algebra: a, dim: *dim, actions };
                    m.validate().map_err(|e| err(&path, e.to_string()))?;
                    Some(m)
                }
                ModuleSpec::Regular(over) => {
                    Some(ModuleRep::regular(get_algebra(over, &path)?))
                }
                ModuleSpec::Zero(over) => Some(ModuleRep::zero(get_algebra(over, &path)?)),
                ModuleSpec::DirectSum(parts) => {
                    let resolved: Option<Vec<&ModuleRep>> =
                        parts.iter().map(|p| modules.get(p)).collect();
                    match resolved {
                        Some(ms) if !ms.is_empty() => {
                            let mut acc = ms[0].clone();
                            for m in &ms[1..] {
                                acc = acc.direct_sum(m);
                            }
                            Some(acc)
                        }
                        Some(_) => return Err(err(&path, "empty direct sum")),
                        None => None,
                    }
                }
                ModuleSpec::Dual { module, over } => match modules.get(module) {
                    Some(m) => {
                        let op = get_algebra(over, &path)?;
                        Some(m.dual(&op))
                    }
                    None => None,
                },
            };
            match built {
                Some(m) => {
                    modules.insert(name.clone(), m);
                    progressed = true;
                }
                None => still.push((name, spec)),
            }
        }
        if !progressed {
            let names: Vec<&str> = still.iter().map(|(n, _)| n.as_str()).collect();
            return Err(err("modules", format!("unresolvable references: {names:?}")));
        }
        pending = still;
    }

    // bimodules
    let mut bimodules: BTreeMap<String, BimoduleRep> = BTreeMap::new();
    let mut pending: Vec<(&String, &BimoduleSpec)> = file.bimodules.iter().collect();
    while !pending.is_empty() {
        let mut progressed = false;
        let mut still = Vec::new();
        for (name, spec) in pending {
            let path = format!("bimodules.{name}");
            let built: Option<BimoduleRep> = match spec {
                BimoduleSpec::Actions { left_over, right_over, dim, left, right } => {
                    let s = get_algebra(left_over, &path)?;
                    let r = get_algebra(right_over, &path)?;
                    if left.len() != s.dim || right.len() != r.dim {
                        return Err(err(
                            &path,
                            format!(
                                "need {} left and {} right matrices, got {} and {}",
                                s.dim,
                                r.dim,
                                left.len(),
                                right.len()
                            ),
                        ));
                    }
                    let lm = left
                        .iter()
                        .enumerate()
                        .map(|(i, m)| to_mat(*dim, *dim, m, prime, &format!("{path}.left[{i}]")))
                        .collect::<Result<Vec<_>, _>>()?;
                    let rm = right
                        .iter()
                        .enumerate()
                        .map(|(i, m)| to_mat(*dim, *dim, m, prime, &format!("{path}.right[{i}]")))
                        .collect::<Result<Vec<_>, _>>()?;
                    let b = BimoduleRep {
                        left_algebra: s,
                        right_algebra: r,
                        dim: *dim,
                        left: lm,
                        right: rm,
                    };
                    b.validate().map_err(|e| err(&path, e.to_string()))?;
                    Some(b)
                }
                BimoduleSpec::Diagonal(over) => {
                    Some(BimoduleRep::diagonal(&get_algebra(over, &path)?))
                }
                BimoduleSpec::TrivialLeft { field, module } => match modules.get(module) {
                    Some(m) => {
                        let f = get_algebra(field, &path)?;
                        if f.dim != 1 {
                            return Err(err(&path, "trivial_left needs a one-dimensional field algebra"));
                        }
                        Some(BimoduleRep::trivial_left(&f, m))
                    }
                    None => {
                        return Err(err(&path, format!("unknown module '{module}'")));
                    }
                },
                BimoduleSpec::LeftEnvelopingDiagonal { algebra, enveloping, field } => {
                    let a = get_algebra(algebra, &path)?;
                    let env = get_algebra(enveloping, &path)?;
                    let f = get_algebra(field, &path)?;
                    if env.dim != a.dim * a.dim {
                        return Err(err(&path, "enveloping algebra has the wrong dimension"));
                    }
                    Some(BimoduleRep::left_enveloping_diagonal(&a, &env, &f))
                }
                BimoduleSpec::Dual(base) => bimodules.get(base).map(|b| b.dual()),
                BimoduleSpec::Zero { left_over, right_over } => {
                    let s = get_algebra(left_over, &path)?;
                    let r = get_algebra(right_over, &path)?;
                    Some(BimoduleRep::zero(s, r))
                }
            };
            match built {
                Some(b) => {
                    debug_assert!(b.validate().is_ok());
                    bimodules.insert(name.clone(), b);
                    progressed = true;
                }
                None => still.push((name, spec)),
            }
        }
        if !progressed {
            let names: Vec<&str> = still.iter().map(|(n, _)| n.as_str()).collect();
            return Err(err("bimodules", format!("unresolvable references: {names:?}")));
        }
        pending = still;
    }

    if let Some(binding) = &file.instance {
        for (role, name) in [("s", &binding.s), ("r", &binding.r)] {
            if !algebras.contains_key(name) {
                return Err(err(format!("instance.{role}"), format!("unknown algebra '{name}'")));
            }
        }
        if !bimodules.contains_key(&binding.m) {
            return Err(err("instance.m", format!("unknown bimodule '{}'", binding.m)));
        }
        if !modules.contains_key(&binding.t) {
            return Err(err("instance.t", format!("unknown module '{}'", binding.t)));
        }
    }
    if let Some(d) = &file.dualising {
        if !algebras.contains_key(&d.algebra) {
            return Err(err("dualising.algebra", format!("unknown algebra '{}'", d.algebra)));
        }
        if let Some(base) = &d.base {
            if !algebras.contains_key(base) {
                return Err(err("dualising.base", format!("unknown algebra '{base}'")));
            }
        }
    }

    Ok(Loaded {
        prime,
        degree_bound,
        seed,
        algebras,
        modules,
        bimodules,
        binding: file.instance.clone(),
        dualising: file.dualising.clone(),
    })
}

impl Loaded {
    /// The bound roles, ready for the engine.
    pub fn roles(&self) -> Result<(Arc<Algebra>, Arc<Algebra>, BimoduleRep, ModuleRep), Error> {
        let binding = self
            .binding
            .as_ref()
            .ok_or_else(|| err("instance", "file has no instance binding"))?;
        let s = self.algebras[&binding.s].clone();
        let r = self.algebras[&binding.r].clone();
        let m = self.bimodules[&binding.m].clone();
        let t = self.modules[&binding.t].clone();
        if *m.left_algebra != *s || *m.right_algebra != *r {
            return Err(err("instance.m", "bimodule sides do not match the bound algebras"));
        }
        if *t.algebra != *r {
            return Err(err("instance.t", "tilting candidate is not a module over R"));
        }
        Ok((s, r, m, t))
    }

    pub fn dualising_data(&self) -> Result<(Arc<Algebra>, Option<(Arc<Algebra>, Mat)>), Error> {
        let spec = self
            .dualising
            .as_ref()
            .ok_or_else(|| err("dualising", "file has no dualising section"))?;
        let a = self.algebras[&spec.algebra].clone();
        let rel = match &spec.base {
            None => None,
            Some(base) => {
                let b = self.algebras[base].clone();
                let rows = spec.map.clone().unwrap_or_default();
                let flat: Vec<i64> = rows.into_iter().flatten().collect();
                let f = to_mat(b.dim, a.dim, &flat, self.prime, "dualising.map")?;
                Some((b, f))
            }
        };
        Ok((a, rel))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_load_a_minimal_file() {
        let text = r#"{
            "schema_version": 1,
            "field": {"prime": 101},
            "params": {"degree_bound": 3, "seed": 0},
            "algebras": {
                "A": {"quiver": {"vertices": 2, "arrows": [[0, 1]], "relations": []}},
                "k": {"field": {}},
                "Aop": {"opposite": "A"}
            },
            "modules": {
                "T": {"regular": "A"},
                "P1": {"action": {"over": "A", "dim": 2,
                    "matrices": [[1,0,0,0],[0,0,0,1],[0,1,0,0]]}}
            },
            "bimodules": {"M": {"diagonal": "A"}},
            "instance": {"s": "A", "r": "A", "m": "M", "t": "T"}
        }"#;
        let file = parse(text).unwrap();
        let loaded = load(&file, Overrides::default()).unwrap();
        assert_eq!(loaded.prime, 101);
        assert_eq!(loaded.algebras["A"].dim, 3);
        assert_eq!(loaded.algebras["Aop"].dim, 3);
        assert_eq!(loaded.modules["P1"].dim, 2);
        let (s, r, m, t) = loaded.roles().unwrap();
        assert_eq!(s.dim, 3);
        assert_eq!(r.dim, 3);
        assert_eq!(m.dim, 3);
        assert_eq!(t.dim, 3);
    }

    #[test]
    fn bad_module_reported_with_path() {
        let text = r#"{
            "schema_version": 1,
            "algebras": {"A": {"quiver": {"vertices": 2, "arrows": [[0, 1]]}}},
            "modules": {"X": {"action": {"over": "A", "dim": 1,
                "matrices": [[1],[1],[1]]}}}
        }"#;
        let file = parse(text).unwrap();
        let e = load(&file, Overrides::default()).unwrap_err();
        let msg = format!("{e}");
        assert!(msg.contains("modules.X"), "{msg}");
    }

    #[test]
    fn syntax_error_has_location() {
        let e = parse("{ not json").unwrap_err();
        let msg = format!("{e}");
        assert!(msg.contains("line 1"), "{msg}");
    }

    #[test]
    fn non_associative_table_rejected() {
        let text = r#"{
            "schema_version": 1,
            "algebras": {"B": {"structure_constants": {"dim": 2,
                "table": [1,0, 0,2, 0,1, 1,0],
                "unit": [1, 0]}}}
        }"#;
        let file = parse(text).unwrap();
        assert!(load(&file, Overrides::default()).is_err());
    }

    #[test]
    fn prime_override_applies() {
        let text = r#"{"schema_version": 1,
            "algebras": {"k": {"field": {}}}}"#;
        let file = parse(text).unwrap();
        let loaded = load(&file, Overrides { prime: Some(7), ..Default::default() }).unwrap();
        assert_eq!(loaded.prime, 7);
        assert!(load(&file, Overrides { prime: Some(6), ..Default::default() }).is_err());
    }
}
