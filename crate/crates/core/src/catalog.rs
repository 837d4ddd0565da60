//! Built-in example catalog. The entries ship as instance files in the
//! repository (`instances/`), double as integration fixtures, and are
//! embedded here so the CLI can run them by name without paths.

use crate::error::Error;
use crate::instance::{load, parse, Loaded, Overrides};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogKind {
    /// Full equivalence run: hypotheses, gluing, functor, certificate.
    Witness,
    /// Dualising-bimodule computation.
    Dualising,
}

#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub kind: CatalogKind,
    pub json: &'static str,
    pub summary: &'static str,
}

pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "self-eq",
        kind: CatalogKind::Witness,
        json: include_str!("../../../instances/self_eq.json"),
        summary: "identity instance over the A_2 path algebra: morphisms map to cofibres",
    },
    CatalogEntry {
        name: "apr",
        kind: CatalogKind::Witness,
        json: include_str!("../../../instances/apr.json"),
        summary: "APR tilt of the A_2 path algebra glued against the base field",
    },
    CatalogEntry {
        name: "one-point",
        kind: CatalogKind::Witness,
        json: include_str!("../../../instances/one_point.json"),
        summary: "one-point extension of the enveloping algebra by the diagonal bimodule",
    },
    CatalogEntry {
        name: "smooth",
        kind: CatalogKind::Dualising,
        json: include_str!("../../../instances/smooth.json"),
        summary: "inverse dualising complex of the A_2 path algebra, absolute and relative",
    },
];

/// The refuted APR variant, shipped for the refutation path.
pub const APR_REFUTED: &str = include_str!("../../../instances/apr_refuted.json");

pub fn find(name: &str) -> Option<&'static CatalogEntry> {
    ENTRIES.iter().find(|e| e.name == name)
}

pub fn load_entry(entry: &CatalogEntry, over: Overrides) -> Result<Loaded, Error> {
    let file = parse(entry.json)?;
    load(&file, over)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_entries_load() {
        for entry in ENTRIES {
            let loaded = load_entry(entry, Overrides::default()).unwrap();
            match entry.kind {
                CatalogKind::Witness => {
                    loaded.roles().unwrap();
                }
                CatalogKind::Dualising => {
                    loaded.dualising_data().unwrap();
                }
            }
        }
    }

    #[test]
    fn refuted_variant_loads() {
        let file = parse(APR_REFUTED).unwrap();
        let loaded = load(&file, Overrides::default()).unwrap();
        loaded.roles().unwrap();
    }

    #[test]
    fn apr_entry_matches_expected_dims() {
        let loaded = load_entry(find("apr").unwrap(), Overrides::default()).unwrap();
        let (s, r, m, t) = loaded.roles().unwrap();
        assert_eq!(s.dim, 1);
        assert_eq!(r.dim, 3);
        assert_eq!(m.dim, 2);
        assert_eq!(t.dim, 3);
    }

    #[test]
    fn one_point_entry_builds_thirteen_dimensional_gluing() {
        let loaded = load_entry(find("one-point").unwrap(), Overrides::default()).unwrap();
        let (s, r, m, _) = loaded.roles().unwrap();
        let t = crate::triangular::build_triangular(&s, &r, &m).unwrap();
        assert_eq!(t.lambda.dim, 13);
    }
}
