//! Serializable report types. The JSON emitted from these structures is the
//! tool's output contract; the text rendering is a convenience summary.

use serde::Serialize;

use crate::analysis::DerivedInvariants;
use crate::dualising::{DualisingReport, RelativeReport};
use crate::engine::WitnessReport;
use crate::hypothesis::{HypothesisReport, Verdict};
use crate::triangular::GeneratorReport;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub schema_version: u32,
    pub subcommand: String,
    pub prime: u64,
    pub degree_bound: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Envelope<T: Serialize> {
    pub meta: Meta,
    pub verdict: String,
    pub exit_code: i32,
    pub report: T,
}

pub fn meta(subcommand: &str, prime: u64, degree_bound: usize, seed: u64) -> Meta {
    Meta {
        tool: "trideq".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        schema_version: SCHEMA_VERSION,
        subcommand: subcommand.into(),
        prime,
        degree_bound,
        seed,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantsDto {
    pub cartan: Vec<Vec<i64>>,
    pub cartan_snf: Vec<String>,
    pub cartan_det: String,
    pub center_dim: usize,
}

impl From<&DerivedInvariants> for InvariantsDto {
    fn from(inv: &DerivedInvariants) -> Self {
        InvariantsDto {
            cartan: inv.cartan.clone(),
            cartan_snf: inv.cartan_snf.iter().map(|d| d.to_string()).collect(),
            cartan_det: inv.cartan_det.to_string(),
            center_dim: inv.center_dim,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorDto {
    pub hom_dims: [usize; 4],
    pub expected: [usize; 4],
    pub end_dim: usize,
    pub lambda_dim: usize,
    pub canonical_iso: bool,
    pub structure_match: bool,
    pub ok: bool,
}

impl From<&GeneratorReport> for GeneratorDto {
    fn from(r: &GeneratorReport) -> Self {
        GeneratorDto {
            hom_dims: r.hom_dims,
            expected: r.expected,
            end_dim: r.end_dim,
            lambda_dim: r.lambda_dim,
            canonical_iso: r.canonical_iso,
            structure_match: r.structure_match,
            ok: r.ok(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GlueDto {
    pub dims: GlueDims,
    pub structure_constants: Vec<i64>,
    pub generator: GeneratorDto,
}

#[derive(Clone, Debug, Serialize)]
pub struct GlueDims {
    pub s: usize,
    pub m: usize,
    pub r: usize,
    pub total: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessGeneratorDto {
    pub name: String,
    pub u_homology: Vec<(i32, usize)>,
    pub v_homology: Vec<(i32, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessDto {
    pub dim_source: usize,
    pub dim_target: usize,
    pub h0_dim: usize,
    pub end_homology: Vec<(i32, usize)>,
    pub invariants_source: InvariantsDto,
    pub invariants_target: InvariantsDto,
    pub generators: Vec<WitnessGeneratorDto>,
    pub consistent: bool,
    pub notes: Vec<String>,
    pub d_max: usize,
}

impl From<&WitnessReport> for WitnessDto {
    fn from(r: &WitnessReport) -> Self {
        WitnessDto {
            dim_source: r.dim_source,
            dim_target: r.dim_target,
            h0_dim: r.h0_dim,
            end_homology: r.end_homology.clone(),
            invariants_source: (&r.invariants_source).into(),
            invariants_target: (&r.invariants_target).into(),
            generators: r
                .generators
                .iter()
                .map(|g| WitnessGeneratorDto {
                    name: g.name.clone(),
                    u_homology: g.u_homology.clone(),
                    v_homology: g.v_homology.clone(),
                })
                .collect(),
            consistent: r.consistent,
            notes: r.notes.clone(),
            d_max: r.d_max,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelativeDto {
    pub base_dim: usize,
    pub counit_source_dim: usize,
    pub cofibre_term_dims: Vec<(i32, usize)>,
    pub omega_rel_homology: Vec<(i32, usize)>,
    pub reproduces_absolute: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualisingDto {
    pub algebra_dim: usize,
    pub da_dim: usize,
    pub proper: bool,
    pub smooth_within_bound: bool,
    pub resolution_term_dims: Vec<(i32, usize)>,
    pub omega_term_dims: Vec<(i32, usize)>,
    pub omega_homology: Vec<(i32, usize)>,
    pub omega_euler: i64,
    pub relative: Option<RelativeDto>,
    pub d_max: usize,
}

impl From<&DualisingReport> for DualisingDto {
    fn from(r: &DualisingReport) -> Self {
        DualisingDto {
            algebra_dim: r.algebra_dim,
            da_dim: r.da_dim,
            proper: r.proper,
            smooth_within_bound: r.smooth_within_bound,
            resolution_term_dims: r.resolution_term_dims.clone(),
            omega_term_dims: r.omega_term_dims.clone(),
            omega_homology: r.omega_homology.clone(),
            omega_euler: r.omega_euler,
            relative: r.relative.as_ref().map(|rel: &RelativeReport| RelativeDto {
                base_dim: rel.base_dim,
                counit_source_dim: rel.counit_source_dim,
                cofibre_term_dims: rel.cofibre_term_dims.clone(),
                omega_rel_homology: rel.omega_rel_homology.clone(),
                reproduces_absolute: rel.reproduces_absolute,
            }),
            d_max: r.d_max,
        }
    }
}

pub fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::VerifiedUpToBound => "verified-up-to-bound",
        Verdict::Refuted => "refuted",
        Verdict::Inconclusive => "inconclusive",
    }
}

pub fn verdict_exit(v: Verdict) -> i32 {
    match v {
        Verdict::VerifiedUpToBound => 0,
        Verdict::Refuted => 1,
        Verdict::Inconclusive => 2,
    }
}

/// Human-readable summary of a hypothesis report.
pub fn render_hypotheses(h: &HypothesisReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "compactness: terminated={} pd_bound={:?} ({})\n",
        h.compactness.terminated,
        h.compactness.pd_bound,
        verdict_str(h.compactness.verdict)
    ));
    out.push_str(&format!(
        "ext-vanishing Ext^1..{}(M,T): dims={:?} ({})\n",
        h.ext_vanishing.d_max,
        h.ext_vanishing.dims,
        verdict_str(h.ext_vanishing.verdict)
    ));
    out.push_str(&format!(
        "tilting: pd={:?} self-ext={:?} summand classes={} simples={} ({}: {})\n",
        h.tilting.pd_bound,
        h.tilting.self_ext_dims,
        h.tilting.summand_classes,
        h.tilting.simple_count,
        verdict_str(h.tilting.verdict),
        h.tilting.reason
    ));
    out.push_str(&format!("verdict: {} ({})\n", verdict_str(h.verdict), h.reason));
    out
}

pub fn render_witness(w: &WitnessDto) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "gluing dims: source={} target={}\n",
        w.dim_source, w.dim_target
    ));
    out.push_str("endomorphism cohomology of the image of the regular module:\n");
    for &(n, d) in &w.end_homology {
        if d > 0 || n == 0 {
            out.push_str(&format!("  H^{n} = {d}\n"));
        }
    }
    out.push_str(&format!(
        "invariants: cartan_det {} vs {}, snf {:?} vs {:?}, centre {} vs {}\n",
        w.invariants_source.cartan_det,
        w.invariants_target.cartan_det,
        w.invariants_source.cartan_snf,
        w.invariants_target.cartan_snf,
        w.invariants_source.center_dim,
        w.invariants_target.center_dim
    ));
    for note in &w.notes {
        out.push_str(&format!("note: {note}\n"));
    }
    out.push_str(&format!(
        "verdict: {}\n",
        if w.consistent { "consistent" } else { "inconsistent" }
    ));
    out
}

pub fn render_generator(g: &GeneratorDto) -> String {
    format!(
        "hom blocks: {:?} (expected {:?})\nEnd dim {} vs gluing dim {}\ncanonical identification: {}\nstructure constants match: {}\nverdict: {}\n",
        g.hom_dims,
        g.expected,
        g.end_dim,
        g.lambda_dim,
        g.canonical_iso,
        g.structure_match,
        if g.ok { "consistent" } else { "inconsistent" }
    )
}

pub fn render_dualising(d: &DualisingDto) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "DA dim {} (proper: automatic for finite-dimensional algebras)\n",
        d.da_dim
    ));
    out.push_str(&format!(
        "bimodule resolution terms: {:?} (smooth within bound: {})\n",
        d.resolution_term_dims, d.smooth_within_bound
    ));
    out.push_str(&format!(
        "inverse dualising complex terms: {:?}, euler {}\n",
        d.omega_term_dims, d.omega_euler
    ));
    out.push_str(&format!("inverse dualising homology: {:?}\n", d.omega_homology));
    if let Some(rel) = &d.relative {
        out.push_str(&format!(
            "relative: base dim {}, counit source dim {}, homology {:?}, reproduces absolute: {}\n",
            rel.base_dim, rel.counit_source_dim, rel.omega_rel_homology, rel.reproduces_absolute
        ));
    }
    out
}
