//! Checkers for the gluing-equivalence hypotheses: compactness of the
//! bimodule on the right, Ext-vanishing into the tilting module, and the
//! tilting conditions themselves.
//!
//! All projective-dimension and Ext statements are certified only up to the
//! degree bound; reports carry the bound and a termination flag rather than
//! pretending to verify an unbounded statement.

use serde::Serialize;

use crate::analysis::analyze;
use crate::error::AnalysisError;
use crate::homalg::{ext_groups, projective_resolution, ResolutionContext};
use crate::complex::Complex;
use crate::module::{end_algebra, ModuleRep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    VerifiedUpToBound,
    Refuted,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompactnessReport {
    pub d_max: usize,
    pub terminated: bool,
    pub pd_bound: Option<usize>,
    pub verdict: Verdict,
}

/// Compactness of `M_R` in the discrete reading: finite projective
/// dimension, certified within `d_max`.
pub fn compactness_check(
    ctx: &ResolutionContext,
    m: &ModuleRep,
    d_max: usize,
) -> CompactnessReport {
    let res = projective_resolution(ctx, &Complex::from_module(m.clone(), 0), -(d_max as i32) - 1);
    let pd = if res.terminated { Some(res.length()) } else { None };
    CompactnessReport {
        d_max,
        terminated: res.terminated,
        pd_bound: pd,
        verdict: if res.terminated { Verdict::VerifiedUpToBound } else { Verdict::Inconclusive },
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtVanishingReport {
    pub d_max: usize,
    /// `dims[i]` is `dim Ext^{i+1}`.
    pub dims: Vec<usize>,
    pub terminated: bool,
    pub vanishes: bool,
    pub verdict: Verdict,
}

/// `Ext^{1..d_max}(X, Y) = 0`, certified within the bound.
pub fn ext_vanishing(
    ctx: &ResolutionContext,
    x: &ModuleRep,
    y: &ModuleRep,
    d_max: usize,
) -> ExtVanishingReport {
    let (all, terminated) = ext_groups(ctx, x, y, d_max);
    let dims: Vec<usize> = all[1..].to_vec();
    let vanishes = dims.iter().all(|&d| d == 0);
    let verdict = if !vanishes {
        Verdict::Refuted
    } else if terminated {
        Verdict::VerifiedUpToBound
    } else {
        // certified zero only up to the bound
        Verdict::VerifiedUpToBound
    };
    ExtVanishingReport { d_max, dims, terminated, vanishes, verdict }
}

#[derive(Clone, Debug, Serialize)]
pub struct TiltingReport {
    pub d_max: usize,
    pub pd_terminated: bool,
    pub pd_bound: Option<usize>,
    /// `dims[i]` is `dim Ext^{i+1}(T, T)`.
    pub self_ext_dims: Vec<usize>,
    pub summand_classes: usize,
    pub simple_count: usize,
    pub end_dim: usize,
    pub verdict: Verdict,
    pub reason: String,
}

/// Tilting check for `T` over `R`: finite projective dimension, no self
/// extensions, and as many indecomposable summand classes as simples.
/// For pd at most 1 this set of checks is a complete criterion; for higher
/// pd the verdict stays inconclusive (conditional) even when all checks
/// pass, since the coresolution condition is not searched for.
pub fn tilting_check(
    ctx_r: &ResolutionContext,
    t: &ModuleRep,
    d_max: usize,
    seed: u64,
) -> Result<TiltingReport, AnalysisError> {
    let res = projective_resolution(ctx_r, &Complex::from_module(t.clone(), 0), -(d_max as i32) - 1);
    let pd_terminated = res.terminated;
    let pd_bound = if pd_terminated { Some(res.length()) } else { None };
    let (all_ext, _) = ext_groups(ctx_r, t, t, d_max);
    let self_ext_dims: Vec<usize> = all_ext[1..].to_vec();
    let (e, _) = end_algebra(t).map_err(|_| AnalysisError::SplitSearchExhausted { tries: 0 })?;
    let end_analysis = analyze(&e, seed)?;
    let summand_classes = end_analysis.block_count;
    let simple_count = ctx_r.analysis.block_count;

    let rigid = self_ext_dims.iter().all(|&d| d == 0);
    let counts_match = summand_classes == simple_count;
    let (verdict, reason) = if !rigid {
        let i = self_ext_dims.iter().position(|&d| d > 0).unwrap() + 1;
        (
            Verdict::Refuted,
            format!("Ext^{}(T,T) has dimension {}", i, self_ext_dims[i - 1]),
        )
    } else if pd_terminated && !counts_match {
        (
            Verdict::Refuted,
            format!(
                "{} indecomposable summand classes against {} simple modules",
                summand_classes, simple_count
            ),
        )
    } else if !pd_terminated {
        (
            Verdict::Inconclusive,
            format!("projective dimension not certified within {d_max}"),
        )
    } else if pd_bound.unwrap_or(0) <= 1 {
        (
            Verdict::VerifiedUpToBound,
            "pd <= 1: rigidity and summand count form a complete criterion".into(),
        )
    } else {
        (
            Verdict::Inconclusive,
            format!(
                "conditional: pd = {} >= 2, coresolution condition not searched",
                pd_bound.unwrap_or(0)
            ),
        )
    };
    Ok(TiltingReport {
        d_max,
        pd_terminated,
        pd_bound,
        self_ext_dims,
        summand_classes,
        simple_count,
        end_dim: e.dim,
        verdict,
        reason,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct HypothesisReport {
    pub compactness: CompactnessReport,
    pub ext_vanishing: ExtVanishingReport,
    pub tilting: TiltingReport,
    pub verdict: Verdict,
    pub reason: String,
}

pub fn combine(
    compactness: CompactnessReport,
    ext_vanishing: ExtVanishingReport,
    tilting: TiltingReport,
) -> HypothesisReport {
    let (verdict, reason) = if tilting.verdict == Verdict::Refuted {
        (Verdict::Refuted, tilting.reason.clone())
    } else if ext_vanishing.verdict == Verdict::Refuted {
        let i = ext_vanishing.dims.iter().position(|&d| d > 0).unwrap() + 1;
        (
            Verdict::Refuted,
            format!("Ext^{}(M, T) has dimension {}", i, ext_vanishing.dims[i - 1]),
        )
    } else if compactness.verdict == Verdict::VerifiedUpToBound
        && ext_vanishing.verdict == Verdict::VerifiedUpToBound
        && tilting.verdict == Verdict::VerifiedUpToBound
    {
        (Verdict::VerifiedUpToBound, "all hypotheses hold up to the bound".into())
    } else {
        let mut reasons = Vec::new();
        if compactness.verdict != Verdict::VerifiedUpToBound {
            reasons.push("compactness unresolved".to_string());
        }
        if tilting.verdict != Verdict::VerifiedUpToBound {
            reasons.push(tilting.reason.clone());
        }
        (Verdict::Inconclusive, reasons.join("; "))
    };
    HypothesisReport { compactness, ext_vanishing, tilting, verdict, reason }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::DEFAULT_SEED;
    use crate::fp::DEFAULT_PRIME;
    use crate::homalg::Strategy;
    use crate::samples::{dual_numbers, ka2, projective_at_vertex, simple_at_vertex};

    const P: u64 = DEFAULT_PRIME;

    #[test]
    fn projective_is_compact() {
        let pa = ka2(P);
        let ctx = ResolutionContext::new(&pa.algebra, DEFAULT_SEED, Strategy::Minimal).unwrap();
        let p1 = projective_at_vertex(&pa, 0);
        let rep = compactness_check(&ctx, &p1, 4);
        assert!(rep.terminated);
        assert_eq!(rep.pd_bound, Some(0));
    }

    #[test]
    fn simple_has_pd_one() {
        let pa = ka2(P);
        let ctx = ResolutionContext::new(&pa.algebra, DEFAULT_SEED, Strategy::Minimal).unwrap();
        let s1 = simple_at_vertex(&pa, 0);
        let rep = compactness_check(&ctx, &s1, 4);
        assert_eq!(rep.pd_bound, Some(1));
    }

    #[test]
    fn dual_numbers_simple_not_certified() {
        let pa = dual_numbers(P);
        let ctx = ResolutionContext::new(&pa.algebra, DEFAULT_SEED, Strategy::Minimal).unwrap();
        let s = simple_at_vertex(&pa, 0);
        let rep = compactness_check(&ctx, &s, 10);
        assert!(!rep.terminated);
        assert_eq!(rep.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn regular_module_is_tilting() {
        let pa = ka2(P);
        let ctx = ResolutionContext::new(&pa.algebra, DEFAULT_SEED, Strategy::Minimal).unwrap();
        let reg = ModuleRep::regular(pa.algebra.clone());
        let rep = tilting_check(&ctx, &reg, 4, DEFAULT_SEED).unwrap();
        assert_eq!(rep.verdict, Verdict::VerifiedUpToBound);
        assert_eq!(rep.end_dim, 3);
        assert_eq!(rep.pd_bound, Some(0));
        assert_eq!(rep.summand_classes, 2);
    }

    #[test]
    fn apr_tilt_is_tilting() {
        let pa = ka2(P);
        let ctx = ResolutionContext::new(&pa.algebra, DEFAULT_SEED, Strategy::Minimal).unwrap();
        let t = projective_at_vertex(&pa, 0).direct_sum(&simple_at_vertex(&pa, 0));
        let rep = tilting_check(&ctx, &t, 4, DEFAULT_SEED).unwrap();
        assert_eq!(rep.verdict, Verdict::VerifiedUpToBound, "{rep:?}");
        assert_eq!(rep.pd_bound, Some(1));
        assert_eq!(rep.end_dim, 3);
        assert_eq!(rep.summand_classes, 2);
        assert_eq!(rep.simple_count, 2);
    }

    #[test]
    fn non_tilting_refuted_with_nonzero_ext() {
        // T = P_2 + S_1 has Ext^1(S_1, P_2) of dimension 1
        let pa = ka2(P);
        let ctx = ResolutionContext::new(&pa.algebra, DEFAULT_SEED, Strategy::Minimal).unwrap();
        let t = projective_at_vertex(&pa, 1).direct_sum(&simple_at_vertex(&pa, 0));
        let rep = tilting_check(&ctx, &t, 4, DEFAULT_SEED).unwrap();
        assert_eq!(rep.verdict, Verdict::Refuted);
        assert_eq!(rep.self_ext_dims[0], 1);
        assert!(rep.reason.contains("Ext^1"));
    }

    #[test]
    fn ext_vanishing_detects_nonzero() {
        let pa = ka2(P);
        let ctx = ResolutionContext::new(&pa.algebra, DEFAULT_SEED, Strategy::Minimal).unwrap();
        let s1 = simple_at_vertex(&pa, 0);
        let s2 = simple_at_vertex(&pa, 1);
        let rep = ext_vanishing(&ctx, &s1, &s2, 3);
        assert!(!rep.vanishes);
        assert_eq!(rep.verdict, Verdict::Refuted);
        let rep = ext_vanishing(&ctx, &s2, &s1, 3);
        assert!(rep.vanishes);
    }
}
