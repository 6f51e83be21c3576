//! The end-to-end analysis pipeline and its serializable report types.

use crate::error::Result;
use crate::graph::{self, Graph};
use crate::oracle::{self, VerificationReport};
use crate::pst::{self, PstCertificate};
use crate::scheme;
use crate::spectra::{self, EigenvalueReport, Periodicity};
use crate::walk::{build_walk, MAX_ARCS};
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Schema version tag embedded in every JSON report.
pub const REPORT_SCHEMA: &str = "grover-pst/analysis/v1";

/// Scheme reports are produced during analysis only up to this point count
/// (the axiom check is cubic per class pair).
const SCHEME_REPORT_MAX_POINTS: usize = 128;

#[derive(Debug, Clone, Serialize)]
pub struct GraphSummary {
    pub name: String,
    pub vertices: usize,
    pub edges: usize,
    pub arcs: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regular: Option<usize>,
    pub bipartite: bool,
    pub diameter: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intersection_array: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SchemeClassReport {
    /// sha256 over the sorted edge set of the class.
    pub digest: String,
    pub valency: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SchemeReport {
    pub classes: Vec<SchemeClassReport>,
    /// p_table[i][j] = p_i(j) as (exact-or-null, float).
    pub p_table: Vec<Vec<(Option<String>, f64)>>,
    pub multiplicities: Vec<usize>,
    pub flip_classes: Vec<scheme::FlipClass>,
}

/// Everything `analyze` produces for one graph.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub schema: &'static str,
    pub graph: GraphSummary,
    pub eigenvalues: Vec<EigenvalueReport>,
    pub periodic: bool,
    pub period: Option<usize>,
    /// Detailed verdict with the witness eigenvalue and exactness marker.
    pub periodicity: Periodicity,
    pub route: String,
    pub certificates: Vec<PstCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scheme: Option<SchemeReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<VerificationReport>,
}

/// Run the full pipeline: build → walk → spectrum → periodicity → transfer
/// search → oracle cross-check.
pub fn analyze(g: &Graph, name: &str, tau_max: usize, run_oracle: bool) -> Result<AnalysisReport> {
    analyze_with_tolerance(g, name, tau_max, run_oracle, 1e-8)
}

/// [`analyze`] with an explicit oracle fidelity tolerance (threshold is
/// 1 - tolerance).
pub fn analyze_with_tolerance(
    g: &Graph,
    name: &str,
    tau_max: usize,
    run_oracle: bool,
    tolerance: f64,
) -> Result<AnalysisReport> {
    let dist = graph::distance_structure(g)?;
    let w = build_walk(g)?;
    let ds = spectra::discriminant_spectrum(&w)?;
    let us = spectra::u_spectrum(&w, &ds);
    let period = spectra::period(&us);
    let periodicity = spectra::is_periodic(&ds, g.regularity().is_some());

    let array = graph::is_distance_regular(g, &dist);
    let (route, certificates) = match &array {
        Some(arr) => {
            let out = pst::classify_distance_regular_with(g, &dist, arr.clone(), &w, &ds)?;
            (format!("distance-regular: {}", out.decision), out.certificates)
        }
        None => {
            let certs = pst::chebyshev_scan(&w, &ds, tau_max)?;
            (format!("chebyshev scan to tau={tau_max}"), certs)
        }
    };

    let scheme_report = if array.is_some() && g.vertex_count() <= SCHEME_REPORT_MAX_POINTS {
        let s = scheme::AssociationScheme::from_classes(dist.distance_classes.clone())?;
        Some(scheme_report(&s))
    } else {
        None
    };

    let oracle_report = if run_oracle && w.arc_count() <= MAX_ARCS {
        Some(oracle::verify_certificates_with_threshold(
            &certificates,
            &w,
            tau_max,
            1.0 - tolerance,
        )?)
    } else {
        None
    };

    Ok(AnalysisReport {
        schema: REPORT_SCHEMA,
        graph: GraphSummary {
            name: name.to_string(),
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            arcs: 2 * g.edge_count(),
            regular: g.regularity(),
            bipartite: g.is_bipartite(),
            diameter: dist.diameter,
            intersection_array: array.map(|a| a.to_string()),
        },
        eigenvalues: spectra::eigenvalue_reports(&ds),
        periodic: periodicity.is_periodic(),
        period,
        periodicity,
        route,
        certificates,
        scheme: scheme_report,
        oracle: oracle_report,
    })
}

/// Scheme report with class digests, the eigenvalue table, multiplicities,
/// and flip classes.
pub fn scheme_report(s: &scheme::AssociationScheme) -> SchemeReport {
    let d = s.class_count();
    let classes = s
        .classes()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let n = a.rows();
            let mut hasher = Sha256::new();
            for u in 0..n {
                for v in 0..n {
                    if a[(u, v)] == 1 {
                        hasher.update(u.to_le_bytes());
                        hasher.update(v.to_le_bytes());
                    }
                }
            }
            let digest = hasher.finalize();
            let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
            SchemeClassReport {
                digest: hex,
                valency: s.p(i, 0).float_value(),
            }
        })
        .collect();
    SchemeReport {
        classes,
        p_table: (0..=d)
            .map(|i| {
                (0..=d)
                    .map(|j| {
                        let v = s.p(i, j);
                        (v.is_exact().then(|| v.to_string()), v.float_value())
                    })
                    .collect()
            })
            .collect(),
        multiplicities: s.multiplicities().to_vec(),
        flip_classes: s.find_flip_classes(),
    }
}

/// Human-readable rendering of an analysis report: exact eigenvalues beside
/// floats, the periodicity verdict, and one line per certificate.
pub fn render_human(r: &AnalysisReport) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let g = &r.graph;
    let _ = writeln!(
        out,
        "graph {}: {} vertices, {} edges, {} arcs{}{}",
        g.name,
        g.vertices,
        g.edges,
        g.arcs,
        match g.regular {
            Some(k) => format!(", {k}-regular"),
            None => ", irregular".into(),
        },
        if g.bipartite { ", bipartite" } else { "" }
    );
    let _ = writeln!(out, "diameter {}", g.diameter);
    if let Some(arr) = &g.intersection_array {
        let _ = writeln!(out, "distance-regular with intersection array {arr}");
    }
    let _ = writeln!(out, "discriminant spectrum:");
    for e in &r.eigenvalues {
        let exact = e.exact.as_deref().unwrap_or("(unrecognized)");
        let _ = writeln!(
            out,
            "  {:>12}  float {:+.12}  multiplicity {}",
            exact, e.float, e.multiplicity
        );
    }
    match &r.periodicity {
        Periodicity::Periodic { exact } => {
            let _ = writeln!(
                out,
                "periodic{} with period {}",
                if *exact { "" } else { " (inexact decision)" },
                r.period.map_or("?".into(), |p| p.to_string())
            );
        }
        Periodicity::NotPeriodic { witness, exact } => {
            let _ = writeln!(
                out,
                "not periodic{}: witness eigenvalue {witness}",
                if *exact { "" } else { " (inexact decision)" }
            );
        }
        Periodicity::Undecided { witness } => {
            let _ = writeln!(
                out,
                "periodicity undecided: eigenvalue {witness} unrecognized"
            );
        }
    }
    let _ = writeln!(out, "route: {}", r.route);
    if r.certificates.is_empty() {
        let _ = writeln!(out, "no perfect state transfer");
    } else {
        for c in &r.certificates {
            let _ = writeln!(
                out,
                "perfect state transfer {} -> {} at time {} (route {}, residual {:.2e})",
                c.source,
                c.target,
                c.time,
                c.route.as_str(),
                c.residual
            );
        }
    }
    if let Some(o) = &r.oracle {
        let _ = writeln!(
            out,
            "oracle: {} ({} certificate(s) checked, sweep to tau={})",
            if o.pass { "PASS" } else { "FAIL" },
            o.checks.len(),
            o.tau_max
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph;

    #[test]
    fn analyze_johnson421() {
        let g = graph::johnson(4, 2, 1).unwrap();
        let r = analyze(&g, "johnson(4,2,1)", 64, true).unwrap();
        assert_eq!(r.period, Some(12));
        assert_eq!(r.certificates.len(), 6);
        assert!(r.certificates.iter().all(|c| c.time == 6));
        assert!(r.oracle.as_ref().unwrap().pass);
        assert!(r.scheme.is_some());
        let human = render_human(&r);
        assert!(human.contains("-1/2"), "{human}");
        assert!(human.contains("period 12"), "{human}");
    }

    #[test]
    fn analyze_petersen() {
        let g = graph::petersen().unwrap();
        let r = analyze(&g, "petersen", 64, true).unwrap();
        assert!(matches!(r.periodicity, Periodicity::NotPeriodic { .. }));
        assert_eq!(r.period, None);
        assert!(r.certificates.is_empty());
        assert!(r.oracle.as_ref().unwrap().pass);
        let human = render_human(&r);
        assert!(human.contains("witness eigenvalue 1/3"), "{human}");
    }

    #[test]
    fn report_json_is_deterministic() {
        let g = graph::cycle(6).unwrap();
        let a = serde_json::to_string(&analyze(&g, "cycle(6)", 64, true).unwrap()).unwrap();
        let b = serde_json::to_string(&analyze(&g, "cycle(6)", 64, true).unwrap()).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("\"schema\":\"grover-pst/analysis/v1\""));
    }
}
