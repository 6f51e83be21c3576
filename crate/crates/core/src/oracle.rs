//! Brute-force verification: evolve U directly (matrix-free, no
//! eigendecomposition anywhere) and measure fidelities between vertex-type
//! states. This is the independent oracle every analytic verdict is checked
//! against.

use crate::error::Result;
use crate::pst::PstCertificate;
use crate::spectra;
use crate::walk::WalkOperators;
use rayon::prelude::*;
use serde::Serialize;
use std::io::Write;

/// Fidelity threshold separating perfect transfer from pretty-good transfer.
pub const PST_THRESHOLD: f64 = 1.0 - 1e-8;

/// |<U^tau Φ_u, Φ_v>| by tau applications of U to Φ_u.
pub fn fidelity(w: &WalkOperators, u: usize, v: usize, tau: usize) -> Result<f64> {
    let mut state = w.vertex_state(u)?;
    if v >= w.vertex_count() {
        return Err(crate::error::Error::VertexOutOfRange {
            index: v,
            n: w.vertex_count(),
        });
    }
    for _ in 0..tau {
        state = w.apply_u(&state);
    }
    Ok(w.apply_n(&state)[v].abs())
}

/// Per-time fidelities from one source to every target.
#[derive(Debug, Clone, Serialize)]
pub struct FidelityTrace {
    pub source: usize,
    pub times: Vec<usize>,
    /// fidelities[t][v] = |<U^t Φ_source, Φ_v>|.
    pub fidelities: Vec<Vec<f64>>,
}

/// Evolve Φ_u for times 0..=tau_max, recording overlaps with every
/// vertex-type state.
pub fn fidelity_trace(w: &WalkOperators, source: usize, tau_max: usize) -> Result<FidelityTrace> {
    let mut state = w.vertex_state(source)?;
    let mut times = Vec::with_capacity(tau_max + 1);
    let mut fidelities = Vec::with_capacity(tau_max + 1);
    for t in 0..=tau_max {
        if t > 0 {
            state = w.apply_u(&state);
        }
        times.push(t);
        fidelities.push(w.apply_n(&state).iter().map(|x| x.abs()).collect());
    }
    Ok(FidelityTrace {
        source,
        times,
        fidelities,
    })
}

/// Write a trace as CSV with columns `t, v, fidelity`.
pub fn write_trace_csv(trace: &FidelityTrace, out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "t,v,fidelity")?;
    for (ti, &t) in trace.times.iter().enumerate() {
        for (v, f) in trace.fidelities[ti].iter().enumerate() {
            writeln!(out, "{t},{v},{f}")?;
        }
    }
    Ok(())
}

/// A brute-force transfer hit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransferHit {
    pub source: usize,
    pub target: usize,
    pub time: usize,
    pub fidelity: f64,
}

/// All ordered pairs (u,v), u != v, and times 1..=tau_max with fidelity at
/// least `threshold`, by direct powering. Sources run in parallel.
pub fn brute_force_pst(
    w: &WalkOperators,
    tau_max: usize,
    threshold: f64,
) -> Result<Vec<TransferHit>> {
    let n = w.vertex_count();
    let mut hits: Vec<TransferHit> = (0..n)
        .into_par_iter()
        .map(|u| {
            let mut local = Vec::new();
            let mut state = w.vertex_state(u).expect("valid source");
            for t in 1..=tau_max {
                state = w.apply_u(&state);
                let overlaps = w.apply_n(&state);
                for (v, overlap) in overlaps.iter().enumerate() {
                    if v != u && overlap.abs() >= threshold {
                        local.push(TransferHit {
                            source: u,
                            target: v,
                            time: t,
                            fidelity: overlap.abs(),
                        });
                    }
                }
            }
            local
        })
        .flatten()
        .collect();
    hits.sort_by(|a, b| (a.source, a.target, a.time).cmp(&(b.source, b.target, b.time)));
    Ok(hits)
}

/// One certificate re-checked by the oracle.
#[derive(Debug, Clone, Serialize)]
pub struct CertificateCheck {
    pub source: usize,
    pub target: usize,
    pub time: usize,
    pub fidelity: f64,
    pub pass: bool,
}

/// Outcome of oracle verification: every certificate re-evaluated, plus the
/// converse sweep (no transfer the analytic set missed).
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub pass: bool,
    pub checks: Vec<CertificateCheck>,
    /// Brute-force hits with no matching certificate.
    pub unexplained: Vec<TransferHit>,
    /// Certificates the brute-force sweep did not reproduce.
    pub unconfirmed: Vec<CertificateCheck>,
    /// Time horizon of the converse sweep.
    pub tau_max: usize,
}

/// Verify certificates by direct evolution and sweep for missed transfers.
///
/// The converse sweep runs to the graph's period when one exists (recurrence
/// starts past it) and to `cap` otherwise.
pub fn verify_certificates(
    certs: &[PstCertificate],
    w: &WalkOperators,
    cap: usize,
) -> Result<VerificationReport> {
    verify_certificates_with_threshold(certs, w, cap, PST_THRESHOLD)
}

pub fn verify_certificates_with_threshold(
    certs: &[PstCertificate],
    w: &WalkOperators,
    cap: usize,
    threshold: f64,
) -> Result<VerificationReport> {
    let ds = spectra::discriminant_spectrum(w)?;
    let us = spectra::u_spectrum(w, &ds);
    let tau_max = spectra::period(&us).unwrap_or(cap);

    let checks: Vec<CertificateCheck> = certs
        .iter()
        .map(|c| {
            let f = fidelity(w, c.source, c.target, c.time)?;
            Ok(CertificateCheck {
                source: c.source,
                target: c.target,
                time: c.time,
                fidelity: f,
                pass: f >= threshold,
            })
        })
        .collect::<Result<_>>()?;

    let hits = brute_force_pst(w, tau_max, threshold)?;
    let cert_keys: Vec<(usize, usize, usize)> =
        certs.iter().map(|c| (c.source, c.target, c.time)).collect();
    let unexplained: Vec<TransferHit> = hits
        .iter()
        .filter(|h| !cert_keys.contains(&(h.source, h.target, h.time)))
        .cloned()
        .collect();
    let hit_keys: Vec<(usize, usize, usize)> =
        hits.iter().map(|h| (h.source, h.target, h.time)).collect();
    let unconfirmed: Vec<CertificateCheck> = checks
        .iter()
        .filter(|c| !hit_keys.contains(&(c.source, c.target, c.time)))
        .cloned()
        .collect();

    let pass =
        checks.iter().all(|c| c.pass) && unexplained.is_empty() && unconfirmed.is_empty();
    Ok(VerificationReport {
        pass,
        checks,
        unexplained,
        unconfirmed,
        tau_max,
    })
}
