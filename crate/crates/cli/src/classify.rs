//! The `classify` subcommand: sweep a family, print one verdict row per
//! parameter tuple, and confirm each constructible instance against the
//! brute-force oracle.

use clap::{Args, Subcommand};
use grover_pst::error::Error;
use grover_pst::graph::{self, Graph};
use grover_pst::walk::MAX_ARCS;
use grover_pst::{oracle, pst, spectra, walk};
use std::str::FromStr;

#[derive(Args)]
pub struct ClassifyArgs {
    #[command(subcommand)]
    family: Family,
}

#[derive(Subcommand)]
enum Family {
    /// Hamming classes H(d,q,i), i swept over 1..=d
    Hamming {
        /// Range of d, e.g. 1..6
        #[arg(long, default_value = "1..6")]
        d: RangeArg,
        /// Range of q, e.g. 2..3
        #[arg(long, default_value = "2..3")]
        q: RangeArg,
        #[command(flatten)]
        common: Common,
    },
    /// Johnson classes J(n,k,i), k <= n/2, i swept over 0..k
    Johnson {
        /// Largest n to sweep (from 2)
        #[arg(long = "n-max", default_value_t = 8)]
        n_max: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Cycles C_n
    Cycle {
        /// Range of n, e.g. 3..12
        #[arg(long, default_value = "3..12")]
        n: RangeArg,
        #[command(flatten)]
        common: Common,
    },
    /// Complete graphs K_n
    Complete {
        /// Range of n, e.g. 2..8
        #[arg(long, default_value = "2..8")]
        n: RangeArg,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// Emit the table as JSON
    #[arg(long)]
    json: bool,
    /// Skip the oracle confirmation column
    #[arg(long)]
    no_oracle: bool,
    /// Oracle sweep cap for aperiodic instances
    #[arg(long, default_value_t = 64)]
    tau_max: usize,
}

/// Inclusive range "a..b", or a single number.
#[derive(Clone)]
pub struct RangeArg {
    lo: usize,
    hi: usize,
}

impl RangeArg {
    fn iter(&self) -> impl Iterator<Item = usize> {
        self.lo..=self.hi
    }
}

impl FromStr for RangeArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |x: &str| {
            x.parse::<usize>()
                .map_err(|e| format!("bad range bound {x:?}: {e}"))
        };
        match s.split_once("..") {
            Some((a, b)) => {
                let (lo, hi) = (parse(a)?, parse(b)?);
                if lo > hi {
                    return Err(format!("empty range {s:?}"));
                }
                Ok(RangeArg { lo, hi })
            }
            None => {
                let v = parse(s)?;
                Ok(RangeArg { lo: v, hi: v })
            }
        }
    }
}

struct Row {
    params: Vec<(&'static str, usize)>,
    pst: bool,
    tau: Option<usize>,
    oracle: String,
}

pub fn run(args: ClassifyArgs) -> Result<(), Error> {
    match args.family {
        Family::Hamming { d, q, common } => {
            let mut rows = Vec::new();
            for dv in d.iter() {
                for qv in q.iter() {
                    for iv in 1..=dv {
                        let tau = pst::classify_hamming(dv, qv, iv)?;
                        let oracle = confirm(
                            &common,
                            graph::hamming(dv, qv, iv),
                            tau,
                        );
                        rows.push(Row {
                            params: vec![("d", dv), ("q", qv), ("i", iv)],
                            pst: tau.is_some(),
                            tau,
                            oracle,
                        });
                    }
                }
            }
            emit("hamming", &rows, &common);
        }
        Family::Johnson { n_max, common } => {
            let mut rows = Vec::new();
            for n in 2..=n_max {
                for k in 1..=(n / 2) {
                    for i in 0..k {
                        let tau = pst::classify_johnson(n, k, i)?;
                        let oracle = confirm(&common, graph::johnson(n, k, i), tau);
                        rows.push(Row {
                            params: vec![("n", n), ("k", k), ("i", i)],
                            pst: tau.is_some(),
                            tau,
                            oracle,
                        });
                    }
                }
            }
            emit("johnson", &rows, &common);
        }
        Family::Cycle { n, common } => {
            let mut rows = Vec::new();
            for nv in n.iter() {
                let tau = if nv >= 3 && nv % 2 == 0 { Some(nv / 2) } else { None };
                let oracle = confirm(&common, graph::cycle(nv), tau);
                rows.push(Row {
                    params: vec![("n", nv)],
                    pst: tau.is_some(),
                    tau,
                    oracle,
                });
            }
            emit("cycle", &rows, &common);
        }
        Family::Complete { n, common } => {
            let mut rows = Vec::new();
            for nv in n.iter() {
                let tau = if nv == 2 { Some(1) } else { None };
                let oracle = confirm(&common, graph::complete(nv), tau);
                rows.push(Row {
                    params: vec![("n", nv)],
                    pst: tau.is_some(),
                    tau,
                    oracle,
                });
            }
            emit("complete", &rows, &common);
        }
    }
    Ok(())
}

/// Run the analytic search plus the brute-force sweep on a constructible
/// instance and compare both against the closed-form verdict.
fn confirm(common: &Common, built: Result<Graph, Error>, expected_tau: Option<usize>) -> String {
    if common.no_oracle {
        return "-".into();
    }
    let g = match built {
        Ok(g) => g,
        Err(Error::Capacity { .. }) => return "skipped (over capacity)".into(),
        Err(e) => return format!("skipped ({e})"),
    };
    if !g.is_connected() {
        return "skipped (disconnected)".into();
    }
    if 2 * g.edge_count() > MAX_ARCS {
        return "skipped (over capacity)".into();
    }
    match confirm_inner(&g, expected_tau, common.tau_max) {
        Ok(true) => "confirmed".into(),
        Ok(false) => "MISMATCH".into(),
        Err(e) => format!("skipped ({e})"),
    }
}

fn confirm_inner(g: &Graph, expected_tau: Option<usize>, cap: usize) -> Result<bool, Error> {
    let search = pst::pst_search_with(g, cap)?;
    // analytic verdict must match the closed form, including the time
    let analytic_ok = match expected_tau {
        Some(tau) => {
            !search.certificates.is_empty() && search.certificates.iter().all(|c| c.time == tau)
        }
        None => search.certificates.is_empty(),
    };
    if !analytic_ok {
        return Ok(false);
    }
    // brute force must reproduce the certificate set exactly
    let w = walk::build_walk(g)?;
    let ds = spectra::discriminant_spectrum(&w)?;
    let us = spectra::u_spectrum(&w, &ds);
    let tau_max = spectra::period(&us).unwrap_or(cap);
    let hits = oracle::brute_force_pst(&w, tau_max, oracle::PST_THRESHOLD)?;
    let mut analytic: Vec<(usize, usize, usize)> = search
        .certificates
        .iter()
        .map(|c| (c.source, c.target, c.time))
        .collect();
    analytic.sort_unstable();
    let brute: Vec<(usize, usize, usize)> =
        hits.iter().map(|h| (h.source, h.target, h.time)).collect();
    Ok(analytic == brute)
}

fn emit(family: &str, rows: &[Row], common: &Common) {
    if common.json {
        let json_rows: Vec<serde_json::Value> = rows
            .iter()
            .map(|r| {
                let params: serde_json::Map<String, serde_json::Value> = r
                    .params
                    .iter()
                    .map(|(k, v)| (k.to_string(), serde_json::json!(v)))
                    .collect();
                serde_json::json!({
                    "params": params,
                    "pst": r.pst,
                    "tau": r.tau,
                    "oracle": if common.no_oracle { serde_json::Value::Null } else { serde_json::json!(r.oracle) },
                })
            })
            .collect();
        let doc = serde_json::json!({
            "schema": "grover-pst/classification/v1",
            "family": family,
            "rows": json_rows,
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("table serializes"));
        return;
    }
    let headers: Vec<&str> = rows
        .first()
        .map(|r| r.params.iter().map(|(k, _)| *k).collect())
        .unwrap_or_default();
    print!("{:>4}", headers.first().copied().unwrap_or("n"));
    for h in headers.iter().skip(1) {
        print!(" {h:>4}");
    }
    println!("  {:>4} {:>5}  {}", "pst", "tau", "oracle");
    for r in rows {
        for (i, (_, v)) in r.params.iter().enumerate() {
            if i == 0 {
                print!("{v:>4}");
            } else {
                print!(" {v:>4}");
            }
        }
        println!(
            "  {:>4} {:>5}  {}",
            if r.pst { "yes" } else { "no" },
            r.tau.map_or("-".into(), |t| t.to_string()),
            r.oracle
        );
    }
}
