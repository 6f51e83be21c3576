//! Discriminant spectra with exact eigenvalue recognition, the lift to the
//! time-evolution spectrum, and periodicity decisions.

use crate::algebraic::{self, AlgebraicValue};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::walk::{WalkOperators, MAX_DENSE_ARCS};
use crate::MatF;
use nalgebra::DMatrix;
use num_integer::Integer;
use num_rational::Rational64;
use serde::Serialize;

/// Eigenvalues closer than this are treated as one eigenspace.
pub const CLUSTER_TOL: f64 = 1e-8;

/// One eigenspace of the discriminant.
#[derive(Debug, Clone)]
pub struct SpectrumEntry {
    pub value: AlgebraicValue,
    pub multiplicity: usize,
    pub projector: MatF,
}

/// Spectral decomposition of P, eigenvalues strictly decreasing.
#[derive(Debug, Clone)]
pub struct DiscriminantSpectrum {
    pub entries: Vec<SpectrumEntry>,
}

impl DiscriminantSpectrum {
    pub fn distinct_count(&self) -> usize {
        self.entries.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    pub fn values(&self) -> Vec<&AlgebraicValue> {
        self.entries.iter().map(|e| &e.value).collect()
    }

    /// Σ h(μ_j) E_j for the float shadow of per-eigenvalue values.
    pub fn assemble(&self, h: impl Fn(&AlgebraicValue) -> f64) -> MatF {
        let n = self.entries[0].projector.rows();
        let mut out = Matrix::zeros(n, n);
        for e in &self.entries {
            out = out.add(&e.projector.scale(&h(&e.value)));
        }
        out
    }
}

/// Symmetric eigendecomposition of the discriminant, clustered at
/// [`CLUSTER_TOL`] and snapped to exact forms.
pub fn discriminant_spectrum(w: &WalkOperators) -> Result<DiscriminantSpectrum> {
    let p = w.discriminant();
    let n = p.rows();
    let dm = DMatrix::from_fn(n, n, |i, j| p[(i, j)]);
    let eig = nalgebra::SymmetricEigen::try_new(dm, 1e-13, 10_000)
        .ok_or_else(|| Error::Eigensolver("symmetric QR did not converge".into()))?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].partial_cmp(&eig.eigenvalues[i]).unwrap());

    let valency = w.graph().regularity();
    let mut entries: Vec<SpectrumEntry> = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n
            && (eig.eigenvalues[order[end - 1]] - eig.eigenvalues[order[end]]).abs() <= CLUSTER_TOL
        {
            end += 1;
        }
        let cluster = &order[start..end];
        let mean: f64 =
            cluster.iter().map(|&i| eig.eigenvalues[i]).sum::<f64>() / cluster.len() as f64;
        let mut projector = Matrix::zeros(n, n);
        for &ci in cluster {
            let v = eig.eigenvectors.column(ci);
            for i in 0..n {
                for j in 0..n {
                    projector[(i, j)] += v[i] * v[j];
                }
            }
        }
        entries.push(SpectrumEntry {
            value: algebraic::snap(mean, valency),
            multiplicity: cluster.len(),
            projector,
        });
        start = end;
    }

    // connected graphs have top eigenvalue exactly 1
    if !entries[0].value.is_one() {
        return Err(Error::Eigensolver(format!(
            "largest discriminant eigenvalue snapped to {} instead of 1",
            entries[0].value
        )));
    }
    Ok(DiscriminantSpectrum { entries })
}

/// One point of the U spectrum: e^{iθ} with θ = angle_over_pi·π, θ in [0,2π).
#[derive(Debug, Clone)]
pub struct UPoint {
    /// θ/π when the underlying eigenvalue has a recognized angle.
    pub angle_over_pi: Option<Rational64>,
    pub angle: f64,
    pub multiplicity: usize,
}

/// The multiset of eigenvalues of U, as points on the unit circle, together
/// with the cycle rank b1 and the bipartite flag that control the inherited
/// ±1 multiplicities.
#[derive(Debug, Clone)]
pub struct USpectrum {
    pub points: Vec<UPoint>,
    pub b1: usize,
    pub bipartite: bool,
}

/// Lift the discriminant spectrum to the spectrum of U: each eigenvalue μ
/// with |μ| < 1 contributes the conjugate pair e^{±i arccos μ}, μ = ±1
/// contribute ±1 themselves, and the walk adds {1}^{b1} ∪ {-1}^{b1-1+1_B}.
pub fn u_spectrum(w: &WalkOperators, ds: &DiscriminantSpectrum) -> USpectrum {
    let g = w.graph();
    let b1 = g.edge_count() + 1 - g.vertex_count();
    let bipartite = g.is_bipartite();

    // angle_over_pi in [0,2), multiplicity
    let mut raw: Vec<(Option<Rational64>, f64, usize)> = Vec::new();
    for e in &ds.entries {
        let exact = e.value.angle_over_pi();
        if e.value.is_one() {
            raw.push((Some(Rational64::new(0, 1)), 0.0, e.multiplicity));
        } else if e.value.is_neg_one() {
            raw.push((Some(Rational64::new(1, 1)), 1.0, e.multiplicity));
        } else {
            let theta = e.value.float_value().clamp(-1.0, 1.0).acos() / std::f64::consts::PI;
            raw.push((exact, theta, e.multiplicity));
            raw.push((
                exact.map(|t| Rational64::from_integer(2) - t),
                2.0 - theta,
                e.multiplicity,
            ));
        }
    }
    if b1 > 0 {
        raw.push((Some(Rational64::new(0, 1)), 0.0, b1));
    }
    let minus_ones = b1 + usize::from(bipartite);
    if minus_ones >= 1 {
        // b1 - 1 + 1_B copies of -1
        raw.push((Some(Rational64::new(1, 1)), 1.0, minus_ones - 1));
    }

    // merge equal angles
    raw.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    let mut points: Vec<UPoint> = Vec::new();
    for (exact, angle, mult) in raw {
        if mult == 0 {
            continue;
        }
        match points.last_mut() {
            Some(last)
                if (last.angle - angle).abs() <= 1e-12
                    && last.angle_over_pi == exact =>
            {
                last.multiplicity += mult;
            }
            _ => points.push(UPoint {
                angle_over_pi: exact,
                angle,
                multiplicity: mult,
            }),
        }
    }
    USpectrum {
        points,
        b1,
        bipartite,
    }
}

impl USpectrum {
    pub fn total_multiplicity(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity).sum()
    }
}

/// Multiplicative order of e^{iπ·(p/q)}: the least k with k·p/q an even
/// integer.
fn unit_order(t: Rational64) -> usize {
    let p = *t.numer();
    let q = *t.denom();
    if p == 0 {
        return 1;
    }
    (2 * q / p.gcd(&(2 * q))) as usize
}

/// The period: lcm of the orders of the distinct U eigenvalues. `None` when
/// any angle is unrecognized (exactness is required; guessing a period would
/// poison the transfer search) or when some recognized point is not a root
/// of unity (cannot happen for rational angles, so `None` means
/// "unrecognized or aperiodic").
pub fn period(us: &USpectrum) -> Option<usize> {
    let mut acc: usize = 1;
    for p in &us.points {
        let t = p.angle_over_pi?;
        acc = acc.lcm(&unit_order(t));
    }
    Some(acc)
}

/// Outcome of the periodicity decision.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Periodicity {
    Periodic { exact: bool },
    NotPeriodic { witness: String, exact: bool },
    /// Some eigenvalue was left as a float; membership in the set of real
    /// parts of roots of unity is undecidable from a float alone.
    Undecided { witness: String },
}

impl Periodicity {
    pub fn is_periodic(&self) -> bool {
        matches!(self, Periodicity::Periodic { .. })
    }
}

/// Decide periodicity from the discriminant spectrum.
///
/// For regular graphs the decision is exact: every rational eigenvalue must
/// lie in {±1, ±1/2, 0}, every quadratic one in the eight-value surd table,
/// and everything else must be a recognized cos(pπ/q). Irregular graphs get
/// the same membership test at float precision, marked inexact.
pub fn is_periodic(ds: &DiscriminantSpectrum, regular: bool) -> Periodicity {
    if regular {
        let mut float_witness = None;
        for e in &ds.entries {
            match &e.value {
                AlgebraicValue::Float(_) => {
                    if float_witness.is_none() {
                        float_witness = Some(e.value.clone());
                    }
                }
                v => {
                    if v.angle_over_pi().is_none() {
                        return Periodicity::NotPeriodic {
                            witness: v.to_string(),
                            exact: true,
                        };
                    }
                }
            }
        }
        match float_witness {
            Some(w) => Periodicity::Undecided {
                witness: w.to_string(),
            },
            None => Periodicity::Periodic { exact: true },
        }
    } else {
        for e in &ds.entries {
            if e.value.angle_over_pi().is_none() {
                return Periodicity::NotPeriodic {
                    witness: e.value.to_string(),
                    exact: false,
                };
            }
        }
        Periodicity::Periodic { exact: false }
    }
}

/// Dense complex eigenvalues of U (for cross-checks); capped at
/// [`MAX_DENSE_ARCS`].
pub fn dense_u_eigenvalues(w: &WalkOperators) -> Result<Vec<(f64, f64)>> {
    if w.arc_count() > MAX_DENSE_ARCS {
        return Err(Error::Capacity {
            what: "dense arc matrix",
            got: w.arc_count(),
            cap: MAX_DENSE_ARCS,
        });
    }
    let u = w.u_matrix()?;
    let m = u.rows();
    let dm = DMatrix::from_fn(m, m, |i, j| u[(i, j)]);
    let mut vals: Vec<(f64, f64)> = dm
        .complex_eigenvalues()
        .iter()
        .map(|c| (c.re, c.im))
        .collect();
    vals.sort_by(|a, b| {
        let ta = a.1.atan2(a.0).rem_euclid(2.0 * std::f64::consts::PI);
        let tb = b.1.atan2(b.0).rem_euclid(2.0 * std::f64::consts::PI);
        ta.partial_cmp(&tb).unwrap()
    });
    Ok(vals)
}

/// Report row for one eigenvalue, as serialized in the spectrum report.
#[derive(Debug, Clone, Serialize)]
pub struct EigenvalueReport {
    /// Exact form as a string, absent for unrecognized floats.
    pub exact: Option<String>,
    pub float: f64,
    pub multiplicity: usize,
}

pub fn eigenvalue_reports(ds: &DiscriminantSpectrum) -> Vec<EigenvalueReport> {
    ds.entries
        .iter()
        .map(|e| EigenvalueReport {
            exact: e.value.is_exact().then(|| e.value.to_string()),
            float: e.value.float_value(),
            multiplicity: e.multiplicity,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph;
    use crate::walk::build_walk;
    use num_rational::Rational64;

    fn spectrum_of(g: &graph::Graph) -> (WalkOperators, DiscriminantSpectrum) {
        let w = build_walk(g).unwrap();
        let ds = discriminant_spectrum(&w).unwrap();
        (w, ds)
    }

    #[test]
    fn petersen_spectrum() {
        // independent oracle: A(Petersen) satisfies (A-3I)(A-I)(A+2I) = 0 with
        // integer arithmetic, and trace identities pin the multiplicities
        let g = graph::petersen().unwrap();
        let a = g.adjacency();
        let n = 10;
        let id = Matrix::<i64>::identity(n);
        let f1 = a.sub(&id.scale(&3));
        let f2 = a.sub(&id);
        let f3 = a.add(&id.scale(&2));
        let zero = f1.matmul(&f2).matmul(&f3);
        assert!(zero.data().iter().all(|&x| x == 0));
        // trace A = 0 = 3·1 + 1·m1 - 2·m2 and 1 + m1 + m2 = 10 force (5, 4)

        let (_, ds) = spectrum_of(&g);
        let vals: Vec<(String, usize)> = ds
            .entries
            .iter()
            .map(|e| (e.value.to_string(), e.multiplicity))
            .collect();
        assert_eq!(
            vals,
            vec![
                ("1".to_string(), 1),
                ("1/3".to_string(), 5),
                ("-2/3".to_string(), 4)
            ]
        );
    }

    #[test]
    fn johnson421_distinct_values() {
        let g = graph::johnson(4, 2, 1).unwrap();
        let (_, ds) = spectrum_of(&g);
        let vals: Vec<String> = ds.entries.iter().map(|e| e.value.to_string()).collect();
        assert_eq!(vals, vec!["1", "0", "-1/2"]);
    }

    #[test]
    fn cycle6_values_match_cosine_closed_form() {
        // cos(2πj/6) for j = 0..5, deduplicated: 1, 1/2, -1/2, -1
        let g = graph::cycle(6).unwrap();
        let (_, ds) = spectrum_of(&g);
        let vals: Vec<(String, usize)> = ds
            .entries
            .iter()
            .map(|e| (e.value.to_string(), e.multiplicity))
            .collect();
        assert_eq!(
            vals,
            vec![
                ("1".to_string(), 1),
                ("1/2".to_string(), 2),
                ("-1/2".to_string(), 2),
                ("-1".to_string(), 1)
            ]
        );
    }

    #[test]
    fn spectral_reconstruction_and_projector_identities() {
        for g in [
            graph::cycle(5).unwrap(),
            graph::petersen().unwrap(),
            graph::johnson(4, 2, 1).unwrap(),
            graph::Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 2)], None).unwrap(),
        ] {
            let (w, ds) = spectrum_of(&g);
            let n = g.vertex_count();
            // Σ m_j = n
            assert_eq!(ds.vertex_count(), n);
            // Σ E_j = I
            let sum = ds.assemble(|_| 1.0);
            assert!(sum.max_abs_diff_identity() < 1e-9);
            // Σ μ_j E_j = P
            let p = ds.assemble(|v| v.float_value());
            assert!(p.max_abs_diff(w.discriminant()) < 1e-9);
            // E_i E_j = δ_ij E_j
            for i in 0..ds.entries.len() {
                for j in 0..ds.entries.len() {
                    let prod = ds.entries[i].projector.matmul(&ds.entries[j].projector);
                    let target = if i == j {
                        ds.entries[j].projector.clone()
                    } else {
                        Matrix::zeros(n, n)
                    };
                    assert!(prod.max_abs_diff(&target) < 1e-9);
                }
            }
            // eigenvector D^{1/2}·1 sits in the top eigenspace
            let dsqrt: Vec<f64> = (0..n).map(|u| (g.degree(u) as f64).sqrt()).collect();
            let projected = ds.entries[0].projector.matvec(&dsqrt);
            for (a, b) in projected.iter().zip(&dsqrt) {
                assert!((a - b).abs() < 1e-9);
            }
            // strictly decreasing
            for w2 in ds.entries.windows(2) {
                assert!(w2[0].value.float_value() > w2[1].value.float_value());
            }
        }
    }

    #[test]
    fn u_spectrum_cycle4() {
        let g = graph::cycle(4).unwrap();
        let (w, ds) = spectrum_of(&g);
        let us = u_spectrum(&w, &ds);
        assert_eq!(us.b1, 1);
        assert!(us.bipartite);
        assert_eq!(us.total_multiplicity(), 8);
        let expect = [
            (Rational64::new(0, 1), 2usize),  // 1
            (Rational64::new(1, 2), 2),       // i
            (Rational64::new(1, 1), 2),       // -1
            (Rational64::new(3, 2), 2),       // -i
        ];
        assert_eq!(us.points.len(), 4);
        for (p, (t, m)) in us.points.iter().zip(expect) {
            assert_eq!(p.angle_over_pi, Some(t));
            assert_eq!(p.multiplicity, m);
        }
    }

    #[test]
    fn u_spectrum_k2() {
        let g = graph::complete(2).unwrap();
        let (w, ds) = spectrum_of(&g);
        let us = u_spectrum(&w, &ds);
        assert_eq!(us.b1, 0);
        assert!(us.bipartite);
        assert_eq!(us.total_multiplicity(), 2);
        let ts: Vec<Option<Rational64>> = us.points.iter().map(|p| p.angle_over_pi).collect();
        assert_eq!(
            ts,
            vec![Some(Rational64::new(0, 1)), Some(Rational64::new(1, 1))]
        );
    }

    #[test]
    fn u_spectrum_matches_dense_eigenvalues() {
        for g in [
            graph::cycle(4).unwrap(),
            graph::cycle(5).unwrap(),
            graph::cycle(6).unwrap(),
            graph::complete(4).unwrap(),
            graph::petersen().unwrap(),
            graph::johnson(4, 2, 1).unwrap(),
            graph::complete_multipartite(&[2, 2, 2]).unwrap(),
            graph::Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 2)], None).unwrap(),
        ] {
            let (w, ds) = spectrum_of(&g);
            let us = u_spectrum(&w, &ds);
            assert_eq!(us.total_multiplicity(), w.arc_count());
            let dense = dense_u_eigenvalues(&w).unwrap();
            // expand analytic points into a sorted-by-angle multiset
            let mut analytic: Vec<(f64, f64)> = Vec::new();
            for p in &us.points {
                let theta = p.angle * std::f64::consts::PI;
                for _ in 0..p.multiplicity {
                    analytic.push((theta.cos(), theta.sin()));
                }
            }
            assert_eq!(analytic.len(), dense.len());
            for ((ar, ai), (dr, di)) in analytic.iter().zip(&dense) {
                assert!(
                    (ar - dr).abs() < 1e-8 && (ai - di).abs() < 1e-8,
                    "analytic ({ar},{ai}) vs dense ({dr},{di})"
                );
            }
        }
    }

    #[test]
    fn periodicity_decisions() {
        // Petersen: witness 1/3
        let g = graph::petersen().unwrap();
        let (_, ds) = spectrum_of(&g);
        match is_periodic(&ds, true) {
            Periodicity::NotPeriodic { witness, exact } => {
                assert_eq!(witness, "1/3");
                assert!(exact);
            }
            other => panic!("unexpected verdict {other:?}"),
        }

        // cycle(6) and johnson(4,2,1): periodic
        for g in [graph::cycle(6).unwrap(), graph::johnson(4, 2, 1).unwrap()] {
            let (_, ds) = spectrum_of(&g);
            assert_eq!(is_periodic(&ds, true), Periodicity::Periodic { exact: true });
        }
    }

    #[test]
    fn periods() {
        let cases = [
            (graph::cycle(4).unwrap(), Some(4)),
            (graph::cycle(6).unwrap(), Some(6)),
            (graph::cycle(5).unwrap(), Some(5)),
            (graph::johnson(4, 2, 1).unwrap(), Some(12)),
            (graph::complete_multipartite(&[2, 2, 2]).unwrap(), Some(12)),
            (graph::complete(2).unwrap(), Some(2)),
            (graph::petersen().unwrap(), None), // arccos(1/3)/π irrational
        ];
        for (g, expect) in cases {
            let (w, ds) = spectrum_of(&g);
            let us = u_spectrum(&w, &ds);
            assert_eq!(period(&us), expect, "{:?}", g.labels());
        }
    }

    #[test]
    fn period_verified_against_dense_powers() {
        // analytic period k: ‖U^k - I‖ ≤ 1e-8 and no smaller j works
        for g in [
            graph::cycle(4).unwrap(),
            graph::cycle(6).unwrap(),
            graph::complete_multipartite(&[2, 2, 2]).unwrap(),
            graph::hamming(2, 2, 1).unwrap(),
        ] {
            let (w, ds) = spectrum_of(&g);
            let us = u_spectrum(&w, &ds);
            let k = period(&us).unwrap();
            let u = w.u_matrix().unwrap();
            let mut upow = Matrix::identity(w.arc_count());
            for j in 1..=k {
                upow = u.matmul(&upow);
                let dist = upow.max_abs_diff_identity();
                if j < k {
                    assert!(dist > 1e-4, "U^{j} unexpectedly close to I");
                } else {
                    assert!(dist <= 1e-8, "U^{k} not I (dist {dist})");
                }
            }
        }
    }
}
