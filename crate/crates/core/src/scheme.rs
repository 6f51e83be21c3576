//! Association schemes: axioms, idempotents, eigenvalue tables, and flip
//! classes with their sign partitions.

use crate::algebraic::{self, AlgebraicValue};
use crate::error::{Error, Result};
use crate::graph::{self, Graph};
use crate::matrix::Matrix;
use crate::{MatF, MatInt};
use nalgebra::DMatrix;
use num_rational::BigRational;
use serde::Serialize;

/// First violated axiom, in the order they are checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    /// A_0 is not the identity.
    FirstClassNotIdentity,
    /// The classes do not sum to the all-ones matrix.
    SumNotAllOnes,
    /// Class `i` is not symmetric.
    NotSymmetric(usize),
    /// Some entry of class `i` is outside {0,1}.
    NotZeroOne(usize),
    /// A_i · A_j falls outside the span of the classes.
    ProductNotInSpan(usize, usize),
}

impl std::fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AxiomViolation::FirstClassNotIdentity => write!(f, "A_0 != I"),
            AxiomViolation::SumNotAllOnes => write!(f, "sum of classes != J"),
            AxiomViolation::NotSymmetric(i) => write!(f, "A_{i} not symmetric"),
            AxiomViolation::NotZeroOne(i) => write!(f, "A_{i} has entries outside {{0,1}}"),
            AxiomViolation::ProductNotInSpan(i, j) => {
                write!(f, "A_{i}·A_{j} not in the span of the classes")
            }
        }
    }
}

/// Check the association-scheme axioms; `Ok(None)` means all hold. The
/// closure axiom is decided exactly: products of 0/1 integer matrices are
/// expanded in the class basis (classes have disjoint supports once the sum
/// axiom holds) and compared entrywise.
pub fn verify_scheme(classes: &[MatInt]) -> Result<Option<AxiomViolation>> {
    if classes.is_empty() {
        return Err(Error::DimensionMismatch("no classes".into()));
    }
    let n = classes[0].rows();
    for (i, a) in classes.iter().enumerate() {
        if a.rows() != n || a.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "class {i} is {}x{}, expected {n}x{n}",
                a.rows(),
                a.cols()
            )));
        }
    }
    for (i, a) in classes.iter().enumerate() {
        if a.data().iter().any(|&x| x != 0 && x != 1) {
            return Ok(Some(AxiomViolation::NotZeroOne(i)));
        }
    }
    if classes[0] != Matrix::identity(n) {
        return Ok(Some(AxiomViolation::FirstClassNotIdentity));
    }
    let mut sum = Matrix::<i64>::zeros(n, n);
    for a in classes {
        sum = sum.add(a);
    }
    if sum != Matrix::from_fn(n, n, |_, _| 1) {
        return Ok(Some(AxiomViolation::SumNotAllOnes));
    }
    for (i, a) in classes.iter().enumerate() {
        if !a.is_symmetric() {
            return Ok(Some(AxiomViolation::NotSymmetric(i)));
        }
    }
    // representative position of each class (supports are disjoint and cover)
    let reps: Vec<(usize, usize)> = classes
        .iter()
        .map(|a| {
            for u in 0..n {
                for v in 0..n {
                    if a[(u, v)] == 1 {
                        return (u, v);
                    }
                }
            }
            unreachable!("class with empty support cannot sum to J")
        })
        .collect();
    for i in 0..classes.len() {
        for j in 0..classes.len() {
            let prod = classes[i].matmul(&classes[j]);
            let mut recon = Matrix::<i64>::zeros(n, n);
            for (k, a) in classes.iter().enumerate() {
                let coeff = prod[reps[k]];
                recon = recon.add(&a.scale(&coeff));
            }
            if recon != prod {
                return Ok(Some(AxiomViolation::ProductNotInSpan(i, j)));
            }
        }
    }
    Ok(None)
}

/// An association scheme with idempotents and its eigenvalue table.
///
/// Idempotents are sorted by the eigenvalue vector (p_1(j), ..., p_d(j)) in
/// decreasing lexicographic order, which puts E_0 = J/n first and matches the
/// natural (Krawtchouk / Johnson) index on the Hamming and Johnson schemes.
#[derive(Debug, Clone)]
pub struct AssociationScheme {
    classes: Vec<MatInt>,
    idempotents: Vec<MatF>,
    /// p_table[i][j] = p_i(j), exact when recognized.
    p_table: Vec<Vec<AlgebraicValue>>,
    multiplicities: Vec<usize>,
}

impl AssociationScheme {
    /// Build from verified classes by simultaneous diagonalization of a
    /// seeded random linear combination, retrying with a fresh seed on
    /// degenerate clustering.
    pub fn from_classes(classes: Vec<MatInt>) -> Result<Self> {
        if let Some(violation) = verify_scheme(&classes)? {
            return Err(Error::SchemeHypothesis(format!(
                "classes are not an association scheme: {violation}"
            )));
        }
        let n = classes[0].rows();
        let d = classes.len() - 1;

        let mut last_err = String::new();
        for attempt in 0..8u64 {
            let idempotents = match simultaneous_idempotents(&classes, attempt) {
                Ok(e) => e,
                Err(e) => {
                    last_err = e.to_string();
                    continue;
                }
            };
            if idempotents.len() != d + 1 {
                last_err = format!(
                    "combination produced {} eigenspaces, scheme needs {}",
                    idempotents.len(),
                    d + 1
                );
                continue;
            }
            match Self::assemble(&classes, idempotents, n) {
                Ok(s) => return Ok(s),
                Err(e) => last_err = e.to_string(),
            }
        }
        Err(Error::Eigensolver(format!(
            "simultaneous diagonalization failed after 8 seeds: {last_err}"
        )))
    }

    fn assemble(classes: &[MatInt], mut idempotents: Vec<MatF>, n: usize) -> Result<Self> {
        let d = classes.len() - 1;
        // float eigenvalue vectors per idempotent, then verify A_i E = p E
        let mut rows: Vec<(Vec<f64>, MatF)> = Vec::with_capacity(idempotents.len());
        for e in idempotents.drain(..) {
            let trace_e: f64 = (0..n).map(|i| e[(i, i)]).sum();
            let mut ps = Vec::with_capacity(d + 1);
            for a in classes {
                let af = a.map(|&x| x as f64);
                let ae = af.matmul(&e);
                let trace_ae: f64 = (0..n).map(|i| ae[(i, i)]).sum();
                let p = trace_ae / trace_e;
                if ae.max_abs_diff(&e.scale(&p)) > 1e-9 {
                    return Err(Error::Eigensolver(format!(
                        "A_i E_j != p E_j at residual {}",
                        ae.max_abs_diff(&e.scale(&p))
                    )));
                }
                ps.push(p);
            }
            rows.push((ps, e));
        }
        // sort by (p_1, ..., p_d) decreasing lexicographic
        rows.sort_by(|a, b| {
            for i in 1..a.0.len() {
                match b.0[i].partial_cmp(&a.0[i]).unwrap() {
                    std::cmp::Ordering::Equal => continue,
                    other => return other,
                }
            }
            std::cmp::Ordering::Equal
        });

        let idempotents: Vec<MatF> = rows.iter().map(|(_, e)| e.clone()).collect();
        let p_float: Vec<Vec<f64>> = rows.iter().map(|(p, _)| p.clone()).collect();

        // E_0 must be J/n
        let jn = Matrix::from_fn(n, n, |_, _| 1.0 / n as f64);
        if idempotents[0].max_abs_diff(&jn) > 1e-9 {
            return Err(Error::Eigensolver("leading idempotent is not J/n".into()));
        }

        let multiplicities: Vec<usize> = idempotents
            .iter()
            .map(|e| {
                let t: f64 = (0..n).map(|i| e[(i, i)]).sum();
                t.round() as usize
            })
            .collect();
        if multiplicities[0] != 1 || multiplicities.iter().sum::<usize>() != n {
            return Err(Error::Eigensolver(
                "idempotent ranks do not sum to the point count".into(),
            ));
        }

        // exact snaps: the scheme eigenvalues that drive decisions are
        // integers or small rationals; anything else stays a float
        let p_table: Vec<Vec<AlgebraicValue>> = (0..=d)
            .map(|i| (0..=d).map(|j| algebraic::snap(p_float[j][i], None)).collect())
            .collect();

        Ok(AssociationScheme {
            classes: classes.to_vec(),
            idempotents,
            p_table,
            multiplicities,
        })
    }

    pub fn class_count(&self) -> usize {
        self.classes.len() - 1
    }

    pub fn point_count(&self) -> usize {
        self.classes[0].rows()
    }

    pub fn classes(&self) -> &[MatInt] {
        &self.classes
    }

    pub fn idempotents(&self) -> &[MatF] {
        &self.idempotents
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// p_i(j): eigenvalue of A_i on E_j.
    pub fn p(&self, i: usize, j: usize) -> &AlgebraicValue {
        &self.p_table[i][j]
    }

    /// Expand a 0/1 adjacency matrix in the class basis: the subset of class
    /// indices whose union is the matrix, when it lies in the span.
    pub fn class_support(&self, a: &MatInt) -> Option<Vec<usize>> {
        let n = self.point_count();
        if a.rows() != n || a.cols() != n {
            return None;
        }
        let mut support = Vec::new();
        let mut recon = Matrix::<i64>::zeros(n, n);
        for (k, class) in self.classes.iter().enumerate() {
            let mut coeff = None;
            'outer: for u in 0..n {
                for v in 0..n {
                    if class[(u, v)] == 1 {
                        coeff = Some(a[(u, v)]);
                        break 'outer;
                    }
                }
            }
            if coeff == Some(1) {
                support.push(k);
                recon = recon.add(class);
            }
        }
        (&recon == a).then_some(support)
    }

    /// Flip classes: classes that are fixed-point-free symmetric permutation
    /// matrices, each with its sign partition (tolerance 1e-9 for unsnapped
    /// entries, exact when the p-table entry snapped to ±1).
    pub fn find_flip_classes(&self) -> Vec<FlipClass> {
        let n = self.point_count();
        let d = self.class_count();
        let mut out = Vec::new();
        for ell in 1..=d {
            let a = &self.classes[ell];
            let is_perm = (0..n).all(|u| a.row(u).iter().sum::<i64>() == 1);
            if !is_perm {
                continue;
            }
            let pairing: Vec<usize> = (0..n)
                .map(|u| a.row(u).iter().position(|&x| x == 1).unwrap())
                .collect();
            let mut plus = Vec::new();
            let mut minus = Vec::new();
            let mut ok = true;
            for j in 0..=d {
                match self.p(ell, j) {
                    v if v.is_one() => plus.push(j),
                    v if v.is_neg_one() => minus.push(j),
                    v => {
                        let f = v.float_value();
                        if (f - 1.0).abs() <= 1e-9 {
                            plus.push(j);
                        } else if (f + 1.0).abs() <= 1e-9 {
                            minus.push(j);
                        } else {
                            ok = false;
                        }
                    }
                }
            }
            debug_assert!(ok, "flip class with eigenvalue other than ±1");
            if ok {
                out.push(FlipClass {
                    class_index: ell,
                    pairing,
                    plus,
                    minus,
                });
            }
        }
        out
    }
}

/// A scheme class that is a fixed-point-free involution, with the partition
/// of idempotent indices by the sign of B E_j = ±E_j.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlipClass {
    pub class_index: usize,
    /// Image of each point under the involution.
    pub pairing: Vec<usize>,
    /// Indices j with B E_j = +E_j (always contains 0).
    pub plus: Vec<usize>,
    /// Indices j with B E_j = -E_j.
    pub minus: Vec<usize>,
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Eigenprojectors of Σ c_i A_i for seeded random c_i; commuting symmetric
/// classes share these eigenspaces with probability 1.
fn simultaneous_idempotents(classes: &[MatInt], attempt: u64) -> Result<Vec<MatF>> {
    let n = classes[0].rows();
    let mut state = 0x5eed_0000 + attempt;
    let coeffs: Vec<f64> = (0..classes.len())
        .map(|_| 0.5 + (splitmix64(&mut state) >> 11) as f64 / (1u64 << 53) as f64)
        .collect();
    let mut combo = Matrix::<f64>::zeros(n, n);
    for (c, a) in coeffs.iter().zip(classes).skip(1) {
        combo = combo.add(&a.map(|&x| x as f64 * c));
    }
    let dm = DMatrix::from_fn(n, n, |i, j| combo[(i, j)]);
    let eig = nalgebra::SymmetricEigen::try_new(dm, 1e-13, 50_000)
        .ok_or_else(|| Error::Eigensolver("symmetric QR did not converge".into()))?;
    let scale = eig.eigenvalues.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let tol = 1e-8 * scale;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].partial_cmp(&eig.eigenvalues[i]).unwrap());

    let mut out = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n
            && (eig.eigenvalues[order[end - 1]] - eig.eigenvalues[order[end]]).abs() <= tol
        {
            end += 1;
        }
        let mut projector = Matrix::<f64>::zeros(n, n);
        for &ci in &order[start..end] {
            let v = eig.eigenvectors.column(ci);
            for i in 0..n {
                for j in 0..n {
                    projector[(i, j)] += v[i] * v[j];
                }
            }
        }
        out.push(projector);
        start = end;
    }
    Ok(out)
}

/// The Hamming scheme H(d,q): distance classes of words of length d over a
/// q-ary alphabet.
pub fn hamming_scheme(d: usize, q: usize) -> Result<AssociationScheme> {
    if d < 1 || q < 2 {
        return Err(Error::ParamOutOfRange(format!(
            "hamming scheme needs d >= 1 and q >= 2, got d={d}, q={q}"
        )));
    }
    let n = q
        .checked_pow(d as u32)
        .filter(|&n| n <= graph::MAX_VERTICES)
        .ok_or(Error::Capacity {
            what: "hamming scheme points",
            got: usize::MAX,
            cap: graph::MAX_VERTICES,
        })?;
    let words = graph::hamming_words(d, q);
    let classes: Vec<MatInt> = (0..=d)
        .map(|i| {
            Matrix::from_fn(n, n, |u, v| {
                (graph::hamming_distance(&words[u], &words[v]) == i) as i64
            })
        })
        .collect();
    AssociationScheme::from_classes(classes)
}

/// The Johnson scheme J(n,k): class A_i joins k-subsets meeting in k-i
/// elements.
pub fn johnson_scheme(n: usize, k: usize) -> Result<AssociationScheme> {
    if k < 1 || n < 2 * k {
        return Err(Error::ParamOutOfRange(format!(
            "johnson scheme needs 1 <= k <= n/2, got n={n}, k={k}"
        )));
    }
    let subsets = graph::k_subsets_colex(n, k);
    let count = subsets.len();
    if count > graph::MAX_VERTICES {
        return Err(Error::Capacity {
            what: "johnson scheme points",
            got: count,
            cap: graph::MAX_VERTICES,
        });
    }
    let classes: Vec<MatInt> = (0..=k)
        .map(|i| {
            Matrix::from_fn(count, count, |u, v| {
                let inter = subsets[u].iter().filter(|x| subsets[v].contains(x)).count();
                (inter == k - i) as i64
            })
        })
        .collect();
    AssociationScheme::from_classes(classes)
}

/// Distance classes of a distance-regular graph as an association scheme.
pub fn distance_scheme(g: &Graph) -> Result<AssociationScheme> {
    let ds = graph::distance_structure(g)?;
    AssociationScheme::from_classes(ds.distance_classes)
}

fn binom_i128(n: i64, k: i64) -> i128 {
    if k < 0 || k > n.max(0) {
        return 0;
    }
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

/// Krawtchouk polynomial K_k(x; d, q) at integer x: the eigenvalue table of
/// the Hamming scheme.
pub fn krawtchouk(k: usize, x: usize, d: usize, q: usize) -> i64 {
    let (k, x, d, q) = (k as i64, x as i64, d as i64, q as i64);
    let mut acc: i128 = 0;
    for ell in 0..=k {
        let sign = if ell % 2 == 0 { 1i128 } else { -1 };
        let term = sign
            * (q - 1).pow((k - ell) as u32) as i128
            * binom_i128(x, ell)
            * binom_i128(d - x, k - ell);
        acc += term;
    }
    i64::try_from(acc).expect("krawtchouk value fits i64 at desk scale")
}

/// Alternate binary-case form Σ (-2)^ℓ C(d-ℓ, k-ℓ) C(x, ℓ); agrees with
/// `krawtchouk(k, x, d, 2)`.
pub fn krawtchouk_binary_alt(k: usize, x: usize, d: usize) -> i64 {
    let (k, x, d) = (k as i64, x as i64, d as i64);
    let mut acc: i128 = 0;
    for ell in 0..=k {
        let coeff = (-2i128).pow(ell as u32);
        acc += coeff * binom_i128(d - ell, k - ell) * binom_i128(x, ell);
    }
    i64::try_from(acc).expect("krawtchouk value fits i64 at desk scale")
}

/// Adjacency eigenvalue λ_j^i of the generalized Johnson graph J(n,k,i).
pub fn johnson_eigenvalue(i: usize, j: usize, n: usize, k: usize) -> i64 {
    let (i, j, n, k) = (i as i64, j as i64, n as i64, k as i64);
    let mut acc: i128 = 0;
    for ell in 0..=(k - i) {
        let sign = if ell % 2 == 0 { 1i128 } else { -1 };
        acc += sign
            * binom_i128(j, ell)
            * binom_i128(k - j, k - i - ell)
            * binom_i128(n - k - j, k - i - ell);
    }
    i64::try_from(acc).expect("johnson eigenvalue fits i64 at desk scale")
}

/// Discriminant eigenvalue μ_j of H(d,q,i): K_i(j)/valency, exact.
pub fn hamming_discriminant_eigenvalue(d: usize, q: usize, i: usize, j: usize) -> BigRational {
    let valency = krawtchouk(i, 0, d, q);
    BigRational::new(krawtchouk(i, j, d, q).into(), valency.into())
}

/// Discriminant eigenvalue μ_j of J(n,k,i): λ_j^i/valency, exact.
pub fn johnson_discriminant_eigenvalue(n: usize, k: usize, i: usize, j: usize) -> BigRational {
    let valency = johnson_eigenvalue(i, 0, n, k);
    BigRational::new(johnson_eigenvalue(i, j, n, k).into(), valency.into())
}
