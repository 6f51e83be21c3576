//! Arc space and the Grover-walk matrices S, N, K, U, and the discriminant P.
//!
//! The time evolution is U = SK with S the arc-reversal shift and
//! K = 2N*N - I the Grover coin over inbound arcs. U factors through the
//! terminus grouping, so it is applied matrix-free in O(arcs); dense copies
//! of the arc-space matrices are built on demand for dumps and tests.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::Matrix;
use crate::{MatBig, MatF, MatInt};
use num_bigint::BigInt;
use std::io::Write;
use std::path::Path;

/// Cap on the number of arcs (2·|E|).
pub const MAX_ARCS: usize = 16384;

/// Dense arc×arc matrices are only materialized below this arc count;
/// dumps stream row by row and are not subject to it.
pub const MAX_DENSE_ARCS: usize = 4096;

/// The symmetric arcs of a graph, sorted lexicographically by
/// (origin, terminus), with the position of each arc's reversal.
#[derive(Debug, Clone)]
pub struct ArcSpace {
    arcs: Vec<(usize, usize)>,
    inverse: Vec<usize>,
}

impl ArcSpace {
    pub fn new(g: &Graph) -> Self {
        let mut arcs = Vec::with_capacity(2 * g.edge_count());
        for u in 0..g.vertex_count() {
            for v in g.neighbors(u) {
                arcs.push((u, v));
            }
        }
        // neighbors() ascends, so this is already (origin, terminus) lex order
        debug_assert!(arcs.windows(2).all(|w| w[0] < w[1]));
        let index = |a: &(usize, usize)| arcs.binary_search(a).expect("arc present");
        let inverse = arcs.iter().map(|&(u, v)| index(&(v, u))).collect();
        ArcSpace { arcs, inverse }
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn origin(&self, a: usize) -> usize {
        self.arcs[a].0
    }

    pub fn terminus(&self, a: usize) -> usize {
        self.arcs[a].1
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }
}

/// The walk matrices of one connected graph.
#[derive(Debug, Clone)]
pub struct WalkOperators {
    graph: Graph,
    arc_space: ArcSpace,
    /// 1/sqrt(deg u) per vertex.
    inv_sqrt_deg: Vec<f64>,
    /// Discriminant P = N S N* = D^{-1/2} A D^{-1/2}, dense.
    discriminant: MatF,
}

/// Assemble the walk operators; requires a connected graph with minimum
/// degree 1 and at most [`MAX_ARCS`] arcs.
pub fn build_walk(g: &Graph) -> Result<WalkOperators> {
    if let Some(u) = (0..g.vertex_count()).find(|&u| g.degree(u) == 0) {
        return Err(Error::IsolatedVertex(u));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let arc_count = 2 * g.edge_count();
    if arc_count > MAX_ARCS {
        return Err(Error::Capacity {
            what: "arcs",
            got: arc_count,
            cap: MAX_ARCS,
        });
    }
    let arc_space = ArcSpace::new(g);
    let inv_sqrt_deg: Vec<f64> = (0..g.vertex_count())
        .map(|u| 1.0 / (g.degree(u) as f64).sqrt())
        .collect();
    let n = g.vertex_count();
    // single sqrt keeps P exact for regular graphs with square deg products
    let discriminant = Matrix::from_fn(n, n, |u, v| {
        g.adjacency()[(u, v)] as f64 / ((g.degree(u) * g.degree(v)) as f64).sqrt()
    });
    Ok(WalkOperators {
        graph: g.clone(),
        arc_space,
        inv_sqrt_deg,
        discriminant,
    })
}

impl WalkOperators {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn arc_space(&self) -> &ArcSpace {
        &self.arc_space
    }

    pub fn arc_count(&self) -> usize {
        self.arc_space.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn discriminant(&self) -> &MatF {
        &self.discriminant
    }

    /// Exact rational discriminant `A/k`, available iff the graph is regular.
    pub fn discriminant_exact(&self) -> Option<(MatInt, usize)> {
        let k = self.graph.regularity()?;
        Some((self.graph.adjacency().clone(), k))
    }

    /// `k^tau * T_tau(P)` as an exact integer matrix, via
    /// `W_m = 2 A W_{m-1} - k^2 W_{m-2}`; available iff the graph is regular.
    pub fn scaled_chebyshev_exact(&self, tau: usize) -> Option<MatBig> {
        let k = self.graph.regularity()?;
        let a = self.graph.adjacency().map(|&x| BigInt::from(x));
        let n = self.graph.vertex_count();
        match tau {
            0 => Some(Matrix::identity(n)),
            1 => Some(a),
            _ => {
                let ksq = BigInt::from((k * k) as i64);
                let two = BigInt::from(2);
                let mut prev: MatBig = Matrix::identity(n);
                let mut cur = a.clone();
                for _ in 2..=tau {
                    let next = a.matmul(&cur).scale(&two).sub(&prev.scale(&ksq));
                    prev = cur;
                    cur = next;
                }
                Some(cur)
            }
        }
    }

    /// Vertex-type state Φ_u = N* e_u: 1/sqrt(deg u) on arcs terminating at u.
    pub fn vertex_state(&self, u: usize) -> Result<Vec<f64>> {
        let n = self.vertex_count();
        if u >= n {
            return Err(Error::VertexOutOfRange { index: u, n });
        }
        let mut state = vec![0.0; self.arc_count()];
        for (a, &(_, t)) in self.arc_space.arcs().iter().enumerate() {
            if t == u {
                state[a] = self.inv_sqrt_deg[u];
            }
        }
        Ok(state)
    }

    /// y = U x in O(arcs): U_{ab} = 2/deg(o(a)) [t(b)=o(a)] - [b = a^{-1}].
    pub fn apply_u(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.arc_count());
        let mut terminus_sum = vec![0.0; self.vertex_count()];
        for (b, &(_, t)) in self.arc_space.arcs().iter().enumerate() {
            terminus_sum[t] += x[b];
        }
        let mut y = vec![0.0; self.arc_count()];
        for (a, &(o, _)) in self.arc_space.arcs().iter().enumerate() {
            let d = self.graph.degree(o) as f64;
            y[a] = 2.0 * terminus_sum[o] / d - x[self.arc_space.inverse(a)];
        }
        y
    }

    /// y = N x (arc space -> vertex space): y_v = sum over arcs into v of
    /// x_a / sqrt(deg v). Same as the vector of overlaps <Φ_v, x>.
    pub fn apply_n(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.arc_count());
        let mut y = vec![0.0; self.vertex_count()];
        for (a, &(_, t)) in self.arc_space.arcs().iter().enumerate() {
            y[t] += x[a];
        }
        for (v, yv) in y.iter_mut().enumerate() {
            *yv *= self.inv_sqrt_deg[v];
        }
        y
    }

    fn check_dense(&self) -> Result<()> {
        if self.arc_count() > MAX_DENSE_ARCS {
            return Err(Error::Capacity {
                what: "dense arc matrix",
                got: self.arc_count(),
                cap: MAX_DENSE_ARCS,
            });
        }
        Ok(())
    }

    /// Dense shift matrix S (S_{ab} = 1 iff b = a^{-1}).
    pub fn s_matrix(&self) -> Result<MatF> {
        self.check_dense()?;
        let m = self.arc_count();
        Ok(Matrix::from_fn(m, m, |a, b| {
            (self.arc_space.inverse(a) == b) as i64 as f64
        }))
    }

    /// Dense boundary matrix N (N_{ua} = 1/sqrt(deg u) iff u = t(a)).
    pub fn n_matrix(&self) -> Result<MatF> {
        self.check_dense()?;
        let m = self.arc_count();
        let n = self.vertex_count();
        Ok(Matrix::from_fn(n, m, |u, a| {
            if self.arc_space.terminus(a) == u {
                self.inv_sqrt_deg[u]
            } else {
                0.0
            }
        }))
    }

    /// Dense coin matrix K = 2 N* N - I.
    pub fn k_matrix(&self) -> Result<MatF> {
        self.check_dense()?;
        let m = self.arc_count();
        Ok(Matrix::from_fn(m, m, |a, b| {
            let mut x = 0.0;
            if self.arc_space.terminus(a) == self.arc_space.terminus(b) {
                x += 2.0 / self.graph.degree(self.arc_space.terminus(a)) as f64;
            }
            if a == b {
                x -= 1.0;
            }
            x
        }))
    }

    /// Dense time evolution U = SK.
    pub fn u_matrix(&self) -> Result<MatF> {
        self.check_dense()?;
        let m = self.arc_count();
        Ok(Matrix::from_fn(m, m, |a, b| self.u_entry(a, b)))
    }

    fn u_entry(&self, a: usize, b: usize) -> f64 {
        let o = self.arc_space.origin(a);
        let mut x = 0.0;
        if self.arc_space.terminus(b) == o {
            x += 2.0 / self.graph.degree(o) as f64;
        }
        if b == self.arc_space.inverse(a) {
            x -= 1.0;
        }
        x
    }

    /// Write S.csv, N.csv, K.csv, U.csv, P.csv (row-major) into `dir`,
    /// streaming row by row.
    pub fn dump_matrices_csv(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        let m = self.arc_count();
        let n = self.vertex_count();

        self.write_csv(&dir.join("S.csv"), m, m, |a, b| {
            (self.arc_space.inverse(a) == b) as i64 as f64
        })?;
        self.write_csv(&dir.join("N.csv"), n, m, |u, a| {
            if self.arc_space.terminus(a) == u {
                self.inv_sqrt_deg[u]
            } else {
                0.0
            }
        })?;
        self.write_csv(&dir.join("K.csv"), m, m, |a, b| {
            let mut x = 0.0;
            if self.arc_space.terminus(a) == self.arc_space.terminus(b) {
                x += 2.0 / self.graph.degree(self.arc_space.terminus(a)) as f64;
            }
            if a == b {
                x -= 1.0;
            }
            x
        })?;
        self.write_csv(&dir.join("U.csv"), m, m, |a, b| self.u_entry(a, b))?;
        self.write_csv(&dir.join("P.csv"), n, n, |u, v| self.discriminant[(u, v)])?;
        Ok(())
    }

    fn write_csv(
        &self,
        path: &Path,
        rows: usize,
        cols: usize,
        entry: impl Fn(usize, usize) -> f64,
    ) -> Result<()> {
        let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
        for i in 0..rows {
            for j in 0..cols {
                if j > 0 {
                    w.write_all(b",")?;
                }
                write!(w, "{}", entry(i, j))?;
            }
            w.write_all(b"\n")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph;
    use crate::matrix::chebyshev_matrix;

    fn splitmix(state: &mut u64) -> f64 {
        *state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = *state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^= z >> 31;
        (z >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    }

    #[test]
    fn k2_hand_computed() {
        // arcs of K_2 in lex order: (0,1), (1,0)
        let g = graph::complete(2).unwrap();
        let w = build_walk(&g).unwrap();
        assert_eq!(w.arc_count(), 2);
        assert_eq!(w.arc_space().arcs(), &[(0, 1), (1, 0)]);

        // degree 1 everywhere: K = I, so U = S = the swap of the two arcs
        let k = w.k_matrix().unwrap();
        assert!(k.max_abs_diff_identity() < 1e-15);
        let u = w.u_matrix().unwrap();
        let s = w.s_matrix().unwrap();
        assert!(u.max_abs_diff(&s) < 1e-15);
        assert_eq!(u[(0, 1)], 1.0);
        assert_eq!(u[(1, 0)], 1.0);

        // P = A for a 1-regular graph
        assert_eq!(w.discriminant()[(0, 1)], 1.0);
        assert_eq!(w.discriminant()[(0, 0)], 0.0);

        // Φ_0 is the single arc into vertex 0, namely (1,0)
        let phi = w.vertex_state(0).unwrap();
        assert_eq!(phi, vec![0.0, 1.0]);
    }

    #[test]
    fn cycle4_discriminant_rows() {
        let g = graph::cycle(4).unwrap();
        let w = build_walk(&g).unwrap();
        assert_eq!(w.arc_count(), 8);
        // P = A/2: row 0 is (0, 1/2, 0, 1/2)
        let p = w.discriminant();
        assert_eq!(p.row(0), &[0.0, 0.5, 0.0, 0.5]);
    }

    #[test]
    fn petersen_discriminant_is_a_over_3() {
        let g = graph::petersen().unwrap();
        let w = build_walk(&g).unwrap();
        let expected = g.adjacency().map(|&x| x as f64 / 3.0);
        assert!(w.discriminant().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn vertex_states_have_unit_norm_and_right_support() {
        for g in [graph::cycle(4).unwrap(), graph::petersen().unwrap()] {
            let w = build_walk(&g).unwrap();
            for u in 0..g.vertex_count() {
                let phi = w.vertex_state(u).unwrap();
                let norm: f64 = phi.iter().map(|x| x * x).sum();
                assert!((norm - 1.0).abs() < 1e-12);
                let expected = 1.0 / (g.degree(u) as f64).sqrt();
                for (a, &(_, t)) in w.arc_space().arcs().iter().enumerate() {
                    if t == u {
                        assert_eq!(phi[a], expected);
                    } else {
                        assert_eq!(phi[a], 0.0);
                    }
                }
            }
        }
        let w = build_walk(&graph::petersen().unwrap()).unwrap();
        let phi = w.vertex_state(3).unwrap();
        let third = (1.0f64 / 3.0).sqrt();
        assert!(phi.iter().filter(|&&x| (x - third).abs() < 1e-15).count() == 3);
    }

    #[test]
    fn walk_matrix_invariants() {
        // a regular, an irregular, and a bipartite instance
        let graphs = vec![
            graph::complete(2).unwrap(),
            graph::cycle(5).unwrap(),
            graph::petersen().unwrap(),
            graph::Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 2)], None).unwrap(),
        ];
        for g in graphs {
            let w = build_walk(&g).unwrap();
            let m = w.arc_count();
            let s = w.s_matrix().unwrap();
            let n = w.n_matrix().unwrap();
            let k = w.k_matrix().unwrap();
            let u = w.u_matrix().unwrap();

            // S^2 = I
            assert!(s.matmul(&s).max_abs_diff_identity() < 1e-12);
            // N N* = I (vertex x vertex)
            assert!(n.matmul(&n.transpose()).max_abs_diff_identity() < 1e-12);
            // K = 2 N*N - I, symmetric with K^2 = I
            let k2 = n
                .transpose()
                .matmul(&n)
                .scale(&2.0)
                .sub(&Matrix::identity(m));
            assert!(k.max_abs_diff(&k2) < 1e-12);
            assert!(k.matmul(&k).max_abs_diff_identity() < 1e-12);
            // U = SK and U*U = I
            assert!(u.max_abs_diff(&s.matmul(&k)) < 1e-12);
            assert!(u.transpose().matmul(&u).max_abs_diff_identity() < 1e-12);
            // P = N S N*
            let p = n.matmul(&s).matmul(&n.transpose());
            assert!(w.discriminant().max_abs_diff(&p) < 1e-12);
        }
    }

    #[test]
    fn apply_u_matches_dense_and_preserves_norm() {
        let mut seed = 7u64;
        for g in [
            graph::cycle(6).unwrap(),
            graph::petersen().unwrap(),
            graph::johnson(5, 2, 1).unwrap(),
        ] {
            let w = build_walk(&g).unwrap();
            let u = w.u_matrix().unwrap();
            let x: Vec<f64> = (0..w.arc_count()).map(|_| splitmix(&mut seed)).collect();
            let dense = u.matvec(&x);
            let fast = w.apply_u(&x);
            let norm_in: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            let norm_out: f64 = fast.iter().map(|v| v * v).sum::<f64>().sqrt();
            for (a, b) in dense.iter().zip(&fast) {
                assert!((a - b).abs() < 1e-12);
            }
            assert!((norm_in - norm_out).abs() < 1e-10);
        }
    }

    #[test]
    fn chebyshev_operator_identity() {
        // N U^tau N* = T_tau(P) for tau in 0..=20
        for g in [
            graph::cycle(4).unwrap(),
            graph::cycle(5).unwrap(),
            graph::petersen().unwrap(),
            graph::Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 2)], None).unwrap(),
        ] {
            let w = build_walk(&g).unwrap();
            let n = w.n_matrix().unwrap();
            let u = w.u_matrix().unwrap();
            let mut upow = Matrix::identity(w.arc_count());
            for tau in 0..=20usize {
                let lhs = n.matmul(&upow).matmul(&n.transpose());
                let rhs = chebyshev_matrix(w.discriminant(), tau, &2.0);
                assert!(
                    lhs.max_abs_diff(&rhs) < 1e-9,
                    "tau={tau} residual {}",
                    lhs.max_abs_diff(&rhs)
                );
                upow = u.matmul(&upow);
            }
        }
    }

    #[test]
    fn exact_scaled_chebyshev_matches_float() {
        let g = graph::johnson(4, 2, 1).unwrap();
        let w = build_walk(&g).unwrap();
        let k = 4usize;
        for tau in 0..=8usize {
            let exact = w.scaled_chebyshev_exact(tau).unwrap();
            let float = chebyshev_matrix(w.discriminant(), tau, &2.0);
            let scale = (k as f64).powi(tau as i32);
            for i in 0..6 {
                for j in 0..6 {
                    let e: f64 = exact[(i, j)].to_string().parse().unwrap();
                    assert!((e / scale - float[(i, j)]).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn build_walk_errors() {
        let g = graph::complete(1).unwrap();
        assert!(matches!(build_walk(&g), Err(Error::IsolatedVertex(0))));

        let disconnected = graph::Graph::from_edges(4, &[(0, 1), (2, 3)], None).unwrap();
        assert!(matches!(build_walk(&disconnected), Err(Error::Disconnected)));

        let w = build_walk(&graph::cycle(3).unwrap()).unwrap();
        assert!(w.vertex_state(3).is_err());
    }
}
