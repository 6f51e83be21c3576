//! Graph families, distance structure, and distance-regularity.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::MatInt;
use serde::Serialize;
use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

/// Dense-storage cap on the vertex count.
pub const MAX_VERTICES: usize = 4096;

/// A finite simple undirected graph with 0/1 adjacency, optional vertex
/// labels, and cached degrees/connectivity.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    adjacency: MatInt,
    labels: Option<Vec<String>>,
    degrees: Vec<usize>,
    connected: bool,
}

impl Graph {
    /// Build from a symmetric 0/1 adjacency matrix with zero diagonal.
    pub fn from_adjacency(adjacency: MatInt, labels: Option<Vec<String>>) -> Result<Self> {
        let n = adjacency.rows();
        if n == 0 {
            return Err(Error::ParamOutOfRange("graph must have at least 1 vertex".into()));
        }
        if n > MAX_VERTICES {
            return Err(Error::Capacity {
                what: "vertices",
                got: n,
                cap: MAX_VERTICES,
            });
        }
        if !adjacency.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "adjacency is {}x{}",
                adjacency.rows(),
                adjacency.cols()
            )));
        }
        for i in 0..n {
            if adjacency[(i, i)] != 0 {
                return Err(Error::Parse(format!("nonzero diagonal at vertex {i}")));
            }
            for j in 0..n {
                let a = adjacency[(i, j)];
                if a != 0 && a != 1 {
                    return Err(Error::Parse(format!("entry ({i},{j}) = {a} is not 0/1")));
                }
                if a != adjacency[(j, i)] {
                    return Err(Error::Parse(format!("adjacency not symmetric at ({i},{j})")));
                }
            }
        }
        if let Some(ref l) = labels {
            if l.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "{} labels for {} vertices",
                    l.len(),
                    n
                )));
            }
        }
        let degrees: Vec<usize> = (0..n)
            .map(|i| adjacency.row(i).iter().map(|&x| x as usize).sum())
            .collect();
        let connected = bfs_connected(&adjacency, n);
        Ok(Graph {
            n,
            adjacency,
            labels,
            degrees,
            connected,
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)], labels: Option<Vec<String>>) -> Result<Self> {
        let mut a = Matrix::<i64>::zeros(n, n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange {
                    index: u.max(v),
                    n,
                });
            }
            if u == v {
                return Err(Error::Parse(format!("self-loop at vertex {u}")));
            }
            a[(u, v)] = 1;
            a[(v, u)] = 1;
        }
        Self::from_adjacency(a, labels)
    }

    /// Parse the edge-list text format: first line `n`, then one `u v` pair
    /// per line, 0-indexed. Blank lines and `#` comments are skipped.
    pub fn from_edge_list_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty edge list".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad vertex count: {e}")))?;
        let mut edges = Vec::new();
        for line in lines {
            let mut it = line.split_whitespace();
            let u: usize = it
                .next()
                .ok_or_else(|| Error::Parse(format!("bad edge line: {line:?}")))?
                .parse()
                .map_err(|e| Error::Parse(format!("bad edge endpoint in {line:?}: {e}")))?;
            let v: usize = it
                .next()
                .ok_or_else(|| Error::Parse(format!("bad edge line: {line:?}")))?
                .parse()
                .map_err(|e| Error::Parse(format!("bad edge endpoint in {line:?}: {e}")))?;
            if it.next().is_some() {
                return Err(Error::Parse(format!("trailing tokens in {line:?}")));
            }
            edges.push((u, v));
        }
        Self::from_edges(n, &edges, None)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn adjacency(&self) -> &MatInt {
        &self.adjacency
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn degree(&self, u: usize) -> usize {
        self.degrees[u]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn edge_count(&self) -> usize {
        self.degrees.iter().sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.adjacency[(u, v)] == 1 {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn neighbors(&self, u: usize) -> Vec<usize> {
        (0..self.n).filter(|&v| self.adjacency[(u, v)] == 1).collect()
    }

    /// `Some(k)` iff every vertex has degree `k`.
    pub fn regularity(&self) -> Option<usize> {
        let k = *self.degrees.first()?;
        self.degrees.iter().all(|&d| d == k).then_some(k)
    }

    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![-1i8; self.n];
        for start in 0..self.n {
            if color[start] >= 0 {
                continue;
            }
            color[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for v in 0..self.n {
                    if self.adjacency[(u, v)] == 1 {
                        if color[v] < 0 {
                            color[v] = 1 - color[u];
                            queue.push_back(v);
                        } else if color[v] == color[u] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// JSON export: `{"n":…, "edges":[[u,v],…], "labels":[…]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "edges": self.edges().iter().map(|&(u, v)| vec![u, v]).collect::<Vec<_>>(),
            "labels": self.labels,
        })
    }
}

fn bfs_connected(adjacency: &MatInt, n: usize) -> bool {
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    let mut count = 1;
    while let Some(u) = queue.pop_front() {
        for v in 0..n {
            if adjacency[(u, v)] == 1 && !seen[v] {
                seen[v] = true;
                count += 1;
                queue.push_back(v);
            }
        }
    }
    count == n
}

/// BFS shortest-path distances, diameter, and the distance classes
/// `A_0..A_d` with `(A_i)_{uv} = 1` iff `dist(u,v) = i`.
#[derive(Debug, Clone)]
pub struct DistanceStructure {
    pub dist: MatInt,
    pub diameter: usize,
    pub distance_classes: Vec<MatInt>,
}

/// All-pairs BFS distances; requires a connected graph.
pub fn distance_structure(g: &Graph) -> Result<DistanceStructure> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.vertex_count();
    let mut dist = Matrix::<i64>::zeros(n, n);
    let mut diameter = 0usize;
    for start in 0..n {
        let mut d = vec![-1i64; n];
        d[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if g.adjacency()[(u, v)] == 1 && d[v] < 0 {
                    d[v] = d[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        for v in 0..n {
            dist[(start, v)] = d[v];
            diameter = diameter.max(d[v] as usize);
        }
    }
    let mut distance_classes = Vec::with_capacity(diameter + 1);
    for i in 0..=diameter {
        distance_classes.push(Matrix::from_fn(n, n, |u, v| {
            (dist[(u, v)] == i as i64) as i64
        }));
    }
    Ok(DistanceStructure {
        dist,
        diameter,
        distance_classes,
    })
}

/// Intersection array `{b_0..b_{d-1}; c_1..c_d}` of a distance-regular graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionArray {
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

impl IntersectionArray {
    pub fn diameter(&self) -> usize {
        self.c.len()
    }

    pub fn valency(&self) -> usize {
        self.b[0]
    }

    /// `a_i = b_0 - b_i - c_i` (with `b_d = 0`).
    pub fn a(&self) -> Vec<usize> {
        let d = self.diameter();
        (1..=d)
            .map(|i| self.b[0] - self.b.get(i).copied().unwrap_or(0) - self.c[i - 1])
            .collect()
    }

    /// Monotonicity conditions every intersection array satisfies:
    /// `b_0 >= ... >= b_{d-1} > 0` and `1 = c_1 <= ... <= c_d <= b_0`.
    pub fn is_feasible(&self) -> bool {
        if self.b.is_empty() || self.b.len() != self.c.len() {
            return false;
        }
        self.b.windows(2).all(|w| w[0] >= w[1])
            && *self.b.last().unwrap() > 0
            && self.c[0] == 1
            && self.c.windows(2).all(|w| w[0] <= w[1])
            && *self.c.last().unwrap() <= self.b[0]
    }
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bs: Vec<String> = self.b.iter().map(|x| x.to_string()).collect();
        let cs: Vec<String> = self.c.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}; {}}}", bs.join(","), cs.join(","))
    }
}

/// Check distance-regularity by counting, for every ordered pair at distance
/// `i`, the neighbors of `v` at distance `i+1` and `i-1` from `u`. Returns the
/// intersection array iff all counts are constant.
pub fn is_distance_regular(g: &Graph, ds: &DistanceStructure) -> Option<IntersectionArray> {
    let n = g.vertex_count();
    let k = g.regularity()?;
    let d = ds.diameter;
    if d == 0 {
        return None; // single vertex
    }
    let mut b = vec![None::<usize>; d]; // b_0..b_{d-1}
    let mut c = vec![None::<usize>; d]; // c_1..c_d
    for u in 0..n {
        for v in 0..n {
            let i = ds.dist[(u, v)] as usize;
            let mut down = 0usize;
            let mut up = 0usize;
            for w in g.neighbors(v) {
                let dw = ds.dist[(u, w)] as i64;
                if dw == i as i64 + 1 {
                    up += 1;
                } else if dw + 1 == i as i64 {
                    down += 1;
                }
            }
            if i < d {
                match b[i] {
                    None => b[i] = Some(up),
                    Some(x) if x == up => {}
                    _ => return None,
                }
            }
            if i >= 1 {
                match c[i - 1] {
                    None => c[i - 1] = Some(down),
                    Some(x) if x == down => {}
                    _ => return None,
                }
            }
        }
    }
    let array = IntersectionArray {
        b: b.into_iter().collect::<Option<Vec<_>>>()?,
        c: c.into_iter().collect::<Option<Vec<_>>>()?,
    };
    debug_assert_eq!(array.valency(), k);
    array.is_feasible().then_some(array)
}

/// Antipodal fibre data: present iff the distance-`d` relation plus identity
/// is an equivalence with classes of a common size ≥ 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntipodalFibres {
    pub fibre_size: usize,
    pub partition: Vec<Vec<usize>>,
}

impl AntipodalFibres {
    /// The unique antipode of `u`, when fibres have size 2.
    pub fn antipode(&self, u: usize) -> Option<usize> {
        if self.fibre_size != 2 {
            return None;
        }
        self.partition
            .iter()
            .find(|f| f.contains(&u))
            .map(|f| if f[0] == u { f[1] } else { f[0] })
    }
}

pub fn antipodal_fibres(g: &Graph, ds: &DistanceStructure) -> Option<AntipodalFibres> {
    let n = g.vertex_count();
    let d = ds.diameter as i64;
    if d == 0 {
        return None;
    }
    let mut assigned = vec![usize::MAX; n];
    let mut partition: Vec<Vec<usize>> = Vec::new();
    for u in 0..n {
        if assigned[u] != usize::MAX {
            continue;
        }
        let mut fibre: Vec<usize> = vec![u];
        fibre.extend((0..n).filter(|&v| ds.dist[(u, v)] == d));
        // every pair inside the fibre must be at distance d
        for (ai, &a) in fibre.iter().enumerate() {
            for &b in &fibre[ai + 1..] {
                if ds.dist[(a, b)] != d {
                    return None;
                }
            }
        }
        let id = partition.len();
        for &v in &fibre {
            if assigned[v] != usize::MAX {
                return None;
            }
            assigned[v] = id;
        }
        partition.push(fibre);
    }
    let fibre_size = partition[0].len();
    if fibre_size < 2 || partition.iter().any(|f| f.len() != fibre_size) {
        return None;
    }
    Some(AntipodalFibres {
        fibre_size,
        partition,
    })
}

// ---------------------------------------------------------------------------
// Graph families
// ---------------------------------------------------------------------------

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn check_vertex_cap(count: usize, what: &'static str) -> Result<()> {
    if count > MAX_VERTICES {
        Err(Error::Capacity {
            what,
            got: count,
            cap: MAX_VERTICES,
        })
    } else {
        Ok(())
    }
}

/// Cycle `C_n`, `n >= 3`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::ParamOutOfRange(format!("cycle needs n >= 3, got {n}")));
    }
    check_vertex_cap(n, "cycle vertices")?;
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges, None)
}

/// Complete graph `K_n`, `n >= 1`.
pub fn complete(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::ParamOutOfRange("complete graph needs n >= 1".into()));
    }
    check_vertex_cap(n, "complete-graph vertices")?;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges, None)
}

/// Complete multipartite graph with the given part sizes (each >= 1).
pub fn complete_multipartite(parts: &[usize]) -> Result<Graph> {
    if parts.is_empty() || parts.iter().any(|&p| p == 0) {
        return Err(Error::ParamOutOfRange(
            "multipartite needs nonempty parts of size >= 1".into(),
        ));
    }
    let n: usize = parts.iter().sum();
    check_vertex_cap(n, "multipartite vertices")?;
    let mut part_of = Vec::with_capacity(n);
    for (pi, &size) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat(pi).take(size));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if part_of[u] != part_of[v] {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges, None)
}

/// `d`-dimensional hypercube `Q_d = H(d,2,1)`.
pub fn hypercube(d: usize) -> Result<Graph> {
    hamming(d, 2, 1)
}

/// Hamming graph `H(d,q,i)`: words of length `d` over a `q`-ary alphabet,
/// adjacent iff they differ in exactly `i` positions. Vertices in base-`q`
/// lexicographic order.
pub fn hamming(d: usize, q: usize, i: usize) -> Result<Graph> {
    if d < 1 {
        return Err(Error::ParamOutOfRange(format!("hamming needs d >= 1, got d={d}")));
    }
    if q < 2 {
        return Err(Error::ParamOutOfRange(format!("hamming needs q >= 2, got q={q}")));
    }
    if i < 1 || i > d {
        return Err(Error::ParamOutOfRange(format!(
            "hamming needs 1 <= i <= d, got i={i}, d={d}"
        )));
    }
    let n = q.checked_pow(d as u32).ok_or(Error::Capacity {
        what: "hamming vertices",
        got: usize::MAX,
        cap: MAX_VERTICES,
    })?;
    check_vertex_cap(n, "hamming vertices")?;
    let words = hamming_words(d, q);
    let labels: Vec<String> = words
        .iter()
        .map(|w| w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(""))
        .collect();
    let a = Matrix::from_fn(n, n, |u, v| {
        (u != v && hamming_distance(&words[u], &words[v]) == i) as i64
    });
    Graph::from_adjacency(a, Some(labels))
}

/// Words of length `d` over `0..q` in base-`q` lexicographic order.
pub fn hamming_words(d: usize, q: usize) -> Vec<Vec<usize>> {
    let n = q.pow(d as u32);
    (0..n)
        .map(|mut x| {
            let mut w = vec![0usize; d];
            for pos in (0..d).rev() {
                w[pos] = x % q;
                x /= q;
            }
            w
        })
        .collect()
}

pub fn hamming_distance(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Generalized Johnson graph `J(n,k,i)`: `k`-subsets of `{1..n}`, adjacent iff
/// the intersection has exactly `i` elements. Vertices in colex order.
pub fn johnson(n: usize, k: usize, i: usize) -> Result<Graph> {
    if k < 1 || n < 2 * k {
        return Err(Error::ParamOutOfRange(format!(
            "johnson needs 1 <= k <= n/2, got n={n}, k={k}"
        )));
    }
    if i >= k {
        return Err(Error::ParamOutOfRange(format!(
            "johnson needs 0 <= i <= k-1, got i={i}, k={k}"
        )));
    }
    let count = binomial(n, k);
    check_vertex_cap(count, "johnson vertices")?;
    let subsets = k_subsets_colex(n, k);
    let labels: Vec<String> = subsets.iter().map(|s| subset_label(s)).collect();
    let a = Matrix::from_fn(count, count, |u, v| {
        (u != v && intersection_size(&subsets[u], &subsets[v]) == i) as i64
    });
    Graph::from_adjacency(a, Some(labels))
}

/// All `k`-subsets of `{1..n}` in colex order (ascending by largest element,
/// ties broken by the next-largest, and so on).
pub fn k_subsets_colex(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::with_capacity(binomial(n, k));
    rec(1, n, k, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    out
}

fn subset_label(s: &[usize]) -> String {
    let parts: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|x| b.contains(x)).count()
}

/// The Petersen graph as the Kneser graph on 2-subsets of `{1..5}` with
/// disjointness adjacency.
pub fn petersen() -> Result<Graph> {
    let subsets = k_subsets_colex(5, 2);
    let labels: Vec<String> = subsets.iter().map(|s| subset_label(s)).collect();
    let a = Matrix::from_fn(10, 10, |u, v| {
        (u != v && intersection_size(&subsets[u], &subsets[v]) == 0) as i64
    });
    Graph::from_adjacency(a, Some(labels))
}

// ---------------------------------------------------------------------------
// Family specs (CLI surface)
// ---------------------------------------------------------------------------

/// A named family instance, parsed from `name` or `name:p1,p2,...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Cycle(usize),
    Complete(usize),
    Multipartite(Vec<usize>),
    Hypercube(usize),
    Hamming(usize, usize, usize),
    Johnson(usize, usize, usize),
    Petersen,
}

impl FamilySpec {
    pub fn build(&self) -> Result<Graph> {
        match self {
            FamilySpec::Cycle(n) => cycle(*n),
            FamilySpec::Complete(n) => complete(*n),
            FamilySpec::Multipartite(parts) => complete_multipartite(parts),
            FamilySpec::Hypercube(d) => hypercube(*d),
            FamilySpec::Hamming(d, q, i) => hamming(*d, *q, *i),
            FamilySpec::Johnson(n, k, i) => johnson(*n, *k, *i),
            FamilySpec::Petersen => petersen(),
        }
    }

    pub fn name(&self) -> String {
        match self {
            FamilySpec::Cycle(n) => format!("cycle({n})"),
            FamilySpec::Complete(n) => format!("complete({n})"),
            FamilySpec::Multipartite(p) => {
                let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                format!("multipartite({})", parts.join(","))
            }
            FamilySpec::Hypercube(d) => format!("hypercube({d})"),
            FamilySpec::Hamming(d, q, i) => format!("hamming({d},{q},{i})"),
            FamilySpec::Johnson(n, k, i) => format!("johnson({n},{k},{i})"),
            FamilySpec::Petersen => "petersen".into(),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = match s.split_once(':') {
            Some((n, a)) => (n, a),
            None => (s, ""),
        };
        let params: Vec<usize> = if args.is_empty() {
            Vec::new()
        } else {
            args.split(',')
                .map(|p| {
                    p.trim()
                        .parse::<usize>()
                        .map_err(|e| Error::Parse(format!("bad family parameter {p:?}: {e}")))
                })
                .collect::<Result<_>>()?
        };
        let want = |k: usize| -> Result<()> {
            if params.len() == k {
                Ok(())
            } else {
                Err(Error::Parse(format!(
                    "family {name:?} takes {k} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        match name {
            "cycle" => {
                want(1)?;
                Ok(FamilySpec::Cycle(params[0]))
            }
            "complete" => {
                want(1)?;
                Ok(FamilySpec::Complete(params[0]))
            }
            "multipartite" => {
                if params.is_empty() {
                    return Err(Error::Parse("multipartite needs part sizes".into()));
                }
                Ok(FamilySpec::Multipartite(params))
            }
            "hypercube" => {
                want(1)?;
                Ok(FamilySpec::Hypercube(params[0]))
            }
            "hamming" => {
                want(3)?;
                Ok(FamilySpec::Hamming(params[0], params[1], params[2]))
            }
            "johnson" => {
                want(3)?;
                Ok(FamilySpec::Johnson(params[0], params[1], params[2]))
            }
            "petersen" => {
                want(0)?;
                Ok(FamilySpec::Petersen)
            }
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}
