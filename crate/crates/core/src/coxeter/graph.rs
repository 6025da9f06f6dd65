//! Simply-laced Coxeter graphs and their ADE classification.
//!
//! Vertices are numbered `1..=n` in every user-facing surface (generator `a3`
//! is vertex 3) and `0..n` internally.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

/// Largest supported rank (descent sets are stored as 64-bit masks).
pub const MAX_RANK: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("graph has {0} vertices; at most {MAX_RANK} are supported")]
    TooLarge(usize),
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge {0}-{1} listed twice")]
    DuplicateEdge(usize, usize),
    #[error("graph is disconnected (component containing vertex 1 has {reached} of {n} vertices)")]
    Disconnected { reached: usize, n: usize },
    #[error("graph is not of spherical simply-laced type: {reason}; offending vertices {subgraph:?}")]
    NonSpherical { reason: String, subgraph: Vec<usize> },
    #[error("unknown graph type `{0}` (expected A1..A9, D4..D9, E6, E7 or E8)")]
    UnknownType(String),
    #[error("graph file line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Cartan type of one connected component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl DynkinType {
    /// Number of positive roots.
    pub fn positive_root_count(self) -> usize {
        match self {
            DynkinType::A(n) => n * (n + 1) / 2,
            DynkinType::D(n) => n * (n - 1),
            DynkinType::E(6) => 36,
            DynkinType::E(7) => 63,
            DynkinType::E(8) => 120,
            DynkinType::E(n) => unreachable!("E{n} is not spherical"),
        }
    }

    pub fn rank(self) -> usize {
        match self {
            DynkinType::A(n) | DynkinType::D(n) | DynkinType::E(n) => n,
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
        }
    }
}

/// A finite simple graph of spherical simply-laced type.
///
/// Adjacent generators satisfy the braid relation `aba = bab`, non-adjacent
/// ones commute. Construction validates that every component is A, D or E.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    components: Vec<(DynkinType, Vec<usize>)>,
}

impl CoxeterGraph {
    /// Builds a connected graph from 1-based edge pairs.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::build(n, edges, false)
    }

    /// Like [`CoxeterGraph::new`] but accepts a disjoint union of ADE components.
    pub fn new_allow_disconnected(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::build(n, edges, true)
    }

    fn build(n: usize, edges: &[(usize, usize)], allow_disconnected: bool) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if n > MAX_RANK {
            return Err(GraphError::TooLarge(n));
        }
        let mut set = BTreeSet::new();
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in edges {
            for v in [a, b] {
                if v == 0 || v > n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let key = (a.min(b) - 1, a.max(b) - 1);
            if !set.insert(key) {
                return Err(GraphError::DuplicateEdge(key.0 + 1, key.1 + 1));
            }
            adjacency[key.0].push(key.1);
            adjacency[key.1].push(key.0);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }

        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let comp = bfs(&adjacency, start, &mut seen);
            if !allow_disconnected && comp.len() != n {
                return Err(GraphError::Disconnected { reached: comp.len(), n });
            }
            let kind = classify_component(&adjacency, &comp)?;
            components.push((kind, comp));
        }
        Ok(CoxeterGraph { n, edges: set, adjacency, components })
    }

    /// Built-in graphs in Bourbaki numbering: `A1..A9`, `D4..D9`, `E6`, `E7`, `E8`.
    pub fn named(name: &str) -> Result<Self, GraphError> {
        let unknown = || GraphError::UnknownType(name.to_string());
        let upper = name.trim().to_ascii_uppercase();
        let (family, rank) = upper.split_at(1.min(upper.len()));
        let rank: usize = rank.parse().map_err(|_| unknown())?;
        let edges: Vec<(usize, usize)> = match (family, rank) {
            ("A", 1..=9) => (1..rank).map(|i| (i, i + 1)).collect(),
            ("D", 4..=9) => {
                let mut e: Vec<_> = (1..rank - 1).map(|i| (i, i + 1)).collect();
                e.push((rank - 2, rank));
                e
            }
            ("E", 6..=8) => {
                let mut e = vec![(1, 3), (2, 4)];
                e.extend((3..rank).map(|i| (i, i + 1)));
                e
            }
            _ => return Err(unknown()),
        };
        Self::new(rank, &edges)
    }

    /// Parses the text format: a `vertices: n` header, then one `i j` edge per line.
    /// Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut n = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: &str| GraphError::Parse { line: line_no, message: message.to_string() };
            match n {
                None => {
                    let rest = line
                        .strip_prefix("vertices:")
                        .ok_or_else(|| err("expected header `vertices: n`"))?;
                    n = Some(rest.trim().parse::<usize>().map_err(|_| err("vertex count is not an integer"))?);
                }
                Some(_) => {
                    let parts: Vec<&str> = line.split_whitespace().collect();
                    if parts.len() != 2 {
                        return Err(err("expected an edge `i j`"));
                    }
                    let a = parts[0].parse().map_err(|_| err("edge endpoint is not an integer"))?;
                    let b = parts[1].parse().map_err(|_| err("edge endpoint is not an integer"))?;
                    edges.push((a, b));
                }
            }
        }
        let n = n.ok_or(GraphError::Parse { line: 0, message: "missing `vertices: n` header".into() })?;
        Self::new(n, &edges)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Edges as 1-based pairs `(i, j)` with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(a, b)| (a + 1, b + 1))
    }

    /// Adjacency test on 0-based indices.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }

    /// 0-based neighbours of 0-based vertex `i`.
    pub fn neighbours(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn components(&self) -> impl Iterator<Item = DynkinType> + '_ {
        self.components.iter().map(|(t, _)| *t)
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    /// `"E6"`, or `"A2+A1"` for disconnected graphs.
    pub fn type_name(&self) -> String {
        let mut names: Vec<String> = self.components.iter().map(|(t, _)| t.to_string()).collect();
        names.sort();
        names.join("+")
    }

    pub fn positive_root_count(&self) -> usize {
        self.components.iter().map(|(t, _)| t.positive_root_count()).sum()
    }

    /// Serializes to the graph file format.
    pub fn to_file_format(&self) -> String {
        let mut out = format!("vertices: {}\n", self.n);
        for (a, b) in self.edges() {
            out.push_str(&format!("{a} {b}\n"));
        }
        out
    }
}

impl fmt::Display for CoxeterGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges().map(|(a, b)| format!("{a}-{b}")).collect();
        write!(f, "{} [{}]", self.type_name(), edges.join(" "))
    }
}

fn bfs(adjacency: &[Vec<usize>], start: usize, seen: &mut [bool]) -> Vec<usize> {
    let mut order = vec![start];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(v) = queue.pop_front() {
        for &u in &adjacency[v] {
            if !seen[u] {
                seen[u] = true;
                order.push(u);
                queue.push_back(u);
            }
        }
    }
    order.sort_unstable();
    order
}

fn one_based(vs: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut out: Vec<usize> = vs.into_iter().map(|v| v + 1).collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn non_spherical(reason: impl Into<String>, subgraph: Vec<usize>) -> GraphError {
    GraphError::NonSpherical { reason: reason.into(), subgraph }
}

/// Classifies a connected component, or reports a minimal non-spherical witness
/// (a cycle, a degree-4 star, an affine D between two branch points, or an
/// affine E inside the arms of the unique branch point).
fn classify_component(adjacency: &[Vec<usize>], comp: &[usize]) -> Result<DynkinType, GraphError> {
    let n = comp.len();
    let edge_count: usize = comp.iter().map(|&v| adjacency[v].len()).sum::<usize>() / 2;
    if edge_count >= n {
        return Err(non_spherical("contains a cycle", one_based(find_cycle(adjacency, comp))));
    }
    if let Some(&v) = comp.iter().find(|&&v| adjacency[v].len() >= 4) {
        let star = std::iter::once(v).chain(adjacency[v].iter().copied().take(4));
        return Err(non_spherical("vertex of degree at least 4", one_based(star)));
    }
    let branches: Vec<usize> = comp.iter().copied().filter(|&v| adjacency[v].len() == 3).collect();
    match branches.len() {
        0 => Ok(DynkinType::A(n)),
        1 => {
            let centre = branches[0];
            let mut arms: Vec<Vec<usize>> = adjacency[centre].iter().map(|&start| walk_arm(adjacency, centre, start)).collect();
            arms.sort_by_key(Vec::len);
            let (p, q, r) = (arms[0].len(), arms[1].len(), arms[2].len());
            match (p, q, r) {
                (1, 1, _) => Ok(DynkinType::D(n)),
                (1, 2, 2..=4) => Ok(DynkinType::E(n)),
                _ => {
                    let keep: [usize; 3] = if p >= 2 { [2, 2, 2] } else if q >= 3 { [1, 3, 3] } else { [1, 2, 5] };
                    let mut witness = vec![centre];
                    for (arm, k) in arms.iter().zip(keep) {
                        witness.extend(arm.iter().take(k));
                    }
                    Err(non_spherical(format!("branch arms of lengths ({p}, {q}, {r}) contain an affine E graph"), one_based(witness)))
                }
            }
        }
        _ => {
            let (a, b) = (branches[0], branches[1]);
            let mut witness = path_between(adjacency, a, b);
            witness.extend(adjacency[a].iter().copied());
            witness.extend(adjacency[b].iter().copied());
            Err(non_spherical("two branch vertices (affine D subgraph)", one_based(witness)))
        }
    }
}

fn walk_arm(adjacency: &[Vec<usize>], centre: usize, start: usize) -> Vec<usize> {
    let mut arm = vec![start];
    let (mut prev, mut cur) = (centre, start);
    while let Some(&next) = adjacency[cur].iter().find(|&&u| u != prev) {
        arm.push(next);
        prev = cur;
        cur = next;
    }
    arm
}

fn path_between(adjacency: &[Vec<usize>], a: usize, b: usize) -> Vec<usize> {
    let mut parent = vec![usize::MAX; adjacency.len()];
    parent[a] = a;
    let mut queue = VecDeque::from([a]);
    while let Some(v) = queue.pop_front() {
        for &u in &adjacency[v] {
            if parent[u] == usize::MAX {
                parent[u] = v;
                queue.push_back(u);
            }
        }
    }
    let mut path = vec![b];
    let mut cur = b;
    while cur != a {
        cur = parent[cur];
        path.push(cur);
    }
    path
}

fn find_cycle(adjacency: &[Vec<usize>], comp: &[usize]) -> Vec<usize> {
    // DFS with parent pointers; the first back edge closes a cycle.
    let mut parent = vec![usize::MAX; adjacency.len()];
    let mut depth = vec![usize::MAX; adjacency.len()];
    let root = comp[0];
    parent[root] = root;
    depth[root] = 0;
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        for &u in &adjacency[v] {
            if u == parent[v] {
                continue;
            }
            if depth[u] != usize::MAX {
                let (mut x, mut y) = (v, u);
                let mut cycle = vec![x, y];
                while x != y {
                    if depth[x] >= depth[y] {
                        x = parent[x];
                        cycle.push(x);
                    } else {
                        y = parent[y];
                        cycle.push(y);
                    }
                }
                return cycle;
            }
            parent[u] = v;
            depth[u] = depth[v] + 1;
            stack.push(u);
        }
    }
    comp.to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_types_classify() {
        for (name, roots) in [("A1", 1), ("A2", 3), ("A3", 6), ("A9", 45), ("D4", 12), ("D5", 20), ("E6", 36), ("E7", 63), ("E8", 120)] {
            let g = CoxeterGraph::named(name).unwrap();
            assert_eq!(g.type_name(), name);
            assert_eq!(g.positive_root_count(), roots, "{name}");
        }
        assert!(matches!(CoxeterGraph::named("B3"), Err(GraphError::UnknownType(_))));
        assert!(matches!(CoxeterGraph::named("E9"), Err(GraphError::UnknownType(_))));
    }

    #[test]
    fn rejects_cycles_and_affine_graphs() {
        let triangle = CoxeterGraph::new(3, &[(1, 2), (2, 3), (1, 3)]);
        assert!(matches!(triangle, Err(GraphError::NonSpherical { ref subgraph, .. }) if subgraph == &vec![1, 2, 3]));

        let star = CoxeterGraph::new(5, &[(1, 2), (1, 3), (1, 4), (1, 5)]);
        assert!(matches!(star, Err(GraphError::NonSpherical { ref subgraph, .. }) if subgraph.len() == 5));

        // affine E6: three arms of length 2
        let e6_affine = CoxeterGraph::new(7, &[(1, 2), (2, 3), (1, 4), (4, 5), (1, 6), (6, 7)]);
        assert!(matches!(e6_affine, Err(GraphError::NonSpherical { ref subgraph, .. }) if subgraph.len() == 7));

        // affine D5: two branch points
        let d_affine = CoxeterGraph::new(6, &[(1, 3), (2, 3), (3, 4), (4, 5), (4, 6)]);
        assert!(matches!(d_affine, Err(GraphError::NonSpherical { .. })));
    }

    #[test]
    fn structural_errors() {
        assert_eq!(CoxeterGraph::new(2, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(CoxeterGraph::new(2, &[(1, 2), (2, 1)]), Err(GraphError::DuplicateEdge(1, 2)));
        assert_eq!(CoxeterGraph::new(2, &[(1, 3)]), Err(GraphError::VertexOutOfRange { vertex: 3, n: 2 }));
        assert!(matches!(CoxeterGraph::new(3, &[(1, 2)]), Err(GraphError::Disconnected { .. })));
        let g = CoxeterGraph::new_allow_disconnected(3, &[(1, 2)]).unwrap();
        assert_eq!(g.type_name(), "A1+A2");
    }

    #[test]
    fn file_format_round_trip() {
        let text = "# E6\nvertices: 6\n1 3\n2 4\n3 4\n4 5\n5 6\n";
        let g = CoxeterGraph::parse(text).unwrap();
        assert_eq!(g, CoxeterGraph::named("E6").unwrap());
        assert_eq!(CoxeterGraph::parse(&g.to_file_format()).unwrap(), g);
        assert!(matches!(CoxeterGraph::parse("1 2\n"), Err(GraphError::Parse { line: 1, .. })));
        assert!(matches!(CoxeterGraph::parse("vertices: 2\n1\n"), Err(GraphError::Parse { line: 2, .. })));
    }
}
