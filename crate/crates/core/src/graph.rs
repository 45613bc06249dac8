//! Small directed multigraphs on vertices `{1, …, v}` and graphical
//! inversion numbers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Directed multigraph with 1-based vertex labels. Parallel and antiparallel
/// edges are allowed; cycles are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DirectedGraph {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
}

/// Named graph families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    /// Complete transitive tournament `i → j` for all `i < j`.
    Transitive { vertices: usize },
    /// Oriented path `1 → 2 → ⋯ → v`.
    Path { vertices: usize },
    /// Oriented cycle `1 → 2 → ⋯ → v → 1`.
    Cycle { vertices: usize },
    /// `U ⇉ V` with `U = {1..u}`, `V = {u+1..u+v}`.
    CompleteBipartite { left: usize, right: usize },
    /// `U1 ⇉ V1 ⇉ U2 ⇉ V2 ⇉ U1`, blocks laid out consecutively.
    CyclicBipartite { blocks: [usize; 4] },
}

impl DirectedGraph {
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if num_vertices == 0 {
            return Err(Error::InvalidParameter("graph needs a vertex".into()));
        }
        for &(u, w) in &edges {
            if u == 0 || w == 0 || u > num_vertices || w > num_vertices {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u},{w}) outside vertex range 1..={num_vertices}"
                )));
            }
        }
        Ok(Self {
            num_vertices,
            edges,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_isolated_vertex(&self) -> bool {
        let mut touched = vec![false; self.num_vertices + 1];
        for &(u, w) in &self.edges {
            touched[u] = true;
            touched[w] = true;
        }
        touched[1..].iter().any(|t| !t)
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.0 == v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.1 == v).count()
    }

    /// Same graph with edge `index` reversed.
    pub fn flip_edge(&self, index: usize) -> Result<Self> {
        let mut edges = self.edges.clone();
        let e = edges.get_mut(index).ok_or_else(|| {
            Error::InvalidParameter(format!("edge index {index} out of range"))
        })?;
        *e = (e.1, e.0);
        Ok(Self {
            num_vertices: self.num_vertices,
            edges,
        })
    }

    /// Disjoint union; `other`'s vertices are shifted past ours.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let shift = self.num_vertices;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, w)| (u + shift, w + shift)));
        Self {
            num_vertices: self.num_vertices + other.num_vertices,
            edges,
        }
    }

    /// Weakly connected components, each relabelled onto `{1, …, v_i}`
    /// preserving the relative order of the original labels.
    pub fn components(&self) -> Vec<DirectedGraph> {
        let n = self.num_vertices;
        let mut parent: Vec<usize> = (0..=n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(u, w) in &self.edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, w));
            if a != b {
                parent[a] = b;
            }
        }
        let mut root_index = vec![usize::MAX; n + 1];
        let mut members: Vec<Vec<usize>> = Vec::new();
        for v in 1..=n {
            let r = find(&mut parent, v);
            if root_index[r] == usize::MAX {
                root_index[r] = members.len();
                members.push(Vec::new());
            }
            members[root_index[r]].push(v);
        }
        let mut local = vec![0; n + 1];
        for group in &members {
            for (i, &v) in group.iter().enumerate() {
                local[v] = i + 1;
            }
        }
        let mut comp_edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); members.len()];
        for &(u, w) in &self.edges {
            let c = root_index[find(&mut parent, u)];
            comp_edges[c].push((local[u], local[w]));
        }
        members
            .iter()
            .zip(comp_edges)
            .map(|(group, edges)| DirectedGraph {
                num_vertices: group.len(),
                edges,
            })
            .collect()
    }

    /// Edge set `{i → i+j : i ∈ Z_{2n+1}, 1 ≤ j ≤ n}`, with `i ∈ Z_{2n+1}`
    /// labelled as vertex `i + 1`.
    pub fn clockwise_tournament(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        let size = 2 * n + 1;
        let mut edges = Vec::with_capacity(size * n);
        for i in 0..size {
            for j in 1..=n {
                edges.push((i + 1, (i + j) % size + 1));
            }
        }
        Ok(Self {
            num_vertices: size,
            edges,
        })
    }

    pub fn standard(kind: GraphKind) -> Result<Self> {
        match kind {
            GraphKind::Transitive { vertices } => {
                let edges = (1..=vertices)
                    .flat_map(|i| ((i + 1)..=vertices).map(move |j| (i, j)))
                    .collect();
                Self::new(vertices, edges)
            }
            GraphKind::Path { vertices } => {
                if vertices < 2 {
                    return Err(Error::InvalidParameter(
                        "a path needs at least 2 vertices".into(),
                    ));
                }
                Self::new(vertices, (1..vertices).map(|i| (i, i + 1)).collect())
            }
            GraphKind::Cycle { vertices } => {
                if vertices < 2 {
                    return Err(Error::InvalidParameter(
                        "a cycle needs at least 2 vertices".into(),
                    ));
                }
                let mut edges: Vec<_> = (1..vertices).map(|i| (i, i + 1)).collect();
                edges.push((vertices, 1));
                Self::new(vertices, edges)
            }
            GraphKind::CompleteBipartite { left, right } => {
                if left == 0 || right == 0 {
                    return Err(Error::InvalidParameter(
                        "both sides of a bipartite graph must be nonempty".into(),
                    ));
                }
                let edges = (1..=left)
                    .flat_map(|u| (left + 1..=left + right).map(move |w| (u, w)))
                    .collect();
                Self::new(left + right, edges)
            }
            GraphKind::CyclicBipartite { blocks } => {
                if blocks.iter().any(|&b| b == 0) {
                    return Err(Error::InvalidParameter(
                        "all four blocks must be nonempty".into(),
                    ));
                }
                let mut starts = [0usize; 4];
                let mut acc = 1;
                for (s, &b) in starts.iter_mut().zip(&blocks) {
                    *s = acc;
                    acc += b;
                }
                let mut edges = Vec::new();
                for k in 0..4 {
                    let (from, to) = (k, (k + 1) % 4);
                    for u in starts[from]..starts[from] + blocks[from] {
                        for w in starts[to]..starts[to] + blocks[to] {
                            edges.push((u, w));
                        }
                    }
                }
                Self::new(acc - 1, edges)
            }
        }
    }

    /// Oriented path with `m` edges (`m + 1` vertices).
    pub fn path_with_edges(m: usize) -> Result<Self> {
        Self::standard(GraphKind::Path { vertices: m + 1 })
    }

    /// Oriented cycle with `m ≥ 2` edges.
    pub fn cycle_with_edges(m: usize) -> Result<Self> {
        Self::standard(GraphKind::Cycle { vertices: m })
    }
}

/// Number of edges `u → w` with `p(u) > p(w)`, vertex `u` read as position
/// `u − 1`.
pub fn inv_graphical(p: &Permutation, graph: &DirectedGraph) -> Result<u64> {
    if p.size() != graph.num_vertices() {
        return Err(Error::SizeMismatch {
            perm: p.size(),
            graph: graph.num_vertices(),
        });
    }
    Ok(graph
        .edges()
        .iter()
        .filter(|&&(u, w)| p.apply(u - 1) > p.apply(w - 1))
        .count() as u64)
}
