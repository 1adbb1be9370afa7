//! Directed multigraphs: strong connectivity and the ear decomposition
//! lemma ("removable cycle or path").

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("graph is not strongly connected")]
    NotStronglyConnected,
    #[error("edge {edge} mentions vertex {vertex} but the graph has {vertex_count} vertices")]
    BadEdge {
        edge: usize,
        vertex: usize,
        vertex_count: usize,
    },
}

/// A directed multigraph on vertices `0..vertex_count`; edge `i` is
/// `edges[i] = (source, target)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multigraph {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        for (i, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(GraphError::BadEdge {
                        edge: i,
                        vertex: w,
                        vertex_count,
                    });
                }
            }
        }
        Ok(Multigraph { vertex_count, edges })
    }

    /// Vertices reachable from `start` along edges accepted by `keep`.
    fn reach(&self, start: usize, forward: bool, keep: &dyn Fn(usize) -> bool) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for (i, &(a, b)) in self.edges.iter().enumerate() {
                let (from, to) = if forward { (a, b) } else { (b, a) };
                if from == u && keep(i) && !seen[to] {
                    seen[to] = true;
                    queue.push_back(to);
                }
            }
        }
        seen
    }

    /// Strong connectivity of the subgraph formed by `vertices` and the
    /// edges accepted by `keep`.
    fn strongly_connected_on(&self, vertices: &[bool], keep: &dyn Fn(usize) -> bool) -> bool {
        let Some(start) = vertices.iter().position(|&v| v) else {
            return true;
        };
        let fwd = self.reach(start, true, keep);
        let bwd = self.reach(start, false, keep);
        (0..self.vertex_count).all(|v| !vertices[v] || (fwd[v] && bwd[v]))
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.vertex_count > 0 && self.strongly_connected_on(&vec![true; self.vertex_count], &|_| true)
    }

    /// Strongly connected components, each sorted, ordered by least vertex.
    pub fn sccs(&self) -> Vec<Vec<usize>> {
        let all = |_| true;
        let fwd: Vec<Vec<bool>> = (0..self.vertex_count).map(|v| self.reach(v, true, &all)).collect();
        let mut assigned = vec![false; self.vertex_count];
        let mut out = Vec::new();
        for v in 0..self.vertex_count {
            if assigned[v] {
                continue;
            }
            let comp: Vec<usize> = (v..self.vertex_count)
                .filter(|&u| fwd[v][u] && fwd[u][v])
                .collect();
            for &u in &comp {
                assigned[u] = true;
            }
            out.push(comp);
        }
        out
    }

    /// Weakly connected components of the vertices touched by some edge.
    pub fn weak_components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        let mut touched = vec![false; self.vertex_count];
        for &(u, v) in &self.edges {
            touched[u] = true;
            touched[v] = true;
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru.max(rv)] = ru.min(rv);
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; self.vertex_count];
        for v in 0..self.vertex_count {
            if !touched[v] {
                continue;
            }
            let r = find(&mut parent, v);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(v);
        }
        groups
    }
}

/// Outcome of the union-of-SCCs test on an edge set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SccUnion {
    pub holds: bool,
    /// Weakly connected components of the touched vertices.
    pub components: Vec<Vec<usize>>,
}

/// Checks that every weakly connected component of the graph is strongly
/// connected, i.e. that the edge set is a union of SCCs.
pub fn is_union_of_sccs(g: &Multigraph) -> SccUnion {
    let components = g.weak_components();
    let holds = components.iter().all(|comp| {
        let mut mask = vec![false; g.vertex_count];
        for &v in comp {
            mask[v] = true;
        }
        g.strongly_connected_on(&mask, &|_| true)
    });
    SccUnion { holds, components }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EarKind {
    SimpleCycleWhole,
    RemovableCycle,
    RemovablePath,
}

/// One removable piece of a strongly connected multigraph.
///
/// For a path, `vertices` runs from source to target. For a cycle, it
/// starts at the attachment vertex and does not repeat it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EarStep {
    pub kind: EarKind,
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl EarStep {
    /// Vertices other than the attachment points.
    pub fn intermediate_vertices(&self) -> &[usize] {
        match self.kind {
            EarKind::SimpleCycleWhole => &[],
            EarKind::RemovableCycle => &self.vertices[1..],
            EarKind::RemovablePath => {
                let k = self.vertices.len();
                if k <= 2 {
                    &[]
                } else {
                    &self.vertices[1..k - 1]
                }
            }
        }
    }
}

/// Shortest path from `from` to any vertex accepted by `goal`, as edge ids.
/// Ties are broken by edge index because edges are scanned in order.
fn bfs_path(
    g: &Multigraph,
    from: usize,
    goal: &dyn Fn(usize) -> bool,
    usable: &dyn Fn(usize) -> bool,
) -> Option<(Vec<usize>, usize)> {
    if goal(from) {
        return Some((Vec::new(), from));
    }
    let mut via = vec![usize::MAX; g.vertex_count];
    let mut seen = vec![false; g.vertex_count];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        for (i, &(a, b)) in g.edges.iter().enumerate() {
            if a != u || seen[b] || !usable(i) {
                continue;
            }
            seen[b] = true;
            via[b] = i;
            if goal(b) {
                let mut path = vec![i];
                let mut v = a;
                while v != from {
                    let e = via[v];
                    path.push(e);
                    v = g.edges[e].0;
                }
                path.reverse();
                return Some((path, b));
            }
            queue.push_back(b);
        }
    }
    None
}

/// Ear decomposition of a strongly connected multigraph, returning the
/// last ear added.
///
/// The graph is grown from the simple cycle through edge 0. While some
/// vertex is missing, the lowest-index edge from a present vertex to a
/// missing one is extended by a shortest path back to the present
/// vertices. Remaining edges are then added one at a time.
pub fn ear_decomposition(g: &Multigraph) -> Result<EarStep, GraphError> {
    if g.edges.is_empty() {
        return Err(GraphError::EmptyGraph);
    }
    if !g.is_strongly_connected() {
        return Err(GraphError::NotStronglyConnected);
    }
    let mut used = vec![false; g.edges.len()];
    let mut present = vec![false; g.vertex_count];

    let (u, v) = g.edges[0];
    let mut cycle_edges = vec![0];
    let mut cycle_vertices = vec![u];
    if u != v {
        let (path, _) = bfs_path(g, v, &|w| w == u, &|_| true).expect("strongly connected");
        cycle_vertices.push(v);
        for &e in &path[..path.len() - 1] {
            cycle_vertices.push(g.edges[e].1);
        }
        cycle_edges.extend(path);
    }
    for &e in &cycle_edges {
        used[e] = true;
    }
    for &w in &cycle_vertices {
        present[w] = true;
    }
    let mut last = EarStep {
        kind: EarKind::SimpleCycleWhole,
        vertices: cycle_vertices,
        edges: cycle_edges,
    };

    while present.iter().any(|&p| !p) {
        let (first, (vp, vn)) = g
            .edges
            .iter()
            .copied()
            .enumerate()
            .find(|&(_, (a, b))| present[a] && !present[b])
            .expect("strongly connected");
        let snapshot = present.clone();
        let (path, end) =
            bfs_path(g, vn, &|w| snapshot[w], &|_| true).expect("strongly connected");
        let mut vertices = vec![vp, vn];
        for &e in &path[..path.len() - 1] {
            vertices.push(g.edges[e].1);
        }
        let mut edges = vec![first];
        edges.extend(path);
        let kind = if end == vp {
            EarKind::RemovableCycle
        } else {
            vertices.push(end);
            EarKind::RemovablePath
        };
        for &e in &edges {
            used[e] = true;
        }
        for &w in &vertices {
            present[w] = true;
        }
        last = EarStep {
            kind,
            vertices,
            edges,
        };
    }

    if let Some(e) = (0..g.edges.len()).rev().find(|&e| !used[e]) {
        // leftover edges are single-edge ears; the highest index is added last
        let (a, b) = g.edges[e];
        last = if a == b {
            EarStep {
                kind: EarKind::RemovableCycle,
                vertices: vec![a],
                edges: vec![e],
            }
        } else {
            EarStep {
                kind: EarKind::RemovablePath,
                vertices: vec![a, b],
                edges: vec![e],
            }
        };
    }
    Ok(last)
}

/// Independent check of the three postconditions of an ear.
pub fn verify_ear(g: &Multigraph, ear: &EarStep) -> Result<(), String> {
    let mut sorted = ear.vertices.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err("ear vertices repeat".into());
    }
    if ear.edges.is_empty() {
        return Err("ear has no edges".into());
    }
    // edges must trace the vertex sequence
    let k = ear.vertices.len();
    for (i, &e) in ear.edges.iter().enumerate() {
        let (a, b) = *g.edges.get(e).ok_or("edge id out of range")?;
        let expect_a = ear.vertices[i % k];
        let expect_b = match ear.kind {
            EarKind::RemovablePath => *ear.vertices.get(i + 1).ok_or("path too short")?,
            _ => ear.vertices[(i + 1) % k],
        };
        if (a, b) != (expect_a, expect_b) {
            return Err(format!("edge {e} does not follow the ear"));
        }
    }
    let expected_edges = match ear.kind {
        EarKind::RemovablePath => k - 1,
        _ => k,
    };
    if ear.edges.len() != expected_edges {
        return Err("edge count does not match the vertex sequence".into());
    }
    if ear.kind == EarKind::SimpleCycleWhole {
        if g.edges.len() != ear.edges.len() || k != g.vertex_count {
            return Err("graph is not exactly this simple cycle".into());
        }
        return Ok(());
    }
    let inner = ear.intermediate_vertices();
    for (i, &(a, b)) in g.edges.iter().enumerate() {
        if ear.edges.contains(&i) {
            continue;
        }
        if inner.contains(&a) || inner.contains(&b) {
            return Err(format!("intermediate vertex touched by edge {i}"));
        }
    }
    let mut keep_vertex = vec![true; g.vertex_count];
    for &v in inner {
        keep_vertex[v] = false;
    }
    let removed = ear.edges.clone();
    if !g.strongly_connected_on(&keep_vertex, &|e| !removed.contains(&e)) {
        return Err("remaining graph is not strongly connected".into());
    }
    Ok(())
}
