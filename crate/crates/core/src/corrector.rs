//! Corrections from clusters by peeling, plus validation of the result.
//!
//! A cluster's fully grown edges are reduced to a spanning tree. When the
//! cluster touches the boundary the tree hangs off its lowest-id fully grown
//! boundary edge; otherwise it is rooted at the smallest member. Vertices are
//! then visited leaves first (reverse breadth-first order): a vertex still
//! carrying a defect emits the edge to its parent and passes the defect up.

use std::collections::VecDeque;
use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::graph::{DecodingGraph, EdgeId, VertexId};
use crate::noise::{syndrome_from_pattern, ErrorPattern, Syndrome};
use crate::serial_uf::{Cluster, ClusterSet};

struct Tree {
    members: Vec<VertexId>,
    /// Local index of the root.
    root: usize,
    /// Boundary edge above the root, if the cluster is matched to the boundary.
    root_edge: Option<EdgeId>,
    /// `(parent local index, edge)` for every non-root member.
    up: Vec<Option<(usize, EdgeId)>>,
}

impl Tree {
    fn local(&self, v: VertexId) -> Option<usize> {
        self.members.binary_search(&v).ok()
    }

    fn bfs_order(&self) -> Vec<usize> {
        let n = self.members.len();
        let mut children = vec![Vec::new(); n];
        for (k, up) in self.up.iter().enumerate() {
            if let Some((p, _)) = up {
                children[*p].push(k);
            }
        }
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([self.root]);
        while let Some(k) = queue.pop_front() {
            order.push(k);
            queue.extend(children[k].iter().copied());
        }
        order
    }

    fn peel(&self, defects: &Syndrome, cluster_root: VertexId) -> Result<Vec<EdgeId>> {
        let mut carry: Vec<bool> = self.members.iter().map(|&v| defects.is_defect(v)).collect();
        let order = self.bfs_order();
        if order.len() != self.members.len() {
            return Err(Error::NotAnnihilated);
        }
        let mut correction = Vec::new();
        for &k in order.iter().rev() {
            if !carry[k] {
                continue;
            }
            match self.up[k] {
                Some((p, e)) => {
                    correction.push(e);
                    carry[k] = false;
                    carry[p] ^= true;
                }
                None => match self.root_edge {
                    Some(e) => correction.push(e),
                    None => return Err(Error::OddCluster(cluster_root.0)),
                },
            }
        }
        correction.sort_unstable();
        Ok(correction)
    }
}

fn lowest_boundary_edge(g: &DecodingGraph, cluster: &Cluster) -> Option<EdgeId> {
    cluster
        .edges
        .iter()
        .copied()
        .find(|&e| g.edge(e).is_boundary())
}

/// Starting vertex and optional boundary edge for a cluster's tree.
fn tree_root(g: &DecodingGraph, cluster: &Cluster) -> (VertexId, Option<EdgeId>) {
    if cluster.boundary {
        if let Some(e) = lowest_boundary_edge(g, cluster) {
            return (g.edge(e).a, Some(e));
        }
    }
    (cluster.root, None)
}

/// Peels one cluster using a breadth-first spanning tree of its fully grown edges.
pub fn peel(g: &DecodingGraph, cluster: &Cluster, defects: &Syndrome) -> Result<Vec<EdgeId>> {
    if cluster.is_odd() {
        return Err(Error::OddCluster(cluster.root.0));
    }
    let (start, root_edge) = tree_root(g, cluster);
    let mut tree = Tree {
        members: cluster.members.clone(),
        root: 0,
        root_edge,
        up: vec![None; cluster.members.len()],
    };
    tree.root = tree.local(start).ok_or(Error::NotAnnihilated)?;
    let mut seen = vec![false; tree.members.len()];
    seen[tree.root] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        let kv = tree.local(v).expect("member");
        for &e in g.incident(v) {
            if cluster.edges.binary_search(&e).is_err() {
                continue;
            }
            let Some(u) = g.edge(e).other(v) else { continue };
            let Some(ku) = tree.local(u) else { continue };
            if !seen[ku] {
                seen[ku] = true;
                tree.up[ku] = Some((kv, e));
                queue.push_back(u);
            }
        }
    }
    tree.peel(defects, cluster.root)
}

/// Peels one cluster along an existing parent forest, such as the parent
/// pointers of the PE array at quiescence. The tree is re-rooted at the
/// cluster's lowest-id boundary edge when it touches the boundary.
pub fn peel_with_parents(
    g: &DecodingGraph,
    cluster: &Cluster,
    parent: impl Fn(VertexId) -> VertexId,
    defects: &Syndrome,
) -> Result<Vec<EdgeId>> {
    if cluster.is_odd() {
        return Err(Error::OddCluster(cluster.root.0));
    }
    let mut tree = Tree {
        members: cluster.members.clone(),
        root: 0,
        root_edge: None,
        up: vec![None; cluster.members.len()],
    };
    for (k, &v) in cluster.members.iter().enumerate() {
        let p = parent(v);
        if p == v {
            tree.root = k;
            continue;
        }
        let kp = tree.local(p).ok_or(Error::NotAnnihilated)?;
        let e = g.edge_between(v, p).ok_or(Error::NotAnnihilated)?;
        tree.up[k] = Some((kp, e));
    }
    let (start, root_edge) = tree_root(g, cluster);
    let new_root = tree.local(start).ok_or(Error::NotAnnihilated)?;
    // Reverse the path from the new root up to the old one.
    let mut cur = new_root;
    let mut carried: Option<(usize, EdgeId)> = None;
    loop {
        let next = tree.up[cur];
        tree.up[cur] = carried;
        match next {
            Some((p, e)) => {
                carried = Some((cur, e));
                cur = p;
            }
            None => break,
        }
    }
    tree.root = new_root;
    tree.root_edge = root_edge;
    tree.peel(defects, cluster.root)
}

/// Corrections for every cluster of a decoded syndrome, merged and sorted.
pub fn correct(g: &DecodingGraph, clusters: &ClusterSet, s: &Syndrome) -> Result<Vec<EdgeId>> {
    let mut all = Vec::new();
    for c in clusters.clusters() {
        all.extend(peel(g, c, s)?);
    }
    all.sort_unstable();
    Ok(all)
}

/// True iff toggling the endpoints of every correction edge clears every defect.
pub fn check_annihilation(g: &DecodingGraph, s: &Syndrome, correction: &[EdgeId]) -> bool {
    if s.num_vertices() != g.num_vertices() {
        return false;
    }
    let mut residual = s.defect_bits().to_vec();
    for &e in correction {
        if e.index() >= g.num_edges() {
            return false;
        }
        for v in g.edge(e).endpoints() {
            residual[v.index()] ^= true;
        }
    }
    residual.iter().all(|&b| !b)
}

/// Whether error and correction together flip the logical qubit: the number
/// of their edges crossing the logical cut is odd.
///
/// Fails with [`Error::NotAnnihilated`] if the correction does not clear the
/// error's syndrome.
pub fn logical_flip(g: &DecodingGraph, error: &ErrorPattern, correction: &[EdgeId]) -> Result<bool> {
    let s = syndrome_from_pattern(g, error);
    if !check_annihilation(g, &s, correction) {
        return Err(Error::NotAnnihilated);
    }
    let crossings = error
        .fired()
        .iter()
        .chain(correction)
        .filter(|&&e| g.edge(e).crosses_cut)
        .count();
    Ok(crossings % 2 == 1)
}

/// Writes `trial: e1 e2 ...`.
pub fn write_correction<W: Write>(mut out: W, trial: u64, correction: &[EdgeId]) -> io::Result<()> {
    write!(out, "{trial}:")?;
    for e in correction {
        write!(out, " {e}")?;
    }
    writeln!(out)
}
