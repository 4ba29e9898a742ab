use std::fmt::Write as _;

use crate::graph::{DecodingGraph, EdgeId, VertexId};
use crate::serial_uf::UnionFindForest;

/// A connected set of vertices joined by fully grown edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cluster {
    /// Smallest member id; equals the cluster id of the distributed decoder.
    pub root: VertexId,
    /// Members in ascending id order.
    pub members: Vec<VertexId>,
    /// Odd number of defects.
    pub parity: bool,
    /// Contains a fully grown boundary edge.
    pub boundary: bool,
    /// Fully grown edges with an endpoint in the cluster, ascending.
    pub edges: Vec<EdgeId>,
}

impl Cluster {
    /// Still odd after accounting for boundary contact.
    pub fn is_odd(&self) -> bool {
        self.parity && !self.boundary
    }
}

/// Canonical description of a decoder's final clusters: only clusters holding
/// at least one defect, ordered by root.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClusterSet {
    clusters: Vec<Cluster>,
}

impl ClusterSet {
    /// Connected components of the fully grown edges that contain a defect.
    pub fn from_growth(g: &DecodingGraph, defects: &[bool], growth: &[u32]) -> Self {
        let full = |e: EdgeId| growth[e.index()] >= g.edge(e).weight;
        let mut forest = UnionFindForest::new(defects);
        let mut has_defect = defects.to_vec();
        for e in g.edge_ids().filter(|&e| full(e)) {
            let edge = g.edge(e);
            match edge.b {
                Some(b) => {
                    let keep = has_defect[forest.find(edge.a).index()]
                        | has_defect[forest.find(b).index()];
                    let r = forest.union(edge.a, b);
                    has_defect[r.index()] = keep;
                }
                None => forest.mark_boundary(edge.a),
            }
        }
        let mut by_root: Vec<Option<usize>> = vec![None; g.num_vertices()];
        let mut clusters: Vec<Cluster> = Vec::new();
        for v in g.vertices() {
            let r = forest.find(v);
            if !has_defect[r.index()] {
                continue;
            }
            let k = *by_root[r.index()].get_or_insert_with(|| {
                clusters.push(Cluster {
                    root: v,
                    members: Vec::new(),
                    parity: forest.parity(v),
                    boundary: forest.touches_boundary(v),
                    edges: Vec::new(),
                });
                clusters.len() - 1
            });
            clusters[k].members.push(v);
        }
        for e in g.edge_ids().filter(|&e| full(e)) {
            let r = forest.find(g.edge(e).a);
            if let Some(k) = by_root[r.index()] {
                clusters[k].edges.push(e);
            }
        }
        ClusterSet { clusters }
    }

    /// Assembles a set from clusters built elsewhere, putting it in canonical order.
    pub fn from_clusters(mut clusters: Vec<Cluster>) -> Self {
        for c in &mut clusters {
            c.members.sort_unstable();
            c.edges.sort_unstable();
        }
        clusters.sort_by_key(|c| c.root);
        ClusterSet { clusters }
    }

    pub fn clusters(&self) -> &[Cluster] {
        &self.clusters
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    /// All fully grown edges inside defect-carrying clusters.
    pub fn grown_edges(&self) -> Vec<EdgeId> {
        let mut all: Vec<EdgeId> = self.clusters.iter().flat_map(|c| c.edges.iter().copied()).collect();
        all.sort_unstable();
        all
    }

    pub fn has_odd_cluster(&self) -> bool {
        self.clusters.iter().any(Cluster::is_odd)
    }

    /// One line per cluster: `root parity boundary: members`.
    pub fn to_canonical_text(&self) -> String {
        let mut out = String::new();
        for c in &self.clusters {
            let _ = write!(
                out,
                "{} {} {}:",
                c.root,
                if c.parity { "odd" } else { "even" },
                if c.boundary { "boundary" } else { "interior" }
            );
            for m in &c.members {
                let _ = write!(out, " {m}");
            }
            out.push('\n');
        }
        out
    }
}
