//! The serial Union-Find decoder, used as the reference for the PE array.
//!
//! All odd clusters grow simultaneously by one unit per endpoint each
//! iteration, then clusters joined by newly fully grown edges are merged. A
//! cluster that contains a fully grown boundary edge counts as even.

mod cluster;
mod forest;

pub use cluster::{Cluster, ClusterSet};
pub use forest::UnionFindForest;

use crate::error::Result;
use crate::graph::DecodingGraph;
use crate::noise::Syndrome;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerialOutcome {
    pub clusters: ClusterSet,
    /// Final growth of every edge, indexed by edge id.
    pub growth: Vec<u32>,
    /// Number of growing iterations.
    pub iterations: usize,
}

pub fn decode_serial(g: &DecodingGraph, s: &Syndrome) -> Result<SerialOutcome> {
    s.check(g)?;
    let mut growth = vec![0u32; g.num_edges()];
    let mut forest = UnionFindForest::new(s.defect_bits());

    let merge = |forest: &mut UnionFindForest, e: crate::graph::EdgeId| {
        let edge = g.edge(e);
        match edge.b {
            Some(b) => {
                forest.union(edge.a, b);
            }
            None => forest.mark_boundary(edge.a),
        }
    };
    for &e in s.erased_edges() {
        growth[e.index()] = g.edge(e).weight;
        merge(&mut forest, e);
    }

    let defects: Vec<_> = s.defects().collect();
    let mut iterations = 0;
    let mut odd = vec![false; g.num_vertices()];
    let mut newly_full = Vec::new();
    loop {
        let mut any_odd = false;
        for v in g.vertices() {
            odd[v.index()] = forest.is_odd(v);
        }
        for &v in &defects {
            any_odd |= odd[v.index()];
        }
        if !any_odd {
            break;
        }
        iterations += 1;

        newly_full.clear();
        for (k, edge) in g.edges().iter().enumerate() {
            let gr = &mut growth[k];
            if *gr >= edge.weight {
                continue;
            }
            let inc = match edge.b {
                Some(b) => {
                    if forest.find(edge.a) == forest.find(b) {
                        continue;
                    }
                    u32::from(odd[edge.a.index()]) + u32::from(odd[b.index()])
                }
                None => u32::from(odd[edge.a.index()]),
            };
            if inc > 0 {
                *gr = (*gr + inc).min(edge.weight);
                if *gr == edge.weight {
                    newly_full.push(crate::graph::EdgeId(k as u32));
                }
            }
        }
        for &e in &newly_full {
            merge(&mut forest, e);
        }
    }

    Ok(SerialOutcome {
        clusters: ClusterSet::from_growth(g, s.defect_bits(), &growth),
        growth,
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_phenomenological, EdgeKind, VertexId};

    #[test]
    fn empty_syndrome() {
        let g = build_phenomenological(5, 5).unwrap();
        let out = decode_serial(&g, &Syndrome::empty(g.num_vertices())).unwrap();
        assert!(out.clusters.is_empty());
        assert_eq!(out.iterations, 0);
        assert!(out.growth.iter().all(|&x| x == 0));
    }

    #[test]
    fn two_defects_on_one_edge() {
        let g = build_phenomenological(5, 5).unwrap();
        let e = g.edges().iter().find(|e| e.kind == EdgeKind::Space).unwrap();
        let (a, b) = (e.a, e.b.unwrap());
        let out = decode_serial(&g, &Syndrome::from_defects(g.num_vertices(), &[a, b])).unwrap();
        assert_eq!(out.iterations, 1);
        assert_eq!(out.clusters.len(), 1);
        let c = &out.clusters.clusters()[0];
        assert_eq!(c.members, vec![a, b]);
        assert!(!c.parity);
    }

    #[test]
    fn four_defects_merge_into_one_even_cluster() {
        let g = build_phenomenological(5, 5).unwrap();
        let ids: Vec<_> = (1..=4).map(VertexId).collect();
        let out = decode_serial(&g, &Syndrome::from_defects(g.num_vertices(), &ids)).unwrap();
        assert_eq!(out.iterations, 1);
        assert_eq!(out.clusters.to_canonical_text(), "1 even interior: 1 2 3 4\n");
    }

    #[test]
    fn single_defect_terminates_at_the_boundary() {
        let g = build_phenomenological(5, 1).unwrap();
        let out = decode_serial(&g, &Syndrome::from_defects(g.num_vertices(), &[VertexId(1)])).unwrap();
        let c = &out.clusters.clusters()[0];
        assert!(c.parity && c.boundary);
        assert!(!out.clusters.has_odd_cluster());
    }

    #[test]
    fn erased_edge_starts_fully_grown() {
        let g = build_phenomenological(5, 2).unwrap();
        let e = g.edge_ids().find(|&e| g.edge(e).kind == EdgeKind::Space).unwrap();
        let s = Syndrome::empty(g.num_vertices()).with_erasures(vec![e]);
        let out = decode_serial(&g, &s).unwrap();
        assert_eq!(out.growth[e.index()], 2);
        assert_eq!(out.iterations, 0);
    }
}
