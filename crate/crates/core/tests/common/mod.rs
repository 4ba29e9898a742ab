//! Reference computations shared by the oracle tests and the acceptance run.

use std::collections::VecDeque;

use helios_uf::graph::{DecodingGraph, VertexId};
use helios_uf::serial_uf::ClusterSet;

pub type Plain = (u32, Vec<u32>, bool, bool, Vec<u32>);

/// Grows every edge next to an odd component until no odd component is left,
/// recomputing components from scratch by BFS after each step.
pub fn fixpoint_clusters(g: &DecodingGraph, defects: &[bool]) -> Vec<Plain> {
    let n = g.num_vertices();
    let mut growth = vec![0u32; g.num_edges()];
    loop {
        let full = |e: usize| growth[e] >= g.edges()[e].weight;
        let mut comp = vec![usize::MAX; n];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = comps.len();
            comp[s] = id;
            let mut members = vec![s];
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &e in g.incident(VertexId::from_index(u)) {
                    let edge = g.edge(e);
                    if let (true, Some(b)) = (full(e.index()), edge.b) {
                        let w = if edge.a.index() == u { b.index() } else { edge.a.index() };
                        if comp[w] == usize::MAX {
                            comp[w] = id;
                            members.push(w);
                            q.push_back(w);
                        }
                    }
                }
            }
            comps.push(members);
        }
        let parity: Vec<bool> = comps.iter().map(|m| m.iter().filter(|&&v| defects[v]).count() % 2 == 1).collect();
        let mut boundary = vec![false; comps.len()];
        for (e, edge) in g.edges().iter().enumerate() {
            if edge.b.is_none() && full(e) {
                boundary[comp[edge.a.index()]] = true;
            }
        }
        let odd: Vec<bool> = (0..comps.len()).map(|c| parity[c] && !boundary[c]).collect();
        if !odd.iter().any(|&o| o) {
            let mut out: Vec<Plain> = comps
                .iter()
                .enumerate()
                .filter(|(_, m)| m.iter().any(|&v| defects[v]))
                .map(|(c, m)| {
                    let mut ids: Vec<u32> = m.iter().map(|&v| v as u32 + 1).collect();
                    ids.sort();
                    let mut edges: Vec<u32> = (0..g.num_edges())
                        .filter(|&e| full(e) && g.edges()[e].endpoints().any(|v| comp[v.index()] == c))
                        .map(|e| e as u32)
                        .collect();
                    edges.sort();
                    (ids[0], ids, parity[c], boundary[c], edges)
                })
                .collect();
            out.sort();
            return out;
        }
        let mut next = growth.clone();
        for (e, edge) in g.edges().iter().enumerate() {
            if full(e) {
                continue;
            }
            let ca = comp[edge.a.index()];
            let inc = match edge.b {
                None => odd[ca] as u32,
                Some(b) if comp[b.index()] != ca => odd[ca] as u32 + odd[comp[b.index()]] as u32,
                Some(_) => 0,
            };
            next[e] = (growth[e] + inc).min(edge.weight);
        }
        growth = next;
    }
}

pub fn plain(set: &ClusterSet) -> Vec<Plain> {
    set.clusters()
        .iter()
        .map(|c| {
            (
                c.root.0,
                c.members.iter().map(|v| v.0).collect(),
                c.parity,
                c.boundary,
                c.edges.iter().map(|e| e.0).collect(),
            )
        })
        .collect()
}

pub fn subsets(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for k in 1..=max {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(idx.clone());
            let mut i = k;
            while i > 0 && idx[i - 1] == n - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    out
}

