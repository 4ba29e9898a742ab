//! Decoding graphs of the rotated surface code.
//!
//! Only the Z-type stabilizers are modelled: vertices are Z-ancilla measurement
//! outcomes and edges are independent X-error mechanisms. Decoding the X-type
//! graph is the same problem on the dual lattice.
//!
//! Layout: data qubits sit at lattice points `(i, j)` with `i, j` in `0..d`.
//! Plaquette corners `(a, b)` with `a, b` in `0..=d` carry an ancilla when the
//! plaquette exists; a Z ancilla lives at `(a, b)` with `a + b` even,
//! `1 <= a <= d - 1` and `0 <= b <= d`. In graph coordinates an ancilla is
//! `row = b` (there are `d + 1` rows) and `col = (a - 1) / 2` (there are
//! `(d - 1) / 2` columns). Vertex ids run round-major, then row-major, starting
//! at 1 for `(row 0, col 0, round 0)`.
//!
//! Data qubits with `i == 0` or `i == d - 1` touch a single Z ancilla and give
//! boundary edges. The logical cut used for logical-error detection is the set
//! of boundary edges on the `i == 0` side.
//!
//! Circuit-level graphs add two kinds of edges between consecutive rounds:
//! * diagonal: a data qubit `q` shared by ancillas `A < B` (in-round order)
//!   flipped between CNOTs links `(A, t)` to `(B, t + 1)`;
//! * hook: an X fault on the X ancilla of bulk plaquette `(a, b)` spreads to
//!   data qubits `(a, b - 1)` and `(a, b)`; it links Z ancillas `(a, b - 1)` at
//!   round `t` and `(a, b + 1)` at round `t + 1`.

pub mod export;
pub mod partition;
pub mod weights;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use partition::{partition, Partition};
pub use weights::{assign_weights, weights_from_probabilities};

/// Weight of every edge in an unweighted graph.
pub const DEFAULT_WEIGHT: u32 = 2;

/// 1-based vertex identifier, equal to the PE id in the Helios array.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }

    #[inline]
    pub fn from_index(index: usize) -> Self {
        VertexId(index as u32 + 1)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeId(pub u32);

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Coord {
    pub row: u16,
    pub col: u16,
    pub round: u16,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DataQubit {
    pub i: u16,
    pub j: u16,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    Space,
    Time,
    Diagonal,
    Hook,
    Boundary,
}

impl EdgeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::Space => "space",
            EdgeKind::Time => "time",
            EdgeKind::Diagonal => "diagonal",
            EdgeKind::Hook => "hook",
            EdgeKind::Boundary => "boundary",
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphModel {
    Phenomenological,
    CircuitLevel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    /// Lower-id endpoint; the only endpoint of a boundary edge.
    pub a: VertexId,
    /// Higher-id endpoint, `None` for boundary edges.
    pub b: Option<VertexId>,
    pub weight: u32,
    pub kind: EdgeKind,
    /// Measurement round of `a`.
    pub round: u16,
    /// Data qubits X-flipped by this error mechanism.
    pub support: [Option<DataQubit>; 2],
    /// Whether the mechanism flips a qubit of the logical cut.
    pub crosses_cut: bool,
}

impl Edge {
    #[inline]
    pub fn is_boundary(&self) -> bool {
        self.b.is_none()
    }

    /// The endpoint opposite to `v`, or `None` for a boundary edge.
    #[inline]
    pub fn other(&self, v: VertexId) -> Option<VertexId> {
        let b = self.b?;
        Some(if self.a == v { b } else { self.a })
    }

    pub fn endpoints(&self) -> impl Iterator<Item = VertexId> {
        std::iter::once(self.a).chain(self.b)
    }
}

#[derive(Clone, Debug)]
pub struct DecodingGraph {
    d: usize,
    rounds: usize,
    model: GraphModel,
    coords: Vec<Coord>,
    edges: Vec<Edge>,
    incident_offsets: Vec<u32>,
    incident: Vec<EdgeId>,
}

/// Phenomenological decoding graph: space edges within a round, time edges
/// between consecutive rounds, boundary edges on both Z boundaries.
pub fn build_phenomenological(d: usize, rounds: usize) -> Result<DecodingGraph> {
    DecodingGraph::build(d, rounds, GraphModel::Phenomenological)
}

/// Phenomenological graph plus diagonal and hook edges between rounds.
pub fn build_circuit_level(d: usize, rounds: usize) -> Result<DecodingGraph> {
    DecodingGraph::build(d, rounds, GraphModel::CircuitLevel)
}

impl DecodingGraph {
    pub fn build(d: usize, rounds: usize, model: GraphModel) -> Result<Self> {
        if d < 3 || d.is_multiple_of(2) || d > 255 {
            return Err(Error::InvalidDistance(d));
        }
        if rounds == 0 || rounds > u16::MAX as usize {
            return Err(Error::InvalidRounds(rounds));
        }
        let layout = Layout { d };
        let per_round = layout.per_round();

        let mut coords = Vec::with_capacity(per_round * rounds);
        for round in 0..rounds {
            for row in 0..=d {
                for col in 0..layout.cols() {
                    coords.push(Coord {
                        row: row as u16,
                        col: col as u16,
                        round: round as u16,
                    });
                }
            }
        }

        let vid = |(row, col): (usize, usize), round: usize| {
            VertexId::from_index(round * per_round + row * layout.cols() + col)
        };
        let mut edges = Vec::new();
        let mut push = |a: VertexId,
                        b: Option<VertexId>,
                        kind: EdgeKind,
                        round: usize,
                        support: [Option<DataQubit>; 2]| {
            let (a, b) = match b {
                Some(b) if b < a => (b, Some(a)),
                other => (a, other),
            };
            let crosses_cut = kind == EdgeKind::Boundary
                && matches!(support, [Some(DataQubit { i: 0, .. }), _]);
            edges.push(Edge {
                a,
                b,
                weight: DEFAULT_WEIGHT,
                kind,
                round: round as u16,
                support,
                crosses_cut,
            });
        };

        for t in 0..rounds {
            for i in 0..d {
                for j in 0..d {
                    let q = DataQubit {
                        i: i as u16,
                        j: j as u16,
                    };
                    match layout.z_neighbours(i, j) {
                        [Some(x), Some(y)] => {
                            push(vid(x, t), Some(vid(y, t)), EdgeKind::Space, t, [Some(q), None])
                        }
                        [Some(x), None] | [None, Some(x)] => {
                            push(vid(x, t), None, EdgeKind::Boundary, t, [Some(q), None])
                        }
                        [None, None] => unreachable!("every data qubit touches a Z ancilla"),
                    }
                }
            }
            if t + 1 == rounds {
                continue;
            }
            for row in 0..=d {
                for col in 0..layout.cols() {
                    push(
                        vid((row, col), t),
                        Some(vid((row, col), t + 1)),
                        EdgeKind::Time,
                        t,
                        [None, None],
                    );
                }
            }
            if model == GraphModel::CircuitLevel {
                for i in 0..d {
                    for j in 0..d {
                        if let [Some(x), Some(y)] = layout.z_neighbours(i, j) {
                            let (lo, hi) = if vid(x, 0) < vid(y, 0) { (x, y) } else { (y, x) };
                            let q = DataQubit {
                                i: i as u16,
                                j: j as u16,
                            };
                            push(
                                vid(lo, t),
                                Some(vid(hi, t + 1)),
                                EdgeKind::Diagonal,
                                t,
                                [Some(q), None],
                            );
                        }
                    }
                }
                for a in 1..d {
                    for b in 1..d {
                        if (a + b) % 2 == 0 {
                            continue;
                        }
                        let lower = layout.z_ancilla(a, b - 1).expect("bulk hook endpoint");
                        let upper = layout.z_ancilla(a, b + 1).expect("bulk hook endpoint");
                        let support = [
                            Some(DataQubit {
                                i: a as u16,
                                j: (b - 1) as u16,
                            }),
                            Some(DataQubit {
                                i: a as u16,
                                j: b as u16,
                            }),
                        ];
                        push(vid(lower, t), Some(vid(upper, t + 1)), EdgeKind::Hook, t, support);
                    }
                }
            }
        }

        let mut graph = DecodingGraph {
            d,
            rounds,
            model,
            coords,
            edges,
            incident_offsets: Vec::new(),
            incident: Vec::new(),
        };
        graph.index_incidence();
        Ok(graph)
    }

    fn index_incidence(&mut self) {
        let n = self.coords.len();
        let mut degree = vec![0u32; n + 1];
        for e in &self.edges {
            for v in e.endpoints() {
                degree[v.index() + 1] += 1;
            }
        }
        for i in 0..n {
            degree[i + 1] += degree[i];
        }
        let mut fill = degree.clone();
        let mut incident = vec![EdgeId(0); degree[n] as usize];
        for (k, e) in self.edges.iter().enumerate() {
            for v in e.endpoints() {
                let slot = &mut fill[v.index()];
                incident[*slot as usize] = EdgeId(k as u32);
                *slot += 1;
            }
        }
        self.incident_offsets = degree;
        self.incident = incident;
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn model(&self) -> GraphModel {
        self.model
    }

    /// Number of Z ancillas, i.e. vertices per measurement round.
    pub fn per_round(&self) -> usize {
        Layout { d: self.d }.per_round()
    }

    pub fn num_vertices(&self) -> usize {
        self.coords.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> {
        (0..self.coords.len()).map(VertexId::from_index)
    }

    pub fn coord(&self, v: VertexId) -> Coord {
        self.coords[v.index()]
    }

    pub fn vertex_at(&self, c: Coord) -> Option<VertexId> {
        let cols = Layout { d: self.d }.cols();
        if c.row as usize > self.d || c.col as usize >= cols || c.round as usize >= self.rounds {
            return None;
        }
        Some(VertexId::from_index(
            c.round as usize * self.per_round() + c.row as usize * cols + c.col as usize,
        ))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.index()]
    }

    pub fn edge_ids(&self) -> impl ExactSizeIterator<Item = EdgeId> {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    /// `v.E`: edges incident to `v`, boundary edges included.
    #[inline]
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        let i = v.index();
        &self.incident[self.incident_offsets[i] as usize..self.incident_offsets[i + 1] as usize]
    }

    /// `v.U`: vertices sharing a non-boundary edge with `v`.
    pub fn adjacent(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.incident(v)
            .iter()
            .filter_map(move |&e| self.edge(e).other(v))
    }

    /// Number of non-boundary incident edges.
    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacent(v).count()
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.incident(u)
            .iter()
            .copied()
            .find(|&e| self.edge(e).other(u) == Some(v))
    }

    /// Looks up the edge of this graph with the same shape as `edge` of `other`,
    /// shifted by `round_offset` rounds. Used to move edges between a sliding
    /// window and the full stream.
    pub fn translate_edge(
        &self,
        other: &DecodingGraph,
        edge: EdgeId,
        round_offset: isize,
    ) -> Option<EdgeId> {
        let e = other.edge(edge);
        let shift = |v: VertexId| {
            let c = other.coord(v);
            let round = c.round as isize + round_offset;
            if round < 0 {
                return None;
            }
            self.vertex_at(Coord {
                round: round as u16,
                ..c
            })
        };
        let a = shift(e.a)?;
        let b = match e.b {
            Some(b) => Some(shift(b)?),
            None => None,
        };
        self.incident(a).iter().copied().find(|&cand| {
            let c = self.edge(cand);
            c.kind == e.kind && c.other(a) == b && c.support == e.support
        })
    }

    /// Replaces every edge weight. Weights must be at least 1.
    pub fn with_weights(&self, weights: &[u32]) -> Result<DecodingGraph> {
        if weights.len() != self.edges.len() {
            return Err(Error::SizeMismatch {
                what: "edge weights",
                expected: self.edges.len(),
                actual: weights.len(),
            });
        }
        if let Some(&w) = weights.iter().find(|&&w| w == 0) {
            return Err(Error::InvalidMaxWeight(w));
        }
        let mut g = self.clone();
        for (e, &w) in g.edges.iter_mut().zip(weights) {
            e.weight = w;
        }
        Ok(g)
    }

    pub fn is_weighted(&self) -> bool {
        self.edges.iter().any(|e| e.weight != DEFAULT_WEIGHT)
    }
}

#[derive(Copy, Clone)]
struct Layout {
    d: usize,
}

impl Layout {
    fn cols(self) -> usize {
        (self.d - 1) / 2
    }

    fn per_round(self) -> usize {
        (self.d + 1) * self.cols()
    }

    /// `(row, col)` of the Z ancilla at plaquette corner `(a, b)`, if any.
    fn z_ancilla(self, a: usize, b: usize) -> Option<(usize, usize)> {
        let d = self.d;
        if a >= 1 && a < d && b <= d && (a + b).is_multiple_of(2) {
            Some((b, (a - 1) / 2))
        } else {
            None
        }
    }

    /// The (at most two) Z ancillas adjacent to data qubit `(i, j)`.
    fn z_neighbours(self, i: usize, j: usize) -> [Option<(usize, usize)>; 2] {
        if (i + j).is_multiple_of(2) {
            [self.z_ancilla(i, j), self.z_ancilla(i + 1, j + 1)]
        } else {
            [self.z_ancilla(i, j + 1), self.z_ancilla(i + 1, j)]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(g: &DecodingGraph, kind: EdgeKind) -> usize {
        g.edges().iter().filter(|e| e.kind == kind).count()
    }

    #[test]
    fn vertex_counts() {
        assert_eq!(build_phenomenological(5, 5).unwrap().num_vertices(), 60);
        let g = build_phenomenological(3, 1).unwrap();
        assert_eq!(g.num_vertices(), 4);
        assert_eq!(count(&g, EdgeKind::Time), 0);
        assert_eq!(build_circuit_level(3, 3).unwrap().num_vertices(), 12);
    }

    #[test]
    fn rejects_bad_distance() {
        for d in [0, 1, 2, 4, 6] {
            assert!(matches!(
                build_phenomenological(d, 3),
                Err(Error::InvalidDistance(_))
            ));
        }
        assert!(matches!(
            build_circuit_level(5, 0),
            Err(Error::InvalidRounds(0))
        ));
    }

    #[test]
    fn degree_bounds() {
        let g = build_phenomenological(5, 5).unwrap();
        assert_eq!(g.vertices().map(|v| g.degree(v)).max(), Some(6));
        let g = build_circuit_level(5, 5).unwrap();
        let max = g.vertices().map(|v| g.degree(v)).max().unwrap();
        assert!(max <= 12 && max > 6, "max degree {max}");
    }

    #[test]
    fn single_round_circuit_graph_is_phenomenological() {
        let p = build_phenomenological(5, 1).unwrap();
        let c = build_circuit_level(5, 1).unwrap();
        assert_eq!(p.edges(), c.edges());
    }

    #[test]
    fn edge_counts_per_round() {
        let d = 7;
        let g = build_phenomenological(d, 2).unwrap();
        assert_eq!(count(&g, EdgeKind::Space), 2 * d * (d - 2));
        assert_eq!(count(&g, EdgeKind::Boundary), 2 * 2 * d);
        assert_eq!(count(&g, EdgeKind::Time), g.per_round());
        assert_eq!(g.edges().iter().filter(|e| e.crosses_cut).count(), 2 * d);
    }

    #[test]
    fn bottom_left_ids_match_the_pe_array_numbering() {
        // PEs 1..4 of the d = 5 array: 1-3, 1-4 and 2-4 are linked, 1-2 and 3-4 are not.
        let g = build_phenomenological(5, 5).unwrap();
        let v = |i| VertexId(i);
        assert!(g.edge_between(v(1), v(3)).is_some());
        assert!(g.edge_between(v(1), v(4)).is_some());
        assert!(g.edge_between(v(2), v(4)).is_some());
        assert!(g.edge_between(v(1), v(2)).is_none());
        assert!(g.edge_between(v(3), v(4)).is_none());
        assert_eq!(
            g.coord(v(13)),
            Coord {
                row: 0,
                col: 0,
                round: 1
            }
        );
    }

    #[test]
    fn translate_edge_between_round_windows() {
        let w = build_circuit_level(3, 6).unwrap();
        let s = build_circuit_level(3, 9).unwrap();
        for e in w.edge_ids() {
            let t = s.translate_edge(&w, e, 3).expect("edge exists in stream");
            let (we, se) = (w.edge(e), s.edge(t));
            assert_eq!(we.kind, se.kind);
            assert_eq!(we.round + 3, se.round);
            assert_eq!(s.translate_edge(&s, t, 0), Some(t));
        }
    }
}
