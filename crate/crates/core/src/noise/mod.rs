//! Seeded error sampling and syndrome extraction.
//!
//! Every error mechanism is identified with an edge of the decoding graph:
//! a space or boundary edge at round `t` is an X flip of its data qubit just
//! before measurement round `t`, a time edge from round `t` is a faulty readout
//! of its ancilla in round `t`, and diagonal or hook edges are the extra
//! circuit-level faults. The last round of a window is read out perfectly, so
//! there are no time edges leaving it.
//!
//! A defect is a change in an ancilla's raw readout between consecutive rounds,
//! with round 0 compared against 0.

pub mod format;
pub mod rng;

use std::str::FromStr;

use rand::{Rng, RngExt};
use rand_distr::{Distribution, Geometric};
use serde::{Deserialize, Serialize};

use crate::error::{check_probability, Error, Result};
use crate::graph::{Coord, DataQubit, DecodingGraph, EdgeId, EdgeKind, VertexId};

pub use rng::{trial_rng, TrialRng};

/// Physical errors of one decoding window.
///
/// `fired` lists the mechanisms (edges) that flipped, with pairs of identical
/// flips cancelled. `erased` lists the data-qubit edges whose qubit was erased;
/// an erased qubit additionally appears in `fired` when its random flip came up.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ErrorPattern {
    fired: Vec<EdgeId>,
    erased: Vec<EdgeId>,
}

impl ErrorPattern {
    pub fn new(mut fired: Vec<EdgeId>, mut erased: Vec<EdgeId>) -> Self {
        fired.sort_unstable();
        let mut cancelled: Vec<EdgeId> = Vec::with_capacity(fired.len());
        for e in fired {
            if cancelled.last() == Some(&e) {
                cancelled.pop();
            } else {
                cancelled.push(e);
            }
        }
        erased.sort_unstable();
        erased.dedup();
        ErrorPattern {
            fired: cancelled,
            erased,
        }
    }

    pub fn fired(&self) -> &[EdgeId] {
        &self.fired
    }

    pub fn erased(&self) -> &[EdgeId] {
        &self.erased
    }

    pub fn is_empty(&self) -> bool {
        self.fired.is_empty() && self.erased.is_empty()
    }

    /// GF(2) sum of the flips; erasures are united.
    pub fn xor(&self, other: &ErrorPattern) -> ErrorPattern {
        let fired = self.fired.iter().chain(&other.fired).copied().collect();
        let erased = self.erased.iter().chain(&other.erased).copied().collect();
        ErrorPattern::new(fired, erased)
    }

    /// Data-qubit flips as `(qubit, round)` pairs, including those caused by
    /// diagonal and hook mechanisms.
    pub fn data_flips(&self, g: &DecodingGraph) -> Vec<(DataQubit, u16)> {
        self.fired
            .iter()
            .flat_map(|&e| {
                let edge = g.edge(e);
                edge.support.into_iter().flatten().map(move |q| (q, edge.round))
            })
            .collect()
    }

    /// Ancilla readout errors, one per fired time edge.
    pub fn measurement_flips(&self, g: &DecodingGraph) -> Vec<Coord> {
        self.fired
            .iter()
            .map(|&e| g.edge(e))
            .filter(|e| e.kind == EdgeKind::Time)
            .map(|e| g.coord(e.a))
            .collect()
    }
}

/// Defect bits for every vertex of a window plus its erased edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Syndrome {
    defects: Vec<bool>,
    erased: Vec<EdgeId>,
}

impl Syndrome {
    pub fn empty(num_vertices: usize) -> Self {
        Syndrome {
            defects: vec![false; num_vertices],
            erased: Vec::new(),
        }
    }

    pub fn from_defects(num_vertices: usize, defects: &[VertexId]) -> Self {
        let mut s = Syndrome::empty(num_vertices);
        for &v in defects {
            s.toggle(v);
        }
        s
    }

    pub fn with_erasures(mut self, mut erased: Vec<EdgeId>) -> Self {
        erased.sort_unstable();
        erased.dedup();
        self.erased = erased;
        self
    }

    pub fn num_vertices(&self) -> usize {
        self.defects.len()
    }

    #[inline]
    pub fn is_defect(&self, v: VertexId) -> bool {
        self.defects[v.index()]
    }

    #[inline]
    pub fn toggle(&mut self, v: VertexId) {
        let b = &mut self.defects[v.index()];
        *b = !*b;
    }

    pub fn defect_bits(&self) -> &[bool] {
        &self.defects
    }

    pub fn defects(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.defects
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| VertexId::from_index(i))
    }

    pub fn defect_count(&self) -> usize {
        self.defects.iter().filter(|&&b| b).count()
    }

    pub fn erased_edges(&self) -> &[EdgeId] {
        &self.erased
    }

    /// Bitwise XOR of the defects; erasures are united.
    pub fn xor(&self, other: &Syndrome) -> Syndrome {
        assert_eq!(self.defects.len(), other.defects.len());
        let defects = self.defects.iter().zip(&other.defects).map(|(a, b)| a ^ b).collect();
        let erased = self.erased.iter().chain(&other.erased).copied().collect();
        Syndrome {
            defects,
            erased: Vec::new(),
        }
        .with_erasures(erased)
    }

    /// Fails unless the syndrome has one bit per vertex of `g` and valid erasures.
    pub fn check(&self, g: &DecodingGraph) -> Result<()> {
        if self.defects.len() != g.num_vertices() {
            return Err(Error::SizeMismatch {
                what: "syndrome bits",
                expected: g.num_vertices(),
                actual: self.defects.len(),
            });
        }
        if let Some(e) = self.erased.iter().find(|e| e.index() >= g.num_edges()) {
            return Err(Error::SizeMismatch {
                what: "edges",
                expected: g.num_edges(),
                actual: e.index() + 1,
            });
        }
        Ok(())
    }
}

/// Syndrome of a pattern obtained by toggling the endpoints of every fired edge.
pub fn syndrome_from_pattern(g: &DecodingGraph, pattern: &ErrorPattern) -> Syndrome {
    let mut s = Syndrome::empty(g.num_vertices());
    for &e in &pattern.fired {
        for v in g.edge(e).endpoints() {
            s.toggle(v);
        }
    }
    s.with_erasures(pattern.erased.clone())
}

/// Syndrome of a pattern obtained by simulating raw ancilla readouts round by
/// round: accumulated data flips XOR readout errors, then differenced in time.
///
/// Diagonal and hook mechanisms have no single-round readout picture here;
/// their endpoint toggles are added on top.
pub fn readout_syndrome(g: &DecodingGraph, pattern: &ErrorPattern) -> Syndrome {
    let d = g.d();
    let per_round = g.per_round();
    let qubit = |q: DataQubit| q.i as usize * d + q.j as usize;

    let mut ancillas_of: Vec<Vec<usize>> = vec![Vec::new(); d * d];
    for e in g.edges().iter().filter(|e| e.round == 0) {
        if matches!(e.kind, EdgeKind::Space | EdgeKind::Boundary) {
            let q = qubit(e.support[0].expect("data edge has a qubit"));
            ancillas_of[q].extend(e.endpoints().map(|v| v.index()));
        }
    }

    let rounds = g.rounds();
    let mut data_flips = vec![Vec::new(); rounds];
    let mut meas_flip = vec![false; g.num_vertices()];
    let mut extra = Syndrome::empty(g.num_vertices());
    for &e in &pattern.fired {
        let edge = g.edge(e);
        match edge.kind {
            EdgeKind::Space | EdgeKind::Boundary => {
                data_flips[edge.round as usize].push(qubit(edge.support[0].expect("data edge")))
            }
            EdgeKind::Time => meas_flip[edge.a.index()] ^= true,
            EdgeKind::Diagonal | EdgeKind::Hook => {
                for v in edge.endpoints() {
                    extra.toggle(v);
                }
            }
        }
    }

    let mut data_parity = vec![false; per_round];
    let mut prev_raw = vec![false; per_round];
    let mut s = Syndrome::empty(g.num_vertices());
    for (t, flips) in data_flips.iter().enumerate() {
        for &q in flips {
            for &a in &ancillas_of[q] {
                data_parity[a] ^= true;
            }
        }
        for a in 0..per_round {
            let v = t * per_round + a;
            let raw = data_parity[a] ^ meas_flip[v];
            if raw != prev_raw[a] {
                s.toggle(VertexId::from_index(v));
            }
            prev_raw[a] = raw;
        }
    }
    s.xor(&extra).with_erasures(pattern.erased.clone())
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseModel {
    Phenomenological,
    Circuit,
    Erasure,
}

impl NoiseModel {
    pub fn as_str(self) -> &'static str {
        match self {
            NoiseModel::Phenomenological => "phenomenological",
            NoiseModel::Circuit => "circuit",
            NoiseModel::Erasure => "erasure",
        }
    }
}

impl FromStr for NoiseModel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "phenomenological" | "phenom" => Ok(NoiseModel::Phenomenological),
            "circuit" | "circuit-level" | "circuit_level" => Ok(NoiseModel::Circuit),
            "erasure" => Ok(NoiseModel::Erasure),
            other => Err(format!(
                "unknown noise model `{other}` (expected phenomenological, circuit or erasure)"
            )),
        }
    }
}

impl std::fmt::Display for NoiseModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Probability of each mechanism firing.
#[derive(Clone, Copy, Debug)]
pub enum EdgeProbs<'a> {
    Uniform(f64),
    PerEdge(&'a [f64]),
}

impl EdgeProbs<'_> {
    fn check(&self, g: &DecodingGraph) -> Result<()> {
        match *self {
            EdgeProbs::Uniform(p) => check_probability("error probability", p),
            EdgeProbs::PerEdge(ps) => {
                if ps.len() != g.num_edges() {
                    return Err(Error::SizeMismatch {
                        what: "edge probabilities",
                        expected: g.num_edges(),
                        actual: ps.len(),
                    });
                }
                ps.iter().try_for_each(|&p| check_probability("edge error probability", p))
            }
        }
    }
}

/// Independently fires each edge accepted by `keep` with its probability.
fn fire_edges<R: Rng + ?Sized>(
    g: &DecodingGraph,
    probs: EdgeProbs<'_>,
    keep: impl Fn(EdgeKind) -> bool,
    rng: &mut R,
    out: &mut Vec<EdgeId>,
) {
    match probs {
        EdgeProbs::Uniform(p) => {
            if p <= 0.0 {
                return;
            }
            // Jump straight to the next firing edge instead of drawing per edge.
            let gap = Geometric::new(p).expect("probability checked by caller");
            let mut k = 0u64;
            loop {
                k += gap.sample(rng);
                if k >= g.num_edges() as u64 {
                    break;
                }
                let e = EdgeId(k as u32);
                if keep(g.edge(e).kind) {
                    out.push(e);
                }
                k += 1;
            }
        }
        EdgeProbs::PerEdge(ps) => {
            for (e, &p) in g.edge_ids().zip(ps) {
                if p > 0.0 && rng.random_bool(p) && keep(g.edge(e).kind) {
                    out.push(e);
                }
            }
        }
    }
}

fn is_phenomenological(kind: EdgeKind) -> bool {
    matches!(kind, EdgeKind::Space | EdgeKind::Time | EdgeKind::Boundary)
}

fn is_data_qubit(kind: EdgeKind) -> bool {
    matches!(kind, EdgeKind::Space | EdgeKind::Boundary)
}

/// Data-qubit flips before every round and readout errors in every round but
/// the last, each with probability `p`.
pub fn sample_phenomenological<R: Rng + ?Sized>(
    g: &DecodingGraph,
    p: f64,
    rng: &mut R,
) -> Result<(ErrorPattern, Syndrome)> {
    sample_phenomenological_with(g, EdgeProbs::Uniform(p), rng)
}

pub fn sample_phenomenological_with<R: Rng + ?Sized>(
    g: &DecodingGraph,
    probs: EdgeProbs<'_>,
    rng: &mut R,
) -> Result<(ErrorPattern, Syndrome)> {
    probs.check(g)?;
    let mut fired = Vec::new();
    fire_edges(g, probs, is_phenomenological, rng, &mut fired);
    let pattern = ErrorPattern::new(fired, Vec::new());
    let syndrome = readout_syndrome(g, &pattern);
    Ok((pattern, syndrome))
}

/// Every edge of the graph, diagonal and hook edges included, fires with probability `p`.
pub fn sample_circuit_level<R: Rng + ?Sized>(
    g: &DecodingGraph,
    p: f64,
    rng: &mut R,
) -> Result<(ErrorPattern, Syndrome)> {
    sample_circuit_level_with(g, EdgeProbs::Uniform(p), rng)
}

pub fn sample_circuit_level_with<R: Rng + ?Sized>(
    g: &DecodingGraph,
    probs: EdgeProbs<'_>,
    rng: &mut R,
) -> Result<(ErrorPattern, Syndrome)> {
    probs.check(g)?;
    let mut fired = Vec::new();
    fire_edges(g, probs, |_| true, rng, &mut fired);
    let pattern = ErrorPattern::new(fired, Vec::new());
    let syndrome = syndrome_from_pattern(g, &pattern);
    Ok((pattern, syndrome))
}

/// Erases each data qubit in each round with probability `p_e`; an erased
/// qubit is X-flipped with probability 1/2.
pub fn sample_erasures<R: Rng + ?Sized>(
    g: &DecodingGraph,
    p_e: f64,
    rng: &mut R,
) -> Result<(ErrorPattern, Syndrome)> {
    check_probability("erasure probability", p_e)?;
    let mut erased = Vec::new();
    fire_edges(g, EdgeProbs::Uniform(p_e), is_data_qubit, rng, &mut erased);
    let fired = erased.iter().copied().filter(|_| rng.random_bool(0.5)).collect();
    let pattern = ErrorPattern::new(fired, erased);
    let syndrome = syndrome_from_pattern(g, &pattern);
    Ok((pattern, syndrome))
}

/// Full description of the noise applied to one trial.
#[derive(Clone, Debug, PartialEq)]
pub struct NoiseSpec {
    pub model: NoiseModel,
    pub p: f64,
    /// Erasure probability; used by [`NoiseModel::Erasure`] only.
    pub p_e: f64,
    /// Per-edge probabilities overriding `p`.
    pub edge_probs: Option<Vec<f64>>,
}

impl NoiseSpec {
    pub fn new(model: NoiseModel, p: f64) -> Self {
        NoiseSpec {
            model,
            p,
            p_e: 0.0,
            edge_probs: None,
        }
    }

    fn probs(&self) -> EdgeProbs<'_> {
        match &self.edge_probs {
            Some(ps) => EdgeProbs::PerEdge(ps),
            None => EdgeProbs::Uniform(self.p),
        }
    }

    /// Samples one window. The erasure model is phenomenological noise at `p`
    /// plus erasures at `p_e`.
    pub fn sample<R: Rng + ?Sized>(
        &self,
        g: &DecodingGraph,
        rng: &mut R,
    ) -> Result<(ErrorPattern, Syndrome)> {
        match self.model {
            NoiseModel::Phenomenological => sample_phenomenological_with(g, self.probs(), rng),
            NoiseModel::Circuit => sample_circuit_level_with(g, self.probs(), rng),
            NoiseModel::Erasure => {
                let (a, _) = sample_phenomenological_with(g, self.probs(), rng)?;
                let (b, _) = sample_erasures(g, self.p_e, rng)?;
                let pattern = a.xor(&b);
                let syndrome = syndrome_from_pattern(g, &pattern);
                Ok((pattern, syndrome))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_circuit_level, build_phenomenological};

    #[test]
    fn zero_noise_gives_zero_defects() {
        let g = build_circuit_level(5, 5).unwrap();
        let mut rng = trial_rng(1, 0);
        for _ in 0..20 {
            assert_eq!(sample_phenomenological(&g, 0.0, &mut rng).unwrap().1.defect_count(), 0);
            assert_eq!(sample_circuit_level(&g, 0.0, &mut rng).unwrap().1.defect_count(), 0);
            let (pat, s) = sample_erasures(&g, 0.0, &mut rng).unwrap();
            assert!(pat.erased().is_empty() && s.erased_edges().is_empty());
        }
    }

    #[test]
    fn same_seed_same_syndrome() {
        let g = build_phenomenological(7, 7).unwrap();
        let a = sample_phenomenological(&g, 0.02, &mut trial_rng(9, 5)).unwrap();
        let b = sample_phenomenological(&g, 0.02, &mut trial_rng(9, 5)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn hook_mechanism_toggles_its_endpoints() {
        let g = build_circuit_level(5, 3).unwrap();
        let hook = g.edge_ids().find(|&e| g.edge(e).kind == EdgeKind::Hook).unwrap();
        let s = syndrome_from_pattern(&g, &ErrorPattern::new(vec![hook], vec![]));
        let edge = g.edge(hook);
        let mut expected: Vec<_> = edge.endpoints().collect();
        expected.sort();
        assert_eq!(s.defects().collect::<Vec<_>>(), expected);
        assert_eq!(readout_syndrome(&g, &ErrorPattern::new(vec![hook], vec![])), s);
    }

    #[test]
    fn isolated_measurement_error_gives_two_defects() {
        let g = build_phenomenological(5, 5).unwrap();
        let time = g.edge_ids().find(|&e| g.edge(e).kind == EdgeKind::Time).unwrap();
        let pat = ErrorPattern::new(vec![time], vec![]);
        assert_eq!(pat.measurement_flips(&g).len(), 1);
        let s = readout_syndrome(&g, &pat);
        assert_eq!(s.defect_count(), 2);
        assert_eq!(s, syndrome_from_pattern(&g, &pat));
    }

    #[test]
    fn forced_erasure_with_flip() {
        let g = build_phenomenological(5, 2).unwrap();
        let e = g
            .edge_ids()
            .find(|&e| g.edge(e).kind == EdgeKind::Space)
            .unwrap();
        let s = syndrome_from_pattern(&g, &ErrorPattern::new(vec![e], vec![e]));
        assert_eq!(s.erased_edges(), &[e]);
        let edge = g.edge(e);
        assert!(edge.endpoints().all(|v| s.is_defect(v)));
        assert!(edge.endpoints().all(|v| g.coord(v).round == edge.round));
        assert_eq!(s.defect_count(), 2);
    }

    #[test]
    fn pattern_xor_cancels_pairs() {
        let a = ErrorPattern::new(vec![EdgeId(3), EdgeId(1)], vec![]);
        let b = ErrorPattern::new(vec![EdgeId(3), EdgeId(5)], vec![EdgeId(2)]);
        let c = a.xor(&b);
        assert_eq!(c.fired(), &[EdgeId(1), EdgeId(5)]);
        assert_eq!(c.erased(), &[EdgeId(2)]);
        assert!(ErrorPattern::new(vec![EdgeId(4), EdgeId(4)], vec![]).is_empty());
    }

    #[test]
    fn rejects_bad_probabilities() {
        let g = build_phenomenological(3, 3).unwrap();
        let mut rng = trial_rng(0, 0);
        assert!(sample_phenomenological(&g, 1.0, &mut rng).is_err());
        assert!(sample_circuit_level(&g, -0.1, &mut rng).is_err());
        assert!(sample_erasures(&g, 2.0, &mut rng).is_err());
    }

    #[test]
    fn noise_model_names_round_trip() {
        for m in [NoiseModel::Phenomenological, NoiseModel::Circuit, NoiseModel::Erasure] {
            assert_eq!(m.as_str().parse::<NoiseModel>().unwrap(), m);
        }
        assert!("depolarizing".parse::<NoiseModel>().is_err());
    }
}
