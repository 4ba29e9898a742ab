//! Streaming decoding with a window of `2d` rounds that advances by `d`.
//!
//! Each window is decoded in full, but only correction edges starting in its
//! oldest `d` rounds are committed. Committed edges that reach into round `d`
//! of the window leave their defect toggles behind; those toggles are part of
//! the residual syndrome seen by the next window. The last window commits
//! everything.

use crate::error::{Error, Result};
use crate::graph::{DecodingGraph, EdgeId, VertexId};
use crate::helios::{DecoderOptions, HeliosDecoder};
use crate::noise::Syndrome;

#[derive(Clone, Debug, Default)]
pub struct SlidingOutcome {
    /// Committed correction edges, as ids of the stream graph, ascending.
    pub committed: Vec<EdgeId>,
    /// Cycles spent on each window.
    pub window_cycles: Vec<u64>,
}

impl SlidingOutcome {
    pub fn windows(&self) -> usize {
        self.window_cycles.len()
    }

    pub fn total_cycles(&self) -> u64 {
        self.window_cycles.iter().sum()
    }
}

/// Decodes a stream of `stream.rounds()` rounds, a multiple of `d` and at least `2d`.
pub fn decode_sliding_window(
    stream: &DecodingGraph,
    s: &Syndrome,
    options: DecoderOptions,
) -> Result<SlidingOutcome> {
    s.check(stream)?;
    let d = stream.d();
    let rounds = stream.rounds();
    if !rounds.is_multiple_of(d) || rounds < 2 * d {
        return Err(Error::InvalidStream { rounds, d });
    }
    let window = DecodingGraph::build(d, 2 * d, stream.model())?;
    let per_round = stream.per_round();
    let mut decoder = HeliosDecoder::new(&window, options);
    let mut residual = s.defect_bits().to_vec();
    let mut outcome = SlidingOutcome::default();
    let last = rounds / d - 2;

    for k in 0..=last {
        let offset = k * d;
        let base = offset * per_round;
        let defects: Vec<VertexId> = (0..window.num_vertices())
            .filter(|&i| residual[base + i])
            .map(VertexId::from_index)
            .collect();
        let erased: Vec<EdgeId> = s
            .erased_edges()
            .iter()
            .filter_map(|&e| window.translate_edge(stream, e, -(offset as isize)))
            .collect();
        let ws = Syndrome::from_defects(window.num_vertices(), &defects).with_erasures(erased);
        let result = decoder.decode(&ws)?;
        outcome.window_cycles.push(result.cycles);

        for &e in &result.corrections {
            if k != last && window.edge(e).round as usize >= d {
                continue;
            }
            let se = stream
                .translate_edge(&window, e, offset as isize)
                .expect("window edges exist in the stream");
            for v in stream.edge(se).endpoints() {
                residual[v.index()] ^= true;
            }
            outcome.committed.push(se);
        }
        debug_assert!(residual[base..base + d * per_round].iter().all(|&b| !b));
    }
    outcome.committed.sort_unstable();
    Ok(outcome)
}
