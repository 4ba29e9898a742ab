use crate::error::{Error, Result};
use crate::graph::{DecodingGraph, DEFAULT_WEIGHT};

/// Maps per-edge error probabilities to integer weights in `[2, w_max]`.
///
/// The weight is a linear function of `-ln p`: the most likely edge gets 2,
/// the least likely gets `w_max`, and everything in between is rounded half-up.
/// If all probabilities are equal every weight is 2.
pub fn weights_from_probabilities(probs: &[f64], w_max: u32) -> Result<Vec<u32>> {
    if w_max < DEFAULT_WEIGHT {
        return Err(Error::InvalidMaxWeight(w_max));
    }
    if let Some(&p) = probs.iter().find(|&&p| !(p > 0.0 && p < 1.0)) {
        return Err(Error::InvalidProbability {
            what: "edge error probability",
            value: p,
            range: "(0, 1)",
        });
    }
    let logs: Vec<f64> = probs.iter().map(|p| -p.ln()).collect();
    let lo = logs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = hi - lo;
    if span.is_nan() || span <= 1e-12 * hi.abs().max(1.0) {
        return Ok(vec![DEFAULT_WEIGHT; probs.len()]);
    }
    let range = f64::from(w_max - DEFAULT_WEIGHT);
    Ok(logs
        .iter()
        .map(|&x| {
            let w = f64::from(DEFAULT_WEIGHT) + (x - lo) / span * range;
            // Half-up rounding with a small tolerance for values that should land on .5 exactly.
            let rounded = (w + 0.5 + 1e-9).floor() as u32;
            rounded.clamp(DEFAULT_WEIGHT, w_max)
        })
        .collect())
}

/// Returns a copy of `g` whose edge weights follow `edge_probs` (indexed by edge id).
pub fn assign_weights(g: &DecodingGraph, edge_probs: &[f64], w_max: u32) -> Result<DecodingGraph> {
    if edge_probs.len() != g.num_edges() {
        return Err(Error::SizeMismatch {
            what: "edge probabilities",
            expected: g.num_edges(),
            actual: edge_probs.len(),
        });
    }
    g.with_weights(&weights_from_probabilities(edge_probs, w_max)?)
}
