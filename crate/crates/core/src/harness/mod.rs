//! Seeded trial batches and their CSV/SVG artifacts.
//!
//! Trial `t` of a batch draws all its randomness from
//! [`trial_rng`]`(seed, t)`, so a batch gives the same records regardless of
//! how many worker threads run it. A trial that fails to annihilate its
//! syndrome, or that exceeds [`cycle_bound`], aborts the whole batch.

mod config;
mod output;
mod stats;

use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use config::{DecoderKind, ExperimentConfig, CONFIG_KEYS};
pub use output::{
    emit_plots, histogram, read_trials, render_histogram_svg, render_scaling_svg, write_summary,
    write_trials, HistogramBin, SUMMARY_SCHEMA, TRIALS_SCHEMA,
};
pub use stats::{nearest_rank, summarize, wilson_interval, Summary};

use crate::corrector::{check_annihilation, correct, logical_flip};
use crate::error::{Error, Result};
use crate::graph::{assign_weights, partition, DecodingGraph, EdgeId, GraphModel, Partition};
use crate::helios::{cycle_bound, decode_sliding_window, DecoderOptions, HeliosDecoder};
use crate::noise::{trial_rng, ErrorPattern, NoiseModel, NoiseSpec, Syndrome};
use crate::serial_uf::decode_serial;

/// Stream index reserved for drawing per-edge probabilities, away from any
/// trial index.
const EDGE_PROB_STREAM: u64 = u64::MAX;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub defects: usize,
    /// Zero for the serial decoder, which has no cycle model.
    pub cycles: u64,
    pub ns: f64,
    /// Growing stages.
    pub iterations: u32,
    pub clusters: usize,
    pub logical_flip: bool,
    pub annihilated: bool,
}

#[derive(Clone, Debug)]
pub struct Experiment {
    pub config: ExperimentConfig,
    pub records: Vec<TrialRecord>,
    /// `None` when the batch has no trials.
    pub summary: Option<Summary>,
}

/// Per-edge error probabilities drawn from a normal distribution with mean
/// `p` and standard deviation `sd`, redrawn until they land in `(0, 0.5)`.
pub fn truncated_normal_probs(num_edges: usize, p: f64, sd: f64, seed: u64) -> Result<Vec<f64>> {
    let normal = Normal::new(p, sd).map_err(|_| Error::InvalidProbability {
        what: "p_sd",
        value: sd,
        range: "[0, inf)",
    })?;
    let mut rng = trial_rng(seed, EDGE_PROB_STREAM);
    Ok((0..num_edges)
        .map(|_| loop {
            let x = if sd == 0.0 { p } else { normal.sample(&mut rng) };
            if x > 0.0 && x < 0.5 {
                break x;
            }
            if sd == 0.0 {
                break x.clamp(0.0, 0.5);
            }
        })
        .collect())
}

struct Prepared {
    graph: DecodingGraph,
    spec: NoiseSpec,
    partition: Option<Partition>,
    options: DecoderOptions,
}

impl Prepared {
    fn new(cfg: &ExperimentConfig) -> Result<Self> {
        cfg.validate()?;
        let model = match cfg.model {
            NoiseModel::Circuit => GraphModel::CircuitLevel,
            _ => GraphModel::Phenomenological,
        };
        let mut graph = DecodingGraph::build(cfg.d, cfg.rounds, model)?;
        let mut spec = NoiseSpec::new(cfg.model, cfg.p);
        spec.p_e = cfg.p_e;
        if cfg.p_sd > 0.0 {
            let probs = truncated_normal_probs(graph.num_edges(), cfg.p, cfg.p_sd, cfg.seed)?;
            graph = assign_weights(&graph, &probs, cfg.w_max)?;
            spec.edge_probs = Some(probs);
        } else if cfg.w_max > 2 {
            let probs = vec![cfg.p.max(f64::MIN_POSITIVE); graph.num_edges()];
            graph = assign_weights(&graph, &probs, cfg.w_max)?;
        }
        let partition = (cfg.context_n > 1)
            .then(|| partition(&graph, cfg.context_n))
            .transpose()?;
        let options = DecoderOptions {
            erasure_mode: cfg.model == NoiseModel::Erasure,
            ..Default::default()
        };
        Ok(Prepared {
            graph,
            spec,
            partition,
            options,
        })
    }
}

struct Decoded {
    cycles: u64,
    /// Largest cycle count of a single decode, compared against the bound.
    bounded_cycles: u64,
    iterations: u32,
    clusters: usize,
    corrections: Vec<EdgeId>,
}

fn decode_one(cfg: &ExperimentConfig, prep: &Prepared, s: &Syndrome) -> Result<Decoded> {
    let g = &prep.graph;
    if cfg.sliding_window {
        let out = decode_sliding_window(g, s, prep.options.clone())?;
        return Ok(Decoded {
            cycles: out.total_cycles(),
            bounded_cycles: out.window_cycles.iter().copied().max().unwrap_or(0),
            iterations: 0,
            clusters: 0,
            corrections: out.committed,
        });
    }
    match cfg.decoder {
        DecoderKind::Serial => {
            let out = decode_serial(g, s)?;
            let corrections = correct(g, &out.clusters, s)?;
            Ok(Decoded {
                cycles: 0,
                bounded_cycles: 0,
                iterations: out.iterations as u32,
                clusters: out.clusters.len(),
                corrections,
            })
        }
        DecoderKind::Distributed => {
            let mut dec = match &prep.partition {
                Some(p) => HeliosDecoder::with_partition(g, p, prep.options.clone())?,
                None => HeliosDecoder::new(g, prep.options.clone()),
            };
            let r = dec.decode(s)?;
            Ok(Decoded {
                cycles: r.cycles,
                bounded_cycles: r.stages.total(),
                iterations: r.iterations,
                clusters: r.clusters.len(),
                corrections: r.corrections,
            })
        }
    }
}

fn run_trial(cfg: &ExperimentConfig, prep: &Prepared, trial: u64) -> Result<TrialRecord> {
    let g = &prep.graph;
    let mut rng = trial_rng(cfg.seed, trial);
    let (pattern, s): (ErrorPattern, Syndrome) = prep.spec.sample(g, &mut rng)?;
    let out = decode_one(cfg, prep, &s)?;
    let bound = cycle_bound(cfg.d);
    if out.bounded_cycles > bound {
        return Err(Error::CycleBoundExceeded {
            trial,
            cycles: out.bounded_cycles,
            bound,
        });
    }
    if !check_annihilation(g, &s, &out.corrections) {
        return Err(Error::NotAnnihilated);
    }
    Ok(TrialRecord {
        trial,
        defects: s.defect_count(),
        cycles: out.cycles,
        ns: out.cycles as f64 * cfg.clock_ns,
        iterations: out.iterations,
        clusters: out.clusters,
        logical_flip: logical_flip(g, &pattern, &out.corrections)?,
        annihilated: true,
    })
}

/// Runs `cfg.trials` trials in parallel and summarizes them.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Experiment> {
    let prep = Prepared::new(cfg)?;
    let records = (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_trial(cfg, &prep, t).map_err(|e| e.in_trial(t)))
        .collect::<Result<Vec<_>>>()?;
    let summary = if records.is_empty() {
        None
    } else {
        Some(summarize(&records, cfg.rounds, cfg.clock_ns)?)
    };
    Ok(Experiment {
        config: cfg.clone(),
        records,
        summary,
    })
}

/// The decoding graph and noise description a config's trials use.
pub fn experiment_graph(cfg: &ExperimentConfig) -> Result<(DecodingGraph, NoiseSpec)> {
    let prep = Prepared::new(cfg)?;
    Ok((prep.graph, prep.spec))
}
