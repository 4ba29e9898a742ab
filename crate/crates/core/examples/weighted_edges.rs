//! Non-identical edge error rates: per-edge probabilities drawn around
//! p=0.001, quantized into integer weights up to `w_max`.
//!
//!     cargo run --release --example weighted_edges

use helios_uf::graph::weights_from_probabilities;
use helios_uf::harness::{experiment_graph, run_experiment, ExperimentConfig};

fn main() -> helios_uf::Result<()> {
    let probs = [0.0002, 0.0005, 0.001, 0.002, 0.004];
    for w_max in [2, 4, 8, 16] {
        println!("w_max={w_max:>2}: weights {:?} for p = {probs:?}", weights_from_probabilities(&probs, w_max)?);
    }
    for w_max in [2, 4, 8, 16, 32] {
        let mut cfg = ExperimentConfig::new(13);
        cfg.p_sd = 0.0005;
        cfg.w_max = w_max;
        cfg.trials = 5000;
        let (g, _) = experiment_graph(&cfg)?;
        let weights: Vec<u32> = g.edges().iter().map(|e| e.weight).collect();
        let mean_w = weights.iter().sum::<u32>() as f64 / weights.len() as f64;
        let s = run_experiment(&cfg)?.summary.expect("trials > 0");
        println!(
            "w_max={w_max:>2}: mean weight {mean_w:.2}, {:.2} ns/round, {:.2} iterations, {} logical errors",
            s.mean_ns_per_round, s.mean_iterations, s.logical_errors
        );
    }
    Ok(())
}
