//! Mean and tail latency at d=13 as the physical error rate grows, for
//! phenomenological and circuit-level noise.
//!
//!     cargo run --release --example noise_sweep

use helios_uf::harness::{run_experiment, ExperimentConfig};
use helios_uf::noise::NoiseModel;

fn main() -> helios_uf::Result<()> {
    for model in [NoiseModel::Phenomenological, NoiseModel::Circuit] {
        println!("{model}");
        for p in [0.0005, 0.001, 0.002, 0.005, 0.01, 0.02] {
            let mut cfg = ExperimentConfig::new(13);
            cfg.model = model;
            cfg.p = p;
            cfg.trials = 5000;
            let ex = run_experiment(&cfg)?;
            let s = ex.summary.as_ref().expect("trials > 0");
            println!(
                "  p={p:<7} mean {:>6.2} cycles  p97 {:>4}  max {:>4}  defects {:>6.2}  iterations {:.2}",
                s.mean_cycles, s.p97_cycles, s.max_cycles, s.mean_defects, s.mean_iterations
            );
        }
    }
    Ok(())
}
