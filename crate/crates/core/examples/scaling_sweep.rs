//! Mean decoding time per round across code distances at p=0.001.
//!
//!     cargo run --release --example scaling_sweep -- 10000

use std::path::Path;

use helios_uf::harness::{emit_plots, run_experiment, ExperimentConfig};

fn main() -> helios_uf::Result<()> {
    let trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5000);
    let mut runs = Vec::new();
    println!("{:>3} {:>10} {:>12} {:>10}", "d", "mean ns", "ns / round", "iters");
    for d in [3, 5, 7, 9, 11, 13, 15, 17, 19, 21] {
        let mut cfg = ExperimentConfig::new(d);
        cfg.trials = trials;
        let ex = run_experiment(&cfg)?;
        let s = ex.summary.as_ref().expect("trials > 0");
        println!("{d:>3} {:>10.1} {:>12.2} {:>10.3}", s.mean_ns, s.mean_ns_per_round, s.mean_iterations);
        runs.push(ex);
    }
    emit_plots(Path::new("out/scaling"), &runs)?;
    println!("wrote out/scaling/summary.csv and out/scaling/scaling.svg");
    Ok(())
}
