//! Logical error rates with 95% Wilson intervals across distances and noise
//! levels.
//!
//!     cargo run --release --example logical_error_rate -- 100000

use helios_uf::harness::{run_experiment, wilson_interval, ExperimentConfig};

fn main() -> helios_uf::Result<()> {
    let trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20_000);
    for p in [0.005, 0.01, 0.02, 0.03] {
        print!("p={p:<6}");
        for d in [3, 5, 7] {
            let mut cfg = ExperimentConfig::new(d);
            cfg.p = p;
            cfg.trials = trials;
            let s = run_experiment(&cfg)?.summary.expect("trials > 0");
            let (lo, hi) = wilson_interval(s.logical_errors, s.trials);
            print!("  d={d}: {:.5} [{lo:.5}, {hi:.5}]", s.logical_error_rate);
        }
        println!();
    }
    Ok(())
}
