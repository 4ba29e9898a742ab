//! Erasure noise on top of p=0.001: the prologue merge stage and the latency
//! shift it causes.
//!
//!     cargo run --release --example erasures

use helios_uf::harness::{run_experiment, ExperimentConfig};
use helios_uf::noise::NoiseModel;

fn main() -> helios_uf::Result<()> {
    let mut base = ExperimentConfig::new(13);
    base.trials = 10_000;
    let plain = run_experiment(&base)?;
    let plain_ns = plain.summary.as_ref().expect("trials > 0").mean_ns;
    println!("no erasure mode: {plain_ns:.1} ns");
    for p_e in [0.0, 0.0005, 0.001, 0.002, 0.005] {
        let mut cfg = base.clone();
        cfg.model = NoiseModel::Erasure;
        cfg.p_e = p_e;
        let ex = run_experiment(&cfg)?;
        let s = ex.summary.as_ref().expect("trials > 0");
        println!(
            "p_e={p_e:<6}: {:.1} ns (shift {:+.1} ns), {:.2} defects, {} logical errors",
            s.mean_ns,
            s.mean_ns - plain_ns,
            s.mean_defects,
            s.logical_errors
        );
    }
    Ok(())
}
