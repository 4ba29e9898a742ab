//! Latency distribution at d=13, p=0.001 with a text histogram, plus the CSV
//! and SVG artifacts in `out/latency`.
//!
//!     cargo run --release --example latency_distribution -- 100000

use std::path::Path;

use helios_uf::harness::{emit_plots, histogram, run_experiment, ExperimentConfig, Summary};

fn main() -> helios_uf::Result<()> {
    let mut cfg = ExperimentConfig::new(13);
    cfg.trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20_000);
    let ex = run_experiment(&cfg)?;
    let s = ex.summary.as_ref().expect("trials > 0");
    println!(
        "mean {:.1} ns, p50 {} ns, p97 {} ns, p99.99 {} ns, max {} ns",
        s.mean_ns, s.p50_ns, s.p97_ns, s.p9999_ns, s.max_ns
    );
    for limit in [100.0, 250.0, 510.0] {
        println!("  {:>6.2}% within {limit} ns", 100.0 * Summary::fraction_within(&ex.records, limit));
    }
    let bins = histogram(&ex.records);
    let top = bins.iter().map(|b| b.count).max().unwrap_or(1);
    for b in &bins {
        let bar = "#".repeat(((b.count as f64 / top as f64) * 50.0).ceil() as usize);
        println!("{:>5} ns {:>7} {bar}", b.cycles as f64 * cfg.clock_ns, b.count);
    }
    for path in emit_plots(Path::new("out/latency"), &[ex])? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
