//! Helios-n: the d=27 decoding graph folded onto fewer physical PEs.
//! Clusters are identical for every n; only latency changes.
//!
//!     cargo run --release --example context_switching -- 300

use helios_uf::graph::{build_phenomenological, partition};
use helios_uf::helios::{decode_context_switched, decode_distributed};
use helios_uf::noise::{sample_phenomenological, trial_rng};

fn main() -> helios_uf::Result<()> {
    let trials: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200);
    let d = 27;
    let g = build_phenomenological(d, d)?;
    let ns = [1, 2, 4, 7, 9, 27];
    let mut cycles = vec![0u64; ns.len()];
    for t in 0..trials {
        let (_, s) = sample_phenomenological(&g, 0.001, &mut trial_rng(27, t))?;
        let base = decode_distributed(&g, &s)?;
        for (k, &n) in ns.iter().enumerate() {
            let r = decode_context_switched(&g, &s, n)?;
            assert_eq!(r.clusters, base.clusters, "n={n} trial {t}");
            cycles[k] += r.cycles;
        }
    }
    for (k, &n) in ns.iter().enumerate() {
        let p = partition(&g, n)?;
        println!(
            "n={n:>2}: {:>5} physical PEs, bands {:?}, {:.1} ns/round",
            p.num_physical(),
            p.band_sizes(),
            cycles[k] as f64 * 10.0 / trials as f64 / d as f64
        );
    }
    Ok(())
}
