//! Decodes the same random syndromes with the serial reference and the PE
//! array, and checks that both end with identical clusters.
//!
//!     cargo run --release --example serial_vs_distributed -- 7 0.01 2000

use helios_uf::graph::build_phenomenological;
use helios_uf::helios::decode_distributed;
use helios_uf::noise::{sample_phenomenological, trial_rng};
use helios_uf::serial_uf::decode_serial;

fn main() -> helios_uf::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let d = args.first().and_then(|s| s.parse().ok()).unwrap_or(7);
    let p = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(0.01);
    let trials: u64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(2000);

    let g = build_phenomenological(d, d)?;
    let mut agree = 0;
    let mut cycles = 0;
    for t in 0..trials {
        let (_, s) = sample_phenomenological(&g, p, &mut trial_rng(7, t))?;
        let serial = decode_serial(&g, &s)?;
        let dist = decode_distributed(&g, &s)?;
        if serial.clusters == dist.clusters && serial.growth == dist.growth {
            agree += 1;
        } else {
            eprintln!("trial {t} differs:\n{}---\n{}", serial.clusters.to_canonical_text(), dist.clusters.to_canonical_text());
        }
        cycles += dist.cycles;
    }
    println!("d={d} p={p}: {agree}/{trials} trials agree, mean {:.2} cycles", cycles as f64 / trials as f64);
    Ok(())
}
