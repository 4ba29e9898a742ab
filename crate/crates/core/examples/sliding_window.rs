//! Streaming decoding of 10d rounds with a 2d window advancing by d.
//!
//!     cargo run --release --example sliding_window

use helios_uf::corrector::{check_annihilation, logical_flip};
use helios_uf::graph::build_phenomenological;
use helios_uf::helios::{decode_distributed, decode_sliding_window, DecoderOptions};
use helios_uf::noise::{sample_phenomenological, trial_rng};

fn main() -> helios_uf::Result<()> {
    let d = 7;
    let stream = build_phenomenological(d, 10 * d)?;
    let (mut window_cycles, mut whole_cycles, mut flips_window, mut flips_whole) = (0, 0, 0, 0);
    let trials = 500;
    for t in 0..trials {
        let (pattern, s) = sample_phenomenological(&stream, 0.005, &mut trial_rng(11, t))?;
        let out = decode_sliding_window(&stream, &s, DecoderOptions::default())?;
        assert!(check_annihilation(&stream, &s, &out.committed));
        window_cycles += out.total_cycles();
        flips_window += logical_flip(&stream, &pattern, &out.committed)? as u32;
        let whole = decode_distributed(&stream, &s)?;
        whole_cycles += whole.cycles;
        flips_whole += logical_flip(&stream, &pattern, &whole.corrections)? as u32;
    }
    println!("{} windows per stream of {} rounds", 10 - 1, 10 * d);
    println!(
        "sliding window: {:.1} cycles per stream, {flips_window} logical errors",
        window_cycles as f64 / trials as f64
    );
    println!(
        "whole stream:   {:.1} cycles per stream, {flips_whole} logical errors",
        whole_cycles as f64 / trials as f64
    );
    Ok(())
}
