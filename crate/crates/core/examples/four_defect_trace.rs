//! Replays the four-defect walkthrough and prints every register change.
//!
//!     cargo run --example four_defect_trace

use helios_uf::graph::{build_phenomenological, VertexId};
use helios_uf::helios::{DecoderOptions, HeliosDecoder};
use helios_uf::noise::Syndrome;

fn main() -> helios_uf::Result<()> {
    let g = build_phenomenological(5, 5)?;
    let defects = [1, 2, 3, 4].map(VertexId);
    let s = Syndrome::from_defects(g.num_vertices(), &defects);
    let options = DecoderOptions {
        trace: true,
        ..Default::default()
    };
    let r = HeliosDecoder::new(&g, options).decode(&s)?;
    for cycle in &r.trace {
        print!("{cycle}");
    }
    println!(
        "quiescent after cycle {}, terminated after {} cycles",
        r.quiescence_cycle, r.cycles
    );
    print!("{}", r.clusters.to_canonical_text());
    println!("correction: {:?}", r.corrections);
    Ok(())
}
