//! Saving and reloading syndromes in the binary and text formats, and
//! exporting the decoding graph as JSON lines.
//!
//!     cargo run --example syndrome_io

use helios_uf::graph::build_circuit_level;
use helios_uf::graph::export::write_jsonl;
use helios_uf::noise::format::{from_text, read_binary, to_text, write_binary, SyndromeHeader};
use helios_uf::noise::{trial_rng, NoiseModel, NoiseSpec};

fn main() -> helios_uf::Result<()> {
    let g = build_circuit_level(3, 2)?;
    let seed = 5;
    let (_, s) = NoiseSpec::new(NoiseModel::Circuit, 0.05).sample(&g, &mut trial_rng(seed, 0))?;
    let header = SyndromeHeader::for_graph(&g, seed);

    let mut bytes = Vec::new();
    write_binary(&header, &g, &s, &mut bytes).expect("writing to memory");
    let (h2, s2) = read_binary(bytes.as_slice())?;
    assert_eq!((h2, &s2), (header, &s));
    println!("binary: {} bytes", bytes.len());

    let text = to_text(&header, &s);
    print!("text:\n{text}");
    assert_eq!(from_text(&text)?.1, s);

    let mut jsonl = Vec::new();
    write_jsonl(&g, &mut jsonl).expect("writing to memory");
    let jsonl = String::from_utf8(jsonl).expect("utf-8");
    println!("graph: {} JSON lines, first three:", jsonl.lines().count());
    for line in jsonl.lines().take(3) {
        println!("  {line}");
    }
    Ok(())
}
