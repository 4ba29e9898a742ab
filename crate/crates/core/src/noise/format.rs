//! Syndrome files.
//!
//! Binary layout (little endian):
//!
//! ```text
//! magic    4 bytes  "HSYN"
//! version  u8       1
//! model    u8       0 = phenomenological, 1 = circuit-level
//! d        u16
//! rounds   u16
//! seed     u64
//! vertices u32
//! edges    u32
//! defects  ceil(vertices / 8) bytes, bit k of byte k / 8 = vertex k + 1
//! erased   ceil(edges / 8) bytes, bit k of byte k / 8 = edge k
//! ```
//!
//! The text form is a header line followed by `defects` and `erased` lines of
//! space-separated ids.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::graph::{DecodingGraph, EdgeId, GraphModel, VertexId};
use crate::noise::Syndrome;

const MAGIC: &[u8; 4] = b"HSYN";
const VERSION: u8 = 1;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SyndromeHeader {
    pub d: usize,
    pub rounds: usize,
    pub model: GraphModel,
    pub seed: u64,
}

impl SyndromeHeader {
    pub fn for_graph(g: &DecodingGraph, seed: u64) -> Self {
        SyndromeHeader {
            d: g.d(),
            rounds: g.rounds(),
            model: g.model(),
            seed,
        }
    }

    /// Builds the graph the syndrome was sampled on.
    pub fn graph(&self) -> Result<DecodingGraph> {
        DecodingGraph::build(self.d, self.rounds, self.model)
    }
}

fn pack(bits: impl ExactSizeIterator<Item = bool>) -> Vec<u8> {
    let mut out = vec![0u8; bits.len().div_ceil(8)];
    for (k, b) in bits.enumerate() {
        if b {
            out[k / 8] |= 1 << (k % 8);
        }
    }
    out
}

fn unpack(bytes: &[u8], len: usize) -> impl Iterator<Item = usize> + '_ {
    (0..len).filter(move |&k| bytes[k / 8] >> (k % 8) & 1 == 1)
}

pub fn write_binary<W: Write>(
    header: &SyndromeHeader,
    g: &DecodingGraph,
    s: &Syndrome,
    mut out: W,
) -> std::io::Result<()> {
    let mut buf = Vec::with_capacity(24);
    buf.extend_from_slice(MAGIC);
    buf.push(VERSION);
    buf.push(match header.model {
        GraphModel::Phenomenological => 0,
        GraphModel::CircuitLevel => 1,
    });
    buf.extend_from_slice(&(header.d as u16).to_le_bytes());
    buf.extend_from_slice(&(header.rounds as u16).to_le_bytes());
    buf.extend_from_slice(&header.seed.to_le_bytes());
    buf.extend_from_slice(&(s.num_vertices() as u32).to_le_bytes());
    buf.extend_from_slice(&(g.num_edges() as u32).to_le_bytes());
    out.write_all(&buf)?;
    out.write_all(&pack(s.defect_bits().iter().copied()))?;
    let mut erased = vec![false; g.num_edges()];
    for e in s.erased_edges() {
        erased[e.index()] = true;
    }
    out.write_all(&pack(erased.into_iter()))
}

pub fn read_binary<R: Read>(mut input: R) -> Result<(SyndromeHeader, Syndrome)> {
    let mut bytes = Vec::new();
    input
        .read_to_end(&mut bytes)
        .map_err(|e| Error::Format(e.to_string()))?;
    let fixed = 4 + 1 + 1 + 2 + 2 + 8 + 4 + 4;
    if bytes.len() < fixed || &bytes[..4] != MAGIC {
        return Err(Error::Format("missing header".into()));
    }
    if bytes[4] != VERSION {
        return Err(Error::Format(format!("unsupported version {}", bytes[4])));
    }
    let model = match bytes[5] {
        0 => GraphModel::Phenomenological,
        1 => GraphModel::CircuitLevel,
        m => return Err(Error::Format(format!("unknown model tag {m}"))),
    };
    let u16_at = |k: usize| u16::from_le_bytes([bytes[k], bytes[k + 1]]) as usize;
    let u32_at = |k: usize| u32::from_le_bytes(bytes[k..k + 4].try_into().unwrap()) as usize;
    let header = SyndromeHeader {
        d: u16_at(6),
        rounds: u16_at(8),
        model,
        seed: u64::from_le_bytes(bytes[10..18].try_into().unwrap()),
    };
    let (vertices, edges) = (u32_at(18), u32_at(22));
    let (vbytes, ebytes) = (vertices.div_ceil(8), edges.div_ceil(8));
    if bytes.len() != fixed + vbytes + ebytes {
        return Err(Error::Format(format!(
            "expected {} bytes, found {}",
            fixed + vbytes + ebytes,
            bytes.len()
        )));
    }
    let body = &bytes[fixed..];
    let defects: Vec<VertexId> = unpack(&body[..vbytes], vertices)
        .map(VertexId::from_index)
        .collect();
    let erased = unpack(&body[vbytes..], edges).map(|k| EdgeId(k as u32)).collect();
    Ok((
        header,
        Syndrome::from_defects(vertices, &defects).with_erasures(erased),
    ))
}

fn model_name(m: GraphModel) -> &'static str {
    match m {
        GraphModel::Phenomenological => "phenomenological",
        GraphModel::CircuitLevel => "circuit",
    }
}

pub fn to_text(header: &SyndromeHeader, s: &Syndrome) -> String {
    let join = |ids: Vec<String>| ids.iter().map(|x| format!(" {x}")).collect::<String>();
    format!(
        "syndrome d={} rounds={} model={} seed={} vertices={}\ndefects{}\nerased{}\n",
        header.d,
        header.rounds,
        model_name(header.model),
        header.seed,
        s.num_vertices(),
        join(s.defects().map(|v| v.to_string()).collect()),
        join(s.erased_edges().iter().map(|e| e.to_string()).collect()),
    )
}

pub fn from_text(text: &str) -> Result<(SyndromeHeader, Syndrome)> {
    let parse_err = |line: usize, msg: String| Error::Parse { line, msg };
    let mut lines = text.lines();
    let head = lines.next().ok_or_else(|| parse_err(1, "empty input".into()))?;
    let mut fields = head.split_whitespace();
    if fields.next() != Some("syndrome") {
        return Err(parse_err(1, "expected `syndrome` header".into()));
    }
    let (mut d, mut rounds, mut model, mut seed, mut vertices) = (None, None, None, None, None);
    for f in fields {
        let (k, v) = f
            .split_once('=')
            .ok_or_else(|| parse_err(1, format!("malformed field `{f}`")))?;
        let num = || v.parse::<u64>().map_err(|e| parse_err(1, format!("{k}: {e}")));
        match k {
            "d" => d = Some(num()? as usize),
            "rounds" => rounds = Some(num()? as usize),
            "seed" => seed = Some(num()?),
            "vertices" => vertices = Some(num()? as usize),
            "model" => {
                model = Some(match v {
                    "phenomenological" => GraphModel::Phenomenological,
                    "circuit" => GraphModel::CircuitLevel,
                    _ => return Err(parse_err(1, format!("unknown model `{v}`"))),
                })
            }
            _ => return Err(parse_err(1, format!("unknown field `{k}`"))),
        }
    }
    let missing = |name: &str| parse_err(1, format!("missing `{name}`"));
    let header = SyndromeHeader {
        d: d.ok_or_else(|| missing("d"))?,
        rounds: rounds.ok_or_else(|| missing("rounds"))?,
        model: model.ok_or_else(|| missing("model"))?,
        seed: seed.ok_or_else(|| missing("seed"))?,
    };
    let vertices = vertices.ok_or_else(|| missing("vertices"))?;

    let mut ids = |line: usize, tag: &str| -> Result<Vec<u32>> {
        let l = lines
            .next()
            .ok_or_else(|| parse_err(line, format!("missing `{tag}` line")))?;
        let mut it = l.split_whitespace();
        if it.next() != Some(tag) {
            return Err(parse_err(line, format!("expected `{tag}`")));
        }
        it.map(|x| x.parse::<u32>().map_err(|e| parse_err(line, e.to_string())))
            .collect()
    };
    let defects = ids(2, "defects")?;
    let erased = ids(3, "erased")?;
    if let Some(&bad) = defects.iter().find(|&&v| v == 0 || v as usize > vertices) {
        return Err(parse_err(2, format!("vertex {bad} out of range")));
    }
    let defects: Vec<VertexId> = defects.into_iter().map(VertexId).collect();
    Ok((
        header,
        Syndrome::from_defects(vertices, &defects).with_erasures(erased.into_iter().map(EdgeId).collect()),
    ))
}
