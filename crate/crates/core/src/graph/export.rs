use std::io::{self, Write};

use serde::Serialize;

use crate::graph::{DataQubit, DecodingGraph, EdgeKind};

#[derive(Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum Record {
    Vertex {
        id: u32,
        row: u16,
        col: u16,
        round: u16,
    },
    Edge {
        id: u32,
        a: u32,
        #[serde(skip_serializing_if = "Option::is_none")]
        b: Option<u32>,
        weight: u32,
        kind: EdgeKind,
        round: u16,
        support: Vec<DataQubit>,
        crosses_cut: bool,
    },
}

/// Writes one JSON object per vertex, then one per edge.
pub fn write_jsonl<W: Write>(g: &DecodingGraph, mut out: W) -> io::Result<()> {
    for v in g.vertices() {
        let c = g.coord(v);
        let rec = Record::Vertex {
            id: v.0,
            row: c.row,
            col: c.col,
            round: c.round,
        };
        serde_json::to_writer(&mut out, &rec)?;
        out.write_all(b"\n")?;
    }
    for (k, e) in g.edges().iter().enumerate() {
        let rec = Record::Edge {
            id: k as u32,
            a: e.a.0,
            b: e.b.map(|b| b.0),
            weight: e.weight,
            kind: e.kind,
            round: e.round,
            support: e.support.iter().flatten().copied().collect(),
            crosses_cut: e.crosses_cut,
        };
        serde_json::to_writer(&mut out, &rec)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}
