use std::fmt::{self, Write as _};

use crate::graph::VertexId;
use crate::helios::registers::{CycleKind, PeRegisters};

/// Register changes committed in one cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleTrace {
    pub cycle: u64,
    pub kind: CycleKind,
    /// `(pe, before, after)` for every PE whose registers changed.
    pub changes: Vec<(VertexId, PeRegisters, PeRegisters)>,
    /// Edges whose growth changed, with the new value.
    pub growth: Vec<(u32, u32)>,
}

impl CycleTrace {
    /// Ids of the PEs whose `cid` changed in this cycle.
    pub fn cid_adoptions(&self) -> Vec<(VertexId, u32)> {
        self.changes
            .iter()
            .filter(|(_, a, b)| a.cid != b.cid)
            .map(|(v, _, b)| (*v, b.cid))
            .collect()
    }
}

impl fmt::Display for CycleTrace {
    /// One line per changed register: `cycle kind target field=value`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        if self.changes.is_empty() && self.growth.is_empty() {
            let _ = writeln!(out, "{} {} -", self.cycle, self.kind);
        }
        for &(e, gr) in &self.growth {
            let _ = writeln!(out, "{} {} e{} growth={}", self.cycle, self.kind, e, gr);
        }
        for (v, a, b) in &self.changes {
            let mut fields = Vec::new();
            macro_rules! diff {
                ($name:ident) => {
                    if a.$name != b.$name {
                        fields.push(format!("{}={}", stringify!($name), bit(b.$name)));
                    }
                };
            }
            diff!(cid);
            diff!(parent);
            diff!(odd);
            diff!(codd);
            diff!(st_odd);
            diff!(st_bnd);
            diff!(busy);
            diff!(boundary_grown);
            let _ = writeln!(out, "{} {} pe{} {}", self.cycle, self.kind, v, fields.join(" "));
        }
        f.write_str(&out)
    }
}

trait Bit {
    fn show(&self) -> String;
}

impl Bit for bool {
    fn show(&self) -> String {
        u8::from(*self).to_string()
    }
}

impl Bit for u32 {
    fn show(&self) -> String {
        self.to_string()
    }
}

fn bit<T: Bit>(x: T) -> String {
    x.show()
}
