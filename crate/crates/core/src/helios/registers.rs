use std::fmt;

use crate::graph::VertexId;

/// Registered state of one processing element.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct PeRegisters {
    /// Defect bit, loaded once before decoding.
    pub m: bool,
    pub cid: u32,
    pub parent: u32,
    pub odd: bool,
    /// `odd` delayed by one cycle; the controller's termination input.
    pub codd: bool,
    /// Defect parity of the PE's subtree in the parent forest.
    pub st_odd: bool,
    /// Some PE of the subtree owns a fully grown boundary edge.
    pub st_bnd: bool,
    pub busy: bool,
    /// One of this PE's boundary edges is fully grown.
    pub boundary_grown: bool,
}

impl PeRegisters {
    pub fn init(id: VertexId, m: bool, boundary_grown: bool) -> Self {
        PeRegisters {
            m,
            cid: id.0,
            parent: id.0,
            odd: m,
            codd: m,
            st_odd: m,
            st_bnd: boundary_grown,
            busy: false,
            boundary_grown,
        }
    }

    /// Fields read by neighbouring PEs.
    #[inline]
    pub(crate) fn visible(&self) -> (u32, u32, bool, bool, bool) {
        (self.cid, self.parent, self.odd, self.st_odd, self.st_bnd)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum GlobalStage {
    Growing,
    Merging,
    Terminate,
}

/// Controller registers.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct ControllerState {
    pub stage: GlobalStage,
    /// Merging cycles still to run before `busy` is trusted.
    pub settle: u8,
    /// Inside the erasure prologue, which always continues with growing.
    pub prologue: bool,
}

/// What a simulated cycle was spent on.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum CycleKind {
    /// Growing cycle; in the erasure prologue this slot grows nothing.
    Grow,
    /// Merging cycle during the fixed settle window.
    Settle,
    /// Merging cycle after the settle window because some PE was busy.
    Merge,
    /// Controller reads `busy` and `codd` and picks the next stage.
    Decide,
}

impl fmt::Display for CycleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CycleKind::Grow => "grow",
            CycleKind::Settle => "settle",
            CycleKind::Merge => "merge",
            CycleKind::Decide => "decide",
        })
    }
}

/// Cycle totals per stage. `prologue` counts the erasure prologue's cycles,
/// which are not included in the other fields.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct StageCycles {
    pub grow: u64,
    pub settle: u64,
    pub merge: u64,
    pub decide: u64,
    pub prologue: u64,
}

impl StageCycles {
    pub fn total(&self) -> u64 {
        self.grow + self.settle + self.merge + self.decide + self.prologue
    }
}
