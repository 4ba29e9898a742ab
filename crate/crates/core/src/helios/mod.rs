//! Cycle-accurate simulation of the distributed decoder on a PE array.
//!
//! Each vertex of the decoding graph is a processing element (PE) linked to
//! its graph neighbours. A global controller alternates between one growing
//! cycle and a merging stage. Merging runs two unconditional settle cycles,
//! then keeps going while any PE reports `busy`, and ends with a decision
//! cycle that either starts another growing stage (some PE's `codd` is set) or
//! terminates. During merging every PE adopts the smallest cluster id among
//! its fully grown neighbours, convergecasts subtree parity (`st_odd`) and
//! boundary contact (`st_bnd`) up the parent forest, and the root broadcasts
//! the resulting `odd` bit back down.
//!
//! With erased edges (or when erasure mode is forced), decoding starts with a
//! prologue: an entry cycle that grows nothing, a full merging stage, and a
//! decision cycle that always moves on to growing.

mod engine;
pub mod registers;
pub mod sliding;
mod trace;

pub use engine::{decode_context_switched, decode_distributed, DecodeResult, DecoderOptions, HeliosDecoder};
pub use registers::{ControllerState, CycleKind, GlobalStage, PeRegisters, StageCycles};
pub use sliding::{decode_sliding_window, SlidingOutcome};
pub use trace::CycleTrace;

/// Upper bound on cycles for `rounds = d` without context switching or erasures.
pub fn cycle_bound(d: usize) -> u64 {
    let d = d as u64;
    3 * d.pow(4) + 2 * d
}

/// Cycles spent in the erasure prologue when nothing needs merging.
pub const PROLOGUE_CYCLES: u64 = 4;
