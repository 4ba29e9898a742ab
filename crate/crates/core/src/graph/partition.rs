//! Splitting a decoding graph along the round axis for time-multiplexed PEs.
//!
//! Bands are contiguous round ranges, larger bands first. Consecutive bands
//! alternate orientation on a lattice of `height = ceil(rounds / n)` physical
//! PE rows, folding the round axis like a concertina. The fold guarantees that
//! the last round of one band and the first round of the next land on the same
//! physical row, so every time edge between bands joins two contexts of the
//! same physical PE.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::graph::{DecodingGraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    rounds: usize,
    per_round: usize,
    bands: Vec<Band>,
    height: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Band {
    rounds: Range<usize>,
    reversed: bool,
    offset: usize,
}

/// Physical location of a virtual PE.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Placement {
    pub physical: usize,
    pub context: usize,
}

pub fn partition(g: &DecodingGraph, n: usize) -> Result<Partition> {
    Partition::new(g.rounds(), g.per_round(), n)
}

impl Partition {
    pub fn new(rounds: usize, per_round: usize, n: usize) -> Result<Self> {
        if n == 0 || n > rounds {
            return Err(Error::InvalidPartition { rounds, n });
        }
        let (base, extra) = (rounds / n, rounds % n);
        let mut bands = Vec::with_capacity(n);
        let mut start = 0;
        let mut offset = 0;
        for k in 0..n {
            let size = base + usize::from(k < extra);
            let reversed = k % 2 == 1;
            if let Some(prev) = bands.last() {
                let prev: &Band = prev;
                if !prev.reversed {
                    offset = prev.offset + prev.rounds.len() - size;
                }
            }
            bands.push(Band {
                rounds: start..start + size,
                reversed,
                offset,
            });
            start += size;
        }
        Ok(Partition {
            rounds,
            per_round,
            height: base + usize::from(extra > 0),
            bands,
        })
    }

    pub fn n(&self) -> usize {
        self.bands.len()
    }

    /// Physical PE rows, each holding one round's worth of ancillas.
    pub fn height(&self) -> usize {
        self.height
    }

    pub fn num_physical(&self) -> usize {
        self.height * self.per_round
    }

    pub fn band_rounds(&self, k: usize) -> Range<usize> {
        self.bands[k].rounds.clone()
    }

    pub fn band_sizes(&self) -> Vec<usize> {
        self.bands.iter().map(|b| b.rounds.len()).collect()
    }

    pub fn band_of_round(&self, round: usize) -> usize {
        self.bands
            .iter()
            .position(|b| b.rounds.contains(&round))
            .expect("round inside the partitioned window")
    }

    /// Vertices of sub-graph `k`, in ascending id order.
    pub fn sub_graph(&self, k: usize) -> impl Iterator<Item = VertexId> {
        let r = self.bands[k].rounds.clone();
        (r.start * self.per_round..r.end * self.per_round).map(VertexId::from_index)
    }

    fn physical_row(&self, round: usize) -> usize {
        let band = &self.bands[self.band_of_round(round)];
        if band.reversed {
            band.offset + (band.rounds.end - 1 - round)
        } else {
            band.offset + (round - band.rounds.start)
        }
    }

    pub fn placement(&self, v: VertexId) -> Placement {
        let idx = v.index();
        let (round, within) = (idx / self.per_round, idx % self.per_round);
        Placement {
            physical: self.physical_row(round) * self.per_round + within,
            context: self.band_of_round(round),
        }
    }

    /// Fails with `PartitionMismatch` unless this partition was built for `g`.
    pub fn check_graph(&self, g: &DecodingGraph) -> Result<()> {
        if g.rounds() == self.rounds && g.per_round() == self.per_round {
            Ok(())
        } else {
            Err(Error::PartitionMismatch)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_phenomenological, EdgeKind};

    #[test]
    fn band_sizes_are_an_even_split() {
        let p = Partition::new(27, 1, 4).unwrap();
        assert_eq!(p.band_sizes(), vec![7, 7, 7, 6]);
        assert_eq!(p.height(), 7);
        let p = Partition::new(27, 1, 27).unwrap();
        assert!(p.band_sizes().iter().all(|&s| s == 1));
        assert_eq!(p.height(), 1);
    }

    #[test]
    fn single_band_is_the_identity() {
        let g = build_phenomenological(27, 27).unwrap();
        let p = partition(&g, 1).unwrap();
        assert_eq!(p.sub_graph(0).count(), g.num_vertices());
        for v in g.vertices() {
            assert_eq!(
                p.placement(v),
                Placement {
                    physical: v.index(),
                    context: 0
                }
            );
        }
    }

    #[test]
    fn rejects_too_many_bands() {
        assert!(matches!(
            Partition::new(5, 4, 6),
            Err(Error::InvalidPartition { rounds: 5, n: 6 })
        ));
        assert!(Partition::new(5, 4, 0).is_err());
    }

    #[test]
    fn cross_band_time_edges_share_a_physical_pe() {
        for (rounds, n) in [(27, 4), (10, 3), (9, 9), (13, 5), (8, 2)] {
            let g = build_phenomenological(3, rounds).unwrap();
            let p = partition(&g, n).unwrap();
            for e in g.edges() {
                let Some(b) = e.b else { continue };
                let (pa, pb) = (p.placement(e.a), p.placement(b));
                if pa.context != pb.context {
                    assert_eq!(e.kind, EdgeKind::Time);
                    assert_eq!(pa.physical, pb.physical, "rounds {rounds} n {n}");
                }
            }
            // Within a context no two vertices share a physical PE.
            for k in 0..n {
                let mut seen = std::collections::HashSet::new();
                for v in p.sub_graph(k) {
                    let pl = p.placement(v);
                    assert!(pl.physical < p.num_physical());
                    assert!(seen.insert(pl.physical));
                }
            }
        }
    }
}
