use helios_uf::graph::{build_circuit_level, build_phenomenological, partition, EdgeKind, VertexId};
use helios_uf::helios::{
    cycle_bound, decode_context_switched, decode_distributed, decode_sliding_window, CycleKind,
    DecoderOptions, HeliosDecoder, PROLOGUE_CYCLES,
};
use helios_uf::noise::{sample_phenomenological, trial_rng, NoiseModel, NoiseSpec, Syndrome};
use helios_uf::corrector::check_annihilation;
use helios_uf::serial_uf::decode_serial;

fn ids(v: &[u32]) -> Vec<VertexId> {
    v.iter().map(|&i| VertexId(i)).collect()
}

fn traced(g: &helios_uf::graph::DecodingGraph, s: &Syndrome) -> helios_uf::helios::DecodeResult {
    HeliosDecoder::new(
        g,
        DecoderOptions {
            trace: true,
            ..Default::default()
        },
    )
    .decode(s)
    .unwrap()
}

#[test]
fn empty_syndrome_costs_the_fixed_prologue() {
    let g = build_phenomenological(5, 5).unwrap();
    let r = decode_distributed(&g, &Syndrome::empty(g.num_vertices())).unwrap();
    assert_eq!(r.cycles, 4);
    assert!(r.clusters.is_empty());
    assert!(r.corrections.is_empty());
    assert_eq!(r.stages.grow, 1);
    assert_eq!(r.stages.settle, 2);
    assert_eq!(r.stages.decide, 1);
    assert!(r.registers.iter().enumerate().all(|(i, p)| !p.odd && p.cid == i as u32 + 1));
}

#[test]
fn four_defect_walkthrough() {
    let g = build_phenomenological(5, 5).unwrap();
    let s = Syndrome::from_defects(g.num_vertices(), &ids(&[1, 2, 3, 4]));
    let r = traced(&g, &s);

    assert_eq!(r.trace[0].kind, CycleKind::Grow);
    let full: Vec<(u32, u32)> = r.trace[0]
        .growth
        .iter()
        .filter(|&&(_, gr)| gr == 2)
        .map(|&(e, _)| {
            let e = g.edge(helios_uf::graph::EdgeId(e));
            (e.a.0, e.b.unwrap().0)
        })
        .collect();
    assert_eq!(full, vec![(1, 3), (1, 4), (2, 4)]);

    assert_eq!(r.trace[1].cid_adoptions(), vec![(VertexId(3), 1), (VertexId(4), 1)]);
    assert_eq!(r.trace[2].cid_adoptions(), vec![(VertexId(2), 1)]);
    let pe2 = r.trace[2].changes.iter().find(|c| c.0 == VertexId(2)).unwrap();
    assert_eq!(pe2.2.parent, 4);
    // The root's parity drops to even in cycle 5 and reaches every member by cycle 7.
    let odd_cleared = |cycle: usize| -> Vec<u32> {
        r.trace[cycle - 1]
            .changes
            .iter()
            .filter(|(_, a, b)| a.odd && !b.odd)
            .map(|(v, _, _)| v.0)
            .collect()
    };
    assert_eq!(odd_cleared(5), vec![1]);
    assert_eq!(odd_cleared(6), vec![3, 4]);
    assert_eq!(odd_cleared(7), vec![2]);
    assert!(r.trace[7].changes.iter().all(|(_, a, b)| a.visible_eq(b)));

    assert_eq!(r.quiescence_cycle, 8);
    assert_eq!(r.cycles, 9);
    assert_eq!(r.clusters.to_canonical_text(), "1 even interior: 1 2 3 4\n");
    assert!(check_annihilation(&g, &s, &r.corrections));
}

trait VisibleEq {
    fn visible_eq(&self, other: &Self) -> bool;
}

impl VisibleEq for helios_uf::helios::PeRegisters {
    fn visible_eq(&self, o: &Self) -> bool {
        (self.cid, self.parent, self.odd, self.st_odd, self.st_bnd)
            == (o.cid, o.parent, o.odd, o.st_odd, o.st_bnd)
    }
}

#[test]
fn two_pe_cluster_timeline() {
    let g = build_phenomenological(9, 9).unwrap();
    assert!(g.edge_between(VertexId(5), VertexId(9)).is_some());
    let s = Syndrome::from_defects(g.num_vertices(), &ids(&[5, 9]));
    let r = traced(&g, &s);
    let after = |cycle: usize, v: u32| {
        let mut reg = None;
        for t in &r.trace[..cycle] {
            for (pe, _, b) in &t.changes {
                if pe.0 == v {
                    reg = Some(*b);
                }
            }
        }
        reg
    };
    let pe9 = after(2, 9).unwrap();
    assert_eq!((pe9.cid, pe9.parent), (5, 5));
    assert!(pe9.odd);
    assert!(!after(4, 9).unwrap().odd);
    assert!(!after(4, 5).unwrap().odd);
    assert!(after(3, 9).unwrap().odd);
}

#[test]
fn isolated_defect_without_grown_edges_keeps_its_registers() {
    let g = build_phenomenological(9, 9).unwrap();
    // Vertex 200 is far from the boundary: the first merge finds no grown edge.
    let s = Syndrome::from_defects(g.num_vertices(), &ids(&[200]));
    let r = traced(&g, &s);
    assert!(r.trace[1].changes.iter().all(|(v, _, _)| v.0 != 200));
    assert!(r.clusters.clusters()[0].boundary);
}

#[test]
fn erased_edge_is_grown_before_the_first_cycle_and_triggers_the_prologue() {
    let g = build_phenomenological(5, 3).unwrap();
    let e = g.edge_ids().find(|&e| g.edge(e).kind == EdgeKind::Space).unwrap();
    let edge = g.edge(e).clone();
    let s = Syndrome::from_defects(g.num_vertices(), &[edge.a, edge.b.unwrap()]).with_erasures(vec![e]);
    let r = decode_distributed(&g, &s).unwrap();
    assert!(r.stages.prologue >= PROLOGUE_CYCLES);
    assert_eq!(r.growth[e.index()], 2);
    assert_eq!(r.corrections, vec![e]);
    // The pair is merged in the prologue, so the only growing stage finds nothing odd.
    assert_eq!(r.iterations, 1);
    assert_eq!(decode_serial(&g, &s).unwrap().clusters, r.clusters);
}

#[test]
fn forced_prologue_adds_exactly_four_cycles() {
    let g = build_phenomenological(7, 7).unwrap();
    for t in 0..200 {
        let (_, s) = sample_phenomenological(&g, 0.01, &mut trial_rng(3, t)).unwrap();
        let plain = decode_distributed(&g, &s).unwrap();
        let forced = HeliosDecoder::new(
            &g,
            DecoderOptions {
                erasure_mode: true,
                ..Default::default()
            },
        )
        .decode(&s)
        .unwrap();
        assert_eq!(forced.cycles, plain.cycles + PROLOGUE_CYCLES);
        assert_eq!(forced.clusters, plain.clusters);
    }
}

#[test]
fn matches_serial_and_respects_invariants() {
    for d in [3, 5, 7] {
        let g = build_phenomenological(d, d).unwrap();
        for t in 0..300 {
            let (_, s) = sample_phenomenological(&g, 0.03, &mut trial_rng(d as u64, t)).unwrap();
            let r = traced(&g, &s);
            let serial = decode_serial(&g, &s).unwrap();
            assert_eq!(r.clusters, serial.clusters);
            assert_eq!(r.growth, serial.growth);
            assert!(r.cycles <= cycle_bound(d));
            assert!(check_annihilation(&g, &s, &r.corrections));
            for c in &r.trace {
                for (v, a, b) in &c.changes {
                    assert!(b.cid <= a.cid, "cid increased at pe {v}");
                    assert!(b.cid <= v.0);
                }
            }
            for (i, reg) in r.registers.iter().enumerate() {
                let v = VertexId::from_index(i);
                if reg.parent != v.0 {
                    let p = VertexId(reg.parent);
                    let e = g.edge_between(v, p).expect("parent is a neighbour");
                    assert!(r.growth[e.index()] >= g.edge(e).weight);
                    assert!(r.registers[p.index()].cid <= reg.cid);
                    let mut cur = v;
                    for _ in 0..g.num_vertices() {
                        cur = VertexId(r.registers[cur.index()].parent);
                    }
                    assert_eq!(r.registers[cur.index()].parent, cur.0, "parent cycle");
                }
            }
        }
    }
}

#[test]
fn repeated_decodes_are_identical() {
    let g = build_circuit_level(5, 5).unwrap();
    let spec = NoiseSpec::new(NoiseModel::Circuit, 0.01);
    let mut dec = HeliosDecoder::new(&g, DecoderOptions::default());
    for t in 0..50 {
        let (_, s) = spec.sample(&g, &mut trial_rng(8, t)).unwrap();
        let a = dec.decode(&s).unwrap();
        let b = decode_distributed(&g, &s).unwrap();
        assert_eq!(a.cycles, b.cycles);
        assert_eq!(a.registers, b.registers);
        assert_eq!(a.corrections, b.corrections);
    }
}

#[test]
fn context_switching_is_transparent() {
    let g = build_phenomenological(5, 9).unwrap();
    for t in 0..100 {
        let (_, s) = sample_phenomenological(&g, 0.02, &mut trial_rng(5, t)).unwrap();
        let base = decode_distributed(&g, &s).unwrap();
        let one = decode_context_switched(&g, &s, 1).unwrap();
        assert_eq!(one.cycles, base.cycles);
        for n in [2, 3, 4, 9] {
            let r = decode_context_switched(&g, &s, n).unwrap();
            assert_eq!(r.registers, base.registers);
            assert_eq!(r.growth, base.growth);
            assert_eq!(r.clusters, base.clusters);
            let logical = base.stages.grow + base.stages.settle + base.stages.merge;
            assert_eq!(r.cycles, logical * 2 * n as u64 + base.stages.decide);
        }
    }
    let p = partition(&g, 3).unwrap();
    assert_eq!(p.band_sizes(), vec![3, 3, 3]);
}

#[test]
fn sliding_window_on_a_clean_stream() {
    let d = 5;
    let g = build_phenomenological(d, 4 * d).unwrap();
    let out = decode_sliding_window(&g, &Syndrome::empty(g.num_vertices()), DecoderOptions::default()).unwrap();
    assert!(out.committed.is_empty());
    assert_eq!(out.windows(), 3);
    assert!(decode_sliding_window(&build_phenomenological(d, 7).unwrap(), &Syndrome::empty(g.per_round() * 7), DecoderOptions::default()).is_err());
}

#[test]
fn sliding_window_commits_old_pairs_first() {
    let d = 5;
    let g = build_phenomenological(d, 4 * d).unwrap();
    let e = g
        .edge_ids()
        .find(|&e| g.edge(e).kind == EdgeKind::Space && g.edge(e).round == 1)
        .unwrap();
    let edge = g.edge(e);
    let s = Syndrome::from_defects(g.num_vertices(), &[edge.a, edge.b.unwrap()]);
    let out = decode_sliding_window(&g, &s, DecoderOptions::default()).unwrap();
    assert_eq!(out.committed, vec![e]);
}

#[test]
fn sliding_window_annihilates_noisy_streams() {
    let d = 5;
    let g = build_phenomenological(d, 4 * d).unwrap();
    for t in 0..200 {
        let (_, s) = sample_phenomenological(&g, 0.01, &mut trial_rng(12, t)).unwrap();
        let out = decode_sliding_window(&g, &s, DecoderOptions::default()).unwrap();
        assert!(check_annihilation(&g, &s, &out.committed), "trial {t}");
    }
}
