use proptest::prelude::*;

use helios_uf::corrector::{check_annihilation, correct};
use helios_uf::graph::{
    build_circuit_level, build_phenomenological, partition, weights_from_probabilities, DecodingGraph,
    EdgeId, GraphModel, VertexId,
};
use helios_uf::harness::{DecoderKind, ExperimentConfig};
use helios_uf::helios::{cycle_bound, decode_context_switched, decode_distributed};
use helios_uf::noise::format::{from_text, read_binary, to_text, write_binary, SyndromeHeader};
use helios_uf::noise::{readout_syndrome, syndrome_from_pattern, ErrorPattern, NoiseModel, Syndrome};
use helios_uf::serial_uf::decode_serial;

fn odd_d() -> impl Strategy<Value = usize> {
    (1usize..=6).prop_map(|k| 2 * k + 1)
}

fn graph() -> impl Strategy<Value = DecodingGraph> {
    (prop_oneof![Just(3usize), Just(5), Just(7)], 1usize..=6, any::<bool>()).prop_map(|(d, r, circ)| {
        let model = if circ { GraphModel::CircuitLevel } else { GraphModel::Phenomenological };
        DecodingGraph::build(d, r, model).unwrap()
    })
}

fn graph_and_edges() -> impl Strategy<Value = (DecodingGraph, Vec<EdgeId>, Vec<EdgeId>)> {
    graph().prop_flat_map(|g| {
        let m = g.num_edges() as u32;
        let pick = proptest::collection::vec((0..m).prop_map(EdgeId), 0..12);
        (Just(g), pick.clone(), pick)
    })
}

fn graph_and_defects() -> impl Strategy<Value = (DecodingGraph, Vec<VertexId>)> {
    graph().prop_flat_map(|g| {
        let n = g.num_vertices() as u32;
        let pick = proptest::collection::vec((1..=n).prop_map(VertexId), 0..10);
        (Just(g), pick)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn vertex_count_formula(d in odd_d(), rounds in 1usize..30) {
        let g = build_phenomenological(d, rounds).unwrap();
        prop_assert_eq!(g.num_vertices(), (d * d - 1) / 2 * rounds);
        prop_assert_eq!(g.per_round(), (d + 1) * (d - 1) / 2);
    }

    #[test]
    fn degree_bounds_and_symmetric_adjacency(g in graph()) {
        let max = match g.model() {
            GraphModel::Phenomenological => 6,
            GraphModel::CircuitLevel => 12,
        };
        for v in g.vertices() {
            prop_assert!(g.degree(v) <= max);
            for u in g.adjacent(v) {
                prop_assert!(g.adjacent(u).any(|w| w == v));
                prop_assert_eq!(g.edge_between(u, v), g.edge_between(v, u));
            }
        }
    }

    #[test]
    fn weights_fall_as_probability_rises(
        mut probs in proptest::collection::vec(1e-6f64..0.49, 2..40),
        w_max in 2u32..32,
    ) {
        probs.sort_by(|a, b| a.total_cmp(b));
        let w = weights_from_probabilities(&probs, w_max).unwrap();
        for pair in w.windows(2) {
            prop_assert!(pair[0] >= pair[1]);
        }
        prop_assert!(w.iter().all(|&x| (2..=w_max).contains(&x)));
        if probs[0] == *probs.last().unwrap() {
            prop_assert!(w.iter().all(|&x| x == 2));
        } else {
            prop_assert_eq!(w[0], w_max);
            prop_assert_eq!(*w.last().unwrap(), 2);
        }
    }

    #[test]
    fn uniform_probabilities_give_default_weights(p in 1e-6f64..0.49, len in 1usize..20, w_max in 2u32..32) {
        prop_assert!(weights_from_probabilities(&vec![p; len], w_max).unwrap().iter().all(|&x| x == 2));
    }

    #[test]
    fn partition_is_a_bijection_onto_slots(d in prop_oneof![Just(3usize), Just(5)], rounds in 1usize..24, n in 1usize..8) {
        prop_assume!(n <= rounds);
        for model in [GraphModel::Phenomenological, GraphModel::CircuitLevel] {
            let g = DecodingGraph::build(d, rounds, model).unwrap();
            let p = partition(&g, n).unwrap();
            prop_assert_eq!(p.band_sizes().iter().sum::<usize>(), rounds);
            let mut seen = std::collections::HashSet::new();
            for v in g.vertices() {
                let pl = p.placement(v);
                prop_assert!(pl.context < n && pl.physical < p.num_physical());
                prop_assert!(seen.insert((pl.physical, pl.context)));
            }
            prop_assert!(p.check_graph(&g).is_ok());
        }
    }

    #[test]
    fn syndromes_are_linear_in_the_error((g, a, b) in graph_and_edges()) {
        let pa = ErrorPattern::new(a, vec![]);
        let pb = ErrorPattern::new(b, vec![]);
        let sa = syndrome_from_pattern(&g, &pa);
        let sb = syndrome_from_pattern(&g, &pb);
        prop_assert_eq!(syndrome_from_pattern(&g, &pa.xor(&pb)), sa.xor(&sb));
        prop_assert_eq!(readout_syndrome(&g, &pa), sa.clone());
    }

    #[test]
    fn syndrome_files_round_trip((g, a, erased) in graph_and_edges(), seed in any::<u64>()) {
        let mut erased = erased;
        erased.sort();
        erased.dedup();
        let s = syndrome_from_pattern(&g, &ErrorPattern::new(a, vec![])).with_erasures(erased);
        let header = SyndromeHeader::for_graph(&g, seed);
        let mut bytes = Vec::new();
        write_binary(&header, &g, &s, &mut bytes).unwrap();
        let (h2, s2) = read_binary(bytes.as_slice()).unwrap();
        prop_assert_eq!(&h2, &header);
        prop_assert_eq!(&s2, &s);
        let (h3, s3) = from_text(&to_text(&header, &s)).unwrap();
        prop_assert_eq!(h3, header);
        prop_assert_eq!(s3, s);
    }

    #[test]
    fn decoders_terminate_agree_and_annihilate((g, defects) in graph_and_defects()) {
        let s = Syndrome::from_defects(g.num_vertices(), &defects);
        let serial = decode_serial(&g, &s).unwrap();
        prop_assert!(!serial.clusters.has_odd_cluster());
        let dist = decode_distributed(&g, &s).unwrap();
        prop_assert_eq!(&dist.clusters, &serial.clusters);
        prop_assert!(dist.cycles <= cycle_bound(g.d()));
        prop_assert!(check_annihilation(&g, &s, &dist.corrections));
        let corr = correct(&g, &serial.clusters, &s).unwrap();
        prop_assert!(check_annihilation(&g, &s, &corr));
        if g.rounds() >= 2 {
            let ctx = decode_context_switched(&g, &s, 2).unwrap();
            prop_assert_eq!(&ctx.clusters, &serial.clusters);
        }
    }

    #[test]
    fn experiment_config_round_trips(
        d in odd_d(), rounds in 1usize..100, p in 0.0f64..1.0, p_e in 0.0f64..1.0, p_sd in 0.0f64..0.1,
        w_max in 2u32..64, serial in any::<bool>(), n in 1usize..30, sliding in any::<bool>(),
        trials in any::<u64>(), seed in any::<u64>(), clock in 0.1f64..100.0, model in 0usize..3,
    ) {
        let cfg = ExperimentConfig {
            d, rounds, p, p_e, p_sd, w_max, context_n: n, sliding_window: sliding, trials, seed, clock_ns: clock,
            model: [NoiseModel::Phenomenological, NoiseModel::Circuit, NoiseModel::Erasure][model],
            decoder: if serial { DecoderKind::Serial } else { DecoderKind::Distributed },
        };
        prop_assert_eq!(ExperimentConfig::parse(&cfg.emit()).unwrap(), cfg);
    }
}

#[test]
fn circuit_graph_contains_the_phenomenological_one() {
    let p = build_phenomenological(5, 4).unwrap();
    let c = build_circuit_level(5, 4).unwrap();
    for e in p.edges() {
        let found = match e.b {
            Some(b) => c.edge_between(e.a, b).is_some(),
            None => c.incident(e.a).iter().any(|&x| c.edge(x).is_boundary()),
        };
        assert!(found);
    }
}
