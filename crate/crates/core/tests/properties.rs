//! Property tests for the library invariants: Hamiltonian symmetry,
//! builder determinism, pendant counts, flux conservation, projective
//! soundness, classifier mode consistency, NEGF bounds, reciprocity,
//! eta robustness, document round-trips, parser round-trips, and lowering
//! soundness.

use nandtree::boolc::{self, BoolExpr, Engine};
use nandtree::graph::{build_nand_tree, Bit, NandTreeBuilder, Preset, TightBindingGraph};
use nandtree::negf::{transmission_negf, DeviceRegion, LeadModel};
use nandtree::scatter::{
    classify_bit, classify_bit_exact, node_ratio, transmission_qst, tree_output_y, BitValue,
    Momentum,
};
use proptest::prelude::*;
use std::collections::BTreeMap;

fn bits_strategy(depth: usize) -> impl Strategy<Value = Vec<Bit>> {
    prop::collection::vec(prop::bool::ANY.prop_map(Bit::from), 1 << depth)
}

fn tree_strategy() -> impl Strategy<Value = (usize, Vec<Bit>)> {
    (1usize..=3).prop_flat_map(|depth| bits_strategy(depth).prop_map(move |b| (depth, b)))
}

fn uniform_tree() -> impl Strategy<Value = TightBindingGraph> {
    tree_strategy().prop_map(|(depth, bits)| {
        build_nand_tree(depth, &bits, Preset::uniform()).expect("valid tree")
    })
}

fn in_band_energy() -> impl Strategy<Value = f64> {
    (-0.95f64..0.95).prop_map(|x| x * 2.0)
}

proptest! {
    #[test]
    fn hamiltonian_is_exactly_symmetric(g in uniform_tree()) {
        let h = g.hamiltonian();
        prop_assert_eq!(h.clone(), h.transpose());
    }

    #[test]
    fn builders_are_deterministic((depth, bits) in tree_strategy()) {
        let a = build_nand_tree(depth, &bits, Preset::uniform()).unwrap();
        let b = build_nand_tree(depth, &bits, Preset::uniform()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn pendant_site_count_follows_encoding((depth, bits) in tree_strategy()) {
        let (_, layout) = NandTreeBuilder::new(depth, &bits, Preset::uniform())
            .build()
            .unwrap();
        let zeros = bits.iter().filter(|&&b| b == Bit::Zero).count();
        let ones = bits.len() - zeros;
        prop_assert_eq!(layout.pendant_site_count(), zeros + 2 * ones);
        prop_assert_eq!(layout.gate_nodes().count(), (1 << depth) - 1);
    }

    #[test]
    fn flux_is_conserved_for_all_trees_and_energies(
        g in uniform_tree(),
        e in in_band_energy(),
    ) {
        let s = transmission_qst(&g, &LeadModel::uniform(), e).unwrap();
        let flux = s.reflected.norm_sqr() + s.transmission;
        prop_assert!((flux - s.incident.norm_sqr()).abs() < 1e-10,
            "flux defect {} at E = {}", (flux - 1.0).abs(), e);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&s.transmission));
    }

    #[test]
    fn ratios_stay_projectively_sound(
        g in uniform_tree(),
        e in in_band_energy(),
    ) {
        // no (0, 0), no NaN, for every site of the tree
        for site in g.sites() {
            let r = node_ratio(&g, site.id, e).unwrap();
            prop_assert!(!(r.num() == 0.0 && r.den() == 0.0));
            prop_assert!(!r.num().is_nan() && !r.den().is_nan());
        }
    }

    #[test]
    fn dispersion_holds_to_machine_precision(e in in_band_energy()) {
        let lead = LeadModel::uniform();
        let m = Momentum::from_energy(e, &lead).unwrap();
        prop_assert!((m.energy(&lead) - e).abs() <= 1e-14 * e.abs().max(1.0));
        prop_assert!(m.theta() > 0.0 && m.theta() < std::f64::consts::PI);
    }

    #[test]
    fn trend_classifier_agrees_with_exact_where_defined(
        (depth, bits) in tree_strategy(),
        seed in any::<u64>(),
    ) {
        use rand::{Rng as _, SeedableRng as _};
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let g = build_nand_tree(depth, &bits, Preset::uniform()).unwrap();
        let g = if rng.gen_bool(0.5) {
            g.with_random_couplings(-4.0..-0.1, &mut rng)
        } else {
            g
        };
        let trend = classify_bit(&g).unwrap();
        let exact = classify_bit_exact(&g).unwrap();
        if trend.value != BitValue::Indeterminate {
            prop_assert_eq!(trend.value, exact.value);
        }
    }

    #[test]
    fn negf_respects_bounds_and_reciprocity(
        g in uniform_tree(),
        e in in_band_energy(),
    ) {
        let lead = LeadModel::uniform();
        let device = DeviceRegion::side_coupled(&g, &lead, 2).unwrap();
        let t = transmission_negf(&device, &lead, e).unwrap().transmission;
        prop_assert!((0.0..=1.0 + 1e-8).contains(&t), "T = {t}");
        let swapped = transmission_negf(&device.swapped(), &lead, e)
            .unwrap()
            .transmission;
        prop_assert!((t - swapped).abs() < 1e-12, "T = {t}, swapped = {swapped}");
    }

    #[test]
    fn graph_documents_round_trip((depth, bits) in tree_strategy()) {
        let g = build_nand_tree(depth, &bits, Preset::huckel()).unwrap();
        let back = TightBindingGraph::from_json(&g.to_json()).unwrap();
        prop_assert_eq!(g, back);
    }
}

// eta robustness is deterministic but sweeps a family of trees and energies
#[test]
fn halving_eta_does_not_move_visible_transmission() {
    let bits: Vec<Bit> = "00011011"
        .chars()
        .map(|c| Bit::from_char(c).unwrap())
        .collect();
    let g = build_nand_tree(3, &bits, Preset::uniform()).unwrap();
    for eta_exp in [-8, -10, -12, -14, -16] {
        let eta = 10f64.powi(eta_exp);
        let lead = LeadModel::uniform().with_eta(eta);
        let reference = LeadModel::uniform().with_eta(1e-8);
        let device = DeviceRegion::side_coupled(&g, &lead, 2).unwrap();
        for e in [-1.5, -0.7, 0.21, 0.9, 1.6] {
            let t = transmission_negf(&device, &lead, e).unwrap().transmission;
            let t_ref = transmission_negf(&device, &reference, e)
                .unwrap()
                .transmission;
            if t_ref > 1e-3 {
                assert!(
                    (t - t_ref).abs() < 1e-6,
                    "eta = 1e{eta_exp}, E = {e}: {t} vs {t_ref}"
                );
            }
        }
    }
}

// ---------------------------------------------------------------------------
// parser and lowering properties

fn expr_strategy() -> impl Strategy<Value = BoolExpr> {
    let leaf = prop_oneof![
        (0usize..4).prop_map(|k| BoolExpr::var(["a", "b", "c", "d"][k])),
        prop::bool::ANY.prop_map(|b| BoolExpr::Const(Bit::from(b))),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(BoolExpr::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| BoolExpr::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| BoolExpr::or(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| BoolExpr::nand(a, b)),
        ]
    })
}

fn occurrence_count(e: &BoolExpr) -> usize {
    match e {
        BoolExpr::Var(_) | BoolExpr::Const(_) => 1,
        BoolExpr::Not(x) => occurrence_count(x),
        BoolExpr::And(a, b) | BoolExpr::Or(a, b) | BoolExpr::Nand(a, b) => {
            occurrence_count(a) + occurrence_count(b)
        }
    }
}

proptest! {
    #[test]
    fn pretty_print_parse_round_trip(e in expr_strategy()) {
        let printed = e.to_string();
        let reparsed = boolc::parse(&printed).unwrap();
        prop_assert_eq!(reparsed, e);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lowering_is_sound_for_small_expressions(e in expr_strategy()) {
        prop_assume!(occurrence_count(&e) <= 8);
        let circuit = boolc::lower(&e);
        let table = boolc::truth_table(&circuit, Some(&e), Engine::Qst, &LeadModel::uniform())
            .unwrap();
        prop_assert!(table.matches_oracle, "table mismatch for {}", e);
    }
}

#[test]
fn double_negation_is_the_identity_table() {
    let lead = LeadModel::uniform();
    for text in ["a", "!!a", "!!!!a"] {
        let e = boolc::parse(text).unwrap();
        let c = boolc::lower(&e);
        let table = boolc::truth_table(&c, Some(&e), Engine::Qst, &lead).unwrap();
        assert!(table.matches_oracle, "{text}");
        let outputs: Vec<BitValue> = table.rows.iter().map(|r| r.output).collect();
        assert_eq!(outputs, [BitValue::Zero, BitValue::One], "{text}");
    }
}

#[test]
fn instantiated_assignments_classify_like_the_ast() {
    // a fixed nontrivial formula checked over all assignments by hand-rolled
    // enumeration rather than the table helper
    let e = boolc::parse("(a NAND b) & (!a | b)").unwrap();
    let c = boolc::lower(&e);
    for pattern in 0..4u32 {
        let assignment: BTreeMap<String, Bit> = [
            ("a".to_string(), Bit::from(pattern & 2 != 0)),
            ("b".to_string(), Bit::from(pattern & 1 != 0)),
        ]
        .into_iter()
        .collect();
        let g = c.instantiate(&assignment).unwrap();
        let got = classify_bit(&g).unwrap().value;
        let want = e.eval(&|name| assignment[name]);
        assert_eq!(got, BitValue::from_bit(want), "pattern {pattern:02b}");
    }
}

#[test]
fn y_at_root_matches_both_pendant_forms() {
    // the tree with one of each pendant reproduces -1/(E + Y' + Y'')
    let g = build_nand_tree(1, &[Bit::Zero, Bit::One], Preset::uniform()).unwrap();
    for e in [0.4, -0.2, 0.05] {
        let y = tree_output_y(&g, e, -1.0).unwrap().value();
        let y1 = -1.0 / e;
        let y2 = e / (1.0 - e * e);
        let want = -1.0 / (e + y1 + y2);
        assert!((y - want).abs() <= 1e-12 * want.abs().max(1.0), "E = {e}");
    }
}
