//! Reference checks: the fixed list of criteria that the `verify` command
//! and the acceptance test target both run. Each criterion pins its
//! tolerances here; the classical evaluators in [`crate::oracle`] provide
//! the independent reference wherever one is called for.

use crate::boolc::{lower, parse, truth_table, Engine};
use crate::graph::{
    anchored_nand1_molecule, build_nand_tree, nand3_attach_beta, nand3_molecule, Bit, GraphBuilder,
    Nand3Variant, Preset, TightBindingGraph,
};
use crate::negf::{
    transmission_negf, transmission_sweep, DeviceRegion, Junction, LeadModel, SweepSpec,
    SweepVariable,
};
use crate::oracle::nand_tree_value;
use crate::scatter::{
    case_analysis, classify_bit, classify_bit_exact, exact_node_ratio, node_ratio,
    transmission_qst, tree_output_y, BitValue, CaseId, LeafParams, LeafStructure,
};
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::fmt::Write as _;
use std::time::Instant;

/// Outcome of one criterion.
#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
}

impl CriterionResult {
    fn new(id: &'static str, name: &'static str, passed: bool, details: String) -> Self {
        CriterionResult {
            id,
            name,
            passed,
            details,
        }
    }
}

/// The criteria in order, as (id, short description).
pub fn list() -> Vec<(&'static str, &'static str)> {
    vec![
        ("1", "closed-form pendant ratios, float and exact-rational"),
        (
            "2",
            "truth-table equivalence with the classical fold, depths 1-3",
        ),
        (
            "3",
            "coupling invariance under random negative couplings, depth 2",
        ),
        (
            "4",
            "site-energy preservation rules for leaf structures A/B/C",
        ),
        ("5", "scattering vs NEGF transmission on random trees"),
        (
            "6",
            "depth-3 junction transmissions at the reference endpoints",
        ),
        ("7", "anchored-molecule transmissions at the band centre"),
        ("8", "flux conservation and transmission bounds"),
        (
            "9",
            "lowered NOT/AND/OR truth tables match the classical tables",
        ),
    ]
}

/// Run every criterion.
pub fn run_all() -> Vec<CriterionResult> {
    vec![
        closed_form_ratios(),
        tree_oracle_equivalence(),
        coupling_invariance(),
        site_energy_rules(),
        engine_equivalence(),
        junction_endpoints(),
        anchored_transmissions(),
        flux_and_bounds(),
        lowered_gate_tables(),
    ]
}

fn pendant_graph(sites: usize) -> TightBindingGraph {
    let mut b = GraphBuilder::new();
    let root = b.add_site(0.0, None);
    let mut prev = root;
    for _ in 0..sites {
        let s = b.add_site(0.0, None);
        b.bond(prev, s, -1.0);
        prev = s;
    }
    b.set_root(root);
    b.finish().expect("pendant graphs are valid")
}

fn big(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Criterion 1: one-site pendants give -1/E, two-site pendants E/(1-E^2),
/// within 1e-12 in floating point and exactly in rational mode.
pub fn closed_form_ratios() -> CriterionResult {
    let mut passed = true;
    let mut details = String::new();

    let g1 = pendant_graph(1);
    let g2 = pendant_graph(2);
    let pendant1 = g1.sites()[1].id;
    let inner2 = g2.sites()[1].id;

    for &e in &[0.1f64, 0.5, -0.3] {
        let y1 = node_ratio(&g1, pendant1, e).expect("tree").value();
        let y2 = node_ratio(&g2, inner2, e).expect("tree").value();
        let want1 = -1.0 / e;
        let want2 = e / (1.0 - e * e);
        let ok1 = (y1 - want1).abs() <= 1e-12 * want1.abs();
        let ok2 = (y2 - want2).abs() <= 1e-12 * want2.abs();
        passed &= ok1 && ok2;
        let _ = writeln!(
            details,
            "  E={e:+}: Y'={y1:.15} (want {want1:.15}), Y''={y2:.15} (want {want2:.15})"
        );
    }

    let r1 = exact_node_ratio(&g1, pendant1).expect("tree");
    let r2 = exact_node_ratio(&g2, inner2).expect("tree");
    let exact_cases = [
        (big(1, 10), big(-10, 1), big(10, 99)),
        (big(1, 2), big(-2, 1), big(2, 3)),
        (big(-3, 10), big(10, 3), big(-30, 91)),
    ];
    for (e, want1, want2) in exact_cases {
        let v1 = r1.eval(&e).expect("not a pole");
        let v2 = r2.eval(&e).expect("not a pole");
        let ok = v1 == want1 && v2 == want2;
        passed &= ok;
        let _ = writeln!(details, "  exact E={e}: Y'={v1}, Y''={v2} -> {ok}");
    }

    CriterionResult::new("1", "closed-form pendant ratios", passed, details)
}

/// Criterion 2: for depths 1-3 and every input vector, the scattering
/// classifier agrees with the classical NAND fold; total runtime < 10 s.
pub fn tree_oracle_equivalence() -> CriterionResult {
    let start = Instant::now();
    let mut passed = true;
    let mut checked = 0usize;
    let mut details = String::new();
    for depth in 1..=3usize {
        let leaves = 1usize << depth;
        for pattern in 0..(1u32 << leaves) {
            let bits: Vec<Bit> = (0..leaves)
                .map(|k| Bit::from(pattern >> (leaves - 1 - k) & 1 == 1))
                .collect();
            let g = build_nand_tree(depth, &bits, Preset::uniform()).expect("valid tree");
            let got = classify_bit(&g).expect("tree").value;
            let want = BitValue::from_bit(nand_tree_value(&bits));
            if got != want {
                passed = false;
                let _ = writeln!(
                    details,
                    "  depth {depth} pattern {pattern:b}: {got} != {want}"
                );
            }
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    let in_budget = elapsed.as_secs_f64() < 10.0;
    passed &= in_budget;
    let _ = writeln!(
        details,
        "  {checked} input vectors in {:.2} s (budget 10 s)",
        elapsed.as_secs_f64()
    );
    CriterionResult::new("2", "truth-table equivalence", passed, details)
}

/// Criterion 3: 100 random negative-coupling draws per depth-2 input vector
/// leave every truth-table entry unchanged (exact-rational classifier).
pub fn coupling_invariance() -> CriterionResult {
    let mut rng = StdRng::seed_from_u64(0x5eedc3);
    let mut passed = true;
    let mut details = String::new();
    let mut checked = 0usize;
    for pattern in 0..16u32 {
        let bits: Vec<Bit> = (0..4)
            .map(|k| Bit::from(pattern >> (3 - k) & 1 == 1))
            .collect();
        let base = build_nand_tree(2, &bits, Preset::uniform()).expect("valid tree");
        let want = BitValue::from_bit(nand_tree_value(&bits));
        for draw in 0..100 {
            let g = base.with_random_couplings(-4.0..-0.1, &mut rng);
            let got = classify_bit_exact(&g).expect("tree").value;
            if got != want {
                passed = false;
                let _ = writeln!(
                    details,
                    "  pattern {pattern:04b} draw {draw}: {got} != {want}"
                );
            }
            checked += 1;
        }
    }
    let _ = writeln!(
        details,
        "  {checked} redrawn trees, truth table unchanged: {passed}"
    );
    CriterionResult::new("3", "coupling invariance", passed, details)
}

/// Criterion 4: the site-energy rules per leaf structure, each checked
/// positively and negatively with a 0.5 eV perturbation.
pub fn site_energy_rules() -> CriterionResult {
    let mut passed = true;
    let mut details = String::new();
    let mut check = |label: &str,
                     structure: LeafStructure,
                     case: CaseId,
                     p: LeafParams,
                     want_preserved: bool| {
        let out = case_analysis(structure, case, &p).expect("leaf structures are trees");
        let ok = out.preserved == want_preserved;
        passed &= ok;
        let _ = writeln!(
            details,
            "  {label}: output {} (expected bit {}), preserved={} want={} -> {}",
            out.bit.value, out.expected, out.preserved, want_preserved, ok
        );
    };

    // structure A: exactly one pendant energy may move
    let mut p = LeafParams::ideal();
    p.alpha_b = 0.5;
    check("A, alpha_b=0.5", LeafStructure::A, CaseId::Case4, p, true);
    let mut p = LeafParams::ideal();
    p.alpha_c = 0.5;
    check("A, alpha_c=0.5", LeafStructure::A, CaseId::Case4, p, true);
    let mut p = LeafParams::ideal();
    p.alpha_b = 0.5;
    p.alpha_c = 0.5;
    check("A, both moved", LeafStructure::A, CaseId::Case3, p, false);

    // structure B: alpha_b pinned to zero, everything else free
    let mut p = LeafParams::ideal();
    p.alpha_a = 0.5;
    p.alpha_c = 0.5;
    p.alpha_f = 0.5;
    check("B, others moved", LeafStructure::B, CaseId::Case4, p, true);
    let mut p = LeafParams::ideal();
    p.alpha_b = 0.5;
    check("B, alpha_b=0.5", LeafStructure::B, CaseId::Case3, p, false);

    // structure C: alpha_e, alpha_f, alpha_a pinned to zero
    let mut p = LeafParams::ideal();
    p.alpha_b = 0.5;
    p.alpha_c = 0.5;
    check("C, inner moved", LeafStructure::C, CaseId::Case4, p, true);
    for (label, which) in [
        ("C, alpha_e=0.5", 0),
        ("C, alpha_f=0.5", 1),
        ("C, alpha_a=0.5", 2),
    ] {
        let mut p = LeafParams::ideal();
        match which {
            0 => p.alpha_e = 0.5,
            1 => p.alpha_f = 0.5,
            _ => p.alpha_a = 0.5,
        }
        check(label, LeafStructure::C, CaseId::Case3, p, false);
    }

    CriterionResult::new("4", "site-energy rules", passed, details)
}

/// Criterion 5: the analytic and NEGF engines agree to 1e-6 on random
/// uniform trees over 50 in-band energies away from poles of y.
pub fn engine_equivalence() -> CriterionResult {
    let mut rng = StdRng::seed_from_u64(0x5eedc5);
    let lead = LeadModel::uniform(); // gamma = beta, eta = 1e-10
    let mut worst: f64 = 0.0;
    let mut passed = true;
    let mut details = String::new();
    for tree_index in 0..20 {
        let depth = rng.gen_range(1..=3usize);
        let bits: Vec<Bit> = (0..1 << depth)
            .map(|_| Bit::from(rng.gen_bool(0.5)))
            .collect();
        let g = build_nand_tree(depth, &bits, Preset::uniform()).expect("valid tree");
        let device = DeviceRegion::side_coupled(&g, &lead, 2).expect("device");
        let mut accepted = 0;
        while accepted < 50 {
            let e: f64 = rng.gen_range(-1.9..1.9);
            let y = tree_output_y(&g, e, lead.gamma).expect("tree");
            if !y.is_infinite() && y.abs() > 50.0 {
                continue; // too close to a pole of y
            }
            let t_qst = transmission_qst(&g, &lead, e)
                .expect("in band")
                .transmission;
            let t_negf = transmission_negf(&device, &lead, e)
                .expect("regular")
                .transmission;
            worst = worst.max((t_qst - t_negf).abs());
            accepted += 1;
        }
        if worst >= 1e-6 {
            passed = false;
            let _ = writeln!(details, "  tree {tree_index}: max |dT| = {worst:.3e}");
        }
    }
    let _ = writeln!(
        details,
        "  20 trees x 50 energies, max |T_qst - T_negf| = {worst:.3e} (tolerance 1e-6)"
    );
    CriterionResult::new("5", "engine equivalence", passed, details)
}

fn nand3_transmission(variant: Nand3Variant, alpha_n: f64) -> f64 {
    let lead = LeadModel::uniform();
    let g = nand3_molecule(variant);
    let g = if g.sites().iter().any(|s| s.label.as_deref() == Some("N")) {
        g.with_alpha_for_label("N", alpha_n).expect("has N sites")
    } else {
        g
    };
    let device =
        DeviceRegion::side_coupled_with_attach(&g, &lead, 2, nand3_attach_beta()).expect("device");
    transmission_negf(&device, &lead, 0.0)
        .expect("regular")
        .transmission
}

/// Criterion 6: depth-3 junction endpoint transmissions. The reference
/// mid-window value 0.04 carries a factor-2 tolerance because the bond
/// alternation of the underlying structure is only fixed up to a variant.
pub fn junction_endpoints() -> CriterionResult {
    let mut passed = true;
    let mut details = String::new();
    let factor2 = |t: f64| (0.02..=0.08).contains(&t);

    let t = nand3_transmission(Nand3Variant::OutputOne, 0.0);
    let ok = (t - 1.0).abs() <= 1e-6;
    passed &= ok;
    let _ = writeln!(
        details,
        "  output-one, alpha_N=0:  T(0) = {t:.6e}, want 1 +- 1e-6 -> {ok}"
    );

    let t = nand3_transmission(Nand3Variant::OutputOne, -3.0);
    let ok = factor2(t);
    passed &= ok;
    let _ = writeln!(
        details,
        "  output-one, alpha_N=-3: T(0) = {t:.3e}, want 0.04 x/2 -> {ok}"
    );

    let t = nand3_transmission(Nand3Variant::OutputZero, 0.0);
    let ok = t < 1e-12;
    passed &= ok;
    let _ = writeln!(
        details,
        "  output-zero, alpha_N=0: T(0) = {t:.3e}, want < 1e-12 -> {ok}"
    );

    let t = nand3_transmission(Nand3Variant::OutputZero, -3.0);
    let ok = factor2(t);
    passed &= ok;
    let _ = writeln!(
        details,
        "  output-zero, alpha_N=-3: T(0) = {t:.3e}, want 0.04 x/2 -> {ok}"
    );

    let t = nand3_transmission(Nand3Variant::AllCarbon, 0.0);
    let ok = t < 1e-12;
    passed &= ok;
    let _ = writeln!(
        details,
        "  all-carbon:             T(0) = {t:.3e}, want < 1e-12 -> {ok}"
    );

    CriterionResult::new("6", "depth-3 junction endpoints", passed, details)
}

/// Criterion 7: anchored first-generation molecules at the band centre.
/// References: 4.1e-3 for (0,0) and 1.0e-3 for (0,1) within a factor of 2;
/// the all-carbon (1,1) dip sits below 1e-12 (its nominal reference value
/// 9.8e-28 is beneath the eta-squared floor of the default broadening).
pub fn anchored_transmissions() -> CriterionResult {
    let lead = LeadModel::uniform();
    let mut passed = true;
    let mut details = String::new();
    let cases = [
        ((Bit::Zero, Bit::Zero), Some(4.1e-3)),
        ((Bit::Zero, Bit::One), Some(1.0e-3)),
        ((Bit::One, Bit::One), None),
    ];
    for (bits, reference) in cases {
        let m = anchored_nand1_molecule(bits);
        let device = DeviceRegion::two_terminal(&m.graph, m.left, m.right).expect("device");
        let t = transmission_negf(&device, &lead, 0.0)
            .expect("regular")
            .transmission;
        let ok = match reference {
            Some(r) => t >= r / 2.0 && t <= r * 2.0,
            None => t < 1e-12,
        };
        passed &= ok;
        let want = reference
            .map(|r| format!("{r:.1e} x/2"))
            .unwrap_or_else(|| "< 1e-12".to_string());
        let _ = writeln!(
            details,
            "  inputs ({},{}): T(0) = {t:.3e}, want {want} -> {ok}",
            bits.0, bits.1
        );
    }
    CriterionResult::new("7", "anchored-molecule transmissions", passed, details)
}

/// Criterion 8: flux conservation for the scattering engine (1e-10) and the
/// transmission bound 0 <= T <= 1 + 1e-8 for the NEGF engine across the
/// sweeps used elsewhere in this suite.
pub fn flux_and_bounds() -> CriterionResult {
    let mut rng = StdRng::seed_from_u64(0x5eedc8);
    let lead = LeadModel::uniform();
    let mut passed = true;
    let mut details = String::new();

    let mut worst_flux: f64 = 0.0;
    for _ in 0..20 {
        let depth = rng.gen_range(1..=3usize);
        let bits: Vec<Bit> = (0..1 << depth)
            .map(|_| Bit::from(rng.gen_bool(0.5)))
            .collect();
        let g = build_nand_tree(depth, &bits, Preset::uniform()).expect("valid tree");
        for _ in 0..30 {
            let e: f64 = rng.gen_range(-1.99..1.99);
            let s = transmission_qst(&g, &lead, e).expect("in band");
            let flux = s.reflected.norm_sqr() + s.transmission;
            worst_flux = worst_flux.max((flux - s.incident.norm_sqr()).abs());
        }
    }
    let flux_ok = worst_flux <= 1e-10;
    passed &= flux_ok;
    let _ = writeln!(
        details,
        "  flux defect max |(|B|^2 + T) - |A|^2| = {worst_flux:.3e} (tolerance 1e-10) -> {flux_ok}"
    );

    let mut t_min = f64::INFINITY;
    let mut t_max: f64 = 0.0;
    let mut record = |t: f64| {
        t_min = t_min.min(t);
        t_max = t_max.max(t);
    };
    // alpha_N sweeps of the depth-3 trees
    let alpha_grid: Vec<f64> = (0..61).map(|k| -3.0 * k as f64 / 60.0).collect();
    for variant in [Nand3Variant::OutputOne, Nand3Variant::OutputZero] {
        let g = nand3_molecule(variant);
        let spec = SweepSpec {
            variable: SweepVariable::SiteAlphaByLabel("N".to_string()),
            values: alpha_grid.clone(),
            fixed_energy: Some(0.0),
        };
        let junction = Junction::SideCoupled {
            chain_pad: 2,
            attach_beta: nand3_attach_beta(),
        };
        for p in transmission_sweep(&g, &lead, &junction, &spec).expect("sweep") {
            record(p.transmission);
        }
    }
    // energy sweeps of the all-carbon tree and the anchored molecules
    let energy_grid: Vec<f64> = (0..201).map(|k| -2.0 + 4.0 * k as f64 / 200.0).collect();
    let g = nand3_molecule(Nand3Variant::AllCarbon);
    let junction = Junction::SideCoupled {
        chain_pad: 2,
        attach_beta: nand3_attach_beta(),
    };
    let spec = SweepSpec {
        variable: SweepVariable::Energy,
        values: energy_grid.clone(),
        fixed_energy: None,
    };
    for p in transmission_sweep(&g, &lead, &junction, &spec).expect("sweep") {
        record(p.transmission);
    }
    for bits in [
        (Bit::Zero, Bit::Zero),
        (Bit::Zero, Bit::One),
        (Bit::One, Bit::One),
    ] {
        let m = anchored_nand1_molecule(bits);
        let junction = Junction::TwoTerminal {
            left: m.left,
            right: m.right,
        };
        let spec = SweepSpec {
            variable: SweepVariable::Energy,
            values: energy_grid.clone(),
            fixed_energy: None,
        };
        for p in transmission_sweep(&m.graph, &lead, &junction, &spec).expect("sweep") {
            record(p.transmission);
        }
    }
    let bound_ok = t_min >= 0.0 && t_max <= 1.0 + 1e-8;
    passed &= bound_ok;
    let _ = writeln!(
        details,
        "  NEGF sweeps: T in [{t_min:.3e}, {t_max:.3e}] (bound [0, 1 + 1e-8]) -> {bound_ok}"
    );

    CriterionResult::new("8", "flux conservation and bounds", passed, details)
}

/// Criterion 9: lowered NOT/AND/OR (and NAND) truth tables match the
/// classical tables for every assignment under the uniform preset.
pub fn lowered_gate_tables() -> CriterionResult {
    let lead = LeadModel::uniform();
    let mut passed = true;
    let mut details = String::new();
    for text in ["!a", "a & b", "a | b", "a NAND b"] {
        let expr = parse(text).expect("fixed expressions parse");
        let circuit = lower(&expr);
        let table = truth_table(&circuit, Some(&expr), Engine::Qst, &lead).expect("small tables");
        passed &= table.matches_oracle;
        let _ = writeln!(
            details,
            "  {text:10} -> {} rows, matches classical table: {}",
            table.rows.len(),
            table.matches_oracle
        );
    }
    CriterionResult::new("9", "lowered gate truth tables", passed, details)
}
