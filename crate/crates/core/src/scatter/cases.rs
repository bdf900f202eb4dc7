//! Restriction analysis on leaf structures: which coupling elements and
//! site energies may vary while the gate output of a single leaf structure
//! survives the E -> 0+ limit.
//!
//! Structures (root is the gate node `a`, `d` is its virtual parent):
//!   A: two one-site pendants b, c           -> inputs (0,0), output 1
//!   B: pendant b and two-site pendant c-f   -> inputs (0,1), output 1
//!   C: two-site pendants b-e and c-f        -> inputs (1,1), output 0
//!
//! Cases:
//!   1: all couplings -1 eV, all site energies 0 eV
//!   2: arbitrary negative couplings, site energies 0
//!   3: arbitrary negative couplings, arbitrary site energies
//!   4: arbitrary negative couplings, site energies free only where the
//!      structure tolerates it (A: one of alpha_b/alpha_c; B: all but
//!      alpha_b; C: alpha_b and alpha_c only)

use super::classify::{BitValue, GateBit};
use super::exact::classify_bit_exact_with;
use super::ScatterError;
use crate::graph::{GraphBuilder, TightBindingGraph};
use rand::Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeafStructure {
    A,
    B,
    C,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseId {
    Case1,
    Case2,
    Case3,
    Case4,
}

/// Parameters of one leaf structure. Couplings are negative; sites missing
/// from a structure ignore their entries.
#[derive(Clone, Copy, Debug)]
pub struct LeafParams {
    pub beta_ba: f64,
    pub beta_ca: f64,
    pub beta_eb: f64,
    pub beta_fc: f64,
    pub beta_ad: f64,
    pub alpha_a: f64,
    pub alpha_b: f64,
    pub alpha_c: f64,
    pub alpha_e: f64,
    pub alpha_f: f64,
}

impl LeafParams {
    pub fn ideal() -> LeafParams {
        LeafParams {
            beta_ba: -1.0,
            beta_ca: -1.0,
            beta_eb: -1.0,
            beta_fc: -1.0,
            beta_ad: -1.0,
            alpha_a: 0.0,
            alpha_b: 0.0,
            alpha_c: 0.0,
            alpha_e: 0.0,
            alpha_f: 0.0,
        }
    }

    /// Redraw every coupling uniformly from the negative range used by the
    /// invariance sweeps.
    pub fn with_random_couplings<R: Rng>(mut self, rng: &mut R) -> LeafParams {
        let mut draw = || rng.gen_range(-4.0..-0.1);
        self.beta_ba = draw();
        self.beta_ca = draw();
        self.beta_eb = draw();
        self.beta_fc = draw();
        self.beta_ad = draw();
        self
    }
}

/// Draw parameters according to the restrictions of a case.
pub fn draw_params<R: Rng>(structure: LeafStructure, case: CaseId, rng: &mut R) -> LeafParams {
    let mut p = LeafParams::ideal();
    if case != CaseId::Case1 {
        p = p.with_random_couplings(rng);
    }
    let offset = |rng: &mut R| {
        let mag = rng.gen_range(0.3..1.5);
        if rng.gen_bool(0.5) {
            mag
        } else {
            -mag
        }
    };
    match case {
        CaseId::Case1 | CaseId::Case2 => {}
        CaseId::Case3 => {
            p.alpha_a = offset(rng);
            p.alpha_b = offset(rng);
            p.alpha_c = offset(rng);
            p.alpha_e = offset(rng);
            p.alpha_f = offset(rng);
        }
        CaseId::Case4 => match structure {
            LeafStructure::A => {
                // one of the two pendant energies may move
                if rng.gen_bool(0.5) {
                    p.alpha_b = offset(rng);
                } else {
                    p.alpha_c = offset(rng);
                }
            }
            LeafStructure::B => {
                // alpha_b pinned to zero, everything else free
                p.alpha_a = offset(rng);
                p.alpha_c = offset(rng);
                p.alpha_f = offset(rng);
            }
            LeafStructure::C => {
                // outer pendant sites and the gate stay at zero
                p.alpha_b = offset(rng);
                p.alpha_c = offset(rng);
            }
        },
    }
    p
}

/// Build the leaf structure rooted at the gate node `a`; the virtual parent
/// `d` enters only through the root coupling beta_ad at classification.
pub fn leaf_graph(structure: LeafStructure, p: &LeafParams) -> TightBindingGraph {
    let mut b = GraphBuilder::new();
    let a = b.add_site(p.alpha_a, None);
    let site_b = b.add_site(p.alpha_b, None);
    b.bond(a, site_b, p.beta_ba);
    let site_c = b.add_site(p.alpha_c, None);
    b.bond(a, site_c, p.beta_ca);
    if structure == LeafStructure::C {
        let site_e = b.add_site(p.alpha_e, None);
        b.bond(site_b, site_e, p.beta_eb);
    }
    if structure != LeafStructure::A {
        let site_f = b.add_site(p.alpha_f, None);
        b.bond(site_c, site_f, p.beta_fc);
    }
    b.set_root(a);
    b.finish().expect("leaf structures are valid")
}

/// The gate output each structure produces under its ideal parameters.
pub fn expected_output(structure: LeafStructure) -> BitValue {
    match structure {
        LeafStructure::A | LeafStructure::B => BitValue::One,
        LeafStructure::C => BitValue::Zero,
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CaseOutcome {
    pub structure: LeafStructure,
    pub case: CaseId,
    pub bit: GateBit,
    pub expected: BitValue,
    /// Whether the observed output still equals the ideal gate output.
    pub preserved: bool,
}

/// Classify the gate output of a perturbed leaf structure. Random draws can
/// push the asymptotic regime below any fixed sampling ladder, so this
/// classifies in exact-rational mode.
pub fn case_analysis(
    structure: LeafStructure,
    case: CaseId,
    params: &LeafParams,
) -> Result<CaseOutcome, ScatterError> {
    let g = leaf_graph(structure, params);
    let bit = classify_bit_exact_with(&g, params.beta_ad)?;
    let expected = expected_output(structure);
    Ok(CaseOutcome {
        structure,
        case,
        bit,
        expected,
        preserved: bit.value == expected,
    })
}
