//! Analytic quantum-scattering engine for tree graphs on a 1D lattice.
//!
//! The central quantity is the amplitude ratio between a site and its parent
//! in the rooted tree,
//!
//! ```text
//! R_v = beta_{v,parent} / (E - alpha_v - sum_c beta_{c,v} R_c),
//! ```
//!
//! evaluated bottom-up in projective arithmetic so that poles propagate
//! exactly: a child with R = inf forces its parent ratio to exactly zero.
//! The ratio at the root against chain site r = 0 is y(E); the transmitted
//! amplitude follows as F = A 2i sin(theta) / (2i sin(theta) + y).

mod cases;
mod classify;
mod exact;

pub use cases::{
    case_analysis, draw_params, expected_output, leaf_graph, CaseId, CaseOutcome, LeafParams,
    LeafStructure,
};
pub use classify::{classify_bit, classify_bit_with, BitValue, GateBit, DEFAULT_LADDER};
pub use exact::{
    classify_bit_exact, classify_bit_exact_with, exact_node_ratio, exact_tree_output_y, RationalFn,
};

use crate::graph::{SiteId, TightBindingGraph};
use crate::negf::LeadModel;
use crate::ratio::AmplitudeRatio;
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ScatterError {
    #[error("site {0} is not in the graph")]
    UnknownSite(SiteId),
    #[error("cycle detected at site {0}: the scattering recursion needs a tree")]
    CycleDetected(SiteId),
    #[error("energy {0} eV is outside the lead band")]
    OutOfBand(f64),
    #[error("root-to-chain coupling {gamma} differs from the lead coupling {beta}; use the NEGF engine for that junction")]
    NonUniformRootCoupling { gamma: f64, beta: f64 },
    #[error("opposite-sign infinite child ratios meet at site {0}; evaluate in exact mode")]
    IndeterminatePole(SiteId),
}

/// Incoming momentum theta in (0, pi), tied to the lead dispersion
/// E = alpha + 2 beta cos(theta).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Momentum {
    theta: f64,
}

impl Momentum {
    pub fn from_energy(energy: f64, lead: &LeadModel) -> Result<Momentum, ScatterError> {
        let c = (energy - lead.alpha) / (2.0 * lead.beta);
        if c.is_nan() || c.abs() >= 1.0 {
            return Err(ScatterError::OutOfBand(energy));
        }
        Ok(Momentum { theta: c.acos() })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn energy(&self, lead: &LeadModel) -> f64 {
        lead.alpha + 2.0 * lead.beta * self.theta.cos()
    }
}

/// Scattering state at one energy: incident, reflected and transmitted
/// amplitudes plus the transmission T = |F|^2 / |A|^2.
#[derive(Clone, Copy, Debug)]
pub struct ScatteringSolution {
    pub incident: Complex64,
    pub reflected: Complex64,
    pub transmitted: Complex64,
    pub momentum: Momentum,
    pub transmission: f64,
}

/// Amplitude ratio of site `v` against its parent in the tree rooted at the
/// graph root. For the root itself the parent is chain site r = 0 with the
/// uniform lead coupling.
pub fn node_ratio(
    g: &TightBindingGraph,
    v: SiteId,
    energy: f64,
) -> Result<AmplitudeRatio, ScatterError> {
    node_ratio_with_root_coupling(g, v, energy, LeadModel::uniform().beta)
}

pub fn node_ratio_with_root_coupling(
    g: &TightBindingGraph,
    v: SiteId,
    energy: f64,
    root_coupling: f64,
) -> Result<AmplitudeRatio, ScatterError> {
    let target = g.dense_index(v).ok_or(ScatterError::UnknownSite(v))?;
    let root = g.dense_index(g.root()).expect("root is validated");
    // Orient the tree from the root to find the parent of `v`.
    let (parent_of, beta_parent) = orient(g, root)?;
    if target == root {
        return subtree_ratio(g, target, usize::MAX, root_coupling, energy);
    }
    let parent = parent_of[target];
    subtree_ratio(g, target, parent, beta_parent[target], energy)
}

/// y(E): the ratio <root|E> / <r=0|E> for a tree side-coupled to the chain.
pub fn tree_output_y(
    g: &TightBindingGraph,
    energy: f64,
    root_coupling: f64,
) -> Result<AmplitudeRatio, ScatterError> {
    let root = g.dense_index(g.root()).expect("root is validated");
    orient(g, root)?;
    subtree_ratio(g, root, usize::MAX, root_coupling, energy)
}

/// Scattering solution for a tree on the uniform lead, equation-of-motion route.
/// Requires the root-to-chain coupling to equal the lead coupling; other
/// junctions belong to the NEGF engine.
pub fn transmission_qst(
    g: &TightBindingGraph,
    lead: &LeadModel,
    energy: f64,
) -> Result<ScatteringSolution, ScatterError> {
    if lead.gamma != lead.beta {
        return Err(ScatterError::NonUniformRootCoupling {
            gamma: lead.gamma,
            beta: lead.beta,
        });
    }
    let momentum = Momentum::from_energy(energy, lead)?;
    let y = tree_output_y(g, energy, lead.gamma)?;
    let incident = Complex64::new(1.0, 0.0);
    let two_i_sin = Complex64::new(0.0, 2.0 * momentum.theta().sin());
    let transmitted = if y.is_infinite() {
        Complex64::new(0.0, 0.0)
    } else {
        // F = A 2i sin(theta) den / (2i sin(theta) den + num)
        let den = Complex64::new(y.den(), 0.0);
        let num = Complex64::new(y.num(), 0.0);
        incident * two_i_sin * den / (two_i_sin * den + num)
    };
    let reflected = transmitted - incident;
    let transmission = transmitted.norm_sqr() / incident.norm_sqr();
    Ok(ScatteringSolution {
        incident,
        reflected,
        transmitted,
        momentum,
        transmission,
    })
}

/// BFS orientation from the root; errors on cycles (a visited site reached
/// along a second path).
fn orient(g: &TightBindingGraph, root: usize) -> Result<(Vec<usize>, Vec<f64>), ScatterError> {
    let n = g.len();
    let mut parent_of = vec![usize::MAX; n];
    let mut beta_parent = vec![0.0; n];
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    seen[root] = true;
    queue.push_back(root);
    while let Some(k) = queue.pop_front() {
        for &(nb, beta) in g.neighbours(k) {
            if nb == parent_of[k] {
                continue;
            }
            if seen[nb] {
                return Err(ScatterError::CycleDetected(g.sites()[nb].id));
            }
            seen[nb] = true;
            parent_of[nb] = k;
            beta_parent[nb] = beta;
            queue.push_back(nb);
        }
    }
    Ok((parent_of, beta_parent))
}

/// The projective recursion. `parent` is a dense index or usize::MAX for a
/// virtual parent (chain site r = 0).
fn subtree_ratio(
    g: &TightBindingGraph,
    v: usize,
    parent: usize,
    beta_parent: f64,
    energy: f64,
) -> Result<AmplitudeRatio, ScatterError> {
    // denominator accumulator E - alpha_v - sum_c beta_c R_c as a fraction
    let mut acc_num = energy - g.alpha_at(v);
    let mut acc_den = 1.0;
    for &(child, beta_child) in g.neighbours(v) {
        if child == parent {
            continue;
        }
        let r = subtree_ratio(g, child, v, beta_child, energy)?;
        if acc_den == 0.0 && r.is_infinite() {
            // Two infinite contributions: same sign extends the pole,
            // opposite signs cannot be resolved pointwise.
            let incoming = -beta_child * r.num();
            if incoming.signum() != acc_num.signum() {
                return Err(ScatterError::IndeterminatePole(g.sites()[v].id));
            }
            continue;
        }
        acc_num = acc_num * r.den() - beta_child * r.num() * acc_den;
        acc_den *= r.den();
        let scale = acc_num.abs().max(acc_den.abs());
        if scale > 0.0 {
            acc_num /= scale;
            acc_den /= scale;
        }
    }
    // R_v = beta_parent / acc
    Ok(AmplitudeRatio::new(beta_parent * acc_den, acc_num).normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_nand_tree, Bit, GraphBuilder, Preset};
    use approx::assert_relative_eq;

    fn pendant_graph(n_sites: usize) -> TightBindingGraph {
        // root 'a' plus a pendant path of n_sites below it
        let mut b = GraphBuilder::new();
        let a = b.add_site(0.0, None);
        let mut prev = a;
        for _ in 0..n_sites {
            let s = b.add_site(0.0, None);
            b.bond(prev, s, -1.0);
            prev = s;
        }
        b.set_root(a);
        b.finish().unwrap()
    }

    #[test]
    fn one_site_pendant_ratio_is_minus_one_over_e() {
        let g = pendant_graph(1);
        let pendant = g.sites()[1].id;
        for e in [0.1, 0.5, -0.3, 1.7] {
            let r = node_ratio(&g, pendant, e).unwrap();
            assert_relative_eq!(r.value(), -1.0 / e, max_relative = 1e-13);
        }
    }

    #[test]
    fn two_site_pendant_ratio_is_e_over_one_minus_e2() {
        let g = pendant_graph(2);
        let inner = g.sites()[1].id;
        for e in [0.1, 0.5, -0.3, 1.7] {
            let r = node_ratio(&g, inner, e).unwrap();
            assert_relative_eq!(r.value(), e / (1.0 - e * e), max_relative = 1e-13);
        }
    }

    #[test]
    fn leaf_with_site_energy() {
        // beta_{b,a} / (E - alpha_b)
        let mut b = GraphBuilder::new();
        let a = b.add_site(0.0, None);
        let leaf = b.add_site(0.7, None);
        b.bond(a, leaf, -2.3);
        b.set_root(a);
        let g = b.finish().unwrap();
        let e = 0.25;
        let r = node_ratio(&g, leaf, e).unwrap();
        assert_relative_eq!(r.value(), -2.3 / (e - 0.7), max_relative = 1e-13);
    }

    #[test]
    fn bare_root_y_is_minus_one_over_e() {
        let g = pendant_graph(0);
        let y = tree_output_y(&g, 0.01, -1.0).unwrap();
        assert_relative_eq!(y.value(), -100.0, max_relative = 1e-12);
    }

    #[test]
    fn infinite_child_forces_zero_parent() {
        // pendant ratio at E = alpha_pendant is exactly infinite
        let g = pendant_graph(1);
        let y = tree_output_y(&g, 0.0, -1.0).unwrap();
        assert!(y.is_zero());
        let pendant = g.sites()[1].id;
        assert!(node_ratio(&g, pendant, 0.0).unwrap().is_infinite());
    }

    #[test]
    fn eq6_leaf_output_matches_recursion() {
        // leaf gate with a one-site and a two-site pendant:
        // Y = -1 / (E + Y' + Y'')
        let mut b = GraphBuilder::new();
        let a = b.add_site(0.0, None);
        let p0 = b.add_site(0.0, None);
        b.bond(a, p0, -1.0);
        let inner = b.add_site(0.0, None);
        let outer = b.add_site(0.0, None);
        b.bond(a, inner, -1.0);
        b.bond(inner, outer, -1.0);
        b.set_root(a);
        let g = b.finish().unwrap();
        for e in [0.3, 0.05, -0.4] {
            let y = tree_output_y(&g, e, -1.0).unwrap();
            let y1 = -1.0 / e;
            let y2 = e / (1.0 - e * e);
            assert_relative_eq!(y.value(), -1.0 / (e + y1 + y2), max_relative = 1e-12);
        }
    }

    #[test]
    fn cycle_is_detected() {
        let mut b = GraphBuilder::new();
        let a = b.add_site(0.0, None);
        let c = b.add_site(0.0, None);
        let d = b.add_site(0.0, None);
        b.bond(a, c, -1.0);
        b.bond(c, d, -1.0);
        b.bond(d, a, -1.0);
        b.set_root(a);
        let g = b.finish().unwrap();
        assert!(matches!(
            tree_output_y(&g, 0.1, -1.0),
            Err(ScatterError::CycleDetected(_))
        ));
    }

    #[test]
    fn transmission_at_band_centre_is_4_over_4_plus_y2() {
        // E = 0 means theta = pi/2; with a finite real y, T = 4/(4 + y^2).
        let bits = [Bit::Zero, Bit::One];
        let g = build_nand_tree(1, &bits, Preset::uniform()).unwrap();
        let lead = LeadModel::uniform();
        let e = 1e-4;
        let sol = transmission_qst(&g, &lead, e).unwrap();
        let y = tree_output_y(&g, e, lead.gamma).unwrap().value();
        let theta = sol.momentum.theta();
        let expected = 4.0 * theta.sin().powi(2) / (4.0 * theta.sin().powi(2) + y * y);
        assert_relative_eq!(sol.transmission, expected, max_relative = 1e-10);
    }

    #[test]
    fn infinite_y_blocks_transmission() {
        // bare root: y = -1/E diverges at E = 0 and the particle reflects
        let g = pendant_graph(0);
        let sol = transmission_qst(&g, &LeadModel::uniform(), 0.0).unwrap();
        assert_eq!(sol.transmission, 0.0);
        assert_eq!(sol.transmitted, Complex64::new(0.0, 0.0));
        assert_relative_eq!(sol.reflected.norm(), 1.0, max_relative = 1e-14);
    }

    #[test]
    fn zero_y_is_fully_transparent() {
        // one-site pendant: the pendant pole at E = 0 pins y to exactly zero
        let g = pendant_graph(1);
        let sol = transmission_qst(&g, &LeadModel::uniform(), 0.0).unwrap();
        assert_relative_eq!(sol.transmission, 1.0, max_relative = 1e-12);
        assert_relative_eq!(sol.transmitted.re, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn out_of_band_is_an_error() {
        let g = pendant_graph(1);
        assert!(matches!(
            transmission_qst(&g, &LeadModel::uniform(), 2.5),
            Err(ScatterError::OutOfBand(_))
        ));
    }

    #[test]
    fn non_uniform_root_coupling_is_an_error() {
        let g = pendant_graph(1);
        let lead = LeadModel {
            gamma: -0.5,
            ..LeadModel::uniform()
        };
        assert!(matches!(
            transmission_qst(&g, &lead, 0.1),
            Err(ScatterError::NonUniformRootCoupling { .. })
        ));
    }

    #[test]
    fn flux_is_conserved() {
        let bits: Vec<Bit> = "00011011"
            .chars()
            .map(|c| Bit::from_char(c).unwrap())
            .collect();
        let g = build_nand_tree(3, &bits, Preset::uniform()).unwrap();
        for e in [-1.7, -0.9, -0.2, 0.13, 0.77, 1.5] {
            let s = transmission_qst(&g, &LeadModel::uniform(), e).unwrap();
            let flux = s.reflected.norm_sqr() + s.transmission;
            assert_relative_eq!(flux, s.incident.norm_sqr(), epsilon = 1e-10);
        }
    }
}
