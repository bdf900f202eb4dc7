//! Numerical transport engine: semi-infinite 1D-lattice lead self-energies,
//! retarded Green's function of the extended device, and Landauer
//! transmission T(E) = Tr{Gamma_L G_ret Gamma_R G_adv}.
//!
//! The leads here are single-channel, so the trace collapses to
//! Gamma_L Gamma_R |G_ret(l, r)|^2 and only one column of G_ret is needed.

use crate::graph::{SiteId, TightBindingGraph};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum NegfError {
    #[error("lead coupling beta must be nonzero")]
    ZeroLeadCoupling,
    #[error("broadening eta must be positive, got {0}")]
    BadEta(f64),
    #[error("contact indices {0} and {1} must be distinct and inside the device")]
    BadContacts(usize, usize),
    #[error("device Hamiltonian must be square and symmetric")]
    AsymmetricHamiltonian,
    #[error("side-coupled devices need at least one chain site per side")]
    EmptyChainPad,
    #[error("site {0} is not in the graph")]
    UnknownSite(SiteId),
    #[error("singular system matrix at E = {0} eV even with broadening")]
    Singular(f64),
    #[error("sweep needs a non-empty value grid")]
    EmptyGrid,
    #[error("parameter sweeps need a fixed energy")]
    MissingEnergy,
    #[error("unknown sweep parameter: {0}")]
    UnknownParameter(String),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
}

/// Semi-infinite 1D-lattice lead: on-site energy `alpha`, internal coupling
/// `beta`, device coupling `gamma`, positive broadening `eta` (all eV).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeadModel {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub eta: f64,
}

impl LeadModel {
    /// The default lattice: alpha = 0, beta = gamma = -1 eV, eta = 1e-10 eV.
    pub fn uniform() -> LeadModel {
        LeadModel {
            alpha: 0.0,
            beta: -1.0,
            gamma: -1.0,
            eta: 1e-10,
        }
    }

    pub fn with_gamma(mut self, gamma: f64) -> LeadModel {
        self.gamma = gamma;
        self
    }

    pub fn with_eta(mut self, eta: f64) -> LeadModel {
        self.eta = eta;
        self
    }

    pub fn validate(&self) -> Result<(), NegfError> {
        if self.beta == 0.0 || !self.beta.is_finite() {
            return Err(NegfError::ZeroLeadCoupling);
        }
        if self.eta.is_nan() || self.eta <= 0.0 {
            return Err(NegfError::BadEta(self.eta));
        }
        Ok(())
    }
}

/// Retarded surface Green's function of a semi-infinite chain,
/// g(E) = (z - alpha - sqrt((z - alpha)^2 - 4 beta^2)) / (2 beta^2) with
/// z = E + i eta and the branch chosen so Im g <= 0.
pub fn surface_green(energy: f64, alpha: f64, beta: f64, eta: f64) -> Complex64 {
    let u = Complex64::new(energy - alpha, eta);
    let mut w = (u * u - 4.0 * beta * beta).sqrt();
    // pick the root aligned with u so that g ~ 1/z far from the band
    if u.re * w.re + u.im * w.im < 0.0 {
        w = -w;
    }
    (u - w) / (2.0 * beta * beta)
}

/// Retarded lead self-energy Sigma(E) = gamma^2 g(E).
pub fn self_energy(lead: &LeadModel, energy: f64) -> Complex64 {
    lead.gamma * lead.gamma * surface_green(energy, lead.alpha, lead.beta, lead.eta)
}

/// Broadening Gamma(E) = i (Sigma - Sigma^*) = -2 gamma^2 Im g >= 0.
pub fn broadening(lead: &LeadModel, energy: f64) -> f64 {
    -2.0 * self_energy(lead, energy).im
}

/// One evaluated transmission value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransmissionPoint {
    pub energy: f64,
    pub transmission: f64,
}

/// The finite region whose Green's function is computed explicitly: a real
/// symmetric Hamiltonian plus the two sites the leads contact.
#[derive(Clone, Debug)]
pub struct DeviceRegion {
    hamiltonian: DMatrix<f64>,
    left_contact: usize,
    right_contact: usize,
}

impl DeviceRegion {
    pub fn new(
        hamiltonian: DMatrix<f64>,
        left_contact: usize,
        right_contact: usize,
    ) -> Result<DeviceRegion, NegfError> {
        let n = hamiltonian.nrows();
        if hamiltonian.ncols() != n || hamiltonian != hamiltonian.transpose() {
            return Err(NegfError::AsymmetricHamiltonian);
        }
        if left_contact == right_contact || left_contact >= n || right_contact >= n {
            return Err(NegfError::BadContacts(left_contact, right_contact));
        }
        Ok(DeviceRegion {
            hamiltonian,
            left_contact,
            right_contact,
        })
    }

    /// Side-coupled junction: the graph root couples to the centre of an
    /// explicit chain segment with `chain_pad` lattice sites on each side;
    /// the leads contact the outer pad sites. The root-to-chain coupling
    /// defaults to the lead coupling.
    pub fn side_coupled(
        graph: &TightBindingGraph,
        lead: &LeadModel,
        chain_pad: usize,
    ) -> Result<DeviceRegion, NegfError> {
        Self::side_coupled_with_attach(graph, lead, chain_pad, lead.beta)
    }

    pub fn side_coupled_with_attach(
        graph: &TightBindingGraph,
        lead: &LeadModel,
        chain_pad: usize,
        attach_beta: f64,
    ) -> Result<DeviceRegion, NegfError> {
        lead.validate()?;
        if chain_pad == 0 {
            return Err(NegfError::EmptyChainPad);
        }
        let nt = graph.len();
        let nc = 2 * chain_pad + 1;
        let n = nt + nc;
        let mut h = DMatrix::zeros(n, n);
        h.view_mut((0, 0), (nt, nt)).copy_from(&graph.hamiltonian());
        // chain sites nt..nt+nc, left to right; centre index nt + chain_pad
        for k in 0..nc {
            h[(nt + k, nt + k)] = lead.alpha;
            if k + 1 < nc {
                h[(nt + k, nt + k + 1)] = lead.beta;
                h[(nt + k + 1, nt + k)] = lead.beta;
            }
        }
        let root = graph.dense_index(graph.root()).expect("root is validated");
        let centre = nt + chain_pad;
        h[(root, centre)] = attach_beta;
        h[(centre, root)] = attach_beta;
        DeviceRegion::new(h, nt, nt + nc - 1)
    }

    /// Two-terminal junction: the leads contact two named sites of the
    /// graph itself (e.g. anchor atoms), nothing is added.
    pub fn two_terminal(
        graph: &TightBindingGraph,
        left: SiteId,
        right: SiteId,
    ) -> Result<DeviceRegion, NegfError> {
        let l = graph
            .dense_index(left)
            .ok_or(NegfError::UnknownSite(left))?;
        let r = graph
            .dense_index(right)
            .ok_or(NegfError::UnknownSite(right))?;
        DeviceRegion::new(graph.hamiltonian(), l, r)
    }

    pub fn hamiltonian(&self) -> &DMatrix<f64> {
        &self.hamiltonian
    }

    pub fn contacts(&self) -> (usize, usize) {
        (self.left_contact, self.right_contact)
    }

    pub fn len(&self) -> usize {
        self.hamiltonian.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.hamiltonian.nrows() == 0
    }

    /// Same device with the contacts exchanged.
    pub fn swapped(&self) -> DeviceRegion {
        DeviceRegion {
            hamiltonian: self.hamiltonian.clone(),
            left_contact: self.right_contact,
            right_contact: self.left_contact,
        }
    }
}

/// Landauer transmission of the device between two identical leads.
pub fn transmission_negf(
    device: &DeviceRegion,
    lead: &LeadModel,
    energy: f64,
) -> Result<TransmissionPoint, NegfError> {
    lead.validate()?;
    let n = device.hamiltonian.nrows();
    let z = Complex64::new(energy, lead.eta);
    let sigma = self_energy(lead, energy);
    let mut a = DMatrix::<Complex64>::from_fn(n, n, |i, j| {
        Complex64::new(-device.hamiltonian[(i, j)], 0.0)
    });
    for i in 0..n {
        a[(i, i)] += z;
    }
    a[(device.left_contact, device.left_contact)] -= sigma;
    a[(device.right_contact, device.right_contact)] -= sigma;

    // column r of G_ret from one dense LU factorization
    let mut rhs = DVector::zeros(n);
    rhs[device.right_contact] = Complex64::new(1.0, 0.0);
    let column = a.lu().solve(&rhs).ok_or(NegfError::Singular(energy))?;
    let g_lr = column[device.left_contact];
    let gamma = broadening(lead, energy);
    Ok(TransmissionPoint {
        energy,
        transmission: gamma * gamma * g_lr.norm_sqr(),
    })
}

/// Read a gate bit off the NEGF transmission near the band centre: T -> 1
/// is bit 1, T falling off quadratically is bit 0, anything else is
/// indeterminate. Returns the bit and T at the band centre itself.
pub fn classify_bit_negf(
    graph: &TightBindingGraph,
    lead: &LeadModel,
    chain_pad: usize,
) -> Result<(crate::scatter::BitValue, f64), NegfError> {
    use crate::scatter::BitValue;
    const LADDER: [f64; 3] = [1e-3, 1e-4, 1e-5];
    let device = DeviceRegion::side_coupled(graph, lead, chain_pad)?;
    let t0 = transmission_negf(&device, lead, 0.0)?.transmission;
    let mut towards_one = true;
    let mut quadratic_lo = f64::INFINITY;
    let mut quadratic_hi = 0.0f64;
    for &eps in &LADDER {
        let t = transmission_negf(&device, lead, eps)?.transmission;
        towards_one &= 1.0 - t < 1e-3;
        let compensated = t / (eps * eps);
        quadratic_lo = quadratic_lo.min(compensated);
        quadratic_hi = quadratic_hi.max(compensated);
    }
    let towards_zero = quadratic_hi <= 2.0 * quadratic_lo && quadratic_hi.is_finite();
    let value = match (towards_one, towards_zero) {
        (true, false) => BitValue::One,
        (false, true) => BitValue::Zero,
        _ => BitValue::Indeterminate,
    };
    Ok((value, t0))
}

/// What a sweep varies.
#[derive(Clone, Debug, PartialEq)]
pub enum SweepVariable {
    Energy,
    /// On-site energy of every site with this label (e.g. "N").
    SiteAlphaByLabel(String),
    /// Coupling of every bond between these two labels (e.g. "N", "C").
    BondBetaByLabels(String, String),
    SiteAlpha(SiteId),
    BondBeta(SiteId, SiteId),
}

impl SweepVariable {
    /// Parse the CLI spelling: `energy`, `alpha_N`, `beta_NC`,
    /// `site:<id>`, `bond:<i>-<j>`.
    pub fn parse(text: &str) -> Result<SweepVariable, NegfError> {
        if text == "energy" {
            return Ok(SweepVariable::Energy);
        }
        if let Some(label) = text.strip_prefix("alpha_") {
            if !label.is_empty() {
                return Ok(SweepVariable::SiteAlphaByLabel(label.to_string()));
            }
        }
        if let Some(labels) = text.strip_prefix("beta_") {
            let mut chars = labels.chars();
            if let (Some(a), Some(b), None) = (chars.next(), chars.next(), chars.next()) {
                return Ok(SweepVariable::BondBetaByLabels(
                    a.to_string(),
                    b.to_string(),
                ));
            }
        }
        if let Some(id) = text.strip_prefix("site:") {
            if let Ok(k) = id.parse::<usize>() {
                return Ok(SweepVariable::SiteAlpha(SiteId(k)));
            }
        }
        if let Some(pair) = text.strip_prefix("bond:") {
            if let Some((i, j)) = pair.split_once('-') {
                if let (Ok(i), Ok(j)) = (i.parse::<usize>(), j.parse::<usize>()) {
                    return Ok(SweepVariable::BondBeta(SiteId(i), SiteId(j)));
                }
            }
        }
        Err(NegfError::UnknownParameter(text.to_string()))
    }
}

#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub values: Vec<f64>,
    /// Energy used for parameter sweeps; ignored for energy sweeps.
    pub fixed_energy: Option<f64>,
}

/// One row of a sweep result: the swept value and the transmission point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepPoint {
    pub value: f64,
    pub energy: f64,
    pub transmission: f64,
}

/// How the device is rebuilt from the graph for each sweep value.
#[derive(Clone, Debug)]
pub enum Junction {
    SideCoupled { chain_pad: usize, attach_beta: f64 },
    TwoTerminal { left: SiteId, right: SiteId },
}

impl Junction {
    pub fn device(
        &self,
        graph: &TightBindingGraph,
        lead: &LeadModel,
    ) -> Result<DeviceRegion, NegfError> {
        match self {
            Junction::SideCoupled {
                chain_pad,
                attach_beta,
            } => DeviceRegion::side_coupled_with_attach(graph, lead, *chain_pad, *attach_beta),
            Junction::TwoTerminal { left, right } => {
                DeviceRegion::two_terminal(graph, *left, *right)
            }
        }
    }
}

/// Evaluate a sweep. Points are independent and evaluated in parallel;
/// the output order follows the input grid.
pub fn transmission_sweep(
    graph: &TightBindingGraph,
    lead: &LeadModel,
    junction: &Junction,
    spec: &SweepSpec,
) -> Result<Vec<SweepPoint>, NegfError> {
    if spec.values.is_empty() {
        return Err(NegfError::EmptyGrid);
    }
    match &spec.variable {
        SweepVariable::Energy => {
            let device = junction.device(graph, lead)?;
            spec.values
                .par_iter()
                .map(|&e| {
                    transmission_negf(&device, lead, e).map(|p| SweepPoint {
                        value: e,
                        energy: e,
                        transmission: p.transmission,
                    })
                })
                .collect()
        }
        variable => {
            let energy = spec.fixed_energy.ok_or(NegfError::MissingEnergy)?;
            spec.values
                .par_iter()
                .map(|&v| {
                    let modified = apply_variable(graph, variable, v)?;
                    let device = junction.device(&modified, lead)?;
                    transmission_negf(&device, lead, energy).map(|p| SweepPoint {
                        value: v,
                        energy,
                        transmission: p.transmission,
                    })
                })
                .collect()
        }
    }
}

fn apply_variable(
    graph: &TightBindingGraph,
    variable: &SweepVariable,
    value: f64,
) -> Result<TightBindingGraph, NegfError> {
    let g = match variable {
        SweepVariable::Energy => graph.clone(),
        SweepVariable::SiteAlphaByLabel(label) => graph.with_alpha_for_label(label, value)?,
        SweepVariable::BondBetaByLabels(a, b) => graph.with_beta_for_label_pair(a, b, value)?,
        SweepVariable::SiteAlpha(id) => graph.with_site_alpha(*id, value)?,
        SweepVariable::BondBeta(i, j) => graph.with_bond_beta(*i, *j, value)?,
    };
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_nand_tree, Bit, Preset};
    use approx::assert_relative_eq;

    #[test]
    fn surface_green_at_band_centre_is_minus_i() {
        let g = surface_green(0.0, 0.0, -1.0, 1e-12);
        assert_relative_eq!(g.re, 0.0, epsilon = 1e-9);
        assert_relative_eq!(g.im, -1.0, epsilon = 1e-9);
    }

    #[test]
    fn surface_green_is_real_outside_band() {
        for e in [3.0, -3.0, 5.5, -4.2] {
            let g = surface_green(e, 0.0, -1.0, 1e-10);
            assert!(g.im.abs() < 1e-8, "E = {e}: {g}");
            assert!(g.norm() <= 1.0 + 1e-12, "decaying root at E = {e}");
        }
    }

    #[test]
    fn surface_green_satisfies_dyson_identity() {
        for e in [-1.7, -0.4, 0.0, 0.9, 2.4, -3.1] {
            let z = Complex64::new(e, 1e-8);
            let g = surface_green(e, 0.3, -1.4, 1e-8);
            let lhs = 1.0 / g;
            let rhs = z - 0.3 - 1.4 * 1.4 * g;
            assert!((lhs - rhs).norm() < 1e-12, "E = {e}");
        }
    }

    #[test]
    fn self_energy_at_band_centre() {
        let lead = LeadModel::uniform();
        let sigma = self_energy(&lead, 0.0);
        assert_relative_eq!(sigma.im, -1.0, epsilon = 1e-9);
        assert_relative_eq!(broadening(&lead, 0.0), 2.0, epsilon = 1e-9);
    }

    #[test]
    fn zero_gamma_decouples_the_lead() {
        let lead = LeadModel::uniform().with_gamma(0.0);
        assert_eq!(self_energy(&lead, 0.3), Complex64::new(0.0, 0.0));
        assert_eq!(broadening(&lead, 0.3), 0.0);
    }

    #[test]
    fn broadening_is_nonnegative_in_band() {
        use rand::{Rng, SeedableRng};
        let lead = LeadModel::uniform();
        let mut rng = rand::rngs::StdRng::seed_from_u64(42);
        for _ in 0..1000 {
            let e = rng.gen_range(-1.999..1.999);
            assert!(broadening(&lead, e) >= 0.0, "E = {e}");
        }
    }

    #[test]
    fn bare_chain_is_reflectionless() {
        // device = chain sites only, gamma = beta: a perfect lattice
        let n = 7;
        let mut h = DMatrix::zeros(n, n);
        for k in 0..n - 1 {
            h[(k, k + 1)] = -1.0;
            h[(k + 1, k)] = -1.0;
        }
        let device = DeviceRegion::new(h, 0, n - 1).unwrap();
        let lead = LeadModel::uniform();
        for e in [-1.9, -1.2, -0.3, 0.0, 0.7, 1.5] {
            let t = transmission_negf(&device, &lead, e).unwrap();
            assert_relative_eq!(t.transmission, 1.0, epsilon = 1e-6);
        }
    }

    #[test]
    fn resonant_symmetric_level_transmits_fully() {
        // odd chain with symmetric weak contacts: resonance at E = 0,
        // Breit-Wigner 4 G_L G_R / (G_L + G_R)^2 = 1
        let n = 3;
        let mut h = DMatrix::zeros(n, n);
        for k in 0..n - 1 {
            h[(k, k + 1)] = -1.0;
            h[(k + 1, k)] = -1.0;
        }
        let device = DeviceRegion::new(h, 0, n - 1).unwrap();
        let lead = LeadModel::uniform().with_gamma(-0.5);
        let t = transmission_negf(&device, &lead, 0.0).unwrap();
        assert_relative_eq!(t.transmission, 1.0, epsilon = 1e-6);
    }

    #[test]
    fn interference_dip_for_connected_pair() {
        let g = build_nand_tree(1, &[Bit::One, Bit::One], Preset::uniform()).unwrap();
        let lead = LeadModel::uniform();
        let device = DeviceRegion::side_coupled(&g, &lead, 2).unwrap();
        let t = transmission_negf(&device, &lead, 0.0).unwrap();
        assert!(t.transmission < 1e-12, "T = {}", t.transmission);
    }

    #[test]
    fn contacts_must_differ() {
        let h = DMatrix::zeros(1, 1);
        assert!(matches!(
            DeviceRegion::new(h, 0, 0),
            Err(NegfError::BadContacts(0, 0))
        ));
    }

    #[test]
    fn reciprocity() {
        let bits: Vec<Bit> = "0110".chars().map(|c| Bit::from_char(c).unwrap()).collect();
        let g = build_nand_tree(2, &bits, Preset::uniform()).unwrap();
        let lead = LeadModel::uniform();
        let device = DeviceRegion::side_coupled(&g, &lead, 2).unwrap();
        let swapped = device.swapped();
        for e in [-1.3, -0.2, 0.4, 1.1] {
            let a = transmission_negf(&device, &lead, e).unwrap().transmission;
            let b = transmission_negf(&swapped, &lead, e).unwrap().transmission;
            assert_relative_eq!(a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn sweep_rejects_empty_grid() {
        let g = build_nand_tree(1, &[Bit::Zero, Bit::Zero], Preset::uniform()).unwrap();
        let spec = SweepSpec {
            variable: SweepVariable::Energy,
            values: vec![],
            fixed_energy: None,
        };
        let junction = Junction::SideCoupled {
            chain_pad: 2,
            attach_beta: -1.0,
        };
        assert!(matches!(
            transmission_sweep(&g, &LeadModel::uniform(), &junction, &spec),
            Err(NegfError::EmptyGrid)
        ));
    }

    #[test]
    fn sweep_variable_parsing() {
        assert_eq!(
            SweepVariable::parse("energy").unwrap(),
            SweepVariable::Energy
        );
        assert_eq!(
            SweepVariable::parse("alpha_N").unwrap(),
            SweepVariable::SiteAlphaByLabel("N".to_string())
        );
        assert_eq!(
            SweepVariable::parse("beta_NC").unwrap(),
            SweepVariable::BondBetaByLabels("N".to_string(), "C".to_string())
        );
        assert_eq!(
            SweepVariable::parse("site:4").unwrap(),
            SweepVariable::SiteAlpha(SiteId(4))
        );
        assert_eq!(
            SweepVariable::parse("bond:2-5").unwrap(),
            SweepVariable::BondBeta(SiteId(2), SiteId(5))
        );
        assert!(SweepVariable::parse("volume").is_err());
    }
}
