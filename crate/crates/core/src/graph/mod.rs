//! Tight-binding graphs: sites with on-site energies, bonds with coupling
//! elements, and a marked root that couples to chain site r = 0 of the
//! 1D lattice.

mod build;
mod catalog;
mod doc;
mod preset;

pub(crate) use build::pendant_spec;
pub use build::{
    build_gate, build_nand_tree, GateKind, NandTreeBuilder, NandTreeLayout, PendantChemistry,
};
pub use catalog::{
    anchored_nand1_molecule, nand3_attach_beta, nand3_molecule, AnchoredMolecule, Nand3Variant,
};
pub use doc::GraphDoc;
pub use preset::{HuckelParams, Preset};

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use thiserror::Error;

/// Identifier of a site within one graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SiteId(pub usize);

impl fmt::Display for SiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A logical input bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Bit {
    Zero,
    One,
}

impl Bit {
    pub fn from_char(c: char) -> Option<Bit> {
        match c {
            '0' => Some(Bit::Zero),
            '1' => Some(Bit::One),
            _ => None,
        }
    }

    pub fn as_bool(self) -> bool {
        self == Bit::One
    }
}

impl From<bool> for Bit {
    fn from(b: bool) -> Bit {
        if b {
            Bit::One
        } else {
            Bit::Zero
        }
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bit::Zero => write!(f, "0"),
            Bit::One => write!(f, "1"),
        }
    }
}

/// One site of the tight-binding model. `alpha` is the on-site energy in eV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Site {
    pub id: SiteId,
    pub alpha: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// A nearest-neighbour coupling element between two sites, in eV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bond {
    pub i: SiteId,
    pub j: SiteId,
    pub beta: f64,
}

/// Free-form metadata carried alongside a graph document.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GraphMeta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    /// Variable name -> gate sites where an input pendant attaches.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub inputs: BTreeMap<String, Vec<SiteId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
}

impl GraphMeta {
    pub fn is_empty(&self) -> bool {
        self.preset.is_none() && self.inputs.is_empty() && self.comment.is_none()
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("duplicate site id {0}")]
    DuplicateSite(SiteId),
    #[error("bond references missing site {0}")]
    DanglingBond(SiteId),
    #[error("bond from site {0} to itself")]
    SelfBond(SiteId),
    #[error("more than one bond between sites {0} and {1}")]
    DuplicateBond(SiteId, SiteId),
    #[error("coupling element for bond {0}-{1} must be nonzero and finite")]
    InvalidCoupling(SiteId, SiteId),
    #[error("site energy for site {0} must be finite")]
    InvalidEnergy(SiteId),
    #[error("root site {0} does not exist")]
    MissingRoot(SiteId),
    #[error("graph is not connected (site {0} unreachable from root)")]
    Disconnected(SiteId),
    #[error("graph has no sites")]
    Empty,
    #[error("NAND tree depth must be at least 1")]
    ZeroDepth,
    #[error("expected {expected} input bits for depth {depth}, got {got}")]
    WrongBitCount {
        depth: usize,
        expected: usize,
        got: usize,
    },
    #[error("gate {0:?} takes {1} input bit(s), got {2}")]
    ArityMismatch(GateKind, usize, usize),
    #[error("no bond between sites {0} and {1}")]
    NoSuchBond(SiteId, SiteId),
    #[error("no site with label {0:?}")]
    NoSuchLabel(String),
}

/// An immutable tight-binding graph. The root site is the one that couples
/// to chain site r = 0 when the graph is placed in a junction.
#[derive(Clone, Debug)]
pub struct TightBindingGraph {
    sites: Vec<Site>,
    bonds: Vec<Bond>,
    root: SiteId,
    meta: GraphMeta,
    index: HashMap<SiteId, usize>,
    /// adjacency[i] = (neighbour dense index, coupling), in insertion order
    adjacency: Vec<Vec<(usize, f64)>>,
}

impl PartialEq for TightBindingGraph {
    fn eq(&self, other: &Self) -> bool {
        self.sites == other.sites
            && self.bonds == other.bonds
            && self.root == other.root
            && self.meta == other.meta
    }
}

impl TightBindingGraph {
    pub fn new(
        sites: Vec<Site>,
        bonds: Vec<Bond>,
        root: SiteId,
        meta: GraphMeta,
    ) -> Result<Self, GraphError> {
        if sites.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut index = HashMap::with_capacity(sites.len());
        for (k, site) in sites.iter().enumerate() {
            if !site.alpha.is_finite() {
                return Err(GraphError::InvalidEnergy(site.id));
            }
            if index.insert(site.id, k).is_some() {
                return Err(GraphError::DuplicateSite(site.id));
            }
        }
        if !index.contains_key(&root) {
            return Err(GraphError::MissingRoot(root));
        }
        let mut adjacency = vec![Vec::new(); sites.len()];
        let mut seen_pairs = HashSet::new();
        for bond in &bonds {
            if bond.i == bond.j {
                return Err(GraphError::SelfBond(bond.i));
            }
            let (&ki, &kj) = match (index.get(&bond.i), index.get(&bond.j)) {
                (Some(ki), Some(kj)) => (ki, kj),
                (None, _) => return Err(GraphError::DanglingBond(bond.i)),
                (_, None) => return Err(GraphError::DanglingBond(bond.j)),
            };
            if bond.beta == 0.0 || !bond.beta.is_finite() {
                return Err(GraphError::InvalidCoupling(bond.i, bond.j));
            }
            let pair = (ki.min(kj), ki.max(kj));
            if !seen_pairs.insert(pair) {
                return Err(GraphError::DuplicateBond(bond.i, bond.j));
            }
            adjacency[ki].push((kj, bond.beta));
            adjacency[kj].push((ki, bond.beta));
        }
        let graph = TightBindingGraph {
            sites,
            bonds,
            root,
            meta,
            index,
            adjacency,
        };
        graph.check_connected()?;
        Ok(graph)
    }

    fn check_connected(&self) -> Result<(), GraphError> {
        let mut seen = vec![false; self.sites.len()];
        let mut stack = vec![self.index[&self.root]];
        seen[self.index[&self.root]] = true;
        while let Some(k) = stack.pop() {
            for &(nb, _) in &self.adjacency[k] {
                if !seen[nb] {
                    seen[nb] = true;
                    stack.push(nb);
                }
            }
        }
        match seen.iter().position(|&s| !s) {
            Some(k) => Err(GraphError::Disconnected(self.sites[k].id)),
            None => Ok(()),
        }
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    pub fn bonds(&self) -> &[Bond] {
        &self.bonds
    }

    pub fn root(&self) -> SiteId {
        self.root
    }

    pub fn meta(&self) -> &GraphMeta {
        &self.meta
    }

    pub fn site(&self, id: SiteId) -> Option<&Site> {
        self.index.get(&id).map(|&k| &self.sites[k])
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    /// Dense index of a site in Hamiltonian/site ordering.
    pub fn dense_index(&self, id: SiteId) -> Option<usize> {
        self.index.get(&id).copied()
    }

    pub(crate) fn neighbours(&self, dense: usize) -> &[(usize, f64)] {
        &self.adjacency[dense]
    }

    pub(crate) fn alpha_at(&self, dense: usize) -> f64 {
        self.sites[dense].alpha
    }

    /// H[i][i] = alpha_i, H[i][j] = H[j][i] = beta_ij for bonds, zero
    /// elsewhere, in the order of [`Self::sites`].
    pub fn hamiltonian(&self) -> nalgebra::DMatrix<f64> {
        let n = self.sites.len();
        let mut h = nalgebra::DMatrix::zeros(n, n);
        for (k, site) in self.sites.iter().enumerate() {
            h[(k, k)] = site.alpha;
        }
        for bond in &self.bonds {
            let ki = self.index[&bond.i];
            let kj = self.index[&bond.j];
            h[(ki, kj)] = bond.beta;
            h[(kj, ki)] = bond.beta;
        }
        h
    }

    /// Copy with every site labelled `label` set to on-site energy `alpha`.
    pub fn with_alpha_for_label(&self, label: &str, alpha: f64) -> Result<Self, GraphError> {
        let mut sites = self.sites.clone();
        let mut hit = false;
        for site in &mut sites {
            if site.label.as_deref() == Some(label) {
                site.alpha = alpha;
                hit = true;
            }
        }
        if !hit {
            return Err(GraphError::NoSuchLabel(label.to_string()));
        }
        Self::new(sites, self.bonds.clone(), self.root, self.meta.clone())
    }

    /// Copy with every bond between labels `a` and `b` set to coupling `beta`.
    pub fn with_beta_for_label_pair(
        &self,
        a: &str,
        b: &str,
        beta: f64,
    ) -> Result<Self, GraphError> {
        let label_of = |id: SiteId| self.site(id).and_then(|s| s.label.as_deref());
        let mut bonds = self.bonds.clone();
        let mut hit = false;
        for bond in &mut bonds {
            let (li, lj) = (label_of(bond.i), label_of(bond.j));
            if (li == Some(a) && lj == Some(b)) || (li == Some(b) && lj == Some(a)) {
                bond.beta = beta;
                hit = true;
            }
        }
        if !hit {
            return Err(GraphError::NoSuchLabel(format!("{a}-{b}")));
        }
        Self::new(self.sites.clone(), bonds, self.root, self.meta.clone())
    }

    pub fn with_site_alpha(&self, id: SiteId, alpha: f64) -> Result<Self, GraphError> {
        if self.site(id).is_none() {
            return Err(GraphError::MissingRoot(id));
        }
        let mut sites = self.sites.clone();
        for site in &mut sites {
            if site.id == id {
                site.alpha = alpha;
            }
        }
        Self::new(sites, self.bonds.clone(), self.root, self.meta.clone())
    }

    pub fn with_bond_beta(&self, i: SiteId, j: SiteId, beta: f64) -> Result<Self, GraphError> {
        let mut bonds = self.bonds.clone();
        let mut hit = false;
        for bond in &mut bonds {
            if (bond.i == i && bond.j == j) || (bond.i == j && bond.j == i) {
                bond.beta = beta;
                hit = true;
            }
        }
        if !hit {
            return Err(GraphError::NoSuchBond(i, j));
        }
        Self::new(self.sites.clone(), bonds, self.root, self.meta.clone())
    }

    /// Copy with every coupling redrawn uniformly from `range` (negative
    /// values expected, e.g. -4.0..-0.1). Site energies are untouched.
    pub fn with_random_couplings<R: rand::Rng>(
        &self,
        range: std::ops::Range<f64>,
        rng: &mut R,
    ) -> Self {
        let mut bonds = self.bonds.clone();
        for bond in &mut bonds {
            bond.beta = rng.gen_range(range.clone());
        }
        Self::new(self.sites.clone(), bonds, self.root, self.meta.clone())
            .expect("redrawing couplings preserves validity")
    }
}

/// Incremental construction helper; `finish` validates the result.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    sites: Vec<Site>,
    bonds: Vec<Bond>,
    root: Option<SiteId>,
    meta: GraphMeta,
    next_id: usize,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_site(&mut self, alpha: f64, label: Option<&str>) -> SiteId {
        let id = SiteId(self.next_id);
        self.next_id += 1;
        self.sites.push(Site {
            id,
            alpha,
            label: label.map(str::to_string),
        });
        id
    }

    pub fn bond(&mut self, i: SiteId, j: SiteId, beta: f64) {
        self.bonds.push(Bond { i, j, beta });
    }

    pub fn set_root(&mut self, root: SiteId) {
        self.root = Some(root);
    }

    pub fn set_meta(&mut self, meta: GraphMeta) {
        self.meta = meta;
    }

    pub fn meta_mut(&mut self) -> &mut GraphMeta {
        &mut self.meta
    }

    pub fn finish(self) -> Result<TightBindingGraph, GraphError> {
        let root = self.root.ok_or(GraphError::Empty)?;
        TightBindingGraph::new(self.sites, self.bonds, root, self.meta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicate_ids() {
        let sites = vec![
            Site {
                id: SiteId(0),
                alpha: 0.0,
                label: None,
            },
            Site {
                id: SiteId(0),
                alpha: 1.0,
                label: None,
            },
        ];
        let err = TightBindingGraph::new(sites, vec![], SiteId(0), GraphMeta::default());
        assert_eq!(err.unwrap_err(), GraphError::DuplicateSite(SiteId(0)));
    }

    #[test]
    fn rejects_zero_coupling() {
        let mut b = GraphBuilder::new();
        let s0 = b.add_site(0.0, None);
        let s1 = b.add_site(0.0, None);
        b.bond(s0, s1, 0.0);
        b.set_root(s0);
        assert_eq!(b.finish().unwrap_err(), GraphError::InvalidCoupling(s0, s1));
    }

    #[test]
    fn rejects_disconnected() {
        let mut b = GraphBuilder::new();
        let s0 = b.add_site(0.0, None);
        let s1 = b.add_site(0.0, None);
        b.set_root(s0);
        assert_eq!(b.finish().unwrap_err(), GraphError::Disconnected(s1));
    }

    #[test]
    fn hamiltonian_matches_two_site_example() {
        let mut b = GraphBuilder::new();
        let s0 = b.add_site(0.0, None);
        let s1 = b.add_site(0.0, None);
        b.bond(s0, s1, -1.0);
        b.set_root(s0);
        let g = b.finish().unwrap();
        let h = g.hamiltonian();
        assert_eq!(h[(0, 0)], 0.0);
        assert_eq!(h[(1, 1)], 0.0);
        assert_eq!(h[(0, 1)], -1.0);
        assert_eq!(h[(1, 0)], -1.0);
    }

    #[test]
    fn single_site_hamiltonian_is_zero() {
        let mut b = GraphBuilder::new();
        let s0 = b.add_site(0.0, None);
        b.set_root(s0);
        let g = b.finish().unwrap();
        let h = g.hamiltonian();
        assert_eq!(h.nrows(), 1);
        assert_eq!(h[(0, 0)], 0.0);
    }
}
