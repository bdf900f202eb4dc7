//! Builders for NAND-tree graphs and single logic gates.
//!
//! Input encoding at a leaf gate node: bit 0 is a pendant path of one site
//! (its amplitude ratio diverges as E -> 0+), bit 1 is a pendant path of two
//! sites (its ratio vanishes). A builder flag switches bit 1 to the
//! "disconnected" variant with no pendant at all, which has the same limit.

use super::preset::Preset;
use super::{Bit, GraphBuilder, GraphError, GraphMeta, SiteId, TightBindingGraph};

/// Where the sites of a built NAND tree ended up.
#[derive(Clone, Debug)]
pub struct NandTreeLayout {
    pub root: SiteId,
    /// Gate nodes per generation, generation 0 = root, generation n-1 = leaf gates.
    pub gate_levels: Vec<Vec<SiteId>>,
    /// One entry per input bit: the leaf gate it attaches to and the pendant
    /// sites that realize it (outermost last; empty for a disconnected bit 1).
    pub pendants: Vec<PendantInfo>,
}

#[derive(Clone, Debug)]
pub struct PendantInfo {
    pub leaf_gate: SiteId,
    pub bit: Bit,
    pub sites: Vec<SiteId>,
}

impl NandTreeLayout {
    pub fn gate_nodes(&self) -> impl Iterator<Item = SiteId> + '_ {
        self.gate_levels.iter().flatten().copied()
    }

    pub fn leaf_gates(&self) -> &[SiteId] {
        self.gate_levels.last().map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn pendant_site_count(&self) -> usize {
        self.pendants.iter().map(|p| p.sites.len()).sum()
    }
}

/// Heteroatom placement on pendant inputs of Hückel trees.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PendantChemistry {
    /// All-carbon pendants: one-site pendants are double-bonded, two-site
    /// pendants are a single bond then a terminal double bond.
    Carbon,
    /// One-site pendants become nitrogen (beta_nc bond); two-site pendants
    /// stay carbon.
    NitrogenSingles,
    /// Every pendant site is nitrogen: bit 1 is an azo-style N-N path.
    NitrogenAll,
}

/// Configurable NAND-tree builder.
#[derive(Clone, Debug)]
pub struct NandTreeBuilder {
    depth: usize,
    bits: Vec<Bit>,
    preset: Preset,
    bit_one_disconnected: bool,
    pendant_chemistry: PendantChemistry,
    leaf_bonds_double: bool,
}

impl NandTreeBuilder {
    pub fn new(depth: usize, bits: &[Bit], preset: Preset) -> Self {
        NandTreeBuilder {
            depth,
            bits: bits.to_vec(),
            pendant_chemistry: if preset.is_huckel() {
                PendantChemistry::NitrogenSingles
            } else {
                PendantChemistry::Carbon
            },
            leaf_bonds_double: true,
            bit_one_disconnected: false,
            preset,
        }
    }

    /// Realize bit 1 by omitting the pendant instead of a two-site path.
    pub fn bit_one_disconnected(mut self, yes: bool) -> Self {
        self.bit_one_disconnected = yes;
        self
    }

    /// Heteroatom placement on the pendants (Hückel preset only).
    pub fn pendant_chemistry(mut self, chemistry: PendantChemistry) -> Self {
        self.pendant_chemistry = chemistry;
        self
    }

    /// Alternation phase of the single/double pattern on intra-tree bonds,
    /// counted from the leaf gates downward.
    pub fn leaf_bonds_double(mut self, yes: bool) -> Self {
        self.leaf_bonds_double = yes;
        self
    }

    pub fn build(&self) -> Result<(TightBindingGraph, NandTreeLayout), GraphError> {
        if self.depth == 0 {
            return Err(GraphError::ZeroDepth);
        }
        let expected = 1usize << self.depth;
        if self.bits.len() != expected {
            return Err(GraphError::WrongBitCount {
                depth: self.depth,
                expected,
                got: self.bits.len(),
            });
        }

        let alpha_c = self.preset.alpha_c();
        let carbon = if self.preset.is_huckel() {
            Some("C")
        } else {
            None
        };
        let mut b = GraphBuilder::new();

        // Gate nodes, root first. Generation g holds 2^g nodes.
        let mut gate_levels: Vec<Vec<SiteId>> = Vec::with_capacity(self.depth);
        for g in 0..self.depth {
            let level: Vec<SiteId> = (0..1usize << g)
                .map(|_| b.add_site(alpha_c, carbon))
                .collect();
            if g > 0 {
                // bond between generations g-1 and g; distance from the leaf
                // gates decides single vs double
                let depth_from_leaves = self.depth - 1 - g;
                let beta = self.intra_tree_beta(depth_from_leaves);
                for (k, &child) in level.iter().enumerate() {
                    b.bond(gate_levels[g - 1][k / 2], child, beta);
                }
            }
            gate_levels.push(level);
        }

        let leaf_gates = gate_levels[self.depth - 1].clone();
        let mut pendants = Vec::with_capacity(self.bits.len());
        for (k, &bit) in self.bits.iter().enumerate() {
            let gate = leaf_gates[k / 2];
            let sites = self.attach_pendant(&mut b, gate, bit);
            pendants.push(PendantInfo {
                leaf_gate: gate,
                bit,
                sites,
            });
        }

        let root = gate_levels[0][0];
        b.set_root(root);
        b.set_meta(GraphMeta {
            preset: Some(self.preset.name().to_string()),
            ..GraphMeta::default()
        });
        let graph = b.finish()?;
        Ok((
            graph,
            NandTreeLayout {
                root,
                gate_levels,
                pendants,
            },
        ))
    }

    fn intra_tree_beta(&self, depth_from_leaves: usize) -> f64 {
        let double = depth_from_leaves.is_multiple_of(2) == self.leaf_bonds_double;
        if double {
            self.preset.beta_double()
        } else {
            self.preset.beta_single()
        }
    }

    fn attach_pendant(&self, b: &mut GraphBuilder, gate: SiteId, bit: Bit) -> Vec<SiteId> {
        let spec = pendant_spec(
            &self.preset,
            self.pendant_chemistry,
            bit,
            self.bit_one_disconnected,
        );
        let mut prev = gate;
        let mut sites = Vec::with_capacity(spec.len());
        for step in spec {
            let s = b.add_site(step.alpha, step.label);
            b.bond(prev, s, step.beta_inward);
            sites.push(s);
            prev = s;
        }
        sites
    }
}

/// One site of a pendant path, outward from the gate node; `beta_inward`
/// bonds it to the previous site (the gate for the first entry).
#[derive(Clone, Copy, Debug)]
pub(crate) struct PendantStep {
    pub alpha: f64,
    pub label: Option<&'static str>,
    pub beta_inward: f64,
}

/// The pendant path realizing one input bit under a preset.
pub(crate) fn pendant_spec(
    preset: &Preset,
    chemistry: PendantChemistry,
    bit: Bit,
    bit_one_disconnected: bool,
) -> Vec<PendantStep> {
    let carbon = if preset.is_huckel() { Some("C") } else { None };
    let nitrogen = PendantStep {
        alpha: preset.alpha_n(),
        label: Some("N"),
        beta_inward: preset.beta_nc(),
    };
    let with_nitrogen = preset.is_huckel() && chemistry != PendantChemistry::Carbon;
    match bit {
        Bit::Zero if with_nitrogen => vec![nitrogen],
        Bit::Zero => vec![PendantStep {
            alpha: preset.alpha_c(),
            label: carbon,
            beta_inward: preset.beta_double(),
        }],
        Bit::One if bit_one_disconnected => Vec::new(),
        Bit::One if preset.is_huckel() && chemistry == PendantChemistry::NitrogenAll => {
            // azo-style input: both pendant sites nitrogen, N-N coupling
            // taken equal to beta_nc
            vec![nitrogen, nitrogen]
        }
        Bit::One => vec![
            PendantStep {
                alpha: preset.alpha_c(),
                label: carbon,
                beta_inward: preset.beta_single(),
            },
            PendantStep {
                alpha: preset.alpha_c(),
                label: carbon,
                beta_inward: preset.beta_double(),
            },
        ],
    }
}

/// Build a depth-`n` NAND tree over `bits` (length 2^n) with default
/// builder options for the preset.
pub fn build_nand_tree(
    depth: usize,
    bits: &[Bit],
    preset: Preset,
) -> Result<TightBindingGraph, GraphError> {
    NandTreeBuilder::new(depth, bits, preset)
        .build()
        .map(|(g, _)| g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateKind {
    Not,
    And,
    Or,
    Nand,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::Not => 1,
            _ => 2,
        }
    }
}

/// Build a single logic gate with fixed input bits.
///
/// NAND is one gate node with two pendant inputs. NOT is one gate node with
/// one pendant; a single-input node inverts the bit. AND feeds a NAND node
/// through one extra inverter node before the root; OR is a NAND of two
/// inverted inputs.
pub fn build_gate(
    kind: GateKind,
    bits: &[Bit],
    preset: Preset,
) -> Result<TightBindingGraph, GraphError> {
    if bits.len() != kind.arity() {
        return Err(GraphError::ArityMismatch(kind, kind.arity(), bits.len()));
    }
    let alpha_c = preset.alpha_c();
    let carbon = if preset.is_huckel() { Some("C") } else { None };
    let beta = preset.beta_single();
    let helper = NandTreeBuilder::new(1, &[Bit::Zero, Bit::Zero], preset.clone());

    let mut b = GraphBuilder::new();
    let root;
    match kind {
        GateKind::Nand => {
            root = b.add_site(alpha_c, carbon);
            helper.attach_pendant(&mut b, root, bits[0]);
            helper.attach_pendant(&mut b, root, bits[1]);
        }
        GateKind::Not => {
            root = b.add_site(alpha_c, carbon);
            helper.attach_pendant(&mut b, root, bits[0]);
        }
        GateKind::And => {
            root = b.add_site(alpha_c, carbon);
            let nand = b.add_site(alpha_c, carbon);
            b.bond(root, nand, beta);
            helper.attach_pendant(&mut b, nand, bits[0]);
            helper.attach_pendant(&mut b, nand, bits[1]);
        }
        GateKind::Or => {
            root = b.add_site(alpha_c, carbon);
            for &bit in bits {
                let inverter = b.add_site(alpha_c, carbon);
                b.bond(root, inverter, beta);
                helper.attach_pendant(&mut b, inverter, bit);
            }
        }
    }
    b.set_root(root);
    b.set_meta(GraphMeta {
        preset: Some(preset.name().to_string()),
        ..GraphMeta::default()
    });
    b.finish()
}
