//! Resolving the graph a command operates on: a document on disk, a
//! compiled expression, a NAND tree from an input-bit string, or a named
//! catalog structure.

use anyhow::{anyhow, bail, Context, Result};
use nandtree::boolc;
use nandtree::graph::{
    anchored_nand1_molecule, build_nand_tree, nand3_attach_beta, nand3_molecule, Bit, Nand3Variant,
    Preset, SiteId, TightBindingGraph,
};
use nandtree::negf::Junction;
use std::path::PathBuf;

#[derive(Clone, Debug, clap::Args)]
pub struct GraphSource {
    /// Graph document (JSON) to load.
    #[arg(long, value_name = "PATH")]
    pub graph: Option<PathBuf>,
    /// Boolean expression compiled and fully instantiated (constants only).
    #[arg(long, value_name = "EXPR")]
    pub expr: Option<String>,
    /// NAND-tree input bits, e.g. 00011011 (length fixes the depth).
    #[arg(long, value_name = "BITS")]
    pub tree: Option<String>,
    /// Named catalog structure: nand3-one, nand3-zero, nand3-carbon,
    /// anchored-00, anchored-01, anchored-10, anchored-11.
    #[arg(long, value_name = "NAME")]
    pub builtin: Option<String>,
}

/// A resolved graph plus how it sits between the leads.
pub struct ResolvedGraph {
    pub graph: TightBindingGraph,
    /// Present for two-terminal structures: the contact sites.
    pub contacts: Option<(SiteId, SiteId)>,
    /// Root-to-chain coupling the source recommends (side-coupled only).
    pub default_attach: Option<f64>,
}

impl ResolvedGraph {
    /// Build the junction: an explicit --attach wins, then the source's
    /// recommendation, then the lead coupling.
    pub fn junction(&self, chain_pad: usize, attach: Option<f64>, lead_beta: f64) -> Junction {
        match self.contacts {
            Some((left, right)) => Junction::TwoTerminal { left, right },
            None => Junction::SideCoupled {
                chain_pad,
                attach_beta: attach.or(self.default_attach).unwrap_or(lead_beta),
            },
        }
    }
}

impl GraphSource {
    pub fn resolve(&self, preset: &Preset) -> Result<ResolvedGraph> {
        let picked = [
            self.graph.is_some(),
            self.expr.is_some(),
            self.tree.is_some(),
            self.builtin.is_some(),
        ]
        .iter()
        .filter(|&&p| p)
        .count();
        if picked != 1 {
            bail!("exactly one of --graph, --expr, --tree, --builtin must be given");
        }

        let side = |graph: TightBindingGraph, attach: Option<f64>| ResolvedGraph {
            graph,
            contacts: None,
            default_attach: attach,
        };

        if let Some(path) = &self.graph {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading graph document {}", path.display()))?;
            let graph = TightBindingGraph::from_json(&text)
                .with_context(|| format!("parsing graph document {}", path.display()))?;
            return Ok(side(graph, None));
        }
        if let Some(text) = &self.expr {
            let expr = boolc::parse(text).map_err(|e| anyhow!("{e}"))?;
            let circuit = boolc::lower_with_preset(&expr, preset.clone());
            if !circuit.variables().is_empty() {
                bail!(
                    "expression has open variables {:?}; use `truth-table` for those",
                    circuit.variables()
                );
            }
            let graph = circuit.instantiate(&Default::default())?;
            return Ok(side(graph, None));
        }
        if let Some(bits_text) = &self.tree {
            let bits = parse_bits(bits_text)?;
            if bits.len() < 2 || !bits.len().is_power_of_two() {
                bail!(
                    "--tree needs a power-of-two number of bits, got {}",
                    bits.len()
                );
            }
            let depth = bits.len().trailing_zeros() as usize;
            let graph = build_nand_tree(depth, &bits, preset.clone())?;
            return Ok(side(graph, None));
        }
        let name = self.builtin.as_deref().expect("one source is set");
        if let Some(rest) = name.strip_prefix("nand3-") {
            let variant = Nand3Variant::parse(rest)
                .ok_or_else(|| anyhow!("unknown nand3 variant {rest:?}"))?;
            return Ok(side(nand3_molecule(variant), Some(nand3_attach_beta())));
        }
        if let Some(rest) = name.strip_prefix("anchored-") {
            let bits = parse_bits(rest)?;
            if bits.len() != 2 {
                bail!("anchored molecules take two input bits, e.g. anchored-01");
            }
            let m = anchored_nand1_molecule((bits[0], bits[1]));
            return Ok(ResolvedGraph {
                graph: m.graph,
                contacts: Some((m.left, m.right)),
                default_attach: None,
            });
        }
        bail!("unknown builtin {name:?}");
    }
}

pub fn parse_bits(text: &str) -> Result<Vec<Bit>> {
    text.chars()
        .map(|c| Bit::from_char(c).ok_or_else(|| anyhow!("invalid bit {c:?} in {text:?}")))
        .collect()
}
