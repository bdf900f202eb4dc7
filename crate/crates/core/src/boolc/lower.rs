//! Structural lowering of boolean expressions onto gate graphs.
//!
//! NAND becomes a gate node with two children, NOT a gate node with one
//! child (a single-input node inverts the bit), AND a NAND node behind one
//! extra inverter node, OR a NAND of two inverted inputs. Constants are
//! materialized as pendants immediately; variables stay open slots filled
//! per assignment, one slot per occurrence.

use super::BoolExpr;
use crate::graph::{
    Bit, Bond, GraphBuilder, GraphDoc, GraphError, GraphMeta, Preset, Site, SiteId,
    TightBindingGraph,
};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum LowerError {
    #[error("no value assigned to variable {0:?}")]
    MissingAssignment(String),
    #[error("a bare variable has no gate node; wrap it in a gate to export")]
    ExportNeedsGate,
    #[error("circuit document has no sites")]
    EmptyDocument,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Debug)]
enum Body {
    /// The expression is a single variable: the pendant itself is the tree.
    BareVar(String),
    /// Gate nodes with open pendant slots.
    Gates {
        template: TightBindingGraph,
        slots: Vec<(SiteId, String)>,
    },
}

/// A gate-graph template whose variable inputs are still open.
#[derive(Clone, Debug)]
pub struct LoweredCircuit {
    body: Body,
    preset: Preset,
    variables: Vec<String>,
}

/// Lower under the uniform preset.
pub fn lower(expr: &BoolExpr) -> LoweredCircuit {
    lower_with_preset(expr, Preset::uniform())
}

pub fn lower_with_preset(expr: &BoolExpr, preset: Preset) -> LoweredCircuit {
    let variables = expr.variables();
    if let BoolExpr::Var(name) = expr {
        return LoweredCircuit {
            body: Body::BareVar(name.clone()),
            preset,
            variables,
        };
    }
    let mut b = GraphBuilder::new();
    let mut slots = Vec::new();
    let root = match lower_node(expr, &mut b, &mut slots, &preset) {
        Piece::Node(root) => root,
        Piece::ConstInput(bit) => {
            // a bare constant: the pendant is the whole tree
            return LoweredCircuit {
                body: Body::Gates {
                    template: pendant_only_graph(bit, &preset),
                    slots: Vec::new(),
                },
                preset,
                variables,
            };
        }
        Piece::VarInput(_) => unreachable!("bare variables are handled above"),
    };
    b.set_root(root);
    let mut inputs: BTreeMap<String, Vec<SiteId>> = BTreeMap::new();
    for (site, name) in &slots {
        inputs.entry(name.clone()).or_default().push(*site);
    }
    b.set_meta(GraphMeta {
        preset: Some(preset.name().to_string()),
        inputs,
        comment: None,
    });
    let template = b.finish().expect("lowered templates are valid");
    LoweredCircuit {
        body: Body::Gates { template, slots },
        preset,
        variables,
    }
}

enum Piece {
    Node(SiteId),
    VarInput(String),
    ConstInput(Bit),
}

fn lower_node(
    expr: &BoolExpr,
    b: &mut GraphBuilder,
    slots: &mut Vec<(SiteId, String)>,
    preset: &Preset,
) -> Piece {
    let alpha = preset.alpha_c();
    let label = if preset.is_huckel() { Some("C") } else { None };
    let beta = preset.beta_single();
    match expr {
        BoolExpr::Var(name) => Piece::VarInput(name.clone()),
        BoolExpr::Const(bit) => Piece::ConstInput(*bit),
        BoolExpr::Nand(x, y) => {
            let gate = b.add_site(alpha, label);
            for child in [x, y] {
                let piece = lower_node(child, b, slots, preset);
                attach(piece, gate, b, slots, preset, beta);
            }
            Piece::Node(gate)
        }
        BoolExpr::Not(x) => {
            let gate = b.add_site(alpha, label);
            let piece = lower_node(x, b, slots, preset);
            attach(piece, gate, b, slots, preset, beta);
            Piece::Node(gate)
        }
        BoolExpr::And(x, y) => {
            // inverter node between the NAND node and the root
            let inverter = b.add_site(alpha, label);
            let nand = b.add_site(alpha, label);
            b.bond(inverter, nand, beta);
            for child in [x, y] {
                let piece = lower_node(child, b, slots, preset);
                attach(piece, nand, b, slots, preset, beta);
            }
            Piece::Node(inverter)
        }
        BoolExpr::Or(x, y) => {
            let nand = b.add_site(alpha, label);
            for child in [x, y] {
                let inverter = b.add_site(alpha, label);
                b.bond(nand, inverter, beta);
                let piece = lower_node(child, b, slots, preset);
                attach(piece, inverter, b, slots, preset, beta);
            }
            Piece::Node(nand)
        }
    }
}

fn attach(
    piece: Piece,
    parent: SiteId,
    b: &mut GraphBuilder,
    slots: &mut Vec<(SiteId, String)>,
    preset: &Preset,
    beta: f64,
) {
    match piece {
        Piece::Node(site) => b.bond(parent, site, beta),
        Piece::VarInput(name) => slots.push((parent, name)),
        Piece::ConstInput(bit) => {
            let spec = crate::graph::pendant_spec(preset, default_chemistry(preset), bit, false);
            let mut prev = parent;
            for step in spec {
                let s = b.add_site(step.alpha, step.label);
                b.bond(prev, s, step.beta_inward);
                prev = s;
            }
        }
    }
}

fn default_chemistry(preset: &Preset) -> crate::graph::PendantChemistry {
    if preset.is_huckel() {
        crate::graph::PendantChemistry::NitrogenSingles
    } else {
        crate::graph::PendantChemistry::Carbon
    }
}

fn pendant_only_graph(bit: Bit, preset: &Preset) -> TightBindingGraph {
    let spec = crate::graph::pendant_spec(preset, default_chemistry(preset), bit, false);
    let mut b = GraphBuilder::new();
    let mut prev: Option<SiteId> = None;
    for step in &spec {
        let s = b.add_site(step.alpha, step.label);
        if let Some(p) = prev {
            b.bond(p, s, step.beta_inward);
        } else {
            b.set_root(s);
        }
        prev = Some(s);
    }
    b.finish().expect("pendant graphs are valid")
}

impl LoweredCircuit {
    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn preset(&self) -> &Preset {
        &self.preset
    }

    pub fn slot_count(&self) -> usize {
        match &self.body {
            Body::BareVar(_) => 1,
            Body::Gates { slots, .. } => slots.len(),
        }
    }

    /// The gate template with open slots, if the circuit has gate nodes.
    pub fn template(&self) -> Option<&TightBindingGraph> {
        match &self.body {
            Body::BareVar(_) => None,
            Body::Gates { template, .. } => Some(template),
        }
    }

    /// Realize the circuit for one assignment: every slot gets the pendant
    /// path of its bit.
    pub fn instantiate(
        &self,
        assignment: &BTreeMap<String, Bit>,
    ) -> Result<TightBindingGraph, LowerError> {
        let bit_of = |name: &str| -> Result<Bit, LowerError> {
            assignment
                .get(name)
                .copied()
                .ok_or_else(|| LowerError::MissingAssignment(name.to_string()))
        };
        match &self.body {
            Body::BareVar(name) => Ok(pendant_only_graph(bit_of(name)?, &self.preset)),
            Body::Gates { template, slots } => {
                let mut sites: Vec<Site> = template.sites().to_vec();
                let mut bonds: Vec<Bond> = template.bonds().to_vec();
                let mut next_id = sites.iter().map(|s| s.id.0).max().unwrap_or(0) + 1;
                for (gate, name) in slots {
                    let spec = crate::graph::pendant_spec(
                        &self.preset,
                        default_chemistry(&self.preset),
                        bit_of(name)?,
                        false,
                    );
                    let mut prev = *gate;
                    for step in spec {
                        let id = SiteId(next_id);
                        next_id += 1;
                        sites.push(Site {
                            id,
                            alpha: step.alpha,
                            label: step.label.map(str::to_string),
                        });
                        bonds.push(Bond {
                            i: prev,
                            j: id,
                            beta: step.beta_inward,
                        });
                        prev = id;
                    }
                }
                let meta = GraphMeta {
                    preset: Some(self.preset.name().to_string()),
                    ..GraphMeta::default()
                };
                Ok(TightBindingGraph::new(sites, bonds, template.root(), meta)?)
            }
        }
    }

    /// Graph document of the template; variable slots live in `meta.inputs`.
    pub fn to_document(&self) -> Result<GraphDoc, LowerError> {
        match &self.body {
            Body::BareVar(_) => Err(LowerError::ExportNeedsGate),
            Body::Gates { template, .. } => Ok(template.to_document()),
        }
    }

    /// Rebuild a circuit from a graph document; `meta.inputs` names the
    /// open slots (a document without inputs is a closed circuit).
    pub fn from_document(doc: GraphDoc) -> Result<LoweredCircuit, LowerError> {
        if doc.sites.is_empty() {
            return Err(LowerError::EmptyDocument);
        }
        let preset = doc
            .meta
            .preset
            .as_deref()
            .and_then(|name| Preset::from_name(name).ok())
            .unwrap_or(Preset::Uniform);
        let template = TightBindingGraph::try_from(doc)?;
        let mut slots = Vec::new();
        for (name, gates) in &template.meta().inputs {
            for gate in gates {
                slots.push((*gate, name.clone()));
            }
        }
        let variables: Vec<String> = template.meta().inputs.keys().cloned().collect();
        Ok(LoweredCircuit {
            body: Body::Gates { template, slots },
            preset,
            variables,
        })
    }
}
