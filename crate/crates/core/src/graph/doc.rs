//! Graph document: the stable on-disk form of a tight-binding graph.
//!
//! A document is JSON with fields `sites` (id, alpha, label), `bonds`
//! (i, j, beta), `root`, and `meta`; energies are eV as decimal numbers.

use super::{Bond, GraphError, GraphMeta, Site, SiteId, TightBindingGraph};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphDoc {
    pub sites: Vec<Site>,
    pub bonds: Vec<Bond>,
    pub root: SiteId,
    #[serde(default, skip_serializing_if = "GraphMeta::is_empty")]
    pub meta: GraphMeta,
}

#[derive(Debug, Error)]
pub enum DocError {
    #[error("malformed graph document: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] GraphError),
}

impl From<&TightBindingGraph> for GraphDoc {
    fn from(g: &TightBindingGraph) -> GraphDoc {
        GraphDoc {
            sites: g.sites().to_vec(),
            bonds: g.bonds().to_vec(),
            root: g.root(),
            meta: g.meta().clone(),
        }
    }
}

impl TryFrom<GraphDoc> for TightBindingGraph {
    type Error = GraphError;

    fn try_from(doc: GraphDoc) -> Result<Self, GraphError> {
        TightBindingGraph::new(doc.sites, doc.bonds, doc.root, doc.meta)
    }
}

impl TightBindingGraph {
    pub fn to_document(&self) -> GraphDoc {
        GraphDoc::from(self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("graph document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, DocError> {
        let doc: GraphDoc = serde_json::from_str(text)?;
        Ok(TightBindingGraph::try_from(doc)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_nand_tree, Bit, Preset};

    #[test]
    fn round_trip_depth3_tree() {
        let bits: Vec<Bit> = "00011011"
            .chars()
            .map(|c| Bit::from_char(c).unwrap())
            .collect();
        let g = build_nand_tree(3, &bits, Preset::uniform()).unwrap();
        let back = TightBindingGraph::from_json(&g.to_json()).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn bond_to_missing_site_is_rejected() {
        let text = r#"{
            "sites": [{"id": 0, "alpha": 0.0}],
            "bonds": [{"i": 0, "j": 7, "beta": -1.0}],
            "root": 0
        }"#;
        let err = TightBindingGraph::from_json(text).unwrap_err();
        assert!(matches!(
            err,
            DocError::Invalid(GraphError::DanglingBond(SiteId(7)))
        ));
    }

    #[test]
    fn zero_beta_is_rejected() {
        let text = r#"{
            "sites": [{"id": 0, "alpha": 0.0}, {"id": 1, "alpha": 0.0}],
            "bonds": [{"i": 0, "j": 1, "beta": 0.0}],
            "root": 0
        }"#;
        let err = TightBindingGraph::from_json(text).unwrap_err();
        assert!(matches!(
            err,
            DocError::Invalid(GraphError::InvalidCoupling(_, _))
        ));
    }

    #[test]
    fn duplicate_id_is_rejected() {
        let text = r#"{
            "sites": [{"id": 3, "alpha": 0.0}, {"id": 3, "alpha": 1.0}],
            "bonds": [],
            "root": 3
        }"#;
        let err = TightBindingGraph::from_json(text).unwrap_err();
        assert!(matches!(
            err,
            DocError::Invalid(GraphError::DuplicateSite(SiteId(3)))
        ));
    }

    #[test]
    fn garbage_is_a_parse_error() {
        assert!(matches!(
            TightBindingGraph::from_json("not json").unwrap_err(),
            DocError::Malformed(_)
        ));
    }
}
