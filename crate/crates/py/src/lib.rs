//! Python bindings: gate-graph builders, the two transmission engines, the
//! bit classifiers, the expression compiler, and the verification suite.

use nandtree::boolc::{self, BoolExpr, Engine, LoweredCircuit};
use nandtree::graph::{
    anchored_nand1_molecule, build_gate, build_nand_tree, nand3_attach_beta, nand3_molecule, Bit,
    GateKind, Nand3Variant, Preset, SiteId, TightBindingGraph,
};
use nandtree::negf::{self, DeviceRegion, LeadModel};
use nandtree::scatter;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use std::collections::BTreeMap;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_bits(text: &str) -> PyResult<Vec<Bit>> {
    text.chars()
        .map(|c| Bit::from_char(c).ok_or_else(|| err(format!("invalid bit {c:?}"))))
        .collect()
}

fn parse_preset(name: &str) -> PyResult<Preset> {
    Preset::from_name(name).map_err(err)
}

/// A tight-binding gate graph.
#[pyclass(name = "Graph", skip_from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: TightBindingGraph,
}

#[pymethods]
impl PyGraph {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<PyGraph> {
        Ok(PyGraph {
            inner: TightBindingGraph::from_json(text).map_err(err)?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph({} sites, {} bonds, root {})",
            self.inner.len(),
            self.inner.bonds().len(),
            self.inner.root()
        )
    }

    #[getter]
    fn root(&self) -> usize {
        self.inner.root().0
    }

    /// Sites as (id, alpha, label) tuples.
    fn sites(&self) -> Vec<(usize, f64, Option<String>)> {
        self.inner
            .sites()
            .iter()
            .map(|s| (s.id.0, s.alpha, s.label.clone()))
            .collect()
    }

    /// Bonds as (i, j, beta) tuples.
    fn bonds(&self) -> Vec<(usize, usize, f64)> {
        self.inner
            .bonds()
            .iter()
            .map(|b| (b.i.0, b.j.0, b.beta))
            .collect()
    }

    /// The dense real symmetric Hamiltonian as nested lists (eV).
    fn hamiltonian(&self) -> Vec<Vec<f64>> {
        let h = self.inner.hamiltonian();
        (0..h.nrows())
            .map(|i| (0..h.ncols()).map(|j| h[(i, j)]).collect())
            .collect()
    }

    /// Copy with every site labelled `label` moved to on-site energy `alpha`.
    fn with_alpha_for_label(&self, label: &str, alpha: f64) -> PyResult<PyGraph> {
        Ok(PyGraph {
            inner: self.inner.with_alpha_for_label(label, alpha).map_err(err)?,
        })
    }
}

/// Semi-infinite 1D-lattice lead parameters.
#[pyclass(name = "Lead", from_py_object)]
#[derive(Clone)]
struct PyLead {
    inner: LeadModel,
}

#[pymethods]
impl PyLead {
    #[new]
    #[pyo3(signature = (alpha=0.0, beta=-1.0, gamma=-1.0, eta=1e-10))]
    fn new(alpha: f64, beta: f64, gamma: f64, eta: f64) -> PyResult<PyLead> {
        let inner = LeadModel {
            alpha,
            beta,
            gamma,
            eta,
        };
        inner.validate().map_err(err)?;
        Ok(PyLead { inner })
    }

    fn __repr__(&self) -> String {
        format!(
            "Lead(alpha={}, beta={}, gamma={}, eta={})",
            self.inner.alpha, self.inner.beta, self.inner.gamma, self.inner.eta
        )
    }
}

fn lead_or_uniform(lead: Option<PyLead>) -> LeadModel {
    lead.map(|l| l.inner).unwrap_or_else(LeadModel::uniform)
}

/// Build a depth-n NAND tree over an input-bit string like "00011011".
#[pyfunction]
#[pyo3(signature = (bits, preset="uniform"))]
fn nand_tree(bits: &str, preset: &str) -> PyResult<PyGraph> {
    let bits = parse_bits(bits)?;
    if bits.len() < 2 || !bits.len().is_power_of_two() {
        return Err(err("bit count must be a power of two, at least 2"));
    }
    let depth = bits.len().trailing_zeros() as usize;
    Ok(PyGraph {
        inner: build_nand_tree(depth, &bits, parse_preset(preset)?).map_err(err)?,
    })
}

/// Build a single gate ("not", "and", "or", "nand") with fixed input bits.
#[pyfunction]
#[pyo3(signature = (kind, bits, preset="uniform"))]
fn gate(kind: &str, bits: &str, preset: &str) -> PyResult<PyGraph> {
    let kind = match kind {
        "not" => GateKind::Not,
        "and" => GateKind::And,
        "or" => GateKind::Or,
        "nand" => GateKind::Nand,
        other => return Err(err(format!("unknown gate kind {other:?}"))),
    };
    Ok(PyGraph {
        inner: build_gate(kind, &parse_bits(bits)?, parse_preset(preset)?).map_err(err)?,
    })
}

/// Named reference structure: nand3-one, nand3-zero, nand3-carbon, or
/// anchored-00/01/10/11 (anchored molecules carry sulfur contact sites).
#[pyfunction]
fn catalog(name: &str) -> PyResult<PyGraph> {
    if let Some(rest) = name.strip_prefix("nand3-") {
        let variant = Nand3Variant::parse(rest)
            .ok_or_else(|| err(format!("unknown nand3 variant {rest:?}")))?;
        return Ok(PyGraph {
            inner: nand3_molecule(variant),
        });
    }
    if let Some(rest) = name.strip_prefix("anchored-") {
        let bits = parse_bits(rest)?;
        if bits.len() != 2 {
            return Err(err("anchored molecules take two bits, e.g. anchored-01"));
        }
        return Ok(PyGraph {
            inner: anchored_nand1_molecule((bits[0], bits[1])).graph,
        });
    }
    Err(err(format!("unknown catalog name {name:?}")))
}

/// Recommended root-to-chain coupling for the nand3 catalog trees, eV.
#[pyfunction]
fn nand3_attach() -> f64 {
    nand3_attach_beta()
}

/// y(E) at the graph root as a (numerator, denominator) pair; a zero
/// denominator encodes a signed infinity.
#[pyfunction]
#[pyo3(signature = (graph, energy, root_coupling=-1.0))]
fn tree_output_y(graph: &PyGraph, energy: f64, root_coupling: f64) -> PyResult<(f64, f64)> {
    let y = scatter::tree_output_y(&graph.inner, energy, root_coupling).map_err(err)?;
    Ok((y.num(), y.den()))
}

/// Analytic scattering solution for a side-coupled tree on a uniform lead:
/// returns a dict with theta, T, and the complex F and B amplitudes.
#[pyfunction]
#[pyo3(signature = (graph, energy, lead=None))]
fn transmission_qst(
    py: Python<'_>,
    graph: &PyGraph,
    energy: f64,
    lead: Option<PyLead>,
) -> PyResult<Py<PyAny>> {
    let solution =
        scatter::transmission_qst(&graph.inner, &lead_or_uniform(lead), energy).map_err(err)?;
    let dict = pyo3::types::PyDict::new(py);
    dict.set_item("theta", solution.momentum.theta())?;
    dict.set_item("T", solution.transmission)?;
    dict.set_item("F", (solution.transmitted.re, solution.transmitted.im))?;
    dict.set_item("B", (solution.reflected.re, solution.reflected.im))?;
    Ok(dict.into_any().unbind())
}

/// Classify the gate output at E -> 0+: "0", "1", or "indeterminate".
#[pyfunction]
#[pyo3(signature = (graph, exact=false))]
fn classify_bit(graph: &PyGraph, exact: bool) -> PyResult<String> {
    let bit = if exact {
        scatter::classify_bit_exact(&graph.inner).map_err(err)?
    } else {
        scatter::classify_bit(&graph.inner).map_err(err)?
    };
    Ok(bit.value.to_string())
}

/// NEGF transmission at one energy. Side-coupled by default; pass
/// `contacts=(left_id, right_id)` for two-terminal structures.
#[pyfunction]
#[pyo3(signature = (graph, energy, lead=None, pad=2, attach=None, contacts=None))]
fn transmission_negf(
    graph: &PyGraph,
    energy: f64,
    lead: Option<PyLead>,
    pad: usize,
    attach: Option<f64>,
    contacts: Option<(usize, usize)>,
) -> PyResult<f64> {
    let lead = lead_or_uniform(lead);
    let device = match contacts {
        Some((l, r)) => {
            DeviceRegion::two_terminal(&graph.inner, SiteId(l), SiteId(r)).map_err(err)?
        }
        None => DeviceRegion::side_coupled_with_attach(
            &graph.inner,
            &lead,
            pad,
            attach.unwrap_or(lead.beta),
        )
        .map_err(err)?,
    };
    Ok(negf::transmission_negf(&device, &lead, energy)
        .map_err(err)?
        .transmission)
}

/// NEGF transmission over an energy grid: list of (E, T).
#[pyfunction]
#[pyo3(signature = (graph, energies, lead=None, pad=2, attach=None, contacts=None))]
fn energy_sweep(
    graph: &PyGraph,
    energies: Vec<f64>,
    lead: Option<PyLead>,
    pad: usize,
    attach: Option<f64>,
    contacts: Option<(usize, usize)>,
) -> PyResult<Vec<(f64, f64)>> {
    energies
        .into_iter()
        .map(|e| transmission_negf(graph, e, lead.clone(), pad, attach, contacts).map(|t| (e, t)))
        .collect()
}

/// One truth-table row: assignment bits, output, oracle bit, transmission.
type TableRow = (Vec<u8>, String, Option<u8>, Option<f64>);

/// A compiled boolean expression with open variable slots.
#[pyclass(name = "Circuit")]
struct PyCircuit {
    circuit: LoweredCircuit,
    expr: Option<BoolExpr>,
}

#[pymethods]
impl PyCircuit {
    fn variables(&self) -> Vec<String> {
        self.circuit.variables().to_vec()
    }

    fn __repr__(&self) -> String {
        match &self.expr {
            Some(e) => format!("Circuit({e})"),
            None => "Circuit(<from document>)".to_string(),
        }
    }

    /// Realize the circuit for an assignment {name: 0 or 1}.
    fn instantiate(&self, assignment: BTreeMap<String, u8>) -> PyResult<PyGraph> {
        let assignment: BTreeMap<String, Bit> = assignment
            .into_iter()
            .map(|(k, v)| (k, Bit::from(v != 0)))
            .collect();
        Ok(PyGraph {
            inner: self.circuit.instantiate(&assignment).map_err(err)?,
        })
    }

    /// Truth table rows as (assignment bits, output, oracle, T) tuples;
    /// output is "0"/"1"/"indeterminate", T is present for the negf engine.
    #[pyo3(signature = (engine="qst", lead=None))]
    fn truth_table(&self, engine: &str, lead: Option<PyLead>) -> PyResult<Vec<TableRow>> {
        let engine = Engine::parse(engine).ok_or_else(|| err("engine must be qst or negf"))?;
        let table = boolc::truth_table(
            &self.circuit,
            self.expr.as_ref(),
            engine,
            &lead_or_uniform(lead),
        )
        .map_err(err)?;
        Ok(table
            .rows
            .into_iter()
            .map(|row| {
                (
                    row.assignment.iter().map(|b| b.as_bool() as u8).collect(),
                    row.output.to_string(),
                    row.oracle.map(|b| b.as_bool() as u8),
                    row.transmission,
                )
            })
            .collect())
    }

    /// The graph document of the template, with slots in meta.inputs.
    fn to_json(&self) -> PyResult<String> {
        let doc = self.circuit.to_document().map_err(err)?;
        serde_json::to_string_pretty(&doc).map_err(|e| err(e.to_string()))
    }
}

use nandtree::graph::GraphDoc;

/// Parse and lower a boolean expression (grammar: !, &, |, infix NAND,
/// parentheses, identifiers, constants 0/1).
#[pyfunction]
#[pyo3(signature = (text, preset="uniform"))]
fn compile_expr(text: &str, preset: &str) -> PyResult<PyCircuit> {
    let expr = boolc::parse(text).map_err(err)?;
    let circuit = boolc::lower_with_preset(&expr, parse_preset(preset)?);
    Ok(PyCircuit {
        circuit,
        expr: Some(expr),
    })
}

/// Load a compiled circuit from a graph document produced by `compile`.
#[pyfunction]
fn circuit_from_json(text: &str) -> PyResult<PyCircuit> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(|e| err(e.to_string()))?;
    Ok(PyCircuit {
        circuit: LoweredCircuit::from_document(doc).map_err(err)?,
        expr: None,
    })
}

/// Run the verification suite: list of (id, name, passed, details).
#[pyfunction]
fn verify() -> Vec<(String, String, bool, String)> {
    nandtree::verify::run_all()
        .into_iter()
        .map(|r| (r.id.to_string(), r.name.to_string(), r.passed, r.details))
        .collect()
}

#[pymodule]
fn nandtree_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyLead>()?;
    m.add_class::<PyCircuit>()?;
    m.add_function(wrap_pyfunction!(nand_tree, m)?)?;
    m.add_function(wrap_pyfunction!(gate, m)?)?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(nand3_attach, m)?)?;
    m.add_function(wrap_pyfunction!(tree_output_y, m)?)?;
    m.add_function(wrap_pyfunction!(transmission_qst, m)?)?;
    m.add_function(wrap_pyfunction!(classify_bit, m)?)?;
    m.add_function(wrap_pyfunction!(transmission_negf, m)?)?;
    m.add_function(wrap_pyfunction!(energy_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(compile_expr, m)?)?;
    m.add_function(wrap_pyfunction!(circuit_from_json, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
