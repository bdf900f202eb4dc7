//! Simulation and verification workbench for logic gates realized as
//! tight-binding graphs attached to a 1D lattice.
//!
//! Gate graphs encode their inputs as pendant paths at the leaves; the gate
//! output lives in the amplitude ratio y(E) at the root and is read out in
//! the transmission of a particle scattering along the lattice. Two engines
//! compute that transmission: an analytic quantum-scattering route for trees
//! (`scatter`) and a numerical NEGF route for arbitrary junctions (`negf`).
//! A small boolean-expression compiler (`boolc`) lowers formulas onto gate
//! graphs, and `verify` hosts the reference checks tying it all together.

pub mod boolc;
pub mod graph;
pub mod negf;
pub mod oracle;
pub mod ratio;
pub mod scatter;
pub mod verify;

pub use graph::{
    build_gate, build_nand_tree, Bit, Bond, GraphDoc, Preset, Site, SiteId, TightBindingGraph,
};
pub use negf::{classify_bit_negf, transmission_negf, DeviceRegion, LeadModel, TransmissionPoint};
pub use ratio::AmplitudeRatio;
pub use scatter::{classify_bit, transmission_qst, BitValue, GateBit, ScatteringSolution};
