//! Exact-rational evaluation of the amplitude-ratio recursion.
//!
//! Every finite f64 parameter is an exact rational, so the recursion can be
//! carried out over rational functions of the energy with big-integer
//! coefficients. The E -> 0 limit is then read off the leading Laurent
//! coefficients instead of being estimated numerically. Degree growth is
//! linear in the site count, which keeps this comfortable for small trees.

use super::classify::{BitValue, GateBit};
use super::ScatterError;
use crate::graph::{SiteId, TightBindingGraph};
use crate::ratio::AmplitudeRatio;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Polynomial over the rationals, ascending coefficients, trailing zeros
/// trimmed (empty vector = zero polynomial).
#[derive(Clone, Debug, PartialEq)]
struct Poly(Vec<BigRational>);

impl Poly {
    fn constant(c: BigRational) -> Poly {
        Poly::trim(vec![c])
    }

    fn linear(c0: BigRational, c1: BigRational) -> Poly {
        Poly::trim(vec![c0, c1])
    }

    fn one() -> Poly {
        Poly::constant(BigRational::from_integer(1.into()))
    }

    fn trim(mut v: Vec<BigRational>) -> Poly {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        Poly(v)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn sub(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.0.get(k).cloned().unwrap_or_else(BigRational::zero);
            let b = other.0.get(k).cloned().unwrap_or_else(BigRational::zero);
            out.push(a - b);
        }
        Poly::trim(out)
    }

    fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly(Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::trim(out)
    }

    fn scale(&self, c: &BigRational) -> Poly {
        Poly::trim(self.0.iter().map(|a| a * c).collect())
    }

    /// Index of the lowest-order nonzero coefficient.
    fn trailing_order(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

/// A ratio of polynomials in the energy. Neither side is identically zero
/// for ratios produced by the recursion.
#[derive(Clone, Debug)]
pub struct RationalFn {
    num: Poly,
    den: Poly,
}

impl RationalFn {
    /// Value at a rational energy; `None` at a pole of the representation.
    pub fn eval(&self, energy: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(energy);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(energy) / d)
        }
    }

    pub fn eval_f64(&self, energy: f64) -> Option<f64> {
        let e = BigRational::from_float(energy)?;
        self.eval(&e).and_then(|v| v.to_f64())
    }

    /// Leading behaviour at E -> 0: the pair (k, c) with y(E) ~ c E^k.
    pub fn leading_behaviour(&self) -> (i64, BigRational) {
        let on = self
            .num
            .trailing_order()
            .expect("recursion ratios are not identically zero");
        let od = self
            .den
            .trailing_order()
            .expect("recursion denominators are not identically zero");
        let c = &self.num.0[on] / &self.den.0[od];
        (on as i64 - od as i64, c)
    }
}

fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("graph parameters are finite")
}

/// Exact counterpart of `tree_output_y`: y(E) as a rational function.
pub fn exact_tree_output_y(
    g: &TightBindingGraph,
    root_coupling: f64,
) -> Result<RationalFn, ScatterError> {
    let root = g.dense_index(g.root()).expect("root is validated");
    exact_subtree_ratio(
        g,
        root,
        usize::MAX,
        root_coupling,
        &mut vec![false; g.len()],
    )
}

/// Exact counterpart of `node_ratio` with the uniform-lead root coupling.
pub fn exact_node_ratio(g: &TightBindingGraph, v: SiteId) -> Result<RationalFn, ScatterError> {
    let target = g.dense_index(v).ok_or(ScatterError::UnknownSite(v))?;
    let root = g.dense_index(g.root()).expect("root is validated");
    if target == root {
        return exact_tree_output_y(g, -1.0);
    }
    // find the parent of `v` in the tree rooted at the graph root
    let (parent_of, beta_parent) = super::orient(g, root)?;
    exact_subtree_ratio(
        g,
        target,
        parent_of[target],
        beta_parent[target],
        &mut vec![false; g.len()],
    )
}

fn exact_subtree_ratio(
    g: &TightBindingGraph,
    v: usize,
    parent: usize,
    beta_parent: f64,
    visited: &mut Vec<bool>,
) -> Result<RationalFn, ScatterError> {
    if visited[v] {
        return Err(ScatterError::CycleDetected(g.sites()[v].id));
    }
    visited[v] = true;
    let mut acc_num = Poly::linear(
        -rational(g.alpha_at(v)),
        BigRational::from_integer(1.into()),
    );
    let mut acc_den = Poly::one();
    for &(child, beta_child) in g.neighbours(v) {
        if child == parent {
            continue;
        }
        let r = exact_subtree_ratio(g, child, v, beta_child, visited)?;
        acc_num = acc_num
            .mul(&r.den)
            .sub(&r.num.scale(&rational(beta_child)).mul(&acc_den));
        acc_den = acc_den.mul(&r.den);
    }
    Ok(RationalFn {
        num: acc_den.scale(&rational(beta_parent)),
        den: acc_num,
    })
}

/// Classify from exact leading Laurent coefficients.
pub fn classify_bit_exact(g: &TightBindingGraph) -> Result<GateBit, ScatterError> {
    classify_bit_exact_with(g, -1.0)
}

pub fn classify_bit_exact_with(
    g: &TightBindingGraph,
    root_coupling: f64,
) -> Result<GateBit, ScatterError> {
    let y = exact_tree_output_y(g, root_coupling)?;
    let (order, coeff) = y.leading_behaviour();
    let (value, y_limit) = match order.cmp(&0) {
        std::cmp::Ordering::Less => {
            let sign = if coeff.is_positive() { 1.0 } else { -1.0 };
            (BitValue::Zero, AmplitudeRatio::infinite(sign))
        }
        std::cmp::Ordering::Greater => (BitValue::One, AmplitudeRatio::zero()),
        std::cmp::Ordering::Equal => (
            BitValue::Indeterminate,
            AmplitudeRatio::finite(coeff.to_f64().unwrap_or(f64::NAN)),
        ),
    };
    // |y| has the same limiting magnitude from both sides of E = 0
    Ok(GateBit {
        value,
        y_limit,
        value_below: value,
    })
}
