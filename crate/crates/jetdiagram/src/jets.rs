//! Jets of polynomial maps.
//!
//! For a polynomial map `phi : Q^m -> Q^n`, a source point `a`, and its
//! image `b = phi(a)`, the jet matrix records, column by column, the Taylor
//! expansion of `(phi(x) - b)^beta` at `a`. Its kernel consists of the
//! degree-`l` jets of target polynomials that compose with `phi` to
//! something flat to order `l` — the fundamental object from which
//! diagrams, Hilbert–Samuel data, and stabilization levels are extracted.
//!
//! Coordinates on both sides are Taylor coefficients: a polynomial `G`
//! corresponds to the vector of its coefficients in the recentred monomial
//! basis, listed in the ascending monomial order of
//! [`crate::multiindex::indices_up_to`].

use std::collections::HashMap;

use crate::multiindex::{indices_up_to, jet_dimension, MultiIndex};
use crate::scalar::{q_one, Q};
use crate::series::TruncatedSeries;
use crate::linalg::{RationalMatrix, Subspace};
use crate::{Error, Result};

/// A polynomial map `Q^source_dim -> Q^(number of components)`; every
/// component is an exact polynomial (no truncation bound).
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialMap {
    source_dim: usize,
    components: Vec<TruncatedSeries>,
}

impl PolynomialMap {
    pub fn new(source_dim: usize, components: Vec<TruncatedSeries>) -> Result<Self> {
        for c in &components {
            if c.dim() != source_dim {
                return Err(Error::DimensionMismatch { left: source_dim, right: c.dim() });
            }
            if c.bound().is_some() {
                return Err(Error::BadArgument(
                    "map components must be exact polynomials, not truncated series".into(),
                ));
            }
        }
        Ok(PolynomialMap { source_dim, components })
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[TruncatedSeries] {
        &self.components
    }

    pub fn eval(&self, point: &[Q]) -> Result<Vec<Q>> {
        if point.len() != self.source_dim {
            return Err(Error::DimensionMismatch { left: self.source_dim, right: point.len() });
        }
        self.components.iter().map(|c| c.eval(point)).collect()
    }

    /// Composes a target-side series with this map: `g(phi(x))`.
    pub fn pull_back(&self, g: &TruncatedSeries) -> Result<TruncatedSeries> {
        if g.dim() != self.target_dim() {
            return Err(Error::DimensionMismatch { left: self.target_dim(), right: g.dim() });
        }
        g.substitute(&self.components)
    }
}

/// A finite set of source points sharing one image point `b`.
#[derive(Debug, Clone)]
pub struct FiberTuple {
    map: PolynomialMap,
    points: Vec<Vec<Q>>,
    base: Vec<Q>,
}

impl FiberTuple {
    pub fn new(map: PolynomialMap, points: Vec<Vec<Q>>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::FiberMismatch("a fiber tuple needs at least one point".into()));
        };
        let base = map.eval(first)?;
        for (i, p) in points.iter().enumerate().skip(1) {
            let image = map.eval(p)?;
            if image != base {
                return Err(Error::FiberMismatch(format!(
                    "points 1 and {} map to different values",
                    i + 1
                )));
            }
        }
        Ok(FiberTuple { map, points, base })
    }

    pub fn single(map: PolynomialMap, point: Vec<Q>) -> Result<Self> {
        FiberTuple::new(map, vec![point])
    }

    pub fn map(&self) -> &PolynomialMap {
        &self.map
    }

    pub fn points(&self) -> &[Vec<Q>] {
        &self.points
    }

    /// The common image of the points.
    pub fn base(&self) -> &[Q] {
        &self.base
    }
}

/// The coefficient vector of `g` on the monomials of degree at most `l`,
/// in ascending monomial order. `g` must carry information to degree `l`.
pub fn jet_vector(g: &TruncatedSeries, l: u32) -> Result<Vec<Q>> {
    if let Some(b) = g.bound() {
        if b < l {
            return Err(Error::InsufficientBound { bound: b, needed: l });
        }
    }
    Ok(indices_up_to(g.dim(), l).iter().map(|alpha| g.coefficient(alpha)).collect())
}

/// The jet matrix of `map` at `point` to order `l`, with columns restricted
/// to the given target exponents: entry `(alpha, beta)` is the coefficient
/// of `(x - point)^alpha` in `(phi(x) - phi(point))^beta`.
pub fn jet_matrix_for_exponents(
    map: &PolynomialMap,
    point: &[Q],
    betas: &[MultiIndex],
    l: u32,
) -> Result<RationalMatrix> {
    let n = map.target_dim();
    let base = map.eval(point)?;
    // centred components phi_j(x) - b_j, expanded around the point and
    // truncated to degree l from the outset
    let centred: Vec<TruncatedSeries> = map
        .components
        .iter()
        .zip(&base)
        .map(|(c, b)| {
            c.recenter(point)?
                .sub(&TruncatedSeries::constant(map.source_dim, b.clone()))?
                .truncate(l)
        })
        .collect::<Result<_>>()?;
    let one = TruncatedSeries::constant(map.source_dim, q_one()).truncate(l)?;
    let mut powers: HashMap<MultiIndex, TruncatedSeries> = HashMap::new();
    powers.insert(MultiIndex::zero(n), one);

    let rows = indices_up_to(map.source_dim, l);
    let row_of: HashMap<&MultiIndex, usize> =
        rows.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let mut out = RationalMatrix::zero(rows.len(), betas.len());
    for (j, beta) in betas.iter().enumerate() {
        if beta.dim() != n {
            return Err(Error::DimensionMismatch { left: n, right: beta.dim() });
        }
        let product = power_of(&centred, beta, &mut powers)?;
        debug_assert!(
            product
                .initial_exponent()
                .is_none_or(|e| e.degree() >= beta.degree()),
            "a product of order-one factors must vanish to the order of its exponent"
        );
        for (alpha, coeff) in product.terms() {
            out.set(row_of[alpha], j, coeff.clone());
        }
    }
    Ok(out)
}

/// Computes `centred^beta` with memoization over previously seen exponents.
fn power_of(
    centred: &[TruncatedSeries],
    beta: &MultiIndex,
    memo: &mut HashMap<MultiIndex, TruncatedSeries>,
) -> Result<TruncatedSeries> {
    if let Some(hit) = memo.get(beta) {
        return Ok(hit.clone());
    }
    let j = beta
        .entries()
        .iter()
        .position(|&e| e > 0)
        .expect("zero exponent is pre-seeded");
    let prev = beta
        .checked_sub(&MultiIndex::unit(beta.dim(), j))
        .expect("entry j is positive");
    let below = power_of(centred, &prev, memo)?;
    let product = below.mul(&centred[j])?;
    memo.insert(beta.clone(), product.clone());
    Ok(product)
}

/// The full jet matrix at one point: columns are all target exponents of
/// degree at most `l` in ascending order.
pub fn jet_matrix(map: &PolynomialMap, point: &[Q], l: u32) -> Result<RationalMatrix> {
    jet_matrix_for_exponents(map, point, &indices_up_to(map.target_dim(), l), l)
}

/// Jet matrices of all points of the fiber tuple, stacked vertically.
pub fn stacked_jet_matrix(fiber: &FiberTuple, l: u32) -> Result<RationalMatrix> {
    let mut stacked: Option<RationalMatrix> = None;
    for p in fiber.points() {
        let m = jet_matrix(fiber.map(), p, l)?;
        stacked = Some(match stacked {
            None => m,
            Some(s) => s.vstack(&m)?,
        });
    }
    Ok(stacked.expect("fiber tuples are nonempty"))
}

/// The kernel of the stacked jet matrix: jets of degree at most `l` whose
/// pullback along every point of the fiber vanishes to order `l`.
pub fn e_subspace(fiber: &FiberTuple, l: u32) -> Result<Subspace> {
    Ok(stacked_jet_matrix(fiber, l)?.kernel())
}

/// The order-`k` shadow of [`e_subspace`]: its projection onto the
/// coordinates of degree at most `k`. Requires `k <= l`.
pub fn e_lk(fiber: &FiberTuple, k: u32, l: u32) -> Result<Subspace> {
    if k > l {
        return Err(Error::BadArgument(format!(
            "projection degree {k} exceeds the jet order {l}"
        )));
    }
    e_subspace(fiber, l)?.project_prefix(jet_dimension(fiber.map().target_dim(), k))
}
