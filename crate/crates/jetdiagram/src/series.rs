//! Truncated formal power series with exact rational coefficients, and
//! division with remainder after Hironaka.
//!
//! A [`TruncatedSeries`] is known exactly modulo `m^(D+1)` for a finite
//! degree bound `D`, or exactly (an honest polynomial) when the bound is
//! `None`. Coefficients are Taylor coefficients: the series is
//! `sum c_beta * y^beta` over its support.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::multiindex::{Diagram, MultiIndex};
use crate::scalar::{q_is_negative, q_one, q_to_string, Q};
use crate::{Error, Result};

/// A formal power series in `dim` variables, known modulo `m^(bound+1)`
/// (or exactly, when `bound` is `None`). Zero coefficients are never stored
/// and every stored exponent respects the bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    dim: usize,
    bound: Option<u32>,
    coeffs: BTreeMap<MultiIndex, Q>,
}

impl TruncatedSeries {
    pub fn zero(dim: usize, bound: Option<u32>) -> Self {
        TruncatedSeries { dim, bound, coeffs: BTreeMap::new() }
    }

    /// A single term `coeff * y^exp`.
    pub fn monomial(exp: MultiIndex, coeff: Q, bound: Option<u32>) -> Self {
        let mut s = TruncatedSeries::zero(exp.dim(), bound);
        s.add_term(exp, coeff);
        s
    }

    pub fn constant(dim: usize, value: Q) -> Self {
        TruncatedSeries::monomial(MultiIndex::zero(dim), value, None)
    }

    /// Builds a series from `(exponent, coefficient)` pairs, dropping zeros
    /// and anything beyond the bound, and summing duplicate exponents.
    pub fn from_terms(
        dim: usize,
        bound: Option<u32>,
        terms: impl IntoIterator<Item = (MultiIndex, Q)>,
    ) -> Result<Self> {
        let mut s = TruncatedSeries::zero(dim, bound);
        for (exp, c) in terms {
            if exp.dim() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: exp.dim() });
            }
            s.add_term(exp, c);
        }
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The degree bound `D`; `None` means the series is an exact polynomial.
    pub fn bound(&self) -> Option<u32> {
        self.bound
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Iterates over `(exponent, coefficient)` in increasing multi-index
    /// order, which starts at the initial term.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Q)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, exp: &MultiIndex) -> Q {
        self.coeffs.get(exp).cloned().unwrap_or_else(Q::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &MultiIndex> {
        self.coeffs.keys()
    }

    /// The largest total degree appearing in the support (0 for the zero
    /// series).
    pub fn max_degree(&self) -> u32 {
        self.coeffs.keys().map(|e| e.degree()).max().unwrap_or(0)
    }

    /// The initial exponent `exp F`: the minimum of the support in the
    /// multi-index order. `None` for the zero series; whether that means
    /// "zero" or "zero to the bound" is the caller's call, via [`bound`].
    ///
    /// [`bound`]: TruncatedSeries::bound
    pub fn initial_exponent(&self) -> Option<&MultiIndex> {
        self.coeffs.keys().next()
    }

    /// The initial exponent together with its coefficient.
    pub fn initial_term(&self) -> Option<(&MultiIndex, &Q)> {
        self.coeffs.iter().next()
    }

    fn admits(&self, exp: &MultiIndex) -> bool {
        match self.bound {
            Some(d) => exp.degree() <= d,
            None => true,
        }
    }

    fn add_term(&mut self, exp: MultiIndex, c: Q) {
        if c.is_zero() || !self.admits(&exp) {
            return;
        }
        let entry = self.coeffs.entry(exp);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn merged_bound(a: Option<u32>, b: Option<u32>) -> Option<u32> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (Some(x), None) | (None, Some(x)) => Some(x),
            (None, None) => None,
        }
    }

    fn check_dim(&self, other: &TruncatedSeries) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_dim(other)?;
        let mut out =
            TruncatedSeries::zero(self.dim, Self::merged_bound(self.bound, other.bound));
        for (e, c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.add(&other.scale(&-q_one()))
    }

    pub fn scale(&self, factor: &Q) -> TruncatedSeries {
        if factor.is_zero() {
            return TruncatedSeries::zero(self.dim, self.bound);
        }
        TruncatedSeries {
            dim: self.dim,
            bound: self.bound,
            coeffs: self.coeffs.iter().map(|(e, c)| (e.clone(), c * factor)).collect(),
        }
    }

    /// Product, with the conservative bound `min(D_F, D_G)`.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_dim(other)?;
        let mut out =
            TruncatedSeries::zero(self.dim, Self::merged_bound(self.bound, other.bound));
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// Tightens the bound to `bound`, discarding higher-degree terms.
    /// Loosening is refused: the discarded information is not recoverable.
    pub fn truncate(&self, bound: u32) -> Result<TruncatedSeries> {
        if let Some(d) = self.bound {
            if bound > d {
                return Err(Error::InsufficientBound { bound: d, needed: bound });
            }
        }
        let mut out = TruncatedSeries::zero(self.dim, Some(bound));
        for (e, c) in &self.coeffs {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    /// Evaluates an exact polynomial at a rational point.
    pub fn eval(&self, point: &[Q]) -> Result<Q> {
        if self.bound.is_some() {
            return Err(Error::BadArgument(
                "cannot evaluate a truncated series at a point; it is only known modulo a power of the maximal ideal".into(),
            ));
        }
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: point.len() });
        }
        let mut total = Q::zero();
        for (e, c) in &self.coeffs {
            let mut term = c.clone();
            for (i, &power) in e.entries().iter().enumerate() {
                for _ in 0..power {
                    term *= &point[i];
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Substitutes `images[i]` for the `i`-th variable. All images must share
    /// a dimension; the result lives in that dimension. Bounds combine
    /// conservatively, so substituting exact polynomials into an exact
    /// polynomial stays exact.
    pub fn substitute(&self, images: &[TruncatedSeries]) -> Result<TruncatedSeries> {
        if images.len() != self.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: images.len() });
        }
        let target_dim = match images.first() {
            Some(f) => f.dim(),
            None => {
                // no variables: the series is a constant
                let c = self.coefficient(&MultiIndex::zero(0));
                return Ok(TruncatedSeries::monomial(MultiIndex::zero(0), c, None));
            }
        };
        let mut bound = self.bound;
        for f in images {
            if f.dim() != target_dim {
                return Err(Error::DimensionMismatch { left: target_dim, right: f.dim() });
            }
            bound = Self::merged_bound(bound, f.bound());
        }
        let one = TruncatedSeries::monomial(MultiIndex::zero(target_dim), q_one(), bound);
        // image powers, grown on demand
        let mut powers: Vec<Vec<TruncatedSeries>> = vec![Vec::new(); self.dim];
        let mut out = TruncatedSeries::zero(target_dim, bound);
        for (e, c) in &self.coeffs {
            let mut term = one.scale(c);
            for (i, &power) in e.entries().iter().enumerate() {
                if power == 0 {
                    continue;
                }
                while powers[i].len() < power as usize {
                    let next = match powers[i].last() {
                        Some(prev) => prev.mul(&images[i])?,
                        None => images[i].clone().with_bound(bound),
                    };
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][power as usize - 1])?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    fn with_bound(mut self, bound: Option<u32>) -> TruncatedSeries {
        self.bound = Self::merged_bound(self.bound, bound);
        let b = self.bound;
        if let Some(d) = b {
            self.coeffs.retain(|e, _| e.degree() <= d);
        }
        self
    }

    /// Rewrites an exact polynomial in coordinates centered at `b`:
    /// the result `P~` satisfies `P~(y) = P(y + b)` exactly, so its constant
    /// term is `P(b)` and its initial exponent is the local order at `b`.
    pub fn recenter(&self, b: &[Q]) -> Result<TruncatedSeries> {
        if self.bound.is_some() {
            return Err(Error::BadArgument(
                "recentering needs an exact polynomial; this series is truncated".into(),
            ));
        }
        if b.len() != self.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: b.len() });
        }
        let images: Vec<TruncatedSeries> = (0..self.dim)
            .map(|i| {
                let var = TruncatedSeries::monomial(MultiIndex::unit(self.dim, i), q_one(), None);
                var.add(&TruncatedSeries::constant(self.dim, b[i].clone())).unwrap()
            })
            .collect();
        self.substitute(&images)
    }

    /// Renders the series in the session polynomial grammar, naming variable
    /// `i` via `name`. Terms appear in increasing multi-index order.
    pub fn render(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (pos, (e, c)) in self.coeffs.iter().enumerate() {
            let negative = q_is_negative(c);
            let abs = if negative { -c.clone() } else { c.clone() };
            if pos == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || e.degree() == 0 {
                factors.push(q_to_string(&abs));
            }
            for (i, &power) in e.entries().iter().enumerate() {
                match power {
                    0 => {}
                    1 => factors.push(name(i)),
                    p => factors.push(format!("{}^{}", name(i), p)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&|i| format!("y{}", i + 1)))
    }
}

/// The partition of `N^n` induced by a list of exponents `a^1, ..., a^s`:
/// block `i` is `(a^i + N^n)` minus all earlier blocks, and the complement
/// `Delta` is what no block claims. Ties go to the first matching index.
#[derive(Debug, Clone)]
pub struct DeltaDecomposition {
    dim: usize,
    exponents: Vec<MultiIndex>,
}

/// Where a multi-index lands in a [`DeltaDecomposition`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaClass {
    /// Claimed by block `i` (0-based): dominated by `a^i` and by no earlier one.
    Block(usize),
    /// In the complement `Delta`.
    Complement,
}

impl DeltaDecomposition {
    pub fn new(dim: usize, exponents: Vec<MultiIndex>) -> Result<Self> {
        for e in &exponents {
            if e.dim() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: e.dim() });
            }
        }
        Ok(DeltaDecomposition { dim, exponents })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn blocks(&self) -> usize {
        self.exponents.len()
    }

    pub fn classify(&self, beta: &MultiIndex) -> DeltaClass {
        for (i, e) in self.exponents.iter().enumerate() {
            if e.divides(beta) {
                return DeltaClass::Block(i);
            }
        }
        DeltaClass::Complement
    }
}

/// The outcome of a Hironaka division `G = sum F_i Q_i + R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Division {
    pub quotients: Vec<TruncatedSeries>,
    pub remainder: TruncatedSeries,
    /// The working bound the identity is exact modulo (`None`: fully exact).
    pub working_bound: Option<u32>,
}

/// When every input is an exact polynomial the division loop has no natural
/// stopping degree; it is allowed to run this far past the inputs before
/// giving up with [`Error::DivisionNeedsBound`].
fn exact_division_cap(g: &TruncatedSeries, divisors: &[TruncatedSeries]) -> u32 {
    let input_max =
        divisors.iter().map(TruncatedSeries::max_degree).fold(g.max_degree(), u32::max);
    2 * input_max + 8
}

/// Division with remainder by a finite system of nonzero series.
///
/// Writing `a^i` for the initial exponent of `F_i`, the support of each
/// quotient satisfies `a^i + supp Q_i ⊆ Delta_i` and the remainder is
/// supported in the complement `Delta`; moreover `exp R >= exp G` and
/// `a^i + exp Q_i >= exp G`. These are asserted on every run. The result is
/// exact modulo `m^(D+1)` for `D` the minimum of the input bounds; with all
/// inputs exact the division either terminates exactly or reports that it
/// needs a finite bound.
pub fn hironaka_divide(g: &TruncatedSeries, divisors: &[TruncatedSeries]) -> Result<Division> {
    if divisors.is_empty() {
        return Err(Error::BadArgument("division needs at least one divisor".into()));
    }
    let dim = g.dim();
    let mut bound = g.bound();
    let mut leading: Vec<(MultiIndex, Q)> = Vec::with_capacity(divisors.len());
    for (i, f) in divisors.iter().enumerate() {
        if f.dim() != dim {
            return Err(Error::DimensionMismatch { left: dim, right: f.dim() });
        }
        match f.initial_term() {
            Some((e, c)) => leading.push((e.clone(), c.clone())),
            None => return Err(Error::ZeroDivisor { index: i }),
        }
        bound = TruncatedSeries::merged_bound(bound, f.bound());
    }
    let delta =
        DeltaDecomposition::new(dim, leading.iter().map(|(e, _)| e.clone()).collect())?;
    let cap = match bound {
        Some(d) => d,
        None => exact_division_cap(g, divisors),
    };

    let mut working = g.clone().with_bound(bound);
    let mut quotients = vec![TruncatedSeries::zero(dim, bound); divisors.len()];
    let mut remainder = TruncatedSeries::zero(dim, bound);
    let exp_g = g.initial_exponent().cloned();

    while let Some((gamma, coeff)) = working.initial_term().map(|(e, c)| (e.clone(), c.clone())) {
        if bound.is_none() && gamma.degree() > cap {
            return Err(Error::DivisionNeedsBound { cap });
        }
        match delta.classify(&gamma) {
            DeltaClass::Block(i) => {
                let shift = gamma.checked_sub(&leading[i].0).expect("block membership");
                let factor = &coeff / &leading[i].1;
                quotients[i].add_term(shift.clone(), factor.clone());
                // working -= factor * y^shift * F_i  (cancels gamma exactly;
                // add_term drops anything beyond the working bound)
                for (e, c) in divisors[i].terms() {
                    working.add_term(e.add(&shift), -(&factor * c));
                }
            }
            DeltaClass::Complement => {
                remainder.add_term(gamma.clone(), coeff);
                working.coeffs.remove(&gamma);
            }
        }
    }

    if let Some(exp_g) = &exp_g {
        if let Some(exp_r) = remainder.initial_exponent() {
            assert!(exp_r >= exp_g, "remainder dips below exp G");
        }
        for (i, q) in quotients.iter().enumerate() {
            if let Some(exp_q) = q.initial_exponent() {
                assert!(&exp_q.add(&leading[i].0) >= exp_g, "quotient dips below exp G");
            }
        }
    }
    for (i, q) in quotients.iter().enumerate() {
        for e in q.support() {
            assert_eq!(
                delta.classify(&e.add(&leading[i].0)),
                DeltaClass::Block(i),
                "quotient {i} strayed outside its block"
            );
        }
    }
    for e in remainder.support() {
        assert_eq!(delta.classify(e), DeltaClass::Complement, "remainder strayed into a block");
    }

    Ok(Division { quotients, remainder, working_bound: bound })
}

/// Rewrites `generators` (one per vertex of `diagram`, led by exactly that
/// vertex) into the standard-basis normal form: each output is
/// `y^vertex + tail` with the tail supported in the complement of the
/// diagram. Running the reduction twice is the identity.
pub fn reduce_to_standard_basis(
    generators: &[TruncatedSeries],
    diagram: &Diagram,
) -> Result<Vec<TruncatedSeries>> {
    if generators.is_empty() {
        return Err(Error::BadArgument("standard basis reduction needs generators".into()));
    }
    let mut by_exp: Vec<(MultiIndex, TruncatedSeries)> = Vec::with_capacity(generators.len());
    for g in generators {
        let (e, c) = g
            .initial_term()
            .ok_or(Error::ZeroSeries { bounded: g.bound().is_some() })?;
        by_exp.push((e.clone(), g.scale(&(q_one() / c))));
    }
    by_exp.sort_by(|a, b| a.0.cmp(&b.0));
    let got: Vec<&MultiIndex> = by_exp.iter().map(|(e, _)| e).collect();
    if got.len() != diagram.vertices().len()
        || got.iter().zip(diagram.vertices()).any(|(a, b)| *a != b)
    {
        return Err(Error::ExponentsVsVertices {
            got: got.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" "),
            want: diagram.to_string(),
        });
    }
    let normalized: Vec<TruncatedSeries> = by_exp.iter().map(|(_, g)| g.clone()).collect();
    let mut out = Vec::with_capacity(normalized.len());
    for (vertex, g) in &by_exp {
        let lead = TruncatedSeries::monomial(vertex.clone(), q_one(), g.bound());
        let tail = g.sub(&lead)?;
        let division = hironaka_divide(&tail, &normalized)?;
        out.push(lead.add(&division.remainder)?);
    }
    Ok(out)
}
