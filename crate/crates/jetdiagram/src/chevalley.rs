//! The formal local ideal of a fiber through jets.
//!
//! For a fiber tuple and a truncation degree `k`, the order-`k` shadows
//! `E^{lk}` of the jet kernels decrease as `l` grows and eventually freeze
//! at the jet image of the formal relation ideal. This module scans that
//! descent, decides when to stop, and extracts the diagram, Hilbert–Samuel
//! table, and truncated standard basis from the frozen subspace.
//!
//! Stopping is the honest part. Finiteness of the descent is guaranteed,
//! but no bound is computable from the input alone, so every answer carries
//! a status: `stabilized_window` (unchanged for a configured number of
//! consecutive orders — a heuristic), `matched_oracle` (equal to the jet
//! image of caller-supplied relation generators — certified, since the
//! oracle's image is a lower bound and the shadows are upper bounds), or
//! `budget_exceeded` (ran out of orders; the reported diagram is an
//! estimate from above in the diagram order).

use std::fmt;

use crate::ideals::{
    diagram_from_pivots, ideal_jet_subspace, standard_basis_from_subspace, IdealPresentation,
};
use crate::jets::{e_lk, jet_vector, stacked_jet_matrix, FiberTuple};
use crate::linalg::{ker_theta, RationalMatrix, Subspace};
use crate::multiindex::{indices_up_to, jet_dimension, Diagram, MultiIndex};
use crate::series::TruncatedSeries;
use crate::{Error, Result};

/// How a reported jet-order `l` was chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilizationStatus {
    /// The shadow subspace was unchanged for the configured window of
    /// consecutive orders. Heuristic, not a certificate.
    StabilizedWindow,
    /// The shadow subspace equals the jet image of the supplied relation
    /// generators; squeezed between the two bounds, the value is certified.
    MatchedOracle,
    /// The scan hit its maximal order without meeting either criterion.
    BudgetExceeded,
}

impl StabilizationStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            StabilizationStatus::StabilizedWindow => "stabilized_window",
            StabilizationStatus::MatchedOracle => "matched_oracle",
            StabilizationStatus::BudgetExceeded => "budget_exceeded",
        }
    }

    /// Only an oracle match certifies the result.
    pub fn is_certified(self) -> bool {
        matches!(self, StabilizationStatus::MatchedOracle)
    }
}

impl fmt::Display for StabilizationStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Tuning knobs for the stabilization scan.
#[derive(Debug, Clone, Default)]
pub struct ChevalleyOptions {
    /// Consecutive unchanged orders required by the window heuristic;
    /// `None` means the default of 2.
    pub window: Option<u32>,
    /// Largest jet order to try; `None` means `3k + 6`.
    pub l_max: Option<u32>,
    /// Relation generators in coordinates centered at the image point; when
    /// present, the scan stops (certified) as soon as the shadow equals
    /// their jet image.
    pub oracle: Option<IdealPresentation>,
}

pub fn default_l_max(k: u32) -> u32 {
    3 * k + 6
}

/// The order-`k` shadow of the order-`l` jet kernel of the fiber: the
/// candidate for the jet image of the formal relation ideal, exact for the
/// given `l` and equal to the true image once `l` is large enough.
pub fn formal_ideal_jet(fiber: &FiberTuple, k: u32, l: u32) -> Result<Subspace> {
    e_lk(fiber, k, l)
}

/// Checks that every oracle generator really is a relation — its pullback
/// along the map vanishes identically, which is decidable because both
/// sides are polynomials — and returns the oracle's jet image. This check
/// is what upgrades a `matched_oracle` into a certificate: a verified
/// oracle bounds the true ideal from below, the shadows bound it from
/// above, and equality squeezes.
fn verified_oracle_image(
    fiber: &FiberTuple,
    ideal: &IdealPresentation,
    k: u32,
) -> Result<Subspace> {
    if ideal.dim() != fiber.map().target_dim() {
        return Err(Error::DimensionMismatch {
            left: fiber.map().target_dim(),
            right: ideal.dim(),
        });
    }
    for g in ideal.generators() {
        if g.bound().is_some() {
            return Err(Error::BadArgument(
                "oracle generators must be exact polynomials to certify anything".into(),
            ));
        }
        // the generator is centered at the image point; undo that before
        // composing with the map
        let uncentered = g.recenter(&fiber.base().iter().map(|b| -b).collect::<Vec<_>>())?;
        if !fiber.map().pull_back(&uncentered)?.is_zero() {
            return Err(Error::BadArgument(format!(
                "oracle generator {} is not a relation of the map at this point",
                g
            )));
        }
    }
    ideal_jet_subspace(ideal, k)
}

/// Scans `l = k, k+1, ...` and returns the chosen order with its status.
///
/// The estimate is the smallest `l` at which the shadow no longer changes;
/// the window heuristic reports the first order of an unbroken run, the
/// oracle mode the first order achieving the match.
pub fn chevalley_estimate(
    fiber: &FiberTuple,
    k: u32,
    options: &ChevalleyOptions,
) -> Result<(u32, StabilizationStatus)> {
    let window = options.window.unwrap_or(2);
    if window == 0 {
        return Err(Error::BadArgument("stabilization window must be at least 1".into()));
    }
    let l_max = options.l_max.unwrap_or_else(|| default_l_max(k));
    if l_max < k {
        return Err(Error::BadArgument(format!(
            "maximal jet order {l_max} is below the truncation degree {k}"
        )));
    }
    let oracle_image = match &options.oracle {
        Some(ideal) => Some(verified_oracle_image(fiber, ideal, k)?),
        None => None,
    };

    let mut previous: Option<(u32, Subspace)> = None;
    let mut run_start = 0u32;
    let mut run_length = 0u32;
    for l in k..=l_max {
        let shadow = formal_ideal_jet(fiber, k, l)?;
        if let Some((_, prev)) = &previous {
            assert!(
                shadow.is_subspace_of(prev)?,
                "jet-kernel shadows must shrink as the order grows"
            );
        }
        if let Some(oracle) = &oracle_image {
            assert!(
                oracle.is_subspace_of(&shadow)?,
                "a verified relation ideal is a lower bound for every shadow"
            );
            if oracle == &shadow {
                return Ok((l, StabilizationStatus::MatchedOracle));
            }
        } else {
            match &previous {
                Some((_, prev)) if prev == &shadow => {
                    run_length += 1;
                    if run_length >= window {
                        return Ok((run_start, StabilizationStatus::StabilizedWindow));
                    }
                }
                _ => {
                    run_start = l;
                    run_length = 0;
                }
            }
        }
        previous = Some((l, shadow));
    }
    Ok((l_max, StabilizationStatus::BudgetExceeded))
}

/// The truncated order of `f` relative to a jet subspace: the largest
/// `l <= k+1` such that the `k`-jet of `f` lies in `rk` plus the jets of
/// order at least `l`. A return of `k+1` means "at least `k+1`": the jet
/// lies in `rk` itself and the truncation sees no further.
pub fn nu_truncated(f: &TruncatedSeries, rk: &Subspace, k: u32) -> Result<u32> {
    let n = f.dim();
    let ambient = jet_dimension(n, k);
    if rk.ambient() != ambient {
        return Err(Error::DimensionMismatch { left: ambient, right: rk.ambient() });
    }
    let jet = jet_vector(f, k)?;
    let coords = indices_up_to(n, k);
    for l in 1..=k + 1 {
        let tail: Vec<Vec<crate::scalar::Q>> = coords
            .iter()
            .enumerate()
            .filter(|(_, beta)| beta.degree() >= l)
            .map(|(i, _)| {
                let mut e = vec![crate::scalar::q_zero(); ambient];
                e[i] = crate::scalar::q_one();
                e
            })
            .collect();
        let enlarged = rk.sum(&Subspace::from_spanning(ambient, tail)?)?;
        if !enlarged.contains_vector(&jet)? {
            return Ok(l - 1);
        }
    }
    Ok(k + 1)
}

/// The full local answer at one fiber tuple.
#[derive(Debug, Clone)]
pub struct DiagramReport {
    /// Caller-supplied name for the tuple or sample.
    pub label: String,
    pub k: u32,
    pub l_used: u32,
    pub status: StabilizationStatus,
    /// Vertices of degree at most `k` only.
    pub diagram: Diagram,
    /// `H(0), ..., H(k)` computed from the diagram.
    pub hs_table: Vec<u64>,
    /// One generator per vertex, reduced, truncated at degree `k`.
    pub standard_basis: Vec<TruncatedSeries>,
}

/// Computes the diagram of initial exponents at a fiber tuple, together
/// with the Hilbert–Samuel table and the truncated standard basis.
///
/// With `l = None` the jet order comes from [`chevalley_estimate`] under
/// the given options; an explicit `l` is honored as-is and — unless an
/// oracle certifies it — reported as `budget_exceeded`, because nothing
/// vouches for stabilization at a hand-picked order.
pub fn diagram_at_point(
    fiber: &FiberTuple,
    label: impl Into<String>,
    k: u32,
    l: Option<u32>,
    options: &ChevalleyOptions,
) -> Result<DiagramReport> {
    let (l_used, status) = match l {
        None => chevalley_estimate(fiber, k, options)?,
        Some(explicit) => {
            if explicit < k {
                return Err(Error::BadArgument(format!(
                    "jet order {explicit} is below the truncation degree {k}"
                )));
            }
            let mut status = StabilizationStatus::BudgetExceeded;
            if let Some(ideal) = &options.oracle {
                let oracle = verified_oracle_image(fiber, ideal, k)?;
                let shadow = formal_ideal_jet(fiber, k, explicit)?;
                assert!(
                    oracle.is_subspace_of(&shadow)?,
                    "a verified relation ideal is a lower bound for every shadow"
                );
                if oracle == shadow {
                    status = StabilizationStatus::MatchedOracle;
                }
            }
            (explicit, status)
        }
    };
    let shadow = formal_ideal_jet(fiber, k, l_used)?;
    let n = fiber.map().target_dim();
    let diagram = diagram_from_pivots(n, k, &shadow);
    let hs_table = diagram.hilbert_samuel_table(k);
    // The pivot set is closed under adding unit vectors within degree k
    // (multiplying a kernel element by a centered coordinate stays in the
    // kernel), so the staircase complement count must agree with the
    // codimension of the shadow — at every order, stabilized or not.
    assert_eq!(
        hs_table[k as usize],
        jet_dimension(n, k) as u64 - shadow.dim() as u64,
        "pivot staircase must account for the whole shadow codimension"
    );
    let standard_basis = standard_basis_from_subspace(n, k, &shadow)?;
    Ok(DiagramReport {
        label: label.into(),
        k,
        l_used,
        status,
        diagram,
        hs_table,
        standard_basis,
    })
}

/// Decides whether `alpha` belongs to the diagram of the fiber tuple, given
/// the part of the diagram below `alpha` (`nminus`) and a jet order `l`
/// the caller believes sufficient.
///
/// The test restricts the stacked jet matrix to the coordinates outside
/// `nminus`, splits the columns at `alpha` into a low block `A` (exponents
/// up to and including `alpha`) and a high block `B`, and asks whether some
/// low combination is matched by high ones: `alpha` is in the diagram
/// exactly when `{eta : A eta ∈ Im B}` is nonzero.
pub fn alpha_membership_test(
    fiber: &FiberTuple,
    alpha: &MultiIndex,
    nminus: &Diagram,
    l: u32,
) -> Result<bool> {
    let n = fiber.map().target_dim();
    if alpha.dim() != n {
        return Err(Error::DimensionMismatch { left: n, right: alpha.dim() });
    }
    if nminus.dim() != n {
        return Err(Error::DimensionMismatch { left: n, right: nminus.dim() });
    }
    if nminus.contains(alpha) {
        // alpha is already forced into the diagram by the known part
        return Ok(true);
    }
    let stacked = stacked_jet_matrix(fiber, l)?;
    let coords = indices_up_to(n, l);
    let mut low = Vec::new();
    let mut high = Vec::new();
    for (i, beta) in coords.iter().enumerate() {
        if nminus.contains(beta) {
            continue;
        }
        if beta <= alpha {
            low.push(i);
        } else {
            high.push(i);
        }
    }
    let a: RationalMatrix = stacked.select_columns(&low);
    let b: RationalMatrix = stacked.select_columns(&high);
    Ok(ker_theta(&a, &b)?.dim() > 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::PolynomialMap;
    use crate::scalar::{q_from, q_zero};

    fn mi(entries: &[u32]) -> MultiIndex {
        MultiIndex::new(entries.to_vec())
    }

    fn poly(dim: usize, terms: &[(&[u32], i64)]) -> TruncatedSeries {
        TruncatedSeries::from_terms(
            dim,
            None,
            terms
                .iter()
                .map(|(e, c)| (mi(e), q_from(*c)))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    fn cusp_fiber() -> FiberTuple {
        let map =
            PolynomialMap::new(1, vec![poly(1, &[(&[2], 1)]), poly(1, &[(&[3], 1)])]).unwrap();
        FiberTuple::single(map, vec![q_zero()]).unwrap()
    }

    fn cusp_oracle() -> IdealPresentation {
        IdealPresentation::new(2, "rel", vec![poly(2, &[(&[0, 2], 1), (&[3, 0], -1)])]).unwrap()
    }

    fn with_oracle(oracle: IdealPresentation) -> ChevalleyOptions {
        ChevalleyOptions { oracle: Some(oracle), ..Default::default() }
    }

    #[test]
    fn cusp_estimates_are_certified_by_the_relation() {
        let fiber = cusp_fiber();
        let (l1, s1) = chevalley_estimate(&fiber, 1, &with_oracle(cusp_oracle())).unwrap();
        assert_eq!((l1, s1), (3, StabilizationStatus::MatchedOracle));
        let (l2, s2) = chevalley_estimate(&fiber, 2, &with_oracle(cusp_oracle())).unwrap();
        assert_eq!((l2, s2), (5, StabilizationStatus::MatchedOracle));
    }

    #[test]
    fn identity_map_stabilizes_immediately() {
        let id = PolynomialMap::new(
            2,
            vec![poly(2, &[(&[1, 0], 1)]), poly(2, &[(&[0, 1], 1)])],
        )
        .unwrap();
        let fiber = FiberTuple::single(id, vec![q_from(2), q_from(-1)]).unwrap();
        for k in 0..=2 {
            let (l, s) = chevalley_estimate(&fiber, k, &ChevalleyOptions::default()).unwrap();
            assert_eq!((l, s), (k, StabilizationStatus::StabilizedWindow));
            assert_eq!(formal_ideal_jet(&fiber, k, l).unwrap().dim(), 0);
        }
    }

    #[test]
    fn constant_map_sees_the_whole_maximal_ideal() {
        let zero = PolynomialMap::new(
            1,
            vec![TruncatedSeries::zero(1, None), TruncatedSeries::zero(1, None)],
        )
        .unwrap();
        // target dimension is read from the component count
        assert_eq!(zero.target_dim(), 2);
        let fiber = FiberTuple::single(zero, vec![q_zero()]).unwrap();
        let shadow = formal_ideal_jet(&fiber, 1, 4).unwrap();
        // everything but the constant jet dies on a constant map
        assert_eq!(shadow.dim(), 2);
        assert_eq!(shadow.pivots(), &[1, 2]);
    }

    #[test]
    fn tight_budget_is_reported() {
        let fiber = cusp_fiber();
        let opts = ChevalleyOptions { l_max: Some(2), ..Default::default() };
        let (l, s) = chevalley_estimate(&fiber, 1, &opts).unwrap();
        assert_eq!((l, s), (2, StabilizationStatus::BudgetExceeded));
        // and a budget below k is a caller error
        let bad = ChevalleyOptions { l_max: Some(0), ..Default::default() };
        assert!(matches!(
            chevalley_estimate(&fiber, 1, &bad),
            Err(Error::BadArgument(_))
        ));
    }

    #[test]
    fn wrong_oracle_is_rejected_loudly() {
        let fiber = cusp_fiber();
        let not_a_relation =
            IdealPresentation::new(2, "bad", vec![poly(2, &[(&[0, 1], 1)])]).unwrap();
        assert!(matches!(
            chevalley_estimate(&fiber, 1, &with_oracle(not_a_relation)),
            Err(Error::BadArgument(_))
        ));
    }

    #[test]
    fn truncated_order_on_the_cusp() {
        let fiber = cusp_fiber();
        let k = 2;
        let rk = formal_ideal_jet(&fiber, k, 5).unwrap();
        assert_eq!(nu_truncated(&poly(2, &[(&[1, 0], 1)]), &rk, k).unwrap(), 1);
        // a member of the subspace is beyond the truncation's sight
        assert_eq!(
            nu_truncated(&poly(2, &[(&[0, 2], 1), (&[3, 0], -1)]), &rk, k).unwrap(),
            k + 1
        );
        assert_eq!(nu_truncated(&poly(2, &[(&[0, 0], 1)]), &rk, k).unwrap(), 0);
        // membership in rk is exactly "nu beyond k"
        let y2 = poly(2, &[(&[0, 1], 1)]);
        let nu = nu_truncated(&y2, &rk, k).unwrap();
        let in_rk = rk.contains_vector(&jet_vector(&y2.truncate(k).unwrap(), k).unwrap()).unwrap();
        assert_eq!(nu > k, in_rk);
    }

    #[test]
    fn cusp_diagram_report_via_the_oracle() {
        let fiber = cusp_fiber();
        let report =
            diagram_at_point(&fiber, "cusp", 4, None, &with_oracle(cusp_oracle())).unwrap();
        assert_eq!(report.l_used, 9);
        assert_eq!(report.status, StabilizationStatus::MatchedOracle);
        assert_eq!(report.diagram.vertices(), &[mi(&[0, 2])]);
        assert_eq!(report.hs_table, vec![1, 3, 5, 7, 9]);
        assert_eq!(
            report.standard_basis,
            vec![poly(2, &[(&[0, 2], 1), (&[3, 0], -1)]).truncate(4).unwrap()]
        );
    }

    #[test]
    fn one_order_short_the_shadow_carries_a_spurious_vertex() {
        // at l = 8 the degree-9 cancellation between y2^3 and y1^3 y2 is
        // invisible, so the shadow is one dimension too big and its
        // staircase sprouts an extra vertex at (3,1)
        let fiber = cusp_fiber();
        let report =
            diagram_at_point(&fiber, "cusp", 4, Some(8), &ChevalleyOptions::default()).unwrap();
        assert_eq!(report.status, StabilizationStatus::BudgetExceeded);
        assert_eq!(report.diagram.vertices(), &[mi(&[0, 2]), mi(&[3, 1])]);
        assert_eq!(formal_ideal_jet(&fiber, 4, 8).unwrap().dim(), 7);
        assert_eq!(formal_ideal_jet(&fiber, 4, 9).unwrap().dim(), 6);
        // the explicit l = 9 with the oracle is certified
        let nine =
            diagram_at_point(&fiber, "cusp", 4, Some(9), &with_oracle(cusp_oracle())).unwrap();
        assert_eq!(nine.status, StabilizationStatus::MatchedOracle);
        assert_eq!(nine.diagram.vertices(), &[mi(&[0, 2])]);
    }

    #[test]
    fn surface_point_has_an_order_one_diagram() {
        // (u,t) -> (u, t^2, t^3 + u t) at (1,0); relation y3^2 - y2(y1+y2)^2
        let surf = PolynomialMap::new(
            2,
            vec![
                poly(2, &[(&[1, 0], 1)]),
                poly(2, &[(&[0, 2], 1)]),
                poly(2, &[(&[0, 3], 1), (&[1, 1], 1)]),
            ],
        )
        .unwrap();
        let fiber = FiberTuple::single(surf, vec![q_from(1), q_zero()]).unwrap();
        let relation = IdealPresentation::new(
            3,
            "rel",
            vec![poly(
                3,
                &[(&[0, 0, 2], 1), (&[2, 1, 0], -1), (&[1, 2, 0], -2), (&[0, 3, 0], -1)],
            )],
        )
        .unwrap();
        let oracle = relation.recenter(&[q_from(1), q_zero(), q_zero()]).unwrap();
        let report = diagram_at_point(&fiber, "surf", 3, None, &with_oracle(oracle)).unwrap();
        assert_eq!(report.status, StabilizationStatus::MatchedOracle);
        assert_eq!(report.diagram.vertices(), &[mi(&[0, 1, 0])]);
        assert_eq!(report.hs_table, vec![1, 3, 6, 10]);
    }

    #[test]
    fn alpha_membership_matches_the_cusp_diagram() {
        let fiber = cusp_fiber();
        let empty = Diagram::from_vertices(2, vec![]).unwrap();
        assert!(alpha_membership_test(&fiber, &mi(&[0, 2]), &empty, 6).unwrap());
        assert!(!alpha_membership_test(&fiber, &mi(&[1, 0]), &empty, 6).unwrap());
        assert!(!alpha_membership_test(&fiber, &mi(&[0, 1]), &empty, 6).unwrap());
        // anything the known part already dominates is vacuously in
        let known = Diagram::from_vertices(2, vec![mi(&[0, 2])]).unwrap();
        assert!(alpha_membership_test(&fiber, &mi(&[1, 2]), &known, 4).unwrap());
    }

    #[test]
    fn alpha_membership_agrees_with_the_extracted_diagram() {
        let fiber = cusp_fiber();
        let k = 3;
        let report =
            diagram_at_point(&fiber, "cusp", k, None, &with_oracle(cusp_oracle())).unwrap();
        let l = report.l_used;
        for alpha in indices_up_to(2, k) {
            // feed the test the part of the true diagram below alpha
            let below: Vec<MultiIndex> = report
                .diagram
                .vertices()
                .iter()
                .filter(|v| *v < &alpha)
                .cloned()
                .collect();
            let nminus = Diagram::from_vertices(2, below).unwrap();
            let verdict = alpha_membership_test(&fiber, &alpha, &nminus, l).unwrap();
            assert_eq!(
                verdict,
                report.diagram.contains(&alpha),
                "membership of {alpha} disagrees with the diagram"
            );
        }
    }
}
