//! Sample-level exploration of how local invariants vary: diagrams along
//! polynomial arcs, generic-diagram estimates, semicontinuity verification
//! at a limit point, membership in diagram-defined loci, and rank tests for
//! distinguishing fiber tuples.
//!
//! Nothing here replaces the geometry: arcs are user-supplied polynomial
//! curves, "generic" means "the minimum over the sampled parameters", and
//! every verdict carries the stabilization statuses of the underlying
//! computations so an uncertified limit can never silently pass.

use std::cmp::Ordering;

use crate::chevalley::{diagram_at_point, ChevalleyOptions, DiagramReport, StabilizationStatus};
use crate::ideals::IdealPresentation;
use crate::jets::{stacked_jet_matrix, FiberTuple, PolynomialMap};
use crate::multiindex::Diagram;
use crate::scalar::{q_to_string, Q};
use crate::series::TruncatedSeries;
use crate::{Error, Result};

/// Finitely many polynomial curves in the source of a map, required to
/// share their image curve: a moving fiber tuple.
#[derive(Debug, Clone)]
pub struct Arc {
    map: PolynomialMap,
    curves: Vec<Vec<TruncatedSeries>>,
}

impl Arc {
    /// Validates symbolically — as polynomial identities in the parameter —
    /// that all curves have the same image under the map.
    pub fn new(map: PolynomialMap, curves: Vec<Vec<TruncatedSeries>>) -> Result<Self> {
        if curves.is_empty() {
            return Err(Error::ArcMismatch("an arc needs at least one curve".into()));
        }
        for c in &curves {
            if c.len() != map.source_dim() {
                return Err(Error::DimensionMismatch {
                    left: map.source_dim(),
                    right: c.len(),
                });
            }
            for p in c {
                if p.dim() != 1 {
                    return Err(Error::DimensionMismatch { left: 1, right: p.dim() });
                }
                if p.bound().is_some() {
                    return Err(Error::ArcMismatch(
                        "arc curves must be exact polynomials in the parameter".into(),
                    ));
                }
            }
        }
        let reference: Vec<TruncatedSeries> = map
            .components()
            .iter()
            .map(|c| c.substitute(&curves[0]))
            .collect::<Result<_>>()?;
        for (i, curve) in curves.iter().enumerate().skip(1) {
            for (j, c) in map.components().iter().enumerate() {
                let image = c.substitute(curve)?;
                if image != reference[j] {
                    return Err(Error::ArcMismatch(format!(
                        "curves 1 and {} disagree on target coordinate {}: {} vs {}",
                        i + 1,
                        j + 1,
                        reference[j],
                        image
                    )));
                }
            }
        }
        Ok(Arc { map, curves })
    }

    pub fn map(&self) -> &PolynomialMap {
        &self.map
    }

    pub fn curves(&self) -> &[Vec<TruncatedSeries>] {
        &self.curves
    }

    /// The fiber tuple at a parameter value.
    pub fn fiber_at(&self, t: &Q) -> Result<FiberTuple> {
        let points = self
            .curves
            .iter()
            .map(|curve| curve.iter().map(|p| p.eval(std::slice::from_ref(t))).collect())
            .collect::<Result<Vec<Vec<Q>>>>()?;
        FiberTuple::new(self.map.clone(), points)
    }
}

/// Sampling policy for an arc: truncation degree aside, how far to push
/// the jet order and what (if anything) certifies the answers. A supplied
/// oracle is stated in the target coordinates of the map and recentered at
/// each sample's image automatically.
#[derive(Debug, Clone, Default)]
pub struct ArcOptions {
    pub explicit_l: Option<u32>,
    pub window: Option<u32>,
    pub l_max: Option<u32>,
    pub oracle: Option<IdealPresentation>,
}

/// Diagrams and Hilbert–Samuel data along an arc, limit sample included.
#[derive(Debug, Clone)]
pub struct ArcReport {
    /// Strictly decreasing positive samples followed by the limit 0.
    pub samples: Vec<Q>,
    /// One report per sample, parallel to `samples`.
    pub reports: Vec<DiagramReport>,
}

/// Runs [`diagram_at_point`] at every sample of the arc, in coordinates
/// centered at the sample's image. Samples must include 0, the limit.
pub fn diagram_along_arc(
    arc: &Arc,
    samples: &[Q],
    k: u32,
    options: &ArcOptions,
) -> Result<ArcReport> {
    let mut cleaned: Vec<Q> = Vec::new();
    for s in samples {
        if crate::scalar::q_is_negative(s) {
            return Err(Error::BadArgument(format!(
                "arc samples must be nonnegative, got {}",
                q_to_string(s)
            )));
        }
        if !cleaned.contains(s) {
            cleaned.push(s.clone());
        }
    }
    cleaned.sort_by(|a, b| b.cmp(a)); // descending, limit last
    if cleaned.last().is_none_or(|s| !num_traits::Zero::is_zero(s)) {
        return Err(Error::BadArgument("arc samples must include the limit 0".into()));
    }
    let mut reports = Vec::with_capacity(cleaned.len());
    for t in &cleaned {
        let fiber = arc.fiber_at(t)?;
        let oracle = match &options.oracle {
            Some(ideal) => Some(ideal.recenter(fiber.base())?),
            None => None,
        };
        let chev = ChevalleyOptions { window: options.window, l_max: options.l_max, oracle };
        let label = format!("t={}", q_to_string(t));
        reports.push(diagram_at_point(&fiber, label, k, options.explicit_l, &chev)?);
    }
    Ok(ArcReport { samples: cleaned, reports })
}

impl ArcReport {
    pub fn limit_report(&self) -> &DiagramReport {
        self.reports.last().expect("reports are never empty")
    }

    pub fn nonlimit_reports(&self) -> &[DiagramReport] {
        &self.reports[..self.reports.len() - 1]
    }

    /// Groups sample indices by equal diagrams, in order of first
    /// appearance along the (descending) sample list.
    pub fn diagram_classes(&self) -> Vec<(Diagram, Vec<usize>)> {
        let mut classes: Vec<(Diagram, Vec<usize>)> = Vec::new();
        for (i, r) in self.reports.iter().enumerate() {
            match classes.iter_mut().find(|(d, _)| d == &r.diagram) {
                Some((_, members)) => members.push(i),
                None => classes.push((r.diagram.clone(), vec![i])),
            }
        }
        classes
    }
}

/// The minimum diagram over the nonlimit samples — a certified lower bound
/// for the generic diagram along the arc — plus a flag raised when the
/// samples disagree (the grid has straddled more than one stratum).
pub fn generic_diagram_estimate(nonlimit: &[DiagramReport]) -> Result<(Diagram, bool)> {
    let Some(first) = nonlimit.first() else {
        return Err(Error::BadArgument(
            "generic diagram estimation needs at least one nonlimit sample".into(),
        ));
    };
    let mut min = first.diagram.clone();
    let mut disagreement = false;
    for r in &nonlimit[1..] {
        match r.diagram.compare(&min)? {
            Ordering::Less => {
                disagreement = true;
                min = r.diagram.clone();
            }
            Ordering::Greater => disagreement = true,
            Ordering::Equal => {}
        }
    }
    Ok((min, disagreement))
}

/// The outcome of a semicontinuity check at the limit of an arc.
#[derive(Debug, Clone)]
pub struct SemicontinuityVerdict {
    pub pass: bool,
    /// Limit diagram versus the generic estimate.
    pub diagram_comparison: Ordering,
    /// `H_limit(j) - H_generic(j)` for `j = 0..=k`; all must be >= 0.
    pub hs_margins: Vec<i64>,
    /// Nonlimit samples did not all share one diagram.
    pub sampling_disagreement: bool,
    /// Every sample, limit included, was certified by an oracle match.
    pub all_certified: bool,
}

/// Verifies, at sample level, that the limit dominates the generic data:
/// the limit diagram is `>=` the generic estimate in the diagram order and
/// the limit Hilbert–Samuel table dominates the generic one pointwise.
/// For genuine inputs with certified statuses this must pass; a certified
/// failure therefore flags an inconsistency in the supplied data.
pub fn semicontinuity_check(report: &ArcReport) -> Result<SemicontinuityVerdict> {
    let limit = report.limit_report();
    let (generic, sampling_disagreement) = generic_diagram_estimate(report.nonlimit_reports())?;
    let diagram_comparison = limit.diagram.compare(&generic)?;
    let generic_hs = generic.hilbert_samuel_table(limit.k);
    let hs_margins: Vec<i64> = limit
        .hs_table
        .iter()
        .zip(&generic_hs)
        .map(|(l, g)| *l as i64 - *g as i64)
        .collect();
    let pass = diagram_comparison != Ordering::Less && hs_margins.iter().all(|m| *m >= 0);
    let all_certified = report.reports.iter().all(|r| r.status.is_certified());
    Ok(SemicontinuityVerdict {
        pass,
        diagram_comparison,
        hs_margins,
        sampling_disagreement,
        all_certified,
    })
}

/// Comparison mode for [`z_set_membership`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZMode {
    /// Diagram at the point `>=` the reference diagram.
    Geq,
    /// Strictly greater.
    Gt,
}

/// The verdict of a Z-set membership test, with its honesty trail.
#[derive(Debug, Clone)]
pub struct ZMembership {
    pub member: bool,
    /// Raised when the computed degree-`<= k` diagram exactly equals the
    /// reference: a vertex hiding beyond degree `k` would strictly lower
    /// the true diagram, so equality — unlike either strict outcome — is
    /// not conclusive for the `geq` mode.
    pub equality_truncation_caveat: bool,
    /// Stabilization status of the underlying diagram computation.
    pub status: StabilizationStatus,
    pub computed: Diagram,
    pub comparison: Ordering,
}

/// Does the diagram at the fiber tuple dominate `n`? Valid only when every
/// vertex of `n` has degree at most `k`, so that the comparison is decided
/// inside the computed window.
pub fn z_set_membership(
    fiber: &FiberTuple,
    n: &Diagram,
    mode: ZMode,
    k: u32,
    l: Option<u32>,
    options: &ChevalleyOptions,
) -> Result<ZMembership> {
    for v in n.vertices() {
        if v.degree() > k {
            return Err(Error::VertexDegreeAboveK {
                vertex: v.to_string(),
                degree: v.degree(),
                k,
            });
        }
    }
    let report = diagram_at_point(fiber, "zmember", k, l, options)?;
    let comparison = report.diagram.compare(n)?;
    let member = match mode {
        ZMode::Geq => comparison != Ordering::Less,
        ZMode::Gt => comparison == Ordering::Greater,
    };
    Ok(ZMembership {
        member,
        equality_truncation_caveat: comparison == Ordering::Equal
            && mode == ZMode::Geq,
        status: report.status,
        computed: report.diagram,
        comparison,
    })
}

/// Ranks of competing fiber tuples over one image point.
#[derive(Debug, Clone)]
pub struct EssentialRankReport {
    /// Stacked jet-matrix rank per tuple, parallel to the input.
    pub ranks: Vec<usize>,
    pub max_rank: usize,
    /// Indices of the tuples achieving the maximum.
    pub essential: Vec<usize>,
    /// Always true: maximality is relative to the supplied tuples, not to
    /// all tuples over the point.
    pub relative_to_supplied: bool,
}

/// Compares fiber tuples over a common image point by the rank of their
/// stacked order-`l` jet matrices and reports which achieve the maximum —
/// the essential candidates among those supplied.
pub fn essential_rank_test(tuples: &[FiberTuple], l: u32) -> Result<EssentialRankReport> {
    let Some(first) = tuples.first() else {
        return Err(Error::BadArgument("rank test needs at least one tuple".into()));
    };
    for t in &tuples[1..] {
        if t.map() != first.map() {
            return Err(Error::FiberMismatch(
                "all tuples must come from the same map".into(),
            ));
        }
        if t.base() != first.base() {
            return Err(Error::FiberMismatch(
                "all tuples must lie over the same image point".into(),
            ));
        }
    }
    let ranks: Vec<usize> = tuples
        .iter()
        .map(|t| Ok(stacked_jet_matrix(t, l)?.rank()))
        .collect::<Result<_>>()?;
    let max_rank = *ranks.iter().max().expect("nonempty");
    let essential = ranks
        .iter()
        .enumerate()
        .filter(|(_, r)| **r == max_rank)
        .map(|(i, _)| i)
        .collect();
    Ok(EssentialRankReport { ranks, max_rank, essential, relative_to_supplied: true })
}
