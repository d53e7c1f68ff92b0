//! Ideals presented by explicit generators: exact jet images, truncated
//! diagrams, Hilbert–Samuel dimensions, jet-level membership, and truncated
//! standard bases.
//!
//! Everything here is exact linear algebra in the jet space of order `k`.
//! The span of `{y^gamma * g_i : |gamma| <= k}` equals the image of the
//! ideal in that jet space — a combination `sum Q_i g_i` only needs the
//! `Q_i` modulo degree `k`, and any multiple by a monomial of degree above
//! `k` lands beyond the truncation — so no truncation error enters. What
//! remains approximate is only the relation between the presented ideal and
//! whatever analytic object the caller has in mind; that is the caller's
//! assertion, recorded as the `exact_to` marker on extracted diagrams.

use crate::linalg::Subspace;
use crate::multiindex::{indices_up_to, jet_dimension, Diagram, MultiIndex};
use crate::series::{hironaka_divide, TruncatedSeries};
use crate::{Error, Result};

/// An ideal of the formal power series ring given by finitely many
/// generators (exact polynomials or series truncated at a known bound).
#[derive(Debug, Clone)]
pub struct IdealPresentation {
    dim: usize,
    label: String,
    generators: Vec<TruncatedSeries>,
}

impl IdealPresentation {
    pub fn new(
        dim: usize,
        label: impl Into<String>,
        generators: Vec<TruncatedSeries>,
    ) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::BadArgument("an ideal needs at least one generator".into()));
        }
        for g in &generators {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: g.dim() });
            }
        }
        Ok(IdealPresentation { dim, label: label.into(), generators })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn generators(&self) -> &[TruncatedSeries] {
        &self.generators
    }

    /// Recenters every generator at `b`, so the result presents the same
    /// ideal in coordinates centered at `b`. Generators must be exact.
    pub fn recenter(&self, b: &[crate::scalar::Q]) -> Result<IdealPresentation> {
        let generators = self
            .generators
            .iter()
            .map(|g| g.recenter(b))
            .collect::<Result<Vec<_>>>()?;
        IdealPresentation::new(self.dim, self.label.clone(), generators)
    }

    fn check_precision(&self, k: u32) -> Result<()> {
        for g in &self.generators {
            if let Some(b) = g.bound() {
                if b < k {
                    return Err(Error::InsufficientBound { bound: b, needed: k });
                }
            }
        }
        Ok(())
    }
}

/// The image of the ideal in the jet space of order `k`: the span of the
/// jets of `y^gamma * g_i` over all `|gamma| <= k`.
pub fn ideal_jet_subspace(ideal: &IdealPresentation, k: u32) -> Result<Subspace> {
    ideal.check_precision(k)?;
    let n = ideal.dim();
    let mut rows = Vec::new();
    for g in ideal.generators() {
        let Some(initial) = g.initial_exponent() else {
            continue; // zero generator contributes nothing
        };
        let order = initial.degree();
        for gamma in indices_up_to(n, k.saturating_sub(order)) {
            let shifted = TruncatedSeries::monomial(gamma, crate::scalar::q_one(), None)
                .mul(g)?
                .truncate(k)?;
            rows.push(crate::jets::jet_vector(&shifted, k)?);
        }
    }
    Subspace::from_spanning(jet_dimension(n, k), rows)
}

/// A diagram recovered from degree-`k` data: complete for vertices of
/// degree at most `exact_to`, silent beyond.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedDiagram {
    pub diagram: Diagram,
    pub exact_to: u32,
}

/// The diagram of initial exponents of the presented ideal, read off the
/// echelon pivots of [`ideal_jet_subspace`]. Under the ascending monomial
/// coordinate order, the pivot positions of the canonical basis are exactly
/// the initial exponents of members of the jet image, i.e. the degree-`<= k`
/// part of the diagram.
pub fn diagram_of_ideal(ideal: &IdealPresentation, k: u32) -> Result<TruncatedDiagram> {
    let subspace = ideal_jet_subspace(ideal, k)?;
    Ok(TruncatedDiagram {
        diagram: diagram_from_pivots(ideal.dim(), k, &subspace),
        exact_to: k,
    })
}

/// Converts pivot positions of a subspace of the order-`k` jet space into
/// the diagram generated by the corresponding exponents.
pub fn diagram_from_pivots(n: usize, k: u32, subspace: &Subspace) -> Diagram {
    let coords = indices_up_to(n, k);
    let vertices: Vec<MultiIndex> =
        subspace.pivots().iter().map(|&p| coords[p].clone()).collect();
    Diagram::from_vertices(n, vertices).expect("pivot exponents share the ambient dimension")
}

/// `H_I(k)`: the codimension of the ideal's jet image in the order-`k` jet
/// space. Cross-checked on every call against the count of monomials
/// outside the extracted diagram.
pub fn hilbert_samuel_direct(ideal: &IdealPresentation, k: u32) -> Result<u64> {
    let subspace = ideal_jet_subspace(ideal, k)?;
    let direct = jet_dimension(ideal.dim(), k) as u64 - subspace.dim() as u64;
    let via_diagram =
        diagram_from_pivots(ideal.dim(), k, &subspace).hilbert_samuel(k);
    assert_eq!(
        direct, via_diagram,
        "codimension of the jet image must equal the staircase complement count"
    );
    Ok(direct)
}

/// Is the `k`-jet of `F` in the ideal's jet image? A `true` certifies only
/// membership modulo degree `k+1`.
pub fn membership_jet(f: &TruncatedSeries, ideal: &IdealPresentation, k: u32) -> Result<bool> {
    if f.dim() != ideal.dim() {
        return Err(Error::DimensionMismatch { left: ideal.dim(), right: f.dim() });
    }
    let vec = crate::jets::jet_vector(f, k)?;
    ideal_jet_subspace(ideal, k)?.contains_vector(&vec)
}

/// The truncated standard basis: for each vertex of the degree-`<= k`
/// diagram, the unique echelon row pivoted there, scaled to leading
/// coefficient one. Because the basis is fully reduced, each tail is
/// supported outside the diagram.
pub fn standard_basis_truncated(
    ideal: &IdealPresentation,
    k: u32,
) -> Result<Vec<TruncatedSeries>> {
    let subspace = ideal_jet_subspace(ideal, k)?;
    standard_basis_from_subspace(ideal.dim(), k, &subspace)
}

/// Reads the standard basis off an already-echelonized jet subspace.
pub fn standard_basis_from_subspace(
    n: usize,
    k: u32,
    subspace: &Subspace,
) -> Result<Vec<TruncatedSeries>> {
    let coords = indices_up_to(n, k);
    let diagram = diagram_from_pivots(n, k, subspace);
    let mut basis = Vec::new();
    for vertex in diagram.vertices() {
        let row = subspace
            .pivots()
            .iter()
            .position(|&p| &coords[p] == vertex)
            .expect("every vertex comes from a pivot");
        let terms: Vec<(MultiIndex, crate::scalar::Q)> = subspace
            .basis()
            .row(row)
            .iter()
            .enumerate()
            .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
            .map(|(i, c)| (coords[i].clone(), c.clone()))
            .collect();
        basis.push(TruncatedSeries::from_terms(n, Some(k), terms)?);
    }
    Ok(basis)
}

/// Checks that dividing `f` by the standard basis of `ideal` at order `k`
/// leaves no remainder below the truncation; used by callers wanting the
/// division route rather than the echelon route to membership.
pub fn divides_to_zero(
    f: &TruncatedSeries,
    basis: &[TruncatedSeries],
    k: u32,
) -> Result<bool> {
    let target = f.truncate(k)?;
    let division = hironaka_divide(&target, basis)?;
    Ok(division.remainder.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q_from, Q};

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

    fn cusp_ideal() -> IdealPresentation {
        IdealPresentation::new(2, "I", vec![poly(2, &[(&[0, 2], 1), (&[3, 0], -1)])]).unwrap()
    }

    #[test]
    fn jet_image_of_monomial_generators() {
        let i = IdealPresentation::new(
            2,
            "I",
            vec![poly(2, &[(&[2, 0], 1)]), poly(2, &[(&[1, 1], 1)])],
        )
        .unwrap();
        let s = ideal_jet_subspace(&i, 2).unwrap();
        assert_eq!(s.dim(), 2);
        let unit = IdealPresentation::new(2, "one", vec![poly(2, &[(&[0, 0], 1)])]).unwrap();
        assert_eq!(ideal_jet_subspace(&unit, 3).unwrap().dim(), jet_dimension(2, 3));
        // the cubic tail of the cusp relation is invisible at order two
        let s2 = ideal_jet_subspace(&cusp_ideal(), 2).unwrap();
        assert_eq!(s2.dim(), 1);
        let y2sq = crate::jets::jet_vector(&poly(2, &[(&[0, 2], 1)]).truncate(2).unwrap(), 2)
            .unwrap();
        assert!(s2.contains_vector(&y2sq).unwrap());
    }

    #[test]
    fn diagrams_of_small_ideals() {
        let d = diagram_of_ideal(&cusp_ideal(), 4).unwrap();
        assert_eq!(d.exact_to, 4);
        assert_eq!(d.diagram.vertices(), &[mi(&[0, 2])]);

        let m = IdealPresentation::new(
            2,
            "M",
            vec![poly(2, &[(&[2, 0], 1)]), poly(2, &[(&[1, 1], 1)])],
        )
        .unwrap();
        let dm = diagram_of_ideal(&m, 3).unwrap();
        assert_eq!(dm.diagram.vertices(), &[mi(&[1, 1]), mi(&[2, 0])]);

        // y3^2 - y2(y1+y2)^2 at the origin: initial exponent (0,0,2)
        let surf = IdealPresentation::new(
            3,
            "S",
            vec![poly(
                3,
                &[(&[0, 0, 2], 1), (&[2, 1, 0], -1), (&[1, 2, 0], -2), (&[0, 3, 0], -1)],
            )],
        )
        .unwrap();
        let ds = diagram_of_ideal(&surf, 3).unwrap();
        assert_eq!(ds.diagram.vertices(), &[mi(&[0, 0, 2])]);
    }

    #[test]
    fn hilbert_samuel_both_routes() {
        assert_eq!(hilbert_samuel_direct(&cusp_ideal(), 3).unwrap(), 7);
        let table: Vec<u64> = (0..=4)
            .map(|k| hilbert_samuel_direct(&cusp_ideal(), k).unwrap())
            .collect();
        assert_eq!(table, vec![1, 3, 5, 7, 9]);

        let zero = IdealPresentation::new(2, "0", vec![TruncatedSeries::zero(2, None)]).unwrap();
        assert_eq!(hilbert_samuel_direct(&zero, 3).unwrap(), jet_dimension(2, 3) as u64);
        assert!(diagram_of_ideal(&zero, 3).unwrap().diagram.is_empty());

        let m = IdealPresentation::new(
            2,
            "M",
            vec![poly(2, &[(&[2, 0], 1)]), poly(2, &[(&[1, 1], 1)])],
        )
        .unwrap();
        assert_eq!(hilbert_samuel_direct(&m, 2).unwrap(), 4);
    }

    #[test]
    fn membership_at_jet_level() {
        let i = cusp_ideal();
        let f = poly(2, &[(&[1, 0], 1)]).mul(&i.generators()[0]).unwrap();
        assert!(membership_jet(&f, &i, 5).unwrap());
        assert!(!membership_jet(&poly(2, &[(&[1, 0], 1)]), &i, 3).unwrap());
        let low = poly(2, &[(&[0, 2], 1)]).truncate(2).unwrap();
        assert!(matches!(
            membership_jet(&low, &i, 4),
            Err(Error::InsufficientBound { bound: 2, needed: 4 })
        ));
    }

    #[test]
    fn standard_basis_drops_redundant_generators() {
        let g = poly(2, &[(&[0, 2], 1), (&[3, 0], -1)]);
        let redundant = poly(2, &[(&[1, 0], 1)]).mul(&g).unwrap();
        let i = IdealPresentation::new(2, "I", vec![g.clone(), redundant]).unwrap();
        let basis = standard_basis_truncated(&i, 5).unwrap();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], g.truncate(5).unwrap());
    }

    #[test]
    fn standard_basis_of_a_monomial_ideal_is_its_minimal_generators() {
        let i = IdealPresentation::new(
            2,
            "M",
            vec![
                poly(2, &[(&[2, 0], 1)]),
                poly(2, &[(&[1, 1], 1)]),
                poly(2, &[(&[2, 1], 1)]), // redundant
            ],
        )
        .unwrap();
        let basis = standard_basis_truncated(&i, 4).unwrap();
        let rendered: Vec<String> = basis.iter().map(|b| b.to_string()).collect();
        assert_eq!(rendered, vec!["y1*y2", "y1^2"]);
    }

    #[test]
    fn standard_basis_with_vertex_away_from_the_corner() {
        // initial exponent (2,0): the roles of the variables are swapped
        let g = poly(2, &[(&[2, 0], 1), (&[0, 3], -1)]);
        let i = IdealPresentation::new(2, "I", vec![g.clone()]).unwrap();
        let basis = standard_basis_truncated(&i, 4).unwrap();
        assert_eq!(basis, vec![g.truncate(4).unwrap()]);
    }

    #[test]
    fn standard_basis_presentation_is_idempotent() {
        let i = IdealPresentation::new(
            2,
            "I",
            vec![
                poly(2, &[(&[0, 2], 1), (&[3, 0], -1)]),
                poly(2, &[(&[1, 1], 1), (&[0, 3], 1)]),
            ],
        )
        .unwrap();
        let basis = standard_basis_truncated(&i, 4).unwrap();
        let again = standard_basis_truncated(
            &IdealPresentation::new(2, "I'", basis.clone()).unwrap(),
            4,
        )
        .unwrap();
        assert_eq!(basis, again);
    }

    #[test]
    fn division_by_the_standard_basis_annihilates_members() {
        let i = cusp_ideal();
        let k = 5;
        let basis = standard_basis_truncated(&i, k).unwrap();
        // an arbitrary combination of the generators
        let member = poly(2, &[(&[1, 1], 2), (&[0, 0], 3)])
            .mul(&i.generators()[0])
            .unwrap();
        assert!(divides_to_zero(&member, &basis, k).unwrap());
        assert!(!divides_to_zero(&poly(2, &[(&[0, 1], 1)]), &basis, k).unwrap());
    }

    #[test]
    fn truncation_coherence_of_diagrams() {
        let i = cusp_ideal();
        let fine = diagram_of_ideal(&i, 5).unwrap().diagram;
        let coarse = diagram_of_ideal(&i, 2).unwrap().diagram;
        // restricting the finer diagram to vertices of degree <= 2 gives the coarser
        let restricted: Vec<MultiIndex> = fine
            .vertices()
            .iter()
            .filter(|v| v.degree() <= 2)
            .cloned()
            .collect();
        assert_eq!(Diagram::from_vertices(2, restricted).unwrap(), coarse);
    }

    #[test]
    fn unit_ideal_has_origin_diagram_and_zero_hs() {
        let one = IdealPresentation::new(3, "1", vec![poly(3, &[(&[0, 0, 0], 1)])]).unwrap();
        let d = diagram_of_ideal(&one, 2).unwrap().diagram;
        assert_eq!(d.vertices(), &[mi(&[0, 0, 0])]);
        assert_eq!(hilbert_samuel_direct(&one, 2).unwrap(), 0);
    }

    #[test]
    fn bounded_generators_need_enough_precision() {
        let g = poly(2, &[(&[0, 2], 1)]).truncate(3).unwrap();
        let i = IdealPresentation::new(2, "I", vec![g]).unwrap();
        assert!(ideal_jet_subspace(&i, 3).is_ok());
        assert!(matches!(
            ideal_jet_subspace(&i, 4),
            Err(Error::InsufficientBound { bound: 3, needed: 4 })
        ));
    }

    #[test]
    fn recentering_moves_the_basepoint() {
        let i = cusp_ideal();
        let moved = i.recenter(&[q_from(1), q_from(1)]).unwrap();
        // at the smooth point (1,1) of the cusp the ideal has an order-one element
        let d = diagram_of_ideal(&moved, 2).unwrap().diagram;
        assert_eq!(d.vertices(), &[mi(&[0, 1])]);
        let _: &Q = &q_from(0); // keep the scalar import honest
    }
}
