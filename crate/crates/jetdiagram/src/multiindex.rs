//! Multi-indices, the total order on them, and diagrams of initial exponents.
//!
//! A multi-index is an element of `N^n`. The order used everywhere in this
//! crate compares `(|a|, a_1, ..., a_n)` lexicographically, so it refines
//! total degree and is compatible with addition. A *diagram* is a subset
//! `N ⊆ N^n` stable under translation by `N^n`; it is determined by its
//! finite set of minimal elements (the *vertices*).

use std::cmp::Ordering;
use std::fmt;

use crate::{Error, Result};

/// An exponent vector in `N^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    /// The origin `(0, ..., 0)` in `N^n`.
    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    /// The standard basis vector `e_i`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        MultiIndex(e)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Total degree `|a| = a_1 + ... + a_n`.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn entry(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// Componentwise sum. Panics on dimension mismatch.
    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        assert_eq!(self.dim(), other.dim(), "multi-index dimension mismatch");
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference, or `None` if any entry would go negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if self.dim() != other.dim() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// Componentwise order: does `self + N^n` contain `other`?
    pub fn divides(&self, other: &MultiIndex) -> bool {
        self.dim() == other.dim() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiIndex {
    /// `(|a|, a_1, ..., a_n)` compared lexicographically.
    ///
    /// Callers that cannot guarantee equal dimensions should use
    /// [`compare`] instead; comparing across dimensions is still total
    /// (degree first, then entry-wise lexicographic) but has no meaning.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Dimension-checked comparison in the multi-index order.
pub fn compare(a: &MultiIndex, b: &MultiIndex) -> Result<Ordering> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    Ok(a.cmp(b))
}

/// All multi-indices of dimension `dim` with total degree at most
/// `max_degree`, sorted ascending in the multi-index order.
///
/// This listing fixes the coordinate order of every jet space in the crate,
/// so it must stay stable.
pub fn indices_up_to(dim: usize, max_degree: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut current = vec![0u32; dim];
    push_indices(&mut out, &mut current, 0, max_degree);
    out.sort();
    out
}

fn push_indices(out: &mut Vec<MultiIndex>, current: &mut Vec<u32>, pos: usize, left: u32) {
    if pos == current.len() {
        out.push(MultiIndex(current.clone()));
        return;
    }
    for v in 0..=left {
        current[pos] = v;
        push_indices(out, current, pos + 1, left - v);
    }
    current[pos] = 0;
}

/// `dim_Q J^k = C(n+k, n)`, the number of multi-indices of degree <= k.
pub fn jet_dimension(dim: usize, k: u32) -> usize {
    // binomial(dim + k, dim) computed without overflow for desk-scale input
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 1..=dim as u128 {
        num *= k as u128 + i;
        den *= i;
    }
    (num / den) as usize
}

/// A diagram of initial exponents: a subset of `N^n` stable under `+N^n`,
/// stored as its sorted vertex list. The empty diagram (of the zero ideal)
/// is legal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    dim: usize,
    vertices: Vec<MultiIndex>,
}

impl Diagram {
    /// Builds the diagram generated by `generators`, i.e. the union of the
    /// cones `g + N^n`. Redundant generators are discarded; the remaining
    /// vertex set is the unique minimal one, sorted ascending.
    pub fn from_vertices(dim: usize, generators: Vec<MultiIndex>) -> Result<Self> {
        for g in &generators {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: g.dim() });
            }
        }
        let mut vertices: Vec<MultiIndex> = Vec::new();
        let mut sorted = generators;
        sorted.sort();
        sorted.dedup();
        for g in sorted {
            if !vertices.iter().any(|v| v.divides(&g)) {
                vertices.push(g);
            }
        }
        // Insertion in ascending order cannot make an earlier vertex
        // redundant: v <= g componentwise implies v <= g in the order.
        Ok(Diagram { dim, vertices })
    }

    pub fn empty(dim: usize) -> Self {
        Diagram { dim, vertices: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The minimal generators, sorted ascending in the multi-index order.
    pub fn vertices(&self) -> &[MultiIndex] {
        &self.vertices
    }

    /// Membership test: is `beta` in the diagram?
    pub fn contains(&self, beta: &MultiIndex) -> bool {
        self.vertices.iter().any(|v| v.divides(beta))
    }

    /// All members of the diagram of total degree at most `k`, ascending.
    pub fn members_up_to(&self, k: u32) -> Vec<MultiIndex> {
        indices_up_to(self.dim, k)
            .into_iter()
            .filter(|b| self.contains(b))
            .collect()
    }

    /// The Hilbert-Samuel function `H(k)`: the number of multi-indices of
    /// degree at most `k` *outside* the diagram. For the empty diagram this
    /// is all of them, `C(n+k, n)`.
    pub fn hilbert_samuel(&self, k: u32) -> u64 {
        indices_up_to(self.dim, k)
            .iter()
            .filter(|b| !self.contains(b))
            .count() as u64
    }

    /// `H(0), H(1), ..., H(k)` as a table.
    pub fn hilbert_samuel_table(&self, k: u32) -> Vec<u64> {
        (0..=k).map(|j| self.hilbert_samuel(j)).collect()
    }

    /// The diagram generated by the members `beta` with `beta <= alpha`
    /// (strictly below `alpha` when `strict` is set) in the multi-index
    /// order. Filtering the vertices is equivalent to filtering all
    /// members, because every member is dominated by a vertex below it.
    pub fn truncate(&self, alpha: &MultiIndex, strict: bool) -> Result<Diagram> {
        if alpha.dim() != self.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: alpha.dim() });
        }
        let kept = self
            .vertices
            .iter()
            .filter(|v| if strict { *v < alpha } else { *v <= alpha })
            .cloned()
            .collect();
        Ok(Diagram { dim: self.dim, vertices: kept })
    }

    /// Total order on diagrams of a common dimension.
    ///
    /// Vertex sequences are compared entry by entry in the multi-index
    /// order; at the first difference the diagram with the smaller vertex
    /// is the smaller diagram, and if one sequence is a proper prefix of
    /// the other the *shorter* one is the *greater* diagram. The order
    /// refines reverse set inclusion: `N1 ⊊ N2` implies `N1 > N2`; in
    /// particular the empty diagram is the maximum and the full diagram
    /// `N^n` (vertex at the origin) is the minimum.
    pub fn compare(&self, other: &Diagram) -> Result<Ordering> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        for (a, b) in self.vertices.iter().zip(&other.vertices) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return Ok(ord),
            }
        }
        // Common prefix exhausted: the shorter sequence is the greater diagram.
        Ok(other.vertices.len().cmp(&self.vertices.len()))
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// The least witness `theta <= alpha` certifying `N1(alpha) < N2(alpha)`,
/// where `N(alpha)` denotes the truncation of `N` at `alpha`.
///
/// A witness is a `theta` with `N1^-(theta) = N2^-(theta)` (strict
/// truncations agree), `theta ∈ N1(theta)` and `theta ∉ N2(theta)`. One
/// exists if and only if `N1(alpha) < N2(alpha)` in the diagram order; both
/// directions of that equivalence are exercised by the test suite.
pub fn comparison_witness(
    n1: &Diagram,
    n2: &Diagram,
    alpha: &MultiIndex,
) -> Result<Option<MultiIndex>> {
    if n1.dim() != n2.dim() {
        return Err(Error::DimensionMismatch { left: n1.dim(), right: n2.dim() });
    }
    if alpha.dim() != n1.dim() {
        return Err(Error::DimensionMismatch { left: n1.dim(), right: alpha.dim() });
    }
    for theta in indices_up_to(alpha.dim(), alpha.degree()) {
        if theta > *alpha {
            continue;
        }
        if n1.truncate(&theta, true)? != n2.truncate(&theta, true)?
            || !n1.truncate(&theta, false)?.contains(&theta)
            || n2.truncate(&theta, false)?.contains(&theta)
        {
            continue;
        }
        return Ok(Some(theta));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(entries: &[u32]) -> MultiIndex {
        MultiIndex::new(entries.to_vec())
    }

    fn diag(dim: usize, vs: &[&[u32]]) -> Diagram {
        Diagram::from_vertices(dim, vs.iter().map(|v| mi(v)).collect()).unwrap()
    }

    #[test]
    fn order_is_degree_first_then_lex() {
        // degree ties break lexicographically on the entries
        assert!(mi(&[0, 1]) < mi(&[1, 0]));
        // lower total degree always wins
        assert!(mi(&[0, 2]) < mi(&[3, 0]));
        assert_eq!(compare(&mi(&[2, 1]), &mi(&[2, 1])).unwrap(), Ordering::Equal);
        assert!(compare(&mi(&[1]), &mi(&[1, 0])).is_err());
    }

    #[test]
    fn order_is_compatible_with_addition() {
        let a = mi(&[0, 1]);
        let b = mi(&[1, 0]);
        let c = mi(&[2, 3]);
        assert!(a < b);
        assert!(a.add(&c) < b.add(&c));
    }

    #[test]
    fn enumeration_is_sorted_and_counted_by_binomials() {
        let idx = indices_up_to(2, 3);
        assert_eq!(idx.len(), jet_dimension(2, 3));
        assert_eq!(idx.len(), 10);
        assert!(idx.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(idx[0], MultiIndex::zero(2));
        assert_eq!(jet_dimension(3, 4), 35);
        // degree-first: the first 1 + n indices are exactly degree <= 1
        assert_eq!(&idx[..3], &[mi(&[0, 0]), mi(&[0, 1]), mi(&[1, 0])]);
    }

    #[test]
    fn vertices_are_minimalized_and_sorted() {
        let d = diag(2, &[&[2, 0], &[1, 1], &[2, 1]]);
        assert_eq!(d.vertices(), &[mi(&[1, 1]), mi(&[2, 0])]);
        assert!(d.contains(&mi(&[2, 1])));
        assert!(d.contains(&mi(&[5, 0])));
        assert!(!d.contains(&mi(&[0, 5])));
        assert!(!d.contains(&mi(&[1, 0])));
    }

    #[test]
    fn empty_and_full_diagrams() {
        let empty = Diagram::empty(2);
        assert!(empty.is_empty());
        assert!(!empty.contains(&mi(&[0, 0])));
        assert_eq!(empty.hilbert_samuel(3), 10);
        let full = diag(2, &[&[0, 0]]);
        assert_eq!(full.hilbert_samuel(5), 0);
    }

    #[test]
    fn hilbert_samuel_counts_the_complement() {
        let d = diag(2, &[&[2, 0], &[1, 1]]);
        // outside the diagram, degree <= 2: (0,0),(1,0),(0,1),(0,2)
        assert_eq!(d.hilbert_samuel(2), 4);
        // cusp diagram {(0,2)}: H(k) = 2k+1
        let cusp = diag(2, &[&[0, 2]]);
        assert_eq!(cusp.hilbert_samuel_table(4), vec![1, 3, 5, 7, 9]);
    }

    #[test]
    fn diagram_order_examples() {
        let n1 = diag(2, &[&[0, 2]]);
        let n2 = diag(2, &[&[0, 2], &[3, 0]]);
        // n1 is a strict subset of n2, so n1 is the greater diagram
        assert_eq!(n1.compare(&n2).unwrap(), Ordering::Greater);
        assert_eq!(n2.compare(&n1).unwrap(), Ordering::Less);
        assert_eq!(n1.compare(&n1.clone()).unwrap(), Ordering::Equal);
        // first-vertex comparison
        let a = diag(2, &[&[1, 0]]);
        let b = diag(2, &[&[0, 2]]);
        assert_eq!(a.compare(&b).unwrap(), Ordering::Less);
        // empty diagram is the maximum
        assert_eq!(Diagram::empty(2).compare(&n1).unwrap(), Ordering::Greater);
        assert_eq!(diag(2, &[&[0, 0]]).compare(&n1).unwrap(), Ordering::Less);
    }

    #[test]
    fn truncation_filters_vertices() {
        let d = diag(2, &[&[0, 2], &[3, 0]]);
        let t = d.truncate(&mi(&[0, 2]), false).unwrap();
        assert_eq!(t.vertices(), &[mi(&[0, 2])]);
        let ts = d.truncate(&mi(&[0, 2]), true).unwrap();
        assert!(ts.is_empty());
        // truncating at a large alpha keeps everything
        let big = d.truncate(&mi(&[0, 9]), false).unwrap();
        assert_eq!(big, d);
    }

    #[test]
    fn truncation_by_vertices_equals_truncation_by_members() {
        // brute-force the defining property on a couple of diagrams
        for d in [diag(2, &[&[0, 2], &[3, 0]]), diag(2, &[&[1, 1], &[2, 0]])] {
            for alpha in indices_up_to(2, 4) {
                let t = d.truncate(&alpha, false).unwrap();
                let by_members = Diagram::from_vertices(
                    2,
                    d.members_up_to(6).into_iter().filter(|b| *b <= alpha).collect(),
                )
                .unwrap();
                assert_eq!(t, by_members, "alpha = {alpha}");
            }
        }
    }

    #[test]
    fn witness_for_a_strictly_smaller_truncation() {
        // swapping the arguments must lose the witness
        let small = diag(2, &[&[0, 1]]);
        let large = diag(2, &[&[0, 2]]);
        let alpha = mi(&[0, 2]);
        // small(alpha) < large(alpha): the witness is the vertex (0,1)
        assert_eq!(comparison_witness(&small, &large, &alpha).unwrap(), Some(mi(&[0, 1])));
        assert_eq!(comparison_witness(&large, &small, &alpha).unwrap(), None);
        // equal diagrams never have a witness
        assert_eq!(comparison_witness(&small, &small.clone(), &alpha).unwrap(), None);
    }

    #[test]
    fn witness_three_variable_regression() {
        // two incomparable order-one diagrams in three variables; the
        // comparison at alpha = (1,0,0) is decided at theta = (0,1,0)
        let n1 = diag(3, &[&[0, 0, 1], &[0, 1, 0]]);
        let n2 = diag(3, &[&[1, 0, 0], &[0, 0, 1]]);
        let alpha = mi(&[1, 0, 0]);
        assert_eq!(
            n1.truncate(&alpha, false).unwrap().compare(&n2.truncate(&alpha, false).unwrap()).unwrap(),
            Ordering::Less
        );
        assert_eq!(comparison_witness(&n1, &n2, &alpha).unwrap(), Some(mi(&[0, 1, 0])));
    }
}
