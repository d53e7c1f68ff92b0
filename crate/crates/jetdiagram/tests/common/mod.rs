//! Independent reference implementations the integration tests check the
//! library against: dense polynomials with their own arithmetic, a direct
//! jet enumerator, a second kernel route, and seeded random generators.
//!
//! Nothing here calls the code paths under test except at the final
//! comparison.

#![allow(dead_code)]

use std::collections::BTreeMap;

use jetdiagram::linalg::{RationalMatrix, Subspace};
use jetdiagram::multiindex::{indices_up_to, MultiIndex};
use jetdiagram::scalar::{q_from, Q};
use jetdiagram::series::TruncatedSeries;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A dense exact polynomial, re-implemented from scratch: exponent vectors
/// mapped to coefficients, zero coefficients never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    pub terms: BTreeMap<Vec<u32>, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(dim: usize, c: Q) -> Self {
        let mut p = Poly::zero();
        p.add_term(vec![0; dim], c);
        p
    }

    pub fn add_term(&mut self, exp: Vec<u32>, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exp: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(exp, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, dim: usize, e: u32) -> Poly {
        let mut out = Poly::constant(dim, Q::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn coefficient(&self, exp: &[u32]) -> Q {
        self.terms.get(exp).cloned().unwrap_or_else(Q::zero)
    }

    pub fn truncate(&self, degree: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() <= degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Substitutes `args[i]` (polynomials in some other variable set) for
    /// variable `i`.
    pub fn compose(&self, args: &[Poly], out_dim: usize) -> Poly {
        let mut out = Poly::zero();
        for (exp, c) in &self.terms {
            let mut term = Poly::constant(out_dim, c.clone());
            for (i, &e) in exp.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&args[i].pow(out_dim, e));
                }
            }
            out = out.add(&term);
        }
        out
    }
}

pub fn poly_of_series(s: &TruncatedSeries) -> Poly {
    let mut p = Poly::zero();
    for (e, c) in s.terms() {
        p.add_term(e.entries().to_vec(), c.clone());
    }
    p
}

pub fn series_of_poly(p: &Poly, dim: usize, bound: Option<u32>) -> TruncatedSeries {
    TruncatedSeries::from_terms(
        dim,
        bound,
        p.terms.iter().map(|(e, c)| (MultiIndex::new(e.clone()), c.clone())),
    )
    .expect("oracle polynomials are well formed")
}

/// The jet vector of a dense polynomial: its coefficients on the monomials
/// of degree at most `l`, in the library's coordinate order.
pub fn naive_jet_vector(p: &Poly, dim: usize, l: u32) -> Vec<Q> {
    indices_up_to(dim, l).iter().map(|e| p.coefficient(e.entries())).collect()
}

/// A third route to `ker_theta`: rows spanning the left null space of `T`
/// kill exactly the image of `T`, so `{x : K S x = 0}` is everything `S`
/// sends into that image.
pub fn ker_theta_via_left_kernel(s: &RationalMatrix, t: &RationalMatrix) -> Subspace {
    let left = t.left_kernel();
    if left.dim() == 0 {
        return Subspace::full(s.cols());
    }
    left.basis().matmul(s).expect("dimensions agree by construction").kernel()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> Q {
    let num = rng.gen_range(-4i64..=4);
    let den = *[1i64, 1, 1, 2, 3].get(rng.gen_range(0..5)).unwrap();
    Q::new(num.into(), den.into())
}

/// A random exact polynomial with len <= `max_terms` and degree <= `max_deg`.
pub fn random_poly(rng: &mut ChaCha8Rng, dim: usize, max_deg: u32, max_terms: usize) -> Poly {
    let mut p = Poly::zero();
    let terms = rng.gen_range(1..=max_terms);
    for _ in 0..terms {
        let mut exp = vec![0u32; dim];
        let mut budget = rng.gen_range(0..=max_deg);
        for e in exp.iter_mut() {
            let take = rng.gen_range(0..=budget);
            *e = take;
            budget -= take;
        }
        p.add_term(exp, random_rational(rng));
    }
    p
}

pub fn random_series(
    rng: &mut ChaCha8Rng,
    dim: usize,
    max_deg: u32,
    max_terms: usize,
) -> TruncatedSeries {
    series_of_poly(&random_poly(rng, dim, max_deg, max_terms), dim, None)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> RationalMatrix {
    let data: Vec<Vec<Q>> =
        (0..rows).map(|_| (0..cols).map(|_| random_rational(rng)).collect()).collect();
    RationalMatrix::from_rows(data).expect("rows share a length")
}

/// A random nonzero-column rational matrix biased toward low rank.
pub fn random_low_rank_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> RationalMatrix {
    let r = rng.gen_range(1..=rows.min(cols));
    let a = random_matrix(rng, rows, r);
    let b = random_matrix(rng, r, cols);
    a.matmul(&b).expect("inner dimensions agree")
}

pub fn q(i: i64) -> Q {
    q_from(i)
}

/// Malformed session inputs with the position and gist of the error each
/// must produce. Shared by the acceptance and golden-output suites.
pub fn malformed_sessions() -> Vec<(&'static str, u32, u32, &'static str)> {
    vec![
        ("point p = (1.5)", 1, 12, "decimal"),
        ("map m : R^1 -> R^2 { y1 = x1; }", 1, 31, "component label"),
        ("map m : R^1 -> R^2 { y2 = x1; y1 = x1; }", 1, 22, "expected component `y1`"),
        ("ideal I = < >", 1, 13, "expected a polynomial"),
        ("ideal I = y1", 1, 11, "expected `<`"),
        ("point p = 1", 1, 11, "expected `(`"),
        ("point p = (1/0)", 1, 14, "denominator must be nonzero"),
        ("fiber F over cusp = [ (0) ]", 1, 14, "unknown map `cusp`"),
        ("map m : R^1 -> R^2 { y1 = x2; y2 = x1; }", 1, 27, "out of range"),
        ("map m : R^0 -> R^2 { }", 1, 20, "dimensions must be at least 1"),
        ("point p = (1,)", 1, 14, "expected a number"),
        ("ideal I = < y1 + >", 1, 18, "expected a polynomial"),
        ("point p = (1) point p = (2)", 1, 21, "already declared"),
        ("widget w = (1)", 1, 1, "unknown declaration `widget`"),
        ("map m : R^1 -> R^2 { y1 = x1 y2 = x1; }", 1, 30, "expected `;`"),
        ("arc a(w) for m = [ (w) ]", 1, 14, "unknown map `m`"),
        (
            "map m : R^2 -> R^1 { y1 = x1*x2; }\nfiber F over m = [ (1, 2, 3) ]",
            2,
            20,
            "expected 2 coordinate(s), found 3",
        ),
        ("ideal I = < y0 >", 1, 13, "unknown variable `y0`"),
        ("map m : R^1 -> R^2 { y1 = 1.5; y2 = x1; }", 1, 27, "decimal"),
        ("# only a comment\nmap", 2, 4, "expected a name, found end of input"),
        ("ideal I = < y1 ^ x1 >", 1, 18, "expected exponent"),
        ("point p = (1", 1, 13, "expected `)`, found end of input"),
        ("map m : R^1 -> R^2 { y1 = (x1; y2 = x1; }", 1, 30, "expected `)`"),
        ("ideal I = < y1 @ y2 >", 1, 16, "unexpected character `@`"),
        (
            "map m : R^1 -> R^1 { y1 = x1; }\narc a(w) for m = [ (v) ]",
            2,
            21,
            "the arc parameter is `w`",
        ),
        (
            "map c : R^1 -> R^2 { y1 = x1^2; y2 = x1^3; }\nfiber F over c = [ (1), (2) ]",
            2,
            7,
            "incoherent fiber",
        ),
    ]
}
