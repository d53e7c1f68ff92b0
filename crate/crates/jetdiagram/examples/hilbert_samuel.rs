//! Hilbert-Samuel functions of monomial and non-monomial ideals, computed
//! two ways: by counting outside the diagram and by jet-space codimension.

use jetdiagram::ideals::{diagram_of_ideal, hilbert_samuel_direct, IdealPresentation};
use jetdiagram::session::parse_polynomial;

fn ideal(label: &str, dim: usize, gens: &[&str]) -> jetdiagram::Result<IdealPresentation> {
    let generators = gens
        .iter()
        .map(|g| parse_polynomial(g, dim).expect("example polynomials are well formed"))
        .collect();
    IdealPresentation::new(dim, label, generators)
}

fn main() -> jetdiagram::Result<()> {
    let k = 5;
    let examples = [
        ideal("cusp relation", 2, &["y2^2 - y1^3"])?,
        ideal("two monomials", 2, &["y1^2", "y1*y2"])?,
        ideal("plane in space", 3, &["y3"])?,
        ideal("fat point", 2, &["y1^2", "y1*y2", "y2^2"])?,
    ];
    for ideal in &examples {
        let diagram = diagram_of_ideal(ideal, k)?.diagram;
        let table = diagram.hilbert_samuel_table(k);
        // the codimension route recomputes H(k) independently
        let direct = hilbert_samuel_direct(ideal, k)?;
        assert_eq!(direct, table[k as usize]);
        println!("{}:", ideal.label());
        println!("  diagram {diagram}");
        println!("  H(0..={k}) = {table:?}");
    }
    Ok(())
}
