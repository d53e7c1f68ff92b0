//! The diagram of initial exponents of the cusp relation `y2^2 - y1^3`,
//! with its Hilbert-Samuel table and standard basis.

use jetdiagram::ideals::{diagram_of_ideal, standard_basis_truncated, IdealPresentation};
use jetdiagram::multiindex::MultiIndex;
use jetdiagram::report::staircase_grid;
use jetdiagram::scalar::q_from;
use jetdiagram::series::TruncatedSeries;

fn main() -> jetdiagram::Result<()> {
    let relation = TruncatedSeries::from_terms(
        2,
        None,
        [
            (MultiIndex::new(vec![0, 2]), q_from(1)),
            (MultiIndex::new(vec![3, 0]), q_from(-1)),
        ],
    )?;
    let ideal = IdealPresentation::new(2, "cusp relation", vec![relation])?;

    let k = 4;
    let truncated = diagram_of_ideal(&ideal, k)?;
    println!("ideal: ({})", ideal.generators()[0]);
    println!("diagram of initial exponents (degree <= {k}): {}", truncated.diagram);
    println!("hilbert-samuel table: {:?}", truncated.diagram.hilbert_samuel_table(k));

    println!("standard basis:");
    for g in standard_basis_truncated(&ideal, k)? {
        println!("  {g}");
    }

    println!("staircase ({}x{} grid, origin lower left):", k + 1, k + 1);
    for row in staircase_grid(&truncated.diagram, k)? {
        println!("  {row}");
    }
    Ok(())
}
