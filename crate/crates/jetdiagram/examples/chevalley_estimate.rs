//! How high a jet order is needed before the formal relations of a fiber
//! become visible at a given truncation degree — scanned heuristically,
//! then certified by an oracle of known relations.

use jetdiagram::chevalley::{diagram_at_point, ChevalleyOptions};
use jetdiagram::jets::{FiberTuple, PolynomialMap};
use jetdiagram::ideals::IdealPresentation;
use jetdiagram::scalar::q_zero;
use jetdiagram::session::{parse_polynomial, parse_session};

fn main() -> jetdiagram::Result<()> {
    let session = parse_session("map cusp : R^1 -> R^2 { y1 = x1^2; y2 = x1^3; }")?;
    let map: PolynomialMap = session.map("cusp").expect("declared above").clone();
    let fiber = FiberTuple::single(map, vec![q_zero()])?;
    let oracle =
        IdealPresentation::new(2, "known relation", vec![parse_polynomial("y2^2 - y1^3", 2)?])?;

    for k in 1..=4 {
        let options =
            ChevalleyOptions { oracle: Some(oracle.clone()), ..ChevalleyOptions::default() };
        let report = diagram_at_point(&fiber, "cusp fiber", k, None, &options)?;
        println!(
            "k = {k}: jet order {} suffices ({}), diagram {}, H = {:?}",
            report.l_used,
            report.status,
            report.diagram,
            report.hs_table,
        );
    }

    // At k = 4 the order-8 jets still see a spurious vertex; order 9 is the
    // first that tells the truth.
    let short = diagram_at_point(&fiber, "cusp fiber", 4, Some(8), &ChevalleyOptions::default())?;
    println!(
        "k = 4 at fixed order 8: diagram {} ({}) — one order too early",
        short.diagram, short.status
    );
    Ok(())
}
