//! The session language end to end: declare maps, ideals, points, fibers,
//! and arcs in text, then query them — the same path the command line takes.

use jetdiagram::chevalley::{diagram_at_point, ChevalleyOptions};
use jetdiagram::ideals::diagram_of_ideal;
use jetdiagram::session::parse_session;

const SESSION: &str = "\
# A nodal curve and the ideal of its relation.
map node : R^1 -> R^2 { y1 = x1^2 - 1; y2 = x1^3 - x1; }
ideal R = < y2^2 - y1^2*(y1 + 1) >

# Both preimages of the origin, as one fiber tuple.
fiber N over node = [ (1), (-1) ]
";

fn main() -> jetdiagram::Result<()> {
    let session = parse_session(SESSION)?;

    let ideal = session.ideal("R").expect("declared above");
    let k = 3;
    println!("diagram of ({}): {}", ideal.generators()[0], diagram_of_ideal(ideal, k)?.diagram);

    let fiber = session.fiber("N").expect("declared above");
    let report = diagram_at_point(fiber, "node fiber", k, None, &ChevalleyOptions::default())?;
    println!(
        "relations of the two-point fiber: diagram {}, H = {:?} ({})",
        report.diagram, report.hs_table, report.status
    );

    // Errors carry positions: a decimal literal is rejected, not rounded.
    let bad = "point p = (1.25)";
    match parse_session(bad) {
        Err(e) => println!("rejected `{bad}`: {e}"),
        Ok(_) => unreachable!("decimals are not part of the language"),
    }
    Ok(())
}
