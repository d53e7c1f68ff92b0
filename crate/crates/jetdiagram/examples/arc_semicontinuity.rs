//! Diagrams along an arc of fibers: the surface `(u, t) -> (u, t^2, t^3 + u t)`
//! has a generic cuspidal section that degenerates at `u = 0`, and the limit
//! diagram dominates the generic one.

use jetdiagram::ideals::IdealPresentation;
use jetdiagram::session::{parse_polynomial, parse_rational_list, parse_session};
use jetdiagram::strata::{diagram_along_arc, semicontinuity_check, ArcOptions};

fn main() -> jetdiagram::Result<()> {
    let session = parse_session(
        "map surf : R^2 -> R^3 { y1 = x1; y2 = x2^2; y3 = x2^3 + x1*x2; }\n\
         arc g(w) for surf = [ (w, 0) ]",
    )?;
    let arc = session.arc("g").expect("declared above");

    let options = ArcOptions {
        oracle: Some(IdealPresentation::new(
            3,
            "surface relation",
            vec![parse_polynomial("y3^2 - y2*(y1 + y2)^2", 3)?],
        )?),
        ..ArcOptions::default()
    };

    let samples = parse_rational_list("1,1/2,1/4,0")?;
    let along = diagram_along_arc(arc, &samples, 3, &options)?;
    for report in &along.reports {
        println!(
            "{}: diagram {}, H = {:?}, jet order {} ({})",
            report.label, report.diagram, report.hs_table, report.l_used, report.status
        );
    }

    let verdict = semicontinuity_check(&along)?;
    println!("limit vs generic: {:?}", verdict.diagram_comparison);
    println!("hilbert-samuel margins: {:?}", verdict.hs_margins);
    println!("all samples certified: {}", verdict.all_certified);
    println!("semicontinuity at the samples: {}", if verdict.pass { "pass" } else { "fail" });
    Ok(())
}
