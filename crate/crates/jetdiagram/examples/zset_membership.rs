//! Membership in the set of points whose diagram is at least a reference
//! diagram, decided from truncated jet data with an explicit caveat wherever
//! the truncation itself could hide the answer.

use jetdiagram::chevalley::ChevalleyOptions;
use jetdiagram::jets::FiberTuple;
use jetdiagram::scalar::{q_from, q_zero};
use jetdiagram::session::{parse_diagram_literal, parse_session};
use jetdiagram::strata::{z_set_membership, ZMode};

fn main() -> jetdiagram::Result<()> {
    let session = parse_session("map cusp : R^1 -> R^2 { y1 = x1^2; y2 = x1^3; }")?;
    let map = session.map("cusp").expect("declared above");
    let reference = parse_diagram_literal("(0,2)", 2)?;

    let k = 2;
    let cuspidal = FiberTuple::single(map.clone(), vec![q_zero()])?;
    let smooth = FiberTuple::single(map.clone(), vec![q_from(1)])?;

    for (name, fiber) in [("singular fiber", &cuspidal), ("smooth fiber", &smooth)] {
        for mode in [ZMode::Geq, ZMode::Gt] {
            let result =
                z_set_membership(fiber, &reference, mode, k, None, &ChevalleyOptions::default())?;
            println!(
                "{name}, {mode:?} {reference}: member = {}, computed diagram {} ({:?}){}",
                result.member,
                result.computed,
                result.comparison,
                if result.equality_truncation_caveat {
                    " — equality at this precision only"
                } else {
                    ""
                }
            );
        }
    }
    Ok(())
}
