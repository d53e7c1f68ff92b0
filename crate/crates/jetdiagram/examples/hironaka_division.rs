//! Division with remainder by a tuple of series: quotients supported on the
//! blocks claimed by each divisor's initial exponent, remainder supported
//! on the complement.

use jetdiagram::series::{hironaka_divide, TruncatedSeries};
use jetdiagram::session::parse_polynomial;

fn poly(text: &str) -> TruncatedSeries {
    parse_polynomial(text, 2).expect("example polynomials are well formed")
}

fn main() -> jetdiagram::Result<()> {
    let divisors = vec![poly("y2^2 - y1^3"), poly("y1^4")];
    let target = poly("y2^4 + y1*y2^2 + y1^5 + y1^2*y2");

    // Work modulo degree 9.
    let division = hironaka_divide(&target.truncate(9)?, &divisors)?;

    println!("dividing  {target}");
    println!("by        {}  and  {}", divisors[0], divisors[1]);
    for (i, q) in division.quotients.iter().enumerate() {
        println!("quotient {}: {}", i + 1, q);
    }
    println!("remainder:  {}", division.remainder);
    if let Some(b) = division.working_bound {
        println!("the identity target = sum q_i f_i + r holds modulo degree {b}");
    }

    // The remainder is the canonical representative: dividing it again
    // changes nothing.
    let again = hironaka_divide(&division.remainder, &divisors)?;
    assert!(again.quotients.iter().all(TruncatedSeries::is_zero));
    assert_eq!(again.remainder, division.remainder);
    println!("re-dividing the remainder leaves it fixed");
    Ok(())
}
