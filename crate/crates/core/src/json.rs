//! JSON serialization for the public data types, plus shared display
//! helpers.  All arbitrary-precision coefficients serialize as decimal
//! strings so downstream consumers never overflow a 64-bit integer.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

/// Writes a signed sum of labelled terms, e.g. `b_2^b_0 - 3*b_1`.
pub(crate) fn fmt_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, &'a BigInt)>,
) -> fmt::Result {
    let mut first = true;
    let mut any = false;
    for (label, c) in terms {
        any = true;
        let neg = c.sign() == num_bigint::Sign::Minus;
        let mag = c.magnitude();
        if first {
            if neg {
                write!(f, "-")?;
            }
            first = false;
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        if mag.is_one() {
            write!(f, "{label}")?;
        } else {
            write!(f, "{mag}*{label}")?;
        }
    }
    if !any {
        write!(f, "0")?;
    }
    Ok(())
}
