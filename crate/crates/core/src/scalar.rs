//! Exact scalar fields.
//!
//! Everything in this crate is generic over a [`Field`]. Only exact fields are admitted:
//! `Ratio<T>` for a signed integer type `T`. The crate root exposes [`crate::Rational`]
//! (arbitrary precision) as the type used by the CLI and the test suites; `Ratio<i64>` works
//! for small inputs where overflow is not a concern.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

use crate::error::ParseScalarError;

/// An exact field of characteristic zero with a decimal text form `p` or `p/q`.
pub trait Field: Num + Signed + Clone + Debug + Display + Send + Sync + 'static {
    /// Multiplicative inverse. Panics on zero.
    fn recip(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::one() / self.clone()
    }

    /// Embeds a machine integer.
    fn from_i64(n: i64) -> Self;
}

impl<T> Field for Ratio<T>
where
    T: Integer + Signed + Clone + Debug + Display + Send + Sync + 'static,
    Ratio<T>: Signed,
{
    fn from_i64(n: i64) -> Self {
        // i64 does not fit every T; go through decimal digits.
        let digits = n.to_string();
        let numer = T::from_str_radix(&digits, 10)
            .unwrap_or_else(|_| panic!("integer {n} does not fit the scalar type"));
        Ratio::from_integer(numer)
    }
}

fn is_integer_literal(s: &str) -> bool {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

/// Parses `"p"` or `"p/q"` with decimal integers `p`, `q`.
pub fn parse_scalar<K: Field>(text: &str) -> Result<K, ParseScalarError> {
    let text = text.trim();
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let malformed = || ParseScalarError::Malformed(text.to_string());
    if !is_integer_literal(numer) {
        return Err(malformed());
    }
    // `Ratio::from_str_radix` wants an explicit denominator.
    let integer = |digits: &str| K::from_str_radix(&format!("{digits}/1"), 10);
    let numer = integer(numer).map_err(|_| malformed())?;
    match denom {
        None => Ok(numer),
        Some(d) => {
            if !is_integer_literal(d) {
                return Err(malformed());
            }
            let d = integer(d).map_err(|_| malformed())?;
            if d.is_zero() {
                return Err(ParseScalarError::ZeroDenominator(text.to_string()));
            }
            Ok(numer / d)
        }
    }
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_scalar<K: Field>(value: &K) -> String {
    value.to_string()
}
