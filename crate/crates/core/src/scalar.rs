//! Exact rational scalars.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Ground field element. Always kept in lowest terms with a positive
/// denominator (guaranteed by `BigRational`).
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// Formats as `p` or `p/q`.
pub fn format(s: &Scalar) -> String {
    if s.is_integer() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Parses `p` or `p/q` with an optional sign. Returns `None` on malformed
/// input or a zero denominator.
pub fn parse(text: &str) -> Option<Scalar> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Scalar::new(num, den))
}

/// Positive generator of the additive subgroup of Q generated by `values`,
/// or zero when every value is zero.
pub fn subgroup_generator<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> Scalar {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for v in values {
        if v.is_zero() {
            continue;
        }
        // gcd(a/b, c/d) = gcd(a*d, c*b) / (b*d), then normalize.
        let a = num.clone() * v.denom();
        let c = v.numer().abs() * &den;
        num = a.gcd(&c);
        den *= v.denom();
        let g = num.gcd(&den);
        if !g.is_zero() {
            num /= &g;
            den /= &g;
        }
    }
    Scalar::new(num, den)
}

/// Greatest integer not exceeding `s`.
pub fn floor(s: &Scalar) -> BigInt {
    s.floor().to_integer()
}

pub fn is_positive(s: &Scalar) -> bool {
    s.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse() {
        assert_eq!(format(&ratio(3, 2)), "3/2");
        assert_eq!(format(&ratio(-4, 2)), "-2");
        assert_eq!(parse("-6/4"), Some(ratio(-3, 2)));
        assert_eq!(parse(" 7 "), Some(int(7)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("x"), None);
    }

    #[test]
    fn generator_of_rational_subgroup() {
        let vals = [ratio(1, 2), ratio(3, 4), int(0)];
        assert_eq!(subgroup_generator(&vals), ratio(1, 4));
        assert_eq!(subgroup_generator(&[int(4), int(6)]), int(2));
        assert_eq!(subgroup_generator(&[int(-3)]), int(3));
        assert_eq!(subgroup_generator(&[]), int(0));
    }
}
