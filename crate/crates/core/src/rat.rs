//! Exact rational scalars and small helpers used throughout the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Gl2Error;

/// Arbitrary-precision rational number; every exact computation in this
/// crate is carried out over this type.
pub type Rat = BigRational;

/// `n` as a rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as a rational.
pub fn rq(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Binomial coefficient `C(n, k)` as a rational.
pub fn binom(n: usize, k: usize) -> Rat {
    if k > n {
        return Rat::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k.min(n - k) {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    Rat::new(num, den)
}

/// `n!` as a rational.
pub fn factorial(n: usize) -> Rat {
    let mut f = BigInt::one();
    for i in 2..=n {
        f *= BigInt::from(i);
    }
    Rat::from_integer(f)
}

/// Renders a rational as `p/q`, or just `p` when the denominator is one.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q` or `p` (optionally signed) into a rational.
pub fn rat_from_str(s: &str) -> Result<Rat, Gl2Error> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt, Gl2Error> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Gl2Error::Parse(format!("bad integer `{t}`")))
    };
    match s.split_once('/') {
        Some((num, den)) => {
            let d = parse_int(den)?;
            if d.is_zero() {
                return Err(Gl2Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rat::new(parse_int(num)?, d))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

/// Nearest f64, for float paths and reporting.
pub fn rat_to_f64(r: &Rat) -> f64 {
    let f = |x: &BigInt| -> f64 {
        // Large values fall back on string conversion accuracy.
        x.to_string().parse::<f64>().unwrap_or(f64::NAN)
    };
    if r.denom().is_one() {
        f(r.numer())
    } else {
        f(r.numer()) / f(r.denom())
    }
}

/// Sign of a rational as -1, 0, or 1.
pub fn sign(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binom_and_factorial() {
        assert_eq!(binom(8, 3), rint(56));
        assert_eq!(binom(4, 0), rint(1));
        assert_eq!(binom(3, 5), rint(0));
        assert_eq!(factorial(5), rint(120));
        assert_eq!(factorial(0), rint(1));
    }

    #[test]
    fn rational_strings_round_trip() {
        for s in ["3/4", "-7/2", "0", "12", "-5"] {
            let r = rat_from_str(s).unwrap();
            assert_eq!(rat_from_str(&rat_to_string(&r)).unwrap(), r);
        }
        assert!(rat_from_str("1/0").is_err());
        assert!(rat_from_str("x").is_err());
    }

    #[test]
    fn f64_conversion() {
        assert_eq!(rat_to_f64(&rq(1, 2)), 0.5);
        assert_eq!(rat_to_f64(&rint(-3)), -3.0);
    }
}
