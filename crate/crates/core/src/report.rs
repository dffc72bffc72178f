//! Exact numbers in reports: fractions render as `"a/b"` strings and as
//! decimals computed with integer arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use serde::Serializer;

/// Exponents and ratios are exact rationals.
pub type Exponent = Ratio<i64>;

/// `"a/b"`, or `"a"` for integers.
pub fn frac_string(r: &Ratio<i64>) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal expansion of `r` rounded toward zero after `digits` places.
pub fn decimal(r: &Ratio<i64>, digits: u32) -> String {
    let num = BigInt::from(*r.numer());
    let den = BigInt::from(*r.denom());
    let neg = (num < BigInt::from(0)) != (den < BigInt::from(0));
    let (num, den) = (num.magnitude().clone(), den.magnitude().clone());
    let (int, rem) = num.div_rem(&den);
    let scaled = rem * num_bigint::BigUint::from(10u32).pow(digits) / &den;
    let frac = format!("{:0>width$}", scaled.to_string(), width = digits as usize);
    let sign = if neg && (int != 0u32.into() || scaled != 0u32.into()) { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

pub fn ser_ratio<S: Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&frac_string(r))
}

pub fn ser_opt_ratio<S: Serializer>(r: &Option<Ratio<i64>>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&frac_string(r)),
        None => s.serialize_none(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_fractions() {
        assert_eq!(frac_string(&Ratio::new(6, 4)), "3/2");
        assert_eq!(frac_string(&Ratio::from_integer(-2)), "-2");
        assert_eq!(decimal(&Ratio::new(47, 3), 4), "15.6666");
        assert_eq!(decimal(&Ratio::new(-1, 3), 3), "-0.333");
        assert_eq!(decimal(&Ratio::new(2, 1), 2), "2.00");
        assert_eq!(decimal(&Ratio::new(-1, 1000), 2), "0.00");
    }
}
