//! Coefficient fields.
//!
//! Every algebraic object in the crate is generic over an exact field
//! implementing [`Scalar`]. The default instantiation is [`Q`], arbitrary
//! precision rationals. `Ratio<i64>` also satisfies the bound and is handy for
//! small hand-checked cases, but overflows quickly on su(3).

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Exact field of coefficients.
pub trait Scalar: Num + Signed + Clone + Debug + Display + FromPrimitive + FromStr + PartialOrd + Send + Sync + 'static {
    /// `num / den` as a field element. Panics on `den == 0`.
    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i64(num).expect("integer embeds in field") / Self::from_i64(den).expect("integer embeds in field")
    }

    fn int(n: i64) -> Self {
        Self::from_i64(n).expect("integer embeds in field")
    }

    /// Exact square root when `self` is the square of a field element.
    fn exact_sqrt(&self) -> Option<Self>;

    /// Image in Z/p for a prime `p < 2^63`; `None` when p divides the
    /// denominator.
    fn residue(&self, p: u64) -> Option<u64>;
}

/// a·b⁻¹ mod p for residues already reduced.
fn div_mod(a: u64, b: u64, p: u64) -> Option<u64> {
    if b == 0 {
        return None;
    }
    let inv = crate::modp::pow(b, p - 2, p);
    Some(crate::modp::mul(a, inv, p))
}

impl Scalar for BigRational {
    fn exact_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(Ratio::new(n, d))
        } else {
            None
        }
    }

    fn residue(&self, p: u64) -> Option<u64> {
        let m = BigInt::from(p);
        let r = |x: &BigInt| -> u64 {
            let v = x.mod_floor(&m);
            v.to_u64().expect("reduced below p")
        };
        div_mod(r(self.numer()), r(self.denom()), p)
    }
}

impl Scalar for Ratio<i64> {
    fn exact_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let isqrt = |v: i64| -> Option<i64> {
            let r = (v as f64).sqrt().round() as i64;
            (r - 1..=r + 1).find(|c| *c >= 0 && c * c == v)
        };
        Some(Ratio::new(isqrt(*self.numer())?, isqrt(*self.denom())?))
    }

    fn residue(&self, p: u64) -> Option<u64> {
        let r = |x: i64| -> u64 { (x as i128).rem_euclid(p as i128) as u64 };
        div_mod(r(*self.numer()), r(*self.denom()), p)
    }
}

/// Arbitrary precision rationals.
pub type Q = BigRational;

/// Parses `"num/den"`, `"num"` or a JSON integer rendered as text.
pub fn parse_scalar<S: Scalar>(text: &str) -> Option<S> {
    let text = text.trim();
    if let Ok(v) = S::from_str(text) {
        return Some(v);
    }
    // Ratio's FromStr rejects a leading '+' and embedded spaces.
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let cleaned = cleaned.trim_start_matches('+');
    S::from_str(cleaned).ok()
}

/// Shorthand for building a rational constant.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_of_rational_squares() {
        assert_eq!(q(9, 4).exact_sqrt(), Some(q(3, 2)));
        assert_eq!(q(3, 1).exact_sqrt(), None);
        assert_eq!(q(-1, 1).exact_sqrt(), None);
        assert_eq!(Ratio::<i64>::new(1, 4).exact_sqrt(), Some(Ratio::new(1, 2)));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_scalar::<Q>("-1/6"), Some(q(-1, 6)));
        assert_eq!(parse_scalar::<Q>(" 3 / 5 "), Some(q(3, 5)));
        assert_eq!(parse_scalar::<Q>("7"), Some(q(7, 1)));
        assert_eq!(parse_scalar::<Q>("x"), None);
    }
}
