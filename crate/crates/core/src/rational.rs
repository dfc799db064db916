//! Exact rational scalars.
//!
//! Every scalar in this crate is a `BigRational`: arbitrary-precision,
//! always reduced, positive denominator. No floating point appears anywhere;
//! strict-majority and exact-tie semantics are not robust under rounding.

use num_bigint::BigInt;
use num_traits::One;

pub use num_rational::BigRational as Rational;

/// Integer as a rational.
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `num / den` in lowest terms. Panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn half() -> Rational {
    frac(1, 2)
}

/// True iff `v` lies in the closed unit interval.
pub fn in_unit_interval(v: &Rational) -> bool {
    !v.is_negative() && *v <= one()
}

use num_traits::Signed;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_sign() {
        let r = frac(2, -4);
        assert_eq!(r, frac(-1, 2));
        assert!(r.denom() > &BigInt::from(0));
        assert_eq!(frac(3, 3), one());
    }

    #[test]
    fn unit_interval() {
        use num_traits::Zero;
        assert!(in_unit_interval(&half()));
        assert!(in_unit_interval(&Rational::zero()));
        assert!(in_unit_interval(&one()));
        assert!(!in_unit_interval(&frac(3, 2)));
        assert!(!in_unit_interval(&frac(-1, 5)));
    }
}
