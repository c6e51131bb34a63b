use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact signed integer usable as the backing type of rationals and divisors.
///
/// Implemented for every type with the listed capabilities, so `i64`, `i128`
/// and `num_bigint::BigInt` all qualify. Fixed-width backings are faster but
/// panic on overflow in debug builds; `BigInt` never overflows.
pub trait ExactInt:
    Integer + Signed + Clone + FromPrimitive + ToPrimitive + Hash + Debug + Display + Send + Sync + 'static
{
}

impl<T> ExactInt for T where
    T: Integer
        + Signed
        + Clone
        + FromPrimitive
        + ToPrimitive
        + Hash
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Lift a machine integer into `I`. Panics if `I` is too narrow.
pub fn lift<I: ExactInt>(x: u64) -> I {
    I::from_u64(x).unwrap_or_else(|| panic!("{x} does not fit the scalar backing"))
}

pub fn ratio<I: ExactInt>(num: u64, den: u64) -> Ratio<I> {
    Ratio::new(lift(num), lift(den))
}

/// Integer value of a rational, if it has one and it fits in i128.
pub fn as_integer<I: ExactInt>(r: &Ratio<I>) -> Option<i128> {
    if r.is_integer() {
        r.to_integer().to_i128()
    } else {
        None
    }
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn gcd_all(xs: &[u64]) -> u64 {
    xs.iter().fold(0, |g, &x| g.gcd(&x))
}

/// Prime factorization by trial division; fine for the divisor indices that
/// show up here (all divide the degree).
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn factorize_small() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(91), vec![(7, 1), (13, 1)]);
        assert_eq!(factorize(1180), vec![(2, 2), (5, 1), (59, 1)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
    }

    #[test]
    fn integer_extraction() {
        let r: Ratio<BigInt> = ratio(14, 7);
        assert_eq!(as_integer(&r), Some(2));
        let r: Ratio<i64> = ratio(7, 2);
        assert_eq!(as_integer(&r), None);
    }

    #[test]
    fn gcd_of_list() {
        assert_eq!(gcd_all(&[12, 18, 30]), 6);
        assert_eq!(gcd_all(&[]), 0);
    }
}
