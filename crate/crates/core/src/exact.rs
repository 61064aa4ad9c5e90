//! Exact scalar arithmetic: dyadic rationals and the ring ℤ[√2][1/2].
//!
//! `Dyadic` is n/2^m with an arbitrary-precision mantissa, kept in canonical
//! form (exponent 0 or odd mantissa) after every operation so that structural
//! equality is value equality. `ExactScalar` is a + b·√2 with dyadic a, b;
//! this ring contains every Koopman matrix entry in the Hadamard-rotated
//! basis, every slope square root, and every Hilbert-Schmidt norm square
//! that the exact pipeline produces.
//!
//! Mantissas are arbitrary precision, so overflow cannot occur; the only
//! partial operations are divisions, which report failure instead of rounding.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::{CoreError, Result};

/// A dyadic rational n/2^m in canonical form: `exp == 0` or `num` odd.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    pub fn new(num: BigInt, exp: u32) -> Self {
        let mut d = Dyadic { num, exp };
        d.canonicalize();
        d
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic {
            num: BigInt::from(n),
            exp: 0,
        }
    }

    /// n / 2^m.
    pub fn ratio(n: i64, m: u32) -> Self {
        Dyadic::new(BigInt::from(n), m)
    }

    pub fn zero() -> Self {
        Dyadic::from_int(0)
    }

    pub fn one() -> Self {
        Dyadic::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    fn canonicalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.num.trailing_zeros().unwrap_or(0) as u32;
        let k = tz.min(self.exp);
        if k > 0 {
            self.num >>= k as usize;
            self.exp -= k;
        }
    }

    /// Multiply by 2^k (k may be negative).
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.num.is_zero() {
            return Dyadic::zero();
        }
        if k >= 0 {
            let k = k as u32;
            if k <= self.exp {
                Dyadic {
                    num: self.num.clone(),
                    exp: self.exp - k,
                }
            } else {
                Dyadic {
                    num: &self.num << (k - self.exp) as usize,
                    exp: 0,
                }
            }
        } else {
            Dyadic::new(self.num.clone(), self.exp + (-k) as u32)
        }
    }

    /// 2^k as a dyadic.
    pub fn pow2(k: i64) -> Self {
        Dyadic::one().mul_pow2(k)
    }

    pub fn to_f64(&self) -> f64 {
        // Good to within a couple of ulp for desk-scale mantissas.
        self.num.to_f64().unwrap_or(f64::NAN) * (-(self.exp as i32) as f64).exp2()
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    /// self * 2^k as an exact integer, if it is one.
    pub fn shifted_integer(&self, k: i64) -> Option<BigInt> {
        let s = self.mul_pow2(k);
        if s.is_integer() {
            Some(s.num)
        } else {
            None
        }
    }

    pub fn signum(&self) -> i32 {
        if self.num.is_zero() {
            0
        } else if self.num.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            num: self.num.abs(),
            exp: self.exp,
        }
    }

    /// Exact quotient self/other when it exists as a dyadic
    /// (otherwise the mantissa division has a remainder).
    pub fn exact_div(&self, other: &Dyadic) -> Option<Dyadic> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Dyadic::zero());
        }
        let r = &self.num % &other.num;
        if !r.is_zero() {
            return None;
        }
        let q = &self.num / &other.num;
        // self/other = q * 2^(other.exp - self.exp)
        Some(Dyadic::new(q, 0).mul_pow2(other.exp as i64 - self.exp as i64))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exp.max(other.exp);
        let a = &self.num << (e - self.exp) as usize;
        let b = &other.num << (e - other.exp) as usize;
        a.cmp(&b)
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let e = self.exp.max(rhs.exp);
        let a = &self.num << (e - self.exp) as usize;
        let b = &rhs.num << (e - rhs.exp) as usize;
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.num * &rhs.num, self.exp + rhs.exp)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            num: -&self.num,
            exp: self.exp,
        }
    }
}

impl AddAssign<&Dyadic> for Dyadic {
    fn add_assign(&mut self, rhs: &Dyadic) {
        *self = &*self + rhs;
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// An element of ℤ[√2][1/2]: `rat + irr·√2` with dyadic coordinates.
///
/// Equality is structural on canonical coordinates; since √2 is irrational
/// this coincides with value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    rat: Dyadic,
    irr: Dyadic,
}

impl ExactScalar {
    pub fn new(rat: Dyadic, irr: Dyadic) -> Self {
        ExactScalar { rat, irr }
    }

    pub fn from_dyadic(d: Dyadic) -> Self {
        ExactScalar {
            rat: d,
            irr: Dyadic::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_dyadic(Dyadic::from_int(n))
    }

    /// (a + b√2)/2^m.
    pub fn parts(a: i64, b: i64, m: u32) -> Self {
        ExactScalar {
            rat: Dyadic::ratio(a, m),
            irr: Dyadic::ratio(b, m),
        }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn sqrt2() -> Self {
        ExactScalar {
            rat: Dyadic::zero(),
            irr: Dyadic::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    pub fn rat(&self) -> &Dyadic {
        &self.rat
    }

    pub fn irr(&self) -> &Dyadic {
        &self.irr
    }

    /// √(2^k), exact: 2^(k/2) for even k, 2^((k-1)/2)·√2 for odd k.
    pub fn sqrt_pow2(k: i64) -> Self {
        if k.rem_euclid(2) == 0 {
            ExactScalar {
                rat: Dyadic::pow2(k / 2),
                irr: Dyadic::zero(),
            }
        } else {
            ExactScalar {
                rat: Dyadic::zero(),
                irr: Dyadic::pow2((k - 1).div_euclid(2)),
            }
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        ExactScalar {
            rat: self.rat.mul_pow2(k),
            irr: self.irr.mul_pow2(k),
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn to_f64(&self) -> f64 {
        self.rat.to_f64() + self.irr.to_f64() * std::f64::consts::SQRT_2
    }

    /// Sign of the real value a + b√2, decided exactly.
    pub fn signum(&self) -> i32 {
        let (sa, sb) = (self.rat.signum(), self.irr.signum());
        match (sa, sb) {
            (0, s) | (s, 0) => s,
            (1, 1) => 1,
            (-1, -1) => -1,
            _ => {
                // Mixed signs: compare a^2 with 2 b^2.
                let a2 = &self.rat * &self.rat;
                let b2 = (&self.irr * &self.irr).mul_pow2(1);
                match a2.cmp(&b2) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => 0, // impossible for nonzero b: √2 irrational
                }
            }
        }
    }

    /// Field conjugate a − b√2 (used by exact division).
    pub fn galois_conj(&self) -> Self {
        ExactScalar {
            rat: self.rat.clone(),
            irr: -&self.irr,
        }
    }

    /// Exact quotient when it exists in the ring.
    pub fn exact_div(&self, other: &ExactScalar) -> Option<ExactScalar> {
        if other.is_zero() {
            return None;
        }
        // x/y = x·ȳ / N(y) with N(y) = a² − 2b² a nonzero dyadic.
        let conj = other.galois_conj();
        let num = self * &conj;
        let norm = &(&other.rat * &other.rat) - &(&other.irr * &other.irr).mul_pow2(1);
        let rat = num.rat.exact_div(&norm)?;
        let irr = num.irr.exact_div(&norm)?;
        Some(ExactScalar { rat, irr })
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar {
            rat: &self.rat + &rhs.rat,
            irr: &self.irr + &rhs.irr,
        }
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar {
            rat: &self.rat - &rhs.rat,
            irr: &self.irr - &rhs.irr,
        }
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        // (a + b√2)(c + d√2) = (ac + 2bd) + (ad + bc)√2
        let ac = &self.rat * &rhs.rat;
        let bd2 = (&self.irr * &rhs.irr).mul_pow2(1);
        let ad = &self.rat * &rhs.irr;
        let bc = &self.irr * &rhs.rat;
        ExactScalar {
            rat: &ac + &bd2,
            irr: &ad + &bc,
        }
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            rat: -&self.rat,
            irr: -&self.irr,
        }
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        self.rat += &rhs.rat;
        self.irr += &rhs.irr;
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.irr.is_zero() {
            write!(f, "{}", self.rat)
        } else if self.rat.is_zero() {
            write!(f, "{}*sqrt2", self.irr)
        } else {
            write!(f, "{} + {}*sqrt2", self.rat, self.irr)
        }
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Mantissa as i64 for the fixed serialization schema.
pub fn mantissa_i64(d: &Dyadic) -> Result<i64> {
    d.numerator()
        .to_i64()
        .ok_or_else(|| CoreError::SerializationRange(format!("{d}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn es(a: i64, b: i64, m: u32) -> ExactScalar {
        ExactScalar::parts(a, b, m)
    }

    #[test]
    fn canonical_form() {
        let d = Dyadic::ratio(4, 3); // 4/8 = 1/2
        assert_eq!(d, Dyadic::ratio(1, 1));
        assert_eq!(d.exponent(), 1);
        assert_eq!(Dyadic::ratio(0, 7), Dyadic::zero());
    }

    #[test]
    fn half_sqrt2_squared_is_half() {
        // (√2/2)·(√2/2) = 1/2
        let h = es(0, 1, 1);
        assert_eq!(&h * &h, es(1, 0, 1));
    }

    #[test]
    fn cancellation() {
        // (1 + √2) + (1 − √2) = 2
        let s = &es(1, 1, 0) + &es(1, -1, 0);
        assert_eq!(s, ExactScalar::from_int(2));
    }

    #[test]
    fn pq_normalization() {
        // (√2/2)² + (√2/2)² = 1, the L² normalization of the rotated pair.
        let h = es(0, 1, 1);
        let s = &h.square() + &h.square();
        assert_eq!(s, ExactScalar::one());
    }

    #[test]
    fn sqrt_pow2_values() {
        assert_eq!(ExactScalar::sqrt_pow2(0), ExactScalar::one());
        assert_eq!(ExactScalar::sqrt_pow2(2), ExactScalar::from_int(2));
        assert_eq!(ExactScalar::sqrt_pow2(1), ExactScalar::sqrt2());
        assert_eq!(ExactScalar::sqrt_pow2(-1), es(0, 1, 1));
        assert_eq!(
            &ExactScalar::sqrt_pow2(-3) * &ExactScalar::sqrt_pow2(3),
            ExactScalar::one()
        );
    }

    #[test]
    fn to_f64_machine_values() {
        assert_eq!(ExactScalar::zero().to_f64(), 0.0);
        assert_eq!(es(0, 1, 1).to_f64(), 0.7071067811865476);
        assert_eq!(Dyadic::ratio(1, 2).to_f64(), 0.25);
    }

    #[test]
    fn signum_mixed() {
        assert_eq!(es(3, -2, 0).signum(), 1); // 3 − 2√2 = 0.17…
        assert_eq!(es(-3, 2, 0).signum(), -1);
        assert_eq!(es(1, -1, 0).signum(), -1); // 1 − √2 < 0
        assert_eq!(ExactScalar::zero().signum(), 0);
    }

    #[test]
    fn exact_div_in_ring() {
        let x = es(3, 5, 2); // (3+5√2)/4
        let y = es(0, 1, 1); // √2/2
        let q = x.exact_div(&y).unwrap();
        assert_eq!(&q * &y, x);
        // 1/3 is not in the ring
        assert!(ExactScalar::one()
            .exact_div(&ExactScalar::from_int(3))
            .is_none());
    }

    #[test]
    fn dyadic_ordering() {
        assert!(Dyadic::ratio(3, 2) < Dyadic::one());
        assert!(Dyadic::ratio(5, 3) > Dyadic::ratio(4, 3));
    }
}
