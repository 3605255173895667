//! Exact scalar rings: p-local rationals and the prime fields 𝔽_p.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number. Divisions by `p` in the formal-group-law stage
/// land here; p-integrality is certified by [`is_p_integral`] before any
/// reduction.
pub type PLocalRational = BigRational;

/// Commutative ring of exact scalars usable as series coefficients.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_i64(v: i64) -> Self;

    /// Multiplicative inverse, if the value is a unit.
    fn inverse(&self) -> Option<Self>;

    /// `self += a * b` without cloning the operands.
    fn mul_add_assign(&mut self, a: &Self, b: &Self);

    fn mul_ref(&self, other: &Self) -> Self;
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

/// Trial-division primality test.
pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

/// True iff `p` does not divide the (reduced) denominator of `q`.
pub fn is_p_integral(q: &PLocalRational, p: u32) -> bool {
    !q.denom().is_multiple_of(&BigInt::from(p))
}

fn residue_of(n: &BigInt, p: u32) -> u32 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u32().expect("residue fits in u32")
}

/// Reduce a p-integral rational modulo `p`.
pub fn reduce_mod_p<const P: u32>(q: &PLocalRational) -> Result<Fp<P>> {
    if !is_p_integral(q, P) {
        return Err(Error::NotPIntegral(q.to_string(), P));
    }
    let num = Fp::<P>::new(residue_of(q.numer(), P));
    let den = Fp::<P>::new(residue_of(q.denom(), P));
    Ok(num * den.inverse().expect("denominator coprime to p"))
}

/// Element of the prime field 𝔽_P.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u32>(u32);

/// The prime field element type used throughout; `P` is the characteristic.
pub type PrimeFieldElement<const P: u32> = Fp<P>;

impl<const P: u32> Fp<P> {
    pub const MODULUS: u32 = P;

    pub fn new(v: u32) -> Self {
        Fp(v % P)
    }

    pub fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u32)
    }

    pub fn residue(self) -> u32 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inverse(self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P as u64 - 2))
        }
    }
}

impl<const P: u32> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> std::str::FromStr for Fp<P> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let v: i64 = s.trim().parse().map_err(|_| Error::Parse(format!("bad residue `{s}`")))?;
        Ok(Fp::from_i64(v))
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + P - rhs.0 })
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(self.0 * rhs.0 % P)
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u32> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u32> Scalar for Fp<P> {
    fn from_i64(v: i64) -> Self {
        Fp::from_i64(v)
    }

    fn inverse(&self) -> Option<Self> {
        Fp::inverse(*self)
    }

    fn mul_add_assign(&mut self, a: &Self, b: &Self) {
        *self = *self + *a * *b;
    }

    fn mul_ref(&self, other: &Self) -> Self {
        *self * *other
    }
}

/// Integer power of a rational, exact.
pub fn rational_pow(q: &BigRational, e: u32) -> BigRational {
    num_traits::pow(q.clone(), e as usize)
}

/// Sign-aware rendering used in reports: `-3`, `1/2`.
pub fn render_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else if q.is_negative() {
        format!("-{}/{}", q.numer().abs(), q.denom())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_mod_p::<2>(&q(-3, 1)).unwrap(), Fp::new(1));
        assert_eq!(reduce_mod_p::<3>(&q(1, 2)).unwrap(), Fp::new(2));
        assert!(matches!(
            reduce_mod_p::<2>(&q(1, 2)),
            Err(Error::NotPIntegral(_, 2))
        ));
    }

    #[test]
    fn primes() {
        let found: Vec<u32> = (0..20).filter(|&p| is_prime(p)).collect();
        assert_eq!(found, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }

    #[test]
    fn gcd_normalized() {
        let x = q(6, 4) * q(2, 3);
        assert_eq!(x, q(1, 1));
        assert_eq!(x.denom(), &BigInt::from(1));
    }

    fn small_rational() -> impl Strategy<Value = BigRational> {
        (-50i64..50, 1i64..30).prop_map(|(n, d)| q(n, d))
    }

    fn p_integral_5() -> impl Strategy<Value = BigRational> {
        (-200i64..200, 1i64..40)
            .prop_filter("denominator coprime to 5", |(_, d)| d % 5 != 0)
            .prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #[test]
        fn rational_ring_axioms(a in small_rational(), b in small_rational(), c in small_rational()) {
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        }

        #[test]
        fn fp_ring_axioms(a in 0u32..7, b in 0u32..7, c in 0u32..7) {
            let (a, b, c) = (Fp::<7>::new(a), Fp::<7>::new(b), Fp::<7>::new(c));
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a + b, b + a);
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!(a - a, Fp::zero());
        }

        #[test]
        fn reduction_is_multiplicative(a in p_integral_5(), b in p_integral_5()) {
            let lhs = reduce_mod_p::<5>(&(&a * &b)).unwrap();
            let rhs = reduce_mod_p::<5>(&a).unwrap() * reduce_mod_p::<5>(&b).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn reduction_is_additive(a in p_integral_5(), b in p_integral_5()) {
            let lhs = reduce_mod_p::<5>(&(&a + &b)).unwrap();
            let rhs = reduce_mod_p::<5>(&a).unwrap() + reduce_mod_p::<5>(&b).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
