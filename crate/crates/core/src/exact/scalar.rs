//! Exact scalars: rationals, the rank-2 extension Q + Q·α by one formal
//! irrational, and elements of the circle group measured in full turns.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Reduced fraction with positive denominator (enforced by `BigRational`).
pub type Rational = BigRational;

/// Shorthand constructor for small rationals.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(num: i64) -> Rational {
    BigRational::from_integer(BigInt::from(num))
}

/// Element of Q + Q·α where α is a fixed formal irrational.
///
/// Products α·α never arise in this crate: every pairing is Z-bilinear in
/// integer vectors, so the ring stays a rank-2 module over Q.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlphaRat {
    pub rat: Rational,
    pub alpha: Rational,
}

impl AlphaRat {
    pub fn new(rat: Rational, alpha: Rational) -> Self {
        AlphaRat { rat, alpha }
    }

    pub fn from_rat(rat: Rational) -> Self {
        AlphaRat { rat, alpha: Rational::zero() }
    }

    pub fn zero() -> Self {
        AlphaRat { rat: Rational::zero(), alpha: Rational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.alpha.is_zero()
    }

    /// True when the value lies in Z (integer rational part, no α part).
    pub fn is_integral(&self) -> bool {
        self.alpha.is_zero() && self.rat.is_integer()
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        AlphaRat { rat: &self.rat * k, alpha: &self.alpha * k }
    }

    pub fn scale_rat(&self, k: &Rational) -> Self {
        AlphaRat { rat: &self.rat * k, alpha: &self.alpha * k }
    }
}

impl Add for AlphaRat {
    type Output = AlphaRat;
    fn add(self, rhs: AlphaRat) -> AlphaRat {
        AlphaRat { rat: self.rat + rhs.rat, alpha: self.alpha + rhs.alpha }
    }
}

impl<'a> AddAssign<&'a AlphaRat> for AlphaRat {
    fn add_assign(&mut self, rhs: &'a AlphaRat) {
        self.rat += &rhs.rat;
        self.alpha += &rhs.alpha;
    }
}

impl Sub for AlphaRat {
    type Output = AlphaRat;
    fn sub(self, rhs: AlphaRat) -> AlphaRat {
        AlphaRat { rat: self.rat - rhs.rat, alpha: self.alpha - rhs.alpha }
    }
}

impl Neg for AlphaRat {
    type Output = AlphaRat;
    fn neg(self) -> AlphaRat {
        AlphaRat { rat: -self.rat, alpha: -self.alpha }
    }
}

impl Mul<&BigInt> for &AlphaRat {
    type Output = AlphaRat;
    fn mul(self, rhs: &BigInt) -> AlphaRat {
        self.scale_int(rhs)
    }
}

impl fmt::Debug for AlphaRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alpha.is_zero() {
            write!(f, "{}", self.rat)
        } else if self.rat.is_zero() {
            write!(f, "{}a", self.alpha)
        } else {
            write!(f, "{}+{}a", self.rat, self.alpha)
        }
    }
}

impl fmt::Display for AlphaRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Element of the circle group T, written additively in full turns:
/// the value is exp(2πi·(turns + alpha·α)).
///
/// `turns` is kept reduced into [0,1); `alpha` is exact. Equality is
/// componentwise, and a value is a root of unity exactly when `alpha = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CircleValue {
    turns: Rational,
    alpha: Rational,
}

fn reduce_mod_one(t: Rational) -> Rational {
    let floor = t.floor();
    t - floor
}

impl CircleValue {
    pub fn new(turns: Rational, alpha: Rational) -> Self {
        CircleValue { turns: reduce_mod_one(turns), alpha }
    }

    pub fn from_turns(turns: Rational) -> Self {
        CircleValue::new(turns, Rational::zero())
    }

    pub fn from_alpha_rat(v: &AlphaRat) -> Self {
        CircleValue::new(v.rat.clone(), v.alpha.clone())
    }

    pub fn zero() -> Self {
        CircleValue { turns: Rational::zero(), alpha: Rational::zero() }
    }

    pub fn turns(&self) -> &Rational {
        &self.turns
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn is_zero(&self) -> bool {
        self.turns.is_zero() && self.alpha.is_zero()
    }

    pub fn add(&self, rhs: &CircleValue) -> CircleValue {
        CircleValue::new(&self.turns + &rhs.turns, &self.alpha + &rhs.alpha)
    }

    pub fn sub(&self, rhs: &CircleValue) -> CircleValue {
        CircleValue::new(&self.turns - &rhs.turns, &self.alpha - &rhs.alpha)
    }

    pub fn negate(&self) -> CircleValue {
        CircleValue::new(-self.turns.clone(), -self.alpha.clone())
    }

    pub fn scale_int(&self, k: i64) -> CircleValue {
        let k = BigInt::from(k);
        CircleValue::new(&self.turns * &k, &self.alpha * &k)
    }

    pub fn scale_bigint(&self, k: &BigInt) -> CircleValue {
        CircleValue::new(&self.turns * k, &self.alpha * k)
    }

    /// A value is a root of unity iff its α coefficient vanishes.
    pub fn is_root_of_unity(&self) -> bool {
        self.alpha.is_zero()
    }

    /// Order as a torsion element; defined only for roots of unity.
    pub fn torsion_order(&self) -> Result<u64> {
        if !self.alpha.is_zero() {
            return Err(Error::NotTorsion);
        }
        u64::try_from(self.turns.denom())
            .map_err(|_| Error::ResourceExceeded("torsion order exceeds u64".into()))
    }

    /// Numeric value as a point on the unit circle. Only defined for roots
    /// of unity; irrational parts never reach numeric code paths.
    pub fn to_complex(&self) -> num_complex::Complex64 {
        assert!(self.alpha.is_zero(), "numeric evaluation of an irrational circle value");
        let num = self
            .turns
            .numer()
            .to_string()
            .parse::<f64>()
            .expect("numerator fits f64 at desk scale");
        let den = self
            .turns
            .denom()
            .to_string()
            .parse::<f64>()
            .expect("denominator fits f64 at desk scale");
        let angle = std::f64::consts::TAU * (num / den);
        num_complex::Complex64::new(angle.cos(), angle.sin())
    }
}

impl fmt::Debug for CircleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CircleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alpha.is_zero() {
            write!(f, "{}", self.turns)
        } else {
            write!(f, "{}+{}a", self.turns, self.alpha)
        }
    }
}

/// Least common multiple of two u64 orders, guarded against overflow.
pub fn lcm_u64(a: u64, b: u64) -> Result<u64> {
    if a == 0 || b == 0 {
        return Err(Error::Internal("lcm of zero order".into()));
    }
    let g = a.gcd(&b);
    (a / g)
        .checked_mul(b)
        .ok_or_else(|| Error::ResourceExceeded("order lcm exceeds u64".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Signed};
    use proptest::prelude::*;

    #[test]
    fn add_wraps_mod_one() {
        let a = CircleValue::from_turns(rat(1, 3));
        let b = CircleValue::from_turns(rat(1, 2));
        assert_eq!(a.add(&b), CircleValue::from_turns(rat(5, 6)));
        let c = CircleValue::from_turns(rat(2, 3));
        assert_eq!(a.add(&c), CircleValue::zero());
    }

    #[test]
    fn torsion_order_of_quarter_turn() {
        let v = CircleValue::from_turns(rat(1, 4));
        assert_eq!(v.torsion_order().unwrap(), 4);
    }

    #[test]
    fn alpha_part_is_not_a_root_of_unity() {
        let v = CircleValue::new(Rational::zero(), rat(1, 2));
        assert!(!v.is_root_of_unity());
        assert!(matches!(v.torsion_order(), Err(Error::NotTorsion)));
    }

    fn arb_circle() -> impl Strategy<Value = CircleValue> {
        (-40i64..40, 1i64..12, -40i64..40, 1i64..12)
            .prop_map(|(a, b, c, d)| CircleValue::new(rat(a, b), rat(c, d)))
    }

    proptest! {
        #[test]
        fn circle_is_an_abelian_group(a in arb_circle(), b in arb_circle(), c in arb_circle()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert!(a.add(&a.negate()).is_zero());
            prop_assert_eq!(a.add(&CircleValue::zero()), a.clone());
        }

        #[test]
        fn turns_stay_reduced(a in arb_circle()) {
            prop_assert!(!a.turns().is_negative());
            prop_assert!(a.turns() < &Rational::one());
        }
    }
}
