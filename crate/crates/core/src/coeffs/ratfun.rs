use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::parse;
use super::poly::PolynomialQT;
use super::CoeffError;

/// An element of `Q(q,t)`.
///
/// Always stored reduced: `num` and `den` are coprime in `Z[q,t]` (integer
/// content included) and `den` has a positive leading coefficient. Two equal
/// field elements therefore have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunctionQT {
    num: PolynomialQT,
    den: PolynomialQT,
}

impl Default for RationalFunctionQT {
    fn default() -> Self {
        Self::zero()
    }
}

impl RationalFunctionQT {
    pub fn new(num: PolynomialQT, den: PolynomialQT) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: PolynomialQT, den: PolynomialQT) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return Self { num, den };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Self::fix_sign(num, den)
    }

    fn fix_sign(num: PolynomialQT, den: PolynomialQT) -> Self {
        if den.leading_coeff().is_negative() {
            Self { num: num.neg(), den: den.neg() }
        } else {
            Self { num, den }
        }
    }

    pub fn zero() -> Self {
        Self { num: PolynomialQT::zero(), den: PolynomialQT::one() }
    }

    pub fn one() -> Self {
        Self { num: PolynomialQT::one(), den: PolynomialQT::one() }
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self { num: PolynomialQT::constant(c), den: PolynomialQT::one() }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::reduce(
            PolynomialQT::constant(r.numer().clone()),
            PolynomialQT::constant(r.denom().clone()),
        )
    }

    pub fn from_poly(p: PolynomialQT) -> Self {
        Self { num: p, den: PolynomialQT::one() }
    }

    pub fn q() -> Self {
        Self::from_poly(PolynomialQT::q())
    }

    pub fn t() -> Self {
        Self::from_poly(PolynomialQT::t())
    }

    /// `q^a t^b` for any integer exponents; negative powers land in the denominator.
    pub fn qt(a: i64, b: i64) -> Self {
        let (na, da) = if a >= 0 { (a as u32, 0) } else { (0, (-a) as u32) };
        let (nb, db) = if b >= 0 { (b as u32, 0) } else { (0, (-b) as u32) };
        Self {
            num: PolynomialQT::monomial(1, na, nb),
            den: PolynomialQT::monomial(1, da, db),
        }
    }

    pub fn q_pow(a: i64) -> Self {
        Self::qt(a, 0)
    }

    pub fn t_pow(b: i64) -> Self {
        Self::qt(0, b)
    }

    pub fn numer(&self) -> &PolynomialQT {
        &self.num
    }

    pub fn denom(&self) -> &PolynomialQT {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when neither numerator nor denominator mentions `t`.
    pub fn is_t_free(&self) -> bool {
        !self.num.has_t() && !self.den.has_t()
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::fix_sign(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, CoeffError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self, CoeffError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs() as u32;
        Ok(Self { num: base.num.pow(e), den: base.den.pow(e) })
    }

    /// Evaluates at rational `q`, `t`; `None` when the denominator vanishes there.
    pub fn eval(&self, q: &BigRational, t: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(q, t);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(q, t) / d)
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        let other_num = if negate { other.num.neg() } else { other.num.clone() };
        if self.is_zero() {
            return Self { num: other_num, den: other.den.clone() };
        }
        if self.den == other.den {
            let num = self.num.add(&other_num);
            if self.den.is_one() {
                return Self { num, den: self.den.clone() };
            }
            return Self::reduce(num, self.den.clone());
        }
        if self.den.is_one() {
            return Self { num: self.num.mul(&other.den).add(&other_num), den: other.den.clone() };
        }
        if other.den.is_one() {
            return Self { num: other_num.mul(&self.den).add(&self.num), den: self.den.clone() };
        }
        let g = self.den.gcd(&other.den);
        if g.is_one() {
            let num = self.num.mul(&other.den).add(&other_num.mul(&self.den));
            return Self::fix_sign(num, self.den.mul(&other.den));
        }
        let a1 = self.den.div_exact(&g).expect("gcd divides");
        let a2 = other.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&a2).add(&other_num.mul(&a1));
        if num.is_zero() {
            return Self::zero();
        }
        let h = num.gcd(&g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (num.div_exact(&h).unwrap(), g.div_exact(&h).unwrap())
        };
        Self::fix_sign(num, g.mul(&a1).mul(&a2))
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let g1 = if other.den.is_one() { PolynomialQT::one() } else { self.num.gcd(&other.den) };
        let g2 = if self.den.is_one() { PolynomialQT::one() } else { other.num.gcd(&self.den) };
        let div = |p: &PolynomialQT, g: &PolynomialQT| {
            if g.is_one() {
                p.clone()
            } else {
                p.div_exact(g).expect("gcd divides")
            }
        };
        let num = div(&self.num, &g1).mul(&div(&other.num, &g2));
        let den = div(&self.den, &g2).mul(&div(&other.den, &g1));
        Self::fix_sign(num, den)
    }

    /// Multiplies by an integer.
    pub fn scale_int(&self, c: &BigInt) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero();
        }
        let g = c.gcd(&self.den.integer_content());
        let (c, den) = if g.is_one() {
            (c.clone(), self.den.clone())
        } else {
            (c / &g, self.den.div_scalar(&g))
        };
        Self::fix_sign(self.num.scale(&c), den)
    }
}

/// Equality by cross-multiplication; never needs a gcd.
pub fn ratfun_equal(a: &RationalFunctionQT, b: &RationalFunctionQT) -> bool {
    a.num.mul(&b.den) == b.num.mul(&a.den)
}

impl fmt::Display for RationalFunctionQT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunctionQT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for RationalFunctionQT {
    type Err = CoeffError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse_expr(s)
    }
}

impl serde::Serialize for RationalFunctionQT {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for RationalFunctionQT {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Zero for RationalFunctionQT {
    fn zero() -> Self {
        RationalFunctionQT::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunctionQT {
    fn one() -> Self {
        RationalFunctionQT::one()
    }
}

impl From<i64> for RationalFunctionQT {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl From<PolynomialQT> for RationalFunctionQT {
    fn from(p: PolynomialQT) -> Self {
        Self::from_poly(p)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&RationalFunctionQT> for &RationalFunctionQT {
            type Output = RationalFunctionQT;
            fn $method(self, rhs: &RationalFunctionQT) -> RationalFunctionQT {
                let f: fn(&RationalFunctionQT, &RationalFunctionQT) -> RationalFunctionQT = $body;
                f(self, rhs)
            }
        }
        impl $tr<RationalFunctionQT> for RationalFunctionQT {
            type Output = RationalFunctionQT;
            fn $method(self, rhs: RationalFunctionQT) -> RationalFunctionQT {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&RationalFunctionQT> for RationalFunctionQT {
            type Output = RationalFunctionQT;
            fn $method(self, rhs: &RationalFunctionQT) -> RationalFunctionQT {
                (&self).$method(rhs)
            }
        }
        impl $tr<RationalFunctionQT> for &RationalFunctionQT {
            type Output = RationalFunctionQT;
            fn $method(self, rhs: RationalFunctionQT) -> RationalFunctionQT {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, false));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));
forward_binop!(Div, div, |a, b| a.checked_div(b).expect("division by zero in Q(q,t)"));

impl Neg for RationalFunctionQT {
    type Output = RationalFunctionQT;
    fn neg(self) -> RationalFunctionQT {
        RationalFunctionQT { num: self.num.neg(), den: self.den }
    }
}

impl Neg for &RationalFunctionQT {
    type Output = RationalFunctionQT;
    fn neg(self) -> RationalFunctionQT {
        RationalFunctionQT { num: self.num.neg(), den: self.den.clone() }
    }
}

impl AddAssign<&RationalFunctionQT> for RationalFunctionQT {
    fn add_assign(&mut self, rhs: &RationalFunctionQT) {
        *self = self.add_impl(rhs, false);
    }
}

impl SubAssign<&RationalFunctionQT> for RationalFunctionQT {
    fn sub_assign(&mut self, rhs: &RationalFunctionQT) {
        *self = self.add_impl(rhs, true);
    }
}

impl MulAssign<&RationalFunctionQT> for RationalFunctionQT {
    fn mul_assign(&mut self, rhs: &RationalFunctionQT) {
        *self = self.mul_impl(rhs);
    }
}
