use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::multipoly::{int, EvalRing, Rational};
use crate::univariate::UniPoly;

/// Exact element `a + b·√d` of a quadratic field, `d` squarefree and not 1.
///
/// A value with `b = 0` is rational and combines with any field; mixing two
/// different nonzero radicands is a logic error and panics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadNumber {
    pub a: Rational,
    pub b: Rational,
    pub d: BigInt,
}

/// Split `n = k² · s` with `s` squarefree; returns `(k, s)`.
pub fn square_free_split(n: &BigInt) -> (BigInt, BigInt) {
    if n.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let sign = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut m = n.abs();
    let mut k = BigInt::one();
    let mut s = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0u32;
        while m.is_multiple_of(&p) {
            m /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            k *= &p;
        }
        if e % 2 == 1 {
            s *= &p;
        }
        p += 1;
    }
    s *= m;
    (k, s * sign)
}

fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

impl QuadNumber {
    pub fn rational(a: Rational) -> Self {
        QuadNumber { a, b: Rational::zero(), d: BigInt::zero() }
    }

    /// `a + b·√n` for any integer `n`, normalizing the radicand.
    pub fn new(a: Rational, b: Rational, n: &BigInt) -> Self {
        let (k, s) = square_free_split(n);
        if b.is_zero() || s.is_zero() {
            return QuadNumber::rational(a);
        }
        let b = b * Rational::from_integer(k);
        if s.is_one() {
            return QuadNumber::rational(a + b);
        }
        QuadNumber { a, b, d: s }
    }

    /// √q for rational `q`.
    pub fn sqrt_rational(q: &Rational) -> Self {
        // √(n/m) = √(n·m) / m
        let nm = q.numer() * q.denom();
        let den = Rational::from_integer(q.denom().clone());
        if let Some(r) = isqrt_exact(&nm) {
            return QuadNumber::rational(Rational::from_integer(r) / den);
        }
        QuadNumber::new(Rational::zero(), den.recip(), &nm)
    }

    /// Both roots of `c2 z² + c1 z + c0` (`c2 ≠ 0`), `+√` first.
    pub fn quadratic_roots(c2: &Rational, c1: &Rational, c0: &Rational) -> [QuadNumber; 2] {
        let disc = c1 * c1 - int(4) * c2 * c0;
        let s = QuadNumber::sqrt_rational(&disc);
        let two_a = int(2) * c2;
        let base = -c1 / &two_a;
        let plus = QuadNumber { a: &base + &s.a / &two_a, b: &s.b / &two_a, d: s.d.clone() };
        let minus = QuadNumber { a: &base - &s.a / &two_a, b: -&s.b / &two_a, d: s.d.clone() };
        [plus.normalized(), minus.normalized()]
    }

    fn normalized(self) -> Self {
        if self.b.is_zero() {
            QuadNumber::rational(self.a)
        } else {
            self
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn common_d(&self, other: &QuadNumber) -> BigInt {
        match (self.b.is_zero(), other.b.is_zero()) {
            (true, true) => BigInt::zero(),
            (false, true) => self.d.clone(),
            (true, false) => other.d.clone(),
            (false, false) => {
                assert_eq!(self.d, other.d, "quadratic numbers from different fields");
                self.d.clone()
            }
        }
    }

    pub fn conjugate(&self) -> QuadNumber {
        QuadNumber { a: self.a.clone(), b: -self.b.clone(), d: self.d.clone() }
    }

    /// Field norm `a² − d b²`.
    pub fn norm(&self) -> Rational {
        if self.b.is_zero() {
            return &self.a * &self.a;
        }
        &self.a * &self.a - Rational::from_integer(self.d.clone()) * &self.b * &self.b
    }

    pub fn add(&self, o: &QuadNumber) -> QuadNumber {
        let d = self.common_d(o);
        QuadNumber { a: &self.a + &o.a, b: &self.b + &o.b, d }.normalized()
    }

    pub fn sub(&self, o: &QuadNumber) -> QuadNumber {
        let d = self.common_d(o);
        QuadNumber { a: &self.a - &o.a, b: &self.b - &o.b, d }.normalized()
    }

    pub fn neg(&self) -> QuadNumber {
        QuadNumber { a: -self.a.clone(), b: -self.b.clone(), d: self.d.clone() }
    }

    pub fn mul(&self, o: &QuadNumber) -> QuadNumber {
        let d = self.common_d(o);
        let dr = Rational::from_integer(d.clone());
        let a = &self.a * &o.a + &self.b * &o.b * &dr;
        let b = &self.a * &o.b + &self.b * &o.a;
        QuadNumber { a, b, d }.normalized()
    }

    pub fn inv(&self) -> Option<QuadNumber> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conjugate();
        Some(QuadNumber { a: &c.a / &n, b: &c.b / &n, d: c.d }.normalized())
    }

    pub fn to_complex(&self) -> Complex64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.b.is_zero() {
            return Complex64::new(a, 0.0);
        }
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        if d >= 0.0 {
            Complex64::new(a + b * d.sqrt(), 0.0)
        } else {
            Complex64::new(a, b * (-d).sqrt())
        }
    }

    /// Monic minimal polynomial over the rationals.
    pub fn minimal_polynomial(&self) -> UniPoly {
        if self.b.is_zero() {
            return UniPoly::new(vec![-self.a.clone(), Rational::one()]);
        }
        UniPoly::new(vec![self.norm(), int(-2) * &self.a, Rational::one()])
    }
}

impl EvalRing for QuadNumber {
    fn zero_elem() -> Self {
        QuadNumber::rational(Rational::zero())
    }
    fn one_elem() -> Self {
        QuadNumber::rational(Rational::one())
    }
    fn from_rational(q: &Rational) -> Self {
        QuadNumber::rational(q.clone())
    }
    fn ring_add(&self, other: &Self) -> Self {
        QuadNumber::add(self, other)
    }
    fn ring_mul(&self, other: &Self) -> Self {
        QuadNumber::mul(self, other)
    }
}

fn fmt_rat(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for QuadNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rat(&self.a));
        }
        let root = format!("sqrt({})", self.d);
        let b_abs = self.b.abs();
        let b_part = if b_abs.is_one() { root } else { format!("{}*{}", fmt_rat(&b_abs), root) };
        if self.a.is_zero() {
            let sign = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{sign}{b_part}")
        } else {
            let sign = if self.b.is_negative() { "-" } else { "+" };
            write!(f, "{} {sign} {b_part}", fmt_rat(&self.a))
        }
    }
}

impl Serialize for QuadNumber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
