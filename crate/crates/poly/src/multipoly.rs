use std::borrow::Cow;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::PolyError;
use crate::monomial::{Monomial, MonomialOrder};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Ring of values a polynomial can be evaluated in.
pub trait EvalRing: Clone {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
}

impl EvalRing for Rational {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
}

impl EvalRing for Complex64 {
    fn zero_elem() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one_elem() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_rational(q: &Rational) -> Self {
        Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
}

impl EvalRing for Complex<Rational> {
    fn zero_elem() -> Self {
        Complex::new(Zero::zero(), Zero::zero())
    }
    fn one_elem() -> Self {
        Complex::new(One::one(), Zero::zero())
    }
    fn from_rational(q: &Rational) -> Self {
        Complex::new(q.clone(), Zero::zero())
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
}

/// Exact rational value of a finite double.
pub fn rational_from_f64(x: f64) -> Rational {
    BigRational::from_float(x).unwrap_or_else(Zero::zero)
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Every polynomial carries its own ordered variable list; binary operations
/// merge the lists (left operand's variables first).
#[derive(Clone)]
pub struct MultiPoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { vars: Arc::from(Vec::<String>::new()), terms: BTreeMap::new() }
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = MultiPoly::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(0), c);
        }
        p
    }

    pub fn from_int(c: i64) -> Self {
        MultiPoly::constant(int(c))
    }

    pub fn one() -> Self {
        MultiPoly::from_int(1)
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(1, 0, 1), int(1));
        MultiPoly { vars: Arc::from(vec![name.to_string()]), terms }
    }

    /// Zero polynomial over a fixed variable list.
    pub fn zero_in(vars: Arc<[String]>) -> Self {
        MultiPoly { vars, terms: BTreeMap::new() }
    }

    pub fn from_terms<I>(vars: Arc<[String]>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), vars.len());
            if c.is_zero() {
                continue;
            }
            match map.entry(m) {
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
            }
        }
        MultiPoly { vars, terms: map }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn vars_arc(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(Zero::zero))
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().map(|c| c.is_one()).unwrap_or(false)
    }

    /// Variables with a nonzero exponent somewhere, in list order.
    pub fn used_vars(&self) -> Vec<String> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|m| m.exponents()[i] > 0))
            .map(|i| self.vars[i].clone())
            .collect()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.var_index(var) {
            None => 0,
            Some(i) => self.terms.keys().map(|m| m.exponents()[i]).max().unwrap_or(0),
        }
    }

    /// Re-express over `vars`, which must contain every variable in use.
    pub fn with_vars(&self, vars: &Arc<[String]>) -> MultiPoly {
        if Arc::ptr_eq(&self.vars, vars) || self.vars[..] == vars[..] {
            return MultiPoly { vars: vars.clone(), terms: self.terms.clone() };
        }
        let used: Vec<bool> = (0..self.vars.len())
            .map(|i| self.terms.keys().any(|m| m.exponents()[i] > 0))
            .collect();
        let map: Vec<usize> = self
            .vars
            .iter()
            .enumerate()
            .map(|(i, v)| match vars.iter().position(|w| w == v) {
                Some(j) => j,
                None => {
                    assert!(!used[i], "variable `{v}` missing from target variable list");
                    0
                }
            })
            .collect();
        let n = vars.len();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u32; n];
            for (i, &x) in m.exponents().iter().enumerate() {
                if x > 0 {
                    e[map[i]] += x;
                }
            }
            (Monomial::from_exponents(e), c.clone())
        });
        MultiPoly::from_terms(vars.clone(), terms)
    }

    /// Union of variable lists, `a`'s order first.
    pub fn merge_vars(a: &[String], b: &[String]) -> Arc<[String]> {
        let mut out: Vec<String> = a.to_vec();
        for v in b {
            if !out.contains(v) {
                out.push(v.clone());
            }
        }
        Arc::from(out)
    }

    fn aligned<'a>(&'a self, other: &'a MultiPoly) -> (Arc<[String]>, Cow<'a, MultiPoly>, Cow<'a, MultiPoly>) {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars[..] == other.vars[..] {
            return (self.vars.clone(), Cow::Borrowed(self), Cow::Borrowed(other));
        }
        if other.vars.is_empty() {
            return (self.vars.clone(), Cow::Borrowed(self), Cow::Owned(other.with_vars(&self.vars)));
        }
        if self.vars.is_empty() {
            return (other.vars.clone(), Cow::Owned(self.with_vars(&other.vars)), Cow::Borrowed(other));
        }
        let vars = MultiPoly::merge_vars(&self.vars, &other.vars);
        let a = if vars.len() == self.vars.len() {
            Cow::Owned(MultiPoly { vars: vars.clone(), terms: self.terms.clone() })
        } else {
            Cow::Owned(self.with_vars(&vars))
        };
        let b = Cow::Owned(other.with_vars(&vars));
        (vars, a, b)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero_in(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_term(&self, mono: &Monomial, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero_in(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.mul(mono), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut result = MultiPoly::one().with_vars(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &Rational)> {
        match order {
            MonomialOrder::Lex => self.terms.iter().next_back(),
            MonomialOrder::GrevLex => self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0)),
        }
    }

    /// Coefficients with respect to `var`, indexed by power.
    pub fn coefficients_in(&self, var: &str) -> Vec<MultiPoly> {
        let Some(idx) = self.var_index(var) else {
            return vec![self.clone()];
        };
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let mut e = m.exponents().to_vec();
            let k = e[idx] as usize;
            e[idx] = 0;
            buckets[k].push((Monomial::from_exponents(e), c.clone()));
        }
        buckets.into_iter().map(|t| MultiPoly::from_terms(self.vars.clone(), t)).collect()
    }

    pub fn derivative(&self, var: &str) -> MultiPoly {
        let Some(idx) = self.var_index(var) else {
            return MultiPoly::zero_in(self.vars.clone());
        };
        let terms = self.terms.iter().filter(|(m, _)| m.exponents()[idx] > 0).map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            let k = e[idx];
            e[idx] -= 1;
            (Monomial::from_exponents(e), c * int(k as i64))
        });
        MultiPoly::from_terms(self.vars.clone(), terms)
    }

    /// Simultaneous substitution of variables by polynomials.
    pub fn substitute(&self, bindings: &HashMap<String, MultiPoly>) -> MultiPoly {
        let images: Vec<MultiPoly> = self
            .vars
            .iter()
            .map(|v| bindings.get(v).cloned().unwrap_or_else(|| MultiPoly::var(v)))
            .collect();
        let mut power_cache: Vec<Vec<MultiPoly>> = images.iter().map(|p| vec![MultiPoly::one(), p.clone()]).collect();
        let mut acc = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut power_cache[i];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &images[i];
                    cache.push(next);
                }
                t = &t * &cache[e as usize];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Rename variables; names absent from `renames` are kept.
    pub fn rename(&self, renames: &HashMap<String, String>) -> MultiPoly {
        let bindings: HashMap<String, MultiPoly> =
            renames.iter().map(|(k, v)| (k.clone(), MultiPoly::var(v))).collect();
        self.substitute(&bindings)
    }

    /// Evaluate with values supplied per variable name.
    pub fn eval<R: EvalRing>(&self, mut lookup: impl FnMut(&str) -> R) -> R {
        let nv = self.vars.len();
        let mut max_e = vec![0u32; nv];
        for m in self.terms.keys() {
            for (i, &e) in m.exponents().iter().enumerate() {
                max_e[i] = max_e[i].max(e);
            }
        }
        let powers: Vec<Vec<R>> = (0..nv)
            .map(|i| {
                let mut v = vec![R::one_elem()];
                if max_e[i] > 0 {
                    let x = lookup(&self.vars[i]);
                    for k in 1..=max_e[i] as usize {
                        let next = v[k - 1].ring_mul(&x);
                        v.push(next);
                    }
                }
                v
            })
            .collect();
        let mut acc = R::zero_elem();
        for (m, c) in &self.terms {
            let mut t = R::from_rational(c);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.ring_mul(&powers[i][e as usize]);
                }
            }
            acc = acc.ring_add(&t);
        }
        acc
    }

    /// Evaluate at double-precision complex values with exact arithmetic on the
    /// rationalized inputs, so the only error left is input rounding.
    pub fn eval_complex_exact(&self, mut lookup: impl FnMut(&str) -> Complex64) -> Complex64 {
        let v: Complex<Rational> = self.eval(|name| {
            let z = lookup(name);
            Complex::new(rational_from_f64(z.re), rational_from_f64(z.im))
        });
        Complex64::new(v.re.to_f64().unwrap_or(f64::NAN), v.im.to_f64().unwrap_or(f64::NAN))
    }

    /// Sum of |coefficient| * |monomial value|: the scale for relative residuals.
    pub fn eval_abs_scale(&self, mut lookup: impl FnMut(&str) -> Complex64) -> f64 {
        let vals: Vec<f64> = self.vars.iter().map(|v| lookup(v).norm()).collect();
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = c.to_f64().unwrap_or(f64::INFINITY).abs();
                for (i, &e) in m.exponents().iter().enumerate() {
                    if e > 0 {
                        t *= vals[i].powi(e as i32);
                    }
                }
                t
            })
            .sum()
    }

    /// Exact quotient `self / divisor`; fails when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let (vars, a, d) = self.aligned(divisor);
        let mut rem = a.into_owned();
        let d = d.into_owned();
        let (lm, lc) = {
            let (m, c) = d.leading_term(MonomialOrder::Lex).expect("nonzero");
            (m.clone(), c.clone())
        };
        let mut quot: Vec<(Monomial, Rational)> = Vec::new();
        while let Some((m, c)) = rem.leading_term(MonomialOrder::Lex).map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return Err(PolyError::InexactDivision);
            }
            let qm = lm.quotient_of(&m);
            let qc = &c / &lc;
            rem = &rem - &d.mul_term(&qm, &qc);
            quot.push((qm, qc));
        }
        Ok(MultiPoly::from_terms(vars, quot))
    }

    /// Scale so the leading coefficient (in `order`) is one.
    pub fn monic(&self, order: MonomialOrder) -> MultiPoly {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Positive primitive integer multiple (content and denominators cleared).
    pub fn primitive_part(&self) -> MultiPoly {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&den / c.denom());
            g = g.gcd(&n);
        }
        let lead_neg = self.leading_term(MonomialOrder::GrevLex).map(|(_, c)| c.is_negative()).unwrap_or(false);
        let mut factor = BigRational::new(den, g);
        if lead_neg {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Drop variables that do not occur.
    pub fn trimmed(&self) -> MultiPoly {
        let used = self.used_vars();
        if used.len() == self.vars.len() {
            return self.clone();
        }
        self.with_vars(&Arc::from(used))
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        let (_, a, b) = self.aligned(other);
        a.terms == b.terms
    }
}

impl Eq for MultiPoly {}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

fn add_impl(a: &MultiPoly, b: &MultiPoly, negate_b: bool) -> MultiPoly {
    let (vars, a, b) = a.aligned(b);
    let mut terms = a.terms.clone();
    for (m, c) in &b.terms {
        let c = if negate_b { -c.clone() } else { c.clone() };
        match terms.entry(m.clone()) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }
    MultiPoly { vars, terms }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        add_impl(self, rhs, false)
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        add_impl(self, rhs, true)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let (vars, a, b) = self.aligned(rhs);
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match terms.entry(m) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += c;
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MultiPoly { vars, terms }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

fn fmt_coeff_abs(c: &Rational) -> String {
    let a = c.abs();
    if a.is_integer() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

impl fmt::Display for MultiPoly {
    /// Terms in descending graded-reverse-lex order, e.g. `a^2*b - 2/3*b + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        terms.sort_by(|a, b| MonomialOrder::GrevLex.cmp(b.0, a.0));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors: Vec<String> = Vec::new();
            let abs_one = c.abs().is_one();
            if !abs_one || m.is_one() {
                factors.push(fmt_coeff_abs(c));
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn ring_ops_examples() {
        assert_eq!(&p("x + 1") * &p("x - 1"), p("x^2 - 1"));
        assert_eq!(&p("a^2 - a + 1") + &p("a - 1"), p("a^2"));
        assert_eq!(&p("a + b") * &p("a + b"), p("a^2 + 2*a*b + b^2"));
    }

    #[test]
    fn merges_disjoint_variable_lists() {
        let s = &p("x") + &p("y");
        assert_eq!(s.vars(), &["x".to_string(), "y".to_string()]);
        assert_eq!(&s - &p("y"), p("x"));
    }

    #[test]
    fn substitute_examples() {
        let mut b = HashMap::new();
        b.insert("x14".to_string(), MultiPoly::var("x13"));
        b.insert("x23".to_string(), MultiPoly::var("x12"));
        assert_eq!(p("x14*x23").substitute(&b), p("x13*x12"));

        let mut z = HashMap::new();
        z.insert("x".to_string(), MultiPoly::zero());
        assert!(p("x^2").substitute(&z).is_zero());
    }

    #[test]
    fn substitution_is_simultaneous() {
        let mut b = HashMap::new();
        b.insert("x".to_string(), MultiPoly::var("y"));
        b.insert("y".to_string(), MultiPoly::var("x"));
        assert_eq!(p("x^2*y").substitute(&b), p("y^2*x"));
    }

    #[test]
    fn exact_division() {
        let q = p("x^3 - y^3").div_exact(&p("x - y")).unwrap();
        assert_eq!(q, p("x^2 + x*y + y^2"));
        assert_eq!(p("x^2 + 1").div_exact(&p("x - 1")), Err(PolyError::InexactDivision));
    }

    #[test]
    fn display_is_grevlex_descending() {
        assert_eq!(p("a^2 + 1 + b - 2/3*a*b").to_string(), "a^2 - 2/3*a*b + b + 1");
        assert_eq!(p("-x").to_string(), "-x");
        assert_eq!(MultiPoly::zero().to_string(), "0");
    }

    #[test]
    fn eval_in_rationals_and_complex() {
        let f = p("x^2 - 5*x + 5");
        let r: Rational = f.eval(|_| int(2));
        assert_eq!(r, int(-1));
        let z = p("x^2 + 1").eval(|_| Complex64::new(0.0, 1.0));
        assert!(z.norm() < 1e-15);
    }

    #[test]
    fn derivative_and_coefficients() {
        let f = p("x^3*y + 2*x*y^2 + 7");
        assert_eq!(f.derivative("x"), p("3*x^2*y + 2*y^2"));
        let c = f.coefficients_in("y");
        assert_eq!(c.len(), 3);
        assert_eq!(c[0], p("7"));
        assert_eq!(c[1], p("x^3"));
        assert_eq!(c[2], p("2*x"));
    }

    #[test]
    fn primitive_part_clears_denominators() {
        assert_eq!(p("1/2*x - 1/3").primitive_part(), p("3*x - 2"));
        assert_eq!(p("-4*x + 6").primitive_part(), p("2*x - 3"));
    }
}
