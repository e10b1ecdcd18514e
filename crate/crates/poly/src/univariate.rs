use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::PolyError;
use crate::monomial::Monomial;
use crate::multipoly::{int, MultiPoly, Rational};

/// Dense univariate polynomial, `coeffs[k]` multiplies `z^k`; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        UniPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    /// Convert a polynomial in at most one variable. Returns the variable (if any).
    pub fn from_multi(p: &MultiPoly) -> Result<(Option<String>, UniPoly), PolyError> {
        let used = p.used_vars();
        if used.len() > 1 {
            return Err(PolyError::NotUnivariate(used));
        }
        let var = used.into_iter().next();
        let idx = var.as_ref().and_then(|v| p.var_index(v));
        let mut coeffs: Vec<Rational> = Vec::new();
        for (m, c) in p.terms() {
            let k = idx.map(|i| m.exponents()[i]).unwrap_or(0) as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rational::zero());
            }
            coeffs[k] += c;
        }
        Ok((var, UniPoly::new(coeffs)))
    }

    pub fn to_multi(&self, var: &str) -> MultiPoly {
        let vars: Arc<[String]> = Arc::from(vec![var.to_string()]);
        MultiPoly::from_terms(
            vars,
            self.coeffs.iter().enumerate().map(|(k, c)| (Monomial::from_exponents(vec![k as u32]), c.clone())),
        )
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> UniPoly {
        match self.lead() {
            None => self.clone(),
            Some(l) => {
                let inv = l.recip();
                UniPoly::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * int(k as i64)).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::new(vec![]);
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(
            (0..n)
                .map(|k| {
                    let a = self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero);
                    let b = other.coeffs.get(k).cloned().unwrap_or_else(Rational::zero);
                    a - b
                })
                .collect(),
        )
    }

    pub fn div_rem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly), PolyError> {
        let dd = d.degree().ok_or(PolyError::ZeroPolynomial)?;
        let mut r = self.coeffs.clone();
        let lead_inv = d.lead().expect("nonzero").recip();
        if r.len() <= dd {
            return Ok((UniPoly::new(vec![]), self.clone()));
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = &r[k] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k - dd + i] -= &c * dc;
            }
            q[k - dd] = c;
        }
        r.truncate(dd);
        Ok((UniPoly::new(q), UniPoly::new(r)))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Yun's algorithm: `[(f_1, 1), (f_2, 2), ...]` with `self = c * prod f_i^i`, factors monic and nonconstant.
    pub fn square_free_decomposition(&self) -> Vec<(UniPoly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_rem(&a0).expect("nonzero").0;
        let mut c = fp.div_rem(&a0).expect("nonzero").0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).expect("nonzero").0;
            c = d.div_rem(&a).expect("nonzero").0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// `f / gcd(f, f')`, monic.
    pub fn square_free_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).expect("nonzero").0.monic()
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// Sum of |c_k| |z|^k.
    pub fn abs_scale(&self, z: Complex64) -> f64 {
        let r = z.norm();
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * r + c.to_f64().unwrap_or(f64::INFINITY).abs();
        }
        acc
    }

    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().map(|l| l.is_one()).unwrap_or(false)
    }

    /// Cauchy bound on root moduli.
    pub fn root_bound(&self) -> f64 {
        let Some(l) = self.lead() else { return 0.0 };
        let l = l.abs().to_f64().unwrap_or(1.0);
        1.0 + self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY) / l)
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_division() {
        let f = UniPoly::from_ints(&[-1, 0, 1]); // z^2 - 1
        let g = UniPoly::from_ints(&[-1, 1]); // z - 1
        assert_eq!(f.gcd(&g), g);
        let (q, r) = f.div_rem(&g).unwrap();
        assert_eq!(q, UniPoly::from_ints(&[1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn yun_separates_multiplicities() {
        // (z-1)^2 (z+2)^3 z
        let a = UniPoly::from_ints(&[-1, 1]);
        let b = UniPoly::from_ints(&[2, 1]);
        let z = UniPoly::from_ints(&[0, 1]);
        let f = a.mul(&a).mul(&b).mul(&b).mul(&b).mul(&z);
        let sf = f.square_free_decomposition();
        assert_eq!(sf, vec![(z.clone(), 1), (a.clone(), 2), (b.clone(), 3)]);
        assert_eq!(f.square_free_part(), a.mul(&b).mul(&z));
    }

    #[test]
    fn round_trip_multi() {
        let p: MultiPoly = "a^3 - 2*a + 1/2".parse().unwrap();
        let (v, u) = UniPoly::from_multi(&p).unwrap();
        assert_eq!(v.as_deref(), Some("a"));
        assert_eq!(u.to_multi("a"), p);
        let q: MultiPoly = "a*b".parse().unwrap();
        assert!(UniPoly::from_multi(&q).is_err());
    }
}
