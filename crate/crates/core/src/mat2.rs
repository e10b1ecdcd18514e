//! 2×2 complex matrices for representation checks.

use std::ops::Mul;

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

impl Mat2 {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn identity() -> Self {
        Mat2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0))
    }

    pub fn scalar(s: Complex64) -> Self {
        Mat2::new(s, c(0.0, 0.0), c(0.0, 0.0), s)
    }

    pub fn det(&self) -> Complex64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    /// Adjugate; the inverse for determinant 1.
    pub fn adjugate(&self) -> Self {
        let m = &self.0;
        Mat2::new(m[1][1], -m[0][1], -m[1][0], m[0][0])
    }

    pub fn inverse(&self) -> Self {
        let d = self.det();
        let a = self.adjugate();
        Mat2(a.0.map(|r| r.map(|x| x / d)))
    }

    /// Largest entrywise distance.
    pub fn distance(&self, other: &Mat2) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                d = d.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        d
    }

    pub fn conjugate_by(&self, g: &Mat2) -> Mat2 {
        *g * *self * g.inverse()
    }

    /// Random element of SL(2,C) with entries of moderate size.
    pub fn random_sl2<R: Rng>(rng: &mut R) -> Mat2 {
        loop {
            let mut e = || c(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
            let (a, b, cc) = (e(), e(), e());
            if a.norm() < 0.3 {
                continue;
            }
            // solve a d − b c = 1 for d
            let d = (c(1.0, 0.0) + b * cc) / a;
            return Mat2::new(a, b, cc, d);
        }
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        let mut r = [[c(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(r)
    }
}
