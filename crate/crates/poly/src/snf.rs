use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn new(entries: Vec<Vec<BigInt>>) -> Self {
        let rows = entries.len();
        let cols = entries.first().map(|r| r.len()).unwrap_or(0);
        assert!(entries.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows, cols, entries }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        IntMatrix::new(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r][c] = v;
    }

    /// Exact determinant by fraction-free elimination; square matrices only.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::from(1);
        }
        let mut a = self.entries.clone();
        let mut sign = false;
        let mut prev = BigInt::from(1);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = !sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if sign {
            -d
        } else {
            d
        }
    }
}

/// Invariant factors `d_1 | d_2 | ...`, nonnegative, `min(rows, cols)` of them.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.entries.clone();
    let (r, c) = (m.rows, m.cols);
    let n = r.min(c);
    for t in 0..n {
        // pivot: smallest nonzero magnitude in the remaining block
        let pivot = (t..r)
            .flat_map(|i| (t..c).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by(|&(i1, j1), &(i2, j2)| a[i1][j1].abs().cmp(&a[i2][j2].abs()));
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..r {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..c {
                    let v = &a[t][j] * &q;
                    a[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    changed = true;
                }
            }
            for j in t + 1..c {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &row[t] * &q;
                    row[j] -= v;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // divisibility: fold in a row whose entries the pivot does not divide
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    for j in t..c {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
    }
    (0..n).map(|i| a[i][i].abs()).collect()
}

/// Invariant factors other than 1: the torsion and free parts of the cokernel
/// of an `r x c` relation matrix (rows are relations over `c` generators).
/// Free summands are reported as 0.
pub fn cokernel_invariants(m: &IntMatrix) -> Vec<BigInt> {
    let mut d = smith_normal_form(m);
    d.retain(|x| *x != BigInt::from(1));
    let rank_deficit = m.cols.saturating_sub(m.rows.min(m.cols));
    d.extend(std::iter::repeat_n(BigInt::zero(), rank_deficit));
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn diagonal_example() {
        assert_eq!(smith_normal_form(&IntMatrix::from_i64(&[vec![2, 0], vec![0, 3]])), ints(&[1, 6]));
        assert_eq!(smith_normal_form(&IntMatrix::from_i64(&[vec![1, 0], vec![0, 0]])), ints(&[1, 0]));
        assert_eq!(smith_normal_form(&IntMatrix::from_i64(&[vec![5]])), ints(&[5]));
    }

    #[test]
    fn textbook_example() {
        let m = IntMatrix::from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(smith_normal_form(&m), ints(&[2, 6, 12]));
    }

    #[test]
    fn cokernel_of_z5_and_free() {
        assert_eq!(cokernel_invariants(&IntMatrix::from_i64(&[vec![5]])), ints(&[5]));
        assert_eq!(cokernel_invariants(&IntMatrix::from_i64(&[vec![0, 0]])), ints(&[0, 0]));
        assert_eq!(cokernel_invariants(&IntMatrix::from_i64(&[vec![1, 3]])), ints(&[0]));
    }

    #[test]
    fn determinant() {
        let m = IntMatrix::from_i64(&[vec![0, 2, 1], vec![1, 1, 1], vec![3, 0, 2]]);
        assert_eq!(m.determinant(), BigInt::from(-1));
    }
}
