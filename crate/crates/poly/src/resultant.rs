use crate::error::PolyError;
use crate::multipoly::MultiPoly;

/// Sylvester matrix of `p` and `q` with respect to `var`.
pub fn sylvester_matrix(p: &MultiPoly, q: &MultiPoly, var: &str) -> Result<Vec<Vec<MultiPoly>>, PolyError> {
    if p.is_zero() || q.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let cp = p.coefficients_in(var);
    let cq = q.coefficients_in(var);
    let m = cp.len() - 1;
    let n = cq.len() - 1;
    if m == 0 {
        return Err(PolyError::ConstantInVariable(var.to_string()));
    }
    if n == 0 {
        return Err(PolyError::ConstantInVariable(var.to_string()));
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![MultiPoly::zero(); size];
        for (k, c) in cp.iter().enumerate() {
            // highest power first
            row[shift + (m - k)] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![MultiPoly::zero(); size];
        for (k, c) in cq.iter().enumerate() {
            row[shift + (n - k)] = c.clone();
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Determinant by fraction-free (Bareiss) elimination with exact divisions.
pub fn bareiss_determinant(mut a: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = a.len();
    if n == 0 {
        return MultiPoly::one();
    }
    let mut sign = false;
    let mut prev = MultiPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            // pick the sparsest nonzero pivot below
            let pick = (k + 1..n).filter(|&r| !a[r][k].is_zero()).min_by_key(|&r| a[r][k].num_terms());
            match pick {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return MultiPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = MultiPoly::zero();
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

/// Resultant of `p` and `q` eliminating `var`.
pub fn resultant(p: &MultiPoly, q: &MultiPoly, var: &str) -> Result<MultiPoly, PolyError> {
    let s = sylvester_matrix(p, q, var)?;
    Ok(bareiss_determinant(s))
}
