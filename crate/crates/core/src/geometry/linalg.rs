//! Small dense linear algebra over jets.

use crate::exprjet::{JetError, JetValue};

pub type JetMatrix = Vec<Vec<JetValue>>;

/// Inverse by Gauss–Jordan elimination, pivoting on base values.
pub fn inverse(mat: &[Vec<JetValue>]) -> Result<JetMatrix, JetError> {
    let n = mat.len();
    let layout = mat[0][0].layout().clone();
    let order = mat[0][0].order();
    let mut a: JetMatrix = mat.to_vec();
    let mut inv: JetMatrix = (0..n)
        .map(|i| (0..n).map(|j| JetValue::constant(&layout, order, if i == j { 1.0 } else { 0.0 })).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&r, &s| a[r][col].value().abs().total_cmp(&a[s][col].value().abs()))
            .expect("non-empty column");
        if a[pivot][col].value() == 0.0 {
            return Err(JetError::DivisionByZero);
        }
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let r = a[col][col].recip()?;
        for j in 0..n {
            a[col][j] = &a[col][j] * &r;
            inv[col][j] = &inv[col][j] * &r;
        }
        for row in 0..n {
            if row == col {
                continue;
            }
            let factor = a[row][col].clone();
            if factor.coeffs().iter().all(|c| *c == 0.0) {
                continue;
            }
            for j in 0..n {
                a[row][j] = &a[row][j] - &(&factor * &a[col][j]);
                inv[row][j] = &inv[row][j] - &(&factor * &inv[col][j]);
            }
        }
    }
    Ok(inv)
}

/// Generalized cross product of `rows.len() = N - 1` vectors in R^N.
///
/// Component `a` equals the determinant of the `N x N` matrix whose rows are
/// `rows` followed by the unit vector `e_a`, so the result is orthogonal to
/// every row. Determinants are expanded by minors (no division), which keeps
/// the jets exact even where individual minors vanish at the base point.
pub fn cross(rows: &[Vec<JetValue>]) -> Vec<JetValue> {
    let k = rows.len();
    let n = k + 1;
    assert!(rows.iter().all(|r| r.len() == n));
    let layout = rows[0][0].layout().clone();
    let order = rows.iter().flatten().map(JetValue::order).min().unwrap_or(0);

    // det[mask] = determinant of rows[0..popcount(mask)] restricted to the columns in mask
    let mut det: Vec<Option<JetValue>> = vec![None; 1 << n];
    det[0] = Some(JetValue::constant(&layout, order, 1.0));
    for mask in 1usize..(1 << n) {
        let r = mask.count_ones() as usize;
        if r > k {
            continue;
        }
        let row = &rows[r - 1];
        let mut acc: Option<JetValue> = None;
        let mut pos = 0;
        for c in 0..n {
            if mask & (1 << c) == 0 {
                continue;
            }
            let minor = det[mask & !(1 << c)].as_ref().expect("smaller minors computed first");
            let term = &row[c] * minor;
            let negative = (r - 1 + pos) % 2 == 1;
            acc = Some(match acc {
                None if negative => -term,
                None => term,
                Some(a) if negative => a - term,
                Some(a) => a + term,
            });
            pos += 1;
        }
        det[mask] = acc;
    }
    let full = (1usize << n) - 1;
    (0..n)
        .map(|a| {
            let minor = det[full & !(1 << a)].clone().expect("minor of size N - 1");
            if (n + a + 1) % 2 == 1 {
                -minor
            } else {
                minor
            }
        })
        .collect()
}

pub fn mat_vec(m: &[Vec<JetValue>], v: &[JetValue]) -> Vec<JetValue> {
    m.iter().map(|row| crate::exprjet::dot(row, v)).collect()
}

pub fn mat_mul(a: &[Vec<JetValue>], b: &[Vec<JetValue>]) -> JetMatrix {
    let n = a.len();
    let p = b[0].len();
    (0..n)
        .map(|i| {
            (0..p)
                .map(|j| {
                    let col: Vec<JetValue> = b.iter().map(|r| r[j].clone()).collect();
                    crate::exprjet::dot(&a[i], &col)
                })
                .collect()
        })
        .collect()
}
