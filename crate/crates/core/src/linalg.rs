//! Dense matrices over a [`Coefficient`] field: rank and 2×2 minors.

use crate::field::Coefficient;

pub type Matrix<F> = Vec<Vec<F>>;

pub fn zeros<F: Coefficient>(rows: usize, cols: usize) -> Matrix<F> {
    vec![vec![F::zero(); cols]; rows]
}

pub fn max_modulus<F: Coefficient>(m: &[Vec<F>]) -> f64 {
    m.iter()
        .flat_map(|r| r.iter().map(F::modulus))
        .fold(0.0, f64::max)
}

/// Outer product `u ⊗ w`. Zero factors are skipped, which matters for the
/// mostly-zero padded vectors of block matrices.
pub fn outer<F: Coefficient>(u: &[F], w: &[F]) -> Matrix<F> {
    u.iter()
        .map(|a| {
            if a.is_exact_zero() {
                return vec![F::zero(); w.len()];
            }
            w.iter()
                .map(|b| if b.is_exact_zero() { F::zero() } else { a.mul(b) })
                .collect()
        })
        .collect()
}

/// Rank by Gaussian elimination. Exact fields eliminate exactly; floats use
/// partial pivoting and treat pivots below `tol · max|entry|` as zero.
pub fn rank<F: Coefficient>(m: &[Vec<F>], tol: f64) -> usize {
    let mut a: Matrix<F> = m.to_vec();
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let scale = max_modulus(&a);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let pivot = if F::FIELD.is_exact() {
            (r..rows).find(|&i| !a[i][c].is_exact_zero())
        } else {
            (r..rows)
                .max_by(|&i, &j| a[i][c].modulus().total_cmp(&a[j][c].modulus()))
                .filter(|&i| !a[i][c].is_negligible(scale, tol))
        };
        let Some(p) = pivot else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("pivot is non-zero");
        for i in r + 1..rows {
            if a[i][c].is_exact_zero() {
                continue;
            }
            let f = a[i][c].mul(&inv);
            for k in c..cols {
                if a[r][k].is_exact_zero() {
                    continue;
                }
                let sub = f.mul(&a[r][k]);
                a[i][k] = a[i][k].sub(&sub);
            }
        }
        r += 1;
    }
    r
}

/// True iff every 2×2 minor vanishes, i.e. rank ≤ 1. Float minors are
/// compared against `tol · max|entry|²`.
///
/// Only the minors through a largest entry `(p, q)` are formed: if those all
/// vanish, every row is a multiple of row `p`, so all other minors do too.
pub fn all_minors_vanish<F: Coefficient>(m: &[Vec<F>], tol: f64) -> bool {
    let mut pivot = None;
    let mut best = 0.0;
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let a = x.modulus();
            if !x.is_exact_zero() && (pivot.is_none() || a > best) {
                best = a;
                pivot = Some((i, j));
            }
        }
    }
    let Some((p, q)) = pivot else { return true };
    let scale = best * best;
    let pq = &m[p][q];
    m.iter().enumerate().all(|(i, row)| {
        i == p
            || row.iter().enumerate().all(|(j, x)| {
                j == q || x.mul(pq).sub(&row[q].mul(&m[p][j])).is_negligible(scale, tol)
            })
    })
}

pub fn transpose<F: Coefficient>(m: &[Vec<F>]) -> Matrix<F> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}
