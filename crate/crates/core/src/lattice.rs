//! Exact integer linear algebra: unimodular inversion and symplectic
//! reduction of a skew Gram matrix to an explicit coordinate model.

use crate::error::{Error, Result};

/// Inverse of a square integer matrix with determinant ±1 (row-major, size `n`).
///
/// Returns `None` when the matrix is singular or not unimodular.
pub fn unimodular_inverse(m: &[i64], n: usize) -> Option<Vec<i64>> {
    assert_eq!(m.len(), n * n);
    // Augmented [M | I] reduced with integer row operations only.
    let mut a: Vec<Vec<i128>> = (0..n)
        .map(|i| {
            let mut row: Vec<i128> = m[i * n..(i + 1) * n].iter().map(|&x| x as i128).collect();
            row.extend((0..n).map(|j| (i == j) as i128));
            row
        })
        .collect();
    for col in 0..n {
        // Euclid on the column below the diagonal until one nonzero entry remains.
        loop {
            let pivot = (col..n).filter(|&r| a[r][col] != 0).min_by_key(|&r| a[r][col].abs())?;
            a.swap(col, pivot);
            let mut done = true;
            for r in col + 1..n {
                let q = a[r][col] / a[col][col];
                if q != 0 {
                    let src = a[col].clone();
                    for (x, s) in a[r].iter_mut().zip(&src) {
                        *x -= q * s;
                    }
                }
                if a[r][col] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[col][col].abs() != 1 {
            return None;
        }
        if a[col][col] < 0 {
            for x in a[col].iter_mut() {
                *x = -*x;
            }
        }
    }
    for col in (0..n).rev() {
        for r in 0..col {
            let q = a[r][col];
            if q != 0 {
                let src = a[col].clone();
                for (x, s) in a[r].iter_mut().zip(&src) {
                    *x -= q * s;
                }
            }
        }
    }
    let mut out = Vec::with_capacity(n * n);
    for row in &a {
        for &x in &row[n..] {
            out.push(i64::try_from(x).ok()?);
        }
    }
    Some(out)
}

/// Explicit symplectic coordinates for a family of vectors with a prescribed Gram matrix.
#[derive(Debug, Clone)]
pub struct SymplecticModel {
    pub genus: usize,
    /// One coordinate vector (length `2 * genus`) per input vector.
    pub coordinates: Vec<Vec<i64>>,
}

/// Find integer vectors `x_v` in `Z^{2g}` with `<x_u, x_v> = gram[u][v]`.
///
/// Works by symplectic Gram–Schmidt over the formal span of the inputs, picking
/// hyperbolic pairs greedily in `order` (first vector, then the first later vector
/// pairing to ±1 with it). The radical is discarded, so this succeeds exactly
/// when the induced form on the quotient by the radical is unimodular.
pub fn symplectic_model(gram: &[Vec<i64>], order: &[usize]) -> Result<SymplecticModel> {
    let n = gram.len();
    if gram.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput("gram matrix is not square".into()));
    }
    for i in 0..n {
        for j in 0..n {
            if gram[i][j] != -gram[j][i] {
                return Err(Error::InvalidInput(format!("gram matrix not skew at ({i},{j})")));
            }
        }
    }
    let pair = |x: &[i64], y: &[i64]| -> i64 {
        let mut s = 0;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                s += xi * gram[i][j] * yj;
            }
        }
        s
    };
    // Residual vectors as formal combinations of the inputs.
    let mut residual: Vec<Vec<i64>> = order
        .iter()
        .map(|&v| {
            let mut e = vec![0; n];
            e[v] = 1;
            e
        })
        .collect();
    let mut pairs: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
    let mut guard = 0usize;
    loop {
        guard += 1;
        if guard > 64 * (n + 1) * (n + 1) {
            return Err(Error::Internal("symplectic reduction did not terminate".into()));
        }
        let m = residual.len();
        let mut chosen = None;
        'outer: for p in 0..m {
            for q in p + 1..m {
                let s = pair(&residual[p], &residual[q]);
                if s.abs() == 1 {
                    chosen = Some((p, q, s));
                    break 'outer;
                }
            }
        }
        if let Some((p, q, s)) = chosen {
            let u = residual[p].clone();
            let v: Vec<i64> = residual[q].iter().map(|c| c * s).collect();
            let mut next = Vec::with_capacity(m - 2);
            for (k, w) in residual.iter().enumerate() {
                if k == p || k == q {
                    continue;
                }
                // w' = w + <w,u> v - <w,v> u is orthogonal to u and v.
                let wu = pair(w, &u);
                let wv = pair(w, &v);
                let w2: Vec<i64> =
                    (0..n).map(|i| w[i] + wu * v[i] - wv * u[i]).collect();
                next.push(w2);
            }
            pairs.push((u, v));
            residual = next;
            continue;
        }
        // No unit pairing left: either everything is radical or we need Euclid steps.
        let mut best: Option<(usize, usize, i64)> = None;
        for p in 0..m {
            for q in p + 1..m {
                let s = pair(&residual[p], &residual[q]);
                if s != 0 && best.is_none_or(|(_, _, b)| s.abs() < b.abs()) {
                    best = Some((p, q, s));
                }
            }
        }
        let Some((p, q, s)) = best else { break };
        let mut progressed = false;
        for r in 0..m {
            if r == p || r == q {
                continue;
            }
            let rq = pair(&residual[r], &residual[q]);
            let t = rq.div_euclid(s);
            if rq.rem_euclid(s) != 0 {
                let pv = residual[p].clone();
                for (x, y) in residual[r].iter_mut().zip(&pv) {
                    *x -= t * y;
                }
                progressed = true;
                break;
            }
            // Same with the roles of p and q exchanged: <q, p> = -s.
            let rp = pair(&residual[r], &residual[p]);
            if rp.rem_euclid(s) != 0 {
                let t = rp.div_euclid(-s);
                let qv = residual[q].clone();
                for (x, y) in residual[r].iter_mut().zip(&qv) {
                    *x -= t * y;
                }
                progressed = true;
                break;
            }
        }
        if !progressed {
            return Err(Error::Internal(format!(
                "no unimodular hyperbolic pair available (minimal pairing {s})"
            )));
        }
    }
    for w in &residual {
        for other in 0..n {
            let mut e = vec![0; n];
            e[other] = 1;
            if pair(w, &e) != 0 {
                return Err(Error::Internal("residual vector outside the radical".into()));
            }
        }
    }
    let genus = pairs.len();
    let coordinates = (0..n)
        .map(|v| {
            let mut e = vec![0; n];
            e[v] = 1;
            let mut x = vec![0; 2 * genus];
            for (k, (u, w)) in pairs.iter().enumerate() {
                x[2 * k] = pair(&e, w);
                x[2 * k + 1] = -pair(&e, u);
            }
            x
        })
        .collect();
    Ok(SymplecticModel { genus, coordinates })
}

/// Solve `A x = b` over F_2 where `rows[i]` packs row `i` of `A` into bits.
///
/// Returns `None` when inconsistent or not uniquely solvable in `nvars` unknowns.
pub fn solve_f2(rows: &[u64], rhs: &[u8], nvars: usize) -> Option<u64> {
    let mut eqs: Vec<(u64, u8)> = rows.iter().copied().zip(rhs.iter().copied()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..nvars {
        let bit = 1u64 << col;
        let p = (r..eqs.len()).find(|&i| eqs[i].0 & bit != 0)?;
        eqs.swap(r, p);
        let (prow, prhs) = eqs[r];
        for (i, e) in eqs.iter_mut().enumerate() {
            if i != r && e.0 & bit != 0 {
                e.0 ^= prow;
                e.1 ^= prhs;
            }
        }
        pivots.push(col);
        r += 1;
    }
    if eqs[r..].iter().any(|e| e.1 != 0) {
        return None;
    }
    let mut x = 0u64;
    for (i, &col) in pivots.iter().enumerate() {
        if eqs[i].1 & 1 == 1 {
            x |= 1 << col;
        }
    }
    Some(x)
}
