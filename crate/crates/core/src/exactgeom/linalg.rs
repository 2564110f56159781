//! Gauss-Jordan elimination with row-combination tracking.

use crate::scalar::Scalar;

/// Reduced row echelon form of an affine system `A x + c = 0`.
///
/// Every reduced row remembers which combination of the input rows produced
/// it, so callers can turn statements about the reduced system back into
/// multipliers on the original rows.
#[derive(Clone, Debug)]
pub struct Rref<S> {
    pub rows: Vec<Vec<S>>,
    pub consts: Vec<S>,
    pub pivots: Vec<usize>,
    pub combos: Vec<Vec<S>>,
    /// A combination of input rows whose coefficients vanish but whose
    /// constant does not, when the system is inconsistent.
    pub inconsistency: Option<(Vec<S>, S)>,
    pub ncols: usize,
}

impl<S: Scalar> Rref<S> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Basis of the null space of the coefficient part, one vector per free column.
    pub fn null_space(&self) -> Vec<Vec<S>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![S::zero(); self.ncols];
                v[f] = S::one();
                for (r, &p) in self.pivots.iter().enumerate() {
                    v[p] = -self.rows[r][f].clone();
                }
                v
            })
            .collect()
    }

    /// Multipliers `l` on the input rows with `sum l_j row_j == u`, if `u` is in
    /// the row space.
    pub fn express(&self, u: &[S]) -> Option<Vec<S>> {
        let ninputs = self.combos.first().map_or(0, Vec::len);
        let mut residual = u.to_vec();
        let mut lambda = vec![S::zero(); ninputs];
        for (r, &p) in self.pivots.iter().enumerate() {
            let w = residual[p].clone();
            if w.is_zero() {
                continue;
            }
            for (x, y) in residual.iter_mut().zip(&self.rows[r]) {
                if !y.is_zero() {
                    *x = x.clone() - w.clone() * y.clone();
                }
            }
            for (l, c) in lambda.iter_mut().zip(&self.combos[r]) {
                if !c.is_zero() {
                    *l = l.clone() + w.clone() * c.clone();
                }
            }
        }
        if residual.iter().all(|x| x.is_negligible()) {
            Some(lambda)
        } else {
            None
        }
    }
}

pub fn rref<S: Scalar>(rows: &[Vec<S>], consts: &[S], ncols: usize) -> Rref<S> {
    let n = rows.len();
    let mut a: Vec<Vec<S>> = rows.to_vec();
    let mut c: Vec<S> = consts.to_vec();
    let mut comb: Vec<Vec<S>> = (0..n)
        .map(|i| {
            let mut e = vec![S::zero(); n];
            e[i] = S::one();
            e
        })
        .collect();

    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..ncols {
        if next == n {
            break;
        }
        let pick = if S::EXACT {
            (next..n).find(|&r| !a[r][col].is_zero())
        } else {
            (next..n)
                .filter(|&r| !a[r][col].is_negligible())
                .max_by(|&x, &y| {
                    a[x][col]
                        .abs()
                        .partial_cmp(&a[y][col].abs())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
        };
        let Some(pr) = pick else { continue };
        a.swap(next, pr);
        c.swap(next, pr);
        comb.swap(next, pr);

        let inv = S::one() / a[next][col].clone();
        scale_row(&mut a[next], &inv);
        c[next] = c[next].clone() * inv.clone();
        scale_row(&mut comb[next], &inv);

        let (prow, pc, pcomb) = (a[next].clone(), c[next].clone(), comb[next].clone());
        for r in 0..n {
            if r == next || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            axpy(&mut a[r], &f, &prow);
            c[r] = c[r].clone() - f.clone() * pc.clone();
            axpy(&mut comb[r], &f, &pcomb);
            if !S::EXACT {
                a[r][col] = S::zero();
            }
        }
        pivots.push(col);
        next += 1;
    }

    let mut inconsistency = None;
    for r in next..n {
        if !c[r].is_negligible() {
            inconsistency = Some((comb[r].clone(), c[r].clone()));
            break;
        }
    }

    a.truncate(next);
    c.truncate(next);
    comb.truncate(next);
    Rref {
        rows: a,
        consts: c,
        pivots,
        combos: comb,
        inconsistency,
        ncols,
    }
}

/// `row -= f * other`
fn axpy<S: Scalar>(row: &mut [S], f: &S, other: &[S]) {
    for (x, y) in row.iter_mut().zip(other) {
        if !y.is_zero() {
            *x = x.clone() - f.clone() * y.clone();
        }
    }
}

fn scale_row<S: Scalar>(row: &mut [S], f: &S) {
    for x in row.iter_mut() {
        if !x.is_zero() {
            *x = x.clone() * f.clone();
        }
    }
}

pub fn rank<S: Scalar>(rows: &[Vec<S>], ncols: usize) -> usize {
    let zeros = vec![S::zero(); rows.len()];
    rref(rows, &zeros, ncols).rank()
}

/// Solves the square system `m x = e_j` for every unit vector, i.e. the inverse
/// written column by column. Returns `None` when `m` is singular.
pub fn inverse_columns<S: Scalar>(m: &[Vec<S>]) -> Option<Vec<Vec<S>>> {
    let k = m.len();
    let zeros = vec![S::zero(); k];
    let red = rref(m, &zeros, k);
    if red.rank() < k {
        return None;
    }
    // After full reduction each row r has pivot column r (identity), and
    // combos[r] expresses e_r^T as combination of the rows of m, i.e. combos = m^{-1}.
    let mut inv_rows = vec![vec![S::zero(); k]; k];
    for (r, &p) in red.pivots.iter().enumerate() {
        inv_rows[p] = red.combos[r].clone();
    }
    // inv_rows is m^{-1}; column j is the j-th column.
    Some(
        (0..k)
            .map(|j| (0..k).map(|i| inv_rows[i][j].clone()).collect())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect()
    }

    #[test]
    fn null_space_is_annihilated() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        let red = rref(&a, &vec![int(0); 3], 3);
        assert_eq!(red.rank(), 2);
        let ns = red.null_space();
        assert_eq!(ns.len(), 1);
        for row in &a {
            assert_eq!(crate::scalar::dot(row, &ns[0]), int(0));
        }
    }

    #[test]
    fn inconsistent_system_reports_combination() {
        let a = m(&[&[1, 1], &[2, 2]]);
        let c = vec![int(1), int(3)];
        let red = rref(&a, &c, 2);
        let (comb, k) = red.inconsistency.expect("inconsistent");
        // comb combines the rows into 0 coefficients with constant k != 0.
        let mut coeffs = vec![int(0); 2];
        let mut konst = int(0);
        for (j, l) in comb.iter().enumerate() {
            for i in 0..2 {
                coeffs[i] = &coeffs[i] + l * &a[j][i];
            }
            konst = &konst + l * &c[j];
        }
        assert_eq!(coeffs, vec![int(0), int(0)]);
        assert_eq!(konst, k);
        assert_ne!(k, int(0));
    }

    #[test]
    fn express_in_row_space() {
        let a = m(&[&[1, 0, 1], &[0, 1, 1]]);
        let red = rref(&a, &vec![int(0); 2], 3);
        let lam = red.express(&[int(2), int(3), int(5)]).unwrap();
        assert_eq!(lam, vec![int(2), int(3)]);
        assert!(red.express(&[int(1), int(0), int(0)]).is_none());
    }

    #[test]
    fn inverse_by_columns() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = inverse_columns(&a).unwrap();
        // column 0 of inverse is (1, -1)
        assert_eq!(inv[0], vec![int(1), int(-1)]);
        assert_eq!(inv[1], vec![int(-1), int(2)]);
    }
}
