//! Dense two-phase tableau simplex with Bland's anti-cycling rule.
//!
//! Solves `min c.x  s.t.  A x = b, x >= 0` and reports dual information in
//! every outcome, which the cone layer turns into certificates.

use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub enum SimplexOutcome<S> {
    /// `duals` satisfy `c - A^T y >= 0` and `b.y == value`.
    Optimal { x: Vec<S>, value: S, duals: Vec<S> },
    /// `y^T A <= 0` componentwise and `y.b > 0`.
    Infeasible { farkas: Vec<S> },
    /// `d >= 0`, `A d == 0`, `c.d < 0`.
    Unbounded { direction: Vec<S> },
}

struct Tableau<S> {
    t: Vec<Vec<S>>,
    z: Vec<S>,
    basis: Vec<usize>,
    n: usize,
    m: usize,
}

impl<S: Scalar> Tableau<S> {
    fn rhs(&self) -> usize {
        self.n + self.m
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let inv = S::one() / self.t[r][col].clone();
        for x in self.t[r].iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        if !S::EXACT {
            self.t[r][col] = S::one();
        }
        let prow = std::mem::take(&mut self.t[r]);
        let nz: Vec<usize> = (0..prow.len()).filter(|&j| !prow[j].is_zero()).collect();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for &j in &nz {
                row[j] = row[j].clone() - f.clone() * prow[j].clone();
            }
            if !S::EXACT {
                row[col] = S::zero();
            }
        }
        if !self.z[col].is_zero() {
            let f = self.z[col].clone();
            for &j in &nz {
                self.z[j] = self.z[j].clone() - f.clone() * prow[j].clone();
            }
            if !S::EXACT {
                self.z[col] = S::zero();
            }
        }
        self.t[r] = prow;
        self.basis[r] = col;
    }

    /// Bland: lowest-index improving column, then lowest-index leaving variable.
    /// Returns `Err(col)` on an unbounded column, `Ok(false)` at optimality.
    fn step(&mut self) -> Result<bool, usize> {
        let Some(col) = (0..self.n).find(|&j| self.z[j].is_neg()) else {
            return Ok(false);
        };
        let rhs = self.rhs();
        let mut best: Option<(usize, S)> = None;
        for i in 0..self.m {
            let a = &self.t[i][col];
            if !a.is_pos() {
                continue;
            }
            let ratio = self.t[i][rhs].clone() / a.clone();
            best = match best {
                None => Some((i, ratio)),
                Some((bi, br)) => {
                    if ratio < br || (ratio == br && self.basis[i] < self.basis[bi]) {
                        Some((i, ratio))
                    } else {
                        Some((bi, br))
                    }
                }
            };
        }
        match best {
            None => Err(col),
            Some((r, _)) => {
                self.pivot(r, col);
                Ok(true)
            }
        }
    }
}

pub fn solve<S: Scalar>(a: &[Vec<S>], b: &[S], c: &[S]) -> SimplexOutcome<S> {
    let m = a.len();
    let n = c.len();
    let width = n + m + 1;

    let mut sign = vec![S::one(); m];
    let mut t = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![S::zero(); width];
        let flip = b[i].is_neg();
        if flip {
            sign[i] = -S::one();
        }
        for j in 0..n {
            if !a[i][j].is_zero() {
                row[j] = if flip { -a[i][j].clone() } else { a[i][j].clone() };
            }
        }
        row[n + i] = S::one();
        row[n + m] = if flip { -b[i].clone() } else { b[i].clone() };
        t.push(row);
    }

    let mut z = vec![S::zero(); width];
    for row in &t {
        for j in 0..n {
            if !row[j].is_zero() {
                z[j] = z[j].clone() - row[j].clone();
            }
        }
        z[n + m] = z[n + m].clone() - row[n + m].clone();
    }

    let mut tab = Tableau {
        t,
        z,
        basis: (n..n + m).collect(),
        n,
        m,
    };

    // Phase 1. Artificial columns never re-enter (step only scans j < n).
    loop {
        match tab.step() {
            Ok(true) => continue,
            Ok(false) => break,
            // Phase-1 objective is bounded below by zero.
            Err(_) => unreachable!("phase one cannot be unbounded"),
        }
    }
    let infeas = -tab.z[n + m].clone();
    if infeas.is_pos() {
        let farkas = (0..m)
            .map(|i| (S::one() - tab.z[n + i].clone()) * sign[i].clone())
            .collect();
        return SimplexOutcome::Infeasible { farkas };
    }

    // Drive artificials out of the basis where possible.
    for r in 0..m {
        if tab.basis[r] >= n {
            if let Some(j) = (0..n).find(|&j| !tab.t[r][j].is_negligible()) {
                tab.pivot(r, j);
            }
        }
    }

    // Phase 2 reduced costs.
    let cost = |j: usize| -> S {
        if j < n {
            c[j].clone()
        } else {
            S::zero()
        }
    };
    let mut z = vec![S::zero(); width];
    for (j, zj) in z.iter_mut().enumerate().take(n + m) {
        *zj = cost(j);
    }
    for i in 0..m {
        let cb = cost(tab.basis[i]);
        if cb.is_zero() {
            continue;
        }
        for j in 0..width {
            if !tab.t[i][j].is_zero() {
                z[j] = z[j].clone() - cb.clone() * tab.t[i][j].clone();
            }
        }
    }
    tab.z = z;

    loop {
        match tab.step() {
            Ok(true) => continue,
            Ok(false) => break,
            Err(col) => {
                let mut direction = vec![S::zero(); n];
                direction[col] = S::one();
                for i in 0..m {
                    let bv = tab.basis[i];
                    if bv < n {
                        direction[bv] = -tab.t[i][col].clone();
                    }
                }
                return SimplexOutcome::Unbounded { direction };
            }
        }
    }

    let mut x = vec![S::zero(); n];
    for i in 0..m {
        let bv = tab.basis[i];
        if bv < n {
            x[bv] = tab.t[i][n + m].clone();
        }
    }
    let value = -tab.z[n + m].clone();
    let duals = (0..m)
        .map(|i| -tab.z[n + i].clone() * sign[i].clone())
        .collect();
    SimplexOutcome::Optimal { x, value, duals }
}
