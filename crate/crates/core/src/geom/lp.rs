//! A small dense two-phase simplex solver.
//!
//! Solves `max c·x  s.t.  A x <= b` with free `x`, which is all the crate
//! needs: Chebyshev centers, largest-homothet fitting, and slab fitting are
//! tiny LPs (few variables, up to a few hundred constraints). Free variables
//! are split into differences of nonnegatives; Bland's rule prevents cycling.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LpError {
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("simplex failed to converge")]
    Numerical,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
}

const TOL: f64 = 1e-9;
const MAX_ITERS: usize = 20_000;

struct Tableau {
    rows: usize,
    cols: usize, // structural + slack + artificial columns (rhs kept separate)
    a: Vec<f64>,
    rhs: Vec<f64>,
    cost: Vec<f64>,
    obj: f64,
    basis: Vec<usize>,
    active: Vec<bool>,
}

impl Tableau {
    fn at(&self, r: usize, c: usize) -> f64 {
        self.a[r * self.cols + c]
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let piv = self.at(pr, pc);
        let inv = 1.0 / piv;
        for c in 0..self.cols {
            self.a[pr * self.cols + c] *= inv;
        }
        self.rhs[pr] *= inv;
        for r in 0..self.rows {
            if r == pr || !self.active[r] {
                continue;
            }
            let f = self.at(r, pc);
            if f != 0.0 {
                for c in 0..self.cols {
                    let v = self.at(pr, c);
                    self.a[r * self.cols + c] -= f * v;
                }
                self.rhs[r] -= f * self.rhs[pr];
            }
        }
        let f = self.cost[pc];
        if f != 0.0 {
            for c in 0..self.cols {
                self.cost[c] -= f * self.at(pr, c);
            }
            self.obj -= f * self.rhs[pr];
        }
        self.basis[pr] = pc;
    }

    /// Minimize the current cost row. Returns Err(Unbounded) when a column
    /// can decrease forever.
    fn run(&mut self, allowed: &dyn Fn(usize) -> bool) -> Result<(), LpError> {
        for _ in 0..MAX_ITERS {
            // Bland: smallest-index column with negative reduced cost.
            let mut entering = None;
            for c in 0..self.cols {
                if allowed(c) && self.cost[c] < -TOL {
                    entering = Some(c);
                    break;
                }
            }
            let Some(pc) = entering else { return Ok(()) };
            let mut pr: Option<usize> = None;
            let mut best = f64::INFINITY;
            for r in 0..self.rows {
                if !self.active[r] {
                    continue;
                }
                let a = self.at(r, pc);
                if a > TOL {
                    let ratio = self.rhs[r] / a;
                    let better = ratio < best - TOL
                        || (ratio < best + TOL
                            && pr.map_or(true, |p| self.basis[r] < self.basis[p]));
                    if better {
                        best = ratio;
                        pr = Some(r);
                    }
                }
            }
            let Some(pr) = pr else { return Err(LpError::Unbounded) };
            self.pivot(pr, pc);
        }
        Err(LpError::Numerical)
    }
}

/// Maximize `c·x` subject to `a[i]·x <= b[i]` with all `x` free.
pub fn maximize(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Result<LpSolution, LpError> {
    let n = c.len();
    let m = a.len();
    debug_assert_eq!(b.len(), m);
    debug_assert!(a.iter().all(|row| row.len() == n));

    // Columns: u (n), v (n), slack (m), artificial (one per flipped row).
    let flipped: Vec<bool> = b.iter().map(|&bi| bi < 0.0).collect();
    let n_art = flipped.iter().filter(|&&f| f).count();
    let cols = 2 * n + m + n_art;
    let mut t = Tableau {
        rows: m,
        cols,
        a: vec![0.0; m * cols],
        rhs: vec![0.0; m],
        cost: vec![0.0; cols],
        obj: 0.0,
        basis: vec![0; m],
        active: vec![true; m],
    };

    let mut art = 2 * n + m;
    for i in 0..m {
        let sign = if flipped[i] { -1.0 } else { 1.0 };
        for j in 0..n {
            t.a[i * cols + j] = sign * a[i][j];
            t.a[i * cols + n + j] = -sign * a[i][j];
        }
        t.a[i * cols + 2 * n + i] = sign;
        t.rhs[i] = sign * b[i];
        if flipped[i] {
            t.a[i * cols + art] = 1.0;
            t.basis[i] = art;
            art += 1;
        } else {
            t.basis[i] = 2 * n + i;
        }
    }

    let art_start = 2 * n + m;
    if n_art > 0 {
        // Phase 1: minimize the sum of artificials.
        for cidx in art_start..cols {
            t.cost[cidx] = 1.0;
        }
        // Reduce against the artificial basis rows.
        for i in 0..m {
            if t.basis[i] >= art_start {
                for cidx in 0..cols {
                    t.cost[cidx] -= t.at(i, cidx);
                }
                t.obj -= t.rhs[i];
            }
        }
        t.run(&|_| true)?;
        if -t.obj > 1e-7 {
            return Err(LpError::Infeasible);
        }
        // Pivot lingering artificials out, or drop their (redundant) rows.
        for r in 0..m {
            if t.basis[r] >= art_start {
                let mut pivoted = false;
                for cidx in 0..art_start {
                    if t.at(r, cidx).abs() > TOL {
                        t.pivot(r, cidx);
                        pivoted = true;
                        break;
                    }
                }
                if !pivoted {
                    t.active[r] = false;
                }
            }
        }
    }

    // Phase 2: minimize -c·(u - v); artificial columns are barred.
    t.cost = vec![0.0; cols];
    t.obj = 0.0;
    for j in 0..n {
        t.cost[j] = -c[j];
        t.cost[n + j] = c[j];
    }
    for r in 0..m {
        if !t.active[r] {
            continue;
        }
        let f = t.cost[t.basis[r]];
        if f != 0.0 {
            for cidx in 0..cols {
                let v = t.at(r, cidx);
                t.cost[cidx] -= f * v;
            }
            t.obj -= f * t.rhs[r];
        }
    }
    t.run(&|cidx| cidx < art_start)?;

    let mut x = vec![0.0; n];
    for r in 0..m {
        if !t.active[r] {
            continue;
        }
        let bv = t.basis[r];
        if bv < n {
            x[bv] += t.rhs[r];
        } else if bv < 2 * n {
            x[bv - n] -= t.rhs[r];
        }
    }
    let objective = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
    Ok(LpSolution { x, objective })
}
