//! Small dense exact-rational linear programming.
//!
//! Solves `min c.x  s.t.  A x = b, x >= 0` by two-phase simplex with
//! Bland's rule. Problem sizes here are tiny (at most ~10 equality rows and
//! ~250 columns), so a dense tableau over `BigRational` is plenty.

use crate::rat::Rat;
use num_traits::{Signed, Zero};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LpError {
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
}

pub struct StandardLp {
    /// row-major equality matrix
    pub a: Vec<Vec<Rat>>,
    pub b: Vec<Rat>,
    pub objective: Vec<Rat>,
}

#[derive(Debug)]
pub struct LpSolution {
    pub objective_value: Rat,
    pub x: Vec<Rat>,
}

struct Tableau {
    rows: usize,
    cols: usize,
    /// rows x (cols + 1); last column is the rhs
    data: Vec<Vec<Rat>>,
    /// objective row, length cols + 1 (reduced costs; last entry = -value)
    obj: Vec<Rat>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let piv = self.data[row][col].clone();
        for v in self.data[row].iter_mut() {
            *v = v.clone() / &piv;
        }
        for r in 0..self.rows {
            if r == row {
                continue;
            }
            let factor = self.data[r][col].clone();
            if factor.is_zero() {
                continue;
            }
            for c in 0..=self.cols {
                let t = &self.data[row][c] * &factor;
                self.data[r][c] -= t;
            }
        }
        let factor = self.obj[col].clone();
        if !factor.is_zero() {
            for c in 0..=self.cols {
                let t = &self.data[row][c] * &factor;
                self.obj[c] -= t;
            }
        }
        self.basis[row] = col;
    }

    /// Bland's rule: entering = first column with negative reduced cost,
    /// leaving = smallest ratio then smallest basis index.
    fn solve(&mut self) -> Result<(), LpError> {
        loop {
            let entering = (0..self.cols).find(|&c| self.obj[c].is_negative());
            let Some(col) = entering else {
                return Ok(());
            };
            let mut leave: Option<(usize, Rat)> = None;
            for r in 0..self.rows {
                if self.data[r][col].is_positive() {
                    let ratio = &self.data[r][self.cols] / &self.data[r][col];
                    let better = match &leave {
                        None => true,
                        Some((lr, lv)) => {
                            ratio < *lv || (ratio == *lv && self.basis[r] < self.basis[*lr])
                        }
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            let Some((row, _)) = leave else {
                return Err(LpError::Unbounded);
            };
            self.pivot(row, col);
        }
    }
}

impl StandardLp {
    pub fn solve(&self) -> Result<LpSolution, LpError> {
        let m = self.a.len();
        let n = self.objective.len();
        debug_assert!(self.a.iter().all(|row| row.len() == n));

        // Phase 1: artificial basis, rhs made non-negative.
        let cols = n + m;
        let mut data: Vec<Vec<Rat>> = Vec::with_capacity(m);
        for (i, row) in self.a.iter().enumerate() {
            let mut r: Vec<Rat> = row.clone();
            let mut rhs = self.b[i].clone();
            if rhs.is_negative() {
                for v in r.iter_mut() {
                    *v = -v.clone();
                }
                rhs = -rhs;
            }
            r.extend((0..m).map(|j| {
                if j == i {
                    Rat::from_integer(1.into())
                } else {
                    Rat::zero()
                }
            }));
            r.push(rhs);
            data.push(r);
        }
        // Phase-1 objective: sum of artificials, expressed in reduced form.
        let mut obj = vec![Rat::zero(); cols + 1];
        for r in &data {
            for c in 0..n {
                obj[c] -= &r[c];
            }
            obj[cols] -= &r[cols];
        }
        let mut t = Tableau {
            rows: m,
            cols,
            data,
            obj,
            basis: (n..n + m).collect(),
        };
        t.solve()?;
        if !(-t.obj[cols].clone()).is_zero() {
            return Err(LpError::Infeasible);
        }
        // Drive any artificial variables out of the basis.
        for r in 0..m {
            if t.basis[r] >= n {
                if let Some(c) = (0..n).find(|&c| !t.data[r][c].is_zero()) {
                    t.pivot(r, c);
                }
                // a fully zero structural row is redundant; leave it be
            }
        }

        // Phase 2 on the structural columns.
        let mut data: Vec<Vec<Rat>> = Vec::with_capacity(m);
        for r in 0..m {
            let mut row: Vec<Rat> = t.data[r][..n].to_vec();
            row.push(t.data[r][cols].clone());
            data.push(row);
        }
        let mut obj = vec![Rat::zero(); n + 1];
        obj[..n].clone_from_slice(&self.objective);
        // Reduce the objective against the current basis.
        let basis = t.basis.clone();
        let mut t2 = Tableau {
            rows: m,
            cols: n,
            data,
            obj,
            basis,
        };
        for r in 0..m {
            let bcol = t2.basis[r];
            if bcol < n && !t2.obj[bcol].is_zero() {
                let factor = t2.obj[bcol].clone();
                for c in 0..=n {
                    let v = &t2.data[r][c] * &factor;
                    t2.obj[c] -= v;
                }
            }
        }
        t2.solve()?;

        let mut x = vec![Rat::zero(); n];
        for r in 0..m {
            if t2.basis[r] < n {
                x[t2.basis[r]] = t2.data[r][n].clone();
            }
        }
        let value = self
            .objective
            .iter()
            .zip(&x)
            .map(|(c, v)| c * v)
            .fold(Rat::zero(), |a, b| a + b);
        Ok(LpSolution {
            objective_value: value,
            x,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};

    #[test]
    fn solves_small_min() {
        // min x + y s.t. x + 2y = 4, x,y >= 0  ->  y = 2, value 2
        let lp = StandardLp {
            a: vec![vec![rat(1), rat(2)]],
            b: vec![rat(4)],
            objective: vec![rat(1), rat(1)],
        };
        let sol = lp.solve().unwrap();
        assert_eq!(sol.objective_value, rat(2));
        assert_eq!(sol.x, vec![rat(0), rat(2)]);
    }

    #[test]
    fn detects_infeasible() {
        // x = -1, x >= 0
        let lp = StandardLp {
            a: vec![vec![rat(1)]],
            b: vec![rat(-1)],
            objective: vec![rat(1)],
        };
        assert_eq!(lp.solve().unwrap_err(), LpError::Infeasible);
    }

    #[test]
    fn detects_unbounded() {
        // min -x s.t. x - y = 1
        let lp = StandardLp {
            a: vec![vec![rat(1), rat(-1)]],
            b: vec![rat(1)],
            objective: vec![rat(-1), rat(0)],
        };
        assert_eq!(lp.solve().unwrap_err(), LpError::Unbounded);
    }

    #[test]
    fn exact_fractions() {
        // min z s.t. 3z - x = 1/2, x >= 0 -> z = 1/6 at x = 0
        let lp = StandardLp {
            a: vec![vec![rat(3), rat(-1)]],
            b: vec![ratio(1, 2)],
            objective: vec![rat(1), rat(0)],
        };
        let sol = lp.solve().unwrap();
        assert_eq!(sol.objective_value, ratio(1, 6));
    }

    #[test]
    fn redundant_rows_are_fine() {
        // duplicated constraint
        let lp = StandardLp {
            a: vec![vec![rat(1), rat(1)], vec![rat(2), rat(2)]],
            b: vec![rat(3), rat(6)],
            objective: vec![rat(1), rat(2)],
        };
        let sol = lp.solve().unwrap();
        assert_eq!(sol.objective_value, rat(3));
    }
}
