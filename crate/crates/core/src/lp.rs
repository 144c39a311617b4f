//! Dense two-phase simplex over exact rationals.
//!
//! Sized for the desk-scale problems in this crate (a handful of rows, at
//! most a few dozen columns). Bland's rule is used throughout, so the method
//! terminates on degenerate problems.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { objective: BigRational, solution: Vec<BigRational> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: usize,
    cols: usize,
    /// rows x (cols + 1); last column is the right-hand side.
    a: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &BigRational {
        &self.a[i][self.cols]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.a[row][col].clone();
        for x in self.a[row].iter_mut() {
            *x /= &p;
        }
        for i in 0..self.rows {
            if i == row || self.a[i][col].is_zero() {
                continue;
            }
            let f = self.a[i][col].clone();
            for j in 0..=self.cols {
                let delta = &f * &self.a[row][j];
                self.a[i][j] -= delta;
            }
        }
        self.basis[row] = col;
    }

    /// Minimize `cost . x` from the current basic feasible point, considering
    /// only columns `< entering_limit` as entering candidates (phase II uses
    /// this to keep artificials out). Returns false if unbounded. Bland's
    /// rule: entering = lowest-index column with negative reduced cost,
    /// leaving = lowest-index basic variable among the minimum-ratio rows.
    fn optimize(&mut self, cost: &[BigRational], entering_limit: usize) -> bool {
        loop {
            // reduced costs: c_j - c_B . B^{-1} A_j
            let mut entering = None;
            for j in 0..entering_limit {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut rc = cost[j].clone();
                for i in 0..self.rows {
                    if !self.a[i][j].is_zero() && !cost[self.basis[i]].is_zero() {
                        rc -= &cost[self.basis[i]] * &self.a[i][j];
                    }
                }
                if rc.is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(col) = entering else { return true };

            let mut leaving: Option<(usize, BigRational)> = None;
            for i in 0..self.rows {
                if self.a[i][col].is_positive() {
                    let ratio = self.rhs(i) / &self.a[i][col];
                    let better = match &leaving {
                        None => true,
                        Some((best_row, best)) => {
                            ratio < *best || (ratio == *best && self.basis[i] < self.basis[*best_row])
                        }
                    };
                    if better {
                        leaving = Some((i, ratio));
                    }
                }
            }
            let Some((row, _)) = leaving else { return false };
            self.pivot(row, col);
        }
    }
}

/// Minimize `cost . x` subject to `a x = b`, `x >= 0`.
pub fn solve_min(a: &[Vec<BigRational>], b: &[BigRational], cost: &[BigRational]) -> LpOutcome {
    let rows = a.len();
    let cols = if rows == 0 { cost.len() } else { a[0].len() };
    debug_assert_eq!(cost.len(), cols);

    // Build [A | I_art | b] with b >= 0.
    let total = cols + rows;
    let mut t = Tableau {
        rows,
        cols: total,
        a: Vec::with_capacity(rows),
        basis: (cols..total).collect(),
    };
    for i in 0..rows {
        let mut row: Vec<BigRational> = Vec::with_capacity(total + 1);
        let flip = b[i].is_negative();
        for j in 0..cols {
            row.push(if flip { -&a[i][j] } else { a[i][j].clone() });
        }
        for k in 0..rows {
            row.push(if k == i { BigRational::one() } else { BigRational::zero() });
        }
        row.push(if flip { -&b[i] } else { b[i].clone() });
        t.a.push(row);
    }

    // Phase I: minimize the sum of artificials.
    let mut phase1 = vec![BigRational::zero(); total];
    for j in cols..total {
        phase1[j] = BigRational::one();
    }
    let bounded = t.optimize(&phase1, total);
    debug_assert!(bounded, "phase-I objective is bounded below by zero");
    let art_sum: BigRational = (0..rows)
        .filter(|&i| t.basis[i] >= cols)
        .map(|i| t.rhs(i).clone())
        .sum();
    if !art_sum.is_zero() {
        return LpOutcome::Infeasible;
    }

    // Drive any residual artificials out of the basis.
    for i in 0..rows {
        if t.basis[i] >= cols {
            if let Some(j) = (0..cols).find(|&j| !t.a[i][j].is_zero()) {
                t.pivot(i, j);
            }
            // An all-zero row is a redundant constraint; the artificial stays
            // basic at value zero and never re-enters (phase-II cost 0).
        }
    }

    // Phase II; artificial columns are excluded from entering.
    let mut phase2 = vec![BigRational::zero(); total];
    phase2[..cols].clone_from_slice(cost);
    if !t.optimize(&phase2, cols) {
        return LpOutcome::Unbounded;
    }

    let mut solution = vec![BigRational::zero(); cols];
    for i in 0..rows {
        if t.basis[i] < cols {
            solution[t.basis[i]] = t.rhs(i).clone();
        }
    }
    let objective = solution.iter().zip(cost.iter()).map(|(x, c)| x * c).sum();
    LpOutcome::Optimal { objective, solution }
}

/// Is the system `a x = b, x >= 0` feasible?
pub fn feasible(a: &[Vec<BigRational>], b: &[BigRational]) -> bool {
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    let cost = vec![BigRational::zero(); cols];
    !matches!(solve_min(a, b, &cost), LpOutcome::Infeasible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    fn v(xs: &[i64]) -> Vec<BigRational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn simple_optimum() {
        // min -x - y  s.t.  x + y + s = 4, x + 3y + u = 6
        let a = m(&[&[1, 1, 1, 0], &[1, 3, 0, 1]]);
        let out = solve_min(&a, &v(&[4, 6]), &v(&[-1, -1, 0, 0]));
        match out {
            LpOutcome::Optimal { objective, .. } => assert_eq!(objective, rat(-4)),
            o => panic!("unexpected {o:?}"),
        }
    }

    #[test]
    fn infeasible_system() {
        // x + y = 1, x + y = 2
        let a = m(&[&[1, 1], &[1, 1]]);
        assert_eq!(solve_min(&a, &v(&[1, 2]), &v(&[0, 0])), LpOutcome::Infeasible);
        assert!(!feasible(&a, &v(&[1, 2])));
        assert!(feasible(&a, &v(&[1, 1])));
    }

    #[test]
    fn unbounded_objective() {
        // min -x  s.t.  x - y = 0  (x = y can grow without bound)
        let a = m(&[&[1, -1]]);
        assert_eq!(solve_min(&a, &v(&[0]), &v(&[-1, 0])), LpOutcome::Unbounded);
    }

    #[test]
    fn negative_rhs_handled() {
        // -x = -3  =>  x = 3
        let a = m(&[&[-1]]);
        match solve_min(&a, &v(&[-3]), &v(&[1])) {
            LpOutcome::Optimal { objective, solution } => {
                assert_eq!(objective, rat(3));
                assert_eq!(solution, v(&[3]));
            }
            o => panic!("unexpected {o:?}"),
        }
    }

    #[test]
    fn redundant_rows() {
        let a = m(&[&[1, 1], &[2, 2]]);
        match solve_min(&a, &v(&[2, 4]), &v(&[1, 0])) {
            LpOutcome::Optimal { objective, .. } => assert_eq!(objective, rat(0)),
            o => panic!("unexpected {o:?}"),
        }
    }
}
