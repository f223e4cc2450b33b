//! Exact rational linear-program feasibility.
//!
//! A single entry point decides feasibility of a system of linear
//! constraints over free rational variables and returns a witness point.
//! Phase-one simplex with Bland's rule, all arithmetic in `BigRational`.

use crate::exact_linalg::Rat;
use num::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub rel: Rel,
    pub rhs: Rat,
}

impl Constraint {
    pub fn ge(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        Constraint { coeffs, rel: Rel::Ge, rhs }
    }

    pub fn eq(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        Constraint { coeffs, rel: Rel::Eq, rhs }
    }
}

/// Find rational `x` satisfying all constraints, or `None` if infeasible.
pub fn feasible_point(num_vars: usize, constraints: &[Constraint]) -> Option<Vec<Rat>> {
    // Standard form: x = xp - xn with xp, xn >= 0; Ge rows get a surplus
    // variable; every row gets an artificial variable after sign-normalizing
    // the rhs. Minimize the sum of artificials.
    let m = constraints.len();
    if m == 0 {
        return Some(vec![Rat::zero(); num_vars]);
    }
    let n_surplus = constraints.iter().filter(|c| c.rel == Rel::Ge).count();
    let n = 2 * num_vars + n_surplus + m; // total columns
    let art_start = 2 * num_vars + n_surplus;

    // tableau rows: m constraint rows, one objective row
    let mut tab = vec![vec![Rat::zero(); n + 1]; m + 1];
    let mut surplus_idx = 0;
    for (i, c) in constraints.iter().enumerate() {
        assert_eq!(c.coeffs.len(), num_vars, "constraint arity");
        let flip = c.rhs.is_negative();
        let sgn = if flip { -Rat::one() } else { Rat::one() };
        for j in 0..num_vars {
            tab[i][j] = &sgn * &c.coeffs[j];
            tab[i][num_vars + j] = -&tab[i][j];
        }
        if c.rel == Rel::Ge {
            tab[i][2 * num_vars + surplus_idx] = -&sgn * Rat::one();
            surplus_idx += 1;
        }
        tab[i][art_start + i] = Rat::one();
        tab[i][n] = &sgn * &c.rhs;
    }
    // objective: minimize sum of artificials; express in terms of non-basic
    // columns by subtracting each constraint row.
    for j in 0..=n {
        let mut s = Rat::zero();
        for i in 0..m {
            s += &tab[i][j];
        }
        tab[m][j] = -s;
    }
    for i in 0..m {
        let idx = art_start + i;
        tab[m][idx] = Rat::zero();
    }

    let mut basis: Vec<usize> = (0..m).map(|i| art_start + i).collect();

    loop {
        // Bland's rule: entering = lowest-index column with negative reduced
        // cost (we minimize; objective row holds negated costs such that a
        // negative entry improves).
        let entering = (0..n).find(|&j| tab[m][j].is_negative());
        let entering = match entering {
            None => break,
            Some(j) => j,
        };
        // ratio test, Bland tie-break on basis index
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..m {
            if tab[i][entering].is_positive() {
                let ratio = &tab[i][n] / &tab[i][entering];
                match &leave {
                    None => leave = Some((i, ratio)),
                    Some((li, lr)) => {
                        if &ratio < lr || (&ratio == lr && basis[i] < basis[*li]) {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
        }
        let (leaving, _) = leave?; // unbounded phase-1 cannot happen; defensive
        // pivot
        let piv = tab[leaving][entering].clone();
        for j in 0..=n {
            let val = &tab[leaving][j] / &piv;
            tab[leaving][j] = val;
        }
        for i in 0..=m {
            if i != leaving && !tab[i][entering].is_zero() {
                let f = tab[i][entering].clone();
                for j in 0..=n {
                    let sub = &f * &tab[leaving][j];
                    tab[i][j] -= sub;
                }
            }
        }
        basis[leaving] = entering;
    }

    // optimum of phase one: -tab[m][n] is the residual artificial sum
    if !tab[m][n].is_zero() {
        return None;
    }
    let mut x = vec![Rat::zero(); num_vars];
    for i in 0..m {
        let b = basis[i];
        if b < num_vars {
            x[b] += &tab[i][n];
        } else if b < 2 * num_vars {
            x[b - num_vars] -= &tab[i][n];
        } else if b >= art_start && !tab[i][n].is_zero() {
            // degenerate artificial stuck in basis at zero level is fine;
            // nonzero was caught above
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::{rat, rat_int};

    fn c(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn simple_feasible() {
        // x >= 1, y >= 1, x + y <= 10 (as -x-y >= -10)
        let cons = vec![
            Constraint::ge(c(&[1, 0]), rat_int(1)),
            Constraint::ge(c(&[0, 1]), rat_int(1)),
            Constraint::ge(c(&[-1, -1]), rat_int(-10)),
        ];
        let x = feasible_point(2, &cons).unwrap();
        assert!(x[0] >= rat_int(1) && x[1] >= rat_int(1));
        assert!(&x[0] + &x[1] <= rat_int(10));
    }

    #[test]
    fn simple_infeasible() {
        // x >= 1 and -x >= 0
        let cons = vec![
            Constraint::ge(c(&[1]), rat_int(1)),
            Constraint::ge(c(&[-1]), rat_int(0)),
        ];
        assert!(feasible_point(1, &cons).is_none());
    }

    #[test]
    fn equality_mix() {
        // x + y = 3, x - y >= 2, y >= 1/2 -> infeasible (x-y = 3-2y <= 2 needs y <= 1/2, tight ok)
        let cons = vec![
            Constraint::eq(c(&[1, 1]), rat_int(3)),
            Constraint::ge(c(&[1, -1]), rat_int(2)),
            Constraint::ge(c(&[0, 1]), rat(1, 2)),
        ];
        let x = feasible_point(2, &cons).unwrap();
        assert_eq!(&x[0] + &x[1], rat_int(3));
        assert!(&x[0] - &x[1] >= rat_int(2));
        assert!(x[1] >= rat(1, 2));

        let cons = vec![
            Constraint::eq(c(&[1, 1]), rat_int(3)),
            Constraint::ge(c(&[1, -1]), rat_int(2)),
            Constraint::ge(c(&[0, 1]), rat(3, 4)),
        ];
        assert!(feasible_point(2, &cons).is_none());
    }

    #[test]
    fn negative_rhs_rows() {
        // -x >= -5, x >= 4
        let cons = vec![
            Constraint::ge(c(&[-1]), rat_int(-5)),
            Constraint::ge(c(&[1]), rat_int(4)),
        ];
        let x = feasible_point(1, &cons).unwrap();
        assert!(x[0] >= rat_int(4) && x[0] <= rat_int(5));
    }
}
