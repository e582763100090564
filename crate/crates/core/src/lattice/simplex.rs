//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Problems are stated as `maximize c·x` subject to linear constraints, with
//! each variable either nonnegative or free. Bland's rule (smallest eligible
//! index enters, ties on the ratio test leave by smallest basic index)
//! guarantees termination; exact arithmetic makes the optimum exact.

use num_traits::{Signed, Zero};

use super::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    NonNegative,
    Free,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub sense: Sense,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal {
        point: Vec<Rational>,
        value: Rational,
    },
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct LinearProgram {
    domains: Vec<Domain>,
    objective: Vec<Rational>,
    constraints: Vec<Constraint>,
}

impl LinearProgram {
    /// A program with a zero objective over variables with the given domains.
    pub fn new(domains: Vec<Domain>) -> Self {
        let objective = vec![Rational::zero(); domains.len()];
        LinearProgram {
            domains,
            objective,
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.domains.len()
    }

    pub fn maximize(&mut self, objective: Vec<Rational>) -> &mut Self {
        assert_eq!(objective.len(), self.num_vars());
        self.objective = objective;
        self
    }

    pub fn constrain(&mut self, coeffs: Vec<Rational>, sense: Sense, rhs: Rational) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars());
        self.constraints.push(Constraint { coeffs, sense, rhs });
        self
    }

    pub fn solve(&self) -> LpOutcome {
        // column layout: structural (+ negative parts of free vars), slacks, artificials
        let mut pos_col = Vec::with_capacity(self.num_vars());
        let mut neg_col = Vec::with_capacity(self.num_vars());
        let mut ncols = 0;
        for d in &self.domains {
            pos_col.push(ncols);
            ncols += 1;
            if *d == Domain::Free {
                neg_col.push(Some(ncols));
                ncols += 1;
            } else {
                neg_col.push(None);
            }
        }
        let mut slack_col = Vec::with_capacity(self.constraints.len());
        for c in &self.constraints {
            if c.sense == Sense::Eq {
                slack_col.push(None);
            } else {
                slack_col.push(Some(ncols));
                ncols += 1;
            }
        }
        let first_artificial = ncols;
        let m = self.constraints.len();
        ncols += m;

        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
        for (i, c) in self.constraints.iter().enumerate() {
            let mut row = vec![Rational::zero(); ncols + 1];
            for (v, a) in c.coeffs.iter().enumerate() {
                row[pos_col[v]] += a;
                if let Some(nc) = neg_col[v] {
                    row[nc] -= a;
                }
            }
            match (c.sense, slack_col[i]) {
                (Sense::Le, Some(s)) => row[s] = Rational::from_integer(1.into()),
                (Sense::Ge, Some(s)) => row[s] = Rational::from_integer((-1).into()),
                _ => {}
            }
            row[ncols] = c.rhs.clone();
            if row[ncols].is_negative() {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
            }
            row[first_artificial + i] = Rational::from_integer(1.into());
            rows.push(row);
        }
        let mut tab = Tableau {
            rows,
            basis: (first_artificial..first_artificial + m).collect(),
            ncols,
        };

        let mut phase1 = vec![Rational::zero(); ncols];
        for c in phase1.iter_mut().skip(first_artificial) {
            *c = Rational::from_integer((-1).into());
        }
        if tab.run(&phase1, ncols).is_err() {
            unreachable!("phase one is bounded above by zero");
        }
        if tab.objective_value(&phase1).is_negative() {
            return LpOutcome::Infeasible;
        }
        tab.drive_out_artificials(first_artificial);

        let mut cost = vec![Rational::zero(); ncols];
        for (v, c) in self.objective.iter().enumerate() {
            cost[pos_col[v]] = c.clone();
            if let Some(nc) = neg_col[v] {
                cost[nc] = -c.clone();
            }
        }
        if tab.run(&cost, first_artificial).is_err() {
            return LpOutcome::Unbounded;
        }

        let mut values = vec![Rational::zero(); ncols];
        for (i, &b) in tab.basis.iter().enumerate() {
            values[b] = tab.rows[i][ncols].clone();
        }
        let point: Vec<Rational> = (0..self.num_vars())
            .map(|v| match neg_col[v] {
                Some(nc) => &values[pos_col[v]] - &values[nc],
                None => values[pos_col[v]].clone(),
            })
            .collect();
        let value = self.objective.iter().zip(&point).map(|(c, x)| c * x).sum();
        LpOutcome::Optimal { point, value }
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    ncols: usize,
}

struct Unbounded;

impl Tableau {
    fn objective_value(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .enumerate()
            .map(|(i, &b)| &cost[b] * &self.rows[i][self.ncols])
            .sum()
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *x -= &f * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost` with entering columns restricted to `0..allowed`.
    fn run(&mut self, cost: &[Rational], allowed: usize) -> Result<(), Unbounded> {
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let reduced: Rational = &cost[j]
                    - self
                        .basis
                        .iter()
                        .enumerate()
                        .map(|(i, &b)| &cost[b] * &self.rows[i][j])
                        .sum::<Rational>();
                reduced.is_positive()
            });
            let Some(j) = entering else {
                return Ok(());
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][j];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rows[i][self.ncols] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((i, _)) => self.pivot(i, j),
                None => return Err(Unbounded),
            }
        }
    }

    /// After a feasible phase one, replaces basic artificials (all at level
    /// zero) by structural columns, dropping rows that turn out redundant.
    fn drive_out_artificials(&mut self, first_artificial: usize) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] < first_artificial {
                i += 1;
                continue;
            }
            match (0..first_artificial).find(|&j| !self.rows[i][j].is_zero()) {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    self.rows.remove(i);
                    self.basis.remove(i);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{parse_rational, rational};

    fn r(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rational(x)).collect()
    }

    #[test]
    fn small_maximization() {
        // max x + y s.t. x + 2y ≤ 4, 3x + y ≤ 6
        let mut lp = LinearProgram::new(vec![Domain::NonNegative; 2]);
        lp.maximize(r(&[1, 1]))
            .constrain(r(&[1, 2]), Sense::Le, rational(4))
            .constrain(r(&[3, 1]), Sense::Le, rational(6));
        match lp.solve() {
            LpOutcome::Optimal { point, value } => {
                assert_eq!(
                    point,
                    vec![
                        parse_rational("8/5").unwrap(),
                        parse_rational("6/5").unwrap()
                    ]
                );
                assert_eq!(value, parse_rational("14/5").unwrap());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn free_variables_and_equalities() {
        // max −x s.t. x = −3, x free
        let mut lp = LinearProgram::new(vec![Domain::Free]);
        lp.maximize(r(&[-1]))
            .constrain(r(&[1]), Sense::Eq, rational(-3));
        assert_eq!(
            lp.solve(),
            LpOutcome::Optimal {
                point: r(&[-3]),
                value: rational(3)
            }
        );
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(vec![Domain::NonNegative]);
        lp.constrain(r(&[1]), Sense::Le, rational(-1));
        assert_eq!(lp.solve(), LpOutcome::Infeasible);

        let mut lp = LinearProgram::new(vec![Domain::NonNegative; 2]);
        lp.maximize(r(&[1, 0]))
            .constrain(r(&[1, -1]), Sense::Ge, rational(0));
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(vec![Domain::NonNegative; 2]);
        lp.maximize(r(&[1, 0]))
            .constrain(r(&[1, 1]), Sense::Eq, rational(2))
            .constrain(r(&[2, 2]), Sense::Eq, rational(4));
        assert_eq!(
            lp.solve(),
            LpOutcome::Optimal {
                point: r(&[2, 0]),
                value: rational(2)
            }
        );
    }

    #[test]
    fn degenerate_cycle_prone_instance() {
        // Beale's example, which cycles under the textbook largest-coefficient rule.
        let q = |s: &str| parse_rational(s).unwrap();
        let mut lp = LinearProgram::new(vec![Domain::NonNegative; 4]);
        lp.maximize(vec![q("3/4"), q("-150"), q("1/50"), q("-6")])
            .constrain(
                vec![q("1/4"), q("-60"), q("-1/25"), q("9")],
                Sense::Le,
                q("0"),
            )
            .constrain(
                vec![q("1/2"), q("-90"), q("-1/50"), q("3")],
                Sense::Le,
                q("0"),
            )
            .constrain(vec![q("0"), q("0"), q("1"), q("0")], Sense::Le, q("1"));
        match lp.solve() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q("1/20")),
            other => panic!("{other:?}"),
        }
    }
}
