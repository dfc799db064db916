//! Exact rational linear programming.
//!
//! A dense two-phase simplex over `BigRational` with Bland's anti-cycling
//! rule. Programs are equalities plus per-variable bounds; callers introduce
//! slack variables where they need inequality rows. Everything is exact:
//! an optimal point satisfies every constraint with zero residual, and the
//! fixed pivot order makes outcomes and witness points reproducible.
//!
//! Infeasible systems in the pure shape `Ax = b, x >= 0` come back with a
//! Farkas witness `y` (`yᵀA <= 0` componentwise and `yᵀb > 0`) so negative
//! answers can be checked independently.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{one, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

/// `objective · x` subject to `equalities` and per-variable bounds.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub num_vars: usize,
    /// Rows `(coefficients, rhs)` with `coefficients · x = rhs`.
    pub equalities: Vec<(Vec<Rational>, Rational)>,
    /// Per-variable lower bounds; `None` leaves the variable unbounded below.
    pub lower: Vec<Option<Rational>>,
    /// Per-variable upper bounds.
    pub upper: Vec<Option<Rational>>,
    pub objective: Vec<Rational>,
    pub sense: Sense,
}

impl LinearProgram {
    /// A program over `objective.len()` variables, all bounded `x >= 0`.
    pub fn new(sense: Sense, objective: Vec<Rational>) -> Self {
        let n = objective.len();
        LinearProgram {
            num_vars: n,
            equalities: Vec::new(),
            lower: vec![Some(Rational::zero()); n],
            upper: vec![None; n],
            objective,
            sense,
        }
    }

    pub fn add_equality(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        self.equalities.push((coeffs, rhs));
    }

    fn validate(&self) -> Result<()> {
        for (i, (row, _)) in self.equalities.iter().enumerate() {
            if row.len() != self.num_vars {
                return Err(Error::MalformedProgram {
                    row: i,
                    got: row.len(),
                    expected: self.num_vars,
                });
            }
        }
        if self.objective.len() != self.num_vars
            || self.lower.len() != self.num_vars
            || self.upper.len() != self.num_vars
        {
            return Err(Error::MalformedProgram {
                row: self.equalities.len(),
                got: self.objective.len(),
                expected: self.num_vars,
            });
        }
        Ok(())
    }

    /// True when the program is already in the shape `Ax = b, x >= 0`,
    /// the one a Farkas witness speaks about.
    fn is_standard_shape(&self) -> bool {
        self.lower
            .iter()
            .all(|l| l.as_ref() == Some(&Rational::zero()))
            && self.upper.iter().all(|u| u.is_none())
    }
}

/// Multipliers `y` with `yᵀA <= 0` componentwise and `yᵀb > 0`, certifying
/// that `Ax = b, x >= 0` has no solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub row_multipliers: Vec<Rational>,
}

impl FarkasCertificate {
    /// Arithmetic check of the witness against the program it refutes.
    pub fn verify(&self, lp: &LinearProgram) -> bool {
        if !lp.is_standard_shape() || self.row_multipliers.len() != lp.equalities.len() {
            return false;
        }
        for j in 0..lp.num_vars {
            let mut dot = Rational::zero();
            for (y, (row, _)) in self.row_multipliers.iter().zip(&lp.equalities) {
                dot += y * &row[j];
            }
            if dot.is_positive() {
                return false;
            }
        }
        let rhs_dot: Rational = self
            .row_multipliers
            .iter()
            .zip(&lp.equalities)
            .map(|(y, (_, b))| y * b)
            .sum();
        rhs_dot.is_positive()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        point: Vec<Rational>,
        value: Rational,
    },
    Infeasible {
        farkas: Option<FarkasCertificate>,
    },
    Unbounded,
}

/// How each original variable maps into the nonnegative transformed space.
enum VarMap {
    /// `x = shift + t[col]`
    Shifted { col: usize, shift: Rational },
    /// `x = shift - t[col]` (only an upper bound present)
    Mirrored { col: usize, shift: Rational },
    /// `x = t[pos] - t[neg]` (free)
    Split { pos: usize, neg: usize },
}

struct Tableau {
    rows: Vec<Vec<Rational>>, // each: coefficients + rhs
    obj: Vec<Rational>,       // reduced costs + negated value
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Rational {
        &self.rows[r][self.ncols]
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let piv = self.rows[r][j].clone();
        debug_assert!(!piv.is_zero());
        for v in self.rows[r].iter_mut() {
            *v /= &piv;
        }
        for i in 0..self.rows.len() {
            if i != r && !self.rows[i][j].is_zero() {
                let factor = self.rows[i][j].clone();
                for k in 0..=self.ncols {
                    let delta = &factor * &self.rows[r][k];
                    self.rows[i][k] -= delta;
                }
            }
        }
        if !self.obj[j].is_zero() {
            let factor = self.obj[j].clone();
            for k in 0..=self.ncols {
                let delta = &factor * &self.rows[r][k];
                self.obj[k] -= delta;
            }
        }
        self.basis[r] = j;
    }

    /// Bland's rule: enter the lowest-index improvable column; leave by the
    /// minimum ratio, ties broken by the lowest basic variable index.
    /// `Ok(false)` means optimal, `Err(())` marks unboundedness.
    fn iterate(&mut self, allowed: &[bool]) -> std::result::Result<bool, ()> {
        let entering = (0..self.ncols).find(|&j| allowed[j] && self.obj[j].is_negative());
        let Some(j) = entering else {
            return Ok(false);
        };
        let mut leave: Option<(usize, Rational)> = None;
        for r in 0..self.rows.len() {
            if self.rows[r][j].is_positive() {
                let ratio = self.rhs(r) / &self.rows[r][j];
                match &leave {
                    None => leave = Some((r, ratio)),
                    Some((lr, lratio)) => {
                        if ratio < *lratio || (ratio == *lratio && self.basis[r] < self.basis[*lr])
                        {
                            leave = Some((r, ratio));
                        }
                    }
                }
            }
        }
        match leave {
            Some((r, _)) => {
                self.pivot(r, j);
                Ok(true)
            }
            None => Err(()),
        }
    }

    fn run(&mut self, allowed: &[bool]) -> std::result::Result<(), ()> {
        loop {
            match self.iterate(allowed) {
                Ok(true) => {}
                Ok(false) => return Ok(()),
                Err(()) => return Err(()),
            }
        }
    }
}

/// Exact simplex solve. Deterministic for a fixed program.
pub fn solve(lp: &LinearProgram) -> Result<LpOutcome> {
    lp.validate()?;

    // Inconsistent bounds never reach the tableau.
    for j in 0..lp.num_vars {
        if let (Some(l), Some(u)) = (&lp.lower[j], &lp.upper[j]) {
            if l > u {
                return Ok(LpOutcome::Infeasible { farkas: None });
            }
        }
    }

    // Map every variable onto nonnegative transformed variables.
    let mut maps = Vec::with_capacity(lp.num_vars);
    let mut ncols = 0usize;
    let mut upper_rows: Vec<(usize, Rational)> = Vec::new(); // t[col] <= bound
    for j in 0..lp.num_vars {
        match (&lp.lower[j], &lp.upper[j]) {
            (Some(l), u) => {
                let col = ncols;
                ncols += 1;
                if let Some(u) = u {
                    upper_rows.push((col, u - l));
                }
                maps.push(VarMap::Shifted {
                    col,
                    shift: l.clone(),
                });
            }
            (None, Some(u)) => {
                let col = ncols;
                ncols += 1;
                maps.push(VarMap::Mirrored {
                    col,
                    shift: u.clone(),
                });
            }
            (None, None) => {
                let (pos, neg) = (ncols, ncols + 1);
                ncols += 2;
                maps.push(VarMap::Split { pos, neg });
            }
        }
    }

    let nrows = lp.equalities.len() + upper_rows.len();
    let n_structural = ncols;
    ncols += upper_rows.len(); // slack columns for upper-bound rows
    let art_base = ncols;
    ncols += nrows; // artificial columns

    // Transformed objective (as minimization) and its constant offset.
    let negate = lp.sense == Sense::Maximize;
    let mut cost = vec![Rational::zero(); ncols];
    let mut constant = Rational::zero();
    for (j, map) in maps.iter().enumerate() {
        let c = if negate {
            -lp.objective[j].clone()
        } else {
            lp.objective[j].clone()
        };
        match map {
            VarMap::Shifted { col, shift } => {
                constant += &c * shift;
                cost[*col] += c;
            }
            VarMap::Mirrored { col, shift } => {
                constant += &c * shift;
                cost[*col] -= c;
            }
            VarMap::Split { pos, neg } => {
                cost[*pos] += &c;
                cost[*neg] -= c;
            }
        }
    }

    // Assemble rows: transformed equalities then upper-bound rows.
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(nrows);
    let mut flips = vec![false; nrows];
    for (row, rhs) in &lp.equalities {
        let mut t = vec![Rational::zero(); ncols + 1];
        let mut b = rhs.clone();
        for (j, map) in maps.iter().enumerate() {
            let a = &row[j];
            if a.is_zero() {
                continue;
            }
            match map {
                VarMap::Shifted { col, shift } => {
                    b -= a * shift;
                    t[*col] += a;
                }
                VarMap::Mirrored { col, shift } => {
                    b -= a * shift;
                    t[*col] -= a;
                }
                VarMap::Split { pos, neg } => {
                    t[*pos] += a;
                    t[*neg] -= a;
                }
            }
        }
        t[ncols] = b;
        rows.push(t);
    }
    for (k, (col, bound)) in upper_rows.iter().enumerate() {
        let mut t = vec![Rational::zero(); ncols + 1];
        t[*col] = one();
        t[n_structural + k] = one();
        t[ncols] = bound.clone();
        rows.push(t);
    }

    // Normalize signs and install artificial columns.
    for (i, row) in rows.iter_mut().enumerate() {
        if row[ncols].is_negative() {
            flips[i] = true;
            for v in row.iter_mut() {
                *v = -v.clone();
            }
        }
        row[art_base + i] = one();
    }

    // Phase 1: minimize the artificial sum.
    let mut obj = vec![Rational::zero(); ncols + 1];
    for row in &rows {
        for (j, cell) in obj.iter_mut().enumerate() {
            if j < art_base || j >= art_base + nrows {
                *cell -= &row[j];
            }
        }
    }
    // artificial columns start with reduced cost 0
    for j in art_base..art_base + nrows {
        obj[j] = Rational::zero();
    }

    let mut tableau = Tableau {
        rows,
        obj,
        basis: (art_base..art_base + nrows).collect(),
        ncols,
    };
    let allowed_all = vec![true; ncols];
    tableau
        .run(&allowed_all)
        .expect("phase 1 objective is bounded below by zero");

    let phase1_value = -tableau.obj[ncols].clone();
    if phase1_value.is_positive() {
        // y_i = 1 - reduced cost of artificial i, unflipped back to the
        // original row orientation.
        let farkas = if lp.is_standard_shape() {
            let y: Vec<Rational> = (0..nrows)
                .map(|i| {
                    let yi = one() - &tableau.obj[art_base + i];
                    if flips[i] {
                        -yi
                    } else {
                        yi
                    }
                })
                .collect();
            let cert = FarkasCertificate {
                row_multipliers: y,
            };
            debug_assert!(cert.verify(lp));
            Some(cert)
        } else {
            None
        };
        return Ok(LpOutcome::Infeasible { farkas });
    }

    // Drive leftover artificials out of the basis; drop redundant rows.
    let mut allowed = vec![true; ncols];
    for j in art_base..art_base + nrows {
        allowed[j] = false;
    }
    let mut r = 0;
    while r < tableau.rows.len() {
        if tableau.basis[r] >= art_base {
            let pivot_col = (0..art_base).find(|&j| !tableau.rows[r][j].is_zero());
            match pivot_col {
                Some(j) => tableau.pivot(r, j),
                None => {
                    tableau.rows.remove(r);
                    tableau.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }

    // Phase 2: rebuild reduced costs for the real objective.
    let mut obj = vec![Rational::zero(); ncols + 1];
    obj[..n_structural].clone_from_slice(&cost[..n_structural]);
    for (r, &b) in tableau.basis.iter().enumerate() {
        let cb = cost[b].clone();
        if !cb.is_zero() {
            for k in 0..=ncols {
                let delta = &cb * &tableau.rows[r][k];
                obj[k] -= delta;
            }
        }
    }
    tableau.obj = obj;

    if tableau.run(&allowed).is_err() {
        return Ok(LpOutcome::Unbounded);
    }

    // Read the transformed point, then map back.
    let mut t_point = vec![Rational::zero(); ncols];
    for (r, &b) in tableau.basis.iter().enumerate() {
        t_point[b] = tableau.rhs(r).clone();
    }
    let point: Vec<Rational> = maps
        .iter()
        .map(|map| match map {
            VarMap::Shifted { col, shift } => shift + &t_point[*col],
            VarMap::Mirrored { col, shift } => shift - &t_point[*col],
            VarMap::Split { pos, neg } => &t_point[*pos] - &t_point[*neg],
        })
        .collect();

    let mut value = -tableau.obj[ncols].clone() + constant;
    if negate {
        value = -value;
    }
    debug_assert_eq!(
        value,
        point
            .iter()
            .zip(&lp.objective)
            .map(|(x, c)| x * c)
            .sum::<Rational>()
    );
    Ok(LpOutcome::Optimal { point, value })
}

/// Strict feasibility through a margin variable.
///
/// The program must maximize a designated margin variable (by convention the
/// last one, carried with coefficient -1 in each strictness row). The answer
/// is positive exactly when the optimal margin is strictly positive; the
/// witness is the optimal point, margin included.
pub fn max_margin_feasible(lp: &LinearProgram) -> Result<(bool, Option<Vec<Rational>>)> {
    match solve(lp)? {
        LpOutcome::Optimal { point, value } => {
            if value.is_positive() {
                Ok((true, Some(point)))
            } else {
                Ok((false, None))
            }
        }
        LpOutcome::Unbounded => Ok((true, None)),
        LpOutcome::Infeasible { .. } => Ok((false, None)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, half, rat};
    use proptest::prelude::*;

    fn solve_must(lp: &LinearProgram) -> LpOutcome {
        solve(lp).unwrap()
    }

    #[test]
    fn bounded_single_variable() {
        let mut lp = LinearProgram::new(Sense::Maximize, vec![one()]);
        lp.upper[0] = Some(frac(1, 3));
        match solve_must(&lp) {
            LpOutcome::Optimal { point, value } => {
                assert_eq!(value, frac(1, 3));
                assert_eq!(point, vec![frac(1, 3)]);
            }
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn contradictory_bounds_infeasible() {
        let mut lp = LinearProgram::new(Sense::Maximize, vec![one()]);
        lp.lower[0] = Some(one());
        lp.upper[0] = Some(Rational::zero());
        assert!(matches!(
            solve_must(&lp),
            LpOutcome::Infeasible { farkas: None }
        ));
    }

    #[test]
    fn unbounded_detected() {
        let lp = LinearProgram::new(Sense::Maximize, vec![one()]);
        assert_eq!(solve_must(&lp), LpOutcome::Unbounded);
    }

    #[test]
    fn malformed_row_rejected() {
        let mut lp = LinearProgram::new(Sense::Maximize, vec![one(), one()]);
        lp.add_equality(vec![one()], one());
        assert!(matches!(
            solve(&lp),
            Err(Error::MalformedProgram {
                row: 0,
                got: 1,
                expected: 2
            })
        ));
    }

    /// Representation system for the shifted valency points of the linear
    /// order on three candidates: six point masses, total mass 1, hitting
    /// (1/2, 1/2); the side-1 share maximizes to 1.
    #[test]
    fn certificate_style_system() {
        // group 0 points: (0,0), (0,1), (1,1); group 1 points: (0,0), (1,0), (1,1)
        let points = [
            (rat(0), rat(0)),
            (rat(0), rat(1)),
            (rat(1), rat(1)),
            (rat(0), rat(0)),
            (rat(1), rat(0)),
            (rat(1), rat(1)),
        ];
        let objective: Vec<Rational> = (0..6)
            .map(|i| if i >= 3 { one() } else { Rational::zero() })
            .collect();
        let mut lp = LinearProgram::new(Sense::Maximize, objective);
        lp.add_equality(vec![one(); 6], one());
        lp.add_equality(points.iter().map(|p| p.0.clone()).collect(), half());
        lp.add_equality(points.iter().map(|p| p.1.clone()).collect(), half());
        match solve_must(&lp) {
            LpOutcome::Optimal { point, value } => {
                assert_eq!(value, one());
                // exact residuals
                let total: Rational = point.iter().sum();
                assert_eq!(total, one());
                let sx: Rational = point.iter().zip(&points).map(|(w, p)| w * &p.0).sum();
                let sy: Rational = point.iter().zip(&points).map(|(w, p)| w * &p.1).sum();
                assert_eq!(sx, half());
                assert_eq!(sy, half());
            }
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn infeasible_equalities_carry_verified_farkas() {
        // w1 + w2 = 1 and w1 + w2 = 2 cannot both hold
        let mut lp = LinearProgram::new(Sense::Maximize, vec![Rational::zero(); 2]);
        lp.add_equality(vec![one(), one()], one());
        lp.add_equality(vec![one(), one()], rat(2));
        match solve_must(&lp) {
            LpOutcome::Infeasible { farkas: Some(f) } => assert!(f.verify(&lp)),
            other => panic!("unexpected outcome {other:?}"),
        }

        // mass 1 on points (1,0) and (0,1) cannot average to (5,5)
        let mut lp = LinearProgram::new(Sense::Maximize, vec![Rational::zero(); 2]);
        lp.add_equality(vec![one(), one()], one());
        lp.add_equality(vec![one(), Rational::zero()], rat(5));
        lp.add_equality(vec![Rational::zero(), one()], rat(5));
        match solve_must(&lp) {
            LpOutcome::Infeasible { farkas: Some(f) } => assert!(f.verify(&lp)),
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn margin_system_examples() {
        // t in [0,1], margin e, slack s >= 0: t - e - s = 1/2, maximize e
        let mut lp = LinearProgram::new(
            Sense::Maximize,
            vec![Rational::zero(), Rational::zero(), one()],
        );
        lp.upper[0] = Some(one());
        lp.add_equality(vec![one(), -one(), -one()], half());
        let (feasible, witness) = max_margin_feasible(&lp).unwrap();
        assert!(feasible);
        let w = witness.unwrap();
        assert_eq!(w[2], half());

        // forcing t = 1/2 kills the margin
        let mut lp = LinearProgram::new(
            Sense::Maximize,
            vec![Rational::zero(), Rational::zero(), one()],
        );
        lp.lower[0] = Some(half());
        lp.upper[0] = Some(half());
        lp.add_equality(vec![one(), -one(), -one()], half());
        let (feasible, witness) = max_margin_feasible(&lp).unwrap();
        assert!(!feasible);
        assert!(witness.is_none());
    }

    #[test]
    fn solves_are_deterministic() {
        let mut lp = LinearProgram::new(Sense::Maximize, vec![one(), one(), one()]);
        lp.add_equality(vec![one(), one(), rat(2)], rat(4));
        lp.add_equality(vec![one(), -one(), Rational::zero()], Rational::zero());
        let a = solve_must(&lp);
        let b = solve_must(&lp);
        assert_eq!(a, b);
    }

    #[test]
    fn degenerate_pivots_terminate() {
        // redundant rows stack a degenerate vertex
        let mut lp = LinearProgram::new(Sense::Maximize, vec![one(), one()]);
        lp.add_equality(vec![one(), one()], one());
        lp.add_equality(vec![rat(2), rat(2)], rat(2));
        lp.add_equality(vec![rat(3), rat(3)], rat(3));
        match solve_must(&lp) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, one()),
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn free_variables_split() {
        // minimize x with x free, x + y = 3, y in [0, 1]
        let mut lp = LinearProgram::new(Sense::Minimize, vec![one(), Rational::zero()]);
        lp.lower[0] = None;
        lp.upper[1] = Some(one());
        lp.add_equality(vec![one(), one()], rat(3));
        match solve_must(&lp) {
            LpOutcome::Optimal { point, value } => {
                assert_eq!(value, rat(2));
                assert_eq!(point, vec![rat(2), one()]);
            }
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    /// Independent oracle: enumerate every basic feasible solution of
    /// `Ax = b, x >= 0` — unique solutions over linearly independent column
    /// subsets of any size up to the row count, consistency required on the
    /// remaining rows. Handles rank-deficient systems.
    fn brute_force_max(
        rows: &[(Vec<Rational>, Rational)],
        objective: &[Rational],
        nvars: usize,
    ) -> Option<Rational> {
        let m = rows.len();
        let mut best: Option<Rational> = None;
        for size in 0..=m.min(nvars) {
            for cols in subsets(nvars, size) {
                if let Some(sol) = unique_consistent_solution(rows, &cols) {
                    if sol.iter().all(|v| !v.is_negative()) {
                        let mut full = vec![Rational::zero(); nvars];
                        for (k, &j) in cols.iter().enumerate() {
                            full[j] = sol[k].clone();
                        }
                        let val: Rational =
                            full.iter().zip(objective).map(|(x, c)| x * c).sum();
                        best = Some(match best {
                            None => val,
                            Some(b) if val > b => val,
                            Some(b) => b,
                        });
                    }
                }
            }
        }
        best
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for j in start..n {
                cur.push(j);
                rec(j + 1, n, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(0, n, k, &mut Vec::new(), &mut out);
        out
    }

    /// Solve `A[:, cols] x = b` exactly: `Some` iff the chosen columns are
    /// linearly independent and the full system is consistent.
    fn unique_consistent_solution(
        rows: &[(Vec<Rational>, Rational)],
        cols: &[usize],
    ) -> Option<Vec<Rational>> {
        let m = rows.len();
        let k = cols.len();
        let mut a: Vec<Vec<Rational>> = rows
            .iter()
            .map(|(r, b)| {
                let mut row: Vec<Rational> = cols.iter().map(|&j| r[j].clone()).collect();
                row.push(b.clone());
                row
            })
            .collect();
        let mut pivot_row = 0;
        for col in 0..k {
            let pr = (pivot_row..m).find(|&r| !a[r][col].is_zero())?;
            a.swap(pivot_row, pr);
            let p = a[pivot_row][col].clone();
            for v in a[pivot_row].iter_mut() {
                *v /= &p;
            }
            for r in 0..m {
                if r != pivot_row && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in 0..=k {
                        let delta = &f * &a[pivot_row][c];
                        a[r][c] -= delta;
                    }
                }
            }
            pivot_row += 1;
        }
        for r in pivot_row..m {
            if !a[r][k].is_zero() {
                return None;
            }
        }
        Some((0..k).map(|c| a[c][k].clone()).collect())
    }

    proptest! {
        // default case count, overridable through PROPTEST_CASES
        #[test]
        fn simplex_matches_basic_solution_enumeration(
            entries in proptest::collection::vec(-3i64..=3, 8),
            feas in proptest::collection::vec(0i64..=2, 4),
            obj in proptest::collection::vec(-2i64..=2, 4),
        ) {
            // A is 2 x 4 with b = A * feas, so the program is feasible.
            let nvars = 4;
            let rows: Vec<(Vec<Rational>, Rational)> = (0..2)
                .map(|i| {
                    let coeffs: Vec<Rational> =
                        (0..nvars).map(|j| rat(entries[i * nvars + j])).collect();
                    let b: Rational = coeffs
                        .iter()
                        .zip(&feas)
                        .map(|(c, f)| c * rat(*f))
                        .sum();
                    (coeffs, b)
                })
                .collect();
            let objective: Vec<Rational> = obj.iter().map(|&c| rat(c)).collect();
            let mut lp = LinearProgram::new(Sense::Maximize, objective.clone());
            for (c, b) in &rows {
                lp.add_equality(c.clone(), b.clone());
            }
            match solve(&lp).unwrap() {
                LpOutcome::Optimal { point, value } => {
                    for (c, b) in &rows {
                        let dot: Rational = c.iter().zip(&point).map(|(a, x)| a * x).sum();
                        prop_assert_eq!(&dot, b);
                    }
                    prop_assert!(point.iter().all(|v| !v.is_negative()));
                    let oracle = brute_force_max(&rows, &objective, nvars)
                        .expect("feasible by construction");
                    prop_assert_eq!(value, oracle);
                }
                LpOutcome::Unbounded => {
                    // vertex enumeration cannot refute an improving ray; accept
                }
                LpOutcome::Infeasible { .. } => {
                    prop_assert!(false, "constructed-feasible program");
                }
            }
        }
    }
}
