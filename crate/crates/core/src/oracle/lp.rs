//! Exact linear programming over the rationals.
//!
//! Problems are `maximize c.x` subject to `<=`, `>=`, `=` rows and `x >= 0`.
//! The solver is a dense dictionary simplex with fraction-free integer
//! pivoting: every row is scaled to integers once, and all later entries are
//! integers sharing one denominator (the previous pivot), so no gcd is ever
//! taken. Entries live in `i128` while they fit; any overflow restarts the
//! solve on `BigInt`. Pricing is Dantzig's largest coefficient, switching to
//! Bland's smallest-index rule for as long as pivots stay degenerate, which
//! rules out cycling.
//!
//! Every outcome carries a certificate (dual multipliers, an improving ray,
//! or a Farkas combination) that [`audit`] checks against the original
//! problem in exact arithmetic.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

/// Where a constraint came from, for reporting which families bind.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize,
)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Consistency,
    Triangle,
    Optimality,
    Normalization,
    Target,
    Other,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<(usize, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
    pub family: Family,
}

/// `maximize objective.x` over `x >= 0` subject to `constraints`.
#[derive(Clone, Debug, Default)]
pub struct LpProblem {
    pub num_vars: usize,
    pub objective: Vec<(usize, Rational)>,
    pub constraints: Vec<Constraint>,
}

impl LpProblem {
    pub fn new(num_vars: usize) -> Self {
        LpProblem {
            num_vars,
            ..Default::default()
        }
    }

    pub fn maximize(&mut self, objective: Vec<(usize, Rational)>) {
        self.objective = objective;
    }

    pub fn add(
        &mut self,
        coeffs: Vec<(usize, Rational)>,
        relation: Relation,
        rhs: Rational,
        family: Family,
    ) {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
            family,
        });
    }
}

/// Optimal vertex with its dual. Duals follow the sign convention
/// `y >= 0` for `<=` rows, `y <= 0` for `>=` rows, free for `=` rows.
#[derive(Clone, Debug, PartialEq)]
pub struct Optimum {
    pub value: Rational,
    pub primal: Vec<Rational>,
    pub dual: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal(Optimum),
    /// `point + t * direction` is feasible for all `t >= 0` and the
    /// objective grows along `direction`.
    Unbounded {
        point: Vec<Rational>,
        direction: Vec<Rational>,
    },
    /// Multipliers `y` (same sign convention as duals) with `A^T y >= 0` and
    /// `b.y < 0`.
    Infeasible {
        farkas: Vec<Rational>,
    },
}

impl LpOutcome {
    pub fn optimum(&self) -> Option<&Optimum> {
        match self {
            LpOutcome::Optimal(opt) => Some(opt),
            _ => None,
        }
    }
}

pub fn lp_solve(problem: &LpProblem) -> LpOutcome {
    let standard = Standard::from_problem(problem);
    let raw = match simplex::<i128>(&standard) {
        Ok(raw) => raw,
        Err(Overflow) => simplex::<BigInt>(&standard)
            .unwrap_or_else(|_| unreachable!("BigInt pivoting cannot overflow")),
    };
    standard.recover(problem, raw)
}

/// Re-checks an outcome's certificate against the original problem.
pub fn audit(problem: &LpProblem, outcome: &LpOutcome) -> Result<(), String> {
    let row_value = |c: &Constraint, x: &[Rational]| -> Rational {
        c.coeffs.iter().map(|(v, a)| a * &x[*v]).sum()
    };
    let objective =
        |x: &[Rational]| -> Rational { problem.objective.iter().map(|(v, c)| c * &x[*v]).sum() };
    let check_primal = |x: &[Rational]| -> Result<(), String> {
        if x.len() != problem.num_vars {
            return Err("primal has the wrong length".into());
        }
        if let Some(v) = x.iter().position(|v| v.is_negative()) {
            return Err(format!("x[{v}] is negative"));
        }
        for (r, c) in problem.constraints.iter().enumerate() {
            let lhs = row_value(c, x);
            let ok = match c.relation {
                Relation::Le => lhs <= c.rhs,
                Relation::Ge => lhs >= c.rhs,
                Relation::Eq => lhs == c.rhs,
            };
            if !ok {
                return Err(format!("row {r} violated"));
            }
        }
        Ok(())
    };
    let check_signs = |y: &[Rational]| -> Result<(), String> {
        if y.len() != problem.constraints.len() {
            return Err("multiplier vector has the wrong length".into());
        }
        for (r, c) in problem.constraints.iter().enumerate() {
            let ok = match c.relation {
                Relation::Le => !y[r].is_negative(),
                Relation::Ge => !y[r].is_positive(),
                Relation::Eq => true,
            };
            if !ok {
                return Err(format!("multiplier {r} has the wrong sign"));
            }
        }
        Ok(())
    };
    // A^T y as a dense column vector.
    let transpose_times = |y: &[Rational]| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); problem.num_vars];
        for (c, yr) in problem.constraints.iter().zip(y) {
            if yr.is_zero() {
                continue;
            }
            for (v, a) in &c.coeffs {
                out[*v] += a * yr;
            }
        }
        out
    };
    match outcome {
        LpOutcome::Optimal(opt) => {
            check_primal(&opt.primal)?;
            check_signs(&opt.dual)?;
            let aty = transpose_times(&opt.dual);
            let mut cost = vec![Rational::zero(); problem.num_vars];
            for (v, c) in &problem.objective {
                cost[*v] += c;
            }
            if let Some(j) = (0..problem.num_vars).find(|&j| cost[j] > aty[j]) {
                return Err(format!("dual infeasible in column {j}"));
            }
            let primal_value = objective(&opt.primal);
            let dual_value: Rational = problem
                .constraints
                .iter()
                .zip(&opt.dual)
                .map(|(c, y)| &c.rhs * y)
                .sum();
            if primal_value != opt.value || dual_value != opt.value {
                return Err(format!(
                    "value mismatch: reported {}, primal {}, dual {}",
                    opt.value, primal_value, dual_value
                ));
            }
            Ok(())
        }
        LpOutcome::Unbounded { point, direction } => {
            check_primal(point)?;
            if direction.iter().any(|v| v.is_negative()) {
                return Err("ray leaves the nonnegative orthant".into());
            }
            for (r, c) in problem.constraints.iter().enumerate() {
                let lhs = row_value(c, direction);
                let ok = match c.relation {
                    Relation::Le => !lhs.is_positive(),
                    Relation::Ge => !lhs.is_negative(),
                    Relation::Eq => lhs.is_zero(),
                };
                if !ok {
                    return Err(format!("ray violates row {r}"));
                }
            }
            if !objective(direction).is_positive() {
                return Err("ray does not improve the objective".into());
            }
            Ok(())
        }
        LpOutcome::Infeasible { farkas } => {
            check_signs(farkas)?;
            if transpose_times(farkas).iter().any(|v| v.is_negative()) {
                return Err("Farkas combination has a negative column".into());
            }
            let rhs: Rational = problem
                .constraints
                .iter()
                .zip(farkas)
                .map(|(c, y)| &c.rhs * y)
                .sum();
            if !rhs.is_negative() {
                return Err("Farkas combination does not certify infeasibility".into());
            }
            Ok(())
        }
    }
}

/// All-`<=` integer form. Each original row becomes one or two standard rows
/// scaled by a positive integer.
struct Standard {
    num_vars: usize,
    rows: Vec<Vec<BigInt>>,
    rhs: Vec<BigInt>,
    /// (original row, sign, scale) for each standard row.
    origin: Vec<(usize, i8, BigInt)>,
    cost: Vec<BigInt>,
    cost_scale: BigInt,
}

fn denominators_lcm<'a>(values: impl Iterator<Item = &'a Rational>) -> BigInt {
    values.fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

fn scaled(value: &Rational, scale: &BigInt) -> BigInt {
    (value.numer() * scale) / value.denom()
}

impl Standard {
    fn from_problem(problem: &LpProblem) -> Self {
        let nv = problem.num_vars;
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        let mut origin = Vec::new();
        for (r, c) in problem.constraints.iter().enumerate() {
            let scale = denominators_lcm(
                c.coeffs
                    .iter()
                    .map(|(_, a)| a)
                    .chain(std::iter::once(&c.rhs)),
            );
            let mut dense = vec![BigInt::zero(); nv];
            for (v, a) in &c.coeffs {
                dense[*v] += scaled(a, &scale);
            }
            let b = scaled(&c.rhs, &scale);
            let signs: &[i8] = match c.relation {
                Relation::Le => &[1],
                Relation::Ge => &[-1],
                Relation::Eq => &[1, -1],
            };
            for &sign in signs {
                if sign > 0 {
                    rows.push(dense.clone());
                    rhs.push(b.clone());
                } else {
                    rows.push(dense.iter().map(|v| -v).collect());
                    rhs.push(-&b);
                }
                origin.push((r, sign, scale.clone()));
            }
        }
        let cost_scale = denominators_lcm(problem.objective.iter().map(|(_, c)| c));
        let mut cost = vec![BigInt::zero(); nv];
        for (v, c) in &problem.objective {
            cost[*v] += scaled(c, &cost_scale);
        }
        Standard {
            num_vars: nv,
            rows,
            rhs,
            origin,
            cost,
            cost_scale,
        }
    }

    /// Maps standard-row multipliers back to original rows.
    fn original_multipliers(
        &self,
        problem: &LpProblem,
        y: &[Rational],
        divisor: &BigInt,
    ) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); problem.constraints.len()];
        for (s, (r, sign, scale)) in self.origin.iter().enumerate() {
            if y[s].is_zero() {
                continue;
            }
            let factor = Rational::new(scale * BigInt::from(*sign), divisor.clone());
            out[*r] += &y[s] * factor;
        }
        out
    }

    fn recover(&self, problem: &LpProblem, raw: Raw) -> LpOutcome {
        match raw {
            Raw::Optimal {
                primal,
                slack_duals,
            } => {
                let value: Rational = problem.objective.iter().map(|(v, c)| c * &primal[*v]).sum();
                let dual = self.original_multipliers(problem, &slack_duals, &self.cost_scale);
                LpOutcome::Optimal(Optimum {
                    value,
                    primal,
                    dual,
                })
            }
            Raw::Unbounded { point, direction } => LpOutcome::Unbounded { point, direction },
            Raw::Infeasible { slack_multipliers } => LpOutcome::Infeasible {
                farkas: self.original_multipliers(problem, &slack_multipliers, &BigInt::one()),
            },
        }
    }
}

enum Raw {
    Optimal {
        primal: Vec<Rational>,
        slack_duals: Vec<Rational>,
    },
    Unbounded {
        point: Vec<Rational>,
        direction: Vec<Rational>,
    },
    Infeasible {
        slack_multipliers: Vec<Rational>,
    },
}

#[derive(Debug)]
struct Overflow;

/// Integer arithmetic the pivoting kernel needs; `None` signals overflow.
trait PivotInt: Clone + Ord + std::fmt::Debug {
    fn from_big(value: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn nil() -> Self;
    fn sign(&self) -> Ordering;
    fn neg(&self) -> Option<Self>;
    /// `(a*b - c*d) / den`, where the division is exact.
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, den: &Self) -> Option<Self>;
    /// `a*b / den`, exact.
    fn scale_div(a: &Self, b: &Self, den: &Self) -> Option<Self>;
    /// Compares `a/b` with `c/d` for positive `b`, `d`.
    fn cmp_ratio(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Ordering>;
}

impl PivotInt for i128 {
    fn from_big(value: &BigInt) -> Option<Self> {
        value.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn nil() -> Self {
        0
    }
    fn sign(&self) -> Ordering {
        self.cmp(&0)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, den: &Self) -> Option<Self> {
        let left = a.checked_mul(*b)?;
        let right = c.checked_mul(*d)?;
        Some(left.checked_sub(right)? / den)
    }
    fn scale_div(a: &Self, b: &Self, den: &Self) -> Option<Self> {
        Some(a.checked_mul(*b)? / den)
    }
    fn cmp_ratio(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Ordering> {
        Some(a.checked_mul(*d)?.cmp(&c.checked_mul(*b)?))
    }
}

impl PivotInt for BigInt {
    fn from_big(value: &BigInt) -> Option<Self> {
        Some(value.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn nil() -> Self {
        <BigInt as Zero>::zero()
    }
    fn sign(&self) -> Ordering {
        Signed::signum(self).cmp(&BigInt::from(0))
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, den: &Self) -> Option<Self> {
        Some((a * b - c * d) / den)
    }
    fn scale_div(a: &Self, b: &Self, den: &Self) -> Option<Self> {
        Some(a * b / den)
    }
    fn cmp_ratio(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Ordering> {
        Some((a * d).cmp(&(c * b)))
    }
}

/// Dictionary `x_B = b - A_N x_N`, `z = z0 + c_N x_N`, all entries stored as
/// integers over the common denominator `den`. Row `r < rows` holds
/// `[A_N | b]`; the objective rows hold `[c_N | -z0]`.
struct Dictionary<I> {
    width: usize,
    cells: Vec<I>,
    rows: usize,
    objectives: usize,
    den: I,
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
    /// Columns that may not re-enter (the auxiliary variable after phase 1).
    frozen: Vec<bool>,
}

impl<I: PivotInt> Dictionary<I> {
    fn at(&self, row: usize, col: usize) -> &I {
        &self.cells[row * self.width + col]
    }

    fn rhs(&self, row: usize) -> &I {
        self.at(row, self.width - 1)
    }

    fn pivot(&mut self, row: usize, col: usize) -> Option<()> {
        let w = self.width;
        let p = self.at(row, col).clone();
        let pivot_row: Vec<I> = self.cells[row * w..(row + 1) * w].to_vec();
        let same_den = p == self.den;
        for r in 0..self.rows + self.objectives {
            if r == row {
                continue;
            }
            let base = r * w;
            let factor = self.cells[base + col].clone();
            if factor.sign() == Ordering::Equal {
                if !same_den {
                    for k in 0..w {
                        let v = &self.cells[base + k];
                        if v.sign() != Ordering::Equal {
                            self.cells[base + k] = I::scale_div(v, &p, &self.den)?;
                        }
                    }
                }
                continue;
            }
            for k in 0..w {
                if k == col {
                    continue;
                }
                let v = &self.cells[base + k];
                self.cells[base + k] = I::cross_div(v, &p, &factor, &pivot_row[k], &self.den)?;
            }
            self.cells[base + col] = factor.neg()?;
        }
        self.cells[row * w + col] = self.den.clone();
        self.den = p;
        if self.den.sign() == Ordering::Less {
            for v in self.cells.iter_mut() {
                *v = v.neg()?;
            }
            self.den = self.den.neg()?;
        }
        std::mem::swap(&mut self.basic[row], &mut self.nonbasic[col]);
        Some(())
    }

    /// Runs primal simplex on objective row `obj`. Returns `Ok(None)` at an
    /// optimum or `Ok(Some(col))` for a column along which the objective is
    /// unbounded.
    fn optimize(&mut self, obj: usize) -> Option<Option<usize>> {
        let rhs_col = self.width - 1;
        let mut bland = false;
        loop {
            let mut entering: Option<usize> = None;
            for col in 0..rhs_col {
                if self.frozen[col] || self.at(obj, col).sign() != Ordering::Greater {
                    continue;
                }
                entering = match entering {
                    None => Some(col),
                    Some(best) => {
                        let better = if bland {
                            self.nonbasic[col] < self.nonbasic[best]
                        } else {
                            match self.at(obj, col).cmp(self.at(obj, best)) {
                                Ordering::Greater => true,
                                Ordering::Equal => self.nonbasic[col] < self.nonbasic[best],
                                Ordering::Less => false,
                            }
                        };
                        Some(if better { col } else { best })
                    }
                };
            }
            let Some(col) = entering else {
                return Some(None);
            };
            let mut leaving: Option<usize> = None;
            for r in 0..self.rows {
                if self.at(r, col).sign() != Ordering::Greater {
                    continue;
                }
                leaving = match leaving {
                    None => Some(r),
                    Some(best) => {
                        let ord = I::cmp_ratio(
                            self.rhs(r),
                            self.at(r, col),
                            self.rhs(best),
                            self.at(best, col),
                        )?;
                        let better = ord == Ordering::Less
                            || (ord == Ordering::Equal && self.basic[r] < self.basic[best]);
                        Some(if better { r } else { best })
                    }
                };
            }
            let Some(row) = leaving else {
                return Some(Some(col));
            };
            bland = self.rhs(row).sign() == Ordering::Equal;
            self.pivot(row, col)?;
        }
    }

    fn value(&self, row: usize, col: usize) -> Rational {
        Rational::new(self.at(row, col).to_big(), self.den.to_big())
    }
}

fn simplex<I: PivotInt>(standard: &Standard) -> Result<Raw, Overflow> {
    let nv = standard.num_vars;
    let nr = standard.rows.len();
    let needs_phase_one = standard.rhs.iter().any(|b| b.is_negative());
    let aux = nv + nr;
    let ncols = nv + usize::from(needs_phase_one);
    let width = ncols + 1;
    // Objective rows: phase 2 first, phase 1 (if any) second.
    let objectives = 1 + usize::from(needs_phase_one);
    let conv = |v: &BigInt| I::from_big(v).ok_or(Overflow);
    let mut cells = Vec::with_capacity((nr + objectives) * width);
    for (row, b) in standard.rows.iter().zip(&standard.rhs) {
        for v in row {
            cells.push(conv(v)?);
        }
        if needs_phase_one {
            cells.push(conv(&BigInt::from(-1))?);
        }
        cells.push(conv(b)?);
    }
    for c in &standard.cost {
        cells.push(conv(c)?);
    }
    if needs_phase_one {
        cells.push(I::nil());
    }
    cells.push(I::nil());
    if needs_phase_one {
        cells.extend((0..nv).map(|_| I::nil()));
        cells.push(conv(&BigInt::from(-1))?);
        cells.push(I::nil());
    }
    let mut nonbasic: Vec<usize> = (0..nv).collect();
    if needs_phase_one {
        nonbasic.push(aux);
    }
    let mut dict = Dictionary {
        width,
        cells,
        rows: nr,
        objectives,
        den: conv(&BigInt::one())?,
        basic: (nv..nv + nr).collect(),
        nonbasic,
        frozen: vec![false; ncols],
    };
    let phase_two_row = nr;

    if needs_phase_one {
        let phase_one_row = nr + 1;
        let aux_col = nv;
        let start = (0..nr)
            .min_by(|&a, &b| dict.rhs(a).cmp(dict.rhs(b)).then(a.cmp(&b)))
            .expect("a negative right-hand side implies at least one row");
        dict.pivot(start, aux_col).ok_or(Overflow)?;
        let unbounded = dict.optimize(phase_one_row).ok_or(Overflow)?;
        debug_assert!(unbounded.is_none(), "phase one is bounded by zero");
        if dict.rhs(phase_one_row).sign() == Ordering::Greater {
            // Stored as -z0 with z0 = -aux < 0: infeasible.
            let mut multipliers = vec![Rational::zero(); nr];
            for (col, &label) in dict.nonbasic.iter().enumerate() {
                if label >= nv && label < nv + nr {
                    multipliers[label - nv] = -dict.value(phase_one_row, col);
                }
            }
            return Ok(Raw::Infeasible {
                slack_multipliers: multipliers,
            });
        }
        if let Some(row) = dict.basic.iter().position(|&label| label == aux) {
            let replacement = (0..ncols)
                .filter(|&col| dict.at(row, col).sign() != Ordering::Equal)
                .min_by_key(|&col| dict.nonbasic[col]);
            // With no replacement the auxiliary variable is identically zero
            // in this row; it stays basic at zero and can never leave again.
            if let Some(col) = replacement {
                dict.pivot(row, col).ok_or(Overflow)?;
            }
        }
        if let Some(col) = dict.nonbasic.iter().position(|&label| label == aux) {
            dict.frozen[col] = true;
        }
    }

    match dict.optimize(phase_two_row).ok_or(Overflow)? {
        None => {
            let mut primal = vec![Rational::zero(); nv];
            for (row, &label) in dict.basic.iter().enumerate() {
                if label < nv {
                    primal[label] = dict.value(row, width - 1);
                }
            }
            let mut slack_duals = vec![Rational::zero(); nr];
            for (col, &label) in dict.nonbasic.iter().enumerate() {
                if label >= nv && label < nv + nr {
                    slack_duals[label - nv] = -dict.value(phase_two_row, col);
                }
            }
            Ok(Raw::Optimal {
                primal,
                slack_duals,
            })
        }
        Some(col) => {
            let mut point = vec![Rational::zero(); nv];
            let mut direction = vec![Rational::zero(); nv];
            for (row, &label) in dict.basic.iter().enumerate() {
                if label < nv {
                    point[label] = dict.value(row, width - 1);
                    direction[label] = -dict.value(row, col);
                }
            }
            let entering = dict.nonbasic[col];
            if entering < nv {
                direction[entering] = Rational::one();
            }
            Ok(Raw::Unbounded { point, direction })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn solve_checked(problem: &LpProblem) -> LpOutcome {
        let outcome = lp_solve(problem);
        audit(problem, &outcome).unwrap_or_else(|e| panic!("audit failed: {e}\n{outcome:?}"));
        outcome
    }

    #[test]
    fn single_upper_bound() {
        let mut lp = LpProblem::new(1);
        lp.maximize(vec![(0, int(1))]);
        lp.add(vec![(0, int(1))], Relation::Le, int(2), Family::Other);
        let opt = solve_checked(&lp).optimum().cloned().unwrap();
        assert_eq!(opt.value, int(2));
        assert_eq!(opt.primal, vec![int(2)]);
        assert_eq!(opt.dual, vec![int(1)]);
    }

    #[test]
    fn nonnegativity_alone_is_unbounded() {
        let mut lp = LpProblem::new(1);
        lp.maximize(vec![(0, int(1))]);
        let outcome = solve_checked(&lp);
        assert!(matches!(outcome, LpOutcome::Unbounded { .. }));
    }

    #[test]
    fn infeasible_with_farkas() {
        let mut lp = LpProblem::new(2);
        lp.maximize(vec![(0, int(1))]);
        lp.add(
            vec![(0, int(1)), (1, int(1))],
            Relation::Le,
            int(1),
            Family::Other,
        );
        lp.add(
            vec![(0, int(1)), (1, int(1))],
            Relation::Ge,
            int(3),
            Family::Other,
        );
        assert!(matches!(solve_checked(&lp), LpOutcome::Infeasible { .. }));
    }

    #[test]
    fn textbook_two_phase() {
        // max 3x + 2y  s.t. x + y = 4, x - y >= 1, x <= 3.5 (fractional data)
        let mut lp = LpProblem::new(2);
        lp.maximize(vec![(0, int(3)), (1, int(2))]);
        lp.add(
            vec![(0, int(1)), (1, int(1))],
            Relation::Eq,
            int(4),
            Family::Other,
        );
        lp.add(
            vec![(0, int(1)), (1, int(-1))],
            Relation::Ge,
            int(1),
            Family::Other,
        );
        lp.add(vec![(0, int(1))], Relation::Le, ratio(7, 2), Family::Other);
        let opt = solve_checked(&lp).optimum().cloned().unwrap();
        assert_eq!(opt.primal, vec![ratio(7, 2), ratio(1, 2)]);
        assert_eq!(opt.value, ratio(23, 2));
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example, which cycles under naive Dantzig pricing.
        let mut lp = LpProblem::new(4);
        lp.maximize(vec![
            (0, ratio(3, 4)),
            (1, int(-150)),
            (2, ratio(1, 50)),
            (3, int(-6)),
        ]);
        lp.add(
            vec![
                (0, ratio(1, 4)),
                (1, int(-60)),
                (2, ratio(-1, 25)),
                (3, int(9)),
            ],
            Relation::Le,
            int(0),
            Family::Other,
        );
        lp.add(
            vec![
                (0, ratio(1, 2)),
                (1, int(-90)),
                (2, ratio(-1, 50)),
                (3, int(3)),
            ],
            Relation::Le,
            int(0),
            Family::Other,
        );
        lp.add(vec![(2, int(1))], Relation::Le, int(1), Family::Other);
        let opt = solve_checked(&lp).optimum().cloned().unwrap();
        assert_eq!(opt.value, ratio(1, 20));
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LpProblem::new(2);
        lp.maximize(vec![(0, int(1)), (1, int(1))]);
        lp.add(
            vec![(0, int(1)), (1, int(1))],
            Relation::Eq,
            int(2),
            Family::Other,
        );
        lp.add(
            vec![(0, int(2)), (1, int(2))],
            Relation::Eq,
            int(4),
            Family::Other,
        );
        let opt = solve_checked(&lp).optimum().cloned().unwrap();
        assert_eq!(opt.value, int(2));
    }

    #[test]
    fn huge_coefficients_fall_back_to_bigint() {
        let big = Rational::from_integer(BigInt::from(10).pow(30));
        let mut lp = LpProblem::new(2);
        lp.maximize(vec![(0, int(1)), (1, int(1))]);
        lp.add(
            vec![(0, big.clone()), (1, int(1))],
            Relation::Le,
            big.clone() * &big,
            Family::Other,
        );
        lp.add(
            vec![(0, int(1)), (1, big.clone())],
            Relation::Le,
            big.clone() * &big,
            Family::Other,
        );
        let opt = solve_checked(&lp).optimum().cloned().unwrap();
        let expected = (&big * &big) * int(2) / (&big + int(1));
        assert_eq!(opt.value, expected);
    }
}
