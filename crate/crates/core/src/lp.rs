//! Dense two-phase simplex method with Bland's rule.
//!
//! All feasibility systems built by the certifier are tiny (a handful of
//! variables, at most a few hundred rows), so a dense tableau is the simplest
//! thing that works. Bland's rule guarantees termination on degenerate
//! problems, which are the norm here: most constraints are tight at the
//! solutions we care about.

use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum LpError {
    #[error("iteration limit of {0} pivots reached")]
    IterationLimit(usize),
    #[error("constraint has {found} coefficients, expected {expected}")]
    Shape { expected: usize, found: usize },
    #[error("variable {0} has an empty domain")]
    EmptyDomain(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn solution(self) -> Option<LpSolution> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }
}

/// `maximize objective . x` subject to the constraints and
/// `lower <= x <= upper`. Bounds may be infinite.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    num_vars: usize,
    lower: Vec<f64>,
    upper: Vec<f64>,
    objective: Vec<f64>,
    constraints: Vec<Constraint>,
    tol: f64,
    max_pivots: usize,
}

/// How an original variable is expressed through non-negative columns.
enum Column {
    /// x = offset + y
    Shifted { col: usize, offset: f64 },
    /// x = offset - y
    Reflected { col: usize, offset: f64 },
    /// x = y_plus - y_minus
    Split { plus: usize, minus: usize },
}

impl LinearProgram {
    /// `num_vars` variables, each defaulting to `[0, inf)`, zero objective.
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            lower: vec![0.0; num_vars],
            upper: vec![f64::INFINITY; num_vars],
            objective: vec![0.0; num_vars],
            constraints: Vec::new(),
            tol: 1e-9,
            max_pivots: 50_000,
        }
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn set_bounds(&mut self, var: usize, lower: f64, upper: f64) -> &mut Self {
        self.lower[var] = lower;
        self.upper[var] = upper;
        self
    }

    pub fn maximize(&mut self, objective: Vec<f64>) -> &mut Self {
        self.objective = objective;
        self
    }

    pub fn add(&mut self, coeffs: Vec<f64>, relation: Relation, rhs: f64) -> &mut Self {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        self
    }

    pub fn solve(&self) -> Result<LpOutcome, LpError> {
        let n = self.num_vars;
        if self.objective.len() != n {
            return Err(LpError::Shape {
                expected: n,
                found: self.objective.len(),
            });
        }
        for c in &self.constraints {
            if c.coeffs.len() != n {
                return Err(LpError::Shape {
                    expected: n,
                    found: c.coeffs.len(),
                });
            }
        }

        // Express every variable through non-negative columns.
        let mut columns = Vec::with_capacity(n);
        let mut ncols = 0;
        let mut rows: Vec<(Vec<f64>, Relation, f64)> = Vec::new();
        for i in 0..n {
            let (lo, hi) = (self.lower[i], self.upper[i]);
            if lo > hi {
                return Err(LpError::EmptyDomain(i));
            }
            if lo.is_finite() {
                columns.push(Column::Shifted {
                    col: ncols,
                    offset: lo,
                });
                ncols += 1;
            } else if hi.is_finite() {
                columns.push(Column::Reflected {
                    col: ncols,
                    offset: hi,
                });
                ncols += 1;
            } else {
                columns.push(Column::Split {
                    plus: ncols,
                    minus: ncols + 1,
                });
                ncols += 2;
            }
        }
        let translate = |coeffs: &[f64], ncols: usize| -> (Vec<f64>, f64) {
            let mut row = vec![0.0; ncols];
            let mut constant = 0.0;
            for (c, col) in coeffs.iter().zip(&columns) {
                match *col {
                    Column::Shifted { col, offset } => {
                        row[col] += c;
                        constant += c * offset;
                    }
                    Column::Reflected { col, offset } => {
                        row[col] -= c;
                        constant += c * offset;
                    }
                    Column::Split { plus, minus } => {
                        row[plus] += c;
                        row[minus] -= c;
                    }
                }
            }
            (row, constant)
        };
        for c in &self.constraints {
            let (row, constant) = translate(&c.coeffs, ncols);
            rows.push((row, c.relation, c.rhs - constant));
        }
        for (i, col) in columns.iter().enumerate() {
            let (lo, hi) = (self.lower[i], self.upper[i]);
            if let Column::Shifted { col, .. } = *col {
                if hi.is_finite() {
                    let mut row = vec![0.0; ncols];
                    row[col] = 1.0;
                    rows.push((row, Relation::Le, hi - lo));
                }
            }
        }
        let (objective, obj_constant) = translate(&self.objective, ncols);

        let y = match Tableau::build(&rows, ncols, self.tol).run(&objective, self.max_pivots)? {
            Some(Some(y)) => y,
            Some(None) => return Ok(LpOutcome::Unbounded),
            None => return Ok(LpOutcome::Infeasible),
        };

        let x: Vec<f64> = columns
            .iter()
            .map(|col| match *col {
                Column::Shifted { col, offset } => offset + y[col],
                Column::Reflected { col, offset } => offset - y[col],
                Column::Split { plus, minus } => y[plus] - y[minus],
            })
            .collect();
        let objective_value =
            obj_constant + objective.iter().zip(&y).map(|(c, v)| c * v).sum::<f64>();
        Ok(LpOutcome::Optimal(LpSolution {
            x,
            objective: objective_value,
        }))
    }
}

/// Standard-form tableau: rows `A y (+ slack/surplus/artificial) = b`, `b >= 0`.
struct Tableau {
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    /// number of structural columns
    structural: usize,
    /// first artificial column
    first_artificial: usize,
    width: usize,
    tol: f64,
    pivots: usize,
}

impl Tableau {
    fn build(rows: &[(Vec<f64>, Relation, f64)], structural: usize, tol: f64) -> Self {
        let slack_count = rows
            .iter()
            .filter(|(_, rel, _)| *rel != Relation::Eq)
            .count();
        let first_artificial = structural + slack_count;
        let artificial_count = rows
            .iter()
            .filter(|(_, rel, rhs)| {
                let flipped = *rhs < 0.0;
                match rel {
                    Relation::Eq => true,
                    Relation::Le => flipped,
                    Relation::Ge => !flipped,
                }
            })
            .count();
        let width = first_artificial + artificial_count + 1;
        let mut table = Vec::with_capacity(rows.len());
        let mut basis = Vec::with_capacity(rows.len());
        let mut slack = structural;
        let mut artificial = first_artificial;
        for (coeffs, rel, rhs) in rows {
            let sign = if *rhs < 0.0 { -1.0 } else { 1.0 };
            let mut row = vec![0.0; width];
            for (j, c) in coeffs.iter().enumerate() {
                row[j] = sign * c;
            }
            row[width - 1] = sign * rhs;
            // after flipping, Le becomes Ge and vice versa
            let effective = match (rel, sign < 0.0) {
                (Relation::Eq, _) => Relation::Eq,
                (Relation::Le, false) | (Relation::Ge, true) => Relation::Le,
                (Relation::Ge, false) | (Relation::Le, true) => Relation::Ge,
            };
            match effective {
                Relation::Le => {
                    row[slack] = 1.0;
                    basis.push(slack);
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -1.0;
                    slack += 1;
                    row[artificial] = 1.0;
                    basis.push(artificial);
                    artificial += 1;
                }
                Relation::Eq => {
                    row[artificial] = 1.0;
                    basis.push(artificial);
                    artificial += 1;
                }
            }
            table.push(row);
        }
        Self {
            rows: table,
            basis,
            structural,
            first_artificial,
            width,
            tol,
            pivots: 0,
        }
    }

    fn rhs(&self) -> usize {
        self.width - 1
    }

    fn pivot(&mut self, obj: &mut [f64], r: usize, c: usize) {
        let rhs = self.rhs();
        let lead = self.rows[r][c];
        for k in 0..=rhs {
            self.rows[r][k] /= lead;
        }
        self.rows[r][c] = 1.0;
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                let factor = row[c];
                if factor != 0.0 {
                    for k in 0..=rhs {
                        row[k] -= factor * pivot_row[k];
                    }
                    row[c] = 0.0;
                }
            }
        }
        let factor = obj[c];
        if factor != 0.0 {
            for k in 0..=rhs {
                obj[k] -= factor * pivot_row[k];
            }
            obj[c] = 0.0;
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Primal simplex on the reduced-cost row `obj` (maximization; the rhs
    /// entry holds minus the objective value). Only columns `< allowed` may
    /// enter. Returns `Ok(false)` when unbounded.
    fn optimize(&mut self, obj: &mut [f64], allowed: usize, limit: usize) -> Result<bool, LpError> {
        let rhs = self.rhs();
        loop {
            if self.pivots >= limit {
                return Err(LpError::IterationLimit(limit));
            }
            let Some(enter) = (0..allowed).find(|&j| obj[j] > self.tol) else {
                return Ok(true);
            };
            let mut leave: Option<(usize, f64)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                let a = row[enter];
                if a > self.tol {
                    let ratio = row[rhs] / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((best, best_ratio)) => {
                            if ratio < best_ratio - self.tol * 1e-3
                                || (ratio <= best_ratio + self.tol * 1e-3
                                    && self.basis[i] < self.basis[best])
                            {
                                Some((i, ratio))
                            } else {
                                Some((best, best_ratio))
                            }
                        }
                    };
                }
            }
            match leave {
                Some((r, _)) => self.pivot(obj, r, enter),
                None => return Ok(false),
            }
        }
    }

    /// `None` if infeasible, `Some(None)` if unbounded, else the structural values.
    fn run(mut self, objective: &[f64], limit: usize) -> Result<Option<Option<Vec<f64>>>, LpError> {
        let rhs = self.rhs();
        let scale = self
            .rows
            .iter()
            .fold(1.0f64, |acc, r| acc.max(libm::fabs(r[rhs])));

        // Phase 1: maximize -(sum of artificials).
        let mut obj = vec![0.0; self.width];
        for j in self.first_artificial..rhs {
            obj[j] = -1.0;
        }
        for (i, row) in self.rows.iter().enumerate() {
            if self.basis[i] >= self.first_artificial {
                for k in 0..=rhs {
                    obj[k] += row[k];
                }
            }
        }
        self.optimize(&mut obj, rhs, limit)?;
        if obj[rhs] > self.tol * scale {
            return Ok(None);
        }

        // Drive remaining artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= self.first_artificial {
                let col = (0..self.first_artificial)
                    .find(|&j| libm::fabs(self.rows[i][j]) > self.tol);
                match col {
                    Some(j) => {
                        let mut dummy = vec![0.0; self.width];
                        self.pivot(&mut dummy, i, j);
                        i += 1;
                    }
                    None => {
                        self.rows.remove(i);
                        self.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }

        // Phase 2.
        let mut obj = vec![0.0; self.width];
        obj[..self.structural].copy_from_slice(objective);
        for (i, row) in self.rows.iter().enumerate() {
            let cb = if self.basis[i] < self.structural {
                objective[self.basis[i]]
            } else {
                0.0
            };
            if cb != 0.0 {
                for k in 0..=rhs {
                    obj[k] -= cb * row[k];
                }
            }
        }
        if !self.optimize(&mut obj, self.first_artificial, limit)? {
            return Ok(Some(None));
        }
        let mut y = vec![0.0; self.structural];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.structural {
                y[b] = self.rows[i][rhs].max(0.0);
            }
        }
        Ok(Some(Some(y)))
    }
}
