//! Exact solver for 0-1 linear programs with integer coefficients.
//!
//! [`solve`] runs a depth-first branch-and-bound over a bounded dual simplex
//! relaxation. The relaxation only ever supplies bounds; incumbents are
//! checked in exact integer arithmetic, and a node is pruned only when a
//! Lagrangian bound built from the relaxation's duals rules it out. That bound
//! is valid for any sign-correct dual vector, so floating-point drift in the
//! simplex can cost extra nodes but never an optimum.
//!
//! [`brute_force_solve`] enumerates every assignment and is the oracle the
//! tests compare against.

mod oracle;
mod search;
mod simplex;

pub use oracle::{brute_force_solve, ORACLE_MAX_VARS};
pub use search::{solve, solve_with_stats, SearchStats};

use std::collections::HashSet;

/// Largest magnitude any partial sum may reach.
pub const MAGNITUDE_LIMIT: i128 = 1 << 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

/// `Σ coef·x[var]  (≤ | = | ≥)  rhs`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearConstraint {
    terms: Vec<(usize, i64)>,
    sense: Sense,
    rhs: i64,
}

impl LinearConstraint {
    pub fn new(terms: Vec<(usize, i64)>, sense: Sense, rhs: i64) -> Result<Self, SolveError> {
        let mut seen = HashSet::with_capacity(terms.len());
        for &(var, _) in &terms {
            if !seen.insert(var) {
                return Err(SolveError::DuplicateIndex(var));
            }
        }
        Ok(LinearConstraint { terms, sense, rhs })
    }

    pub fn le(terms: Vec<(usize, i64)>, rhs: i64) -> Result<Self, SolveError> {
        Self::new(terms, Sense::Le, rhs)
    }

    pub fn eq(terms: Vec<(usize, i64)>, rhs: i64) -> Result<Self, SolveError> {
        Self::new(terms, Sense::Eq, rhs)
    }

    pub fn ge(terms: Vec<(usize, i64)>, rhs: i64) -> Result<Self, SolveError> {
        Self::new(terms, Sense::Ge, rhs)
    }

    pub fn terms(&self) -> &[(usize, i64)] {
        &self.terms
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn rhs(&self) -> i64 {
        self.rhs
    }

    pub fn lhs(&self, x: &[bool]) -> i128 {
        self.terms
            .iter()
            .filter(|(v, _)| x[*v])
            .map(|&(_, c)| c as i128)
            .sum()
    }

    pub fn is_satisfied_by(&self, x: &[bool]) -> bool {
        let lhs = self.lhs(x);
        let rhs = self.rhs as i128;
        match self.sense {
            Sense::Le => lhs <= rhs,
            Sense::Eq => lhs == rhs,
            Sense::Ge => lhs >= rhs,
        }
    }
}

/// Maximize `objective · x` over `x ∈ {0,1}^n` subject to `constraints`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BinaryProgram {
    objective: Vec<i64>,
    constraints: Vec<LinearConstraint>,
}

impl BinaryProgram {
    pub fn new(objective: Vec<i64>) -> Self {
        BinaryProgram {
            objective,
            constraints: Vec::new(),
        }
    }

    /// Appends a variable and returns its index.
    pub fn add_var(&mut self, coef: i64) -> usize {
        self.objective.push(coef);
        self.objective.len() - 1
    }

    pub fn add_constraint(&mut self, c: LinearConstraint) -> Result<usize, SolveError> {
        if let Some(&(index, _)) = c.terms.iter().find(|(v, _)| *v >= self.n_vars()) {
            return Err(SolveError::IndexOutOfRange {
                index,
                n_vars: self.n_vars(),
            });
        }
        self.constraints.push(c);
        Ok(self.constraints.len() - 1)
    }

    pub fn n_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn objective(&self) -> &[i64] {
        &self.objective
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    pub fn is_feasible(&self, x: &[bool]) -> bool {
        self.constraints.iter().all(|c| c.is_satisfied_by(x))
    }

    pub fn evaluate(&self, x: &[bool]) -> i64 {
        self.objective
            .iter()
            .zip(x)
            .filter(|(_, &on)| on)
            .map(|(c, _)| *c)
            .sum()
    }

    /// Rejects empty programs and coefficient sets whose partial sums could
    /// leave the 2^62 envelope.
    pub fn check(&self) -> Result<(), SolveError> {
        if self.objective.is_empty() {
            return Err(SolveError::EmptyProgram);
        }
        let obj: i128 = self.objective.iter().map(|c| (*c as i128).abs()).sum();
        if obj > MAGNITUDE_LIMIT {
            return Err(SolveError::CoefficientOverflow);
        }
        for c in &self.constraints {
            let row: i128 = c.terms.iter().map(|(_, a)| (*a as i128).abs()).sum::<i128>()
                + (c.rhs as i128).abs();
            if row > MAGNITUDE_LIMIT {
                return Err(SolveError::CoefficientOverflow);
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Optimal,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Solution {
    pub status: Status,
    /// Selected variable indices in increasing order.
    pub selected: Vec<usize>,
    pub objective_value: i64,
}

impl Solution {
    pub fn infeasible() -> Self {
        Solution {
            status: Status::Infeasible,
            selected: Vec::new(),
            objective_value: 0,
        }
    }

    pub(crate) fn optimal(program: &BinaryProgram, x: &[bool]) -> Self {
        Solution {
            status: Status::Optimal,
            selected: (0..x.len()).filter(|&i| x[i]).collect(),
            objective_value: program.evaluate(x),
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == Status::Optimal
    }

    /// The selection as a dense 0-1 vector.
    pub fn assignment(&self, n_vars: usize) -> Vec<bool> {
        let mut x = vec![false; n_vars];
        for &i in &self.selected {
            x[i] = true;
        }
        x
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("empty program")]
    EmptyProgram,
    #[error("coefficient overflow")]
    CoefficientOverflow,
    #[error("oracle bound exceeded: {0} variables, limit {ORACLE_MAX_VARS}")]
    OracleBoundExceeded(usize),
    #[error("variable index {index} out of range for {n_vars} variables")]
    IndexOutOfRange { index: usize, n_vars: usize },
    #[error("variable {0} appears twice in one constraint")]
    DuplicateIndex(usize),
}
