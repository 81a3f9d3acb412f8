use super::{BinaryProgram, Solution, SolveError};

/// Largest program [`brute_force_solve`] will enumerate.
pub const ORACLE_MAX_VARS: usize = 25;

/// Solves by enumerating all `2^n` assignments. Among equal optima the
/// selected set whose sorted index sequence is lexicographically smallest wins.
pub fn brute_force_solve(program: &BinaryProgram) -> Result<Solution, SolveError> {
    program.check()?;
    let n = program.n_vars();
    if n > ORACLE_MAX_VARS {
        return Err(SolveError::OracleBoundExceeded(n));
    }
    let mut x = vec![false; n];
    let mut best: Option<(i64, Vec<usize>)> = None;
    for mask in 0u64..(1u64 << n) {
        for (i, slot) in x.iter_mut().enumerate() {
            *slot = mask >> i & 1 == 1;
        }
        if !program.is_feasible(&x) {
            continue;
        }
        let value = program.evaluate(&x);
        let better = match &best {
            None => true,
            Some((v, _)) if value > *v => true,
            Some((v, sel)) if value == *v => {
                let cand: Vec<usize> = (0..n).filter(|&i| x[i]).collect();
                cand < *sel
            }
            _ => false,
        };
        if better {
            best = Some((value, (0..n).filter(|&i| x[i]).collect()));
        }
    }
    Ok(match best {
        None => Solution::infeasible(),
        Some((value, selected)) => Solution {
            status: super::Status::Optimal,
            selected,
            objective_value: value,
        },
    })
}
