use super::simplex::{DualSimplex, LpStatus};
use super::{BinaryProgram, Solution, SolveError};

const INTEGRALITY_TOL: f64 = 1e-6;

/// Counters from one branch-and-bound run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub pivots: u64,
    pub stalled: u64,
}

/// True when no integer point under `bound` can beat the incumbent by one unit.
fn prunes(bound: f64, best: &Option<(i64, Vec<bool>)>) -> bool {
    match best {
        Some((inc, _)) => bound + 1e-6 * (1.0 + bound.abs()) < *inc as f64 + 1.0,
        None => false,
    }
}

/// Solves a 0-1 program to proven optimality.
///
/// Depth-first branch-and-bound, `x = 1` child first, branching on the most
/// fractional variable (lowest index among equals). Variables whose reduced
/// cost alone rules out a flip are fixed for the whole subtree. Only strictly
/// better incumbents replace the current one, so results are deterministic.
pub fn solve(program: &BinaryProgram) -> Result<Solution, SolveError> {
    solve_with_stats(program).map(|(s, _)| s)
}

pub fn solve_with_stats(program: &BinaryProgram) -> Result<(Solution, SearchStats), SolveError> {
    program.check()?;
    let n = program.n_vars();
    let mut lp = DualSimplex::new(program);
    let max_iter = 50 * (n + program.constraints().len()) + 1_000;
    let mut stats = SearchStats::default();

    let mut best: Option<(i64, Vec<bool>)> = None;
    let mut stack: Vec<Vec<(usize, bool)>> = vec![Vec::new()];
    let mut fixed: Vec<Option<bool>> = vec![None; n];
    let mut x = vec![false; n];

    let mut reduced = Vec::with_capacity(n);
    while let Some(mut fixings) = stack.pop() {
        stats.nodes += 1;
        fixed.iter_mut().for_each(|f| *f = None);
        for &(j, v) in &fixings {
            fixed[j] = Some(v);
        }
        lp.set_fixings(&fixings);
        let status = lp.solve(max_iter);
        if status == LpStatus::Infeasible {
            continue;
        }
        if status == LpStatus::Stalled {
            stats.stalled += 1;
        }

        // Integer optima inside this node cannot exceed floor(bound).
        let bound = lp.lagrangian(&mut reduced) / lp.cost_scale;
        let slack = 1e-6 * (1.0 + bound.abs());
        let cannot_improve = |best: &Option<(i64, Vec<bool>)>| prunes(bound, best);
        if cannot_improve(&best) {
            continue;
        }
        // Reduced-cost fixing: a variable whose flip alone drops the bound
        // below the incumbent keeps its favoured value in the whole subtree.
        if let Some((inc, _)) = &best {
            for j in 0..n {
                if fixed[j].is_none() {
                    let r = reduced[j] / lp.cost_scale;
                    if bound - r.abs() + slack < *inc as f64 + 1.0 {
                        fixed[j] = Some(r > 0.0);
                        fixings.push((j, r > 0.0));
                    }
                }
            }
        }

        let values = lp.structural_values();
        let fractional = if status == LpStatus::Optimal {
            let mut pick: Option<(usize, f64)> = None;
            for j in (0..n).filter(|&j| fixed[j].is_none()) {
                let frac = (values[j] - values[j].round()).abs();
                if frac > INTEGRALITY_TOL && pick.is_none_or(|(_, f)| frac > f + 1e-9) {
                    pick = Some((j, frac));
                }
            }
            pick.map(|(j, _)| j)
        } else {
            None
        };

        let branch_on = match fractional {
            Some(j) => Some(j),
            None => {
                // Either the relaxation is integral or it stalled: try the
                // rounded point exactly, then keep splitting if the bound
                // still leaves room above it.
                for j in 0..n {
                    x[j] = fixed[j].unwrap_or(values[j] > 0.5);
                }
                if program.is_feasible(&x) {
                    let value = program.evaluate(&x);
                    if best.as_ref().is_none_or(|(inc, _)| value > *inc) {
                        best = Some((value, x.clone()));
                    }
                }
                if status == LpStatus::Optimal && cannot_improve(&best) {
                    continue;
                }
                (0..n).find(|&j| fixed[j].is_none())
            }
        };
        if let Some(j) = branch_on {
            let mut zero = fixings.clone();
            zero.push((j, false));
            let mut one = fixings;
            one.push((j, true));
            stack.push(zero);
            stack.push(one);
        }
    }
    stats.pivots = lp.pivots;

    let solution = match best {
        Some((_, x)) => Solution::optimal(program, &x),
        None => Solution::infeasible(),
    };
    Ok((solution, stats))
}
