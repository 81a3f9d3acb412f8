use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::binprog::solve;
use crate::model::{Diagnostic, Lineup, RosterRules, Slate};

use super::reduce::dominated_players;
use super::{build_program, InfeasibilityHint, LineupError, PortfolioConfig};

/// Lineups in generation order plus the settings that produced them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Portfolio {
    pub lineups: Vec<Lineup>,
    pub config: PortfolioConfig,
    /// Lineup count per player id; players never used are absent.
    pub exposure: BTreeMap<String, u32>,
    pub diagnostics: Vec<Diagnostic>,
}

/// The single best lineup under `config`. Overlap and exposure settings have
/// no effect without prior lineups.
pub fn optimize_lineup(slate: &Slate, rules: &RosterRules, config: &PortfolioConfig) -> Result<Lineup, LineupError> {
    solve_one(slate, rules, config, &[], &BTreeSet::new())?
        .ok_or_else(|| LineupError::NoFeasibleLineup(diagnose(slate, rules, config, &BTreeSet::new())))
}

fn solve_one(
    slate: &Slate,
    rules: &RosterRules,
    config: &PortfolioConfig,
    priors: &[Lineup],
    banned: &BTreeSet<String>,
) -> Result<Option<Lineup>, LineupError> {
    let mut removed = banned.clone();
    removed.extend(dominated_players(slate, rules, config, priors, banned));
    let lp = build_program(slate, rules, config, priors, &removed)?;
    let solution = solve(&lp.program)?;
    if !solution.is_optimal() {
        return Ok(None);
    }
    lp.decode(&solution, slate, rules).map(Some)
}

/// Works out which rule family makes the problem infeasible by relaxing them
/// one at a time.
fn diagnose(slate: &Slate, rules: &RosterRules, config: &PortfolioConfig, banned: &BTreeSet<String>) -> InfeasibilityHint {
    let bare = PortfolioConfig {
        n_lineups: 1,
        locks: BTreeSet::new(),
        stacking: None,
        ..config.clone()
    };
    let feasible = |rules: &RosterRules| {
        solve_one(slate, rules, &bare, &[], banned).is_ok_and(|l| l.is_some())
    };
    let uncapped = rules
        .clone()
        .with_salary_cap(i64::MAX / 4)
        .expect("positive cap");
    if !feasible(&uncapped) {
        InfeasibilityHint::Eligibility
    } else if !feasible(rules) {
        InfeasibilityHint::SalaryCap
    } else {
        InfeasibilityHint::PortfolioRules
    }
}

/// Generates up to `config.n_lineups` lineups, best first.
///
/// Iteration `i` adds an overlap cut against every earlier lineup and drops
/// any player whose exposure already reached the cap (locked players are
/// kept and reported). If an iteration after the first is infeasible the
/// portfolio stops there with a warning diagnostic.
pub fn generate_portfolio(slate: &Slate, rules: &RosterRules, config: &PortfolioConfig) -> Result<Portfolio, LineupError> {
    config.validate(rules)?;
    let cap = config.exposure_cap();
    let mut lineups: Vec<Lineup> = Vec::new();
    let mut exposure: BTreeMap<String, u32> = BTreeMap::new();
    let mut banned = BTreeSet::new();
    let mut diagnostics = Vec::new();

    for iteration in 1..=config.n_lineups {
        match solve_one(slate, rules, config, &lineups, &banned)? {
            Some(lineup) => {
                for id in lineup.player_ids() {
                    let count = exposure.entry(id.to_string()).or_default();
                    *count += 1;
                    if cap.is_some_and(|c| *count >= c) && !config.locks.contains(id) {
                        banned.insert(id.to_string());
                    }
                }
                lineups.push(lineup);
            }
            None if iteration == 1 => {
                return Err(LineupError::NoFeasibleLineup(diagnose(slate, rules, config, &banned)));
            }
            None => {
                diagnostics.push(
                    Diagnostic::warning(format!(
                        "infeasible at iteration {iteration}; portfolio stopped with {} lineups",
                        lineups.len()
                    ))
                    .about("portfolio"),
                );
                break;
            }
        }
    }

    if let Some(c) = cap {
        for id in &config.locks {
            let used = exposure.get(id).copied().unwrap_or(0);
            if used > c {
                diagnostics.push(
                    Diagnostic::warning(format!("locked player exceeds exposure cap: {used} lineups, cap {c}"))
                        .about(id.clone()),
                );
            }
        }
    }

    Ok(Portfolio {
        lineups,
        config: config.clone(),
        exposure,
        diagnostics,
    })
}
