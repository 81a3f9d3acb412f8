//! Projection-optimal lineups against hindsight-optimal lineups, day by day.

use chrono::NaiveDate;
use rayon::prelude::*;
use serde::Serialize;

use crate::lineup::{optimize_lineup, LineupError, ObjectiveSource, PortfolioConfig};
use crate::model::{Diagnostic, Lineup, RosterRules, Slate};
use crate::points::Points;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BacktestDay {
    pub date: NaiveDate,
    pub best_projected: Lineup,
    pub projected_total: Points,
    /// What the projection-optimal lineup actually scored, when every member
    /// has an actual.
    pub best_projected_actual: Option<Points>,
    pub hindsight: Lineup,
    pub hindsight_actual: Points,
    /// `hindsight_actual − projected_total`. Mixes one lineup's projection
    /// with another's actual score by definition.
    pub gap: Points,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BacktestReport {
    pub days: Vec<BacktestDay>,
    pub mean_projected: f64,
    pub mean_hindsight_actual: f64,
    /// `mean_hindsight_actual − mean_projected`.
    pub mean_gap: f64,
    /// Mean of `best_projected_actual` over the days that have it.
    pub mean_best_projected_actual: Option<f64>,
    /// One warning per skipped day.
    pub diagnostics: Vec<Diagnostic>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BacktestError {
    #[error("insufficient actuals")]
    InsufficientActuals,
    #[error("no slates to backtest")]
    NoSlates,
    #[error("every day failed; first failure on {date}: {reason}")]
    AllDaysFailed { date: NaiveDate, reason: String },
    #[error(transparent)]
    Lineup(#[from] LineupError),
}

pub fn backtest_day(slate: &Slate, rules: &RosterRules) -> Result<BacktestDay, BacktestError> {
    let best_projected = optimize_lineup(slate, rules, &PortfolioConfig::default())?;
    let scored = slate.filtered(|p| p.actual.is_some());
    let hindsight_cfg = PortfolioConfig::default().with_objective(ObjectiveSource::Actual);
    let hindsight = match optimize_lineup(&scored, rules, &hindsight_cfg) {
        Ok(l) => l,
        Err(LineupError::NoFeasibleLineup(_)) => return Err(BacktestError::InsufficientActuals),
        Err(e) => return Err(e.into()),
    };
    let hindsight_actual = hindsight
        .total_actual
        .expect("hindsight pool only holds players with actuals");
    let projected_total = best_projected.total_projection;
    Ok(BacktestDay {
        date: slate.date,
        best_projected_actual: best_projected.total_actual,
        best_projected,
        projected_total,
        hindsight,
        hindsight_actual,
        gap: hindsight_actual - projected_total,
    })
}

fn mean(values: impl Iterator<Item = Points>) -> Option<f64> {
    let (sum, n) = values.fold((0i128, 0usize), |(s, n), p| (s + p.micros() as i128, n + 1));
    (n > 0).then(|| sum as f64 / n as f64 / 1e6)
}

/// Runs every day in parallel; the report lists days in date order (input
/// order among equal dates). Failing days are skipped with a warning.
pub fn backtest_range(slates: &[Slate], rules: &RosterRules) -> Result<BacktestReport, BacktestError> {
    if slates.is_empty() {
        return Err(BacktestError::NoSlates);
    }
    let mut results: Vec<(usize, Result<BacktestDay, BacktestError>)> = slates
        .par_iter()
        .enumerate()
        .map(|(i, s)| (i, backtest_day(s, rules)))
        .collect();
    results.sort_by_key(|(i, _)| (slates[*i].date, *i));

    let mut days = Vec::new();
    let mut diagnostics = Vec::new();
    let mut first_failure = None;
    for (i, r) in results {
        match r {
            Ok(d) => days.push(d),
            Err(e) => {
                let date = slates[i].date;
                diagnostics.push(Diagnostic::warning(format!("day skipped: {e}")).about(date.to_string()));
                first_failure.get_or_insert((date, e.to_string()));
            }
        }
    }
    if days.is_empty() {
        let (date, reason) = first_failure.expect("slates is non-empty");
        return Err(BacktestError::AllDaysFailed { date, reason });
    }
    let mean_projected = mean(days.iter().map(|d| d.projected_total)).expect("non-empty");
    let mean_hindsight_actual = mean(days.iter().map(|d| d.hindsight_actual)).expect("non-empty");
    Ok(BacktestReport {
        mean_best_projected_actual: mean(days.iter().filter_map(|d| d.best_projected_actual)),
        mean_gap: mean_hindsight_actual - mean_projected,
        mean_projected,
        mean_hindsight_actual,
        days,
        diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::m9;
    use crate::model::{check_lineup, Player, Position, PositionSet, Severity};
    use crate::synth;

    fn pt(s: &str) -> Points {
        s.parse().unwrap()
    }

    fn remap(slate: &Slate, f: impl Fn(&mut Player)) -> Slate {
        let mut players = slate.players().to_vec();
        players.iter_mut().for_each(f);
        Slate::new(slate.date, players)
    }

    #[test]
    fn identical_objectives_leave_no_gap() {
        let s = remap(&synth::slate(3, 50), |p| p.actual = Some(p.projection));
        let d = backtest_day(&s, &RosterRules::default()).unwrap();
        assert_eq!(d.gap, Points::ZERO);
        assert_eq!(d.hindsight_actual, d.projected_total);
        assert_eq!(d.best_projected_actual, Some(d.projected_total));
    }

    #[test]
    fn m9_both_sides_are_forced() {
        let (slate, lineup) = m9();
        let rules = RosterRules::default();
        let d = backtest_day(&slate, &rules).unwrap();
        assert_eq!(d.best_projected.member_set(), lineup.member_set());
        assert_eq!(d.hindsight.member_set(), lineup.member_set());
        assert_eq!(d.projected_total, pt("84.3"));
        assert_eq!(d.hindsight_actual, pt("69.75"));
        assert_eq!(d.gap, pt("-14.55"));
        assert!(check_lineup(&d.best_projected, &slate, &rules).unwrap());
        assert!(check_lineup(&d.hindsight, &slate, &rules).unwrap());
    }

    fn twelve_player_pool() -> Slate {
        let (slate, _) = m9();
        let mut players = slate.players().to_vec();
        let of = PositionSet::of(&[Position::OF]);
        let ss = PositionSet::of(&[Position::SS]);
        players.push(Player::new("x_of", "LAD", of, 2500, pt("6.0")).with_actual(pt("5")));
        players.push(Player::new("x_ss", "LAD", ss, 3000, pt("5.5")).with_actual(pt("8")));
        players.push(Player::new("x_p", "LAD", PositionSet::of(&[Position::P]), 4800, pt("12.0")).with_actual(pt("9")));
        Slate::new(slate.date, players)
    }

    #[test]
    fn a_fifty_point_surprise_makes_the_hindsight_lineup() {
        let rules = RosterRules::default();
        let pool = twelve_player_pool();
        assert_eq!(pool.len(), 12);
        let before = backtest_day(&pool, &rules).unwrap();
        assert!(!before.best_projected.contains("x_of"));
        let boosted = remap(&pool, |p| {
            if p.id == "x_of" {
                p.actual = Some(p.projection + pt("50"));
            }
        });
        let d = backtest_day(&boosted, &rules).unwrap();
        assert!(d.hindsight.contains("x_of"));
        assert!(!d.best_projected.contains("x_of"));
        assert!(d.gap > before.gap);
    }

    #[test]
    fn optimality_on_both_sides() {
        let rules = RosterRules::default();
        for seed in 0..8 {
            let s = synth::slate(seed, 14 + seed as usize * 3);
            let Ok(d) = backtest_day(&s, &rules) else { continue };
            let hindsight_projection = d.hindsight.total_projection;
            assert!(d.projected_total >= hindsight_projection);
            if let Some(a) = d.best_projected_actual {
                assert!(d.hindsight_actual >= a);
            }
        }
    }

    #[test]
    fn missing_actuals_are_reported() {
        let (slate, _) = m9();
        let holed = remap(&slate, |p| {
            if p.id == "m9_ss" {
                p.actual = None;
            }
        });
        let rules = RosterRules::default();
        assert_eq!(backtest_day(&holed, &rules), Err(BacktestError::InsufficientActuals));
        assert_eq!(BacktestError::InsufficientActuals.to_string(), "insufficient actuals");
        assert!(matches!(
            backtest_range(std::slice::from_ref(&holed), &rules),
            Err(BacktestError::AllDaysFailed { .. })
        ));
        assert_eq!(backtest_range(&[], &rules), Err(BacktestError::NoSlates));

        let mut later = slate.clone();
        later.date = slate.date.succ_opt().unwrap();
        let report = backtest_range(&[later, holed], &rules).unwrap();
        assert_eq!(report.days.len(), 1);
        assert_eq!(report.diagnostics.len(), 1);
        assert_eq!(report.diagnostics[0].severity, Severity::Warning);
        assert_eq!(report.diagnostics[0].subject.as_deref(), Some("2019-06-01"));
    }

    #[test]
    fn three_hand_built_days() {
        // M9 as is; M9 with every actual +1; M9 with every projection +2.
        // Each roster is forced, so the day totals are simple sums.
        let (base, _) = m9();
        let mut d2 = remap(&base, |p| p.actual = p.actual.map(|a| a + pt("1")));
        d2.date = base.date.succ_opt().unwrap();
        let mut d3 = remap(&base, |p| p.projection += pt("2"));
        d3.date = d2.date.succ_opt().unwrap();
        let rules = RosterRules::default();
        // hand in reverse order to check date sorting
        let r = backtest_range(&[d3, base.clone(), d2], &rules).unwrap();
        let dates: Vec<_> = r.days.iter().map(|d| d.date.to_string()).collect();
        assert_eq!(dates, ["2019-06-01", "2019-06-02", "2019-06-03"]);
        let projected: Vec<_> = r.days.iter().map(|d| d.projected_total).collect();
        assert_eq!(projected, [pt("84.3"), pt("84.3"), pt("102.3")]);
        let hindsight: Vec<_> = r.days.iter().map(|d| d.hindsight_actual).collect();
        assert_eq!(hindsight, [pt("69.75"), pt("78.75"), pt("69.75")]);
        // (84.3 + 84.3 + 102.3) / 3 and (69.75 + 78.75 + 69.75) / 3
        assert!((r.mean_projected - 90.3).abs() < 1e-9);
        assert!((r.mean_hindsight_actual - 72.75).abs() < 1e-9);
        assert!((r.mean_gap - -17.55).abs() < 1e-9);
        assert_eq!(r.mean_gap, r.mean_hindsight_actual - r.mean_projected);
        assert!((r.mean_best_projected_actual.unwrap() - 72.75).abs() < 1e-9);
        assert!(r.diagnostics.is_empty());
    }

    #[test]
    fn one_day_means_equal_the_day() {
        let s = synth::slate(8, 40);
        let r = backtest_range(std::slice::from_ref(&s), &RosterRules::default()).unwrap();
        let d = &r.days[0];
        assert_eq!(r.mean_projected, d.projected_total.as_f64());
        assert_eq!(r.mean_hindsight_actual, d.hindsight_actual.as_f64());
    }
}
