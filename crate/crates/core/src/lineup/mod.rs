//! Turning slates into 0-1 programs: single lineups and diversified portfolios.
//!
//! Each (player, slot) pair the player is eligible for gets its own binary
//! variable. Slot rows fill every slot exactly, player rows keep a
//! multi-eligible player from being used twice, and a single salary row
//! enforces the cap. Portfolio generation then layers overlap cuts against
//! every earlier lineup and removes players who hit their exposure cap.

mod portfolio;
mod program;
mod reduce;

pub use portfolio::{generate_portfolio, optimize_lineup, Portfolio};
pub use program::{apply_stacking, build_program, AssignmentVar, LineupProgram};
pub use reduce::dominated_players;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::binprog::SolveError;
use crate::model::{ModelError, Player, RosterRules};
use crate::points::Points;

/// Most entries a single contest accepts.
pub const MAX_LINEUPS: u32 = 150;

/// Which per-player value the optimizer maximizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectiveSource {
    #[default]
    Projection,
    Ceiling,
    Actual,
}

impl ObjectiveSource {
    pub fn value(self, p: &Player) -> Option<Points> {
        match self {
            ObjectiveSource::Projection => Some(p.projection),
            ObjectiveSource::Ceiling => p.ceiling,
            ObjectiveSource::Actual => p.actual,
        }
    }
}

impl fmt::Display for ObjectiveSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ObjectiveSource::Projection => "projection",
            ObjectiveSource::Ceiling => "ceiling",
            ObjectiveSource::Actual => "actual",
        })
    }
}

impl FromStr for ObjectiveSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "projection" => Ok(ObjectiveSource::Projection),
            "ceiling" => Ok(ObjectiveSource::Ceiling),
            "actual" => Ok(ObjectiveSource::Actual),
            other => Err(format!("unknown objective {other:?} (expected projection, ceiling or actual)")),
        }
    }
}

/// Per-player cap on how many portfolio lineups may include them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Exposure {
    Count(u32),
    /// Share of `n_lineups`, rounded down, never below one lineup.
    Fraction(f64),
}

impl Exposure {
    pub fn cap(self, n_lineups: u32) -> u32 {
        match self {
            Exposure::Count(c) => c,
            Exposure::Fraction(f) => ((f * n_lineups as f64 + 1e-9).floor() as u32).max(1),
        }
    }
}

/// `25` is an absolute count, `0.25` or `25%` a share of the portfolio.
impl FromStr for Exposure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(pct) = s.strip_suffix('%') {
            let v: f64 = pct.trim().parse().map_err(|_| format!("invalid exposure {s:?}"))?;
            return Ok(Exposure::Fraction(v / 100.0));
        }
        if let Ok(c) = s.parse::<u32>() {
            return Ok(Exposure::Count(c));
        }
        s.parse::<f64>()
            .map(Exposure::Fraction)
            .map_err(|_| format!("invalid exposure {s:?}"))
    }
}

/// At least `count` teams must each supply `size` or more hitters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Stacking {
    pub size: u32,
    pub count: u32,
}

/// Parses `SIZExCOUNT`, e.g. `4x1`.
impl FromStr for Stacking {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s
            .trim()
            .split_once(['x', 'X'])
            .ok_or_else(|| format!("invalid stack {s:?} (expected SIZExCOUNT)"))?;
        let size = a.trim().parse().map_err(|_| format!("invalid stack size in {s:?}"))?;
        let count = b.trim().parse().map_err(|_| format!("invalid stack count in {s:?}"))?;
        Ok(Stacking { size, count })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PortfolioConfig {
    pub n_lineups: u32,
    /// Most players any two lineups may share; `None` means roster size − 1.
    pub max_overlap: Option<u32>,
    pub max_exposure: Option<Exposure>,
    pub stacking: Option<Stacking>,
    pub locks: BTreeSet<String>,
    pub excludes: BTreeSet<String>,
    pub objective_source: ObjectiveSource,
}

impl Default for PortfolioConfig {
    fn default() -> Self {
        PortfolioConfig {
            n_lineups: 1,
            max_overlap: None,
            max_exposure: None,
            stacking: None,
            locks: BTreeSet::new(),
            excludes: BTreeSet::new(),
            objective_source: ObjectiveSource::Projection,
        }
    }
}

impl PortfolioConfig {
    pub fn with_lineups(mut self, n: u32) -> Self {
        self.n_lineups = n;
        self
    }

    pub fn with_max_overlap(mut self, k: u32) -> Self {
        self.max_overlap = Some(k);
        self
    }

    pub fn with_max_exposure(mut self, e: Exposure) -> Self {
        self.max_exposure = Some(e);
        self
    }

    pub fn with_stacking(mut self, size: u32, count: u32) -> Self {
        self.stacking = Some(Stacking { size, count });
        self
    }

    pub fn with_objective(mut self, source: ObjectiveSource) -> Self {
        self.objective_source = source;
        self
    }

    pub fn lock(mut self, id: &str) -> Self {
        self.locks.insert(id.to_string());
        self
    }

    pub fn exclude(mut self, id: &str) -> Self {
        self.excludes.insert(id.to_string());
        self
    }

    pub fn overlap_limit(&self, rules: &RosterRules) -> u32 {
        self.max_overlap.unwrap_or(rules.roster_size() - 1)
    }

    pub fn exposure_cap(&self) -> Option<u32> {
        self.max_exposure.map(|e| e.cap(self.n_lineups))
    }

    pub fn validate(&self, rules: &RosterRules) -> Result<(), LineupError> {
        let bad = |msg: String| Err(LineupError::Config(msg));
        if self.n_lineups == 0 || self.n_lineups > MAX_LINEUPS {
            return bad(format!("n_lineups must be in 1..={MAX_LINEUPS}, got {}", self.n_lineups));
        }
        if let Some(k) = self.max_overlap {
            if k >= rules.roster_size() {
                return bad(format!(
                    "max_overlap must be below the roster size {}, got {k}",
                    rules.roster_size()
                ));
            }
        }
        match self.max_exposure {
            Some(Exposure::Count(0)) => return bad("exposure cap must be at least 1".into()),
            Some(Exposure::Fraction(f)) if !(f > 0.0 && f <= 1.0) => {
                return bad(format!("exposure fraction must be in (0, 1], got {f}"))
            }
            _ => {}
        }
        if let Some(id) = self.locks.intersection(&self.excludes).next() {
            return bad(format!("player {id:?} is both locked and excluded"));
        }
        if let Some(s) = self.stacking {
            if s.size < 2 || s.count < 1 {
                return bad(format!("stack needs size >= 2 and count >= 1, got {}x{}", s.size, s.count));
            }
        }
        Ok(())
    }
}

/// Which rule family made a lineup impossible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InfeasibilityHint {
    /// Not enough eligible players to fill every slot.
    Eligibility,
    /// Slots can be filled, but never under the salary cap.
    SalaryCap,
    /// Locks, stacks, overlap cuts or exposure removals conflict.
    PortfolioRules,
}

impl fmt::Display for InfeasibilityHint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InfeasibilityHint::Eligibility => "not enough eligible players to fill every slot",
            InfeasibilityHint::SalaryCap => "salary cap is binding: the cheapest legal lineup exceeds it",
            InfeasibilityHint::PortfolioRules => {
                "locks, stacking, overlap or exposure limits cannot all be met"
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LineupError {
    #[error("invalid portfolio config: {0}")]
    Config(String),
    #[error("locked player {0:?} is not in the slate")]
    UnknownLock(String),
    #[error("locked player {0:?} is not eligible for any slot")]
    LockIneligible(String),
    #[error("player {player:?} has no {objective} value")]
    MissingObjective {
        player: String,
        objective: ObjectiveSource,
    },
    #[error("stack demand exceeds roster: {size}x{count} needs {} hitters, roster has {hitter_slots} hitter slots", size * count)]
    StackDemand {
        size: u32,
        count: u32,
        hitter_slots: u32,
    },
    #[error("no feasible lineup: {0}")]
    NoFeasibleLineup(InfeasibilityHint),
    #[error(transparent)]
    Solver(#[from] SolveError),
    #[error(transparent)]
    Model(#[from] ModelError),
}
