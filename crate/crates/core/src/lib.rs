//! Exact integer-programming lineup optimizer for daily fantasy baseball.
//!
//! The pieces, bottom up:
//!
//! * [`model`]: players, slates, roster rules, lineups and their checks.
//! * [`binprog`]: an exact 0-1 program solver and its brute-force oracle.
//! * [`lineup`]: slate-to-program encoding, single lineups and portfolios.
//! * [`accuracy`]: projection-versus-actual statistics.
//! * [`backtest`]: projection-optimal versus hindsight-optimal lineups.
//! * [`io`]: slate CSV parsing and report emission.

pub mod accuracy;
pub mod backtest;
pub mod binprog;
pub mod fixtures;
pub mod io;
pub mod lineup;
pub mod model;
pub mod points;
pub mod synth;

pub use lineup::{
    generate_portfolio, optimize_lineup, Exposure, LineupError, ObjectiveSource, Portfolio, PortfolioConfig,
    Stacking,
};
pub use model::*;
pub use points::Points;
