//! Projection accuracy: descriptive statistics, squared differences, RMSE
//! and R².
//!
//! Rows without an actual score are dropped and counted. Sums run in exact
//! integer micro-units; only the final ratios go through `f64`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::model::{Player, Slate};
use crate::points::{write_fixed, Points};

const MICRO: i128 = 1_000_000;

/// A squared point difference, exact at 12 fractional digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SquaredPoints(i128);

impl SquaredPoints {
    pub const SCALE: i128 = MICRO * MICRO;

    pub fn raw(self) -> i128 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / Self::SCALE as f64
    }
}

impl fmt::Display for SquaredPoints {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_fixed(f, self.0, Self::SCALE)
    }
}

impl Serialize for SquaredPoints {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.as_f64())
    }
}

/// `(projection − actual)²`, exactly.
pub fn squared_difference(projection: Points, actual: Points) -> SquaredPoints {
    let d = projection.micros() as i128 - actual.micros() as i128;
    SquaredPoints(d * d)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AccuracyError {
    #[error("no actuals")]
    NoActuals,
    #[error("undefined R²: needs at least two rows and actuals that vary")]
    UndefinedRSquared,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RSquaredMethod {
    /// `1 − SS_res / SS_tot` with the projection as the predictor.
    #[default]
    Determination,
    /// Square of the Pearson correlation between projection and actual.
    PearsonSquared,
}

impl FromStr for RSquaredMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "determination" => Ok(RSquaredMethod::Determination),
            "pearson" | "pearson_squared" => Ok(RSquaredMethod::PearsonSquared),
            other => Err(format!("unknown R² method {other:?} (expected determination or pearson)")),
        }
    }
}

/// Summary of one column. `std` uses the n − 1 denominator and is 0 for a
/// single row; quantiles interpolate linearly between order statistics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ColumnStats {
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub q25: f64,
    pub median: f64,
    pub q75: f64,
    pub max: f64,
}

impl ColumnStats {
    /// `values` are integers at `scale` units per point. Empty input panics.
    fn from_scaled(mut values: Vec<i128>, scale: i128) -> Self {
        assert!(!values.is_empty());
        values.sort_unstable();
        let n = values.len();
        let sum: i128 = values.iter().sum();
        let mean = sum as f64 / n as f64 / scale as f64;
        let xs: Vec<f64> = values.iter().map(|&v| v as f64 / scale as f64).collect();
        let std = if n > 1 {
            (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
        } else {
            0.0
        };
        let quantile = |q: f64| {
            let pos = q * (n - 1) as f64;
            let lo = pos.floor() as usize;
            let hi = (lo + 1).min(n - 1);
            xs[lo] + (xs[hi] - xs[lo]) * (pos - lo as f64)
        };
        ColumnStats {
            mean,
            std,
            min: xs[0],
            q25: quantile(0.25),
            median: quantile(0.5),
            q75: quantile(0.75),
            max: xs[n - 1],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AccuracyReport {
    pub n: usize,
    pub n_dropped: usize,
    pub projection: ColumnStats,
    pub actual: ColumnStats,
    pub price: ColumnStats,
    pub difference: ColumnStats,
    pub mse: f64,
    pub rmse: f64,
    /// `None` when R² is undefined for this slate.
    pub r_squared: Option<f64>,
    pub r_squared_method: RSquaredMethod,
}

/// Rows with an actual score, as `(player, actual)`.
fn usable(slate: &Slate) -> Result<(Vec<(&Player, Points)>, usize), AccuracyError> {
    let rows: Vec<_> = slate
        .players()
        .iter()
        .filter_map(|p| p.actual.map(|a| (p, a)))
        .collect();
    if rows.is_empty() {
        return Err(AccuracyError::NoActuals);
    }
    let dropped = slate.len() - rows.len();
    Ok((rows, dropped))
}

/// Mean squared difference from exact sums.
fn mse_of(rows: &[(&Player, Points)]) -> f64 {
    let total: i128 = rows
        .iter()
        .map(|(p, a)| squared_difference(p.projection, *a).raw())
        .sum();
    total as f64 / rows.len() as f64 / SquaredPoints::SCALE as f64
}

pub fn mse(slate: &Slate) -> Result<f64, AccuracyError> {
    usable(slate).map(|(rows, _)| mse_of(&rows))
}

/// Root of the mean squared difference.
pub fn rmse(slate: &Slate) -> Result<f64, AccuracyError> {
    mse(slate).map(f64::sqrt)
}

pub fn r_squared(slate: &Slate, method: RSquaredMethod) -> Result<f64, AccuracyError> {
    let (rows, _) = usable(slate)?;
    r_squared_of(&rows, method)
}

fn r_squared_of(rows: &[(&Player, Points)], method: RSquaredMethod) -> Result<f64, AccuracyError> {
    let n = rows.len() as i128;
    if n < 2 {
        return Err(AccuracyError::UndefinedRSquared);
    }
    let (mut sp, mut sa, mut spp, mut saa, mut spa, mut res) = (0i128, 0i128, 0i128, 0i128, 0i128, 0i128);
    for (p, a) in rows {
        let (x, y) = (p.projection.micros() as i128, a.micros() as i128);
        sp += x;
        sa += y;
        spp += x * x;
        saa += y * y;
        spa += x * y;
        res += (y - x) * (y - x);
    }
    // n·SS_tot, exact
    let tot = n * saa - sa * sa;
    if tot == 0 {
        return Err(AccuracyError::UndefinedRSquared);
    }
    match method {
        RSquaredMethod::Determination => Ok(1.0 - (n * res) as f64 / tot as f64),
        RSquaredMethod::PearsonSquared => {
            let var_p = n * spp - sp * sp;
            if var_p == 0 {
                return Err(AccuracyError::UndefinedRSquared);
            }
            let cov = (n * spa - sp * sa) as f64;
            Ok(cov * cov / (var_p as f64 * tot as f64))
        }
    }
}

/// Descriptive statistics plus MSE, RMSE and R² over rows with actuals.
pub fn describe(slate: &Slate, method: RSquaredMethod) -> Result<AccuracyReport, AccuracyError> {
    let (rows, n_dropped) = usable(slate)?;
    let column = |f: &dyn Fn(&Player, Points) -> i128, scale| {
        ColumnStats::from_scaled(rows.iter().map(|(p, a)| f(p, *a)).collect(), scale)
    };
    let mse = mse_of(&rows);
    Ok(AccuracyReport {
        n: rows.len(),
        n_dropped,
        projection: column(&|p, _| p.projection.micros() as i128, MICRO),
        actual: column(&|_, a| a.micros() as i128, MICRO),
        price: column(&|p, _| p.salary as i128, 1),
        difference: column(&|p, a| squared_difference(p.projection, a).raw(), SquaredPoints::SCALE),
        mse,
        rmse: mse.sqrt(),
        r_squared: r_squared_of(&rows, method).ok(),
        r_squared_method: method,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::PositionSet;
    use crate::synth;
    use chrono::NaiveDate;
    use proptest::prelude::*;

    fn pt(s: &str) -> Points {
        s.parse().unwrap()
    }

    fn slate(rows: &[(&str, i64, Option<&str>)]) -> Slate {
        let players = rows
            .iter()
            .enumerate()
            .map(|(i, (proj, salary, actual))| {
                let p = Player::new(&format!("r{i}"), "T", PositionSet::of(&[crate::model::Position::OF]), *salary, pt(proj));
                match actual {
                    Some(a) => p.with_actual(pt(a)),
                    None => p,
                }
            })
            .collect();
        Slate::new(NaiveDate::from_ymd_opt(2019, 6, 1).unwrap(), players)
    }

    #[test]
    fn squared_difference_examples() {
        assert_eq!(squared_difference(pt("8"), pt("8")).to_string(), "0.0");
        assert_eq!(squared_difference(pt("12"), pt("3")).to_string(), "81.0");
        assert_eq!(squared_difference(pt("3"), pt("12")), squared_difference(pt("12"), pt("3")));
        assert_eq!(squared_difference(pt("0.000001"), pt("0")).to_string(), "0.000000000001");
        assert_eq!(squared_difference(pt("8.5"), pt("6")).to_string(), "6.25");
    }

    #[test]
    fn rmse_of_nine_and_sixteen() {
        let s = slate(&[("10", 3000, Some("7")), ("0", 3000, Some("4"))]);
        assert_eq!(mse(&s).unwrap(), 12.5);
        assert!((rmse(&s).unwrap() - 12.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn four_row_fixture_by_hand() {
        // projections 2, 4, 6, 8; actuals 1, 4, 9, 6; prices 3000..6000
        let s = slate(&[
            ("2", 3000, Some("1")),
            ("4", 4000, Some("4")),
            ("6", 5000, Some("9")),
            ("8", 6000, Some("6")),
            ("5", 9000, None),
        ]);
        let r = describe(&s, RSquaredMethod::Determination).unwrap();
        assert_eq!((r.n, r.n_dropped), (4, 1));
        // projection: mean 5, sample var 20/3
        assert_eq!(r.projection.mean, 5.0);
        assert!((r.projection.std - (20.0f64 / 3.0).sqrt()).abs() < 1e-12);
        assert_eq!((r.projection.q25, r.projection.median, r.projection.q75), (3.5, 5.0, 6.5));
        // actual sorted 1, 4, 6, 9: mean 5, sample var (16+1+1+16)/3
        assert_eq!(r.actual.mean, 5.0);
        assert!((r.actual.std - (34.0f64 / 3.0).sqrt()).abs() < 1e-12);
        assert_eq!((r.actual.min, r.actual.q25, r.actual.median, r.actual.q75, r.actual.max), (1.0, 3.25, 5.0, 6.75, 9.0));
        assert_eq!((r.price.mean, r.price.min, r.price.max), (4500.0, 3000.0, 6000.0));
        // differences 1, 0, 9, 4
        assert_eq!(r.difference.mean, 3.5);
        assert_eq!((r.difference.min, r.difference.median, r.difference.max), (0.0, 2.5, 9.0));
        assert_eq!(r.mse, 3.5);
        assert!((r.rmse * r.rmse - r.mse).abs() < 1e-9);
        // SS_res 14, SS_tot 34
        assert!((r.r_squared.unwrap() - (1.0 - 14.0 / 34.0)).abs() < 1e-12);
        // Pearson: cov sum 20, var sums 20 and 34
        let p = r_squared(&s, RSquaredMethod::PearsonSquared).unwrap();
        assert!((p - 400.0 / (20.0 * 34.0)).abs() < 1e-12);
    }

    #[test]
    fn single_row_degenerates() {
        let s = slate(&[("7.5", 4100, Some("2.25"))]);
        let r = describe(&s, RSquaredMethod::Determination).unwrap();
        assert_eq!(r.actual.std, 0.0);
        let a = r.actual;
        assert!([a.min, a.q25, a.median, a.q75, a.max].iter().all(|&v| v == 2.25));
        assert_eq!(r.r_squared, None);
        assert_eq!(r_squared(&s, RSquaredMethod::Determination), Err(AccuracyError::UndefinedRSquared));
    }

    #[test]
    fn errors() {
        let s = slate(&[("1", 3000, None)]);
        assert_eq!(describe(&s, RSquaredMethod::Determination), Err(AccuracyError::NoActuals));
        assert_eq!(rmse(&s).unwrap_err().to_string(), "no actuals");
        let flat = slate(&[("1", 3000, Some("4")), ("9", 3000, Some("4"))]);
        assert_eq!(r_squared(&flat, RSquaredMethod::Determination), Err(AccuracyError::UndefinedRSquared));
    }

    #[test]
    fn r_squared_reference_points() {
        let exact = slate(&[("1", 3000, Some("1")), ("2.5", 3000, Some("2.5")), ("7", 3000, Some("7"))]);
        assert_eq!(r_squared(&exact, RSquaredMethod::Determination).unwrap(), 1.0);
        assert_eq!(rmse(&exact).unwrap(), 0.0);
        // mean of actuals is 4
        let flat = slate(&[("4", 3000, Some("1")), ("4", 3000, Some("2.5")), ("4", 3000, Some("8.5"))]);
        assert_eq!(r_squared(&flat, RSquaredMethod::Determination).unwrap(), 0.0);
    }

    #[test]
    fn dropping_a_bad_row_lowers_mse() {
        let s = synth::slate(4, 80);
        let m = mse(&s).unwrap();
        let worst = s
            .players()
            .iter()
            .max_by_key(|p| squared_difference(p.projection, p.actual.unwrap()))
            .unwrap();
        let fewer = s.filtered(|p| p.id != worst.id);
        assert!(mse(&fewer).unwrap() < m);
    }

    proptest! {
        #[test]
        fn metric_identities(seed in any::<u64>(), n in 1usize..120) {
            let s = synth::slate(seed, n);
            let r = describe(&s, RSquaredMethod::Determination).unwrap();
            prop_assert!((r.rmse * r.rmse - r.difference.mean).abs() < 1e-9);
            prop_assert!(r.difference.min >= 0.0);
            if let Some(r2) = r.r_squared {
                prop_assert!(r2 <= 1.0);
            }
            let mut players = s.players().to_vec();
            players.reverse();
            players.rotate_left(seed as usize % n);
            let shuffled = describe(&Slate::new(s.date, players), RSquaredMethod::Determination).unwrap();
            prop_assert_eq!(r, shuffled);
        }
    }
}
