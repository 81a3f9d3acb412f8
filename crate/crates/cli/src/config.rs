//! Flat TOML run configuration and slot-table parsing.

use std::path::{Path, PathBuf};

use dfsopt_core::{PositionSet, SlotSpec};
use serde::Deserialize;

/// Every key is optional; command-line flags win over these values.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub salary_cap: Option<i64>,
    pub util_pitcher: Option<bool>,
    /// Slot table in `--slots` syntax.
    pub slots: Option<String>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
    pub date: Option<String>,
    pub map: Option<String>,
    pub n_lineups: Option<u32>,
    pub max_overlap: Option<u32>,
    pub max_exposure: Option<ExposureValue>,
    pub stack: Option<String>,
    #[serde(default)]
    pub locks: Vec<String>,
    #[serde(default)]
    pub excludes: Vec<String>,
    pub objective: Option<String>,
    pub r2: Option<String>,
}

/// `max_exposure = 25`, `0.25` or `"25%"`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum ExposureValue {
    Count(i64),
    Fraction(f64),
    Text(String),
}

impl ExposureValue {
    pub fn as_text(&self) -> String {
        match self {
            ExposureValue::Count(c) => c.to_string(),
            ExposureValue::Fraction(f) => f.to_string(),
            ExposureValue::Text(s) => s.clone(),
        }
    }
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("invalid config {}: {e}", path.display()))
    }
}

/// Parses `NAME=POS/POS[*COUNT],...`, for example
/// `P=P,C/1B=C/1B,2B=2B,3B=3B,SS=SS,OF=OF*3,UTIL=C/1B/2B/3B/SS/OF`.
pub fn parse_slots(s: &str) -> Result<Vec<SlotSpec>, String> {
    s.split(',')
        .filter(|e| !e.trim().is_empty())
        .map(|entry| {
            let (name, rest) = entry
                .split_once('=')
                .ok_or_else(|| format!("invalid slot {entry:?} (expected NAME=POSITIONS[*COUNT])"))?;
            let (positions, count) = match rest.split_once('*') {
                Some((p, c)) => (p, c.trim().parse::<u32>().map_err(|_| format!("invalid slot count in {entry:?}"))?),
                None => (rest, 1),
            };
            let eligible: PositionSet = positions.parse().map_err(|e| format!("slot {}: {e}", name.trim()))?;
            Ok(SlotSpec::new(name.trim(), eligible, count))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use dfsopt_core::RosterRules;

    #[test]
    fn classic_table_round_trips() {
        let slots = parse_slots("P=P,C/1B=C/1B,2B=2B,3B=3B,SS=SS,OF=OF*3,UTIL=C/1B/2B/3B/SS/OF").unwrap();
        let rules = RosterRules::new(slots, 35_000).unwrap();
        assert_eq!(rules, RosterRules::mlb_classic());
    }

    #[test]
    fn bad_tables() {
        assert!(parse_slots("P").is_err());
        assert!(parse_slots("P=Q").is_err());
        assert!(parse_slots("OF=OF*x").is_err());
    }

    #[test]
    fn exposure_accepts_three_spellings() {
        let c: FileConfig = toml::from_str("max_exposure = 25").unwrap();
        assert_eq!(c.max_exposure.unwrap().as_text(), "25");
        let c: FileConfig = toml::from_str("max_exposure = 0.25").unwrap();
        assert_eq!(c.max_exposure.unwrap().as_text(), "0.25");
        let c: FileConfig = toml::from_str("max_exposure = \"25%\"").unwrap();
        assert_eq!(c.max_exposure.unwrap().as_text(), "25%");
        assert!(toml::from_str::<FileConfig>("mystery = 1").is_err());
    }
}
