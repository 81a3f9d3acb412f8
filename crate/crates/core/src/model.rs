//! Domain types shared by every other module: positions, players, slates,
//! roster rules and lineups, plus the feasibility checks that tie them
//! together.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use chrono::NaiveDate;
use serde::{Serialize, Serializer};

use crate::points::Points;

/// A roster position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Position {
    P,
    C,
    B1,
    B2,
    B3,
    SS,
    OF,
}

impl Position {
    pub const ALL: [Position; 7] = [
        Position::P,
        Position::C,
        Position::B1,
        Position::B2,
        Position::B3,
        Position::SS,
        Position::OF,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Position::P => "P",
            Position::C => "C",
            Position::B1 => "1B",
            Position::B2 => "2B",
            Position::B3 => "3B",
            Position::SS => "SS",
            Position::OF => "OF",
        }
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Position {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Position::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| ModelError::UnknownPosition(s.to_string()))
    }
}

/// A set of positions, stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PositionSet(u8);

impl PositionSet {
    pub const EMPTY: PositionSet = PositionSet(0);

    pub fn of(positions: &[Position]) -> Self {
        positions.iter().copied().collect()
    }

    /// Every hitting position.
    pub fn hitters() -> Self {
        Self::of(&[
            Position::C,
            Position::B1,
            Position::B2,
            Position::B3,
            Position::SS,
            Position::OF,
        ])
    }

    pub fn contains(self, p: Position) -> bool {
        self.0 & p.bit() != 0
    }

    pub fn insert(&mut self, p: Position) {
        self.0 |= p.bit();
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn intersects(self, other: PositionSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_superset(self, other: PositionSet) -> bool {
        self.0 & other.0 == other.0
    }

    pub fn iter(self) -> impl Iterator<Item = Position> {
        Position::ALL.into_iter().filter(move |p| self.contains(*p))
    }
}

impl FromIterator<Position> for PositionSet {
    fn from_iter<T: IntoIterator<Item = Position>>(iter: T) -> Self {
        let mut set = PositionSet::EMPTY;
        for p in iter {
            set.insert(p);
        }
        set
    }
}

/// Renders as slash-separated tokens, e.g. `C/1B`.
impl fmt::Display for PositionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tokens: Vec<&str> = self.iter().map(Position::as_str).collect();
        f.write_str(&tokens.join("/"))
    }
}

/// Parses slash-separated tokens. Empty input yields an empty set.
impl FromStr for PositionSet {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(PositionSet::EMPTY);
        }
        s.split('/').map(|t| t.trim().parse::<Position>()).collect()
    }
}

impl Serialize for PositionSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// One row of a slate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Player {
    pub id: String,
    pub name: String,
    pub team: String,
    pub positions: PositionSet,
    pub salary: i64,
    pub projection: Points,
    pub ceiling: Option<Points>,
    pub actual: Option<Points>,
}

impl Player {
    pub fn new(id: &str, team: &str, positions: PositionSet, salary: i64, projection: Points) -> Self {
        Player {
            id: id.to_string(),
            name: id.to_string(),
            team: team.to_string(),
            positions,
            salary,
            projection,
            ceiling: None,
            actual: None,
        }
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn with_actual(mut self, actual: Points) -> Self {
        self.actual = Some(actual);
        self
    }

    pub fn with_ceiling(mut self, ceiling: Points) -> Self {
        self.ceiling = Some(ceiling);
        self
    }

    /// A hitter is any player who cannot pitch.
    pub fn is_hitter(&self) -> bool {
        !self.positions.contains(Position::P)
    }
}

/// The player pool for one date.
#[derive(Debug, Clone)]
pub struct Slate {
    pub date: NaiveDate,
    players: Vec<Player>,
    index: HashMap<String, usize>,
}

impl Slate {
    /// Builds a slate without validating it; see [`validate_slate`].
    /// With duplicate ids, lookups resolve to the first occurrence.
    pub fn new(date: NaiveDate, players: Vec<Player>) -> Self {
        let mut index = HashMap::with_capacity(players.len());
        for (i, p) in players.iter().enumerate() {
            index.entry(p.id.clone()).or_insert(i);
        }
        Slate { date, players, index }
    }

    pub fn players(&self) -> &[Player] {
        &self.players
    }

    pub fn len(&self) -> usize {
        self.players.len()
    }

    pub fn is_empty(&self) -> bool {
        self.players.is_empty()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn player(&self, id: &str) -> Option<&Player> {
        self.index_of(id).map(|i| &self.players[i])
    }

    /// A copy of this slate restricted to players matching `keep`.
    pub fn filtered(&self, keep: impl Fn(&Player) -> bool) -> Slate {
        Slate::new(self.date, self.players.iter().filter(|p| keep(p)).cloned().collect())
    }
}

/// One slot definition, e.g. three `OF` units eligible for outfielders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotSpec {
    pub name: String,
    pub eligible: PositionSet,
    pub count: u32,
}

impl SlotSpec {
    pub fn new(name: &str, eligible: PositionSet, count: u32) -> Self {
        SlotSpec {
            name: name.to_string(),
            eligible,
            count,
        }
    }

    /// Names of the individual units: `OF1..OF3` when the count exceeds one.
    pub fn unit_names(&self) -> Vec<String> {
        if self.count == 1 {
            vec![self.name.clone()]
        } else {
            (1..=self.count).map(|k| format!("{}{}", self.name, k)).collect()
        }
    }
}

/// Contest schema: slot table plus salary cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RosterRules {
    slots: Vec<SlotSpec>,
    salary_cap: i64,
}

impl RosterRules {
    pub fn new(slots: Vec<SlotSpec>, salary_cap: i64) -> Result<Self, ModelError> {
        if salary_cap <= 0 {
            return Err(ModelError::InvalidRules(format!(
                "salary cap must be positive, got {salary_cap}"
            )));
        }
        let mut names = HashSet::new();
        for s in &slots {
            if s.count == 0 {
                return Err(ModelError::InvalidRules(format!("slot {} has count 0", s.name)));
            }
            if s.eligible.is_empty() {
                return Err(ModelError::InvalidRules(format!(
                    "slot {} has no eligible positions",
                    s.name
                )));
            }
            if !names.insert(s.name.as_str()) {
                return Err(ModelError::InvalidRules(format!("duplicate slot name {}", s.name)));
            }
        }
        if slots.is_empty() {
            return Err(ModelError::InvalidRules("roster has no slots".into()));
        }
        // Unit names must not collide either (e.g. a slot literally named "OF1").
        let mut units = HashSet::new();
        for s in &slots {
            for u in s.unit_names() {
                if !units.insert(u.clone()) {
                    return Err(ModelError::InvalidRules(format!("duplicate slot unit {u}")));
                }
            }
        }
        Ok(RosterRules { slots, salary_cap })
    }

    /// The nine-man MLB schema with a $35,000 cap. UTIL takes any hitter.
    pub fn mlb_classic() -> Self {
        use Position::*;
        let slots = vec![
            SlotSpec::new("P", PositionSet::of(&[P]), 1),
            SlotSpec::new("C/1B", PositionSet::of(&[C, B1]), 1),
            SlotSpec::new("2B", PositionSet::of(&[B2]), 1),
            SlotSpec::new("3B", PositionSet::of(&[B3]), 1),
            SlotSpec::new("SS", PositionSet::of(&[SS]), 1),
            SlotSpec::new("OF", PositionSet::of(&[OF]), 3),
            SlotSpec::new("UTIL", PositionSet::hitters(), 1),
        ];
        RosterRules::new(slots, 35_000).expect("built-in rules are valid")
    }

    /// Lets pitchers fill the `UTIL` slot.
    pub fn with_util_pitcher(mut self, allow: bool) -> Self {
        for s in self.slots.iter_mut().filter(|s| s.name == "UTIL") {
            if allow {
                s.eligible.insert(Position::P);
            } else {
                s.eligible = PositionSet(s.eligible.0 & !Position::P.bit());
            }
        }
        self
    }

    pub fn with_salary_cap(mut self, cap: i64) -> Result<Self, ModelError> {
        if cap <= 0 {
            return Err(ModelError::InvalidRules(format!("salary cap must be positive, got {cap}")));
        }
        self.salary_cap = cap;
        Ok(self)
    }

    pub fn slots(&self) -> &[SlotSpec] {
        &self.slots
    }

    pub fn salary_cap(&self) -> i64 {
        self.salary_cap
    }

    pub fn roster_size(&self) -> u32 {
        self.slots.iter().map(|s| s.count).sum()
    }

    /// Roster units that can hold a non-pitcher.
    pub fn hitter_slots(&self) -> u32 {
        self.slots
            .iter()
            .filter(|s| s.eligible.intersects(PositionSet::hitters()))
            .map(|s| s.count)
            .sum()
    }

    /// Every unit name in slot order, e.g. `P, C/1B, ..., OF1, OF2, OF3, UTIL`.
    pub fn unit_names(&self) -> Vec<String> {
        self.slots.iter().flat_map(SlotSpec::unit_names).collect()
    }

    /// Maps a unit name back to its slot definition.
    pub fn slot_of_unit(&self, unit: &str) -> Option<&SlotSpec> {
        self.slots
            .iter()
            .find(|s| s.unit_names().iter().any(|u| u == unit))
    }
}

impl Default for RosterRules {
    fn default() -> Self {
        RosterRules::mlb_classic()
    }
}

/// A single slot-unit assignment inside a lineup.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SlotAssignment {
    pub slot: String,
    pub player_id: String,
}

/// Summed salary and points of a set of players.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Totals {
    pub salary: i64,
    pub projection: Points,
    /// Absent when any member lacks an actual score.
    pub actual: Option<Points>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lineup {
    pub assignments: Vec<SlotAssignment>,
    pub total_salary: i64,
    pub total_projection: Points,
    pub total_actual: Option<Points>,
}

impl Lineup {
    /// Builds a lineup and fills in its totals from the slate.
    pub fn from_assignments(assignments: Vec<SlotAssignment>, slate: &Slate) -> Result<Self, ModelError> {
        let totals = lineup_totals(assignments.iter().map(|a| a.player_id.as_str()), slate)?;
        Ok(Lineup {
            assignments,
            total_salary: totals.salary,
            total_projection: totals.projection,
            total_actual: totals.actual,
        })
    }

    pub fn player_ids(&self) -> impl Iterator<Item = &str> {
        self.assignments.iter().map(|a| a.player_id.as_str())
    }

    pub fn contains(&self, id: &str) -> bool {
        self.player_ids().any(|p| p == id)
    }

    /// Sorted member ids, handy for comparing lineups as sets.
    pub fn member_set(&self) -> BTreeSet<String> {
        self.player_ids().map(str::to_string).collect()
    }

    /// Number of players shared with `other`.
    pub fn overlap(&self, other: &Lineup) -> usize {
        let mine = self.member_set();
        other.player_ids().filter(|id| mine.contains(*id)).count()
    }

    /// Sum of an arbitrary per-player value over the lineup.
    pub fn total_of(&self, slate: &Slate, value: impl Fn(&Player) -> Option<Points>) -> Option<Points> {
        self.player_ids()
            .map(|id| slate.player(id).and_then(&value))
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Warning,
    Error,
}

/// A located, human-readable finding about input data or a run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    /// 1-based row (slate position) or file line, when one applies.
    pub line: Option<usize>,
    /// Player id, slot or file the finding is about.
    pub subject: Option<String>,
    pub rule: String,
}

impl Diagnostic {
    pub fn error(rule: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            line: None,
            subject: None,
            rule: rule.into(),
        }
    }

    pub fn warning(rule: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            ..Diagnostic::error(rule)
        }
    }

    pub fn at_line(mut self, line: usize) -> Self {
        self.line = Some(line);
        self
    }

    pub fn about(mut self, subject: impl Into<String>) -> Self {
        self.subject = Some(subject.into());
        self
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let level = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        write!(f, "{level}: ")?;
        if let Some(line) = self.line {
            write!(f, "line {line}: ")?;
        }
        write!(f, "{}", self.rule)?;
        if let Some(subject) = &self.subject {
            write!(f, " ({subject})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("unknown position {0:?}")]
    UnknownPosition(String),
    #[error("unknown player id {0:?}")]
    UnknownPlayer(String),
    #[error("invalid roster rules: {0}")]
    InvalidRules(String),
}

/// Checks every slate and player invariant. An empty result means the slate
/// is usable; findings are sorted by row so the output does not depend on
/// anything but the slate contents.
pub fn validate_slate(slate: &Slate) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    if slate.is_empty() {
        out.push(Diagnostic::error("empty slate"));
        return out;
    }
    let mut first_seen: HashMap<&str, usize> = HashMap::new();
    for (i, p) in slate.players().iter().enumerate() {
        let row = i + 1;
        let subject = if p.id.is_empty() { format!("row {row}") } else { p.id.clone() };
        if p.id.trim().is_empty() {
            out.push(Diagnostic::error("empty id").at_line(row).about(subject.clone()));
        } else if let Some(first) = first_seen.get(p.id.as_str()) {
            out.push(
                Diagnostic::error(format!("duplicate id (first seen at row {first})"))
                    .at_line(row)
                    .about(subject.clone()),
            );
        } else {
            first_seen.insert(p.id.as_str(), row);
        }
        if p.positions.is_empty() {
            out.push(Diagnostic::error("no positions").at_line(row).about(subject.clone()));
        }
        if p.salary < 0 {
            out.push(Diagnostic::error("negative salary").at_line(row).about(subject.clone()));
        }
    }
    out
}

/// Sums salary, projection and actual over `ids`.
pub fn lineup_totals<'a>(ids: impl IntoIterator<Item = &'a str>, slate: &Slate) -> Result<Totals, ModelError> {
    let mut salary = 0i64;
    let mut projection = Points::ZERO;
    let mut actual = Some(Points::ZERO);
    for id in ids {
        let p = slate
            .player(id)
            .ok_or_else(|| ModelError::UnknownPlayer(id.to_string()))?;
        salary += p.salary;
        projection += p.projection;
        actual = match (actual, p.actual) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
    }
    Ok(Totals {
        salary,
        projection,
        actual,
    })
}

/// True iff `lineup` is a legal entry under `rules`: every unit filled exactly
/// once by an eligible, distinct player, within the cap, with correct totals.
pub fn check_lineup(lineup: &Lineup, slate: &Slate, rules: &RosterRules) -> Result<bool, ModelError> {
    for a in &lineup.assignments {
        if slate.player(&a.player_id).is_none() {
            return Err(ModelError::UnknownPlayer(a.player_id.clone()));
        }
    }
    let mut expected: Vec<String> = rules.unit_names();
    let mut got: Vec<String> = lineup.assignments.iter().map(|a| a.slot.clone()).collect();
    expected.sort();
    got.sort();
    if expected != got {
        return Ok(false);
    }
    let distinct: HashSet<&str> = lineup.player_ids().collect();
    if distinct.len() != lineup.assignments.len() {
        return Ok(false);
    }
    for a in &lineup.assignments {
        let slot = rules.slot_of_unit(&a.slot).expect("unit names matched above");
        let player = slate.player(&a.player_id).expect("checked above");
        if !player.positions.intersects(slot.eligible) {
            return Ok(false);
        }
    }
    let totals = lineup_totals(lineup.player_ids(), slate)?;
    Ok(totals.salary <= rules.salary_cap()
        && totals.salary == lineup.total_salary
        && totals.projection == lineup.total_projection
        && totals.actual == lineup.total_actual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::m9;

    fn pts(v: f64) -> Points {
        Points::from_f64(v)
    }

    #[test]
    fn position_tokens_round_trip() {
        for p in Position::ALL {
            assert_eq!(p.as_str().parse::<Position>().unwrap(), p);
        }
        assert!("DH".parse::<Position>().is_err());
        assert!("1b".parse::<Position>().is_err());
    }

    #[test]
    fn position_set_parses_slash_lists() {
        let s: PositionSet = "C/1B".parse().unwrap();
        assert!(s.contains(Position::C) && s.contains(Position::B1));
        assert_eq!(s.len(), 2);
        assert_eq!(s.to_string(), "C/1B");
        assert!("C/XX".parse::<PositionSet>().is_err());
    }

    #[test]
    fn default_rules_shape() {
        let r = RosterRules::default();
        assert_eq!(r.roster_size(), 9);
        assert_eq!(r.hitter_slots(), 8);
        assert_eq!(r.salary_cap(), 35_000);
        assert_eq!(
            r.unit_names(),
            ["P", "C/1B", "2B", "3B", "SS", "OF1", "OF2", "OF3", "UTIL"]
        );
        let util = r.slot_of_unit("UTIL").unwrap();
        assert!(!util.eligible.contains(Position::P));
        let r = r.with_util_pitcher(true);
        assert!(r.slot_of_unit("UTIL").unwrap().eligible.contains(Position::P));
    }

    #[test]
    fn rules_reject_bad_tables() {
        let p = PositionSet::of(&[Position::P]);
        assert!(RosterRules::new(vec![SlotSpec::new("P", p, 1)], 0).is_err());
        assert!(RosterRules::new(vec![], 100).is_err());
        assert!(RosterRules::new(vec![SlotSpec::new("P", p, 0)], 100).is_err());
        assert!(RosterRules::new(vec![SlotSpec::new("P", p, 1), SlotSpec::new("P", p, 1)], 100).is_err());
        assert!(RosterRules::new(vec![SlotSpec::new("OF", p, 2), SlotSpec::new("OF1", p, 1)], 100).is_err());
    }

    #[test]
    fn validate_accepts_well_formed_slate() {
        let (slate, _) = m9();
        assert!(validate_slate(&slate).is_empty());
    }

    #[test]
    fn validate_flags_duplicate_id() {
        let of = PositionSet::of(&[Position::OF]);
        let players = vec![
            Player::new("p1", "A", of, 3000, pts(5.0)),
            Player::new("p2", "A", of, 3000, pts(5.0)),
            Player::new("p1", "B", of, 3100, pts(6.0)),
        ];
        let diags = validate_slate(&Slate::new(NaiveDate::default(), players));
        assert_eq!(diags.len(), 1, "{diags:?}");
        assert_eq!(diags[0].subject.as_deref(), Some("p1"));
        assert_eq!(diags[0].line, Some(3));
        assert!(diags[0].rule.starts_with("duplicate id"));
    }

    #[test]
    fn validate_flags_empty_positions_and_negative_salary() {
        let p = Player::new("a", "T", PositionSet::EMPTY, -5, pts(1.0));
        let slate = Slate::new(NaiveDate::default(), vec![p]);
        let rules: Vec<String> = validate_slate(&slate).into_iter().map(|d| d.rule).collect();
        assert_eq!(rules, ["no positions", "negative salary"]);
        assert_eq!(validate_slate(&Slate::new(NaiveDate::default(), vec![]))[0].rule, "empty slate");
    }

    #[test]
    fn check_lineup_m9() {
        let (slate, lineup) = m9();
        let rules = RosterRules::default();
        assert!(check_lineup(&lineup, &slate, &rules).unwrap());

        // pitcher in the SS slot
        let mut bad = lineup.clone();
        let p_idx = bad.assignments.iter().position(|a| a.slot == "P").unwrap();
        let ss_idx = bad.assignments.iter().position(|a| a.slot == "SS").unwrap();
        let pitcher = bad.assignments[p_idx].player_id.clone();
        let ss = bad.assignments[ss_idx].player_id.clone();
        bad.assignments[ss_idx].player_id = pitcher;
        bad.assignments[p_idx].player_id = ss;
        assert!(!check_lineup(&bad, &slate, &rules).unwrap());

        // salary raised so the total is 35001
        let mut players = slate.players().to_vec();
        let pitcher = players.iter_mut().find(|p| p.id == "m9_p").unwrap();
        pitcher.salary += 35_001 - 27_000;
        let pricey = Slate::new(slate.date, players);
        let relabeled = Lineup::from_assignments(lineup.assignments.clone(), &pricey).unwrap();
        assert_eq!(relabeled.total_salary, 35_001);
        assert!(!check_lineup(&relabeled, &pricey, &rules).unwrap());
    }

    #[test]
    fn check_lineup_rejects_unknown_id_and_bad_totals() {
        let (slate, lineup) = m9();
        let rules = RosterRules::default();
        let mut unknown = lineup.clone();
        unknown.assignments[0].player_id = "ghost".into();
        assert_eq!(
            check_lineup(&unknown, &slate, &rules),
            Err(ModelError::UnknownPlayer("ghost".into()))
        );
        let mut wrong = lineup.clone();
        wrong.total_salary += 1;
        assert!(!check_lineup(&wrong, &slate, &rules).unwrap());
        let mut short = lineup;
        short.assignments.pop();
        assert!(!check_lineup(&short, &slate, &rules).unwrap());
    }

    #[test]
    fn totals() {
        let (slate, _) = m9();
        let t = lineup_totals([], &slate).unwrap();
        assert_eq!((t.salary, t.projection, t.actual), (0, Points::ZERO, Some(Points::ZERO)));

        let one = Player::new("a", "T", PositionSet::of(&[Position::OF]), 2000, pts(8.5)).with_actual(pts(3.0));
        let s = Slate::new(NaiveDate::default(), vec![one]);
        let t = lineup_totals(["a"], &s).unwrap();
        assert_eq!((t.salary, t.projection, t.actual), (2000, pts(8.5), Some(pts(3.0))));
        assert!(lineup_totals(["zz"], &s).is_err());

        // fixture table summed by hand: salaries 5000+2800+3000+3200+2900+3100+2600+2400+2000,
        // projections 15.2+8.1+9.4+7.7+8.8+9.0+10.3+8.6+7.2, actuals 21+3+12.5+-1+6+9+15.25+0+4
        let ids: Vec<&str> = slate.players().iter().map(|p| p.id.as_str()).collect();
        let t = lineup_totals(ids, &slate).unwrap();
        assert_eq!(t.salary, 27_000);
        assert_eq!(t.projection, "84.3".parse().unwrap());
        assert_eq!(t.actual, Some("69.75".parse().unwrap()));
    }

    #[test]
    fn missing_actual_makes_total_absent() {
        let (slate, _) = m9();
        let mut players = slate.players().to_vec();
        players[0].actual = None;
        let s = Slate::new(slate.date, players);
        let ids: Vec<&str> = s.players().iter().map(|p| p.id.as_str()).collect();
        assert_eq!(lineup_totals(ids, &s).unwrap().actual, None);
    }
}
