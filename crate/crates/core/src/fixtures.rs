//! Small hand-built pools used by tests, examples and the CLI docs.

use chrono::NaiveDate;

use crate::model::{Lineup, Player, PositionSet, Slate, SlotAssignment};
use crate::points::Points;

fn player(id: &str, team: &str, pos: &str, salary: i64, proj: &str, actual: &str) -> Player {
    Player::new(id, team, pos.parse::<PositionSet>().expect("fixture positions"), salary, proj.parse().expect("fixture points"))
        .with_actual(actual.parse::<Points>().expect("fixture points"))
}

/// Nine players, one per slot unit, with exactly one legal player set under
/// the default rules (the catcher and first baseman share C/1B and UTIL).
/// Total salary 27,000.
pub fn m9() -> (Slate, Lineup) {
    let players = vec![
        player("m9_p", "NYY", "P", 5000, "15.2", "21"),
        player("m9_c", "NYY", "C", 2800, "8.1", "3"),
        player("m9_1b", "BOS", "1B", 3000, "9.4", "12.5"),
        player("m9_2b", "BOS", "2B", 3200, "7.7", "-1"),
        player("m9_3b", "NYY", "3B", 2900, "8.8", "6"),
        player("m9_ss", "BOS", "SS", 3100, "9.0", "9"),
        player("m9_of1", "NYY", "OF", 2600, "10.3", "15.25"),
        player("m9_of2", "BOS", "OF", 2400, "8.6", "0"),
        player("m9_of3", "NYY", "OF", 2000, "7.2", "4"),
    ];
    let slate = Slate::new(NaiveDate::from_ymd_opt(2019, 6, 1).expect("valid date"), players);
    let assignments = [
        ("P", "m9_p"),
        ("C/1B", "m9_c"),
        ("2B", "m9_2b"),
        ("3B", "m9_3b"),
        ("SS", "m9_ss"),
        ("OF1", "m9_of1"),
        ("OF2", "m9_of2"),
        ("OF3", "m9_of3"),
        ("UTIL", "m9_1b"),
    ]
    .into_iter()
    .map(|(slot, id)| SlotAssignment {
        slot: slot.to_string(),
        player_id: id.to_string(),
    })
    .collect();
    let lineup = Lineup::from_assignments(assignments, &slate).expect("fixture ids exist");
    (slate, lineup)
}
