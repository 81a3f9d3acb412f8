//! Seeded synthetic slates. Same seed, same slate, on every platform.

use chrono::NaiveDate;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::model::{Player, Position, PositionSet, Slate};
use crate::points::Points;

/// Position mix cycled through when drawing players. Every twenty players
/// contain three pitchers and enough of each hitting position to fill
/// several distinct lineups.
const TEMPLATE: [&str; 20] = [
    "P", "C", "1B", "2B", "3B", "SS", "OF", "OF", "OF", "P", "C/1B", "2B/SS", "OF", "1B/OF", "3B", "OF",
    "SS", "2B", "C", "P",
];

fn draw_player(rng: &mut ChaCha8Rng, id: String, team: String, positions: &str) -> Player {
    let positions: PositionSet = positions.parse().expect("template positions");
    let pitcher = positions.contains(Position::P);
    let quality: f64 = rng.gen();
    // Right-skewed like real price lists: mean near $3,900, range $2,000 to $11,500.
    let salary = 2000 + (quality.powi(4) * 95.0).round() as i64 * 100;
    let (base, spread, noise_sd, actual_sd) = if pitcher {
        (8.0, 36.0, 3.0, 12.0)
    } else {
        (2.0, 12.0, 1.5, 7.0)
    };
    let noise = Normal::new(0.0, noise_sd).expect("finite sd");
    let projection = (base + quality * spread + noise.sample(rng)).max(0.0);
    let ceiling = projection * rng.gen_range(1.6..2.4) + 2.0;
    let outcome = Normal::new(projection, actual_sd).expect("finite sd");
    let actual = (outcome.sample(rng) * 4.0).round() / 4.0;
    Player::new(&id, &team, positions, salary, Points::from_f64(projection))
        .with_name(&format!("Player {id}"))
        .with_ceiling(Points::from_f64(ceiling))
        .with_actual(Points::from_f64(actual.max(-15.0)))
}

/// `n` players spread over `n / 12` teams (between 2 and 30).
pub fn slate(seed: u64, n: usize) -> Slate {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let teams = (n / 12).clamp(2, 30);
    let players = (0..n)
        .map(|i| {
            let team = format!("T{:02}", rng.gen_range(0..teams));
            draw_player(&mut rng, format!("p{i:03}"), team, TEMPLATE[i % TEMPLATE.len()])
        })
        .collect();
    Slate::new(NaiveDate::from_ymd_opt(2019, 6, 1).expect("valid date"), players)
}

/// Two full teams of twelve: two pitchers and ten hitters each.
pub fn two_team_slate(seed: u64) -> Slate {
    const ROSTER: [&str; 12] = ["P", "P", "C", "1B", "2B", "3B", "SS", "OF", "OF", "OF", "OF", "1B/OF"];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut players = Vec::new();
    for team in ["HOME", "AWAY"] {
        for (k, pos) in ROSTER.iter().enumerate() {
            players.push(draw_player(&mut rng, format!("{}{k:02}", &team[..1]), team.to_string(), pos));
        }
    }
    Slate::new(NaiveDate::from_ymd_opt(2019, 6, 1).expect("valid date"), players)
}

/// Consecutive daily slates starting at `start`.
pub fn slates(seed: u64, days: usize, n: usize, start: NaiveDate) -> Vec<Slate> {
    (0..days)
        .map(|d| {
            let mut s = slate(seed.wrapping_add(d as u64), n);
            s.date = start + chrono::Days::new(d as u64);
            s
        })
        .collect()
}
