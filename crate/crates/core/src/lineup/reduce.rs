//! Dominance presolve.
//!
//! Player `i` dominates `j` when `i` fits every slot `j` fits, costs no more,
//! scores no less, appears in no earlier lineup that `j` is missing from, and
//! (with stacking on) shares `j`'s team and hitter status. If a lineup uses
//! `j` while some dominator sits out, swapping them keeps every row
//! satisfied and never lowers the objective. A set of dominators whose
//! eligible slot groups hold `u` units in total can fill at most `u - 1` of
//! them next to `j`, so once `j` has such a set of `u` or more, one is always
//! free and `j` can be dropped without changing the optimum. Exact ties are
//! ordered by slate position.

use std::collections::{BTreeSet, HashSet};

use crate::model::{Lineup, RosterRules, Slate};

use super::PortfolioConfig;

struct Candidate<'a> {
    id: &'a str,
    locked: bool,
    slots: u64,
    salary: i64,
    value: i64,
    /// Bit `k` set when the player is in prior lineup `k`.
    seen_in: Vec<u64>,
    team: &'a str,
    hitter: bool,
}

impl Candidate<'_> {
    fn weakly_dominates(&self, other: &Self, stacking: bool) -> bool {
        self.slots & other.slots == other.slots
            && self.salary <= other.salary
            && self.value >= other.value
            && self.seen_in.iter().zip(&other.seen_in).all(|(a, b)| a & !b == 0)
            && (!stacking || (self.team == other.team && self.hitter == other.hitter))
    }
}

/// Players that can be removed before solving without changing the optimal
/// objective. Locked players are never removed. Players already in `banned`
/// or excluded neither count as dominators nor appear in the result.
pub fn dominated_players(
    slate: &Slate,
    rules: &RosterRules,
    config: &PortfolioConfig,
    priors: &[Lineup],
    banned: &BTreeSet<String>,
) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    if rules.slots().len() > 64 {
        return out;
    }
    let words = priors.len().div_ceil(64);
    let mut seen = HashSet::new();
    let mut pool: Vec<Candidate> = Vec::new();
    for p in slate.players() {
        if !seen.insert(p.id.as_str()) {
            continue;
        }
        let locked = config.locks.contains(&p.id);
        if !locked && (banned.contains(&p.id) || config.excludes.contains(&p.id)) {
            continue;
        }
        let slots = rules
            .slots()
            .iter()
            .enumerate()
            .filter(|(_, s)| p.positions.intersects(s.eligible))
            .fold(0u64, |m, (i, _)| m | 1 << i);
        let Some(value) = config.objective_source.value(p) else {
            continue;
        };
        if slots == 0 {
            continue;
        }
        let mut seen_in = vec![0u64; words];
        for (k, l) in priors.iter().enumerate() {
            if l.contains(&p.id) {
                seen_in[k / 64] |= 1 << (k % 64);
            }
        }
        pool.push(Candidate {
            id: &p.id,
            locked,
            slots,
            salary: p.salary,
            value: value.micros(),
            seen_in,
            team: &p.team,
            hitter: p.is_hitter(),
        });
    }

    let units = |mask: u64| -> u32 {
        rules
            .slots()
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, s)| s.count)
            .sum()
    };
    let stacking = config.stacking.is_some();
    for (j, b) in pool.iter().enumerate() {
        if b.locked {
            continue;
        }
        let mut dominators: Vec<(u32, usize)> = pool
            .iter()
            .enumerate()
            .filter(|&(i, a)| {
                i != j && a.weakly_dominates(b, stacking) && (i < j || !b.weakly_dominates(a, stacking))
            })
            .map(|(i, a)| (units(a.slots), i))
            .collect();
        dominators.sort_unstable();
        let mut union = 0u64;
        for (k, &(_, i)) in dominators.iter().enumerate() {
            union |= pool[i].slots;
            if k as u32 + 1 >= units(union) {
                out.insert(b.id.to_string());
                break;
            }
        }
    }
    out
}
