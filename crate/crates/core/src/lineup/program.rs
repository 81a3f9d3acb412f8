use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::binprog::{BinaryProgram, LinearConstraint, Sense, Solution};
use crate::model::{Lineup, RosterRules, Slate, SlotAssignment};

use super::{LineupError, PortfolioConfig, Stacking};

/// One `x[player, slot]` decision variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentVar {
    pub player_id: String,
    pub slot: String,
    player_index: usize,
    slot_index: usize,
}

/// A lineup problem encoded as a [`BinaryProgram`], with the mapping back to
/// players and slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineupProgram {
    pub program: BinaryProgram,
    /// Assignment variables occupy indices `0..vars.len()`.
    vars: Vec<AssignmentVar>,
    by_pair: HashMap<(String, String), usize>,
    player_vars: BTreeMap<String, Vec<usize>>,
    /// Stack indicator per team, appended after the assignment variables.
    team_vars: BTreeMap<String, usize>,
    hitter_slots: u32,
    hitters: BTreeSet<String>,
    teams: BTreeMap<String, String>,
}

impl LineupProgram {
    pub fn assignment_vars(&self) -> &[AssignmentVar] {
        &self.vars
    }

    pub fn var_index(&self, player_id: &str, slot: &str) -> Option<usize> {
        self.by_pair.get(&(player_id.to_string(), slot.to_string())).copied()
    }

    pub fn assignment(&self, var: usize) -> Option<&AssignmentVar> {
        self.vars.get(var)
    }

    /// All assignment variables of one player; their sum is the player's
    /// selection indicator.
    pub fn player_indicator(&self, player_id: &str) -> &[usize] {
        self.player_vars.get(player_id).map_or(&[], Vec::as_slice)
    }

    pub fn players(&self) -> impl Iterator<Item = &str> {
        self.player_vars.keys().map(String::as_str)
    }

    pub fn team_var(&self, team: &str) -> Option<usize> {
        self.team_vars.get(team).copied()
    }

    /// Reads a solution back into a lineup. Within a multi-unit slot players
    /// fill `OF1..OF3` in slate order.
    pub fn decode(&self, solution: &Solution, slate: &Slate, rules: &RosterRules) -> Result<Lineup, LineupError> {
        let mut groups: Vec<Vec<usize>> = vec![Vec::new(); rules.slots().len()];
        for &v in &solution.selected {
            if let Some(a) = self.vars.get(v) {
                groups[a.slot_index].push(a.player_index);
            }
        }
        let mut assignments = Vec::with_capacity(rules.roster_size() as usize);
        for (slot, mut members) in rules.slots().iter().zip(groups) {
            members.sort_unstable();
            for (unit, p) in slot.unit_names().into_iter().zip(members) {
                assignments.push(SlotAssignment {
                    slot: unit,
                    player_id: slate.players()[p].id.clone(),
                });
            }
        }
        Ok(Lineup::from_assignments(assignments, slate)?)
    }
}

/// Encodes one lineup problem.
///
/// Players in `banned` or `config.excludes` get no variables unless they are
/// locked; locks take precedence. Each lineup in `prior_lineups` adds one
/// overlap cut `Σ indicator(p) ≤ max_overlap` over its members.
pub fn build_program(
    slate: &Slate,
    rules: &RosterRules,
    config: &PortfolioConfig,
    prior_lineups: &[Lineup],
    banned: &BTreeSet<String>,
) -> Result<LineupProgram, LineupError> {
    config.validate(rules)?;
    for id in &config.locks {
        let p = slate
            .player(id)
            .ok_or_else(|| LineupError::UnknownLock(id.clone()))?;
        if !rules.slots().iter().any(|s| p.positions.intersects(s.eligible)) {
            return Err(LineupError::LockIneligible(id.clone()));
        }
    }

    let mut program = BinaryProgram::new(Vec::new());
    let mut vars = Vec::new();
    let mut by_pair = HashMap::new();
    let mut player_vars: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    let mut hitters = BTreeSet::new();
    let mut teams = BTreeMap::new();
    let mut slot_terms: Vec<Vec<(usize, i64)>> = vec![Vec::new(); rules.slots().len()];
    let mut salary_terms = Vec::new();

    for (pi, p) in slate.players().iter().enumerate() {
        let locked = config.locks.contains(&p.id);
        if !locked && (banned.contains(&p.id) || config.excludes.contains(&p.id)) {
            continue;
        }
        if player_vars.contains_key(&p.id) {
            // duplicate id; validate_slate reports it
            continue;
        }
        let eligible: Vec<usize> = rules
            .slots()
            .iter()
            .enumerate()
            .filter(|(_, s)| p.positions.intersects(s.eligible))
            .map(|(i, _)| i)
            .collect();
        if eligible.is_empty() {
            continue;
        }
        let value = config
            .objective_source
            .value(p)
            .ok_or_else(|| LineupError::MissingObjective {
                player: p.id.clone(),
                objective: config.objective_source,
            })?;
        let mine = player_vars.entry(p.id.clone()).or_default();
        for si in eligible {
            let v = program.add_var(value.micros());
            let slot = rules.slots()[si].name.clone();
            by_pair.insert((p.id.clone(), slot.clone()), v);
            vars.push(AssignmentVar {
                player_id: p.id.clone(),
                slot,
                player_index: pi,
                slot_index: si,
            });
            mine.push(v);
            slot_terms[si].push((v, 1));
            if p.salary != 0 {
                salary_terms.push((v, p.salary));
            }
        }
        if p.is_hitter() {
            hitters.insert(p.id.clone());
        }
        teams.insert(p.id.clone(), p.team.clone());
    }

    for (slot, terms) in rules.slots().iter().zip(slot_terms) {
        program.add_constraint(LinearConstraint::eq(terms, slot.count as i64)?)?;
    }
    for ids in player_vars.values().filter(|v| v.len() > 1) {
        let terms = ids.iter().map(|&v| (v, 1)).collect();
        program.add_constraint(LinearConstraint::le(terms, 1)?)?;
    }
    program.add_constraint(LinearConstraint::le(salary_terms, rules.salary_cap())?)?;

    let overlap = config.overlap_limit(rules) as i64;
    for prior in prior_lineups {
        let members: BTreeSet<&str> = prior.player_ids().collect();
        let terms = members
            .iter()
            .flat_map(|id| player_vars.get(*id).into_iter().flatten())
            .map(|&v| (v, 1))
            .collect();
        program.add_constraint(LinearConstraint::le(terms, overlap)?)?;
    }
    for id in &config.locks {
        let terms = player_vars[id].iter().map(|&v| (v, 1)).collect();
        program.add_constraint(LinearConstraint::eq(terms, 1)?)?;
    }

    let lp = LineupProgram {
        program,
        vars,
        by_pair,
        player_vars,
        team_vars: BTreeMap::new(),
        hitter_slots: rules.hitter_slots(),
        hitters,
        teams,
    };
    match config.stacking {
        Some(stack) => apply_stacking(lp, slate, stack),
        None => Ok(lp),
    }
}

/// Adds a binary `y[t]` per team with
/// `Σ hitter indicators of t − size·y[t] ≥ 0` and `Σ y[t] ≥ count`, so at
/// least `count` teams each supply `size` hitters. Pitchers never count.
pub fn apply_stacking(
    mut lp: LineupProgram,
    slate: &Slate,
    stack: Stacking,
) -> Result<LineupProgram, LineupError> {
    if stack.size < 2 || stack.count < 1 {
        return Err(LineupError::Config(format!(
            "stack needs size >= 2 and count >= 1, got {}x{}",
            stack.size, stack.count
        )));
    }
    if stack.size * stack.count > lp.hitter_slots {
        return Err(LineupError::StackDemand {
            size: stack.size,
            count: stack.count,
            hitter_slots: lp.hitter_slots,
        });
    }
    let mut by_team: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (id, vars) in &lp.player_vars {
        if !lp.hitters.contains(id) {
            continue;
        }
        let team = lp
            .teams
            .get(id)
            .map(String::as_str)
            .or_else(|| slate.player(id).map(|p| p.team.as_str()))
            .unwrap_or_default();
        by_team.entry(team).or_default().extend(vars.iter().copied());
    }
    let mut indicators = Vec::new();
    let mut team_vars = BTreeMap::new();
    for (team, vars) in by_team {
        let y = lp.program.add_var(0);
        let mut terms: Vec<(usize, i64)> = vars.into_iter().map(|v| (v, 1)).collect();
        terms.push((y, -(stack.size as i64)));
        lp.program.add_constraint(LinearConstraint::new(terms, Sense::Ge, 0)?)?;
        indicators.push((y, 1));
        team_vars.insert(team.to_string(), y);
    }
    lp.program
        .add_constraint(LinearConstraint::ge(indicators, stack.count as i64)?)?;
    lp.team_vars = team_vars;
    Ok(lp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binprog::solve;
    use crate::fixtures::m9;
    use crate::lineup::{LineupError, ObjectiveSource};

    fn rules() -> RosterRules {
        RosterRules::default()
    }

    #[test]
    fn m9_variable_count_matches_eligibility_table() {
        // P: {P} -> 1. C, 1B: {C/1B, UTIL} -> 2 each. 2B, 3B, SS: own slot + UTIL -> 2 each.
        // OF x3: {OF, UTIL} -> 2 each. Total 1 + 2*2 + 3*2 + 3*2 = 17.
        let (slate, _) = m9();
        let lp = build_program(&slate, &rules(), &PortfolioConfig::default(), &[], &BTreeSet::new()).unwrap();
        assert_eq!(lp.program.n_vars(), 17);
        assert_eq!(lp.assignment_vars().len(), 17);
        assert_eq!(lp.player_indicator("m9_p").len(), 1);
        assert_eq!(lp.player_indicator("m9_1b").len(), 2);
        assert!(lp.var_index("m9_1b", "UTIL").is_some());
        assert!(lp.var_index("m9_p", "UTIL").is_none());
        // 7 slot rows + 8 multi-eligible player rows + salary row, no overlap rows
        assert_eq!(lp.program.constraints().len(), 7 + 8 + 1);
    }

    #[test]
    fn var_map_is_a_bijection() {
        let (slate, _) = m9();
        let lp = build_program(&slate, &rules(), &PortfolioConfig::default(), &[], &BTreeSet::new()).unwrap();
        for (i, a) in lp.assignment_vars().iter().enumerate() {
            assert_eq!(lp.var_index(&a.player_id, &a.slot), Some(i));
            assert_eq!(lp.assignment(i), Some(a));
        }
        let total: usize = lp.players().map(|id| lp.player_indicator(id).len()).sum();
        assert_eq!(total, lp.program.n_vars());
    }

    #[test]
    fn one_prior_adds_one_overlap_cut() {
        let (slate, lineup) = m9();
        let cfg = PortfolioConfig::default().with_max_overlap(8);
        let base = build_program(&slate, &rules(), &cfg, &[], &BTreeSet::new()).unwrap();
        let lp = build_program(&slate, &rules(), &cfg, std::slice::from_ref(&lineup), &BTreeSet::new()).unwrap();
        assert_eq!(lp.program.constraints().len(), base.program.constraints().len() + 1);
        let cut = lp.program.constraints().last().unwrap();
        assert_eq!(cut.sense(), Sense::Le);
        assert_eq!(cut.rhs(), 8);
        let players: BTreeSet<&str> = cut
            .terms()
            .iter()
            .map(|(v, _)| lp.assignment(*v).unwrap().player_id.as_str())
            .collect();
        assert_eq!(players.len(), 9);
        assert_eq!(players, lineup.player_ids().collect());
        assert!(cut.terms().iter().all(|(_, c)| *c == 1));
    }

    #[test]
    fn banned_players_get_no_variables_unless_locked() {
        let (slate, _) = m9();
        let banned: BTreeSet<String> = ["m9_of1".to_string()].into();
        let lp = build_program(&slate, &rules(), &PortfolioConfig::default(), &[], &banned).unwrap();
        assert!(lp.player_indicator("m9_of1").is_empty());
        let cfg = PortfolioConfig::default().lock("m9_of1");
        let lp = build_program(&slate, &rules(), &cfg, &[], &banned).unwrap();
        assert_eq!(lp.player_indicator("m9_of1").len(), 2);
        let cfg = PortfolioConfig::default().exclude("m9_c");
        let lp = build_program(&slate, &rules(), &cfg, &[], &BTreeSet::new()).unwrap();
        assert!(lp.player_indicator("m9_c").is_empty());
    }

    #[test]
    fn lock_errors() {
        let (slate, _) = m9();
        let cfg = PortfolioConfig::default().lock("ghost");
        assert_eq!(
            build_program(&slate, &rules(), &cfg, &[], &BTreeSet::new()),
            Err(LineupError::UnknownLock("ghost".into()))
        );
        // a pitcher-only rule set leaves outfielders with nowhere to go
        let p_only = RosterRules::new(
            vec![crate::model::SlotSpec::new("P", "P".parse().unwrap(), 1)],
            10_000,
        )
        .unwrap();
        let cfg = PortfolioConfig::default().lock("m9_of1");
        assert_eq!(
            build_program(&slate, &p_only, &cfg, &[], &BTreeSet::new()),
            Err(LineupError::LockIneligible("m9_of1".into()))
        );
    }

    #[test]
    fn ceiling_objective_requires_ceilings() {
        let (slate, _) = m9();
        let cfg = PortfolioConfig::default().with_objective(ObjectiveSource::Ceiling);
        assert!(matches!(
            build_program(&slate, &rules(), &cfg, &[], &BTreeSet::new()),
            Err(LineupError::MissingObjective { .. })
        ));
    }

    #[test]
    fn switching_objective_keeps_constraint_rows() {
        let (slate, lineup) = m9();
        let players = slate
            .players()
            .iter()
            .map(|p| p.clone().with_ceiling(p.projection + p.projection))
            .collect();
        let slate = Slate::new(slate.date, players);
        let base = PortfolioConfig::default().with_max_overlap(7).with_stacking(3, 1);
        let a = build_program(&slate, &rules(), &base, std::slice::from_ref(&lineup), &BTreeSet::new()).unwrap();
        let cfg = base.with_objective(ObjectiveSource::Ceiling);
        let b = build_program(&slate, &rules(), &cfg, &[lineup], &BTreeSet::new()).unwrap();
        assert_eq!(a.program.constraints(), b.program.constraints());
        assert_ne!(a.program.objective(), b.program.objective());
    }

    #[test]
    fn stacking_rows_and_bounds() {
        let (slate, _) = m9();
        let cfg = PortfolioConfig::default();
        let lp = build_program(&slate, &rules(), &cfg, &[], &BTreeSet::new()).unwrap();
        let stacked = apply_stacking(lp.clone(), &slate, Stacking { size: 4, count: 1 }).unwrap();
        // two teams -> two indicators, two team rows and one count row
        assert_eq!(stacked.program.n_vars(), lp.program.n_vars() + 2);
        assert_eq!(stacked.program.constraints().len(), lp.program.constraints().len() + 3);
        assert!(stacked.team_var("NYY").is_some() && stacked.team_var("BOS").is_some());
        assert_eq!(
            apply_stacking(lp.clone(), &slate, Stacking { size: 2, count: 5 }),
            Err(LineupError::StackDemand {
                size: 2,
                count: 5,
                hitter_slots: 8
            })
        );
        // M9 has 4 NYY hitters (C, 3B, OF1, OF3) and 4 BOS hitters, so a 4-stack
        // is satisfiable while 5 is not
        let sol = solve(&stacked.program).unwrap();
        assert!(sol.is_optimal());
        let five = apply_stacking(lp, &slate, Stacking { size: 5, count: 1 }).unwrap();
        assert!(!solve(&five.program).unwrap().is_optimal());
    }

    #[test]
    fn decode_m9() {
        let (slate, expected) = m9();
        let lp = build_program(&slate, &rules(), &PortfolioConfig::default(), &[], &BTreeSet::new()).unwrap();
        let sol = solve(&lp.program).unwrap();
        let lineup = lp.decode(&sol, &slate, &rules()).unwrap();
        assert_eq!(lineup.member_set(), expected.member_set());
        assert_eq!(lineup.total_salary, 27_000);
        assert!(crate::model::check_lineup(&lineup, &slate, &rules()).unwrap());
    }
}
