//! Bounded dual simplex on a dense tableau, warm-started across
//! branch-and-bound nodes.
//!
//! Every structural variable is boxed in `[0, 1]`, so any basis can be made
//! dual feasible by parking each nonbasic structural at the bound matching its
//! reduced cost. Branching only tightens structural bounds, which therefore
//! never breaks dual feasibility; each node resumes from the previous basis.

use super::{BinaryProgram, Sense};

const PRIMAL_TOL: f64 = 1e-9;
const DUAL_TOL: f64 = 1e-9;
const PIVOT_TOL: f64 = 1e-9;
const DROP_TOL: f64 = 1e-13;
const REFACTOR_EVERY: usize = 2_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    Basic,
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(super) enum LpStatus {
    Optimal,
    /// Proven by a Farkas-style row certificate.
    Infeasible,
    /// Iteration budget exhausted or certificate check failed.
    Stalled,
}

pub(super) struct DualSimplex {
    m: usize,
    n: usize,
    /// `n + m + 1`: structurals, slacks, then the right-hand side.
    width: usize,
    cols: Vec<Vec<(usize, f64)>>,
    rhs: Vec<f64>,
    senses: Vec<Sense>,
    cost: Vec<f64>,
    /// Divide a scaled objective by this to get back to the program's units.
    pub(super) cost_scale: f64,
    lower: Vec<f64>,
    upper: Vec<f64>,
    tab: Vec<f64>,
    d: Vec<f64>,
    basis: Vec<usize>,
    state: Vec<State>,
    value: Vec<f64>,
    since_refactor: usize,
    pub(super) pivots: u64,
    scratch: Vec<(usize, f64)>,
}

impl DualSimplex {
    pub(super) fn new(program: &BinaryProgram) -> Self {
        let n = program.n_vars();
        let m = program.constraints().len();
        let cmax = program
            .objective()
            .iter()
            .map(|c| (*c as f64).abs())
            .fold(0.0, f64::max);
        let cost_scale = if cmax > 0.0 { 1.0 / cmax } else { 1.0 };

        let mut cols = vec![Vec::new(); n];
        let mut rhs = Vec::with_capacity(m);
        let mut senses = Vec::with_capacity(m);
        let mut lower = vec![0.0; n + m];
        let mut upper = vec![1.0; n + m];
        for (i, c) in program.constraints().iter().enumerate() {
            let amax = c
                .terms()
                .iter()
                .map(|(_, a)| (*a as f64).abs())
                .fold(0.0, f64::max);
            let s = if amax > 0.0 { 1.0 / amax } else { 1.0 };
            for &(j, a) in c.terms() {
                if a != 0 {
                    cols[j].push((i, a as f64 * s));
                }
            }
            rhs.push(c.rhs() as f64 * s);
            senses.push(c.sense());
            let (lo, up) = match c.sense() {
                Sense::Le => (0.0, f64::INFINITY),
                Sense::Ge => (f64::NEG_INFINITY, 0.0),
                Sense::Eq => (0.0, 0.0),
            };
            lower[n + i] = lo;
            upper[n + i] = up;
        }
        let mut cost: Vec<f64> = program
            .objective()
            .iter()
            .map(|c| *c as f64 * cost_scale)
            .collect();
        cost.resize(n + m, 0.0);

        let mut lp = DualSimplex {
            m,
            n,
            width: n + m + 1,
            cols,
            rhs,
            senses,
            cost,
            cost_scale,
            lower,
            upper,
            tab: Vec::new(),
            d: Vec::new(),
            basis: Vec::new(),
            state: vec![State::Lower; n + m],
            value: vec![0.0; n + m],
            since_refactor: 0,
            pivots: 0,
            scratch: Vec::new(),
        };
        lp.load_slack_basis();
        for i in 0..m {
            lp.state[n + i] = State::Basic;
        }
        lp.reposition();
        lp
    }

    /// Resets the tableau to `[A | I | b]` with the all-slack basis.
    fn load_slack_basis(&mut self) {
        let (m, n, w) = (self.m, self.n, self.width);
        self.tab.clear();
        self.tab.resize(m * w, 0.0);
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, a) in col {
                self.tab[i * w + j] = a;
            }
        }
        for i in 0..m {
            self.tab[i * w + n + i] = 1.0;
            self.tab[i * w + w - 1] = self.rhs[i];
        }
        self.d = self.cost.clone();
        self.basis = (n..n + m).collect();
    }

    /// Restores every structural to `[0, 1]` and then fixes the listed ones.
    pub(super) fn set_fixings(&mut self, fixings: &[(usize, bool)]) {
        for j in 0..self.n {
            self.lower[j] = 0.0;
            self.upper[j] = 1.0;
        }
        for &(j, v) in fixings {
            let v = if v { 1.0 } else { 0.0 };
            self.lower[j] = v;
            self.upper[j] = v;
        }
        self.reposition();
    }

    /// Parks nonbasic variables at their bounds and recomputes basic values.
    fn reposition(&mut self) {
        let (m, n, w) = (self.m, self.n, self.width);
        let mut active = std::mem::take(&mut self.scratch);
        active.clear();
        for j in 0..n + m {
            if self.state[j] == State::Basic {
                continue;
            }
            if j < n {
                if self.lower[j] == self.upper[j] {
                    self.state[j] = State::Lower;
                } else if self.d[j] > DUAL_TOL {
                    self.state[j] = State::Upper;
                } else {
                    self.state[j] = State::Lower;
                }
            } else if self.state[j] == State::Lower && self.lower[j].is_infinite() {
                self.state[j] = State::Upper;
            } else if self.state[j] == State::Upper && self.upper[j].is_infinite() {
                self.state[j] = State::Lower;
            }
            let v = match self.state[j] {
                State::Upper => self.upper[j],
                _ => self.lower[j],
            };
            self.value[j] = v;
            if v != 0.0 {
                active.push((j, v));
            }
        }
        for i in 0..m {
            let row = &self.tab[i * w..(i + 1) * w];
            let mut v = row[w - 1];
            for &(j, x) in &active {
                v -= row[j] * x;
            }
            self.value[self.basis[i]] = v;
        }
        self.scratch = active;
    }

    fn pivot(&mut self, r: usize, q: usize) {
        let (m, nm, w) = (self.m, self.n + self.m, self.width);
        let inv = 1.0 / self.tab[r * w + q];
        let mut nz = std::mem::take(&mut self.scratch);
        nz.clear();
        {
            let prow = &mut self.tab[r * w..(r + 1) * w];
            for (j, x) in prow.iter_mut().enumerate() {
                let v = *x * inv;
                if v.abs() < DROP_TOL {
                    *x = 0.0;
                } else {
                    *x = v;
                    nz.push((j, v));
                }
            }
            prow[q] = 1.0;
        }
        for i in 0..m {
            if i == r {
                continue;
            }
            let row = &mut self.tab[i * w..(i + 1) * w];
            let f = row[q];
            if f == 0.0 {
                continue;
            }
            for &(j, v) in &nz {
                let x = row[j] - f * v;
                row[j] = if x.abs() < DROP_TOL { 0.0 } else { x };
            }
            row[q] = 0.0;
        }
        let f = self.d[q];
        if f != 0.0 {
            for &(j, v) in &nz {
                if j < nm {
                    self.d[j] -= f * v;
                }
            }
            self.d[q] = 0.0;
        }
        self.scratch = nz;
        self.basis[r] = q;
        self.state[q] = State::Basic;
        self.pivots += 1;
        self.since_refactor += 1;
    }

    /// Rebuilds the tableau for the current basis from the original rows.
    fn refactor(&mut self) {
        let (n, m, w) = (self.n, self.m, self.width);
        let target = self.basis.clone();
        let mut in_target = vec![false; n + m];
        for &j in &target {
            in_target[j] = true;
        }
        self.load_slack_basis();
        for &q in target.iter().filter(|&&q| q < n) {
            let mut best: Option<(usize, f64)> = None;
            for i in 0..m {
                let cur = self.basis[i];
                if cur < n || in_target[cur] {
                    continue;
                }
                let a = self.tab[i * w + q].abs();
                if a > PIVOT_TOL && best.is_none_or(|(_, b)| a > b) {
                    best = Some((i, a));
                }
            }
            match best {
                Some((r, _)) => {
                    let leaving = self.basis[r];
                    self.pivot(r, q);
                    // Keep the position the slack had as a nonbasic variable.
                    if self.state[leaving] == State::Basic {
                        self.state[leaving] = if self.lower[leaving].is_finite() {
                            State::Lower
                        } else {
                            State::Upper
                        };
                    }
                }
                None => self.state[q] = State::Lower,
            }
        }
        let mut is_basic = vec![false; n + m];
        for &j in &self.basis {
            is_basic[j] = true;
        }
        for j in 0..n + m {
            if is_basic[j] {
                self.state[j] = State::Basic;
            } else if self.state[j] == State::Basic {
                self.state[j] = State::Lower;
            }
        }
        self.since_refactor = 0;
        self.reposition();
    }

    pub(super) fn solve(&mut self, max_iter: usize) -> LpStatus {
        let (m, nm, w) = (self.m, self.n + self.m, self.width);
        let mut iters = 0usize;
        let mut failed_certificates = 0;
        loop {
            let mut leave_row = None;
            let mut worst = PRIMAL_TOL;
            for i in 0..m {
                let j = self.basis[i];
                let v = self.value[j];
                let viol = (self.lower[j] - v).max(v - self.upper[j]);
                if viol > worst {
                    worst = viol;
                    leave_row = Some(i);
                }
            }
            let Some(r) = leave_row else {
                return LpStatus::Optimal;
            };
            if iters >= max_iter {
                return LpStatus::Stalled;
            }
            iters += 1;

            let leaving = self.basis[r];
            let to_lower = self.value[leaving] < self.lower[leaving];
            let row = &self.tab[r * w..r * w + nm];
            let eligible = |j: usize, a: f64| -> bool {
                match (to_lower, self.state[j]) {
                    (_, State::Basic) => false,
                    (true, State::Lower) | (false, State::Upper) => a < -PIVOT_TOL,
                    (true, State::Upper) | (false, State::Lower) => a > PIVOT_TOL,
                }
            };
            // Harris two-pass ratio test. Ties go to the highest index so that
            // low-index variables tend to stay selected.
            let mut theta = f64::INFINITY;
            for (j, &a) in row.iter().enumerate() {
                if self.lower[j] == self.upper[j] || !eligible(j, a) {
                    continue;
                }
                theta = theta.min((self.d[j].abs() + DUAL_TOL) / a.abs());
            }
            if theta.is_infinite() {
                if self.certify_infeasible(r) {
                    return LpStatus::Infeasible;
                }
                failed_certificates += 1;
                if failed_certificates > 2 {
                    return LpStatus::Stalled;
                }
                self.refactor();
                continue;
            }
            let mut entering: Option<(usize, f64)> = None;
            for (j, &a) in row.iter().enumerate() {
                if self.lower[j] == self.upper[j] || !eligible(j, a) {
                    continue;
                }
                if self.d[j].abs() / a.abs() <= theta && entering.is_none_or(|(_, b)| a.abs() >= b) {
                    entering = Some((j, a.abs()));
                }
            }
            let (q, _) = entering.expect("theta is finite so a candidate exists");

            let target = if to_lower { self.lower[leaving] } else { self.upper[leaving] };
            let alpha = self.tab[r * w + q];
            let delta = (self.value[leaving] - target) / alpha;
            for i in 0..m {
                let a = self.tab[i * w + q];
                if a != 0.0 {
                    self.value[self.basis[i]] -= a * delta;
                }
            }
            self.value[q] += delta;
            self.value[leaving] = target;
            self.state[leaving] = if to_lower { State::Lower } else { State::Upper };
            self.pivot(r, q);

            if self.since_refactor >= REFACTOR_EVERY {
                self.refactor();
            }
        }
    }

    /// Checks that row `r` of `B⁻¹` proves the current bounds infeasible.
    fn certify_infeasible(&self, r: usize) -> bool {
        let (n, m, w) = (self.n, self.m, self.width);
        let v = &self.tab[r * w + n..r * w + n + m];
        let mut lo = 0.0f64;
        let mut hi = 0.0f64;
        let mut magnitude = 0.0f64;
        let mut add = |g: f64, l: f64, u: f64| {
            if g.abs() < 1e-12 {
                return;
            }
            let (a, b) = if g > 0.0 { (g * l, g * u) } else { (g * u, g * l) };
            lo += a;
            hi += b;
            if a.is_finite() {
                magnitude += a.abs();
            }
            if b.is_finite() {
                magnitude += b.abs();
            }
        };
        for j in 0..n {
            let g: f64 = self.cols[j].iter().map(|&(i, a)| v[i] * a).sum();
            add(g, self.lower[j], self.upper[j]);
        }
        for i in 0..m {
            add(v[i], self.lower[n + i], self.upper[n + i]);
        }
        let target: f64 = (0..m).map(|i| v[i] * self.rhs[i]).sum();
        let tol = 1e-7 * (1.0 + magnitude + target.abs());
        target > hi + tol || target < lo - tol
    }

    /// Upper bound on the node's 0-1 optimum, in scaled objective units, and
    /// the Lagrangian reduced cost of every structural.
    ///
    /// Built from the current duals with their signs clamped, so it is valid
    /// whether or not the simplex reached optimality. Moving an unfixed
    /// structural `j` off the bound its reduced cost favours lowers the bound
    /// by `|reduced[j]|`.
    pub(super) fn lagrangian(&self, reduced: &mut Vec<f64>) -> f64 {
        let n = self.n;
        let y: Vec<f64> = (0..self.m)
            .map(|i| {
                let yi = -self.d[n + i];
                match self.senses[i] {
                    Sense::Le => yi.max(0.0),
                    Sense::Ge => yi.min(0.0),
                    Sense::Eq => yi,
                }
            })
            .collect();
        let mut bound: f64 = y.iter().zip(&self.rhs).map(|(a, b)| a * b).sum();
        reduced.clear();
        for j in 0..n {
            let r = self.cost[j] - self.cols[j].iter().map(|&(i, a)| y[i] * a).sum::<f64>();
            bound += if r > 0.0 { r * self.upper[j] } else { r * self.lower[j] };
            reduced.push(r);
        }
        bound
    }

    pub(super) fn structural_values(&self) -> &[f64] {
        &self.value[..self.n]
    }
}
