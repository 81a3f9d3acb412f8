//! Slate CSV ingestion and report emission.
//!
//! The canonical slate header is
//! `player_id,name,team,positions,salary,projection,ceiling,actual`.
//! Foreign headers can be renamed onto it with a [`ColumnMap`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use chrono::NaiveDate;
use serde_json::{json, Map, Value};

use crate::accuracy::{squared_difference, AccuracyError, AccuracyReport, ColumnStats};
use crate::backtest::BacktestReport;
use crate::lineup::Portfolio;
use crate::model::{Diagnostic, Player, PositionSet, RosterRules, Slate, SlotAssignment};
use crate::points::Points;

pub const SLATE_HEADER: [&str; 8] = [
    "player_id",
    "name",
    "team",
    "positions",
    "salary",
    "projection",
    "ceiling",
    "actual",
];

const REQUIRED: [&str; 5] = ["player_id", "team", "positions", "salary", "projection"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(format!("unknown format {other:?} (expected json or csv)")),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        })
    }
}

/// Renames foreign header names onto canonical fields, parsed from
/// `Foreign=field,Other=field`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ColumnMap(BTreeMap<String, String>);

impl ColumnMap {
    fn canonical<'a>(&'a self, header: &'a str) -> &'a str {
        self.0.get(header).map(String::as_str).unwrap_or(header)
    }
}

impl FromStr for ColumnMap {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut map = BTreeMap::new();
        for pair in s.split(',').filter(|p| !p.trim().is_empty()) {
            let (from, to) = pair
                .split_once('=')
                .ok_or_else(|| format!("invalid column mapping {pair:?} (expected Foreign=field)"))?;
            let to = to.trim();
            if !SLATE_HEADER.contains(&to) {
                return Err(format!("unknown slate field {to:?} in column mapping"));
            }
            map.insert(from.trim().to_string(), to.to_string());
        }
        Ok(ColumnMap(map))
    }
}

/// Reads a slate. Rows keep file order; line numbers in diagnostics are
/// 1-based file lines with the header on line 1. Never panics.
pub fn parse_slate_csv(bytes: &[u8], date: NaiveDate, map: Option<&ColumnMap>) -> Result<Slate, Vec<Diagnostic>> {
    let bytes = bytes.strip_prefix(b"\xEF\xBB\xBF").unwrap_or(bytes);
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(bytes);
    let mut records = reader.byte_records();

    let header = match records.next() {
        None => return Err(vec![Diagnostic::error("empty file: missing header").at_line(1)]),
        Some(Err(e)) => return Err(vec![csv_error(&e, 1)]),
        Some(Ok(h)) => h,
    };
    let names: Vec<String> = header
        .iter()
        .map(|f| String::from_utf8_lossy(f).trim().to_string())
        .collect();
    let columns = match resolve_header(&names, map) {
        Ok(c) => c,
        Err(d) => return Err(vec![d]),
    };

    let mut diagnostics = Vec::new();
    let mut players = Vec::new();
    let mut first_line: HashMap<String, usize> = HashMap::new();
    let mut last_line = 1;
    for record in records {
        let record = match record {
            Ok(r) => r,
            Err(e) => {
                diagnostics.push(csv_error(&e, last_line + 1));
                if matches!(e.kind(), csv::ErrorKind::Io(_)) {
                    break;
                }
                continue;
            }
        };
        let line = record.position().map(|p| p.line() as usize).unwrap_or(last_line + 1);
        last_line = line;
        if record.iter().all(|f| f.iter().all(u8::is_ascii_whitespace)) {
            continue;
        }
        if record.len() != names.len() {
            diagnostics.push(
                Diagnostic::error(format!("expected {} fields, found {}", names.len(), record.len())).at_line(line),
            );
            continue;
        }
        match parse_row(&record, &columns, line) {
            Ok(p) => {
                if let Some(first) = first_line.get(&p.id) {
                    diagnostics.push(
                        Diagnostic::error(format!("duplicate id (first seen on line {first})"))
                            .at_line(line)
                            .about(p.id.clone()),
                    );
                } else {
                    first_line.insert(p.id.clone(), line);
                    players.push(p);
                }
            }
            Err(mut ds) => diagnostics.append(&mut ds),
        }
    }
    if diagnostics.is_empty() && players.is_empty() {
        diagnostics.push(Diagnostic::error("empty slate").at_line(1));
    }
    if diagnostics.is_empty() {
        Ok(Slate::new(date, players))
    } else {
        Err(diagnostics)
    }
}

fn csv_error(e: &csv::Error, fallback_line: usize) -> Diagnostic {
    let line = e
        .position()
        .map(|p| p.line() as usize)
        .unwrap_or(fallback_line);
    Diagnostic::error(format!("unreadable CSV: {e}")).at_line(line)
}

/// Column index of each canonical field, if present.
struct Columns([Option<usize>; 8]);

impl Columns {
    fn get<'r>(&self, record: &'r csv::ByteRecord, field: usize) -> Option<&'r [u8]> {
        self.0[field].and_then(|i| record.get(i))
    }
}

fn resolve_header(names: &[String], map: Option<&ColumnMap>) -> Result<Columns, Diagnostic> {
    let Some(map) = map else {
        if names.iter().map(String::as_str).eq(SLATE_HEADER) {
            return Ok(Columns(std::array::from_fn(Some)));
        }
        return Err(Diagnostic::error(format!("malformed header: expected {}", SLATE_HEADER.join(","))).at_line(1));
    };
    let mut idx = [None; 8];
    for (i, name) in names.iter().enumerate() {
        let canonical = map.canonical(name);
        if let Some(f) = SLATE_HEADER.iter().position(|h| *h == canonical) {
            if idx[f].is_some() {
                return Err(Diagnostic::error(format!("malformed header: {canonical} appears twice")).at_line(1));
            }
            idx[f] = Some(i);
        }
    }
    let missing: Vec<&str> = REQUIRED
        .iter()
        .filter(|r| idx[SLATE_HEADER.iter().position(|h| h == *r).unwrap_or(0)].is_none())
        .copied()
        .collect();
    if !missing.is_empty() {
        return Err(Diagnostic::error(format!("malformed header: missing {}", missing.join(", "))).at_line(1));
    }
    Ok(Columns(idx))
}

fn parse_row(record: &csv::ByteRecord, columns: &Columns, line: usize) -> Result<Player, Vec<Diagnostic>> {
    let mut errs = Vec::new();
    let mut text = |field: usize| -> Option<&str> {
        let raw = columns.get(record, field)?;
        match std::str::from_utf8(raw) {
            Ok(s) => Some(s.trim()),
            Err(_) => {
                errs.push(Diagnostic::error(format!("invalid UTF-8 in {}", SLATE_HEADER[field])).at_line(line));
                None
            }
        }
    };
    let id = text(0).unwrap_or("").to_string();
    let name = text(1).unwrap_or("").to_string();
    let team = text(2).unwrap_or("").to_string();
    let positions = text(3).unwrap_or("").to_string();
    let salary = text(4).unwrap_or("").to_string();
    let projection = text(5).unwrap_or("").to_string();
    let ceiling = text(6).unwrap_or("").to_string();
    let actual = text(7).unwrap_or("").to_string();
    if !errs.is_empty() {
        return Err(errs);
    }

    let bad = |what: &str, value: &str| Diagnostic::error(format!("invalid {what}")).at_line(line).about(value.to_string());
    if id.is_empty() {
        errs.push(Diagnostic::error("empty player_id").at_line(line));
    }
    let positions = match positions.parse::<PositionSet>() {
        Ok(p) if !p.is_empty() => Some(p),
        _ => {
            errs.push(bad("positions", &positions));
            None
        }
    };
    let salary = match salary.parse::<i64>() {
        Ok(s) if s >= 0 => Some(s),
        _ => {
            errs.push(bad("salary", &salary));
            None
        }
    };
    let projection = match projection.parse::<Points>() {
        Ok(p) => Some(p),
        Err(_) => {
            errs.push(bad("projection", &projection));
            None
        }
    };
    let mut optional = |what: &str, value: &str| -> Option<Points> {
        if value.is_empty() {
            return None;
        }
        value.parse().map_err(|_| errs.push(bad(what, value))).ok()
    };
    let ceiling = optional("ceiling", &ceiling);
    let actual = optional("actual", &actual);
    match (positions, salary, projection) {
        (Some(pos), Some(sal), Some(proj)) if errs.is_empty() => {
            let mut p = Player::new(&id, &team, pos, sal, proj).with_name(&name);
            p.ceiling = ceiling;
            p.actual = actual;
            Ok(p)
        }
        _ => Err(errs),
    }
}

/// Writes a slate in the canonical format.
pub fn write_slate_csv(slate: &Slate) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SLATE_HEADER).expect("in-memory write");
    let opt = |p: Option<Points>| p.map(|v| v.to_string()).unwrap_or_default();
    for p in slate.players() {
        w.write_record([
            p.id.clone(),
            p.name.clone(),
            p.team.clone(),
            p.positions.to_string(),
            p.salary.to_string(),
            p.projection.to_string(),
            opt(p.ceiling),
            opt(p.actual),
        ])
        .expect("in-memory write");
    }
    w.into_inner().expect("in-memory write")
}

fn finish_json(v: &Value) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(v).expect("JSON values always serialize");
    out.push(b'\n');
    out
}

fn to_json<T: serde::Serialize>(v: &T) -> Vec<u8> {
    finish_json(&serde_json::to_value(v).expect("report types serialize"))
}

/// Lineups in generation order.
///
/// CSV has one row per lineup with a column per roster unit (`P`, `C/1B`,
/// …, `OF1`..`OF3`, `UTIL` for the default rules) followed by `salary` and
/// `projection`. JSON lists each lineup with its 1-based iteration, a
/// unit→player map and totals, then the exposure table and diagnostics.
pub fn emit_lineups(portfolio: &Portfolio, rules: &RosterRules, format: OutputFormat) -> Vec<u8> {
    let units = rules.unit_names();
    match format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header = units.clone();
            header.extend(["salary".to_string(), "projection".to_string()]);
            w.write_record(&header).expect("in-memory write");
            for l in &portfolio.lineups {
                let mut row: Vec<String> = units
                    .iter()
                    .map(|u| {
                        l.assignments
                            .iter()
                            .find(|a| &a.slot == u)
                            .map(|a| a.player_id.clone())
                            .unwrap_or_default()
                    })
                    .collect();
                row.push(l.total_salary.to_string());
                row.push(l.total_projection.to_string());
                w.write_record(&row).expect("in-memory write");
            }
            w.into_inner().expect("in-memory write")
        }
        OutputFormat::Json => {
            let lineups: Vec<Value> = portfolio
                .lineups
                .iter()
                .enumerate()
                .map(|(i, l)| {
                    let slots: Map<String, Value> = l
                        .assignments
                        .iter()
                        .map(|a| (a.slot.clone(), Value::String(a.player_id.clone())))
                        .collect();
                    json!({
                        "iteration": i + 1,
                        "slots": slots,
                        "salary": l.total_salary,
                        "projection": l.total_projection,
                        "actual": l.total_actual,
                    })
                })
                .collect();
            finish_json(&json!({
                "lineups": lineups,
                "exposure": portfolio.exposure,
                "diagnostics": portfolio.diagnostics.iter().map(ToString::to_string).collect::<Vec<_>>(),
            }))
        }
    }
}

/// Reads lineups back from [`emit_lineups`] CSV output.
pub fn parse_lineups_csv(bytes: &[u8], rules: &RosterRules) -> Result<Vec<Vec<SlotAssignment>>, Diagnostic> {
    let mut reader = csv::ReaderBuilder::new().from_reader(bytes);
    let header = reader
        .headers()
        .map_err(|e| csv_error(&e, 1))?
        .clone();
    let units = rules.unit_names();
    if header.len() != units.len() + 2 || !header.iter().zip(&units).all(|(h, u)| h == u) {
        return Err(Diagnostic::error("malformed lineup header").at_line(1));
    }
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| csv_error(&e, out.len() + 2))?;
        out.push(
            units
                .iter()
                .zip(record.iter())
                .map(|(u, id)| SlotAssignment {
                    slot: u.clone(),
                    player_id: id.to_string(),
                })
                .collect(),
        );
    }
    Ok(out)
}

/// Projection against actual for every row with an actual, worst miss
/// first (slate order among equal misses).
pub fn emit_scatter_data(slate: &Slate) -> Result<Vec<u8>, AccuracyError> {
    let mut rows: Vec<_> = slate
        .players()
        .iter()
        .filter_map(|p| p.actual.map(|a| (p, a, squared_difference(p.projection, a))))
        .collect();
    if rows.is_empty() {
        return Err(AccuracyError::NoActuals);
    }
    rows.sort_by_key(|r| std::cmp::Reverse(r.2));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["player_id", "projection", "actual", "squared_difference"])
        .expect("in-memory write");
    for (p, a, d) in rows {
        w.write_record([p.id.clone(), p.projection.to_string(), a.to_string(), d.to_string()])
            .expect("in-memory write");
    }
    Ok(w.into_inner().expect("in-memory write"))
}

/// CSV is long form: one `metric,value` row per number.
pub fn emit_accuracy(report: &AccuracyReport, format: OutputFormat) -> Vec<u8> {
    match format {
        OutputFormat::Json => to_json(report),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["metric", "value"]).expect("in-memory write");
            let mut put = |k: &str, v: String| w.write_record([k, v.as_str()]).expect("in-memory write");
            put("n", report.n.to_string());
            put("n_dropped", report.n_dropped.to_string());
            let columns: [(&str, &ColumnStats); 4] = [
                ("projection", &report.projection),
                ("actual", &report.actual),
                ("price", &report.price),
                ("difference", &report.difference),
            ];
            for (name, s) in columns {
                for (stat, v) in [
                    ("mean", s.mean),
                    ("std", s.std),
                    ("min", s.min),
                    ("q25", s.q25),
                    ("median", s.median),
                    ("q75", s.q75),
                    ("max", s.max),
                ] {
                    put(&format!("{name}_{stat}"), format!("{v:.6}"));
                }
            }
            put("mse", format!("{:.6}", report.mse));
            put("rmse", format!("{:.6}", report.rmse));
            put("r_squared", report.r_squared.map(|r| format!("{r:.6}")).unwrap_or_default());
            w.into_inner().expect("in-memory write")
        }
    }
}

/// CSV has one row per day followed by a `mean` row.
pub fn emit_backtest(report: &BacktestReport, format: OutputFormat) -> Vec<u8> {
    match format {
        OutputFormat::Json => to_json(report),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["date", "projected_total", "hindsight_actual", "gap", "best_projected_actual"])
                .expect("in-memory write");
            let opt = |p: Option<Points>| p.map(|v| v.to_string()).unwrap_or_default();
            for d in &report.days {
                w.write_record([
                    d.date.to_string(),
                    d.projected_total.to_string(),
                    d.hindsight_actual.to_string(),
                    d.gap.to_string(),
                    opt(d.best_projected_actual),
                ])
                .expect("in-memory write");
            }
            w.write_record([
                "mean".to_string(),
                format!("{:.6}", report.mean_projected),
                format!("{:.6}", report.mean_hindsight_actual),
                format!("{:.6}", report.mean_gap),
                report
                    .mean_best_projected_actual
                    .map(|m| format!("{m:.6}"))
                    .unwrap_or_default(),
            ])
            .expect("in-memory write");
            w.into_inner().expect("in-memory write")
        }
    }
}
