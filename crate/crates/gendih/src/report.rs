//! Table rendering for the command-line reports: one fixed column set
//! per report kind, emitted as CSV or as a JSON mirror with a `meta`
//! object.
//!
//! Outputs are byte-identical across reruns with the same flags and
//! seed, except for the optional timestamp comment at the top of CSV
//! files, which `--no-header` suppresses.

use serde_json::{json, Map, Value};

use crate::bounds::{ProportionCheck, WindowVerdict};
use crate::census::{CensusMode, CensusReport};
use crate::collisions::{CollisionReport, CrossCollisionTotals, CrossVerdict, TripleClassCounts};
use crate::combinat::{wilson_interval, Z_95};
use crate::expectation::{EvalMode, ExpectationCurve};
use crate::group::GroupSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Identification block mirrored into JSON reports.
#[derive(Clone, Debug)]
pub struct ReportMeta {
    pub group: String,
    pub seed: Option<u64>,
    pub mode: String,
}

/// A rendered report: fixed columns, rows of JSON scalars.
#[derive(Clone, Debug)]
pub struct Table {
    pub columns: &'static [&'static str],
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    fn new(columns: &'static [&'static str]) -> Self {
        Table { columns, rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

fn csv_cell(value: &Value) -> String {
    let raw = match value {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if raw.contains([',', '"', '\n']) {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw
    }
}

/// Renders the table as CSV, optionally preceded by a timestamp comment.
pub fn render_csv(table: &Table, timestamp_header: bool) -> String {
    let mut out = String::new();
    if timestamp_header {
        let now = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        out.push_str(&format!("# generated_at_unix={now}\n"));
    }
    out.push_str(&table.columns.join(","));
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(csv_cell).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Renders the table as a JSON document with `meta` and `rows`.
pub fn render_json(table: &Table, meta: &ReportMeta) -> String {
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|row| {
            let mut object = Map::new();
            for (column, cell) in table.columns.iter().zip(row) {
                object.insert((*column).to_owned(), cell.clone());
            }
            Value::Object(object)
        })
        .collect();
    let document = json!({
        "meta": {
            "group": meta.group,
            "seed": meta.seed,
            "mode": meta.mode,
            "version": env!("CARGO_PKG_VERSION"),
        },
        "rows": rows,
    });
    let mut out = serde_json::to_string_pretty(&document).expect("plain scalars");
    out.push('\n');
    out
}

fn opt_u64(v: Option<u64>) -> Value {
    v.map(Value::from).unwrap_or(Value::Null)
}

fn opt_f64(v: Option<f64>) -> Value {
    v.map(Value::from).unwrap_or(Value::Null)
}

pub const CENSUS_COLUMNS: &[&str] = &[
    "group", "n", "j", "m", "k", "total", "mstd", "mdts", "balanced", "mode", "trials", "seed",
    "ci_low_mstd", "ci_high_mstd",
];

/// Census rows per flip count, then one aggregate row with a blank `k`.
/// Wilson intervals appear on sampled censuses only.
pub fn census_table(report: &CensusReport) -> Table {
    let spec = &report.spec;
    let (mode, trials, seed) = match report.mode {
        CensusMode::Exhaustive => ("exhaustive", None, None),
        CensusMode::Sampled { trials, seed } => ("sampled", Some(trials), Some(seed)),
    };
    let sampled = trials.is_some();
    let mut table = Table::new(CENSUS_COLUMNS);
    let base = |k: Value, tally: &crate::census::ClassTally| -> Vec<Value> {
        vec![
            Value::from(spec.render()),
            Value::from(spec.order()),
            Value::from(spec.involution_count()),
            Value::from(report.m),
            k,
            Value::from(tally.total),
            Value::from(tally.mstd),
            Value::from(tally.mdts),
            Value::from(tally.balanced),
            Value::from(mode),
            opt_u64(trials),
            opt_u64(seed),
        ]
    };
    for row in &report.rows {
        let mut cells = base(Value::from(row.k), &row.tally);
        if sampled && row.tally.total > 0 {
            let (lo, hi) = wilson_interval(row.tally.mstd, row.tally.total, Z_95);
            cells.push(Value::from(lo));
            cells.push(Value::from(hi));
        } else {
            cells.push(Value::Null);
            cells.push(Value::Null);
        }
        table.push(cells);
    }
    let aggregate = report.aggregate();
    let mut cells = base(Value::Null, &aggregate);
    match report.wilson_mstd() {
        Some((lo, hi)) => {
            cells.push(Value::from(lo));
            cells.push(Value::from(hi));
        }
        None => {
            cells.push(Value::Null);
            cells.push(Value::Null);
        }
    }
    table.push(cells);
    table
}

pub const COLLISION_SWEEP_COLUMNS: &[&str] = &[
    "group", "n", "j", "m", "trials", "mean_XA", "stderr", "xa_bound", "c2_form",
];

/// One mean-collision row; `trials` and `stderr` stay blank on exact
/// evaluations, `c2_form` below its validity floor of `m = 6`.
pub struct CollisionSweepRow {
    pub m: u64,
    pub trials: Option<u64>,
    pub mean_xa: f64,
    pub stderr: Option<f64>,
}

pub fn collision_sweep_table(spec: &GroupSpec, rows: &[CollisionSweepRow]) -> Table {
    let (n, j) = (spec.order(), spec.involution_count());
    let mut table = Table::new(COLLISION_SWEEP_COLUMNS);
    for row in rows {
        let c2 = crate::collisions::expected_xa_bound_c2(n, j, row.m);
        table.push(vec![
            Value::from(spec.render()),
            Value::from(n),
            Value::from(j),
            Value::from(row.m),
            opt_u64(row.trials),
            Value::from(row.mean_xa),
            opt_f64(row.stderr),
            Value::from(crate::collisions::expected_xa_bound(n, j, row.m)),
            opt_f64(c2),
        ]);
    }
    table
}

pub const SUBSET_COLLISION_COLUMNS: &[&str] = &[
    "group", "m", "rotations", "flips", "xa", "naive_sum_slots", "sum_size", "diff_size",
    "label", "mstd_guaranteed", "in_quadratic_window",
];

/// Collision accounting of one explicit subset.
pub fn subset_collision_table(spec: &GroupSpec, report: &CollisionReport) -> Table {
    let mut table = Table::new(SUBSET_COLLISION_COLUMNS);
    table.push(vec![
        Value::from(spec.render()),
        Value::from(report.size),
        Value::from(report.rotation_count),
        Value::from(report.flip_count),
        Value::from(report.xa),
        Value::from(report.naive_sum_slots),
        Value::from(report.sum_size),
        Value::from(report.diff_size),
        Value::from(format!("{:?}", report.label).to_lowercase()),
        Value::from(report.mstd_guaranteed),
        Value::from(report.in_quadratic_window),
    ]);
    table
}

pub const TRIPLE_COLUMNS: &[&str] = &[
    "group", "n", "j", "t1", "t2", "t3", "t4", "t5", "t6", "t7", "redundant", "total",
];

pub fn triple_class_table(spec: &GroupSpec, counts: &TripleClassCounts) -> Table {
    let mut table = Table::new(TRIPLE_COLUMNS);
    let mut cells = vec![
        Value::from(spec.render()),
        Value::from(spec.order()),
        Value::from(spec.involution_count()),
    ];
    cells.extend(counts.counts.iter().map(|&c| Value::from(c)));
    cells.push(Value::from(counts.redundant));
    cells.push(Value::from(counts.total()));
    table.push(cells);
    table
}

pub const CROSS_COLUMNS: &[&str] =
    &["n", "dihedral_order", "product_total", "cyclic_total", "verdict"];

pub fn cross_collision_table(totals: &CrossCollisionTotals) -> Table {
    let verdict = match totals.verdict {
        CrossVerdict::Equal => "equal",
        CrossVerdict::ProductLarger => "product_larger",
        CrossVerdict::CyclicLarger => "cyclic_larger",
    };
    let mut table = Table::new(CROSS_COLUMNS);
    table.push(vec![
        Value::from(totals.n),
        Value::from(2 * totals.n * totals.n),
        Value::from(totals.product_total.to_string()),
        Value::from(totals.cyclic_total.to_string()),
        Value::from(verdict),
    ]);
    table
}

pub const CURVE_COLUMNS: &[&str] = &["n", "m", "expected_diff", "mode"];

pub fn mode_name(mode: EvalMode) -> &'static str {
    match mode {
        EvalMode::Rational => "rational",
        EvalMode::Log => "log",
    }
}

pub fn curve_table(curve: &ExpectationCurve) -> Table {
    let mut table = Table::new(CURVE_COLUMNS);
    for point in &curve.points {
        table.push(vec![
            Value::from(curve.n),
            Value::from(point.m),
            Value::from(point.expected_diff),
            Value::from(mode_name(curve.mode)),
        ]);
    }
    table
}

pub fn expectation_table(n: u64, m: u64, value: f64, mode: EvalMode) -> Table {
    let mut table = Table::new(CURVE_COLUMNS);
    table.push(vec![
        Value::from(n),
        Value::from(m),
        Value::from(value),
        Value::from(mode_name(mode)),
    ]);
    table
}

pub const PROPORTION_COLUMNS: &[&str] = &["m", "value", "pass"];

pub fn proportion_table(checks: &[ProportionCheck]) -> Table {
    let mut table = Table::new(PROPORTION_COLUMNS);
    for check in checks {
        table.push(vec![
            Value::from(check.m),
            Value::from(check.value.to_string()),
            Value::from(check.pass),
        ]);
    }
    table
}

pub const WINDOW_COLUMNS: &[&str] = &[
    "n", "m", "j", "floor_ok", "ceiling_ok", "inside", "cj_sqrt_n", "predicts_mstd_majority",
];

pub fn window_table(verdict: &WindowVerdict) -> Table {
    let mut table = Table::new(WINDOW_COLUMNS);
    table.push(vec![
        Value::from(verdict.n),
        Value::from(verdict.m),
        Value::from(verdict.j),
        Value::from(verdict.floor_ok),
        Value::from(verdict.ceiling_ok),
        Value::from(verdict.inside),
        Value::from(verdict.cj_sqrt_n),
        Value::from(verdict.predicts_mstd_majority),
    ]);
    table
}
