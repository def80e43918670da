//! Text, CSV and JSON renderings of the command reports.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::CliError;
use crate::report::{
    ComponentDto, ConditionsDto, EvaluateReport, GameDto, PayoffsDto, SgpoDto, SweepReport,
    VerifyReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

pub fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn csv_records<S: Serialize>(rows: &[S]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Parse(e.to_string()))
}

fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn aligned_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

/// Plain decimal, switching to exponent form for tiny nonzero values.
fn num(v: f64) -> String {
    if v != 0.0 && v.abs() < 1e-6 {
        format!("{v:e}")
    } else {
        v.to_string()
    }
}

fn span(v: &[f64; 2]) -> String {
    if v[0] == v[1] {
        num(v[0])
    } else {
        format!("[{}, {}]", num(v[0]), num(v[1]))
    }
}

fn component(c: &ComponentDto) -> String {
    format!("{} ({}, {}) {}", c.kind, span(&c.x), span(&c.y), c.strictness)
}

fn game(g: &GameDto) -> String {
    let c = &g.corners;
    format!(
        "A = {}xy + {}x + {}y + {}; B = {}xy + {}x + {}y + {}\n    corners  C/C ({}, {})  C/D ({}, {})  D/C ({}, {})  D/D ({}, {})",
        g.row[0], g.row[1], g.row[2], g.row[3], g.col[0], g.col[1], g.col[2], g.col[3],
        c[0][0][0], c[0][0][1], c[0][1][0], c[0][1][1], c[1][0][0], c[1][0][1], c[1][1][0], c[1][1][1],
    )
}

const PAYOFF_HEADER: [&str; 7] = ["source", "a1", "b1", "a2", "b2", "a_total", "b_total"];

fn payoff_cells(source: &str, p: &PayoffsDto) -> Vec<String> {
    vec![
        source.to_string(),
        p.a1.to_string(),
        p.b1.to_string(),
        p.a2.to_string(),
        p.b2.to_string(),
        p.a_total.to_string(),
        p.b_total.to_string(),
    ]
}

pub fn evaluate(rep: &EvaluateReport, format: Format) -> Result<String, CliError> {
    let mut rows = vec![payoff_cells("density-matrix", &rep.density_matrix)];
    if let Some(cf) = &rep.closed_form {
        rows.push(payoff_cells("closed-form", cf));
    }
    match format {
        Format::Json => json(rep),
        Format::Csv => Ok(csv_table(&PAYOFF_HEADER, &rows)),
        Format::Text => {
            let mut out = String::new();
            let [p, q, p1, q1] = rep.profile;
            writeln!(out, "profile (p, q, p1, q1) = ({p}, {q}, {p1}, {q1})").unwrap();
            if let Some(w) = rep.weights {
                writeln!(out, "restricted state, weights ({}, {}, {}, {})", w[0], w[1], w[2], w[3]).unwrap();
            } else {
                writeln!(out, "general state (no closed form)").unwrap();
            }
            out.push_str(&aligned_table(&PAYOFF_HEADER, &rows));
            if let Some(d) = rep.max_discrepancy {
                writeln!(out, "max |closed-form - density-matrix| = {d:e}").unwrap();
            }
            Ok(out)
        }
    }
}

const SGPO_HEADER: [&str; 16] = [
    "branch", "stage1_kind", "p_lo", "p_hi", "q_lo", "q_hi", "stage2_kind", "p1_lo", "p1_hi",
    "q1_lo", "q1_hi", "a_total_lo", "a_total_hi", "b_total_lo", "b_total_hi", "strictness",
];

pub fn sgpo(rep: &SgpoDto, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => json(rep),
        Format::Csv => {
            let rows: Vec<Vec<String>> = rep
                .profiles
                .iter()
                .map(|p| {
                    let mut row = vec![p.branch.to_string(), p.stage1.kind.clone()];
                    row.extend(p.stage1.x.iter().chain(&p.stage1.y).map(f64::to_string));
                    row.push(p.stage2.kind.clone());
                    row.extend(p.stage2.x.iter().chain(&p.stage2.y).map(f64::to_string));
                    row.extend(p.a_total.iter().chain(&p.b_total).map(f64::to_string));
                    row.push(p.strictness.clone());
                    row
                })
                .collect();
            Ok(csv_table(&SGPO_HEADER, &rows))
        }
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "stage-2 game: {}", game(&rep.stage2_game)).unwrap();
            writeln!(out, "stage-2 equilibria:").unwrap();
            for (i, c) in rep.stage2_equilibria.iter().enumerate() {
                let flag = if rep.non_inducible.contains(&i) {
                    "  (payoffs vary; split into endpoints)"
                } else {
                    ""
                };
                writeln!(out, "  [{i}] {}{flag}", component(c)).unwrap();
            }
            writeln!(out, "stage-1 game: {}", game(&rep.stage1_game)).unwrap();
            for (i, b) in rep.branches.iter().enumerate() {
                writeln!(
                    out,
                    "branch {i}: anticipate {} [{}], continuation ({}, {})",
                    component(&b.stage2_play),
                    b.source,
                    b.continuation[0],
                    b.continuation[1]
                )
                .unwrap();
                for c in &b.stage1_equilibria {
                    writeln!(out, "    stage-1 equilibrium {}", component(c)).unwrap();
                }
            }
            writeln!(out, "subgame-perfect outcomes ({}):", rep.kind).unwrap();
            for p in &rep.profiles {
                writeln!(
                    out,
                    "  (p, q) = ({}, {}) then (p1, q1) = ({}, {}); totals A {} B {}; {}",
                    span(&p.stage1.x),
                    span(&p.stage1.y),
                    span(&p.stage2.x),
                    span(&p.stage2.y),
                    span(&p.a_total),
                    span(&p.b_total),
                    p.strictness
                )
                .unwrap();
            }
            let ctd = &rep.cooperate_then_defect;
            match (&ctd.payoffs, &ctd.strictness) {
                (Some(pay), Some(strictness)) => writeln!(
                    out,
                    "cooperate-then-defect (1, 1, 0, 0): subgame perfect ({strictness}); stage payoffs A ({}, {}) B ({}, {}); totals ({}, {})",
                    pay.a1, pay.a2, pay.b1, pay.b2, pay.a_total, pay.b_total
                )
                .unwrap(),
                _ => writeln!(out, "cooperate-then-defect (1, 1, 0, 0): not subgame perfect").unwrap(),
            }
            if let Some(c) = &rep.conditions {
                writeln!(
                    out,
                    "conditions: cond1 = {} ({}), cond2 = {} ({})",
                    num(c.cond1_value),
                    c.cond1_class,
                    num(c.cond2_value),
                    c.cond2_class
                )
                .unwrap();
            }
            if let Some(o) = &rep.oracle {
                writeln!(
                    out,
                    "grid oracle (N = {}): stage 2 {}, stage 1 {}",
                    o.grid_n,
                    if o.stage2_agrees { "agrees" } else { "DISAGREES" },
                    if o.stage1_agrees { "agrees" } else { "DISAGREES" }
                )
                .unwrap();
            }
            Ok(out)
        }
    }
}

pub fn conditions(rep: &ConditionsDto, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => json(rep),
        Format::Csv => {
            let header = [
                "w1", "w2", "w3", "w4", "x_sum", "y_sum", "cond1_value", "cond2_value",
                "cond1_class", "cond2_class", "joint_holds",
            ];
            let mut row: Vec<String> = rep.weights.iter().map(f64::to_string).collect();
            row.extend([rep.x_sum, rep.y_sum, rep.cond1_value, rep.cond2_value].map(|v| v.to_string()));
            row.extend([rep.cond1_class.clone(), rep.cond2_class.clone(), rep.joint_holds.to_string()]);
            Ok(csv_table(&header, &[row]))
        }
        Format::Text => {
            let w = rep.weights;
            Ok(format!(
                "weights ({}, {}, {}, {})\n\
                 x_sum = w1 + w2 = {}   (needs <= 1/3)\n\
                 y_sum = w2 + w4 = {}   (needs <= 1/3)\n\
                 cond1 = 2(w2 + w4) - (w1 + w3) = {}  {}\n\
                 cond2 = 2(w1 + w2) - (w3 + w4) = {}  {}\n\
                 cooperate then defect: {}\n",
                w[0], w[1], w[2], w[3],
                rep.x_sum,
                rep.y_sum,
                num(rep.cond1_value), rep.cond1_class,
                num(rep.cond2_value), rep.cond2_class,
                if rep.joint_holds { "conditions hold" } else { "conditions fail" }
            ))
        }
    }
}

const SWEEP_HEADER: [&str; 13] = [
    "w1", "w2", "w3", "w4", "x_sum", "y_sum", "cond1_value", "cond2_value", "cond1_class",
    "cond2_class", "sgpo_kind", "a_total", "b_total",
];

pub fn sweep(rep: &SweepReport, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => json(rep),
        Format::Csv => csv_records(&rep.rows),
        Format::Text => {
            let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
            let rows: Vec<Vec<String>> = rep
                .rows
                .iter()
                .map(|r| {
                    let mut cells: Vec<String> = [
                        r.w1, r.w2, r.w3, r.w4, r.x_sum, r.y_sum, r.cond1_value, r.cond2_value,
                    ]
                    .iter()
                    .map(f64::to_string)
                    .collect();
                    cells.extend([r.cond1_class.clone(), r.cond2_class.clone(), r.sgpo_kind.clone()]);
                    cells.extend([opt(r.a_total), opt(r.b_total)]);
                    cells
                })
                .collect();
            Ok(aligned_table(&SWEEP_HEADER, &rows))
        }
    }
}

pub fn verify(rep: &VerifyReport, format: Format) -> Result<String, CliError> {
    let header = ["check", "samples", "max_error", "tolerance", "result"];
    let rows: Vec<Vec<String>> = rep
        .checks
        .iter()
        .map(|c| {
            vec![
                c.name.clone(),
                c.samples.to_string(),
                format!("{:e}", c.max_error),
                format!("{:e}", c.tolerance),
                if c.passed { "pass" } else { "FAIL" }.to_string(),
            ]
        })
        .collect();
    match format {
        Format::Json => json(rep),
        Format::Csv => Ok(csv_table(&header, &rows)),
        Format::Text => {
            let mut out = aligned_table(&header, &rows);
            writeln!(
                out,
                "{}",
                if rep.all_passed { "all checks passed" } else { "verification FAILED" }
            )
            .unwrap();
            Ok(out)
        }
    }
}
