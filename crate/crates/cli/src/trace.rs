//! Iterate traces as JSON lines: a header, one line per iterate, a summary.

use geomedian::{IterateRecord, IterateTrace, ManifoldSpec, Status};
use serde::{Deserialize, Serialize};

use crate::schedule::ScheduleDoc;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum TraceLine {
    Header { schedule: ScheduleDoc, beta_floor: f64, stop_tol: f64, max_iters: usize, atom_tol: f64 },
    Iterate(IterateLine),
    Summary { status: String, iterations: usize, median: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IterateLine {
    pub k: usize,
    pub x: Vec<f64>,
    pub f: f64,
    pub h_norm: f64,
    pub atom_weight: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_x: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slack: Option<Vec<f64>>,
}

impl From<&IterateRecord> for IterateLine {
    fn from(r: &IterateRecord) -> Self {
        IterateLine {
            k: r.k,
            x: r.x.coords().to_vec(),
            f: r.f,
            h_norm: r.h_norm,
            atom_weight: r.atom_weight,
            t: r.t,
            r_x: r.r_x,
            slack: r.fundamental_slack.clone(),
        }
    }
}

/// Header of a solve run; the schedule is what the bounds command replays.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceHeader {
    pub schedule: ScheduleDoc,
    pub beta_floor: f64,
    pub stop_tol: f64,
    pub max_iters: usize,
    pub atom_tol: f64,
}

pub fn render(header: &TraceHeader, trace: &IterateTrace) -> String {
    let mut out = String::new();
    let mut push = |line: &TraceLine| {
        out.push_str(&serde_json::to_string(line).expect("trace lines serialize"));
        out.push('\n');
    };
    push(&TraceLine::Header {
        schedule: header.schedule.clone(),
        beta_floor: header.beta_floor,
        stop_tol: header.stop_tol,
        max_iters: header.max_iters,
        atom_tol: header.atom_tol,
    });
    for r in &trace.records {
        push(&TraceLine::Iterate(r.into()));
    }
    push(&TraceLine::Summary {
        status: trace.status.name().to_string(),
        iterations: trace.iterations(),
        median: trace.last().x.coords().to_vec(),
    });
    out
}

/// Parses a rendered trace back into records on `manifold`. Errors carry the
/// 1-based line number.
pub fn parse(text: &str, manifold: &ManifoldSpec) -> Result<(TraceHeader, IterateTrace), String> {
    let mut header = None;
    let mut records = Vec::new();
    let mut status = None;
    for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let lineno = i + 1;
        let de = &mut serde_json::Deserializer::from_str(line);
        let parsed: TraceLine =
            serde_path_to_error::deserialize(de).map_err(|e| format!("line {lineno}: {}: {}", e.path(), e.inner()))?;
        match parsed {
            TraceLine::Header { schedule, beta_floor, stop_tol, max_iters, atom_tol } => {
                if header.is_some() || !records.is_empty() {
                    return Err(format!("line {lineno}: header must come first"));
                }
                header = Some(TraceHeader { schedule, beta_floor, stop_tol, max_iters, atom_tol });
            }
            TraceLine::Iterate(it) => {
                if it.k != records.len() {
                    return Err(format!("line {lineno}: expected iterate {}, found {}", records.len(), it.k));
                }
                let x = manifold.point(&it.x).map_err(|e| format!("line {lineno}: x: {e}"))?;
                records.push(IterateRecord {
                    k: it.k,
                    x,
                    f: it.f,
                    h_norm: it.h_norm,
                    atom_weight: it.atom_weight,
                    t: it.t,
                    r_x: it.r_x,
                    fundamental_slack: it.slack,
                });
            }
            TraceLine::Summary { status: s, .. } => {
                status = Some(Status::from_name(&s).ok_or_else(|| format!("line {lineno}: unknown status `{s}`"))?);
            }
        }
    }
    let header = header.ok_or("missing header line")?;
    let status = status.ok_or("missing summary line")?;
    if records.is_empty() {
        return Err("trace holds no iterates".into());
    }
    Ok((header, IterateTrace { records, status, complete: true }))
}
