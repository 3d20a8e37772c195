use std::io::Write;
use std::path::Path;

use geomedian::bounds::{bound_domination_report, bound_sequence_from_steps, median_rate_bound};
use geomedian::constants::beta_floor;
use geomedian::geometry::distance;
use geomedian::measure::{condition_star, estimate_convexity_constants};
use geomedian::objective::f_value;
use geomedian::oracles::{collinear_median_oracle, grid_oracle, weiszfeld_euclidean};
use geomedian::{
    make_schedule, solve, ConstantsMode, DiscreteMeasure, Point, ScheduleKind, SolverConfig, Status, StepSequence,
    TauEstimate,
};
use serde::{Deserialize, Serialize};

use crate::args::{BoundsArgs, CheckArgs, OracleArgs, OracleName, ScheduleName, SolveArgs, TauChoice};
use crate::error::{exit, CliError};
use crate::instance::read_instance;
use crate::io::{parse_json, read_text, to_pretty, write_text};
use crate::schedule::ScheduleDoc;
use crate::trace::{self, TraceHeader};

/// Indices listed explicitly in a bounds report before truncation.
const LISTED_VIOLATIONS: usize = 20;
/// Relative gap below the nominal step that counts as clamped by `r_x`.
const CLAMP_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub status: String,
    pub iterations: usize,
    pub median: Vec<f64>,
    pub f: f64,
    pub h_norm: f64,
    pub atom_weight: f64,
    /// `|H| ≤ μ{x} + stop_tol` at the returned point.
    pub characterization: bool,
    pub schedule: ScheduleDoc,
    pub beta_floor: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_slack: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantsReport {
    pub eps_mu: f64,
    pub eta_mu: f64,
    pub tau: f64,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub family: String,
    pub dimension: usize,
    pub curvature: f64,
    pub rho: f64,
    pub sigma: f64,
    pub beta_floor: f64,
    pub condition_star: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constants: Option<ConstantsReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constants_error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub oracle: String,
    pub m_ref: Vec<f64>,
    pub f_ref: f64,
    /// Guarantee `f_ref − f* ≤ spacing` (grid oracle only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spacing: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub round_f: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub non_unique: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateReport {
    pub r: f64,
    pub alpha: f64,
    pub branch: String,
    pub checked: usize,
    pub clamped_steps: usize,
    pub violations: usize,
    pub min_margin: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub tau: f64,
    pub tau_provenance: String,
    /// First index `N` of the error bound.
    pub start: usize,
    pub checked: usize,
    pub violations: usize,
    pub first_violations: Vec<usize>,
    pub min_margin: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rate: Option<RateReport>,
}

fn schedule_kind(args: &SolveArgs) -> Result<ScheduleKind, CliError> {
    let require = |v: Option<f64>, flag: &str| {
        v.ok_or_else(|| CliError::Usage(format!("schedule {:?} needs --{flag}", args.schedule)))
    };
    Ok(match args.schedule {
        ScheduleName::BetaHarmonic => ScheduleKind::BetaOverKPlus1 { beta: args.beta },
        ScheduleName::BetaAk => {
            let seq = if args.ak_power == 1.0 { StepSequence::Harmonic } else { StepSequence::Power { p: args.ak_power } };
            ScheduleKind::BetaTimesAk { beta: args.beta, seq }
        }
        ScheduleName::RxHarmonic => ScheduleKind::FullRxOverKPlus1 { r_mult: args.r_mult },
        ScheduleName::RHarmonic => ScheduleKind::ROverKPlus1 { r: require(args.r, "r")? },
        ScheduleName::Const => ScheduleKind::Constant { t: require(args.step, "step")? },
    })
}

fn status_code(status: Status) -> i32 {
    match status {
        Status::CharacterizationMet => exit::OK,
        Status::MaxIters => exit::MAX_ITERS,
        Status::Stalled => exit::STALLED,
    }
}

/// Shortest round-trip form, with an exponent for very small or large values.
fn num(v: f64) -> String {
    serde_json::to_string(&v).unwrap_or_else(|_| v.to_string())
}

fn fmt_coords(c: &[f64]) -> String {
    let parts: Vec<String> = c.iter().map(|v| num(*v)).collect();
    format!("({})", parts.join(", "))
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source })
}

pub fn cmd_solve(args: &SolveArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let (_, mu) = read_instance(&args.input)?;
    let schedule = make_schedule(schedule_kind(args)?, mu.ball(), mu.sigma())?;
    let schedule_doc = ScheduleDoc::from_kind(schedule.kind())?;
    let floor = schedule.beta_floor();
    let mut cfg = SolverConfig::new(schedule);
    cfg.stop_tol = args.stop_tol;
    cfg.max_iters = args.max_iters;
    cfg.atom_tol = args.atom_tol;
    cfg.keep_trace = args.trace.is_some() || args.probes > 0;
    if args.probes > 0 {
        cfg.record_diagnostics = true;
        cfg.diagnostic_probe_count = args.probes;
        cfg.probe_seed = args.seed;
    }
    let sol = solve(&mu, &cfg, None)?;
    let last = sol.trace.last();
    let result = SolveResult {
        status: sol.trace.status.name().to_string(),
        iterations: sol.trace.iterations(),
        median: sol.median.coords().to_vec(),
        f: last.f,
        h_norm: last.h_norm,
        atom_weight: last.atom_weight,
        characterization: last.h_norm <= last.atom_weight + cfg.stop_tol,
        schedule: schedule_doc.clone(),
        beta_floor: floor,
        min_slack: sol.trace.min_slack(),
    };
    if let Some(path) = &args.trace {
        let header = TraceHeader {
            schedule: schedule_doc,
            beta_floor: floor,
            stop_tol: cfg.stop_tol,
            max_iters: cfg.max_iters,
            atom_tol: cfg.atom_tol,
        };
        write_text(path, &trace::render(&header, &sol.trace))?;
    }
    let doc = to_pretty(&result);
    if let Some(path) = &args.out {
        write_text(path, &doc)?;
    }
    if args.json {
        write_out(out, &doc)?;
    } else {
        let mut s = format!(
            "status: {}\niterations: {}\nmedian: {}\nf: {}\n|H|: {}\nmu{{x}}: {}\n",
            result.status,
            result.iterations,
            fmt_coords(&result.median),
            num(result.f),
            num(result.h_norm),
            num(result.atom_weight)
        );
        if let Some(m) = result.min_slack {
            s.push_str(&format!("min fundamental-inequality slack: {}\n", num(m)));
        }
        write_out(out, &s)?;
    }
    Ok(status_code(sol.trace.status))
}

fn constants_for(mu: &DiscreteMeasure, choice: TauChoice, resolution: usize) -> Result<ConstantsReport, CliError> {
    let mode = match choice {
        TauChoice::Value(tau) => {
            let provenance = TauEstimate::user_supplied(tau).provenance.label().to_string();
            return Ok(ConstantsReport { eps_mu: f64::NAN, eta_mu: f64::NAN, tau, provenance });
        }
        TauChoice::Heuristic => ConstantsMode::Heuristic,
        TauChoice::Oracle => ConstantsMode::OracleCertified,
    };
    let c = estimate_convexity_constants(mu, mode, resolution)?;
    Ok(ConstantsReport { eps_mu: c.eps_mu(), eta_mu: c.eta_mu(), tau: c.tau(), provenance: c.provenance().label().into() })
}

fn tau_estimate(mu: &DiscreteMeasure, choice: TauChoice, resolution: usize) -> Result<TauEstimate, CliError> {
    Ok(match choice {
        TauChoice::Value(tau) => TauEstimate::user_supplied(tau),
        TauChoice::Heuristic => (&estimate_convexity_constants(mu, ConstantsMode::Heuristic, resolution)?).into(),
        TauChoice::Oracle => (&estimate_convexity_constants(mu, ConstantsMode::OracleCertified, resolution)?).into(),
    })
}

pub fn cmd_check(args: &CheckArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let (_, mu) = read_instance(&args.input)?;
    let m = mu.ball().manifold();
    let (constants, constants_error) = match args.tau.map(|c| constants_for(&mu, c, args.resolution)) {
        None => (None, None),
        Some(Ok(c)) => (Some(c), None),
        Some(Err(e)) => (None, Some(e.to_string())),
    };
    let report = CheckReport {
        family: m.family().name().into(),
        dimension: m.dimension(),
        curvature: m.curvature(),
        rho: mu.ball().rho(),
        sigma: mu.sigma(),
        beta_floor: beta_floor(mu.ball().bounds(), mu.sigma())?,
        condition_star: condition_star(&mu),
        constants,
        constants_error,
    };
    if args.json {
        write_out(out, &to_pretty(&report))?;
    } else {
        let mut s = format!(
            "instance: valid ({} atoms on {} dim {} curvature {})\nrho: {}\nsigma: {}\nbeta floor: {}\ncondition ∗: {}\n",
            mu.len(),
            report.family,
            report.dimension,
            report.curvature,
            num(report.rho),
            num(report.sigma),
            num(report.beta_floor),
            if report.condition_star { "holds" } else { "FAILS" }
        );
        if let Some(c) = &report.constants {
            if c.eps_mu.is_finite() {
                s.push_str(&format!("eps_mu: {}\neta_mu: {}\n", num(c.eps_mu), num(c.eta_mu)));
            }
            s.push_str(&format!("tau: {} [{}]\n", num(c.tau), c.provenance));
        }
        if let Some(e) = &report.constants_error {
            s.push_str(&format!("tau: unavailable ({e})\n"));
        }
        write_out(out, &s)?;
    }
    Ok(exit::OK)
}

fn weighted_mean(mu: &DiscreteMeasure) -> Vec<f64> {
    let mut mean = vec![0.0; mu.ball().center().coords().len()];
    for a in mu.atoms() {
        mean.iter_mut().zip(a.point.coords()).for_each(|(m, c)| *m += a.weight * c);
    }
    mean
}

pub fn cmd_oracle(args: &OracleArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let (_, mu) = read_instance(&args.input)?;
    let result = match args.oracle {
        OracleName::Grid => {
            let g = grid_oracle(&mu, args.resolution, args.refine_rounds)?;
            OracleResult {
                oracle: "grid".into(),
                m_ref: g.m_ref.coords().to_vec(),
                f_ref: g.f_ref,
                spacing: Some(g.spacing),
                round_f: Some(g.round_f),
                iterations: None,
                non_unique: None,
            }
        }
        OracleName::Weiszfeld => {
            let x0 = mu.ball().manifold().point(&weighted_mean(&mu))?;
            let w = weiszfeld_euclidean(&mu, &x0, args.max_iters)?;
            OracleResult {
                oracle: "weiszfeld".into(),
                f_ref: f_value(&w.point, &mu)?,
                m_ref: w.point.coords().to_vec(),
                spacing: None,
                round_f: None,
                iterations: Some(w.iterations),
                non_unique: None,
            }
        }
        OracleName::Collinear => {
            let c = collinear_median_oracle(&mu)?;
            OracleResult {
                oracle: "collinear".into(),
                f_ref: f_value(&c.point, &mu)?,
                m_ref: c.point.coords().to_vec(),
                spacing: None,
                round_f: None,
                iterations: None,
                non_unique: Some(c.non_unique),
            }
        }
    };
    let doc = to_pretty(&result);
    if let Some(path) = &args.out {
        write_text(path, &doc)?;
    }
    if args.json {
        write_out(out, &doc)?;
    } else {
        let mut s = format!("oracle: {}\nm_ref: {}\nf_ref: {}\n", result.oracle, fmt_coords(&result.m_ref), num(result.f_ref));
        if let Some(sp) = result.spacing {
            s.push_str(&format!("spacing guarantee: f_ref - f* <= {}\n", num(sp)));
        }
        if result.non_unique == Some(true) {
            s.push_str("median set: a whole segment (not unique)\n");
        }
        write_out(out, &s)?;
    }
    Ok(exit::OK)
}

fn read_reference(path: &Path, mu: &DiscreteMeasure) -> Result<Point, CliError> {
    let doc: OracleResult = parse_json(path, &read_text(path)?)?;
    mu.ball().manifold().point(&doc.m_ref).map_err(|e| CliError::Invalid(format!("{}: m_ref: {e}", path.display())))
}

pub fn cmd_bounds(args: &BoundsArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let (_, mu) = read_instance(&args.input)?;
    let reference = args.reference.as_deref().ok_or_else(|| {
        CliError::Usage("missing oracle reference: pass --reference <file written by `oracle --out`>".into())
    })?;
    let m_ref = read_reference(reference, &mu)?;
    let text = read_text(&args.trace)?;
    let (header, trace) = trace::parse(&text, mu.ball().manifold())
        .map_err(|message| CliError::Parse { path: args.trace.clone(), message })?;
    let tau = tau_estimate(&mu, args.tau, args.resolution)?;
    let series = bound_sequence_from_steps(tau, mu.ball(), mu.sigma(), trace.steps())?;
    let dom = bound_domination_report(&series, &trace, &m_ref)?;
    let rate = match header.schedule.harmonic_numerator() {
        None => None,
        Some(r) => {
            let mut violations = 0;
            let mut min_margin: Option<f64> = None;
            let mut clamped = 0;
            for (k, pair) in trace.records.windows(2).enumerate() {
                if pair[0].t.is_some_and(|t| t < r / (k + 1) as f64 * (1.0 - CLAMP_TOL)) {
                    clamped += 1;
                }
                let bound = median_rate_bound(tau.value, r, mu.ball(), mu.sigma(), k)?;
                let d = distance(&pair[1].x, &m_ref)?;
                let margin = bound.value - d * d;
                violations += usize::from(margin < 0.0);
                min_margin = Some(min_margin.map_or(margin, |m| m.min(margin)));
            }
            let alpha = 2.0 * tau.value * r;
            // the branch depends on α only
            let branch = median_rate_bound(tau.value, r, mu.ball(), mu.sigma(), 0)?.branch.label().to_string();
            Some(RateReport {
                r,
                alpha,
                branch,
                checked: trace.records.len().saturating_sub(1),
                clamped_steps: clamped,
                violations,
                min_margin,
            })
        }
    };
    let report = BoundsReport {
        tau: tau.value,
        tau_provenance: dom.label().to_string(),
        start: dom.start,
        checked: dom.margins.len(),
        violations: dom.violations.len(),
        first_violations: dom.violations.iter().take(LISTED_VIOLATIONS).copied().collect(),
        min_margin: dom.min_margin(),
        rate,
    };
    let doc = to_pretty(&report);
    if let Some(path) = &args.out {
        write_text(path, &doc)?;
    }
    if args.json {
        write_out(out, &doc)?;
    } else {
        let mut s = format!(
            "tau: {} [{}]\nerror bound: N = {}, {} iterates checked, {} violations",
            num(report.tau),
            report.tau_provenance, report.start, report.checked, report.violations
        );
        if let Some(m) = report.min_margin {
            s.push_str(&format!(", min margin {}", num(m)));
        }
        s.push('\n');
        match &report.rate {
            Some(r) => s.push_str(&format!(
                "rate bound: r = {}, alpha = 2 tau r = {} ({}), {} iterates checked, {} violations, {} steps clamped by r_x\n",
                num(r.r),
                num(r.alpha),
                r.branch, r.checked, r.violations, r.clamped_steps
            )),
            None => s.push_str("rate bound: not applicable (schedule is not r/(k+1))\n"),
        }
        write_out(out, &s)?;
    }
    Ok(exit::OK)
}
