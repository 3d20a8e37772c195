use geomedian::{ScheduleKind, StepSequence};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Serialized stepsize schedule, `β` resolved.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ScheduleDoc {
    BetaHarmonic { beta: f64 },
    BetaAk { beta: f64, ak: AkDoc },
    RxHarmonic { r_mult: f64 },
    RHarmonic { r: f64 },
    Const { t: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum AkDoc {
    Harmonic,
    Power { p: f64 },
    Table(Vec<f64>),
}

impl ScheduleDoc {
    pub fn from_kind(kind: &ScheduleKind) -> Result<Self, CliError> {
        let unresolved = || CliError::Usage("schedule beta must be resolved before serialization".into());
        Ok(match kind {
            ScheduleKind::BetaOverKPlus1 { beta } => ScheduleDoc::BetaHarmonic { beta: beta.ok_or_else(unresolved)? },
            ScheduleKind::BetaTimesAk { beta, seq } => {
                let ak = match seq {
                    StepSequence::Harmonic => AkDoc::Harmonic,
                    StepSequence::Power { p } => AkDoc::Power { p: *p },
                    StepSequence::Table(v) => AkDoc::Table(v.clone()),
                    StepSequence::Constant => return Err(CliError::Usage("a_k = 1 is not a valid sequence".into())),
                };
                ScheduleDoc::BetaAk { beta: beta.ok_or_else(unresolved)?, ak }
            }
            ScheduleKind::FullRxOverKPlus1 { r_mult } => ScheduleDoc::RxHarmonic { r_mult: *r_mult },
            ScheduleKind::ROverKPlus1 { r } => ScheduleDoc::RHarmonic { r: *r },
            ScheduleKind::Constant { t } => ScheduleDoc::Const { t: *t },
        })
    }

    pub fn to_kind(&self) -> ScheduleKind {
        match self {
            ScheduleDoc::BetaHarmonic { beta } => ScheduleKind::BetaOverKPlus1 { beta: Some(*beta) },
            ScheduleDoc::BetaAk { beta, ak } => ScheduleKind::BetaTimesAk {
                beta: Some(*beta),
                seq: match ak {
                    AkDoc::Harmonic => StepSequence::Harmonic,
                    AkDoc::Power { p } => StepSequence::Power { p: *p },
                    AkDoc::Table(v) => StepSequence::Table(v.clone()),
                },
            },
            ScheduleDoc::RxHarmonic { r_mult } => ScheduleKind::FullRxOverKPlus1 { r_mult: *r_mult },
            ScheduleDoc::RHarmonic { r } => ScheduleKind::ROverKPlus1 { r: *r },
            ScheduleDoc::Const { t } => ScheduleKind::Constant { t: *t },
        }
    }

    /// `r` when the nominal steps are `r/(k+1)`.
    pub fn harmonic_numerator(&self) -> Option<f64> {
        match self {
            ScheduleDoc::BetaHarmonic { beta } => Some(*beta),
            ScheduleDoc::RHarmonic { r } => Some(*r),
            _ => None,
        }
    }
}
