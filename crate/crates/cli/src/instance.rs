//! The instance document: manifold, ball and weighted atoms.

use std::path::Path;

use geomedian::measure::validate;
use geomedian::{Atom, BallSpec, DiscreteMeasure, Family, ManifoldSpec};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::io::{parse_json, read_text};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub manifold: ManifoldDoc,
    pub ball: BallDoc,
    pub atoms: Vec<AtomDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldDoc {
    pub family: String,
    pub dimension: usize,
    pub curvature: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallDoc {
    pub center: Vec<f64>,
    pub rho: f64,
    /// Lower curvature bound override.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    /// Upper curvature bound override.
    #[serde(rename = "Delta", default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomDoc {
    pub coords: Vec<f64>,
    pub weight: f64,
}

impl InstanceDoc {
    pub fn from_measure(mu: &DiscreteMeasure) -> Self {
        let m = mu.ball().manifold();
        let bounds = mu.ball().bounds();
        let widened = bounds.delta() != m.curvature() || bounds.upper() != m.curvature();
        InstanceDoc {
            manifold: ManifoldDoc {
                family: m.family().name().to_string(),
                dimension: m.dimension(),
                curvature: m.curvature(),
            },
            ball: BallDoc {
                center: mu.ball().center().coords().to_vec(),
                rho: mu.ball().rho(),
                delta: widened.then(|| bounds.delta()),
                upper: widened.then(|| bounds.upper()),
            },
            atoms: mu.atoms().iter().map(|a| AtomDoc { coords: a.point.coords().to_vec(), weight: a.weight }).collect(),
        }
    }

    pub fn manifold_spec(&self) -> Result<ManifoldSpec, CliError> {
        let family: Family = self.manifold.family.parse().map_err(|e| CliError::Invalid(format!("manifold.family: {e}")))?;
        ManifoldSpec::new(family, self.manifold.dimension, self.manifold.curvature)
            .map_err(|e| CliError::Invalid(format!("manifold: {e}")))
    }

    pub fn ball_spec(&self) -> Result<BallSpec, CliError> {
        let m = self.manifold_spec()?;
        let center = m.point(&self.ball.center).map_err(|e| CliError::Invalid(format!("ball.center: {e}")))?;
        let kappa = m.curvature();
        let ball = match (self.ball.delta, self.ball.upper) {
            (None, None) => BallSpec::new(center, self.ball.rho),
            (delta, upper) => {
                BallSpec::with_bounds(center, self.ball.rho, delta.unwrap_or(kappa), upper.unwrap_or(kappa))
            }
        };
        ball.map_err(|e| CliError::Invalid(format!("ball: {e}")))
    }

    /// Builds and validates the measure; every problem names its field.
    pub fn measure(&self) -> Result<DiscreteMeasure, CliError> {
        let ball = self.ball_spec()?;
        let m = *ball.manifold();
        let mut atoms = Vec::with_capacity(self.atoms.len());
        for (i, a) in self.atoms.iter().enumerate() {
            let point = m.point(&a.coords).map_err(|e| CliError::Invalid(format!("atoms[{i}].coords: {e}")))?;
            atoms.push(Atom::new(point, a.weight));
        }
        let report = validate(&atoms, &ball);
        if !report.is_valid() {
            return Err(CliError::Invalid(format!("invalid measure: {report}")));
        }
        Ok(DiscreteMeasure::new(atoms, ball)?)
    }
}

pub fn read_instance(path: &Path) -> Result<(InstanceDoc, DiscreteMeasure), CliError> {
    let doc: InstanceDoc = parse_json(path, &read_text(path)?)?;
    let mu = doc.measure()?;
    Ok((doc, mu))
}
