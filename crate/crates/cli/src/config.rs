//! JSON run configuration.

use serde::Deserialize;
use std::path::{Path, PathBuf};

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub norm: NormConfig,
    pub curve: CurveConfig,
    pub operation: OperationConfig,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default)]
    pub numeric: NumericConfig,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct NormConfig {
    pub kind: String,
    pub p: Option<f64>,
    pub coefficients: Option<Vec<f64>>,
    /// Angular table size.
    pub grid: Option<usize>,
}

/// One curve source, selected by `kind`: `expression`, `catalog`, `csv` or
/// `synthesis`. Fields that do not belong to the selected source are
/// rejected.
#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CurveConfig {
    pub kind: String,
    pub x: Option<String>,
    pub y: Option<String>,
    pub name: Option<String>,
    pub path: Option<PathBuf>,
    pub alpha: Option<String>,
    pub kappa: Option<String>,
    pub gamma0: Option<[f64; 2]>,
    pub eta0_angle: Option<f64>,
    pub domain: Option<[f64; 2]>,
    pub closed: Option<bool>,
    pub samples: Option<usize>,
    /// Catalog parameters: `radius` for circles, `a`, `b` for ellipses,
    /// `harmonic` for the closed fronts with `κ = sin t`.
    pub radius: Option<f64>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub harmonic: Option<u32>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct OperationConfig {
    pub kind: String,
    pub d: Option<f64>,
    pub point: Option<[f64; 2]>,
    pub second: Option<Box<CurveConfig>>,
    pub t0: Option<f64>,
    pub u0: Option<f64>,
    pub kmax: Option<usize>,
    pub target: Option<NormConfig>,
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub csv: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub report: Option<PathBuf>,
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct NumericConfig {
    /// Overrides the curve's sample count.
    pub samples: Option<usize>,
    /// Acceptance threshold for the Legendre residual.
    pub legendre_tolerance: Option<f64>,
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed config: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
    #[error("{field}: {source}")]
    Expression {
        field: String,
        source: crate::expr::ParseError,
    },
}

pub fn invalid(msg: impl Into<String>) -> ConfigError {
    ConfigError::Invalid(msg.into())
}

/// A loaded configuration and the directory its relative inputs refer to.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub config: RunConfig,
    pub base: PathBuf,
}

pub fn load_config(path: &Path) -> Result<Loaded, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let config = parse_config(&text)?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok(Loaded { config, base })
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let config: RunConfig = serde_json::from_str(text)?;
    config.curve.check_fields()?;
    if let Some(second) = &config.operation.second {
        second.check_fields()?;
    }
    Ok(config)
}

impl CurveConfig {
    fn check_fields(&self) -> Result<(), ConfigError> {
        let present = [
            ("x", self.x.is_some()),
            ("y", self.y.is_some()),
            ("name", self.name.is_some()),
            ("path", self.path.is_some()),
            ("alpha", self.alpha.is_some()),
            ("kappa", self.kappa.is_some()),
            ("gamma0", self.gamma0.is_some()),
            ("eta0_angle", self.eta0_angle.is_some()),
            ("domain", self.domain.is_some()),
            ("closed", self.closed.is_some()),
            ("samples", self.samples.is_some()),
            ("radius", self.radius.is_some()),
            ("a", self.a.is_some()),
            ("b", self.b.is_some()),
            ("harmonic", self.harmonic.is_some()),
        ];
        let (allowed, required): (&[&str], &[&str]) = match self.kind.as_str() {
            "expression" => (
                &["x", "y", "domain", "closed", "samples"],
                &["x", "y", "domain"],
            ),
            "catalog" => (
                &["name", "samples", "radius", "a", "b", "harmonic"],
                &["name"],
            ),
            "csv" => (&["path", "closed"], &["path"]),
            "synthesis" => (
                &[
                    "alpha",
                    "kappa",
                    "gamma0",
                    "eta0_angle",
                    "domain",
                    "closed",
                    "samples",
                ],
                &["alpha", "kappa", "domain"],
            ),
            other => {
                return Err(invalid(format!(
                    "unknown curve kind `{other}` (expected expression, catalog, csv or synthesis)"
                )))
            }
        };
        for (field, set) in present {
            if set && !allowed.contains(&field) {
                return Err(invalid(format!(
                    "field `{field}` does not apply to a {} curve",
                    self.kind
                )));
            }
        }
        for field in required {
            if !present.iter().any(|(f, set)| f == field && *set) {
                return Err(invalid(format!("a {} curve needs `{field}`", self.kind)));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config() {
        let c = parse_config(
            r#"{"norm": {"kind": "euclidean"},
                "curve": {"kind": "catalog", "name": "astroid"},
                "operation": {"kind": "analyze"}}"#,
        )
        .unwrap();
        assert_eq!(c.curve.name.as_deref(), Some("astroid"));
        assert_eq!(c.output, OutputConfig::default());
    }

    #[test]
    fn foreign_fields_are_rejected() {
        let err = parse_config(
            r#"{"norm": {"kind": "euclidean"},
                "curve": {"kind": "catalog", "name": "astroid", "x": "t"},
                "operation": {"kind": "analyze"}}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("`x`"));
        assert!(parse_config(r#"{"norm": {"kind": "euclidean"}, "curve": {"kind": "expression", "x": "t"}, "operation": {"kind": "analyze"}}"#).is_err());
        assert!(parse_config(r#"{"norm": {"kind": "euclidean", "q": 2}, "curve": {"kind": "catalog", "name": "circle"}, "operation": {"kind": "analyze"}}"#).is_err());
    }
}
