use std::fmt;

use serde::{Deserialize, Serialize};

use sepforge_core::algebra::{Algebra, AlgebraKind};
use sepforge_core::field::FieldSpec;

pub const CONFIG_SCHEMA: &str = "sepforge.config/v1";

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl<E: std::error::Error> From<E> for ConfigError {
    fn from(e: E) -> Self {
        ConfigError(e.to_string())
    }
}

fn bad<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    SeparateDiff,
    SeparateMod,
    Witness,
    Chain,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::SeparateDiff => "separate-diff",
            Command::SeparateMod => "separate-mod",
            Command::Witness => "witness",
            Command::Chain => "chain",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Generators {
    Count(usize),
    Names(Vec<String>),
}

/// Which algebra and field a run works in. Echoed into every report so
/// that `chain` can rebuild the algebra from a report alone.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDescriptor {
    pub algebra: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Generators>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
}

impl AlgebraDescriptor {
    pub fn build(&self) -> Result<Algebra, ConfigError> {
        let spec: FieldSpec = match &self.field {
            Some(f) => f.parse()?,
            None => FieldSpec::Rationals,
        };
        let count = match &self.generators {
            Some(Generators::Count(n)) => Some(*n),
            Some(Generators::Names(names)) => Some(names.len()),
            None => None,
        };
        let fixed = |kind: AlgebraKind, n: usize| match count {
            Some(c) if c != n => bad(format!("{kind} has {n} generators, config declares {c}")),
            _ => Ok(kind),
        };
        let kind = match self.algebra.as_str() {
            "commpoly" | "poly" => AlgebraKind::CommPoly { variables: count.unwrap_or(1) },
            "free" => AlgebraKind::Free { generators: count.unwrap_or(2) },
            "jacobson" => fixed(AlgebraKind::Jacobson, 2)?,
            "weyl" => fixed(AlgebraKind::Weyl, 2)?,
            "matrix" => {
                let Some(size) = self.size else {
                    return bad("matrix algebra needs \"size\"");
                };
                fixed(AlgebraKind::Matrix { size }, size * size)?
            }
            other => return bad(format!("unknown algebra {other:?}")),
        };
        if self.size.is_some() && !matches!(kind, AlgebraKind::Matrix { .. }) {
            return bad("\"size\" only applies to matrix algebras");
        }
        Ok(match &self.generators {
            Some(Generators::Names(names)) => Algebra::with_names(kind, spec, names.clone())?,
            _ => Algebra::new(kind, spec)?,
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct OracleConfig {
    /// Largest generator degree of enumerated monomial ideals. Defaults to
    /// the degree of the subspace, which already decides every ideal.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monomial_degree_bound: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub laurent_coefficients: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub laurent_width: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Generators>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    /// One list of variable images per derivation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derivations: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subspace: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_max: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal_generators: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_bound: Option<u32>,
    /// Path to a report, relative to the config file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input_report: Option<String>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let config: RunConfig = serde_json::from_str(text)?;
        if config.schema != CONFIG_SCHEMA {
            return bad(format!("schema must be {CONFIG_SCHEMA:?}, got {:?}", config.schema));
        }
        Ok(config)
    }

    pub fn descriptor(&self) -> Result<AlgebraDescriptor, ConfigError> {
        let Some(algebra) = self.algebra.clone() else {
            return bad("missing \"algebra\"");
        };
        Ok(AlgebraDescriptor {
            algebra,
            generators: self.generators.clone(),
            size: self.size,
            field: self.field.clone(),
        })
    }

    /// Reject fields that belong to other commands, missing required
    /// fields, and zero bounds.
    pub fn validate(&self, command: Command) -> Result<(), ConfigError> {
        use Command::*;
        let present: [(&str, bool, &[Command]); 14] = [
            ("algebra", self.algebra.is_some(), &[SeparateDiff, SeparateMod, Witness]),
            ("generators", self.generators.is_some(), &[SeparateDiff, SeparateMod, Witness]),
            ("size", self.size.is_some(), &[SeparateDiff, SeparateMod, Witness]),
            ("field", self.field.is_some(), &[SeparateDiff, SeparateMod, Witness]),
            ("derivations", self.derivations.is_some(), &[SeparateDiff]),
            ("subspace", self.subspace.is_some(), &[SeparateDiff, SeparateMod]),
            ("d_max", self.d_max.is_some(), &[SeparateDiff]),
            ("budget", self.budget.is_some(), &[SeparateMod]),
            ("oracle", self.oracle.is_some(), &[SeparateDiff, SeparateMod]),
            ("ideal_generators", self.ideal_generators.is_some(), &[Witness]),
            ("bound", self.bound.is_some(), &[Witness]),
            ("max_bound", self.max_bound.is_some(), &[Witness]),
            ("input_report", self.input_report.is_some(), &[Chain]),
            ("schema", true, &[SeparateDiff, SeparateMod, Witness, Chain]),
        ];
        for (name, is_set, allowed) in present {
            if is_set && !allowed.contains(&command) {
                return bad(format!("\"{name}\" is not used by {}", command.name()));
            }
        }
        let require = |name: &str, is_set: bool| if is_set { Ok(()) } else { bad(format!("missing \"{name}\"")) };
        let exactly_one = |a: &str, a_set: bool, b: &str, b_set: bool| {
            if a_set == b_set {
                bad(format!("exactly one of \"{a}\" and \"{b}\" is required"))
            } else {
                Ok(())
            }
        };
        match command {
            SeparateDiff => {
                require("algebra", self.algebra.is_some())?;
                require("derivations", self.derivations.is_some())?;
                exactly_one("subspace", self.subspace.is_some(), "d_max", self.d_max.is_some())?;
            }
            SeparateMod => {
                require("algebra", self.algebra.is_some())?;
                require("subspace", self.subspace.is_some())?;
                require("budget", self.budget.is_some())?;
            }
            Witness => {
                require("algebra", self.algebra.is_some())?;
                require("ideal_generators", self.ideal_generators.is_some())?;
                exactly_one("bound", self.bound.is_some(), "max_bound", self.max_bound.is_some())?;
            }
            Chain => require("input_report", self.input_report.is_some())?,
        }
        let positive = [
            ("d_max", self.d_max.map(|v| v as usize)),
            ("budget", self.budget),
            ("bound", self.bound.map(|v| v as usize)),
            ("max_bound", self.max_bound.map(|v| v as usize)),
            ("size", self.size),
            ("oracle.monomial_degree_bound", self.oracle.as_ref().and_then(|o| o.monomial_degree_bound).map(|v| v as usize)),
            ("oracle.laurent_width", self.oracle.as_ref().and_then(|o| o.laurent_width)),
        ];
        for (name, value) in positive {
            if value == Some(0) {
                return bad(format!("\"{name}\" must be at least 1"));
            }
        }
        Ok(())
    }
}
