//! Command-line arguments, their JSON config counterpart, and merging.
//!
//! Every command reads its inputs from one struct whose fields are optional
//! both on the command line and in the config file; the two are merged with
//! command-line values taking precedence, then validated.

use std::convert::Infallible;
use std::str::FromStr;

use clap::Args;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

/// A failure attributable to the configuration rather than the mathematics.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{message}")]
pub struct ConfigError {
    pub field: Option<String>,
    pub message: String,
}

impl ConfigError {
    pub fn new(field: Option<&str>, message: impl Into<String>) -> Self {
        ConfigError {
            field: field.map(str::to_string),
            message: message.into(),
        }
    }

    pub fn missing(field: &str) -> Self {
        Self::new(Some(field), format!("missing required field `{field}`"))
    }
}

/// One list entry: a JSON number or a string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    fn text(&self) -> String {
        match self {
            Scalar::Int(n) => n.to_string(),
            Scalar::Text(s) => s.trim().to_string(),
        }
    }
}

/// A list given either as a JSON array or as comma-separated text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ListArg {
    Items(Vec<Scalar>),
    One(Scalar),
}

impl FromStr for ListArg {
    type Err = Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(ListArg::One(Scalar::Text(s.to_string())))
    }
}

impl ListArg {
    /// The entries as strings; text is split on commas.
    pub fn items(&self) -> Vec<String> {
        match self {
            ListArg::Items(v) => v.iter().map(Scalar::text).collect(),
            ListArg::One(Scalar::Int(n)) => vec![n.to_string()],
            ListArg::One(Scalar::Text(s)) => s
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .collect(),
        }
    }

    /// The entries as integers of type `T`.
    pub fn parse<T: FromStr>(&self, field: &str) -> Result<Vec<T>, ConfigError> {
        self.items()
            .iter()
            .map(|s| {
                s.parse().map_err(|_| {
                    ConfigError::new(Some(field), format!("field `{field}`: `{s}` is not a valid integer"))
                })
            })
            .collect()
    }
}

/// The value of a required field.
pub fn need<T: Clone>(value: &Option<T>, field: &str) -> Result<T, ConfigError> {
    value.clone().ok_or_else(|| ConfigError::missing(field))
}

/// Reject fields the selected command does not read.
pub fn only(args: &impl Serialize, allowed: &[&str]) -> Result<(), ConfigError> {
    let Value::Object(map) = serde_json::to_value(args).expect("arguments serialize") else {
        unreachable!("argument structs serialize to objects")
    };
    match map.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(ConfigError::new(
            Some(k),
            format!(
                "field `{k}` is not used by this command (expected one of: {})",
                allowed.join(", ")
            ),
        )),
        None => Ok(()),
    }
}

/// Overlay the command-line values on the config object and validate the
/// result against the argument schema.
pub fn merge<T: Serialize + DeserializeOwned>(cli: &T, config: &Map<String, Value>) -> Result<T, ConfigError> {
    let Value::Object(flags) = serde_json::to_value(cli).expect("arguments serialize") else {
        unreachable!("argument structs serialize to objects")
    };
    let mut merged = config.clone();
    merged.extend(flags);
    serde_json::from_value(Value::Object(merged.clone())).map_err(|e| {
        let message = e.to_string();
        let named = message
            .split('`')
            .nth(1)
            .filter(|_| message.starts_with("unknown field") || message.starts_with("missing field"))
            .map(str::to_string);
        // every field is optional, so a key that fails on its own is the mistyped one
        let field = named.or_else(|| {
            merged.iter().find_map(|(k, v)| {
                let alone = Map::from_iter([(k.clone(), v.clone())]);
                serde_json::from_value::<T>(Value::Object(alone))
                    .is_err()
                    .then(|| k.clone())
            })
        });
        ConfigError {
            field,
            message: format!("invalid config: {message}"),
        }
    })
}

#[derive(Args, Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DrinfeldArgs {
    /// Order of the constant field F_q
    #[arg(long = "q")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,

    /// φ_T as τ-coefficients low to high ("T,0,1") or skew text ("T + t^2")
    #[arg(long = "phi_T", visible_alias = "phi-t", allow_hyphen_values = true)]
    #[serde(rename = "phi_T", default, skip_serializing_if = "Option::is_none")]
    pub phi_t: Option<ListArg>,

    /// The prime π of F_q[T] whose torsion is studied
    #[arg(long = "pi")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi: Option<String>,

    /// The place v of reduction (a monic irreducible in T)
    #[arg(long = "place")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub place: Option<String>,
}

#[derive(Args, Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerArgs {
    /// Order of the constant field F_q
    #[arg(long = "q")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,

    /// A single place ("inf" or a monic irreducible)
    #[arg(long = "place")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub place: Option<String>,

    /// The place set S, comma separated
    #[arg(long = "S", visible_alias = "s")]
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    pub s: Option<ListArg>,

    /// Deepest level n of the constant tower
    #[arg(long = "levels")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<u32>,
}

#[derive(Args, Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZetaArgs {
    /// Order of the constant field F_q
    #[arg(long = "q")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,

    /// L-polynomial coefficients, constant term first ("1,0,2")
    #[arg(long = "lpoly", allow_hyphen_values = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lpoly: Option<ListArg>,

    /// The prime p of the Z_p-extension
    #[arg(long = "p")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,

    /// Number of tower levels, n = 0..levels-1
    #[arg(long = "levels")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<u32>,

    /// Point counts N_1..N_g over F_q, F_{q^2}, ...
    #[arg(long = "counts")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<ListArg>,

    /// Affine plane model f(x, y) = 0
    #[arg(long = "affine", allow_hyphen_values = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub affine: Option<String>,

    /// Points at infinity added to every affine count
    #[arg(
        long = "inf-correction",
        visible_alias = "inf_correction",
        allow_hyphen_values = true
    )]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inf_correction: Option<i64>,

    /// Genus of the curve given by --affine
    #[arg(long = "genus")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<usize>,

    /// Extension degree k for counting points over F_{q^k}
    #[arg(long = "k")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
}

#[derive(Args, Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IwasawaArgs {
    /// The prime p
    #[arg(long = "p")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,

    /// A polynomial in Z[T]
    #[arg(long = "f", allow_hyphen_values = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,

    /// Exponents μ_i of the summands Λ/(p^μ_i)
    #[arg(long = "mu-parts", visible_alias = "mu_parts")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_parts: Option<ListArg>,

    /// Distinguished polynomials f_j of the summands Λ/(f_j)
    #[arg(long = "lambda-parts", visible_alias = "lambda_parts", allow_hyphen_values = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_parts: Option<ListArg>,

    /// Number of levels, n = 0..levels-1
    #[arg(long = "levels")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<u32>,

    /// Observed exponents e_0, e_1, ...
    #[arg(long = "e", allow_hyphen_values = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<ListArg>,
}

#[derive(Args, Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DualArgs {
    /// Size of the residue field A/𝔭
    #[arg(long = "residue-size", visible_alias = "residue_size")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residue_size: Option<u64>,

    /// Corank of the divisible part
    #[arg(long = "corank")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corank: Option<u32>,

    /// Exponents e_i of the finite summands A/𝔭^e_i
    #[arg(long = "factors")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<ListArg>,

    /// Compare torsion and quotients for 1..=n
    #[arg(long = "n")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,

    /// Dimension of the residual fine Selmer group
    #[arg(long = "sel-dim", visible_alias = "sel_dim", allow_hyphen_values = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sel_dim: Option<i64>,

    /// Supplied local terms, "dim" or "place=dim"
    #[arg(long = "h0", allow_hyphen_values = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h0: Option<ListArg>,

    /// Order of the constant field, for computed local terms
    #[arg(long = "q")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,

    /// φ_T, for computed local terms
    #[arg(long = "phi_T", visible_alias = "phi-t", allow_hyphen_values = true)]
    #[serde(rename = "phi_T", default, skip_serializing_if = "Option::is_none")]
    pub phi_t: Option<ListArg>,

    /// The prime π, for computed local terms
    #[arg(long = "pi")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi: Option<String>,

    /// Places w whose local terms are computed or bounded
    #[arg(long = "places")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub places: Option<ListArg>,
}
