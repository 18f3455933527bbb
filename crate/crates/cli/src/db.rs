//! Operator database: a TOML file with one `[[operator]]` table per record.
//! Schema in `data/README.md`.

use std::path::Path;

use hwcy_core::catalog::{Flags, HwSign, OperatorSpec};
use hwcy_core::diffop::{parse_weyl, WeylOperator};
use hwcy_core::Rational;
use serde::Deserialize;
use thiserror::Error;

const BUNDLED: &str = include_str!("../data/operators.toml");

#[derive(Debug, Error)]
pub enum DbError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error("malformed database: {0}")]
    Syntax(String),

    #[error("record {index}: {msg}")]
    Schema { index: usize, msg: String },

    #[error("record {index} (`{id}`): {source}")]
    Operator { index: usize, id: String, source: hwcy_core::Error },

    #[error("record {index}: duplicate id `{id}` (first defined in record {first})")]
    Duplicate { index: usize, id: String, first: usize },
}

/// How the operator was written in the database.
#[derive(Clone, Debug, PartialEq)]
pub enum Form {
    Expr(String),
    /// `rows[i][j]` is the coefficient of `z^j θ^i`.
    ThetaSlices(Vec<Vec<Rational>>),
}

impl Form {
    pub fn operator(&self) -> hwcy_core::Result<WeylOperator> {
        match self {
            Form::Expr(e) => parse_weyl(e),
            Form::ThetaSlices(rows) => Ok(WeylOperator::from_theta_powers(rows)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OperatorRecord {
    pub form: Form,
    pub spec: OperatorSpec,
}

impl OperatorRecord {
    pub fn id(&self) -> &str {
        &self.spec.id
    }
}

/// Numbers may be TOML integers or decimal strings (for values beyond i64).
#[derive(Deserialize)]
#[serde(untagged)]
enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    fn to_rational(&self) -> Result<Rational, String> {
        match self {
            Number::Int(n) => Ok(Rational::from_i64(*n)),
            Number::Text(s) => s.trim().parse().map_err(|_| format!("`{s}` is not a number")),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRecord {
    id: String,
    name: Option<String>,
    expr: Option<String>,
    theta_slices: Option<Vec<Vec<Number>>>,
    kappa: Option<Number>,
    #[serde(default)]
    excluded_primes: Vec<u64>,
    #[serde(default)]
    hw_sign: HwSign,
    #[serde(default)]
    flags: Flags,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDb {
    #[serde(default)]
    operator: Vec<toml::Value>,
}

fn valid_id(id: &str) -> bool {
    !id.is_empty() && id.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

fn record(index: usize, raw: RawRecord) -> Result<OperatorRecord, DbError> {
    let schema = |msg: String| DbError::Schema { index, msg };
    if !valid_id(&raw.id) {
        return Err(schema(format!("id `{}` must be non-empty ASCII letters, digits, `_` or `-`", raw.id)));
    }
    let form = match (raw.expr, raw.theta_slices) {
        (Some(e), None) => Form::Expr(e),
        (None, Some(rows)) => {
            let rows = rows
                .iter()
                .map(|r| r.iter().map(Number::to_rational).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|m| schema(format!("theta_slices: {m}")))?;
            Form::ThetaSlices(rows)
        }
        _ => return Err(schema(format!("`{}` needs exactly one of `expr` and `theta_slices`", raw.id))),
    };
    let kappa = match raw.kappa {
        Some(k) => k.to_rational().map_err(|m| schema(format!("kappa: {m}")))?,
        None => Rational::one(),
    };
    let wrap = |source| DbError::Operator { index, id: raw.id.clone(), source };
    let op = form.operator().map_err(wrap)?;
    let name = raw.name.unwrap_or_else(|| raw.id.clone());
    let spec = OperatorSpec::new(raw.id.clone(), name, op, kappa, raw.excluded_primes, raw.hw_sign, raw.flags).map_err(wrap)?;
    Ok(OperatorRecord { form, spec })
}

/// Parse and certify every record. Record indices in errors are 1-based.
pub fn parse(text: &str) -> Result<Vec<OperatorRecord>, DbError> {
    let db: RawDb = toml::from_str(text).map_err(|e| DbError::Syntax(e.to_string()))?;
    let mut out: Vec<OperatorRecord> = Vec::with_capacity(db.operator.len());
    for (i, value) in db.operator.into_iter().enumerate() {
        let index = i + 1;
        let raw = RawRecord::deserialize(value).map_err(|e| DbError::Schema { index, msg: e.to_string() })?;
        let rec = record(index, raw)?;
        if let Some(first) = out.iter().position(|r| r.id() == rec.id()) {
            return Err(DbError::Duplicate { index, id: rec.spec.id, first: first + 1 });
        }
        out.push(rec);
    }
    Ok(out)
}

pub fn load(path: &Path) -> Result<Vec<OperatorRecord>, DbError> {
    let text = std::fs::read_to_string(path).map_err(|source| DbError::Io { path: path.display().to_string(), source })?;
    parse(&text)
}

/// The database shipped with the binary.
pub fn bundled() -> Vec<OperatorRecord> {
    parse(BUNDLED).expect("bundled database is valid")
}
