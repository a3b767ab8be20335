//! JSON form of an operator: `{"dim": d, "rows": [["p/q", ...], ...]}`.

use serde::{Deserialize, Serialize};

use super::operator::{format_scalar, parse_scalar, ExactOperator};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub rows: Vec<Vec<String>>,
}

impl From<&ExactOperator> for MatrixJson {
    fn from(t: &ExactOperator) -> Self {
        MatrixJson {
            dim: t.dim(),
            rows: t
                .rows()
                .iter()
                .map(|r| r.iter().map(format_scalar).collect())
                .collect(),
        }
    }
}

impl TryFrom<&MatrixJson> for ExactOperator {
    type Error = Error;

    fn try_from(m: &MatrixJson) -> Result<Self> {
        if m.rows.len() != m.dim {
            return Err(Error::DimensionMismatch(format!(
                "dim {} but {} rows",
                m.dim,
                m.rows.len()
            )));
        }
        let rows = m
            .rows
            .iter()
            .map(|r| r.iter().map(|x| parse_scalar(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        ExactOperator::from_rows(rows)
    }
}

pub fn to_json(t: &ExactOperator) -> Result<String> {
    Ok(serde_json::to_string(&MatrixJson::from(t))?)
}

pub fn from_json(s: &str) -> Result<ExactOperator> {
    let m: MatrixJson = serde_json::from_str(s)?;
    ExactOperator::try_from(&m)
}
