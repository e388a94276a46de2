//! JSON file formats shared by the command line and the bindings.
//!
//! Matrices are arrays of rows whose entries are strings such as `"-3/7"`
//! (bare integers are accepted on input). Prime-field matrices are wrapped
//! as `{"modulus": p, "entries": rows}`. Polynomial systems are an array
//! of polynomial strings, or `{"variables": [...], "polynomials": [...]}`.

use serde_json::{json, Map, Value};

use crate::families::{FamilyCase, FamilyParams};
use crate::linalg::{Matrix, Rational, Scalar, ScalarParseError};
use crate::polyalg::{parse_poly, MultiPoly, PolyError, VarTable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IoError {
    #[error("invalid JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("at {location}: {message}")]
    Format { location: String, message: String },
    #[error("at {location}: {source}")]
    Scalar {
        location: String,
        source: ScalarParseError,
    },
    #[error("at {location}: {source}")]
    Poly { location: String, source: PolyError },
}

fn format_err(location: impl Into<String>, message: impl Into<String>) -> IoError {
    IoError::Format {
        location: location.into(),
        message: message.into(),
    }
}

pub fn parse_json(text: &str) -> Result<Value, IoError> {
    serde_json::from_str(text).map_err(|e| {
        let full = e.to_string();
        let message = match full.rsplit_once(" at line ") {
            Some((head, _)) => head.to_string(),
            None => full,
        };
        IoError::Json {
            line: e.line(),
            column: e.column(),
            message,
        }
    })
}

/// Entry text of a scalar value: a string or a JSON integer.
fn scalar_text(v: &Value, location: &str) -> Result<String, IoError> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
        Value::Number(_) => Err(format_err(
            location,
            "floating-point entries are not accepted; write a fraction string",
        )),
        _ => Err(format_err(location, "expected a scalar string")),
    }
}

pub fn parse_scalar_value<T: Scalar>(v: &Value, location: &str) -> Result<T, IoError> {
    let text = scalar_text(v, location)?;
    T::parse_scalar(&text).map_err(|source| IoError::Scalar {
        location: location.to_string(),
        source,
    })
}

/// A matrix as read from JSON, before choosing the scalar domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawMatrix {
    /// Present for the prime-field wrapper.
    pub modulus: Option<u32>,
    rows: Vec<Vec<Value>>,
    location: String,
}

impl RawMatrix {
    pub fn from_value(v: &Value, location: &str) -> Result<Self, IoError> {
        let (modulus, rows_v, loc) = match v {
            Value::Object(obj) => {
                let modulus = match obj.get("modulus") {
                    None | Some(Value::Null) => None,
                    Some(m) => Some(m.as_u64().and_then(|m| u32::try_from(m).ok()).ok_or_else(
                        || {
                            format_err(
                                format!("{location}.modulus"),
                                "expected a small positive integer",
                            )
                        },
                    )?),
                };
                let entries = obj
                    .get("entries")
                    .ok_or_else(|| format_err(location, "missing \"entries\""))?;
                (modulus, entries, format!("{location}.entries"))
            }
            other => (None, other, location.to_string()),
        };
        let rows = rows_v
            .as_array()
            .ok_or_else(|| format_err(&loc, "expected an array of rows"))?;
        let mut out = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let row = row
                .as_array()
                .ok_or_else(|| format_err(format!("{loc}[{i}]"), "expected an array of entries"))?;
            if let Some(first) = out.first().map(|r: &Vec<Value>| r.len()) {
                if row.len() != first {
                    return Err(format_err(
                        format!("{loc}[{i}]"),
                        format!("row has {} entries, expected {first}", row.len()),
                    ));
                }
            }
            out.push(row.clone());
        }
        Ok(RawMatrix {
            modulus,
            rows: out,
            location: loc,
        })
    }

    pub fn parse(text: &str) -> Result<Self, IoError> {
        Self::from_value(&parse_json(text)?, "$")
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.rows.first().map_or(0, Vec::len))
    }

    /// Parse every entry in the scalar domain `T`.
    pub fn to_matrix<T: Scalar>(&self) -> Result<Matrix<T>, IoError> {
        let mut rows = Vec::with_capacity(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            let mut r = Vec::with_capacity(row.len());
            for (j, v) in row.iter().enumerate() {
                r.push(parse_scalar_value(
                    v,
                    &format!("{}[{i}][{j}]", self.location),
                )?);
            }
            rows.push(r);
        }
        Matrix::from_rows(rows).map_err(|e| format_err(&self.location, e.to_string()))
    }
}

/// Rows of entry strings; prime-field matrices carry their modulus.
pub fn matrix_to_json<T: Scalar>(m: &Matrix<T>) -> Value {
    let rows: Vec<Vec<String>> = m
        .row_vecs()
        .into_iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    if T::CHARACTERISTIC == 0 {
        json!(rows)
    } else {
        json!({ "modulus": T::CHARACTERISTIC, "entries": rows })
    }
}

pub fn parse_rational_matrix(text: &str) -> Result<Matrix<Rational>, IoError> {
    let raw = RawMatrix::parse(text)?;
    if let Some(p) = raw.modulus {
        return Err(format_err(
            "$.modulus",
            format!("expected a rational matrix, found modulus {p}"),
        ));
    }
    raw.to_matrix()
}

/// Polynomials and, when the file names them, their variables in
/// descending lex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawSystem {
    pub variables: Option<Vec<String>>,
    pub polynomials: Vec<String>,
}

impl RawSystem {
    pub fn parse(text: &str) -> Result<Self, IoError> {
        let v = parse_json(text)?;
        let (vars, polys) = match &v {
            Value::Array(_) => (None, &v),
            Value::Object(obj) => {
                let vars = match obj.get("variables").or_else(|| obj.get("order")) {
                    None => None,
                    Some(Value::String(s)) => {
                        Some(s.split(',').map(|t| t.trim().to_string()).collect())
                    }
                    Some(Value::Array(a)) => Some(
                        a.iter()
                            .enumerate()
                            .map(|(i, x)| {
                                x.as_str().map(str::to_string).ok_or_else(|| {
                                    format_err(format!("$.variables[{i}]"), "expected a string")
                                })
                            })
                            .collect::<Result<Vec<_>, _>>()?,
                    ),
                    Some(_) => return Err(format_err("$.variables", "expected a list of names")),
                };
                let polys = obj
                    .get("polynomials")
                    .ok_or_else(|| format_err("$", "missing \"polynomials\""))?;
                (vars, polys)
            }
            _ => return Err(format_err("$", "expected an array or an object")),
        };
        let list = polys
            .as_array()
            .ok_or_else(|| format_err("$.polynomials", "expected an array of strings"))?;
        let polynomials = list
            .iter()
            .enumerate()
            .map(|(i, p)| {
                p.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| format_err(format!("polynomials[{i}]"), "expected a string"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RawSystem {
            variables: vars,
            polynomials,
        })
    }

    /// Parse under `order`, or the file's own variable list.
    pub fn resolve(&self, order: Option<&VarTable>) -> Result<(VarTable, Vec<MultiPoly>), IoError> {
        let vars = match (order, &self.variables) {
            (Some(v), _) => v.clone(),
            (None, Some(names)) => VarTable::new(names).map_err(|source| IoError::Poly {
                location: "$.variables".into(),
                source,
            })?,
            (None, None) => return Err(format_err("$", "no variable order given")),
        };
        let polys = self
            .polynomials
            .iter()
            .enumerate()
            .map(|(i, s)| {
                parse_poly(s, &vars).map_err(|source| IoError::Poly {
                    location: format!("polynomials[{i}]"),
                    source,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((vars, polys))
    }
}

pub fn system_to_json(vars: &VarTable, polys: &[MultiPoly]) -> Value {
    json!({
        "variables": vars.names(),
        "polynomials": polys.iter().map(|p| p.to_text(vars)).collect::<Vec<_>>(),
    })
}

/// A family parameter file: `{"case": tag, ...fields}`. Matrix fields use
/// the upper-case block names; an optional `"modulus"` selects F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawFamily {
    pub case: FamilyCase,
    pub modulus: Option<u32>,
    fields: Map<String, Value>,
}

const MATRIX_FIELDS: [&str; 11] = ["C", "D", "Y2", "Z", "W", "Z1", "W1", "U", "V", "U1", "U2"];
const SCALAR_FIELDS: [&str; 7] = ["a", "b", "c", "d", "alpha", "beta", "sqrt_alpha"];
const INDEX_FIELDS: [&str; 4] = ["n", "r", "s", "variant"];

impl RawFamily {
    pub fn from_value(v: &Value) -> Result<Self, IoError> {
        let obj = v
            .as_object()
            .ok_or_else(|| format_err("$", "expected an object"))?;
        let case = obj
            .get("case")
            .and_then(Value::as_str)
            .ok_or_else(|| format_err("$.case", "missing case tag"))?;
        let case = case
            .parse::<FamilyCase>()
            .map_err(|e| format_err("$.case", e.to_string()))?;
        let modulus = match obj.get("modulus") {
            None | Some(Value::Null) => None,
            Some(m) => Some(
                m.as_u64()
                    .and_then(|m| u32::try_from(m).ok())
                    .ok_or_else(|| format_err("$.modulus", "expected a small positive integer"))?,
            ),
        };
        let mut fields = Map::new();
        for (k, val) in obj {
            let known = k == "case"
                || k == "modulus"
                || MATRIX_FIELDS.contains(&k.as_str())
                || SCALAR_FIELDS.contains(&k.as_str())
                || INDEX_FIELDS.contains(&k.as_str());
            if !known {
                return Err(format_err(format!("$.{k}"), "unknown parameter"));
            }
            fields.insert(k.clone(), val.clone());
        }
        Ok(RawFamily {
            case,
            modulus,
            fields,
        })
    }

    pub fn parse(text: &str) -> Result<Self, IoError> {
        Self::from_value(&parse_json(text)?)
    }

    pub fn to_params<T: Scalar>(&self) -> Result<FamilyParams<T>, IoError> {
        let f = &self.fields;
        let mat = |name: &str| -> Result<Option<Matrix<T>>, IoError> {
            f.get(name)
                .map(|v| RawMatrix::from_value(v, &format!("$.{name}"))?.to_matrix())
                .transpose()
        };
        let sc = |name: &str| -> Result<Option<T>, IoError> {
            f.get(name)
                .map(|v| parse_scalar_value(v, &format!("$.{name}")))
                .transpose()
        };
        let idx = |name: &str| -> Result<Option<usize>, IoError> {
            f.get(name)
                .map(|v| {
                    v.as_u64().map(|k| k as usize).ok_or_else(|| {
                        format_err(format!("$.{name}"), "expected a non-negative integer")
                    })
                })
                .transpose()
        };
        Ok(FamilyParams {
            n: idx("n")?,
            r: idx("r")?,
            s: idx("s")?,
            variant: idx("variant")?,
            c_block: mat("C")?,
            d_block: mat("D")?,
            y2: mat("Y2")?,
            z: mat("Z")?,
            w: mat("W")?,
            z1: mat("Z1")?,
            w1: mat("W1")?,
            u: mat("U")?,
            v: mat("V")?,
            u1: mat("U1")?,
            u2: mat("U2")?,
            a: sc("a")?,
            b: sc("b")?,
            c: sc("c")?,
            d: sc("d")?,
            alpha: sc("alpha")?,
            beta: sc("beta")?,
            sqrt_alpha: sc("sqrt_alpha")?,
        })
    }
}
