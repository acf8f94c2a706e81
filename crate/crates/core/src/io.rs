//! JSON input with located errors, and the result records the CLI emits.
//! Every record here deserializes back into itself.

use std::fmt;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::extreal::{DownReal, UpReal};
use crate::geometry::vec::P2;
use crate::setvalued::UpSet;

/// A malformed input: the file, the JSON path inside it and the reason.
#[derive(Clone, Debug, PartialEq)]
pub struct InputError {
    pub source: String,
    pub path: String,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() || self.path == "." {
            write!(f, "{}: {}", self.source, self.message)
        } else {
            write!(f, "{}: at `{}`: {}", self.source, self.path, self.message)
        }
    }
}

impl std::error::Error for InputError {}

/// Parses `text`, reporting the JSON path of the first offending value.
pub fn parse_json<T: DeserializeOwned>(source: &str, text: &str) -> Result<T, InputError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| InputError {
        source: source.to_string(),
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, InputError> {
    let source = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| InputError {
        source: source.clone(),
        path: String::new(),
        message: e.to_string(),
    })?;
    parse_json(&source, &text)
}

/// `"a,b"` as a point of `ℝ²`.
pub fn parse_point(s: &str) -> Result<P2, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(format!("expected `a,b`, got `{s}`"));
    }
    let a = parts[0].parse::<f64>().map_err(|e| format!("`{}`: {e}", parts[0]))?;
    let b = parts[1].parse::<f64>().map_err(|e| format!("`{}`: {e}", parts[1]))?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(format!("`{s}` is not finite"));
    }
    Ok([a, b])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UpValue {
    pub value: UpReal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DownValue {
    pub value: DownReal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalPoint {
    pub x: f64,
    pub value: UpReal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalOut {
    pub values: Vec<EvalPoint>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct YoungFenchelOut {
    /// `ξ_r(x) ≤ g(x) ⊞▵ g*(ξ, r)`.
    pub a: bool,
    /// `ξ_r(x) ⊖ g(x) ≤ g*(ξ, r)`.
    pub b: bool,
    /// `ξ_r(x) ⊖ g*(ξ, r) ≤ g(x)`.
    pub c: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SliceOut {
    pub x: f64,
    pub set: UpSet,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlicesOut {
    pub slices: Vec<SliceOut>,
}

/// Writes an extended real the way the JSON layer does.
pub fn fmt_ext(v: Option<f64>, top: bool) -> String {
    match v {
        Some(x) => format!("{x}"),
        None if top => "inf".to_string(),
        None => "-inf".to_string(),
    }
}

pub fn fmt_up(v: UpReal) -> String {
    fmt_ext(v.value(), v.is_top())
}
