//! Problem files. The first non-comment line must be the `format` header.
//!
//! ```toml
//! format = "gkzf-problem/1"
//! name = "hexagon"
//! A = [[1, 1, 1], [0, 1, 2]]
//! w = [1, 0, 2]             # integers or "p/q" strings
//! beta = ["c", "0"]         # rationals, or affine expressions in [params]
//!
//! [params]
//! c = "1/3"
//!
//! [options]                 # all optional
//! window = 4
//! check_window = 6
//! dual_cap = 6
//! basis = [[1, -2, 1]]
//! ```

use std::collections::BTreeMap;

use gkzf_core::exact::{parse_rat, Rat};
use gkzf_core::pipeline::Options;
use gkzf_core::toric::ConfigMatrix;
use gkzf_core::GkzError;
use num_traits::Zero;
use serde::Deserialize;

pub const FORMAT: &str = "gkzf-problem/1";

#[derive(Debug)]
pub enum SpecError {
    /// Carries the parser's line/column report.
    Syntax(String),
    Invalid(String),
    Gkz(GkzError),
}

impl std::fmt::Display for SpecError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpecError::Syntax(m) => write!(f, "{}", m.trim_end()),
            SpecError::Invalid(m) => write!(f, "invalid problem: {}", m),
            SpecError::Gkz(e) => write!(f, "{}", e),
        }
    }
}

impl From<GkzError> for SpecError {
    fn from(e: GkzError) -> Self {
        SpecError::Gkz(e)
    }
}

#[derive(Deserialize, Debug, Clone)]
#[serde(untagged)]
enum Scalar {
    Int(i64),
    Text(String),
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    window: Option<i64>,
    check_window: Option<i64>,
    dual_cap: Option<u32>,
    basis: Option<Vec<Vec<i64>>>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    format: String,
    name: Option<String>,
    #[serde(rename = "A")]
    a: Vec<Vec<i64>>,
    w: Vec<Scalar>,
    beta: Vec<Scalar>,
    #[serde(default)]
    params: BTreeMap<String, Scalar>,
    #[serde(default)]
    options: RawOptions,
}

#[derive(Clone, Debug)]
pub struct ProblemSpec {
    pub name: String,
    pub a: ConfigMatrix,
    pub w: Vec<Rat>,
    pub beta: Vec<Rat>,
    pub params: BTreeMap<String, Rat>,
    pub options: Options,
}

fn scalar_rat(s: &Scalar, what: &str) -> Result<Rat, SpecError> {
    match s {
        Scalar::Int(i) => Ok(Rat::from_integer((*i).into())),
        Scalar::Text(t) => parse_rat(t.trim()).ok_or_else(|| SpecError::Invalid(format!("{} `{}` is not a rational", what, t))),
    }
}

/// `±t ± t …` with each `t` one of `q`, `x`, `q*x`.
pub fn eval_affine(text: &str, params: &BTreeMap<String, Rat>) -> Result<Rat, SpecError> {
    let bad = || SpecError::Invalid(format!("cannot evaluate `{}`", text));
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad());
    }
    let mut total = Rat::zero();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'-' => (-1, &rest[1..]),
            b'+' => (1, &rest[1..]),
            _ => (1, rest),
        };
        // a '/' belongs to a number, so split only on signs
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let term = &body[..end];
        rest = &body[end..];
        let value = match term.split_once('*') {
            Some((q, x)) => parse_rat(q).ok_or_else(bad)? * params.get(x).cloned().ok_or_else(bad)?,
            None => match parse_rat(term) {
                Some(q) => q,
                None => params
                    .get(term)
                    .cloned()
                    .ok_or_else(|| SpecError::Invalid(format!("unknown parameter `{}`", term)))?,
            },
        };
        total += if sign < 0 { -value } else { value };
    }
    Ok(total)
}

impl ProblemSpec {
    /// `overrides` replace `[params]` entries of the same name.
    pub fn parse(text: &str, overrides: &[(String, Rat)]) -> Result<Self, SpecError> {
        let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
        if !first.is_some_and(|l| l.starts_with("format")) {
            return Err(SpecError::Invalid(format!("first line must be `format = \"{}\"`", FORMAT)));
        }
        let raw: RawProblem = toml::from_str(text).map_err(|e| SpecError::Syntax(e.to_string()))?;
        if raw.format != FORMAT {
            return Err(SpecError::Invalid(format!("format `{}` is not `{}`", raw.format, FORMAT)));
        }
        let mut params = BTreeMap::new();
        for (k, v) in &raw.params {
            params.insert(k.clone(), scalar_rat(v, "parameter")?);
        }
        for (k, v) in overrides {
            params.insert(k.clone(), v.clone());
        }
        let a = ConfigMatrix::from_rows(&raw.a)?;
        let w = raw.w.iter().map(|s| scalar_rat(s, "weight")).collect::<Result<Vec<_>, _>>()?;
        let beta = raw
            .beta
            .iter()
            .map(|s| match s {
                Scalar::Int(i) => Ok(Rat::from_integer((*i).into())),
                Scalar::Text(t) => eval_affine(t, &params),
            })
            .collect::<Result<Vec<_>, _>>()?;
        gkzf_core::pipeline::check_dimensions(&a, &w, &beta)?;
        let o = raw.options;
        Ok(ProblemSpec {
            name: raw.name.unwrap_or_else(|| "problem".into()),
            a,
            w,
            beta,
            params,
            options: Options { window: o.window, check_window: o.check_window, dual_cap: o.dual_cap, basis: o.basis },
        })
    }

    pub fn load(path: &std::path::Path, overrides: &[(String, Rat)]) -> Result<Self, SpecError> {
        let text = std::fs::read_to_string(path).map_err(|e| SpecError::Invalid(format!("{}: {}", path.display(), e)))?;
        Self::parse(&text, overrides)
    }
}

/// `name=value` as given to `--param`.
pub fn parse_param(s: &str) -> Result<(String, Rat), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("`{}` is not name=value", s))?;
    let q = parse_rat(v.trim()).ok_or_else(|| format!("`{}` is not a rational", v))?;
    Ok((k.trim().to_string(), q))
}
