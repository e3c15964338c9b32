//! Curve spec files.
//!
//! Field elements are hex bit strings read LSB-first: bit `i` of the number
//! is the coefficient of `t^i`. Two layouts are accepted:
//!
//! ```text
//! # key=value
//! m=1
//! field_modulus=3
//! R=0,1,1
//! ```
//!
//! or `{"m": 1, "field_modulus": "3", "R": ["0", "1", "1"]}`.
//! `field_modulus` may be omitted, in which case the default presentation
//! of F_(2^m) is used.

use aszeta::fieldtower::default_modulus;
use aszeta::lfun::CurveSpec;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecError(pub String);

impl std::fmt::Display for SpecError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for SpecError {}

fn err<T>(msg: impl Into<String>) -> Result<T, SpecError> {
    Err(SpecError(msg.into()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field_modulus: Option<String>,
    #[serde(rename = "R")]
    pub r: Vec<String>,
}

pub fn parse_hex(s: &str) -> Result<u64, SpecError> {
    let t = s.trim();
    let t = t
        .strip_prefix("0x")
        .or_else(|| t.strip_prefix("0X"))
        .unwrap_or(t);
    if t.is_empty() {
        return err(format!("empty hex field element {s:?}"));
    }
    u64::from_str_radix(t, 16).or_else(|_| err(format!("invalid hex field element {s:?}")))
}

pub fn to_hex(x: u64) -> String {
    format!("{x:x}")
}

fn parse_key_value(text: &str) -> Result<SpecFile, SpecError> {
    let mut m = None;
    let mut modulus = None;
    let mut r = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return err(format!("line {}: expected key=value, got {raw:?}", lineno + 1));
        };
        let value = value.trim();
        let slot_taken = match key.trim() {
            "m" => {
                let v = value
                    .parse::<usize>()
                    .or_else(|_| err(format!("line {}: m must be a positive integer", lineno + 1)))?;
                m.replace(v).is_some()
            }
            "field_modulus" => modulus.replace(value.to_string()).is_some(),
            "R" => {
                let coeffs: Vec<String> = value
                    .split(',')
                    .map(|c| c.trim().to_string())
                    .collect();
                r.replace(coeffs).is_some()
            }
            other => return err(format!("line {}: unknown key {other:?}", lineno + 1)),
        };
        if slot_taken {
            return err(format!("line {}: duplicate key {:?}", lineno + 1, key.trim()));
        }
    }
    Ok(SpecFile {
        m: m.ok_or_else(|| SpecError("missing key m".into()))?,
        field_modulus: modulus,
        r: r.ok_or_else(|| SpecError("missing key R".into()))?,
    })
}

/// Reads either layout.
pub fn parse_spec_text(text: &str) -> Result<SpecFile, SpecError> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str(text).or_else(|e| err(format!("invalid JSON spec: {e}")))
    } else {
        parse_key_value(text)
    }
}

impl SpecFile {
    pub fn to_curve_spec(&self) -> Result<CurveSpec, SpecError> {
        if self.m == 0 || self.m > aszeta::fieldtower::MAX_BASE_DEGREE {
            return err(format!(
                "m must lie in 1..={}, got {}",
                aszeta::fieldtower::MAX_BASE_DEGREE,
                self.m
            ));
        }
        let modulus = match &self.field_modulus {
            Some(s) => parse_hex(s)?,
            None => default_modulus(self.m),
        };
        let coeffs = self
            .r
            .iter()
            .map(|c| parse_hex(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CurveSpec::new(self.m, modulus, coeffs))
    }

    pub fn from_curve_spec(spec: &CurveSpec) -> SpecFile {
        SpecFile {
            m: spec.m,
            field_modulus: Some(to_hex(spec.field_modulus)),
            r: spec.r_coeffs.iter().map(|&c| to_hex(c)).collect(),
        }
    }

    pub fn emit_key_value(&self) -> String {
        let mut out = format!("m={}\n", self.m);
        if let Some(f) = &self.field_modulus {
            out.push_str(&format!("field_modulus={f}\n"));
        }
        out.push_str(&format!("R={}\n", self.r.join(",")));
        out
    }

    pub fn emit_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }
}

pub fn parse_spec(text: &str) -> Result<CurveSpec, SpecError> {
    parse_spec_text(text)?.to_curve_spec()
}

/// Key=value text for a spec, always listing the modulus.
pub fn emit_spec(spec: &CurveSpec) -> String {
    SpecFile::from_curve_spec(spec).emit_key_value()
}
