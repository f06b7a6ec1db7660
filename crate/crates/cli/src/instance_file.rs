//! Instance files: the JSON input format of the CLI, validated into an
//! engine [`Instance`] with field-pinpointing diagnostics.

use std::fs;
use std::path::Path;

use serde::Deserialize;

use jacquet_core::{ClassicalBase, CuspidalLine, HalfInt, Instance, LadderData};

/// On-disk instance description.
///
/// ```json
/// {
///   "rho": { "name": "rho", "selfdual": true },
///   "sigma": { "name": "sigma" },
///   "alpha": { "twice": 3 },
///   "segments": [
///     { "a": { "twice": 1 }, "b": { "twice": 3 } },
///     { "a": { "twice": 3 }, "b": { "twice": 5 } }
///   ]
/// }
/// ```
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub rho: RhoField,
    pub sigma: SigmaField,
    #[serde(default)]
    pub alpha: Option<HalfInt>,
    pub segments: Vec<SegmentField>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RhoField {
    pub name: String,
    pub selfdual: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SigmaField {
    pub name: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentField {
    pub a: HalfInt,
    pub b: HalfInt,
}

impl InstanceFile {
    pub fn validate(&self) -> Result<Instance, String> {
        if self.rho.name.is_empty() {
            return Err("rho.name: must be non-empty".into());
        }
        if self.sigma.name.is_empty() {
            return Err("sigma.name: must be non-empty".into());
        }
        match (self.rho.selfdual, self.alpha) {
            (true, None) => {
                return Err(
                    "alpha: required when rho.selfdual is true (the reducibility point exists)"
                        .into(),
                )
            }
            (false, Some(_)) => {
                return Err(
                    "alpha: must be absent when rho.selfdual is false (no reducibility point)"
                        .into(),
                )
            }
            (_, Some(a)) if a < HalfInt::ZERO => {
                return Err(format!("alpha: must be non-negative, got {a}"));
            }
            _ => {}
        }
        if self.segments.is_empty() {
            return Err("segments: at least one segment is required".into());
        }
        let first = self.segments[0].a;
        if first < HalfInt::HALF {
            return Err(format!(
                "segments[0].a: the minimal start must be at least 1/2, got {first}"
            ));
        }
        for (i, s) in self.segments.iter().enumerate() {
            if !s.a.same_lattice(s.b) || s.b < s.a {
                return Err(format!(
                    "segments[{i}]: b - a must be a non-negative integer, got a = {}, b = {}",
                    s.a, s.b
                ));
            }
            if !s.a.same_lattice(first) {
                return Err(format!(
                    "segments[{i}].a: start {} is off the unit lattice of segments[0].a = {first}",
                    s.a
                ));
            }
            if i > 0 {
                let p = &self.segments[i - 1];
                if s.a <= p.a {
                    return Err(format!(
                        "segments[{i}].a: starts must strictly increase, got {} after {}",
                        s.a, p.a
                    ));
                }
                if s.b <= p.b {
                    return Err(format!(
                        "segments[{i}].b: ends must strictly increase, got {} after {}",
                        s.b, p.b
                    ));
                }
            }
        }
        let line = CuspidalLine::new(self.rho.name.clone(), self.rho.selfdual);
        let ladder = LadderData::new(line, self.segments.iter().map(|s| (s.a, s.b)).collect())
            .map_err(|e| format!("segments: {e}"))?;
        let base = ClassicalBase::new(self.sigma.name.clone(), self.alpha)
            .map_err(|e| format!("alpha: {e}"))?;
        Instance::new(ladder, base).map_err(|e| e.to_string())
    }
}

/// Reads and validates an instance file.
pub fn load_instance(path: &Path) -> Result<Instance, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    let file: InstanceFile = serde_json::from_str(&text)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    file.validate().map_err(|e| format!("{}: {e}", path.display()))
}
