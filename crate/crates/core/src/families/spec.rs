use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use super::custom::{CustomFamily, TailPolicy};
use super::equi::EquiFamily;
use super::farey::FareyFamily;
use super::random::RandomOddFamily;
use super::spheroid::{SpheroidFamily, DEFAULT_N_MAX};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::np_spectrum::SpheroidShape;
use crate::partition::{Exact, PartitionFamily, Real};
use crate::specfun::PrecisionMode;

/// A family description as written on the command line:
/// `equi`, `farey`, `spheroid:xi0=1.5`, `spheroid2:xi0=1.5,nmax=400`,
/// `custom:path.json`, `random:seed=7,conc=10`.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    Equi,
    Farey,
    Spheroid { xi0: f64, n_max: Option<usize> },
    SpheroidDoubled { xi0: f64, n_max: Option<usize> },
    Custom { path: PathBuf },
    RandomOdd { seed: u64, concentration: f64 },
}

/// Settings that are not part of the spec string.
#[derive(Debug, Clone, Copy, Default)]
pub struct BuildOptions {
    pub precision: PrecisionMode,
    pub tail: TailPolicy,
    pub exec: Execution,
}

/// A constructed family, exact or floating.
pub enum BuiltFamily {
    Exact(Box<dyn PartitionFamily<Value = Exact>>),
    Float(Box<dyn PartitionFamily<Value = Real>>),
}

impl fmt::Debug for BuiltFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let meta = match self {
            BuiltFamily::Exact(fam) => fam.meta(),
            BuiltFamily::Float(fam) => fam.meta(),
        };
        write!(f, "BuiltFamily({})", meta.label())
    }
}

/// Runs `$body` with `$fam` bound to the family behind a [`BuiltFamily`].
#[macro_export]
macro_rules! with_family {
    ($built:expr, $fam:ident => $body:expr) => {
        match $built {
            $crate::families::BuiltFamily::Exact($fam) => $body,
            $crate::families::BuiltFamily::Float($fam) => $body,
        }
    };
}

fn spec_error(spec: &str, reason: impl Into<String>) -> Error {
    Error::InvalidFamilySpec { spec: spec.to_string(), reason: reason.into() }
}

fn parse_params(spec: &str, body: &str, allowed: &[&str]) -> Result<Vec<(String, String)>> {
    let mut out: Vec<(String, String)> = Vec::new();
    for part in body.split(',').filter(|p| !p.trim().is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| spec_error(spec, format!("expected key=value, got `{part}`")))?;
        let k = k.trim();
        if !allowed.contains(&k) {
            return Err(spec_error(spec, format!("unknown parameter `{k}`")));
        }
        if out.iter().any(|(seen, _)| seen == k) {
            return Err(spec_error(spec, format!("parameter `{k}` given twice")));
        }
        out.push((k.to_string(), v.trim().to_string()));
    }
    Ok(out)
}

fn required<T: FromStr>(spec: &str, params: &[(String, String)], key: &str) -> Result<T> {
    let raw = params
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v)
        .ok_or_else(|| spec_error(spec, format!("missing `{key}`")))?;
    raw.parse().map_err(|_| spec_error(spec, format!("cannot parse `{key}={raw}`")))
}

fn optional<T: FromStr>(spec: &str, params: &[(String, String)], key: &str) -> Result<Option<T>> {
    if params.iter().any(|(k, _)| k == key) {
        required(spec, params, key).map(Some)
    } else {
        Ok(None)
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (head, body) = spec.split_once(':').unwrap_or((spec, ""));
        match head {
            "equi" | "farey" if !body.is_empty() => Err(spec_error(spec, "takes no parameters")),
            "equi" => Ok(FamilySpec::Equi),
            "farey" => Ok(FamilySpec::Farey),
            "spheroid" | "spheroid2" => {
                let params = parse_params(spec, body, &["xi0", "nmax"])?;
                let xi0: f64 = required(spec, &params, "xi0")?;
                if !(xi0 > 1.0) {
                    return Err(spec_error(spec, "xi0 must exceed 1"));
                }
                let n_max = optional(spec, &params, "nmax")?;
                Ok(if head == "spheroid" {
                    FamilySpec::Spheroid { xi0, n_max }
                } else {
                    FamilySpec::SpheroidDoubled { xi0, n_max }
                })
            }
            "custom" if body.is_empty() => Err(spec_error(spec, "missing path")),
            "custom" => Ok(FamilySpec::Custom { path: PathBuf::from(body) }),
            "random" => {
                let params = parse_params(spec, body, &["seed", "conc"])?;
                let seed = required(spec, &params, "seed")?;
                let concentration: f64 = required(spec, &params, "conc")?;
                if !(concentration > 0.0) {
                    return Err(spec_error(spec, "conc must be positive"));
                }
                Ok(FamilySpec::RandomOdd { seed, concentration })
            }
            _ => Err(spec_error(spec, format!("unknown family `{head}`"))),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nmax = |n: &Option<usize>| n.map(|v| format!(",nmax={v}")).unwrap_or_default();
        match self {
            FamilySpec::Equi => write!(f, "equi"),
            FamilySpec::Farey => write!(f, "farey"),
            FamilySpec::Spheroid { xi0, n_max } => write!(f, "spheroid:xi0={xi0}{}", nmax(n_max)),
            FamilySpec::SpheroidDoubled { xi0, n_max } => write!(f, "spheroid2:xi0={xi0}{}", nmax(n_max)),
            FamilySpec::Custom { path } => write!(f, "custom:{}", path.display()),
            FamilySpec::RandomOdd { seed, concentration } => write!(f, "random:seed={seed},conc={concentration}"),
        }
    }
}

impl FamilySpec {
    pub fn build(&self, options: BuildOptions) -> Result<BuiltFamily> {
        Ok(match self {
            FamilySpec::Equi => BuiltFamily::Exact(Box::new(EquiFamily::new())),
            FamilySpec::Farey => BuiltFamily::Exact(Box::new(FareyFamily::new())),
            FamilySpec::Spheroid { xi0, n_max } | FamilySpec::SpheroidDoubled { xi0, n_max } => {
                let doubled = matches!(self, FamilySpec::SpheroidDoubled { .. });
                let shape = SpheroidShape::new(*xi0, options.precision)?;
                let fam = SpheroidFamily::with_execution(shape, doubled, n_max.unwrap_or(DEFAULT_N_MAX), options.exec)?;
                BuiltFamily::Float(Box::new(fam))
            }
            FamilySpec::Custom { path } => BuiltFamily::Exact(Box::new(CustomFamily::from_path(path, options.tail)?)),
            FamilySpec::RandomOdd { seed, concentration } => {
                BuiltFamily::Exact(Box::new(RandomOddFamily::new(*seed, *concentration)?))
            }
        })
    }
}
