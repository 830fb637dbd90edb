use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::Variant;
use crate::sbp::OperatorSource;

const KEYS: &[&str] = &[
    "scenario",
    "model",
    "scheme",
    "form",
    "operator",
    "n",
    "cfl",
    "t_final",
    "stride",
    "snapshots",
    "out",
    "seed",
    "trials",
    "tolerance",
    "resolutions",
    "schemes",
    "operators",
    "swe.g",
    "swe.f",
    "euler.gamma",
];

/// Flat `key = value` configuration. Lines starting with `#` are comments;
/// nested parameters use dotted keys.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RawConfig {
    entries: BTreeMap<String, String>,
    base: Option<PathBuf>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_at(text, None)
    }

    fn parse_at(text: &str, path: Option<&Path>) -> Result<Self> {
        let mut cfg = RawConfig {
            entries: BTreeMap::new(),
            base: path.and_then(|p| p.parent()).map(Path::to_path_buf),
        };
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            cfg.set_line(line).map_err(|message| Error::Parse {
                path: path.map_or_else(|| PathBuf::from("<config>"), Path::to_path_buf),
                line: i + 1,
                message,
            })?;
        }
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_at(&text, Some(path))
    }

    fn set_line(&mut self, line: &str) -> std::result::Result<(), String> {
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("expected `key = value`, got `{line}`"))?;
        let key = k.trim();
        if !KEYS.contains(&key) {
            return Err(format!("unknown key `{key}`"));
        }
        self.entries.insert(key.to_string(), v.trim().to_string());
        Ok(())
    }

    /// Applies a `key=value` override.
    pub fn set_override(&mut self, kv: &str) -> Result<()> {
        self.set_line(kv.trim()).map_err(Error::Config)
    }

    pub fn set(&mut self, key: &str, value: impl ToString) -> Result<()> {
        self.set_override(&format!("{key}={}", value.to_string()))
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    fn parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: fmt::Display,
    {
        self.get(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|e| Error::Config(format!("invalid value `{v}` for `{key}`: {e}")))
            })
            .transpose()
    }

    fn list<T: FromStr>(&self, key: &str) -> Result<Option<Vec<T>>>
    where
        T::Err: fmt::Display,
    {
        self.get(key)
            .map(|v| {
                v.split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| {
                        s.parse::<T>().map_err(|e| {
                            Error::Config(format!("invalid entry `{s}` in `{key}`: {e}"))
                        })
                    })
                    .collect()
            })
            .transpose()
    }

    fn operator(&self, text: &str) -> Result<OperatorSource> {
        let src = OperatorSource::parse(text);
        Ok(match (src, &self.base) {
            (OperatorSource::File(p), Some(base)) if p.is_relative() => {
                OperatorSource::File(base.join(p))
            }
            (src, _) => src,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Burgers,
    Swe,
    Euler,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Burgers => "burgers",
            ModelKind::Swe => "swe",
            ModelKind::Euler => "euler",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormKind {
    Flux,
    VectorInvariant,
}

/// Fully resolved settings for one simulation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scenario: String,
    pub model: ModelKind,
    pub scheme: Variant,
    pub form: FormKind,
    pub operator: OperatorSource,
    pub n: usize,
    pub cfl: f64,
    pub t_final: f64,
    pub stride: usize,
    pub snapshots: Vec<f64>,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub trials: usize,
    pub tolerance: f64,
    pub resolutions: Vec<usize>,
    pub schemes: Vec<Variant>,
    pub operators: Vec<OperatorSource>,
    pub g: Option<f64>,
    pub f: Option<f64>,
    pub gamma: Option<f64>,
}

impl RunConfig {
    /// Resolves a raw configuration against the scenario defaults.
    pub fn resolve(raw: &RawConfig) -> Result<Self> {
        let scenario = raw
            .get("scenario")
            .ok_or_else(|| Error::Config("missing required key `scenario`".into()))?
            .to_string();
        let info = super::scenarios::info(&scenario)?;
        if let Some(m) = raw.get("model") {
            if m != info.model.as_str() {
                return Err(Error::Config(format!(
                    "scenario `{scenario}` uses model `{}`, not `{m}`",
                    info.model.as_str()
                )));
            }
        }
        let form = match raw.get("form") {
            None | Some("flux") => FormKind::Flux,
            Some("vector_invariant") if info.model == ModelKind::Swe => FormKind::VectorInvariant,
            Some(other) => {
                return Err(Error::Config(format!(
                "unsupported form `{other}` (expected flux, or vector_invariant for shallow water)"
            )))
            }
        };
        let operator = raw.operator(raw.get("operator").unwrap_or("builtin:dp2"))?;
        let operators = match raw.get("operators") {
            Some(list) => list
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| raw.operator(s))
                .collect::<Result<Vec<_>>>()?,
            None => vec![operator.clone()],
        };
        let scheme: Variant = raw.parsed("scheme")?.unwrap_or(Variant::EntropyStable);
        let cfg = RunConfig {
            model: info.model,
            scheme,
            form,
            operator,
            n: raw.parsed("n")?.unwrap_or(info.n),
            cfl: raw.parsed("cfl")?.unwrap_or(info.cfl),
            t_final: raw.parsed("t_final")?.unwrap_or(info.t_final),
            stride: raw.parsed("stride")?.unwrap_or(info.stride),
            snapshots: raw
                .list("snapshots")?
                .unwrap_or_else(|| info.snapshots.to_vec()),
            out: raw.get("out").map(PathBuf::from),
            seed: raw.parsed("seed")?.unwrap_or(0),
            trials: raw.parsed("trials")?.unwrap_or(100),
            tolerance: raw.parsed("tolerance")?.unwrap_or(1e-11),
            resolutions: raw
                .list("resolutions")?
                .unwrap_or_else(|| info.resolutions.to_vec()),
            schemes: raw
                .list("schemes")?
                .unwrap_or_else(|| Variant::ALL.to_vec()),
            operators,
            g: raw.parsed("swe.g")?,
            f: raw.parsed("swe.f")?,
            gamma: raw.parsed("euler.gamma")?,
            scenario,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.n < 2 {
            return bad(format!("n must be at least 2, got {}", self.n));
        }
        if !(self.cfl > 0.0 && self.cfl.is_finite()) {
            return bad(format!("cfl must be positive, got {}", self.cfl));
        }
        if !(self.t_final > 0.0 && self.t_final.is_finite()) {
            return bad(format!("t_final must be positive, got {}", self.t_final));
        }
        if self.stride == 0 {
            return bad("stride must be positive".into());
        }
        if self.resolutions.iter().any(|&n| n < 2) {
            return bad("resolutions must be at least 2".into());
        }
        if self.form == FormKind::VectorInvariant {
            if let Some(v) =
                std::iter::once(&self.scheme).find(|v| **v != Variant::EntropyConserving)
            {
                return bad(format!(
                    "the vector-invariant form supports entropy_conserving only, not {v}"
                ));
            }
        }
        Ok(())
    }

    /// Copy with a different resolution, scheme and operator.
    pub fn variant_of(&self, n: usize, scheme: Variant, operator: &OperatorSource) -> Self {
        Self {
            n,
            scheme,
            operator: operator.clone(),
            ..self.clone()
        }
    }
}
