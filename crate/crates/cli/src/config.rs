//! Run configuration: flag values override config-file values, which
//! override defaults. The config file is a flat `key = value` text format;
//! `#` starts a comment. `--dump-config` writes the fully resolved
//! configuration, so a dumped file reproduces the run byte for byte.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    Coulomb,
    EqualKratzer,
    UnequalKratzerGround,
    UnequalKratzerG1,
    UnequalKratzerG2,
    Monic,
}

impl Case {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "coulomb" => Ok(Self::Coulomb),
            "equal-kratzer" => Ok(Self::EqualKratzer),
            "unequal-kratzer-ground" => Ok(Self::UnequalKratzerGround),
            "unequal-kratzer-g1" => Ok(Self::UnequalKratzerG1),
            "unequal-kratzer-g2" => Ok(Self::UnequalKratzerG2),
            "monic" => Ok(Self::Monic),
            other => Err(CliError::usage(format!("unknown case '{other}'"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Coulomb => "coulomb",
            Self::EqualKratzer => "equal-kratzer",
            Self::UnequalKratzerGround => "unequal-kratzer-ground",
            Self::UnequalKratzerG1 => "unequal-kratzer-g1",
            Self::UnequalKratzerG2 => "unequal-kratzer-g2",
            Self::Monic => "monic",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(CliError::usage(format!("unknown format '{other}'"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Csv => "csv",
            Self::Json => "json",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchSel {
    Plus,
    Minus,
}

impl BranchSel {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "plus" => Ok(Self::Plus),
            "minus" => Ok(Self::Minus),
            other => Err(CliError::usage(format!("unknown branch '{other}'"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Plus => "plus",
            Self::Minus => "minus",
        }
    }
}

/// Inclusive quantum-number range, written `lo..hi` or a single value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NRange {
    pub lo: u32,
    pub hi: u32,
}

impl NRange {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        let parse_u32 = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| CliError::usage(format!("bad quantum number '{t}'")))
        };
        if let Some((a, b)) = s.split_once("..") {
            let (lo, hi) = (parse_u32(a)?, parse_u32(b)?);
            if lo > hi {
                return Err(CliError::usage(format!("empty range '{s}'")));
            }
            Ok(Self { lo, hi })
        } else {
            let v = parse_u32(s)?;
            Ok(Self { lo: v, hi: v })
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> {
        self.lo..=self.hi
    }
}

impl fmt::Display for NRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

/// Radial sampling grid, written `r_min:r_max:points` (log spacing).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub r_min: f64,
    pub r_max: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(CliError::usage(format!(
                "grid must be r_min:r_max:points, got '{s}'"
            )));
        }
        let r_min: f64 = parts[0]
            .trim()
            .parse()
            .map_err(|_| CliError::usage("bad grid r_min"))?;
        let r_max: f64 = parts[1]
            .trim()
            .parse()
            .map_err(|_| CliError::usage("bad grid r_max"))?;
        let points: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| CliError::usage("bad grid point count"))?;
        if !(r_min > 0.0) {
            return Err(CliError::usage("grid r_min must be positive"));
        }
        if !(r_max > r_min) {
            return Err(CliError::usage("grid r_max must exceed r_min"));
        }
        if points < 2 {
            return Err(CliError::usage("grid needs at least 2 points"));
        }
        Ok(Self {
            r_min,
            r_max,
            points,
        })
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.r_min, self.r_max, self.points)
    }
}

/// Every tunable of a run, before resolution. `None` means "not given".
#[derive(Clone, Debug, Default)]
pub struct RawConfig {
    pub case: Option<String>,
    pub mass: Option<f64>,
    pub dim: Option<u32>,
    pub ang: Option<u32>,
    pub s: Option<f64>,
    pub v: Option<f64>,
    pub big_a: Option<f64>,
    pub big_b: Option<f64>,
    pub s1: Option<f64>,
    pub v1: Option<f64>,
    pub s2: Option<f64>,
    pub v2: Option<f64>,
    pub n: Option<String>,
    pub branch: Option<String>,
    pub format: Option<String>,
    pub grid: Option<String>,
    pub checks: Option<String>,
    pub inject_energy_error: Option<f64>,
    pub decay_a: Option<f64>,
    pub decay_b: Option<f64>,
    pub cexp: Option<f64>,
    pub param: Option<String>,
    pub from: Option<f64>,
    pub to: Option<f64>,
    pub steps: Option<usize>,
}

impl RawConfig {
    /// Fills unset fields from another layer (lower precedence).
    pub fn or(mut self, lower: RawConfig) -> RawConfig {
        macro_rules! take {
            ($($f:ident),*) => { $( self.$f = self.$f.take().or(lower.$f); )* };
        }
        take!(
            case, mass, dim, ang, s, v, big_a, big_b, s1, v1, s2, v2, n, branch, format, grid,
            checks, inject_energy_error, decay_a, decay_b, cexp, param, from, to, steps
        );
        self
    }

    pub fn from_file(path: &Path) -> Result<RawConfig, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        let mut map = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::usage(format!("config line {} is not 'key = value'", lineno + 1))
            })?;
            map.insert(key.trim().to_string(), value.trim().to_string());
        }
        let mut cfg = RawConfig::default();
        let parse_f64 = |k: &str, v: &str| {
            v.parse::<f64>()
                .map_err(|_| CliError::usage(format!("config key '{k}': bad number '{v}'")))
        };
        for (k, v) in map {
            match k.as_str() {
                "case" => cfg.case = Some(v),
                "mass" => cfg.mass = Some(parse_f64(&k, &v)?),
                "dim" => {
                    cfg.dim = Some(v.parse().map_err(|_| {
                        CliError::usage(format!("config key 'dim': bad integer '{v}'"))
                    })?)
                }
                "ang" => {
                    cfg.ang = Some(v.parse().map_err(|_| {
                        CliError::usage(format!("config key 'ang': bad integer '{v}'"))
                    })?)
                }
                "s" => cfg.s = Some(parse_f64(&k, &v)?),
                "v" => cfg.v = Some(parse_f64(&k, &v)?),
                "A" => cfg.big_a = Some(parse_f64(&k, &v)?),
                "B" => cfg.big_b = Some(parse_f64(&k, &v)?),
                "s1" => cfg.s1 = Some(parse_f64(&k, &v)?),
                "v1" => cfg.v1 = Some(parse_f64(&k, &v)?),
                "s2" => cfg.s2 = Some(parse_f64(&k, &v)?),
                "v2" => cfg.v2 = Some(parse_f64(&k, &v)?),
                "n" => cfg.n = Some(v),
                "branch" => cfg.branch = Some(v),
                "format" => cfg.format = Some(v),
                "grid" => cfg.grid = Some(v),
                "checks" => cfg.checks = Some(v),
                "inject-energy-error" => cfg.inject_energy_error = Some(parse_f64(&k, &v)?),
                "decay-a" => cfg.decay_a = Some(parse_f64(&k, &v)?),
                "decay-b" => cfg.decay_b = Some(parse_f64(&k, &v)?),
                "cexp" => cfg.cexp = Some(parse_f64(&k, &v)?),
                "param" => cfg.param = Some(v),
                "from" => cfg.from = Some(parse_f64(&k, &v)?),
                "to" => cfg.to = Some(parse_f64(&k, &v)?),
                "steps" => {
                    cfg.steps = Some(v.parse().map_err(|_| {
                        CliError::usage(format!("config key 'steps': bad integer '{v}'"))
                    })?)
                }
                other => {
                    return Err(CliError::usage(format!("unknown config key '{other}'")));
                }
            }
        }
        Ok(cfg)
    }

    /// Serializes the set fields as `key = value` lines in fixed order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        macro_rules! put {
            ($key:literal, $val:expr) => {
                if let Some(v) = &$val {
                    out.push_str(&format!("{} = {}\n", $key, v));
                }
            };
        }
        put!("case", self.case);
        put!("mass", self.mass);
        put!("dim", self.dim);
        put!("ang", self.ang);
        put!("s", self.s);
        put!("v", self.v);
        put!("A", self.big_a);
        put!("B", self.big_b);
        put!("s1", self.s1);
        put!("v1", self.v1);
        put!("s2", self.s2);
        put!("v2", self.v2);
        put!("n", self.n);
        put!("branch", self.branch);
        put!("format", self.format);
        put!("grid", self.grid);
        put!("checks", self.checks);
        put!("inject-energy-error", self.inject_energy_error);
        put!("decay-a", self.decay_a);
        put!("decay-b", self.decay_b);
        put!("cexp", self.cexp);
        put!("param", self.param);
        put!("from", self.from);
        put!("to", self.to);
        put!("steps", self.steps);
        out
    }
}
