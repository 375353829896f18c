//! Line-oriented `key = value` run configuration.

use std::path::PathBuf;

use sclab_core::covers::Monotone;
use sclab_core::ratio::{self, rat, Rational};
use thiserror::Error;

/// Default output root when neither the config nor a flag names one.
pub const OUT_ENV: &str = "SCLAB_OUT";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: bad value for `{key}`: {msg}")]
    Value { line: usize, key: String, msg: String },
    #[error("line {line}: duplicate key `{key}`")]
    Duplicate { line: usize, key: String },
    #[error("missing key `family`")]
    MissingFamily,
    #[error("lambda {0} outside (0, 1/6]")]
    Lambda(String),
    #[error("beta {0} outside (0, 1/2]")]
    Beta(String),
    #[error("walls need lambda < beta/2 (lambda {lambda}, beta {beta})")]
    LambdaBeta { lambda: String, beta: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySource {
    /// Cycle lengths.
    Cycles(Vec<usize>),
    /// Vertex counts of random regular graphs.
    Random(Vec<usize>),
    Files(Vec<PathBuf>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineConfig {
    pub family: FamilySource,
    pub degree: usize,
    pub min_girth: usize,
    pub seed: u64,
    pub lambda: Rational,
    pub beta: Rational,
    /// `None` measures max diam/girth over the family.
    pub diameter_ratio: Option<Rational>,
    pub intra_alphabet: u64,
    pub inter_alphabet: u64,
    pub max_rounds: usize,
    pub piece_edge_cap: usize,
    pub piece_budget: usize,
    pub omega: Monotone,
    pub delta: Monotone,
    /// `None` uses the measured separation table.
    pub phi: Option<Monotone>,
    /// Cayley patch radius; 0 skips exploration.
    pub radius_cap: usize,
    pub vertex_cap: usize,
    pub spectral: bool,
    pub out: Option<PathBuf>,
}

impl PipelineConfig {
    pub fn with_family(family: FamilySource) -> Self {
        PipelineConfig {
            family,
            degree: 3,
            min_girth: 5,
            seed: 1,
            lambda: rat(1, 6),
            beta: rat(1, 2),
            diameter_ratio: None,
            intra_alphabet: 64,
            inter_alphabet: 64,
            max_rounds: 100_000,
            piece_edge_cap: 4096,
            piece_budget: 2_000_000,
            omega: Monotone::affine(rat(1, 3), ratio::int(0)),
            delta: Monotone::affine(ratio::int(1), ratio::int(0)),
            phi: None,
            radius_cap: 0,
            vertex_cap: 20_000,
            spectral: false,
            out: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = PipelineConfig::with_family(FamilySource::Cycles(Vec::new()));
        let mut seen = std::collections::BTreeSet::new();
        let mut have_family = false;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (key, value) = body.split_once('=').ok_or(ConfigError::Syntax { line })?;
            let (key, value) = (key.trim(), value.trim());
            if !seen.insert(key.to_string()) {
                return Err(ConfigError::Duplicate { line, key: key.into() });
            }
            let bad = |msg: String| ConfigError::Value { line, key: key.into(), msg };
            let num = |v: &str| v.parse::<usize>().map_err(|e| bad(e.to_string()));
            let q = |v: &str| ratio::parse(v).map_err(|e| bad(e.to_string()));
            let f = |v: &str| Monotone::parse(v).map_err(|e| bad(e.to_string()));
            match key {
                "family" => {
                    let mut parts = value.split_whitespace();
                    let kind = parts.next().unwrap_or("");
                    let rest: Vec<&str> = parts.collect();
                    let nums = || rest.iter().map(|v| num(v)).collect::<Result<Vec<_>, _>>();
                    cfg.family = match kind {
                        "cycles" => FamilySource::Cycles(nums()?),
                        "random" => FamilySource::Random(nums()?),
                        "files" => FamilySource::Files(rest.iter().map(PathBuf::from).collect()),
                        _ => return Err(bad("expected `cycles`, `random` or `files`".into())),
                    };
                    have_family = true;
                }
                "degree" => cfg.degree = num(value)?,
                "min_girth" => cfg.min_girth = num(value)?,
                "seed" => cfg.seed = value.parse().map_err(|e: std::num::ParseIntError| bad(e.to_string()))?,
                "lambda" => cfg.lambda = q(value)?,
                "beta" => cfg.beta = q(value)?,
                "diameter_ratio" => cfg.diameter_ratio = if value == "measured" { None } else { Some(q(value)?) },
                "intra_alphabet" => cfg.intra_alphabet = num(value)? as u64,
                "inter_alphabet" => cfg.inter_alphabet = num(value)? as u64,
                "max_rounds" => cfg.max_rounds = num(value)?,
                "piece_edge_cap" => cfg.piece_edge_cap = num(value)?,
                "piece_budget" => cfg.piece_budget = num(value)?,
                "omega" => cfg.omega = f(value)?,
                "delta" => cfg.delta = f(value)?,
                "phi" => cfg.phi = if value == "measured" { None } else { Some(f(value)?) },
                "radius_cap" => cfg.radius_cap = num(value)?,
                "vertex_cap" => cfg.vertex_cap = num(value)?,
                "spectral" => cfg.spectral = value.parse().map_err(|e: std::str::ParseBoolError| bad(e.to_string()))?,
                "out" => cfg.out = Some(PathBuf::from(value)),
                _ => return Err(ConfigError::UnknownKey { line, key: key.into() }),
            }
        }
        if !have_family {
            return Err(ConfigError::MissingFamily);
        }
        cfg.check()?;
        Ok(cfg)
    }

    pub fn check(&self) -> Result<(), ConfigError> {
        let zero = ratio::int(0);
        if self.lambda <= zero || self.lambda > rat(1, 6) {
            return Err(ConfigError::Lambda(ratio::format(&self.lambda)));
        }
        if self.beta <= zero || self.beta > rat(1, 2) {
            return Err(ConfigError::Beta(ratio::format(&self.beta)));
        }
        if self.lambda * ratio::int(2) >= self.beta {
            return Err(ConfigError::LambdaBeta {
                lambda: ratio::format(&self.lambda),
                beta: ratio::format(&self.beta),
            });
        }
        Ok(())
    }

    /// Canonical text form; parsing it gives back the same config.
    pub fn render(&self) -> String {
        let family = match &self.family {
            FamilySource::Cycles(v) => format!("cycles {}", join(v)),
            FamilySource::Random(v) => format!("random {}", join(v)),
            FamilySource::Files(v) => {
                format!("files {}", v.iter().map(|p| p.display().to_string()).collect::<Vec<_>>().join(" "))
            }
        };
        let mut s = format!("family = {}\n", family.trim_end());
        s += &format!("degree = {}\nmin_girth = {}\nseed = {}\n", self.degree, self.min_girth, self.seed);
        s += &format!("lambda = {}\nbeta = {}\n", ratio::format(&self.lambda), ratio::format(&self.beta));
        s += &format!(
            "diameter_ratio = {}\n",
            self.diameter_ratio.as_ref().map_or("measured".into(), ratio::format)
        );
        s += &format!("intra_alphabet = {}\ninter_alphabet = {}\n", self.intra_alphabet, self.inter_alphabet);
        s += &format!("max_rounds = {}\n", self.max_rounds);
        s += &format!("piece_edge_cap = {}\npiece_budget = {}\n", self.piece_edge_cap, self.piece_budget);
        s += &format!("omega = {}\ndelta = {}\n", self.omega, self.delta);
        s += &format!("phi = {}\n", self.phi.as_ref().map_or("measured".into(), |f| f.to_string()));
        s += &format!("radius_cap = {}\nvertex_cap = {}\n", self.radius_cap, self.vertex_cap);
        s += &format!("spectral = {}\n", self.spectral);
        s
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let text = "family = cycles 48 96 192\nlambda = 1/24  # smoke test\nseed = 7\n";
        let cfg = PipelineConfig::parse(text).unwrap();
        assert_eq!(cfg.family, FamilySource::Cycles(vec![48, 96, 192]));
        assert_eq!(cfg.lambda, rat(1, 24));
        assert_eq!(cfg.seed, 7);
        assert_eq!(PipelineConfig::parse(&cfg.render()).unwrap(), cfg);
    }

    #[test]
    fn rejects_large_lambda() {
        let err = PipelineConfig::parse("family = cycles 48\nlambda = 1/4\n").unwrap_err();
        assert_eq!(err, ConfigError::Lambda("1/4".into()));
        assert!(matches!(
            PipelineConfig::parse("family = cycles 48\nlambda = 1/6\nbeta = 1/4\n"),
            Err(ConfigError::LambdaBeta { .. })
        ));
    }

    #[test]
    fn reports_line_numbers() {
        assert_eq!(PipelineConfig::parse("family = cycles 4\nfoo = 1\n"), Err(ConfigError::UnknownKey { line: 2, key: "foo".into() }));
        assert_eq!(PipelineConfig::parse("nonsense\n"), Err(ConfigError::Syntax { line: 1 }));
        assert_eq!(PipelineConfig::parse("seed = 1\n"), Err(ConfigError::MissingFamily));
        assert!(matches!(PipelineConfig::parse("family = cycles x\n"), Err(ConfigError::Value { line: 1, .. })));
    }
}
