use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{check_probability, Error, Result};
use crate::noise::NoiseModel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecoderKind {
    Serial,
    Distributed,
}

impl DecoderKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DecoderKind::Serial => "serial",
            DecoderKind::Distributed => "distributed",
        }
    }
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DecoderKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "serial" => Ok(DecoderKind::Serial),
            "distributed" | "helios" => Ok(DecoderKind::Distributed),
            other => Err(format!("unknown decoder `{other}` (expected serial or distributed)")),
        }
    }
}

/// One batch of seeded trials.
///
/// The text form is one `key = value` per line, `#` starts a comment, and
/// the keys are the field names below. Missing keys keep their defaults, and
/// a missing `rounds` follows `d`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub d: usize,
    pub rounds: usize,
    pub model: NoiseModel,
    pub p: f64,
    pub p_e: f64,
    /// Standard deviation of per-edge error probabilities around `p`.
    /// Zero means every edge fails with exactly `p`.
    pub p_sd: f64,
    pub w_max: u32,
    pub decoder: DecoderKind,
    /// Virtual PEs per physical PE.
    pub context_n: usize,
    pub sliding_window: bool,
    pub trials: u64,
    pub seed: u64,
    pub clock_ns: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig::new(13)
    }
}

pub const CONFIG_KEYS: [&str; 14] = [
    "d",
    "rounds",
    "model",
    "p",
    "p_e",
    "p_sd",
    "w_max",
    "decoder",
    "context_n",
    "sliding_window",
    "trials",
    "seed",
    "clock_ns",
    "out_dir",
];

impl ExperimentConfig {
    pub fn new(d: usize) -> Self {
        ExperimentConfig {
            d,
            rounds: d,
            model: NoiseModel::Phenomenological,
            p: 0.001,
            p_e: 0.0,
            p_sd: 0.0,
            w_max: 2,
            decoder: DecoderKind::Distributed,
            context_n: 1,
            sliding_window: false,
            trials: 1000,
            seed: 1,
            clock_ns: 10.0,
        }
    }

    /// Builds a config from `(key, value)` pairs applied in order, so later
    /// pairs win. `out_dir` is accepted and ignored here.
    pub fn from_pairs<'a, I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, &'a str, &'a str)>,
    {
        let mut cfg = ExperimentConfig::new(13);
        let mut rounds = None;
        for (line, key, value) in pairs {
            let bad = |msg: String| Error::Parse { line, msg };
            fn num<T: FromStr>(v: &str) -> std::result::Result<T, String>
            where
                T::Err: fmt::Display,
            {
                v.parse::<T>().map_err(|e| format!("`{v}`: {e}"))
            }
            match key {
                "d" => cfg.d = num(value).map_err(bad)?,
                "rounds" => rounds = Some(num(value).map_err(bad)?),
                "model" => cfg.model = value.parse().map_err(bad)?,
                "p" => cfg.p = num(value).map_err(bad)?,
                "p_e" => cfg.p_e = num(value).map_err(bad)?,
                "p_sd" => cfg.p_sd = num(value).map_err(bad)?,
                "w_max" => cfg.w_max = num(value).map_err(bad)?,
                "decoder" => cfg.decoder = value.parse().map_err(bad)?,
                "context_n" => cfg.context_n = num(value).map_err(bad)?,
                "sliding_window" => cfg.sliding_window = num(value).map_err(bad)?,
                "trials" => cfg.trials = num(value).map_err(bad)?,
                "seed" => cfg.seed = num(value).map_err(bad)?,
                "clock_ns" => cfg.clock_ns = num(value).map_err(bad)?,
                "out_dir" => {}
                other => return Err(bad(format!("unknown key `{other}`"))),
            }
        }
        cfg.rounds = rounds.unwrap_or(cfg.d);
        Ok(cfg)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: i + 1,
                msg: format!("expected `key = value`, got `{line}`"),
            })?;
            pairs.push((i + 1, k.trim(), v.trim()));
        }
        Self::from_pairs(pairs)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn emit(&self) -> String {
        format!(
            "d = {}\nrounds = {}\nmodel = {}\np = {}\np_e = {}\np_sd = {}\nw_max = {}\n\
             decoder = {}\ncontext_n = {}\nsliding_window = {}\ntrials = {}\nseed = {}\nclock_ns = {}\n",
            self.d,
            self.rounds,
            self.model,
            self.p,
            self.p_e,
            self.p_sd,
            self.w_max,
            self.decoder,
            self.context_n,
            self.sliding_window,
            self.trials,
            self.seed,
            self.clock_ns
        )
    }

    pub fn validate(&self) -> Result<()> {
        if self.d < 3 || self.d.is_multiple_of(2) {
            return Err(Error::InvalidDistance(self.d));
        }
        if self.rounds == 0 {
            return Err(Error::InvalidRounds(self.rounds));
        }
        check_probability("p", self.p)?;
        check_probability("p_e", self.p_e)?;
        if !(self.p_sd >= 0.0 && self.p_sd.is_finite()) {
            return Err(Error::InvalidProbability {
                what: "p_sd",
                value: self.p_sd,
                range: "[0, inf)",
            });
        }
        if self.w_max < 2 {
            return Err(Error::InvalidMaxWeight(self.w_max));
        }
        if self.context_n == 0 || self.context_n > self.rounds {
            return Err(Error::InvalidPartition {
                rounds: self.rounds,
                n: self.context_n,
            });
        }
        if self.sliding_window {
            if !self.rounds.is_multiple_of(self.d) || self.rounds < 2 * self.d {
                return Err(Error::InvalidStream {
                    rounds: self.rounds,
                    d: self.d,
                });
            }
            if self.context_n > 1 || self.w_max > 2 || self.decoder == DecoderKind::Serial {
                return Err(Error::Parse {
                    line: 0,
                    msg: "sliding_window runs the distributed decoder with context_n = 1 and w_max = 2".into(),
                });
            }
        }
        if self.decoder == DecoderKind::Serial && self.context_n > 1 {
            return Err(Error::Parse {
                line: 0,
                msg: "context_n applies to the distributed decoder only".into(),
            });
        }
        if !(self.clock_ns > 0.0 && self.clock_ns.is_finite()) {
            return Err(Error::Parse {
                line: 0,
                msg: format!("clock_ns must be positive, got {}", self.clock_ns),
            });
        }
        Ok(())
    }
}
