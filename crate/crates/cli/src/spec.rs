//! Experiment specs: flat `key = value` files, one key per line.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use flagcodes::channel::{Buffering, Injection, NetworkTopology, TransmissionConfig};
use flagcodes::codes::FlagCode;

use crate::{build_code, CliError, CodeParams};

const KEYS: &[&str] = &[
    "code",
    "construction",
    "q",
    "n",
    "k",
    "m",
    "t",
    "kappa",
    "topology",
    "injection",
    "loss",
    "errors",
    "counts",
    "total",
    "buffering",
    "enforce_rank",
    "retry_limit",
    "receiver",
    "trials",
    "seed",
    "output",
];

pub struct ExperimentSpec {
    pub code: FlagCode,
    pub topology: NetworkTopology,
    pub config: TransmissionConfig,
    pub trials: u64,
    pub output: Option<PathBuf>,
}

struct Entries {
    map: BTreeMap<String, String>,
}

impl Entries {
    fn get(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(String::as_str)
    }

    fn parse<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.get(key)
            .map(|v| {
                v.parse()
                    .map_err(|_| CliError::Validation(format!("spec key {key}: cannot parse {v:?}")))
            })
            .transpose()
    }
}

fn resolve(base: &Path, value: &str) -> PathBuf {
    let p = Path::new(value);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// `ρ:f` pairs separated by commas, one per step.
fn parse_counts(text: &str) -> Result<Vec<(usize, usize)>, CliError> {
    text.split(',')
        .map(|pair| {
            let (r, f) = pair
                .trim()
                .split_once(':')
                .ok_or_else(|| CliError::Validation(format!("counts entry {pair:?} is not rho:f")))?;
            let num = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| CliError::Validation(format!("counts entry {pair:?} is not rho:f")))
            };
            Ok((num(r)?, num(f)?))
        })
        .collect()
}

impl ExperimentSpec {
    /// Relative paths inside the spec are resolved against its directory.
    pub fn load(path: &Path, seed_override: Option<u64>) -> Result<Self, CliError> {
        let text = read(path)?;
        let base = path.parent().unwrap_or(Path::new("."));
        let mut map = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Validation(format!("spec line {}: expected key=value", lineno + 1)))?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(CliError::Validation(format!("unknown spec key {key:?}")));
            }
            if map.insert(key.to_string(), value.trim().to_string()).is_some() {
                return Err(CliError::Validation(format!("duplicate spec key {key:?}")));
            }
        }
        let e = Entries { map };

        let code = match (e.get("code"), e.get("construction")) {
            (Some(file), None) => {
                FlagCode::parse_text(&read(&resolve(base, file))?).map_err(|x| CliError::Validation(x.to_string()))?
            }
            (None, Some(construction)) => build_code(
                construction,
                &CodeParams {
                    q: e.parse("q")?.unwrap_or(2),
                    n: e.parse("n")?,
                    k: e.parse("k")?,
                    m: e.parse("m")?,
                    t: e.parse("t")?,
                    kappa: e.parse("kappa")?,
                },
            )?,
            _ => {
                return Err(CliError::Validation(
                    "spec needs exactly one of `code` and `construction`".into(),
                ))
            }
        };

        let topology = match e.get("topology") {
            None | Some("butterfly") => NetworkTopology::butterfly(),
            Some(file) => read(&resolve(base, file))?
                .parse()
                .map_err(|x: flagcodes::channel::ChannelError| CliError::Validation(x.to_string()))?,
        };

        let injection = match e.get("injection").unwrap_or("none") {
            "none" => Injection::None,
            "random" => Injection::Random {
                loss_probability: e.parse("loss")?.unwrap_or(0.0),
                errors_per_step: e.parse("errors")?.unwrap_or(0),
            },
            "targeted" => Injection::Targeted {
                counts: parse_counts(
                    e.get("counts")
                        .ok_or_else(|| CliError::Validation("targeted injection needs `counts`".into()))?,
                )?,
            },
            "targeted-total" => Injection::TargetedTotal {
                total: e
                    .parse("total")?
                    .ok_or_else(|| CliError::Validation("targeted-total injection needs `total`".into()))?,
            },
            other => return Err(CliError::Validation(format!("unknown injection {other:?}"))),
        };
        let buffering = match e.get("buffering").unwrap_or("cumulative") {
            "cumulative" => Buffering::Cumulative,
            "per-step" => Buffering::PerStep,
            other => return Err(CliError::Validation(format!("unknown buffering {other:?}"))),
        };
        let seed = match (seed_override, e.parse::<u64>("seed")?) {
            (Some(s), _) | (None, Some(s)) => s,
            (None, None) => return Err(CliError::Validation("a seed is required (spec key or --seed)".into())),
        };
        let defaults = TransmissionConfig::default();
        let config = TransmissionConfig {
            seed,
            injection,
            buffering,
            enforce_rank: e.parse("enforce_rank")?.unwrap_or(false),
            retry_limit: e.parse("retry_limit")?.unwrap_or(defaults.retry_limit),
            receiver: e.get("receiver").map(str::to_string),
        };
        let trials = e.parse("trials")?.unwrap_or(1);
        Ok(ExperimentSpec {
            code,
            topology,
            config,
            trials,
            output: e.get("output").map(|o| resolve(base, o)),
        })
    }
}
