//! TOML scenario files.
//!
//! ```toml
//! extreme = "max"
//! scales_x = [5.0, 2.0]
//! scales_y = [6.0, 3.0]
//! counts_x = [1, 11]
//! counts_y = [5, 6]
//!
//! [generator_x]
//! family = "gumbel_exp"
//! theta = 9.0
//!
//! [generator_y]
//! family = "gumbel_exp"
//! theta = 10.0
//!
//! [baseline1]
//! family = "exponential"
//!
//! [baseline2]
//! family = "kummer"
//!
//! [grid]            # optional
//! lo = 0.01
//! hi = 50.0
//! count = 2000
//! spacing = "log"
//! ```
//!
//! Generator families: `gumbel_exp`, `log_exp` (both need `theta`) and
//! `independence`. Baseline families: `exponential`, `kummer`, `lomax_half`,
//! `power` (`a`, `l`) and `pareto` (`a`, `b`).

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::baselines::{Baseline, BaselineFamily};
use crate::copula::{Family, Generator};
use crate::error::{Error, Result};
use crate::extremes::{Extreme, MultipleOutlierModel};
use crate::numerics::{Grid, Spacing};
use crate::theorems::ComparisonScenario;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    extreme: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    note: String,
    scales_x: [f64; 2],
    scales_y: [f64; 2],
    counts_x: [usize; 2],
    counts_y: [usize; 2],
    generator_x: RawGenerator,
    generator_y: RawGenerator,
    baseline1: RawBaseline,
    baseline2: RawBaseline,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    grid: Option<RawGrid>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGenerator {
    family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    theta: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBaseline {
    family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    l: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    lo: f64,
    hi: f64,
    count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    spacing: Option<String>,
}

/// Grid section of a scenario file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn build(&self) -> Result<Grid> {
        Grid::new(self.lo, self.hi, self.count, self.spacing)
    }
}

/// A parsed scenario file.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioFile {
    pub scenario: ComparisonScenario,
    pub grid: Option<GridSpec>,
}

/// 1-based line of `key` inside `[section]`, or of a top-level `key`.
fn locate(text: &str, section: Option<&str>, key: Option<&str>) -> Option<usize> {
    let mut current: Option<String> = None;
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if let Some(name) = t.strip_prefix('[').and_then(|r| r.split(']').next()) {
            current = Some(name.trim().to_string());
            if key.is_none() && section == Some(name.trim()) {
                return Some(i + 1);
            }
            continue;
        }
        let Some(key) = key else { continue };
        let here = match section {
            Some(s) => current.as_deref() == Some(s),
            None => current.is_none(),
        };
        let lhs = t.split('=').next().map(str::trim);
        if here && t.contains('=') && lhs == Some(key) {
            return Some(i + 1);
        }
    }
    None
}

struct Ctx<'a> {
    text: &'a str,
}

impl Ctx<'_> {
    fn err(&self, section: Option<&str>, key: &str, message: impl Into<String>) -> Error {
        let line = locate(self.text, section, Some(key)).or_else(|| locate(self.text, section, None));
        let field = match section {
            Some(s) => format!("{s}.{key}"),
            None => key.to_string(),
        };
        Error::Parse {
            line,
            field,
            message: message.into(),
        }
    }

    fn generator(&self, section: &str, g: &RawGenerator) -> Result<Generator> {
        let need_theta = || {
            g.theta
                .ok_or_else(|| self.err(Some(section), "family", format!("`{}` needs `theta`", g.family)))
        };
        let built = match g.family.to_ascii_lowercase().as_str() {
            "gumbel_exp" | "gumbel" => Generator::gumbel_exp(need_theta()?),
            "log_exp" => Generator::log_exp(need_theta()?),
            "independence" => {
                if g.theta.is_some() {
                    return Err(self.err(Some(section), "theta", "independence takes no `theta`"));
                }
                Ok(Generator::independence())
            }
            other => {
                return Err(self.err(
                    Some(section),
                    "family",
                    format!("unknown generator family `{other}` (gumbel_exp, log_exp, independence)"),
                ))
            }
        };
        built.map_err(|e| self.err(Some(section), "theta", e.to_string()))
    }

    fn baseline(&self, section: &str, b: &RawBaseline) -> Result<Baseline> {
        let family = b.family.to_ascii_lowercase();
        let need = |name: &str, v: Option<f64>| {
            v.ok_or_else(|| self.err(Some(section), "family", format!("`{family}` needs `{name}`")))
        };
        let reject = |names: &[(&str, Option<f64>)]| -> Result<()> {
            match names.iter().find(|(_, v)| v.is_some()) {
                Some((n, _)) => Err(self.err(Some(section), n, format!("`{family}` takes no `{n}`"))),
                None => Ok(()),
            }
        };
        let built = match family.as_str() {
            "exponential" | "kummer" | "lomax_half" => {
                reject(&[("a", b.a), ("b", b.b), ("l", b.l)])?;
                Ok(match family.as_str() {
                    "exponential" => Baseline::exponential(),
                    "kummer" => Baseline::kummer(),
                    _ => Baseline::lomax_half(),
                })
            }
            "power" => {
                reject(&[("b", b.b)])?;
                Baseline::power(need("a", b.a)?, need("l", b.l)?)
            }
            "pareto" => {
                reject(&[("l", b.l)])?;
                Baseline::pareto(need("a", b.a)?, need("b", b.b)?)
            }
            other => {
                return Err(self.err(
                    Some(section),
                    "family",
                    format!(
                        "unknown baseline family `{other}` (exponential, kummer, lomax_half, power, pareto)"
                    ),
                ))
            }
        };
        built.map_err(|e| self.err(Some(section), "family", e.to_string()))
    }
}

/// Parses a scenario document. Errors carry the line and field.
pub fn parse_scenario(text: &str) -> Result<ScenarioFile> {
    let raw: RawScenario = toml::from_str(text).map_err(|e| {
        let line = e.span().map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1);
        let message = e.message().to_string();
        let field = message
            .split('`')
            .nth(1)
            .map_or_else(|| "document".to_string(), str::to_string);
        Error::Parse { line, field, message }
    })?;
    let ctx = Ctx { text };
    let extreme: Extreme = raw
        .extreme
        .parse()
        .map_err(|e: Error| ctx.err(None, "extreme", e.to_string()))?;
    let gx = ctx.generator("generator_x", &raw.generator_x)?;
    let gy = ctx.generator("generator_y", &raw.generator_y)?;
    let f1 = ctx.baseline("baseline1", &raw.baseline1)?;
    let f2 = ctx.baseline("baseline2", &raw.baseline2)?;
    let x = MultipleOutlierModel::new(gx, f1.clone(), f2.clone(), raw.scales_x, raw.counts_x, extreme)
        .map_err(|e| ctx.err(None, "scales_x", e.to_string()))?;
    let y = MultipleOutlierModel::new(gy, f1, f2, raw.scales_y, raw.counts_y, extreme)
        .map_err(|e| ctx.err(None, "scales_y", e.to_string()))?;
    let scenario =
        ComparisonScenario::new(x, y, raw.note).map_err(|e| ctx.err(None, "extreme", e.to_string()))?;
    let grid = match raw.grid {
        None => None,
        Some(g) => {
            let spacing = match &g.spacing {
                Some(s) => s
                    .parse()
                    .map_err(|e: Error| ctx.err(Some("grid"), "spacing", e.to_string()))?,
                None => Spacing::Log,
            };
            let spec = GridSpec {
                lo: g.lo,
                hi: g.hi,
                count: g.count,
                spacing,
            };
            spec.build().map_err(|e| ctx.err(Some("grid"), "lo", e.to_string()))?;
            Some(spec)
        }
    };
    Ok(ScenarioFile { scenario, grid })
}

pub fn read_scenario(path: &Path) -> Result<ScenarioFile> {
    let text = std::fs::read_to_string(path)?;
    parse_scenario(&text)
}

fn raw_generator(g: &Generator) -> Result<RawGenerator> {
    let (family, theta) = match *g.family() {
        Family::GumbelExp { theta } => ("gumbel_exp", Some(theta)),
        Family::LogExp { theta } => ("log_exp", Some(theta)),
        Family::Independence => ("independence", None),
        Family::Custom(_) => {
            return Err(Error::invalid("custom generators cannot be written to a scenario file"))
        }
    };
    Ok(RawGenerator {
        family: family.into(),
        theta,
    })
}

fn raw_baseline(b: &Baseline) -> Result<RawBaseline> {
    let mut raw = RawBaseline {
        family: String::new(),
        a: None,
        b: None,
        l: None,
    };
    raw.family = match *b.family() {
        BaselineFamily::Exponential => "exponential".into(),
        BaselineFamily::Kummer => "kummer".into(),
        BaselineFamily::LomaxHalf => "lomax_half".into(),
        BaselineFamily::Power { a, l } => {
            (raw.a, raw.l) = (Some(a), Some(l));
            "power".into()
        }
        BaselineFamily::Pareto { a, b } => {
            (raw.a, raw.b) = (Some(a), Some(b));
            "pareto".into()
        }
        BaselineFamily::Custom(_) => {
            return Err(Error::invalid("custom baselines cannot be written to a scenario file"))
        }
    };
    Ok(raw)
}

/// Serialises a scenario; [`parse_scenario`] reads it back unchanged.
pub fn scenario_to_toml(s: &ComparisonScenario, grid: Option<&GridSpec>) -> Result<String> {
    let (x, y) = (&s.model_x, &s.model_y);
    let raw = RawScenario {
        extreme: match s.extreme() {
            Extreme::Max => "max".into(),
            Extreme::Min => "min".into(),
        },
        note: s.note.clone(),
        scales_x: x.scales(),
        scales_y: y.scales(),
        counts_x: x.counts(),
        counts_y: y.counts(),
        generator_x: raw_generator(x.generator())?,
        generator_y: raw_generator(y.generator())?,
        baseline1: raw_baseline(x.baseline1())?,
        baseline2: raw_baseline(x.baseline2())?,
        grid: grid.map(|g| RawGrid {
            lo: g.lo,
            hi: g.hi,
            count: g.count,
            spacing: Some(g.spacing.to_string()),
        }),
    };
    toml::to_string(&raw).map_err(|e| Error::invalid(format!("cannot serialise scenario: {e}")))
}
