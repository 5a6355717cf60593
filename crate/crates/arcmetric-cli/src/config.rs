//! Experiment configuration files.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use arcmetric::geometry::FNPoint;
use arcmetric::lamination::RationalLamination;
use arcmetric::topology::{build_surface, Surface};
use serde::Deserialize;

use crate::io::{lamination_from_json, point_from_json, Fail, FnJson, LaminationJson, Outcome};

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignatureJson {
    #[serde(default)]
    pub genus: u32,
    #[serde(default)]
    pub punctures: u32,
    #[serde(default)]
    pub boundaries: u32,
}

/// An explicit list of times or an evenly spaced range, `stop` included.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum GridJson {
    List(Vec<f64>),
    Range { start: f64, stop: f64, step: f64 },
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub length: f64,
    pub limit: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { length: 1e-9, limit: 1e-6 }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputJson {
    pub csv: Option<PathBuf>,
    pub summary: Option<PathBuf>,
}

/// Everything an experiment verb may need; each verb checks for the fields
/// it uses.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub surface: SignatureJson,
    pub base: Option<FnJson>,
    pub x0: Option<FnJson>,
    pub probes: Option<Vec<FnJson>>,
    pub mu: Option<LaminationJson>,
    pub nu: Option<LaminationJson>,
    pub targets: Option<Vec<String>>,
    #[serde(rename = "panel_N", default)]
    pub panel_n: u32,
    pub grid: Option<GridJson>,
    #[serde(default)]
    pub tolerances: Tolerances,
    pub cap: Option<f64>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub output: OutputJson,
}

/// serde_json appends " at line L column C"; the location is reported separately.
fn strip_location(msg: &str) -> &str {
    msg.rfind(" at line ").map_or(msg, |k| &msg[..k])
}

pub fn parse_config(text: &str, origin: &str) -> Outcome<ExperimentConfig> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        let inner = e.inner();
        Fail::Usage(format!(
            "{origin}: schema error at line {}, column {}, field `{field}`: {}",
            inner.line(),
            inner.column(),
            strip_location(&inner.to_string())
        ))
    })
}

pub fn load_config(path: &Path) -> Outcome<ExperimentConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Fail::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text, &path.display().to_string())
}

fn field_error(field: &str, e: Fail) -> Fail {
    let msg = format!("field `{field}`: {e}");
    match e {
        Fail::Usage(_) => Fail::Usage(msg),
        Fail::Domain(_) => Fail::Domain(msg),
        Fail::Unsupported(_) => Fail::Unsupported(msg),
        Fail::Io(_) => Fail::Io(msg),
    }
}

fn required<'a, T>(v: &'a Option<T>, field: &str, verb: &str) -> Outcome<&'a T> {
    v.as_ref().ok_or_else(|| Fail::Usage(format!("field `{field}` is required by {verb}")))
}

impl ExperimentConfig {
    pub fn surface(&self) -> Outcome<Arc<Surface>> {
        let s = self.surface;
        build_surface(s.genus, s.punctures, s.boundaries)
            .map(Arc::new)
            .map_err(|e| field_error("surface", e.into()))
    }

    pub fn point(&self, surface: &Arc<Surface>, field: &str, verb: &str) -> Outcome<FNPoint> {
        let m = match field {
            "base" => &self.base,
            "x0" => &self.x0,
            _ => unreachable!("no point field named {field}"),
        };
        point_from_json(surface, required(m, field, verb)?).map_err(|e| field_error(field, e))
    }

    pub fn probes(&self, surface: &Arc<Surface>, verb: &str) -> Outcome<Vec<FNPoint>> {
        let list = required(&self.probes, "probes", verb)?;
        if list.is_empty() {
            return Err(Fail::Usage("field `probes` must not be empty".into()));
        }
        list.iter()
            .enumerate()
            .map(|(k, m)| point_from_json(surface, m).map_err(|e| field_error(&format!("probes[{k}]"), e)))
            .collect()
    }

    pub fn lamination(&self, surface: &Arc<Surface>, field: &str, verb: &str) -> Outcome<RationalLamination> {
        let l = match field {
            "mu" => &self.mu,
            "nu" => &self.nu,
            _ => unreachable!("no lamination field named {field}"),
        };
        lamination_from_json(surface, required(l, field, verb)?).map_err(|e| field_error(field, e))
    }

    /// The configured grid, or `default` when absent.
    pub fn grid(&self, default: Vec<f64>) -> Outcome<Vec<f64>> {
        let bad = |m: &str| Fail::Usage(format!("field `grid`: {m}"));
        match &self.grid {
            None => Ok(default),
            Some(GridJson::List(v)) => Ok(v.clone()),
            Some(GridJson::Range { start, stop, step }) => {
                let (start, stop, step) = (*start, *stop, *step);
                if !(step > 0.0 && step.is_finite() && start.is_finite() && stop.is_finite() && stop >= start) {
                    return Err(bad("a range needs finite start <= stop and step > 0"));
                }
                let n = ((stop - start) / step + 1e-9).floor() as usize;
                if n > 100_000 {
                    return Err(bad("more than 100000 grid points"));
                }
                Ok((0..=n).map(|k| start + k as f64 * step).collect())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_errors_name_line_and_field() {
        let text = "{\n  \"surface\": {\"boundaries\": 3},\n  \"panel_N\": \"zero\"\n}";
        let e = parse_config(text, "c.json").unwrap_err().to_string();
        assert!(e.contains("line 3"), "{e}");
        assert!(e.contains("`panel_N`"), "{e}");
        let e = parse_config("{\"surface\": {\"boundaries\": 3}, \"gird\": []}", "c.json").unwrap_err().to_string();
        assert!(e.contains("gird"), "{e}");
    }

    #[test]
    fn range_grids_include_the_stop() {
        let c = parse_config(r#"{"surface": {"boundaries": 3}, "grid": {"start": 0, "stop": 1, "step": 0.1}}"#, "c").unwrap();
        let g = c.grid(vec![]).unwrap();
        assert_eq!(g.len(), 11);
        assert!((g[10] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn missing_fields_are_named() {
        let c = parse_config(r#"{"surface": {"boundaries": 3}}"#, "c").unwrap();
        let s = c.surface().unwrap();
        let e = c.point(&s, "x0", "horo-converge").unwrap_err().to_string();
        assert!(e.contains("`x0`") && e.contains("horo-converge"), "{e}");
    }
}
