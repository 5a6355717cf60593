//! Reading points, laminations and classes; writing JSON and CSV.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use arcmetric::geometry::FNPoint;
use arcmetric::lamination::{dt_decode, DTCoordinates, RationalLamination};
use arcmetric::topology::{build_surface, Class, Surface};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Failures, each tied to a process exit code.
#[derive(Debug, Error)]
pub enum Fail {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("{0}")]
    Io(String),
}

impl Fail {
    pub fn code(&self) -> i32 {
        match self {
            Fail::Io(_) => 1,
            Fail::Usage(_) => 2,
            Fail::Domain(_) => 3,
            Fail::Unsupported(_) => 4,
        }
    }
}

impl From<arcmetric::Error> for Fail {
    fn from(e: arcmetric::Error) -> Self {
        use arcmetric::Error as E;
        match e {
            E::UnsupportedSurface(_) | E::UnsupportedClass(_) | E::UnsupportedCoordinates(_) => {
                Fail::Unsupported(e.to_string())
            }
            _ => Fail::Domain(e.to_string()),
        }
    }
}

pub type Outcome<T> = std::result::Result<T, Fail>;

/// `{length, twist}` for a decomposition curve, a bare length for a boundary.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FnEntry {
    Curve { length: f64, twist: f64 },
    Boundary(f64),
}

pub type FnJson = BTreeMap<String, FnEntry>;

/// Either `[{class, weight}, ...]` or Dehn–Thurston coordinates
/// `{curve-id: [i, theta], boundary-id: theta_hat}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LaminationJson {
    Components(Vec<Component>),
    Coordinates(BTreeMap<String, DtEntry>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Component {
    pub class: String,
    pub weight: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DtEntry {
    Curve([f64; 2]),
    Boundary(f64),
}

pub fn parse_numbers(text: &str) -> Outcome<Vec<f64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Fail::Usage(format!("'{s}' is not a number in '{text}'")))
        })
        .collect()
}

pub fn parse_signature(text: &str) -> Outcome<Arc<Surface>> {
    let v: Vec<u32> = text
        .split(',')
        .map(|s| s.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| Fail::Usage(format!("surface must be G,N,B (genus, punctures, boundaries), got '{text}'")))?;
    match v.as_slice() {
        [g, n, b] => Ok(Arc::new(build_surface(*g, *n, *b)?)),
        _ => Err(Fail::Usage(format!("surface must be G,N,B, got '{text}'"))),
    }
}

/// Flattened coordinates `ℓ₁,τ₁,…,ℓ_k,τ_k,b₁,…,b_m`.
pub fn point_from_flat(surface: &Arc<Surface>, v: &[f64]) -> Outcome<FNPoint> {
    let d = &surface.decomposition;
    let need = 2 * d.interior_count + d.boundary_count;
    if v.len() != need {
        return Err(Fail::Usage(format!(
            "{} takes {need} coordinates ({} length/twist pairs, then {} boundary lengths), got {}",
            surface.signature,
            d.interior_count,
            d.boundary_count,
            v.len()
        )));
    }
    let interior = v[..2 * d.interior_count].chunks(2).map(|p| (p[0], p[1])).collect();
    Ok(FNPoint::new(surface.clone(), interior, v[2 * d.interior_count..].to_vec())?)
}

pub fn point_from_json(surface: &Arc<Surface>, m: &FnJson) -> Outcome<FNPoint> {
    let d = &surface.decomposition;
    let mut interior = vec![None; d.interior_count];
    let mut boundary = vec![None; d.boundary_count];
    for (id, entry) in m {
        let bad = |what: &str| Fail::Usage(format!("'{id}': {what}"));
        match (surface.parse_class(id)?, *entry) {
            (Class::Interior(i), FnEntry::Curve { length, twist }) => interior[i] = Some((length, twist)),
            (Class::Boundary(j), FnEntry::Boundary(l)) => boundary[j] = Some(l),
            (Class::Interior(_), _) => return Err(bad("expected {\"length\": .., \"twist\": ..}")),
            (Class::Boundary(_), _) => return Err(bad("expected a bare boundary length")),
            _ => return Err(bad("only decomposition curves and boundaries carry coordinates")),
        }
    }
    let missing = |k: String| Fail::Usage(format!("point is missing '{k}'"));
    let interior = interior
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| missing(format!("C{}", i + 1))))
        .collect::<Outcome<Vec<_>>>()?;
    let boundary = boundary
        .into_iter()
        .enumerate()
        .map(|(j, v)| v.ok_or_else(|| missing(format!("B{}", j + 1))))
        .collect::<Outcome<Vec<_>>>()?;
    Ok(FNPoint::new(surface.clone(), interior, boundary)?)
}

pub fn point_to_json(x: &FNPoint) -> FnJson {
    let mut m = FnJson::new();
    for (i, &(length, twist)) in x.interior.iter().enumerate() {
        m.insert(format!("C{}", i + 1), FnEntry::Curve { length, twist });
    }
    for (j, &l) in x.boundary.iter().enumerate() {
        m.insert(format!("B{}", j + 1), FnEntry::Boundary(l));
    }
    m
}

fn read_file(path: &Path) -> Outcome<String> {
    std::fs::read_to_string(path).map_err(|e| Fail::Usage(format!("cannot read {}: {e}", path.display())))
}

fn json_text(text: &str) -> Outcome<Option<String>> {
    let t = text.trim();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(Some(t.to_string()));
    }
    if t.ends_with(".json") {
        return read_file(Path::new(t)).map(Some);
    }
    Ok(None)
}

/// A point given inline as JSON, as a JSON file, or as flattened numbers.
pub fn read_point(surface: &Arc<Surface>, text: &str) -> Outcome<FNPoint> {
    match json_text(text)? {
        Some(j) => {
            let m: FnJson = serde_json::from_str(&j).map_err(|e| Fail::Usage(format!("point: {e}")))?;
            point_from_json(surface, &m)
        }
        None => point_from_flat(surface, &parse_numbers(text)?),
    }
}

pub fn lamination_from_json(surface: &Arc<Surface>, l: &LaminationJson) -> Outcome<RationalLamination> {
    match l {
        LaminationJson::Components(items) => {
            let comps = items
                .iter()
                .map(|c| Ok((surface.parse_class(&c.class)?, c.weight)))
                .collect::<Outcome<Vec<_>>>()?;
            Ok(RationalLamination::new(surface.clone(), comps)?)
        }
        LaminationJson::Coordinates(m) => {
            let d = &surface.decomposition;
            let mut c = DTCoordinates { curves: vec![(0.0, 0.0); d.interior_count], boundaries: vec![0.0; d.boundary_count] };
            for (id, e) in m {
                match (surface.parse_class(id)?, *e) {
                    (Class::Interior(i), DtEntry::Curve([a, t])) => c.curves[i] = (a, t),
                    (Class::Boundary(j), DtEntry::Boundary(h)) => c.boundaries[j] = h,
                    _ => return Err(Fail::Usage(format!("'{id}': expected [i, theta] on a curve or theta_hat on a boundary"))),
                }
            }
            Ok(dt_decode(surface.clone(), &c)?)
        }
    }
}

/// Splits on commas that are not inside `[..]`, so `g[1,2]:1,B1` has two items.
fn split_outside_brackets(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (k, ch) in text.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&text[start..k]);
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

/// `a33`, `a12:1.5,B1:0.5`, `g[1,2]:2`, inline JSON, or a JSON file.
pub fn read_lamination(surface: &Arc<Surface>, text: &str) -> Outcome<RationalLamination> {
    if let Some(j) = json_text(text)? {
        let l: LaminationJson = serde_json::from_str(&j).map_err(|e| Fail::Usage(format!("lamination: {e}")))?;
        return lamination_from_json(surface, &l);
    }
    let comps = split_outside_brackets(text)
        .into_iter()
        .map(|item| {
            let (id, w) = item.split_once(':').unwrap_or((item, "1"));
            let w: f64 = w
                .trim()
                .parse()
                .map_err(|_| Fail::Usage(format!("bad weight in '{item}'")))?;
            Ok((surface.parse_class(id.trim())?, w))
        })
        .collect::<Outcome<Vec<_>>>()?;
    Ok(RationalLamination::new(surface.clone(), comps)?)
}

pub fn dt_to_json(surface: &Surface, c: &DTCoordinates) -> BTreeMap<String, DtEntry> {
    let mut m = BTreeMap::new();
    for (i, &(a, t)) in c.curves.iter().enumerate() {
        m.insert(surface.class_id(&Class::Interior(i)), DtEntry::Curve([a, t]));
    }
    for (j, &h) in c.boundaries.iter().enumerate() {
        m.insert(surface.class_id(&Class::Boundary(j)), DtEntry::Boundary(h));
    }
    m
}

/// Fixed decimal with nine significant digits.
pub fn sig9(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0.00000000".into();
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (8 - mag).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // rounding may carry into a tenth digit, as in 9.9999999996 -> 10.0000000
    let carried = s.parse::<f64>().is_ok_and(|v| v.abs() >= 10f64.powi(mag + 1));
    if carried && decimals > 0 {
        format!("{x:.prec$}", prec = decimals - 1)
    } else {
        s
    }
}

/// A CSV table rendered in memory and written out once.
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<String>) -> Self {
        Self { header, rows: vec![] }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> Outcome<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Fail::Io(e.to_string());
        w.write_record(&self.header).map_err(io)?;
        for r in &self.rows {
            w.write_record(r).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Fail::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Fail::Io(e.to_string()))
    }
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report types serialize")
}
