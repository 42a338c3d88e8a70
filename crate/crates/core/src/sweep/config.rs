//! Flat `key = value` sweep configuration.
//!
//! ```text
//! # fig. 2(a)-style grid
//! axis1 = phi_z, 0, 6.2832, 61, linear
//! axis2 = eta, 0.01, 3, 60, linear
//! g = 10
//! gamma = 1
//! outputs = R, regime
//! ```

use super::spec::{Axis, SweepSpec};
use crate::error::{Error, Result};
use crate::model::SystemParams;

pub const KEYS: [&str; 12] = [
    "axis1",
    "axis2",
    "g",
    "gamma",
    "eta",
    "delta_a",
    "delta_c",
    "phi_z",
    "outputs",
    "rel_tol",
    "class_band",
    "max_cutoff",
];

/// Parses a configuration text into a validated spec.
pub fn parse_config(source: &str) -> Result<SweepSpec> {
    parse_config_with_overrides(source, &[])
}

/// As [`parse_config`], with `overrides` (e.g. from command-line flags)
/// taking precedence over the text. All violations are reported together.
pub fn parse_config_with_overrides(source: &str, overrides: &[(String, String)]) -> Result<SweepSpec> {
    let mut problems = Vec::new();
    let mut entries: Vec<(String, String, String)> = Vec::new();

    for (lineno, raw) in source.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = format!("line {}", lineno + 1);
        let Some((key, value)) = line.split_once('=') else {
            problems.push(format!("{at}: expected 'key = value', got '{line}'"));
            continue;
        };
        let (key, value) = (key.trim(), value.trim());
        if entries.iter().any(|(k, _, _)| k == key) {
            problems.push(format!("{at}: duplicate key '{key}'"));
            continue;
        }
        entries.push((key.to_string(), value.to_string(), at));
    }
    for (key, value) in overrides {
        let at = "override".to_string();
        match entries.iter_mut().find(|(k, _, _)| k == key) {
            Some(entry) => *entry = (key.clone(), value.clone(), at),
            None => entries.push((key.clone(), value.clone(), at)),
        }
    }

    let mut fixed = SystemParams::default();
    let (mut axis1, mut axis2) = (None, None);
    let mut outputs = None;
    let (mut rel_tol, mut class_band, mut max_cutoff) = (None, None, None);

    for (key, value, at) in &entries {
        let number = |problems: &mut Vec<String>| match value.parse::<f64>() {
            Ok(v) => Some(v),
            Err(_) => {
                problems.push(format!("{at}: {key} = '{value}' is not a number"));
                None
            }
        };
        match key.as_str() {
            "axis1" => {
                axis1 = parse_axis(value)
                    .map_err(|e| problems.push(format!("{at}: axis1: {e}")))
                    .ok()
            }
            "axis2" => {
                axis2 = parse_axis(value)
                    .map_err(|e| problems.push(format!("{at}: axis2: {e}")))
                    .ok()
            }
            "g" => fixed.g = number(&mut problems).unwrap_or(fixed.g),
            "gamma" => fixed.gamma = number(&mut problems).unwrap_or(fixed.gamma),
            "eta" => fixed.eta = number(&mut problems).unwrap_or(fixed.eta),
            "delta_a" => fixed.delta_a = number(&mut problems).unwrap_or(fixed.delta_a),
            "delta_c" => fixed.delta_c = number(&mut problems).unwrap_or(fixed.delta_c),
            "phi_z" => {
                if let Some(v) = number(&mut problems) {
                    fixed = fixed.with_phi_z(v);
                }
            }
            "rel_tol" => rel_tol = number(&mut problems),
            "class_band" => class_band = number(&mut problems),
            "max_cutoff" => match value.parse::<usize>() {
                Ok(v) => max_cutoff = Some(v),
                Err(_) => problems.push(format!("{at}: max_cutoff = '{value}' is not a whole number")),
            },
            "outputs" => {
                outputs = Some(
                    value
                        .split(',')
                        .map(|s| s.trim().to_string())
                        .filter(|s| !s.is_empty())
                        .collect::<Vec<_>>(),
                )
            }
            _ => problems.push(format!(
                "{at}: unknown key '{key}' (expected one of {})",
                KEYS.join(", ")
            )),
        }
    }

    let has_axis1 = entries.iter().any(|(k, _, _)| k == "axis1");
    if !has_axis1 {
        problems.push("missing required key 'axis1'".to_string());
    }

    if let Some(axis1) = axis1 {
        let mut spec = SweepSpec::new(axis1, axis2, fixed);
        if let Some(o) = outputs {
            spec.outputs = o;
        }
        if let Some(v) = rel_tol {
            spec.rel_tol = v;
        }
        if let Some(v) = class_band {
            spec.class_band = v;
        }
        if let Some(v) = max_cutoff {
            spec.max_cutoff = v;
        }
        problems.extend(spec.problems());
        if problems.is_empty() {
            return Ok(spec);
        }
    }
    Err(Error::Config(problems))
}

/// `param, min, max, count, scale`.
fn parse_axis(value: &str) -> std::result::Result<Axis, String> {
    let parts: Vec<_> = value.split(',').map(str::trim).collect();
    if parts.len() != 5 {
        return Err(format!(
            "expected 'param, min, max, count, scale', got {} fields",
            parts.len()
        ));
    }
    let param = parts[0].parse()?;
    let min = parts[1]
        .parse::<f64>()
        .map_err(|_| format!("min '{}' is not a number", parts[1]))?;
    let max = parts[2]
        .parse::<f64>()
        .map_err(|_| format!("max '{}' is not a number", parts[2]))?;
    let count = parts[3]
        .parse::<usize>()
        .map_err(|_| format!("count '{}' is not a whole number", parts[3]))?;
    let scale = parts[4].parse()?;
    Ok(Axis {
        param,
        min,
        max,
        count,
        scale,
    })
}

/// The text form of a spec; `parse_config(&render_config(s))` returns `s`
/// up to floating-point round-tripping of the printed values.
pub fn render_config(spec: &SweepSpec) -> String {
    let axis = |a: &Axis| format!("{}, {}, {}, {}, {}", a.param, a.min, a.max, a.count, a.scale);
    let mut out = format!("axis1 = {}\n", axis(&spec.axis1));
    if let Some(a2) = &spec.axis2 {
        out.push_str(&format!("axis2 = {}\n", axis(a2)));
    }
    let p = &spec.fixed;
    for (k, v) in [
        ("g", p.g),
        ("gamma", p.gamma),
        ("eta", p.eta),
        ("delta_a", p.delta_a),
        ("delta_c", p.delta_c),
        ("phi_z", p.phi_z),
        ("rel_tol", spec.rel_tol),
        ("class_band", spec.class_band),
    ] {
        out.push_str(&format!("{k} = {v}\n"));
    }
    out.push_str(&format!("max_cutoff = {}\n", spec.max_cutoff));
    out.push_str(&format!("outputs = {}\n", spec.outputs.join(", ")));
    out
}
