use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::SystemParams;
use crate::witness::DEFAULT_CLASS_BAND;

/// A parameter that may be swept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AxisParam {
    PhiZ,
    Eta,
    G,
    Gamma,
    DeltaA,
    DeltaC,
}

impl AxisParam {
    pub const ALL: [AxisParam; 6] = [
        AxisParam::PhiZ,
        AxisParam::Eta,
        AxisParam::G,
        AxisParam::Gamma,
        AxisParam::DeltaA,
        AxisParam::DeltaC,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxisParam::PhiZ => "phi_z",
            AxisParam::Eta => "eta",
            AxisParam::G => "g",
            AxisParam::Gamma => "gamma",
            AxisParam::DeltaA => "delta_a",
            AxisParam::DeltaC => "delta_c",
        }
    }

    pub fn get(self, p: &SystemParams) -> f64 {
        match self {
            AxisParam::PhiZ => p.phi_z,
            AxisParam::Eta => p.eta,
            AxisParam::G => p.g,
            AxisParam::Gamma => p.gamma,
            AxisParam::DeltaA => p.delta_a,
            AxisParam::DeltaC => p.delta_c,
        }
    }

    /// Writes `value` into `p`; phases are wrapped into `[0, 2π)`.
    pub fn set(self, p: &mut SystemParams, value: f64) {
        match self {
            AxisParam::PhiZ => *p = p.with_phi_z(value),
            AxisParam::Eta => p.eta = value,
            AxisParam::G => p.g = value,
            AxisParam::Gamma => p.gamma = value,
            AxisParam::DeltaA => p.delta_a = value,
            AxisParam::DeltaC => p.delta_c = value,
        }
    }

    fn must_be_nonnegative(self) -> bool {
        matches!(self, AxisParam::Eta | AxisParam::G | AxisParam::Gamma)
    }
}

impl fmt::Display for AxisParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AxisParam {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Self::ALL.into_iter().find(|a| a.name() == s).ok_or_else(|| {
            let names: Vec<_> = Self::ALL.iter().map(|a| a.name()).collect();
            format!("unknown axis parameter '{s}' (expected one of {})", names.join(", "))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

impl FromStr for Scale {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "linear" | "lin" => Ok(Scale::Linear),
            "log" => Ok(Scale::Log),
            _ => Err(format!("unknown scale '{s}' (expected linear or log)")),
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scale::Linear => "linear",
            Scale::Log => "log",
        })
    }
}

/// An inclusive grid `min ..= max` with `count` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub param: AxisParam,
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub scale: Scale,
}

impl Axis {
    pub fn linear(param: AxisParam, min: f64, max: f64, count: usize) -> Self {
        Self {
            param,
            min,
            max,
            count,
            scale: Scale::Linear,
        }
    }

    pub fn log(param: AxisParam, min: f64, max: f64, count: usize) -> Self {
        Self {
            scale: Scale::Log,
            ..Self::linear(param, min, max, count)
        }
    }

    /// Grid values; both endpoints are reproduced exactly.
    pub fn values(&self) -> Vec<f64> {
        let last = self.count.saturating_sub(1).max(1) as f64;
        (0..self.count)
            .map(|k| {
                if k == 0 {
                    return self.min;
                }
                if k + 1 == self.count {
                    return self.max;
                }
                let t = k as f64 / last;
                match self.scale {
                    Scale::Linear => self.min + (self.max - self.min) * t,
                    Scale::Log => self.min * (self.max / self.min).powf(t),
                }
            })
            .collect()
    }

    fn problems(&self, label: &str) -> Vec<String> {
        let mut out = Vec::new();
        if self.count < 2 {
            out.push(format!("{label}: count {} must be >= 2", self.count));
        }
        if !self.min.is_finite() || !self.max.is_finite() {
            out.push(format!("{label}: bounds must be finite"));
        } else if !(self.min < self.max) {
            out.push(format!("{label}: min {} must be < max {}", self.min, self.max));
        }
        if self.scale == Scale::Log && !(self.min > 0.0) {
            out.push(format!("{label}: log scale requires min > 0, got {}", self.min));
        }
        if self.param.must_be_nonnegative() && self.min < 0.0 {
            out.push(format!("{label}: {} must be >= 0, got min {}", self.param, self.min));
        }
        out
    }
}

/// Observable columns a sweep is meant to highlight.
pub const OUTPUT_NAMES: [&str; 9] = [
    "cutoff",
    "n1",
    "n2",
    "R",
    "regime",
    "g2",
    "quantumness",
    "semiclassical_intensity",
    "residual",
];

/// A complete, validated description of a 1-D or 2-D sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub axis1: Axis,
    pub axis2: Option<Axis>,
    /// Template for every grid point; swept fields are overwritten.
    pub fixed: SystemParams,
    pub outputs: Vec<String>,
    pub rel_tol: f64,
    pub class_band: f64,
    pub max_cutoff: usize,
}

impl SweepSpec {
    pub fn new(axis1: Axis, axis2: Option<Axis>, fixed: SystemParams) -> Self {
        Self {
            axis1,
            axis2,
            fixed,
            outputs: vec!["R".into(), "regime".into()],
            rel_tol: 1e-6,
            class_band: DEFAULT_CLASS_BAND,
            max_cutoff: 60,
        }
    }

    pub fn len(&self) -> usize {
        self.axis1.count * self.axis2.map_or(1, |a| a.count)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Every problem with the spec, empty when valid.
    pub fn problems(&self) -> Vec<String> {
        let mut out = self.axis1.problems("axis1");
        if let Some(axis2) = &self.axis2 {
            out.extend(axis2.problems("axis2"));
            if axis2.param == self.axis1.param {
                out.push(format!("axis1 and axis2 both sweep {}", axis2.param));
            }
        }
        if self.fixed.n_atoms != 2 {
            out.push(format!(
                "fixed parameters must describe two atoms, got {}",
                self.fixed.n_atoms
            ));
        }
        let mut probe = self.fixed;
        probe.fock_cutoff = probe.fock_cutoff.max(1);
        if let Err(Error::InvalidArgument(msg)) = probe.validate() {
            out.extend(msg.split("; ").map(|m| format!("fixed: {m}")));
        }
        if !(self.rel_tol > 0.0) || !self.rel_tol.is_finite() {
            out.push(format!("rel_tol = {} must be finite and > 0", self.rel_tol));
        }
        if !(self.class_band > 0.0) || !self.class_band.is_finite() {
            out.push(format!("class_band = {} must be finite and > 0", self.class_band));
        }
        if self.max_cutoff < 4 {
            out.push(format!("max_cutoff = {} must be >= 4", self.max_cutoff));
        }
        for name in &self.outputs {
            if !OUTPUT_NAMES.contains(&name.as_str()) {
                out.push(format!(
                    "unknown output '{name}' (expected any of {})",
                    OUTPUT_NAMES.join(", ")
                ));
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let problems = self.problems();
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(problems))
        }
    }

    /// Grid points in row-major order (axis2 varies fastest), as raw axis
    /// coordinates and the parameters they produce.
    pub fn points(&self) -> Vec<GridPoint> {
        let v1 = self.axis1.values();
        let v2 = self.axis2.map(|a| a.values());
        let mut out = Vec::with_capacity(self.len());
        for &x in &v1 {
            let mut base = self.fixed;
            self.axis1.param.set(&mut base, x);
            match (&self.axis2, &v2) {
                (Some(axis2), Some(values)) => {
                    for &y in values {
                        let mut p = base;
                        axis2.param.set(&mut p, y);
                        out.push(GridPoint::new(&p, &[(self.axis1.param, x), (axis2.param, y)]));
                    }
                }
                _ => out.push(GridPoint::new(&base, &[(self.axis1.param, x)])),
            }
        }
        out
    }
}

/// Parameters of one grid point together with the coordinates as written on
/// the axis (a swept phase of `2π` is reported as `2π`, not `0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub params: SystemParams,
    pub phi_z: f64,
    pub eta: f64,
    pub g: f64,
    pub gamma: f64,
    pub delta_a: f64,
    pub delta_c: f64,
}

impl GridPoint {
    fn new(params: &SystemParams, raw: &[(AxisParam, f64)]) -> Self {
        let coord = |a: AxisParam| {
            raw.iter()
                .find(|(p, _)| *p == a)
                .map_or_else(|| a.get(params), |&(_, v)| v)
        };
        Self {
            params: *params,
            phi_z: coord(AxisParam::PhiZ),
            eta: coord(AxisParam::Eta),
            g: coord(AxisParam::G),
            gamma: coord(AxisParam::Gamma),
            delta_a: coord(AxisParam::DeltaA),
            delta_c: coord(AxisParam::DeltaC),
        }
    }
}
