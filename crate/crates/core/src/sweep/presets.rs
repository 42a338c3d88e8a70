use std::f64::consts::{PI, TAU};

use super::spec::{Axis, AxisParam, SweepSpec};
use crate::error::{Error, Result};
use crate::model::SystemParams;

pub const PRESET_NAMES: [&str; 9] = [
    "fig2a", "fig2b", "fig2c", "fig2d", "fig2e", "fig3", "fig4a", "fig4b", "fig5",
];

// 61 points over [0, 2π] put π/2 and π on the grid and pair k with 60 − k
// under φ → 2π − φ.
fn phase_axis() -> Axis {
    Axis::linear(AxisParam::PhiZ, 0.0, TAU, 61)
}

fn phase_pump_map(g: f64, detuning: f64) -> SweepSpec {
    SweepSpec::new(
        phase_axis(),
        Some(Axis::linear(AxisParam::Eta, 0.01, 3.0, 60)),
        SystemParams::new(g, 1.0, 0.1).with_detuning(detuning),
    )
}

fn pump_coupling_map(phi_z: f64) -> SweepSpec {
    SweepSpec::new(
        Axis::log(AxisParam::Eta, 0.01, 3.0, 60),
        Some(Axis::log(AxisParam::G, 0.1, 10.0, 41)),
        SystemParams::new(1.0, 1.0, 0.1).with_phi_z(phi_z),
    )
}

/// Built-in grid specifications.
///
/// | name    | axes                         | fixed                      |
/// |---------|------------------------------|----------------------------|
/// | `fig2a` | φ_z (61) × η ∈ [0.01, 3] (60) | g = 10                     |
/// | `fig2b` | same                         | g = 0.1                    |
/// | `fig2c` | same                         | g = 1                      |
/// | `fig2d` | same                         | g = 10, δ = Δ = 1          |
/// | `fig2e` | same                         | g = 10, δ = Δ = 10         |
/// | `fig3`  | g ∈ {0.1, 1, 10} × φ_z (61)   | η = 0.5                    |
/// | `fig4a` | η log (60) × g log [0.1, 10] (41) | φ_z = 0                |
/// | `fig4b` | same                         | φ_z = π                    |
/// | `fig5`  | φ_z (61)                     | g = 10, η = 0.1            |
///
/// All presets use γ = κ = 1.
pub fn figure_preset(name: &str) -> Result<SweepSpec> {
    let spec = match name {
        "fig2a" => phase_pump_map(10.0, 0.0),
        "fig2b" => phase_pump_map(0.1, 0.0),
        "fig2c" => phase_pump_map(1.0, 0.0),
        "fig2d" => phase_pump_map(10.0, 1.0),
        "fig2e" => phase_pump_map(10.0, 10.0),
        "fig3" => SweepSpec::new(
            Axis::log(AxisParam::G, 0.1, 10.0, 3),
            Some(phase_axis()),
            SystemParams::new(1.0, 1.0, 0.5),
        ),
        "fig4a" => pump_coupling_map(0.0),
        "fig4b" => pump_coupling_map(PI),
        "fig5" => {
            let mut spec = SweepSpec::new(phase_axis(), None, SystemParams::new(10.0, 1.0, 0.1));
            spec.outputs = vec!["quantumness".into(), "n2".into()];
            spec
        }
        _ => {
            return Err(Error::Config(vec![format!(
                "unknown figure preset '{name}' (expected one of {})",
                PRESET_NAMES.join(", ")
            )]))
        }
    };
    debug_assert!(spec.problems().is_empty(), "{name}: {:?}", spec.problems());
    Ok(spec)
}
