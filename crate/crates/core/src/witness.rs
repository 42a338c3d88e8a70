//! The radiance witness `R = (n₂ − 2n₁) / 2n₁`, its six-way classification,
//! and the linearized mean-field cavity amplitude it is compared against.

use std::fmt;
use std::str::FromStr;

use faer::c64;

use crate::error::{Error, Result};
use crate::model::{collective_g_h, SystemParams};
use crate::steady::{converge_cutoff_with, ConvergenceConfig, SteadyStateResult, PHOTON_FLOOR};

/// Half-width of the `R = 0` and `R = 1` bands.
pub const DEFAULT_CLASS_BAND: f64 = 1e-3;

/// Single-atom photon numbers below this leave `R` undefined.
pub const REFERENCE_FLOOR: f64 = 1e-12;

/// Radiance regimes in order of increasing `R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RadianceClass {
    ExtremelySubradiant,
    Subradiant,
    Uncorrelated,
    Enhanced,
    Superradiant,
    Hyperradiant,
}

impl RadianceClass {
    pub const ALL: [RadianceClass; 6] = [
        RadianceClass::ExtremelySubradiant,
        RadianceClass::Subradiant,
        RadianceClass::Uncorrelated,
        RadianceClass::Enhanced,
        RadianceClass::Superradiant,
        RadianceClass::Hyperradiant,
    ];

    pub fn token(self) -> &'static str {
        match self {
            RadianceClass::ExtremelySubradiant => "extremely_subradiant",
            RadianceClass::Subradiant => "subradiant",
            RadianceClass::Uncorrelated => "uncorrelated",
            RadianceClass::Enhanced => "enhanced",
            RadianceClass::Superradiant => "superradiant",
            RadianceClass::Hyperradiant => "hyperradiant",
        }
    }
}

impl fmt::Display for RadianceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for RadianceClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.token() == s)
            .ok_or_else(|| Error::invalid(format!("unknown radiance class '{s}'")))
    }
}

/// Assigns `r` to a regime. The exact points `R = 0` and `R = 1` are widened
/// to bands of half-width `band`; `R = −½` belongs to `Subradiant`.
pub fn classify(r: f64, band: f64) -> Result<RadianceClass> {
    if !r.is_finite() {
        return Err(Error::invalid(format!("cannot classify R = {r}")));
    }
    if !(band > 0.0) || !band.is_finite() {
        return Err(Error::invalid(format!("class band {band} must be finite and > 0")));
    }
    Ok(if r.abs() <= band {
        RadianceClass::Uncorrelated
    } else if (r - 1.0).abs() <= band {
        RadianceClass::Superradiant
    } else if r < -0.5 {
        RadianceClass::ExtremelySubradiant
    } else if r < 0.0 {
        RadianceClass::Subradiant
    } else if r < 1.0 {
        RadianceClass::Enhanced
    } else {
        RadianceClass::Hyperradiant
    })
}

/// One evaluated parameter point.
#[derive(Debug, Clone)]
pub struct RadiancePoint {
    /// The two-atom parameters (cutoff set to the one actually used).
    pub params: SystemParams,
    pub r: f64,
    pub regime: RadianceClass,
    /// ⟨a†a⟩ of the single-atom reference.
    pub n1: f64,
    /// ⟨a†a⟩ of the two-atom system.
    pub n2: f64,
    pub g2: Option<f64>,
    pub quantumness: Option<f64>,
    pub coherent_amp: c64,
    pub atomic_excitation: f64,
    pub semiclassical_amp: Option<c64>,
    pub cutoff_used: usize,
    pub reference_cutoff: usize,
    /// Larger of the two steady-state residuals.
    pub residual: f64,
}

impl RadiancePoint {
    pub fn semiclassical_intensity(&self) -> Option<f64> {
        self.semiclassical_amp.map(|a| a.norm_sqr())
    }
}

/// Evaluates the two-atom system and its single-atom reference with the
/// default convergence settings and class band.
pub fn radiance_witness(params: &SystemParams, rel_tol: f64) -> Result<RadiancePoint> {
    let config = ConvergenceConfig::default().with_rel_tol(rel_tol);
    radiance_witness_with(params, &config, DEFAULT_CLASS_BAND)
}

pub fn radiance_witness_with(params: &SystemParams, config: &ConvergenceConfig, band: f64) -> Result<RadiancePoint> {
    check_two_atoms(params)?;
    let reference = converge_cutoff_with(&params.single_atom_reference(), config)?;
    let two = converge_cutoff_with(params, config)?;
    radiance_from_results(params, &two, &reference, band)
}

fn check_two_atoms(params: &SystemParams) -> Result<()> {
    if params.n_atoms != 2 {
        return Err(Error::invalid(format!(
            "radiance witness needs the two-atom system, got n_atoms = {}",
            params.n_atoms
        )));
    }
    Ok(())
}

/// Assembles a [`RadiancePoint`] from already converged solves; `reference`
/// must be the single-atom system at the same `(g, γ, η, δ, Δ)`.
pub fn radiance_from_results(
    params: &SystemParams,
    two: &SteadyStateResult,
    reference: &SteadyStateResult,
    band: f64,
) -> Result<RadiancePoint> {
    check_two_atoms(params)?;
    let n1 = reference.mean_photon;
    let n2 = two.mean_photon;
    if !(n1 >= REFERENCE_FLOOR) {
        return Err(Error::ReferenceDark { n1 });
    }
    let r = (n2 - 2.0 * n1) / (2.0 * n1);
    let regime = classify(r, band)?;
    let semiclassical_amp = match semiclassical_field(params) {
        Ok(a) => Some(a),
        Err(Error::SemiclassicalSingularity { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(RadiancePoint {
        params: params.with_cutoff(two.cutoff_used),
        r,
        regime,
        n1,
        n2,
        g2: two.g2_zero,
        quantumness: quantumness_ratio(two),
        coherent_amp: two.coherent_amp,
        atomic_excitation: two.atomic_excitation,
        semiclassical_amp,
        cutoff_used: two.cutoff_used,
        reference_cutoff: reference.cutoff_used,
        residual: two.residual.max(reference.residual),
    })
}

/// Mean-field cavity amplitude for weakly excited atoms (`⟨Sᶻ⟩ ≈ −½`):
///
/// ```text
/// ⟨a⟩ = (η/g) N𝒢 / [ (γ/2 + iΔ)(κ/2 + iδ)/g² + Nℋ ]
/// ```
///
/// with `(𝒢, ℋ)` from [`collective_g_h`]. Zero when `g = 0`.
pub fn semiclassical_field(params: &SystemParams) -> Result<c64> {
    params.validate()?;
    let p = params;
    if p.g == 0.0 {
        return Ok(c64::new(0.0, 0.0));
    }
    let n = p.n_atoms as f64;
    let (gg, hh) = collective_g_h(p);
    let atom = c64::new(p.gamma / 2.0, p.delta_a);
    let cavity = c64::new(p.kappa / 2.0, p.delta_c);
    let denominator = atom * cavity / (p.g * p.g) + n * hh;
    let modulus = denominator.norm();
    if !(modulus >= 1e-14) {
        return Err(Error::SemiclassicalSingularity { modulus });
    }
    Ok(c64::new(p.eta / p.g * n * gg, 0.0) / denominator)
}

/// `|⟨a⟩|² / ⟨a†a⟩`: the coherent fraction of the cavity photons.
pub fn quantumness_ratio(result: &SteadyStateResult) -> Option<f64> {
    (result.mean_photon >= PHOTON_FLOOR).then(|| result.coherent_amp.norm_sqr() / result.mean_photon)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, PI};

    use super::*;

    #[test]
    fn class_examples() {
        let b = DEFAULT_CLASS_BAND;
        assert_eq!(classify(1.0, b).unwrap(), RadianceClass::Superradiant);
        assert_eq!(classify(0.0, b).unwrap(), RadianceClass::Uncorrelated);
        assert_eq!(classify(24.0, b).unwrap(), RadianceClass::Hyperradiant);
        assert_eq!(classify(-0.5, b).unwrap(), RadianceClass::Subradiant);
        assert_eq!(classify(-0.5001, b).unwrap(), RadianceClass::ExtremelySubradiant);
        assert_eq!(classify(0.0009, b).unwrap(), RadianceClass::Uncorrelated);
        assert_eq!(classify(0.0011, b).unwrap(), RadianceClass::Enhanced);
        assert_eq!(classify(0.9989, b).unwrap(), RadianceClass::Enhanced);
        assert_eq!(classify(1.0011, b).unwrap(), RadianceClass::Hyperradiant);
        assert_eq!(classify(-1.0, b).unwrap(), RadianceClass::ExtremelySubradiant);
    }

    #[test]
    fn class_rejects_bad_input() {
        assert!(classify(f64::NAN, 1e-3).is_err());
        assert!(classify(f64::INFINITY, 1e-3).is_err());
        assert!(classify(0.3, 0.0).is_err());
        assert!(classify(0.3, -1.0).is_err());
    }

    #[test]
    fn class_tokens_round_trip() {
        for c in RadianceClass::ALL {
            assert_eq!(c.token().parse::<RadianceClass>().unwrap(), c);
        }
        assert!("superduper".parse::<RadianceClass>().is_err());
    }

    #[test]
    fn semiclassical_single_atom_value() {
        // N = 1, g = γ = κ = 1, η = 0.1: 0.1 / (0.25 + 1)
        let p = SystemParams::new(1.0, 1.0, 0.1).with_atoms(1);
        let a = semiclassical_field(&p).unwrap();
        assert!((a - c64::new(0.08, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn semiclassical_zeros() {
        let p = SystemParams::new(10.0, 1.0, 0.1);
        assert!(semiclassical_field(&p.with_phi_z(PI)).unwrap().norm() < 1e-15);
        let dark = SystemParams::new(10.0, 1.0, 0.0);
        assert_eq!(semiclassical_field(&dark).unwrap(), c64::new(0.0, 0.0));
        let uncoupled = SystemParams::new(0.0, 1.0, 0.3);
        assert_eq!(semiclassical_field(&uncoupled).unwrap(), c64::new(0.0, 0.0));
    }

    #[test]
    fn semiclassical_is_linear_in_drive() {
        let p = SystemParams::new(2.0, 0.5, 0.2).with_phi_z(0.7).with_detuning(1.5);
        let a1 = semiclassical_field(&p).unwrap();
        let a2 = semiclassical_field(&SystemParams { eta: 0.4, ..p }).unwrap();
        assert!((a2 - a1 * 2.0).norm() < 1e-15);
    }

    #[test]
    fn decoupled_second_atom_gives_minus_half() {
        let p = SystemParams::new(2.0, 1.0, 0.3).with_phi_z(FRAC_PI_2);
        let point = radiance_witness(&p, 1e-6).unwrap();
        assert!((point.r + 0.5).abs() < 1e-6, "R = {}", point.r);
        // −½ is a class boundary without a band; rounding may fall either side
        assert!(point.regime <= RadianceClass::Subradiant);
    }

    #[test]
    fn dark_reference_is_an_error() {
        let p = SystemParams::new(0.0, 1.0, 0.3);
        let err = radiance_witness(&p, 1e-6).unwrap_err();
        assert!(matches!(err, Error::ReferenceDark { .. }), "{err:?}");
        let one = SystemParams::new(1.0, 1.0, 0.3).with_atoms(1);
        assert!(radiance_witness(&one, 1e-6).is_err());
    }
}
