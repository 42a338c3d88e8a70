use faer::c64;

use super::superop::{unvectorize, vectorize, Superoperator};
use crate::error::{Error, Result};
use crate::operators::Operator;

/// Tolerances for the adaptive Dormand–Prince 5(4) integrator.
#[derive(Debug, Clone, Copy)]
pub struct EvolveOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    /// Steps shorter than this fraction of `t` count as underflow.
    pub min_step_fraction: f64,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-12,
            max_steps: 2_000_000,
            min_step_fraction: 1e-14,
        }
    }
}

/// `unvec(exp(L t) vec(ρ₀))`.
pub fn evolve(rho0: &Operator, l: &Superoperator, t: f64) -> Result<Operator> {
    evolve_with(rho0, l, t, &EvolveOptions::default())
}

// Dormand–Prince tableau; the generator is autonomous so the nodes cᵢ are unused.
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// fifth-order weights equal A[6]; E = b5 − b4 drives the error estimate
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

pub fn evolve_with(rho0: &Operator, l: &Superoperator, t: f64, options: &EvolveOptions) -> Result<Operator> {
    if rho0.dims() != l.dims() {
        return Err(Error::DimensionMismatch {
            expected: l.dims().to_vec(),
            found: rho0.dims().to_vec(),
        });
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::invalid(format!("evolution time {t} must be finite and >= 0")));
    }
    if t == 0.0 {
        return Ok(rho0.clone());
    }

    let n = l.dim() * l.dim();
    let zero = c64::new(0.0, 0.0);
    let mut y = vectorize(rho0);
    let mut k: Vec<Vec<c64>> = vec![vec![zero; n]; 7];
    let mut stage = vec![zero; n];
    let mut y_new = vec![zero; n];

    // first-same-as-last: k[0] always holds L·y at the current point
    l.apply_vec(&y, &mut k[0]);
    let norm = |v: &[c64]| v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut h = {
        let scale = norm(&k[0]).max(1e-300);
        (0.01 * norm(&y).max(1e-12) / scale).min(t)
    };
    let h_min = options.min_step_fraction * t;
    let mut time = 0.0;
    let mut steps = 0usize;

    while time < t {
        if steps >= options.max_steps {
            return Err(Error::IntegrationFailure(format!(
                "step budget {} exhausted at t = {time}",
                options.max_steps
            )));
        }
        steps += 1;
        let last = time + h >= t;
        if last {
            h = t - time;
        }

        for s in 1..7 {
            for i in 0..n {
                let mut acc = y[i];
                for (j, kj) in k.iter().enumerate().take(s) {
                    if A[s][j] != 0.0 {
                        acc += kj[i] * (h * A[s][j]);
                    }
                }
                stage[i] = acc;
            }
            if s == 6 {
                y_new.copy_from_slice(&stage);
            }
            l.apply_vec(&stage, &mut k[s]);
        }

        let mut err = 0.0f64;
        for i in 0..n {
            let mut e = zero;
            for (s, ks) in k.iter().enumerate() {
                if E[s] != 0.0 {
                    e += ks[i] * E[s];
                }
            }
            let scale = options.atol + options.rtol * y[i].norm().max(y_new[i].norm());
            err = err.max((e * h).norm() / scale);
        }
        if !err.is_finite() {
            return Err(Error::IntegrationFailure(format!(
                "non-finite error estimate at t = {time}"
            )));
        }

        if err <= 1.0 {
            time = if last { t } else { time + h };
            std::mem::swap(&mut y, &mut y_new);
            let (first, rest) = k.split_at_mut(1);
            std::mem::swap(&mut first[0], &mut rest[5]);
        }
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= factor;
        if time < t && h < h_min {
            return Err(Error::IntegrationFailure(format!(
                "step size {h:e} underflowed at t = {time}"
            )));
        }
    }
    Ok(unvectorize(l.dims(), &y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{spin_ops, StateVector};

    #[test]
    fn zero_time_is_identity() {
        let s = spin_ops();
        let l = Superoperator::from_lindblad(&s.z, &[s.lowering.clone()]).unwrap();
        let rho = Operator::projector(&StateVector::basis(&[2], &[1]).unwrap());
        let out = evolve(&rho, &l, 0.0).unwrap();
        assert_eq!(out.max_abs_diff(&rho), 0.0);
    }

    #[test]
    fn excited_population_decays_exponentially() {
        let s = spin_ops();
        let gamma: f64 = 1.3;
        let h = Operator::zeros(&[2]).unwrap();
        let l = Superoperator::from_lindblad(&h, &[s.lowering.scale(gamma.sqrt())]).unwrap();
        let rho = Operator::projector(&StateVector::basis(&[2], &[1]).unwrap());
        for t in [0.1, 1.0, 4.0] {
            let out = evolve(&rho, &l, t).unwrap();
            assert!((out.get(1, 1).re - (-gamma * t).exp()).abs() < 1e-10);
            assert!((out.trace().re - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rabi_oscillation_phase() {
        // H = Ω σx / 2 without loss: P_e(t) = sin²(Ω t / 2)
        let s = spin_ops();
        let omega = 2.0;
        let h = (&s.raising + &s.lowering).scale(omega / 2.0);
        let l = Superoperator::from_lindblad(&h, &[]).unwrap();
        let rho = Operator::projector(&StateVector::basis(&[2], &[0]).unwrap());
        let t = 2.7;
        let out = evolve(&rho, &l, t).unwrap();
        assert!((out.get(1, 1).re - (omega * t / 2.0).sin().powi(2)).abs() < 1e-9);
    }

    #[test]
    fn negative_time_is_rejected() {
        let s = spin_ops();
        let l = Superoperator::from_lindblad(&s.z, &[]).unwrap();
        let rho = Operator::projector(&StateVector::basis(&[2], &[0]).unwrap());
        assert!(evolve(&rho, &l, -1.0).is_err());
    }

    #[test]
    fn tiny_step_budget_fails_cleanly() {
        let s = spin_ops();
        let l = Superoperator::from_lindblad(&s.z.scale(50.0), &[s.lowering.clone()]).unwrap();
        let rho = Operator::projector(&StateVector::basis(&[2], &[1]).unwrap());
        let opts = EvolveOptions {
            max_steps: 3,
            ..EvolveOptions::default()
        };
        let err = evolve_with(&rho, &l, 100.0, &opts).unwrap_err();
        assert!(matches!(err, Error::IntegrationFailure(_)));
    }
}
