//! Two coherently driven two-level atoms coupled to a single cavity mode.
//!
//! All rates are in units of the cavity decay rate κ and ħ = 1. Atom 1 sits
//! at a field antinode (coupling `g`); atom 2 is displaced along the cavity
//! axis by an interatomic phase `φ_z`, giving coupling `g cos φ_z`.
//!
//! The master equation generated here is
//!
//! ```text
//! dρ/dt = −i[H₀ + H_I + H_L, ρ] + Σᵢ γ D[Sᵢ⁻]ρ + κ D[a]ρ
//! H₀  = Δ Σᵢ Sᵢᶻ + δ a†a
//! H_I = Σᵢ gᵢ (Sᵢ⁺ a + Sᵢ⁻ a†)
//! H_L = η Σᵢ (Sᵢ⁺ + Sᵢ⁻)
//! D[C]ρ = CρC† − ½(C†Cρ + ρC†C)
//! ```

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use faer::c64;

use crate::error::{Error, Result};
use crate::operators::{annihilation, embed, kron, spin_ops, Operator};
use crate::steady::Superoperator;

/// Physical parameters of the atom–cavity system, rates in units of κ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Peak atom–cavity coupling.
    pub g: f64,
    /// Cavity decay rate; the unit of every other rate.
    pub kappa: f64,
    /// Spontaneous emission rate.
    pub gamma: f64,
    /// Rabi pump rate of the transverse drive.
    pub eta: f64,
    /// Cavity–laser detuning δ.
    pub delta_c: f64,
    /// Atom–laser detuning Δ.
    pub delta_a: f64,
    /// Interatomic phase in radians, kept in `[0, 2π)`.
    pub phi_z: f64,
    pub n_atoms: usize,
    pub fock_cutoff: usize,
}

impl Default for SystemParams {
    fn default() -> Self {
        Self {
            g: 1.0,
            kappa: 1.0,
            gamma: 1.0,
            eta: 0.1,
            delta_c: 0.0,
            delta_a: 0.0,
            phi_z: 0.0,
            n_atoms: 2,
            fock_cutoff: 4,
        }
    }
}

impl SystemParams {
    /// Two resonant atoms with the given coupling, emission rate and pump.
    pub fn new(g: f64, gamma: f64, eta: f64) -> Self {
        Self {
            g,
            gamma,
            eta,
            ..Self::default()
        }
    }

    /// Sets φ_z, wrapping it into `[0, 2π)`.
    pub fn with_phi_z(mut self, phi_z: f64) -> Self {
        self.phi_z = wrap_phase(phi_z);
        self
    }

    /// Sets δ = Δ.
    pub fn with_detuning(mut self, detuning: f64) -> Self {
        self.delta_a = detuning;
        self.delta_c = detuning;
        self
    }

    pub fn with_cutoff(mut self, fock_cutoff: usize) -> Self {
        self.fock_cutoff = fock_cutoff;
        self
    }

    pub fn with_atoms(mut self, n_atoms: usize) -> Self {
        self.n_atoms = n_atoms;
        self
    }

    /// The reference system: atom 2 removed, everything else unchanged.
    pub fn single_atom_reference(&self) -> Self {
        Self {
            n_atoms: 1,
            phi_z: 0.0,
            ..*self
        }
    }

    /// `[2, …, 2, cutoff + 1]`: one qubit per atom, cavity last.
    pub fn hilbert_dims(&self) -> Vec<usize> {
        let mut dims = vec![2; self.n_atoms];
        dims.push(self.fock_cutoff + 1);
        dims
    }

    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        let named = [
            ("g", self.g),
            ("kappa", self.kappa),
            ("gamma", self.gamma),
            ("eta", self.eta),
            ("delta_c", self.delta_c),
            ("delta_a", self.delta_a),
            ("phi_z", self.phi_z),
        ];
        for (name, value) in named {
            if !value.is_finite() {
                problems.push(format!("{name} = {value} is not finite"));
            }
        }
        for (name, value) in [("g", self.g), ("gamma", self.gamma), ("eta", self.eta)] {
            if value < 0.0 {
                problems.push(format!("{name} = {value} must be >= 0"));
            }
        }
        if self.kappa.is_nan() || self.kappa <= 0.0 {
            problems.push(format!("kappa = {} must be > 0", self.kappa));
        }
        if !(0.0..TAU).contains(&self.phi_z) {
            problems.push(format!("phi_z = {} must lie in [0, 2pi)", self.phi_z));
        }
        if !(1..=2).contains(&self.n_atoms) {
            problems.push(format!("n_atoms = {} must be 1 or 2", self.n_atoms));
        }
        if self.fock_cutoff < 1 {
            problems.push("fock_cutoff must be >= 1".to_string());
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(problems.join("; ")))
        }
    }
}

/// Wraps a phase into `[0, 2π)`.
pub fn wrap_phase(phi: f64) -> f64 {
    let wrapped = phi.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if wrapped >= TAU {
        0.0
    } else {
        wrapped
    }
}

/// Per-atom couplings `(g₁, g₂)`; atom 1 is pinned to an antinode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomCoupling {
    pub g1: f64,
    pub g2: f64,
}

impl AtomCoupling {
    fn as_slice(&self, n_atoms: usize) -> Vec<f64> {
        [self.g1, self.g2][..n_atoms].to_vec()
    }
}

pub fn atom_couplings(params: &SystemParams) -> AtomCoupling {
    AtomCoupling {
        g1: params.g,
        g2: params.g * params.phi_z.cos(),
    }
}

/// Couplings of the symmetric and antisymmetric Dicke channels,
/// `g± = g(1 ± cos φ_z)/√2`.
pub fn dicke_couplings(params: &SystemParams) -> Result<(f64, f64)> {
    if params.n_atoms != 2 {
        return Err(Error::invalid("Dicke couplings require two atoms"));
    }
    let c = params.phi_z.cos();
    Ok((
        params.g * (1.0 + c) * FRAC_1_SQRT_2,
        params.g * (1.0 - c) * FRAC_1_SQRT_2,
    ))
}

/// Collective coupling parameters `(𝒢, ℋ)` of the semiclassical field:
/// mean of `cos` and `cos²` of the per-atom phases.
pub fn collective_g_h(params: &SystemParams) -> (f64, f64) {
    if params.n_atoms == 1 {
        return (1.0, 1.0);
    }
    let c = params.phi_z.cos();
    ((1.0 + c) / 2.0, (1.0 + c * c) / 2.0)
}

/// Subsystem operators lifted to the full Hilbert space.
struct LiftedOps {
    a: Operator,
    lowering: Vec<Operator>,
    z: Vec<Operator>,
}

impl LiftedOps {
    fn new(params: &SystemParams) -> Result<Self> {
        params.validate()?;
        let dims = params.hilbert_dims();
        let spins = spin_ops();
        let cavity = params.n_atoms;
        let lowering = (0..params.n_atoms)
            .map(|i| embed(&spins.lowering, i, &dims))
            .collect::<Result<Vec<_>>>()?;
        let z = (0..params.n_atoms)
            .map(|i| embed(&spins.z, i, &dims))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            a: embed(&annihilation(params.fock_cutoff)?, cavity, &dims)?,
            lowering,
            z,
        })
    }
}

fn sum(ops: impl IntoIterator<Item = Operator>, dims: &[usize]) -> Result<Operator> {
    ops.into_iter()
        .try_fold(Operator::zeros(dims)?, |acc, op| Ok(&acc + &op))
}

fn h0_from(params: &SystemParams, ops: &LiftedOps) -> Result<Operator> {
    let dims = params.hilbert_dims();
    let number = &ops.a.dagger() * &ops.a;
    let atoms = sum(ops.z.iter().map(|z| z.scale(params.delta_a)), &dims)?;
    Ok(&atoms + &number.scale(params.delta_c))
}

fn hi_from(params: &SystemParams, ops: &LiftedOps) -> Result<Operator> {
    let dims = params.hilbert_dims();
    let couplings = atom_couplings(params).as_slice(params.n_atoms);
    let a_dag = ops.a.dagger();
    let terms = ops.lowering.iter().zip(couplings).map(|(sm, gi)| {
        let exchange = &(&sm.dagger() * &ops.a) + &(sm * &a_dag);
        exchange.scale(gi)
    });
    sum(terms, &dims)
}

fn hl_from(params: &SystemParams, ops: &LiftedOps) -> Result<Operator> {
    let dims = params.hilbert_dims();
    let terms = ops.lowering.iter().map(|sm| (&sm.dagger() + sm).scale(params.eta));
    sum(terms, &dims)
}

/// Bare atom and cavity energies in the frame rotating at the laser frequency.
pub fn build_h0(params: &SystemParams) -> Result<Operator> {
    h0_from(params, &LiftedOps::new(params)?)
}

/// Tavis–Cummings exchange between the atoms and the cavity mode.
pub fn build_hi(params: &SystemParams) -> Result<Operator> {
    hi_from(params, &LiftedOps::new(params)?)
}

/// Homogeneous transverse pump of all atoms.
pub fn build_hl(params: &SystemParams) -> Result<Operator> {
    hl_from(params, &LiftedOps::new(params)?)
}

/// Full Hamiltonian `H₀ + H_I + H_L`.
pub fn hamiltonian(params: &SystemParams) -> Result<Operator> {
    let ops = LiftedOps::new(params)?;
    let h = &h0_from(params, &ops)? + &hi_from(params, &ops)?;
    Ok(&h + &hl_from(params, &ops)?)
}

/// Collapse operators `√γ Sᵢ⁻` for each atom followed by `√κ a`.
pub fn collapse_operators(params: &SystemParams) -> Result<Vec<Operator>> {
    let ops = LiftedOps::new(params)?;
    Ok(collapse_from(params, &ops))
}

fn collapse_from(params: &SystemParams, ops: &LiftedOps) -> Vec<Operator> {
    let rate = params.gamma.sqrt();
    ops.lowering
        .iter()
        .map(|sm| sm.scale(rate))
        .chain(std::iter::once(ops.a.scale(params.kappa.sqrt())))
        .collect()
}

/// Vectorized generator `L` with `d vec(ρ)/dt = L vec(ρ)`.
pub fn build_liouvillian(params: &SystemParams) -> Result<Superoperator> {
    let ops = LiftedOps::new(params)?;
    let h = &(&h0_from(params, &ops)? + &hi_from(params, &ops)?) + &hl_from(params, &ops)?;
    Superoperator::from_lindblad(&h, &collapse_from(params, &ops))
}

/// `S₁ᶻ + … + a†a`, conserved by `H₀ + H_I` but not by the drive.
pub fn excitation_number(params: &SystemParams) -> Result<Operator> {
    let ops = LiftedOps::new(params)?;
    let dims = params.hilbert_dims();
    let atoms = sum(ops.z.iter().cloned(), &dims)?;
    Ok(&atoms + &(&ops.a.dagger() * &ops.a))
}

/// Unitary whose columns are the collective basis `{|gg⟩, |+⟩, |−⟩, |ee⟩} ⊗ {|0⟩…|cutoff⟩}`
/// expressed in the product basis, with `|±⟩ = (|eg⟩ ± |ge⟩)/√2`.
///
/// `U† H U` gives `H` in the collective basis.
pub fn dicke_basis(fock_cutoff: usize) -> Result<Operator> {
    let s = FRAC_1_SQRT_2;
    // product order: gg = 0, ge = 1, eg = 2, ee = 3
    let columns: [[f64; 4]; 4] = [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, s, s, 0.0],
        [0.0, -s, s, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ];
    let atoms = Operator::from_fn(vec![4], |i, j| c64::new(columns[j][i], 0.0))?;
    let cavity = Operator::identity(&[fock_cutoff + 1])?;
    let u = kron(&atoms, &cavity);
    Operator::new(vec![2, 2, fock_cutoff + 1], u.data().to_owned())
}

/// Index of `|collective, n⟩` in the collective basis produced by [`dicke_basis`].
pub fn dicke_index(state: DickeState, photons: usize, fock_cutoff: usize) -> usize {
    state as usize * (fock_cutoff + 1) + photons
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DickeState {
    Ground = 0,
    Symmetric = 1,
    Antisymmetric = 2,
    Excited = 3,
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, PI};

    use super::*;
    use crate::operators::StateVector;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    fn element(op: &Operator, bra: &[usize], ket: &[usize]) -> c64 {
        let bra = StateVector::basis(op.dims(), bra).unwrap();
        let ket = StateVector::basis(op.dims(), ket).unwrap();
        bra.inner(&op.apply(&ket).unwrap())
    }

    fn in_dicke_basis(op: &Operator, cutoff: usize) -> Operator {
        let u = dicke_basis(cutoff).unwrap();
        &(&u.dagger() * op) * &u
    }

    #[test]
    fn couplings_at_special_phases() {
        let p = SystemParams::new(2.0, 1.0, 0.1);
        let c0 = atom_couplings(&p);
        assert_eq!((c0.g1, c0.g2), (2.0, 2.0));
        let c = atom_couplings(&p.with_phi_z(FRAC_PI_2));
        assert_eq!(c.g1, 2.0);
        assert!(c.g2.abs() < 1e-15);
        let c = atom_couplings(&p.with_phi_z(PI));
        assert!(close(c.g2, -2.0));
    }

    #[test]
    fn dicke_channel_couplings() {
        let p = SystemParams::new(1.0, 1.0, 0.1);
        let (_, gm) = dicke_couplings(&p).unwrap();
        assert_eq!(gm, 0.0);
        let (gp, _) = dicke_couplings(&p.with_phi_z(PI)).unwrap();
        assert!(gp.abs() < 1e-15);
        let (gp, gm) = dicke_couplings(&p.with_phi_z(FRAC_PI_2)).unwrap();
        assert!(close(gp, FRAC_1_SQRT_2) && close(gm, FRAC_1_SQRT_2));
        assert!(matches!(
            dicke_couplings(&p.with_atoms(1)),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn collective_parameters() {
        let p = SystemParams::new(1.0, 1.0, 0.1);
        assert_eq!(collective_g_h(&p), (1.0, 1.0));
        let (g, h) = collective_g_h(&p.with_phi_z(PI));
        assert!(g.abs() < 1e-15 && close(h, 1.0));
        let (g, h) = collective_g_h(&p.with_phi_z(FRAC_PI_2));
        assert!(close(g, 0.5) && close(h, 0.5));
        assert_eq!(collective_g_h(&p.with_phi_z(PI).with_atoms(1)), (1.0, 1.0));
    }

    #[test]
    fn h0_matrix_elements() {
        let resonant = SystemParams::new(3.0, 1.0, 0.4).with_cutoff(3);
        assert_eq!(build_h0(&resonant).unwrap().frobenius_norm(), 0.0);

        let mut p = resonant;
        p.delta_a = 0.7;
        p.delta_c = -1.3;
        let h0 = build_h0(&p).unwrap();
        assert!(close(element(&h0, &[0, 0, 1], &[0, 0, 1]).re, -0.7 - 1.3));
        assert!(close(element(&h0, &[1, 1, 0], &[1, 1, 0]).re, 0.7));
        let off_diagonal: f64 = h0.nonzeros().filter(|(i, j, _)| i != j).count() as f64;
        assert_eq!(off_diagonal, 0.0);
    }

    #[test]
    fn hi_matrix_elements() {
        let p = SystemParams::new(1.7, 1.0, 0.1).with_cutoff(3);
        let hi = build_hi(&p).unwrap();
        assert!(close(element(&hi, &[1, 0, 0], &[0, 0, 1]).re, 1.7));

        let hi = build_hi(&p.with_phi_z(FRAC_PI_2)).unwrap();
        for n in 0..3 {
            for a1 in 0..2 {
                let flip = element(&hi, &[a1, 1, n], &[a1, 0, n + 1]);
                assert!(flip.norm() < 1e-15);
            }
        }
    }

    #[test]
    fn hi_in_dicke_basis_matches_channel_couplings() {
        let cutoff = 4;
        for phi in [0.0, 0.4, FRAC_PI_2, 2.0, PI, 4.5] {
            let p = SystemParams::new(1.3, 1.0, 0.1).with_cutoff(cutoff).with_phi_z(phi);
            let (gp, gm) = dicke_couplings(&p).unwrap();
            let hd = in_dicke_basis(&build_hi(&p).unwrap(), cutoff);
            let at = |s1, n1, s2, n2| hd.get(dicke_index(s1, n1, cutoff), dicke_index(s2, n2, cutoff));
            use DickeState::*;
            assert!((at(Antisymmetric, 1, Ground, 2).re - gm * 2f64.sqrt()).abs() < 1e-12);
            assert!((at(Symmetric, 1, Ground, 2).re - gp * 2f64.sqrt()).abs() < 1e-12);
            // |±, n⟩ → |gg, n+1⟩ carries √(n+1) g±
            for n in 0..cutoff {
                let expected = gp * ((n + 1) as f64).sqrt();
                assert!((at(Ground, n + 1, Symmetric, n).re - expected).abs() < 1e-12);
            }
            // no direct mixing between |+⟩ and |−⟩
            for n in 0..=cutoff {
                for m in 0..=cutoff {
                    assert!(at(Symmetric, n, Antisymmetric, m).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn hl_pumps_only_the_symmetric_channel() {
        let cutoff = 3;
        let p = SystemParams::new(1.0, 1.0, 0.35).with_cutoff(cutoff).with_phi_z(1.1);
        let hl = build_hl(&p).unwrap();
        assert!(close(element(&hl, &[1, 0, 0], &[0, 0, 0]).re, 0.35));
        let hd = in_dicke_basis(&hl, cutoff);
        use DickeState::*;
        for n in 0..=cutoff {
            let idx = |s| dicke_index(s, n, cutoff);
            assert!(hd.get(idx(Antisymmetric), idx(Ground)).norm() < 1e-15);
            assert!(hd.get(idx(Excited), idx(Antisymmetric)).norm() < 1e-15);
            assert!((hd.get(idx(Symmetric), idx(Ground)).re - 2f64.sqrt() * 0.35).abs() < 1e-12);
        }
        let undriven = SystemParams::new(1.0, 1.0, 0.0).with_cutoff(cutoff);
        assert_eq!(build_hl(&undriven).unwrap().frobenius_norm(), 0.0);
    }

    #[test]
    fn hamiltonians_are_hermitian() {
        let mut p = SystemParams::new(4.2, 0.3, 1.1).with_cutoff(5).with_phi_z(2.3);
        p.delta_a = 0.9;
        p.delta_c = -2.0;
        for h in [build_h0(&p), build_hi(&p), build_hl(&p)] {
            assert!(h.unwrap().hermiticity_error() < 1e-14);
        }
    }

    #[test]
    fn excitation_number_conserved_without_drive() {
        let mut p = SystemParams::new(2.5, 1.0, 0.8).with_cutoff(4).with_phi_z(0.9);
        p.delta_a = 0.4;
        p.delta_c = 1.5;
        let n_exc = excitation_number(&p).unwrap();
        let h = &build_h0(&p).unwrap() + &build_hi(&p).unwrap();
        assert!(Operator::commutator(&h, &n_exc).frobenius_norm() < 1e-12);
        let drive = build_hl(&p).unwrap();
        assert!(Operator::commutator(&drive, &n_exc).frobenius_norm() > 0.1);
    }

    #[test]
    fn validation_rejects_bad_parameters() {
        let good = SystemParams::default();
        assert!(good.validate().is_ok());
        for bad in [
            SystemParams { g: -1.0, ..good },
            SystemParams {
                gamma: f64::NAN,
                ..good
            },
            SystemParams { phi_z: 7.0, ..good },
            SystemParams { n_atoms: 3, ..good },
            SystemParams { fock_cutoff: 0, ..good },
            SystemParams { kappa: 0.0, ..good },
        ] {
            assert!(bad.validate().is_err(), "{bad:?}");
        }
        assert_eq!(good.with_phi_z(TAU + 0.5).phi_z, 0.5);
        assert!(good.with_phi_z(-1e-300).phi_z < TAU);
    }
}
