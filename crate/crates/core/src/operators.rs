//! Dense complex operators on composite qubit ⊗ Fock spaces.
//!
//! Basis conventions are fixed once here and relied upon everywhere:
//!
//! * a qubit is ordered `{|g⟩, |e⟩}` (index 0 is the ground state),
//! * a truncated Fock space is ordered `{|0⟩, …, |cutoff⟩}`,
//! * composite spaces are ordered `atom 1 ⊗ atom 2 ⊗ cavity`, with the last
//!   factor varying fastest (standard Kronecker ordering).

use std::ops::{Add, Mul, Sub};

use faer::{c64, Mat, MatRef, Side};

use crate::error::{Error, Result};

const ZERO: c64 = c64 { re: 0.0, im: 0.0 };
const ONE: c64 = c64 { re: 1.0, im: 0.0 };

/// Complex square matrix tagged with the subsystem dimensions it acts on.
#[derive(Debug, Clone)]
pub struct Operator {
    dims: Vec<usize>,
    data: Mat<c64>,
}

/// Complex vector tagged with the subsystem dimensions of its space.
#[derive(Debug, Clone)]
pub struct StateVector {
    dims: Vec<usize>,
    data: Vec<c64>,
}

/// Single-qubit spin operators `S⁺ = |e⟩⟨g|`, `S⁻ = (S⁺)†`, `Sᶻ = (|e⟩⟨e| − |g⟩⟨g|)/2`.
#[derive(Debug, Clone)]
pub struct SpinOps {
    pub raising: Operator,
    pub lowering: Operator,
    pub z: Operator,
}

fn check_dims(dims: &[usize]) -> Result<usize> {
    if dims.is_empty() {
        return Err(Error::invalid("dimension list is empty"));
    }
    if let Some(&bad) = dims.iter().find(|&&d| d < 2) {
        return Err(Error::invalid(format!(
            "subsystem dimension {bad} is below 2 in {dims:?}"
        )));
    }
    Ok(dims.iter().product())
}

impl Operator {
    pub fn new(dims: Vec<usize>, data: Mat<c64>) -> Result<Self> {
        let side = check_dims(&dims)?;
        if data.nrows() != side || data.ncols() != side {
            return Err(Error::invalid(format!(
                "matrix is {}x{}, dims {dims:?} require {side}x{side}",
                data.nrows(),
                data.ncols()
            )));
        }
        Ok(Self { dims, data })
    }

    pub fn from_fn(dims: Vec<usize>, f: impl FnMut(usize, usize) -> c64) -> Result<Self> {
        let side = check_dims(&dims)?;
        Self::new(dims, Mat::from_fn(side, side, f))
    }

    pub fn zeros(dims: &[usize]) -> Result<Self> {
        Self::from_fn(dims.to_vec(), |_, _| ZERO)
    }

    pub fn identity(dims: &[usize]) -> Result<Self> {
        Self::from_fn(dims.to_vec(), |i, j| if i == j { ONE } else { ZERO })
    }

    /// Outer product `|ψ⟩⟨ψ|`.
    pub fn projector(state: &StateVector) -> Self {
        let v = &state.data;
        Self {
            dims: state.dims.clone(),
            data: Mat::from_fn(v.len(), v.len(), |i, j| v[i] * v[j].conj()),
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Side length of the matrix, i.e. the product of `dims`.
    pub fn side(&self) -> usize {
        self.data.nrows()
    }

    pub fn data(&self) -> MatRef<'_, c64> {
        self.data.as_ref()
    }

    pub fn get(&self, row: usize, col: usize) -> c64 {
        self.data[(row, col)]
    }

    pub fn dagger(&self) -> Self {
        Self {
            dims: self.dims.clone(),
            data: self.data.adjoint().to_owned(),
        }
    }

    pub fn scale(&self, factor: impl Into<c64>) -> Self {
        let factor = factor.into();
        Self {
            dims: self.dims.clone(),
            data: Mat::from_fn(self.side(), self.side(), |i, j| factor * self.data[(i, j)]),
        }
    }

    pub fn trace(&self) -> c64 {
        (0..self.side()).map(|i| self.data[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.norm_l2()
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        assert_eq!(self.dims, other.dims, "operator dims differ");
        let n = self.side();
        let mut worst = 0.0f64;
        for j in 0..n {
            for i in 0..n {
                worst = worst.max((self.data[(i, j)] - other.data[(i, j)]).norm());
            }
        }
        worst
    }

    pub fn hermiticity_error(&self) -> f64 {
        self.max_abs_diff(&self.dagger())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_error() <= tol
    }

    /// `[a, b] = ab − ba`.
    pub fn commutator(a: &Operator, b: &Operator) -> Operator {
        &(a * b) - &(b * a)
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if self.dims != state.dims {
            return Err(Error::DimensionMismatch {
                expected: self.dims.clone(),
                found: state.dims.clone(),
            });
        }
        let n = self.side();
        let data = (0..n)
            .map(|i| (0..n).map(|j| self.data[(i, j)] * state.data[j]).sum())
            .collect();
        Ok(StateVector {
            dims: self.dims.clone(),
            data,
        })
    }

    /// Eigenvalues in nondecreasing order, treating `self` as Hermitian
    /// (only the lower triangle is read).
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        self.data
            .self_adjoint_eigenvalues(Side::Lower)
            .expect("self-adjoint eigensolver did not converge")
    }

    /// Iterator over the structurally nonzero entries `(row, col, value)`.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, c64)> + '_ {
        let n = self.side();
        (0..n).flat_map(move |j| {
            (0..n).filter_map(move |i| {
                let v = self.data[(i, j)];
                (v != ZERO).then_some((i, j, v))
            })
        })
    }
}

impl Add for &Operator {
    type Output = Operator;

    fn add(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dims, rhs.dims, "operator dims differ");
        Operator {
            dims: self.dims.clone(),
            data: &self.data + &rhs.data,
        }
    }
}

impl Sub for &Operator {
    type Output = Operator;

    fn sub(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dims, rhs.dims, "operator dims differ");
        Operator {
            dims: self.dims.clone(),
            data: &self.data - &rhs.data,
        }
    }
}

impl Mul for &Operator {
    type Output = Operator;

    fn mul(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dims, rhs.dims, "operator dims differ");
        Operator {
            dims: self.dims.clone(),
            data: &self.data * &rhs.data,
        }
    }
}

impl StateVector {
    pub fn new(dims: Vec<usize>, data: Vec<c64>) -> Result<Self> {
        let len = check_dims(&dims)?;
        if data.len() != len {
            return Err(Error::invalid(format!(
                "vector has length {}, dims {dims:?} require {len}",
                data.len()
            )));
        }
        Ok(Self { dims, data })
    }

    /// Product basis ket with one level index per subsystem.
    pub fn basis(dims: &[usize], levels: &[usize]) -> Result<Self> {
        let len = check_dims(dims)?;
        if levels.len() != dims.len() {
            return Err(Error::DimensionMismatch {
                expected: dims.to_vec(),
                found: levels.to_vec(),
            });
        }
        let mut index = 0;
        for (&level, &dim) in levels.iter().zip(dims) {
            if level >= dim {
                return Err(Error::invalid(format!(
                    "level {level} outside subsystem of dimension {dim}"
                )));
            }
            index = index * dim + level;
        }
        let mut data = vec![ZERO; len];
        data[index] = ONE;
        Ok(Self {
            dims: dims.to_vec(),
            data,
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn data(&self) -> &[c64] {
        &self.data
    }

    pub fn kron(&self, other: &StateVector) -> StateVector {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        let data = self
            .data
            .iter()
            .flat_map(|&a| other.data.iter().map(move |&b| a * b))
            .collect();
        StateVector { dims, data }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> c64 {
        assert_eq!(self.dims, other.dims, "state dims differ");
        self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, factor: impl Into<c64>) -> StateVector {
        let factor = factor.into();
        StateVector {
            dims: self.dims.clone(),
            data: self.data.iter().map(|&z| factor * z).collect(),
        }
    }

    pub fn add(&self, other: &StateVector) -> StateVector {
        assert_eq!(self.dims, other.dims, "state dims differ");
        StateVector {
            dims: self.dims.clone(),
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }
}

/// Truncated bosonic annihilation operator on `{|0⟩, …, |cutoff⟩}`.
pub fn annihilation(cutoff: usize) -> Result<Operator> {
    if cutoff < 1 {
        return Err(Error::invalid("Fock cutoff must be at least 1"));
    }
    Operator::from_fn(vec![cutoff + 1], |i, j| {
        if j == i + 1 {
            c64::new((j as f64).sqrt(), 0.0)
        } else {
            ZERO
        }
    })
}

pub fn spin_ops() -> SpinOps {
    let raising =
        Operator::from_fn(vec![2], |i, j| if i == 1 && j == 0 { ONE } else { ZERO }).expect("qubit dims are valid");
    let lowering = raising.dagger();
    let z = Operator::from_fn(vec![2], |i, j| match (i, j) {
        (0, 0) => c64::new(-0.5, 0.0),
        (1, 1) => c64::new(0.5, 0.0),
        _ => ZERO,
    })
    .expect("qubit dims are valid");
    SpinOps { raising, lowering, z }
}

/// Kronecker product; the result acts on `concat(a.dims, b.dims)`.
pub fn kron(a: &Operator, b: &Operator) -> Operator {
    let mut dims = a.dims.clone();
    dims.extend_from_slice(&b.dims);
    Operator {
        dims,
        data: a.data.kron(&b.data),
    }
}

/// Lift a single-subsystem operator to the full space, acting as the
/// identity on every other factor.
pub fn embed(op: &Operator, site: usize, dims: &[usize]) -> Result<Operator> {
    check_dims(dims)?;
    if site >= dims.len() {
        return Err(Error::IndexOutOfRange {
            index: site,
            len: dims.len(),
        });
    }
    if op.dims != [dims[site]] {
        return Err(Error::DimensionMismatch {
            expected: vec![dims[site]],
            found: op.dims.clone(),
        });
    }
    let factor = |k: usize| {
        if k == site {
            op.clone()
        } else {
            Operator::identity(&[dims[k]]).expect("checked above")
        }
    };
    Ok((1..dims.len()).fold(factor(0), |acc, k| kron(&acc, &factor(k))))
}

/// `Tr(ρ · op)`, evaluated in O(d²) without forming the product.
pub fn expectation(rho: &Operator, op: &Operator) -> Result<c64> {
    if rho.dims != op.dims {
        return Err(Error::DimensionMismatch {
            expected: rho.dims.clone(),
            found: op.dims.clone(),
        });
    }
    let n = rho.side();
    let mut acc = ZERO;
    for j in 0..n {
        for i in 0..n {
            acc += rho.data[(i, j)] * op.data[(j, i)];
        }
    }
    Ok(acc)
}

/// Trace distance `½‖a − b‖₁` between two Hermitian operators.
pub fn trace_distance(a: &Operator, b: &Operator) -> f64 {
    0.5 * (a - b).hermitian_eigenvalues().iter().map(|l| l.abs()).sum::<f64>()
}
