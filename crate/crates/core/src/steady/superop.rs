use faer::c64;
use faer::sparse::{SparseColMat, Triplet};
use faer::Mat;

use crate::error::{Error, Result};
use crate::operators::Operator;

/// Vectorized Lindblad generator acting on column-major `vec(ρ)`.
///
/// The convention is `vec(AρB) = (Bᵀ ⊗ A) vec(ρ)`, so the density-matrix
/// entry `ρᵢⱼ` sits at index `i + j·d`.
#[derive(Debug, Clone)]
pub struct Superoperator {
    dims: Vec<usize>,
    dim: usize,
    matrix: SparseColMat<usize, c64>,
}

impl Superoperator {
    /// Builds `L ρ = −i[H, ρ] + Σₖ (CₖρCₖ† − ½{Cₖ†Cₖ, ρ})`.
    pub fn from_lindblad(hamiltonian: &Operator, collapse: &[Operator]) -> Result<Self> {
        let dims = hamiltonian.dims().to_vec();
        if let Some(c) = collapse.iter().find(|c| c.dims() != dims) {
            return Err(Error::DimensionMismatch {
                expected: dims,
                found: c.dims().to_vec(),
            });
        }
        let d = hamiltonian.side();
        let minus_i = c64::new(0.0, -1.0);

        // L ρ = Heff ρ + ρ Heff† + Σ C ρ C†,  Heff = −iH − ½ Σ C†C
        let mut heff = hamiltonian.scale(minus_i);
        for c in collapse {
            heff = &heff - &(&c.dagger() * c).scale(0.5);
        }
        let heff_nz: Vec<_> = heff.nonzeros().collect();

        let mut triplets = Vec::new();
        for j in 0..d {
            // (I ⊗ Heff): ρᵢⱼ ← Heff_ik ρ_kj
            for &(i, k, v) in &heff_nz {
                triplets.push(Triplet::new(i + j * d, k + j * d, v));
            }
        }
        for &(j, l, v) in &heff_nz {
            // (conj(Heff) ⊗ I): ρᵢⱼ ← ρ_il conj(Heff_jl)
            for i in 0..d {
                triplets.push(Triplet::new(i + j * d, i + l * d, v.conj()));
            }
        }
        for c in collapse {
            let nz: Vec<_> = c.nonzeros().collect();
            // (conj(C) ⊗ C): ρᵢⱼ ← C_ik ρ_kl conj(C_jl)
            for &(j, l, cjl) in &nz {
                for &(i, k, cik) in &nz {
                    triplets.push(Triplet::new(i + j * d, k + l * d, cik * cjl.conj()));
                }
            }
        }
        let matrix = SparseColMat::try_new_from_triplets(d * d, d * d, &triplets)
            .map_err(|e| Error::invalid(format!("superoperator assembly failed: {e:?}")))?;
        Ok(Self { dims, dim: d, matrix })
    }

    /// Side length `d` of the density matrices this generator acts on.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn matrix(&self) -> &SparseColMat<usize, c64> {
        &self.matrix
    }

    pub fn nnz(&self) -> usize {
        self.matrix.compute_nnz()
    }

    /// `out = L · v` on flattened vectors.
    pub fn apply_vec(&self, v: &[c64], out: &mut [c64]) {
        let n = self.dim * self.dim;
        assert_eq!(v.len(), n);
        assert_eq!(out.len(), n);
        out.fill(c64::new(0.0, 0.0));
        let m = self.matrix.as_ref();
        let col_ptr = m.col_ptr();
        let row_idx = m.row_idx();
        let values = m.val();
        for col in 0..n {
            let x = v[col];
            if x == c64::new(0.0, 0.0) {
                continue;
            }
            for p in col_ptr[col]..col_ptr[col + 1] {
                out[row_idx[p]] += values[p] * x;
            }
        }
    }

    /// `unvec(L · vec(ρ))`.
    pub fn apply(&self, rho: &Operator) -> Result<Operator> {
        if rho.dims() != self.dims {
            return Err(Error::DimensionMismatch {
                expected: self.dims.clone(),
                found: rho.dims().to_vec(),
            });
        }
        let v = vectorize(rho);
        let mut out = vec![c64::new(0.0, 0.0); v.len()];
        self.apply_vec(&v, &mut out);
        Ok(unvectorize(&self.dims, &out))
    }

    /// Dense copy of the `d² × d²` matrix; meant for small systems only.
    pub fn to_dense(&self) -> Mat<c64> {
        self.matrix.to_dense()
    }
}

/// Column-major flattening of a density matrix.
pub fn vectorize(rho: &Operator) -> Vec<c64> {
    let d = rho.side();
    let data = rho.data();
    (0..d * d).map(|k| data[(k % d, k / d)]).collect()
}

pub fn unvectorize(dims: &[usize], v: &[c64]) -> Operator {
    let d: usize = dims.iter().product();
    assert_eq!(v.len(), d * d);
    Operator::from_fn(dims.to_vec(), |i, j| v[i + j * d]).expect("dims come from a valid operator")
}
