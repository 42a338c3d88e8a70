//! Trace-constrained linear solve for the null vector of a Liouvillian.
//!
//! A Hermiticity-preserving generator maps `ρ = X + iY` (X symmetric,
//! Y antisymmetric) to another Hermitian matrix, so the stationarity
//! condition is solved over the `d²` real coordinates
//!
//! ```text
//! u[i + j·d] = Re ρᵢⱼ   (i ≤ j)
//! u[j + i·d] = Im ρᵢⱼ   (i < j)
//! ```
//!
//! with one diagonal equation replaced by `Tr ρ = 1`. The left null vector of
//! any trace-preserving generator is the trace functional, which is nonzero
//! only on diagonal rows; replacing a diagonal row therefore gives a regular
//! system exactly when the steady state is unique.

use std::collections::HashMap;
use std::sync::{Mutex, Once, OnceLock};

use faer::linalg::solvers::Solve;
use faer::sparse::linalg::solvers::{Lu, SymbolicLu};
use faer::sparse::{SparseColMat, Triplet};
use faer::{c64, Mat, Par};

use super::superop::Superoperator;
use crate::error::{Error, Result};
use crate::operators::{trace_distance, Operator};

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    /// Re-solve with a different replaced row and compare.
    pub check_uniqueness: bool,
    /// Trace distance above which the two constrained solves disagree.
    pub uniqueness_tol: f64,
    /// Largest acceptable `‖L vec(ρ)‖₂`.
    pub residual_tol: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            check_uniqueness: true,
            uniqueness_tol: 1e-8,
            residual_tol: 1e-9,
        }
    }
}

#[derive(Debug)]
pub(crate) struct Solved {
    pub rho: Operator,
    pub residual: f64,
}

/// Sequential faer kernels keep every solve bit-reproducible regardless of
/// how many sweep workers run concurrently.
fn force_sequential() {
    static ONCE: Once = Once::new();
    ONCE.call_once(|| faer::set_global_parallelism(Par::Seq));
}

struct PatternKey {
    col_ptr: Vec<usize>,
    row_idx: Vec<usize>,
}

type SymbolicCache = Mutex<HashMap<u64, Vec<(PatternKey, SymbolicLu<usize>)>>>;

const CACHE_LIMIT: usize = 64;

fn symbolic_for(matrix: &SparseColMat<usize, f64>) -> Result<SymbolicLu<usize>> {
    use std::hash::{Hash, Hasher};

    static CACHE: OnceLock<SymbolicCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));

    let sym = matrix.symbolic();
    let (col_ptr, row_idx) = (sym.col_ptr(), sym.row_idx());
    let mut hasher = std::collections::hash_map::DefaultHasher::new();
    sym.nrows().hash(&mut hasher);
    col_ptr.hash(&mut hasher);
    row_idx.hash(&mut hasher);
    let key = hasher.finish();

    {
        let guard = cache.lock().expect("symbolic cache poisoned");
        if let Some(bucket) = guard.get(&key) {
            for (pattern, symbolic) in bucket {
                if pattern.col_ptr == col_ptr && pattern.row_idx == row_idx {
                    return Ok(symbolic.clone());
                }
            }
        }
    }

    let symbolic =
        SymbolicLu::try_new(sym).map_err(|e| Error::SingularSystem(format!("symbolic factorization failed: {e:?}")))?;
    let mut guard = cache.lock().expect("symbolic cache poisoned");
    if guard.len() >= CACHE_LIMIT {
        guard.clear();
    }
    guard.entry(key).or_default().push((
        PatternKey {
            col_ptr: col_ptr.to_vec(),
            row_idx: row_idx.to_vec(),
        },
        symbolic.clone(),
    ));
    Ok(symbolic)
}

/// Real-coordinate form of `L` restricted to Hermitian inputs and outputs.
struct RealSystem {
    d: usize,
    triplets: Vec<Triplet<usize, usize, f64>>,
}

impl RealSystem {
    fn coord(d: usize, i: usize, j: usize) -> usize {
        i + j * d
    }

    fn build(l: &Superoperator) -> Self {
        let d = l.dim();
        let m = l.matrix().as_ref();
        let (col_ptr, row_idx, values) = (m.col_ptr(), m.row_idx(), m.val());
        let mut triplets = Vec::with_capacity(2 * values.len());
        let i_unit = c64::new(0.0, 1.0);

        for q in 0..d * d {
            let (k, l_) = (q % d, q / d);
            for p in col_ptr[q]..col_ptr[q + 1] {
                let row = row_idx[p];
                let (i, j) = (row % d, row / d);
                if i > j {
                    continue;
                }
                let v = values[p];
                let mut push = |col: usize, c: c64| {
                    if c.re != 0.0 {
                        triplets.push(Triplet::new(Self::coord(d, i, j), col, c.re));
                    }
                    if i != j && c.im != 0.0 {
                        triplets.push(Triplet::new(Self::coord(d, j, i), col, c.im));
                    }
                };
                match k.cmp(&l_) {
                    std::cmp::Ordering::Equal => push(Self::coord(d, k, k), v),
                    std::cmp::Ordering::Less => {
                        push(Self::coord(d, k, l_), v);
                        push(Self::coord(d, l_, k), v * i_unit);
                    }
                    std::cmp::Ordering::Greater => {
                        push(Self::coord(d, l_, k), v);
                        push(Self::coord(d, k, l_), -v * i_unit);
                    }
                }
            }
        }
        Self { d, triplets }
    }

    /// Dense copy of one row of the unreplaced real system.
    fn row(&self, row: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.d * self.d];
        for t in self.triplets.iter().filter(|t| t.row == row) {
            out[t.col] += t.val;
        }
        out
    }

    fn trace_row(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.d * self.d];
        for k in 0..self.d {
            out[Self::coord(self.d, k, k)] = 1.0;
        }
        out
    }

    /// The system with `row` replaced by the trace functional.
    fn replaced(&self, row: usize) -> Result<SparseColMat<usize, f64>> {
        let n = self.d * self.d;
        let mut entries: Vec<_> = self.triplets.iter().filter(|t| t.row != row).copied().collect();
        entries.extend((0..self.d).map(|k| Triplet::new(row, Self::coord(self.d, k, k), 1.0)));
        SparseColMat::try_new_from_triplets(n, n, &entries)
            .map_err(|e| Error::SingularSystem(format!("assembly failed: {e:?}")))
    }

    fn to_density(&self, dims: &[usize], u: impl Fn(usize) -> f64) -> Operator {
        let d = self.d;
        Operator::from_fn(dims.to_vec(), |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Equal => c64::new(u(Self::coord(d, i, i)), 0.0),
            std::cmp::Ordering::Less => c64::new(u(Self::coord(d, i, j)), u(Self::coord(d, j, i))),
            std::cmp::Ordering::Greater => c64::new(u(Self::coord(d, j, i)), -u(Self::coord(d, i, j))),
        })
        .expect("dims come from the superoperator")
    }
}

fn dot(a: &[f64], b: impl Fn(usize) -> f64) -> f64 {
    a.iter().enumerate().map(|(i, x)| x * b(i)).sum()
}

fn residual_norm(l: &Superoperator, rho: &Operator) -> f64 {
    let v = super::superop::vectorize(rho);
    let mut out = vec![c64::new(0.0, 0.0); v.len()];
    l.apply_vec(&v, &mut out);
    out.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn solve(l: &Superoperator, options: &SolveOptions) -> Result<Solved> {
    force_sequential();
    let d = l.dim();
    let n = d * d;
    let system = RealSystem::build(l);
    let first_row = RealSystem::coord(d, 0, 0);
    let alt_row = RealSystem::coord(d, d - 1, d - 1);

    let matrix = system.replaced(first_row)?;
    let symbolic = symbolic_for(&matrix)?;
    let lu = Lu::try_new_with_symbolic(symbolic, matrix.as_ref())
        .map_err(|e| Error::SingularSystem(format!("numeric factorization failed: {e:?}")))?;

    // columns: e_first (the steady state) and e_alt (for the Woodbury update)
    let mut rhs = Mat::<f64>::zeros(n, 2);
    rhs[(first_row, 0)] = 1.0;
    rhs[(alt_row, 1)] = 1.0;
    let z = lu.solve(&rhs);
    if (0..n).any(|i| !z[(i, 0)].is_finite()) {
        return Err(Error::SingularSystem("non-finite solution".into()));
    }

    let rho = system.to_density(l.dims(), |i| z[(i, 0)]);
    let residual = residual_norm(l, &rho);
    if !(residual <= options.residual_tol) {
        return Err(Error::SingularSystem(format!(
            "residual {residual:e} exceeds {:e}",
            options.residual_tol
        )));
    }

    if options.check_uniqueness && alt_row != first_row {
        // M₂ = M₁ + e_first (A_first − t)ᵀ + e_alt (t − A_alt)ᵀ replaces the
        // alternative row instead; its solution of M₂ x = e_alt follows from
        // the existing factorization by Sherman–Morrison–Woodbury.
        let trace = system.trace_row();
        let a_first = system.row(first_row);
        let a_alt = system.row(alt_row);
        let v1: Vec<f64> = a_first.iter().zip(&trace).map(|(a, t)| a - t).collect();
        let v2: Vec<f64> = trace.iter().zip(&a_alt).map(|(t, a)| t - a).collect();
        let z_ref = &z;
        let zc = |c: usize| move |i: usize| z_ref[(i, c)];
        let k = [
            [1.0 + dot(&v1, zc(0)), dot(&v1, zc(1))],
            [dot(&v2, zc(0)), 1.0 + dot(&v2, zc(1))],
        ];
        let det = k[0][0] * k[1][1] - k[0][1] * k[1][0];
        if !det.is_finite() || det.abs() < 1e-12 {
            return Err(Error::NonUniqueSteadyState {
                distance: f64::INFINITY,
            });
        }
        let (b1, b2) = (dot(&v1, zc(1)), dot(&v2, zc(1)));
        let w1 = (k[1][1] * b1 - k[0][1] * b2) / det;
        let w2 = (k[0][0] * b2 - k[1][0] * b1) / det;
        let alt = system.to_density(l.dims(), |i| z[(i, 1)] - z[(i, 0)] * w1 - z[(i, 1)] * w2);

        let diff = &rho - &alt;
        // ‖X‖₁ ≤ √d ‖X‖_F avoids an eigendecomposition in the common case
        let bound = 0.5 * (d as f64).sqrt() * diff.frobenius_norm();
        let distance = if bound <= options.uniqueness_tol {
            bound
        } else {
            trace_distance(&rho, &alt)
        };
        if !(distance <= options.uniqueness_tol) {
            return Err(Error::NonUniqueSteadyState { distance });
        }
    }

    Ok(Solved { rho, residual })
}
