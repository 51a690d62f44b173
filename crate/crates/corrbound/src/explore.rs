//! Seeded random generation, local perturbation, and counterexample search.
//!
//! Randomness comes from ChaCha8 (`rand_chacha`), seeded via
//! `SeedableRng::seed_from_u64`, so every operation here is a pure function
//! of its inputs and seed and reproduces bit-identically. Restart streams are
//! derived from the base seed with a SplitMix64 step.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::corr::{self, CorrelationMatrix, Exponent};
use crate::error::{Error, Result};
use crate::linalg::{self, SymMatrix};

/// Eigenvalue floor used by the PSD reprojection.
const PSD_FLOOR: f64 = 1e-10;

/// Objectives below this threshold do not count as found.
const FOUND_TOL: f64 = 1e-9;

/// Step-decay schedule: halve the scale after this many consecutive
/// non-improvements, never below the floor.
const STALL_LIMIT: u32 = 20;
const MIN_SCALE: f64 = 1e-4;

/// Configuration for the hill-climbing searches.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub n: usize,
    /// Exponent for the power-mean bound; ignored by the negative-r1 task.
    pub p: Exponent,
    /// Proposals per restart.
    pub budget: u64,
    pub seed: u64,
    /// Initial perturbation step, in (0, 1).
    pub perturb_scale: f64,
    pub restarts: u32,
    /// Optional start matrix: restart 0 begins exactly here, later restarts
    /// at perturbations of it. Absent, every restart begins at a fresh
    /// random matrix.
    pub start: Option<CorrelationMatrix>,
}

impl SearchConfig {
    pub fn new(n: usize, p: Exponent) -> Self {
        SearchConfig {
            n,
            p,
            budget: 5000,
            seed: 42,
            perturb_scale: 0.05,
            restarts: 10,
            start: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::DimensionTooSmall { n: self.n });
        }
        if self.budget < 1 {
            return Err(Error::InvalidConfig {
                message: "budget must be at least 1".into(),
            });
        }
        if self.restarts < 1 {
            return Err(Error::InvalidConfig {
                message: "restarts must be at least 1".into(),
            });
        }
        if !(self.perturb_scale > 0.0 && self.perturb_scale < 1.0) {
            return Err(Error::InvalidConfig {
                message: format!(
                    "perturb_scale must lie in (0, 1), got {}",
                    self.perturb_scale
                ),
            });
        }
        if let Some(s) = &self.start {
            if s.n() != self.n {
                return Err(Error::InvalidConfig {
                    message: format!("start matrix is {}x{0}, config says n = {}", s.n(), self.n),
                });
            }
        }
        self.p.validated().map(|_| ())
    }
}

/// Outcome of a search run.
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub best_matrix: CorrelationMatrix,
    /// Violation margin of the best matrix; negative infinity when no
    /// proposal ever satisfied the task constraint.
    pub objective: f64,
    pub iterations_used: u64,
    pub seed: u64,
    pub found: bool,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive a child seed from a base seed and a stream index (SplitMix64 step).
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    splitmix64(seed.wrapping_add(stream.wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

fn restart_seed(seed: u64, restart: u32) -> u64 {
    derive_seed(seed, restart as u64)
}

/// Random correlation matrix by the Gram method: n unit-normalized standard
/// normal rows, returned as their Gram matrix with the diagonal forced to
/// exactly 1. Deterministic given (n, seed).
pub fn random_correlation(n: usize, seed: u64) -> Result<CorrelationMatrix> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n);
    for _ in 0..n {
        let mut row = vec![0.0; n];
        let mut attempts = 0;
        loop {
            for v in row.iter_mut() {
                *v = StandardNormal.sample(&mut rng);
            }
            let norm = row.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm >= 1e-12 {
                for v in row.iter_mut() {
                    *v /= norm;
                }
                break;
            }
            attempts += 1;
            if attempts >= 16 {
                return Err(Error::DegenerateRow { attempts });
            }
        }
        rows.push(row);
    }

    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        entries[i * n + i] = 1.0;
        for j in (i + 1)..n {
            let dot: f64 = rows[i].iter().zip(&rows[j]).map(|(a, b)| a * b).sum();
            let v = dot.clamp(-1.0, 1.0);
            entries[i * n + j] = v;
            entries[j * n + i] = v;
        }
    }
    CorrelationMatrix::validate(SymMatrix::from_flat(n, entries)?)
}

/// Perturb the off-diagonal entries with seeded uniform noise in
/// (-scale, scale), clip to [-1, 1], and reproject to a valid correlation
/// matrix: floor the eigenvalues at 1e-10, reassemble, renormalize the
/// diagonal. Deterministic given inputs.
pub fn perturb_correlation(r: &CorrelationMatrix, scale: f64, seed: u64) -> CorrelationMatrix {
    let n = r.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = r.matrix().clone();
    for i in 0..n {
        for j in (i + 1)..n {
            let noise: f64 = rng.random_range(-scale..=scale);
            let v = (m.get(i, j) + noise).clamp(-1.0, 1.0);
            m.set_pair(i, j, v);
        }
    }
    reproject_to_correlation(&m)
}

/// Nearest-correlation-style repair: eigenvalue floor plus diagonal
/// renormalization. Always yields a valid matrix for symmetric input with
/// entries in [-1, 1].
fn reproject_to_correlation(a: &SymMatrix) -> CorrelationMatrix {
    let n = a.n();
    let (vals, vecs) =
        linalg::eigen_decomposition(a).expect("Jacobi converges on real symmetric input");
    let floored: Vec<f64> = vals.iter().map(|l| l.max(PSD_FLOOR)).collect();

    // Reassemble V diag(floored) V^T.
    let mut rebuilt = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let mut acc = 0.0;
            for k in 0..n {
                acc += vecs[i * n + k] * floored[k] * vecs[j * n + k];
            }
            rebuilt[i * n + j] = acc;
            rebuilt[j * n + i] = acc;
        }
    }

    let inv_sqrt: Vec<f64> = (0..n).map(|i| 1.0 / rebuilt[i * n + i].sqrt()).collect();
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        entries[i * n + i] = 1.0;
        for j in (i + 1)..n {
            let v = (rebuilt[i * n + j] * inv_sqrt[i] * inv_sqrt[j]).clamp(-1.0, 1.0);
            entries[i * n + j] = v;
            entries[j * n + i] = v;
        }
    }
    let sym = SymMatrix::from_flat(n, entries).expect("dimensions preserved");
    CorrelationMatrix::validate(sym).expect("reprojection yields a valid correlation matrix")
}

/// Multi-restart hill climb over the given objective. Proposals that do not
/// improve decay the step geometrically; the best matrix across restarts wins.
fn climb<F>(cfg: &SearchConfig, objective: F) -> Result<SearchResult>
where
    F: Fn(&CorrelationMatrix) -> f64,
{
    cfg.validate()?;
    let mut best: Option<(CorrelationMatrix, f64)> = None;
    let mut evaluations: u64 = 0;

    for restart in 0..cfg.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(restart_seed(cfg.seed, restart));
        let mut current = match (&cfg.start, restart) {
            (Some(s), 0) => s.clone(),
            (Some(s), _) => perturb_correlation(s, cfg.perturb_scale, rng.random()),
            (None, _) => random_correlation(cfg.n, rng.random())?,
        };
        let mut current_obj = objective(&current);
        evaluations += 1;

        let mut scale = cfg.perturb_scale;
        let mut stall = 0u32;
        for _ in 0..cfg.budget {
            let candidate = perturb_correlation(&current, scale, rng.random());
            let candidate_obj = objective(&candidate);
            evaluations += 1;
            if candidate_obj > current_obj {
                current = candidate;
                current_obj = candidate_obj;
                stall = 0;
            } else {
                stall += 1;
                if stall >= STALL_LIMIT {
                    scale = (0.5 * scale).max(MIN_SCALE);
                    stall = 0;
                }
            }
        }

        if best.as_ref().is_none_or(|(_, obj)| current_obj > *obj) {
            best = Some((current, current_obj));
        }
    }

    let (best_matrix, objective_value) = best.expect("restarts >= 1");
    Ok(SearchResult {
        best_matrix,
        objective: objective_value,
        iterations_used: evaluations,
        seed: cfg.seed,
        found: objective_value > FOUND_TOL,
    })
}

/// Search for a violation of det R <= f(n, r_p). The objective is the
/// violation margin det R - f(n, r_p); `found` additionally demands that the
/// margin survives the independent recheck.
pub fn search_p_counterexample(cfg: &SearchConfig) -> Result<SearchResult> {
    let p = cfg.p;
    let objective = move |r: &CorrelationMatrix| {
        let rp = corr::r_p(r, p).expect("exponent validated");
        linalg::determinant(r.matrix()) - corr::f_bound(r.n(), rp)
    };
    let mut result = climb(cfg, objective)?;
    if result.found {
        result.found = recheck_p_violation(&result.best_matrix, p)?;
    }
    Ok(result)
}

/// Independent confirmation of a bound violation: the determinant computed
/// by LU and by eigenvalue product must both exceed f(n, r_p) by more than
/// 1e-9.
pub fn recheck_p_violation(r: &CorrelationMatrix, p: Exponent) -> Result<bool> {
    let rp = corr::r_p(r, p)?;
    let bound = corr::f_bound(r.n(), rp);
    let det_lu = linalg::determinant(r.matrix());
    let det_eig = r.spectrum(crate::linalg::SortOrder::Ascending)?.product();
    Ok(det_lu > bound + FOUND_TOL && det_eig > bound + FOUND_TOL)
}

/// Search for a matrix with r1 < 0 whose r2 bound is sharper than the r1
/// bound; the objective is f(n, r1) - f(n, r2), and proposals with r1 >= 0
/// are rejected outright.
pub fn search_improvement_with_negative_r1(cfg: &SearchConfig) -> Result<SearchResult> {
    let objective = |r: &CorrelationMatrix| {
        let stats = corr::off_diag_stats(r);
        if stats.r1 >= 0.0 {
            return f64::NEG_INFINITY;
        }
        corr::f_bound(r.n(), stats.r1) - corr::f_bound(r.n(), stats.r2)
    };
    climb(cfg, objective)
}
