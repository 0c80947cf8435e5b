use serde::{Deserialize, Serialize};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::DenseMatrix;
use crate::math::{exp, ln};
use crate::rearrange::SpectralProfile;

/// Parameters of the seeded generators. Every generated object is a pure
/// function of `(spec, index)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default)]
pub struct GeneratorSpec {
    pub seed: u64,
    pub min_atoms: usize,
    pub max_atoms: usize,
    /// Bounds of the log-uniform atom values.
    pub value_range: (f64, f64),
    /// Bounds of the log-uniform atom weights.
    pub weight_range: (f64, f64),
}

impl Default for GeneratorSpec {
    fn default() -> Self {
        GeneratorSpec {
            seed: 42,
            min_atoms: 1,
            max_atoms: 64,
            value_range: (1e-3, 1e3),
            weight_range: (1e-2, 1e2),
        }
    }
}

const PROFILE_SALT: u64 = 0x7072_6f66;
const MATRIX_SALT: u64 = 0x6d61_7472;
const SYMMETRIC_SALT: u64 = 0x7379_6d6d;

impl GeneratorSpec {
    pub fn with_seed(seed: u64) -> Self {
        GeneratorSpec {
            seed,
            ..Self::default()
        }
    }

    /// Independent stream for `(seed, salt, index)`.
    pub fn rng(&self, index: u64, salt: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        rng.set_stream(index);
        rng
    }
}

fn log_uniform(rng: &mut impl Rng, (lo, hi): (f64, f64)) -> f64 {
    if lo == hi {
        return lo;
    }
    exp(rng.gen_range(ln(lo)..ln(hi))).clamp(lo, hi)
}

pub fn random_profile(spec: &GeneratorSpec, index: u64) -> SpectralProfile {
    let mut rng = spec.rng(index, PROFILE_SALT);
    let n = rng.gen_range(spec.min_atoms..=spec.max_atoms.max(spec.min_atoms));
    let atoms: alloc::vec::Vec<(f64, f64)> = (0..n)
        .map(|_| {
            let v = log_uniform(&mut rng, spec.value_range);
            (v, log_uniform(&mut rng, spec.weight_range))
        })
        .collect();
    SpectralProfile::new(atoms).expect("generator bounds are positive and finite")
}

/// `rows × cols` matrix with entries uniform in `[-1, 1]`.
pub fn random_matrix(spec: &GeneratorSpec, index: u64, rows: usize, cols: usize) -> DenseMatrix {
    let mut rng = spec.rng(index, MATRIX_SALT);
    let entries = (0..rows * cols).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    DenseMatrix::new(rows, cols, entries).expect("positive dimensions")
}

/// Symmetric `n × n` matrix with entries uniform in `[-1, 1]`.
pub fn random_symmetric_matrix(spec: &GeneratorSpec, index: u64, n: usize) -> DenseMatrix {
    let mut rng = spec.rng(index, SYMMETRIC_SALT);
    let mut entries = alloc::vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let v: f64 = rng.gen_range(-1.0..=1.0);
            entries[i * n + j] = v;
            entries[j * n + i] = v;
        }
    }
    DenseMatrix::new(n, n, entries).expect("positive dimensions")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let spec = GeneratorSpec::default();
        assert_eq!(random_profile(&spec, 7), random_profile(&spec, 7));
        assert_ne!(random_profile(&spec, 7), random_profile(&spec, 8));
        assert_ne!(random_profile(&spec, 7), random_profile(&GeneratorSpec::with_seed(1), 7));
        assert_eq!(random_matrix(&spec, 3, 4, 5), random_matrix(&spec, 3, 4, 5));
    }

    #[test]
    fn within_bounds() {
        let spec = GeneratorSpec::default();
        for i in 0..200 {
            let p = random_profile(&spec, i);
            assert!(!p.is_empty() && p.len() <= 64);
            for a in p.atoms() {
                assert!((1e-3..=1e3).contains(&a.value));
                assert!(a.weight >= 1e-2);
            }
        }
    }

    #[test]
    fn symmetric() {
        let m = random_symmetric_matrix(&GeneratorSpec::default(), 0, 5);
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(m.get(i, j), m.get(j, i));
            }
        }
    }
}
