use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::SampleError;
use crate::graph::Graph;
use crate::qubo::{BitVector, QuboMatrix};
use crate::seed::derive_seed;

/// Simulated-annealing parameters. `None` fields are derived from the
/// instance: `t_hot = max |Q_ij|`, `t_cold = 0.01 * min nonzero |Q_ij|`,
/// `sweeps` from [`default_sweeps`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub num_samples: usize,
    pub sweeps: Option<usize>,
    pub t_hot: Option<f64>,
    pub t_cold: Option<f64>,
    pub seed: u64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            num_samples: 1000,
            sweeps: None,
            t_hot: None,
            t_cold: None,
            seed: 0,
        }
    }
}

/// Default sweep budget for an instance with `active` coupled qubits.
pub fn default_sweeps(active: usize) -> usize {
    (4 * active).clamp(64, 1024)
}

impl SamplerConfig {
    fn resolve(&self, q: &QuboMatrix, active: usize) -> Result<(usize, f64, f64), SampleError> {
        if self.num_samples == 0 {
            return Err(SampleError::Config("num_samples must be positive".into()));
        }
        let sweeps = self.sweeps.unwrap_or_else(|| default_sweeps(active));
        if sweeps == 0 {
            return Err(SampleError::Config("sweeps must be positive".into()));
        }
        let max = q.max_abs();
        let min = q.min_abs_nonzero().unwrap_or(1.0);
        let hot = self.t_hot.unwrap_or(if max > 0.0 { max } else { 1.0 });
        let cold = self.t_cold.unwrap_or(1e-2 * min);
        if !(hot > cold && cold > 0.0) {
            return Err(SampleError::Config(format!(
                "temperatures must satisfy t_hot > t_cold > 0 (got {hot}, {cold})"
            )));
        }
        Ok((sweeps, hot, cold))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub bits: BitVector,
    pub energy: f64,
    pub multiplicity: usize,
}

/// Distinct samples, sorted by energy then bits, with multiplicities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    pub records: Vec<SampleRecord>,
    pub total: usize,
}

impl SampleSet {
    /// Aggregates raw `(bits, energy)` samples into canonical form.
    pub fn from_samples(mut samples: Vec<(BitVector, f64)>) -> Self {
        let total = samples.len();
        samples.sort_by(|a, b| a.1.total_cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        let mut records: Vec<SampleRecord> = Vec::new();
        for (bits, energy) in samples {
            match records.last_mut() {
                Some(last) if last.bits == bits => last.multiplicity += 1,
                _ => records.push(SampleRecord {
                    bits,
                    energy,
                    multiplicity: 1,
                }),
            }
        }
        SampleSet { records, total }
    }

    /// Merges several sample sets into one canonical set.
    pub fn merge(sets: impl IntoIterator<Item = SampleSet>) -> Self {
        let expanded = sets
            .into_iter()
            .flat_map(|s| s.records)
            .flat_map(|r| std::iter::repeat_n((r.bits, r.energy), r.multiplicity))
            .collect();
        SampleSet::from_samples(expanded)
    }

    /// Re-maps every sample through `f`, recomputing energies and merging
    /// samples that coincide afterwards.
    pub fn map_bits(&self, mut f: impl FnMut(&BitVector) -> (BitVector, f64)) -> SampleSet {
        let expanded = self
            .records
            .iter()
            .flat_map(|r| {
                let mapped = f(&r.bits);
                std::iter::repeat_n(mapped, r.multiplicity)
            })
            .collect();
        SampleSet::from_samples(expanded)
    }

    pub fn best(&self) -> Option<&SampleRecord> {
        self.records.first()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sample set serialization cannot fail")
    }
}

/// Compact view of a QUBO restricted to qubits that carry a term.
struct Problem {
    active: Vec<usize>,
    linear: Vec<f64>,
    offsets: Vec<usize>,
    nbr: Vec<u32>,
    coupling: Vec<f64>,
}

impl Problem {
    fn new(q: &QuboMatrix, gp: &Graph) -> Result<Self, SampleError> {
        let mut local = vec![usize::MAX; q.n()];
        let mut active = Vec::new();
        for ((i, j), _) in q.iter() {
            if i != j && !gp.has_edge(i, j) {
                return Err(SampleError::MissingCoupler(i, j));
            }
            for v in [i, j] {
                if local[v] == usize::MAX {
                    local[v] = 0;
                    active.push(v);
                }
            }
        }
        active.sort_unstable();
        for (k, &v) in active.iter().enumerate() {
            local[v] = k;
        }
        let m = active.len();
        let mut linear = vec![0.0; m];
        let mut lists: Vec<Vec<(u32, f64)>> = vec![Vec::new(); m];
        for ((i, j), v) in q.iter() {
            let (a, b) = (local[i], local[j]);
            if a == b {
                linear[a] += v;
            } else {
                lists[a].push((b as u32, v));
                lists[b].push((a as u32, v));
            }
        }
        let mut offsets = Vec::with_capacity(m + 1);
        let mut nbr = Vec::new();
        let mut coupling = Vec::new();
        offsets.push(0);
        for list in lists {
            for (b, v) in list {
                nbr.push(b);
                coupling.push(v);
            }
            offsets.push(nbr.len());
        }
        Ok(Problem {
            active,
            linear,
            offsets,
            nbr,
            coupling,
        })
    }

    fn anneal(&self, betas: &[f64], rng: &mut ChaCha8Rng) -> Vec<u8> {
        let m = self.active.len();
        let mut x: Vec<u8> = (0..m).map(|_| rng.gen::<bool>() as u8).collect();
        // field[i] = energy change from setting x_i = 1 given the others.
        let mut field = self.linear.clone();
        for i in (0..m).filter(|&i| x[i] == 1) {
            for k in self.offsets[i]..self.offsets[i + 1] {
                field[self.nbr[k] as usize] += self.coupling[k];
            }
        }
        for &beta in betas {
            for i in 0..m {
                let delta = if x[i] == 0 { field[i] } else { -field[i] };
                if delta <= 0.0 || rng.gen::<f64>() < (-delta * beta).exp() {
                    let sign = if x[i] == 0 { 1.0 } else { -1.0 };
                    x[i] ^= 1;
                    for k in self.offsets[i]..self.offsets[i + 1] {
                        field[self.nbr[k] as usize] += sign * self.coupling[k];
                    }
                }
            }
        }
        x
    }
}

/// Runs `num_samples` independent single-flip Metropolis anneals on `q`,
/// whose couplings must all be edges of `gp`. Each run starts from uniform
/// random bits and sweeps a geometric schedule from `t_hot` to `t_cold`.
/// Qubits with no term stay 0. Output is identical for a given seed
/// regardless of thread count.
pub fn sample(q: &QuboMatrix, gp: &Graph, cfg: &SamplerConfig) -> Result<SampleSet, SampleError> {
    if q.n() != gp.n() {
        return Err(SampleError::DimensionMismatch {
            qubo: q.n(),
            graph: gp.n(),
        });
    }
    let problem = Problem::new(q, gp)?;
    let (sweeps, hot, cold) = cfg.resolve(q, problem.active.len())?;
    let betas: Vec<f64> = (0..sweeps)
        .map(|s| {
            let frac = if sweeps == 1 { 1.0 } else { s as f64 / (sweeps - 1) as f64 };
            1.0 / (hot * (cold / hot).powf(frac))
        })
        .collect();
    let samples: Vec<(BitVector, f64)> = (0..cfg.num_samples)
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, &[s as u64]));
            let local = problem.anneal(&betas, &mut rng);
            let mut bits = BitVector::zeros(q.n());
            for (k, &v) in problem.active.iter().enumerate() {
                bits.set(v, local[k] == 1);
            }
            let energy = q.energy(&bits).expect("dimension checked above");
            (bits, energy)
        })
        .collect();
    Ok(SampleSet::from_samples(samples))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::chimera;

    #[test]
    fn separable_problem_always_solved() {
        let gp = Graph::edgeless(6).unwrap();
        let mut q = QuboMatrix::new(6);
        for i in 0..6 {
            q.add(i, i, -1.0 - i as f64).unwrap();
        }
        let cfg = SamplerConfig { num_samples: 200, sweeps: Some(16), ..Default::default() };
        let ss = sample(&q, &gp, &cfg).unwrap();
        assert_eq!(ss.records.len(), 1);
        assert_eq!(ss.records[0].bits, BitVector::ones(6));
        assert_eq!(ss.records[0].multiplicity, 200);
    }

    #[test]
    fn deterministic_for_seed() {
        let gp = chimera(1);
        let mut q = QuboMatrix::new(8);
        for (u, v) in gp.edges().iter().copied().take(6) {
            q.add(u, v, 1.0).unwrap();
            q.add(u, u, -0.7).unwrap();
        }
        let cfg = SamplerConfig { num_samples: 100, sweeps: Some(8), seed: 3, ..Default::default() };
        assert_eq!(sample(&q, &gp, &cfg).unwrap(), sample(&q, &gp, &cfg).unwrap());
    }

    #[test]
    fn rejects_foreign_couplers() {
        let gp = chimera(1);
        let mut q = QuboMatrix::new(8);
        q.add(0, 1, 1.0).unwrap();
        assert_eq!(
            sample(&q, &gp, &SamplerConfig::default()),
            Err(SampleError::MissingCoupler(0, 1))
        );
        assert!(matches!(
            sample(&QuboMatrix::new(3), &gp, &SamplerConfig::default()),
            Err(SampleError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rejects_bad_temperatures() {
        let gp = Graph::edgeless(1).unwrap();
        let mut q = QuboMatrix::new(1);
        q.add(0, 0, -1.0).unwrap();
        let cfg = SamplerConfig { t_hot: Some(0.1), t_cold: Some(0.2), ..Default::default() };
        assert!(matches!(sample(&q, &gp, &cfg), Err(SampleError::Config(_))));
    }

    #[test]
    fn merge_and_map() {
        let a = SampleSet::from_samples(vec![
            (BitVector::from_bits(&[1, 0]), -1.0),
            (BitVector::from_bits(&[0, 1]), -2.0),
            (BitVector::from_bits(&[1, 0]), -1.0),
        ]);
        assert_eq!(a.total, 3);
        assert_eq!(a.records[0].bits, BitVector::from_bits(&[0, 1]));
        assert_eq!(a.records[1].multiplicity, 2);
        let merged = SampleSet::merge([a.clone(), a.clone()]);
        assert_eq!(merged.total, 6);
        assert_eq!(merged.records.len(), 2);
        let collapsed = a.map_bits(|_| (BitVector::zeros(1), 0.0));
        assert_eq!(collapsed.records.len(), 1);
        assert_eq!(collapsed.records[0].multiplicity, 3);
    }
}
