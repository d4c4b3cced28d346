//! Homogeneous sums Z = sum over a symmetric non-diagonal support of
//! q(v_1..v_d) X_{v_1}...X_{v_d}: variance, contractions, exact and Monte
//! Carlo fourth-moment diagnostics, spectral criteria for d = 2, and
//! universality sampling with non-Gaussian inputs.

use std::collections::{BTreeMap, HashMap};

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::WeightedHypergraph;
use crate::rng::{derive_seed, SplitMix64};
use crate::spectral::{symmetric_eigenvalues, DENSE_EIGEN_CAP};

/// Default cap on contraction accumulations.
pub const CONTRACTION_CAP: usize = 10_000_000;
/// Default cap on Wick quadruple enumeration.
pub const WICK_CAP: usize = 10_000_000;
/// Reporting threshold under which a diagnostic counts as "small".
pub const CRITERION_THRESHOLD: f64 = 0.05;

const SAMPLE_CHUNK: usize = 8192;

fn factorial(d: usize) -> f64 {
    (1..=d).map(|i| i as f64).product()
}

/// Symmetric coefficient map on sorted non-diagonal d-tuples.
///
/// A key (v_1 < ... < v_d) stands for all d! orderings with the same
/// coefficient, so the full symmetric kernel never has to be materialized.
#[derive(Debug, Clone, PartialEq)]
pub struct HomogeneousSum {
    d: usize,
    n: usize,
    /// Sorted keys with nonzero coefficients, sorted lexicographically.
    terms: Vec<(Vec<u32>, f64)>,
}

impl HomogeneousSum {
    /// Build from per-key coefficients (each key an unordered tuple).
    pub fn from_terms(d: usize, n: usize, terms: &[(Vec<u32>, f64)]) -> Result<Self> {
        if d < 2 {
            return Err(Error::WrongOrder(d));
        }
        if n == 0 {
            return Err(Error::InvalidInput("empty vertex set".into()));
        }
        let mut canon: Vec<(Vec<u32>, f64)> = Vec::with_capacity(terms.len());
        for (verts, q) in terms {
            if verts.len() != d {
                return Err(Error::InvalidInput(format!(
                    "tuple {verts:?} has arity {}, expected {d}",
                    verts.len()
                )));
            }
            let mut v = verts.clone();
            v.sort_unstable();
            if v.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::DiagonalSupport(v));
            }
            for &x in &v {
                if x as usize >= n {
                    return Err(Error::LabelOutOfRange { label: x, n });
                }
            }
            if *q != 0.0 {
                canon.push((v, *q));
            }
        }
        canon.sort_by(|a, b| a.0.cmp(&b.0));
        for w in canon.windows(2) {
            if w[0].0 == w[1].0 && w[0].1 != w[1].1 {
                return Err(Error::NonSymmetricCoefficients(
                    w[0].0.clone(),
                    w[0].1,
                    w[1].1,
                ));
            }
        }
        canon.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1);
        // Equal keys with equal values were merged; equal keys with
        // different values were rejected above.
        Ok(Self { d, n, terms: canon })
    }

    /// Build a constant-coefficient (q = 1) sum from a list of ordered
    /// tuples forming a symmetric non-diagonal set: every orbit must be
    /// complete, i.e. each sorted key must appear exactly d! times.
    pub fn from_ordered_support(d: usize, n: usize, tuples: &[Vec<u32>]) -> Result<Self> {
        if d < 2 {
            return Err(Error::WrongOrder(d));
        }
        let mut counts: HashMap<Vec<u32>, usize> = HashMap::new();
        for t in tuples {
            if t.len() != d {
                return Err(Error::InvalidInput(format!(
                    "tuple {t:?} has arity {}, expected {d}",
                    t.len()
                )));
            }
            let mut key = t.clone();
            key.sort_unstable();
            if key.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::DiagonalSupport(key));
            }
            *counts.entry(key).or_insert(0) += 1;
        }
        let orbit = factorial(d) as usize;
        let mut terms = Vec::with_capacity(counts.len());
        for (key, c) in counts {
            if c != orbit {
                return Err(Error::NonSymmetricCoefficients(key, c as f64, orbit as f64));
            }
            terms.push((key, 1.0));
        }
        Self::from_terms(d, n, &terms)
    }

    /// d = 2, q = 1 sum generated by a graph.
    pub fn from_graph(g: &Graph) -> Self {
        let terms: Vec<(Vec<u32>, f64)> =
            g.edges().iter().map(|&(u, v)| (vec![u, v], 1.0)).collect();
        Self::from_terms(2, g.n_vertices(), &terms).expect("graph edges are a valid support")
    }

    pub fn order(&self) -> usize {
        self.d
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(Vec<u32>, f64)] {
        &self.terms
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    /// Ordered support size |E_n| = d! * (number of keys).
    pub fn support_size(&self) -> usize {
        self.terms.len() * factorial(self.d) as usize
    }

    /// ||q||^2 summed over ordered tuples.
    pub fn q_norm_sq(&self) -> f64 {
        factorial(self.d) * self.terms.iter().map(|(_, q)| q * q).sum::<f64>()
    }

    /// E[Z^2] = d! ||q||^2.
    pub fn variance(&self) -> f64 {
        factorial(self.d) * self.q_norm_sq()
    }

    /// The canonically associated weighted hypergraph: hyperedges are the
    /// unordered supports, weights the squared coefficients.
    pub fn to_hypergraph(&self) -> Result<WeightedHypergraph> {
        let edges: Vec<(Vec<u32>, f64)> = self
            .terms
            .iter()
            .map(|(verts, q)| (verts.clone(), q * q))
            .collect();
        WeightedHypergraph::new(self.n, &edges)
    }

    /// Symmetric coefficient matrix A_q for d = 2.
    pub fn coefficient_matrix(&self) -> Result<DMatrix<f64>> {
        if self.d != 2 {
            return Err(Error::WrongOrder(self.d));
        }
        if self.n > DENSE_EIGEN_CAP {
            return Err(Error::SizeLimitExceeded {
                what: "dense coefficient matrix",
                size: self.n,
                limit: DENSE_EIGEN_CAP,
            });
        }
        let mut a = DMatrix::zeros(self.n, self.n);
        for (verts, q) in &self.terms {
            let (u, v) = (verts[0] as usize, verts[1] as usize);
            a[(u, v)] = *q;
            a[(v, u)] = *q;
        }
        Ok(a)
    }

    /// Contraction norms ||q~ star_r q~||^2 for r = 1..d-1, where q~ is the
    /// kernel normalized to unit variance. The sum defining the norm runs
    /// over all (2d-2r)-tuples, diagonal ones included.
    pub fn contraction_norms(&self, accumulation_cap: usize) -> Result<Vec<f64>> {
        let d = self.d;
        let norm_sq = self.variance();
        // Ordered tuples with normalized coefficients.
        let mut ordered: Vec<(Vec<u32>, f64)> = Vec::with_capacity(self.support_size());
        for (key, q) in &self.terms {
            let qt = q / norm_sq.sqrt();
            permute_into(key, &mut |perm| ordered.push((perm.to_vec(), qt)));
        }

        let mut out = Vec::with_capacity(d - 1);
        for r in 1..d {
            // Split each ordered tuple as (prefix of length r, suffix of
            // length d-r); group by suffix, accumulate T(a,b) over prefix
            // pairs sharing a suffix, then sum T^2. Ordered maps keep the
            // floating-point accumulation order deterministic.
            let mut by_suffix: BTreeMap<&[u32], Vec<(&[u32], f64)>> = BTreeMap::new();
            for (tuple, qt) in &ordered {
                let (prefix, suffix) = tuple.split_at(r);
                by_suffix.entry(suffix).or_default().push((prefix, *qt));
            }
            let accumulations: usize = by_suffix.values().map(|l| l.len() * l.len()).sum();
            if accumulations > accumulation_cap {
                return Err(Error::MemoryLimit {
                    cap: accumulation_cap,
                });
            }
            let mut t_map: BTreeMap<Vec<u32>, f64> = BTreeMap::new();
            let mut pair_key = Vec::with_capacity(2 * r);
            for list in by_suffix.values() {
                for &(a, qa) in list {
                    for &(b, qb) in list {
                        pair_key.clear();
                        pair_key.extend_from_slice(a);
                        pair_key.extend_from_slice(b);
                        *t_map.entry(pair_key.clone()).or_insert(0.0) += qa * qb;
                    }
                }
            }
            out.push(t_map.values().map(|t| t * t).sum());
        }
        Ok(out)
    }

    /// E[Z~^4] for d = 2 from quadratic-form cumulants:
    /// 3 + 12 Tr(A_q^4) / Tr(A_q^2)^2.
    pub fn fourth_moment_d2_exact(&self) -> Result<f64> {
        let a = self.coefficient_matrix()?;
        let tr2: f64 = a.iter().map(|x| x * x).sum();
        let a2 = &a * &a;
        let tr4: f64 = a2.iter().map(|x| x * x).sum();
        Ok(3.0 + 12.0 * tr4 / (tr2 * tr2))
    }

    /// Exact E[Z~^4] by enumerating quadruples of support keys and matching
    /// Gaussian moments. Works for any order but costs |keys|^4.
    pub fn fourth_moment_wick(&self, cap: usize) -> Result<f64> {
        let s = self.terms.len();
        let quads = s.saturating_mul(s).saturating_mul(s).saturating_mul(s);
        if quads > cap {
            return Err(Error::CapExceeded { quads, cap });
        }
        let c = factorial(self.d);
        let mut total = 0f64;
        let mut labels: Vec<u32> = Vec::with_capacity(4 * self.d);
        for (k1, q1) in &self.terms {
            for (k2, q2) in &self.terms {
                for (k3, q3) in &self.terms {
                    for (k4, q4) in &self.terms {
                        labels.clear();
                        labels.extend_from_slice(k1);
                        labels.extend_from_slice(k2);
                        labels.extend_from_slice(k3);
                        labels.extend_from_slice(k4);
                        labels.sort_unstable();
                        // Every vertex multiplicity must be even; E[X^2]=1,
                        // E[X^4]=3.
                        let mut factor = 1f64;
                        let mut ok = true;
                        let mut i = 0;
                        while i < labels.len() {
                            let mut j = i + 1;
                            while j < labels.len() && labels[j] == labels[i] {
                                j += 1;
                            }
                            match j - i {
                                2 => {}
                                4 => factor *= 3.0,
                                _ => {
                                    ok = false;
                                    break;
                                }
                            }
                            i = j;
                        }
                        if ok {
                            total += c * c * c * c * q1 * q2 * q3 * q4 * factor;
                        }
                    }
                }
            }
        }
        let var = self.variance();
        Ok(total / (var * var))
    }

    /// d = 2 spectral diagnostics: eigenvalues gamma_j of the coefficient
    /// matrix, max |gamma| / sqrt(sum gamma^2), and the weighted max-degree
    /// ratio max_u sum_v |A_q(u,v)| / sqrt(sum gamma^2).
    pub fn spectral_criteria_d2(&self) -> Result<SpectralCriteria> {
        let a = self.coefficient_matrix()?;
        let gammas = symmetric_eigenvalues(&a)?;
        let sum_sq: f64 = gammas.iter().map(|g| g * g).sum();
        let max_abs = gammas.iter().fold(0f64, |m, g| m.max(g.abs()));
        let max_row: f64 = (0..self.n)
            .map(|u| a.row(u).iter().map(|x| x.abs()).sum::<f64>())
            .fold(0f64, f64::max);
        let mut weights = gammas;
        weights.sort_by(|a, b| b.abs().total_cmp(&a.abs()));
        Ok(SpectralCriteria {
            max_eig_ratio: max_abs / sum_sq.sqrt(),
            max_degree_ratio: max_row / sum_sq.sqrt(),
            chi_square_weights: weights,
        })
    }

    /// i.i.d. realizations of Z~(Y); deterministic per seed, chunked so the
    /// output does not depend on thread scheduling.
    pub fn sample(&self, dist: Dist, n_samples: usize, seed: u64) -> Vec<f64> {
        let d = self.d;
        let coeff = factorial(d);
        let inv_sd = 1.0 / self.variance().sqrt();
        let verts_flat: Vec<u32> = self
            .terms
            .iter()
            .flat_map(|(v, _)| v.iter().copied())
            .collect();
        let qs: Vec<f64> = self.terms.iter().map(|(_, q)| q * coeff).collect();
        let n = self.n;

        let n_chunks = n_samples.div_ceil(SAMPLE_CHUNK);
        let chunks: Vec<Vec<f64>> = (0..n_chunks)
            .into_par_iter()
            .map(|c| {
                let mut rng = SplitMix64::new(derive_seed(seed, c as u64));
                let count = SAMPLE_CHUNK.min(n_samples - c * SAMPLE_CHUNK);
                let mut ys = vec![0f64; n];
                let mut out = Vec::with_capacity(count);
                for _ in 0..count {
                    for y in ys.iter_mut() {
                        *y = dist.draw(&mut rng);
                    }
                    let mut z = 0f64;
                    for (i, &q) in qs.iter().enumerate() {
                        let mut prod = q;
                        for &v in &verts_flat[i * d..(i + 1) * d] {
                            prod *= ys[v as usize];
                        }
                        z += prod;
                    }
                    out.push(z * inv_sd);
                }
                out
            })
            .collect();
        chunks.into_iter().flatten().collect()
    }

    /// Monte Carlo estimate of E[Z~^4] with its standard error.
    pub fn fourth_moment_monte_carlo(
        &self,
        dist: Dist,
        n_samples: usize,
        seed: u64,
    ) -> MomentEstimate {
        let samples = self.sample(dist, n_samples, seed);
        empirical_moments(&samples, 4)
            .into_iter()
            .nth(3)
            .expect("fourth moment requested")
    }
}

/// Apply a visitor to every permutation of `key` (Heap's algorithm).
fn permute_into(key: &[u32], visit: &mut impl FnMut(&[u32])) {
    let mut buf = key.to_vec();
    let n = buf.len();
    let mut c = vec![0usize; n];
    visit(&buf);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                buf.swap(0, i);
            } else {
                buf.swap(c[i], i);
            }
            visit(&buf);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Input distribution for universality sampling; all standardized to mean
/// zero and unit variance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dist {
    Gaussian,
    Rademacher,
    Uniform,
    CenteredExponential,
}

impl Dist {
    #[inline]
    fn draw(self, rng: &mut SplitMix64) -> f64 {
        match self {
            Dist::Gaussian => rng.standard_normal(),
            Dist::Rademacher => rng.rademacher(),
            Dist::Uniform => rng.uniform_standardized(),
            Dist::CenteredExponential => rng.centered_exponential(),
        }
    }
}

impl std::str::FromStr for Dist {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "gaussian" | "normal" => Ok(Dist::Gaussian),
            "rademacher" => Ok(Dist::Rademacher),
            "uniform" => Ok(Dist::Uniform),
            "centered_exponential" | "exponential" => Ok(Dist::CenteredExponential),
            other => Err(Error::InvalidDistribution(other.into())),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MomentEstimate {
    pub order: usize,
    pub value: f64,
    pub stderr: f64,
}

/// Empirical moments E[X^k] for k = 1..=up_to, with standard errors.
pub fn empirical_moments(samples: &[f64], up_to: usize) -> Vec<MomentEstimate> {
    let n = samples.len() as f64;
    (1..=up_to)
        .map(|k| {
            let mut sum = 0f64;
            let mut sum_sq = 0f64;
            for &x in samples {
                let p = x.powi(k as i32);
                sum += p;
                sum_sq += p * p;
            }
            let mean = sum / n;
            let var = (sum_sq / n - mean * mean).max(0.0);
            MomentEstimate {
                order: k,
                value: mean,
                stderr: (var / n).sqrt(),
            }
        })
        .collect()
}

/// Standard normal CDF via the complementary error function.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// Kolmogorov-Smirnov distance of the sample to the standard normal.
pub fn ks_statistic(samples: &[f64]) -> f64 {
    let mut xs = samples.to_vec();
    xs.sort_by(|a, b| a.total_cmp(b));
    let n = xs.len() as f64;
    let mut d = 0f64;
    for (i, &x) in xs.iter().enumerate() {
        let f = normal_cdf(x);
        d = d.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
    }
    d
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectralCriteria {
    /// max |gamma| / sqrt(sum gamma^2); vanishing along a family is the
    /// d = 2 CLT criterion.
    pub max_eig_ratio: f64,
    /// Weighted max degree over sqrt(sum gamma^2); an upper proxy for the
    /// eigenvalue ratio.
    pub max_degree_ratio: f64,
    /// Eigenvalues of the coefficient matrix by descending magnitude.
    pub chi_square_weights: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriteriaFlags {
    /// |E[Z~^4] - 3| below threshold.
    pub fourth_moment_close: Option<bool>,
    /// All contraction norms below threshold.
    pub contractions_small: Option<bool>,
    /// max eigenvalue ratio below threshold (d = 2 only).
    pub spectral_ratio_small: Option<bool>,
}

/// Full diagnostic record for one homogeneous sum.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CltReport {
    pub d: usize,
    pub n_vertices: usize,
    pub support_keys: usize,
    pub variance: f64,
    pub fourth_moment_exact: Option<f64>,
    pub fourth_moment_mc: Option<MomentEstimate>,
    pub ks_to_normal: Option<f64>,
    pub contraction_norms: Option<Vec<f64>>,
    pub spectral_d2: Option<SpectralCriteria>,
    pub criteria_flags: CriteriaFlags,
}

/// Options for [`clt_report`].
#[derive(Debug, Clone, Copy)]
pub struct CltOptions {
    pub dist: Dist,
    pub n_samples: usize,
    pub seed: u64,
    pub contractions: bool,
    pub contraction_cap: usize,
    pub threshold: f64,
}

impl Default for CltOptions {
    fn default() -> Self {
        Self {
            dist: Dist::Gaussian,
            n_samples: 100_000,
            seed: 0,
            contractions: true,
            contraction_cap: CONTRACTION_CAP,
            threshold: CRITERION_THRESHOLD,
        }
    }
}

/// Assemble the moment / spectral / contraction diagnostics for one sum.
pub fn clt_report(z: &HomogeneousSum, opts: &CltOptions) -> Result<CltReport> {
    let variance = z.variance();
    let fourth_exact = if z.order() == 2 && z.n_vertices() <= DENSE_EIGEN_CAP {
        Some(z.fourth_moment_d2_exact()?)
    } else {
        None
    };
    let (fourth_mc, ks) = if opts.n_samples > 0 {
        let samples = z.sample(opts.dist, opts.n_samples, opts.seed);
        let m4 = empirical_moments(&samples, 4)[3];
        (Some(m4), Some(ks_statistic(&samples)))
    } else {
        (None, None)
    };
    let contraction_norms = if opts.contractions {
        match z.contraction_norms(opts.contraction_cap) {
            Ok(v) => Some(v),
            Err(Error::MemoryLimit { .. }) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let spectral_d2 = if z.order() == 2 && z.n_vertices() <= DENSE_EIGEN_CAP {
        Some(z.spectral_criteria_d2()?)
    } else {
        None
    };
    let m4_best = fourth_exact.or(fourth_mc.map(|m| m.value));
    let criteria_flags = CriteriaFlags {
        fourth_moment_close: m4_best.map(|m| (m - 3.0).abs() < opts.threshold),
        contractions_small: contraction_norms
            .as_ref()
            .map(|c| c.iter().all(|&x| x < opts.threshold)),
        spectral_ratio_small: spectral_d2
            .as_ref()
            .map(|s| s.max_eig_ratio < opts.threshold),
    };
    Ok(CltReport {
        d: z.order(),
        n_vertices: z.n_vertices(),
        support_keys: z.n_terms(),
        variance,
        fourth_moment_exact: fourth_exact,
        fourth_moment_mc: fourth_mc,
        ks_to_normal: ks,
        contraction_norms,
        spectral_d2,
        criteria_flags,
    })
}
