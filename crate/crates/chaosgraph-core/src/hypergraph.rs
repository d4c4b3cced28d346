//! Weighted hypergraphs: adjacency, degrees, volumes, boundaries, edge
//! expansion, normalized Laplacian, and Cheeger-type checks.
//!
//! The adjacency matrix spreads each hyperedge's weight uniformly over the
//! other |e|-1 vertices: A_ij = sum over edges containing both of
//! w(e)/(|e|-1), zero on the diagonal. Row sums then equal the weighted
//! degrees d(v) = sum of w(e) over edges containing v.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Partition;
use crate::phi_search::{self, exact_limit_for, mask_to_set, PhiMode, SweepInput};
use crate::spectral::{self, MatrixKind, SpectralReport};

/// Weights smaller than this are treated as absent support.
pub const WEIGHT_FLOOR: f64 = 1e-15;

const TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedHypergraph {
    n: usize,
    /// Hyperedges as sorted vertex lists with positive weights, sorted by
    /// vertex list for canonical form.
    edges: Vec<(Vec<u32>, f64)>,
    degrees: Vec<f64>,
}

impl WeightedHypergraph {
    pub fn new(n: usize, edges: &[(Vec<u32>, f64)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "hypergraph needs at least one vertex".into(),
            ));
        }
        let mut canon: Vec<(Vec<u32>, f64)> = Vec::with_capacity(edges.len());
        for (verts, w) in edges {
            let mut v = verts.clone();
            v.sort_unstable();
            if v.len() < 2 {
                return Err(Error::HyperedgeTooSmall(v));
            }
            if v.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::DiagonalSupport(v));
            }
            for &x in &v {
                if x as usize >= n {
                    return Err(Error::LabelOutOfRange { label: x, n });
                }
            }
            if *w < WEIGHT_FLOOR {
                return Err(Error::NonPositiveWeight(*w));
            }
            canon.push((v, *w));
        }
        canon.sort_by(|a, b| a.0.cmp(&b.0));
        for w in canon.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicateHyperedge(w[0].0.clone()));
            }
        }
        let mut degrees = vec![0f64; n];
        for (verts, w) in &canon {
            for &v in verts {
                degrees[v as usize] += w;
            }
        }
        if let Some(v) = degrees.iter().position(|&d| d == 0.0) {
            return Err(Error::IsolatedVertex(v as u32));
        }
        Ok(Self {
            n,
            edges: canon,
            degrees,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(Vec<u32>, f64)] {
        &self.edges
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    /// Maximum hyperedge cardinality.
    pub fn rank(&self) -> usize {
        self.edges.iter().map(|(v, _)| v.len()).max().unwrap_or(0)
    }

    /// Minimum hyperedge cardinality.
    pub fn co_rank(&self) -> usize {
        self.edges.iter().map(|(v, _)| v.len()).min().unwrap_or(0)
    }

    /// Total edge weight w(E).
    pub fn total_edge_weight(&self) -> f64 {
        self.edges.iter().map(|(_, w)| w).sum()
    }

    /// 2 (r-1)^2 / (cr-1), the hypergraph Cheeger constant factor.
    pub fn cheeger_factor(&self) -> f64 {
        let r = self.rank() as f64;
        let cr = self.co_rank() as f64;
        2.0 * (r - 1.0) * (r - 1.0) / (cr - 1.0)
    }

    pub fn adjacency_matrix(&self) -> DMatrix<f64> {
        let mut a = DMatrix::zeros(self.n, self.n);
        for (verts, w) in &self.edges {
            let share = w / (verts.len() as f64 - 1.0);
            for (i, &u) in verts.iter().enumerate() {
                for &v in &verts[i + 1..] {
                    a[(u as usize, v as usize)] += share;
                    a[(v as usize, u as usize)] += share;
                }
            }
        }
        a
    }

    /// I - D^{-1/2} A D^{-1/2}.
    pub fn normalized_laplacian(&self) -> DMatrix<f64> {
        let mut l = self.adjacency_matrix();
        let inv_sqrt: Vec<f64> = self.degrees.iter().map(|&d| 1.0 / d.sqrt()).collect();
        for i in 0..self.n {
            for j in 0..self.n {
                l[(i, j)] = if i == j {
                    1.0
                } else {
                    -l[(i, j)] * inv_sqrt[i] * inv_sqrt[j]
                };
            }
        }
        l
    }

    pub fn spectrum(&self, kind: MatrixKind) -> Result<SpectralReport> {
        let m = match kind {
            MatrixKind::Adjacency => self.adjacency_matrix(),
            MatrixKind::NormalizedLaplacian => self.normalized_laplacian(),
        };
        spectral::report(kind, &m)
    }

    fn membership(&self, set: &[u32]) -> Result<Vec<bool>> {
        let mut member = vec![false; self.n];
        for &v in set {
            if v as usize >= self.n {
                return Err(Error::LabelOutOfRange {
                    label: v,
                    n: self.n,
                });
            }
            member[v as usize] = true;
        }
        Ok(member)
    }

    /// Indices of boundary hyperedges: at least one vertex inside S and one
    /// outside.
    pub fn boundary(&self, s: &[u32]) -> Result<Vec<usize>> {
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        let m = self.membership(s)?;
        Ok((0..self.edges.len())
            .filter(|&i| {
                let verts = &self.edges[i].0;
                let inside = verts.iter().filter(|&&v| m[v as usize]).count();
                inside > 0 && inside < verts.len()
            })
            .collect())
    }

    pub fn volume(&self, s: &[u32]) -> Result<f64> {
        let m = self.membership(s)?;
        Ok((0..self.n).filter(|&v| m[v]).map(|v| self.degrees[v]).sum())
    }

    /// w(boundary(S)) / vol(S); zero for S = V.
    pub fn edge_expansion(&self, s: &[u32]) -> Result<f64> {
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        let m = self.membership(s)?;
        Ok(self.expansion_of_membership(&m))
    }

    fn expansion_of_membership(&self, m: &[bool]) -> f64 {
        let mut cut = 0f64;
        for (verts, w) in &self.edges {
            let inside = verts.iter().filter(|&&v| m[v as usize]).count();
            if inside > 0 && inside < verts.len() {
                cut += w;
            }
        }
        let vol: f64 = (0..self.n).filter(|&v| m[v]).map(|v| self.degrees[v]).sum();
        cut / vol
    }

    /// Weight of hyperedges entirely inside S.
    pub fn internal_weight(&self, s: &[u32]) -> Result<f64> {
        let m = self.membership(s)?;
        Ok(self
            .edges
            .iter()
            .filter(|(verts, _)| verts.iter().all(|&v| m[v as usize]))
            .map(|(_, w)| w)
            .sum())
    }

    pub fn components(&self) -> Vec<Vec<u32>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            let mut cur = x;
            while parent[cur] != root {
                let next = parent[cur];
                parent[cur] = root;
                cur = next;
            }
            root
        }
        for (verts, _) in &self.edges {
            let r0 = find(&mut parent, verts[0] as usize);
            for &v in &verts[1..] {
                let r = find(&mut parent, v as usize);
                parent[r] = r0;
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<u32>> = Default::default();
        for v in 0..self.n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v as u32);
        }
        groups.into_values().collect()
    }

    fn phi_table(&self) -> Vec<f64> {
        let edge_masks: Vec<(u32, f64)> = self
            .edges
            .iter()
            .map(|(verts, w)| (verts.iter().fold(0u32, |m, &v| m | 1 << v), *w))
            .collect();
        phi_search::phi_table(
            self.n,
            |mask| {
                edge_masks
                    .iter()
                    .filter(|&&(em, _)| {
                        let inter = em & mask;
                        inter != 0 && inter != em
                    })
                    .map(|&(_, w)| w)
                    .sum()
            },
            |mask| {
                (0..self.n)
                    .filter(|&v| mask >> v & 1 == 1)
                    .map(|v| self.degrees[v])
                    .sum()
            },
        )
    }

    pub fn phi_k_exact(&self, k: usize, exact_limit: usize) -> Result<(f64, Vec<Vec<u32>>)> {
        if k < 2 || k > self.n {
            return Err(Error::InvalidK { k, max: self.n });
        }
        let limit = exact_limit_for(k, exact_limit);
        if self.n > limit {
            return Err(Error::TooLargeForExact { n: self.n, limit });
        }
        let table = self.phi_table();
        let (value, masks) = phi_search::phi_k_exact_from_table(&table, self.n, k);
        Ok((value, masks.into_iter().map(mask_to_set).collect()))
    }

    pub fn phi_k_heuristic(&self, k: usize) -> Result<(f64, Vec<Vec<u32>>)> {
        let phi_of = |m: &[bool]| self.expansion_of_membership(m);
        let input = SweepInput {
            n: self.n,
            laplacian: self.normalized_laplacian(),
            degrees: self.degrees.clone(),
            phi_of: &phi_of,
            components: self.components(),
        };
        let res = phi_search::sweep_phi_k(&input, k)?;
        Ok((res.value, res.witness))
    }

    /// Per-k verification of mu_k <= 2(r-1)^2/(cr-1) phi_k, plus the
    /// ordered-partition bound for caller-provided partitions.
    pub fn cheeger_check(&self, k_max: usize, exact_limit: usize) -> Result<HyperCheegerReport> {
        if k_max < 2 || k_max > self.n {
            return Err(Error::InvalidK {
                k: k_max,
                max: self.n,
            });
        }
        let spec = self.spectrum(MatrixKind::NormalizedLaplacian)?;
        let factor = self.cheeger_factor();
        let mut rows = Vec::new();
        for k in 2..=k_max {
            let mu_k = spec.mu(k);
            let (phi_k, mode) = if self.n <= exact_limit_for(k, exact_limit) {
                (self.phi_k_exact(k, exact_limit)?.0, PhiMode::Exact)
            } else {
                (self.phi_k_heuristic(k)?.0, PhiMode::UpperBound)
            };
            rows.push(HyperCheegerRow {
                k,
                mu_k,
                phi_k,
                mode,
                factor,
                ok: mu_k <= factor * phi_k + TOL,
            });
        }
        Ok(HyperCheegerReport { rows })
    }

    /// Ordered-partition bound with the hypergraph factor:
    /// mu_k <= 2(r-1)^2/(cr-1) * sum_{i>=k} vol phi / sum_{i>=k} vol.
    pub fn partition_spectral_bound(&self, p: &Partition, k: usize) -> Result<(f64, f64, bool)> {
        let m = p.blocks.len();
        if k < 1 || k > m {
            return Err(Error::InvalidK { k, max: m });
        }
        let mut rows: Vec<(f64, f64)> = p
            .blocks
            .iter()
            .map(|b| Ok((self.edge_expansion(b)?, self.volume(b)?)))
            .collect::<Result<_>>()?;
        rows.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (num, den) = rows[k - 1..]
            .iter()
            .fold((0.0, 0.0), |(num, den), &(phi, vol)| {
                (num + vol * phi, den + vol)
            });
        let bound = self.cheeger_factor() * num / den;
        let mu_k = self.spectrum(MatrixKind::NormalizedLaplacian)?.mu(k);
        Ok((bound, mu_k, mu_k <= bound + TOL))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HyperCheegerRow {
    pub k: usize,
    pub mu_k: f64,
    pub phi_k: f64,
    pub mode: PhiMode,
    /// 2(r-1)^2/(cr-1).
    pub factor: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HyperCheegerReport {
    pub rows: Vec<HyperCheegerRow>,
}

impl HyperCheegerReport {
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(|r| r.ok)
    }
}
