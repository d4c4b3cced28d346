//! Simple undirected graphs: construction, normalized Laplacian spectra,
//! edge expansion, multiway expansion phi_k, Cheeger checks, and Cartesian
//! products.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phi_search::{self, exact_limit_for, mask_to_set, PhiMode, SweepInput};
use crate::spectral::{self, MatrixKind, SpectralReport};

/// Vertex-count cap for Cartesian products.
pub const PRODUCT_VERTEX_CAP: usize = 1 << 24;
/// Edge-count cap for Cartesian products.
pub const PRODUCT_EDGE_CAP: usize = 1 << 27;

const TOL: f64 = 1e-9;

/// Simple undirected graph on vertices 0..n-1 with no loops, no duplicate
/// edges and no isolated vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Canonical edge list: u < v, sorted lexicographically.
    edges: Vec<(u32, u32)>,
    degrees: Vec<u32>,
}

/// Disjoint nonempty vertex blocks; `covers` records whether they exhaust V.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Partition {
    pub blocks: Vec<Vec<u32>>,
    pub n: usize,
    pub covers: bool,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<Vec<u32>>) -> Result<Self> {
        let mut seen = vec![false; n];
        let mut covered = 0usize;
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::EmptyBlock);
            }
            for &v in block {
                if v as usize >= n {
                    return Err(Error::LabelOutOfRange { label: v, n });
                }
                if seen[v as usize] {
                    return Err(Error::OverlappingBlocks(v));
                }
                seen[v as usize] = true;
                covered += 1;
            }
        }
        Ok(Self {
            covers: covered == n,
            blocks,
            n,
        })
    }
}

fn canonical_edges(n: usize, edges: &[(u32, u32)]) -> Result<Vec<(u32, u32)>> {
    let mut out = Vec::with_capacity(edges.len());
    for &(a, b) in edges {
        if a as usize >= n {
            return Err(Error::LabelOutOfRange { label: a, n });
        }
        if b as usize >= n {
            return Err(Error::LabelOutOfRange { label: b, n });
        }
        if a == b {
            return Err(Error::LoopEdge(a));
        }
        out.push((a.min(b), a.max(b)));
    }
    out.sort_unstable();
    for w in out.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
    }
    Ok(out)
}

impl Graph {
    /// Build a graph, rejecting loops, duplicates and isolated vertices.
    pub fn new(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "graph needs at least one vertex".into(),
            ));
        }
        let edges = canonical_edges(n, edges)?;
        let mut degrees = vec![0u32; n];
        for &(a, b) in &edges {
            degrees[a as usize] += 1;
            degrees[b as usize] += 1;
        }
        if let Some(v) = degrees.iter().position(|&d| d == 0) {
            return Err(Error::IsolatedVertex(v as u32));
        }
        Ok(Self { n, edges, degrees })
    }

    /// Build a graph, silently removing isolated vertices and relabeling the
    /// survivors in increasing order.
    pub fn new_drop_isolated(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "graph needs at least one vertex".into(),
            ));
        }
        let edges = canonical_edges(n, edges)?;
        let mut degrees = vec![0u32; n];
        for &(a, b) in &edges {
            degrees[a as usize] += 1;
            degrees[b as usize] += 1;
        }
        let mut relabel = vec![u32::MAX; n];
        let mut next = 0u32;
        for v in 0..n {
            if degrees[v] > 0 {
                relabel[v] = next;
                next += 1;
            }
        }
        if next == 0 {
            return Err(Error::EmptyAfterDrop);
        }
        let edges: Vec<(u32, u32)> = edges
            .iter()
            .map(|&(a, b)| (relabel[a as usize], relabel[b as usize]))
            .collect();
        Self::new(next as usize, &edges)
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: u32) -> u32 {
        self.degrees[v as usize]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Sum of all degrees, equal to twice the edge count.
    pub fn total_volume(&self) -> f64 {
        2.0 * self.edges.len() as f64
    }

    pub fn adjacency_lists(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        adj
    }

    /// Connected components as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let adj = self.adjacency_lists();
        let mut comp = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            stack.push(start);
            comp[start] = count;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if comp[w as usize] == usize::MAX {
                        comp[w as usize] = count;
                        stack.push(w as usize);
                    }
                }
            }
            count += 1;
        }
        let mut out = vec![Vec::new(); count];
        for v in 0..self.n {
            out[comp[v]].push(v as u32);
        }
        out
    }

    pub fn adjacency_matrix(&self) -> DMatrix<f64> {
        let mut a = DMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            a[(u as usize, v as usize)] = 1.0;
            a[(v as usize, u as usize)] = 1.0;
        }
        a
    }

    /// I - D^{-1/2} A D^{-1/2}.
    pub fn normalized_laplacian(&self) -> DMatrix<f64> {
        let inv_sqrt: Vec<f64> = self
            .degrees
            .iter()
            .map(|&d| 1.0 / (d as f64).sqrt())
            .collect();
        let mut l = DMatrix::identity(self.n, self.n);
        for &(u, v) in &self.edges {
            let (u, v) = (u as usize, v as usize);
            let w = inv_sqrt[u] * inv_sqrt[v];
            l[(u, v)] = -w;
            l[(v, u)] = -w;
        }
        l
    }

    /// Spectrum of the requested matrix, ascending with multiplicity groups.
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

    /// Number of edges with one endpoint in S and the other in T.
    pub fn edge_count(&self, s: &[u32], t: &[u32]) -> Result<usize> {
        let sm = self.membership(s)?;
        let tm = self.membership(t)?;
        Ok(self
            .edges
            .iter()
            .filter(|&&(u, v)| {
                let (u, v) = (u as usize, v as usize);
                (sm[u] && tm[v]) || (sm[v] && tm[u])
            })
            .count())
    }

    pub fn volume(&self, s: &[u32]) -> Result<f64> {
        let m = self.membership(s)?;
        Ok(self
            .degrees
            .iter()
            .enumerate()
            .filter(|&(v, _)| m[v])
            .map(|(_, &d)| d as f64)
            .sum())
    }

    /// Edge expansion E(S, complement) / vol(S). Zero for S = V.
    pub fn edge_expansion(&self, s: &[u32]) -> Result<f64> {
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        let m = self.membership(s)?;
        Ok(self.expansion_of_membership(&m))
    }

    fn expansion_of_membership(&self, m: &[bool]) -> f64 {
        let mut cut = 0usize;
        let mut vol = 0f64;
        for &(u, v) in &self.edges {
            if m[u as usize] != m[v as usize] {
                cut += 1;
            }
        }
        for (v, &inside) in m.iter().enumerate() {
            if inside {
                vol += self.degrees[v] as f64;
            }
        }
        cut as f64 / vol
    }

    /// Subset expansion table for exhaustive search; only for small n.
    fn phi_table(&self) -> Vec<f64> {
        let adj_masks: Vec<u32> = {
            let mut masks = vec![0u32; self.n];
            for &(u, v) in &self.edges {
                masks[u as usize] |= 1 << v;
                masks[v as usize] |= 1 << u;
            }
            masks
        };
        phi_search::phi_table(
            self.n,
            |mask| {
                (0..self.n)
                    .filter(|&v| mask >> v & 1 == 1)
                    .map(|v| (adj_masks[v] & !mask).count_ones() as f64)
                    .sum()
            },
            |mask| {
                (0..self.n)
                    .filter(|&v| mask >> v & 1 == 1)
                    .map(|v| self.degrees[v] as f64)
                    .sum()
            },
        )
    }

    /// Exact phi_k by exhaustive subset search. Limited to small graphs.
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

    /// Upper bound on phi_k via spectral sweep cuts; never asserted optimal.
    pub fn phi_k_heuristic(&self, k: usize) -> Result<(f64, Vec<Vec<u32>>)> {
        let res = self.sweep(k)?;
        Ok((res.value, res.witness))
    }

    fn sweep(&self, k: usize) -> Result<phi_search::SweepResult> {
        let phi_of = |m: &[bool]| self.expansion_of_membership(m);
        let input = SweepInput {
            n: self.n,
            laplacian: self.normalized_laplacian(),
            degrees: self.degrees.iter().map(|&d| d as f64).collect(),
            phi_of: &phi_of,
            components: self.components(),
        };
        phi_search::sweep_phi_k(&input, k)
    }

    /// min over 0 < |S| <= n/2 of phi(S), exhaustively.
    pub fn phi_tilde_2_exact(&self, exact_limit: usize) -> Result<f64> {
        if self.n > exact_limit {
            return Err(Error::TooLargeForExact {
                n: self.n,
                limit: exact_limit,
            });
        }
        let table = self.phi_table();
        Ok(phi_search::phi_tilde2_from_table(&table, self.n))
    }

    /// Verify mu_k <= 2 phi_k for k = 2..k_max (exact phi_k when feasible)
    /// and the k = 2 bound phi~_2 <= sqrt(2 mu_2).
    pub fn cheeger_check(&self, k_max: usize, exact_limit: usize) -> Result<CheegerReport> {
        if k_max < 2 || k_max > self.n {
            return Err(Error::InvalidK {
                k: k_max,
                max: self.n,
            });
        }
        let spec = self.spectrum(MatrixKind::NormalizedLaplacian)?;
        let mut rows = Vec::new();
        for k in 2..=k_max {
            let mu_k = spec.mu(k);
            let (phi_k, mode, sweep_ratio) = if self.n <= exact_limit_for(k, exact_limit) {
                let (v, _) = self.phi_k_exact(k, exact_limit)?;
                (v, PhiMode::Exact, None)
            } else {
                let res = self.sweep(k)?;
                let ratio = if res.is_partition && mu_k > TOL {
                    Some(res.value / mu_k.sqrt())
                } else {
                    None
                };
                (res.value, PhiMode::UpperBound, ratio)
            };
            rows.push(CheegerRow {
                k,
                mu_k,
                phi_k,
                mode,
                ok: mu_k <= 2.0 * phi_k + TOL,
                sweep_ratio,
            });
        }
        let tilde = if self.n <= exact_limit {
            let phi_tilde = self.phi_tilde_2_exact(exact_limit)?;
            let bound = (2.0 * spec.mu(2)).sqrt();
            Some(TildeRow {
                phi_tilde_2: phi_tilde,
                bound,
                ok: phi_tilde <= bound + TOL,
            })
        } else {
            None
        };
        Ok(CheegerReport { rows, tilde })
    }

    /// Ordered-partition eigenvalue bound: with blocks sorted by ascending
    /// expansion, mu_k <= 2 sum_{i>=k} vol(B_i) phi(B_i) / sum_{i>=k} vol(B_i).
    pub fn partition_spectral_bound(&self, p: &Partition, k: usize) -> Result<PartitionBound> {
        let m = p.blocks.len();
        if k < 1 || k > m {
            return Err(Error::InvalidK { k, max: m });
        }
        let mut rows: Vec<(f64, f64)> = p
            .blocks
            .iter()
            .map(|b| {
                let phi = self.edge_expansion(b)?;
                let vol = self.volume(b)?;
                Ok((phi, vol))
            })
            .collect::<Result<_>>()?;
        rows.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (num, den) = rows[k - 1..]
            .iter()
            .fold((0.0, 0.0), |(num, den), &(phi, vol)| {
                (num + vol * phi, den + vol)
            });
        let bound = 2.0 * num / den;
        let mu_k = self.spectrum(MatrixKind::NormalizedLaplacian)?.mu(k);
        Ok(PartitionBound {
            bound,
            mu_k,
            ok: mu_k <= bound + TOL,
        })
    }

    /// Cartesian product; vertex (u, w) is labeled u * |V_h| + w.
    pub fn cartesian_product(&self, other: &Graph) -> Result<Graph> {
        let n = self
            .n
            .checked_mul(other.n)
            .filter(|&n| n <= PRODUCT_VERTEX_CAP)
            .ok_or(Error::SizeLimitExceeded {
                what: "product vertex count",
                size: self.n.saturating_mul(other.n),
                limit: PRODUCT_VERTEX_CAP,
            })?;
        let n_edges = self.edges.len() * other.n + other.edges.len() * self.n;
        if n_edges > PRODUCT_EDGE_CAP {
            return Err(Error::SizeLimitExceeded {
                what: "product edge count",
                size: n_edges,
                limit: PRODUCT_EDGE_CAP,
            });
        }
        let nh = other.n as u32;
        let mut edges = Vec::with_capacity(n_edges);
        for &(u, v) in &self.edges {
            for w in 0..nh {
                edges.push((u * nh + w, v * nh + w));
            }
        }
        for u in 0..self.n as u32 {
            for &(w, x) in &other.edges {
                edges.push((u * nh + w, u * nh + x));
            }
        }
        Graph::new(n, &edges)
    }

    /// m-fold Cartesian power.
    pub fn product_power(&self, m: usize) -> Result<Graph> {
        if m == 0 {
            return Err(Error::InvalidInput("product power needs m >= 1".into()));
        }
        let mut g = self.clone();
        for _ in 1..m {
            g = g.cartesian_product(self)?;
        }
        Ok(g)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheegerRow {
    pub k: usize,
    pub mu_k: f64,
    /// Exact phi_k or a sweep upper bound, per `mode`.
    pub phi_k: f64,
    pub mode: PhiMode,
    /// mu_k <= 2 phi_k; trivially satisfied when phi_k is an upper bound.
    pub ok: bool,
    /// max_i phi(S_i) / sqrt(mu_k) for the sweep partition; reported only,
    /// nothing is asserted about it.
    pub sweep_ratio: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TildeRow {
    pub phi_tilde_2: f64,
    /// sqrt(2 mu_2).
    pub bound: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheegerReport {
    pub rows: Vec<CheegerRow>,
    pub tilde: Option<TildeRow>,
}

impl CheegerReport {
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(|r| r.ok) && self.tilde.as_ref().is_none_or(|t| t.ok)
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PartitionBound {
    pub bound: f64,
    pub mu_k: f64,
    pub ok: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phi_search::EXACT_LIMIT_BASE;

    fn k3() -> Graph {
        Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn k4() -> Graph {
        Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    /// Triangle inside S joined to three pendant vertices that form a
    /// triangle among themselves only in the (c) variant; here the
    /// complement is internally empty (Figure value phi(S)=1/3, phi(~S)=1).
    fn pendant_triangle() -> Graph {
        Graph::new(6, &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)]).unwrap()
    }

    #[test]
    fn build_p3_degrees() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.degrees(), &[1, 2, 1]);
        assert_eq!(g.n_edges(), 2);
    }

    #[test]
    fn build_rejects_loop_duplicate_isolated() {
        assert!(matches!(
            Graph::new(3, &[(0, 0), (1, 2)]),
            Err(Error::LoopEdge(0))
        ));
        assert!(matches!(
            Graph::new(3, &[(0, 1), (1, 0), (1, 2)]),
            Err(Error::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            Graph::new(3, &[(0, 1)]),
            Err(Error::IsolatedVertex(2))
        ));
        assert!(matches!(
            Graph::new(3, &[(0, 5)]),
            Err(Error::LabelOutOfRange { label: 5, .. })
        ));
    }

    #[test]
    fn drop_isolated_relabels() {
        let g = Graph::new_drop_isolated(4, &[(0, 3)]).unwrap();
        assert_eq!(g.n_vertices(), 2);
        assert_eq!(g.edges(), &[(0, 1)]);
        assert!(matches!(
            Graph::new_drop_isolated(3, &[]),
            Err(Error::EmptyAfterDrop)
        ));
    }

    #[test]
    fn degree_sum_is_twice_edges() {
        let g = pendant_triangle();
        let sum: u32 = g.degrees().iter().sum();
        assert_eq!(sum as usize, 2 * g.n_edges());
    }

    #[test]
    fn k4_laplacian_spectrum() {
        let spec = k4().spectrum(MatrixKind::NormalizedLaplacian).unwrap();
        assert_eq!(spec.groups.len(), 2);
        assert!((spec.groups[0].0).abs() < 1e-10);
        assert_eq!(spec.groups[0].1, 1);
        assert!((spec.groups[1].0 - 4.0 / 3.0).abs() < 1e-10);
        assert_eq!(spec.groups[1].1, 3);
    }

    #[test]
    fn p3_laplacian_spectrum() {
        // Closed-form 3x3 eigenproblem: spectrum {0, 1, 2}.
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let spec = g.spectrum(MatrixKind::NormalizedLaplacian).unwrap();
        for (got, want) in spec.eigenvalues.iter().zip([0.0, 1.0, 2.0]) {
            assert!((got - want).abs() < 1e-10);
        }
    }

    #[test]
    fn bipartite_spectrum() {
        // K_{3,3}: {0, 1, 2} with multiplicities (1, 4, 1).
        let edges: Vec<(u32, u32)> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        let g = Graph::new(6, &edges).unwrap();
        let spec = g.spectrum(MatrixKind::NormalizedLaplacian).unwrap();
        assert_eq!(spec.groups.len(), 3);
        assert_eq!(spec.groups[0].1, 1);
        assert_eq!(spec.groups[1].1, 4);
        assert_eq!(spec.groups[2].1, 1);
        assert!((spec.groups[1].0 - 1.0).abs() < 1e-10);
        assert!((spec.groups[2].0 - 2.0).abs() < 1e-10);
    }

    #[test]
    fn zero_multiplicity_counts_components() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let spec = g.spectrum(MatrixKind::NormalizedLaplacian).unwrap();
        assert_eq!(spec.multiplicity_of(0.0, 1e-8), g.components().len());
    }

    #[test]
    fn edge_count_examples() {
        let g = k3();
        assert_eq!(g.edge_count(&[0, 1], &[2]).unwrap(), 2);
        assert_eq!(g.edge_count(&[], &[0, 1, 2]).unwrap(), 0);
        let fig = pendant_triangle();
        assert_eq!(fig.edge_count(&[0, 1, 2], &[3, 4, 5]).unwrap(), 3);
        // Symmetry in (S, T).
        assert_eq!(
            fig.edge_count(&[0, 3], &[1, 2]).unwrap(),
            fig.edge_count(&[1, 2], &[0, 3]).unwrap()
        );
    }

    #[test]
    fn edge_expansion_examples() {
        let fig = pendant_triangle();
        let s = [0u32, 1, 2];
        let sbar = [3u32, 4, 5];
        assert!((fig.edge_expansion(&s).unwrap() - 1.0 / 3.0).abs() < 1e-12);
        assert!((fig.edge_expansion(&sbar).unwrap() - 1.0).abs() < 1e-12);
        let all: Vec<u32> = (0..6).collect();
        assert_eq!(fig.edge_expansion(&all).unwrap(), 0.0);
        // Any single vertex of K4: all incident edges cross.
        assert!((k4().edge_expansion(&[2]).unwrap() - 1.0).abs() < 1e-12);
        assert!(matches!(fig.edge_expansion(&[]), Err(Error::EmptySet)));
    }

    #[test]
    fn volume_identity() {
        // vol(S) = 2 E(S,S) + E(S, complement).
        let g = pendant_triangle();
        for s in [vec![0u32, 1], vec![0, 1, 2], vec![3], vec![0, 3, 4, 5]] {
            let sbar: Vec<u32> = (0..6).filter(|v| !s.contains(v)).collect();
            let vol = g.volume(&s).unwrap();
            let inner = g.edge_count(&s, &s).unwrap() as f64;
            let cross = g.edge_count(&s, &sbar).unwrap() as f64;
            assert_eq!(vol, 2.0 * inner + cross);
        }
    }

    #[test]
    fn phi_k_disconnected_is_zero() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let (v, witness) = g.phi_k_exact(2, EXACT_LIMIT_BASE).unwrap();
        assert_eq!(v, 0.0);
        assert_eq!(witness.len(), 2);
    }

    #[test]
    fn phi_2_k4_matches_brute_force() {
        // Independent oracle: minimum over all disjoint nonempty subset
        // pairs of max expansion, by direct enumeration.
        let g = k4();
        let mut best = f64::INFINITY;
        for a in 1u32..16 {
            for b in 1u32..16 {
                if a & b != 0 {
                    continue;
                }
                let sa = mask_to_set(a);
                let sb = mask_to_set(b);
                let val = g
                    .edge_expansion(&sa)
                    .unwrap()
                    .max(g.edge_expansion(&sb).unwrap());
                best = best.min(val);
            }
        }
        let (v, _) = g.phi_k_exact(2, EXACT_LIMIT_BASE).unwrap();
        assert!((v - best).abs() < 1e-12);
        // Attained by the two disjoint 2-sets: cut 4 over volume 6. Note the
        // inequality mu_2 = 4/3 <= 2 phi_2 is tight here.
        assert!((v - 2.0 / 3.0).abs() < 1e-12, "phi_2(K4) = {v}");
    }

    #[test]
    fn phi_k_rejects_bad_k_and_size() {
        let g = k4();
        assert!(matches!(
            g.phi_k_exact(5, EXACT_LIMIT_BASE),
            Err(Error::InvalidK { .. })
        ));
        let big = Graph::new(14, &(0..13).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap();
        assert!(matches!(
            big.phi_k_exact(2, EXACT_LIMIT_BASE),
            Err(Error::TooLargeForExact { .. })
        ));
    }

    #[test]
    fn figure_graph_phi2_matches_brute_force() {
        // Every subset of the complement of the triangle has expansion 1,
        // so pairs through the triangle witness only phi_2 <= 1; the true
        // optimum (cross-checked by enumeration) pairs two pendant wedges.
        let g = pendant_triangle();
        let mut best = f64::INFINITY;
        for a in 1u32..64 {
            for b in 1u32..64 {
                if a & b != 0 {
                    continue;
                }
                let val = g
                    .edge_expansion(&mask_to_set(a))
                    .unwrap()
                    .max(g.edge_expansion(&mask_to_set(b)).unwrap());
                best = best.min(val);
            }
        }
        let (v, _) = g.phi_k_exact(2, EXACT_LIMIT_BASE).unwrap();
        assert!((v - best).abs() < 1e-12);
        assert!((v - 0.5).abs() < 1e-12, "phi_2 = {v}");
    }

    #[test]
    fn heuristic_is_upper_bound_of_exact() {
        let g = pendant_triangle();
        for k in 2..=3 {
            let (exact, _) = g.phi_k_exact(k, EXACT_LIMIT_BASE).unwrap();
            let (ub, witness) = g.phi_k_heuristic(k).unwrap();
            assert!(ub + 1e-12 >= exact, "k={k}: ub {ub} < exact {exact}");
            assert_eq!(witness.len(), k);
        }
    }

    #[test]
    fn cheeger_check_two_triangles() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let rep = g.cheeger_check(2, EXACT_LIMIT_BASE).unwrap();
        assert!(rep.all_ok());
        let row = &rep.rows[0];
        assert!(row.mu_k.abs() < 1e-10);
        assert_eq!(row.phi_k, 0.0);
    }

    #[test]
    fn cheeger_check_k4() {
        let rep = k4().cheeger_check(2, EXACT_LIMIT_BASE).unwrap();
        let row = &rep.rows[0];
        assert!((row.mu_k - 4.0 / 3.0).abs() < 1e-10);
        assert!(row.ok);
    }

    #[test]
    fn partition_bound_components() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let p = Partition::new(6, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let b = g.partition_spectral_bound(&p, 2).unwrap();
        assert_eq!(b.bound, 0.0);
        assert!(b.mu_k.abs() < 1e-10);
        assert!(b.ok);
    }

    #[test]
    fn partition_validation() {
        assert!(matches!(
            Partition::new(4, vec![vec![0, 1], vec![1, 2]]),
            Err(Error::OverlappingBlocks(1))
        ));
        assert!(matches!(
            Partition::new(4, vec![vec![0], vec![]]),
            Err(Error::EmptyBlock)
        ));
        let p = Partition::new(4, vec![vec![0, 3], vec![1, 2]]).unwrap();
        assert!(p.covers);
        let q = Partition::new(4, vec![vec![0, 3]]).unwrap();
        assert!(!q.covers);
    }

    #[test]
    fn product_k3_by_k3() {
        let g = k3().product_power(2).unwrap();
        assert_eq!(g.n_vertices(), 9);
        assert!(g.degrees().iter().all(|&d| d == 4));
    }

    #[test]
    fn hypercube_q3_as_product() {
        let k2 = Graph::new(2, &[(0, 1)]).unwrap();
        let q3 = k2.product_power(3).unwrap();
        assert_eq!(q3.n_vertices(), 8);
        assert_eq!(q3.n_edges(), 12);
        assert!(q3.degrees().iter().all(|&d| d == 3));
    }

    #[test]
    fn product_power_spectrum_is_mean_composition() {
        // For a regular base graph, the normalized Laplacian spectrum of
        // the m-th Cartesian power is the multiset of m-fold averages of
        // base eigenvalues.
        let bases = [
            k4(),
            Graph::new(
                6,
                &(0..3)
                    .flat_map(|a| (3..6).map(move |b| (a, b)))
                    .collect::<Vec<_>>(),
            )
            .unwrap(),
        ];
        for base in bases {
            let mus = base
                .spectrum(MatrixKind::NormalizedLaplacian)
                .unwrap()
                .eigenvalues;
            let product = base.product_power(2).unwrap();
            let got = product
                .spectrum(MatrixKind::NormalizedLaplacian)
                .unwrap()
                .eigenvalues;
            let mut want: Vec<f64> = mus
                .iter()
                .flat_map(|a| mus.iter().map(move |b| (a + b) / 2.0))
                .collect();
            want.sort_by(|a, b| a.total_cmp(b));
            assert_eq!(got.len(), want.len());
            for (g, w) in got.iter().zip(&want) {
                assert!((g - w).abs() < 1e-8, "composed {w} vs computed {g}");
            }
        }
    }

    #[test]
    fn adjacency_trace_identity() {
        // Sum of squared adjacency eigenvalues equals 2|E|.
        let g = pendant_triangle();
        let spec = g.spectrum(MatrixKind::Adjacency).unwrap();
        let sum_sq: f64 = spec.eigenvalues.iter().map(|l| l * l).sum();
        assert!((sum_sq - 2.0 * g.n_edges() as f64).abs() < 1e-8);
    }
}
