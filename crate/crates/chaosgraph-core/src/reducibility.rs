//! Candidate box reductions: variance captured by disjoint blocks, family
//! trend evaluation, spectral irreducibility certificates, partial
//! reductions on a vertex subset, and the quantitative grid bound.

use serde::{Deserialize, Serialize};

use crate::constructions::GridLayout;
use crate::error::{Error, Result};
use crate::graph::{Graph, Partition};
use crate::homsum::HomogeneousSum;
use crate::hypergraph::WeightedHypergraph;
use crate::rng::SplitMix64;
use crate::spectral::MatrixKind;

/// Default certificate threshold on the min over family members of mu_k.
pub const CERTIFICATE_THRESHOLD: f64 = 1e-3;
/// Family verdict thresholds: captured fraction at the largest member.
pub const FAMILY_CAPTURED_MIN: f64 = 0.95;
/// Family verdict thresholds: max box fraction at the largest member.
pub const FAMILY_MAX_BOX: f64 = 0.05;

/// Variance contribution of a vertex set: d! times the weight of support
/// tuples entirely inside B.
pub fn sigma2(z: &HomogeneousSum, block: &[u32]) -> Result<f64> {
    let n = z.n_vertices();
    let mut member = vec![false; n];
    for &v in block {
        if v as usize >= n {
            return Err(Error::LabelOutOfRange { label: v, n });
        }
        member[v as usize] = true;
    }
    let d_fact: f64 = (1..=z.order()).map(|i| i as f64).product();
    Ok(d_fact
        * d_fact
        * z.terms()
            .iter()
            .filter(|(verts, _)| verts.iter().all(|&v| member[v as usize]))
            .map(|(_, q)| q * q)
            .sum::<f64>())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockRow {
    pub block: usize,
    pub sigma2: f64,
    /// Volume in the canonical weighted hypergraph (sum of weighted
    /// degrees).
    pub vol: f64,
    /// Edge expansion of the block; zero when the block carries no support.
    pub phi: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReducibilityReport {
    pub m: usize,
    pub variance: f64,
    /// sum_i sigma2(B_i) / variance.
    pub captured_fraction: f64,
    /// max_i sigma2(B_i) / variance.
    pub max_box_fraction: f64,
    pub per_block: Vec<BlockRow>,
}

/// Evaluate a candidate box system against the reducibility conditions.
pub fn evaluate_partition(z: &HomogeneousSum, p: &Partition) -> Result<ReducibilityReport> {
    if p.n != z.n_vertices() {
        return Err(Error::InvalidInput(format!(
            "partition is over {} vertices, sum over {}",
            p.n,
            z.n_vertices()
        )));
    }
    let n = z.n_vertices();
    // Weighted degrees of the canonical hypergraph.
    let mut degree = vec![0f64; n];
    for (verts, q) in z.terms() {
        let w = q * q;
        for &v in verts {
            degree[v as usize] += w;
        }
    }
    // Block id per vertex; usize::MAX = uncovered.
    let mut owner = vec![usize::MAX; n];
    for (i, block) in p.blocks.iter().enumerate() {
        for &v in block {
            owner[v as usize] = i;
        }
    }
    let m = p.blocks.len();
    let mut sigma = vec![0f64; m];
    let mut boundary = vec![0f64; m];
    for (verts, q) in z.terms() {
        let w = q * q;
        let first = owner[verts[0] as usize];
        let internal =
            first != usize::MAX && verts[1..].iter().all(|&v| owner[v as usize] == first);
        if internal {
            sigma[first] += w;
        } else {
            // Boundary edge of every block it touches.
            let mut touched: Vec<usize> = verts
                .iter()
                .map(|&v| owner[v as usize])
                .filter(|&o| o != usize::MAX)
                .collect();
            touched.sort_unstable();
            touched.dedup();
            for b in touched {
                boundary[b] += w;
            }
        }
    }
    let d_fact: f64 = (1..=z.order()).map(|i| i as f64).product();
    let variance = z.variance();
    let per_block: Vec<BlockRow> = (0..m)
        .map(|i| {
            let vol: f64 = p.blocks[i].iter().map(|&v| degree[v as usize]).sum();
            BlockRow {
                block: i,
                sigma2: d_fact * d_fact * sigma[i],
                vol,
                phi: if vol > 0.0 { boundary[i] / vol } else { 0.0 },
            }
        })
        .collect();
    let total: f64 = per_block.iter().map(|b| b.sigma2).sum();
    let max: f64 = per_block.iter().map(|b| b.sigma2).fold(0.0, f64::max);
    Ok(ReducibilityReport {
        m,
        variance,
        captured_fraction: total / variance,
        max_box_fraction: max / variance,
        per_block,
    })
}

/// Exact L2 gap between the normalized sum and its box-restricted version:
/// E[(Z~ - T~)^2] = 1 - captured fraction.
pub fn restricted_sum_gap(z: &HomogeneousSum, p: &Partition) -> Result<f64> {
    Ok(1.0 - evaluate_partition(z, p)?.captured_fraction)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyVerdict {
    /// Monotone trends and thresholds met at the largest member.
    ReducibleEvidence,
    /// Monotone trends in the right direction, thresholds not yet met.
    TrendsOnly,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyRow {
    pub n: usize,
    pub m: usize,
    pub captured: f64,
    pub max_box: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyReport {
    pub rows: Vec<FamilyRow>,
    pub verdict: FamilyVerdict,
}

/// Trend evaluation across family members ordered by increasing n. The
/// verdict is evidence, not a limit statement: it requires at least three
/// members, monotone trends, and the thresholds at the largest member.
pub fn family_trend(rows: Vec<FamilyRow>) -> FamilyReport {
    family_trend_with(rows, FAMILY_CAPTURED_MIN, FAMILY_MAX_BOX)
}

/// [`family_trend`] with caller-chosen verdict thresholds.
pub fn family_trend_with(
    rows: Vec<FamilyRow>,
    captured_min: f64,
    max_box_max: f64,
) -> FamilyReport {
    let verdict = if rows.len() < 3 {
        FamilyVerdict::Inconclusive
    } else {
        let monotone = rows.windows(2).all(|w| {
            w[1].captured >= w[0].captured - 1e-12 && w[1].max_box <= w[0].max_box + 1e-12
        });
        let growing_m = rows.windows(2).all(|w| w[1].m >= w[0].m);
        let last = rows.last().unwrap();
        if monotone && growing_m {
            if last.captured >= captured_min && last.max_box <= max_box_max {
                FamilyVerdict::ReducibleEvidence
            } else {
                FamilyVerdict::TrendsOnly
            }
        } else {
            FamilyVerdict::Inconclusive
        }
    };
    FamilyReport { rows, verdict }
}

/// One member of a spectral-certificate family.
pub enum SpectrumSource {
    Graph(Graph),
    Hypergraph(WeightedHypergraph),
}

impl SpectrumSource {
    fn mu_k(&self, k: usize) -> Result<(usize, f64)> {
        let spec = match self {
            SpectrumSource::Graph(g) => g.spectrum(MatrixKind::NormalizedLaplacian)?,
            SpectrumSource::Hypergraph(h) => h.spectrum(MatrixKind::NormalizedLaplacian)?,
        };
        if k > spec.n() {
            return Err(Error::InvalidK { k, max: spec.n() });
        }
        Ok((spec.n(), spec.mu(k)))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateMember {
    pub label: String,
    pub n_vertices: usize,
    pub mu_k: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateReport {
    pub k: usize,
    pub threshold: f64,
    pub members: Vec<CertificateMember>,
    /// min over members of mu_k: an empirical liminf proxy.
    pub proxy: f64,
    pub granted: bool,
    /// The certificate is evidence over the provided members only.
    pub note: String,
}

/// Per-member mu_k with the min as a liminf proxy; the certificate is
/// granted when the proxy clears the threshold.
pub fn spectral_certificate(
    members: &[(String, SpectrumSource)],
    k: usize,
    threshold: f64,
) -> Result<CertificateReport> {
    if members.is_empty() {
        return Err(Error::FamilyTooSmall(1, 0));
    }
    let mut rows = Vec::with_capacity(members.len());
    for (label, src) in members {
        let (n_vertices, mu_k) = src.mu_k(k)?;
        rows.push(CertificateMember {
            label: label.clone(),
            n_vertices,
            mu_k,
        });
    }
    let proxy = rows.iter().map(|r| r.mu_k).fold(f64::INFINITY, f64::min);
    Ok(CertificateReport {
        k,
        threshold,
        proxy,
        granted: proxy >= threshold,
        members: rows,
        note: "finite-family evidence, not a limit proof".into(),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartialReductionReport {
    /// vol(V') / vol(V): the rho proxy.
    pub vol_fraction: f64,
    /// E(V', complement) / |edges|.
    pub boundary_fraction: f64,
    /// (E(V',V') - sum_i E(B_i,B_i)) / |edges|: inside-V' mass the blocks
    /// fail to capture.
    pub deficit_fraction: f64,
    /// max_i E(B_i,B_i) / |edges|.
    pub max_block_fraction: f64,
    pub m: usize,
}

/// Evaluate a partial reduction: blocks partitioning a subset V' that is
/// supposed to carry a positive volume fraction while being loosely
/// connected to its complement.
pub fn partial_reduction_eval(
    g: &Graph,
    vprime: &[u32],
    blocks: &[Vec<u32>],
) -> Result<PartialReductionReport> {
    let n = g.n_vertices();
    let mut in_vprime = vec![false; n];
    for &v in vprime {
        if v as usize >= n {
            return Err(Error::LabelOutOfRange { label: v, n });
        }
        in_vprime[v as usize] = true;
    }
    let mut owner = vec![usize::MAX; n];
    for (i, block) in blocks.iter().enumerate() {
        if block.is_empty() {
            return Err(Error::EmptyBlock);
        }
        for &v in block {
            if v as usize >= n {
                return Err(Error::LabelOutOfRange { label: v, n });
            }
            if !in_vprime[v as usize] {
                return Err(Error::BlocksNotInVprime(v));
            }
            if owner[v as usize] != usize::MAX {
                return Err(Error::OverlappingBlocks(v));
            }
            owner[v as usize] = i;
        }
    }
    if vprime.iter().any(|&v| owner[v as usize] == usize::MAX) {
        return Err(Error::InvalidInput(
            "blocks must partition all of V'".into(),
        ));
    }
    let edges_total = g.n_edges() as f64;
    let mut boundary = 0usize;
    let mut internal_vprime = 0usize;
    let mut per_block = vec![0usize; blocks.len()];
    for &(u, v) in g.edges() {
        let (u, v) = (u as usize, v as usize);
        match (in_vprime[u], in_vprime[v]) {
            (true, true) => {
                internal_vprime += 1;
                if owner[u] == owner[v] {
                    per_block[owner[u]] += 1;
                }
            }
            (true, false) | (false, true) => boundary += 1,
            (false, false) => {}
        }
    }
    let captured: usize = per_block.iter().sum();
    Ok(PartialReductionReport {
        vol_fraction: g.volume(vprime)? / g.total_volume(),
        boundary_fraction: boundary as f64 / edges_total,
        deficit_fraction: (internal_vprime - captured) as f64 / edges_total,
        max_block_fraction: per_block.iter().copied().max().unwrap_or(0) as f64 / edges_total,
        m: blocks.len(),
    })
}

/// Default slack coefficient for the grid bound at side length n:
/// 0.15 at n = 60, shrinking like 1/sqrt(n).
pub fn grid_slack_default(n: usize) -> f64 {
    1.1619 / (n as f64).sqrt()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridBoundRow {
    pub label: String,
    pub captured: f64,
    pub max_box: f64,
    /// captured >= (4 beta^2 - eta) n^3.
    pub meets_capture: bool,
    /// max_box >= (2 beta^2 (2 beta - 1) - slack) n^3; only asserted for
    /// candidates meeting the capture precondition.
    pub bound_holds: Option<bool>,
    pub capture_margin: f64,
    pub box_margin: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridBoundReport {
    pub n: usize,
    pub beta: f64,
    pub eta: f64,
    pub slack: f64,
    /// True when beta <= 1/2: nothing is asserted.
    pub out_of_scope: bool,
    pub rows: Vec<GridBoundRow>,
    /// Every capture-qualified candidate satisfied the box bound.
    pub ok: bool,
}

/// Quantitative grid bound: any candidate capturing (4 beta^2 - eta) n^3 of
/// variance must concentrate (2 beta^2 (2 beta - 1) - slack) n^3 in one box.
pub fn grid_bound_check(
    layout: &GridLayout,
    candidates: &[(String, Partition)],
    eta: f64,
    slack: f64,
) -> Result<GridBoundReport> {
    let n = layout.n;
    let beta = layout.beta;
    if beta <= 0.5 {
        return Ok(GridBoundReport {
            n,
            beta,
            eta,
            slack,
            out_of_scope: true,
            rows: Vec::new(),
            ok: true,
        });
    }
    let z = crate::constructions::grid_homsum(layout)?;
    let n3 = (n * n * n) as f64;
    let capture_threshold = (4.0 * beta * beta - eta) * n3;
    let box_threshold = (2.0 * beta * beta * (2.0 * beta - 1.0) - slack) * n3;
    let mut rows = Vec::with_capacity(candidates.len());
    let mut ok = true;
    for (label, p) in candidates {
        let rep = evaluate_partition(&z, p)?;
        let captured = rep.captured_fraction * rep.variance;
        let max_box = rep.max_box_fraction * rep.variance;
        let meets_capture = captured >= capture_threshold;
        let bound_holds = meets_capture.then_some(max_box >= box_threshold);
        if bound_holds == Some(false) {
            ok = false;
        }
        rows.push(GridBoundRow {
            label: label.clone(),
            captured,
            max_box,
            meets_capture,
            bound_holds,
            capture_margin: captured - capture_threshold,
            box_margin: max_box - box_threshold,
        });
    }
    Ok(GridBoundReport {
        n,
        beta,
        eta,
        slack,
        out_of_scope: false,
        rows,
        ok,
    })
}

// --- Named box systems -------------------------------------------------

/// Hypercube boxes fixing the first h coordinates (top h bits of the
/// product labeling): 2^h blocks of 2^(n-h) vertices.
pub fn hypercube_boxes(n_bits: usize, h: usize) -> Result<Partition> {
    if h >= n_bits {
        return Err(Error::InvalidInput(format!(
            "need h < n, got h = {h}, n = {n_bits}"
        )));
    }
    let shift = n_bits - h;
    let mut blocks = vec![Vec::with_capacity(1 << shift); 1 << h];
    for v in 0..(1u32 << n_bits) {
        blocks[(v >> shift) as usize].push(v);
    }
    Partition::new(1 << n_bits, blocks)
}

/// Rows {a} x [n] of a square vertex set [n]^2 (first coordinate fixed).
pub fn row_blocks(n: usize) -> Result<Partition> {
    let nu = n as u32;
    let blocks = (0..nu)
        .map(|a| (0..nu).map(|b| a * nu + b).collect())
        .collect();
    Partition::new(n * n, blocks)
}

/// Columns [n] x {b} of a square vertex set (second coordinate fixed).
pub fn column_blocks(n: usize) -> Result<Partition> {
    let nu = n as u32;
    let blocks = (0..nu)
        .map(|b| (0..nu).map(|a| a * nu + b).collect())
        .collect();
    Partition::new(n * n, blocks)
}

/// k x k rectangular tiles of [n]^2, sides as equal as possible.
pub fn kxk_blocks(n: usize, k: usize) -> Result<Partition> {
    if k < 1 || k > n {
        return Err(Error::InvalidK { k, max: n });
    }
    let cut = |i: usize| i * n / k;
    let nu = n as u32;
    let mut blocks = Vec::with_capacity(k * k);
    for bi in 0..k {
        for bj in 0..k {
            let mut block = Vec::new();
            for a in cut(bi)..cut(bi + 1) {
                for b in cut(bj)..cut(bj + 1) {
                    block.push(a as u32 * nu + b as u32);
                }
            }
            blocks.push(block);
        }
    }
    Partition::new(n * n, blocks)
}

/// The trivial blocks of the disjoint-products sum: m blocks of d fresh
/// labels each.
pub fn disjoint_block_partition(n_blocks: usize, d: usize) -> Result<Partition> {
    let blocks = (0..n_blocks as u32)
        .map(|i| (i * d as u32..(i + 1) * d as u32).collect())
        .collect();
    Partition::new(n_blocks * d, blocks)
}

/// Seeded random partition into m balanced blocks (Fisher-Yates shuffle,
/// then round-robin split).
pub fn random_balanced_partition(n: usize, m: usize, seed: u64) -> Result<Partition> {
    if m < 1 || m > n {
        return Err(Error::InvalidM { m, n });
    }
    let mut perm: Vec<u32> = (0..n as u32).collect();
    let mut rng = SplitMix64::new(seed);
    for i in (1..n).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        perm.swap(i, j);
    }
    let mut blocks = vec![Vec::with_capacity(n / m + 1); m];
    for (i, v) in perm.into_iter().enumerate() {
        blocks[i % m].push(v);
    }
    Partition::new(n, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;

    #[test]
    fn sigma2_k3() {
        let g = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let z = HomogeneousSum::from_graph(&g);
        // One unordered edge inside {0,1}: sigma2 = 2 * |E cap B^2| = 4.
        assert_eq!(sigma2(&z, &[0, 1]).unwrap(), 4.0);
        assert_eq!(sigma2(&z, &[]).unwrap(), 0.0);
    }

    #[test]
    fn sigma2_grid_column() {
        // One full vertical selection set: 2 m(m-1) with m = floor(beta n).
        let layout = GridLayout::contiguous(10, 0.9).unwrap();
        let z = constructions::grid_homsum(&layout).unwrap();
        let column: Vec<u32> = (0..9).map(|b| 3 * 10 + b).collect();
        assert_eq!(sigma2(&z, &column).unwrap(), 2.0 * 9.0 * 8.0);
    }

    #[test]
    fn hypercube_boxes_fractions() {
        // Boxes fixing h coordinates capture (n-h)/n of the variance, each
        // box carrying 2^-h of that.
        let n = 12;
        let h = 3;
        let q = constructions::hypercube(n).unwrap();
        let z = HomogeneousSum::from_graph(&q);
        let p = hypercube_boxes(n, h).unwrap();
        let rep = evaluate_partition(&z, &p).unwrap();
        let expect_captured = (n - h) as f64 / n as f64;
        assert!((rep.captured_fraction - expect_captured).abs() < 1e-12);
        assert!((rep.max_box_fraction - expect_captured / (1 << h) as f64).abs() < 1e-12);
        assert_eq!(rep.m, 1 << h);
        // Gap = 1 - captured.
        let gap = restricted_sum_gap(&z, &p).unwrap();
        assert!((gap - (1.0 - expect_captured)).abs() < 1e-12);
    }

    #[test]
    fn gap_edge_cases() {
        let g = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let z = HomogeneousSum::from_graph(&g);
        let full = Partition::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(restricted_sum_gap(&z, &full).unwrap(), 0.0);
        let empty = Partition::new(3, vec![]).unwrap();
        assert_eq!(restricted_sum_gap(&z, &empty).unwrap(), 1.0);
    }

    #[test]
    fn disjoint_blocks_fully_captured() {
        let z = constructions::disjoint_blocks(10, 2).unwrap();
        let p = disjoint_block_partition(10, 2).unwrap();
        let rep = evaluate_partition(&z, &p).unwrap();
        assert!((rep.captured_fraction - 1.0).abs() < 1e-12);
        assert!((rep.max_box_fraction - 0.1).abs() < 1e-12);
    }

    #[test]
    fn rook_variant_k0_row_boxes() {
        let g = constructions::rook_variant(6, 0, true).unwrap();
        let z = HomogeneousSum::from_graph(&g);
        let p = row_blocks(6).unwrap();
        let rep = evaluate_partition(&z, &p).unwrap();
        assert!((rep.captured_fraction - 1.0).abs() < 1e-12);
        assert!((rep.max_box_fraction - 1.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn family_trend_verdicts() {
        let rows = vec![
            FamilyRow {
                n: 4,
                m: 4,
                captured: 0.90,
                max_box: 0.20,
            },
            FamilyRow {
                n: 8,
                m: 8,
                captured: 0.95,
                max_box: 0.10,
            },
            FamilyRow {
                n: 16,
                m: 16,
                captured: 0.99,
                max_box: 0.03,
            },
        ];
        assert_eq!(family_trend(rows).verdict, FamilyVerdict::ReducibleEvidence);
        let rows = vec![
            FamilyRow {
                n: 4,
                m: 4,
                captured: 0.50,
                max_box: 0.20,
            },
            FamilyRow {
                n: 8,
                m: 8,
                captured: 0.52,
                max_box: 0.10,
            },
            FamilyRow {
                n: 16,
                m: 16,
                captured: 0.55,
                max_box: 0.05,
            },
        ];
        assert_eq!(family_trend(rows).verdict, FamilyVerdict::TrendsOnly);
        let rows = vec![
            FamilyRow {
                n: 4,
                m: 4,
                captured: 0.99,
                max_box: 0.01,
            },
            FamilyRow {
                n: 8,
                m: 8,
                captured: 0.90,
                max_box: 0.10,
            },
            FamilyRow {
                n: 16,
                m: 16,
                captured: 0.95,
                max_box: 0.05,
            },
        ];
        assert_eq!(family_trend(rows).verdict, FamilyVerdict::Inconclusive);
    }

    #[test]
    fn certificate_rook_family() {
        let members: Vec<(String, SpectrumSource)> = [5usize, 10]
            .iter()
            .map(|&q| {
                (
                    format!("rook({q},2)"),
                    SpectrumSource::Graph(constructions::rook(q, 2).unwrap()),
                )
            })
            .collect();
        let rep = spectral_certificate(&members, 2, CERTIFICATE_THRESHOLD).unwrap();
        assert!(rep.granted);
        // mu_2 = q / (2(q-1)).
        assert!((rep.members[0].mu_k - 5.0 / 8.0).abs() < 1e-9);
        assert!((rep.proxy - 10.0 / 18.0).abs() < 1e-9);
    }

    #[test]
    fn partial_reduction_vprime_equals_v() {
        // V' = V reduces to an ordinary partition evaluation.
        let g = constructions::rook(4, 2).unwrap();
        let all: Vec<u32> = (0..16).collect();
        let p = row_blocks(4).unwrap();
        let rep = partial_reduction_eval(&g, &all, &p.blocks).unwrap();
        assert!((rep.vol_fraction - 1.0).abs() < 1e-12);
        assert_eq!(rep.boundary_fraction, 0.0);
        // Rows capture the horizontal half of the edges.
        assert!((rep.deficit_fraction - 0.5).abs() < 1e-12);
    }

    #[test]
    fn partial_reduction_small_components() {
        // union_with_isolated: V' = the small K_m components; blocks = the
        // components; zero boundary, zero deficit.
        let n = 6;
        let m = 4;
        let g = constructions::union_with_isolated(n, m).unwrap();
        let comps = g.components();
        let small: Vec<Vec<u32>> = comps.iter().filter(|c| c.len() == m).cloned().collect();
        assert_eq!(small.len(), 2 * (n - m));
        let vprime: Vec<u32> = small.iter().flatten().copied().collect();
        let rep = partial_reduction_eval(&g, &vprime, &small).unwrap();
        assert_eq!(rep.boundary_fraction, 0.0);
        assert_eq!(rep.deficit_fraction, 0.0);
        let expect_vol = (2 * (n - m) * m * (m - 1)) as f64 / g.total_volume();
        assert!((rep.vol_fraction - expect_vol).abs() < 1e-12);
    }

    #[test]
    fn partial_reduction_rejects_stray_blocks() {
        let g = constructions::rook(3, 2).unwrap();
        let vprime: Vec<u32> = (0..3).collect();
        let err = partial_reduction_eval(&g, &vprime, &[vec![0, 1, 2, 3]]);
        assert!(matches!(err, Err(Error::BlocksNotInVprime(3))));
    }

    #[test]
    fn grid_bound_single_block_holds() {
        // beta = 1 (rook case): the single full block trivially meets both
        // the capture precondition and the box bound. n must be large
        // enough that the exact count 4n^2(n-1) clears (4 - eta) n^3.
        let layout = GridLayout::contiguous(20, 1.0).unwrap();
        let all = Partition::new(400, vec![(0..400).collect()]).unwrap();
        let rep = grid_bound_check(&layout, &[("all".into(), all)], 0.3, 0.3).unwrap();
        assert!(!rep.out_of_scope);
        assert!(rep.rows[0].meets_capture);
        assert_eq!(rep.rows[0].bound_holds, Some(true));
        assert!(rep.ok);
    }

    #[test]
    fn grid_bound_out_of_scope_below_half() {
        let layout = GridLayout::contiguous(8, 0.4).unwrap();
        let rep = grid_bound_check(&layout, &[], 0.3, 0.3).unwrap();
        assert!(rep.out_of_scope);
    }

    #[test]
    fn named_partitions_shapes() {
        let p = kxk_blocks(6, 2).unwrap();
        assert_eq!(p.blocks.len(), 4);
        assert!(p.covers);
        let r = random_balanced_partition(20, 4, 1).unwrap();
        assert_eq!(r.blocks.len(), 4);
        assert!(r.blocks.iter().all(|b| b.len() == 5));
        // Deterministic per seed.
        let r2 = random_balanced_partition(20, 4, 1).unwrap();
        assert_eq!(r.blocks, r2.blocks);
    }
}
