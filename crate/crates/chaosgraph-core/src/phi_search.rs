//! Multiway edge-expansion search, shared by graphs and hypergraphs.
//!
//! The exact path enumerates k pairwise disjoint nonempty vertex subsets by
//! a lowest-bit subset DP over bitmasks, O(k 3^n), and returns the true
//! minimum of `max_i phi(S_i)` with an attaining family. The heuristic path
//! sweeps the lowest eigenvectors of the normalized Laplacian and returns an
//! upper bound, never asserted optimal.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::spectral::symmetric_eigenpairs;

/// Default exact-search vertex limit for k <= 3; two less for k >= 4.
pub const EXACT_LIMIT_BASE: usize = 12;

pub fn exact_limit_for(k: usize, base: usize) -> usize {
    if k <= 3 {
        base
    } else {
        base.saturating_sub(2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhiMode {
    Exact,
    UpperBound,
}

/// phi(S) for every nonempty subset mask of an n-vertex ground set.
///
/// `cut_weight(mask)` is the boundary weight of the set, `vol(mask)` its
/// volume; both are evaluated once per mask.
pub(crate) fn phi_table(
    n: usize,
    cut_weight: impl Fn(u32) -> f64,
    vol: impl Fn(u32) -> f64,
) -> Vec<f64> {
    let size = 1usize << n;
    let mut phi = vec![f64::INFINITY; size];
    for mask in 1..size as u32 {
        phi[mask as usize] = cut_weight(mask) / vol(mask);
    }
    phi
}

/// Exact phi_k with witness masks: min over k disjoint nonempty subsets of
/// the maximum expansion.
pub(crate) fn phi_k_exact_from_table(phi: &[f64], n: usize, k: usize) -> (f64, Vec<u32>) {
    let size = 1usize << n;
    debug_assert_eq!(phi.len(), size);
    // dp[j][mask]: best achievable max-phi placing j disjoint sets inside mask.
    let mut dp = vec![vec![f64::INFINITY; size]; k + 1];
    let mut parent = vec![vec![0u32; size]; k + 1];
    dp[0].iter_mut().for_each(|v| *v = 0.0);
    for j in 1..=k {
        for mask in 1u32..size as u32 {
            let low = mask & mask.wrapping_neg();
            let rest = mask ^ low;
            // Skip the lowest vertex entirely.
            let mut best = dp[j][rest as usize];
            let mut best_choice = 0u32;
            // Or put it in a chosen set: S = low | sub, sub subset of rest.
            let mut sub = rest;
            loop {
                let s = sub | low;
                let prev = dp[j - 1][(mask ^ s) as usize];
                let val = phi[s as usize].max(prev);
                if val < best {
                    best = val;
                    best_choice = s;
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
            dp[j][mask as usize] = best;
            parent[j][mask as usize] = best_choice;
        }
    }
    // Retrace the witness.
    let full = (size - 1) as u32;
    let mut witness = Vec::with_capacity(k);
    let (mut j, mut mask) = (k, full);
    while j > 0 {
        let choice = parent[j][mask as usize];
        if choice == 0 {
            let low = mask & mask.wrapping_neg();
            mask ^= low;
        } else {
            witness.push(choice);
            mask ^= choice;
            j -= 1;
        }
    }
    witness.reverse();
    (dp[k][full as usize], witness)
}

/// min over 0 < |S| <= n/2 of phi(S).
pub(crate) fn phi_tilde2_from_table(phi: &[f64], n: usize) -> f64 {
    let half = n / 2;
    let mut best = f64::INFINITY;
    for mask in 1u32..(1u32 << n) {
        if (mask.count_ones() as usize) <= half {
            best = best.min(phi[mask as usize]);
        }
    }
    best
}

pub(crate) fn mask_to_set(mask: u32) -> Vec<u32> {
    (0..32).filter(|&b| mask >> b & 1 == 1).collect()
}

/// Inputs for the spectral sweep heuristic.
pub(crate) struct SweepInput<'a> {
    pub n: usize,
    pub laplacian: DMatrix<f64>,
    /// Weighted degrees (volume contribution of each vertex).
    pub degrees: Vec<f64>,
    /// Expansion of a set given its membership vector.
    pub phi_of: &'a dyn Fn(&[bool]) -> f64,
    pub components: Vec<Vec<u32>>,
}

pub(crate) struct SweepResult {
    pub value: f64,
    pub witness: Vec<Vec<u32>>,
    /// True when the witness sets partition the whole vertex set.
    pub is_partition: bool,
}

fn eval_family(input: &SweepInput, family: &[Vec<u32>]) -> f64 {
    let mut worst = 0f64;
    let mut member = vec![false; input.n];
    for set in family {
        member.iter_mut().for_each(|m| *m = false);
        for &v in set {
            member[v as usize] = true;
        }
        worst = worst.max((input.phi_of)(&member));
    }
    worst
}

/// Upper bound on phi_k by sweep cuts over the k lowest Laplacian
/// eigenvectors, plus contiguous segmentations of the Fiedler order.
pub(crate) fn sweep_phi_k(input: &SweepInput, k: usize) -> Result<SweepResult> {
    let n = input.n;
    if k < 2 || k > n {
        return Err(Error::InvalidK { k, max: n });
    }
    // k components with zero boundary are optimal outright.
    if input.components.len() >= k {
        let mut comps = input.components.clone();
        comps.sort_by_key(|c| c.len());
        comps.truncate(k);
        let is_partition = input.components.len() == k;
        let witness: Vec<Vec<u32>> = if is_partition {
            input.components.clone()
        } else {
            comps
        };
        return Ok(SweepResult {
            value: 0.0,
            witness,
            is_partition,
        });
    }

    fn consider(best: &mut Option<SweepResult>, value: f64, witness: Vec<Vec<u32>>, part: bool) {
        if best.as_ref().is_none_or(|b| value < b.value) {
            *best = Some(SweepResult {
                value,
                witness,
                is_partition: part,
            });
        }
    }

    let (_, vecs) = symmetric_eigenpairs(&input.laplacian)?;
    let n_vecs = k.min(n - 1);
    let mut best: Option<SweepResult> = None;

    for col in 1..=n_vecs {
        // Order vertices by the D^{-1/2}-scaled eigenvector coordinate.
        let mut order: Vec<u32> = (0..n as u32).collect();
        let coord: Vec<f64> = (0..n)
            .map(|v| vecs[(v, col)] / input.degrees[v].sqrt())
            .collect();
        order.sort_by(|&a, &b| coord[a as usize].total_cmp(&coord[b as usize]));

        if k == 2 {
            // Classic prefix sweep: best max(phi(P), phi(complement)).
            let mut member = vec![false; n];
            for i in 0..n - 1 {
                member[order[i] as usize] = true;
                let phi_p = (input.phi_of)(&member);
                let inv: Vec<bool> = member.iter().map(|&b| !b).collect();
                let phi_c = (input.phi_of)(&inv);
                let val = phi_p.max(phi_c);
                if best.as_ref().is_none_or(|b| val < b.value) {
                    let p: Vec<u32> = order[..=i].to_vec();
                    let c: Vec<u32> = order[i + 1..].to_vec();
                    consider(&mut best, val, vec![p, c], true);
                }
            }
        }

        // Contiguous k-segmentations: equal count and equal volume.
        for equal_volume in [false, true] {
            let mut cuts = Vec::with_capacity(k + 1);
            cuts.push(0usize);
            if equal_volume {
                let total: f64 = input.degrees.iter().sum();
                let mut acc = 0.0;
                let mut next = 1;
                for (i, &v) in order.iter().enumerate() {
                    acc += input.degrees[v as usize];
                    if next < k && acc >= total * next as f64 / k as f64 {
                        // Keep at least one vertex per segment.
                        if i + 1 > cuts[next - 1] && n - (i + 1) >= k - next {
                            cuts.push(i + 1);
                            next += 1;
                        }
                    }
                }
                if cuts.len() < k {
                    continue;
                }
            } else {
                for j in 1..k {
                    cuts.push(j * n / k);
                }
                if cuts.windows(2).any(|w| w[0] == w[1]) {
                    continue;
                }
            }
            cuts.push(n);
            let family: Vec<Vec<u32>> = cuts
                .windows(2)
                .map(|w| order[w[0]..w[1]].to_vec())
                .collect();
            if family.iter().any(|s| s.is_empty()) {
                continue;
            }
            let val = eval_family(input, &family);
            consider(&mut best, val, family, true);
        }
    }

    best.ok_or(Error::InvalidK { k, max: n })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_phi_k_on_two_triangles() {
        // Two disjoint triangles: phi_2 = 0 attained by the components.
        let adj: [u32; 6] = [0b000110, 0b000101, 0b000011, 0b110000, 0b101000, 0b011000];
        let deg = [2.0; 6];
        let phi = phi_table(
            6,
            |mask| {
                (0..6)
                    .filter(|&v| mask >> v & 1 == 1)
                    .map(|v| (adj[v] & !mask).count_ones() as f64)
                    .sum()
            },
            |mask| (0..6).filter(|&v| mask >> v & 1 == 1).map(|v| deg[v]).sum(),
        );
        let (value, witness) = phi_k_exact_from_table(&phi, 6, 2);
        assert_eq!(value, 0.0);
        assert_eq!(witness.len(), 2);
        assert_eq!(witness[0] | witness[1], 0b111111);
    }

    #[test]
    fn witness_masks_are_disjoint() {
        // Path P4: check the DP returns disjoint nonempty sets for k = 3.
        let adj: [u32; 4] = [0b0010, 0b0101, 0b1010, 0b0100];
        let deg = [1.0, 2.0, 2.0, 1.0];
        let phi = phi_table(
            4,
            |mask| {
                (0..4)
                    .filter(|&v| mask >> v & 1 == 1)
                    .map(|v| (adj[v] & !mask).count_ones() as f64)
                    .sum()
            },
            |mask| (0..4).filter(|&v| mask >> v & 1 == 1).map(|v| deg[v]).sum(),
        );
        let (value, witness) = phi_k_exact_from_table(&phi, 4, 3);
        assert!(value.is_finite());
        assert_eq!(witness.len(), 3);
        for i in 0..3 {
            assert!(witness[i] != 0);
            for j in i + 1..3 {
                assert_eq!(witness[i] & witness[j], 0);
            }
        }
    }
}
