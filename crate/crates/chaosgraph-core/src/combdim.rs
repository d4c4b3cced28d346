//! Combinatorial-dimension diagnostics: rectangle-intersection counts,
//! suprema of rectangle ratios (exact on tiny instances, greedy local
//! search otherwise), family-level exponent fits, and the max-degree check
//! for random supports.

use serde::{Deserialize, Serialize};

use crate::constructions::SupportSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::homsum::HomogeneousSum;
use crate::phi_search::PhiMode;
use crate::rng::SplitMix64;

/// Exact rectangle-sup vertex limits per order.
pub fn exact_rect_limit(d: usize) -> usize {
    match d {
        2 => 10,
        3 => 7,
        _ => 0,
    }
}

/// Rect-ratio growth slope above which a family is flagged as evidence of
/// an undefined dimension.
pub const GROWTH_SLOPE_FLAG: f64 = 0.1;
/// Bounded-ratio spread tolerance (max/min) for the consistent verdict.
pub const BOUNDED_SPREAD: f64 = 10.0;

/// The ordered support of a homogeneous sum as a raw tuple set.
pub fn homsum_support(z: &HomogeneousSum) -> SupportSet {
    let mut tuples = Vec::with_capacity(z.support_size());
    for (key, _) in z.terms() {
        permute(key, &mut |t| tuples.push(t.to_vec()));
    }
    tuples.sort();
    SupportSet {
        d: z.order(),
        n: z.n_vertices(),
        tuples,
    }
}

fn permute(key: &[u32], visit: &mut impl FnMut(&[u32])) {
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

fn check_sets(s: &SupportSet, rect: &[Vec<u32>]) -> Result<Vec<Vec<bool>>> {
    if rect.len() != s.d {
        return Err(Error::InvalidInput(format!(
            "need {} rectangle sides, got {}",
            s.d,
            rect.len()
        )));
    }
    rect.iter()
        .map(|side| {
            let mut member = vec![false; s.n];
            for &v in side {
                if v as usize >= s.n {
                    return Err(Error::LabelOutOfRange { label: v, n: s.n });
                }
                member[v as usize] = true;
            }
            Ok(member)
        })
        .collect()
}

/// |J cap (A_1 x ... x A_d)| by direct enumeration.
pub fn rectangle_count(s: &SupportSet, rect: &[Vec<u32>]) -> Result<usize> {
    let members = check_sets(s, rect)?;
    Ok(s.tuples
        .iter()
        .filter(|t| t.iter().zip(&members).all(|(&v, m)| m[v as usize]))
        .count())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RectRatio {
    /// sup (or best-found lower bound) of |J cap rect| / max_i |A_i|^alpha.
    pub value: f64,
    pub witness: Vec<Vec<u32>>,
    pub mode: PhiMode,
}

/// Supremum of the rectangle ratio at exponent `alpha`.
///
/// Exact mode enumerates every rectangle (all subset tuples); the heuristic
/// runs seeded greedy add/remove local search from axis, neighborhood and
/// random starts and reports an achieved lower bound with its witness.
pub fn rect_ratio_sup(s: &SupportSet, alpha: f64, exact: bool, seed: u64) -> Result<RectRatio> {
    if exact {
        let limit = exact_rect_limit(s.d);
        if s.n > limit {
            return Err(Error::TooLargeForExact { n: s.n, limit });
        }
        return Ok(rect_ratio_exact(s, alpha));
    }
    Ok(rect_ratio_greedy(s, alpha, seed))
}

fn ratio(count: usize, sizes: &[usize], alpha: f64) -> f64 {
    let max = sizes.iter().copied().max().unwrap_or(0);
    if max == 0 {
        return 0.0;
    }
    count as f64 / (max as f64).powf(alpha)
}

fn rect_ratio_exact(s: &SupportSet, alpha: f64) -> RectRatio {
    let nv = s.n;
    let full = (1u32 << nv) - 1;
    let mut best = (0.0f64, vec![0u32; s.d]);
    match s.d {
        2 => {
            let mut rows = vec![0u32; nv];
            for t in &s.tuples {
                rows[t[0] as usize] |= 1 << t[1];
            }
            for a1 in 1..=full {
                let mut cnt = vec![0usize; nv];
                for (u, &row) in rows.iter().enumerate() {
                    if a1 >> u & 1 == 1 {
                        let mut m = row;
                        while m != 0 {
                            let v = m.trailing_zeros() as usize;
                            cnt[v] += 1;
                            m &= m - 1;
                        }
                    }
                }
                for a2 in 1..=full {
                    let count: usize = (0..nv).filter(|&v| a2 >> v & 1 == 1).map(|v| cnt[v]).sum();
                    let sizes = [a1.count_ones() as usize, a2.count_ones() as usize];
                    let r = ratio(count, &sizes, alpha);
                    if r > best.0 {
                        best = (r, vec![a1, a2]);
                    }
                }
            }
        }
        3 => {
            for a1 in 1..=full {
                for a2 in 1..=full {
                    let mut cnt = vec![0usize; nv];
                    for t in &s.tuples {
                        if a1 >> t[0] & 1 == 1 && a2 >> t[1] & 1 == 1 {
                            cnt[t[2] as usize] += 1;
                        }
                    }
                    for a3 in 1..=full {
                        let count: usize =
                            (0..nv).filter(|&v| a3 >> v & 1 == 1).map(|v| cnt[v]).sum();
                        let sizes = [
                            a1.count_ones() as usize,
                            a2.count_ones() as usize,
                            a3.count_ones() as usize,
                        ];
                        let r = ratio(count, &sizes, alpha);
                        if r > best.0 {
                            best = (r, vec![a1, a2, a3]);
                        }
                    }
                }
            }
        }
        _ => unreachable!("exact limit is zero for d > 3"),
    }
    RectRatio {
        value: best.0,
        witness: best
            .1
            .iter()
            .map(|&m| (0..nv as u32).filter(|&v| m >> v & 1 == 1).collect())
            .collect(),
        mode: PhiMode::Exact,
    }
}

struct GreedyState<'a> {
    s: &'a SupportSet,
    alpha: f64,
    /// Tuple indices grouped by (axis, vertex value).
    by_coord: Vec<Vec<Vec<usize>>>,
    member: Vec<Vec<bool>>,
    sizes: Vec<usize>,
    count: usize,
}

impl<'a> GreedyState<'a> {
    fn new(s: &'a SupportSet, alpha: f64) -> Self {
        let mut by_coord = vec![vec![Vec::new(); s.n]; s.d];
        for (idx, t) in s.tuples.iter().enumerate() {
            for (axis, &v) in t.iter().enumerate() {
                by_coord[axis][v as usize].push(idx);
            }
        }
        Self {
            s,
            alpha,
            by_coord,
            member: vec![vec![false; s.n]; s.d],
            sizes: vec![0; s.d],
            count: 0,
        }
    }

    fn reset(&mut self, rect: &[Vec<u32>]) {
        for (axis, side) in rect.iter().enumerate() {
            self.member[axis].iter_mut().for_each(|m| *m = false);
            for &v in side {
                self.member[axis][v as usize] = true;
            }
            self.sizes[axis] = side.len();
        }
        self.count = self
            .s
            .tuples
            .iter()
            .filter(|t| {
                t.iter()
                    .enumerate()
                    .all(|(axis, &v)| self.member[axis][v as usize])
            })
            .count();
    }

    fn ratio(&self) -> f64 {
        ratio(self.count, &self.sizes, self.alpha)
    }

    /// Count of tuples through (axis, v) whose other coordinates are all
    /// inside the current rectangle.
    fn incident(&self, axis: usize, v: usize) -> usize {
        self.by_coord[axis][v]
            .iter()
            .filter(|&&idx| {
                self.s.tuples[idx]
                    .iter()
                    .enumerate()
                    .all(|(ax, &w)| ax == axis || self.member[ax][w as usize])
            })
            .count()
    }

    /// Steepest-ascent pass; returns true if any move improved the ratio.
    fn improve(&mut self) -> bool {
        let current = self.ratio();
        let mut best: Option<(f64, usize, usize)> = None;
        for axis in 0..self.s.d {
            for v in 0..self.s.n {
                let inside = self.member[axis][v];
                if inside && self.sizes[axis] == 1 {
                    continue;
                }
                // Count change if v is toggled on this axis.
                let delta = if inside {
                    // Removing v drops tuples through it.
                    -(self.incident(axis, v) as isize)
                } else {
                    self.member[axis][v] = true;
                    let d = self.incident(axis, v) as isize;
                    self.member[axis][v] = false;
                    d
                };
                let new_count = (self.count as isize + delta) as usize;
                let mut sizes = self.sizes.clone();
                sizes[axis] = if inside {
                    sizes[axis] - 1
                } else {
                    sizes[axis] + 1
                };
                let r = ratio(new_count, &sizes, self.alpha);
                if r > current + 1e-12 && best.is_none_or(|(br, _, _)| r > br + 1e-12) {
                    best = Some((r, axis, v));
                }
            }
        }
        if let Some((_, axis, v)) = best {
            let inside = self.member[axis][v];
            if inside {
                self.count -= self.incident(axis, v);
                self.member[axis][v] = false;
                self.sizes[axis] -= 1;
            } else {
                self.member[axis][v] = true;
                self.count += self.incident(axis, v);
                self.sizes[axis] += 1;
            }
            true
        } else {
            false
        }
    }

    fn rect(&self) -> Vec<Vec<u32>> {
        self.member
            .iter()
            .map(|m| (0..self.s.n as u32).filter(|&v| m[v as usize]).collect())
            .collect()
    }
}

fn rect_ratio_greedy(s: &SupportSet, alpha: f64, seed: u64) -> RectRatio {
    let nv = s.n;
    let all: Vec<u32> = (0..nv as u32).collect();
    let mut starts: Vec<Vec<Vec<u32>>> = vec![vec![all.clone(); s.d]];

    // Axis starts: pin the most frequent value on one axis, fill the other
    // axes with the values it co-occurs with.
    for axis in 0..s.d {
        let mut freq = vec![0usize; nv];
        for t in &s.tuples {
            freq[t[axis] as usize] += 1;
        }
        let mut top: Vec<usize> = (0..nv).collect();
        top.sort_by(|&a, &b| freq[b].cmp(&freq[a]).then(a.cmp(&b)));
        for &v in top.iter().take(4) {
            if freq[v] == 0 {
                continue;
            }
            let mut rect = vec![vec![]; s.d];
            rect[axis] = vec![v as u32];
            for other in 0..s.d {
                if other == axis {
                    continue;
                }
                let mut vals: Vec<u32> = s
                    .tuples
                    .iter()
                    .filter(|t| t[axis] as usize == v)
                    .map(|t| t[other])
                    .collect();
                vals.sort_unstable();
                vals.dedup();
                rect[other] = vals;
            }
            starts.push(rect);
        }
    }

    // Closed-neighborhood starts for d = 2 (symmetric supports).
    if s.d == 2 {
        let mut freq = vec![0usize; nv];
        for t in &s.tuples {
            freq[t[0] as usize] += 1;
        }
        let mut top: Vec<usize> = (0..nv).collect();
        top.sort_by(|&a, &b| freq[b].cmp(&freq[a]).then(a.cmp(&b)));
        for &v in top.iter().take(4) {
            if freq[v] == 0 {
                continue;
            }
            let mut vals: Vec<u32> = s
                .tuples
                .iter()
                .filter(|t| t[0] as usize == v)
                .map(|t| t[1])
                .collect();
            vals.push(v as u32);
            vals.sort_unstable();
            vals.dedup();
            starts.push(vec![vals.clone(), vals]);
        }
    }

    // 32 seeded random starts.
    let mut rng = SplitMix64::new(seed);
    for _ in 0..32 {
        let rect: Vec<Vec<u32>> = (0..s.d)
            .map(|_| {
                let side: Vec<u32> = (0..nv as u32).filter(|_| rng.bernoulli(0.5)).collect();
                if side.is_empty() {
                    vec![(rng.next_u64() % nv as u64) as u32]
                } else {
                    side
                }
            })
            .collect();
        starts.push(rect);
    }

    let mut state = GreedyState::new(s, alpha);
    let mut best: Option<(f64, Vec<Vec<u32>>)> = None;
    for start in &starts {
        state.reset(start);
        while state.improve() {}
        let r = state.ratio();
        if best.as_ref().is_none_or(|(b, _)| r > *b) {
            best = Some((r, state.rect()));
        }
    }
    let (value, witness) = best.unwrap_or((0.0, vec![Vec::new(); s.d]));
    RectRatio {
        value,
        witness,
        mode: PhiMode::UpperBound,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CombDimVerdict {
    Consistent,
    Inconsistent,
    UndefinedDimensionEvidence,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CombDimMemberRow {
    pub v_size: usize,
    pub j_size: usize,
    /// |J_n| / |V_n|^alpha.
    pub density_ratio: f64,
    pub rect_ratio: f64,
    pub rect_mode: PhiMode,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CombDimReport {
    /// Least-squares exponent of log |J_n| against log |V_n|.
    pub alpha_hat: f64,
    /// Exponent the ratio statistics were evaluated at.
    pub alpha_used: f64,
    pub fit_residuals: Vec<f64>,
    pub rect_growth_slope: f64,
    pub per_member: Vec<CombDimMemberRow>,
    pub verdict: CombDimVerdict,
}

fn ols_slope(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Family-level combinatorial-dimension report. Fits alpha by OLS on
/// log-log sizes when `alpha` is absent, then evaluates density and
/// rectangle ratios at that exponent.
pub fn combdim_family_report(
    family: &[SupportSet],
    alpha: Option<f64>,
    seed: u64,
) -> Result<CombDimReport> {
    if family.len() < 3 {
        return Err(Error::FamilyTooSmall(3, family.len()));
    }
    let xs: Vec<f64> = family.iter().map(|s| (s.n as f64).ln()).collect();
    let ys: Vec<f64> = family
        .iter()
        .map(|s| (s.tuples.len() as f64).ln())
        .collect();
    let (alpha_hat, intercept) = ols_slope(&xs, &ys);
    let fit_residuals: Vec<f64> = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| y - (alpha_hat * x + intercept))
        .collect();
    let alpha_used = alpha.unwrap_or(alpha_hat);

    let mut per_member = Vec::with_capacity(family.len());
    for s in family {
        let exact = s.n <= exact_rect_limit(s.d);
        let rect = rect_ratio_sup(s, alpha_used, exact, seed)?;
        per_member.push(CombDimMemberRow {
            v_size: s.n,
            j_size: s.tuples.len(),
            density_ratio: s.tuples.len() as f64 / (s.n as f64).powf(alpha_used),
            rect_ratio: rect.value,
            rect_mode: rect.mode,
        });
    }

    let rect_logs: Vec<f64> = per_member
        .iter()
        .map(|r| r.rect_ratio.max(1e-12).ln())
        .collect();
    let (rect_growth_slope, _) = ols_slope(&xs, &rect_logs);

    let spread = |vals: Vec<f64>| {
        let max = vals.iter().cloned().fold(f64::MIN, f64::max);
        let min = vals.iter().cloned().fold(f64::MAX, f64::min);
        max / min.max(1e-12)
    };
    let density_spread = spread(per_member.iter().map(|r| r.density_ratio).collect());
    let rect_spread = spread(per_member.iter().map(|r| r.rect_ratio).collect());

    let verdict = if rect_growth_slope > GROWTH_SLOPE_FLAG {
        CombDimVerdict::UndefinedDimensionEvidence
    } else if density_spread <= BOUNDED_SPREAD && rect_spread <= BOUNDED_SPREAD {
        CombDimVerdict::Consistent
    } else {
        CombDimVerdict::Inconsistent
    };

    Ok(CombDimReport {
        alpha_hat,
        alpha_used,
        fit_residuals,
        rect_growth_slope,
        per_member,
        verdict,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MaxDegreeReport {
    pub max_degree: u32,
    /// n^(alpha/2 - epsilon).
    pub threshold: f64,
    pub ok: bool,
}

/// Compare the maximal degree to n^(alpha/2 - epsilon).
pub fn max_degree_check(g: &Graph, alpha: f64, epsilon: f64) -> Result<MaxDegreeReport> {
    if alpha <= 1.0 || alpha >= 2.0 {
        return Err(Error::InvalidAlpha(alpha, 2.0));
    }
    let max_eps = (alpha / 2.0).min(1.0 - alpha / 2.0);
    if epsilon <= 0.0 || epsilon >= max_eps {
        return Err(Error::InvalidEpsilon {
            eps: epsilon,
            max: max_eps,
        });
    }
    let threshold = (g.n_vertices() as f64).powf(alpha / 2.0 - epsilon);
    let max_degree = g.max_degree();
    Ok(MaxDegreeReport {
        max_degree,
        threshold,
        ok: (max_degree as f64) <= threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;

    fn full_product(n: usize, d: usize) -> SupportSet {
        let mut tuples = Vec::new();
        let mut t = vec![0u32; d];
        loop {
            tuples.push(t.clone());
            let mut pos = d;
            loop {
                if pos == 0 {
                    return SupportSet { d, n, tuples };
                }
                pos -= 1;
                t[pos] += 1;
                if (t[pos] as usize) < n {
                    break;
                }
                t[pos] = 0;
            }
        }
    }

    #[test]
    fn rectangle_count_full_product() {
        let s = full_product(4, 2);
        let rect = vec![vec![0, 1, 2], vec![0, 1, 2]];
        assert_eq!(rectangle_count(&s, &rect).unwrap(), 9);
        assert_eq!(rectangle_count(&s, &[vec![], vec![0, 1]]).unwrap(), 0);
    }

    #[test]
    fn rectangle_count_monotone_in_each_side() {
        let z = constructions::disjoint_blocks(3, 2).unwrap();
        let s = homsum_support(&z);
        let small = vec![vec![0, 1], vec![0, 1]];
        let large = vec![vec![0, 1, 2, 3], vec![0, 1]];
        assert!(rectangle_count(&s, &small).unwrap() <= rectangle_count(&s, &large).unwrap());
    }

    #[test]
    fn exact_sup_complete_graph_alpha_one() {
        // J = ordered edges of K_m: at alpha = 1 the full rectangle gives
        // m(m-1)/m = m-1.
        let g = constructions::complete(6).unwrap();
        let z = HomogeneousSum::from_graph(&g);
        let s = homsum_support(&z);
        let sup = rect_ratio_sup(&s, 1.0, true, 0).unwrap();
        assert!((sup.value - 5.0).abs() < 1e-12);
    }

    #[test]
    fn heuristic_below_exact() {
        let g = constructions::complete(6).unwrap();
        let z = HomogeneousSum::from_graph(&g);
        let s = homsum_support(&z);
        let exact = rect_ratio_sup(&s, 1.3, true, 0).unwrap();
        let greedy = rect_ratio_sup(&s, 1.3, false, 0).unwrap();
        assert!(greedy.value <= exact.value + 1e-12);
        // The witness must achieve the reported value.
        let count = rectangle_count(&s, &greedy.witness).unwrap();
        let max_side = greedy.witness.iter().map(|a| a.len()).max().unwrap();
        let achieved = count as f64 / (max_side as f64).powf(1.3);
        assert!((achieved - greedy.value).abs() < 1e-12);
    }

    #[test]
    fn exact_limit_enforced() {
        let s = full_product(11, 2);
        assert!(matches!(
            rect_ratio_sup(&s, 1.0, true, 0),
            Err(Error::TooLargeForExact { .. })
        ));
    }

    #[test]
    fn family_full_product_has_dimension_d() {
        let family: Vec<SupportSet> = (4..=8).map(|n| full_product(n, 2)).collect();
        let rep = combdim_family_report(&family, None, 0).unwrap();
        assert!(
            (rep.alpha_hat - 2.0).abs() < 0.05,
            "alpha {}",
            rep.alpha_hat
        );
        assert_eq!(rep.verdict, CombDimVerdict::Consistent);
    }

    #[test]
    fn family_too_small() {
        let family: Vec<SupportSet> = (4..=5).map(|n| full_product(n, 2)).collect();
        assert!(matches!(
            combdim_family_report(&family, None, 0),
            Err(Error::FamilyTooSmall(3, 2))
        ));
    }

    #[test]
    fn max_degree_check_complete_graph_fails() {
        let g = constructions::complete(30).unwrap();
        let rep = max_degree_check(&g, 1.5, 0.2).unwrap();
        assert!(!rep.ok);
        assert_eq!(rep.max_degree, 29);
    }

    #[test]
    fn max_degree_epsilon_range() {
        let g = constructions::complete(10).unwrap();
        assert!(matches!(
            max_degree_check(&g, 1.5, 0.9),
            Err(Error::InvalidEpsilon { .. })
        ));
        assert!(matches!(
            max_degree_check(&g, 2.0, 0.1),
            Err(Error::InvalidAlpha(..))
        ));
    }
}
