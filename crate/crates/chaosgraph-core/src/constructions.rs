//! Generators for the structured families: classical graphs, Cartesian
//! products, rook variants, the beta-grid, fractional Cartesian products,
//! rook-like and triangle hypergraphs, block sums, and Bernoulli random
//! supports.
//!
//! Vertices of square families [n] x [n] are labeled row-major:
//! (a, b) -> a * n + b, with "row a" the set {a} x [n].

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::homsum::HomogeneousSum;
use crate::rng::SplitMix64;

/// Cap on the tuple space scanned by `random_support`.
pub const RANDOM_SUPPORT_CAP: usize = 100_000_000;

/// Complete graph K_n.
pub fn complete(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidInput("complete graph needs n >= 2".into()));
    }
    let edges: Vec<(u32, u32)> = (0..n as u32)
        .flat_map(|a| (a + 1..n as u32).map(move |b| (a, b)))
        .collect();
    Graph::new(n, &edges)
}

/// Complete bipartite graph K_{n,n} on 2n vertices; the left class is
/// 0..n-1.
pub fn complete_bipartite(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidInput("bipartite graph needs n >= 2".into()));
    }
    let edges: Vec<(u32, u32)> = (0..n as u32)
        .flat_map(|a| (n as u32..2 * n as u32).map(move |b| (a, b)))
        .collect();
    Graph::new(2 * n, &edges)
}

/// Hypercube Q_n = K_2^(square n): vertices are n-bit strings, edges join
/// strings differing in one bit.
pub fn hypercube(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidInput("hypercube needs n >= 2".into()));
    }
    if n >= 25 {
        return Err(Error::SizeLimitExceeded {
            what: "hypercube vertex count",
            size: 1 << n,
            limit: crate::graph::PRODUCT_VERTEX_CAP,
        });
    }
    let size = 1u32 << n;
    let mut edges = Vec::with_capacity(n << (n - 1));
    for x in 0..size {
        for i in 0..n {
            let y = x ^ (1 << i);
            if y > x {
                edges.push((x, y));
            }
        }
    }
    Graph::new(size as usize, &edges)
}

/// Rook family K_q^(square m); rook(q, 2) is the Rook's graph on [q]^2.
pub fn rook(q: usize, m: usize) -> Result<Graph> {
    if q < 2 || m < 1 {
        return Err(Error::InvalidInput("rook needs q >= 2, m >= 1".into()));
    }
    complete(q)?.product_power(m)
}

/// Rook variant on [n]^2: full rows plus column edges gated by the first
/// coordinate. The literal rule of the source construction is directed
/// ((a,b) -> (i,b) requires i < k_n); `symmetrize = true` keeps an edge when
/// at least one endpoint passes (union closure), `false` when both do.
/// k_n = n reproduces rook(n, 2); k_n = 0 gives n disjoint copies of K_n.
pub fn rook_variant(n: usize, k_n: usize, symmetrize: bool) -> Result<Graph> {
    if k_n > n {
        return Err(Error::InvalidK { k: k_n, max: n });
    }
    if n < 2 {
        return Err(Error::InvalidInput("rook variant needs n >= 2".into()));
    }
    let nu = n as u32;
    let mut edges = Vec::new();
    for a in 0..nu {
        for b in 0..nu {
            // Row edges (same first coordinate).
            for j in b + 1..nu {
                edges.push((a * nu + b, a * nu + j));
            }
            // Column edges (same second coordinate).
            for i in a + 1..nu {
                let keep = if symmetrize {
                    (a.min(i) as usize) < k_n
                } else {
                    (a.max(i) as usize) < k_n
                };
                if keep {
                    edges.push((a * nu + b, i * nu + b));
                }
            }
        }
    }
    Graph::new(n * n, &edges)
}

/// Placement of the vertical/horizontal selection sets of the beta-grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridLayout {
    pub n: usize,
    pub beta: f64,
    /// s_v[a] = second coordinates of S_v(a), a subset of column a.
    pub s_v: Vec<Vec<u32>>,
    /// s_h[b] = first coordinates of S_h(b), a subset of row b.
    pub s_h: Vec<Vec<u32>>,
}

impl GridLayout {
    /// The contiguous-prefix layout: S_v(a) = {a} x [floor(beta n)],
    /// S_h(b) = [floor(beta n)] x {b}.
    pub fn contiguous(n: usize, beta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&beta) || beta <= 0.0 {
            return Err(Error::BetaOutOfRange(beta, "(0, 1]"));
        }
        let m = (beta * n as f64).floor() as usize;
        if m < 1 {
            return Err(Error::LayoutSizeMismatch(format!(
                "floor(beta n) = {m} is empty"
            )));
        }
        let prefix: Vec<u32> = (0..m as u32).collect();
        Ok(Self {
            n,
            beta,
            s_v: vec![prefix.clone(); n],
            s_h: vec![prefix; n],
        })
    }

    pub fn selection_size(&self) -> usize {
        (self.beta * self.n as f64).floor() as usize
    }

    fn validate(&self) -> Result<()> {
        let m = self.selection_size();
        if self.s_v.len() != self.n || self.s_h.len() != self.n {
            return Err(Error::LayoutSizeMismatch(format!(
                "need {} selection sets per direction",
                self.n
            )));
        }
        for (a, set) in self.s_v.iter().chain(self.s_h.iter()).enumerate() {
            if set.len() != m {
                return Err(Error::LayoutSizeMismatch(format!(
                    "selection set {a} has {} entries, expected {m}",
                    set.len()
                )));
            }
            let mut sorted = set.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != m || sorted.iter().any(|&x| x as usize >= self.n) {
                return Err(Error::LayoutSizeMismatch(format!(
                    "selection set {a} is not a subset of [n]"
                )));
            }
        }
        Ok(())
    }

    fn unordered_pairs(&self) -> Result<Vec<(u32, u32)>> {
        self.validate()?;
        let n = self.n as u32;
        let mut pairs = Vec::new();
        for (a, set) in self.s_v.iter().enumerate() {
            for (i, &b1) in set.iter().enumerate() {
                for &b2 in &set[i + 1..] {
                    pairs.push((a as u32 * n + b1, a as u32 * n + b2));
                }
            }
        }
        for (b, set) in self.s_h.iter().enumerate() {
            for (i, &a1) in set.iter().enumerate() {
                for &a2 in &set[i + 1..] {
                    pairs.push((a1 * n + b as u32, a2 * n + b as u32));
                }
            }
        }
        Ok(pairs)
    }
}

/// Grid graph: vertices of [n]^2 joined when they share a horizontal or
/// vertical selection set. Vertices outside every selection set are
/// isolated and dropped.
pub fn grid_family(layout: &GridLayout) -> Result<Graph> {
    Graph::new_drop_isolated(layout.n * layout.n, &layout.unordered_pairs()?)
}

/// The grid support as a d = 2, q = 1 homogeneous sum on all of [n]^2.
pub fn grid_homsum(layout: &GridLayout) -> Result<HomogeneousSum> {
    let terms: Vec<(Vec<u32>, f64)> = layout
        .unordered_pairs()?
        .into_iter()
        .map(|(u, v)| (vec![u, v], 1.0))
        .collect();
    HomogeneousSum::from_terms(2, layout.n * layout.n, &terms)
}

/// (K_m disjoint-union empty graph)^(square 2) with isolated vertices
/// removed: one giant K_m x K_m component plus 2(n-m) copies of K_m.
pub fn union_with_isolated(n: usize, m: usize) -> Result<Graph> {
    if m < 1 || m > n {
        return Err(Error::InvalidM { m, n });
    }
    let nu = n as u32;
    let mu = m as u32;
    let mut edges = Vec::new();
    for a in 0..nu {
        for b in 0..nu {
            if b < mu {
                for j in b + 1..mu {
                    edges.push((a * nu + b, a * nu + j));
                }
            }
            if a < mu {
                for i in a + 1..mu {
                    edges.push((a * nu + b, i * nu + b));
                }
            }
        }
    }
    Graph::new_drop_isolated(n * n, &edges)
}

/// Block partition of the d x b index grid defining a fractional Cartesian
/// product; cells are (row, column) with rows in 0..d and columns in 0..b.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FractionalPartition {
    pub d: usize,
    pub b: usize,
    pub blocks: Vec<Vec<(usize, usize)>>,
}

impl FractionalPartition {
    /// The connected d = 3, b = 2 partition of Figure 5(a):
    /// S_1 = {(1,2),(2,2)}, S_2 = {(2,1),(3,1)}, S_3 = {(3,2),(1,1)}
    /// in 1-based coordinates.
    pub fn figure_5a() -> Self {
        Self {
            d: 3,
            b: 2,
            blocks: vec![
                vec![(0, 1), (1, 1)],
                vec![(1, 0), (2, 0)],
                vec![(2, 1), (0, 0)],
            ],
        }
    }

    /// The disconnected d = 4, b = 2 partition of Figure 5(b).
    pub fn figure_5b() -> Self {
        Self {
            d: 4,
            b: 2,
            blocks: vec![
                vec![(0, 0), (1, 0)],
                vec![(0, 1), (1, 1)],
                vec![(2, 0), (3, 0)],
                vec![(2, 1), (3, 1)],
            ],
        }
    }

    /// Block index of each grid cell, or an error if the blocks do not
    /// partition the grid with the required shape.
    fn cell_assignment(&self) -> Result<Vec<Vec<usize>>> {
        if self.d < 3 || self.b < 1 || self.b >= self.d {
            return Err(Error::InvalidInput(
                "fractional product needs d >= 3 and 1 <= b <= d-1".into(),
            ));
        }
        if self.blocks.len() != self.d {
            return Err(Error::InvalidInput(format!(
                "need exactly d = {} blocks, got {}",
                self.d,
                self.blocks.len()
            )));
        }
        let mut owner = vec![vec![usize::MAX; self.b]; self.d];
        for (i, block) in self.blocks.iter().enumerate() {
            if block.len() != self.b {
                return Err(Error::BlockSizeError(i, block.len(), self.b));
            }
            let mut rows_seen = vec![false; self.d];
            for &(row, col) in block {
                if row >= self.d || col >= self.b {
                    return Err(Error::InvalidInput(format!(
                        "cell ({row},{col}) outside the {}x{} grid",
                        self.d, self.b
                    )));
                }
                if rows_seen[row] {
                    return Err(Error::RowCollision(i, row));
                }
                rows_seen[row] = true;
                if owner[row][col] != usize::MAX {
                    return Err(Error::InvalidInput(format!(
                        "cell ({row},{col}) assigned to two blocks"
                    )));
                }
                owner[row][col] = i;
            }
        }
        if owner.iter().flatten().any(|&o| o == usize::MAX) {
            return Err(Error::InvalidInput(
                "blocks do not cover the index grid".into(),
            ));
        }
        Ok(owner)
    }

    /// Exhaustive connectivity test over the 2^(d-1) row bipartitions.
    fn check_connected(&self, owner: &[Vec<usize>]) -> Result<()> {
        let row_sets: Vec<Vec<usize>> = (0..self.d)
            .map(|i| {
                let mut rows: Vec<usize> = self.blocks[i].iter().map(|&(row, _)| row).collect();
                rows.sort_unstable();
                rows
            })
            .collect();
        let _ = owner;
        // Bipartitions {B1, B2} of the rows, with row 0 pinned to B1.
        for mask in 0..(1u32 << (self.d - 1)) {
            let in_b1 = |row: usize| row == 0 || mask >> (row - 1) & 1 == 1;
            if (1..self.d).all(&in_b1) {
                continue; // improper bipartition
            }
            let split = row_sets
                .iter()
                .all(|rows| rows.iter().all(|&r| in_b1(r)) || rows.iter().all(|&r| !in_b1(r)));
            if split {
                return Err(Error::DisconnectedPartition);
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let owner = self.cell_assignment()?;
        self.check_connected(&owner)?;
        // Two rows with identical block patterns force equal vertices in
        // every generated tuple, i.e. a diagonal support.
        for r1 in 0..self.d {
            for r2 in r1 + 1..self.d {
                if owner[r1] == owner[r2] {
                    return Err(Error::DiagonalSupport(vec![r1 as u32, r2 as u32]));
                }
            }
        }
        Ok(())
    }
}

/// Fractional Cartesian product support: vertices are injective b-tuples
/// over [n], base tuples assign one value per block, and the support is the
/// symmetrization of the base set.
pub fn fractional_product(n: usize, fp: &FractionalPartition) -> Result<HomogeneousSum> {
    fp.validate()?;
    if n <= fp.d {
        return Err(Error::InvalidInput(format!(
            "fractional product needs n > d = {}",
            fp.d
        )));
    }
    let owner = fp.cell_assignment()?;
    // Enumerate V_n = injective b-tuples in lexicographic order.
    let mut vertex_ids: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut tuple = vec![0u32; fp.b];
    enumerate_injective(n, fp.b, &mut tuple, 0, &mut |t| {
        let id = vertex_ids.len() as u32;
        vertex_ids.insert(t.to_vec(), id);
    });

    // Base tuples: injective block-value assignments x_1..x_d.
    let mut ordered: HashSet<Vec<u32>> = HashSet::new();
    let mut assign = vec![0u32; fp.d];
    let mut base: Vec<Vec<u32>> = Vec::new();
    enumerate_injective(n, fp.d, &mut assign, 0, &mut |x| {
        let mut verts = Vec::with_capacity(fp.d);
        for row in 0..fp.d {
            let coords: Vec<u32> = (0..fp.b).map(|col| x[owner[row][col]]).collect();
            verts.push(vertex_ids[&coords]);
        }
        base.push(verts);
    });
    for tuple in &base {
        permute_all(tuple, &mut |perm| {
            ordered.insert(perm.to_vec());
        });
    }
    let tuples: Vec<Vec<u32>> = ordered.into_iter().collect();
    HomogeneousSum::from_ordered_support(fp.d, vertex_ids.len(), &tuples)
}

fn enumerate_injective(
    n: usize,
    len: usize,
    buf: &mut Vec<u32>,
    depth: usize,
    visit: &mut impl FnMut(&[u32]),
) {
    if depth == len {
        visit(buf);
        return;
    }
    for v in 0..n as u32 {
        if buf[..depth].contains(&v) {
            continue;
        }
        buf[depth] = v;
        enumerate_injective(n, len, buf, depth + 1, visit);
    }
}

fn permute_all(key: &[u32], visit: &mut impl FnMut(&[u32])) {
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

/// Vertex id of the ordered pair (a, b), a != b, in the triangle-hypergraph
/// vertex set of injective pairs.
pub fn ordered_pair_id(n: usize, a: u32, b: u32) -> u32 {
    debug_assert!(a != b);
    a * (n as u32 - 1) + if b > a { b - 1 } else { b }
}

/// 3-uniform support on ordered distinct pairs: triples whose vertices
/// pairwise share exactly one coordinate value and use three labels total.
pub fn triangle_hypergraph(n: usize) -> Result<HomogeneousSum> {
    if n <= 3 {
        return Err(Error::InvalidInput(
            "triangle hypergraph needs n > 3".into(),
        ));
    }
    let nv = n * (n - 1);
    let pairs: Vec<(u32, u32)> = (0..n as u32)
        .flat_map(|a| (0..n as u32).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let mut keys: Vec<(Vec<u32>, f64)> = Vec::new();
    for i in 0..nv {
        for j in i + 1..nv {
            if !share_one(pairs[i], pairs[j]) {
                continue;
            }
            for k in j + 1..nv {
                if !share_one(pairs[i], pairs[k]) || !share_one(pairs[j], pairs[k]) {
                    continue;
                }
                let mut labels = vec![
                    pairs[i].0, pairs[i].1, pairs[j].0, pairs[j].1, pairs[k].0, pairs[k].1,
                ];
                labels.sort_unstable();
                labels.dedup();
                if labels.len() == 3 {
                    keys.push((vec![i as u32, j as u32, k as u32], 1.0));
                }
            }
        }
    }
    HomogeneousSum::from_terms(3, nv, &keys)
}

fn share_one(p: (u32, u32), q: (u32, u32)) -> bool {
    let shared = (p.0 == q.0) as u8 + (p.0 == q.1) as u8 + (p.1 == q.0) as u8 + (p.1 == q.1) as u8;
    shared == 1
}

/// Rook-like d-uniform hypergraph on [n]^2: hyperedges are the d-subsets of
/// a row or a column, with the constant coefficient that makes the induced
/// adjacency coincide with the Rook's graph.
pub fn rooklike_hypergraph(n: usize, d: usize) -> Result<HomogeneousSum> {
    if d < 3 {
        return Err(Error::WrongOrder(d));
    }
    if n <= d {
        return Err(Error::InvalidInput(format!(
            "rook-like hypergraph needs n > d = {d}"
        )));
    }
    let q = ((d - 1) as f64).sqrt() / binomial(n - 2, d - 2).sqrt();
    let nu = n as u32;
    let mut keys: Vec<(Vec<u32>, f64)> = Vec::new();
    let mut subset = vec![0u32; d];
    for a in 0..nu {
        enumerate_combinations(n, d, &mut subset, 0, 0, &mut |combo| {
            keys.push((combo.iter().map(|&b| a * nu + b).collect(), q));
        });
        enumerate_combinations(n, d, &mut subset, 0, 0, &mut |combo| {
            keys.push((combo.iter().map(|&i| i * nu + a).collect(), q));
        });
    }
    HomogeneousSum::from_terms(d, n * n, &keys)
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let mut acc = 1f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

fn enumerate_combinations(
    n: usize,
    k: usize,
    buf: &mut Vec<u32>,
    depth: usize,
    start: u32,
    visit: &mut impl FnMut(&[u32]),
) {
    if depth == k {
        visit(buf);
        return;
    }
    for v in start..(n - (k - depth - 1)) as u32 {
        buf[depth] = v;
        enumerate_combinations(n, k, buf, depth + 1, v + 1, visit);
    }
}

/// Disjoint-blocks sum: n independent products of d fresh variables
/// (the textbook Lindeberg-Feller reducible case).
pub fn disjoint_blocks(n_blocks: usize, d: usize) -> Result<HomogeneousSum> {
    let terms: Vec<(Vec<u32>, f64)> = (0..n_blocks as u32)
        .map(|i| ((i * d as u32..(i + 1) * d as u32).collect(), 1.0))
        .collect();
    HomogeneousSum::from_terms(d, n_blocks * d, &terms)
}

/// A raw (possibly non-symmetric, possibly diagonal) tuple set for
/// combinatorial-dimension work.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SupportSet {
    pub d: usize,
    pub n: usize,
    pub tuples: Vec<Vec<u32>>,
}

/// Bernoulli(n^(alpha-d)) support over [n]^d. For d = 2 with
/// `symmetrize_d2`, loops are removed and the upper triangle mirrored,
/// i.e. the Erdos-Renyi graph G(n, n^(alpha-2)).
pub fn random_support(
    n: usize,
    alpha: f64,
    d: usize,
    seed: u64,
    symmetrize_d2: bool,
) -> Result<SupportSet> {
    if d < 2 {
        return Err(Error::WrongOrder(d));
    }
    if alpha <= 1.0 || alpha >= d as f64 {
        return Err(Error::InvalidAlpha(alpha, d as f64));
    }
    let p = (n as f64).powf(alpha - d as f64);
    let mut rng = SplitMix64::new(seed);
    let mut tuples = Vec::new();
    if d == 2 && symmetrize_d2 {
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                if rng.bernoulli(p) {
                    tuples.push(vec![u, v]);
                    tuples.push(vec![v, u]);
                }
            }
        }
    } else {
        let total = (n as u128).pow(d as u32);
        if total > RANDOM_SUPPORT_CAP as u128 {
            return Err(Error::SizeLimitExceeded {
                what: "random support tuple space",
                size: usize::MAX,
                limit: RANDOM_SUPPORT_CAP,
            });
        }
        let mut tuple = vec![0u32; d];
        loop {
            if rng.bernoulli(p) {
                tuples.push(tuple.clone());
            }
            // Odometer increment, row-major.
            let mut pos = d;
            while pos > 0 {
                pos -= 1;
                tuple[pos] += 1;
                if (tuple[pos] as usize) < n {
                    break;
                }
                tuple[pos] = 0;
                if pos == 0 {
                    return Ok(SupportSet { d, n, tuples });
                }
            }
        }
    }
    Ok(SupportSet { d, n, tuples })
}

/// Graph view of a symmetric non-diagonal d = 2 support.
pub fn support_to_graph(s: &SupportSet, drop_isolated: bool) -> Result<Graph> {
    if s.d != 2 {
        return Err(Error::WrongOrder(s.d));
    }
    let mut edges: Vec<(u32, u32)> = s
        .tuples
        .iter()
        .map(|t| (t[0].min(t[1]), t[0].max(t[1])))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    if drop_isolated {
        Graph::new_drop_isolated(s.n, &edges)
    } else {
        Graph::new(s.n, &edges)
    }
}
