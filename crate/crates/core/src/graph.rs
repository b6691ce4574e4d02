//! Erdős–Rényi graph sampling and the single-purification-protocol
//! machinery on top of it: shortest paths, enumeration of subpath /
//! alternate-path configurations, analytic density formulas, and the
//! per-sample statistics consumed by the Monte Carlo runner.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::spp;
use crate::werner::WernerState;
use crate::{Error, Result};

/// Distance marker for disconnected pairs.
pub const UNREACHABLE: u32 = u32::MAX;

/// How a sample's RNG was derived: base seed plus per-trial stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedRecord {
    pub seed: u64,
    pub stream: u64,
}

/// One realization of the G(N, p) ensemble: an undirected simple graph
/// with sorted adjacency lists.
#[derive(Debug, Clone)]
pub struct ErGraphSample {
    n_nodes: usize,
    adj: Vec<Vec<u32>>,
    n_edges: usize,
    pub seed: Option<SeedRecord>,
}

impl ErGraphSample {
    /// Sample G(N, p): every one of the N(N-1)/2 possible edges is
    /// present independently with probability `p`. Uses geometric
    /// edge skipping, so the cost is proportional to the number of
    /// edges produced.
    pub fn generate<R: Rng + ?Sized>(n_nodes: usize, p: f64, rng: &mut R) -> Self {
        assert!(n_nodes >= 2, "need at least two nodes");
        assert!((0.0..=1.0).contains(&p), "p must be a probability");
        let mut adj = vec![Vec::new(); n_nodes];
        let mut n_edges = 0usize;
        if p >= 1.0 {
            for v in 1..n_nodes {
                for w in 0..v {
                    adj[w].push(v as u32);
                    adj[v].push(w as u32);
                }
            }
            n_edges = n_nodes * (n_nodes - 1) / 2;
        } else if p > 0.0 {
            let lq = (1.0 - p).ln();
            let mut v: usize = 1;
            let mut w: i64 = -1;
            loop {
                let r: f64 = rng.gen();
                w += 1 + ((1.0 - r).ln() / lq).floor() as i64;
                while v < n_nodes && w >= v as i64 {
                    w -= v as i64;
                    v += 1;
                }
                if v >= n_nodes {
                    break;
                }
                adj[w as usize].push(v as u32);
                adj[v].push(w as u32);
                n_edges += 1;
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        ErGraphSample {
            n_nodes,
            adj,
            n_edges,
            seed: None,
        }
    }

    /// Deterministic sample from `(seed, stream)`: the same record
    /// always yields the same graph, independent of the caller's RNG
    /// state.
    pub fn generate_seeded(n_nodes: usize, p: f64, seed: SeedRecord) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.seed);
        rng.set_stream(seed.stream);
        let mut g = Self::generate(n_nodes, p, &mut rng);
        g.seed = Some(seed);
        g
    }

    /// Build a graph from an explicit edge list. Rejects self-loops,
    /// duplicate edges and out-of-range endpoints.
    pub fn from_edges(n_nodes: usize, edges: &[(u32, u32)]) -> Result<Self> {
        if n_nodes < 2 {
            return Err(Error::Parse("need at least two nodes".into()));
        }
        let mut sorted: Vec<(u32, u32)> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v {
                return Err(Error::Parse(format!("self-loop at node {u}")));
            }
            if u as usize >= n_nodes || v as usize >= n_nodes {
                return Err(Error::Parse(format!("edge ({u}, {v}) out of range")));
            }
            sorted.push((u.min(v), u.max(v)));
        }
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parse("duplicate edge".into()));
        }
        let mut adj = vec![Vec::new(); n_nodes];
        for &(u, v) in &sorted {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(ErGraphSample {
            n_nodes,
            adj,
            n_edges: sorted.len(),
            seed: None,
        })
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn n_edges(&self) -> usize {
        self.n_edges
    }

    pub fn n_pairs(&self) -> usize {
        self.n_nodes * (self.n_nodes - 1) / 2
    }

    pub fn neighbors(&self, u: u32) -> &[u32] {
        &self.adj[u as usize]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.n_edges);
        for u in 0..self.n_nodes as u32 {
            for &v in self.neighbors(u) {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Edge-list text format: first line `N M`, then `M` lines `u v`.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.n_nodes, self.n_edges);
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty edge list".into()))?;
        let mut it = header.split_whitespace();
        let n: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse("bad node count".into()))?;
        let m: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse("bad edge count".into()))?;
        let mut edges = Vec::with_capacity(m);
        for line in lines {
            let mut it = line.split_whitespace();
            let u: u32 = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad edge line: {line}")))?;
            let v: u32 = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad edge line: {line}")))?;
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::Parse(format!(
                "expected {m} edges, found {}",
                edges.len()
            )));
        }
        Self::from_edges(n, &edges)
    }

    /// Breadth-first distances from `src`, up to `max_depth` hops.
    /// Unexplored nodes carry [`UNREACHABLE`].
    pub fn bfs_distances(&self, src: u32, max_depth: u32) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.n_nodes];
        let mut order = Vec::new();
        self.bfs_into(src, max_depth, &mut dist, &mut order);
        dist
    }

    /// BFS into a reusable scratch buffer. `dist` must be all
    /// [`UNREACHABLE`] on entry; `order` receives every visited node so
    /// the caller can cheaply reset `dist` afterwards.
    fn bfs_into(&self, src: u32, max_depth: u32, dist: &mut [u32], order: &mut Vec<u32>) {
        order.clear();
        dist[src as usize] = 0;
        order.push(src);
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            let d = dist[u as usize];
            if d >= max_depth {
                continue;
            }
            for &w in self.neighbors(u) {
                if dist[w as usize] == UNREACHABLE {
                    dist[w as usize] = d + 1;
                    order.push(w);
                }
            }
        }
    }

    /// Size of each node's connected component.
    pub fn component_sizes(&self) -> Vec<u32> {
        let mut sizes = vec![0u32; self.n_nodes];
        let mut dist = vec![UNREACHABLE; self.n_nodes];
        let mut order = Vec::new();
        for u in 0..self.n_nodes as u32 {
            if sizes[u as usize] > 0 {
                continue;
            }
            self.bfs_into(u, UNREACHABLE, &mut dist, &mut order);
            let size = order.len() as u32;
            for &w in &order {
                sizes[w as usize] = size;
                dist[w as usize] = UNREACHABLE;
            }
        }
        sizes
    }

    /// All-pairs shortest path lengths by BFS from every node.
    pub fn shortest_path_lengths(&self) -> Vec<Vec<u32>> {
        (0..self.n_nodes as u32)
            .map(|u| self.bfs_distances(u, UNREACHABLE))
            .collect()
    }

    /// The deterministically chosen shortest path from `u` to `v`:
    /// walking backwards from `v`, each hop takes the lowest-index
    /// neighbor that is one BFS layer closer to `u`.
    pub fn chosen_shortest_path(&self, u: u32, v: u32) -> Option<Vec<u32>> {
        let dist = self.bfs_distances(u, UNREACHABLE);
        self.path_from_distances(&dist, u, v)
    }

    /// Same as [`Self::chosen_shortest_path`] with distances from `u`
    /// already available.
    pub fn path_from_distances(&self, dist_from_u: &[u32], u: u32, v: u32) -> Option<Vec<u32>> {
        let mut d = dist_from_u[v as usize];
        if d == UNREACHABLE {
            return None;
        }
        let mut path = Vec::with_capacity(d as usize + 1);
        path.push(v);
        let mut cur = v;
        while d > 0 {
            let parent = self
                .neighbors(cur)
                .iter()
                .copied()
                .find(|&w| dist_from_u[w as usize] == d - 1)
                .expect("BFS layers are contiguous");
            path.push(parent);
            cur = parent;
            d -= 1;
        }
        path.reverse();
        debug_assert_eq!(path[0], u);
        Some(path)
    }

    /// Shortest path from `src` to `target` avoiding the given edges,
    /// up to `max_depth` hops.
    fn excluded_distance(
        &self,
        src: u32,
        target: u32,
        banned: &[(u32, u32)],
        max_depth: u32,
    ) -> Option<u32> {
        let is_banned = |a: u32, b: u32| {
            let e = (a.min(b), a.max(b));
            banned.contains(&e)
        };
        let mut dist = vec![UNREACHABLE; self.n_nodes];
        dist[src as usize] = 0;
        let mut frontier = vec![src];
        let mut next = Vec::new();
        let mut d = 0;
        while !frontier.is_empty() && d < max_depth {
            for &u in &frontier {
                for &w in self.neighbors(u) {
                    if dist[w as usize] == UNREACHABLE && !is_banned(u, w) {
                        if w == target {
                            return Some(d + 1);
                        }
                        dist[w as usize] = d + 1;
                        next.push(w);
                    }
                }
            }
            std::mem::swap(&mut frontier, &mut next);
            next.clear();
            d += 1;
        }
        None
    }
}

/// One purification opportunity: subpath of length `n` starting at
/// `position` along the chosen shortest path of length `l`, with an
/// edge-disjoint alternate path of length `m'` between its endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SppConfig {
    pub path_len: usize,
    pub subpath_len: usize,
    pub alt_len: usize,
    pub position: usize,
    pub alternate: Vec<u32>,
}

/// Optional restriction of the enumeration to one geometry.
#[derive(Debug, Clone, Copy, Default)]
pub struct GeometryFilter {
    pub subpath_len: Option<usize>,
    pub alt_len: Option<usize>,
}

/// Enumerate every SPP configuration for the pair `(u, v)`: on the
/// chosen shortest path, for each subpath length and position, every
/// simple alternate path of admissible length `m' in [n, 2n - 1]` that
/// shares no edge with the whole shortest path. Subpaths may cover the
/// entire path (`n = L`, as on a cycle); the analytic densities index
/// `n` only up to `L - 1`. Returns an empty list when the pair is
/// disconnected or closer than three hops.
pub fn enumerate_spp(g: &ErGraphSample, u: u32, v: u32, filter: &GeometryFilter) -> Vec<SppConfig> {
    let dist = g.bfs_distances(u, UNREACHABLE);
    let l = dist[v as usize];
    if l == UNREACHABLE || l < 3 {
        return Vec::new();
    }
    let l = l as usize;
    let sp = g
        .path_from_distances(&dist, u, v)
        .expect("distance is finite");
    let sp_edges: Vec<(u32, u32)> = sp
        .windows(2)
        .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
        .collect();

    let mut out = Vec::new();
    for n in 2..=l {
        if filter.subpath_len.is_some_and(|want| want != n) {
            continue;
        }
        let cap = 2 * n - 1;
        for position in 0..=(l - n) {
            let start = sp[position];
            let end = sp[position + n];
            let mut current = vec![start];
            collect_alternates(
                g,
                end,
                cap,
                &sp_edges,
                &mut current,
                &mut |alt: &[u32]| {
                    let m_prime = alt.len() - 1;
                    if m_prime >= n && !filter.alt_len.is_some_and(|want| want != m_prime) {
                        out.push(SppConfig {
                            path_len: l,
                            subpath_len: n,
                            alt_len: m_prime,
                            position,
                            alternate: alt.to_vec(),
                        });
                    }
                },
            );
        }
    }
    out
}

/// Depth-first enumeration of simple paths from the tail of `current`
/// to `target`, at most `max_len` edges long, avoiding `banned` edges.
fn collect_alternates(
    g: &ErGraphSample,
    target: u32,
    max_len: usize,
    banned: &[(u32, u32)],
    current: &mut Vec<u32>,
    found: &mut impl FnMut(&[u32]),
) {
    let here = *current.last().unwrap();
    if here == target && current.len() > 1 {
        found(current);
        return;
    }
    if current.len() > max_len {
        return;
    }
    for &w in g.neighbors(here) {
        if current.contains(&w) {
            continue;
        }
        let e = (here.min(w), here.max(w));
        if banned.contains(&e) {
            continue;
        }
        current.push(w);
        collect_alternates(g, target, max_len, banned, current, found);
        current.pop();
    }
}

/// Configuration multiplicity `g(L, n)`: the number of subpath
/// positions, halved when the alternate path has the same length as
/// the subpath (the two roles are then interchangeable).
pub fn g_degeneracy(path_len: u32, subpath_len: u32, alt_len: u32) -> f64 {
    let positions = (path_len - subpath_len + 1) as f64;
    if alt_len == subpath_len {
        positions / 2.0
    } else {
        positions
    }
}

/// Validity regime of an analytic density formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Exact,
    LowP,
    Critical,
    HighP,
}

/// Falling-factorial product `(N - 2)(N - 3) ... (N - k_max)`.
fn falling_product(n_nodes: usize, k_max: usize) -> f64 {
    let mut prod = 1.0;
    for k in 2..=k_max {
        let factor = n_nodes as f64 - k as f64;
        if factor <= 0.0 {
            return 0.0;
        }
        prod *= factor;
    }
    prod
}

/// Analytic density of shortest paths of length `L`.
///
/// Exact formulas exist for `L = 1` (`p`) and `L = 2`
/// (`(1 - (1 - p^2)^(N-2))(1 - p)`); the low-density expansion
/// `p^L (N-2)!/(N-L-1)!` holds for any `L`, and the high-density
/// asymptote `(1 - p^2)^(N-2)(1 - p)` is supported for `L = 3`, where
/// it equals the probability that no shorter path exists.
pub fn sigma_analytic(path_len: u32, n_nodes: usize, p: f64, regime: Regime) -> Result<f64> {
    match (regime, path_len) {
        (Regime::Exact, 1) => Ok(p),
        (Regime::Exact, 2) => {
            let no_two_path = (1.0 - p * p).powi(n_nodes as i32 - 2);
            Ok((1.0 - no_two_path) * (1.0 - p))
        }
        (Regime::Exact, _) => Err(Error::Unsupported(
            "exact shortest-path density is available only for L = 1, 2",
        )),
        // (N-2)!/(N-L-1)!: one ordered choice per intermediate vertex
        (Regime::LowP, l) => Ok(p.powi(l as i32) * falling_product(n_nodes, l as usize)),
        (Regime::HighP, 3) => Ok((1.0 - p * p).powi(n_nodes as i32 - 2) * (1.0 - p)),
        (Regime::HighP, _) => Err(Error::Unsupported(
            "high-density asymptote is available only for L = 3",
        )),
        (Regime::Critical, _) => Err(Error::Unsupported(
            "no dedicated critical formula for shortest-path densities",
        )),
    }
}

fn validate_geometry(path_len: u32, subpath_len: u32, alt_len: u32) -> Result<()> {
    let ok = path_len >= 3
        && subpath_len >= 2
        && subpath_len <= path_len
        && alt_len >= subpath_len
        && alt_len < 2 * subpath_len;
    if ok {
        Ok(())
    } else {
        Err(Error::Unsupported(
            "geometry must satisfy L >= 3, 2 <= n <= L, n <= m' <= 2n - 1",
        ))
    }
}

/// Analytic density of pairs admitting an SPP with parameters
/// `(L, n, m')`.
///
/// Low density: `g(L, n) p^(L + m') (N-2)!/(N - L - m')!`. Critical
/// point `p = 1/N`: `g(L, n) / N^2`. High density: supported for
/// `(3, 2, 2)` only, where nearly every distance-3 pair admits the SPP
/// and the density approaches `(1 - p^2)^(N-2)(1 - p)`.
pub fn eta_analytic(
    path_len: u32,
    subpath_len: u32,
    alt_len: u32,
    n_nodes: usize,
    p: f64,
    regime: Regime,
) -> Result<f64> {
    validate_geometry(path_len, subpath_len, alt_len)?;
    let g = g_degeneracy(path_len, subpath_len, alt_len);
    match regime {
        Regime::LowP => {
            let total = (path_len + alt_len) as usize;
            Ok(g * p.powi(total as i32) * falling_product(n_nodes, total - 1))
        }
        Regime::Critical => Ok(g / (n_nodes as f64 * n_nodes as f64)),
        Regime::HighP => {
            if (path_len, subpath_len, alt_len) == (3, 2, 2) {
                Ok((1.0 - p * p).powi(n_nodes as i32 - 2) * (1.0 - p))
            } else {
                Err(Error::Unsupported(
                    "high-density asymptote is available only for (3, 2, 2)",
                ))
            }
        }
        Regime::Exact => Err(Error::Unsupported(
            "no exact SPP density formula is available",
        )),
    }
}

/// Bit-matrix adjacency for fast common-neighbor queries.
struct AdjBits {
    words: usize,
    rows: Vec<u64>,
}

impl AdjBits {
    fn build(g: &ErGraphSample) -> Self {
        let n = g.n_nodes();
        let words = n.div_ceil(64);
        let mut rows = vec![0u64; words * n];
        for u in 0..n as u32 {
            for &w in g.neighbors(u) {
                rows[u as usize * words + (w / 64) as usize] |= 1u64 << (w % 64);
            }
        }
        AdjBits { words, rows }
    }

    fn row(&self, u: u32) -> &[u64] {
        let start = u as usize * self.words;
        &self.rows[start..start + self.words]
    }

    fn intersects(&self, u: u32, v: u32) -> bool {
        self.row(u).iter().zip(self.row(v)).any(|(a, b)| a & b != 0)
    }

    /// Any common neighbor of `u` and `v` other than `skip`?
    fn common_neighbor_excluding(&self, u: u32, v: u32, skip: u32) -> bool {
        let skip_word = (skip / 64) as usize;
        let skip_bit = 1u64 << (skip % 64);
        self.row(u)
            .iter()
            .zip(self.row(v))
            .enumerate()
            .any(|(i, (a, b))| {
                let mut m = a & b;
                if i == skip_word {
                    m &= !skip_bit;
                }
                m != 0
            })
    }
}

/// Fraction of node pairs at shortest-path distance exactly `L`.
pub fn stat_sigma(g: &ErGraphSample, path_len: u32) -> f64 {
    let pairs = g.n_pairs() as f64;
    match path_len {
        1 => g.n_edges() as f64 / pairs,
        2 => {
            let bits = AdjBits::build(g);
            let mut count = 0usize;
            for u in 0..g.n_nodes() as u32 {
                for v in (u + 1)..g.n_nodes() as u32 {
                    if !g.has_edge(u, v) && bits.intersects(u, v) {
                        count += 1;
                    }
                }
            }
            count as f64 / pairs
        }
        l => {
            let mut count = 0usize;
            for u in 0..g.n_nodes() as u32 {
                let dist = g.bfs_distances(u, l);
                count += dist
                    .iter()
                    .enumerate()
                    .filter(|&(v, &d)| v as u32 > u && d == l)
                    .count();
            }
            count as f64 / pairs
        }
    }
}

/// Fraction of pairs admitting an SPP with parameters `(L, n, m')` on
/// their chosen shortest path. A position admits the geometry when its
/// shortest edge-disjoint alternate path has length exactly `m'`.
pub fn stat_eta_exists(g: &ErGraphSample, path_len: u32, subpath_len: u32, alt_len: u32) -> f64 {
    if (path_len, subpath_len, alt_len) == (3, 2, 2) {
        return stat_eta_322(g);
    }
    let n = subpath_len as usize;
    let pairs = g.n_pairs() as f64;
    let mut count = 0usize;
    for u in 0..g.n_nodes() as u32 {
        let dist = g.bfs_distances(u, path_len);
        for v in (u + 1)..g.n_nodes() as u32 {
            if dist[v as usize] != path_len {
                continue;
            }
            let sp = g.path_from_distances(&dist, u, v).unwrap();
            let sp_edges: Vec<(u32, u32)> = sp
                .windows(2)
                .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
                .collect();
            let admits = (0..=(path_len as usize - n)).any(|pos| {
                g.excluded_distance(sp[pos], sp[pos + n], &sp_edges, alt_len) == Some(alt_len)
            });
            if admits {
                count += 1;
            }
        }
    }
    count as f64 / pairs
}

/// Dedicated (3, 2, 2) existence path: distance-3 sieving and the
/// alternate-path check reduce to common-neighbor bit operations.
fn stat_eta_322(g: &ErGraphSample) -> f64 {
    let n = g.n_nodes();
    let bits = AdjBits::build(g);
    let words = bits.words;
    let mut ball2 = vec![0u64; words];
    let mut count = 0usize;
    for u in 0..n as u32 {
        // ball2 = {u} ∪ N(u) ∪ N²(u)
        ball2.copy_from_slice(bits.row(u));
        ball2[(u / 64) as usize] |= 1u64 << (u % 64);
        for &w in g.neighbors(u) {
            for (acc, &bit) in ball2.iter_mut().zip(bits.row(w)) {
                *acc |= bit;
            }
        }
        let mut dist_cache: Option<Vec<u32>> = None;
        for v in (u + 1)..n as u32 {
            let in_ball2 = (ball2[(v / 64) as usize] >> (v % 64)) & 1 == 1;
            if in_ball2 {
                continue;
            }
            // distance exactly 3 iff some neighbor of v lies in ball2
            let touches = bits.row(v).iter().zip(&ball2).any(|(a, b)| a & b != 0);
            if !touches {
                continue;
            }
            let dist = dist_cache.get_or_insert_with(|| g.bfs_distances(u, 3));
            let sp = g.path_from_distances(dist, u, v).unwrap();
            let (s1, s2) = (sp[1], sp[2]);
            // positions (u..s2) and (s1..v); the only excluded relay is
            // the interior SP node between the endpoints
            if bits.common_neighbor_excluding(u, s2, s1)
                || bits.common_neighbor_excluding(s1, v, s2)
            {
                count += 1;
            }
        }
    }
    count as f64 / g.n_pairs() as f64
}

/// Average number of SPP configurations with parameters `(L, n, m')`
/// per pair, counted on the deterministically chosen shortest path
/// (each position and each distinct alternate path once).
///
/// For `m' = n` this single-path count already realizes the 1/2
/// identification carried by [`g_degeneracy`]: the mirrored
/// configuration (subpath and alternate exchanged) lives on the twin
/// shortest path, which the deterministic choice never selects at the
/// same time. At the critical density `p = 1/N` the expectation is
/// `g(L, n) / N^2` per pair.
pub fn stat_eta_configs(g: &ErGraphSample, path_len: u32, subpath_len: u32, alt_len: u32) -> f64 {
    let n = subpath_len as usize;
    let mp = alt_len as usize;
    let pairs = g.n_pairs() as f64;
    let mut total = 0usize;
    // only components that can hold a path of the requested length
    let comp_sizes = g.component_sizes();
    let mut dist = vec![UNREACHABLE; g.n_nodes()];
    let mut order = Vec::new();
    for u in 0..g.n_nodes() as u32 {
        if comp_sizes[u as usize] <= path_len {
            continue;
        }
        g.bfs_into(u, path_len, &mut dist, &mut order);
        let candidates: Vec<u32> = order
            .iter()
            .copied()
            .filter(|&v| v > u && dist[v as usize] == path_len)
            .collect();
        for v in candidates {
            let sp = g.path_from_distances(&dist, u, v).unwrap();
            let sp_edges: Vec<(u32, u32)> = sp
                .windows(2)
                .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
                .collect();
            for pos in 0..=(path_len as usize - n) {
                let mut found = 0usize;
                let mut current = vec![sp[pos]];
                collect_alternates(
                    g,
                    sp[pos + n],
                    mp,
                    &sp_edges,
                    &mut current,
                    &mut |alt: &[u32]| {
                        if alt.len() - 1 == mp {
                            found += 1;
                        }
                    },
                );
                total += found;
            }
        }
        for &w in &order {
            dist[w as usize] = UNREACHABLE;
        }
    }
    total as f64 / pairs
}

/// Network-averaged concurrence gain of the best single purification
/// per pair. Disconnected pairs, pairs closer than three hops, and
/// pairs beyond `l_max` contribute zero; connected pairs contribute the
/// best available SPP gain over the direct strategy, clamped at zero
/// (falling back to plain swapping costs nothing).
pub fn network_delta_concurrence(g: &ErGraphSample, x: WernerState, l_max: u32) -> f64 {
    let y_lo_min = spp::y_lo_min();
    let mut total = 0.0;
    for u in 0..g.n_nodes() as u32 {
        let dist = g.bfs_distances(u, l_max);
        for v in (u + 1)..g.n_nodes() as u32 {
            let l = dist[v as usize];
            if l == UNREACHABLE || l < 3 || l > l_max {
                continue;
            }
            let y = x.x().powi(l as i32);
            // outside (y_lo_min, 1/2) no geometry has positive gain
            if y <= y_lo_min || y >= spp::Y_HI_MAX {
                continue;
            }
            let sp = g.path_from_distances(&dist, u, v).unwrap();
            let sp_edges: Vec<(u32, u32)> = sp
                .windows(2)
                .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
                .collect();
            let lf = l as f64;
            let mut best = 0.0f64;
            for n in 2..l as usize {
                let cap = 2 * n as u32 - 1;
                for pos in 0..=(l as usize - n) {
                    if let Some(d_alt) = g.excluded_distance(sp[pos], sp[pos + n], &sp_edges, cap) {
                        let gain =
                            spp::delta_c_spp(y, n as f64 / lf, (d_alt - n as u32) as f64 / lf);
                        best = best.max(gain);
                    }
                }
            }
            total += best;
        }
    }
    total / g.n_pairs() as f64
}
