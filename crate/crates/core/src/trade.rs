//! Volume-2 directed trades, trade graphs and defining-set certificates.
//!
//! A volume-2 trade here is always of transposition type: two blocks sharing
//! points `x` and `y` such that swapping `x` and `y` inside both tuples keeps
//! the covered ordered-pair multiset and produces two new tuples. Any
//! defining set must contain a block of every trade, so a block-disjoint
//! packing of edges (one block each) and cycles of length `s` (`⌈s/2⌉` blocks
//! each, since no two consecutive blocks may both be missing) is a lower
//! bound on the size of a defining set.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::catalog::CatalogEntry;
use crate::develop::shift;
use crate::error::TradeError;
use crate::model::{DirectedDesign, OrderedBlock, Point};

/// Two blocks forming a volume-2 trade under the swap `x ↔ y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TradePair {
    pub i: usize,
    pub j: usize,
    pub x: Point,
    pub y: Point,
}

/// A cyclic sequence of blocks where consecutive blocks form volume-2 trades.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicalTrade {
    pub blocks: Vec<usize>,
}

impl CyclicalTrade {
    pub fn volume(&self) -> usize {
        self.blocks.len()
    }

    /// Blocks any defining set must contain from this cycle.
    pub fn forced(&self) -> u64 {
        self.blocks.len().div_ceil(2) as u64
    }
}

/// A block-disjoint packing of trades.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoundCertificate {
    pub edges: Vec<TradePair>,
    pub cycles: Vec<CyclicalTrade>,
    /// Block count of the design the certificate refers to.
    pub total_blocks: u64,
}

impl BoundCertificate {
    /// One block per edge plus `⌈s/2⌉` per cycle of volume `s`.
    pub fn bound(&self) -> u64 {
        self.edges.len() as u64 + self.cycles.iter().map(CyclicalTrade::forced).sum::<u64>()
    }

    /// The ratio `bound / total_blocks`.
    pub fn ratio(&self) -> f64 {
        if self.total_blocks == 0 {
            0.0
        } else {
            self.bound() as f64 / self.total_blocks as f64
        }
    }

    /// Every block index referenced, edges first.
    pub fn block_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().flat_map(|e| [e.i, e.j]).chain(self.cycles.iter().flat_map(|c| c.blocks.iter().copied()))
    }

    /// Renames block indices, e.g. after sorting or merging designs.
    pub fn remap(&self, f: impl Fn(usize) -> usize) -> BoundCertificate {
        BoundCertificate {
            edges: self.edges.iter().map(|e| TradePair { i: f(e.i), j: f(e.j), ..*e }).collect(),
            cycles: self.cycles.iter().map(|c| CyclicalTrade { blocks: c.blocks.iter().map(|&b| f(b)).collect() }).collect(),
            total_blocks: self.total_blocks,
        }
    }

    /// Moves the points named in edges, for relabeled designs.
    pub fn relabel_points(&self, f: impl Fn(Point) -> Point) -> BoundCertificate {
        BoundCertificate {
            edges: self.edges.iter().map(|e| TradePair { x: f(e.x), y: f(e.y), ..*e }).collect(),
            ..self.clone()
        }
    }

    /// Disjoint union with `other`, whose block indices are shifted by
    /// `offset`.
    pub fn merge(&mut self, other: &BoundCertificate, offset: usize) {
        let moved = other.remap(|i| i + offset);
        self.edges.extend(moved.edges);
        self.cycles.extend(moved.cycles);
    }

    /// `%CERT` comment lines: `E i j x y`, `C i1 ... is`, then `BOUND n`.
    pub fn to_comment_lines(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            out.push_str(&format!("%CERT E {} {} {} {}\n", e.i, e.j, e.x, e.y));
        }
        for c in &self.cycles {
            out.push_str("%CERT C");
            for b in &c.blocks {
                out.push_str(&format!(" {b}"));
            }
            out.push('\n');
        }
        out.push_str(&format!("%CERT BOUND {}\n", self.bound()));
        out
    }
}

impl fmt::Display for BoundCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "bound {}/{} ({} edges, {} cycles, d >= {:.4})",
            self.bound(),
            self.total_blocks,
            self.edges.len(),
            self.cycles.len(),
            self.ratio()
        )
    }
}

/// Reads `%CERT` lines out of a design file. Returns `None` if there are none.
/// The stored `BOUND` must agree with the recomputed one.
pub fn parse_certificate(text: &str, total_blocks: u64) -> Result<Option<BoundCertificate>, TradeError> {
    let bad = |line: usize, why: &str| TradeError::InvalidCertificate(format!("line {line}: {why}"));
    let mut cert = BoundCertificate { total_blocks, ..Default::default() };
    let mut stored = None;
    let mut any = false;
    for (n, line) in text.lines().enumerate() {
        let Some(rest) = line.strip_prefix("%CERT ") else { continue };
        any = true;
        let mut toks = rest.split(' ');
        let tag = toks.next().unwrap_or_default();
        let nums: Vec<u64> = toks.map(|t| t.parse::<u64>().map_err(|_| bad(n + 1, "bad number"))).collect::<Result<_, _>>()?;
        match (tag, nums.as_slice()) {
            ("E", &[i, j, x, y]) => {
                cert.edges.push(TradePair { i: i as usize, j: j as usize, x: x as Point, y: y as Point })
            }
            ("C", b) if !b.is_empty() => {
                cert.cycles.push(CyclicalTrade { blocks: b.iter().map(|&i| i as usize).collect() })
            }
            ("BOUND", &[b]) => stored = Some(b),
            _ => return Err(bad(n + 1, "malformed %CERT line")),
        }
    }
    if !any {
        return Ok(None);
    }
    match stored {
        Some(b) if b == cert.bound() => Ok(Some(cert)),
        Some(b) => Err(TradeError::InvalidCertificate(format!("stored bound {b}, recomputed {}", cert.bound()))),
        None => Err(TradeError::InvalidCertificate("missing BOUND line".into())),
    }
}

fn pair_multiset(blocks: [&OrderedBlock; 2]) -> Vec<(Point, Point)> {
    let mut v: Vec<_> = blocks.iter().flat_map(|b| b.ordered_pairs()).collect();
    v.sort_unstable();
    v
}

/// Whether `b1, b2` and their images under `x ↔ y` form a volume-2 trade:
/// both points in both blocks, equal ordered-pair multisets, and the images
/// disjoint from the originals as tuples.
pub fn is_volume2_trade(b1: &OrderedBlock, b2: &OrderedBlock, x: Point, y: Point) -> bool {
    if x == y || b1 == b2 || !(b1.contains(x) && b1.contains(y) && b2.contains(x) && b2.contains(y)) {
        return false;
    }
    let (c1, c2) = (b1.transpose(x, y), b2.transpose(x, y));
    if c1 == *b1 || c1 == *b2 || c2 == *b1 || c2 == *b2 {
        return false;
    }
    pair_multiset([b1, b2]) == pair_multiset([&c1, &c2])
}

/// First swap pair (in increasing order) that makes `b1, b2` a trade.
pub fn trade_swap(b1: &OrderedBlock, b2: &OrderedBlock) -> Option<(Point, Point)> {
    let common: Vec<Point> = b1.sorted_points().into_iter().filter(|&p| b2.contains(p)).collect();
    (0..common.len())
        .flat_map(|a| (a + 1..common.len()).map(move |b| (a, b)))
        .map(|(a, b)| (common[a], common[b]))
        .find(|&(x, y)| is_volume2_trade(b1, b2, x, y))
}

/// Undirected simple graph on block indices with one witness per edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TradeGraph {
    pub vertices: usize,
    /// Sorted by `(i, j)` with `i < j`.
    pub edges: Vec<TradePair>,
}

impl TradeGraph {
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for e in &self.edges {
            adj[e.i].push(e.j);
            adj[e.j].push(e.i);
        }
        adj
    }

    fn witness(&self) -> HashMap<(usize, usize), TradePair> {
        self.edges.iter().map(|e| ((e.i, e.j), *e)).collect()
    }
}

/// All block pairs forming a volume-2 trade. Candidates are found through an
/// index of unordered point pairs, so only blocks sharing two points are
/// compared.
pub fn find_block_trades(d: &DirectedDesign) -> TradeGraph {
    let mut by_pair: HashMap<(Point, Point), Vec<usize>> = HashMap::new();
    for (i, b) in d.blocks.iter().enumerate() {
        let s = b.sorted_points();
        for a in 0..s.len() {
            for c in a + 1..s.len() {
                by_pair.entry((s[a], s[c])).or_default().push(i);
            }
        }
    }
    let mut best: BTreeMap<(usize, usize), (Point, Point)> = BTreeMap::new();
    for (&(x, y), blocks) in &by_pair {
        for a in 0..blocks.len() {
            for c in a + 1..blocks.len() {
                let (i, j) = (blocks[a], blocks[c]);
                if is_volume2_trade(&d.blocks[i], &d.blocks[j], x, y) {
                    let slot = best.entry((i, j)).or_insert((x, y));
                    *slot = (*slot).min((x, y));
                }
            }
        }
    }
    TradeGraph {
        vertices: d.blocks.len(),
        edges: best.into_iter().map(|((i, j), (x, y))| TradePair { i, j, x, y }).collect(),
    }
}

fn edge_between(w: &HashMap<(usize, usize), TradePair>, a: usize, b: usize) -> TradePair {
    w[&(a.min(b), a.max(b))]
}

/// Certificate from the block-level trade graph alone.
///
/// Components that are paths or cycles are handled exactly (`⌊s/2⌋` and
/// `⌈s/2⌉`); any other component gets a greedy maximal matching improved by
/// augmenting paths. The result is valid but not necessarily optimal.
pub fn generic_bound(d: &DirectedDesign) -> BoundCertificate {
    bound_from_graph(&find_block_trades(d))
}

pub fn bound_from_graph(g: &TradeGraph) -> BoundCertificate {
    let adj = g.adjacency();
    let witness = g.witness();
    let mut cert = BoundCertificate { total_blocks: g.vertices as u64, ..Default::default() };
    let mut seen = vec![false; g.vertices];
    for root in 0..g.vertices {
        if seen[root] || adj[root].is_empty() {
            continue;
        }
        let mut comp = vec![root];
        seen[root] = true;
        let mut head = 0;
        while head < comp.len() {
            let u = comp[head];
            head += 1;
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        let max_deg = comp.iter().map(|&u| adj[u].len()).max().unwrap_or(0);
        let edge_count: usize = comp.iter().map(|&u| adj[u].len()).sum::<usize>() / 2;
        if max_deg <= 2 {
            let is_cycle = edge_count == comp.len();
            let start = if is_cycle { comp[0] } else { *comp.iter().find(|&&u| adj[u].len() == 1).unwrap() };
            let walk = walk_path(&adj, start, comp.len());
            if is_cycle && walk.len() % 2 == 1 {
                cert.cycles.push(CyclicalTrade { blocks: walk });
            } else {
                for pair in walk.chunks_exact(2) {
                    cert.edges.push(edge_between(&witness, pair[0], pair[1]));
                }
            }
        } else {
            for (a, b) in component_matching(&adj, &comp) {
                cert.edges.push(edge_between(&witness, a, b));
            }
        }
    }
    cert
}

fn walk_path(adj: &[Vec<usize>], start: usize, len: usize) -> Vec<usize> {
    let mut walk = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while walk.len() < len {
        let next = *adj[cur].iter().filter(|&&w| w != prev).min().unwrap();
        walk.push(next);
        prev = cur;
        cur = next;
    }
    walk
}

fn component_matching(adj: &[Vec<usize>], comp: &[usize]) -> Vec<(usize, usize)> {
    const FREE: usize = usize::MAX;
    let mut mate: HashMap<usize, usize> = comp.iter().map(|&u| (u, FREE)).collect();
    for &u in comp {
        if mate[&u] != FREE {
            continue;
        }
        if let Some(&w) = adj[u].iter().find(|&&w| mate[&w] == FREE) {
            mate.insert(u, w);
            mate.insert(w, u);
        }
    }
    // Augmenting paths along simple alternating walks; blossoms are not
    // contracted, so some augmentations may be missed.
    loop {
        let mut improved = false;
        for &root in comp {
            if mate[&root] != FREE {
                continue;
            }
            let mut visited: HashMap<usize, bool> = HashMap::new();
            visited.insert(root, true);
            if augment(adj, root, &mut mate, &mut visited) {
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    let mut out: Vec<(usize, usize)> =
        mate.iter().filter(|&(&u, &w)| w != FREE && u < w).map(|(&u, &w)| (u, w)).collect();
    out.sort_unstable();
    out
}

fn augment(adj: &[Vec<usize>], u: usize, mate: &mut HashMap<usize, usize>, visited: &mut HashMap<usize, bool>) -> bool {
    for &w in &adj[u] {
        if visited.contains_key(&w) {
            continue;
        }
        visited.insert(w, true);
        let x = mate[&w];
        if x == usize::MAX {
            mate.insert(u, w);
            mate.insert(w, u);
            return true;
        }
        if visited.contains_key(&x) {
            continue;
        }
        visited.insert(x, true);
        if augment(adj, x, mate, visited) {
            mate.insert(u, w);
            mate.insert(w, u);
            return true;
        }
    }
    false
}

/// Checks a certificate against a design from scratch.
pub fn validate_certificate(d: &DirectedDesign, cert: &BoundCertificate) -> Result<(), TradeError> {
    let b = d.blocks.len();
    let mut used = vec![false; b];
    for idx in cert.block_indices() {
        if idx >= b {
            return Err(TradeError::InvalidCertificate(format!("block index {idx} out of range ({b} blocks)")));
        }
        if std::mem::replace(&mut used[idx], true) {
            return Err(TradeError::InvalidCertificate(format!("block {idx} used twice")));
        }
    }
    for e in &cert.edges {
        if !is_volume2_trade(&d.blocks[e.i], &d.blocks[e.j], e.x, e.y) {
            return Err(TradeError::InvalidCertificate(format!(
                "edge {} {} with swap ({},{}) is not a trade",
                e.i, e.j, e.x, e.y
            )));
        }
    }
    for c in &cert.cycles {
        let s = c.blocks.len();
        if s < 3 {
            return Err(TradeError::InvalidCertificate(format!("cycle of volume {s} is too short")));
        }
        for t in 0..s {
            let (a, z) = (c.blocks[t], c.blocks[(t + 1) % s]);
            if trade_swap(&d.blocks[a], &d.blocks[z]).is_none() {
                return Err(TradeError::InvalidCertificate(format!("cycle step {a} -> {z} is not a trade")));
            }
        }
    }
    Ok(())
}

/// Re-validates `cert` and reports whether its bound reaches half the blocks.
pub fn certify_half(d: &DirectedDesign, cert: &BoundCertificate) -> Result<bool, TradeError> {
    validate_certificate(d, cert)?;
    Ok(cert.bound() >= (d.blocks.len() as u64).div_ceil(2))
}

/// A trade between base block `from` and `shift(base[to], s)` with swap
/// `(x, y)` taken from the points of `base[from]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitArc {
    pub from: usize,
    pub to: usize,
    pub s: u32,
    pub x: Point,
    pub y: Point,
}

/// Every orbit-level trade relation with `from <= to`, in `(from, to, s)` order.
pub fn orbit_relations(base: &[OrderedBlock], n: u32) -> Vec<OrbitArc> {
    let mut out = Vec::new();
    for (i, bi) in base.iter().enumerate() {
        for (j, bj) in base.iter().enumerate().skip(i) {
            for s in 0..n {
                if i == j && s == 0 {
                    continue;
                }
                if let Some((x, y)) = trade_swap(bi, &shift(bj, s, n)) {
                    out.push(OrbitArc { from: i, to: j, s, x, y });
                }
            }
        }
    }
    out
}

/// Largest orbit count the exact orbit search accepts.
pub const ORBIT_LIMIT: usize = 64;
const CYCLE_MAX_LEN: usize = 9;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Clone, Debug)]
struct OrbitCycle {
    mask: u64,
    arcs: Vec<OrbitArc>,
    value: u64,
}

#[derive(Clone, Copy, Debug)]
enum Choice {
    Leave,
    SelfArc(usize),
    Pair(usize),
    Cycle(usize),
}

struct OrbitSearch<'a> {
    m: usize,
    n: u64,
    arcs: &'a [OrbitArc],
    self_best: Vec<Option<(usize, u64)>>,
    pairs_from: Vec<Vec<usize>>,
    cycles: Vec<OrbitCycle>,
    cycles_from: Vec<Vec<usize>>,
    memo: HashMap<u64, (u64, Choice)>,
}

impl OrbitSearch<'_> {
    fn self_value(&self, s: u32) -> u64 {
        let g = gcd(self.n, s as u64);
        g * (self.n / g).div_ceil(2)
    }

    fn solve(&mut self, mask: u64) -> u64 {
        if let Some(&(v, _)) = self.memo.get(&mask) {
            return v;
        }
        let free = (!mask).trailing_zeros() as usize;
        if free >= self.m {
            return 0;
        }
        let bit = 1u64 << free;
        let mut best = (self.solve(mask | bit), Choice::Leave);
        if let Some((a, val)) = self.self_best[free] {
            best.0 += val;
            best.1 = Choice::SelfArc(a);
        }
        for idx in 0..self.pairs_from[free].len() {
            let a = self.pairs_from[free][idx];
            let other = 1u64 << self.arcs[a].to;
            if mask & other == 0 {
                let v = self.n + self.solve(mask | bit | other);
                if v > best.0 {
                    best = (v, Choice::Pair(a));
                }
            }
        }
        for idx in 0..self.cycles_from[free].len() {
            let c = self.cycles_from[free][idx];
            let cm = self.cycles[c].mask;
            if mask & cm == 0 {
                let v = self.cycles[c].value + self.solve(mask | cm);
                if v > best.0 {
                    best = (v, Choice::Cycle(c));
                }
            }
        }
        self.memo.insert(mask, best);
        best.0
    }
}

fn reverse(a: &OrbitArc, n: u32) -> OrbitArc {
    let back = |p: Point| (p + n - a.s) % n;
    OrbitArc { from: a.to, to: a.from, s: (n - a.s) % n, x: back(a.x), y: back(a.y) }
}

fn find_orbit_cycles(m: usize, n: u32, arcs: &[OrbitArc]) -> Vec<OrbitCycle> {
    let mut out_arcs: Vec<Vec<OrbitArc>> = vec![Vec::new(); m];
    for a in arcs.iter().filter(|a| a.from != a.to) {
        out_arcs[a.from].push(*a);
        out_arcs[a.to].push(reverse(a, n));
    }
    let mut cycles = Vec::new();
    let mut path: Vec<OrbitArc> = Vec::new();
    fn dfs(
        start: usize,
        cur: usize,
        mask: u64,
        n: u32,
        out_arcs: &[Vec<OrbitArc>],
        path: &mut Vec<OrbitArc>,
        cycles: &mut Vec<OrbitCycle>,
    ) {
        for a in &out_arcs[cur] {
            let len = path.len() + 1;
            if a.to == start && len >= 3 && len % 2 == 1 {
                path.push(*a);
                let sigma: u64 = path.iter().map(|a| a.s as u64).sum::<u64>() % n as u64;
                let g = gcd(n as u64, sigma);
                let lifted = len as u64 * n as u64 / g;
                cycles.push(OrbitCycle { mask, arcs: path.clone(), value: g * lifted.div_ceil(2) });
                path.pop();
            } else if a.to > start && mask & (1 << a.to) == 0 && len < CYCLE_MAX_LEN {
                path.push(*a);
                dfs(start, a.to, mask | 1 << a.to, n, out_arcs, path, cycles);
                path.pop();
            }
        }
    }
    for start in 0..m {
        dfs(start, start, 1 << start, n, &out_arcs, &mut path, &mut cycles);
    }
    cycles
}

/// Certificate for a cyclically developed design, found at the orbit level.
///
/// Blocks are indexed as in [`crate::develop::develop`]: `i·n + r` is
/// `shift(base[i], r)`. Orbit relations become block structures:
///
/// * orbits `i ≠ j` at offset `s`: `n` disjoint edges;
/// * orbit `i` with itself at offset `s`: `gcd(n,s)` cycles of volume
///   `n/gcd(n,s)` (edges when the volume is 2);
/// * an odd cycle of `L ≥ 3` orbits with total offset `σ`: `gcd(n,σ)` cycles
///   of volume `L·n/gcd(n,σ)`.
///
/// The packing of orbits into these structures is optimized exactly by a
/// memoized search over the set of used orbits; among equal values the
/// first option in `(orbit, relation)` order wins.
pub fn orbit_scan(base: &[OrderedBlock], n: u32) -> Result<BoundCertificate, TradeError> {
    if n == 0 {
        return Err(TradeError::NotDeveloped);
    }
    let m = base.len();
    if m > ORBIT_LIMIT {
        return Err(TradeError::TooManyOrbits { orbits: m, limit: ORBIT_LIMIT });
    }
    let arcs = orbit_relations(base, n);
    let mut search = OrbitSearch {
        m,
        n: n as u64,
        arcs: &arcs,
        self_best: vec![None; m],
        pairs_from: vec![Vec::new(); m],
        cycles: find_orbit_cycles(m, n, &arcs),
        cycles_from: vec![Vec::new(); m],
        memo: HashMap::new(),
    };
    for (idx, a) in arcs.iter().enumerate() {
        if a.from == a.to {
            let val = search.self_value(a.s);
            if search.self_best[a.from].is_none_or(|(_, v)| val > v) {
                search.self_best[a.from] = Some((idx, val));
            }
        } else {
            search.pairs_from[a.from].push(idx);
        }
    }
    for (idx, c) in search.cycles.iter().enumerate() {
        search.cycles_from[c.mask.trailing_zeros() as usize].push(idx);
    }
    let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    // Orbits beyond `m` are marked used so the search stops there.
    let start = !full;
    search.solve(start);

    let mut cert = BoundCertificate { total_blocks: m as u64 * n as u64, ..Default::default() };
    let idx = |orbit: usize, r: u64| orbit * n as usize + (r % n as u64) as usize;
    let sh = |p: Point, r: u64| ((p as u64 + r) % n as u64) as Point;
    let mut mask = start;
    while mask != u64::MAX {
        let free = (!mask).trailing_zeros() as usize;
        let (_, choice) = search.memo[&mask];
        match choice {
            Choice::Leave => mask |= 1 << free,
            Choice::SelfArc(a) => {
                let a = arcs[a];
                let g = gcd(n as u64, a.s as u64);
                let len = n as u64 / g;
                for r in 0..g {
                    let walk: Vec<u64> = (0..len).map(|t| r + t * a.s as u64).collect();
                    if len == 2 {
                        let (i, j) = (idx(free, walk[0]), idx(free, walk[1]));
                        cert.edges.push(TradePair { i, j, x: sh(a.x, walk[0]), y: sh(a.y, walk[0]) });
                    } else {
                        cert.cycles.push(CyclicalTrade { blocks: walk.iter().map(|&t| idx(free, t)).collect() });
                    }
                }
                mask |= 1 << free;
            }
            Choice::Pair(a) => {
                let a = arcs[a];
                for r in 0..n as u64 {
                    cert.edges.push(TradePair {
                        i: idx(a.from, r),
                        j: idx(a.to, r + a.s as u64),
                        x: sh(a.x, r),
                        y: sh(a.y, r),
                    });
                }
                mask |= 1 << a.from | 1 << a.to;
            }
            Choice::Cycle(c) => {
                let cyc = &search.cycles[c];
                let sigma: u64 = cyc.arcs.iter().map(|a| a.s as u64).sum::<u64>() % n as u64;
                let g = gcd(n as u64, sigma);
                let laps = n as u64 / g;
                for r in 0..g {
                    let mut blocks = Vec::new();
                    let mut offset = r;
                    for _ in 0..laps {
                        for a in &cyc.arcs {
                            blocks.push(idx(a.from, offset));
                            offset += a.s as u64;
                        }
                    }
                    cert.cycles.push(CyclicalTrade { blocks });
                }
                mask |= cyc.mask;
            }
        }
    }
    cert.edges.sort_unstable();
    Ok(cert)
}

/// [`orbit_scan`] for a catalog entry.
pub fn orbit_trade_scan(entry: &CatalogEntry) -> Result<BoundCertificate, TradeError> {
    orbit_scan(&entry.base_blocks(), entry.modulus)
}
