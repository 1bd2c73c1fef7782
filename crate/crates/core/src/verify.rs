//! Exact checks of the defining properties, reported as data with witnesses.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::VerifyError;
use crate::model::{
    expected_block_count_dd, expected_block_count_dgdd, expected_block_count_gdd, DesignObject, DirectedDesign,
    GroupedDesign, Point,
};

/// What an object is being verified as.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Dd,
    Dgdd,
    Td,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Dd => "DD",
            Kind::Dgdd => "DGDD",
            Kind::Td => "TD",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Concrete evidence for a failed check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// An ordered pair (or, if `ordered` is false, unordered pair) with the
    /// wrong coverage.
    Pair { x: Point, y: Point, count: u32, expected: u32, ordered: bool },
    /// Two blocks with the same underlying point set.
    Blocks { first: usize, second: usize },
    /// A point triple contained in two blocks.
    Triple { triple: [Point; 3], first: usize, second: usize },
    /// A block meeting one group in two points.
    BlockGroup { block: usize, group: usize, x: Point, y: Point },
    /// A block of the wrong size.
    BlockSize { block: usize, size: usize, expected: usize },
    /// Block count differs from the counting formula.
    Count { actual: u64, expected: u64 },
    /// Counting formula has no integral solution.
    NonIntegral,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Witness::Pair { x, y, count, expected, ordered } => {
                if ordered {
                    write!(f, "ordered pair ({x},{y}) covered {count} times, expected {expected}")
                } else {
                    write!(f, "pair {{{x},{y}}} covered {count} times, expected {expected}")
                }
            }
            Witness::Blocks { first, second } => write!(f, "blocks {first} and {second} have the same point set"),
            Witness::Triple { triple: [a, b, c], first, second } => {
                write!(f, "triple {{{a},{b},{c}}} lies in blocks {first} and {second}")
            }
            Witness::BlockGroup { block, group, x, y } => {
                write!(f, "block {block} meets group {group} in points {x} and {y}")
            }
            Witness::BlockSize { block, size, expected } => {
                write!(f, "block {block} has {size} points, expected {expected}")
            }
            Witness::Count { actual, expected } => write!(f, "{actual} blocks, formula requires {expected}"),
            Witness::NonIntegral => write!(f, "counting formula is not integral for these parameters"),
        }
    }
}

/// One named check. A failure always carries a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckItem {
    pub name: &'static str,
    pub passed: bool,
    /// Number of violating pairs, triples or blocks.
    pub violations: usize,
    pub witness: Option<Witness>,
}

impl CheckItem {
    fn from_violations(name: &'static str, violations: usize, witness: Option<Witness>) -> Self {
        debug_assert_eq!(violations == 0, witness.is_none());
        CheckItem { name, passed: violations == 0, violations, witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub kind: Kind,
    pub v: u32,
    pub k: u32,
    pub lambda: u32,
    pub actual_blocks: u64,
    pub expected_blocks: Option<u64>,
    pub checks: Vec<CheckItem>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckItem> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&CheckItem> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("verify {} v={} k={} lambda={}\n", self.kind, self.v, self.k, self.lambda);
        match self.expected_blocks {
            Some(e) => out.push_str(&format!("  blocks: {} (expected {e})\n", self.actual_blocks)),
            None => out.push_str(&format!("  blocks: {}\n", self.actual_blocks)),
        }
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("  [{tag}] {}", c.name));
            if let Some(w) = &c.witness {
                out.push_str(&format!(": {w} ({} violations)", c.violations));
            }
            out.push('\n');
        }
        out.push_str(&format!("verdict: {}\n", if self.passed() { "PASS" } else { "FAIL" }));
        out
    }

    /// Machine-readable form as `%REPORT` comment lines.
    pub fn to_comment_lines(&self) -> String {
        let mut out = format!(
            "%REPORT kind={} v={} k={} lambda={} blocks={} expected={}\n",
            self.kind,
            self.v,
            self.k,
            self.lambda,
            self.actual_blocks,
            self.expected_blocks.map_or("none".to_string(), |e| e.to_string())
        );
        for c in &self.checks {
            out.push_str(&format!(
                "%REPORT check={} result={} violations={}",
                c.name,
                if c.passed { "pass" } else { "fail" },
                c.violations
            ));
            if let Some(w) = &c.witness {
                out.push_str(&format!(" witness=\"{w}\""));
            }
            out.push('\n');
        }
        out.push_str(&format!("%REPORT verdict={}\n", if self.passed() { "pass" } else { "fail" }));
        out
    }
}

const PAR_CHUNK: usize = 2048;

/// Ordered pair coverage `count[x·v + y]`, sharded across workers.
pub fn ordered_pair_counts(d: &DirectedDesign) -> Vec<u32> {
    let v = d.params.v as usize;
    let tally = |mut acc: Vec<u32>, blocks: &[crate::model::OrderedBlock]| {
        for b in blocks {
            for (x, y) in b.ordered_pairs() {
                acc[x as usize * v + y as usize] += 1;
            }
        }
        acc
    };
    if d.blocks.len() <= PAR_CHUNK {
        return tally(vec![0; v * v], &d.blocks);
    }
    d.blocks
        .par_chunks(PAR_CHUNK)
        .fold(|| vec![0u32; v * v], tally)
        .reduce(
            || vec![0u32; v * v],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

/// Scans pairs in lexicographic order. The witness is the first uncovered
/// pair if there is one, otherwise the first mis-covered pair.
fn pair_scan(
    name: &'static str,
    v: u32,
    ordered: bool,
    count: impl Fn(Point, Point) -> u32,
    expected: impl Fn(Point, Point) -> u32,
) -> CheckItem {
    let mut violations = 0;
    let mut first_bad = None;
    let mut first_zero = None;
    for x in 0..v {
        let ys = if ordered { 0 } else { x + 1 };
        for y in ys..v {
            if x == y {
                continue;
            }
            let (c, e) = (count(x, y), expected(x, y));
            if c != e {
                violations += 1;
                let w = Witness::Pair { x, y, count: c, expected: e, ordered };
                if c == 0 && first_zero.is_none() {
                    first_zero = Some(w.clone());
                }
                first_bad.get_or_insert(w);
            }
        }
    }
    CheckItem::from_violations(name, violations, first_zero.or(first_bad))
}

/// Every ordered pair of distinct points covered exactly λ times.
pub fn check_directed_balance(d: &DirectedDesign) -> CheckItem {
    let v = d.params.v;
    let counts = ordered_pair_counts(d);
    pair_scan("directed-balance", v, true, |x, y| counts[(x * v + y) as usize], |_, _| d.params.lambda)
}

/// No two blocks share the same underlying point set.
pub fn check_simple(d: &DirectedDesign) -> CheckItem {
    let mut seen: HashMap<_, usize> = HashMap::with_capacity(d.blocks.len());
    let mut violations = 0;
    let mut witness = None;
    for (i, b) in d.blocks.iter().enumerate() {
        match seen.get(&b.sorted_points()) {
            Some(&first) => {
                violations += 1;
                witness.get_or_insert(Witness::Blocks { first, second: i });
            }
            None => {
                seen.insert(b.sorted_points(), i);
            }
        }
    }
    CheckItem::from_violations("simple", violations, witness)
}

fn triple_key(a: Point, b: Point, c: Point) -> u64 {
    ((a as u64) << 42) | ((b as u64) << 21) | c as u64
}

/// No point triple in two blocks, via a triple index.
///
/// Equivalent to every two blocks meeting in at most two points.
pub fn check_super_simple(d: &DirectedDesign) -> CheckItem {
    let mut index: HashMap<u64, usize> = HashMap::with_capacity(d.blocks.len() * 4);
    let mut violations = 0;
    let mut witness = None;
    for (i, b) in d.blocks.iter().enumerate() {
        let s = b.sorted_points();
        for p in 0..s.len() {
            for q in p + 1..s.len() {
                for r in q + 1..s.len() {
                    let key = triple_key(s[p], s[q], s[r]);
                    match index.get(&key) {
                        Some(&first) if first != i => {
                            violations += 1;
                            witness.get_or_insert(Witness::Triple { triple: [s[p], s[q], s[r]], first, second: i });
                        }
                        Some(_) => {}
                        None => {
                            index.insert(key, i);
                        }
                    }
                }
            }
        }
    }
    CheckItem::from_violations("super-simple", violations, witness)
}

/// Underlying unordered pair coverage: `2λ` for pairs that should be
/// covered, 0 for pairs inside a group (when groups are given).
pub fn check_underlying_pairs(d: &DirectedDesign, group_of: Option<&[usize]>) -> CheckItem {
    let v = d.params.v;
    let counts = ordered_pair_counts(d);
    let lam = d.params.lambda;
    pair_scan(
        "underlying-pair-balance",
        v,
        false,
        |x, y| counts[(x * v + y) as usize] + counts[(y * v + x) as usize],
        |x, y| match group_of {
            Some(g) if g[x as usize] == g[y as usize] => 0,
            _ => 2 * lam,
        },
    )
}

/// No block meets a group in two points.
pub fn check_transversal(g: &GroupedDesign) -> CheckItem {
    let group_of = g.group_index();
    let mut violations = 0;
    let mut witness = None;
    for (i, b) in g.design.blocks.iter().enumerate() {
        let pts = b.points();
        let clash = (0..pts.len())
            .flat_map(|p| (p + 1..pts.len()).map(move |q| (p, q)))
            .find(|&(p, q)| group_of[pts[p] as usize] == group_of[pts[q] as usize]);
        if let Some((p, q)) = clash {
            violations += 1;
            witness.get_or_insert(Witness::BlockGroup {
                block: i,
                group: group_of[pts[p] as usize],
                x: pts[p],
                y: pts[q],
            });
        }
    }
    CheckItem::from_violations("transversal", violations, witness)
}

/// Cross-group pairs covered exactly λ times (ordered if directed, unordered
/// otherwise), pairs inside a group never. Transversality is reported
/// separately by [`check_transversal`].
pub fn check_dgdd_balance(g: &GroupedDesign) -> CheckItem {
    let v = g.design.params.v;
    let lam = g.design.params.lambda;
    let group_of = g.group_index();
    let counts = ordered_pair_counts(&g.design);
    let expected = |x: Point, y: Point| if group_of[x as usize] == group_of[y as usize] { 0 } else { lam };
    if g.directed {
        pair_scan("group-balance", v, true, |x, y| counts[(x * v + y) as usize], expected)
    } else {
        let c = |x: Point, y: Point| counts[(x * v + y) as usize] + counts[(y * v + x) as usize];
        pair_scan("group-balance", v, false, c, expected)
    }
}

/// Blocks meet every group exactly once and every unordered cross pair is
/// covered exactly once.
pub fn check_td(g: &GroupedDesign) -> CheckItem {
    let v = g.design.params.v;
    let groups = g.groups().len();
    if let Some((block, b)) = g.design.blocks.iter().enumerate().find(|(_, b)| b.len() != groups) {
        let violations = g.design.blocks.iter().filter(|b| b.len() != groups).count();
        return CheckItem::from_violations(
            "td",
            violations,
            Some(Witness::BlockSize { block, size: b.len(), expected: groups }),
        );
    }
    let transversal = check_transversal(g);
    if !transversal.passed {
        return CheckItem { name: "td", ..transversal };
    }
    let group_of = g.group_index();
    let counts = ordered_pair_counts(&g.design);
    pair_scan(
        "td",
        v,
        false,
        |x, y| counts[(x * v + y) as usize] + counts[(y * v + x) as usize],
        |x, y| u32::from(group_of[x as usize] != group_of[y as usize]),
    )
}

fn check_block_sizes(d: &DirectedDesign) -> CheckItem {
    let k = d.params.k as usize;
    let mut bad = d.blocks.iter().enumerate().filter(|(_, b)| b.len() != k);
    let witness = bad.next().map(|(block, b)| Witness::BlockSize { block, size: b.len(), expected: k });
    let violations = witness.as_ref().map_or(0, |_| 1 + bad.count());
    CheckItem::from_violations("block-size", violations, witness)
}

fn check_count(actual: u64, expected: Option<u64>) -> CheckItem {
    match expected {
        None => CheckItem::from_violations("block-count", 1, Some(Witness::NonIntegral)),
        Some(e) if e != actual => CheckItem::from_violations("block-count", 1, Some(Witness::Count { actual, expected: e })),
        Some(_) => CheckItem::from_violations("block-count", 0, None),
    }
}

/// Runs the block-count check plus every check that applies to `kind`.
///
/// * DD: block size, count, directed balance, simple, super-simple,
///   underlying pair balance.
/// * DGDD (directed): the same with cross-pair balance and transversality.
/// * DGDD (undirected master): transversality, balance and simplicity; the
///   count check is skipped when block sizes are mixed.
/// * TD: count `n²` and the TD check.
pub fn full_report(obj: &DesignObject, kind: Kind) -> Result<VerificationReport, VerifyError> {
    let d = obj.design();
    let p = d.params;
    let actual = d.block_count() as u64;
    let mut checks = Vec::new();
    let expected = match (kind, obj) {
        (Kind::Dd, DesignObject::Plain(_)) => {
            let e = expected_block_count_dd(p).ok();
            checks.push(check_count(actual, e));
            checks.push(check_block_sizes(d));
            checks.push(check_directed_balance(d));
            checks.push(check_simple(d));
            checks.push(check_super_simple(d));
            checks.push(check_underlying_pairs(d, None));
            e
        }
        (Kind::Dgdd, DesignObject::Grouped(g)) if g.directed => {
            let e = expected_block_count_dgdd(&g.group_type(), p.lambda, p.k).ok();
            checks.push(check_count(actual, e));
            checks.push(check_block_sizes(d));
            checks.push(check_transversal(g));
            checks.push(check_dgdd_balance(g));
            checks.push(check_simple(d));
            checks.push(check_super_simple(d));
            checks.push(check_underlying_pairs(d, Some(&g.group_index())));
            e
        }
        (Kind::Dgdd, DesignObject::Grouped(g)) => {
            let uniform = d.blocks.iter().all(|b| b.len() == p.k as usize);
            let e = if uniform { expected_block_count_gdd(&g.group_type(), p.lambda, p.k).ok() } else { None };
            if uniform {
                checks.push(check_count(actual, e));
            }
            checks.push(check_transversal(g));
            checks.push(check_dgdd_balance(g));
            checks.push(check_simple(d));
            e
        }
        (Kind::Td, DesignObject::Grouped(g)) => {
            if g.directed {
                return Err(VerifyError::KindMismatch { kind: "TD", reason: "design is directed".into() });
            }
            let groups = g.groups().len() as u64;
            let e = (groups > 0 && p.v as u64 % groups == 0).then(|| (p.v as u64 / groups).pow(2));
            checks.push(check_count(actual, e));
            checks.push(check_td(g));
            e
        }
        (kind, DesignObject::Plain(_)) => {
            return Err(VerifyError::KindMismatch { kind: kind.name(), reason: "design has no groups".into() })
        }
        (Kind::Dd, DesignObject::Grouped(_)) => {
            return Err(VerifyError::KindMismatch { kind: "DD", reason: "design has groups".into() })
        }
    };
    Ok(VerificationReport {
        kind,
        v: p.v,
        k: p.k,
        lambda: p.lambda,
        actual_blocks: actual,
        expected_blocks: expected,
        checks,
    })
}

/// The kind a design file most naturally verifies as.
pub fn default_kind(obj: &DesignObject) -> Kind {
    match obj {
        DesignObject::Plain(_) => Kind::Dd,
        DesignObject::Grouped(_) => Kind::Dgdd,
    }
}
