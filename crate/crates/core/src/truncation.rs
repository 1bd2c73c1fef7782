//! Truncated transversal designs: TD(k, m) with the last few groups cut down
//! to `a_i ∈ {0} ∪ [3, m]` points, weighted by 3 and filled with η = 1.
//!
//! The result has order `v = 18m + 3·Σa_i + 1` (TD(8, m): six full groups;
//! TD(9, m): six full groups and three truncated ones). The printed case
//! table gives ranges for `v` and `Σa_i`; this module ships it as data,
//! expands it to concrete instances with one fixed split, and reports rows
//! that cannot be realised.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::catalog::{catalog_entry, catalog_list, EntryKind};
use crate::recipe::shipped_recipes;

/// One printed row.
#[derive(Clone, Copy, Debug)]
pub struct TableRow {
    /// Inclusive range of orders, or `None` when `orders` lists them.
    pub v_range: Option<(u32, u32)>,
    pub orders: &'static [u32],
    pub v_excluded: &'static [u32],
    pub m: u32,
    /// Number of truncated groups (2 → TD(8, m), 3 → TD(9, m)).
    pub truncated: u32,
    pub sum_range: (u32, u32),
    pub sum_excluded: &'static [u32],
}

impl TableRow {
    pub fn orders(&self) -> Vec<u32> {
        let listed = match self.v_range {
            Some((lo, hi)) => (lo..=hi).filter(|v| v % 3 == 1).collect(),
            None => self.orders.to_vec(),
        };
        listed.into_iter().filter(|v| !self.v_excluded.contains(v)).collect()
    }

    pub fn sums(&self) -> Vec<u32> {
        (self.sum_range.0..=self.sum_range.1).filter(|s| !self.sum_excluded.contains(s)).collect()
    }

    pub fn k(&self) -> u32 {
        6 + self.truncated
    }
}

const fn row(
    v_range: Option<(u32, u32)>,
    orders: &'static [u32],
    v_excluded: &'static [u32],
    m: u32,
    truncated: u32,
    sum_range: (u32, u32),
    sum_excluded: &'static [u32],
) -> TableRow {
    TableRow { v_range, orders, v_excluded, m, truncated, sum_range, sum_excluded }
}

/// The case table, transcribed as printed. The first row is the TD(8, 7)
/// construction for 136 and 139.
pub static TABLE: &[TableRow] = &[
    row(None, &[136, 139], &[], 7, 2, (3, 4), &[]),
    row(Some((277, 298)), &[], &[], 11, 3, (26, 33), &[29, 30]),
    row(None, &[301], &[], 16, 3, (4, 4), &[]),
    row(Some((409, 433)), &[], &[418, 421], 16, 3, (40, 48), &[43, 44]),
    row(Some((436, 463)), &[], &[451], 19, 3, (31, 40), &[36]),
    row(None, &[478, 481], &[], 19, 3, (45, 46), &[]),
    row(None, &[496, 499], &[], 19, 3, (51, 52), &[]),
    row(None, &[553], &[], 19, 3, (22, 22), &[]),
];

/// The orders the table is meant to settle.
pub static TARGETS: &[u32] = &[
    136, 139, 277, 280, 283, 292, 295, 298, 301, 409, 412, 415, 424, 427, 430, 433, 436, 439, 442, 445, 448, 454, 457,
    460, 463, 478, 481, 496, 499, 553,
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub v: u32,
    pub m: u32,
    /// Sizes of the truncated groups, largest first.
    pub parts: Vec<u32>,
}

impl Instance {
    pub fn k(&self) -> u32 {
        6 + self.parts.len() as u32
    }

    pub fn name(&self) -> String {
        let tag = if self.parts.len() == 2 { "lemma18" } else { "lemma19" };
        format!("{tag}-v{}", self.v)
    }

    /// Orders of the fillers: `3m + 1` and `3a + 1` for each nonzero part.
    pub fn filler_orders(&self) -> Vec<u32> {
        let set: BTreeSet<u32> =
            std::iter::once(self.m).chain(self.parts.iter().copied().filter(|&a| a > 0)).map(|a| 3 * a + 1).collect();
        set.into_iter().collect()
    }

    /// Block sizes of the truncated TD: `k` minus how many truncated groups a
    /// block can miss.
    pub fn block_sizes(&self) -> std::ops::RangeInclusive<u32> {
        let k = self.k();
        let cut = self.parts.iter().filter(|&&a| a < self.m).count() as u32;
        let gone = self.parts.iter().filter(|&&a| a == 0).count() as u32;
        (k - cut)..=(k - gone)
    }

    /// Recipe text for this instance. Fillers come from the catalog when
    /// possible, else from a shipped recipe for that order.
    pub fn recipe_text(&self) -> Result<String, String> {
        let k = self.k();
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        let mut t = String::new();
        let _ = writeln!(
            t,
            "% ({},4,2)DD: truncate TD({k},{}) to sizes {} in its last groups, weight by 3, fill with eta = 1.",
            self.v,
            self.m,
            parts.join(",")
        );
        let _ = writeln!(t, "let t = td {k} {}", self.m);
        let dels: Vec<String> = self
            .parts
            .iter()
            .enumerate()
            .filter(|(_, &a)| a < self.m)
            .map(|(i, &a)| format!("group={}:count={}", 6 + i, self.m - a))
            .collect();
        let _ = writeln!(t, "let gdd = delete t {}", dels.join(" "));
        let mut ing = Vec::new();
        for s in self.block_sizes() {
            let _ = writeln!(t, "let i{s} = catalog dgdd-3pow{s}");
            ing.push(format!("i{s}"));
        }
        let _ = writeln!(t, "let g = weight gdd w=3 using {}", ing.join(","));
        let mut fill = Vec::new();
        for u in self.filler_orders() {
            let _ = writeln!(t, "let f{u} = {}", filler_source(u).ok_or(format!("no design on {u} points"))?);
            fill.push(format!("f{u}"));
        }
        let _ = writeln!(t, "let out = fill g eta=1 using {}", fill.join(","));
        let _ = writeln!(t, "output out");
        Ok(t)
    }
}

/// Where a DD of order `v` comes from: a catalog entry or a shipped recipe.
pub fn filler_source(v: u32) -> Option<String> {
    let id = format!("dd-{v}");
    if catalog_entry(&id).is_ok_and(|e| e.kind == EntryKind::Dd) {
        return Some(format!("catalog {id}"));
    }
    shipped_recipes().find(|r| r.runnable && r.target_v() == Some(v)).map(|r| format!("recipe {}", r.name))
}

/// Splits `sum` into `count` parts from `{0} ∪ [3, m]`, lexicographically
/// largest first.
pub fn split_sum(sum: u32, count: u32, m: u32) -> Option<Vec<u32>> {
    if count == 0 {
        return (sum == 0).then(Vec::new);
    }
    let mut a = sum.min(m);
    loop {
        if a == 0 || a >= 3 {
            if let Some(mut rest) = split_sum(sum - a, count - 1, m) {
                rest.insert(0, a);
                return Some(rest);
            }
        }
        if a == 0 {
            return None;
        }
        a -= 1;
    }
}

/// A row order that cannot be produced as printed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableIssue {
    pub row: usize,
    pub v: u32,
    pub reason: String,
}

/// Expands the table. Each order gets the split `Σa_i = (v − 1 − 18m)/3`;
/// orders whose sum falls outside the row's printed range, or cannot be
/// split, are reported instead.
pub fn expand_table() -> (Vec<Instance>, Vec<TableIssue>) {
    let mut instances = Vec::new();
    let mut issues = Vec::new();
    for (ri, r) in TABLE.iter().enumerate() {
        let sums = r.sums();
        for v in r.orders() {
            let base = 18 * r.m + 1;
            let issue = |reason: String| TableIssue { row: ri, v, reason };
            if v < base || (v - base) % 3 != 0 {
                issues.push(issue(format!("{v} is not 18·{} + 3s + 1", r.m)));
                continue;
            }
            let s = (v - base) / 3;
            if !sums.contains(&s) {
                // Rows whose range skips s on purpose list the gap in sum_excluded.
                if r.sum_excluded.contains(&s) {
                    continue;
                }
                let mut reason = format!("needs sum {s}, row allows {}..={}", r.sum_range.0, r.sum_range.1);
                if s > r.truncated * r.m {
                    let _ = write!(reason, "; {s} > {}·{} so no split exists", r.truncated, r.m);
                }
                if let Some(m) = consistent_m(v, r) {
                    let _ = write!(reason, "; the printed sums fit m={m}");
                }
                issues.push(issue(reason));
                continue;
            }
            match split_sum(s, r.truncated, r.m) {
                Some(parts) => instances.push(Instance { v, m: r.m, parts }),
                None => issues.push(issue(format!("sum {s} has no split into {} parts", r.truncated))),
            }
        }
    }
    (instances, issues)
}

/// The `m` for which `v = 18m + 3s + 1` with `s` in the row's printed sums
/// and a valid split.
fn consistent_m(v: u32, r: &TableRow) -> Option<u32> {
    let sums = r.sums();
    (3..=v / 18).find(|&m| {
        let rest = v - 18 * m - 1;
        rest % 3 == 0 && sums.contains(&(rest / 3)) && split_sum(rest / 3, r.truncated, m).is_some()
    })
}

/// Target orders no instance covers.
pub fn uncovered_targets(instances: &[Instance]) -> Vec<u32> {
    TARGETS.iter().copied().filter(|v| !instances.iter().any(|i| i.v == *v)).collect()
}

/// Whether every filler order of `inst` has a source.
pub fn has_fillers(inst: &Instance) -> bool {
    inst.filler_orders().into_iter().all(|u| filler_source(u).is_some())
}

/// DGDDs of type 3^s that the catalog holds.
pub fn available_ingredients() -> Vec<u32> {
    catalog_list()
        .iter()
        .filter_map(|e| e.id.strip_prefix("dgdd-3pow").and_then(|s| s.parse().ok()))
        .collect()
}
