//! Core domain types for directed designs and their grouped variants.
//!
//! Points are 0-based `u32` labels in `[0, v)`. A block is an ordered tuple of
//! distinct points; for undirected masters (GDDs, TDs) the tuple order carries
//! no meaning but is still preserved so files round-trip exactly.

use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::ModelError;

/// A point label.
pub type Point = u32;

/// Parameters of a 2-(v,k,λ) design.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DesignParams {
    pub v: u32,
    pub k: u32,
    pub lambda: u32,
}

impl DesignParams {
    /// Strength is fixed at 2 throughout.
    pub const T: u32 = 2;

    pub fn new(v: u32, k: u32, lambda: u32) -> Result<Self, ModelError> {
        if k < 2 || v < k || lambda < 1 {
            return Err(ModelError::InvalidParams { v, k, lambda });
        }
        Ok(DesignParams { v, k, lambda })
    }

    /// Parameters without the `v >= k` restriction, for empty or degenerate
    /// containers that are still representable (e.g. a header-only file).
    pub(crate) fn unchecked(v: u32, k: u32, lambda: u32) -> Self {
        DesignParams { v, k, lambda }
    }
}

/// An ordered tuple of distinct points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedBlock(SmallVec<[Point; 8]>);

impl OrderedBlock {
    /// Builds a block, rejecting repeated points.
    pub fn new(points: &[Point]) -> Result<Self, ModelError> {
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(ModelError::RepeatedPoint { point: *p });
            }
        }
        Ok(OrderedBlock(SmallVec::from_slice(points)))
    }

    /// Builds a block from points already known to be distinct.
    pub(crate) fn from_distinct(points: SmallVec<[Point; 8]>) -> Self {
        debug_assert!(OrderedBlock::new(&points).is_ok());
        OrderedBlock(points)
    }

    pub fn points(&self) -> &[Point] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.0.contains(&p)
    }

    /// Position of `p` inside the tuple.
    pub fn position(&self, p: Point) -> Option<usize> {
        self.0.iter().position(|&q| q == p)
    }

    /// Underlying point set, sorted ascending.
    pub fn sorted_points(&self) -> SmallVec<[Point; 8]> {
        let mut s = self.0.clone();
        s.sort_unstable();
        s
    }

    /// The ordered pairs covered by this block: each point directed toward
    /// every later point of the tuple.
    pub fn ordered_pairs(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let pts = &self.0;
        (0..pts.len()).flat_map(move |i| (i + 1..pts.len()).map(move |j| (pts[i], pts[j])))
    }

    /// Exchanges the labels `x` and `y` wherever they occur.
    pub fn transpose(&self, x: Point, y: Point) -> OrderedBlock {
        OrderedBlock(
            self.0
                .iter()
                .map(|&p| {
                    if p == x {
                        y
                    } else if p == y {
                        x
                    } else {
                        p
                    }
                })
                .collect(),
        )
    }

    /// Applies a point relabeling.
    pub fn map(&self, f: impl Fn(Point) -> Point) -> OrderedBlock {
        OrderedBlock(self.0.iter().map(|&p| f(p)).collect())
    }
}

impl fmt::Debug for OrderedBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for OrderedBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl From<[Point; 4]> for OrderedBlock {
    /// Panics if the entries repeat; intended for literal tables.
    fn from(p: [Point; 4]) -> Self {
        OrderedBlock::new(&p).expect("literal block with repeated point")
    }
}

/// A parameter set together with a multiset of blocks.
///
/// Duplicated blocks are representable on purpose so the verifier can report
/// them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedDesign {
    pub params: DesignParams,
    pub blocks: Vec<OrderedBlock>,
}

impl DirectedDesign {
    /// Checks that every point is in range. Block length is not enforced
    /// here because undirected masters may mix block sizes.
    pub fn new(params: DesignParams, blocks: Vec<OrderedBlock>) -> Result<Self, ModelError> {
        for (index, b) in blocks.iter().enumerate() {
            if let Some(&p) = b.points().iter().find(|&&p| p >= params.v) {
                return Err(ModelError::PointOutOfRange { index, point: p, v: params.v });
            }
        }
        Ok(DirectedDesign { params, blocks })
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Blocks in lexicographic order together with the permutation that was
    /// applied: `order[new] = old`.
    pub fn sorted_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.blocks.len()).collect();
        order.sort_by(|&a, &b| self.blocks[a].cmp(&self.blocks[b]).then(a.cmp(&b)));
        order
    }

    /// Multiset of blocks, for order-insensitive comparison.
    pub fn block_multiset(&self) -> BTreeMap<OrderedBlock, usize> {
        let mut m = BTreeMap::new();
        for b in &self.blocks {
            *m.entry(b.clone()).or_insert(0) += 1;
        }
        m
    }
}

/// Multiset of group sizes `g1^u1 g2^u2 ...`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupType {
    parts: BTreeMap<u32, u32>,
}

impl GroupType {
    /// Builds a type from `(size, multiplicity)` parts. Zero multiplicities
    /// are dropped; zero sizes are rejected.
    pub fn new(parts: &[(u32, u32)]) -> Result<Self, ModelError> {
        let mut map = BTreeMap::new();
        for &(g, u) in parts {
            if g == 0 {
                return Err(ModelError::EmptyGroup);
            }
            if u > 0 {
                *map.entry(g).or_insert(0) += u;
            }
        }
        Ok(GroupType { parts: map })
    }

    /// Uniform type `g^u`.
    pub fn uniform(g: u32, u: u32) -> Self {
        GroupType::new(&[(g, u)]).expect("uniform group type with zero size")
    }

    /// Type read off a list of group sizes.
    pub fn from_sizes(sizes: impl IntoIterator<Item = u32>) -> Self {
        let mut map = BTreeMap::new();
        for g in sizes {
            *map.entry(g).or_insert(0) += 1;
        }
        GroupType { parts: map }
    }

    /// Parts as `(size, multiplicity)`, largest size first.
    pub fn parts(&self) -> Vec<(u32, u32)> {
        self.parts.iter().rev().map(|(&g, &u)| (g, u)).collect()
    }

    /// Σ g·u.
    pub fn total_points(&self) -> u64 {
        self.parts.iter().map(|(&g, &u)| g as u64 * u as u64).sum()
    }

    /// Number of groups Σ u.
    pub fn group_count(&self) -> u64 {
        self.parts.values().map(|&u| u as u64).sum()
    }

    /// Σ u·g·(g−1): ordered pairs lying inside a group.
    pub fn within_ordered_pairs(&self) -> u64 {
        self.parts.iter().map(|(&g, &u)| u as u64 * g as u64 * (g as u64).saturating_sub(1)).sum()
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (g, u)) in self.parts().into_iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{g}^{u}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupType({self})")
    }
}

/// A design whose points are partitioned into groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupedDesign {
    pub design: DirectedDesign,
    groups: Vec<Vec<Point>>,
    pub directed: bool,
}

impl GroupedDesign {
    /// Validates that `groups` is a partition of `[0, v)` into nonempty cells.
    /// Each cell is stored sorted; cell order is kept as given.
    pub fn new(design: DirectedDesign, groups: Vec<Vec<Point>>, directed: bool) -> Result<Self, ModelError> {
        let v = design.params.v as usize;
        let mut seen = vec![false; v];
        let mut cells = Vec::with_capacity(groups.len());
        for mut cell in groups {
            if cell.is_empty() {
                return Err(ModelError::EmptyGroup);
            }
            cell.sort_unstable();
            for &p in &cell {
                let slot = seen
                    .get_mut(p as usize)
                    .ok_or(ModelError::NotAPartition { reason: format!("point {p} out of range") })?;
                if *slot {
                    return Err(ModelError::NotAPartition { reason: format!("point {p} in two groups") });
                }
                *slot = true;
            }
            cells.push(cell);
        }
        if let Some(p) = seen.iter().position(|s| !s) {
            return Err(ModelError::NotAPartition { reason: format!("point {p} in no group") });
        }
        Ok(GroupedDesign { design, groups: cells, directed })
    }

    pub fn groups(&self) -> &[Vec<Point>] {
        &self.groups
    }

    pub fn group_type(&self) -> GroupType {
        GroupType::from_sizes(self.groups.iter().map(|c| c.len() as u32))
    }

    /// `group_of[p]` = index of the cell containing `p`.
    pub fn group_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.design.params.v as usize];
        for (gi, cell) in self.groups.iter().enumerate() {
            for &p in cell {
                idx[p as usize] = gi;
            }
        }
        idx
    }

    /// Groups in canonical order (by smallest element).
    pub fn canonical_groups(&self) -> Vec<Vec<Point>> {
        let mut g = self.groups.clone();
        g.sort();
        g
    }
}

/// Either kind of design file content.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DesignObject {
    Plain(DirectedDesign),
    Grouped(GroupedDesign),
}

impl DesignObject {
    pub fn design(&self) -> &DirectedDesign {
        match self {
            DesignObject::Plain(d) => d,
            DesignObject::Grouped(g) => &g.design,
        }
    }

    pub fn as_grouped(&self) -> Option<&GroupedDesign> {
        match self {
            DesignObject::Grouped(g) => Some(g),
            DesignObject::Plain(_) => None,
        }
    }

    pub fn is_directed(&self) -> bool {
        match self {
            DesignObject::Plain(_) => true,
            DesignObject::Grouped(g) => g.directed,
        }
    }
}

impl From<DirectedDesign> for DesignObject {
    fn from(d: DirectedDesign) -> Self {
        DesignObject::Plain(d)
    }
}

impl From<GroupedDesign> for DesignObject {
    fn from(g: GroupedDesign) -> Self {
        DesignObject::Grouped(g)
    }
}

/// Number of extra points shared by every group when holes are filled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FillSpec {
    eta: u32,
}

impl FillSpec {
    pub fn new(eta: u32) -> Result<Self, ModelError> {
        if eta > 1 {
            return Err(ModelError::InvalidEta(eta));
        }
        Ok(FillSpec { eta })
    }

    pub fn eta(self) -> u32 {
        self.eta
    }
}

/// Inflation weight: every point is replaced by `alpha` copies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InflationSpec {
    alpha: u32,
}

impl InflationSpec {
    pub fn new(alpha: u32) -> Result<Self, ModelError> {
        if alpha == 0 {
            return Err(ModelError::InvalidAlpha);
        }
        Ok(InflationSpec { alpha })
    }

    pub fn alpha(self) -> u32 {
        self.alpha
    }
}

/// `true` iff a super-simple (v,4,2)DD can exist: v ≡ 1 (mod 3), v ≥ 10.
pub fn admissible_v(v: u64) -> bool {
    v % 3 == 1 && v >= 10
}

fn pairs_per_block(k: u32) -> u64 {
    k as u64 * (k as u64 - 1) / 2
}

/// λ·v(v−1) / C(k,2): the block count forced by ordered-pair double counting.
pub fn expected_block_count_dd(params: DesignParams) -> Result<u64, ModelError> {
    let numerator = params.lambda as u64 * params.v as u64 * (params.v as u64).saturating_sub(1);
    divide_exact(numerator, pairs_per_block(params.k))
}

/// λ·(v(v−1) − Σ u·g·(g−1)) / C(k,2) for a directed GDD, where only
/// cross-group ordered pairs are covered.
pub fn expected_block_count_dgdd(group_type: &GroupType, lambda: u32, k: u32) -> Result<u64, ModelError> {
    let v = group_type.total_points();
    let cross = v * v.saturating_sub(1) - group_type.within_ordered_pairs();
    divide_exact(lambda as u64 * cross, pairs_per_block(k))
}

/// Undirected counterpart: cross unordered pairs times λ over C(k,2).
pub fn expected_block_count_gdd(group_type: &GroupType, lambda: u32, k: u32) -> Result<u64, ModelError> {
    let v = group_type.total_points();
    let cross = (v * v.saturating_sub(1) - group_type.within_ordered_pairs()) / 2;
    divide_exact(lambda as u64 * cross, pairs_per_block(k))
}

/// Replication number of the underlying undirected design, 2λ(v−1)/(k−1).
pub fn replication_number(params: DesignParams) -> Result<u64, ModelError> {
    let numerator = 2 * params.lambda as u64 * (params.v as u64).saturating_sub(1);
    divide_exact(numerator, params.k as u64 - 1)
}

fn divide_exact(numerator: u64, denominator: u64) -> Result<u64, ModelError> {
    if denominator == 0 || numerator % denominator != 0 {
        Err(ModelError::NonIntegerCount { numerator, denominator })
    } else {
        Ok(numerator / denominator)
    }
}
