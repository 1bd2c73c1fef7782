//! Built-in base-block tables for the direct constructions.
//!
//! Every table is transcribed as printed, column by column with blank cells
//! skipped, including entries that do not verify. Discrepancies are surfaced
//! by [`crate::errata`], never repaired here.

use std::fmt;

use crate::develop::develop;
use crate::error::CatalogError;
use crate::model::{
    expected_block_count_dd, expected_block_count_dgdd, expected_block_count_gdd, DesignObject, DesignParams,
    DirectedDesign, GroupType, GroupedDesign, OrderedBlock, Point,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryKind {
    /// A (v,4,2) directed design developed mod v.
    Dd,
    /// A directed (4,2)-GDD developed mod its point count.
    Dgdd,
    /// An undirected 4-GDD with λ = 1, used as a weighting master.
    GddMaster,
}

impl fmt::Display for EntryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntryKind::Dd => "DD",
            EntryKind::Dgdd => "DGDD",
            EntryKind::GddMaster => "GDD-master",
        })
    }
}

/// One printed table together with the claims made about it.
#[derive(Debug)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub kind: EntryKind,
    pub modulus: u32,
    /// Table columns in printed order.
    pub columns: &'static [&'static [[Point; 4]]],
    /// Groups are the residue classes modulo this number, when present.
    pub group_classes: Option<u32>,
    pub lambda: u32,
    pub claimed_blocks: u64,
    /// Claimed lower bound on the size of any defining set.
    pub claimed_bound: Option<u64>,
    /// Claimed trade structure, one annotation per column.
    pub claimed_trade_layout: &'static [&'static str],
    pub provenance: &'static str,
}

impl CatalogEntry {
    pub fn base_blocks(&self) -> Vec<OrderedBlock> {
        self.columns.iter().flat_map(|c| c.iter()).map(|&b| OrderedBlock::from(b)).collect()
    }

    /// Column index of every base block.
    pub fn column_of_base_blocks(&self) -> Vec<usize> {
        self.columns.iter().enumerate().flat_map(|(c, col)| std::iter::repeat_n(c, col.len())).collect()
    }

    pub fn base_block_count(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn developed_block_count(&self) -> u64 {
        self.base_block_count() as u64 * self.modulus as u64
    }

    pub fn params(&self) -> DesignParams {
        DesignParams::new(self.modulus, 4, self.lambda).expect("catalog parameters are valid")
    }

    /// Residue-class groups, if the entry has any.
    pub fn groups(&self) -> Option<Vec<Vec<Point>>> {
        self.group_classes.map(|c| (0..c).map(|i| (i..self.modulus).step_by(c as usize).collect()).collect())
    }

    pub fn group_type(&self) -> Option<GroupType> {
        self.group_classes.map(|c| GroupType::uniform(self.modulus / c, c))
    }

    /// Human-readable description of the group rule.
    pub fn group_rule(&self) -> String {
        match self.group_classes {
            None => "none".to_string(),
            Some(c) => format!("{{0, {c}, {}, ...}} + i for 0 <= i < {c} (residues mod {c})", 2 * c),
        }
    }

    /// Block count forced by the counting formula for this entry's
    /// parameters, or `None` when it is not an integer.
    pub fn formula_block_count(&self) -> Option<u64> {
        match (self.kind, self.group_type()) {
            (EntryKind::Dd, _) => expected_block_count_dd(self.params()).ok(),
            (EntryKind::Dgdd, Some(t)) => expected_block_count_dgdd(&t, self.lambda, 4).ok(),
            (EntryKind::GddMaster, Some(t)) => expected_block_count_gdd(&t, self.lambda, 4).ok(),
            _ => None,
        }
    }

    /// Base blocks listed more than once, as `(first index, repeat index)`.
    pub fn repeated_base_blocks(&self) -> Vec<(usize, usize)> {
        let base = self.base_blocks();
        let mut out = Vec::new();
        for j in 0..base.len() {
            if let Some(i) = (0..j).find(|&i| base[i] == base[j]) {
                out.push((i, j));
            }
        }
        out
    }
}

macro_rules! table {
    ($([$(($a:expr, $b:expr, $c:expr, $d:expr)),* $(,)?]),* $(,)?) => {
        &[$(&[$([$a, $b, $c, $d]),*]),*]
    };
}

const DISJOINT: &str = "disjoint volume-2 trades";

static CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        id: "dd-10",
        kind: EntryKind::Dd,
        modulus: 10,
        columns: table!([(0, 1, 2, 6), (1, 0, 4, 3)], [(2, 0, 5, 8)]),
        group_classes: None,
        lambda: 2,
        claimed_blocks: 30,
        claimed_bound: Some(15),
        claimed_trade_layout: &["10 disjoint volume-2 trades", "cyclical trade of volume 10"],
        provenance: "direct construction table, v=10",
    },
    CatalogEntry {
        id: "dd-13",
        kind: EntryKind::Dd,
        modulus: 13,
        columns: table!([(0, 1, 11, 5), (1, 0, 3, 9)], [(0, 1, 6, 4), (6, 5, 0, 2)]),
        group_classes: None,
        lambda: 2,
        claimed_blocks: 52,
        claimed_bound: Some(26),
        claimed_trade_layout: &["13 disjoint volume-2 trades", "13 disjoint volume-2 trades"],
        provenance: "direct construction table, v=13",
    },
    CatalogEntry {
        id: "dd-16",
        kind: EntryKind::Dd,
        modulus: 16,
        columns: table!([(0, 1, 6, 8), (1, 0, 11, 14)], [(4, 1, 0, 10), (12, 0, 3, 14)], [(0, 1, 9, 5)]),
        group_classes: None,
        lambda: 2,
        claimed_blocks: 80,
        claimed_bound: Some(40),
        claimed_trade_layout: &["16 disjoint volume-2 trades", "16 disjoint volume-2 trades", "cyclical trade of volume 16"],
        provenance: "direct construction table, v=16",
    },
    CatalogEntry {
        id: "dd-19",
        kind: EntryKind::Dd,
        modulus: 19,
        columns: table!(
            [(0, 6, 1, 3), (15, 7, 1, 0)],
            [(4, 1, 0, 12), (5, 0, 3, 10)],
            [(0, 1, 8, 10), (2, 0, 6, 15)],
        ),
        group_classes: None,
        lambda: 2,
        claimed_blocks: 114,
        claimed_bound: Some(57),
        claimed_trade_layout: &["19 disjoint volume-2 trades"; 3],
        provenance: "direct construction table, v=19",
    },
    CatalogEntry {
        id: "dd-22",
        kind: EntryKind::Dd,
        modulus: 22,
        columns: table!(
            [(0, 3, 1, 6), (0, 4, 1, 16)],
            [(1, 5, 7, 0), (2, 0, 13, 9)],
            [(15, 1, 10, 0), (8, 0, 19, 3)],
            [(0, 14, 2, 10)],
        ),
        group_classes: None,
        lambda: 2,
        claimed_blocks: 154,
        claimed_bound: Some(77),
        claimed_trade_layout: &[
            "22 disjoint volume-2 trades",
            "22 disjoint volume-2 trades",
            "22 disjoint volume-2 trades",
            "cyclical trade of volume 22",
        ],
        provenance: "direct construction table, v=22",
    },
    CatalogEntry {
        id: "dd-25",
        kind: EntryKind::Dd,
        modulus: 25,
        columns: table!(
            [(0, 1, 18, 3), (16, 0, 8, 23)],
            [(0, 11, 1, 7), (14, 9, 3, 0)],
            [(13, 6, 1, 0), (16, 21, 0, 4)],
            [(2, 0, 16, 12), (19, 0, 22, 24)],
        ),
        group_classes: None,
        lambda: 2,
        claimed_blocks: 200,
        claimed_bound: Some(100),
        claimed_trade_layout: &["25 disjoint volume-2 trades"; 4],
        provenance: "direct construction table, v=25",
    },
    CatalogEntry {
        id: "dd-28",
        kind: EntryKind::Dd,
        modulus: 28,
        columns: table!(
            [(4, 0, 2, 1), (15, 0, 1, 5)],
            [(1, 20, 0, 26), (19, 0, 6, 13)],
            [(0, 3, 20, 7), (17, 0, 10, 5)],
            [(0, 23, 3, 14), (19, 11, 7, 0)],
            [(0, 18, 2, 12)],
        ),
        group_classes: None,
        lambda: 2,
        claimed_blocks: 252,
        claimed_bound: Some(126),
        claimed_trade_layout: &[
            "28 disjoint volume-2 trades",
            "28 disjoint volume-2 trades",
            "28 disjoint volume-2 trades",
            "28 disjoint volume-2 trades",
            "cyclical trade of volume 28",
        ],
        provenance: "direct construction table, v=28",
    },
    CatalogEntry {
        id: "dd-31",
        kind: EntryKind::Dd,
        modulus: 31,
        columns: table!(
            [(0, 3, 8, 1), (3, 0, 18, 13)],
            [(11, 5, 0, 1), (3, 0, 11, 17)],
            [(7, 1, 19, 0), (0, 2, 15, 6)],
            [(0, 2, 23, 9), (26, 2, 0, 11)],
            [(15, 0, 4, 3), (0, 27, 19, 10)],
        ),
        group_classes: None,
        lambda: 2,
        claimed_blocks: 310,
        claimed_bound: Some(155),
        claimed_trade_layout: &["31 disjoint volume-2 trades"; 5],
        provenance: "direct construction table, v=31",
    },
    CatalogEntry {
        id: "dd-34",
        kind: EntryKind::Dd,
        modulus: 34,
        columns: table!(
            [(25, 0, 4, 11), (2, 12, 9, 0), (20, 0, 2, 5), (14, 0, 1, 24), (5, 1, 0, 17)],
            [(2, 6, 0, 21), (7, 3, 29, 0), (21, 0, 11, 29), (28, 20, 11, 0)],
            [(0, 1, 9, 3), (1, 7, 19, 0)],
        ),
        group_classes: None,
        lambda: 2,
        claimed_blocks: 374,
        claimed_bound: Some(204),
        claimed_trade_layout: &[
            "34 cyclical trades of volume 5",
            "102 disjoint volume-2 trades across the last two columns",
            "102 disjoint volume-2 trades across the last two columns",
        ],
        provenance: "direct construction table, v=34",
    },
    CatalogEntry {
        id: "dd-40",
        kind: EntryKind::Dd,
        modulus: 40,
        columns: table!(
            [(4, 1, 0, 2), (0, 3, 18, 23), (0, 12, 3, 33), (23, 0, 10, 2)],
            [(0, 4, 11, 32), (5, 0, 33, 17), (17, 4, 0, 30), (18, 0, 4, 29)],
            [(0, 16, 7, 29), (32, 1, 0, 38), (0, 6, 1, 15), (22, 30, 6, 0)],
            [(26, 20, 0, 5)],
        ),
        group_classes: None,
        lambda: 2,
        claimed_blocks: 520,
        claimed_bound: Some(260),
        claimed_trade_layout: &[
            "240 disjoint volume-2 trades across the first three columns",
            "240 disjoint volume-2 trades across the first three columns",
            "240 disjoint volume-2 trades across the first three columns",
            "cyclical trade of volume 40",
        ],
        provenance: "direct construction table, v=40",
    },
    CatalogEntry {
        id: "dd-43",
        kind: EntryKind::Dd,
        modulus: 43,
        columns: table!(
            [(0, 1, 8, 3), (0, 5, 20, 27), (0, 4, 2, 23), (10, 24, 3, 0)],
            [(0, 1, 4, 10), (11, 22, 3, 0), (2, 17, 0, 8), (5, 0, 33, 18)],
            [(1, 19, 0, 12), (0, 10, 35, 26), (4, 20, 0, 9), (12, 6, 26, 0)],
            [(12, 0, 42, 29), (4, 16, 0, 29)],
        ),
        group_classes: None,
        lambda: 2,
        claimed_blocks: 602,
        claimed_bound: Some(301),
        claimed_trade_layout: &["301 disjoint volume-2 trades overall"; 4],
        provenance: "direct construction table, v=43",
    },
    CatalogEntry {
        id: "dd-58",
        kind: EntryKind::Dd,
        modulus: 58,
        columns: table!(
            [(0, 1, 56, 3), (0, 1, 14, 9), (0, 4, 37, 19), (30, 13, 4, 0), (22, 38, 0, 8), (0, 56, 40, 19)],
            [(1, 31, 0, 27), (1, 32, 0, 52), (13, 22, 6, 0), (20, 34, 0, 6), (0, 25, 6, 35)],
            [(0, 35, 2, 24), (5, 0, 23, 15), (0, 17, 34, 5), (27, 17, 0, 7)],
            [(0, 12, 3, 16), (40, 15, 3, 0), (15, 26, 0, 7), (24, 36, 0, 47)],
        ),
        group_classes: None,
        lambda: 2,
        claimed_blocks: 1102,
        claimed_bound: Some(551),
        claimed_trade_layout: &["522 disjoint volume-2 trades and one cyclical trade of volume 58 overall"; 4],
        provenance: "direct construction table, v=58",
    },
    CatalogEntry {
        id: "dd-67",
        kind: EntryKind::Dd,
        modulus: 67,
        columns: table!(
            [(1, 10, 0, 16), (33, 24, 0, 8), (5, 13, 0, 50), (5, 8, 0, 2), (1, 0, 30, 12), (11, 0, 1, 46)],
            [(7, 0, 33, 30), (0, 10, 17, 28), (0, 14, 6, 47), (44, 29, 14, 0), (20, 0, 9, 40), (0, 20, 41, 1)],
            [(42, 0, 3, 7), (6, 2, 0, 19), (23, 7, 0, 49), (0, 38, 54, 5), (21, 0, 4, 36), (27, 32, 4, 0)],
            [(14, 38, 0, 2), (45, 2, 0, 21), (9, 19, 31, 0), (12, 0, 25, 39)],
        ),
        group_classes: None,
        lambda: 2,
        claimed_blocks: 1474,
        claimed_bound: Some(737),
        claimed_trade_layout: &["737 disjoint volume-2 trades overall"; 4],
        provenance: "direct construction table, v=67",
    },
    CatalogEntry {
        id: "dd-79",
        kind: EntryKind::Dd,
        modulus: 79,
        columns: table!(
            [(17, 0, 37, 1), (13, 30, 0, 4), (3, 0, 30, 45), (43, 0, 3, 31), (0, 18, 27, 6), (20, 2, 0, 34)],
            [(0, 1, 22, 15), (1, 0, 30, 12), (39, 0, 4, 29), (4, 0, 51, 37), (3, 26, 44, 0), (9, 25, 2, 0)],
            [(0, 31, 2, 23), (51, 30, 0, 10), (19, 27, 4, 0), (27, 0, 13, 5), (0, 50, 7, 26), (0, 43, 24, 11)],
            [(1, 33, 0, 9), (5, 0, 12, 45), (15, 0, 5, 39), (11, 6, 28, 0)],
            [(35, 0, 19, 2), (0, 25, 3, 38), (37, 0, 6, 26), (6, 0, 54, 16)],
        ),
        group_classes: None,
        lambda: 2,
        claimed_blocks: 2054,
        claimed_bound: Some(1027),
        claimed_trade_layout: &["1027 disjoint volume-2 trades overall"; 5],
        provenance: "direct construction table, v=79",
    },
    CatalogEntry {
        id: "dd-94",
        kind: EntryKind::Dd,
        modulus: 94,
        columns: table!(
            [(1, 23, 0, 40), (0, 5, 28, 42), (47, 19, 0, 3), (18, 46, 0, 4), (29, 0, 5, 59), (36, 5, 0, 51), (30, 0, 49, 2)],
            [(2, 0, 20, 43), (13, 87, 6, 0), (0, 13, 32, 57), (0, 69, 91, 52), (61, 0, 10, 1), (2, 70, 37, 0)],
            [(20, 9, 0, 82), (0, 12, 26, 71), (26, 34, 0, 7), (16, 1, 0, 34), (59, 0, 11, 1), (12, 4, 84, 0)],
            [(0, 79, 88, 49), (0, 15, 4, 45), (17, 44, 4, 0), (3, 56, 29, 0), (73, 0, 16, 6), (0, 58, 24, 3)],
            [(8, 0, 61, 29), (0, 32, 8, 44), (5, 43, 0, 25), (0, 56, 2, 31), (0, 6, 17, 48), (38, 7, 0, 16)],
        ),
        group_classes: None,
        lambda: 2,
        claimed_blocks: 2914,
        claimed_bound: Some(1457),
        claimed_trade_layout: &["1410 disjoint volume-2 trades and one cyclical trade of volume 94 overall"; 5],
        provenance: "direct construction table, v=94",
    },
    CatalogEntry {
        id: "dd-103",
        kind: EntryKind::Dd,
        modulus: 103,
        columns: table!(
            [
                (0, 1, 15, 31), (0, 89, 97, 73), (45, 22, 0, 4), (0, 6, 29, 38),
                (69, 0, 5, 26), (40, 0, 82, 9), (64, 4, 29, 0), (0, 66, 41, 86),
            ],
            [
                (21, 1, 0, 50), (6, 50, 0, 17), (19, 4, 0, 47), (0, 4, 31, 65),
                (19, 12, 59, 31), (45, 0, 7, 20), (12, 48, 61, 0), (22, 13, 0, 6),
            ],
            [(51, 0, 2, 25), (5, 0, 51, 15), (0, 3, 51, 24), (49, 1, 0, 46), (11, 37, 23, 0), (8, 0, 18, 32)],
            [(34, 53, 2, 0), (2, 65, 19, 0), (29, 0, 5, 62), (5, 0, 53, 40), (0, 1, 93, 8), (92, 0, 77, 59)],
            [(12, 39, 0, 3), (20, 42, 3, 0), (0, 2, 37, 73), (70, 43, 8, 0), (0, 16, 72, 44), (10, 47, 0, 69)],
        ),
        group_classes: None,
        lambda: 2,
        claimed_blocks: 3502,
        claimed_bound: Some(1751),
        claimed_trade_layout: &["1751 disjoint volume-2 trades overall"; 5],
        provenance: "direct construction table, v=103",
    },
    // Type 3^t, developed mod 3t, groups {0, t, 2t} + i.
    CatalogEntry {
        id: "dgdd-3pow6",
        kind: EntryKind::Dgdd,
        modulus: 18,
        columns: table!([(2, 0, 5, 9), (7, 10, 0, 2), (1, 5, 0, 10)], [(0, 1, 2, 16), (11, 4, 1, 0)]),
        group_classes: Some(6),
        lambda: 2,
        claimed_blocks: 90,
        claimed_bound: Some(54),
        claimed_trade_layout: &["18 cyclical trades of volume 3", "18 disjoint volume-2 trades"],
        provenance: "type 3^t table, t=6",
    },
    CatalogEntry {
        id: "dgdd-3pow7",
        kind: EntryKind::Dgdd,
        modulus: 21,
        columns: table!([(0, 5, 1, 13), (11, 10, 1, 5)], [(0, 11, 17, 19), (12, 11, 0, 19)], [(0, 1, 4, 6), (7, 12, 4, 1)]),
        group_classes: Some(7),
        lambda: 2,
        claimed_blocks: 126,
        claimed_bound: Some(63),
        claimed_trade_layout: &["21 disjoint volume-2 trades"; 3],
        provenance: "type 3^t table, t=7",
    },
    CatalogEntry {
        id: "dgdd-3pow8",
        kind: EntryKind::Dgdd,
        modulus: 24,
        columns: table!(
            [(0, 1, 13, 6), (2, 1, 0, 4), (1, 2, 11, 22)],
            [(0, 4, 10, 15), (21, 0, 4, 18)],
            [(12, 7, 0, 2), (2, 0, 9, 15)],
        ),
        group_classes: Some(8),
        lambda: 2,
        claimed_blocks: 168,
        claimed_bound: Some(96),
        claimed_trade_layout: &["24 cyclical trades of volume 3", "24 disjoint volume-2 trades", "24 disjoint volume-2 trades"],
        provenance: "type 3^t table, t=8",
    },
    CatalogEntry {
        id: "dgdd-3pow9",
        kind: EntryKind::Dgdd,
        modulus: 27,
        columns: table!(
            [(0, 6, 1, 13), (3, 13, 1, 23), (17, 1, 6, 4)],
            [(1, 0, 2, 5), (3, 11, 0, 24), (1, 8, 0, 20)],
            [(0, 6, 2, 17), (0, 14, 8, 4)],
        ),
        group_classes: Some(9),
        lambda: 2,
        claimed_blocks: 216,
        claimed_bound: Some(135),
        claimed_trade_layout: &["27 cyclical trades of volume 3", "27 cyclical trades of volume 3", "27 disjoint volume-2 trades"],
        provenance: "type 3^t table, t=9",
    },
    CatalogEntry {
        id: "dgdd-3pow13",
        kind: EntryKind::Dgdd,
        modulus: 39,
        columns: table!(
            [(3, 0, 12, 21), (19, 0, 3, 35), (5, 12, 0, 20)],
            [(2, 1, 0, 4), (4, 0, 32, 18), (14, 0, 33, 24)],
            [(8, 0, 2, 19), (2, 0, 29, 14)],
            [(0, 16, 22, 5), (0, 17, 1, 8)],
            [(5, 0, 11, 1), (0, 5, 15, 36)],
        ),
        group_classes: Some(13),
        lambda: 2,
        claimed_blocks: 468,
        claimed_bound: Some(273),
        claimed_trade_layout: &[
            "39 cyclical trades of volume 3",
            "39 cyclical trades of volume 3",
            "39 disjoint volume-2 trades",
            "39 disjoint volume-2 trades",
            "39 disjoint volume-2 trades",
        ],
        provenance: "type 3^t table, t=13",
    },
    // Type t^4, developed mod 4t, groups {0, 4, ..., 4(t-1)} + i.
    CatalogEntry {
        id: "dgdd-4pow4",
        kind: EntryKind::Dgdd,
        modulus: 16,
        columns: table!([(0, 1, 3, 10), (2, 0, 3, 13)], [(0, 5, 2, 11), (0, 15, 14, 5)]),
        group_classes: Some(4),
        lambda: 2,
        claimed_blocks: 64,
        claimed_bound: Some(32),
        claimed_trade_layout: &["16 disjoint volume-2 trades"; 2],
        provenance: "type t^4 table, t=4",
    },
    CatalogEntry {
        id: "dgdd-5pow4",
        kind: EntryKind::Dgdd,
        modulus: 20,
        columns: table!([(1, 0, 10, 3), (0, 1, 18, 11), (1, 6, 0, 7)], [(0, 7, 2, 5), (3, 0, 14, 9)]),
        group_classes: Some(4),
        lambda: 2,
        claimed_blocks: 100,
        claimed_bound: Some(60),
        claimed_trade_layout: &["20 cyclical trades of volume 3", "20 disjoint volume-2 trades"],
        provenance: "type t^4 table, t=5",
    },
    CatalogEntry {
        id: "dgdd-6pow4",
        kind: EntryKind::Dgdd,
        modulus: 24,
        columns: table!(
            [(0, 1, 2, 7), (1, 0, 14, 11), (14, 0, 23, 17)],
            [(2, 0, 5, 19), (0, 2, 15, 21), (0, 15, 22, 9)],
        ),
        group_classes: Some(4),
        lambda: 2,
        claimed_blocks: 144,
        claimed_bound: Some(96),
        claimed_trade_layout: &["24 cyclical trades of volume 3"; 2],
        provenance: "type t^4 table, t=6",
    },
    CatalogEntry {
        id: "dgdd-13pow4",
        kind: EntryKind::Dgdd,
        modulus: 52,
        columns: table!(
            [(0, 10, 15, 1), (0, 29, 19, 2), (0, 29, 43, 18)],
            [(1, 7, 0, 2), (0, 13, 7, 30), (5, 15, 22, 0)],
            [(3, 0, 25, 6), (7, 10, 0, 21)],
            [(0, 5, 39, 26)],
            [(1, 0, 18, 27)],
        ),
        group_classes: Some(4),
        lambda: 2,
        claimed_blocks: 520,
        claimed_bound: Some(312),
        claimed_trade_layout: &[
            "52 cyclical trades of volume 3",
            "52 cyclical trades of volume 3",
            "52 disjoint volume-2 trades",
            "cyclical trade of volume 52",
            "cyclical trade of volume 52",
        ],
        provenance: "type t^4 table, t=13",
    },
    CatalogEntry {
        id: "dgdd-19pow4",
        kind: EntryKind::Dgdd,
        modulus: 76,
        columns: table!(
            [(30, 0, 3, 9), (0, 2, 13, 43), (2, 0, 33, 7), (1, 19, 0, 6)],
            [(22, 0, 35, 1), (5, 15, 0, 22), (0, 11, 1, 26), (3, 33, 0, 62)],
            [(22, 11, 0, 29), (0, 11, 1, 26), (7, 17, 54, 0), (2, 23, 0, 37)],
            [(0, 47, 33, 70), (9, 26, 55, 0), (5, 0, 14, 39), (13, 0, 31, 58)],
            [(6, 25, 0, 51), (0, 57, 15, 34), (10, 1, 0, 3), (18, 3, 0, 41)],
        ),
        group_classes: Some(4),
        lambda: 2,
        claimed_blocks: 1520,
        claimed_bound: Some(912),
        claimed_trade_layout: &[
            "76 cyclical trades of volume 3 and one cyclical trade of volume 76",
            "76 cyclical trades of volume 3 and one cyclical trade of volume 76",
            "76 cyclical trades of volume 3 and one cyclical trade of volume 76",
            "76 cyclical trades of volume 3 and one cyclical trade of volume 76",
            "152 disjoint volume-2 trades",
        ],
        provenance: "type t^4 table, t=19",
    },
    CatalogEntry {
        id: "dgdd-22pow4",
        kind: EntryKind::Dgdd,
        modulus: 88,
        columns: table!(
            [(0, 6, 19, 1), (6, 0, 15, 33), (15, 0, 62, 37), (0, 57, 74, 79), (17, 0, 35, 58)],
            [(2, 27, 5, 0), (39, 0, 5, 26), (25, 0, 14, 3), (42, 0, 11, 53), (21, 10, 0, 55)],
            [(2, 39, 0, 25), (3, 18, 37, 0), (9, 19, 0, 54), (38, 1, 0, 67), (0, 29, 38, 59)],
            [(35, 0, 2, 29), (12, 27, 0, 10), (10, 0, 3, 41), (1, 0, 43, 2)],
            [(0, 30, 7, 69), (0, 13, 39, 46), (7, 0, 65, 50)],
        ),
        group_classes: Some(4),
        lambda: 2,
        claimed_blocks: 1936,
        claimed_bound: Some(1188),
        claimed_trade_layout: &[
            "88 cyclical trades of volume 3 and 88 disjoint volume-2 trades",
            "88 cyclical trades of volume 3 and 88 disjoint volume-2 trades",
            "88 cyclical trades of volume 3 and 88 disjoint volume-2 trades",
            "88 cyclical trades of volume 3 and a cyclical trade of volume 88",
            "88 cyclical trades of volume 3",
        ],
        provenance: "type t^4 table, t=22",
    },
    // Type 9^t, developed mod 9t, groups {0, t, ..., 8t} + i.
    CatalogEntry {
        id: "dgdd-9pow4",
        kind: EntryKind::Dgdd,
        modulus: 36,
        columns: table!(
            [(1, 0, 2, 7), (3, 14, 0, 17)],
            [(0, 1, 10, 19), (1, 0, 23, 14)],
            [(3, 0, 21, 10), (9, 0, 15, 2)],
            [(2, 0, 5, 31), (10, 0, 31, 25)],
        ),
        group_classes: Some(4),
        lambda: 2,
        claimed_blocks: 288,
        claimed_bound: Some(144),
        claimed_trade_layout: &["36 disjoint volume-2 trades"; 4],
        provenance: "type 9^t table, t=4",
    },
    CatalogEntry {
        id: "dgdd-9pow5",
        kind: EntryKind::Dgdd,
        modulus: 45,
        columns: table!(
            [(0, 1, 2, 4), (1, 0, 8, 14), (16, 0, 43, 34)],
            [(2, 0, 11, 19), (4, 0, 37, 13), (0, 4, 41, 28)],
            [(6, 13, 27, 0), (1, 7, 0, 24)],
            [(11, 0, 42, 33), (0, 16, 27, 39)],
            [(0, 26, 3, 19), (17, 3, 0, 29)],
        ),
        group_classes: Some(5),
        lambda: 2,
        claimed_blocks: 540,
        claimed_bound: Some(315),
        claimed_trade_layout: &[
            "45 cyclical trades of volume 3",
            "45 cyclical trades of volume 3",
            "45 disjoint volume-2 trades",
            "45 disjoint volume-2 trades",
            "45 disjoint volume-2 trades",
        ],
        provenance: "type 9^t table, t=5",
    },
    CatalogEntry {
        id: "dgdd-6pow5",
        kind: EntryKind::Dgdd,
        modulus: 30,
        columns: table!(
            [(7, 9, 0, 1), (3, 0, 7, 16), (2, 0, 18, 21)],
            [(19, 1, 12, 0), (6, 13, 0, 19)],
            [(1, 2, 4, 0), (4, 8, 16, 0)],
            [(3, 9, 0, 17)],
        ),
        group_classes: Some(5),
        lambda: 2,
        claimed_blocks: 240,
        claimed_bound: Some(135),
        claimed_trade_layout: &[
            "30 cyclical trades of volume 3",
            "30 disjoint volume-2 trades",
            "30 disjoint volume-2 trades",
            "cyclical trade of volume 30",
        ],
        provenance: "type 6^5 table",
    },
    CatalogEntry {
        id: "gdd-2pow7",
        kind: EntryKind::GddMaster,
        modulus: 14,
        columns: table!([(0, 1, 4, 6)]),
        group_classes: Some(7),
        lambda: 1,
        claimed_blocks: 14,
        claimed_bound: None,
        claimed_trade_layout: &[DISJOINT],
        provenance: "undirected 4-GDD of type 2^7, groups {0,7}+i",
    },
];

/// All entries in a fixed order: direct DDs by v, then DGDDs, then masters.
pub fn catalog_list() -> &'static [CatalogEntry] {
    CATALOG
}

pub fn catalog_entry(id: &str) -> Result<&'static CatalogEntry, CatalogError> {
    CATALOG.iter().find(|e| e.id == id).ok_or_else(|| CatalogError::UnknownId(id.to_string()))
}

/// Develops the entry and attaches its groups. No verification happens here.
pub fn catalog_build(id: &str) -> Result<DesignObject, CatalogError> {
    Ok(build_entry(catalog_entry(id)?))
}

pub fn build_entry(entry: &CatalogEntry) -> DesignObject {
    let blocks = develop(&entry.base_blocks(), entry.modulus).expect("catalog entries are reduced mod their modulus");
    let design = DirectedDesign::new(entry.params(), blocks).expect("developed points are in range");
    match entry.groups() {
        None => DesignObject::Plain(design),
        Some(groups) => {
            let directed = entry.kind != EntryKind::GddMaster;
            DesignObject::Grouped(GroupedDesign::new(design, groups, directed).expect("residue classes partition Z_n"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listing_is_complete() {
        let dd: Vec<u32> = catalog_list().iter().filter(|e| e.kind == EntryKind::Dd).map(|e| e.modulus).collect();
        assert_eq!(dd, vec![10, 13, 16, 19, 22, 25, 28, 31, 34, 40, 43, 58, 67, 79, 94, 103]);
        let dgdd: Vec<String> = catalog_list()
            .iter()
            .filter(|e| e.kind == EntryKind::Dgdd)
            .map(|e| e.group_type().unwrap().to_string())
            .collect();
        assert_eq!(
            dgdd,
            vec!["3^6", "3^7", "3^8", "3^9", "3^13", "4^4", "5^4", "6^4", "13^4", "19^4", "22^4", "9^4", "9^5", "6^5"]
        );
        assert_eq!(catalog_list().len(), 31);
    }

    #[test]
    fn every_entry_claims_full_orbits() {
        for e in catalog_list() {
            assert_eq!(e.claimed_blocks, e.developed_block_count(), "{}", e.id);
            assert_eq!(e.claimed_trade_layout.len(), e.columns.len(), "{}", e.id);
            assert!(e.base_blocks().iter().all(|b| b.points().iter().all(|&p| p < e.modulus)), "{}", e.id);
        }
    }

    #[test]
    fn lookups() {
        let e = catalog_entry("dgdd-6pow5").unwrap();
        assert_eq!((e.modulus, e.base_block_count()), (30, 8));
        let e = catalog_entry("gdd-2pow7").unwrap();
        assert_eq!(e.base_blocks(), vec![OrderedBlock::from([0, 1, 4, 6])]);
        assert_eq!(e.modulus, 14);
        assert_eq!(e.groups().unwrap()[0], vec![0, 7]);
        assert!(matches!(catalog_entry("nosuch"), Err(CatalogError::UnknownId(_))));
    }

    #[test]
    fn builds() {
        assert_eq!(catalog_build("dd-13").unwrap().design().block_count(), 52);
        let g = catalog_build("dgdd-3pow7").unwrap();
        let g = g.as_grouped().unwrap();
        assert_eq!(g.design.block_count(), 126);
        assert_eq!(g.group_type(), GroupType::uniform(3, 7));
        assert_eq!(catalog_build("dgdd-13pow4").unwrap().design().block_count(), 520);
    }

    #[test]
    fn repeated_base_block_is_found() {
        let e = catalog_entry("dgdd-19pow4").unwrap();
        let reps = e.repeated_base_blocks();
        assert_eq!(reps.len(), 1);
        assert_eq!(e.base_blocks()[reps[0].0], OrderedBlock::from([0, 11, 1, 26]));
        assert!(catalog_list().iter().filter(|x| x.id != e.id).all(|x| x.repeated_base_blocks().is_empty()));
    }
}
