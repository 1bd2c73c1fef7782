//! Every catalog table checked against the claims printed with it.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::catalog::{build_entry, catalog_list, CatalogEntry, EntryKind};
use crate::trade::{certify_half, orbit_trade_scan};
use crate::truncation::{expand_table, TableIssue};
use crate::verify::{full_report, Kind, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Every claim holds.
    Confirmed,
    /// The design verifies but a claim about it does not.
    ClaimRefuted,
    /// The design itself fails verification.
    Refuted,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Confirmed => "confirmed",
            Verdict::ClaimRefuted => "claim-refuted",
            Verdict::Refuted => "refuted",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ErrataRow {
    pub id: &'static str,
    pub kind: EntryKind,
    pub claimed_blocks: u64,
    pub developed_blocks: u64,
    pub formula_blocks: Option<u64>,
    pub claimed_bound: Option<u64>,
    /// Orbit certificate bound; `None` for masters or when the search declines.
    pub computed_bound: Option<u64>,
    pub half_certified: Option<bool>,
    pub repeated_base_blocks: Vec<(usize, usize)>,
    pub report: VerificationReport,
    /// One line per discrepancy, each with its evidence.
    pub findings: Vec<String>,
}

impl ErrataRow {
    pub fn verdict(&self) -> Verdict {
        if !self.report.passed() {
            Verdict::Refuted
        } else if self.findings.is_empty() {
            Verdict::Confirmed
        } else {
            Verdict::ClaimRefuted
        }
    }
}

fn examine(entry: &CatalogEntry) -> ErrataRow {
    let obj = build_entry(entry);
    let kind = if entry.kind == EntryKind::Dd { Kind::Dd } else { Kind::Dgdd };
    let report = full_report(&obj, kind).expect("catalog objects match their kind");
    let developed = obj.design().blocks.len() as u64;
    let formula = entry.formula_block_count();
    let repeated = entry.repeated_base_blocks();
    let cert = (entry.kind != EntryKind::GddMaster).then(|| orbit_trade_scan(entry).ok()).flatten();
    let half = cert.as_ref().map(|c| certify_half(obj.design(), c).unwrap_or(false));

    let mut findings = Vec::new();
    if entry.claimed_blocks != developed {
        findings.push(format!("claimed {} blocks, development gives {developed}", entry.claimed_blocks));
    }
    if let Some(f) = formula.filter(|&f| f != entry.claimed_blocks) {
        findings.push(format!("claimed {} blocks, counting formula requires {f}", entry.claimed_blocks));
    }
    let base = entry.base_blocks();
    for &(i, j) in &repeated {
        findings.push(format!("base blocks {i} and {j} are both {}", base[i]));
    }
    for c in report.checks.iter().filter(|c| !c.passed) {
        let w = c.witness.as_ref().map(ToString::to_string).unwrap_or_default();
        findings.push(format!("{} fails: {w} ({} violations)", c.name, c.violations));
    }
    if let (Some(claimed), Some(cert)) = (entry.claimed_bound, &cert) {
        if report.passed() && cert.bound() < claimed {
            findings.push(format!(
                "claimed defining-set bound {claimed}, exact orbit search reaches {}",
                cert.bound()
            ));
        }
    }
    ErrataRow {
        id: entry.id,
        kind: entry.kind,
        claimed_blocks: entry.claimed_blocks,
        developed_blocks: developed,
        formula_blocks: formula,
        claimed_bound: entry.claimed_bound,
        computed_bound: cert.as_ref().map(|c| c.bound()),
        half_certified: half,
        repeated_base_blocks: repeated,
        report,
        findings,
    }
}

#[derive(Clone, Debug)]
pub struct ErrataReport {
    pub rows: Vec<ErrataRow>,
    pub table_issues: Vec<TableIssue>,
}

/// Checks every catalog entry (in catalog order) and the truncation table.
pub fn errata_report() -> ErrataReport {
    let rows = catalog_list().par_iter().map(examine).collect();
    ErrataReport { rows, table_issues: expand_table().1 }
}

impl ErrataReport {
    pub fn row(&self, id: &str) -> Option<&ErrataRow> {
        self.rows.iter().find(|r| r.id == id)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<14} {:<10} {:>7} {:>7} {:>7} {:>7} {:>7}  verdict",
            "entry", "kind", "claimed", "built", "formula", "c.bound", "bound"
        );
        let dash = |o: Option<u64>| o.map_or("-".to_string(), |x| x.to_string());
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:<14} {:<10} {:>7} {:>7} {:>7} {:>7} {:>7}  {}",
                r.id,
                r.kind.to_string(),
                r.claimed_blocks,
                r.developed_blocks,
                dash(r.formula_blocks),
                dash(r.claimed_bound),
                dash(r.computed_bound),
                r.verdict().name()
            );
            for f in &r.findings {
                let _ = writeln!(out, "    - {f}");
            }
        }
        let _ = writeln!(out, "\ntruncation table:");
        if self.table_issues.is_empty() {
            let _ = writeln!(out, "    every row is consistent");
        }
        for i in &self.table_issues {
            let _ = writeln!(out, "    - row {} (v={}): {}", i.row + 1, i.v, i.reason);
        }
        let tally = |v: Verdict| self.rows.iter().filter(|r| r.verdict() == v).count();
        let _ = writeln!(
            out,
            "\n{} confirmed, {} with refuted claims, {} refuted",
            tally(Verdict::Confirmed),
            tally(Verdict::ClaimRefuted),
            tally(Verdict::Refuted)
        );
        out
    }
}
