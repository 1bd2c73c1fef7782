//! Super-simple directed designs with block size 4 and index 2: base-block
//! catalog, cyclic development, exact verification, trade-based lower bounds
//! on defining sets, and recursive constructions driven by recipes.

pub mod algebra;
pub mod catalog;
pub mod construct;
pub mod develop;
pub mod errata;
pub mod error;
pub mod format;
pub mod model;
pub mod recipe;
pub mod trade;
pub mod truncation;
pub mod verify;

pub use algebra::{field_build, td_build, FiniteField, TdSpec};
pub use catalog::{catalog_build, catalog_entry, catalog_list, CatalogEntry, EntryKind};
pub use construct::{delete_points, fill_groups, inflate_by_td, weight_and_replace, WeightAssignment};
pub use develop::{develop, shift};
pub use errata::{errata_report, ErrataReport, ErrataRow, Verdict};
pub use error::*;
pub use format::{parse_design_file, write_design_file, write_design_with_certificate};
pub use model::*;
pub use recipe::{
    parse_recipe, run_recipe, shipped_recipe, shipped_recipes, Recipe, RecipeOutcome, RunOptions, ShippedRecipe,
    StepReport,
};
pub use trade::{
    certify_half, find_block_trades, generic_bound, is_volume2_trade, orbit_scan, orbit_trade_scan,
    parse_certificate, BoundCertificate, CyclicalTrade, TradeGraph, TradePair,
};
pub use verify::{full_report, CheckItem, Kind, VerificationReport, Witness};
