use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use ssdd::recipe::{shipped_recipe, Recipe};
use ssdd::trade::validate_certificate;
use ssdd::truncation::{expand_table, has_fillers};
use ssdd::verify::default_kind;
use ssdd::{
    catalog_build, catalog_entry, catalog_list, certify_half, errata_report, full_report, generic_bound,
    orbit_trade_scan, parse_certificate, parse_design_file, run_recipe, shipped_recipes, td_build, write_design_file,
    write_design_with_certificate, BoundCertificate, DesignObject, Kind, OrderedBlock, RecipeError, RunOptions,
    StepReport, TdSpec,
};

/// Exit code for a verification or certification failure.
const FAILED: u8 = 1;
/// Exit code for usage, parse, I/O and unsupported-input errors.
const UNUSABLE: u8 = 2;

#[derive(Parser)]
#[command(name = "ssdd", version, about = "Super-simple (v,4,2) directed designs: build, verify, certify")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Browse and build the embedded base-block tables.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Verify a design file.
    Verify {
        path: PathBuf,
        /// Check as this kind (default: DD for #DD files, DGDD for #DGDD files).
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        /// Also write the report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Compute a trade certificate lower-bounding every defining set.
    Trades {
        path: PathBuf,
        /// Use the exact orbit search for this catalog entry.
        #[arg(long)]
        catalog_id: Option<String>,
        /// Use the %CERT lines embedded in the file instead of computing.
        #[arg(long, conflicts_with = "catalog_id")]
        embedded: bool,
        /// Write the certificate as %CERT lines.
        #[arg(long)]
        cert_out: Option<PathBuf>,
        /// Exit 1 unless the bound reaches half the blocks.
        #[arg(long)]
        check_half: bool,
    },
    /// Run a recipe file or shipped recipe.
    Construct {
        /// Path to a recipe file, or the name of a shipped recipe.
        recipe: String,
        #[arg(short, long)]
        output: PathBuf,
        /// Continue past failed verifications (the output is still written).
        #[arg(long)]
        keep_going: bool,
        /// Skip certificate propagation.
        #[arg(long)]
        no_cert: bool,
    },
    /// Build a transversal design TD(k, n) over GF(n).
    Td {
        k: u32,
        n: u32,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check every catalog claim and print the confirmed/refuted table.
    Errata {
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// List shipped recipes, or print one.
    Recipes { name: Option<String> },
    /// Expand the truncated-TD case table into concrete instances.
    Truncation {
        /// Write one generated recipe per instance into this directory.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show {
        id: String,
    },
    Build {
        id: String,
        #[arg(short, long)]
        output: PathBuf,
        /// Append the orbit certificate as %CERT lines.
        #[arg(long)]
        cert: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Dd,
    Dgdd,
    Td,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Dd => Kind::Dd,
            KindArg::Dgdd => Kind::Dgdd,
            KindArg::Td => Kind::Td,
        }
    }
}

fn main() -> ExitCode {
    // Die quietly when piped into `head` instead of panicking on EPIPE.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    ExitCode::from(dispatch(std::env::args_os()))
}

/// Parses arguments and runs the command, mapping every outcome to 0, 1 or 2.
fn dispatch<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { UNUSABLE } else { 0 };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            UNUSABLE
        }
    }
}

fn run(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Catalog { action } => cmd_catalog(action),
        Command::Verify { path, kind, report } => cmd_verify(&path, kind, report.as_deref()),
        Command::Trades { path, catalog_id, embedded, cert_out, check_half } => {
            cmd_trades(&path, catalog_id.as_deref(), embedded, cert_out.as_deref(), check_half)
        }
        Command::Construct { recipe, output, keep_going, no_cert } => cmd_construct(&recipe, &output, keep_going, !no_cert),
        Command::Td { k, n, output } => cmd_td(k, n, &output),
        Command::Errata { report } => cmd_errata(report.as_deref()),
        Command::Recipes { name } => cmd_recipes(name.as_deref()),
        Command::Truncation { emit } => cmd_truncation(emit.as_deref()),
    }
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn read_design(path: &Path) -> Result<(String, DesignObject)> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let obj = parse_design_file(&text).with_context(|| format!("{}", path.display()))?;
    Ok((text, obj))
}

fn opt(x: Option<u64>) -> String {
    x.map_or("-".into(), |x| x.to_string())
}

fn show_entry(id: &str) -> Result<String> {
    use std::fmt::Write as _;
    let e = catalog_entry(id)?;
    let mut out = String::new();
    writeln!(out, "id: {}", e.id)?;
    writeln!(out, "kind: {}", e.kind)?;
    writeln!(out, "modulus: {}", e.modulus)?;
    writeln!(out, "lambda: {}", e.lambda)?;
    if let Some(t) = e.group_type() {
        writeln!(out, "group type: {t}")?;
    }
    writeln!(out, "group rule: {}", e.group_rule())?;
    writeln!(out, "base blocks: {}", e.base_block_count())?;
    writeln!(out, "developed blocks: {}", e.developed_block_count())?;
    writeln!(out, "claimed blocks: {}", e.claimed_blocks)?;
    writeln!(out, "formula blocks: {}", opt(e.formula_block_count()))?;
    writeln!(out, "claimed bound: {}", opt(e.claimed_bound))?;
    writeln!(out, "source: {}", e.provenance)?;
    for (c, col) in e.columns.iter().enumerate() {
        let layout = e.claimed_trade_layout.get(c).copied().unwrap_or("-");
        writeln!(out, "column {c} ({layout}):")?;
        for b in col.iter() {
            writeln!(out, "  {}", OrderedBlock::from(*b))?;
        }
    }
    Ok(out)
}

fn cmd_catalog(action: CatalogAction) -> Result<u8> {
    match action {
        CatalogAction::List => {
            println!(
                "{:<14} {:<10} {:>7} {:>5} {:>8} {:>8}  {}",
                "id", "kind", "modulus", "base", "blocks", "bound", "type"
            );
            for e in catalog_list() {
                let ty = e.group_type().map_or(format!("v={}", e.modulus), |t| t.to_string());
                println!(
                    "{:<14} {:<10} {:>7} {:>5} {:>8} {:>8}  {}",
                    e.id,
                    e.kind.to_string(),
                    e.modulus,
                    e.base_block_count(),
                    e.claimed_blocks,
                    opt(e.claimed_bound),
                    ty
                );
            }
        }
        CatalogAction::Show { id } => print!("{}", show_entry(&id)?),
        CatalogAction::Build { id, output, cert } => {
            let entry = catalog_entry(&id)?;
            let obj = catalog_build(&id)?;
            let text = if cert {
                let c = orbit_trade_scan(entry)?;
                write_design_with_certificate(&obj, Some(&c))
            } else {
                write_design_file(&obj)
            };
            write(&output, &text)?;
            println!("wrote {} ({} blocks)", output.display(), obj.design().blocks.len());
        }
    }
    Ok(0)
}

fn cmd_verify(path: &Path, kind: Option<KindArg>, report_path: Option<&Path>) -> Result<u8> {
    let (_, obj) = read_design(path)?;
    let kind = kind.map_or_else(|| default_kind(&obj), Kind::from);
    let report = full_report(&obj, kind)?;
    let text = report.render_text();
    print!("{text}");
    if let Some(p) = report_path {
        write(p, &format!("{text}{}", report.to_comment_lines()))?;
    }
    Ok(if report.passed() { 0 } else { FAILED })
}

/// Moves certificate block indices from the developed catalog order to the
/// order the blocks appear in `obj`.
fn align_certificate(cert: &BoundCertificate, developed: &DesignObject, obj: &DesignObject) -> Result<BoundCertificate> {
    let mut slots: HashMap<&OrderedBlock, Vec<usize>> = HashMap::new();
    for (i, b) in obj.design().blocks.iter().enumerate().rev() {
        slots.entry(b).or_default().push(i);
    }
    let mut index = Vec::with_capacity(developed.design().blocks.len());
    for b in &developed.design().blocks {
        match slots.get_mut(b).and_then(Vec::pop) {
            Some(i) => index.push(i),
            None => bail!("file does not contain block {b} of the catalog entry"),
        }
    }
    if obj.design().blocks.len() != index.len() {
        bail!("file has {} blocks, catalog entry has {}", obj.design().blocks.len(), index.len());
    }
    let mut out = cert.remap(|i| index[i]);
    out.total_blocks = index.len() as u64;
    Ok(out)
}

fn cmd_trades(
    path: &Path,
    catalog_id: Option<&str>,
    embedded: bool,
    cert_out: Option<&Path>,
    check_half: bool,
) -> Result<u8> {
    let (text, obj) = read_design(path)?;
    let d = obj.design();
    let cert = if let Some(id) = catalog_id {
        let entry = catalog_entry(id)?;
        let developed = catalog_build(id)?;
        align_certificate(&orbit_trade_scan(entry)?, &developed, &obj)?
    } else if embedded {
        parse_certificate(&text, d.blocks.len() as u64)?.context("file has no %CERT lines")?
    } else {
        generic_bound(d)
    };
    validate_certificate(d, &cert)?;
    println!("{cert}");
    if let Some(p) = cert_out {
        write(p, &cert.to_comment_lines())?;
    }
    if check_half {
        let half = certify_half(d, &cert)?;
        let need = d.blocks.len().div_ceil(2);
        println!("d >= 1/2: {} (bound {} vs {need})", if half { "certified" } else { "not certified" }, cert.bound());
        return Ok(if half { 0 } else { FAILED });
    }
    Ok(0)
}

fn print_step(s: &StepReport) {
    let r = &s.report;
    println!(
        "[{}] {} = {}: {} v={} blocks={}",
        if r.passed() { "PASS" } else { "FAIL" },
        s.step,
        s.action,
        r.kind,
        r.v,
        r.actual_blocks
    );
    for c in r.checks.iter().filter(|c| !c.passed) {
        if let Some(w) = &c.witness {
            println!("    {}: {w} ({} violations)", c.name, c.violations);
        }
    }
}

fn load_recipe(arg: &str) -> Result<Recipe> {
    let path = Path::new(arg);
    if path.exists() {
        return Ok(Recipe::from_path(path)?);
    }
    match shipped_recipe(arg) {
        Some(s) => Ok(s.recipe()?),
        None => bail!("no recipe file or shipped recipe named `{arg}`"),
    }
}

/// Whether a recipe error is, at bottom, a failed verification.
fn is_verification_failure(e: &RecipeError) -> bool {
    match e {
        RecipeError::StepVerificationFailed { .. } => true,
        RecipeError::Step { source, .. } => source.downcast_ref::<RecipeError>().is_some_and(is_verification_failure),
        _ => false,
    }
}

fn cmd_construct(arg: &str, output: &Path, keep_going: bool, certify: bool) -> Result<u8> {
    let recipe = load_recipe(arg)?;
    recipe.plan()?;
    let options = RunOptions { keep_going, certify };
    let outcome = match run_recipe(&recipe, options, &mut print_step) {
        Ok(o) => o,
        Err(e) if is_verification_failure(&e) => {
            let mut inner = &e;
            while let RecipeError::Step { source, .. } = inner {
                inner = source.downcast_ref::<RecipeError>().expect("checked above");
            }
            if let RecipeError::StepVerificationFailed { step, report } = inner {
                print_step(&StepReport { step: step.clone(), action: "(stopped)".into(), report: (**report).clone() });
                print!("{}", report.render_text());
            }
            eprintln!("error: {e}");
            return Ok(FAILED);
        }
        Err(e) => return Err(e.into()),
    };
    let mut text = write_design_with_certificate(&outcome.output, outcome.certificate.as_ref());
    text.push_str(&outcome.trail_comment_lines());
    write(output, &text)?;
    let d = outcome.output.design();
    println!("wrote {} (v={}, {} blocks)", output.display(), d.params.v, d.blocks.len());
    if let Some(c) = &outcome.certificate {
        let half = certify_half(d, c)?;
        println!("certificate: {c}; d >= 1/2 {}", if half { "certified" } else { "not certified" });
    }
    Ok(if outcome.verified() { 0 } else { FAILED })
}

fn cmd_td(k: u32, n: u32, output: &Path) -> Result<u8> {
    let td = td_build(TdSpec { k, n })?;
    let obj = DesignObject::from(td);
    let report = full_report(&obj, Kind::Td)?;
    print!("{}", report.render_text());
    if !report.passed() {
        return Ok(FAILED);
    }
    write(output, &write_design_file(&obj))?;
    println!("wrote {} ({} blocks)", output.display(), obj.design().blocks.len());
    Ok(0)
}

fn cmd_errata(report: Option<&Path>) -> Result<u8> {
    let text = errata_report().render_text();
    print!("{text}");
    if let Some(p) = report {
        write(p, &text)?;
    }
    Ok(0)
}

fn cmd_recipes(name: Option<&str>) -> Result<u8> {
    match name {
        Some(n) => match shipped_recipe(n) {
            Some(s) => print!("{}", s.text),
            None => bail!("no shipped recipe named `{n}`"),
        },
        None => {
            for s in shipped_recipes() {
                let title = s.recipe().map(|r| r.title).unwrap_or_default();
                let tag = if s.runnable { "" } else { " [template]" };
                println!("{:<22} {title}{tag}", s.name);
            }
        }
    }
    Ok(0)
}

fn cmd_truncation(emit: Option<&Path>) -> Result<u8> {
    let (instances, issues) = expand_table();
    println!("{:<6} {:>3} {:<10} {:<12} recipe", "v", "m", "parts", "fillers");
    for i in &instances {
        let parts: Vec<String> = i.parts.iter().map(u32::to_string).collect();
        let fillers: Vec<String> = i.filler_orders().iter().map(u32::to_string).collect();
        let status = if has_fillers(i) { i.name() } else { "(missing filler)".into() };
        println!("{:<6} {:>3} {:<10} {:<12} {status}", i.v, i.m, parts.join(","), fillers.join(","));
        if let (Some(dir), true) = (emit, has_fillers(i)) {
            let text = i.recipe_text().map_err(anyhow::Error::msg)?;
            fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
            write(&dir.join(format!("{}.recipe", i.name())), &text)?;
        }
    }
    for i in &issues {
        println!("row {} (v={}): {}", i.row + 1, i.v, i.reason);
    }
    Ok(0)
}
