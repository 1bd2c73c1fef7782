//! Declarative build plans.
//!
//! A recipe is a list of `let <name> = <verb> ...` lines plus one
//! `output <name>`. Steps run in dependency order (ties broken by line
//! order) and every intermediate object is verified before anything uses it.

use std::collections::HashMap;
use std::fmt;
use std::path::{Path, PathBuf};

use crate::algebra::{td_build, TdSpec};
use crate::catalog::{build_entry, catalog_entry, EntryKind};
use crate::construct::{
    compose_fill_certificate, delete_points, fill_groups_placed, inflate_by_td, weight_and_replace, WeightAssignment,
};
use crate::error::RecipeError;
use crate::format::parse_design_file;
use crate::model::{DesignObject, FillSpec, GroupedDesign, InflationSpec};
use crate::trade::{generic_bound, orbit_trade_scan, parse_certificate, validate_certificate, BoundCertificate};
use crate::verify::{default_kind, full_report, Kind, VerificationReport};

/// Nested `recipe` steps deeper than this are rejected.
pub const MAX_NESTING: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Action {
    Catalog(String),
    File(PathBuf),
    Td { k: u32, n: u32 },
    Delete { src: String, deletions: Vec<(usize, u32)> },
    Inflate { src: String, td: String },
    Weight { src: String, w: u32, using: Vec<String> },
    Fill { src: String, eta: u32, using: Vec<String> },
    /// Runs another recipe (shipped name or path) and takes its output.
    Recipe(String),
}

impl Action {
    fn inputs(&self) -> Vec<&str> {
        match self {
            Action::Catalog(_) | Action::File(_) | Action::Td { .. } | Action::Recipe(_) => vec![],
            Action::Delete { src, .. } => vec![src],
            Action::Inflate { src, td } => vec![src, td],
            Action::Weight { src, using, .. } | Action::Fill { src, using, .. } => {
                std::iter::once(src.as_str()).chain(using.iter().map(String::as_str)).collect()
            }
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Catalog(id) => write!(f, "catalog {id}"),
            Action::File(p) => write!(f, "file {}", p.display()),
            Action::Td { k, n } => write!(f, "td {k} {n}"),
            Action::Delete { src, deletions } => {
                write!(f, "delete {src}")?;
                for (g, c) in deletions {
                    write!(f, " group={g}:count={c}")?;
                }
                Ok(())
            }
            Action::Inflate { src, td } => write!(f, "inflate {src} by {td}"),
            Action::Weight { src, w, using } => write!(f, "weight {src} w={w} using {}", using.join(",")),
            Action::Fill { src, eta, using } => write!(f, "fill {src} eta={eta} using {}", using.join(",")),
            Action::Recipe(r) => write!(f, "recipe {r}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub name: String,
    pub action: Action,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recipe {
    pub steps: Vec<Step>,
    pub output: String,
    /// Directory that `file` and `recipe` paths are resolved against.
    pub base_dir: Option<PathBuf>,
    /// Leading `%` comment block, used as a description.
    pub title: String,
}

fn perr(line: usize, reason: impl Into<String>) -> RecipeError {
    RecipeError::Parse { line, reason: reason.into() }
}

fn parse_num<T: std::str::FromStr>(line: usize, what: &str, s: &str) -> Result<T, RecipeError> {
    s.parse().map_err(|_| perr(line, format!("bad {what} `{s}`")))
}

fn parse_using(line: usize, words: &[&str]) -> Result<Vec<String>, RecipeError> {
    match words {
        ["using", list] => {
            let names: Vec<String> = list.split(',').map(str::to_string).collect();
            if names.iter().any(|n| n.is_empty()) {
                return Err(perr(line, format!("bad name list `{list}`")));
            }
            Ok(names)
        }
        _ => Err(perr(line, "expected `using <name>[,<name>...]`")),
    }
}

fn keyed<'a>(line: usize, word: &'a str, key: &str) -> Result<&'a str, RecipeError> {
    word.strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| perr(line, format!("expected `{key}=...`, got `{word}`")))
}

fn parse_action(line: usize, words: &[&str]) -> Result<Action, RecipeError> {
    let (verb, rest) = words.split_first().ok_or_else(|| perr(line, "missing verb"))?;
    let action = match (*verb, rest) {
        ("catalog", [id]) => Action::Catalog(id.to_string()),
        ("file", [path]) => Action::File(PathBuf::from(path)),
        ("recipe", [r]) => Action::Recipe(r.to_string()),
        ("td", [k, n]) => Action::Td { k: parse_num(line, "k", k)?, n: parse_num(line, "n", n)? },
        ("delete", [src, dels @ ..]) if !dels.is_empty() => {
            let mut deletions = Vec::new();
            for d in dels {
                let (g, c) = d
                    .split_once(':')
                    .ok_or_else(|| perr(line, format!("expected `group=<g>:count=<c>`, got `{d}`")))?;
                let g = parse_num(line, "group", keyed(line, g, "group")?)?;
                let c = parse_num(line, "count", keyed(line, c, "count")?)?;
                deletions.push((g, c));
            }
            Action::Delete { src: src.to_string(), deletions }
        }
        ("inflate", [src, "by", td]) => Action::Inflate { src: src.to_string(), td: td.to_string() },
        ("weight", [src, w, using @ ..]) => Action::Weight {
            src: src.to_string(),
            w: parse_num(line, "weight", keyed(line, w, "w")?)?,
            using: parse_using(line, using)?,
        },
        ("fill", [src, eta, using @ ..]) => {
            let eta = parse_num(line, "eta", keyed(line, eta, "eta")?)?;
            if eta > 1 {
                return Err(perr(line, format!("eta must be 0 or 1, got {eta}")));
            }
            Action::Fill { src: src.to_string(), eta, using: parse_using(line, using)? }
        }
        ("catalog" | "file" | "recipe" | "td" | "delete" | "inflate" | "weight" | "fill", _) => {
            return Err(perr(line, format!("malformed `{verb}` step")))
        }
        _ => return Err(perr(line, format!("unknown verb `{verb}`"))),
    };
    Ok(action)
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

/// Parses recipe text. Name resolution and cycle detection happen in
/// [`Recipe::plan`].
pub fn parse_recipe(text: &str) -> Result<Recipe, RecipeError> {
    let mut steps: Vec<Step> = Vec::new();
    let mut output = None;
    let mut title = Vec::new();
    let mut in_header = true;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if let Some(c) = trimmed.strip_prefix('%') {
            if in_header {
                title.push(c.trim().to_string());
            }
            continue;
        }
        let body = trimmed.split('%').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        in_header = false;
        let words: Vec<&str> = body.split_whitespace().collect();
        match words.as_slice() {
            ["output", name] => {
                if output.is_some() {
                    return Err(perr(line, "second `output` line"));
                }
                output = Some(name.to_string());
            }
            ["let", name, "=", rest @ ..] => {
                if !valid_name(name) {
                    return Err(perr(line, format!("bad step name `{name}`")));
                }
                if steps.iter().any(|s| s.name == *name) {
                    return Err(perr(line, format!("step `{name}` defined twice")));
                }
                steps.push(Step { name: name.to_string(), action: parse_action(line, rest)?, line });
            }
            _ => return Err(perr(line, format!("expected `let <name> = ...` or `output <name>`, got `{body}`"))),
        }
    }
    let output = output.ok_or(RecipeError::NoOutput)?;
    Ok(Recipe { steps, output, base_dir: None, title: title.join(" ") })
}

impl Recipe {
    /// Reads a recipe file; relative paths inside resolve against its directory.
    pub fn from_path(path: &Path) -> Result<Recipe, RecipeError> {
        let text = std::fs::read_to_string(path).map_err(|e| RecipeError::Step {
            step: path.display().to_string(),
            source: Box::new(e),
        })?;
        let mut r = parse_recipe(&text)?;
        r.base_dir = path.parent().map(Path::to_path_buf);
        Ok(r)
    }

    pub fn step(&self, name: &str) -> Option<&Step> {
        self.steps.iter().find(|s| s.name == name)
    }

    /// Execution order: Kahn's algorithm, always taking the earliest ready
    /// line. Only steps the output depends on are scheduled.
    pub fn plan(&self) -> Result<Vec<usize>, RecipeError> {
        let index: HashMap<&str, usize> = self.steps.iter().enumerate().map(|(i, s)| (s.name.as_str(), i)).collect();
        let out = *index.get(self.output.as_str()).ok_or_else(|| RecipeError::UnknownName(self.output.clone()))?;
        let mut deps = vec![Vec::new(); self.steps.len()];
        for (i, s) in self.steps.iter().enumerate() {
            for name in s.action.inputs() {
                let j = *index.get(name).ok_or_else(|| RecipeError::UnknownName(name.to_string()))?;
                deps[i].push(j);
            }
        }
        let mut needed = vec![false; self.steps.len()];
        let mut stack = vec![out];
        while let Some(i) = stack.pop() {
            if !std::mem::replace(&mut needed[i], true) {
                stack.extend(&deps[i]);
            }
        }
        let mut indeg: Vec<usize> = deps.iter().map(|d| d.len()).collect();
        let mut done = vec![false; self.steps.len()];
        let mut order = Vec::new();
        loop {
            let Some(i) = (0..self.steps.len()).find(|&i| !done[i] && indeg[i] == 0) else { break };
            done[i] = true;
            if needed[i] {
                order.push(i);
            }
            for (j, d) in deps.iter().enumerate() {
                indeg[j] -= d.iter().filter(|&&x| x == i).count();
            }
        }
        if let Some(i) = (0..self.steps.len()).find(|&i| !done[i]) {
            return Err(RecipeError::CyclicDependency(self.steps[i].name.clone()));
        }
        Ok(order)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    /// Keep executing after a step fails verification.
    pub keep_going: bool,
    /// Carry defining-set certificates through the build.
    pub certify: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { keep_going: false, certify: true }
    }
}

/// Verification of one executed step.
#[derive(Clone, Debug)]
pub struct StepReport {
    /// Step name, prefixed by enclosing recipe steps for nested recipes.
    pub step: String,
    pub action: String,
    pub report: VerificationReport,
}

#[derive(Clone, Debug)]
pub struct RecipeOutcome {
    pub output: DesignObject,
    pub certificate: Option<BoundCertificate>,
    pub steps: Vec<StepReport>,
    /// One line per executed step.
    pub trail: Vec<String>,
}

impl RecipeOutcome {
    /// `true` iff every step, including the output, passed verification.
    pub fn verified(&self) -> bool {
        self.steps.iter().all(|s| s.report.passed())
    }

    pub fn output_report(&self) -> Option<&VerificationReport> {
        self.steps.last().map(|s| &s.report)
    }

    /// `%TRAIL` comment lines for embedding in design files.
    pub fn trail_comment_lines(&self) -> String {
        self.trail.iter().map(|t| format!("%TRAIL {t}\n")).collect()
    }
}

struct Value {
    obj: DesignObject,
    cert: Option<BoundCertificate>,
}

fn step_err(step: &str, e: impl std::error::Error + Send + Sync + 'static) -> RecipeError {
    RecipeError::Step { step: step.to_string(), source: Box::new(e) }
}

fn msg_err(step: &str, msg: String) -> RecipeError {
    RecipeError::Step { step: step.to_string(), source: msg.into() }
}

fn grouped<'a>(step: &str, name: &str, v: &'a Value) -> Result<&'a GroupedDesign, RecipeError> {
    v.obj.as_grouped().ok_or_else(|| msg_err(step, format!("`{name}` is not a group divisible design")))
}

fn cert_or_generic(v: &Value) -> BoundCertificate {
    v.cert.clone().unwrap_or_else(|| generic_bound(v.obj.design()))
}

/// Runs a recipe. `on_step` sees each step report as soon as it exists.
///
/// Without `keep_going`, the first step that fails verification aborts the
/// run with [`RecipeError::StepVerificationFailed`].
pub fn run_recipe(
    recipe: &Recipe,
    options: RunOptions,
    on_step: &mut dyn FnMut(&StepReport),
) -> Result<RecipeOutcome, RecipeError> {
    run_nested(recipe, options, on_step, "", 0)
}

fn run_nested(
    recipe: &Recipe,
    options: RunOptions,
    on_step: &mut dyn FnMut(&StepReport),
    prefix: &str,
    depth: usize,
) -> Result<RecipeOutcome, RecipeError> {
    let order = recipe.plan()?;
    let mut values: HashMap<&str, Value> = HashMap::new();
    let mut reports = Vec::new();
    let mut trail = Vec::new();
    for &i in &order {
        let step = &recipe.steps[i];
        let label = format!("{prefix}{}", step.name);
        let (value, kind) = execute(recipe, step, &label, &values, options, on_step, &mut reports, &mut trail, depth)?;
        let report = full_report(&value.obj, kind).map_err(|e| step_err(&label, e))?;
        let sr = StepReport { step: label.clone(), action: step.action.to_string(), report };
        on_step(&sr);
        trail.push(format!(
            "{label} = {} -> {} v={} blocks={} {}",
            step.action,
            kind.name(),
            value.obj.design().params.v,
            value.obj.design().blocks.len(),
            if sr.report.passed() { "verified" } else { "FAILED" }
        ));
        let failed = !sr.report.passed();
        reports.push(sr);
        if failed && !options.keep_going {
            let report = reports.pop().map(|s| s.report).expect("just pushed");
            return Err(RecipeError::StepVerificationFailed { step: label, report: Box::new(report) });
        }
        values.insert(step.name.as_str(), value);
    }
    let out = values.remove(recipe.output.as_str()).expect("output is scheduled last");
    let certificate = match (options.certify, out.cert) {
        (false, _) => None,
        (true, Some(c)) => Some(c),
        (true, None) => Some(generic_bound(out.obj.design())),
    };
    // The output step is always last in the plan, so its report is last.
    Ok(RecipeOutcome { output: out.obj, certificate, steps: reports, trail })
}

#[allow(clippy::too_many_arguments)]
fn execute(
    recipe: &Recipe,
    step: &Step,
    label: &str,
    values: &HashMap<&str, Value>,
    options: RunOptions,
    on_step: &mut dyn FnMut(&StepReport),
    reports: &mut Vec<StepReport>,
    trail: &mut Vec<String>,
    depth: usize,
) -> Result<(Value, Kind), RecipeError> {
    let get = |n: &String| values.get(n.as_str()).expect("planned after its inputs");
    let resolve = |p: &Path| match &recipe.base_dir {
        Some(d) if p.is_relative() => d.join(p),
        _ => p.to_path_buf(),
    };
    Ok(match &step.action {
        Action::Catalog(id) => {
            let entry = catalog_entry(id).map_err(|e| step_err(label, e))?;
            let obj = build_entry(entry);
            let cert = if options.certify && entry.kind != EntryKind::GddMaster {
                Some(orbit_trade_scan(entry).map_err(|e| step_err(label, e))?)
            } else {
                None
            };
            let kind = if entry.kind == EntryKind::Dd { Kind::Dd } else { Kind::Dgdd };
            (Value { obj, cert }, kind)
        }
        Action::File(p) => {
            let path = resolve(p);
            let text = std::fs::read_to_string(&path).map_err(|e| step_err(label, e))?;
            let obj = parse_design_file(&text).map_err(|e| step_err(label, e))?;
            let cert = if options.certify {
                let c = parse_certificate(&text, obj.design().blocks.len() as u64).map_err(|e| step_err(label, e))?;
                if let Some(c) = &c {
                    validate_certificate(obj.design(), c).map_err(|e| step_err(label, e))?;
                }
                c
            } else {
                None
            };
            let kind = default_kind(&obj);
            (Value { obj, cert }, kind)
        }
        Action::Td { k, n } => {
            let td = td_build(TdSpec { k: *k, n: *n }).map_err(|e| step_err(label, e))?;
            (Value { obj: td.into(), cert: None }, Kind::Td)
        }
        Action::Delete { src, deletions } => {
            let g = grouped(label, src, get(src))?;
            let out = delete_points(g, deletions).map_err(|e| step_err(label, e))?;
            (Value { obj: out.into(), cert: None }, Kind::Dgdd)
        }
        Action::Inflate { src, td } => {
            let t = grouped(label, td, get(td))?;
            let alpha = t.groups().first().map_or(0, |c| c.len() as u32);
            let alpha = InflationSpec::new(alpha).map_err(|e| step_err(label, e))?;
            let out = inflate_by_td(&get(src).obj, alpha, t).map_err(|e| step_err(label, e))?;
            (Value { obj: out.into(), cert: None }, Kind::Dgdd)
        }
        Action::Weight { src, w, using } => {
            let master = grouped(label, src, get(src))?;
            let ingredients = using
                .iter()
                .map(|n| grouped(label, n, get(n)).cloned())
                .collect::<Result<Vec<_>, _>>()?;
            let weights = WeightAssignment::uniform(master.design.params.v, *w);
            let out = weight_and_replace(master, &weights, &ingredients).map_err(|e| step_err(label, e))?;
            (Value { obj: out.into(), cert: None }, Kind::Dgdd)
        }
        Action::Fill { src, eta, using } => {
            let base = get(src);
            let g = grouped(label, src, base)?;
            let fillers: Vec<_> = using.iter().map(|n| get(n).obj.design().clone()).collect();
            let spec = FillSpec::new(*eta).map_err(|e| step_err(label, e))?;
            let filled = fill_groups_placed(g, spec, &fillers).map_err(|e| step_err(label, e))?;
            let cert = options.certify.then(|| {
                let filler_certs: Vec<_> = using.iter().map(|n| cert_or_generic(get(n))).collect();
                compose_fill_certificate(&filled, &cert_or_generic(base), &filler_certs)
            });
            (Value { obj: filled.design.into(), cert }, Kind::Dd)
        }
        Action::Recipe(name) => {
            if depth >= MAX_NESTING {
                return Err(msg_err(label, format!("recipes nested deeper than {MAX_NESTING}")));
            }
            let inner = match shipped_recipe(name) {
                Some(s) => s.recipe(),
                None => Recipe::from_path(&resolve(Path::new(name))),
            }
            .map_err(|e| step_err(label, e))?;
            let mut sub = run_nested(&inner, options, on_step, &format!("{label}/"), depth + 1)
                .map_err(|e| step_err(label, e))?;
            reports.append(&mut sub.steps);
            trail.append(&mut sub.trail);
            let kind = default_kind(&sub.output);
            (Value { obj: sub.output, cert: sub.certificate }, kind)
        }
    })
}

/// A recipe bundled with the library.
#[derive(Clone, Copy, Debug)]
pub struct ShippedRecipe {
    pub name: &'static str,
    pub text: &'static str,
    /// `false` for templates that read user-supplied files.
    pub runnable: bool,
}

impl ShippedRecipe {
    pub fn recipe(&self) -> Result<Recipe, RecipeError> {
        parse_recipe(self.text)
    }

    /// Order of the output design, read from the name (`...-v<order>`).
    pub fn target_v(&self) -> Option<u32> {
        self.name.rsplit_once("-v").and_then(|(_, v)| v.parse().ok())
    }
}

macro_rules! shipped {
    ($($name:literal),* $(,)?) => {
        &[$(ShippedRecipe {
            name: $name,
            text: include_str!(concat!("../recipes/", $name, ".recipe")),
            runnable: true,
        }),*]
    };
}

static SHIPPED: &[ShippedRecipe] = shipped![
    "lemma11-v37",
    "lemma11-v46",
    "lemma11-v52",
    "lemma11-v76",
    "lemma11-v88",
    "lemma12-v49",
    "lemma12-v61",
    "lemma12-v73",
    "lemma12-v97",
    "lemma12-v121",
    "lemma13-v64",
    "lemma13-v100",
    "lemma13-v112",
    "lemma14-v70",
    "lemma14-v127",
    "lemma15-v55",
    "lemma15-v73",
    "lemma15-v82",
    "lemma15-v85",
    "lemma15-v106",
    "lemma15-v109",
    "lemma15-v118",
    "lemma16-v115",
    "lemma16-v133",
    "lemma18-v136",
    "lemma18-v139",
    "lemma19-v277",
    "lemma19-v301",
];

static TEMPLATES: &[ShippedRecipe] = &[ShippedRecipe {
    name: "main-theorem-template",
    text: include_str!("../recipes/main-theorem-template.recipe"),
    runnable: false,
}];

/// Every bundled recipe: runnable ones first, then templates.
pub fn shipped_recipes() -> impl Iterator<Item = &'static ShippedRecipe> {
    SHIPPED.iter().chain(TEMPLATES)
}

pub fn shipped_recipe(name: &str) -> Option<&'static ShippedRecipe> {
    shipped_recipes().find(|r| r.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(text: &str) -> Result<RecipeOutcome, RecipeError> {
        run_recipe(&parse_recipe(text).unwrap(), RunOptions::default(), &mut |_| {})
    }

    #[test]
    fn parses_every_verb() {
        let r = parse_recipe(
            "% header\n\
             let a = catalog dgdd-4pow4\n\
             let b = file x.dd\n\
             let t = td 4 3 % trailing\n\
             let d = delete t group=3:count=1 group=2:count=0\n\
             let i = inflate a by t\n\
             let w = weight d w=5 using a,i\n\
             let f = fill i eta=1 using b\n\
             let n = recipe lemma12-v49\n\
             output f\n",
        )
        .unwrap();
        assert_eq!(r.title, "header");
        assert_eq!(r.steps.len(), 8);
        assert_eq!(r.step("d").unwrap().action, Action::Delete { src: "t".into(), deletions: vec![(3, 1), (2, 0)] });
        assert_eq!(r.step("w").unwrap().action.to_string(), "weight d w=5 using a,i");
        assert_eq!(r.step("t").unwrap().line, 4);
        // Only what `f` needs is scheduled.
        let order: Vec<&str> = r.plan().unwrap().iter().map(|&i| r.steps[i].name.as_str()).collect();
        assert_eq!(order, ["a", "b", "t", "i", "f"]);
    }

    #[test]
    fn parse_errors() {
        let bad = [
            ("let a = frobnicate x\noutput a\n", 1),
            ("let a = td 4\noutput a\n", 1),
            ("let a = td 4 x\noutput a\n", 1),
            ("let a = catalog dd-10\nlet a = catalog dd-13\noutput a\n", 2),
            ("let a = catalog dd-10\nlet b = fill a eta=2 using a\noutput b\n", 2),
            ("let a = catalog dd-10\nlet b = delete a group=1\noutput b\n", 2),
            ("let a = catalog dd-10\noutput a\noutput a\n", 3),
            ("a = catalog dd-10\n", 1),
        ];
        for (text, line) in bad {
            match parse_recipe(text) {
                Err(RecipeError::Parse { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
        assert!(matches!(parse_recipe("let a = catalog dd-10\n"), Err(RecipeError::NoOutput)));
    }

    #[test]
    fn cycles_and_unknown_names_fail_before_running() {
        let r = parse_recipe("let a = fill b eta=0 using c\nlet b = fill a eta=0 using c\nlet c = catalog dd-10\noutput a\n")
            .unwrap();
        assert!(matches!(r.plan(), Err(RecipeError::CyclicDependency(n)) if n == "a"));
        let r = parse_recipe("let a = inflate m by t\noutput a\n").unwrap();
        assert!(matches!(r.plan(), Err(RecipeError::UnknownName(n)) if n == "m"));
        let r = parse_recipe("let a = catalog dd-10\noutput z\n").unwrap();
        assert!(matches!(r.plan(), Err(RecipeError::UnknownName(n)) if n == "z"));
    }

    #[test]
    fn v49_builds_and_certifies() {
        let mut seen = Vec::new();
        let r = shipped_recipe("lemma12-v49").unwrap().recipe().unwrap();
        let out = run_recipe(&r, RunOptions::default(), &mut |s| seen.push(s.step.clone())).unwrap();
        assert_eq!(seen, ["m", "t", "g", "f", "out"]);
        assert!(out.verified());
        assert_eq!(out.output.design().params.v, 49);
        assert_eq!(out.output.design().blocks.len(), 784);
        let cert = out.certificate.unwrap();
        assert!(crate::trade::certify_half(out.output.design(), &cert).unwrap());
        assert_eq!(out.trail.len(), 5);
        assert!(out.trail[2].starts_with("g = inflate m by t -> DGDD v=48 blocks=576 verified"));
    }

    #[test]
    fn failing_ingredient_stops_the_run() {
        let err = run(&shipped_recipe("lemma11-v52").unwrap().text).unwrap_err();
        match err {
            RecipeError::StepVerificationFailed { step, report } => {
                assert_eq!(step, "g");
                assert!(!report.check("block-count").unwrap().passed);
            }
            other => panic!("{other:?}"),
        }
        let r = shipped_recipe("lemma11-v52").unwrap().recipe().unwrap();
        let out = run_recipe(&r, RunOptions { keep_going: true, certify: false }, &mut |_| {}).unwrap();
        assert!(!out.verified());
        assert!(out.certificate.is_none());
        assert_eq!(out.steps.len(), 3);
    }

    #[test]
    fn step_errors_name_the_step() {
        let err = run("let a = catalog dd-10\nlet t = td 4 3\nlet b = inflate a by t\nlet c = fill b eta=1 using a\noutput c\n")
            .unwrap_err();
        // dd-10 fails verification before anything else happens.
        assert!(matches!(err, RecipeError::StepVerificationFailed { step, .. } if step == "a"));
        let err = run("let a = catalog dd-13\nlet b = fill a eta=0 using a\noutput b\n").unwrap_err();
        assert!(matches!(err, RecipeError::Step { step, .. } if step == "b"));
        let err = run("let a = catalog nosuch\noutput a\n").unwrap_err();
        assert!(err.to_string().contains("nosuch"));
    }

    #[test]
    fn nested_recipes_prefix_steps() {
        let mut seen = Vec::new();
        let r = parse_recipe("let x = recipe lemma12-v49\noutput x\n").unwrap();
        let out = run_recipe(&r, RunOptions::default(), &mut |s| seen.push(s.step.clone())).unwrap();
        assert_eq!(seen.first().map(String::as_str), Some("x/m"));
        assert_eq!(seen.last().map(String::as_str), Some("x"));
        assert_eq!(out.output.design().blocks.len(), 784);
        assert!(out.certificate.is_some());
    }

    #[test]
    fn file_steps_resolve_relative_to_the_recipe() {
        let dir = std::env::temp_dir().join(format!("ssdd-recipe-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let dd = crate::catalog::catalog_build("dd-13").unwrap();
        std::fs::write(dir.join("d.dd"), crate::format::write_design_file(&dd)).unwrap();
        std::fs::write(dir.join("r.recipe"), "let a = file d.dd\noutput a\n").unwrap();
        let r = Recipe::from_path(&dir.join("r.recipe")).unwrap();
        let out = run_recipe(&r, RunOptions::default(), &mut |_| {}).unwrap();
        assert!(out.verified());
        assert_eq!(out.output.design().blocks.len(), 52);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn shipped_recipes_parse_and_plan() {
        for s in shipped_recipes() {
            let r = s.recipe().unwrap_or_else(|e| panic!("{}: {e}", s.name));
            r.plan().unwrap_or_else(|e| panic!("{}: {e}", s.name));
            assert!(!r.title.is_empty(), "{}", s.name);
        }
        assert_eq!(shipped_recipe("lemma16-v133").unwrap().target_v(), Some(133));
        assert!(!shipped_recipe("main-theorem-template").unwrap().runnable);
    }
}
