//! Command-line front end.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::constructions::subgroup::sample_h_element;
use crate::constructions::{
    build_ab_pairs, find_avoiders, separation_witness, symmetric_set_build, t2_abelian_h, t2_free_h, verify_ex1,
    AvoidanceContext,
};
use crate::error::{Error, Result};
use crate::group::{Backend, Element};
use crate::monomial::{monomial_count, monomials_over, Monomial, WitnessFamily};
use crate::report::{emit_report, Item, Report, Status, Verdict};

#[derive(Debug, Clone, Parser, Serialize)]
#[command(name = "zariski", version, about = "Monomials over G*<x>, co-zero sets and their constructions")]
pub struct RunConfig {
    /// free:N, free:w, abelian:[m0,..], abelian:N, abelian:w or tree-sd
    #[arg(long, global = true)]
    #[serde(serialize_with = "backend_literal")]
    pub backend: Option<Backend>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Report path; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FamilyArgs {
    /// Witness-family file with a `backend:` header.
    #[arg(long)]
    pub family: Option<PathBuf>,
    /// Inline family member; repeatable.
    #[arg(long = "monomial")]
    pub monomials: Vec<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Ex1VerifyArgs {
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    pub pairs: u64,
    #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..))]
    pub xs: u64,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
pub enum Ex1Action {
    Verify(Ex1VerifyArgs),
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Evaluate a monomial at a point.
    Eval {
        #[arg(long)]
        monomial: String,
        #[arg(long)]
        at: String,
    },
    /// Membership of points in the intersection of co-zero sets.
    Cozero {
        #[command(flatten)]
        family: FamilyArgs,
        /// Point to test; repeatable.
        #[arg(long, required = true)]
        at: Vec<String>,
    },
    /// List Aⁿ[x].
    Monomials {
        /// Coefficient; repeatable.
        #[arg(long = "A")]
        a: Vec<String>,
        /// Set file with one element per line.
        #[arg(long = "A-file")]
        a_file: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Find x ≠ 1 in every co-zero set of the family.
    Separate {
        #[command(flatten)]
        family: FamilyArgs,
        /// Element to avoid; repeatable.
        #[arg(long)]
        exclude: Vec<String>,
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
    },
    /// Verify the witnesses over tree-sd.
    #[command(name = "ex1-verify")]
    Ex1Verify(Ex1VerifyArgs),
    #[command(hide = true)]
    Ex1 {
        #[command(subcommand)]
        action: Ex1Action,
    },
    /// Extract a subgroup avoiding the zeros of the family.
    T2 {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
    },
    /// Membership in the avoidance set Y of a b x a x^-1 c family.
    #[command(name = "p1-member")]
    P1Member {
        /// Entry of the A-list, in order; repeatable.
        #[arg(long = "A")]
        a: Vec<String>,
        #[arg(long = "A-file")]
        a_file: Option<PathBuf>,
        #[command(flatten)]
        family: FamilyArgs,
        /// Point to classify; repeatable.
        #[arg(long)]
        y: Vec<String>,
        /// Additional random members of Y to check.
        #[arg(long, default_value_t = 0)]
        samples: u64,
    },
    /// Elements x with xAx^-1 disjoint from B.
    Avoid {
        #[arg(long = "A")]
        a: Vec<String>,
        #[arg(long = "A-file")]
        a_file: Option<PathBuf>,
        #[arg(long = "B")]
        b: Vec<String>,
        #[arg(long = "B-file")]
        b_file: Option<PathBuf>,
        #[arg(long, default_value_t = 25, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
    },
    /// Build a symmetric X with 1 outside A0 X A1 ... X An.
    #[command(name = "symmetric-set")]
    SymmetricSet {
        /// One set Ai as `|`-separated elements; repeat in order A0, A1, ...
        #[arg(long = "set")]
        sets: Vec<String>,
        /// One set Ai per file, one element per line; used after any `--set`.
        #[arg(long = "set-file")]
        set_files: Vec<PathBuf>,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
    },
}

fn backend_literal<S: serde::Serializer>(b: &Option<Backend>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match b {
        Some(b) => s.serialize_str(&b.to_string()),
        None => s.serialize_none(),
    }
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Eval { .. } => "eval",
            Command::Cozero { .. } => "cozero",
            Command::Monomials { .. } => "monomials",
            Command::Separate { .. } => "separate",
            Command::Ex1Verify(_) | Command::Ex1 { .. } => "ex1-verify",
            Command::T2 { .. } => "t2",
            Command::P1Member { .. } => "p1-member",
            Command::Avoid { .. } => "avoid",
            Command::SymmetricSet { .. } => "symmetric-set",
        }
    }
}

/// Parses and validates `argv` (including the program name).
pub fn parse_args<I, T>(argv: I) -> std::result::Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let mut cfg = RunConfig::try_parse_from(argv)?;
    if let Command::Ex1 { action: Ex1Action::Verify(args) } = cfg.command {
        cfg.command = Command::Ex1Verify(args);
    }
    Ok(cfg)
}

fn backend_or_default(cfg: &RunConfig) -> Backend {
    cfg.backend.clone().unwrap_or_else(|| Backend::free(2))
}

fn load_family(cfg: &RunConfig, args: &FamilyArgs) -> Result<WitnessFamily> {
    let mut members = Vec::new();
    let backend = match &args.family {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let family = WitnessFamily::parse_file(&text)?;
            if let Some(b) = &cfg.backend {
                if b != family.backend() {
                    return Err(Error::BackendMismatch { expected: b.to_string(), found: family.backend().to_string() });
                }
            }
            members.extend(family.members().iter().cloned());
            family.backend().clone()
        }
        None => backend_or_default(cfg),
    };
    for m in &args.monomials {
        members.push(Monomial::parse(m, &backend)?);
    }
    WitnessFamily::from_members(&backend, members)
}

fn parse_all(backend: &Backend, items: &[String]) -> Result<Vec<Element>> {
    items.iter().map(|s| backend.parse_element(s)).collect()
}

fn read_set_file(backend: &Backend, path: &Path) -> Result<Vec<Element>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| backend.parse_element(l))
        .collect()
}

/// Inline literals followed by the contents of the set file; at least one element.
fn element_set(backend: &Backend, flag: &str, items: &[String], file: Option<&PathBuf>) -> Result<Vec<Element>> {
    let mut out = parse_all(backend, items)?;
    if let Some(path) = file {
        out.extend(read_set_file(backend, path)?);
    }
    if out.is_empty() {
        return Err(Error::Precondition(format!("{flag} needs at least one element")));
    }
    Ok(out)
}

fn family_label(family: &WitnessFamily) -> String {
    family.members().iter().map(Monomial::to_string).collect::<Vec<_>>().join(" ; ")
}

/// Runs the configured command. Errors are recorded in the summary.
pub fn run_command(cfg: &RunConfig) -> Report {
    let config = serde_json::to_value(cfg).expect("config serializes");
    let mut report = Report::new(cfg.command.name(), config);
    if let Err(e) = dispatch(cfg, &mut report) {
        report.abort(&e);
    }
    report
}

fn dispatch(cfg: &RunConfig, report: &mut Report) -> Result<()> {
    match &cfg.command {
        Command::Eval { monomial, at } => {
            let backend = backend_or_default(cfg);
            let m = Monomial::parse(monomial, &backend)?;
            let g = backend.parse_element(at)?;
            let value = m.eval(&g)?;
            report.push(Item::new(0, format!("{m} @ {g}"), value.to_string(), Verdict::Pass));
        }
        Command::Cozero { family, at } => {
            let family = load_family(cfg, family)?;
            for (i, g) in parse_all(family.backend(), at)?.iter().enumerate() {
                let member = family.intersection_member(g)?;
                let out = if member { "member" } else { "not-member" };
                report.push(Item::new(i, g.to_string(), out, Verdict::Pass));
            }
        }
        Command::Monomials { a, a_file, n } => {
            let backend = backend_or_default(cfg);
            let coeffs = element_set(&backend, "--A", a, a_file.as_ref())?;
            let list = monomials_over(&backend, &coeffs, *n)?;
            let distinct: BTreeSet<&Element> = coeffs.iter().collect();
            if distinct.len() == coeffs.len() && list.len() as u128 != monomial_count(coeffs.len(), *n) {
                report.fail_check(format!("{} monomials, expected {}", list.len(), monomial_count(coeffs.len(), *n)));
            }
            for (i, m) in list.iter().enumerate() {
                report.push(Item::new(i, format!("degree {}", m.degree()), m.to_string(), Verdict::Pass));
            }
        }
        Command::Separate { family, exclude, budget } => {
            let family = load_family(cfg, family)?;
            let exclude = parse_all(family.backend(), exclude)?;
            let x = separation_witness(&family, &exclude, *budget as usize)?;
            let ok = !x.is_identity() && !exclude.contains(&x) && family.intersection_member(&x)?;
            report.push(Item::new(0, family_label(&family), x.to_string(), Verdict::from_bool(ok)));
        }
        Command::Ex1Verify(args) | Command::Ex1 { action: Ex1Action::Verify(args) } => {
            if let Some(b) = &cfg.backend {
                if *b != Backend::TreeSd {
                    return Err(Error::BackendMismatch { expected: "tree-sd".into(), found: b.to_string() });
                }
            }
            let mut pairs = build_ab_pairs(args.pairs as usize)?;
            let r = verify_ex1(&mut pairs, args.xs as usize)?;
            for item in &r.items {
                let mut row = Item::new(
                    item.index,
                    item.x.to_string(),
                    format!("a = {} ; b = {}", item.a.display(crate::group::Alphabet::Node), item.b.display(crate::group::Alphabet::Node)),
                    Verdict::from_bool(item.passed),
                );
                if !item.passed {
                    row = row.with_sides(item.conjugate.to_string(), crate::tree::SdElement::from_word(item.b.clone()).to_string());
                }
                report.push(row);
            }
            report.note(format!("A/B prefixes of length {} disjoint: {}", r.prefix_len, r.disjoint()));
            if let Some(c) = &r.common {
                report.fail_check(format!("common element {}", c.display(crate::group::Alphabet::Node)));
            }
            if let Some(m) = &r.misclassified {
                report.fail_check(format!("misclassified element {}", m.display(crate::group::Alphabet::Node)));
            }
            if let Err(e) = pairs.check_invariants() {
                report.fail_check(format!("pair invariant: {e}"));
            }
        }
        Command::T2 { family, samples } => {
            let family = load_family(cfg, family)?;
            let backend = family.backend().clone();
            let h = match &backend {
                Backend::Abelian(_) => t2_abelian_h(&family)?,
                Backend::Free(_) => t2_free_h(&family)?,
                Backend::TreeSd => {
                    return Err(Error::BackendMismatch { expected: "abelian or free".into(), found: backend.to_string() })
                }
            };
            report.push(Item::new(0, family_label(&family), format!("H indices {h}"), Verdict::Pass));
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            for i in 1..=*samples as usize {
                let sample = sample_h_element(&backend, &h, &mut rng).expect("H is nonempty");
                let zero = family.members().iter().find(|w| !w.cozero_contains(&sample).unwrap_or(false));
                let mut row = Item::new(i, sample.to_string(), "in every co-zero set", Verdict::from_bool(zero.is_none()));
                if let Some(w) = zero {
                    row.output = format!("vanishes on {w}");
                    row = row.with_sides(w.eval(&sample)?.to_string(), "1");
                }
                report.push(row);
            }
        }
        Command::P1Member { a, a_file, family, y, samples } => {
            let family = load_family(cfg, family)?;
            let backend = family.backend().clone();
            let a_list = element_set(&backend, "--A", a, a_file.as_ref())?;
            let ctx = AvoidanceContext::new(&backend, &a_list, &family)?;
            report.note(format!("G_n = {} ; K = {:?}", ctx.g_n(), ctx.k_set()));
            let mut points = parse_all(&backend, y)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            for _ in 0..*samples {
                points.push(Element::Free(ctx.sample_y(&mut rng)));
            }
            for (i, p) in points.iter().enumerate() {
                let w = p.as_word().expect("free backend");
                let member = ctx.contains(w);
                let symmetric = ctx.contains(&w.inverse()) == member;
                let zero = if member {
                    family.members().iter().find(|v| !v.cozero_contains(p).unwrap_or(false))
                } else {
                    None
                };
                let out = if member { "member" } else { "not-member" };
                let mut row = Item::new(i, p.to_string(), out, Verdict::from_bool(symmetric && zero.is_none()));
                if let Some(v) = zero {
                    row = row.with_sides(v.eval(p)?.to_string(), "1");
                } else if !symmetric {
                    row = row.with_sides(format!("member({p}) = {member}"), format!("member(inverse) = {}", !member));
                }
                report.push(row);
            }
        }
        Command::Avoid { a, a_file, b, b_file, count, budget } => {
            let backend = backend_or_default(cfg);
            let a = element_set(&backend, "--A", a, a_file.as_ref())?;
            let b = element_set(&backend, "--B", b, b_file.as_ref())?;
            let xs = find_avoiders(&backend, &a, &b, *count as usize, *budget as usize)?;
            let distinct: BTreeSet<&Element> = xs.iter().collect();
            if distinct.len() != xs.len() {
                report.fail_check("repeated element among the avoiders");
            }
            for (i, x) in xs.iter().enumerate() {
                let mut hit = None;
                for ai in &a {
                    let c = backend.conjugate(ai, x)?;
                    if b.contains(&c) {
                        hit = Some(c);
                        break;
                    }
                }
                let mut row = Item::new(i, x.to_string(), "xAx^-1 misses B", Verdict::from_bool(hit.is_none()));
                if let Some(c) = hit {
                    row = row.with_sides(c.to_string(), "an element of B");
                }
                report.push(row);
            }
        }
        Command::SymmetricSet { sets, set_files, count, budget } => {
            let backend = backend_or_default(cfg);
            let mut sets = sets
                .iter()
                .map(|s| s.split('|').map(|e| backend.parse_element(e)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            for path in set_files {
                sets.push(read_set_file(&backend, path)?);
            }
            let state = symmetric_set_build(&backend, &sets, *count as usize, *budget as usize)?;
            for (i, x) in state.points().iter().enumerate() {
                let c = &state.coefficients()[i];
                report.push(Item::new(i, format!("C{i} size {}", c.len_hint()), x.to_string(), Verdict::Pass));
            }
            let i = report.next_index();
            match state.check_conditions() {
                Ok(()) => report.push(Item::new(i, "conditions (1)-(4)", "hold", Verdict::Pass)),
                Err(e) => report.push(Item::new(i, "conditions (1)-(4)", e, Verdict::Fail)),
            }
            let check = state.product_check();
            let input = format!("1 in A0 X A1 ... X A{}", state.degree());
            let mut row = Item::new(i + 1, input, format!("{} products checked", check.products), Verdict::from_bool(check.counterexample.is_none()));
            if let Some(t) = check.counterexample {
                let tuple = t.iter().map(Element::to_string).collect::<Vec<_>>().join(" * ");
                row = row.with_sides(tuple, "1");
            }
            report.push(row);
        }
    }
    Ok(())
}

/// Full CLI behaviour; returns the process exit code.
pub fn main_with<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match parse_args(argv) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { Status::InputError.exit_code() } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let start = Instant::now();
    let report = run_command(&cfg);
    if let Err(e) = emit_report(&report, cfg.out.as_deref()) {
        eprintln!("error: {e}");
        return Status::InputError.exit_code();
    }
    if let Some(err) = &report.summary.error {
        eprintln!("error: {err}");
    }
    eprintln!("{}: {:.3}s", cfg.command.name(), start.elapsed().as_secs_f64());
    report.exit_code()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Report {
        let mut argv = vec!["zariski"];
        argv.extend_from_slice(args);
        run_command(&parse_args(argv).unwrap())
    }

    #[test]
    fn parse_examples() {
        let cfg = parse_args(["zariski", "eval", "--backend", "free:2", "--monomial", "g0 x g1 x^-1", "--at", "g1"]).unwrap();
        assert!(matches!(cfg.command, Command::Eval { .. }));
        assert!(parse_args(["zariski", "eval", "--backend", "free:0", "--monomial", "x", "--at", "1"]).is_err());
        let cfg = parse_args(["zariski", "ex1", "verify", "--pairs", "64", "--xs", "500"]).unwrap();
        assert!(matches!(cfg.command, Command::Ex1Verify(Ex1VerifyArgs { pairs: 64, xs: 500 })));
        assert!(parse_args(["zariski", "eval", "--bogus"]).is_err());
        assert!(parse_args(["zariski", "avoid", "--A", "g0", "--B", "g1", "--count", "0"]).is_err());
    }

    #[test]
    fn eval_at_identity() {
        let r = run(&["eval", "--backend", "free:2", "--monomial", "x g0 x^-1 g1^-1", "--at", "1"]);
        assert_eq!(r.items[0].output, "g0 g1^-1");
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn monomial_listing() {
        let r = run(&["monomials", "--A", "1", "--n", "1"]);
        assert_eq!(r.items.len(), 3);
    }

    #[test]
    fn error_codes() {
        let r = run(&["separate", "--monomial", "x g0 x^-1 g0^-1"]);
        assert_eq!(r.exit_code(), 3);
        let r = run(&["avoid", "--A", "g0", "--B", "g1", "--count", "5", "--budget", "2"]);
        assert_eq!(r.exit_code(), 2);
        let r = run(&["eval", "--monomial", "x g7", "--at", "1"]);
        assert_eq!(r.exit_code(), 3);
    }

    #[test]
    fn symmetric_set_report() {
        let r = run(&["symmetric-set", "--set", "g0", "--set", "g1", "--count", "4"]);
        assert_eq!(r.exit_code(), 0, "{}", r.to_jsonl());
        assert_eq!(r.items.len(), 6);
    }
}
