mod input;
mod report;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use workbench::factor::{Decision, FactorMonoid};
use workbench::family::build_w;
use workbench::lattice::{all_partitions, check_antiisomorphism_proxy, embed_lattice, FiniteLattice};
use workbench::monitor::{monitor_lemma, Lemma, MonitorParams};
use workbench::monoid::{self, FiniteMonoid, IsotermVerdict, Satisfaction};
use workbench::rewrite::{self, Caps, Derivation, IdentitySet, RewriteError};
use workbench::suite::{self, Profile, Record, Status, SuiteConfig, CRITERIA};
use workbench::word::Identity;

use report::Report;

#[derive(Parser)]
#[command(name = "workbench", version, about = "Equational logic over finite monoids")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the acceptance checks and lemma monitors.
    #[command(subcommand)]
    Verify(Verify),
    /// Built-in and file-based finite monoids.
    #[command(subcommand)]
    Monoid(MonoidCmd),
    /// Check an identity in a finite monoid or a factor monoid.
    Check(CheckArgs),
    /// The factor monoid M(W) of a word set.
    #[command(subcommand, name = "factor-monoid")]
    FactorMonoid(FactorCmd),
    /// The family words w_xi.
    #[command(subcommand)]
    Family(FamilyCmd),
    /// Direct deduction from a set of identities.
    #[command(subcommand)]
    Rewrite(RewriteCmd),
    /// Partition lattices and lattice embeddings.
    #[command(subcommand)]
    Lattice(LatticeCmd),
}

#[derive(Subcommand)]
enum Verify {
    /// Every acceptance criterion, then the monitors of the profile.
    All {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value = "fast")]
        profile: Profile,
        #[arg(long, default_value_t = SuiteConfig::default().seed)]
        seed: u64,
        /// Use this monoid file (JSON) in place of the built-in B21.
        #[arg(long)]
        b21: Option<PathBuf>,
    },
    /// One acceptance criterion, by number or name.
    Criterion {
        which: String,
        #[arg(long, default_value = "full")]
        profile: Profile,
        #[arg(long, default_value_t = SuiteConfig::default().seed)]
        seed: u64,
    },
    /// One lemma monitor.
    Lemma {
        name: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = MonitorParams::default().max_instances)]
        max_instances: usize,
    },
}

#[derive(Subcommand)]
enum MonoidCmd {
    /// Print the Cayley table of a built-in monoid or a monoid file.
    Show(MonoidSource),
    /// Search for a word w' != w with w = w' holding, up to a length bound.
    Isoterm {
        #[command(flatten)]
        source: MonoidSource,
        word: String,
        /// Length bound (default: length of the word + 2).
        #[arg(long)]
        len: Option<usize>,
    },
}

#[derive(Args)]
struct MonoidSource {
    /// Built-in name: B21, A21, D<p>, Q8, Z<k>, trivial, or products like "B21 x Z2".
    name: Option<String>,
    #[arg(long, conflicts_with = "name")]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// Built-in monoid name.
    #[arg(long, group = "model")]
    monoid: Option<String>,
    /// Monoid file (JSON with names, table, identity).
    #[arg(long, group = "model")]
    monoid_file: Option<PathBuf>,
    /// Comma-separated word set of a factor monoid.
    #[arg(long, group = "model")]
    words: Vec<String>,
    /// File with one word per line, for a factor monoid.
    #[arg(long, group = "model")]
    word_file: Option<PathBuf>,
    /// Identity "u = v"; w_<bits> stands for a family word.
    identity: String,
}

#[derive(Subcommand)]
enum FactorCmd {
    /// Size and factors of M(W) for the words in a file.
    Build {
        wordfile: PathBuf,
        /// Also build the multiplication table when it has at most this many elements.
        #[arg(long)]
        materialize: Option<usize>,
    },
    /// Decide an identity in M(W).
    Check { wordfile: PathBuf, identity: String },
}

#[derive(Subcommand)]
enum FamilyCmd {
    /// Print w_xi, or every member of the family when --xi is absent.
    Gen {
        #[arg(long)]
        n: Option<usize>,
        /// Sign vector as bits, 0 = identity, 1 = swap.
        #[arg(long)]
        xi: Option<String>,
    },
}

#[derive(Args)]
struct RewriteOpts {
    /// Identity set, one identity per line.
    #[arg(long)]
    sigma: PathBuf,
    #[arg(long, default_value_t = Caps::default().depth)]
    depth: usize,
    #[arg(long, default_value_t = Caps::default().max_len)]
    maxlen: usize,
    #[arg(long, default_value_t = Caps::default().max_states)]
    maxstates: usize,
}

impl RewriteOpts {
    fn caps(&self) -> Caps {
        Caps {
            depth: self.depth,
            max_states: self.maxstates,
            max_len: self.maxlen,
        }
    }
}

#[derive(Subcommand)]
enum RewriteCmd {
    /// Every nontrivial one-step consequence of a word.
    Step {
        #[command(flatten)]
        opts: RewriteOpts,
        word: String,
    },
    /// Words reachable from a word within the caps.
    Closure {
        #[command(flatten)]
        opts: RewriteOpts,
        word: String,
    },
    /// Search for a derivation of v from u.
    Derivable {
        #[command(flatten)]
        opts: RewriteOpts,
        u: String,
        v: String,
    },
    /// Reduce an identity holding in M(xzytxy), with a certificate.
    Reduce { identity: String },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// List the partitions of {0, ..., n-1}.
    Eq {
        #[arg(long)]
        n: usize,
    },
    /// Embed a built-in lattice (chain(k), m3, n5, boolean(k)) into Eq(n).
    Embed {
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        n: usize,
    },
    /// Closure classes of Id(pi) for every partition pi of the family.
    Proxy {
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
}

/// A usage-level failure: bad input or a module error.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type Outcome = Result<Report, UsageError>;

fn record(name: &str, status: Status, counts: &[(&str, u64)], witness: Option<String>, start: Instant) -> Record {
    Record {
        name: name.to_owned(),
        status,
        counts: counts.iter().map(|(k, v)| ((*k).to_owned(), *v)).collect(),
        witness,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

fn pass_or_fail(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn configure_threads() -> Result<(), UsageError> {
    if let Ok(v) = std::env::var("WORKBENCH_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| UsageError(format!("WORKBENCH_THREADS={v:?} is not a number")))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).filter(|a| a != "--json").collect();
    let outcome = configure_threads().and_then(|()| run(cli.command, &argv));
    match outcome {
        Ok(report) => {
            let text = if cli.json {
                report.to_json() + "\n"
            } else {
                report.to_text()
            };
            // A closed pipe (e.g. `| head`) is not an error.
            let _ = std::io::stdout().write_all(text.as_bytes());
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run `workbench --help` for usage");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, argv: &[String]) -> Outcome {
    let mut rep = Report::new(argv);
    match command {
        Command::Verify(v) => verify(v, &mut rep)?,
        Command::Monoid(m) => monoid_cmd(m, &mut rep)?,
        Command::Check(c) => check(c, &mut rep)?,
        Command::FactorMonoid(f) => factor_cmd(f, &mut rep)?,
        Command::Family(f) => family_cmd(f, &mut rep)?,
        Command::Rewrite(r) => rewrite_cmd(r, &mut rep)?,
        Command::Lattice(l) => lattice_cmd(l, &mut rep)?,
    }
    Ok(rep)
}

fn verify(v: Verify, rep: &mut Report) -> Result<(), UsageError> {
    match v {
        Verify::All { n, profile, seed, b21 } => {
            rep.param("n", n).param("profile", profile).param("seed", seed);
            let b21 = match b21 {
                Some(path) => {
                    rep.param("b21", path.display().to_string());
                    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
                    Some(serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?)
                }
                None => None,
            };
            let cfg = SuiteConfig { n, profile, seed, b21 };
            for r in suite::run_all(&cfg) {
                rep.record(r);
            }
        }
        Verify::Criterion { which, profile, seed } => {
            let index = match which.parse::<usize>() {
                Ok(i) if (1..=CRITERIA.len()).contains(&i) => i,
                _ => CRITERIA
                    .iter()
                    .position(|c| *c == which)
                    .map(|i| i + 1)
                    .ok_or_else(|| format!("unknown criterion {which:?}; expected 1-11 or one of {}", CRITERIA.join(", ")))?,
            };
            rep.param("criterion", index).param("profile", profile).param("seed", seed);
            let cfg = SuiteConfig {
                profile,
                seed,
                ..Default::default()
            };
            rep.record(suite::run_criterion(index, &cfg));
        }
        Verify::Lemma { name, n, max_instances } => {
            let lemma: Lemma = name.parse()?;
            rep.param("lemma", lemma.name()).param("n", n).param("max_instances", max_instances);
            let start = Instant::now();
            match monitor_lemma(lemma, MonitorParams { n, max_instances }) {
                Ok(r) => {
                    let counts = [
                        ("instances", r.instances as u64),
                        ("steps", r.steps as u64),
                        ("violations", r.violations as u64),
                    ];
                    let witness = (!r.samples.is_empty()).then(|| r.samples.join("; "));
                    rep.record(record(&format!("monitor:{}", lemma.name()), pass_or_fail(r.passed()), &counts, witness, start));
                    rep.result(&r);
                }
                Err(e) => {
                    rep.record(record(&format!("monitor:{}", lemma.name()), Status::Fail, &[], Some(e.to_string()), start));
                }
            }
        }
    }
    Ok(())
}

fn load_monoid(name: Option<&str>, file: Option<&Path>) -> Result<FiniteMonoid, UsageError> {
    match (name, file) {
        (_, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            Ok(FiniteMonoid::from_json(&text)?)
        }
        (Some(name), None) => Ok(monoid::builtin(name)?),
        (None, None) => Err(UsageError("give a monoid name or --file".into())),
    }
}

fn render_assignment(m: &FiniteMonoid, a: &BTreeMap<workbench::word::Variable, usize>) -> String {
    a.iter()
        .map(|(v, &e)| format!("{v} -> {}", m.name(e)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn monoid_cmd(m: MonoidCmd, rep: &mut Report) -> Result<(), UsageError> {
    match m {
        MonoidCmd::Show(src) => {
            let mon = load_monoid(src.name.as_deref(), src.file.as_deref())?;
            rep.param("monoid", src.name.unwrap_or_else(|| "file".into()));
            rep.line(mon.cayley_table().trim_end());
            rep.result(mon.to_file());
        }
        MonoidCmd::Isoterm { source, word, len } => {
            let mon = load_monoid(source.name.as_deref(), source.file.as_deref())?;
            let w = input::word(&word)?;
            let len = len.unwrap_or(w.len() + 2);
            rep.param("monoid", source.name.unwrap_or_else(|| "file".into()))
                .param("word", &w)
                .param("len", len);
            let start = Instant::now();
            let verdict = mon.bounded_isoterm(&w, len)?;
            let (status, witness) = match &verdict {
                IsotermVerdict::IsotermUpTo(l) => {
                    rep.line(format!("{w} is an isoterm up to length {l}"));
                    (Status::Pass, None)
                }
                IsotermVerdict::Counterexample(c) => {
                    rep.line(format!("{w} = {c} holds"));
                    (Status::Fail, Some(format!("{w} = {c}")))
                }
            };
            rep.record(record("isoterm", status, &[], witness, start));
            rep.result(&verdict);
        }
    }
    Ok(())
}

fn check(c: CheckArgs, rep: &mut Report) -> Result<(), UsageError> {
    let id = input::identity(&c.identity)?;
    rep.param("identity", &id);
    if let Some(path) = &c.word_file {
        let words = input::word_list(&input::lines(path)?)?;
        rep.param("words", &words);
        return decide_in_factor_monoid(words, &id, rep);
    }
    if !c.words.is_empty() {
        let words = input::word_list(&c.words)?;
        rep.param("words", &words);
        return decide_in_factor_monoid(words, &id, rep);
    }
    let mon = load_monoid(c.monoid.as_deref(), c.monoid_file.as_deref())
        .map_err(|e| UsageError(format!("{}; use --monoid, --monoid-file, --words or --word-file", e.0)))?;
    rep.param("monoid", c.monoid.unwrap_or_else(|| "file".into()));
    let start = Instant::now();
    match mon.satisfies(&id)? {
        Satisfaction::Holds => {
            rep.line("satisfied");
            rep.record(record("satisfies", Status::Pass, &[], None, start));
            rep.result(json!({ "satisfied": true }));
        }
        Satisfaction::Fails(a) => {
            let w = render_assignment(&mon, &a);
            let (l, r) = (mon.evaluate(&id.lhs, &a)?, mon.evaluate(&id.rhs, &a)?);
            rep.line(format!("violated: {w} gives {} != {}", mon.name(l), mon.name(r)));
            rep.record(record("satisfies", Status::Fail, &[], Some(w.clone()), start));
            rep.result(json!({ "satisfied": false, "witness": w, "lhs": mon.name(l), "rhs": mon.name(r) }));
        }
    }
    Ok(())
}

fn decide_in_factor_monoid(words: Vec<workbench::word::Word>, id: &Identity, rep: &mut Report) -> Result<(), UsageError> {
    let fm = FactorMonoid::new(words)?;
    let start = Instant::now();
    match fm.decide_identity(id) {
        Decision::Holds => {
            rep.line("satisfied");
            rep.record(record("satisfies", Status::Pass, &[], None, start));
            rep.result(json!({ "satisfied": true }));
        }
        Decision::Fails(w) => {
            let (l, r) = (fm.value(&id.lhs, &w), fm.value(&id.rhs, &w));
            rep.line(format!("violated: {w} gives {l} != {r}"));
            rep.record(record("satisfies", Status::Fail, &[], Some(w.to_string()), start));
            rep.result(json!({ "satisfied": false, "witness": w, "lhs": l, "rhs": r }));
        }
    }
    Ok(())
}

fn factor_cmd(f: FactorCmd, rep: &mut Report) -> Result<(), UsageError> {
    match f {
        FactorCmd::Build { wordfile, materialize } => {
            let words = input::word_list(&input::lines(&wordfile)?)?;
            rep.param("words", &words);
            let fm = FactorMonoid::new(words)?;
            rep.line(format!("size {}", fm.size()));
            let mut result = json!({ "size": fm.size(), "factors": fm.factors() });
            if let Some(cap) = materialize {
                let table = fm.materialize(cap)?;
                rep.line(table.cayley_table().trim_end());
                result["table"] = serde_json::to_value(table.to_file())?;
            }
            rep.result(result);
        }
        FactorCmd::Check { wordfile, identity } => {
            let id = input::identity(&identity)?;
            let words = input::word_list(&input::lines(&wordfile)?)?;
            rep.param("identity", &id).param("words", &words);
            decide_in_factor_monoid(words, &id, rep)?;
        }
    }
    Ok(())
}

fn family_cmd(f: FamilyCmd, rep: &mut Report) -> Result<(), UsageError> {
    let FamilyCmd::Gen { n, xi } = f;
    let signs = match (&xi, n) {
        (Some(bits), _) => {
            let s = input::parse_bits(bits)?;
            if n.is_some_and(|n| n != s.n()) {
                return Err(UsageError(format!("--xi {bits} has {} bits but --n is {}", s.n(), n.unwrap_or(0))));
            }
            vec![s]
        }
        (None, Some(n)) => workbench::family::SignVector::all(n).collect(),
        (None, None) => return Err(UsageError("give --n or --xi".into())),
    };
    rep.param("n", signs[0].n());
    if let Some(bits) = &xi {
        rep.param("xi", bits);
    }
    let mut out = Vec::new();
    for s in &signs {
        let w = build_w(s.n(), s)?;
        let bits: String = s.bits().iter().map(|&b| if b { '1' } else { '0' }).collect();
        rep.line(if signs.len() == 1 { w.to_string() } else { format!("w_{bits}: {w}") });
        out.push(json!({ "xi": bits, "word": w, "length": w.len() }));
    }
    rep.result(out);
    Ok(())
}

fn load_sigma(path: &Path) -> Result<IdentitySet, UsageError> {
    let ids = input::lines(path)?
        .iter()
        .map(|l| input::identity(l))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(IdentitySet::new(ids))
}

fn rewrite_cmd(r: RewriteCmd, rep: &mut Report) -> Result<(), UsageError> {
    let start = Instant::now();
    match r {
        RewriteCmd::Step { opts, word } => {
            let sigma = load_sigma(&opts.sigma)?;
            let w = input::word(&word)?;
            rep.param("word", &w).param("maxlen", opts.maxlen);
            let steps = rewrite::direct_deductions(&w, &sigma, opts.maxlen)?;
            for s in &steps {
                rep.line(format!("{} via {} at {:?}", s.to, s.identity_used, s.matched.span));
            }
            rep.record(record("step", Status::Pass, &[("results", steps.len() as u64)], None, start));
            rep.result(&steps);
        }
        RewriteCmd::Closure { opts, word } => {
            let sigma = load_sigma(&opts.sigma)?;
            let w = input::word(&word)?;
            rep.param("word", &w).param("caps", opts.caps());
            match rewrite::closure(&w, &sigma, opts.caps()) {
                Ok(c) => {
                    for u in &c.words {
                        rep.line(u.to_string());
                    }
                    let status = if c.exhausted { Status::Pass } else { Status::NoWithinCaps };
                    let counts = [("words", c.words.len() as u64), ("depth", c.depth as u64)];
                    let witness = (!c.exhausted).then(|| "depth cap reached before the closure was exhausted".to_owned());
                    rep.record(record("closure", status, &counts, witness, start));
                    rep.result(&c);
                }
                Err(RewriteError::CapExceeded { cap, partial }) => {
                    let counts = [("words", partial.words.len() as u64), ("depth", partial.depth as u64)];
                    let witness = Some(format!("more than {cap} words"));
                    rep.record(record("closure", Status::NoWithinCaps, &counts, witness, start));
                    rep.result(&partial);
                }
                Err(e) => return Err(e.into()),
            }
        }
        RewriteCmd::Derivable { opts, u, v } => {
            let sigma = load_sigma(&opts.sigma)?;
            let (u, v) = (input::word(&u)?, input::word(&v)?);
            rep.param("u", &u).param("v", &v).param("caps", opts.caps());
            let d = rewrite::derivable(&u, &v, &sigma, opts.caps())?;
            match &d {
                Derivation::Yes(path) => {
                    rep.line(format!("derivable in {} steps", path.len()));
                    for s in path {
                        rep.line(format!("  {} -> {} via {}", s.from, s.to, s.identity_used));
                    }
                    rep.record(record("derivable", Status::Pass, &[("steps", path.len() as u64)], None, start));
                }
                Derivation::NoWithinCaps { explored, exhausted } => {
                    let note = if *exhausted {
                        "not derivable: the reachable set was exhausted"
                    } else {
                        "no derivation within the caps"
                    };
                    rep.line(note);
                    let counts = [("explored", *explored as u64), ("exhausted", u64::from(*exhausted))];
                    rep.record(record("derivable", Status::NoWithinCaps, &counts, Some(note.into()), start));
                }
            }
            rep.result(&d);
        }
        RewriteCmd::Reduce { identity } => {
            let id = input::identity(&identity)?;
            rep.param("identity", &id);
            match rewrite::reduce_identity(&id) {
                Ok(red) => {
                    rep.line(format!("reduced: {}", red.identity));
                    for s in &red.certificate {
                        rep.line(format!("  {:?} {}: {} -> {}", s.side, s.rule, s.from, s.to));
                    }
                    let ok = red.replays_from(&id) && red.identity.is_reduced();
                    let counts = [("steps", red.certificate.len() as u64)];
                    rep.record(record("reduce", pass_or_fail(ok), &counts, None, start));
                    rep.result(&red);
                }
                Err(e @ RewriteError::NotReducible { .. }) => {
                    rep.line(e.to_string());
                    rep.record(record("reduce", Status::Fail, &[], Some(e.to_string()), start));
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(())
}

fn lattice_cmd(l: LatticeCmd, rep: &mut Report) -> Result<(), UsageError> {
    let start = Instant::now();
    match l {
        LatticeCmd::Eq { n } => {
            rep.param("n", n);
            let parts = all_partitions(n)?;
            for p in &parts {
                rep.line(p.to_string());
            }
            let names: Vec<String> = parts.iter().map(ToString::to_string).collect();
            rep.record(record("partitions", Status::Pass, &[("count", parts.len() as u64)], None, start));
            rep.result(names);
        }
        LatticeCmd::Embed { lattice, n } => {
            rep.param("lattice", &lattice).param("n", n);
            let lat = FiniteLattice::builtin(&lattice)?;
            match embed_lattice(&lat, n)? {
                Some(images) => {
                    for (i, p) in images.iter().enumerate() {
                        rep.line(format!("{i} -> {p}"));
                    }
                    let names: Vec<String> = images.iter().map(ToString::to_string).collect();
                    rep.record(record("embed", Status::Pass, &[("size", lat.size() as u64)], None, start));
                    rep.result(names);
                }
                None => {
                    let msg = format!("{lattice} does not embed into Eq({n})");
                    rep.line(&msg);
                    rep.record(record("embed", Status::Fail, &[("size", lat.size() as u64)], Some(msg), start));
                }
            }
        }
        LatticeCmd::Proxy { n } => {
            rep.param("n", n);
            let r = check_antiisomorphism_proxy(n)?;
            let status = if !r.all_exhausted && r.class_mismatches.is_empty() && r.order_mismatches.is_empty() {
                Status::NoWithinCaps
            } else {
                pass_or_fail(r.passed())
            };
            let counts = [
                ("partitions", r.partitions as u64),
                ("distinct_class_systems", r.distinct_class_systems as u64),
                ("class_mismatches", r.class_mismatches.len() as u64),
                ("order_mismatches", r.order_mismatches.len() as u64),
            ];
            let mut problems: Vec<String> = r.class_mismatches.iter().chain(&r.order_mismatches).take(3).cloned().collect();
            if !r.all_exhausted {
                problems.push("a closure hit its caps".into());
            }
            let witness = (!problems.is_empty()).then(|| problems.join("; "));
            rep.record(record("proxy", status, &counts, witness, start));
            rep.result(&r);
        }
    }
    Ok(())
}
