//! The acceptance checks. Each criterion runs as one [`Record`]; the same
//! code backs the `acceptance` test target and `workbench verify all`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::prelude::*;
use serde::Serialize;

use crate::factor::FactorMonoid;
use crate::family::{build_family, five_identities, two_identities};
use crate::lattice::{
    all_partitions, check_antiisomorphism_proxy, embed_lattice, verify_embedding, FiniteLattice,
};
use crate::matcher::match_factor;
use crate::monitor::{monitor_lemma, Lemma, MonitorParams};
use crate::monoid::{self, FiniteMonoid, IsotermVerdict, MonoidFile};
use crate::rewrite::{reduce_identity, xzytxy_monoid};
use crate::word::{var_set, Identity, Substitution, Variable, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NoWithinCaps,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NoWithinCaps => "no-within-caps",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Record {
    pub name: String,
    pub status: Status,
    pub counts: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Profile {
    /// Family invariants at n = 2 only; monitors other than the cheap ones
    /// are skipped.
    Fast,
    Full,
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fast" => Ok(Profile::Fast),
            "full" => Ok(Profile::Full),
            _ => Err(format!("unknown profile {s:?} (expected fast or full)")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Family parameter for the monitors.
    pub n: usize,
    pub profile: Profile,
    /// Seed of the random instances of the oracle checks.
    pub seed: u64,
    /// Replaces the built-in B21 table (fault injection).
    pub b21: Option<MonoidFile>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n: 2,
            profile: Profile::Fast,
            seed: 0x5eed,
            b21: None,
        }
    }
}

pub const CRITERIA: [&str; 11] = [
    "builtin-monoids",
    "group-identities",
    "b21-isoterms",
    "factor-monoid-decisions",
    "family-steps-are-identity-maps",
    "closure-classes",
    "factor-monoid-oracle",
    "matcher-oracle",
    "family-invariants",
    "reduction-corpus",
    "partition-lattices",
];

/// Identities holding in M(xzytxy), used by the reduction check.
pub const REDUCTION_CORPUS: [&str; 20] = [
    "xx=xxx",
    "xxy=yxx",
    "xyxzx=xxyz",
    "xzxyty=xzyxty",
    "xytxy=xytyx",
    "xyzxy=xyzyx",
    "xxxt=xxxt",
    "txxyy=yytxx",
    "xyztxyz=xyztzyx",
    "xyzwtxyzw=xyzwtwzyx",
    "xystzxyz=xystzyxz",
    "zxyxtyz=zxyxtzy",
    "xyzsxtyz=xyzsxtzy",
    "xyzxy=yxzxy",
    "xytxyzz=yxtyxzz",
    "xytxy=yxtyx",
    "xystxy=yxstyx",
    "xyzsxzy=yxzsxzy",
    "xxyytzz=zzyytxx",
    "xtxxy=xxtxy",
];

/// Monitors cheap enough for the fast profile.
const FAST_MONITORS: [Lemma; 4] = [Lemma::Directly, Lemma::FicClass, Lemma::CorIx1hiy, Lemma::Adj1c1c2];

/// Accumulates sub-check outcomes of one criterion.
#[derive(Default)]
struct Tally {
    counts: BTreeMap<String, u64>,
    failures: Vec<String>,
    inconclusive: Vec<String>,
}

impl Tally {
    fn count(&mut self, key: &str, by: u64) {
        *self.counts.entry(key.to_owned()).or_default() += by;
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.count("checks", 1);
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(mut self, name: &str, start: Instant) -> Record {
        self.count("failures", self.failures.len() as u64);
        let status = if !self.failures.is_empty() {
            Status::Fail
        } else if !self.inconclusive.is_empty() {
            Status::NoWithinCaps
        } else {
            Status::Pass
        };
        let shown: Vec<&String> = self.failures.iter().chain(&self.inconclusive).take(3).collect();
        let witness = (!shown.is_empty()).then(|| {
            let mut s = shown.iter().map(|s| s.as_str()).collect::<Vec<_>>().join("; ");
            let more = self.failures.len() + self.inconclusive.len() - shown.len();
            if more > 0 {
                s.push_str(&format!("; and {more} more"));
            }
            s
        });
        Record {
            name: name.to_owned(),
            status,
            counts: self.counts,
            witness,
            elapsed_ms: start.elapsed().as_millis(),
        }
    }
}

fn word(s: &str) -> Word {
    Word::parse_compact(s).expect("fixed word text")
}

fn identity(s: &str) -> Identity {
    Identity::parse_compact(s).expect("fixed identity text")
}

fn b21(cfg: &SuiteConfig) -> Result<FiniteMonoid, String> {
    match &cfg.b21 {
        None => Ok(monoid::b21()),
        Some(file) => FiniteMonoid::from_file(file.clone()).map_err(|e| format!("B21 table rejected: {e}")),
    }
}

/// Runs criterion `index` (1-based).
pub fn run_criterion(index: usize, cfg: &SuiteConfig) -> Record {
    let start = Instant::now();
    let mut t = Tally::default();
    match index {
        1 => builtin_monoids(cfg, &mut t),
        2 => group_identities(&mut t),
        3 => b21_isoterms(cfg, &mut t),
        4 => factor_monoid_decisions(&mut t),
        5 => family_steps(cfg, &mut t),
        6 => closure_classes(&mut t),
        7 => factor_oracle(cfg, &mut t),
        8 => matcher_oracle(cfg, &mut t),
        9 => family_invariants(cfg, &mut t),
        10 => reduction_corpus(&mut t),
        11 => partition_lattices(&mut t),
        _ => t.expect(false, || format!("no criterion {index}")),
    }
    let name = CRITERIA.get(index.wrapping_sub(1)).copied().unwrap_or("unknown");
    t.finish(name, start)
}

/// Every criterion, then the lemma monitors the profile selects.
pub fn run_all(cfg: &SuiteConfig) -> Vec<Record> {
    let mut out: Vec<Record> = (1..=CRITERIA.len()).map(|i| run_criterion(i, cfg)).collect();
    for lemma in Lemma::ALL {
        if lemma == Lemma::Directly || (cfg.profile == Profile::Fast && !FAST_MONITORS.contains(&lemma)) {
            continue;
        }
        out.push(monitor_record(lemma, cfg.n));
    }
    out
}

pub fn monitor_record(lemma: Lemma, n: usize) -> Record {
    let start = Instant::now();
    let mut t = Tally::default();
    match monitor_lemma(lemma, MonitorParams { n, ..Default::default() }) {
        Ok(r) => {
            t.count("instances", r.instances as u64);
            t.count("steps", r.steps as u64);
            t.count("violations", r.violations as u64);
            t.expect(r.passed(), || r.samples.join("; "));
        }
        Err(e) => t.expect(false, || e.to_string()),
    }
    t.finish(&format!("monitor:{}", lemma.name()), start)
}

fn builtin_monoids(cfg: &SuiteConfig, t: &mut Tally) {
    let b = match b21(cfg) {
        Ok(m) => m,
        Err(e) => return t.expect(false, || e),
    };
    let a = monoid::a21();
    // aba = a, bab = b in both; aa = 0 in both; bb = 0 in B21, bb = b in A21
    for (name, m, bb_is_zero) in [("B21", &b, true), ("A21", &a, false)] {
        t.expect(m.size() == 6, || format!("{name} has {} elements", m.size()));
        let (Some(x), Some(y), Some(z)) = (m.element("a"), m.element("b"), m.zero()) else {
            t.expect(false, || format!("{name} lacks a, b or a zero"));
            continue;
        };
        t.expect(m.mul(m.mul(x, y), x) == x, || format!("{name}: aba != a"));
        t.expect(m.mul(m.mul(y, x), y) == y, || format!("{name}: bab != b"));
        t.expect(m.mul(x, x) == z, || format!("{name}: aa != 0"));
        let bb = if bb_is_zero { z } else { y };
        t.expect(m.mul(y, y) == bb, || format!("{name}: bb != {}", m.name(bb)));
    }
    for p in [3, 5] {
        match monoid::dihedral(p) {
            Ok(d) => {
                t.expect(d.size() == 2 * p, || format!("D{p} has {} elements", d.size()));
                t.expect(!d.is_commutative(), || format!("D{p} is abelian"));
            }
            Err(e) => t.expect(false, || format!("D{p}: {e}")),
        }
    }
    let q = monoid::quaternion();
    t.expect(q.size() == 8, || format!("Q8 has {} elements", q.size()));
}

fn group_identities(t: &mut Tally) {
    let ids = two_identities();
    let q = monoid::quaternion();
    for id in &ids {
        let holds = q.satisfies(id).map(|s| s.holds()).unwrap_or(false);
        t.expect(holds, || format!("Q8 violates {id}"));
    }
    for p in [3, 5] {
        let d = monoid::dihedral(p).expect("p is prime");
        for id in &ids {
            let holds = d.satisfies(id).map(|s| s.holds()).unwrap_or(true);
            t.expect(!holds, || format!("D{p} satisfies {id}"));
        }
        let (a, b) = (d.element("a").expect("generator"), d.element("b").expect("generator"));
        // x ↦ ab, y ↦ b separates the first identity; x ↦ a, y ↦ b the second
        for (x, lhs, rhs) in [(d.mul(a, b), "xyzxy", "yxzyx"), (a, "xyzyx", "yxzxy")] {
            let env = [("x", x), ("y", b), ("z", d.identity())]
                .iter()
                .map(|(v, e)| (Variable::named(v), *e))
                .collect();
            let l = d.evaluate(&word(lhs), &env).expect("total assignment");
            let r = d.evaluate(&word(rhs), &env).expect("total assignment");
            t.expect(l == d.pow(a, 2), || format!("D{p}: {lhs} gives {}", d.name(l)));
            t.expect(r == d.pow(a, p - 2), || format!("D{p}: {rhs} gives {}", d.name(r)));
        }
    }
}

fn b21_isoterms(cfg: &SuiteConfig, t: &mut Tally) {
    let b = match b21(cfg) {
        Ok(m) => m,
        Err(e) => return t.expect(false, || e),
    };
    for w in ["xyzxy", "xyzyx"] {
        let v = b.bounded_isoterm(&word(w), 7);
        t.expect(matches!(v, Ok(IsotermVerdict::IsotermUpTo(7))), || format!("{w}: {v:?}"));
    }
    let v = b.bounded_isoterm(&word("xx"), 3);
    t.expect(v == Ok(IsotermVerdict::Counterexample(word("xxx"))), || format!("xx: {v:?}"));
}

fn factor_monoid_decisions(t: &mut Tally) {
    let family = build_family(2).expect("n = 2 is valid");
    let m = FactorMonoid::new([word("xytzsxzy")]).expect("nonempty word set");
    for a in &family {
        for b in &family {
            let id = Identity::new(a.clone(), b.clone());
            t.expect(m.decide_identity(&id).holds(), || format!("M(xytzsxzy) violates {id}"));
        }
    }
    let m = FactorMonoid::new([word("xyzxy"), word("xyzyx")]).expect("nonempty word set");
    for (i, id) in five_identities().iter().enumerate() {
        let expected = i < 4;
        let got = m.decide_identity(id).holds();
        t.expect(got == expected, || format!("M(xyzxy, xyzyx) on {id}: holds = {got}"));
    }
}

fn family_steps(cfg: &SuiteConfig, t: &mut Tally) {
    match monitor_lemma(Lemma::Directly, MonitorParams { n: cfg.n, ..Default::default() }) {
        Ok(r) => {
            t.count("instances", r.instances as u64);
            t.count("steps", r.steps as u64);
            t.count("violations", r.violations as u64);
            t.expect(r.passed(), || r.samples.join("; "));
        }
        Err(e) => t.expect(false, || e.to_string()),
    }
}

fn closure_classes(t: &mut Tally) {
    match check_antiisomorphism_proxy(2) {
        Ok(r) => {
            t.count("partitions", r.partitions as u64);
            t.count("distinct_class_systems", r.distinct_class_systems as u64);
            t.expect(r.partitions == 15, || format!("{} partitions", r.partitions));
            t.expect(r.class_mismatches.is_empty(), || r.class_mismatches.join("; "));
            t.expect(r.distinct_class_systems == r.partitions, || {
                format!("{} distinct class systems", r.distinct_class_systems)
            });
            t.expect(r.order_mismatches.is_empty(), || r.order_mismatches.join("; "));
            if !r.all_exhausted {
                t.inconclusive.push("a closure hit its caps".into());
            }
        }
        Err(e) => t.expect(false, || e.to_string()),
    }
}

fn random_word(rng: &mut StdRng, alphabet: &[&str], len: usize) -> Word {
    (0..len)
        .map(|_| Variable::named(alphabet[rng.random_range(0..alphabet.len())]))
        .collect()
}

/// Random word sets of total length ≤ 6 and identities in ≤ 3 variables:
/// the decision procedure against the materialized table.
fn factor_oracle(cfg: &SuiteConfig, t: &mut Tally) {
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let letters = ["a", "b", "c"];
    let vars = ["x", "y", "z"];
    for _ in 0..300 {
        let total = rng.random_range(1..=6);
        let first = if rng.random_bool(0.5) { total } else { rng.random_range(1..=total) };
        let mut words = vec![random_word(&mut rng, &letters, first)];
        if first < total {
            words.push(random_word(&mut rng, &letters, total - first));
        }
        let (l, r) = (rng.random_range(0..=5), rng.random_range(0..=5));
        let id = Identity::new(random_word(&mut rng, &vars, l), random_word(&mut rng, &vars, r));
        let fm = FactorMonoid::new(words.clone()).expect("nonempty word set");
        let table = fm.materialize(1000).expect("small word set");
        let brute = table.satisfies(&id).expect("three variables").holds();
        t.count("instances", 1);
        t.expect(fm.decide_identity(&id).holds() == brute, || {
            let ws: Vec<String> = words.iter().map(|w| w.to_string()).collect();
            format!("M({}) on {id}: table says {brute}", ws.join(", "))
        });
    }
}

/// Every factor of `w`, with the empty word.
fn factors(w: &Word) -> BTreeSet<Word> {
    (0..=w.len())
        .flat_map(|i| (i..=w.len()).map(move |j| (i, j)))
        .map(|(i, j)| w.factor(i..j))
        .collect()
}

/// Factor matches by trying every assignment of target factors.
fn naive_matches(pattern: &Word, target: &Word) -> BTreeSet<(usize, Substitution)> {
    let vars: Vec<Variable> = pattern.content().into_iter().collect();
    let pool: Vec<Word> = factors(target).into_iter().collect();
    let mut out = BTreeSet::new();
    let total = pool.len().pow(vars.len() as u32);
    for mut code in 0..total {
        let mut phi = Substitution::new();
        for v in &vars {
            phi.insert(v.clone(), pool[code % pool.len()].clone());
            code /= pool.len();
        }
        let image = phi.apply(pattern);
        for s in 0..=target.len().saturating_sub(image.len()) {
            if image.len() <= target.len() && target.letters()[s..s + image.len()] == *image.letters() {
                out.insert((s, phi.clone()));
            }
        }
    }
    out
}

fn matcher_oracle(cfg: &SuiteConfig, t: &mut Tally) {
    let mut rng = StdRng::seed_from_u64(cfg.seed ^ 0x9e37_79b9);
    for _ in 0..600 {
        let (plen, wlen) = (rng.random_range(0..=4), rng.random_range(0..=6));
        let p = random_word(&mut rng, &["x", "y", "z", "u"], plen);
        let w = random_word(&mut rng, &["a", "b", "c"], wlen);
        let got: Vec<(usize, Substitution)> = match_factor(&p, &w)
            .into_iter()
            .map(|m| (m.span.start, m.substitution))
            .collect();
        let set: BTreeSet<_> = got.iter().cloned().collect();
        t.count("instances", 1);
        t.count("matches", got.len() as u64);
        t.expect(set.len() == got.len(), || format!("{p} in {w}: duplicate matches"));
        t.expect(set == naive_matches(&p, &w), || format!("{p} in {w}: match sets differ"));
    }
}

fn family_invariants(cfg: &SuiteConfig, t: &mut Tally) {
    let ns: &[usize] = match cfg.profile {
        Profile::Fast => &[2],
        Profile::Full => &[2, 3],
    };
    let proj_vars = var_set(["b", "s0", "t", "y0"]);
    let proj_word = Word::parse("b s0 y0 t b y0").expect("fixed word text");
    for &n in ns {
        let family = match build_family(n) {
            Ok(f) => f,
            Err(e) => return t.expect(false, || e.to_string()),
        };
        t.expect(family.len() == 1 << n, || format!("n={n}: {} words", family.len()));
        for (i, w) in family.iter().enumerate() {
            t.count("words", 1);
            let len = 19 * n + 8;
            t.expect(w.len() == len, || format!("n={n}, w[{i}]: length {} (expected {len})", w.len()));
            let alphabet = 12 * n + 5;
            let content = w.content().len();
            t.expect(content == alphabet, || format!("n={n}, w[{i}]: {content} variables (expected {alphabet})"));
            t.expect(w.is_square_free(), || format!("n={n}, w[{i}]: not square-free"));
            t.expect(w.has_unique_long_factors(), || format!("n={n}, w[{i}]: repeated factor"));
            t.expect(w.project(&proj_vars) == proj_word, || {
                format!("n={n}, w[{i}]: projection {}", w.project(&proj_vars))
            });
        }
    }
}

fn reduction_corpus(t: &mut Tally) {
    let m = xzytxy_monoid();
    for text in REDUCTION_CORPUS {
        let id = identity(text);
        t.count("identities", 1);
        t.expect(m.decide_identity(&id).holds(), || format!("{text} fails in M(xzytxy)"));
        let red = match reduce_identity(&id) {
            Ok(r) => r,
            Err(e) => {
                t.expect(false, || format!("{text}: {e}"));
                continue;
            }
        };
        t.count("steps", red.certificate.len() as u64);
        t.expect(red.identity.is_reduced(), || format!("{text}: output {} is not reduced", red.identity));
        t.expect(red.replays_from(&id), || format!("{text}: certificate does not replay"));
        for (k, step) in red.certificate.iter().enumerate() {
            t.expect(step.replays(), || format!("{text}: step {k} does not replay"));
            let sound = m.decide_identity(&step.instance).holds()
                && m.decide_identity(&Identity::new(step.from.clone(), step.to.clone())).holds();
            t.expect(sound, || format!("{text}: step {k} ({}) fails in M(xzytxy)", step.rule));
        }
    }
}

/// Bell numbers by the Bell triangle.
fn bell(n: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![*row.last().expect("nonempty row")];
        for &x in &row {
            next.push(next.last().expect("nonempty row") + x);
        }
        row = next;
    }
    row[0]
}

fn partition_lattices(t: &mut Tally) {
    for n in 1..=6 {
        match all_partitions(n) {
            Ok(ps) => t.expect(ps.len() as u64 == bell(n), || format!("|Eq({n})| = {}", ps.len())),
            Err(e) => t.expect(false, || e.to_string()),
        }
    }
    for n in 1..=5 {
        match FiniteLattice::partitions(n) {
            Ok((_, l)) => t.expect(l.check_axioms().is_ok(), || format!("Eq({n}): {:?}", l.check_axioms())),
            Err(e) => t.expect(false, || e.to_string()),
        }
    }
    let m3 = FiniteLattice::m3();
    match embed_lattice(&m3, 3) {
        Ok(Some(images)) => t.expect(verify_embedding(&m3, &images), || "M3 embedding does not verify".into()),
        other => t.expect(false, || format!("M3 into Eq(3): {other:?}")),
    }
    let n5 = FiniteLattice::n5();
    let mut found = None;
    for n in 1..=5 {
        match embed_lattice(&n5, n) {
            Ok(Some(images)) => {
                found = Some((n, images));
                break;
            }
            Ok(None) => {}
            Err(e) => return t.expect(false, || e.to_string()),
        }
    }
    match found {
        Some((n, images)) => {
            t.count("n5_ground_size", n as u64);
            t.expect(verify_embedding(&n5, &images), || format!("N5 embedding into Eq({n}) does not verify"));
        }
        None => t.expect(false, || "N5 does not embed into Eq(n) for n <= 5".into()),
    }
}
