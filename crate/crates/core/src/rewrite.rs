//! Birkhoff deduction: one-step direct deductions `a·φ(s)·b → a·φ(t)·b`,
//! bounded closure and derivability search, and the reduction of identities
//! of M(xzytxy) to reduced form with a replayable certificate.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::factor::{minimal_separating_sets, Decision, FactorMonoid};
use crate::family::five_identities;
use crate::matcher::{for_each_match, Match, MatchMode, MatchOptions, Projection};
use crate::word::{Identity, Substitution, Variable, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("identity {identity} cannot be applied left to right: {var} does not occur on the left")]
    UnboundVariable { identity: Identity, var: Variable },
    #[error("state cap of {cap} words exceeded ({} words collected)", partial.words.len())]
    CapExceeded { cap: usize, partial: Closure },
    #[error("identity {identity} is not reducible: {reason}")]
    NotReducible { identity: Identity, reason: String },
    #[error("line {line}: {source}")]
    Parse { line: usize, source: WordError },
}

/// A finite list of identities, optionally closed under symmetry.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct IdentitySet {
    pub identities: Vec<Identity>,
    pub closed_under_symmetry: bool,
}

impl IdentitySet {
    pub fn new(identities: Vec<Identity>) -> Self {
        IdentitySet {
            identities,
            closed_under_symmetry: false,
        }
    }

    /// Adds `v ≈ u` for every `u ≈ v`.
    pub fn symmetric(identities: Vec<Identity>) -> Self {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for id in identities {
            for d in [id.clone(), id.reversed()] {
                if seen.insert(d.clone()) {
                    out.push(d);
                }
            }
        }
        IdentitySet {
            identities: out,
            closed_under_symmetry: true,
        }
    }

    /// One identity per line; blank lines and `#` comments are skipped.
    /// With `compact`, every character is a variable.
    pub fn parse(text: &str, compact: bool) -> Result<Self, RewriteError> {
        let mut ids = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parsed = if compact {
                Identity::parse_compact(line)
            } else {
                Identity::parse(line)
            };
            ids.push(parsed.map_err(|source| RewriteError::Parse { line: i + 1, source })?);
        }
        Ok(IdentitySet::new(ids))
    }

    pub fn len(&self) -> usize {
        self.identities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.identities.is_empty()
    }

    pub fn nontrivial_count(&self) -> usize {
        self.identities.iter().filter(|i| !i.is_trivial()).count()
    }
}

/// `from = prefix·φ(s)·suffix`, `to = prefix·φ(t)·suffix` for the directed
/// identity `identity_used = s ≈ t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeductionStep {
    pub from: Word,
    pub to: Word,
    pub identity_used: Identity,
    #[serde(rename = "match")]
    pub matched: Match,
}

impl DeductionStep {
    /// Rebuilds both ends from the match and compares.
    pub fn replays(&self) -> bool {
        let m = &self.matched;
        m.reassemble(&self.identity_used.lhs) == self.from
            && m.reassemble(&self.identity_used.rhs) == self.to
    }
}

/// A directed identity with its separating sets precomputed.
pub(crate) struct Rule {
    used: Identity,
    sets: Vec<BTreeSet<Variable>>,
    /// Where s and t differ: with s = α s′ β and t = α t′ β, a step's
    /// result depends only on where φ(s′) sits and on the images of the
    /// variables of s′ and t′.
    projection: Projection,
}

impl Rule {
    pub(crate) fn identity(&self) -> &Identity {
        &self.used
    }
}

pub(crate) fn prepare(sigma: &IdentitySet) -> Result<Vec<Rule>, RewriteError> {
    let mut seen = HashSet::new();
    let mut rules = Vec::new();
    for id in &sigma.identities {
        if id.is_trivial() {
            continue;
        }
        for d in [id.clone(), id.reversed()] {
            if !seen.insert(d.clone()) {
                continue;
            }
            let lc = d.lhs.content();
            if let Some(var) = d.rhs.content().into_iter().find(|v| !lc.contains(v)) {
                return Err(RewriteError::UnboundVariable { identity: d, var });
            }
            let sets = minimal_separating_sets(&d);
            let projection = differing_part(&d);
            rules.push(Rule { used: d, sets, projection });
        }
    }
    Ok(rules)
}

fn differing_part(id: &Identity) -> Projection {
    let (s, t) = (id.lhs.letters(), id.rhs.letters());
    let a = s.iter().zip(t).take_while(|(x, y)| x == y).count();
    let b = s[a..]
        .iter()
        .rev()
        .zip(t[a..].iter().rev())
        .take_while(|(x, y)| x == y)
        .count();
    Projection {
        cuts: vec![a, s.len() - b],
        vars: s[a..s.len() - b]
            .iter()
            .chain(&t[a..t.len() - b])
            .cloned()
            .collect(),
    }
}

/// Matches of `rule` in `w` that change the word, each with its result,
/// keeping results within `max_len`.
///
/// With `every_match`, each (span, substitution) is visited once; otherwise
/// one match per distinct result is visited, which avoids enumerating the
/// many ways simple variables outside the rewritten part can split a word.
pub(crate) fn for_each_rewrite<F>(
    rule: &Rule,
    w: &Word,
    max_len: usize,
    every_match: bool,
    mut visit: F,
) -> ControlFlow<()>
where
    F: FnMut(&crate::matcher::MatchView<'_>, Word) -> ControlFlow<()>,
{
    let vars: Vec<Variable> = rule.used.lhs.content().into_iter().collect();
    let mut seen_matches: HashSet<(usize, Vec<usize>)> = HashSet::new();
    let mut seen_results: HashSet<Word> = HashSet::new();
    let (s, t) = (&rule.used.lhs, &rule.used.rhs);
    for set in &rule.sets {
        let mut opts = MatchOptions::requiring(set.iter().cloned());
        if !every_match {
            opts = opts.projected(rule.projection.clone());
        }
        for_each_match(s, w, MatchMode::Factor, &opts, |m| {
            let span = m.span();
            let image_t = m.image_of_word(t);
            if w.len() - span.len() + image_t.len() > max_len {
                return ControlFlow::Continue(());
            }
            if every_match {
                let key = (
                    span.start,
                    vars.iter().map(|v| m.image_len(v).unwrap_or(0)).collect(),
                );
                if !seen_matches.insert(key) {
                    return ControlFlow::Continue(());
                }
            }
            let mut to = w.letters()[..span.start].to_vec();
            to.extend_from_slice(image_t.letters());
            to.extend_from_slice(&w.letters()[span.end..]);
            let to = Word::from_vars(to);
            if !every_match && !seen_results.insert(to.clone()) {
                return ControlFlow::Continue(());
            }
            visit(m, to)
        })?;
    }
    ControlFlow::Continue(())
}

fn successors(w: &Word, rules: &[Rule], max_len: usize) -> BTreeMap<Word, DeductionStep> {
    let mut out = BTreeMap::new();
    for rule in rules {
        let _ = for_each_rewrite(rule, w, max_len, false, |m, to| {
            if to != *w && !out.contains_key(&to) {
                let step = DeductionStep {
                    from: w.clone(),
                    to: to.clone(),
                    identity_used: rule.used.clone(),
                    matched: m.to_match(),
                };
                out.insert(to, step);
            }
            ControlFlow::Continue(())
        });
    }
    out
}

/// All nontrivial one-step consequences of `w` under Σ (both directions of
/// every identity), one step per distinct result, sorted by result.
pub fn direct_deductions(
    w: &Word,
    sigma: &IdentitySet,
    max_len: usize,
) -> Result<Vec<DeductionStep>, RewriteError> {
    let rules = prepare(sigma)?;
    Ok(successors(w, &rules, max_len).into_values().collect())
}

/// Search limits: BFS depth, number of distinct words, word length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Caps {
    pub depth: usize,
    pub max_states: usize,
    pub max_len: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            depth: 8,
            max_states: 100_000,
            max_len: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Closure {
    pub words: BTreeSet<Word>,
    /// No frontier was left: `words` is closed under one-step deduction
    /// within the length cap.
    pub exhausted: bool,
    pub depth: usize,
}

/// Breadth-first closure of `{w}` under direct deduction from Σ.
pub fn closure(w: &Word, sigma: &IdentitySet, caps: Caps) -> Result<Closure, RewriteError> {
    let rules = prepare(sigma)?;
    let mut words = BTreeSet::from([w.clone()]);
    let mut frontier = vec![w.clone()];
    let mut depth = 0;
    while !frontier.is_empty() && depth < caps.depth {
        let next: Vec<BTreeMap<Word, DeductionStep>> = frontier
            .par_iter()
            .map(|u| successors(u, &rules, caps.max_len))
            .collect();
        depth += 1;
        frontier = Vec::new();
        for to in next.into_iter().flat_map(|m| m.into_keys()) {
            if words.insert(to.clone()) {
                frontier.push(to);
                if words.len() > caps.max_states {
                    return Err(RewriteError::CapExceeded {
                        cap: caps.max_states,
                        partial: Closure {
                            words,
                            exhausted: false,
                            depth,
                        },
                    });
                }
            }
        }
    }
    Ok(Closure {
        words,
        exhausted: frontier.is_empty(),
        depth,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Derivation {
    /// A shortest chain of direct deductions from u to v.
    Yes(Vec<DeductionStep>),
    /// Not found. `exhausted` means the whole length-capped component was
    /// explored; it is still no proof beyond the length cap.
    NoWithinCaps { explored: usize, exhausted: bool },
}

pub fn derivable(u: &Word, v: &Word, sigma: &IdentitySet, caps: Caps) -> Result<Derivation, RewriteError> {
    if u == v {
        return Ok(Derivation::Yes(Vec::new()));
    }
    let rules = prepare(sigma)?;
    let mut parent: HashMap<Word, DeductionStep> = HashMap::new();
    let mut frontier = vec![u.clone()];
    let mut explored = 1;
    for _ in 0..caps.depth {
        if frontier.is_empty() {
            break;
        }
        let next: Vec<BTreeMap<Word, DeductionStep>> = frontier
            .par_iter()
            .map(|w| successors(w, &rules, caps.max_len))
            .collect();
        frontier = Vec::new();
        for (to, step) in next.into_iter().flatten() {
            if to == *u || parent.contains_key(&to) {
                continue;
            }
            parent.insert(to.clone(), step);
            explored += 1;
            if to == *v {
                let mut path = Vec::new();
                let mut cur = to;
                while cur != *u {
                    let step = parent.remove(&cur).expect("every reached word has a parent");
                    cur = step.from.clone();
                    path.push(step);
                }
                path.reverse();
                return Ok(Derivation::Yes(path));
            }
            if explored >= caps.max_states {
                return Ok(Derivation::NoWithinCaps {
                    explored,
                    exhausted: false,
                });
            }
            frontier.push(to);
        }
    }
    Ok(Derivation::NoWithinCaps {
        explored,
        exhausted: frontier.is_empty(),
    })
}

// ---------------------------------------------------------------------------
// Reduction of identities of M(xzytxy)

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum StepRule {
    /// `u ≈ b²·u_b` for a variable b occurring more than twice or twice
    /// inside one block.
    SquarePullout { var: Variable },
    /// xzxyty ≈ xzyxty: a second occurrence of x moves right past the
    /// adjacent first occurrence of y.
    OccurrenceSwap { second: Variable, first: Variable },
    /// Two adjacent letters of one island are swapped.
    IslandSwap { left: Variable, right: Variable },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Lhs,
    Rhs,
}

/// `from = prefix·φ(instance.lhs)·suffix`, `to = prefix·φ(instance.rhs)·suffix`;
/// φ fixes variables it does not mention.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateStep {
    pub side: Side,
    pub rule: StepRule,
    pub from: Word,
    pub to: Word,
    pub instance: Identity,
    pub substitution: Substitution,
    pub prefix: Word,
    pub suffix: Word,
}

impl CertificateStep {
    fn whole(side: Side, rule: StepRule, from: Word, to: Word) -> Self {
        CertificateStep {
            side,
            rule,
            instance: Identity::new(from.clone(), to.clone()),
            from,
            to,
            substitution: Substitution::new(),
            prefix: Word::empty(),
            suffix: Word::empty(),
        }
    }

    pub fn replays(&self) -> bool {
        let build = |w: &Word| {
            self.prefix
                .concat(&self.substitution.apply(w))
                .concat(&self.suffix)
        };
        build(&self.instance.lhs) == self.from && build(&self.instance.rhs) == self.to
    }
}

/// A reduced identity with the chain that produced it. Both sides of the
/// input are rewritten into `squares·identity.lhs` and `squares·identity.rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub identity: Identity,
    pub squares: Word,
    pub certificate: Vec<CertificateStep>,
}

impl Reduction {
    /// Replays the certificate from `input`, letter for letter.
    pub fn replays_from(&self, input: &Identity) -> bool {
        let mut cur = [input.lhs.clone(), input.rhs.clone()];
        for step in &self.certificate {
            let i = match step.side {
                Side::Lhs => 0,
                Side::Rhs => 1,
            };
            if !step.replays() || step.from != cur[i] {
                return false;
            }
            cur[i] = step.to.clone();
        }
        cur[0] == self.squares.concat(&self.identity.lhs)
            && cur[1] == self.squares.concat(&self.identity.rhs)
    }
}

/// The ambient monoid M(xzytxy).
pub fn xzytxy_monoid() -> FactorMonoid {
    FactorMonoid::new([Word::parse_compact("xzytxy").expect("fixed word")]).expect("nonempty word")
}

/// Multiple variables that do not occur exactly twice with a simple
/// variable in between.
fn b_vars(w: &Word) -> BTreeSet<Variable> {
    let simple = w.simple_vars();
    let mut out = BTreeSet::new();
    for x in w.multiple_vars() {
        let pos: Vec<usize> = w.iter().enumerate().filter(|(_, v)| **v == x).map(|(i, _)| i).collect();
        let separated = pos.len() == 2 && w.letters()[pos[0] + 1..pos[1]].iter().any(|v| simple.contains(v));
        if !separated {
            out.insert(x);
        }
    }
    out
}

/// Moves every second occurrence right past an adjacent first occurrence,
/// until each block is first occurrences followed by second occurrences.
fn bubble(side: Side, squares: &Word, mut rest: Word, steps: &mut Vec<CertificateStep>) -> Word {
    let pattern = five_identities()[3].clone();
    let [px, py, pz, pt] = ["x", "y", "z", "t"].map(Variable::named);
    loop {
        let counts = rest.occurrence_counts();
        let idx = rest.occurrence_indices();
        let l = rest.letters();
        let Some(i) = (0..l.len().saturating_sub(1)).find(|&i| {
            idx[i] == 2 && idx[i + 1] == 1 && counts[&l[i + 1]] == 2
        }) else {
            return rest;
        };
        let (x, y) = (l[i].clone(), l[i + 1].clone());
        let x1 = l.iter().position(|v| *v == x).expect("x occurs");
        let y2 = l.iter().rposition(|v| *v == y).expect("y occurs");
        let mut phi = Substitution::new();
        phi.insert(px.clone(), Word::from_vars(vec![x.clone()]));
        phi.insert(py.clone(), Word::from_vars(vec![y.clone()]));
        phi.insert(pz.clone(), rest.factor(x1 + 1..i));
        phi.insert(pt.clone(), rest.factor(i + 2..y2));
        let mut swapped = l.to_vec();
        swapped.swap(i, i + 1);
        let next = Word::from_vars(swapped);
        steps.push(CertificateStep {
            side,
            rule: StepRule::OccurrenceSwap {
                second: x,
                first: y,
            },
            from: squares.concat(&rest),
            to: squares.concat(&next),
            instance: pattern.clone(),
            substitution: phi,
            prefix: squares.concat(&rest.factor(0..x1)),
            suffix: rest.factor(y2 + 1..rest.len()),
        });
        rest = next;
    }
}

/// (block index, content) of every island, in order.
fn island_profile(w: &Word) -> Result<Vec<(usize, BTreeSet<Variable>, std::ops::Range<usize>)>, WordError> {
    let blocks = w.block_index_map();
    Ok(w.islands()?
        .into_iter()
        .map(|s| {
            let b = blocks[s.range.start].expect("islands lie in blocks");
            (b, s.word.content(), s.range)
        })
        .collect())
}

/// Rewrites an identity of M(xzytxy) into a reduced identity: variables
/// that occur more than twice, or twice within one block, are pulled out as
/// leading squares (`u ≈ b₁²⋯b_r²·u_ℬ`); adjacent "second, first"
/// occurrence pairs are swapped with xzxyty ≈ xzyxty; islands of the left
/// side are reordered to match the right side.
pub fn reduce_identity(id: &Identity) -> Result<Reduction, RewriteError> {
    let fail = |reason: String| RewriteError::NotReducible {
        identity: id.clone(),
        reason,
    };
    if let Decision::Fails(w) = xzytxy_monoid().decide_identity(id) {
        return Err(fail(format!("fails in M(xzytxy) under {w}")));
    }
    let bu = b_vars(&id.lhs);
    let bv = b_vars(&id.rhs);
    if bu != bv {
        return Err(fail(format!(
            "sides disagree on the variables to pull out: {bu:?} vs {bv:?}"
        )));
    }
    let mut steps = Vec::new();
    let mut squares = Word::empty();
    let mut rests = [id.lhs.clone(), id.rhs.clone()];
    for b in &bu {
        let single = BTreeSet::from([b.clone()]);
        let next_squares = Word::from_vars(vec![b.clone(), b.clone()]).concat(&squares);
        for (side, rest) in [Side::Lhs, Side::Rhs].into_iter().zip(rests.iter_mut()) {
            let from = squares.concat(rest);
            let reduced = rest.delete(&single);
            let to = next_squares.concat(&reduced);
            steps.push(CertificateStep::whole(side, StepRule::SquarePullout { var: b.clone() }, from, to));
            *rest = reduced;
        }
        squares = next_squares;
    }
    let [lhs, rhs] = rests;
    let lhs = bubble(Side::Lhs, &squares, lhs, &mut steps);
    let rhs = bubble(Side::Rhs, &squares, rhs, &mut steps);

    let (pl, pr) = match (island_profile(&lhs), island_profile(&rhs)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return Err(fail(e.to_string())),
    };
    let strip = |p: &[(usize, BTreeSet<Variable>, std::ops::Range<usize>)]| -> Vec<(usize, BTreeSet<Variable>)> {
        p.iter().map(|(b, c, _)| (*b, c.clone())).collect()
    };
    if strip(&pl) != strip(&pr) {
        return Err(fail(format!(
            "island structures differ: {} vs {}",
            lhs, rhs
        )));
    }
    let mut letters = lhs.letters().to_vec();
    for ((_, _, rl), (_, _, rr)) in pl.iter().zip(&pr) {
        let target = &rhs.letters()[rr.clone()];
        // bubble sort the island into the target order
        for k in 0..target.len() {
            let want = &target[k];
            let mut j = rl.start + k + letters[rl.start + k..rl.end]
                .iter()
                .position(|v| v == want)
                .expect("same island content");
            while j > rl.start + k {
                let from = squares.concat(&Word::from_vars(letters.clone()));
                letters.swap(j - 1, j);
                let to = squares.concat(&Word::from_vars(letters.clone()));
                steps.push(CertificateStep::whole(
                    Side::Lhs,
                    StepRule::IslandSwap {
                        left: letters[j].clone(),
                        right: letters[j - 1].clone(),
                    },
                    from,
                    to,
                ));
                j -= 1;
            }
        }
    }
    let out = Identity::new(Word::from_vars(letters), rhs);
    if !out.is_reduced() {
        return Err(fail(format!("result {out} is not reduced")));
    }
    Ok(Reduction {
        identity: out,
        squares,
        certificate: steps,
    })
}

impl fmt::Display for StepRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepRule::SquarePullout { var } => write!(f, "pull out {var}{var}"),
            StepRule::OccurrenceSwap { second, first } => write!(f, "swap {second}₂ {first}₁"),
            StepRule::IslandSwap { left, right } => write!(f, "island swap {left} {right}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::build_family;

    fn w(s: &str) -> Word {
        Word::parse_compact(s).unwrap()
    }

    fn sigma(lines: &[&str]) -> IdentitySet {
        IdentitySet::new(lines.iter().map(|l| Identity::parse_compact(l).unwrap()).collect())
    }

    #[test]
    fn square_to_cube() {
        let steps = direct_deductions(&w("xx"), &sigma(&["xx=xxx"]), 4).unwrap();
        assert!(steps.iter().any(|s| s.to == w("xxx")));
        assert!(steps.iter().all(DeductionStep::replays));
    }

    #[test]
    fn no_nontrivial_step_on_single_letter() {
        assert!(direct_deductions(&w("y"), &sigma(&["xx=xxx"]), 10).unwrap().is_empty());
    }

    #[test]
    fn closure_of_square() {
        let caps = Caps {
            max_len: 5,
            ..Caps::default()
        };
        let c = closure(&w("xx"), &sigma(&["xx=xxx"]), caps).unwrap();
        let expect: BTreeSet<Word> = ["xx", "xxx", "xxxx", "xxxxx"].iter().map(|s| w(s)).collect();
        assert_eq!(c.words, expect);
        assert!(c.exhausted);
    }

    #[test]
    fn empty_sigma_closure() {
        let c = closure(&w("x"), &IdentitySet::default(), Caps::default()).unwrap();
        assert_eq!(c.words.len(), 1);
        assert!(c.exhausted);
    }

    #[test]
    fn cap_exceeded_keeps_partial() {
        let caps = Caps {
            depth: 100,
            max_states: 3,
            max_len: 100,
        };
        match closure(&w("xx"), &sigma(&["xx=xxx"]), caps) {
            Err(RewriteError::CapExceeded { partial, .. }) => assert!(partial.words.len() > 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unbound_rhs_variable() {
        assert!(matches!(
            direct_deductions(&w("x"), &sigma(&["x=xy"]), 4),
            Err(RewriteError::UnboundVariable { .. })
        ));
    }

    #[test]
    fn family_one_step_targets() {
        let fam = build_family(2).unwrap();
        let mut ids = Vec::new();
        for a in &fam {
            for b in &fam {
                if a != b {
                    ids.push(Identity::new(a.clone(), b.clone()));
                }
            }
        }
        let s = IdentitySet::symmetric(ids);
        for (i, wz) in fam.iter().enumerate() {
            let targets: BTreeSet<Word> = direct_deductions(wz, &s, wz.len())
                .unwrap()
                .into_iter()
                .map(|st| st.to)
                .collect();
            let expect: BTreeSet<Word> = fam.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, x)| x.clone()).collect();
            assert_eq!(targets, expect);
        }
    }

    #[test]
    fn derivations() {
        let s = sigma(&["xx=xxx"]);
        assert_eq!(derivable(&w("xy"), &w("xy"), &s, Caps::default()).unwrap(), Derivation::Yes(vec![]));
        match derivable(&w("xxy"), &w("xxxxy"), &s, Caps::default()).unwrap() {
            Derivation::Yes(path) => {
                assert_eq!(path.len(), 2);
                assert!(path.iter().all(DeductionStep::replays));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            derivable(&w("xy"), &w("yx"), &s, Caps::default()).unwrap(),
            Derivation::NoWithinCaps { exhausted: true, .. }
        ));
    }

    #[test]
    fn identity_set_file() {
        let s = IdentitySet::parse("# comment\nx x = x x x\n\n x y = y x # trailing\n", false).unwrap();
        assert_eq!(s.len(), 2);
        assert!(IdentitySet::parse("x = y = z", false).is_err());
    }

    #[test]
    fn reduce_pulls_out_squares() {
        let id = Identity::parse_compact("xxxt=xxxt").unwrap();
        let r = reduce_identity(&id).unwrap();
        assert_eq!(r.squares, w("xx"));
        assert_eq!(r.identity, Identity::parse_compact("t=t").unwrap());
        assert!(r.replays_from(&id));
    }

    #[test]
    fn reduce_trivial() {
        let id = Identity::parse_compact("xzytxy=xzytxy").unwrap();
        let r = reduce_identity(&id).unwrap();
        assert!(r.identity.is_trivial());
        assert!(r.certificate.is_empty());
    }

    #[test]
    fn reduce_rejects_non_identity() {
        let id = Identity::parse_compact("xzytxy=xzytyx").unwrap();
        assert!(matches!(reduce_identity(&id), Err(RewriteError::NotReducible { .. })));
    }

    #[test]
    fn reduce_swaps_and_islands() {
        let id = Identity::parse_compact("xytxy=xytyx").unwrap();
        let r = reduce_identity(&id).unwrap();
        assert!(r.identity.is_reduced());
        assert!(r.identity.is_trivial());
        assert!(r.replays_from(&id));
        let id = Identity::parse_compact("xzxyty=xzyxty").unwrap();
        let r = reduce_identity(&id).unwrap();
        assert!(r.identity.is_trivial());
        assert!(r.replays_from(&id));
    }
}
