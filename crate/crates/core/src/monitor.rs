//! Exhaustive monitors for the structural lemmas about the family 𝒲_n and
//! the identities Id(υ) between its members.
//!
//! Each monitor enumerates hypothesis instances by a fixed surgery on the
//! family words (fresh variables inserted at every admissible position,
//! factors replaced, proper factors taken), keeps the instances that satisfy
//! the lemma's side conditions, runs every nontrivial one-step rewrite by
//! Id(υ), and checks the lemma's conclusion on each result.

use std::collections::BTreeSet;
use std::ops::ControlFlow;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::family::{build_family, FamilyError};
use crate::rewrite::{for_each_rewrite, prepare, IdentitySet, Rule};
use crate::word::{Identity, Variable, Word};

pub const DEFAULT_MAX_INSTANCES: usize = 500_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonitorError {
    #[error("unknown lemma {0:?}")]
    UnknownLemma(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("{lemma}: {count} candidate instances exceed the cap of {cap}")]
    GeneratorOverflow { lemma: String, count: usize, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma {
    /// Nontrivial steps on a family word are whole-word replacements by
    /// the identity map.
    Directly,
    /// One-step rewrites of a family word stay in the family.
    FicClass,
    /// Occurrence replacements, factor replacements and proper factors of a
    /// family word admit no nontrivial step.
    ThreeIsoterms,
    UC,
    UCh,
    Adj2x2c2y,
    Adj1x1c1y,
    CorIx1hiy,
    Adj2c1c2,
    Adj1c1c2,
}

impl Lemma {
    pub const ALL: [Lemma; 10] = [
        Lemma::Directly,
        Lemma::FicClass,
        Lemma::ThreeIsoterms,
        Lemma::UC,
        Lemma::UCh,
        Lemma::Adj2x2c2y,
        Lemma::Adj1x1c1y,
        Lemma::CorIx1hiy,
        Lemma::Adj2c1c2,
        Lemma::Adj1c1c2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::Directly => "directly",
            Lemma::FicClass => "fic_class",
            Lemma::ThreeIsoterms => "three_isoterms",
            Lemma::UC => "u_C",
            Lemma::UCh => "u_ch",
            Lemma::Adj2x2c2y => "adj_2x2c2y",
            Lemma::Adj1x1c1y => "adj_1x1c1y",
            Lemma::CorIx1hiy => "cor_ix1hiy",
            Lemma::Adj2c1c2 => "adj_2c1c2",
            Lemma::Adj1c1c2 => "adj_1c1c2",
        }
    }
}

impl FromStr for Lemma {
    type Err = MonitorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Lemma::ALL
            .into_iter()
            .find(|l| l.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| MonitorError::UnknownLemma(s.to_owned()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonitorParams {
    pub n: usize,
    pub max_instances: usize,
}

impl Default for MonitorParams {
    fn default() -> Self {
        MonitorParams {
            n: 2,
            max_instances: DEFAULT_MAX_INSTANCES,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonitorReport {
    pub lemma: String,
    pub n: usize,
    /// Hypothesis instances checked.
    pub instances: usize,
    /// Nontrivial one-step rewrites examined across all instances.
    pub steps: usize,
    pub violations: usize,
    /// Up to five violating instances, rendered.
    pub samples: Vec<String>,
    pub elapsed_ms: u128,
}

impl MonitorReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Id(υ) for 𝒲_n: every identity w_ξ ≈ w_η with ξ ≠ η.
pub fn universal_identities(family: &[Word]) -> IdentitySet {
    let mut ids = Vec::new();
    for a in family {
        for b in family {
            if a != b {
                ids.push(Identity::new(a.clone(), b.clone()));
            }
        }
    }
    IdentitySet::symmetric(ids)
}

/// A hypothesis instance: the word, the index of the family word it came
/// from, and the variables whose deletion must give that family word back.
struct Instance {
    word: Word,
    zeta: usize,
    erase: BTreeSet<Variable>,
}

struct Ctx {
    family: Vec<Word>,
    rules: Vec<Rule>,
}

impl Ctx {
    /// Every nontrivial one-step rewrite of `w`.
    fn rewrites<F>(&self, w: &Word, mut visit: F) -> ControlFlow<()>
    where
        F: FnMut(&Word) -> ControlFlow<()>,
    {
        for rule in &self.rules {
            for_each_rewrite(rule, w, usize::MAX, false, |_, to| {
                if to == *w {
                    ControlFlow::Continue(())
                } else {
                    visit(&to)
                }
            })?;
        }
        ControlFlow::Continue(())
    }
}

fn var(name: &str) -> Variable {
    Variable::named(name)
}

/// Inserts letters at positions of `w` (original coordinates); equal
/// positions keep list order.
fn splice(w: &Word, inserts: &[(usize, Variable)]) -> Word {
    let mut sorted: Vec<&(usize, Variable)> = inserts.iter().collect();
    sorted.sort_by_key(|(p, _)| *p);
    let mut out = Vec::with_capacity(w.len() + inserts.len());
    let mut k = 0;
    for (i, v) in w.iter().enumerate() {
        while k < sorted.len() && sorted[k].0 == i {
            out.push(sorted[k].1.clone());
            k += 1;
        }
        out.push(v.clone());
    }
    out.extend(sorted[k..].iter().map(|(_, v)| v.clone()));
    Word::from_vars(out)
}

/// Position of the `index`-th occurrence of `x` in `w`.
fn pos(w: &Word, x: &Variable, index: usize) -> Option<usize> {
    w.occurrence(x, index).ok().map(|o| o.position)
}

/// Letter positions adjacent to `p`.
fn neighbours(w: &Word, p: usize) -> [Option<&Variable>; 2] {
    [
        p.checked_sub(1).map(|q| &w.letters()[q]),
        w.letters().get(p + 1),
    ]
}

fn adjacent(a: usize, b: usize) -> bool {
    a.abs_diff(b) == 1
}

/// Pairs of adjacent positions in `w` holding the `index`-th occurrences of
/// two multiple variables.
fn adjacent_pairs(w: &Word, index: usize) -> Vec<usize> {
    let counts = w.occurrence_counts();
    let idx = w.occurrence_indices();
    (0..w.len().saturating_sub(1))
        .filter(|&p| {
            idx[p] == index
                && idx[p + 1] == index
                && counts[&w.letters()[p]] > 1
                && counts[&w.letters()[p + 1]] > 1
        })
        .collect()
}

fn check_cap(lemma: Lemma, count: usize, cap: usize) -> Result<(), MonitorError> {
    if count > cap {
        Err(MonitorError::GeneratorOverflow {
            lemma: lemma.name().to_owned(),
            count,
            cap,
        })
    } else {
        Ok(())
    }
}

pub fn monitor_lemma(lemma: Lemma, params: MonitorParams) -> Result<MonitorReport, MonitorError> {
    let start = Instant::now();
    let family = build_family(params.n)?;
    let rules = prepare(&universal_identities(&family)).expect("family identities are balanced");
    let ctx = Ctx { family, rules };
    let (instances, steps, bad) = match lemma {
        Lemma::Directly => run_directly(&ctx),
        Lemma::FicClass => run_fic_class(&ctx),
        Lemma::ThreeIsoterms => {
            let words = three_isoterm_words(&ctx);
            check_cap(lemma, words.len(), params.max_instances)?;
            run_no_rewrite(&ctx, &words)
        }
        _ => {
            let insts = generate(lemma, &ctx);
            check_cap(lemma, insts.len(), params.max_instances)?;
            run_preserves(&ctx, &insts)
        }
    };
    Ok(MonitorReport {
        lemma: lemma.name().to_owned(),
        n: params.n,
        instances,
        steps,
        violations: bad.len(),
        samples: bad.into_iter().take(5).collect(),
        elapsed_ms: start.elapsed().as_millis(),
    })
}

type Outcome = (usize, usize, Vec<String>);

fn run_directly(ctx: &Ctx) -> Outcome {
    let jobs: Vec<(usize, usize)> = (0..ctx.family.len())
        .flat_map(|z| (0..ctx.rules.len()).map(move |k| (z, k)))
        .collect();
    let results: Vec<(usize, Vec<String>)> = jobs
        .par_iter()
        .map(|&(z, k)| {
            let wz = &ctx.family[z];
            let rule = &ctx.rules[k];
            let mut steps = 0;
            let mut bad = Vec::new();
            let _ = for_each_rewrite(rule, wz, usize::MAX, true, |m, to| {
                if to == *wz {
                    return ControlFlow::Continue(());
                }
                steps += 1;
                let lhs = &rule.identity().lhs;
                let whole = m.span() == (0..wz.len());
                let identity_map = lhs
                    .content()
                    .iter()
                    .all(|v| m.image(v) == Some(std::slice::from_ref(v)));
                if !(whole && identity_map && lhs == wz) {
                    bad.push(format!("w[{z}] via {} at {:?}: {}", rule.identity(), m.span(), m.substitution()));
                }
                ControlFlow::Continue(())
            });
            (steps, bad)
        })
        .collect();
    let steps = results.iter().map(|r| r.0).sum();
    (jobs.len(), steps, results.into_iter().flat_map(|r| r.1).collect())
}

fn run_fic_class(ctx: &Ctx) -> Outcome {
    let members: BTreeSet<&Word> = ctx.family.iter().collect();
    let mut steps = 0;
    let mut bad = Vec::new();
    for (z, w) in ctx.family.iter().enumerate() {
        let _ = ctx.rewrites(w, |to| {
            steps += 1;
            if !members.contains(to) {
                bad.push(format!("w[{z}] -> {to}"));
            }
            ControlFlow::Continue(())
        });
    }
    (ctx.family.len(), steps, bad)
}

/// Words from each family word by (i) replacing one occurrence of a multiple
/// variable with a fresh h, (ii) replacing a factor of length > 1 with h,
/// (iii) taking a proper factor.
fn three_isoterm_words(ctx: &Ctx) -> Vec<(usize, Word)> {
    let h = var("h");
    let mut out = BTreeSet::new();
    for (z, w) in ctx.family.iter().enumerate() {
        let l = w.letters();
        let multiple = w.multiple_vars();
        for p in 0..l.len() {
            if multiple.contains(&l[p]) {
                let mut v = l.to_vec();
                v[p] = h.clone();
                out.insert((z, Word::from_vars(v)));
            }
        }
        for i in 0..l.len() {
            for j in i + 2..=l.len() {
                let mut v = l[..i].to_vec();
                v.push(h.clone());
                v.extend_from_slice(&l[j..]);
                out.insert((z, Word::from_vars(v)));
                if (i, j) != (0, l.len()) {
                    out.insert((z, w.factor(i..j)));
                }
            }
            out.insert((z, w.factor(i..i + 1)));
        }
    }
    out.into_iter().collect()
}

fn run_no_rewrite(ctx: &Ctx, words: &[(usize, Word)]) -> Outcome {
    let bad: Vec<String> = words
        .par_iter()
        .filter_map(|(z, w)| {
            let mut found = None;
            let _ = ctx.rewrites(w, |to| {
                found = Some(format!("from w[{z}]: {w} -> {to}"));
                ControlFlow::Break(())
            });
            found
        })
        .collect();
    (words.len(), bad.len(), bad)
}

/// Every nontrivial one-step rewrite v of an instance u must satisfy
/// v with `erase` deleted = the family word.
fn run_preserves(ctx: &Ctx, insts: &[Instance]) -> Outcome {
    let results: Vec<(usize, Option<String>)> = insts
        .par_iter()
        .map(|inst| {
            let target = &ctx.family[inst.zeta];
            let mut steps = 0;
            let mut bad = None;
            let _ = ctx.rewrites(&inst.word, |to| {
                steps += 1;
                if to.delete(&inst.erase) != *target {
                    bad = Some(format!("{} -> {to}", inst.word));
                    return ControlFlow::Break(());
                }
                ControlFlow::Continue(())
            });
            (steps, bad)
        })
        .collect();
    let steps = results.iter().map(|r| r.0).sum();
    (insts.len(), steps, results.into_iter().filter_map(|r| r.1).collect())
}

fn generate(lemma: Lemma, ctx: &Ctx) -> Vec<Instance> {
    let mut out = Vec::new();
    for (z, w) in ctx.family.iter().enumerate() {
        let words: Vec<(Word, BTreeSet<Variable>)> = match lemma {
            Lemma::UC => gen_u_c(w),
            Lemma::UCh => gen_u_ch(w),
            Lemma::Adj2x2c2y => gen_adj_2x2c2y(w),
            Lemma::Adj1x1c1y => gen_adj_1x1c1y(w),
            Lemma::CorIx1hiy => gen_cor_ix1hiy(w),
            Lemma::Adj2c1c2 => gen_adj_2c1c2(w),
            Lemma::Adj1c1c2 => gen_adj_1c1c2(w),
            _ => unreachable!("not an insertion monitor"),
        };
        let mut seen = BTreeSet::new();
        for (word, erase) in words {
            if seen.insert(word.clone()) {
                out.push(Instance { word, zeta: z, erase });
            }
        }
    }
    out
}

/// The family-word landmarks used by the side conditions.
struct Marks {
    a: Variable,
    b: Variable,
    a1: Variable,
    bn: Variable,
}

fn marks(w: &Word) -> Marks {
    let n = w.iter().filter(|v| v.as_str().starts_with('s')).count() - 1;
    Marks {
        a: var("a"),
        b: var("b"),
        a1: var("a1"),
        bn: var(&format!("b{n}")),
    }
}

/// A fresh c occurring twice, anywhere, such that every factor of length
/// > 1 is unique, no simple letter sits between the first a₁ and the first
/// bₙ or between the second b and the second a, and one occurrence of c
/// falls strictly inside one of those two stretches.
fn gen_u_c(w: &Word) -> Vec<(Word, BTreeSet<Variable>)> {
    let c = var("c");
    let mk = marks(w);
    let mut out = Vec::new();
    for p in 0..=w.len() {
        for q in p..=w.len() {
            let u = splice(w, &[(p, c.clone()), (q, c.clone())]);
            if !u.has_unique_long_factors() {
                continue;
            }
            let simple = u.simple_vars();
            let (Some(fa1), Some(fbn), Some(sb), Some(sa)) = (
                pos(&u, &mk.a1, 1),
                pos(&u, &mk.bn, 1),
                pos(&u, &mk.b, 2),
                pos(&u, &mk.a, 2),
            ) else {
                continue;
            };
            let clean = |r: std::ops::Range<usize>| u.letters()[r].iter().all(|v| !simple.contains(v));
            if !clean(fa1..fbn) || !clean(sb..sa) {
                continue;
            }
            let (c1, c2) = (pos(&u, &c, 1).unwrap(), pos(&u, &c, 2).unwrap());
            if (fa1 < c1 && c1 < fbn) || (sb < c2 && c2 < sa) {
                out.push((u, BTreeSet::from([c.clone()])));
            }
        }
    }
    out
}

/// The i-th c between adjacent i-th occurrences of two multiple variables,
/// the other c alone in its block, a fresh simple h anywhere.
fn gen_u_ch(w: &Word) -> Vec<(Word, BTreeSet<Variable>)> {
    let (c, h) = (var("c"), var("h"));
    let erase = BTreeSet::from([c.clone(), h.clone()]);
    let mut out = Vec::new();
    for i in [1, 2] {
        for p in adjacent_pairs(w, i) {
            let others: Vec<usize> = if i == 1 { (p + 1..=w.len()).collect() } else { (0..=p).collect() };
            for q in others {
                for r in 0..=w.len() {
                    for h_first in [true, false] {
                        let mut ins = vec![(p + 1, c.clone())];
                        // h and the lone c at the same spot: try both orders
                        if h_first {
                            ins.insert(0, (r, h.clone()));
                            ins.push((q, c.clone()));
                        } else {
                            ins.push((q, c.clone()));
                            ins.push((r, h.clone()));
                        }
                        let u = splice(w, &ins);
                        if u_ch_holds(&u, &c, i) {
                            out.push((u, erase.clone()));
                        }
                    }
                }
            }
        }
    }
    out
}

fn u_ch_holds(u: &Word, c: &Variable, i: usize) -> bool {
    let j = 3 - i;
    let counts = u.occurrence_counts();
    if counts.get(c) != Some(&2) || !u.is_block_linear() {
        return false;
    }
    let simple = u.simple_vars();
    let idx = u.occurrence_indices();
    let ci = pos(u, c, i).unwrap();
    let cj = pos(u, c, j).unwrap();
    let between = ci > 0
        && ci + 1 < u.len()
        && [ci - 1, ci + 1].iter().all(|&q| {
            let v = &u.letters()[q];
            v != c && counts[v] > 1 && idx[q] == i
        });
    let alone = neighbours(u, cj).iter().all(|nb| nb.is_none_or(|v| simple.contains(v)));
    between && alone
}

/// Second occurrences x c y adjacent, first c anywhere before, subject to
/// one of the three side conditions on x, y and the first c.
fn gen_adj_2x2c2y(w: &Word) -> Vec<(Word, BTreeSet<Variable>)> {
    let c = var("c");
    let mk = marks(w);
    let mut out = Vec::new();
    for p in adjacent_pairs(w, 2) {
        let (x, y) = (w.letters()[p].clone(), w.letters()[p + 1].clone());
        for q in 0..=p {
            let u = splice(w, &[(q, c.clone()), (p + 1, c.clone())]);
            if !u.is_block_linear() {
                continue;
            }
            let blocks = u.block_index_map();
            let c1 = pos(&u, &c, 1).unwrap();
            let x1 = pos(&u, &x, 1).unwrap();
            let y1 = pos(&u, &y, 1).unwrap();
            let ok = if x != mk.b && y != mk.a {
                !adjacent(c1, x1) && !adjacent(c1, y1)
            } else if x == mk.b {
                blocks[c1] != blocks[x1] && !adjacent(c1, y1)
            } else {
                blocks[c1] != blocks[y1] && !adjacent(c1, x1)
            };
            if ok {
                out.push((u, BTreeSet::from([c.clone()])));
            }
        }
    }
    out
}

/// First occurrences x c y adjacent, second c anywhere after and not next
/// to the second x or the second y.
fn gen_adj_1x1c1y(w: &Word) -> Vec<(Word, BTreeSet<Variable>)> {
    let c = var("c");
    let mut out = Vec::new();
    for p in adjacent_pairs(w, 1) {
        let (x, y) = (w.letters()[p].clone(), w.letters()[p + 1].clone());
        for q in p + 1..=w.len() {
            let u = splice(w, &[(p + 1, c.clone()), (q, c.clone())]);
            if !u.is_block_linear() {
                continue;
            }
            let c2 = pos(&u, &c, 2).unwrap();
            let x2 = pos(&u, &x, 2).unwrap();
            let y2 = pos(&u, &y, 2).unwrap();
            if pos(&u, &c, 1).unwrap() == p + 1 && !adjacent(c2, x2) && !adjacent(c2, y2) {
                out.push((u, BTreeSet::from([c.clone()])));
            }
        }
    }
    out
}

/// A fresh simple h between two adjacent multiple letters.
fn gen_cor_ix1hiy(w: &Word) -> Vec<(Word, BTreeSet<Variable>)> {
    let h = var("h");
    let multiple = w.multiple_vars();
    (1..w.len())
        .filter(|&q| multiple.contains(&w.letters()[q - 1]) && multiple.contains(&w.letters()[q]))
        .map(|q| (splice(w, &[(q, h.clone())]), BTreeSet::from([h.clone()])))
        .collect()
}

/// Second occurrences x c₁ c₂ y adjacent, first c₁ in the block of the
/// first y, first c₂ in the block of the first x.
fn gen_adj_2c1c2(w: &Word) -> Vec<(Word, BTreeSet<Variable>)> {
    let (c1, c2) = (var("c1"), var("c2"));
    let erase = BTreeSet::from([c1.clone(), c2.clone()]);
    let blocks = w.blocks();
    let block_span = |p: usize| {
        let b = blocks.iter().find(|s| s.range.contains(&p)).expect("multiple letters lie in blocks");
        b.range.start..=b.range.end
    };
    let mut out = Vec::new();
    for p in adjacent_pairs(w, 2) {
        let (x, y) = (w.letters()[p].clone(), w.letters()[p + 1].clone());
        let (x1, y1) = (pos(w, &x, 1).unwrap(), pos(w, &y, 1).unwrap());
        for q1 in block_span(y1) {
            for q2 in block_span(x1) {
                for c1_first in [true, false] {
                    let mut ins = vec![(p + 1, c1.clone()), (p + 1, c2.clone())];
                    let firsts = if c1_first {
                        [(q1, c1.clone()), (q2, c2.clone())]
                    } else {
                        [(q2, c2.clone()), (q1, c1.clone())]
                    };
                    for f in firsts.into_iter().rev() {
                        ins.insert(0, f);
                    }
                    let u = splice(w, &ins);
                    if adj_2c1c2_holds(&u, &x, &y, &c1, &c2) {
                        out.push((u, erase.clone()));
                    }
                }
            }
        }
    }
    out
}

fn adj_2c1c2_holds(u: &Word, x: &Variable, y: &Variable, c1: &Variable, c2: &Variable) -> bool {
    let idx = u.occurrence_indices();
    let at = |v: &Variable, i: usize| pos(u, v, i);
    let (Some(x2), Some(c12), Some(c22), Some(y2)) = (at(x, 2), at(c1, 2), at(c2, 2), at(y, 2)) else {
        return false;
    };
    if !(c12 == x2 + 1 && c22 == x2 + 2 && y2 == x2 + 3) || idx[c12] != 2 || idx[c22] != 2 {
        return false;
    }
    let blocks = u.block_index_map();
    let same = |a: usize, b: usize| blocks[a].is_some() && blocks[a] == blocks[b];
    same(at(c1, 1).unwrap(), at(y, 1).unwrap()) && same(at(c2, 1).unwrap(), at(x, 1).unwrap())
}

/// First occurrences x c₁ c₂ y adjacent, second c₁ next to the second y,
/// second c₂ next to the second x.
fn gen_adj_1c1c2(w: &Word) -> Vec<(Word, BTreeSet<Variable>)> {
    let (c1, c2) = (var("c1"), var("c2"));
    let erase = BTreeSet::from([c1.clone(), c2.clone()]);
    let mut out = Vec::new();
    for p in adjacent_pairs(w, 1) {
        let (x, y) = (w.letters()[p].clone(), w.letters()[p + 1].clone());
        let (x2, y2) = (pos(w, &x, 2).unwrap(), pos(w, &y, 2).unwrap());
        for q1 in [y2, y2 + 1] {
            for q2 in [x2, x2 + 1] {
                for c1_first in [true, false] {
                    let mut ins = vec![(p + 1, c1.clone()), (p + 1, c2.clone())];
                    if c1_first {
                        ins.extend([(q1, c1.clone()), (q2, c2.clone())]);
                    } else {
                        ins.extend([(q2, c2.clone()), (q1, c1.clone())]);
                    }
                    let u = splice(w, &ins);
                    let at = |v: &Variable, i: usize| pos(&u, v, i).unwrap();
                    let ok = at(&c1, 1) == at(&x, 1) + 1
                        && at(&c2, 1) == at(&x, 1) + 2
                        && at(&y, 1) == at(&x, 1) + 3
                        && adjacent(at(&c1, 2), at(&y, 2))
                        && adjacent(at(&c2, 2), at(&x, 2));
                    if ok {
                        out.push((u, erase.clone()));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for l in Lemma::ALL {
            assert_eq!(l.name().parse::<Lemma>().unwrap(), l);
        }
        assert!("nope".parse::<Lemma>().is_err());
    }

    #[test]
    fn splice_orders_ties() {
        let w = Word::parse_compact("ab").unwrap();
        let u = splice(&w, &[(1, var("c")), (1, var("d")), (2, var("e"))]);
        assert_eq!(u, Word::parse_compact("acdbe").unwrap());
    }

    #[test]
    fn fic_class_monitor() {
        let r = monitor_lemma(Lemma::FicClass, MonitorParams::default()).unwrap();
        assert_eq!(r.instances, 4);
        assert_eq!(r.steps, 12);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn overflow_cap() {
        let params = MonitorParams {
            n: 2,
            max_instances: 10,
        };
        assert!(matches!(
            monitor_lemma(Lemma::CorIx1hiy, params),
            Err(MonitorError::GeneratorOverflow { .. })
        ));
    }
}
