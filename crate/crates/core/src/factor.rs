//! The monoid M(W): all factors of the words in W, plus a zero; a product
//! is the concatenation when that is again a factor, and zero otherwise.
//!
//! Identities are decided exactly without materializing the table. Distinct
//! nonzero elements are distinct words, so φ(u) = φ(v) ≠ 0 forces
//! letter-identical images. A failing φ therefore either sends some variable
//! to zero (only possible to fail when the sides have different content),
//! or makes one side a nonzero factor of some w ∈ W. That second case is
//! found by matching the side as a factor of w and comparing the other side
//! verbatim.
//!
//! φ can only separate the sides when the set of variables with nonempty
//! images does not trivialize the identity, so it must contain a minimal
//! non-trivializing set. Minimal sets have at most two elements: a word is
//! determined by its projections onto pairs of letters. Each search requires
//! one such set to be nonempty.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::matcher::{for_each_match, MatchMode, MatchOptions};
use crate::monoid::FiniteMonoid;
use crate::word::{Identity, Substitution, Variable, Word};

pub const DEFAULT_MATERIALIZE_CAP: usize = 20_000;
const ISOTERM_PRUNING_MATCHES: usize = 4_096;
const ISOTERM_CANDIDATE_CAP: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("the word set is empty")]
    NoWords,
    #[error("the word set contains the empty word")]
    EmptyWord,
    #[error("M(W) has {size} elements, above the materialization cap {cap}")]
    TooLarge { size: usize, cap: usize },
}

#[derive(Debug, Clone)]
pub struct FactorMonoid {
    words: Vec<Word>,
}

/// Value of a word under a witness: a factor of W, or zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FactorValue {
    Zero,
    Factor(Word),
}

impl fmt::Display for FactorValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorValue::Zero => f.write_str("0"),
            FactorValue::Factor(w) => write!(f, "{w}"),
        }
    }
}

/// An assignment into M(W): variables in `zeros` go to 0, the others to
/// their images (unmapped ones to 1).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorWitness {
    pub images: Substitution,
    pub zeros: BTreeSet<Variable>,
}

impl fmt::Display for FactorWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .images
            .iter()
            .map(|(v, w)| format!("{v} -> {w}"))
            .collect();
        parts.extend(self.zeros.iter().map(|v| format!("{v} -> 0")));
        f.write_str(&parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Decision {
    Holds,
    Fails(FactorWitness),
}

impl Decision {
    pub fn holds(&self) -> bool {
        matches!(self, Decision::Holds)
    }

    pub fn witness(&self) -> Option<&FactorWitness> {
        match self {
            Decision::Holds => None,
            Decision::Fails(w) => Some(w),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum IsotermResult {
    /// w is a factor of a member of W: the identity substitution separates
    /// w from every other word, at any length.
    Certified,
    IsotermUpTo(usize),
    Counterexample(Word),
    /// The candidate space exceeded the search cap before a verdict.
    Undetermined { explored: usize },
}

impl FactorMonoid {
    pub fn new(words: impl IntoIterator<Item = Word>) -> Result<Self, FactorError> {
        let mut words: Vec<Word> = words.into_iter().collect();
        if words.is_empty() {
            return Err(FactorError::NoWords);
        }
        if words.iter().any(Word::is_empty) {
            return Err(FactorError::EmptyWord);
        }
        words.sort();
        words.dedup();
        Ok(FactorMonoid { words })
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    /// Distinct nonempty factors, shortest first.
    pub fn factors(&self) -> Vec<Word> {
        let mut set = BTreeSet::new();
        for w in &self.words {
            for i in 0..w.len() {
                for j in i + 1..=w.len() {
                    set.insert(w.factor(i..j));
                }
            }
        }
        let mut out: Vec<Word> = set.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Element count: nonempty factors, the identity and the zero.
    pub fn size(&self) -> usize {
        self.factors().len() + 2
    }

    pub fn is_factor(&self, u: &Word) -> bool {
        u.is_empty() || self.words.iter().any(|w| u.is_factor_of(w))
    }

    pub fn value(&self, w: &Word, witness: &FactorWitness) -> FactorValue {
        if w.iter().any(|v| witness.zeros.contains(v)) {
            return FactorValue::Zero;
        }
        let image = witness.images.apply_strict(w);
        if self.is_factor(&image) {
            FactorValue::Factor(image)
        } else {
            FactorValue::Zero
        }
    }

    /// Multiplication table with elements `1`, the factors, then `0`.
    pub fn materialize(&self, cap: usize) -> Result<FiniteMonoid, FactorError> {
        let factors = self.factors();
        let size = factors.len() + 2;
        if size > cap {
            return Err(FactorError::TooLarge { size, cap });
        }
        let zero = size - 1;
        let mut elems = vec![Word::empty()];
        elems.extend(factors);
        let index: HashMap<&Word, usize> = elems.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let table = (0..size)
            .map(|a| {
                (0..size)
                    .map(|b| {
                        if a == zero || b == zero {
                            return zero;
                        }
                        let ab = elems[a].concat(&elems[b]);
                        index.get(&ab).copied().unwrap_or(zero)
                    })
                    .collect()
            })
            .collect();
        let mut names: Vec<String> = elems.iter().map(|w| w.to_string()).collect();
        names.push("0".into());
        Ok(FiniteMonoid::build(table, 0, names).expect("factor monoids are monoids"))
    }

    pub fn decide_identity(&self, id: &Identity) -> Decision {
        let lhs_content = id.lhs.content();
        let rhs_content = id.rhs.content();
        if lhs_content != rhs_content {
            let x = lhs_content
                .symmetric_difference(&rhs_content)
                .next()
                .expect("contents differ")
                .clone();
            return Decision::Fails(FactorWitness {
                images: Substitution::new(),
                zeros: BTreeSet::from([x]),
            });
        }
        let sets = minimal_separating_sets(id);
        if sets.is_empty() {
            return Decision::Holds;
        }
        let tasks: Vec<(&Word, bool, &BTreeSet<Variable>)> = self
            .words
            .iter()
            .flat_map(|w| {
                sets.iter()
                    .flat_map(move |s| [(w, false, s), (w, true, s)])
            })
            .collect();
        let found = tasks.par_iter().find_map_first(|&(w, flip, set)| {
            let (a, b) = if flip {
                (&id.rhs, &id.lhs)
            } else {
                (&id.lhs, &id.rhs)
            };
            separating_match(a, b, w, set)
        });
        match found {
            None => Decision::Holds,
            Some(images) => Decision::Fails(FactorWitness {
                images,
                zeros: BTreeSet::new(),
            }),
        }
    }

    /// Searches for w′ ≠ w over content(w) with |w′| ≤ max_len such that
    /// w ≈ w′ holds. Candidates must agree with w under a sample of
    /// substitutions making w a nonzero factor.
    pub fn is_isoterm(&self, w: &Word, max_len: usize) -> IsotermResult {
        if self.words.iter().any(|m| w.is_factor_of(m)) {
            return IsotermResult::Certified;
        }
        let mut probes: Vec<Vec<Word>> = Vec::new();
        let alphabet: Vec<Variable> = w.content().into_iter().collect();
        for m in &self.words {
            let _ = for_each_match(w, m, MatchMode::Factor, &MatchOptions::default(), |mv| {
                let image = mv.image_of_word(w);
                if !image.is_empty() {
                    probes.push(
                        alphabet
                            .iter()
                            .map(|v| Word::from_vars(mv.image(v).unwrap_or(&[]).to_vec()))
                            .collect(),
                    );
                }
                if probes.len() >= ISOTERM_PRUNING_MATCHES {
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            });
        }
        let targets: Vec<Word> = probes
            .iter()
            .map(|imgs| image_under(w, &alphabet, imgs))
            .collect();
        let mut candidates = Vec::new();
        let mut explored = 0usize;
        let mut prefix = Vec::new();
        let mut offsets = vec![0usize; probes.len()];
        let capped = extend_candidates(
            &alphabet,
            &probes,
            &targets,
            max_len,
            &mut prefix,
            &mut offsets,
            &mut candidates,
            &mut explored,
        )
        .is_break();
        if capped {
            return IsotermResult::Undetermined { explored };
        }
        let content = w.content();
        candidates.retain(|c| c != w);
        candidates.sort_by_key(|c| (c.content() != content, c.len(), c.clone()));
        for c in candidates {
            if self.decide_identity(&Identity::new(w.clone(), c.clone())).holds() {
                return IsotermResult::Counterexample(c);
            }
        }
        IsotermResult::IsotermUpTo(max_len)
    }
}

fn image_under(w: &Word, alphabet: &[Variable], images: &[Word]) -> Word {
    let mut out = Vec::new();
    for v in w.iter() {
        let i = alphabet.binary_search(v).expect("letter of w");
        out.extend(images[i].iter().cloned());
    }
    Word::from_vars(out)
}

/// Depth-first generation of candidate words whose images under every
/// probe stay prefixes of the corresponding image of w.
#[allow(clippy::too_many_arguments)]
fn extend_candidates(
    alphabet: &[Variable],
    probes: &[Vec<Word>],
    targets: &[Word],
    max_len: usize,
    prefix: &mut Vec<Variable>,
    offsets: &mut [usize],
    out: &mut Vec<Word>,
    explored: &mut usize,
) -> ControlFlow<()> {
    *explored += 1;
    if *explored > ISOTERM_CANDIDATE_CAP {
        return ControlFlow::Break(());
    }
    if offsets.iter().zip(targets).all(|(&o, t)| o == t.len()) {
        out.push(Word::from_vars(prefix.clone()));
    }
    if prefix.len() == max_len {
        return ControlFlow::Continue(());
    }
    for (i, v) in alphabet.iter().enumerate() {
        let fits = probes.iter().zip(targets).zip(offsets.iter()).all(|((p, t), &o)| {
            let img = &p[i];
            o + img.len() <= t.len() && t.letters()[o..o + img.len()] == *img.letters()
        });
        if !fits {
            continue;
        }
        let saved = offsets.to_vec();
        for (o, p) in offsets.iter_mut().zip(probes) {
            *o += p[i].len();
        }
        prefix.push(v.clone());
        let flow = extend_candidates(alphabet, probes, targets, max_len, prefix, offsets, out, explored);
        prefix.pop();
        offsets.copy_from_slice(&saved);
        flow?;
    }
    ControlFlow::Continue(())
}

/// Minimal variable sets whose joint nonemptiness is needed for a
/// substitution to separate the two sides (sides assumed equal in content).
pub fn minimal_separating_sets(id: &Identity) -> Vec<BTreeSet<Variable>> {
    let lc = id.lhs.occurrence_counts();
    let rc = id.rhs.occurrence_counts();
    let vars: Vec<Variable> = id.content().into_iter().collect();
    let mut sets = Vec::new();
    let mut unbalanced = BTreeSet::new();
    for v in &vars {
        if lc.get(v) != rc.get(v) {
            unbalanced.insert(v.clone());
            sets.push(BTreeSet::from([v.clone()]));
        }
    }
    let positions = |w: &Word| -> BTreeMap<Variable, Vec<usize>> {
        let mut m: BTreeMap<Variable, Vec<usize>> = BTreeMap::new();
        for (i, v) in w.iter().enumerate() {
            m.entry(v.clone()).or_default().push(i);
        }
        m
    };
    let lp = positions(&id.lhs);
    let rp = positions(&id.rhs);
    for (i, x) in vars.iter().enumerate() {
        if unbalanced.contains(x) {
            continue;
        }
        for y in &vars[i + 1..] {
            if unbalanced.contains(y) {
                continue;
            }
            if merged_pattern(&lp[x], &lp[y]) != merged_pattern(&rp[x], &rp[y]) {
                sets.push(BTreeSet::from([x.clone(), y.clone()]));
            }
        }
    }
    sets
}

/// The projection onto two letters, as a sequence of "is first letter" flags.
fn merged_pattern(a: &[usize], b: &[usize]) -> Vec<bool> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(true);
            i += 1;
        } else {
            out.push(false);
            j += 1;
        }
    }
    out
}

/// A substitution making `a` a factor of `w` with `b` evaluating differently.
fn separating_match(
    a: &Word,
    b: &Word,
    w: &Word,
    required: &BTreeSet<Variable>,
) -> Option<Substitution> {
    let opts = MatchOptions::requiring(required.iter().cloned());
    let mut found = None;
    let _ = for_each_match(a, w, MatchMode::Factor, &opts, |m| {
        let span = m.span();
        let expected = &w.letters()[span];
        let mut pos = 0;
        let mut same = true;
        for v in b.iter() {
            let img = m.image(v).expect("same content");
            if pos + img.len() > expected.len() || expected[pos..pos + img.len()] != *img {
                same = false;
                break;
            }
            pos += img.len();
        }
        if same && pos == expected.len() {
            ControlFlow::Continue(())
        } else {
            found = Some(m.substitution());
            ControlFlow::Break(())
        }
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse_compact(s).unwrap()
    }

    fn fm(ws: &[&str]) -> FactorMonoid {
        FactorMonoid::new(ws.iter().map(|s| w(s))).unwrap()
    }

    #[test]
    fn sizes() {
        assert_eq!(fm(&["xy"]).size(), 5);
        assert_eq!(fm(&["xyx"]).size(), 7);
        assert_eq!(fm(&["xyx"]).materialize(100).unwrap().size(), 7);
        assert!(matches!(
            fm(&["xyzxyz"]).materialize(5),
            Err(FactorError::TooLarge { .. })
        ));
        assert!(FactorMonoid::new(Vec::<Word>::new()).is_err());
    }

    #[test]
    fn commutativity_fails_in_m_xy() {
        let m = fm(&["xy"]);
        let id = Identity::parse_compact("xy=yx").unwrap();
        let d = m.decide_identity(&id);
        let wit = d.witness().expect("fails").clone();
        assert_eq!(wit.images.image(&Variable::named("x")), w("x"));
        assert_eq!(wit.images.image(&Variable::named("y")), w("y"));
        assert_ne!(m.value(&id.lhs, &wit), m.value(&id.rhs, &wit));
    }

    #[test]
    fn content_mismatch_uses_zero() {
        let m = fm(&["xy"]);
        let id = Identity::parse_compact("xx=x").unwrap();
        assert!(!m.decide_identity(&id).holds());
        let id = Identity::parse_compact("xy=x").unwrap();
        let d = m.decide_identity(&id);
        let wit = d.witness().unwrap();
        assert_ne!(m.value(&id.lhs, wit), m.value(&id.rhs, wit));
    }

    #[test]
    fn minimal_sets() {
        let id = Identity::parse_compact("xyx=yxx").unwrap();
        let sets = minimal_separating_sets(&id);
        assert_eq!(sets, vec![BTreeSet::from([Variable::named("x"), Variable::named("y")])]);
        assert!(minimal_separating_sets(&Identity::parse_compact("xy=xy").unwrap()).is_empty());
    }

    #[test]
    fn isoterms() {
        assert_eq!(fm(&["xzytxy"]).is_isoterm(&w("xzytxy"), 8), IsotermResult::Certified);
        assert_eq!(fm(&["x"]).is_isoterm(&w("xy"), 3), IsotermResult::Counterexample(w("yx")));
        assert_eq!(fm(&["xyx"]).is_isoterm(&w("xx"), 4), IsotermResult::Counterexample(w("xxx")));
    }
}
