use std::collections::BTreeSet;

use proptest::prelude::*;
use workbench::matcher::{match_factor, match_factor_with, match_whole, Match, MatchOptions, Projection};
use workbench::word::{Substitution, Variable, Word};

fn word_over(alphabet: &'static [&'static str], max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::sample::select(alphabet), 0..=max)
        .prop_map(|vs| vs.into_iter().map(Variable::named).collect())
}

/// Every distinct factor of `t`, including the empty word.
fn factors(t: &Word) -> Vec<Word> {
    let mut out = BTreeSet::new();
    for i in 0..=t.len() {
        for j in i..=t.len() {
            out.insert(t.factor(i..j));
        }
    }
    out.into_iter().collect()
}

/// Naive enumeration: try every assignment of factors to the pattern's
/// variables and record every place its image occurs.
fn brute_force(pattern: &Word, target: &Word) -> BTreeSet<(usize, Substitution)> {
    let vars: Vec<Variable> = pattern.content().into_iter().collect();
    let pool = factors(target);
    let mut out = BTreeSet::new();
    let mut idx = vec![0usize; vars.len()];
    loop {
        let mut phi = Substitution::new();
        for (v, &i) in vars.iter().zip(&idx) {
            phi.insert(v.clone(), pool[i].clone());
        }
        let image = phi.apply(pattern);
        if image.len() <= target.len() {
            for s in 0..=target.len() - image.len() {
                if target.letters()[s..s + image.len()] == *image.letters() {
                    out.insert((s, phi.clone()));
                }
            }
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return out;
            }
            idx[k] += 1;
            if idx[k] < pool.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Cut positions and projected images of a match.
fn projection_of(p: &Word, m: &Match, proj: &Projection) -> (Vec<usize>, Vec<Word>) {
    let cuts = proj
        .cuts
        .iter()
        .map(|&q| m.span.start + m.substitution.apply(&p.factor(0..q)).len())
        .collect();
    let images = proj.vars.iter().map(|v| m.substitution.apply(&Word::from_vars(vec![v.clone()]))).collect();
    (cuts, images)
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn factor_matches_agree_with_naive_enumeration(
        p in word_over(&["x", "y", "z"], 4),
        t in word_over(&["a", "b", "c"], 6),
    ) {
        let got: Vec<(usize, Substitution)> = match_factor(&p, &t)
            .into_iter()
            .map(|m| (m.span.start, m.substitution))
            .collect();
        let set: BTreeSet<_> = got.iter().cloned().collect();
        prop_assert_eq!(set.len(), got.len(), "duplicate matches");
        prop_assert_eq!(set, brute_force(&p, &t));
    }

    #[test]
    fn every_factor_match_reassembles_the_target(
        p in word_over(&["x", "y", "z", "u"], 5),
        t in word_over(&["a", "b"], 8),
    ) {
        for m in match_factor(&p, &t) {
            prop_assert_eq!(m.reassemble(&p), t.clone());
            prop_assert_eq!(m.prefix.len(), m.span.start);
        }
    }

    #[test]
    fn whole_matches_of_linear_patterns_are_weak_compositions(
        k in 1usize..5,
        t in word_over(&["a", "b", "c"], 7),
    ) {
        let p: Word = (0..k).map(|i| Variable::named(&format!("x{i}"))).collect();
        let subs = match_whole(&p, &t);
        let distinct: BTreeSet<_> = subs.iter().cloned().collect();
        prop_assert_eq!(distinct.len(), subs.len());
        let m = t.len() as u64;
        let k = k as u64;
        prop_assert_eq!(subs.len() as u64, binomial(m + k - 1, k - 1));
        for s in &subs {
            prop_assert_eq!(s.apply(&p), t.clone());
        }
    }

    #[test]
    fn projected_matches_visit_each_projection_once(
        p in word_over(&["x", "y", "z", "u"], 5),
        t in word_over(&["a", "b"], 7),
        cut_mask in 0u32..64,
        var_mask in 0u32..16,
        required in prop::sample::subsequence(vec!["x", "y"], 0..=2),
    ) {
        let proj = Projection {
            cuts: (0..=p.len()).filter(|q| cut_mask >> q & 1 == 1).collect(),
            vars: ["x", "y", "z", "u"]
                .iter()
                .enumerate()
                .filter(|(i, _)| var_mask >> i & 1 == 1)
                .map(|(_, v)| Variable::named(v))
                .collect(),
        };
        let base = MatchOptions::requiring(required.into_iter().map(Variable::named));
        let all: BTreeSet<_> = match_factor_with(&p, &t, &base)
            .iter()
            .map(|m| projection_of(&p, m, &proj))
            .collect();
        let got: Vec<_> = match_factor_with(&p, &t, &base.projected(proj.clone()))
            .iter()
            .map(|m| projection_of(&p, m, &proj))
            .collect();
        let distinct: BTreeSet<_> = got.iter().cloned().collect();
        prop_assert_eq!(distinct.len(), got.len(), "projection visited twice");
        prop_assert_eq!(distinct, all);
    }
}
