use proptest::prelude::*;
use workbench::rewrite::{
    closure, derivable, direct_deductions, reduce_identity, xzytxy_monoid, Caps, Derivation, IdentitySet, RewriteError,
};
use workbench::suite::REDUCTION_CORPUS;
use workbench::word::{Identity, Variable, Word};

fn word_over(alphabet: &'static [&'static str], min: usize, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::sample::select(alphabet), min..=max)
        .prop_map(|vs| vs.into_iter().map(Variable::named).collect())
}

fn sigma() -> impl Strategy<Value = Vec<Identity>> {
    prop::collection::vec(
        (word_over(&["x", "y"], 1, 3), word_over(&["x", "y"], 1, 3)),
        1..=2,
    )
    .prop_map(|pairs| pairs.into_iter().map(|(l, r)| Identity::new(l, r)).collect())
}

/// Σ whose identities have the same content on both sides.
fn balanced_sigma() -> impl Strategy<Value = Vec<Identity>> {
    sigma().prop_map(|ids| {
        ids.into_iter()
            .map(|id| {
                let mut all = id.lhs.letters().to_vec();
                all.extend(id.rhs.letters().iter().cloned());
                let rhs: Word = all.iter().rev().cloned().collect();
                Identity::new(Word::from_vars(all), rhs)
            })
            .collect()
    })
}

fn corpus() -> IdentitySet {
    IdentitySet::new(REDUCTION_CORPUS.iter().map(|s| Identity::parse_compact(s).unwrap()).collect())
}

const SMALL: Caps = Caps {
    depth: 4,
    max_states: 2_000,
    max_len: 8,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn steps_replay(ids in sigma(), w in word_over(&["a", "b", "c"], 0, 6)) {
        let set = IdentitySet::symmetric(ids);
        let Ok(steps) = direct_deductions(&w, &set, 10) else { return Ok(()) };
        let mut last: Option<&Word> = None;
        for s in &steps {
            prop_assert!(s.replays());
            prop_assert_eq!(&s.from, &w);
            prop_assert_ne!(&s.to, &w);
            prop_assert!(s.to.len() <= 10);
            prop_assert!(last.is_none_or(|l| l < &s.to), "one step per result, sorted");
            last = Some(&s.to);
        }
    }

    #[test]
    fn closure_is_symmetric(ids in balanced_sigma(), w in word_over(&["a", "b"], 1, 5)) {
        let set = IdentitySet::symmetric(ids);
        let caps = Caps { depth: 64, ..SMALL };
        let from_w = closure(&w, &set, caps).unwrap();
        prop_assert!(from_w.exhausted);
        for u in &from_w.words {
            let back = closure(u, &set, caps).unwrap();
            prop_assert_eq!(&back.words, &from_w.words);
        }
    }

    #[test]
    fn derivations_chain(ids in sigma(), w in word_over(&["a", "b"], 1, 4), pick in any::<prop::sample::Index>()) {
        let set = IdentitySet::symmetric(ids);
        let Ok(reach) = closure(&w, &set, SMALL) else { return Ok(()) };
        let target = reach.words.iter().nth(pick.index(reach.words.len())).unwrap();
        match derivable(&w, target, &set, SMALL).unwrap() {
            Derivation::Yes(path) => {
                prop_assert!(path.len() <= reach.depth);
                let mut cur = &w;
                for s in &path {
                    prop_assert!(s.replays());
                    prop_assert_eq!(&s.from, cur);
                    cur = &s.to;
                }
                prop_assert_eq!(cur, target);
            }
            other => prop_assert!(false, "{target} is reachable but got {other:?}"),
        }
    }

    #[test]
    fn reductions_replay(w in word_over(&["x", "y", "z", "t"], 1, 7), pick in any::<prop::sample::Index>()) {
        let caps = Caps { depth: 2, max_states: 500, max_len: 9 };
        let words = match closure(&w, &corpus(), caps) {
            Ok(c) => c.words,
            Err(RewriteError::CapExceeded { partial, .. }) => partial.words,
            Err(e) => panic!("{e}"),
        };
        let v = words.iter().nth(pick.index(words.len())).unwrap();
        let id = Identity::new(w.clone(), v.clone());
        let m = xzytxy_monoid();
        prop_assert!(m.decide_identity(&id).holds());
        let r = reduce_identity(&id).unwrap();
        prop_assert!(r.identity.is_reduced());
        prop_assert!(r.replays_from(&id));
        for step in &r.certificate {
            prop_assert!(m.decide_identity(&step.instance).holds(), "{}", step.instance);
        }
    }
}

#[test]
fn unbound_right_side_variable_is_rejected() {
    let set = IdentitySet::new(vec![Identity::parse_compact("x=xy").unwrap()]);
    assert!(direct_deductions(&Word::parse_compact("a").unwrap(), &set, 8).is_err());
}
