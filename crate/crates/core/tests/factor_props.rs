use std::collections::{BTreeSet, HashSet};

use proptest::prelude::*;
use workbench::factor::{FactorMonoid, FactorWitness, IsotermResult};
use workbench::family;
use workbench::word::{Identity, Variable, Word};

fn word_over(alphabet: &'static [&'static str], min: usize, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::sample::select(alphabet), min..=max)
        .prop_map(|vs| vs.into_iter().map(Variable::named).collect())
}

fn word_set() -> impl Strategy<Value = Vec<Word>> {
    prop_oneof![
        word_over(&["a", "b", "c"], 1, 6).prop_map(|w| vec![w]),
        (word_over(&["a", "b", "c"], 1, 3), word_over(&["a", "b", "c"], 1, 3))
            .prop_map(|(u, v)| vec![u, v]),
    ]
}

fn identity() -> impl Strategy<Value = Identity> {
    (word_over(&["x", "y", "z"], 0, 5), word_over(&["x", "y", "z"], 0, 5))
        .prop_map(|(l, r)| Identity::new(l, r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn decision_agrees_with_table_evaluation(ws in word_set(), id in identity()) {
        let fm = FactorMonoid::new(ws).unwrap();
        let table = fm.materialize(1000).unwrap();
        let brute = table.satisfies(&id).unwrap().holds();
        let decided = fm.decide_identity(&id);
        prop_assert_eq!(decided.holds(), brute, "{}", id);
        if let Some(w) = decided.witness() {
            prop_assert_ne!(fm.value(&id.lhs, w), fm.value(&id.rhs, w));
        }
    }

    #[test]
    fn trivial_identities_hold(ws in word_set(), u in word_over(&["x", "y", "z"], 0, 6)) {
        let fm = FactorMonoid::new(ws).unwrap();
        prop_assert!(fm.decide_identity(&Identity::new(u.clone(), u)).holds());
    }

    #[test]
    fn zero_in_both_sides_gives_equal_values(
        ws in word_set(),
        id in identity(),
        imgs in prop::collection::vec(word_over(&["a", "b", "c"], 0, 2), 3),
    ) {
        let fm = FactorMonoid::new(ws).unwrap();
        let shared: Vec<Variable> = id.lhs.content().intersection(&id.rhs.content()).cloned().collect();
        prop_assume!(!shared.is_empty());
        let mut images = workbench::word::Substitution::new();
        for (v, img) in ["x", "y", "z"].iter().zip(imgs) {
            images.insert(Variable::named(v), img);
        }
        let witness = FactorWitness { images, zeros: BTreeSet::from([shared[0].clone()]) };
        prop_assert_eq!(fm.value(&id.lhs, &witness), fm.value(&id.rhs, &witness));
    }

    #[test]
    fn witnesses_transfer_to_larger_word_sets(
        ws in word_set(),
        extra in word_over(&["a", "b", "c"], 1, 4),
        id in identity(),
    ) {
        let fm = FactorMonoid::new(ws.clone()).unwrap();
        if let Some(w) = fm.decide_identity(&id).witness() {
            let mut bigger = ws;
            bigger.push(extra);
            let big = FactorMonoid::new(bigger).unwrap();
            prop_assert_ne!(big.value(&id.lhs, w), big.value(&id.rhs, w));
            prop_assert!(!big.decide_identity(&id).holds());
        }
    }
}

#[test]
fn family_monoid_size() {
    let fam = family::build_family(2).unwrap();
    let mut factors: HashSet<Vec<String>> = HashSet::new();
    for w in &fam {
        let letters: Vec<String> = w.iter().map(|v| v.to_string()).collect();
        for i in 0..letters.len() {
            for j in i + 1..=letters.len() {
                factors.insert(letters[i..j].to_vec());
            }
        }
    }
    let fm = FactorMonoid::new(fam).unwrap();
    assert_eq!(fm.size(), factors.len() + 2);
}

#[test]
fn four_identities_hold_in_m_xyzxy_xyzyx() {
    let fm = FactorMonoid::new(["xyzxy", "xyzyx"].map(|s| Word::parse_compact(s).unwrap())).unwrap();
    let five = family::five_identities();
    for id in &five[..4] {
        assert!(fm.decide_identity(id).holds(), "{id}");
    }
    assert!(!fm.decide_identity(&five[4]).holds());
    for id in family::two_identities() {
        assert!(!fm.decide_identity(&id).holds());
    }
}

#[test]
fn member_is_isoterm_by_exhaustive_search() {
    let w = Word::parse_compact("xzytxy").unwrap();
    let fm = FactorMonoid::new([w.clone()]).unwrap();
    assert_eq!(fm.is_isoterm(&w, 8), IsotermResult::Certified);
    // cross-check the certificate: no other word over {x,y,z,t} up to length 7
    let alphabet = ["x", "y", "z", "t"].map(Variable::named);
    let mut layer = vec![Word::empty()];
    for _ in 0..7 {
        let mut next = Vec::new();
        for u in &layer {
            for v in &alphabet {
                let mut u = u.clone();
                u.push(v.clone());
                if u != w {
                    assert!(!fm.decide_identity(&Identity::new(w.clone(), u.clone())).holds(), "{u}");
                }
                next.push(u);
            }
        }
        layer = next;
    }
}

#[test]
fn xy_is_not_an_isoterm_for_m_x() {
    let fm = FactorMonoid::new([Word::parse_compact("x").unwrap()]).unwrap();
    let xy = Word::parse_compact("xy").unwrap();
    assert!(matches!(fm.is_isoterm(&xy, 4), IsotermResult::Counterexample(_)));
    assert!(fm.decide_identity(&Identity::parse_compact("xy=yx").unwrap()).holds());
}
