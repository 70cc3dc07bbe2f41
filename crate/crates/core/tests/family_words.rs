use std::collections::BTreeSet;
use std::ops::ControlFlow;
use std::time::Instant;

use workbench::factor::{minimal_separating_sets, FactorMonoid};
use workbench::family::{self, Permutation, SignVector};
use workbench::matcher::{for_each_match, MatchMode, MatchOptions};
use workbench::word::{var_set, Identity, Variable, Word};

/// Letter sequence of w_ξ written out directly from its displayed product,
/// as an oracle for the constructors.
fn transcribe(n: usize, xi: &[bool]) -> Vec<String> {
    let mut s: Vec<String> = Vec::new();
    for pre in ["z", "zp", "zpp"] {
        let t = pre.replacen('z', "t", 1);
        for i in 1..=n {
            s.push(format!("{pre}{i}"));
            s.push(format!("{t}{i}"));
        }
    }
    for i in 1..=n {
        s.push(format!("a{i}"));
    }
    s.push("a".into());
    for i in 1..=n {
        let (j, k) = if xi[i - 1] { (2, 1) } else { (1, 2) };
        s.push(format!("x{j}_{i}"));
        s.push(format!("x{k}_{i}"));
    }
    s.push("b".into());
    for i in 1..=n {
        s.push(format!("b{i}"));
    }
    for i in 0..=n {
        s.push(format!("s{i}"));
        s.push(format!("y{i}"));
    }
    s.push("t".into());
    s.push("b".into());
    s.push("y0".into());
    for i in 1..=n {
        for name in ["x1_", "z", "a", "zp", "b", "zpp", "x2_", "y"] {
            s.push(format!("{name}{i}"));
        }
    }
    s.push("a".into());
    s
}

#[test]
fn constructors_match_transcription() {
    for n in [2, 3] {
        for xi in SignVector::all(n) {
            let w = family::build_w(n, &xi).unwrap();
            let expected = transcribe(n, xi.bits());
            let got: Vec<String> = w.iter().map(|v| v.as_str().to_string()).collect();
            assert_eq!(got, expected);
        }
    }
}

#[test]
fn letter_counts() {
    for n in [2, 3] {
        for xi in SignVector::all(n) {
            let w = family::build_w(n, &xi).unwrap();
            assert_eq!(w.len(), 20 * n + 8);
            assert_eq!(w.content().len(), 12 * n + 5);
            let simple: BTreeSet<String> = w.simple_vars().iter().map(|v| v.to_string()).collect();
            let mut expected: BTreeSet<String> = BTreeSet::from(["t".to_string()]);
            for i in 1..=n {
                for p in ["t", "tp", "tpp"] {
                    expected.insert(format!("{p}{i}"));
                }
            }
            for i in 0..=n {
                expected.insert(format!("s{i}"));
            }
            assert_eq!(simple.len(), 4 * n + 2);
            assert_eq!(simple, expected);
            let multiple = w.multiple_vars();
            assert_eq!(multiple.len(), 8 * n + 3);
            assert!(multiple.iter().all(|v| w.occ(v) == 2));
        }
    }
}

#[test]
fn family_is_distinct() {
    for n in [2, 3] {
        let fam = family::build_family(n).unwrap();
        assert_eq!(fam.len(), 1 << n);
        let set: BTreeSet<&Word> = fam.iter().collect();
        assert_eq!(set.len(), fam.len());
    }
}

#[test]
fn deleting_differing_pairs_equalizes() {
    let n = 3;
    for xi in SignVector::all(n) {
        for eta in SignVector::all(n) {
            let drop: BTreeSet<Variable> = xi
                .differences(&eta)
                .into_iter()
                .flat_map(|i| [format!("x1_{i}"), format!("x2_{i}")])
                .map(|s| Variable::named(&s))
                .collect();
            let a = family::build_w(n, &xi).unwrap().delete(&drop);
            let b = family::build_w(n, &eta).unwrap().delete(&drop);
            assert_eq!(a, b);
        }
    }
}

#[test]
fn five_letter_projection_is_the_eight_letter_word() {
    let target = Word::parse_compact("xytzsxzy").unwrap();
    for n in [2, 3] {
        for xi in SignVector::all(n) {
            let w = family::build_w(n, &xi).unwrap();
            for i in 1..n {
                let keep = var_set([
                    format!("a{i}").as_str(),
                    format!("a{}", i + 1).as_str(),
                    format!("s{i}").as_str(),
                    "t",
                    format!("y{i}").as_str(),
                ]);
                assert!(w.project(&keep).equal_up_to_renaming(&target));
            }
        }
    }
}

#[test]
fn fixed_identity_lists() {
    let five = family::five_identities();
    assert_eq!(five[0], Identity::parse_compact("xx=xxx").unwrap());
    assert_eq!(five[4], Identity::parse_compact("xzytxy=xzytyx").unwrap());
    assert_eq!(family::two_identities()[1], Identity::parse_compact("xyzyx=yxzxy").unwrap());
}

#[test]
fn c_words_shape() {
    let rho = Permutation::new(vec![3, 1, 4, 2, 5]).unwrap();
    let (c, c2) = family::c_words(2, 2, 1, &rho).unwrap();
    assert_eq!(c.content(), c2.content());
    let diff: Vec<usize> = (0..c.len()).filter(|&i| c.letters()[i] != c2.letters()[i]).collect();
    assert_eq!(diff, vec![4, 5]);
    for v in c.content() {
        let twice = matches!(v.as_str(), "x" | "y") || v.as_str().starts_with('z');
        assert_eq!(c.occ(&v), if twice { 2 } else { 1 }, "{v}");
    }
}

/// Whenever w_ζ = a·φ(w_ξ)·b and a·φ(w_η)·b differs from w_ζ, φ must be the
/// identity on con(w_ξ) with a = b = 1. Only matches with a separating set
/// of nonempty images can give a different word, so those are enumerated.
#[test]
fn nontrivial_deductions_between_family_words_are_identities() {
    let n = 2;
    let fam = family::build_family(n).unwrap();
    let start = Instant::now();
    let mut nontrivial = 0;
    for (i, u) in fam.iter().enumerate() {
        for (j, v) in fam.iter().enumerate() {
            if i == j {
                continue;
            }
            let id = Identity::new(u.clone(), v.clone());
            for set in minimal_separating_sets(&id) {
                let opts = MatchOptions::requiring(set);
                for target in &fam {
                    let _ = for_each_match(u, target, MatchMode::Factor, &opts, |m| {
                        let mm = m.to_match();
                        let other = mm.prefix.concat(&mm.substitution.apply(v)).concat(&mm.suffix);
                        if other != *target {
                            nontrivial += 1;
                            assert!(mm.substitution.is_identity_on(&u.content()));
                            assert!(mm.prefix.is_empty() && mm.suffix.is_empty());
                            assert_eq!(target, u);
                        }
                        ControlFlow::Continue(())
                    });
                }
            }
        }
    }
    assert!(nontrivial > 0);
    eprintln!("family deductions checked in {:?}", start.elapsed());
}

/// Allowing empty images, a simple letter can swallow the entire target,
/// so whole matches between distinct family words do exist; with nonempty
/// images there are none.
#[test]
fn nonempty_whole_matches_between_family_words() {
    let fam = family::build_family(2).unwrap();
    for (i, u) in fam.iter().enumerate() {
        for (j, v) in fam.iter().enumerate() {
            let mut found = Vec::new();
            let _ = for_each_match(u, v, MatchMode::Whole, &MatchOptions::nonempty(), |m| {
                found.push(m.substitution());
                ControlFlow::Continue(())
            });
            if i == j {
                assert_eq!(found.len(), 1);
                assert!(found[0].is_identity_on(&u.content()));
            } else {
                assert!(found.is_empty());
            }
        }
    }
    let mut any = false;
    let _ = for_each_match(&fam[0], &fam[1], MatchMode::Whole, &MatchOptions::default(), |_| {
        any = true;
        ControlFlow::Break(())
    });
    assert!(any);
}

#[test]
fn family_identities_in_factor_monoids() {
    let n = 2;
    let fam = family::build_family(n).unwrap();
    let small = FactorMonoid::new([Word::parse_compact("xytzsxzy").unwrap()]).unwrap();
    let big = FactorMonoid::new(fam.clone()).unwrap();
    let start = Instant::now();
    for (i, u) in fam.iter().enumerate() {
        for (j, v) in fam.iter().enumerate() {
            let id = Identity::new(u.clone(), v.clone());
            assert!(small.decide_identity(&id).holds(), "{i} {j}");
            assert_eq!(big.decide_identity(&id).holds(), i == j);
        }
    }
    eprintln!("family identities decided in {:?}", start.elapsed());
    let phi = family::lemma42_substitution(n).unwrap();
    let image = phi.apply(&Word::parse_compact("xytzsxzy").unwrap());
    assert!(image.is_factor_of(&fam[0]));
}
