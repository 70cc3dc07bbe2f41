use std::collections::HashMap;

use proptest::prelude::*;
use workbench::monoid::{self, FiniteMonoid};
use workbench::word::{Identity, Variable, Word};

/// Closes a set of generators under a multiplication, starting from `one`.
/// This is an independent construction path for the built-in monoids.
fn closure<T: Clone + Eq + std::hash::Hash>(
    one: T,
    gens: &[T],
    mul: impl Fn(&T, &T) -> T,
) -> FiniteMonoid {
    let mut elems = vec![one];
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let p = mul(&elems[i], g);
            if !elems.contains(&p) {
                elems.push(p);
            }
        }
        i += 1;
    }
    let index: HashMap<T, usize> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let table = elems
        .iter()
        .map(|a| elems.iter().map(|b| index[&mul(a, b)]).collect())
        .collect();
    let names = (0..elems.len()).map(|i| format!("e{i}")).collect();
    FiniteMonoid::build(table, 0, names).unwrap()
}

type Mat = [i64; 4];

fn matmul(a: &Mat, b: &Mat) -> Mat {
    [
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    ]
}

fn b21_matrices() -> FiniteMonoid {
    closure([1, 0, 0, 1], &[[0, 1, 0, 0], [0, 0, 1, 0]], matmul)
}

fn a21_matrices() -> FiniteMonoid {
    closure([1, 0, 0, 1], &[[0, 1, 0, 0], [0, 0, 1, 1]], matmul)
}

fn dihedral_perms(p: usize) -> FiniteMonoid {
    let id: Vec<usize> = (0..p).collect();
    let rot: Vec<usize> = (0..p).map(|i| (i + 1) % p).collect();
    let refl: Vec<usize> = (0..p).map(|i| (p - i) % p).collect();
    closure(id, &[rot, refl], |a, b| b.iter().map(|&i| a[i]).collect())
}

/// Unit quaternions ±1, ±i, ±j, ±k as (sign, unit) with unit 0..4.
fn quaternion_units() -> FiniteMonoid {
    // unit products: table[u][v] = (sign, unit)
    const T: [[(i8, u8); 4]; 4] = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ];
    closure((1i8, 0u8), &[(1, 1), (1, 2)], |a, b| {
        let (s, u) = T[a.1 as usize][b.1 as usize];
        (a.0 * b.0 * s, u)
    })
}

fn holds(m: &FiniteMonoid, id: &Identity) -> bool {
    m.satisfies(id).unwrap().holds()
}

fn id(s: &str) -> Identity {
    Identity::parse_compact(s).unwrap()
}

fn identity_strategy() -> impl Strategy<Value = Identity> {
    let side = prop::collection::vec(prop::sample::select(&["x", "y", "z"][..]), 0..=6)
        .prop_map(|vs| vs.into_iter().map(Variable::named).collect::<Word>());
    (side.clone(), side).prop_map(|(l, r)| Identity::new(l, r))
}

const EQ_FIVE: [&str; 5] = [
    "xx=xxx",
    "xxy=yxx",
    "xyxzx=xxyz",
    "xzxyty=xzyxty",
    "xzytxy=xzytyx",
];
const EQ_TWO: [&str; 2] = ["xyzxy=yxzyx", "xyzyx=yxzxy"];

#[test]
fn builtins_match_independent_representations() {
    assert_eq!(monoid::b21().size(), b21_matrices().size());
    assert_eq!(monoid::a21().size(), a21_matrices().size());
    assert_eq!(monoid::quaternion().size(), quaternion_units().size());
    for p in [3, 5, 7] {
        assert_eq!(monoid::dihedral(p).unwrap().size(), 2 * p);
        assert_eq!(dihedral_perms(p).size(), 2 * p);
    }
    assert_eq!(
        monoid::b21().idempotents().len(),
        b21_matrices().idempotents().len()
    );
    assert_eq!(
        monoid::a21().idempotents().len(),
        a21_matrices().idempotents().len()
    );
}

#[test]
fn group_identities_against_representations() {
    for p in [3, 5] {
        for s in EQ_TWO {
            assert!(!holds(&monoid::dihedral(p).unwrap(), &id(s)));
            assert!(!holds(&dihedral_perms(p), &id(s)));
        }
    }
    for s in EQ_TWO {
        assert!(holds(&monoid::quaternion(), &id(s)));
        assert!(holds(&quaternion_units(), &id(s)));
    }
}

#[test]
fn direct_product_satisfies_iff_both_factors_do() {
    let pairs = [
        (monoid::b21(), monoid::cyclic(2).unwrap()),
        (monoid::a21(), monoid::trivial()),
        (monoid::quaternion(), monoid::cyclic(3).unwrap()),
    ];
    for (m, n) in &pairs {
        let prod = m.direct_product(n);
        for s in EQ_FIVE.iter().chain(&EQ_TWO) {
            let i = id(s);
            assert_eq!(holds(&prod, &i), holds(m, &i) && holds(n, &i), "{s}");
        }
    }
}

#[test]
fn group_satisfaction_survives_prefix_cancellation() {
    for g in [monoid::dihedral(3).unwrap(), monoid::quaternion()] {
        for s in EQ_TWO {
            let i = id(s);
            // both sides of each identity start with a letter; prepend and cancel
            let pre = Variable::named("w");
            let mut l = Word::from_vars(vec![pre.clone()]);
            let mut r = l.clone();
            l = l.concat(&i.lhs);
            r = r.concat(&i.rhs);
            assert_eq!(holds(&g, &Identity::new(l, r)), holds(&g, &i));
        }
    }
}

fn monoids() -> Vec<FiniteMonoid> {
    vec![
        monoid::b21(),
        monoid::a21(),
        b21_matrices(),
        monoid::dihedral(3).unwrap(),
        monoid::quaternion(),
        monoid::cyclic(4).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn builtin_and_representation_agree(i in identity_strategy()) {
        prop_assert_eq!(holds(&monoid::b21(), &i), holds(&b21_matrices(), &i));
        prop_assert_eq!(holds(&monoid::a21(), &i), holds(&a21_matrices(), &i));
        prop_assert_eq!(holds(&monoid::dihedral(3).unwrap(), &i), holds(&dihedral_perms(3), &i));
        prop_assert_eq!(holds(&monoid::quaternion(), &i), holds(&quaternion_units(), &i));
    }

    #[test]
    fn satisfaction_is_invariant_under_renaming(i in identity_strategy()) {
        let rename = |w: &Word| -> Word {
            w.iter()
                .map(|v| Variable::named(match v.as_str() { "x" => "q", "y" => "x", _ => "y" }))
                .collect()
        };
        let j = Identity::new(rename(&i.lhs), rename(&i.rhs));
        for m in monoids() {
            prop_assert_eq!(holds(&m, &i), holds(&m, &j));
        }
    }

    #[test]
    fn satisfaction_is_transitive(a in identity_strategy(), c in identity_strategy()) {
        let (u, v, w) = (a.lhs, a.rhs, c.lhs);
        for m in monoids() {
            if holds(&m, &Identity::new(u.clone(), v.clone()))
                && holds(&m, &Identity::new(v.clone(), w.clone()))
            {
                prop_assert!(holds(&m, &Identity::new(u.clone(), w.clone())));
            }
        }
    }

    #[test]
    fn evaluation_respects_factorization(
        i in identity_strategy(),
        vals in prop::collection::vec(0usize..6, 3),
    ) {
        let m = monoid::b21();
        let asg = ["x", "y", "z"].iter().zip(&vals).map(|(v, &e)| (Variable::named(v), e)).collect();
        let whole = m.evaluate(&i.lhs.concat(&i.rhs), &asg).unwrap();
        let split = m.mul(m.evaluate(&i.lhs, &asg).unwrap(), m.evaluate(&i.rhs, &asg).unwrap());
        prop_assert_eq!(whole, split);
    }
}
