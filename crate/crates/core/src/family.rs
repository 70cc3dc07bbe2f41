//! The word family w_ξ (ξ ∈ S₂ⁿ), its building blocks, the c-words and
//! the fixed identity lists used throughout the workbench.
//!
//! Variable naming: `z{i}`, `zp{i}`, `zpp{i}` for z_i, z′_i, z″_i (likewise
//! `t`), `x{j}_{i}` for x_j^{(i)}, plus `s{i}`, `y{i}`, `a{i}`, `b{i}`, `a`,
//! `b`, `t`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::word::{Identity, Substitution, Variable, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("n must be at least 2, got {0}")]
    BadN(usize),
    #[error("sign vector `{0}` must be a string of 0/1")]
    BadSign(String),
    #[error("sign vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("permutation degree {got} does not match n+m+k = {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("not a permutation of 1..{0}")]
    NotAPermutation(usize),
    #[error("parameters n, m, k must be positive")]
    BadParams,
}

/// ξ ∈ S₂ⁿ stored as swap flags; `bits[i-1]` is ξ_i.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SignVector {
    bits: Vec<bool>,
}

impl SignVector {
    pub fn identity(n: usize) -> Self {
        SignVector {
            bits: vec![false; n],
        }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        SignVector { bits }
    }

    /// Bit i-1 of the n-bit binary expansion, most significant first, is ξ_i.
    pub fn from_index(n: usize, index: usize) -> Self {
        SignVector {
            bits: (0..n).map(|i| (index >> (n - 1 - i)) & 1 == 1).collect(),
        }
    }

    pub fn all(n: usize) -> impl Iterator<Item = SignVector> {
        (0..1usize << n).map(move |i| SignVector::from_index(n, i))
    }

    pub fn n(&self) -> usize {
        self.bits.len()
    }

    pub fn is_swap(&self, i: usize) -> bool {
        self.bits[i - 1]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Positions (1-based) where the two vectors differ.
    pub fn differences(&self, other: &SignVector) -> Vec<usize> {
        (1..=self.n().min(other.n()))
            .filter(|&i| self.is_swap(i) != other.is_swap(i))
            .collect()
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for SignVector {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(FamilyError::BadSign(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(SignVector::from_bits)
    }
}

/// A bijection on 1..=d, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, FamilyError> {
        let d = images.len();
        let mut seen = vec![false; d + 1];
        for &i in &images {
            if i == 0 || i > d || seen[i] {
                return Err(FamilyError::NotAPermutation(d));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(d: usize) -> Self {
        Permutation {
            images: (1..=d).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }
}

fn v(name: String) -> Variable {
    Variable::named(&name)
}

fn x(j: usize, i: usize) -> Variable {
    v(format!("x{j}_{i}"))
}

fn check_n(n: usize) -> Result<(), FamilyError> {
    if n < 2 {
        Err(FamilyError::BadN(n))
    } else {
        Ok(())
    }
}

pub fn build_p(n: usize) -> Result<Word, FamilyError> {
    check_n(n)?;
    let mut out = Vec::with_capacity(6 * n);
    for prime in ["", "p", "pp"] {
        for i in 1..=n {
            out.push(v(format!("z{prime}{i}")));
            out.push(v(format!("t{prime}{i}")));
        }
    }
    Ok(Word::from_vars(out))
}

pub fn build_q(n: usize) -> Result<Word, FamilyError> {
    check_n(n)?;
    let mut out = Vec::with_capacity(2 * n + 3);
    for i in 0..=n {
        out.push(v(format!("s{i}")));
        out.push(v(format!("y{i}")));
    }
    out.push(Variable::named("t"));
    Ok(Word::from_vars(out))
}

pub fn build_r(n: usize) -> Result<Word, FamilyError> {
    check_n(n)?;
    let mut out = vec![Variable::named("b"), Variable::named("y0")];
    for i in 1..=n {
        out.extend([
            x(1, i),
            v(format!("z{i}")),
            v(format!("a{i}")),
            v(format!("zp{i}")),
            v(format!("b{i}")),
            v(format!("zpp{i}")),
            x(2, i),
            v(format!("y{i}")),
        ]);
    }
    out.push(Variable::named("a"));
    Ok(Word::from_vars(out))
}

/// The section between 𝐩 and 𝐪: a₁…aₙ a (x-pairs) b b₁…bₙ.
pub fn build_middle(xi: &SignVector) -> Result<Word, FamilyError> {
    let n = xi.n();
    check_n(n)?;
    let mut out: Vec<Variable> = (1..=n).map(|i| v(format!("a{i}"))).collect();
    out.push(Variable::named("a"));
    for i in 1..=n {
        if xi.is_swap(i) {
            out.extend([x(2, i), x(1, i)]);
        } else {
            out.extend([x(1, i), x(2, i)]);
        }
    }
    out.push(Variable::named("b"));
    out.extend((1..=n).map(|i| v(format!("b{i}"))));
    Ok(Word::from_vars(out))
}

pub fn build_w(n: usize, xi: &SignVector) -> Result<Word, FamilyError> {
    check_n(n)?;
    if xi.n() != n {
        return Err(FamilyError::LengthMismatch {
            expected: n,
            got: xi.n(),
        });
    }
    Ok(build_p(n)?
        .concat(&build_middle(xi)?)
        .concat(&build_q(n)?)
        .concat(&build_r(n)?))
}

/// All 2ⁿ words w_ξ, ordered by ξ read as a binary number.
pub fn build_family(n: usize) -> Result<Vec<Word>, FamilyError> {
    check_n(n)?;
    SignVector::all(n).map(|xi| build_w(n, &xi)).collect()
}

fn ids(list: &[&str]) -> Vec<Identity> {
    list.iter()
        .map(|s| Identity::parse_compact(s).expect("fixed identity text"))
        .collect()
}

/// x²≈x³, x²y≈yx², xyxzx≈x²yz, xzxyty≈xzyxty, xzytxy≈xzytyx.
pub fn five_identities() -> Vec<Identity> {
    ids(&[
        "xx=xxx",
        "xxy=yxx",
        "xyxzx=xxyz",
        "xzxyty=xzyxty",
        "xzytxy=xzytyx",
    ])
}

/// xyzxy≈yxzyx and xyzyx≈yxzxy.
pub fn two_identities() -> Vec<Identity> {
    ids(&["xyzxy=yxzyx", "xyzyx=yxzxy"])
}

/// The pair (c_{n,m,k}[ρ], c′_{n,m,k}[ρ]).
pub fn c_words(n: usize, m: usize, k: usize, rho: &Permutation) -> Result<(Word, Word), FamilyError> {
    if n == 0 || m == 0 || k == 0 {
        return Err(FamilyError::BadParams);
    }
    if rho.degree() != n + m + k {
        return Err(FamilyError::DegreeMismatch {
            expected: n + m + k,
            got: rho.degree(),
        });
    }
    let z = |i: usize| v(format!("z{i}"));
    let t = |i: usize| v(format!("t{i}"));
    let [vx, vy, vt] = ["x", "y", "t"].map(Variable::named);
    let build = |first: &Variable, second: &Variable| {
        let mut out = Vec::new();
        for i in 1..=n {
            out.extend([z(i), t(i)]);
        }
        out.extend([first.clone(), second.clone(), vt.clone()]);
        for i in n + 1..=n + m {
            out.extend([z(i), t(i)]);
        }
        out.push(vx.clone());
        out.extend((1..=n + m + k).map(|i| z(rho.apply(i))));
        out.push(vy.clone());
        for i in n + m + 1..=n + m + k {
            out.extend([t(i), z(i)]);
        }
        Word::from_vars(out)
    };
    Ok((build(&vx, &vy), build(&vy, &vx)))
}

/// The substitution sending xytzsxzy onto a factor of w_ε.
pub fn lemma42_substitution(n: usize) -> Result<Substitution, FamilyError> {
    check_n(n)?;
    let mut t_image = vec![x(2, 2)];
    for i in 3..=n {
        t_image.extend([x(1, i), x(2, i)]);
    }
    t_image.push(Variable::named("b"));
    t_image.extend((1..=n).map(|i| v(format!("b{i}"))));
    t_image.extend(["s0", "y0", "s1"].map(Variable::named));

    let mut s_image = Vec::new();
    for i in 2..=n {
        s_image.extend([v(format!("s{i}")), v(format!("y{i}"))]);
    }
    s_image.extend(["t", "b", "y0", "x1_1", "z1", "a1", "zp1", "b1", "zpp1"].map(Variable::named));

    let mut phi = Substitution::new();
    phi.insert(Variable::named("x"), Word::from_vars(vec![x(2, 1)]));
    phi.insert(Variable::named("y"), Word::from_vars(vec![x(1, 2)]));
    phi.insert(Variable::named("z"), Word::from_vars(vec![Variable::named("y1")]));
    phi.insert(Variable::named("t"), Word::from_vars(t_image));
    phi.insert(Variable::named("s"), Word::from_vars(s_image));
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::var_set;

    #[test]
    fn building_blocks() {
        assert_eq!(build_p(2).unwrap().len(), 12);
        assert_eq!(build_q(2).unwrap().to_string(), "s0 y0 s1 y1 s2 y2 t");
        let r = build_r(2).unwrap();
        assert_eq!(r.len(), 19);
        assert_eq!(r.factor(0..3).to_string(), "b y0 x1_1");
        assert!(matches!(build_p(1), Err(FamilyError::BadN(1))));
    }

    #[test]
    fn family_words() {
        let eps = SignVector::identity(2);
        let w = build_w(2, &eps).unwrap();
        assert_eq!(w.len(), 48);
        assert_eq!(
            build_middle(&eps).unwrap().to_string(),
            "a1 a2 a x1_1 x2_1 x1_2 x2_2 b b1 b2"
        );
        assert_eq!(build_family(2).unwrap().len(), 4);
        assert_eq!(build_family(3).unwrap().len(), 8);
        assert_eq!("01".parse::<SignVector>().unwrap(), SignVector::from_index(2, 1));
        assert!(build_w(3, &eps).is_err());
    }

    #[test]
    fn xyt_projections() {
        let x = "x1_1";
        let y = "x2_2";
        for xi in SignVector::all(2) {
            let w = build_w(2, &xi).unwrap();
            let p = w.project(&var_set([x, y, "t"])).to_string();
            assert!(p == format!("{x} {y} t {x} {y}") || p == format!("{x} {y} t {y} {x}"));
        }
    }

    #[test]
    fn c_word_transcription() {
        let (c, c2) = c_words(1, 1, 1, &Permutation::identity(3)).unwrap();
        assert_eq!(c, Word::parse("z1 t1 x y t z2 t2 x z1 z2 z3 y t3 z3").unwrap());
        assert_eq!(c2, Word::parse("z1 t1 y x t z2 t2 x z1 z2 z3 y t3 z3").unwrap());
        assert!(matches!(
            c_words(1, 1, 1, &Permutation::identity(4)),
            Err(FamilyError::DegreeMismatch { .. })
        ));
        assert!(Permutation::new(vec![1, 1, 2]).is_err());
    }

    #[test]
    fn substitution_lands_in_the_identity_word() {
        for n in [2, 3, 4] {
            let phi = lemma42_substitution(n).unwrap();
            assert_eq!(phi.image(&Variable::named("x")).to_string(), "x2_1");
            assert_eq!(phi.image(&Variable::named("z")).to_string(), "y1");
            let image = phi.apply(&Word::parse_compact("xytzsxzy").unwrap());
            assert!(image.is_factor_of(&build_w(n, &SignVector::identity(n)).unwrap()));
        }
    }
}
