//! Partitions of a finite set ordered by refinement, small test lattices, a
//! backtracking embedder of lattices into partition lattices, and the
//! word-level check that distinct partitions of 𝒲₂ give distinct deductive
//! class systems.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::family::{build_family, FamilyError};
use crate::rewrite::{closure, Caps, IdentitySet, RewriteError};
use crate::word::{Identity, Word};

pub const MAX_GROUND: usize = 8;
pub const MAX_EMBED_LATTICE: usize = 8;
pub const MAX_EMBED_GROUND: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("ground set of size {n} exceeds the limit {max}")]
    TooLarge { n: usize, max: usize },
    #[error("partitions over {0} and {1} points")]
    SizeMismatch(usize, usize),
    #[error("not a lattice: {0}")]
    NotALattice(String),
    #[error("unknown lattice {0:?}")]
    Unknown(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

/// An equivalence relation on {0, …, n-1} as a restricted growth string:
/// block ids in first-occurrence order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Partition {
    block_id: Vec<usize>,
}

impl Partition {
    /// Canonicalizes arbitrary labels.
    pub fn from_labels<T: Ord + Clone>(labels: &[T]) -> Self {
        let mut seen: BTreeMap<T, usize> = BTreeMap::new();
        let block_id = labels
            .iter()
            .map(|l| {
                let next = seen.len();
                *seen.entry(l.clone()).or_insert(next)
            })
            .collect();
        Partition { block_id }
    }

    /// From a list of blocks; points not listed become singletons.
    pub fn from_blocks(n: usize, blocks: &[&[usize]]) -> Self {
        let mut labels: Vec<usize> = (0..n).map(|i| n + i).collect();
        for (b, block) in blocks.iter().enumerate() {
            for &i in *block {
                labels[i] = b;
            }
        }
        Self::from_labels(&labels)
    }

    /// The equality relation ε.
    pub fn discrete(n: usize) -> Self {
        Partition {
            block_id: (0..n).collect(),
        }
    }

    /// The universal relation υ.
    pub fn universal(n: usize) -> Self {
        Partition { block_id: vec![0; n] }
    }

    pub fn ground_size(&self) -> usize {
        self.block_id.len()
    }

    pub fn block_ids(&self) -> &[usize] {
        &self.block_id
    }

    pub fn num_blocks(&self) -> usize {
        self.block_id.iter().max().map_or(0, |m| m + 1)
    }

    pub fn related(&self, i: usize, j: usize) -> bool {
        self.block_id[i] == self.block_id[j]
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (i, &b) in self.block_id.iter().enumerate() {
            out[b].push(i);
        }
        out
    }

    /// The class of `i`.
    pub fn class_of(&self, i: usize) -> Vec<usize> {
        (0..self.ground_size()).filter(|&j| self.related(i, j)).collect()
    }

    /// Refinement order: every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        let n = self.ground_size();
        n == other.ground_size()
            && (0..n).all(|i| (0..n).all(|j| !self.related(i, j) || other.related(i, j)))
    }

    pub fn meet(&self, other: &Partition) -> Result<Partition, LatticeError> {
        self.same_size(other)?;
        let pairs: Vec<(usize, usize)> = self.block_id.iter().copied().zip(other.block_id.iter().copied()).collect();
        Ok(Partition::from_labels(&pairs))
    }

    pub fn join(&self, other: &Partition) -> Result<Partition, LatticeError> {
        self.same_size(other)?;
        let n = self.ground_size();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for part in [self, other] {
            let mut first: BTreeMap<usize, usize> = BTreeMap::new();
            for (i, &b) in part.block_id.iter().enumerate() {
                let r = *first.entry(b).or_insert(i);
                let (a, c) = (find(&mut parent, r), find(&mut parent, i));
                parent[a] = c;
            }
        }
        let labels: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
        Ok(Partition::from_labels(&labels))
    }

    fn same_size(&self, other: &Partition) -> Result<(), LatticeError> {
        if self.ground_size() == other.ground_size() {
            Ok(())
        } else {
            Err(LatticeError::SizeMismatch(self.ground_size(), other.ground_size()))
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let classes: Vec<String> = self
            .classes()
            .iter()
            .map(|c| c.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "{{{}}}", classes.join(" | "))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Every partition of an n-set, in lexicographic order of the restricted
/// growth strings.
pub fn all_partitions(n: usize) -> Result<Vec<Partition>, LatticeError> {
    if n > MAX_GROUND {
        return Err(LatticeError::TooLarge { n, max: MAX_GROUND });
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn rec(i: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == rgs.len() {
            out.push(Partition { block_id: rgs.clone() });
            return;
        }
        for b in 0..=max + 1 {
            rgs[i] = b;
            rec(i + 1, max.max(b), rgs, out);
        }
    }
    if n == 0 {
        out.push(Partition { block_id: vec![] });
    } else {
        rec(1, 0, &mut rgs, &mut out);
    }
    Ok(out)
}

/// A finite lattice given by its order, with meet and join tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteLattice {
    pub name: String,
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
}

impl FiniteLattice {
    /// Builds meet and join from a partial order; fails if some pair lacks
    /// a greatest lower or least upper bound.
    pub fn from_order(name: &str, leq: Vec<Vec<bool>>) -> Result<Self, LatticeError> {
        let k = leq.len();
        let bound = |i: usize, j: usize, lower: bool| -> Option<usize> {
            let below = |a: usize, b: usize| if lower { leq[a][b] } else { leq[b][a] };
            let cands: Vec<usize> = (0..k).filter(|&c| below(c, i) && below(c, j)).collect();
            cands.iter().copied().find(|&c| cands.iter().all(|&d| below(d, c)))
        };
        let mut meet = vec![vec![0; k]; k];
        let mut join = vec![vec![0; k]; k];
        for i in 0..k {
            for j in 0..k {
                meet[i][j] = bound(i, j, true)
                    .ok_or_else(|| LatticeError::NotALattice(format!("{i} and {j} have no meet")))?;
                join[i][j] = bound(i, j, false)
                    .ok_or_else(|| LatticeError::NotALattice(format!("{i} and {j} have no join")))?;
            }
        }
        Ok(FiniteLattice {
            name: name.to_owned(),
            leq,
            meet,
            join,
        })
    }

    /// From covering pairs (a below b); the order is their reflexive
    /// transitive closure.
    pub fn from_covers(name: &str, size: usize, covers: &[(usize, usize)]) -> Result<Self, LatticeError> {
        let mut leq = vec![vec![false; size]; size];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in covers {
            leq[a][b] = true;
        }
        for m in 0..size {
            for i in 0..size {
                for j in 0..size {
                    if leq[i][m] && leq[m][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        Self::from_order(name, leq)
    }

    pub fn chain(k: usize) -> Self {
        let covers: Vec<(usize, usize)> = (1..k).map(|i| (i - 1, i)).collect();
        Self::from_covers(&format!("chain({k})"), k, &covers).expect("chains are lattices")
    }

    /// 0 < a, b, c < 1 with a, b, c pairwise incomparable.
    pub fn m3() -> Self {
        Self::from_covers("m3", 5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).expect("M3")
    }

    /// 0 < a < b < 1 and 0 < c < 1.
    pub fn n5() -> Self {
        Self::from_covers("n5", 5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).expect("N5")
    }

    /// Subsets of a k-set, k ≤ 3.
    pub fn boolean(k: usize) -> Result<Self, LatticeError> {
        if k > 3 {
            return Err(LatticeError::TooLarge { n: k, max: 3 });
        }
        let size = 1 << k;
        let leq = (0..size).map(|a| (0..size).map(|b| a & b == a).collect()).collect();
        Self::from_order(&format!("boolean({k})"), leq)
    }

    /// chain(k), m3, n5, boolean(k).
    pub fn builtin(text: &str) -> Result<Self, LatticeError> {
        let s = text.trim().to_ascii_lowercase();
        let arg = |prefix: &str| -> Option<usize> {
            s.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?.trim().parse().ok()
        };
        match s.as_str() {
            "m3" => Ok(Self::m3()),
            "n5" => Ok(Self::n5()),
            _ => {
                if let Some(k) = arg("chain").filter(|&k| k >= 1) {
                    Ok(Self::chain(k))
                } else if let Some(k) = arg("boolean") {
                    Self::boolean(k)
                } else {
                    Err(LatticeError::Unknown(text.to_owned()))
                }
            }
        }
    }

    /// The lattice of all partitions of an n-set, elements in
    /// `all_partitions` order.
    pub fn partitions(n: usize) -> Result<(Vec<Partition>, Self), LatticeError> {
        let parts = all_partitions(n)?;
        let leq = parts.iter().map(|a| parts.iter().map(|b| a.refines(b)).collect()).collect();
        let lat = Self::from_order(&format!("Eq({n})"), leq)?;
        Ok((parts, lat))
    }

    pub fn size(&self) -> usize {
        self.leq.len()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    /// Idempotence, commutativity, associativity, absorption, and agreement
    /// of the tables with the order.
    pub fn check_axioms(&self) -> Result<(), String> {
        let k = self.size();
        let (m, j) = (&self.meet, &self.join);
        for a in 0..k {
            if m[a][a] != a || j[a][a] != a {
                return Err(format!("idempotence fails at {a}"));
            }
            for b in 0..k {
                if m[a][b] != m[b][a] || j[a][b] != j[b][a] {
                    return Err(format!("commutativity fails at {a}, {b}"));
                }
                if m[a][j[a][b]] != a || j[a][m[a][b]] != a {
                    return Err(format!("absorption fails at {a}, {b}"));
                }
                if self.leq[a][b] != (m[a][b] == a) {
                    return Err(format!("order and meet disagree at {a}, {b}"));
                }
                for c in 0..k {
                    if m[m[a][b]][c] != m[a][m[b][c]] || j[j[a][b]][c] != j[a][j[b][c]] {
                        return Err(format!("associativity fails at {a}, {b}, {c}"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Id(π) over the family 𝒲_n: one identity w_i ≈ w_j per ordered related
/// pair, trivial pairs included.
pub fn id_set(pi: &Partition, family: &[Word]) -> Result<IdentitySet, LatticeError> {
    if pi.ground_size() != family.len() {
        return Err(LatticeError::SizeMismatch(pi.ground_size(), family.len()));
    }
    let mut ids = Vec::new();
    for i in 0..family.len() {
        for j in 0..family.len() {
            if pi.related(i, j) {
                ids.push(Identity::new(family[i].clone(), family[j].clone()));
            }
        }
    }
    Ok(IdentitySet {
        identities: ids,
        closed_under_symmetry: true,
    })
}

/// A meet- and join-preserving injection of `lattice` into the partitions
/// of an n-set, by backtracking, or `None` if there is none.
pub fn embed_lattice(lattice: &FiniteLattice, n: usize) -> Result<Option<Vec<Partition>>, LatticeError> {
    if lattice.size() > MAX_EMBED_LATTICE {
        return Err(LatticeError::TooLarge {
            n: lattice.size(),
            max: MAX_EMBED_LATTICE,
        });
    }
    if n > MAX_EMBED_GROUND {
        return Err(LatticeError::TooLarge {
            n,
            max: MAX_EMBED_GROUND,
        });
    }
    let (parts, eq) = FiniteLattice::partitions(n)?;
    let mut image: Vec<Option<usize>> = vec![None; lattice.size()];
    if embed_rec(lattice, &eq, &mut image) {
        Ok(Some(image.into_iter().map(|i| parts[i.expect("complete")].clone()).collect()))
    } else {
        Ok(None)
    }
}

fn embed_rec(l: &FiniteLattice, eq: &FiniteLattice, image: &mut Vec<Option<usize>>) -> bool {
    let Some(a) = image.iter().position(Option::is_none) else {
        return true;
    };
    for p in 0..eq.size() {
        let mut trail = Vec::new();
        if assign(l, eq, image, a, p, &mut trail) && embed_rec(l, eq, image) {
            return true;
        }
        for t in trail {
            image[t] = None;
        }
    }
    false
}

/// Assigns a ↦ p and every image it forces through meets and joins with
/// already-assigned elements. Records assignments in `trail`.
fn assign(
    l: &FiniteLattice,
    eq: &FiniteLattice,
    image: &mut [Option<usize>],
    a: usize,
    p: usize,
    trail: &mut Vec<usize>,
) -> bool {
    let mut queue = vec![(a, p)];
    while let Some((x, q)) = queue.pop() {
        match image[x] {
            Some(existing) if existing == q => continue,
            Some(_) => return false,
            None => {}
        }
        if image.iter().any(|&i| i == Some(q)) {
            return false;
        }
        image[x] = Some(q);
        trail.push(x);
        for y in 0..l.size() {
            let Some(qy) = image[y] else { continue };
            queue.push((l.meet(x, y), eq.meet(q, qy)));
            queue.push((l.join(x, y), eq.join(q, qy)));
        }
    }
    true
}

/// Meets and joins of images equal images of meets and joins, and the map
/// is injective.
pub fn verify_embedding(lattice: &FiniteLattice, images: &[Partition]) -> bool {
    let k = lattice.size();
    if images.len() != k || images.iter().collect::<BTreeSet<_>>().len() != k {
        return false;
    }
    (0..k).all(|a| {
        (0..k).all(|b| {
            images[a].meet(&images[b]).ok().as_ref() == Some(&images[lattice.meet(a, b)])
                && images[a].join(&images[b]).ok().as_ref() == Some(&images[lattice.join(a, b)])
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProxyReport {
    pub n: usize,
    pub partitions: usize,
    /// Partitions whose closure classes differ from their own classes.
    pub class_mismatches: Vec<String>,
    pub distinct_class_systems: usize,
    /// Pairs where refinement, class containment and cross-derivability
    /// disagree.
    pub order_mismatches: Vec<String>,
    pub all_exhausted: bool,
}

impl ProxyReport {
    pub fn passed(&self) -> bool {
        self.class_mismatches.is_empty()
            && self.distinct_class_systems == self.partitions
            && self.order_mismatches.is_empty()
            && self.all_exhausted
    }
}

/// For every partition π of 𝒲_n: the deductive closure of each w_ξ under
/// Id(π) is its π-class; distinct π give distinct class systems; and
/// π ⊆ ρ iff each π-class lies in a ρ-class iff every identity of Id(π)
/// is derivable from Id(ρ).
pub fn check_antiisomorphism_proxy(n: usize) -> Result<ProxyReport, LatticeError> {
    let family = build_family(n)?;
    let parts = all_partitions(family.len())?;
    let caps = Caps {
        depth: family.len() + 1,
        max_states: 10_000,
        max_len: family[0].len(),
    };
    let index: BTreeMap<&Word, usize> = family.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut class_mismatches = Vec::new();
    let mut all_exhausted = true;
    // systems[π][ξ] = closure class of w_ξ as index set
    let mut systems: Vec<Vec<BTreeSet<usize>>> = Vec::new();
    for pi in &parts {
        let sigma = id_set(pi, &family)?;
        let mut sys = Vec::new();
        for (i, w) in family.iter().enumerate() {
            let c = closure(w, &sigma, caps)?;
            all_exhausted &= c.exhausted;
            let class: BTreeSet<usize> = c
                .words
                .iter()
                .map(|u| index.get(u).copied().unwrap_or(usize::MAX))
                .collect();
            let expect: BTreeSet<usize> = pi.class_of(i).into_iter().collect();
            if class != expect {
                class_mismatches.push(format!("{pi}: class of w[{i}] is {class:?}"));
            }
            sys.push(class);
        }
        systems.push(sys);
    }
    let distinct = systems.iter().collect::<BTreeSet<_>>().len();
    let mut order_mismatches = Vec::new();
    for (a, pi) in parts.iter().enumerate() {
        for (b, rho) in parts.iter().enumerate() {
            let refines = pi.refines(rho);
            let contained = systems[a]
                .iter()
                .all(|cls| systems[b].iter().any(|big| cls.is_subset(big)));
            let derivable = (0..family.len())
                .all(|i| (0..family.len()).all(|j| !pi.related(i, j) || systems[b][i].contains(&j)));
            if refines != contained || refines != derivable {
                order_mismatches.push(format!("{pi} vs {rho}"));
            }
        }
    }
    Ok(ProxyReport {
        n,
        partitions: parts.len(),
        class_mismatches,
        distinct_class_systems: distinct,
        order_mismatches,
        all_exhausted,
    })
}

impl FromStr for Partition {
    type Err = LatticeError;

    /// `0 1 | 2` style, or a restricted growth string like `0010`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LatticeError::NotALattice(format!("cannot parse partition {s:?}"));
        if s.contains('|') {
            let blocks: Vec<Vec<usize>> = s
                .trim_matches(|c| c == '{' || c == '}')
                .split('|')
                .map(|b| b.split_whitespace().map(|t| t.parse().map_err(|_| bad())).collect())
                .collect::<Result<_, _>>()?;
            let n = blocks.iter().flatten().max().map_or(0, |m| m + 1);
            let refs: Vec<&[usize]> = blocks.iter().map(Vec::as_slice).collect();
            Ok(Partition::from_blocks(n, &refs))
        } else {
            let labels: Vec<u32> = s.chars().map(|c| c.to_digit(36).ok_or_else(bad)).collect::<Result<_, _>>()?;
            Ok(Partition::from_labels(&labels))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        assert_eq!(all_partitions(1).unwrap().len(), 1);
        assert_eq!(all_partitions(3).unwrap().len(), 5);
        assert_eq!(all_partitions(4).unwrap().len(), 15);
        assert!(matches!(all_partitions(9), Err(LatticeError::TooLarge { .. })));
    }

    #[test]
    fn bounds() {
        for p in all_partitions(4).unwrap() {
            assert_eq!(p.meet(&Partition::universal(4)).unwrap(), p);
            assert_eq!(p.join(&Partition::discrete(4)).unwrap(), p);
        }
        let a = Partition::from_blocks(3, &[&[0, 1]]);
        let b = Partition::from_blocks(3, &[&[0, 2]]);
        assert_eq!(a.join(&b).unwrap(), Partition::universal(3));
        assert_eq!(a.meet(&b).unwrap(), Partition::discrete(3));
        assert!(a.meet(&Partition::discrete(4)).is_err());
    }

    #[test]
    fn eq3_is_m3() {
        let (parts, eq) = FiniteLattice::partitions(3).unwrap();
        eq.check_axioms().unwrap();
        let atoms: Vec<usize> = (0..parts.len()).filter(|&i| parts[i].num_blocks() == 2).collect();
        assert_eq!(atoms.len(), 3);
        for &a in &atoms {
            for &b in &atoms {
                if a != b {
                    assert!(!eq.leq(a, b));
                }
            }
        }
    }

    #[test]
    fn builtins_are_lattices() {
        for name in ["chain(1)", "chain(4)", "m3", "n5", "boolean(0)", "boolean(3)"] {
            FiniteLattice::builtin(name).unwrap().check_axioms().unwrap();
        }
        assert!(FiniteLattice::builtin("boolean(4)").is_err());
        assert!(FiniteLattice::builtin("pentagon").is_err());
        let vee = FiniteLattice::from_covers("vee", 3, &[(0, 1), (0, 2)]);
        assert!(matches!(vee, Err(LatticeError::NotALattice(_))));
    }

    #[test]
    fn embeddings() {
        let m = embed_lattice(&FiniteLattice::m3(), 3).unwrap().unwrap();
        assert!(verify_embedding(&FiniteLattice::m3(), &m));
        let c = embed_lattice(&FiniteLattice::chain(2), 2).unwrap().unwrap();
        assert!(verify_embedding(&FiniteLattice::chain(2), &c));
        assert!(embed_lattice(&FiniteLattice::n5(), 3).unwrap().is_none());
        assert!(embed_lattice(&FiniteLattice::chain(3), 9).is_err());
    }

    #[test]
    fn id_sets() {
        let fam = build_family(2).unwrap();
        assert_eq!(id_set(&Partition::discrete(4), &fam).unwrap().nontrivial_count(), 0);
        assert_eq!(id_set(&Partition::universal(4), &fam).unwrap().nontrivial_count(), 12);
        let p: Partition = "0 1 | 2 | 3".parse().unwrap();
        assert_eq!(id_set(&p, &fam).unwrap().nontrivial_count(), 2);
        assert!(id_set(&Partition::discrete(3), &fam).is_err());
    }

    #[test]
    fn parse_forms_agree() {
        let a: Partition = "{0 2 | 1 3}".parse().unwrap();
        let b: Partition = "0101".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "{0 2 | 1 3}");
    }
}
