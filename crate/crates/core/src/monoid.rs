//! Finite monoids given by multiplication tables, built-in presentations,
//! and brute-force identity checking.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::word::{Identity, Variable, Word};

pub const DEFAULT_VARIABLE_CAP: usize = 8;
const PRESENTATION_CAP: usize = 10_000;
const REWRITE_RULE_CAP: usize = 2_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("multiplication table is not square")]
    NotSquare,
    #[error("table entry {0} is not an element index")]
    EntryOutOfRange(usize),
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("element {0} is not a two-sided identity")]
    NoIdentity(usize),
    #[error("bad parameter: {0}")]
    BadParam(String),
    #[error("unknown monoid `{0}`")]
    Unknown(String),
    #[error("variable {0} has no value")]
    UnboundVariable(Variable),
    #[error("{count} variables exceed the cap of {cap}")]
    TooManyVariables { count: usize, cap: usize },
    #[error("presentation did not close within {0} elements or rules")]
    PresentationTooLarge(usize),
    #[error("malformed monoid file: {0}")]
    Format(String),
}

pub type Assignment = BTreeMap<Variable, usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    size: usize,
    table: Vec<usize>,
    identity: usize,
    zero: Option<usize>,
    names: Vec<String>,
}

/// On-disk form: `{"names": [...], "table": [[...], ...], "identity": i}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonoidFile {
    pub names: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Satisfaction {
    Holds,
    Fails(Assignment),
}

impl Satisfaction {
    pub fn holds(&self) -> bool {
        matches!(self, Satisfaction::Holds)
    }

    pub fn witness(&self) -> Option<&Assignment> {
        match self {
            Satisfaction::Holds => None,
            Satisfaction::Fails(a) => Some(a),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum IsotermVerdict {
    IsotermUpTo(usize),
    Counterexample(Word),
}

impl FiniteMonoid {
    pub fn build(
        table: Vec<Vec<usize>>,
        identity: usize,
        names: Vec<String>,
    ) -> Result<Self, MonoidError> {
        let size = table.len();
        if size == 0 || table.iter().any(|row| row.len() != size) || names.len() != size {
            return Err(MonoidError::NotSquare);
        }
        if identity >= size {
            return Err(MonoidError::EntryOutOfRange(identity));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        if let Some(&bad) = flat.iter().find(|&&e| e >= size) {
            return Err(MonoidError::EntryOutOfRange(bad));
        }
        let mul = |a: usize, b: usize| flat[a * size + b];
        if (0..size).any(|x| mul(identity, x) != x || mul(x, identity) != x) {
            return Err(MonoidError::NoIdentity(identity));
        }
        for i in 0..size {
            for j in 0..size {
                let ij = mul(i, j);
                for k in 0..size {
                    if mul(ij, k) != mul(i, mul(j, k)) {
                        return Err(MonoidError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        let zero = (0..size).find(|&z| (0..size).all(|x| mul(z, x) == z && mul(x, z) == z));
        Ok(FiniteMonoid {
            size,
            table: flat,
            identity,
            zero,
            names,
        })
    }

    pub fn from_file(file: MonoidFile) -> Result<Self, MonoidError> {
        FiniteMonoid::build(file.table, file.identity, file.names)
    }

    pub fn from_json(text: &str) -> Result<Self, MonoidError> {
        let file: MonoidFile =
            serde_json::from_str(text).map_err(|e| MonoidError::Format(e.to_string()))?;
        FiniteMonoid::from_file(file)
    }

    pub fn to_file(&self) -> MonoidFile {
        MonoidFile {
            names: self.names.clone(),
            table: self.table.chunks(self.size).map(<[usize]>::to_vec).collect(),
            identity: self.identity,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, e: usize) -> &str {
        &self.names[e]
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    pub fn pow(&self, a: usize, n: usize) -> usize {
        (0..n).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.size).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_group(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).any(|b| self.mul(a, b) == self.identity))
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.size).filter(|&e| self.mul(e, e) == e).collect()
    }

    pub fn evaluate(&self, w: &Word, asg: &Assignment) -> Result<usize, MonoidError> {
        w.iter().try_fold(self.identity, |acc, v| {
            let e = asg
                .get(v)
                .ok_or_else(|| MonoidError::UnboundVariable(v.clone()))?;
            Ok(self.mul(acc, *e))
        })
    }

    fn eval_indexed(&self, w: &[usize], values: &[usize]) -> usize {
        w.iter()
            .fold(self.identity, |acc, &v| self.mul(acc, values[v]))
    }

    pub fn satisfies(&self, id: &Identity) -> Result<Satisfaction, MonoidError> {
        self.satisfies_with_cap(id, DEFAULT_VARIABLE_CAP)
    }

    /// Exhaustive check over every assignment of the identity's variables.
    pub fn satisfies_with_cap(
        &self,
        id: &Identity,
        cap: usize,
    ) -> Result<Satisfaction, MonoidError> {
        let vars: Vec<Variable> = id.content().into_iter().collect();
        if vars.len() > cap {
            return Err(MonoidError::TooManyVariables {
                count: vars.len(),
                cap,
            });
        }
        let index: HashMap<&Variable, usize> =
            vars.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let lhs: Vec<usize> = id.lhs.iter().map(|v| index[v]).collect();
        let rhs: Vec<usize> = id.rhs.iter().map(|v| index[v]).collect();
        let n = vars.len() as u32;
        let total = (self.size as u64).pow(n);
        let decode = |mut code: u64| -> Vec<usize> {
            (0..vars.len())
                .map(|_| {
                    let d = (code % self.size as u64) as usize;
                    code /= self.size as u64;
                    d
                })
                .collect()
        };
        let bad = (0..total).into_par_iter().find_first(|&code| {
            let values = decode(code);
            self.eval_indexed(&lhs, &values) != self.eval_indexed(&rhs, &values)
        });
        Ok(match bad {
            None => Satisfaction::Holds,
            Some(code) => Satisfaction::Fails(vars.iter().cloned().zip(decode(code)).collect()),
        })
    }

    /// Minimal (m, k) with x^{m+k} = x^m for every element.
    pub fn index_and_period(&self) -> (usize, usize) {
        let mut m = 1;
        let mut k = 1;
        for x in 0..self.size {
            let mut seen = HashMap::new();
            let mut p = x;
            let mut i = 1;
            loop {
                if let Some(&j) = seen.get(&p) {
                    m = m.max(j);
                    k = lcm(k, i - j);
                    break;
                }
                seen.insert(p, i);
                p = self.mul(p, x);
                i += 1;
            }
        }
        (m, k)
    }

    /// Searches words over `content(w)` of length at most `max_len` for a
    /// `w'` with `w ≈ w'` holding. Words with the same content as `w` are
    /// tried first, shortest first.
    pub fn bounded_isoterm(&self, w: &Word, max_len: usize) -> Result<IsotermVerdict, MonoidError> {
        let content = w.content();
        if content.len() > DEFAULT_VARIABLE_CAP {
            return Err(MonoidError::TooManyVariables {
                count: content.len(),
                cap: DEFAULT_VARIABLE_CAP,
            });
        }
        let alphabet: Vec<Variable> = content.iter().cloned().collect();
        let mut candidates = words_up_to(&alphabet, max_len);
        candidates.retain(|c| c != w);
        candidates.sort_by_key(|c| (c.content() != content, c.len()));
        for c in candidates {
            if self.satisfies(&Identity::new(w.clone(), c.clone()))?.holds() {
                return Ok(IsotermVerdict::Counterexample(c));
            }
        }
        Ok(IsotermVerdict::IsotermUpTo(max_len))
    }

    pub fn direct_product(&self, other: &FiniteMonoid) -> FiniteMonoid {
        let size = self.size * other.size;
        let pair = |i: usize| (i / other.size, i % other.size);
        let table = (0..size)
            .map(|a| {
                (0..size)
                    .map(|b| {
                        let (a1, a2) = pair(a);
                        let (b1, b2) = pair(b);
                        self.mul(a1, b1) * other.size + other.mul(a2, b2)
                    })
                    .collect()
            })
            .collect();
        let names = (0..size)
            .map(|i| {
                let (x, y) = pair(i);
                format!("({},{})", self.names[x], other.names[y])
            })
            .collect();
        FiniteMonoid::build(table, self.identity * other.size + other.identity, names)
            .expect("product of monoids is a monoid")
    }

    pub fn cayley_table(&self) -> String {
        let width = self.names.iter().map(String::len).max().unwrap_or(1);
        let mut out = format!("{:>width$} |", "*");
        for n in &self.names {
            out += &format!(" {n:>width$}");
        }
        out.push('\n');
        out += &"-".repeat(out.len() - 1);
        out.push('\n');
        for a in 0..self.size {
            out += &format!("{:>width$} |", self.names[a]);
            for b in 0..self.size {
                out += &format!(" {:>width$}", self.names[self.mul(a, b)]);
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cayley_table())
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

fn words_up_to(alphabet: &[Variable], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let next: Vec<Word> = layer
            .iter()
            .flat_map(|w| {
                alphabet.iter().map(move |v| {
                    let mut w = w.clone();
                    w.push(v.clone());
                    w
                })
            })
            .collect();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// A finite monoid presentation over single-character generators. The
/// generator `0`, when listed, is made a two-sided zero.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub generators: Vec<char>,
    pub relations: Vec<(String, String)>,
}

impl Presentation {
    pub fn new(generators: &str, relations: &[(&str, &str)]) -> Self {
        Presentation {
            generators: generators.chars().collect(),
            relations: relations
                .iter()
                .map(|(l, r)| (l.to_string(), r.to_string()))
                .collect(),
        }
    }

    /// Completes the presentation to a confluent shortlex rewriting system and
    /// enumerates the normal forms; elements are named by their normal forms.
    pub fn to_monoid(&self) -> Result<FiniteMonoid, MonoidError> {
        let gen_index: HashMap<char, u8> = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, i as u8))
            .collect();
        let encode = |s: &str| -> Result<Vec<u8>, MonoidError> {
            s.chars()
                .filter(|&c| c != '1')
                .map(|c| {
                    gen_index
                        .get(&c)
                        .copied()
                        .ok_or_else(|| MonoidError::BadParam(format!("unknown generator {c}")))
                })
                .collect()
        };
        let mut equations = Vec::new();
        for (l, r) in &self.relations {
            equations.push((encode(l)?, encode(r)?));
        }
        if let Some(&z) = gen_index.get(&'0') {
            for &g in gen_index.values() {
                equations.push((vec![z, g], vec![z]));
                equations.push((vec![g, z], vec![z]));
            }
        }
        let rules = RewriteSystem::complete(equations)?;
        let mut forms: Vec<Vec<u8>> = vec![vec![]];
        let mut index: HashMap<Vec<u8>, usize> = HashMap::from([(vec![], 0)]);
        let mut queue = VecDeque::from([vec![]]);
        while let Some(w) = queue.pop_front() {
            for g in 0..self.generators.len() as u8 {
                let mut next = w.clone();
                next.push(g);
                if rules.is_irreducible(&next) && !index.contains_key(&next) {
                    if forms.len() >= PRESENTATION_CAP {
                        return Err(MonoidError::PresentationTooLarge(PRESENTATION_CAP));
                    }
                    index.insert(next.clone(), forms.len());
                    forms.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        let table = forms
            .iter()
            .map(|a| {
                forms
                    .iter()
                    .map(|b| {
                        let mut ab = a.clone();
                        ab.extend_from_slice(b);
                        index[&rules.reduce(ab)]
                    })
                    .collect()
            })
            .collect();
        let names = forms
            .iter()
            .map(|f| {
                if f.is_empty() {
                    "1".to_string()
                } else {
                    f.iter().map(|&g| self.generators[g as usize]).collect()
                }
            })
            .collect();
        FiniteMonoid::build(table, 0, names)
    }
}

/// Length-reducing-or-shortlex rewriting system over small generator codes.
struct RewriteSystem {
    rules: Vec<(Vec<u8>, Vec<u8>)>,
}

fn shortlex_gt(a: &[u8], b: &[u8]) -> bool {
    (a.len(), a) > (b.len(), b)
}

impl RewriteSystem {
    fn reduce(&self, mut w: Vec<u8>) -> Vec<u8> {
        'outer: loop {
            for (l, r) in &self.rules {
                if let Some(p) = w.windows(l.len()).position(|win| win == l.as_slice()) {
                    w.splice(p..p + l.len(), r.iter().copied());
                    continue 'outer;
                }
            }
            return w;
        }
    }

    fn is_irreducible(&self, w: &[u8]) -> bool {
        self.rules
            .iter()
            .all(|(l, _)| !w.windows(l.len()).any(|win| win == l.as_slice()))
    }

    fn orient(&self, a: Vec<u8>, b: Vec<u8>) -> Option<(Vec<u8>, Vec<u8>)> {
        let a = self.reduce(a);
        let b = self.reduce(b);
        if a == b {
            None
        } else if shortlex_gt(&a, &b) {
            Some((a, b))
        } else {
            Some((b, a))
        }
    }

    fn complete(equations: Vec<(Vec<u8>, Vec<u8>)>) -> Result<Self, MonoidError> {
        let mut sys = RewriteSystem { rules: Vec::new() };
        let mut pending: VecDeque<(Vec<u8>, Vec<u8>)> = equations.into();
        loop {
            while let Some((a, b)) = pending.pop_front() {
                if let Some(rule) = sys.orient(a, b) {
                    sys.add_rule(rule, &mut pending);
                    if sys.rules.len() > REWRITE_RULE_CAP {
                        return Err(MonoidError::PresentationTooLarge(REWRITE_RULE_CAP));
                    }
                }
            }
            let mut critical = Vec::new();
            for (l1, r1) in &sys.rules {
                for (l2, r2) in &sys.rules {
                    // suffix of l1 overlaps prefix of l2
                    for k in 1..l1.len().min(l2.len()) {
                        if l1[l1.len() - k..] == l2[..k] {
                            let mut a = r1.clone();
                            a.extend_from_slice(&l2[k..]);
                            let mut b = l1[..l1.len() - k].to_vec();
                            b.extend_from_slice(r2);
                            critical.push((a, b));
                        }
                    }
                }
            }
            for (a, b) in critical {
                if let Some(rule) = sys.orient(a, b) {
                    pending.push_back(rule);
                }
            }
            if pending.is_empty() {
                return Ok(sys);
            }
        }
    }

    /// Adds a rule and moves rules it makes reducible back to `pending`.
    fn add_rule(&mut self, rule: (Vec<u8>, Vec<u8>), pending: &mut VecDeque<(Vec<u8>, Vec<u8>)>) {
        let (new_l, new_r) = rule;
        let contains = |w: &[u8]| w.windows(new_l.len()).any(|win| win == new_l.as_slice());
        let mut kept = Vec::new();
        for (l, r) in self.rules.drain(..) {
            if contains(&l) || contains(&r) {
                pending.push_back((l, r));
            } else {
                kept.push((l, r));
            }
        }
        kept.push((new_l, new_r));
        self.rules = kept;
    }
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

pub fn b21() -> FiniteMonoid {
    Presentation::new(
        "0ab",
        &[("aba", "a"), ("bab", "b"), ("aa", "0"), ("bb", "0")],
    )
    .to_monoid()
    .expect("B21 presentation is finite")
}

pub fn a21() -> FiniteMonoid {
    Presentation::new(
        "0ab",
        &[("aba", "a"), ("bab", "b"), ("aa", "0"), ("bb", "b")],
    )
    .to_monoid()
    .expect("A21 presentation is finite")
}

pub fn dihedral(p: usize) -> Result<FiniteMonoid, MonoidError> {
    if !is_prime(p) {
        return Err(MonoidError::BadParam(format!("dihedral order parameter {p} is not prime")));
    }
    let ap = "a".repeat(p);
    Presentation::new("ab", &[(&ap, "1"), ("bb", "1"), ("abab", "1")]).to_monoid()
}

pub fn quaternion() -> FiniteMonoid {
    Presentation::new(
        "ijk",
        &[("ii", "jj"), ("jj", "kk"), ("kk", "ijk"), ("iiii", "1")],
    )
    .to_monoid()
    .expect("Q8 presentation is finite")
}

pub fn cyclic(k: usize) -> Result<FiniteMonoid, MonoidError> {
    if k == 0 {
        return Err(MonoidError::BadParam("cyclic group order must be positive".into()));
    }
    Presentation::new("a", &[(&"a".repeat(k), "1")]).to_monoid()
}

pub fn trivial() -> FiniteMonoid {
    FiniteMonoid::build(vec![vec![0]], 0, vec!["1".into()]).expect("trivial monoid")
}

/// Parses names like `B21`, `A21`, `D3`, `dihedral(5)`, `Q8`, `Z4`,
/// `cyclic(4)`, `trivial`, and products `B21 x Z2`.
pub fn builtin(text: &str) -> Result<FiniteMonoid, MonoidError> {
    let normalized = text.replace(" x ", "*").replace('×', "*");
    let parts: Vec<&str> = normalized.split('*').map(str::trim).collect();
    if parts.len() > 1 {
        let mut acc = single_builtin(parts[0])?;
        for p in &parts[1..] {
            acc = acc.direct_product(&single_builtin(p)?);
        }
        return Ok(acc);
    }
    single_builtin(text.trim())
}

fn single_builtin(name: &str) -> Result<FiniteMonoid, MonoidError> {
    let lower = name.to_ascii_lowercase();
    let param = |prefixes: &[&str]| -> Option<Result<usize, MonoidError>> {
        prefixes.iter().find_map(|p| {
            let rest = lower.strip_prefix(p)?;
            let rest = rest.trim_start_matches('(').trim_end_matches(')');
            Some(
                rest.parse::<usize>()
                    .map_err(|_| MonoidError::BadParam(format!("bad parameter in `{name}`"))),
            )
        })
    };
    match lower.as_str() {
        "b21" | "b2^1" | "b2" => return Ok(b21()),
        "a21" | "a2^1" | "a2" => return Ok(a21()),
        "q8" | "quaternion" => return Ok(quaternion()),
        "trivial" | "1" => return Ok(trivial()),
        _ => {}
    }
    if let Some(p) = param(&["dihedral", "d"]) {
        return dihedral(p?);
    }
    if let Some(k) = param(&["cyclic", "z"]) {
        return cyclic(k?);
    }
    Err(MonoidError::Unknown(name.to_string()))
}
