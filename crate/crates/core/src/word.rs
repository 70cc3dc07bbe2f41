//! Words over a countable alphabet of variables, identities between words,
//! substitutions, and the combinatorial predicates used throughout the
//! workbench (content, occurrences, projections, blocks, islands,
//! linear-balanced and reduced identities, invertibility degree).

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::ops::Range;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("empty variable token")]
    EmptyToken,
    #[error("invalid character {ch:?} in variable token {token:?}")]
    InvalidChar { token: String, ch: char },
    #[error("the token `1` denotes the empty word and cannot name a variable")]
    ReservedToken,
    #[error("identity must have the form `<word> = <word>`, got {0:?}")]
    MalformedIdentity(String),
    #[error("variable {var} has only {available} occurrence(s), index {index} requested")]
    OccurrenceOutOfRange {
        var: Variable,
        index: usize,
        available: usize,
    },
    #[error("variable {0} occurs more than twice")]
    OccursMoreThanTwice(Variable),
}

/// A variable symbol. Equality is token equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable(Arc<str>);

impl Variable {
    pub fn new(token: &str) -> Result<Self, WordError> {
        if token.is_empty() {
            return Err(WordError::EmptyToken);
        }
        if token == "1" {
            return Err(WordError::ReservedToken);
        }
        if let Some(ch) = token
            .chars()
            .find(|c| !(c.is_ascii_alphanumeric() || *c == '_' || *c == '\''))
        {
            return Err(WordError::InvalidChar {
                token: token.to_owned(),
                ch,
            });
        }
        Ok(Variable(Arc::from(token)))
    }

    /// Builds a variable from a token known to be valid. Panics otherwise.
    pub fn named(token: &str) -> Self {
        Self::new(token).unwrap_or_else(|e| panic!("invalid variable token {token:?}: {e}"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A finite sequence of variables. The empty sequence is the empty word `1`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Variable>);

/// The `index`-th (1-based) occurrence of `variable`, located at `position`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OccurrenceRef {
    pub variable: Variable,
    pub index: usize,
    pub position: usize,
}

/// A maximal factor of a word, together with the positions it covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub word: Word,
    pub range: Range<usize>,
}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_vars(vars: Vec<Variable>) -> Self {
        Word(vars)
    }

    /// Parses whitespace-separated tokens; a lone `1` token is the empty word.
    pub fn parse(text: &str) -> Result<Self, WordError> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if token == "1" {
                continue;
            }
            letters.push(Variable::new(token)?);
        }
        Ok(Word(letters))
    }

    /// Parses a word written without separators, one character per variable
    /// (`xzytxy`). Whitespace is ignored and `1` is the empty word.
    pub fn parse_compact(text: &str) -> Result<Self, WordError> {
        let mut letters = Vec::new();
        for ch in text.chars().filter(|c| !c.is_whitespace()) {
            if ch == '1' {
                continue;
            }
            letters.push(Variable::new(ch.encode_utf8(&mut [0; 4]))?);
        }
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[Variable] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Variable> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Variable> {
        self.0.iter()
    }

    pub fn push(&mut self, v: Variable) {
        self.0.push(v);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn factor(&self, range: Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    pub fn content(&self) -> BTreeSet<Variable> {
        self.0.iter().cloned().collect()
    }

    pub fn occ(&self, x: &Variable) -> usize {
        self.0.iter().filter(|v| *v == x).count()
    }

    pub fn occurrence_counts(&self) -> BTreeMap<Variable, usize> {
        let mut counts = BTreeMap::new();
        for v in &self.0 {
            *counts.entry(v.clone()).or_insert(0) += 1;
        }
        counts
    }

    pub fn simple_vars(&self) -> BTreeSet<Variable> {
        self.occurrence_counts()
            .into_iter()
            .filter_map(|(v, c)| (c == 1).then_some(v))
            .collect()
    }

    pub fn multiple_vars(&self) -> BTreeSet<Variable> {
        self.occurrence_counts()
            .into_iter()
            .filter_map(|(v, c)| (c > 1).then_some(v))
            .collect()
    }

    /// A nonempty word in which every variable is simple.
    pub fn is_linear(&self) -> bool {
        !self.is_empty() && self.occurrence_counts().values().all(|&c| c == 1)
    }

    /// Keeps only the letters in `keep`.
    pub fn project(&self, keep: &BTreeSet<Variable>) -> Word {
        Word(self.0.iter().filter(|v| keep.contains(*v)).cloned().collect())
    }

    /// Removes every letter in `drop`.
    pub fn delete(&self, drop: &BTreeSet<Variable>) -> Word {
        Word(self.0.iter().filter(|v| !drop.contains(*v)).cloned().collect())
    }

    /// Position of the `index`-th (1-based) occurrence of `x`.
    pub fn occurrence(&self, x: &Variable, index: usize) -> Result<OccurrenceRef, WordError> {
        let position = if index == 0 {
            None
        } else {
            self.0
                .iter()
                .enumerate()
                .filter(|(_, v)| *v == x)
                .nth(index - 1)
                .map(|(p, _)| p)
        };
        position
            .map(|position| OccurrenceRef {
                variable: x.clone(),
                index,
                position,
            })
            .ok_or_else(|| WordError::OccurrenceOutOfRange {
                var: x.clone(),
                index,
                available: self.occ(x),
            })
    }

    /// Whether the `i`-th occurrence of `x` precedes the `j`-th occurrence of `y`.
    pub fn occurrence_precedes(
        &self,
        x: &Variable,
        i: usize,
        y: &Variable,
        j: usize,
    ) -> Result<bool, WordError> {
        Ok(self.occurrence(x, i)?.position < self.occurrence(y, j)?.position)
    }

    /// For each position, which occurrence (1-based) of its letter it is.
    pub fn occurrence_indices(&self) -> Vec<usize> {
        let mut seen: HashMap<&Variable, usize> = HashMap::new();
        self.0
            .iter()
            .map(|v| {
                let c = seen.entry(v).or_insert(0);
                *c += 1;
                *c
            })
            .collect()
    }

    /// Maximal nonempty factors containing no simple variable, in order.
    pub fn blocks(&self) -> Vec<Segment> {
        let simple = self.simple_vars();
        let mut blocks = Vec::new();
        let mut start = 0;
        for (i, v) in self.0.iter().enumerate() {
            if simple.contains(v) {
                if i > start {
                    blocks.push(self.segment(start..i));
                }
                start = i + 1;
            }
        }
        if self.len() > start {
            blocks.push(self.segment(start..self.len()));
        }
        blocks
    }

    /// For every position, the index (into `blocks()`) of the block holding
    /// it, or `None` for simple letters.
    pub fn block_index_map(&self) -> Vec<Option<usize>> {
        let mut map = vec![None; self.len()];
        for (b, seg) in self.blocks().iter().enumerate() {
            for p in seg.range.clone() {
                map[p] = Some(b);
            }
        }
        map
    }

    /// Islands: maximal runs of second occurrences whose first occurrences
    /// share a block. Defined only when every multiple variable occurs
    /// exactly twice.
    pub fn islands(&self) -> Result<Vec<Segment>, WordError> {
        if let Some((v, _)) = self.occurrence_counts().into_iter().find(|(_, c)| *c > 2) {
            return Err(WordError::OccursMoreThanTwice(v));
        }
        let block_of = self.block_index_map();
        let mut first_pos: HashMap<&Variable, usize> = HashMap::new();
        // block of the first occurrence, for positions holding a second occurrence
        let mut key: Vec<Option<usize>> = vec![None; self.len()];
        for (p, v) in self.0.iter().enumerate() {
            match first_pos.get(v) {
                Some(&fp) => key[p] = block_of[fp],
                None => {
                    first_pos.insert(v, p);
                }
            }
        }
        let mut islands = Vec::new();
        let mut p = 0;
        while p < self.len() {
            match key[p] {
                None => p += 1,
                Some(k) => {
                    let start = p;
                    while p < self.len() && key[p] == Some(k) && block_of[p] == block_of[start] {
                        p += 1;
                    }
                    islands.push(self.segment(start..p));
                }
            }
        }
        Ok(islands)
    }

    /// Every variable's occurrences are not all in one block, each block is
    /// linear.
    pub fn is_block_linear(&self) -> bool {
        self.blocks().iter().all(|b| b.word.is_linear())
    }

    pub fn is_square_free(&self) -> bool {
        let n = self.len();
        (1..=n / 2).all(|l| (0..=n - 2 * l).all(|i| self.0[i..i + l] != self.0[i + l..i + 2 * l]))
    }

    /// Whether every factor of length > 1 occurs exactly once.
    pub fn has_unique_long_factors(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.0.windows(2).all(|w| seen.insert(w))
    }

    pub fn is_factor_of(&self, other: &Word) -> bool {
        self.is_empty() || other.0.windows(self.len()).any(|w| w == self.0.as_slice())
    }

    /// Relabels variables in order of first occurrence (`v0`, `v1`, ...), so
    /// that two words coincide up to renaming iff their canonical forms agree.
    pub fn canonical_renaming(&self) -> Word {
        let mut names: HashMap<&Variable, Variable> = HashMap::new();
        Word(
            self.0
                .iter()
                .map(|v| {
                    let next = names.len();
                    names
                        .entry(v)
                        .or_insert_with(|| Variable::named(&format!("v{next}")))
                        .clone()
                })
                .collect(),
        )
    }

    pub fn equal_up_to_renaming(&self, other: &Word) -> bool {
        self.len() == other.len() && self.canonical_renaming() == other.canonical_renaming()
    }

    fn segment(&self, range: Range<usize>) -> Segment {
        Segment {
            word: self.factor(range.clone()),
            range,
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(v.as_str())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::parse(s)
    }
}

impl FromIterator<Variable> for Word {
    fn from_iter<I: IntoIterator<Item = Variable>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a Variable;
    type IntoIter = std::slice::Iter<'a, Variable>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl Serialize for Variable {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Variable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Variable::new(&text).map_err(serde::de::Error::custom)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Word::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// An identity `lhs ≈ rhs`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Identity {
    pub lhs: Word,
    pub rhs: Word,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IdentityClass {
    pub trivial: bool,
    pub linear_balanced: bool,
    pub reduced: bool,
}

impl Identity {
    pub fn new(lhs: Word, rhs: Word) -> Self {
        Identity { lhs, rhs }
    }

    /// Parses `<word> = <word>` (a `≈` separator is accepted too).
    pub fn parse(text: &str) -> Result<Self, WordError> {
        Self::parse_with(text, Word::parse)
    }

    pub fn parse_compact(text: &str) -> Result<Self, WordError> {
        Self::parse_with(text, Word::parse_compact)
    }

    fn parse_with(
        text: &str,
        word: impl Fn(&str) -> Result<Word, WordError>,
    ) -> Result<Self, WordError> {
        let sides: Vec<&str> = text.split(['=', '≈']).collect();
        if sides.len() != 2 {
            return Err(WordError::MalformedIdentity(text.to_owned()));
        }
        Ok(Identity::new(word(sides[0])?, word(sides[1])?))
    }

    pub fn is_trivial(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn reversed(&self) -> Identity {
        Identity::new(self.rhs.clone(), self.lhs.clone())
    }

    pub fn content(&self) -> BTreeSet<Variable> {
        let mut c = self.lhs.content();
        c.extend(self.rhs.content());
        c
    }

    pub fn is_balanced_content(&self) -> bool {
        self.lhs.content() == self.rhs.content()
    }

    pub fn classify(&self) -> IdentityClass {
        let linear_balanced = self.is_linear_balanced();
        IdentityClass {
            trivial: self.is_trivial(),
            linear_balanced,
            reduced: linear_balanced && self.is_reduced(),
        }
    }

    /// Splits both sides at their simple variables, provided the simple
    /// variables agree and appear in the same order. Returns the
    /// corresponding (possibly empty) blocks.
    pub fn corresponding_blocks(&self) -> Option<Vec<(Word, Word)>> {
        let su = self.lhs.simple_vars();
        if su != self.rhs.simple_vars() {
            return None;
        }
        let split = |w: &Word| -> (Vec<Variable>, Vec<Word>) {
            let mut order = Vec::new();
            let mut parts = vec![Word::empty()];
            for v in w {
                if su.contains(v) {
                    order.push(v.clone());
                    parts.push(Word::empty());
                } else {
                    parts.last_mut().expect("nonempty").push(v.clone());
                }
            }
            (order, parts)
        };
        let (ou, pu) = split(&self.lhs);
        let (ov, pv) = split(&self.rhs);
        (ou == ov).then(|| pu.into_iter().zip(pv).collect())
    }

    pub fn is_linear_balanced(&self) -> bool {
        self.corresponding_blocks().is_some_and(|pairs| {
            pairs.iter().all(|(a, b)| {
                let lin = |w: &Word| w.is_empty() || w.is_linear();
                lin(a) && lin(b) && a.content() == b.content()
            })
        })
    }

    /// Linear-balanced, and every pair of corresponding blocks has the form
    /// `a·c`, `b·c` where `a`, `b` hold first occurrences and the common
    /// suffix `c` holds second occurrences on both sides.
    pub fn is_reduced(&self) -> bool {
        if !self.is_linear_balanced() {
            return false;
        }
        let (Some(pairs), iu, iv) = (
            self.corresponding_blocks(),
            self.lhs.occurrence_indices(),
            self.rhs.occurrence_indices(),
        ) else {
            return false;
        };
        if self.lhs.occurrence_counts().values().any(|&c| c > 2)
            || self.rhs.occurrence_counts().values().any(|&c| c > 2)
        {
            return false;
        }
        let block_tags = |w: &Word, idx: &[usize]| -> Vec<Vec<usize>> {
            let sim = w.simple_vars();
            let mut tags = vec![Vec::new()];
            for (v, &i) in w.iter().zip(idx) {
                if sim.contains(v) {
                    tags.push(Vec::new());
                } else {
                    tags.last_mut().expect("nonempty").push(i);
                }
            }
            tags
        };
        let tu = block_tags(&self.lhs, &iu);
        let tv = block_tags(&self.rhs, &iv);
        pairs.iter().zip(tu.iter().zip(&tv)).all(|((a, b), (ta, tb))| {
            let first_len = |t: &[usize]| t.iter().take_while(|&&i| i == 1).count();
            let fa = first_len(ta);
            let fb = first_len(tb);
            ta[fa..].iter().all(|&i| i == 2)
                && tb[fb..].iter().all(|&i| i == 2)
                && a.letters()[fa..] == b.letters()[fb..]
        })
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl fmt::Debug for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Identity({self})")
    }
}

impl FromStr for Identity {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Identity::parse(s)
    }
}

impl Serialize for Identity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A map from variables to words; unmapped variables are fixed.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Substitution {
    mapping: BTreeMap<Variable, Word>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, v: Variable, image: Word) {
        self.mapping.insert(v, image);
    }

    pub fn with(mut self, v: &str, image: &str) -> Self {
        self.insert(
            Variable::named(v),
            Word::parse(image).expect("valid image word"),
        );
        self
    }

    pub fn get(&self, v: &Variable) -> Option<&Word> {
        self.mapping.get(v)
    }

    pub fn image(&self, v: &Variable) -> Word {
        self.mapping
            .get(v)
            .cloned()
            .unwrap_or_else(|| Word::from_vars(vec![v.clone()]))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Variable, &Word)> {
        self.mapping.iter()
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn apply(&self, w: &Word) -> Word {
        let mut out = Vec::with_capacity(w.len());
        for v in w {
            match self.mapping.get(v) {
                Some(img) => out.extend_from_slice(img.letters()),
                None => out.push(v.clone()),
            }
        }
        Word::from_vars(out)
    }

    /// Whether every variable of `domain` maps to itself.
    /// Like `apply`, but unmapped variables are erased.
    pub fn apply_strict(&self, w: &Word) -> Word {
        w.iter()
            .flat_map(|v| self.mapping.get(v).into_iter().flat_map(|img| img.iter().cloned()))
            .collect()
    }

    pub fn is_identity_on(&self, domain: &BTreeSet<Variable>) -> bool {
        domain
            .iter()
            .all(|v| self.mapping.get(v).is_none_or(|img| img.letters() == [v.clone()]))
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, w)) in self.mapping.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v} -> {w}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for Substitution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let m: BTreeMap<&str, String> = self
            .mapping
            .iter()
            .map(|(k, v)| (k.as_str(), v.to_string()))
            .collect();
        m.serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InvertibilityDegree {
    Degree(usize),
    Unreachable,
    /// The breadth-first search hit its state cap before deciding.
    SearchCapped,
}

pub const DEFAULT_INVERTIBILITY_STATES: usize = 1_000_000;

/// Words reachable by one 1-invertible step: swap an adjacent pair `xy`
/// (x ≠ y) when both x and y occur elsewhere in the word.
pub fn one_invertible_neighbours(w: &Word) -> Vec<Word> {
    let counts = w.occurrence_counts();
    let letters = w.letters();
    let mut out = Vec::new();
    for i in 0..letters.len().saturating_sub(1) {
        let (x, y) = (&letters[i], &letters[i + 1]);
        if x != y && counts[x] > 1 && counts[y] > 1 {
            let mut next = letters.to_vec();
            next.swap(i, i + 1);
            out.push(Word::from_vars(next));
        }
    }
    out
}

/// Least number of 1-invertible steps turning `lhs` into `rhs`, by
/// bidirectional breadth-first search.
pub fn invertibility_degree(id: &Identity, max_states: usize) -> InvertibilityDegree {
    if id.is_trivial() {
        return InvertibilityDegree::Degree(0);
    }
    if id.lhs.occurrence_counts() != id.rhs.occurrence_counts() {
        return InvertibilityDegree::Unreachable;
    }
    // simple letters can never move
    let sim = id.lhs.simple_vars();
    let pinned = |w: &Word| -> Vec<(usize, Variable)> {
        w.iter()
            .enumerate()
            .filter(|(_, v)| sim.contains(*v))
            .map(|(i, v)| (i, v.clone()))
            .collect()
    };
    if pinned(&id.lhs) != pinned(&id.rhs) {
        return InvertibilityDegree::Unreachable;
    }

    let mut dist: [HashMap<Word, usize>; 2] = [HashMap::new(), HashMap::new()];
    let mut frontier: [VecDeque<Word>; 2] = [VecDeque::new(), VecDeque::new()];
    dist[0].insert(id.lhs.clone(), 0);
    dist[1].insert(id.rhs.clone(), 0);
    frontier[0].push_back(id.lhs.clone());
    frontier[1].push_back(id.rhs.clone());
    loop {
        if frontier[0].is_empty() || frontier[1].is_empty() {
            return InvertibilityDegree::Unreachable;
        }
        let side = usize::from(frontier[1].len() < frontier[0].len());
        let other = 1 - side;
        let mut best: Option<usize> = None;
        let layer: Vec<Word> = frontier[side].drain(..).collect();
        for w in layer {
            let d = dist[side][&w];
            for next in one_invertible_neighbours(&w) {
                if let Some(&od) = dist[other].get(&next) {
                    best = Some(best.map_or(d + 1 + od, |b| b.min(d + 1 + od)));
                }
                if !dist[side].contains_key(&next) {
                    dist[side].insert(next.clone(), d + 1);
                    frontier[side].push_back(next);
                }
            }
        }
        if let Some(b) = best {
            return InvertibilityDegree::Degree(b);
        }
        if dist[0].len() + dist[1].len() > max_states {
            return InvertibilityDegree::SearchCapped;
        }
    }
}

pub fn var_set<'a>(names: impl IntoIterator<Item = &'a str>) -> BTreeSet<Variable> {
    names.into_iter().map(Variable::named).collect()
}
