//! Enumeration of substitutions that map a pattern word onto a target word
//! (whole-word matching) or onto a factor of it (factor matching).
//!
//! Images may be empty. The search keeps a list of unresolved pattern
//! intervals ("gaps"), each with a known or free target boundary on either
//! side, and repeatedly applies whichever move has the fewest alternatives:
//!
//! * extend a gap from a fixed end by binding (or checking) the variable there,
//! * anchor a later occurrence of an already bound variable inside a gap,
//!   which splits the gap in two,
//! * bind a variable of a gap that has no fixed end to one of the target's
//!   factors,
//! * fix the start of a gap whose left boundary is free.
//!
//! Gaps are also pruned by the lengths their contents can still take, where a
//! variable occurring `r` times in the pattern can only take images occurring
//! at least `r` times in the target. Every complete branch is a distinct
//! `(start, substitution)` pair, so the enumeration is duplicate-free.
//!
//! With a [`Projection`], only one match per distinct projection is
//! visited: as soon as a branch determines the projection, it is searched
//! for a single completion and then abandoned.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::ops::{ControlFlow, Range};

use serde::Serialize;

use crate::word::{Substitution, Variable, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchMode {
    /// The pattern image must equal the whole target.
    Whole,
    /// The pattern image may be any factor of the target.
    Factor,
}

#[derive(Debug, Clone, Default)]
pub struct MatchOptions {
    /// Forbid empty images for every variable (semigroup-style matching).
    pub nonempty_images: bool,
    /// Variables whose images must be nonempty.
    pub required_nonempty: BTreeSet<Variable>,
    pub projection: Option<Projection>,
}

/// What two matches must share to count as the same: the target positions
/// of the pattern boundaries in `cuts` (boundary q lies before pattern
/// letter q) and the images of `vars`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Projection {
    pub cuts: Vec<usize>,
    pub vars: BTreeSet<Variable>,
}

impl MatchOptions {
    pub fn nonempty() -> Self {
        MatchOptions {
            nonempty_images: true,
            ..Default::default()
        }
    }

    pub fn requiring(vars: impl IntoIterator<Item = Variable>) -> Self {
        MatchOptions {
            required_nonempty: vars.into_iter().collect(),
            ..Default::default()
        }
    }

    pub fn projected(mut self, projection: Projection) -> Self {
        self.projection = Some(projection);
        self
    }
}

/// A factor match: `prefix · φ(pattern) · suffix = target`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Match {
    pub substitution: Substitution,
    pub prefix: Word,
    pub suffix: Word,
    pub span: Range<usize>,
}

impl Match {
    /// Reassembles the target from the match.
    pub fn reassemble(&self, pattern: &Word) -> Word {
        self.prefix
            .concat(&self.substitution.apply(pattern))
            .concat(&self.suffix)
    }
}

/// Borrowed view of a match handed to enumeration callbacks.
pub struct MatchView<'a> {
    problem: &'a Problem<'a>,
    bind: &'a [Option<(usize, usize)>],
    start: usize,
    end: usize,
}

impl MatchView<'_> {
    pub fn span(&self) -> Range<usize> {
        self.start..self.end
    }

    /// Image of a pattern variable as a slice of the target.
    pub fn image(&self, v: &Variable) -> Option<&[Variable]> {
        let idx = *self.problem.var_index.get(v)?;
        let (s, l) = self.bind[idx].expect("complete match binds every variable");
        Some(&self.problem.target.letters()[s..s + l])
    }

    pub fn image_len(&self, v: &Variable) -> Option<usize> {
        let idx = *self.problem.var_index.get(v)?;
        self.bind[idx].map(|(_, l)| l)
    }

    /// φ(w) for a word over the pattern's variables.
    pub fn image_of_word(&self, w: &Word) -> Word {
        w.iter()
            .flat_map(|v| self.image(v).unwrap_or(&[]).iter().cloned())
            .collect()
    }

    pub fn substitution(&self) -> Substitution {
        let mut phi = Substitution::new();
        for (i, v) in self.problem.vars.iter().enumerate() {
            let (s, l) = self.bind[i].expect("complete match binds every variable");
            phi.insert(v.clone(), self.problem.target.factor(s..s + l));
        }
        phi
    }

    pub fn to_match(&self) -> Match {
        Match {
            substitution: self.substitution(),
            prefix: self.problem.target.factor(0..self.start),
            suffix: self.problem.target.factor(self.end..self.problem.target.len()),
            span: self.span(),
        }
    }
}

/// All substitutions φ with φ(pattern) = target.
pub fn match_whole(pattern: &Word, target: &Word) -> Vec<Substitution> {
    let mut out = Vec::new();
    let _ = for_each_match(
        pattern,
        target,
        MatchMode::Whole,
        &MatchOptions::default(),
        |m| {
            out.push(m.substitution());
            ControlFlow::Continue(())
        },
    );
    out
}

/// All `(prefix, φ, suffix)` with prefix · φ(pattern) · suffix = target.
pub fn match_factor(pattern: &Word, target: &Word) -> Vec<Match> {
    match_factor_with(pattern, target, &MatchOptions::default())
}

pub fn match_factor_with(pattern: &Word, target: &Word, opts: &MatchOptions) -> Vec<Match> {
    let mut out = Vec::new();
    let _ = for_each_match(pattern, target, MatchMode::Factor, opts, |m| {
        out.push(m.to_match());
        ControlFlow::Continue(())
    });
    out
}

/// Runs `visit` on every match; stops as soon as it returns `Break`.
pub fn for_each_match<F>(
    pattern: &Word,
    target: &Word,
    mode: MatchMode,
    opts: &MatchOptions,
    mut visit: F,
) -> ControlFlow<()>
where
    F: FnMut(&MatchView<'_>) -> ControlFlow<()>,
{
    let problem = Problem::new(pattern, target, opts);
    let m = target.len();
    if pattern.is_empty() {
        let points: Vec<usize> = match mode {
            MatchMode::Whole if m == 0 => vec![0],
            MatchMode::Whole => vec![],
            // without cuts every point has the same (empty) projection
            MatchMode::Factor if problem.proj.as_ref().is_some_and(|(c, _)| c.is_empty()) => vec![0],
            MatchMode::Factor => (0..=m).collect(),
        };
        for p in points {
            visit(&MatchView {
                problem: &problem,
                bind: &[],
                start: p,
                end: p,
            })?;
        }
        return ControlFlow::Continue(());
    }
    if problem.required.iter().zip(&problem.occ).any(|(&r, _)| r) && m == 0 {
        return ControlFlow::Continue(());
    }
    let state = State {
        bind: vec![None; problem.vars.len()],
        gaps: vec![Gap {
            pi: 0,
            pj: problem.pat.len(),
            lo: (mode == MatchMode::Whole).then_some(0),
            hi: (mode == MatchMode::Whole).then_some(m),
        }],
        start: (mode == MatchMode::Whole).then_some(0),
        end: (mode == MatchMode::Whole).then_some(m),
    };
    let mut memo = Memo::default();
    match problem.search(state, &mut visit, &mut memo, false) {
        ControlFlow::Break(Stop::Visitor) => ControlFlow::Break(()),
        _ => ControlFlow::Continue(()),
    }
}

struct Problem<'a> {
    target: &'a Word,
    vars: Vec<Variable>,
    var_index: HashMap<Variable, usize>,
    pat: Vec<usize>,
    occ: Vec<usize>,
    required: Vec<bool>,
    tgt: Vec<u32>,
    /// lcp[a * (m + 1) + b]: longest common prefix of target[a..] and target[b..]
    lcp: Vec<u16>,
    /// max_len_for_occ[r]: longest factor occurring at least r times
    max_len_for_occ: Vec<usize>,
    /// counts[s * (m + 1) + l]: occurrences of target[s..s + l]
    counts: Vec<u16>,
    /// first occurrence of every distinct nonempty factor, as (start, len)
    distinct: Vec<(usize, usize)>,
    /// projection cuts and variable indices
    proj: Option<(Vec<usize>, Vec<usize>)>,
}

#[derive(Clone, Debug)]
struct Gap {
    pi: usize,
    pj: usize,
    lo: Option<usize>,
    hi: Option<usize>,
}

/// Residual problems known to have no completion.
#[derive(Default)]
struct Memo {
    dead: HashSet<Vec<u32>>,
    /// projections already visited
    seen: HashSet<Vec<u32>>,
    /// leaves reached, counting those skipped as already seen
    found: usize,
}

/// Why a search stopped early.
enum Stop {
    /// The caller's visitor asked to stop.
    Visitor,
    /// A projection was visited; abandon the rest of its branch.
    Projected,
}

const MEMO_CAP: usize = 1 << 20;

#[derive(Clone)]
struct State {
    bind: Vec<Option<(usize, usize)>>,
    gaps: Vec<Gap>,
    start: Option<usize>,
    end: Option<usize>,
}

/// Prefix sums of the image-length bounds of each pattern position.
struct Prefix {
    lo: Vec<usize>,
    hi: Vec<usize>,
}

impl Prefix {
    fn bounds(&self, range: Range<usize>) -> (usize, usize) {
        (
            self.lo[range.end] - self.lo[range.start],
            self.hi[range.end].saturating_sub(self.hi[range.start]),
        )
    }
}

enum Move {
    ExtendLeft { g: usize, lens: Vec<usize> },
    ExtendRight { g: usize, lens: Vec<usize> },
    Anchor { g: usize, q: usize, at: Vec<usize> },
    Bind { v: usize, images: Vec<(usize, usize)> },
    Start { g: usize, at: Vec<usize> },
}

impl Move {
    fn cost(&self) -> usize {
        match self {
            Move::ExtendLeft { lens, .. } | Move::ExtendRight { lens, .. } => lens.len(),
            Move::Anchor { at, .. } | Move::Start { at, .. } => at.len(),
            // binding alone never fixes a boundary; prefer structural moves on ties
            Move::Bind { images, .. } => images.len() + 1,
        }
    }
}

impl<'a> Problem<'a> {
    fn new(pattern: &Word, target: &'a Word, opts: &MatchOptions) -> Self {
        let mut var_index = HashMap::new();
        let mut vars = Vec::new();
        let pat: Vec<usize> = pattern
            .iter()
            .map(|v| {
                *var_index.entry(v.clone()).or_insert_with(|| {
                    vars.push(v.clone());
                    vars.len() - 1
                })
            })
            .collect();
        let mut occ = vec![0; vars.len()];
        for &v in &pat {
            occ[v] += 1;
        }
        let required = vars
            .iter()
            .map(|v| opts.nonempty_images || opts.required_nonempty.contains(v))
            .collect();

        let mut letter_ids: HashMap<&Variable, u32> = HashMap::new();
        let tgt: Vec<u32> = target
            .iter()
            .map(|v| {
                let next = letter_ids.len() as u32;
                *letter_ids.entry(v).or_insert(next)
            })
            .collect();
        let m = tgt.len();
        let w = m + 1;
        let mut lcp = vec![0u16; w * w];
        for a in (0..m).rev() {
            for b in (0..m).rev() {
                if tgt[a] == tgt[b] {
                    lcp[a * w + b] = lcp[(a + 1) * w + b + 1] + 1;
                }
            }
        }
        let proj = opts.projection.as_ref().map(|p| {
            let cuts = p.cuts.iter().copied().filter(|&q| q <= pat.len()).collect();
            let ids = p.vars.iter().filter_map(|v| var_index.get(v).copied()).collect();
            (cuts, ids)
        });
        let mut counts = vec![0u16; w * w];
        for a in 0..m {
            let row = &mut counts[a * w..(a + 1) * w];
            for b in 0..m {
                row[lcp[a * w + b] as usize] += 1;
            }
            for l in (1..m).rev() {
                row[l] += row[l + 1];
            }
        }
        let mut distinct = Vec::new();
        for s in 0..m {
            // target[s..s + l] first occurs at s exactly when no earlier start shares l letters
            let shared = (0..s).map(|b| lcp[b * w + s] as usize).max().unwrap_or(0);
            distinct.extend((shared + 1..=m - s).map(|l| (s, l)));
        }
        let max_occ = occ.iter().copied().max().unwrap_or(1).max(1);
        let mut max_len_for_occ = vec![m; max_occ + 1];
        for (r, slot) in max_len_for_occ.iter_mut().enumerate().skip(2) {
            *slot = distinct
                .iter()
                .filter(|&&(s, l)| counts[s * w + l] as usize >= r)
                .map(|&(_, l)| l)
                .max()
                .unwrap_or(0);
        }
        Problem {
            target,
            vars,
            var_index,
            pat,
            occ,
            required,
            tgt,
            lcp,
            max_len_for_occ,
            counts,
            distinct,
            proj,
        }
    }

    fn m(&self) -> usize {
        self.tgt.len()
    }

    fn lcp(&self, a: usize, b: usize) -> usize {
        self.lcp[a * (self.m() + 1) + b] as usize
    }

    fn factor_count(&self, s: usize, l: usize) -> usize {
        self.counts[s * (self.m() + 1) + l] as usize
    }

    fn min_image(&self, v: usize) -> usize {
        usize::from(self.required[v])
    }

    fn max_image(&self, v: usize) -> usize {
        self.max_len_for_occ[self.occ[v].min(self.max_len_for_occ.len() - 1)]
    }

    fn bounds(&self, st: &State, range: Range<usize>) -> (usize, usize) {
        let mut lo = 0;
        let mut hi = 0usize;
        for q in range {
            let v = self.pat[q];
            match st.bind[v] {
                Some((_, l)) => {
                    lo += l;
                    hi += l;
                }
                None => {
                    lo += self.min_image(v);
                    hi = hi.saturating_add(self.max_image(v));
                }
            }
        }
        (lo, hi)
    }

    fn prefix(&self, st: &State) -> Prefix {
        let mut lo = Vec::with_capacity(self.pat.len() + 1);
        let mut hi = Vec::with_capacity(self.pat.len() + 1);
        lo.push(0);
        hi.push(0);
        for &v in &self.pat {
            let (a, b) = match st.bind[v] {
                Some((_, l)) => (l, l),
                None => (self.min_image(v), self.max_image(v)),
            };
            lo.push(lo.last().unwrap() + a);
            hi.push(hi.last().unwrap() + b);
        }
        Prefix { lo, hi }
    }

    /// Whether the image (s, l) is admissible for unbound variable v.
    fn admissible(&self, v: usize, s: usize, l: usize) -> bool {
        if l == 0 {
            return !self.required[v];
        }
        l <= self.max_image(v) && (self.occ[v] < 2 || self.factor_count(s, l) >= self.occ[v])
    }

    /// Resolves empty gaps and checks length feasibility of the rest.
    fn normalize(&self, st: &mut State) -> bool {
        let m = self.m();
        let plen = self.pat.len();
        let mut i = 0;
        while i < st.gaps.len() {
            let g = st.gaps[i].clone();
            if g.pi == g.pj {
                let pos = match (g.lo, g.hi) {
                    (Some(a), Some(b)) if a != b => return false,
                    (Some(a), _) => a,
                    (None, Some(b)) => b,
                    (None, None) => unreachable!("free empty gap"),
                };
                if g.pi == 0 {
                    st.start = Some(pos);
                }
                if g.pj == plen {
                    st.end = Some(pos);
                }
                st.gaps.swap_remove(i);
                continue;
            }
            let (min, max) = self.bounds(st, g.pi..g.pj);
            let ok = match (g.lo, g.hi) {
                (Some(a), Some(b)) => a <= b && min <= b - a && b - a <= max,
                (Some(a), None) => a + min <= m,
                (None, Some(b)) => min <= b,
                (None, None) => min <= m,
            };
            if !ok {
                return false;
            }
            i += 1;
        }
        true
    }

    /// Residual-problem key: the open gaps plus the images of every
    /// variable still occurring in them, each image named by the first
    /// occurrence of its factor.
    fn key(&self, st: &State) -> Vec<u32> {
        let mut gaps: Vec<&Gap> = st.gaps.iter().collect();
        gaps.sort_by_key(|g| (g.pi, g.pj));
        let opt = |x: Option<usize>| x.map_or(0, |v| v as u32 + 1);
        let mut key = Vec::with_capacity(4 * gaps.len() + 8);
        let mut vars = BTreeSet::new();
        for g in gaps {
            key.extend([g.pi as u32, g.pj as u32, opt(g.lo), opt(g.hi)]);
            vars.extend(self.pat[g.pi..g.pj].iter().copied());
        }
        key.push(u32::MAX);
        for v in vars {
            match st.bind[v] {
                Some((s, l)) => {
                    let first = (0..=s).find(|&b| self.lcp(b, s) >= l).unwrap_or(s);
                    key.extend([v as u32, first as u32 + 1, l as u32]);
                }
                None => key.extend([v as u32, 0, 0]),
            }
        }
        key
    }

    /// Target position of pattern boundary q, if the state fixes it.
    fn boundary(&self, st: &State, q: usize) -> Option<usize> {
        if st.gaps.iter().any(|g| g.pi < q && q < g.pj) {
            return None;
        }
        let len = |r: Range<usize>| -> Option<usize> {
            self.pat[r].iter().map(|&v| st.bind[v].map(|(_, l)| l)).sum()
        };
        let left = st.gaps.iter().filter(|g| g.pj <= q).max_by_key(|g| g.pj);
        let from_left = match left {
            Some(g) => g.hi.zip(len(g.pj..q)).map(|(h, l)| h + l),
            None => st.start.zip(len(0..q)).map(|(a, l)| a + l),
        };
        if from_left.is_some() {
            return from_left;
        }
        let right = st.gaps.iter().filter(|g| g.pi >= q).min_by_key(|g| g.pi);
        match right {
            Some(g) => g.lo.zip(len(q..g.pi)).map(|(a, l)| a - l),
            None => st.end.zip(len(q..self.pat.len())).map(|(b, l)| b - l),
        }
    }

    fn projection_key(&self, st: &State) -> Option<Vec<u32>> {
        let (cuts, vars) = self.proj.as_ref()?;
        let mut key = Vec::with_capacity(cuts.len() + 2 * vars.len());
        for &q in cuts {
            key.push(self.boundary(st, q)? as u32);
        }
        for &v in vars {
            let (s, l) = st.bind[v]?;
            let first = (0..=s).find(|&b| self.lcp(b, s) >= l).unwrap_or(s);
            key.extend([first as u32, l as u32]);
        }
        Some(key)
    }

    /// `projected` is set below the node where the projection got fixed.
    fn search<F>(&self, mut st: State, visit: &mut F, memo: &mut Memo, projected: bool) -> ControlFlow<Stop>
    where
        F: FnMut(&MatchView<'_>) -> ControlFlow<()>,
    {
        if !self.normalize(&mut st) {
            return ControlFlow::Continue(());
        }
        let proj_key = if self.proj.is_some() { self.projection_key(&st) } else { None };
        if let Some(k) = &proj_key {
            if memo.seen.contains(k) {
                memo.found += 1;
                return ControlFlow::Continue(());
            }
        }
        if st.gaps.is_empty() {
            memo.found += 1;
            let view = MatchView {
                problem: self,
                bind: &st.bind,
                start: st.start.expect("resolved start"),
                end: st.end.expect("resolved end"),
            };
            if visit(&view).is_break() {
                return ControlFlow::Break(Stop::Visitor);
            }
            if let Some(k) = proj_key {
                memo.seen.insert(k);
                if projected {
                    return ControlFlow::Break(Stop::Projected);
                }
            }
            return ControlFlow::Continue(());
        }
        let key = self.key(&st);
        if memo.dead.contains(&key) {
            return ControlFlow::Continue(());
        }
        let before = memo.found;
        let fixed_here = proj_key.is_some() && !projected;
        match self.expand(st, visit, memo, proj_key.is_some()) {
            ControlFlow::Break(Stop::Projected) if fixed_here => return ControlFlow::Continue(()),
            ControlFlow::Break(stop) => return ControlFlow::Break(stop),
            ControlFlow::Continue(()) => {}
        }
        if memo.found == before && memo.dead.len() < MEMO_CAP {
            memo.dead.insert(key);
        }
        ControlFlow::Continue(())
    }

    fn expand<F>(&self, st: State, visit: &mut F, memo: &mut Memo, projected: bool) -> ControlFlow<Stop>
    where
        F: FnMut(&MatchView<'_>) -> ControlFlow<()>,
    {
        let Some(mv) = self.best_move(&st) else {
            return ControlFlow::Continue(());
        };
        match mv {
            Move::ExtendLeft { g, lens } => {
                for l in lens {
                    let mut next = st.clone();
                    let gap = &mut next.gaps[g];
                    let a = gap.lo.expect("fixed left end");
                    let v = self.pat[gap.pi];
                    gap.pi += 1;
                    gap.lo = Some(a + l);
                    if next.bind[v].is_none() {
                        next.bind[v] = Some((a, l));
                    }
                    self.search(next, visit, memo, projected)?;
                }
            }
            Move::ExtendRight { g, lens } => {
                for l in lens {
                    let mut next = st.clone();
                    let gap = &mut next.gaps[g];
                    let b = gap.hi.expect("fixed right end");
                    gap.pj -= 1;
                    let v = self.pat[gap.pj];
                    gap.hi = Some(b - l);
                    if next.bind[v].is_none() {
                        next.bind[v] = Some((b - l, l));
                    }
                    self.search(next, visit, memo, projected)?;
                }
            }
            Move::Anchor { g, q, at } => {
                let v = self.pat[q];
                let (_, l) = st.bind[v].expect("anchors are bound");
                for b in at {
                    let mut next = st.clone();
                    let gap = next.gaps[g].clone();
                    next.gaps[g] = Gap {
                        pi: gap.pi,
                        pj: q,
                        lo: gap.lo,
                        hi: Some(b),
                    };
                    next.gaps.push(Gap {
                        pi: q + 1,
                        pj: gap.pj,
                        lo: Some(b + l),
                        hi: gap.hi,
                    });
                    if gap.pi == 0 && q == 0 {
                        next.start = Some(b);
                    }
                    self.search(next, visit, memo, projected)?;
                }
            }
            Move::Bind { v, images } => {
                for img in images {
                    let mut next = st.clone();
                    next.bind[v] = Some(img);
                    self.search(next, visit, memo, projected)?;
                }
            }
            Move::Start { g, at } => {
                for a in at {
                    let mut next = st.clone();
                    next.gaps[g].lo = Some(a);
                    if next.gaps[g].pi == 0 {
                        next.start = Some(a);
                    }
                    self.search(next, visit, memo, projected)?;
                }
            }
        }
        ControlFlow::Continue(())
    }

    fn best_move(&self, st: &State) -> Option<Move> {
        let mut best: Option<Move> = None;
        let mut consider = |mv: Move| -> bool {
            let c = mv.cost();
            if best.as_ref().is_none_or(|b| c < b.cost()) {
                best = Some(mv);
            }
            c == 0
        };
        let pre = self.prefix(st);
        let mut free = Vec::new();
        for (g, gap) in st.gaps.iter().enumerate() {
            if let Some(mv) = self.extend_left(st, &pre, g, gap) {
                if consider(mv) {
                    return best;
                }
            }
            if let Some(mv) = self.extend_right(st, &pre, g, gap) {
                if consider(mv) {
                    return best;
                }
            }
            for q in gap.pi..gap.pj {
                if let Some(mv) = self.anchor(st, &pre, g, gap, q) {
                    if consider(mv) {
                        return best;
                    }
                }
            }
            if gap.lo.is_none() {
                if consider(self.start(&pre, g, gap)) {
                    return best;
                }
            }
            if gap.lo.is_none() && gap.hi.is_none() {
                free.extend(
                    self.pat[gap.pi..gap.pj]
                        .iter()
                        .copied()
                        .filter(|&v| st.bind[v].is_none()),
                );
            }
        }
        free.sort_unstable();
        free.dedup();
        for v in free {
            let limit = best.as_ref().map_or(usize::MAX, Move::cost);
            if let Some(mv) = self.bind(v, limit) {
                best = Some(mv);
            }
        }
        best
    }

    fn extend_left(&self, st: &State, pre: &Prefix, g: usize, gap: &Gap) -> Option<Move> {
        let a = gap.lo?;
        let v = self.pat[gap.pi];
        let (rest_min, rest_max) = pre.bounds(gap.pi + 1..gap.pj);
        let limit = gap.hi.unwrap_or(self.m());
        let lens = match st.bind[v] {
            Some((s, l)) => {
                if a + l + rest_min <= limit && self.lcp(s, a) >= l {
                    vec![l]
                } else {
                    vec![]
                }
            }
            None => {
                let max = limit.saturating_sub(a + rest_min).min(self.max_image(v));
                let min = gap
                    .hi
                    .map_or(0, |b| (b - a).saturating_sub(rest_max))
                    .max(self.min_image(v));
                (min..=max).filter(|&l| self.admissible(v, a, l)).collect()
            }
        };
        Some(Move::ExtendLeft { g, lens })
    }

    fn extend_right(&self, st: &State, pre: &Prefix, g: usize, gap: &Gap) -> Option<Move> {
        let b = gap.hi?;
        let v = self.pat[gap.pj - 1];
        let (rest_min, rest_max) = pre.bounds(gap.pi..gap.pj - 1);
        let floor = gap.lo.unwrap_or(0);
        let lens = match st.bind[v] {
            Some((s, l)) => {
                if l + rest_min + floor <= b && self.lcp(s, b - l) >= l {
                    vec![l]
                } else {
                    vec![]
                }
            }
            None => {
                let max = b.saturating_sub(floor + rest_min).min(self.max_image(v));
                let min = gap
                    .lo
                    .map_or(0, |a| (b - a).saturating_sub(rest_max))
                    .max(self.min_image(v));
                (min..=max)
                    .filter(|&l| self.admissible(v, b - l, l))
                    .collect()
            }
        };
        Some(Move::ExtendRight { g, lens })
    }

    fn anchor(&self, st: &State, pre: &Prefix, g: usize, gap: &Gap, q: usize) -> Option<Move> {
        let v = self.pat[q];
        let (s, l) = st.bind[v]?;
        if l == 0 {
            return None;
        }
        let (lmin, lmax) = pre.bounds(gap.pi..q);
        let (rmin, rmax) = pre.bounds(q + 1..gap.pj);
        let m = self.m();
        let from = gap.lo.unwrap_or(0) + lmin;
        let to = gap.hi.unwrap_or(m).checked_sub(l + rmin)?;
        let at = (from..=to)
            .filter(|&b| {
                self.lcp(s, b) >= l
                    && gap.lo.is_none_or(|a| b - a <= lmax)
                    && gap.hi.is_none_or(|h| h - (b + l) <= rmax)
            })
            .collect();
        Some(Move::Anchor { g, q, at })
    }

    fn start(&self, pre: &Prefix, g: usize, gap: &Gap) -> Move {
        let (min, max) = pre.bounds(gap.pi..gap.pj);
        let m = self.m();
        let at = match gap.hi {
            Some(b) => (b.saturating_sub(max)..=b.saturating_sub(min))
                .filter(|&a| a + min <= b)
                .collect(),
            None => (0..=m.saturating_sub(min)).collect(),
        };
        Move::Start { g, at }
    }

    /// Candidate images for v, or None if there are not fewer than `limit` - 1.
    fn bind(&self, v: usize, limit: usize) -> Option<Move> {
        let mut images = Vec::new();
        if !self.required[v] {
            images.push((0, 0));
        }
        for &(s, l) in &self.distinct {
            if self.admissible(v, s, l) {
                if images.len() + 2 >= limit {
                    return None;
                }
                images.push((s, l));
            }
        }
        (images.len() + 1 < limit).then_some(Move::Bind { v, images })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse_compact(s).unwrap()
    }

    #[test]
    fn whole_matches_of_linear_pattern() {
        let subs = match_whole(&w("xy"), &w("ab"));
        assert_eq!(subs.len(), 3);
        let images: BTreeSet<(String, String)> = subs
            .iter()
            .map(|s| {
                (
                    s.image(&Variable::named("x")).to_string(),
                    s.image(&Variable::named("y")).to_string(),
                )
            })
            .collect();
        assert!(images.contains(&("1".into(), "a b".into())));
        assert!(images.contains(&("a".into(), "b".into())));
        assert!(images.contains(&("a b".into(), "1".into())));
    }

    #[test]
    fn repeated_variables_bind_consistently() {
        let subs = match_whole(&w("xx"), &w("abab"));
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].image(&Variable::named("x")), w("ab"));
        assert!(match_whole(&w("xx"), &w("aba")).is_empty());
        assert_eq!(match_whole(&w("xx"), &Word::empty()).len(), 1);
    }

    #[test]
    fn factor_matches_of_single_variable() {
        let ms = match_factor(&w("x"), &w("ab"));
        assert_eq!(ms.len(), 6);
        let empties = ms.iter().filter(|m| m.span.is_empty()).count();
        assert_eq!(empties, 3);
        for m in &ms {
            assert_eq!(m.reassemble(&w("x")), w("ab"));
        }
    }

    #[test]
    fn factor_match_finds_whole_embedding() {
        let ms = match_factor(&w("xyx"), &w("aba"));
        assert!(ms.iter().any(|m| m.prefix.is_empty()
            && m.suffix.is_empty()
            && m.substitution.image(&Variable::named("x")) == w("a")
            && m.substitution.image(&Variable::named("y")) == w("b")));
    }

    #[test]
    fn required_and_nonempty_options() {
        let opts = MatchOptions::nonempty();
        let ms = match_factor_with(&w("x"), &w("ab"), &opts);
        assert_eq!(ms.len(), 3);
        let opts = MatchOptions::requiring([Variable::named("y")]);
        for m in match_factor_with(&w("xy"), &w("abc"), &opts) {
            assert!(!m.substitution.image(&Variable::named("y")).is_empty());
        }
        assert!(match_factor_with(&w("x"), &Word::empty(), &MatchOptions::nonempty()).is_empty());
    }

    #[test]
    fn empty_pattern() {
        assert_eq!(match_factor(&Word::empty(), &w("ab")).len(), 3);
        assert_eq!(match_whole(&Word::empty(), &w("ab")).len(), 0);
        assert_eq!(match_whole(&Word::empty(), &Word::empty()).len(), 1);
    }

    #[test]
    fn early_stop() {
        let mut seen = 0;
        let flow = for_each_match(
            &w("xyz"),
            &w("abcabc"),
            MatchMode::Factor,
            &MatchOptions::default(),
            |_| {
                seen += 1;
                if seen == 3 {
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            },
        );
        assert_eq!(flow, ControlFlow::Break(()));
        assert_eq!(seen, 3);
    }
}
