//! Search for large `(d+1)`-uniform families of VC-dimension at most `d`.
//!
//! Feasibility is tracked incrementally. For each chosen member `S` we keep
//! the set of traces `F ∩ S` seen so far as a bitmask over the `2^(d+1)`
//! subsets of `S`; the family is infeasible as soon as one of those masks is
//! full. Adding `X` updates every member's mask and creates one for `X`.
//! Infeasibility is inherited by supersets, so a candidate that cannot be
//! added now can be dropped from the whole subtree.
//!
//! Exact mode is a branch-and-bound over candidates in a fixed order. The
//! root is split into one subtree per first member; subtrees run in parallel
//! but never share bounds, so results and node counts do not depend on the
//! thread count.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::io::member_line;
use crate::subset::{binomial, GroundSet, Subset};
use crate::system::SetSystem;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Widest trace mask we track (patterns of a 6-set fit in a `u64`).
const MAX_TRACKED_D: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exact,
    Greedy,
    Local,
}

impl std::str::FromStr for SearchMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "exact" => Ok(Self::Exact),
            "greedy" => Ok(Self::Greedy),
            "local" => Ok(Self::Local),
            other => Err(format!("unknown search mode `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Optimality {
    ProvedOptimal,
    LowerBoundOnly,
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub mode: SearchMode,
    /// Node budget; exact search gives up past it.
    pub budget: u64,
    pub threads: usize,
    /// Shuffles the candidate order when set; colex order otherwise.
    pub order_seed: Option<u64>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            mode: SearchMode::Exact,
            budget: DEFAULT_BUDGET,
            threads: 1,
            order_seed: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub n: usize,
    pub d: usize,
    pub mode: SearchMode,
    pub family: SetSystem,
    pub optimality: Optimality,
    pub nodes: u64,
    pub budget: u64,
    pub budget_exhausted: bool,
    pub wall_time: Duration,
}

impl SearchResult {
    pub fn best_size(&self) -> usize {
        self.family.len()
    }

    pub fn is_proved_optimal(&self) -> bool {
        self.optimality == Optimality::ProvedOptimal
    }

    /// JSON view. Wall time is left out unless asked for, so the default
    /// output is byte-stable.
    pub fn to_json(&self, include_timing: bool) -> SearchResultJson {
        SearchResultJson {
            version: crate::VERSION,
            n: self.n,
            d: self.d,
            mode: self.mode,
            best_size: self.best_size(),
            optimality: self.optimality,
            frankl_pach_bound: binomial(self.n as u64, self.d as u64),
            nodes: self.nodes,
            budget: self.budget,
            budget_exhausted: self.budget_exhausted,
            family: std::iter::once(format!("n {}", self.n))
                .chain(self.family.members().iter().map(|m| member_line(*m)))
                .collect(),
            wall_time_ms: include_timing.then_some(self.wall_time.as_secs_f64() * 1e3),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchResultJson {
    pub version: &'static str,
    pub n: usize,
    pub d: usize,
    pub mode: SearchMode,
    pub best_size: usize,
    pub optimality: Optimality,
    pub frankl_pach_bound: u128,
    pub nodes: u64,
    pub budget: u64,
    pub budget_exhausted: bool,
    /// The family in the text file format, one line per entry.
    pub family: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

/// Candidate sets plus the pairwise trace patterns between them.
struct Candidates {
    sets: Vec<Subset>,
    /// `pattern[x * len + s]` = bits of `X ∩ S` packed along `S`'s elements.
    pattern: Vec<u8>,
    full: u64,
}

impl Candidates {
    fn new(sets: Vec<Subset>, d: usize) -> Self {
        let positions: Vec<Vec<usize>> = sets.iter().map(|s| s.to_vec()).collect();
        let len = sets.len();
        let mut pattern = vec![0u8; len * len];
        for (x, &xs) in sets.iter().enumerate() {
            for (s, pos) in positions.iter().enumerate() {
                pattern[x * len + s] = xs.compress(pos) as u8;
            }
        }
        let full = if d + 1 == 6 {
            u64::MAX
        } else {
            (1u64 << (1u32 << (d + 1))) - 1
        };
        Self { sets, pattern, full }
    }

    fn len(&self) -> usize {
        self.sets.len()
    }

    fn pat(&self, x: usize, s: usize) -> u32 {
        u32::from(self.pattern[x * self.sets.len() + s])
    }
}

/// A feasible family under construction.
#[derive(Clone, Default)]
struct Tracker {
    members: Vec<usize>,
    traces: Vec<u64>,
}

impl Tracker {
    fn can_add(&self, c: &Candidates, x: usize) -> bool {
        let mut own = 1u64 << c.pat(x, x);
        for (&s, &t) in self.members.iter().zip(&self.traces) {
            if t | 1u64 << c.pat(x, s) == c.full {
                return false;
            }
            own |= 1u64 << c.pat(s, x);
        }
        own != c.full
    }

    fn add(&mut self, c: &Candidates, x: usize) {
        let mut own = 1u64 << c.pat(x, x);
        for (&s, t) in self.members.iter().zip(self.traces.iter_mut()) {
            *t |= 1u64 << c.pat(x, s);
            own |= 1u64 << c.pat(s, x);
        }
        self.members.push(x);
        self.traces.push(own);
    }

    fn len(&self) -> usize {
        self.members.len()
    }

    fn family(&self, c: &Candidates, ground: GroundSet) -> SetSystem {
        let mut members: Vec<Subset> = self.members.iter().map(|&i| c.sets[i]).collect();
        members.sort();
        SetSystem::new(ground, members).expect("candidates are distinct")
    }
}

fn check_params(n: usize, d: usize, mode: SearchMode) -> Result<GroundSet> {
    let ground = GroundSet::new(n)?;
    if n < d + 1 {
        return Err(Error::Precondition(format!(
            "search needs n >= d + 1, got n={n}, d={d}"
        )));
    }
    if mode == SearchMode::Exact && (n > 12 || d > 3) {
        return Err(Error::Precondition(format!(
            "exact search is limited to n <= 12 and d <= 3, got n={n}, d={d}"
        )));
    }
    if d > MAX_TRACKED_D || binomial(n as u64, d as u64 + 1) > 4096 {
        return Err(Error::Precondition(format!("search space too large for n={n}, d={d}")));
    }
    Ok(ground)
}

fn candidates(ground: GroundSet, d: usize, seed: Option<u64>) -> Candidates {
    let mut sets: Vec<Subset> = ground.k_subsets(d + 1).collect();
    if let Some(seed) = seed {
        sets.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    Candidates::new(sets, d)
}

/// Panics if an incumbent breaks `|F| <= |∂_d F|`, which cannot happen for a
/// VC-bounded family.
fn shadow_tripwire(family: &SetSystem, d: usize) {
    let shadow = family.shadow(d).len();
    assert!(
        family.len() <= shadow,
        "incumbent with {} members has only {shadow} d-sets in its shadow",
        family.len()
    );
}

/// Adds candidates in order whenever feasible.
fn first_fit(c: &Candidates) -> Tracker {
    let mut t = Tracker::default();
    for x in 0..c.len() {
        if t.can_add(c, x) {
            t.add(c, x);
        }
    }
    t
}

/// Adds the feasible candidate that leaves the most candidates addable;
/// ties go to the earliest candidate.
fn greedy(c: &Candidates) -> (Tracker, u64) {
    let mut t = Tracker::default();
    let mut addable: Vec<usize> = (0..c.len()).collect();
    let mut evals = 0u64;
    while !addable.is_empty() {
        let mut best: Option<(usize, usize)> = None;
        for &x in &addable {
            let mut next = t.clone();
            next.add(c, x);
            let score = addable.iter().filter(|&&y| y != x && next.can_add(c, y)).count();
            evals += addable.len() as u64;
            if best.is_none_or(|(_, s)| score > s) {
                best = Some((x, score));
            }
        }
        let (x, _) = best.expect("addable is nonempty");
        t.add(c, x);
        addable.retain(|&y| y != x && t.can_add(c, y));
    }
    (t, evals)
}

/// Repeated 1-out/2-in swaps starting from the greedy family.
fn local(c: &Candidates, budget: u64) -> (Tracker, u64, bool) {
    let (mut t, mut evals) = greedy(c);
    'improve: loop {
        for r in 0..t.len() {
            let rest: Vec<usize> = t.members.iter().copied().filter(|&m| m != t.members[r]).collect();
            let mut base = Tracker::default();
            for &m in &rest {
                base.add(c, m);
            }
            let removed = t.members[r];
            let addable: Vec<usize> = (0..c.len())
                .filter(|&x| x != removed && !rest.contains(&x) && base.can_add(c, x))
                .collect();
            for (i, &a) in addable.iter().enumerate() {
                let mut with_a = base.clone();
                with_a.add(c, a);
                for &b in &addable[i + 1..] {
                    evals += 1;
                    if evals > budget {
                        return (t, evals, true);
                    }
                    if with_a.can_add(c, b) {
                        with_a.add(c, b);
                        t = with_a;
                        continue 'improve;
                    }
                }
            }
        }
        return (t, evals, false);
    }
}

struct Exact<'a> {
    c: &'a Candidates,
    d: usize,
    ground: GroundSet,
    cap: usize,
    budget: u64,
    total: &'a AtomicU64,
    aborted: &'a AtomicBool,
}

struct SubtreeResult {
    best: Option<SetSystem>,
    nodes: u64,
}

impl Exact<'_> {
    fn subtree(&self, root: usize, rest: &[usize], floor: usize) -> SubtreeResult {
        let mut t = Tracker::default();
        t.add(self.c, root);
        let remaining: Vec<usize> = rest.iter().copied().filter(|&y| t.can_add(self.c, y)).collect();
        let mut out = SubtreeResult { best: None, nodes: 0 };
        let mut best_size = floor;
        let mut pending = 0u64;
        self.dfs(&t, &remaining, &mut best_size, &mut out, &mut pending);
        self.total.fetch_add(pending, Ordering::Relaxed);
        out
    }

    fn dfs(&self, t: &Tracker, remaining: &[usize], best_size: &mut usize, out: &mut SubtreeResult, pending: &mut u64) {
        out.nodes += 1;
        *pending += 1;
        if *pending >= (self.budget / 16).clamp(1, 4096) {
            let total = self.total.fetch_add(*pending, Ordering::Relaxed) + *pending;
            *pending = 0;
            if total > self.budget {
                self.aborted.store(true, Ordering::Relaxed);
            }
        }
        if self.aborted.load(Ordering::Relaxed) {
            return;
        }
        if t.len() > *best_size {
            *best_size = t.len();
            let fam = t.family(self.c, self.ground);
            shadow_tripwire(&fam, self.d);
            out.best = Some(fam);
        }
        if *best_size >= self.cap {
            return;
        }
        for (i, &x) in remaining.iter().enumerate() {
            let ub = (t.len() + remaining.len() - i).min(self.cap);
            if ub <= *best_size {
                return;
            }
            let mut child = t.clone();
            child.add(self.c, x);
            let next: Vec<usize> = remaining[i + 1..]
                .iter()
                .copied()
                .filter(|&y| child.can_add(self.c, y))
                .collect();
            self.dfs(&child, &next, best_size, out, pending);
            if self.aborted.load(Ordering::Relaxed) || *best_size >= self.cap {
                return;
            }
        }
    }
}

fn canonical_key(f: &SetSystem) -> Vec<Subset> {
    f.canonical().members().to_vec()
}

fn exact(
    c: &Candidates,
    n: usize,
    d: usize,
    ground: GroundSet,
    opts: &SearchOptions,
) -> Result<(SetSystem, u64, bool)> {
    // Seed the bound with the better of first-fit and (on small spaces) greedy.
    let mut seed = first_fit(c);
    let mut nodes = 0u64;
    if c.len() <= 200 {
        let (g, evals) = greedy(c);
        nodes += evals;
        if g.len() > seed.len() {
            seed = g;
        }
    }
    let seed_family = seed.family(c, ground);
    let cap = usize::try_from(binomial(n as u64, d as u64)).unwrap_or(usize::MAX);
    let total = AtomicU64::new(0);
    let aborted = AtomicBool::new(false);
    let ex = Exact {
        c,
        d,
        ground,
        cap,
        budget: opts.budget,
        total: &total,
        aborted: &aborted,
    };
    let all: Vec<usize> = (0..c.len()).collect();
    let floor = seed.len();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads.max(1))
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    let results: Vec<SubtreeResult> = if floor >= cap {
        Vec::new()
    } else {
        pool.install(|| {
            all.par_iter()
                .enumerate()
                .map(|(i, &root)| {
                    // A subtree rooted at the i-th candidate holds at most c.len() - i sets.
                    if c.len() - i <= floor {
                        SubtreeResult { best: None, nodes: 0 }
                    } else {
                        ex.subtree(root, &all[i + 1..], floor)
                    }
                })
                .collect()
        })
    };
    nodes += results.iter().map(|r| r.nodes).sum::<u64>();
    let exhausted = aborted.load(Ordering::Relaxed);
    let mut best = seed_family;
    for r in results.into_iter().filter_map(|r| r.best) {
        if r.len() > best.len() || (r.len() == best.len() && canonical_key(&r) < canonical_key(&best)) {
            best = r;
        }
    }
    Ok((best, nodes, exhausted))
}

pub fn max_family_search(n: usize, d: usize, opts: &SearchOptions) -> Result<SearchResult> {
    let ground = check_params(n, d, opts.mode)?;
    let start = Instant::now();
    let c = candidates(ground, d, opts.order_seed);
    let (family, nodes, exhausted, optimality) = match opts.mode {
        SearchMode::Exact => {
            let (best, nodes, exhausted) = exact(&c, n, d, ground, opts)?;
            let opt = if exhausted {
                Optimality::LowerBoundOnly
            } else {
                Optimality::ProvedOptimal
            };
            (best, nodes, exhausted, opt)
        }
        SearchMode::Greedy => {
            let (t, evals) = greedy(&c);
            (t.family(&c, ground), evals, false, Optimality::LowerBoundOnly)
        }
        SearchMode::Local => {
            let (t, evals, exhausted) = local(&c, opts.budget);
            (t.family(&c, ground), evals, exhausted, Optimality::LowerBoundOnly)
        }
    };
    if let Some(i) = family.shattered_member(d)? {
        return Err(Error::Shattered {
            index: i,
            set: family.members()[i],
            d,
        });
    }
    shadow_tripwire(&family, d);
    Ok(SearchResult {
        n,
        d,
        mode: opts.mode,
        family,
        optimality,
        nodes,
        budget: opts.budget,
        budget_exhausted: exhausted,
        wall_time: start.elapsed(),
    })
}
