//! Certified exhaustive search for longest dissociated sequences.
//!
//! The searcher walks sequences with non decreasing element indices, so
//! every multiset of nonzero elements is visited exactly once. A branch is
//! extended by an element only when the extension stays dissociated, which
//! the incremental subset sum bitmap decides exactly, and the longest
//! sequence found is returned with a witness. When the walk runs to
//! completion within its depth cap the maximum is proved, not just
//! bounded: `exhausted` in the result records that distinction.
//!
//! Depth caps. For plus minus weights no dissociated sequence is longer
//! than `floor(log2 |G|)`, so the default cap is that bound and a sequence
//! reaching it is a maximum; the search stops at the first one. For other
//! weight sets the subset sums grow strictly with each element, capping
//! sequences at `|G| - 1`. A caller supplied cap below the safe one turns
//! `exhausted` off when it binds, because longer sequences were never ruled
//! out.
//!
//! Parallel mode. With the `parallel` feature the subtrees below each
//! dissociated first element become independent tasks. The reported length,
//! witness, and exhaustion flag are identical to the sequential walk
//! regardless of thread count: tasks never prune branches that could tie
//! another task's best, a task abandons its subtree only when a task of
//! lexicographically earlier rank has already reached the depth cap, and
//! task results merge in rank order. Node counts do vary with scheduling.
//! Under an exhausted node budget the result is a valid lower bound but the
//! winner of the race is not reproducible.

use crate::group::ProductGroup;
use crate::intlog;
use crate::sumset::{self, SumSet};
use crate::weights::{WeightForm, WeightSet};
use crate::{Error, Result};
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

/// How often a branch polls the shared counters, in extension attempts.
const CHECK_INTERVAL: u64 = 1024;

/// Absolute depth limit, bounding recursion and per level bitmap clones.
/// Results at this cap stay honest: `exhausted` is claimed only below it.
const HARD_DEPTH_CAP: usize = 4096;

/// Tuning knobs for [`max_dissociated`].
#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Cap on sequence length; `None` means the safe cap for the weight
    /// form. Values above the safe cap are clamped to it.
    pub max_depth: Option<usize>,
    /// Extension attempts before the search gives up, checked at a coarse
    /// granularity.
    pub node_budget: u64,
    /// Worker threads for the parallel driver; `None` uses the default
    /// pool, 1 forces the sequential walk. Ignored when the `parallel`
    /// feature is off.
    pub threads: Option<usize>,
    /// Keep results independent of thread scheduling. Costs some pruning:
    /// branches that could tie a rival task's best stay open. Turning it
    /// off never changes the reported length, only which witness arrives.
    pub deterministic: bool,
    /// Restrict first elements to orbit minima under coordinate
    /// permutations of equal moduli and unit scaling. Sound for the
    /// maximum length; changes which witness is reported.
    pub symmetric_reduction: bool,
    /// Refuse groups larger than this, bounding bitmap memory.
    pub max_group_order: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_depth: None,
            node_budget: 1_000_000_000,
            threads: None,
            deterministic: true,
            symmetric_reduction: false,
            max_group_order: 1 << 20,
        }
    }
}

/// Outcome of a search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    /// Length of the longest dissociated sequence found.
    pub max_len: usize,
    /// Element indices of one such sequence, non decreasing.
    pub witness: Vec<usize>,
    /// True when the search proved no longer sequence exists.
    pub exhausted: bool,
    /// Extension attempts performed. Deterministic only sequentially.
    pub nodes: u64,
    /// True when the node budget stopped the search early.
    pub budget_exhausted: bool,
    /// The depth cap that was in force.
    pub depth_cap: usize,
}

struct Shared {
    best: AtomicUsize,
    /// Lowest task rank that reached the depth cap; `usize::MAX` if none.
    cap_rank: AtomicUsize,
    nodes: AtomicU64,
    budget: u64,
    deterministic: bool,
}

impl Shared {
    fn new(cfg: &SearchConfig) -> Shared {
        Shared {
            best: AtomicUsize::new(0),
            cap_rank: AtomicUsize::new(usize::MAX),
            nodes: AtomicU64::new(0),
            budget: cfg.node_budget,
            deterministic: cfg.deterministic,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Flow {
    Continue,
    Stop,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Halt {
    None,
    Budget,
    Rank,
}

struct Walker<'a> {
    p: &'a ProductGroup,
    w: &'a WeightSet,
    shared: &'a Shared,
    order: usize,
    effective_depth: usize,
    is_pm: bool,
    /// Subset sums grow in symmetric pairs, so capacity halves.
    paired_growth: bool,
    /// Allowed first elements when the walk starts at the root; `None`
    /// admits every index.
    root_choices: Option<&'a [usize]>,
    rank: usize,
    seq: Vec<usize>,
    local_best: usize,
    witness: Vec<usize>,
    nodes: u64,
    since_check: u64,
    halt: Halt,
    cap_hit: bool,
}

impl<'a> Walker<'a> {
    fn poll(&mut self) -> Flow {
        self.since_check += 1;
        if self.since_check < CHECK_INTERVAL {
            return Flow::Continue;
        }
        let before = self.shared.nodes.fetch_add(self.since_check, Ordering::Relaxed);
        let total = before + self.since_check;
        self.since_check = 0;
        if total > self.shared.budget {
            self.halt = Halt::Budget;
            return Flow::Stop;
        }
        let cap_rank = self.shared.cap_rank.load(Ordering::Relaxed);
        let give_way = if self.shared.deterministic {
            cap_rank < self.rank
        } else {
            cap_rank != usize::MAX && !self.cap_hit
        };
        if give_way {
            self.halt = Halt::Rank;
            return Flow::Stop;
        }
        Flow::Continue
    }

    fn dfs(&mut self, sums: &SumSet, start: usize) -> Flow {
        let depth = self.seq.len();
        if depth > self.local_best {
            self.local_best = depth;
            self.witness = self.seq.clone();
            self.shared.best.fetch_max(depth, Ordering::Relaxed);
            if depth == self.effective_depth {
                self.cap_hit = true;
                self.shared.cap_rank.fetch_min(self.rank, Ordering::Relaxed);
                return Flow::Stop;
            }
        }
        if depth == self.effective_depth {
            return Flow::Continue;
        }
        let room = self.order - 1 - sums.len();
        // With a symmetric weight set the sums form a symmetric set, and in
        // an odd order group a symmetric set avoiding 0 has even size; each
        // extension therefore adds at least two sums.
        let by_growth = if self.paired_growth { room / 2 } else { room };
        let mut capacity = (self.effective_depth - depth).min(by_growth);
        if self.is_pm && depth > 0 {
            // Plus minus sequences have strictly increasing indices, since a
            // repeat cancels itself; only indices above the last one remain.
            capacity = capacity.min(self.order - 1 - start);
        }
        if depth + capacity <= self.local_best {
            return Flow::Continue;
        }
        let rival = self.shared.best.load(Ordering::Relaxed);
        let hopeless = if self.shared.deterministic {
            // A tie against another task must stay open so the merge can
            // compare witnesses deterministically.
            depth + capacity < rival
        } else {
            depth + capacity <= rival && rival > self.local_best
        };
        if hopeless {
            return Flow::Continue;
        }
        for g in start.max(1)..self.order {
            if depth == 0 {
                if let Some(allowed) = self.root_choices {
                    if allowed.binary_search(&g).is_err() {
                        continue;
                    }
                }
            }
            self.nodes += 1;
            if self.poll() == Flow::Stop {
                return Flow::Stop;
            }
            if sumset::can_extend(self.p, self.w, sums, g) {
                let mut child = sums.clone();
                sumset::extend(self.p, self.w, &mut child, g);
                self.seq.push(g);
                let flow = self.dfs(&child, g);
                self.seq.pop();
                if flow == Flow::Stop {
                    return Flow::Stop;
                }
            }
        }
        Flow::Continue
    }
}

struct TaskOutcome {
    rank: usize,
    len: usize,
    witness: Vec<usize>,
    nodes: u64,
    halt: Halt,
    cap_hit: bool,
}

/// Per search invariants shared by every task.
struct SearchSpace<'a> {
    p: &'a ProductGroup,
    w: &'a WeightSet,
    shared: &'a Shared,
    effective_depth: usize,
    is_pm: bool,
    paired_growth: bool,
    root_choices: Option<&'a [usize]>,
}

fn run_task(space: &SearchSpace<'_>, rank: usize, prefix: &[usize], sums: SumSet) -> TaskOutcome {
    let mut walker = Walker {
        p: space.p,
        w: space.w,
        shared: space.shared,
        order: space.p.order(),
        effective_depth: space.effective_depth,
        is_pm: space.is_pm,
        paired_growth: space.paired_growth,
        root_choices: space.root_choices,
        rank,
        seq: prefix.to_vec(),
        local_best: 0,
        witness: Vec::new(),
        nodes: 0,
        since_check: 0,
        halt: Halt::None,
        cap_hit: false,
    };
    if space.shared.deterministic && space.shared.cap_rank.load(Ordering::Relaxed) < rank {
        walker.halt = Halt::Rank;
    } else {
        let start = prefix.last().copied().unwrap_or(1);
        walker.dfs(&sums, start);
    }
    space.shared.nodes.fetch_add(walker.since_check, Ordering::Relaxed);
    TaskOutcome {
        rank,
        len: walker.local_best,
        witness: walker.witness,
        nodes: walker.nodes,
        halt: walker.halt,
        cap_hit: walker.cap_hit,
    }
}

/// Finds the longest dissociated sequence for the pair, within the
/// configured caps. The weight set must be materialized for the group's
/// exponent.
pub fn max_dissociated(
    p: &ProductGroup,
    w: &WeightSet,
    cfg: &SearchConfig,
) -> Result<SearchResult> {
    if w.exponent() != p.exponent() {
        return Err(Error::ExponentMismatch {
            weights: w.exponent(),
            group: p.exponent(),
        });
    }
    let order = p.order();
    if order > cfg.max_group_order {
        return Err(Error::OrderCap {
            order,
            cap: cfg.max_group_order,
        });
    }
    let is_pm = w.form() == WeightForm::PlusMinus;
    let safe_cap = if is_pm {
        intlog::floor_log2(order as u64) as usize
    } else {
        order.saturating_sub(1)
    };
    let effective_depth = safe_cap
        .min(cfg.max_depth.unwrap_or(usize::MAX))
        .min(HARD_DEPTH_CAP);
    let shared = Shared::new(cfg);

    let admitted: Option<Vec<usize>> = if cfg.symmetric_reduction {
        Some(
            (1..order)
                .filter(|&g| orbit_minimum(p, g) == g)
                .collect(),
        )
    } else {
        None
    };

    let exponent = w.exponent();
    let symmetric_weights = w
        .residues()
        .iter()
        .all(|&r| w.residues().binary_search(&((exponent - r) % exponent)).is_ok());
    let space = SearchSpace {
        p,
        w,
        shared: &shared,
        effective_depth,
        is_pm,
        paired_growth: symmetric_weights && order % 2 == 1,
        root_choices: admitted.as_deref(),
    };

    let outcomes = drive(&space, cfg);

    let mut max_len = 0;
    let mut witness: Vec<usize> = Vec::new();
    let mut nodes = 0;
    let mut budget_exhausted = false;
    let mut cap_winner: Option<&TaskOutcome> = None;
    for out in &outcomes {
        nodes += out.nodes;
        if out.halt == Halt::Budget {
            budget_exhausted = true;
        }
        if out.cap_hit && cap_winner.is_none_or(|cw| out.rank < cw.rank) {
            cap_winner = Some(out);
        }
    }
    if let Some(winner) = cap_winner {
        max_len = winner.len;
        witness = winner.witness.clone();
    } else {
        for out in &outcomes {
            let better = out.len > max_len
                || (out.len == max_len && !out.witness.is_empty() && out.witness < witness);
            if better {
                max_len = out.len;
                witness = out.witness.clone();
            }
        }
    }
    let exhausted = !budget_exhausted && (max_len < effective_depth || effective_depth == safe_cap);
    Ok(SearchResult {
        max_len,
        witness,
        exhausted,
        nodes,
        budget_exhausted,
        depth_cap: effective_depth,
    })
}

/// Runs the walk, splitting into per first element tasks when the parallel
/// driver applies.
fn drive(space: &SearchSpace<'_>, cfg: &SearchConfig) -> Vec<TaskOutcome> {
    #[cfg(feature = "parallel")]
    {
        if cfg.threads != Some(1) && space.effective_depth >= 2 {
            return drive_parallel(space, cfg);
        }
    }
    let _ = cfg;
    vec![run_task(space, 0, &[], SumSet::new(space.p.order()))]
}

#[cfg(feature = "parallel")]
fn drive_parallel(space: &SearchSpace<'_>, cfg: &SearchConfig) -> Vec<TaskOutcome> {
    let order = space.p.order();
    let empty = SumSet::new(order);
    let mut prefix_nodes = 0;
    let mut tasks: Vec<(usize, usize, SumSet)> = Vec::new();
    for g in 1..order {
        if let Some(allowed) = space.root_choices {
            if allowed.binary_search(&g).is_err() {
                continue;
            }
        }
        prefix_nodes += 1;
        if sumset::can_extend(space.p, space.w, &empty, g) {
            let mut sums = empty.clone();
            sumset::extend(space.p, space.w, &mut sums, g);
            tasks.push((tasks.len(), g, sums));
        }
    }
    space.shared.nodes.fetch_add(prefix_nodes, Ordering::Relaxed);
    let run = || {
        tasks
            .par_iter()
            .map(|(rank, g, sums)| run_task(space, *rank, &[*g], sums.clone()))
            .collect::<Vec<_>>()
    };
    let mut outcomes = match cfg.threads {
        None => run(),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        },
    };
    // Pure accounting entry for the prefix enumeration cost; lengths are
    // covered by the tasks themselves.
    outcomes.push(TaskOutcome {
        rank: usize::MAX,
        len: 0,
        witness: Vec::new(),
        nodes: prefix_nodes,
        halt: Halt::None,
        cap_hit: false,
    });
    outcomes
}

/// Smallest element index in the orbit of `g` under unit scaling and
/// permutations of coordinates with equal moduli.
fn orbit_minimum(p: &ProductGroup, g_index: usize) -> usize {
    let exp = p.exponent();
    let g = p.element_at(g_index).expect("index in range");
    let mut best = usize::MAX;
    for u in 1..=exp {
        if gcd(u, exp) != 1 {
            continue;
        }
        let image = p.scale_residue(u % exp, &g);
        let mut coords = image.coords().to_vec();
        // Sorting within each run of equal moduli minimizes the mixed radix
        // index over coordinate permutations.
        let radices = p.radices();
        let mut run_start = 0;
        for i in 1..=radices.len() {
            if i == radices.len() || radices[i] != radices[run_start] {
                coords[run_start..i].sort_unstable();
                run_start = i;
            }
        }
        best = best.min(p.index_of(&crate::group::GroupElement::new(coords)));
    }
    best
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
