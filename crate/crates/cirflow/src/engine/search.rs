//! Backtracking search over edge label domains.
//!
//! Each edge's domain is a bitmask over the 2p labels of the scaled ring
//! (p unit intervals, p points).  The search branches on the open edge with
//! the smallest domain (ties broken by a static BFS-derived order),
//! propagating a local conservation test: a vertex with all incident labels
//! fixed must admit an integer excess in the open range determined by its
//! interval-labeled edges, and vertices with one or two open edges have
//! their domains filtered to arc-consistency against that test.  Complete
//! labelings are handed to the exact feasibility solver.

use super::{feasibility, Label};
use crate::interval::Rational;
use crate::network::{Network, VertexId};
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::Instant;

pub(crate) type Domain = u64;

/// Vertex-indexed incidence data shared by the search and the leaf solver.
pub(crate) struct Topology {
    /// Per vertex: (edge index, +1 if the edge points into the vertex).
    pub incid: Vec<Vec<(usize, i8)>>,
    /// Per edge: (tail vertex index, head vertex index).
    pub ends: Vec<(usize, usize)>,
    /// Tie-breaking order for branch selection.
    pub order: Vec<usize>,
}

/// The open edge with the smallest domain, ties broken by `order` position;
/// None when every domain is a singleton.
fn pick_branch(topo: &Topology, domains: &[Domain]) -> Option<usize> {
    let mut best: Option<(u32, usize)> = None;
    for &e in &topo.order {
        let n = domains[e].count_ones();
        if n > 1 && best.is_none_or(|(b, _)| n < b) {
            if n == 2 {
                return Some(e);
            }
            best = Some((n, e));
        }
    }
    best.map(|(_, e)| e)
}

impl Topology {
    pub fn new(net: &Network) -> Self {
        let index: BTreeMap<VertexId, usize> =
            net.vertices().enumerate().map(|(i, v)| (v, i)).collect();
        let mut incid = vec![Vec::new(); index.len()];
        let mut ends = Vec::with_capacity(net.n_edges());
        for (ei, e) in net.edges().iter().enumerate() {
            let (u, v) = (index[&e.u], index[&e.v]);
            incid[u].push((ei, -1));
            incid[v].push((ei, 1));
            ends.push((u, v));
        }
        let order = crate::analysis::bfs_edge_order(net);
        Self { incid, ends, order }
    }
}

pub(crate) struct SearchConfig {
    pub p: u32,
    pub deadline: Option<Instant>,
    /// Halve the first branch using the value-negation symmetry.  Only valid
    /// when every domain is closed under mirroring (symmetric capacities,
    /// no pinned edges).
    pub allow_mirror: bool,
    /// Filter domains at vertices with one or two open edges (the search is
    /// complete without this; it exists to cut the tree and as a testable
    /// differential switch).
    pub prop_pairs: bool,
    /// Cooperative cancellation for parallel root splits: abort when the
    /// shared cell drops below this worker's candidate index.
    pub cancel: Option<(Arc<AtomicUsize>, usize)>,
}

pub(crate) enum SearchOutcome {
    Found(Vec<Label>, Vec<Rational>),
    Exhausted,
    TimedOut,
}

/// How the root node looks after one propagation pass, for parallel splits.
pub(crate) enum RootSplit {
    Solved(SearchOutcome),
    Branch { edge: usize, candidates: Vec<u32>, domains: Vec<Domain> },
}

pub(crate) fn run(topo: &Topology, cfg: &SearchConfig, domains: Vec<Domain>) -> SearchOutcome {
    let mut searcher = Searcher { topo, cfg, mirror_pending: cfg.allow_mirror };
    searcher.dfs(domains)
}

/// Propagates the root and either solves it outright or exposes the first
/// branch point with its (possibly symmetry-halved) candidate labels.
pub(crate) fn split_root(
    topo: &Topology,
    cfg: &SearchConfig,
    mut domains: Vec<Domain>,
) -> RootSplit {
    let searcher = Searcher { topo, cfg, mirror_pending: false };
    if !searcher.propagate(&mut domains) {
        return RootSplit::Solved(SearchOutcome::Exhausted);
    }
    match pick_branch(topo, &domains) {
        None => {
            let labels = decode_labels(cfg.p, &domains);
            RootSplit::Solved(match feasibility::solve_leaf(cfg.p, &labels, topo) {
                Some(values) => SearchOutcome::Found(labels, values),
                None => SearchOutcome::Exhausted,
            })
        }
        Some(edge) => {
            let mut candidates = mask_bits(domains[edge]);
            if cfg.allow_mirror {
                candidates.retain(|&b| b <= mirror_bit(b, cfg.p));
            }
            RootSplit::Branch { edge, candidates, domains }
        }
    }
}

fn decode_labels(p: u32, domains: &[Domain]) -> Vec<Label> {
    domains.iter().map(|d| Label::from_bit(d.trailing_zeros(), p)).collect()
}

fn mask_bits(mut d: Domain) -> Vec<u32> {
    let mut out = Vec::with_capacity(d.count_ones() as usize);
    while d != 0 {
        out.push(d.trailing_zeros());
        d &= d - 1;
    }
    out
}

fn mirror_bit(b: u32, p: u32) -> u32 {
    Label::from_bit(b, p).mirror(p).bit(p)
}

struct Searcher<'a> {
    topo: &'a Topology,
    cfg: &'a SearchConfig,
    /// True until the first branch applies the mirror halving.
    mirror_pending: bool,
}

impl Searcher<'_> {
    fn aborted(&self) -> bool {
        if let Some(deadline) = self.cfg.deadline {
            if Instant::now() >= deadline {
                return true;
            }
        }
        if let Some((best, mine)) = &self.cfg.cancel {
            if best.load(Ordering::Relaxed) < *mine {
                return true;
            }
        }
        false
    }

    fn dfs(&mut self, mut domains: Vec<Domain>) -> SearchOutcome {
        if self.aborted() {
            return SearchOutcome::TimedOut;
        }
        if !self.propagate(&mut domains) {
            return SearchOutcome::Exhausted;
        }
        let Some(edge) = pick_branch(self.topo, &domains) else {
            let labels = decode_labels(self.cfg.p, &domains);
            return match feasibility::solve_leaf(self.cfg.p, &labels, self.topo) {
                Some(values) => SearchOutcome::Found(labels, values),
                None => SearchOutcome::Exhausted,
            };
        };
        let mut candidates = mask_bits(domains[edge]);
        if self.mirror_pending {
            self.mirror_pending = false;
            candidates.retain(|&b| b <= mirror_bit(b, self.cfg.p));
        }
        let mut timed_out = false;
        for b in candidates {
            let mut next = domains.clone();
            next[edge] = 1u64 << b;
            match self.dfs(next) {
                SearchOutcome::Found(labels, values) => {
                    return SearchOutcome::Found(labels, values)
                }
                SearchOutcome::TimedOut => timed_out = true,
                SearchOutcome::Exhausted => {}
            }
        }
        if timed_out {
            SearchOutcome::TimedOut
        } else {
            SearchOutcome::Exhausted
        }
    }

    /// Domain filtering to a fixpoint; false signals a contradiction.
    fn propagate(&self, domains: &mut [Domain]) -> bool {
        if domains.iter().any(|&d| d == 0) {
            return false;
        }
        let p = self.cfg.p;
        loop {
            let mut changed = false;
            for inc in &self.topo.incid {
                let mut open: Vec<(usize, i8)> = Vec::new();
                let mut sum = 0i64;
                let mut n_in = 0i64;
                let mut n_out = 0i64;
                for &(e, sign) in inc {
                    if domains[e].count_ones() > 1 {
                        open.push((e, sign));
                    } else {
                        let label = Label::from_bit(domains[e].trailing_zeros(), p);
                        add_label(&mut sum, &mut n_in, &mut n_out, label, sign);
                    }
                }
                match open.len() {
                    0 => {
                        if !excess_exists(sum, n_in, n_out, p) {
                            return false;
                        }
                    }
                    1 if self.cfg.prop_pairs => {
                        let (e, sign) = open[0];
                        let mut keep = 0u64;
                        for b in mask_bits(domains[e]) {
                            let (mut s, mut ni, mut no) = (sum, n_in, n_out);
                            add_label(&mut s, &mut ni, &mut no, Label::from_bit(b, p), sign);
                            if excess_exists(s, ni, no, p) {
                                keep |= 1u64 << b;
                            }
                        }
                        if keep == 0 {
                            return false;
                        }
                        if keep != domains[e] {
                            domains[e] = keep;
                            changed = true;
                        }
                    }
                    2 if self.cfg.prop_pairs => {
                        let (e1, sg1) = open[0];
                        let (e2, sg2) = open[1];
                        let mut keep1 = 0u64;
                        let mut keep2 = 0u64;
                        for b1 in mask_bits(domains[e1]) {
                            for b2 in mask_bits(domains[e2]) {
                                if keep1 & (1 << b1) != 0 && keep2 & (1 << b2) != 0 {
                                    continue;
                                }
                                let (mut s, mut ni, mut no) = (sum, n_in, n_out);
                                add_label(&mut s, &mut ni, &mut no, Label::from_bit(b1, p), sg1);
                                add_label(&mut s, &mut ni, &mut no, Label::from_bit(b2, p), sg2);
                                if excess_exists(s, ni, no, p) {
                                    keep1 |= 1u64 << b1;
                                    keep2 |= 1u64 << b2;
                                }
                            }
                        }
                        if keep1 == 0 || keep2 == 0 {
                            return false;
                        }
                        if keep1 != domains[e1] {
                            domains[e1] = keep1;
                            changed = true;
                        }
                        if keep2 != domains[e2] {
                            domains[e2] = keep2;
                            changed = true;
                        }
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }
}

fn add_label(sum: &mut i64, n_in: &mut i64, n_out: &mut i64, label: Label, sign: i8) {
    *sum += i64::from(sign) * i64::from(label.base());
    if matches!(label, Label::Unit(_)) {
        if sign > 0 {
            *n_in += 1;
        } else {
            *n_out += 1;
        }
    }
}

/// Is there an integer congruent to -sum (mod p) strictly between -n_out and
/// n_in?  With no interval edges the exact sum itself must vanish mod p.
fn excess_exists(sum: i64, n_in: i64, n_out: i64, p: u32) -> bool {
    let p = i64::from(p);
    if n_in + n_out == 0 {
        return sum.rem_euclid(p) == 0;
    }
    ((1 - n_out)..=(n_in - 1)).any(|m| (m + sum).rem_euclid(p) == 0)
}
