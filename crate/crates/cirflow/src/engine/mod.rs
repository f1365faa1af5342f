//! The exact decision engine.
//!
//! `decide(G, r)` answers whether G admits a modular circular nowhere-zero
//! r-flow with all values strictly inside (1, r-1) mod r — equivalently,
//! whether the circular flow number of G is strictly below r.  Everything is
//! computed in the scaled ring R/pZ for r = p/q in lowest terms, where all
//! capacity boundaries are integers, and answers are exact: a positive
//! verdict carries a rational certificate that is independently re-verified,
//! a negative verdict means the full labeling space was exhausted.

pub mod certificate;
mod feasibility;
mod search;

pub use certificate::{verify, FlowAssignment};

use crate::error::{Error, Result};
use crate::interval::{IntervalSet, Rational, RationalMod};
use crate::network::{render_rational, EdgeKind, GEdge, Network};
use search::{RootSplit, SearchConfig, SearchOutcome, Topology};
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

/// Largest numerator of r the search supports (labels of the scaled ring
/// must fit in a 64-bit domain mask: p units plus p points).
pub const MAX_SCALED_MODULUS: u32 = 31;

/// A flow value class in the scaled ring: either the open unit interval
/// (m, m+1) or the exact point m.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Label {
    Unit(u32),
    Point(u32),
}

impl Label {
    /// The integer part: m for Unit(m) and the exact value for Point(m).
    pub fn base(self) -> u32 {
        match self {
            Label::Unit(m) | Label::Point(m) => m,
        }
    }

    /// Bit position in a domain mask: units first, then points.
    pub(crate) fn bit(self, p: u32) -> u32 {
        match self {
            Label::Unit(m) => m,
            Label::Point(m) => p + m,
        }
    }

    pub(crate) fn from_bit(b: u32, p: u32) -> Self {
        if b < p {
            Label::Unit(b)
        } else {
            Label::Point(b - p)
        }
    }

    /// Image under value negation x -> -x.
    pub(crate) fn mirror(self, p: u32) -> Self {
        match self {
            Label::Unit(m) => Label::Unit(p - 1 - m),
            Label::Point(m) => Label::Point((p - m) % p),
        }
    }
}

/// Wall-clock budget for a decision run.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self { deadline: None }
    }

    pub fn timeout(d: Duration) -> Self {
        Self { deadline: Some(Instant::now() + d) }
    }

    fn deadline(self) -> Option<Instant> {
        self.deadline
    }
}

/// Outcome of a decision: a verified certificate, a completed refutation, or
/// budget exhaustion.
#[derive(Clone, Debug)]
pub enum Verdict {
    Feasible(FlowAssignment),
    Infeasible { reason: String },
    Unknown,
}

impl Verdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Verdict::Feasible(_))
    }

    /// Some(true/false) for settled verdicts, None for Unknown.
    pub fn settled(&self) -> Option<bool> {
        match self {
            Verdict::Feasible(_) => Some(true),
            Verdict::Infeasible { .. } => Some(false),
            Verdict::Unknown => None,
        }
    }
}

/// r = p/q in lowest terms with the scaled ring R/pZ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScaledContext {
    pub r: Rational,
    pub p: u32,
    pub q: u32,
}

impl ScaledContext {
    /// Requires r > 2 (so the base window is nonempty) and p <= 31.
    pub fn new(r: Rational) -> Result<Self> {
        if r <= Rational::from_integer(2) {
            return Err(Error::UnsupportedModulus(render_rational(r)));
        }
        let p = *r.numer();
        let q = *r.denom();
        if p > i64::from(MAX_SCALED_MODULUS) {
            return Err(Error::UnsupportedModulus(render_rational(r)));
        }
        Ok(Self { r, p: p as u32, q: q as u32 })
    }

    /// The scaled image of the open interval (1, r-1): the window (q, p-q).
    pub fn window(&self) -> IntervalSet {
        IntervalSet::interval(self.p, self.q, self.p - self.q)
            .expect("window endpoints valid for any r > 2")
    }
}

/// Effective capacities of all edges at context r; gadget edges must have
/// been resolved, and abstract capacities pin the network to its own r.
fn edge_capacities(net: &Network, ctx: &ScaledContext) -> Result<Vec<IntervalSet>> {
    let mut caps = Vec::with_capacity(net.n_edges());
    for e in net.edges() {
        match &e.kind {
            EdgeKind::Simple => caps.push(ctx.window()),
            EdgeKind::Abstract(set) => {
                if net.r() != ctx.r {
                    return Err(Error::ContextMismatch(
                        render_rational(ctx.r),
                        render_rational(net.r()),
                    ));
                }
                caps.push(*set);
            }
            EdgeKind::Gadget(name) => {
                return Err(Error::UnknownGadget(format!(
                    "unresolved gadget edge '{name}' (resolve before deciding)"
                )))
            }
        }
    }
    Ok(caps)
}

fn initial_domains(caps: &[IntervalSet], p: u32) -> Vec<u64> {
    caps.iter().map(|c| c.units() | (c.points() << p)).collect()
}

/// Does G admit a sub-r modular circular nowhere-zero flow?
pub fn decide(net: &Network, r: Rational, budget: Budget) -> Result<Verdict> {
    decide_constrained(net, r, &BTreeMap::new(), budget)
}

/// `decide` with some edges pinned to fixed labels.
pub fn decide_constrained(
    net: &Network,
    r: Rational,
    pins: &BTreeMap<usize, Label>,
    budget: Budget,
) -> Result<Verdict> {
    decide_with_jobs(net, r, pins, budget, 1)
}

/// `decide_constrained` with the first branch split across worker threads.
/// Verdicts and certificates are independent of the worker count: the
/// winning subtree is the feasible candidate of smallest label index, and
/// each subtree search is deterministic.
pub fn decide_with_jobs(
    net: &Network,
    r: Rational,
    pins: &BTreeMap<usize, Label>,
    budget: Budget,
    jobs: usize,
) -> Result<Verdict> {
    let ctx = ScaledContext::new(r)?;
    let caps = edge_capacities(net, &ctx)?;
    for &e in pins.keys() {
        if e >= net.n_edges() {
            return Err(Error::UnknownEdge(e));
        }
    }
    // A bridge must carry exactly 0 (the net flow over a one-edge cut
    // vanishes mod p), so it is infeasible unless its capacity has point 0.
    for b in crate::analysis::bridges(net) {
        if !caps[b].has_point(0) {
            return Ok(Verdict::Infeasible { reason: "bridge".into() });
        }
    }
    let mut domains = initial_domains(&caps, ctx.p);
    for (&e, &l) in pins {
        domains[e] &= 1u64 << l.bit(ctx.p);
    }
    let allow_mirror = pins.is_empty() && caps.iter().all(IntervalSet::is_symmetric);
    let topo = Topology::new(net);
    let cfg = SearchConfig {
        p: ctx.p,
        deadline: budget.deadline(),
        allow_mirror,
        prop_pairs: true,
        cancel: None,
    };
    let outcome = if jobs <= 1 {
        search::run(&topo, &cfg, domains)
    } else {
        run_parallel(&topo, &cfg, domains, jobs)
    };
    finish(net, &ctx, outcome)
}

fn finish(net: &Network, ctx: &ScaledContext, outcome: SearchOutcome) -> Result<Verdict> {
    match outcome {
        SearchOutcome::Found(_, scaled) => {
            let q = Rational::from_integer(i64::from(ctx.q));
            let values: Vec<Rational> = scaled.iter().map(|s| s / q).collect();
            let cert = FlowAssignment { r: ctx.r, values };
            certificate::verify(net, &cert).map_err(|e| {
                Error::Internal(format!("engine certificate failed re-verification: {e}"))
            })?;
            Ok(Verdict::Feasible(cert))
        }
        SearchOutcome::Exhausted => Ok(Verdict::Infeasible {
            reason: format!("no sub-{}-mcnzf", render_rational(ctx.r)),
        }),
        SearchOutcome::TimedOut => Ok(Verdict::Unknown),
    }
}

fn run_parallel(
    topo: &Topology,
    cfg: &SearchConfig,
    domains: Vec<u64>,
    jobs: usize,
) -> SearchOutcome {
    let (edge, candidates, base) = match search::split_root(topo, cfg, domains) {
        RootSplit::Solved(outcome) => return outcome,
        RootSplit::Branch { edge, candidates, domains } => (edge, candidates, domains),
    };
    // Smallest candidate index that found a flow; larger ones get cancelled.
    let best = Arc::new(AtomicUsize::new(usize::MAX));
    let mut slots: Vec<Option<SearchOutcome>> = Vec::new();
    slots.resize_with(candidates.len(), || None);
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for w in 0..jobs.min(candidates.len()) {
            let best = Arc::clone(&best);
            let base = &base;
            let candidates = &candidates;
            handles.push(scope.spawn(move || {
                let mut results = Vec::new();
                let mut i = w;
                while i < candidates.len() {
                    if best.load(Ordering::Relaxed) < i {
                        break;
                    }
                    let mut sub = base.clone();
                    sub[edge] = 1u64 << candidates[i];
                    let worker_cfg = SearchConfig {
                        p: cfg.p,
                        deadline: cfg.deadline,
                        allow_mirror: false,
                        prop_pairs: cfg.prop_pairs,
                        cancel: Some((Arc::clone(&best), i)),
                    };
                    let outcome = search::run(topo, &worker_cfg, sub);
                    if matches!(outcome, SearchOutcome::Found(_, _)) {
                        best.fetch_min(i, Ordering::Relaxed);
                    }
                    results.push((i, outcome));
                    i += jobs;
                }
                results
            }));
        }
        for h in handles {
            for (i, outcome) in h.join().expect("search worker panicked") {
                slots[i] = Some(outcome);
            }
        }
    });
    let mut timed_out = false;
    for slot in slots {
        match slot {
            Some(SearchOutcome::Found(labels, values)) => {
                return SearchOutcome::Found(labels, values)
            }
            Some(SearchOutcome::TimedOut) => timed_out = true,
            Some(SearchOutcome::Exhausted) | None => {}
        }
    }
    if timed_out && best.load(Ordering::Relaxed) == usize::MAX {
        SearchOutcome::TimedOut
    } else {
        SearchOutcome::Exhausted
    }
}

/// The open r-capacity of a two-terminal network: all boundary values t such
/// that pushing t from terminal u to terminal v extends to a flow inside.
///
/// Computed by attaching a probe edge of unrestricted capacity and running
/// one pinned decision per label of the scaled ring.  The result provably
/// satisfies the interval-set invariants (symmetry and point-closure); both
/// are re-checked on every call and an internal error is raised otherwise.
pub fn capacity(g: &GEdge, r: Rational, budget: Budget) -> Result<IntervalSet> {
    let ctx = ScaledContext::new(r)?;
    let mut net = if g.network.r() == r {
        g.network.clone()
    } else if g.network.all_simple() {
        // All-simple networks carry no r-specific data; rebuild at r.
        let mut rebuilt = Network::new(r)?;
        for v in g.network.vertices() {
            rebuilt.add_vertex(v);
        }
        for e in g.network.edges() {
            rebuilt.add_edge(e.u, e.v, e.kind.clone())?;
        }
        rebuilt
    } else {
        return Err(Error::ContextMismatch(
            render_rational(r),
            render_rational(g.network.r()),
        ));
    };
    let probe = net.add_edge(g.v, g.u, EdgeKind::Abstract(IntervalSet::full(ctx.p)?))?;
    let mut units = 0u64;
    let mut points = 0u64;
    for m in 0..ctx.p {
        for label in [Label::Unit(m), Label::Point(m)] {
            let pins = BTreeMap::from([(probe, label)]);
            match decide_constrained(&net, r, &pins, budget)? {
                Verdict::Feasible(_) => match label {
                    Label::Unit(_) => units |= 1u64 << m,
                    Label::Point(_) => points |= 1u64 << m,
                },
                Verdict::Infeasible { .. } => {}
                Verdict::Unknown => return Err(Error::BudgetExhausted),
            }
        }
    }
    let set = IntervalSet::from_parts(ctx.p, units, points).map_err(|_| {
        Error::Internal("capacity violated point-closure — engine invariant broken".into())
    })?;
    if !set.is_symmetric() {
        return Err(Error::Internal(
            "capacity violated symmetry — engine invariant broken".into(),
        ));
    }
    Ok(set)
}

/// Capacity of two g-edges joined in parallel: Minkowski sum.
pub fn parallel_join(a: &IntervalSet, b: &IntervalSet) -> Result<IntervalSet> {
    a.add(b)
}

/// Capacity of two g-edges joined in series: intersection.
pub fn serial_join(a: &IntervalSet, b: &IntervalSet) -> Result<IntervalSet> {
    a.intersect(b)
}

/// Independent route to `decide`: the flow exists iff 0 lies in the capacity
/// of the network viewed as a g-edge between any adjacent vertex pair.
pub fn decide_phi_lt(net: &Network, r: Rational, budget: Budget) -> Result<bool> {
    if net.n_edges() == 0 {
        return Ok(true);
    }
    let e0 = &net.edges()[0];
    let g = GEdge::new(net.clone(), e0.u, e0.v)?;
    Ok(capacity(&g, r, budget)?.has_point(0))
}

/// Nowhere-zero 4-flow decision (closed bound: values may sit on the
/// boundary classes 1 and 3 of Z/4).  Feasible verdicts carry the integral
/// Z/4 class per edge; this is not an open sub-4 certificate, so it is not
/// run through the open verifier.
pub fn decide_4flow(net: &Network, budget: Budget) -> Result<Verdict> {
    if let Some(i) = net.edges().iter().position(|e| e.kind != EdgeKind::Simple) {
        return Err(Error::NotSimple(i));
    }
    if !crate::analysis::bridges(net).is_empty() {
        return Ok(Verdict::Infeasible { reason: "bridge".into() });
    }
    let p = 4u32;
    // Z/4 classes 1, 2, 3 as exact points; no unit intervals.
    let dom = (0b1110u64) << p;
    let domains = vec![dom; net.n_edges()];
    let topo = Topology::new(net);
    let cfg = SearchConfig {
        p,
        deadline: budget.deadline(),
        allow_mirror: true,
        prop_pairs: true,
        cancel: None,
    };
    match search::run(&topo, &cfg, domains) {
        SearchOutcome::Found(_, values) => Ok(Verdict::Feasible(FlowAssignment {
            r: Rational::from_integer(4),
            values,
        })),
        SearchOutcome::Exhausted => Ok(Verdict::Infeasible {
            reason: "no nowhere-zero 4-flow".into(),
        }),
        SearchOutcome::TimedOut => Ok(Verdict::Unknown),
    }
}

/// A real-valued flow: an orientation (reference orientation with some edges
/// flipped) and exact positive rational values with Kirchhoff conservation
/// over the rationals, not just modulo r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedFlow {
    pub flipped: Vec<bool>,
    pub values: Vec<Rational>,
}

/// Lifts a verified modular certificate to a real-valued flow with values in
/// the open interval (1, r-1).
///
/// Representatives start in (1, r-1); a vertex then has excess equal to an
/// integer multiple of r.  Flipping an edge's direction and replacing its
/// value t by r - t moves one unit of r-excess from head to tail, so routing
/// flips along paths from positive-excess to negative-excess vertices cancels
/// all excesses; the total absolute excess strictly decreases, so the repair
/// terminates.
pub fn lift_modular_flow(net: &Network, cert: &FlowAssignment) -> Result<LiftedFlow> {
    certificate::verify(net, cert)?;
    let ctx = ScaledContext::new(cert.r)?;
    let p_rat = Rational::from_integer(i64::from(ctx.p));
    let q_rat = Rational::from_integer(i64::from(ctx.q));
    let window = ctx.window();
    let mut scaled: Vec<Rational> = Vec::with_capacity(cert.values.len());
    for (i, v) in cert.values.iter().enumerate() {
        let s = (v * q_rat).mod_floor(&p_rat);
        if !window.contains(s) {
            return Err(Error::Certificate(format!(
                "lift requires every value strictly inside (1, r-1); edge {i} carries {}",
                render_rational(*v)
            )));
        }
        scaled.push(s);
    }
    let topo = Topology::new(net);
    let nv = topo.incid.len();
    let m = net.n_edges();
    let mut flipped = vec![false; m];
    let current_ends = |e: usize, flipped: &[bool]| -> (usize, usize) {
        let (t, h) = topo.ends[e];
        if flipped[e] {
            (h, t)
        } else {
            (t, h)
        }
    };
    let excesses = |scaled: &[Rational], flipped: &[bool]| -> Vec<i64> {
        let mut k = vec![Rational::from_integer(0); nv];
        for e in 0..m {
            let (t, h) = current_ends(e, flipped);
            k[h] += scaled[e];
            k[t] -= scaled[e];
        }
        k.iter()
            .map(|x| {
                let ratio = x / p_rat;
                debug_assert!(ratio.is_integer());
                ratio.to_integer()
            })
            .collect()
    };
    let mut guard = 0usize;
    loop {
        let k = excesses(&scaled, &flipped);
        let Some(a) = (0..nv).find(|&v| k[v] > 0) else {
            break;
        };
        guard += 1;
        if guard > 4 * (nv + m) + 16 {
            return Err(Error::Internal("lift repair failed to terminate".into()));
        }
        // Transport digraph: flipping the edge currently oriented t -> h
        // moves one r-excess from h to t, so it is an arc h -> t.
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; nv];
        let mut queue = std::collections::VecDeque::from([a]);
        let mut target = None;
        'bfs: while let Some(x) = queue.pop_front() {
            for e in 0..m {
                let (t, h) = current_ends(e, &flipped);
                if h == x && prev[t].is_none() && t != a {
                    prev[t] = Some((x, e));
                    if k[t] < 0 {
                        target = Some(t);
                        break 'bfs;
                    }
                    queue.push_back(t);
                }
            }
        }
        let Some(mut cur) = target else {
            return Err(Error::Internal("lift repair found no augmenting path".into()));
        };
        while let Some((px, e)) = prev[cur] {
            flipped[e] = !flipped[e];
            scaled[e] = p_rat - scaled[e];
            cur = px;
        }
    }
    let values = scaled.iter().map(|s| s / q_rat).collect();
    Ok(LiftedFlow { flipped, values })
}
