//! Exact feasibility of a complete labeling, with no epsilons.
//!
//! A labeling fixes, per edge, either an exact point value or a unit interval
//! (m, m+1) in the scaled ring R/pZ.  Writing interval values as m + x with
//! x in the open (0, 1), vertex conservation forces at each vertex an integer
//! excess M congruent to minus the signed label sum mod p and confined to the
//! open interval (-#incoming-intervals, +#outgoing-intervals); the excesses
//! must sum to zero.  For each consistent excess vector, closed feasibility
//! of x in [0,1]^E is a transportation problem whose constraint matrix is
//! totally unimodular, so a max-flow either fails or returns a 0/1 vertex of
//! the polytope.  A strictly interior point exists iff, in the residual
//! digraph of that solution, every interval edge has both endpoints in one
//! strongly connected component; averaging the base solution with one
//! cycle-augmented variant per edge then gives exact rational values with
//! every x strictly between 0 and 1.

use super::search::Topology;
use super::Label;
use crate::interval::Rational;
use std::collections::VecDeque;

/// Tries to realize a complete labeling as an exact flow; returns per-edge
/// scaled values (in (0, p) resp. exactly the point value) or None.
pub(crate) fn solve_leaf(p: u32, labels: &[Label], topo: &Topology) -> Option<Vec<Rational>> {
    let pi = i64::from(p);
    let nv = topo.incid.len();
    let mut unit_pos: Vec<Option<usize>> = vec![None; labels.len()];
    let mut units: Vec<usize> = Vec::new();
    for (e, l) in labels.iter().enumerate() {
        if matches!(l, Label::Unit(_)) {
            unit_pos[e] = Some(units.len());
            units.push(e);
        }
    }
    // Per-vertex signed label sum and interval-edge counts by direction.
    let mut sums = vec![0i64; nv];
    let mut n_in = vec![0i64; nv];
    let mut n_out = vec![0i64; nv];
    for v in 0..nv {
        for &(e, sign) in &topo.incid[v] {
            let m = i64::from(labels[e].base());
            sums[v] += i64::from(sign) * m;
            if unit_pos[e].is_some() {
                if sign > 0 {
                    n_in[v] += 1;
                } else {
                    n_out[v] += 1;
                }
            }
        }
    }
    // Candidate excesses per vertex.  The excess is the exact value of the
    // signed sum of the fractional parts: it lies strictly between -n_out
    // and n_in (sign convention: incoming counts positive).
    let mut cands: Vec<Vec<i64>> = Vec::with_capacity(nv);
    for v in 0..nv {
        if n_in[v] + n_out[v] == 0 {
            if sums[v].rem_euclid(pi) != 0 {
                return None;
            }
            cands.push(vec![0]);
        } else {
            let list: Vec<i64> = ((1 - n_out[v])..=(n_in[v] - 1))
                .filter(|m| (m + sums[v]).rem_euclid(pi) == 0)
                .collect();
            if list.is_empty() {
                return None;
            }
            cands.push(list);
        }
    }
    // Suffix bounds for pruning the excess-vector enumeration.
    let mut smin = vec![0i64; nv + 1];
    let mut smax = vec![0i64; nv + 1];
    for v in (0..nv).rev() {
        smin[v] = smin[v + 1] + cands[v].iter().min().unwrap();
        smax[v] = smax[v + 1] + cands[v].iter().max().unwrap();
    }
    let mut chosen = vec![0i64; nv];
    enumerate_excesses(0, 0, &cands, &smin, &smax, &mut chosen, &mut |m_vec| {
        try_excess_vector(p, labels, topo, &units, &unit_pos, m_vec)
    })
}

/// Depth-first enumeration of excess vectors with a zero total, pruned by
/// suffix bounds; stops at the first vector the callback accepts.
fn enumerate_excesses(
    v: usize,
    partial: i64,
    cands: &[Vec<i64>],
    smin: &[i64],
    smax: &[i64],
    chosen: &mut Vec<i64>,
    accept: &mut dyn FnMut(&[i64]) -> Option<Vec<Rational>>,
) -> Option<Vec<Rational>> {
    if v == cands.len() {
        if partial == 0 {
            return accept(chosen);
        }
        return None;
    }
    for &m in &cands[v] {
        let s = partial + m;
        if s + smin[v + 1] <= 0 && 0 <= s + smax[v + 1] {
            chosen[v] = m;
            if let Some(values) = enumerate_excesses(v + 1, s, cands, smin, smax, chosen, accept)
            {
                return Some(values);
            }
        }
    }
    None
}

fn try_excess_vector(
    p: u32,
    labels: &[Label],
    topo: &Topology,
    units: &[usize],
    unit_pos: &[Option<usize>],
    excess: &[i64],
) -> Option<Vec<Rational>> {
    let nv = topo.incid.len();
    if units.is_empty() {
        // All-point labeling: conservation was already checked exactly.
        return Some(labels.iter().map(|l| Rational::from_integer(i64::from(l.base()))).collect());
    }
    // Transportation problem: each interval edge may carry 0 or 1 unit from
    // tail to head; a vertex with excess M needs net inflow M on those units.
    let s_node = nv;
    let t_node = nv + 1;
    let mut flow = FlowNet::new(nv + 2);
    let mut arc_of_unit = Vec::with_capacity(units.len());
    for &e in units {
        let (u, v) = topo.ends[e];
        arc_of_unit.push(flow.add_arc(u, v, 1));
    }
    let mut supply = 0i64;
    for v in 0..nv {
        if excess[v] < 0 {
            flow.add_arc(s_node, v, -excess[v]);
            supply += -excess[v];
        } else if excess[v] > 0 {
            flow.add_arc(v, t_node, excess[v]);
        }
    }
    if flow.maxflow(s_node, t_node) < supply {
        return None;
    }
    // 0/1 base solution.
    let x0: Vec<u8> = arc_of_unit.iter().map(|&a| (1 - flow.cap[a]) as u8).collect();
    // Residual digraph over real vertices: one arc per interval edge.
    let mut radj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    let mut arc_ends = Vec::with_capacity(units.len());
    for (i, &e) in units.iter().enumerate() {
        let (u, v) = topo.ends[e];
        let (a, b) = if x0[i] == 0 { (u, v) } else { (v, u) };
        radj[a].push((b, i));
        arc_ends.push((a, b));
    }
    let comp = strongly_connected_components(nv, &radj);
    for &(a, b) in &arc_ends {
        if comp[a] != comp[b] {
            return None;
        }
    }
    // Witness averaging: the base solution plus, for every interval edge, one
    // variant augmented along a residual cycle through that edge.  Every
    // coordinate then takes both values over the witnesses, so the average is
    // strictly between 0 and 1 in each coordinate.
    let count = 1 + units.len() as i64;
    let mut numer: Vec<i64> = x0.iter().map(|&x| i64::from(x)).collect();
    for (i, &(a, b)) in arc_ends.iter().enumerate() {
        let path = residual_path(b, a, &radj, nv);
        let mut flips = vec![false; units.len()];
        flips[i] = true;
        for &d in &path {
            flips[d] = true;
        }
        for (d, &fl) in flips.iter().enumerate() {
            let val = i64::from(x0[d]) ^ i64::from(fl);
            numer[d] += val;
        }
    }
    let mut values = Vec::with_capacity(labels.len());
    for (e, l) in labels.iter().enumerate() {
        let base = Rational::from_integer(i64::from(l.base()));
        match unit_pos[e] {
            Some(i) => values.push(base + Rational::new(numer[i], count)),
            None => values.push(base),
        }
    }
    debug_assert!(conserves(p, topo, &values));
    Some(values)
}

/// Exact conservation of scaled values at every vertex (mod p).
fn conserves(p: u32, topo: &Topology, values: &[Rational]) -> bool {
    use crate::interval::RationalMod;
    let p_rat = Rational::from_integer(i64::from(p));
    (0..topo.incid.len()).all(|v| {
        let mut sum = Rational::from_integer(0);
        for &(e, sign) in &topo.incid[v] {
            sum += Rational::from_integer(i64::from(sign)) * values[e];
        }
        sum.mod_floor(&p_rat) == Rational::from_integer(0)
    })
}

/// BFS path (as a list of interval-edge ids) from `from` to `to` in the
/// residual digraph.  A path always exists here: callers only ask within one
/// strongly connected component.
fn residual_path(from: usize, to: usize, radj: &[Vec<(usize, usize)>], nv: usize) -> Vec<usize> {
    if from == to {
        return Vec::new();
    }
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; nv];
    let mut queue = VecDeque::from([from]);
    let mut seen = vec![false; nv];
    seen[from] = true;
    while let Some(x) = queue.pop_front() {
        for &(y, d) in &radj[x] {
            if !seen[y] {
                seen[y] = true;
                prev[y] = Some((x, d));
                if y == to {
                    let mut path = Vec::new();
                    let mut cur = to;
                    while let Some((px, pd)) = prev[cur] {
                        path.push(pd);
                        cur = px;
                    }
                    return path;
                }
                queue.push_back(y);
            }
        }
    }
    unreachable!("endpoints lie in one strongly connected component");
}

/// Iterative Tarjan strongly-connected components; returns component ids.
fn strongly_connected_components(n: usize, adj: &[Vec<(usize, usize)>]) -> Vec<usize> {
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut comp = vec![usize::MAX; n];
    let mut counter = 0usize;
    let mut ncomp = 0usize;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut it)) = call.last_mut() {
            if *it < adj[v].len() {
                let (w, _) = adj[v][*it];
                *it += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&mut (parent, _)) = call.last_mut() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    while let Some(w) = stack.pop() {
                        on_stack[w] = false;
                        comp[w] = ncomp;
                        if w == v {
                            break;
                        }
                    }
                    ncomp += 1;
                }
            }
        }
    }
    comp
}

/// Plain Edmonds–Karp max-flow on an arc list with residual twins.
struct FlowNet {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
}

impl FlowNet {
    fn new(n: usize) -> Self {
        Self { head: vec![Vec::new(); n], to: Vec::new(), cap: Vec::new() }
    }

    fn add_arc(&mut self, u: usize, v: usize, c: i64) -> usize {
        let id = self.to.len();
        self.to.push(v);
        self.cap.push(c);
        self.head[u].push(id);
        self.to.push(u);
        self.cap.push(0);
        self.head[v].push(id + 1);
        id
    }

    fn maxflow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0i64;
        loop {
            let mut prev_arc: Vec<Option<usize>> = vec![None; self.head.len()];
            let mut queue = VecDeque::from([s]);
            let mut found = false;
            'bfs: while let Some(x) = queue.pop_front() {
                for &a in &self.head[x] {
                    let y = self.to[a];
                    if self.cap[a] > 0 && prev_arc[y].is_none() && y != s {
                        prev_arc[y] = Some(a);
                        if y == t {
                            found = true;
                            break 'bfs;
                        }
                        queue.push_back(y);
                    }
                }
            }
            if !found {
                return total;
            }
            let mut bottleneck = i64::MAX;
            let mut cur = t;
            while cur != s {
                let a = prev_arc[cur].unwrap();
                bottleneck = bottleneck.min(self.cap[a]);
                cur = self.to[a ^ 1];
            }
            let mut cur = t;
            while cur != s {
                let a = prev_arc[cur].unwrap();
                self.cap[a] -= bottleneck;
                self.cap[a ^ 1] += bottleneck;
                cur = self.to[a ^ 1];
            }
            total += bottleneck;
        }
    }
}
