//! Structural graph analysis: bridges, girth, cyclic edge-connectivity,
//! edge 3-colorability, and snark certification reports.
//!
//! Everything here treats the network as a plain multigraph; edge kinds are
//! ignored.  Algorithms are exact and deterministic.

use crate::error::{Error, Result};
use crate::network::{Network, VertexId};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Edge indices of all bridges (parallel edges never form bridges).
pub fn bridges(net: &Network) -> Vec<usize> {
    let index: BTreeMap<VertexId, usize> =
        net.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    let n = index.len();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (ei, e) in net.edges().iter().enumerate() {
        let (u, v) = (index[&e.u], index[&e.v]);
        adj[u].push((v, ei));
        adj[v].push((u, ei));
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![usize::MAX; n];
    let mut timer = 0usize;
    let mut out = Vec::new();
    // Iterative DFS; each frame remembers the edge used to enter the vertex.
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(&mut (v, enter, ref mut it)) = stack.last_mut() {
            if *it < adj[v].len() {
                let (w, ei) = adj[v][*it];
                *it += 1;
                if ei == enter {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, ei, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&mut (parent, _, _)) = stack.last_mut() {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > disc[parent] {
                        out.push(enter);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn has_bridge(net: &Network) -> bool {
    !bridges(net).is_empty()
}

/// Length of a shortest cycle; None for forests.  Parallel edges give 2.
pub fn girth(net: &Network) -> Option<u32> {
    let index: BTreeMap<VertexId, usize> =
        net.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    let n = index.len();
    let mut best: Option<u32> = None;
    // Girth = min over edges e = (u, v) of (shortest u-v path avoiding e) + 1.
    for (skip, e) in net.edges().iter().enumerate() {
        let (s, t) = (index[&e.u], index[&e.v]);
        let mut dist = vec![u32::MAX; n];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        'bfs: while let Some(x) = queue.pop_front() {
            for (ei, f) in net.edges().iter().enumerate() {
                if ei == skip {
                    continue;
                }
                let (a, b) = (index[&f.u], index[&f.v]);
                for (from, to) in [(a, b), (b, a)] {
                    if from == x && dist[to] == u32::MAX {
                        dist[to] = dist[x] + 1;
                        if to == t {
                            break 'bfs;
                        }
                        queue.push_back(to);
                    }
                }
            }
        }
        if dist[t] != u32::MAX {
            let cycle = dist[t] + 1;
            best = Some(best.map_or(cycle, |b| b.min(cycle)));
        }
    }
    best
}

/// Edge indices of one shortest cycle (deterministic: the first one found
/// scanning edges in index order); None for forests.
pub fn shortest_cycle(net: &Network) -> Option<Vec<usize>> {
    let g = girth(net)?;
    let index: BTreeMap<VertexId, usize> =
        net.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    let n = index.len();
    for (skip, e) in net.edges().iter().enumerate() {
        let (s, t) = (index[&e.u], index[&e.v]);
        let mut dist = vec![u32::MAX; n];
        let mut via: Vec<Option<(usize, usize)>> = vec![None; n];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        'bfs: while let Some(x) = queue.pop_front() {
            for (ei, f) in net.edges().iter().enumerate() {
                if ei == skip {
                    continue;
                }
                let (a, b) = (index[&f.u], index[&f.v]);
                for (from, to) in [(a, b), (b, a)] {
                    if from == x && dist[to] == u32::MAX {
                        dist[to] = dist[x] + 1;
                        via[to] = Some((x, ei));
                        if to == t {
                            break 'bfs;
                        }
                        queue.push_back(to);
                    }
                }
            }
        }
        if dist[t] != u32::MAX && dist[t] + 1 == g {
            let mut cycle = vec![skip];
            let mut cur = t;
            while let Some((prev, ei)) = via[cur] {
                cycle.push(ei);
                cur = prev;
            }
            return Some(cycle);
        }
    }
    None
}

/// True when no removal of fewer than `t` edges splits the graph into two or
/// more components that each contain a cycle.  Supported for t <= 4.
pub fn cyclic_edge_connectivity_at_least(net: &Network, t: u32) -> Result<bool> {
    if t > 4 {
        return Err(Error::Internal(
            "cyclic edge-connectivity supported for thresholds up to 4".into(),
        ));
    }
    let m = net.n_edges();
    for size in 0..t as usize {
        let mut pick = vec![0usize; size];
        if size == 0 {
            if splits_into_cyclic_parts(net, &[]) {
                return Ok(false);
            }
            continue;
        }
        // Enumerate all edge subsets of the given size.
        let mut i = 0usize;
        loop {
            if i == size {
                if splits_into_cyclic_parts(net, &pick) {
                    return Ok(false);
                }
                i -= 1;
                pick[i] += 1;
            } else if pick[i] + (size - i) > m {
                if i == 0 {
                    break;
                }
                i -= 1;
                pick[i] += 1;
            } else {
                if i + 1 < size {
                    pick[i + 1] = pick[i] + 1;
                }
                i += 1;
            }
        }
    }
    Ok(true)
}

/// Does deleting `removed` leave at least two components with a cycle?
/// A component has a cycle iff it has at least as many edges as vertices.
fn splits_into_cyclic_parts(net: &Network, removed: &[usize]) -> bool {
    let index: BTreeMap<VertexId, usize> =
        net.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    let n = index.len();
    let mut comp = vec![usize::MAX; n];
    let mut ncomp = 0usize;
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        comp[start] = ncomp;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for (ei, e) in net.edges().iter().enumerate() {
                if removed.contains(&ei) {
                    continue;
                }
                let (a, b) = (index[&e.u], index[&e.v]);
                for (from, to) in [(a, b), (b, a)] {
                    if from == x && comp[to] == usize::MAX {
                        comp[to] = ncomp;
                        stack.push(to);
                    }
                }
            }
        }
        ncomp += 1;
    }
    let mut vcount = vec![0usize; ncomp];
    let mut ecount = vec![0usize; ncomp];
    for &c in &comp {
        vcount[c] += 1;
    }
    for (ei, e) in net.edges().iter().enumerate() {
        if !removed.contains(&ei) {
            ecount[comp[index[&e.u]]] += 1;
        }
    }
    (0..ncomp).filter(|&c| ecount[c] >= vcount[c] && vcount[c] > 0).count() >= 2
}

/// Proper 3-edge-coloring decision for cubic multigraphs (backtracking).
pub fn is_3_edge_colorable(net: &Network) -> Result<bool> {
    if !net.is_cubic() {
        return Err(Error::NotCubic);
    }
    let m = net.n_edges();
    // Static edge order: BFS over the graph so constraints bind early.
    let order = bfs_edge_order(net);
    let mut color = vec![usize::MAX; m];
    // Incidence between edges: conflicting pairs share a vertex.
    let mut conflicts: Vec<Vec<usize>> = vec![Vec::new(); m];
    for i in 0..m {
        for j in 0..m {
            if i != j {
                let (a, b) = (&net.edges()[i], &net.edges()[j]);
                if a.touches(b.u) || a.touches(b.v) {
                    conflicts[i].push(j);
                }
            }
        }
    }
    fn dfs(
        pos: usize,
        order: &[usize],
        color: &mut [usize],
        conflicts: &[Vec<usize>],
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let e = order[pos];
        // Only symmetry break: the very first edge keeps color 0.
        let limit = if pos == 0 { 1 } else { 3 };
        for c in 0..limit {
            if conflicts[e].iter().all(|&f| color[f] != c) {
                color[e] = c;
                if dfs(pos + 1, order, color, conflicts) {
                    return true;
                }
                color[e] = usize::MAX;
            }
        }
        false
    }
    Ok(dfs(0, &order, &mut color, &conflicts))
}

/// Edges ordered by a BFS over the graph from the lowest vertex id:
/// when a vertex is dequeued, its not-yet-listed incident edges are appended
/// in (neighbor id, edge index) order.
pub fn bfs_edge_order(net: &Network) -> Vec<usize> {
    let mut order = Vec::with_capacity(net.n_edges());
    let mut listed = vec![false; net.n_edges()];
    let mut seen = std::collections::BTreeSet::new();
    let vertices: Vec<VertexId> = net.vertices().collect();
    for &root in &vertices {
        if seen.contains(&root) {
            continue;
        }
        seen.insert(root);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let mut inc: Vec<(VertexId, usize)> = net
                .incident(v)
                .into_iter()
                .map(|ei| (net.edges()[ei].other(v), ei))
                .collect();
            inc.sort_unstable();
            for (w, ei) in inc {
                if !listed[ei] {
                    listed[ei] = true;
                    order.push(ei);
                }
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

/// Snark certification summary for a network.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnarkReport {
    pub cubic: bool,
    pub girth: Option<u32>,
    pub cyclically_4_edge_connected: bool,
    pub three_edge_colorable: Option<bool>,
    pub is_snark: bool,
}

impl SnarkReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "cubic: {}", self.cubic);
        match self.girth {
            Some(g) => {
                let _ = writeln!(out, "girth: {g}");
            }
            None => {
                let _ = writeln!(out, "girth: none");
            }
        }
        let _ = writeln!(
            out,
            "cyclically_4_edge_connected: {}",
            self.cyclically_4_edge_connected
        );
        match self.three_edge_colorable {
            Some(c) => {
                let _ = writeln!(out, "three_edge_colorable: {c}");
            }
            None => {
                let _ = writeln!(out, "three_edge_colorable: n/a");
            }
        }
        let _ = writeln!(out, "is_snark: {}", self.is_snark);
        out
    }
}

/// A snark: cubic, girth >= 5, cyclically 4-edge-connected, chromatic index 4.
pub fn snark_report(net: &Network) -> Result<SnarkReport> {
    let cubic = net.is_cubic();
    let girth = girth(net);
    let cyc4 = cyclic_edge_connectivity_at_least(net, 4)?;
    let colorable = if cubic { Some(is_3_edge_colorable(net)?) } else { None };
    let is_snark =
        cubic && girth.is_some_and(|g| g >= 5) && cyc4 && colorable == Some(false);
    Ok(SnarkReport {
        cubic,
        girth,
        cyclically_4_edge_connected: cyc4,
        three_edge_colorable: colorable,
        is_snark,
    })
}

/// Generalized Petersen graph GP(n, k): outer n-cycle 0..n-1, spokes i—(n+i),
/// inner edges (n+i)—(n+(i+k) mod n).  GP(5, 2) is the Petersen graph.
pub fn generalized_petersen(n: u32, k: u32) -> Result<Network> {
    if n < 3 || k == 0 || k >= n || 2 * k == n {
        return Err(Error::Internal(format!("GP({n},{k}) is not defined")));
    }
    let mut g = Network::new_k5();
    for i in 0..n {
        g.add_simple(i, (i + 1) % n)?;
        g.add_simple(i, n + i)?;
        g.add_simple(n + i, n + (i + k) % n)?;
    }
    Ok(g)
}
