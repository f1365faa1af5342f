//! Two-terminal networks: multigraphs whose edges carry flow capacities.
//!
//! An edge is either `Simple` (capacity is the open base window (1, r-1),
//! scaled), `Abstract` (an explicit capacity in the scaled ring R/pZ, where
//! r = p/q in lowest terms is the network's modulus context), or a named
//! `Gadget` placeholder that downstream code resolves to a declared capacity
//! or to a concrete splice.  Self-loops are rejected everywhere; parallel
//! edges are first-class citizens.
//!
//! A [`GEdge`] is a network with two distinguished terminals: the unit of
//! composition for the serial/parallel capacity calculus and the object whose
//! open r-capacity the flow engine measures.
//!
//! The module also owns the plain-text `cfnet` network format, the
//! three-uniform hypergraph format, and rational modulus parsing.

use crate::error::{Error, Result};
use crate::interval::{IntervalSet, Rational};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

pub type VertexId = u32;

/// What an edge admits as flow values.
#[derive(Clone, Debug, PartialEq)]
pub enum EdgeKind {
    /// Capacity is the open base window (q, p-q) in the scaled ring.
    Simple,
    /// Explicit capacity, expressed in the scaled ring R/pZ.
    Abstract(IntervalSet),
    /// Named gadget, resolved later (to a capacity or a concrete splice).
    Gadget(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub kind: EdgeKind,
}

impl Edge {
    /// The endpoint other than `x` (either one for a parallel self-check).
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }
}

/// A multigraph with typed edges and a rational modulus context r = p/q.
#[derive(Clone, Debug, PartialEq)]
pub struct Network {
    r: Rational,
    vertices: BTreeSet<VertexId>,
    edges: Vec<Edge>,
}

impl Network {
    /// Empty network with modulus context r; requires 2 < r and numerator <= 63.
    pub fn new(r: Rational) -> Result<Self> {
        check_context(r)?;
        Ok(Self { r, vertices: BTreeSet::new(), edges: Vec::new() })
    }

    /// Empty network with the default context r = 5.
    pub fn new_k5() -> Self {
        Self::new(Rational::from_integer(5)).expect("5 is a valid context")
    }

    pub fn r(&self) -> Rational {
        self.r
    }

    /// Numerator of r in lowest terms: the scaled ring is R/pZ.
    pub fn scaled_modulus(&self) -> u32 {
        *self.r.numer() as u32
    }

    /// Denominator of r in lowest terms: the scale factor.
    pub fn scale(&self) -> u32 {
        *self.r.denom() as u32
    }

    /// The open base window (q, p-q): the scaled image of (1, r-1).
    pub fn base_window(&self) -> IntervalSet {
        let p = self.scaled_modulus();
        let q = self.scale();
        IntervalSet::interval(p, q, p - q).expect("window endpoints are in range")
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.vertices.insert(v);
    }

    /// Adds an edge, creating missing endpoints; rejects self-loops and
    /// abstract capacities whose modulus is not the scaled modulus p.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId, kind: EdgeKind) -> Result<usize> {
        if u == v {
            return Err(Error::SelfLoop);
        }
        if let EdgeKind::Abstract(set) = &kind {
            if set.modulus() != self.scaled_modulus() {
                return Err(Error::ModulusMismatch(set.modulus(), self.scaled_modulus()));
            }
        }
        self.vertices.insert(u);
        self.vertices.insert(v);
        self.edges.push(Edge { u, v, kind });
        Ok(self.edges.len() - 1)
    }

    pub fn add_simple(&mut self, u: VertexId, v: VertexId) -> Result<usize> {
        self.add_edge(u, v, EdgeKind::Simple)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Indices of edges incident to v, in edge order.
    pub fn incident(&self, v: VertexId) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.touches(v))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident(v).len()
    }

    pub fn is_cubic(&self) -> bool {
        !self.vertices.is_empty() && self.vertices().all(|v| self.degree(v) == 3)
    }

    pub fn all_simple(&self) -> bool {
        self.edges.iter().all(|e| e.kind == EdgeKind::Simple)
    }

    pub fn max_vertex_id(&self) -> Option<VertexId> {
        self.vertices.iter().next_back().copied()
    }

    /// Effective capacity of an edge in the scaled ring; gadget edges must
    /// have been resolved first.
    pub fn capacity_of(&self, e: usize) -> Result<IntervalSet> {
        match &self.edges.get(e).ok_or(Error::UnknownEdge(e))?.kind {
            EdgeKind::Simple => Ok(self.base_window()),
            EdgeKind::Abstract(set) => Ok(*set),
            EdgeKind::Gadget(name) => Err(Error::UnknownGadget(format!(
                "unresolved gadget edge '{name}' (resolve before analysis)"
            ))),
        }
    }

    /// Connected components as sorted vertex lists (edges of any kind connect).
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &self.vertices {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = vec![start];
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(v) = stack.pop() {
                for e in &self.edges {
                    if e.touches(v) {
                        let w = e.other(v);
                        if seen.insert(w) {
                            comp.push(w);
                            stack.push(w);
                        }
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Replaces vertex `x` by a disjoint copy of `replacement`, reattaching
    /// every edge formerly incident to `x` at the replacement vertex chosen
    /// by `attach` (keyed by edge index in `self`).
    pub fn expand_vertex(
        &self,
        x: VertexId,
        replacement: &Network,
        attach: &BTreeMap<usize, VertexId>,
    ) -> Result<Network> {
        if !self.has_vertex(x) {
            return Err(Error::UnknownVertex(x));
        }
        if replacement.r != self.r {
            return Err(Error::ContextMismatch(
                render_rational(replacement.r),
                render_rational(self.r),
            ));
        }
        for (&e, &t) in attach {
            if e >= self.edges.len() || !self.edges[e].touches(x) {
                return Err(Error::UnknownEdge(e));
            }
            if !replacement.has_vertex(t) {
                return Err(Error::BadAttachment(t));
            }
        }
        let offset = self.max_vertex_id().map_or(0, |m| m + 1);
        let map = |v: VertexId| offset + v;
        let mut out = Network::new(self.r)?;
        for &v in &self.vertices {
            if v != x {
                out.add_vertex(v);
            }
        }
        for &v in &replacement.vertices {
            out.add_vertex(map(v));
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.touches(x) {
                let &t = attach
                    .get(&i)
                    .ok_or(Error::UnmappedAttachment { vertex: x, edge: i })?;
                let (u, v) = if e.u == x { (map(t), e.v) } else { (e.u, map(t)) };
                out.add_edge(u, v, e.kind.clone())?;
            } else {
                out.add_edge(e.u, e.v, e.kind.clone())?;
            }
        }
        for e in &replacement.edges {
            out.add_edge(map(e.u), map(e.v), e.kind.clone())?;
        }
        Ok(out)
    }

    /// Removes a degree-2 vertex whose two incident edges are simple,
    /// merging them into one simple edge.
    pub fn smooth_vertex(&self, x: VertexId) -> Result<Network> {
        if !self.has_vertex(x) {
            return Err(Error::UnknownVertex(x));
        }
        let inc = self.incident(x);
        if inc.len() != 2 {
            return Err(Error::WrongDegree(x, inc.len(), 2));
        }
        for &i in &inc {
            if self.edges[i].kind != EdgeKind::Simple {
                return Err(Error::NotSimple(i));
            }
        }
        let a = self.edges[inc[0]].other(x);
        let b = self.edges[inc[1]].other(x);
        if a == b {
            return Err(Error::SmoothingLoop(x));
        }
        let mut out = Network::new(self.r)?;
        for &v in &self.vertices {
            if v != x {
                out.add_vertex(v);
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            if !inc.contains(&i) {
                out.add_edge(e.u, e.v, e.kind.clone())?;
            }
        }
        out.add_simple(a, b)?;
        Ok(out)
    }

    /// Splits a simple edge by a fresh degree-2 vertex (inverse of smoothing).
    pub fn subdivide_edge(&self, e: usize) -> Result<Network> {
        let edge = self.edges.get(e).ok_or(Error::UnknownEdge(e))?.clone();
        if edge.kind != EdgeKind::Simple {
            return Err(Error::NotSimple(e));
        }
        let mid = self.max_vertex_id().map_or(0, |m| m + 1);
        let mut out = self.clone();
        out.edges.remove(e);
        out.add_vertex(mid);
        out.add_simple(edge.u, mid)?;
        out.add_simple(mid, edge.v)?;
        Ok(out)
    }

    /// Changes the kind of one edge in place (e.g. simple -> abstract capacity).
    pub fn replace_edge_kind(&self, e: usize, kind: EdgeKind) -> Result<Network> {
        if e >= self.edges.len() {
            return Err(Error::UnknownEdge(e));
        }
        if let EdgeKind::Abstract(set) = &kind {
            if set.modulus() != self.scaled_modulus() {
                return Err(Error::ModulusMismatch(set.modulus(), self.scaled_modulus()));
            }
        }
        let mut out = self.clone();
        out.edges[e].kind = kind;
        Ok(out)
    }

    /// Splices a two-terminal network in place of edge `e`: the terminals of
    /// `g` are identified with the endpoints of `e` (u with e.u, v with e.v)
    /// and the interior of `g` is copied on fresh vertex ids.
    pub fn replace_edge_with_gedge(&self, e: usize, g: &GEdge) -> Result<Network> {
        let edge = self.edges.get(e).ok_or(Error::UnknownEdge(e))?.clone();
        if g.network.r != self.r {
            return Err(Error::ContextMismatch(
                render_rational(g.network.r),
                render_rational(self.r),
            ));
        }
        let offset = self.max_vertex_id().map_or(0, |m| m + 1);
        let map = |w: VertexId| {
            if w == g.u {
                edge.u
            } else if w == g.v {
                edge.v
            } else {
                offset + w
            }
        };
        let mut out = Network::new(self.r)?;
        for &v in &self.vertices {
            out.add_vertex(v);
        }
        for &v in &g.network.vertices {
            out.add_vertex(map(v));
        }
        for (i, old) in self.edges.iter().enumerate() {
            if i != e {
                out.add_edge(old.u, old.v, old.kind.clone())?;
            }
        }
        for ge in &g.network.edges {
            out.add_edge(map(ge.u), map(ge.v), ge.kind.clone())?;
        }
        Ok(out)
    }

    /// Renders the `cfnet` text format (vertices renumbered 0..n-1 in
    /// ascending id order, edges in stored order).
    pub fn render(&self) -> String {
        self.render_with_terminals(None)
    }

    pub fn render_with_terminals(&self, terminals: Option<(VertexId, VertexId)>) -> String {
        let index: BTreeMap<VertexId, usize> =
            self.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut out = String::new();
        let _ = writeln!(out, "cfnet {} {}", render_rational(self.r), self.vertices.len());
        for e in &self.edges {
            let kind = match &e.kind {
                EdgeKind::Simple => "simple".to_owned(),
                EdgeKind::Abstract(set) => set.render(),
                EdgeKind::Gadget(name) => format!("gadget:{name}"),
            };
            let _ = writeln!(out, "{} {} {}", index[&e.u], index[&e.v], kind);
        }
        if let Some((u, v)) = terminals {
            let _ = writeln!(out, "terminals {} {}", index[&u], index[&v]);
        }
        out
    }

    /// Parses the `cfnet` format; returns the network and optional terminals.
    pub fn parse(text: &str) -> Result<(Network, Option<(VertexId, VertexId)>)> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty network file".into()))?;
        let mut hp = header.split_whitespace();
        if hp.next() != Some("cfnet") {
            return Err(Error::Parse("expected 'cfnet <r> <n>' header".into()));
        }
        let r = parse_rational(hp.next().ok_or_else(|| Error::Parse("missing r".into()))?)?;
        let n: u32 = hp
            .next()
            .ok_or_else(|| Error::Parse("missing vertex count".into()))?
            .parse()
            .map_err(|_| Error::Parse("bad vertex count".into()))?;
        let mut net = Network::new(r)?;
        let p = net.scaled_modulus();
        for v in 0..n {
            net.add_vertex(v);
        }
        let mut terminals = None;
        for line in lines {
            let mut parts = line.split_whitespace();
            let first = parts.next().unwrap();
            if first == "terminals" {
                let u = parse_vertex(parts.next(), n)?;
                let v = parse_vertex(parts.next(), n)?;
                if u == v {
                    return Err(Error::BadTerminals);
                }
                terminals = Some((u, v));
                continue;
            }
            let u = parse_vertex(Some(first), n)?;
            let v = parse_vertex(parts.next(), n)?;
            let kind_text = parts.collect::<Vec<_>>().join(" ");
            let kind = if kind_text == "simple" {
                EdgeKind::Simple
            } else if let Some(name) = kind_text.strip_prefix("gadget:") {
                EdgeKind::Gadget(name.to_owned())
            } else {
                let set = IntervalSet::parse(p, &kind_text)?;
                if !set.is_symmetric() {
                    return Err(Error::AsymmetricCapacity(kind_text));
                }
                EdgeKind::Abstract(set)
            };
            net.add_edge(u, v, kind)?;
        }
        Ok((net, terminals))
    }
}

fn parse_vertex(tok: Option<&str>, n: u32) -> Result<VertexId> {
    let t = tok.ok_or_else(|| Error::Parse("missing vertex id".into()))?;
    let v: u32 = t.parse().map_err(|_| Error::Parse(format!("bad vertex id '{t}'")))?;
    if v >= n {
        return Err(Error::Parse(format!("vertex id {v} >= declared count {n}")));
    }
    Ok(v)
}

fn check_context(r: Rational) -> Result<()> {
    let two = Rational::from_integer(2);
    if r <= two || *r.numer() > 63 || *r.numer() <= 0 {
        return Err(Error::UnsupportedModulus(render_rational(r)));
    }
    Ok(())
}

/// A network with two distinguished terminal vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct GEdge {
    pub network: Network,
    pub u: VertexId,
    pub v: VertexId,
}

impl GEdge {
    pub fn new(network: Network, u: VertexId, v: VertexId) -> Result<Self> {
        if u == v || !network.has_vertex(u) || !network.has_vertex(v) {
            return Err(Error::BadTerminals);
        }
        Ok(Self { network, u, v })
    }

    /// A single edge of the given kind between two fresh terminals.
    pub fn primitive(r: Rational, kind: EdgeKind) -> Result<Self> {
        let mut net = Network::new(r)?;
        net.add_edge(0, 1, kind)?;
        Self::new(net, 0, 1)
    }

    /// A single simple edge at context r.
    pub fn simple(r: Rational) -> Result<Self> {
        Self::primitive(r, EdgeKind::Simple)
    }

    /// Parallel join: identify the terminal pairs of both g-edges.
    pub fn parallel(&self, other: &GEdge) -> Result<GEdge> {
        let mut net = self.network.clone();
        let offset = net.max_vertex_id().map_or(0, |m| m + 1);
        let map = |w: VertexId| {
            if w == other.u {
                self.u
            } else if w == other.v {
                self.v
            } else {
                offset + w
            }
        };
        for v in other.network.vertices() {
            net.add_vertex(map(v));
        }
        for e in other.network.edges() {
            net.add_edge(map(e.u), map(e.v), e.kind.clone())?;
        }
        GEdge::new(net, self.u, self.v)
    }

    /// Serial join: identify self.v with other.u; terminals (self.u, other.v).
    pub fn serial(&self, other: &GEdge) -> Result<GEdge> {
        let mut net = self.network.clone();
        let offset = net.max_vertex_id().map_or(0, |m| m + 1);
        let map = |w: VertexId| if w == other.u { self.v } else { offset + w };
        for v in other.network.vertices() {
            net.add_vertex(map(v));
        }
        for e in other.network.edges() {
            net.add_edge(map(e.u), map(e.v), e.kind.clone())?;
        }
        GEdge::new(net, self.u, map(other.v))
    }

    pub fn render(&self) -> String {
        self.network.render_with_terminals(Some((self.u, self.v)))
    }
}

/// A 3-uniform hypergraph: the input of the 2-coloring reduction.
#[derive(Clone, Debug, PartialEq)]
pub struct Hypergraph3 {
    nodes: Vec<u32>,
    triplets: Vec<[u32; 3]>,
}

impl Hypergraph3 {
    /// Nodes are the ids occurring in triplets, sorted ascending.
    pub fn new(triplets: Vec<[u32; 3]>) -> Result<Self> {
        let mut nodes = BTreeSet::new();
        for t in &triplets {
            if t[0] == t[1] || t[0] == t[2] || t[1] == t[2] {
                return Err(Error::Hypergraph(format!(
                    "triplet {t:?} has repeated nodes"
                )));
            }
            nodes.extend(t.iter().copied());
        }
        Ok(Self { nodes: nodes.into_iter().collect(), triplets })
    }

    pub fn nodes(&self) -> &[u32] {
        &self.nodes
    }

    pub fn triplets(&self) -> &[[u32; 3]] {
        &self.triplets
    }

    /// Number of triplets containing the node.
    pub fn occurrences(&self, node: u32) -> usize {
        self.triplets.iter().filter(|t| t.contains(&node)).count()
    }

    /// One triplet per line: `a b c`.  `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut triplets = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let ids: Vec<u32> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::Hypergraph(format!("bad node id '{t}'"))))
                .collect::<Result<_>>()?;
            if ids.len() != 3 {
                return Err(Error::Hypergraph(format!(
                    "expected 3 node ids per line, got {}",
                    ids.len()
                )));
            }
            triplets.push([ids[0], ids[1], ids[2]]);
        }
        Self::new(triplets)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for t in &self.triplets {
            let _ = writeln!(out, "{} {} {}", t[0], t[1], t[2]);
        }
        out
    }
}

/// Parses "5" or "9/2" into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("bad rational '{text}'"));
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let numer: i64 = n.trim().parse().map_err(|_| bad())?;
    let denom: i64 = d.trim().parse().map_err(|_| bad())?;
    if denom == 0 {
        return Err(bad());
    }
    Ok(Rational::new(numer, denom))
}

/// Renders a rational as "5" or "9/2" (lowest terms).
pub fn render_rational(r: Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Network {
        let mut g = Network::new_k5();
        for (u, v) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            g.add_simple(u, v).unwrap();
        }
        g
    }

    #[test]
    fn degrees_and_components() {
        let g = k4();
        assert_eq!(g.n_vertices(), 4);
        assert_eq!(g.n_edges(), 6);
        assert!(g.is_cubic());
        assert!(g.is_connected());
        assert_eq!(g.base_window().render(), "(1,4)");
    }

    #[test]
    fn self_loops_are_rejected() {
        let mut g = Network::new_k5();
        assert!(matches!(g.add_simple(1, 1), Err(Error::SelfLoop)));
    }

    #[test]
    fn abstract_capacity_modulus_is_checked() {
        let mut g = Network::new_k5();
        let wrong = IntervalSet::parse(7, "(1,6)").unwrap();
        assert!(g.add_edge(0, 1, EdgeKind::Abstract(wrong)).is_err());
        let right = IntervalSet::parse(5, "(4,1)").unwrap();
        assert!(g.add_edge(0, 1, EdgeKind::Abstract(right)).is_ok());
    }

    #[test]
    fn expansion_into_single_vertex_is_identity_up_to_ids() {
        let g = k4();
        let mut single = Network::new_k5();
        single.add_vertex(0);
        let attach: BTreeMap<usize, VertexId> =
            g.incident(2).into_iter().map(|e| (e, 0)).collect();
        let h = g.expand_vertex(2, &single, &attach).unwrap();
        assert_eq!(h.n_vertices(), 4);
        assert_eq!(h.n_edges(), 6);
        assert!(h.is_cubic());
    }

    #[test]
    fn expansion_requires_full_attachment() {
        let g = k4();
        let mut single = Network::new_k5();
        single.add_vertex(0);
        let mut attach: BTreeMap<usize, VertexId> =
            g.incident(2).into_iter().map(|e| (e, 0)).collect();
        let missing = *attach.keys().next().unwrap();
        attach.remove(&missing);
        assert!(matches!(
            g.expand_vertex(2, &single, &attach),
            Err(Error::UnmappedAttachment { .. })
        ));
    }

    #[test]
    fn smoothing_inverts_subdivision() {
        let g = k4();
        let mut sub = g.clone();
        let m = g.n_edges();
        for _ in 0..m {
            sub = sub.subdivide_edge(0).unwrap();
        }
        assert_eq!(sub.n_vertices(), 4 + 6);
        assert!(sub.vertices().filter(|&v| sub.degree(v) == 2).count() == 6);
        let mut smooth = sub;
        loop {
            let next = smooth.vertices().find(|&v| smooth.degree(v) == 2);
            match next {
                Some(v) => smooth = smooth.smooth_vertex(v).unwrap(),
                None => break,
            }
        }
        assert_eq!(smooth.n_vertices(), 4);
        assert_eq!(smooth.n_edges(), 6);
        let mut pairs: Vec<(VertexId, VertexId)> = smooth
            .edges()
            .iter()
            .map(|e| (e.u.min(e.v), e.u.max(e.v)))
            .collect();
        pairs.sort_unstable();
        assert_eq!(pairs, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn smoothing_rejects_wrong_degree_and_loops() {
        let g = k4();
        assert!(matches!(g.smooth_vertex(0), Err(Error::WrongDegree(0, 3, 2))));
        let mut pair = Network::new_k5();
        pair.add_simple(0, 1).unwrap();
        pair.add_simple(0, 1).unwrap();
        assert!(matches!(pair.smooth_vertex(0), Err(Error::SmoothingLoop(0))));
    }

    #[test]
    fn splice_replaces_an_edge_by_a_network() {
        let g = k4();
        // Two-terminal path of length 2 as the replacement.
        let mut path = Network::new_k5();
        path.add_simple(0, 1).unwrap();
        path.add_simple(1, 2).unwrap();
        let ged = GEdge::new(path, 0, 2).unwrap();
        let h = g.replace_edge_with_gedge(0, &ged).unwrap();
        assert_eq!(h.n_vertices(), 5);
        assert_eq!(h.n_edges(), 7);
        assert_eq!(h.degree(0), 3);
        assert_eq!(h.degree(1), 3);
    }

    #[test]
    fn parallel_and_serial_joins_compose_networks() {
        let r = Rational::from_integer(5);
        let a = GEdge::simple(r).unwrap();
        let b = GEdge::simple(r).unwrap();
        let par = a.parallel(&b).unwrap();
        assert_eq!(par.network.n_vertices(), 2);
        assert_eq!(par.network.n_edges(), 2);
        let ser = a.serial(&b).unwrap();
        assert_eq!(ser.network.n_vertices(), 3);
        assert_eq!(ser.network.n_edges(), 2);
        assert_ne!(ser.u, ser.v);
    }

    #[test]
    fn network_text_round_trip() {
        let mut g = Network::new_k5();
        g.add_simple(0, 1).unwrap();
        g.add_edge(1, 2, EdgeKind::Abstract(IntervalSet::parse(5, "(1,2)u(3,4)").unwrap()))
            .unwrap();
        g.add_edge(2, 0, EdgeKind::Gadget("petersen_minus_edge".into())).unwrap();
        let text = g.render_with_terminals(Some((0, 2)));
        let (h, term) = Network::parse(&text).unwrap();
        assert_eq!(h, g);
        assert_eq!(term, Some((0, 2)));
        // Rational context round-trips too.
        let mut s = Network::new(Rational::new(9, 2)).unwrap();
        s.add_simple(0, 1).unwrap();
        let (t, _) = Network::parse(&s.render()).unwrap();
        assert_eq!(t.r(), Rational::new(9, 2));
        assert_eq!(t.base_window().render(), "(2,7)");
    }

    #[test]
    fn network_parse_rejects_asymmetric_capacity() {
        let text = "cfnet 5 2\n0 1 (1,2)\n";
        assert!(matches!(Network::parse(text), Err(Error::AsymmetricCapacity(_))));
    }

    #[test]
    fn hypergraph_parse_and_occurrences() {
        let h = Hypergraph3::parse("1 2 3\n2 3 4 # comment\n").unwrap();
        assert_eq!(h.nodes(), &[1, 2, 3, 4]);
        assert_eq!(h.occurrences(2), 2);
        assert_eq!(h.occurrences(4), 1);
        assert!(Hypergraph3::parse("1 1 2\n").is_err());
        assert!(Hypergraph3::parse("1 2\n").is_err());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("5").unwrap(), Rational::from_integer(5));
        assert_eq!(parse_rational("9/2").unwrap(), Rational::new(9, 2));
        assert_eq!(render_rational(Rational::new(14, 3)), "14/3");
        assert_eq!(render_rational(Rational::from_integer(5)), "5");
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(Network::new(Rational::new(3, 2)).is_err());
        assert!(Network::new(Rational::new(301, 60)).is_err());
    }
}
