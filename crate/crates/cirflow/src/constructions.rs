//! The gadget atlas and family generators.
//!
//! Named two-terminal gadgets with documented capacities, the capacity
//! catalog generated by the serial/parallel calculus, and the surgery-based
//! constructions of graphs whose circular flow number is at least 5:
//! odd-cycle capacity replacement, cycle replacement over low-amplitude
//! capacity sets, the 28-vertex snark, the butterfly g-edge, the recursive
//! Petersen-splice family, forced (2,3)-pairs, and empty-capacity edges.

use crate::analysis;
use crate::error::{Error, Result};
use crate::interval::{IntervalSet, Rational};
use crate::network::{render_rational, EdgeKind, GEdge, Network, VertexId};
use std::collections::{BTreeMap, BTreeSet};

fn si5(text: &str) -> IntervalSet {
    IntervalSet::parse(5, text).expect("catalog literal is valid")
}

fn r5() -> Rational {
    Rational::from_integer(5)
}

fn require_r5(net: &Network) -> Result<()> {
    if net.r() != r5() {
        return Err(Error::ContextMismatch("5".into(), render_rational(net.r())));
    }
    Ok(())
}

/// The Petersen graph: outer 5-cycle 0..4, spokes i -- i+5, inner pentagram.
pub fn petersen() -> Network {
    analysis::generalized_petersen(5, 2).expect("GP(5,2) is defined")
}

/// The (4,1)-edge: the Petersen graph minus the outer edge between 0 and 1,
/// with the freed endpoints as terminals.  The Petersen graph is edge-
/// transitive, so the choice of removed edge is immaterial; one is fixed for
/// reproducibility.
pub fn petersen_minus_edge() -> GEdge {
    let mut g = Network::new_k5();
    for i in 0..5u32 {
        if i != 0 {
            g.add_simple(i, (i + 1) % 5).expect("distinct endpoints");
        }
        g.add_simple(i, 5 + i).expect("distinct endpoints");
        g.add_simple(5 + i, 5 + (i + 2) % 5).expect("distinct endpoints");
    }
    GEdge::new(g, 0, 1).expect("terminals exist")
}

fn k4_with_triangle(cap: IntervalSet) -> Network {
    // Vertices 0 = u, 1 = v, 2 = the third triangle vertex, 3 = the apex.
    // The triangle edges u--2 and 2--v carry `cap`; the edge u--v is absent.
    let mut g = Network::new_k5();
    g.add_edge(0, 2, EdgeKind::Abstract(cap)).expect("valid edge");
    g.add_edge(2, 1, EdgeKind::Abstract(cap)).expect("valid edge");
    g.add_simple(0, 3).expect("valid edge");
    g.add_simple(1, 3).expect("valid edge");
    g.add_simple(2, 3).expect("valid edge");
    g
}

/// The thick (1,4)-edge: K4 with two triangle edges replaced by (4,1)-edges
/// and the third triangle edge removed; its endpoints are the terminals.
pub fn thick_14_edge() -> GEdge {
    GEdge::new(k4_with_triangle(si5("(4,1)")), 0, 1).expect("terminals exist")
}

/// The thick (1,4)-edge with both (4,1)-edges spliced out into full
/// Petersen-minus-edge copies: 20 vertices, 31 edges, all concrete.
pub fn thick_14_edge_concrete() -> GEdge {
    let abs = thick_14_edge();
    let p = petersen_minus_edge();
    let net = abs
        .network
        .replace_edge_with_gedge(0, &p)
        .and_then(|n| n.replace_edge_with_gedge(0, &p))
        .expect("splice of fixed gadget succeeds");
    GEdge::new(net, 0, 1).expect("terminals exist")
}

/// The (4,1)∪(2,3)-gadget: K4 with two triangle edges replaced by
/// (1,2)∪(3,4)-edges and the third triangle edge removed.
pub fn k4_gadget() -> GEdge {
    GEdge::new(k4_with_triangle(si5("(1,2)u(3,4)")), 0, 1).expect("terminals exist")
}

/// The butterfly (1,4)-edge: a thick (1,4)-edge whose two wing edges (the
/// simple edges from each terminal to the apex) are themselves replaced by
/// thick (1,4)-edges.  8 vertices, 13 edges.
pub fn butterfly() -> GEdge {
    let thick = thick_14_edge();
    // Edge order of the thick edge: [0] u--2, [1] 2--v (both (4,1)),
    // [2] u--3, [3] v--3, [4] 2--3.  Splicing removes the edge and appends
    // the gadget, so the second wing is at index 2 again after the first.
    let net = thick
        .network
        .replace_edge_with_gedge(2, &thick)
        .and_then(|n| n.replace_edge_with_gedge(2, &thick))
        .expect("splice of fixed gadget succeeds");
    GEdge::new(net, 0, 1).expect("terminals exist")
}

/// One catalog row: a capacity known to be graphic, the calculus expression
/// generating it from (1,4), (4,1) and the K4-gadget capacity, its declared
/// amplitude and measure, and a two-terminal witness network.
pub struct CatalogEntry {
    pub set: IntervalSet,
    pub recipe: &'static str,
    pub amplitude: u32,
    pub measure: u32,
    pub builder: GEdge,
}

impl CatalogEntry {
    pub fn name(&self) -> String {
        self.set.render()
    }
}

/// The sixteen graphic capacity classes modulo 5, each with a generating
/// expression over the calculus (+ is the parallel join, ^ the serial join)
/// and a witness g-edge assembled from the corresponding compositions of a
/// simple edge, an abstract (4,1)-edge, and the K4 gadget.
pub fn gi5_catalog() -> Vec<CatalogEntry> {
    let simple = GEdge::simple(r5()).expect("simple primitive");
    let p41 = GEdge::primitive(r5(), EdgeKind::Abstract(si5("(4,1)")))
        .expect("(4,1) primitive");
    let k4g = k4_gadget();
    let par = |a: &GEdge, b: &GEdge| a.parallel(b).expect("parallel join");
    let ser = |a: &GEdge, b: &GEdge| a.serial(b).expect("serial join");

    let full = par(&simple, &simple);
    let c32 = par(&p41, &p41);
    let c00 = par(&p41, &simple);
    let c1234 = ser(&c32, &simple);
    let big = par(&c1234, &c1234);
    let big0 = ser(&big, &c00);

    let e = |recipe: &'static str,
             set: &str,
             amplitude: u32,
             measure: u32,
             builder: GEdge| CatalogEntry {
        set: si5(set),
        recipe,
        amplitude,
        measure,
        builder,
    };

    vec![
        e("(1,4)", "(1,4)", 3, 3, simple.clone()),
        e("(1,4)+(1,4)", "full", 5, 5, full),
        e("(4,1)", "(4,1)", 2, 2, p41.clone()),
        e("(1,4)^(4,1)", "empty", 0, 0, ser(&simple, &p41)),
        e("(4,1)+(4,1)", "(3,2)", 4, 4, c32.clone()),
        e("(4,1)+(1,4)", "(0,0)", 5, 5, c00.clone()),
        e("(4,1)^((4,1)+(1,4))", "(4,0)u(0,1)", 2, 2, ser(&p41, &c00)),
        e(
            "((4,1)+(1,4))^((4,1)+(4,1))",
            "(3,0)u(0,2)",
            4,
            4,
            ser(&c00, &c32),
        ),
        e("((4,1)+(4,1))^(1,4)", "(1,2)u(3,4)", 3, 2, c1234.clone()),
        e(
            "((1,2)u(3,4))+((1,2)u(3,4))",
            "(1,4)u(4,1)",
            5,
            5,
            big.clone(),
        ),
        e(
            "(((1,2)u(3,4))+((1,2)u(3,4)))^((4,1)+(1,4))",
            "(0,1)u(1,4)u(4,0)",
            5,
            5,
            big0.clone(),
        ),
        e(
            "((4,1)+(4,1))^(((1,2)u(3,4))+((1,2)u(3,4)))",
            "(1,2)u(3,4)u(4,1)",
            4,
            4,
            ser(&c32, &big),
        ),
        e(
            "((4,1)+(4,1))^((((1,2)u(3,4))+((1,2)u(3,4)))^((4,1)+(1,4)))",
            "(0,1)u(1,2)u(3,4)u(4,0)",
            4,
            4,
            ser(&c32, &big0),
        ),
        e("(4,1)u(2,3)", "(4,1)u(2,3)", 4, 3, k4g.clone()),
        e(
            "((4,1)u(2,3))^((4,1)+(1,4))",
            "(2,3)u(4,0)u(0,1)",
            4,
            3,
            ser(&k4g, &c00),
        ),
        e("((4,1)u(2,3))^(1,4)", "(2,3)", 1, 1, ser(&k4g, &simple)),
    ]
}

/// Resolves a gadget name to its g-edge at context r.  The Petersen-based
/// gadget and the abstract Q_r primitive work for every rational r in (4,5];
/// the remaining named gadgets are defined at r = 5 only.
pub fn resolve_gadget(name: &str, r: Rational) -> Result<GEdge> {
    let four = Rational::from_integer(4);
    let five = Rational::from_integer(5);
    if r <= four || r > five {
        return Err(Error::UnsupportedModulus(render_rational(r)));
    }
    let p = *r.numer() as u32;
    let q = *r.denom() as u32;
    match name {
        // All-simple, so it can be re-contexted to any r; its open
        // r-capacity is the scaled image of (4, r-4).
        "petersen_minus_edge" => {
            let g = petersen_minus_edge();
            if r == five {
                Ok(g)
            } else {
                let mut net = Network::new(r)?;
                for e in g.network.edges() {
                    net.add_edge(e.u, e.v, e.kind.clone())?;
                }
                GEdge::new(net, g.u, g.v)
            }
        }
        // The abstract (r-1,1)-edge; a concrete serial/parallel assembly
        // exists for every rational r in (4,5) but is kept abstract here.
        "qr" => {
            let cap = IntervalSet::interval(p, p - q, q)?;
            GEdge::primitive(r, EdgeKind::Abstract(cap))
        }
        "thick14" if r == five => Ok(thick_14_edge()),
        "thick14_concrete" if r == five => Ok(thick_14_edge_concrete()),
        "k4_gadget" if r == five => Ok(k4_gadget()),
        "butterfly" if r == five => Ok(butterfly()),
        "thick14" | "thick14_concrete" | "k4_gadget" | "butterfly" => Err(
            Error::UnknownGadget(format!("{name} is defined at r = 5 only")),
        ),
        _ => Err(Error::UnknownGadget(name.to_owned())),
    }
}

/// Declared capacity of a named gadget at context r, without building it.
pub fn gadget_capacity(name: &str, r: Rational) -> Result<IntervalSet> {
    let p = *r.numer() as u32;
    let q = *r.denom() as u32;
    match name {
        "petersen_minus_edge" => IntervalSet::interval(p, 4 * q % p, p - 4 * q % p),
        "qr" => IntervalSet::interval(p, p - q, q),
        "thick14" | "thick14_concrete" | "butterfly" if r == r5() => {
            Ok(si5("(1,4)"))
        }
        "k4_gadget" if r == r5() => Ok(si5("(4,1)u(2,3)")),
        _ => Err(Error::UnknownGadget(name.to_owned())),
    }
}

/// Checks that `edges` is a single cycle of simple edges in `g` and returns
/// its vertex set.
fn check_cycle(g: &Network, edges: &[usize]) -> Result<BTreeSet<VertexId>> {
    if edges.len() < 2 {
        return Err(Error::NotACycle);
    }
    let distinct: BTreeSet<usize> = edges.iter().copied().collect();
    if distinct.len() != edges.len() {
        return Err(Error::NotACycle);
    }
    let mut touch: BTreeMap<VertexId, usize> = BTreeMap::new();
    for &e in edges {
        let edge = g.edges().get(e).ok_or(Error::UnknownEdge(e))?;
        if edge.kind != EdgeKind::Simple {
            return Err(Error::NotSimple(e));
        }
        *touch.entry(edge.u).or_insert(0) += 1;
        *touch.entry(edge.v).or_insert(0) += 1;
    }
    if touch.values().any(|&c| c != 2) {
        return Err(Error::NotACycle);
    }
    // Connectivity of the selected subgraph: walk it from one vertex.
    let start = *touch.keys().next().ok_or(Error::NotACycle)?;
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &e in edges {
            let edge = &g.edges()[e];
            if edge.touches(v) && seen.insert(edge.other(v)) {
                stack.push(edge.other(v));
            }
        }
    }
    if seen.len() != touch.len() {
        return Err(Error::NotACycle);
    }
    Ok(touch.into_keys().collect())
}

/// Effective capacity of an edge for precondition checks (gadget edges are
/// rejected — resolve them first).
fn third_edge_capacity(g: &Network, e: usize) -> Result<IntervalSet> {
    match &g.edges()[e].kind {
        EdgeKind::Simple => Ok(g.base_window()),
        EdgeKind::Abstract(set) => Ok(*set),
        EdgeKind::Gadget(name) => Err(Error::UnknownGadget(format!(
            "unresolved gadget edge '{name}'"
        ))),
    }
}

/// Replaces every edge of an odd cycle through degree-3 vertices by an
/// abstract A-edge with measure(A) = 2.  Alternation of the two unit
/// intervals of A along the odd cycle is contradictory, so the result admits
/// no sub-5 flow.
pub fn odd_cycle_construction(
    g: &Network,
    cycle: &[usize],
    a: IntervalSet,
) -> Result<Network> {
    require_r5(g)?;
    let vertices = check_cycle(g, cycle)?;
    if cycle.len() % 2 == 0 {
        return Err(Error::NotOddCycle);
    }
    if a.measure() != 2 {
        return Err(Error::MeasureNot2(a.measure()));
    }
    if a.modulus() != g.scaled_modulus() {
        return Err(Error::ModulusMismatch(a.modulus(), g.scaled_modulus()));
    }
    let window = g.base_window();
    for &v in &vertices {
        let inc = g.incident(v);
        if inc.len() != 3 {
            return Err(Error::WrongDegree(v, inc.len(), 3));
        }
        for &e in &inc {
            if !cycle.contains(&e) && !third_edge_capacity(g, e)?.is_subset_of(&window) {
                return Err(Error::ThirdEdgeTooWide(v));
            }
        }
    }
    let mut out = g.clone();
    for &e in cycle {
        out = out.replace_edge_kind(e, EdgeKind::Abstract(a))?;
    }
    Ok(out)
}

/// Replaces the edges of a cycle by abstract capacities whose union has
/// amplitude at most 3.  When the input graph admits no sub-5 flow, neither
/// does the result: a constant shift along the cycle would move all the
/// assigned capacities into (1,4).  The caller is responsible for the
/// infeasibility of the input; it is not re-checked here.
pub fn cycle_replacement(
    g: &Network,
    assignment: &BTreeMap<usize, IntervalSet>,
) -> Result<Network> {
    require_r5(g)?;
    let edges: Vec<usize> = assignment.keys().copied().collect();
    check_cycle(g, &edges)?;
    let mut union = IntervalSet::empty(g.scaled_modulus())?;
    for set in assignment.values() {
        if set.modulus() != g.scaled_modulus() {
            return Err(Error::ModulusMismatch(set.modulus(), g.scaled_modulus()));
        }
        union = union.union(set)?;
    }
    if union.amplitude() > 3 {
        return Err(Error::AmplitudeTooLarge(union.amplitude()));
    }
    let mut out = g.clone();
    for (&e, &set) in assignment {
        out = out.replace_edge_kind(e, EdgeKind::Abstract(set))?;
    }
    Ok(out)
}

/// K4 with its triangle rebuilt from (4,1)-edges: the smallest odd-cycle
/// construction, with three degree-5 vertices once the gadgets are spliced
/// out concretely.
pub fn k4_triangle_41() -> Network {
    let mut g = Network::new_k5();
    let cap = si5("(4,1)");
    for (u, v) in [(0, 1), (1, 2), (2, 0)] {
        g.add_edge(u, v, EdgeKind::Abstract(cap)).expect("valid edge");
    }
    for u in 0..3 {
        g.add_simple(u, 3).expect("valid edge");
    }
    g
}

/// Expands a degree-5 vertex produced by two gadget splices into two
/// vertices and smooths the second one away.
///
/// The five incident edges arrive, in index order, as [original edge, two
/// edges of the first-spliced copy, two edges of the second copy].  The
/// surviving vertex keeps the original edge and the first edge of each copy;
/// the other two copy edges are merged into a single edge joining the two
/// copies directly.  This fixed pattern keeps the results cubic; the snark
/// predicate is asserted by tests rather than any particular isomorphism
/// class, since several attachment patterns are viable.
fn expand_and_smooth(g: &Network, x: VertexId) -> Result<Network> {
    let inc = g.incident(x);
    if inc.len() != 5 {
        return Err(Error::WrongDegree(x, inc.len(), 5));
    }
    let mut repl = Network::new(g.r())?;
    repl.add_vertex(0);
    repl.add_vertex(1);
    let attach = BTreeMap::from([
        (inc[0], 0),
        (inc[1], 0),
        (inc[3], 0),
        (inc[2], 1),
        (inc[4], 1),
    ]);
    let merged = g.max_vertex_id().map_or(1, |m| m + 2);
    g.expand_vertex(x, &repl, &attach)?.smooth_vertex(merged)
}

/// The 28-vertex snark: K4 with its triangle edges spliced out into
/// Petersen-minus-edge copies, and the three resulting degree-5 vertices
/// expanded into two isolated vertices each (one of which is smoothed away).
pub fn s28() -> Network {
    // K4 edges in order: (0,1) (0,2) (0,3) (1,2) (1,3) (2,3); the triangle
    // 0-1-2 is spliced via indices 0, then 0 again, then 1 (indices shift as
    // each splice removes its edge).
    let mut g = Network::new_k5();
    for (u, v) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
        g.add_simple(u, v).expect("valid edge");
    }
    let p = petersen_minus_edge();
    g = g
        .replace_edge_with_gedge(0, &p)
        .and_then(|n| n.replace_edge_with_gedge(0, &p))
        .and_then(|n| n.replace_edge_with_gedge(1, &p))
        .expect("splice of fixed gadget succeeds");
    for hub in [0, 1, 2] {
        g = expand_and_smooth(&g, hub).expect("hub has degree 5");
    }
    g
}

/// The recursive family: level 0 is the Petersen graph; each level splices
/// Petersen-minus-edge copies into one shortest cycle (always of length 5)
/// and restores the cubic property by expansion and smoothing.
pub fn mr_family(depth: u32) -> Result<Network> {
    let mut g = petersen();
    for _ in 0..depth {
        g = mr_step(&g)?;
    }
    Ok(g)
}

/// The abstract view of the next level: the chosen cycle's edges carry
/// capacity (4,1) instead of spliced-out Petersen copies.  Feasibility is
/// unchanged, which makes this the network to run decisions on.
pub fn mr_family_abstract(depth: u32) -> Result<Network> {
    if depth == 0 {
        return Ok(petersen());
    }
    let g = mr_family(depth - 1)?;
    let cycle = mr_canonical_cycle(&g)?;
    let cap = si5("(4,1)");
    let assignment = cycle.into_iter().map(|e| (e, cap)).collect();
    cycle_replacement(&g, &assignment)
}

fn mr_canonical_cycle(g: &Network) -> Result<Vec<usize>> {
    let cycle = analysis::shortest_cycle(g)
        .ok_or_else(|| Error::Internal("family member lost all cycles".into()))?;
    if cycle.len() != 5 {
        return Err(Error::Internal(format!(
            "family member has girth {}, expected 5",
            cycle.len()
        )));
    }
    Ok(cycle)
}

fn mr_step(g: &Network) -> Result<Network> {
    let cycle = mr_canonical_cycle(g)?;
    let vertices = check_cycle(g, &cycle)?;
    let p = petersen_minus_edge();
    let mut sorted = cycle;
    sorted.sort_unstable();
    let mut out = g.clone();
    // Splice from the highest edge index down so lower indices stay valid.
    for &e in sorted.iter().rev() {
        out = out.replace_edge_with_gedge(e, &p)?;
    }
    for &v in &vertices {
        out = expand_and_smooth(&out, v)?;
    }
    Ok(out)
}

/// Replaces two adjacent simple edges at a degree-3 vertex by (2,3)-edges.
/// Their sum at the shared vertex is forced into (2,3)+(2,3) = (4,1), which
/// the third edge (capacity inside (1,4)) cannot absorb, so the result
/// admits no sub-5 flow.
pub fn force_ge5_pair(g: &Network, v: VertexId, e1: usize, e2: usize) -> Result<Network> {
    require_r5(g)?;
    if e1 == e2 {
        return Err(Error::UnknownEdge(e2));
    }
    let inc = g.incident(v);
    if inc.len() != 3 {
        return Err(Error::WrongDegree(v, inc.len(), 3));
    }
    for &e in &[e1, e2] {
        let edge = g.edges().get(e).ok_or(Error::UnknownEdge(e))?;
        if !edge.touches(v) {
            return Err(Error::UnknownEdge(e));
        }
        if edge.kind != EdgeKind::Simple {
            return Err(Error::NotSimple(e));
        }
    }
    let third = *inc
        .iter()
        .find(|&&e| e != e1 && e != e2)
        .ok_or(Error::UnknownEdge(e1))?;
    if !third_edge_capacity(g, third)?.is_subset_of(&g.base_window()) {
        return Err(Error::ThirdEdgeTooWide(v));
    }
    let cap = si5("(2,3)");
    g.replace_edge_kind(e1, EdgeKind::Abstract(cap))?
        .replace_edge_kind(e2, EdgeKind::Abstract(cap))
}

/// Inserts a single edge of empty capacity between u and v.  No assignment
/// satisfies the empty constraint, so no sub-flow of any strength exists in
/// the result.
pub fn insert_empty_edge(g: &Network, u: VertexId, v: VertexId) -> Result<Network> {
    let mut out = g.clone();
    out.add_edge(u, v, EdgeKind::Abstract(IntervalSet::empty(g.scaled_modulus())?))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{self, Budget};

    fn decide5(net: &Network) -> bool {
        engine::decide(net, r5(), Budget::unlimited())
            .unwrap()
            .settled()
            .expect("unlimited budget settles")
    }

    fn cap5(g: &GEdge) -> IntervalSet {
        engine::capacity(g, r5(), Budget::unlimited()).unwrap()
    }

    #[test]
    fn petersen_counts() {
        let g = petersen();
        assert_eq!(g.vertices().count(), 10);
        assert_eq!(g.n_edges(), 15);
        assert!(g.is_cubic());
        let pm = petersen_minus_edge();
        assert_eq!(pm.network.n_edges(), 14);
        assert_eq!((pm.u, pm.v), (0, 1));
    }

    #[test]
    fn petersen_minus_edge_capacity_is_41() {
        assert_eq!(cap5(&petersen_minus_edge()).render(), "(4,1)");
    }

    #[test]
    fn petersen_minus_edge_capacity_scales_to_rational_r() {
        let r = Rational::new(9, 2);
        let set = engine::capacity(&petersen_minus_edge(), r, Budget::unlimited()).unwrap();
        // The scaled image of the open interval (4, r-4) in Z/9.
        assert_eq!(set, IntervalSet::interval(9, 8, 1).unwrap());
    }

    #[test]
    fn thick_edge_capacity_is_14_with_2_inside() {
        let set = cap5(&thick_14_edge());
        assert_eq!(set.render(), "(1,4)");
        assert!(set.contains(Rational::from_integer(2)));
        let concrete = thick_14_edge_concrete();
        assert_eq!(concrete.network.vertices().count(), 20);
        assert!(concrete.network.all_simple());
    }

    #[test]
    fn k4_gadget_capacity() {
        let set = cap5(&k4_gadget());
        assert_eq!(set, si5("(4,1)u(2,3)"));
        assert_eq!(set.render(), "(2,3)u(4,1)");
        assert!(set.has_point(0));
        assert!(set.contains(Rational::new(5, 2)));
        // Containment in the open complement of the generating capacity.
        let sigma = si5("(1,2)u(3,4)").open_complement();
        assert!(set.is_subset_of(&sigma));
    }

    #[test]
    fn butterfly_is_a_14_edge() {
        let b = butterfly();
        assert_eq!(b.network.vertices().count(), 8);
        assert_eq!(b.network.n_edges(), 13);
        assert_eq!(cap5(&b).render(), "(1,4)");
    }

    #[test]
    fn catalog_sets_match_their_declared_sizes_and_recipes() {
        let catalog = gi5_catalog();
        assert_eq!(catalog.len(), 16);
        let mut seen = BTreeSet::new();
        for entry in &catalog {
            assert!(seen.insert(entry.set), "duplicate entry {}", entry.name());
            assert_eq!(entry.set.amplitude(), entry.amplitude, "{}", entry.name());
            assert_eq!(entry.set.measure(), entry.measure, "{}", entry.name());
            assert!(entry.set.is_symmetric(), "{}", entry.name());
        }
        // Spot-check canonical renders against the documented list.
        assert_eq!(catalog[4].name(), "(3,2)");
        assert_eq!(catalog[8].name(), "(1,2)u(3,4)");
        assert_eq!(catalog[15].name(), "(2,3)");
    }

    #[test]
    fn catalog_is_closed_under_the_calculus_and_misses_exactly_five_sets() {
        let catalog = gi5_catalog();
        let mut sets: BTreeSet<IntervalSet> =
            catalog.iter().map(|e| e.set).collect();
        loop {
            let snapshot: Vec<IntervalSet> = sets.iter().copied().collect();
            let before = sets.len();
            for a in &snapshot {
                for b in &snapshot {
                    sets.insert(a.add(b).unwrap());
                    sets.insert(a.intersect(b).unwrap());
                }
            }
            if sets.len() == before {
                break;
            }
        }
        assert_eq!(sets.len(), 16, "the calculus closure adds nothing");
        // The five remaining symmetric sets are exactly the catalog members
        // containing both points 2 and 3, with those two points removed.
        let all = crate::interval::enumerate_si(5).unwrap();
        assert_eq!(all.len(), 21);
        let missing: BTreeSet<IntervalSet> = all
            .into_iter()
            .filter(|s| !sets.contains(s))
            .collect();
        let predicted: BTreeSet<IntervalSet> = sets
            .iter()
            .filter(|s| s.has_point(2) && s.has_point(3))
            .map(|s| {
                IntervalSet::from_parts(
                    5,
                    s.units(),
                    s.points() & !(1 << 2 | 1 << 3),
                )
                .unwrap()
            })
            .collect();
        assert_eq!(missing, predicted);
        assert_eq!(missing.len(), 5);
    }

    #[test]
    fn catalog_builders_realize_their_sets() {
        for entry in gi5_catalog() {
            assert_eq!(
                cap5(&entry.builder),
                entry.set,
                "catalog builder for {}",
                entry.name()
            );
        }
    }

    #[test]
    fn odd_cycle_construction_on_k4_matches_the_triangle_gadget() {
        let mut k4 = Network::new_k5();
        for (u, v) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            k4.add_simple(u, v).unwrap();
        }
        // The triangle 0-1-2 uses edges 0, 3, 1.
        let built = odd_cycle_construction(&k4, &[0, 3, 1], si5("(4,1)")).unwrap();
        assert!(!decide5(&built));
        let reference = k4_triangle_41();
        let key = |n: &Network| {
            let mut edges: Vec<(u32, u32, String)> = n
                .edges()
                .iter()
                .map(|e| {
                    let (a, b) = (e.u.min(e.v), e.u.max(e.v));
                    let kind = match &e.kind {
                        EdgeKind::Simple => "simple".into(),
                        EdgeKind::Abstract(s) => s.render(),
                        EdgeKind::Gadget(g) => g.clone(),
                    };
                    (a, b, kind)
                })
                .collect();
            edges.sort();
            edges
        };
        assert_eq!(key(&built), key(&reference));
    }

    #[test]
    fn odd_cycle_construction_on_petersen_five_cycle() {
        let g = petersen();
        // Outer cycle edges have indices 0, 3, 6, 9, 12.
        let cycle = [0, 3, 6, 9, 12];
        for e in cycle {
            assert_eq!(g.edges()[e].kind, EdgeKind::Simple);
        }
        let built = odd_cycle_construction(&g, &cycle, si5("(1,2)u(3,4)")).unwrap();
        assert!(!decide5(&built));
    }

    #[test]
    fn odd_cycle_construction_rejects_bad_inputs() {
        let mut c4 = Network::new_k5();
        for i in 0..4u32 {
            c4.add_simple(i, (i + 1) % 4).unwrap();
        }
        // Even cycle (and wrong degrees, but parity is checked first).
        assert!(matches!(
            odd_cycle_construction(&c4, &[0, 1, 2, 3], si5("(4,1)")),
            Err(Error::NotOddCycle)
        ));
        let mut k4 = Network::new_k5();
        for (u, v) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            k4.add_simple(u, v).unwrap();
        }
        assert!(matches!(
            odd_cycle_construction(&k4, &[0, 3, 1], si5("(1,4)")),
            Err(Error::MeasureNot2(3))
        ));
        // A wide third edge: make 0--3 carry the full circle.
        let wide = k4
            .replace_edge_kind(2, EdgeKind::Abstract(IntervalSet::full(5).unwrap()))
            .unwrap();
        assert!(matches!(
            odd_cycle_construction(&wide, &[0, 3, 1], si5("(4,1)")),
            Err(Error::ThirdEdgeTooWide(0))
        ));
        // Not a cycle: a path (0,1), (0,2), (1,3).
        assert!(matches!(
            odd_cycle_construction(&k4, &[0, 1, 4], si5("(4,1)")),
            Err(Error::NotACycle)
        ));
    }

    #[test]
    fn cycle_replacement_on_petersen() {
        let g = petersen();
        let outer = [0usize, 3, 6, 9, 12];
        let all41: BTreeMap<usize, IntervalSet> =
            outer.iter().map(|&e| (e, si5("(4,1)"))).collect();
        assert!(!decide5(&cycle_replacement(&g, &all41).unwrap()));
        // The mixed assignment over T = {(4,0)u(0,1), (4,1)}.
        let mixed: BTreeMap<usize, IntervalSet> = outer
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                let set = if i % 2 == 0 { si5("(4,0)u(0,1)") } else { si5("(4,1)") };
                (e, set)
            })
            .collect();
        assert!(!decide5(&cycle_replacement(&g, &mixed).unwrap()));
        // Amplitude 4 is too wide.
        let wide: BTreeMap<usize, IntervalSet> =
            outer.iter().map(|&e| (e, si5("(3,2)"))).collect();
        assert!(matches!(
            cycle_replacement(&g, &wide),
            Err(Error::AmplitudeTooLarge(4))
        ));
        // A non-cycle edge selection.
        let not_cycle: BTreeMap<usize, IntervalSet> =
            [0usize, 1, 2].iter().map(|&e| (e, si5("(4,1)"))).collect();
        assert!(matches!(
            cycle_replacement(&g, &not_cycle),
            Err(Error::NotACycle)
        ));
    }

    #[test]
    fn s28_is_a_28_vertex_cubic_graph() {
        let g = s28();
        assert_eq!(g.vertices().count(), 28);
        assert_eq!(g.n_edges(), 42);
        assert!(g.is_cubic());
        assert!(g.all_simple());
        assert!(g.is_connected());
        assert_eq!(analysis::girth(&g), Some(5));
    }

    #[test]
    fn s28_passes_the_snark_predicate() {
        let report = analysis::snark_report(&s28()).unwrap();
        assert!(report.is_snark, "{}", report.render());
    }

    #[test]
    fn k4_triangle_41_decides_false_quickly() {
        assert!(!decide5(&k4_triangle_41()));
    }

    #[test]
    fn mr_family_counts_and_abstract_level_infeasibility() {
        assert_eq!(mr_family(0).unwrap().vertices().count(), 10);
        let g1 = mr_family(1).unwrap();
        assert_eq!(g1.vertices().count(), 50);
        assert_eq!(g1.n_edges(), 75);
        assert!(g1.is_cubic());
        assert!(g1.all_simple());
        assert_eq!(analysis::girth(&g1), Some(5));
        let abstract1 = mr_family_abstract(1).unwrap();
        assert_eq!(abstract1.vertices().count(), 10);
        assert!(!decide5(&abstract1));
    }

    #[test]
    fn mr_family_level_one_is_a_snark() {
        let report = analysis::snark_report(&mr_family(1).unwrap()).unwrap();
        assert!(report.is_snark, "{}", report.render());
    }

    #[test]
    fn force_ge5_pair_and_restoration() {
        let mut k4 = Network::new_k5();
        for (u, v) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            k4.add_simple(u, v).unwrap();
        }
        assert!(decide5(&k4));
        let forced = force_ge5_pair(&k4, 0, 0, 1).unwrap();
        assert!(!decide5(&forced));
        // Removing the gadgets restores the original verdict.
        let restored = forced
            .replace_edge_kind(0, EdgeKind::Simple)
            .unwrap()
            .replace_edge_kind(1, EdgeKind::Simple)
            .unwrap();
        assert!(decide5(&restored));
        // Preconditions: the two edges must share the degree-3 vertex.
        assert!(force_ge5_pair(&k4, 0, 3, 4).is_err());
        assert!(force_ge5_pair(&k4, 0, 0, 0).is_err());
    }

    #[test]
    fn empty_edge_insertion_blocks_all_flows() {
        let mut k4 = Network::new_k5();
        for (u, v) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            k4.add_simple(u, v).unwrap();
        }
        let blocked = insert_empty_edge(&k4, 0, 2).unwrap();
        assert!(!decide5(&blocked));
        assert!(matches!(
            engine::decide(&blocked, Rational::new(9, 2), Budget::unlimited()),
            Err(Error::ContextMismatch(_, _))
        ));
    }

    #[test]
    fn gadget_resolution_by_name() {
        let r92 = Rational::new(9, 2);
        assert!(resolve_gadget("petersen_minus_edge", r5()).is_ok());
        assert!(resolve_gadget("petersen_minus_edge", r92).is_ok());
        assert!(resolve_gadget("thick14", r5()).is_ok());
        assert!(matches!(
            resolve_gadget("thick14", r92),
            Err(Error::UnknownGadget(_))
        ));
        assert!(matches!(
            resolve_gadget("nonsense", r5()),
            Err(Error::UnknownGadget(_))
        ));
        let qr = resolve_gadget("qr", r92).unwrap();
        let declared = gadget_capacity("qr", r92).unwrap();
        assert_eq!(
            engine::capacity(&qr, r92, Budget::unlimited()).unwrap(),
            declared
        );
        assert_eq!(declared, IntervalSet::interval(9, 7, 2).unwrap());
        // The declared Petersen capacity matches the engine at both radii.
        assert_eq!(gadget_capacity("petersen_minus_edge", r5()).unwrap(), si5("(4,1)"));
    }

    #[test]
    fn corollary_containment_after_deleting_a_cycle_edge() {
        // Deleting one cycle edge from an odd-cycle construction leaves a
        // g-edge whose capacity is contained in the open complement of A.
        let mut k4 = Network::new_k5();
        for (u, v) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            k4.add_simple(u, v).unwrap();
        }
        for a in [si5("(4,1)"), si5("(1,2)u(3,4)"), si5("(4,0)u(0,1)")] {
            let built = odd_cycle_construction(&k4, &[0, 3, 1], a).unwrap();
            // Delete cycle edge 0 = (0,1) by rebuilding without it.
            let mut minus = Network::new_k5();
            for (i, e) in built.edges().iter().enumerate() {
                if i != 0 {
                    minus.add_edge(e.u, e.v, e.kind.clone()).unwrap();
                }
            }
            let q = GEdge::new(minus, 0, 1).unwrap();
            let sigma_bar = a.open_complement();
            assert!(
                cap5(&q).is_subset_of(&sigma_bar),
                "containment for A = {}",
                a.render()
            );
        }
    }

    #[test]
    fn randomized_constructions_decide_false() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let measure2 = [si5("(4,1)"), si5("(1,2)u(3,4)"), si5("(4,0)u(0,1)")];
        // Random cubic bases: generalized Petersen graphs with an odd outer
        // cycle; replace the outer cycle.
        for _ in 0..6 {
            let n = [5u32, 7, 9, 11].choose(&mut rng).copied().unwrap();
            let k = 1 + rng.gen_range(0..(n / 2 - 1).max(1));
            let g = analysis::generalized_petersen(n, k).unwrap();
            let cycle: Vec<usize> = (0..n as usize).map(|i| 3 * i).collect();
            let a = measure2.choose(&mut rng).copied().unwrap();
            let built = odd_cycle_construction(&g, &cycle, a).unwrap();
            assert!(!decide5(&built), "GP({n},{k}) with {}", a.render());
        }
        // Cycle replacement over a decide-false base: the Petersen graph
        // with random 5-cycles and random capacities of low union amplitude.
        let base = petersen();
        let t_sets = [si5("(4,1)"), si5("(4,0)u(0,1)")];
        for _ in 0..4 {
            let cycle = random_cycle(&base, &mut rng);
            let assignment: BTreeMap<usize, IntervalSet> = cycle
                .iter()
                .map(|&e| (e, *t_sets.choose(&mut rng).unwrap()))
                .collect();
            let built = cycle_replacement(&base, &assignment).unwrap();
            assert!(!decide5(&built));
        }
    }

    /// A random cycle of a cubic graph: random walk until a vertex repeats,
    /// then the closed portion of the walk.
    fn random_cycle(g: &Network, rng: &mut impl rand::Rng) -> Vec<usize> {
        loop {
            let verts: Vec<VertexId> = g.vertices().collect();
            let mut at = *verts.get(rng.gen_range(0..verts.len())).unwrap();
            let mut walk: Vec<(VertexId, usize)> = Vec::new();
            let mut seen_at = BTreeMap::new();
            seen_at.insert(at, 0usize);
            loop {
                let inc = g.incident(at);
                let step = *inc.get(rng.gen_range(0..inc.len())).unwrap();
                if walk.last().map(|&(_, e)| e) == Some(step) {
                    continue;
                }
                let next = g.edges()[step].other(at);
                walk.push((at, step));
                at = next;
                if let Some(&start) = seen_at.get(&at) {
                    let edges: Vec<usize> = walk[start..].iter().map(|&(_, e)| e).collect();
                    if edges.len() >= 2 {
                        return edges;
                    }
                    break;
                }
                seen_at.insert(at, walk.len());
            }
        }
    }
}
