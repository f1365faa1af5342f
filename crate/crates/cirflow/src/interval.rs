//! Algebra of unions of open integer intervals on the circle R/kZ.
//!
//! A set is stored as two bitsets over the k-element grid: `units` records
//! which open unit intervals (i, i+1) belong to the set and `points` records
//! which integer residues belong to it.  The structural invariant is *point
//! closure*: an integer j can only belong to the set when both neighbouring
//! unit intervals (j-1, j) and (j, j+1) do, which is exactly the condition
//! for the set to be a union of **open** integer intervals.
//!
//! Symmetry under negation (x -> -x) is *not* part of the structural
//! invariant; it is a predicate ([`IntervalSet::is_symmetric`]) because raw
//! unions built by [`IntervalSet::from_intervals`] feed the symmetry test.
//! The symmetric sets form the closed family SI_k enumerated by
//! [`enumerate_si`]; their number follows the Fibonacci recurrence
//! |SI_k| = |SI_{k-1}| + |SI_{k-2}| with |SI_1| = 3, |SI_2| = 5.
//!
//! The interval notation `(a, b)` means the open arc travelled clockwise
//! (increasing) from a to b; the degenerate spelling `(a, a)` denotes the
//! long way around, i.e. the whole circle minus the single point a.

use crate::error::{Error, Result};
use num_rational::Ratio;

/// Largest supported modulus (two `u64` bitsets back the representation).
pub const MAX_MODULUS: u32 = 63;

/// Exact rational scalar used throughout the crate.
pub type Rational = Ratio<i64>;

/// A union of open integer intervals (plus interior integer points) on R/kZ.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalSet {
    k: u32,
    units: u64,
    points: u64,
}

impl IntervalSet {
    /// The empty subset of R/kZ.
    pub fn empty(k: u32) -> Result<Self> {
        check_modulus(k)?;
        Ok(Self { k, units: 0, points: 0 })
    }

    /// The full circle R/kZ.
    pub fn full(k: u32) -> Result<Self> {
        check_modulus(k)?;
        let mask = grid_mask(k);
        Ok(Self { k, units: mask, points: mask })
    }

    /// Builds a set from raw bitsets, validating point closure.
    pub fn from_parts(k: u32, units: u64, points: u64) -> Result<Self> {
        check_modulus(k)?;
        let mask = grid_mask(k);
        if units & !mask != 0 || points & !mask != 0 {
            return Err(Error::Internal(format!("bit set outside modulus {k}")));
        }
        let set = Self { k, units, points };
        for j in 0..k {
            if set.has_point(j) && !(set.has_unit(pred(j, k)) && set.has_unit(j)) {
                return Err(Error::Parse(format!(
                    "point {j} is not interior to the union (point closure violated)"
                )));
            }
        }
        Ok(set)
    }

    /// Union of the given open intervals; `(a, a)` means the circle minus point a.
    pub fn from_intervals(k: u32, intervals: &[(u32, u32)]) -> Result<Self> {
        check_modulus(k)?;
        let mut units = 0u64;
        let mut points = 0u64;
        for &(a, b) in intervals {
            for x in [a, b] {
                if x >= k {
                    return Err(Error::EndpointOutOfRange { endpoint: x as i64, k });
                }
            }
            let len = if a == b { k } else { (b + k - a) % k };
            let mut pos = a;
            for step in 0..len {
                units |= 1 << pos;
                if step > 0 {
                    points |= 1 << pos;
                }
                pos = succ(pos, k);
            }
        }
        Ok(Self { k, units, points })
    }

    /// Convenience constructor for a single open interval.
    pub fn interval(k: u32, a: u32, b: u32) -> Result<Self> {
        Self::from_intervals(k, &[(a, b)])
    }

    pub fn modulus(&self) -> u32 {
        self.k
    }

    pub fn units(&self) -> u64 {
        self.units
    }

    pub fn points(&self) -> u64 {
        self.points
    }

    pub fn is_empty(&self) -> bool {
        self.units == 0
    }

    pub fn is_full(&self) -> bool {
        let mask = grid_mask(self.k);
        self.units == mask && self.points == mask
    }

    /// Does the open unit interval (i, i+1) belong to the set?
    pub fn has_unit(&self, i: u32) -> bool {
        self.units >> (i % self.k) & 1 == 1
    }

    /// Does the integer residue j belong to the set?
    pub fn has_point(&self, j: u32) -> bool {
        self.points >> (j % self.k) & 1 == 1
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.k == other.k {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.k, other.k))
        }
    }

    /// Exact membership of a rational value (reduced into [0, k)).
    pub fn contains(&self, t: Rational) -> bool {
        let k = Rational::from_integer(self.k as i64);
        let t = t.mod_floor(&k);
        if t.is_integer() {
            self.has_point(t.to_integer() as u32)
        } else {
            self.has_unit(t.floor().to_integer() as u32)
        }
    }

    /// Total length of the set: the number of unit intervals it contains.
    pub fn measure(&self) -> u32 {
        self.units.count_ones()
    }

    /// k minus the longest run of consecutive absent unit intervals.
    ///
    /// Equivalently: the length of the shortest closed arc whose complement
    /// misses the set entirely.  Empty set -> 0, full circle -> k.
    pub fn amplitude(&self) -> u32 {
        let k = self.k;
        let absent: Vec<bool> = (0..k).map(|i| !self.has_unit(i)).collect();
        if absent.iter().all(|&a| !a) {
            return k;
        }
        // Longest cyclic run of `true` in `absent`.
        let mut best = 0u32;
        let mut run = 0u32;
        for i in 0..2 * k {
            if absent[(i % k) as usize] {
                run += 1;
                best = best.max(run.min(k));
            } else {
                run = 0;
            }
        }
        k - best
    }

    /// Pointwise union (not Minkowski addition).
    pub fn union(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self { k: self.k, units: self.units | other.units, points: self.points | other.points })
    }

    /// Pointwise intersection.  Point closure is preserved automatically.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self { k: self.k, units: self.units & other.units, points: self.points & other.points })
    }

    /// Interior of the complement: drop the boundary integers.
    pub fn open_complement(&self) -> Self {
        let k = self.k;
        let units = !self.units & grid_mask(k);
        let mut points = 0u64;
        for j in 0..k {
            if units >> pred(j, k) & 1 == 1 && units >> j & 1 == 1 {
                points |= 1 << j;
            }
        }
        Self { k, units, points }
    }

    /// The reflection x -> -x.
    pub fn negate(&self) -> Self {
        let k = self.k;
        let mut units = 0u64;
        let mut points = 0u64;
        for i in 0..k {
            if self.has_unit(i) {
                units |= 1 << (k - 1 - i);
            }
            if self.has_point(i) {
                points |= 1 << ((k - i) % k);
            }
        }
        Self { k, units, points }
    }

    /// Is the set invariant under negation?
    pub fn is_symmetric(&self) -> bool {
        *self == self.negate()
    }

    /// Is `self` contained in `other` (as subsets of the circle)?
    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.k == other.k
            && self.units & !other.units == 0
            && self.points & !other.points == 0
    }

    /// Minkowski sum {a + b : a in self, b in other}.
    ///
    /// Computed on the maximal-interval decompositions: interval lengths add,
    /// a sum of length exactly k closes the circle except for one point, and
    /// anything longer covers everything.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let k = self.k;
        if self.is_empty() || other.is_empty() {
            return Self::empty(k);
        }
        if self.is_full() || other.is_full() {
            return Self::full(k);
        }
        let mut out = Self::empty(k)?;
        for &(a, la) in &self.maximal_spans() {
            for &(c, lc) in &other.maximal_spans() {
                let l = la + lc;
                let start = (a + c) % k;
                let piece = if l > k {
                    Self::full(k)?
                } else if l == k {
                    Self::interval(k, start, start)?
                } else {
                    Self::interval(k, start, (start + l) % k)?
                };
                out = out.union(&piece)?;
            }
        }
        Ok(out)
    }

    /// Maximal open intervals composing the set, as (start, length) pairs.
    ///
    /// Undefined for the full circle (which has no such decomposition); the
    /// callers treat that case separately.  A long-way set yields a single
    /// span of length k.
    fn maximal_spans(&self) -> Vec<(u32, u32)> {
        let k = self.k;
        let mut spans = Vec::new();
        for a in 0..k {
            if self.has_unit(a) && !self.has_point(a) {
                let mut len = 1;
                let mut b = succ(a, k);
                while len < k && self.has_point(b) && self.has_unit(b) {
                    len += 1;
                    b = succ(b, k);
                }
                spans.push((a, len));
            }
        }
        spans
    }

    /// Maximal open intervals as (a, b) endpoint pairs, sorted by left endpoint.
    pub fn maximal_intervals(&self) -> Vec<(u32, u32)> {
        self.maximal_spans()
            .into_iter()
            .map(|(a, l)| (a, (a + l) % self.k))
            .collect()
    }

    /// Canonical text form: `empty`, `full`, or maximal intervals joined by `u`.
    pub fn render(&self) -> String {
        if self.is_empty() {
            return "empty".to_owned();
        }
        if self.is_full() {
            return "full".to_owned();
        }
        self.maximal_intervals()
            .iter()
            .map(|&(a, b)| format!("({a},{b})"))
            .collect::<Vec<_>>()
            .join("u")
    }

    /// Parses the canonical text form produced by [`IntervalSet::render`].
    pub fn parse(k: u32, text: &str) -> Result<Self> {
        check_modulus(k)?;
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        match compact.as_str() {
            "" => Err(Error::Parse("empty interval expression".into())),
            "empty" => Self::empty(k),
            "full" => Self::full(k),
            _ => {
                let mut intervals = Vec::new();
                for part in compact.split('u') {
                    let inner = part
                        .strip_prefix('(')
                        .and_then(|p| p.strip_suffix(')'))
                        .ok_or_else(|| Error::Parse(format!("expected (a,b), got '{part}'")))?;
                    let (sa, sb) = inner
                        .split_once(',')
                        .ok_or_else(|| Error::Parse(format!("expected (a,b), got '{part}'")))?;
                    let a: u32 = sa
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad endpoint '{sa}'")))?;
                    let b: u32 = sb
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad endpoint '{sb}'")))?;
                    intervals.push((a, b));
                }
                Self::from_intervals(k, &intervals)
            }
        }
    }
}

impl std::fmt::Debug for IntervalSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "IntervalSet(k={}, {})", self.k, self.render())
    }
}

impl std::fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render())
    }
}

fn check_modulus(k: u32) -> Result<()> {
    if k == 0 || k > MAX_MODULUS {
        return Err(Error::InvalidModulus(k));
    }
    Ok(())
}

fn grid_mask(k: u32) -> u64 {
    if k == 64 { u64::MAX } else { (1u64 << k) - 1 }
}

fn succ(i: u32, k: u32) -> u32 {
    (i + 1) % k
}

fn pred(i: u32, k: u32) -> u32 {
    (i + k - 1) % k
}

/// All symmetric point-closed sets on R/kZ, sorted by (units, points) bits.
///
/// Enumerates symmetric unit masks orbit by orbit (unit i pairs with unit
/// k-1-i), then for each the admissible symmetric subsets of interior points
/// (point j pairs with point (k-j) mod k and needs both neighbouring units).
pub fn enumerate_si(k: u32) -> Result<Vec<IntervalSet>> {
    check_modulus(k)?;
    // Orbits of unit intervals under i -> k-1-i.
    let mut unit_orbits: Vec<Vec<u32>> = Vec::new();
    for i in 0..k {
        let j = k - 1 - i;
        if i <= j {
            unit_orbits.push(if i == j { vec![i] } else { vec![i, j] });
        }
    }
    let mut out = Vec::new();
    for choice in 0u64..(1 << unit_orbits.len()) {
        let mut units = 0u64;
        for (idx, orbit) in unit_orbits.iter().enumerate() {
            if choice >> idx & 1 == 1 {
                for &i in orbit {
                    units |= 1 << i;
                }
            }
        }
        // Admissible points: both neighbouring units present.
        let admissible: Vec<u32> = (0..k)
            .filter(|&j| units >> pred(j, k) & 1 == 1 && units >> j & 1 == 1)
            .collect();
        // Orbits of admissible points under j -> (k-j) mod k, kept only when
        // the whole orbit is admissible (symmetry could not hold otherwise).
        let mut point_orbits: Vec<Vec<u32>> = Vec::new();
        for &j in &admissible {
            let m = (k - j) % k;
            if j <= m {
                if j == m {
                    point_orbits.push(vec![j]);
                } else if admissible.contains(&m) {
                    point_orbits.push(vec![j, m]);
                }
            }
        }
        for pchoice in 0u64..(1 << point_orbits.len()) {
            let mut points = 0u64;
            for (idx, orbit) in point_orbits.iter().enumerate() {
                if pchoice >> idx & 1 == 1 {
                    for &j in orbit {
                        points |= 1 << j;
                    }
                }
            }
            out.push(IntervalSet { k, units, points });
        }
    }
    out.sort_by_key(|s| (s.units, s.points));
    out.dedup();
    debug_assert!(out.iter().all(|s| s.is_symmetric()));
    Ok(out)
}

/// Floor-mod for rationals, used to reduce values into [0, k).
pub trait RationalMod {
    fn mod_floor(&self, modulus: &Rational) -> Rational;
}

impl RationalMod for Rational {
    fn mod_floor(&self, modulus: &Rational) -> Rational {
        let q = (self / modulus).floor();
        self - q * modulus
    }
}
