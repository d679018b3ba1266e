//! The classical projective plane `PG(2,q)`: canonical points and lines,
//! incidence, intersection distributions and nuclei.
//!
//! Points and lines are homogeneous triples canonicalized so that the first
//! nonzero coordinate is `1`; enumeration is lexicographic by coordinate
//! indices, which keeps every derived artifact byte-stable. Incidence means
//! `a*x + b*y + c*z = 0`; the per-context incidence lists are an optimization
//! on top of that dot product, never a change of semantics.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Error;
use crate::gf::{FieldCtx, FieldElem};
use crate::Result;

/// Largest order for which a full plane is materialized.
pub const PLANE_ORDER_CAP: u64 = 64;

/// A point of `PG(2,q)` in canonical homogeneous coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ProjPoint {
    pub coords: [FieldElem; 3],
}

/// A line of `PG(2,q)`, canonicalized like a point; a point `(x,y,z)` lies on
/// the line `(a,b,c)` iff `ax + by + cz = 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ProjLine {
    pub coeffs: [FieldElem; 3],
}

/// Scale a nonzero triple so its first nonzero entry becomes 1.
fn canonicalize(ctx: &FieldCtx, mut t: [FieldElem; 3]) -> [FieldElem; 3] {
    let pivot = t
        .iter()
        .position(|e| *e != ctx.zero())
        .expect("homogeneous triple must be nonzero");
    let inv = ctx.inv(t[pivot]).unwrap();
    for e in &mut t {
        *e = ctx.mul(*e, inv);
    }
    t
}

impl ProjPoint {
    pub fn new(ctx: &FieldCtx, triple: [FieldElem; 3]) -> Self {
        ProjPoint {
            coords: canonicalize(ctx, triple),
        }
    }

    /// Element indices of the canonical coordinates.
    pub fn indices(&self) -> [u64; 3] {
        [
            self.coords[0].index(),
            self.coords[1].index(),
            self.coords[2].index(),
        ]
    }
}

impl ProjLine {
    pub fn new(ctx: &FieldCtx, triple: [FieldElem; 3]) -> Self {
        ProjLine {
            coeffs: canonicalize(ctx, triple),
        }
    }

    pub fn indices(&self) -> [u64; 3] {
        [
            self.coeffs[0].index(),
            self.coeffs[1].index(),
            self.coeffs[2].index(),
        ]
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.indices().serialize(s)
    }
}

impl Serialize for ProjLine {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.indices().serialize(s)
    }
}

/// `PG(2,q)` with its point/line enumeration and incidence structure.
pub struct Plane {
    ctx: FieldCtx,
    points: Vec<ProjPoint>,
    lines: Vec<ProjLine>,
    /// Line indices through each point, `q + 1` per point.
    lines_through: Vec<Vec<u32>>,
    /// Point indices on each line, `q + 1` per line.
    points_on: Vec<Vec<u32>>,
}

impl Plane {
    pub fn new(ctx: FieldCtx) -> Result<Self> {
        let q = ctx.q();
        if q > PLANE_ORDER_CAP {
            return Err(Error::PlaneCapExceeded {
                q,
                cap: PLANE_ORDER_CAP,
            });
        }
        let points = enumerate_triples(&ctx)
            .into_iter()
            .map(|c| ProjPoint { coords: c })
            .collect::<Vec<_>>();
        let lines = enumerate_triples(&ctx)
            .into_iter()
            .map(|c| ProjLine { coeffs: c })
            .collect::<Vec<_>>();
        let n = points.len();
        debug_assert_eq!(n as u64, q * q + q + 1);

        let mut lines_through = vec![Vec::with_capacity(q as usize + 1); n];
        let mut points_on = vec![Vec::with_capacity(q as usize + 1); n];
        for (li, line) in lines.iter().enumerate() {
            for (pi, point) in points.iter().enumerate() {
                if incident(&ctx, point, line) {
                    lines_through[pi].push(li as u32);
                    points_on[li].push(pi as u32);
                }
            }
        }
        debug_assert!(points_on.iter().all(|v| v.len() as u64 == q + 1));
        debug_assert!(lines_through.iter().all(|v| v.len() as u64 == q + 1));
        Ok(Plane {
            ctx,
            points,
            lines,
            lines_through,
            points_on,
        })
    }

    pub fn from_order(q: u64) -> Result<Self> {
        Plane::new(FieldCtx::from_order(q)?)
    }

    pub fn field(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn q(&self) -> u64 {
        self.ctx.q()
    }

    /// Number of points (equals the number of lines), `q^2 + q + 1`.
    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn lines(&self) -> &[ProjLine] {
        &self.lines
    }

    pub fn point(&self, idx: u32) -> ProjPoint {
        self.points[idx as usize]
    }

    pub fn line(&self, idx: u32) -> ProjLine {
        self.lines[idx as usize]
    }

    /// Index of a canonical point in enumeration order.
    pub fn point_index(&self, p: &ProjPoint) -> u32 {
        let q = self.q();
        let [x, y, z] = p.indices();
        let idx = if x == 1 {
            1 + q + y * q + z
        } else if y == 1 {
            debug_assert_eq!(x, 0);
            1 + z
        } else {
            debug_assert_eq!(p.indices(), [0, 0, 1]);
            0
        };
        debug_assert_eq!(self.points[idx as usize], *p);
        idx as u32
    }

    /// Index of a canonical line; the enumeration schemes coincide.
    pub fn line_index(&self, l: &ProjLine) -> u32 {
        let q = self.q();
        let [a, b, c] = l.indices();
        let idx = if a == 1 {
            1 + q + b * q + c
        } else if b == 1 {
            1 + c
        } else {
            0
        };
        debug_assert_eq!(self.lines[idx as usize], *l);
        idx as u32
    }

    pub fn incident(&self, p: &ProjPoint, l: &ProjLine) -> bool {
        incident(&self.ctx, p, l)
    }

    pub fn lines_through(&self, point_idx: u32) -> &[u32] {
        &self.lines_through[point_idx as usize]
    }

    pub fn points_on(&self, line_idx: u32) -> &[u32] {
        &self.points_on[line_idx as usize]
    }

    /// The unique line through two distinct points.
    pub fn line_through(&self, a: u32, b: u32) -> u32 {
        assert_ne!(a, b, "two distinct points are needed to span a line");
        for &l in self.lines_through(a) {
            if self.points_on(l).binary_search(&b).is_ok() {
                return l;
            }
        }
        unreachable!("any two distinct points of PG(2,q) are collinear")
    }

    /// Intersection point of two distinct lines.
    pub fn meet(&self, l1: u32, l2: u32) -> u32 {
        assert_ne!(l1, l2);
        for &p in self.points_on(l1) {
            if self.points_on(l2).binary_search(&p).is_ok() {
                return p;
            }
        }
        unreachable!("any two distinct lines of PG(2,q) meet")
    }

    /// Per-line counts of `|line ∩ set|`, indexed by line.
    pub fn line_counts(&self, set: &PointSet) -> Vec<u16> {
        let mut counts = vec![0u16; self.size()];
        for &p in &set.indices {
            for &l in self.lines_through(p) {
                counts[l as usize] += 1;
            }
        }
        counts
    }

    /// The intersection distribution of a point set: `counts[i]` is the
    /// number of lines meeting the set in exactly `i` points.
    pub fn intersection_distribution(&self, set: &PointSet) -> Distribution {
        let counts = self.line_counts(set);
        let mut dist: BTreeMap<u64, u64> = BTreeMap::new();
        for c in counts {
            *dist.entry(c as u64).or_insert(0) += 1;
        }
        Distribution {
            counts: dist,
            total: self.size() as u64,
        }
    }

    /// Number of lines meeting the set in no point.
    pub fn non_hitting_index(&self, set: &PointSet) -> u64 {
        let counts = self.line_counts(set);
        counts.iter().filter(|&&c| c == 0).count() as u64
    }

    /// Largest `i >= 2` with a line meeting the set in `i` points; undefined
    /// for sets with fewer than two points.
    pub fn degree(&self, set: &PointSet) -> Option<u64> {
        if set.len() <= 1 {
            return None;
        }
        self.intersection_distribution(set)
            .nonzero()
            .filter(|&(i, _)| i >= 2)
            .map(|(i, _)| i)
            .last()
    }

    /// Points of the set through which every line meets the set in at most
    /// one further point.
    pub fn internal_nuclei(&self, set: &PointSet) -> PointSet {
        let counts = self.line_counts(set);
        let members = set
            .indices
            .iter()
            .copied()
            .filter(|&p| self.lines_through(p).iter().all(|&l| counts[l as usize] <= 2))
            .collect();
        PointSet { indices: members }
    }

    /// Points off a `(q+1)`-set through which every line is tangent to it.
    pub fn nuclei(&self, set: &PointSet) -> Result<PointSet> {
        let expected = self.q() + 1;
        if set.len() as u64 != expected {
            return Err(Error::SizeMismatch {
                expected,
                got: set.len() as u64,
            });
        }
        let counts = self.line_counts(set);
        let members = (0..self.size() as u32)
            .filter(|p| !set.contains(*p))
            .filter(|&p| self.lines_through(p).iter().all(|&l| counts[l as usize] == 1))
            .collect();
        Ok(PointSet { indices: members })
    }
}

fn incident(ctx: &FieldCtx, p: &ProjPoint, l: &ProjLine) -> bool {
    let mut acc = ctx.zero();
    for i in 0..3 {
        acc = ctx.add(acc, ctx.mul(p.coords[i], l.coeffs[i]));
    }
    acc == ctx.zero()
}

/// Canonical triples in lexicographic order of their element indices:
/// `(0,0,1)`, then `(0,1,*)`, then `(1,*,*)`.
fn enumerate_triples(ctx: &FieldCtx) -> Vec<[FieldElem; 3]> {
    let zero = ctx.zero();
    let one = ctx.one();
    let mut out = Vec::with_capacity((ctx.q() * ctx.q() + ctx.q() + 1) as usize);
    out.push([zero, zero, one]);
    for z in ctx.elements() {
        out.push([zero, one, z]);
    }
    for y in ctx.elements() {
        for z in ctx.elements() {
            out.push([one, y, z]);
        }
    }
    out
}

/// A set of points of one plane, stored as sorted enumeration indices.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct PointSet {
    indices: Vec<u32>,
}

impl PointSet {
    pub fn empty() -> Self {
        PointSet::default()
    }

    pub fn from_indices(plane: &Plane, mut indices: Vec<u32>) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        if let Some(&max) = indices.last() {
            if max as usize >= plane.size() {
                return Err(Error::IndexOutOfRange {
                    idx: max as u64,
                    q: plane.size() as u64,
                });
            }
        }
        Ok(PointSet { indices })
    }

    pub fn from_points(plane: &Plane, points: &[ProjPoint]) -> Self {
        points.iter().map(|p| plane.point_index(p)).collect()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, idx: u32) -> bool {
        self.indices.binary_search(&idx).is_ok()
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.indices.iter().copied()
    }

    pub fn insert(&mut self, idx: u32) {
        if let Err(pos) = self.indices.binary_search(&idx) {
            self.indices.insert(pos, idx);
        }
    }

    pub fn remove(&mut self, idx: u32) {
        if let Ok(pos) = self.indices.binary_search(&idx) {
            self.indices.remove(pos);
        }
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        self.indices
            .iter()
            .chain(other.indices.iter())
            .copied()
            .collect()
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        PointSet {
            indices: self
                .indices
                .iter()
                .copied()
                .filter(|i| !other.contains(*i))
                .collect(),
        }
    }

    pub fn points<'a>(&'a self, plane: &'a Plane) -> impl Iterator<Item = ProjPoint> + 'a {
        self.indices.iter().map(|&i| plane.point(i))
    }
}

impl FromIterator<u32> for PointSet {
    fn from_iter<T: IntoIterator<Item = u32>>(iter: T) -> Self {
        let mut indices: Vec<u32> = iter.into_iter().collect();
        indices.sort_unstable();
        indices.dedup();
        PointSet { indices }
    }
}

/// A sparse multiplicity-indexed count vector. Only nonzero counts are kept;
/// `total` is the number of counted objects (lines, `(a,b)` pairs, or field
/// elements, depending on context).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Distribution {
    counts: BTreeMap<u64, u64>,
    total: u64,
}

impl Distribution {
    /// Accumulate `(index, count)` pairs; repeated indices add up and zero
    /// counts are dropped.
    pub fn from_pairs(total: u64, pairs: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
        for (i, v) in pairs {
            if v > 0 {
                *counts.entry(i).or_insert(0) += v;
            }
        }
        Distribution { counts, total }
    }

    pub fn get(&self, i: u64) -> u64 {
        self.counts.get(&i).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Sum of all stored counts.
    pub fn mass(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts.iter().map(|(&i, &v)| (i, v))
    }

    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    /// `Σ f(i) * count[i]` over the nonzero entries.
    pub fn weighted_sum(&self, f: impl Fn(u64) -> u64) -> u64 {
        self.counts.iter().map(|(&i, &v)| f(i) * v).sum()
    }

    /// Largest index with a nonzero count.
    pub fn max_index(&self) -> Option<u64> {
        self.counts.keys().next_back().copied()
    }

    /// Render as `{i:count, ...}` with nonzero entries only.
    pub fn brief(&self) -> String {
        let inner: Vec<String> = self
            .counts
            .iter()
            .filter(|(_, &v)| v > 0)
            .map(|(i, v)| format!("{i}:{v}"))
            .collect();
        format!("{{{}}}", inner.join(", "))
    }

    /// JSON form `{"q":..., "total":..., "counts":{"i":n, ...}}`.
    pub fn to_json(&self, q: u64) -> serde_json::Value {
        let counts: BTreeMap<String, u64> = self
            .counts
            .iter()
            .filter(|(_, &v)| v > 0)
            .map(|(i, v)| (i.to_string(), *v))
            .collect();
        serde_json::json!({ "q": q, "total": self.total, "counts": counts })
    }
}
