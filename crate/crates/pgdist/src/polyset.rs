//! Polynomials over `GF(q)` and the bridge to `(q+1)`-point sets of
//! `PG(2,q)`.
//!
//! A polynomial `f` of degree at most `q - 1` determines the set
//! `S_f = { <(x, f(x), 1)> } ∪ { <(0,1,0)> }`, and its combinatorics are
//! captured by two families of counts:
//!
//! * the multiplicity distribution at `c`: how many field elements occur
//!   `i` times in the multiset `{ f(x) - c*x }`, and
//! * the intersection distribution: how many pairs `(a,b)` leave
//!   `f(x) - a*x - b` with exactly `i` roots.
//!
//! Sign conventions follow the definitions they implement: multiplicity and
//! intersection counts subtract `c*x`, while value sets and permutation
//! directions add it (`V_{f,c} = {f(x) + c*x}`). Since `c` ranges over the
//! whole field, aggregate quantities agree either way; the distinction only
//! matters for which `c` labels a row. The nucleus criterion pairs them up:
//! `<(1,c,0)>` is a nucleus of `S_f` exactly when `f(x) - c*x` is a
//! permutation, i.e. when `-c` is a permutation direction.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::gf::{FieldCtx, FieldElem};
use crate::plane::{Distribution, Plane, PointSet, ProjPoint};
use crate::Result;

/// A polynomial over `GF(q)`, reduced modulo `x^q - x`.
///
/// Coefficients are stored constant-term first with trailing zeros trimmed,
/// so the degree is `coeffs.len() - 1` (and 0 for the zero polynomial).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FieldPoly {
    coeffs: Vec<FieldElem>,
}

impl FieldPoly {
    /// Build from coefficients (constant term first), folding exponents
    /// `e >= q` by `x^q = x` and trimming trailing zeros.
    pub fn new(ctx: &FieldCtx, coeffs: &[FieldElem]) -> Self {
        let q = ctx.q() as usize;
        let mut folded = vec![ctx.zero(); q.min(coeffs.len())];
        for (e, &c) in coeffs.iter().enumerate() {
            let e_red = if e < q { e } else { (e - 1) % (q - 1) + 1 };
            folded[e_red] = ctx.add(folded[e_red], c);
        }
        let mut poly = FieldPoly { coeffs: folded };
        poly.trim(ctx);
        poly
    }

    pub fn from_indices(ctx: &FieldCtx, indices: &[u64]) -> Result<Self> {
        let coeffs = indices
            .iter()
            .map(|&i| ctx.elem(i))
            .collect::<Result<Vec<_>>>()?;
        Ok(FieldPoly::new(ctx, &coeffs))
    }

    pub fn zero(ctx: &FieldCtx) -> Self {
        FieldPoly::new(ctx, &[])
    }

    pub fn constant(ctx: &FieldCtx, c: FieldElem) -> Self {
        FieldPoly::new(ctx, &[c])
    }

    /// The monomial `x^d` (exponent folded into `[1, q-1]` for `d >= 1`).
    pub fn monomial(ctx: &FieldCtx, d: u64) -> Self {
        if d == 0 {
            return FieldPoly::constant(ctx, ctx.one());
        }
        let q = ctx.q();
        let d_red = ((d - 1) % (q - 1) + 1) as usize;
        let mut coeffs = vec![ctx.zero(); d_red + 1];
        coeffs[d_red] = ctx.one();
        FieldPoly { coeffs }
    }

    /// The affine polynomial `a*x + b`.
    pub fn linear(ctx: &FieldCtx, a: FieldElem, b: FieldElem) -> Self {
        FieldPoly::new(ctx, &[b, a])
    }

    fn trim(&mut self, ctx: &FieldCtx) {
        while self.coeffs.len() > 1 && *self.coeffs.last().unwrap() == ctx.zero() {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(ctx.zero());
        }
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff_indices(&self) -> Vec<u64> {
        self.coeffs.iter().map(|c| c.index()).collect()
    }

    /// Degree of the reduced polynomial; the zero polynomial reports 0.
    pub fn degree(&self) -> u64 {
        (self.coeffs.len() - 1) as u64
    }

    pub fn is_zero(&self, ctx: &FieldCtx) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == ctx.zero()
    }

    /// Horner evaluation.
    pub fn eval(&self, ctx: &FieldCtx, x: FieldElem) -> FieldElem {
        let mut acc = ctx.zero();
        for &c in self.coeffs.iter().rev() {
            acc = ctx.add(ctx.mul(acc, x), c);
        }
        acc
    }

    /// Values at every field element, in index order of the argument.
    pub fn table(&self, ctx: &FieldCtx) -> Vec<FieldElem> {
        ctx.elements().map(|x| self.eval(ctx, x)).collect()
    }

    pub fn add(&self, ctx: &FieldCtx, other: &FieldPoly) -> FieldPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![ctx.zero(); n];
        for (i, slot) in coeffs.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(ctx.zero());
            let b = other.coeffs.get(i).copied().unwrap_or(ctx.zero());
            *slot = ctx.add(a, b);
        }
        let mut out = FieldPoly { coeffs };
        out.trim(ctx);
        out
    }

    /// Human-readable form with coefficients shown as element indices.
    pub fn render(&self, ctx: &FieldCtx) -> String {
        let mut parts = Vec::new();
        for (e, &c) in self.coeffs.iter().enumerate().rev() {
            if c == ctx.zero() {
                continue;
            }
            let coeff = c.index();
            let part = match e {
                0 => format!("{coeff}"),
                1 if coeff == 1 => "x".to_string(),
                1 => format!("{coeff}*x"),
                _ if coeff == 1 => format!("x^{e}"),
                _ => format!("{coeff}*x^{e}"),
            };
            parts.push(part);
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// The `(q+1)`-set `S_f`: the affine graph of `f` plus the vertical
/// direction `<(0,1,0)>`.
pub fn graph_points(plane: &Plane, f: &FieldPoly) -> PointSet {
    let ctx = plane.field();
    let mut pts: Vec<ProjPoint> = ctx
        .elements()
        .map(|x| ProjPoint::new(ctx, [x, f.eval(ctx, x), ctx.one()]))
        .collect();
    pts.push(ProjPoint::new(ctx, [ctx.zero(), ctx.one(), ctx.zero()]));
    let set = PointSet::from_points(plane, &pts);
    debug_assert_eq!(set.len() as u64, ctx.q() + 1);
    set
}

/// One multiplicity row: the distribution of occurrence counts in the
/// multiset `{ f(x) - c*x : x in F_q }`. Both the mass and the weighted mass
/// of a row equal `q`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiplicityRow {
    pub c: FieldElem,
    pub dist: Distribution,
}

/// Tally of how often each field element is hit by `x -> f(x) - c*x`.
fn value_counts(ctx: &FieldCtx, f: &FieldPoly, c: FieldElem) -> Vec<u32> {
    let mut counts = vec![0u32; ctx.q() as usize];
    for x in ctx.elements() {
        let v = ctx.sub(f.eval(ctx, x), ctx.mul(c, x));
        counts[v.index() as usize] += 1;
    }
    counts
}

/// The multiplicity distribution of `f` at `c`.
pub fn multiplicity_row(ctx: &FieldCtx, f: &FieldPoly, c: FieldElem) -> MultiplicityRow {
    let counts = value_counts(ctx, f, c);
    let mut by_mult: BTreeMap<u64, u64> = BTreeMap::new();
    for count in counts {
        *by_mult.entry(count as u64).or_insert(0) += 1;
    }
    let dist = Distribution::from_pairs(ctx.q(), by_mult);
    debug_assert_eq!(dist.mass(), ctx.q());
    debug_assert_eq!(dist.weighted_sum(|i| i), ctx.q());
    MultiplicityRow { c, dist }
}

/// All multiplicity rows, one per `c` in index order.
pub fn multiplicity_rows(ctx: &FieldCtx, f: &FieldPoly) -> Vec<MultiplicityRow> {
    ctx.elements().map(|c| multiplicity_row(ctx, f, c)).collect()
}

/// The intersection distribution of `f`: entry `i` counts the pairs `(a,b)`
/// for which `f(x) - a*x - b` has exactly `i` roots. Computed by summing the
/// multiplicity rows over `c`; the direct `(a,b)` double loop is kept as an
/// independent oracle in the test suites.
pub fn intersection_distribution(ctx: &FieldCtx, f: &FieldPoly) -> Distribution {
    let q = ctx.q();
    let pairs = multiplicity_rows(ctx, f)
        .into_iter()
        .flat_map(|row| row.dist.nonzero().collect::<Vec<_>>());
    let dist = Distribution::from_pairs(q * q, pairs);
    debug_assert_eq!(dist.mass(), q * q);
    dist
}

/// The non-hitting index `v_0` of `f`.
pub fn non_hitting_index(ctx: &FieldCtx, f: &FieldPoly) -> u64 {
    let mut v0 = 0;
    for c in ctx.elements() {
        let counts = value_counts(ctx, f, c);
        v0 += counts.iter().filter(|&&n| n == 0).count() as u64;
    }
    v0
}

/// The value set `V_{f,c} = { f(x) + c*x }` (note the plus sign).
pub fn value_set_plus(ctx: &FieldCtx, f: &FieldPoly, c: FieldElem) -> Vec<FieldElem> {
    let mut seen = vec![false; ctx.q() as usize];
    for x in ctx.elements() {
        let v = ctx.add(f.eval(ctx, x), ctx.mul(c, x));
        seen[v.index() as usize] = true;
    }
    (0..ctx.q())
        .filter(|&i| seen[i as usize])
        .map(|i| FieldElem(i as u32))
        .collect()
}

/// Does `f` permute the field?
pub fn is_permutation(ctx: &FieldCtx, f: &FieldPoly) -> bool {
    let mut seen = vec![false; ctx.q() as usize];
    for x in ctx.elements() {
        let v = f.eval(ctx, x);
        if seen[v.index() as usize] {
            return false;
        }
        seen[v.index() as usize] = true;
    }
    true
}

/// The directions `c` for which `f(x) + c*x` is a permutation polynomial.
pub fn permutation_directions(ctx: &FieldCtx, f: &FieldPoly) -> Vec<FieldElem> {
    ctx.elements()
        .filter(|&c| value_set_plus(ctx, f, c).len() as u64 == ctx.q())
        .collect()
}

/// o-polynomial test for even `q`: `f` permutes the field and `f(x) + c*x`
/// is 2-to-1 for every nonzero `c`.
pub fn is_o_polynomial(ctx: &FieldCtx, f: &FieldPoly) -> Result<bool> {
    if ctx.p() != 2 {
        return Err(Error::OddCharacteristic(ctx.q()));
    }
    if !is_permutation(ctx, f) {
        return Ok(false);
    }
    for c in ctx.units() {
        // q even: +c and -c coincide, so the tally below covers both signs.
        let counts = value_counts(ctx, f, c);
        if counts.iter().any(|&n| n != 0 && n != 2) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Full profile of a polynomial: every multiplicity row, the aggregated
/// intersection distribution, the value-set sizes and the permutation
/// directions.
#[derive(Clone, Debug)]
pub struct PolyProfile {
    pub f: FieldPoly,
    pub rows: Vec<MultiplicityRow>,
    pub v: Distribution,
    /// `|V_{f,c}|` keyed by the index of `c` (plus-sign convention).
    pub value_set_sizes: BTreeMap<u64, u64>,
    pub directions: Vec<FieldElem>,
}

pub fn profile(ctx: &FieldCtx, f: &FieldPoly) -> PolyProfile {
    let rows = multiplicity_rows(ctx, f);
    let q = ctx.q();
    let v = Distribution::from_pairs(
        q * q,
        rows.iter().flat_map(|row| row.dist.nonzero().collect::<Vec<_>>()),
    );
    let value_set_sizes = ctx
        .elements()
        .map(|c| (c.index(), value_set_plus(ctx, f, c).len() as u64))
        .collect();
    let directions = permutation_directions(ctx, f);
    PolyProfile {
        f: f.clone(),
        rows,
        v,
        value_set_sizes,
        directions,
    }
}

impl PolyProfile {
    /// JSON dump with nonzero distribution entries only.
    pub fn to_json(&self, ctx: &FieldCtx) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                serde_json::json!({
                    "c": row.c.index(),
                    "M": row.dist.to_json(ctx.q())["counts"],
                })
            })
            .collect();
        serde_json::json!({
            "q": ctx.q(),
            "f": self.f.coeff_indices(),
            "v": self.v.to_json(ctx.q())["counts"],
            "rows": rows,
            "N_f": self.directions.iter().map(|c| c.index()).collect::<Vec<_>>(),
        })
    }
}

/// Lower and upper bounds on the non-hitting index implied by the degree
/// and the permutation directions:
/// `ceil((q-1)/d) * (q - |N_f|) <= v_0 <= (q - ceil(q/d)) * (q - |N_f|)`.
/// Degrees below 2 are rejected rather than given vacuous bounds.
pub fn degree_bounds(ctx: &FieldCtx, f: &FieldPoly) -> Result<(u64, u64)> {
    let d = f.degree();
    if d < 2 {
        return Err(Error::DegreeOutOfRange(d));
    }
    let q = ctx.q();
    let free = q - permutation_directions(ctx, f).len() as u64;
    Ok(((q - 1).div_ceil(d) * free, (q - q.div_ceil(d)) * free))
}

/// Lagrange interpolation through exactly `q` points with distinct abscissae.
pub fn interpolate(ctx: &FieldCtx, points: &[(FieldElem, FieldElem)]) -> Result<FieldPoly> {
    let q = ctx.q() as usize;
    let mut seen = vec![false; q];
    for (x, _) in points {
        if seen[x.index() as usize] {
            return Err(Error::IncompleteData {
                expected: q as u64,
                got: points.len() as u64,
            });
        }
        seen[x.index() as usize] = true;
    }
    if points.len() != q {
        return Err(Error::IncompleteData {
            expected: q as u64,
            got: points.len() as u64,
        });
    }

    // prod = Π (x - x_j), monic of degree q, coefficients low-first.
    let mut prod = vec![ctx.one()];
    for (xj, _) in points {
        let neg = ctx.neg(*xj);
        let mut next = vec![ctx.zero(); prod.len() + 1];
        for (k, &coef) in prod.iter().enumerate() {
            next[k] = ctx.add(next[k], ctx.mul(coef, neg));
            next[k + 1] = ctx.add(next[k + 1], coef);
        }
        prod = next;
    }

    let mut acc = vec![ctx.zero(); q];
    for (xi, yi) in points {
        // num = prod / (x - xi) by synthetic division.
        let mut num = vec![ctx.zero(); q];
        let mut carry = ctx.zero();
        for k in (0..q).rev() {
            carry = ctx.add(prod[k + 1], ctx.mul(carry, *xi));
            num[k] = carry;
        }
        // denom = num(xi) = Π_{j≠i} (xi - xj), nonzero by distinctness.
        let mut denom = ctx.zero();
        for &c in num.iter().rev() {
            denom = ctx.add(ctx.mul(denom, *xi), c);
        }
        let scale = ctx.div(*yi, denom)?;
        for k in 0..q {
            acc[k] = ctx.add(acc[k], ctx.mul(scale, num[k]));
        }
    }
    Ok(FieldPoly::new(ctx, &acc))
}

/// The change of coordinates produced by [`coordinatize`], kept so callers
/// can replay it on points.
#[derive(Clone, Debug)]
pub struct Coordinatization {
    pub poly: FieldPoly,
    /// Matrix applied to column vectors of homogeneous coordinates.
    pub matrix: [[FieldElem; 3]; 3],
}

impl Coordinatization {
    pub fn apply(&self, ctx: &FieldCtx, p: &ProjPoint) -> ProjPoint {
        ProjPoint::new(ctx, mat_apply(ctx, &self.matrix, &p.coords))
    }
}

fn mat_apply(ctx: &FieldCtx, m: &[[FieldElem; 3]; 3], v: &[FieldElem; 3]) -> [FieldElem; 3] {
    let mut out = [ctx.zero(); 3];
    for r in 0..3 {
        for c in 0..3 {
            out[r] = ctx.add(out[r], ctx.mul(m[r][c], v[c]));
        }
    }
    out
}

fn mat_inverse(ctx: &FieldCtx, m: &[[FieldElem; 3]; 3]) -> Option<[[FieldElem; 3]; 3]> {
    // Gauss-Jordan on [m | I].
    let mut a = *m;
    let mut inv = [[ctx.zero(); 3]; 3];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = ctx.one();
    }
    for col in 0..3 {
        let pivot = (col..3).find(|&r| a[r][col] != ctx.zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let scale = ctx.inv(a[col][col]).ok()?;
        for k in 0..3 {
            a[col][k] = ctx.mul(a[col][k], scale);
            inv[col][k] = ctx.mul(inv[col][k], scale);
        }
        for r in 0..3 {
            if r != col && a[r][col] != ctx.zero() {
                let factor = a[r][col];
                for k in 0..3 {
                    a[r][k] = ctx.sub(a[r][k], ctx.mul(factor, a[col][k]));
                    inv[r][k] = ctx.sub(inv[r][k], ctx.mul(factor, inv[col][k]));
                }
            }
        }
    }
    Some(inv)
}

/// Move a `(q+1)`-set with internal nucleus `origin` into graph position and
/// read off its polynomial.
///
/// The projectivity sends `origin` to `<(0,1,0)>` and the unique line through
/// `origin` missing the rest of the set to the line `z = 0`. The frame is
/// pinned by the canonical representatives of the smallest admissible basis
/// points, so the output is deterministic; for `S_f` with origin `<(0,1,0)>`
/// this frame is the identity and the round trip returns `f` itself.
pub fn coordinatize(plane: &Plane, set: &PointSet, origin: u32) -> Result<Coordinatization> {
    let ctx = plane.field();
    let q = ctx.q();
    if set.len() as u64 != q + 1 {
        return Err(Error::SizeMismatch {
            expected: q + 1,
            got: set.len() as u64,
        });
    }
    if !set.contains(origin) || !plane.internal_nuclei(set).contains(origin) {
        return Err(Error::NotInternalNucleus);
    }

    // The tangent at the origin: the one line through it meeting the set
    // only there.
    let counts = plane.line_counts(set);
    let tangent = plane
        .lines_through(origin)
        .iter()
        .copied()
        .find(|&l| counts[l as usize] == 1)
        .ok_or(Error::NotInternalNucleus)?;

    let p1 = plane
        .points_on(tangent)
        .iter()
        .copied()
        .find(|&p| p != origin)
        .expect("a line carries q + 1 > 1 points");
    let p3 = (0..plane.size() as u32)
        .find(|&p| plane.points_on(tangent).binary_search(&p).is_err())
        .expect("a line never exhausts the plane");

    // Basis matrix with columns (P1, origin, P3); its inverse sends them to
    // the standard frame, so the tangent becomes the line z = 0.
    let cols = [plane.point(p1), plane.point(origin), plane.point(p3)];
    let mut basis = [[ctx.zero(); 3]; 3];
    for (ci, pt) in cols.iter().enumerate() {
        for (row, &coord) in basis.iter_mut().zip(&pt.coords) {
            row[ci] = coord;
        }
    }
    let matrix = mat_inverse(ctx, &basis).expect("projective frames are nondegenerate");

    let mut samples = Vec::with_capacity(q as usize);
    for idx in set.iter() {
        if idx == origin {
            continue;
        }
        let image = mat_apply(ctx, &matrix, &plane.point(idx).coords);
        let z = image[2];
        debug_assert_ne!(z, ctx.zero(), "only the origin maps to infinity");
        let zi = ctx.inv(z)?;
        samples.push((ctx.mul(image[0], zi), ctx.mul(image[1], zi)));
    }
    let poly = interpolate(ctx, &samples)?;
    Ok(Coordinatization { poly, matrix })
}
