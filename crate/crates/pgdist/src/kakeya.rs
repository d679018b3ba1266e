//! Kakeya sets of the affine plane via their duals.
//!
//! A Kakeya set (one affine line per direction) dualizes to a `(q+2)`-point
//! set with an internal nucleus, which is always of the form
//! `DK(f,c) = S_f ∪ { <(1,c,0)> }` for a polynomial `f` and a direction `c`.
//! Its intersection distribution follows from the polynomial data alone:
//!
//! ```text
//! u_0 = v_0 - M_0           u_1 = v_1 - M_1 + M_0
//! u_2 = v_2 - M_2 + M_1 + q + 1
//! u_i = v_i - M_i + M_{i-1}   (3 <= i <= q)
//! u_{q+1} = M_q
//! ```
//!
//! and the Kakeya set size is `|K| = q^2 - u_0(DK)`. The module computes
//! this transfer, the geometric enumeration it must agree with, closed-form
//! predictions for the six power-mapping families, and the census of sizes
//! attainable by monomials.

// Closed forms are kept in their printed shape; (q+1)/2 style expressions
// are exact for the parities involved.
#![allow(clippy::manual_div_ceil)]

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::error::Error;
use crate::formulas::{c_sign, half_plus_case, CSign, HalfPlusCase, PowerFamily};
use crate::gf::{two_adic_valuation, FieldCtx, FieldElem};
use crate::plane::{Distribution, Plane, PointSet, ProjPoint};
use crate::polyset::{self, FieldPoly};
use crate::Result;

/// Default order cap for [`monomial_census`].
pub const CENSUS_ORDER_CAP: u64 = 16;

/// The dual Kakeya set `S_f ∪ { <(1,c,0)> }`.
#[derive(Clone, Debug)]
pub struct DualKakeyaSet {
    pub f: FieldPoly,
    pub c: FieldElem,
    pub points: PointSet,
}

/// Construct the `(q+2)`-point dual of the Kakeya set generated by `(f, c)`.
pub fn dual_kakeya(plane: &Plane, f: &FieldPoly, c: FieldElem) -> DualKakeyaSet {
    let ctx = plane.field();
    let mut points = polyset::graph_points(plane, f);
    let extra = ProjPoint::new(ctx, [ctx.one(), c, ctx.zero()]);
    points.insert(plane.point_index(&extra));
    debug_assert_eq!(points.len() as u64, ctx.q() + 2);
    DualKakeyaSet {
        f: f.clone(),
        c,
        points,
    }
}

/// Intersection distribution of `DK(f,c)` computed from `v(f)` and `M(f,c)`
/// alone, without touching the plane.
pub fn transfer_distribution(ctx: &FieldCtx, f: &FieldPoly, c: FieldElem) -> Distribution {
    let q = ctx.q();
    let v = polyset::intersection_distribution(ctx, f);
    let m = polyset::multiplicity_row(ctx, f, c).dist;
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    pairs.push((0, v.get(0) - m.get(0)));
    pairs.push((1, v.get(1) - m.get(1) + m.get(0)));
    pairs.push((2, v.get(2) - m.get(2) + m.get(1) + q + 1));
    for i in 3..=q {
        pairs.push((i, v.get(i) - m.get(i) + m.get(i - 1)));
    }
    pairs.push((q + 1, m.get(q)));
    let dist = Distribution::from_pairs(q * q + q + 1, pairs);
    debug_assert_eq!(dist.mass(), q * q + q + 1);
    debug_assert_eq!(dist.weighted_sum(|i| i), (q + 2) * (q + 1));
    dist
}

/// `|K| = q^2 - u_0(DK(f,c))`.
pub fn kakeya_size(ctx: &FieldCtx, f: &FieldPoly, c: FieldElem) -> u64 {
    let q = ctx.q();
    let v0 = polyset::non_hitting_index(ctx, f);
    let m0 = polyset::multiplicity_row(ctx, f, c).dist.get(0);
    q * q - (v0 - m0)
}

/// A dual Kakeya set packaged with its distribution and the Kakeya size.
#[derive(Clone, Debug)]
pub struct KakeyaReport {
    pub dk: DualKakeyaSet,
    pub u: Distribution,
    pub size: u64,
}

pub fn report(plane: &Plane, f: &FieldPoly, c: FieldElem) -> KakeyaReport {
    let ctx = plane.field();
    let dk = dual_kakeya(plane, f, c);
    let u = transfer_distribution(ctx, f, c);
    debug_assert_eq!(u, plane.intersection_distribution(&dk.points));
    let size = ctx.q() * ctx.q() - u.get(0);
    KakeyaReport { dk, u, size }
}

/// For every exponent `1 <= d <= q-1` and every `c`, the attainable Kakeya
/// sizes, grouped as `size -> { exponents attaining it }`.
pub fn monomial_census(ctx: &FieldCtx) -> Result<BTreeMap<u64, BTreeSet<u64>>> {
    monomial_census_with_cap(ctx, CENSUS_ORDER_CAP)
}

pub fn monomial_census_with_cap(
    ctx: &FieldCtx,
    cap: u64,
) -> Result<BTreeMap<u64, BTreeSet<u64>>> {
    let q = ctx.q();
    if q > cap {
        return Err(Error::CapExceeded { q, cap });
    }
    let per_d: Vec<(u64, Vec<u64>)> = (1..q)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&d| {
            let f = FieldPoly::monomial(ctx, d);
            let rows = polyset::multiplicity_rows(ctx, &f);
            let v0: u64 = rows.iter().map(|r| r.dist.get(0)).sum();
            let sizes = rows
                .iter()
                .map(|r| q * q - (v0 - r.dist.get(0)))
                .collect();
            (d, sizes)
        })
        .collect();
    let mut census: BTreeMap<u64, BTreeSet<u64>> = BTreeMap::new();
    for (d, sizes) in per_d {
        for size in sizes {
            census.entry(size).or_default().insert(d);
        }
    }
    Ok(census)
}

/// Census serialized as `{"q":..., "entries":[{"size":..., "exponents":[...]}]}`.
pub fn census_to_json(q: u64, census: &BTreeMap<u64, BTreeSet<u64>>) -> serde_json::Value {
    let entries: Vec<serde_json::Value> = census
        .iter()
        .map(|(size, ds)| {
            serde_json::json!({ "size": size, "exponents": ds.iter().collect::<Vec<_>>() })
        })
        .collect();
    serde_json::json!({ "q": q, "entries": entries })
}

/// A closed-form dual-Kakeya prediction: the full distribution of `DK(d,c)`
/// plus the resulting Kakeya size.
#[derive(Clone, Debug)]
pub struct DkPrediction {
    pub case_label: String,
    pub dist: Distribution,
    pub size: u64,
}

fn pp(p: u64, e: u32) -> i128 {
    (p as i128).pow(e)
}

fn xdiv(num: i128, den: i128) -> u64 {
    assert!(den != 0);
    assert_eq!(num % den, 0, "closed-form division must be exact: {num}/{den}");
    let v = num / den;
    assert!(v >= 0);
    v as u64
}

fn nonneg(v: i128) -> u64 {
    assert!(v >= 0, "closed-form value must be nonnegative: {v}");
    v as u64
}

fn build_prediction(
    q: u64,
    label: impl Into<String>,
    pairs: Vec<(u64, u64)>,
    size: u64,
) -> DkPrediction {
    let dist = Distribution::from_pairs(q * q + q + 1, pairs);
    assert_eq!(dist.mass(), q * q + q + 1);
    assert_eq!(dist.weighted_sum(|i| i), (q + 2) * (q + 1));
    assert_eq!(size, q * q - dist.get(0), "stated size must match u_0");
    DkPrediction {
        case_label: label.into(),
        dist,
        size,
    }
}

/// Closed-form intersection distribution of `DK(d,c)` and the Kakeya size,
/// for the six power-mapping families. The `c` dispatch reuses the same
/// classifiers as the multiplicity predictions.
pub fn predict_dk(ctx: &FieldCtx, family: PowerFamily, c: FieldElem) -> Result<DkPrediction> {
    family.check_applicable(ctx)?;
    let p = ctx.p();
    let q = ctx.q();
    let s = ctx.s();
    let qi = q as i128;
    Ok(match family {
        PowerFamily::FrobeniusPower { .. } => {
            let h = family.h(ctx).unwrap();
            let ph = pp(p, h);
            let n = p.pow(h) - 1;
            if ctx.in_nth_power_class(n, c) {
                build_prediction(
                    q,
                    format!("c in C_0^(({n},{q}))"),
                    vec![
                        (0, nonneg(pp(p, s) * (pp(p, s - h) - 1))),
                        (
                            1,
                            xdiv(
                                pp(p, s - h)
                                    * (pp(p, s + 2 * h) - 2 * pp(p, s + h) + pp(p, 2 * h) - ph
                                        + 1),
                                ph - 1,
                            ),
                        ),
                        (2, q + 1),
                        (p.pow(h), xdiv(pp(p, s) * (pp(p, s - h) - 1), ph - 1)),
                        (p.pow(h) + 1, nonneg(pp(p, s - h))),
                    ],
                    nonneg(pp(p, 2 * s) - pp(p, 2 * s - h) + pp(p, s)),
                )
            } else {
                build_prediction(
                    q,
                    format!("c not in C_0^(({n},{q}))"),
                    vec![
                        (0, nonneg(pp(p, s - h) * (pp(p, s) - 1))),
                        (1, xdiv(pp(p, s) * (pp(p, s) - 1) * (ph - 2), ph - 1)),
                        (2, 2 * q + 1),
                        (p.pow(h), xdiv(pp(p, s - h) * (pp(p, s) - 1), ph - 1)),
                    ],
                    nonneg(pp(p, 2 * s) - pp(p, 2 * s - h) + pp(p, s - h)),
                )
            }
        }
        PowerFamily::FrobeniusPlusOne { .. } => {
            let h = family.h(ctx).unwrap();
            let ph = pp(p, h);
            let val_less = two_adic_valuation(h as u64) < two_adic_valuation(s as u64);
            let zero_c = c == ctx.zero();
            match (val_less, p == 2, zero_c) {
                (true, _, true) => build_prediction(
                    q,
                    "l2(h) < l2(s), c = 0",
                    vec![
                        (0, xdiv(ph * (pp(p, s) - 1) * (pp(p, s) - 1), 2 * (ph + 1))),
                        (
                            1,
                            xdiv((pp(p, s) + pp(p, s - h) + ph) * (pp(p, s) - 1), ph + 1),
                        ),
                        (
                            2,
                            xdiv(
                                pp(p, 2 * s + h) - 2 * pp(p, 2 * s) + 2 * pp(p, s + h) + 3 * ph
                                    - 4,
                                2 * (ph - 1),
                            ),
                        ),
                        (
                            p.pow(h) + 1,
                            xdiv((pp(p, s - h) - ph) * (pp(p, s) - 1), ph * ph - 1),
                        ),
                        (p.pow(h) + 2, xdiv(pp(p, s) - 1, ph + 1)),
                    ],
                    nonneg(
                        pp(p, 2 * s)
                            - (ph * (pp(p, s) - 1) * (pp(p, s) - 1)) / (2 * (ph + 1)),
                    ),
                ),
                (true, _, false) => build_prediction(
                    q,
                    "l2(h) < l2(s), c != 0",
                    vec![
                        (0, xdiv(pp(p, s + h) * (pp(p, s) - 1), 2 * (ph + 1))),
                        (
                            1,
                            xdiv(ph * (pp(p, s) - 1), 2 * (ph + 1))
                                + nonneg(pp(p, 2 * s - h) - 2 * pp(p, s - h) + 1),
                        ),
                        (
                            2,
                            xdiv((ph - 2) * (pp(p, s) - 1) * (pp(p, s) - 2), 2 * (ph - 1))
                                + nonneg(2 * pp(p, s) + pp(p, s - h) - 1),
                        ),
                        (3, xdiv(pp(p, s + h) - 2 * pp(p, s) + ph, 2 * (ph - 1))),
                        (
                            p.pow(h) + 1,
                            xdiv(
                                pp(p, 2 * s - h) - pp(p, s) - 2 * pp(p, s - h) + ph + 1,
                                ph * ph - 1,
                            ),
                        ),
                        (p.pow(h) + 2, xdiv(pp(p, s - h) - ph, ph * ph - 1)),
                    ],
                    nonneg(pp(p, 2 * s) - (pp(p, s + h) * (pp(p, s) - 1)) / (2 * (ph + 1))),
                ),
                (false, true, true) => build_prediction(
                    q,
                    "p = 2, l2(h) >= l2(s), c = 0",
                    vec![
                        (0, xdiv(ph * (pp(p, 2 * s) - 1), 2 * (ph + 1))),
                        (1, nonneg((pp(p, s - h) - 1) * (pp(p, s) - 1))),
                        (
                            2,
                            xdiv((ph - 2) * (pp(p, s) - 1) * (pp(p, s) - 1), 2 * (ph - 1))
                                + 3 * q,
                        ),
                        (
                            p.pow(h) + 1,
                            xdiv((pp(p, s - h) - 1) * (pp(p, s) - 1), ph * ph - 1),
                        ),
                    ],
                    nonneg(pp(p, 2 * s) - (ph * (pp(p, 2 * s) - 1)) / (2 * (ph + 1))),
                ),
                (false, true, false) => build_prediction(
                    q,
                    "p = 2, l2(h) >= l2(s), c != 0",
                    vec![
                        (0, xdiv(ph * (pp(p, s) + 1) * (pp(p, s) - 2), 2 * (ph + 1))),
                        (
                            1,
                            xdiv(ph * (pp(p, s) + 1), 2 * (ph + 1))
                                + nonneg(pp(p, 2 * s - h) - 2 * pp(p, s - h) + 2),
                        ),
                        (
                            2,
                            xdiv((ph - 2) * (pp(p, s) - 1) * (pp(p, s) - 2), 2 * (ph - 1))
                                + nonneg(2 * pp(p, s) + pp(p, s - h) - 2),
                        ),
                        (3, xdiv(pp(p, s + h) - 2 * pp(p, s) + ph, 2 * (ph - 1))),
                        (
                            p.pow(h) + 1,
                            xdiv((pp(p, s - h) - 1) * (pp(p, s) - 2), ph * ph - 1),
                        ),
                        (p.pow(h) + 2, xdiv(pp(p, s - h) - 1, ph * ph - 1)),
                    ],
                    nonneg(
                        pp(p, 2 * s)
                            - (ph * (pp(p, s) + 1) * (pp(p, s) - 2)) / (2 * (ph + 1)),
                    ),
                ),
                (false, false, true) => build_prediction(
                    q,
                    "p odd, l2(h) >= l2(s), c = 0",
                    vec![
                        (0, xdiv((pp(p, s + h) - 1) * (pp(p, s) - 1), 2 * (ph + 1))),
                        (1, xdiv((2 * pp(p, s - h) + 1) * (pp(p, s) - 1), 2)),
                        (
                            2,
                            xdiv(
                                pp(p, 2 * s + h) - 2 * pp(p, 2 * s) + pp(p, s + h) + pp(p, s)
                                    + 4 * ph
                                    - 5,
                                2 * (ph - 1),
                            ),
                        ),
                        (3, (q - 1) / 2),
                        (
                            p.pow(h) + 1,
                            xdiv((pp(p, s - h) - 1) * (pp(p, s) - 1), ph * ph - 1),
                        ),
                    ],
                    nonneg(
                        pp(p, 2 * s) - ((pp(p, s + h) - 1) * (pp(p, s) - 1)) / (2 * (ph + 1)),
                    ),
                ),
                (false, false, false) => build_prediction(
                    q,
                    "p odd, l2(h) >= l2(s), c != 0",
                    vec![
                        (
                            0,
                            xdiv(
                                pp(p, 2 * s + h) - pp(p, s + h) - ph + 1,
                                2 * (ph + 1),
                            ),
                        ),
                        (
                            1,
                            xdiv(pp(p, s + h) - 1, 2 * (ph + 1))
                                + nonneg(pp(p, 2 * s - h) - 2 * pp(p, s - h) + 1),
                        ),
                        (
                            2,
                            xdiv(
                                pp(p, 2 * s + h) - 2 * pp(p, 2 * s)
                                    + pp(p, s + h)
                                    + 4 * pp(p, s)
                                    - 2 * pp(p, s - h)
                                    + ph
                                    - 3,
                                2 * (ph - 1),
                            ),
                        ),
                        (3, xdiv(pp(p, s + h) - 2 * pp(p, s) + 1, 2 * (ph - 1))),
                        (
                            p.pow(h) + 1,
                            xdiv((pp(p, s - h) - 1) * (pp(p, s) - 2), ph * ph - 1),
                        ),
                        (p.pow(h) + 2, xdiv(pp(p, s - h) - 1, ph * ph - 1)),
                    ],
                    nonneg(
                        pp(p, 2 * s)
                            - (pp(p, 2 * s + h) - pp(p, s + h) - ph + 1) / (2 * (ph + 1)),
                    ),
                ),
            }
        }
        PowerFamily::HalfQMinus => match (q % 8, c_sign(ctx, c)) {
            (_, CSign::Zero) if q % 4 == 1 => build_prediction(
                q,
                "q = 1 mod 4, c = 0",
                vec![
                    (0, xdiv(qi * qi + 2 * qi - 3, 4)),
                    (1, xdiv(qi * qi - 2 * qi - 3, 2)),
                    (2, xdiv(qi * qi + 6 * qi + 5, 4)),
                    ((q + 1) / 2, 2),
                ],
                xdiv(3 * qi * qi - 2 * qi + 3, 4),
            ),
            (_, _) if q % 4 == 1 => build_prediction(
                q,
                "q = 1 mod 4, c != 0",
                vec![
                    (0, xdiv(qi * qi + 5 * qi - 18, 4)),
                    (1, xdiv(2 * qi * qi - 9 * qi + 19, 4)),
                    (2, xdiv(qi * qi + 7 * qi - 8, 4)),
                    (3, (q + 3) / 4),
                    ((q - 1) / 2, 2),
                ],
                xdiv(3 * qi * qi - 5 * qi + 18, 4),
            ),
            (_, CSign::Zero) => build_prediction(
                q,
                "q = 3 mod 4, c = 0",
                vec![
                    (0, xdiv(qi * qi - 1, 4)),
                    (1, xdiv(qi * qi + qi - 6, 2)),
                    (2, xdiv(qi * qi + 11, 4)),
                    (3, (q - 1) / 2),
                    ((q + 1) / 2, 2),
                ],
                xdiv(3 * qi * qi + 1, 4),
            ),
            (3, CSign::Square) => build_prediction(
                q,
                "q = 3 mod 8, c in C_0^((2,q))",
                vec![
                    (0, xdiv(qi * qi + 3 * qi - 18, 4)),
                    (1, xdiv(2 * qi * qi - 3 * qi + 15, 4)),
                    (2, xdiv(qi * qi + qi + 4, 4)),
                    (3, xdiv(3 * qi - 9, 4)),
                    (4, 1),
                    ((q - 1) / 2, 2),
                ],
                xdiv(3 * qi * qi - 3 * qi + 18, 4),
            ),
            (3, CSign::NonSquare) => build_prediction(
                q,
                "q = 3 mod 8, c in C_1^((2,q))",
                vec![
                    (0, xdiv(qi * qi + 3 * qi - 10, 4)),
                    (1, xdiv(2 * qi * qi - 3 * qi - 5, 4)),
                    (2, xdiv(qi * qi + qi + 16, 4)),
                    (3, xdiv(3 * qi - 5, 4)),
                    ((q - 1) / 2, 2),
                ],
                xdiv(3 * qi * qi - 3 * qi + 10, 4),
            ),
            (_, CSign::Square) => build_prediction(
                q,
                "q = 7 mod 8, c in C_0^((2,q))",
                vec![
                    (0, xdiv(qi * qi + 3 * qi - 14, 4)),
                    (1, xdiv(2 * qi * qi - 3 * qi + 3, 4)),
                    (2, xdiv(qi * qi + qi + 16, 4)),
                    (3, xdiv(3 * qi - 13, 4)),
                    (4, 1),
                    ((q - 1) / 2, 2),
                ],
                xdiv(3 * qi * qi - 3 * qi + 14, 4),
            ),
            (_, CSign::NonSquare) => build_prediction(
                q,
                "q = 7 mod 8, c in C_1^((2,q))",
                vec![
                    (0, xdiv(qi * qi + 3 * qi - 14, 4)),
                    (1, xdiv(2 * qi * qi - 3 * qi + 7, 4)),
                    (2, xdiv(qi * qi + qi + 4, 4)),
                    (3, xdiv(3 * qi - 1, 4)),
                    ((q - 1) / 2, 2),
                ],
                xdiv(3 * qi * qi - 3 * qi + 14, 4),
            ),
        },
        PowerFamily::HalfQPlus => match half_plus_case(ctx, c)? {
            HalfPlusCase::Permutation => build_prediction(
                q,
                if q % 4 == 1 {
                    "c in {0} ∪ C_{0,0} ∪ C_{1,1}"
                } else {
                    "c in C_{0,1} ∪ C_{1,0}"
                },
                vec![
                    (0, xdiv(qi * qi + 2 * qi - 3, 4)),
                    (1, xdiv(qi * qi - 2 * qi - 3, 2)),
                    (2, xdiv(qi * qi + 6 * qi + 5, 4)),
                    ((q + 1) / 2, 2),
                ],
                xdiv(3 * qi * qi - 2 * qi + 3, 4),
            ),
            HalfPlusCase::TwoToOne => build_prediction(
                q,
                if q % 4 == 1 {
                    "c in C_{0,1} ∪ C_{1,0}"
                } else {
                    "c in {0} ∪ C_{0,0} ∪ C_{1,1}"
                },
                vec![
                    (0, xdiv(qi * qi - 1, 4)),
                    (1, xdiv(qi * qi + qi - 6, 2)),
                    (2, xdiv(qi * qi + 11, 4)),
                    (3, (q - 1) / 2),
                    ((q + 1) / 2, 2),
                ],
                xdiv(3 * qi * qi + 1, 4),
            ),
            HalfPlusCase::UnitShift => build_prediction(
                q,
                "c = ±1",
                vec![
                    (0, xdiv(qi * qi - 1, 4)),
                    (1, xdiv(qi * qi - 3, 2)),
                    (2, xdiv(qi * qi + 4 * qi + 3, 4)),
                    ((q + 1) / 2, 1),
                    ((q + 3) / 2, 1),
                ],
                xdiv(3 * qi * qi + 1, 4),
            ),
        },
        PowerFamily::QMinusTwo => {
            if p == 2 {
                if c == ctx.zero() {
                    build_prediction(
                        q,
                        "q even, c = 0",
                        vec![(0, q * (q - 1) / 2), (2, (q + 1) * (q + 2) / 2)],
                        q * (q + 1) / 2,
                    )
                } else {
                    build_prediction(
                        q,
                        "q even, c != 0",
                        vec![
                            (0, q * (q - 2) / 2),
                            (1, 3 * q / 2),
                            (2, q * q / 2 + 1),
                            (3, q / 2),
                        ],
                        q * (q + 2) / 2,
                    )
                }
            } else {
                match (q % 4, c_sign(ctx, c)) {
                    (_, CSign::Zero) => build_prediction(
                        q,
                        "q odd, c = 0",
                        vec![
                            (0, (q - 1) * (q - 1) / 2),
                            (1, 3 * (q - 1) / 2),
                            (2, (q * q + 5) / 2),
                            (3, (q - 1) / 2),
                        ],
                        (q * q + 2 * q - 1) / 2,
                    ),
                    (1, CSign::Square) => build_prediction(
                        q,
                        "q = 1 mod 4, c in C_0^((2,q))",
                        vec![
                            (0, (q - 1) * (q - 2) / 2),
                            (1, 3 * q - 4),
                            (2, (q * q - 3 * q + 14) / 2),
                            (3, nonneg(qi - 4)),
                            (4, 1),
                        ],
                        (q * q + 3 * q - 2) / 2,
                    ),
                    (1, CSign::NonSquare) => build_prediction(
                        q,
                        "q = 1 mod 4, c in C_1^((2,q))",
                        vec![
                            (0, (q - 1) * (q - 2) / 2),
                            (1, 3 * q - 3),
                            (2, (q * q - 3 * q + 8) / 2),
                            (3, q - 1),
                        ],
                        (q * q + 3 * q - 2) / 2,
                    ),
                    (_, CSign::Square) => build_prediction(
                        q,
                        "q = 3 mod 4, c in C_0^((2,q))",
                        vec![
                            (0, (q * q - 3 * q) / 2),
                            (1, 3 * q - 1),
                            (2, (q * q - 3 * q + 8) / 2),
                            (3, q - 3),
                            (4, 1),
                        ],
                        (q * q + 3 * q) / 2,
                    ),
                    (_, CSign::NonSquare) => build_prediction(
                        q,
                        "q = 3 mod 4, c in C_1^((2,q))",
                        vec![
                            (0, (q * q - 3 * q + 4) / 2),
                            (1, 3 * q - 6),
                            (2, (q * q - 3 * q + 14) / 2),
                            (3, q - 2),
                        ],
                        (q * q + 3 * q - 4) / 2,
                    ),
                }
            }
        }
        PowerFamily::QMinusOne => {
            if c == ctx.zero() {
                build_prediction(
                    q,
                    "c = 0",
                    vec![(0, q - 1), (1, q * q - 2 * q), (2, 2 * q + 1), (q, 1)],
                    q * q - q + 1,
                )
            } else {
                build_prediction(
                    q,
                    "c != 0",
                    vec![
                        (0, 2 * q - 4),
                        (1, nonneg(qi * qi - 4 * qi + 6)),
                        (2, 3 * q - 3),
                        (3, 1),
                        (q - 1, 1),
                    ],
                    q * q - 2 * q + 4,
                )
            }
        }
    })
}
