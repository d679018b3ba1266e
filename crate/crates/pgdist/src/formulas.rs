//! Closed-form multiplicity and intersection distributions for six families
//! of power mappings `x^d` over `GF(p^s)`:
//!
//! `d ∈ { p^i, p^i + 1, (q-1)/2, (q+1)/2, q-2, q-1 }`, `0 <= i <= s-1`.
//!
//! Every formula is evaluated in exact integer arithmetic with all divisions
//! asserted exact, and every prediction can be diffed against the
//! brute-force tallies from [`crate::polyset`] via [`verify_family`].
//! Coinciding multiplicity indices (small parameters make, say, `p^h + 1`
//! collide with `2`) accumulate instead of overwriting.

// Closed forms are kept in their printed shape; (q+1)/2 style expressions
// are exact for the parities involved.
#![allow(clippy::manual_div_ceil)]

use crate::error::Error;
use crate::gf::{two_adic_valuation, FieldCtx, FieldElem};
use crate::plane::Distribution;
use crate::polyset::{self, FieldPoly};
use crate::Result;

/// One of the six power-mapping families with a closed-form distribution.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PowerFamily {
    /// `d = p^i`.
    FrobeniusPower { i: u32 },
    /// `d = p^i + 1`.
    FrobeniusPlusOne { i: u32 },
    /// `d = (q - 1) / 2`, `q` odd.
    HalfQMinus,
    /// `d = (q + 1) / 2`, `q` odd.
    HalfQPlus,
    /// `d = q - 2`.
    QMinusTwo,
    /// `d = q - 1`.
    QMinusOne,
}

impl std::fmt::Display for PowerFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PowerFamily::FrobeniusPower { i } => write!(f, "x^(p^{i})"),
            PowerFamily::FrobeniusPlusOne { i } => write!(f, "x^(p^{i}+1)"),
            PowerFamily::HalfQMinus => write!(f, "x^((q-1)/2)"),
            PowerFamily::HalfQPlus => write!(f, "x^((q+1)/2)"),
            PowerFamily::QMinusTwo => write!(f, "x^(q-2)"),
            PowerFamily::QMinusOne => write!(f, "x^(q-1)"),
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `p^e` as an `i128` for formula arithmetic.
fn pp(p: u64, e: u32) -> i128 {
    (p as i128).pow(e)
}

/// Exact nonnegative division; a failed assertion means a mistyped formula.
fn xdiv(num: i128, den: i128) -> u64 {
    assert!(den != 0, "zero denominator in a closed form");
    assert_eq!(num % den, 0, "closed-form division must be exact: {num}/{den}");
    let v = num / den;
    assert!(v >= 0, "closed-form value must be nonnegative: {num}/{den}");
    v as u64
}

fn nonneg(v: i128) -> u64 {
    assert!(v >= 0, "closed-form value must be nonnegative: {v}");
    v as u64
}

impl PowerFamily {
    pub fn all_tags() -> [&'static str; 6] {
        ["p-i", "p-i+1", "(q-1)/2", "(q+1)/2", "q-2", "q-1"]
    }

    /// Parse a CLI tag; parametrized families need `i`.
    pub fn from_tag(tag: &str, i: Option<u32>) -> Option<PowerFamily> {
        match tag.to_ascii_lowercase().as_str() {
            "p-i" | "p^i" => Some(PowerFamily::FrobeniusPower { i: i? }),
            "p-i+1" | "p^i+1" => Some(PowerFamily::FrobeniusPlusOne { i: i? }),
            "(q-1)/2" | "q-1/2" => Some(PowerFamily::HalfQMinus),
            "(q+1)/2" | "q+1/2" => Some(PowerFamily::HalfQPlus),
            "q-2" => Some(PowerFamily::QMinusTwo),
            "q-1" => Some(PowerFamily::QMinusOne),
            _ => None,
        }
    }

    /// All family instances applicable over the given field.
    pub fn applicable_instances(ctx: &FieldCtx) -> Vec<PowerFamily> {
        let mut out = Vec::new();
        for i in 0..ctx.s() {
            out.push(PowerFamily::FrobeniusPower { i });
        }
        for i in 0..ctx.s() {
            out.push(PowerFamily::FrobeniusPlusOne { i });
        }
        for fam in [
            PowerFamily::HalfQMinus,
            PowerFamily::HalfQPlus,
            PowerFamily::QMinusTwo,
            PowerFamily::QMinusOne,
        ] {
            if fam.check_applicable(ctx).is_ok() {
                out.push(fam);
            }
        }
        out
    }

    fn inapplicable(&self, ctx: &FieldCtx, reason: &str) -> Error {
        Error::FamilyInapplicable {
            family: self.to_string(),
            q: ctx.q(),
            reason: reason.to_string(),
        }
    }

    pub fn check_applicable(&self, ctx: &FieldCtx) -> Result<()> {
        match *self {
            PowerFamily::FrobeniusPower { i } | PowerFamily::FrobeniusPlusOne { i } => {
                if i >= ctx.s() {
                    return Err(self.inapplicable(ctx, "requires 0 <= i <= s-1"));
                }
            }
            PowerFamily::HalfQMinus | PowerFamily::HalfQPlus => {
                if ctx.p() == 2 {
                    return Err(self.inapplicable(ctx, "requires odd q"));
                }
            }
            PowerFamily::QMinusTwo => {
                if ctx.q() < 3 {
                    return Err(self.inapplicable(ctx, "requires q >= 3"));
                }
            }
            PowerFamily::QMinusOne => {}
        }
        Ok(())
    }

    /// The exponent `d`, reduced into `[1, q-1]` by `x^q = x`.
    pub fn exponent(&self, ctx: &FieldCtx) -> Result<u64> {
        self.check_applicable(ctx)?;
        let q = ctx.q();
        let raw = match *self {
            PowerFamily::FrobeniusPower { i } => ctx.p().pow(i),
            PowerFamily::FrobeniusPlusOne { i } => ctx.p().pow(i) + 1,
            PowerFamily::HalfQMinus => (q - 1) / 2,
            PowerFamily::HalfQPlus => (q + 1) / 2,
            PowerFamily::QMinusTwo => q - 2,
            PowerFamily::QMinusOne => q - 1,
        };
        Ok(if raw == 0 { 0 } else { (raw - 1) % (q - 1) + 1 })
    }

    /// `h = gcd(i, s)` for the parametrized families.
    pub fn h(&self, ctx: &FieldCtx) -> Option<u32> {
        match *self {
            PowerFamily::FrobeniusPower { i } | PowerFamily::FrobeniusPlusOne { i } => {
                Some(gcd(i as u64, ctx.s() as u64) as u32)
            }
            _ => None,
        }
    }

    pub fn monomial(&self, ctx: &FieldCtx) -> Result<FieldPoly> {
        Ok(FieldPoly::monomial(ctx, self.exponent(ctx)?))
    }
}

/// What a prediction describes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DistKind {
    MultiplicityAtC,
    Intersection,
}

/// A closed-form distribution together with the case branch that produced it.
#[derive(Clone, Debug)]
pub struct PredictedDistribution {
    pub kind: DistKind,
    pub case_label: String,
    pub dist: Distribution,
}

impl PredictedDistribution {
    fn multiplicity(q: u64, label: impl Into<String>, pairs: Vec<(u64, u64)>) -> Self {
        let dist = Distribution::from_pairs(q, pairs);
        debug_assert_eq!(dist.mass(), q);
        debug_assert_eq!(dist.weighted_sum(|i| i), q);
        PredictedDistribution {
            kind: DistKind::MultiplicityAtC,
            case_label: label.into(),
            dist,
        }
    }

    fn intersection(q: u64, label: impl Into<String>, pairs: Vec<(u64, u64)>) -> Self {
        let dist = Distribution::from_pairs(q * q, pairs);
        debug_assert_eq!(dist.mass(), q * q);
        debug_assert_eq!(dist.weighted_sum(|i| i), q * q);
        PredictedDistribution {
            kind: DistKind::Intersection,
            case_label: label.into(),
            dist,
        }
    }
}

/// Coarse position of `c` relative to the nonzero squares.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CSign {
    Zero,
    Square,
    NonSquare,
}

pub fn c_sign(ctx: &FieldCtx, c: FieldElem) -> CSign {
    match ctx.square_class(c) {
        None => CSign::Zero,
        Some(0) => CSign::Square,
        _ => CSign::NonSquare,
    }
}

/// Case dispatch for `d = (q+1)/2`; the same grouping drives the dual Kakeya
/// predictions. Exactly one case applies to each `c`: the `±1` test comes
/// first, which is consistent because `1 - c` or `1 + c` vanishes there, so
/// `±1` can never lie in any of the pair classes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HalfPlusCase {
    /// `c = ±1`.
    UnitShift,
    /// `x^{(q+1)/2} - c x` permutes the field.
    Permutation,
    /// The mixed case with fibers of size at most two.
    TwoToOne,
}

pub fn half_plus_case(ctx: &FieldCtx, c: FieldElem) -> Result<HalfPlusCase> {
    if ctx.p() == 2 {
        return Err(Error::EvenCharacteristic(ctx.q()));
    }
    if c == ctx.one() || c == ctx.neg_one() {
        return Ok(HalfPlusCase::UnitShift);
    }
    let q = ctx.q();
    let balanced_pair = match ctx.pair_class_of(c) {
        None => true, // c = 0 groups with the balanced pair classes
        Some((i, j)) => i == j,
    };
    Ok(if (q % 4 == 1) == balanced_pair {
        HalfPlusCase::Permutation
    } else {
        HalfPlusCase::TwoToOne
    })
}

fn half_plus_label(ctx: &FieldCtx, case: HalfPlusCase) -> &'static str {
    let q1 = ctx.q() % 4 == 1;
    match case {
        HalfPlusCase::UnitShift => "c = ±1",
        HalfPlusCase::Permutation if q1 => "c in {0} ∪ C_{0,0} ∪ C_{1,1}",
        HalfPlusCase::Permutation => "c in C_{0,1} ∪ C_{1,0}",
        HalfPlusCase::TwoToOne if q1 => "c in C_{0,1} ∪ C_{1,0}",
        HalfPlusCase::TwoToOne => "c in {0} ∪ C_{0,0} ∪ C_{1,1}",
    }
}

/// Valuation case for `d = p^i + 1`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum ValuationCase {
    /// `l2(h) < l2(s)`.
    Less,
    /// `p = 2`, `l2(h) >= l2(s)`.
    GeqEven,
    /// `p` odd, `l2(h) >= l2(s)`.
    GeqOdd,
}

fn plus_one_case(ctx: &FieldCtx, h: u32) -> ValuationCase {
    if two_adic_valuation(h as u64) < two_adic_valuation(ctx.s() as u64) {
        ValuationCase::Less
    } else if ctx.p() == 2 {
        ValuationCase::GeqEven
    } else {
        ValuationCase::GeqOdd
    }
}

/// The closed-form multiplicity distribution of the family at `c`.
///
/// For `d = p^i` the dispatch treats `c = 0` under the complement branch:
/// `C_0^{(N,q)}` consists of nonzero `N`-th powers, and `x^{p^i}` is a
/// permutation, so the `M_1 = q` row is the one that matches brute force.
pub fn predict_multiplicity(
    ctx: &FieldCtx,
    family: PowerFamily,
    c: FieldElem,
) -> Result<PredictedDistribution> {
    family.check_applicable(ctx)?;
    let p = ctx.p();
    let q = ctx.q();
    let s = ctx.s();
    Ok(match family {
        PowerFamily::FrobeniusPower { .. } => {
            let h = family.h(ctx).unwrap();
            let n = p.pow(h) - 1;
            if ctx.in_nth_power_class(n, c) {
                PredictedDistribution::multiplicity(
                    q,
                    format!("c in C_0^(({n},{q}))"),
                    vec![
                        (0, nonneg(pp(p, s) - pp(p, s - h))),
                        (p.pow(h), nonneg(pp(p, s - h))),
                    ],
                )
            } else {
                PredictedDistribution::multiplicity(
                    q,
                    format!("c not in C_0^(({n},{q}))"),
                    vec![(1, q)],
                )
            }
        }
        PowerFamily::FrobeniusPlusOne { .. } => {
            let h = family.h(ctx).unwrap();
            let ph = pp(p, h);
            let zero_c = c == ctx.zero();
            match (plus_one_case(ctx, h), zero_c) {
                (ValuationCase::Less, true) => PredictedDistribution::multiplicity(
                    q,
                    "l2(h) < l2(s), c = 0",
                    vec![
                        (0, xdiv(ph * (pp(p, s) - 1), ph + 1)),
                        (1, 1),
                        (p.pow(h) + 1, xdiv(pp(p, s) - 1, ph + 1)),
                    ],
                ),
                (ValuationCase::Less, false) => PredictedDistribution::multiplicity(
                    q,
                    "l2(h) < l2(s), c != 0",
                    vec![
                        (0, xdiv(pp(p, s + h) - ph, 2 * (ph + 1))),
                        (1, nonneg(pp(p, s - h))),
                        (2, xdiv(pp(p, s + h) - 2 * pp(p, s) + ph, 2 * (ph - 1))),
                        (p.pow(h) + 1, xdiv(pp(p, s - h) - ph, ph * ph - 1)),
                    ],
                ),
                (ValuationCase::GeqEven, true) => {
                    PredictedDistribution::multiplicity(q, "p = 2, l2(h) >= l2(s), c = 0", vec![(1, q)])
                }
                (ValuationCase::GeqEven, false) => PredictedDistribution::multiplicity(
                    q,
                    "p = 2, l2(h) >= l2(s), c != 0",
                    vec![
                        (0, xdiv(pp(p, s + h) + ph, 2 * (ph + 1))),
                        (1, nonneg(pp(p, s - h) - 1)),
                        (2, xdiv(pp(p, s + h) - 2 * pp(p, s) + ph, 2 * (ph - 1))),
                        (p.pow(h) + 1, xdiv(pp(p, s - h) - 1, ph * ph - 1)),
                    ],
                ),
                (ValuationCase::GeqOdd, true) => PredictedDistribution::multiplicity(
                    q,
                    "p odd, l2(h) >= l2(s), c = 0",
                    vec![(0, (q - 1) / 2), (1, 1), (2, (q - 1) / 2)],
                ),
                (ValuationCase::GeqOdd, false) => PredictedDistribution::multiplicity(
                    q,
                    "p odd, l2(h) >= l2(s), c != 0",
                    vec![
                        (0, xdiv(pp(p, s + h) - 1, 2 * (ph + 1))),
                        (1, nonneg(pp(p, s - h))),
                        (2, xdiv(pp(p, s + h) - 2 * pp(p, s) + 1, 2 * (ph - 1))),
                        (p.pow(h) + 1, xdiv(pp(p, s - h) - 1, ph * ph - 1)),
                    ],
                ),
            }
        }
        PowerFamily::HalfQMinus => {
            let d = (q - 1) / 2;
            match (q % 4, c_sign(ctx, c)) {
                (_, CSign::Zero) => PredictedDistribution::multiplicity(
                    q,
                    "c = 0",
                    vec![(0, q - 3), (1, 1), (d, 2)],
                ),
                (1, _) => PredictedDistribution::multiplicity(
                    q,
                    "q = 1 mod 4, c != 0",
                    vec![(0, (q + 3) / 4), (1, (q - 3) / 2), (2, (q + 3) / 4)],
                ),
                (_, CSign::Square) => {
                    let delta = ctx.delta2()? as i128;
                    PredictedDistribution::multiplicity(
                        q,
                        "q = 3 mod 4, c in C_0^((2,q))",
                        vec![
                            (0, nonneg((q as i128 + 5) / 4 - delta)),
                            (1, nonneg((q as i128 - 3) / 2 + 2 * delta)),
                            (2, nonneg((q as i128 - 3) / 4 - delta)),
                            (3, 1),
                        ],
                    )
                }
                (_, CSign::NonSquare) => {
                    let delta = ctx.delta2()? as i128;
                    PredictedDistribution::multiplicity(
                        q,
                        "q = 3 mod 4, c in C_1^((2,q))",
                        vec![
                            (0, nonneg((q as i128 - 3) / 4 + delta)),
                            (1, nonneg((q as i128 + 3) / 2 - 2 * delta)),
                            (2, nonneg((q as i128 - 3) / 4 + delta)),
                        ],
                    )
                }
            }
        }
        PowerFamily::HalfQPlus => {
            let case = half_plus_case(ctx, c)?;
            let label = half_plus_label(ctx, case);
            match case {
                HalfPlusCase::UnitShift => PredictedDistribution::multiplicity(
                    q,
                    label,
                    vec![(0, (q - 1) / 2), (1, (q - 1) / 2), ((q + 1) / 2, 1)],
                ),
                HalfPlusCase::Permutation => {
                    PredictedDistribution::multiplicity(q, label, vec![(1, q)])
                }
                HalfPlusCase::TwoToOne => PredictedDistribution::multiplicity(
                    q,
                    label,
                    vec![(0, (q - 1) / 2), (1, 1), (2, (q - 1) / 2)],
                ),
            }
        }
        PowerFamily::QMinusTwo => {
            if p == 2 {
                if c == ctx.zero() {
                    PredictedDistribution::multiplicity(q, "q even, c = 0", vec![(1, q)])
                } else {
                    PredictedDistribution::multiplicity(
                        q,
                        "q even, c != 0",
                        vec![(0, q / 2), (2, q / 2)],
                    )
                }
            } else {
                match (q % 4, c_sign(ctx, c)) {
                    (_, CSign::Zero) => {
                        PredictedDistribution::multiplicity(q, "c = 0", vec![(1, q)])
                    }
                    (1, CSign::Square) => PredictedDistribution::multiplicity(
                        q,
                        "q = 1 mod 4, c in C_0^((2,q))",
                        vec![(0, (q - 1) / 2), (1, 2), (2, (q - 5) / 2), (3, 1)],
                    ),
                    (1, CSign::NonSquare) => PredictedDistribution::multiplicity(
                        q,
                        "q = 1 mod 4, c in C_1^((2,q))",
                        vec![(0, (q - 1) / 2), (1, 1), (2, (q - 1) / 2)],
                    ),
                    (_, CSign::Square) => PredictedDistribution::multiplicity(
                        q,
                        "q = 3 mod 4, c in C_0^((2,q))",
                        vec![(0, (q + 1) / 2), (2, (q - 3) / 2), (3, 1)],
                    ),
                    (_, CSign::NonSquare) => PredictedDistribution::multiplicity(
                        q,
                        "q = 3 mod 4, c in C_1^((2,q))",
                        vec![(0, (q - 3) / 2), (1, 3), (2, (q - 3) / 2)],
                    ),
                }
            }
        }
        PowerFamily::QMinusOne => {
            if c == ctx.zero() {
                PredictedDistribution::multiplicity(
                    q,
                    "c = 0",
                    vec![(0, q - 2), (1, 1), (q - 1, 1)],
                )
            } else {
                PredictedDistribution::multiplicity(
                    q,
                    "c != 0",
                    vec![(0, 1), (1, q - 2), (2, 1)],
                )
            }
        }
    })
}

/// The closed-form intersection distribution `(v_i)` of the family.
pub fn predict_intersection(ctx: &FieldCtx, family: PowerFamily) -> Result<PredictedDistribution> {
    family.check_applicable(ctx)?;
    let p = ctx.p();
    let q = ctx.q();
    let s = ctx.s();
    let qi = q as i128;
    Ok(match family {
        PowerFamily::FrobeniusPower { i } => {
            let h = family.h(ctx).unwrap();
            let ph = pp(p, h);
            PredictedDistribution::intersection(
                q,
                format!("d = p^{i}, h = gcd({i},{s})"),
                vec![
                    (0, nonneg(pp(p, s - h) * (pp(p, s) - 1))),
                    (1, xdiv(pp(p, s) * (pp(p, s + h) - 2 * pp(p, s) + 1), ph - 1)),
                    (p.pow(h), xdiv(pp(p, s - h) * (pp(p, s) - 1), ph - 1)),
                ],
            )
        }
        PowerFamily::FrobeniusPlusOne { i } => {
            let h = family.h(ctx).unwrap();
            let ph = pp(p, h);
            PredictedDistribution::intersection(
                q,
                format!("d = p^{i} + 1, h = gcd({i},{s})"),
                vec![
                    (0, xdiv(ph * (pp(p, 2 * s) - 1), 2 * (ph + 1))),
                    (1, nonneg(pp(p, 2 * s - h) - pp(p, s - h) + 1)),
                    (
                        2,
                        xdiv(
                            ph * (pp(p, s) - 2 * pp(p, s - h) + 1) * (pp(p, s) - 1),
                            2 * (ph - 1),
                        ),
                    ),
                    (
                        p.pow(h) + 1,
                        xdiv((pp(p, s - h) - 1) * (pp(p, s) - 1), ph * ph - 1),
                    ),
                ],
            )
        }
        PowerFamily::HalfQMinus => {
            if q % 4 == 1 {
                PredictedDistribution::intersection(
                    q,
                    "d = (q-1)/2, q = 1 mod 4",
                    vec![
                        (0, xdiv(qi * qi + 6 * qi - 15, 4)),
                        (1, xdiv(qi * qi - 4 * qi + 5, 2)),
                        (2, xdiv(qi * qi + 2 * qi - 3, 4)),
                        ((q - 1) / 2, 2),
                    ],
                )
            } else {
                PredictedDistribution::intersection(
                    q,
                    "d = (q-1)/2, q = 3 mod 4",
                    vec![
                        (0, xdiv(qi * qi + 4 * qi - 13, 4)),
                        (1, xdiv(qi * qi - qi + 2, 2)),
                        (2, xdiv(qi * qi - 4 * qi + 3, 4)),
                        (3, (q - 1) / 2),
                        ((q - 1) / 2, 2),
                    ],
                )
            }
        }
        PowerFamily::HalfQPlus => PredictedDistribution::intersection(
            q,
            "d = (q+1)/2",
            vec![
                (0, xdiv(qi * qi + 2 * qi - 3, 4)),
                (1, xdiv(qi * qi - 3, 2)),
                (2, xdiv((qi - 1) * (qi - 1), 4)),
                ((q + 1) / 2, 2),
            ],
        ),
        PowerFamily::QMinusTwo => {
            if p == 2 {
                PredictedDistribution::intersection(
                    q,
                    "d = q-2, q even",
                    vec![(0, q * (q - 1) / 2), (1, q), (2, q * (q - 1) / 2)],
                )
            } else {
                PredictedDistribution::intersection(
                    q,
                    "d = q-2, q odd",
                    vec![
                        (0, (q - 1) * (q - 1) / 2),
                        (1, (5 * q - 3) / 2),
                        (2, (q - 1) * (q - 3) / 2),
                        (3, (q - 1) / 2),
                    ],
                )
            }
        }
        PowerFamily::QMinusOne => PredictedDistribution::intersection(
            q,
            "d = q-1",
            vec![
                (0, 2 * q - 3),
                (1, nonneg(qi * qi - 3 * qi + 3)),
                (2, q - 1),
                (q - 1, 1),
            ],
        ),
    })
}

/// A prediction/brute-force disagreement with enough context to debug it.
#[derive(Clone, Debug)]
pub struct Mismatch {
    /// Index of `c` for per-row mismatches, `None` for aggregates.
    pub c: Option<u64>,
    pub context: String,
    pub predicted: Distribution,
    pub actual: Distribution,
}

/// Result of diffing a family's closed forms against brute force over one field.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub family: String,
    pub q: u64,
    pub rows_checked: u64,
    pub mismatches: Vec<Mismatch>,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "family": self.family,
            "q": self.q,
            "rows_checked": self.rows_checked,
            "ok": self.ok(),
            "mismatches": self.mismatches.iter().map(|m| serde_json::json!({
                "c": m.c,
                "context": m.context,
                "predicted": m.predicted.brief(),
                "actual": m.actual.brief(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Record a mismatch if the two distributions differ.
pub fn compare_distributions(
    context: &str,
    c: Option<u64>,
    predicted: &Distribution,
    actual: &Distribution,
) -> Option<Mismatch> {
    if predicted.counts() == actual.counts() {
        None
    } else {
        Some(Mismatch {
            c,
            context: context.to_string(),
            predicted: predicted.clone(),
            actual: actual.clone(),
        })
    }
}

/// Diff every closed-form row of the family against brute force, then diff
/// the closed-form intersection distribution against both the brute-force
/// one and the aggregation of the predicted rows.
pub fn verify_family(ctx: &FieldCtx, family: PowerFamily) -> Result<VerificationReport> {
    family.check_applicable(ctx)?;
    let q = ctx.q();
    let f = family.monomial(ctx)?;
    let mut mismatches = Vec::new();
    let mut rows_checked = 0;
    let mut aggregated: Vec<(u64, u64)> = Vec::new();
    for c in ctx.elements() {
        let predicted = predict_multiplicity(ctx, family, c)?;
        let actual = polyset::multiplicity_row(ctx, &f, c);
        rows_checked += 1;
        aggregated.extend(predicted.dist.nonzero());
        if let Some(m) = compare_distributions(
            &format!("{family} over GF({q}), {}", predicted.case_label),
            Some(c.index()),
            &predicted.dist,
            &actual.dist,
        ) {
            mismatches.push(m);
        }
    }

    let predicted_v = predict_intersection(ctx, family)?;
    let actual_v = polyset::intersection_distribution(ctx, &f);
    if let Some(m) = compare_distributions(
        &format!("{family} over GF({q}), intersection distribution"),
        None,
        &predicted_v.dist,
        &actual_v,
    ) {
        mismatches.push(m);
    }
    let aggregated_v = Distribution::from_pairs(q * q, aggregated);
    if let Some(m) = compare_distributions(
        &format!("{family} over GF({q}), row aggregation vs closed form"),
        None,
        &predicted_v.dist,
        &aggregated_v,
    ) {
        mismatches.push(m);
    }

    Ok(VerificationReport {
        family: family.to_string(),
        q,
        rows_checked,
        mismatches,
    })
}

/// Verify every applicable family instance over every prime power `<= q_max`.
pub fn verify_all(q_max: u64) -> Vec<VerificationReport> {
    use rayon::prelude::*;
    let orders: Vec<u64> = (2..=q_max).filter(|&q| FieldCtx::from_order(q).is_ok()).collect();
    orders
        .par_iter()
        .flat_map(|&q| {
            let ctx = FieldCtx::from_order(q).unwrap();
            PowerFamily::applicable_instances(&ctx)
                .into_iter()
                .map(|fam| verify_family(&ctx, fam).unwrap())
                .collect::<Vec<_>>()
        })
        .collect()
}
