//! Rendering and checking of the four reference tables.
//!
//! Tables 1 and 3 are closed forms: they are rendered by instantiating the
//! family formulas at a given `q`, and checked by diffing every instantiated
//! prediction against the brute-force tallies. Tables 2 and 4 are computed
//! data: they are rendered from brute force and checked against the golden
//! transcriptions stored under `golden/`, byte for byte in the case of
//! Table 2.
//!
//! Table 2 conventions: exponents `d` with `gcd(d, q-1) = 1` are grouped
//! with their inverse modulo `q - 1` (the two power maps share their whole
//! multiplicity distribution), and an entry is starred when no exponent of
//! its group belongs to one of the six closed-form families.

use std::collections::{BTreeMap, BTreeSet};

use crate::formulas::{self, PowerFamily};
use crate::gf::FieldCtx;
use crate::kakeya;
use crate::polyset::{self, FieldPoly};
use crate::Result;

/// Golden transcription of the non-hitting indices of all power mappings,
/// `q <= 16`.
pub const GOLDEN_TABLE2: &str = include_str!("../golden/table2.txt");

/// Golden transcription of the attainable Kakeya set sizes and the exponents
/// realizing them, `q <= 9`. An empty set means the size is attainable but
/// by no monomial.
pub const GOLDEN_TABLE4: &str = include_str!("../golden/table4.txt");

/// The orders covered by the golden Table 2.
pub const TABLE2_ORDERS: [u64; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

/// The orders covered by the golden Table 4.
pub const TABLE4_ORDERS: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Inverse of `d` modulo `m` when `gcd(d, m) = 1`.
fn mod_inverse(d: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, d as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (t0, t1) = (t1, t0 - quot * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// Reduced exponents covered by the six closed-form families over `GF(q)`.
pub fn family_exponents(ctx: &FieldCtx) -> BTreeSet<u64> {
    PowerFamily::applicable_instances(ctx)
        .into_iter()
        .map(|fam| fam.exponent(ctx).unwrap())
        .collect()
}

/// One rendered entry of Table 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table2Entry {
    /// `{d}` or `{d, d^{-1} mod q-1}`.
    pub exponents: BTreeSet<u64>,
    pub v0: u64,
    /// No exponent of the group has a closed form.
    pub star: bool,
}

fn render_exponent_group(ds: &BTreeSet<u64>) -> String {
    if ds.len() == 1 {
        ds.iter().next().unwrap().to_string()
    } else {
        let inner: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
        format!("{{{}}}", inner.join(","))
    }
}

fn render_table2_entry(e: &Table2Entry) -> String {
    format!(
        "({},{}){}",
        render_exponent_group(&e.exponents),
        e.v0,
        if e.star { "*" } else { "" }
    )
}

/// Compute one row of Table 2: the non-hitting index of every power mapping
/// over `GF(q)`, grouped and starred per the table conventions.
pub fn table2_row(q: u64) -> Result<Vec<Table2Entry>> {
    let ctx = FieldCtx::from_order(q)?;
    let v0: BTreeMap<u64, u64> = (1..q)
        .map(|d| {
            (
                d,
                polyset::non_hitting_index(&ctx, &FieldPoly::monomial(&ctx, d)),
            )
        })
        .collect();
    let known = family_exponents(&ctx);
    let mut entries = Vec::new();
    let mut emitted = BTreeSet::new();
    for d in 1..q {
        if emitted.contains(&d) {
            continue;
        }
        let mut group = BTreeSet::from([d]);
        if q > 2 && gcd(d, q - 1) == 1 {
            let inv = mod_inverse(d, q - 1).unwrap();
            if inv != d {
                group.insert(inv);
            }
        }
        for &g in &group {
            emitted.insert(g);
            assert_eq!(v0[&g], v0[&d], "grouped exponents must share v_0");
        }
        let star = group.is_disjoint(&known);
        entries.push(Table2Entry {
            exponents: group,
            v0: v0[&d],
            star,
        });
    }
    Ok(entries)
}

pub fn render_table2(orders: &[u64]) -> Result<String> {
    let mut out = String::new();
    for &q in orders {
        let parts: Vec<String> = table2_row(q)?.iter().map(render_table2_entry).collect();
        out.push_str(&format!("q={q}: {}\n", parts.join(" ")));
    }
    Ok(out)
}

/// Render the census of Kakeya sizes attainable by monomials over `GF(q)`.
///
/// For the orders covered by the golden transcription, sizes known to be
/// attainable by non-monomial Kakeya sets are merged in with an empty
/// exponent set, so a correct census renders byte-identically to the golden
/// file. Other orders show the computed census alone.
pub fn render_table4(orders: &[u64]) -> Result<String> {
    let golden: BTreeMap<u64, Vec<(u64, BTreeSet<u64>)>> =
        golden_rows(GOLDEN_TABLE4, orders)
            .into_iter()
            .map(|(q, entries)| (q, parse_table4_entries(&entries)))
            .collect();
    let mut out = String::new();
    for &q in orders {
        let ctx = FieldCtx::from_order(q)?;
        let mut merged = kakeya::monomial_census(&ctx)?;
        if let Some(rows) = golden.get(&q) {
            for (size, _) in rows {
                merged.entry(*size).or_default();
            }
        }
        let parts: Vec<String> = merged
            .iter()
            .map(|(size, ds)| {
                let inner: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
                format!("({size},{{{}}})", inner.join(","))
            })
            .collect();
        out.push_str(&format!("q={q}: {}\n", parts.join(" ")));
    }
    Ok(out)
}

/// Closed-form intersection distributions instantiated at `q` (Table 1).
pub fn render_table1(q: u64, d_filter: Option<u64>) -> Result<String> {
    let ctx = FieldCtx::from_order(q)?;
    let mut out = String::new();
    for fam in PowerFamily::applicable_instances(&ctx) {
        let d = fam.exponent(&ctx)?;
        if d_filter.is_some_and(|want| want != d) {
            continue;
        }
        let pred = formulas::predict_intersection(&ctx, fam)?;
        out.push_str(&format!(
            "q={q} d={d} {fam}: v = {}\n",
            pred.dist.brief()
        ));
    }
    Ok(out)
}

/// Closed-form dual-Kakeya distributions instantiated at `q` (Table 3); one
/// row per case branch, annotated with how many `c` fall into it.
pub fn render_table3(q: u64, d_filter: Option<u64>) -> Result<String> {
    let ctx = FieldCtx::from_order(q)?;
    let mut out = String::new();
    for fam in PowerFamily::applicable_instances(&ctx) {
        let d = fam.exponent(&ctx)?;
        if d_filter.is_some_and(|want| want != d) {
            continue;
        }
        // label -> (how many c, representative prediction)
        let mut cases: BTreeMap<String, (u64, kakeya::DkPrediction)> = BTreeMap::new();
        for c in ctx.elements() {
            let pred = kakeya::predict_dk(&ctx, fam, c)?;
            cases
                .entry(pred.case_label.clone())
                .and_modify(|(n, _)| *n += 1)
                .or_insert((1, pred));
        }
        for (label, (n, pred)) in cases {
            out.push_str(&format!(
                "q={q} d={d} {fam}, {label} ({n} values of c): u = {}, |K| = {}\n",
                pred.dist.brief(),
                pred.size
            ));
        }
    }
    Ok(out)
}

fn golden_rows(text: &str, orders: &[u64]) -> Vec<(u64, Vec<String>)> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) = line.split_once(':').expect("golden rows look like `q=N: ...`");
        let q: u64 = head.trim_start_matches("q=").parse().unwrap();
        if !orders.contains(&q) {
            continue;
        }
        let entries = rest.split_whitespace().map(str::to_string).collect();
        out.push((q, entries));
    }
    out
}

fn parse_set(text: &str) -> BTreeSet<u64> {
    let inner = text.trim_start_matches('{').trim_end_matches('}');
    if inner.is_empty() {
        BTreeSet::new()
    } else {
        inner.split(',').map(|d| d.parse().unwrap()).collect()
    }
}

/// Parse one golden Table 2 row into structured entries.
pub fn parse_table2_entries(entries: &[String]) -> Vec<Table2Entry> {
    entries
        .iter()
        .map(|e| {
            let star = e.ends_with('*');
            let body = e.trim_end_matches('*');
            let body = &body[1..body.len() - 1];
            let split = body.rfind(',').unwrap();
            let (ds, v0) = (&body[..split], &body[split + 1..]);
            Table2Entry {
                exponents: if ds.starts_with('{') {
                    parse_set(ds)
                } else {
                    BTreeSet::from([ds.parse().unwrap()])
                },
                v0: v0.parse().unwrap(),
                star,
            }
        })
        .collect()
}

/// Parse one golden Table 4 row into `(size, exponents)` pairs.
pub fn parse_table4_entries(entries: &[String]) -> Vec<(u64, BTreeSet<u64>)> {
    entries
        .iter()
        .map(|e| {
            let body = &e[1..e.len() - 1];
            let split = body.find(',').unwrap();
            (body[..split].parse().unwrap(), parse_set(&body[split + 1..]))
        })
        .collect()
}

/// Diff the computed Table 2 against the golden transcription. Returns one
/// message per disagreement; empty means exact reproduction.
pub fn check_table2(orders: &[u64]) -> Result<Vec<String>> {
    check_table2_text(GOLDEN_TABLE2, orders)
}

/// Like [`check_table2`] against caller-supplied golden text.
pub fn check_table2_text(golden_text: &str, orders: &[u64]) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    for (q, golden_entries) in golden_rows(golden_text, orders) {
        let computed = table2_row(q)?;
        let golden = parse_table2_entries(&golden_entries);
        if computed.len() != golden.len() {
            problems.push(format!(
                "q={q}: {} computed entries vs {} golden",
                computed.len(),
                golden.len()
            ));
            continue;
        }
        for (c, g) in computed.iter().zip(&golden) {
            if c != g {
                problems.push(format!(
                    "q={q}: computed {} vs golden {}",
                    render_table2_entry(c),
                    render_table2_entry(g)
                ));
            }
        }
    }
    Ok(problems)
}

/// Check the census against the golden Table 4: sizes with a nonempty
/// exponent set must be reproduced exactly, empty-set sizes must be attained
/// by no monomial, and the census must not attain sizes outside the table.
pub fn check_table4(orders: &[u64]) -> Result<Vec<String>> {
    check_table4_text(GOLDEN_TABLE4, orders)
}

/// Like [`check_table4`] against caller-supplied golden text.
pub fn check_table4_text(golden_text: &str, orders: &[u64]) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    for (q, golden_entries) in golden_rows(golden_text, orders) {
        let ctx = FieldCtx::from_order(q)?;
        let census = kakeya::monomial_census(&ctx)?;
        let golden = parse_table4_entries(&golden_entries);
        let golden_sizes: BTreeSet<u64> = golden.iter().map(|&(s, _)| s).collect();
        for (size, ds) in &golden {
            match census.get(size) {
                Some(got) if ds.is_empty() => problems.push(format!(
                    "q={q}: size {size} should be unattainable by monomials, got {got:?}"
                )),
                Some(got) if got != ds => problems.push(format!(
                    "q={q}: size {size} attained by {got:?}, golden {ds:?}"
                )),
                None if !ds.is_empty() => {
                    problems.push(format!("q={q}: size {size} not attained, golden {ds:?}"))
                }
                _ => {}
            }
        }
        for size in census.keys() {
            if !golden_sizes.contains(size) {
                problems.push(format!(
                    "q={q}: census attains size {size} outside the golden size list"
                ));
            }
        }
    }
    Ok(problems)
}

/// Check every instantiated Table 1 row against brute force at one order.
pub fn check_table1(q: u64) -> Result<Vec<String>> {
    let ctx = FieldCtx::from_order(q)?;
    let mut problems = Vec::new();
    for fam in PowerFamily::applicable_instances(&ctx) {
        let report = formulas::verify_family(&ctx, fam)?;
        for m in report.mismatches {
            problems.push(format!(
                "q={q} {}: {} (predicted {}, actual {})",
                report.family,
                m.context,
                m.predicted.brief(),
                m.actual.brief()
            ));
        }
    }
    Ok(problems)
}

/// Check every instantiated Table 3 row against the transfer of brute-force
/// data at one order.
pub fn check_table3(q: u64) -> Result<Vec<String>> {
    let ctx = FieldCtx::from_order(q)?;
    let mut problems = Vec::new();
    for fam in PowerFamily::applicable_instances(&ctx) {
        let f = fam.monomial(&ctx)?;
        for c in ctx.elements() {
            let pred = kakeya::predict_dk(&ctx, fam, c)?;
            let actual = kakeya::transfer_distribution(&ctx, &f, c);
            if pred.dist != actual {
                problems.push(format!(
                    "q={q} {fam} at c={} ({}): predicted {}, actual {}",
                    c.index(),
                    pred.case_label,
                    pred.dist.brief(),
                    actual.brief()
                ));
            }
            let size = kakeya::kakeya_size(&ctx, &f, c);
            if pred.size != size {
                problems.push(format!(
                    "q={q} {fam} at c={}: predicted |K| = {}, actual {}",
                    c.index(),
                    pred.size,
                    size
                ));
            }
        }
    }
    Ok(problems)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table2_rows_match_golden_for_small_orders() {
        assert_eq!(check_table2(&[2, 3, 4, 5, 7, 8]).unwrap(), Vec::<String>::new());
    }

    #[test]
    fn table2_row_q9_has_one_star() {
        let row = table2_row(9).unwrap();
        let starred: Vec<&Table2Entry> = row.iter().filter(|e| e.star).collect();
        assert_eq!(starred.len(), 1);
        assert_eq!(starred[0].exponents, BTreeSet::from([6]));
        assert_eq!(starred[0].v0, 28);
    }

    #[test]
    fn table2_grouping_q8() {
        let row = table2_row(8).unwrap();
        assert_eq!(row.len(), 5);
        assert_eq!(row[1].exponents, BTreeSet::from([2, 4]));
        assert_eq!(row[1].v0, 28);
        assert_eq!(row[2].exponents, BTreeSet::from([3, 5]));
        assert_eq!(row[2].v0, 21);
    }

    #[test]
    fn table4_check_small_orders() {
        assert_eq!(check_table4(&[2, 3, 4, 5]).unwrap(), Vec::<String>::new());
    }

    #[test]
    fn closed_form_tables_match_oracles_at_q9() {
        assert_eq!(check_table1(9).unwrap(), Vec::<String>::new());
        assert_eq!(check_table3(9).unwrap(), Vec::<String>::new());
    }

    #[test]
    fn rendering_is_parseable() {
        let text = render_table2(&[5]).unwrap();
        assert_eq!(text, "q=5: (1,4) (2,10) (3,8) (4,7)\n");
        let t4 = render_table4(&[4]).unwrap();
        assert_eq!(t4, "q=4: (10,{2}) (12,{2,3}) (13,{1,3}) (16,{1})\n");
        let t1 = render_table1(9, Some(2)).unwrap();
        assert!(t1.contains("d=2"));
        let t3 = render_table3(4, Some(3)).unwrap();
        assert!(t3.contains("|K|"));
    }

    #[test]
    fn rendered_tables_equal_their_goldens() {
        assert_eq!(render_table2(&TABLE2_ORDERS).unwrap(), GOLDEN_TABLE2);
        assert_eq!(render_table4(&TABLE4_ORDERS).unwrap(), GOLDEN_TABLE4);
    }
}
