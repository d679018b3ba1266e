//! Acceptance suite: one test per shipping criterion, each printing a
//! PASS line with its timing. Everything asserts exact integer equality.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use pgdist::extremal::{self, ExampleKind};
use pgdist::formulas::{self, PowerFamily};
use pgdist::gf::FieldCtx;
use pgdist::kakeya;
use pgdist::plane::{Distribution, Plane};
use pgdist::polyset::{self, FieldPoly};
use pgdist::tables;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_cafe;

fn ctx(q: u64) -> FieldCtx {
    FieldCtx::from_order(q).unwrap()
}

#[test]
fn criterion_1_table2_reproduction() {
    let start = Instant::now();
    let problems = tables::check_table2(&tables::TABLE2_ORDERS).unwrap();
    assert!(problems.is_empty(), "{problems:#?}");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}, budget 60 s");
    println!("ACCEPTANCE 1 (table 2 reproduction, q <= 16): PASS in {elapsed:?}");
}

#[test]
fn criterion_2_family_rows_match_brute_force_up_to_128() {
    let start = Instant::now();
    let mut families = 0;
    for q in common::prime_powers(128) {
        let f = ctx(q);
        for fam in PowerFamily::applicable_instances(&f) {
            let report = formulas::verify_family(&f, fam).unwrap();
            assert!(
                report.ok(),
                "family {fam} over GF({q}): {:#?}",
                report.mismatches.first()
            );
            assert_eq!(report.rows_checked, q);
            families += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 600, "took {elapsed:?}, budget 10 min");
    println!(
        "ACCEPTANCE 2 (closed-form rows == brute force, {families} family instances, q <= 128): PASS in {elapsed:?}"
    );
}

#[test]
fn criterion_3_row_aggregation_reproduces_intersection_forms() {
    let start = Instant::now();
    for q in common::prime_powers(128) {
        let f = ctx(q);
        for fam in PowerFamily::applicable_instances(&f) {
            let mut pairs: Vec<(u64, u64)> = Vec::new();
            for c in f.elements() {
                let row = formulas::predict_multiplicity(&f, fam, c).unwrap();
                assert_eq!(row.dist.mass(), q, "row mass, {fam} q={q}");
                assert_eq!(row.dist.weighted_sum(|i| i), q, "row weight, {fam} q={q}");
                pairs.extend(row.dist.nonzero());
            }
            let aggregated = Distribution::from_pairs(q * q, pairs);
            let v = formulas::predict_intersection(&f, fam).unwrap().dist;
            assert_eq!(v.mass(), q * q);
            assert_eq!(v.weighted_sum(|i| i), q * q);
            assert_eq!(aggregated, v, "aggregation of rows, {fam} q={q}");
        }
    }
    let elapsed = start.elapsed();
    println!("ACCEPTANCE 3 (table 1 consistency, q <= 128): PASS in {elapsed:?}");
}

#[test]
fn criterion_4_kakeya_census_matches_table4() {
    let start = Instant::now();
    let problems = tables::check_table4(&tables::TABLE4_ORDERS).unwrap();
    assert!(problems.is_empty(), "{problems:#?}");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 120, "took {elapsed:?}, budget 2 min");
    println!("ACCEPTANCE 4 (kakeya census == table 4, q <= 9): PASS in {elapsed:?}");
}

#[test]
fn criterion_5_transfer_equals_geometry() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for q in [3u64, 4, 5, 7, 8, 9, 11, 13, 16] {
        let plane = Plane::from_order(q).unwrap();
        let f = plane.field();
        for trial in 0..200 {
            let poly = common::random_poly(f, &mut rng, 0);
            let c = f.elem(rng.gen_range(0..q)).unwrap();
            let via_transfer = kakeya::transfer_distribution(f, &poly, c);
            let dk = kakeya::dual_kakeya(&plane, &poly, c);
            let geometric = plane.intersection_distribution(&dk.points);
            assert_eq!(via_transfer, geometric, "q={q} trial={trial}");
            if trial < 10 {
                // Raw dot-product oracle, independent of the plane's
                // incidence lists.
                let points: Vec<_> = dk.points.points(&plane).collect();
                assert_eq!(via_transfer, common::oracle_set_distribution(f, &points));
            }
        }
    }
    let elapsed = start.elapsed();
    println!("ACCEPTANCE 5 (transfer == direct line enumeration, 200 pairs x 9 orders): PASS in {elapsed:?}");
}

#[test]
fn criterion_6_spectra_match_exhaustive_search() {
    let expected: [(u64, &[u64], u64); 4] = [
        (2, &[0, 1], 10),
        (3, &[0, 2, 3], 10),
        (4, &[0, 3, 4, 5, 6], 10),
        (5, &[0, 4, 6, 7, 8, 9, 10], 600),
    ];
    for (q, want, budget_secs) in expected {
        let start = Instant::now();
        let plane = Plane::from_order(q).unwrap();
        let result = extremal::spectrum_exhaustive(&plane, None).unwrap();
        let want: BTreeSet<u64> = want.iter().copied().collect();
        assert_eq!(result.attained, want, "Spec({q})");
        let elapsed = start.elapsed();
        assert!(
            elapsed.as_secs() < budget_secs,
            "Spec({q}) took {elapsed:?}, budget {budget_secs} s"
        );
        println!("ACCEPTANCE 6 (Spec({q}) exhaustive): PASS in {elapsed:?}");
    }
}

#[test]
fn criterion_7_constructions_hit_their_distributions() {
    let start = Instant::now();
    let cases: &[(ExampleKind, &[u64])] = &[
        (ExampleKind::Arc, &[4, 5, 7, 8, 9]),
        (ExampleKind::NearArcEven1, &[4, 8]),
        (ExampleKind::NearArcEven2, &[4, 8]),
        (ExampleKind::NearArcOdd1, &[5, 7, 9]),
        (ExampleKind::NearArcOdd2, &[3, 5, 7, 9]),
        (ExampleKind::Line, &[2, 3, 4, 5]),
        (ExampleKind::LinePlusPoint, &[3, 4, 5, 7]),
        (ExampleKind::NearLineTrisecant, &[4, 5, 7, 8]),
        (ExampleKind::NearLineBisecant, &[4, 5, 7, 8]),
    ];
    for (kind, orders) in cases {
        assert!(orders.len() >= 2);
        for &q in *orders {
            let plane = Plane::from_order(q).unwrap();
            let set = extremal::construct_example(&plane, *kind).unwrap();
            let got = plane.intersection_distribution(&set);
            let want = kind.expected_distribution(q);
            assert_eq!(got, want, "{} at q = {q}", kind.tag());
        }
    }
    let elapsed = start.elapsed();
    println!("ACCEPTANCE 7 (extremal constructions, all kinds, >= 2 orders each): PASS in {elapsed:?}");
}

const PROPERTY_ORDERS: [u64; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

#[test]
fn criterion_8a_counting_identities_on_random_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut instances = 0;
    for &q in &PROPERTY_ORDERS {
        let plane = Plane::from_order(q).unwrap();
        for _ in 0..100 {
            let set = common::random_point_set(&plane, &mut rng, (q + 1) as usize);
            let dist = plane.intersection_distribution(&set);
            assert_eq!(dist.mass(), q * q + q + 1);
            assert_eq!(dist.weighted_sum(|i| i), (q + 1) * (q + 1));
            assert_eq!(dist.weighted_sum(|i| i * i.saturating_sub(1)), q * (q + 1));
            let higher: u64 = dist
                .nonzero()
                .filter(|&(i, _)| i >= 3)
                .map(|(i, n)| (i - 1) * (i - 2) / 2 * n)
                .sum();
            assert_eq!(dist.get(0), q * (q - 1) / 2 - higher);
            instances += 1;
        }
    }
    assert!(instances >= 1000);
    println!("ACCEPTANCE 8a (counting identities, {instances} instances): PASS");
}

#[test]
fn criterion_8b_bridge_between_polynomial_and_set_distributions() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let mut instances = 0;
    for &q in &PROPERTY_ORDERS {
        let plane = Plane::from_order(q).unwrap();
        let f = plane.field();
        for _ in 0..100 {
            let poly = common::random_poly(f, &mut rng, 0);
            let v = polyset::intersection_distribution(f, &poly);
            let u = plane.intersection_distribution(&polyset::graph_points(&plane, &poly));
            assert_eq!(v.get(0), u.get(0));
            assert_eq!(v.get(1), u.get(1) - 1);
            assert_eq!(v.get(2), u.get(2) - q);
            for i in 3..=q {
                assert_eq!(v.get(i), u.get(i), "i = {i}");
            }
            assert_eq!(u.get(q + 1), 0);
            // Non-hitting bounds with their equality cases.
            assert!(v.get(0) >= q - 1);
            assert_eq!(v.get(0) == q - 1, poly.degree() <= 1);
            assert!(v.get(0) <= q * (q - 1) / 2);
            instances += 1;
        }
    }
    assert!(instances >= 1000);
    println!("ACCEPTANCE 8b (bridge relations, {instances} instances): PASS");
}

#[test]
fn criterion_8c_degree_bounds_on_non_hitting_index() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut instances = 0;
    for &q in &PROPERTY_ORDERS {
        if q == 2 {
            continue; // no reduced polynomial of degree >= 2
        }
        let f = ctx(q);
        for _ in 0..112 {
            let poly = common::random_poly(&f, &mut rng, 2);
            let d = poly.degree();
            let v0 = polyset::non_hitting_index(&f, &poly);
            let (lower, upper) = polyset::degree_bounds(&f, &poly).unwrap();
            assert!(lower <= v0 && v0 <= upper, "q={q} d={d} v0={v0}");
            if (q - 1) % d == 0 {
                let n_f = polyset::permutation_directions(&f, &poly).len() as u64;
                assert_eq!(n_f, 0, "no permutation polynomial of degree d | q-1");
                assert!(q * (q - 1) / d <= v0);
                assert!(v0 <= (d - 1) * q * (q - 1) / d);
            }
            instances += 1;
        }
    }
    assert!(instances >= 1000);
    println!("ACCEPTANCE 8c (degree bounds, {instances} instances): PASS");
}

#[test]
fn criterion_8d_row_conservation() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let mut instances = 0;
    for &q in &PROPERTY_ORDERS {
        let f = ctx(q);
        for _ in 0..100 {
            let poly = common::random_poly(&f, &mut rng, 0);
            let c = f.elem(rng.gen_range(0..q)).unwrap();
            let row = polyset::multiplicity_row(&f, &poly, c);
            assert_eq!(row.dist.mass(), q);
            assert_eq!(row.dist.weighted_sum(|i| i), q);
            instances += 1;
        }
    }
    assert!(instances >= 1000);
    println!("ACCEPTANCE 8d (row conservation, {instances} instances): PASS");
}

#[test]
fn criterion_8e_linear_shifts_preserve_intersection_distribution() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let mut instances = 0;
    for &q in &PROPERTY_ORDERS {
        let f = ctx(q);
        for _ in 0..100 {
            let poly = common::random_poly(&f, &mut rng, 0);
            let a = f.elem(rng.gen_range(0..q)).unwrap();
            let b = f.elem(rng.gen_range(0..q)).unwrap();
            let shifted = poly.add(&f, &FieldPoly::linear(&f, a, b));
            assert_eq!(
                polyset::intersection_distribution(&f, &poly),
                polyset::intersection_distribution(&f, &shifted)
            );
            instances += 1;
        }
    }
    assert!(instances >= 1000);
    println!("ACCEPTANCE 8e (linearity invariance, {instances} instances): PASS");
}

#[test]
fn criterion_8f_inverse_exponents_share_multiplicity_rows() {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let mut instances = 0;
    for &q in &PROPERTY_ORDERS {
        let f = ctx(q);
        let coprime: Vec<u64> = (1..q).filter(|&d| gcd(d, q - 1) == 1).collect();
        for _ in 0..100 {
            let d = coprime[rng.gen_range(0..coprime.len())];
            let d_inv = (1..q).find(|&e| d * e % (q - 1) == 1 % (q - 1)).unwrap();
            let sorted_rows = |exp: u64| {
                let poly = FieldPoly::monomial(&f, exp);
                let mut rows: Vec<Vec<(u64, u64)>> = polyset::multiplicity_rows(&f, &poly)
                    .into_iter()
                    .map(|r| r.dist.nonzero().collect())
                    .collect();
                rows.sort();
                rows
            };
            assert_eq!(sorted_rows(d), sorted_rows(d_inv), "q={q} d={d} d'={d_inv}");
            instances += 1;
        }
    }
    assert!(instances >= 1000);
    println!("ACCEPTANCE 8f (inverse-exponent symmetry, {instances} instances): PASS");
}

#[test]
fn criterion_9_cyclotomy_closed_forms_up_to_128() {
    let start = Instant::now();
    for q in common::prime_powers(128) {
        if q % 2 == 0 {
            continue;
        }
        let f = ctx(q);
        for i in 0..2u8 {
            for j in 0..2u8 {
                assert_eq!(
                    f.cyclotomic_number2(i, j).unwrap(),
                    f.cyclotomic_number2_closed(i, j).unwrap(),
                    "(i,j) = ({i},{j}), q = {q}"
                );
                assert_eq!(
                    f.quadratic_pair_class(i, j).unwrap().len() as u64,
                    f.quadratic_pair_class_size_closed(i, j).unwrap(),
                    "pair class ({i},{j}), q = {q}"
                );
            }
        }
    }
    let elapsed = start.elapsed();
    println!("ACCEPTANCE 9 (cyclotomy closed forms, odd q <= 128): PASS in {elapsed:?}");
}
