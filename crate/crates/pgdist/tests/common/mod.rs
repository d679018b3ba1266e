//! Independent oracles shared by the integration suites.
//!
//! These deliberately avoid the code paths they are used to check: the
//! intersection oracle counts roots pair by pair instead of tallying value
//! multisets, and the line oracle re-enumerates canonical lines and tests
//! incidence by raw dot products instead of using the plane's precomputed
//! incidence lists.

// Each test binary compiles its own copy of this module and not all of them
// use every oracle.
#![allow(dead_code)]

use pgdist::gf::{FieldCtx, FieldElem};
use pgdist::plane::{Distribution, Plane, PointSet, ProjPoint};
use pgdist::polyset::FieldPoly;
use rand::Rng;

/// All prime powers up to and including `max`.
pub fn prime_powers(max: u64) -> Vec<u64> {
    (2..=max).filter(|&q| FieldCtx::from_order(q).is_ok()).collect()
}

/// Intersection distribution of `f` by counting, for every pair `(a, b)`,
/// the roots of `f(x) - ax - b` one `x` at a time. O(q^3).
pub fn oracle_poly_intersection(ctx: &FieldCtx, f: &FieldPoly) -> Distribution {
    let q = ctx.q();
    let mut pairs = Vec::with_capacity((q * q) as usize);
    for a in ctx.elements() {
        for b in ctx.elements() {
            let roots = ctx
                .elements()
                .filter(|&x| f.eval(ctx, x) == ctx.add(ctx.mul(a, x), b))
                .count() as u64;
            pairs.push((roots, 1));
        }
    }
    Distribution::from_pairs(q * q, pairs)
}

/// Intersection distribution of a point set by enumerating every canonical
/// line triple and testing incidence with dot products only.
pub fn oracle_set_distribution(ctx: &FieldCtx, points: &[ProjPoint]) -> Distribution {
    let q = ctx.q();
    let mut lines: Vec<[FieldElem; 3]> = Vec::new();
    for a in ctx.elements() {
        for b in ctx.elements() {
            for c in ctx.elements() {
                let triple = [a, b, c];
                let pivot = triple.iter().position(|&e| e != ctx.zero());
                match pivot {
                    None => continue,
                    Some(i) if triple[i] != ctx.one() => continue,
                    _ => lines.push(triple),
                }
            }
        }
    }
    assert_eq!(lines.len() as u64, q * q + q + 1);
    let pairs = lines.iter().map(|line| {
        let hits = points
            .iter()
            .filter(|p| {
                let mut acc = ctx.zero();
                for (&pc, &lc) in p.coords.iter().zip(line.iter()) {
                    acc = ctx.add(acc, ctx.mul(pc, lc));
                }
                acc == ctx.zero()
            })
            .count() as u64;
        (hits, 1)
    });
    Distribution::from_pairs(q * q + q + 1, pairs)
}

/// Uniformly random polynomial, redrawn until its reduced degree is at least
/// `min_degree`.
pub fn random_poly(ctx: &FieldCtx, rng: &mut impl Rng, min_degree: u64) -> FieldPoly {
    loop {
        let coeffs: Vec<FieldElem> = (0..ctx.q())
            .map(|_| ctx.elem(rng.gen_range(0..ctx.q())).unwrap())
            .collect();
        let f = FieldPoly::new(ctx, &coeffs);
        if f.degree() >= min_degree {
            return f;
        }
    }
}

/// A uniformly random point set of the given size.
pub fn random_point_set(plane: &Plane, rng: &mut impl Rng, size: usize) -> PointSet {
    let mut picked = Vec::with_capacity(size);
    let mut pool: Vec<u32> = (0..plane.size() as u32).collect();
    for _ in 0..size {
        let i = rng.gen_range(0..pool.len());
        picked.push(pool.swap_remove(i));
    }
    picked.into_iter().collect()
}
