//! Arithmetic for the finite field `GF(p^s)`.
//!
//! Elements are encoded as integer indices in `[0, q)`: the base-`p` digits
//! of an index are the coefficients of the residue polynomial, lowest degree
//! in the least significant digit. Index `0` is the zero element and index
//! `1` the multiplicative unit, so encodings are stable across runs and fit
//! for golden-file tests.
//!
//! The reduction modulus is the lexicographically smallest monic irreducible
//! polynomial of degree `s` over `GF(p)`, comparing coefficient lists from
//! the constant term upwards. Irreducibility is established by trial
//! division against every monic polynomial of degree at most `s/2`, and the
//! multiplicative group is checked to be cyclic by locating a generator.
//!
//! A `FieldCtx` is immutable after construction; every operation is a pure
//! function of the context and its arguments, so contexts can be shared
//! freely across threads.

use std::sync::OnceLock;

use crate::error::Error;
use crate::Result;

/// Default bound on the field order accepted by [`FieldCtx::new`].
pub const DEFAULT_ORDER_CAP: u64 = 1 << 20;

/// Log/antilog tables are built eagerly up to this order, lazily above it.
const EAGER_TABLE_BOUND: u64 = 1 << 16;

/// An element of `GF(p^s)`, stored as its integer index in `[0, q)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FieldElem(pub(crate) u32);

impl FieldElem {
    /// Integer index of the element (base-`p` encoding of its coefficients).
    pub fn index(self) -> u64 {
        self.0 as u64
    }
}

struct LogTables {
    /// `log[a]` is the discrete log of the element with index `a`; entry 0 unused.
    log: Vec<u32>,
    /// `antilog[k] = g^k` for `0 <= k < q - 1`.
    antilog: Vec<u32>,
}

/// Immutable arithmetic context for `GF(p^s)`.
pub struct FieldCtx {
    p: u64,
    s: u32,
    q: u64,
    /// Monic irreducible modulus, coefficients constant-term first, length `s + 1`.
    modulus: Vec<u64>,
    generator: FieldElem,
    tables: OnceLock<LogTables>,
}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("s", &self.s)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Remainder of polynomial division over `GF(p)`, coefficients low-first.
fn poly_rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    debug_assert_eq!(b[db], 1, "divisor must be monic");
    while a.len() > db {
        let lead = *a.last().unwrap();
        let da = a.len() - 1;
        if lead != 0 {
            for (i, &bc) in b.iter().enumerate().take(db) {
                let t = (lead * bc) % p;
                let idx = da - db + i;
                a[idx] = (a[idx] + p - t) % p;
            }
        }
        a.pop();
        while a.len() > 1 && *a.last().unwrap() == 0 {
            a.pop();
        }
    }
    a
}

/// Does `candidate` (monic, low-first coefficients) factor over `GF(p)`?
fn has_factor(candidate: &[u64], p: u64) -> bool {
    let deg = candidate.len() - 1;
    // Trial division by every monic polynomial of degree 1..=deg/2.
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for r in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut r = r;
            for _ in 0..d {
                div.push(r % p);
                r /= p;
            }
            div.push(1);
            let rem = poly_rem(candidate.to_vec(), &div, p);
            if rem.len() == 1 && rem[0] == 0 {
                return true;
            }
        }
    }
    false
}

impl FieldCtx {
    /// Construct `GF(p^s)` with the default order cap.
    pub fn new(p: u64, s: u32) -> Result<Self> {
        Self::with_cap(p, s, DEFAULT_ORDER_CAP)
    }

    /// Construct `GF(p^s)` with an explicit order cap.
    pub fn with_cap(p: u64, s: u32, cap: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        assert!(s >= 1, "extension degree must be positive");
        let mut q: u64 = 1;
        for _ in 0..s {
            q = q.checked_mul(p).ok_or(Error::CapExceeded { q: u64::MAX, cap })?;
            if q > cap {
                return Err(Error::CapExceeded { q, cap });
            }
        }
        let modulus = Self::smallest_irreducible(p, s);
        let mut ctx = FieldCtx {
            p,
            s,
            q,
            modulus,
            generator: FieldElem(0),
            tables: OnceLock::new(),
        };
        ctx.generator = ctx.find_generator();
        if q <= EAGER_TABLE_BOUND {
            ctx.tables();
        }
        Ok(ctx)
    }

    /// Like [`FieldCtx::new`], but skip the first `skip` admissible
    /// generators. Used to probe that derived artifacts do not depend on
    /// the generator choice.
    #[cfg(test)]
    pub(crate) fn with_alternate_generator(p: u64, s: u32, skip: usize) -> Result<Self> {
        let mut ctx = Self::with_cap(p, s, DEFAULT_ORDER_CAP)?;
        ctx.tables = OnceLock::new();
        ctx.generator = ctx.find_nth_generator(skip);
        if ctx.q <= EAGER_TABLE_BOUND {
            ctx.tables();
        }
        Ok(ctx)
    }

    /// Construct the field of order `q`, factoring `q` into `p^s`.
    pub fn from_order(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::NonPrime(q));
        }
        let mut p = q;
        for d in 2..=q {
            if d * d > q {
                break;
            }
            if q.is_multiple_of(d) {
                p = d;
                break;
            }
        }
        let mut s = 0;
        let mut rest = q;
        while rest.is_multiple_of(p) {
            rest /= p;
            s += 1;
        }
        if rest != 1 {
            return Err(Error::NonPrime(q));
        }
        Self::new(p, s)
    }

    /// Lexicographically smallest monic irreducible of degree `s` over `GF(p)`,
    /// comparing coefficients constant-term first. For `s = 1` this is `x`.
    fn smallest_irreducible(p: u64, s: u32) -> Vec<u64> {
        if s == 1 {
            return vec![0, 1];
        }
        let deg = s as usize;
        let count = p.pow(s);
        for rank in 0..count {
            // Constant coefficient is the most significant search digit.
            let mut coeffs = Vec::with_capacity(deg + 1);
            for i in 0..deg {
                coeffs.push((rank / p.pow((deg - 1 - i) as u32)) % p);
            }
            coeffs.push(1);
            if coeffs[0] != 0 && !has_factor(&coeffs, p) {
                return coeffs;
            }
        }
        unreachable!("an irreducible polynomial of every degree exists over GF(p)")
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// Field order `q = p^s`.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Reduction modulus, coefficients constant-term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// A fixed generator of the multiplicative group.
    pub fn generator(&self) -> FieldElem {
        self.generator
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(0)
    }

    pub fn one(&self) -> FieldElem {
        FieldElem(1)
    }

    /// The element `1 + 1`.
    pub fn two(&self) -> FieldElem {
        self.add(self.one(), self.one())
    }

    pub fn neg_one(&self) -> FieldElem {
        self.neg(self.one())
    }

    /// Element with the given index.
    pub fn elem(&self, idx: u64) -> Result<FieldElem> {
        if idx < self.q {
            Ok(FieldElem(idx as u32))
        } else {
            Err(Error::IndexOutOfRange { idx, q: self.q })
        }
    }

    /// All field elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q as u32).map(FieldElem)
    }

    /// All nonzero field elements in index order.
    pub fn units(&self) -> impl Iterator<Item = FieldElem> {
        (1..self.q as u32).map(FieldElem)
    }

    fn digits(&self, a: FieldElem) -> [u64; 24] {
        let mut out = [0u64; 24];
        let mut v = a.0 as u64;
        for slot in out.iter_mut().take(self.s as usize) {
            *slot = v % self.p;
            v /= self.p;
        }
        out
    }

    fn pack_digits(&self, digits: &[u64]) -> FieldElem {
        let mut v = 0u64;
        for &d in digits.iter().take(self.s as usize).rev() {
            v = v * self.p + d;
        }
        FieldElem(v as u32)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        let da = self.digits(a);
        let db = self.digits(b);
        let mut out = [0u64; 24];
        for i in 0..self.s as usize {
            out[i] = (da[i] + db[i]) % self.p;
        }
        self.pack_digits(&out)
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.p == 2 {
            return a;
        }
        let da = self.digits(a);
        let mut out = [0u64; 24];
        for i in 0..self.s as usize {
            out[i] = (self.p - da[i]) % self.p;
        }
        self.pack_digits(&out)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    /// Product via log tables when available, polynomial arithmetic otherwise.
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem(0);
        }
        if let Some(t) = self.tables.get() {
            let k = (t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64) % (self.q - 1);
            return FieldElem(t.antilog[k as usize]);
        }
        self.mul_poly(a, b)
    }

    fn mul_poly(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let da = self.digits(a);
        let db = self.digits(b);
        let s = self.s as usize;
        let mut prod = vec![0u64; 2 * s - 1];
        for i in 0..s {
            if da[i] == 0 {
                continue;
            }
            for j in 0..s {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % self.p;
            }
        }
        let rem = poly_rem(prod, &self.modulus, self.p);
        let mut digits = [0u64; 24];
        digits[..rem.len()].copy_from_slice(&rem);
        self.pack_digits(&digits)
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = self.tables.get() {
            let k = (self.q - 1 - t.log[a.0 as usize] as u64) % (self.q - 1);
            return Ok(FieldElem(t.antilog[k as usize]));
        }
        Ok(self.pow(a, self.q - 2))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for a nonnegative exponent. `0^0 = 1` and `0^e = 0` for `e >= 1`;
    /// nonzero bases reduce the exponent modulo `q - 1`.
    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if a.0 == 0 {
            return if e == 0 { self.one() } else { self.zero() };
        }
        let e = e % (self.q - 1);
        if let Some(t) = self.tables.get() {
            let k = (t.log[a.0 as usize] as u128 * e as u128) % (self.q - 1) as u128;
            return FieldElem(t.antilog[k as usize]);
        }
        let mut base = a;
        let mut e = e;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_poly(acc, base);
            }
            base = self.mul_poly(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^e` for a signed exponent; negative exponents invert the base first.
    pub fn pow_signed(&self, a: FieldElem, e: i64) -> Result<FieldElem> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(self.inv(a)?, e.unsigned_abs()))
        }
    }

    fn find_generator(&self) -> FieldElem {
        self.find_nth_generator(0)
    }

    fn find_nth_generator(&self, mut skip: usize) -> FieldElem {
        let factors = prime_factors(self.q - 1);
        'cand: for idx in 1..self.q {
            let g = FieldElem(idx as u32);
            if self.q > 2 && idx == 1 {
                continue;
            }
            for &r in &factors {
                if self.pow(g, (self.q - 1) / r) == self.one() {
                    continue 'cand;
                }
            }
            if skip == 0 {
                return g;
            }
            skip -= 1;
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }

    fn tables(&self) -> &LogTables {
        self.tables.get_or_init(|| {
            let q = self.q as usize;
            let mut log = vec![0u32; q];
            let mut antilog = vec![0u32; q - 1];
            let mut acc = self.one();
            for (k, slot) in antilog.iter_mut().enumerate() {
                *slot = acc.0;
                log[acc.0 as usize] = k as u32;
                acc = self.mul_poly(acc, self.generator);
            }
            debug_assert_eq!(acc, self.one());
            LogTables { log, antilog }
        })
    }

    /// Discrete log base the fixed generator, for nonzero elements.
    pub fn log(&self, a: FieldElem) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.tables().log[a.0 as usize] as u64)
    }

    fn require_odd(&self) -> Result<()> {
        if self.p == 2 {
            Err(Error::EvenCharacteristic(self.q))
        } else {
            Ok(())
        }
    }

    /// Is `a` a nonzero square? Returns `false` for zero.
    pub fn is_square(&self, a: FieldElem) -> bool {
        if a.0 == 0 {
            return false;
        }
        if self.p == 2 {
            return true;
        }
        self.pow(a, (self.q - 1) / 2) == self.one()
    }

    /// Quadratic class of a nonzero element: 0 for squares, 1 for nonsquares.
    pub fn square_class(&self, a: FieldElem) -> Option<u8> {
        if a.0 == 0 {
            None
        } else if self.is_square(a) {
            Some(0)
        } else {
            Some(1)
        }
    }

    /// The cyclotomic class `C_i^{(N,q)} = g^i * {N-th powers}`. `N` is
    /// normalized to `gcd(N, q - 1)`, recorded in the returned value.
    pub fn cyclotomic_class(&self, n: u64, i: u64) -> CyclotomicClass {
        let n_eff = gcd(n, self.q - 1).max(1);
        let shift = i % n_eff;
        let members = self
            .units()
            .filter(|&x| self.log_mod(x, n_eff) == shift)
            .collect();
        CyclotomicClass {
            requested_n: n,
            effective_n: n_eff,
            index: shift,
            members,
        }
    }

    /// `log(x) mod m` without requiring full tables when `q` is large.
    fn log_mod(&self, x: FieldElem, m: u64) -> u64 {
        if self.tables.get().is_some() || self.q <= EAGER_TABLE_BOUND {
            return self.tables().log[x.0 as usize] as u64 % m;
        }
        // Slow path: x in C_j iff x * g^{-j} is an m-th power.
        for j in 0..m {
            let shifted = self.mul(x, self.pow(self.generator, (self.q - 1) - (j % (self.q - 1))));
            if self.pow(shifted, (self.q - 1) / m) == self.one() {
                return j;
            }
        }
        unreachable!("cyclotomic classes partition the units")
    }

    /// Membership test for `C_0^{(N,q)}`, the nonzero `N`-th powers.
    /// Zero is never a member.
    pub fn in_nth_power_class(&self, n: u64, x: FieldElem) -> bool {
        if x.0 == 0 {
            return false;
        }
        let n_eff = gcd(n, self.q - 1).max(1);
        self.pow(x, (self.q - 1) / n_eff) == self.one()
    }

    /// Cyclotomic number of order two, `(i,j)_q = |(1 + C_i) ∩ C_j|`,
    /// counted directly from the definition.
    pub fn cyclotomic_number2(&self, i: u8, j: u8) -> Result<u64> {
        self.require_odd()?;
        let mut count = 0;
        for x in self.units() {
            if self.square_class(x) != Some(i % 2) {
                continue;
            }
            let y = self.add(self.one(), x);
            if self.square_class(y) == Some(j % 2) {
                count += 1;
            }
        }
        Ok(count)
    }

    /// Closed form for the cyclotomic numbers of order two.
    pub fn cyclotomic_number2_closed(&self, i: u8, j: u8) -> Result<u64> {
        self.require_odd()?;
        let q = self.q;
        let (i, j) = (i % 2, j % 2);
        Ok(if q % 4 == 1 {
            if (i, j) == (0, 0) {
                (q - 5) / 4
            } else {
                (q - 1) / 4
            }
        } else if (i, j) == (0, 1) {
            (q + 1) / 4
        } else {
            (q - 3) / 4
        })
    }

    /// Indicator that `2` is a nonzero square in the field (`q` odd).
    pub fn delta2(&self) -> Result<u64> {
        self.require_odd()?;
        Ok(if self.is_square(self.two()) { 1 } else { 0 })
    }

    /// The set `{ x in F_q^* : 1 - x in C_i^{(2,q)}, 1 + x in C_j^{(2,q)} }`,
    /// enumerated from the definition.
    pub fn quadratic_pair_class(&self, i: u8, j: u8) -> Result<Vec<FieldElem>> {
        self.require_odd()?;
        let (i, j) = (i % 2, j % 2);
        Ok(self
            .units()
            .filter(|&x| self.pair_class_of(x) == Some((i, j)))
            .collect())
    }

    /// Joint quadratic class of `(1 - x, 1 + x)`, when both are nonzero and
    /// `x` itself is nonzero.
    pub fn pair_class_of(&self, x: FieldElem) -> Option<(u8, u8)> {
        if x.0 == 0 {
            return None;
        }
        let a = self.sub(self.one(), x);
        let b = self.add(self.one(), x);
        Some((self.square_class(a)?, self.square_class(b)?))
    }

    /// Closed form for the size of [`FieldCtx::quadratic_pair_class`].
    pub fn quadratic_pair_class_size_closed(&self, i: u8, j: u8) -> Result<u64> {
        self.require_odd()?;
        let q = self.q as i64;
        let delta = self.delta2()? as i64;
        let base = if q % 4 == 1 { (q - 5) / 4 } else { (q - 3) / 4 };
        let v = match (i % 2, j % 2) {
            (0, 0) => base - delta,
            (1, 1) => base + delta,
            _ => {
                if q % 4 == 1 {
                    (q - 1) / 4
                } else {
                    (q - 3) / 4
                }
            }
        };
        debug_assert!(v >= 0);
        Ok(v as u64)
    }
}

/// A cyclotomic class together with the modulus it was computed for.
#[derive(Debug, Clone)]
pub struct CyclotomicClass {
    /// The `N` the caller asked for.
    pub requested_n: u64,
    /// `gcd(N, q - 1)`, the modulus actually used.
    pub effective_n: u64,
    /// Class index reduced modulo `effective_n`.
    pub index: u64,
    /// Members in element-index order.
    pub members: Vec<FieldElem>,
}

/// 2-adic valuation with an explicit infinity for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TwoAdic {
    Finite(u32),
    Infinite,
}

/// Largest `k` with `2^k | i`; infinite for `i = 0`.
pub fn two_adic_valuation(i: u64) -> TwoAdic {
    if i == 0 {
        TwoAdic::Infinite
    } else {
        TwoAdic::Finite(i.trailing_zeros())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_construction() {
        let f2 = FieldCtx::new(2, 1).unwrap();
        assert_eq!(f2.q(), 2);
        assert_eq!(f2.modulus(), &[0, 1]);
    }

    #[test]
    fn gf9_has_smallest_irreducible_modulus() {
        // Enumerating monic quadratics over GF(3) constant-term-first, the
        // first one without a root is x^2 + 1.
        let f9 = FieldCtx::new(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert_eq!(FieldCtx::new(4, 1).unwrap_err(), Error::NonPrime(4));
    }

    #[test]
    fn rejects_orders_beyond_cap() {
        assert!(matches!(
            FieldCtx::with_cap(2, 21, 1 << 20).unwrap_err(),
            Error::CapExceeded { .. }
        ));
    }

    #[test]
    fn from_order_factors_prime_powers() {
        let f = FieldCtx::from_order(27).unwrap();
        assert_eq!((f.p(), f.s()), (3, 3));
        assert!(FieldCtx::from_order(12).is_err());
    }

    #[test]
    fn basic_arithmetic_examples() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        assert_eq!(f5.mul(FieldElem(3), FieldElem(4)), FieldElem(2));

        let f7 = FieldCtx::new(7, 1).unwrap();
        assert_eq!(f7.inv(FieldElem(3)).unwrap(), FieldElem(5));

        // In GF(9) with modulus x^2 + 1 the residue of x squares to -1 = 2.
        let f9 = FieldCtx::new(3, 2).unwrap();
        assert_eq!(f9.mul(FieldElem(3), FieldElem(3)), FieldElem(2));
    }

    #[test]
    fn zero_power_conventions() {
        let f7 = FieldCtx::new(7, 1).unwrap();
        assert_eq!(f7.pow(f7.zero(), 0), f7.one());
        assert_eq!(f7.pow(f7.zero(), 3), f7.zero());
        assert_eq!(f7.pow_signed(f7.zero(), -1).unwrap_err(), Error::DivisionByZero);
        assert_eq!(f7.pow_signed(FieldElem(3), -1).unwrap(), FieldElem(5));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        assert_eq!(f5.inv(f5.zero()).unwrap_err(), Error::DivisionByZero);
        assert_eq!(f5.div(f5.one(), f5.zero()).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn field_axioms_on_small_fields() {
        for (p, s) in [(2, 3), (3, 2), (5, 1), (7, 1), (2, 4)] {
            let f = FieldCtx::new(p, s).unwrap();
            let one = f.one();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.sub(f.add(a, b), b), a);
                }
                if a != f.zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), one);
                    assert_eq!(f.pow(a, f.q() - 1), one);
                }
            }
        }
    }

    #[test]
    fn cyclotomic_class_examples() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        let squares: Vec<u64> = f5.cyclotomic_class(2, 0).members.iter().map(|e| e.index()).collect();
        assert_eq!(squares, vec![1, 4]);

        let f7 = FieldCtx::new(7, 1).unwrap();
        let nonsquares: Vec<u64> = f7.cyclotomic_class(2, 1).members.iter().map(|e| e.index()).collect();
        assert_eq!(nonsquares, vec![3, 5, 6]);

        // GF(9): the class of squares must equal the set of x^2 over units.
        let f9 = FieldCtx::new(3, 2).unwrap();
        let mut squared: Vec<FieldElem> = f9.units().map(|x| f9.mul(x, x)).collect();
        squared.sort();
        squared.dedup();
        assert_eq!(f9.cyclotomic_class(2, 0).members, squared);
        assert_eq!(squared.len(), 4);
    }

    #[test]
    fn cyclotomic_classes_partition_units() {
        for q in [4u64, 7, 9, 13, 16, 25, 27] {
            let f = FieldCtx::from_order(q).unwrap();
            for n in 1..=q - 1 {
                if (q - 1) % n != 0 {
                    continue;
                }
                let mut seen = vec![false; q as usize];
                let mut total = 0;
                for i in 0..n {
                    let class = f.cyclotomic_class(n, i);
                    assert_eq!(class.members.len() as u64, (q - 1) / n);
                    for m in &class.members {
                        assert!(!seen[m.0 as usize], "classes must be disjoint");
                        seen[m.0 as usize] = true;
                        total += 1;
                    }
                }
                assert_eq!(total, q - 1);
            }
        }
    }

    #[test]
    fn nth_power_class_never_contains_zero() {
        let f8 = FieldCtx::new(2, 3).unwrap();
        // N = 1 makes every unit a power, but zero stays excluded.
        assert!(!f8.in_nth_power_class(1, f8.zero()));
        assert!(f8.units().all(|x| f8.in_nth_power_class(1, x)));
    }

    #[test]
    fn cyclotomic_number_examples() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        assert_eq!(f5.cyclotomic_number2(0, 0).unwrap(), 0);

        let f7 = FieldCtx::new(7, 1).unwrap();
        assert_eq!(f7.cyclotomic_number2(0, 1).unwrap(), 2);

        let f9 = FieldCtx::new(3, 2).unwrap();
        assert_eq!(f9.cyclotomic_number2(0, 0).unwrap(), 1);
        for (i, j) in [(0, 1), (1, 0), (1, 1)] {
            assert_eq!(f9.cyclotomic_number2(i, j).unwrap(), 2);
        }

        let f4 = FieldCtx::new(2, 2).unwrap();
        assert_eq!(
            f4.cyclotomic_number2(0, 0).unwrap_err(),
            Error::EvenCharacteristic(4)
        );
    }

    #[test]
    fn quadratic_pair_class_examples() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        assert_eq!(f5.quadratic_pair_class(0, 1).unwrap().len(), 1);

        let f7 = FieldCtx::new(7, 1).unwrap();
        assert_eq!(f7.quadratic_pair_class(0, 0).unwrap().len(), 0);
        assert_eq!(f7.delta2().unwrap(), 1);

        let f9 = FieldCtx::new(3, 2).unwrap();
        let sizes: Vec<usize> = [(0, 0), (0, 1), (1, 0), (1, 1)]
            .iter()
            .map(|&(i, j)| f9.quadratic_pair_class(i, j).unwrap().len())
            .collect();
        assert_eq!(sizes, vec![0, 2, 2, 2]);
        assert_eq!(f9.delta2().unwrap(), 1);
    }

    #[test]
    fn quadratic_pair_classes_cover_everything_but_pm1() {
        for q in [5u64, 7, 9, 11, 13, 25, 27] {
            let f = FieldCtx::from_order(q).unwrap();
            let mut seen = vec![false; q as usize];
            let mut total = 0;
            for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                let class = f.quadratic_pair_class(i, j).unwrap();
                assert_eq!(
                    class.len() as u64,
                    f.quadratic_pair_class_size_closed(i, j).unwrap()
                );
                for m in class {
                    assert!(!seen[m.0 as usize]);
                    seen[m.0 as usize] = true;
                    total += 1;
                }
            }
            assert_eq!(total, q - 3, "units minus ±1 for q = {q}");
            assert!(!seen[f.one().0 as usize]);
            assert!(!seen[f.neg_one().0 as usize]);
        }
    }

    #[test]
    fn delta_examples() {
        assert_eq!(FieldCtx::new(7, 1).unwrap().delta2().unwrap(), 1);
        assert_eq!(FieldCtx::new(5, 1).unwrap().delta2().unwrap(), 0);
        // Closed-form case split: s even or p = ±1 mod 8 gives 1.
        for (p, s) in [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (11, 1), (13, 1), (17, 1), (23, 1)] {
            let f = FieldCtx::new(p, s).unwrap();
            let expect = if s % 2 == 0 || p % 8 == 1 || p % 8 == 7 { 1 } else { 0 };
            assert_eq!(f.delta2().unwrap(), expect, "p={p} s={s}");
        }
    }

    #[test]
    fn two_adic_valuation_examples() {
        assert_eq!(two_adic_valuation(12), TwoAdic::Finite(2));
        assert_eq!(two_adic_valuation(0), TwoAdic::Infinite);
        assert!(two_adic_valuation(8) < two_adic_valuation(0));
        assert!(two_adic_valuation(4) > two_adic_valuation(6));
    }

    #[test]
    fn arithmetic_above_the_eager_table_bound() {
        // GF(2^17) stays on the polynomial mul/inv path until a log is asked
        // for; GF(3^11) exercises the odd-characteristic slow path.
        let f = FieldCtx::new(2, 17).unwrap();
        assert_eq!(f.q(), 1 << 17);
        for idx in [1u64, 2, 3, 12345, 77777, (1 << 17) - 1] {
            let a = f.elem(idx).unwrap();
            assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            assert_eq!(f.pow(a, f.q() - 1), f.one());
            assert_eq!(f.mul(a, f.one()), a);
        }
        let a = f.elem(54321).unwrap();
        let b = f.elem(98765).unwrap();
        assert_eq!(f.mul(a, b), f.mul(b, a));
        // First log request builds the tables on demand.
        assert_eq!(f.log(f.one()).unwrap(), 0);
        assert_eq!(f.pow(f.generator(), f.log(a).unwrap()), a);

        let f3 = FieldCtx::new(3, 11).unwrap();
        let x = f3.elem(100_000).unwrap();
        assert_eq!(f3.mul(x, f3.inv(x).unwrap()), f3.one());
        let sq = f3.mul(x, x);
        assert!(f3.is_square(sq));
    }

    #[test]
    fn generator_has_full_order() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 64, 81, 121, 125, 128] {
            let f = FieldCtx::from_order(q).unwrap();
            let g = f.generator();
            let mut acc = f.one();
            let mut seen = vec![false; q as usize];
            for _ in 0..q - 1 {
                acc = f.mul(acc, g);
                assert!(!seen[acc.0 as usize]);
                seen[acc.0 as usize] = true;
            }
            assert_eq!(acc, f.one());
        }
    }
}
