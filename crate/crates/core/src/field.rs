//! Arithmetic in `F = GF(2^n)`, `n = 2m`, with the subfield `K = GF(2^m)`.
//!
//! Elements are bit vectors in the polynomial basis: bit `i` is the
//! coefficient of `x^i`. Multiplication goes through exp/log tables built
//! from a fixed generator, so every product is two lookups and an add.
//!
//! The modulus is the smallest irreducible polynomial of degree `n` (by
//! integer encoding) and the generator is the smallest element of full
//! order. Both choices are deterministic, so every table, list, and LUT
//! produced by this crate is reproducible bit-for-bit.

use std::fmt;
use std::ops::{Add, AddAssign};

use crate::error::{Error, Result};

/// Largest degree accepted without `APNLAB_MAX_N`.
pub const DEFAULT_MAX_N: u32 = 24;
/// Hard ceiling: elements and table entries are `u32`.
pub const HARD_MAX_N: u32 = 30;

/// A field element as an n-bit vector in polynomial basis.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub const fn from_bits(bits: u32) -> Self {
        Elem(bits)
    }

    #[inline]
    pub const fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }

    /// Lowercase hex of the integer encoding, no prefix.
    pub fn to_hex(self) -> String {
        format!("{:x}", self.0)
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Elem({:#x})", self.0)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.0)
    }
}

impl fmt::LowerHex for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

impl Add for Elem {
    type Output = Elem;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Elem) -> Elem {
        Elem(self.0 ^ rhs.0)
    }
}

impl AddAssign for Elem {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Elem) {
        self.0 ^= rhs.0;
    }
}

impl serde::Serialize for Elem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

/// Accepts any hex string that fits in 32 bits; range against a particular
/// field is checked by whoever owns the field.
impl<'de> serde::Deserialize<'de> for Elem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = <std::borrow::Cow<'de, str>>::deserialize(d)?;
        let v = parse_hex_u64(&s).map_err(serde::de::Error::custom)?;
        u32::try_from(v)
            .map(Elem)
            .map_err(|_| serde::de::Error::custom(format!("element {s:?} wider than 32 bits")))
    }
}

/// Immutable description of `GF(2^n)` with its embedded `GF(2^m)`.
#[derive(Clone)]
pub struct FieldCtx {
    n: u32,
    modulus: u64,
    generator: Elem,
    /// `exp[i] = generator^i`, stored twice over so a sum of two logs
    /// never needs reducing.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// Bit `i` is `Tr^n_1(x^i)`; the absolute trace is a parity under this mask.
    trace_mask: u32,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("n", &self.n)
            .field("modulus", &format_args!("{:#x}", self.modulus))
            .field("generator", &self.generator)
            .finish()
    }
}

/// Degree cap, raised by the `APNLAB_MAX_N` environment variable.
pub fn max_degree() -> u32 {
    std::env::var("APNLAB_MAX_N")
        .ok()
        .and_then(|v| v.trim().parse::<u32>().ok())
        .map(|v| v.min(HARD_MAX_N))
        .unwrap_or(DEFAULT_MAX_N)
}

/// Builds `GF(2^n)` with the canonical modulus and generator.
pub fn build_field(n: u32) -> Result<FieldCtx> {
    FieldCtx::new(n)
}

impl FieldCtx {
    pub fn new(n: u32) -> Result<Self> {
        check_degree(n, max_degree())?;
        let modulus = smallest_irreducible(n);
        Self::build(n, modulus)
    }

    /// Plain `GF(2^n)` for any degree, odd included.
    ///
    /// Only the generic arithmetic is meaningful when `n` is odd: there is
    /// no `K`, so `m`, `trace_rel` and the subfield helpers must not be used.
    /// Exists so odd-degree fixtures (Gold on `GF(2^5)`) can be analysed.
    pub fn any_degree(n: u32) -> Result<Self> {
        if !(2..=max_degree()).contains(&n) {
            return Err(Error::DegreeOutOfRange {
                n,
                max: max_degree(),
            });
        }
        Self::build(n, smallest_irreducible(n))
    }

    /// True when `n` is even, i.e. the subfield `K = GF(2^(n/2))` exists.
    pub fn has_half_subfield(&self) -> bool {
        self.n.is_multiple_of(2)
    }

    /// Builds the field over a caller-chosen modulus (e.g. read from a file).
    pub fn with_modulus(n: u32, modulus: u64) -> Result<Self> {
        check_field_params(n, modulus)?;
        Self::build(n, modulus)
    }

    fn build(n: u32, modulus: u64) -> Result<Self> {
        let size = 1usize << n;
        let order = (size - 1) as u64;
        let primes = prime_factors(order);
        let generator = (2..size as u64)
            .find(|&g| {
                primes
                    .iter()
                    .all(|&p| poly_pow_mod(g, order / p, modulus, n) != 1)
            })
            .ok_or(Error::NotIrreducible { modulus, n })?;

        let mut exp = vec![0u32; 2 * (size - 1)];
        let mut log = vec![0u32; size];
        let mut x = 1u64;
        for i in 0..size - 1 {
            exp[i] = x as u32;
            exp[i + size - 1] = x as u32;
            log[x as usize] = i as u32;
            x = poly_mul_mod(x, generator, modulus, n);
        }
        if x != 1 {
            return Err(Error::Internal(format!(
                "generator {generator:#x} does not have order {order}"
            )));
        }

        let mut ctx = FieldCtx {
            n,
            modulus,
            generator: Elem(generator as u32),
            exp,
            log,
            trace_mask: 0,
        };
        let mut mask = 0u32;
        for i in 0..n {
            let t = ctx.trace_sub_unchecked(Elem(1 << i), n, 1);
            debug_assert!(t.bits() <= 1);
            mask |= t.bits() << i;
        }
        ctx.trace_mask = mask;
        Ok(ctx)
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.n / 2
    }

    /// `q = 2^m`, the subfield size.
    #[inline]
    pub fn q(&self) -> u64 {
        1u64 << self.m()
    }

    /// Number of field elements, `2^n`.
    #[inline]
    pub fn size(&self) -> usize {
        1usize << self.n
    }

    /// Multiplicative group order `2^n - 1`.
    #[inline]
    pub fn order(&self) -> u64 {
        (self.size() - 1) as u64
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generator(&self) -> Elem {
        self.generator
    }

    /// Checks that `bits` encodes an element of this field.
    pub fn elem(&self, bits: u64) -> Result<Elem> {
        if bits >> self.n != 0 {
            return Err(Error::ElementOutOfRange {
                value: bits,
                n: self.n,
            });
        }
        Ok(Elem(bits as u32))
    }

    /// All elements in ascending integer order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.size() as u32).map(Elem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.size() as u32).map(Elem)
    }

    /// `generator^i`, with `i` reduced mod `2^n - 1`.
    #[inline]
    pub fn exp(&self, i: u64) -> Elem {
        Elem(self.exp[(i % self.order()) as usize])
    }

    /// Discrete log base the generator; `None` for zero.
    #[inline]
    pub fn log(&self, a: Elem) -> Option<u32> {
        (!a.is_zero()).then(|| self.log[a.index()])
    }

    #[inline]
    pub fn add(a: Elem, b: Elem) -> Elem {
        a + b
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        let s = self.log[a.index()] as usize + self.log[b.index()] as usize;
        Elem(self.exp[s])
    }

    #[inline]
    pub fn square(&self, a: Elem) -> Elem {
        self.mul(a, a)
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.inv_nz(a))
    }

    /// Inverse of a nonzero element; zero maps to zero.
    #[inline]
    pub(crate) fn inv_nz(&self, a: Elem) -> Elem {
        if a.is_zero() {
            return Elem::ZERO;
        }
        let l = self.log[a.index()] as usize;
        Elem(self.exp[(self.size() - 1 - l) % (self.size() - 1)])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for any integer `e`; negative exponents invert. `0^e` needs `e > 0`.
    pub fn pow(&self, a: Elem, e: i64) -> Result<Elem> {
        if a.is_zero() {
            return if e > 0 {
                Ok(Elem::ZERO)
            } else {
                Err(Error::ZeroPower)
            };
        }
        let ord = self.order() as i128;
        let r = (e as i128).rem_euclid(ord) as u64;
        Ok(self.powu(a, r))
    }

    /// `a^e` with `e >= 0`; `0^e = 0` (callers never ask for `0^0`).
    #[inline]
    pub fn powu(&self, a: Elem, e: u64) -> Elem {
        if a.is_zero() {
            debug_assert!(e > 0, "0^0 requested");
            return Elem::ZERO;
        }
        let l = self.log[a.index()] as u128;
        let ord = self.order() as u128;
        Elem(self.exp[((l * (e as u128 % ord)) % ord) as usize])
    }

    /// `a^(2^e)` for `0 <= e < n`.
    pub fn frobenius(&self, a: Elem, e: u32) -> Result<Elem> {
        if e >= self.n {
            return Err(Error::FrobeniusExponent { e, n: self.n });
        }
        Ok(self.frob(a, e))
    }

    /// `a^(2^e)` with `e` taken mod `n`.
    #[inline]
    pub fn frob(&self, a: Elem, e: u32) -> Elem {
        if a.is_zero() {
            return a;
        }
        let e = e % self.n;
        let l = self.log[a.index()] as u64;
        Elem(self.exp[((l << e) % self.order()) as usize])
    }

    /// `Tr(X) = X + X^q`, the relative trace onto `K`.
    #[inline]
    pub fn trace_rel(&self, x: Elem) -> Elem {
        x + self.frob(x, self.m())
    }

    /// `Tr^n_d(X) = sum_i X^(2^(i d))`, landing in `GF(2^d)`.
    pub fn trace_abs(&self, x: Elem, d: u32) -> Result<Elem> {
        self.trace_sub(x, self.n, d)
    }

    /// `Tr^e_d(x) = sum_{i < e/d} x^(2^(i d))` for `d | e | n`.
    ///
    /// Meaningful when `x` lies in `GF(2^e)`; used with `e = m` on subfield
    /// elements.
    pub fn trace_sub(&self, x: Elem, e: u32, d: u32) -> Result<Elem> {
        if d == 0 || !e.is_multiple_of(d) {
            return Err(Error::NotDivisor { d, n: e });
        }
        if e == 0 || !self.n.is_multiple_of(e) {
            return Err(Error::NotDivisor { d: e, n: self.n });
        }
        Ok(self.trace_sub_unchecked(x, e, d))
    }

    fn trace_sub_unchecked(&self, x: Elem, e: u32, d: u32) -> Elem {
        let mut acc = Elem::ZERO;
        let mut y = x;
        for _ in 0..e / d {
            acc += y;
            y = self.frob(y, d);
        }
        acc
    }

    /// Absolute trace `Tr^n_1(x)` as a bit, via the precomputed mask.
    #[inline]
    pub fn abs_trace(&self, x: Elem) -> u32 {
        (x.bits() & self.trace_mask).count_ones() & 1
    }

    /// The mask with `abs_trace(x) = parity(x & mask)`.
    #[inline]
    pub fn trace_mask(&self) -> u32 {
        self.trace_mask
    }

    /// True iff `X^(2^m) = X`.
    #[inline]
    pub fn in_subfield(&self, x: Elem) -> bool {
        self.frob(x, self.m()) == x
    }

    /// A generator of `K*`, namely `generator^(q+1)`.
    pub fn subfield_generator(&self) -> Elem {
        self.exp(self.q() + 1)
    }

    /// The elements of `K`, ascending.
    pub fn subfield_elements(&self) -> Vec<Elem> {
        let q = self.q();
        let g = self.subfield_generator();
        let mut out = Vec::with_capacity(q as usize);
        out.push(Elem::ZERO);
        let mut x = Elem::ONE;
        for _ in 0..q - 1 {
            out.push(x);
            x = self.mul(x, g);
        }
        out.sort_unstable();
        out
    }

    /// Parses a lowercase or uppercase hex string (optional `0x`) into an element.
    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        self.elem(parse_hex_u64(s)?)
    }
}

fn check_degree(n: u32, max: u32) -> Result<()> {
    if n < 4 || n > max {
        return Err(Error::DegreeOutOfRange { n, max });
    }
    if !n.is_multiple_of(2) {
        return Err(Error::OddDegree(n));
    }
    Ok(())
}

/// Validates `(n, modulus)` as accepted by [`FieldCtx::with_modulus`]
/// without building any tables.
pub fn check_field_params(n: u32, modulus: u64) -> Result<()> {
    check_degree(n, max_degree())?;
    if poly_degree(modulus) != Some(n) || !is_irreducible(modulus) {
        return Err(Error::NotIrreducible { modulus, n });
    }
    Ok(())
}

/// Parses hex digits with an optional `0x` prefix.
pub fn parse_hex_u64(s: &str) -> Result<u64> {
    let t = s.trim();
    let digits = t
        .strip_prefix("0x")
        .or_else(|| t.strip_prefix("0X"))
        .unwrap_or(t);
    if digits.is_empty() || digits.len() > 16 || !digits.bytes().all(|b| b.is_ascii_hexdigit()) {
        return Err(Error::Parse(format!("invalid hex value {s:?}")));
    }
    u64::from_str_radix(digits, 16).map_err(|e| Error::Parse(format!("{s:?}: {e}")))
}

// GF(2)[x] helpers on u64 coefficient vectors. Only used while building
// tables, so they favour clarity over speed.

fn poly_degree(p: u64) -> Option<u32> {
    (p != 0).then(|| 63 - p.leading_zeros())
}

fn poly_rem(mut a: u64, b: u64) -> u64 {
    let db = poly_degree(b).expect("division by zero polynomial");
    while let Some(da) = poly_degree(a) {
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

fn poly_mul_mod(mut a: u64, mut b: u64, modulus: u64, n: u32) -> u64 {
    let mut acc = 0u64;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> n & 1 == 1 {
            a ^= modulus;
        }
    }
    acc
}

fn poly_pow_mod(base: u64, mut e: u64, modulus: u64, n: u32) -> u64 {
    let mut acc = 1u64;
    let mut b = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(acc, b, modulus, n);
        }
        b = poly_mul_mod(b, b, modulus, n);
        e >>= 1;
    }
    acc
}

/// Trial division by every polynomial of degree `1..=deg/2`.
pub(crate) fn is_irreducible(p: u64) -> bool {
    let Some(d) = poly_degree(p) else {
        return false;
    };
    if d == 0 {
        return false;
    }
    (2u64..(1u64 << (d / 2 + 1))).all(|div| poly_rem(p, div) != 0)
}

fn smallest_irreducible(n: u32) -> u64 {
    ((1u64 << n) + 1..(1u64 << (n + 1)))
        .step_by(2)
        .find(|&p| is_irreducible(p))
        .expect("an irreducible polynomial exists in every degree")
}

fn prime_factors(mut x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= x {
        if x.is_multiple_of(p) {
            out.push(p);
            while x.is_multiple_of(p) {
                x /= p;
            }
        }
        p += 1;
    }
    if x > 1 {
        out.push(x);
    }
    out
}
