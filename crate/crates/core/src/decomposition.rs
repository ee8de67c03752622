//! Trace-0/Trace-1 and polar decompositions of `F*`.
//!
//! Every nonzero `X` is uniquely `x * g` with `x` in `K*` and `g` in
//! `T1 ∪ {1}` (trace decomposition), and also `x * u` with `u` on the unit
//! circle `P_{q-1}` (polar decomposition). `phi` and `psi` move between `T1`
//! and `P_{q-1} \ {1}`.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};

/// Elements sorted ascending by integer encoding, duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ElemSet {
    elements: Vec<Elem>,
}

impl ElemSet {
    pub fn from_unsorted(mut elements: Vec<Elem>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        ElemSet { elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elements.iter().copied()
    }

    pub fn as_slice(&self) -> &[Elem] {
        &self.elements
    }

    pub fn into_vec(self) -> Vec<Elem> {
        self.elements
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.iter().all(|x| other.contains(x))
    }
}

impl<'a> IntoIterator for &'a ElemSet {
    type Item = Elem;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, Elem>>;
    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter().copied()
    }
}

/// `T1 = {X : Tr(X) = 1}`, of size `q`.
pub type T1Set = ElemSet;
/// `P_{q-1} = {X^(q-1)}`, the cyclic group of order `q + 1`.
pub type Pq1Set = ElemSet;

/// `Z_{k,eps} = {g in T1 : g^(2^k) + g = eps}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZSet {
    pub k: u32,
    pub eps: bool,
    pub set: ElemSet,
}

pub(crate) fn check_k(ctx: &FieldCtx, k: u32) -> Result<()> {
    if k == 0 || k >= ctx.n() {
        return Err(Error::KOutOfRange { k, n: ctx.n() });
    }
    Ok(())
}

#[inline]
pub fn in_t1(ctx: &FieldCtx, x: Elem) -> bool {
    ctx.trace_rel(x) == Elem::ONE
}

#[inline]
pub fn in_pq1(ctx: &FieldCtx, x: Elem) -> bool {
    !x.is_zero() && ctx.powu(x, ctx.q() + 1) == Elem::ONE
}

pub fn t1_set(ctx: &FieldCtx) -> T1Set {
    // T1 is a coset of K: any fixed g0 in T1 plus every x in K.
    let g0 = psi_unchecked(ctx, ctx.generator());
    let elems = ctx
        .subfield_elements()
        .into_iter()
        .map(|x| g0 + x)
        .collect();
    ElemSet::from_unsorted(elems)
}

pub fn pq1_set(ctx: &FieldCtx) -> Pq1Set {
    let w = ctx.exp(ctx.q() - 1);
    let mut out = Vec::with_capacity(ctx.q() as usize + 1);
    let mut u = Elem::ONE;
    for _ in 0..=ctx.q() {
        out.push(u);
        u = ctx.mul(u, w);
    }
    ElemSet::from_unsorted(out)
}

/// `phi(X) = X^(q-1)`.
pub fn phi(ctx: &FieldCtx, x: Elem) -> Result<Elem> {
    if x.is_zero() {
        return Err(Error::ZeroArgument { op: "phi" });
    }
    Ok(ctx.powu(x, ctx.q() - 1))
}

/// `psi(X) = X / Tr(X)`.
pub fn psi(ctx: &FieldCtx, x: Elem) -> Result<Elem> {
    if ctx.trace_rel(x).is_zero() {
        return Err(Error::OutsideDomain {
            op: "psi",
            elem: x,
            domain: "Tr(X) != 0",
        });
    }
    Ok(psi_unchecked(ctx, x))
}

#[inline]
fn psi_unchecked(ctx: &FieldCtx, x: Elem) -> Elem {
    ctx.mul(x, ctx.inv_nz(ctx.trace_rel(x)))
}

/// `phi^{-1}(u) = (u / Tr(u))^(q/2)` on `P_{q-1} \ {1}`.
pub fn phi_inv(ctx: &FieldCtx, u: Elem) -> Result<Elem> {
    if u == Elem::ONE || !in_pq1(ctx, u) {
        return Err(Error::OutsideDomain {
            op: "phi_inv",
            elem: u,
            domain: "P_{q-1} \\ {1}",
        });
    }
    Ok(ctx.frob(psi_unchecked(ctx, u), ctx.m() - 1))
}

/// `psi^{-1}(g) = g^((q-1) q / 2)` on `T1`.
pub fn psi_inv(ctx: &FieldCtx, g: Elem) -> Result<Elem> {
    if !in_t1(ctx, g) {
        return Err(Error::OutsideDomain {
            op: "psi_inv",
            elem: g,
            domain: "T1",
        });
    }
    Ok(ctx.powu(g, (ctx.q() - 1) * (ctx.q() / 2)))
}

/// `X = x * g` with `x` in `K*`, `g` in `T1 ∪ {1}`.
pub fn decompose_trace(ctx: &FieldCtx, x: Elem) -> Result<(Elem, Elem)> {
    if x.is_zero() {
        return Err(Error::ZeroArgument {
            op: "decompose_trace",
        });
    }
    let t = ctx.trace_rel(x);
    if t.is_zero() {
        Ok((x, Elem::ONE))
    } else {
        Ok((t, ctx.mul(x, ctx.inv_nz(t))))
    }
}

/// `X = x * u` with `u` in `P_{q-1}` and `x` the square root in `K` of the
/// norm `X^(q+1)`.
pub fn decompose_polar(ctx: &FieldCtx, x: Elem) -> Result<(Elem, Elem)> {
    if x.is_zero() {
        return Err(Error::ZeroArgument {
            op: "decompose_polar",
        });
    }
    let norm = ctx.powu(x, ctx.q() + 1);
    let r = ctx.frob(norm, ctx.m() - 1);
    Ok((r, ctx.mul(x, ctx.inv_nz(r))))
}

pub fn z_set(ctx: &FieldCtx, k: u32, eps: bool) -> Result<ZSet> {
    check_k(ctx, k)?;
    let target = if eps { Elem::ONE } else { Elem::ZERO };
    let elems = t1_set(ctx)
        .iter()
        .filter(|&g| ctx.frob(g, k) + g == target)
        .collect();
    Ok(ZSet {
        k,
        eps,
        set: ElemSet::from_unsorted(elems),
    })
}

/// `C_{k,0} = {(g^(2^k+1) + g) / (g^(2^k) + g) : g in T1 \ Z_{k,0}}`.
pub fn c0_set(ctx: &FieldCtx, k: u32) -> Result<ElemSet> {
    check_k(ctx, k)?;
    let elems = t1_set(ctx)
        .iter()
        .filter_map(|g| {
            let g2k = ctx.frob(g, k);
            let den = g2k + g;
            (!den.is_zero()).then(|| ctx.mul(ctx.mul(g2k, g) + g, ctx.inv_nz(den)))
        })
        .collect();
    Ok(ElemSet::from_unsorted(elems))
}

/// `D_{k,1} = {(g^(2^k+1) + 1) / (g^(2^k) + g + 1) : g in T1 \ Z_{k,1}}`.
pub fn d1_set(ctx: &FieldCtx, k: u32) -> Result<ElemSet> {
    check_k(ctx, k)?;
    let elems = t1_set(ctx)
        .iter()
        .filter_map(|g| {
            let g2k = ctx.frob(g, k);
            let den = g2k + g + Elem::ONE;
            (!den.is_zero()).then(|| ctx.mul(ctx.mul(g2k, g) + Elem::ONE, ctx.inv_nz(den)))
        })
        .collect();
    Ok(ElemSet::from_unsorted(elems))
}

/// Largest `e` with `2^e | k`.
pub fn two_adic_val(k: u64) -> u32 {
    assert!(k > 0, "2-adic valuation of zero");
    k.trailing_zeros()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// `gcd(2^d ± 1, 2^e ± 1)` from closed-form quotients of Mersenne-type numbers.
///
/// Valid for `1 <= d, e <= 63`.
pub fn gcd_pow2(sign_d: Sign, d: u32, sign_e: Sign, e: u32) -> u128 {
    assert!((1..=63).contains(&d) && (1..=63).contains(&e));
    let mersenne = |x: u32| (1u128 << x) - 1;
    match (sign_d, sign_e) {
        (Sign::Minus, Sign::Minus) => mersenne(d.gcd(&e)),
        (Sign::Minus, Sign::Plus) => mersenne((2 * e).gcd(&d)) / mersenne(e.gcd(&d)),
        (Sign::Plus, Sign::Minus) => gcd_pow2(Sign::Minus, e, Sign::Plus, d),
        (Sign::Plus, Sign::Plus) => {
            mersenne(e.gcd(&d)) * mersenne((2 * e).gcd(&(2 * d)))
                / (mersenne((2 * e).gcd(&d)) * mersenne(e.gcd(&(2 * d))))
        }
    }
}
