//! The trinomials `f_k(X) = X^(2^k+1) + Tr(X)^(2^k+1)` on `GF(2^2m)`.
//!
//! `f_k` is APN exactly when `m` is even and `gcd(k, 2m) = 1`. In that case
//! every derivative image is a hyperplane `H_beta`, and `beta` has a closed
//! form in terms of the trace decomposition `A = a g` of the direction.

use std::sync::Arc;

use num_integer::Integer;

use crate::decomposition::{check_k, decompose_trace, ElemSet};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::vbf::{HyperplaneSpectrum, Vbf};

#[derive(Debug, Clone)]
pub struct TrinomialParams {
    pub ctx: Arc<FieldCtx>,
    pub k: u32,
}

impl TrinomialParams {
    pub fn new(ctx: Arc<FieldCtx>, k: u32) -> Result<Self> {
        check_k(&ctx, k)?;
        Ok(TrinomialParams { ctx, k })
    }

    pub fn m(&self) -> u32 {
        self.ctx.m()
    }

    pub fn is_apn_predicted(&self) -> bool {
        is_apn_predicted(self.m(), self.k)
    }
}

/// `m` even and `gcd(k, 2m) = 1`.
pub fn is_apn_predicted(m: u32, k: u32) -> bool {
    m.is_multiple_of(2) && k.gcd(&(2 * m)) == 1
}

/// `f_k(X)` from its defining form.
#[inline]
pub fn eval_direct(ctx: &FieldCtx, k: u32, x: Elem) -> Elem {
    let e = (1u64 << k) + 1;
    let t = ctx.trace_rel(x);
    let tp = if t.is_zero() { t } else { ctx.powu(t, e) };
    let xp = if x.is_zero() { x } else { ctx.powu(x, e) };
    xp + tp
}

/// `f_k(X) = X^((2^k+1) q) + X^(2^k q + 1) + X^(2^k + q)`.
#[inline]
pub fn eval_expanded(ctx: &FieldCtx, k: u32, x: Elem) -> Elem {
    if x.is_zero() {
        return x;
    }
    let q = ctx.q();
    let tk = 1u64 << k;
    ctx.powu(x, (tk + 1) * q) + ctx.powu(x, tk * q + 1) + ctx.powu(x, tk + q)
}

/// Lookup table of `f_k`; the direct and expanded forms are both evaluated
/// and must agree everywhere.
pub fn build_f(params: &TrinomialParams) -> Result<Vbf> {
    let ctx = &params.ctx;
    let k = params.k;
    let mut lut = Vec::with_capacity(ctx.size());
    for x in ctx.elements() {
        let direct = eval_direct(ctx, k, x);
        if direct != eval_expanded(ctx, k, x) {
            return Err(Error::Internal(format!(
                "direct and expanded trinomial forms disagree at {x}"
            )));
        }
        lut.push(direct);
    }
    Vbf::new(ctx.clone(), lut)
}

/// Closed-form hyperplane label `beta_A` with `Image(D_A f_k) = H_beta_A`.
///
/// With `A = a g` (`a` in `K*`, `g` in `T1 ∪ {1}`): if `g = 1` the label is
/// `a^-(2^k+1)`; otherwise, with `S = Tr(g^3)` and `T = Tr(g^(2^k+1))`,
/// `beta_A = a^-(2^k+1) * T / S^(2^k+1) * (g + 1 + S/T)`.
pub fn beta_closed_form(params: &TrinomialParams, a_dir: Elem) -> Result<Elem> {
    if !params.is_apn_predicted() {
        return Err(Error::NonApnParameters {
            m: params.m(),
            k: params.k,
        });
    }
    let ctx = &params.ctx;
    let e = (1u64 << params.k) + 1;
    let (a, g) = decompose_trace(ctx, a_dir)?;
    let scale = ctx.inv_nz(ctx.powu(a, e));
    if g == Elem::ONE {
        return Ok(scale);
    }
    let s = ctx.trace_rel(ctx.powu(g, 3));
    let t = ctx.trace_rel(ctx.powu(g, e));
    if s.is_zero() || t.is_zero() {
        return Err(Error::Internal(format!(
            "Tr(g^3) or Tr(g^(2^k+1)) vanishes at g = {g} for APN parameters"
        )));
    }
    let lead = ctx.mul(t, ctx.inv_nz(ctx.powu(s, e)));
    let tail = g + Elem::ONE + ctx.mul(s, ctx.inv_nz(t));
    Ok(ctx.mul(scale, ctx.mul(lead, tail)))
}

/// First direction `A` whose extracted label differs from [`beta_closed_form`].
pub fn closed_form_mismatch(params: &TrinomialParams, f: &Vbf) -> Result<Option<Elem>> {
    let betas = f.hyperplane_betas()?;
    for (i, beta) in betas.into_iter().enumerate() {
        let a = Elem::from_bits(i as u32 + 1);
        if beta_closed_form(params, a)? != beta {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// `F*` minus the hyperplane labels: `Tr(A f)` has a linear structure
/// exactly when `A` is some `beta_X`.
pub fn bent_from_hyperplanes(ctx: &FieldCtx, labels: &HyperplaneSpectrum) -> ElemSet {
    ElemSet::from_unsorted(ctx.nonzero().filter(|&x| labels.get(x) == 0).collect())
}

/// `F*` minus the inverses of the hyperplane labels. Differs from the bent
/// set of `f_k` (the label set is not closed under inversion); kept so the
/// discrepancy can be reported.
pub fn inverse_label_complement(ctx: &FieldCtx, labels: &HyperplaneSpectrum) -> ElemSet {
    ElemSet::from_unsorted(
        ctx.nonzero()
            .filter(|&x| labels.get(ctx.inv_nz(x)) == 0)
            .collect(),
    )
}

/// `2 (q^2 - 1) / 3` bent components.
pub fn predicted_bent_count(m: u32) -> u64 {
    2 * ((1u64 << (2 * m)) - 1) / 3
}

/// `{0, ±2^m, ±2^(m+1)}`, ascending.
pub fn predicted_walsh_values(m: u32) -> Vec<i64> {
    let a = 1i64 << m;
    vec![-2 * a, -a, 0, a, 2 * a]
}
