//! Budaghyan-Carlet hexanomials `g_{C,k}` and their admissible coefficients.
//!
//! `g_{C,k}` is differentially `2^gcd(k,m)`-uniform whenever
//! `P_{C,k}(X) = X^(2^k+1) + C X^(2^k) + C^q X + 1` has no root on the unit
//! circle `P_{q-1}`. Such `C` are called *good* here. They are found three
//! independent ways:
//!
//! * [`count_bruteforce`]: evaluate `P_{C,k}` on all of `P_{q-1}` for every `C`;
//! * [`enumerate_good_c`]: write `C^q + 1 = b h` (trace decomposition) and
//!   emit exactly the `b` that avoid an affine image of `Im(Γ_k)`;
//! * [`count_formula`]: the closed form `N_{m,k}`.

use std::sync::Arc;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decomposition::{check_k, decompose_trace, gcd_pow2, pq1_set, t1_set, ElemSet, Sign};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::vbf::Vbf;

/// `P_{C,k}(X)`.
pub fn p_eval(ctx: &FieldCtx, k: u32, c: Elem, x: Elem) -> Elem {
    let x2k = ctx.frob(x, k);
    ctx.mul(x2k, x) + ctx.mul(c, x2k) + ctx.mul(ctx.frob(c, ctx.m()), x) + Elem::ONE
}

/// Brute-force root test of `P_{C,k}` over the `q + 1` points of `P_{q-1}`.
pub fn has_root_in_pq1(ctx: &FieldCtx, k: u32, c: Elem) -> bool {
    RootOracle::new(ctx, k).has_root(c)
}

/// Precomputed `(u^(2^k), u^(2^k+1))` over `P_{q-1}` for repeated root tests.
struct RootOracle<'a> {
    ctx: &'a FieldCtx,
    points: Vec<(Elem, Elem, Elem)>,
}

impl<'a> RootOracle<'a> {
    fn new(ctx: &'a FieldCtx, k: u32) -> Self {
        let points = pq1_set(ctx)
            .iter()
            .map(|u| {
                let u2k = ctx.frob(u, k);
                (u, u2k, ctx.mul(u2k, u))
            })
            .collect();
        RootOracle { ctx, points }
    }

    fn has_root(&self, c: Elem) -> bool {
        let cq = self.ctx.frob(c, self.ctx.m());
        self.points
            .iter()
            .any(|&(u, u2k, u2k1)| u2k1 + self.ctx.mul(c, u2k) + self.ctx.mul(cq, u) == Elem::ONE)
    }
}

/// `Im(Γ_k)` for `Γ_k(x) = x^(2^k+1) + x` on `K`.
pub fn gamma_image(ctx: &FieldCtx, k: u32) -> ElemSet {
    let e = (1u64 << (k % ctx.n())) + 1;
    let image = ctx
        .subfield_elements()
        .into_iter()
        .map(|x| if x.is_zero() { x } else { ctx.powu(x, e) + x })
        .collect();
    ElemSet::from_unsorted(image)
}

/// `#Im(Γ_k)` from the two-branch closed form, `d = gcd(k, m)`.
pub fn gamma_image_size(m: u32, k: u32) -> u64 {
    let d = k.gcd(&m);
    let q = 1u64 << m;
    let num = if (m / d) % 2 == 1 { q + 1 } else { q - 1 } * (1u64 << (d - 1));
    let den = (1u64 << d) + 1;
    debug_assert_eq!(num % den, 0);
    q - num / den
}

/// `N_{m,k}`, the number of good `C` in `GF(2^2m)`, for `1 <= k < 2m`.
pub fn count_formula(m: u32, k: u32) -> u64 {
    assert!(
        m >= 1 && k >= 1 && k < 2 * m,
        "count_formula needs 1 <= k < 2m"
    );
    let q = 1i128 << m;
    let g_plus = gcd_pow2(Sign::Plus, k, Sign::Plus, m) as i128;
    let g_minus = gcd_pow2(Sign::Minus, k, Sign::Plus, m) as i128;
    let image = gamma_image_size(m, k) as i128;
    let n = (q - g_plus + 1) * (q - image - 1) + (q + 1) / g_minus - g_plus;
    u64::try_from(n).expect("N_{m,k} is non-negative")
}

/// `N_{m,k}` when `gcd(k, m) = 1`: `(q-2)(q+1)/3` for odd `m`, `q(q-1)/3` for even `m`.
pub fn count_formula_coprime(m: u32) -> u64 {
    let q = 1u64 << m;
    if m % 2 == 1 {
        (q - 2) * (q + 1) / 3
    } else {
        q * (q - 1) / 3
    }
}

/// Closed-form test for "`P_{C,k}` has no root in `P_{q-1}`".
///
/// Bad when `k = m`, when `C` is in `K` (then `X = 1` is a root), or when
/// `C^q + 1 = b h` has `h` in `Z_{k,1}`. Otherwise a root exists exactly when
/// `(B_h + 1/b) / A_h` lies in `Im(Γ_k)`, with `B_h = h^2 + h` and
/// `A_h = Tr(h^(2^k+1))^(2^(n-k)+1)`.
pub fn characterize_good_c(ctx: &FieldCtx, k: u32, c: Elem) -> Result<bool> {
    Characterizer::new(ctx, k)?.is_good(c)
}

/// [`characterize_good_c`] with `Im(Γ_k)` computed once.
pub struct Characterizer<'a> {
    ctx: &'a FieldCtx,
    k: u32,
    in_image: Vec<bool>,
}

impl<'a> Characterizer<'a> {
    pub fn new(ctx: &'a FieldCtx, k: u32) -> Result<Self> {
        check_k(ctx, k)?;
        let mut in_image = vec![false; ctx.size()];
        for y in gamma_image(ctx, k).iter() {
            in_image[y.index()] = true;
        }
        Ok(Characterizer { ctx, k, in_image })
    }

    pub fn is_good(&self, c: Elem) -> Result<bool> {
        let ctx = self.ctx;
        if self.k == ctx.m() || ctx.in_subfield(c) {
            return Ok(false);
        }
        let big_b = ctx.frob(c, ctx.m()) + Elem::ONE;
        let (b, h) = decompose_trace(ctx, big_b)?;
        if h == Elem::ONE {
            return Err(Error::Internal(format!(
                "C^q + 1 = {big_b} lies in K although C = {c} does not"
            )));
        }
        let Some((a_h, b_h)) = self.affine_coefficients(h)? else {
            return Ok(false);
        };
        let v = ctx.mul(b_h + ctx.inv_nz(b), ctx.inv_nz(a_h));
        Ok(!self.in_image[v.index()])
    }

    /// `(A_h, B_h)`, or `None` when `h` is in `Z_{k,1}` (then `A_h = 0`).
    fn affine_coefficients(&self, h: Elem) -> Result<Option<(Elem, Elem)>> {
        let ctx = self.ctx;
        let (n, k) = (ctx.n(), self.k);
        let t = ctx.frob(h, k) + h + Elem::ONE;
        if t.is_zero() {
            return Ok(None);
        }
        let a_h = ctx.powu(t, (1u64 << (n - k)) + 1);
        let a_h_long = ctx.powu(t, (1u64 << (n - k)) * ((1u64 << k) + 1));
        if a_h != a_h_long {
            return Err(Error::Internal(format!(
                "A_h exponent forms disagree at h = {h}"
            )));
        }
        Ok(Some((a_h, ctx.square(h) + h)))
    }
}

/// Work done by [`enumerate_good_c_counted`], in inner-loop field operations.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EnumStats {
    pub field_ops: u64,
}

/// All good `C`, sorted, built constructively in `O(q^2)` field operations.
pub fn enumerate_good_c(ctx: &FieldCtx, k: u32) -> Result<Vec<Elem>> {
    Ok(enumerate_good_c_counted(ctx, k)?.0)
}

pub fn enumerate_good_c_counted(ctx: &FieldCtx, k: u32) -> Result<(Vec<Elem>, EnumStats)> {
    let chr = Characterizer::new(ctx, k)?;
    let image = gamma_image(ctx, k);
    let subfield = ctx.subfield_elements();
    let mut ops = subfield.len() as u64;
    if k == ctx.m() {
        return Ok((Vec::new(), EnumStats { field_ops: ops }));
    }

    let t1 = t1_set(ctx);
    let per_h: Result<Vec<(Vec<Elem>, u64)>> = t1
        .as_slice()
        .par_iter()
        .map_init(
            || vec![false; ctx.size()],
            |forbidden, &h| {
                let Some((a_h, b_h)) = chr.affine_coefficients(h)? else {
                    return Ok((Vec::new(), 1));
                };
                let mut local_ops = 1u64;
                let mut marked = Vec::with_capacity(image.len() + 1);
                for gamma in image.iter() {
                    let v = ctx.mul(a_h, gamma) + b_h;
                    forbidden[v.index()] = true;
                    marked.push(v);
                    local_ops += 1;
                }
                let mut out = Vec::new();
                let h1 = h + Elem::ONE;
                for &binv in &subfield[1..] {
                    local_ops += 1;
                    if !forbidden[binv.index()] {
                        let b = ctx.inv_nz(binv);
                        out.push(ctx.mul(b, h1) + Elem::ONE);
                    }
                }
                for v in marked {
                    forbidden[v.index()] = false;
                }
                Ok((out, local_ops))
            },
        )
        .collect();

    let mut all = Vec::new();
    for (cs, o) in per_h? {
        all.extend(cs);
        ops += o;
    }
    all.sort_unstable();
    all.dedup();
    Ok((all, EnumStats { field_ops: ops }))
}

/// All good `C` by filtering every `C` in `F` through the root oracle.
pub fn bruteforce_good_c(ctx: &FieldCtx, k: u32) -> Result<Vec<Elem>> {
    check_k(ctx, k)?;
    let oracle = RootOracle::new(ctx, k);
    let mut good: Vec<Elem> = (0..ctx.size() as u32)
        .into_par_iter()
        .map(Elem::from_bits)
        .filter(|&c| !oracle.has_root(c))
        .collect();
    good.sort_unstable();
    Ok(good)
}

pub fn count_bruteforce(ctx: &FieldCtx, k: u32) -> Result<u64> {
    Ok(bruteforce_good_c(ctx, k)?.len() as u64)
}

/// The three independently computed values of `N_{m,k}` and the good `C` list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HexReport {
    pub m: u32,
    pub k: u32,
    #[serde(rename = "count_formula")]
    pub n_formula: u64,
    #[serde(rename = "count_enumerated")]
    pub n_enumerated: u64,
    #[serde(rename = "count_bruteforce")]
    pub n_bruteforce: u64,
    pub coefficients: Vec<Elem>,
}

impl HexReport {
    pub fn compute(ctx: &FieldCtx, k: u32) -> Result<Self> {
        let coefficients = enumerate_good_c(ctx, k)?;
        Ok(HexReport {
            m: ctx.m(),
            k,
            n_formula: count_formula(ctx.m(), k),
            n_enumerated: coefficients.len() as u64,
            n_bruteforce: count_bruteforce(ctx, k)?,
            coefficients,
        })
    }

    pub fn consistent(&self) -> bool {
        self.n_formula == self.n_enumerated
            && self.n_enumerated == self.n_bruteforce
            && self.coefficients.len() as u64 == self.n_enumerated
    }
}

#[derive(Debug, Clone)]
pub struct HexParams {
    pub ctx: Arc<FieldCtx>,
    pub k: u32,
    pub c: Elem,
    pub a: Elem,
}

impl HexParams {
    /// Parameters with the default `A` from [`default_a`].
    pub fn new(ctx: Arc<FieldCtx>, k: u32, c: Elem) -> Result<Self> {
        let a = default_a(&ctx);
        Self::with_a(ctx, k, c, a)
    }

    pub fn with_a(ctx: Arc<FieldCtx>, k: u32, c: Elem, a: Elem) -> Result<Self> {
        check_k(&ctx, k)?;
        ctx.elem(c.bits() as u64)?;
        ctx.elem(a.bits() as u64)?;
        if ctx.in_subfield(a) {
            return Err(Error::OutsideDomain {
                op: "build_g",
                elem: a,
                domain: "A outside the subfield K",
            });
        }
        Ok(HexParams { ctx, k, c, a })
    }
}

/// First power of the generator outside `K` (the generator itself, in practice).
pub fn default_a(ctx: &FieldCtx) -> Elem {
    (1..ctx.order())
        .map(|i| ctx.exp(i))
        .find(|&a| !ctx.in_subfield(a))
        .expect("K is a proper subfield")
}

/// `g_{C,k}(X) = X (X^(2^k) + X^q + C X^(2^k q)) + X^(2^k) (C^q X^q + A X^(2^k q)) + X^((2^k+1) q)`.
pub fn build_g(params: &HexParams) -> Result<Vbf> {
    let ctx = &params.ctx;
    let (k, m) = (params.k, ctx.m());
    let (c, a) = (params.c, params.a);
    let cq = ctx.frob(c, m);
    Ok(Vbf::from_fn(ctx.clone(), |x| {
        let x2k = ctx.frob(x, k);
        let xq = ctx.frob(x, m);
        let x2kq = ctx.frob(x2k, m);
        let first = ctx.mul(x, x2k + xq + ctx.mul(c, x2kq));
        let second = ctx.mul(x2k, ctx.mul(cq, xq) + ctx.mul(a, x2kq));
        let third = ctx.frob(ctx.mul(x2k, x), m);
        first + second + third
    }))
}

/// Lower-triangular `N_{m,k}` table: row `m` holds `k = 1..=m`.
pub fn table3(max_m: u32) -> Vec<Vec<u64>> {
    (1..=max_m)
        .map(|m| (1..=m).map(|k| count_formula(m, k)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_field;

    #[test]
    fn p_eval_basics() {
        let ctx = build_field(8).unwrap();
        for c in ctx.elements() {
            assert_eq!(p_eval(&ctx, 3, c, Elem::ZERO), Elem::ONE);
            assert_eq!(p_eval(&ctx, 3, c, Elem::ONE).is_zero(), ctx.in_subfield(c));
        }
    }

    #[test]
    fn p_eval_conjugation() {
        // on P_{q-1}: P(u)^q u^(2^k+1) = P(u)
        let ctx = build_field(8).unwrap();
        let k = 3;
        for c in ctx.elements().step_by(5) {
            for u in pq1_set(&ctx).iter() {
                let p = p_eval(&ctx, k, c, u);
                let lhs = ctx.mul(ctx.frob(p, ctx.m()), ctx.powu(u, (1 << k) + 1));
                assert_eq!(lhs, p);
            }
        }
    }

    #[test]
    fn subfield_c_has_root() {
        let ctx = build_field(6).unwrap();
        for c in ctx.subfield_elements() {
            assert!(has_root_in_pq1(&ctx, 1, c));
            assert!(!characterize_good_c(&ctx, 1, c).unwrap());
        }
    }

    #[test]
    fn k_equal_m_always_root() {
        let ctx = build_field(8).unwrap();
        for c in ctx.elements() {
            assert!(has_root_in_pq1(&ctx, 4, c));
            assert!(!characterize_good_c(&ctx, 4, c).unwrap());
        }
        assert!(enumerate_good_c(&ctx, 4).unwrap().is_empty());
    }

    #[test]
    fn m2_k1_has_four_good() {
        let ctx = build_field(4).unwrap();
        let bad = ctx
            .elements()
            .filter(|&c| has_root_in_pq1(&ctx, 1, c))
            .count();
        assert_eq!(bad, 12);
        assert_eq!(enumerate_good_c(&ctx, 1).unwrap().len(), 4);
    }

    #[test]
    fn gamma_sizes() {
        assert_eq!(gamma_image_size(5, 1), 21);
        assert_eq!(gamma_image_size(4, 2), 10);
        assert_eq!(gamma_image_size(2, 2), 2);
        let ctx = build_field(10).unwrap();
        assert_eq!(gamma_image(&ctx, 1).len(), 21);
        let ctx = build_field(8).unwrap();
        assert_eq!(gamma_image(&ctx, 2).len(), 10);
        let ctx = build_field(4).unwrap();
        assert_eq!(gamma_image(&ctx, 2).len(), 2);
    }

    #[test]
    fn formula_examples() {
        assert_eq!(count_formula(4, 1), 80);
        assert_eq!(count_formula(3, 2), 18);
        assert_eq!(count_formula(6, 3), 1792);
        assert_eq!(count_formula(4, 2), 96);
        assert_eq!(count_formula(5, 3), 330);
        for m in 1..=7 {
            assert_eq!(count_formula(m, m), 0);
        }
    }

    #[test]
    fn coprime_special_forms() {
        for m in 1..=12u32 {
            for k in (1..2 * m).filter(|k| k.gcd(&m) == 1) {
                assert_eq!(count_formula(m, k), count_formula_coprime(m), "m={m} k={k}");
            }
        }
    }

    #[test]
    fn table3_rows() {
        let t = table3(7);
        assert_eq!(t[1], vec![4, 0]);
        assert_eq!(t[5], vec![1344, 1560, 1792, 1612, 1344, 0]);
    }

    #[test]
    fn characterization_matches_oracle_small() {
        let ctx = build_field(6).unwrap();
        for k in 1..6 {
            let chr = Characterizer::new(&ctx, k).unwrap();
            for c in ctx.elements() {
                assert_eq!(
                    chr.is_good(c).unwrap(),
                    !has_root_in_pq1(&ctx, k, c),
                    "k={k} c={c}"
                );
            }
        }
    }

    #[test]
    fn enumeration_is_quadratic() {
        for n in [4u32, 6, 8, 10, 12] {
            let ctx = build_field(n).unwrap();
            let q = ctx.q();
            for k in 1..n {
                let (_, stats) = enumerate_good_c_counted(&ctx, k).unwrap();
                assert!(
                    stats.field_ops <= 3 * q * q,
                    "n={n} k={k} ops={}",
                    stats.field_ops
                );
            }
        }
    }

    #[test]
    fn default_a_outside_subfield() {
        let ctx = build_field(8).unwrap();
        let a = default_a(&ctx);
        assert!(!ctx.in_subfield(a));
        assert_eq!(a, ctx.generator());
    }

    #[test]
    fn build_g_rejects_subfield_a() {
        let ctx = Arc::new(build_field(4).unwrap());
        assert!(HexParams::with_a(ctx.clone(), 1, Elem::from_bits(2), Elem::ONE).is_err());
    }

    #[test]
    fn good_c_gives_apn_m2() {
        let ctx = Arc::new(build_field(4).unwrap());
        for c in enumerate_good_c(&ctx, 1).unwrap() {
            let g = build_g(&HexParams::new(ctx.clone(), 1, c).unwrap()).unwrap();
            assert_eq!(g.differential_uniformity(), 2);
        }
    }
}
