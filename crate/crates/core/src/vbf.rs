//! Vectorial Boolean functions `F -> F` given as lookup tables.
//!
//! Everything here is exhaustive: differential uniformity walks every
//! `(A, X)` pair, Walsh spectra run one fast transform per component, and
//! hyperplane labels are read off the actual image of each derivative.
//! Sweeps over the direction `A` are split across the rayon pool and merged
//! with commutative multiset unions, so results do not depend on the number
//! of workers.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::decomposition::ElemSet;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::linalg;

/// A multiset `value -> multiplicity`, iterated in ascending value order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum<T: Ord> {
    counts: BTreeMap<T, u64>,
}

impl<T: Ord> Default for Spectrum<T> {
    fn default() -> Self {
        Spectrum {
            counts: BTreeMap::new(),
        }
    }
}

impl<T: Ord + Copy> Spectrum<T> {
    pub fn insert(&mut self, value: T, times: u64) {
        if times > 0 {
            *self.counts.entry(value).or_insert(0) += times;
        }
    }

    pub fn merge(mut self, other: Spectrum<T>) -> Self {
        for (v, c) in other.counts {
            self.insert(v, c);
        }
        self
    }

    pub fn get(&self, value: T) -> u64 {
        self.counts.get(&value).copied().unwrap_or(0)
    }

    /// Sum of multiplicities.
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Number of distinct values.
    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    pub fn values(&self) -> impl Iterator<Item = T> + '_ {
        self.counts.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (T, u64)> + '_ {
        self.counts.iter().map(|(v, c)| (*v, *c))
    }
}

impl<T: Ord + Copy> FromIterator<T> for Spectrum<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut s = Spectrum::default();
        for v in iter {
            s.insert(v, 1);
        }
        s
    }
}

/// Walsh values over all `(A, B)` with `A != 0`.
pub type WalshSpectrum = Spectrum<i64>;
/// Hyperplane labels `beta` over all derivative directions `A != 0`.
pub type HyperplaneSpectrum = Spectrum<Elem>;

/// A function `F -> F` as a table of `2^n` outputs, indexed by input encoding.
#[derive(Clone)]
pub struct Vbf {
    ctx: Arc<FieldCtx>,
    lut: Vec<Elem>,
}

impl std::fmt::Debug for Vbf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Vbf")
            .field("ctx", &self.ctx)
            .field("len", &self.lut.len())
            .finish()
    }
}

impl PartialEq for Vbf {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.n() == other.ctx.n()
            && self.ctx.modulus() == other.ctx.modulus()
            && self.lut == other.lut
    }
}

impl Vbf {
    pub fn new(ctx: Arc<FieldCtx>, lut: Vec<Elem>) -> Result<Self> {
        if lut.len() != ctx.size() {
            return Err(Error::LutLength {
                expected: ctx.size(),
                got: lut.len(),
            });
        }
        if let Some(bad) = lut.iter().find(|e| e.bits() as usize >= ctx.size()) {
            return Err(Error::ElementOutOfRange {
                value: bad.bits() as u64,
                n: ctx.n(),
            });
        }
        Ok(Vbf { ctx, lut })
    }

    pub fn from_fn(ctx: Arc<FieldCtx>, f: impl Fn(Elem) -> Elem) -> Self {
        let lut = ctx.elements().map(f).collect();
        Vbf { ctx, lut }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn lut(&self) -> &[Elem] {
        &self.lut
    }

    #[inline]
    pub fn eval(&self, x: Elem) -> Elem {
        self.lut[x.index()]
    }

    /// `D_A f(X) = f(X) + f(X + A) + f(A) + f(0)`.
    pub fn derivative(&self, a: Elem) -> Result<Vbf> {
        if a.is_zero() {
            return Err(Error::ZeroArgument { op: "derivative" });
        }
        let c = self.eval(a) + self.eval(Elem::ZERO);
        Ok(Vbf::from_fn(self.ctx.clone(), |x| {
            self.eval(x) + self.eval(x + a) + c
        }))
    }

    /// Row `A` of the difference distribution table: `#{X : f(X) + f(X+A) = B}`.
    pub fn ddt_row(&self, a: Elem) -> Vec<u32> {
        let mut row = vec![0u32; self.ctx.size()];
        for x in 0..self.lut.len() {
            row[(self.lut[x] + self.lut[x ^ a.index()]).index()] += 1;
        }
        row
    }

    fn row_max(&self, a: usize, counts: &mut [u32]) -> u32 {
        let mut best = 0;
        for x in 0..self.lut.len() {
            let b = (self.lut[x] + self.lut[x ^ a]).index();
            counts[b] += 1;
            best = best.max(counts[b]);
        }
        for x in 0..self.lut.len() {
            counts[(self.lut[x] + self.lut[x ^ a]).index()] = 0;
        }
        best
    }

    /// `delta_f`, streaming one DDT row at a time.
    pub fn differential_uniformity(&self) -> u32 {
        let size = self.ctx.size();
        (1..size)
            .into_par_iter()
            .map_init(|| vec![0u32; size], |counts, a| self.row_max(a, counts))
            .max()
            .unwrap_or(0)
    }

    pub fn is_apn(&self) -> bool {
        let size = self.ctx.size();
        (1..size)
            .into_par_iter()
            .map_init(|| vec![0u32; size], |counts, a| self.row_max(a, counts))
            .all(|r| r <= 2)
    }

    /// Direct character sum `sum_X (-1)^Tr(A f(X) + B X)`.
    pub fn walsh_at(&self, a: Elem, b: Elem) -> i64 {
        let ctx = &self.ctx;
        ctx.elements()
            .map(|x| {
                let t = ctx.abs_trace(ctx.mul(a, self.eval(x)) + ctx.mul(b, x));
                1 - 2 * t as i64
            })
            .sum()
    }

    /// Walsh transform of the component `Tr(A f)`, indexed by the linear mask
    /// `w` of `X -> parity(w & X)` rather than by `B`.
    fn component_transform(&self, a: Elem, lin: &[u32]) -> Vec<i32> {
        let mask = trace_form_mask(lin, a);
        let mut buf: Vec<i32> = self
            .lut
            .iter()
            .map(|y| 1 - 2 * ((y.bits() & mask).count_ones() & 1) as i32)
            .collect();
        fwht(&mut buf);
        buf
    }

    /// All values `f^(A, B)` for fixed `A`, indexed by `B`.
    pub fn walsh_row(&self, a: Elem) -> Vec<i64> {
        let lin = trace_form_columns(&self.ctx);
        let w = self.component_transform(a, &lin);
        self.ctx
            .elements()
            .map(|b| w[trace_form_mask(&lin, b) as usize] as i64)
            .collect()
    }

    /// Multiset of `f^(A, B)` over `A != 0` and all `B`.
    pub fn walsh_spectrum(&self) -> WalshSpectrum {
        let lin = trace_form_columns(&self.ctx);
        (1..self.ctx.size() as u32)
            .into_par_iter()
            .fold(WalshSpectrum::default, |mut acc, a| {
                let w = self.component_transform(Elem::from_bits(a), &lin);
                let mut local: BTreeMap<i32, u64> = BTreeMap::new();
                for v in w {
                    *local.entry(v).or_insert(0) += 1;
                }
                for (v, c) in local {
                    acc.insert(v as i64, c);
                }
                acc
            })
            .reduce(WalshSpectrum::default, Spectrum::merge)
    }

    /// The unique `beta != 0` with `Image(D_A f) = H_beta`.
    pub fn hyperplane_beta(&self, a: Elem) -> Result<Elem> {
        let lin = trace_form_columns(&self.ctx);
        let mut counts = vec![0u8; self.ctx.size()];
        self.beta_with(a, &lin, &mut counts)
    }

    fn beta_with(&self, a: Elem, lin: &[u32], counts: &mut [u8]) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::ZeroArgument {
                op: "hyperplane_beta",
            });
        }
        let not_crooked = Error::NotCrooked { direction: a };
        let n = self.ctx.n();
        let c = self.eval(a) + self.eval(Elem::ZERO);
        counts.fill(0);
        let mut image = Vec::with_capacity(self.ctx.size() / 2);
        for x in 0..self.lut.len() {
            let y = (self.lut[x] + self.lut[x ^ a.index()] + c).index();
            counts[y] = counts[y].saturating_add(1);
            if counts[y] == 1 {
                image.push(y as u32);
            }
        }
        if image.len() != self.ctx.size() / 2 || image.iter().any(|&y| counts[y as usize] != 2) {
            return Err(not_crooked);
        }
        let basis = linalg::span_basis(image.iter().copied());
        if basis.len() as u32 != n - 1 {
            return Err(not_crooked);
        }
        let ann = linalg::annihilator(&basis, n);
        let [w] = ann.as_slice() else {
            return Err(not_crooked);
        };
        let beta = linalg::solve(lin, *w)
            .ok_or_else(|| Error::Internal("trace form is degenerate".into()))?;
        Ok(Elem::from_bits(beta))
    }

    /// `beta_A` for `A = 1, 2, ..., 2^n - 1`, in that order.
    pub fn hyperplane_betas(&self) -> Result<Vec<Elem>> {
        let lin = trace_form_columns(&self.ctx);
        let size = self.ctx.size();
        (1..size as u32)
            .into_par_iter()
            .map_init(
                || vec![0u8; size],
                |counts, a| self.beta_with(Elem::from_bits(a), &lin, counts),
            )
            .collect()
    }

    /// Hyperplane labels over every direction; fails if any derivative is not
    /// a 2-to-1 map onto a hyperplane.
    pub fn hyperplane_spectrum(&self) -> Result<HyperplaneSpectrum> {
        Ok(self.hyperplane_betas()?.into_iter().collect())
    }

    /// All `A != 0` with `Tr(A f(X))` bent.
    pub fn bent_components(&self) -> ElemSet {
        let n = self.ctx.n();
        if n % 2 == 1 {
            return ElemSet::default();
        }
        let lin = trace_form_columns(&self.ctx);
        let level = 1i32 << (n / 2);
        let bent: Vec<Elem> = (1..self.ctx.size() as u32)
            .into_par_iter()
            .map(Elem::from_bits)
            .filter(|&a| {
                self.component_transform(a, &lin)
                    .iter()
                    .all(|v| v.abs() == level)
            })
            .collect();
        ElemSet::from_unsorted(bent)
    }

    /// `f(aX) = a^(2^k+1) f(X)` for every `a` in `K` and `X` in `F`.
    pub fn subspace_property(&self, k: u32) -> bool {
        let ctx = &self.ctx;
        if !ctx.has_half_subfield() {
            return false;
        }
        let e = (1u64 << (k % ctx.n())) + 1;
        ctx.subfield_elements().into_par_iter().all(|a| {
            let scale = if a.is_zero() {
                Elem::ZERO
            } else {
                ctx.powu(a, e)
            };
            ctx.elements()
                .all(|x| self.eval(ctx.mul(a, x)) == ctx.mul(scale, self.eval(x)))
        })
    }
}

/// Columns of the GF(2)-linear map `B -> mask(B)`, where bit `i` of `mask(B)`
/// is `Tr(B x^i)`. Then `Tr(B Y) = parity(mask(B) & Y)`.
pub fn trace_form_columns(ctx: &FieldCtx) -> Vec<u32> {
    (0..ctx.n())
        .map(|j| {
            let bj = Elem::from_bits(1 << j);
            (0..ctx.n()).fold(0u32, |acc, i| {
                acc | ctx.abs_trace(ctx.mul(bj, Elem::from_bits(1 << i))) << i
            })
        })
        .collect()
}

#[inline]
fn trace_form_mask(columns: &[u32], b: Elem) -> u32 {
    let mut acc = 0;
    let mut bits = b.bits();
    while bits != 0 {
        acc ^= columns[bits.trailing_zeros() as usize];
        bits &= bits - 1;
    }
    acc
}

/// In-place unnormalised Walsh-Hadamard transform.
pub fn fwht(buf: &mut [i32]) {
    let len = buf.len();
    debug_assert!(len.is_power_of_two());
    let mut h = 1;
    while h < len {
        for chunk in buf.chunks_exact_mut(2 * h) {
            let (lo, hi) = chunk.split_at_mut(h);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let (a, b) = (*x, *y);
                *x = a + b;
                *y = a - b;
            }
        }
        h *= 2;
    }
}

/// Gold monomial `X^(2^k + 1)`.
pub fn gold(ctx: Arc<FieldCtx>, k: u32) -> Result<Vbf> {
    if k == 0 || k >= ctx.n() {
        return Err(Error::KOutOfRange { k, n: ctx.n() });
    }
    let e = (1u64 << k) + 1;
    let c = ctx.clone();
    Ok(Vbf::from_fn(ctx, |x| c.powu(x, e)))
}

/// Kim function `X^3 + X^10 + A X^24` on `GF(2^6)`.
///
/// `A` is the smallest root of `x^6 + x^4 + x^3 + x + 1`. Only the six
/// primitive elements with this minimal polynomial make the function APN;
/// the other 30 generators give differential uniformity 4.
pub fn kim(ctx: Arc<FieldCtx>) -> Result<Vbf> {
    if ctx.n() != 6 {
        return Err(Error::WrongField {
            expected: 6,
            got: ctx.n(),
        });
    }
    let a = kim_coefficient(&ctx)?;
    let c = ctx.clone();
    Ok(Vbf::from_fn(ctx, |x| {
        c.powu(x, 3) + c.powu(x, 10) + c.mul(a, c.powu(x, 24))
    }))
}

/// The coefficient `A` used by [`kim`].
pub fn kim_coefficient(ctx: &FieldCtx) -> Result<Elem> {
    ctx.nonzero()
        .find(|&a| ctx.powu(a, 6) + ctx.powu(a, 4) + ctx.powu(a, 3) + a + Elem::ONE == Elem::ZERO)
        .ok_or(Error::WrongField {
            expected: 6,
            got: ctx.n(),
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_field;

    fn field(n: u32) -> Arc<FieldCtx> {
        Arc::new(build_field(n).unwrap())
    }

    fn odd_field(n: u32) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::any_degree(n).unwrap())
    }

    fn inverse(ctx: Arc<FieldCtx>) -> Vbf {
        let c = ctx.clone();
        Vbf::from_fn(ctx, move |x| c.inv_nz(x))
    }

    #[test]
    fn gold_derivative_form() {
        let ctx = field(8);
        let k = 3;
        let f = gold(ctx.clone(), k).unwrap();
        for a in [
            Elem::from_bits(1),
            Elem::from_bits(0x57),
            Elem::from_bits(0xf0),
        ] {
            let d = f.derivative(a).unwrap();
            for x in ctx.elements() {
                let expect = ctx.mul(ctx.frob(a, k), x) + ctx.mul(a, ctx.frob(x, k));
                assert_eq!(d.eval(x), expect);
            }
            assert_eq!(d.eval(Elem::ZERO), Elem::ZERO);
            assert_eq!(d.eval(a), Elem::ZERO);
        }
        assert!(f.derivative(Elem::ZERO).is_err());
    }

    #[test]
    fn lut_validation() {
        let ctx = field(4);
        assert!(matches!(
            Vbf::new(ctx.clone(), vec![Elem::ZERO; 15]),
            Err(Error::LutLength { .. })
        ));
        let mut lut = vec![Elem::ZERO; 16];
        lut[3] = Elem::from_bits(16);
        assert!(Vbf::new(ctx, lut).is_err());
    }

    #[test]
    fn ddt_rows_sum_and_parity() {
        let f = kim(field(6)).unwrap();
        for a in 1..64u32 {
            let row = f.ddt_row(Elem::from_bits(a));
            assert_eq!(row.iter().sum::<u32>(), 64);
            assert!(row.iter().all(|c| c % 2 == 0));
        }
    }

    #[test]
    fn gold_odd_degree_is_apn_with_almost_bent_spectrum() {
        let ctx = odd_field(5);
        let f = gold(ctx.clone(), 1).unwrap();
        assert_eq!(f.differential_uniformity(), 2);
        assert!(f.is_apn());
        let values: Vec<i64> = f.walsh_spectrum().values().collect();
        assert_eq!(values, vec![-8, 0, 8]);
        assert!(f.bent_components().is_empty());
        let h = f.hyperplane_spectrum().unwrap();
        assert_eq!(h.distinct(), 31);
        assert!(h.iter().all(|(_, c)| c == 1));
    }

    #[test]
    fn gold_apn_iff_coprime() {
        for n in [4u32, 6, 8] {
            let ctx = field(n);
            for k in 1..n {
                let f = gold(ctx.clone(), k).unwrap();
                assert_eq!(f.is_apn(), num_integer::gcd(k, n) == 1, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn gold_hyperplanes_are_cubes_times_three() {
        let ctx = field(8);
        let f = gold(ctx.clone(), 1).unwrap();
        let h = f.hyperplane_spectrum().unwrap();
        assert_eq!(h.total(), 255);
        assert!(h.iter().all(|(_, c)| c == 3));
        let cubes: ElemSet =
            ElemSet::from_unsorted(ctx.nonzero().map(|b| ctx.powu(b, 3)).collect());
        let labels: Vec<Elem> = h.values().collect();
        assert_eq!(labels.as_slice(), cubes.as_slice());
    }

    #[test]
    fn kim_needs_the_right_generator() {
        let ctx = field(6);
        let a = kim_coefficient(&ctx).unwrap();
        assert_eq!(ctx.log(a).map(|l| num_integer::gcd(l, 63)), Some(1));
        let c = ctx.clone();
        let g = ctx.generator();
        let with_canonical = Vbf::from_fn(ctx.clone(), move |x| {
            c.powu(x, 3) + c.powu(x, 10) + c.mul(g, c.powu(x, 24))
        });
        assert_eq!(with_canonical.differential_uniformity(), 4);
    }

    #[test]
    fn kim_is_apn() {
        let f = kim(field(6)).unwrap();
        assert_eq!(f.differential_uniformity(), 2);
        assert!(f.subspace_property(1));
        assert!(kim(field(8)).is_err());
    }

    #[test]
    fn inverse_is_not_crooked() {
        let f = inverse(field(6));
        assert!(matches!(
            f.hyperplane_spectrum(),
            Err(Error::NotCrooked { .. })
        ));
        assert!(matches!(
            f.hyperplane_beta(Elem::ONE),
            Err(Error::NotCrooked { .. })
        ));
    }

    #[test]
    fn beta_annihilates_image() {
        let ctx = field(8);
        let f = gold(ctx.clone(), 3).unwrap();
        for a in ctx.nonzero().step_by(7) {
            let beta = f.hyperplane_beta(a).unwrap();
            assert!(!beta.is_zero());
            let d = f.derivative(a).unwrap();
            assert!(ctx
                .elements()
                .all(|x| ctx.abs_trace(ctx.mul(beta, d.eval(x))) == 0));
            // No other nonzero label works.
            let others = ctx
                .nonzero()
                .filter(|&b| {
                    ctx.elements()
                        .all(|x| ctx.abs_trace(ctx.mul(b, d.eval(x))) == 0)
                })
                .count();
            assert_eq!(others, 1);
        }
    }

    #[test]
    fn fast_walsh_matches_naive() {
        for n in [4u32, 6] {
            let ctx = field(n);
            let fs = [gold(ctx.clone(), 1).unwrap(), inverse(ctx.clone())];
            for f in &fs {
                for a in ctx.elements() {
                    let row = f.walsh_row(a);
                    for b in ctx.elements() {
                        assert_eq!(row[b.index()], f.walsh_at(a, b));
                    }
                }
                let naive: WalshSpectrum = ctx
                    .nonzero()
                    .flat_map(|a| ctx.elements().map(move |b| (a, b)))
                    .map(|(a, b)| f.walsh_at(a, b))
                    .collect();
                assert_eq!(f.walsh_spectrum(), naive);
            }
        }
    }

    #[test]
    fn walsh_at_zero_component() {
        let ctx = field(6);
        let f = kim(ctx.clone()).unwrap();
        assert_eq!(f.walsh_at(Elem::ZERO, Elem::ZERO), 64);
        for b in ctx.nonzero() {
            assert_eq!(f.walsh_at(Elem::ZERO, b), 0);
        }
    }

    #[test]
    fn parseval_per_component() {
        for n in [4u32, 6, 8, 10] {
            let ctx = field(n);
            let f = gold(ctx.clone(), 1).unwrap();
            let g = inverse(ctx.clone());
            for h in [&f, &g] {
                for a in ctx.nonzero().step_by(if n == 10 { 17 } else { 1 }) {
                    let s: i64 = h.walsh_row(a).iter().map(|v| v * v).sum();
                    assert_eq!(s, 1i64 << (2 * n));
                }
                let spec = h.walsh_spectrum();
                assert_eq!(spec.total(), ctx.order() << n);
                let energy: i128 = spec
                    .iter()
                    .map(|(v, c)| (v as i128) * (v as i128) * c as i128)
                    .sum();
                assert_eq!(energy, (ctx.order() as i128) << (2 * n));
            }
        }
    }

    #[test]
    fn subspace_property_negative() {
        // X^3 + X^5 mixes two different scalings on K.
        let ctx = field(6);
        let c = ctx.clone();
        let f = Vbf::from_fn(ctx, move |x| c.powu(x, 3) + c.powu(x, 5));
        assert!((1..6).all(|k| !f.subspace_property(k)));
    }

    #[test]
    fn spectrum_counts() {
        let s: Spectrum<i64> = [3, -1, 3, 0].into_iter().collect();
        assert_eq!(s.total(), 4);
        assert_eq!(s.distinct(), 3);
        assert_eq!(s.get(3), 2);
        assert_eq!(s.values().collect::<Vec<_>>(), vec![-1, 0, 3]);
    }
}
