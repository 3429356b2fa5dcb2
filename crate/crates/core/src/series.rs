//! Exact windowed Laurent series over abelian-group coefficients.
//!
//! A series value stores coefficients for finitely many exponents together
//! with a [`Window`] recording (i) the *exactness range* `lo..=hi` on which
//! the stored coefficients are guaranteed to equal the true coefficients of
//! the represented formal series, and (ii) an optional *support claim*
//! bounding where the true series can be nonzero at all.  Outside the
//! exactness range and inside the claimed support the series is unknown.
//!
//! Every arithmetic operation either certifies that each requested output
//! coefficient is fully determined by the known data, or refuses with
//! [`Error::InsufficientWindow`].  Silent truncation error is never allowed:
//! the identities this crate checks are formal-distribution identities, and
//! an inexact coefficient would make a test failure meaningless.
//!
//! Bivariate series (`z` outer, `w` inner) are realised by nesting, wrapped
//! in [`BiLaurent`] which keeps the inner windows rectangular.  Deeper
//! nesting (three variables) is used only with fully known polynomial data.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Sentinel for an unbounded-below exponent bound.
pub const NEG_INF: i64 = i64::MIN / 4;
/// Sentinel for an unbounded-above exponent bound.
pub const POS_INF: i64 = i64::MAX / 4;

fn eadd(a: i64, b: i64) -> i64 {
    if a == NEG_INF || b == NEG_INF {
        NEG_INF
    } else if a == POS_INF || b == POS_INF {
        POS_INF
    } else {
        a + b
    }
}

fn eneg(a: i64) -> i64 {
    if a == NEG_INF {
        POS_INF
    } else if a == POS_INF {
        NEG_INF
    } else {
        -a
    }
}

/// Coefficient contract: an abelian group with integer scalar action.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, k: &BigInt) -> Self;
}

impl Coeff for BigInt {
    fn zero() -> Self {
        BigInt::ZERO
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, k: &BigInt) -> Self {
        self * k
    }
}

/// Exactness range plus support claim of a windowed series.
///
/// * `lo..=hi` — stored coefficients are exact there (`lo > hi` is the empty
///   range, legal for series known only through their support claim);
/// * `supp_lo..=supp_hi` — the true series vanishes outside this interval;
///   [`NEG_INF`]/[`POS_INF`] mean unbounded, `supp_lo > supp_hi` means the
///   series is identically zero.
///
/// A coefficient is *known* when it lies in the exactness range or outside
/// the claimed support (where it is zero).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
    pub supp_lo: i64,
    pub supp_hi: i64,
}

impl Window {
    /// Exact on `lo..=hi`, no support claim.
    pub fn exact(lo: i64, hi: i64) -> Self {
        Window {
            lo,
            hi,
            supp_lo: NEG_INF,
            supp_hi: POS_INF,
        }
    }

    /// Exact on `lo..=hi` with support claimed inside `supp_lo..=supp_hi`.
    pub fn with_support(lo: i64, hi: i64, supp_lo: i64, supp_hi: i64) -> Self {
        Window {
            lo: lo.max(supp_lo),
            hi: hi.min(supp_hi),
            supp_lo,
            supp_hi,
        }
    }

    /// The window of the identically zero series: known everywhere.
    pub fn zero() -> Self {
        Window {
            lo: 0,
            hi: -1,
            supp_lo: POS_INF,
            supp_hi: NEG_INF,
        }
    }

    pub fn is_known(&self, k: i64) -> bool {
        (self.lo <= k && k <= self.hi) || k < self.supp_lo || k > self.supp_hi
    }

    /// True when every coefficient of the series is determined.
    pub fn is_fully_known(&self) -> bool {
        self.supp_lo > self.supp_hi || (self.lo <= self.supp_lo && self.hi >= self.supp_hi)
    }

    fn shift(&self, d: i64) -> Self {
        Window {
            lo: eadd(self.lo, d),
            hi: eadd(self.hi, d),
            supp_lo: eadd(self.supp_lo, d),
            supp_hi: eadd(self.supp_hi, d),
        }
    }

    /// Unknown region as up to two disjoint intervals.
    fn unknown_intervals(&self) -> [(i64, i64); 2] {
        [
            (self.supp_lo, eadd(self.lo, -1).min(self.supp_hi)),
            (eadd(self.hi, 1).max(self.supp_lo), self.supp_hi),
        ]
    }

    /// Largest window exact on the intersection of the two exactness data.
    fn meet(&self, other: &Window) -> Window {
        let supp_lo = self.supp_lo.min(other.supp_lo);
        let supp_hi = self.supp_hi.max(other.supp_hi);
        if supp_lo > supp_hi {
            return Window::zero();
        }
        // Exactness glued with known-zero regions outside each support.
        let lo_a = if self.lo <= self.supp_lo { NEG_INF } else { self.lo };
        let hi_a = if self.hi >= self.supp_hi { POS_INF } else { self.hi };
        let lo_b = if other.lo <= other.supp_lo { NEG_INF } else { other.lo };
        let hi_b = if other.hi >= other.supp_hi { POS_INF } else { other.hi };
        Window {
            lo: lo_a.max(lo_b).max(supp_lo),
            hi: hi_a.min(hi_b).min(supp_hi),
            supp_lo,
            supp_hi,
        }
    }
}

/// A formal Laurent series with exact coefficients on a window.
#[derive(Clone, PartialEq, Debug)]
pub struct LaurentSeries<C: Coeff> {
    window: Window,
    coeffs: BTreeMap<i64, C>,
}

impl<C: Coeff> LaurentSeries<C> {
    pub fn zero() -> Self {
        LaurentSeries {
            window: Window::zero(),
            coeffs: BTreeMap::new(),
        }
    }

    /// A fully known, finitely supported series (a Laurent polynomial).
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (k, c) in terms {
            if !c.is_zero() {
                let entry = coeffs.entry(k).or_insert_with(C::zero);
                *entry = entry.add(&c);
                if entry.is_zero() {
                    coeffs.remove(&k);
                }
            }
        }
        let window = match (coeffs.keys().next(), coeffs.keys().next_back()) {
            (Some(&lo), Some(&hi)) => Window {
                lo,
                hi,
                supp_lo: lo,
                supp_hi: hi,
            },
            _ => Window::zero(),
        };
        LaurentSeries { window, coeffs }
    }

    pub fn monomial(exp: i64, c: C) -> Self {
        Self::from_terms([(exp, c)])
    }

    /// A truncation: exact on `lo..=hi` with no claim outside.
    pub fn truncated(terms: impl IntoIterator<Item = (i64, C)>, lo: i64, hi: i64) -> Self {
        Self::with_window(terms, Window::exact(lo, hi))
    }

    /// Builds a series with an explicit window; coefficients outside the
    /// window's known region are discarded.
    pub fn with_window(terms: impl IntoIterator<Item = (i64, C)>, window: Window) -> Self {
        let mut coeffs = BTreeMap::new();
        for (k, c) in terms {
            if c.is_zero() || !window.is_known(k) {
                continue;
            }
            let entry = coeffs.entry(k).or_insert_with(C::zero);
            *entry = entry.add(&c);
            if entry.is_zero() {
                coeffs.remove(&k);
            }
        }
        LaurentSeries { window, coeffs }
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn is_known(&self, k: i64) -> bool {
        self.window.is_known(k)
    }

    /// The coefficient of the `k`-th power, or an error when it is not
    /// determined by this window.
    pub fn coeff(&self, k: i64) -> Result<C> {
        if !self.window.is_known(k) {
            return Err(Error::InsufficientWindow(format!(
                "coefficient {k} is outside the exact window"
            )));
        }
        Ok(self.coeffs.get(&k).cloned().unwrap_or_else(C::zero))
    }

    /// Stored (exponent, coefficient) pairs in exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn is_zero_on_window(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let window = self.window.meet(&other.window);
        let mut terms: Vec<(i64, C)> = Vec::new();
        for (k, c) in self.iter() {
            terms.push((k, c.clone()));
        }
        for (k, c) in other.iter() {
            terms.push((k, c.clone()));
        }
        Self::with_window(terms, window)
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            window: self.window,
            coeffs: self.coeffs.iter().map(|(&k, c)| (k, c.neg())).collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if Zero::is_zero(s) {
            return Self::zero();
        }
        Self::with_window(
            self.coeffs.iter().map(|(&k, c)| (k, c.scale(s))),
            self.window,
        )
    }

    /// Applies a linear map to every coefficient; the window carries over.
    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> LaurentSeries<D> {
        LaurentSeries::with_window(self.coeffs.iter().map(|(&k, c)| (k, f(c))), self.window)
    }

    /// Multiplies by a single power: exponents shift by `d`.
    pub fn shift(&self, d: i64) -> Self {
        LaurentSeries {
            window: self.window.shift(d),
            coeffs: self.coeffs.iter().map(|(&k, c)| (k + d, c.clone())).collect(),
        }
    }

    /// Narrows the exactness range to `lo..=hi` (support claims survive).
    pub fn truncate(&self, lo: i64, hi: i64) -> Self {
        let window = Window {
            lo: lo.max(self.window.lo),
            hi: hi.min(self.window.hi),
            supp_lo: self.window.supp_lo,
            supp_hi: self.window.supp_hi,
        };
        Self::with_window(
            self.coeffs.iter().map(|(&k, c)| (k, c.clone())),
            window,
        )
    }

    /// Replaces the support claim by a (sound, caller-verified) tighter one.
    pub(crate) fn clamp_support(&self, supp_lo: i64, supp_hi: i64) -> Self {
        let window = Window {
            lo: self.window.lo.max(supp_lo),
            hi: self.window.hi.min(supp_hi),
            supp_lo: self.window.supp_lo.max(supp_lo),
            supp_hi: self.window.supp_hi.min(supp_hi),
        };
        Self::with_window(self.coeffs.iter().map(|(&k, c)| (k, c.clone())), window)
    }

    /// Exact equality of the two series on `lo..=hi`; errors when either
    /// side has an undetermined coefficient there.
    pub fn eq_on(&self, other: &Self, lo: i64, hi: i64) -> Result<bool> {
        for k in lo..=hi {
            if self.coeff(k)? != other.coeff(k)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl<C: Coeff> Coeff for LaurentSeries<C> {
    fn zero() -> Self {
        LaurentSeries::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        LaurentSeries::add(self, other)
    }
    fn neg(&self) -> Self {
        LaurentSeries::neg(self)
    }
    fn scale(&self, k: &BigInt) -> Self {
        LaurentSeries::scale(self, k)
    }
}

/// Exact convolution `c_k = sum a_i * b_{k-i}` on the requested window,
/// with a caller-supplied coefficient product.
///
/// Certifies, per output exponent, that every index pair that could
/// contribute under the support claims lies inside both exactness ranges.
pub fn convolve<A: Coeff, B: Coeff, C: Coeff>(
    a: &LaurentSeries<A>,
    b: &LaurentSeries<B>,
    out: (i64, i64),
    mut term_mul: impl FnMut(&A, &B) -> C,
) -> Result<LaurentSeries<C>> {
    let (wa, wb) = (a.window, b.window);
    let supp_lo = if wa.supp_lo > wa.supp_hi || wb.supp_lo > wb.supp_hi {
        POS_INF
    } else {
        eadd(wa.supp_lo, wb.supp_lo)
    };
    let supp_hi = if supp_lo == POS_INF {
        NEG_INF
    } else {
        eadd(wa.supp_hi, wb.supp_hi)
    };

    for k in out.0..=out.1 {
        // Pairs (i, k-i) allowed by the support claims.
        let i_lo = wa.supp_lo.max(eadd(k, eneg(wb.supp_hi)));
        let i_hi = wa.supp_hi.min(eadd(k, eneg(wb.supp_lo)));
        if i_lo > i_hi {
            continue; // coefficient known to be zero
        }
        let a_ok = i_lo >= wa.lo && i_hi <= wa.hi;
        let b_ok = eadd(k, eneg(i_hi)) >= wb.lo && eadd(k, eneg(i_lo)) <= wb.hi;
        if !(a_ok && b_ok) {
            return Err(Error::InsufficientWindow(format!(
                "product coefficient {k} needs factors on {i_lo}..={i_hi} beyond the exact windows"
            )));
        }
    }

    let mut acc: BTreeMap<i64, C> = BTreeMap::new();
    for (i, ai) in a.iter() {
        for (j, bj) in b.iter() {
            let k = i + j;
            if k < out.0 || k > out.1 {
                continue;
            }
            let t = term_mul(ai, bj);
            if t.is_zero() {
                continue;
            }
            let entry = acc.entry(k).or_insert_with(C::zero);
            *entry = entry.add(&t);
            if entry.is_zero() {
                acc.remove(&k);
            }
        }
    }
    Ok(LaurentSeries::with_window(
        acc,
        Window {
            lo: out.0.max(supp_lo),
            hi: out.1.min(supp_hi),
            supp_lo,
            supp_hi,
        },
    ))
}

/// Exact product of a series with an integer series on `out`.
pub fn series_mul<C: Coeff>(
    a: &LaurentSeries<C>,
    b: &LaurentSeries<BigInt>,
    out: (i64, i64),
) -> Result<LaurentSeries<C>> {
    convolve(a, b, out, |x, s| x.scale(s))
}

/// Which directed expansion of the rational kernel to take.
///
/// * [`ExpandDir::WOverZ`] — expand `z/(z-w)` in powers of `w/z`
///   (first variable large); this is the `i_{z,w}` reading.
/// * [`ExpandDir::ZOverW`] — expand `w/(w-z)` in powers of `z/w`
///   (second variable large); this is the `i_{w,z}` reading.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExpandDir {
    WOverZ,
    ZOverW,
}

/// Truncated directed geometric expansion, as a bivariate series:
/// `sum_{k=k_lo..=k_hi} (w/z)^k` or `sum (z/w)^k` (the sum starts at
/// `max(k_lo, 0)`; the true expansion has no negative-index terms).
pub fn expand_geometric(dir: ExpandDir, k_lo: i64, k_hi: i64) -> BiLaurent<BigInt> {
    let mut outer: BTreeMap<i64, LaurentSeries<BigInt>> = BTreeMap::new();
    let (z_win, w_win) = match dir {
        ExpandDir::WOverZ => (
            Window::with_support(-k_hi, -k_lo.max(0), NEG_INF, 0),
            Window::with_support(k_lo.max(0), k_hi, 0, POS_INF),
        ),
        ExpandDir::ZOverW => (
            Window::with_support(k_lo.max(0), k_hi, 0, POS_INF),
            Window::with_support(-k_hi, -k_lo.max(0), NEG_INF, 0),
        ),
    };
    for k in k_lo.max(0)..=k_hi {
        let (ze, we) = match dir {
            ExpandDir::WOverZ => (-k, k),
            ExpandDir::ZOverW => (k, -k),
        };
        outer.insert(
            ze,
            LaurentSeries::with_window([(we, BigInt::from(1))], w_win),
        );
    }
    BiLaurent {
        w_window: w_win,
        outer: LaurentSeries::with_window(outer, z_win),
    }
}

/// A bivariate Laurent series: a series in `z` whose coefficients are
/// series in `w`, with a uniform (rectangular) `w` window.
#[derive(Clone, PartialEq, Debug)]
pub struct BiLaurent<C: Coeff> {
    w_window: Window,
    outer: LaurentSeries<LaurentSeries<C>>,
}

impl<C: Coeff> BiLaurent<C> {
    pub fn zero() -> Self {
        BiLaurent {
            w_window: Window::zero(),
            outer: LaurentSeries::zero(),
        }
    }

    /// Assembles a bivariate series from `(z, w, coefficient)` triples with
    /// explicit windows for both variables.
    pub fn from_terms(
        terms: impl IntoIterator<Item = (i64, i64, C)>,
        z_window: Window,
        w_window: Window,
    ) -> Self {
        let mut slices: BTreeMap<i64, Vec<(i64, C)>> = BTreeMap::new();
        for (ze, we, c) in terms {
            slices.entry(ze).or_default().push((we, c));
        }
        let outer = LaurentSeries::with_window(
            slices
                .into_iter()
                .map(|(ze, ts)| (ze, LaurentSeries::with_window(ts, w_window))),
            z_window,
        );
        BiLaurent { w_window, outer }
    }

    pub fn z_window(&self) -> Window {
        self.outer.window()
    }

    pub fn w_window(&self) -> Window {
        self.w_window
    }

    /// The nested representation: coefficients of `z` powers are `w` series.
    pub fn outer(&self) -> &LaurentSeries<LaurentSeries<C>> {
        &self.outer
    }

    pub fn is_known(&self, ze: i64, we: i64) -> bool {
        let zw = self.outer.window();
        if ze < zw.supp_lo || ze > zw.supp_hi {
            return true; // whole slice known to vanish
        }
        zw.is_known(ze) && self.w_window.is_known(we)
    }

    pub fn coeff(&self, ze: i64, we: i64) -> Result<C> {
        if !self.is_known(ze, we) {
            return Err(Error::InsufficientWindow(format!(
                "bivariate coefficient ({ze},{we}) is outside the exact rectangle"
            )));
        }
        match self.outer.coeffs.get(&ze) {
            Some(slice) => Ok(slice.coeffs.get(&we).cloned().unwrap_or_else(C::zero)),
            None => Ok(C::zero()),
        }
    }

    /// Multiplies by `z^dz w^dw`.
    pub fn shift(&self, dz: i64, dw: i64) -> Self {
        let outer = LaurentSeries {
            window: self.outer.window.shift(dz),
            coeffs: self
                .outer
                .coeffs
                .iter()
                .map(|(&ze, s)| (ze + dz, s.shift(dw)))
                .collect(),
        };
        BiLaurent {
            w_window: self.w_window.shift(dw),
            outer,
        }
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> BiLaurent<D> {
        BiLaurent {
            w_window: self.w_window,
            outer: self.outer.map(|slice| slice.map(&f)),
        }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        self.map(|c| c.scale(s))
    }

    /// Exact equality on the rectangle; errors if either side is not exact
    /// everywhere on it.
    pub fn eq_on(&self, other: &Self, z: (i64, i64), w: (i64, i64)) -> Result<bool> {
        for ze in z.0..=z.1 {
            for we in w.0..=w.1 {
                if self.coeff(ze, we)? != other.coeff(ze, we)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Rectangular product with an integer bivariate series: outer
    /// convolution in `z`, inner exact products in `w`.
    pub fn mul_rect(
        &self,
        b: &BiLaurent<BigInt>,
        out_z: (i64, i64),
        out_w: (i64, i64),
    ) -> Result<BiLaurent<C>> {
        let w_window = product_window(&self.w_window, &b.w_window, out_w);
        let outer = convolve_fallible(&self.outer, &b.outer, out_z, |sa, sb| {
            series_mul(sa, sb, out_w)
        })?;
        // Inner certification for absent (zero) slices as well.
        let probe = LaurentSeries::<C>::with_window([], self.w_window);
        let probe_b = LaurentSeries::<BigInt>::with_window([], b.w_window);
        series_mul(&probe, &probe_b, out_w)?;
        Ok(BiLaurent { w_window, outer })
    }

    /// Exact multiplication by the *untruncated* directed expansion
    /// `i_{z,w} z/(z-w) = sum_{k>=0} (w/z)^k` (for [`ExpandDir::WOverZ`]) or
    /// `i_{w,z} w/(w-z) = sum_{k>=0} (z/w)^k` (for [`ExpandDir::ZOverW`]).
    ///
    /// The sum over `k` terminates through the support claims of `self`;
    /// every summand must be exact, otherwise the product refuses.
    pub fn mul_expansion(&self, dir: ExpandDir, out_z: (i64, i64), out_w: (i64, i64)) -> Result<BiLaurent<C>> {
        let zw = self.outer.window();
        let ww = self.w_window;
        let mut terms: Vec<(i64, i64, C)> = Vec::new();
        for ze in out_z.0..=out_z.1 {
            for we in out_w.0..=out_w.1 {
                // k_max from whichever support bound is finite.
                let k_max = match dir {
                    ExpandDir::WOverZ => {
                        let by_w = if ww.supp_lo == NEG_INF { None } else { Some(we - ww.supp_lo) };
                        let by_z = if zw.supp_hi == POS_INF { None } else { Some(zw.supp_hi - ze) };
                        match (by_w, by_z) {
                            (None, None) => {
                                return Err(Error::InsufficientWindow(
                                    "directed expansion needs a finite support bound".into(),
                                ))
                            }
                            (Some(a), None) => a,
                            (None, Some(b)) => b,
                            (Some(a), Some(b)) => a.min(b),
                        }
                    }
                    ExpandDir::ZOverW => {
                        let by_z = if zw.supp_lo == NEG_INF { None } else { Some(ze - zw.supp_lo) };
                        let by_w = if ww.supp_hi == POS_INF { None } else { Some(ww.supp_hi - we) };
                        match (by_z, by_w) {
                            (None, None) => {
                                return Err(Error::InsufficientWindow(
                                    "directed expansion needs a finite support bound".into(),
                                ))
                            }
                            (Some(a), None) => a,
                            (None, Some(b)) => b,
                            (Some(a), Some(b)) => a.min(b),
                        }
                    }
                };
                let mut acc = C::zero();
                for k in 0..=k_max.max(-1) {
                    let (sz, sw) = match dir {
                        ExpandDir::WOverZ => (ze + k, we - k),
                        ExpandDir::ZOverW => (ze - k, we + k),
                    };
                    let c = self.coeff(sz, sw)?;
                    acc = acc.add(&c);
                }
                if !acc.is_zero() {
                    terms.push((ze, we, acc));
                }
            }
        }
        let (z_window, w_window) = match dir {
            ExpandDir::WOverZ => (
                Window {
                    lo: out_z.0,
                    hi: out_z.1.min(zw.supp_hi),
                    supp_lo: NEG_INF,
                    supp_hi: zw.supp_hi,
                },
                Window {
                    lo: out_w.0.max(ww.supp_lo),
                    hi: out_w.1,
                    supp_lo: ww.supp_lo,
                    supp_hi: POS_INF,
                },
            ),
            ExpandDir::ZOverW => (
                Window {
                    lo: out_z.0.max(zw.supp_lo),
                    hi: out_z.1,
                    supp_lo: zw.supp_lo,
                    supp_hi: POS_INF,
                },
                Window {
                    lo: out_w.0,
                    hi: out_w.1.min(ww.supp_hi),
                    supp_lo: NEG_INF,
                    supp_hi: ww.supp_hi,
                },
            ),
        };
        Ok(BiLaurent::from_terms(terms, z_window, w_window))
    }
}

/// Window of an exact product certified on `out`.
fn product_window(wa: &Window, wb: &Window, out: (i64, i64)) -> Window {
    let supp_lo = if wa.supp_lo > wa.supp_hi || wb.supp_lo > wb.supp_hi {
        POS_INF
    } else {
        eadd(wa.supp_lo, wb.supp_lo)
    };
    let supp_hi = if supp_lo == POS_INF {
        NEG_INF
    } else {
        eadd(wa.supp_hi, wb.supp_hi)
    };
    Window {
        lo: out.0.max(supp_lo),
        hi: out.1.min(supp_hi),
        supp_lo,
        supp_hi,
    }
}

/// [`convolve`] with a fallible coefficient product.
pub fn convolve_fallible<A: Coeff, B: Coeff, C: Coeff>(
    a: &LaurentSeries<A>,
    b: &LaurentSeries<B>,
    out: (i64, i64),
    term_mul: impl Fn(&A, &B) -> Result<C>,
) -> Result<LaurentSeries<C>> {
    let mut err = None;
    let res = convolve(a, b, out, |x, y| match term_mul(x, y) {
        Ok(v) => v,
        Err(e) => {
            err = Some(e);
            C::zero()
        }
    });
    match err {
        Some(e) => Err(e),
        None => res,
    }
}

/// Composition of a per-coefficient operator with a series in the same
/// variable: `out_k = sum_i op(src_i)_{k-i}`.
///
/// `op_supp` must bound the exponent support of `op` applied to *any*
/// vector (sentinels allowed).  Contributions from coefficients of `src`
/// that are inside its support claim but outside its exact window are
/// rejected.
pub fn compose_op<V: Coeff>(
    src: &LaurentSeries<V>,
    op_supp: (i64, i64),
    out: (i64, i64),
    mut op: impl FnMut(&V, (i64, i64)) -> Result<LaurentSeries<V>>,
) -> Result<LaurentSeries<V>> {
    let w = src.window();
    for (u_lo, u_hi) in w.unknown_intervals() {
        if u_lo > u_hi {
            continue;
        }
        let reach_lo = eadd(u_lo, op_supp.0);
        let reach_hi = eadd(u_hi, op_supp.1);
        if reach_lo <= out.1 && reach_hi >= out.0 {
            return Err(Error::InsufficientWindow(format!(
                "composition needs source coefficients on {u_lo}..={u_hi} beyond the exact window"
            )));
        }
    }
    let mut acc: BTreeMap<i64, V> = BTreeMap::new();
    for (i, v) in src.iter() {
        let t = op(v, (out.0 - i, out.1 - i))?;
        for (d, u) in t.iter() {
            let k = i + d;
            if k < out.0 || k > out.1 || u.is_zero() {
                continue;
            }
            let entry = acc.entry(k).or_insert_with(V::zero);
            *entry = entry.add(u);
            if entry.is_zero() {
                acc.remove(&k);
            }
        }
    }
    let supp_lo = if w.supp_lo > w.supp_hi {
        POS_INF
    } else {
        eadd(w.supp_lo, op_supp.0)
    };
    let supp_hi = if supp_lo == POS_INF {
        NEG_INF
    } else {
        eadd(w.supp_hi, op_supp.1)
    };
    Ok(LaurentSeries::with_window(
        acc,
        Window {
            lo: out.0.max(supp_lo),
            hi: out.1.min(supp_hi),
            supp_lo,
            supp_hi,
        },
    ))
}

/// Swaps the two variables of a nested series with uniform inner windows.
pub fn transpose<C: Coeff>(
    s: &LaurentSeries<LaurentSeries<C>>,
    inner_window: Window,
) -> LaurentSeries<LaurentSeries<C>> {
    let outer_window = s.window();
    let mut slices: BTreeMap<i64, Vec<(i64, C)>> = BTreeMap::new();
    for (a, inner) in s.iter() {
        for (b, c) in inner.iter() {
            slices.entry(b).or_default().push((a, c.clone()));
        }
    }
    LaurentSeries::with_window(
        slices
            .into_iter()
            .map(|(b, ts)| (b, LaurentSeries::with_window(ts, outer_window))),
        inner_window,
    )
}
