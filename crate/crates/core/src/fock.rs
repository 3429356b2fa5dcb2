//! The fermionic Fock space: charge-graded semi-infinite wedges.
//!
//! A basis element is written `[b]_{m+lambda}`: the monomial
//! `b_{m+l1} ^ b_{m-1+l2} ^ ...` whose indices eventually decrease by one
//! forever.  Only the pair (charge `m`, partition `lambda`) is stored; any
//! operation that needs an explicit wedge prefix splits the element at a
//! finite depth of its own choosing, acts there, and re-canonicalises.  The
//! results do not depend on the chosen depth, which is checked by tests.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::Result;
use crate::exterior::{
    normalize_wedge, schubert_ext, sigma_ext, DualVector, ExtVector, Normalized, SchubertKind,
    WedgeMonomial,
};
use crate::partitions::Partition;
use crate::series::{convolve, Coeff, LaurentSeries, Window, POS_INF};

/// The basis element `[b]_{charge + shape}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FockMonomial {
    pub charge: i64,
    pub shape: Partition,
}

impl FockMonomial {
    pub fn new(charge: i64, shape: Partition) -> Self {
        FockMonomial { charge, shape }
    }

    pub fn vacuum(charge: i64) -> Self {
        FockMonomial {
            charge,
            shape: Partition::empty(),
        }
    }

    /// Splits off the depth-`r` wedge prefix (requires `r >= len(shape)`):
    /// the prefix monomial and the tail vacuum charge.
    pub fn prefix(&self, r: usize) -> (WedgeMonomial, i64) {
        assert!(r >= self.shape.len(), "prefix depth below partition length");
        let indices: Vec<i64> = (1..=r)
            .map(|k| self.charge + self.shape.part(k) - (k as i64 - 1))
            .collect();
        (WedgeMonomial::new(indices), self.charge - r as i64)
    }
}

impl fmt::Display for FockMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shape.is_empty() {
            write!(f, "[b]_{}", self.charge)
        } else {
            write!(f, "[b]_{{{}+{}}}", self.charge, self.shape)
        }
    }
}

impl fmt::Debug for FockMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finitely supported integer combination of Fock basis elements.
/// Charges may mix; operations act charge-wise.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FockVector {
    terms: BTreeMap<FockMonomial, BigInt>,
}

impl FockVector {
    pub fn zero() -> Self {
        FockVector::default()
    }

    pub fn vacuum(charge: i64) -> Self {
        FockVector::monomial(FockMonomial::vacuum(charge), BigInt::from(1))
    }

    pub fn basis(charge: i64, shape: Partition) -> Self {
        FockVector::monomial(FockMonomial::new(charge, shape), BigInt::from(1))
    }

    pub fn monomial(m: FockMonomial, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        FockVector { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FockMonomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: FockMonomial, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(|| BigInt::ZERO);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        FockVector {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return FockVector::zero();
        }
        FockVector {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// Largest partition weight among the stored monomials.
    pub fn weight_bound(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| m.shape.weight())
            .max()
            .unwrap_or(0)
    }

    /// The charge of a homogeneous vector (`None` when zero or mixed).
    pub fn homogeneous_charge(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|m| m.charge);
        let first = it.next()?;
        it.all(|c| c == first).then_some(first)
    }

    /// Splits into charge components.
    pub fn charge_components(&self) -> BTreeMap<i64, FockVector> {
        let mut out: BTreeMap<i64, FockVector> = BTreeMap::new();
        for (m, c) in self.terms() {
            out.entry(m.charge)
                .or_insert_with(FockVector::zero)
                .add_term(m.clone(), c);
        }
        out
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::json::fmt_terms(f, self.terms.iter().map(|(m, c)| (m.to_string(), c)))
    }
}

impl fmt::Debug for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Coeff for FockVector {
    fn zero() -> Self {
        FockVector::zero()
    }
    fn is_zero(&self) -> bool {
        FockVector::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        FockVector::add(self, other)
    }
    fn neg(&self) -> Self {
        FockVector::neg(self)
    }
    fn scale(&self, k: &BigInt) -> Self {
        FockVector::scale(self, k)
    }
}

/// Outcome of canonicalising a finite wedge against a tail vacuum.
pub enum Canonical {
    Zero,
    Term(i8, FockMonomial),
}

/// Interprets `b_{i_1} ^ ... ^ b_{i_r} ^ [b]_m`.
///
/// Sorts the prefix (with sign), kills repeated indices and indices that
/// collide with the tail (`i <= m`), and reads off charge `m + r` and
/// `lambda_k = i_k - (m + r) + (k - 1)`.
pub fn canonicalize_fock(prefix: &[i64], tail_charge: i64) -> Canonical {
    match normalize_wedge(prefix) {
        Normalized::Zero => Canonical::Zero,
        Normalized::Term(sign, wm) => {
            if wm.indices().iter().any(|&i| i <= tail_charge) {
                return Canonical::Zero;
            }
            let r = wm.degree() as i64;
            let charge = tail_charge + r;
            let parts: Vec<i64> = wm
                .indices()
                .iter()
                .enumerate()
                .map(|(k0, &i)| i - charge + k0 as i64)
                .collect();
            Canonical::Term(sign, FockMonomial::new(charge, Partition::from_valid(parts)))
        }
    }
}

fn accumulate_canonical(out: &mut FockVector, indices: &[i64], tail: i64, coeff: &BigInt) {
    match canonicalize_fock(indices, tail) {
        Canonical::Zero => {}
        Canonical::Term(sign, mono) => {
            out.add_term(mono, &(coeff * BigInt::from(sign)));
        }
    }
}

fn wedge_onto_with_depth(u: &ExtVector, f: &FockVector, extra_depth: usize) -> FockVector {
    let mut out = FockVector::zero();
    for (wm_u, cu) in u.terms() {
        for (mono, cf) in f.terms() {
            let r = mono.shape.len() + extra_depth;
            let (prefix, tail) = mono.prefix(r);
            let mut indices = wm_u.indices().to_vec();
            indices.extend_from_slice(prefix.indices());
            accumulate_canonical(&mut out, &indices, tail, &(cu * cf));
        }
    }
    out
}

/// The action `u ^ f` of an exterior vector on the Fock space; raises the
/// charge by the degree of `u`.
///
/// Indices of `u` at or below the expanded tail duplicate a tail factor and
/// vanish in canonicalisation, so any prefix depth gives the same result.
pub fn wedge_onto(u: &ExtVector, f: &FockVector) -> FockVector {
    wedge_onto_with_depth(u, f, 0)
}

fn contract_fock_with_depth(beta: &DualVector, f: &FockVector, extra: usize) -> FockVector {
    let mut out = FockVector::zero();
    for (j, cb) in beta.terms() {
        for (mono, cf) in f.terms() {
            // Deep enough that beta_j cannot hit the tail.
            let min_r = (mono.charge - j + 1).max(0) as usize;
            let r = mono.shape.len().max(min_r) + extra;
            let (prefix, tail) = mono.prefix(r);
            if let Some(pos) = prefix.indices().iter().position(|&i| i == j) {
                let mut indices = prefix.indices().to_vec();
                indices.remove(pos);
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                accumulate_canonical(&mut out, &indices, tail, &(cb * cf * BigInt::from(sign)));
            }
        }
    }
    out
}

/// Contraction `beta -| f`; lowers the charge by one.
///
/// The prefix is taken deep enough that every `beta_j` either hits a prefix
/// factor or misses entirely, so the tail term of the Leibniz rule vanishes.
pub fn contract_fock(beta: &DualVector, f: &FockVector) -> FockVector {
    contract_fock_with_depth(beta, f, 0)
}

/// Vacuum series of a Schubert derivation: its action on `[b]_m`.
///
/// The plus derivation acts on the top tail element only,
/// `(sum_i b_{m+i} z^i) ^ [b]_{m-1}`; its inverse produces the alternating
/// column sum `sum_j (-1)^j [b]_{m+(1^j)} z^j`; the minus kinds fix the
/// vacuum.
fn vacuum_series(kind: SchubertKind, m: i64, lo: i64, hi: i64) -> LaurentSeries<FockVector> {
    match kind {
        SchubertKind::Plus => LaurentSeries::with_window(
            (0..=hi.max(0)).map(|i| (i, FockVector::basis(m, Partition::row(i)))),
            Window::with_support(lo, hi, 0, POS_INF),
        ),
        SchubertKind::PlusInverse => LaurentSeries::with_window(
            (0..=hi.max(0)).map(|j| {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                (
                    j,
                    FockVector::basis(m, Partition::column(j as usize)).scale(&BigInt::from(sign)),
                )
            }),
            Window::with_support(lo, hi, 0, POS_INF),
        ),
        SchubertKind::Minus | SchubertKind::MinusInverse => {
            LaurentSeries::monomial(0, FockVector::vacuum(m))
        }
    }
}

fn schubert_fock_with_depth(
    kind: SchubertKind,
    f: &FockVector,
    window: (i64, i64),
    extra: usize,
) -> Result<LaurentSeries<FockVector>> {
    let (lo, hi) = window;
    let radius = lo.abs().max(hi.abs());
    let full = (lo.min(0), hi.max(0));
    let mut out = LaurentSeries::zero();
    for (mono, c) in f.terms() {
        let r = mono.shape.len().max(radius as usize + 1) + extra;
        let (prefix, tail_charge) = mono.prefix(r);
        let prefix_series =
            schubert_ext(kind, &ExtVector::monomial(prefix, BigInt::from(1)), full)?;
        let tail_series = vacuum_series(kind, tail_charge, full.0, full.1);
        let mut composed = convolve(&prefix_series, &tail_series, full, wedge_onto)?;
        if !kind.is_plus() {
            // Minus-direction coefficients lower the partition weight, so
            // the series vanishes below -|lambda|.
            composed = composed.clamp_support(-mono.shape.weight(), 0);
        }
        out = out.add(&composed.truncate(lo, hi).scale(c));
    }
    Ok(out)
}

/// A Schubert derivation on the Fock space, exact on `window`.
///
/// Each monomial splits at depth `max(len(shape), radius + 1)`; the
/// derivation acts on the prefix through [`schubert_ext`] and on the tail
/// through its vacuum rule, and the two windowed series are wedged back
/// together.
pub fn schubert_fock(
    kind: SchubertKind,
    f: &FockVector,
    window: (i64, i64),
) -> Result<LaurentSeries<FockVector>> {
    schubert_fock_with_depth(kind, f, window, 0)
}

/// The coefficient operator `sigma_i` on the Fock space.
pub fn sigma_fock(i: i64, f: &FockVector) -> FockVector {
    let kind = if i >= 0 {
        SchubertKind::Plus
    } else {
        SchubertKind::Minus
    };
    schubert_fock(kind, f, (i, i))
        .and_then(|s| s.coeff(i))
        .expect("single-coefficient Schubert window is always exact")
}

/// The inverse-kind coefficient operator of the matching sign.
pub fn sigma_fock_inv(i: i64, f: &FockVector) -> FockVector {
    let kind = if i >= 0 {
        SchubertKind::PlusInverse
    } else {
        SchubertKind::MinusInverse
    };
    schubert_fock(kind, f, (i, i))
        .and_then(|s| s.coeff(i))
        .expect("single-coefficient Schubert window is always exact")
}

/// Giambelli determinant: applies `det(sigma_{lambda_i - i + j})` to the
/// charge-`m` vacuum; the result equals `[b]_{m+lambda}`.
///
/// Each signed permutation term is a composite `sigma_{e_1} ... sigma_{e_r}`
/// evaluated by acting on the depth-`r` prefix of the vacuum and leaving the
/// tail untouched.
pub fn giambelli(shape: &Partition, m: i64) -> FockVector {
    let r = shape.len();
    if r == 0 {
        return FockVector::vacuum(m);
    }
    let (prefix, tail) = FockMonomial::vacuum(m).prefix(r);
    let mut out = FockVector::zero();
    let mut perm: Vec<usize> = (0..r).collect();
    permute_signed(&mut perm, 0, 1, &mut |p, sign| {
        let mut acted = ExtVector::monomial(prefix.clone(), BigInt::from(sign));
        for (i0, &pi0) in p.iter().enumerate() {
            let e = shape.part(i0 + 1) - (i0 as i64 + 1) + (pi0 as i64 + 1);
            acted = sigma_ext(e, &acted);
            if acted.is_zero() {
                break;
            }
        }
        for (wm, c) in acted.terms() {
            match canonicalize_fock(wm.indices(), tail) {
                Canonical::Zero => {}
                Canonical::Term(s, mono) => out.add_term(mono, &(c * BigInt::from(s))),
            }
        }
    });
    out
}

fn permute_signed(v: &mut Vec<usize>, k: usize, sign: i8, visit: &mut impl FnMut(&[usize], i8)) {
    if k == v.len() {
        visit(v, sign);
        return;
    }
    for i in k..v.len() {
        let s = if i == k { sign } else { -sign };
        v.swap(k, i);
        permute_signed(v, k + 1, s, visit);
        v.swap(k, i);
    }
}

/// The charge shift: every charge moves by `k`, shapes unchanged.
pub fn zeta_shift(f: &FockVector, k: i64) -> FockVector {
    FockVector {
        terms: f
            .terms
            .iter()
            .map(|(m, c)| (FockMonomial::new(m.charge + k, m.shape.clone()), c.clone()))
            .collect(),
    }
}

/// The charge-shift series: a charge-`m` monomial contributes at exponent
/// `m+1` (forward) or `-m` (inverse), with the charge moved by one.
/// The result is finitely supported, hence exact everywhere.
pub fn r_op(f: &FockVector, inverse: bool) -> LaurentSeries<FockVector> {
    let mut terms: Vec<(i64, FockVector)> = Vec::new();
    for (mono, c) in f.terms() {
        let (exp, dm) = if inverse {
            (-mono.charge, -1)
        } else {
            (mono.charge + 1, 1)
        };
        terms.push((
            exp,
            FockVector::monomial(
                FockMonomial::new(mono.charge + dm, mono.shape.clone()),
                c.clone(),
            ),
        ));
    }
    LaurentSeries::from_terms(terms)
}

/// Applies the charge shift to a series of homogeneous charge (the exponent
/// shift is uniform only charge-wise).
pub fn r_op_series(
    s: &LaurentSeries<FockVector>,
    inverse: bool,
) -> Result<LaurentSeries<FockVector>> {
    let mut charge: Option<i64> = None;
    for (_, v) in s.iter() {
        match (charge, v.homogeneous_charge()) {
            (_, None) => {
                return Err(crate::error::Error::ChargeMixed(
                    "charge-shift series needs homogeneous input".into(),
                ))
            }
            (None, Some(c)) => charge = Some(c),
            (Some(c0), Some(c)) if c0 != c => {
                return Err(crate::error::Error::ChargeMixed(
                    "charge-shift series needs homogeneous input".into(),
                ))
            }
            _ => {}
        }
    }
    let m = match charge {
        Some(m) => m,
        None => return Ok(LaurentSeries::zero()),
    };
    let d = if inverse { -m } else { m + 1 };
    let dm = if inverse { -1 } else { 1 };
    Ok(s.shift(d).map(|v| zeta_shift(v, dm)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::compose_op;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn part(parts: &[i64]) -> Partition {
        Partition::new(parts.iter().copied()).unwrap()
    }

    fn basis(charge: i64, parts: &[i64]) -> FockVector {
        FockVector::basis(charge, part(parts))
    }

    #[test]
    fn canonicalize_examples() {
        match canonicalize_fock(&[2, 0], -1) {
            Canonical::Term(s, m) => {
                assert_eq!(s, 1);
                assert_eq!(m, FockMonomial::new(1, part(&[1])));
            }
            _ => panic!("expected a term"),
        }
        assert!(matches!(canonicalize_fock(&[-1], 0), Canonical::Zero));
        match canonicalize_fock(&[0, 1], -1) {
            Canonical::Term(s, m) => {
                assert_eq!(s, -1);
                assert_eq!(m, FockMonomial::vacuum(1));
            }
            _ => panic!("expected a term"),
        }
    }

    #[test]
    fn prefix_round_trips() {
        for m in -3..=3i64 {
            for shape in Partition::enumerate_bounded(5, 3) {
                let mono = FockMonomial::new(m, shape.clone());
                for r in shape.len()..shape.len() + 3 {
                    let (prefix, tail) = mono.prefix(r);
                    match canonicalize_fock(prefix.indices(), tail) {
                        Canonical::Term(1, back) => assert_eq!(back, mono),
                        _ => panic!("prefix of {mono} at depth {r} failed to round-trip"),
                    }
                }
            }
        }
    }

    #[test]
    fn column_prefix_glues_back() {
        // b^r_{m+lambda+(1^r)} ^ [b]_{m-r+1} = [b]_{m+1+lambda}
        for m in -2..=2i64 {
            for shape in Partition::enumerate_bounded(4, 2) {
                for r in shape.len().max(1)..=3 {
                    let grown = shape.add_column(r);
                    let mono = FockMonomial::new(m, grown);
                    let (prefix, _) = mono.prefix(r);
                    let glued = wedge_onto(
                        &ExtVector::monomial(prefix, int(1)),
                        &FockVector::vacuum(m - r as i64 + 1),
                    );
                    assert_eq!(glued, basis(m + 1, shape.parts()), "m={m} r={r}");
                }
            }
        }
    }

    #[test]
    fn wedge_onto_examples() {
        assert_eq!(
            wedge_onto(&ExtVector::basis(0), &FockVector::vacuum(-1)),
            FockVector::vacuum(0)
        );
        assert!(wedge_onto(&ExtVector::basis(0), &FockVector::vacuum(0)).is_zero());
        // Consecutive indices on top of the vacuum extend it.
        assert_eq!(
            wedge_onto(&ExtVector::wedge_of(&[2, 1]), &FockVector::vacuum(0)),
            FockVector::vacuum(2)
        );
        // A gap at the bottom gives the column (1,1).
        assert_eq!(
            wedge_onto(&ExtVector::wedge_of(&[3, 2]), &FockVector::vacuum(0)),
            basis(2, &[1, 1])
        );
    }

    #[test]
    fn wedge_onto_depth_independent() {
        for extra in 0..3usize {
            for m in -2..=2i64 {
                for shape in Partition::enumerate_bounded(4, 2) {
                    let f = FockVector::basis(m, shape.clone());
                    for idx in [-2i64, 0, 1, 3] {
                        assert_eq!(
                            wedge_onto_with_depth(&ExtVector::basis(idx), &f, extra),
                            wedge_onto(&ExtVector::basis(idx), &f),
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn contract_examples() {
        assert_eq!(
            contract_fock(&DualVector::basis(0), &FockVector::vacuum(0)),
            FockVector::vacuum(-1)
        );
        assert!(contract_fock(&DualVector::basis(3), &FockVector::vacuum(0)).is_zero());
        assert_eq!(
            contract_fock(&DualVector::basis(0), &basis(1, &[1])),
            basis(0, &[2]).neg()
        );
    }

    #[test]
    fn contract_depth_independent() {
        for extra in 0..3usize {
            for m in -2..=2i64 {
                for shape in Partition::enumerate_bounded(4, 2) {
                    let f = FockVector::basis(m, shape.clone());
                    for j in -3..=3i64 {
                        assert_eq!(
                            contract_fock_with_depth(&DualVector::basis(j), &f, extra),
                            contract_fock(&DualVector::basis(j), &f),
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn schubert_vacuum_examples() {
        // plus: coefficient of z^i on the vacuum is the row (i).
        let s = schubert_fock(SchubertKind::Plus, &FockVector::vacuum(0), (0, 3)).unwrap();
        assert_eq!(s.coeff(0).unwrap(), FockVector::vacuum(0));
        for i in 1..=3 {
            assert_eq!(s.coeff(i).unwrap(), basis(0, &[i]));
        }

        // plus-inverse on the vacuum: alternating columns.
        let s = schubert_fock(SchubertKind::PlusInverse, &FockVector::vacuum(0), (0, 2)).unwrap();
        assert_eq!(s.coeff(0).unwrap(), FockVector::vacuum(0));
        assert_eq!(s.coeff(1).unwrap(), basis(0, &[1]).neg());
        assert_eq!(s.coeff(2).unwrap(), basis(0, &[1, 1]));

        // minus lowers the single box back to the vacuum.
        let s = schubert_fock(SchubertKind::Minus, &basis(0, &[1]), (-1, -1)).unwrap();
        assert_eq!(s.coeff(-1).unwrap(), FockVector::vacuum(0));
    }

    #[test]
    fn schubert_depth_independent() {
        for extra in [0usize, 1, 2] {
            for m in -1..=1i64 {
                for shape in Partition::enumerate_bounded(4, 3) {
                    let f = FockVector::basis(m, shape.clone());
                    for kind in [
                        SchubertKind::Plus,
                        SchubertKind::Minus,
                        SchubertKind::PlusInverse,
                        SchubertKind::MinusInverse,
                    ] {
                        let win = if kind.is_plus() { (0, 4) } else { (-4, 0) };
                        let a = schubert_fock_with_depth(kind, &f, win, extra).unwrap();
                        let b = schubert_fock(kind, &f, win).unwrap();
                        assert!(
                            a.eq_on(&b, win.0, win.1).unwrap(),
                            "kind {kind:?} m={m} shape={shape} extra={extra}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn leibniz_coefficient_rule() {
        // sigma_{+-i} of prefix ^ tail agrees with the explicit convolution
        // sum_j sigma_{+-j} prefix ^ sigma_{+-(i-+j)} tail.
        for shape in Partition::enumerate_bounded(3, 2) {
            let mono = FockMonomial::new(0, shape.clone());
            let r = shape.len().max(2);
            let (prefix, tail) = mono.prefix(r);
            let prefix_v = ExtVector::monomial(prefix, int(1));
            for i in 0..=3i64 {
                let mut expect = FockVector::zero();
                for j in 0..=i {
                    let up = sigma_ext(j, &prefix_v);
                    let tail_part = sigma_fock(i - j, &FockVector::vacuum(tail));
                    expect = expect.add(&wedge_onto(&up, &tail_part));
                }
                assert_eq!(sigma_fock(i, &FockVector::basis(0, shape.clone())), expect);

                // minus direction: the tail is fixed, only j = i survives.
                let down = sigma_ext(-i, &prefix_v);
                let expect_minus = wedge_onto(&down, &FockVector::vacuum(tail));
                assert_eq!(
                    sigma_fock(-i, &FockVector::basis(0, shape.clone())),
                    expect_minus
                );
            }
        }
    }

    #[test]
    fn inverse_compositions_small() {
        for m in -1..=1i64 {
            for shape in Partition::enumerate_bounded(4, 3) {
                let f = FockVector::basis(m, shape.clone());
                for (fwd, inv) in [
                    (SchubertKind::Plus, SchubertKind::PlusInverse),
                    (SchubertKind::Minus, SchubertKind::MinusInverse),
                ] {
                    let win = if fwd.is_plus() { (0, 4) } else { (-4, 0) };
                    let first = schubert_fock(fwd, &f, win).unwrap();
                    let composed = compose_op(&first, inv.op_support(), win, |v, w| {
                        schubert_fock(inv, v, w)
                    })
                    .unwrap();
                    let expect = LaurentSeries::monomial(0, f.clone());
                    assert!(composed.eq_on(&expect, win.0, win.1).unwrap());
                }
            }
        }
    }

    #[test]
    fn fock_integration_by_parts() {
        // sigma_+(z) b^r_{m+mu} ^ f = sigma_+(z)(b^r_{m+mu} ^ sigmabar_+(z) f)
        let win = (0i64, 4i64);
        for mu in Partition::enumerate_bounded(3, 2) {
            for lam in Partition::enumerate_bounded(3, 2) {
                let m = 0i64;
                let r = mu.len().max(1);
                let (prefix, tail_charge) = FockMonomial::new(m, mu.clone()).prefix(r);
                let prefix_v = ExtVector::monomial(prefix, int(1));
                let f = FockVector::basis(tail_charge, lam.clone());

                let spx = schubert_ext(SchubertKind::Plus, &prefix_v, win).unwrap();
                let lhs =
                    convolve(&spx, &LaurentSeries::monomial(0, f.clone()), win, wedge_onto)
                        .unwrap();

                let sbar_f = schubert_fock(SchubertKind::PlusInverse, &f, win).unwrap();
                let merged = convolve(
                    &LaurentSeries::monomial(0, prefix_v.clone()),
                    &sbar_f,
                    win,
                    wedge_onto,
                )
                .unwrap();
                let rhs = compose_op(&merged, SchubertKind::Plus.op_support(), win, |v, w| {
                    schubert_fock(SchubertKind::Plus, v, w)
                })
                .unwrap();
                assert!(lhs.eq_on(&rhs, win.0, win.1).unwrap(), "mu={mu} lam={lam}");
            }
        }
    }

    #[test]
    fn noncommutation_on_fock_space() {
        // sigma_{-1} sigma_2 fixes a box; the other order annihilates.
        let v = FockVector::vacuum(0);
        assert_eq!(sigma_fock(-1, &sigma_fock(2, &v)), basis(0, &[1]));
        assert!(sigma_fock(2, &sigma_fock(-1, &v)).is_zero());
    }

    #[test]
    fn giambelli_examples() {
        assert_eq!(giambelli(&part(&[1]), 0), basis(0, &[1]));
        assert_eq!(giambelli(&part(&[]), 5), FockVector::vacuum(5));

        // 2x2 determinant for the hook (2,1), expanded by hand:
        // sigma_2 sigma_1 - sigma_3 sigma_0 on the vacuum.
        let by_hand = sigma_fock(2, &sigma_fock(1, &FockVector::vacuum(0)))
            .add(&sigma_fock(3, &sigma_fock(0, &FockVector::vacuum(0))).neg());
        assert_eq!(by_hand, basis(0, &[2, 1]));
        assert_eq!(giambelli(&part(&[2, 1]), 0), basis(0, &[2, 1]));
    }

    #[test]
    fn zeta_and_r_op() {
        assert_eq!(zeta_shift(&FockVector::vacuum(0), 1), FockVector::vacuum(1));
        assert_eq!(zeta_shift(&basis(2, &[3, 1]), -2), basis(0, &[3, 1]));

        let r = r_op(&FockVector::vacuum(0), false);
        assert_eq!(r.coeff(1).unwrap(), FockVector::vacuum(1));
        let rinv = r_op(&FockVector::vacuum(0), true);
        assert_eq!(rinv.coeff(0).unwrap(), FockVector::vacuum(-1));

        // inverse composition returns the argument at exponent zero.
        let f = basis(3, &[1]);
        let fwd = r_op(&f, false);
        let mut round = FockVector::zero();
        for (e, v) in fwd.iter() {
            let back = r_op(v, true);
            for (e2, v2) in back.iter() {
                assert_eq!(e + e2, 0);
                round = round.add(v2);
            }
        }
        assert_eq!(round, f);
    }

    #[test]
    fn multivariable_column_identity() {
        // Inverse-plus in r variables on b_{m-r}: the z-degree-j part is
        // (-1)^j e_j(z_1..z_r) b_{m-r+j}, elementary symmetric coefficients.
        for m in -1..=1i64 {
            for r in 1..=3usize {
                let base = m - r as i64;
                let mut terms: Vec<(Vec<i64>, ExtVector)> =
                    vec![(vec![], ExtVector::basis(base))];
                for _var in 0..r {
                    let mut next: Vec<(Vec<i64>, ExtVector)> = Vec::new();
                    for (exps, v) in &terms {
                        let s = schubert_ext(SchubertKind::PlusInverse, v, (0, 1)).unwrap();
                        for e in 0..=1i64 {
                            let c = s.coeff(e).unwrap();
                            if !c.is_zero() {
                                let mut es = exps.clone();
                                es.push(e);
                                next.push((es, c));
                            }
                        }
                    }
                    terms = next;
                }
                for (exps, v) in &terms {
                    let j: i64 = exps.iter().sum();
                    let expect =
                        ExtVector::basis(base + j).scale(&int(if j % 2 == 0 { 1 } else { -1 }));
                    assert!(exps.iter().all(|&e| e <= 1), "squarefree in each variable");
                    assert_eq!(v, &expect, "m={m} r={r} exps={exps:?}");
                }
                for j in 0..=r {
                    let count = terms
                        .iter()
                        .filter(|(e, _)| e.iter().sum::<i64>() == j as i64)
                        .count();
                    assert_eq!(count, binomial(r, j), "m={m} r={r} j={j}");
                }
            }
        }
    }

    fn binomial(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        let mut num = 1usize;
        let mut den = 1usize;
        for i in 0..k {
            num *= n - i;
            den *= i + 1;
        }
        num / den
    }

    #[test]
    fn multivariable_vacuum_identity() {
        // b^r_m ^ (inverse-plus in r variables on [b]_{m-r}) = [b]_m:
        // every non-constant coefficient dies against the prefix.
        for m in -1..=1i64 {
            for r in 1..=3usize {
                let (prefix, tail) = FockMonomial::vacuum(m).prefix(r);
                let prefix_v = ExtVector::monomial(prefix, int(1));
                let mut terms: Vec<(Vec<i64>, FockVector)> =
                    vec![(vec![], FockVector::vacuum(tail))];
                for _var in 0..r {
                    let mut next = Vec::new();
                    for (exps, v) in &terms {
                        let s =
                            schubert_fock(SchubertKind::PlusInverse, v, (0, r as i64)).unwrap();
                        for e in 0..=r as i64 {
                            let c = s.coeff(e).unwrap();
                            if !c.is_zero() {
                                let mut es = exps.clone();
                                es.push(e);
                                next.push((es, c));
                            }
                        }
                    }
                    terms = next;
                }
                let mut total: BTreeMap<Vec<i64>, FockVector> = BTreeMap::new();
                for (exps, v) in terms {
                    let wedged = wedge_onto(&prefix_v, &v);
                    if !wedged.is_zero() {
                        let entry = total.entry(exps).or_insert_with(FockVector::zero);
                        *entry = entry.add(&wedged);
                    }
                }
                let nonzero: Vec<_> = total.iter().filter(|(_, v)| !v.is_zero()).collect();
                assert_eq!(nonzero.len(), 1, "m={m} r={r}");
                let (exps, v) = nonzero[0];
                assert!(exps.iter().all(|&e| e == 0));
                assert_eq!(v, &FockVector::vacuum(m));
            }
        }
    }

    #[test]
    fn single_variable_vacuum_identity() {
        // b_m ^ (inverse-plus vacuum series of [b]_{m-1}) = [b]_m.
        for m in -2..=2i64 {
            let s =
                schubert_fock(SchubertKind::PlusInverse, &FockVector::vacuum(m - 1), (0, 4))
                    .unwrap();
            let wedged = s.map(|v| wedge_onto(&ExtVector::basis(m), v));
            assert_eq!(wedged.coeff(0).unwrap(), FockVector::vacuum(m));
            for e in 1..=4 {
                assert!(wedged.coeff(e).unwrap().is_zero(), "m={m} e={e}");
            }
        }
    }
}
