//! The exterior algebra of the free abelian group on basis `b_i`, `i` an
//! integer: sparse wedge monomials, contraction against the restricted dual,
//! and the four Schubert derivations.
//!
//! A wedge monomial is a strictly decreasing index tuple; the empty monomial
//! is the unit of the algebra.  Vectors are finitely supported integer
//! combinations of monomials and may mix degrees.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::Result;
use crate::series::{convolve, Coeff, LaurentSeries, Window, NEG_INF, POS_INF};

/// `b_{i_1} ^ b_{i_2} ^ ... ^ b_{i_r}` with `i_1 > i_2 > ... > i_r`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WedgeMonomial {
    indices: Vec<i64>,
}

impl WedgeMonomial {
    /// The unit `1` of the exterior algebra.
    pub fn one() -> Self {
        WedgeMonomial { indices: Vec::new() }
    }

    /// Builds a monomial from strictly decreasing indices.
    pub fn new(indices: Vec<i64>) -> Self {
        assert!(
            indices.windows(2).all(|w| w[0] > w[1]),
            "wedge monomial indices must be strictly decreasing"
        );
        WedgeMonomial { indices }
    }

    pub fn single(i: i64) -> Self {
        WedgeMonomial { indices: vec![i] }
    }

    pub fn indices(&self) -> &[i64] {
        &self.indices
    }

    pub fn degree(&self) -> usize {
        self.indices.len()
    }
}

impl fmt::Display for WedgeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.indices.is_empty() {
            return write!(f, "1");
        }
        for (k, i) in self.indices.iter().enumerate() {
            if k > 0 {
                write!(f, "^")?;
            }
            write!(f, "b_{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for WedgeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Result of antisymmetry normalisation: a signed monomial, or zero when an
/// index repeats.
pub enum Normalized {
    Zero,
    Term(i8, WedgeMonomial),
}

/// Sorts indices into strictly decreasing order, tracking the sign of the
/// permutation; a repeated index collapses the product to zero.
pub fn normalize_wedge(indices: &[i64]) -> Normalized {
    let mut v = indices.to_vec();
    let mut sign = 1i8;
    // Insertion sort keeps the transposition count exact at these sizes.
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] < v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return Normalized::Zero;
    }
    Normalized::Term(sign, WedgeMonomial { indices: v })
}

/// A finitely supported integer combination of wedge monomials.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ExtVector {
    terms: BTreeMap<WedgeMonomial, BigInt>,
}

impl ExtVector {
    pub fn zero() -> Self {
        ExtVector::default()
    }

    /// The unit `1` of the algebra.
    pub fn one() -> Self {
        ExtVector::monomial(WedgeMonomial::one(), BigInt::from(1))
    }

    pub fn basis(i: i64) -> Self {
        ExtVector::monomial(WedgeMonomial::single(i), BigInt::from(1))
    }

    pub fn monomial(m: WedgeMonomial, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        ExtVector { terms }
    }

    /// Signed monomial from an unsorted index list.
    pub fn wedge_of(indices: &[i64]) -> Self {
        match normalize_wedge(indices) {
            Normalized::Zero => ExtVector::zero(),
            Normalized::Term(s, m) => ExtVector::monomial(m, BigInt::from(s)),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WedgeMonomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: WedgeMonomial, c: &BigInt) {
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
        ExtVector {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return ExtVector::zero();
        }
        ExtVector {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// The degree-`r` graded component.
    pub fn graded(&self, r: usize) -> Self {
        ExtVector {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == r)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Maximum degree among the stored monomials (`None` for zero).
    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Smallest basis index appearing in any monomial.
    pub fn min_index(&self) -> Option<i64> {
        self.terms
            .keys()
            .filter_map(|m| m.indices.last().copied())
            .min()
    }
}

impl fmt::Display for ExtVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::json::fmt_terms(f, self.terms.iter().map(|(m, c)| (m.to_string(), c)))
    }
}

impl fmt::Debug for ExtVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Coeff for ExtVector {
    fn zero() -> Self {
        ExtVector::zero()
    }
    fn is_zero(&self) -> bool {
        ExtVector::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        ExtVector::add(self, other)
    }
    fn neg(&self) -> Self {
        ExtVector::neg(self)
    }
    fn scale(&self, k: &BigInt) -> Self {
        ExtVector::scale(self, k)
    }
}

/// Bilinear exterior product.
pub fn wedge(u: &ExtVector, v: &ExtVector) -> ExtVector {
    let mut out = ExtVector::zero();
    for (mu, cu) in u.terms() {
        for (mv, cv) in v.terms() {
            let mut idx = mu.indices.clone();
            idx.extend_from_slice(&mv.indices);
            match normalize_wedge(&idx) {
                Normalized::Zero => {}
                Normalized::Term(s, m) => {
                    out.add_term(m, &(cu * cv * BigInt::from(s)));
                }
            }
        }
    }
    out
}

/// A finitely supported element of the restricted dual, `sum c_j beta_j`.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct DualVector {
    terms: BTreeMap<i64, BigInt>,
}

impl DualVector {
    pub fn basis(j: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(j, BigInt::from(1));
        DualVector { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut map = BTreeMap::new();
        for (j, c) in terms {
            if !c.is_zero() {
                let e = map.entry(j).or_insert_with(|| BigInt::ZERO);
                *e += c;
                if e.is_zero() {
                    map.remove(&j);
                }
            }
        }
        DualVector { terms: map }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&j, c)| (j, c))
    }
}

/// Contraction `beta -| u`.
///
/// On a monomial, `beta_j` removes the factor `b_j` (if present) at position
/// `k` with sign `(-1)^(k-1)`; this is the unique convention satisfying
/// `eta(beta -| u) = (beta ^ eta)(u)` for the determinant pairing.
pub fn contract(beta: &DualVector, u: &ExtVector) -> ExtVector {
    let mut out = ExtVector::zero();
    for (j, cb) in beta.terms() {
        for (m, cu) in u.terms() {
            if let Some(pos) = m.indices.iter().position(|&i| i == j) {
                let mut idx = m.indices.clone();
                idx.remove(pos);
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                out.add_term(
                    WedgeMonomial { indices: idx },
                    &(cb * cu * BigInt::from(sign)),
                );
            }
        }
    }
    out
}

/// The four Schubert derivations.
///
/// `Plus` shifts indices up with non-negative exponents, `Minus` shifts down
/// with non-positive ones; the `*Inverse` kinds are their formal inverses,
/// acting on a basis element as `b_j - b_{j+1} z` and `b_j - b_{j-1} z^{-1}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SchubertKind {
    Plus,
    Minus,
    PlusInverse,
    MinusInverse,
}

impl SchubertKind {
    /// Exponent support of the derivation as an operator series.
    pub fn op_support(self) -> (i64, i64) {
        match self {
            SchubertKind::Plus | SchubertKind::PlusInverse => (0, POS_INF),
            SchubertKind::Minus | SchubertKind::MinusInverse => (NEG_INF, 0),
        }
    }

    pub fn is_plus(self) -> bool {
        matches!(self, SchubertKind::Plus | SchubertKind::PlusInverse)
    }
}

/// The series of a Schubert derivation applied to `b_j`, exact on `lo..=hi`.
fn factor_series(kind: SchubertKind, j: i64, lo: i64, hi: i64) -> LaurentSeries<ExtVector> {
    match kind {
        SchubertKind::Plus => LaurentSeries::with_window(
            (0.max(lo)..=hi).map(|i| (i, ExtVector::basis(j + i))),
            Window::with_support(lo, hi, 0, POS_INF),
        ),
        SchubertKind::Minus => LaurentSeries::with_window(
            (lo..=0.min(hi)).map(|i| (i, ExtVector::basis(j + i))),
            Window::with_support(lo, hi, NEG_INF, 0),
        ),
        SchubertKind::PlusInverse => LaurentSeries::from_terms([
            (0, ExtVector::basis(j)),
            (1, ExtVector::basis(j + 1).neg()),
        ]),
        SchubertKind::MinusInverse => LaurentSeries::from_terms([
            (0, ExtVector::basis(j)),
            (-1, ExtVector::basis(j - 1).neg()),
        ]),
    }
}

/// Applies a Schubert derivation to an exterior vector, exactly on `window`.
///
/// The derivation acts multiplicatively across wedge factors, so the result
/// is the Leibniz convolution of the per-factor series; each factor is
/// internally truncated to the window bound, which keeps every requested
/// coefficient exact.
pub fn schubert_ext(
    kind: SchubertKind,
    u: &ExtVector,
    window: (i64, i64),
) -> Result<LaurentSeries<ExtVector>> {
    let (lo, hi) = window;
    let mut out = LaurentSeries::zero();
    for (m, c) in u.terms() {
        let mut acc = LaurentSeries::monomial(0, ExtVector::one().scale(c));
        for &j in m.indices() {
            let factor = factor_series(kind, j, lo.min(0), hi.max(0));
            acc = convolve(&acc, &factor, (lo.min(0), hi.max(0)), wedge)?;
        }
        out = out.add(&acc.truncate(lo, hi));
    }
    Ok(out)
}

/// The degree-`i` coefficient operator of the Schubert derivations
/// (`sigma_i b_j = b_{i+j}`); negative `i` reads the minus-direction series.
pub fn sigma_ext(i: i64, u: &ExtVector) -> ExtVector {
    let kind = if i >= 0 {
        SchubertKind::Plus
    } else {
        SchubertKind::Minus
    };
    schubert_ext(kind, u, (i, i))
        .and_then(|s| s.coeff(i))
        .expect("single-coefficient Schubert window is always exact")
}

/// Determinant pairing `det(beta_{i_a}(b_{j_b}))` of a dual wedge against a
/// wedge monomial.  Serves as the independent oracle for contraction signs.
pub fn dual_pairing(betas: &[i64], m: &WedgeMonomial) -> BigInt {
    let n = betas.len();
    if n != m.degree() {
        return BigInt::ZERO;
    }
    let mut total = BigInt::ZERO;
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        let mut sign = 1i64;
        for a in 0..n {
            for b in (a + 1)..n {
                if p[a] > p[b] {
                    sign = -sign;
                }
            }
        }
        let hit = p
            .iter()
            .enumerate()
            .all(|(a, &pa)| betas[a] == m.indices[pa]);
        if hit {
            total += BigInt::from(sign);
        }
    });
    total
}

fn permute(v: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        visit(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, visit);
        v.swap(k, i);
    }
}
