//! The polynomial ring of symmetric functions in the Schur basis, with a
//! charge grading, and the boson-fermion dictionary.
//!
//! Elements are stored as `zeta^m sum c_lambda S_lambda` where `S_lambda`
//! is the Schur determinant `det(h_{lambda_j - j + i})` in the complete
//! homogeneous generators `h_j` (`h_j = 0` for `j < 0`, `h_0 = 1`).
//! Multiplication by `h_i` is the Pieri rule (horizontal strips), computed
//! combinatorially; it is the independent oracle for the Fock-side shift
//! action under the correspondence `[b]_{m+lambda} <-> zeta^m S_lambda`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::Result;
use crate::exterior::SchubertKind;
use crate::fock::{FockMonomial, FockVector};
use crate::partitions::Partition;
use crate::series::{convolve, Coeff, LaurentSeries};

/// `zeta^charge` times an integer combination of Schur basis elements.
///
/// A single charge per value; the zero vector stores charge 0.  Sums of
/// distinct charges are not representable and panic, matching how every
/// operation in this crate acts charge component by charge component.
#[derive(Clone, PartialEq, Eq)]
pub struct ChargedSchur {
    charge: i64,
    terms: BTreeMap<Partition, BigInt>,
}

impl ChargedSchur {
    pub fn zero() -> Self {
        ChargedSchur {
            charge: 0,
            terms: BTreeMap::new(),
        }
    }

    /// `zeta^charge S_lambda`.
    pub fn basis(charge: i64, shape: Partition) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(shape, BigInt::from(1));
        ChargedSchur { charge, terms }
    }

    /// The unit `zeta^charge S_empty`.
    pub fn one(charge: i64) -> Self {
        ChargedSchur::basis(charge, Partition::empty())
    }

    pub fn from_terms(charge: i64, terms: impl IntoIterator<Item = (Partition, BigInt)>) -> Self {
        let mut out = ChargedSchur {
            charge,
            terms: BTreeMap::new(),
        };
        for (p, c) in terms {
            out.add_term(p, &c);
        }
        out
    }

    pub fn charge(&self) -> i64 {
        self.charge
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, shape: Partition, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(shape.clone()).or_insert_with(|| BigInt::ZERO);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&shape);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(
            self.charge, other.charge,
            "charged Schur vectors add charge-wise"
        );
        let mut out = self.clone();
        for (p, c) in other.terms() {
            out.add_term(p.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        ChargedSchur {
            charge: self.charge,
            terms: self.terms.iter().map(|(p, c)| (p.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return ChargedSchur::zero();
        }
        ChargedSchur {
            charge: self.charge,
            terms: self.terms.iter().map(|(p, c)| (p.clone(), c * k)).collect(),
        }
    }

    pub fn shift_charge(&self, k: i64) -> Self {
        ChargedSchur {
            charge: self.charge + k,
            terms: self.terms.clone(),
        }
    }

    pub fn weight_bound(&self) -> i64 {
        self.terms.keys().map(|p| p.weight()).max().unwrap_or(0)
    }
}

impl fmt::Display for ChargedSchur {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.charge != 0 {
            write!(f, "Z^{}*(", self.charge)?;
        }
        crate::json::fmt_terms(f, self.terms.iter().map(|(p, c)| (format!("S{p}"), c)))?;
        if self.charge != 0 {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ChargedSchur {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Coeff for ChargedSchur {
    fn zero() -> Self {
        ChargedSchur::zero()
    }
    fn is_zero(&self) -> bool {
        ChargedSchur::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        ChargedSchur::add(self, other)
    }
    fn neg(&self) -> Self {
        ChargedSchur::neg(self)
    }
    fn scale(&self, k: &BigInt) -> Self {
        ChargedSchur::scale(self, k)
    }
}

/// All partitions obtained from `shape` by adding a horizontal strip of
/// `boxes` boxes (no two added boxes in the same column).
fn horizontal_strips(shape: &Partition, boxes: i64) -> Vec<Partition> {
    let rows = shape.len() + 1;
    let mut out = Vec::new();
    let mut cur: Vec<i64> = Vec::new();
    fn rec(
        shape: &Partition,
        row: usize,
        rows: usize,
        left: i64,
        cur: &mut Vec<i64>,
        out: &mut Vec<Partition>,
    ) {
        if row > rows {
            if left == 0 {
                out.push(Partition::from_valid(
                    cur.iter().copied().filter(|&p| p > 0).collect(),
                ));
            }
            return;
        }
        // mu_row ranges between lambda_row and lambda_{row-1} (unbounded for
        // the first row), never exceeding the remaining box budget.
        let base = shape.part(row);
        let cap = if row == 1 {
            base + left
        } else {
            shape.part(row - 1).min(base + left)
        };
        for mu in (base..=cap).rev() {
            cur.push(mu);
            rec(shape, row + 1, rows, left - (mu - base), cur, out);
            cur.pop();
        }
    }
    rec(shape, 1, rows, boxes, &mut cur, &mut out);
    out
}

/// Multiplication by `h_i` in the Schur basis (Pieri rule); the charge is
/// unchanged.
pub fn h_mult(i: i64, s: &ChargedSchur) -> ChargedSchur {
    assert!(i >= 0, "h indices are non-negative");
    if i == 0 {
        return s.clone();
    }
    let mut out = ChargedSchur {
        charge: s.charge,
        terms: BTreeMap::new(),
    };
    for (shape, c) in s.terms() {
        for mu in horizontal_strips(shape, i) {
            out.add_term(mu, c);
        }
    }
    out
}

/// Expands the monomial `h_{i_1} ... h_{i_k}` in the Schur basis by
/// iterated Pieri multiplication, starting from the unit.
pub fn h_monomial_to_schur(exponents: &[i64]) -> ChargedSchur {
    let mut acc = ChargedSchur::one(0);
    for &i in exponents {
        if i < 0 {
            return ChargedSchur::zero();
        }
        acc = h_mult(i, &acc);
    }
    acc
}

/// The elementary generator `e_k = S_{(1^k)}` (the column shape), the
/// unique solution of the `E(z) H(z) = 1` convolution.
pub fn elementary(k: i64) -> ChargedSchur {
    assert!(k >= 0, "e indices are non-negative");
    ChargedSchur::basis(0, Partition::column(k as usize))
}

/// Signed `h`-monomial expansion of the Schur determinant
/// `det(h_{lambda_i - i + j})`: permutation terms with negative indices
/// vanish and `h_0 = 1` drops out of the monomial.
pub fn jacobi_trudi_h_expansion(shape: &Partition) -> Vec<(i8, Vec<i64>)> {
    let r = shape.len();
    if r == 0 {
        return vec![(1, Vec::new())];
    }
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..r).collect();
    permute_signed(&mut perm, 0, 1, &mut |p, sign| {
        let mut mono = Vec::new();
        for (i0, &pi0) in p.iter().enumerate() {
            let idx = shape.part(i0 + 1) - (i0 as i64 + 1) + (pi0 as i64 + 1);
            if idx < 0 {
                return;
            }
            if idx > 0 {
                mono.push(idx);
            }
        }
        mono.sort_unstable();
        out.push((sign, mono));
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

/// Product in the Schur basis: the right factor is expanded into
/// `h`-monomials through its Jacobi-Trudi determinant and multiplied in by
/// iterated Pieri steps.  Charges add.
pub fn schur_mul(a: &ChargedSchur, b: &ChargedSchur) -> ChargedSchur {
    let mut out = ChargedSchur {
        charge: a.charge + b.charge,
        terms: BTreeMap::new(),
    };
    for (shape, cb) in b.terms() {
        for (sign, mono) in jacobi_trudi_h_expansion(shape) {
            let mut acc = ChargedSchur {
                charge: out.charge,
                terms: a.terms.clone(),
            };
            for &i in &mono {
                acc = h_mult(i, &acc);
            }
            let factor = cb * BigInt::from(sign);
            for (p, c) in acc.terms() {
                out.add_term(p.clone(), &(c * &factor));
            }
        }
    }
    out
}

/// `h`-polynomial: transient coefficient type for determinant expansions
/// over series (a signed sum of `h`-index multisets).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
struct HPoly {
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl HPoly {
    fn one() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), BigInt::from(1));
        HPoly { terms }
    }

    fn generator(n: i64) -> Self {
        let mut terms = BTreeMap::new();
        if n >= 0 {
            let mono = if n == 0 { Vec::new() } else { vec![n] };
            terms.insert(mono, BigInt::from(1));
        }
        HPoly { terms }
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = HPoly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut m = ma.clone();
                m.extend_from_slice(mb);
                m.sort_unstable();
                let entry = out.terms.entry(m.clone()).or_insert_with(|| BigInt::ZERO);
                *entry += ca * cb;
                if entry.is_zero() {
                    out.terms.remove(&m);
                }
            }
        }
        out
    }

    fn to_schur(&self, charge: i64) -> ChargedSchur {
        let mut out = ChargedSchur {
            charge,
            terms: BTreeMap::new(),
        };
        for (mono, c) in &self.terms {
            let expanded = h_monomial_to_schur(mono);
            for (p, cc) in expanded.terms() {
                out.add_term(p.clone(), &(cc * c));
            }
        }
        out
    }
}

impl Coeff for HPoly {
    fn zero() -> Self {
        HPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let entry = out.terms.entry(m.clone()).or_insert_with(|| BigInt::ZERO);
            *entry += c;
            if entry.is_zero() {
                out.terms.remove(m);
            }
        }
        out
    }
    fn neg(&self) -> Self {
        HPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
    fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return HPoly::default();
        }
        HPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }
}

/// Image of the generator `h_n` under the minus-direction derivations:
/// `h_n - h_{n-1} z^{-1}` for the inverse kind, `sum_{j>=0} h_{n-j} z^{-j}`
/// for the plain kind (`h` of negative index is zero).
fn minus_generator_series(kind: SchubertKind, n: i64) -> LaurentSeries<HPoly> {
    match kind {
        SchubertKind::MinusInverse => LaurentSeries::from_terms([
            (0, HPoly::generator(n)),
            (-1, HPoly::generator(n - 1).neg()),
        ]),
        SchubertKind::Minus => LaurentSeries::from_terms(
            (0..=n.max(0)).map(|j| (-j, HPoly::generator(n - j))),
        ),
        _ => panic!("only the minus-direction derivations act on the Schur side"),
    }
}

/// The minus-direction Schubert derivations as ring endomorphism series of
/// the Schur ring: every entry of the Jacobi-Trudi determinant is replaced
/// by its image series, the determinant is expanded over series
/// coefficients, and the result is converted back to the Schur basis.
pub fn sigma_minus_b(
    kind: SchubertKind,
    s: &ChargedSchur,
    window: (i64, i64),
) -> Result<LaurentSeries<ChargedSchur>> {
    assert!(
        matches!(kind, SchubertKind::Minus | SchubertKind::MinusInverse),
        "only the minus-direction derivations act on the Schur side"
    );
    let mut out: LaurentSeries<ChargedSchur> = LaurentSeries::zero();
    for (shape, c) in s.terms() {
        let r = shape.len() as i64;
        let weight = shape.weight();
        let mut det: LaurentSeries<HPoly> = if r == 0 {
            LaurentSeries::monomial(0, HPoly::one())
        } else {
            LaurentSeries::zero()
        };
        let mut perm: Vec<usize> = (0..r as usize).collect();
        let mut res: Result<()> = Ok(());
        permute_signed(&mut perm, 0, 1, &mut |p, sign| {
            if res.is_err() || p.is_empty() {
                return;
            }
            let mut prod: LaurentSeries<HPoly> =
                LaurentSeries::monomial(0, HPoly::one().scale(&BigInt::from(sign)));
            for (i0, &pi0) in p.iter().enumerate() {
                // column pi0+1, row i0+1 of det(h_{lambda_j - j + i})
                let idx = shape.part(pi0 + 1) - (pi0 as i64 + 1) + (i0 as i64 + 1);
                let entry = minus_generator_series(kind, idx);
                match convolve(&prod, &entry, (-weight - r, 0), |a, b| a.mul(b)) {
                    Ok(next) => prod = next,
                    Err(e) => {
                        res = Err(e);
                        return;
                    }
                }
            }
            det = det.add(&prod);
        });
        res?;
        let schur_series = det.map(|hp| hp.to_schur(s.charge)).scale(c);
        out = out.add(&schur_series.truncate(window.0, window.1));
    }
    Ok(out)
}

/// Charge components of a Fock vector read through the correspondence
/// `[b]_{m+lambda} <-> zeta^m S_lambda`.
pub fn to_boson(f: &FockVector) -> Vec<ChargedSchur> {
    f.charge_components()
        .into_iter()
        .map(|(charge, comp)| {
            let mut out = ChargedSchur {
                charge,
                terms: BTreeMap::new(),
            };
            for (mono, c) in comp.terms() {
                out.add_term(mono.shape.clone(), c);
            }
            out
        })
        .collect()
}

/// The homogeneous piece of `to_boson` for a single-charge vector.
pub fn to_boson_homogeneous(f: &FockVector) -> ChargedSchur {
    let comps = to_boson(f);
    match comps.len() {
        0 => ChargedSchur::zero(),
        1 => comps.into_iter().next().unwrap(),
        _ => panic!("mixed-charge vector has no single bosonic component"),
    }
}

/// Inverse correspondence.
pub fn to_fermion(s: &ChargedSchur) -> FockVector {
    let mut out = FockVector::zero();
    for (shape, c) in s.terms() {
        out.add_term(FockMonomial::new(s.charge, shape.clone()), c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::sigma_fock;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn part(parts: &[i64]) -> Partition {
        Partition::new(parts.iter().copied()).unwrap()
    }

    fn schur(parts: &[i64]) -> ChargedSchur {
        ChargedSchur::basis(0, part(parts))
    }

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn pieri_examples() {
        let expect = schur(&[2]).add(&schur(&[1, 1]));
        assert_eq!(h_mult(1, &schur(&[1])), expect);

        assert_eq!(h_mult(2, &schur(&[])), schur(&[2]));
        assert_eq!(h_mult(0, &schur(&[3, 1])), schur(&[3, 1]));
    }

    #[test]
    fn h_monomial_examples() {
        assert_eq!(
            h_monomial_to_schur(&[2, 1]),
            schur(&[3]).add(&schur(&[2, 1]))
        );
        assert_eq!(h_monomial_to_schur(&[]), schur(&[]));
        assert_eq!(
            h_monomial_to_schur(&[1, 1]),
            schur(&[2]).add(&schur(&[1, 1]))
        );
    }

    #[test]
    fn elementary_examples() {
        assert_eq!(elementary(0), schur(&[]));
        assert_eq!(elementary(1), schur(&[1]));
        assert_eq!(elementary(2), schur(&[1, 1]));
        // convolution oracle: h_2 - e_1 h_1 + e_2 = 0
        let conv = h_monomial_to_schur(&[2])
            .add(&schur_mul(&elementary(1), &h_monomial_to_schur(&[1])).neg())
            .add(&elementary(2));
        assert!(conv.is_zero());
    }

    #[test]
    fn eh_convolution_vanishes() {
        // sum_k (-1)^k e_k h_{n-k} = 0 for n = 1..=8
        for n in 1..=8i64 {
            let mut acc = ChargedSchur::zero();
            for k in 0..=n {
                let term = schur_mul(&elementary(k), &h_monomial_to_schur(&[n - k]));
                let sign = if k % 2 == 0 { 1 } else { -1 };
                acc = acc.add(&term.scale(&int(sign)));
            }
            assert!(acc.is_zero(), "n={n}");
        }
    }

    #[test]
    fn jacobi_trudi_expansion_is_consistent() {
        // Re-summing the h-expansion through Pieri returns the Schur basis
        // vector itself.
        for shape in Partition::enumerate_bounded(6, 4) {
            let mut acc = ChargedSchur::zero();
            for (sign, mono) in jacobi_trudi_h_expansion(&shape) {
                acc = acc.add(&h_monomial_to_schur(&mono).scale(&int(sign as i64)));
            }
            assert_eq!(acc, ChargedSchur::basis(0, shape.clone()), "shape {shape}");
        }
    }

    #[test]
    fn boson_fermion_round_trip() {
        let f = FockVector::basis(-1, part(&[4]))
            .scale(&int(3))
            .add(&FockVector::vacuum(-1).neg());
        let comps = to_boson(&f);
        assert_eq!(comps.len(), 1);
        assert_eq!(to_fermion(&comps[0]), f);

        assert_eq!(
            to_fermion(&ChargedSchur::one(3)),
            FockVector::vacuum(3)
        );
        assert_eq!(
            to_boson_homogeneous(&FockVector::basis(0, part(&[2, 1]))),
            schur(&[2, 1])
        );
    }

    #[test]
    fn pieri_matches_fock_shift_action() {
        // h_i u = sigma_i(u) under the correspondence.
        for m in -1..=1i64 {
            for shape in Partition::enumerate_bounded(4, 3) {
                let f = FockVector::basis(m, shape.clone());
                for i in 0..=4i64 {
                    let fock_side = to_boson_homogeneous(&sigma_fock(i, &f));
                    let boson_side = h_mult(i, &to_boson_homogeneous(&f));
                    assert_eq!(fock_side, boson_side, "m={m} shape={shape} i={i}");
                }
            }
        }
    }

    #[test]
    fn minus_derivation_examples() {
        // inverse kind on h_2: S(2) - S(1) z^{-1}
        let s = sigma_minus_b(SchubertKind::MinusInverse, &schur(&[2]), (-1, 0)).unwrap();
        assert_eq!(s.coeff(0).unwrap(), schur(&[2]));
        assert_eq!(s.coeff(-1).unwrap(), schur(&[1]).neg());

        // plain kind on h_1: S(1) + S() z^{-1}, nothing at z^{-2}
        let s = sigma_minus_b(SchubertKind::Minus, &schur(&[1]), (-2, 0)).unwrap();
        assert_eq!(s.coeff(0).unwrap(), schur(&[1]));
        assert_eq!(s.coeff(-1).unwrap(), schur(&[]));
        assert!(s.coeff(-2).unwrap().is_zero());

        // constants are fixed
        let s = sigma_minus_b(SchubertKind::MinusInverse, &schur(&[]), (-3, 0)).unwrap();
        assert_eq!(s.coeff(0).unwrap(), schur(&[]));
        for k in -3..0 {
            assert!(s.coeff(k).unwrap().is_zero());
        }
    }

    #[test]
    fn minus_derivations_are_ring_homomorphisms() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let shapes = Partition::enumerate_bounded(4, 3);
        for _ in 0..12 {
            let pick = |rng: &mut ChaCha8Rng| {
                let mut v = ChargedSchur::zero();
                for _ in 0..2 {
                    let p = shapes[rng.gen_range(0..shapes.len())].clone();
                    v = v.add(&ChargedSchur::from_terms(
                        0,
                        [(p, int(rng.gen_range(-2..=2)))],
                    ));
                }
                v
            };
            let s = pick(&mut rng);
            let t = pick(&mut rng);
            for kind in [SchubertKind::Minus, SchubertKind::MinusInverse] {
                let win = (-6i64, 0i64);
                let lhs = sigma_minus_b(kind, &schur_mul(&s, &t), win).unwrap();
                let ss = sigma_minus_b(kind, &s, win).unwrap();
                let st = sigma_minus_b(kind, &t, win).unwrap();
                let rhs = convolve(&ss, &st, win, |a, b| schur_mul(a, b)).unwrap();
                assert!(lhs.eq_on(&rhs, win.0, win.1).unwrap(), "kind {kind:?}");
            }
        }
    }

    #[test]
    fn determinants_commute_with_minus_derivations() {
        // Entrywise determinant evaluation equals the Fock-side action
        // transported through the correspondence.
        use crate::fock::schubert_fock;
        for shape in Partition::enumerate_bounded(5, 3) {
            let s = ChargedSchur::basis(0, shape.clone());
            for kind in [SchubertKind::Minus, SchubertKind::MinusInverse] {
                let win = (-(shape.weight().max(1)), 0);
                let boson_side = sigma_minus_b(kind, &s, win).unwrap();
                let fock_side = schubert_fock(kind, &to_fermion(&s), win)
                    .unwrap()
                    .map(to_boson_homogeneous);
                assert!(
                    boson_side.eq_on(&fock_side, win.0, win.1).unwrap(),
                    "shape {shape} kind {kind:?}"
                );
            }
        }
    }

    #[test]
    fn schur_product_is_commutative_small() {
        let shapes = Partition::enumerate_bounded(4, 2);
        for a in &shapes {
            for b in &shapes {
                let sa = ChargedSchur::basis(0, a.clone());
                let sb = ChargedSchur::basis(0, b.clone());
                assert_eq!(schur_mul(&sa, &sb), schur_mul(&sb, &sa), "{a} {b}");
            }
        }
    }
}
