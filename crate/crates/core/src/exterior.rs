//! The exterior algebra `E` on five generators `e_0..e_4` over `F_p`.
//!
//! Basis forms are indexed by subsets of `{0..4}`, encoded as bit masks
//! `0..32`; `e_S` means the ascending wedge of the members of `S`. Wedge is
//! graded-anticommutative. Contraction is the adjoint of left wedge
//! multiplication with respect to the basis pairing, so
//! `contract(a ∧ b, x) = contract(b, contract(a, x))` holds on the nose;
//! this convention is frozen by exhaustive basis tests.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::fp::PrimeField;

/// Ambient dimension of `V`; everything here is the rank-5 case.
pub const DIM: usize = 5;
pub const FULL_MASK: u8 = 0b11111;

/// Sign of `e_S ∧ e_T` relative to `e_{S ∪ T}` for disjoint masks:
/// `+1` for even inversion count, `-1` for odd. Zero overlap is the
/// caller's responsibility.
#[inline]
pub fn wedge_sign(s: u8, t: u8) -> i8 {
    debug_assert_eq!(s & t, 0);
    let mut inversions = 0u32;
    let mut tt = t;
    while tt != 0 {
        let low = tt.trailing_zeros();
        inversions += (s >> (low + 1)).count_ones();
        tt &= tt - 1;
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Masks of a fixed popcount in ascending order; this is the canonical
/// basis order of `Λ^k` used by every dense expansion.
pub fn masks_of_degree(k: usize, dim: usize) -> Vec<u8> {
    (0..(1u8 << dim))
        .filter(|m| m.count_ones() as usize == k)
        .collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// A homogeneous element of `E = Λ V`, `V` five-dimensional.
///
/// Invariant: every stored key has popcount equal to `degree` and a nonzero
/// coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    degree: usize,
    terms: BTreeMap<u8, u64>,
}

impl Form {
    pub fn zero(degree: usize) -> Self {
        assert!(degree <= DIM);
        Form {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(c: u64) -> Self {
        let mut f = Form::zero(0);
        if c != 0 {
            f.terms.insert(0, c);
        }
        f
    }

    pub fn basis(mask: u8) -> Self {
        let mut f = Form::zero(mask.count_ones() as usize);
        f.terms.insert(mask, 1);
        f
    }

    pub fn from_terms(degree: usize, terms: &[(u8, u64)], fp: &PrimeField) -> Self {
        let mut f = Form::zero(degree);
        for &(m, c) in terms {
            assert_eq!(m.count_ones() as usize, degree, "mask degree mismatch");
            f.add_term(m, c, fp);
        }
        f
    }

    /// Degree-1 form with the given coordinates on `e_0..e_4`.
    pub fn linear(coords: &[u64; DIM], fp: &PrimeField) -> Self {
        let mut f = Form::zero(1);
        for (i, &c) in coords.iter().enumerate() {
            f.add_term(1 << i, c % fp.modulus(), fp);
        }
        f
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u8, u64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn coeff(&self, mask: u8) -> u64 {
        self.terms.get(&mask).copied().unwrap_or(0)
    }

    fn add_term(&mut self, mask: u8, c: u64, fp: &PrimeField) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(mask).or_insert(0);
        *e = fp.add(*e, c);
        if *e == 0 {
            self.terms.remove(&mask);
        }
    }

    pub fn add(&self, other: &Form, fp: &PrimeField) -> Form {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c, fp);
        }
        out
    }

    pub fn sub(&self, other: &Form, fp: &PrimeField) -> Form {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, fp.neg(c), fp);
        }
        out
    }

    pub fn scale(&self, c: u64, fp: &PrimeField) -> Form {
        let mut out = Form::zero(self.degree);
        for (m, a) in self.terms() {
            out.add_term(m, fp.mul(a, c), fp);
        }
        out
    }

    pub fn wedge(&self, other: &Form, fp: &PrimeField) -> Form {
        let deg = self.degree + other.degree;
        if deg > DIM {
            return Form::zero(DIM.min(deg));
        }
        let mut out = Form::zero(deg);
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                if ma & mb != 0 {
                    continue;
                }
                let c = fp.mul(ca, cb);
                let c = if wedge_sign(ma, mb) < 0 { fp.neg(c) } else { c };
                out.add_term(ma | mb, c, fp);
            }
        }
        out
    }

    /// Left contraction: the adjoint of `x ↦ self ∧ x` under the basis
    /// pairing. `contract(e_S, e_T) = sign(S, T∖S) · e_{T∖S}` for `S ⊆ T`.
    pub fn contract(&self, target: &Form, fp: &PrimeField) -> Form {
        if self.degree > target.degree {
            return Form::zero(0);
        }
        let deg = target.degree - self.degree;
        let mut out = Form::zero(deg);
        for (ms, cs) in self.terms() {
            for (mt, ct) in target.terms() {
                if ms & mt != ms {
                    continue;
                }
                let rest = mt & !ms;
                let c = fp.mul(cs, ct);
                let c = if wedge_sign(ms, rest) < 0 { fp.neg(c) } else { c };
                out.add_term(rest, c, fp);
            }
        }
        out
    }

    /// Dense coordinates on the canonical basis of `Λ^degree`.
    pub fn coords(&self, dim: usize) -> Vec<u64> {
        let masks = masks_of_degree(self.degree, dim);
        masks.iter().map(|m| self.coeff(*m)).collect()
    }

    pub fn from_coords(degree: usize, coords: &[u64], dim: usize, fp: &PrimeField) -> Form {
        let masks = masks_of_degree(degree, dim);
        assert_eq!(coords.len(), masks.len());
        let mut f = Form::zero(degree);
        for (m, &c) in masks.iter().zip(coords) {
            f.add_term(*m, c % fp.modulus(), fp);
        }
        f
    }

    /// Coordinates of a degree-1 form as a vector in `V`.
    pub fn linear_coords(&self) -> [u64; DIM] {
        assert_eq!(self.degree, 1);
        let mut v = [0u64; DIM];
        for (m, c) in self.terms() {
            v[m.trailing_zeros() as usize] = c;
        }
        v
    }

    /// The skew coefficient matrix `M` of a 2-form `q = Σ q_{ij} e_i ∧ e_j`
    /// (`i < j`), with `M[i][j] = q_{ij}`, `M[j][i] = -q_{ij}`. The rank of
    /// `q` is `rank(M) / 2`; at `p = 2` the matrix is symmetric with zero
    /// diagonal and the same rank computation applies.
    pub fn skew_matrix(&self, fp: &PrimeField) -> crate::matrix::Matrix {
        assert_eq!(self.degree, 2);
        let mut m = crate::matrix::Matrix::zero(DIM, DIM);
        for (mask, c) in self.terms() {
            let i = mask.trailing_zeros() as usize;
            let j = (7 - mask.leading_zeros()) as usize;
            m[(i, j)] = c;
            m[(j, i)] = fp.neg(c);
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp() -> PrimeField {
        PrimeField::new(32003)
    }

    fn all_basis_forms() -> Vec<Form> {
        (0u8..32).map(Form::basis).collect()
    }

    #[test]
    fn square_of_linear_is_zero() {
        let f = fp();
        let e0 = Form::basis(1);
        assert!(e0.wedge(&e0, &f).is_zero());
    }

    #[test]
    fn basis_wedge_case() {
        // e3 ∧ e2 = -e_{23}
        let f = fp();
        let w = Form::basis(0b01000).wedge(&Form::basis(0b00100), &f);
        assert_eq!(w.coeff(0b01100), f.neg(1));
    }

    #[test]
    fn rank_two_square() {
        // (e4∧e3 + e2∧e1)^2 = 2 e1∧e2∧e3∧e4
        let f = fp();
        let q = Form::from_terms(2, &[(0b11000, 1), (0b00110, 1)], &f);
        let sq = q.wedge(&q, &f);
        assert_eq!(sq.coeff(0b11110), 2);
        assert_eq!(sq.terms().count(), 1);
    }

    #[test]
    fn wedge_graded_anticommutative_exhaustive() {
        let f = fp();
        for a in all_basis_forms() {
            for b in all_basis_forms() {
                let ab = a.wedge(&b, &f);
                let ba = b.wedge(&a, &f);
                let sign = (a.degree() * b.degree()) % 2;
                let expect = if sign == 0 { ba.clone() } else { Form::zero(ab.degree()).sub(&ba, &f) };
                assert_eq!(ab, expect);
            }
        }
    }

    #[test]
    fn wedge_associative_exhaustive_on_basis() {
        let f = fp();
        let basis = all_basis_forms();
        for a in &basis {
            for b in &basis {
                for c in basis.iter().step_by(3) {
                    let l = a.wedge(b, &f).wedge(c, &f);
                    let r = a.wedge(&b.wedge(c, &f), &f);
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn contraction_examples() {
        let f = fp();
        let e0 = Form::basis(0b00001);
        let e01 = Form::basis(0b00011);
        let got = e0.contract(&e01, &f);
        assert_eq!(got.coeff(0b00010), 1); // +e1

        let full = e01.contract(&e01, &f);
        assert_eq!(full.coeff(0), 1); // ±1

        // contract(e3∧e2, e0∧e1∧e2∧e3) = ±e0∧e1
        let q = Form::basis(0b01000).wedge(&Form::basis(0b00100), &f);
        let eta = Form::basis(0b01111);
        let got = q.contract(&eta, &f);
        assert_eq!(got.degree(), 2);
        assert!(got.coeff(0b00011) == 1 || got.coeff(0b00011) == f.neg(1));
        assert_eq!(got.terms().count(), 1);
    }

    #[test]
    fn contraction_functorial_exhaustive() {
        // contract(a ∧ b, x) = contract(b, contract(a, x)) on all basis pairs.
        let f = fp();
        let basis = all_basis_forms();
        for a in &basis {
            for b in &basis {
                let ab = a.wedge(b, &f);
                for x in &basis {
                    let lhs = ab.contract(x, &f);
                    let rhs = b.contract(&a.contract(x, &f), &f);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn contraction_adjoint_to_wedge() {
        // <contract(w, x), y> = <x, w ∧ y> for basis triples.
        let f = fp();
        let pair = |u: &Form, v: &Form| -> u64 {
            let mut acc = 0;
            if u.degree() == v.degree() {
                for (m, c) in u.terms() {
                    acc = f.add(acc, f.mul(c, v.coeff(m)));
                }
            }
            acc
        };
        let basis = all_basis_forms();
        for w in &basis {
            for x in &basis {
                for y in &basis {
                    if w.degree() + y.degree() != x.degree() {
                        continue;
                    }
                    assert_eq!(pair(&w.contract(x, &f), y), pair(x, &w.wedge(y, &f)));
                }
            }
        }
    }
}
