//! Multivariate polynomials over `F_p` with graded pieces.
//!
//! A ring context fixes the variable count and the monomial order; terms are
//! kept sorted in descending order. Variables are declared largest-first, so
//! in the three-variable ring `a, b, c` the order is graded reverse
//! lexicographic with leading terms drawn from `a`, then `b`, and `c`
//! reverse-lex smallest — the convention under which generic initial ideals
//! of saturated ideals are monomial ideals in `a, b` alone.
//!
//! `ElimLast` is the product order that makes the last variable an
//! elimination variable (used for ideal intersections via the `t` trick).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use alloc::{format, string::String, vec};
use core::cmp::Ordering;

use crate::fp::PrimeField;
use crate::matrix::Matrix;

pub const MAX_VARS: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    pub exps: [u8; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: [0; MAX_VARS] }
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::one();
        m.exps[i] = 1;
        m
    }

    pub fn from_exps(exps: &[u8]) -> Self {
        let mut m = Monomial::one();
        m.exps[..exps.len()].copy_from_slice(exps);
        m
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] += other.exps[i];
        }
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = m.exps[i].checked_sub(other.exps[i])?;
        }
        Some(m)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = m.exps[i].max(other.exps[i]);
        }
        m
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Order {
    /// Graded reverse lexicographic, first variable largest.
    GrevLex,
    /// Degree in the last variable first, then grevlex on the others:
    /// an elimination order for the last variable.
    ElimLast,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolyRing {
    pub nvars: usize,
    pub order: Order,
    pub field: PrimeField,
}

impl PolyRing {
    pub fn new(nvars: usize, order: Order, field: PrimeField) -> Self {
        assert!(nvars <= MAX_VARS);
        PolyRing { nvars, order, field }
    }

    pub fn grevlex(nvars: usize, field: PrimeField) -> Self {
        PolyRing::new(nvars, Order::GrevLex, field)
    }

    fn grevlex_cmp(&self, a: &Monomial, b: &Monomial, upto: usize) -> Ordering {
        let da: u32 = a.exps[..upto].iter().map(|&e| e as u32).sum();
        let db: u32 = b.exps[..upto].iter().map(|&e| e as u32).sum();
        match da.cmp(&db) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..upto).rev() {
            match a.exps[i].cmp(&b.exps[i]) {
                Ordering::Equal => {}
                // smaller exponent in the revlex-last position wins
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.order {
            Order::GrevLex => self.grevlex_cmp(a, b, self.nvars),
            Order::ElimLast => {
                let last = self.nvars - 1;
                match a.exps[last].cmp(&b.exps[last]) {
                    Ordering::Equal => self.grevlex_cmp(a, b, last),
                    o => o,
                }
            }
        }
    }

    /// All monomials of total degree `d`, descending in the ring order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = Monomial::one();
        self.enumerate_rec(0, d, &mut cur, &mut out);
        out.sort_unstable_by(|a, b| self.cmp(b, a));
        out
    }

    fn enumerate_rec(&self, var: usize, rem: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if var == self.nvars - 1 {
            cur.exps[var] = rem as u8;
            out.push(*cur);
            cur.exps[var] = 0;
            return;
        }
        for e in 0..=rem {
            cur.exps[var] = e as u8;
            self.enumerate_rec(var + 1, rem - e, cur, out);
        }
        cur.exps[var] = 0;
    }

    pub fn dim_of_degree(&self, d: u32) -> usize {
        crate::exterior::binomial((d as usize) + self.nvars - 1, self.nvars - 1)
    }

    pub fn zero(&self) -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn constant(&self, c: u64) -> Poly {
        let c = c % self.field.modulus();
        if c == 0 {
            self.zero()
        } else {
            Poly {
                terms: vec![(Monomial::one(), c)],
            }
        }
    }

    pub fn variable(&self, i: usize) -> Poly {
        assert!(i < self.nvars);
        Poly {
            terms: vec![(Monomial::var(i), 1)],
        }
    }

    pub fn from_terms(&self, terms: &[(Monomial, u64)]) -> Poly {
        let mut map: BTreeMap<Monomial, u64> = BTreeMap::new();
        for &(m, c) in terms {
            let c = c % self.field.modulus();
            let e = map.entry(m).or_insert(0);
            *e = self.field.add(*e, c);
        }
        self.from_map(map)
    }

    fn from_map(&self, map: BTreeMap<Monomial, u64>) -> Poly {
        let mut terms: Vec<(Monomial, u64)> =
            map.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_unstable_by(|a, b| self.cmp(&b.0, &a.0));
        Poly { terms }
    }

    /// Re-sorts a polynomial that was built under a different order.
    pub fn resort(&self, p: &Poly) -> Poly {
        let mut terms = p.terms.clone();
        terms.sort_unstable_by(|a, b| self.cmp(&b.0, &a.0));
        Poly { terms }
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let mut map: BTreeMap<Monomial, u64> = a.terms.iter().copied().collect();
        for &(m, c) in &b.terms {
            let e = map.entry(m).or_insert(0);
            *e = self.field.add(*e, c);
        }
        self.from_map(map)
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        let mut map: BTreeMap<Monomial, u64> = a.terms.iter().copied().collect();
        for &(m, c) in &b.terms {
            let e = map.entry(m).or_insert(0);
            *e = self.field.sub(*e, c);
        }
        self.from_map(map)
    }

    pub fn scale(&self, a: &Poly, c: u64) -> Poly {
        let c = c % self.field.modulus();
        if c == 0 {
            return self.zero();
        }
        Poly {
            terms: a
                .terms
                .iter()
                .map(|&(m, x)| (m, self.field.mul(x, c)))
                .collect(),
        }
    }

    pub fn mul_term(&self, a: &Poly, m: &Monomial, c: u64) -> Poly {
        let c = c % self.field.modulus();
        if c == 0 {
            return self.zero();
        }
        Poly {
            terms: a
                .terms
                .iter()
                .map(|&(am, ac)| (am.mul(m), self.field.mul(ac, c)))
                .collect(),
        }
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let mut map: BTreeMap<Monomial, u64> = BTreeMap::new();
        for &(ma, ca) in &a.terms {
            for &(mb, cb) in &b.terms {
                let m = ma.mul(&mb);
                let e = map.entry(m).or_insert(0);
                *e = (*e + ca * cb) % self.field.modulus();
            }
        }
        self.from_map(map)
    }

    pub fn monic(&self, a: &Poly) -> Poly {
        match a.lead() {
            None => self.zero(),
            Some((_, c)) => self.scale(a, self.field.inv(c)),
        }
    }

    pub fn evaluate(&self, a: &Poly, point: &[u64]) -> u64 {
        let f = &self.field;
        let mut acc = 0u64;
        for &(m, c) in &a.terms {
            let mut t = c;
            for i in 0..self.nvars {
                for _ in 0..m.exps[i] {
                    t = f.mul(t, point[i] % f.modulus());
                }
            }
            acc = f.add(acc, t);
        }
        acc
    }

    pub fn derivative(&self, a: &Poly, var: usize) -> Poly {
        let mut terms = Vec::new();
        for &(m, c) in &a.terms {
            let e = m.exps[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m;
            m2.exps[var] -= 1;
            terms.push((m2, self.field.mul(c, e as u64)));
        }
        self.from_terms(&terms)
    }

    /// Substitute `images[i]` (a polynomial in `dst`) for variable `i`.
    pub fn substitute(&self, a: &Poly, dst: &PolyRing, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let mut acc = dst.zero();
        for &(m, c) in &a.terms {
            let mut t = dst.constant(c);
            for i in 0..self.nvars {
                for _ in 0..m.exps[i] {
                    t = dst.mul(&t, &images[i]);
                }
            }
            acc = dst.add(&acc, &t);
        }
        acc
    }

    /// Apply an invertible linear change of coordinates `x_i ↦ Σ_j g[i][j] x_j`.
    pub fn linear_change(&self, a: &Poly, g: &Matrix) -> Poly {
        let images: Vec<Poly> = (0..self.nvars)
            .map(|i| {
                let terms: Vec<(Monomial, u64)> = (0..self.nvars)
                    .map(|j| (Monomial::var(j), g[(i, j)]))
                    .collect();
                self.from_terms(&terms)
            })
            .collect();
        self.substitute(a, self, &images)
    }

    /// Exact division by a polynomial known to divide `a`; panics otherwise.
    pub fn exact_div(&self, a: &Poly, b: &Poly) -> Poly {
        let mut rem = a.clone();
        let mut q = Vec::new();
        let (bm, bc) = b.lead().expect("division by zero polynomial");
        let bc_inv = self.field.inv(bc);
        while let Some((rm, rc)) = rem.lead() {
            let m = rm
                .div(&bm)
                .expect("exact_div: leading term does not divide");
            let c = self.field.mul(rc, bc_inv);
            q.push((m, c));
            rem = self.sub(&rem, &self.mul_term(b, &m, c));
        }
        self.from_terms(&q)
    }

    /// Dense coordinates of a homogeneous polynomial of degree `d` on the
    /// canonical descending monomial basis.
    pub fn to_dense(&self, a: &Poly, d: u32, basis: &GradedBasis) -> Vec<u64> {
        let mut v = vec![0u64; basis.monomials.len()];
        for &(m, c) in &a.terms {
            assert_eq!(m.degree(), d, "polynomial not homogeneous of degree {}", d);
            v[basis.index(&m)] = c;
        }
        v
    }

    pub fn graded_basis(&self, d: u32) -> GradedBasis {
        let monomials = self.monomials_of_degree(d);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (*m, i))
            .collect();
        GradedBasis { monomials, index }
    }

    pub fn render(&self, a: &Poly, names: &[&str]) -> String {
        if a.is_zero() {
            return String::from("0");
        }
        let mut parts = Vec::new();
        for &(m, c) in &a.terms {
            let mut s = String::new();
            if c != 1 || m.is_one() {
                s.push_str(&format!("{}", c));
            }
            for i in 0..self.nvars {
                match m.exps[i] {
                    0 => {}
                    1 => {
                        if !s.is_empty() && !s.ends_with('*') {
                            s.push('*');
                        }
                        s.push_str(names[i]);
                    }
                    e => {
                        if !s.is_empty() && !s.ends_with('*') {
                            s.push('*');
                        }
                        s.push_str(&format!("{}^{}", names[i], e));
                    }
                }
            }
            parts.push(s);
        }
        parts.join(" + ")
    }
}

/// Monomial basis of one graded piece with index lookup.
pub struct GradedBasis {
    pub monomials: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
}

impl GradedBasis {
    pub fn index(&self, m: &Monomial) -> usize {
        self.index[m]
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

/// Terms sorted descending in the owning ring's order; no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub terms: Vec<(Monomial, u64)>,
}

impl Poly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<(Monomial, u64)> {
        self.terms.first().copied()
    }

    pub fn lead_monomial(&self) -> Monomial {
        self.terms[0].0
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.degree();
                self.terms.iter().all(|(mm, _)| mm.degree() == d)
            }
        }
    }
}
