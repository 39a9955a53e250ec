//! Buchberger engine over `F_p` with the sugar selection strategy and both
//! of Buchberger's criteria, plus the ideal operations built on it:
//! membership, intersection, quotient, saturation, elimination, Hilbert
//! function and polynomial, initial ideals, and generic initial ideals.
//!
//! Instance sizes here are small (at most six variables, degrees rarely
//! above ten), so a plain Buchberger loop with dense exact arithmetic is the
//! right tool. A step budget guards every computation; exceeding it is
//! reported as an error rather than looping.

use alloc::collections::{BTreeMap, BTreeSet, BinaryHeap};
use alloc::vec::Vec;
use alloc::{vec, format, string::String};
use core::cmp::Reverse;

use crate::matrix::Matrix;
use crate::poly::{Monomial, Order, Poly, PolyRing};
use crate::rng::Stream;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GbError {
    BudgetExceeded,
    GenericityFailure,
    NegativeDegree,
    Unstable(String),
}

impl core::fmt::Display for GbError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            GbError::BudgetExceeded => write!(f, "computation budget exceeded"),
            GbError::GenericityFailure => {
                write!(f, "genericity failure, increase p or trials")
            }
            GbError::NegativeDegree => write!(f, "degree must be nonnegative"),
            GbError::Unstable(s) => write!(f, "{}", s),
        }
    }
}

/// Reduction-step budget for one Groebner run.
#[derive(Clone, Copy, Debug)]
pub struct GbBudget {
    pub max_reductions: u64,
}

impl Default for GbBudget {
    fn default() -> Self {
        GbBudget {
            max_reductions: 4_000_000,
        }
    }
}

/// An ideal given by generators, together with its ring.
#[derive(Clone, Debug)]
pub struct Ideal {
    pub ring: PolyRing,
    pub gens: Vec<Poly>,
}

impl Ideal {
    pub fn new(ring: PolyRing, gens: Vec<Poly>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { ring, gens }
    }

    pub fn unit(ring: PolyRing) -> Self {
        let one = ring.constant(1);
        Ideal::new(ring, vec![one])
    }

    pub fn irrelevant(ring: PolyRing) -> Self {
        let gens = (0..ring.nvars).map(|i| ring.variable(i)).collect();
        Ideal::new(ring, gens)
    }

    pub fn groebner(&self, budget: GbBudget) -> Result<Gb, GbError> {
        buchberger(&self.ring, &self.gens, budget)
    }
}

/// A reduced Groebner basis (monic, autoreduced, sorted by leading term).
#[derive(Clone, Debug, PartialEq)]
pub struct Gb {
    pub ring: PolyRing,
    pub polys: Vec<Poly>,
}

fn reduce_full(ring: &PolyRing, f: &Poly, basis: &[Poly], steps: &mut u64) -> Poly {
    let fp = ring.field;
    let mut rem = f.clone();
    let mut out: Vec<(Monomial, u64)> = Vec::new();
    'outer: while let Some((lm, lc)) = rem.lead() {
        *steps += 1;
        for g in basis {
            let (gm, gc) = match g.lead() {
                Some(t) => t,
                None => continue,
            };
            if gm.divides(&lm) {
                let q = lm.div(&gm).unwrap();
                let c = fp.div(lc, gc);
                rem = ring.sub(&rem, &ring.mul_term(g, &q, c));
                continue 'outer;
            }
        }
        out.push((lm, lc));
        // drop the leading term and keep reducing the tail
        rem.terms.remove(0);
    }
    ring.from_terms(&out)
}

/// Top-reduction only; used inside the pair loop.
fn reduce_top(ring: &PolyRing, f: &Poly, basis: &[Poly], steps: &mut u64) -> Poly {
    let fp = ring.field;
    let mut rem = f.clone();
    'outer: while let Some((lm, lc)) = rem.lead() {
        *steps += 1;
        for g in basis {
            let (gm, gc) = match g.lead() {
                Some(t) => t,
                None => continue,
            };
            if gm.divides(&lm) {
                let q = lm.div(&gm).unwrap();
                let c = fp.div(lc, gc);
                rem = ring.sub(&rem, &ring.mul_term(g, &q, c));
                continue 'outer;
            }
        }
        return rem;
    }
    rem
}

pub fn buchberger(ring: &PolyRing, gens: &[Poly], budget: GbBudget) -> Result<Gb, GbError> {
    let fp = ring.field;
    let mut steps: u64 = 0;
    let mut basis: Vec<Poly> = Vec::new();
    let mut sugars: Vec<u32> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            basis.push(ring.monic(g));
            sugars.push(g.degree());
        }
    }
    // (sugar, lcm, i, j) min-heap via Reverse; ties broken by indices for
    // run-to-run determinism.
    type PairHeap = BinaryHeap<Reverse<(u32, u32, usize, usize)>>;
    fn push_pairs(heap: &mut PairHeap, basis: &[Poly], sugars: &[u32], j: usize) {
        for i in 0..j {
            if basis[i].is_zero() {
                continue;
            }
            let li = basis[i].lead_monomial();
            let lj = basis[j].lead_monomial();
            let lcm = li.lcm(&lj);
            let s = (sugars[i] + lcm.degree() - li.degree())
                .max(sugars[j] + lcm.degree() - lj.degree());
            heap.push(Reverse((s, lcm.degree(), i, j)));
        }
    }
    let mut heap: PairHeap = BinaryHeap::new();
    for j in 0..basis.len() {
        push_pairs(&mut heap, &basis, &sugars, j);
    }
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();

    while let Some(Reverse((sugar, _, i, j))) = heap.pop() {
        if steps > budget.max_reductions {
            return Err(GbError::BudgetExceeded);
        }
        done.insert((i, j));
        if basis[i].is_zero() || basis[j].is_zero() {
            continue;
        }
        let li = basis[i].lead_monomial();
        let lj = basis[j].lead_monomial();
        // product criterion
        if li.coprime(&lj) {
            continue;
        }
        let lcm = li.lcm(&lj);
        // chain criterion
        let mut chained = false;
        for k in 0..basis.len() {
            if k == i || k == j || basis[k].is_zero() {
                continue;
            }
            if basis[k].lead_monomial().divides(&lcm)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
            {
                chained = true;
                break;
            }
        }
        if chained {
            continue;
        }
        let qi = lcm.div(&li).unwrap();
        let qj = lcm.div(&lj).unwrap();
        let s = ring.sub(
            &ring.mul_term(&basis[i], &qi, 1),
            &ring.mul_term(&basis[j], &qj, 1),
        );
        let red = reduce_top(ring, &s, &basis, &mut steps);
        if !red.is_zero() {
            let monic = ring.monic(&red);
            basis.push(monic);
            sugars.push(sugar);
            push_pairs(&mut heap, &basis, &sugars, basis.len() - 1);
        }
    }
    let _ = fp;

    // autoreduce to the reduced basis
    let mut kept: Vec<Poly> = basis.into_iter().filter(|g| !g.is_zero()).collect();
    kept.sort_unstable_by(|a, b| ring.cmp(&a.lead_monomial(), &b.lead_monomial()));
    let mut reduced: Vec<Poly> = Vec::new();
    for idx in 0..kept.len() {
        let lm = kept[idx].lead_monomial();
        let redundant = kept
            .iter()
            .enumerate()
            .any(|(k, g)| k != idx && !g.is_zero() && g.lead_monomial().divides(&lm)
                && (g.lead_monomial() != lm || k < idx));
        if !redundant {
            reduced.push(kept[idx].clone());
        }
    }
    let snapshot = reduced.clone();
    let mut final_polys = Vec::new();
    for (idx, g) in snapshot.iter().enumerate() {
        let others: Vec<Poly> = snapshot
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != idx)
            .map(|(_, p)| p.clone())
            .collect();
        let r = reduce_full(ring, g, &others, &mut steps);
        if !r.is_zero() {
            final_polys.push(ring.monic(&r));
        }
    }
    final_polys.sort_unstable_by(|a, b| ring.cmp(&b.lead_monomial(), &a.lead_monomial()));
    Ok(Gb {
        ring: *ring,
        polys: final_polys,
    })
}

impl Gb {
    pub fn normal_form(&self, f: &Poly) -> Poly {
        let mut steps = 0;
        reduce_full(&self.ring, f, &self.polys, &mut steps)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.polys.iter().any(|g| g.lead_monomial().is_one())
    }

    /// Minimal generators of the initial ideal.
    pub fn lead_monomials(&self) -> Vec<Monomial> {
        let mut leads: Vec<Monomial> = self.polys.iter().map(|g| g.lead_monomial()).collect();
        leads.sort_unstable();
        minimalize_monomials(&mut leads);
        leads
    }

    /// Dimension of the degree-`n` piece of the quotient `S/I`, computed by
    /// counting standard monomials of the initial ideal.
    pub fn hilbert_function(&self, n: i64) -> Result<usize, GbError> {
        if n < 0 {
            return Err(GbError::NegativeDegree);
        }
        let leads = self.lead_monomials();
        let count = self
            .ring
            .monomials_of_degree(n as u32)
            .iter()
            .filter(|m| !leads.iter().any(|l| l.divides(m)))
            .count();
        Ok(count)
    }

    /// Exact Hilbert polynomial by Newton interpolation on five consecutive
    /// degrees past the generators, with a stabilization check one degree
    /// further out.
    pub fn hilbert_polynomial(&self) -> Result<HilbertPoly, GbError> {
        let r = self
            .polys
            .iter()
            .map(|g| g.degree())
            .max()
            .unwrap_or(0) as i64
            + 3;
        let vals: Vec<i64> = (r..r + 6)
            .map(|n| self.hilbert_function(n).map(|v| v as i64))
            .collect::<Result<_, _>>()?;
        let hp = HilbertPoly::interpolate(r, &vals[..5]);
        if hp.eval(r + 5) != vals[5] {
            return Err(GbError::Unstable(String::from(
                "hilbert polynomial did not stabilize",
            )));
        }
        Ok(hp)
    }

    /// Graded piece of the ideal as dense row vectors in degree `d`.
    pub fn graded_piece(&self, d: u32) -> Matrix {
        let basis = self.ring.graded_basis(d);
        let mut rows = Vec::new();
        for g in &self.polys {
            let gd = g.degree();
            if gd > d {
                continue;
            }
            for m in self.ring.monomials_of_degree(d - gd) {
                let prod = self.ring.mul_term(g, &m, 1);
                rows.push(self.ring.to_dense(&prod, d, &basis));
            }
        }
        let m = Matrix::from_rows(rows, basis.len());
        m.row_basis(&self.ring.field)
    }
}

fn minimalize_monomials(gens: &mut Vec<Monomial>) {
    let snapshot = gens.clone();
    gens.retain(|m| {
        !snapshot
            .iter()
            .any(|g| g != m && g.divides(m))
    });
    gens.dedup();
}

/// Integer-valued polynomial in Newton form around a base degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertPoly {
    pub base: i64,
    pub diffs: Vec<i64>,
}

impl HilbertPoly {
    pub fn interpolate(base: i64, values: &[i64]) -> Self {
        let mut table: Vec<Vec<i64>> = vec![values.to_vec()];
        while table.last().unwrap().len() > 1 {
            let prev = table.last().unwrap();
            let next: Vec<i64> = prev.windows(2).map(|w| w[1] - w[0]).collect();
            table.push(next);
        }
        let mut diffs: Vec<i64> = table.iter().map(|row| row[0]).collect();
        while diffs.len() > 1 && *diffs.last().unwrap() == 0 {
            diffs.pop();
        }
        HilbertPoly { base, diffs }
    }

    pub fn eval(&self, n: i64) -> i64 {
        let x = n - self.base;
        let mut acc = 0i64;
        for (k, &d) in self.diffs.iter().enumerate() {
            let mut binom = 1i64;
            for i in 0..k as i64 {
                binom = binom * (x - i) / (i as i64 + 1);
            }
            acc += d * binom;
        }
        acc
    }

    /// Degree of the polynomial = dimension of the projective scheme.
    pub fn degree(&self) -> usize {
        self.diffs.len() - 1
    }

    /// Coefficients as exact rationals `(numerator, denominator)` from the
    /// constant term up.
    pub fn coefficients(&self) -> Vec<(i64, i64)> {
        // expand sum_k d_k * C(n - base, k) in powers of n with exact i128s
        let deg = self.degree();
        let mut num = vec![0i128; deg + 1];
        let mut den = 1i128;
        for (k, &d) in self.diffs.iter().enumerate() {
            // C(x, k) = x(x-1)...(x-k+1)/k!, x = n - base
            let mut poly = vec![0i128; k + 1];
            poly[0] = 1;
            let mut cur_deg = 0;
            for i in 0..k as i128 {
                // multiply by (x - i) where x = n - base
                let shift = -(self.base as i128) - i;
                let mut next = vec![0i128; cur_deg + 2];
                for (j, &c) in poly.iter().take(cur_deg + 1).enumerate() {
                    next[j + 1] += c;
                    next[j] += c * shift;
                }
                poly = next;
                cur_deg += 1;
            }
            let mut kfact = 1i128;
            for i in 1..=k as i128 {
                kfact *= i;
            }
            // accumulate d * poly / k! over common denominator
            let new_den = lcm_i128(den, kfact);
            for c in num.iter_mut() {
                *c *= new_den / den;
            }
            for (j, &c) in poly.iter().enumerate() {
                num[j] += d as i128 * c * (new_den / kfact);
            }
            den = new_den;
        }
        num.iter()
            .map(|&n| {
                let g = gcd_i128(n.unsigned_abs() as i128, den).max(1);
                ((n / g) as i64, (den / g) as i64)
            })
            .collect()
    }

    /// For a surface in P^4: `(degree, sectional genus, chi)` read off the
    /// quadratic Hilbert polynomial `d/2 n^2 - (2π-2-d)/2 n + χ`.
    pub fn surface_invariants(&self) -> Option<(i64, i64, i64)> {
        if self.degree() != 2 {
            return None;
        }
        let c = self.coefficients();
        let d = 2 * c[2].0 / c[2].1;
        // a1 = d/2 - π + 1, so π = d/2 - a1 + 1 with a1 = c[1]
        let pi_num = d * c[1].1 - 2 * c[1].0 + 2 * c[1].1;
        let pi = pi_num / (2 * c[1].1);
        let chi = c[0].0 / c[0].1;
        Some((d, pi, chi))
    }

    /// For a curve: `(degree, arithmetic genus)` from `d n + 1 - g`.
    pub fn curve_invariants(&self) -> Option<(i64, i64)> {
        if self.degree() != 1 {
            return None;
        }
        let c = self.coefficients();
        let d = c[1].0 / c[1].1;
        let g = 1 - c[0].0 / c[0].1;
        Some((d, g))
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn lcm_i128(a: i128, b: i128) -> i128 {
    a / gcd_i128(a, b) * b
}

// ---------------------------------------------------------------------------
// ideal operations
// ---------------------------------------------------------------------------

/// Intersection of two ideals via the `t` trick: eliminate `t` from
/// `t·I + (1-t)·J`.
pub fn intersect(a: &Ideal, b: &Ideal, budget: GbBudget) -> Result<Ideal, GbError> {
    let ring = a.ring;
    let ext = PolyRing::new(ring.nvars + 1, Order::ElimLast, ring.field);
    let t = ext.variable(ring.nvars);
    let one_minus_t = ext.sub(&ext.constant(1), &t);
    let lift = |p: &Poly| ext.resort(p);
    let mut gens = Vec::new();
    for g in &a.gens {
        gens.push(ext.mul(&lift(g), &t));
    }
    for g in &b.gens {
        gens.push(ext.mul(&lift(g), &one_minus_t));
    }
    let gb = buchberger(&ext, &gens, budget)?;
    let kept: Vec<Poly> = gb
        .polys
        .iter()
        .filter(|g| g.terms.iter().all(|(m, _)| m.exps[ring.nvars] == 0))
        .map(|g| ring.resort(g))
        .collect();
    Ok(Ideal::new(ring, kept))
}

/// `(I : f)` computed as `(I ∩ (f)) / f`.
pub fn quotient_by_poly(i: &Ideal, f: &Poly, budget: GbBudget) -> Result<Ideal, GbError> {
    let ring = i.ring;
    let inter = intersect(i, &Ideal::new(ring, vec![f.clone()]), budget)?;
    let gens = inter
        .gens
        .iter()
        .map(|g| ring.exact_div(g, f))
        .collect();
    Ok(Ideal::new(ring, gens))
}

/// `(I : J) = ∩_k (I : f_k)` over the generators of `J`.
pub fn ideal_quotient(i: &Ideal, j: &Ideal, budget: GbBudget) -> Result<Ideal, GbError> {
    let mut acc: Option<Ideal> = None;
    for f in &j.gens {
        let q = quotient_by_poly(i, f, budget)?;
        acc = Some(match acc {
            None => q,
            Some(prev) => intersect(&prev, &q, budget)?,
        });
    }
    Ok(acc.unwrap_or_else(|| Ideal::unit(i.ring)))
}

/// `(I : J^∞)` by iterating the quotient until it stabilizes.
pub fn saturate(i: &Ideal, j: &Ideal, budget: GbBudget) -> Result<Ideal, GbError> {
    let mut cur = i.clone();
    let mut cur_gb = cur.groebner(budget)?;
    loop {
        let next = ideal_quotient(&cur, j, budget)?;
        let next_gb = next.groebner(budget)?;
        if next_gb.polys == cur_gb.polys {
            return Ok(Ideal::new(i.ring, cur_gb.polys));
        }
        cur = next;
        cur_gb = next_gb;
    }
}

pub fn saturate_irrelevant(i: &Ideal, budget: GbBudget) -> Result<Ideal, GbError> {
    saturate(i, &Ideal::irrelevant(i.ring), budget)
}

/// Monomial ideal output of `gin`, always minimalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    pub nvars: usize,
    pub gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(nvars: usize, mut gens: Vec<Monomial>) -> Self {
        gens.sort_unstable();
        minimalize_monomials(&mut gens);
        MonomialIdeal { nvars, gens }
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_one())
    }

    /// Borel-fixedness in the operative sense: a member divisible by a
    /// variable stays a member after swapping that variable for the next
    /// larger one.
    pub fn is_borel_fixed(&self) -> bool {
        for g in &self.gens {
            for v in 1..self.nvars {
                if g.exps[v] > 0 {
                    let mut m = *g;
                    m.exps[v] -= 1;
                    m.exps[v - 1] += 1;
                    if !self.contains(&m) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Saturate with respect to the revlex-last variable by stripping its
    /// powers from every generator.
    pub fn saturate_last(&self) -> MonomialIdeal {
        let last = self.nvars - 1;
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut m = *g;
                m.exps[last] = 0;
                m
            })
            .collect();
        MonomialIdeal::new(self.nvars, gens)
    }
}

/// Generic initial ideal: the initial ideal after a random coordinate
/// change, repeated with independent changes until two trials agree.
pub fn gin(
    i: &Ideal,
    trials: usize,
    seed: u64,
    budget: GbBudget,
) -> Result<MonomialIdeal, GbError> {
    let ring = i.ring;
    let fp = ring.field;
    let mut rng = Stream::new(seed, "gin", 0);
    let sample = |rng: &mut Stream| -> Result<MonomialIdeal, GbError> {
        let g = loop {
            let mut m = Matrix::zero(ring.nvars, ring.nvars);
            for r in 0..ring.nvars {
                for c in 0..ring.nvars {
                    m[(r, c)] = rng.field_element(&fp);
                }
            }
            if m.rank(&fp) == ring.nvars {
                break m;
            }
        };
        let gens: Vec<Poly> = i.gens.iter().map(|p| ring.linear_change(p, &g)).collect();
        let gb = buchberger(&ring, &gens, budget)?;
        Ok(MonomialIdeal::new(ring.nvars, gb.lead_monomials()))
    };
    let mut prev = sample(&mut rng)?;
    for _ in 1..trials.max(2) {
        let next = sample(&mut rng)?;
        if next == prev {
            return Ok(prev);
        }
        prev = next;
    }
    Err(GbError::GenericityFailure)
}

/// Smoothness certificate by the Jacobian criterion: the singular locus of
/// `V(I)` (rank of the Jacobian below `codim`) is empty iff `I` plus enough
/// minors is irrelevant-primary. Minors are fed incrementally in random
/// order; any sub-collection already certifying emptiness ends the run.
pub fn singular_locus_empty(
    i: &Ideal,
    codim: usize,
    seed: u64,
    budget: GbBudget,
) -> Result<Option<bool>, GbError> {
    let ring = i.ring;
    let gens = &i.gens;
    let rows: Vec<Vec<Poly>> = (0..ring.nvars)
        .map(|v| gens.iter().map(|g| ring.derivative(g, v)).collect())
        .collect();
    let nv = ring.nvars;
    let ng = gens.len();
    let mut minor_index: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let row_sets = subsets_of_size(nv, codim);
    let col_sets = subsets_of_size(ng, codim);
    for rs in &row_sets {
        for cs in &col_sets {
            minor_index.push((rs.clone(), cs.clone()));
        }
    }
    let mut rng = Stream::new(seed, "jacobian-minors", 0);
    // deterministic shuffle
    for k in (1..minor_index.len()).rev() {
        let j = rng.below(k as u64 + 1) as usize;
        minor_index.swap(k, j);
    }
    let mut current = i.gens.clone();
    let mut gb = buchberger(&ring, &current, budget).ok();
    let batch = 8usize.max(minor_index.len() / 16);
    for chunk in minor_index.chunks(batch) {
        for (rs, cs) in chunk {
            let m = minor_poly(&ring, &rows, rs, cs);
            if !m.is_zero() {
                current.push(m);
            }
        }
        gb = match buchberger(&ring, &current, budget) {
            Ok(g) => Some(g),
            Err(GbError::BudgetExceeded) => return Ok(None),
            Err(e) => return Err(e),
        };
        if let Some(g) = &gb {
            if is_irrelevant_primary(g) {
                return Ok(Some(true));
            }
        }
    }
    match gb {
        Some(g) => Ok(Some(is_irrelevant_primary(&g))),
        None => Ok(None),
    }
}

/// The initial ideal contains a pure power of every variable iff the
/// projective zero locus is empty.
pub fn is_irrelevant_primary(gb: &Gb) -> bool {
    let leads = gb.lead_monomials();
    (0..gb.ring.nvars).all(|v| {
        leads.iter().any(|m| {
            m.exps[v] > 0 && (0..gb.ring.nvars).all(|w| w == v || m.exps[w] == 0)
        })
    })
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn minor_poly(ring: &PolyRing, rows: &[Vec<Poly>], rs: &[usize], cs: &[usize]) -> Poly {
    // Laplace expansion; codim here is at most 2 so this stays tiny.
    match rs.len() {
        1 => rows[rs[0]][cs[0]].clone(),
        2 => {
            let a = ring.mul(&rows[rs[0]][cs[0]], &rows[rs[1]][cs[1]]);
            let b = ring.mul(&rows[rs[0]][cs[1]], &rows[rs[1]][cs[0]]);
            ring.sub(&a, &b)
        }
        k => {
            let mut acc = ring.zero();
            for (idx, &c) in cs.iter().enumerate() {
                let sub_rs = &rs[1..];
                let sub_cs: Vec<usize> = cs
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != idx)
                    .map(|(_, &x)| x)
                    .collect();
                let sub = minor_poly(ring, rows, sub_rs, &sub_cs);
                let term = ring.mul(&rows[rs[0]][c], &sub);
                acc = if idx % 2 == 0 {
                    ring.add(&acc, &term)
                } else {
                    ring.sub(&acc, &term)
                };
            }
            let _ = k;
            acc
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::PrimeField;

    fn ring(n: usize) -> PolyRing {
        PolyRing::grevlex(n, PrimeField::new(32003))
    }

    fn budget() -> GbBudget {
        GbBudget::default()
    }

    #[test]
    fn principal_ideal_gb() {
        let r = ring(3);
        let f = r.from_terms(&[
            (Monomial::from_exps(&[2, 0, 0]), 3),
            (Monomial::from_exps(&[0, 1, 1]), 5),
        ]);
        let gb = buchberger(&r, &[f.clone()], budget()).unwrap();
        assert_eq!(gb.polys.len(), 1);
        assert_eq!(gb.polys[0], r.monic(&f));
    }

    #[test]
    fn duplicate_generator_collapses() {
        let r = ring(5);
        let x0 = r.variable(0);
        let gb = buchberger(&r, &[x0.clone(), x0.clone()], budget()).unwrap();
        assert_eq!(gb.polys, alloc::vec![x0]);
    }

    fn random_linear_matrix(
        r: &PolyRing,
        rows: usize,
        cols: usize,
        seed: u64,
    ) -> Vec<Vec<Poly>> {
        let mut rng = Stream::new(seed, "linear-matrix", 0);
        (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| {
                        let terms: Vec<(Monomial, u64)> = (0..r.nvars)
                            .map(|v| (Monomial::var(v), rng.field_element(&r.field)))
                            .collect();
                        r.from_terms(&terms)
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn twisted_cubic_from_2x3_minors() {
        // 2x2 minors of a generic 2x3 matrix of linear forms in 4 variables
        // define a curve with Hilbert polynomial 3n + 1.
        let r = ring(4);
        let m = random_linear_matrix(&r, 2, 3, 11);
        let mut gens = Vec::new();
        for c1 in 0..3 {
            for c2 in c1 + 1..3 {
                let a = r.mul(&m[0][c1], &m[1][c2]);
                let b = r.mul(&m[0][c2], &m[1][c1]);
                gens.push(r.sub(&a, &b));
            }
        }
        let gb = buchberger(&r, &gens, budget()).unwrap();
        let hp = gb.hilbert_polynomial().unwrap();
        assert_eq!(hp.degree(), 1);
        assert_eq!(hp.curve_invariants(), Some((3, 0)));
        for n in 1..6 {
            assert_eq!(hp.eval(n), 3 * n + 1);
        }
    }

    #[test]
    fn bordiga_from_3x4_minors() {
        // 3x3 minors of a generic 3x4 matrix of linear forms in 5 variables:
        // a surface with Hilbert polynomial 3n^2 + n + 1.
        let r = ring(5);
        let m = random_linear_matrix(&r, 3, 4, 23);
        let mut gens = Vec::new();
        for drop in 0..4 {
            let cols: Vec<usize> = (0..4).filter(|&c| c != drop).collect();
            let rows: Vec<Vec<Poly>> = m.clone();
            let rs = [0, 1, 2];
            let term = |i: usize, j: usize| rows[rs[i]][cols[j]].clone();
            let mut det = r.zero();
            // 3x3 determinant
            let perms: [([usize; 3], bool); 6] = [
                ([0, 1, 2], true),
                ([1, 2, 0], true),
                ([2, 0, 1], true),
                ([2, 1, 0], false),
                ([0, 2, 1], false),
                ([1, 0, 2], false),
            ];
            for (p, pos) in perms {
                let prod = r.mul(&r.mul(&term(0, p[0]), &term(1, p[1])), &term(2, p[2]));
                det = if pos { r.add(&det, &prod) } else { r.sub(&det, &prod) };
            }
            gens.push(det);
        }
        let gb = buchberger(&r, &gens, budget()).unwrap();
        let hp = gb.hilbert_polynomial().unwrap();
        assert_eq!(hp.surface_invariants(), Some((6, 3, 1)));
        assert_eq!(gb.hilbert_function(4).unwrap(), 3 * 16 + 4 + 1);
    }

    #[test]
    fn zero_ideal_hilbert() {
        let r = ring(5);
        let gb = buchberger(&r, &[], budget()).unwrap();
        assert_eq!(gb.hilbert_function(4).unwrap(), 70);
        assert!(gb.hilbert_function(-1).is_err());
    }

    #[test]
    fn membership_random_combinations() {
        let r = ring(4);
        let m = random_linear_matrix(&r, 2, 3, 31);
        let mut gens = Vec::new();
        for c1 in 0..3 {
            for c2 in c1 + 1..3 {
                let a = r.mul(&m[0][c1], &m[1][c2]);
                let b = r.mul(&m[0][c2], &m[1][c1]);
                gens.push(r.sub(&a, &b));
            }
        }
        let gb = buchberger(&r, &gens, budget()).unwrap();
        let mut rng = Stream::new(77, "membership", 0);
        for _ in 0..5 {
            let mut f = r.zero();
            for g in &gens {
                let lin: Vec<(Monomial, u64)> = (0..4)
                    .map(|v| (Monomial::var(v), rng.field_element(&r.field)))
                    .collect();
                f = r.add(&f, &r.mul(g, &r.from_terms(&lin)));
            }
            assert!(gb.contains(&f));
        }
        // a random cubic is almost surely not in the ideal
        let ms = r.monomials_of_degree(3);
        let f = r.from_terms(
            &ms.iter()
                .map(|m| (*m, rng.field_element(&r.field)))
                .collect::<Vec<_>>(),
        );
        assert!(!gb.contains(&f));
    }

    #[test]
    fn quotient_and_saturation_basics() {
        let r = ring(3);
        let x0 = r.variable(0);
        let x1 = r.variable(1);
        let i = Ideal::new(r, alloc::vec![r.mul(&x0, &x1)]);
        let q = ideal_quotient(&i, &Ideal::new(r, alloc::vec![x0.clone()]), budget()).unwrap();
        let qgb = q.groebner(budget()).unwrap();
        assert_eq!(qgb.polys, alloc::vec![x1.clone()]);

        // saturating a saturated ideal is a fixed point
        let sat = saturate_irrelevant(&Ideal::new(r, alloc::vec![x1.clone()]), budget()).unwrap();
        let sgb = sat.groebner(budget()).unwrap();
        assert_eq!(sgb.polys, alloc::vec![x1.clone()]);

        // adding a power of the irrelevant ideal then saturating recovers I
        let mut gens = alloc::vec![x1.clone()];
        for v in 0..3 {
            let mut m = Monomial::one();
            m.exps[v] = 3;
            gens.push(r.from_terms(&[(m, 1)]));
        }
        let sat2 = saturate_irrelevant(&Ideal::new(r, gens), budget()).unwrap();
        let s2gb = sat2.groebner(budget()).unwrap();
        assert_eq!(s2gb.polys, alloc::vec![x1]);
    }

    #[test]
    fn hilbert_function_matches_initial_ideal() {
        // H(I, n) computed from the initial ideal agrees with a direct
        // dimension count of the graded pieces.
        let r = ring(4);
        let m = random_linear_matrix(&r, 2, 3, 47);
        let mut gens = Vec::new();
        for c1 in 0..3 {
            for c2 in c1 + 1..3 {
                let a = r.mul(&m[0][c1], &m[1][c2]);
                let b = r.mul(&m[0][c2], &m[1][c1]);
                gens.push(r.sub(&a, &b));
            }
        }
        let gb = buchberger(&r, &gens, budget()).unwrap();
        for n in 0..8u32 {
            let dim_in_ideal = gb.graded_piece(n).rows;
            let total = r.dim_of_degree(n);
            assert_eq!(
                gb.hilbert_function(n as i64).unwrap(),
                total - dim_in_ideal
            );
        }
    }

    #[test]
    fn gin_of_borel_fixed_ideal_is_itself() {
        let r = ring(3);
        // (a^4, a^3 b, a^2 b^3)
        let gens = alloc::vec![
            r.from_terms(&[(Monomial::from_exps(&[4, 0, 0]), 1)]),
            r.from_terms(&[(Monomial::from_exps(&[3, 1, 0]), 1)]),
            r.from_terms(&[(Monomial::from_exps(&[2, 3, 0]), 1)]),
        ];
        let i = Ideal::new(r, gens);
        let g = gin(&i, 4, 9, budget()).unwrap();
        assert!(g.is_borel_fixed());
        assert_eq!(
            g.gens,
            alloc::vec![
                Monomial::from_exps(&[2, 3, 0]),
                Monomial::from_exps(&[3, 1, 0]),
                Monomial::from_exps(&[4, 0, 0]),
            ]
        );
    }

    #[test]
    fn gin_of_unit_ideal() {
        let r = ring(3);
        let i = Ideal::unit(r);
        let g = gin(&i, 3, 1, budget()).unwrap();
        assert!(g.is_unit());
    }

    #[test]
    fn smooth_quadric_has_empty_singular_locus() {
        let r = ring(5);
        // x0 x1 - x2 x3 + x4^2: a rank-5 quadric, smooth in P^4
        let q = r.from_terms(&[
            (Monomial::from_exps(&[1, 1, 0, 0, 0]), 1),
            (Monomial::from_exps(&[0, 0, 1, 1, 0]), 32002),
            (Monomial::from_exps(&[0, 0, 0, 0, 2]), 1),
        ]);
        let i = Ideal::new(r, alloc::vec![q]);
        assert_eq!(singular_locus_empty(&i, 1, 5, budget()).unwrap(), Some(true));
    }

    #[test]
    fn nonreduced_ideal_is_singular() {
        let r = ring(5);
        let gens = alloc::vec![
            r.from_terms(&[(Monomial::from_exps(&[2, 0, 0, 0, 0]), 1)]),
            r.from_terms(&[(Monomial::from_exps(&[1, 1, 0, 0, 0]), 1)]),
        ];
        let i = Ideal::new(r, gens);
        assert_eq!(
            singular_locus_empty(&i, 1, 5, budget()).unwrap(),
            Some(false)
        );
    }
}
