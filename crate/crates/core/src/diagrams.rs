//! Staircase diagrams of generic initial ideals in `K[a,b,c]`.
//!
//! A saturated monomial ideal in three variables is recorded by marking,
//! for each column `i`, which `a^i b^j` lie in the ideal (an `x`) and which
//! do not (a `0`). The diagram stores the column of zeros heights: `d`
//! all-zero columns first (the curve degree), then a strictly decreasing
//! tail of finite heights whose total is the point degree `e`. Rendering
//! uses a bottom-left origin: row `j = 0` is printed last.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::groebner::MonomialIdeal;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GinDiagram {
    /// Number of leading all-zero columns (`d(I)`); `usize::MAX` encodes the
    /// zero ideal.
    pub all_zero_cols: usize,
    /// Zero counts of the remaining columns, strictly decreasing to zero.
    pub heights: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagramError {
    NotSaturated,
    NotBorelFixed,
    NotMonotone,
}

impl core::fmt::Display for DiagramError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            DiagramError::NotSaturated => write!(f, "ideal is not saturated"),
            DiagramError::NotBorelFixed => write!(f, "diagram violates the Borel condition"),
            DiagramError::NotMonotone => write!(f, "column heights are not monotone"),
        }
    }
}

impl GinDiagram {
    pub fn new(all_zero_cols: usize, heights: Vec<usize>) -> Result<Self, DiagramError> {
        let d = GinDiagram {
            all_zero_cols,
            heights,
        };
        d.validate()?;
        Ok(d)
    }

    /// The diagram of the zero ideal: every column is all zeros.
    pub fn zero_ideal() -> Self {
        GinDiagram {
            all_zero_cols: usize::MAX,
            heights: Vec::new(),
        }
    }

    /// Column heights must strictly decrease until they reach zero: an `x`
    /// at height `j ≥ 1` in one column forces an `x` at height `j - 1` in
    /// the next.
    pub fn validate(&self) -> Result<(), DiagramError> {
        let mut prev: Option<usize> = None;
        for &h in &self.heights {
            if let Some(p) = prev {
                if h > p.saturating_sub(1).max(0) && h != 0 {
                    return Err(DiagramError::NotBorelFixed);
                }
                if h > p {
                    return Err(DiagramError::NotMonotone);
                }
            }
            prev = Some(h);
        }
        // trailing zeros are allowed but normalize them away
        Ok(())
    }

    fn normalized_heights(&self) -> Vec<usize> {
        let mut h = self.heights.clone();
        while h.last() == Some(&0) {
            h.pop();
        }
        h
    }

    /// Extract the diagram of a saturated monomial ideal in three
    /// variables. Generators must not involve the revlex-last variable.
    pub fn from_monomial_ideal(m: &MonomialIdeal) -> Result<Self, DiagramError> {
        assert_eq!(m.nvars, 3);
        if m.gens.iter().any(|g| g.exps[2] != 0) {
            return Err(DiagramError::NotSaturated);
        }
        if m.gens.is_empty() {
            return Ok(GinDiagram::zero_ideal());
        }
        let d = m.gens.iter().map(|g| g.exps[0] as usize).min().unwrap();
        let max_i = m.gens.iter().map(|g| g.exps[0] as usize).max().unwrap();
        let mut heights = Vec::new();
        for i in d..=max_i {
            // minimal j with a^i b^j in the ideal
            let mut j = 0usize;
            loop {
                let mut mono = crate::poly::Monomial::one();
                mono.exps[0] = i as u8;
                mono.exps[1] = j as u8;
                if m.contains(&mono) {
                    break;
                }
                j += 1;
            }
            heights.push(j);
        }
        let out = GinDiagram {
            all_zero_cols: d,
            heights,
        };
        out.validate()?;
        Ok(out)
    }

    /// Hilbert function: the number of zeros on or below the diagonal
    /// `i + j = n`.
    pub fn hilbert(&self, n: i64) -> usize {
        if n < 0 {
            return 0;
        }
        let n = n as usize;
        let mut count = 0usize;
        let d = self.all_zero_cols.min(n + 1);
        for i in 0..d {
            count += n + 1 - i;
        }
        if self.all_zero_cols <= n {
            for (k, &h) in self.heights.iter().enumerate() {
                let i = self.all_zero_cols + k;
                if i > n {
                    break;
                }
                count += h.min(n + 1 - i);
            }
        }
        count
    }

    /// `d(I)`: the number of all-zero columns = degree of the curve part.
    pub fn curve_degree(&self) -> usize {
        self.all_zero_cols
    }

    /// `e(I)`: zeros outside the all-zero columns = degree of the
    /// zero-dimensional part.
    pub fn point_degree(&self) -> usize {
        self.heights.iter().sum()
    }

    /// `h^1` of the twisted ideal sheaf: zeros in columns `i ≥ d` strictly
    /// above the diagonal `i + j = n`.
    pub fn h1(&self, n: i64) -> usize {
        let d = self.all_zero_cols;
        let mut count = 0usize;
        for (k, &h) in self.heights.iter().enumerate() {
            let i = (d + k) as i64;
            // zeros at heights j = 0..h; strictly above means i + j > n
            let cutoff = (n - i + 1).max(0) as usize;
            count += h.saturating_sub(cutoff);
        }
        count
    }

    /// The Hilbert polynomial determined by `(d, e)` alone, evaluated at `n`.
    /// Finite only when the diagram is not the zero ideal.
    pub fn hilbert_polynomial(&self, n: i64) -> i64 {
        let d = self.all_zero_cols as i64;
        let e = self.point_degree() as i64;
        d * n - d * (d - 3) / 2 + e
    }

    /// ASCII rendering mirroring the printed staircases: `x` marks members,
    /// `0` non-members, bottom-left origin.
    pub fn render(&self) -> String {
        let d = self.all_zero_cols;
        if d == usize::MAX {
            return String::from("(zero ideal: all columns 0)\n");
        }
        let heights = self.normalized_heights();
        let width = d + heights.len() + 1;
        let tallest = heights.first().copied().unwrap_or(0);
        let rows = tallest + 1;
        let mut out = String::new();
        for j in (0..rows).rev() {
            let mut line = String::new();
            for i in 0..width {
                let is_zero = if i < d {
                    true
                } else {
                    let k = i - d;
                    k < heights.len() && j < heights[k]
                };
                line.push(if is_zero { '0' } else { 'x' });
                line.push(' ');
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

/// Constraints for diagram enumeration.
#[derive(Clone, Debug, Default)]
pub struct DiagramConstraints {
    /// Total number of zeros outside the all-zero columns.
    pub point_degree: usize,
    /// Required number of all-zero columns.
    pub curve_degree: usize,
    /// If set, no `x` may appear on or below the diagonal `i + j = q`.
    pub no_x_on_or_below: Option<usize>,
}

/// All valid diagrams meeting the constraints, in lexicographic order of
/// their height vectors (tallest first).
pub fn enumerate_diagrams(c: &DiagramConstraints) -> Vec<GinDiagram> {
    let mut out = Vec::new();
    let d = c.curve_degree;
    let min_height = |col: usize| -> usize {
        match c.no_x_on_or_below {
            Some(q) => (q + 1).saturating_sub(d + col),
            None => 0,
        }
    };
    // heights strictly decrease to zero; DFS over prefixes
    fn rec(
        heights: &mut Vec<usize>,
        remaining: usize,
        prev: usize,
        col: usize,
        min_height: &dyn Fn(usize) -> usize,
        out: &mut Vec<GinDiagram>,
        d: usize,
    ) {
        if remaining == 0 {
            // all later columns must be all-x; allowed iff their min height is 0
            if min_height(col) == 0 {
                out.push(GinDiagram {
                    all_zero_cols: d,
                    heights: heights.clone(),
                });
            }
            return;
        }
        let hi = remaining.min(prev.saturating_sub(1));
        let lo = min_height(col).max(1);
        for h in (lo..=hi).rev() {
            heights.push(h);
            rec(heights, remaining - h, h, col + 1, min_height, out, d);
            heights.pop();
        }
    }
    let mut heights = Vec::new();
    rec(
        &mut heights,
        c.point_degree,
        usize::MAX,
        0,
        &min_height,
        &mut out,
        d,
    );
    for diag in &out {
        debug_assert!(diag.validate().is_ok());
    }
    out
}

/// The printed annotation for the special-position rule: purely a report
/// hint, not a verified statement.
pub fn special_position_note(d: &GinDiagram) -> Option<String> {
    let heights = d.normalized_heights();
    for k in 1..heights.len() {
        if heights[k - 1] >= heights[k] + 3 {
            let col = d.all_zero_cols + k;
            return Some(format!(
                "column {} drops by 3 or more: points may admit a curve of degree {} through a large subscheme",
                col,
                col - d.all_zero_cols
            ));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::PrimeField;
    use crate::groebner::{buchberger, gin, GbBudget, Ideal};
    use crate::poly::{Monomial, PolyRing};
    use crate::rng::Stream;

    fn example_diagram() -> GinDiagram {
        // gin = (a^4, a^3 b, a^2 b^3): columns 0,1 all-zero, heights 3,1
        GinDiagram::new(2, vec![3, 1]).unwrap()
    }

    #[test]
    fn example_d_and_e() {
        let d = example_diagram();
        assert_eq!(d.curve_degree(), 2);
        assert_eq!(d.point_degree(), 4);
    }

    #[test]
    fn hilbert_zero_ideal() {
        let d = GinDiagram::zero_ideal();
        assert_eq!(d.hilbert(2), 6);
        assert_eq!(d.hilbert(0), 1);
    }

    #[test]
    fn hilbert_matches_groebner_on_example() {
        // oracle: monomial count of K[a,b,c]/(a^4, a^3 b, a^2 b^3) per degree
        let fp = PrimeField::new(32003);
        let r = PolyRing::grevlex(3, fp);
        let gens = vec![
            r.from_terms(&[(Monomial::from_exps(&[4, 0, 0]), 1)]),
            r.from_terms(&[(Monomial::from_exps(&[3, 1, 0]), 1)]),
            r.from_terms(&[(Monomial::from_exps(&[2, 3, 0]), 1)]),
        ];
        let gb = buchberger(&r, &gens, GbBudget::default()).unwrap();
        let d = example_diagram();
        for n in 0..12i64 {
            assert_eq!(d.hilbert(n), gb.hilbert_function(n).unwrap());
        }
    }

    /// Ideal of a point set in the plane by degreewise interpolation.
    fn points_ideal(r: &PolyRing, pts: &[[u64; 3]], maxdeg: u32) -> Ideal {
        let fp = r.field;
        let mut gens = Vec::new();
        for deg in 1..=maxdeg {
            let basis = r.graded_basis(deg);
            let mut m = crate::matrix::Matrix::zero(pts.len(), basis.len());
            for (i, p) in pts.iter().enumerate() {
                for (j, mono) in basis.monomials.iter().enumerate() {
                    let poly = r.from_terms(&[(*mono, 1)]);
                    m[(i, j)] = r.evaluate(&poly, p);
                }
            }
            let ker = m.kernel(&fp);
            for k in 0..ker.rows {
                let terms: Vec<(Monomial, u64)> = basis
                    .monomials
                    .iter()
                    .zip(ker.row(k))
                    .map(|(mono, &c)| (*mono, c))
                    .collect();
                gens.push(r.from_terms(&terms));
            }
        }
        Ideal::new(*r, gens)
    }

    #[test]
    fn generic_eleven_points_give_last_diagram() {
        let fp = PrimeField::new(32003);
        let r = PolyRing::grevlex(3, fp);
        let mut rng = Stream::new(4, "eleven-points", 0);
        let pts: Vec<[u64; 3]> = (0..11)
            .map(|_| {
                [
                    rng.field_element(&fp),
                    rng.field_element(&fp),
                    1,
                ]
            })
            .collect();
        let ideal = points_ideal(&r, &pts, 5);
        let g = gin(&ideal, 4, 8, GbBudget::default()).unwrap();
        let diag = GinDiagram::from_monomial_ideal(&g.saturate_last()).unwrap();
        assert_eq!(diag, GinDiagram::new(0, vec![5, 3, 2, 1]).unwrap());
        assert_eq!(diag.hilbert(3), 10); // not on any cubic
    }

    #[test]
    fn eleven_points_with_eight_collinear() {
        // oracle for diagram #1 of the eleven-point list
        let fp = PrimeField::new(32003);
        let r = PolyRing::grevlex(3, fp);
        let mut rng = Stream::new(9, "eight-collinear", 0);
        let mut pts: Vec<[u64; 3]> = (0..8)
            .map(|_| [rng.field_element(&fp), 0, 1])
            .collect();
        for _ in 0..3 {
            pts.push([
                rng.field_element(&fp),
                rng.nonzero_field_element(&fp),
                1,
            ]);
        }
        let ideal = points_ideal(&r, &pts, 8);
        let g = gin(&ideal, 4, 8, GbBudget::default()).unwrap();
        let diag = GinDiagram::from_monomial_ideal(&g.saturate_last()).unwrap();
        assert_eq!(diag, GinDiagram::new(0, vec![8, 2, 1]).unwrap());
        // Hilbert values agree with the Groebner oracle
        let gb = ideal.groebner(GbBudget::default()).unwrap();
        for n in 0..12i64 {
            assert_eq!(diag.hilbert(n), gb.hilbert_function(n).unwrap());
        }
    }

    #[test]
    fn h1_vanishes_far_out() {
        for d in enumerate_diagrams(&DiagramConstraints {
            point_degree: 11,
            curve_degree: 0,
            no_x_on_or_below: Some(2),
        }) {
            assert_eq!(d.h1(40), 0);
        }
    }

    #[test]
    fn all_x_diagram() {
        let d = GinDiagram::new(0, vec![]).unwrap();
        assert_eq!(d.curve_degree(), 0);
        assert_eq!(d.point_degree(), 0);
        assert_eq!(d.hilbert(5), 0);
    }

    #[test]
    fn enumerate_trivial() {
        let got = enumerate_diagrams(&DiagramConstraints {
            point_degree: 0,
            curve_degree: 0,
            no_x_on_or_below: None,
        });
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].point_degree(), 0);
    }

    #[test]
    fn render_has_bottom_left_origin() {
        let d = example_diagram();
        let s = d.render();
        let lines: Vec<&str> = s.lines().collect();
        // bottom row: 0 0 0 0 x
        assert_eq!(lines.last().unwrap().trim(), "0 0 0 0 x");
    }

    #[test]
    fn consistency_hilbert_vs_h1() {
        // For n at least the staircase size: P(n) - H(n) = h1(n).
        for d in enumerate_diagrams(&DiagramConstraints {
            point_degree: 3,
            curve_degree: 4,
            no_x_on_or_below: None,
        }) {
            for n in 3..15i64 {
                assert_eq!(
                    d.hilbert_polynomial(n) - d.hilbert(n) as i64,
                    d.h1(n) as i64
                );
            }
        }
    }
}
