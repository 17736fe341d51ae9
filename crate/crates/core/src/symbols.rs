//! The alphabet shared by 𝕃 and ℳ: `b1..bK`, `a1..aK`, `v`; and the
//! alphabet of the x-generators: `v`, `x1..xK`.

use std::sync::Arc;

use crate::algebra::{Alphabet, GradedPoly, Monomial};

#[derive(Clone, Debug)]
pub struct MSymbols {
    pub alpha: Arc<Alphabet>,
    cap: usize,
}

impl MSymbols {
    pub fn new(cap: usize) -> Self {
        let mut syms = Vec::with_capacity(2 * cap + 1);
        for i in 1..=cap {
            syms.push((format!("b{i}"), -(i as i32), false));
        }
        for i in 1..=cap {
            syms.push((format!("a{i}"), -(i as i32), false));
        }
        // v has degree -1 so that a rank-r bundle over a d-fold has degree -d-r.
        syms.push(("v".to_string(), -1, true));
        MSymbols {
            alpha: Alphabet::from_triples(syms).expect("fixed alphabet"),
            cap,
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn b(&self, i: usize) -> usize {
        assert!(i >= 1 && i <= self.cap, "b{i} outside the alphabet");
        i - 1
    }

    pub fn a(&self, i: usize) -> usize {
        assert!(i >= 1 && i <= self.cap, "a{i} outside the alphabet");
        self.cap + i - 1
    }

    pub fn v(&self) -> usize {
        2 * self.cap
    }

    pub fn b_of(&self, idx: usize) -> Option<usize> {
        (idx < self.cap).then_some(idx + 1)
    }

    pub fn a_of(&self, idx: usize) -> Option<usize> {
        (idx >= self.cap && idx < 2 * self.cap).then_some(idx - self.cap + 1)
    }

    pub fn is_b(&self, idx: usize) -> bool {
        idx < self.cap
    }

    pub fn zero(&self) -> GradedPoly {
        GradedPoly::zero(&self.alpha)
    }

    pub fn one(&self) -> GradedPoly {
        GradedPoly::one(&self.alpha)
    }

    pub fn int(&self, c: i64) -> GradedPoly {
        GradedPoly::constant(&self.alpha, c)
    }

    /// `b_i`, with `b_0 = 1`.
    pub fn bp(&self, i: usize) -> GradedPoly {
        if i == 0 {
            self.one()
        } else {
            GradedPoly::var(&self.alpha, self.b(i), 1)
        }
    }

    /// `a_i`, with `a_0 = 1`.
    pub fn ap(&self, i: usize) -> GradedPoly {
        if i == 0 {
            self.one()
        } else {
            GradedPoly::var(&self.alpha, self.a(i), 1)
        }
    }

    pub fn vp(&self, k: i32) -> GradedPoly {
        GradedPoly::var(&self.alpha, self.v(), k)
    }

    /// `b_α` for a partition.
    pub fn b_mono(&self, alpha: &[u32]) -> Monomial {
        Monomial::from_pairs(alpha.iter().map(|&p| (self.b(p as usize), 1)))
    }

    pub fn a_mono(&self, alpha: &[u32]) -> Monomial {
        Monomial::from_pairs(alpha.iter().map(|&p| (self.a(p as usize), 1)))
    }

    /// Partition read off the b-part of a monomial.
    pub fn b_partition(&self, m: &Monomial) -> Vec<u32> {
        let mut p = Vec::new();
        for (i, e) in m.iter() {
            if let Some(k) = self.b_of(i) {
                p.extend(std::iter::repeat_n(k as u32, e.max(0) as usize));
            }
        }
        p.sort_unstable_by(|a, b| b.cmp(a));
        p
    }

    pub fn a_partition(&self, m: &Monomial) -> Vec<u32> {
        let mut p = Vec::new();
        for (i, e) in m.iter() {
            if let Some(k) = self.a_of(i) {
                p.extend(std::iter::repeat_n(k as u32, e.max(0) as usize));
            }
        }
        p.sort_unstable_by(|a, b| b.cmp(a));
        p
    }

    /// Base weight of a monomial: total weight in the b and a symbols.
    pub fn weight(&self, m: &Monomial) -> i64 {
        m.weighted(|i| {
            if i < 2 * self.cap {
                (i % self.cap + 1) as i64
            } else {
                0
            }
        })
    }

    pub fn is_lazard(&self, p: &GradedPoly) -> bool {
        p.terms().all(|(m, _)| m.iter().all(|(i, _)| self.is_b(i)))
    }
}

/// Alphabet of the x-generators: `v` (Laurent, degree -1) and `x_j` (degree -j).
#[derive(Clone, Debug)]
pub struct XSymbols {
    pub alpha: Arc<Alphabet>,
    cap: usize,
}

impl XSymbols {
    pub fn new(cap: usize) -> Self {
        let mut syms = vec![("v".to_string(), -1, true)];
        for j in 1..=cap {
            syms.push((format!("x{j}"), -(j as i32), false));
        }
        XSymbols {
            alpha: Alphabet::from_triples(syms).expect("fixed alphabet"),
            cap,
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn v(&self) -> usize {
        0
    }

    pub fn x(&self, j: usize) -> usize {
        assert!(j >= 1 && j <= self.cap, "x{j} outside the alphabet");
        j
    }

    pub fn x_of(&self, idx: usize) -> Option<usize> {
        (idx >= 1).then_some(idx)
    }

    pub fn xp(&self, j: usize) -> GradedPoly {
        GradedPoly::var(&self.alpha, self.x(j), 1)
    }

    pub fn vp(&self, k: i32) -> GradedPoly {
        GradedPoly::var(&self.alpha, 0, k)
    }

    /// `fdeg`: x₁ ↦ 0, x₂ᵢ and x₂ᵢ₊₁ ↦ i.
    pub fn fdeg(&self, m: &Monomial) -> i64 {
        m.weighted(|i| if i == 0 { 0 } else { (i / 2) as i64 })
    }

    /// Degree in the weights deg(x_j) = j; `v` is ignored.
    pub fn xdeg(&self, m: &Monomial) -> i64 {
        m.weighted(|i| if i == 0 { 0 } else { i as i64 })
    }
}
