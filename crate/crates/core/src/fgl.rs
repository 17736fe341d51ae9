//! The universal formal group law over ℤ[b₁,b₂,…].
//!
//! With twisted first Chern class `b(x) = Σ b_i x^{i+1}` (b₀ = 1) the law is
//! `F(x,y) = b(ℓ(x) + ℓ(y))`, ℓ the compositional inverse of `b`. The
//! coefficient of `x^i y^j` has weight `i + j - 1`; everything is kept
//! through total order `T - 1`, i.e. weight `T - 2`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{Coeff, GradedPoly, LaurentSeries, TruncSeries};
use crate::error::{Error, Result};
use crate::symbols::MSymbols;

/// Power series in several variables, truncated at total degree `order`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiSeries {
    nvars: usize,
    order: usize,
    terms: BTreeMap<Vec<u32>, GradedPoly>,
    zero: GradedPoly,
}

impl MultiSeries {
    pub fn zero(nvars: usize, order: usize, proto: &GradedPoly) -> Self {
        MultiSeries {
            nvars,
            order,
            terms: BTreeMap::new(),
            zero: proto.zero_like(),
        }
    }

    pub fn constant(nvars: usize, order: usize, c: GradedPoly) -> Self {
        let mut s = Self::zero(nvars, order, &c);
        s.add_term(vec![0; nvars], c);
        s
    }

    pub fn var(nvars: usize, order: usize, i: usize, proto: &GradedPoly) -> Self {
        let mut s = Self::zero(nvars, order, proto);
        let mut e = vec![0; nvars];
        e[i] = 1;
        s.add_term(e, proto.one_like());
        s
    }

    /// `f(x_i)` for a univariate series `f`.
    pub fn from_univariate(
        f: &TruncSeries<GradedPoly>,
        nvars: usize,
        order: usize,
        i: usize,
    ) -> Self {
        let mut s = Self::zero(nvars, order, f.coeff(0));
        for (k, c) in f.coeffs().iter().enumerate().take(order) {
            let mut e = vec![0; nvars];
            e[i] = k as u32;
            s.add_term(e, c.clone());
        }
        s
    }

    fn add_term(&mut self, e: Vec<u32>, c: GradedPoly) {
        if c.is_zero() || e.iter().sum::<u32>() as usize >= self.order {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(x) => {
                *x += &c;
                if x.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, e: &[u32]) -> GradedPoly {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(|| self.zero.clone())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &GradedPoly)> {
        self.terms.iter()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut s = self.clone();
        s.order = self.order.min(o.order);
        s.terms
            .retain(|e, _| (e.iter().sum::<u32>() as usize) < s.order);
        for (e, c) in &o.terms {
            s.add_term(e.clone(), c.clone());
        }
        s
    }

    pub fn neg(&self) -> Self {
        let mut s = self.clone();
        s.terms.values_mut().for_each(|c| *c = -&*c);
        s
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut s = Self::zero(self.nvars, self.order, &self.zero);
        for (e, c) in &self.terms {
            s.add_term(e.clone(), c.scale(k));
        }
        s
    }

    pub fn mul(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let mut s = Self::zero(self.nvars, order, &self.zero);
        for (e1, c1) in &self.terms {
            let d1: u32 = e1.iter().sum();
            for (e2, c2) in &o.terms {
                if (d1 + e2.iter().sum::<u32>()) as usize >= order {
                    continue;
                }
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                s.add_term(e, c1 * c2);
            }
        }
        s
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::constant(self.nvars, self.order, self.zero.one_like());
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// `f(self)` for univariate `f`; `self` must have no constant term.
    pub fn compose_into(&self, f: &TruncSeries<GradedPoly>) -> Result<Self> {
        if self.terms.contains_key(&vec![0; self.nvars]) {
            return Err(Error::Invalid("inner series has a constant term".into()));
        }
        let n = f.order().min(self.order);
        let mut acc = Self::constant(self.nvars, self.order, f.coeff(n - 1).clone());
        for j in (0..n - 1).rev() {
            acc = acc.mul(self);
            acc.add_term(vec![0; self.nvars], f.coeff(j).clone());
        }
        Ok(acc)
    }

    /// `Σ c_e Π args_i^{e_i}`.
    pub fn substitute(&self, args: &[MultiSeries]) -> Self {
        assert_eq!(args.len(), self.nvars);
        let (nv, order) = (
            args[0].nvars,
            args.iter().map(|a| a.order).min().unwrap().min(self.order),
        );
        let mut out = Self::zero(nv, order, &self.zero);
        for (e, c) in &self.terms {
            let mut t = Self::constant(nv, order, c.clone());
            for (i, &k) in e.iter().enumerate() {
                t = t.mul(&args[i].pow(k));
            }
            out = out.add(&t);
        }
        out
    }
}

/// `[n](x) = Σ u_i x^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct NSeries {
    pub n: i64,
    pub u: Vec<GradedPoly>,
}

impl NSeries {
    /// `u_i`, zero outside the known range.
    pub fn coeff(&self, i: i64) -> GradedPoly {
        if i < 0 || i as usize >= self.u.len() {
            self.u[0].zero_like()
        } else {
            self.u[i as usize].clone()
        }
    }

    pub fn as_series(&self) -> TruncSeries<GradedPoly> {
        TruncSeries::new("x", self.u.clone())
    }
}

#[derive(Clone, Debug)]
pub struct Fgl {
    sy: MSymbols,
    order: usize,
    exp: TruncSeries<GradedPoly>,
    log: TruncSeries<GradedPoly>,
    sum: MultiSeries,
    two: NSeries,
    h: TruncSeries<GradedPoly>,
    inverse: Vec<LaurentSeries<GradedPoly>>,
}

impl Fgl {
    pub fn new(sy: &MSymbols, order: usize) -> Result<Self> {
        if order < 3 || order - 2 > sy.cap() {
            return Err(Error::Window(format!(
                "series order {order} outside the alphabet"
            )));
        }
        let exp = TruncSeries::new(
            "x",
            (0..order)
                .map(|k| if k == 0 { sy.zero() } else { sy.bp(k - 1) })
                .collect(),
        );
        let log = exp.comp_inverse()?;
        let lx = MultiSeries::from_univariate(&log, 2, order, 0);
        let ly = MultiSeries::from_univariate(&log, 2, order, 1);
        let sum = lx.add(&ly).compose_into(&exp)?;
        let mut f = Fgl {
            sy: sy.clone(),
            order,
            exp,
            log,
            sum,
            two: NSeries { n: 2, u: vec![] },
            h: TruncSeries::new("t", vec![sy.zero()]),
            inverse: vec![],
        };
        f.two = f.n_series(2)?;
        f.h = TruncSeries::new(
            "t",
            (0..order - 1).map(|j| f.two.coeff(j as i64 + 1)).collect(),
        );
        f.inverse = f.build_inverse();
        Ok(f)
    }

    pub fn symbols(&self) -> &MSymbols {
        &self.sy
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Largest coefficient weight kept.
    pub fn weight(&self) -> usize {
        self.order - 2
    }

    pub fn exp(&self) -> &TruncSeries<GradedPoly> {
        &self.exp
    }

    pub fn log(&self) -> &TruncSeries<GradedPoly> {
        &self.log
    }

    /// `F(x, y)` as a bivariate series.
    pub fn sum(&self) -> &MultiSeries {
        &self.sum
    }

    /// Coefficient of `x^i y^j` in `F`.
    pub fn sum_coeff(&self, i: u32, j: u32) -> GradedPoly {
        self.sum.coeff(&[i, j])
    }

    pub fn n_series(&self, n: i64) -> Result<NSeries> {
        let s = self.exp.compose(&self.log.scale(&BigInt::from(n)))?;
        Ok(NSeries {
            n,
            u: s.coeffs().to_vec(),
        })
    }

    pub fn two(&self) -> &NSeries {
        &self.two
    }

    /// `u_i` of the [2]-series.
    pub fn u(&self, i: i64) -> GradedPoly {
        self.two.coeff(i)
    }

    /// `h` with `h·t = [2](t)`, known through `t^{T-2}`.
    pub fn h(&self) -> &TruncSeries<GradedPoly> {
        &self.h
    }

    /// `v_i(x)` with `1 = F(x,y) Σ v_i(x) y^i`; `v_i` starts at `x^{-1-i}`
    /// and is known below `x^{W-i}`.
    pub fn inverse_coeffs(&self) -> &[LaurentSeries<GradedPoly>] {
        &self.inverse
    }

    pub fn v_series(&self, i: usize) -> Result<&LaurentSeries<GradedPoly>> {
        self.inverse
            .get(i)
            .ok_or_else(|| Error::Window(format!("v_{i}(x) is outside the series window")))
    }

    fn build_inverse(&self) -> Vec<LaurentSeries<GradedPoly>> {
        let w = self.weight() as i64;
        let zero = self.sy.zero();
        // F = Σ_j f_j(x) y^j with f_j known through x^{T-1-j}.
        let f: Vec<LaurentSeries<GradedPoly>> = (0..self.order)
            .map(|j| {
                let len = self.order - j;
                let coeffs = (0..len)
                    .map(|i| self.sum_coeff(i as u32, j as u32))
                    .collect();
                LaurentSeries::new(0, coeffs, &zero)
            })
            .collect();
        let xinv = LaurentSeries::monomial(-1, self.order as i64, &self.sy.one());
        let mut v: Vec<LaurentSeries<GradedPoly>> = vec![xinv.truncate(w)];
        for i in 1..=self.weight() {
            let mut acc: Option<LaurentSeries<GradedPoly>> = None;
            for j in 1..=i {
                let t = f[j].mul(&v[i - j]);
                acc = Some(match acc {
                    Some(a) => a.add(&t),
                    None => t,
                });
            }
            let acc = acc.expect("i >= 1");
            let vi = acc.mul(&xinv).neg().truncate(w - i as i64);
            v.push(vi);
        }
        v
    }

    /// Checks `h ≡ 2 - ⟦ℙ¹⟧ t` style anchors: constant term of `h` and `u₂`.
    pub fn h_constant(&self) -> BigInt {
        self.h.coeff(0).as_integer().unwrap_or_else(BigInt::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fgl() -> Fgl {
        Fgl::new(&MSymbols::new(12), 8).unwrap()
    }

    #[test]
    fn xy_coefficient_is_two_b1() {
        let f = fgl();
        let sy = f.symbols();
        assert_eq!(f.sum_coeff(1, 1), sy.bp(1).scale_i(2));
        assert_eq!(f.sum_coeff(1, 0), sy.one());
        assert!(f.sum_coeff(2, 0).is_zero());
    }

    #[test]
    fn two_series_and_h() {
        let f = fgl();
        let sy = f.symbols();
        assert_eq!(f.u(1), sy.int(2));
        assert_eq!(f.u(2), sy.bp(1).scale_i(2));
        assert_eq!(f.h_constant(), BigInt::from(2));
        for i in 1..8 {
            assert!(f.u(i).is_zero() || f.u(i).homogeneous_degree() == Some(1 - i));
        }
    }

    #[test]
    fn inverse_identity() {
        let f = fgl();
        let w = f.weight() as i64;
        let v = f.inverse_coeffs();
        assert_eq!(v[0].val(), -1);
        assert!(v[0].coeff(-1).unwrap().is_one());
        // Σ_j f_j v_{i-j} = δ_{i0}, coefficientwise where known.
        for i in 0..=f.weight() {
            for k in -1..(w - i as i64) {
                let mut s = f.symbols().zero();
                for j in 0..=i {
                    for (e, c) in v[i - j].terms() {
                        let need = k - e;
                        if need >= 0 {
                            s += &(&f.sum_coeff(need as u32, j as u32) * c);
                        }
                    }
                }
                let expect = if i == 0 && k == 0 {
                    f.symbols().one()
                } else {
                    f.symbols().zero()
                };
                assert_eq!(s, expect, "i={i} k={k}");
            }
        }
    }
}
