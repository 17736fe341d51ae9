use num_bigint::BigInt;

use super::ring::Coeff;
use crate::error::{Error, Result};

/// Power series in one variable, known through `x^{order-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<C> {
    var: String,
    coeffs: Vec<C>,
}

impl<C: Coeff> TruncSeries<C> {
    pub fn new(var: &str, coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "series order must be at least 1");
        TruncSeries {
            var: var.to_string(),
            coeffs,
        }
    }

    pub fn zero(var: &str, order: usize, proto: &C) -> Self {
        Self::new(var, vec![proto.zero_like(); order])
    }

    pub fn constant(var: &str, order: usize, c: C) -> Self {
        let mut s = Self::zero(var, order, &c);
        s.coeffs[0] = c;
        s
    }

    /// The series `x`.
    pub fn identity(var: &str, order: usize, proto: &C) -> Self {
        let mut s = Self::zero(var, order, proto);
        if order > 1 {
            s.coeffs[1] = proto.one_like();
        }
        s
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, j: usize) -> &C {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, j: usize, c: C) {
        self.coeffs[j] = c;
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order()).max(1);
        Self::new(&self.var, self.coeffs[..order].to_vec())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Self::new(
            &self.var,
            (0..n).map(|j| self.coeffs[j].plus(&o.coeffs[j])).collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Self::new(
            &self.var,
            (0..n).map(|j| self.coeffs[j].minus(&o.coeffs[j])).collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.var, self.coeffs.iter().map(C::negate).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(&self.var, self.coeffs.iter().map(|x| x.scaled(c)).collect())
    }

    pub fn times_coeff(&self, c: &C) -> Self {
        Self::new(&self.var, self.coeffs.iter().map(|x| x.times(c)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut out = vec![self.coeffs[0].zero_like(); n];
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                if o.coeffs[j].is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].plus(&self.coeffs[i].times(&o.coeffs[j]));
            }
        }
        Self::new(&self.var, out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::constant(&self.var, self.order(), self.coeffs[0].one_like());
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// `self(g(x))`. Needs `g(0) = 0`.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if !g.coeffs[0].is_zero() {
            return Err(Error::Invalid(
                "inner series has a nonzero constant term".into(),
            ));
        }
        let n = self.order().min(g.order());
        let g = g.truncate(n);
        let mut acc = Self::constant(&self.var, n, self.coeffs[n - 1].clone());
        for j in (0..n - 1).rev() {
            acc = acc.mul(&g);
            acc.coeffs[0] = acc.coeffs[0].plus(&self.coeffs[j]);
        }
        Ok(Self::new(&g.var, acc.coeffs))
    }

    /// Compositional inverse of `x + ...`, solved one order at a time.
    pub fn comp_inverse(&self) -> Result<Self> {
        let n = self.order();
        if !self.coeffs[0].is_zero()
            || (n > 1 && !self.coeffs[1].minus(&self.coeffs[1].one_like()).is_zero())
        {
            return Err(Error::Invalid(
                "series is not of the form x + higher order".into(),
            ));
        }
        let mut g = Self::identity(&self.var, n, &self.coeffs[0]);
        for k in 2..n {
            let e = self.compose(&g)?;
            g.coeffs[k] = g.coeffs[k].minus(&e.coeffs[k]);
        }
        Ok(g)
    }

    /// Multiplicative inverse; the constant term must be ±1.
    pub fn reciprocal(&self) -> Result<Self> {
        let inv0 = self.coeffs[0]
            .unit_inverse()
            .ok_or_else(|| Error::Invalid("constant term is not ±1".into()))?;
        let n = self.order();
        let mut out = vec![self.coeffs[0].zero_like(); n];
        out[0] = inv0.clone();
        for k in 1..n {
            let mut s = self.coeffs[0].zero_like();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() && !out[k - j].is_zero() {
                    s = s.plus(&self.coeffs[j].times(&out[k - j]));
                }
            }
            out[k] = s.times(&inv0).negate();
        }
        Ok(Self::new(&self.var, out))
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> TruncSeries<D> {
        TruncSeries::new(&self.var, self.coeffs.iter().map(f).collect())
    }
}

/// Laurent series `Σ_{val ≤ j < prec} c_j x^j`, known below `prec`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries<C> {
    val: i64,
    coeffs: Vec<C>,
    zero: C,
}

impl<C: Coeff> LaurentSeries<C> {
    pub fn new(val: i64, coeffs: Vec<C>, proto: &C) -> Self {
        LaurentSeries {
            val,
            coeffs,
            zero: proto.zero_like(),
        }
    }

    pub fn from_trunc(s: &TruncSeries<C>, shift: i64) -> Self {
        Self::new(shift, s.coeffs().to_vec(), s.coeff(0))
    }

    /// `x^k` known below `prec`.
    pub fn monomial(k: i64, prec: i64, proto: &C) -> Self {
        let len = (prec - k).max(0) as usize;
        let mut coeffs = vec![proto.zero_like(); len];
        if len > 0 {
            coeffs[0] = proto.one_like();
        }
        Self::new(k, coeffs, proto)
    }

    pub fn val(&self) -> i64 {
        self.val
    }

    pub fn prec(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    pub fn proto(&self) -> &C {
        &self.zero
    }

    /// Coefficient of `x^e`; `None` beyond the known precision.
    pub fn coeff(&self, e: i64) -> Option<C> {
        if e >= self.prec() {
            None
        } else if e < self.val {
            Some(self.zero.clone())
        } else {
            Some(self.coeffs[(e - self.val) as usize].clone())
        }
    }

    pub fn coeff_ref(&self, e: i64) -> Option<&C> {
        if e >= self.prec() {
            None
        } else if e < self.val {
            Some(&self.zero)
        } else {
            Some(&self.coeffs[(e - self.val) as usize])
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.val + i as i64, c))
    }

    pub fn truncate(&self, prec: i64) -> Self {
        let prec = prec.min(self.prec());
        let len = (prec - self.val).max(0) as usize;
        Self::new(self.val, self.coeffs[..len].to_vec(), &self.zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let val = self.val.min(o.val);
        let prec = self.prec().min(o.prec());
        let coeffs = (val..prec)
            .map(|e| self.coeff_ref(e).unwrap().plus(o.coeff_ref(e).unwrap()))
            .collect();
        Self::new(val, coeffs, &self.zero)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(
            self.val,
            self.coeffs.iter().map(C::negate).collect(),
            &self.zero,
        )
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(
            self.val,
            self.coeffs.iter().map(|x| x.scaled(c)).collect(),
            &self.zero,
        )
    }

    pub fn times_coeff(&self, c: &C) -> Self {
        Self::new(
            self.val,
            self.coeffs.iter().map(|x| x.times(c)).collect(),
            &self.zero,
        )
    }

    pub fn shift(&self, k: i64) -> Self {
        Self::new(self.val + k, self.coeffs.clone(), &self.zero)
    }

    /// Drops known leading zeros, so `val` is the true valuation.
    pub fn trimmed(&self) -> Self {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        Self::new(self.val + k as i64, self.coeffs[k..].to_vec(), &self.zero)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a, b) = (self.trimmed(), o.trimmed());
        a.mul_raw(&b)
    }

    /// Product of the known parts with no precision bookkeeping; for callers
    /// that know the true precision from a grading argument.
    pub fn mul_known(&self, o: &Self) -> Self {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Self::new(self.val + o.val, vec![], &self.zero);
        }
        let mut out = vec![self.zero.clone(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].plus(&a.times(b));
                }
            }
        }
        Self::new(self.val + o.val, out, &self.zero)
    }

    /// Sum over the union of the known ranges; see [`Self::mul_known`].
    pub fn add_known(&self, o: &Self) -> Self {
        let val = self.val.min(o.val);
        let prec = self.prec().max(o.prec());
        let coeffs = (val..prec)
            .map(|e| {
                let a = self.coeff_ref(e).unwrap_or(&self.zero);
                let b = o.coeff_ref(e).unwrap_or(&o.zero);
                a.plus(b)
            })
            .collect();
        Self::new(val, coeffs, &self.zero)
    }

    fn mul_raw(&self, o: &Self) -> Self {
        let val = self.val + o.val;
        let prec = (self.val + o.prec()).min(o.val + self.prec());
        let len = (prec - val).max(0) as usize;
        let mut out = vec![self.zero.clone(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(len - i) {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Self::new(val, out, &self.zero)
    }

    /// Inverse when the lowest nonzero coefficient is ±1.
    pub fn reciprocal(&self) -> Result<Self> {
        let k = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| Error::Invalid("series has no known nonzero coefficient".into()))?;
        let unit = TruncSeries::new("x", self.coeffs[k..].to_vec());
        let inv = unit.reciprocal()?;
        Ok(Self::new(
            -(self.val + k as i64),
            inv.coeffs().to_vec(),
            &self.zero,
        ))
    }

    pub fn map<D: Coeff>(&self, proto: &D, f: impl Fn(&C) -> D) -> LaurentSeries<D> {
        LaurentSeries::new(self.val, self.coeffs.iter().map(f).collect(), proto)
    }

    /// Equality of all coefficients below `prec` (clamped to what both know).
    pub fn agrees(&self, o: &Self, prec: i64) -> bool {
        let prec = prec.min(self.prec()).min(o.prec());
        (self.val.min(o.val)..prec).all(|e| self.coeff_ref(e) == o.coeff_ref(e))
    }

    pub fn is_zero_known(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Alphabet, GradedPoly};
    use std::sync::Arc;

    fn alpha() -> Arc<Alphabet> {
        Alphabet::from_triples([("b1", -1, false), ("b2", -2, false), ("h", 1, false)]).unwrap()
    }

    fn ints(a: &Arc<Alphabet>, v: &[i64]) -> TruncSeries<GradedPoly> {
        TruncSeries::new("x", v.iter().map(|&c| GradedPoly::constant(a, c)).collect())
    }

    #[test]
    fn compose_small() {
        let a = alpha();
        let f = ints(&a, &[0, 1, 1, 0]);
        let g = ints(&a, &[0, 2, 0, 0]);
        assert_eq!(f.compose(&g).unwrap(), ints(&a, &[0, 2, 4, 0]));
        let id = ints(&a, &[0, 1, 0, 0]);
        assert_eq!(id.compose(&f).unwrap(), f);
        assert!(f.compose(&ints(&a, &[1, 1, 0, 0])).is_err());
    }

    /// Lagrange inversion: [x^n] g = (1/n) [w^{n-1}] (w/f(w))^n.
    fn lagrange_oracle(f: &[i64], n_max: usize) -> Vec<i64> {
        // w/f(w) for f = w + f2 w^2 + ...: reciprocal of 1 + f2 w + ...
        let n = n_max + 1;
        let mut q = vec![0i64; n];
        let u: Vec<i64> = (0..n).map(|i| f.get(i + 1).copied().unwrap_or(0)).collect();
        q[0] = 1;
        for k in 1..n {
            q[k] = -(1..=k).map(|j| u[j] * q[k - j]).sum::<i64>();
        }
        let mut out = vec![0i64; n];
        for m in 1..n {
            let mut p = vec![0i64; n];
            p[0] = 1;
            for _ in 0..m {
                let mut np = vec![0i64; n];
                for i in 0..n {
                    for j in 0..n - i {
                        np[i + j] += p[i] * q[j];
                    }
                }
                p = np;
            }
            out[m] = p[m - 1] / m as i64;
        }
        out
    }

    #[test]
    fn catalan_inverse() {
        let a = alpha();
        let f = ints(&a, &[0, 1, 1, 0, 0, 0, 0]);
        let g = f.comp_inverse().unwrap();
        let oracle = lagrange_oracle(&[0, 1, 1], 6);
        for k in 0..7 {
            assert_eq!(g.coeff(k).as_integer().unwrap(), BigInt::from(oracle[k]));
        }
        assert_eq!(ints(&a, &[0, 1, -1, 2, -5, 14, -42]), g);
        assert_eq!(g.compose(&f).unwrap(), ints(&a, &[0, 1, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn symbolic_inverse() {
        let a = alpha();
        let b1 = GradedPoly::named(&a, "b1");
        let z = GradedPoly::zero(&a);
        let one = GradedPoly::one(&a);
        let f = TruncSeries::new("x", vec![z.clone(), one.clone(), b1.clone(), z.clone()]);
        let g = f.comp_inverse().unwrap();
        assert_eq!(g.coeff(2), &-&b1);
        assert_eq!(g.coeff(3), &b1.pow(2).scale_i(2));
        assert!(
            f.comp_inverse().unwrap().compose(&f).unwrap() == TruncSeries::identity("x", 4, &z)
        );
    }

    #[test]
    fn reciprocal_geometric() {
        let a = alpha();
        let b1 = GradedPoly::named(&a, "b1");
        let b2 = GradedPoly::named(&a, "b2");
        let h = GradedPoly::named(&a, "h");
        let one = GradedPoly::one(&a);
        let f = TruncSeries::new("h", vec![one.clone(), &b1 * &h, &b2 * &h.pow(2)]);
        let r = f.reciprocal().unwrap();
        assert_eq!(r.coeff(1), &-(&b1 * &h));
        assert_eq!(r.coeff(2), &(&(&b1.pow(2) - &b2) * &h.pow(2)));
        assert_eq!(f.mul(&r), TruncSeries::constant("h", 3, one));
    }

    #[test]
    fn laurent_reciprocal() {
        let a = alpha();
        let one = GradedPoly::one(&a);
        // x + x^2 known below x^5 -> x^{-1} - 1 + x - x^2 known below x^3
        let s = LaurentSeries::new(
            1,
            vec![
                one.clone(),
                one.clone(),
                GradedPoly::zero(&a),
                GradedPoly::zero(&a),
            ],
            &one,
        );
        let r = s.reciprocal().unwrap();
        assert_eq!(r.val(), -1);
        assert_eq!(r.prec(), 3);
        let p = s.mul(&r);
        assert_eq!(p.coeff(0).unwrap(), one);
        assert!(p.coeff(1).unwrap().is_zero());
    }
}
