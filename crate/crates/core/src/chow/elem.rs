use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Signed;

use super::ring::ChowRing;
use crate::algebra::Coeff;
use crate::error::{Error, Result};

/// Element of `A(X) ⊗ C`, stored densely over the normal-monomial basis.
#[derive(Clone, Debug)]
pub struct ChowVec<C> {
    ring: Arc<ChowRing>,
    c: Vec<C>,
}

/// Integral Chow class.
pub type ChowElem = ChowVec<BigInt>;

impl<C: PartialEq> PartialEq for ChowVec<C> {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &o.ring) && self.c == o.c
    }
}

impl<C: Coeff> ChowVec<C> {
    pub fn zero(ring: &Arc<ChowRing>, proto: &C) -> Self {
        ChowVec {
            ring: ring.clone(),
            c: vec![proto.zero_like(); ring.len()],
        }
    }

    pub fn constant(ring: &Arc<ChowRing>, c: C) -> Self {
        let mut v = Self::zero(ring, &c);
        v.c[ring.unit()] = c;
        v
    }

    pub fn one(ring: &Arc<ChowRing>, proto: &C) -> Self {
        Self::constant(ring, proto.one_like())
    }

    pub fn from_vec(ring: &Arc<ChowRing>, c: Vec<C>) -> Self {
        assert_eq!(c.len(), ring.len(), "coefficient vector length");
        ChowVec {
            ring: ring.clone(),
            c,
        }
    }

    /// A monomial in the generators, in normal form.
    pub fn monomial(ring: &Arc<ChowRing>, e: &[u32], proto: &C) -> Self {
        let mut v = Self::zero(ring, proto);
        for (k, t) in ring.monomial(e) {
            v.c[k] = proto.one_like().scaled(&t);
        }
        v
    }

    pub fn generator(ring: &Arc<ChowRing>, g: usize, proto: &C) -> Self {
        let mut e = vec![0; ring.ngens()];
        e[g] = 1;
        Self::monomial(ring, &e, proto)
    }

    pub fn ring(&self) -> &Arc<ChowRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[C] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> &C {
        &self.c[i]
    }

    pub fn proto(&self) -> &C {
        &self.c[0]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Coeff::is_zero)
    }

    fn check(&self, o: &Self) {
        assert!(
            Arc::ptr_eq(&self.ring, &o.ring),
            "Chow elements from different rings"
        );
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        ChowVec {
            ring: self.ring.clone(),
            c: self.c.iter().zip(&o.c).map(|(a, b)| a.plus(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        ChowVec {
            ring: self.ring.clone(),
            c: self.c.iter().zip(&o.c).map(|(a, b)| a.minus(b)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        ChowVec {
            ring: self.ring.clone(),
            c: self.c.iter().map(Coeff::negate).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        ChowVec {
            ring: self.ring.clone(),
            c: self.c.iter().map(|a| a.scaled(k)).collect(),
        }
    }

    pub fn times_coeff(&self, k: &C) -> Self {
        ChowVec {
            ring: self.ring.clone(),
            c: self.c.iter().map(|a| a.times(k)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let r = &self.ring;
        let dim = r.dim();
        let mut out = vec![self.proto().zero_like(); r.len()];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() || r.degree(i) + r.degree(j) > dim {
                    continue;
                }
                let t = r.mul_basis(i, j);
                if t.is_empty() {
                    continue;
                }
                let p = a.times(b);
                for (k, m) in t {
                    out[*k] = out[*k].plus(&p.scaled(m));
                }
            }
        }
        ChowVec {
            ring: r.clone(),
            c: out,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ring, self.proto());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Part of Chow degree exactly `d`.
    pub fn component(&self, d: u32) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .map(|(i, a)| {
                if self.ring.degree(i) == d {
                    a.clone()
                } else {
                    a.zero_like()
                }
            })
            .collect();
        ChowVec {
            ring: self.ring.clone(),
            c,
        }
    }

    /// Degree-zero coefficient.
    pub fn constant_part(&self) -> &C {
        &self.c[self.ring.unit()]
    }

    /// Coefficient of the fundamental class.
    pub fn degree(&self) -> C {
        self.c[self.ring.top()].clone()
    }

    /// Inverse of `±1 + nilpotent`.
    pub fn inverse(&self) -> Result<Self> {
        let e = self
            .constant_part()
            .unit_inverse()
            .ok_or_else(|| Error::Invalid("Chow class is not a unit".into()))?;
        // self = e(1 + n)
        let one = Self::one(&self.ring, self.proto());
        let n = self.times_coeff(&e).sub(&one);
        let mn = n.neg();
        let mut acc = one.clone();
        let mut p = one;
        for _ in 0..self.ring.dim() {
            p = p.mul(&mn);
            acc = acc.add(&p);
        }
        Ok(acc.times_coeff(&e))
    }

    pub fn pow_signed(&self, k: i64) -> Result<Self> {
        if k >= 0 {
            Ok(self.pow(k as u32))
        } else {
            Ok(self.inverse()?.pow(k.unsigned_abs() as u32))
        }
    }

    /// Image under an embedding of rings given on basis indices.
    pub fn push_along(&self, target: &Arc<ChowRing>, map: &[usize]) -> Self {
        let mut out = Self::zero(target, self.proto());
        for (i, a) in self.c.iter().enumerate() {
            out.c[map[i]] = a.clone();
        }
        out
    }

    /// Pullback to a projective bundle over this ring.
    pub fn pullback_to_bundle(&self, bundle: &Arc<ChowRing>) -> Result<Self> {
        let t = bundle
            .tower()
            .ok_or_else(|| Error::Internal("not a projective bundle".into()))?;
        if !Arc::ptr_eq(&t.base, &self.ring) {
            return Err(Error::Internal("bundle over a different base".into()));
        }
        Ok(self.push_along(bundle, &t.base_map))
    }

    /// π_* for a projective bundle: the coefficient of ξ^{r-1}.
    pub fn pushforward(&self) -> Result<Self> {
        let t = self
            .ring
            .tower()
            .ok_or_else(|| Error::Internal("not a projective bundle".into()))?;
        let mut out = Self::zero(&t.base, self.proto());
        for i in 0..t.base.len() {
            let mut e = t.base.basis(i).to_vec();
            e.insert(t.xi, t.rank - 1);
            let j = self.ring.index_of(&e).expect("normal monomial");
            out.c[i] = self.c[j].clone();
        }
        Ok(out)
    }

    /// Writes the element as `Σ_k β_k ξ^k` with `β_k` on the base.
    pub fn xi_expansion(&self) -> Result<Vec<Self>> {
        let t = self
            .ring
            .tower()
            .ok_or_else(|| Error::Internal("not a projective bundle".into()))?;
        let mut out = vec![Self::zero(&t.base, self.proto()); t.rank as usize];
        for (j, a) in self.c.iter().enumerate() {
            let mut e = self.ring.basis(j).to_vec();
            let k = e.remove(t.xi);
            let i = t.base.index_of(&e).expect("normal monomial");
            out[k as usize].c[i] = a.clone();
        }
        Ok(out)
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> ChowVec<D> {
        ChowVec {
            ring: self.ring.clone(),
            c: self.c.iter().map(f).collect(),
        }
    }
}

impl ChowElem {
    pub fn int(ring: &Arc<ChowRing>, k: i64) -> Self {
        Self::constant(ring, BigInt::from(k))
    }

    pub fn gen(ring: &Arc<ChowRing>, g: usize) -> Self {
        Self::generator(ring, g, &BigInt::from(0))
    }

    /// Lifts an integral class to coefficients of type `C`.
    pub fn lift<C: Coeff>(&self, proto: &C) -> ChowVec<C> {
        self.map(|k| proto.one_like().scaled(k))
    }

    pub fn is_negative_free(&self) -> bool {
        self.c.iter().all(|x| !x.is_negative())
    }
}

impl<C: Coeff> Coeff for ChowVec<C> {
    fn zero_like(&self) -> Self {
        Self::zero(&self.ring, self.proto())
    }
    fn one_like(&self) -> Self {
        Self::one(&self.ring, self.proto())
    }
    fn is_zero(&self) -> bool {
        ChowVec::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn scaled(&self, c: &BigInt) -> Self {
        self.scale(c)
    }
    fn unit_inverse(&self) -> Option<Self> {
        let e = self.constant_part().unit_inverse()?;
        let u = Self::constant(&self.ring, e);
        (u.mul(self) == Self::one(&self.ring, self.proto())).then_some(u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_in_projective_space() {
        let r = ChowRing::projective_space(3, "h");
        let h = ChowElem::gen(&r, 0);
        let x = ChowElem::int(&r, 1).add(&h.scale(&BigInt::from(2)));
        let y = x.inverse().unwrap();
        assert_eq!(x.mul(&y), ChowElem::int(&r, 1));
        assert_eq!(y.coeffs()[r.index_of(&[3]).unwrap()], BigInt::from(-8));
    }
}
