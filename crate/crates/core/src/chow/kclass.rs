use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::elem::ChowElem;
use super::ring::ChowRing;
use crate::error::Result;

/// A virtual bundle `Σ k_i L_i` that splits into line bundles, recorded
/// by first Chern classes.
#[derive(Clone, Debug)]
pub struct KClass {
    ring: Arc<ChowRing>,
    lines: Vec<(i64, ChowElem)>,
}

impl PartialEq for KClass {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &o.ring)
            && self.lines.len() == o.lines.len()
            && self.lines.iter().all(|l| o.lines.contains(l))
    }
}

impl KClass {
    pub fn zero(ring: &Arc<ChowRing>) -> Self {
        KClass {
            ring: ring.clone(),
            lines: vec![],
        }
    }

    pub fn trivial(ring: &Arc<ChowRing>, n: i64) -> Self {
        Self::zero(ring).with_line(n, ChowElem::zero(ring, &BigInt::zero()))
    }

    pub fn line(c1: ChowElem) -> Self {
        let ring = c1.ring().clone();
        Self::zero(&ring).with_line(1, c1)
    }

    pub fn with_line(mut self, k: i64, c1: ChowElem) -> Self {
        assert!(
            Arc::ptr_eq(&self.ring, c1.ring()),
            "line from a different ring"
        );
        if k == 0 {
            return self;
        }
        if let Some(p) = self.lines.iter_mut().find(|(_, c)| *c == c1) {
            p.0 += k;
        } else {
            self.lines.push((k, c1));
        }
        self.lines.retain(|(k, _)| *k != 0);
        self
    }

    pub fn ring(&self) -> &Arc<ChowRing> {
        &self.ring
    }

    pub fn lines(&self) -> &[(i64, ChowElem)] {
        &self.lines
    }

    pub fn rank(&self) -> i64 {
        self.lines.iter().map(|(k, _)| k).sum()
    }

    pub fn add(&self, o: &Self) -> Self {
        o.lines
            .iter()
            .fold(self.clone(), |acc, (k, c)| acc.with_line(*k, c.clone()))
    }

    pub fn scale(&self, m: i64) -> Self {
        self.lines
            .iter()
            .fold(Self::zero(&self.ring), |acc, (k, c)| {
                acc.with_line(k * m, c.clone())
            })
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// `E ⊗ L` where `L` has first Chern class `c1`.
    pub fn twist(&self, c1: &ChowElem) -> Self {
        self.lines
            .iter()
            .fold(Self::zero(&self.ring), |acc, (k, c)| {
                acc.with_line(*k, c.add(c1))
            })
    }

    pub fn dual(&self) -> Self {
        self.lines
            .iter()
            .fold(Self::zero(&self.ring), |acc, (k, c)| {
                acc.with_line(*k, c.neg())
            })
    }

    pub fn push_along(&self, target: &Arc<ChowRing>, map: &[usize]) -> Self {
        self.lines.iter().fold(Self::zero(target), |acc, (k, c)| {
            acc.with_line(*k, c.push_along(target, map))
        })
    }

    pub fn total_chern(&self) -> Result<ChowElem> {
        let one = ChowElem::int(&self.ring, 1);
        let mut acc = one.clone();
        for (k, c) in &self.lines {
            if c.is_zero() {
                continue;
            }
            acc = acc.mul(&one.add(c).pow_signed(*k)?);
        }
        Ok(acc)
    }

    /// `c_1 .. c_top` as a list; index 0 is `c_0 = 1`.
    pub fn chern_classes(&self) -> Result<Vec<ChowElem>> {
        let c = self.total_chern()?;
        Ok((0..=self.ring.dim()).map(|d| c.component(d)).collect())
    }

    /// Power sums `Σ k_i c1(L_i)^d` integrated; only meaningful in top degree.
    pub fn power_sum_degree(&self, d: u32) -> BigInt {
        self.lines
            .iter()
            .map(|(k, c)| c.pow(d).degree() * BigInt::from(*k))
            .sum()
    }
}
