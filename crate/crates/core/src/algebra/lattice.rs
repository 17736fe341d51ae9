//! Integer row lattices in Hermite normal form, with the transformation kept
//! so that a solved target comes back as a combination of the original
//! generators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug)]
struct Row {
    pivot: usize,
    v: Vec<BigInt>,
    u: Vec<BigInt>,
}

#[derive(Clone, Debug)]
pub struct Lattice {
    ncols: usize,
    ngens: usize,
    rows: Vec<Row>,
}

/// Outcome of a membership query.
#[derive(Clone, Debug, PartialEq)]
pub enum Solve {
    /// Coefficients on the original generators.
    Member(Vec<BigInt>),
    /// What is left after reducing by the lattice.
    Residual(Vec<BigInt>),
}

fn axpy(dst: &mut [BigInt], q: &BigInt, src: &[BigInt]) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d -= q * s;
        }
    }
}

impl Lattice {
    pub fn new(ncols: usize, gens: &[Vec<BigInt>]) -> Self {
        let ngens = gens.len();
        let mut work: Vec<(Vec<BigInt>, Vec<BigInt>)> = gens
            .iter()
            .enumerate()
            .map(|(k, g)| {
                assert_eq!(g.len(), ncols, "generator length");
                let mut u = vec![BigInt::zero(); ngens];
                u[k] = BigInt::one();
                (g.clone(), u)
            })
            .collect();
        let mut rows: Vec<Row> = Vec::new();
        for c in 0..ncols {
            loop {
                let mut best: Option<usize> = None;
                for (k, (v, _)) in work.iter().enumerate() {
                    if !v[c].is_zero() && best.is_none_or(|b| v[c].abs() < work[b].0[c].abs()) {
                        best = Some(k);
                    }
                }
                let Some(b) = best else { break };
                let (pv, pu) = work.swap_remove(b);
                let mut others_nonzero = false;
                for (v, u) in work.iter_mut() {
                    if v[c].is_zero() {
                        continue;
                    }
                    let q = v[c].div_floor(&pv[c]);
                    axpy(v, &q, &pv);
                    axpy(u, &q, &pu);
                    if !v[c].is_zero() {
                        others_nonzero = true;
                    }
                }
                if others_nonzero {
                    work.push((pv, pu));
                    continue;
                }
                let (mut pv, mut pu) = (pv, pu);
                if pv[c].is_negative() {
                    pv.iter_mut().for_each(|x| *x = -&*x);
                    pu.iter_mut().for_each(|x| *x = -&*x);
                }
                for r in rows.iter_mut() {
                    let q = r.v[c].div_floor(&pv[c]);
                    if !q.is_zero() {
                        axpy(&mut r.v, &q, &pv);
                        axpy(&mut r.u, &q, &pu);
                    }
                }
                rows.push(Row {
                    pivot: c,
                    v: pv,
                    u: pu,
                });
                break;
            }
        }
        Lattice { ncols, ngens, rows }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// HNF basis rows.
    pub fn basis(&self) -> Vec<Vec<BigInt>> {
        self.rows.iter().map(|r| r.v.clone()).collect()
    }

    /// Pivot entries (the elementary diagonal of the HNF).
    pub fn pivots(&self) -> Vec<(usize, BigInt)> {
        self.rows
            .iter()
            .map(|r| (r.pivot, r.v[r.pivot].clone()))
            .collect()
    }

    pub fn solve(&self, target: &[BigInt]) -> Solve {
        assert_eq!(target.len(), self.ncols);
        let mut t = target.to_vec();
        let mut coef = vec![BigInt::zero(); self.ngens];
        for r in &self.rows {
            let x = &t[r.pivot];
            if x.is_zero() {
                continue;
            }
            let (q, rem) = x.div_rem(&r.v[r.pivot]);
            if !rem.is_zero() {
                return Solve::Residual(t);
            }
            axpy(&mut t, &q, &r.v);
            for (c, u) in coef.iter_mut().zip(&r.u) {
                *c += &q * u;
            }
        }
        if t.iter().all(Zero::is_zero) {
            Solve::Member(coef)
        } else {
            Solve::Residual(t)
        }
    }

    pub fn contains(&self, target: &[BigInt]) -> bool {
        matches!(self.solve(target), Solve::Member(_))
    }
}

/// Rank of a set of integer vectors over ℚ.
pub fn rank(ncols: usize, gens: &[Vec<BigInt>]) -> usize {
    Lattice::new(ncols, gens).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|&a| BigInt::from(a)).collect()
    }

    #[test]
    fn hnf_and_membership() {
        let l = Lattice::new(2, &[v(&[2, 1]), v(&[0, 3])]);
        assert_eq!(l.rank(), 2);
        assert!(l.contains(&v(&[4, 5])));
        assert!(!l.contains(&v(&[1, 0])));
        match l.solve(&v(&[2, 4])) {
            Solve::Member(c) => assert_eq!(c, v(&[1, 1])),
            r => panic!("{r:?}"),
        }
    }

    #[test]
    fn dependent_generators() {
        let l = Lattice::new(3, &[v(&[6, 0, 2]), v(&[4, 0, 2]), v(&[2, 0, 0])]);
        assert_eq!(l.rank(), 2);
        match l.solve(&v(&[2, 0, 2])) {
            Solve::Member(c) => {
                let recon: Vec<BigInt> = (0..3)
                    .map(|j| {
                        c[0].clone() * [6, 0, 2][j]
                            + c[1].clone() * [4, 0, 2][j]
                            + c[2].clone() * [2, 0, 0][j]
                    })
                    .collect();
                assert_eq!(recon, v(&[2, 0, 2]));
            }
            r => panic!("{r:?}"),
        }
        assert!(!l.contains(&v(&[0, 1, 0])));
    }
}
