use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

type Sparse = Vec<(usize, BigInt)>;

/// Data kept for a projective bundle so that pushforwards can be formed.
#[derive(Debug)]
pub struct Tower {
    pub base: Arc<ChowRing>,
    pub rank: u32,
    /// Position of ξ among the generators.
    pub xi: usize,
    /// Base basis index -> index in this ring (ξ exponent 0).
    pub base_map: Vec<usize>,
}

/// ℤ-algebra generated by degree-one classes, each subject to a monic
/// relation `g^e = -Σ_{j=1}^{e} c_j g^{e-j}` with `c_j` in the earlier
/// generators. Normal monomials have every exponent below its bound.
pub struct ChowRing {
    names: Vec<String>,
    bounds: Vec<u32>,
    relations: Vec<Vec<Sparse>>,
    basis: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    degrees: Vec<u32>,
    dim: u32,
    table: Vec<Sparse>,
    tower: Option<Tower>,
}

/// Exponent vectors below the bounds, ordered by degree.
fn enumerate_basis(bounds: &[u32]) -> (Vec<Vec<u32>>, HashMap<Vec<u32>, usize>) {
    let mut basis: Vec<Vec<u32>> = vec![vec![]];
    for &bd in bounds {
        let mut next = Vec::with_capacity(basis.len() * bd as usize);
        for b in &basis {
            for e in 0..bd {
                let mut x = b.clone();
                x.push(e);
                next.push(x);
            }
        }
        basis = next;
    }
    basis.sort_by_key(|b| (b.iter().sum::<u32>(), std::cmp::Reverse(b.clone())));
    let index = basis
        .iter()
        .enumerate()
        .map(|(i, b)| (b.clone(), i))
        .collect();
    (basis, index)
}

impl fmt::Debug for ChowRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ChowRing(gens={:?}, bounds={:?}, dim={})",
            self.names, self.bounds, self.dim
        )
    }
}

impl ChowRing {
    fn build(
        names: Vec<String>,
        bounds: Vec<u32>,
        relations: Vec<Vec<Sparse>>,
        tower: Option<Tower>,
    ) -> Result<Arc<Self>> {
        let (basis, index) = enumerate_basis(&bounds);
        let degrees: Vec<u32> = basis.iter().map(|b| b.iter().sum()).collect();
        let dim = bounds.iter().map(|b| b - 1).sum();
        let mut ring = ChowRing {
            names,
            bounds,
            relations,
            basis,
            index,
            degrees,
            dim,
            table: vec![],
            tower,
        };
        let n = ring.basis.len();
        let mut memo: HashMap<Vec<u32>, Sparse> = HashMap::new();
        let mut table = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in i..n {
                if ring.degrees[i] + ring.degrees[j] > ring.dim {
                    continue;
                }
                let e: Vec<u32> = ring.basis[i]
                    .iter()
                    .zip(&ring.basis[j])
                    .map(|(a, b)| a + b)
                    .collect();
                let r = ring.reduce(&e, &mut memo, 0)?;
                table[i * n + j] = r.clone();
                table[j * n + i] = r;
            }
        }
        ring.table = table;
        Ok(Arc::new(ring))
    }

    /// Normal form of a monomial: rewrite the latest generator that exceeds its bound.
    fn reduce(
        &self,
        e: &[u32],
        memo: &mut HashMap<Vec<u32>, Sparse>,
        depth: usize,
    ) -> Result<Sparse> {
        if e.iter().sum::<u32>() > self.dim {
            return Ok(vec![]);
        }
        if let Some(r) = memo.get(e) {
            return Ok(r.clone());
        }
        if depth > 10_000 {
            return Err(Error::Internal(
                "normal form rewriting did not terminate".into(),
            ));
        }
        let Some(g) = (0..e.len()).rev().find(|&g| e[g] >= self.bounds[g]) else {
            return Ok(vec![(self.index[e], BigInt::one())]);
        };
        let bound = self.bounds[g];
        let mut acc: HashMap<usize, BigInt> = HashMap::new();
        for j in 1..=bound {
            for (bidx, c) in &self.relations[g][(j - 1) as usize] {
                let mut f: Vec<u32> = e
                    .iter()
                    .zip(&self.basis[*bidx])
                    .map(|(a, b)| a + b)
                    .collect();
                f[g] -= j;
                for (k, t) in self.reduce(&f, memo, depth + 1)? {
                    *acc.entry(k).or_default() -= c * t;
                }
            }
        }
        let mut out: Sparse = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_by_key(|p| p.0);
        memo.insert(e.to_vec(), out.clone());
        Ok(out)
    }

    pub fn point() -> Arc<Self> {
        Self::build(vec![], vec![], vec![], None).expect("point ring")
    }

    /// ℤ[h]/h^{n+1}.
    pub fn projective_space(n: u32, name: &str) -> Arc<Self> {
        if n == 0 {
            return Self::point();
        }
        let rel = vec![vec![]; (n + 1) as usize];
        Self::build(vec![name.to_string()], vec![n + 1], vec![rel], None)
            .expect("projective space ring")
    }

    /// Tensor product. Colliding generator names get suffixes `_1` / `_2`.
    pub fn product(a: &Arc<Self>, b: &Arc<Self>) -> Result<(Arc<Self>, Vec<usize>, Vec<usize>)> {
        let clash: Vec<&String> = a.names.iter().filter(|n| b.names.contains(n)).collect();
        let rename = |n: &String, side: &str| {
            if clash.contains(&n) {
                format!("{n}_{side}")
            } else {
                n.clone()
            }
        };
        let mut names: Vec<String> = a.names.iter().map(|n| rename(n, "1")).collect();
        names.extend(b.names.iter().map(|n| rename(n, "2")));
        let mut bounds = a.bounds.clone();
        bounds.extend(&b.bounds);
        let na = a.names.len();
        // Lift relation coefficients: basis exponent vectors padded with zeros.
        let lift_a = |s: &Sparse| -> Vec<(Vec<u32>, BigInt)> {
            s.iter()
                .map(|(i, c)| {
                    let mut e = a.basis[*i].clone();
                    e.extend(std::iter::repeat_n(0, b.names.len()));
                    (e, c.clone())
                })
                .collect()
        };
        let lift_b = |s: &Sparse| -> Vec<(Vec<u32>, BigInt)> {
            s.iter()
                .map(|(i, c)| {
                    let mut e = vec![0; na];
                    e.extend(&b.basis[*i]);
                    (e, c.clone())
                })
                .collect()
        };
        let rel_exps: Vec<Vec<Vec<(Vec<u32>, BigInt)>>> = a
            .relations
            .iter()
            .map(|r| r.iter().map(&lift_a).collect())
            .chain(b.relations.iter().map(|r| r.iter().map(&lift_b).collect()))
            .collect();
        let ring = Self::build_with_exp_relations(names, bounds, rel_exps, None)?;
        let map_a = a
            .basis
            .iter()
            .map(|e| {
                let mut x = e.clone();
                x.extend(std::iter::repeat_n(0, b.names.len()));
                ring.index[&x]
            })
            .collect();
        let map_b = b
            .basis
            .iter()
            .map(|e| {
                let mut x = vec![0; na];
                x.extend(e);
                ring.index[&x]
            })
            .collect();
        Ok((ring, map_a, map_b))
    }

    fn build_with_exp_relations(
        names: Vec<String>,
        bounds: Vec<u32>,
        rels: Vec<Vec<Vec<(Vec<u32>, BigInt)>>>,
        tower: Option<Tower>,
    ) -> Result<Arc<Self>> {
        let (_, index) = enumerate_basis(&bounds);
        let mut relations = Vec::with_capacity(names.len());
        for (g, r) in rels.into_iter().enumerate() {
            if r.len() != bounds[g] as usize {
                return Err(Error::Internal(
                    "relation length differs from its bound".into(),
                ));
            }
            let mut rg = Vec::new();
            for cj in r {
                let mut s: Sparse = Vec::new();
                for (e, c) in cj {
                    if e[g..].iter().any(|&x| x != 0) {
                        return Err(Error::Internal("relation uses a later generator".into()));
                    }
                    let i = *index
                        .get(&e)
                        .ok_or_else(|| Error::Internal("relation term is not normal".into()))?;
                    s.push((i, c));
                }
                rg.push(s);
            }
            relations.push(rg);
        }
        Self::build(names, bounds, relations, tower)
    }

    /// Adjoins ξ with `Σ_j c_j ξ^{r-j} = 0` (lines convention; `c_0 = 1`).
    /// `chern[j-1]` is `c_j` as a vector over the base basis.
    pub fn projective_bundle(
        base: &Arc<Self>,
        chern: &[Vec<BigInt>],
        rank: u32,
        name: &str,
    ) -> Result<Arc<Self>> {
        if rank == 0 {
            return Err(Error::Invalid(
                "projective bundle of a rank-0 bundle is empty".into(),
            ));
        }
        let mut name = name.to_string();
        while base.names.contains(&name) {
            name.push('\'');
        }
        let mut names = base.names.clone();
        names.push(name);
        let mut bounds = base.bounds.clone();
        bounds.push(rank);
        let lift = |v: &Vec<BigInt>| -> Vec<(Vec<u32>, BigInt)> {
            v.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| {
                    let mut e = base.basis[i].clone();
                    e.push(0);
                    (e, c.clone())
                })
                .collect()
        };
        let mut rels: Vec<Vec<Vec<(Vec<u32>, BigInt)>>> = base
            .relations
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| {
                        s.iter()
                            .map(|(i, c)| {
                                let mut e = base.basis[*i].clone();
                                e.push(0);
                                (e, c.clone())
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let zero = vec![BigInt::zero(); base.basis.len()];
        rels.push(
            (1..=rank as usize)
                .map(|j| lift(chern.get(j - 1).unwrap_or(&zero)))
                .collect(),
        );
        let xi = base.names.len();
        let ring = Self::build_with_exp_relations(names, bounds, rels, None)?;
        let base_map: Vec<usize> = base
            .basis
            .iter()
            .map(|e| {
                let mut x = e.clone();
                x.push(0);
                ring.index[&x]
            })
            .collect();
        // Rebuild with the tower attached (the relations are already validated).
        let ring = Arc::try_unwrap(ring)
            .map_err(|_| Error::Internal("ring shared during construction".into()))?;
        Ok(Arc::new(ChowRing {
            tower: Some(Tower {
                base: base.clone(),
                rank,
                xi,
                base_map,
            }),
            ..ring
        }))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self, i: usize) -> &[u32] {
        &self.basis[i]
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn index_of(&self, e: &[u32]) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Index of the fundamental monomial (all exponents maximal).
    pub fn top(&self) -> usize {
        let e: Vec<u32> = self.bounds.iter().map(|b| b - 1).collect();
        self.index[&e]
    }

    pub fn unit(&self) -> usize {
        self.index[&vec![0; self.names.len()]]
    }

    pub fn gen_basis_index(&self, g: usize) -> usize {
        let mut e = vec![0; self.names.len()];
        e[g] = 1;
        // A generator with bound 1 is rewritten; those are handled by `monomial`.
        self.index.get(&e).copied().unwrap_or(usize::MAX)
    }

    /// Product of two basis elements.
    pub fn mul_basis(&self, i: usize, j: usize) -> &[(usize, BigInt)] {
        &self.table[i * self.basis.len() + j]
    }

    /// Normal form of an arbitrary monomial.
    pub fn monomial(&self, e: &[u32]) -> Vec<(usize, BigInt)> {
        let mut memo = HashMap::new();
        self.reduce(e, &mut memo, 0).expect("validated relations")
    }

    pub fn tower(&self) -> Option<&Tower> {
        self.tower.as_ref()
    }

    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_plane() {
        let r = ChowRing::projective_space(2, "h");
        assert_eq!(r.len(), 3);
        assert_eq!(r.dim(), 2);
        let h = r.index_of(&[1]).unwrap();
        let h2 = r.index_of(&[2]).unwrap();
        assert_eq!(r.mul_basis(h, h), &[(h2, BigInt::one())]);
        assert!(r.monomial(&[3]).is_empty());
    }

    #[test]
    fn product_renames() {
        let p = ChowRing::projective_space(1, "h");
        let (r, ma, mb) = ChowRing::product(&p, &p).unwrap();
        assert_eq!(r.names(), &["h_1".to_string(), "h_2".to_string()]);
        let t = r.mul_basis(ma[1], mb[1]);
        assert_eq!(t, &[(r.top(), BigInt::one())]);
    }

    #[test]
    fn bundle_relation() {
        // H_{1,2}: over P^1, c(E) = 1 - h, rank 2: xi^2 = h xi.
        let p = ChowRing::projective_space(1, "h");
        let c1 = vec![BigInt::zero(), BigInt::from(-1)];
        let r = ChowRing::projective_bundle(&p, &[c1], 2, "xi").unwrap();
        assert_eq!(r.dim(), 2);
        let xi2 = r.monomial(&[0, 2]);
        assert_eq!(xi2, vec![(r.top(), BigInt::one())]);
    }
}
