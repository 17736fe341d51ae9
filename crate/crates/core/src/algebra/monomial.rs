use std::cmp::Ordering;

use smallvec::SmallVec;

/// Sparse exponent vector: `(symbol index, exponent)` pairs sorted by index,
/// with no zero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[(u16, i32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(i: usize, e: i32) -> Self {
        let mut m = Monomial::one();
        if e != 0 {
            m.0.push((i as u16, e));
        }
        m
    }

    /// Builds from arbitrary pairs; repeated indices are summed.
    pub fn from_pairs<I: IntoIterator<Item = (usize, i32)>>(pairs: I) -> Self {
        let mut v: Vec<(u16, i32)> = pairs.into_iter().map(|(i, e)| (i as u16, e)).collect();
        v.sort_by_key(|p| p.0);
        let mut out: SmallVec<[(u16, i32); 4]> = SmallVec::new();
        for (i, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == i => last.1 += e,
                _ => out.push((i, e)),
            }
        }
        out.retain(|p| p.1 != 0);
        Monomial(out)
    }

    pub fn from_dense(exps: &[i32]) -> Self {
        Monomial(
            exps.iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(i, &e)| (i as u16, e))
                .collect(),
        )
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exp(&self, i: usize) -> i32 {
        self.0
            .iter()
            .find(|p| p.0 as usize == i)
            .map(|p| p.1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, i32)> + '_ {
        self.0.iter().map(|&(i, e)| (i as usize, e))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().map(|p| p.1 as i64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out: SmallVec<[(u16, i32); 4]> = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(i, e)| (i, e * k)).collect())
    }

    pub fn inverse(&self) -> Monomial {
        self.pow(-1)
    }

    /// Drops the given symbol, returning the remaining monomial and its exponent.
    pub fn split_off(&self, i: usize) -> (Monomial, i32) {
        let mut e = 0;
        let rest = self
            .0
            .iter()
            .filter(|p| {
                if p.0 as usize == i {
                    e = p.1;
                    false
                } else {
                    true
                }
            })
            .copied()
            .collect();
        (Monomial(rest), e)
    }

    /// Keeps only symbols satisfying `keep`.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter(|p| keep(p.0 as usize))
                .copied()
                .collect(),
        )
    }

    pub fn weighted(&self, w: impl Fn(usize) -> i64) -> i64 {
        self.0.iter().map(|&(i, e)| w(i as usize) * e as i64).sum()
    }

    pub fn to_dense(&self, n: usize) -> Vec<i32> {
        let mut v = vec![0; n];
        for &(i, e) in &self.0 {
            v[i as usize] = e;
        }
        v
    }
}

/// Graded-lexicographic order: total exponent first, then the dense vector
/// compared from the first symbol.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total().cmp(&other.total()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(x), None) => return x.1.cmp(&0),
                (None, Some(y)) => return 0.cmp(&y.1),
                (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                    Ordering::Less => return x.1.cmp(&0),
                    Ordering::Greater => return 0.cmp(&y.1),
                    Ordering::Equal => {
                        if x.1 != y.1 {
                            return x.1.cmp(&y.1);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_cancels() {
        let a = Monomial::from_pairs([(0, 2), (3, -1)]);
        let b = Monomial::from_pairs([(3, 1), (1, 1)]);
        assert_eq!(a.mul(&b), Monomial::from_pairs([(0, 2), (1, 1)]));
    }

    #[test]
    fn order_is_total_then_lex() {
        let x = Monomial::var(0, 1);
        let y = Monomial::var(1, 1);
        let x2 = Monomial::var(0, 2);
        assert!(y < x);
        assert!(x < x2);
        assert!(Monomial::one() < y);
        assert_eq!(Monomial::from_pairs([(1, 1), (0, 1)]), x.mul(&y));
    }
}
