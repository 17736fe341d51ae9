use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::elem::{ChowElem, ChowVec};
use super::kclass::KClass;
use super::ring::ChowRing;
use crate::algebra::{GradedPoly, TruncSeries};
use crate::error::{Error, Result};
use crate::symbols::MSymbols;

/// Chow class with polynomial coefficients.
pub type ChowPoly = ChowVec<GradedPoly>;

/// One summand `coeff · O(c1)` of a split bundle; `c1` maps generator names
/// to integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineSpec {
    pub coeff: i64,
    #[serde(default)]
    pub c1: BTreeMap<String, i64>,
}

/// How a variety is built, as stored in fixture files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum VarietyDescriptor {
    Point,
    #[serde(rename = "Pn")]
    Projective {
        n: u32,
    },
    Milnor {
        m: u32,
        n: u32,
    },
    Product {
        factors: Vec<VarietyDescriptor>,
    },
    Pbundle {
        base: Box<VarietyDescriptor>,
        bundle: Vec<LineSpec>,
    },
}

impl VarietyDescriptor {
    pub fn label(&self) -> String {
        match self {
            VarietyDescriptor::Point => "pt".into(),
            VarietyDescriptor::Projective { n } => format!("P{n}"),
            VarietyDescriptor::Milnor { m, n } => format!("H{m},{n}"),
            VarietyDescriptor::Product { factors } => factors
                .iter()
                .map(|f| f.label())
                .collect::<Vec<_>>()
                .join("x"),
            VarietyDescriptor::Pbundle { base, .. } => format!("P(E->{})", base.label()),
        }
    }
}

/// A smooth projective variety with a split stable tangent bundle.
#[derive(Clone, Debug)]
pub struct Variety {
    ring: Arc<ChowRing>,
    tangent: KClass,
    desc: VarietyDescriptor,
}

impl Variety {
    pub fn point() -> Self {
        let ring = ChowRing::point();
        Variety {
            tangent: KClass::zero(&ring),
            ring,
            desc: VarietyDescriptor::Point,
        }
    }

    pub fn projective_space(n: u32) -> Self {
        if n == 0 {
            return Self::point();
        }
        let ring = ChowRing::projective_space(n, "h");
        let h = ChowElem::gen(&ring, 0);
        let tangent = KClass::line(h)
            .scale(n as i64 + 1)
            .add(&KClass::trivial(&ring, -1));
        Variety {
            ring,
            tangent,
            desc: VarietyDescriptor::Projective { n },
        }
    }

    /// Product, with the embeddings of both factors' Chow rings.
    pub fn product_with_maps(a: &Variety, b: &Variety) -> Result<(Self, Vec<usize>, Vec<usize>)> {
        let (ring, ma, mb) = ChowRing::product(&a.ring, &b.ring)?;
        let tangent = a
            .tangent
            .push_along(&ring, &ma)
            .add(&b.tangent.push_along(&ring, &mb));
        let mut factors = match &a.desc {
            VarietyDescriptor::Product { factors } => factors.clone(),
            d => vec![d.clone()],
        };
        match &b.desc {
            VarietyDescriptor::Product { factors: f } => factors.extend(f.iter().cloned()),
            d => factors.push(d.clone()),
        }
        Ok((
            Variety {
                ring,
                tangent,
                desc: VarietyDescriptor::Product { factors },
            },
            ma,
            mb,
        ))
    }

    pub fn product(a: &Variety, b: &Variety) -> Result<Self> {
        Ok(Self::product_with_maps(a, b)?.0)
    }

    /// Projectivization (lines) of a split bundle `e` of nonnegative rank.
    pub fn projective_bundle(base: &Variety, e: &KClass) -> Result<Self> {
        let r = e.rank();
        if r <= 0 {
            return Err(Error::Invalid(format!(
                "projective bundle needs positive rank, got {r}"
            )));
        }
        let c = e.total_chern()?;
        let chern: Vec<Vec<BigInt>> = (1..=r as u32)
            .map(|j| c.component(j).coeffs().to_vec())
            .collect();
        if (r as u32 + 1..=base.dim()).any(|j| !c.component(j).is_zero()) {
            return Err(Error::Invalid(format!(
                "bundle of rank {r} has nonzero Chern classes above its rank"
            )));
        }
        let ring = ChowRing::projective_bundle(&base.ring, &chern, r as u32, "xi")?;
        let xi_gen = ring.tower().expect("tower").xi;
        let xi = ChowElem::gen(&ring, xi_gen);
        let pulled = base
            .tangent
            .push_along(&ring, &ring.tower().expect("tower").base_map);
        let epull = e.push_along(&ring, &ring.tower().expect("tower").base_map);
        let tangent = pulled
            .add(&epull.twist(&xi))
            .add(&KClass::trivial(&ring, -1));
        let bundle = e
            .lines()
            .iter()
            .map(|(k, c1)| LineSpec {
                coeff: *k,
                c1: c1_to_map(c1),
            })
            .collect();
        Ok(Variety {
            ring,
            tangent,
            desc: VarietyDescriptor::Pbundle {
                base: Box::new(base.desc.clone()),
                bundle,
            },
        })
    }

    /// Milnor hypersurface `H_{m,n} ⊂ ℙ^m × ℙ^n`, built as ℙ(ker) over ℙ^m.
    pub fn milnor(m: u32, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("H_{m,0} is empty".into()));
        }
        let base = Self::projective_space(m);
        let e = if m == 0 {
            KClass::trivial(&base.ring, n as i64)
        } else {
            KClass::trivial(&base.ring, n as i64 + 1)
                .sub(&KClass::line(ChowElem::gen(&base.ring, 0)))
        };
        let mut v = Self::projective_bundle(&base, &e)?;
        v.desc = VarietyDescriptor::Milnor { m, n };
        Ok(v)
    }

    pub fn from_descriptor(d: &VarietyDescriptor) -> Result<Self> {
        match d {
            VarietyDescriptor::Point => Ok(Self::point()),
            VarietyDescriptor::Projective { n } => Ok(Self::projective_space(*n)),
            VarietyDescriptor::Milnor { m, n } => Self::milnor(*m, *n),
            VarietyDescriptor::Product { factors } => {
                let mut acc = Self::point();
                for f in factors {
                    acc = Self::product(&acc, &Self::from_descriptor(f)?)?;
                }
                acc.desc = d.clone();
                Ok(acc)
            }
            VarietyDescriptor::Pbundle { base, bundle } => {
                let b = Self::from_descriptor(base)?;
                let e = kclass_from_specs(b.ring(), bundle)?;
                let mut v = Self::projective_bundle(&b, &e)?;
                v.desc = d.clone();
                Ok(v)
            }
        }
    }

    pub fn ring(&self) -> &Arc<ChowRing> {
        &self.ring
    }

    pub fn tangent(&self) -> &KClass {
        &self.tangent
    }

    pub fn descriptor(&self) -> &VarietyDescriptor {
        &self.desc
    }

    pub fn dim(&self) -> u32 {
        self.ring.dim()
    }

    /// Stable normal bundle `-T`.
    pub fn normal(&self) -> KClass {
        self.tangent.neg()
    }

    /// `c_(d)`: the power sum of the roots of `-T` in top degree.
    pub fn s_number(&self) -> BigInt {
        self.normal().power_sum_degree(self.dim())
    }
}

/// Reads a first Chern class written as `{generator: coefficient}`.
pub fn c1_from_map(ring: &Arc<ChowRing>, m: &BTreeMap<String, i64>) -> Result<ChowElem> {
    let mut c = ChowElem::zero(ring, &BigInt::zero());
    for (name, k) in m {
        let g = ring.gen_index(name).ok_or_else(|| {
            Error::Parse(format!(
                "unknown generator '{name}' (have {:?})",
                ring.names()
            ))
        })?;
        c = c.add(&ChowElem::gen(ring, g).scale(&BigInt::from(*k)));
    }
    Ok(c)
}

/// Inverse of [`c1_from_map`] for degree-one classes.
pub fn c1_to_map(c: &ChowElem) -> BTreeMap<String, i64> {
    let ring = c.ring();
    let mut out = BTreeMap::new();
    for (g, name) in ring.names().iter().enumerate() {
        let i = ring.gen_basis_index(g);
        if i == usize::MAX {
            continue;
        }
        let k = &c.coeffs()[i];
        if !k.is_zero() {
            out.insert(
                name.clone(),
                i64::try_from(k).expect("small first Chern class"),
            );
        }
    }
    out
}

pub fn kclass_from_specs(ring: &Arc<ChowRing>, specs: &[LineSpec]) -> Result<KClass> {
    let mut e = KClass::zero(ring);
    for s in specs {
        e = e.with_line(s.coeff, c1_from_map(ring, &s.c1)?);
    }
    Ok(e)
}

pub fn kclass_to_specs(e: &KClass) -> Vec<LineSpec> {
    e.lines()
        .iter()
        .map(|(k, c)| LineSpec {
            coeff: *k,
            c1: c1_to_map(c),
        })
        .collect()
}

/// `Π_L f(c1 L)^{k_L}` for the multiplicative class with characteristic
/// series `f`; `f(0)` must be ±1 when some `k_L` is negative.
pub fn multiplicative(e: &KClass, f: &TruncSeries<GradedPoly>) -> Result<ChowPoly> {
    let order = e.ring().dim() as usize + 1;
    let f = f.truncate(order);
    let proto = GradedPoly::zero(f.coeff(0).alphabet());
    let mut acc = ChowPoly::one(e.ring(), &proto);
    for (k, c) in e.lines() {
        if c.is_zero() {
            continue;
        }
        let g = if *k >= 0 {
            f.pow(*k as u32)
        } else {
            f.reciprocal()?.pow(k.unsigned_abs() as u32)
        };
        acc = acc.mul(&evaluate_at(&g, c));
    }
    Ok(acc)
}

/// `Σ_i g_i c^i` for a nilpotent class `c`.
pub fn evaluate_at(g: &TruncSeries<GradedPoly>, c: &ChowElem) -> ChowPoly {
    let proto = GradedPoly::zero(g.coeff(0).alphabet());
    let mut acc = ChowPoly::constant(c.ring(), g.coeff(0).clone());
    let mut p = ChowElem::int(c.ring(), 1);
    for i in 1..g.order() {
        p = p.mul(c);
        if p.is_zero() {
            break;
        }
        if !g.coeff(i).is_zero() {
            acc = acc.add(&p.lift(&proto).times_coeff(g.coeff(i)));
        }
    }
    acc
}

/// `1 + Σ_i b_i t^i` up to `t^{dim}`.
pub fn p_series(sy: &MSymbols, dim: u32) -> Result<TruncSeries<GradedPoly>> {
    if dim as usize > sy.cap() {
        return Err(Error::Window(format!(
            "dimension {dim} exceeds the b-alphabet ({})",
            sy.cap()
        )));
    }
    let coeffs = (0..=dim as usize)
        .map(|i| if i == 0 { sy.one() } else { sy.bp(i) })
        .collect();
    Ok(TruncSeries::new("t", coeffs))
}

/// `P(-T_X)` in `A(X)[b]`.
pub fn normal_p_class(sy: &MSymbols, x: &Variety) -> Result<ChowPoly> {
    multiplicative(&x.normal(), &p_series(sy, x.dim())?)
}

/// The cobordism class `⟦X⟧ = deg P(-T_X)` as a polynomial in the `b_i`.
pub fn cf_class(sy: &MSymbols, x: &Variety) -> Result<GradedPoly> {
    Ok(normal_p_class(sy, x)?.degree())
}

/// Chern number `c_α(X)`: the coefficient of `b_α` in `⟦X⟧`.
pub fn chern_number(sy: &MSymbols, x: &Variety, alpha: &[u32]) -> Result<BigInt> {
    if alpha.iter().sum::<u32>() != x.dim() {
        return Ok(BigInt::zero());
    }
    Ok(cf_class(sy, x)?.coeff(&sy.b_mono(alpha)))
}

/// Segre pushforward: `π_*(Σ_k β_k ξ^k) = Σ_k β_k s_{k-r+1}(E)` with `s = c(E)^{-1}`.
pub fn segre_pushforward(e: &KClass, parts: &[ChowPoly]) -> Result<ChowPoly> {
    let r = e.rank();
    let proto = parts
        .first()
        .map(|p| p.proto().clone())
        .ok_or_else(|| Error::Internal("empty expansion".into()))?;
    let s = e.total_chern()?.inverse()?;
    let mut acc = ChowPoly::zero(e.ring(), &proto);
    for (k, beta) in parts.iter().enumerate() {
        let j = k as i64 - r + 1;
        if j < 0 {
            continue;
        }
        acc = acc.add(&beta.mul(&s.component(j as u32).lift(&proto)));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::partitions;

    fn sy() -> MSymbols {
        MSymbols::new(8)
    }

    #[test]
    fn projective_classes() {
        let sy = sy();
        assert_eq!(
            cf_class(&sy, &Variety::projective_space(1)).unwrap(),
            sy.bp(1).scale_i(-2)
        );
        let p2 = cf_class(&sy, &Variety::projective_space(2)).unwrap();
        assert_eq!(p2, &sy.bp(1).pow(2).scale_i(6) - &sy.bp(2).scale_i(3));
        for n in 1..=6 {
            let x = Variety::projective_space(n);
            assert_eq!(
                chern_number(&sy, &x, &[n]).unwrap(),
                BigInt::from(-(n as i64) - 1)
            );
            assert_eq!(x.s_number(), BigInt::from(-(n as i64) - 1));
        }
    }

    #[test]
    fn products_are_decomposable() {
        let sy = sy();
        let p1 = Variety::projective_space(1);
        let x = Variety::product(&p1, &p1).unwrap();
        assert_eq!(chern_number(&sy, &x, &[2]).unwrap(), BigInt::zero());
        assert_eq!(chern_number(&sy, &x, &[1, 1]).unwrap(), BigInt::from(4));
        let want = cf_class(&sy, &p1).unwrap().pow(2);
        assert_eq!(cf_class(&sy, &x).unwrap(), want);
    }

    #[test]
    fn milnor_numbers() {
        let sy = sy();
        assert_eq!(Variety::milnor(1, 2).unwrap().s_number(), BigInt::zero());
        assert_eq!(Variety::milnor(2, 2).unwrap().s_number(), BigInt::from(6));
        assert_eq!(Variety::milnor(2, 4).unwrap().s_number(), BigInt::from(15));
        assert_eq!(Variety::milnor(3, 4).unwrap().s_number(), BigInt::from(35));
        // H_{0,n} is P^{n-1}.
        let a = cf_class(&sy, &Variety::milnor(0, 4).unwrap()).unwrap();
        assert_eq!(a, cf_class(&sy, &Variety::projective_space(3)).unwrap());
        // H_{1,n} is a P^{n-1}-bundle over P^1 with the same class as P^1 x P^{n-1}.
        let h = cf_class(&sy, &Variety::milnor(1, 3).unwrap()).unwrap();
        let p = cf_class(
            &sy,
            &Variety::product(&Variety::projective_space(1), &Variety::projective_space(2))
                .unwrap(),
        )
        .unwrap();
        assert_eq!(h, p);
    }

    #[test]
    fn pushforward_routes_agree() {
        let sy = sy();
        let x = Variety::milnor(2, 3).unwrap();
        let base = x.ring().tower().unwrap().base.clone();
        let e = KClass::trivial(&base, 4).sub(&KClass::line(ChowElem::gen(&base, 0)));
        let p = normal_p_class(&sy, &x).unwrap();
        let direct = p.pushforward().unwrap();
        let segre = segre_pushforward(&e, &p.xi_expansion().unwrap()).unwrap();
        assert_eq!(direct, segre);
    }

    #[test]
    fn descriptor_json() {
        let d: VarietyDescriptor =
            serde_json::from_str(r#"{"type":"pbundle","base":{"type":"Pn","n":1},"bundle":[{"coeff":1,"c1":{}},{"coeff":1,"c1":{"h":2}}]}"#)
                .unwrap();
        let x = Variety::from_descriptor(&d).unwrap();
        assert_eq!(x.dim(), 2);
        let back = serde_json::to_string(x.descriptor()).unwrap();
        assert!(back.contains("pbundle"));
        // Hirzebruch surfaces are cobordant to P^1 x P^1 in every Chern number.
        let sy = sy();
        for a in partitions(2) {
            let p = Variety::product(&Variety::projective_space(1), &Variety::projective_space(1))
                .unwrap();
            assert_eq!(
                chern_number(&sy, &x, &a).unwrap(),
                chern_number(&sy, &p, &a).unwrap()
            );
        }
    }
}
