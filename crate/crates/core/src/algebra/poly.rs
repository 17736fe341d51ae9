use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::alphabet::{same, Alphabet};
use super::monomial::Monomial;
use crate::error::{Error, Result};

/// Sparse polynomial with arbitrary-precision integer coefficients.
#[derive(Clone)]
pub struct GradedPoly {
    alpha: Arc<Alphabet>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl PartialEq for GradedPoly {
    fn eq(&self, other: &Self) -> bool {
        same(&self.alpha, &other.alpha) && self.terms == other.terms
    }
}

impl Eq for GradedPoly {}

impl fmt::Debug for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl GradedPoly {
    pub fn zero(alpha: &Arc<Alphabet>) -> Self {
        GradedPoly {
            alpha: alpha.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alpha: &Arc<Alphabet>) -> Self {
        Self::constant(alpha, 1)
    }

    pub fn constant(alpha: &Arc<Alphabet>, c: impl Into<BigInt>) -> Self {
        Self::term(alpha, Monomial::one(), c.into())
    }

    /// `symbol^e`; panics on a negative exponent of a non-Laurent symbol.
    pub fn var(alpha: &Arc<Alphabet>, i: usize, e: i32) -> Self {
        assert!(
            e >= 0 || alpha.is_laurent(i),
            "negative power of {}",
            alpha.symbol(i).name
        );
        Self::term(alpha, Monomial::var(i, e), BigInt::one())
    }

    pub fn named(alpha: &Arc<Alphabet>, name: &str) -> Self {
        Self::var(alpha, alpha.expect(name), 1)
    }

    pub fn term(alpha: &Arc<Alphabet>, m: Monomial, c: BigInt) -> Self {
        let mut p = Self::zero(alpha);
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(
        alpha: &Arc<Alphabet>,
        it: I,
    ) -> Self {
        let mut p = Self::zero(alpha);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alpha
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, BigInt> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::one()).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&Monomial::one())
    }

    /// The integer value if the polynomial is constant.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn add_term_ref(&mut self, m: &Monomial, c: &BigInt) {
        if let Some(x) = self.terms.get_mut(m) {
            *x += c;
            if x.is_zero() {
                self.terms.remove(m);
            }
        } else if !c.is_zero() {
            self.terms.insert(m.clone(), c.clone());
        }
    }

    fn check(&self, other: &Self) {
        assert!(same(&self.alpha, &other.alpha), "alphabet mismatch");
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if !same(&self.alpha, &other.alpha) {
            return Err(Error::AlphabetMismatch);
        }
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if !same(&self.alpha, &other.alpha) {
            return Err(Error::AlphabetMismatch);
        }
        Ok(self * other)
    }

    /// Product keeping only the monomials accepted by `keep`.
    pub fn mul_filtered(&self, other: &Self, keep: impl Fn(&Monomial) -> bool) -> Self {
        self.check(other);
        let mut out = Self::zero(&self.alpha);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                if keep(&m) {
                    out.add_term(m, c1 * c2);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(&self.alpha);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Signed power. Negative exponents need a unit monomial in Laurent symbols.
    pub fn pow_signed(&self, k: i64) -> Result<Self> {
        if k >= 0 {
            return Ok(self.pow(k as u32));
        }
        if self.terms.len() != 1 {
            return Err(Error::Invalid(
                "only a single unit monomial has a negative power".into(),
            ));
        }
        let (m, c) = self.terms.iter().next().unwrap();
        if !(c.is_one() || (-c).is_one()) {
            return Err(Error::Invalid("coefficient is not a unit".into()));
        }
        for (i, _) in m.iter() {
            if !self.alpha.is_laurent(i) {
                return Err(Error::NegativeExponent(self.alpha.symbol(i).name.clone()));
            }
        }
        let inv = Self::term(&self.alpha, m.inverse(), c.clone());
        Ok(inv.pow((-k) as u32))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(&self.alpha);
        }
        GradedPoly {
            alpha: self.alpha.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn scale_i(&self, c: i64) -> Self {
        self.scale(&BigInt::from(c))
    }

    /// Multiplies by a monomial.
    pub fn shift(&self, m: &Monomial) -> Self {
        GradedPoly {
            alpha: self.alpha.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn exact_div(&self, den: &BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Invalid("division by zero".into()));
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(den);
            if !r.is_zero() {
                return Err(Error::Divisibility {
                    term: self.fmt_monomial(m),
                    coeff: c.to_string(),
                    den: den.to_string(),
                });
            }
            terms.insert(m.clone(), q);
        }
        Ok(GradedPoly {
            alpha: self.alpha.clone(),
            terms,
        })
    }

    /// Largest power of two dividing every coefficient (None for zero).
    pub fn two_adic_valuation(&self) -> Option<u64> {
        self.terms
            .values()
            .map(|c| c.trailing_zeros().unwrap_or(0))
            .min()
    }

    pub fn retain(&mut self, keep: impl Fn(&Monomial, &BigInt) -> bool) {
        self.terms.retain(|m, c| keep(m, c));
    }

    pub fn filtered(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        GradedPoly {
            alpha: self.alpha.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&BigInt) -> BigInt) -> Self {
        Self::from_terms(
            &self.alpha,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }

    pub fn degree_of(&self, m: &Monomial) -> i64 {
        m.weighted(|i| self.alpha.degree(i) as i64)
    }

    /// The common degree of all terms, if homogeneous (zero counts as homogeneous of any degree: None).
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|m| self.degree_of(m));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn components_by<K: Ord>(&self, key: impl Fn(&Monomial) -> K) -> BTreeMap<K, GradedPoly> {
        let mut out: BTreeMap<K, GradedPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(key(m))
                .or_insert_with(|| Self::zero(&self.alpha))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn homogeneous_components(&self) -> BTreeMap<i64, GradedPoly> {
        self.components_by(|m| self.degree_of(m))
    }

    /// Splits off the symbols chosen by `pick`: returns a map from the picked
    /// part of each monomial to its coefficient polynomial in the other symbols.
    pub fn split_by(&self, pick: impl Fn(usize) -> bool) -> BTreeMap<Monomial, GradedPoly> {
        let mut out: BTreeMap<Monomial, GradedPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key = m.restrict(&pick);
            let rest = m.restrict(|i| !pick(i));
            out.entry(key)
                .or_insert_with(|| Self::zero(&self.alpha))
                .add_term(rest, c.clone());
        }
        out
    }

    /// Ring morphism into `target`: each term c·Π s_i^{e_i} maps to
    /// c·Π image(i, e_i).
    pub fn eval_hom(
        &self,
        target: &Arc<Alphabet>,
        mut image: impl FnMut(usize, i32) -> GradedPoly,
    ) -> GradedPoly {
        let mut out = GradedPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = GradedPoly::constant(target, c.clone());
            for (i, e) in m.iter() {
                if t.is_zero() {
                    break;
                }
                t = &t * &image(i, e);
            }
            out += &t;
        }
        out
    }

    /// Ring morphism to ℤ.
    pub fn eval_int(&self, image: impl Fn(usize) -> BigInt) -> BigInt {
        let mut out = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, e) in m.iter() {
                assert!(e >= 0, "integer evaluation of a negative power");
                t *= num_traits::pow(image(i), e as usize);
            }
            out += t;
        }
        out
    }

    /// Moves the polynomial to another alphabet by symbol name.
    pub fn rename_into(&self, target: &Arc<Alphabet>) -> Result<GradedPoly> {
        let mut out = GradedPoly::zero(target);
        for (m, c) in &self.terms {
            let mut pairs = Vec::new();
            for (i, e) in m.iter() {
                let name = &self.alpha.symbol(i).name;
                let j = target
                    .get(name)
                    .ok_or_else(|| Error::Parse(format!("unknown symbol {name}")))?;
                pairs.push((j, e));
            }
            out.add_term(Monomial::from_pairs(pairs), c.clone());
        }
        Ok(out)
    }

    fn fmt_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        m.iter()
            .map(|(i, e)| {
                let n = &self.alpha.symbol(i).name;
                if e == 1 {
                    n.clone()
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Canonical JSON: only the symbols that occur are listed, in alphabet order.
    pub fn to_json(&self) -> Value {
        let mut used: Vec<usize> = self
            .terms
            .keys()
            .flat_map(|m| m.iter().map(|p| p.0))
            .collect();
        used.sort_unstable();
        used.dedup();
        let vars: Vec<Value> = used
            .iter()
            .map(|&i| {
                let s = self.alpha.symbol(i);
                json!([s.name, s.degree, s.laurent])
            })
            .collect();
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let exps: Vec<i32> = used.iter().map(|&i| m.exp(i)).collect();
                json!([exps, c.to_string()])
            })
            .collect();
        json!({ "vars": vars, "terms": terms })
    }

    pub fn from_json(v: &Value, alpha: &Arc<Alphabet>) -> Result<GradedPoly> {
        let perr = |s: &str| Error::Parse(s.to_string());
        let vars = v
            .get("vars")
            .and_then(Value::as_array)
            .ok_or_else(|| perr("missing vars"))?;
        let mut idx = Vec::with_capacity(vars.len());
        for var in vars {
            let arr = var
                .as_array()
                .ok_or_else(|| perr("var entry must be an array"))?;
            let name = arr
                .first()
                .and_then(Value::as_str)
                .ok_or_else(|| perr("var name"))?;
            let i = alpha
                .get(name)
                .ok_or_else(|| Error::Parse(format!("unknown symbol {name}")))?;
            if let Some(d) = arr.get(1).and_then(Value::as_i64) {
                if d != alpha.degree(i) as i64 {
                    return Err(Error::Parse(format!(
                        "symbol {name} has degree {}, not {d}",
                        alpha.degree(i)
                    )));
                }
            }
            if let Some(l) = arr.get(2).and_then(Value::as_bool) {
                if l != alpha.is_laurent(i) {
                    return Err(Error::Parse(format!(
                        "symbol {name}: laurent flag mismatch"
                    )));
                }
            }
            idx.push(i);
        }
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| perr("missing terms"))?;
        let mut out = GradedPoly::zero(alpha);
        for t in terms {
            let arr = t.as_array().ok_or_else(|| perr("term must be an array"))?;
            let exps = arr
                .first()
                .and_then(Value::as_array)
                .ok_or_else(|| perr("term exponents"))?;
            if exps.len() != idx.len() {
                return Err(perr("exponent vector length differs from vars"));
            }
            let mut pairs = Vec::new();
            for (k, e) in exps.iter().enumerate() {
                let e = e
                    .as_i64()
                    .ok_or_else(|| perr("exponent must be an integer"))?
                    as i32;
                if e < 0 && !alpha.is_laurent(idx[k]) {
                    return Err(Error::NegativeExponent(alpha.symbol(idx[k]).name.clone()));
                }
                pairs.push((idx[k], e));
            }
            let c = match arr.get(1) {
                Some(Value::String(s)) => {
                    s.parse::<BigInt>().map_err(|_| perr("bad coefficient"))?
                }
                Some(Value::Number(n)) => {
                    BigInt::from(n.as_i64().ok_or_else(|| perr("bad coefficient"))?)
                }
                _ => return Err(perr("missing coefficient")),
            };
            out.add_term(Monomial::from_pairs(pairs), c);
        }
        Ok(out)
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", self.fmt_monomial(m))?;
            } else {
                write!(f, "{a}*{}", self.fmt_monomial(m))?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &'a GradedPoly) -> GradedPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &'a GradedPoly) -> GradedPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&GradedPoly> for GradedPoly {
    fn add_assign(&mut self, rhs: &GradedPoly) {
        self.check(rhs);
        for (m, c) in &rhs.terms {
            self.add_term_ref(m, c);
        }
    }
}

impl SubAssign<&GradedPoly> for GradedPoly {
    fn sub_assign(&mut self, rhs: &GradedPoly) {
        self.check(rhs);
        for (m, c) in &rhs.terms {
            self.add_term_ref(m, &-c);
        }
    }
}

impl<'a> Mul<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &'a GradedPoly) -> GradedPoly {
        self.check(rhs);
        if self.terms.len() == 1 && self.terms.contains_key(&Monomial::one()) {
            return rhs.scale(self.terms.values().next().unwrap());
        }
        if rhs.terms.len() == 1 && rhs.terms.contains_key(&Monomial::one()) {
            return self.scale(rhs.terms.values().next().unwrap());
        }
        let mut out = GradedPoly::zero(&self.alpha);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        GradedPoly {
            alpha: self.alpha.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        -&self
    }
}

impl Add for GradedPoly {
    type Output = GradedPoly;
    fn add(mut self, rhs: GradedPoly) -> GradedPoly {
        self += &rhs;
        self
    }
}

impl Sub for GradedPoly {
    type Output = GradedPoly;
    fn sub(mut self, rhs: GradedPoly) -> GradedPoly {
        self -= &rhs;
        self
    }
}

impl Mul for GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: GradedPoly) -> GradedPoly {
        &self * &rhs
    }
}
