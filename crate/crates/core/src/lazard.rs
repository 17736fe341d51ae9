//! The Lazard ring inside `ℤ[b_1, b_2, …]`: classes, Chern numbers,
//! generators, lattice coordinates and genera.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{GradedPoly, Lattice, Monomial, Solve};
use crate::chow::{cf_class, Variety, VarietyDescriptor};
use crate::error::{Error, Result};
use crate::partitions::{partitions, Partition};
use crate::symbols::MSymbols;

/// `ω_m` from the prime-power description.
pub fn omega_prime_power(m: u32) -> BigInt {
    let n = m as u64 + 1;
    let p = (2..=n).find(|p| n % p == 0).expect("n >= 2");
    let mut k = n;
    while k % p == 0 {
        k /= p;
    }
    if k == 1 {
        BigInt::from(p)
    } else {
        BigInt::one()
    }
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `ω_m = gcd_{1 ≤ i ≤ ⌊(m+1)/2⌋} C(m+1, i)`.
pub fn omega_gcd(m: u32) -> BigInt {
    let n = m as u64 + 1;
    (1..=n / 2).fold(BigInt::zero(), |g, i| g.gcd(&binomial(n, i)))
}

pub fn omega(m: u32) -> Result<BigInt> {
    if m == 0 {
        return Err(Error::Invalid("ω_m needs m ≥ 1".into()));
    }
    let (a, b) = (omega_prime_power(m), omega_gcd(m));
    if a != b {
        return Err(Error::Internal(format!("ω_{m}: prime-power value {a} differs from gcd value {b}")));
    }
    Ok(a)
}

/// Coefficient of `b_α`.
pub fn c_alpha(sy: &MSymbols, x: &GradedPoly, alpha: &[u32]) -> BigInt {
    x.coeff(&sy.b_mono(alpha))
}

/// Chern-number table of a homogeneous class, keyed by partition.
pub fn chern_table(sy: &MSymbols, x: &GradedPoly) -> BTreeMap<Partition, BigInt> {
    x.terms().map(|(m, c)| (sy.b_partition(m), c.clone())).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Genus {
    Euler,
    Psi,
}

impl Genus {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "euler" | "chi" => Ok(Genus::Euler),
            "psi" => Ok(Genus::Psi),
            _ => Err(Error::Parse(format!("unknown genus '{s}'"))),
        }
    }

    pub fn image_of_b(self, i: usize) -> BigInt {
        let sign = |k: usize| if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        match self {
            Genus::Euler => sign(i),
            Genus::Psi if i % 2 == 1 => BigInt::zero(),
            Genus::Psi => sign(i / 2),
        }
    }
}

/// Ring morphism `𝕃 → ℤ`.
pub fn genus(sy: &MSymbols, x: &GradedPoly, which: Genus) -> Result<BigInt> {
    if !sy.is_lazard(x) {
        return Err(Error::Invalid("genus is defined on b-polynomials only".into()));
    }
    Ok(x.eval_int(|idx| which.image_of_b(sy.b_of(idx).expect("b variable"))))
}

/// A polynomial generator `y_d` of degree `-d`, with `c_(d)(y_d) = ω_d`.
#[derive(Clone, Debug)]
pub struct Generator {
    pub d: u32,
    pub class: GradedPoly,
    pub combination: Vec<(VarietyDescriptor, BigInt)>,
    pub c_d: BigInt,
}

/// Lattice of `𝕃` in one weight, spanned by the monomials `y_β`.
#[derive(Debug)]
pub struct WeightBasis {
    pub weight: u32,
    pub partitions: Vec<Partition>,
    monos: HashMap<Monomial, usize>,
    lattice: Lattice,
}

impl WeightBasis {
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Hermite-normal-form rows as polynomials.
    pub fn rows(&self, sy: &MSymbols) -> Vec<GradedPoly> {
        let by_index: Vec<Monomial> = {
            let mut v = vec![Monomial::one(); self.monos.len()];
            for (m, i) in &self.monos {
                v[*i] = m.clone();
            }
            v
        };
        self.lattice
            .basis()
            .into_iter()
            .map(|r| GradedPoly::from_terms(&sy.alpha, by_index.iter().cloned().zip(r)))
            .collect()
    }
}

/// Candidates for `y_d`: `ℙ^d`, then `H_{i,d+1-i}` for `2 ≤ i ≤ ⌊(d+1)/2⌋`.
pub fn generator_candidates(d: u32) -> Vec<VarietyDescriptor> {
    let mut v = vec![VarietyDescriptor::Projective { n: d }];
    v.extend((2..=(d + 1) / 2).map(|i| VarietyDescriptor::Milnor { m: i, n: d + 1 - i }));
    v
}

/// Generator and lattice caches for one b-alphabet. Everything is built
/// on first use and then shared read-only.
pub struct Lazard {
    sy: MSymbols,
    gens: Vec<OnceLock<Result<Generator>>>,
    bases: Vec<OnceLock<Result<Arc<WeightBasis>>>>,
    products: Mutex<HashMap<Partition, GradedPoly>>,
}

impl Lazard {
    pub fn new(sy: MSymbols) -> Self {
        let cap = sy.cap();
        Lazard {
            sy,
            gens: (0..cap).map(|_| OnceLock::new()).collect(),
            bases: (0..=cap).map(|_| OnceLock::new()).collect(),
            products: Mutex::new(HashMap::new()),
        }
    }

    pub fn symbols(&self) -> &MSymbols {
        &self.sy
    }

    pub fn cap(&self) -> u32 {
        self.sy.cap() as u32
    }

    fn window(&self, w: u32) -> Result<()> {
        if w > self.cap() {
            return Err(Error::Window(format!("weight {w} exceeds the lattice window {}", self.cap())));
        }
        Ok(())
    }

    pub fn class_of(&self, x: &Variety) -> Result<GradedPoly> {
        cf_class(&self.sy, x)
    }

    pub fn generator(&self, d: u32) -> Result<&Generator> {
        if d == 0 {
            return Err(Error::Invalid("generators start in degree 1".into()));
        }
        self.window(d)?;
        self.gens[d as usize - 1]
            .get_or_init(|| self.synthesize(d))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn synthesize(&self, d: u32) -> Result<Generator> {
        let w = omega(d)?;
        let cands = generator_candidates(d);
        let mut coefs: Vec<BigInt> = Vec::new();
        let mut g = BigInt::zero();
        let mut used = Vec::new();
        for c in &cands {
            let s = Variety::from_descriptor(c)?.s_number();
            if coefs.is_empty() {
                g = s;
                coefs.push(BigInt::one());
            } else {
                let e = g.extended_gcd(&s);
                coefs.iter_mut().for_each(|k| *k *= &e.x);
                coefs.push(e.y);
                g = e.gcd;
            }
            used.push(c.clone());
            if g.abs() == w {
                break;
            }
        }
        if g.abs() != w {
            return Err(Error::Internal(format!("degree {d}: gcd {g} of s-numbers differs from ω = {w}")));
        }
        if g.is_negative() {
            coefs.iter_mut().for_each(|k| *k = -&*k);
        }
        let mut class = self.sy.zero();
        let mut combination = Vec::new();
        for (desc, k) in used.into_iter().zip(coefs) {
            if k.is_zero() {
                continue;
            }
            class += &self.class_of(&Variety::from_descriptor(&desc)?)?.scale(&k);
            combination.push((desc, k));
        }
        let c_d = c_alpha(&self.sy, &class, &[d]);
        if c_d != w {
            return Err(Error::Internal(format!("c_({d}) of the synthesized generator is {c_d}, expected {w}")));
        }
        Ok(Generator { d, class, combination, c_d })
    }

    /// `y_β = Π y_{β_i}`.
    pub fn y_monomial(&self, beta: &[u32]) -> Result<GradedPoly> {
        if beta.is_empty() {
            return Ok(self.sy.one());
        }
        if let Some(p) = self.products.lock().expect("lock").get(beta) {
            return Ok(p.clone());
        }
        let head = self.generator(beta[0])?.class.clone();
        let p = if beta.len() == 1 { head } else { &head * &self.y_monomial(&beta[1..])? };
        self.products.lock().expect("lock").insert(beta.to_vec(), p.clone());
        Ok(p)
    }

    pub fn basis(&self, w: u32) -> Result<Arc<WeightBasis>> {
        self.window(w)?;
        self.bases[w as usize].get_or_init(|| self.build_basis(w)).clone()
    }

    fn build_basis(&self, w: u32) -> Result<Arc<WeightBasis>> {
        let parts = partitions(w);
        let monos: HashMap<Monomial, usize> =
            parts.iter().enumerate().map(|(i, p)| (self.sy.b_mono(p), i)).collect();
        let mut rows = Vec::with_capacity(parts.len());
        for beta in &parts {
            let y = self.y_monomial(beta)?;
            let mut row = vec![BigInt::zero(); parts.len()];
            for (m, c) in y.terms() {
                let i = monos
                    .get(m)
                    .ok_or_else(|| Error::Internal(format!("y_{beta:?} is not homogeneous of weight {w}")))?;
                row[*i] = c.clone();
            }
            rows.push(row);
        }
        let lattice = Lattice::new(parts.len(), &rows);
        if lattice.rank() != parts.len() {
            return Err(Error::Internal(format!("generators are dependent in weight {w}")));
        }
        Ok(Arc::new(WeightBasis { weight: w, partitions: parts, monos, lattice }))
    }

    fn vectorize(&self, basis: &WeightBasis, x: &GradedPoly) -> Result<Vec<BigInt>> {
        let mut v = vec![BigInt::zero(); basis.partitions.len()];
        for (m, c) in x.terms() {
            let i = basis.monos.get(m).ok_or_else(|| {
                Error::Invalid(format!("term {m:?} is not a b-monomial of weight {}", basis.weight))
            })?;
            v[*i] = c.clone();
        }
        Ok(v)
    }

    /// Coordinates in the `y_β`; fails with the residual if `x ∉ 𝕃`.
    pub fn coordinates(&self, x: &GradedPoly) -> Result<BTreeMap<Partition, BigInt>> {
        if !self.sy.is_lazard(x) {
            return Err(Error::Invalid(format!("not a b-polynomial: {x}")));
        }
        let mut out = BTreeMap::new();
        for (w, part) in x.components_by(|m| self.sy.weight(m)) {
            let basis = self.basis(w as u32)?;
            let v = self.vectorize(&basis, &part)?;
            match basis.lattice.solve(&v) {
                Solve::Member(c) => {
                    for (p, k) in basis.partitions.iter().zip(c) {
                        if !k.is_zero() {
                            out.insert(p.clone(), k);
                        }
                    }
                }
                Solve::Residual(r) => {
                    let residual = basis
                        .partitions
                        .iter()
                        .zip(r)
                        .filter(|(_, k)| !k.is_zero())
                        .map(|(p, k)| format!("{k}*b{p:?}"))
                        .collect::<Vec<_>>()
                        .join(" + ");
                    return Err(Error::NotInLattice { weight: w, residual });
                }
            }
        }
        Ok(out)
    }

    pub fn contains(&self, x: &GradedPoly) -> Result<bool> {
        match self.coordinates(x) {
            Ok(_) => Ok(true),
            Err(Error::NotInLattice { .. }) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// Partitions whose coordinate is odd.
    pub fn mod2_support(&self, x: &GradedPoly) -> Result<Vec<Partition>> {
        Ok(self
            .coordinates(x)?
            .into_iter()
            .filter(|(_, k)| k.is_odd())
            .map(|(p, _)| p)
            .collect())
    }

    /// Whether `x` lies in `I² + 2𝕃` for `I` the augmentation ideal.
    pub fn is_decomposable_mod2(&self, x: &GradedPoly) -> Result<bool> {
        let w = x
            .components_by(|m| self.sy.weight(m))
            .keys()
            .copied()
            .collect::<Vec<_>>();
        match w.as_slice() {
            [] => Ok(true),
            [d] if *d >= 1 => Ok(!self.mod2_support(x)?.contains(&vec![*d as u32])),
            _ => Err(Error::Invalid("decomposability needs a homogeneous class of positive dimension".into())),
        }
    }

    /// `fdeg` of the mod-2 coordinate polynomial; `None` when it vanishes.
    pub fn fdeg_mod2(&self, x: &GradedPoly) -> Result<Option<u32>> {
        Ok(self.mod2_support(x)?.iter().map(|p| fdeg_partition(p)).max())
    }

    pub fn generators_json(&self, upto: u32) -> Result<serde_json::Value> {
        let mut v = Vec::new();
        for d in 1..=upto.min(self.cap()) {
            let g = self.generator(d)?;
            v.push(serde_json::json!({
                "d": d,
                "c_d": g.c_d.to_string(),
                "combination": g.combination.iter().map(|(desc, k)| serde_json::json!({
                    "variety": desc,
                    "coeff": k.to_string(),
                })).collect::<Vec<_>>(),
            }));
        }
        Ok(serde_json::Value::Array(v))
    }
}

/// `Σ ⌊β_i / 2⌋`.
pub fn fdeg_partition(beta: &[u32]) -> u32 {
    beta.iter().map(|b| b / 2).sum()
}

/// Largest power of two dividing every coefficient, `None` for zero.
pub fn v2(x: &BigInt) -> Option<u64> {
    if x.is_zero() {
        None
    } else {
        x.trailing_zeros()
    }
}
