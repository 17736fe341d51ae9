//! Involutions through their fixed loci: fixtures, ν, ϑ and the x-generators.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{GradedPoly, Monomial};
use crate::chow::{kclass_from_specs, kclass_to_specs, ChowElem, KClass, LineSpec, Variety, VarietyDescriptor};
use crate::context::Context;
use crate::error::{Error, Result};
use crate::lazard::{binomial, omega};
use crate::mring::{bundle_class, check_in_m, in_image_of_delta, integrality, partial, va_parts, DeltaCertificate};
use crate::partitions::Partition;

/// Named members of the catalog.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum CatalogKind {
    /// ℙ^{a+b+1} with the involution of weights (a+1, b+1).
    Pab { a: u32, b: u32 },
    /// `H_{2i,2j}` with the involution swapping the two halves of each factor.
    Hij { i: u32, j: u32 },
    Xn { n: u32 },
    /// ℙ¹×ℙ¹ swapping the factors.
    P1xP1Swap,
    /// Any variety with the trivial action.
    Trivial { variety: VarietyDescriptor },
}

impl CatalogKind {
    pub fn name(&self) -> String {
        match self {
            CatalogKind::Pab { a, b } => format!("P({a},{b})"),
            CatalogKind::Hij { i, j } => format!("H({i},{j})"),
            CatalogKind::Xn { n } => format!("X{n}"),
            CatalogKind::P1xP1Swap => "P1xP1-swap".into(),
            CatalogKind::Trivial { variety } => format!("{}-trivial", variety.label()),
        }
    }

    fn key(&self) -> String {
        serde_json::to_string(self).expect("catalog kinds serialize")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub variety: VarietyDescriptor,
    pub normal: Vec<LineSpec>,
    #[serde(default = "one")]
    pub mult: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmbientTerm {
    #[serde(default = "one")]
    pub mult: i64,
    pub variety: VarietyDescriptor,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Factor {
    pub fixture: CatalogKind,
    #[serde(default = "one_u32")]
    pub power: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EChoice {
    pub i: u32,
    pub e: i64,
}

fn one() -> i64 {
    1
}

fn one_u32() -> u32 {
    1
}

/// A virtual involution, given either by its fixed components or as a
/// product of catalog members.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<CatalogKind>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub e: Vec<EChoice>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ambient: Vec<AmbientTerm>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<Component>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub factors: Vec<Factor>,
}

impl Fixture {
    pub fn from_json(v: &Value) -> Result<Self> {
        let f: Fixture = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("fixture: {e}")))?;
        if !f.factors.is_empty() && (!f.components.is_empty() || !f.ambient.is_empty()) {
            return Err(Error::Parse("a fixture lists either factors or components, not both".into()));
        }
        Ok(f)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("fixtures serialize")
    }

    /// Product of catalog members, each raised to a power.
    pub fn product_of(factors: &[(CatalogKind, u32)]) -> Result<Self> {
        let mut n = 0;
        let mut names = Vec::new();
        for (k, p) in factors {
            n += catalog(k)?.n * p;
            names.push(if *p == 1 { k.name() } else { format!("{}^{p}", k.name()) });
        }
        Ok(Fixture {
            name: names.join("x"),
            n,
            source: None,
            e: vec![],
            ambient: vec![],
            components: vec![],
            factors: factors
                .iter()
                .filter(|(_, p)| *p > 0)
                .map(|(k, p)| Factor { fixture: k.clone(), power: *p })
                .collect(),
        })
    }

    /// The product written out component by component.
    pub fn explicit_product(a: &Fixture, b: &Fixture) -> Result<Self> {
        if a.components.is_empty() || b.components.is_empty() {
            return Err(Error::Invalid("explicit products need component lists".into()));
        }
        let mut components = Vec::new();
        for ca in &a.components {
            let va = Variety::from_descriptor(&ca.variety)?;
            let ea = kclass_from_specs(va.ring(), &ca.normal)?;
            for cb in &b.components {
                let vb = Variety::from_descriptor(&cb.variety)?;
                let eb = kclass_from_specs(vb.ring(), &cb.normal)?;
                let (pv, ma, mb) = Variety::product_with_maps(&va, &vb)?;
                let e = ea.push_along(pv.ring(), &ma).add(&eb.push_along(pv.ring(), &mb));
                // Re-reading the descriptor may name generators differently; their order agrees.
                let canon = Variety::from_descriptor(pv.descriptor())?;
                let rename: BTreeMap<&String, &String> =
                    pv.ring().names().iter().zip(canon.ring().names()).collect();
                let normal = kclass_to_specs(&e)
                    .into_iter()
                    .map(|s| LineSpec {
                        coeff: s.coeff,
                        c1: s.c1.into_iter().map(|(k, x)| (rename[&k].clone(), x)).collect(),
                    })
                    .collect();
                components.push(Component {
                    variety: pv.descriptor().clone(),
                    normal,
                    mult: ca.mult * cb.mult,
                    dim: Some(pv.dim()),
                });
            }
        }
        let mut ambient = Vec::new();
        for x in &a.ambient {
            for y in &b.ambient {
                let mut factors = Vec::new();
                for d in [&x.variety, &y.variety] {
                    match d {
                        VarietyDescriptor::Product { factors: f } => factors.extend(f.iter().cloned()),
                        d => factors.push(d.clone()),
                    }
                }
                ambient.push(AmbientTerm { mult: x.mult * y.mult, variety: VarietyDescriptor::Product { factors } });
            }
        }
        Ok(Fixture {
            name: format!("{}x{}", a.name, b.name),
            n: a.n + b.n,
            source: None,
            e: vec![],
            ambient,
            components,
            factors: vec![],
        })
    }
}

/// `e_i` with `Σ e_i C(d+1, i) = ω_d`: sequential extended gcd over
/// `i = 1, 2, …`, stopping once the gcd reaches `ω_d`.
pub fn x_odd_choices(d: u32) -> Result<Vec<EChoice>> {
    if d == 0 {
        return Err(Error::Invalid("X_{2d+1} needs d >= 1".into()));
    }
    let target = omega(d)?;
    let mut g = BigInt::zero();
    let mut coeffs: Vec<(u32, BigInt)> = Vec::new();
    for i in 1..=(d + 1) / 2 {
        let c = binomial(d as u64 + 1, i as u64);
        if coeffs.is_empty() {
            g = c;
            coeffs.push((i, BigInt::one()));
        } else {
            let eg = g.extended_gcd(&c);
            for e in coeffs.iter_mut() {
                e.1 *= &eg.x;
            }
            coeffs.push((i, eg.y));
            g = eg.gcd;
        }
        if g.abs() == target {
            break;
        }
    }
    if g.abs() != target {
        return Err(Error::Internal(format!("gcd {g} of the binomials differs from omega_{d}")));
    }
    if g.is_negative() {
        for e in coeffs.iter_mut() {
            e.1 = -e.1.clone();
        }
    }
    coeffs
        .into_iter()
        .filter(|(_, e)| !e.is_zero())
        .map(|(i, e)| {
            let e = i64::try_from(&e).map_err(|_| Error::Internal("e_i out of range".into()))?;
            Ok(EChoice { i, e })
        })
        .collect()
}

fn zero_c1(v: &Variety) -> ChowElem {
    ChowElem::zero(v.ring(), &BigInt::zero())
}

fn gen_or_zero(v: &Variety, name: &str) -> ChowElem {
    match v.ring().gen_index(name) {
        Some(g) => ChowElem::gen(v.ring(), g),
        None => zero_c1(v),
    }
}

fn component(v: &Variety, e: KClass) -> Component {
    Component {
        variety: v.descriptor().clone(),
        normal: kclass_to_specs(&e),
        mult: 1,
        dim: Some(v.dim()),
    }
}

/// ℙ^i × ℙ^k with both pulled-back hyperplane classes (zero on a ℙ⁰ factor).
fn pp(i: u32, k: u32) -> Result<(Variety, ChowElem, ChowElem)> {
    let a = Variety::projective_space(i);
    let b = Variety::projective_space(k);
    match (i, k) {
        (0, _) => {
            let h = gen_or_zero(&b, "h");
            Ok((b.clone(), zero_c1(&b), h))
        }
        (_, 0) => {
            let h = gen_or_zero(&a, "h");
            Ok((a.clone(), h, zero_c1(&a)))
        }
        _ => {
            let (p, ma, mb) = Variety::product_with_maps(&a, &b)?;
            let h1 = ChowElem::gen(a.ring(), 0).push_along(p.ring(), &ma);
            let h2 = ChowElem::gen(b.ring(), 0).push_along(p.ring(), &mb);
            Ok((p, h1, h2))
        }
    }
}

fn pab_components(a: u32, b: u32) -> Vec<Component> {
    [(a, b), (b, a)]
        .into_iter()
        .map(|(x, y)| {
            let v = Variety::projective_space(x);
            let h = gen_or_zero(&v, "h");
            component(&v, KClass::zero(v.ring()).with_line(y as i64 + 1, h))
        })
        .collect()
}

fn hij_components(i: u32, j: u32) -> Result<Vec<Component>> {
    let mut out = Vec::new();
    let m = Variety::milnor(i, j)?;
    let (xi, h) = (gen_or_zero(&m, "xi"), gen_or_zero(&m, "h"));
    out.push(component(&m, KClass::zero(m.ring()).with_line(j as i64, xi).with_line(i as i64, h)));

    let (v, h1, h2) = pp(i, j - 1)?;
    let e = KClass::zero(v.ring())
        .with_line(j as i64 + 1, h2.clone())
        .with_line(-1, h1.add(&h2))
        .with_line(i as i64, h1);
    out.push(component(&v, e));

    let (v, h1, h2) = pp(i - 1, j)?;
    let e = KClass::zero(v.ring())
        .with_line(j as i64, h2.clone())
        .with_line(-1, h1.add(&h2))
        .with_line(i as i64 + 1, h1);
    out.push(component(&v, e));

    if j >= 2 {
        let m = Variety::milnor(i - 1, j - 1)?;
        let (xi, h) = (gen_or_zero(&m, "xi"), gen_or_zero(&m, "h"));
        let e = KClass::zero(m.ring())
            .with_line(j as i64 + 1, xi)
            .with_line(i as i64 + 1, h);
        out.push(component(&m, e));
    }
    Ok(out)
}

/// Builds a catalog member.
pub fn catalog(kind: &CatalogKind) -> Result<Fixture> {
    let mut f = Fixture {
        name: kind.name(),
        n: 0,
        source: Some(kind.clone()),
        e: vec![],
        ambient: vec![],
        components: vec![],
        factors: vec![],
    };
    match kind {
        CatalogKind::Pab { a, b } => {
            f.n = a + b + 1;
            f.ambient.push(AmbientTerm { mult: 1, variety: VarietyDescriptor::Projective { n: f.n } });
            f.components = pab_components(*a, *b);
        }
        CatalogKind::Hij { i, j } => {
            if *i < 1 || j < i {
                return Err(Error::Invalid(format!("H(i,j) needs 1 <= i <= j, got ({i},{j})")));
            }
            f.n = 2 * (i + j) - 1;
            f.ambient.push(AmbientTerm { mult: 1, variety: VarietyDescriptor::Milnor { m: 2 * i, n: 2 * j } });
            f.components = hij_components(*i, *j)?;
        }
        CatalogKind::Xn { n } => {
            let sub = match *n {
                0 => return Err(Error::Invalid("X_n needs n >= 1".into())),
                1 => catalog(&CatalogKind::Pab { a: 0, b: 0 })?,
                n if n % 2 == 0 => catalog(&CatalogKind::Pab { a: n / 2, b: n / 2 - 1 })?,
                n => {
                    let d = (n - 1) / 2;
                    let e = x_odd_choices(d)?;
                    let mut g = Fixture { e: e.clone(), n, ..f.clone() };
                    for c in &e {
                        let h = catalog(&CatalogKind::Hij { i: c.i, j: d + 1 - c.i })?;
                        g.ambient.extend(h.ambient.into_iter().map(|t| AmbientTerm { mult: t.mult * c.e, ..t }));
                        g.components.extend(h.components.into_iter().map(|t| Component { mult: t.mult * c.e, ..t }));
                    }
                    g
                }
            };
            f.n = *n;
            f.e = sub.e;
            f.ambient = sub.ambient;
            f.components = sub.components;
        }
        CatalogKind::P1xP1Swap => {
            f.n = 2;
            let p1 = VarietyDescriptor::Projective { n: 1 };
            f.ambient.push(AmbientTerm { mult: 1, variety: VarietyDescriptor::Product { factors: vec![p1.clone(), p1] } });
            let v = Variety::projective_space(1);
            let h = gen_or_zero(&v, "h");
            f.components.push(component(&v, KClass::zero(v.ring()).with_line(1, h.scale(&BigInt::from(2)))));
        }
        CatalogKind::Trivial { variety } => {
            let v = Variety::from_descriptor(variety)?;
            f.n = v.dim();
            f.ambient.push(AmbientTerm { mult: 1, variety: variety.clone() });
            f.components.push(component(&v, KClass::zero(v.ring())));
        }
    }
    Ok(f)
}

/// Fixed-locus dimension without evaluating any class.
pub fn fixed_dim(f: &Fixture) -> Result<Option<u32>> {
    if f.factors.is_empty() {
        let mut d = None;
        for c in f.components.iter().filter(|c| c.mult != 0) {
            let k = match c.dim {
                Some(k) => k,
                None => Variety::from_descriptor(&c.variety)?.dim(),
            };
            d = d.max(Some(k));
        }
        return Ok(d);
    }
    let mut d = Some(0);
    for fac in &f.factors {
        let k = fixed_dim(&catalog(&fac.fixture)?)?;
        d = d.zip(k).map(|(a, b)| a + b * fac.power);
    }
    Ok(d)
}

/// The involutions shipped as fixture files, keyed by file stem.
pub fn shipped_fixtures() -> Result<Vec<(String, Fixture)>> {
    let mut out = Vec::new();
    for s in 1..=6u32 {
        for b in 0..=s / 2 {
            let a = s - 1 - b;
            if a >= b {
                out.push((format!("pab_{a}_{b}"), catalog(&CatalogKind::Pab { a, b })?));
            }
        }
    }
    for s in 2..=5u32 {
        for i in 1..=s / 2 {
            out.push((format!("hij_{i}_{}", s - i), catalog(&CatalogKind::Hij { i, j: s - i })?));
        }
    }
    for n in 1..=7 {
        out.push((format!("x{n}"), catalog(&CatalogKind::Xn { n })?));
    }
    out.push(("p1xp1_swap".into(), catalog(&CatalogKind::P1xP1Swap)?));
    Ok(out)
}

/// The smooth varieties shipped as descriptor files.
pub fn shipped_varieties() -> Vec<(String, VarietyDescriptor)> {
    let mut out: Vec<(String, VarietyDescriptor)> =
        (1..=6).map(|n| (format!("p{n}"), VarietyDescriptor::Projective { n })).collect();
    for s in 2..=7u32 {
        for m in 1..=s / 2 {
            out.push((format!("h_{m}_{}", s - m), VarietyDescriptor::Milnor { m, n: s - m }));
        }
    }
    out
}

/// Everything the later layers read off a fixture.
#[derive(Debug)]
pub struct FixtureData {
    pub n: u32,
    /// Fixed-locus dimension; `None` for an empty fixed locus.
    pub d: Option<u32>,
    /// `⟦X⟧`.
    pub ambient: GradedPoly,
    /// `⟦F_k⟧`, the union of the components of dimension `k`.
    pub fixed: BTreeMap<u32, GradedPoly>,
    /// `ν(X)`.
    pub nu: GradedPoly,
    expr: OnceLock<GradedPoly>,
}

impl FixtureData {
    fn unit(ctx: &Context) -> Self {
        let sy = ctx.symbols();
        FixtureData {
            n: 0,
            d: Some(0),
            ambient: sy.one(),
            fixed: BTreeMap::from([(0, sy.one())]),
            nu: sy.one(),
            expr: OnceLock::new(),
        }
    }

    fn times(&self, o: &FixtureData) -> FixtureData {
        let mut fixed: BTreeMap<u32, GradedPoly> = BTreeMap::new();
        for (i, x) in &self.fixed {
            for (j, y) in &o.fixed {
                let p = x * y;
                match fixed.get_mut(&(i + j)) {
                    Some(z) => *z += &p,
                    None => {
                        fixed.insert(i + j, p);
                    }
                }
            }
        }
        FixtureData {
            n: self.n + o.n,
            d: self.d.zip(o.d).map(|(a, b)| a + b),
            ambient: &self.ambient * &o.ambient,
            fixed,
            nu: &self.nu * &o.nu,
            expr: OnceLock::new(),
        }
    }

    /// `⟦X^{μ₂}⟧`.
    pub fn fixed_total(&self) -> GradedPoly {
        let mut out = GradedPoly::zero(self.nu.alphabet());
        for f in self.fixed.values() {
            out += f;
        }
        out
    }

    /// `⟦F_k⟧`, zero when there is no component of that dimension.
    pub fn fixed_in(&self, k: u32) -> GradedPoly {
        self.fixed.get(&k).cloned().unwrap_or_else(|| GradedPoly::zero(self.nu.alphabet()))
    }
}

fn evaluate_components(ctx: &Context, f: &Fixture) -> Result<FixtureData> {
    let sy = ctx.symbols();
    let lz = ctx.lazard();
    if f.n as usize > ctx.config().lattice_cap() {
        return Err(Error::Window(format!("ambient dimension {} exceeds the lattice cap {}", f.n, ctx.config().lattice_cap())));
    }
    let mut ambient = sy.zero();
    for t in &f.ambient {
        let v = Variety::from_descriptor(&t.variety)?;
        if v.dim() != f.n {
            return Err(Error::Invalid(format!("ambient term {} has dimension {}, not {}", t.variety.label(), v.dim(), f.n)));
        }
        ambient += &lz.class_of(&v)?.scale_i(t.mult);
    }
    let mut fixed: BTreeMap<u32, GradedPoly> = BTreeMap::new();
    let mut nu = sy.zero();
    let mut d = None;
    for c in &f.components {
        let v = Variety::from_descriptor(&c.variety)?;
        if let Some(k) = c.dim {
            if k != v.dim() {
                return Err(Error::Invalid(format!("component {} has dimension {}, not {k}", c.variety.label(), v.dim())));
            }
        }
        let e = kclass_from_specs(v.ring(), &c.normal)?;
        if v.dim() as i64 + e.rank() != f.n as i64 {
            return Err(Error::Invalid(format!(
                "component {}: dim {} + rank {} differs from n = {}",
                c.variety.label(),
                v.dim(),
                e.rank(),
                f.n
            )));
        }
        if c.mult == 0 {
            continue;
        }
        d = d.max(Some(v.dim()));
        nu += &bundle_class(sy, &v, &e)?.scale_i(c.mult);
        let cl = lz.class_of(&v)?.scale_i(c.mult);
        match fixed.get_mut(&v.dim()) {
            Some(z) => *z += &cl,
            None => {
                fixed.insert(v.dim(), cl);
            }
        }
    }
    Ok(FixtureData { n: f.n, d, ambient, fixed, nu, expr: OnceLock::new() })
}

fn evaluate_kind(ctx: &Context, kind: &CatalogKind) -> Result<Arc<FixtureData>> {
    let key = kind.key();
    if let Some(d) = ctx.fixture_data.lock().expect("lock").get(&key) {
        return Ok(d.clone());
    }
    let d = Arc::new(evaluate_components(ctx, &catalog(kind)?)?);
    ctx.fixture_data.lock().expect("lock").insert(key, d.clone());
    Ok(d)
}

/// Classes of a fixture; products are evaluated factor by factor.
pub fn evaluate(ctx: &Context, f: &Fixture) -> Result<Arc<FixtureData>> {
    if f.factors.is_empty() {
        if let Some(k) = &f.source {
            if catalog(k)? == *f {
                return evaluate_kind(ctx, k);
            }
        }
        return Ok(Arc::new(evaluate_components(ctx, f)?));
    }
    let mut acc = FixtureData::unit(ctx);
    for fac in &f.factors {
        let x = evaluate_kind(ctx, &fac.fixture)?;
        for _ in 0..fac.power {
            acc = acc.times(&x);
        }
    }
    if acc.n != f.n {
        return Err(Error::Invalid(format!("fixture {} declares n = {} but its factors give {}", f.name, f.n, acc.n)));
    }
    if f.n as usize > ctx.config().lattice_cap() {
        return Err(Error::Window(format!("ambient dimension {} exceeds the lattice cap", f.n)));
    }
    Ok(Arc::new(acc))
}

pub fn nu(ctx: &Context, f: &Fixture) -> Result<GradedPoly> {
    Ok(evaluate(ctx, f)?.nu.clone())
}

/// `ϑ_d = (c_(d)(X^{μ₂}), deg c_(d)(N))` at the fixed-locus dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theta {
    pub d: u32,
    pub fixed: BigInt,
    pub normal: BigInt,
}

/// ϑ summed over components; product fixtures go through ν.
pub fn theta(ctx: &Context, f: &Fixture) -> Result<Theta> {
    if !f.factors.is_empty() {
        return theta_from_data(ctx, &*evaluate(ctx, f)?);
    }
    let d = f
        .components
        .iter()
        .filter(|c| c.mult != 0)
        .map(|c| Variety::from_descriptor(&c.variety).map(|v| v.dim()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .ok_or_else(|| Error::Invalid("empty fixed locus has no theta".into()))?;
    let mut t = Theta { d, fixed: BigInt::zero(), normal: BigInt::zero() };
    for c in &f.components {
        let v = Variety::from_descriptor(&c.variety)?;
        if v.dim() != d {
            continue;
        }
        let e = kclass_from_specs(v.ring(), &c.normal)?;
        t.fixed += v.s_number() * c.mult;
        t.normal += e.power_sum_degree(d) * c.mult;
    }
    Ok(t)
}

/// ϑ read off `⟦F_d⟧` and the `a_d`-coefficients of ν.
pub fn theta_from_data(ctx: &Context, data: &FixtureData) -> Result<Theta> {
    let sy = ctx.symbols();
    let d = data.d.ok_or_else(|| Error::Invalid("empty fixed locus has no theta".into()))?;
    let fixed = data.fixed_in(d).coeff(&sy.b_mono(&[d]));
    let mut normal = BigInt::zero();
    for ((_, alpha), c) in va_parts(sy, &data.nu) {
        if alpha == [d] {
            normal += c.constant_term();
        }
    }
    Ok(Theta { d, fixed, normal })
}

/// For `𝒳_{2d+1}`: the integer `s` with `ϑ_d = (ω_d − 2(d+1)s, −ω_d + 2ds)`.
pub fn solve_s(t: &Theta) -> Result<Option<BigInt>> {
    let w = omega(t.d)?;
    let (q, r) = (&w - &t.fixed).div_rem(&BigInt::from(2 * (t.d + 1)));
    if !r.is_zero() {
        return Ok(None);
    }
    Ok((&t.normal == &(&q * (2 * t.d) - &w)).then_some(q))
}

/// `x_n = ν(𝒳_n)` with the classes it came from.
#[derive(Debug)]
pub struct XGenerator {
    pub n: u32,
    pub fixture: Fixture,
    pub nu: GradedPoly,
    /// `⟦𝒳_n⟧`.
    pub ambient: GradedPoly,
}

pub fn x_generator(ctx: &Context, n: u32) -> Result<Arc<XGenerator>> {
    if let Some(x) = ctx.x_cache.lock().expect("lock").get(&n) {
        return Ok(x.clone());
    }
    let kind = CatalogKind::Xn { n };
    let data = evaluate_kind(ctx, &kind)?;
    let x = Arc::new(XGenerator { n, fixture: catalog(&kind)?, nu: data.nu.clone(), ambient: data.ambient.clone() });
    ctx.x_cache.lock().expect("lock").insert(n, x.clone());
    Ok(x)
}

fn ya_y(ctx: &Context, k: usize) -> usize {
    let _ = ctx;
    k
}

fn ya_a(ctx: &Context, k: usize) -> usize {
    ctx.symbols().cap() + k
}

/// ℳ-class with its 𝕃-coefficients written in the generators `y_β`.
fn to_ya(ctx: &Context, m: &GradedPoly) -> Result<GradedPoly> {
    let sy = ctx.symbols();
    let mut out = GradedPoly::zero(&ctx.ya);
    for ((r, alpha), c) in va_parts(sy, m) {
        let base = Monomial::from_pairs(
            std::iter::once((0usize, r)).chain(alpha.iter().map(|&a| (ya_a(ctx, a as usize), 1))),
        );
        for (beta, k) in ctx.lazard().coordinates(&c)? {
            let mono = Monomial::from_pairs(beta.iter().map(|&b| (ya_y(ctx, b as usize), 1))).mul(&base);
            out.add_term(mono, k);
        }
    }
    Ok(out)
}

/// Largest generator index in a YA-polynomial.
fn ya_top(ctx: &Context, p: &GradedPoly) -> usize {
    let cap = ctx.symbols().cap();
    p.terms()
        .flat_map(|(m, _)| m.iter().map(|(i, _)| i).collect::<Vec<_>>())
        .filter(|&i| i > 0)
        .map(|i| if i > cap { i - cap } else { i })
        .max()
        .unwrap_or(0)
}

fn substitute(ctx: &Context, p: &GradedPoly, levels: &[(GradedPoly, GradedPoly)]) -> Result<GradedPoly> {
    let cap = ctx.symbols().cap();
    let xs = ctx.xsymbols();
    if ya_top(ctx, p) > levels.len() {
        return Err(Error::Internal("substitution level missing".into()));
    }
    Ok(p.eval_hom(&xs.alpha, |i, e| {
        if i == 0 {
            xs.vp(e)
        } else if i <= cap {
            levels[i - 1].0.pow(e as u32)
        } else {
            levels[i - cap - 1].1.pow(e as u32)
        }
    }))
}

/// `y_d` and `a_d` in terms of `v^±` and `x_2, …, x_{2d+1}`, from the
/// triangular shape of `x_{2d}` and `x_{2d+1}` in YA-coordinates.
fn compute_level(ctx: &Context, d: usize, levels: &[(GradedPoly, GradedPoly)]) -> Result<(GradedPoly, GradedPoly)> {
    let xs = ctx.xsymbols();
    if 2 * d + 1 > xs.cap() {
        return Err(Error::Window(format!("x_{} lies outside the x-alphabet", 2 * d + 1)));
    }
    let split = |x: &GradedPoly, r: i32| -> Result<(BigInt, BigInt, GradedPoly)> {
        let ym = Monomial::from_pairs([(0, r), (ya_y(ctx, d), 1)]);
        let am = Monomial::from_pairs([(0, r), (ya_a(ctx, d), 1)]);
        let (lam, mu) = (x.coeff(&ym), x.coeff(&am));
        let mut rest = x.clone();
        rest.retain(|m, _| *m != ym && *m != am);
        if ya_top(ctx, &rest) >= d {
            return Err(Error::Internal(format!("x_{} has unexpected terms at level {d}", 2 * d)));
        }
        Ok((lam, mu, rest))
    };
    let xe = to_ya(ctx, &x_generator(ctx, 2 * d as u32)?.nu)?;
    let xo = to_ya(ctx, &x_generator(ctx, 2 * d as u32 + 1)?.nu)?;
    let (le, me, re) = split(&xe, d as i32)?;
    let (lo, mo, ro) = split(&xo, d as i32 + 1)?;
    let det = &le * &mo - &me * &lo;
    if det.abs() != BigInt::one() {
        return Err(Error::Internal(format!("level {d} is not unimodular (det {det})")));
    }
    let p = (&xs.xp(2 * d) - &substitute(ctx, &re, levels)?).shift(&Monomial::var(xs.v(), -(d as i32)));
    let q = (&xs.xp(2 * d + 1) - &substitute(ctx, &ro, levels)?).shift(&Monomial::var(xs.v(), -(d as i32) - 1));
    let y = (&p.scale(&mo) - &q.scale(&me)).scale(&det);
    let a = (&q.scale(&le) - &p.scale(&lo)).scale(&det);
    Ok((y, a))
}

fn levels_upto(ctx: &Context, d: usize) -> Result<Vec<(GradedPoly, GradedPoly)>> {
    let mut have = ctx.x_levels.lock().expect("lock").clone();
    while have.len() < d {
        let next = compute_level(ctx, have.len() + 1, &have)?;
        have.push(next);
        let mut g = ctx.x_levels.lock().expect("lock");
        if g.len() < have.len() {
            *g = have.clone();
        }
    }
    Ok(have)
}

/// Rewrites an element of ℳ[v⁻¹] as a polynomial over ℤ[v^±] in `x_2, x_3, …`.
pub fn express_in_x(ctx: &Context, m: &GradedPoly) -> Result<GradedPoly> {
    if m.alphabet() != &ctx.symbols().alpha {
        return Err(Error::AlphabetMismatch);
    }
    let y = to_ya(ctx, m)?;
    let levels = levels_upto(ctx, ya_top(ctx, &y))?;
    substitute(ctx, &y, &levels)
}

/// `v ↦ v`, `x_j ↦ ν(𝒳_j)`: back into ℳ[v⁻¹].
pub fn x_to_m(ctx: &Context, p: &GradedPoly) -> Result<GradedPoly> {
    let sy = ctx.symbols();
    let xs = ctx.xsymbols();
    let mut images = BTreeMap::new();
    for (m, _) in p.terms() {
        for (i, _) in m.iter() {
            if i != xs.v() && !images.contains_key(&i) {
                images.insert(i, x_generator(ctx, i as u32)?.nu.clone());
            }
        }
    }
    Ok(p.eval_hom(&sy.alpha, |i, e| if i == xs.v() { sy.vp(e) } else { images[&i].pow(e as u32) }))
}

/// `Σ_i A_i t^i` with `t x₁ = 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct InvClass {
    pub n: u32,
    /// `i ↦ A_i`, polynomials in the x-alphabet without `v`; zero entries are omitted.
    pub a: BTreeMap<u32, GradedPoly>,
}

impl InvClass {
    pub fn a_i(&self, ctx: &Context, i: u32) -> GradedPoly {
        self.a.get(&i).cloned().unwrap_or_else(|| GradedPoly::zero(&ctx.xsymbols().alpha))
    }

    pub fn to_json(&self, ctx: &Context) -> Value {
        let rest: serde_json::Map<String, Value> =
            self.a.iter().filter(|(i, _)| **i > 0).map(|(i, p)| (i.to_string(), p.to_json())).collect();
        json!({"n": self.n, "A0": self.a_i(ctx, 0).to_json(), "A": rest})
    }

    /// The class back in ℳ[v⁻¹], with `t ↦ v⁻¹`.
    pub fn to_m(&self, ctx: &Context) -> Result<GradedPoly> {
        let sy = ctx.symbols();
        let mut out = sy.zero();
        for (i, p) in &self.a {
            out += &x_to_m(ctx, p)?.shift(&Monomial::var(sy.v(), -(*i as i32)));
        }
        Ok(out)
    }
}

/// Splits an x-expression into the normal form `A₀(x₁, …) + Σ_{i≥1} A_i(x₂, …) t^i`.
pub fn split_expression(ctx: &Context, n: u32, e: &GradedPoly) -> Result<InvClass> {
    let xs = ctx.xsymbols();
    let mut a: BTreeMap<u32, GradedPoly> = BTreeMap::new();
    let mut a0 = GradedPoly::zero(&xs.alpha);
    for (vm, p) in e.split_by(|i| i == xs.v()) {
        let k = vm.exp(xs.v());
        if k < 0 {
            a.insert((-k) as u32, p);
        } else {
            let q = p.exact_div(&(BigInt::one() << k as usize))?;
            a0 += &q.shift(&Monomial::var(xs.x(1), k));
        }
    }
    if !a0.is_zero() {
        a.insert(0, a0);
    }
    Ok(InvClass { n, a })
}

/// The x-expression of ν(f); products multiply their factors' expressions.
pub fn expression(ctx: &Context, f: &Fixture) -> Result<GradedPoly> {
    if f.factors.is_empty() {
        let data = evaluate(ctx, f)?;
        return expression_of_data(ctx, &data);
    }
    let mut acc = GradedPoly::one(&ctx.xsymbols().alpha);
    for fac in &f.factors {
        let e = expression_of_data(ctx, &*evaluate_kind(ctx, &fac.fixture)?)?;
        acc = &acc * &e.pow(fac.power);
    }
    Ok(acc)
}

fn expression_of_data(ctx: &Context, data: &FixtureData) -> Result<GradedPoly> {
    if let Some(e) = data.expr.get() {
        return Ok(e.clone());
    }
    let e = express_in_x(ctx, &data.nu)?;
    let _ = data.expr.set(e.clone());
    Ok(e)
}

pub fn decompose(ctx: &Context, f: &Fixture) -> Result<InvClass> {
    split_expression(ctx, f.n, &expression(ctx, f)?)
}

/// Decomposition of `a × b` from the factors' expressions, with the
/// fixed-locus dimension of the product.
pub fn product_decomposition(ctx: &Context, a: &Fixture, b: &Fixture) -> Result<(InvClass, Option<u32>)> {
    let e = &expression(ctx, a)? * &expression(ctx, b)?;
    let d = fixed_dim(a)?.zip(fixed_dim(b)?).map(|(x, y)| x + y);
    Ok((split_expression(ctx, a.n + b.n, &e)?, d))
}

/// The structural claims on a decomposition.
#[derive(Clone, Debug, Serialize)]
pub struct PolyChecks {
    /// `A_i` homogeneous of degree `n + i`.
    pub homogeneous: bool,
    /// No `x₁` in `A_i` for `i ≥ 1`.
    pub x1_free: bool,
    /// `fdeg A_i ≤ d`.
    pub fdeg_bounded: bool,
    /// `A_i = 0` for `i > max(0, 3d − n)`.
    pub vanishing: bool,
    /// For `n ≥ 3d`: `A₀ = x₁^{n−3d+1} Q + a x₁^{n−3d} x₃^d`.
    pub small_dim: Option<bool>,
    /// Re-expanding reproduces ν.
    pub round_trip: Option<bool>,
}

impl PolyChecks {
    pub fn all(&self) -> bool {
        self.homogeneous
            && self.x1_free
            && self.fdeg_bounded
            && self.vanishing
            && self.small_dim.unwrap_or(true)
            && self.round_trip.unwrap_or(true)
    }
}

/// Checks a decomposition against the fixed-locus dimension `d`; with `nu`
/// given, also re-expands it.
pub fn check_decomposition(ctx: &Context, d: Option<u32>, c: &InvClass, nu: Option<&GradedPoly>) -> Result<PolyChecks> {
    let xs = ctx.xsymbols();
    let x1 = xs.x(1);
    let n = c.n as i64;
    let mut out = PolyChecks {
        homogeneous: true,
        x1_free: true,
        fdeg_bounded: true,
        vanishing: true,
        small_dim: None,
        round_trip: None,
    };
    for (i, p) in &c.a {
        let i = *i as i64;
        for (m, _) in p.terms() {
            if xs.xdeg(m) != n + i || m.exp(xs.v()) != 0 {
                out.homogeneous = false;
            }
            if i >= 1 && m.exp(x1) != 0 {
                out.x1_free = false;
            }
            if let Some(d) = d {
                if xs.fdeg(m) > d as i64 {
                    out.fdeg_bounded = false;
                }
            }
        }
        let top = d.map_or(0, |d| (3 * d as i64 - n).max(0));
        if i > top && !p.is_zero() {
            out.vanishing = false;
        }
    }
    if let Some(d) = d {
        let (n, d) = (c.n as i32, d as i32);
        if n >= 3 * d {
            let a0 = c.a_i(ctx, 0);
            let x3d = Monomial::from_pairs([(x1, n - 3 * d), (xs.x(3), d)]);
            let ok = c.a.keys().all(|i| *i == 0)
                && a0.terms().all(|(m, _)| m.exp(x1) > n - 3 * d || (m.exp(x1) == n - 3 * d && *m == x3d));
            out.small_dim = Some(ok);
        }
    }
    if let Some(nu) = nu {
        out.round_trip = Some(c.to_m(ctx)? == *nu);
    }
    Ok(out)
}

/// `ε`: `t ↦ 0`, `x_j ↦ ⟦𝒳_j⟧`, read in 𝕃/2 as the odd generator coordinates.
pub fn eps_mod2(ctx: &Context, c: &InvClass) -> Result<BTreeSet<Partition>> {
    let a0 = c.a_i(ctx, 0);
    let sy = ctx.symbols();
    let xs = ctx.xsymbols();
    let mut images = BTreeMap::new();
    for (m, _) in a0.terms() {
        for (i, _) in m.iter() {
            if i == xs.v() {
                return Err(Error::Invalid("A_0 contains v".into()));
            }
            if !images.contains_key(&i) {
                images.insert(i, x_generator(ctx, i as u32)?.ambient.clone());
            }
        }
    }
    let l = a0.eval_hom(&sy.alpha, |i, e| images[&i].pow(e as u32));
    mod2(ctx, &l)
}

/// Odd coordinates of a Lazard class.
pub fn mod2(ctx: &Context, l: &GradedPoly) -> Result<BTreeSet<Partition>> {
    Ok(ctx.lazard().mod2_support(l)?.into_iter().collect())
}

/// `φ`: `v ↦ 1`, `a_i ↦ 0`.
pub fn phi_fixed(ctx: &Context, m: &GradedPoly) -> GradedPoly {
    let sy = ctx.symbols();
    let mut out = sy.zero();
    for ((_, alpha), c) in va_parts(sy, m) {
        if alpha.is_empty() {
            out += &c;
        }
    }
    out
}

/// `φ` on a decomposition: `t ↦ 1`, `x_j ↦ φ(x_j)`.
pub fn phi_fixed_inv(ctx: &Context, c: &InvClass) -> Result<GradedPoly> {
    let sy = ctx.symbols();
    let mut out = sy.zero();
    for p in c.a.values() {
        let mut images = BTreeMap::new();
        for (m, _) in p.terms() {
            for (i, _) in m.iter() {
                if !images.contains_key(&i) {
                    images.insert(i, phi_fixed(ctx, &x_generator(ctx, i as u32)?.nu));
                }
            }
        }
        out += &p.eval_hom(&sy.alpha, |i, e| images[&i].pow(e as u32));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct PieceVerdict {
    pub dim: u32,
    pub in_image: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<DeltaCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Realizability {
    pub realizable: bool,
    pub pieces: Vec<PieceVerdict>,
    /// Verdict of the integrality test; it must agree with `realizable`.
    pub integrality: bool,
}

/// Whether `m ∈ ℳ` is ν of a virtual involution: ∂(m) ∈ im δ in every dimension.
pub fn is_normal_bundle_class(ctx: &Context, m: &GradedPoly) -> Result<Realizability> {
    check_in_m(ctx, m)?;
    let mut pieces = Vec::new();
    for (deg, part) in m.homogeneous_components() {
        let dim = u32::try_from(-deg).map_err(|_| Error::Invalid("class of negative dimension".into()))?;
        let p = partial(ctx, &part)?;
        let piece = if p.is_zero() {
            PieceVerdict { dim, in_image: true, certificate: None, residual: None }
        } else {
            match in_image_of_delta(ctx, &p, dim)? {
                Ok(c) => PieceVerdict { dim, in_image: true, certificate: Some(c), residual: None },
                Err(r) => PieceVerdict { dim, in_image: false, certificate: None, residual: Some(r) },
            }
        };
        pieces.push(piece);
    }
    let realizable = pieces.iter().all(|p| p.in_image);
    let integrality = integrality(ctx, m)?.is_ok();
    Ok(Realizability { realizable, pieces, integrality })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Context {
        Context::with_degree(6).unwrap()
    }

    fn p1(ctx: &Context) -> GradedPoly {
        ctx.projective_class(1).unwrap()
    }

    #[test]
    fn first_generators() {
        let c = ctx();
        let sy = c.symbols();
        let v = sy.vp(1);
        assert_eq!(x_generator(&c, 1).unwrap().nu, v.scale_i(2));
        let x2 = &(&(&p1(&c) * &v) + &(&sy.ap(1) * &v)) + &sy.vp(2);
        assert_eq!(x_generator(&c, 2).unwrap().nu, x2);
        let x3 = &(&p1(&c) * &sy.vp(2)).scale_i(3) + &(&sy.ap(1) * &sy.vp(2)).scale_i(2);
        assert_eq!(x_generator(&c, 3).unwrap().nu, x3);
    }

    #[test]
    fn e_choices() {
        assert_eq!(x_odd_choices(1).unwrap(), vec![EChoice { i: 1, e: 1 }]);
        assert_eq!(x_odd_choices(2).unwrap(), vec![EChoice { i: 1, e: 1 }]);
        for d in 1..=8 {
            let s: BigInt = x_odd_choices(d)
                .unwrap()
                .iter()
                .map(|c| binomial(d as u64 + 1, c.i as u64) * c.e)
                .sum();
            assert_eq!(s, omega(d).unwrap());
        }
    }

    #[test]
    fn theta_values() {
        let c = ctx();
        let th = |k: CatalogKind| {
            let f = catalog(&k).unwrap();
            let t = theta(&c, &f).unwrap();
            assert_eq!(t, theta_from_data(&c, &evaluate(&c, &f).unwrap()).unwrap());
            (t.fixed, t.normal)
        };
        let b = |x: i64| BigInt::from(x);
        assert_eq!(th(CatalogKind::Hij { i: 1, j: 1 }), (b(-6), b(2)));
        assert_eq!(th(CatalogKind::Hij { i: 1, j: 2 }), (b(-3), b(1)));
        assert_eq!(th(CatalogKind::Hij { i: 2, j: 2 }), (b(6), b(-6)));
        assert_eq!(th(CatalogKind::Pab { a: 2, b: 1 }), (b(-3), b(2)));
        let t = theta(&c, &catalog(&CatalogKind::Xn { n: 3 }).unwrap()).unwrap();
        assert_eq!(solve_s(&t).unwrap(), Some(b(2)));
    }

    #[test]
    fn fixture_invariants() {
        let c = ctx();
        for n in 1..=7 {
            let d = evaluate(&c, &catalog(&CatalogKind::Xn { n }).unwrap()).unwrap();
            let dims: Vec<u32> = d.fixed.keys().copied().collect();
            let top = n / 2;
            let want = match n {
                1 => vec![0],
                n if n % 2 == 0 => vec![top - 1, top],
                _ if top >= 2 => vec![top - 2, top],
                _ => vec![top],
            };
            assert_eq!(dims, want, "X{n}");
        }
    }

    #[test]
    fn express_round_trip() {
        let c = ctx();
        let xs = c.xsymbols();
        for n in 2..=5 {
            let x = x_generator(&c, n).unwrap();
            assert_eq!(express_in_x(&c, &x.nu).unwrap(), xs.xp(n as usize));
        }
        let v = c.symbols().vp(1);
        assert_eq!(express_in_x(&c, &v).unwrap(), xs.vp(1));
        let p1 = crate::mring::p_i(&c, 1).unwrap();
        let e = express_in_x(&c, &p1).unwrap();
        assert_eq!(x_to_m(&c, &e).unwrap(), p1);
    }

    #[test]
    fn swap_decomposition() {
        let c = ctx();
        let xs = c.xsymbols();
        let f = catalog(&CatalogKind::P1xP1Swap).unwrap();
        let d = decompose(&c, &f).unwrap();
        let a0 = &xs.xp(2).scale_i(4) - &xs.xp(1).pow(2);
        assert_eq!(d.a_i(&c, 0), a0);
        assert_eq!(d.a_i(&c, 1), xs.xp(3).scale_i(-1));
        assert_eq!(d.a.len(), 2);
        let data = evaluate(&c, &f).unwrap();
        assert!(check_decomposition(&c, data.d, &d, Some(&data.nu)).unwrap().all());
        // ε lands on ⟦ℙ¹×ℙ¹⟧ mod 2.
        assert_eq!(eps_mod2(&c, &d).unwrap(), mod2(&c, &data.ambient).unwrap());
        assert_eq!(phi_fixed_inv(&c, &d).unwrap(), data.fixed_total());
    }

    #[test]
    fn products_two_ways() {
        let c = ctx();
        let a = catalog(&CatalogKind::Xn { n: 2 }).unwrap();
        let b = catalog(&CatalogKind::P1xP1Swap).unwrap();
        let explicit = Fixture::explicit_product(&a, &b).unwrap();
        let fac = Fixture::product_of(&[(CatalogKind::Xn { n: 2 }, 1), (CatalogKind::P1xP1Swap, 1)]).unwrap();
        let (de, df) = (evaluate(&c, &explicit).unwrap(), evaluate(&c, &fac).unwrap());
        assert_eq!(de.nu, df.nu);
        assert_eq!(de.ambient, df.ambient);
        assert_eq!(de.fixed, df.fixed);
        assert_eq!(decompose(&c, &explicit).unwrap(), decompose(&c, &fac).unwrap());
    }

    #[test]
    fn realizability() {
        let c = ctx();
        let sy = c.symbols();
        let r = is_normal_bundle_class(&c, &sy.vp(1)).unwrap();
        assert!(!r.realizable && !r.integrality);
        let x2 = x_generator(&c, 2).unwrap().nu.clone();
        let r = is_normal_bundle_class(&c, &x2).unwrap();
        assert!(r.realizable && r.integrality);
        // a a₁v + b⟦ℙ¹⟧v + c v² with a + 2b + c = 4.
        let m = &(&(&sy.ap(1) * &sy.vp(1)) + &(&p1(&c) * &sy.vp(1))) + &sy.vp(2);
        let r = is_normal_bundle_class(&c, &m).unwrap();
        assert!(r.realizable && r.integrality);
    }
}
