//! Checkers for the dimension bounds on fixed loci, the closed-form
//! classification for fixed curves and the basis of `I_n(1)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::Value;

use crate::algebra::{GradedPoly, Lattice, Monomial, Solve};
use crate::context::Context;
use crate::equivariant::{
    evaluate, is_normal_bundle_class, shipped_fixtures, solve_s, CatalogKind, Fixture, FixtureData, Theta,
};
use crate::error::{Error, Result};
use crate::lazard::{binomial, fdeg_partition, genus, v2, Genus};
use crate::partitions::{partitions, Partition};

/// A nonnegative rational bound, kept reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ratio {
    pub num: i64,
    pub den: i64,
}

impl Ratio {
    pub fn new(num: i64, den: i64) -> Self {
        let g = num.gcd(&den).max(1);
        let s = if den < 0 { -1 } else { 1 };
        Ratio { num: s * num / g, den: s * den / g }
    }

    pub fn int(k: i64) -> Self {
        Ratio { num: k, den: 1 }
    }

    fn cmp_int(&self, x: i64) -> std::cmp::Ordering {
        (x * self.den).cmp(&self.num)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl Serialize for Ratio {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Satisfied,
    Sharp,
    Violated,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub theorem: &'static str,
    pub n: u32,
    pub d: u32,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<&'static str, Value>,
    pub premise: bool,
    /// Upper bound on `observed`; absent for the biconditional.
    pub bound: Option<Ratio>,
    pub observed: i64,
    pub status: Status,
}

impl BoundReport {
    fn le(theorem: &'static str, data: (u32, u32), premise: bool, observed: i64, bound: Ratio) -> Self {
        let status = if !premise {
            Status::Satisfied
        } else {
            match bound.cmp_int(observed) {
                std::cmp::Ordering::Less => Status::Satisfied,
                std::cmp::Ordering::Equal => Status::Sharp,
                std::cmp::Ordering::Greater => Status::Violated,
            }
        };
        BoundReport {
            theorem,
            n: data.0,
            d: data.1,
            params: BTreeMap::new(),
            premise,
            bound: Some(bound),
            observed,
            status,
        }
    }

    fn with(mut self, k: &'static str, v: impl Into<Value>) -> Self {
        self.params.insert(k, v.into());
        self
    }

    pub fn param_i64(&self, k: &str) -> Option<i64> {
        self.params.get(k).and_then(Value::as_i64)
    }
}

fn vt(x: &BigInt) -> Option<i64> {
    v2(x).map(|k| k as i64)
}

fn small(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Window(format!("integer {x} does not fit a report")))
}

/// `fdeg` of `⟦X⟧ mod 2` written in the mod-2 generators; `None` if it vanishes.
pub fn fdeg_of_class(ctx: &Context, x: &GradedPoly) -> Result<Option<u32>> {
    ctx.lazard().fdeg_mod2(x)
}

/// `deg P ≤ Σ(s − i_m)/s + (2 + 1/s) fdeg P`, using the monomial giving the
/// smallest right-hand side; the `i_m` run over the factors `X_{2i+1}` with `i < s`.
pub fn deg_fdeg_bound(ctx: &Context, p: &GradedPoly, s: u32) -> Result<BoundReport> {
    let xs = ctx.xsymbols();
    if s == 0 {
        return Err(Error::Invalid("s must be positive".into()));
    }
    let degs: Vec<i64> = p.terms().map(|(m, _)| xs.xdeg(m)).collect();
    let deg = match degs.first() {
        Some(&d) if degs.iter().all(|&e| e == d) => d,
        _ => return Err(Error::Invalid("deg/fdeg bound needs a nonzero homogeneous polynomial".into())),
    };
    let fdeg = p.terms().map(|(m, _)| xs.fdeg(m)).max().unwrap_or(0);
    let s = s as i64;
    let mut best: Option<(Ratio, i64)> = None;
    for (m, _) in p.terms() {
        let mut num = (2 * s + 1) * fdeg;
        let mut count = 0;
        for (i, e) in m.iter() {
            if i == xs.v() {
                continue;
            }
            let j = i as i64;
            if j % 2 == 1 && (j - 1) / 2 < s {
                num += (s - (j - 1) / 2) * e as i64;
                count += e as i64;
            }
        }
        let r = Ratio::new(num, s);
        if best.is_none_or(|(b, _)| r.num * b.den < b.num * r.den) {
            best = Some((r, count));
        }
    }
    let (bound, count) = best.expect("nonzero polynomial");
    Ok(BoundReport::le("deg_fdeg", (0, fdeg as u32), true, deg, bound)
        .with("s", s)
        .with("p", count)
        .with("fdeg", fdeg))
}

fn c_alpha_gcds(ctx: &Context, w: u32) -> Result<BTreeMap<Partition, BigInt>> {
    let sy = ctx.symbols();
    let rows = ctx.lazard().basis(w)?.rows(sy);
    Ok(partitions(w)
        .into_iter()
        .map(|a| {
            let m = sy.b_mono(&a);
            let g = rows.iter().fold(BigInt::zero(), |g, r| g.gcd(&r.coeff(&m)));
            (a, g)
        })
        .collect())
}

/// Smallest `q` with `x ∉ J^{q+1}` for the ideal generated by 2 (if `with_two`)
/// and the generators `y_k` with `pick(k)`: the minimum over coordinates of
/// `v₂(coefficient)·[with_two] + #{picked factors}`. `None` for zero.
fn ideal_order(
    ctx: &Context,
    x: &GradedPoly,
    with_two: bool,
    pick: impl Fn(u32) -> bool,
) -> Result<Option<i64>> {
    let coords = ctx.lazard().coordinates(x)?;
    Ok(coords
        .iter()
        .filter(|(_, k)| with_two || k.is_odd())
        .map(|(beta, k)| {
            let c = beta.iter().filter(|b| pick(**b)).count() as i64;
            c + if with_two { vt(k).unwrap_or(0) } else { 0 }
        })
        .min())
}

/// Number of isolated fixed points.
pub fn isolated_points(data: &FixtureData) -> BigInt {
    data.fixed_in(0).constant_term()
}

#[derive(Clone, Debug, Serialize)]
pub struct IsolatedCheck {
    pub points: String,
    pub codim: u32,
    /// `q / 2^n` when it is an integer.
    pub a: Option<String>,
    pub realizable: bool,
}

/// For a fixed locus of isolated points: `q = 2^n a`.
pub fn isolated_points_check(data: &FixtureData) -> Result<IsolatedCheck> {
    if data.d.is_some_and(|d| d > 0) {
        return Err(Error::Invalid("the fixed locus is not zero-dimensional".into()));
    }
    let q = isolated_points(data);
    let den = BigInt::one() << data.n as usize;
    let (a, r) = q.div_rem(&den);
    Ok(IsolatedCheck {
        points: q.to_string(),
        codim: data.n,
        a: r.is_zero().then(|| a.to_string()),
        realizable: r.is_zero(),
    })
}

/// Every bound applicable to the fixture. Parametrized families only list
/// the parameter values whose premise holds, each with the smallest `q`.
pub fn bound_suite(ctx: &Context, data: &FixtureData) -> Result<Vec<BoundReport>> {
    let Some(d) = data.d else { return Ok(vec![]) };
    let sy = ctx.symbols();
    let lz = ctx.lazard();
    let n = data.n;
    let nd = (n, d);
    let (ni, di) = (n as i64, d as i64);
    let mut out = Vec::new();
    let x = &data.ambient;
    let fix = data.fixed_total();

    // Odd Chern numbers of X.
    let odd_chern = x.terms().any(|(_, c)| c.is_odd());
    out.push(BoundReport::le("boardman", nd, odd_chern, ni, Ratio::new(5 * di, 2)));

    // ⟦X⟧ mod 2 against powers of J(s) = (y_1, y_3, …, y_{2s-1}).
    for s in 1..=d + 1 {
        if let Some(q) = ideal_order(ctx, x, false, |b| b % 2 == 1 && b < 2 * s)? {
            let si = s as i64;
            out.push(
                BoundReport::le("ideal_power", nd, true, ni, Ratio::new((2 * si + 1) * di + si * q, si))
                    .with("s", s)
                    .with("q", q),
            );
        }
    }

    if let Some(f) = fdeg_of_class(ctx, x)? {
        out.push(BoundReport::le("fdeg_mod2", nd, true, f as i64, Ratio::int(di)));
    }

    let gx = c_alpha_gcds(ctx, n)?;
    for (alpha, g) in &gx {
        let c = x.coeff(&sy.b_mono(alpha));
        if !g.is_zero() && (&c / g).is_odd() {
            let odd = alpha.iter().filter(|a| *a % 2 == 1).count() as i64;
            let half = fdeg_partition(alpha) as i64;
            out.push(
                BoundReport::le("alpha_primitive", nd, true, half, Ratio::int(di))
                    .with("alpha", format!("{alpha:?}"))
                    .with("odd_parts", odd),
            );
        }
    }

    // Valuation of ⟦X^{μ₂}⟧ in 𝕃.
    let val = lz.coordinates(&fix)?.values().filter_map(vt).min();
    if ni >= 3 * di {
        match val {
            Some(v) => out.push(BoundReport::le("small_dim_fixed", nd, true, ni - 3 * di, Ratio::int(v))),
            None => out.push(BoundReport::le("small_dim_fixed", nd, false, ni - 3 * di, Ratio::int(0))),
        }
    }

    let qc = fix.terms().filter_map(|(_, c)| vt(c)).min();
    out.push(match qc {
        Some(q) => BoundReport::le("n_minus_5d", nd, true, ni, Ratio::new(5 * di + 2 * q, 2)).with("q", q),
        None => BoundReport::le("n_minus_5d", nd, false, ni, Ratio::new(5 * di, 2)),
    });

    let chi = genus(sy, x, Genus::Euler)?;
    out.push(BoundReport::le("euler_odd", nd, chi.is_odd(), ni, Ratio::int(2 * di)).with("chi", small(&chi)?));
    let not4 = !(&chi % 4u32).is_zero();
    out.push(
        BoundReport::le("euler_odd_mod4", nd, n % 2 == 1 && not4, ni, Ratio::int(2 * di + 1))
            .with("chi", small(&chi)?),
    );
    let chi_f = genus(sy, &fix, Genus::Euler)?;
    out.push(match vt(&chi_f) {
        Some(q) => BoundReport::le("euler_fixed", nd, true, ni, Ratio::int(2 * di + q)).with("q", q),
        None => BoundReport::le("euler_fixed", nd, false, ni, Ratio::int(2 * di)),
    });

    let psi = genus(sy, x, Genus::Psi)?;
    out.push(BoundReport::le("psi_odd", nd, psi.is_odd(), ni, Ratio::int(2 * di)).with("psi", small(&psi)?));
    let psi_f = genus(sy, &fix, Genus::Psi)?;
    out.push(match vt(&psi_f) {
        Some(q) => BoundReport::le("psi_fixed", nd, true, ni, Ratio::new(9 * di + 4 * q, 4)).with("q", q),
        None => BoundReport::le("psi_fixed", nd, false, ni, Ratio::new(9 * di, 4)),
    });

    // F_{d-j} against powers of I(s) = (2, y_1, …, y_{s-1}).
    for j in 0..=d {
        let f = data.fixed_in(d - j);
        if f.is_zero() {
            continue;
        }
        let jj = j as i64;
        for s in 1..=d + 1 {
            if let Some(q) = ideal_order(ctx, &f, true, |b| b < s)? {
                let si = s as i64;
                // (2 + 1/s)d + q + ⌊j/2⌋(1 − 2/s)
                let num = (2 * si + 1) * di + si * q + (jj / 2) * (si - 2);
                out.push(
                    BoundReport::le("fixed_component", nd, true, ni, Ratio::new(num, si))
                        .with("s", s)
                        .with("j", j)
                        .with("q", q),
                );
            }
        }
        for (alpha, g) in c_alpha_gcds(ctx, d - j)? {
            let c = f.coeff(&sy.b_mono(&alpha));
            if c.is_zero() || g.is_zero() {
                continue;
            }
            let q = vt(&c).unwrap_or(0) - vt(&g).unwrap_or(0);
            let num = 4 * di + 2 * q + 2 * alpha.len() as i64 + jj;
            out.push(
                BoundReport::le("c_alpha_component", nd, true, ni, Ratio::new(num, 2))
                    .with("alpha", format!("{alpha:?}"))
                    .with("j", j)
                    .with("q", q),
            );
        }
    }

    if n == 2 * d + 1 && d > 0 {
        let ix = !lz.is_decomposable_mod2(x)?;
        let fd = data.fixed_in(d);
        let iff = if fd.is_zero() { false } else { !lz.is_decomposable_mod2(&fd)? };
        out.push(BoundReport {
            theorem: "top_indecomposable",
            n,
            d,
            params: BTreeMap::from([("ambient", Value::from(ix)), ("top_fixed", Value::from(iff))]),
            premise: true,
            bound: None,
            observed: (ix == iff) as i64,
            status: if ix == iff { Status::Satisfied } else { Status::Violated },
        });
    }
    Ok(out)
}

pub fn bound_suite_fixture(ctx: &Context, f: &Fixture) -> Result<Vec<BoundReport>> {
    bound_suite(ctx, &*evaluate(ctx, f)?)
}

/// Closed-form realizability of `a·a₁vⁿ⁻¹ + b⟦ℙ¹⟧vⁿ⁻¹ + c·vⁿ`.
pub fn curve_table(n: u32, a: &BigInt, b: &BigInt, c: &BigInt) -> bool {
    let div = |x: &BigInt, k: u32| (x % (BigInt::one() << k as usize)).is_zero();
    match n {
        0 => true,
        1 => c.is_even(),
        2 => div(&(a + b * 2 + c), 2),
        _ => div(a, n - 2) && div(b, n - 3) && div(&(a * 3 - b * 2 - c), n),
    }
}

/// The ℳ-class of a bundle of total dimension `n` over a curve plus points.
pub fn curve_class(ctx: &Context, n: u32, a: &BigInt, b: &BigInt, c: &BigInt) -> Result<GradedPoly> {
    let sy = ctx.symbols();
    match n {
        0 if !a.is_zero() || !b.is_zero() => {
            return Err(Error::Invalid("n = 0 leaves no room for a curve: a and b must vanish".into()))
        }
        1 if !a.is_zero() => return Err(Error::Invalid("over a curve with n = 1 the bundle has rank 0, so a = 0".into())),
        _ => {}
    }
    let mut m = sy.vp(n as i32).scale(c);
    if n >= 1 {
        let r = sy.vp(n as i32 - 1);
        m += &(&sy.ap(1) * &r).scale(a);
        m += &(&ctx.projective_class(1)? * &r).scale(b);
    }
    Ok(m)
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveVerdict {
    pub table: bool,
    pub lattice: bool,
    pub integrality: bool,
}

impl CurveVerdict {
    pub fn agree(&self) -> bool {
        self.table == self.lattice && self.lattice == self.integrality
    }
}

pub fn curve_check(ctx: &Context, n: u32, a: &BigInt, b: &BigInt, c: &BigInt) -> Result<CurveVerdict> {
    let m = curve_class(ctx, n, a, b, c)?;
    let r = is_normal_bundle_class(ctx, &m)?;
    Ok(CurveVerdict { table: curve_table(n, a, b, c), lattice: r.realizable, integrality: r.integrality })
}

/// The basis of `I_n(1)`, as fixtures.
pub fn basis_i_n_1(n: u32) -> Result<Vec<Fixture>> {
    let x = |k| CatalogKind::Xn { n: k };
    let list: Vec<Vec<(CatalogKind, u32)>> = match n {
        0 => vec![vec![(CatalogKind::Trivial { variety: crate::chow::VarietyDescriptor::Point }, 1)]],
        1 => vec![vec![(CatalogKind::Trivial { variety: crate::chow::VarietyDescriptor::Projective { n: 1 } }, 1)], vec![(x(1), 1)]],
        2 => vec![vec![(CatalogKind::P1xP1Swap, 1)], vec![(x(2), 1)], vec![(x(1), 2)]],
        _ => vec![vec![(x(1), n - 3), (x(3), 1)], vec![(x(1), n - 2), (x(2), 1)], vec![(x(1), n)]],
    };
    list.iter().map(|f| Fixture::product_of(f)).collect()
}

/// Integer vectors of ℳ-classes over the union of their monomials.
pub fn m_vectors(classes: &[GradedPoly]) -> (Vec<Monomial>, Vec<Vec<BigInt>>) {
    let mut cols: BTreeMap<Monomial, usize> = BTreeMap::new();
    for c in classes {
        for (m, _) in c.terms() {
            let k = cols.len();
            cols.entry(m.clone()).or_insert(k);
        }
    }
    let rows = classes
        .iter()
        .map(|c| {
            let mut v = vec![BigInt::zero(); cols.len()];
            for (m, k) in c.terms() {
                v[cols[m]] = k.clone();
            }
            v
        })
        .collect();
    let mut order: Vec<(Monomial, usize)> = cols.into_iter().collect();
    order.sort_by_key(|p| p.1);
    (order.into_iter().map(|p| p.0).collect(), rows)
}

/// Rank of the classes as integer vectors.
pub fn m_rank(classes: &[GradedPoly]) -> usize {
    let (cols, rows) = m_vectors(classes);
    Lattice::new(cols.len(), &rows).rank()
}

/// Whether every sample lies in the ℤ-span of the basis.
pub fn in_z_span(basis: &[GradedPoly], samples: &[GradedPoly]) -> Vec<bool> {
    let mut all = basis.to_vec();
    all.extend(samples.iter().cloned());
    let (cols, rows) = m_vectors(&all);
    let l = Lattice::new(cols.len(), &rows[..basis.len()]);
    rows[basis.len()..].iter().map(|r| matches!(l.solve(r), Solve::Member(_))).collect()
}

/// Rank of `{x_α : α ⊢ w}` in ℳ, against the number of partitions.
pub fn x_monomial_rank(ctx: &Context, w: u32) -> Result<(usize, usize)> {
    let mut gens: HashMap<u32, GradedPoly> = HashMap::new();
    for k in 1..=w {
        gens.insert(k, crate::equivariant::x_generator(ctx, k)?.nu.clone());
    }
    let parts = partitions(w);
    let classes: Vec<GradedPoly> = parts
        .iter()
        .map(|a| a.iter().fold(ctx.symbols().one(), |acc, k| &acc * &gens[k]))
        .collect();
    Ok((m_rank(&classes), parts.len()))
}

/// A product expected to make one bound an equality.
#[derive(Clone, Debug)]
pub struct Witness {
    pub label: &'static str,
    pub fixture: Fixture,
    pub theorem: &'static str,
    /// Parameters the matching report must carry.
    pub params: Vec<(&'static str, i64)>,
}

pub fn sharpness_witnesses() -> Result<Vec<Witness>> {
    let x = |k| CatalogKind::Xn { n: k };
    let w = |label, f: &[(CatalogKind, u32)], theorem, params: Vec<(&'static str, i64)>| -> Result<Witness> {
        Ok(Witness { label, fixture: Fixture::product_of(f)?, theorem, params })
    };
    Ok(vec![
        w("i", &[(x(1), 1), (x(3), 2)], "ideal_power", vec![("s", 1)])?,
        w("i", &[(x(1), 1), (x(5), 1)], "ideal_power", vec![("s", 2)])?,
        w("i", &[(x(7), 1)], "ideal_power", vec![("s", 3)])?,
        w("ii", &[(x(1), 1), (x(3), 2)], "small_dim_fixed", vec![])?,
        w("ii", &[(x(1), 2), (x(3), 1)], "small_dim_fixed", vec![])?,
        w("iii", &[(x(1), 2), (x(5), 1)], "n_minus_5d", vec![])?,
        w("iii", &[(x(1), 1), (x(5), 1)], "n_minus_5d", vec![])?,
        w("iv", &[(x(2), 2)], "euler_odd", vec![])?,
        w("iv", &[(x(2), 2)], "psi_odd", vec![])?,
        w("iv", &[(x(2), 3)], "euler_odd", vec![])?,
        w("iv", &[(x(1), 1), (x(2), 2)], "euler_odd_mod4", vec![])?,
        w("v", &[(x(1), 2), (x(4), 1)], "euler_fixed", vec![])?,
        w("vi", &[(x(1), 1), (x(9), 1)], "psi_fixed", vec![])?,
    ])
}

/// Whether `t` matches the closed form known for `kind`; `None` when there is
/// none (ℙ(a,a), products, trivial actions).
pub fn theta_matches(kind: &CatalogKind, t: &Theta) -> Result<Option<bool>> {
    let pair = |f: i64, n: i64| Some(t.fixed == BigInt::from(f) && t.normal == BigInt::from(n));
    Ok(match *kind {
        CatalogKind::Pab { a, b } if a > b => pair(-(a as i64) - 1, b as i64 + 1),
        CatalogKind::Hij { i, j } => {
            let d = (i + j - 1) as i64;
            if i != 1 {
                let k = binomial(d as u64 + 1, i as u64);
                Some(t.fixed == k && t.normal == -k)
            } else if d != 1 {
                pair(-d - 1, d - 1)
            } else {
                pair(-6, 2)
            }
        }
        CatalogKind::Xn { n } if n >= 2 && n % 2 == 0 => pair(-(n as i64 / 2) - 1, n as i64 / 2),
        CatalogKind::Xn { n } if n >= 3 => Some(solve_s(t)?.is_some()),
        _ => None,
    })
}

/// File stem of a witness product, e.g. `sharp_x1_x3p2`.
pub fn witness_stem(w: &Witness) -> String {
    let parts: Vec<String> = w
        .fixture
        .factors
        .iter()
        .map(|f| {
            let k = f.fixture.name().to_lowercase();
            if f.power == 1 { k } else { format!("{k}p{}", f.power) }
        })
        .collect();
    format!("sharp_{}", parts.join("_"))
}

/// Shipped involutions together with the sharpness products.
pub fn shipped_corpus() -> Result<Vec<(String, Fixture)>> {
    let mut out = shipped_fixtures()?;
    for w in sharpness_witnesses()? {
        let stem = witness_stem(&w);
        let single = matches!(&w.fixture.factors[..], [f] if f.power == 1);
        if !single && out.iter().all(|(s, _)| *s != stem) {
            out.push((stem, w.fixture));
        }
    }
    Ok(out)
}

/// Status of the witness's target bound (the tightest matching report).
pub fn witness_status(ctx: &Context, w: &Witness) -> Result<(Status, Vec<BoundReport>)> {
    let reports = bound_suite_fixture(ctx, &w.fixture)?;
    let hits: Vec<BoundReport> = reports
        .into_iter()
        .filter(|r| r.theorem == w.theorem && w.params.iter().all(|(k, v)| r.param_i64(k) == Some(*v)))
        .collect();
    let status = if hits.iter().any(|r| r.status == Status::Violated) {
        Status::Violated
    } else if hits.iter().any(|r| r.status == Status::Sharp) {
        Status::Sharp
    } else {
        Status::Satisfied
    };
    Ok((status, hits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivariant::{catalog, decompose, x_generator};

    fn ctx() -> Context {
        Context::with_degree(6).unwrap()
    }

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn curve_rows() {
        assert!(!curve_table(1, &b(0), &b(0), &b(1)));
        assert!(curve_table(1, &b(0), &b(0), &b(2)));
        assert!(curve_table(0, &b(0), &b(0), &b(7)));
        assert!(curve_table(3, &b(2), &b(1), &b(4)));
        assert!(curve_table(2, &b(1), &b(1), &b(1)));
        let c = ctx();
        for (n, a, bb, cc) in [(1, 0, 0, 1), (1, 0, 3, 2), (2, 1, 1, 1), (2, 1, 1, 2), (3, 2, 1, 4), (3, 2, 1, 12)] {
            let v = curve_check(&c, n, &b(a), &b(bb), &b(cc)).unwrap();
            assert!(v.agree(), "{n} {a} {bb} {cc}: {v:?}");
        }
        assert!(curve_class(&c, 1, &b(1), &b(0), &b(0)).is_err());
    }

    #[test]
    fn deg_fdeg_examples() {
        let c = ctx();
        let xs = c.xsymbols();
        let r = deg_fdeg_bound(&c, &xs.xp(3).pow(2), 1).unwrap();
        assert_eq!(r.status, Status::Sharp);
        let r = deg_fdeg_bound(&c, &xs.xp(5).pow(2), 2).unwrap();
        assert_eq!((r.observed, r.bound), (10, Some(Ratio::int(10))));
        let r = deg_fdeg_bound(&c, &xs.xp(1).pow(3), 1).unwrap();
        assert_eq!((r.observed, r.bound), (3, Some(Ratio::int(3))));
    }

    #[test]
    fn fdeg_examples() {
        let c = ctx();
        assert_eq!(fdeg_of_class(&c, &c.projective_class(1).unwrap()).unwrap(), Some(0));
        assert_eq!(fdeg_of_class(&c, &x_generator(&c, 5).unwrap().ambient).unwrap(), Some(2));
        let x2 = x_generator(&c, 2).unwrap().ambient.clone();
        assert_eq!(fdeg_of_class(&c, &x2.pow(3)).unwrap(), Some(3));
    }

    #[test]
    fn swap_suite_and_isolated() {
        let c = ctx();
        let r = bound_suite_fixture(&c, &catalog(&CatalogKind::P1xP1Swap).unwrap()).unwrap();
        assert!(!r.is_empty());
        assert!(r.iter().all(|r| r.status != Status::Violated), "{r:?}");
        let f = Fixture::product_of(&[(CatalogKind::Xn { n: 1 }, 3)]).unwrap();
        let chk = isolated_points_check(&evaluate(&c, &f).unwrap()).unwrap();
        assert_eq!((chk.points.as_str(), chk.a.as_deref()), ("8", Some("1")));
    }

    #[test]
    fn witnesses_are_sharp() {
        let c = ctx();
        for w in sharpness_witnesses().unwrap() {
            let (s, hits) = witness_status(&c, &w).unwrap();
            assert_eq!(s, Status::Sharp, "{} {} {:?}", w.label, w.fixture.name, hits);
        }
    }

    #[test]
    fn basis_in_low_degree() {
        let c = ctx();
        for n in 0..=4 {
            let classes: Vec<GradedPoly> = basis_i_n_1(n)
                .unwrap()
                .iter()
                .map(|f| evaluate(&c, f).unwrap().nu.clone())
                .collect();
            assert_eq!(m_rank(&classes), classes.len(), "n = {n}");
        }
        let s = decompose(&c, &basis_i_n_1(2).unwrap()[0]).unwrap();
        assert_eq!(s.a.len(), 2);
    }
}
