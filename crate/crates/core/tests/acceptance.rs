//! Acceptance checks. One PASS/FAIL line per criterion; exits nonzero on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cobinv_core::algebra::GradedPoly;
use cobinv_core::chow::{ChowElem, KClass, Variety, VarietyDescriptor};
use cobinv_core::equivariant::{
    catalog, check_decomposition, decompose, evaluate, product_decomposition, solve_s, theta, x_generator,
    CatalogKind, Fixture,
};
use cobinv_core::fgl::MultiSeries;
use cobinv_core::lazard::c_alpha;
use cobinv_core::mring::{quillen_direct, quillen_formula, rho_direct, rho_via_gamma};
use cobinv_core::verdicts::{
    basis_i_n_1, bound_suite_fixture, curve_check, in_z_span, isolated_points_check, m_rank, sharpness_witnesses,
    shipped_corpus, witness_status, x_monomial_rank, Status,
};
use cobinv_core::{Config, Context};
use num_bigint::BigInt;
use rayon::prelude::*;

type Check = std::result::Result<String, String>;

fn ctx() -> Context {
    Context::new(Config::default()).expect("default config")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn choose(n: u64, k: u64) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn generators() -> Check {
    let c = ctx();
    let sy = c.symbols();
    let v = sy.vp(1);
    let p1 = c.projective_class(1).map_err(e)?;
    let a1 = sy.ap(1);
    let want = [
        v.scale_i(2),
        &(&(&p1 * &v) + &(&a1 * &v)) + &sy.vp(2),
        &(&p1 * &sy.vp(2)).scale_i(3) + &(&a1 * &sy.vp(2)).scale_i(2),
    ];
    let mut worst = Duration::ZERO;
    for (k, w) in want.iter().enumerate() {
        let t = Instant::now();
        let x = x_generator(&c, k as u32 + 1).map_err(e)?;
        worst = worst.max(t.elapsed());
        ensure(x.nu == *w, || format!("nu(X{}) differs", k + 1))?;
    }
    ensure(worst < Duration::from_secs(1), || format!("slowest generator took {worst:?}"))?;
    Ok("x1, x2, x3 exact".into())
}

fn swap() -> Check {
    let c = ctx();
    let xs = c.xsymbols();
    let d = decompose(&c, &catalog(&CatalogKind::P1xP1Swap).map_err(e)?).map_err(e)?;
    let a0 = &xs.xp(2).scale_i(4) - &xs.xp(1).pow(2);
    ensure(d.a_i(&c, 0) == a0, || "A0 differs".into())?;
    ensure(d.a_i(&c, 1) == xs.xp(3).scale_i(-1), || "A1 differs".into())?;
    ensure(d.a.keys().all(|&i| i <= 1), || "extra A_i".into())?;
    Ok("-x1^2 + 4x2 - t x3".into())
}

fn chern_tables() -> Check {
    let c = ctx();
    let (sy, lz) = (c.symbols(), c.lazard());
    let mut rows = 0;
    for n in 1..=6u32 {
        let x = lz.class_of(&Variety::projective_space(n)).map_err(e)?;
        let got = c_alpha(sy, &x, &[n]);
        ensure(got == BigInt::from(-(n as i64) - 1), || format!("c_(n)(P{n}) = {got}"))?;
        rows += 1;
    }
    for m in 1..=3u32 {
        for n in m.max(2)..=(7 - m) {
            let x = lz.class_of(&Variety::milnor(m, n).map_err(e)?).map_err(e)?;
            let got = c_alpha(sy, &x, &[m + n - 1]);
            let want = if m == 1 { 0 } else { choose((m + n) as u64, m as u64) };
            ensure(got == BigInt::from(want), || format!("c(H{m},{n}) = {got}, want {want}"))?;
            rows += 1;
        }
    }
    Ok(format!("{rows} rows"))
}

fn theta_table() -> Check {
    let c = ctx();
    let b = BigInt::from;
    let mut rows = 0;
    for s in 1..=5u32 {
        for bb in 0..s {
            let a = s - bb;
            if a <= bb {
                continue;
            }
            let t = theta(&c, &catalog(&CatalogKind::Pab { a, b: bb }).map_err(e)?).map_err(e)?;
            let want = (b(-(a as i64) - 1), b(bb as i64 + 1));
            ensure(t.d == a && (t.fixed.clone(), t.normal.clone()) == want, || format!("P({a},{bb}): {t:?}"))?;
            rows += 1;
        }
    }
    for s in 2..=5u32 {
        for i in 1..=s / 2 {
            let j = s - i;
            let d = (i + j - 1) as i64;
            let t = theta(&c, &catalog(&CatalogKind::Hij { i, j }).map_err(e)?).map_err(e)?;
            let want = if i != 1 {
                let k = choose(d as u64 + 1, i as u64);
                (b(k), b(-k))
            } else if d != 1 {
                (b(-d - 1), b(d - 1))
            } else {
                (b(-6), b(2))
            };
            ensure((t.fixed.clone(), t.normal.clone()) == want, || format!("H({i},{j}): {t:?}"))?;
            rows += 1;
        }
    }
    let mut svals = Vec::new();
    for n in 2..=7u32 {
        let t = theta(&c, &catalog(&CatalogKind::Xn { n }).map_err(e)?).map_err(e)?;
        let d = (n / 2) as i64;
        if n % 2 == 0 {
            ensure((t.fixed.clone(), t.normal.clone()) == (b(-d - 1), b(d)), || format!("X{n}: {t:?}"))?;
        } else {
            let s = solve_s(&t).map_err(e)?.ok_or_else(|| format!("X{n}: no integer s for {t:?}"))?;
            svals.push(format!("s{n}={s}"));
        }
        rows += 1;
    }
    Ok(format!("{rows} rows, {}", svals.join(" ")))
}

fn line(s: &Variety, coeffs: &[i64]) -> KClass {
    let mut c1 = ChowElem::int(s.ring(), 0);
    for (g, &k) in coeffs.iter().enumerate() {
        c1 = c1.add(&ChowElem::gen(s.ring(), g).scale(&BigInt::from(k)));
    }
    KClass::line(c1)
}

fn multisets(n: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for m in multisets(n, r - 1) {
        let lo = m.last().copied().unwrap_or(0);
        for k in lo..n {
            let mut m2 = m.clone();
            m2.push(k);
            out.push(m2);
        }
    }
    out
}

fn quillen_rho() -> Check {
    let c = Context::new(Config::with_degree(6)).map_err(e)?;
    let bases: Vec<(Variety, Vec<Vec<i64>>)> = vec![
        (Variety::point(), vec![vec![]]),
        (Variety::projective_space(1), vec![vec![-1], vec![0], vec![1], vec![2]]),
        (Variety::projective_space(2), vec![vec![-1], vec![0], vec![1], vec![2]]),
        (
            Variety::product(&Variety::projective_space(1), &Variety::projective_space(1)).map_err(e)?,
            vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1], vec![1, -1]],
        ),
    ];
    let mut cases = Vec::new();
    for (bi, (_, lines)) in bases.iter().enumerate() {
        for r in 1..=3 {
            for m in multisets(lines.len(), r) {
                cases.push((bi, m));
            }
        }
    }
    let n = cases.len();
    cases.par_iter().try_for_each(|(bi, m)| -> std::result::Result<(), String> {
        let (s, lines) = &bases[*bi];
        let bundle = m
            .iter()
            .fold(KClass::zero(s.ring()), |acc, &k| acc.add(&line(s, &lines[k])));
        let tag = || format!("{} with lines {m:?}", s.descriptor().label());
        let g = rho_via_gamma(&c, &bundle).map_err(e)?;
        let prec = g.prec().min(2);
        for j in [prec.max(1) as u32 - 1, prec.max(1) as u32] {
            let d = rho_direct(&c, s, &bundle, prec, j).map_err(e)?;
            ensure(d.agrees(&g, prec), || format!("rho differs on {} (j={j})", tag()))?;
        }
        for k in 0..=2 {
            let a = quillen_direct(&c, s, &bundle, k).map_err(e)?;
            let b = quillen_formula(&c, &bundle, k).map_err(e)?;
            ensure(a == b, || format!("Quillen differs on {} (m={k})", tag()))?;
        }
        Ok(())
    })?;
    Ok(format!("{n} bundles"))
}

fn fgl_suite() -> Check {
    let c = ctx();
    let f = c.fgl().map_err(e)?;
    let t = f.order();
    let sy = c.symbols();
    for i in 0..t as u32 {
        let unit = if i == 1 { sy.one() } else { sy.zero() };
        ensure(f.sum_coeff(i, 0) == unit, || format!("F(x,0) at x^{i}"))?;
        for j in 0..(t as u32 - i) {
            ensure(f.sum_coeff(i, j) == f.sum_coeff(j, i), || format!("F not symmetric at ({i},{j})"))?;
        }
    }
    let var = |k| MultiSeries::var(3, t, k, &sy.zero());
    let (x, y, z) = (var(0), var(1), var(2));
    let lhs = f.sum().substitute(&[f.sum().substitute(&[x.clone(), y.clone()]), z.clone()]);
    let rhs = f.sum().substitute(&[x, f.sum().substitute(&[y, z])]);
    ensure(lhs == rhs, || "associativity fails".into())?;
    let h = f.h();
    let two = f.two();
    for k in 1..t - 1 {
        ensure(*h.coeff(k - 1) == two.coeff(k as i64), || format!("h t vs [2](t) at t^{k}"))?;
    }
    ensure(two.coeff(0).is_zero(), || "[2](0) != 0".into())?;
    let p1 = c.projective_class(1).map_err(e)?;
    ensure(f.u(2) == p1.scale_i(-1), || "u2 != -[P1]".into())?;
    Ok(format!("T = {t}"))
}

fn curves() -> Check {
    let c = ctx();
    let mut grid = Vec::new();
    for n in 0..=4u32 {
        for a in -8..=8i64 {
            for b in -8..=8i64 {
                if (n == 0 && (a != 0 || b != 0)) || (n == 1 && a != 0) {
                    continue;
                }
                for cc in -8..=8i64 {
                    grid.push((n, a, b, cc));
                }
            }
        }
    }
    let bad: Vec<_> = grid
        .par_iter()
        .filter_map(|&(n, a, b, cc)| {
            let v = curve_check(&c, n, &BigInt::from(a), &BigInt::from(b), &BigInt::from(cc));
            match v {
                Ok(v) if v.agree() => None,
                Ok(v) => Some(format!("({n},{a},{b},{cc}): {v:?}")),
                Err(err) => Some(format!("({n},{a},{b},{cc}): {err}")),
            }
        })
        .collect();
    ensure(bad.is_empty(), || format!("{} disagreements, first {}", bad.len(), bad[0]))?;
    Ok(format!("{} cases", grid.len()))
}

fn poly_postconditions() -> Check {
    let c = ctx();
    let corpus = shipped_corpus().map_err(e)?;
    for (name, f) in &corpus {
        let d = decompose(&c, f).map_err(e)?;
        let data = evaluate(&c, f).map_err(e)?;
        let k = check_decomposition(&c, data.d, &d, Some(&data.nu)).map_err(e)?;
        ensure(k.all(), || format!("{name}: {k:?}"))?;
    }
    let mut pairs = Vec::new();
    for i in 0..corpus.len() {
        for j in i..corpus.len() {
            pairs.push((i, j));
        }
    }
    pairs.par_iter().try_for_each(|&(i, j)| -> std::result::Result<(), String> {
        let (d, fd) = product_decomposition(&c, &corpus[i].1, &corpus[j].1).map_err(e)?;
        let k = check_decomposition(&c, fd, &d, None).map_err(e)?;
        ensure(k.all(), || format!("{} x {}: {k:?}", corpus[i].0, corpus[j].0))
    })?;
    Ok(format!("{} fixtures, {} products", corpus.len(), pairs.len()))
}

fn bounds() -> Check {
    let c = ctx();
    let mut labels = Vec::new();
    for w in sharpness_witnesses().map_err(e)? {
        let (st, hits) = witness_status(&c, &w).map_err(e)?;
        ensure(st == Status::Sharp, || format!("witness {} ({}): {st:?} {hits:?}", w.label, w.fixture.name))?;
        labels.push(format!("{}:{}", w.label, w.fixture.name));
    }
    let corpus = shipped_corpus().map_err(e)?;
    let mut reports = 0;
    for (name, f) in &corpus {
        let rs = bound_suite_fixture(&c, f).map_err(e)?;
        reports += rs.len();
        if let Some(r) = rs.iter().find(|r| r.status == Status::Violated) {
            return Err(format!("{name}: {r:?}"));
        }
    }
    Ok(format!("{} witnesses sharp, {reports} reports, none violated", labels.len()))
}

fn independence() -> Check {
    let c = ctx();
    let mut total = 0;
    for w in 1..=8 {
        let (r, p) = x_monomial_rank(&c, w).map_err(e)?;
        ensure(r == p, || format!("weight {w}: rank {r} of {p}"))?;
        total += p;
    }
    Ok(format!("{total} monomials"))
}

fn low_fixed_samples(n: u32) -> Vec<Fixture> {
    let x1 = CatalogKind::Xn { n: 1 };
    let one_dim: Vec<CatalogKind> = vec![
        CatalogKind::Trivial { variety: VarietyDescriptor::Projective { n: 1 } },
        CatalogKind::Xn { n: 2 },
        CatalogKind::Xn { n: 3 },
        CatalogKind::P1xP1Swap,
        CatalogKind::Pab { a: 1, b: 1 },
        CatalogKind::Hij { i: 1, j: 1 },
    ];
    let mut out = Vec::new();
    let pt = CatalogKind::Trivial { variety: VarietyDescriptor::Point };
    if n == 0 {
        out.push(Fixture::product_of(&[(pt.clone(), 1)]).unwrap());
    } else {
        out.push(Fixture::product_of(&[(x1.clone(), n)]).unwrap());
    }
    for k in &one_dim {
        let m = catalog(k).unwrap().n;
        if m <= n {
            let mut fs = vec![(k.clone(), 1)];
            if n > m {
                fs.push((x1.clone(), n - m));
            }
            out.push(Fixture::product_of(&fs).unwrap());
        }
    }
    out
}

fn basis_one() -> Check {
    let c = ctx();
    let nu = |f: &Fixture| evaluate(&c, f).map(|d| d.nu.clone()).map_err(e);
    let mut sizes = Vec::new();
    for n in 0..=5u32 {
        let basis: Vec<GradedPoly> = basis_i_n_1(n).map_err(e)?.iter().map(nu).collect::<Result<_, _>>()?;
        ensure(m_rank(&basis) == basis.len(), || format!("n={n}: basis is dependent"))?;
        let samples: Vec<GradedPoly> = low_fixed_samples(n).iter().map(nu).collect::<Result<_, _>>()?;
        let ok = in_z_span(&basis, &samples);
        ensure(ok.iter().all(|&b| b), || format!("n={n}: span misses sample(s) {ok:?}"))?;
        sizes.push(format!("{}/{}", basis.len(), samples.len()));
    }
    for n in 1..=6u32 {
        let f = Fixture::product_of(&[(CatalogKind::Xn { n: 1 }, n)]).map_err(e)?;
        let chk = isolated_points_check(&*evaluate(&c, &f).map_err(e)?).map_err(e)?;
        let q = BigInt::from(1) << n as usize;
        ensure(chk.points == q.to_string() && chk.a.as_deref() == Some("1"), || format!("X1^{n}: {chk:?}"))?;
    }
    Ok(format!("basis/samples {}", sizes.join(" ")))
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, fn() -> Check, u64)> = vec![
        ("generator examples", generators, 3),
        ("swap decomposition", swap, 1),
        ("Chern-number tables", chern_tables, 5),
        ("theta table", theta_table, 10),
        ("Quillen and rho identities", quillen_rho, 30),
        ("formal group law", fgl_suite, 30),
        ("curve realizability sweep", curves, 120),
        ("decomposition postconditions", poly_postconditions, 120),
        ("bounds and sharpness", bounds, 120),
        ("x-monomial independence", independence, 60),
        ("basis of I_n(1)", basis_one, 30),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let dt = t.elapsed();
        let r = r.and_then(|s| {
            if dt > Duration::from_secs(limit) {
                Err(format!("{s}; took {dt:.2?}, limit {limit}s"))
            } else {
                Ok(s)
            }
        });
        match r {
            Ok(s) => println!("PASS {:>2} {name} ({dt:.2?}): {s}", i + 1),
            Err(s) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({dt:.2?}): {s}", i + 1)
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
