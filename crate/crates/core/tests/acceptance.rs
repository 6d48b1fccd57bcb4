//! Acceptance criteria, one pass/fail line each. Every check compares the library against
//! an oracle written here from the definitions.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use invsemi::extnat::{d_condition, j_condition};
use invsemi::ideals::{ideals_all, is_ideal, j_of_f, kernel};
use invsemi::regularity::{is_regular, is_unit_regular};
use invsemi::semigroup::{
    eggbox, enumerate, j_below_witness, l_below_witness, r_below_witness, ElementData, GreenOracle,
    GreenRelation,
};
use invsemi::verify::{verify, VerifyConfig};
use invsemi::{Context, Family, FiberProfile, Transformation};

type Verdict = Result<(), String>;
type Criterion = (&'static str, fn() -> Verdict);

fn every_map(n: usize) -> Vec<Transformation> {
    let total = n.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let mut images = vec![0; n];
            for slot in images.iter_mut().rev() {
                *slot = code % n;
                code /= n;
            }
            Transformation::new(images).unwrap()
        })
        .collect()
}

fn maps_y_onto_y(ctx: &Context, f: &Transformation) -> bool {
    let mut img: Vec<usize> = ctx.y().iter().map(|&y| f.apply(y)).collect();
    img.sort_unstable();
    img.dedup();
    img == ctx.y()
}

fn maps_y_into_y(ctx: &Context, f: &Transformation) -> bool {
    ctx.y().iter().all(|&y| ctx.y().contains(&f.apply(y)))
}

fn omega_brute(ctx: &Context) -> Vec<Transformation> {
    every_map(ctx.n())
        .into_iter()
        .filter(|f| maps_y_onto_y(ctx, f))
        .collect()
}

fn contexts(max_n: usize) -> Vec<Context> {
    (1..=max_n).flat_map(Context::all_for).collect()
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

fn within(limit: Duration, start: Instant) -> Verdict {
    if start.elapsed() <= limit {
        Ok(())
    } else {
        Err(format!("took {:?}, limit {limit:?}", start.elapsed()))
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Verdict {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    for ctx in contexts(4) {
        let (n, k) = (ctx.n(), ctx.y().len());
        let brute = omega_brute(&ctx).len();
        let listed = enumerate(&ctx, Family::OmegaBar)
            .map_err(|e| e.to_string())?
            .len();
        let formula = factorial(k) * n.pow((n - k) as u32);
        ensure(brute == listed && listed == formula, || {
            format!("{ctx}: enumerate={listed} brute={brute} formula={formula}")
        })?;
    }
    within(Duration::from_secs(5), start)
}

fn criterion_2() -> Verdict {
    let start = Instant::now();
    for ctx in contexts(4) {
        let omega = omega_brute(&ctx);
        for f in &omega {
            let oracle = omega.iter().any(|g| f.then(g).then(f) == *f);
            let sbar = ctx.classify(f).in_sbar;
            let predicate = is_regular(&ctx, f).map_err(|e| e.to_string())?;
            ensure(oracle == sbar && predicate == sbar, || {
                format!("{ctx} f={f}: oracle={oracle} sbar={sbar} predicate={predicate}")
            })?;
        }
    }
    within(Duration::from_secs(30), start)
}

fn criterion_3() -> Verdict {
    let start = Instant::now();
    for ctx in contexts(4) {
        let omega = omega_brute(&ctx);
        let id = Transformation::identity(ctx.n());
        let units: Vec<&Transformation> = omega
            .iter()
            .filter(|u| omega.iter().any(|v| u.then(v) == id && v.then(u) == id))
            .collect();
        for f in &omega {
            let oracle = units.iter().any(|u| f.then(u).then(f) == *f);
            let report = is_unit_regular(&ctx, f).map_err(|e| e.to_string())?;
            ensure(
                oracle && report.is_unit_regular && report.unit_regular_oracle,
                || format!("{ctx} f={f}: oracle={oracle} report={report:?}"),
            )?;
            let t = report.certifying_transversal.clone().unwrap_or_default();
            ensure(
                t.len() == f.rank() && ctx.y().iter().all(|y| t.contains(y)),
                || format!("{ctx} f={f}: bad transversal {t:?}"),
            )?;
        }
    }
    within(Duration::from_secs(60), start)
}

fn green_agreement(
    ctx: &Context,
    oracle: &GreenOracle,
    data: &[ElementData],
    i: usize,
    j: usize,
) -> Verdict {
    for rel in GreenRelation::ALL {
        let ch = data[i].related(rel, &data[j]).map_err(|e| e.to_string())?;
        let or = oracle.related_at(rel, i, j);
        ensure(ch == or, || {
            let el = oracle.elements();
            format!(
                "{ctx} {rel} f={} g={}: characterization={ch} oracle={or}",
                el[i], el[j]
            )
        })?;
    }
    Ok(())
}

fn element_data(ctx: &Context, oracle: &GreenOracle) -> Result<Vec<ElementData>, String> {
    oracle
        .elements()
        .iter()
        .map(|f| ElementData::new(ctx, f).map_err(|e| e.to_string()))
        .collect()
}

fn criterion_4() -> Verdict {
    let start = Instant::now();
    for ctx in contexts(4) {
        let oracle = GreenOracle::new(&ctx).map_err(|e| e.to_string())?;
        let data = element_data(&ctx, &oracle)?;
        for i in 0..data.len() {
            for j in 0..data.len() {
                green_agreement(&ctx, &oracle, &data, i, j)?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let sampled: Vec<Context> = Context::all_for(5)
        .into_iter()
        .filter(|c| c.y().len() <= 2)
        .collect();
    let per_context = 1000usize.div_ceil(sampled.len()) + 1;
    let mut pairs = 0;
    for ctx in &sampled {
        let oracle = GreenOracle::new(ctx).map_err(|e| e.to_string())?;
        let data = element_data(ctx, &oracle)?;
        for _ in 0..per_context {
            let (i, j) = (rng.gen_range(0..data.len()), rng.gen_range(0..data.len()));
            green_agreement(ctx, &oracle, &data, i, j)?;
            pairs += 1;
        }
    }
    ensure(pairs >= 1000, || {
        format!("only {pairs} pairs sampled at n = 5")
    })?;
    within(Duration::from_secs(600), start)
}

fn criterion_5() -> Verdict {
    for ctx in contexts(4) {
        let oracle = GreenOracle::new(&ctx).map_err(|e| e.to_string())?;
        let data = element_data(&ctx, &oracle)?;
        for i in 0..data.len() {
            for j in 0..data.len() {
                let d = data[i].d_related(&data[j]);
                let jr = data[i].j_related(&data[j]).map_err(|e| e.to_string())?;
                let od = oracle.related_at(GreenRelation::D, i, j);
                let oj = oracle.related_at(GreenRelation::J, i, j);
                ensure(d == jr && od == oj && d == od, || {
                    let el = oracle.elements();
                    format!(
                        "{ctx} f={} g={}: D={d} J={jr} oracle D={od} J={oj}",
                        el[i], el[j]
                    )
                })?;
            }
        }
    }
    Ok(())
}

fn witness_pair(
    ctx: &Context,
    omega: &[Transformation],
    f: &Transformation,
    g: &Transformation,
) -> Verdict {
    let err = |e: invsemi::Error| e.to_string();
    let inside = |h: &Transformation| omega.contains(h);
    match l_below_witness(ctx, f, g).map_err(err)? {
        Some(h) => ensure(inside(&h) && h.then(g) == *f, || {
            format!("{ctx} f={f} g={g}: bad left witness {h}")
        })?,
        None => ensure(!omega.iter().any(|h| h.then(g) == *f), || {
            format!("{ctx} f={f} g={g}: left witness missing")
        })?,
    }
    match r_below_witness(ctx, f, g).map_err(err)? {
        Some(h) => ensure(inside(&h) && g.then(&h) == *f, || {
            format!("{ctx} f={f} g={g}: bad right witness {h}")
        })?,
        None => ensure(!omega.iter().any(|h| g.then(h) == *f), || {
            format!("{ctx} f={f} g={g}: right witness missing")
        })?,
    }
    match j_below_witness(ctx, f, g).map_err(err)? {
        Some((h, k)) => ensure(inside(&h) && inside(&k) && h.then(g).then(&k) == *f, || {
            format!("{ctx} f={f} g={g}: bad two-sided witness {h} {k}")
        })?,
        None => ensure(
            !omega
                .iter()
                .any(|h| omega.iter().any(|k| h.then(g).then(k) == *f)),
            || format!("{ctx} f={f} g={g}: two-sided witness missing"),
        )?,
    }
    Ok(())
}

fn criterion_6() -> Verdict {
    for ctx in contexts(3) {
        let omega = omega_brute(&ctx);
        for f in &omega {
            for g in &omega {
                witness_pair(&ctx, &omega, f, g)?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for ctx in Context::all_for(4) {
        let omega = omega_brute(&ctx);
        for _ in 0..150 {
            let f = &omega[rng.gen_range(0..omega.len())];
            let g = &omega[rng.gen_range(0..omega.len())];
            witness_pair(&ctx, &omega, f, g)?;
        }
    }
    Ok(())
}

/// `{ hgk : h, k ∈ Ω̄ }` by raw products.
fn principal(omega: &[Transformation], g: &Transformation) -> Vec<Transformation> {
    let mut out: Vec<Transformation> = omega
        .iter()
        .flat_map(|h| omega.iter().map(move |k| h.then(g).then(k)))
        .collect();
    out.sort();
    out.dedup();
    out
}

fn closed(omega: &[Transformation], set: &[Transformation]) -> bool {
    !set.is_empty()
        && set.iter().all(|f| {
            omega
                .iter()
                .all(|h| set.contains(&h.then(f)) && set.contains(&f.then(h)))
        })
}

fn criterion_7() -> Verdict {
    let err = |e: invsemi::Error| e.to_string();
    for ctx in Context::all_for(3) {
        let omega = omega_brute(&ctx);
        for mask in 1u32..1 << omega.len() {
            let gens: Vec<Transformation> = (0..omega.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| omega[i].clone())
                .collect();
            let jf = j_of_f(&ctx, &gens).map_err(err)?;
            let lib_ideal = is_ideal(&ctx, &jf.members).map_err(err)?;
            ensure(lib_ideal && closed(&omega, &jf.members), || {
                format!("{ctx}: J(F) is not an ideal for F={gens:?}")
            })?;
        }
    }
    for ctx in contexts(4) {
        let omega = omega_brute(&ctx);
        // every ideal is a union of principal ideals
        let mut principals: Vec<Vec<Transformation>> =
            omega.iter().map(|g| principal(&omega, g)).collect();
        principals.sort();
        principals.dedup();
        let mut brute: Vec<Vec<Transformation>> = (1u32..1 << principals.len())
            .map(|mask| {
                let mut u: Vec<Transformation> = (0..principals.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .flat_map(|i| principals[i].iter().cloned())
                    .collect();
                u.sort();
                u.dedup();
                u
            })
            .collect();
        brute.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        brute.dedup();
        let lib: Vec<Vec<Transformation>> = ideals_all(&ctx)
            .map_err(err)?
            .into_iter()
            .map(|i| i.members)
            .collect();
        let expected = ctx.n() - ctx.y().len() + 1;
        ensure(lib == brute && lib.len() == expected, || {
            format!(
                "{ctx}: {} ideals, brute force {} , expected {expected}",
                lib.len(),
                brute.len()
            )
        })?;
        for ideal in &lib {
            let jf = j_of_f(&ctx, ideal).map_err(err)?;
            ensure(&jf.members == ideal, || {
                format!("{ctx}: J(F) != F for |F|={}", ideal.len())
            })?;
        }
    }
    Ok(())
}

fn criterion_8() -> Verdict {
    let err = |e: invsemi::Error| e.to_string();
    for ctx in contexts(4) {
        let k = kernel(&ctx).map_err(err)?.members;
        let closed_form: Vec<Transformation> = omega_brute(&ctx)
            .into_iter()
            .filter(|f| f.image() == ctx.y())
            .collect();
        let eb = eggbox(&ctx).map_err(err)?;
        let mut bottom: Vec<Transformation> = eb
            .d_classes
            .last()
            .map(|d| d.elements().cloned().collect())
            .unwrap_or_default();
        bottom.sort();
        ensure(k == closed_form && k == bottom, || {
            format!(
                "{ctx}: kernel={} closed form={} bottom D-class={}",
                k.len(),
                closed_form.len(),
                bottom.len()
            )
        })?;
    }
    Ok(())
}

fn criterion_9() -> Verdict {
    let p = |s: &str| s.parse::<FiberProfile>().unwrap();
    for (a, b) in [("[w 1 1]", "[w w 1]"), ("[w w]+rest1", "[w]+rest1")] {
        let (pa, pb) = (p(a), p(b));
        let d = d_condition(&pa, &pb).map_err(|e| e.to_string())?;
        let fw = j_condition(&pa, &pb).map_err(|e| e.to_string())?;
        let bw = j_condition(&pb, &pa).map_err(|e| e.to_string())?;
        let certified = fw.as_ref().is_some_and(|c| c.certifies(&pa, &pb))
            && bw.as_ref().is_some_and(|c| c.certifies(&pb, &pa));
        ensure(d.is_none() && certified, || {
            format!("{a} vs {b}: d={d:?} forward={fw:?} backward={bw:?}")
        })?;
    }
    Ok(())
}

fn criterion_10() -> Verdict {
    for ctx in contexts(4) {
        let tbar: Vec<Transformation> = every_map(ctx.n())
            .into_iter()
            .filter(|f| maps_y_into_y(&ctx, f))
            .collect();
        let restriction_is_identity = |f: &Transformation| ctx.y().iter().all(|&y| f.apply(y) == y);
        let restriction_is_bijective =
            |f: &Transformation| maps_y_onto_y(&ctx, f) && maps_y_into_y(&ctx, f);
        for f in tbar.iter().filter(|f| restriction_is_bijective(f)) {
            for g in tbar.iter().filter(|g| f.then(g).then(f) == *f) {
                ensure(restriction_is_bijective(g), || {
                    format!("{ctx} f={f}: pre-inverse {g} outside S̄")
                })?;
                if restriction_is_identity(f) {
                    ensure(restriction_is_identity(g), || {
                        format!("{ctx} f={f}: pre-inverse {g} outside Fix")
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn criterion_11() -> Verdict {
    let cfg = VerifyConfig {
        seed: 7,
        ..VerifyConfig::default()
    };
    let a = verify(&cfg).map_err(|e| e.to_string())?;
    let b = verify(&cfg).map_err(|e| e.to_string())?;
    ensure(a.passed && a.to_json() == b.to_json(), || {
        "library reports differ or fail".into()
    })?;

    let run = || {
        Command::new(env!("CARGO_BIN_EXE_invsemi"))
            .args(["verify", "--seed", "7"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (x, y) = (run()?, run()?);
    ensure(x.status.success() && y.status.success(), || {
        "verify exited nonzero".into()
    })?;
    ensure(!x.stdout.is_empty() && x.stdout == y.stdout, || {
        "CLI reports differ".into()
    })
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("counting |Ω̄| = |Y|!·n^(n-|Y|), n <= 4", criterion_1),
        ("regular elements of Ω̄ are exactly S̄, n <= 4", criterion_2),
        (
            "every element is unit-regular; transversal criterion agrees, n <= 4",
            criterion_3,
        ),
        (
            "L, R, H, D, J characterizations match the oracle (n <= 4, 1000+ pairs at n = 5)",
            criterion_4,
        ),
        ("D = J, n <= 4", criterion_5),
        (
            "divisibility witnesses are sound and complete (n <= 3, sampled n = 4)",
            criterion_6,
        ),
        (
            "J(F) is an ideal, ideals satisfy J(F) = F, ideal count n-|Y|+1",
            criterion_7,
        ),
        (
            "kernel = {f : Xf = Y} = bottom D-class, n <= 4",
            criterion_8,
        ),
        ("profile example: J both ways, not D", criterion_9),
        (
            "pre-inverses in T̄ of S̄ and Fix elements stay inside",
            criterion_10,
        ),
        (
            "verify --seed 7 is byte-identical across runs",
            criterion_11,
        ),
    ];
    let mut failed = Vec::new();
    let mut err = std::io::stderr();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = check();
        let elapsed = start.elapsed();
        match &verdict {
            Ok(()) => {
                let _ = writeln!(err, "criterion {:>2}: PASS  {name} ({elapsed:.2?})", i + 1);
            }
            Err(msg) => {
                let _ = writeln!(
                    err,
                    "criterion {:>2}: FAIL  {name} ({elapsed:.2?}): {msg}",
                    i + 1
                );
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
