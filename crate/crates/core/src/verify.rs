//! Exhaustive and sampled verification of every characterization against its oracle.
//!
//! Each suite carries a stable label. Configurations `(n, Y)` are checked independently
//! and merged in configuration order, so a report depends only on the configuration and
//! the seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extnat::{d_condition, j_condition, n_value, profile_of, ExtNat, FiberProfile};
use crate::ideals::{ideals_all, is_ideal, j_of_f, kernel, kernel_closed_form};
use crate::partition::transversals;
use crate::regularity::{certifying_transversal, unit_from_transversal};
use crate::semigroup::{
    all_maps, eggbox, enumerate_within, j_below_witness, l_below_witness, permutations,
    r_below_witness, units, ElementData, GreenOracle, GreenRelation, Product, ORACLE_BUDGET,
};
use crate::transform::{Context, Family, Transformation};

pub const REPORT_SCHEMA: u32 = 1;

/// Every suite label, in report order.
pub const LABELS: &[&str] = &[
    "core.count",
    "core.assoc",
    "core.closure",
    "core.chain",
    "core.injective",
    "core.transversal",
    "ext.profile_all_ones",
    "ext.n_value",
    "ex.profile",
    "thm.reg_eq_sbar",
    "thm.ureg",
    "cor.ureg_char",
    "thm.ureg_eq",
    "lem.pre_inverse",
    "prop.fix_regular",
    "prop.fix_ureg",
    "thm.L_char",
    "thm.R_char",
    "thm.H_char",
    "thm.D_char",
    "thm.J_char",
    "thm.H_eq_LR",
    "thm.D_eq_J",
    "lem.restriction",
    "lem.witness",
    "eggbox.cells",
    "eggbox.group",
    "lem.JF_contains",
    "lem.JF_ideal",
    "lem.JF_closure",
    "lem.JF_eq_F",
    "thm.ideal_count",
    "thm.kernel",
    "thm.kernel_profile",
];

const N5_PAIRS_PER_CONTEXT: usize = 100;
const RANDOM_TRIPLES: usize = 10_000;
const SAMPLED_WITNESS_PAIRS: usize = 300;
const SAMPLED_GENERATOR_SETS: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutant {
    /// Multiply right to left inside the oracles.
    FlipCompose,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub max_n: usize,
    pub sample_n5: bool,
    pub seed: u64,
    /// Worker threads; `0` lets the pool decide.
    pub jobs: usize,
    pub mutant: Option<Mutant>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_n: 4,
            sample_n5: true,
            seed: 0,
            jobs: 0,
            mutant: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub label: String,
    pub passed: bool,
    pub checks: u64,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportConfig {
    pub max_n: usize,
    pub sample_n5: bool,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mutant: Option<Mutant>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub config: ReportConfig,
    pub passed: bool,
    pub configurations: usize,
    pub suites: Vec<SuiteResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resource_error: Option<String>,
}

impl VerifyReport {
    pub fn suite(&self, label: &str) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| s.label == label)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            let verdict = if s.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{verdict} {:<22} checks={}\n", s.label, s.checks));
            if let Some(c) = &s.counterexample {
                out.push_str(&format!("     counterexample: {c}\n"));
            }
        }
        if let Some(e) = &self.resource_error {
            out.push_str(&format!("resource error: {e}\n"));
        }
        out.push_str(if self.passed {
            "all suites passed\n"
        } else {
            "verification failed\n"
        });
        out
    }
}

#[derive(Clone, Default)]
struct Tally {
    checks: u64,
    counterexample: Option<String>,
}

struct Collector {
    tallies: Vec<Tally>,
}

impl Collector {
    fn new() -> Self {
        Collector {
            tallies: vec![Tally::default(); LABELS.len()],
        }
    }

    fn slot(label: &str) -> usize {
        LABELS
            .iter()
            .position(|l| *l == label)
            .unwrap_or_else(|| panic!("unknown suite label {label}"))
    }

    fn check(&mut self, label: &str, ok: bool, describe: impl FnOnce() -> String) {
        let tally = &mut self.tallies[Self::slot(label)];
        tally.checks += 1;
        if !ok && tally.counterexample.is_none() {
            tally.counterexample = Some(describe());
        }
    }

    fn merge(&mut self, other: Collector) {
        for (mine, theirs) in self.tallies.iter_mut().zip(other.tallies) {
            mine.checks += theirs.checks;
            if mine.counterexample.is_none() {
                mine.counterexample = theirs.counterexample;
            }
        }
    }
}

fn left_to_right(f: &Transformation, g: &Transformation) -> Transformation {
    f.then(g)
}

fn right_to_left(f: &Transformation, g: &Transformation) -> Transformation {
    g.then(f)
}

enum Shard {
    Global,
    Exhaustive(Context),
    SampledN5(Context, usize),
}

fn shard_rng(seed: u64, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

pub fn verify(cfg: &VerifyConfig) -> Result<VerifyReport> {
    if cfg.max_n == 0 {
        return Err(Error::InvalidContext("max_n must be at least 1".into()));
    }
    // past the oracle budget only the default range is covered
    let top = if cfg.max_n > ORACLE_BUDGET {
        4
    } else {
        cfg.max_n
    };
    let resource_error = (cfg.max_n > ORACLE_BUDGET).then(|| {
        Error::BudgetExceeded {
            n: cfg.max_n,
            budget: ORACLE_BUDGET,
        }
        .to_string()
    });

    let mut shards = vec![Shard::Global];
    for n in 1..=top {
        shards.extend(Context::all_for(n).into_iter().map(Shard::Exhaustive));
    }
    if cfg.sample_n5 && top == 4 {
        shards.extend(
            Context::all_for(5)
                .into_iter()
                .filter(|c| c.y().len() <= 2)
                .map(|c| Shard::SampledN5(c, N5_PAIRS_PER_CONTEXT)),
        );
    }
    let configurations = shards.len() - 1;

    let product: Product = match cfg.mutant {
        None => left_to_right,
        Some(Mutant::FlipCompose) => right_to_left,
    };
    let run = || -> Result<Vec<Collector>> {
        shards
            .par_iter()
            .enumerate()
            .map(|(i, shard)| {
                let mut rng = shard_rng(cfg.seed, i);
                let mut col = Collector::new();
                match shard {
                    Shard::Global => global_checks(&mut col, &mut rng),
                    Shard::Exhaustive(ctx) => config_checks(&mut col, ctx, product, &mut rng)?,
                    Shard::SampledN5(ctx, pairs) => {
                        sampled_green_checks(&mut col, ctx, product, *pairs, &mut rng)?
                    }
                }
                Ok(col)
            })
            .collect()
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::InvalidContext(format!("worker pool: {e}")))?;
    let collectors = pool.install(run)?;

    let mut total = Collector::new();
    for c in collectors {
        total.merge(c);
    }
    let suites: Vec<SuiteResult> = LABELS
        .iter()
        .zip(total.tallies)
        .map(|(label, t)| SuiteResult {
            label: label.to_string(),
            passed: t.counterexample.is_none(),
            checks: t.checks,
            counterexample: t.counterexample,
        })
        .collect();
    let passed = resource_error.is_none() && suites.iter().all(|s| s.passed);
    Ok(VerifyReport {
        schema: REPORT_SCHEMA,
        config: ReportConfig {
            max_n: cfg.max_n,
            sample_n5: cfg.sample_n5,
            seed: cfg.seed,
            mutant: cfg.mutant,
        },
        passed,
        configurations,
        suites,
        resource_error,
    })
}

fn random_map(rng: &mut ChaCha8Rng, n: usize) -> Transformation {
    Transformation::new((0..n).map(|_| rng.gen_range(0..n)).collect()).expect("in range")
}

fn global_checks(col: &mut Collector, rng: &mut ChaCha8Rng) {
    for _ in 0..RANDOM_TRIPLES {
        let n = rng.gen_range(1..=6);
        let (f, g, h) = (random_map(rng, n), random_map(rng, n), random_map(rng, n));
        col.check(
            "core.assoc",
            f.then(&g).then(&h) == f.then(&g.then(&h)),
            || format!("f={f} g={g} h={h}"),
        );
    }

    let p = |s: &str| s.parse::<FiberProfile>().expect("profile literal");
    for (a, b) in [("[w 1 1]", "[w w 1]"), ("[w]+rest1", "[w w]+rest1")] {
        let (pa, pb) = (p(a), p(b));
        let d = d_condition(&pa, &pb).ok().flatten().is_some();
        let j_fw = j_condition(&pa, &pb).ok().flatten().is_some();
        let j_bw = j_condition(&pb, &pa).ok().flatten().is_some();
        col.check("ex.profile", !d && j_fw && j_bw, || {
            format!("p={a} q={b} d={d} j.forward={j_fw} j.backward={j_bw}")
        });
    }

    // n(αβ) ≤ min(n(α), n(β)) for surjections of a finite set onto itself
    for size in 1..=4usize {
        let ambient = ExtNat::from(size);
        let perms: Vec<Transformation> = permutations(&(0..size).collect::<Vec<_>>())
            .into_iter()
            .map(|p| Transformation::new(p).expect("permutation"))
            .collect();
        let ctx = Context::new(size, 0..size).expect("Y = X");
        for a in &perms {
            for b in &perms {
                let nv = |f: &Transformation| {
                    n_value(&profile_of(&ctx, f).expect("permutation"), ambient)
                };
                let ab = a.then(b);
                let bound = nv(a).min(nv(b));
                col.check("ext.n_value", nv(&ab) <= bound && nv(&ab) == bound, || {
                    format!("a={a} b={b}")
                });
            }
        }
    }

    let zero = FiberProfile::new(vec![ExtNat::Omega; 3], false).expect("profile");
    col.check(
        "thm.kernel_profile",
        n_value(&zero, ExtNat::Omega) == ExtNat::ZERO,
        || format!("n({zero}) != 0"),
    );
    for q in [
        "[1]",
        "[1 1 1]",
        "[w 1 1]",
        "[w w 1]",
        "[w w w]",
        "[2 5]",
        "[1]+rest1",
        "[w]+rest1",
    ] {
        let ok = j_condition(&zero, &p(q)).ok().flatten().is_some();
        col.check("thm.kernel_profile", ok, || {
            format!("{zero} does not dominate {q}")
        });
    }
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

fn pair_label(ctx: &Context, f: &Transformation, g: &Transformation) -> String {
    format!("{ctx} f={f} g={g}")
}

fn config_checks(
    col: &mut Collector,
    ctx: &Context,
    product: Product,
    rng: &mut ChaCha8Rng,
) -> Result<()> {
    let n = ctx.n();
    let y_len = ctx.y().len();
    let budget = ORACLE_BUDGET;
    let enumerate = |family| enumerate_within(ctx, family, budget);
    let omega = enumerate(Family::OmegaBar)?;
    let el = omega.elements();

    // core
    let brute = all_maps(n)
        .filter(|f| {
            let mut img: Vec<usize> = ctx.y().iter().map(|&y| f.apply(y)).collect();
            img.sort_unstable();
            img.dedup();
            img == ctx.y()
        })
        .count();
    let formula = factorial(y_len) * n.pow((n - y_len) as u32);
    col.check("core.count", el.len() == brute && brute == formula, || {
        format!(
            "{ctx} enumerated={} brute={brute} formula={formula}",
            el.len()
        )
    });

    if n <= 3 {
        for f in el {
            for g in el {
                for h in el {
                    let ok = product(&product(f, g), h) == product(f, &product(g, h));
                    col.check("core.assoc", ok, || format!("{ctx} f={f} g={g} h={h}"));
                }
            }
        }
    }

    for family in Family::ALL {
        let s = enumerate(family)?;
        for f in s.elements() {
            for g in s.elements() {
                col.check("core.closure", s.contains(&product(f, g)), || {
                    format!("{ctx} family={family} f={f} g={g}")
                });
            }
        }
    }

    for f in all_maps(n) {
        let m = ctx.classify(&f);
        let chain = (!m.in_fix || m.in_sbar)
            && (!m.in_sbar || m.in_omegabar)
            && (!m.in_omegabar || m.in_tbar)
            && (!m.is_unit_of_omegabar || (m.in_sbar && f.is_bijective()));
        col.check("core.chain", chain, || format!("{ctx} f={f} flags={m:?}"));
        if y_len == 1 {
            // properties of f alone, checked once per n
            col.check(
                "core.injective",
                f.is_injective() == f.is_surjective(),
                || format!("f={f}"),
            );
            let rank = f.rank();
            let all_full = transversals(&f, &[]).all(|t| t.len() == rank);
            let covers_x = transversals(&f, &[]).all(|t| t.len() == n);
            col.check(
                "core.transversal",
                all_full && (covers_x == f.is_injective()),
                || format!("f={f}"),
            );
        }
    }

    // profiles
    let data: Vec<ElementData> = el
        .iter()
        .map(|f| ElementData::new(ctx, f))
        .collect::<Result<_>>()?;
    for (f, d) in el.iter().zip(&data) {
        col.check(
            "ext.profile_all_ones",
            d.profile == FiberProfile::all_ones(y_len),
            || format!("{ctx} f={f} profile={}", d.profile),
        );
    }

    // regularity
    let sbar = enumerate(Family::SBar)?;
    let tbar = enumerate(Family::TBar)?;
    let fix = enumerate(Family::Fix)?;
    let unit_group = units(ctx);
    let is_pre = |f: &Transformation, g: &Transformation| product(&product(f, g), f) == *f;
    let oracle_regular: Vec<Transformation> = el
        .iter()
        .filter(|f| el.iter().any(|g| is_pre(f, g)))
        .cloned()
        .collect();
    col.check(
        "thm.reg_eq_sbar",
        oracle_regular == sbar.elements() && sbar.elements() == el,
        || format!("{ctx} regular={} sbar={}", oracle_regular.len(), sbar.len()),
    );

    let invertible_in = |s: &[Transformation]| -> Vec<Transformation> {
        let id = Transformation::identity(n);
        s.iter()
            .filter(|u| s.iter().any(|v| product(u, v) == id && product(v, u) == id))
            .cloned()
            .collect()
    };
    let sbar_units = invertible_in(sbar.elements());
    let ureg_in = |s: &[Transformation], group: &[Transformation]| -> Vec<Transformation> {
        s.iter()
            .filter(|f| group.iter().any(|u| is_pre(f, u)))
            .cloned()
            .collect()
    };
    let ureg_omega = ureg_in(el, &unit_group);
    let ureg_sbar = ureg_in(sbar.elements(), &sbar_units);
    col.check(
        "thm.ureg_eq",
        ureg_omega == ureg_sbar && sbar.elements() == el,
        || {
            format!(
                "{ctx} ureg(Ω̄)={} ureg(S̄)={}",
                ureg_omega.len(),
                ureg_sbar.len()
            )
        },
    );
    for f in el {
        let oracle = unit_group.iter().any(|u| is_pre(f, u));
        col.check("thm.ureg", oracle, || {
            format!("{ctx} f={f} has no unit pre-inverse")
        });
        let cert = certifying_transversal(ctx, f)?;
        let agrees = cert.is_some() == oracle
            && cert.as_ref().is_none_or(|t| {
                unit_from_transversal(f, t)
                    .is_some_and(|u| unit_group.contains(&u) && is_pre(f, &u))
            });
        col.check("cor.ureg_char", agrees, || {
            format!("{ctx} f={f} transversal={cert:?} oracle={oracle}")
        });
    }
    for f in sbar.elements() {
        let escaped = tbar
            .elements()
            .iter()
            .find(|g| is_pre(f, g) && !sbar.contains(g));
        col.check("lem.pre_inverse", escaped.is_none(), || {
            format!("{ctx} f={f} pre-inverse {} outside S̄", escaped.unwrap())
        });
    }
    let fix_units = invertible_in(fix.elements());
    for f in fix.elements() {
        let escaped = tbar
            .elements()
            .iter()
            .find(|g| is_pre(f, g) && !fix.contains(g));
        col.check("lem.pre_inverse", escaped.is_none(), || {
            format!("{ctx} f={f} pre-inverse {} outside Fix", escaped.unwrap())
        });
        col.check(
            "prop.fix_regular",
            fix.elements().iter().any(|g| is_pre(f, g)),
            || format!("{ctx} f={f}"),
        );
        col.check(
            "prop.fix_ureg",
            fix_units.iter().any(|u| is_pre(f, u)),
            || format!("{ctx} f={f}"),
        );
    }

    // Green's relations
    let oracle = GreenOracle::with_product(ctx, product)?;
    let len = el.len();
    for i in 0..len {
        for j in 0..len {
            green_pair_checks(col, ctx, &oracle, &data, i, j)?;
        }
    }

    // restriction to Y lands in S(Y), where L, R and D are universal
    let y_ctx = Context::new(y_len, 0..y_len)?;
    let y_group: Vec<Transformation> = units(&y_ctx);
    let exists_left =
        |a: &Transformation, b: &Transformation| y_group.iter().any(|h| h.then(b) == *a);
    let exists_right =
        |a: &Transformation, b: &Transformation| y_group.iter().any(|h| b.then(h) == *a);
    for i in 0..len {
        for j in 0..len {
            let (f, g) = (&el[i], &el[j]);
            let (rf, rg) = (ctx.restrict_to_y(f)?, ctx.restrict_to_y(g)?);
            let l_y = exists_left(&rf, &rg) && exists_left(&rg, &rf);
            let r_y = exists_right(&rf, &rg) && exists_right(&rg, &rf);
            let d_y = y_group.iter().any(|k| {
                exists_left(&rf, k)
                    && exists_left(k, &rf)
                    && exists_right(k, &rg)
                    && exists_right(&rg, k)
            });
            let ok = (!oracle.related_at(GreenRelation::L, i, j) || l_y)
                && (!oracle.related_at(GreenRelation::R, i, j) || r_y)
                && (!oracle.related_at(GreenRelation::D, i, j) || d_y);
            col.check("lem.restriction", ok, || pair_label(ctx, f, g));
        }
    }

    // witnesses
    let witness_pairs: Vec<(usize, usize)> = if n <= 3 {
        (0..len)
            .flat_map(|i| (0..len).map(move |j| (i, j)))
            .collect()
    } else {
        (0..SAMPLED_WITNESS_PAIRS)
            .map(|_| (rng.gen_range(0..len), rng.gen_range(0..len)))
            .collect()
    };
    for (i, j) in witness_pairs {
        let (f, g) = (&el[i], &el[j]);
        let left = l_below_witness(ctx, f, g)?;
        let right = r_below_witness(ctx, f, g)?;
        let two = j_below_witness(ctx, f, g)?;
        let left_ok = match &left {
            Some(h) => omega.contains(h) && product(h, g) == *f,
            None => !oracle.left_divisible_at(i, j),
        };
        let right_ok = match &right {
            Some(h) => omega.contains(h) && product(g, h) == *f,
            None => !oracle.right_divisible_at(i, j),
        };
        let two_ok = match &two {
            Some((h, k)) => {
                omega.contains(h) && omega.contains(k) && product(&product(h, g), k) == *f
            }
            None => !oracle.two_sided_divisible_at(i, j),
        };
        col.check("lem.witness", left_ok && right_ok && two_ok, || {
            format!(
                "{} left={left:?} right={right:?} two_sided={two:?}",
                pair_label(ctx, f, g)
            )
        });
    }

    // egg-box
    let eb = eggbox(ctx)?;
    let mut cell_of = vec![None; len];
    for (d, class) in eb.d_classes.iter().enumerate() {
        for (r, row) in class.rows.iter().enumerate() {
            for (c, cell) in row.iter().enumerate() {
                for f in &cell.elements {
                    if let Some(i) = omega.index_of(f) {
                        cell_of[i] = Some((d, r, c));
                    }
                }
                if cell.idempotent {
                    let closed = cell.elements.iter().all(|a| {
                        cell.elements
                            .iter()
                            .all(|b| cell.elements.contains(&product(a, b)))
                    });
                    col.check("eggbox.group", closed, || format!("{ctx} cell {d}/{r}/{c}"));
                }
            }
        }
    }
    for i in 0..len {
        for j in 0..len {
            let ok = match (cell_of[i], cell_of[j]) {
                (Some(a), Some(b)) => {
                    oracle.related_at(GreenRelation::D, i, j) == (a.0 == b.0)
                        && oracle.related_at(GreenRelation::R, i, j) == (a.0 == b.0 && a.1 == b.1)
                        && oracle.related_at(GreenRelation::L, i, j) == (a.0 == b.0 && a.2 == b.2)
                }
                _ => false,
            };
            col.check("eggbox.cells", ok, || pair_label(ctx, &el[i], &el[j]));
        }
    }

    // ideals
    let generator_sets: Vec<Vec<usize>> = if len <= 12 {
        (1u32..1 << len)
            .map(|mask| (0..len).filter(|&i| mask >> i & 1 == 1).collect())
            .collect()
    } else {
        (0..SAMPLED_GENERATOR_SETS)
            .map(|_| {
                let k = rng.gen_range(1..=3.min(len));
                let mut idx: Vec<usize> = (0..len).collect();
                idx.shuffle(rng);
                idx.truncate(k);
                idx.sort_unstable();
                idx
            })
            .collect()
    };
    for gens in generator_sets {
        let generators: Vec<Transformation> = gens.iter().map(|&i| el[i].clone()).collect();
        let jf = j_of_f(ctx, &generators)?;
        let describe = || {
            let g: Vec<String> = generators.iter().map(ToString::to_string).collect();
            format!("{ctx} F={{{}}}", g.join(","))
        };
        col.check(
            "lem.JF_contains",
            generators.iter().all(|g| jf.contains(g)),
            describe,
        );
        col.check("lem.JF_ideal", is_ideal(ctx, &jf.members)?, describe);
        let mut closure = vec![false; len];
        for &g in &gens {
            for i in oracle.principal_ideal(g) {
                closure[i] = true;
            }
        }
        let closure: Vec<Transformation> = (0..len)
            .filter(|&i| closure[i])
            .map(|i| el[i].clone())
            .collect();
        col.check("lem.JF_closure", jf.members == closure, describe);
    }

    let all = ideals_all(ctx)?;
    col.check("thm.ideal_count", all.len() == n - y_len + 1, || {
        format!("{ctx} found {} ideals", all.len())
    });
    for (t, ideal) in all.iter().enumerate() {
        let chain: Vec<Transformation> = el
            .iter()
            .filter(|f| ctx.image_outside_y(f) <= t)
            .cloned()
            .collect();
        col.check("thm.ideal_count", ideal.members == chain, || {
            format!("{ctx} ideal {t} is not {{f : |Xf\\Y| <= {t}}}")
        });
        let jf = j_of_f(ctx, &ideal.members)?;
        col.check("lem.JF_eq_F", jf.members == ideal.members, || {
            format!("{ctx} ideal of size {}", ideal.len())
        });
    }

    let k = kernel(ctx)?;
    let closed_form = kernel_closed_form(ctx)?;
    let bottom: Vec<Transformation> = {
        let mut v: Vec<Transformation> = eb
            .d_classes
            .last()
            .map(|d| d.elements().cloned().collect())
            .unwrap_or_default();
        v.sort();
        v
    };
    let single_j = k.members.iter().all(|f| {
        k.members
            .iter()
            .all(|g| oracle.related(GreenRelation::J, f, g))
    });
    col.check(
        "thm.kernel",
        k.members == closed_form
            && k.members == bottom
            && single_j
            && all.iter().all(|i| k.is_subset(i)),
        || format!("{ctx} kernel={} closed_form={}", k.len(), closed_form.len()),
    );
    Ok(())
}

fn green_pair_checks(
    col: &mut Collector,
    ctx: &Context,
    oracle: &GreenOracle,
    data: &[ElementData],
    i: usize,
    j: usize,
) -> Result<()> {
    let el = oracle.elements();
    let labels = [
        (GreenRelation::L, "thm.L_char"),
        (GreenRelation::R, "thm.R_char"),
        (GreenRelation::H, "thm.H_char"),
        (GreenRelation::D, "thm.D_char"),
        (GreenRelation::J, "thm.J_char"),
    ];
    for (rel, label) in labels {
        let ch = data[i].related(rel, &data[j])?;
        let or = oracle.related_at(rel, i, j);
        col.check(label, ch == or, || {
            format!(
                "{} relation={rel} characterization={ch} oracle={or}",
                pair_label(ctx, &el[i], &el[j])
            )
        });
    }
    let h_ok =
        data[i].h_related(&data[j]) == (data[i].l_related(&data[j]) && data[i].r_related(&data[j]));
    col.check("thm.H_eq_LR", h_ok, || pair_label(ctx, &el[i], &el[j]));
    let d_eq_j = data[i].d_related(&data[j]) == data[i].j_related(&data[j])?
        && oracle.related_at(GreenRelation::D, i, j) == oracle.related_at(GreenRelation::J, i, j);
    col.check("thm.D_eq_J", d_eq_j, || pair_label(ctx, &el[i], &el[j]));
    Ok(())
}

fn sampled_green_checks(
    col: &mut Collector,
    ctx: &Context,
    product: Product,
    pairs: usize,
    rng: &mut ChaCha8Rng,
) -> Result<()> {
    let oracle = GreenOracle::with_product(ctx, product)?;
    let data: Vec<ElementData> = oracle
        .elements()
        .iter()
        .map(|f| ElementData::new(ctx, f))
        .collect::<Result<_>>()?;
    for _ in 0..pairs {
        let (i, j) = (rng.gen_range(0..data.len()), rng.gen_range(0..data.len()));
        green_pair_checks(col, ctx, &oracle, &data, i, j)?;
    }
    Ok(())
}
