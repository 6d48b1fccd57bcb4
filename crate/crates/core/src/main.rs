use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use invsemi::extnat::{d_condition, j_condition, n_value, profile_of};
use invsemi::ideals::{ideals_all, is_ideal, j_of_f, j_st, kernel, IdealSet};
use invsemi::regularity::is_unit_regular;
use invsemi::semigroup::{
    eggbox, enumerate, j_below_witness, l_below_witness, r_below_witness, related, ElementData,
    GreenOracle, GreenRelation, ORACLE_BUDGET,
};
use invsemi::verify::{verify, Mutant, VerifyConfig};
use invsemi::{Context, Error, ExtNat, Family, FiberProfile, Transformation};

#[derive(Parser)]
#[command(
    name = "invsemi",
    version,
    about = "Transformation semigroups with an invariant set Y"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Ctx {
    /// Size of X = {0..n-1}.
    #[arg(long)]
    n: usize,
    /// Invariant set Y as a comma list, e.g. 0,1.
    #[arg(long)]
    y: String,
}

impl Ctx {
    fn context(&self) -> Result<Context, Error> {
        Context::parse(self.n, &self.y)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum MutantArg {
    FlipCompose,
}

#[derive(Subcommand)]
enum Command {
    /// List every member of a family.
    Enum {
        #[command(flatten)]
        ctx: Ctx,
        #[arg(long, default_value = "omegabar")]
        family: Family,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Membership, fiber profile and regularity of one map.
    Classify {
        #[command(flatten)]
        ctx: Ctx,
        /// The map in bracket form, e.g. "[0 1 0]".
        f: Transformation,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Decide a Green's relation between two members of Ω̄(X,Y).
    Green {
        #[command(flatten)]
        ctx: Ctx,
        #[arg(long)]
        rel: GreenRelation,
        f: Transformation,
        g: Transformation,
        /// Print divisibility witnesses.
        #[arg(long)]
        witness: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Egg-box diagram of Ω̄(X,Y).
    Eggbox {
        #[command(flatten)]
        ctx: Ctx,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Ideals of Ω̄(X,Y): all of them, J(F) for given generators, or J(s,t).
    Ideals {
        #[command(flatten)]
        ctx: Ctx,
        /// Generators of J(F), separated by semicolons.
        #[arg(long, conflicts_with_all = ["s", "t"])]
        generators: Option<String>,
        /// Bound on n(f|Y) for J(s,t); `w` for ω.
        #[arg(long, requires = "t")]
        s: Option<ExtNat>,
        /// Bound on |Xf\Y| for J(s,t).
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// The least ideal of Ω̄(X,Y).
    Kernel {
        #[command(flatten)]
        ctx: Ctx,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Evaluate the D and J conditions on two fiber profiles such as "[w 1 1]".
    Profile {
        p: FiberProfile,
        q: FiberProfile,
        /// Also print the matching bijection.
        #[arg(long)]
        d: bool,
        /// Also print the indexed covers.
        #[arg(long)]
        j: bool,
        /// Ambient size for n(p) and n(q).
        #[arg(long)]
        ambient: Option<ExtNat>,
    },
    /// Run every verification suite and report per label.
    Verify {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        /// Skip the sampled pairs at n = 5.
        #[arg(long)]
        skip_n5: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, value_enum, hide = true)]
        mutant: Option<MutantArg>,
    },
}

enum Failure {
    Usage(String),
    Resource(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_resource() {
            Failure::Resource(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn bracket(elements: &[Transformation]) -> Vec<String> {
    elements.iter().map(ToString::to_string).collect()
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn lines(header: String, elements: &[Transformation]) -> String {
    let mut out = header;
    out.push('\n');
    for f in elements {
        out.push_str(&f.to_string());
        out.push('\n');
    }
    out
}

fn cmd_enum(ctx: &Context, family: Family, format: Format) -> Outcome {
    let s = enumerate(ctx, family)?;
    Ok(match format {
        Format::Json => pretty(&json!({
            "n": ctx.n(),
            "y": ctx.y(),
            "family": family.name(),
            "count": s.len(),
            "elements": bracket(s.elements()),
        })),
        _ => lines(format!("count={}", s.len()), s.elements()),
    })
}

fn cmd_classify(ctx: &Context, f: &Transformation, format: Format) -> Outcome {
    if f.n() != ctx.n() {
        return Err(Failure::Usage(format!(
            "{f} has length {}, expected {}",
            f.n(),
            ctx.n()
        )));
    }
    let flags = ctx.classify(f);
    let mut out = json!({
        "n": ctx.n(),
        "y": ctx.y(),
        "f": f.to_string(),
        "membership": flags,
        "is_unit": flags.is_unit_of_omegabar,
        "outside_y": ctx.image_outside_y(f),
    });
    if flags.in_omegabar {
        let report = is_unit_regular(ctx, f)?;
        let data = ElementData::new(ctx, f)?;
        let mut class_sizes = serde_json::Map::new();
        let members = enumerate(ctx, Family::OmegaBar)?.into_elements();
        for rel in GreenRelation::ALL {
            let mut count = 0;
            for g in &members {
                if data.related(rel, &ElementData::new(ctx, g)?)? {
                    count += 1;
                }
            }
            class_sizes.insert(rel.to_string(), json!(count));
        }
        out["profile"] = json!(profile_of(ctx, f)?.to_string());
        out["regular"] = json!(report.is_regular);
        out["unit_regular"] = json!(report.is_unit_regular);
        out["regularity"] = json!({
            "is_regular": report.is_regular,
            "regular_oracle": report.regular_oracle,
            "is_unit_regular": report.is_unit_regular,
            "unit_regular_oracle": report.unit_regular_oracle,
            "witness_pre_inverse": report.witness_pre_inverse.map(|g| g.to_string()),
            "witness_unit": report.witness_unit.map(|u| u.to_string()),
            "certifying_transversal": report.certifying_transversal,
        });
        out["green_class_sizes"] = Value::Object(class_sizes);
        out["reason"] = Value::Null;
    } else {
        for key in [
            "profile",
            "regular",
            "unit_regular",
            "regularity",
            "green_class_sizes",
        ] {
            out[key] = Value::Null;
        }
        out["reason"] = json!("f is not in Ω̄(X,Y): Yf ≠ Y");
    }
    Ok(match format {
        Format::Json => pretty(&out),
        _ => {
            let mut s = String::new();
            if let Value::Object(map) = &out {
                for (k, v) in map {
                    s.push_str(&format!("{k}={v}\n"));
                }
            }
            s
        }
    })
}

fn opt(f: Option<Transformation>) -> String {
    f.map_or_else(|| "none".to_string(), |h| h.to_string())
}

fn cmd_green(
    ctx: &Context,
    rel: GreenRelation,
    f: &Transformation,
    g: &Transformation,
    witness: bool,
    format: Format,
) -> Outcome {
    let characterization = related(ctx, rel, f, g)?;
    let oracle = if ctx.n() <= ORACLE_BUDGET {
        Some(GreenOracle::new(ctx)?.related(rel, f, g))
    } else {
        None
    };
    let mut witnesses: Vec<(String, String)> = Vec::new();
    if witness {
        let left = matches!(rel, GreenRelation::L | GreenRelation::H);
        let right = matches!(rel, GreenRelation::R | GreenRelation::H);
        if left {
            witnesses.push(("f=hg".into(), opt(l_below_witness(ctx, f, g)?)));
            witnesses.push(("g=hf".into(), opt(l_below_witness(ctx, g, f)?)));
        }
        if right {
            witnesses.push(("f=gh".into(), opt(r_below_witness(ctx, f, g)?)));
            witnesses.push(("g=fh".into(), opt(r_below_witness(ctx, g, f)?)));
        }
        if matches!(rel, GreenRelation::D | GreenRelation::J) {
            let pair = |p: Option<(Transformation, Transformation)>| {
                p.map_or_else(|| "none".to_string(), |(h, k)| format!("{h} {k}"))
            };
            witnesses.push(("f=hgh'".into(), pair(j_below_witness(ctx, f, g)?)));
            witnesses.push(("g=hfh'".into(), pair(j_below_witness(ctx, g, f)?)));
        }
    }
    Ok(match format {
        Format::Json => {
            let w: serde_json::Map<String, Value> =
                witnesses.into_iter().map(|(k, v)| (k, json!(v))).collect();
            pretty(&json!({
                "relation": rel.to_string(),
                "f": f.to_string(),
                "g": g.to_string(),
                "related": characterization,
                "characterization": characterization,
                "oracle": oracle,
                "witnesses": w,
            }))
        }
        _ => {
            let mut s = format!(
                "related={characterization}\ncharacterization={characterization}\noracle={}\n",
                oracle.map_or_else(|| "skipped".to_string(), |o| o.to_string())
            );
            for (k, v) in witnesses {
                s.push_str(&format!("witness {k}: {v}\n"));
            }
            s
        }
    })
}

fn ideal_json(set: &IdealSet, ideal: Option<bool>) -> Value {
    let mut v = json!({
        "size": set.len(),
        "t": set.t,
        "members": bracket(&set.members),
    });
    if let Some(hint) = &set.generator_hint {
        v["generators"] = json!(bracket(hint));
    }
    if let Some(w) = &set.warning {
        v["warning"] = json!(w);
    }
    if let Some(b) = ideal {
        v["is_ideal"] = json!(b);
    }
    v
}

fn ideal_text(set: &IdealSet, ideal: Option<bool>) -> String {
    let mut header = format!(
        "size={} t={}",
        set.len(),
        set.t.map_or_else(|| "none".to_string(), |t| t.to_string())
    );
    if let Some(b) = ideal {
        header.push_str(&format!(" is_ideal={b}"));
    }
    if let Some(w) = &set.warning {
        header.push_str(&format!("\nwarning: {w}"));
    }
    lines(header, &set.members)
}

fn cmd_ideals(
    ctx: &Context,
    generators: Option<&str>,
    s: Option<ExtNat>,
    t: Option<usize>,
    format: Format,
) -> Outcome {
    let render = |sets: Vec<(IdealSet, Option<bool>)>| match format {
        Format::Json => {
            let list: Vec<Value> = sets.iter().map(|(s, b)| ideal_json(s, *b)).collect();
            pretty(&json!({ "n": ctx.n(), "y": ctx.y(), "count": list.len(), "ideals": list }))
        }
        _ => {
            let mut out = format!("count={}\n", sets.len());
            for (set, b) in &sets {
                out.push_str(&ideal_text(set, *b));
            }
            out
        }
    };
    if let Some(spec) = generators {
        let gens = spec
            .split(';')
            .filter(|p| !p.trim().is_empty())
            .map(|p| p.trim().parse::<Transformation>())
            .collect::<Result<Vec<_>, _>>()?;
        let set = j_of_f(ctx, &gens)?;
        let ideal = is_ideal(ctx, &set.members)?;
        return Ok(render(vec![(set, Some(ideal))]));
    }
    if let Some(t) = t {
        let set = j_st(ctx, s.unwrap_or(ExtNat::Omega), t)?;
        let ideal = is_ideal(ctx, &set.members)?;
        return Ok(render(vec![(set, Some(ideal))]));
    }
    let all = ideals_all(ctx)?.into_iter().map(|s| (s, None)).collect();
    Ok(render(all))
}

fn cmd_kernel(ctx: &Context, format: Format) -> Outcome {
    let k = kernel(ctx)?;
    Ok(match format {
        Format::Json => {
            let mut v = ideal_json(&k, None);
            v["n"] = json!(ctx.n());
            v["y"] = json!(ctx.y());
            pretty(&v)
        }
        _ => lines(format!("count={}", k.len()), &k.members),
    })
}

fn cmd_profile(
    p: &FiberProfile,
    q: &FiberProfile,
    show_d: bool,
    show_j: bool,
    ambient: Option<ExtNat>,
) -> Outcome {
    let d = d_condition(p, q);
    let forward = j_condition(p, q)?;
    let backward = j_condition(q, p)?;
    let mut out = String::new();
    match &d {
        Ok(alpha) => out.push_str(&format!("d={}\n", alpha.is_some())),
        Err(e) => out.push_str(&format!("d=false ({e})\n")),
    }
    out.push_str(&format!("j.forward={}\n", forward.is_some()));
    out.push_str(&format!("j.backward={}\n", backward.is_some()));
    out.push_str(&format!("j={}\n", forward.is_some() && backward.is_some()));
    if show_d {
        if let Ok(Some(alpha)) = &d {
            out.push_str(&format!("d.bijection={alpha}\n"));
        }
    }
    if show_j {
        for (name, cover) in [("forward", &forward), ("backward", &backward)] {
            if let Some(c) = cover {
                out.push_str(&format!(
                    "j.{name}.cover={}\n",
                    serde_json::to_string(c).expect("json")
                ));
            }
        }
    }
    if let Some(a) = ambient {
        out.push_str(&format!("n(p)={}\nn(q)={}\n", n_value(p, a), n_value(q, a)));
    }
    Ok(out)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Enum {
            ctx,
            family,
            format,
        } => cmd_enum(&ctx.context()?, family, format),
        Command::Classify { ctx, f, format } => cmd_classify(&ctx.context()?, &f, format),
        Command::Green {
            ctx,
            rel,
            f,
            g,
            witness,
            format,
        } => cmd_green(&ctx.context()?, rel, &f, &g, witness, format),
        Command::Eggbox { ctx, format } => {
            let eb = eggbox(&ctx.context()?)?;
            Ok(match format {
                Format::Text => eb.to_text(),
                Format::Dot => eb.to_dot(),
                Format::Json => {
                    let classes: Vec<Value> = eb
                        .d_classes
                        .iter()
                        .map(|d| {
                            let rows: Vec<Vec<Value>> = d
                                .rows
                                .iter()
                                .map(|row| {
                                    row.iter()
                                        .map(|c| {
                                            json!({
                                                "elements": bracket(&c.elements),
                                                "idempotent": c.idempotent,
                                            })
                                        })
                                        .collect()
                                })
                                .collect();
                            json!({ "outside_y": d.outside_y, "size": d.size, "rows": rows })
                        })
                        .collect();
                    pretty(&json!({
                        "n": eb.n,
                        "y": eb.y,
                        "d_classes": classes,
                        "j_order": eb.j_order,
                    }))
                }
            })
        }
        Command::Ideals {
            ctx,
            generators,
            s,
            t,
            format,
        } => cmd_ideals(&ctx.context()?, generators.as_deref(), s, t, format),
        Command::Kernel { ctx, format } => cmd_kernel(&ctx.context()?, format),
        Command::Profile {
            p,
            q,
            d,
            j,
            ambient,
        } => cmd_profile(&p, &q, d, j, ambient),
        Command::Verify {
            max_n,
            seed,
            jobs,
            out,
            skip_n5,
            format,
            mutant,
        } => {
            let cfg = VerifyConfig {
                max_n,
                sample_n5: !skip_n5,
                seed,
                jobs,
                mutant: mutant.map(|MutantArg::FlipCompose| Mutant::FlipCompose),
            };
            let report = verify(&cfg)?;
            let json_text = report.to_json() + "\n";
            let shown = match format {
                Format::Json => json_text.clone(),
                _ => report.to_text(),
            };
            let stdout = match &out {
                Some(path) => {
                    fs::write(path, &json_text)?;
                    if format == Format::Json {
                        String::new()
                    } else {
                        shown
                    }
                }
                None => shown,
            };
            if report.resource_error.is_some() {
                print!("{stdout}");
                return Err(Failure::Resource(
                    report.resource_error.clone().unwrap_or_default(),
                ));
            }
            if !report.passed {
                print!("{stdout}");
                if let Some(s) = report.suites.iter().find(|s| !s.passed) {
                    eprintln!(
                        "{} failed: {}",
                        s.label,
                        s.counterexample.as_deref().unwrap_or("")
                    );
                }
                return Err(Failure::Verification);
            }
            Ok(stdout)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            let mut stdout = io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
