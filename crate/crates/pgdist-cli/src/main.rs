//! Command-line surface for the finite-geometry library: field inspection,
//! distribution queries, closed-form verification, table reproduction,
//! Kakeya computations, spectrum searches and the extremal constructions.
//!
//! Exit codes: 0 success, 1 usage or runtime error, 2 verification mismatch.
//! Data goes to stdout (or `--out`), diagnostics to stderr.

use std::io::Write;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use pgdist::extremal::{self, ExampleKind};
use pgdist::formulas::{self, PowerFamily};
use pgdist::gf::FieldCtx;
use pgdist::kakeya;
use pgdist::plane::Plane;
use pgdist::polyset::{self, FieldPoly};
use pgdist::tables;

#[derive(Parser)]
#[command(name = "pgdist", version, about = "Intersection distributions, non-hitting indices and Kakeya sets in PG(2,q)")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Emit CSV (mutually exclusive with --json).
    #[arg(long, global = true)]
    csv: bool,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,

    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads for the parallel sweeps (0 = rayon default).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args)]
struct OrderArgs {
    /// Field order q = p^s.
    #[arg(long)]
    q: Option<u64>,

    /// Characteristic (with --s).
    #[arg(long)]
    p: Option<u64>,

    /// Extension degree (with --p).
    #[arg(long)]
    s: Option<u32>,
}

impl OrderArgs {
    fn ctx(&self) -> Result<FieldCtx> {
        match (self.q, self.p, self.s) {
            (Some(q), None, None) => Ok(FieldCtx::from_order(q)?),
            (None, Some(p), Some(s)) => Ok(FieldCtx::new(p, s)?),
            _ => bail!("specify either --q or both --p and --s"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Show the arithmetic data of GF(q).
    Field {
        #[command(flatten)]
        order: OrderArgs,
    },
    /// Multiplicity rows and the intersection distribution of a polynomial.
    Dist {
        #[command(flatten)]
        order: OrderArgs,
        /// Coefficient element indices, constant term first, e.g. 0,0,0,1.
        #[arg(long, value_delimiter = ',')]
        poly: Vec<u64>,
        /// Single row at this c (element index).
        #[arg(long)]
        c: Option<u64>,
        /// All rows plus the aggregated distribution.
        #[arg(long)]
        all_c: bool,
    },
    /// Diff the closed-form families against brute force.
    Verify {
        /// Family tag: p-i, p-i+1, (q-1)/2, (q+1)/2, q-2, q-1, or `all`.
        #[arg(long)]
        family: String,
        /// Exponent parameter i for the p-i and p-i+1 families
        /// (omit to sweep every valid i).
        #[arg(long)]
        i: Option<u32>,
        /// Verify over one order only.
        #[arg(long)]
        q: Option<u64>,
        /// Verify over every prime power up to this bound.
        #[arg(long)]
        qmax: Option<u64>,
    },
    /// Render or check one of the four reference tables.
    Table {
        /// Which table: 1, 2, 3 or 4.
        which: u8,
        /// Restrict to one order (required for tables 1 and 3).
        #[arg(long)]
        q: Option<u64>,
        /// Restrict tables 1/3 to one exponent.
        #[arg(long)]
        d: Option<u64>,
        /// Check instead of render: tables 2/4 against their golden
        /// transcriptions, tables 1/3 against the brute-force oracle.
        #[arg(long)]
        check: bool,
        /// Override the golden file (tables 2 and 4).
        #[arg(long)]
        golden: Option<std::path::PathBuf>,
    },
    /// Kakeya set computations.
    #[command(subcommand)]
    Kakeya(KakeyaCommand),
    /// Attained non-hitting indices of (q+1)-sets.
    Spectrum {
        #[arg(long)]
        q: u64,
        /// Force the exhaustive sweep (default for q <= 5).
        #[arg(long)]
        exhaustive: bool,
        /// Force the partial search (constructions + monomials + sampling).
        #[arg(long)]
        partial: bool,
        /// Random samples in partial mode.
        #[arg(long, default_value_t = 2000)]
        samples: u64,
    },
    /// Build one of the extremal point-set configurations.
    Example {
        /// Kind tag; see `--help` of the crate README for the list.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        q: u64,
        /// Also print the intersection distribution.
        #[arg(long)]
        emit_distribution: bool,
    },
}

#[derive(Subcommand)]
enum KakeyaCommand {
    /// Sizes attainable by monomial dual Kakeya sets over GF(q).
    Census {
        #[arg(long)]
        q: u64,
    },
    /// Size of the Kakeya set of (f, c), with f a monomial or explicit.
    Size {
        #[arg(long)]
        q: u64,
        /// Monomial exponent.
        #[arg(long)]
        d: Option<u64>,
        /// Explicit coefficients, constant term first.
        #[arg(long, value_delimiter = ',')]
        poly: Option<Vec<u64>>,
        /// Element index of the extra direction c.
        #[arg(long)]
        c: u64,
    },
    /// Closed-form dual-Kakeya prediction for a family at one c.
    Predict {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        family: String,
        #[arg(long)]
        i: Option<u32>,
        #[arg(long)]
        c: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
        Err(e) => {
            // Help and version requests.
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    if cli.json && cli.csv {
        eprintln!("error: --json and --csv are mutually exclusive");
        return ExitCode::from(1);
    }
    if cli.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(Outcome { output, mismatch }) => {
            if let Err(e) = emit(&cli, &output) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if mismatch {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

struct Outcome {
    output: String,
    mismatch: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome {
            output,
            mismatch: false,
        }
    }
}

fn emit(cli: &Cli, output: &str) -> Result<()> {
    match &cli.out {
        Some(path) => {
            let mut file = std::fs::File::create(path)
                .with_context(|| format!("cannot create {}", path.display()))?;
            file.write_all(output.as_bytes())?;
        }
        None => print!("{output}"),
    }
    Ok(())
}

/// Plain rendering of a polynomial over GF(p) given low-first coefficients,
/// without any exponent folding.
fn render_prime_poly(coeffs: &[u64]) -> String {
    let mut parts = Vec::new();
    for (e, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        parts.push(match (e, c) {
            (0, _) => format!("{c}"),
            (1, 1) => "x".to_string(),
            (1, _) => format!("{c}*x"),
            (_, 1) => format!("x^{e}"),
            _ => format!("{c}*x^{e}"),
        });
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn parse_poly(ctx: &FieldCtx, indices: &[u64]) -> Result<FieldPoly> {
    if indices.is_empty() {
        bail!("--poly needs at least one coefficient");
    }
    Ok(FieldPoly::from_indices(ctx, indices)?)
}

/// Resolve a family tag over one field. With `strict` an inapplicable family
/// is an error; otherwise it is skipped (for sweeps over many orders).
fn families_for(ctx: &FieldCtx, tag: &str, i: Option<u32>, strict: bool) -> Result<Vec<PowerFamily>> {
    if tag.eq_ignore_ascii_case("all") {
        return Ok(PowerFamily::applicable_instances(ctx));
    }
    let parametrized = matches!(tag, "p-i" | "p^i" | "p-i+1" | "p^i+1");
    if parametrized && i.is_none() {
        // Sweep every valid exponent parameter.
        let instances = (0..ctx.s())
            .filter_map(|i| PowerFamily::from_tag(tag, Some(i)))
            .filter(|fam| fam.check_applicable(ctx).is_ok())
            .collect::<Vec<_>>();
        return Ok(instances);
    }
    let fam = PowerFamily::from_tag(tag, i)
        .ok_or_else(|| anyhow!("unknown family tag `{tag}` (try one of {:?})", PowerFamily::all_tags()))?;
    match fam.check_applicable(ctx) {
        Ok(()) => Ok(vec![fam]),
        Err(e) if strict => Err(e.into()),
        Err(_) => Ok(Vec::new()),
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Field { order } => {
            let ctx = order.ctx()?;
            if cli.json {
                let json = serde_json::json!({
                    "p": ctx.p(),
                    "s": ctx.s(),
                    "q": ctx.q(),
                    "modulus": ctx.modulus(),
                    "generator": ctx.generator().index(),
                });
                return Ok(Outcome::ok(format!("{json}\n")));
            }
            let modulus_str = render_prime_poly(ctx.modulus());
            Ok(Outcome::ok(format!(
                "GF({}) = GF({}^{})\nmodulus: {}\ngenerator: element {}\n",
                ctx.q(),
                ctx.p(),
                ctx.s(),
                modulus_str,
                ctx.generator().index(),
            )))
        }
        Command::Dist {
            order,
            poly,
            c,
            all_c,
        } => {
            let ctx = order.ctx()?;
            let f = parse_poly(&ctx, poly)?;
            if let Some(c_idx) = c {
                let c = ctx.elem(*c_idx)?;
                let row = polyset::multiplicity_row(&ctx, &f, c);
                if cli.json {
                    let json = serde_json::json!({
                        "q": ctx.q(),
                        "f": f.coeff_indices(),
                        "c": c_idx,
                        "M": row.dist.to_json(ctx.q())["counts"],
                    });
                    return Ok(Outcome::ok(format!("{json}\n")));
                }
                return Ok(Outcome::ok(format!(
                    "f = {}\nM(c={}) = {}\n",
                    f.render(&ctx),
                    c_idx,
                    row.dist.brief()
                )));
            }
            if !all_c {
                bail!("specify --c <idx> or --all-c");
            }
            let profile = polyset::profile(&ctx, &f);
            if cli.json {
                return Ok(Outcome::ok(format!("{}\n", profile.to_json(&ctx))));
            }
            let mut out = format!(
                "q = {}\nf = {}\nv_0 = {}\nv = {}\n",
                ctx.q(),
                f.render(&ctx),
                profile.v.get(0),
                profile.v.brief()
            );
            for row in &profile.rows {
                out.push_str(&format!("M(c={}) = {}\n", row.c.index(), row.dist.brief()));
            }
            let dirs: Vec<String> = profile.directions.iter().map(|c| c.index().to_string()).collect();
            out.push_str(&format!("N_f = [{}]\n", dirs.join(", ")));
            Ok(Outcome::ok(out))
        }
        Command::Verify { family, i, q, qmax } => {
            let orders: Vec<u64> = match (q, qmax) {
                (Some(q), None) => vec![*q],
                (None, Some(qmax)) => (2..=*qmax)
                    .filter(|&q| FieldCtx::from_order(q).is_ok())
                    .collect(),
                _ => bail!("specify exactly one of --q or --qmax"),
            };
            let strict = q.is_some();
            use rayon::prelude::*;
            let reports: Vec<formulas::VerificationReport> = orders
                .par_iter()
                .map(|&q| -> Result<Vec<formulas::VerificationReport>> {
                    let ctx = FieldCtx::from_order(q)?;
                    families_for(&ctx, family, *i, strict)?
                        .into_iter()
                        .map(|fam| Ok(formulas::verify_family(&ctx, fam)?))
                        .collect()
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect();
            let mut mismatch = false;
            let mut out = String::new();
            if cli.json {
                let arr: Vec<serde_json::Value> = reports.iter().map(|r| r.to_json()).collect();
                mismatch = reports.iter().any(|r| !r.ok());
                out = format!("{}\n", serde_json::Value::Array(arr));
            } else {
                for r in &reports {
                    if r.ok() {
                        out.push_str(&format!(
                            "{} over GF({}): OK ({} rows)\n",
                            r.family, r.q, r.rows_checked
                        ));
                    } else {
                        mismatch = true;
                        out.push_str(&format!(
                            "{} over GF({}): {} MISMATCHES\n",
                            r.family,
                            r.q,
                            r.mismatches.len()
                        ));
                        for m in &r.mismatches {
                            out.push_str(&format!(
                                "  {} (c = {:?}): predicted {}, actual {}\n",
                                m.context,
                                m.c,
                                m.predicted.brief(),
                                m.actual.brief()
                            ));
                        }
                    }
                }
            }
            Ok(Outcome { output: out, mismatch })
        }
        Command::Table {
            which,
            q,
            d,
            check,
            golden,
        } => run_table(cli, *which, *q, *d, *check, golden.as_deref()),
        Command::Kakeya(sub) => run_kakeya(cli, sub),
        Command::Spectrum {
            q,
            exhaustive,
            partial,
            samples,
        } => {
            if *exhaustive && *partial {
                bail!("--exhaustive and --partial are mutually exclusive");
            }
            let plane = Plane::from_order(*q)?;
            let use_exhaustive = *exhaustive || (!*partial && *q <= 5);
            let result = if use_exhaustive {
                extremal::spectrum_exhaustive(&plane, None)?
            } else {
                extremal::spectrum_partial(&plane, cli.seed, *samples)
            };
            if cli.json {
                return Ok(Outcome::ok(format!("{}\n", result.to_json())));
            }
            let mut out = format!(
                "Spec({}) {} {} ({})\n",
                q,
                if result.method == extremal::SpectrumMethod::Exhaustive {
                    "="
                } else {
                    "⊇"
                },
                result.render_set(),
                match result.method {
                    extremal::SpectrumMethod::Exhaustive => "exhaustive",
                    extremal::SpectrumMethod::Partial => "partial",
                }
            );
            if result.method == extremal::SpectrumMethod::Partial {
                for (v, how) in &result.evidence {
                    out.push_str(&format!("  u_0 = {v}: {how}\n"));
                }
            }
            Ok(Outcome::ok(out))
        }
        Command::Example {
            kind,
            q,
            emit_distribution,
        } => {
            let kind = ExampleKind::from_tag(kind).ok_or_else(|| {
                let tags: Vec<&str> = ExampleKind::all().iter().map(|k| k.tag()).collect();
                anyhow!("unknown kind `{kind}` (one of {tags:?})")
            })?;
            let plane = Plane::from_order(*q)?;
            let set = extremal::construct_example(&plane, kind)?;
            let dist = plane.intersection_distribution(&set);
            if cli.json {
                let points: Vec<[u64; 3]> =
                    set.points(&plane).map(|p| p.indices()).collect();
                let mut json = serde_json::json!({
                    "kind": kind.tag(),
                    "q": q,
                    "points": points,
                });
                if *emit_distribution {
                    json["distribution"] = dist.to_json(*q);
                }
                return Ok(Outcome::ok(format!("{json}\n")));
            }
            let mut out = format!("{} over GF({q}): {} points\n", kind.tag(), set.len());
            for p in set.points(&plane) {
                let [x, y, z] = p.indices();
                out.push_str(&format!("  ({x}, {y}, {z})\n"));
            }
            if *emit_distribution {
                out.push_str(&format!("u = {}\n", dist.brief()));
                out.push_str(&format!("u_0 = {}\n", dist.get(0)));
            }
            Ok(Outcome::ok(out))
        }
    }
}

fn run_table(
    cli: &Cli,
    which: u8,
    q: Option<u64>,
    d: Option<u64>,
    check: bool,
    golden: Option<&std::path::Path>,
) -> Result<Outcome> {
    let golden_text = |embedded: &'static str| -> Result<String> {
        match golden {
            Some(path) => Ok(std::fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?),
            None => Ok(embedded.to_string()),
        }
    };
    match which {
        1 | 3 => {
            let q = q.ok_or_else(|| anyhow!("tables 1 and 3 need --q"))?;
            if check {
                let problems = if which == 1 {
                    tables::check_table1(q)?
                } else {
                    tables::check_table3(q)?
                };
                return table_check_outcome(problems, &format!("table {which} at q = {q}"));
            }
            let text = if which == 1 {
                tables::render_table1(q, d)?
            } else {
                tables::render_table3(q, d)?
            };
            Ok(Outcome::ok(text))
        }
        2 => {
            let orders: Vec<u64> = match q {
                Some(q) => vec![q],
                None => tables::TABLE2_ORDERS.to_vec(),
            };
            if check {
                let text = golden_text(tables::GOLDEN_TABLE2)?;
                let problems = tables::check_table2_text(&text, &orders)?;
                return table_check_outcome(problems, "table 2");
            }
            if cli.json {
                let rows: Vec<serde_json::Value> = orders
                    .iter()
                    .map(|&q| -> Result<serde_json::Value> {
                        let entries: Vec<serde_json::Value> = tables::table2_row(q)?
                            .iter()
                            .map(|e| {
                                serde_json::json!({
                                    "exponents": e.exponents.iter().collect::<Vec<_>>(),
                                    "v0": e.v0,
                                    "star": e.star,
                                })
                            })
                            .collect();
                        Ok(serde_json::json!({ "q": q, "entries": entries }))
                    })
                    .collect::<Result<Vec<_>>>()?;
                return Ok(Outcome::ok(format!("{}\n", serde_json::Value::Array(rows))));
            }
            if cli.csv {
                let mut out = String::from("q,exponents,v0,star\n");
                for &q in &orders {
                    for e in tables::table2_row(q)? {
                        let ds: Vec<String> = e.exponents.iter().map(|d| d.to_string()).collect();
                        out.push_str(&format!("{q},{},{},{}\n", ds.join(" "), e.v0, e.star));
                    }
                }
                return Ok(Outcome::ok(out));
            }
            Ok(Outcome::ok(tables::render_table2(&orders)?))
        }
        4 => {
            let orders: Vec<u64> = match q {
                Some(q) => vec![q],
                None => tables::TABLE4_ORDERS.to_vec(),
            };
            if check {
                let text = golden_text(tables::GOLDEN_TABLE4)?;
                let problems = tables::check_table4_text(&text, &orders)?;
                return table_check_outcome(problems, "table 4");
            }
            if cli.json {
                let rows: Vec<serde_json::Value> = orders
                    .iter()
                    .map(|&q| -> Result<serde_json::Value> {
                        let ctx = FieldCtx::from_order(q)?;
                        Ok(kakeya::census_to_json(q, &kakeya::monomial_census(&ctx)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                return Ok(Outcome::ok(format!("{}\n", serde_json::Value::Array(rows))));
            }
            if cli.csv {
                let mut out = String::from("q,size,exponents\n");
                for &q in &orders {
                    let ctx = FieldCtx::from_order(q)?;
                    for (size, ds) in kakeya::monomial_census(&ctx)? {
                        let ds: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
                        out.push_str(&format!("{q},{size},{}\n", ds.join(" ")));
                    }
                }
                return Ok(Outcome::ok(out));
            }
            Ok(Outcome::ok(tables::render_table4(&orders)?))
        }
        other => bail!("no table {other}; pick 1, 2, 3 or 4"),
    }
}

fn table_check_outcome(problems: Vec<String>, what: &str) -> Result<Outcome> {
    if problems.is_empty() {
        Ok(Outcome::ok(format!("{what}: OK\n")))
    } else {
        for p in &problems {
            eprintln!("mismatch: {p}");
        }
        Ok(Outcome {
            output: format!("{what}: {} mismatches\n", problems.len()),
            mismatch: true,
        })
    }
}

fn run_kakeya(cli: &Cli, sub: &KakeyaCommand) -> Result<Outcome> {
    match sub {
        KakeyaCommand::Census { q } => {
            let ctx = FieldCtx::from_order(*q)?;
            let census = kakeya::monomial_census(&ctx)?;
            if cli.json {
                return Ok(Outcome::ok(format!("{}\n", kakeya::census_to_json(*q, &census))));
            }
            if cli.csv {
                let mut out = String::from("size,exponents\n");
                for (size, ds) in &census {
                    let ds: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
                    out.push_str(&format!("{size},{}\n", ds.join(" ")));
                }
                return Ok(Outcome::ok(out));
            }
            let parts: Vec<String> = census
                .iter()
                .map(|(size, ds)| {
                    let ds: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
                    format!("({size},{{{}}})", ds.join(","))
                })
                .collect();
            Ok(Outcome::ok(format!("q={q}: {}\n", parts.join(" "))))
        }
        KakeyaCommand::Size { q, d, poly, c } => {
            let ctx = FieldCtx::from_order(*q)?;
            let f = match (d, poly) {
                (Some(d), None) => FieldPoly::monomial(&ctx, *d),
                (None, Some(coeffs)) => parse_poly(&ctx, coeffs)?,
                _ => bail!("specify exactly one of --d or --poly"),
            };
            let c = ctx.elem(*c)?;
            let u = kakeya::transfer_distribution(&ctx, &f, c);
            let size = ctx.q() * ctx.q() - u.get(0);
            if cli.json {
                let json = serde_json::json!({
                    "q": q,
                    "f": f.coeff_indices(),
                    "c": c.index(),
                    "u": u.to_json(*q)["counts"],
                    "size": size,
                });
                return Ok(Outcome::ok(format!("{json}\n")));
            }
            Ok(Outcome::ok(format!(
                "f = {}, c = {}\nu(DK) = {}\n|K| = {size}\n",
                f.render(&ctx),
                c.index(),
                u.brief()
            )))
        }
        KakeyaCommand::Predict { q, family, i, c } => {
            let ctx = FieldCtx::from_order(*q)?;
            let fams = families_for(&ctx, family, *i, true)?;
            let c = ctx.elem(*c)?;
            let mut out = String::new();
            let mut jsons = Vec::new();
            for fam in fams {
                let pred = kakeya::predict_dk(&ctx, fam, c)?;
                if cli.json {
                    jsons.push(serde_json::json!({
                        "family": fam.to_string(),
                        "d": fam.exponent(&ctx)?,
                        "case": pred.case_label,
                        "u": pred.dist.to_json(*q)["counts"],
                        "size": pred.size,
                    }));
                } else {
                    out.push_str(&format!(
                        "{fam} (d = {}), {}: u = {}, |K| = {}\n",
                        fam.exponent(&ctx)?,
                        pred.case_label,
                        pred.dist.brief(),
                        pred.size
                    ));
                }
            }
            if cli.json {
                return Ok(Outcome::ok(format!("{}\n", serde_json::Value::Array(jsons))));
            }
            Ok(Outcome::ok(out))
        }
    }
}
