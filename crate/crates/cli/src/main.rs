use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use gal_cli::{emit_hits, emit_report, emit_sidecar, search_grid, Axis, Certify, OutputFormat, SearchSpec};
use gal_core::families::{d5_resolvent, family_poly, s3_resolvent};
use gal_core::intersect::{classify_intersection_with, galois_group, isomorphic};
use gal_core::numres::{derive_rho_map, numeric_resolvent_exact, rho_image, NumKind};
use gal_core::qpoly::parse_rat;
use gal_core::zfactor::{factor_over_q, set_seed};
use gal_core::{Certification, ClassifyOptions, FamilyId, ParamPoint, QPoly, ResolventKind, RhoCache};

#[derive(Parser)]
#[command(name = "gal", version, about = "Splitting-field isomorphism and intersection for generic polynomials over Q")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value = "text")]
    output: OutputFormat,
    /// Working precision of the numeric engine, in decimal digits.
    #[arg(long, global = true, default_value_t = gal_core::numres::DEFAULT_DIGITS)]
    digits: u32,
    /// Seed for randomized factorization steps; results do not depend on it.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Family {
    #[arg(long, value_parser = parse_family)]
    family: FamilyId,
}

#[derive(Args)]
struct Pair {
    #[command(flatten)]
    family: Family,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
    a: ParamPoint,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
    b: ParamPoint,
    /// ρ-map cache; defaults to $GAL_RHO_CACHE.
    #[arg(long)]
    rho_cache: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Galois group of a specialization.
    Group {
        #[command(flatten)]
        family: Family,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
        params: ParamPoint,
    },
    /// The specialized polynomial.
    Poly {
        #[command(flatten)]
        family: Family,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
        params: ParamPoint,
    },
    /// Multi-resolvent of a pair, with its factorization.
    Resolvent {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 1)]
        kind: u8,
    },
    /// Isomorphism test; exit code 0 when isomorphic, 3 when not.
    Isom {
        #[command(flatten)]
        pair: Pair,
    },
    /// Classify the intersection of two splitting fields.
    Intersect {
        #[command(flatten)]
        pair: Pair,
    },
    /// Grid search for pairs with equal splitting fields.
    Search(SearchArgs),
    /// Compare numeric resolvents against the closed forms.
    Verify {
        #[command(flatten)]
        pair: Pair,
    },
    /// Interpolate the ρ map and write it as a cache file.
    DeriveRho {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 6)]
        degree_cap: usize,
        #[arg(long, default_value_t = 400)]
        samples: usize,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    family: Family,
    /// Fixed left side; omit together with --pairwise.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
    target: Option<ParamPoint>,
    /// `name=value`, fixing one coordinate.
    #[arg(long, allow_hyphen_values = true)]
    fix: Vec<String>,
    /// `lo..hi` for every free coordinate, or `name=lo..hi` for one.
    #[arg(long, allow_hyphen_values = true, required = true)]
    range: Vec<String>,
    #[arg(long)]
    pairwise: bool,
    #[arg(long, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    #[arg(long, default_value_t = 0)]
    threads: usize,
    #[arg(long, default_value = "auto", value_parser = |s: &str| s.parse::<Certify>().map_err(|e| e.to_string()))]
    certify: Certify,
    /// Quintic families: which resolvents to scan (1, 2 or both).
    #[arg(long, default_value = "both")]
    resolvent: String,
    #[arg(long)]
    rho_cache: Option<PathBuf>,
    /// Where to write stats and skipped pairs as JSON.
    #[arg(long)]
    errors: Option<PathBuf>,
}

fn parse_family(s: &str) -> Result<FamilyId, String> {
    s.parse().map_err(|e: gal_core::Error| e.to_string())
}

fn parse_point(s: &str) -> Result<ParamPoint, String> {
    ParamPoint::parse(s).map_err(|e| e.to_string())
}

fn axis_names(fam: FamilyId) -> &'static [&'static str] {
    match fam {
        FamilyId::C3 => &["m"],
        FamilyId::S3 => &["a"],
        FamilyId::Lehmer => &["n"],
        FamilyId::D4 | FamilyId::D5 => &["s", "t"],
        FamilyId::Htc5 => &["a", "b"],
    }
}

fn parse_range(s: &str) -> anyhow::Result<(i64, i64)> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| anyhow!("range {s:?} is not lo..hi"))?;
    Ok((lo.trim().parse()?, hi.trim().parse()?))
}

fn build_axes(fam: FamilyId, fix: &[String], ranges: &[String]) -> anyhow::Result<Vec<Axis>> {
    let names = axis_names(fam);
    let index = |n: &str| {
        names.iter().position(|&x| x == n).ok_or_else(|| anyhow!("{fam} has no coordinate {n:?}; use one of {names:?}"))
    };
    let mut axes: Vec<Option<Axis>> = vec![None; names.len()];
    for f in fix {
        let (n, v) = f.split_once('=').ok_or_else(|| anyhow!("--fix expects name=value, got {f:?}"))?;
        axes[index(n)?] = Some(Axis::Fixed(parse_rat(v).map_err(|e| anyhow!("{e}"))?));
    }
    let mut default = None;
    for r in ranges {
        match r.split_once('=') {
            Some((n, v)) => {
                let (lo, hi) = parse_range(v)?;
                axes[index(n)?] = Some(Axis::Range { lo, hi });
            }
            None => default = Some(parse_range(r)?),
        }
    }
    axes.into_iter()
        .zip(names)
        .map(|(a, n)| match (a, default) {
            (Some(a), _) => Ok(a),
            (None, Some((lo, hi))) => Ok(Axis::Range { lo, hi }),
            (None, None) => bail!("coordinate {n} has neither --fix nor --range"),
        })
        .collect()
}

fn load_cache(explicit: Option<&Path>) -> anyhow::Result<Option<RhoCache>> {
    let path = explicit.map(Path::to_path_buf).or_else(|| std::env::var_os("GAL_RHO_CACHE").map(PathBuf::from));
    match path {
        Some(p) => Ok(Some(RhoCache::load(&p).with_context(|| format!("loading rho cache {}", p.display()))?)),
        None => Ok(None),
    }
}

fn emit_json<T: Serialize>(v: &T) -> anyhow::Result<Vec<u8>> {
    let mut s = serde_json::to_vec_pretty(v)?;
    s.push(b'\n');
    Ok(s)
}

#[derive(Serialize)]
struct ResolventOut {
    family: FamilyId,
    a: ParamPoint,
    b: ParamPoint,
    kind: u8,
    certification: Certification,
    coefficients: String,
    factor_degrees: Vec<usize>,
}

#[derive(Serialize)]
struct VerifyLine {
    kind: &'static str,
    closed_form: String,
    numeric: String,
    matches: bool,
}

fn resolvent(pair: &Pair, kind: u8, digits: u32) -> anyhow::Result<(QPoly, Certification)> {
    let fam = pair.family.family;
    match fam {
        FamilyId::S3 => {
            if kind != 1 {
                bail!("the cubic family has a single resolvent");
            }
            Ok((s3_resolvent(pair.a.get(0), pair.b.get(0))?, Certification::Exact))
        }
        FamilyId::D5 => {
            let cache = load_cache(pair.rho_cache.as_deref())?;
            Ok(d5_resolvent(&pair.a, &pair.b, ResolventKind::from_index(kind)?, cache.as_ref(), digits)?)
        }
        _ => bail!("resolvents are defined for s3 and d5 only"),
    }
}

fn verify(pair: &Pair, digits: u32) -> anyhow::Result<Vec<VerifyLine>> {
    let fam = pair.family.family;
    let (a, b) = (&pair.a, &pair.b);
    let line = |kind, closed: QPoly, numeric: QPoly| VerifyLine {
        kind,
        matches: closed == numeric,
        closed_form: closed.to_canonical(),
        numeric: numeric.to_canonical(),
    };
    match fam {
        FamilyId::S3 => {
            let closed = s3_resolvent(a.get(0), b.get(0))?;
            let numeric = numeric_resolvent_exact(fam, a, b, NumKind::S3Theta, digits)?;
            Ok(vec![line("S3-theta", closed, numeric)])
        }
        FamilyId::D5 => {
            let mut out = Vec::new();
            let (f1, _) = d5_resolvent(a, b, ResolventKind::One, None, digits)?;
            out.push(line("D5-P", f1, numeric_resolvent_exact(fam, a, b, NumKind::D5P, digits)?));
            let rho = match load_cache(pair.rho_cache.as_deref())? {
                Some(c) => c.apply(a)?,
                None => rho_image(a, digits)?,
            };
            let (f2, _) = d5_resolvent(&rho, b, ResolventKind::One, None, digits)?;
            out.push(line("D5-rhoP", f2, numeric_resolvent_exact(fam, a, b, NumKind::D5RhoP, digits)?));
            Ok(out)
        }
        _ => bail!("verify supports s3 and d5"),
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    if let Some(s) = cli.seed {
        set_seed(s);
    }
    let fmt = cli.output;
    let digits = cli.digits;
    let mut stdout = std::io::stdout().lock();
    let mut code = ExitCode::SUCCESS;
    let bytes = match &cli.cmd {
        Cmd::Group { family, params } => {
            let g = galois_group(family.family, params)?;
            match fmt {
                OutputFormat::Json => emit_json(&serde_json::json!({
                    "family": family.family, "params": params, "group": g.to_string()
                }))?,
                OutputFormat::Csv => format!("family,params,group\n{},\"{}\",{}\n", family.family, params, g).into_bytes(),
                OutputFormat::Text => format!("G = {g}\n").into_bytes(),
            }
        }
        Cmd::Poly { family, params } => {
            let p = family_poly(family.family, params)?;
            match fmt {
                OutputFormat::Json => emit_json(&serde_json::json!({
                    "family": family.family, "params": params, "coefficients": p.to_canonical()
                }))?,
                OutputFormat::Csv => format!("coefficients\n\"{}\"\n", p.to_canonical()).into_bytes(),
                OutputFormat::Text => format!("{p}\n").into_bytes(),
            }
        }
        Cmd::Resolvent { pair, kind } => {
            let (f, cert) = resolvent(pair, *kind, digits)?;
            let fac = factor_over_q(&f)?;
            let out = ResolventOut {
                family: pair.family.family,
                a: pair.a.clone(),
                b: pair.b.clone(),
                kind: *kind,
                certification: cert,
                coefficients: f.to_canonical(),
                factor_degrees: fac.degrees(),
            };
            match fmt {
                OutputFormat::Json => emit_json(&out)?,
                OutputFormat::Csv => format!(
                    "kind,certification,coefficients\n{},{},\"{}\"\n",
                    out.kind, out.certification, out.coefficients
                )
                .into_bytes(),
                OutputFormat::Text => {
                    let mut s = format!("F = {f}\ncoefficients: {}\ncertification: {cert}\nfactors:\n", out.coefficients);
                    for x in &fac.factors {
                        s += &format!("  ({})^{}\n", x.poly, x.mult);
                    }
                    s.into_bytes()
                }
            }
        }
        Cmd::Isom { pair } => {
            let cache = load_cache(pair.rho_cache.as_deref())?;
            let opts = ClassifyOptions { rho_cache: cache.as_ref(), digits };
            let iso = isomorphic(pair.family.family, &pair.a, &pair.b, &opts)?;
            if !iso.isomorphic {
                code = ExitCode::from(3);
            }
            match fmt {
                OutputFormat::Json => emit_json(&iso)?,
                OutputFormat::Csv => match &iso.report {
                    Some(r) => emit_report(r, fmt)?,
                    None => format!("isomorphic\n{}\n", iso.isomorphic).into_bytes(),
                },
                OutputFormat::Text => {
                    let mut s = format!("isomorphic: {}\n", if iso.isomorphic { "yes" } else { "no" });
                    if let Some(w) = &iso.witness {
                        s += &format!("witness: {w}\n");
                    }
                    s.into_bytes()
                }
            }
        }
        Cmd::Intersect { pair } => {
            let cache = load_cache(pair.rho_cache.as_deref())?;
            let opts = ClassifyOptions { rho_cache: cache.as_ref(), digits };
            let r = classify_intersection_with(pair.family.family, &pair.a, &pair.b, &opts)?;
            emit_report(&r, fmt)?
        }
        Cmd::Search(args) => {
            let fam = args.family.family;
            let mut spec = SearchSpec::new(fam, build_axes(fam, &args.fix, &args.range)?);
            match (&args.target, args.pairwise) {
                (Some(t), false) => spec.target = Some(t.clone()),
                (None, true) => {}
                _ => bail!("give exactly one of --target and --pairwise"),
            }
            if let Some(p) = &args.primes {
                spec.primes = p.clone();
            }
            spec.threads = args.threads;
            spec.certify = args.certify;
            spec.digits = digits;
            spec.kinds = match args.resolvent.as_str() {
                "1" => vec![ResolventKind::One],
                "2" => vec![ResolventKind::Two],
                "both" => vec![ResolventKind::One, ResolventKind::Two],
                r => bail!("--resolvent must be 1, 2 or both, got {r:?}"),
            };
            spec.rho_cache = load_cache(args.rho_cache.as_deref())?;
            let out = search_grid(&spec)?;
            if let Some(p) = &args.errors {
                std::fs::write(p, emit_sidecar(&out)?)?;
            } else if !out.errors.is_empty() {
                eprintln!("{} pairs skipped; pass --errors FILE for details", out.errors.len());
            }
            emit_hits(&out.hits, fmt)?
        }
        Cmd::Verify { pair } => {
            let lines = verify(pair, digits)?;
            if lines.iter().any(|l| !l.matches) {
                code = ExitCode::from(3);
            }
            match fmt {
                OutputFormat::Json => emit_json(&lines)?,
                OutputFormat::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    for l in &lines {
                        w.serialize(l)?;
                    }
                    w.into_inner()?
                }
                OutputFormat::Text => lines
                    .iter()
                    .map(|l| format!("{}: {}\n", l.kind, if l.matches { "match" } else { "MISMATCH" }))
                    .collect::<String>()
                    .into_bytes(),
            }
        }
        Cmd::DeriveRho { out, degree_cap, samples } => {
            let cache = derive_rho_map(*samples, *degree_cap)?;
            cache.save(out)?;
            format!("wrote {}\n", out.display()).into_bytes()
        }
    };
    stdout.write_all(&bytes)?;
    Ok(code)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
