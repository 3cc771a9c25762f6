//! `carlitz`: L-polynomials, ranks, variety geometry and censuses from the
//! command line.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use carlitz_core::algebra::{parse_poly, Rationals};
use carlitz_core::catalog::{report, Catalog, CatalogEntry, Payload, Provenance, Query};
use carlitz_core::census::{
    census, census_consistency, configured_budget, hits_jsonl, parse_filters, shift_orbit_reduce, CensusSpec,
    RankKind, DEFAULT_SHIFT_SAMPLE,
};
use carlitz_core::ideal::{variety_ideal, IdealHandle, VarietyReport, DEFAULT_KAPPA_MAX};
use carlitz_core::lfun::{
    analytic_rank_at, extract_h, l_polynomial, load_provider, schur_provider, specialize_l, LPolyRecord,
    MatrixProvider, RankRecord,
};
use carlitz_core::univar::TwistPoly;
use carlitz_core::{Error, FieldSpec};

const EXIT_OTHER: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_FINDING: u8 = 4;

#[derive(Parser)]
#[command(name = "carlitz", version, about = "Exact L-polynomials of twisted Carlitz modules")]
struct Cli {
    /// Append results to this JSONL catalog.
    #[arg(long, global = true, value_name = "PATH")]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ProviderArgs {
    /// Built-in n = 0 provider of size m.
    #[arg(long, value_name = "M")]
    schur: Option<usize>,
    /// Provider file.
    #[arg(long, value_name = "FILE")]
    provider: Option<PathBuf>,
}

impl ProviderArgs {
    fn load(&self) -> Result<MatrixProvider, Error> {
        match (&self.schur, &self.provider) {
            (Some(m), _) => schur_provider(*m),
            (_, Some(path)) => load_provider(path),
            _ => unreachable!("clap enforces one provider source"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Symbolic or specialized L-polynomial.
    Lpoly {
        #[command(flatten)]
        provider: ProviderArgs,
        /// Specialize at this twist, e.g. F3:1,0,2.
        #[arg(long)]
        twist: Option<TwistPoly>,
        /// Also list the coefficients H[beta, alpha].
        #[arg(long)]
        coefficients: bool,
    },
    /// Analytic rank and rank at infinity of one twist.
    Rank {
        #[command(flatten)]
        provider: ProviderArgs,
        #[arg(long)]
        twist: TwistPoly,
        /// Also report the order of vanishing at T = a.
        #[arg(long, value_name = "A")]
        at: Option<u32>,
    },
    /// Geometry of X(m, i).
    Variety {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        i: usize,
        /// Print only the degree.
        #[arg(long)]
        degree: bool,
        /// Flag a non complete intersection with exit status 4.
        #[arg(long)]
        ci_check: bool,
        /// Compare with X(m+1, i) on a_(m+1) = 0.
        #[arg(long)]
        nesting: bool,
        /// Print the generators.
        #[arg(long)]
        ideal: bool,
    },
    /// Rank census over F_q^(m+1).
    Census {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: usize,
        /// Provider file, or `builtin`.
        #[arg(long, default_value = "builtin")]
        provider: String,
        #[arg(long, default_value = "at-one")]
        rank_kind: RankKind,
        /// Thresholds i, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "0,1,2")]
        i_list: Vec<usize>,
        /// Comma separated subset of powerfree, squarefree, shift-stable, monic.
        #[arg(long, default_value = "none")]
        filters: String,
        #[arg(long, default_value_t = 1)]
        shards: usize,
        /// Write points of rank >= the largest threshold as JSONL.
        #[arg(long, value_name = "FILE")]
        points: Option<PathBuf>,
        /// Evaluate one twist per shift orbit.
        #[arg(long)]
        orbits: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Check symbolic against determinant ranks at every point.
        #[arg(long)]
        consistency: bool,
        /// Print the census text instead of CSV.
        #[arg(long)]
        text: bool,
    },
    /// Smallest kappa with f^kappa in the ideal.
    Kappa {
        /// Use the ideal of X(m, i); requires --i.
        #[arg(long, requires = "i", conflicts_with_all = ["vars", "gens"])]
        m: Option<usize>,
        #[arg(long)]
        i: Option<usize>,
        /// Number of variables a0..a(N-1) for --gens.
        #[arg(long, requires = "gens")]
        vars: Option<usize>,
        /// Generators separated by ';'.
        #[arg(long)]
        gens: Option<String>,
        #[arg(long)]
        f: String,
        #[arg(long, default_value_t = DEFAULT_KAPPA_MAX)]
        kappa_max: u32,
    },
    /// Validate a provider file.
    ProviderCheck { file: PathBuf },
    /// CSV table from a catalog.
    Report {
        /// Filter such as kind=census,q=3.
        #[arg(long, default_value = "")]
        query: String,
    },
}

/// What a command printed and how it wants to exit.
struct Outcome {
    stdout: String,
    status: u8,
    entry: Option<CatalogEntry>,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            status: 0,
            entry: None,
        }
    }

    fn with_entry(mut self, payload: Payload, provenance: Provenance) -> Self {
        self.entry = Some(CatalogEntry::new(&payload, provenance));
        self
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Budget { .. } | Error::Timeout(_) | Error::ExponentOverflow { .. } => EXIT_BUDGET,
        Error::SymmetryViolation(_) => EXIT_FINDING,
        Error::Parse { .. }
        | Error::InvalidInput(_)
        | Error::InvalidField(_)
        | Error::IncompatibleRing(_)
        | Error::ProviderInconsistency(_)
        | Error::WindowSelection { .. } => EXIT_USAGE,
        _ => EXIT_OTHER,
    }
}

fn provenance_for(provider: &MatrixProvider) -> Provenance {
    Provenance {
        provider_id: Some(provider.provider_id()),
        ..Provenance::now()
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Lpoly {
            provider,
            twist,
            coefficients,
        } => {
            let p = provider.load()?;
            let record = match twist {
                Some(t) => LPolyRecord::specialized(&p, t)?,
                None => LPolyRecord::symbolic(&p),
            };
            let mut out = record.to_text();
            if *coefficients {
                for ((beta, alpha), h) in extract_h(&l_polynomial(&p)) {
                    out.push_str(&format!("H[{beta},{alpha}]: {h}\n"));
                }
            }
            Ok(Outcome::ok(out).with_entry(Payload::Lpoly(record), provenance_for(&p)))
        }
        Command::Rank { provider, twist, at } => {
            let p = provider.load()?;
            let record = RankRecord::compute(&p, twist)?;
            let mut out = record.to_text();
            if let Some(a) = at {
                let field = twist.field();
                let a = field.elem(*a)?;
                let l = specialize_l(&p, twist)?;
                out.push_str(&format!("r_at_{}: {}\n", a.0, analytic_rank_at(&l, &a)?));
            }
            Ok(Outcome::ok(out).with_entry(Payload::Rank(record), provenance_for(&p)))
        }
        Command::Variety {
            m,
            i,
            degree,
            ci_check,
            nesting,
            ideal,
        } => {
            let handle = variety_ideal(*m, *i)?;
            let rep = VarietyReport::compute(*m, *i, *nesting)?;
            let mut out = String::new();
            if *ideal {
                out.push_str(&handle.to_text());
            }
            if *degree {
                out.push_str(&format!("{}\n", rep.degree));
            }
            if *ci_check {
                out.push_str(&format!("complete-intersection: {}\n", rep.complete_intersection));
            }
            if let Some(n) = rep.nesting {
                out.push_str(&format!("nesting: {n}\n"));
            }
            if !*degree && !*ci_check && !*nesting && !*ideal {
                out = rep.to_text();
            }
            let mut status = 0;
            if *ci_check && !rep.complete_intersection {
                eprintln!("finding: X({m},{i}) is not a complete intersection");
                status = EXIT_FINDING;
            }
            if rep.nesting == Some(false) {
                eprintln!("finding: X({m},{i}) differs from X({},{i}) on a{} = 0", m + 1, m + 1);
                status = EXIT_FINDING;
            }
            let window = handle.provenance().lines().find(|l| l.starts_with("window:")).map(str::to_string);
            let prov = Provenance {
                provider_id: Some(schur_provider(*m)?.provider_id()),
                window,
                term_order: Some("grevlex".into()),
                ..Provenance::now()
            };
            let mut outcome = Outcome::ok(out).with_entry(Payload::Ideal(rep), prov);
            outcome.status = status;
            Ok(outcome)
        }
        Command::Census {
            q,
            m,
            provider,
            rank_kind,
            i_list,
            filters,
            shards,
            points,
            orbits,
            seed,
            consistency,
            text,
        } => {
            let field = FieldSpec::new(*q)?;
            let p = if provider == "builtin" {
                schur_provider(*m)?
            } else {
                load_provider(std::path::Path::new(provider))?
            };
            let mut spec = CensusSpec::new(field, *m, *rank_kind)
                .with_filters(parse_filters(filters)?)
                .with_thresholds(i_list.iter().copied())
                .with_shards(*shards)
                .with_budget(configured_budget()?);
            if points.is_some() {
                let top = spec.thresholds.last().copied().unwrap_or(0);
                spec = spec.with_emit_threshold(top);
            }
            let mut status = 0;
            if *consistency {
                let rep = census_consistency(&spec, &p)?;
                if !rep.agrees() {
                    eprintln!("finding: {} of {} points disagree", rep.disagreements, rep.checked);
                    for w in &rep.witnesses {
                        eprintln!("  {}: symbolic {} determinant {}", w.point, w.symbolic, w.determinant);
                    }
                    status = EXIT_FINDING;
                }
            }
            let run = if *orbits {
                shift_orbit_reduce(&spec, &p, DEFAULT_SHIFT_SAMPLE, *seed)?
            } else {
                census(&spec, &p)?
            };
            if let Some(path) = points {
                std::fs::write(path, hits_jsonl(&run.hits))?;
            }
            let out = if *text { run.result.to_text() } else { run.result.to_csv()? };
            let prov = Provenance {
                seed: orbits.then_some(*seed),
                ..provenance_for(&p)
            };
            let mut outcome = Outcome::ok(out).with_entry(Payload::Census(run.result), prov);
            outcome.status = status;
            Ok(outcome)
        }
        Command::Kappa {
            m,
            i,
            vars,
            gens,
            f,
            kappa_max,
        } => {
            let handle = match (m, i, vars, gens) {
                (Some(m), Some(i), _, _) => variety_ideal(*m, *i)?,
                (None, _, Some(n), Some(g)) => {
                    let polys = g
                        .split(';')
                        .map(|s| parse_poly(Rationals, n + 1, s))
                        .collect::<Result<Vec<_>, _>>()?;
                    IdealHandle::new(polys, "command line")?
                }
                _ => return Err(Error::InvalidInput("give --m and --i, or --vars and --gens".into())),
            };
            let f = parse_poly(Rationals, handle.num_vars() + 1, f)?;
            let out = match handle.kappa_search(&f, *kappa_max)? {
                Some(k) => format!("kappa: {k}\n"),
                None if handle.radical_membership(&f)? => format!("kappa: none (above kappa-max {kappa_max})\n"),
                None => "kappa: none (not in the radical)\n".to_string(),
            };
            Ok(Outcome::ok(out))
        }
        Command::ProviderCheck { file } => {
            let p = load_provider(file)?;
            let q = p.q.map_or("any".to_string(), |q| q.to_string());
            Ok(Outcome::ok(format!(
                "ok: q={q} m={} n={} k={} id={}\n",
                p.m,
                p.n,
                p.k,
                p.provider_id()
            )))
        }
        Command::Report { query } => {
            let Some(path) = &cli.catalog else {
                return Err(Error::InvalidInput("report needs --catalog PATH".into()));
            };
            let query: Query = query.parse()?;
            let rep = report(&Catalog::new(path), &query)?;
            for w in &rep.warnings {
                eprintln!("warning: {w}");
            }
            let status = if rep.is_partial() { EXIT_OTHER } else { 0 };
            Ok(Outcome {
                stdout: rep.csv,
                status,
                entry: None,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            if let (Some(path), Some(entry)) = (&cli.catalog, &outcome.entry) {
                if let Err(e) = Catalog::new(path).append(entry) {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_OTHER);
                }
            }
            ExitCode::from(outcome.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
