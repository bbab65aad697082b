use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use domipoly::families::{generate, parse_script, FamilySpec};
use domipoly::oracle::{self, soft_max_n};
use domipoly::recurrence::{
    check_grid, compute, d_degree1, d_general_recurrence, find_leaf, gamma_formula, Degree1Form,
    MethodTag,
};
use domipoly::roots::{
    classify_real, corona_sequence_roots, find_roots, format_float, kstar_sweep, sweep_csv,
    DEFAULT_EPS, DEFAULT_TOL,
};
use domipoly::{Graph, Polynomial};

#[derive(Parser)]
#[command(
    name = "domipoly",
    version,
    about = "Domination polynomials of k-tree related graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a family instance as an edge list.
    Gen {
        spec: String,
        #[arg(long)]
        script: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compute D(G, x) as JSON.
    Poly {
        #[command(flatten)]
        subject: Subject,
        #[arg(long, default_value = "oracle")]
        method: String,
        #[arg(long, value_enum, default_value_t = PolyFormat::Json)]
        format: PolyFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the domination number.
    Gamma {
        #[command(flatten)]
        subject: Subject,
        #[arg(long, value_enum, default_value_t = GammaMethod::Both)]
        method: GammaMethod,
    },
    /// Evaluate D(G, x) at an integer point.
    Eval {
        #[command(flatten)]
        subject: Subject,
        #[arg(long, allow_hyphen_values = true)]
        at: BigInt,
        #[arg(long, default_value = "oracle")]
        method: String,
    },
    /// Compare every applicable method with the oracle over a grid.
    Check {
        /// `kmax=K nmax=N`
        #[arg(long, num_args = 1..=2, value_parser = parse_grid_entry)]
        grid: Vec<(String, usize)>,
        /// Exit nonzero when any comparison mismatches.
        #[arg(long)]
        strict: bool,
        /// Only emit mismatching reports.
        #[arg(long)]
        findings_only: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Locate the roots of D(G, x).
    Roots {
        #[command(flatten)]
        subject: Subject,
        #[arg(long, default_value = "oracle")]
        method: String,
        #[command(flatten)]
        numeric: Numeric,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Root scatter of D(S_{k,n-k}, x) over a range of n, as CSV.
    Sweep {
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long, default_value_t = 5)]
        nmin: usize,
        #[arg(long, default_value_t = 44)]
        nmax: usize,
        #[command(flatten)]
        numeric: Numeric,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Roots along the iterated corona G ∘ S_{k,n-k}, (G ∘ S) ∘ S, ... as CSV.
    Corona {
        /// Base graph as a family spec.
        #[arg(long, conflicts_with = "base_graph")]
        base: Option<String>,
        /// Base graph as an edge-list file.
        #[arg(long)]
        base_graph: Option<PathBuf>,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[command(flatten)]
        numeric: Numeric,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Subject {
    /// Family spec `kind:k:n` (e.g. `kpath:3:7`).
    #[arg(required_unless_present = "graph", conflicts_with = "graph")]
    spec: Option<String>,
    /// Edge-list graph file instead of a family spec.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Attachment script for `ktree` specs.
    #[arg(long)]
    script: Option<PathBuf>,
}

#[derive(Args)]
struct Numeric {
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_EPS)]
    eps: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolyFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GammaMethod {
    Formula,
    Oracle,
    Both,
}

fn parse_grid_entry(s: &str) -> Result<(String, usize), String> {
    let (key, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected key=value, got {s:?}"))?;
    if key != "kmax" && key != "nmax" {
        return Err(format!("unknown grid key {key:?}"));
    }
    let value = value
        .parse()
        .map_err(|_| format!("bad grid value {value:?}"))?;
    Ok((key.to_string(), value))
}

enum Resolved {
    Family(FamilySpec),
    File(Graph),
}

impl Resolved {
    fn graph(&self) -> Result<Graph> {
        match self {
            Resolved::Family(spec) => Ok(generate(spec)?),
            Resolved::File(g) => Ok(g.clone()),
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn parse_spec(spec: &str, script: Option<&Path>) -> Result<FamilySpec> {
    let mut parsed: FamilySpec = spec.parse()?;
    if let Some(path) = script {
        let attachments = parse_script(&read(path)?, parsed.k)?;
        parsed = FamilySpec::ktree(parsed.k, attachments);
        if parsed.n != spec.parse::<FamilySpec>()?.n {
            bail!(
                "script adds {} vertices but spec says n={}",
                parsed.n - parsed.k,
                spec
            );
        }
    }
    parsed.validate()?;
    Ok(parsed)
}

fn resolve(subject: &Subject) -> Result<Resolved> {
    match (&subject.spec, &subject.graph) {
        (Some(spec), None) => Ok(Resolved::Family(parse_spec(
            spec,
            subject.script.as_deref(),
        )?)),
        (None, Some(path)) => Ok(Resolved::File(
            Graph::parse_text(&read(path)?).with_context(|| format!("in {}", path.display()))?,
        )),
        _ => bail!("give either a family spec or --graph"),
    }
}

fn guard_order(order: usize) -> Result<()> {
    let limit = soft_max_n();
    if order > limit {
        bail!(
            "graph order {order} exceeds the oracle bound {limit} (set {} to raise it)",
            oracle::MAX_N_ENV
        );
    }
    Ok(())
}

fn polynomial(subject: &Resolved, method: &str) -> Result<Polynomial> {
    let method: MethodTag = method.parse()?;
    match subject {
        Resolved::Family(spec) => {
            let closed_form = matches!(
                method,
                MethodTag::PathRec
                    | MethodTag::CycleRec
                    | MethodTag::KstarClosed
                    | MethodTag::CompleteClosed
                    | MethodTag::StarClosed
                    | MethodTag::CoronaProduct
            );
            if !closed_form {
                guard_order(spec.order())?;
            }
            Ok(compute(spec, method)?)
        }
        Resolved::File(g) => {
            guard_order(g.n())?;
            let not_applicable =
                || anyhow!("method {method} needs a family spec, not a graph file");
            match method {
                MethodTag::Oracle => Ok(oracle::domination_polynomial(g)?),
                MethodTag::GeneralRecurrence if g.n() > 0 => {
                    Ok(d_general_recurrence(g, g.n() - 1)?)
                }
                MethodTag::UnionProduct => {
                    let mut acc = Polynomial::one();
                    for c in g.components() {
                        acc = acc * oracle::domination_polynomial(&g.induced(c)?)?;
                    }
                    Ok(acc)
                }
                MethodTag::Degree1Recurrence | MethodTag::Degree1Factored => {
                    let v = find_leaf(g).ok_or_else(|| anyhow!("graph has no degree-1 vertex"))?;
                    let form = if method == MethodTag::Degree1Recurrence {
                        Degree1Form::Printed
                    } else {
                        Degree1Form::Factored
                    };
                    Ok(d_degree1(g, v, form)?)
                }
                _ => Err(not_applicable()),
            }
        }
    }
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(out.flush()?)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen {
            spec,
            script,
            output,
        } => {
            let spec = parse_spec(&spec, script.as_deref())?;
            emit(output.as_deref(), &generate(&spec)?.to_text())?;
        }
        Command::Poly {
            subject,
            method,
            format,
            output,
        } => {
            let p = polynomial(&resolve(&subject)?, &method)?;
            let text = match format {
                PolyFormat::Json => p.to_json(),
                PolyFormat::Text => p.to_string(),
            };
            emit(output.as_deref(), &format!("{text}\n"))?;
        }
        Command::Gamma { subject, method } => {
            let resolved = resolve(&subject)?;
            let formula = match (&resolved, method) {
                (_, GammaMethod::Oracle) => None,
                (Resolved::Family(spec), _) => Some(gamma_formula(spec)?),
                (Resolved::File(_), GammaMethod::Formula) => {
                    bail!("the gamma formula needs a family spec")
                }
                (Resolved::File(_), GammaMethod::Both) => None,
            };
            let enumerated = if method == GammaMethod::Formula {
                None
            } else {
                let g = resolved.graph()?;
                guard_order(g.n())?;
                Some(oracle::domination_number(&g)?)
            };
            let line = match (formula, enumerated) {
                (Some(f), Some(o)) if f == o => format!("{f}"),
                (Some(f), Some(o)) => format!("formula={f} oracle={o} MISMATCH"),
                (Some(v), None) | (None, Some(v)) => format!("{v}"),
                (None, None) => unreachable!("at least one method runs"),
            };
            println!("{line}");
        }
        Command::Eval {
            subject,
            at,
            method,
        } => {
            let p = polynomial(&resolve(&subject)?, &method)?;
            println!("{}", p.eval_int(&at));
        }
        Command::Check {
            grid,
            strict,
            findings_only,
            output,
        } => {
            let mut kmax = 3;
            let mut nmax = 12;
            for (key, value) in grid {
                match key.as_str() {
                    "kmax" => kmax = value,
                    _ => nmax = value,
                }
            }
            guard_order(nmax + 1)?;
            let report = check_grid(kmax, nmax)?;
            let mut text = String::new();
            for r in &report.reports {
                if !findings_only || !r.is_match() {
                    text.push_str(&r.to_json());
                    text.push('\n');
                }
            }
            text.push_str(&report.summary_line());
            text.push('\n');
            emit(output.as_deref(), &text)?;
            if output.is_some() {
                eprintln!("{}", report.summary_line());
            }
            if strict && report.mismatches().next().is_some() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Roots {
            subject,
            method,
            numeric,
            output,
        } => {
            let p = polynomial(&resolve(&subject)?, &method)?;
            let rs = find_roots(&p, numeric.tol)?;
            emit(output.as_deref(), &format!("{}\n", rs.to_json(numeric.eps)))?;
        }
        Command::Sweep {
            k,
            nmin,
            nmax,
            numeric,
            output,
        } => {
            let rows = kstar_sweep(k, nmin, nmax, numeric.tol)?;
            emit(output.as_deref(), &sweep_csv(&rows))?;
            let counts: Vec<String> = rows
                .iter()
                .map(|r| {
                    format!(
                        "{}:{}",
                        r.n,
                        classify_real(&r.roots, numeric.eps).real_nonzero_count
                    )
                })
                .collect();
            eprintln!("nonzero real roots per n: {}", counts.join(" "));
        }
        Command::Corona {
            base,
            base_graph,
            k,
            n,
            depth,
            numeric,
            output,
        } => {
            let g = match (base, base_graph) {
                (Some(spec), None) => generate(&parse_spec(&spec, None)?)?,
                (None, Some(path)) => Graph::parse_text(&read(&path)?)?,
                _ => bail!("give --base or --base-graph"),
            };
            let levels = corona_sequence_roots(&g, k, n, depth, numeric.tol)?;
            let mut text = String::from("depth,multiplicity,re,im\n");
            for level in &levels {
                for z in level.roots.distinct(0.0) {
                    text.push_str(&format!(
                        "{},{},{},{}\n",
                        level.depth,
                        level.exponent,
                        format_float(z.re),
                        format_float(z.im)
                    ));
                }
            }
            emit(output.as_deref(), &text)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
