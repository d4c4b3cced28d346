//! chaosgraph: build structured (hyper)graph families, compute spectra and
//! expansions, evaluate box reductions, and run CLT diagnostics.
//!
//! Exit codes: 0 success, 2 validation error, 3 numerical failure. Errors
//! are also written to stderr as one machine-readable JSON line.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use chaosgraph::combdim;
use chaosgraph::constructions as cons;
use chaosgraph::error::Error;
use chaosgraph::graph::Partition;
use chaosgraph::homsum::{clt_report, CltOptions, Dist};
use chaosgraph::io::{fmt_f64, spectral_csv, ObjectJson};
use chaosgraph::reducibility as red;
use chaosgraph::MatrixKind;

#[derive(Parser)]
#[command(name = "chaosgraph", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixArg {
    Adjacency,
    Laplacian,
}

#[derive(Args)]
struct OutputArgs {
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a family member and write its object JSON.
    Build {
        /// Family name (complete, rook, grid, triangle-hypergraph, ...).
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        /// Order d for hypergraph/support families.
        #[arg(long)]
        d: Option<usize>,
        /// Gate parameter k_n of the rook variant.
        #[arg(long)]
        kn: Option<usize>,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Rook variant: keep only edges where the directed gate holds in
        /// both directions, instead of the default union closure.
        #[arg(long)]
        literal_rule: bool,
        /// Family descriptor JSON file overriding the flags.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Build a whole family over n = lo..=hi ("lo:hi"); --out must be
        /// a directory, which receives one file per member plus an
        /// index.json manifest. Per-member seeds are seed ^ n.
        #[arg(long)]
        range: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Eigenvalues of the normalized Laplacian (or adjacency matrix).
    Spectrum {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "laplacian")]
        matrix: MatrixArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Cheeger-type checks mu_k <= c phi_k for k = 2..k_max.
    Cheeger {
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = chaosgraph::EXACT_LIMIT_BASE)]
        exact_limit: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate a candidate box system against the reducibility
    /// conditions. A family directory (as written by `build --range`) is
    /// evaluated member by member with a per-n trend verdict.
    Reduce {
        /// Object file, or a family directory containing index.json.
        input: PathBuf,
        /// Partition JSON file.
        #[arg(long, conflicts_with = "named")]
        partition: Option<PathBuf>,
        /// Named reduction: hypercube-boxes, rows, columns, kxk, blocks,
        /// random.
        #[arg(long)]
        named: Option<String>,
        /// Coordinates fixed by hypercube boxes.
        #[arg(long)]
        h: Option<usize>,
        /// Block-count style parameter of kxk / blocks / random.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Fourth-moment / contraction / spectral CLT diagnostics.
    Clt {
        input: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "gaussian")]
        dist: String,
        #[arg(long)]
        no_contractions: bool,
        /// Also write the raw normalized samples as a one-column CSV.
        #[arg(long)]
        samples_out: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Combinatorial-dimension report over a family of support files.
    Combdim {
        inputs: Vec<PathBuf>,
        /// Evaluate ratios at this exponent instead of the fitted one.
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Spectral irreducibility certificate over a family of members.
    Certify {
        inputs: Vec<PathBuf>,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = red::CERTIFICATE_THRESHOLD)]
        threshold: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("CHAOSGRAPH_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!(
                "{}",
                json!({"error": {"kind": e.kind(), "message": e.to_string()}})
            );
            match e {
                Error::NumericalFailure { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn read_object(path: &PathBuf) -> Result<ObjectJson, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    ObjectJson::parse(&text)
}

fn emit(output: &OutputArgs, text: String) -> Result<(), Error> {
    match &output.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{}", text.trim_end_matches('\n'));
            Ok(())
        }
    }
}

/// Standard report envelope carrying the tool version and parameter echo.
/// The timestamp is the one field excluded from byte-comparison mode.
fn envelope<T: Serialize>(command: &str, params: serde_json::Value, data: &T) -> String {
    let doc = json!({
        "tool_version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "params": params,
        "timestamp": std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        "data": data,
    });
    serde_json::to_string_pretty(&doc).expect("report serialization")
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Build {
            family,
            n,
            q,
            m,
            d,
            kn,
            beta,
            alpha,
            seed,
            literal_rule,
            config,
            range,
            output,
        } => {
            let descriptor: serde_json::Value = if let Some(path) = config {
                let text = std::fs::read_to_string(&path).map_err(|e| {
                    Error::InvalidInput(format!("cannot read {}: {e}", path.display()))
                })?;
                serde_json::from_str(&text)
                    .map_err(|e| Error::InvalidInput(format!("malformed config: {e}")))?
            } else {
                json!({
                    "family": family,
                    "n": n, "q": q, "m": m, "d": d, "kn": kn,
                    "beta": beta, "alpha": alpha, "seed": seed,
                    "symmetrize": !literal_rule,
                })
            };
            match range {
                None => emit(&output, build_family(&descriptor)?.to_json()),
                Some(range) => build_family_dir(&descriptor, &range, &output),
            }
        }
        Command::Spectrum {
            input,
            matrix,
            output,
        } => {
            let kind = match matrix {
                MatrixArg::Adjacency => MatrixKind::Adjacency,
                MatrixArg::Laplacian => MatrixKind::NormalizedLaplacian,
            };
            let report = match read_object(&input)? {
                obj @ ObjectJson::Graph { .. } => obj.into_graph()?.spectrum(kind)?,
                obj @ ObjectJson::Hypergraph { .. } => obj.into_hypergraph()?.spectrum(kind)?,
                obj @ ObjectJson::Homsum { .. } => {
                    obj.into_homsum()?.to_hypergraph()?.spectrum(kind)?
                }
                other => {
                    return Err(Error::InvalidInput(format!(
                        "spectrum needs a graph, hypergraph or homsum, found {}",
                        other.kind()
                    )))
                }
            };
            let params = json!({"input": input, "matrix": matrix_name(matrix)});
            match output.format {
                Format::Json => emit(&output, envelope("spectrum", params, &report)),
                Format::Csv => emit(&output, spectral_csv(&report)),
            }
        }
        Command::Cheeger {
            input,
            k,
            exact_limit,
            output,
        } => {
            let params = json!({"input": input, "k": k, "exact_limit": exact_limit});
            match read_object(&input)? {
                obj @ ObjectJson::Graph { .. } => {
                    let report = obj.into_graph()?.cheeger_check(k, exact_limit)?;
                    match output.format {
                        Format::Json => emit(&output, envelope("cheeger", params, &report)),
                        Format::Csv => {
                            let mut text = String::from("k,mu_k,phi_k,mode,ok,sweep_ratio\n");
                            for r in &report.rows {
                                text.push_str(&format!(
                                    "{},{},{},{:?},{},{}\n",
                                    r.k,
                                    fmt_f64(r.mu_k),
                                    fmt_f64(r.phi_k),
                                    r.mode,
                                    r.ok,
                                    r.sweep_ratio.map(fmt_f64).unwrap_or_default()
                                ));
                            }
                            emit(&output, text)
                        }
                    }
                }
                obj @ ObjectJson::Hypergraph { .. } => {
                    let report = obj.into_hypergraph()?.cheeger_check(k, exact_limit)?;
                    emit(&output, envelope("cheeger", params, &report))
                }
                obj @ ObjectJson::Homsum { .. } => {
                    let report = obj
                        .into_homsum()?
                        .to_hypergraph()?
                        .cheeger_check(k, exact_limit)?;
                    emit(&output, envelope("cheeger", params, &report))
                }
                other => Err(Error::InvalidInput(format!(
                    "cheeger needs a graph, hypergraph or homsum, found {}",
                    other.kind()
                ))),
            }
        }
        Command::Reduce {
            input,
            partition,
            named,
            h,
            k,
            seed,
            output,
        } => {
            if input.join("index.json").is_file() {
                return reduce_family(&input, named.as_deref(), h, k, seed, &output);
            }
            let z = read_object(&input)?.into_homsum()?;
            let n = z.n_vertices();
            let (p, _vprime) = if let Some(path) = partition {
                read_object(&path)?.into_partition(n)?
            } else if let Some(name) = named {
                (named_partition(&name, n, h, k, seed)?, None)
            } else {
                return Err(Error::InvalidInput(
                    "reduce needs --partition or --named".into(),
                ));
            };
            let report = red::evaluate_partition(&z, &p)?;
            let params = json!({"input": input, "blocks": report.m, "seed": seed});
            match output.format {
                Format::Json => emit(&output, envelope("reduce", params, &report)),
                Format::Csv => {
                    let mut text = String::from("block,sigma2,vol,phi\n");
                    for b in &report.per_block {
                        text.push_str(&format!(
                            "{},{},{},{}\n",
                            b.block,
                            fmt_f64(b.sigma2),
                            fmt_f64(b.vol),
                            fmt_f64(b.phi)
                        ));
                    }
                    text.push_str(&format!(
                        "# captured_fraction,{}\n# max_box_fraction,{}\n",
                        fmt_f64(report.captured_fraction),
                        fmt_f64(report.max_box_fraction)
                    ));
                    emit(&output, text)
                }
            }
        }
        Command::Clt {
            input,
            samples,
            seed,
            dist,
            no_contractions,
            samples_out,
            output,
        } => {
            let z = read_object(&input)?.into_homsum()?;
            let parsed_dist = dist.parse::<Dist>()?;
            let opts = CltOptions {
                dist: parsed_dist,
                n_samples: samples,
                seed,
                contractions: !no_contractions,
                ..CltOptions::default()
            };
            let report = clt_report(&z, &opts)?;
            if let Some(path) = samples_out {
                // Same seed, same stream as the report's Monte Carlo pass.
                let xs = z.sample(parsed_dist, samples, seed);
                let mut text = String::from("z\n");
                for x in xs {
                    text.push_str(&fmt_f64(x));
                    text.push('\n');
                }
                std::fs::write(&path, text).map_err(|e| {
                    Error::InvalidInput(format!("cannot write {}: {e}", path.display()))
                })?;
            }
            let params = json!({
                "input": input, "samples": samples, "seed": seed, "dist": dist,
            });
            emit(&output, envelope("clt", params, &report))
        }
        Command::Combdim {
            inputs,
            alpha,
            seed,
            output,
        } => {
            let family: Vec<cons::SupportSet> = inputs
                .iter()
                .map(|p| read_object(p)?.into_support())
                .collect::<Result<_, _>>()?;
            let report = combdim::combdim_family_report(&family, alpha, seed)?;
            let params = json!({"inputs": inputs, "alpha": alpha, "seed": seed});
            match output.format {
                Format::Json => emit(&output, envelope("combdim", params, &report)),
                Format::Csv => {
                    let mut text =
                        String::from("v_size,j_size,density_ratio,rect_ratio,rect_mode\n");
                    for r in &report.per_member {
                        text.push_str(&format!(
                            "{},{},{},{},{:?}\n",
                            r.v_size,
                            r.j_size,
                            fmt_f64(r.density_ratio),
                            fmt_f64(r.rect_ratio),
                            r.rect_mode
                        ));
                    }
                    text.push_str(&format!("# alpha_hat,{}\n", fmt_f64(report.alpha_hat)));
                    emit(&output, text)
                }
            }
        }
        Command::Certify {
            inputs,
            k,
            threshold,
            output,
        } => {
            let members: Vec<(String, red::SpectrumSource)> = inputs
                .iter()
                .map(|p| {
                    let label = p.display().to_string();
                    let src = match read_object(p)? {
                        obj @ ObjectJson::Graph { .. } => {
                            red::SpectrumSource::Graph(obj.into_graph()?)
                        }
                        obj @ ObjectJson::Hypergraph { .. } => {
                            red::SpectrumSource::Hypergraph(obj.into_hypergraph()?)
                        }
                        obj @ ObjectJson::Homsum { .. } => {
                            red::SpectrumSource::Hypergraph(obj.into_homsum()?.to_hypergraph()?)
                        }
                        other => {
                            return Err(Error::InvalidInput(format!(
                                "certify needs graphs or hypergraphs, found {}",
                                other.kind()
                            )))
                        }
                    };
                    Ok((label, src))
                })
                .collect::<Result<_, Error>>()?;
            let report = red::spectral_certificate(&members, k, threshold)?;
            let params = json!({"inputs": inputs, "k": k, "threshold": threshold});
            match output.format {
                Format::Json => emit(&output, envelope("certify", params, &report)),
                Format::Csv => {
                    let mut text = String::from("label,n_vertices,mu_k\n");
                    for m in &report.members {
                        text.push_str(&format!(
                            "{},{},{}\n",
                            m.label,
                            m.n_vertices,
                            fmt_f64(m.mu_k)
                        ));
                    }
                    text.push_str(&format!(
                        "# proxy,{}\n# granted,{}\n",
                        fmt_f64(report.proxy),
                        report.granted
                    ));
                    emit(&output, text)
                }
            }
        }
    }
}

fn matrix_name(m: MatrixArg) -> &'static str {
    match m {
        MatrixArg::Adjacency => "adjacency",
        MatrixArg::Laplacian => "normalized_laplacian",
    }
}

/// Evaluate a named reduction across every member of a family directory
/// and report per-n rows with a trend verdict.
fn reduce_family(
    dir: &std::path::Path,
    named: Option<&str>,
    h: Option<usize>,
    k: Option<usize>,
    seed: u64,
    output: &OutputArgs,
) -> Result<(), Error> {
    let name = named.ok_or_else(|| {
        Error::InvalidInput("family reduce needs --named (per-member partitions)".into())
    })?;
    let manifest: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.join("index.json"))
            .map_err(|e| Error::InvalidInput(format!("cannot read index.json: {e}")))?,
    )
    .map_err(|e| Error::InvalidInput(format!("malformed index.json: {e}")))?;
    let members = manifest["members"]
        .as_array()
        .ok_or_else(|| Error::InvalidInput("index.json has no members".into()))?;
    let mut rows = Vec::new();
    for member in members {
        let n = member["n"]
            .as_u64()
            .ok_or_else(|| Error::InvalidInput("member without n".into()))?
            as usize;
        let path = dir.join(
            member["path"]
                .as_str()
                .ok_or_else(|| Error::InvalidInput("member without path".into()))?,
        );
        let z = read_object(&path)?.into_homsum()?;
        let p = named_partition(name, z.n_vertices(), h, k, seed)?;
        let rep = red::evaluate_partition(&z, &p)?;
        rows.push(red::FamilyRow {
            n,
            m: rep.m,
            captured: rep.captured_fraction,
            max_box: rep.max_box_fraction,
        });
    }
    let report = red::family_trend(rows);
    let params = json!({"input": dir, "named": name, "h": h, "k": k, "seed": seed});
    match output.format {
        Format::Json => emit(output, envelope("reduce", params, &report)),
        Format::Csv => {
            let mut text = String::from("n,candidate,m,captured,max_box\n");
            for r in &report.rows {
                text.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.n,
                    name,
                    r.m,
                    fmt_f64(r.captured),
                    fmt_f64(r.max_box)
                ));
            }
            text.push_str(&format!("# verdict,{:?}\n", report.verdict));
            emit(output, text)
        }
    }
}

/// Build one file per member of a parameter range into a directory, plus
/// an index.json manifest describing the family.
fn build_family_dir(
    descriptor: &serde_json::Value,
    range: &str,
    output: &OutputArgs,
) -> Result<(), Error> {
    let (lo, hi) = range
        .split_once(':')
        .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
        .filter(|(a, b)| a <= b)
        .ok_or_else(|| Error::InvalidInput(format!("bad --range `{range}`, expected lo:hi")))?;
    let dir = output
        .out
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("--range needs --out <directory>".into()))?;
    std::fs::create_dir_all(dir)
        .map_err(|e| Error::InvalidInput(format!("cannot create {}: {e}", dir.display())))?;
    let family = descriptor["family"].as_str().unwrap_or("family");
    let base_seed = descriptor.get("seed").and_then(|s| s.as_u64()).unwrap_or(0);
    let mut members = Vec::new();
    for n in lo..=hi {
        let mut desc = descriptor.clone();
        desc["n"] = json!(n);
        desc["seed"] = json!(chaosgraph::rng::derive_seed(base_seed, n as u64));
        let object = build_family(&desc)?;
        let name = format!("{family}-{n}.json");
        std::fs::write(dir.join(&name), object.to_json())
            .map_err(|e| Error::InvalidInput(format!("cannot write {name}: {e}")))?;
        members.push(json!({"n": n, "path": name}));
    }
    let manifest = serde_json::to_string_pretty(&json!({
        "family": family,
        "descriptor": descriptor,
        "members": members,
    }))
    .expect("manifest serialization");
    std::fs::write(dir.join("index.json"), manifest)
        .map_err(|e| Error::InvalidInput(format!("cannot write index.json: {e}")))?;
    Ok(())
}

fn get_usize(v: &serde_json::Value, key: &str) -> Result<usize, Error> {
    v.get(key)
        .and_then(|x| x.as_u64())
        .map(|x| x as usize)
        .ok_or_else(|| Error::InvalidInput(format!("family needs integer parameter `{key}`")))
}

fn get_f64(v: &serde_json::Value, key: &str) -> Result<f64, Error> {
    v.get(key)
        .and_then(|x| x.as_f64())
        .ok_or_else(|| Error::InvalidInput(format!("family needs numeric parameter `{key}`")))
}

fn build_family(desc: &serde_json::Value) -> Result<ObjectJson, Error> {
    let family = desc
        .get("family")
        .and_then(|f| f.as_str())
        .ok_or_else(|| Error::InvalidInput("descriptor needs a `family` string".into()))?;
    let seed = desc.get("seed").and_then(|s| s.as_u64()).unwrap_or(0);
    match family {
        "complete" => Ok((&cons::complete(get_usize(desc, "n")?)?).into()),
        "complete-bipartite" => Ok((&cons::complete_bipartite(get_usize(desc, "n")?)?).into()),
        "hypercube" => Ok((&cons::hypercube(get_usize(desc, "n")?)?).into()),
        "rook" => Ok((&cons::rook(get_usize(desc, "q")?, get_usize(desc, "m")?)?).into()),
        "rook-variant" => {
            let symmetrize = desc
                .get("symmetrize")
                .and_then(|s| s.as_bool())
                .unwrap_or(true);
            Ok(
                (&cons::rook_variant(get_usize(desc, "n")?, get_usize(desc, "kn")?, symmetrize)?)
                    .into(),
            )
        }
        "grid" => {
            let layout =
                cons::GridLayout::contiguous(get_usize(desc, "n")?, get_f64(desc, "beta")?)?;
            Ok((&cons::grid_family(&layout)?).into())
        }
        "grid-homsum" => {
            let layout =
                cons::GridLayout::contiguous(get_usize(desc, "n")?, get_f64(desc, "beta")?)?;
            Ok((&cons::grid_homsum(&layout)?).into())
        }
        "union-isolated" => {
            Ok((&cons::union_with_isolated(get_usize(desc, "n")?, get_usize(desc, "m")?)?).into())
        }
        "fractional-product" => {
            // The connected Figure 5(a) partition unless explicit blocks
            // are given in the descriptor.
            let fp = if let Some(blocks) = desc.get("blocks") {
                serde_json::from_value::<cons::FractionalPartition>(json!({
                    "d": get_usize(desc, "d")?,
                    "b": get_usize(desc, "b")?,
                    "blocks": blocks,
                }))
                .map_err(|e| Error::InvalidInput(format!("bad blocks: {e}")))?
            } else {
                cons::FractionalPartition::figure_5a()
            };
            Ok((&cons::fractional_product(get_usize(desc, "n")?, &fp)?).into())
        }
        "triangle-hypergraph" => Ok((&cons::triangle_hypergraph(get_usize(desc, "n")?)?).into()),
        "rooklike-hypergraph" => {
            Ok((&cons::rooklike_hypergraph(get_usize(desc, "n")?, get_usize(desc, "d")?)?).into())
        }
        "blocks" => {
            Ok((&cons::disjoint_blocks(get_usize(desc, "n")?, get_usize(desc, "d")?)?).into())
        }
        "random-support" => {
            let d = get_usize(desc, "d")?;
            let symmetrize = desc
                .get("symmetrize")
                .and_then(|s| s.as_bool())
                .unwrap_or(d == 2);
            Ok((&cons::random_support(
                get_usize(desc, "n")?,
                get_f64(desc, "alpha")?,
                d,
                seed,
                symmetrize,
            )?)
                .into())
        }
        other => Err(Error::InvalidInput(format!(
            "unknown family `{other}`; known: complete, complete-bipartite, hypercube, rook, \
             rook-variant, grid, grid-homsum, union-isolated, fractional-product, \
             triangle-hypergraph, rooklike-hypergraph, blocks, random-support"
        ))),
    }
}

fn named_partition(
    name: &str,
    n_vertices: usize,
    h: Option<usize>,
    k: Option<usize>,
    seed: u64,
) -> Result<Partition, Error> {
    let square_side = || -> Result<usize, Error> {
        let side = (n_vertices as f64).sqrt().round() as usize;
        if side * side != n_vertices {
            return Err(Error::InvalidInput(format!(
                "named reduction `{name}` needs a square vertex set, got {n_vertices}"
            )));
        }
        Ok(side)
    };
    match name {
        "hypercube-boxes" => {
            let bits = n_vertices.trailing_zeros() as usize;
            if 1usize << bits != n_vertices {
                return Err(Error::InvalidInput(format!(
                    "hypercube boxes need a power-of-two vertex set, got {n_vertices}"
                )));
            }
            let h = h.ok_or_else(|| Error::InvalidInput("hypercube-boxes needs --h".into()))?;
            red::hypercube_boxes(bits, h)
        }
        "rows" => red::row_blocks(square_side()?),
        "columns" => red::column_blocks(square_side()?),
        "kxk" => {
            let k = k.ok_or_else(|| Error::InvalidInput("kxk needs --k".into()))?;
            red::kxk_blocks(square_side()?, k)
        }
        "blocks" => {
            let d = k.ok_or_else(|| Error::InvalidInput("blocks needs --k = d".into()))?;
            red::disjoint_block_partition(n_vertices / d, d)
        }
        "random" => {
            let m = k.ok_or_else(|| Error::InvalidInput("random needs --k = m".into()))?;
            red::random_balanced_partition(n_vertices, m, seed)
        }
        other => Err(Error::InvalidInput(format!(
            "unknown named reduction `{other}`; known: hypercube-boxes, rows, columns, kxk, \
             blocks, random"
        ))),
    }
}
