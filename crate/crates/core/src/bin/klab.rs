use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;

use kloosterman_lab::counting::{count_j2k, count_j2k_prime, Backend};
use kloosterman_lab::expsums::{
    archimedean_bilinear, archimedean_gamma, bilinear, choose_archimedean_k, complete_kloosterman,
    linear_incomplete, max_linear_over_a, multilinear, prime_sum_power_r, sampled_max_linear, CoeffSeq,
    ComplexSum, DENSE_SCAN_MAX_P,
};
use kloosterman_lab::harness::{brun_titchmarsh_report, run_sweep_streaming, verify, Format, RecordWriter, SweepConfig, TheoremId};
use kloosterman_lab::lattice::{minkowski_check, theorem5_lattice, LatticeBox, LatticeSpec};
use kloosterman_lab::polyalg::{build_solution_poly, resultant_bound_check, sylvester_resultant, IntPoly};
use kloosterman_lab::{Error, Interval, PrimeModulus, Result};

#[derive(Parser)]
#[command(name = "klab", version, about = "Exact counts and exponential sums over prime fields")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Output encoding; plain text when omitted.
    #[arg(long)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Energy J_2k of an inverse interval.
    Count {
        #[arg(long)]
        p: u64,
        /// Interval `a:N`, i.e. {a+1, ..., a+N}.
        #[arg(long)]
        interval: Interval,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value = "auto")]
        backend: Backend,
        /// Restrict the variables to primes in [1, N].
        #[arg(long)]
        primes_only: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate one exponential sum.
    Expsum {
        #[arg(value_enum)]
        kind: SumKind,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 1)]
        a: u64,
        #[arg(long, default_value_t = 0)]
        b: u64,
        /// Interval `a:N`; repeat for bilinear and multilinear sums.
        #[arg(long)]
        interval: Vec<Interval>,
        /// Number of variables when a single interval is repeated.
        #[arg(long)]
        n: Option<usize>,
        /// Power r of the prime sum.
        #[arg(long, default_value_t = 1)]
        r: u32,
        /// Length N of the prime sum or Archimedean ranges.
        #[arg(long = "N")]
        len: Option<u64>,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        xi: f64,
        /// Sampled coefficients when the modulus is too large for the full scan.
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Point count and successive minima of a congruence lattice in a box.
    Lattice {
        #[arg(long)]
        p: u64,
        /// 2D lattice λu ≡ v.
        #[arg(long)]
        lambda: Option<u64>,
        /// 3D lattice c1 u + c2 v + w ≡ 0, given as `c1,c2`.
        #[arg(long, value_delimiter = ',')]
        planar: Vec<u64>,
        /// Box bounds, comma separated.
        #[arg(long, value_delimiter = ',')]
        bounds: Vec<i64>,
        /// Use the box (N^k, kN^{k-1}) with this N.
        #[arg(long = "N")]
        len: Option<u64>,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Sylvester resultant, solution polynomials and the resultant bound.
    Resultant {
        /// Coefficients of P, highest degree first.
        #[arg(long = "poly-p", value_delimiter = ',', allow_hyphen_values = true)]
        poly_p: Vec<i64>,
        /// Coefficients of Q, highest degree first.
        #[arg(long = "poly-q", value_delimiter = ',', allow_hyphen_values = true)]
        poly_q: Vec<i64>,
        /// Build P from a tuple (x_1, ..., x_2k) instead.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        solution: Vec<i64>,
        /// N for the bound check; omitted means no check.
        #[arg(long = "N")]
        len: Option<u64>,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        sigma: Ratio<i64>,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        theta: Ratio<i64>,
        #[arg(long, default_value_t = 1_000_000)]
        cap: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Run a parameter sweep against one theorem.
    Sweep {
        #[arg(long)]
        theorem: Option<TheoremId>,
        /// JSON sweep configuration; flags given on the command line override it.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        p: Vec<u64>,
        #[arg(long = "N", value_delimiter = ',')]
        lengths: Vec<u64>,
        #[arg(long, value_delimiter = ',')]
        k: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        n: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        offset: Vec<u64>,
        /// Interval `a:N`; adds its offset and length to the grid.
        #[arg(long)]
        interval: Vec<Interval>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        xi: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        theta: Vec<f64>,
        #[arg(long)]
        backend: Option<Backend>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        slack: Option<f64>,
        /// Write 0 in the seconds column; reruns then differ only in the header line.
        #[arg(long)]
        no_timings: bool,
        #[arg(long, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an invariant suite: oracle, identities, lattice, weil, transfer or all.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Empirical Brun–Titchmarsh constants for q near x^θ.
    BtReport {
        #[arg(long)]
        x: u64,
        #[arg(long, value_delimiter = ',')]
        theta: Vec<f64>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SumKind {
    Linear,
    Max,
    Bilinear,
    Multilinear,
    Prime,
    Complete,
    Archimedean,
}

type Row = Vec<(&'static str, String)>;

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| Error::Resource(format!("{}: {e}", path.display())))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn emit(output: &Output, rows: &[Row]) -> Result<()> {
    let io_err = |e: io::Error| Error::Resource(e.to_string());
    let mut w = sink(&output.out)?;
    match output.format {
        None => {
            for (i, row) in rows.iter().enumerate() {
                if i > 0 {
                    writeln!(w).map_err(io_err)?;
                }
                for (k, v) in row {
                    writeln!(w, "{k}: {v}").map_err(io_err)?;
                }
            }
        }
        Some(Format::Json) => {
            let objs: Vec<serde_json::Map<String, serde_json::Value>> = rows
                .iter()
                .map(|r| r.iter().map(|(k, v)| (k.to_string(), v.clone().into())).collect())
                .collect();
            let value = if objs.len() == 1 { serde_json::json!(objs[0]) } else { serde_json::json!(objs) };
            writeln!(w, "{}", serde_json::to_string_pretty(&value).expect("plain strings")).map_err(io_err)?;
        }
        Some(Format::Csv) => {
            let mut cw = csv::Writer::from_writer(w);
            if let Some(first) = rows.first() {
                cw.write_record(first.iter().map(|(k, _)| *k))
                    .map_err(|e| Error::Resource(e.to_string()))?;
            }
            for r in rows {
                cw.write_record(r.iter().map(|(_, v)| v.as_str()))
                    .map_err(|e| Error::Resource(e.to_string()))?;
            }
            cw.flush().map_err(io_err)?;
            return Ok(());
        }
    }
    w.flush().map_err(io_err)
}

fn prime(p: Option<u64>) -> Result<PrimeModulus> {
    PrimeModulus::new(p.ok_or_else(|| Error::Config("--p is required".into()))?)
}

fn sum_row(s: &ComplexSum) -> Row {
    vec![
        ("re", s.re().to_string()),
        ("im", s.im().to_string()),
        ("modulus", s.modulus().to_string()),
        ("terms", s.terms.to_string()),
        ("normalized", s.normalized().to_string()),
    ]
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Count { p, interval, k, backend, primes_only, output } => {
            let p = PrimeModulus::new(p)?;
            let rep = if primes_only {
                count_j2k_prime(interval.len(), k, p, backend)?
            } else {
                count_j2k(&interval, k, p, backend)?
            };
            emit(
                &output,
                &[vec![
                    ("J", rep.count.to_string()),
                    ("N", rep.n.to_string()),
                    ("k", rep.k.to_string()),
                    ("p", rep.p.to_string()),
                    ("predicted_exponent", rep.predicted_exponent.to_string()),
                    ("measured_exponent", rep.measured_exponent.to_string()),
                    ("seconds", rep.wall_time.as_secs_f64().to_string()),
                ]],
            )?;
        }
        Command::Expsum { kind, p, a, b, interval, n, r, len, xi, samples, seed, output } => {
            let first = || {
                interval
                    .first()
                    .copied()
                    .ok_or_else(|| Error::Config("--interval is required".into()))
            };
            let row = match kind {
                SumKind::Linear => sum_row(&linear_incomplete(a, &first()?, prime(p)?)?),
                SumKind::Max => {
                    let pm = prime(p)?;
                    let iv = first()?;
                    let ((a_star, m), scan) = if pm.get() <= DENSE_SCAN_MAX_P {
                        (max_linear_over_a(&iv, pm)?, "dft".to_string())
                    } else {
                        (sampled_max_linear(&iv, pm, samples, seed)?, format!("sampled({samples})"))
                    };
                    vec![("a_star", a_star.to_string()), ("magnitude", m.to_string()), ("scan", scan)]
                }
                SumKind::Bilinear | SumKind::Multilinear => {
                    let pm = prime(p)?;
                    let ivs: Vec<Interval> = match (interval.len(), n) {
                        (1, Some(n)) => vec![interval[0]; n],
                        (0, _) => return Err(Error::Config("--interval is required".into())),
                        _ => interval.clone(),
                    };
                    let cs: Vec<CoeffSeq> = ivs.iter().map(|i| CoeffSeq::ones(i.len() as usize)).collect();
                    if matches!(kind, SumKind::Bilinear) {
                        if ivs.len() != 2 {
                            return Err(Error::Config("bilinear needs two intervals".into()));
                        }
                        sum_row(&bilinear(a, &ivs[0], &ivs[1], &cs[0], &cs[1], pm)?)
                    } else {
                        sum_row(&multilinear(a, &ivs, &cs, pm)?)
                    }
                }
                SumKind::Prime => {
                    let len = len.ok_or_else(|| Error::Config("--N is required".into()))?;
                    sum_row(&prime_sum_power_r(a, len, r, prime(p)?)?)
                }
                SumKind::Complete => sum_row(&complete_kloosterman(a, b, prime(p)?)),
                SumKind::Archimedean => {
                    let len = len.ok_or_else(|| Error::Config("--N is required".into()))?;
                    let mut row = sum_row(&archimedean_bilinear(xi, len, len));
                    let ratio = xi.abs() / (len * len) as f64;
                    if ratio > 1.0 && len >= 2 {
                        let k = choose_archimedean_k(ratio, len)?;
                        row.push(("k", k.to_string()));
                        row.push(("gamma", archimedean_gamma(xi, len, len, k, k)?.to_string()));
                    }
                    row
                }
            };
            emit(&output, &[row])?;
        }
        Command::Lattice { p, lambda, planar, bounds, len, k, output } => {
            let pm = PrimeModulus::new(p)?;
            let (spec, body, class) = if let Some(n) = len {
                let lam = lambda.ok_or_else(|| Error::Config("--lambda is required with --N".into()))?;
                let t = theorem5_lattice(lam, n, k, pm)?;
                let class = if t.in_omega_prime { "mu2<=1" } else { "mu2>1" };
                (t.lattice, t.body, Some(class))
            } else {
                let spec = match (lambda, planar.as_slice()) {
                    (Some(l), []) => LatticeSpec::gamma(l, pm),
                    (None, [c1, c2]) => LatticeSpec::planar3(*c1, *c2, pm),
                    _ => return Err(Error::Config("give either --lambda or --planar c1,c2".into())),
                };
                (spec, LatticeBox::from_ints(&bounds)?, None)
            };
            let rep = minkowski_check(&spec, &body)?;
            let minima: Vec<String> = rep.minima.iter().map(|m| m.to_string()).collect();
            let mut row = vec![
                ("lattice", spec.to_string()),
                ("points", rep.count.to_string()),
                ("minima", minima.join(" ")),
                ("point_bound", rep.lemma_rhs.to_string()),
                ("minima_product", rep.corollary_lhs.to_string()),
                ("minima_product_bound", rep.corollary_rhs.to_string()),
                ("pass", rep.pass().to_string()),
            ];
            if let Some(c) = class {
                row.push(("class", c.to_string()));
            }
            emit(&output, &[row])?;
            if !rep.pass() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Resultant { poly_p, poly_q, solution, len, sigma, theta, cap, output } => {
            let desc = |c: &[i64]| IntPoly::from_descending(c.iter().map(|&x| x.into()).collect());
            let pp = if !solution.is_empty() { build_solution_poly(&solution)? } else { desc(&poly_p) };
            let mut row = vec![("P", pp.to_string())];
            if !poly_q.is_empty() {
                let qq = desc(&poly_q);
                row.push(("Q", qq.to_string()));
                row.push(("resultant", sylvester_resultant(&pp, &qq)?.to_string()));
                if let Some(n) = len {
                    let rep = resultant_bound_check(&pp, &qq, n, sigma, theta, cap)?;
                    row.push(("exponent", rep.exponent.to_string()));
                    row.push(("bound", rep.bound.to_string()));
                    row.push(("ratio", rep.ratio.to_string()));
                }
            }
            emit(&output, &[row])?;
        }
        Command::Sweep {
            theorem,
            config,
            p,
            lengths,
            k,
            n,
            offset,
            interval,
            xi,
            theta,
            backend,
            seed,
            samples,
            slack,
            no_timings,
            format,
            out,
        } => {
            let mut cfg = match &config {
                Some(path) => {
                    let f = File::open(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
                    serde_json::from_reader(f).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
                }
                None => SweepConfig::new(theorem.ok_or_else(|| Error::Config("--theorem is required".into()))?),
            };
            if let Some(t) = theorem {
                cfg.theorem = t;
            }
            let mut lengths = lengths;
            let mut offset = offset;
            for iv in &interval {
                lengths.push(iv.len());
                offset.push(iv.offset());
            }
            set(&mut cfg.primes, p);
            set(&mut cfg.lengths, lengths);
            set(&mut cfg.ks, k);
            set(&mut cfg.ns, n);
            set(&mut cfg.offsets, offset);
            set(&mut cfg.xis, xi);
            set(&mut cfg.thetas, theta);
            cfg.backend = backend.unwrap_or(cfg.backend);
            cfg.seed = seed.unwrap_or(cfg.seed);
            cfg.samples = samples.unwrap_or(cfg.samples);
            cfg.slack = slack.unwrap_or(cfg.slack);
            cfg.timings &= !no_timings;
            cfg.validate()?;
            let mut writer = RecordWriter::new(format, sink(&out)?)?;
            run_sweep_streaming(&cfg, |r| writer.write(r))?;
            writer.finish()?;
        }
        Command::Verify { suite, seed } => {
            let report = verify(&suite, seed)?;
            print!("{report}");
            if !report.all_passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::BtReport { x, theta, output } => {
            let rows: Vec<Row> = brun_titchmarsh_report(x, &theta)?
                .into_iter()
                .map(|r| {
                    vec![
                        ("x", x.to_string()),
                        ("theta", r.theta.to_string()),
                        ("q", r.q.to_string()),
                        ("count", r.count.to_string()),
                        ("c_measured", r.c_measured.to_string()),
                    ]
                })
                .collect();
            emit(&output, &rows)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn set<T>(dst: &mut Vec<T>, src: Vec<T>) {
    if !src.is_empty() {
        *dst = src;
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Hypothesis(_) => 1,
        Error::Config(_) | Error::Domain(_) => 2,
        Error::Resource(_) => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("config error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
