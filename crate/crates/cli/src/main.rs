//! Command-line front end.
//!
//! Exit codes: 0 success (amalgam found, certificate valid), 1 negative
//! answer (no amalgam, invalid certificate, failed construction), 2 search
//! budget or bounds exhausted, 3 bad input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use poset_wap::amalgam::{amalgam_exists, jep_join, max_nodes_from_env};
use poset_wap::dot::pair_dot;
use poset_wap::generators::{random_pa_extension, random_pa_pair};
use poset_wap::io::{parse_pa, parse_pair, to_json};
use poset_wap::lemma1::{lemma1_extend, Lemma1Bounds};
use poset_wap::witness::{base_pair, build_literal_witness, build_witness, proof_sketch, ObstructionCertificate};
use poset_wap::{Error, Generator, PaEmbedding, PaPair, PartialAutomorphism};

#[derive(Parser)]
#[command(name = "posetwap", version, about = "Posets with pairs of partial automorphisms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    F,
    G,
}

#[derive(Subcommand)]
enum Command {
    /// Joint embedding: the left pair entirely below the right one.
    Jep {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Extend one map to be free in an interval at the end of the orbit of `s`.
    Lemma1 {
        /// A pair file, or a single partial automorphism (`{"poset":…,"map":…}`).
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        s: u32,
        /// Which map of a pair to use.
        #[arg(long, value_enum, default_value = "f")]
        side: Side,
        /// Print the full stage-by-stage trace instead of a summary.
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value_t = 2)]
        slack: usize,
    },
    /// Build the amalgamation-failure witness over an extension of the base pair.
    WapDemo {
        /// Extension of the base pair; the base pair itself when omitted.
        #[arg(long)]
        atilde: Option<PathBuf>,
        /// Directory for JSON and DOT output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run the literal d-chain construction instead (it does not produce valid pairs).
        #[arg(long)]
        literal: bool,
    },
    /// Decide whether two extensions of a base pair amalgamate (inclusion embeddings).
    Amalgam {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        /// Node budget; defaults to $POSET_AMALGAM_MAX_NODES or 10^7.
        #[arg(long)]
        max_nodes: Option<u64>,
    },
    /// Re-check an obstruction certificate.
    Certify {
        #[arg(long)]
        cert: PathBuf,
    },
    /// Print seeded random pairs as JSON lines.
    Gen {
        #[arg(long, default_value_t = 10)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random moves applied on top of the base pair (with --base).
        #[arg(long, default_value_t = 6)]
        steps: usize,
        #[arg(long, default_value_t = 6)]
        max_points: usize,
        /// Extend the base pair instead of drawing free-standing pairs.
        #[arg(long)]
        base: bool,
    },
}

enum Failure {
    Input(String),
    Negative(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceLimit { .. } | Error::BoundExhausted { .. } => Failure::Budget(e.to_string()),
            Error::CertificateInvalid(_) | Error::InternalInvariantBroken(_) => Failure::Negative(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type CliResult = Result<ExitCode, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_pair(path: &Path) -> Result<PaPair, Failure> {
    parse_pair(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(dir: &Path, name: &str, text: &str) -> Result<(), Failure> {
    fs::write(dir.join(name), text).map_err(|e| Failure::Input(format!("{}: {e}", dir.join(name).display())))
}

fn jep(left: &Path, right: &Path) -> CliResult {
    let (l, r) = (load_pair(left)?, load_pair(right)?);
    let (joined, e1, e2) = jep_join(&l, &r)?;
    let out = serde_json::json!({
        "pair": joined,
        "left_embedding": e1.map,
        "right_embedding": e2.map,
    });
    println!("{}", to_json(&out));
    Ok(ExitCode::SUCCESS)
}

fn lemma1(input: &Path, s: u32, side: Side, trace: bool, slack: usize) -> CliResult {
    let text = read(input)?;
    let h: PartialAutomorphism = match parse_pa(&text) {
        Ok(h) => h,
        Err(_) => {
            let pair = parse_pair(&text).map_err(|e| Failure::Input(format!("{}: {e}", input.display())))?;
            pair.component(match side {
                Side::F => Generator::F,
                Side::G => Generator::G,
            })
        }
    };
    let tr = lemma1_extend(&h, s, Lemma1Bounds { slack })?;
    if trace {
        println!("{}", to_json(&tr));
    } else {
        let summary = serde_json::json!({
            "n": tr.n, "a": tr.a, "b": tr.b, "orbit": tr.orbit(), "result": tr.result,
        });
        println!("{}", to_json(&summary));
    }
    Ok(ExitCode::SUCCESS)
}

fn wap_demo(atilde: Option<&Path>, out: Option<&Path>, literal: bool) -> CliResult {
    let atilde = match atilde {
        Some(p) => load_pair(p)?,
        None => base_pair(),
    };
    let bounds = Lemma1Bounds::default();
    let w = if literal { build_literal_witness(&atilde, bounds)? } else { build_witness(&atilde, bounds)? };
    let sketch = proof_sketch(&w.certificate);
    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
        for (name, pair) in [("a0", &w.a0), ("a1", &w.a1), ("a2", &w.a2)] {
            write(dir, &format!("{name}.json"), &to_json(pair))?;
            write(dir, &format!("{name}.dot"), &pair_dot(pair, &name.to_uppercase()))?;
        }
        write(dir, "meta.json", &to_json(&w.meta))?;
        write(dir, "certificate.json", &to_json(&w.certificate))?;
        write(dir, "sketch.txt", &sketch)?;
    }
    println!("{}", to_json(&w.meta));
    print!("{sketch}");
    Ok(ExitCode::SUCCESS)
}

fn amalgam(base: &Path, left: &Path, right: &Path, max_nodes: Option<u64>) -> CliResult {
    let (a, b, c) = (load_pair(base)?, load_pair(left)?, load_pair(right)?);
    let eb = PaEmbedding::inclusion(&a, &b).map_err(|e| Failure::Input(format!("base does not embed in left: {e}")))?;
    let ec = PaEmbedding::inclusion(&a, &c).map_err(|e| Failure::Input(format!("base does not embed in right: {e}")))?;
    match amalgam_exists(&a, &b, &c, &eb, &ec, max_nodes.unwrap_or_else(max_nodes_from_env))? {
        Some(am) => {
            let out = serde_json::json!({
                "amalgam": am.pair, "left_embedding": am.from_b.map, "right_embedding": am.from_c.map,
            });
            println!("{}", to_json(&out));
            Ok(ExitCode::SUCCESS)
        }
        None => {
            println!("no amalgam");
            Ok(ExitCode::from(1))
        }
    }
}

fn certify(path: &Path) -> CliResult {
    let cert: ObstructionCertificate =
        serde_json::from_str(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    cert.check()?;
    println!("valid");
    print!("{}", proof_sketch(&cert));
    Ok(ExitCode::SUCCESS)
}

fn gen(count: u64, seed: u64, steps: usize, max_points: usize, base: bool) -> CliResult {
    for i in 0..count {
        let s = seed.wrapping_add(i);
        let pair = if base { random_pa_extension(&base_pair(), steps, s) } else { random_pa_pair(max_points, s) };
        println!("{}", serde_json::to_string(&pair).expect("pairs serialize"));
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Jep { left, right } => jep(left, right),
        Command::Lemma1 { input, s, side, trace, slack } => lemma1(input, *s, *side, *trace, *slack),
        Command::WapDemo { atilde, out, literal } => wap_demo(atilde.as_deref(), out.as_deref(), *literal),
        Command::Amalgam { base, left, right, max_nodes } => amalgam(base, left, right, *max_nodes),
        Command::Certify { cert } => certify(cert),
        Command::Gen { count, seed, steps, max_points, base } => gen(*count, *seed, *steps, *max_points, *base),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Negative(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
