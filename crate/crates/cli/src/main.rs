use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use tbtensor::io::{hypergraph_from_json, normal_form_to_json, tensor_from_json, TensorJson};
use tbtensor::{
    blocked_partitions, classify_m_tensor, det_blocked, diagonal_blocks,
    exists_first_type_normal_form, is_blocked, is_z_tensor, left_k_inverse, normal_form_2nd,
    normal_form_3rd, right_k_inverse, shao_product, singularity_oracle, spectral_radius,
    spectrum_blocked, verify_inverse, BlockKind, Partition, Side, Tensor, DEFAULT_ORACLE_ITERS,
    DEFAULT_ORACLE_RESTARTS,
};

#[derive(Parser)]
#[command(
    name = "tbtensor",
    version,
    about = "Triangular blocked tensors: structure, products, spectra, inverses"
)]
struct Cli {
    /// Write the JSON result to this file instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TensorArg {
    /// Tensor JSON file.
    #[arg(long)]
    tensor: PathBuf,
}

#[derive(Args)]
struct BlockedArgs {
    #[command(flatten)]
    input: TensorArg,
    /// Block sizes, e.g. 1,2,1.
    #[arg(long)]
    partition: Partition,
    /// utb1, utb2, utb3, ltb1, ltb2, ltb3 or diag.
    #[arg(long)]
    kind: BlockKind,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormalType {
    #[value(name = "2nd")]
    Second,
    #[value(name = "3rd")]
    Third,
}

#[derive(Subcommand)]
enum Command {
    /// Whether the tensor is blocked of the given kind over the partition.
    Classify(BlockedArgs),
    /// Diagonal blocks over a partition, or every partition of a given kind.
    Blocks {
        #[command(flatten)]
        input: TensorArg,
        #[arg(long, required_unless_present = "kind", conflicts_with = "kind")]
        partition: Option<Partition>,
        #[arg(long)]
        kind: Option<BlockKind>,
        /// Smallest number of blocks when listing partitions.
        #[arg(long, default_value_t = 2)]
        min_blocks: usize,
    },
    /// The general tensor product A·B.
    Product { a: PathBuf, b: PathBuf },
    /// Determinant from the blocked formula.
    Det(BlockedArgs),
    /// Spectrum as a multiset from the blocked formula.
    Spectrum(BlockedArgs),
    /// Spectral radius of a nonnegative tensor.
    Rho {
        #[command(flatten)]
        input: TensorArg,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 10_000)]
        max_iter: usize,
        /// Accepted for uniformity; the iteration is deterministic.
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Numerical evidence for singularity: smallest ‖Ax‖ on the complex unit sphere.
    Oracle {
        #[command(flatten)]
        input: TensorArg,
        #[arg(long, default_value_t = DEFAULT_ORACLE_RESTARTS)]
        restarts: usize,
        #[arg(long, default_value_t = DEFAULT_ORACLE_ITERS)]
        iters: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// The unique left k-inverse.
    LeftInverse {
        #[command(flatten)]
        input: TensorArg,
        #[arg(short)]
        k: usize,
    },
    /// A right k-inverse.
    RightInverse {
        #[command(flatten)]
        input: TensorArg,
        #[arg(short)]
        k: usize,
    },
    /// Check that B is a left or right inverse of A.
    Verify {
        /// Candidate left inverse B (checks B·A).
        #[arg(long, required_unless_present = "right", conflicts_with = "right")]
        left: Option<PathBuf>,
        /// Candidate right inverse B (checks A·B).
        #[arg(long)]
        right: Option<PathBuf>,
        a: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Z-tensor and M-tensor classification.
    Mtensor {
        #[command(flatten)]
        input: TensorArg,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Permutation-similar normal form of the second or third type.
    NormalForm {
        #[command(flatten)]
        input: TensorArg,
        #[arg(long = "type", value_enum)]
        kind: NormalType,
    },
    /// Search for a first-type normal form with at least two blocks.
    FirstTypeNormal {
        #[command(flatten)]
        input: TensorArg,
    },
    /// Spectral radius of a uniform hypergraph's adjacency tensor, per component.
    HypergraphRho {
        /// Hypergraph JSON file.
        #[arg(long)]
        edges: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 10_000)]
        max_iter: usize,
    },
}

struct Failure {
    code: &'static str,
    detail: String,
}

impl From<tbtensor::Error> for Failure {
    fn from(e: tbtensor::Error) -> Self {
        Failure {
            code: e.code(),
            detail: e.to_string(),
        }
    }
}

type Outcome = Result<Value, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: "IoError",
        detail: format!("{}: {e}", path.display()),
    })
}

fn load(path: &Path) -> Result<Tensor, Failure> {
    Ok(tensor_from_json(&read(path)?)?)
}

fn tensor_value(t: &Tensor) -> Value {
    serde_json::to_value(TensorJson::from(t)).expect("tensor serializes")
}

fn embed(s: String) -> Value {
    serde_json::from_str(&s).expect("library output is valid JSON")
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Classify(args) => {
            let a = load(&args.input.tensor)?;
            Ok(json!({ "result": is_blocked(&a, &args.partition, args.kind)? }))
        }
        Command::Blocks {
            input,
            partition,
            kind,
            min_blocks,
        } => {
            let a = load(&input.tensor)?;
            match (partition, kind) {
                (Some(p), _) => {
                    let blocks: Vec<Value> =
                        diagonal_blocks(&a, &p)?.iter().map(tensor_value).collect();
                    Ok(json!({ "blocks": blocks }))
                }
                (None, Some(kind)) => {
                    let found = blocked_partitions(&a, kind, min_blocks)?;
                    let parts: Vec<&[usize]> = found.iter().map(Partition::parts).collect();
                    Ok(json!({ "partitions": parts }))
                }
                (None, None) => unreachable!("clap requires one of partition or kind"),
            }
        }
        Command::Product { a, b } => {
            let c = shao_product(&load(&a)?, &load(&b)?)?;
            Ok(tensor_value(&c))
        }
        Command::Det(args) => {
            let a = load(&args.input.tensor)?;
            let det = det_blocked(&a, &args.partition, args.kind)?;
            let factors: Vec<(f64, u64)> = det.canonical().factors().to_vec();
            Ok(json!({ "value": det.value(), "factors": factors }))
        }
        Command::Spectrum(args) => {
            let a = load(&args.input.tensor)?;
            let s = spectrum_blocked(&a, &args.partition, args.kind)?;
            Ok(serde_json::to_value(s).expect("spectrum serializes"))
        }
        Command::Rho {
            input,
            tol,
            max_iter,
            seed: _,
        } => {
            let r = spectral_radius(&load(&input.tensor)?, tol, max_iter)?;
            Ok(json!({
                "rho": r.rho,
                "eigvec": r.eigvec,
                "iterations": r.iterations,
                "residual": r.residual,
            }))
        }
        Command::Oracle {
            input,
            restarts,
            iters,
            seed,
        } => {
            let r = singularity_oracle(&load(&input.tensor)?, restarts, iters, seed)?;
            let witness: Vec<[f64; 2]> = r.witness.iter().map(|z| [z.re, z.im]).collect();
            Ok(json!({
                "min_norm": r.min_norm,
                "witness": witness,
                "restarts_used": r.restarts_used,
            }))
        }
        Command::LeftInverse { input, k } => {
            Ok(tensor_value(&left_k_inverse(&load(&input.tensor)?, k)?))
        }
        Command::RightInverse { input, k } => {
            Ok(tensor_value(&right_k_inverse(&load(&input.tensor)?, k)?))
        }
        Command::Verify {
            left,
            right,
            a,
            tol,
        } => {
            let (path, side) = match (left, right) {
                (Some(b), _) => (b, Side::Left),
                (None, Some(b)) => (b, Side::Right),
                (None, None) => unreachable!("clap requires one of left or right"),
            };
            let (b, a) = (load(&path)?, load(&a)?);
            if a.dim() != b.dim() {
                return Err(tbtensor::Error::DimensionMismatch {
                    expected: a.dim(),
                    found: b.dim(),
                }
                .into());
            }
            Ok(json!({ "result": verify_inverse(&b, &a, side, tol) }))
        }
        Command::Mtensor { input, tol } => {
            let a = load(&input.tensor)?;
            if !is_z_tensor(&a) {
                return Ok(json!({
                    "z": false, "m": false, "nonsingular_m": false, "s": null, "rho": null,
                }));
            }
            let c = classify_m_tensor(&a, tol)?;
            Ok(json!({
                "z": true, "m": c.m, "nonsingular_m": c.nonsingular_m, "s": c.s, "rho": c.rho,
            }))
        }
        Command::NormalForm { input, kind } => {
            let a = load(&input.tensor)?;
            let nf = match kind {
                NormalType::Second => normal_form_2nd(&a),
                NormalType::Third => normal_form_3rd(&a)?,
            };
            Ok(embed(normal_form_to_json(&nf)))
        }
        Command::FirstTypeNormal { input } => {
            match exists_first_type_normal_form(&load(&input.tensor)?)? {
                Some((sigma, p)) => {
                    let image: Vec<usize> = sigma.image().iter().map(|i| i + 1).collect();
                    Ok(json!({ "sigma": image, "partition": p.parts() }))
                }
                None => Ok(json!("none")),
            }
        }
        Command::HypergraphRho {
            edges,
            tol,
            max_iter,
        } => {
            let h = hypergraph_from_json(&read(&edges)?)?;
            let whole = spectral_radius(&h.adjacency_tensor(), tol, max_iter)?.rho;
            let mut components = Vec::new();
            for c in h.connected_components() {
                let r = spectral_radius(&h.restrict(&c).adjacency_tensor(), tol, max_iter)?.rho;
                let vertices: Vec<usize> = c.members().iter().map(|v| v + 1).collect();
                components.push(json!({ "vertices": vertices, "rho": r }));
            }
            Ok(json!({ "rho": whole, "components": components }))
        }
    }
}

fn emit(value: &Value, output: Option<&Path>) -> Result<(), Failure> {
    let text = serde_json::to_string(value).expect("JSON values serialize");
    match output {
        Some(path) => fs::write(path, text + "\n").map_err(|e| Failure {
            code: "IoError",
            detail: format!("{}: {e}", path.display()),
        }),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli.command).and_then(|v| emit(&v, cli.output.as_deref()));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            println!("{}", json!({ "error": f.code, "detail": f.detail }));
            ExitCode::from(1)
        }
    }
}
