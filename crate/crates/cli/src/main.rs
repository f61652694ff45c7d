use std::io::Write;
use std::net::{IpAddr, Ipv4Addr, SocketAddr};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tubular_cli::api::{self, Answer, ApiError, ApiResult};
use tubular_core::lgroup::WeightTriple;
use tubular_core::quiver::parse_sequence;
use tubular_core::syntax::parse_weights;

/// Exact computations on weighted projective lines of weight triple type,
/// and cluster-quiver mutation.
///
/// Quiver arguments are fixture names, paths to quiver JSON files, or
/// inline JSON. Exit codes: 0 success, 1 failed verification, 2 usage.
#[derive(Parser)]
#[command(name = "tubular", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Weights {
    /// Weight triple, e.g. 2,3,6.
    #[arg(long, value_parser = weights)]
    weights: WeightTriple,
}

#[derive(Args)]
struct Out {
    /// Print JSON instead of text, or write it to PATH.
    #[arg(long, num_args = 0..=1, value_name = "PATH")]
    json: Option<Option<PathBuf>>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Normal form (l1,l2,l3;l) of an L-expression.
    NormalForm {
        #[command(flatten)]
        w: Weights,
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        out: Out,
    },
    /// Degree map of an L-expression.
    Delta {
        #[command(flatten)]
        w: Weights,
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        out: Out,
    },
    /// dim Hom and dim Ext^1 from O(x) to O(y).
    HomDim {
        #[command(flatten)]
        w: Weights,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[command(flatten)]
        out: Out,
    },
    /// K0 class of a line bundle O(x) or of an extension bundle.
    K0Reduce {
        #[command(flatten)]
        w: Weights,
        #[arg(allow_hyphen_values = true)]
        object: String,
        #[command(flatten)]
        out: Out,
    },
    /// Euler form of two objects.
    Euler {
        #[command(flatten)]
        w: Weights,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[command(flatten)]
        out: Out,
    },
    /// Whether two extension bundles are isomorphic.
    BundleEq {
        #[command(flatten)]
        w: Weights,
        a: String,
        b: String,
        #[command(flatten)]
        out: Out,
    },
    /// Shift of an extension bundle in the stable category.
    Suspend {
        #[command(flatten)]
        w: Weights,
        bundle: String,
        /// Number of shifts, possibly negative.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        times: i64,
        #[command(flatten)]
        out: Out,
    },
    /// Injective hull and projective cover of an extension bundle.
    Hulls {
        #[command(flatten)]
        w: Weights,
        bundle: String,
        #[command(flatten)]
        out: Out,
    },
    /// Slope of a line or extension bundle.
    Slope {
        #[command(flatten)]
        w: Weights,
        #[arg(allow_hyphen_values = true)]
        object: String,
        #[command(flatten)]
        out: Out,
    },
    /// Mutate a quiver at one vertex.
    Mutate {
        quiver: String,
        vertex: i64,
        #[command(flatten)]
        out: Out,
    },
    /// Apply a mutation sequence such as 1,2,3.
    Apply {
        quiver: String,
        sequence: String,
        #[command(flatten)]
        out: Out,
    },
    /// Isomorphism test ignoring labels.
    Iso {
        q1: String,
        q2: String,
        #[command(flatten)]
        out: Out,
    },
    /// Shortest mutation sequence from source to target.
    Search {
        source: String,
        target: String,
        #[arg(long, default_value_t = 8)]
        max_depth: usize,
        #[command(flatten)]
        out: Out,
    },
    /// List fixtures, or show one.
    Fixtures {
        name: Option<String>,
        #[command(flatten)]
        out: Out,
    },
    /// Replay a tubular construction: 244, 236 or 333.
    Replay {
        kind: String,
        #[command(flatten)]
        out: Out,
    },
    /// Serve the JSON endpoints on loopback.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value_t = IpAddr::V4(Ipv4Addr::LOCALHOST))]
        host: IpAddr,
    },
}

fn weights(s: &str) -> Result<WeightTriple, String> {
    parse_weights(s).map_err(|e| e.to_string())
}

fn run(cmd: Cmd) -> ApiResult<(Answer, Out)> {
    Ok(match cmd {
        Cmd::NormalForm { w, expr, out } => (api::normal_form(w.weights, &expr)?, out),
        Cmd::Delta { w, expr, out } => (api::delta(w.weights, &expr)?, out),
        Cmd::HomDim { w, x, y, out } => (api::hom_dim(w.weights, &x, &y)?, out),
        Cmd::K0Reduce { w, object, out } => (api::k0_reduce(w.weights, &object)?, out),
        Cmd::Euler { w, a, b, out } => (api::euler(w.weights, &a, &b)?, out),
        Cmd::BundleEq { w, a, b, out } => (api::bundle_eq(w.weights, &a, &b)?, out),
        Cmd::Suspend { w, bundle, times, out } => (api::suspend(w.weights, &bundle, times)?, out),
        Cmd::Hulls { w, bundle, out } => (api::hulls(w.weights, &bundle)?, out),
        Cmd::Slope { w, object, out } => (api::slope(w.weights, &object)?, out),
        Cmd::Mutate { quiver, vertex, out } => (api::mutate(api::load_quiver(&quiver)?, vertex)?, out),
        Cmd::Apply { quiver, sequence, out } => {
            let seq = parse_sequence(&sequence)?;
            (api::apply(api::load_quiver(&quiver)?, &seq)?, out)
        }
        Cmd::Iso { q1, q2, out } => (api::iso(&api::load_quiver(&q1)?, &api::load_quiver(&q2)?)?, out),
        Cmd::Search { source, target, max_depth, out } => {
            (api::search(&api::load_quiver(&source)?, &api::load_quiver(&target)?, max_depth)?, out)
        }
        Cmd::Fixtures { name, out } => match name {
            Some(n) => (api::fixture_one(&n)?, out),
            None => (api::fixture_list(), out),
        },
        Cmd::Replay { kind, out } => (api::replay(&kind)?, out),
        Cmd::Serve { .. } => unreachable!("handled in main"),
    })
}

// a closed pipe downstream is not an error
fn emit(s: &str) {
    let mut o = std::io::stdout().lock();
    let _ = writeln!(o, "{}", s.trim_end());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Cmd::Serve { port, host } = cli.cmd {
        let rt = tokio::runtime::Runtime::new().expect("tokio runtime");
        return match rt.block_on(tubular_cli::http::serve(SocketAddr::new(host, port))) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        };
    }
    let (answer, out) = match run(cli.cmd) {
        Ok(r) => r,
        Err(e) => {
            let kind = match e {
                ApiError::NotFound(_) => "not found",
                ApiError::Invalid(_) => "invalid",
                ApiError::BadRequest(_) => "error",
            };
            eprintln!("{kind}: {e}");
            return ExitCode::from(2);
        }
    };
    match out.json {
        None => emit(&answer.text),
        Some(None) => emit(&answer.to_json_string()),
        Some(Some(path)) => {
            if let Err(e) = std::fs::write(&path, answer.to_json_string() + "\n") {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
            emit(&answer.text);
        }
    }
    if answer.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
