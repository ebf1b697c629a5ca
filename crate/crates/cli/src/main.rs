use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use g2a_cli::{
    cmd_action, cmd_analyze, cmd_classify, cmd_enumerate, cmd_resolve, cmd_theta_equiv,
    cmd_validate, cmd_verify_action, Filter, ResolveTarget, VerifyTarget,
};

#[derive(Parser)]
#[command(
    name = "g2a",
    version,
    about = "Invariants, classification and G_a^2-actions of compactifications of the affine plane"
)]
struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    G2a,
    DelPezzo,
    Lt,
    Lc,
}

#[derive(Subcommand)]
enum Command {
    /// Check the key sequence properties, algebraicity and normal form.
    Validate { seq: String },
    /// Full report: invariants, moduli, resolution, classification.
    Analyze { seq: String },
    /// Singularity class by both routes, with the matched family.
    Classify { seq: String },
    /// Print the action τ_λ.
    Action {
        seq: String,
        /// A rational such as 3/4, or a symbol name.
        #[arg(long, default_value = "λ", allow_hyphen_values = true)]
        lambda: String,
    },
    /// Check the action axioms by exact composition.
    VerifyAction {
        #[arg(required_unless_present = "max_m", conflicts_with = "max_m")]
        seq: Option<String>,
        /// Check τ_λ for every m up to this bound.
        #[arg(long)]
        max_m: Option<usize>,
        /// Perturb one coefficient first; the check must then fail.
        #[arg(long)]
        inject_fault: bool,
    },
    /// Resolution schematic of a key sequence, or the resolution of a monomial curve.
    Resolve {
        #[arg(required_unless_present = "monomial", conflicts_with = "monomial")]
        seq: Option<String>,
        /// p/q for the curve u(v^p - u^q) = 0.
        #[arg(long)]
        monomial: Option<String>,
        /// Emit Graphviz DOT.
        #[arg(long)]
        dot: bool,
    },
    /// List primitive algebraic normal-form key sequences.
    Enumerate {
        #[arg(long)]
        max_omega0: i64,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        #[arg(long)]
        max_entry: Option<i64>,
        #[arg(long, value_enum)]
        filter: Option<FilterArg>,
    },
    /// Decide whether two θ vectors give isomorphic surfaces.
    ThetaEquiv {
        seq: String,
        #[arg(allow_hyphen_values = true)]
        theta: String,
        #[arg(allow_hyphen_values = true)]
        theta_prime: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    let outcome = match cli.command {
        Command::Validate { seq } => cmd_validate(&seq, json),
        Command::Analyze { seq } => cmd_analyze(&seq, json),
        Command::Classify { seq } => cmd_classify(&seq, json),
        Command::Action { seq, lambda } => cmd_action(&seq, &lambda, json),
        Command::VerifyAction {
            seq,
            max_m,
            inject_fault,
        } => {
            let target = match (seq, max_m) {
                (Some(s), _) => VerifyTarget::Sequence(s),
                (None, Some(m)) => VerifyTarget::MaxM(m),
                (None, None) => unreachable!("clap requires one of them"),
            };
            cmd_verify_action(&target, inject_fault, json)
        }
        Command::Resolve { seq, monomial, dot } => {
            let target = match (seq, monomial) {
                (Some(s), _) => ResolveTarget::Sequence(s),
                (None, Some(m)) => ResolveTarget::Monomial(m),
                (None, None) => unreachable!("clap requires one of them"),
            };
            cmd_resolve(&target, dot, json)
        }
        Command::Enumerate {
            max_omega0,
            max_len,
            max_entry,
            filter,
        } => {
            let filter = filter.map(|f| match f {
                FilterArg::G2a => Filter::G2a,
                FilterArg::DelPezzo => Filter::DelPezzo,
                FilterArg::Lt => Filter::Lt,
                FilterArg::Lc => Filter::Lc,
            });
            cmd_enumerate(max_omega0, max_len, max_entry, filter, json)
        }
        Command::ThetaEquiv {
            seq,
            theta,
            theta_prime,
        } => cmd_theta_equiv(&seq, &theta, &theta_prime, json),
    };
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(outcome.output.as_bytes());
    ExitCode::from(outcome.code as u8)
}
