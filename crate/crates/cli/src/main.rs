mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::Failure;

#[derive(Parser, Debug)]
#[command(name = "cartanweil", version, about = "Transgression and universal string classes on compact Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Transgression τ(p), or its equivariant extension τ_G(p).
    Transgress {
        #[command(flatten)]
        common: Common,
        /// Emit the equivariantly closed extension.
        #[arg(long)]
        equivariant: bool,
    },
    /// The universal string class of p, compared against τ_G(p).
    StringUniversal {
        #[command(flatten)]
        common: Common,
        /// Path-fibration data (θ = μ = 0, g = 1) instead of the full
        /// universal data.
        #[arg(long)]
        based: bool,
        /// Curvature reading: `rederived` or `paper_display`.
        #[arg(long, default_value = "rederived")]
        variant: String,
    },
    /// Runs a verification suite and reports every check.
    Verify {
        #[command(flatten)]
        common: Common,
        /// algebra, weil, mq, transgression, string or all.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Builtin name (su2, su3, abelian:n) or path to an algebra JSON file.
    #[arg(long, default_value = "su2")]
    pub algebra: String,
    /// metric, metric-normalized, sym_power:k or trace:k.
    #[arg(long = "poly")]
    pub poly: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Oracle seed; CARTANWEIL_SEED takes precedence when set.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Oracle sample points.
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    /// Include wall times (runtime_ms) in the output.
    #[arg(long)]
    pub timings: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Latex,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Transgress { common, equivariant } => commands::transgress(&common, equivariant),
        Command::StringUniversal { common, based, variant } => commands::string_universal(&common, based, &variant),
        Command::Verify { common, suite } => commands::verify(&common, &suite),
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(if out.pass { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal invariant violated: {msg}");
            ExitCode::from(3)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let cli = Cli::try_parse_from(["cartanweil", "transgress"]).unwrap();
        let Command::Transgress { common, equivariant } = cli.command else { panic!("wrong subcommand") };
        assert!(!equivariant);
        assert_eq!(common.samples, 8);
        assert_eq!(common.format, Format::Text);
        assert_eq!(common.algebra, "su2");
        assert!(common.poly.is_none());
    }

    #[test]
    fn rejects_zero_samples_and_unknown_format() {
        assert!(Cli::try_parse_from(["cartanweil", "verify", "--samples", "0"]).is_err());
        assert!(Cli::try_parse_from(["cartanweil", "verify", "--format", "yaml"]).is_err());
    }

    #[test]
    fn string_universal_flags() {
        let cli = Cli::try_parse_from(["cartanweil", "string-universal", "--based", "--variant", "paper_display"]).unwrap();
        let Command::StringUniversal { based, variant, .. } = cli.command else { panic!("wrong subcommand") };
        assert!(based);
        assert_eq!(variant, "paper_display");
    }
}
