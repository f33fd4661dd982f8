use clap::{Parser, Subcommand, ValueEnum};
use ellipsoidal_core::linf::DEFAULT_LINF_BOUND;
use ellipsoidal_core::superpotential::Method;
use ellipsoidal_core::AspectRatio;

#[derive(Debug, Parser)]
#[command(
    name = "ellipsoidal",
    version,
    about = "Exact ellipsoidal superpotentials of CP^2"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lattice path Γ_0..Γ_k.
    Gamma {
        /// Aspect ratio: `inf` or `p/q`, read as p/q + δ.
        #[arg(long, value_parser = parse_aspect)]
        a: AspectRatio,
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Unordered series-reduced trees with d leaves.
    Trees {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=16))]
        d: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// T_d^a by one method.
    Compute {
        #[arg(long, value_parser = positive)]
        d: u64,
        #[arg(long, value_parser = parse_aspect)]
        a: AspectRatio,
        #[arg(long, value_parser = parse_method, default_value = "tree")]
        method: Method,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Largest d the linf method accepts.
        #[arg(long, default_value_t = DEFAULT_LINF_BOUND)]
        linf_bound: usize,
        /// Include wall-clock time (makes output non-reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Cross-validates all methods for d = 1..=d-max.
    Validate {
        #[arg(long, value_parser = positive)]
        d_max: u64,
        #[arg(long, value_parser = parse_aspect)]
        a: AspectRatio,
        #[arg(long, default_value_t = DEFAULT_LINF_BOUND)]
        linf_bound: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        timing: bool,
    },
    /// Profile of T_d over a > 1 and whether it is nondecreasing.
    Scan {
        #[arg(long, value_parser = positive)]
        d: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// T_d^{p/q} for reduced p/q > 1 with p + q = 3d.
    Integrality {
        #[arg(long, value_parser = positive)]
        d: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Tables of the ellipsoid morphism or its inverse.
    Morphism {
        #[arg(long, value_parser = parse_aspect)]
        a: AspectRatio,
        /// Number of basis elements on each side.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
        dim: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=8))]
        arity: u64,
        /// Dump the inverse instead.
        #[arg(long)]
        inverse: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn parse_aspect(s: &str) -> Result<AspectRatio, String> {
    s.parse()
        .map_err(|e: ellipsoidal_core::Error| e.to_string())
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: ellipsoidal_core::Error| {
        let names: Vec<&str> = Method::ALL.iter().map(Method::name).collect();
        format!("{e}; expected one of {}", names.join(", "))
    })
}

fn positive(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(d) if d > 64 => Err("must be at most 64".into()),
        Ok(d) => Ok(d),
        Err(e) => Err(e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("ellipsoidal").chain(args.iter().copied()))
    }

    #[test]
    fn compute_config() {
        let cli = parse(&["compute", "--d", "3", "--a", "inf", "--method", "tree"]).unwrap();
        match cli.command {
            Command::Compute {
                d,
                a,
                method,
                format,
                ..
            } => {
                assert_eq!(
                    (d, a, method, format),
                    (3, AspectRatio::Infinity, Method::Tree, Format::Json)
                );
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn gamma_config() {
        let cli = parse(&["gamma", "--a", "3/2", "--k", "7"]).unwrap();
        assert!(matches!(cli.command, Command::Gamma { k: 7, .. }));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse(&["compute", "--d", "0", "--a", "inf"]).is_err());
        assert!(parse(&["compute", "--d", "-1", "--a", "inf"]).is_err());
        assert!(parse(&["compute", "--d", "2", "--a", "3/0"]).is_err());
        assert!(parse(&["compute", "--d", "2", "--a", "x/2"]).is_err());
        assert!(parse(&["compute", "--d", "2", "--a", "inf", "--method", "magic"]).is_err());
        assert!(parse(&["compute", "--d", "2", "--a", "inf", "--bogus"]).is_err());
    }
}
