use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

#[derive(Debug, Parser)]
#[command(name = "torusq", version, about = "Quantum invariants of torus knots")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub run: RunArgs,
}

/// Options shared by every subcommand.
#[derive(Debug, Args)]
pub struct RunArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Working precision in bits; 53 or less means double precision.
    #[arg(long, global = true, env = "TORUSQ_PRECISION")]
    pub precision: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct KnotArgs {
    #[arg(short, allow_negative_numbers = true)]
    pub m: i64,
    #[arg(short, allow_negative_numbers = true)]
    pub p: i64,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct ColorArg {
    /// Color (dimension of the representation), k >= 1.
    #[arg(short, allow_negative_numbers = true)]
    pub k: i64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Colored Jones ratio J_L/J_O at q = e^h.
    Jones {
        #[command(flatten)]
        knot: KnotArgs,
        #[command(flatten)]
        color: ColorArg,
        /// Complex h as "re,im" or "re".
        #[arg(long = "h", value_parser = parse_complex, allow_hyphen_values = true)]
        h: Complex64,
    },
    /// Kashaev invariant at h = 2πi/k.
    Kashaev {
        #[command(flatten)]
        knot: KnotArgs,
        #[command(flatten)]
        color: ColorArg,
    },
    /// Alexander polynomial at t.
    Alexander {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long = "t", value_parser = parse_complex, allow_hyphen_values = true)]
        t: Complex64,
    },
    /// Torsion function τ(z) = 2 sinh(mz) sinh(pz)/sinh(mpz).
    Torsion {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long = "z", value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
    },
    /// Exact Taylor coefficients of x·τ(x).
    Series {
        #[command(flatten)]
        knot: KnotArgs,
        /// Truncation order (even, at least 4).
        #[arg(long, default_value_t = 12)]
        order: usize,
    },
    /// Large-k expansion of the Kashaev invariant against its exact value.
    Expand {
        #[command(flatten)]
        knot: KnotArgs,
        #[command(flatten)]
        color: ColorArg,
        #[arg(long = "n-max", default_value_t = 3)]
        n_max: usize,
    },
    /// Gaussian sum against its integral along the rotated line.
    VerifyLemma1 {
        #[command(flatten)]
        knot: KnotArgs,
        #[command(flatten)]
        color: ColorArg,
        #[arg(long = "h", value_parser = parse_complex, allow_hyphen_values = true)]
        h: Complex64,
        /// Contour angle; defaults to arg(h)/2.
        #[arg(long, allow_negative_numbers = true)]
        phi: Option<f64>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Kashaev invariant against its integral along the rotated line.
    VerifyLemma2 {
        #[command(flatten)]
        knot: KnotArgs,
        #[command(flatten)]
        color: ColorArg,
        /// Contour angle in (0, π/2).
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4)]
        phi: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Contour shift past the poles: direct = shifted + residues.
    VerifyShift {
        #[command(flatten)]
        knot: KnotArgs,
        #[command(flatten)]
        color: ColorArg,
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4)]
        phi: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// |⟨L⟩_k| and log|⟨L⟩_k|/k over a range of k.
    VolumeScan {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long, default_value_t = 2)]
        kmin: u64,
        #[arg(long)]
        kmax: u64,
        #[arg(long, default_value_t = 1)]
        kstep: u64,
    },
}

/// `"re,im"` or `"re"`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parse = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|e| format!("`{t}` is not a number: {e}"))
    };
    let z = match s.split_once(',') {
        Some((re, im)) => Complex64::new(parse(re)?, parse(im)?),
        None => Complex64::new(parse(s)?, 0.0),
    };
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_parsing() {
        assert_eq!(parse_complex("0.05,0.2").unwrap(), Complex64::new(0.05, 0.2));
        assert_eq!(parse_complex("-1").unwrap(), Complex64::new(-1.0, 0.0));
        assert_eq!(parse_complex(" 1 , -2 ").unwrap(), Complex64::new(1.0, -2.0));
        assert!(parse_complex("1,x").is_err());
        assert!(parse_complex("inf").is_err());
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
