//! Command-line front end. [`run`] takes the full argument vector and returns
//! the exit code with the text to print: 0 on success or a consistent
//! verdict, 1 on an obstruction, 2 on malformed input.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::criteria::{self, MooMethod, ObstructionVerdict, L21_I5};
use crate::error::{Error, Result};
use crate::gauss::{g_r, gauss_sum, quantum_int, GaussSumSpec};
use crate::links::{j_invariant, periodic_lift, signature_counts, FramedBraidLink, LinkingMatrix};
use crate::moo::{moo_fast, moo_invariant, moo_invariant_parallel};
use crate::rings::{cyclotomic_poly, parse_fraction, reduce};

#[derive(Parser, Debug)]
#[command(name = "qperiod", version, about = "Quantum invariants and periodicity obstructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the cyclotomic polynomial Φ_k.
    Phi { k: u64 },
    /// Reduce a ring element into Λ_k.
    Reduce {
        #[arg(long)]
        order: u64,
        #[arg(long)]
        poly: String,
    },
    /// Print the quantum integer [n] in Λ_k.
    Qint {
        n: u64,
        #[arg(long)]
        order: u64,
    },
    /// Print Σ_{j<n} A^{a j²} in Λ_k.
    Gauss {
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        order: u64,
    },
    /// Print G_r and its sign against the U+/U- ratio.
    Gr {
        #[arg(long)]
        r: u64,
    },
    /// List the reduced powers of A in Λ_r.
    Powers {
        #[arg(long)]
        r: u64,
    },
    /// The SU(3) polynomial J of a braid closure.
    Jinv {
        #[arg(long)]
        braid: PathBuf,
        /// Also print the image in Λ_k.
        #[arg(long)]
        order: Option<u64>,
    },
    /// Linking matrix of a framed braid closure, as JSON.
    Lkmatrix {
        #[arg(long)]
        braid: PathBuf,
    },
    /// Eigenvalue sign counts of a linking matrix.
    Signature {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// The MOO invariant Z_N of a surgery presentation.
    Moo {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        fast: bool,
        /// Worker threads for the direct summation.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Branched-cover test: is the value ±A^s G_r^α mod p?
    #[command(name = "check-cor12")]
    CheckCor12 {
        #[arg(long)]
        value: String,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        p: u64,
    },
    /// I_r(M) ≡ I_r(M̄)^p G_r^α modulo (p, [3]^p - [3]).
    #[command(name = "check-thm11")]
    CheckThm11 {
        #[arg(long)]
        value: String,
        #[arg(long)]
        value_bar: String,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        p: u64,
    },
    /// J(L) ≡ J(L̄)^p modulo (p, [3]^p - [3]); the lift defaults to the p-fold lift.
    #[command(name = "check-thm41")]
    CheckThm41 {
        #[arg(long)]
        quotient: PathBuf,
        #[arg(long)]
        lift: Option<PathBuf>,
        #[arg(long)]
        p: u64,
    },
    /// Z_N(M) ≡ ±Z_N(M̄)^p mod p.
    #[command(name = "check-thm51")]
    CheckThm51 {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        matrix_bar: PathBuf,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        fast: bool,
    },
    /// Rerun the L(2,1) computation for r = 5.
    #[command(name = "repro-remark13")]
    ReproLensSpace,
}

/// Exit code and text of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub code: i32,
    pub text: String,
}

impl Report {
    fn ok(text: String) -> Self {
        Self { code: 0, text }
    }
}

pub fn run<I, T>(args: I) -> Report
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Report {
                code,
                text: e.to_string(),
            };
        }
    };
    match dispatch(cli.command) {
        Ok(report) => report,
        Err(e) => Report {
            code: 2,
            text: format!("error: {e}\n"),
        },
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn positive(name: &str, v: u64) -> Result<()> {
    if v == 0 {
        return Err(Error::Precondition(format!("{name} must be positive")));
    }
    Ok(())
}

fn verdict(v: &ObstructionVerdict) -> Report {
    Report {
        code: if v.satisfied { 0 } else { 1 },
        text: format!("{v}\n"),
    }
}

fn dispatch(command: Command) -> Result<Report> {
    let report = match command {
        Command::Phi { k } => {
            positive("k", k)?;
            Report::ok(format!("{}\n", cyclotomic_poly(k)))
        }
        Command::Reduce { order, poly } => {
            positive("order", order)?;
            Report::ok(format!("{}\n", parse_fraction(&poly, order)?))
        }
        Command::Qint { n, order } => {
            positive("order", order)?;
            Report::ok(format!("{}\n", quantum_int(n, order)))
        }
        Command::Gauss { a, n, order } => {
            positive("order", order)?;
            Report::ok(format!("{}\n", gauss_sum(GaussSumSpec::new(a, n, order))))
        }
        Command::Gr { r } => {
            let g = g_r(r)?;
            Report::ok(format!(
                "G_{r} = {}\nU+/U- ratio = {}\nepsilon = {}\n",
                g.value, g.ratio, g.sign
            ))
        }
        Command::Powers { r } => {
            let mut out = String::new();
            for (s, a) in criteria::powers_of_a_char0(r)?.iter().enumerate() {
                writeln!(out, "A^{s} = {a}").unwrap();
            }
            Report::ok(out)
        }
        Command::Jinv { braid, order } => {
            let link = FramedBraidLink::from_json(&read(&braid)?)?;
            let j = j_invariant(&link.braid)?;
            let mut out = format!("{j}\n");
            if let Some(k) = order {
                positive("order", k)?;
                writeln!(out, "{}", reduce(&j, k)).unwrap();
            }
            Report::ok(out)
        }
        Command::Lkmatrix { braid } => {
            let link = FramedBraidLink::from_json(&read(&braid)?)?;
            Report::ok(format!("{}\n", link.linking_matrix().to_json()))
        }
        Command::Signature { matrix } => {
            let m = LinkingMatrix::from_json(&read(&matrix)?)?;
            let s = signature_counts(&m);
            Report::ok(format!(
                "sigma_plus = {}\nsigma_minus = {}\nnullity = {}\nsignature = {}\n",
                s.sigma_plus,
                s.sigma_minus,
                s.nullity,
                s.signature()
            ))
        }
        Command::Moo {
            n,
            matrix,
            fast,
            jobs,
        } => {
            let m = LinkingMatrix::from_json(&read(&matrix)?)?;
            let z = match (fast, jobs) {
                (true, _) => moo_fast(&m, n)?,
                (false, 0 | 1) => moo_invariant(&m, n)?,
                (false, jobs) => moo_invariant_parallel(&m, n, jobs)?,
            };
            Report::ok(format!("{z}\n"))
        }
        Command::CheckCor12 { value, r, p } => {
            let v = parse_fraction(&value, 3 * r)?;
            verdict(&criteria::check_cor_1_2(&v, r, p)?)
        }
        Command::CheckThm11 {
            value,
            value_bar,
            r,
            p,
        } => {
            let v = parse_fraction(&value, 3 * r)?;
            let vbar = parse_fraction(&value_bar, 3 * r)?;
            verdict(&criteria::check_thm_1_1(&v, &vbar, r, p)?)
        }
        Command::CheckThm41 { quotient, lift, p } => {
            let quotient = FramedBraidLink::from_json(&read(&quotient)?)?.braid;
            let lift = match lift {
                Some(path) => FramedBraidLink::from_json(&read(&path)?)?.braid,
                None => periodic_lift(&quotient, p as usize)?,
            };
            if criteria::check_thm_4_1(&lift, &quotient, p)? {
                Report::ok("CONSISTENT\n".into())
            } else {
                Report {
                    code: 1,
                    text: "OBSTRUCTED\n".into(),
                }
            }
        }
        Command::CheckThm51 {
            matrix,
            matrix_bar,
            p,
            n,
            fast,
        } => {
            let b = LinkingMatrix::from_json(&read(&matrix)?)?;
            let bbar = LinkingMatrix::from_json(&read(&matrix_bar)?)?;
            let method = if fast { MooMethod::Fast } else { MooMethod::Brute };
            verdict(&criteria::check_thm_5_1(&b, &bbar, p, n, method)?)
        }
        Command::ReproLensSpace => {
            let report = criteria::repro_lens_space()?;
            let mut out = String::new();
            writeln!(out, "Phi_15 = {}", report.phi15).unwrap();
            for (s, a) in report.powers.iter().enumerate() {
                writeln!(out, "A^{s} = {a}").unwrap();
            }
            writeln!(out, "I_5(L(2,1)) = {L21_I5}").unwrap();
            writeln!(
                out,
                "characteristic 0: {}",
                if report.char0_member { "a power of A up to sign" } else { "not a power of A" }
            )
            .unwrap();
            for v in &report.verdicts {
                if v.satisfied {
                    writeln!(out, "p = {}: {v}", v.p).unwrap();
                } else {
                    writeln!(
                        out,
                        "p = {}: OBSTRUCTED: L(2,1) is not the {}-fold cyclic branched cover of S^3",
                        v.p, v.p
                    )
                    .unwrap();
                }
            }
            let pass = report.all_obstructed();
            writeln!(out, "{}", if pass { "PASS" } else { "FAIL" }).unwrap();
            Report {
                code: if pass { 0 } else { 1 },
                text: out,
            }
        }
    };
    Ok(report)
}
