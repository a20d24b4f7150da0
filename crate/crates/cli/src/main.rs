use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use reductive_core::chevalley::{all_subsets, check_adams_he};
use reductive_core::harness::checks::cabanes_report;
use reductive_core::harness::{run, RunConfig, Verdict, VerificationReport, CHECK_IDS};
use reductive_core::matrix::IntMatrix;
use reductive_core::rootsys::RootSystem;
use reductive_core::semisimple::{classify_torsion, verify_minimal_d_split};
use reductive_core::torus::{group_order, polynomial_order, FiniteTorus, FrobeniusTwist};
use reductive_core::weyl::{longest_element, WeylElement};

/// Root systems, Weyl and Tits groups, finite tori and the E6 verification suite.
#[derive(Parser, Debug)]
#[command(name = "reductive", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = ReportFormat::Text, global = true)]
    report: ReportFormat,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Structured,
}

#[derive(Args, Debug)]
struct TypeArg {
    /// Root system label, e.g. E6, A2+A2, D4.
    #[arg(long = "type", default_value = "E6")]
    ty: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cartan matrix, root counts, highest root and fundamental group.
    Rootsys {
        #[command(flatten)]
        ty: TypeArg,
    },
    /// Weyl group order and degrees; with --word, data of that element.
    Weyl {
        #[command(flatten)]
        ty: TypeArg,
        /// Simple reflections as 1-based labels, e.g. 1,3,4.
        #[arg(long, value_delimiter = ',')]
        word: Option<Vec<usize>>,
    },
    /// Check r(w_I)^2 = z_I in the simply connected Tits model.
    Tits {
        #[command(flatten)]
        ty: TypeArg,
        /// Subset I as 1-based labels; all subsets when omitted.
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<usize>>,
    },
    /// Finite torus for the twist w (times the order-2 diagram symmetry when epsilon = -1).
    Torus {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        epsilon: i8,
        #[arg(long, value_delimiter = ',')]
        word: Option<Vec<usize>>,
    },
    /// W-classes of n-torsion points of the adjoint dual torus.
    Semisimple {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long, default_value_t = 3)]
        n: i64,
        /// Also report the minimal d-split Levi of each class (twist 1 for d = 1, w0 for d = 2).
        #[arg(long)]
        d: Option<u32>,
        /// Only quasi-isolated classes.
        #[arg(long)]
        quasi_isolated: bool,
    },
    /// Quadratic-action sweep over the involution classes of the twisted Weyl group.
    Cabanes {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        q: Option<String>,
        #[arg(long, value_delimiter = ',')]
        q_list: Option<Vec<String>>,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        epsilon: i8,
    },
    /// Run named checks (`all` for every check); exit 1 on a genuine failure.
    Verify {
        /// Check ids.
        ids: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        q_list: Option<Vec<String>>,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        /// Print the available check ids.
        #[arg(long)]
        list: bool,
    },
}

/// Print a line; a closed pipe ends the process quietly.
fn emit(line: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{line}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}

/// Key-value records printed as text or as tab-separated `key=value` lines.
struct Records(Vec<Vec<(String, String)>>);

impl Records {
    fn new() -> Self {
        Records(Vec::new())
    }

    fn push(&mut self, fields: Vec<(&str, String)>) {
        self.0.push(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect());
    }

    fn print(&self, format: ReportFormat) {
        for rec in &self.0 {
            match format {
                ReportFormat::Text => {
                    for (k, v) in rec {
                        if v.contains('\n') {
                            emit(&format!("{k}:\n{v}"));
                        } else {
                            emit(&format!("{k}: {v}"));
                        }
                    }
                    emit("");
                }
                ReportFormat::Structured => {
                    let line: Vec<String> = rec.iter().map(|(k, v)| format!("{k}={}", v.replace('\n', "; "))).collect();
                    emit(&line.join("\t"));
                }
            }
        }
    }
}

fn parse_q(s: &str) -> Result<BigInt> {
    s.trim().parse::<BigInt>().with_context(|| format!("invalid q `{s}`"))
}

fn to_indices(phi: &RootSystem, labels: &[usize]) -> Result<Vec<usize>> {
    labels
        .iter()
        .map(|&l| {
            if l == 0 || l > phi.rank() {
                bail!("label {l} out of range 1..={}", phi.rank())
            }
            Ok(l - 1)
        })
        .collect()
}

fn labels(v: &[usize]) -> String {
    let s: Vec<String> = v.iter().map(|i| (i + 1).to_string()).collect();
    format!("[{}]", s.join(","))
}

fn order_two_symmetry(phi: &RootSystem) -> Option<Vec<usize>> {
    phi.diagram_automorphisms().into_iter().find(|s| {
        s.iter().enumerate().any(|(i, &j)| i != j) && s.iter().enumerate().all(|(i, &j)| s[j] == i)
    })
}

fn cmd_rootsys(ty: &str) -> Result<Records> {
    let phi = RootSystem::of_type(ty)?;
    let mut r = Records::new();
    r.push(vec![
        ("type", phi.label().to_string()),
        ("rank", phi.rank().to_string()),
        ("roots", phi.len().to_string()),
        ("positive", phi.num_positive().to_string()),
        ("highest_root", format!("{:?}", phi.highest_root())),
        ("fundamental_group", format!("{:?}", phi.fundamental_group())),
        ("weyl_order", phi.label().weyl_order().to_string()),
        ("cartan", phi.cartan().to_text().trim_end().to_string()),
    ]);
    Ok(r)
}

fn cmd_weyl(ty: &str, word: Option<&[usize]>) -> Result<Records> {
    let phi = RootSystem::of_type(ty)?;
    let all: Vec<usize> = (0..phi.rank()).collect();
    let w0 = longest_element(&phi, &all);
    let mut r = Records::new();
    r.push(vec![
        ("type", phi.label().to_string()),
        ("weyl_order", phi.label().weyl_order().to_string()),
        ("degrees", format!("{:?}", phi.label().0.iter().map(|c| c.degrees()).collect::<Vec<_>>())),
        ("group_order", group_order(phi.label()).to_string()),
        ("w0_length", w0.length().to_string()),
        ("w0_is_minus_one", (w0.matrix() == &IntMatrix::identity(phi.rank()).neg()).to_string()),
    ]);
    if let Some(word) = word {
        let w = WeylElement::from_word(&phi, &to_indices(&phi, word)?)?;
        r.push(vec![
            ("word", labels(&to_indices(&phi, word)?)),
            ("length", w.length().to_string()),
            ("order", w.order().to_string()),
            ("reduced_word", labels(&w.reduced_word(&phi))),
            ("polynomial_order", polynomial_order(&w.coroot_matrix(&phi))?.to_string()),
            ("matrix", w.matrix().to_text().trim_end().to_string()),
        ]);
    }
    Ok(r)
}

fn cmd_tits(ty: &str, subset: Option<&[usize]>) -> Result<(Records, bool)> {
    let phi = RootSystem::of_type(ty)?;
    let subsets = match subset {
        Some(s) => vec![to_indices(&phi, s)?],
        None => all_subsets(phi.rank()),
    };
    let mut r = Records::new();
    let mut ok = true;
    for s in subsets {
        let pass = check_adams_he(&phi, &s);
        ok &= pass;
        r.push(vec![
            ("type", phi.label().to_string()),
            ("I", labels(&s)),
            ("verdict", Verdict::from_bool(pass).to_string()),
        ]);
    }
    Ok((r, ok))
}

fn cmd_torus(ty: &str, q: &str, epsilon: i8, word: Option<&[usize]>) -> Result<Records> {
    let phi = RootSystem::of_type(ty)?;
    let q = parse_q(q)?;
    let w = match word {
        Some(word) => WeylElement::from_word(&phi, &to_indices(&phi, word)?)?,
        None => WeylElement::identity(&phi),
    };
    let m = match epsilon {
        1 => w.coroot_matrix(&phi),
        -1 => {
            let sigma = order_two_symmetry(&phi).ok_or_else(|| anyhow!("{ty} has no order-2 diagram symmetry"))?;
            w.compose(&phi, &WeylElement::diagram_symmetry(&phi, &sigma)?).coroot_matrix(&phi)
        }
        _ => bail!("epsilon must be 1 or -1"),
    };
    let t = FiniteTorus::new(FrobeniusTwist::new(m.clone(), q.clone(), epsilon)?)?;
    let c = polynomial_order(&m)?;
    let factors: Vec<String> = t.nontrivial_factors().iter().map(|d| d.to_string()).collect();
    let mut r = Records::new();
    r.push(vec![
        ("type", phi.label().to_string()),
        ("q", q.to_string()),
        ("epsilon", epsilon.to_string()),
        ("e", t.twist().e().to_string()),
        ("polynomial_order", c.to_string()),
        ("order", t.order().to_string()),
        ("det", t.det_order().to_string()),
        ("evaluated", c.eval(&q).to_string()),
        ("invariant_factors", format!("[{}]", factors.join(","))),
        ("two_part", t.two_part_order().to_string()),
    ]);
    Ok(r)
}

fn cmd_semisimple(ty: &str, n: i64, d: Option<u32>, quasi_only: bool) -> Result<Records> {
    let phi = RootSystem::of_type(ty)?;
    let all: Vec<usize> = (0..phi.rank()).collect();
    let mut r = Records::new();
    for class in classify_torsion(&phi, n)? {
        let c = &class.centralizer;
        if quasi_only && c.quasi_isolated != Some(true) {
            continue;
        }
        let mut rec = vec![
            ("type", phi.label().to_string()),
            ("n", n.to_string()),
            ("pairing", format!("{:?}", class.representative.pairing())),
            ("centralizer", c.label.clone()),
            ("orbit", c.orbit_size.to_string()),
            ("|W(s)|", c.stabilizer_order.to_string()),
            ("|A(s)|", c.component_order.to_string()),
            ("isolated", c.isolated.to_string()),
            ("quasi_isolated", c.quasi_isolated.map_or("unknown".into(), |b| b.to_string())),
        ];
        if let Some(d) = d {
            let twist = match d {
                1 => WeylElement::identity(&phi),
                2 => longest_element(&phi, &all),
                _ => bail!("--d must be 1 or 2"),
            };
            let rep = verify_minimal_d_split(&phi, &class.representative, &twist, d, None)?;
            rec.push(("levi", rep.levi_label.clone()));
            rec.push(("levi_torus", rep.torus_part.to_string()));
            rec.push(("centralizer_in_levi_is_torus", rep.centralizer_is_torus.to_string()));
        }
        r.push(rec);
    }
    Ok(r)
}

fn print_reports(reports: &[VerificationReport], format: ReportFormat) {
    for rep in reports {
        match format {
            ReportFormat::Text => emit(&rep.to_text()),
            ReportFormat::Structured => emit(&rep.to_structured()),
        }
    }
}

fn real_main(cli: Cli) -> Result<u8> {
    let format = cli.report;
    match cli.command {
        Command::Rootsys { ty } => cmd_rootsys(&ty.ty)?.print(format),
        Command::Weyl { ty, word } => cmd_weyl(&ty.ty, word.as_deref())?.print(format),
        Command::Tits { ty, subset } => {
            let (r, ok) = cmd_tits(&ty.ty, subset.as_deref())?;
            r.print(format);
            return Ok(u8::from(!ok));
        }
        Command::Torus { ty, q, epsilon, word } => cmd_torus(&ty.ty, &q, epsilon, word.as_deref())?.print(format),
        Command::Semisimple { ty, n, d, quasi_isolated } => cmd_semisimple(&ty.ty, n, d, quasi_isolated)?.print(format),
        Command::Cabanes { ty, q, q_list, epsilon } => {
            let mut qs: Vec<String> = q.into_iter().collect();
            qs.extend(q_list.unwrap_or_default());
            if qs.is_empty() {
                bail!("give --q or --q-list");
            }
            let mut reports = Vec::new();
            for q in &qs {
                let q = parse_q(q)?;
                reports.push(cabanes_report(&ty.ty, epsilon, &q)?);
            }
            print_reports(&reports, format);
            return Ok(u8::from(reports.iter().any(VerificationReport::is_failure)));
        }
        Command::Verify { ids, q_list, cache_dir, list } => {
            if list {
                for id in CHECK_IDS {
                    emit(id);
                }
                return Ok(0);
            }
            let mut config = RunConfig { cache_dir, ..RunConfig::default() };
            if let Some(qs) = q_list {
                config.q_list = qs.iter().map(|q| parse_q(q)).collect::<Result<_>>()?;
            }
            let outcome = run(&ids, &config)?;
            print_reports(&outcome.reports, format);
            return Ok(outcome.exit_code as u8);
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match real_main(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
