//! supersplit: exact split-grading analysis for Lie superalgebra pairs.
//!
//! File-driven: algebras and subalgebras come in as JSON documents with
//! rational coefficients as strings, every subcommand emits one
//! ReportDocument on stdout. Exit codes: 0 = ran (the verdict, including
//! "infeasible", lives in the payload), 2 = input error, 3 = internal
//! error. Output is byte-identical for a fixed input and tool version.

use std::collections::BTreeMap;
use std::fs;
use std::process::ExitCode;

use clap::{ArgAction, Parser, Subcommand, ValueEnum};

use supersplit_core::algebra::LieSuperalgebra;
use supersplit_core::exterior::{
    invariant_subspace, split_model_ranks, DegreeFilter, InvariancePart, ModuleSpace,
    ParityFilter,
};
use supersplit_core::grading;
use supersplit_core::mask::OddMask;
use supersplit_core::pbw::{Envelope, OddMultivector};
use supersplit_core::subalgebra::SubalgebraEmbedding;
use supersplit_core::{catalog, Parity};

use supersplit_cli::document::{AlgebraDocument, SubalgebraDocument};
use supersplit_cli::report::{
    field_doc, pbw_terms, ranks_payload, solution_doc, split_check_payload, AssumptionBlock,
    InputsEcho, Payload, ReportDocument,
};

#[derive(Parser)]
#[command(
    name = "supersplit",
    version,
    about = "Exact split-grading analysis for Lie superalgebra pairs (g, h)"
)]
struct Cli {
    /// Output format for the report on stdout
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Group-level invariance is computed Lie-algebraically, which assumes
    /// connected groups; passing `false` is rejected as unsupported
    #[arg(long, global = true, default_value_t = true, action = ArgAction::Set)]
    assume_connected: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Check the superalgebra axioms (and subalgebra closure, if given)
    Validate {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        subalgebra: Option<String>,
    },
    /// Emit the associated graded algebra: odd-odd brackets zeroed
    Gr {
        #[arg(long)]
        algebra: String,
    },
    /// Normal form, symmetrization or antipode of a word of generators
    Envelope {
        #[arg(long)]
        algebra: String,
        /// Comma-separated generator labels, e.g. `E2_1,E1_2`
        #[arg(long, value_delimiter = ',')]
        word: Vec<String>,
        #[arg(long, value_enum, default_value_t = EnvelopeOp::NormalForm)]
        op: EnvelopeOp,
    },
    /// Basis of the invariant fields of the chosen module
    Invariants {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        subalgebra: String,
        #[arg(long, value_enum, default_value_t = SpaceArg::Quotient)]
        space: SpaceArg,
        /// Which part of h imposes invariance
        #[arg(long, value_enum, default_value_t = InvarianceArg::H)]
        invariance: InvarianceArg,
        /// Keep only exterior degrees ≥ this bound
        #[arg(long, default_value_t = 0)]
        min_degree: usize,
        #[arg(long, value_enum, default_value_t = ParityArg::Any)]
        parity: ParityArg,
    },
    /// Ranks of the split model of the quotient, by exterior degree
    Ranks {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        subalgebra: String,
    },
    /// Full verdict: bracket criterion, then the exact grading solve
    SplitCheck {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        subalgebra: String,
    },
    /// Solve for gradings strictly invariant under h (in the full module)
    StrictInvariance {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        subalgebra: String,
    },
    /// Emit a catalog algebra (or one of its parabolics) as a document
    Catalog {
        /// One of: gl, osp12, abelian
        #[arg(long)]
        name: String,
        /// Integer parameters, e.g. `2,2` for gl(2|2)
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        params: Vec<usize>,
        /// For gl(m|n): emit the block parabolic for this flag `r,s` instead
        #[arg(long, value_delimiter = ',')]
        parabolic: Option<Vec<usize>>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EnvelopeOp {
    NormalForm,
    Gamma,
    Antipode,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpaceArg {
    Full,
    Quotient,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InvarianceArg {
    /// all of h
    H,
    /// the even part h₀ only
    H0,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ParityArg {
    Any,
    Even,
    Odd,
}

enum CliError {
    Input(String),
}

impl CliError {
    fn input(e: impl std::fmt::Display) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Reports are formatted per --format; bare documents (catalog output) are
/// printed as-is so they can be fed straight back in as input files.
enum Output {
    Report(ReportDocument),
    Document(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !cli.assume_connected {
        eprintln!(
            "error: --assume-connected=false is unsupported: all invariance conditions \
             are computed Lie-algebraically, which is only valid for connected groups"
        );
        return ExitCode::from(2);
    }
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| run(&cli))) {
        Ok(Ok(Output::Report(report))) => {
            let text = match cli.format {
                Format::Human => report.to_human(),
                Format::Machine => report.to_machine(),
            };
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Ok(Output::Document(text))) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Err(CliError::Input(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(_) => {
            // the default hook has already printed the panic message
            eprintln!("internal error");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Validate { algebra, subalgebra } => {
            cmd_validate(algebra, subalgebra.as_deref()).map(Output::Report)
        }
        Command::Gr { algebra } => cmd_gr(algebra).map(Output::Report),
        Command::Envelope { algebra, word, op } => {
            cmd_envelope(algebra, word, *op).map(Output::Report)
        }
        Command::Invariants {
            algebra,
            subalgebra,
            space,
            invariance,
            min_degree,
            parity,
        } => cmd_invariants(algebra, subalgebra, *space, *invariance, *min_degree, *parity)
            .map(Output::Report),
        Command::Ranks { algebra, subalgebra } => {
            cmd_ranks(algebra, subalgebra).map(Output::Report)
        }
        Command::SplitCheck { algebra, subalgebra } => {
            cmd_split_check(algebra, subalgebra).map(Output::Report)
        }
        Command::StrictInvariance { algebra, subalgebra } => {
            cmd_strict_invariance(algebra, subalgebra).map(Output::Report)
        }
        Command::Catalog {
            name,
            params,
            parabolic,
        } => cmd_catalog(name, params, parabolic.as_deref()),
    }
}

fn base_report(operation: &str, inputs: InputsEcho, assumptions: AssumptionBlock, payload: Payload) -> ReportDocument {
    ReportDocument {
        tool: "supersplit".to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        operation: operation.to_string(),
        inputs,
        assumptions,
        payload,
    }
}

fn load_algebra(path: &str) -> Result<(AlgebraDocument, LieSuperalgebra), CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read algebra file `{path}`: {e}")))?;
    let doc = AlgebraDocument::parse(&text).map_err(CliError::input)?;
    let alg = doc.to_algebra().map_err(CliError::input)?;
    Ok((doc, alg))
}

fn load_subalgebra(
    path: &str,
    alg: &LieSuperalgebra,
) -> Result<(SubalgebraDocument, SubalgebraEmbedding), CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read subalgebra file `{path}`: {e}")))?;
    let doc = SubalgebraDocument::parse(&text).map_err(CliError::input)?;
    let h = doc.to_embedding(alg).map_err(CliError::input)?;
    Ok((doc, h))
}

fn echo(
    alg: Option<(&LieSuperalgebra, &str)>,
    sub: Option<(&str, &str)>,
    options: BTreeMap<String, String>,
) -> InputsEcho {
    InputsEcho {
        algebra: alg.map(|(a, _)| a.name().to_string()),
        algebra_file: alg.map(|(_, f)| f.to_string()),
        subalgebra: sub.map(|(n, _)| n.to_string()),
        subalgebra_file: sub.map(|(_, f)| f.to_string()),
        word: None,
        options: if options.is_empty() { None } else { Some(options) },
    }
}

fn cmd_validate(algebra: &str, subalgebra: Option<&str>) -> Result<ReportDocument, CliError> {
    let (_, alg) = load_algebra(algebra)?;
    let report = alg.validate();
    let algebra_violations: Vec<String> = report
        .violations
        .iter()
        .map(|v| v.describe(&alg))
        .collect();
    let mut subalgebra_violations = Vec::new();
    let mut sub_echo = None;
    if let Some(path) = subalgebra {
        let (doc, h) = load_subalgebra(path, &alg)?;
        sub_echo = Some((doc.name.clone(), path.to_string()));
        for v in h.validate(&alg).violations {
            subalgebra_violations.push(format!(
                "bracket of spanning vectors {} and {} leaves the span",
                v.i, v.j
            ));
        }
    }
    let valid = algebra_violations.is_empty() && subalgebra_violations.is_empty();
    Ok(base_report(
        "validate",
        echo(
            Some((&alg, algebra)),
            sub_echo.as_ref().map(|(n, f)| (n.as_str(), f.as_str())),
            BTreeMap::new(),
        ),
        AssumptionBlock::new(None),
        Payload::Validation {
            valid,
            algebra_violations,
            subalgebra_violations,
        },
    ))
}

fn cmd_gr(algebra: &str) -> Result<ReportDocument, CliError> {
    let (_, alg) = load_algebra(algebra)?;
    let gr = alg.gr();
    Ok(base_report(
        "gr",
        echo(Some((&alg, algebra)), None, BTreeMap::new()),
        AssumptionBlock::new(None),
        Payload::Algebra {
            algebra: AlgebraDocument::from_algebra(&gr),
        },
    ))
}

fn cmd_envelope(
    algebra: &str,
    word: &[String],
    op: EnvelopeOp,
) -> Result<ReportDocument, CliError> {
    let (_, alg) = load_algebra(algebra)?;
    let env = Envelope::new(&alg);
    let indices: Vec<usize> = word
        .iter()
        .map(|l| {
            alg.index_of(l)
                .ok_or_else(|| CliError::Input(format!("unknown generator label `{l}`")))
        })
        .collect::<Result<_, _>>()?;
    let (op_name, element) = match op {
        EnvelopeOp::NormalForm => ("normal-form", env.normal_form(&indices)),
        EnvelopeOp::Antipode => ("antipode", env.antipode(&env.normal_form(&indices))),
        EnvelopeOp::Gamma => {
            let mut mask: OddMask = 0;
            let mut mv = OddMultivector::from_mask(0);
            let mut sign = 1i64;
            for &i in &indices {
                if alg.parity(i) != Parity::Odd {
                    return Err(CliError::Input(format!(
                        "gamma takes odd generators only; `{}` is even",
                        alg.label(i)
                    )));
                }
                let k = i - alg.n_even();
                match supersplit_core::mask::wedge(mask, 1u64 << k) {
                    Some((m, s)) => {
                        mask = m;
                        sign *= s as i64;
                    }
                    None => {
                        // repeated factor: the wedge is zero
                        mv = OddMultivector::zero();
                        sign = 0;
                        break;
                    }
                }
            }
            if sign != 0 {
                mv = OddMultivector::zero();
                mv.add_term(mask, supersplit_core::scalar::int(sign));
            }
            ("gamma", env.gamma_symmetrize(&mv))
        }
    };
    let mut inputs = echo(Some((&alg, algebra)), None, BTreeMap::new());
    inputs.word = Some(word.to_vec());
    Ok(base_report(
        "envelope",
        inputs,
        AssumptionBlock::new(None),
        Payload::Envelope {
            operation: op_name.to_string(),
            element: pbw_terms(&alg, &element),
            filtration_degree: element.filtration_degree(),
            augmentation: supersplit_core::scalar::format(&element.augmentation()),
        },
    ))
}

fn cmd_invariants(
    algebra: &str,
    subalgebra: &str,
    space: SpaceArg,
    invariance: InvarianceArg,
    min_degree: usize,
    parity: ParityArg,
) -> Result<ReportDocument, CliError> {
    let (_, alg) = load_algebra(algebra)?;
    let (sdoc, h) = load_subalgebra(subalgebra, &alg)?;
    let env = Envelope::new(&alg);
    let module = match space {
        SpaceArg::Full => ModuleSpace::Full,
        SpaceArg::Quotient => ModuleSpace::Quotient(&h),
    };
    let inv = match invariance {
        InvarianceArg::H => InvariancePart::Whole,
        InvarianceArg::H0 => InvariancePart::EvenOnly,
    };
    let pf = match parity {
        ParityArg::Any => ParityFilter::Any,
        ParityArg::Even => ParityFilter::Even,
        ParityArg::Odd => ParityFilter::Odd,
    };
    let basis = invariant_subspace(&env, &h, module, inv, &DegreeFilter::AtLeast(min_degree), pf);
    let options: BTreeMap<String, String> = [
        (
            "space".to_string(),
            match space {
                SpaceArg::Full => "full".to_string(),
                SpaceArg::Quotient => "quotient".to_string(),
            },
        ),
        (
            "invariance".to_string(),
            match invariance {
                InvarianceArg::H => "h".to_string(),
                InvarianceArg::H0 => "h0".to_string(),
            },
        ),
        ("min_degree".to_string(), min_degree.to_string()),
        (
            "parity".to_string(),
            match parity {
                ParityArg::Any => "any".to_string(),
                ParityArg::Even => "even".to_string(),
                ParityArg::Odd => "odd".to_string(),
            },
        ),
    ]
    .into();
    Ok(base_report(
        "invariants",
        echo(
            Some((&alg, algebra)),
            Some((&sdoc.name, subalgebra)),
            options.clone(),
        ),
        AssumptionBlock::new(None),
        Payload::Invariants {
            space: options["space"].clone(),
            invariance: options["invariance"].clone(),
            dimension: basis.len(),
            basis: basis.iter().map(|w| field_doc(&alg, Some(&h), w)).collect(),
        },
    ))
}

fn cmd_ranks(algebra: &str, subalgebra: &str) -> Result<ReportDocument, CliError> {
    let (_, alg) = load_algebra(algebra)?;
    let (sdoc, h) = load_subalgebra(subalgebra, &alg)?;
    let ranks = split_model_ranks(&alg, &h);
    Ok(base_report(
        "ranks",
        echo(
            Some((&alg, algebra)),
            Some((&sdoc.name, subalgebra)),
            BTreeMap::new(),
        ),
        AssumptionBlock::new(None),
        ranks_payload(&ranks),
    ))
}

fn cmd_split_check(algebra: &str, subalgebra: &str) -> Result<ReportDocument, CliError> {
    let (_, alg) = load_algebra(algebra)?;
    let (sdoc, h) = load_subalgebra(subalgebra, &alg)?;
    let env = Envelope::new(&alg);
    let verdict = grading::full_verdict(&env, &h);
    Ok(base_report(
        "split-check",
        echo(
            Some((&alg, algebra)),
            Some((&sdoc.name, subalgebra)),
            BTreeMap::new(),
        ),
        AssumptionBlock::new(Some(verdict.assumptions.effectiveness_ideal_dim)),
        split_check_payload(&alg, &h, &verdict),
    ))
}

fn cmd_strict_invariance(algebra: &str, subalgebra: &str) -> Result<ReportDocument, CliError> {
    let (_, alg) = load_algebra(algebra)?;
    let (sdoc, h) = load_subalgebra(subalgebra, &alg)?;
    let env = Envelope::new(&alg);
    let sol = grading::strict_invariance_solve(&env, &h);
    let doc = solution_doc(&alg, None, &sol);
    Ok(base_report(
        "strict-invariance",
        echo(
            Some((&alg, algebra)),
            Some((&sdoc.name, subalgebra)),
            BTreeMap::new(),
        ),
        AssumptionBlock::new(None),
        Payload::StrictInvariance {
            feasible: sol.feasible,
            dimension: sol.dimension,
            particular: doc.particular,
        },
    ))
}

fn cmd_catalog(
    name: &str,
    params: &[usize],
    parabolic: Option<&[usize]>,
) -> Result<Output, CliError> {
    let alg = catalog::catalog_algebra(name, params).map_err(CliError::input)?;
    match parabolic {
        None => Ok(Output::Document(AlgebraDocument::from_algebra(&alg).print())),
        Some(flag) => {
            if name != "gl" {
                return Err(CliError::Input(
                    "--parabolic is only defined for gl(m|n)".to_string(),
                ));
            }
            let [m, n] = params else {
                return Err(CliError::Input("gl takes two parameters".to_string()));
            };
            let [r, s] = flag else {
                return Err(CliError::Input("--parabolic takes two integers".to_string()));
            };
            let h = catalog::parabolic(&alg, *m, *n, *r, *s).map_err(CliError::input)?;
            let doc = SubalgebraDocument::from_embedding(format!("p({r},{s})"), &alg, &h);
            Ok(Output::Document(doc.print()))
        }
    }
}
