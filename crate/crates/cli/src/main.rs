use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use ordcalc::abelian::{decide_words, GordanCertificate};
use ordcalc::calculus::CalculusId;
use ordcalc::certificate::{files_for, ProofFile, WitnessBody, WitnessEntry, WitnessFile};
use ordcalc::crosscheck::{self, CrosscheckConfig};
use ordcalc::freegroup::{arity_of, ReducedWord};
use ordcalc::rightorder::{extend_right_order, rg_refute_bounded, Extension, PivotSet, RgBounds};
use ordcalc::term::{parse_goal, parse_word_list};
use ordcalc::{decide_goal, DecideOptions, Execution, LgProcedure, Status, Variety, Verdict, Witness};

/// Exit status for usage, parse and I/O errors.
const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "ordcalc", version, about = "Decide lattice-ordered group equations and check their certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide `e <= t` or `Γ1 | … | Γn` in a variety (exit 0 VALID, 1 INVALID, 2 UNKNOWN).
    Decide(DecideArgs),
    /// Same as `decide`, but a proof file is required.
    Prove(DecideArgs),
    /// Does a finite set of words extend to a right (or total) order?
    OrderExtend(OrderExtendArgs),
    /// Check a proof file (or, with --verify-witness, a witness file).
    CheckProof(CheckProofArgs),
    /// Run both ℓ-group procedures over an exhaustive corpus and compare.
    Crosscheck(CrosscheckArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum VarietyArg {
    Abelian,
    Lgroup,
    Representable,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProcedureArg {
    Cs,
    Hm,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Right,
    Total,
}

#[derive(Args)]
struct BoundArgs {
    /// Maximum conjugator length for the representable search [default: 3].
    #[arg(long = "bound-L", alias = "bound-l", value_name = "L")]
    bound_l: Option<usize>,
    /// Branching pivots: `cis`, `none`, or a comma-separated word list [default: cis].
    #[arg(long, value_name = "SET")]
    pivots: Option<String>,
}

impl BoundArgs {
    fn given(&self) -> bool {
        self.bound_l.is_some() || self.pivots.is_some()
    }

    fn bounds(&self, arity: Option<usize>) -> Result<RgBounds> {
        let mut b = RgBounds::default();
        if let Some(l) = self.bound_l {
            b.conjugator_length = l;
        }
        if let Some(p) = &self.pivots {
            b.pivots = match p.trim() {
                "cis" => PivotSet::Cis,
                "none" => PivotSet::None,
                list => PivotSet::Explicit(parse_word_list(list, arity).context("in --pivots")?),
            };
        }
        Ok(b)
    }
}

#[derive(Args)]
struct DecideArgs {
    /// `e <= term`, or sequents separated by `|`.
    input: String,
    #[arg(long, value_enum, default_value = "lgroup")]
    variety: VarietyArg,
    /// Procedure for ℓ-groups.
    #[arg(long, value_enum, default_value = "cs")]
    procedure: ProcedureArg,
    /// Number of generators; larger generator indices are rejected.
    #[arg(long)]
    arity: Option<usize>,
    /// Write derivations of the valid conjuncts here.
    #[arg(long, value_name = "FILE")]
    proof: Option<PathBuf>,
    /// Write witnesses for the invalid conjuncts here.
    #[arg(long, value_name = "FILE")]
    witness: Option<PathBuf>,
    #[command(flatten)]
    bounds: BoundArgs,
}

#[derive(Args)]
struct OrderExtendArgs {
    /// Words separated by `,` or `|`.
    words: String,
    #[arg(long, value_enum, default_value = "right")]
    kind: KindArg,
    #[arg(long)]
    arity: Option<usize>,
    /// Write the order witness or refutation tree here.
    #[arg(long, value_name = "FILE")]
    witness: Option<PathBuf>,
    #[command(flatten)]
    bounds: BoundArgs,
}

#[derive(Args)]
struct CheckProofArgs {
    file: PathBuf,
    /// Calculus to check in; defaults to the one the file declares.
    #[arg(long)]
    calculus: Option<CalculusId>,
    /// Treat FILE as a witness file and re-verify every witness.
    #[arg(long)]
    verify_witness: bool,
}

#[derive(Args)]
struct CrosscheckArgs {
    #[arg(long, default_value_t = 2)]
    arity: usize,
    #[arg(long, default_value_t = 2)]
    max_len: usize,
    #[arg(long, default_value_t = 3)]
    max_size: usize,
    /// Run on one thread.
    #[arg(long)]
    sequential: bool,
    /// Print the summary as JSON.
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Decide(a) => decide(a, false),
        Command::Prove(a) => decide(a, true),
        Command::OrderExtend(a) => order_extend(a),
        Command::CheckProof(a) => check_proof(a),
        Command::Crosscheck(a) => run_crosscheck(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn joinands(words: &[ReducedWord]) -> String {
    words.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" | ")
}

fn describe(v: &Verdict) -> String {
    match v {
        Verdict::Valid(p) => {
            let n = p.derivation.size();
            format!("{} derivation, {n} node{}", p.calculus, if n == 1 { "" } else { "s" })
        }
        Verdict::Invalid(Witness::TruncatedOrder(t)) => format!(
            "{}-truncated right order: {{{}}}",
            t.level,
            t.elements.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(", ")
        ),
        Verdict::Invalid(Witness::Signs(a)) => format!(
            "surviving signs: {}",
            a.0.iter().map(|(w, s)| format!("{w}:{}", if s.as_i64() > 0 { "+" } else { "-" })).collect::<Vec<_>>().join(", ")
        ),
        Verdict::Invalid(Witness::Countermodel(y)) => format!("countermodel in Z: {}", assignment(y)),
        Verdict::Unknown(r) => format!(
            "bounds exhausted: conjugators up to length {}, {} pivots, open branch of {} signs",
            r.conjugator_length,
            r.pivot_count,
            r.open_branch.0.len()
        ),
    }
}

fn assignment(y: &[i64]) -> String {
    y.iter()
        .enumerate()
        .map(|(i, v)| format!("{} := {v}", ordcalc::freegroup::generator_name(i as u32 + 1)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn decide(args: DecideArgs, require_proof: bool) -> Result<u8> {
    if require_proof && args.proof.is_none() {
        bail!("prove needs --proof FILE");
    }
    let variety = match args.variety {
        VarietyArg::Abelian => Variety::Abelian,
        VarietyArg::Lgroup => Variety::LGroup,
        VarietyArg::Representable => Variety::Representable,
    };
    if args.bounds.given() && variety != Variety::Representable {
        bail!("--bound-L and --pivots only apply to --variety representable");
    }
    let goal = parse_goal(&args.input, args.arity).context("cannot parse the input")?;
    let options = DecideOptions {
        procedure: match args.procedure {
            ProcedureArg::Cs => LgProcedure::Cs,
            ProcedureArg::Hm => LgProcedure::Hm,
        },
        rg_bounds: args.bounds.bounds(args.arity)?,
    };
    let arity = args.arity.unwrap_or(goal.max_generator() as usize);
    let verdicts = decide_goal(variety, &goal, arity, &options);
    for (i, c) in verdicts.iter().enumerate() {
        let label = if verdicts.len() > 1 { format!("conjunct {}: ", i + 1) } else { String::new() };
        println!("{label}{}  {}  ({})", c.verdict.status(), joinands(&c.words), describe(&c.verdict));
    }
    let status = Status::all(verdicts.iter().map(|c| c.verdict.status()));
    if verdicts.len() > 1 {
        println!("{status}");
    }
    let pairs: Vec<(Vec<ReducedWord>, Verdict)> = verdicts.into_iter().map(|c| (c.words, c.verdict)).collect();
    let (proof, witness) = files_for(variety.calculus(), &pairs);
    if let Some(path) = &args.proof {
        match proof {
            Some(p) => write(path, &p.to_text())?,
            None => eprintln!("note: no valid conjunct, {} not written", path.display()),
        }
    }
    if let Some(path) = &args.witness {
        match witness {
            Some(w) => write(path, &w.to_text())?,
            None => eprintln!("note: no invalid conjunct, {} not written", path.display()),
        }
    }
    Ok(status.exit_code() as u8)
}

fn order_extend(args: OrderExtendArgs) -> Result<u8> {
    let words = parse_word_list(&args.words, args.arity).context("cannot parse the words")?;
    if words.iter().any(|w| w.is_identity()) {
        bail!("e cannot be part of an order's positive cone");
    }
    if args.bounds.given() && matches!(args.kind, KindArg::Right) {
        bail!("--bound-L and --pivots only apply to --kind total");
    }
    let arity = args.arity.unwrap_or_else(|| arity_of(&words));
    let (code, entry) = match args.kind {
        KindArg::Right => match extend_right_order(&words, arity) {
            Extension::Order(t) => {
                let v = Verdict::Invalid(Witness::TruncatedOrder(t.clone()));
                println!("YES  ({})", describe(&v));
                (0, WitnessEntry { words: words.clone(), body: WitnessBody::TruncatedRightOrder(t) })
            }
            Extension::Refuted(tree) => {
                println!("NO  (refutation tree: depth {}, {} leaves)", tree.depth(), tree.leaf_count());
                (1, WitnessEntry { words: words.clone(), body: WitnessBody::RefutationTree { tree } })
            }
        },
        KindArg::Total => {
            if let GordanCertificate::Separator { y } = decide_words(&words, arity).1 {
                println!("YES  (order of Z^{arity} by the sign of {}; every word is on one side)", assignment(&y));
                (0, WitnessEntry { words: words.clone(), body: WitnessBody::Countermodel { assignment: y } })
            } else {
                match rg_refute_bounded(&words, arity, &args.bounds.bounds(Some(arity))?) {
                    Ok(tree) => {
                        println!("NO  (refutation modulo conjugation: depth {}, {} leaves)", tree.depth(), tree.leaf_count());
                        (1, WitnessEntry { words: words.clone(), body: WitnessBody::RefutationTree { tree } })
                    }
                    Err(_) => {
                        println!("UNKNOWN  (no abelian separation and no bounded refutation)");
                        if let Some(path) = &args.witness {
                            eprintln!("note: nothing to write to {}", path.display());
                        }
                        return Ok(2);
                    }
                }
            }
        }
    };
    if let Some(path) = &args.witness {
        write(path, &WitnessFile::new(vec![entry]).to_text())?;
    }
    Ok(code)
}

fn check_proof(args: CheckProofArgs) -> Result<u8> {
    let text = std::fs::read_to_string(&args.file).with_context(|| format!("reading {}", args.file.display()))?;
    if args.verify_witness {
        if args.calculus.is_some() {
            bail!("--calculus does not apply to witness files");
        }
        let file = WitnessFile::parse(&text)?;
        return Ok(match file.verify() {
            Ok(()) => {
                println!("accepted: {} witness(es) verified", file.witnesses.len());
                0
            }
            Err((i, msg)) => {
                println!("rejected: witness {i}: {msg}");
                1
            }
        });
    }
    let file = ProofFile::parse(&text)?;
    let calculus = args.calculus.unwrap_or(file.calculus);
    Ok(match file.check(Some(calculus)) {
        Ok(()) => {
            println!("accepted: {} proof(s) in {calculus}", file.proofs.len());
            0
        }
        Err((i, e)) => {
            println!("rejected: proof {i}, {e}");
            1
        }
    })
}

fn run_crosscheck(args: CrosscheckArgs) -> Result<u8> {
    let config = CrosscheckConfig { arity: args.arity, max_len: args.max_len, max_size: args.max_size };
    let exec = if args.sequential { Execution::Sequential } else { Execution::Parallel };
    let s = crosscheck::run(&config, exec);
    if args.json {
        #[derive(serde::Serialize)]
        struct Out<'a> {
            config: &'a CrosscheckConfig,
            summary: &'a crosscheck::CrosscheckSummary,
        }
        println!("{}", serde_json::to_string_pretty(&Out { config: &config, summary: &s })?);
    } else {
        let pct = |n: usize| if s.instances == 0 { 100.0 } else { 100.0 * n as f64 / s.instances as f64 };
        println!(
            "corpus: arity {}, word length <= {}, set size <= {}: {} instances",
            config.arity, config.max_len, config.max_size, s.instances
        );
        println!("  {:<24}{:>8}", "VALID", s.valid);
        println!("  {:<24}{:>8}", "INVALID", s.invalid);
        println!("  {:<24}{:>8}  ({:.1}%)", "CS = HM", s.cs_hm_agree, pct(s.cs_hm_agree));
        println!("  {:<24}{:>8}  ({:.1}%)", "extends <=> INVALID", s.dichotomy_agree, pct(s.dichotomy_agree));
        println!("  {:<24}{:>8}", "proofs checked", s.proofs_checked);
        println!("  {:<24}{:>8}", "certificate failures", s.certificate_failures);
        for d in &s.disagreements {
            println!("  disagreement: {}", joinands(d));
        }
    }
    Ok(if s.all_agree() { 0 } else { 1 })
}
