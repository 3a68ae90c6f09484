//! Command-line front end for the nu-calculus workbench.
//!
//! Exit codes: 0 for success (including an `equivalent` verdict and a
//! non-separated distinguishing experiment), 1 when programs are told
//! apart (`inequivalent`, or a separated experiment), 2 for usage,
//! parse, type, scope, and budget errors, 3 when evaluation itself
//! fails (fuel exhaustion or a stuck term, which a well-typed closed
//! program never reaches).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use nucalc::eval::{evaluate, EvalError, DEFAULT_FUEL};
use nucalc::logrel::{RelError, DEFAULT_MAX_PRIV};
use nucalc::normal::{canonicalize, equivalent, normalize, NormalError, Verdict};
use nucalc::randsem::{distinguish, estimate, AmbientPredicate, RandError};
use nucalc::syntax::{
    bind_names, count_holes, parse_context, parse_term, plug, pretty, Ident, NameSetError,
    ParseError,
};
use nucalc::typecheck::{infer, Context, TypeError};
use nucalc::{Budget, Name, NameSet, Term, Type};

#[derive(Parser)]
#[command(name = "nucalc", version, about = "Workbench for the nu-calculus")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct PublicOpt {
    /// Ambient public names, comma separated (e.g. --public a,b)
    #[arg(long, value_delimiter = ',', value_name = "NAMES")]
    public: Vec<String>,
}

#[derive(Args)]
struct FuelOpt {
    /// Evaluation step budget
    #[arg(long, default_value_t = DEFAULT_FUEL, value_name = "STEPS")]
    fuel: u64,
}

#[derive(Args)]
struct MaxPrivOpt {
    /// Cap on the number of secret names the leak search may consider
    #[arg(long = "max-priv", default_value_t = DEFAULT_MAX_PRIV, value_name = "COUNT")]
    max_priv: usize,
}

#[derive(Args)]
struct PredOpt {
    /// Ambient predicate NAME:THETA holding on a fraction theta of names
    #[arg(long = "predicate", value_name = "NAME:THETA")]
    predicate: Vec<String>,
}

#[derive(Args)]
struct TrialsOpt {
    /// Number of Monte Carlo trials
    #[arg(long, value_name = "N")]
    trials: u64,
    /// Seed for the trial random streams
    #[arg(long, value_name = "SEED")]
    seed: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Infer and print the type of a program
    Typecheck {
        file: PathBuf,
        #[command(flatten)]
        public: PublicOpt,
        #[command(flatten)]
        predicate: PredOpt,
    },
    /// Evaluate a program, printing the generated names and the value
    Eval {
        file: PathBuf,
        #[command(flatten)]
        public: PublicOpt,
        #[command(flatten)]
        fuel: FuelOpt,
    },
    /// Print the canonical normal form of a first-order program
    Normalize {
        file: PathBuf,
        #[command(flatten)]
        public: PublicOpt,
        /// Secret ambient names the program may mention, comma separated
        #[arg(long, value_delimiter = ',', value_name = "NAMES")]
        private: Vec<String>,
        #[command(flatten)]
        fuel: FuelOpt,
        #[command(flatten)]
        max_priv: MaxPrivOpt,
    },
    /// Decide observational equivalence of two first-order programs
    Equiv {
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        public: PublicOpt,
        #[command(flatten)]
        fuel: FuelOpt,
        #[command(flatten)]
        max_priv: MaxPrivOpt,
    },
    /// Estimate the probability that a boolean program samples true
    Sample {
        file: PathBuf,
        #[command(flatten)]
        public: PublicOpt,
        #[command(flatten)]
        predicate: PredOpt,
        #[command(flatten)]
        trials: TrialsOpt,
        #[command(flatten)]
        fuel: FuelOpt,
    },
    /// Run two programs under a boolean context and test for separation
    Distinguish {
        left: PathBuf,
        right: PathBuf,
        /// Context file; the hole is written @
        #[arg(long, value_name = "FILE")]
        context: PathBuf,
        #[command(flatten)]
        public: PublicOpt,
        #[command(flatten)]
        predicate: PredOpt,
        #[command(flatten)]
        trials: TrialsOpt,
        #[command(flatten)]
        fuel: FuelOpt,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("cannot read {path}: {err}")]
    Io { path: String, err: std::io::Error },
    #[error("in {path}: {err}")]
    Parse { path: String, err: ParseError },
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Normal(#[from] NormalError),
    #[error("evaluation failed: {0}")]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Rand(#[from] RandError),
    #[error(transparent)]
    Names(#[from] NameSetError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 3 marks failures of evaluation itself; everything else the user
    /// can fix is 2.
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Eval(_) => 3,
            CliError::Rand(RandError::FuelExhausted | RandError::Stuck(_)) => 3,
            CliError::Normal(e) if normal_is_internal(e) => 3,
            _ => 2,
        }
    }
}

fn normal_is_internal(e: &NormalError) -> bool {
    use nucalc::logrel::LeakError;
    matches!(
        e,
        NormalError::Rel(RelError::Eval(_)) | NormalError::Leak(LeakError::Rel(RelError::Eval(_)))
    )
}

/// Parses the arguments (including the program name) and runs the command,
/// writing to the given streams. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let help = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let stream: &mut dyn Write = if help { out } else { err };
            let _ = write!(stream, "{e}");
            return if help { 0 } else { 2 };
        }
    };
    match dispatch(cli.cmd, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn read_source(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|err| CliError::Io {
        path: path.display().to_string(),
        err,
    })
}

fn parse_file(path: &Path, as_context: bool) -> Result<Term, CliError> {
    let src = read_source(path)?;
    let parse = if as_context { parse_context } else { parse_term };
    parse(&src).map_err(|err| CliError::Parse {
        path: path.display().to_string(),
        err,
    })
}

/// Realizes a list of labels as fresh atoms. Duplicate labels are a
/// usage error, not two atoms that happen to print alike.
fn atoms_for(labels: &[String]) -> Result<(Vec<(Ident, Name)>, NameSet), CliError> {
    let bindings: Vec<(Ident, Name)> = labels
        .iter()
        .map(|l| (l.clone(), Name::fresh(l)))
        .collect();
    let set = NameSet::from_names(bindings.iter().map(|(_, n)| *n))?;
    Ok((bindings, set))
}

fn parse_predicates(specs: &[String]) -> Result<Vec<AmbientPredicate>, CliError> {
    specs
        .iter()
        .map(|spec| {
            let (name, theta) = spec
                .split_once(':')
                .ok_or_else(|| CliError::Usage(format!("bad predicate '{spec}', want NAME:THETA")))?;
            let theta: f64 = theta
                .parse()
                .map_err(|_| CliError::Usage(format!("bad predicate threshold in '{spec}'")))?;
            Ok(AmbientPredicate::new(name, theta)?)
        })
        .collect()
}

fn typing_context(ambient: &NameSet, predicates: &[AmbientPredicate]) -> Context {
    let mut ctx = Context::new(ambient.clone());
    for p in predicates {
        ctx = ctx.with_var(p.name(), Type::arrow(Type::Name, Type::Bool));
    }
    ctx
}

fn check_boolean(ctx: &Context, t: &Term, what: &str) -> Result<(), CliError> {
    let ty = infer(ctx, t)?;
    if ty != Type::Bool {
        return Err(CliError::Usage(format!("{what} must have type B, got {ty}")));
    }
    Ok(())
}

fn dispatch(cmd: Cmd, out: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Cmd::Typecheck {
            file,
            public,
            predicate,
        } => {
            let (bindings, ambient) = atoms_for(&public.public)?;
            let predicates = parse_predicates(&predicate.predicate)?;
            let t = bind_names(&parse_file(&file, false)?, &bindings);
            let ty = infer(&typing_context(&ambient, &predicates), &t)?;
            let _ = writeln!(out, "{ty}");
            Ok(0)
        }
        Cmd::Eval { file, public, fuel } => {
            let (bindings, ambient) = atoms_for(&public.public)?;
            let t = bind_names(&parse_file(&file, false)?, &bindings);
            infer(&typing_context(&ambient, &[]), &t)?;
            let r = evaluate(&t, fuel.fuel)?;
            let _ = writeln!(out, "generated: {}", r.generated);
            let _ = writeln!(out, "value: {}", pretty(&r.value));
            Ok(0)
        }
        Cmd::Normalize {
            file,
            public,
            private,
            fuel,
            max_priv,
        } => {
            let mut labels = public.public.clone();
            labels.extend(private.iter().cloned());
            let (bindings, _) = atoms_for(&labels)?;
            let publics =
                NameSet::from_names(bindings[..public.public.len()].iter().map(|(_, n)| *n))?;
            let privates =
                NameSet::from_names(bindings[public.public.len()..].iter().map(|(_, n)| *n))?;
            let t = bind_names(&parse_file(&file, false)?, &bindings);
            let ty = infer(&typing_context(&publics.oplus(&privates)?, &[]), &t)?;
            let budget = Budget {
                fuel: fuel.fuel,
                max_priv: max_priv.max_priv,
            };
            let nf = normalize(&t, &publics, &privates, &ty, &budget)?;
            let _ = writeln!(out, "{}", pretty(&canonicalize(&nf)));
            Ok(0)
        }
        Cmd::Equiv {
            left,
            right,
            public,
            fuel,
            max_priv,
        } => {
            let (bindings, ambient) = atoms_for(&public.public)?;
            let l = bind_names(&parse_file(&left, false)?, &bindings);
            let r = bind_names(&parse_file(&right, false)?, &bindings);
            let ctx = typing_context(&ambient, &[]);
            let lty = infer(&ctx, &l)?;
            let rty = infer(&ctx, &r)?;
            if lty != rty {
                return Err(CliError::Usage(format!(
                    "programs have different types: {lty} vs {rty}"
                )));
            }
            let budget = Budget {
                fuel: fuel.fuel,
                max_priv: max_priv.max_priv,
            };
            match equivalent(&l, &r, &ambient, &lty, &budget)? {
                Verdict::Equivalent => {
                    let _ = writeln!(out, "equivalent");
                    Ok(0)
                }
                Verdict::Inequivalent { reason } => {
                    let _ = writeln!(out, "inequivalent: {reason}");
                    Ok(1)
                }
                Verdict::NotFirstOrder { ty } => {
                    Err(CliError::Normal(NormalError::NotFirstOrder { ty }))
                }
            }
        }
        Cmd::Sample {
            file,
            public,
            predicate,
            trials,
            fuel,
        } => {
            let (bindings, ambient) = atoms_for(&public.public)?;
            let predicates = parse_predicates(&predicate.predicate)?;
            let t = bind_names(&parse_file(&file, false)?, &bindings);
            check_boolean(&typing_context(&ambient, &predicates), &t, "the program")?;
            let report = estimate(&t, &ambient, &predicates, trials.trials, trials.seed, fuel.fuel)?;
            let _ = writeln!(out, "{}", serde_json::to_string(&report).expect("report is plain data"));
            Ok(0)
        }
        Cmd::Distinguish {
            left,
            right,
            context,
            public,
            predicate,
            trials,
            fuel,
        } => {
            let (bindings, ambient) = atoms_for(&public.public)?;
            let predicates = parse_predicates(&predicate.predicate)?;
            let l = bind_names(&parse_file(&left, false)?, &bindings);
            let r = bind_names(&parse_file(&right, false)?, &bindings);
            let c = bind_names(&parse_file(&context, true)?, &bindings);
            if count_holes(&c) == 0 {
                return Err(CliError::Usage(format!(
                    "context {} has no hole @",
                    context.display()
                )));
            }
            let ctx = typing_context(&ambient, &predicates);
            check_boolean(&ctx, &plug(&c, &l), "the left plugged program")?;
            check_boolean(&ctx, &plug(&c, &r), "the right plugged program")?;
            let sep = distinguish(
                &l,
                &r,
                &c,
                &ambient,
                &predicates,
                trials.trials,
                trials.seed,
                fuel.fuel,
            )?;
            let _ = writeln!(out, "left: {}", serde_json::to_string(&sep.left).expect("plain data"));
            let _ = writeln!(out, "right: {}", serde_json::to_string(&sep.right).expect("plain data"));
            let _ = writeln!(out, "separated: {}", sep.separated);
            Ok(i32::from(sep.separated))
        }
    }
}
