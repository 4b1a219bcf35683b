use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use pfa_core::io::Automaton;
use pfa_core::learning::{exact_learner, learn_z, Session, SimulatedTeacher, ZEquivTeacher};
use pfa_core::pfinite::{equivalence, zeroness};
use pfa_core::z_fatou::{compute_z, minimize_q, ZOutcome};
use pfa_core::{Error, PAutomaton, Word};

#[derive(Parser)]
#[command(
    name = "pfa",
    version,
    about = "Weighted and P-finite automata: evaluate, compare, convert, learn"
)]
struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Value of a word; `""` is the empty word.
    Eval { file: PathBuf, word: String },
    /// Decide whether two automata compute the same function.
    Equiv { left: PathBuf, right: PathBuf },
    /// Decide whether an automaton computes the zero function.
    Zeroness { file: PathBuf },
    /// Convert a Q-weighted automaton to an equivalent minimal Z-weighted one.
    ToZ {
        file: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Minimize a Q-weighted automaton.
    Minimize {
        file: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Terms f(ε), f(a), .., f(a^(N-1)) of a unary automaton.
    Seq {
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Learn a target automaton through a simulated teacher.
    Learn {
        #[arg(long)]
        target: PathBuf,
        /// Learn a minimal Z-weighted automaton.
        #[arg(long)]
        z_mode: bool,
        /// Abort after this many oracle calls.
        #[arg(long)]
        max_queries: Option<u64>,
        /// Write the session report with its transcript here.
        #[arg(long)]
        transcript: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnknownLetter(_) => 3,
            Error::QueryBudgetExceeded(_) => 5,
            _ => 2,
        };
        Failure::new(code, e.to_string())
    }
}

/// What a successful command prints, and its exit code (0 or 1).
struct Output {
    code: u8,
    human: String,
    json: Value,
}

fn load(path: &Path) -> Result<Automaton, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))?;
    Automaton::from_json(&text).map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))
}

fn to_q(a: &Automaton) -> Result<pfa_core::QAutomaton, Failure> {
    a.to_q()
        .ok_or_else(|| Failure::new(2, "expected a Q-weighted automaton (all weights constant)"))
}

fn verification_failed(w: &Word) -> Failure {
    Failure::new(
        70,
        format!("internal error: witness `{w}` does not re-verify"),
    )
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Eval { file, word } => {
            let a = load(file)?;
            let w = Word::parse(word, a.alphabet())?;
            let v = a.eval(&w)?;
            Ok(Output {
                code: 0,
                human: v.to_string(),
                json: json!({ "word": w, "value": v.to_string() }),
            })
        }
        Command::Equiv { left, right } => {
            let (a, b) = (load(left)?.lift(), load(right)?.lift());
            match equivalence(&a, &b)? {
                None => Ok(Output {
                    code: 0,
                    human: "equivalent".into(),
                    json: json!({ "equivalent": true }),
                }),
                Some(w) => {
                    let (x, y) = (a.eval(&w)?, b.eval(&w)?);
                    if x == y {
                        return Err(verification_failed(&w));
                    }
                    Ok(Output {
                        code: 1,
                        human: format!("witness: {w}\nleft: {x}\nright: {y}"),
                        json: json!({ "equivalent": false, "witness": w, "left": x.to_string(), "right": y.to_string() }),
                    })
                }
            }
        }
        Command::Zeroness { file } => {
            let a = load(file)?.lift();
            match zeroness(&a) {
                None => Ok(Output {
                    code: 0,
                    human: "zero".into(),
                    json: json!({ "zero": true }),
                }),
                Some(w) => {
                    let v = a.eval(&w)?;
                    if v == pfa_core::arith::rat(0) {
                        return Err(verification_failed(&w));
                    }
                    Ok(Output {
                        code: 1,
                        human: format!("witness: {w}\nvalue: {v}"),
                        json: json!({ "zero": false, "witness": w, "value": v.to_string() }),
                    })
                }
            }
        }
        Command::ToZ { file, output } => {
            let a = to_q(&load(file)?)?;
            match compute_z(&a) {
                ZOutcome::Automaton(z) => {
                    let text = Automaton::from(z).to_json();
                    emit_automaton(output.as_deref(), text)
                }
                ZOutcome::Witness(w) => {
                    let v = a.eval(&w)?;
                    if v.is_integer() {
                        return Err(verification_failed(&w));
                    }
                    Ok(Output {
                        code: 1,
                        human: format!("not integer valued\nwitness: {w}\nvalue: {v}"),
                        json: json!({ "integer_valued": false, "witness": w, "value": v.to_string() }),
                    })
                }
            }
        }
        Command::Minimize { file, output } => {
            let a = to_q(&load(file)?)?;
            emit_automaton(output.as_deref(), Automaton::from(minimize_q(&a)).to_json())
        }
        Command::Seq { file, count } => {
            let a = load(file)?;
            let [letter] = a.alphabet() else {
                return Err(Failure::new(4, "seq needs a unary alphabet"));
            };
            let terms = (0..*count)
                .map(|k| a.eval(&Word::power(letter, k)).map(|v| v.to_string()))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Output {
                code: 0,
                human: terms.join("\n"),
                json: json!({ "terms": terms }),
            })
        }
        Command::Learn {
            target,
            z_mode,
            max_queries,
            transcript,
            output,
        } => learn(
            &load(target)?,
            *z_mode,
            *max_queries,
            transcript.as_deref(),
            output.as_deref(),
        ),
    }
}

fn emit_automaton(output: Option<&Path>, text: String) -> Result<Output, Failure> {
    let json: Value = serde_json::from_str(&text).expect("own output is valid JSON");
    match output {
        Some(path) => {
            write(path, &text)?;
            Ok(Output {
                code: 0,
                human: format!("written to {}", path.display()),
                json,
            })
        }
        None => Ok(Output {
            code: 0,
            human: text.trim_end().to_string(),
            json,
        }),
    }
}

fn learn(
    target: &Automaton,
    z_mode: bool,
    max_queries: Option<u64>,
    transcript: Option<&Path>,
    output: Option<&Path>,
) -> Result<Output, Failure> {
    let lifted: PAutomaton = target.lift();
    if z_mode && target.to_q().and_then(|q| q.as_z_automaton()).is_none() {
        return Err(Failure::new(2, "--z-mode needs a Z-weighted target"));
    }
    let mut teacher = SimulatedTeacher::new(lifted.clone());
    let start = Instant::now();
    let (learned, membership, equivalence_calls, events) = if z_mode {
        let mut wrapper = ZEquivTeacher::new(&mut teacher);
        let mut session = Session::new(&mut wrapper).with_max_queries(max_queries);
        let z = learn_z(&mut session)?;
        (
            Automaton::from(z),
            session.membership_queries,
            session.equivalence_queries,
            session.transcript,
        )
    } else {
        let mut session = Session::new(&mut teacher).with_max_queries(max_queries);
        let p = exact_learner(&mut session)?;
        (
            Automaton::from(p),
            session.membership_queries,
            session.equivalence_queries,
            session.transcript,
        )
    };
    let elapsed = start.elapsed();
    if let Some(w) = equivalence(&learned.lift(), &lifted)? {
        return Err(verification_failed(&w));
    }
    let automaton_text = learned.to_json();
    let automaton: Value = serde_json::from_str(&automaton_text).expect("own output is valid JSON");
    let mut report = json!({
        "dimension": learned.dimension(),
        "membership_queries": membership,
        "equivalence_queries": equivalence_calls,
        "teacher_membership_count": teacher.membership_count,
        "teacher_equivalence_count": teacher.equivalence_count,
        "max_counterexample_length": teacher.max_counterexample_length,
        "wall_time_ms": elapsed.as_secs_f64() * 1000.0,
    });
    if let Some(path) = transcript {
        let mut full = report.clone();
        full["automaton"] = automaton.clone();
        full["transcript"] = serde_json::to_value(&events).expect("serializable events");
        write(
            path,
            &serde_json::to_string_pretty(&full).expect("serializable"),
        )?;
    }
    let mut human = format!(
        "learned a {}-dimensional {} automaton\nmembership queries: {}\nequivalence queries: {}\nmax counterexample length: {}\nwall time: {:.1} ms",
        learned.dimension(),
        if z_mode { "Z-weighted" } else { "P-finite" },
        membership,
        equivalence_calls,
        teacher.max_counterexample_length,
        elapsed.as_secs_f64() * 1000.0,
    );
    match output {
        Some(path) => write(path, &automaton_text)?,
        None => human = format!("{}\n{human}", automaton_text.trim_end()),
    }
    report["automaton"] = automaton;
    Ok(Output {
        code: 0,
        human,
        json: report,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("serializable")
                );
            } else {
                println!("{}", out.human);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            if cli.json {
                println!("{}", json!({ "error": f.message, "exit_code": f.code }));
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
