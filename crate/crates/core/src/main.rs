use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use tanlift::dsl::{Failure, Report, Session};
use tanlift::verify::{self, Config};

#[derive(Parser)]
#[command(name = "tanlift", version, about = "Tangent lifts, Poisson structures and Lie bialgebras, computed exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Trials per randomized check (each check has its own default).
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Largest chart dimension for random data.
    #[arg(long, global = true, default_value_t = 4)]
    dim: usize,
    /// Largest coefficient degree for random data.
    #[arg(long, global = true, default_value_t = 2)]
    degree: u32,
}

impl Common {
    fn config(&self) -> Config {
        Config { seed: self.seed, trials: self.trials, dim: self.dim, degree: self.degree }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run a script.
    Eval {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite, or `all`.
    Verify {
        suite: String,
        #[command(flatten)]
        common: Common,
    },
    /// Check one canonical-map diagram on random data.
    CheckDiagram {
        name: String,
        #[command(flatten)]
        common: Common,
    },
    /// Read statements from standard input, one or more per line.
    Repl {
        #[command(flatten)]
        common: Common,
    },
    /// List suites, diagrams and commands.
    List,
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    let mut out = io::stdout().lock();
    let _ = out.write_all(s.as_bytes()).and_then(|()| out.flush());
}

fn print_report(r: &Report, json: bool) {
    if json {
        emit(&format!("{}\n", serde_json::to_string_pretty(&r.to_json()).expect("serializable")));
    } else {
        emit(&r.to_text());
    }
}

fn print_failure(f: &Failure, json: bool) {
    if json {
        let mut v = f.partial.to_json();
        v["pass"] = json!(false);
        v["error"] = json!({ "statement": f.statement, "message": f.error.to_string() });
        emit(&format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable")));
    } else {
        emit(&f.partial.to_text());
        eprintln!("error: {f}");
    }
}

fn eval(file: &PathBuf, common: &Common) -> ExitCode {
    let src = match std::fs::read_to_string(file) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return ExitCode::from(2);
        }
    };
    match Session::new(common.config()).eval(&src) {
        Ok(r) => {
            print_report(&r, common.json);
            if r.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            print_failure(&f, common.json);
            ExitCode::from(2)
        }
    }
}

fn verify_cmd(suite: &str, common: &Common) -> ExitCode {
    let cfg = common.config();
    let reports = match verify::run(suite, &cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let ok = reports.iter().all(|r| r.passed());
    if common.json {
        let v = json!({
            "schema": 1,
            "seed": cfg.seed,
            "dim": cfg.dim,
            "degree": cfg.degree,
            "trials": cfg.trials,
            "pass": ok,
            "suites": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        });
        emit(&format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable")));
    } else {
        emit(&verify::report_text(&reports, &cfg));
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn check_diagram(name: &str, common: &Common) -> ExitCode {
    let mut session = Session::new(common.config());
    let src = format!("check-diagram {name};");
    match session.eval(&src) {
        Ok(r) => {
            print_report(&r, common.json);
            if r.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            print_failure(&f, common.json);
            ExitCode::from(2)
        }
    }
}

fn repl(common: &Common) -> ExitCode {
    let mut session = Session::new(common.config());
    let stdin = io::stdin();
    let mut pending = String::new();
    let mut ok = true;
    for line in stdin.lock().lines() {
        let Ok(line) = line else { break };
        pending.push_str(&line);
        pending.push('\n');
        // wait for a complete statement
        let trimmed = pending.trim_end();
        if trimmed.is_empty() || !(trimmed.ends_with(';') || trimmed.ends_with('}')) {
            continue;
        }
        match session.eval(&pending) {
            Ok(r) => {
                ok &= r.passed();
                print_report(&r, common.json);
            }
            Err(f) => {
                ok = false;
                print_failure(&f, common.json);
            }
        }
        pending.clear();
        let _ = io::stdout().flush();
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn list() -> ExitCode {
    let mut out = String::from("suites:\n");
    for s in verify::registry() {
        out.push_str(&format!("  {:<20} {}\n", s.name, s.summary));
    }
    out.push_str("diagrams:\n");
    for d in verify::DIAGRAMS {
        out.push_str(&format!("  {d}\n"));
    }
    out.push_str("commands:\n");
    for v in tanlift::dsl::verbs::VERBS {
        out.push_str(&format!("  {:<20} {}\n", v.name, v.summary));
    }
    emit(&out);
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Eval { file, common } => eval(file, common),
        Command::Verify { suite, common } => verify_cmd(suite, common),
        Command::CheckDiagram { name, common } => check_diagram(name, common),
        Command::Repl { common } => repl(common),
        Command::List => list(),
    }
}
