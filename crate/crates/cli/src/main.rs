use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kpi_core::decision::{entails, sat};
use kpi_core::dnf::{cnf4, dnf4};
use kpi_core::families::{self, FamilySpec, QbfInstance, XcInstance};
use kpi_core::formula::nnf;
use kpi_core::grammar::{is_member, DefId, SyntacticKind};
use kpi_core::pigen::{collapse_duplicates, gen_implicants, gen_pi, Mode};
use kpi_core::pirec::{test_implicant_traced, test_pi_traced, PiTrace};
use kpi_core::semantics::KripkeModel;
use kpi_core::{parse, Formula};

/// Prime implicates and implicants in modal logic K.
#[derive(Parser, Debug)]
#[command(name = "kpi", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

/// Formulas given inline with `-e` or as files holding one formula each.
#[derive(Args, Debug)]
struct Input {
    #[arg(short = 'e', long = "expr", value_name = "EXPR")]
    exprs: Vec<String>,
    #[arg(value_name = "FILE")]
    files: Vec<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Satisfiability of one formula.
    Sat(Input),
    /// Whether the first formula entails the second.
    Entail(Input),
    /// Truth of a formula at a world of a model fixture.
    Eval {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        world: String,
        #[command(flatten)]
        input: Input,
    },
    /// Negation normal form.
    Nnf(Input),
    /// Satisfiable D4 terms, one per line.
    Dnf4 {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// D4 clauses whose conjunction is equivalent to the input.
    Cnf4 {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Prime implicates.
    Genpi {
        #[command(flatten)]
        input: Input,
        /// Stream candidates instead of materialising them.
        #[arg(long)]
        iter: bool,
        #[arg(long)]
        json: bool,
        /// Collapse repeated disjuncts in the output.
        #[arg(long)]
        simplify: bool,
    },
    /// Prime implicants.
    Implicants {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        simplify: bool,
    },
    /// Whether a D4 clause is a prime implicate of a formula.
    Testpi {
        #[arg(long)]
        clause: String,
        #[arg(long)]
        formula: String,
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        json: bool,
    },
    /// Whether a D4 term is a prime implicant of a formula.
    Testimplicant {
        #[arg(long)]
        term: String,
        #[arg(long)]
        formula: String,
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        json: bool,
    },
    /// Syntactic membership in one of the grammars D1..D5.
    Classify {
        #[arg(long)]
        def: DefId,
        #[arg(long)]
        kind: SyntacticKind,
        #[command(flatten)]
        input: Input,
    },
    /// Generate a formula family member or encode an instance file.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        vars: usize,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 12)]
        length: usize,
        /// Instance file for `qbf` and `xc`.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Thm18,
    Thm19,
    Thm21,
    Thm11,
    Random,
    Qbf,
    Xc,
}

type Res<T> = std::result::Result<T, String>;

fn read(path: &PathBuf) -> Res<String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_expr(s: &str) -> Res<Formula> {
    parse(s).map_err(|e| e.to_string())
}

impl Input {
    fn formulas(&self) -> Res<Vec<Formula>> {
        let mut out = Vec::new();
        for e in &self.exprs {
            out.push(parse_expr(e)?);
        }
        for f in &self.files {
            let text = read(f)?;
            out.push(parse(&text).map_err(|e| format!("{}: {e}", f.display()))?);
        }
        Ok(out)
    }

    fn exactly<const N: usize>(&self) -> Res<[Formula; N]> {
        let fs = self.formulas()?;
        let got = fs.len();
        fs.try_into().map_err(|_| format!("expected {N} formula(s), got {got}"))
    }
}

fn verdict(yes: bool, pos: &str, neg: &str) -> (String, u8) {
    (if yes { pos } else { neg }.to_string(), if yes { 0 } else { 1 })
}

fn list(items: Vec<Formula>, as_json: bool, simplify: bool) -> String {
    let items: Vec<String> = items
        .iter()
        .map(|f| if simplify { collapse_duplicates(f) } else { f.clone() }.to_string())
        .collect();
    if as_json {
        Value::from(items).to_string()
    } else {
        items.join("\n")
    }
}

fn render_trace(t: &PiTrace, trace: bool, as_json: bool) -> String {
    let yes = if t.verdict { "yes" } else { "no" };
    if as_json {
        return json!({
            "verdict": t.verdict,
            "step": t.step.number(),
            "decided_by": t.step.to_string(),
            "normalized": t.normalized.as_ref().and_then(|n| n.to_formula()).map(|f| f.to_string()),
            "witness": t.witness.as_ref().map(|w| w.iter().map(|f| f.to_string()).collect::<Vec<_>>()),
        })
        .to_string();
    }
    if !trace {
        return yes.to_string();
    }
    let mut out = format!("{yes}\ndecided by: {}", t.step);
    if let Some(n) = t.normalized.as_ref().and_then(|n| n.to_formula()) {
        out += &format!("\nnormalized: {n}");
    }
    if let Some(w) = &t.witness {
        let items: Vec<String> = w.iter().map(|f| f.to_string()).collect();
        out += &format!("\nwitness: {{{}}}", items.join(", "));
    }
    out
}

fn run(cmd: Cmd) -> Res<(String, u8)> {
    Ok(match cmd {
        Cmd::Sat(input) => {
            let [f] = input.exactly()?;
            verdict(sat(&f), "sat", "unsat")
        }
        Cmd::Entail(input) => {
            let [f, g] = input.exactly()?;
            verdict(entails(&f, &g), "yes", "no")
        }
        Cmd::Eval { model, world, input } => {
            let [f] = input.exactly()?;
            let m = KripkeModel::parse_fixture(&read(&model)?).map_err(|e| e.to_string())?;
            verdict(m.eval(&world, &f).map_err(|e| e.to_string())?, "true", "false")
        }
        Cmd::Nnf(input) => {
            let [f] = input.exactly()?;
            (nnf(&f).to_string(), 0)
        }
        Cmd::Dnf4 { input, json } => {
            let [f] = input.exactly()?;
            let terms = dnf4(&f).map(|t| t.to_formula().expect("terms are nonempty")).collect();
            (list(terms, json, false), 0)
        }
        Cmd::Cnf4 { input, json } => {
            let [f] = input.exactly()?;
            (list(cnf4(&f), json, false), 0)
        }
        Cmd::Genpi {
            input,
            iter,
            json,
            simplify,
        } => {
            let [f] = input.exactly()?;
            let mode = if iter { Mode::Iterative } else { Mode::Eager };
            (list(gen_pi(&f, mode).clauses, json, simplify), 0)
        }
        Cmd::Implicants { input, json, simplify } => {
            let [f] = input.exactly()?;
            (list(gen_implicants(&f).clauses, json, simplify), 0)
        }
        Cmd::Testpi {
            clause,
            formula,
            trace,
            json,
        } => {
            let t = test_pi_traced(&parse_expr(&clause)?, &parse_expr(&formula)?).map_err(|e| e.to_string())?;
            (render_trace(&t, trace, json), if t.verdict { 0 } else { 1 })
        }
        Cmd::Testimplicant {
            term,
            formula,
            trace,
            json,
        } => {
            let t = test_implicant_traced(&parse_expr(&term)?, &parse_expr(&formula)?).map_err(|e| e.to_string())?;
            (render_trace(&t, trace, json), if t.verdict { 0 } else { 1 })
        }
        Cmd::Classify { def, kind, input } => {
            let [f] = input.exactly()?;
            verdict(is_member(&f, def, kind), "yes", "no")
        }
        Cmd::Gen {
            family,
            n,
            k,
            seed,
            vars,
            depth,
            length,
            file,
            json,
        } => {
            let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| format!("--{flag} is required for this family"));
            let (f, distinguished) = match family {
                Family::Qbf | Family::Xc => {
                    let path = file.ok_or("--file is required for this family")?;
                    let text = read(&path)?;
                    let f = match family {
                        Family::Qbf => QbfInstance::parse(&text).and_then(|q| families::qbf_encode(&q)),
                        _ => XcInstance::parse(&text).and_then(|x| families::xc_encode(&x)),
                    }
                    .map_err(|e| e.to_string())?;
                    (f, Vec::new())
                }
                _ => {
                    let spec = match family {
                        Family::Thm18 => FamilySpec::Thm18 { n: need(n, "n")? },
                        Family::Thm19 => FamilySpec::Thm19 { n: need(n, "n")? },
                        Family::Thm21 => FamilySpec::Thm21 { n: need(n, "n")? },
                        Family::Thm11 => FamilySpec::Thm11 { k: need(k, "k")? },
                        _ => FamilySpec::Random {
                            vars,
                            depth,
                            length,
                            seed,
                        },
                    };
                    families::generate(spec).map_err(|e| e.to_string())?
                }
            };
            let out = if json {
                json!({
                    "formula": f.to_string(),
                    "distinguished": distinguished.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                })
                .to_string()
            } else {
                std::iter::once(&f)
                    .chain(&distinguished)
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            (out, 0)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok((out, code)) => {
            if !out.is_empty() {
                println!("{out}");
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("kpi: {e}");
            ExitCode::from(2)
        }
    }
}
