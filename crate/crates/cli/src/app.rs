//! Command definitions and dispatch.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use densem::compose::{compose, compose_kronecker, WordMeaning};
use densem::density::{DensityMatrix, Measures};
use densem::lexicon::Lexicon;
use densem::pregroup::{parse_type, reduce, PregroupType, ReductionDiagram};
use densem::specmat::{LogBase, SymMatrix, Tolerance};
use serde_json::{json, Value};

use crate::lexfile;
use crate::repro::{self, Settings, Status};

#[derive(Debug, Parser)]
#[command(name = "densem", version, about = "Density-matrix word meanings: similarity, entailment, composition")]
pub struct Cli {
    /// Print machine-readable JSON at full precision.
    #[arg(long, global = true)]
    pub json: bool,

    /// Relative eigenvalue cut for rank and support decisions.
    #[arg(long, global = true, default_value_t = 1e-9, value_name = "FLOAT")]
    pub tol: f64,

    /// Logarithm base for relative entropy.
    #[arg(long, global = true, value_enum, default_value_t = Base::Two)]
    pub log_base: Base,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Base {
    #[value(name = "2")]
    Two,
    #[value(name = "e")]
    E,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fidelity and representativeness between two words.
    #[command(visible_alias = "entail")]
    Sim {
        lexicon: PathBuf,
        a: String,
        b: String,
        /// Minimum representativeness for a graded verdict.
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
    },
    /// Find the reduction diagram of a sequence of types.
    Reduce {
        /// One type per word, e.g. `n "n^r s n^l" n`.
        #[arg(required = true)]
        types: Vec<String>,
        #[arg(long, default_value = "s")]
        target: String,
    },
    /// Compose a sentence from lexicon words.
    Compose(ComposeArgs),
    /// Reproduce the embedded worked examples.
    Repro {
        #[arg(required_unless_present_any = ["all", "list"])]
        case: Option<String>,
        #[arg(long, conflicts_with_all = ["case", "list"])]
        all: bool,
        /// List the case ids.
        #[arg(long, conflicts_with = "case")]
        list: bool,
    },
    /// Lexicon file utilities.
    #[command(subcommand)]
    Lexicon(LexiconCommand),
}

#[derive(Debug, Args)]
pub struct ComposeArgs {
    pub lexicon: PathBuf,
    #[arg(required = true)]
    pub words: Vec<String>,
    #[arg(long, default_value = "s")]
    pub target: String,
    /// Treat the words as `subject verb object` with `verb` a verb table,
    /// composed as |verb⟩⟨verb| ⊙ (subject ⊗ object).
    #[arg(long)]
    pub kronecker: bool,
    /// Read the verb table with rows indexing objects.
    #[arg(long, requires = "kronecker")]
    pub transpose_verb: bool,
    /// A second sentence, space separated, to measure against.
    #[arg(long, value_name = "SENTENCE")]
    pub against: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum LexiconCommand {
    /// Check a lexicon file against the schema.
    Validate { path: PathBuf },
    /// Rewrite a lexicon in canonical form (every word as a matrix).
    Export { path: PathBuf },
    /// Print one of the embedded example lexicons.
    Example {
        #[arg(value_enum)]
        name: Example,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Example {
    #[value(name = "truth-1d")]
    Truth1d,
    #[value(name = "truth-2d")]
    Truth2d,
    Dogs,
    Drinking,
}

/// What a command printed and how the process should exit.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            ..Default::default()
        }
    }
}

/// Exit 1 is a failure in the domain (no reduction, missing word); exit 2
/// is bad input (usage, unparsable types, invalid files).
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub msg: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: 2, msg: msg.into() }
}

fn domain(msg: impl Into<String>) -> Failure {
    Failure { code: 1, msg: msg.into() }
}

impl From<densem::Error> for Failure {
    fn from(e: densem::Error) -> Self {
        match e {
            densem::Error::Parse { .. } => usage(e.to_string()),
            densem::Error::Lookup(ref w) => domain(format!("no such word or verb: `{w}`")),
            _ => domain(e.to_string()),
        }
    }
}

impl From<lexfile::LexError> for Failure {
    fn from(e: lexfile::LexError) -> Self {
        usage(e.to_string())
    }
}

type Res<T> = Result<T, Failure>;

pub fn run(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok(out) => out,
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.msg),
        },
    }
}

fn dispatch(cli: &Cli) -> Res<Outcome> {
    let tol = Tolerance::uniform(cli.tol).map_err(|e| usage(format!("--tol: {e}")))?;
    let base = match cli.log_base {
        Base::Two => LogBase::Two,
        Base::E => LogBase::E,
    };
    let measures = Measures::new(tol, base);
    let ctx = Ctx { json: cli.json, measures };
    match &cli.command {
        Command::Sim { lexicon, a, b, theta } => ctx.sim(&lexfile::load(lexicon)?, a, b, *theta),
        Command::Reduce { types, target } => ctx.reduce(types, target),
        Command::Compose(args) => ctx.compose(args),
        Command::Repro { case, all, list } => ctx.repro(case.as_deref(), *all, *list),
        Command::Lexicon(cmd) => ctx.lexicon(cmd),
    }
}

struct Ctx {
    json: bool,
    measures: Measures,
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("finite values");
    s.push('\n');
    s
}

/// Compact rendering of a reference value or tolerance.
fn short(x: f64) -> String {
    let plain = x.to_string();
    if plain.len() <= 6 {
        plain
    } else if x != 0.0 && x.abs() < 1e-3 {
        format!("{x:e}")
    } else {
        format!("{x:.6}")
    }
}

fn rows_text(op: &SymMatrix, indent: &str) -> String {
    let cells: Vec<Vec<String>> = op
        .to_rows()
        .iter()
        .map(|row| row.iter().map(|x| format!("{x:.4}")).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(0);
    let mut out = String::new();
    for row in cells {
        let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(out, "{indent}[{}]", padded.join(", "));
    }
    out
}

fn diagram_json(d: &ReductionDiagram) -> Value {
    json!({
        "source": d.source.to_string(),
        "target": d.target.to_string(),
        "links": d.links.iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>(),
        "residuals": d.residuals,
    })
}

struct Sentence {
    text: String,
    op: SymMatrix,
    ptype: PregroupType,
    /// Space of each remaining wire; operators are only comparable on equal spaces.
    spaces: Vec<String>,
    diagram: Option<ReductionDiagram>,
}

fn same_spaces(a: &str, sa: &[String], b: &str, sb: &[String]) -> Res<()> {
    if sa == sb {
        return Ok(());
    }
    Err(domain(format!("`{a}` lives in {sa:?} but `{b}` lives in {sb:?}; they cannot be compared")))
}

impl Ctx {
    fn sim(&self, lex: &Lexicon, a: &str, b: &str, theta: f64) -> Res<Outcome> {
        let (wa, wb) = (lex.word(a)?, lex.word(b)?);
        same_spaces(a, &wa.spaces, b, &wb.spaces)?;
        let (ra, rb) = (wa.density()?, wb.density()?);
        let m = &self.measures;
        let f = m.fidelity(&ra, &rb)?;
        let verdict = m.classify(&ra, &rb, theta)?;
        if self.json {
            return Ok(Outcome::ok(render(&json!({
                "a": a,
                "b": b,
                "fidelity": f,
                "forward": verdict.forward,
                "backward": verdict.backward,
                "relation": verdict.relation.as_str(),
            }))));
        }
        let mut out = String::new();
        let _ = writeln!(out, "F({a}, {b}) = {f:.4}");
        let _ = writeln!(out, "R({a}, {b}) = {:.4}", verdict.forward);
        let _ = writeln!(out, "R({b}, {a}) = {:.4}", verdict.backward);
        let _ = writeln!(out, "{}", verdict.relation);
        Ok(Outcome::ok(out))
    }

    fn reduce(&self, types: &[String], target: &str) -> Res<Outcome> {
        let seq = types
            .iter()
            .enumerate()
            .map(|(i, t)| parse_type(t).map_err(|e| usage(format!("type {} (`{t}`): {e}", i + 1))))
            .collect::<Res<Vec<_>>>()?;
        let target = parse_type(target).map_err(|e| usage(format!("--target: {e}")))?;
        let found = reduce(&seq, &target);
        let code = if found.is_some() { 0 } else { 1 };
        let stdout = match (&found, self.json) {
            (Some(d), true) => render(&json!({ "reducible": true, "diagram": diagram_json(d) })),
            (None, true) => render(&json!({
                "reducible": false,
                "source": PregroupType::concat(&seq).to_string(),
                "target": target.to_string(),
            })),
            (Some(d), false) => format!("{d}\n"),
            (None, false) => "NO REDUCTION\n".into(),
        };
        Ok(Outcome {
            code,
            stdout,
            stderr: String::new(),
        })
    }

    fn sentence(&self, lex: &Lexicon, words: &[String], args: &ComposeArgs) -> Res<Sentence> {
        let text = words.join(" ");
        if args.kronecker {
            let [s, v, o] = words else {
                return Err(usage("--kronecker takes exactly three words: subject verb object"));
            };
            let (subj, obj) = (lex.word(s)?, lex.word(o)?);
            let entry = lex.verb(v)?;
            for (w, want) in [(subj, &entry.subject_space), (obj, &entry.object_space)] {
                if w.spaces.len() != 1 || &w.spaces[0] != want {
                    return Err(domain(format!(
                        "`{}` lives in {:?} but `{v}` expects a word in `{want}`",
                        w.word, w.spaces
                    )));
                }
            }
            let table = if args.transpose_verb {
                entry.table.transpose()
            } else {
                entry.table.clone()
            };
            let rho = compose_kronecker(&table, &subj.density()?, &obj.density()?)?;
            return Ok(Sentence {
                text,
                op: rho.into_op(),
                ptype: PregroupType::atom("s"),
                spaces: vec![entry.subject_space.clone(), entry.object_space.clone()],
                diagram: None,
            });
        }
        let target = parse_type(&args.target).map_err(|e| usage(format!("--target: {e}")))?;
        let meanings = words
            .iter()
            .map(|w| lex.word(w).cloned())
            .collect::<densem::Result<Vec<WordMeaning>>>()?;
        let types: Vec<PregroupType> = meanings.iter().map(|m| m.ptype.clone()).collect();
        let diagram = reduce(&types, &target).ok_or_else(|| {
            domain(format!(
                "`{text}` of type `{}` does not reduce to `{target}`",
                PregroupType::concat(&types)
            ))
        })?;
        let out = compose(&meanings, &diagram)?;
        Ok(Sentence {
            text,
            op: out.op().clone(),
            ptype: out.ptype.clone(),
            spaces: out.spaces.clone(),
            diagram: Some(diagram),
        })
    }

    fn compose(&self, args: &ComposeArgs) -> Res<Outcome> {
        let lex = lexfile::load(&args.lexicon)?;
        let first = self.sentence(&lex, &args.words, args)?;
        let second = match &args.against {
            Some(s) => {
                let words: Vec<String> = s.split_whitespace().map(str::to_string).collect();
                Some(self.sentence(&lex, &words, args)?)
            }
            None => None,
        };
        let comparison = match &second {
            Some(other) => {
                same_spaces(&first.text, &first.spaces, &other.text, &other.spaces)?;
                let a = DensityMatrix::with_tolerance(first.op.clone(), &self.measures.tol)?;
                let b = DensityMatrix::with_tolerance(other.op.clone(), &self.measures.tol)?;
                let f = self.measures.fidelity(&a, &b)?;
                Some((f, self.measures.classify(&a, &b, 0.0)?))
            }
            None => None,
        };

        if self.json {
            let one = |s: &Sentence| {
                json!({
                    "sentence": s.text,
                    "type": s.ptype.to_string(),
                    "diagram": s.diagram.as_ref().map(diagram_json),
                    "operator": s.op.to_rows(),
                    "trace": s.op.trace(),
                })
            };
            let mut v = one(&first);
            if let (Some(other), Some((f, verdict))) = (&second, &comparison) {
                v["against"] = one(other);
                v["fidelity"] = json!(f);
                v["forward"] = json!(verdict.forward);
                v["backward"] = json!(verdict.backward);
                v["relation"] = json!(verdict.relation.as_str());
            }
            return Ok(Outcome::ok(render(&v)));
        }

        let mut out = String::new();
        let mut describe = |s: &Sentence| {
            let _ = writeln!(out, "{}  : {}", s.text, s.ptype);
            if let Some(d) = &s.diagram {
                let _ = writeln!(out, "  {d}");
            }
            let _ = writeln!(out, "  trace {:.4}", s.op.trace());
            out.push_str(&rows_text(&s.op, "  "));
        };
        describe(&first);
        if let Some(other) = &second {
            describe(other);
        }
        if let (Some(other), Some((f, verdict))) = (&second, comparison) {
            let (a, b) = (&first.text, &other.text);
            let _ = writeln!(out, "F = {f:.4}");
            let _ = writeln!(out, "R({a} → {b}) = {:.4}", verdict.forward);
            let _ = writeln!(out, "R({b} → {a}) = {:.4}", verdict.backward);
            let _ = writeln!(out, "{}", verdict.relation);
        }
        Ok(Outcome::ok(out))
    }

    fn repro(&self, case: Option<&str>, all: bool, list: bool) -> Res<Outcome> {
        if list {
            return Ok(Outcome::ok(if self.json {
                render(&json!(repro::CASES))
            } else {
                repro::CASES.join("\n") + "\n"
            }));
        }
        let settings = Settings {
            tol: self.measures.tol,
            base: self.measures.base,
        };
        let reports = if all {
            repro::run_all(settings)
        } else {
            let id = case.unwrap_or_default();
            let report = repro::run(id, settings).ok_or_else(|| {
                usage(format!("unknown case `{id}` (known: {})", repro::CASES.join(", ")))
            })?;
            vec![report]
        };
        let passed = reports.iter().filter(|r| r.passed()).count();
        let code = if passed == reports.len() { 0 } else { 1 };

        let stdout = if self.json {
            let cases: Vec<Value> = reports
                .iter()
                .map(|r| {
                    let checks: Vec<Value> = r
                        .checks
                        .iter()
                        .map(|c| {
                            json!({
                                "name": c.name,
                                "status": c.status.to_string(),
                                "value": c.value,
                                "expected": c.expected,
                                "tol": c.tol,
                            })
                        })
                        .collect();
                    json!({
                        "id": r.id,
                        "title": r.title,
                        "passed": r.passed(),
                        "checks": checks,
                        "notes": r.notes,
                    })
                })
                .collect();
            render(&json!({ "cases": cases, "passed": passed, "total": reports.len() }))
        } else {
            let mut out = String::new();
            for r in &reports {
                let verdict = if r.passed() { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "{verdict} {}: {}", r.id, r.title);
                for c in &r.checks {
                    let expect = match c.expected {
                        Some(e) if c.tol == 0.0 => format!("expected {}", short(e)),
                        Some(e) => format!("expected {} ± {}", short(e), short(c.tol)),
                        None => "condition".into(),
                    };
                    let value = match c.expected {
                        Some(_) => format!("{:.4}", c.value),
                        None if c.value == 1.0 => "holds".into(),
                        None => "does not hold".into(),
                    };
                    let mark = match c.status {
                        Status::Info if c.within() => "INFO (inside)".to_string(),
                        Status::Info => "INFO (outside)".to_string(),
                        s => s.to_string(),
                    };
                    let _ = writeln!(out, "  {mark:<14} {}: {value}  [{expect}]", c.name);
                }
                for n in &r.notes {
                    let _ = writeln!(out, "  note: {n}");
                }
            }
            let _ = writeln!(out, "{passed}/{} cases passed", reports.len());
            out
        };
        Ok(Outcome {
            code,
            stdout,
            stderr: String::new(),
        })
    }

    fn lexicon(&self, cmd: &LexiconCommand) -> Res<Outcome> {
        match cmd {
            LexiconCommand::Validate { path } => {
                let lex = lexfile::load(path)?;
                let (s, w, v) = (lex.registry.len(), lex.words().count(), lex.verbs().count());
                Ok(Outcome::ok(if self.json {
                    render(&json!({ "valid": true, "spaces": s, "words": w, "verbs": v }))
                } else {
                    let n = |k: usize, what: &str| format!("{k} {what}{}", if k == 1 { "" } else { "s" });
                    format!("ok: {}, {}, {}\n", n(s, "space"), n(w, "word"), n(v, "verb"))
                }))
            }
            LexiconCommand::Export { path } => Ok(Outcome::ok(lexfile::to_string(&lexfile::load(path)?)?)),
            LexiconCommand::Example { name } => {
                let lex = match name {
                    Example::Truth1d => crate::fixtures::truth_1d(),
                    Example::Truth2d => crate::fixtures::truth_2d(),
                    Example::Dogs => crate::fixtures::dogs_2d(0.5f64.sqrt()),
                    Example::Drinking => crate::fixtures::drinking(),
                };
                Ok(Outcome::ok(lexfile::to_string(&lex)?))
            }
        }
    }
}
