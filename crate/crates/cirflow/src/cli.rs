//! The batch command-line surface.
//!
//! One command per process.  Exit codes follow a fixed contract: 0 for
//! success and true verdicts, 1 for false verdicts (infeasible, not a
//! snark, certificate rejected), 2 for errors, and 3 for "unknown" when a
//! time budget ran out before the decision completed.

use crate::analysis;
use crate::constructions;
use crate::engine::{self, Budget, Verdict};
use crate::error::{Error, Result};
use crate::graph6;
use crate::interval::{IntervalSet, Rational};
use crate::network::{parse_rational, render_rational, Hypergraph3, Network};
use crate::reduction;
use clap::{Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::time::Duration;

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

#[derive(Parser)]
#[command(
    name = "cirflow",
    version,
    about = "Exact laboratory for circular nowhere-zero flows"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an interval-set expression over R/kZ.
    ///
    /// Atoms are canonical interval sets such as "(1,2)u(3,4)", "empty" or
    /// "full"; operators, tightest first: ~ (open complement), + (sum),
    /// ^ (intersection), | (union); plain parentheses group.
    Algebra {
        /// Modulus k of the ring R/kZ.
        #[arg(short, long, default_value_t = 5)]
        k: u32,
        /// The expression to evaluate.
        expr: String,
    },
    /// Compute the open r-capacity of a two-terminal network.
    ///
    /// The input must be a cfnet file with a "terminals u v" line.
    Capacity {
        file: PathBuf,
        /// Flow strength r as "p/q" or an integer, with 4 < r <= 5.
        #[arg(long, default_value = "5")]
        r: String,
        /// Time budget in seconds (default: unlimited).
        #[arg(long)]
        budget: Option<u64>,
        /// Also write the capacity to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether a graph admits a sub-r modular circular
    /// nowhere-zero flow.  Accepts graph6/sparse6 or cfnet input.
    Decide {
        file: PathBuf,
        /// Flow strength r as "p/q" or an integer, with 4 < r <= 5.
        #[arg(long, default_value = "5")]
        r: String,
        /// Time budget in seconds (default: unlimited).
        #[arg(long)]
        budget: Option<u64>,
        /// Worker threads for the root-level search split.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write the flow certificate here on a feasible verdict.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a named construction as a cfnet file.
    ///
    /// Graphs: petersen, s28, k4_triangle_41, mr <depth>,
    /// mr_abstract <depth>.  Two-terminal gadgets (emitted with a
    /// terminals line): petersen_minus_edge, qr, thick14,
    /// thick14_concrete, k4_gadget, butterfly.
    Construct {
        name: String,
        /// Family depth, for mr and mr_abstract.
        param: Option<u32>,
        /// Context strength for gadget resolution.
        #[arg(long, default_value = "5")]
        r: String,
        /// Output file (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compile a 3-uniform hypergraph (one "a b c" triplet per line) into
    /// the flow network whose sub-r feasibility encodes 2-colorability.
    Reduce {
        file: PathBuf,
        /// Flow strength r as "p/q" or an integer, with 4 < r <= 5.
        #[arg(long, default_value = "5")]
        r: String,
        /// Output network file; the layout sidecar goes to "<out>.layout".
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the snark report of a graph (graph6/sparse6 or cfnet).
    VerifySnark { file: PathBuf },
    /// Emit a graph family as graph6 files plus a manifest.
    ///
    /// Families: mr (levels 0..=depth), snarks (fixed list), gp
    /// (generalized Petersen graphs with 5..=5+depth outer vertices).
    Corpus {
        family: String,
        #[arg(long, default_value_t = 1)]
        depth: u32,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
        /// Recorded in the manifest so randomized suites can be reproduced.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Re-verify a flow certificate against a network file.
    Verify {
        network: PathBuf,
        certificate: PathBuf,
    },
}

/// Parses argv, runs one command, and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own help/usage text and distinguishes
            // display requests (--help/--version) from actual errors.
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_TRUE };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(Error::BudgetExhausted) => {
            println!("unknown: budget exhausted");
            EXIT_UNKNOWN
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Algebra { k, expr } => cmd_algebra(k, &expr),
        Command::Capacity { file, r, budget, out } => cmd_capacity(&file, &r, budget, out),
        Command::Decide { file, r, budget, jobs, out } => {
            cmd_decide(&file, &r, budget, jobs, out)
        }
        Command::Construct { name, param, r, out } => cmd_construct(&name, param, &r, out),
        Command::Reduce { file, r, out } => cmd_reduce(&file, &r, out),
        Command::VerifySnark { file } => cmd_verify_snark(&file),
        Command::Corpus { family, depth, out, seed } => cmd_corpus(&family, depth, &out, seed),
        Command::Verify { network, certificate } => cmd_verify(&network, &certificate),
    }
}

fn decision_strength(text: &str) -> Result<Rational> {
    let r = parse_rational(text)?;
    if r <= Rational::from_integer(4) || r > Rational::from_integer(5) {
        return Err(Error::UnsupportedModulus(format!(
            "{text} (expected 4 < r <= 5)"
        )));
    }
    Ok(r)
}

fn budget_from(secs: Option<u64>) -> Budget {
    match secs {
        Some(s) => Budget::timeout(Duration::from_secs(s)),
        None => Budget::unlimited(),
    }
}

/// Reads a graph in either supported format: cfnet when the header says so,
/// graph6/sparse6 otherwise.
fn read_graph(path: &Path) -> Result<(Network, Option<(u32, u32)>)> {
    let text = std::fs::read_to_string(path)?;
    if text.trim_start().starts_with("cfnet") {
        Network::parse(&text)
    } else {
        Ok((graph6::decode_auto(&text)?, None))
    }
}

fn emit(out: Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn cmd_algebra(k: u32, expr: &str) -> Result<i32> {
    let set = eval_expression(k, expr)?;
    println!("{} amp={} me={}", set.render(), set.amplitude(), set.measure());
    Ok(EXIT_TRUE)
}

fn cmd_capacity(
    file: &Path,
    r: &str,
    budget: Option<u64>,
    out: Option<PathBuf>,
) -> Result<i32> {
    let r = decision_strength(r)?;
    let text = std::fs::read_to_string(file)?;
    let (net, terminals) = Network::parse(&text)?;
    let (u, v) = terminals.ok_or_else(|| {
        Error::Parse("capacity needs a cfnet file with a 'terminals u v' line".into())
    })?;
    let g = crate::network::GEdge::new(net, u, v)?;
    let set = engine::capacity(&g, r, budget_from(budget))?;
    println!("{}", set.render());
    if let Some(path) = out {
        std::fs::write(path, format!("{}\n", set.render()))?;
    }
    Ok(EXIT_TRUE)
}

fn cmd_decide(
    file: &Path,
    r: &str,
    budget: Option<u64>,
    jobs: usize,
    out: Option<PathBuf>,
) -> Result<i32> {
    let r = decision_strength(r)?;
    let (net, _) = read_graph(file)?;
    let verdict = engine::decide_with_jobs(
        &net,
        r,
        &std::collections::BTreeMap::new(),
        budget_from(budget),
        jobs.max(1),
    )?;
    match verdict {
        Verdict::Feasible(cert) => {
            println!("feasible: sub-{}-mcnzf found", render_rational(r));
            emit(out, &cert.render())?;
            Ok(EXIT_TRUE)
        }
        Verdict::Infeasible { reason } => {
            println!("infeasible: {reason}");
            Ok(EXIT_FALSE)
        }
        Verdict::Unknown => {
            println!("unknown: budget exhausted");
            Ok(EXIT_UNKNOWN)
        }
    }
}

fn cmd_construct(name: &str, param: Option<u32>, r: &str, out: Option<PathBuf>) -> Result<i32> {
    let rendered = match name {
        "petersen" => constructions::petersen().render(),
        "s28" => constructions::s28().render(),
        "k4_triangle_41" => constructions::k4_triangle_41().render(),
        "mr" | "mr_abstract" => {
            let depth = param.ok_or_else(|| {
                Error::Parse(format!("construct {name} needs a depth parameter"))
            })?;
            if name == "mr" {
                constructions::mr_family(depth)?.render()
            } else {
                constructions::mr_family_abstract(depth)?.render()
            }
        }
        _ => {
            let r = parse_rational(r)?;
            constructions::resolve_gadget(name, r)?.render()
        }
    };
    emit(out, &rendered)?;
    Ok(EXIT_TRUE)
}

fn cmd_reduce(file: &Path, r: &str, out: Option<PathBuf>) -> Result<i32> {
    let r = decision_strength(r)?;
    let text = std::fs::read_to_string(file)?;
    let h = Hypergraph3::parse(&text)?;
    let (net, layout) = reduction::rational_variant(&h, r)?;
    eprintln!(
        "compiled {} triplets into {} vertices, {} edges",
        h.triplets().len(),
        net.vertices().count(),
        net.n_edges()
    );
    if let Some(path) = &out {
        let mut sidecar = path.clone().into_os_string();
        sidecar.push(".layout");
        std::fs::write(sidecar, layout.render())?;
    }
    emit(out, &net.render())?;
    Ok(EXIT_TRUE)
}

fn cmd_verify_snark(file: &Path) -> Result<i32> {
    let (net, _) = read_graph(file)?;
    let report = analysis::snark_report(&net)?;
    print!("{}", report.render());
    Ok(if report.is_snark { EXIT_TRUE } else { EXIT_FALSE })
}

fn cmd_corpus(family: &str, depth: u32, out: &Path, seed: u64) -> Result<i32> {
    std::fs::create_dir_all(out)?;
    let mut members: Vec<(String, Network)> = Vec::new();
    match family {
        "mr" => {
            for level in 0..=depth {
                members.push((format!("mr_{level}"), constructions::mr_family(level)?));
            }
        }
        "snarks" => {
            members.push(("petersen".into(), constructions::petersen()));
            members.push(("s28".into(), constructions::s28()));
        }
        "gp" => {
            for n in 5..=5 + depth {
                for k in 1..(n as f64 / 2.0).ceil() as u32 {
                    members.push((
                        format!("gp_{n}_{k}"),
                        analysis::generalized_petersen(n, k)?,
                    ));
                }
            }
        }
        _ => return Err(Error::Parse(format!("unknown corpus family '{family}'"))),
    }
    let mut manifest = String::new();
    manifest.push_str(&format!("family: {family}\n"));
    manifest.push_str(&format!("depth: {depth}\n"));
    manifest.push_str(&format!("seed: {seed}\n"));
    manifest.push_str(&format!("count: {}\n", members.len()));
    for (name, net) in &members {
        let file = format!("{name}.g6");
        std::fs::write(out.join(&file), graph6::encode_graph6(net)?)?;
        manifest.push_str(&format!(
            "{file}: {} vertices, {} edges\n",
            net.vertices().count(),
            net.n_edges()
        ));
    }
    std::fs::write(out.join("manifest.txt"), manifest)?;
    println!("wrote {} graphs to {}", members.len(), out.display());
    Ok(EXIT_TRUE)
}

fn cmd_verify(network: &Path, certificate: &Path) -> Result<i32> {
    let (net, _) = read_graph(network)?;
    let text = std::fs::read_to_string(certificate)?;
    let cert = engine::FlowAssignment::parse(&text)?;
    match engine::verify(&net, &cert) {
        Ok(()) => {
            println!("certificate verifies");
            Ok(EXIT_TRUE)
        }
        Err(Error::Certificate(reason)) => {
            println!("certificate rejected: {reason}");
            Ok(EXIT_FALSE)
        }
        Err(e) => Err(e),
    }
}

// ---- the algebra expression language ----

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Literal(String),
    Plus,
    Caret,
    Pipe,
    Tilde,
    Open,
    Close,
}

/// Lexes an expression.  A '(' starts an interval literal when it matches
/// "(<int>,<int>)", otherwise it is a grouping parenthesis; literal chunks
/// chain greedily over 'u' so "(1,2)u(3,4)" is one atom.
fn lex(expr: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = expr.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    let literal_chunk = |at: usize| -> Option<usize> {
        // Matches (<digits>,<digits>) starting at `at`, returning the index
        // one past the closing parenthesis.
        let mut j = at;
        if chars.get(j) != Some(&'(') {
            return None;
        }
        j += 1;
        let d0 = j;
        while chars.get(j).is_some_and(char::is_ascii_digit) {
            j += 1;
        }
        if j == d0 || chars.get(j) != Some(&',') {
            return None;
        }
        j += 1;
        let d1 = j;
        while chars.get(j).is_some_and(char::is_ascii_digit) {
            j += 1;
        }
        (j > d1 && chars.get(j) == Some(&')')).then_some(j + 1)
    };
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                tokens.push(Token::Plus);
                i += 1;
            }
            '^' => {
                tokens.push(Token::Caret);
                i += 1;
            }
            '|' => {
                tokens.push(Token::Pipe);
                i += 1;
            }
            '~' => {
                tokens.push(Token::Tilde);
                i += 1;
            }
            ')' => {
                tokens.push(Token::Close);
                i += 1;
            }
            '(' => {
                if let Some(mut end) = literal_chunk(i) {
                    while chars.get(end) == Some(&'u') {
                        match literal_chunk(end + 1) {
                            Some(next) => end = next,
                            None => break,
                        }
                    }
                    tokens.push(Token::Literal(chars[i..end].iter().collect()));
                    i = end;
                } else {
                    tokens.push(Token::Open);
                    i += 1;
                }
            }
            'a'..='z' => {
                let start = i;
                while chars.get(i).is_some_and(|c| c.is_ascii_lowercase()) {
                    i += 1;
                }
                tokens.push(Token::Literal(chars[start..i].iter().collect()));
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected character '{other}' in expression"
                )))
            }
        }
    }
    Ok(tokens)
}

struct ExprParser<'a> {
    tokens: &'a [Token],
    pos: usize,
    k: u32,
}

/// Evaluates an interval-set expression over R/kZ.  Precedence, tightest
/// first: ~, +, ^, |; binary operators associate to the left.
pub fn eval_expression(k: u32, expr: &str) -> Result<IntervalSet> {
    let tokens = lex(expr)?;
    let mut parser = ExprParser { tokens: &tokens, pos: 0, k };
    let set = parser.union()?;
    match parser.tokens.get(parser.pos) {
        None => Ok(set),
        Some(tok) => Err(Error::Parse(format!("unexpected trailing token {tok:?}"))),
    }
}

impl ExprParser<'_> {
    fn eat(&mut self, tok: &Token) -> bool {
        if self.tokens.get(self.pos) == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn union(&mut self) -> Result<IntervalSet> {
        let mut acc = self.intersection()?;
        while self.eat(&Token::Pipe) {
            acc = acc.union(&self.intersection()?)?;
        }
        Ok(acc)
    }

    fn intersection(&mut self) -> Result<IntervalSet> {
        let mut acc = self.sum()?;
        while self.eat(&Token::Caret) {
            acc = acc.intersect(&self.sum()?)?;
        }
        Ok(acc)
    }

    fn sum(&mut self) -> Result<IntervalSet> {
        let mut acc = self.unary()?;
        while self.eat(&Token::Plus) {
            acc = acc.add(&self.unary()?)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<IntervalSet> {
        if self.eat(&Token::Tilde) {
            return Ok(self.unary()?.open_complement());
        }
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Literal(text)) => {
                self.pos += 1;
                IntervalSet::parse(self.k, &text)
            }
            Some(Token::Open) => {
                self.pos += 1;
                let inner = self.union()?;
                if !self.eat(&Token::Close) {
                    return Err(Error::Parse("missing closing parenthesis".into()));
                }
                Ok(inner)
            }
            other => Err(Error::Parse(format!(
                "expected an interval set or '(', got {other:?}"
            ))),
        }
    }
}
