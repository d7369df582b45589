use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use krammer::{
    alexander_polynomial, analyze, burau_word, essential_eigenvector, krammer_polynomial_capped, krammer_word, BraidWord,
    CompletelyReducibleCurve, CurveReport, InvariantResult, KrammerBasis, MonodromyList, PolyMatrix,
};
use serde_json::json;

const EXIT_INPUT: u8 = 2;
const EXIT_INEXACT: u8 = 3;

#[derive(Parser)]
#[command(name = "krammer", version, about = "Krammer matrices and Krammer polynomials of braid monodromies")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Krammer matrix of a braid word (row action, lexicographic pair basis)
    KrammerMatrix(WordArgs),
    /// Krammer polynomial of a list of local monodromies
    KrammerPoly {
        #[command(flatten)]
        input: ListArgs,
        /// Stop after this many maximal minors; exit code 3 if the result is then inexact
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        minor_cap: Option<u64>,
    },
    /// The same invariant through the reduced Burau representation
    Alexander(ListArgs),
    /// Whether a braid word avoids some generator
    Essential(WordArgs),
    /// Fixed vector of every generator except the missing one
    Eigenvector {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        missing: usize,
    },
    /// Check the Artin relations on the generator matrices of B_n
    RelationsCheck {
        #[arg(long)]
        n: usize,
        /// Check the reduced Burau matrices instead
        #[arg(long)]
        burau: bool,
    },
    /// Singular fibers, full-twist family and invariant of a completely reducible curve
    CurveAnalyze {
        /// JSON list of ascending coefficient lists, one per component
        #[arg(long, conflicts_with = "input", required_unless_present = "input")]
        curve: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
        /// Local monodromy words, one per singular fiber, replacing the local model
        #[arg(long = "word")]
        words: Vec<String>,
    },
}

#[derive(Args)]
struct WordArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    word: Option<String>,
    /// File holding the word
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct ListArgs {
    #[arg(long, required_unless_present = "input")]
    n: Option<usize>,
    /// One word per singular fiber; repeat for several fibers
    #[arg(long = "word", conflicts_with = "input", required_unless_present = "input")]
    words: Vec<String>,
    /// JSON file `{"n": .., "words": [..]}`
    #[arg(long)]
    input: Option<PathBuf>,
}

enum Failure {
    Input(String),
    Inexact(String),
    Relations(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

impl WordArgs {
    fn word(&self) -> Result<BraidWord, Failure> {
        let text = match (&self.word, &self.input) {
            (Some(w), _) => w.clone(),
            (None, Some(p)) => read(p)?,
            (None, None) => unreachable!("clap requires one of them"),
        };
        Ok(BraidWord::parse(text.trim(), self.n)?)
    }
}

impl ListArgs {
    fn list(&self) -> Result<MonodromyList, Failure> {
        let Some(path) = &self.input else {
            return Ok(MonodromyList::parse(self.n.expect("clap requires n"), &self.words)?);
        };
        let list: MonodromyList = serde_json::from_str(&read(path)?)?;
        match self.n {
            Some(n) if n != list.strands() => {
                Err(Failure::Input(format!("--n {n} disagrees with n = {} in the input", list.strands())))
            }
            _ => Ok(list),
        }
    }
}

fn matrix_text(m: &PolyMatrix) -> String {
    let cells: Vec<Vec<String>> = (0..m.rows()).map(|i| m.row(i).iter().map(|e| e.to_string()).collect()).collect();
    let widths: Vec<usize> =
        (0..m.cols()).map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in cells {
        let padded: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        writeln!(out, "[ {} ]", padded.join(" | ")).unwrap();
    }
    out
}

fn invariant_text(r: &InvariantResult) -> String {
    let mut out = format!("{}\n", r.polynomial);
    if r.per_fiber.len() > 1 {
        for (k, f) in r.per_fiber.iter().enumerate() {
            writeln!(out, "fiber {}: {f}", k + 1).unwrap();
        }
    }
    if !r.exact {
        writeln!(out, "inexact: stopped after {} minors", r.minors_enumerated).unwrap();
    }
    out
}

fn curve_text(r: &CurveReport) -> String {
    let mut out = format!("components: {}\n", r.components);
    for f in &r.fibers {
        let parts: Vec<String> = f
            .fiber
            .colliding
            .iter()
            .map(|p| format!("{{{}}}", p.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(out, "fiber x = {}: {}", f.fiber.x_value, parts.join(" ")).unwrap();
        if let Some(d) = f.fiber.local_degree {
            write!(out, ", contact order {d}").unwrap();
        }
        match &f.local_polynomial {
            Some(p) => writeln!(out, ", local polynomial {p}").unwrap(),
            None => out.push('\n'),
        }
    }
    if !r.unresolved_pairs.is_empty() {
        let pairs: Vec<String> = r.unresolved_pairs.iter().map(|(i, j)| format!("({i},{j})")).collect();
        writeln!(out, "also meeting at irrational x: {}", pairs.join(" ")).unwrap();
    }
    if let Some(fam) = &r.family {
        writeln!(out, "full-twist family: n = {}, d = {}, x = {}, y = {}", fam.n, fam.d, fam.p1, fam.p2).unwrap();
        writeln!(out, "full twist acts as {}", fam.full_twist_scalar).unwrap();
        let verdict = if fam.closed_form_matches { "matches" } else { "differs" };
        writeln!(out, "closed form {} {verdict}", fam.closed_form).unwrap();
    }
    if let Some(inv) = &r.invariant {
        write!(out, "invariant: {}", invariant_text(inv)).unwrap();
    }
    out
}

fn relation_lines(n: usize, rep: fn(&BraidWord) -> PolyMatrix) -> Result<Vec<(String, bool)>, Failure> {
    let mut lines = Vec::new();
    for i in 1..n as i32 {
        for j in i + 1..n as i32 {
            let (a, b) = if j - i > 1 { (vec![i, j], vec![j, i]) } else { (vec![i, j, i], vec![j, i, j]) };
            let (wa, wb) = (BraidWord::new(n, a)?, BraidWord::new(n, b)?);
            lines.push((format!("{wa} = {wb}"), rep(&wa) == rep(&wb)));
        }
    }
    Ok(lines)
}

fn run(cli: Cli) -> Result<String, Failure> {
    let json = cli.format == Format::Json;
    let render = |v: serde_json::Value| format!("{}\n", serde_json::to_string_pretty(&v).expect("json value"));
    match cli.command {
        Command::KrammerMatrix(args) => {
            let w = args.word()?;
            let m = krammer_word(&w);
            if json {
                let basis = KrammerBasis::new(w.strands())?;
                Ok(render(json!({ "n": w.strands(), "word": w.to_string(), "basis": basis.pairs(), "matrix": m })))
            } else {
                Ok(matrix_text(&m))
            }
        }
        Command::KrammerPoly { input, minor_cap } => {
            let r = krammer_polynomial_capped(&input.list()?, minor_cap);
            let out = if json { render(json!(r)) } else { invariant_text(&r) };
            if r.exact {
                Ok(out)
            } else {
                Err(Failure::Inexact(out))
            }
        }
        Command::Alexander(input) => {
            let p = alexander_polynomial(&input.list()?);
            Ok(if json { render(json!({ "polynomial": p })) } else { format!("{p}\n") })
        }
        Command::Essential(args) => {
            let w = args.word()?;
            let missing = w.missing_generators();
            if json {
                return Ok(render(json!({ "essential": !missing.is_empty(), "missing": missing })));
            }
            if missing.is_empty() {
                Ok("essential: false\n".into())
            } else {
                let list: Vec<String> = missing.iter().map(|k| k.to_string()).collect();
                Ok(format!("essential: true (missing: {})\n", list.join(", ")))
            }
        }
        Command::Eigenvector { n, missing } => {
            let v = essential_eigenvector(n, missing)?;
            if json {
                let basis = KrammerBasis::new(n)?;
                return Ok(render(json!({ "basis": basis.pairs(), "eigenvector": v })));
            }
            let mut out = String::new();
            writeln!(out, "x = ({}) / ({})", v.x.0, v.x.1).unwrap();
            writeln!(out, "y = ({}) / ({})", v.y.0, v.y.1).unwrap();
            writeln!(out, "scale = {}", v.scale).unwrap();
            let basis = KrammerBasis::new(n)?;
            for (((i, j), slot), e) in basis.pairs().iter().zip(&v.pattern).zip(&v.entries) {
                writeln!(out, "({i},{j}) {slot}: {e}").unwrap();
            }
            Ok(out)
        }
        Command::RelationsCheck { n, burau } => {
            KrammerBasis::new(n)?;
            let lines = relation_lines(n, if burau { burau_word } else { krammer_word })?;
            let ok = lines.iter().all(|(_, holds)| *holds);
            let out = if json {
                let rel: Vec<_> = lines.iter().map(|(r, h)| json!({ "relation": r, "holds": h })).collect();
                render(json!({ "n": n, "all_hold": ok, "relations": rel }))
            } else {
                let mut out: String =
                    lines.iter().map(|(r, h)| format!("{r}: {}\n", if *h { "ok" } else { "fails" })).collect();
                writeln!(out, "{} relations, {}", lines.len(), if ok { "all hold" } else { "some fail" }).unwrap();
                out
            };
            if ok {
                Ok(out)
            } else {
                Err(Failure::Relations(out))
            }
        }
        Command::CurveAnalyze { curve, input, words } => {
            let text = match (curve, input) {
                (Some(c), _) => c,
                (None, Some(p)) => read(&p)?,
                (None, None) => unreachable!("clap requires one of them"),
            };
            let c = CompletelyReducibleCurve::from_json(&text)?;
            let monodromy = if words.is_empty() { None } else { Some(MonodromyList::parse(c.degree(), &words)?) };
            let report = analyze(&c, monodromy.as_ref())?;
            Ok(if json { render(json!(report)) } else { curve_text(&report) })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Inexact(out)) => {
            print!("{out}");
            ExitCode::from(EXIT_INEXACT)
        }
        Err(Failure::Relations(out)) => {
            print!("{out}");
            ExitCode::FAILURE
        }
    }
}
