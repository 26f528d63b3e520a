//! Command-line front end. [`run`] parses arguments, dispatches to the
//! library and returns an exit code with the text to print, so it can be
//! exercised without spawning a process.
//!
//! Exit codes: 0 on success, 1 when the library rejects the input, 2 for
//! malformed invocations or unparsable expressions.

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::algebra::Element;
use crate::commute;
use crate::grading::Weighting;
use crate::hull;
use crate::parse::{parse_element, parse_word};
use crate::scalar::{self, Scalar};
use crate::series;
use crate::subgroup;
use crate::tsets::TParams;
use crate::words::{Alphabet, Word, MAX_RANK};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "fga", version, about = "Exact computations in the group algebra of a free group")]
pub struct Cli {
    /// Number of free generators (letters a, b, c, ...)
    #[arg(long, global = true, default_value_t = 2)]
    rank: usize,
    /// Generator weights, comma separated rationals such as 1,1/2
    #[arg(long, global = true, allow_hyphen_values = true)]
    weights: Option<String>,
    /// Positive rational threshold for the T-classes
    #[arg(long, global = true)]
    r: Option<String>,
    /// Degree of the left factor for middle splits
    #[arg(long, global = true, allow_hyphen_values = true)]
    ell: Option<String>,
    /// Word-length bound for centralizer computations
    #[arg(long = "max-len", global = true, default_value_t = 3)]
    max_len: usize,
    /// Truncation degree for power series
    #[arg(long, global = true, default_value_t = 4)]
    trunc: usize,
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and normalize an element
    Parse {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Multiply elements left to right
    Mul {
        #[arg(required = true, allow_hyphen_values = true)]
        exprs: Vec<String>,
    },
    /// Test whether two elements commute
    Commutes {
        #[arg(allow_hyphen_values = true)]
        u: String,
        #[arg(allow_hyphen_values = true)]
        v: String,
    },
    /// Degree and homogeneous components (needs --weights)
    Grade {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Highest-degree component (needs --weights)
    Leading {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Factor a word of T(r) as (w0, w1, w2) (needs --weights, --r)
    Factorize { word: String },
    /// Split the middle factor of a word given --ell, or group an element's
    /// terms by middle factor when --ell is absent
    Split {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Membership in O, Õ, T1(r), T2(r), T(r) (needs --weights, --r)
    Tmember {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Build weights whose leading component is a non-monomial
    ConstructH {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Centralizer basis within --max-len
    Centralizer {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Structural report on the centralizer within --max-len
    Analyze {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Fold a subgroup and test or rewrite words
    Subgroup {
        /// Comma-separated generators
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<String>,
        words: Vec<String>,
    },
    /// Magnus embedding truncated at --trunc
    Magnus {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Primitive root and exponent of a word
    PrimitiveRoot { word: String },
}

enum Failure {
    Usage(String),
    Domain(String),
}

type Outcome = Result<String, Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure::Domain(e.to_string())
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    match execute(&cli) {
        Ok(mut out) => {
            if !out.ends_with('\n') {
                out.push('\n');
            }
            (EXIT_OK, out)
        }
        Err(Failure::Usage(m)) => (EXIT_USAGE, format!("error: {m}\n")),
        Err(Failure::Domain(m)) => (EXIT_DOMAIN, format!("error: {m}\n")),
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    alphabet: Alphabet,
}

impl Ctx<'_> {
    fn element(&self, text: &str) -> Result<Element, Failure> {
        parse_element(text, self.alphabet.rank()).map_err(usage)
    }

    fn word(&self, text: &str) -> Result<Word, Failure> {
        parse_word(text, self.alphabet.rank()).map_err(usage)
    }

    fn weights(&self) -> Result<Weighting, Failure> {
        let text = self.cli.weights.as_deref().ok_or_else(|| usage("--weights is required"))?;
        let h = Weighting::parse(text).map_err(usage)?;
        h.check_rank(self.alphabet.rank()).map_err(usage)?;
        Ok(h)
    }

    fn rational(&self, flag: &str, value: &Option<String>) -> Result<Scalar, Failure> {
        let text = value.as_deref().ok_or_else(|| usage(format!("--{flag} is required")))?;
        scalar::parse(text).ok_or_else(|| usage(format!("--{flag}: not a rational: {text}")))
    }

    fn params(&self) -> Result<TParams, Failure> {
        let r = self.rational("r", &self.cli.r)?;
        TParams::new(r, self.weights()?).map_err(usage)
    }

    fn emit(&self, text: String, value: Value) -> String {
        if self.cli.json {
            serde_json::to_string_pretty(&value).expect("serializable")
        } else {
            text
        }
    }
}

fn elements_json(items: &[Element]) -> Vec<String> {
    items.iter().map(Element::to_string).collect()
}

fn execute(cli: &Cli) -> Outcome {
    if cli.rank == 0 || cli.rank > MAX_RANK {
        return Err(usage(format!("--rank must be between 1 and {MAX_RANK}")));
    }
    if cli.max_len == 0 {
        return Err(usage("--max-len must be at least 1"));
    }
    if cli.trunc == 0 {
        return Err(usage("--trunc must be at least 1"));
    }
    let ctx = Ctx { cli, alphabet: Alphabet::new(cli.rank).map_err(usage)? };
    match &cli.command {
        Command::Parse { expr } => {
            let u = ctx.element(expr)?;
            let class = u.classify();
            Ok(ctx.emit(
                u.to_string(),
                json!({
                    "element": u.to_string(),
                    "terms": u.to_json_terms(),
                    "kind": format!("{:?}", class.kind),
                    "unit": class.is_unit,
                }),
            ))
        }
        Command::Mul { exprs } => {
            let mut p = Element::one();
            for e in exprs {
                p = &p * &ctx.element(e)?;
            }
            Ok(ctx.emit(p.to_string(), json!({ "product": p.to_string(), "terms": p.to_json_terms() })))
        }
        Command::Commutes { u, v } => {
            let c = commute::commutes(&ctx.element(u)?, &ctx.element(v)?);
            Ok(ctx.emit(c.to_string(), json!({ "commutes": c })))
        }
        Command::Grade { expr } => {
            let u = ctx.element(expr)?;
            let h = ctx.weights()?;
            let degree = h.degree(&u);
            let parts = h.decompose(&u);
            let mut text = format!("degree: {degree}");
            for (d, c) in parts.iter().rev() {
                text.push_str(&format!("\n{}: {c}", scalar::format(d)));
            }
            let components: serde_json::Map<String, Value> =
                parts.iter().map(|(d, c)| (scalar::format(d), Value::String(c.to_string()))).collect();
            Ok(ctx.emit(
                text,
                json!({ "degree": degree.to_string(), "homogeneous": h.is_homogeneous(&u), "components": components }),
            ))
        }
        Command::Leading { expr } => {
            let u = ctx.element(expr)?;
            let h = ctx.weights()?;
            let lead = h.leading(&u).map_err(domain)?;
            Ok(ctx.emit(
                lead.to_string(),
                json!({ "leading": lead.to_string(), "degree": h.degree(&u).to_string() }),
            ))
        }
        Command::Factorize { word } => {
            let w = ctx.word(word)?;
            let f = ctx.params()?.factorize3(&w).map_err(domain)?;
            Ok(ctx.emit(
                format!("({}, {}, {})", f.w0, f.w1, f.w2),
                json!({ "w0": f.w0.to_string(), "w1": f.w1.to_string(), "w2": f.w2.to_string() }),
            ))
        }
        Command::Split { expr } => {
            let params = ctx.params()?;
            if cli.ell.is_some() {
                let ell = ctx.rational("ell", &cli.ell)?;
                let w = ctx.word(expr)?;
                let s = params.middle_split(&w, &ell).map_err(domain)?;
                Ok(ctx.emit(
                    format!("({}, {}, {})", s.w10, s.w11, s.w12),
                    json!({ "w10": s.w10.to_string(), "w11": s.w11.to_string(), "w12": s.w12.to_string() }),
                ))
            } else {
                let u = ctx.element(expr)?;
                let parts = params.split_by_middle(&u).map_err(domain)?;
                let text: Vec<String> = parts.iter().map(|(w, c)| format!("{w}: {c}")).collect();
                let obj: serde_json::Map<String, Value> =
                    parts.iter().map(|(w, c)| (w.to_string(), Value::String(c.to_string()))).collect();
                Ok(ctx.emit(text.join("\n"), Value::Object(obj)))
            }
        }
        Command::Tmember { expr } => {
            let u = ctx.element(expr)?;
            let m = ctx.params()?.membership(&u).map_err(domain)?;
            let text = format!(
                "O: {}\nOtilde: {}\nT1: {}\nT2: {}\nT: {}",
                m.in_o, m.in_otilde, m.in_t1, m.in_t2, m.in_t
            );
            Ok(ctx.emit(text, serde_json::to_value(m).expect("serializable")))
        }
        Command::ConstructH { expr } => {
            let u = ctx.element(expr)?;
            let h = hull::construct_weighting(&u, ctx.alphabet.rank()).map_err(domain)?;
            let lead = h.leading(&u).map_err(domain)?;
            Ok(ctx.emit(
                format!("weights: {h}\nleading: {lead}"),
                json!({
                    "weights": h.weights().iter().map(scalar::format).collect::<Vec<_>>(),
                    "degree": h.degree(&u).to_string(),
                    "leading": lead.to_string(),
                }),
            ))
        }
        Command::Centralizer { expr } => {
            let u = ctx.element(expr)?;
            let c = commute::centralizer_basis(&u, cli.max_len, ctx.alphabet).map_err(domain)?;
            let mut text = format!("dimension: {}", c.dim());
            for b in &c.basis {
                text.push_str(&format!("\n{b}"));
            }
            Ok(ctx.emit(
                text,
                json!({ "maxLen": c.bound, "basisDim": c.dim(), "basis": elements_json(&c.basis) }),
            ))
        }
        Command::Analyze { expr } => {
            let u = ctx.element(expr)?;
            let h = match &cli.weights {
                Some(text) => Some(Weighting::parse(text).map_err(usage)?),
                None => None,
            };
            let report = commute::analyze(&u, cli.max_len, ctx.alphabet, h.as_ref()).map_err(domain)?;
            let value = report.to_json();
            Ok(ctx.emit(analysis_text(&value), value))
        }
        Command::Subgroup { gens, words } => {
            let gens: Vec<Word> = gens.iter().map(|g| ctx.word(g)).collect::<Result<_, _>>()?;
            let g = subgroup::fold(&gens);
            let mut text = format!(
                "rank: {}\nbasis: {}",
                g.rank(),
                g.basis().iter().map(Word::to_string).collect::<Vec<_>>().join(", ")
            );
            let mut members = Vec::new();
            for text_word in words {
                let w = ctx.word(text_word)?;
                let rewrite = g.rewrite(&w).ok();
                text.push_str(&match &rewrite {
                    Some(x) => format!("\n{w}: member, rewritten {}", rewrite_text(x)),
                    None => format!("\n{w}: not a member"),
                });
                members.push(json!({
                    "word": w.to_string(),
                    "member": rewrite.is_some(),
                    "rewrite": rewrite.as_ref().map(rewrite_text),
                }));
            }
            Ok(ctx.emit(
                text,
                json!({
                    "rank": g.rank(),
                    "basis": g.basis().iter().map(Word::to_string).collect::<Vec<_>>(),
                    "vertices": g.vertex_count(),
                    "edges": g.edge_count(),
                    "words": members,
                }),
            ))
        }
        Command::Magnus { expr } => {
            let u = ctx.element(expr)?;
            let s = series::embed(&u, cli.trunc);
            let terms: Vec<Value> = s
                .terms()
                .map(|(m, c)| json!({ "monomial": m.to_string(), "coeff": scalar::format(c) }))
                .collect();
            Ok(ctx.emit(s.to_string(), json!({ "trunc": cli.trunc, "series": s.to_string(), "terms": terms })))
        }
        Command::PrimitiveRoot { word } => {
            let w = ctx.word(word)?;
            let (root, m) = w.primitive_root().map_err(domain)?;
            Ok(ctx.emit(
                format!("root: {root}\nexponent: {m}"),
                json!({ "root": root.to_string(), "exponent": m }),
            ))
        }
    }
}

/// Rewritten words use `x0, x1, ...` for the subgroup basis.
fn rewrite_text(w: &Word) -> String {
    if w.is_identity() {
        return "1".into();
    }
    let mut parts = Vec::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let l = letters[i];
        let run = letters[i..].iter().take_while(|&&m| m == l).count() as i64;
        let exp = if l.is_inverse() { -run } else { run };
        parts.push(if exp == 1 { format!("x{}", l.generator()) } else { format!("x{}^{exp}", l.generator()) });
        i += run as usize;
    }
    parts.join("*")
}

fn analysis_text(v: &Value) -> String {
    let mut lines = Vec::new();
    for key in [
        "case", "value", "root", "supportedOnRoot", "weights", "weightsOn", "supportingBasis",
        "maxLen", "basisDim", "basis", "degrees", "discrete", "nonnegative", "witnesses",
        "polyGenerator", "diagnostics",
    ] {
        let Some(x) = v.get(key) else { continue };
        let shown = match x {
            Value::Null => continue,
            Value::Array(items) if items.is_empty() => continue,
            Value::String(s) => s.clone(),
            Value::Array(items) => items
                .iter()
                .map(|i| match i {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .collect::<Vec<_>>()
                .join(", "),
            other => other.to_string(),
        };
        lines.push(format!("{key}: {shown}"));
    }
    lines.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String) {
        run(std::iter::once("fga").chain(args.iter().copied()))
    }

    #[test]
    fn basic_commands() {
        assert_eq!(call(&["commutes", "a", "b"]), (0, "false\n".into()));
        assert_eq!(call(&["factorize", "abab", "--weights", "1,1", "--r", "1"]), (0, "(a, ba, b)\n".into()));
        assert_eq!(call(&["parse", "(a+b)^2"]).1, "a^2 + ab + ba + b^2\n");
        assert_eq!(call(&["mul", "a", "A"]).1, "1\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["parse", "a^"]).0, EXIT_USAGE);
        assert_eq!(call(&["parse", "c"]).0, EXIT_USAGE);
        assert_eq!(call(&["bogus"]).0, EXIT_USAGE);
        assert_eq!(call(&["factorize", "ab", "--weights", "1,1", "--r", "1"]).0, EXIT_DOMAIN);
        assert_eq!(call(&["factorize", "ab", "--weights", "1,1", "--r", "0"]).0, EXIT_USAGE);
        assert_eq!(call(&["grade", "a", "--weights", "1"]).0, EXIT_USAGE);
        assert_eq!(call(&["centralizer", "a", "--max-len", "0"]).0, EXIT_USAGE);
        assert_eq!(call(&["leading", "0", "--weights", "1,1"]).0, EXIT_DOMAIN);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn analyze_laurent() {
        let (code, out) = call(&["analyze", "a + a^-1", "--max-len", "3", "--json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["case"], "LaurentCase");
        assert_eq!(v["root"], "a");
        assert_eq!(v["basisDim"], 7);
    }

    #[test]
    fn split_and_subgroup() {
        let (code, out) = call(&["split", "abababab", "--weights", "1,1", "--r", "1", "--ell", "4"]);
        assert_eq!((code, out.as_str()), (0, "(ba, ba, ba)\n"));
        let (code, out) = call(&["subgroup", "--gens", "ab,ba", "abab", "a"]);
        assert_eq!(code, 0);
        assert!(out.contains("abab: member, rewritten x0^2"));
        assert!(out.contains("a: not a member"));
    }
}
