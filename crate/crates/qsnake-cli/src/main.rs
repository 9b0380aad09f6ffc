use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qsnake::cf::{cf_even, tree_level, word_of};
use qsnake::fence::{fence_of_rational, FencePoset, OrderIdeal};
use qsnake::markoff::{christoffel_table, markoff_numbers_upto, markoff_of, mu};
use qsnake::numeration::{enumerate_admissible, is_filled, rep, val, Digits};
use qsnake::qpoly::{mu_q, q_shift_identity_check, QMat2, QModel};
use qsnake::render::{fence_dot, fence_svg, snake_dot, snake_svg};
use qsnake::snake::{prefix_suffix_table, snake_of_rational, Matching, MatchingClass, PrefixSuffixRow, SnakeGraph};
use qsnake::verify::{run, run_criterion, Level, Report};
use qsnake::words::is_christoffel;
use qsnake::{q_rational, BinaryWord, CfExpansion, Error, Rational};

const EXIT_PARSE: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Parser)]
#[command(name = "qsnake", version, about = "q-rationals, admissible numeration, fence posets and snake graphs")]
struct Cli {
    /// Output format; `svg` and `dot` apply to `render` only.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Svg,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Numerator and denominator of [x]_q.
    Qrat {
        x: Rational,
        /// Also check [x+1]_q = q[x]_q + 1.
        #[arg(long)]
        shift_check: bool,
    },
    /// Admissible digits of n, least significant first.
    Rep {
        #[arg(allow_hyphen_values = true)]
        n: num_bigint::BigInt,
        #[arg(long)]
        cf: CfExpansion,
    },
    /// Integer represented by comma-separated digits.
    Val {
        digits: Digits,
        #[arg(long)]
        cf: CfExpansion,
    },
    /// List (or count) admissible sequences, fence ideals or snake matchings of x.
    Enum {
        kind: EnumKind,
        x: Rational,
        #[arg(long)]
        count: bool,
    },
    /// Draw the snake graph or fence poset of x.
    Render {
        kind: RenderKind,
        x: Rational,
        /// SVG output (the default unless `--format dot`).
        #[arg(long)]
        svg: bool,
        /// Highlight the i-th matching (snake) or ideal (fence) in enumeration order.
        #[arg(long)]
        select: Option<usize>,
    },
    /// Prefix and suffix table of the snake graph of x.
    Table { x: Rational },
    /// Markoff numbers and the Markoff map on Christoffel words.
    Markoff {
        #[arg(long, conflicts_with_all = ["word", "christoffel"])]
        upto: Option<u64>,
        #[arg(long, conflicts_with = "christoffel")]
        word: Option<BinaryWord>,
        /// Table of every Christoffel word up to this length.
        #[arg(long)]
        christoffel: Option<usize>,
        /// With --word: accept words that are not Christoffel and print μ(w)₁₂.
        #[arg(long, requires = "word")]
        any_word: bool,
    },
    /// Levels 1..=depth of the Stern–Brocot or Calkin–Wilf tree.
    Tree {
        kind: TreeKind,
        #[arg(long)]
        depth: usize,
    },
    /// Run the acceptance suite.
    Verify {
        #[arg(long, default_value = "desk")]
        level: Level,
        /// Run a single criterion (1..=9).
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=9))]
        criterion: Option<u8>,
        /// Corrupt a generator to exercise the harness.
        #[arg(long, hide = true)]
        inject_fault: Option<Fault>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumKind {
    Admissible,
    Ideals,
    Matchings,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderKind {
    Snake,
    Fence,
}

#[derive(Clone, Copy, ValueEnum)]
enum TreeKind {
    Sb,
    Cw,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fault {
    /// L_q with its lower-left q replaced by 1.
    Lq,
    /// R_q with its upper-left q replaced by 1.
    Rq,
}

enum Failure {
    Input(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_PARSE) } else { ExitCode::SUCCESS };
        }
    };
    let (out, code) = match execute(&cli) {
        Ok(s) => (s, ExitCode::SUCCESS),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_PARSE);
        }
        Err(Failure::Verification(s)) => (s, ExitCode::from(EXIT_VERIFY)),
    };
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    if !out.ends_with('\n') {
        let _ = stdout.write_all(b"\n");
    }
    code
}

fn execute(cli: &Cli) -> Outcome {
    let fmt = cli.format;
    let graphic = matches!(fmt, Format::Svg | Format::Dot);
    if graphic && !matches!(cli.command, Command::Render { .. }) {
        return Err(Failure::Input("--format svg|dot applies to `render` only".into()));
    }
    match &cli.command {
        Command::Qrat { x, shift_check } => qrat(x, *shift_check, fmt),
        Command::Rep { n, cf } => {
            let b = rep(n, cf)?;
            Ok(match fmt {
                Format::Json => json!({"n": n.to_string(), "cf": cf.to_string(), "digits": b.0}).to_string(),
                _ => b.to_string(),
            })
        }
        Command::Val { digits, cf } => {
            let n = val(digits, cf)?;
            Ok(match fmt {
                Format::Json => json!({"n": n.to_string(), "cf": cf.to_string(), "digits": digits.0}).to_string(),
                _ => n.to_string(),
            })
        }
        Command::Enum { kind, x, count } => enumerate(*kind, x, *count, fmt),
        Command::Render { kind, x, select, .. } => render(*kind, x, *select, fmt),
        Command::Table { x } => table(x, fmt),
        Command::Markoff { upto, word, christoffel, any_word } => {
            markoff(*upto, word.as_ref(), *christoffel, *any_word, fmt)
        }
        Command::Tree { kind, depth } => {
            let levels: Vec<Vec<String>> = (1..=*depth)
                .map(|d| tree_level(d, matches!(kind, TreeKind::Sb)).iter().map(|r| r.to_string()).collect())
                .collect();
            Ok(match fmt {
                Format::Json => json!(levels).to_string(),
                _ => levels.iter().map(|l| l.join(" ")).collect::<Vec<_>>().join("\n"),
            })
        }
        Command::Verify { level, criterion, inject_fault } => verify(*level, *criterion, *inject_fault, fmt),
    }
}

fn qrat(x: &Rational, shift_check: bool, fmt: Format) -> Outcome {
    let q = q_rational(x)?;
    let shift = if shift_check { Some(q_shift_identity_check(x)?) } else { None };
    let out = match fmt {
        Format::Json => {
            let mut v = json!({
                "x": x.to_string(),
                "cf": cf_even(x)?.to_string(),
                "numerator": q.numerator,
                "denominator": q.denominator,
                "text": q.to_string(),
            });
            if let Some(ok) = shift {
                v["shift_identity"] = json!(ok);
            }
            v.to_string()
        }
        _ => match shift {
            Some(ok) => format!("{q}\nshift identity [x+1]_q = q[x]_q + 1: {}", if ok { "holds" } else { "FAILS" }),
            None => q.to_string(),
        },
    };
    match shift {
        Some(false) => Err(Failure::Verification(out)),
        _ => Ok(out),
    }
}

fn side(filled: bool) -> &'static str {
    if filled {
        "filled"
    } else {
        "empty"
    }
}

fn edge_json(m: &Matching) -> Value {
    json!(m.edges().iter().map(|e| [[e.0 .0, e.0 .1], [e.1 .0, e.1 .1]]).collect::<Vec<_>>())
}

fn counts(a: usize, b: usize, names: (&str, &str), fmt: Format) -> String {
    match fmt {
        Format::Json => json!({names.0: a, names.1: b, "total": a + b}).to_string(),
        _ => format!("{}={a} {}={b} total={}", names.0, names.1, a + b),
    }
}

fn enumerate(kind: EnumKind, x: &Rational, count: bool, fmt: Format) -> Outcome {
    let a = cf_even(x)?;
    match kind {
        EnumKind::Admissible => {
            let bs = enumerate_admissible(&a);
            let mut rows: Vec<(Digits, String, bool)> = Vec::with_capacity(bs.len());
            for b in bs {
                let n = val(&b, &a)?.to_string();
                let filled = is_filled(&b, &a);
                rows.push((b, n, filled));
            }
            if count {
                let filled = rows.iter().filter(|r| r.2).count();
                return Ok(counts(filled, rows.len() - filled, ("filled", "empty"), fmt));
            }
            Ok(match fmt {
                Format::Json => json!(rows
                    .iter()
                    .map(|(b, n, f)| json!({"digits": b.0, "val": n, "norm": b.norm1(), "filled": f}))
                    .collect::<Vec<_>>())
                .to_string(),
                _ => rows
                    .iter()
                    .map(|(b, n, f)| format!("{b} val={n} norm={} {}", b.norm1(), side(*f)))
                    .collect::<Vec<_>>()
                    .join("\n"),
            })
        }
        EnumKind::Ideals => {
            let f = fence_of_rational(x)?;
            let ideals = f.enumerate_ideals()?;
            if count {
                let filled = ideals.iter().filter(|i| i.contains(0)).count();
                return Ok(counts(filled, ideals.len() - filled, ("filled", "empty"), fmt));
            }
            Ok(match fmt {
                Format::Json => json!({
                    "fence": f.shape(),
                    "ideals": ideals.iter().map(|i| json!({"elements": i.indices(), "size": i.len(), "filled": i.contains(0)})).collect::<Vec<_>>(),
                })
                .to_string(),
                _ => ideals
                    .iter()
                    .map(|i| format!("{:?} size={} {}", i, i.len(), side(i.contains(0))))
                    .collect::<Vec<_>>()
                    .join("\n"),
            })
        }
        EnumKind::Matchings => {
            let g = snake_of_rational(x)?;
            if count {
                let (perp, par) = g.class_counts()?;
                return Ok(counts(perp, par, ("perp", "par"), fmt));
            }
            let ms = g.enumerate_matchings()?;
            let class = |m: &Matching| match g.classify(m) {
                MatchingClass::Perp => "perp",
                MatchingClass::Par => "par",
            };
            Ok(match fmt {
                Format::Json => json!({
                    "word": g.word(),
                    "basic": edge_json(g.basic_matching()),
                    "matchings": ms.iter().map(|m| json!({"class": class(m), "area": g.area(m), "edges": edge_json(m)})).collect::<Vec<_>>(),
                })
                .to_string(),
                _ => ms
                    .iter()
                    .map(|m| {
                        let edges: Vec<String> =
                            m.edges().iter().map(|e| format!("({},{})-({},{})", e.0 .0, e.0 .1, e.1 .0, e.1 .1)).collect();
                        format!("{} area={} {}", class(m), g.area(m), edges.join(" "))
                    })
                    .collect::<Vec<_>>()
                    .join("\n"),
            })
        }
    }
}

fn pick<T>(items: Vec<T>, select: Option<usize>) -> Result<Option<T>, Failure> {
    match select {
        None => Ok(None),
        Some(i) => {
            let n = items.len();
            items
                .into_iter()
                .nth(i)
                .map(Some)
                .ok_or_else(|| Failure::Input(format!("--select {i} out of range (0..{n})")))
        }
    }
}

fn render(kind: RenderKind, x: &Rational, select: Option<usize>, fmt: Format) -> Outcome {
    let dot = fmt == Format::Dot;
    match kind {
        RenderKind::Snake => {
            let g: SnakeGraph = snake_of_rational(x)?;
            let m = match select {
                Some(_) => pick(g.enumerate_matchings()?, select)?,
                None => None,
            };
            Ok(if dot { snake_dot(&g, m.as_ref()) } else { snake_svg(&g, m.as_ref()) })
        }
        RenderKind::Fence => {
            let f: FencePoset = fence_of_rational(x)?;
            let i: Option<OrderIdeal> = match select {
                Some(_) => pick(f.enumerate_ideals()?, select)?,
                None => None,
            };
            Ok(if dot { fence_dot(&f, i.as_ref()) } else { fence_svg(&f, i.as_ref()) })
        }
    }
}

fn table(x: &Rational, fmt: Format) -> Outcome {
    let (pre, suf) = prefix_suffix_table(x)?;
    if fmt == Format::Json {
        return Ok(
            json!({"x": x.to_string(), "word": word_of(&cf_even(x)?)?, "prefixes": pre, "suffixes": suf}).to_string()
        );
    }
    let width = pre.iter().chain(&suf).map(|r| r.word.len()).max().unwrap_or(1).max(1);
    let block = |title: &str, rows: &[PrefixSuffixRow]| {
        let mut s = format!("{title}\n");
        for r in rows {
            s.push_str(&format!(
                "  {:<width$}  perp={:<4} par={:<4} {}\n",
                if r.word.is_empty() { "ε".to_string() } else { r.word.to_string() },
                r.perp,
                r.par,
                r.value
            ));
        }
        s
    };
    Ok(format!("{}{}", block("prefixes", &pre), block("suffixes", &suf)))
}

fn markoff(
    upto: Option<u64>,
    word: Option<&BinaryWord>,
    christoffel: Option<usize>,
    any_word: bool,
    fmt: Format,
) -> Outcome {
    if let Some(n) = upto {
        let ms = markoff_numbers_upto(n);
        return Ok(match fmt {
            Format::Json => json!(ms).to_string(),
            _ => ms.iter().map(u64::to_string).collect::<Vec<_>>().join(" "),
        });
    }
    if let Some(w) = word {
        let m = if any_word { mu(w).0[0][1].clone() } else { markoff_of(w)? };
        return Ok(match fmt {
            Format::Json => {
                let mat = mu(w).0.map(|row| row.map(|e| e.to_string()));
                let q = mu_q(w).entry(0, 1).clone();
                json!({"word": w, "christoffel": is_christoffel(w), "markoff": m.to_string(), "q_markoff": q, "mu": mat})
                    .to_string()
            }
            _ => m.to_string(),
        });
    }
    if let Some(len) = christoffel {
        let rows = christoffel_table(len)?;
        return Ok(match fmt {
            Format::Json => json!(rows).to_string(),
            _ => rows
                .iter()
                .map(|r| {
                    let snake = r.snake_word.as_ref().map_or("-".to_string(), |s| s.to_string());
                    format!("{} {} {} {}", r.word, r.markoff, r.q_markoff, snake)
                })
                .collect::<Vec<_>>()
                .join("\n"),
        });
    }
    Err(Failure::Input("markoff needs --upto, --word or --christoffel".into()))
}

fn faulty_model(fault: Option<Fault>) -> QModel {
    let mut model = QModel::default();
    match fault {
        Some(Fault::Lq) => model.l = QMat2::from_coeffs([[&[0, 1], &[]], [&[1], &[1]]]),
        Some(Fault::Rq) => model.r = QMat2::from_coeffs([[&[1], &[1]], [&[], &[1]]]),
        None => {}
    }
    model
}

fn verify(level: Level, criterion: Option<u8>, fault: Option<Fault>, fmt: Format) -> Outcome {
    let model = faulty_model(fault);
    let report = match criterion {
        Some(id) => Report { level, results: vec![run_criterion(id, level, &model)] },
        None => run(level, &model),
    };
    let out = match fmt {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes"),
        _ => report.to_string(),
    };
    if report.passed() {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}
