use std::io::{self, BufRead, IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;
use surreal_core::closure;
use surreal_core::days::{self, TreeFormat};
use surreal_core::embed::{self, OrdinalImage, RealImage};
use surreal_core::{Dyadic, Error as CoreError, Ordinal, Rational};
use surreal_cli::parser::{parse, parse_stmt};
use surreal_cli::render::{self, Format, SCHEMA};
use surreal_cli::{CliError, Config, Payload, Result, Session};

#[derive(Parser)]
#[command(name = "surreal", version, about = "Exact surreal number calculator")]
struct Cli {
    /// Evaluate one expression and exit.
    #[arg(long, short = 'e', value_name = "EXPR")]
    eval: Option<String>,
    /// Closure rounds for inverses and square roots.
    #[arg(long, global = true, default_value_t = 8)]
    steps: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest day `day` will enumerate.
    #[arg(long, global = true, default_value_t = 2)]
    max_day: usize,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the forms of day N under the constructed order.
    Day { n: usize },
    /// Export the tree of canonical values down to depth D.
    Tree { depth: usize },
    /// Show the image of a familiar number.
    Embed {
        #[command(subcommand)]
        what: Embed,
    },
    /// Trace the reciprocal closure of an expression.
    Inv {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Trace the square-root closure of an expression.
    Sqrt {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Explicit seeds `a,b|c`; by default they come from the options.
        #[arg(long)]
        seeds: Option<String>,
    },
    /// Evaluate every statement of a file.
    Run { file: PathBuf },
    /// Read statements from standard input.
    Repl,
}

#[derive(Subcommand)]
enum Embed {
    Int {
        #[arg(allow_negative_numbers = true)]
        n: i64,
    },
    Dyadic {
        #[arg(allow_hyphen_values = true)]
        d: String,
    },
    Rat {
        #[arg(allow_hyphen_values = true)]
        q: String,
        #[arg(long, default_value_t = 6)]
        depth: u32,
    },
    Ord { alpha: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = io::stdout().lock();
    match dispatch(&cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io(e)) if e.contains("Broken pipe") => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn config(cli: &Cli) -> Config {
    Config {
        steps: cli.steps,
        max_day: cli.max_day,
    }
}

fn io_err(e: io::Error) -> CliError {
    match e.kind() {
        io::ErrorKind::BrokenPipe => CliError::Io("Broken pipe".to_string()),
        _ => CliError::Io(e.to_string()),
    }
}

fn dispatch(cli: &Cli, out: &mut impl Write) -> Result<()> {
    let fmt = cli.format;
    if let Some(src) = &cli.eval {
        let mut s = Session::new(config(cli));
        let r = s.eval(&parse(src)?)?;
        writeln!(out, "{}", render::render(&mut s.ctx, &r, fmt)?).map_err(io_err)?;
        return Ok(());
    }
    let text = match &cli.command {
        None | Some(Command::Repl) => return repl(cli, out),
        Some(Command::Run { file }) => {
            let src = std::fs::read_to_string(file).map_err(|e| CliError::Io(format!("{}: {e}", file.display())))?;
            return run_lines(cli, &src, out);
        }
        Some(Command::Day { n }) => day(cli, *n)?,
        Some(Command::Tree { depth }) => tree(*depth, fmt)?,
        Some(Command::Embed { what }) => embed(what, fmt)?,
        Some(Command::Inv { expr }) => inv(cli, expr)?,
        Some(Command::Sqrt { expr, seeds }) => sqrt(cli, expr, seeds.as_deref())?,
    };
    writeln!(out, "{}", text.trim_end()).map_err(io_err)
}

fn day(cli: &Cli, n: usize) -> Result<String> {
    if n > cli.max_day {
        return Err(CoreError::DayTooLarge {
            requested: n,
            cap: cli.max_day,
        }
        .into());
    }
    let mut ctx = surreal_core::Context::new();
    let report = days::enumerate_day(&mut ctx, n)?;
    Ok(match cli.format {
        Format::Json => {
            let mut doc = report.to_json();
            doc["schema"] = json!(SCHEMA);
            doc.to_string()
        }
        Format::Dot => return Err(CliError::Unsupported("dot output for day; try tree".to_string())),
        Format::Text | Format::Table => report.to_table(),
    })
}

fn tree(depth: usize, fmt: Format) -> Result<String> {
    Ok(match fmt {
        Format::Dot => days::export_tree(depth, TreeFormat::Dot)?,
        Format::Json => days::export_tree(depth, TreeFormat::Json)?,
        Format::Text | Format::Table => {
            if depth > days::MAX_TREE_DEPTH {
                return Err(CoreError::BudgetTooLarge {
                    what: "tree depth",
                    requested: depth,
                    max: days::MAX_TREE_DEPTH,
                }
                .into());
            }
            let mut lines = Vec::new();
            for n in 0..=depth {
                let vals = days::new_canonical_values(n)?;
                let vals: Vec<String> = vals.iter().map(ToString::to_string).collect();
                lines.push(format!("{n}: {}", vals.join(" ")));
            }
            lines.join("\n")
        }
    })
}

fn parse_arg<T: std::str::FromStr>(s: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    s.parse().map_err(|e: T::Err| CliError::Syntax {
        column: 1,
        message: e.to_string(),
    })
}

fn embed(what: &Embed, fmt: Format) -> Result<String> {
    let mut ctx = surreal_core::Context::new();
    let (name, form, extra) = match what {
        Embed::Int { n } => (format!("s_Z({n})"), embed::s_z(&mut ctx, *n), json!(null)),
        Embed::Dyadic { d } => {
            let d: Dyadic = parse_arg(d)?;
            (format!("s_D({d})"), embed::s_d(&mut ctx, &d), json!(null))
        }
        Embed::Rat { q, depth } => {
            let q: Rational = parse_arg(q)?;
            match embed::s_r(&mut ctx, &q, *depth) {
                RealImage::Exact(f) => (format!("s_R({q})"), f, json!(null)),
                RealImage::Cut(c) => {
                    let f = c.form(&mut ctx);
                    let info = match fmt {
                        Format::Json => c.to_json(),
                        _ => json!(render::real_cut_text(&c)),
                    };
                    (format!("s_R({q})"), f, info)
                }
            }
        }
        Embed::Ord { alpha } => {
            let a: Ordinal = parse_arg(alpha)?;
            match embed::s_on(&mut ctx, &a) {
                OrdinalImage::Form(f) => (format!("s_On({a})"), f, json!(null)),
                OrdinalImage::Cnf(c) => {
                    return Ok(match fmt {
                        Format::Json => json!({"schema": SCHEMA, "layer": "CNF", "embedding": format!("s_On({a})"), "result": c.to_string()}).to_string(),
                        _ => format!("s_On({a}) = {c}"),
                    })
                }
            }
        }
    };
    Ok(match fmt {
        Format::Json => json!({
            "schema": SCHEMA,
            "layer": "GAMEFORM",
            "embedding": name,
            "result": {
                "form": ctx.to_json(form),
                "text": render::form_text(&mut ctx, form),
                "born": ctx.born(form),
                "value": ctx.value(form).ok().map(|v| v.to_string()),
            },
            "cut": extra,
        })
        .to_string(),
        Format::Dot => render::dot(&mut ctx, form)?,
        Format::Text | Format::Table => {
            let mut s = format!("{name} = {}", render::form_text(&mut ctx, form));
            if let Some(t) = extra.as_str() {
                s.push_str(&format!("\n{t}"));
            }
            s
        }
    })
}

fn operand(s: &mut Session, src: &str) -> Result<surreal_core::FormId> {
    let r = s.eval(&parse(src)?)?;
    match r.payload {
        Payload::Form(f) => Ok(f),
        Payload::Number(q) => {
            let d = Dyadic::from_rational(&q).ok_or_else(|| CoreError::NotDyadic(q.to_string()))?;
            Ok(s.ctx.dyadic(&d))
        }
        _ => Err(CliError::LayerMismatch(format!("{src} is not a finite game form"))),
    }
}

fn trace(cli: &Cli, mut round: impl FnMut(usize) -> Result<closure::CutApprox>) -> Result<String> {
    let mut rounds = Vec::new();
    let mut last = round(0)?;
    if cli.format == Format::Text || cli.format == Format::Table {
        rounds.push(format!("step 0: {}", render::cut_text(&last)));
    }
    for k in 1..=cli.steps {
        last = round(k)?;
        rounds.push(format!("step {k}: {}", render::cut_text(&last)));
        if last.fixpoint {
            break;
        }
    }
    Ok(match cli.format {
        Format::Json => json!({"schema": SCHEMA, "layer": "CUT", "result": last.to_json(), "provenance": [format!("steps={}", cli.steps)]}).to_string(),
        Format::Dot => return Err(CliError::Unsupported("dot output for a closure trace".to_string())),
        Format::Text | Format::Table => rounds.join("\n"),
    })
}

fn inv(cli: &Cli, src: &str) -> Result<String> {
    let mut s = Session::new(config(cli));
    let x = operand(&mut s, src)?;
    trace(cli, |k| Ok(closure::inverse(&mut s.ctx, x, k)?))
}

fn parse_seeds(seeds: &str) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let (l, r) = seeds.split_once('|').ok_or_else(|| CliError::Syntax {
        column: 1,
        message: "seeds look like a,b|c".to_string(),
    })?;
    let side = |t: &str| -> Result<Vec<Rational>> {
        t.split(',').map(str::trim).filter(|p| !p.is_empty()).map(parse_arg).collect()
    };
    Ok((side(l)?, side(r)?))
}

fn sqrt(cli: &Cli, src: &str, seeds: Option<&str>) -> Result<String> {
    let mut s = Session::new(config(cli));
    match seeds {
        Some(seeds) => {
            let (l, r) = parse_seeds(seeds)?;
            let radicand = match s.eval(&parse(src)?)?.payload {
                Payload::Number(q) => q,
                Payload::Form(f) => s.ctx.value(f)?.to_rational(),
                _ => return Err(CliError::LayerMismatch(format!("{src} is not a finite value"))),
            };
            trace(cli, |k| Ok(closure::sqrt_iterate_seeded(&radicand, l.clone(), r.clone(), k)?))
        }
        None => {
            let x = operand(&mut s, src)?;
            trace(cli, |k| Ok(closure::sqrt_iterate(&mut s.ctx, x, k)?))
        }
    }
}

fn statement(s: &mut Session, line: &str, fmt: Format) -> Result<String> {
    let (name, r) = s.run(&parse_stmt(line)?)?;
    let body = render::render(&mut s.ctx, &r, fmt)?;
    Ok(match name {
        Some(n) if fmt == Format::Text => format!("{n} = {body}"),
        _ => body,
    })
}

fn is_blank(line: &str) -> bool {
    let t = line.trim();
    t.is_empty() || t.starts_with('#')
}

fn run_lines(cli: &Cli, src: &str, out: &mut impl Write) -> Result<()> {
    let mut s = Session::new(config(cli));
    for (i, line) in src.lines().enumerate() {
        if is_blank(line) {
            continue;
        }
        let body = statement(&mut s, line, cli.format).map_err(|e| CliError::Io(format!("line {}: {e}", i + 1)))?;
        writeln!(out, "{body}").map_err(io_err)?;
    }
    Ok(())
}

fn repl(cli: &Cli, out: &mut impl Write) -> Result<()> {
    let mut s = Session::new(config(cli));
    let stdin = io::stdin();
    let interactive = stdin.is_terminal();
    let mut failed = false;
    loop {
        if interactive {
            write!(out, "> ").map_err(io_err)?;
            out.flush().map_err(io_err)?;
        }
        let mut line = String::new();
        if stdin.lock().read_line(&mut line).map_err(io_err)? == 0 {
            break;
        }
        let line = line.trim();
        if matches!(line, "quit" | "exit") {
            break;
        }
        if is_blank(line) {
            continue;
        }
        match statement(&mut s, line, cli.format) {
            Ok(body) => writeln!(out, "{body}").map_err(io_err)?,
            Err(e) => {
                failed = true;
                out.flush().map_err(io_err)?;
                eprintln!("error: {e}");
            }
        }
    }
    if failed && !interactive {
        return Err(CliError::Io("some statements failed".to_string()));
    }
    Ok(())
}
