use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use legsum::experiments::{build_examples, check_transverse_simplicity, figure_mountain};
use legsum::front::{self, connect_front_at, FrontDiagram, FrontError, SpliceSite, SpliceStyle};
use legsum::sumcalc::{
    classify, count, default_depth, mountain_range_par, Adjacency, MountainRange, SumSpec, Window,
};
use legsum::{PrimeAtlas, Sign, TbR};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "legsum",
    version,
    about = "Legendrian classes of connected sums"
)]
struct Cli {
    /// Output format.
    #[arg(
        long,
        global = true,
        value_enum,
        env = "LEGSUM_FORMAT",
        default_value = "json"
    )]
    format: Format,

    /// Summand pairs allowed to exchange stabilizations.
    #[arg(long, global = true, value_enum, default_value = "cyclic")]
    adjacency: AdjacencyArg,

    /// Worker threads for range sweeps and diagonal checks.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Write output here instead of stdout.
    #[arg(long, short = 'o', global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Svg,
}

#[derive(Copy, Clone, ValueEnum)]
enum AdjacencyArg {
    Cyclic,
    Linear,
}

#[derive(Subcommand)]
enum Command {
    /// Prime knot atlases.
    #[command(subcommand)]
    Atlas(AtlasCmd),
    /// Classes of connected sums.
    #[command(subcommand)]
    Sum(SumCmd),
    /// Example families.
    #[command(subcommand)]
    Examples(ExamplesCmd),
    /// Front diagrams.
    #[command(subcommand)]
    Front(FrontCmd),
}

#[derive(Subcommand)]
enum AtlasCmd {
    /// Atlas of the negative torus knot (p, q).
    #[command(allow_negative_numbers = true)]
    Torus {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
    },
    Unknot,
    /// Print an atlas file.
    Show {
        file: String,
    },
    /// Check an atlas file; exits 3 when problems are found.
    Validate {
        file: String,
    },
}

#[derive(Args)]
struct Summands {
    /// Summand atlas: a file, `-` for stdin, `torus:P,Q` or `unknot`.
    /// Repeat once per summand, in order.
    #[arg(long = "atlas", required = true, allow_hyphen_values = true)]
    atlases: Vec<String>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct WindowArgs {
    /// Lowest tb (default: depends on the command).
    #[arg(long)]
    tb_min: Option<i64>,
    /// Highest tb (default: the sum's maximal tb).
    #[arg(long)]
    tb_max: Option<i64>,
    #[arg(long)]
    r_min: Option<i64>,
    #[arg(long)]
    r_max: Option<i64>,
}

#[derive(Subcommand)]
enum SumCmd {
    /// Classes at one point.
    #[command(allow_negative_numbers = true)]
    Classify {
        #[command(flatten)]
        summands: Summands,
        #[arg(long)]
        tb: i64,
        #[arg(long)]
        r: i64,
    },
    /// Number of classes at one point.
    #[command(allow_negative_numbers = true)]
    Count {
        #[command(flatten)]
        summands: Summands,
        #[arg(long)]
        tb: i64,
        #[arg(long)]
        r: i64,
    },
    /// Class counts over a window (default: the top 7 levels).
    #[command(allow_negative_numbers = true)]
    Range {
        #[command(flatten)]
        summands: Summands,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Whether every diagonal tb - r merges under negative stabilization
    /// (default window: the top 11 levels).
    #[command(allow_negative_numbers = true)]
    Simple {
        #[command(flatten)]
        summands: Summands,
        #[command(flatten)]
        window: WindowArgs,
        /// Stabilization budget (default: widest peak r-spread plus 4).
        #[arg(long)]
        depth: Option<u32>,
    },
}

#[derive(Subcommand)]
enum ExamplesCmd {
    /// Sums of torus knots that stay distinct after m stabilizations.
    Paper {
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        m: u32,
    },
    /// Mountain range of one torus knot.
    #[command(allow_negative_numbers = true)]
    Figure {
        #[arg(long, default_value_t = -7)]
        p: i64,
        #[arg(long, default_value_t = 3)]
        q: i64,
        /// Levels below the maximal tb to draw.
        #[arg(long, default_value_t = 6)]
        depth: i64,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum SignArg {
    #[value(name = "+", alias = "plus")]
    Plus,
    #[value(name = "-", alias = "minus")]
    Minus,
}

#[derive(Copy, Clone, ValueEnum)]
enum StyleArg {
    Inline,
    Sequential,
}

#[derive(Subcommand)]
enum FrontCmd {
    /// tb, r and cusp tallies of a front file.
    Invariants { file: String },
    /// Add a zigzag on one segment.
    Stabilize {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        sign: SignArg,
        /// Segment index, counted by left ends from the left.
        #[arg(long, default_value_t = 0)]
        edge: usize,
    },
    /// Connected sum of two fronts.
    Connect {
        first: String,
        second: String,
        /// Column of the right cusp of the first front.
        #[arg(long, requires = "left")]
        right: Option<usize>,
        /// Column of the left cusp of the second front.
        #[arg(long, requires = "right")]
        left: Option<usize>,
        #[arg(long, value_enum, default_value = "inline")]
        style: StyleArg,
    },
    /// Draw a front (text, or SVG with `--format svg`).
    Plot { file: String },
    /// Front of the (-(2n+1), 2) torus knot.
    Twist {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug)]
enum CliError {
    Lib(legsum::Error),
    Usage(String),
}

impl From<legsum::Error> for CliError {
    fn from(e: legsum::Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<FrontError> for CliError {
    fn from(e: FrontError) -> Self {
        CliError::Lib(e.into())
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(e) => e.exit_code() as u8,
            CliError::Usage(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Usage(m) => f.write_str(m),
        }
    }
}

type Out = Result<String, CliError>;

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")))
    }
}

fn load_atlas(arg: &str) -> Result<PrimeAtlas, CliError> {
    if arg == "unknot" {
        return Ok(PrimeAtlas::unknot());
    }
    if let Some(rest) = arg.strip_prefix("torus:") {
        let bad = || CliError::Usage(format!("expected torus:P,Q, got `{arg}`"));
        let (p, q) = rest.split_once(',').ok_or_else(bad)?;
        let p = p.trim().parse().map_err(|_| bad())?;
        let q = q.trim().parse().map_err(|_| bad())?;
        return Ok(PrimeAtlas::torus(p, q)?);
    }
    Ok(PrimeAtlas::from_json(&read_input(arg)?)?)
}

fn load_front(path: &str) -> Result<FrontDiagram, CliError> {
    Ok(front::parse_front(&read_input(path)?)?)
}

fn pretty(v: serde_json::Value) -> String {
    serde_json::to_string_pretty(&v).expect("json value") + "\n"
}

struct Ctx {
    format: Format,
    adjacency: Adjacency,
    jobs: usize,
}

impl Ctx {
    fn spec(&self, s: &Summands) -> Result<SumSpec, CliError> {
        let atlases = s
            .atlases
            .iter()
            .map(|a| load_atlas(a))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SumSpec::new(atlases)?.with_adjacency(self.adjacency))
    }

    fn no_svg(&self) -> Result<(), CliError> {
        if self.format == Format::Svg {
            return Err(CliError::Usage(
                "svg output is only available for plots".into(),
            ));
        }
        Ok(())
    }

    fn plot(&self, m: &MountainRange) -> String {
        match self.format {
            Format::Json => m.to_json() + "\n",
            Format::Text => m.to_ascii(),
            Format::Svg => m.to_svg(),
        }
    }
}

fn window(spec: &SumSpec, w: &WindowArgs, levels: i64) -> Result<Window, CliError> {
    let tb_max = w.tb_max.unwrap_or_else(|| spec.max_tb_sum());
    let tb_min = w.tb_min.unwrap_or(tb_max - levels + 1);
    let (lo, hi) = spec.r_bounds(tb_min.min(spec.max_tb_sum()));
    let window = Window::new(tb_min, tb_max, w.r_min.unwrap_or(lo), w.r_max.unwrap_or(hi));
    if window.tb_min > window.tb_max {
        return Err(CliError::Usage(format!(
            "empty window: tb-min {tb_min} above tb-max {tb_max}"
        )));
    }
    Ok(window)
}

fn atlas_text(a: &PrimeAtlas) -> String {
    let peaks: Vec<String> = a.peaks().iter().map(TbR::to_string).collect();
    format!(
        "{}: {} atlas, peaks {}\n",
        a.name(),
        if a.is_simple() { "simple" } else { "presented" },
        peaks.join(" ")
    )
}

fn cmd_atlas(ctx: &Ctx, cmd: &AtlasCmd) -> Out {
    ctx.no_svg()?;
    let atlas = match cmd {
        AtlasCmd::Torus { p, q } => PrimeAtlas::torus(*p, *q)?,
        AtlasCmd::Unknot => PrimeAtlas::unknot(),
        AtlasCmd::Show { file } => load_atlas(file)?,
        AtlasCmd::Validate { file } => {
            let atlas = load_atlas(file)?;
            let problems = atlas.validate();
            let text = match ctx.format {
                Format::Text if problems.is_empty() => format!("{}: ok\n", atlas.name()),
                Format::Text => problems
                    .iter()
                    .map(|p| format!("{}: {p}\n", atlas.name()))
                    .collect(),
                _ => pretty(json!({
                    "name": atlas.name(),
                    "valid": problems.is_empty(),
                    "problems": problems,
                })),
            };
            if problems.is_empty() {
                return Ok(text);
            }
            print!("{text}");
            return Err(CliError::Usage(format!(
                "atlas `{}` is invalid",
                atlas.name()
            )));
        }
    };
    Ok(match ctx.format {
        Format::Text => atlas_text(&atlas),
        _ => atlas.to_json() + "\n",
    })
}

fn cmd_sum(ctx: &Ctx, cmd: &SumCmd) -> Out {
    match cmd {
        SumCmd::Classify { summands, tb, r } => {
            ctx.no_svg()?;
            let spec = ctx.spec(summands)?;
            let x = TbR::new(*tb, *r);
            let classes = classify(&spec, x)?;
            Ok(match ctx.format {
                Format::Text => {
                    let mut s = format!("{} classes at {x}\n", classes.len());
                    for c in &classes {
                        s += &format!("{} size {}\n", c.canonical, c.size);
                    }
                    s
                }
                _ => pretty(json!({
                    "summands": spec.names(),
                    "point": [x.tb, x.r],
                    "count": classes.len(),
                    "classes": classes.iter().map(|c| c.to_json(&spec)).collect::<Vec<_>>(),
                })),
            })
        }
        SumCmd::Count { summands, tb, r } => {
            ctx.no_svg()?;
            let spec = ctx.spec(summands)?;
            let x = TbR::new(*tb, *r);
            let n = count(&spec, x)?;
            Ok(match ctx.format {
                Format::Text => format!("{n}\n"),
                _ => pretty(json!({ "point": [x.tb, x.r], "count": n })),
            })
        }
        SumCmd::Range {
            summands,
            window: w,
        } => {
            let spec = ctx.spec(summands)?;
            let w = window(&spec, w, 7)?;
            Ok(ctx.plot(&mountain_range_par(&spec, w, ctx.jobs)?))
        }
        SumCmd::Simple {
            summands,
            window: w,
            depth,
        } => {
            ctx.no_svg()?;
            let spec = ctx.spec(summands)?;
            let w = window(&spec, w, 11)?;
            let depth = depth.unwrap_or_else(|| default_depth(&spec));
            let rep = check_transverse_simplicity(&spec, w, depth)?;
            Ok(match ctx.format {
                Format::Text => {
                    let mut s = String::new();
                    for d in &rep.diagonals {
                        let merged = d
                            .merge_depth
                            .map_or("not merged".to_string(), |k| format!("merged at depth {k}"));
                        s += &format!(
                            "s = {}: {} points, up to {} classes, {merged}\n",
                            d.s, d.points, d.classes
                        );
                    }
                    s + &format!("verdict at depth {}: {:?}\n", rep.depth, rep.verdict)
                }
                _ => serde_json::to_string_pretty(&rep).expect("report") + "\n",
            })
        }
    }
}

fn cmd_examples(ctx: &Ctx, cmd: &ExamplesCmd) -> Out {
    match cmd {
        ExamplesCmd::Paper { n, m } => {
            ctx.no_svg()?;
            let rep = build_examples(*n, *m)?;
            Ok(match ctx.format {
                Format::Text => rep.to_text(),
                _ => rep.to_json() + "\n",
            })
        }
        ExamplesCmd::Figure { p, q, depth } => {
            let top = PrimeAtlas::torus(*p, *q)?.max_tb();
            Ok(ctx.plot(&figure_mountain(*p, *q, top - depth, top)?))
        }
    }
}

fn cmd_front(ctx: &Ctx, cmd: &FrontCmd) -> Out {
    // diagrams are always written in the front text format so they pipe
    let diagram = match cmd {
        FrontCmd::Invariants { file } => {
            ctx.no_svg()?;
            let inv = front::invariants(&load_front(file)?)?;
            return Ok(match ctx.format {
                Format::Text => format!(
                    "tb {}\nr {}\nwrithe {}\nright_cusps {}\ndown_cusps {}\nup_cusps {}\n",
                    inv.tb, inv.r, inv.writhe, inv.right_cusps, inv.down_cusps, inv.up_cusps
                ),
                _ => serde_json::to_string_pretty(&inv).expect("invariants") + "\n",
            });
        }
        FrontCmd::Plot { file } => {
            let f = load_front(file)?;
            return Ok(match ctx.format {
                Format::Svg => front::plot_front_svg(&f)?,
                _ => front::plot_front(&f)?,
            });
        }
        FrontCmd::Stabilize { file, sign, edge } => {
            let sign = match sign {
                SignArg::Plus => Sign::Plus,
                SignArg::Minus => Sign::Minus,
            };
            front::stabilize_front(&load_front(file)?, sign, *edge)?
        }
        FrontCmd::Connect {
            first,
            second,
            right,
            left,
            style,
        } => {
            let (f1, f2) = (load_front(first)?, load_front(second)?);
            let style = match style {
                StyleArg::Inline => SpliceStyle::Inline,
                StyleArg::Sequential => SpliceStyle::Sequential,
            };
            match (right, left) {
                (Some(right), Some(left)) => connect_front_at(
                    &f1,
                    &f2,
                    SpliceSite {
                        right: *right,
                        left: *left,
                        style,
                    },
                )?,
                _ => front::connect_front_styled(&f1, &f2, style)?,
            }
        }
        FrontCmd::Twist { n } => {
            if *n == 0 {
                return Err(CliError::Usage("--n must be at least 1".into()));
            }
            front::twist_front(*n)
        }
    };
    Ok(front::serialize_front(&diagram))
}

fn run(cli: &Cli) -> Out {
    let ctx = Ctx {
        format: cli.format,
        adjacency: match cli.adjacency {
            AdjacencyArg::Cyclic => Adjacency::Cyclic,
            AdjacencyArg::Linear => Adjacency::Linear,
        },
        jobs: cli
            .jobs
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
    };
    if let Some(jobs) = cli.jobs {
        // a second initialisation only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global();
    }
    match &cli.command {
        Command::Atlas(c) => cmd_atlas(&ctx, c),
        Command::Sum(c) => cmd_sum(&ctx, c),
        Command::Examples(c) => cmd_examples(&ctx, c),
        Command::Front(c) => cmd_front(&ctx, c),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(text) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, text),
                None => io::stdout().write_all(text.as_bytes()),
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("legsum: {e}");
                    ExitCode::from(3)
                }
            }
        }
        Err(e) => {
            eprintln!("legsum: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
