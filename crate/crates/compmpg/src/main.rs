use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand, ValueEnum};
use compmpg::gen::{
    arity_suite, dr_suite, gen_arity, gen_dr, gen_layered, gen_mining, gen_random_closed, LayeredParams, MiningParams,
    ARITY_LEVELS, DR_LEVELS,
};
use compmpg::runner::{
    bench_rows, compare, solve, OracleKind, RunError, SemanticsMode, SolveOptions, SolveReport, Tamper,
    BENCH_CSV_HEADER,
};
use compmpg::syntax::{parse_diagram, print_game, print_term};
use compmpg_core::diagram::resolve_sharing;
use compmpg_core::fat::DEFAULT_LEAF_LIMIT;
use compmpg_core::{flatten, Outcome, Term};
use serde_json::json;

#[derive(Parser)]
#[command(name = "compmpg", version, about = "Compositional solver for mean payoff games on string diagrams")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a diagram and classify every entrance.
    Solve(SolveArgs),
    /// Solve a closed diagram and check the result against a monolithic solver.
    Compare(CompareArgs),
    /// Print a generated benchmark diagram.
    Gen {
        #[command(subcommand)]
        family: GenCmd,
    },
    Bench {
        #[command(subcommand)]
        cmd: BenchCmd,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SemanticsArg {
    Fat,
    Meager,
}

impl From<SemanticsArg> for SemanticsMode {
    fn from(s: SemanticsArg) -> Self {
        match s {
            SemanticsArg::Fat => SemanticsMode::Fat,
            SemanticsArg::Meager => SemanticsMode::Meager,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleArg {
    Brute,
    Pm,
}

impl From<OracleArg> for OracleKind {
    fn from(o: OracleArg) -> Self {
        match o {
            OracleArg::Brute => OracleKind::Brute,
            OracleArg::Pm => OracleKind::Pm,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StatsFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, value_enum, default_value = "meager")]
    semantics: SemanticsArg,
    /// Largest number of reachable branching positions in a leaf game.
    #[arg(long, default_value_t = DEFAULT_LEAF_LIMIT)]
    leaf_limit: usize,
}

impl EvalArgs {
    fn options(&self, winners_only: bool) -> SolveOptions {
        SolveOptions {
            semantics: self.semantics.into(),
            leaf_limit: self.leaf_limit,
            winners_only,
            ..SolveOptions::default()
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    file: PathBuf,
    #[command(flatten)]
    eval: EvalArgs,
    /// Omit denotations from the output.
    #[arg(long)]
    winners_only: bool,
    /// Also write the flattened game in leaf syntax to this path.
    #[arg(long, value_name = "PATH")]
    emit_flat: Option<PathBuf>,
    #[arg(long, value_enum)]
    stats: Option<StatsFormat>,
}

#[derive(Args)]
struct CompareArgs {
    file: PathBuf,
    #[command(flatten)]
    eval: EvalArgs,
    #[arg(long, value_enum, default_value = "pm")]
    oracle: OracleArg,
    /// Test hook: replace the root denotation by a constant winner.
    #[arg(long, value_enum, hide = true)]
    tamper_root: Option<WinnerArg>,
}

#[derive(Clone, Copy, ValueEnum)]
enum WinnerArg {
    #[value(name = "winE")]
    WinE,
    #[value(name = "winA")]
    WinA,
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').or_else(|| s.split_once(':')).ok_or("expected LO,HI")?;
    let lo: i64 = a.trim().parse().map_err(|e| format!("{a}: {e}"))?;
    let hi: i64 = b.trim().parse().map_err(|e| format!("{b}: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo},{hi}"));
    }
    Ok((lo, hi))
}

#[derive(Args, Clone)]
struct GenCommon {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Integer weight range LO,HI.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true, default_value = "-100000,100000")]
    weight_range: (i64, i64),
}

#[derive(Args, Clone)]
struct MiningArgs {
    #[arg(long, default_value_t = 4)]
    floors: usize,
    #[arg(long, default_value_t = 40)]
    floor_positions: usize,
    #[arg(long, default_value_t = 1)]
    loop_arity: usize,
}

impl MiningArgs {
    fn params(&self, weights: (i64, i64)) -> MiningParams {
        MiningParams {
            floors: self.floors,
            floor_positions: self.floor_positions,
            loop_arity: self.loop_arity,
            weights,
            ..MiningParams::default()
        }
    }
}

#[derive(Args, Clone)]
struct LayeredArgs {
    #[arg(long, default_value_t = 20)]
    layers: usize,
    #[arg(long, default_value_t = 4)]
    leaf_positions: usize,
}

impl LayeredArgs {
    fn params(&self, weights: (i64, i64)) -> LayeredParams {
        LayeredParams { layers: self.layers, leaf_positions: self.leaf_positions, weights, ..LayeredParams::default() }
    }
}

#[derive(Subcommand)]
enum GenCmd {
    Mining {
        #[command(flatten)]
        common: GenCommon,
        #[command(flatten)]
        p: MiningArgs,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    Layered {
        #[command(flatten)]
        common: GenCommon,
        #[command(flatten)]
        p: LayeredArgs,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// One member of the repetition-degree family, or the whole suite.
    Dr {
        #[command(flatten)]
        common: GenCommon,
        #[arg(long, default_value_t = 1)]
        dr: usize,
        /// Write all 400 suite members into this directory instead.
        #[arg(long)]
        suite_dir: Option<PathBuf>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// One member of the interface-width family, or the whole suite.
    Arity {
        #[command(flatten)]
        common: GenCommon,
        #[arg(long, default_value_t = 1)]
        arity: usize,
        #[arg(long)]
        suite_dir: Option<PathBuf>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Mining,
    Layered,
    Dr,
    Arity,
    Random,
}

#[derive(Subcommand)]
enum BenchCmd {
    /// Solve a seeded suite and print a CSV table.
    Run(BenchArgs),
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long, default_value_t = 20)]
    count: usize,
    #[command(flatten)]
    common: GenCommon,
    #[command(flatten)]
    mining: MiningArgs,
    #[command(flatten)]
    layered: LayeredArgs,
    /// Flattened size bound for the random family.
    #[arg(long, default_value_t = 12)]
    max_positions: usize,
    #[command(flatten)]
    eval: EvalArgs,
    /// Also run this solver on the flattened game.
    #[arg(long, value_enum)]
    oracle: Option<OracleArg>,
    /// Stop the progress-measure oracle after this multiple of the
    /// compositional time.
    #[arg(long)]
    oracle_budget: Option<f64>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> RunError + '_ {
    move |source| RunError::Io { path: path.display().to_string(), source }
}

fn read(path: &Path) -> Result<String, RunError> {
    std::fs::read_to_string(path).map_err(io_err(path))
}

fn write(path: &Path, text: &str) -> Result<(), RunError> {
    std::fs::write(path, text).map_err(io_err(path))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), RunError> {
    match out {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_stats(r: &SolveReport, fmt: StatsFormat) {
    match fmt {
        StatsFormat::Json => {}
        StatsFormat::Csv => {
            eprintln!("{}", SolveReport::STATS_CSV_HEADER);
            eprintln!("{}", r.stats_csv());
        }
    }
}

fn run_solve(a: &SolveArgs) -> Result<(), RunError> {
    let dag = parse_diagram(&read(&a.file)?)?;
    if let Some(path) = &a.emit_flat {
        write(path, &format!("{}\n", print_game(&flatten(&dag)?)))?;
    }
    let r = solve(&dag, &a.eval.options(a.winners_only))?;
    println!("{}", r.to_json(matches!(a.stats, Some(StatsFormat::Json))));
    if let Some(f) = a.stats {
        print_stats(&r, f);
    }
    Ok(())
}

fn run_compare(a: &CompareArgs) -> Result<(), RunError> {
    let dag = parse_diagram(&read(&a.file)?)?;
    let mut opts = a.eval.options(true);
    if let Some(w) = a.tamper_root {
        opts.tamper = Tamper::RootConstant(match w {
            WinnerArg::WinE => Outcome::WinE,
            WinnerArg::WinA => Outcome::WinA,
        });
    }
    let r = compare(&dag, &opts, a.oracle.into(), None)?;
    println!("{}", r.to_json());
    Ok(())
}

fn write_suite(dir: &Path, suite: Vec<(String, Term)>) -> Result<(), RunError> {
    std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    let n = suite.len();
    for (name, t) in suite {
        write(&dir.join(format!("{name}.mpg")), &format!("{}\n", print_term(&t)))?;
    }
    println!("{}", json!({ "written": n, "dir": dir.display().to_string() }));
    Ok(())
}

fn run_gen(g: &GenCmd) -> Result<(), RunError> {
    let src = |t: Term| format!("{}\n", print_term(&t));
    match g {
        GenCmd::Mining { common, p, out } => emit(out.as_deref(), &src(gen_mining(common.seed, &p.params(common.weight_range)))),
        GenCmd::Layered { common, p, out } => {
            emit(out.as_deref(), &src(gen_layered(common.seed, &p.params(common.weight_range))))
        }
        GenCmd::Dr { common, dr, suite_dir, out } => match suite_dir {
            Some(d) => write_suite(d, dr_suite(common.seed, common.weight_range)),
            None => emit(out.as_deref(), &src(gen_dr(common.seed, *dr, common.weight_range))),
        },
        GenCmd::Arity { common, arity, suite_dir, out } => match suite_dir {
            Some(d) => write_suite(d, arity_suite(common.seed, common.weight_range)),
            None => emit(out.as_deref(), &src(gen_arity(common.seed, *arity, common.weight_range))),
        },
    }
}

fn instances(a: &BenchArgs) -> Vec<(String, Term)> {
    let w = a.common.weight_range;
    (0..a.count)
        .map(|k| {
            let seed = a.common.seed.wrapping_add(k as u64);
            match a.family {
                Family::Mining => (format!("mining-f{}-s{seed}", a.mining.floors), gen_mining(seed, &a.mining.params(w))),
                Family::Layered => {
                    (format!("layered-l{}-s{seed}", a.layered.layers), gen_layered(seed, &a.layered.params(w)))
                }
                Family::Dr => {
                    let dr = DR_LEVELS[k % DR_LEVELS.len()];
                    (format!("dr{dr:02}-s{seed}"), gen_dr(seed, dr, w))
                }
                Family::Arity => {
                    let ar = ARITY_LEVELS[k % ARITY_LEVELS.len()];
                    (format!("arity{ar}-s{seed}"), gen_arity(seed, ar, w))
                }
                Family::Random => (format!("random-s{seed}"), gen_random_closed(seed, a.max_positions, w)),
            }
        })
        .collect()
}

fn run_bench(a: &BenchArgs) -> Result<(), RunError> {
    let insts = instances(a);
    let opts = a.eval.options(true);
    let oracle = a.oracle.map(|o| (o.into(), a.oracle_budget.unwrap_or(f64::INFINITY)));
    let results: Vec<Mutex<Option<Result<Vec<String>, RunError>>>> = insts.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..a.jobs.max(1) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some((name, t)) = insts.get(i) else { break };
                let r = resolve_sharing(t)
                    .map_err(|e| RunError::Parse(e.into()))
                    .and_then(|dag| bench_rows(name, &dag, &opts, oracle))
                    .map(|(rows, _)| rows);
                *results[i].lock().expect("no panics while holding the lock") = Some(r);
            });
        }
    });
    let mut csv = format!("{BENCH_CSV_HEADER}\n");
    for r in results {
        for row in r.into_inner().expect("workers finished").expect("every instance ran")? {
            csv.push_str(&row);
            csv.push('\n');
        }
    }
    emit(a.out.as_deref(), &csv)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match &cli.cmd {
        Cmd::Solve(a) => run_solve(a),
        Cmd::Compare(a) => run_compare(a),
        Cmd::Gen { family } => run_gen(family),
        Cmd::Bench { cmd: BenchCmd::Run(a) } => run_bench(a),
    };
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            println!("{}", e.to_json());
            ExitCode::from(if matches!(e, RunError::DisagreementDetected { .. }) { 2 } else { 1 })
        }
    }
}
