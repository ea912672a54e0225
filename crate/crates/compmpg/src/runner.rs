//! Solve, compare and benchmark runs behind the CLI subcommands.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use compmpg_core::diagram::SharedDag;
use compmpg_core::eval::{evaluate_with, EvalError, EvalStats};
use compmpg_core::fat::project;
use compmpg_core::game::entrance_port;
use compmpg_core::ops::OpError;
use compmpg_core::oracle::{brute_force_solve, progress_measure_solve, OracleError, DEFAULT_BRUTE_FORCE_LIMIT};
use compmpg_core::{
    flatten, FatDenotation, InferredArity, IntArrow, MeagerDenotation, OpenGame, PlayArrow, Semantics, Status,
    TValue,
};
use serde_json::{json, Value};

use crate::json::{entrance_json, error_json};
use crate::syntax::ParseError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SemanticsMode {
    Fat,
    #[default]
    Meager,
}

impl SemanticsMode {
    pub fn name(self) -> &'static str {
        match self {
            SemanticsMode::Fat => "fat",
            SemanticsMode::Meager => "meager",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OracleKind {
    Brute,
    #[default]
    Pm,
}

impl OracleKind {
    pub fn name(self) -> &'static str {
        match self {
            OracleKind::Brute => "brute",
            OracleKind::Pm => "pm",
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Flatten(#[from] OpError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("diagram {0} is not closed; only (m,0) -> (0,0) diagrams can be compared")]
    NotClosed(InferredArity),
    #[error("entrance {entrance}: compositional result {compositional} but {oracle} oracle says {expected}")]
    DisagreementDetected { entrance: usize, compositional: &'static str, oracle: &'static str, expected: &'static str },
}

impl RunError {
    pub fn kind(&self) -> &'static str {
        match self {
            RunError::Io { .. } => "io",
            RunError::Parse(ParseError::Syntax { .. }) => "syntax",
            RunError::Parse(ParseError::InvalidGame { .. }) => "invalid-game",
            RunError::Parse(ParseError::Diagram(_)) => "diagram",
            RunError::Eval(EvalError::Leaf { .. }) => "leaf-too-large",
            RunError::Eval(_) => "evaluation",
            RunError::Flatten(_) => "flatten",
            RunError::Oracle(_) => "oracle",
            RunError::NotClosed(_) => "not-closed",
            RunError::DisagreementDetected { .. } => "disagreement",
        }
    }

    pub fn to_json(&self) -> Value {
        let span = match self {
            RunError::Parse(e) => Some(e.span()),
            _ => None,
        };
        error_json(self.kind(), &self.to_string(), span)
    }
}

/// Replaces the root denotation before classification. Only for testing
/// that disagreements are caught.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Tamper {
    #[default]
    None,
    /// Every entrance maps to this outcome under the single strategy pair.
    RootConstant(TValue),
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub semantics: SemanticsMode,
    pub leaf_limit: usize,
    pub winners_only: bool,
    pub tamper: Tamper,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            semantics: SemanticsMode::Meager,
            leaf_limit: compmpg_core::fat::DEFAULT_LEAF_LIMIT,
            winners_only: false,
            tamper: Tamper::None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub semantics: SemanticsMode,
    pub arity: InferredArity,
    pub statuses: Vec<Status>,
    /// Per-entrance projections of the denotation, unless winners only.
    pub denotations: Option<Vec<BTreeSet<BTreeSet<TValue>>>>,
    pub stats: EvalStats,
    pub wall: Duration,
    pub dag_nodes: usize,
    pub flattened_positions: u128,
}

fn millis(d: Duration) -> f64 {
    d.as_secs_f64() * 1000.0
}

impl SolveReport {
    pub fn port(&self, i: usize) -> String {
        entrance_port(self.arity.left, self.arity.right, i).to_string()
    }

    pub fn stats_json(&self) -> Value {
        json!({
            "semantics": self.semantics.name(),
            "wall_ms": millis(self.wall),
            "leaf_evaluations": self.stats.leaf_evaluations,
            "nodes_evaluated": self.stats.nodes_evaluated,
            "dag_nodes": self.dag_nodes,
            "flattened_positions": self.flattened_positions.to_string(),
            "max_outer": self.stats.max_outer,
            "max_inner": self.stats.max_inner,
            "root_outer": self.stats.root_outer,
            "root_inner": self.stats.root_inner,
        })
    }

    pub const STATS_CSV_HEADER: &'static str =
        "semantics,wall-ms,leaf-evaluations,nodes-evaluated,dag-nodes,flattened-positions,max-outer,max-inner";

    pub fn stats_csv(&self) -> String {
        format!(
            "{},{:.3},{},{},{},{},{},{}",
            self.semantics.name(),
            millis(self.wall),
            self.stats.leaf_evaluations,
            self.stats.nodes_evaluated,
            self.dag_nodes,
            self.flattened_positions,
            self.stats.max_outer,
            self.stats.max_inner
        )
    }

    pub fn to_json(&self, with_stats: bool) -> Value {
        let entrances: Vec<Value> = self
            .statuses
            .iter()
            .enumerate()
            .map(|(i, s)| entrance_json(i, &self.port(i), *s, self.denotations.as_ref().map(|d| &d[i])))
            .collect();
        let mut v = json!({
            "left": [self.arity.left.right, self.arity.left.left],
            "right": [self.arity.right.right, self.arity.right.left],
            "entrances": entrances,
        });
        if with_stats {
            v["stats"] = self.stats_json();
        }
        v
    }
}

fn solve_in<S: Semantics>(dag: &SharedDag, opts: &SolveOptions) -> Result<SolveReport, RunError> {
    let start = Instant::now();
    let root = dag.root;
    let (arrow, stats): (IntArrow<S>, _) = evaluate_with(dag, opts.leaf_limit, |k, v: &mut IntArrow<S>| {
        if let (Tamper::RootConstant(t), true) = (opts.tamper, k == root) {
            let n = v.den.dom();
            v.den = S::from_arrow(PlayArrow::new(v.den.cod(), vec![t; n]).expect("constant winner arrows are realizable"));
        }
    })?;
    let statuses = arrow.classify_all();
    let wall = start.elapsed();
    let denotations =
        (!opts.winners_only).then(|| (0..statuses.len()).map(|i| project(arrow.den.sets(), i)).collect());
    Ok(SolveReport {
        semantics: opts.semantics,
        arity: dag.arity(),
        statuses,
        denotations,
        stats,
        wall,
        dag_nodes: dag.live_nodes(),
        flattened_positions: dag.flattened_positions(),
    })
}

/// Evaluates the diagram compositionally and classifies every entrance.
pub fn solve(dag: &SharedDag, opts: &SolveOptions) -> Result<SolveReport, RunError> {
    match opts.semantics {
        SemanticsMode::Fat => solve_in::<FatDenotation>(dag, opts),
        SemanticsMode::Meager => solve_in::<MeagerDenotation>(dag, opts),
    }
}

#[derive(Clone, Debug)]
pub struct OracleReport {
    pub kind: OracleKind,
    /// `None` when the deadline expired first.
    pub statuses: Option<Vec<Status>>,
    pub wall: Duration,
}

/// Runs a monolithic solver on a flattened closed game, giving up after
/// `deadline` (progress measure only).
pub fn run_oracle(g: &OpenGame, kind: OracleKind, deadline: Option<Duration>) -> Result<OracleReport, RunError> {
    let start = Instant::now();
    let statuses = match kind {
        OracleKind::Brute => Some(brute_force_solve(g, DEFAULT_BRUTE_FORCE_LIMIT)?),
        OracleKind::Pm => {
            let expired = || deadline.is_some_and(|d| start.elapsed() > d);
            match progress_measure_solve(g, expired) {
                Ok(r) => Some(r.statuses),
                Err(OracleError::Interrupted) => None,
                Err(e) => return Err(e.into()),
            }
        }
    };
    Ok(OracleReport { kind, statuses, wall: start.elapsed() })
}

#[derive(Clone, Debug)]
pub struct CompareReport {
    pub compositional: SolveReport,
    pub oracle: OracleReport,
    pub positions: usize,
    pub edges: usize,
}

impl CompareReport {
    /// `Some(true)` only when both sides ran to completion and agree.
    pub fn agreement(&self) -> Option<bool> {
        self.oracle.statuses.as_ref().map(|s| *s == self.compositional.statuses)
    }

    pub fn to_json(&self) -> Value {
        let names = |s: &[Status]| s.iter().map(|x| x.name()).collect::<Vec<_>>();
        json!({
            "agree": self.agreement(),
            "positions": self.positions,
            "edges": self.edges,
            "compositional": {
                "semantics": self.compositional.semantics.name(),
                "statuses": names(&self.compositional.statuses),
                "wall_ms": millis(self.compositional.wall),
            },
            "oracle": {
                "name": self.oracle.kind.name(),
                "statuses": self.oracle.statuses.as_deref().map(names),
                "wall_ms": millis(self.oracle.wall),
            },
        })
    }
}

pub fn require_closed(dag: &SharedDag) -> Result<(), RunError> {
    let a = dag.arity();
    if a.left.left != 0 || a.right.right != 0 || a.right.left != 0 {
        return Err(RunError::NotClosed(a));
    }
    Ok(())
}

/// Compositional solve against a monolithic oracle on the flattened game.
/// Differing classifications are an error.
pub fn compare(
    dag: &SharedDag,
    opts: &SolveOptions,
    oracle: OracleKind,
    deadline: Option<Duration>,
) -> Result<CompareReport, RunError> {
    require_closed(dag)?;
    let compositional = solve(dag, &SolveOptions { winners_only: true, ..opts.clone() })?;
    let flat = flatten(dag)?;
    let report = run_oracle(&flat, oracle, deadline)?;
    if let Some(expected) = &report.statuses {
        for (i, (c, o)) in compositional.statuses.iter().zip(expected).enumerate() {
            if c != o {
                return Err(RunError::DisagreementDetected {
                    entrance: i + 1,
                    compositional: c.name(),
                    oracle: oracle.name(),
                    expected: o.name(),
                });
            }
        }
    }
    Ok(CompareReport { positions: flat.positions().len(), edges: flat.edge_count(), compositional, oracle: report })
}

pub const BENCH_CSV_HEADER: &str = "instance,positions,edges,mode,wall-ms,status";

fn status_field(s: &[Status]) -> String {
    s.iter().map(|x| x.name()).collect::<Vec<_>>().join("|")
}

/// CSV rows for one instance: the compositional solve and, if requested,
/// the oracle on the flattened game with the compositional time as its
/// deadline multiplied by `oracle_budget`.
pub fn bench_rows(
    name: &str,
    dag: &SharedDag,
    opts: &SolveOptions,
    oracle: Option<(OracleKind, f64)>,
) -> Result<(Vec<String>, Option<CompareReport>), RunError> {
    let mut rows = Vec::new();
    let flat = flatten(dag)?;
    let (n, e) = (flat.positions().len(), flat.edge_count());
    let Some((kind, budget)) = oracle else {
        let r = solve(dag, &SolveOptions { winners_only: true, ..opts.clone() })?;
        rows.push(format!("{name},{n},{e},{},{:.3},{}", r.semantics.name(), millis(r.wall), status_field(&r.statuses)));
        return Ok((rows, None));
    };
    let deadline = |c: &SolveReport| Duration::from_secs_f64(c.wall.as_secs_f64() * budget);
    require_closed(dag)?;
    let c = solve(dag, &SolveOptions { winners_only: true, ..opts.clone() })?;
    let o = run_oracle(&flat, kind, (budget.is_finite()).then(|| deadline(&c)))?;
    let report = CompareReport { compositional: c, oracle: o, positions: n, edges: e };
    if report.agreement() == Some(false) {
        let expected = report.oracle.statuses.as_ref().expect("ran");
        let i = expected.iter().zip(&report.compositional.statuses).position(|(a, b)| a != b).expect("differs");
        return Err(RunError::DisagreementDetected {
            entrance: i + 1,
            compositional: report.compositional.statuses[i].name(),
            oracle: kind.name(),
            expected: expected[i].name(),
        });
    }
    let c = &report.compositional;
    rows.push(format!("{name},{n},{e},{},{:.3},{}", c.semantics.name(), millis(c.wall), status_field(&c.statuses)));
    let mut row = format!("{name},{n},{e},{},{:.3},", kind.name(), millis(report.oracle.wall));
    row.push_str(&report.oracle.statuses.as_deref().map_or("timeout".into(), status_field));
    rows.push(row);
    Ok((rows, Some(report)))
}
