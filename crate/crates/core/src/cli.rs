//! Command-line front end.
//!
//! Every command writes plain text to the given writer. Numbers are printed
//! with 12 significant digits and rows come in a fixed order, so identical
//! inputs give byte-identical output.
//!
//! CSV layouts (first line is the header):
//!
//! | command                  | header                                                     |
//! |--------------------------|------------------------------------------------------------|
//! | `radius`                 | `graph,quantity,value`                                     |
//! | `centrality`             | `node,score,rank`                                          |
//! | `centrality --compare`   | `node,score_<a>,rank_<a>,score_<b>,rank_<b>`, then `# kendall_tau_b,<v>` |
//! | `sweep`                  | `t,node,normalized_score`                                  |
//! | `walk-count` (static)    | `source,target,weight`                                     |
//! | `walk-count` (temporal)  | `from_snapshot,from_source,from_target,to_snapshot,to_source,to_target,weight` |
//! | `oracle-check`           | one `PASS`/`FAIL` line per identity, then a verdict line   |

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::edge::{edge_centrality, CoefficientSeries, EdgeCentralityPlan};
use crate::error::{Error, Result};
use crate::graph::{
    read_edge_list, read_matrix_market, DuplicatePolicy, LoopPolicy, NodeOrder, ParseOptions,
    WeightedGraph,
};
use crate::node::{katz, nbt_katz};
use crate::oracle::check::{check_static, check_temporal, CheckOptions, CheckResult};
use crate::rank::{format_g12, kendall_tau_b, rank_order, ranks, round_sig12, top_k};
use crate::sparse::{spectral_radius_default, SparseMatrix};
use crate::temporal::{
    build_global, classical_temporal_katz, read_temporal_file, read_temporal_manifest,
    temporal_f_centrality_with_radius, temporal_walk_counts, BacktrackRegime, GlobalDecomposition,
    TemporalGraph, TemporalRadii,
};

#[derive(Debug, Parser)]
#[command(
    name = "nbtwalk",
    version,
    about = "Nonbacktracking walk centralities for weighted and temporal graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectral radii and permitted ranges of t.
    Radius(RadiusArgs),
    /// Node centrality scores and ranks.
    Centrality(CentralityArgs),
    /// Normalized scores over a grid of t values.
    Sweep(SweepArgs),
    /// Weighted walk counts of a given length.
    WalkCount(WalkCountArgs),
    /// Cross-validate every identity against brute-force enumeration.
    OracleCheck(OracleArgs),
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Edge list `src dst [weight]`, a `.mtx` MatrixMarket file, or with
    /// `--temporal` a record file `time src dst [weight]`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Treat `--input` as time-stamped records.
    #[arg(long)]
    pub temporal: bool,
    /// Manifest of per-snapshot edge lists, `path [timestamp]` per line.
    #[arg(long, conflicts_with = "input")]
    pub temporal_manifest: Option<PathBuf>,
    /// Set every edge weight to 1.
    #[arg(long)]
    pub binarize: bool,
    /// Sum the weights of repeated edges instead of rejecting them.
    #[arg(long)]
    pub merge: bool,
    /// Drop self-loops instead of rejecting them.
    #[arg(long)]
    pub drop_loops: bool,
    /// Index nodes in sorted label order rather than first appearance.
    #[arg(long)]
    pub sorted_nodes: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Relative residual tolerance for solves and series.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Measure {
    /// Nonbacktracking Katz, `Φ(t)𝟏`.
    NbtKatz,
    /// Classical Katz, `(I − tA)⁻¹𝟏`.
    Katz,
    /// Nonbacktracking `f`-centrality for `--series`.
    FCentrality,
}

impl Measure {
    fn name(self) -> &'static str {
        match self {
            Measure::NbtKatz => "nbt-katz",
            Measure::Katz => "katz",
            Measure::FCentrality => "f-centrality",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        <Self as ValueEnum>::from_str(s, true)
            .map_err(|_| Error::InvalidArgument(format!("unknown measure {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesKind {
    Resolvent,
    Exponential,
    Custom,
}

#[derive(Debug, Clone, Args)]
pub struct MeasureArgs {
    #[arg(long, value_enum, default_value_t = Measure::NbtKatz)]
    pub measure: Measure,
    #[arg(long, value_enum, default_value_t = SeriesKind::Resolvent)]
    pub series: SeriesKind,
    /// Coefficients `c_0,c_1,…` of a custom series.
    #[arg(long, value_delimiter = ',')]
    pub coefficients: Vec<f64>,
    /// Scalar radius of a custom series.
    #[arg(long, default_value_t = f64::INFINITY)]
    pub series_radius: f64,
    /// Declared relative truncation error of a custom series.
    #[arg(long, default_value_t = 0.0)]
    pub tail_bound: f64,
    /// Backtracking regime for temporal inputs.
    #[arg(long, default_value = "forbid-all")]
    pub regime: BacktrackRegime,
}

impl MeasureArgs {
    fn series(&self) -> Result<CoefficientSeries> {
        match self.series {
            SeriesKind::Resolvent => Ok(CoefficientSeries::Resolvent),
            SeriesKind::Exponential => Ok(CoefficientSeries::Exponential),
            SeriesKind::Custom => CoefficientSeries::custom(
                self.coefficients.clone(),
                self.series_radius,
                self.tail_bound,
            ),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct RadiusArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Regime for temporal inputs.
    #[arg(long, default_value = "forbid-all")]
    pub regime: BacktrackRegime,
}

#[derive(Debug, Clone, Args)]
pub struct CentralityArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub measure: MeasureArgs,
    /// Absolute value, or a fraction of the measure's radius such as `0.5r`.
    #[arg(long)]
    pub t: String,
    /// Only emit the top K nodes (the union of both top-K sets with
    /// `--compare`).
    #[arg(long)]
    pub top: Option<usize>,
    /// Two measures `a:b`, e.g. `katz:nbt-katz`.
    #[arg(long)]
    pub compare: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub measure: MeasureArgs,
    /// Number of grid points from 0 to `--max-fraction` of the radius.
    #[arg(long, default_value_t = 100)]
    pub points: usize,
    #[arg(long, default_value_t = 0.99)]
    pub max_fraction: f64,
    /// Largest t as an absolute value; required when the radius is infinite.
    #[arg(long)]
    pub t_max: Option<f64>,
    /// Keep the K nodes with the largest score at the largest t.
    #[arg(long)]
    pub top: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WalkKind {
    /// Nonbacktracking walks, `p_k(A)`.
    Nbt,
    /// All walks, `Aᵏ`.
    All,
}

#[derive(Debug, Clone, Args)]
pub struct WalkCountArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Walk length in edges.
    #[arg(long)]
    pub k: usize,
    /// Static inputs only.
    #[arg(long, value_enum, default_value_t = WalkKind::Nbt)]
    pub walks: WalkKind,
    /// Regime for temporal inputs.
    #[arg(long, default_value = "forbid-all")]
    pub regime: BacktrackRegime,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    /// Without an input the bundled 5-node fixture is checked.
    #[command(flatten)]
    pub input: InputArgs,
    /// Longest static walk compared.
    #[arg(long, default_value_t = 6)]
    pub kmax: usize,
    /// Replace the weight of this edge (canonical order) in the line-graph
    /// route only, to confirm the battery catches it.
    #[arg(long)]
    pub inject_fault: Option<usize>,
}

/// A parsed input graph.
#[derive(Debug, Clone)]
pub enum Input {
    Static(WeightedGraph),
    Temporal(TemporalGraph),
}

impl InputArgs {
    fn parse_options(&self) -> ParseOptions {
        ParseOptions {
            node_order: if self.sorted_nodes {
                NodeOrder::Sorted
            } else {
                NodeOrder::FirstAppearance
            },
            loops: if self.drop_loops {
                LoopPolicy::Drop
            } else {
                LoopPolicy::Reject
            },
            duplicates: if self.merge {
                DuplicatePolicy::Sum
            } else {
                DuplicatePolicy::Reject
            },
        }
    }

    /// Reads the input without binarizing it.
    pub fn load_raw(&self) -> Result<Input> {
        let opts = self.parse_options();
        if let Some(m) = &self.temporal_manifest {
            return Ok(Input::Temporal(read_temporal_manifest(m, &opts)?));
        }
        let path = self.input.as_ref().ok_or_else(|| {
            Error::InvalidArgument("one of --input or --temporal-manifest is required".into())
        })?;
        if self.temporal {
            return Ok(Input::Temporal(read_temporal_file(path, &opts)?));
        }
        if path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("mtx"))
        {
            let a = read_matrix_market(std::fs::File::open(path)?)?;
            return Ok(Input::Static(matrix_to_graph(&a, &opts)?));
        }
        Ok(Input::Static(read_edge_list(path, &opts)?))
    }

    pub fn load(&self) -> Result<Input> {
        let input = self.load_raw()?;
        Ok(if self.binarize {
            input.binarized()
        } else {
            input
        })
    }

    fn has_input(&self) -> bool {
        self.input.is_some() || self.temporal_manifest.is_some()
    }
}

fn matrix_to_graph(a: &SparseMatrix, opts: &ParseOptions) -> Result<WeightedGraph> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "adjacency is {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    if !a.is_nonnegative() {
        return Err(Error::InvalidMatrix(
            "adjacency has negative entries".into(),
        ));
    }
    let loops = a.diag().iter().any(|&d| d != 0.0);
    if loops && opts.loops == LoopPolicy::Reject {
        return Err(Error::InvalidGraph("adjacency has self-loops".into()));
    }
    let a = a.filter(|i, j, _| i != j);
    let labels = (1..=a.nrows()).map(|i| i.to_string()).collect();
    WeightedGraph::from_adjacency(labels, &a)
}

impl Input {
    pub fn binarized(&self) -> Self {
        match self {
            Input::Static(g) => Input::Static(g.binarized()),
            Input::Temporal(tg) => Input::Temporal(tg.binarized()),
        }
    }

    pub fn labels(&self) -> &[String] {
        match self {
            Input::Static(g) => g.node_labels(),
            Input::Temporal(tg) => tg.node_labels(),
        }
    }
}

fn reciprocal(rho: f64) -> f64 {
    if rho == 0.0 {
        f64::INFINITY
    } else {
        1.0 / rho
    }
}

/// Resolves `--t`: a plain number, or `<fraction>r` relative to `limit`.
pub fn resolve_t(expr: &str, limit: f64) -> Result<f64> {
    let expr = expr.trim();
    let t = if let Some(frac) = expr.strip_suffix(['r', 'R']) {
        let f: f64 = frac
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("cannot parse t expression {expr:?}")))?;
        if !limit.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "t = {expr:?} is relative, but the radius is infinite; give t absolutely"
            )));
        }
        f * limit
    } else {
        expr.parse()
            .map_err(|_| Error::InvalidArgument(format!("cannot parse t expression {expr:?}")))?
    };
    if !t.is_finite() || t < 0.0 || t >= limit {
        return Err(Error::OutsideRadius {
            t,
            limit,
            what: "this measure".into(),
        });
    }
    Ok(t)
}

/// A measure bound to one input, with its radius computed once.
struct Scorer<'a> {
    input: &'a Input,
    measure: Measure,
    series: CoefficientSeries,
    tol: f64,
    kind: ScorerKind,
    limit: f64,
}

enum ScorerKind {
    Static {
        rho_v: f64,
    },
    Temporal {
        gd: Box<GlobalDecomposition>,
        rho_m: f64,
    },
}

impl<'a> Scorer<'a> {
    fn new(
        input: &'a Input,
        measure: Measure,
        series: CoefficientSeries,
        regime: BacktrackRegime,
        tol: f64,
    ) -> Result<Self> {
        let series = match measure {
            Measure::NbtKatz | Measure::Katz => CoefficientSeries::Resolvent,
            Measure::FCentrality => series,
        };
        let (kind, limit) = match input {
            Input::Static(g) => {
                let rho_v = spectral_radius_default(g.line_graph().v())?;
                let rho_a = spectral_radius_default(&g.adjacency())?;
                let limit = match measure {
                    Measure::Katz => reciprocal(rho_a),
                    _ => series.radius() * reciprocal(rho_v),
                };
                (ScorerKind::Static { rho_v }, limit)
            }
            Input::Temporal(tg) => {
                let gd = build_global(tg, regime)?;
                let rho_m = gd.spectral_radius()?;
                let limit = match measure {
                    Measure::Katz => reciprocal(crate::temporal::max_snapshot_radius(tg)?),
                    _ => series.radius() * reciprocal(rho_m),
                };
                (
                    ScorerKind::Temporal {
                        gd: Box::new(gd),
                        rho_m,
                    },
                    limit,
                )
            }
        };
        Ok(Self {
            input,
            measure,
            series,
            tol,
            kind,
            limit,
        })
    }

    fn scores(&self, t: f64) -> Result<Vec<f64>> {
        if !(t >= 0.0 && t < self.limit) {
            return Err(Error::OutsideRadius {
                t,
                limit: self.limit,
                what: self.measure.name().into(),
            });
        }
        match (&self.kind, self.input) {
            (ScorerKind::Static { .. }, Input::Static(g)) if self.measure == Measure::Katz => {
                katz(&g.adjacency(), t, self.tol)
            }
            (ScorerKind::Static { rho_v }, Input::Static(g)) => {
                if self.measure == Measure::NbtKatz {
                    match nbt_katz(&g.adjacency(), t, self.tol, Some(reciprocal(*rho_v))) {
                        Err(Error::ElementwisePole { .. }) => {}
                        other => return other.map(|c| c.scores),
                    }
                }
                let plan = EdgeCentralityPlan::with_radius(
                    g.line_graph(),
                    self.series.clone(),
                    t,
                    self.tol,
                    *rho_v,
                )?;
                edge_centrality(&plan)
            }
            (ScorerKind::Temporal { .. }, Input::Temporal(tg)) if self.measure == Measure::Katz => {
                classical_temporal_katz(tg, t, self.tol)
            }
            (ScorerKind::Temporal { gd, rho_m }, Input::Temporal(_)) => {
                temporal_f_centrality_with_radius(gd, &self.series, t, self.tol, *rho_m)
            }
            _ => unreachable!("scorer kind follows the input"),
        }
    }
}

fn num(x: f64) -> Value {
    let r = round_sig12(x);
    if r.is_finite() {
        json!(r)
    } else {
        json!(format_g12(r))
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Spectral radii and permitted ranges.
pub fn cmd_radius(args: &RadiusArgs) -> Result<String> {
    let raw = args.input.load_raw()?;
    let mut variants = vec![("original", raw.clone())];
    if args.input.binarize {
        variants.push(("binarized", raw.binarized()));
    }
    let mut rows: Vec<(String, String, f64)> = Vec::new();
    for (name, input) in &variants {
        match input {
            Input::Static(g) => {
                let d = g.line_graph();
                let rho_a = spectral_radius_default(&g.adjacency())?;
                let rho_b = spectral_radius_default(d.hashimoto())?;
                let rho_v = spectral_radius_default(d.v())?;
                for (q, v) in [
                    ("rho_A", rho_a),
                    ("rho_B", rho_b),
                    ("rho_V", rho_v),
                    ("classical_t_max", reciprocal(rho_a)),
                    ("nbt_t_max", reciprocal(rho_v)),
                ] {
                    rows.push((name.to_string(), q.to_string(), v));
                }
            }
            Input::Temporal(tg) => {
                let r = TemporalRadii::compute(tg, args.regime)?;
                for (q, v) in [
                    ("rho_M", r.rho_m),
                    ("max_rho_C", r.max_rho_c),
                    ("max_rho_A", r.max_rho_a),
                    ("nbt_t_max", r.nbt_limit()),
                    ("block_t_max", r.block_limit()),
                    ("classical_t_max", r.classical_limit()),
                ] {
                    rows.push((name.to_string(), q.to_string(), v));
                }
            }
        }
    }
    Ok(match args.input.format {
        Format::Csv => {
            let mut s = String::from("graph,quantity,value\n");
            for (g, q, v) in &rows {
                s.push_str(&format!("{g},{q},{}\n", format_g12(*v)));
            }
            s
        }
        Format::Json => {
            let mut obj = serde_json::Map::new();
            if matches!(raw, Input::Temporal(_)) {
                obj.insert("regime".into(), json!(args.regime.to_string()));
            }
            for (name, _) in &variants {
                let mut inner = serde_json::Map::new();
                for (g, q, v) in &rows {
                    if g == name {
                        inner.insert(q.clone(), num(*v));
                    }
                }
                obj.insert(name.to_string(), Value::Object(inner));
            }
            json_text(&Value::Object(obj))
        }
    })
}

/// Scores and ranks for one measure, or two with `--compare`.
pub fn cmd_centrality(args: &CentralityArgs) -> Result<String> {
    let input = args.input.load()?;
    let labels = input.labels();
    let series = args.measure.series()?;
    let measures = match &args.compare {
        Some(spec) => {
            let (a, b) = spec.split_once(':').ok_or_else(|| {
                Error::InvalidArgument(format!("--compare expects `a:b`, got {spec:?}"))
            })?;
            vec![Measure::parse(a)?, Measure::parse(b)?]
        }
        None => vec![args.measure.measure],
    };
    let mut results = Vec::new();
    for &m in &measures {
        let scorer = Scorer::new(
            &input,
            m,
            series.clone(),
            args.measure.regime,
            args.input.tol,
        )?;
        let t = resolve_t(&args.t, scorer.limit).map_err(|e| match e {
            Error::OutsideRadius { t, limit, .. } => Error::OutsideRadius {
                t,
                limit,
                what: m.name().into(),
            },
            e => e,
        })?;
        results.push((m, t, scorer.scores(t)?));
    }

    if results.len() == 1 {
        let (m, t, scores) = &results[0];
        let order = rank_order(scores, labels);
        let keep = args.top.unwrap_or(order.len()).min(order.len());
        return Ok(match args.input.format {
            Format::Csv => {
                let mut s = String::from("node,score,rank\n");
                for (pos, &i) in order.iter().take(keep).enumerate() {
                    s.push_str(&format!(
                        "{},{},{}\n",
                        labels[i],
                        format_g12(scores[i]),
                        pos + 1
                    ));
                }
                s
            }
            Format::Json => {
                let rows: Vec<Value> = order
                    .iter()
                    .take(keep)
                    .enumerate()
                    .map(|(pos, &i)| json!({"node": labels[i], "score": num(scores[i]), "rank": pos + 1}))
                    .collect();
                json_text(&json!({"measure": m.name(), "t": num(*t), "rows": rows}))
            }
        });
    }

    let (ma, ta, sa) = &results[0];
    let (mb, tb, sb) = &results[1];
    let ra = ranks(sa, labels);
    let rb = ranks(sb, labels);
    let tau = kendall_tau_b(sa, sb);
    let mut rows: Vec<usize> = match args.top {
        Some(k) => {
            let mut u = top_k(sa, labels, k);
            for i in top_k(sb, labels, k) {
                if !u.contains(&i) {
                    u.push(i);
                }
            }
            u
        }
        None => (0..labels.len()).collect(),
    };
    rows.sort_by(|&x, &y| ra[x].cmp(&ra[y]));
    let tau_text = tau.map_or("nan".to_string(), format_g12);
    Ok(match args.input.format {
        Format::Csv => {
            let (a, b) = (ma.name(), mb.name());
            let mut s = format!("node,score_{a},rank_{a},score_{b},rank_{b}\n");
            for &i in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    labels[i],
                    format_g12(sa[i]),
                    ra[i],
                    format_g12(sb[i]),
                    rb[i]
                ));
            }
            s.push_str(&format!("# kendall_tau_b,{tau_text}\n"));
            s
        }
        Format::Json => {
            let out: Vec<Value> = rows
                .iter()
                .map(|&i| {
                    json!({
                        "node": labels[i],
                        "scores": [num(sa[i]), num(sb[i])],
                        "ranks": [ra[i], rb[i]],
                    })
                })
                .collect();
            json_text(&json!({
                "measures": [ma.name(), mb.name()],
                "t": [num(*ta), num(*tb)],
                "kendall_tau_b": tau.map_or(Value::Null, num),
                "rows": out,
            }))
        }
    })
}

/// Long-form table of max-normalized scores over a grid of t.
pub fn cmd_sweep(args: &SweepArgs) -> Result<String> {
    if args.points == 0 {
        return Err(Error::InvalidArgument("--points must be positive".into()));
    }
    if !(0.0..=0.99).contains(&args.max_fraction) {
        return Err(Error::InvalidArgument(
            "--max-fraction must lie in [0, 0.99]".into(),
        ));
    }
    let input = args.input.load()?;
    let labels = input.labels();
    let scorer = Scorer::new(
        &input,
        args.measure.measure,
        args.measure.series()?,
        args.measure.regime,
        args.input.tol,
    )?;
    let t_max = match args.t_max {
        Some(t) => t,
        None if scorer.limit.is_finite() => args.max_fraction * scorer.limit,
        None => {
            return Err(Error::InvalidArgument(
                "the radius is infinite; give the grid end with --t-max".into(),
            ))
        }
    };
    let grid: Vec<f64> = (0..args.points)
        .map(|j| {
            if args.points == 1 {
                0.0
            } else {
                t_max * j as f64 / (args.points - 1) as f64
            }
        })
        .collect();
    let mut table = Vec::with_capacity(grid.len());
    for &t in &grid {
        let s = scorer.scores(t)?;
        let max = s.iter().cloned().fold(0.0f64, f64::max);
        table.push(
            s.iter()
                .map(|v| if max > 0.0 { v / max } else { *v })
                .collect::<Vec<_>>(),
        );
    }
    let mut nodes: Vec<usize> = match args.top {
        Some(k) => top_k(table.last().expect("nonempty grid"), labels, k),
        None => (0..labels.len()).collect(),
    };
    nodes.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
    Ok(match args.input.format {
        Format::Csv => {
            let mut s = String::from("t,node,normalized_score\n");
            for (t, row) in grid.iter().zip(&table) {
                for &i in &nodes {
                    s.push_str(&format!(
                        "{},{},{}\n",
                        format_g12(*t),
                        labels[i],
                        format_g12(row[i])
                    ));
                }
            }
            s
        }
        Format::Json => {
            let rows: Vec<Value> = grid
                .iter()
                .zip(&table)
                .flat_map(|(t, row)| {
                    nodes
                        .iter()
                        .map(move |&i| json!({"t": num(*t), "node": labels[i], "normalized_score": num(row[i])}))
                })
                .collect();
            json_text(&json!({"measure": args.measure.measure.name(), "rows": rows}))
        }
    })
}

/// Nonzero weighted walk counts of length `k`.
pub fn cmd_walk_count(args: &WalkCountArgs) -> Result<String> {
    if args.k == 0 {
        return Err(Error::InvalidArgument("--k must be at least 1".into()));
    }
    let input = args.input.load()?;
    match &input {
        Input::Static(g) => {
            let m = match args.walks {
                WalkKind::Nbt => {
                    let p = crate::node::pk_recurrence(&g.adjacency(), args.k)?;
                    p.into_iter().last().expect("k ≥ 1")
                }
                WalkKind::All => {
                    let a = g.adjacency();
                    (1..args.k).try_fold(a.clone(), |acc, _| acc.matmul(&a))?
                }
            };
            let labels = g.node_labels();
            Ok(match args.input.format {
                Format::Csv => {
                    let mut s = String::from("source,target,weight\n");
                    for (i, j, v) in m.iter() {
                        s.push_str(&format!("{},{},{}\n", labels[i], labels[j], format_g12(v)));
                    }
                    s
                }
                Format::Json => {
                    let rows: Vec<Value> = m
                        .iter()
                        .map(|(i, j, v)| json!({"source": labels[i], "target": labels[j], "weight": num(v)}))
                        .collect();
                    json_text(&json!({"k": args.k, "rows": rows}))
                }
            })
        }
        Input::Temporal(tg) => {
            let gd = build_global(tg, args.regime)?;
            let counts = temporal_walk_counts(&gd, args.k - 1)?;
            let labels = tg.node_labels();
            let describe = |e: usize| {
                let s = gd.snapshot_of(e);
                let edge = gd.snapshots[s].edges()[e - gd.offsets[s]];
                (s + 1, labels[edge.src].as_str(), labels[edge.dst].as_str())
            };
            Ok(match args.input.format {
                Format::Csv => {
                    let mut s = String::from(
                        "from_snapshot,from_source,from_target,to_snapshot,to_source,to_target,weight\n",
                    );
                    for (e, f, v) in counts.iter() {
                        let (a, b) = (describe(e), describe(f));
                        s.push_str(&format!(
                            "{},{},{},{},{},{},{}\n",
                            a.0,
                            a.1,
                            a.2,
                            b.0,
                            b.1,
                            b.2,
                            format_g12(v)
                        ));
                    }
                    s
                }
                Format::Json => {
                    let rows: Vec<Value> = counts
                        .iter()
                        .map(|(e, f, v)| {
                            let (a, b) = (describe(e), describe(f));
                            json!({
                                "from": {"snapshot": a.0, "source": a.1, "target": a.2},
                                "to": {"snapshot": b.0, "source": b.1, "target": b.2},
                                "weight": num(v),
                            })
                        })
                        .collect();
                    json_text(
                        &json!({"k": args.k, "regime": args.regime.to_string(), "rows": rows}),
                    )
                }
            })
        }
    }
}

/// The bundled fixture used when `oracle-check` gets no input.
pub fn fixture_graph() -> WeightedGraph {
    WeightedGraph::from_edges(
        5,
        &[
            (0, 1, 1.0),
            (1, 0, 2.0),
            (1, 2, 3.0),
            (2, 3, 1.0),
            (3, 1, 2.0),
            (3, 4, 1.0),
            (4, 3, 1.0),
            (4, 0, 2.0),
        ],
    )
    .expect("valid fixture")
}

/// Runs the identity battery. Returns the report and whether everything
/// passed.
pub fn cmd_oracle_check(args: &OracleArgs) -> Result<(String, bool)> {
    let input = if args.input.has_input() {
        args.input.load()?
    } else {
        Input::Static(fixture_graph())
    };
    let opts = CheckOptions {
        kmax: args.kmax,
        ..CheckOptions::default()
    };
    let results: Vec<CheckResult> = match &input {
        Input::Static(g) => {
            let mut d = g.line_graph();
            if let Some(e) = args.inject_fault {
                if e >= g.m() {
                    return Err(Error::InvalidArgument(format!(
                        "graph has {} edges, no edge {e}",
                        g.m()
                    )));
                }
                d = d.with_tampered_weight(e, g.edges()[e].weight * 1.5 + 1.0);
            }
            check_static(g, &d, &opts)?
        }
        Input::Temporal(tg) => {
            if args.inject_fault.is_some() {
                return Err(Error::InvalidArgument(
                    "--inject-fault applies to static inputs".into(),
                ));
            }
            check_temporal(tg, &opts)?
        }
    };
    let ok = results.iter().all(|r| r.passed());
    Ok(match args.input.format {
        Format::Csv => {
            let mut s = String::new();
            for r in &results {
                s.push_str(&format!(
                    "{} {} (max deviation {}, tolerance {})\n",
                    if r.passed() { "PASS" } else { "FAIL" },
                    r.name,
                    format_g12(r.deviation),
                    format_g12(r.tolerance)
                ));
            }
            s.push_str(if ok { "PASS\n" } else { "FAIL\n" });
            (s, ok)
        }
        Format::Json => {
            let checks: Vec<Value> = results
                .iter()
                .map(|r| {
                    json!({
                        "identity": r.name,
                        "passed": r.passed(),
                        "max_deviation": num(r.deviation),
                        "tolerance": num(r.tolerance),
                    })
                })
                .collect();
            (json_text(&json!({"passed": ok, "checks": checks})), ok)
        }
    })
}

/// Runs one parsed command, writing its output to `out`.
pub fn run<W: Write>(cli: &Cli, out: &mut W) -> Result<()> {
    let text = match &cli.command {
        Command::Radius(a) => cmd_radius(a)?,
        Command::Centrality(a) => cmd_centrality(a)?,
        Command::Sweep(a) => cmd_sweep(a)?,
        Command::WalkCount(a) => cmd_walk_count(a)?,
        Command::OracleCheck(a) => {
            let (text, ok) = cmd_oracle_check(a)?;
            out.write_all(text.as_bytes())?;
            if !ok {
                let failed: Vec<&str> = text
                    .lines()
                    .filter_map(|l| l.strip_prefix("FAIL "))
                    .collect();
                return Err(Error::CheckFailed(if failed.is_empty() {
                    "see report".into()
                } else {
                    failed.join("; ")
                }));
            }
            return Ok(());
        }
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

/// Exit status for a finished run: 0, 2 for validation errors, 3 for
/// numerical failures.
pub fn exit_code(result: &Result<()>) -> i32 {
    match result {
        Ok(()) => 0,
        Err(e) if e.is_validation() => 2,
        Err(_) => 3,
    }
}
