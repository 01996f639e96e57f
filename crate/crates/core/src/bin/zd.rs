//! Command-line surface: enforceability checks, threshold sweeps, Nash
//! regions, simulation, and figure-data regeneration.

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use zdgames::engine::{McMode, MonteCarloConfig, PlayerStrategy};
use zdgames::game::{GameSpec, PayoffTable};
use zdgames::thresholds::{self, ThresholdResult};
use zdgames::zd::{self, MemoryOneStrategy, PayoffRelation, ZdParameters};

const EXIT_INFEASIBLE: u8 = 1;
const EXIT_INVALID: u8 = 2;

#[derive(Parser)]
#[command(name = "zd", about = "Zero-determinant strategies in discounted multiplayer dilemmas")]
struct Cli {
    /// Output format where a choice exists (threshold defaults to csv,
    /// simulate to json)
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Args, Clone)]
struct GameArg {
    /// Game spec: inline `pgg:n=5,r=2,c=1` / `nsd:n=5,b=2,c=1`, or a path
    /// to a JSON game file
    #[arg(long, global = true, default_value = "pgg:n=5,r=2,c=1")]
    game: String,
}

#[derive(Subcommand)]
enum Command {
    /// Decide enforceability of a payoff relation and report diagnostics
    Check {
        #[command(flatten)]
        game: GameArg,
        #[arg(long)]
        s: f64,
        #[arg(long)]
        l: f64,
        /// Comma-separated co-player weights (default: equal)
        #[arg(long)]
        w: Option<String>,
        /// With a discount factor, also print the feasible phi interval and
        /// a concrete strategy vector
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        p0: Option<f64>,
    },
    /// Threshold discount factors over a slope sweep (CSV)
    Threshold {
        #[command(flatten)]
        game: GameArg,
        #[arg(long, value_enum)]
        mode: ThresholdMode,
        /// Slope sweep `lo:hi:steps` (extortion/generous modes)
        #[arg(long)]
        s_range: Option<String>,
        /// Single slope instead of a sweep
        #[arg(long)]
        s: Option<f64>,
        /// Baseline payoff (equalizer mode)
        #[arg(long)]
        l: Option<f64>,
        /// Initial cooperation probability (equalizer mode)
        #[arg(long)]
        p0: Option<f64>,
        /// Add a slow oracle verification column (discount grid scan)
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Nash-equilibrium slope regions for the public goods game
    Nash {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 2.0)]
        r: f64,
    },
    /// Simulate a ZD key player against configured opponents
    Simulate {
        #[command(flatten)]
        game: GameArg,
        #[arg(long)]
        s: f64,
        #[arg(long)]
        l: f64,
        #[arg(long)]
        w: Option<String>,
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 0.0)]
        p0: f64,
        /// phi; defaults to the midpoint of the feasible interval
        #[arg(long)]
        phi: Option<f64>,
        /// Comma-separated opponent kinds: allc, alld, random:<q>,
        /// mem (seeded random memory-one), majority3, zd (copy of the key)
        #[arg(long, default_value = "allc")]
        opponents: String,
        #[arg(long, value_enum, default_value_t = EngineKind::Exact)]
        engine: EngineKind,
        #[arg(long, default_value_t = 10000)]
        runs: usize,
        /// Seed, decimal or 0x-prefixed hex
        #[arg(long, default_value = "1")]
        seed: String,
        /// Use geometric stopping instead of discounted weighting
        #[arg(long)]
        geometric: bool,
    },
    /// Regenerate the threshold-curve data files fig1_pgg.csv and fig2_nsd.csv
    Figures {
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ThresholdMode {
    Extortion,
    Generous,
    Equalizer,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum EngineKind {
    Exact,
    Mc,
}

/// Formats with 12 significant digits, '.' decimal separator.
fn fmt12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (11 - mag).max(0) as usize;
    let s = format!("{:.*}", decimals, x);
    // strip trailing zeros but keep at least one decimal
    if s.contains('.') {
        let t = s.trim_end_matches('0');
        let t = t.strip_suffix('.').unwrap_or(t);
        t.to_string()
    } else {
        s
    }
}

fn parse_game(spec: &str) -> Result<PayoffTable, String> {
    let built = if let Some(rest) = spec.strip_prefix("pgg:") {
        let kv = parse_kv(rest)?;
        GameSpec::Pgg {
            n: get_usize(&kv, "n")?,
            r: get_f64(&kv, "r")?,
            c: get_f64(&kv, "c")?,
        }
        .build()
    } else if let Some(rest) = spec.strip_prefix("nsd:") {
        let kv = parse_kv(rest)?;
        GameSpec::Nsd {
            n: get_usize(&kv, "n")?,
            benefit: get_f64(&kv, "b")?,
            cost: get_f64(&kv, "c")?,
        }
        .build()
    } else {
        let text = std::fs::read_to_string(spec)
            .map_err(|e| format!("cannot read game file {spec}: {e}"))?;
        let parsed: GameSpec =
            serde_json::from_str(&text).map_err(|e| format!("bad game JSON: {e}"))?;
        parsed.build()
    };
    let table = built.map_err(|e| format!("invalid game: {e}"))?;
    table.validate_dilemma().map_err(|e| format!("not a social dilemma: {e}"))?;
    Ok(table)
}

fn parse_kv(s: &str) -> Result<Vec<(String, String)>, String> {
    s.split(',')
        .map(|pair| {
            pair.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| format!("expected key=value, got `{pair}`"))
        })
        .collect()
}

fn get_f64(kv: &[(String, String)], key: &str) -> Result<f64, String> {
    kv.iter()
        .find(|(k, _)| k == key)
        .ok_or_else(|| format!("missing parameter `{key}`"))?
        .1
        .parse()
        .map_err(|e| format!("bad value for `{key}`: {e}"))
}

fn get_usize(kv: &[(String, String)], key: &str) -> Result<usize, String> {
    kv.iter()
        .find(|(k, _)| k == key)
        .ok_or_else(|| format!("missing parameter `{key}`"))?
        .1
        .parse()
        .map_err(|e| format!("bad value for `{key}`: {e}"))
}

fn parse_weights(w: &Option<String>, n: usize) -> Result<Vec<f64>, String> {
    match w {
        None => Ok(vec![1.0 / (n - 1) as f64; n - 1]),
        Some(list) => list
            .split(',')
            .map(|x| x.trim().parse::<f64>().map_err(|e| format!("bad weight: {e}")))
            .collect(),
    }
}

fn parse_seed(s: &str) -> Result<u64, String> {
    if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        u64::from_str_radix(hex, 16).map_err(|e| format!("bad hex seed: {e}"))
    } else {
        s.parse().map_err(|e| format!("bad seed: {e}"))
    }
}

/// Minimum threshold over the initial-probability grid; `None` when the
/// relation is infeasible for every p0.
fn best_threshold(table: &PayoffTable, relation: &PayoffRelation) -> Option<ThresholdResult> {
    let mut best: Option<ThresholdResult> = None;
    for k in 0..=100 {
        let p0 = k as f64 / 100.0;
        if let Ok(res) = thresholds::threshold_at_p0(table, relation, p0) {
            if res.feasible && best.map_or(true, |b| res.delta_tau < b.delta_tau) {
                best = Some(res);
            }
        }
    }
    best
}

fn run_check(
    game: &GameArg,
    s: f64,
    l: f64,
    w: &Option<String>,
    delta: Option<f64>,
    p0: Option<f64>,
) -> Result<u8, String> {
    let table = parse_game(&game.game)?;
    let weights = parse_weights(w, table.n())?;
    let relation =
        PayoffRelation::new(s, l, weights).map_err(|e| format!("bad relation: {e}"))?;

    let necessary = zd::check_necessary(&relation, &table);
    if let Some(reason) = &necessary.violated {
        println!("necessary conditions: FAIL ({reason})");
    } else {
        println!("necessary conditions: pass");
    }
    let report = zd::is_enforceable(&table, &relation).map_err(|e| e.to_string())?;
    println!(
        "l bounds: [{}, {}]",
        fmt12(report.l_lower),
        fmt12(report.l_upper)
    );
    if !report.enforceable {
        println!(
            "enforceable: NO ({})",
            report.reason.as_deref().unwrap_or("bounds violated")
        );
        return Ok(EXIT_INFEASIBLE);
    }
    println!("enforceable: yes (binding side: {:?})", report.binding);
    if let Some(res) = best_threshold(&table, &relation) {
        println!("delta_tau = {}", fmt12(res.delta_tau));
    }
    if let Some(delta) = delta {
        let p0 = p0.unwrap_or(match report.binding {
            zd::BindingSide::Upper => 1.0,
            _ => 0.0,
        });
        let interval =
            zd::phi_interval(&table, &relation, delta, p0).map_err(|e| e.to_string())?;
        if interval.is_empty() {
            println!("phi interval at delta={delta}, p0={p0}: empty");
            return Ok(EXIT_INFEASIBLE);
        }
        println!(
            "phi interval at delta={delta}, p0={p0}: [{}, {}]",
            fmt12(interval.lo),
            fmt12(interval.hi)
        );
        let phi = interval.midpoint().unwrap();
        let params = ZdParameters::new(relation, phi, delta, p0).map_err(|e| e.to_string())?;
        let strategy = zd::zd_entries(&table, &params).map_err(|e| e.to_string())?;
        println!(
            "strategy (phi={}): {}",
            fmt12(phi),
            serde_json::to_string(&strategy.p).unwrap()
        );
    }
    Ok(0)
}

/// Oracle column: smallest delta on a 0.002 grid for which the feasibility
/// scan succeeds at the stated p0.
fn oracle_delta(table: &PayoffTable, relation: &PayoffRelation, p0: f64) -> Option<f64> {
    for k in 1..500 {
        let delta = k as f64 * 0.002;
        if !zd::phi_interval(table, relation, delta, p0).ok()?.is_empty() {
            return Some(delta);
        }
    }
    None
}

/// One cell of tabular output; rendered per the selected format.
enum Cell {
    Num(f64),
    Text(String),
    Missing,
}

fn render_table(headers: &[&str], rows: &[Vec<Cell>], format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => {
            let mut out = headers.join(",");
            out.push('\n');
            for row in rows {
                let line: Vec<String> = row
                    .iter()
                    .map(|cell| match cell {
                        Cell::Num(x) => fmt12(*x),
                        Cell::Text(t) => t.clone(),
                        Cell::Missing => String::new(),
                    })
                    .collect();
                out.push_str(&line.join(","));
                out.push('\n');
            }
            out
        }
        OutputFormat::Json => {
            let objects: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    let map: serde_json::Map<String, serde_json::Value> = headers
                        .iter()
                        .zip(row)
                        .map(|(h, cell)| {
                            let value = match cell {
                                Cell::Num(x) => serde_json::json!(x),
                                Cell::Text(t) => serde_json::json!(t),
                                Cell::Missing => serde_json::Value::Null,
                            };
                            (h.to_string(), value)
                        })
                        .collect();
                    serde_json::Value::Object(map)
                })
                .collect();
            let mut out = serde_json::to_string_pretty(&objects).unwrap();
            out.push('\n');
            out
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn run_threshold(
    game: &GameArg,
    mode: ThresholdMode,
    s_range: &Option<String>,
    s: Option<f64>,
    l: Option<f64>,
    p0: Option<f64>,
    oracle: bool,
    out: &Option<PathBuf>,
    format: OutputFormat,
) -> Result<u8, String> {
    let table = parse_game(&game.game)?;
    let n = table.n();
    let weights = vec![1.0 / (n - 1) as f64; n - 1];
    let closed_form = closed_form_fn(&game.game);

    let mut headers: Vec<&str>;
    let mut rows: Vec<Vec<Cell>> = Vec::new();
    let mut any_feasible = false;
    match mode {
        ThresholdMode::Extortion | ThresholdMode::Generous => {
            let slopes = match (s, s_range) {
                (Some(s), _) => vec![s],
                (None, Some(range)) => parse_range(range)?,
                (None, None) => return Err("need --s or --s-range".into()),
            };
            headers = vec!["s", "delta_tau", "binding_term", "closed_form_delta"];
            if oracle {
                headers.push("oracle_delta");
            }
            for &slope in &slopes {
                let res = match mode {
                    ThresholdMode::Extortion => {
                        thresholds::extortion_threshold(&table, slope, &weights)
                    }
                    _ => thresholds::generosity_threshold(&table, slope, &weights),
                }
                .map_err(|e| e.to_string())?;
                let closed = closed_form
                    .as_ref()
                    .and_then(|f| f(slope, matches!(mode, ThresholdMode::Generous)));
                let mut row = vec![
                    Cell::Num(slope),
                    if res.feasible { Cell::Num(res.delta_tau) } else { Cell::Text("inf".into()) },
                    Cell::Text(binding_name(&res)),
                    closed.map_or(Cell::Missing, Cell::Num),
                ];
                if oracle {
                    let (target_l, target_p0) = match mode {
                        ThresholdMode::Extortion => (table.b()[0], 0.0),
                        _ => (table.a()[n - 1], 1.0),
                    };
                    let rel = PayoffRelation::new(slope, target_l, weights.clone())
                        .map_err(|e| e.to_string())?;
                    row.push(oracle_delta(&table, &rel, target_p0).map_or(Cell::Missing, Cell::Num));
                }
                rows.push(row);
                any_feasible |= res.feasible;
            }
        }
        ThresholdMode::Equalizer => {
            let l = l.ok_or("equalizer mode needs --l")?;
            let p0 = p0.ok_or("equalizer mode needs --p0")?;
            let relation = PayoffRelation::new(0.0, l, weights.clone())
                .map_err(|e| format!("bad relation: {e}"))?;
            let res = thresholds::equalizer_threshold(&table, &relation, p0)
                .map_err(|e| e.to_string())?;
            headers = vec!["l", "p0", "delta_tau", "binding_term"];
            if oracle {
                headers.push("oracle_delta");
            }
            let mut row = vec![
                Cell::Num(l),
                Cell::Num(p0),
                if res.feasible { Cell::Num(res.delta_tau) } else { Cell::Text("inf".into()) },
                Cell::Text(binding_name(&res)),
            ];
            if oracle {
                row.push(oracle_delta(&table, &relation, p0).map_or(Cell::Missing, Cell::Num));
            }
            rows.push(row);
            any_feasible = res.feasible;
        }
    }

    let rendered = render_table(&headers, &rows, format);
    match out {
        Some(path) => std::fs::write(path, &rendered).map_err(|e| format!("write failed: {e}"))?,
        None => print!("{rendered}"),
    }
    Ok(if any_feasible { 0 } else { EXIT_INFEASIBLE })
}

type ClosedForm = Box<dyn Fn(f64, bool) -> Option<f64>>;

fn closed_form_fn(game: &str) -> Option<ClosedForm> {
    if let Some(rest) = game.strip_prefix("pgg:") {
        let kv = parse_kv(rest).ok()?;
        let n = get_usize(&kv, "n").ok()?;
        let r = get_f64(&kv, "r").ok()?;
        Some(Box::new(move |s, _generous| thresholds::pgg_threshold(n, r, s).ok()))
    } else if let Some(rest) = game.strip_prefix("nsd:") {
        let kv = parse_kv(rest).ok()?;
        let n = get_usize(&kv, "n").ok()?;
        let b = get_f64(&kv, "b").ok()?;
        let c = get_f64(&kv, "c").ok()?;
        Some(Box::new(move |s, generous| {
            if generous {
                Some(thresholds::nsd_generous_threshold(n, b, c, s))
            } else {
                thresholds::nsd_extortion_threshold(n, b, c, s).ok()
            }
        }))
    } else {
        None
    }
}

fn binding_name(res: &ThresholdResult) -> String {
    if !res.feasible {
        return "infeasible".into();
    }
    format!("{:?}", res.binding_term)
}

fn parse_range(range: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = range.split(':').collect();
    if parts.len() != 3 {
        return Err("range must be lo:hi:steps".into());
    }
    let lo: f64 = parts[0].parse().map_err(|e| format!("bad range lo: {e}"))?;
    let hi: f64 = parts[1].parse().map_err(|e| format!("bad range hi: {e}"))?;
    let steps: usize = parts[2].parse().map_err(|e| format!("bad range steps: {e}"))?;
    if steps < 2 || !(lo < hi) {
        return Err("range needs lo < hi and steps >= 2".into());
    }
    Ok((0..steps)
        .map(|k| lo + (hi - lo) * k as f64 / (steps - 1) as f64)
        .collect())
}

fn run_nash(n: usize, r: f64) -> Result<u8, String> {
    if !(r > 1.0 && (r as f64) < n as f64) {
        return Err(format!("need 1 < r < n, got r = {r}, n = {n}"));
    }
    let regions = thresholds::pgg_nash_regions(n, r);
    println!(
        "extortion NE slopes: [{}, {})",
        fmt12(regions.extortion_slopes.0),
        fmt12(regions.extortion_slopes.1)
    );
    println!(
        "generous NE slopes: ({}, 1)",
        fmt12(regions.generous_slopes.0)
    );
    println!("crossover slope: {}", fmt12(regions.crossover));
    println!("generous minimum delta: {}", fmt12(regions.generous_min_delta));
    println!("slope,delta_tau");
    for k in 0..=10 {
        let (lo, hi) = (regions.extortion_slopes.0, 0.99);
        let s = lo + (hi - lo) * k as f64 / 10.0;
        println!("{},{}", fmt12(s), fmt12(thresholds::pgg_threshold(n, r, s).map_err(|e| e.to_string())?));
    }
    Ok(0)
}

fn parse_opponents(
    spec: &str,
    n: usize,
    key: &MemoryOneStrategy,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<PlayerStrategy>, String> {
    let kinds: Vec<&str> = spec.split(',').map(str::trim).collect();
    if kinds.len() != n - 1 {
        return Err(format!("need {} opponents, got {}", n - 1, kinds.len()));
    }
    kinds
        .iter()
        .enumerate()
        .map(|(idx, kind)| {
            let seat = idx + 1;
            Ok(match *kind {
                "allc" => PlayerStrategy::AllC,
                "alld" => PlayerStrategy::AllD,
                "mem" => PlayerStrategy::MemoryOne(MemoryOneStrategy {
                    p: (0..1usize << n).map(|_| rng.gen::<f64>()).collect(),
                    p0: rng.gen::<f64>(),
                }),
                "majority3" => PlayerStrategy::majority_of_last_3(n),
                "zd" => PlayerStrategy::MemoryOne(key.reseat(seat, n)),
                other => {
                    if let Some(q) = other.strip_prefix("random:") {
                        let q: f64 =
                            q.parse().map_err(|e| format!("bad random probability: {e}"))?;
                        PlayerStrategy::Random(q)
                    } else {
                        return Err(format!("unknown opponent kind `{other}`"));
                    }
                }
            })
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn run_simulate(
    game: &GameArg,
    s: f64,
    l: f64,
    w: &Option<String>,
    delta: f64,
    p0: f64,
    phi: Option<f64>,
    opponents: &str,
    engine: EngineKind,
    runs: usize,
    seed: &str,
    geometric: bool,
    format: OutputFormat,
) -> Result<u8, String> {
    let table = parse_game(&game.game)?;
    let n = table.n();
    let weights = parse_weights(w, n)?;
    let relation =
        PayoffRelation::new(s, l, weights).map_err(|e| format!("bad relation: {e}"))?;
    let seed = parse_seed(seed)?;

    let interval = zd::phi_interval(&table, &relation, delta, p0).map_err(|e| e.to_string())?;
    let phi = match phi {
        Some(phi) => phi,
        None => match interval.midpoint() {
            Some(phi) => phi,
            None => {
                eprintln!("infeasible ZD parameters: empty phi interval");
                return Ok(EXIT_INFEASIBLE);
            }
        },
    };
    let params =
        ZdParameters::new(relation.clone(), phi, delta, p0).map_err(|e| e.to_string())?;
    let key = match zd::zd_entries(&table, &params) {
        Ok(st) => st,
        Err(e) => {
            eprintln!("infeasible ZD parameters: {e}");
            return Ok(EXIT_INFEASIBLE);
        }
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let opponents = parse_opponents(opponents, n, &key, &mut rng)?;

    let report = match engine {
        EngineKind::Exact => {
            let mut mem = vec![key.clone()];
            for (idx, opp) in opponents.iter().enumerate() {
                mem.push(opp.as_memory_one(n).ok_or_else(|| {
                    format!("opponent {} is not memory-one; use --engine mc", idx + 1)
                })?);
            }
            let dist = zdgames::exact_distribution(&mem, delta).map_err(|e| e.to_string())?;
            let payoffs = zdgames::discounted_payoffs(&dist, &table);
            let residual = zd::enforced_relation_residual(&payoffs, &relation);
            let akin = zdgames::verify_akin(&key, &dist);
            zdgames::SimulationReport {
                payoff_mean: payoffs,
                payoff_stderr: vec![0.0; n],
                runs: 1,
                seed,
                residual: Some(residual),
                residual_stderr: Some(0.0),
                akin_residual: Some(akin),
            }
        }
        EngineKind::Mc => {
            let mut strategies = vec![PlayerStrategy::MemoryOne(key)];
            strategies.extend(opponents);
            let config = MonteCarloConfig {
                runs,
                seed,
                mode: if geometric { McMode::GeometricStopping } else { McMode::DiscountedWeights },
            };
            zdgames::monte_carlo(&table, &strategies, delta, &config, Some(&relation))
                .map_err(|e| e.to_string())?
        }
    };
    match format {
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
        OutputFormat::Csv => {
            let rows: Vec<Vec<Cell>> = report
                .payoff_mean
                .iter()
                .zip(&report.payoff_stderr)
                .enumerate()
                .map(|(i, (&mean, &se))| {
                    vec![Cell::Num(i as f64), Cell::Num(mean), Cell::Num(se)]
                })
                .collect();
            print!(
                "{}",
                render_table(&["player", "payoff_mean", "payoff_stderr"], &rows, format)
            );
        }
    }
    Ok(0)
}

fn run_figures(out: &PathBuf) -> Result<u8, String> {
    std::fs::create_dir_all(out).map_err(|e| format!("cannot create {}: {e}", out.display()))?;

    // PGG(5, 2, 1): threshold curve over the enforceable slopes
    let mut fig1 = String::from("s,delta_tau\n");
    for k in 0..=200 {
        let s = 0.375 + (0.999 - 0.375) * k as f64 / 200.0;
        let d = thresholds::pgg_threshold(5, 2.0, s).map_err(|e| e.to_string())?;
        writeln!(fig1, "{},{}", fmt12(s), fmt12(d)).unwrap();
    }
    std::fs::write(out.join("fig1_pgg.csv"), fig1).map_err(|e| e.to_string())?;

    // NSD(5, b=2, c=1): generous threshold curve over (0, 1)
    let mut fig2 = String::from("s,delta_tau\n");
    for k in 1..=200 {
        let s = k as f64 * 0.999 / 200.0;
        let d = thresholds::nsd_generous_threshold(5, 2.0, 1.0, s);
        writeln!(fig2, "{},{}", fmt12(s), fmt12(d)).unwrap();
    }
    std::fs::write(out.join("fig2_nsd.csv"), fig2).map_err(|e| e.to_string())?;
    println!("wrote {} and {}", out.join("fig1_pgg.csv").display(), out.join("fig2_nsd.csv").display());
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check { game, s, l, w, delta, p0 } => run_check(game, *s, *l, w, *delta, *p0),
        Command::Threshold { game, mode, s_range, s, l, p0, oracle, out } => run_threshold(
            game,
            *mode,
            s_range,
            *s,
            *l,
            *p0,
            *oracle,
            out,
            cli.format.unwrap_or(OutputFormat::Csv),
        ),
        Command::Nash { n, r } => run_nash(*n, *r),
        Command::Simulate {
            game,
            s,
            l,
            w,
            delta,
            p0,
            phi,
            opponents,
            engine,
            runs,
            seed,
            geometric,
        } => run_simulate(
            game,
            *s,
            *l,
            w,
            *delta,
            *p0,
            *phi,
            opponents,
            *engine,
            *runs,
            seed,
            *geometric,
            cli.format.unwrap_or(OutputFormat::Json),
        ),
        Command::Figures { out } => run_figures(out),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}
