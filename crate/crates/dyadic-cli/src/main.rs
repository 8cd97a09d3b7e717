//! `dyadic` — construct, verify, convert, sample, measure and scan digital
//! dyadic nets and sequences.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage errors.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dyadic_nets::atlas::{self, AtlasMetric};
use dyadic_nets::constructions::{self, scramble};
use dyadic_nets::gf2::{BitMatrix, BitVector};
use dyadic_nets::metrics::{self, DistanceMode};
use dyadic_nets::pairs::{
    characteristic, generate_prefix, is_dyadic_net, is_dyadic_sequence, is_progressive_pair,
    GeneratorPair, PointSet,
};
use dyadic_nets::reorder;
use dyadic_nets::xi;

#[derive(Parser)]
#[command(
    name = "dyadic",
    version,
    about = "Digital dyadic nets and sequences over GF(2)"
)]
struct Cli {
    /// Write primary output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Emit records as JSON instead of the text formats.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named or random generator pair and its point set.
    Construct(ConstructArgs),
    /// Reorder a net (matrix pair) or recover generators from a point set.
    Convert(ConvertArgs),
    /// Verify the net/sequence properties of a point set.
    Check(CheckArgs),
    /// Generate, invert or tabulate a xi-sequence.
    Xi(XiArgs),
    /// Quality metrics of a point set.
    Measure(MeasureArgs),
    /// Exhaustive xi-sequence quality scan.
    Atlas(AtlasArgs),
    /// Samples-per-second throughput of the generators.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Sobol,
    HammersleyNet,
    HammersleySequence,
    LpNet,
    LpSequence,
    GrayNet,
    GraySequence,
    Gfaure,
    RandomNet,
    RandomSequence,
}

#[derive(Args)]
struct ConstructArgs {
    /// Which construction to build.
    #[arg(long, value_enum)]
    kind: Kind,
    /// Net size exponent: the pair generates 2^m points at m-bit precision.
    #[arg(long)]
    m: usize,
    /// RNG seed for the random kinds.
    #[arg(long)]
    seed: Option<u64>,
    /// XOR-scramble offsets "xhex,yhex" applied to the points.
    #[arg(long)]
    scramble: Option<String>,
    /// What to print: the matrix pair, the point set, or both.
    #[arg(long, value_enum, default_value_t = Emit::Both)]
    emit: Emit,
    /// Number of points to emit (defaults to all 2^m).
    #[arg(long)]
    count: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Pair,
    Points,
    Both,
}

#[derive(Args)]
struct ConvertArgs {
    /// Input flavor: a matrix pair file or a point-set file.
    #[arg(long, value_enum)]
    from: ConvertFrom,
    /// Input path.
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConvertFrom {
    Net,
    Points,
}

#[derive(Args)]
struct CheckArgs {
    /// Point-set file to verify.
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Args)]
struct XiArgs {
    /// x-coordinate of the second point, 8 hex digits, leading bit set.
    #[arg(long)]
    x: String,
    /// y-coordinate of the second point, 8 hex digits, leading bit set.
    #[arg(long)]
    y: String,
    /// Number of samples to emit.
    #[arg(long, default_value_t = 256)]
    count: u64,
    /// Truncate emitted samples to this precision (1..=32 bits).
    #[arg(long, default_value_t = 32)]
    m: usize,
    /// Route sampling through a lookup table with this many entries
    /// (4, 256 or 65536).
    #[arg(long)]
    lut: Option<usize>,
    /// Emit Morton indices (16 hex digits per line) instead of points.
    #[arg(long)]
    morton: bool,
    /// Invert: print the sequence number of the first sample in the stratum
    /// with this Morton prefix (16 hex digits), instead of sampling.
    #[arg(long)]
    invert: Option<String>,
    /// Number of leading Morton bits that make up the --invert stratum.
    #[arg(long, default_value_t = 64)]
    bits: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Metric {
    Star,
    Mindist,
    Avgnn,
    Ratio,
}

#[derive(Args)]
struct MeasureArgs {
    /// Which metric to compute.
    #[arg(long, value_enum)]
    metric: Metric,
    /// Point-set file.
    #[arg(long = "in")]
    input: PathBuf,
    /// Plain Euclidean distances instead of the wrap-around toroidal metric.
    #[arg(long)]
    euclidean: bool,
    /// Normalize distances by the hexagonal-packing bound sqrt(2/(n sqrt 3)).
    #[arg(long)]
    normalized: bool,
    /// Prefix step for --metric ratio.
    #[arg(long, default_value_t = 16)]
    step: usize,
    /// Random orderings to average over for --metric ratio.
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// RNG seed for --metric ratio.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct AtlasArgs {
    /// Net size exponent: each cell is measured on 2^m points.
    #[arg(long, default_value_t = 8)]
    m: u32,
    /// Seed resolution in bits; the grid has 2^(res-1) cells per axis.
    #[arg(long, default_value_t = 8)]
    res: u32,
    /// Use the m-bit truncated metric variants in the CSV.
    #[arg(long)]
    truncated: bool,
    /// Also write `<prefix>-mindist.pgm`, `<prefix>-avgnn.pgm`,
    /// `<prefix>-star_disc.pgm` heatmaps.
    #[arg(long)]
    pgm: Option<String>,
    /// Print the top-k cells by --by to stderr.
    #[arg(long)]
    top: Option<usize>,
    /// Ranking metric for --top.
    #[arg(long, value_enum, default_value_t = AtlasBy::Mindist)]
    by: AtlasBy,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AtlasBy {
    Mindist,
    Avgnn,
    Star,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Generator {
    Xi,
    XiLut,
    SobolMatrix,
}

#[derive(Args)]
struct BenchArgs {
    /// Which sample path to time.
    #[arg(long, value_enum)]
    gen: Generator,
    /// Sample count; accepts plain integers or "2^k".
    #[arg(long, default_value = "2^24")]
    count: String,
    /// Lookup-table entries for --gen xi-lut (4, 256 or 65536).
    #[arg(long, default_value_t = 256)]
    lut: usize,
    /// Seed coordinates for the xi paths, 8 hex digits each.
    #[arg(long, default_value = "80000000")]
    x: String,
    #[arg(long, default_value = "80000000")]
    y: String,
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("DYADIC_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let mut sink = Output::new(cli.out.clone())?;
    let code = match cli.command {
        Command::Construct(args) => construct(&args, cli.json, &mut sink)?,
        Command::Convert(args) => convert(&args, cli.json, &mut sink)?,
        Command::Check(args) => check(&args, cli.json, &mut sink)?,
        Command::Xi(args) => xi_cmd(&args, cli.json, &mut sink)?,
        Command::Measure(args) => measure(&args, cli.json, &mut sink)?,
        Command::Atlas(args) => atlas_cmd(&args, cli.json, &mut sink)?,
        Command::Bench(args) => bench(&args, cli.json, &mut sink)?,
    };
    sink.finish()?;
    Ok(code)
}

/// Buffered output destination (stdout or --out file).
struct Output {
    path: Option<PathBuf>,
    buf: String,
}

impl Output {
    fn new(path: Option<PathBuf>) -> Result<Self> {
        Ok(Output {
            path,
            buf: String::new(),
        })
    }

    fn push(&mut self, s: &str) {
        self.buf.push_str(s);
    }

    fn pushln(&mut self, s: &str) {
        self.buf.push_str(s);
        self.buf.push('\n');
    }

    fn finish(self) -> Result<()> {
        match self.path {
            Some(p) => fs::write(&p, self.buf).with_context(|| format!("writing {}", p.display())),
            None => {
                print!("{}", self.buf);
                Ok(())
            }
        }
    }
}

fn parse_hex32(s: &str) -> Result<u32> {
    u32::from_str_radix(s.trim().trim_start_matches("0x"), 16)
        .with_context(|| format!("bad 32-bit hex value {s:?}"))
}

fn parse_hex64(s: &str) -> Result<u64> {
    u64::from_str_radix(s.trim().trim_start_matches("0x"), 16)
        .with_context(|| format!("bad 64-bit hex value {s:?}"))
}

/// Accepts "12345" or "2^24".
fn parse_count(s: &str) -> Result<u64> {
    if let Some(exp) = s.trim().strip_prefix("2^") {
        let e: u32 = exp
            .parse()
            .with_context(|| format!("bad exponent in {s:?}"))?;
        if e >= 64 {
            bail!("count 2^{e} is too large");
        }
        Ok(1u64 << e)
    } else {
        s.trim().parse().with_context(|| format!("bad count {s:?}"))
    }
}

/// Pair file: two matrix blocks separated by a blank line.
fn parse_pair_file(text: &str) -> Result<GeneratorPair> {
    let blocks: Vec<&str> = text
        .split("\n\n")
        .map(str::trim)
        .filter(|b| !b.is_empty())
        .collect();
    if blocks.len() != 2 {
        bail!(
            "expected two matrix blocks separated by a blank line, found {}",
            blocks.len()
        );
    }
    let cx: BitMatrix = blocks[0].parse().context("parsing C_x")?;
    let cy: BitMatrix = blocks[1].parse().context("parsing C_y")?;
    if cx.dim() != cy.dim() {
        bail!("matrix dimensions differ: {} vs {}", cx.dim(), cy.dim());
    }
    Ok(GeneratorPair::new(cx, cy))
}

fn format_pair(pair: &GeneratorPair) -> String {
    format!("{}\n{}", pair.cx, pair.cy)
}

fn matrix_rows_json(a: &BitMatrix) -> serde_json::Value {
    serde_json::Value::Array(
        (0..a.dim())
            .map(|i| serde_json::Value::String(a.row(i).to_string()))
            .collect(),
    )
}

fn points_json(ps: &PointSet) -> serde_json::Value {
    serde_json::Value::Array(
        ps.points
            .iter()
            .map(|p| serde_json::json!([p.x, p.y]))
            .collect(),
    )
}

fn construct(args: &ConstructArgs, json: bool, sink: &mut Output) -> Result<u8> {
    let m = args.m;
    let seed = args.seed.unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pair = match args.kind {
        Kind::Sobol => constructions::sobol(m),
        Kind::HammersleyNet => constructions::hammersley_net(m),
        Kind::HammersleySequence => constructions::hammersley_sequence(m),
        Kind::LpNet => constructions::lp_net(m),
        Kind::LpSequence => constructions::lp_sequence(m),
        Kind::GrayNet => constructions::gray_net(m)?,
        Kind::GraySequence => constructions::gray_sequence(m)?,
        Kind::Gfaure => constructions::random_gfaure(m, &mut rng),
        Kind::RandomNet => constructions::random_net(m, &mut rng),
        Kind::RandomSequence => constructions::random_sequence(m, &mut rng),
    };
    if matches!(
        args.kind,
        Kind::Gfaure | Kind::RandomNet | Kind::RandomSequence
    ) {
        eprintln!("seed: {seed}");
    }
    if let Some(spec) = &args.scramble {
        let (xs, ys) = spec
            .split_once(',')
            .context("expected --scramble xhex,yhex")?;
        let limit = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        let x0 = parse_hex64(xs)? & limit;
        let y0 = parse_hex64(ys)? & limit;
        pair = scramble(
            &pair,
            BitVector::from_int(x0, m),
            BitVector::from_int(y0, m),
        );
    }
    let count = match args.count {
        Some(c) => {
            if m < 63 && c as u64 > 1u64 << m {
                bail!("count {c} exceeds 2^{m}");
            }
            c
        }
        None => {
            if m > 24 {
                bail!("m={m} point sets must pass an explicit --count");
            }
            1usize << m
        }
    };
    let want_points = args.emit != Emit::Pair;
    let points = want_points.then(|| generate_prefix(&pair, count));
    if json {
        let mut obj = serde_json::json!({
            "m": m,
            "cx": matrix_rows_json(&pair.cx),
            "cy": matrix_rows_json(&pair.cy),
            "offset_x": pair.offset_x.to_string(),
            "offset_y": pair.offset_y.to_string(),
        });
        if matches!(
            args.kind,
            Kind::Gfaure | Kind::RandomNet | Kind::RandomSequence
        ) {
            obj["seed"] = serde_json::json!(seed);
        }
        if let Some(ps) = &points {
            obj["points"] = points_json(ps);
        }
        sink.pushln(&serde_json::to_string_pretty(&obj)?);
        return Ok(0);
    }
    match args.emit {
        Emit::Pair => sink.push(&format_pair(&pair)),
        Emit::Points => sink.push(&points.unwrap().to_string()),
        Emit::Both => {
            sink.push(&format_pair(&pair));
            sink.push("\n");
            sink.push(&points.unwrap().to_string());
        }
    }
    Ok(0)
}

fn convert(args: &ConvertArgs, json: bool, sink: &mut Output) -> Result<u8> {
    let text = fs::read_to_string(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let outcome = match args.from {
        ConvertFrom::Net => {
            let pair = parse_pair_file(&text)?;
            reorder::net_to_sequence(&pair)
        }
        ConvertFrom::Points => {
            let ps: PointSet = text.parse().map_err(anyhow::Error::from)?;
            if !ps.len().is_power_of_two()
                || ps.len() < 2
                || ps.len().trailing_zeros() as usize != ps.precision()
            {
                bail!(
                    "need 2^m points at m-bit precision, found {} at m={}",
                    ps.len(),
                    ps.precision()
                );
            }
            reorder::pointset_to_sequence(&ps)
        }
    };
    let seq = match outcome {
        Ok(seq) => seq,
        Err(e) => {
            if json {
                sink.pushln(&serde_json::to_string_pretty(&serde_json::json!({
                    "ok": false,
                    "error": e.to_string(),
                }))?);
            } else {
                eprintln!("conversion failed: {e}");
            }
            return Ok(1);
        }
    };
    let progressive = is_progressive_pair(&seq.cx, &seq.cy);
    let char_matrix = characteristic(&seq).map_err(anyhow::Error::from)?;
    if json {
        sink.pushln(&serde_json::to_string_pretty(&serde_json::json!({
            "ok": true,
            "m": seq.dim(),
            "cx": matrix_rows_json(&seq.cx),
            "cy": matrix_rows_json(&seq.cy),
            "offset_x": seq.offset_x.to_string(),
            "offset_y": seq.offset_y.to_string(),
            "progressive_pair": progressive,
            "characteristic": matrix_rows_json(&char_matrix),
        }))?);
    } else {
        sink.push(&format_pair(&seq));
        eprintln!(
            "progressive pair: {}",
            if progressive { "yes" } else { "no" }
        );
        if !seq.offset_x.is_zero() || !seq.offset_y.is_zero() {
            eprintln!("offsets: x={} y={}", seq.offset_x, seq.offset_y);
        }
    }
    Ok(if progressive { 0 } else { 1 })
}

fn check(args: &CheckArgs, json: bool, sink: &mut Output) -> Result<u8> {
    let text = fs::read_to_string(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let ps: PointSet = text.parse().map_err(anyhow::Error::from)?;
    let power_of_two =
        ps.len().is_power_of_two() && ps.len().trailing_zeros() as usize <= ps.precision();
    let net = power_of_two && is_dyadic_net(&ps);
    let sequence = power_of_two && is_dyadic_sequence(&ps);
    if json {
        sink.pushln(&serde_json::to_string_pretty(&serde_json::json!({
            "n": ps.len(),
            "m": ps.precision(),
            "dyadic_net": net,
            "dyadic_sequence": sequence,
        }))?);
    } else {
        sink.pushln(&format!("dyadic net: {}", if net { "yes" } else { "no" }));
        sink.pushln(&format!(
            "dyadic sequence: {}",
            if sequence { "yes" } else { "no" }
        ));
    }
    Ok(if net { 0 } else { 1 })
}

fn xi_cmd(args: &XiArgs, json: bool, sink: &mut Output) -> Result<u8> {
    let x = parse_hex32(&args.x)?;
    let y = parse_hex32(&args.y)?;
    let seed = match xi::seed(x, y) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            return Ok(1);
        }
    };
    if let Some(z) = &args.invert {
        let z = parse_hex64(z)?;
        let index = seed.invert(z, args.bits);
        if json {
            sink.pushln(&serde_json::to_string_pretty(&serde_json::json!({
                "x": format!("{x:08x}"), "y": format!("{y:08x}"),
                "z": format!("{z:016x}"), "bits": args.bits, "index": index,
            }))?);
        } else {
            sink.pushln(&index.to_string());
        }
        return Ok(0);
    }
    if args.count > 1 << 32 {
        bail!("count exceeds the 32-bit index range");
    }
    if !(1..=32).contains(&args.m) {
        bail!("--m must be in 1..=32");
    }
    let lut = match args.lut {
        None => None,
        Some(entries) => {
            let level = match entries {
                4 => 1,
                256 => 4,
                65536 => 8,
                other => bail!("--lut must be 4, 256 or 65536, got {other}"),
            };
            Some(seed.build_lookup(level).expect("level validated"))
        }
    };
    let sample = |i: u32| match &lut {
        Some(t) => t.get_sample(i),
        None => seed.get_sample(i),
    };
    if args.morton {
        let mut lines = String::new();
        for i in 0..args.count {
            writeln!(lines, "{:016x}", seed.get_sample_morton(i as u32)).unwrap();
        }
        sink.push(&lines);
        return Ok(0);
    }
    let points: Vec<dyadic_nets::Point> = (0..args.count)
        .map(|i| sample(i as u32).truncate(args.m))
        .collect();
    let ps = PointSet::new(points, args.m);
    if json {
        sink.pushln(&serde_json::to_string_pretty(&serde_json::json!({
            "x": format!("{x:08x}"), "y": format!("{y:08x}"),
            "m": args.m, "points": points_json(&ps),
        }))?);
    } else {
        sink.push(&ps.to_string());
    }
    Ok(0)
}

fn measure(args: &MeasureArgs, json: bool, sink: &mut Output) -> Result<u8> {
    let text = fs::read_to_string(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let ps: PointSet = text.parse().map_err(anyhow::Error::from)?;
    let mode = if args.euclidean {
        DistanceMode::Euclidean
    } else {
        DistanceMode::Toroidal
    };
    let scale = if args.normalized {
        1.0 / metrics::hex_bound(ps.len())
    } else {
        1.0
    };
    let mut rows: Vec<(String, f64, usize)> = Vec::new();
    match args.metric {
        Metric::Star => rows.push(("star".into(), metrics::star_discrepancy(&ps), ps.len())),
        Metric::Mindist => rows.push((
            "mindist".into(),
            metrics::min_distance(&ps, mode).map_err(anyhow::Error::from)? * scale,
            ps.len(),
        )),
        Metric::Avgnn => rows.push((
            "avgnn".into(),
            metrics::avg_nn_distance(&ps, mode).map_err(anyhow::Error::from)? * scale,
            ps.len(),
        )),
        Metric::Ratio => {
            // Mean prefix-discrepancy ratio of seeded random orderings
            // against the ordering given in the file.
            if args.step == 0 || args.step > ps.len() {
                bail!("--step must be in 1..={}", ps.len());
            }
            let mut sums = vec![0.0; ps.len() / args.step];
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            for _ in 0..args.trials.max(1) {
                let mut shuffled = ps.clone();
                use rand::seq::SliceRandom;
                shuffled.points.shuffle(&mut rng);
                let ratios = metrics::discrepancy_prefix_ratio(&shuffled, &ps, args.step)
                    .map_err(anyhow::Error::from)?;
                for (i, (_, r)) in ratios.iter().enumerate() {
                    sums[i] += r;
                }
            }
            for (i, s) in sums.iter().enumerate() {
                rows.push((
                    "star_ratio".into(),
                    s / args.trials.max(1) as f64,
                    (i + 1) * args.step,
                ));
            }
        }
    }
    if json {
        let arr: Vec<serde_json::Value> = rows
            .iter()
            .map(|(metric, value, n)| {
                serde_json::json!({"metric": metric, "value": value, "n": n, "m": ps.precision()})
            })
            .collect();
        sink.pushln(&serde_json::to_string_pretty(&serde_json::Value::Array(
            arr,
        ))?);
    } else {
        for (metric, value, n) in &rows {
            sink.pushln(&format!("{metric},{value},{n},{}", ps.precision()));
        }
    }
    Ok(0)
}

fn atlas_cmd(args: &AtlasArgs, json: bool, sink: &mut Output) -> Result<u8> {
    let grid = atlas::scan(args.m, args.res)?;
    if let Some(prefix) = &args.pgm {
        for metric in [
            AtlasMetric::MinDist,
            AtlasMetric::AvgNn,
            AtlasMetric::StarDisc,
        ] {
            let path = format!("{prefix}-{}.pgm", metric.name());
            fs::write(&path, grid.to_pgm(metric, args.truncated))
                .with_context(|| format!("writing {path}"))?;
            eprintln!("wrote {path}");
        }
    }
    if let Some(k) = args.top {
        let metric = match args.by {
            AtlasBy::Mindist => AtlasMetric::MinDist,
            AtlasBy::Avgnn => AtlasMetric::AvgNn,
            AtlasBy::Star => AtlasMetric::StarDisc,
        };
        for r in grid.best(metric, args.truncated, k, None) {
            eprintln!(
                "{}={} seed_x={:08x} seed_y={:08x}",
                metric.name(),
                metric.of(r, args.truncated),
                r.seed_x,
                r.seed_y
            );
        }
    }
    if json {
        let arr: Vec<serde_json::Value> = grid
            .records
            .iter()
            .map(|r| {
                serde_json::json!({
                    "seed_x_hex": format!("{:08x}", r.seed_x),
                    "seed_y_hex": format!("{:08x}", r.seed_y),
                    "mindist": if args.truncated { r.min_dist_trunc } else { r.min_dist },
                    "avgnn": if args.truncated { r.avg_nn_trunc } else { r.avg_nn },
                    "star_disc": if args.truncated { r.star_disc_trunc } else { r.star_disc },
                })
            })
            .collect();
        sink.pushln(&serde_json::to_string_pretty(&serde_json::Value::Array(
            arr,
        ))?);
    } else {
        sink.push(&grid.to_csv(args.truncated));
    }
    Ok(0)
}

fn bench(args: &BenchArgs, json: bool, sink: &mut Output) -> Result<u8> {
    let count = parse_count(&args.count)?;
    if count > 1 << 32 {
        bail!("count exceeds the 32-bit index range");
    }
    let x = parse_hex32(&args.x)?;
    let y = parse_hex32(&args.y)?;
    let name;
    let seconds;
    match args.gen {
        Generator::Xi => {
            name = "xi".to_string();
            let seed = xi::seed(x, y).map_err(anyhow::Error::from)?;
            let start = Instant::now();
            let mut acc = 0u32;
            for i in 0..count {
                let (x, y) = seed.sample_xy(i as u32);
                acc ^= x ^ y;
            }
            seconds = start.elapsed().as_secs_f64();
            std::hint::black_box(acc);
        }
        Generator::XiLut => {
            let level = match args.lut {
                4 => 1,
                256 => 4,
                65536 => 8,
                other => bail!("--lut must be 4, 256 or 65536, got {other}"),
            };
            name = format!("xi-lut{}", args.lut);
            let seed = xi::seed(x, y).map_err(anyhow::Error::from)?;
            let table = seed.build_lookup(level).expect("level validated");
            let start = Instant::now();
            let mut acc = 0u32;
            for i in 0..count {
                let (x, y) = table.sample_xy(i as u32);
                acc ^= x ^ y;
            }
            seconds = start.elapsed().as_secs_f64();
            std::hint::black_box(acc);
        }
        Generator::SobolMatrix => {
            name = "sobol-matrix".to_string();
            let pair = constructions::sobol(32);
            let start = Instant::now();
            let mut acc = 0u64;
            for i in 0..count {
                let s = BitVector::from_index(i & 0xffff_ffff, 32);
                acc ^= pair.cx.mul_vec(s).value() ^ pair.cy.mul_vec(s).value();
            }
            seconds = start.elapsed().as_secs_f64();
            std::hint::black_box(acc);
        }
    }
    let rate = count as f64 / seconds;
    if json {
        sink.pushln(&serde_json::to_string_pretty(&serde_json::json!({
            "generator": name, "count": count, "seconds": seconds, "samples_per_sec": rate,
        }))?);
    } else {
        sink.pushln(&format!(
            "generator={name} count={count} seconds={seconds:.6} samples_per_sec={rate:.0}"
        ));
    }
    Ok(0)
}
