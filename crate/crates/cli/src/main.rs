use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use logfold::bench::{self, Cell, Measurement};
use logfold::synth::{self, System};
use logfold::{compress, decompress, decompress_profile, default_config, Backend, Config, TokenStrategy};

/// Environment variable naming the scratch directory.
const TMPDIR_VAR: &str = "LOGFOLD_TMPDIR";

#[derive(Parser)]
#[command(name = "logfold", version, about = "Lossless log compressor")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compress a log file into an archive.
    Compress {
        input: PathBuf,
        /// Output archive (default: <input>.lf).
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        cfg: ConfigArgs,
    },
    /// Restore a log file from an archive.
    Decompress {
        archive: PathBuf,
        /// Output file (default: archive name without .lf, or <archive>.out).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Print per-step decompression timings.
        #[arg(long)]
        profile: bool,
    },
    /// Measure CR, CS and DS for every file of a corpus directory.
    Bench {
        corpus: PathBuf,
        #[arg(long, value_enum, default_value_t = Sweep::Default)]
        sweep: Sweep,
        /// Comma-separated values replacing the sweep's default grid.
        #[arg(long, value_delimiter = ',')]
        grid: Vec<String>,
        /// Run files concurrently.
        #[arg(long)]
        parallel: bool,
        /// Also write comma-delimited rows to this file.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Exit nonzero when any cell fails its round trip.
        #[arg(long)]
        ci: bool,
        #[command(flatten)]
        cfg: ConfigArgs,
    },
    /// Compress through a scratch archive, decompress and byte-compare.
    Verify {
        input: PathBuf,
        #[command(flatten)]
        cfg: ConfigArgs,
    },
    /// Write the synthetic sample logs into a directory.
    Generate {
        dir: PathBuf,
        #[arg(long, default_value_t = 2000)]
        lines: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Sweep {
    Default,
    Ablation,
    ThetaRv,
    PhiD,
    ZetaUv,
    Levels,
    Backends,
    Strategies,
}

#[derive(Args, Clone)]
struct ConfigArgs {
    #[arg(long)]
    chunk_lines: Option<usize>,
    #[arg(long)]
    theta_rv: Option<usize>,
    #[arg(long)]
    phi_d: Option<f64>,
    #[arg(long)]
    zeta_uv: Option<usize>,
    /// gzip, bzip2 or lzma.
    #[arg(long)]
    backend: Option<String>,
    /// Backend level 1..=9.
    #[arg(long)]
    level: Option<u32>,
    /// num, num_path, num_classpath or all.
    #[arg(long)]
    token_strategy: Option<String>,
    #[arg(long)]
    disable_processor: bool,
    #[arg(long)]
    disable_encoder: bool,
}

impl ConfigArgs {
    fn build(&self) -> Result<Config> {
        let mut cfg = default_config();
        if let Some(v) = self.chunk_lines {
            cfg.chunk_lines = v;
        }
        if let Some(v) = self.theta_rv {
            cfg.theta_rv = v;
        }
        if let Some(v) = self.phi_d {
            cfg.phi_d = v;
        }
        if let Some(v) = self.zeta_uv {
            cfg.zeta_uv = v;
        }
        if let Some(v) = &self.backend {
            cfg.backend = v.parse::<Backend>()?;
        }
        cfg.backend_level = self.level;
        if let Some(v) = &self.token_strategy {
            cfg.token_strategy = v.parse::<TokenStrategy>()?;
        }
        cfg.disable_processor = self.disable_processor;
        cfg.disable_hybrid_encoder = self.disable_encoder;
        cfg.validate()?;
        Ok(cfg)
    }
}

fn mbps(bytes: usize, secs: f64) -> f64 {
    bytes as f64 / (1024.0 * 1024.0) / secs.max(1e-9)
}

fn scratch_dir() -> PathBuf {
    std::env::var_os(TMPDIR_VAR).map(PathBuf::from).unwrap_or_else(std::env::temp_dir)
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, data: &[u8]) -> Result<()> {
    fs::write(path, data).with_context(|| format!("writing {}", path.display()))
}

fn cmd_compress(input: &Path, output: Option<PathBuf>, cfg: &Config) -> Result<()> {
    let data = read(input)?;
    let t = Instant::now();
    let archive = compress(&data, cfg)?;
    let secs = t.elapsed().as_secs_f64();
    let output = output.unwrap_or_else(|| {
        let mut name = input.as_os_str().to_owned();
        name.push(".lf");
        PathBuf::from(name)
    });
    write(&output, &archive)?;
    println!(
        "{} -> {}: {} -> {} bytes, CR {:.3}, CS {:.3} MB/s",
        input.display(),
        output.display(),
        data.len(),
        archive.len(),
        data.len() as f64 / archive.len() as f64,
        mbps(data.len(), secs)
    );
    Ok(())
}

fn cmd_decompress(archive_path: &Path, output: Option<PathBuf>, profile: bool) -> Result<()> {
    let archive = read(archive_path)?;
    let t = Instant::now();
    let (data, steps) = if profile {
        let (data, p) = decompress_profile(&archive)?;
        (data, Some(p))
    } else {
        (decompress(&archive)?, None)
    };
    let secs = t.elapsed().as_secs_f64();
    let output = output.unwrap_or_else(|| match archive_path.extension() {
        Some(ext) if ext == "lf" => archive_path.with_extension(""),
        _ => {
            let mut name = archive_path.as_os_str().to_owned();
            name.push(".out");
            PathBuf::from(name)
        }
    });
    write(&output, &data)?;
    println!(
        "{} -> {}: {} bytes, DS {:.3} MB/s",
        archive_path.display(),
        output.display(),
        data.len(),
        mbps(data.len(), secs)
    );
    if let Some(p) = steps {
        println!("{p}");
        println!("\nstep,name,seconds,fraction");
        for row in p.csv_rows() {
            println!("{row}");
        }
    }
    Ok(())
}

fn parse_grid<T: std::str::FromStr>(grid: &[String]) -> Result<Option<Vec<T>>> {
    if grid.is_empty() {
        return Ok(None);
    }
    grid.iter()
        .map(|v| v.trim().parse::<T>().map_err(|_| anyhow::anyhow!("bad grid value {v:?}")))
        .collect::<Result<Vec<T>>>()
        .map(Some)
}

fn cells(sweep: Sweep, grid: &[String], base: &Config) -> Result<Vec<Cell>> {
    Ok(match sweep {
        Sweep::Default => bench::default_cells(base),
        Sweep::Ablation => bench::ablation_cells(base),
        Sweep::ThetaRv => {
            let values = parse_grid(grid)?.unwrap_or(bench::THETA_RV_GRID.to_vec());
            bench::theta_rv_cells(base, &values)
        }
        Sweep::PhiD => {
            let values = parse_grid(grid)?.unwrap_or(bench::PHI_D_GRID.to_vec());
            bench::phi_d_cells(base, &values)
        }
        Sweep::ZetaUv => {
            let values = parse_grid(grid)?.unwrap_or(bench::ZETA_UV_GRID.to_vec());
            bench::zeta_uv_cells(base, &values)
        }
        Sweep::Levels => {
            let levels = parse_grid(grid)?.unwrap_or(bench::LEVEL_GRID.to_vec());
            bench::level_cells(base, &[base.backend], &levels)
        }
        Sweep::Backends => {
            let levels = parse_grid(grid)?.unwrap_or(bench::LEVEL_GRID.to_vec());
            bench::level_cells(base, &Backend::ALL, &levels)
        }
        Sweep::Strategies => bench::strategy_cells(base),
    })
}

fn summarize(results: &[Measurement]) {
    println!("{}", bench::cr_table(results));
    println!("{:<16} {:<28} {:>10} {:>10} {:>10}  verified", "file", "variant", "CR", "CS MB/s", "DS MB/s");
    for m in results {
        println!(
            "{:<16} {:<28} {:>10.3} {:>10.3} {:>10.3}  {}",
            m.file,
            m.variant,
            m.cr(),
            m.cs(),
            m.ds(),
            if m.verified { "yes" } else { "NO" }
        );
        if let Some(e) = &m.error {
            println!("    error: {e}");
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    corpus: &Path,
    sweep: Sweep,
    grid: &[String],
    parallel: bool,
    csv: Option<PathBuf>,
    ci: bool,
    cfg: &Config,
) -> Result<bool> {
    let files = bench::load_corpus(corpus)?;
    let cells = cells(sweep, grid, cfg)?;
    let results = bench::run(&files, &cells, parallel);
    summarize(&results);
    let rows = bench::csv(&results);
    match csv {
        Some(path) => write(&path, rows.as_bytes())?,
        None => print!("\n{rows}"),
    }
    let failed = results.iter().filter(|m| !m.verified).count();
    if failed > 0 {
        eprintln!("{failed} cell(s) failed the round trip");
    }
    Ok(!(ci && failed > 0))
}

fn cmd_verify(input: &Path, cfg: &Config) -> Result<bool> {
    let data = read(input)?;
    let dir = scratch_dir();
    let mut scratch = tempfile::Builder::new()
        .prefix("logfold-verify-")
        .suffix(".lf")
        .tempfile_in(&dir)
        .with_context(|| format!("creating scratch file in {}", dir.display()))?;
    scratch.write_all(&compress(&data, cfg)?)?;
    scratch.flush()?;
    let archive = read(scratch.path())?;
    let restored = decompress(&archive)?;
    let ok = restored == data;
    println!(
        "{}: {} ({} -> {} bytes, CR {:.3})",
        input.display(),
        if ok { "round trip identical" } else { "ROUND TRIP DIFFERS" },
        data.len(),
        archive.len(),
        data.len() as f64 / archive.len() as f64
    );
    Ok(ok)
}

fn cmd_generate(dir: &Path, lines: usize, seed: u64) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for s in System::ALL {
        let path = dir.join(format!("{}_2k.log", s.name()));
        write(&path, &synth::generate(s, lines, seed))?;
        println!("{}", path.display());
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Compress { input, output, cfg } => cmd_compress(&input, output, &cfg.build()?)?,
        Command::Decompress { archive, output, profile } => cmd_decompress(&archive, output, profile)?,
        Command::Bench { corpus, sweep, grid, parallel, csv, ci, cfg } => {
            return cmd_bench(&corpus, sweep, &grid, parallel, csv, ci, &cfg.build()?)
        }
        Command::Verify { input, cfg } => return cmd_verify(&input, &cfg.build()?),
        Command::Generate { dir, lines, seed } => {
            if lines == 0 {
                bail!("--lines must be at least 1");
            }
            cmd_generate(&dir, lines, seed)?
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
