//! Evaluation harness: compression ratio (CR), compression speed (CS) and
//! decompression speed (DS) per file and configuration, with sweeps.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

use crate::config::{Backend, Config, TokenStrategy};
use crate::decompressor::decompress;
use crate::error::{Error, Result};
use crate::packer::{backend_compress, backend_decompress};
use crate::pipeline::compress;
use crate::synth::{self, System};

/// How a cell compresses its input.
#[derive(Debug, Clone, PartialEq)]
pub enum Method {
    LogFold(Config),
    /// The general-purpose compressor alone on the raw bytes.
    Bare {
        backend: Backend,
        level: u32,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub label: String,
    pub method: Method,
}

impl Cell {
    pub fn logfold(label: impl Into<String>, cfg: Config) -> Self {
        Cell { label: label.into(), method: Method::LogFold(cfg) }
    }

    pub fn bare(backend: Backend, level: u32) -> Self {
        Cell { label: format!("bare-{backend}-{level}"), method: Method::Bare { backend, level } }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    pub file: String,
    pub variant: String,
    pub original: u64,
    pub compressed: u64,
    pub compress_secs: f64,
    pub decompress_secs: f64,
    pub verified: bool,
    pub error: Option<String>,
}

const MB: f64 = 1024.0 * 1024.0;

impl Measurement {
    pub fn cr(&self) -> f64 {
        if self.compressed == 0 {
            0.0
        } else {
            self.original as f64 / self.compressed as f64
        }
    }

    /// MB/s.
    pub fn cs(&self) -> f64 {
        self.original as f64 / MB / self.compress_secs.max(1e-9)
    }

    /// MB/s.
    pub fn ds(&self) -> f64 {
        self.original as f64 / MB / self.decompress_secs.max(1e-9)
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{:.4},{:.4},{:.4},{},{}",
            self.file,
            self.variant,
            self.original,
            self.compressed,
            self.cr(),
            self.cs(),
            self.ds(),
            self.verified,
            self.error.as_deref().unwrap_or("").replace(',', ";")
        )
    }
}

pub const CSV_HEADER: &str = "file,variant,original_bytes,compressed_bytes,cr,cs_mbps,ds_mbps,verified,error";

/// Compresses, decompresses and byte-compares `data` under one cell.
pub fn measure(file: &str, data: &[u8], cell: &Cell) -> Measurement {
    let mut m = Measurement {
        file: file.to_string(),
        variant: cell.label.clone(),
        original: data.len() as u64,
        compressed: 0,
        compress_secs: 0.0,
        decompress_secs: 0.0,
        verified: false,
        error: None,
    };
    let run = || -> Result<(Vec<u8>, f64, Vec<u8>, f64)> {
        let t = Instant::now();
        let archive = match &cell.method {
            Method::LogFold(cfg) => compress(data, cfg)?,
            Method::Bare { backend, level } => backend_compress(data, *backend, *level)?,
        };
        let cs = t.elapsed().as_secs_f64();
        let t = Instant::now();
        let restored = match &cell.method {
            Method::LogFold(_) => decompress(&archive)?,
            Method::Bare { .. } => backend_decompress(&archive)?.1,
        };
        Ok((archive, cs, restored, t.elapsed().as_secs_f64()))
    };
    match run() {
        Ok((archive, cs, restored, ds)) => {
            m.compressed = archive.len() as u64;
            m.compress_secs = cs;
            m.decompress_secs = ds;
            m.verified = restored == data;
            if !m.verified {
                m.error = Some("round trip differs".into());
            }
        }
        Err(e) => m.error = Some(e.to_string()),
    }
    m
}

/// Every file under every cell. Files run one after another unless `parallel`.
pub fn run(corpus: &[(String, Vec<u8>)], cells: &[Cell], parallel: bool) -> Vec<Measurement> {
    let per_file = |(name, data): &(String, Vec<u8>)| -> Vec<Measurement> {
        cells.iter().map(|c| measure(name, data, c)).collect()
    };
    if parallel {
        corpus.par_iter().flat_map_iter(per_file).collect()
    } else {
        corpus.iter().flat_map(per_file).collect()
    }
}

pub fn default_cells(base: &Config) -> Vec<Cell> {
    vec![Cell::logfold("logfold", base.clone())]
}

pub fn ablation_cells(base: &Config) -> Vec<Cell> {
    vec![
        Cell::logfold("full", base.clone()),
        Cell::logfold("w/o processor", base.clone().without_processor()),
        Cell::logfold("w/o processor w/o encoder", base.clone().without_processor_and_encoder()),
    ]
}

pub fn theta_rv_cells(base: &Config, values: &[usize]) -> Vec<Cell> {
    values.iter().map(|&v| Cell::logfold(format!("theta_rv={v}"), Config { theta_rv: v, ..base.clone() })).collect()
}

pub fn phi_d_cells(base: &Config, values: &[f64]) -> Vec<Cell> {
    values.iter().map(|&v| Cell::logfold(format!("phi_d={v}"), Config { phi_d: v, ..base.clone() })).collect()
}

pub fn zeta_uv_cells(base: &Config, values: &[usize]) -> Vec<Cell> {
    values.iter().map(|&v| Cell::logfold(format!("zeta_uv={v}"), Config { zeta_uv: v, ..base.clone() })).collect()
}

pub fn strategy_cells(base: &Config) -> Vec<Cell> {
    TokenStrategy::ALL
        .into_iter()
        .map(|s| Cell::logfold(format!("strategy={s}"), Config { token_strategy: s, ..base.clone() }))
        .collect()
}

/// LogFold and the bare compressor at each level of each backend.
pub fn level_cells(base: &Config, backends: &[Backend], levels: &[u32]) -> Vec<Cell> {
    let mut cells = Vec::new();
    for &backend in backends {
        for &level in levels {
            let cfg = Config { backend, backend_level: Some(level), ..base.clone() };
            cells.push(Cell::logfold(format!("logfold-{backend}-{level}"), cfg));
            cells.push(Cell::bare(backend, level));
        }
    }
    cells
}

pub const THETA_RV_GRID: [usize; 4] = [20, 30, 40, 50];
pub const PHI_D_GRID: [f64; 5] = [0.5, 0.6, 0.7, 0.8, 0.9];
pub const ZETA_UV_GRID: [usize; 8] = [3, 4, 5, 6, 7, 8, 9, 10];
pub const LEVEL_GRID: [u32; 4] = [1, 3, 6, 9];

/// Human-readable CR table: one row per file, one column per variant.
pub fn cr_table(results: &[Measurement]) -> String {
    let mut variants: Vec<&str> = Vec::new();
    let mut files: Vec<&str> = Vec::new();
    for m in results {
        if !variants.contains(&m.variant.as_str()) {
            variants.push(&m.variant);
        }
        if !files.contains(&m.file.as_str()) {
            files.push(&m.file);
        }
    }
    let file_w = files.iter().map(|f| f.len()).max().unwrap_or(4).max(4);
    let col_w = variants.iter().map(|v| v.len()).max().unwrap_or(8).max(9);
    let mut out = String::new();
    let _ = write!(out, "{:file_w$}", "file");
    for v in &variants {
        let _ = write!(out, "  {v:>col_w$}");
    }
    out.push('\n');
    for f in &files {
        let _ = write!(out, "{f:file_w$}");
        for v in &variants {
            let cell = results.iter().find(|m| m.file == *f && m.variant == *v);
            let text = match cell {
                Some(m) if m.error.is_none() => format!("{:.3}", m.cr()),
                Some(_) => "FAILED".to_string(),
                None => "-".to_string(),
            };
            let _ = write!(out, "  {text:>col_w$}");
        }
        out.push('\n');
    }
    out
}

pub fn csv(results: &[Measurement]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for m in results {
        out.push_str(&m.csv_row());
        out.push('\n');
    }
    out
}

/// Largest relative spread (max - min) / min of CR over the given variants of one file.
pub fn cr_spread(results: &[Measurement], file: &str, variants: &[&str]) -> Option<f64> {
    let crs: Vec<f64> = results
        .iter()
        .filter(|m| m.file == file && variants.contains(&m.variant.as_str()))
        .map(Measurement::cr)
        .collect();
    let lo = crs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = crs.iter().copied().fold(0.0, f64::max);
    (!crs.is_empty() && lo > 0.0).then(|| (hi - lo) / lo)
}

/// Regular files of `dir`, sorted by name.
pub fn load_corpus(dir: &Path) -> Result<Vec<(String, Vec<u8>)>> {
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let entry = entry?;
        if entry.file_type()?.is_file() {
            let name = entry.file_name().to_string_lossy().into_owned();
            files.push((name, std::fs::read(entry.path())?));
        }
    }
    if files.is_empty() {
        return Err(Error::InvalidConfig(format!("corpus {} contains no files", dir.display())));
    }
    files.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(files)
}

/// Environment variable naming a directory of real `<Name>_2k.log` samples.
pub const LOGHUB_DIR_VAR: &str = "LOGFOLD_LOGHUB_DIR";

/// The 16 sample logs: real files when available, synthetic ones otherwise.
pub fn loghub_samples(lines: usize, seed: u64) -> Vec<(String, Vec<u8>)> {
    let dir = std::env::var_os(LOGHUB_DIR_VAR).map(std::path::PathBuf::from);
    System::ALL
        .iter()
        .map(|&s| {
            let name = s.name();
            let real = dir.as_ref().and_then(|d| {
                let file = format!("{name}_2k.log");
                std::fs::read(d.join(name).join(&file)).or_else(|_| std::fs::read(d.join(&file))).ok()
            });
            let data = real.unwrap_or_else(|| synth::generate(s, lines, seed));
            (name.to_string(), data)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::default_config;

    #[test]
    fn measurement_uses_real_sizes() {
        let data = synth::generate(System::Apache, 200, 1);
        let m = measure("Apache", &data, &Cell::logfold("x", default_config()));
        assert!(m.verified, "{:?}", m.error);
        assert_eq!(m.original, data.len() as u64);
        assert_eq!(m.compressed, compress(&data, &default_config()).unwrap().len() as u64);
        let b = measure("Apache", &data, &Cell::bare(Backend::Gzip, 9));
        assert!(b.verified);
        assert_eq!(b.compressed, backend_compress(&data, Backend::Gzip, 9).unwrap().len() as u64);
    }

    #[test]
    fn failures_are_recorded() {
        let bad = Config { phi_d: 2.0, ..default_config() };
        let m = measure("f", b"a\n", &Cell::logfold("bad", bad));
        assert!(!m.verified);
        assert!(m.error.is_some());
        assert!(cr_table(std::slice::from_ref(&m)).contains("FAILED"));
        assert!(csv(&[m]).lines().nth(1).unwrap().ends_with("phi_d must lie in (0; 1]; got 2"));
    }

    #[test]
    fn sweep_shapes() {
        let base = default_config();
        assert_eq!(phi_d_cells(&base, &PHI_D_GRID).len(), 5);
        assert_eq!(level_cells(&base, &[Backend::Lzma], &LEVEL_GRID).len(), 8);
        assert_eq!(ablation_cells(&base)[2].label, "w/o processor w/o encoder");
        let corpus = vec![("a".to_string(), b"x 1\n".to_vec()), ("b".to_string(), b"y 2\n".to_vec())];
        let results = run(&corpus, &phi_d_cells(&base, &PHI_D_GRID), true);
        assert_eq!(results.len(), 10);
        let table = cr_table(&results);
        assert_eq!(table.lines().count(), 3);
        assert!(table.lines().next().unwrap().contains("phi_d=0.9"));
    }

    #[test]
    fn empty_corpus_is_an_error() {
        let dir = std::env::temp_dir().join(format!("logfold-empty-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        assert!(load_corpus(&dir).is_err());
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
