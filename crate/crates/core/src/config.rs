//! Compressor configuration.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// General-purpose compressor applied to the packed archive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Gzip,
    Bzip2,
    Lzma,
}

impl Backend {
    pub const ALL: [Backend; 3] = [Backend::Gzip, Backend::Bzip2, Backend::Lzma];

    /// Level used when none is configured.
    pub fn default_level(self) -> u32 {
        match self {
            Backend::Gzip => 6,
            Backend::Bzip2 => 9,
            Backend::Lzma => 6,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Backend::Gzip => "gzip",
            Backend::Bzip2 => "bzip2",
            Backend::Lzma => "lzma",
        }
    }

    pub(crate) fn code(self) -> u8 {
        match self {
            Backend::Gzip => 0,
            Backend::Bzip2 => 1,
            Backend::Lzma => 2,
        }
    }

    pub(crate) fn from_code(code: u8) -> Option<Self> {
        Self::ALL.into_iter().find(|b| b.code() == code)
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gzip" | "gz" => Ok(Backend::Gzip),
            "bzip2" | "bz2" => Ok(Backend::Bzip2),
            "lzma" | "xz" => Ok(Backend::Lzma),
            other => Err(Error::InvalidConfig(format!("unknown backend {other:?}"))),
        }
    }
}

/// Which rule families mark a token as dynamic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenStrategy {
    Num,
    NumPath,
    NumClasspath,
    All,
}

impl TokenStrategy {
    pub const ALL: [TokenStrategy; 4] =
        [TokenStrategy::Num, TokenStrategy::NumPath, TokenStrategy::NumClasspath, TokenStrategy::All];

    pub fn name(self) -> &'static str {
        match self {
            TokenStrategy::Num => "num",
            TokenStrategy::NumPath => "num_path",
            TokenStrategy::NumClasspath => "num_classpath",
            TokenStrategy::All => "all",
        }
    }

    pub(crate) fn code(self) -> u8 {
        match self {
            TokenStrategy::Num => 0,
            TokenStrategy::NumPath => 1,
            TokenStrategy::NumClasspath => 2,
            TokenStrategy::All => 3,
        }
    }

    pub(crate) fn from_code(code: u8) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.code() == code)
    }

    pub fn uses_path(self) -> bool {
        matches!(self, TokenStrategy::NumPath | TokenStrategy::All)
    }

    pub fn uses_classpath(self) -> bool {
        matches!(self, TokenStrategy::NumClasspath | TokenStrategy::All)
    }
}

impl fmt::Display for TokenStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TokenStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '&'], "_").as_str() {
            "num" => Ok(TokenStrategy::Num),
            "num_path" => Ok(TokenStrategy::NumPath),
            "num_classpath" => Ok(TokenStrategy::NumClasspath),
            "all" => Ok(TokenStrategy::All),
            other => Err(Error::InvalidConfig(format!("unknown token strategy {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    /// Lines per independently compressed chunk.
    pub chunk_lines: usize,
    /// A critical position is accepted when its representative count is below this.
    pub theta_rv: usize,
    /// ...or when its dominance ratio exceeds this.
    pub phi_d: f64,
    /// Critical columns with at most this many unique values are fully re-grouped.
    pub zeta_uv: usize,
    pub backend: Backend,
    /// `None` selects the backend's own default level.
    pub backend_level: Option<u32>,
    pub token_strategy: TokenStrategy,
    pub max_mining_depth: usize,
    pub disable_processor: bool,
    pub disable_hybrid_encoder: bool,
}

impl Default for Config {
    fn default() -> Self {
        default_config()
    }
}

pub fn default_config() -> Config {
    Config {
        chunk_lines: 100_000,
        theta_rv: 40,
        phi_d: 0.6,
        zeta_uv: 3,
        backend: Backend::Lzma,
        backend_level: None,
        token_strategy: TokenStrategy::NumPath,
        max_mining_depth: 5,
        disable_processor: false,
        disable_hybrid_encoder: false,
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if self.chunk_lines == 0 {
            return Err(Error::InvalidConfig("chunk_lines must be at least 1".into()));
        }
        if self.theta_rv == 0 {
            return Err(Error::InvalidConfig("theta_rv must be at least 1".into()));
        }
        if !(self.phi_d > 0.0 && self.phi_d <= 1.0) {
            return Err(Error::InvalidConfig(format!("phi_d must lie in (0, 1], got {}", self.phi_d)));
        }
        if self.zeta_uv == 0 {
            return Err(Error::InvalidConfig("zeta_uv must be at least 1".into()));
        }
        if self.max_mining_depth == 0 {
            return Err(Error::InvalidConfig("max_mining_depth must be at least 1".into()));
        }
        if let Some(level) = self.backend_level {
            if !(1..=9).contains(&level) {
                return Err(Error::InvalidConfig(format!("backend level must be 1..=9, got {level}")));
            }
        }
        Ok(())
    }

    pub fn effective_level(&self) -> u32 {
        self.backend_level.unwrap_or_else(|| self.backend.default_level())
    }

    /// The "w/o processor" ablation variant.
    pub fn without_processor(mut self) -> Self {
        self.disable_processor = true;
        self
    }

    /// The "w/o processor w/o encoder" ablation variant.
    pub fn without_processor_and_encoder(mut self) -> Self {
        self.disable_processor = true;
        self.disable_hybrid_encoder = true;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_published_settings() {
        let cfg = default_config();
        assert_eq!(cfg.theta_rv, 40);
        assert_eq!(cfg.phi_d, 0.6);
        assert_eq!(cfg.zeta_uv, 3);
        assert_eq!(cfg.backend, Backend::Lzma);
        assert_eq!(cfg.chunk_lines, 100_000);
        assert_eq!(cfg.token_strategy, TokenStrategy::NumPath);
        assert_eq!(cfg.max_mining_depth, 5);
        assert!(!cfg.disable_processor && !cfg.disable_hybrid_encoder);
        cfg.validate().unwrap();
    }

    #[test]
    fn rejects_out_of_range() {
        let bad = [
            Config { chunk_lines: 0, ..Config::default() },
            Config { phi_d: 0.0, ..Config::default() },
            Config { phi_d: 1.5, ..Config::default() },
            Config { theta_rv: 0, ..Config::default() },
            Config { zeta_uv: 0, ..Config::default() },
            Config { backend_level: Some(10), ..Config::default() },
        ];
        for cfg in bad {
            assert!(matches!(cfg.validate(), Err(Error::InvalidConfig(_))), "{cfg:?}");
        }
        Config { phi_d: 1.0, ..Config::default() }.validate().unwrap();
    }

    #[test]
    fn parse_names() {
        assert_eq!("xz".parse::<Backend>().unwrap(), Backend::Lzma);
        assert_eq!("num&path".parse::<TokenStrategy>().unwrap(), TokenStrategy::NumPath);
        assert!("zstd".parse::<Backend>().is_err());
        for b in Backend::ALL {
            assert_eq!(Backend::from_code(b.code()), Some(b));
        }
    }
}
