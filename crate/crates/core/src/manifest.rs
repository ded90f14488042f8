//! Archive manifest and its binary form.
//!
//! The manifest is `LFMF` followed by a sequence of tagged fields, each
//! `tag ‖ elastic(len) ‖ value`. Integer values are elastic-encoded; nested
//! records are themselves field sequences. Unknown tags are skipped.

use std::collections::HashSet;

use crate::codec::{elastic_encode, NumericColumnEncoding, NumericMode, Reader};
use crate::config::{Backend, Config, TokenStrategy};
use crate::encoder::{ColumnPlan, FamilyPlan, LengthEncoding, MatrixPlan, MAX_COMBINED_WIDTH};
use crate::error::{Error, Result};
use crate::model::{StreamKind, Terminator};

pub const MANIFEST_MAGIC: &[u8; 4] = b"LFMF";
pub const FORMAT_VERSION: u64 = 1;
pub const MANIFEST_NAME: &str = "manifest.bin";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StreamDescriptor {
    Templates {
        entries: u32,
    },
    /// Unstructured strings first, then one skeleton entry per refined pattern.
    Tokens {
        strings: u32,
        patterns: u32,
    },
    StringValues {
        entries: u32,
    },
    TemplateIds {
        count: u64,
    },
    StringIds {
        count: u64,
    },
    LineTerminators {
        lines: u64,
    },
    Group {
        ordinal: u32,
        family: FamilyPlan,
    },
    LengthGroup {
        length: u32,
        encoding: LengthEncoding,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreamEntry {
    pub name: String,
    pub kind: StreamKind,
    pub size: u64,
    pub descriptor: StreamDescriptor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChunkEntry {
    pub index: u32,
    pub lines: u64,
    pub final_terminator: Terminator,
    pub streams: Vec<StreamEntry>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArchiveManifest {
    pub format_version: u64,
    pub config: Config,
    pub original_size: u64,
    pub chunks: Vec<ChunkEntry>,
}

impl ArchiveManifest {
    pub fn chunk_count(&self) -> usize {
        self.chunks.len()
    }

    /// Every stream name in archive order.
    pub fn stream_names(&self) -> impl Iterator<Item = &str> {
        self.chunks.iter().flat_map(|c| c.streams.iter().map(|s| s.name.as_str()))
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for (i, chunk) in self.chunks.iter().enumerate() {
            if chunk.index as usize != i {
                return Err(Error::corrupt("chunk indices out of order"));
            }
            for s in &chunk.streams {
                if s.name == MANIFEST_NAME || !seen.insert(s.name.as_str()) {
                    return Err(Error::corrupt(format!("duplicate stream name {}", s.name)));
                }
            }
        }
        Ok(())
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = MANIFEST_MAGIC.to_vec();
        let mut top = Fields::default();
        top.uint(1, self.format_version);
        top.record(2, config_fields(&self.config));
        top.uint(3, self.chunks.len() as u64);
        top.uint(5, self.original_size);
        for chunk in &self.chunks {
            top.record(4, chunk_fields(chunk));
        }
        out.extend_from_slice(&top.0);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let body = bytes
            .strip_prefix(MANIFEST_MAGIC.as_slice())
            .ok_or_else(|| Error::UnsupportedVersion("manifest magic not recognised".into()))?;
        let top = Parsed::new(body)?;
        let format_version = top.uint(1)?;
        if format_version != FORMAT_VERSION {
            return Err(Error::UnsupportedVersion(format!("manifest version {format_version}")));
        }
        let config = parse_config(&top.record(2)?)?;
        let chunk_count = top.uint(3)?;
        let chunks = top.all(4).map(|r| parse_chunk(&Parsed::new(r)?)).collect::<Result<Vec<_>>>()?;
        if chunks.len() as u64 != chunk_count {
            return Err(Error::corrupt("chunk count disagrees with chunk records"));
        }
        let manifest = ArchiveManifest { format_version, config, original_size: top.uint(5)?, chunks };
        manifest.validate()?;
        Ok(manifest)
    }
}

#[derive(Default)]
struct Fields(Vec<u8>);

impl Fields {
    fn bytes(&mut self, tag: u8, value: &[u8]) {
        self.0.push(tag);
        elastic_encode(value.len() as u64, &mut self.0);
        self.0.extend_from_slice(value);
    }

    fn uint(&mut self, tag: u8, v: u64) {
        let mut buf = Vec::with_capacity(10);
        elastic_encode(v, &mut buf);
        self.bytes(tag, &buf);
    }

    fn record(&mut self, tag: u8, inner: Fields) {
        self.bytes(tag, &inner.0);
    }
}

struct Parsed<'a>(Vec<(u8, &'a [u8])>);

impl<'a> Parsed<'a> {
    fn new(bytes: &'a [u8]) -> Result<Self> {
        let mut reader = Reader::new(bytes);
        let mut fields = Vec::new();
        while !reader.is_empty() {
            let tag = reader.byte()?;
            let len = reader.count()?;
            fields.push((tag, reader.take(len)?));
        }
        Ok(Parsed(fields))
    }

    fn opt(&self, tag: u8) -> Option<&'a [u8]> {
        self.0.iter().find(|(t, _)| *t == tag).map(|(_, v)| *v)
    }

    fn get(&self, tag: u8) -> Result<&'a [u8]> {
        self.opt(tag).ok_or_else(|| Error::corrupt(format!("manifest field {tag} missing")))
    }

    fn all(&self, tag: u8) -> impl Iterator<Item = &'a [u8]> + '_ {
        self.0.iter().filter(move |(t, _)| *t == tag).map(|(_, v)| *v)
    }

    fn uint(&self, tag: u8) -> Result<u64> {
        decode_uint(self.get(tag)?)
    }

    fn opt_uint(&self, tag: u8) -> Result<Option<u64>> {
        self.opt(tag).map(decode_uint).transpose()
    }

    fn small(&self, tag: u8) -> Result<u32> {
        u32::try_from(self.uint(tag)?).map_err(|_| Error::corrupt("manifest value out of range"))
    }

    fn flag(&self, tag: u8) -> Result<bool> {
        match self.uint(tag)? {
            0 => Ok(false),
            1 => Ok(true),
            _ => Err(Error::corrupt("manifest flag out of range")),
        }
    }

    fn record(&self, tag: u8) -> Result<Parsed<'a>> {
        Parsed::new(self.get(tag)?)
    }
}

fn decode_uint(bytes: &[u8]) -> Result<u64> {
    let mut r = Reader::new(bytes);
    let v = r.varint()?;
    r.finish("manifest integer")?;
    Ok(v)
}

fn config_fields(cfg: &Config) -> Fields {
    let mut f = Fields::default();
    f.uint(1, cfg.chunk_lines as u64);
    f.uint(2, cfg.theta_rv as u64);
    f.uint(3, cfg.phi_d.to_bits());
    f.uint(4, cfg.zeta_uv as u64);
    f.uint(5, cfg.backend.code() as u64);
    if let Some(level) = cfg.backend_level {
        f.uint(6, level as u64);
    }
    f.uint(7, cfg.token_strategy.code() as u64);
    f.uint(8, cfg.max_mining_depth as u64);
    f.uint(9, cfg.disable_processor as u64);
    f.uint(10, cfg.disable_hybrid_encoder as u64);
    f
}

fn parse_config(p: &Parsed<'_>) -> Result<Config> {
    let code = |v: u64| u8::try_from(v).map_err(|_| Error::corrupt("config code out of range"));
    Ok(Config {
        chunk_lines: p.uint(1)? as usize,
        theta_rv: p.uint(2)? as usize,
        phi_d: f64::from_bits(p.uint(3)?),
        zeta_uv: p.uint(4)? as usize,
        backend: Backend::from_code(code(p.uint(5)?)?)
            .ok_or_else(|| Error::UnsupportedVersion("unknown backend".into()))?,
        backend_level: p.opt_uint(6)?.map(|l| l as u32),
        token_strategy: TokenStrategy::from_code(code(p.uint(7)?)?)
            .ok_or_else(|| Error::corrupt("unknown token strategy"))?,
        max_mining_depth: p.uint(8)? as usize,
        disable_processor: p.flag(9)?,
        disable_hybrid_encoder: p.flag(10)?,
    })
}

fn chunk_fields(chunk: &ChunkEntry) -> Fields {
    let mut f = Fields::default();
    f.uint(1, chunk.index as u64);
    f.uint(2, chunk.lines);
    f.uint(3, (chunk.final_terminator == Terminator::Lf) as u64);
    for s in &chunk.streams {
        let mut sf = Fields::default();
        sf.bytes(1, s.name.as_bytes());
        sf.uint(2, s.kind.code() as u64);
        sf.uint(3, s.size);
        sf.record(4, descriptor_fields(&s.descriptor));
        f.record(4, sf);
    }
    f
}

fn parse_chunk(p: &Parsed<'_>) -> Result<ChunkEntry> {
    let streams = p
        .all(4)
        .map(|r| {
            let s = Parsed::new(r)?;
            let name = String::from_utf8(s.get(1)?.to_vec()).map_err(|_| Error::corrupt("stream name is not UTF-8"))?;
            let kind = u8::try_from(s.uint(2)?)
                .ok()
                .and_then(StreamKind::from_code)
                .ok_or_else(|| Error::corrupt("unknown stream kind"))?;
            Ok(StreamEntry { name, kind, size: s.uint(3)?, descriptor: parse_descriptor(&s.record(4)?)? })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ChunkEntry {
        index: p.small(1)?,
        lines: p.uint(2)?,
        final_terminator: if p.flag(3)? { Terminator::Lf } else { Terminator::None },
        streams,
    })
}

fn encoding_fields(enc: &NumericColumnEncoding) -> Fields {
    let mut f = Fields::default();
    f.uint(1, enc.mode.code() as u64);
    f.uint(2, enc.zigzag as u64);
    if let Some(w) = enc.fixed_width {
        f.uint(3, w as u64);
    }
    if let Some(b) = enc.base_value {
        f.uint(4, b);
    }
    f
}

fn parse_encoding(p: &Parsed<'_>) -> Result<NumericColumnEncoding> {
    let mode = u8::try_from(p.uint(1)?).map_err(|_| Error::corrupt("numeric mode out of range"))?;
    let fixed_width =
        p.opt_uint(3)?.map(|w| u8::try_from(w).map_err(|_| Error::corrupt("fixed width out of range"))).transpose()?;
    Ok(NumericColumnEncoding {
        mode: NumericMode::from_code(mode)?,
        zigzag: p.flag(2)?,
        fixed_width,
        base_value: p.opt_uint(4)?,
    })
}

fn plan_fields(plan: &MatrixPlan) -> Fields {
    let mut f = Fields::default();
    match plan {
        MatrixPlan::Empty => f.uint(3, 0),
        MatrixPlan::Combined { widths, encoding } => {
            f.uint(3, 1);
            f.bytes(4, widths);
            f.record(5, encoding_fields(encoding));
        }
        MatrixPlan::Columns(cols) => {
            f.uint(3, 2);
            for col in cols {
                let mut cf = Fields::default();
                match col {
                    ColumnPlan::Numeric(enc) => {
                        cf.uint(1, 0);
                        cf.record(2, encoding_fields(enc));
                    }
                    ColumnPlan::Mixed { encoding, strings } => {
                        cf.uint(1, 1);
                        cf.record(2, encoding_fields(encoding));
                        cf.uint(3, *strings as u64);
                    }
                }
                f.record(6, cf);
            }
        }
        MatrixPlan::Dictionary { entries } => {
            f.uint(3, 3);
            f.uint(7, *entries as u64);
        }
    }
    f
}

fn descriptor_fields(d: &StreamDescriptor) -> Fields {
    let mut f = Fields::default();
    match d {
        StreamDescriptor::Templates { entries } => {
            f.uint(1, 0);
            f.uint(2, *entries as u64);
        }
        StreamDescriptor::Tokens { strings, patterns } => {
            f.uint(1, 1);
            f.uint(2, *strings as u64);
            f.uint(3, *patterns as u64);
        }
        StreamDescriptor::StringValues { entries } => {
            f.uint(1, 2);
            f.uint(2, *entries as u64);
        }
        StreamDescriptor::TemplateIds { count } => {
            f.uint(1, 3);
            f.uint(2, *count);
        }
        StreamDescriptor::StringIds { count } => {
            f.uint(1, 4);
            f.uint(2, *count);
        }
        StreamDescriptor::LineTerminators { lines } => {
            f.uint(1, 5);
            f.uint(2, *lines);
        }
        StreamDescriptor::Group { ordinal, family } => {
            f.uint(1, 6);
            f.uint(2, *ordinal as u64);
            if let Some(enc) = &family.selector {
                f.record(8, encoding_fields(enc));
            }
            for plan in &family.patterns {
                f.record(9, plan_fields(plan));
            }
        }
        StreamDescriptor::LengthGroup { length, encoding } => {
            f.uint(1, 7);
            f.uint(2, *length as u64);
            match encoding {
                LengthEncoding::Numeric(enc) => {
                    f.uint(3, 0);
                    f.record(4, encoding_fields(enc));
                }
                LengthEncoding::Dictionary => f.uint(3, 1),
            }
        }
    }
    f
}

fn parse_plan(p: &Parsed<'_>) -> Result<MatrixPlan> {
    Ok(match p.uint(3)? {
        0 => MatrixPlan::Empty,
        1 => {
            let widths = p.get(4)?.to_vec();
            if widths.is_empty() || widths.iter().map(|&w| w as usize).sum::<usize>() > MAX_COMBINED_WIDTH {
                return Err(Error::corrupt("combined widths out of range"));
            }
            MatrixPlan::Combined { widths, encoding: parse_encoding(&p.record(5)?)? }
        }
        2 => MatrixPlan::Columns(
            p.all(6)
                .map(|r| {
                    let c = Parsed::new(r)?;
                    let encoding = parse_encoding(&c.record(2)?)?;
                    match c.uint(1)? {
                        0 => Ok(ColumnPlan::Numeric(encoding)),
                        1 => Ok(ColumnPlan::Mixed { encoding, strings: c.small(3)? }),
                        _ => Err(Error::corrupt("unknown column plan")),
                    }
                })
                .collect::<Result<_>>()?,
        ),
        3 => MatrixPlan::Dictionary { entries: p.small(7)? },
        _ => return Err(Error::corrupt("unknown matrix plan")),
    })
}

fn parse_descriptor(p: &Parsed<'_>) -> Result<StreamDescriptor> {
    Ok(match p.uint(1)? {
        0 => StreamDescriptor::Templates { entries: p.small(2)? },
        1 => StreamDescriptor::Tokens { strings: p.small(2)?, patterns: p.small(3)? },
        2 => StreamDescriptor::StringValues { entries: p.small(2)? },
        3 => StreamDescriptor::TemplateIds { count: p.uint(2)? },
        4 => StreamDescriptor::StringIds { count: p.uint(2)? },
        5 => StreamDescriptor::LineTerminators { lines: p.uint(2)? },
        6 => {
            let selector = p.opt(8).map(|r| parse_encoding(&Parsed::new(r)?)).transpose()?;
            let patterns = p.all(9).map(|r| parse_plan(&Parsed::new(r)?)).collect::<Result<Vec<_>>>()?;
            if patterns.is_empty() || selector.is_some() != (patterns.len() > 1) {
                return Err(Error::corrupt("group without a usable pattern list"));
            }
            StreamDescriptor::Group { ordinal: p.small(2)?, family: FamilyPlan { selector, patterns } }
        }
        7 => {
            let encoding = match p.uint(3)? {
                0 => LengthEncoding::Numeric(parse_encoding(&p.record(4)?)?),
                1 => LengthEncoding::Dictionary,
                _ => return Err(Error::corrupt("unknown length encoding")),
            };
            let length = p.small(2)?;
            if length == 0 {
                return Err(Error::corrupt("zero-length number group"));
            }
            StreamDescriptor::LengthGroup { length, encoding }
        }
        _ => return Err(Error::corrupt("unknown stream descriptor")),
    })
}
