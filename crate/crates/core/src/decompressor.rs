//! Archive decoding, with optional per-step timing.
//!
//! Steps: 1 outer-layer decode, 2 unpack, 3 template ids, 4 static
//! sequences, 5 string ids, 6 matrix streams, 7 numeric restoration,
//! 8 final assembly.

use std::collections::HashMap;
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::codec::{decode_dictionary, decode_ids, Reader};
use crate::encoder::{
    decode_family_stream, decode_length_group, length_tag, parse_skeleton_entry, parse_template, render_group,
    DecodedFamily, FamilyPlan, PatternSegment, SlotTag, TemplateSegment, TokenList,
};
use crate::error::{Error, Result};
use crate::manifest::{ArchiveManifest, ChunkEntry, StreamDescriptor};
use crate::model::{EncodedStream, Terminator};
use crate::packer::{backend_decompress, read_container};

pub const STEP_NAMES: [&str; 8] = [
    "outer-layer decode",
    "unpack",
    "template ids",
    "static sequences",
    "string ids",
    "matrix streams",
    "numeric restoration",
    "final assembly",
];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct DecompressionProfile {
    pub steps: [Duration; 8],
    pub total: Duration,
}

impl DecompressionProfile {
    pub fn step_sum(&self) -> Duration {
        self.steps.iter().sum()
    }

    /// Index (0-based) of the slowest step.
    pub fn dominant_step(&self) -> usize {
        (0..8).max_by_key(|&i| self.steps[i]).unwrap_or(0)
    }

    /// Comma-separated rows `step,name,seconds,fraction`.
    pub fn csv_rows(&self) -> Vec<String> {
        let sum = self.step_sum().as_secs_f64().max(f64::MIN_POSITIVE);
        (0..8)
            .map(|i| {
                let s = self.steps[i].as_secs_f64();
                format!("{},{},{:.6},{:.4}", i + 1, STEP_NAMES[i], s, s / sum)
            })
            .collect()
    }
}

impl fmt::Display for DecompressionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sum = self.step_sum().as_secs_f64().max(f64::MIN_POSITIVE);
        writeln!(f, "{:<4} {:<22} {:>12} {:>8}", "step", "name", "seconds", "share")?;
        for (i, (step, name)) in self.steps.iter().zip(STEP_NAMES).enumerate() {
            let s = step.as_secs_f64();
            writeln!(f, "{:<4} {:<22} {:>12.6} {:>7.1}%", i + 1, name, s, 100.0 * s / sum)?;
        }
        write!(f, "{:<4} {:<22} {:>12.6}", "", "total", self.total.as_secs_f64())
    }
}

struct Timer<'a> {
    profile: Option<&'a mut DecompressionProfile>,
    mark: Instant,
}

impl<'a> Timer<'a> {
    fn new(profile: Option<&'a mut DecompressionProfile>) -> Self {
        Timer { profile, mark: Instant::now() }
    }

    fn lap(&mut self, step: usize) {
        if let Some(p) = self.profile.as_deref_mut() {
            let now = Instant::now();
            p.steps[step - 1] += now - self.mark;
            self.mark = now;
        }
    }
}

fn mismatch(msg: impl Into<String>) -> Error {
    Error::corrupt(msg)
}

/// The streams of one chunk, looked up by file name.
struct ChunkStreams<'a> {
    entry: &'a ChunkEntry,
    payloads: HashMap<&'a str, (&'a StreamDescriptor, &'a [u8])>,
}

impl<'a> ChunkStreams<'a> {
    fn new(entry: &'a ChunkEntry, streams: &'a [EncodedStream]) -> Result<Self> {
        let prefix = format!("c{}/", entry.index);
        let mut payloads = HashMap::new();
        for (meta, s) in entry.streams.iter().zip(streams) {
            let file = meta
                .name
                .strip_prefix(&prefix)
                .ok_or_else(|| mismatch(format!("stream {} outside its chunk", meta.name)))?;
            payloads.insert(file, (&meta.descriptor, s.payload.as_slice()));
        }
        Ok(ChunkStreams { entry, payloads })
    }

    fn get(&self, file: &str) -> Result<(&'a StreamDescriptor, &'a [u8])> {
        self.payloads.get(file).copied().ok_or_else(|| mismatch(format!("chunk {} lacks {file}", self.entry.index)))
    }
}

struct NumberBuffer {
    length: usize,
    digits: Vec<u8>,
    next: usize,
}

/// A template segment bound to the chunk's decoded streams.
enum Piece<'a> {
    Literal(&'a [u8]),
    String,
    Family(usize),
    Number(usize),
}

/// Restored tokens of one family, handed out in occurrence order.
struct FamilyTokens {
    lists: Vec<(TokenList, usize)>,
    selectors: Option<Vec<u64>>,
    next: usize,
}

impl FamilyTokens {
    fn next(&mut self) -> Option<&[u8]> {
        let j = match &self.selectors {
            Some(s) => *s.get(self.next)? as usize,
            None => 0,
        };
        self.next += 1;
        let (list, at) = self.lists.get_mut(j)?;
        if *at >= list.len() {
            return None;
        }
        *at += 1;
        Some(list.get(*at - 1))
    }

    fn exhausted(&self) -> bool {
        self.lists.iter().all(|(list, at)| *at == list.len())
    }
}

fn decode_chunk(entry: &ChunkEntry, streams: &[EncodedStream], timer: &mut Timer<'_>, out: &mut Vec<u8>) -> Result<()> {
    let chunk = ChunkStreams::new(entry, streams)?;

    // 3: template ids
    let (desc, tpl_dict) = chunk.get("templates.dict")?;
    let StreamDescriptor::Templates { entries: template_count } = *desc else {
        return Err(mismatch("templates.dict descriptor"));
    };
    let (desc, ids) = chunk.get("tpl_ids.bin")?;
    let StreamDescriptor::TemplateIds { count } = *desc else {
        return Err(mismatch("tpl_ids.bin descriptor"));
    };
    let mut reader = Reader::new(ids);
    let template_ids = decode_ids(&mut reader, template_count as usize)?;
    reader.finish("template id stream")?;
    if template_ids.len() as u64 != count || count != entry.lines {
        return Err(Error::inconsistent("template id count disagrees with line count"));
    }
    timer.lap(3);

    // 4: static sequences
    let mut reader = Reader::new(tpl_dict);
    let template_text = decode_dictionary(&mut reader)?;
    reader.finish("template dictionary")?;
    if template_text.len() != template_count as usize {
        return Err(mismatch("template dictionary size disagrees with manifest"));
    }
    let templates = template_text.iter().map(|t| parse_template(t)).collect::<Result<Vec<_>>>()?;
    timer.lap(4);

    // 5: string ids and token dictionary
    let (desc, tokens_dict) = chunk.get("tokens.dict")?;
    let StreamDescriptor::Tokens { strings: string_count, patterns } = *desc else {
        return Err(mismatch("tokens.dict descriptor"));
    };
    let mut reader = Reader::new(tokens_dict);
    let tokens = decode_dictionary(&mut reader)?;
    reader.finish("token dictionary")?;
    if tokens.len() != string_count as usize + patterns as usize {
        return Err(mismatch("token dictionary size disagrees with manifest"));
    }
    let (strings, skeleton_text) = tokens.split_at(string_count as usize);
    let (desc, str_ids) = chunk.get("str_ids.bin")?;
    let StreamDescriptor::StringIds { count } = *desc else {
        return Err(mismatch("str_ids.bin descriptor"));
    };
    let mut reader = Reader::new(str_ids);
    let string_ids = decode_ids(&mut reader, strings.len())?;
    reader.finish("string id stream")?;
    if string_ids.len() as u64 != count {
        return Err(Error::inconsistent("string id count disagrees with manifest"));
    }
    timer.lap(5);

    // 6: matrix streams
    let mut patterns_by_family: Vec<Vec<Vec<PatternSegment>>> = Vec::new();
    for text in skeleton_text {
        let (ordinal, pattern) = parse_skeleton_entry(text)?;
        if ordinal + 1 == patterns_by_family.len() {
            patterns_by_family[ordinal].push(pattern);
        } else if ordinal == patterns_by_family.len() {
            patterns_by_family.push(vec![pattern]);
        } else {
            return Err(Error::inconsistent("skeleton entries out of family order"));
        }
    }
    let (desc, strvals) = chunk.get("strvals.dict")?;
    let StreamDescriptor::StringValues { entries } = *desc else {
        return Err(mismatch("strvals.dict descriptor"));
    };
    let mut reader = Reader::new(strvals);
    let string_values = decode_dictionary(&mut reader)?;
    reader.finish("string value dictionary")?;
    if string_values.len() != entries as usize {
        return Err(mismatch("string value dictionary size disagrees with manifest"));
    }
    let mut decoded_families: Vec<(&FamilyPlan, DecodedFamily)> = Vec::with_capacity(patterns_by_family.len());
    for (k, patterns) in patterns_by_family.iter().enumerate() {
        let (desc, payload) = chunk.get(&format!("g{k}.bin"))?;
        let StreamDescriptor::Group { ordinal, family } = desc else {
            return Err(mismatch(format!("g{k}.bin descriptor")));
        };
        if *ordinal as usize != k || family.patterns.len() != patterns.len() {
            return Err(mismatch(format!("g{k}.bin disagrees with its skeleton entries")));
        }
        decoded_families.push((family, decode_family_stream(payload, family)?));
    }
    timer.lap(6);

    // 7: numeric restoration
    let mut families: Vec<FamilyTokens> = Vec::with_capacity(decoded_families.len());
    let mut value_at = 0;
    for ((plan, decoded), patterns) in decoded_families.into_iter().zip(&patterns_by_family) {
        let mut lists = Vec::with_capacity(patterns.len());
        for ((matrix_plan, matrix), pattern) in plan.patterns.iter().zip(&decoded.patterns).zip(patterns) {
            let n = matrix_plan.string_values();
            let values = string_values
                .get(value_at..value_at + n)
                .ok_or_else(|| Error::inconsistent("string value dictionary too short"))?;
            value_at += n;
            lists.push((render_group(pattern, matrix, values)?, 0));
        }
        families.push(FamilyTokens { lists, selectors: decoded.selectors, next: 0 });
    }
    if value_at != string_values.len() {
        return Err(Error::inconsistent("unused string values"));
    }
    let mut numbers: Vec<NumberBuffer> = Vec::new();
    let mut number_index: HashMap<usize, usize> = HashMap::new();
    let mut group_streams = 0;
    for meta in &entry.streams {
        match &meta.descriptor {
            StreamDescriptor::LengthGroup { length, encoding } => {
                let length = *length as usize;
                let file = format!("len_{}.bin", length_tag(length));
                let (_, payload) = chunk.get(&file)?;
                if !meta.name.ends_with(&file) {
                    return Err(mismatch(format!("{} does not match its length", meta.name)));
                }
                let digits = decode_length_group(payload, length, encoding)?;
                if number_index.insert(length, numbers.len()).is_some() {
                    return Err(mismatch("duplicate length group"));
                }
                numbers.push(NumberBuffer { length, digits, next: 0 });
            }
            StreamDescriptor::Group { .. } => group_streams += 1,
            _ => {}
        }
    }
    if group_streams != families.len() {
        return Err(mismatch("group streams disagree with skeleton entries"));
    }
    timer.lap(7);

    // 8: final assembly
    let (_, lineterm) = chunk.get("lineterm.bin")?;
    let mut reader = Reader::new(lineterm);
    let lines = reader.varint()?;
    let final_lf = reader.byte()?;
    reader.finish("line terminator stream")?;
    let final_terminator = match final_lf {
        1 => Terminator::Lf,
        0 => Terminator::None,
        _ => return Err(Error::corrupt("bad terminator flag")),
    };
    if lines != entry.lines || final_terminator != entry.final_terminator {
        return Err(Error::inconsistent("line terminator stream disagrees with manifest"));
    }
    // Number slots resolve to buffer positions once per template.
    let pieces: Vec<Vec<Piece<'_>>> = templates
        .iter()
        .map(|t| {
            t.iter()
                .map(|seg| match seg {
                    TemplateSegment::Literal(l) => Piece::Literal(l),
                    TemplateSegment::Slot(SlotTag::String) => Piece::String,
                    TemplateSegment::Slot(SlotTag::Group(k)) => Piece::Family(*k),
                    TemplateSegment::Slot(SlotTag::Number(len)) => {
                        Piece::Number(number_index.get(len).copied().unwrap_or(usize::MAX))
                    }
                })
                .collect()
        })
        .collect();
    let mut strings_used = string_ids.iter();
    let exhausted = || Error::inconsistent("template asks for more tokens than were stored");
    for (i, &tid) in template_ids.iter().enumerate() {
        for piece in &pieces[tid as usize] {
            match *piece {
                Piece::Literal(l) => out.extend_from_slice(l),
                Piece::String => {
                    let id = strings_used.next().ok_or_else(exhausted)?;
                    out.extend_from_slice(strings[*id as usize]);
                }
                Piece::Family(k) => {
                    let token = families.get_mut(k).and_then(FamilyTokens::next).ok_or_else(exhausted)?;
                    out.extend_from_slice(token);
                }
                Piece::Number(n) => {
                    let buf = numbers.get_mut(n).ok_or_else(exhausted)?;
                    let end = buf.next + buf.length;
                    let digits = buf.digits.get(buf.next..end).ok_or_else(exhausted)?;
                    out.extend_from_slice(digits);
                    buf.next = end;
                }
            }
        }
        if i + 1 < template_ids.len() || final_terminator == Terminator::Lf {
            out.push(b'\n');
        }
    }
    let leftovers = strings_used.next().is_some()
        || families.iter().any(|f| !f.exhausted())
        || numbers.iter().any(|b| b.next != b.digits.len());
    if leftovers {
        return Err(Error::inconsistent("stored tokens left unused"));
    }
    timer.lap(8);
    Ok(())
}

fn decode_all(manifest: &ArchiveManifest, streams: &[EncodedStream], timer: Option<&mut Timer<'_>>) -> Result<Vec<u8>> {
    let mut slices = Vec::with_capacity(manifest.chunks.len());
    let mut at = 0;
    for chunk in &manifest.chunks {
        let n = chunk.streams.len();
        slices.push(streams.get(at..at + n).ok_or_else(|| mismatch("stream list too short"))?);
        at += n;
    }
    if at != streams.len() {
        return Err(mismatch("streams not described by the manifest"));
    }
    let capacity = usize::try_from(manifest.original_size).unwrap_or(0).min(1 << 30);
    let mut out = Vec::with_capacity(capacity);
    match timer {
        Some(timer) => {
            for (chunk, s) in manifest.chunks.iter().zip(slices) {
                decode_chunk(chunk, s, timer, &mut out)?;
            }
        }
        None => {
            let parts = manifest
                .chunks
                .par_iter()
                .zip(slices)
                .map(|(chunk, s)| {
                    let mut buf = Vec::new();
                    decode_chunk(chunk, s, &mut Timer::new(None), &mut buf)?;
                    Ok(buf)
                })
                .collect::<Result<Vec<_>>>()?;
            for p in parts {
                out.extend_from_slice(&p);
            }
        }
    }
    if out.len() as u64 != manifest.original_size {
        return Err(Error::inconsistent("restored size differs from the recorded size"));
    }
    Ok(out)
}

/// Rebuilds the original bytes from already unpacked streams.
pub fn decode(manifest: &ArchiveManifest, streams: &[EncodedStream]) -> Result<Vec<u8>> {
    decode_all(manifest, streams, None)
}

pub fn decompress(archive: &[u8]) -> Result<Vec<u8>> {
    let (_, inner) = backend_decompress(archive)?;
    let (manifest, streams) = read_container(&inner)?;
    decode(&manifest, &streams)
}

pub fn decompress_profile(archive: &[u8]) -> Result<(Vec<u8>, DecompressionProfile)> {
    let mut profile = DecompressionProfile::default();
    let start = Instant::now();
    let out = {
        let mut timer = Timer::new(Some(&mut profile));
        let (_, inner) = backend_decompress(archive)?;
        timer.lap(1);
        let (manifest, streams) = read_container(&inner)?;
        timer.lap(2);
        decode_all(&manifest, &streams, Some(&mut timer))?
    };
    profile.total = start.elapsed();
    Ok((out, profile))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{Backend, Config};
    use crate::packer;
    use crate::pipeline::{compress, encode};

    const SAMPLE: &[u8] = b"2015-07-29 17:41:41,536 - INFO  [main:QuorumPeerConfig@101] - Reading configuration from: /etc/zookeeper/conf/zoo.cfg\n\
2015-07-29 17:41:41,544 - WARN  [main:QuorumPeerConfig@334] - No server failure\n\
2015-07-29 19:04:12,394 - INFO  [QuorumCnxManager$Listener@493] - Received connection request /10.10.34.11:45307\n\
\n\
plain words only\r\n\
id=007 count 0042 total 99999999999999999999999 pipe|back\\slash <tag>\n\
\xff\xfe bytes 12\tx";

    #[test]
    fn roundtrip_sample() {
        for backend in Backend::ALL {
            let cfg = Config { backend, ..Config::default() };
            let archive = compress(SAMPLE, &cfg).unwrap();
            assert_eq!(decompress(&archive).unwrap(), SAMPLE);
        }
    }

    #[test]
    fn roundtrip_variants() {
        let base = Config::default();
        for cfg in [
            base.clone().without_processor(),
            base.clone().without_processor_and_encoder(),
            Config { disable_hybrid_encoder: true, ..base.clone() },
            Config { chunk_lines: 2, ..base.clone() },
        ] {
            let archive = compress(SAMPLE, &cfg).unwrap();
            assert_eq!(decompress(&archive).unwrap(), SAMPLE);
        }
    }

    #[test]
    fn empty_input() {
        let archive = compress(b"", &Config::default()).unwrap();
        let (manifest, _) = packer::unpack(&archive).unwrap();
        assert_eq!(manifest.chunk_count(), 0);
        assert!(decompress(&archive).unwrap().is_empty());
        for text in [&b"\n"[..], b"\n\n", b"x", b"x\n"] {
            assert_eq!(decompress(&compress(text, &Config::default()).unwrap()).unwrap(), text);
        }
    }

    #[test]
    fn profile_accounts_for_total() {
        let text = SAMPLE.repeat(200);
        let archive = compress(&text, &Config::default()).unwrap();
        let (out, profile) = decompress_profile(&archive).unwrap();
        assert_eq!(out, text);
        let sum = profile.step_sum().as_secs_f64();
        let total = profile.total.as_secs_f64();
        assert!((total - sum).abs() <= 0.05 * total + 1e-4, "{sum} vs {total}");
        assert_eq!(profile.csv_rows().len(), 8);
    }

    #[test]
    fn tampered_streams_fail() {
        let (manifest, streams) = encode(SAMPLE, &Config::default()).unwrap();
        let mut flat: Vec<EncodedStream> = streams.into_iter().flatten().collect();
        assert_eq!(decode(&manifest, &flat).unwrap(), SAMPLE);

        let ids = flat.iter().position(|s| s.name.ends_with("tpl_ids.bin")).unwrap();
        let original = flat[ids].payload.clone();
        flat[ids].payload.pop();
        assert!(decode(&manifest, &flat).is_err());
        flat[ids].payload = original;

        let mut short = manifest.clone();
        short.chunks[0].lines += 1;
        assert!(decode(&short, &flat).is_err());

        let mut dropped = manifest.clone();
        let pos = dropped.chunks[0].streams.iter().position(|s| s.name.ends_with("g0.bin")).unwrap();
        dropped.chunks[0].streams.remove(pos);
        let mut fewer = flat.clone();
        fewer.remove(pos);
        assert!(matches!(decode(&dropped, &fewer), Err(Error::CorruptArchive(_))));
    }
}
