//! Per-chunk encoding and whole-file compression.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::analyzer::{analyze_chunk, DynamicRuleSet};
use crate::codec::{elastic_encode, encode_dictionary, encode_ids};
use crate::config::Config;
use crate::encoder::{
    encode_family, encode_unstructured_numbers, render_skeleton_entry, render_template, SlotTag, TemplatePiece,
};
use crate::error::Result;
use crate::manifest::{ArchiveManifest, ChunkEntry, StreamDescriptor, StreamEntry, FORMAT_VERSION};
use crate::model::{
    chunk_input, EncodedStream, LogChunk, StreamKind, TemplateItem, Terminator, TokenClass, TokenCoord,
};
use crate::packer;
use crate::processor::{group_by_skeleton, process};

/// Encoded streams of one chunk with their manifest entry.
#[derive(Debug, Clone)]
pub struct EncodedChunk {
    pub entry: ChunkEntry,
    pub streams: Vec<EncodedStream>,
}

impl EncodedChunk {
    fn push(&mut self, file: &str, kind: StreamKind, descriptor: StreamDescriptor, payload: Vec<u8>) {
        let name = format!("c{}/{file}", self.entry.index);
        self.entry.streams.push(StreamEntry { name: name.clone(), kind, size: payload.len() as u64, descriptor });
        self.streams.push(EncodedStream { name, kind, payload });
    }
}

/// Assigns ids in order of first appearance.
struct Interner<'a> {
    ids: HashMap<&'a [u8], u32>,
    entries: Vec<&'a [u8]>,
}

impl<'a> Interner<'a> {
    fn new() -> Self {
        Interner { ids: HashMap::new(), entries: Vec::new() }
    }

    fn id(&mut self, value: &'a [u8]) -> u32 {
        *self.ids.entry(value).or_insert_with(|| {
            self.entries.push(value);
            self.entries.len() as u32 - 1
        })
    }
}

pub fn encode_chunk(chunk: &LogChunk, rules: &DynamicRuleSet, cfg: &Config) -> Result<EncodedChunk> {
    let lines = analyze_chunk(chunk, rules);

    let mut structured = Vec::new();
    let mut numbers = Vec::new();
    for (li, line) in lines.iter().enumerate() {
        for (ti, (class, token)) in line.dynamic_tokens.iter().enumerate() {
            let coord = TokenCoord { line: li as u32, token: ti as u32 };
            match class {
                _ if cfg.disable_hybrid_encoder => {}
                TokenClass::StructuredDynamic => structured.push((coord, token.clone())),
                TokenClass::UnstructuredNumeric => numbers.push((coord, token.as_slice())),
                _ => {}
            }
        }
    }

    // Each skeleton family is refined into patterns ordered by first
    // occurrence; selectors record which pattern each occurrence uses.
    let families: Vec<_> = group_by_skeleton(&structured)?
        .into_par_iter()
        .map(|g| {
            let mut patterns = process(vec![g], cfg);
            patterns.sort_by_key(|p| p.first_coord());
            patterns
        })
        .collect();
    drop(structured);
    let mut family_of: HashMap<TokenCoord, usize> = HashMap::new();
    let mut selectors: Vec<Vec<u64>> = Vec::with_capacity(families.len());
    for (k, patterns) in families.iter().enumerate() {
        let mut occurrences = Vec::new();
        for (j, p) in patterns.iter().enumerate() {
            for &coord in &p.matrix.row_ids {
                family_of.insert(coord, k);
                occurrences.push((coord, j as u64));
            }
        }
        occurrences.sort_unstable();
        selectors.push(occurrences.into_iter().map(|(_, j)| j).collect());
    }
    let encoded_groups = families
        .par_iter()
        .zip(&selectors)
        .map(|(patterns, sel)| encode_family(patterns, sel, cfg))
        .collect::<Result<Vec<_>>>()?;
    drop(selectors);
    let (length_streams, _) = encode_unstructured_numbers(&numbers)?;

    let mut strings = Interner::new();
    let mut string_ids = Vec::new();
    let mut templates = Interner::new();
    let mut template_ids = Vec::with_capacity(lines.len());
    let mut rendered: Vec<Vec<u8>> = Vec::new();
    let mut tags = Vec::new();
    for (li, line) in lines.iter().enumerate() {
        tags.clear();
        for (ti, (class, token)) in line.dynamic_tokens.iter().enumerate() {
            let coord = TokenCoord { line: li as u32, token: ti as u32 };
            let tag = if let Some(&k) = family_of.get(&coord) {
                SlotTag::Group(k)
            } else if *class == TokenClass::UnstructuredNumeric && !cfg.disable_hybrid_encoder {
                SlotTag::Number(token.len())
            } else {
                string_ids.push(strings.id(token));
                SlotTag::String
            };
            tags.push(tag);
        }
        let mut slots = tags.iter();
        let pieces = line.template.iter().map(|item| match item {
            TemplateItem::Static(t) => TemplatePiece::Static(t),
            TemplateItem::Slot(_) => TemplatePiece::Slot(slots.next().expect("slot per dynamic token")),
        });
        let mut text = Vec::new();
        render_template(&line.whitespace_runs, pieces, &mut text);
        rendered.push(text);
    }
    for text in &rendered {
        template_ids.push(templates.id(text));
    }

    let mut out = EncodedChunk {
        entry: ChunkEntry {
            index: chunk.index as u32,
            lines: chunk.len() as u64,
            final_terminator: chunk.final_terminator(),
            streams: Vec::new(),
        },
        streams: Vec::new(),
    };

    let mut payload = Vec::new();
    encode_dictionary(templates.entries.iter().copied(), &mut payload);
    let entries = templates.entries.len() as u32;
    out.push("templates.dict", StreamKind::TemplateDictionary, StreamDescriptor::Templates { entries }, payload);

    let skeleton_entries: Vec<Vec<u8>> = families
        .iter()
        .enumerate()
        .flat_map(|(k, patterns)| patterns.iter().map(move |p| render_skeleton_entry(k, p)))
        .collect();
    let mut payload = Vec::new();
    let token_entries: Vec<&[u8]> =
        strings.entries.iter().copied().chain(skeleton_entries.iter().map(Vec::as_slice)).collect();
    encode_dictionary(token_entries, &mut payload);
    let descriptor =
        StreamDescriptor::Tokens { strings: strings.entries.len() as u32, patterns: skeleton_entries.len() as u32 };
    out.push("tokens.dict", StreamKind::TokenDictionary, descriptor, payload);

    let values: Vec<&[u8]> = encoded_groups.iter().flat_map(|g| g.string_values.iter().map(Vec::as_slice)).collect();
    let mut payload = Vec::new();
    encode_dictionary(values.iter().copied(), &mut payload);
    let entries = values.len() as u32;
    out.push("strvals.dict", StreamKind::StringValueDictionary, StreamDescriptor::StringValues { entries }, payload);

    let mut payload = Vec::new();
    encode_ids(&template_ids, &mut payload);
    let count = template_ids.len() as u64;
    out.push("tpl_ids.bin", StreamKind::IdStream, StreamDescriptor::TemplateIds { count }, payload);

    let mut payload = Vec::new();
    encode_ids(&string_ids, &mut payload);
    let count = string_ids.len() as u64;
    out.push("str_ids.bin", StreamKind::IdStream, StreamDescriptor::StringIds { count }, payload);

    for (k, g) in encoded_groups.into_iter().enumerate() {
        let descriptor = StreamDescriptor::Group { ordinal: k as u32, family: g.plan };
        out.push(&format!("g{k}.bin"), StreamKind::NumericStream, descriptor, g.payload);
    }
    for s in length_streams {
        let descriptor = StreamDescriptor::LengthGroup { length: s.group.length as u32, encoding: s.encoding };
        out.push(&format!("len_{}.bin", s.group.tag), StreamKind::NumericStream, descriptor, s.payload);
    }

    let mut payload = Vec::new();
    elastic_encode(chunk.len() as u64, &mut payload);
    payload.push((chunk.final_terminator() == Terminator::Lf) as u8);
    let lines = chunk.len() as u64;
    out.push("lineterm.bin", StreamKind::Metadata, StreamDescriptor::LineTerminators { lines }, payload);
    Ok(out)
}

/// Chunks, encodes and describes `input` without the container layers.
pub fn encode(input: &[u8], cfg: &Config) -> Result<(ArchiveManifest, Vec<Vec<EncodedStream>>)> {
    cfg.validate()?;
    let rules = DynamicRuleSet::new(cfg.token_strategy);
    let chunks = chunk_input(input, cfg);
    let encoded = chunks.par_iter().map(|c| encode_chunk(c, &rules, cfg)).collect::<Result<Vec<_>>>()?;
    let mut entries = Vec::with_capacity(encoded.len());
    let mut streams = Vec::with_capacity(encoded.len());
    for c in encoded {
        entries.push(c.entry);
        streams.push(c.streams);
    }
    let manifest = ArchiveManifest {
        format_version: FORMAT_VERSION,
        config: cfg.clone(),
        original_size: input.len() as u64,
        chunks: entries,
    };
    Ok((manifest, streams))
}

pub fn compress(input: &[u8], cfg: &Config) -> Result<Vec<u8>> {
    let (manifest, streams) = encode(input, cfg)?;
    packer::pack(&streams, &manifest, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{decode_dictionary, decode_ids, Reader};

    fn chunk_of(text: &[u8]) -> EncodedChunk {
        let cfg = Config::default();
        let chunk = chunk_input(text, &cfg).remove(0);
        encode_chunk(&chunk, &DynamicRuleSet::new(cfg.token_strategy), &cfg).unwrap()
    }

    fn payload<'a>(c: &'a EncodedChunk, file: &str) -> &'a [u8] {
        let name = format!("c0/{file}");
        &c.streams.iter().find(|s| s.name == name).unwrap().payload
    }

    #[test]
    fn identical_lines_share_a_template() {
        let c = chunk_of(b"service started\nservice started\n");
        let templates = decode_dictionary(&mut Reader::new(payload(&c, "templates.dict"))).unwrap();
        assert_eq!(templates, vec![b"service started".as_slice()]);
        let ids = decode_ids(&mut Reader::new(payload(&c, "tpl_ids.bin")), 1).unwrap();
        assert_eq!(ids, vec![0, 0]);
    }

    #[test]
    fn member_names() {
        let c = chunk_of(b"2015-07-29 took 35 ms for blk42x\n");
        let names: Vec<&str> = c.streams.iter().map(|s| s.name.as_str()).collect();
        assert_eq!(
            names,
            [
                "c0/templates.dict",
                "c0/tokens.dict",
                "c0/strvals.dict",
                "c0/tpl_ids.bin",
                "c0/str_ids.bin",
                "c0/g0.bin",
                "c0/len_b.bin",
                "c0/lineterm.bin"
            ]
        );
        let templates = decode_dictionary(&mut Reader::new(payload(&c, "templates.dict"))).unwrap();
        assert_eq!(templates, vec![b"|g0| took <b> ms for <*>".as_slice()]);
        let tokens = decode_dictionary(&mut Reader::new(payload(&c, "tokens.dict"))).unwrap();
        assert_eq!(tokens, vec![b"blk42x".as_slice(), b"|g0|2015-07-29".as_slice()]);
    }

    #[test]
    fn distinct_templates_are_counted() {
        let mut text = Vec::new();
        let words = ["alpha", "beta", "gamma", "delta"];
        let mut expected = std::collections::HashSet::new();
        for i in 0..1000u32 {
            let a = words[(i * 7 % 4) as usize];
            let b = words[(i * 13 % 3) as usize];
            expected.insert(format!("{a} <*> {b}"));
            text.extend_from_slice(format!("{a} x{} {b}\n", i % 17).as_bytes());
        }
        let c = chunk_of(&text);
        let templates = decode_dictionary(&mut Reader::new(payload(&c, "templates.dict"))).unwrap();
        assert_eq!(templates.len(), expected.len());
    }

    #[test]
    fn deterministic_archives() {
        let text = b"2015-07-29 17:41:41,536 - INFO [main:QuorumPeerConfig@334] - Reading\n".repeat(20);
        let cfg = Config::default();
        assert_eq!(compress(&text, &cfg).unwrap(), compress(&text, &cfg).unwrap());
    }
}
