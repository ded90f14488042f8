//! Replays the checked-in fuzz seed corpora through the decoder entry points.

use std::fs;
use std::path::PathBuf;

use logfold::codec::{
    decode_dictionary, decode_ids, elastic_bytes, elastic_decode, NumericColumnEncoding, NumericMode, Reader,
};
use logfold::encoder::{decode_length_group, parse_skeleton_entry, parse_template, LengthEncoding};
use logfold::manifest::ArchiveManifest;
use logfold::packer::read_container;
use logfold::{compress, decompress, default_config, Config};

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .filter(|p| p.file_name().unwrap().to_string_lossy().starts_with("seed-"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap()))
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn archive_seeds_decompress() {
    for (name, data) in seeds("decompress") {
        let restored = decompress(&data).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(!restored.is_empty(), "{name}");
    }
}

#[test]
fn container_seeds_parse() {
    for (name, data) in seeds("container_read") {
        let (manifest, streams) = read_container(&data).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(manifest.stream_names().count(), streams.len(), "{name}");
    }
}

#[test]
fn manifest_seeds_reserialize_identically() {
    for (name, data) in seeds("manifest_parse") {
        let manifest = ArchiveManifest::from_bytes(&data).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(manifest.to_bytes(), data, "{name}");
    }
}

#[test]
fn template_seeds_parse() {
    for (name, data) in seeds("template_parse") {
        if name.contains("-skel") {
            parse_skeleton_entry(&data).unwrap_or_else(|e| panic!("{name}: {e}"));
        } else {
            parse_template(&data).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }
}

#[test]
fn elastic_seeds_match_canonical_form() {
    for (name, data) in seeds("elastic_decode") {
        match elastic_decode(&data, 0) {
            Ok((v, used)) => assert_eq!(elastic_bytes(v), data[..used], "{name}"),
            Err(_) => assert_eq!(name, "seed-overlong"),
        }
    }
}

#[test]
fn roundtrip_seeds_round_trip() {
    let cfg = Config { chunk_lines: 16, ..default_config() };
    for (name, data) in seeds("roundtrip") {
        let archive = compress(&data, &cfg).unwrap();
        assert_eq!(decompress(&archive).unwrap(), data, "{name}");
    }
}

#[test]
fn stream_seeds_decode() {
    for (name, data) in seeds("numeric_stream") {
        let body = &data[1..];
        if name.ends_with("templates.dict") {
            let entries = decode_dictionary(&mut Reader::new(body)).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(!entries.is_empty(), "{name}");
        } else {
            let ids = decode_ids(&mut Reader::new(body), usize::MAX).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(!ids.is_empty(), "{name}");
        }
    }
    let enc = NumericColumnEncoding { mode: NumericMode::Plain, zigzag: false, fixed_width: Some(9), base_value: None };
    for (_, data) in seeds("length_group") {
        let _ = decode_length_group(&data[1..], 9, &LengthEncoding::Numeric(enc));
        let _ = decode_length_group(&data[1..], 9, &LengthEncoding::Dictionary);
    }
    assert!(!seeds("family_stream").is_empty());
}
