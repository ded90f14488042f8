//! Whole-pipeline losslessness over arbitrary bytes, log-shaped text and
//! every configuration axis, plus rejection of damaged archives.

use logfold::packer::unpack;
use logfold::synth::{self, System};
use logfold::{compress, decompress, Backend, Config, TokenStrategy};
use proptest::prelude::*;

fn config() -> impl Strategy<Value = Config> {
    (
        prop::sample::select(Backend::ALL.to_vec()),
        prop::sample::select(TokenStrategy::ALL.to_vec()),
        1usize..40,
        any::<bool>(),
        any::<bool>(),
        1usize..6,
    )
        .prop_map(|(backend, token_strategy, chunk_lines, no_proc, no_enc, zeta_uv)| Config {
            backend,
            backend_level: Some(1),
            token_strategy,
            chunk_lines,
            disable_processor: no_proc,
            disable_hybrid_encoder: no_enc,
            zeta_uv,
            ..Config::default()
        })
}

/// Lines built from log-like fragments: numbers with and without leading
/// zeros, dates, addresses, paths, brackets and odd whitespace.
fn log_text() -> impl Strategy<Value = Vec<u8>> {
    let fragment = prop_oneof![
        "[0-9]{1,25}",
        "0[0-9]{1,4}",
        "20[0-9]{2}-[01][0-9]-[0-3][0-9]",
        "[0-2][0-9]:[0-5][0-9]:[0-5][0-9],[0-9]{3}",
        "[0-9]{1,3}\\.[0-9]{1,3}\\.[0-9]{1,3}\\.[0-9]{1,3}:[0-9]{1,5}",
        "/[a-z]{1,6}(/[a-z0-9_.]{1,6}){0,3}",
        "[a-z]{1,5}\\.[A-Z][a-z]{1,5}\\.[a-z]{1,4}",
        "[A-Za-z]{1,8}",
        "[a-z]{1,3}[0-9]{1,4}[a-z]{0,2}",
        "[\\[\\]()<>|\\\\*=:,;-]{1,3}",
        "[ \t]{1,3}",
        "[^\n]{1,4}",
    ];
    let line = prop::collection::vec(fragment, 0..10).prop_map(|f| f.join(" "));
    (prop::collection::vec(line, 0..30), prop_oneof!["\n", "\r\n"], any::<bool>()).prop_map(|(lines, eol, trailing)| {
        let mut text = lines.join(&eol);
        if trailing && !text.is_empty() {
            text.push_str(&eol);
        }
        text.into_bytes()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn arbitrary_bytes_roundtrip(data in prop::collection::vec(any::<u8>(), 0..600), cfg in config()) {
        let archive = compress(&data, &cfg).unwrap();
        prop_assert_eq!(decompress(&archive).unwrap(), data);
    }

    #[test]
    fn log_text_roundtrip(data in log_text(), cfg in config()) {
        let archive = compress(&data, &cfg).unwrap();
        prop_assert_eq!(decompress(&archive).unwrap(), data);
    }

    #[test]
    fn damaged_archives_never_panic(data in log_text(), flips in prop::collection::vec((any::<prop::sample::Index>(), 1u8..=255), 1..4)) {
        let cfg = Config { backend: Backend::Gzip, ..Config::default() };
        let mut archive = compress(&data, &cfg).unwrap();
        for (at, x) in flips {
            let i = at.index(archive.len());
            archive[i] ^= x;
        }
        // Either an error or some output; never a panic.
        let _ = decompress(&archive);
    }
}

#[test]
fn synthetic_systems_roundtrip_under_each_backend() {
    for system in System::ALL {
        let data = synth::generate(system, 300, 11);
        for backend in Backend::ALL {
            let cfg = Config { backend, ..Config::default() };
            let archive = compress(&data, &cfg).unwrap();
            assert_eq!(decompress(&archive).unwrap(), data, "{} / {}", system.name(), backend.name());
        }
    }
}

#[test]
fn chunk_boundaries_are_invisible() {
    let data = synth::generate(System::Hdfs, 500, 3);
    for chunk_lines in [1, 7, 64, 499, 500, 501] {
        let cfg = Config { chunk_lines, ..Config::default() };
        assert_eq!(decompress(&compress(&data, &cfg).unwrap()).unwrap(), data);
    }
}

#[test]
fn truncated_archives_are_rejected() {
    let data = synth::generate(System::Zookeeper, 200, 5);
    let archive = compress(&data, &Config::default()).unwrap();
    for cut in [0, 1, 5, archive.len() / 2, archive.len() - 1] {
        assert!(decompress(&archive[..cut]).is_err(), "cut at {cut}");
    }
    assert!(unpack(b"not an archive").is_err());
}
