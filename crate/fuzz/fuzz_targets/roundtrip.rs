#![no_main]

use libfuzzer_sys::fuzz_target;
use logfold::{compress, decompress, default_config, Config};

fuzz_target!(|data: &[u8]| {
    let cfg = Config { chunk_lines: 16, ..default_config() };
    let archive = compress(data, &cfg).expect("compress accepts any bytes");
    assert_eq!(decompress(&archive).expect("own archive decodes"), data);
});
