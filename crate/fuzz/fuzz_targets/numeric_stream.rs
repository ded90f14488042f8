#![no_main]

use libfuzzer_sys::fuzz_target;
use logfold::codec::{decode_dictionary, decode_ids, decode_integers, NumericColumnEncoding, NumericMode, Reader};

fuzz_target!(|data: &[u8]| {
    let Some((&selector, body)) = data.split_first() else { return };
    let mode = match selector % 3 {
        0 => NumericMode::Plain,
        1 => NumericMode::Delta,
        _ => NumericMode::Combined,
    };
    let enc = NumericColumnEncoding {
        mode,
        zigzag: selector & 4 != 0,
        fixed_width: (selector & 8 != 0).then_some(selector >> 4),
        base_value: None,
    };
    let _ = decode_integers(&mut Reader::new(body), &enc);
    let _ = decode_dictionary(&mut Reader::new(body));
    let _ = decode_ids(&mut Reader::new(body), usize::from(selector));
});
