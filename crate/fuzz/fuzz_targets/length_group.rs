#![no_main]

use libfuzzer_sys::fuzz_target;
use logfold::codec::{NumericColumnEncoding, NumericMode};
use logfold::encoder::{decode_length_group, LengthEncoding};

fuzz_target!(|data: &[u8]| {
    let Some((&selector, payload)) = data.split_first() else { return };
    let length = usize::from(selector % 24) + 1;
    let encoding = match selector >> 5 {
        0 => LengthEncoding::Dictionary,
        1 | 2 => LengthEncoding::Numeric(NumericColumnEncoding {
            mode: NumericMode::Plain,
            zigzag: false,
            fixed_width: Some(length as u8),
            base_value: None,
        }),
        _ => LengthEncoding::Numeric(NumericColumnEncoding {
            mode: NumericMode::Delta,
            zigzag: true,
            fixed_width: Some(length as u8),
            base_value: None,
        }),
    };
    if let Ok(bytes) = decode_length_group(payload, length, &encoding) {
        assert_eq!(bytes.len() % length, 0);
    }
});
