#![no_main]

use libfuzzer_sys::fuzz_target;
use logfold::codec::{elastic_bytes, elastic_decode};

fuzz_target!(|data: &[u8]| {
    let mut offset = 0;
    while let Ok((value, used)) = elastic_decode(data, offset) {
        assert!((1..=10).contains(&used));
        let canonical = elastic_bytes(value);
        assert!(canonical.len() <= used);
        assert_eq!(elastic_decode(&canonical, 0).unwrap(), (value, canonical.len()));
        offset += used;
    }
});
