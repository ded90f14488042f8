#![no_main]

use libfuzzer_sys::fuzz_target;
use logfold::encoder::{parse_length_tag, parse_skeleton_entry, parse_template};

fuzz_target!(|data: &[u8]| {
    let _ = parse_template(data);
    let _ = parse_skeleton_entry(data);
    let _ = parse_length_tag(data);
});
