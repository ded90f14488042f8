#![no_main]

use libfuzzer_sys::fuzz_target;
use logfold::packer::{read_container, unpack};

fuzz_target!(|data: &[u8]| {
    let _ = read_container(data);
    let _ = unpack(data);
});
