#![no_main]

use libfuzzer_sys::fuzz_target;
use logfold::manifest::ArchiveManifest;

fuzz_target!(|data: &[u8]| {
    if let Ok(manifest) = ArchiveManifest::from_bytes(data) {
        let reparsed = ArchiveManifest::from_bytes(&manifest.to_bytes()).expect("serialized manifest parses");
        assert_eq!(reparsed, manifest);
    }
});
