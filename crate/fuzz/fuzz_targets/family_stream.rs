#![no_main]

use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;
use logfold::encoder::{decode_family_stream, FamilyPlan};
use logfold::manifest::StreamDescriptor;
use logfold::packer::unpack;
use logfold::synth::{self, System};
use logfold::{compress, default_config};

/// Real family plans taken from archives of the synthetic samples.
fn plans() -> &'static [FamilyPlan] {
    static PLANS: OnceLock<Vec<FamilyPlan>> = OnceLock::new();
    PLANS.get_or_init(|| {
        let mut plans = Vec::new();
        for system in System::ALL {
            let archive = compress(&synth::generate(system, 300, 1), &default_config()).unwrap();
            let (manifest, _) = unpack(&archive).unwrap();
            for stream in manifest.chunks.iter().flat_map(|c| &c.streams) {
                if let StreamDescriptor::Group { family, .. } = &stream.descriptor {
                    plans.push(family.clone());
                }
            }
        }
        plans
    })
}

fuzz_target!(|data: &[u8]| {
    let Some((&selector, payload)) = data.split_first() else { return };
    let plans = plans();
    let plan = &plans[usize::from(selector) % plans.len()];
    let _ = decode_family_stream(payload, plan);
});
