#![no_main]

use enumfpt::instances::{parse_instance, write_instance};
use enumfpt::ProblemKind;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(instance) = parse_instance(data, ProblemKind::Ilp) {
        let text = write_instance(&instance);
        let again = parse_instance(text.as_bytes(), ProblemKind::Ilp).expect("written instance parses");
        assert_eq!(again, instance);
    }
});
