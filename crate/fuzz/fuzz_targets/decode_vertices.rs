#![no_main]

use enumfpt::instances::canonical::{decode_vertices, path, vertex_set};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Some(ids) = decode_vertices(text) {
        let set = vertex_set(ids.iter().copied());
        assert!(decode_vertices(set.as_str()).is_some());
        let p = path(&ids);
        assert_eq!(decode_vertices(p.as_str()).map(|q| path(&q)), Some(p));
    }
});
