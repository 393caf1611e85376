#![no_main]

use enumfpt::instances::canonical::{decode_edges, edge_set};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Some(edges) = decode_edges(text) {
        let canon = edge_set(edges.iter().copied());
        let again = decode_edges(canon.as_str()).expect("canonical edge sets decode");
        assert_eq!(edge_set(again), canon);
    }
});
