#![no_main]
use libfuzzer_sys::fuzz_target;
use testcomp_core::elements::{CodeElementStore, StoreArchive};

fuzz_target!(|data: &[u8]| {
    if let Ok(archive) = serde_json::from_slice::<StoreArchive>(data) {
        let _ = CodeElementStore::from_archive(archive);
    }
});
