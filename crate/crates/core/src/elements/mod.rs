//! Collection of code elements, test detection, method-under-test location,
//! filtering and corpus partitioning.

pub mod archive;
pub mod collect;
pub mod corpus;
pub mod detect;
pub mod filter;
pub mod locate;
pub mod split;
pub mod store;

pub use archive::StoreArchive;
pub use collect::{collect_project, default_classpath, read_project};
pub use corpus::{read_jsonl, write_jsonl, RecordError};
pub use detect::{detect_tests, JUnitVersion};
pub use filter::{filter_corpus, CompletionTask, Disposition, FilterConfig, FilterReport, RejectReason};
pub use locate::{locate_mut, LocateError};
pub use split::{split_corpus, Partition, SplitCorpus, SplitError};
pub use store::{ClassEntry, ClassKind, CodeElementStore, CollectError, FieldEntry, FieldId, MethodEntry, MethodId};
