//! JVM classfile decoding and bytecode-level type inference.

pub mod classfile;
pub mod descriptor;
pub mod hierarchy;
pub mod instr;
pub mod interp;
pub mod linemap;
pub mod types;

pub use classfile::{parse_classfile, parse_classfile_with, ClassFile, ClassFileError, MethodInfo, ParseOptions};
pub use hierarchy::{ClassHierarchy, ClassShape, NoHierarchy};
pub use interp::{analyze, infer_local_types, Analysis, InterpError};
pub use linemap::{map_statements_to_instructions, LineMapError, StatementRange};
pub use types::{Primitive, TypeDesc};
