#![allow(dead_code)]

pub mod oracles;
pub mod scenarios;

use std::path::PathBuf;

use testcomp_core::elements::{collect_project, default_classpath, CodeElementStore};
use testcomp_core::jclass::hierarchy::is_assignable;
use testcomp_core::jclass::TypeDesc;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures/projects")
        .join(name)
}

pub fn store(name: &str) -> CodeElementStore {
    let root = fixture(name);
    collect_project(&root, &default_classpath(&root)).expect("fixture collects")
}

pub fn disassembly(name: &str) -> serde_json::Value {
    let text = std::fs::read_to_string(fixture(name).join("disassembly.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

pub fn stubs_classpath() -> Vec<PathBuf> {
    vec![PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/stubs/jupiter-api/classes")]
}

/// Toolchain from the environment, else the conventional install location.
pub fn toolchain() -> testcomp_core::exec::Toolchain {
    use testcomp_core::exec::Toolchain;
    Toolchain::discover(None)
        .or_else(|_| Toolchain::at(std::path::Path::new("/opt/jvmtool")))
        .expect("a Java toolchain: set TESTCOMP_TOOLCHAIN")
}

#[derive(Debug, serde::Deserialize)]
pub struct Classes {
    #[serde(rename = "non-test")]
    pub non_test: Vec<String>,
    pub test: Vec<String>,
}

#[derive(Debug, serde::Deserialize)]
pub struct SemanticsExpectation {
    pub test: String,
    pub stmt_index: usize,
    pub types_local: Option<Vec<(String, String)>>,
    pub types_absent: Option<Vec<String>>,
    pub fields_notset: Option<Vec<String>>,
    #[serde(default)]
    pub fields_notset_excludes: Vec<String>,
    pub setup_teardown_contains: Option<String>,
    pub last_called_method_starts: Option<String>,
}

#[derive(Debug, serde::Deserialize)]
pub struct ExecExpectation {
    pub test: String,
    pub stmt_index: usize,
    pub candidate: String,
    pub status: testcomp_core::exec::ExecStatus,
}

#[derive(Debug, serde::Deserialize)]
pub struct Manifest {
    pub project: String,
    pub classes: Classes,
    pub tests: std::collections::BTreeMap<String, String>,
    #[serde(rename = "mut")]
    pub mut_ids: std::collections::BTreeMap<String, String>,
    pub semantics: Vec<SemanticsExpectation>,
    pub exec: Vec<ExecExpectation>,
}

pub const FIXTURES: [&str; 8] = [
    "gmoperation",
    "widgets",
    "mathutil",
    "deepchain",
    "typezoo",
    "countertrain",
    "countereval",
    "empty",
];

pub fn manifest(name: &str) -> Manifest {
    let text = std::fs::read_to_string(fixture(name).join("manifest.json")).unwrap();
    serde_json::from_str(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn words(s: &str) -> Vec<String> {
    s.split_whitespace().map(str::to_string).collect()
}

pub const DISASSEMBLED: [&str; 7] = [
    "countereval",
    "countertrain",
    "deepchain",
    "gmoperation",
    "mathutil",
    "typezoo",
    "widgets",
];

pub fn u(v: &serde_json::Value) -> u64 {
    v.as_u64().unwrap()
}

fn agrees(store: &CodeElementStore, inferred: &TypeDesc, declared: &TypeDesc) -> bool {
    if inferred == declared {
        return true;
    }
    match (inferred, declared) {
        (TypeDesc::Uninitialized { class, site: None }, TypeDesc::Object { name }) => class == name,
        (TypeDesc::Primitive { prim: a }, TypeDesc::Primitive { prim: b }) => {
            a.is_int_category() && b.is_int_category()
        }
        _ => declared.is_reference() && is_assignable(store, inferred, declared),
    }
}

#[derive(Debug, Default)]
pub struct InterpreterOracle {
    pub methods: usize,
    pub boundaries: usize,
    pub slots: usize,
    pub failures: Vec<String>,
}

/// Compares inferred local types at every line-table start against the
/// local-variable tables of the disassembled fixtures.
pub fn interpreter_oracle() -> InterpreterOracle {
    use testcomp_core::jclass::analyze;
    use testcomp_core::jclass::descriptor::parse_field_descriptor;
    let mut r = InterpreterOracle::default();
    for p in DISASSEMBLED {
        let store = store(p);
        let dis = disassembly(p);
        for c in dis["classes"].as_array().unwrap() {
            let cf = store.classfile(c["name"].as_str().unwrap()).unwrap();
            for d in c["methods"].as_array().unwrap() {
                let (Some(lvt), Some(lines)) = (d["local_variables"].as_array(), d["line_numbers"].as_array()) else {
                    continue;
                };
                let m = cf
                    .method(d["name"].as_str().unwrap(), d["descriptor"].as_str().unwrap())
                    .unwrap();
                let analysis = match analyze(m, cf, &store) {
                    Ok(a) => a,
                    Err(e) => {
                        r.failures.push(format!("{}.{}: {e}", cf.binary_name, m.name));
                        continue;
                    }
                };
                r.methods += 1;
                let mut pcs: Vec<u64> = lines.iter().map(|l| u(&l[0])).collect();
                pcs.sort();
                pcs.dedup();
                for pc in pcs {
                    r.boundaries += 1;
                    let inferred = analysis.locals_at(pc as u32, &store).unwrap();
                    for v in lvt {
                        let (start, len) = (u(&v["start"]), u(&v["length"]));
                        if pc < start || pc >= start + len {
                            continue;
                        }
                        r.slots += 1;
                        let declared = parse_field_descriptor(v["descriptor"].as_str().unwrap()).unwrap();
                        let slot = u(&v["slot"]) as u16;
                        match inferred.get(&slot) {
                            Some(t) if agrees(&store, t, &declared) => {}
                            other => r.failures.push(format!(
                                "{}.{}{} pc {pc} slot {slot} ({}): declared {declared:?}, inferred {other:?}",
                                cf.binary_name, m.name, m.descriptor, v["name"]
                            )),
                        }
                    }
                }
            }
        }
    }
    r
}
