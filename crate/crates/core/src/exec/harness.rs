//! Ad-hoc test classes holding one candidate statement.

use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::ExecError;
use crate::elements::detect::{JUNIT4_TEST, JUNIT5_TEST, SETUP_ANNOTATIONS, TEARDOWN_ANNOTATIONS};
use crate::elements::{ClassKind, CodeElementStore, CompletionTask, JUnitVersion, MethodEntry};
use crate::jsource::{MemberKind, STR};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryMode {
    /// JUnit 4 command-line runner, then the ad-hoc main if that fails.
    Junit4ThenMain,
    MainOnly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarnessSpec {
    /// Internal name of the generated class.
    pub class_name: String,
    pub source: String,
    pub classpath: Vec<PathBuf>,
    pub entry: EntryMode,
    pub timeout: Duration,
}

impl HarnessSpec {
    /// Path of the source file relative to a source root.
    pub fn source_path(&self) -> PathBuf {
        let top = self.class_name.split('$').next().unwrap_or(&self.class_name);
        PathBuf::from(format!("{top}.java"))
    }

    /// Dotted name for the launcher.
    pub fn launch_name(&self) -> String {
        self.class_name.replace('/', ".")
    }
}

/// Java text of masked token texts; masked strings become `""`.
pub fn tokens_to_java(tokens: &[String]) -> String {
    tokens
        .iter()
        .map(|t| if t == STR { "\"\"" } else { t.as_str() })
        .collect::<Vec<_>>()
        .join(" ")
}

fn lifecycle<'a>(store: &'a CodeElementStore, class: &str, names: &[&str]) -> Vec<&'a MethodEntry> {
    let mut out: Vec<&MethodEntry> = store
        .methods_of(class)
        .filter(|m| m.source.is_some() && names.iter().any(|a| m.has_annotation(a)))
        .collect();
    out.sort_by_key(|m| (!m.is_static(), m.source));
    out
}

fn call(m: &MethodEntry, simple: &str) -> String {
    if m.is_static() {
        format!("        {simple}.{}();\n", m.name)
    } else {
        format!("        t.{}();\n", m.name)
    }
}

/// Test class source with its tests replaced by the prior statements plus
/// `candidate`, and an added main running setup, the test and teardown.
pub fn synthesize_harness(
    task: &CompletionTask,
    candidate: &[String],
    store: &CodeElementStore,
    classpath: &[PathBuf],
    timeout: Duration,
) -> Result<HarnessSpec, ExecError> {
    let missing = || ExecError::MissingSource(task.test_class.clone());
    let (file, decl) = store.class_source(&task.test_class).ok_or_else(missing)?;
    let test = store.method(&task.test_id).ok_or_else(missing)?;
    let text = &file.text;
    let simple = decl.name.as_str();

    let mut body = String::new();
    for member in &decl.members {
        if let MemberKind::Method(i) = member.kind {
            let m = &decl.methods[i];
            let entry = store.methods_of(&task.test_class).find(|e| e.source == Some(i));
            if entry.is_some_and(|e| e.has_annotation(JUNIT4_TEST) || e.has_annotation(JUNIT5_TEST)) {
                continue;
            }
            if m.name == "main" && m.is_static() {
                continue;
            }
        }
        body.push_str("\n    ");
        body.push_str(&text[member.span.0..member.span.1]);
        body.push('\n');
    }

    body.push_str("\n    ");
    body.push_str(&tokens_to_java(&task.sign));
    body.push_str(" {\n");
    for s in task.prior() {
        body.push_str("        ");
        body.push_str(&tokens_to_java(s));
        body.push('\n');
    }
    body.push_str("        ");
    body.push_str(&tokens_to_java(candidate));
    body.push_str("\n    }\n");

    body.push_str("\n    public static void main(String[] args) throws Throwable {\n");
    body.push_str(&format!("        {simple} t = new {simple}();\n"));
    let setup = lifecycle(store, &task.test_class, SETUP_ANNOTATIONS);
    let teardown = lifecycle(store, &task.test_class, TEARDOWN_ANNOTATIONS);
    for m in &setup {
        body.push_str(&call(m, simple));
    }
    body.push_str(&format!("        t.{}();\n", test.name));
    for m in teardown
        .iter()
        .filter(|m| !m.is_static())
        .chain(teardown.iter().filter(|m| m.is_static()))
    {
        body.push_str(&call(m, simple));
    }
    body.push_str("        System.exit(0);\n    }\n");

    let close = decl.span.1.saturating_sub(1);
    let source = format!("{}{}{}", &text[..=decl.body_open], body, &text[close..]);
    Ok(HarnessSpec {
        class_name: task.test_class.clone(),
        source,
        classpath: classpath.to_vec(),
        entry: match task.junit {
            JUnitVersion::Junit4 => EntryMode::Junit4ThenMain,
            JUnitVersion::Junit5 => EntryMode::MainOnly,
        },
        timeout,
    })
}

/// Compiled project classes written under a temporary directory, shared by
/// every harness of one project.
#[derive(Debug)]
pub struct ProjectRuntime {
    dir: tempfile::TempDir,
    classpath: Vec<PathBuf>,
}

impl ProjectRuntime {
    /// Writes the store's class files and appends `dependencies`; the
    /// dependency jars and directories recorded in the store are used when
    /// `dependencies` is empty.
    pub fn prepare(store: &CodeElementStore, dependencies: &[PathBuf]) -> Result<ProjectRuntime, ExecError> {
        let dir = tempfile::Builder::new().prefix("testcomp-cp").tempdir()?;
        let classes = dir.path().join("classes");
        for c in store.classes() {
            if c.kind == ClassKind::Dependency {
                continue;
            }
            let Some(path) = &c.classfile_path else { continue };
            let Some(archived) = store.archive().classfiles.iter().find(|a| &a.path == path) else {
                continue;
            };
            let out = classes.join(format!("{}.class", c.name));
            if let Some(parent) = out.parent() {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(out, &archived.bytes)?;
        }
        let mut classpath = vec![classes];
        if dependencies.is_empty() {
            let mut origins: Vec<&str> = store.archive().dependencies.iter().map(|d| d.origin.as_str()).collect();
            origins.sort();
            origins.dedup();
            classpath.extend(origins.into_iter().map(PathBuf::from).filter(|p| p.exists()));
        } else {
            classpath.extend(dependencies.iter().cloned());
        }
        Ok(ProjectRuntime { dir, classpath })
    }

    pub fn classpath(&self) -> &[PathBuf] {
        &self.classpath
    }

    pub fn dir(&self) -> &Path {
        self.dir.path()
    }
}
