//! Locating a Java compiler and runtime.

use std::path::{Path, PathBuf};

use super::ExecError;

/// Environment variable naming the toolchain root.
pub const TOOLCHAIN_ENV: &str = "TESTCOMP_TOOLCHAIN";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Compiler {
    Javac(PathBuf),
    /// Eclipse batch compiler run on the toolchain's runtime.
    Ecj(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Toolchain {
    pub root: PathBuf,
    pub java: PathBuf,
    pub compiler: Compiler,
    /// JUnit 4 and hamcrest jars, when present under `lib/`.
    pub junit4: Vec<PathBuf>,
}

fn first_jar(lib: &Path, prefixes: &[&str]) -> Option<PathBuf> {
    let mut found: Vec<PathBuf> = std::fs::read_dir(lib)
        .ok()?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            let name = p.file_name().and_then(|n| n.to_str()).unwrap_or("");
            name.ends_with(".jar") && prefixes.iter().any(|pre| name.starts_with(pre))
        })
        .collect();
    found.sort();
    found.into_iter().next()
}

impl Toolchain {
    /// Reads a toolchain laid out either as a JDK (`bin/javac`, `bin/java`)
    /// or as a runtime plus the Eclipse compiler (`jre/bin/java`,
    /// `lib/ecj*.jar`).
    pub fn at(root: &Path) -> Result<Toolchain, ExecError> {
        let missing = |what: &str| ExecError::ToolchainMissing(format!("{}: {what}", root.display()));
        let java = [root.join("bin/java"), root.join("jre/bin/java")]
            .into_iter()
            .find(|p| p.is_file())
            .ok_or_else(|| missing("no java executable"))?;
        let lib = root.join("lib");
        let compiler = if root.join("bin/javac").is_file() {
            Compiler::Javac(root.join("bin/javac"))
        } else {
            Compiler::Ecj(
                first_jar(&lib, &["ecj", "org.eclipse.jdt.core.compiler.batch"])
                    .ok_or_else(|| missing("no javac and no ecj jar"))?,
            )
        };
        let junit4 = [
            first_jar(&lib, &["junit4", "junit-4", "org.junit_4"]),
            first_jar(&lib, &["hamcrest", "org.hamcrest"]),
        ]
        .into_iter()
        .flatten()
        .collect();
        Ok(Toolchain {
            root: root.to_path_buf(),
            java,
            compiler,
            junit4,
        })
    }

    /// The explicit root, else `$TESTCOMP_TOOLCHAIN`, else `$JAVA_HOME`.
    pub fn discover(explicit: Option<&Path>) -> Result<Toolchain, ExecError> {
        if let Some(root) = explicit {
            return Toolchain::at(root);
        }
        for var in [TOOLCHAIN_ENV, "JAVA_HOME"] {
            if let Some(root) = std::env::var_os(var).filter(|v| !v.is_empty()) {
                return Toolchain::at(Path::new(&root));
            }
        }
        Err(ExecError::ToolchainMissing(format!(
            "pass a toolchain path or set {TOOLCHAIN_ENV} or JAVA_HOME"
        )))
    }
}
