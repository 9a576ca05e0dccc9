//! Compiling and running harnesses.

use std::path::PathBuf;
use std::process::Command;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::harness::{EntryMode, HarnessSpec};
use super::process::{run, ProcessResult};
use super::toolchain::{Compiler, Toolchain};
use super::ExecError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExecStatus {
    NotCompilable,
    CompilableNotRunnable,
    Runnable,
}

impl ExecStatus {
    pub fn compiles(self) -> bool {
        self != ExecStatus::NotCompilable
    }

    pub fn runs(self) -> bool {
        self == ExecStatus::Runnable
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Runner {
    Junit4Cli,
    AdhocMain,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExecOutcome {
    pub status: ExecStatus,
    pub runner: Runner,
    pub diagnostics: String,
    pub duration_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExecConfig {
    pub timeout_secs: u64,
    /// Extra classpath entries for every harness, e.g. test framework jars.
    pub extra_classpath: Vec<PathBuf>,
    pub jvm_args: Vec<String>,
}

impl Default for ExecConfig {
    fn default() -> Self {
        ExecConfig {
            timeout_secs: 30,
            extra_classpath: Vec::new(),
            jvm_args: vec!["-XX:TieredStopAtLevel=1".into()],
        }
    }
}

impl ExecConfig {
    pub fn timeout(&self) -> Duration {
        Duration::from_secs(self.timeout_secs)
    }
}

fn join_classpath(entries: &[PathBuf]) -> Result<String, ExecError> {
    std::env::join_paths(entries)
        .map(|s| s.to_string_lossy().into_owned())
        .map_err(|e| ExecError::Io(std::io::Error::new(std::io::ErrorKind::InvalidInput, e)))
}

fn describe(stage: &str, r: &ProcessResult, timeout: Duration) -> String {
    if r.timed_out {
        format!("[{stage}] timed out after {}s\n{}", timeout.as_secs(), r.output)
    } else {
        format!("[{stage}] exit {:?}\n{}", r.code, r.output)
    }
}

/// Compiles the harness in a fresh directory and runs it.
pub fn evaluate_candidate(
    spec: &HarnessSpec,
    toolchain: &Toolchain,
    config: &ExecConfig,
) -> Result<ExecOutcome, ExecError> {
    let work = tempfile::Builder::new().prefix("testcomp-run").tempdir()?;
    let src = work.path().join("src").join(spec.source_path());
    std::fs::create_dir_all(src.parent().expect("has parent"))?;
    std::fs::write(&src, &spec.source)?;
    let out = work.path().join("out");
    std::fs::create_dir_all(&out)?;

    let mut compile_cp: Vec<PathBuf> = spec.classpath.clone();
    compile_cp.extend(config.extra_classpath.iter().cloned());
    compile_cp.extend(toolchain.junit4.iter().cloned());
    let cp = join_classpath(&compile_cp)?;

    let mut cmd = match &toolchain.compiler {
        Compiler::Javac(javac) => {
            let mut c = Command::new(javac);
            c.args(["--release", "17"]);
            c
        }
        Compiler::Ecj(jar) => {
            let mut c = Command::new(&toolchain.java);
            c.args(&config.jvm_args).arg("-jar").arg(jar);
            c.args(["-source", "17", "-target", "17"]);
            c
        }
    };
    cmd.args(["-g", "-nowarn", "-proc:none", "-encoding", "UTF-8", "-cp", &cp, "-d"])
        .arg(&out)
        .arg(&src);
    let compiled = run(cmd, work.path(), spec.timeout)?;
    let mut diagnostics = describe("compile", &compiled, spec.timeout);
    let mut elapsed = compiled.elapsed;
    let outcome = |status, runner, diagnostics, elapsed: Duration| ExecOutcome {
        status,
        runner,
        diagnostics,
        duration_ms: elapsed.as_millis() as u64,
    };
    if !compiled.success() {
        return Ok(outcome(ExecStatus::NotCompilable, Runner::None, diagnostics, elapsed));
    }

    let mut run_cp = vec![out];
    run_cp.extend(compile_cp);
    let cp = join_classpath(&run_cp)?;
    let launch = |main: &str, arg: Option<&str>| {
        let mut c = Command::new(&toolchain.java);
        c.args(&config.jvm_args).args(["-cp", &cp]).arg(main);
        c.args(arg);
        run(c, work.path(), spec.timeout)
    };
    let name = spec.launch_name();
    if spec.entry == EntryMode::Junit4ThenMain && !toolchain.junit4.is_empty() {
        let r = launch("org.junit.runner.JUnitCore", Some(&name))?;
        elapsed += r.elapsed;
        diagnostics.push_str(&describe("junit4", &r, spec.timeout));
        if r.success() {
            return Ok(outcome(ExecStatus::Runnable, Runner::Junit4Cli, diagnostics, elapsed));
        }
    }
    let r = launch(&name, None)?;
    elapsed += r.elapsed;
    diagnostics.push_str(&describe("main", &r, spec.timeout));
    let status = if r.success() {
        ExecStatus::Runnable
    } else {
        ExecStatus::CompilableNotRunnable
    };
    Ok(outcome(status, Runner::AdhocMain, diagnostics, elapsed))
}
