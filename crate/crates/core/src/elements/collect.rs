//! Reading a project tree and its dependency classpath from disk.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use walkdir::WalkDir;

use super::archive::{ArchivedClass, ArchivedSource, DependencyClass, StoreArchive};
use super::store::{CodeElementStore, CollectError};
use crate::jclass::parse_classfile;

const SKIPPED_DIRS: &[&str] = &["target", "build", ".git"];

fn io_err(path: &Path, source: std::io::Error) -> CollectError {
    CollectError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn relative(root: &Path, path: &Path) -> String {
    path.strip_prefix(root)
        .unwrap_or(path)
        .components()
        .map(|c| c.as_os_str().to_string_lossy())
        .collect::<Vec<_>>()
        .join("/")
}

fn files_with_ext(dir: &Path, ext: &str, skip: &[&str]) -> Result<Vec<PathBuf>, CollectError> {
    let mut out = Vec::new();
    let walker = WalkDir::new(dir).sort_by_file_name().into_iter().filter_entry(|e| {
        e.depth() == 0 || !(e.file_type().is_dir() && skip.contains(&e.file_name().to_string_lossy().as_ref()))
    });
    for entry in walker {
        let entry = entry.map_err(|e| {
            let path = e.path().unwrap_or(dir).to_path_buf();
            io_err(&path, e.into())
        })?;
        if entry.file_type().is_file() && entry.path().extension().is_some_and(|x| x == ext) {
            out.push(entry.into_path());
        }
    }
    Ok(out)
}

/// Jars under `root/lib`, the conventional location of project dependencies.
pub fn default_classpath(root: &Path) -> Vec<PathBuf> {
    let mut jars: Vec<PathBuf> = fs::read_dir(root.join("lib"))
        .into_iter()
        .flatten()
        .flatten()
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "jar"))
        .collect();
    jars.sort();
    jars
}

fn read_dependency(path: &Path) -> Result<Vec<DependencyClass>, CollectError> {
    let origin = path.display().to_string();
    let mut out = Vec::new();
    let mut add = |bytes: &[u8], name: &str| -> Result<(), CollectError> {
        let cf = parse_classfile(bytes).map_err(|error| CollectError::ClassFile {
            path: format!("{origin}!{name}"),
            error,
        })?;
        out.push(DependencyClass::from_classfile(&cf, &origin));
        Ok(())
    };
    if path.is_dir() {
        for f in files_with_ext(path, "class", &[])? {
            if f.file_name().is_some_and(|n| n == "module-info.class") {
                continue;
            }
            let bytes = fs::read(&f).map_err(|e| io_err(&f, e))?;
            add(&bytes, &relative(path, &f))?;
        }
    } else {
        let file = fs::File::open(path).map_err(|e| io_err(path, e))?;
        let mut zip = zip::ZipArchive::new(file).map_err(|e| CollectError::Archive {
            path: origin.clone(),
            message: e.to_string(),
        })?;
        let mut names: Vec<String> = zip
            .file_names()
            .filter(|n| n.ends_with(".class") && !n.ends_with("module-info.class"))
            .map(str::to_string)
            .collect();
        names.sort();
        for name in names {
            let mut entry = zip.by_name(&name).map_err(|e| CollectError::Archive {
                path: origin.clone(),
                message: e.to_string(),
            })?;
            let mut bytes = Vec::new();
            entry.read_to_end(&mut bytes).map_err(|e| io_err(path, e))?;
            drop(entry);
            add(&bytes, &name)?;
        }
    }
    Ok(out)
}

/// Reads sources, classfiles and dependency metadata without building the
/// store.
pub fn read_project(root: &Path, classpath: &[PathBuf]) -> Result<StoreArchive, CollectError> {
    let meta = fs::metadata(root).map_err(|e| io_err(root, e))?;
    if !meta.is_dir() {
        return Err(io_err(
            root,
            std::io::Error::new(std::io::ErrorKind::NotADirectory, "not a directory"),
        ));
    }
    let project = root
        .canonicalize()
        .ok()
        .and_then(|p| p.file_name().map(|n| n.to_string_lossy().into_owned()))
        .unwrap_or_default();
    let src_root = root.join("src");
    let source_files = if src_root.is_dir() {
        files_with_ext(&src_root, "java", SKIPPED_DIRS)?
    } else {
        files_with_ext(root, "java", SKIPPED_DIRS)?
    };
    let mut archive = StoreArchive {
        project,
        ..StoreArchive::default()
    };
    for f in source_files {
        let text = fs::read_to_string(&f).map_err(|e| io_err(&f, e))?;
        archive.sources.push(ArchivedSource {
            path: relative(root, &f),
            text,
        });
    }
    for f in files_with_ext(root, "class", &[".git"])? {
        if f.file_name()
            .is_some_and(|n| n == "module-info.class" || n == "package-info.class")
        {
            continue;
        }
        let bytes = fs::read(&f).map_err(|e| io_err(&f, e))?;
        archive.classfiles.push(ArchivedClass {
            path: relative(root, &f),
            bytes,
        });
    }
    for entry in classpath {
        archive.dependencies.extend(read_dependency(entry)?);
    }
    archive.normalize();
    Ok(archive)
}

pub fn collect_project(root: &Path, classpath: &[PathBuf]) -> Result<CodeElementStore, CollectError> {
    CodeElementStore::from_archive(read_project(root, classpath)?)
}
