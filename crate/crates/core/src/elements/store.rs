//! The shared, immutable index of classes, methods and fields of one project.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::archive::{DependencyClass, StoreArchive};
use super::detect::is_test_annotated;
use crate::jclass::classfile::{ACC_INTERFACE, ACC_STATIC};
use crate::jclass::descriptor::parse_method_descriptor;
use crate::jclass::hierarchy::{is_subclass, jdk_shape};
use crate::jclass::{parse_classfile, ClassFile, ClassFileError, ClassHierarchy, ClassShape, MethodInfo, TypeDesc};
use crate::jsource::model::erase;
use crate::jsource::{parse_source, ClassDecl, MethodDecl, SourceModel, TypeKind};

pub const ACC_BRIDGE: u16 = 0x0040;
pub const ACC_SYNTHETIC: u16 = 0x1000;

pub type MethodId = String;
pub type FieldId = String;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassKind {
    NonTest,
    Test,
    Dependency,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceLoc {
    pub file: usize,
    pub class: usize,
}

#[derive(Debug, Clone)]
pub struct SourceFile {
    pub path: String,
    pub text: String,
    pub model: SourceModel,
}

#[derive(Debug, Clone)]
pub struct ClassEntry {
    pub name: String,
    pub kind: ClassKind,
    pub superclass: Option<String>,
    pub interfaces: Vec<String>,
    pub access_flags: u16,
    pub source: Option<SourceLoc>,
    pub classfile: Option<Arc<ClassFile>>,
    pub classfile_path: Option<String>,
    pub methods: Vec<MethodId>,
    pub fields: Vec<FieldId>,
}

impl ClassEntry {
    pub fn is_interface(&self) -> bool {
        self.access_flags & ACC_INTERFACE != 0
    }

    pub fn is_project(&self) -> bool {
        self.kind != ClassKind::Dependency
    }
}

#[derive(Debug, Clone)]
pub struct MethodEntry {
    pub id: MethodId,
    pub owner: String,
    pub name: String,
    pub descriptor: Option<String>,
    pub access_flags: u16,
    /// Fully qualified annotation names, e.g. `org.junit.Test`.
    pub annotations: Vec<String>,
    /// Index into the owner's source declaration methods.
    pub source: Option<usize>,
    /// Index into the owner's classfile methods.
    pub bytecode: Option<usize>,
}

impl MethodEntry {
    pub fn is_static(&self) -> bool {
        self.access_flags & ACC_STATIC != 0
    }

    pub fn has_annotation(&self, qualified: &str) -> bool {
        self.annotations.iter().any(|a| a == qualified)
    }
}

#[derive(Debug, Clone)]
pub struct FieldEntry {
    pub id: FieldId,
    pub owner: String,
    pub name: String,
    pub descriptor: Option<String>,
    pub access_flags: u16,
    pub has_initializer: bool,
    pub source: Option<usize>,
}

impl FieldEntry {
    pub fn is_static(&self) -> bool {
        self.access_flags & ACC_STATIC != 0
    }

    pub fn is_synthetic(&self) -> bool {
        self.access_flags & ACC_SYNTHETIC != 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum StoreWarning {
    MissingBytecode { class: String },
    SourceParse { path: String, message: String },
    ShadowedDependency { class: String, origin: String },
    UnlinkedMethod { class: String, method: String },
}

impl fmt::Display for StoreWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StoreWarning::MissingBytecode { class } => write!(f, "no bytecode for {class}"),
            StoreWarning::SourceParse { path, message } => write!(f, "{path}: {message}"),
            StoreWarning::ShadowedDependency { class, origin } => {
                write!(f, "{class} from {origin} is shadowed by a project class")
            }
            StoreWarning::UnlinkedMethod { class, method } => {
                write!(f, "{class}.{method} has no matching bytecode")
            }
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CollectError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {error}")]
    ClassFile { path: String, error: ClassFileError },
    #[error("{path}: {message}")]
    Archive { path: String, message: String },
    #[error("class {name} is defined more than once ({first}, {second})")]
    DuplicateClass {
        name: String,
        first: String,
        second: String,
    },
}

#[derive(Debug, Clone)]
pub struct CodeElementStore {
    archive: StoreArchive,
    sources: Vec<SourceFile>,
    classes: BTreeMap<String, ClassEntry>,
    methods: BTreeMap<MethodId, MethodEntry>,
    fields: BTreeMap<FieldId, FieldEntry>,
    warnings: Vec<StoreWarning>,
}

pub fn method_id(owner: &str, name: &str, descriptor: &str) -> MethodId {
    format!("{owner}.{name}{descriptor}")
}

pub fn field_id(owner: &str, name: &str) -> FieldId {
    format!("{owner}.{name}")
}

fn path_has_test_segment(path: &str) -> bool {
    path.split('/').any(|s| s == "test" || s == "test-classes")
}

const JAVA_LANG_ANNOTATIONS: &[&str] = &[
    "Override",
    "Deprecated",
    "SuppressWarnings",
    "FunctionalInterface",
    "SafeVarargs",
];

/// Well-known annotation types recognised through wildcard imports even
/// when their classes are not on the classpath.
const KNOWN_ANNOTATIONS: &[&str] = &[
    "org.junit.Test",
    "org.junit.Ignore",
    "org.junit.Before",
    "org.junit.After",
    "org.junit.BeforeClass",
    "org.junit.AfterClass",
    "org.junit.Rule",
    "org.junit.ClassRule",
    "org.junit.jupiter.api.Test",
    "org.junit.jupiter.api.Disabled",
    "org.junit.jupiter.api.BeforeEach",
    "org.junit.jupiter.api.AfterEach",
    "org.junit.jupiter.api.BeforeAll",
    "org.junit.jupiter.api.AfterAll",
];

/// Dotted name of a type referenced as `name` from a compilation unit.
pub fn resolve_type_name(model: &SourceModel, name: &str, known: &dyn Fn(&str) -> bool) -> String {
    if name.contains('.') {
        return name.to_string();
    }
    let suffix = format!(".{name}");
    if let Some(i) = model
        .imports
        .iter()
        .find(|i| !i.is_static && !i.wildcard && i.name.ends_with(&suffix))
    {
        return i.name.clone();
    }
    if JAVA_LANG_ANNOTATIONS.contains(&name) {
        return format!("java.lang.{name}");
    }
    for i in model.imports.iter().filter(|i| !i.is_static && i.wildcard) {
        let candidate = format!("{}.{name}", i.name);
        if KNOWN_ANNOTATIONS.contains(&candidate.as_str()) || known(&candidate.replace('.', "/")) {
            return candidate;
        }
    }
    match &model.package {
        Some(p) => format!("{p}.{name}"),
        None => name.to_string(),
    }
}

fn source_param_name(decl_type: &[crate::jsource::Token], dims: usize) -> (String, usize) {
    let erased = erase(decl_type);
    let mut base = erased.as_str();
    let mut n = dims;
    while let Some(b) = base.strip_suffix("[]") {
        base = b;
        n += 1;
    }
    let simple = base.rsplit('.').next().unwrap_or(base).to_string();
    (simple, n)
}

fn desc_matches(t: &TypeDesc, simple: &str, dims: usize, wildcard: bool) -> bool {
    let mut t = t;
    let mut n = 0;
    while let TypeDesc::Array { element } = t {
        t = element;
        n += 1;
    }
    if wildcard {
        return n >= dims && (n > dims || t.is_reference());
    }
    n == dims && t.simple_name() == simple
}

/// Pairs each source method of `decl` with a classfile method index.
fn link_methods(decl: &ClassDecl, enclosing: &[&ClassDecl], cf: &ClassFile) -> Vec<Option<usize>> {
    let mut used = BTreeSet::new();
    let inner_instance = !decl.is_static()
        && decl.kind == TypeKind::Class
        && enclosing
            .first()
            .is_some_and(|o| matches!(o.kind, TypeKind::Class | TypeKind::Enum | TypeKind::Record));
    let class_params: BTreeSet<&str> = std::iter::once(decl)
        .chain(enclosing.iter().copied())
        .flat_map(|c| c.type_params.iter().map(String::as_str))
        .collect();
    let mut out = Vec::with_capacity(decl.methods.len());
    for m in &decl.methods {
        let extra = if m.is_constructor {
            match decl.kind {
                TypeKind::Enum => 2,
                _ if inner_instance => 1,
                _ => 0,
            }
        } else {
            0
        };
        let expected = m.params.len() + extra;
        let candidates: Vec<(usize, Vec<TypeDesc>)> = cf
            .methods
            .iter()
            .enumerate()
            .filter(|(j, mi)| {
                !used.contains(j) && mi.name == m.name && mi.access_flags & (ACC_BRIDGE | ACC_SYNTHETIC) == 0
            })
            .filter_map(|(j, mi)| {
                let d = parse_method_descriptor(&mi.descriptor).ok()?;
                (d.params.len() == expected).then_some((j, d.params))
            })
            .collect();
        let pick = if candidates.len() == 1 {
            Some(candidates[0].0)
        } else {
            candidates.iter().find_map(|(j, params)| {
                let ok = m.params.iter().zip(&params[extra..]).all(|(p, t)| {
                    let (simple, dims) = source_param_name(&p.type_tokens, p.extra_dims + usize::from(p.varargs));
                    let wildcard = m.type_params.contains(&simple) || class_params.contains(simple.as_str());
                    desc_matches(t, &simple, dims, wildcard)
                });
                ok.then_some(*j)
            })
        };
        if let Some(j) = pick {
            used.insert(j);
        }
        out.push(pick);
    }
    out
}

impl CodeElementStore {
    /// Builds a store from archived inputs.
    pub fn from_archive(mut archive: StoreArchive) -> Result<CodeElementStore, CollectError> {
        archive.normalize();
        let mut warnings = Vec::new();

        let mut sources = Vec::new();
        for s in &archive.sources {
            match parse_source(&s.text) {
                Ok(model) => sources.push(SourceFile {
                    path: s.path.clone(),
                    text: s.text.clone(),
                    model,
                }),
                Err(e) => warnings.push(StoreWarning::SourceParse {
                    path: s.path.clone(),
                    message: e.to_string(),
                }),
            }
        }

        let mut classfiles: BTreeMap<String, (Arc<ClassFile>, String)> = BTreeMap::new();
        for c in &archive.classfiles {
            let cf = parse_classfile(&c.bytes).map_err(|error| CollectError::ClassFile {
                path: c.path.clone(),
                error,
            })?;
            if let Some((_, first)) = classfiles.get(&cf.binary_name) {
                return Err(CollectError::DuplicateClass {
                    name: cf.binary_name.clone(),
                    first: first.clone(),
                    second: c.path.clone(),
                });
            }
            classfiles.insert(cf.binary_name.clone(), (Arc::new(cf), c.path.clone()));
        }

        let mut source_classes: BTreeMap<String, SourceLoc> = BTreeMap::new();
        for (fi, f) in sources.iter().enumerate() {
            for (ci, c) in f.model.classes.iter().enumerate() {
                if let Some(prev) = source_classes.get(&c.binary_name) {
                    return Err(CollectError::DuplicateClass {
                        name: c.binary_name.clone(),
                        first: sources[prev.file].path.clone(),
                        second: f.path.clone(),
                    });
                }
                source_classes.insert(c.binary_name.clone(), SourceLoc { file: fi, class: ci });
            }
        }

        let mut known: BTreeSet<String> = classfiles.keys().cloned().collect();
        known.extend(source_classes.keys().cloned());
        known.extend(archive.dependencies.iter().map(|d| d.name.clone()));
        let is_known = |n: &str| known.contains(n);

        // resolved annotations per source method, per class
        let mut annotations: BTreeMap<String, Vec<Vec<String>>> = BTreeMap::new();
        for (name, loc) in &source_classes {
            let f = &sources[loc.file];
            let decl = &f.model.classes[loc.class];
            let per_method = decl
                .methods
                .iter()
                .map(|m| {
                    m.annotations
                        .iter()
                        .map(|a| resolve_type_name(&f.model, &a.name, &is_known))
                        .collect()
                })
                .collect();
            annotations.insert(name.clone(), per_method);
        }

        let mut kinds: BTreeMap<String, ClassKind> = BTreeMap::new();
        for (name, loc) in &source_classes {
            let f = &sources[loc.file];
            let decl = &f.model.classes[loc.class];
            let declares_test = annotations[name].iter().any(|a| is_test_annotated(a));
            let outer_test = decl
                .outer
                .map(|o| kinds.get(&f.model.classes[o].binary_name) == Some(&ClassKind::Test))
                .unwrap_or(false);
            let kind = if path_has_test_segment(&f.path) || declares_test || outer_test {
                ClassKind::Test
            } else {
                ClassKind::NonTest
            };
            kinds.insert(name.clone(), kind);
        }
        // outer classes of test-declaring nested classes stay as determined;
        // a second pass lets nested classes inherit a test outer
        for (name, loc) in &source_classes {
            let f = &sources[loc.file];
            let mut o = f.model.classes[loc.class].outer;
            while let Some(oi) = o {
                if kinds[&f.model.classes[oi].binary_name] == ClassKind::Test {
                    kinds.insert(name.clone(), ClassKind::Test);
                }
                o = f.model.classes[oi].outer;
            }
        }
        for (name, (_, path)) in &classfiles {
            if kinds.contains_key(name) {
                continue;
            }
            let mut outer = name.as_str();
            let mut kind = None;
            while let Some((o, _)) = outer.rsplit_once('$') {
                if let Some(k) = kinds.get(o) {
                    kind = Some(*k);
                    break;
                }
                outer = o;
            }
            let kind = kind.unwrap_or(if path_has_test_segment(path) {
                ClassKind::Test
            } else {
                ClassKind::NonTest
            });
            kinds.insert(name.clone(), kind);
        }

        let mut classes = BTreeMap::new();
        let mut methods = BTreeMap::new();
        let mut fields = BTreeMap::new();
        for (name, kind) in &kinds {
            let loc = source_classes.get(name).copied();
            let cf = classfiles.get(name);
            let decl = loc.map(|l| &sources[l.file].model.classes[l.class]);
            let model = loc.map(|l| &sources[l.file].model);
            if loc.is_some() && cf.is_none() {
                warnings.push(StoreWarning::MissingBytecode { class: name.clone() });
            }
            let (superclass, interfaces, access_flags) = match (cf, decl, model) {
                (Some((cf, _)), _, _) => (cf.superclass.clone(), cf.interface_names.clone(), cf.access_flags),
                (None, Some(d), Some(m)) => {
                    let res = |n: &String| resolve_type_name(m, n, &is_known).replace('.', "/");
                    let sup = match d.kind {
                        TypeKind::Interface | TypeKind::Annotation => None,
                        TypeKind::Enum => Some("java/lang/Enum".to_string()),
                        TypeKind::Record => Some("java/lang/Record".to_string()),
                        TypeKind::Class => {
                            Some(d.extends.as_ref().map(res).unwrap_or_else(|| "java/lang/Object".into()))
                        }
                    };
                    let mut flags = 0;
                    if matches!(d.kind, TypeKind::Interface | TypeKind::Annotation) {
                        flags |= ACC_INTERFACE;
                    }
                    (sup, d.implements.iter().map(res).collect(), flags)
                }
                _ => unreachable!("every kinded class has source or bytecode"),
            };
            let mut entry = ClassEntry {
                name: name.clone(),
                kind: *kind,
                superclass,
                interfaces,
                access_flags,
                source: loc,
                classfile: cf.map(|(c, _)| c.clone()),
                classfile_path: cf.map(|(_, p)| p.clone()),
                methods: Vec::new(),
                fields: Vec::new(),
            };

            let links = match (decl, cf, loc) {
                (Some(d), Some((cf, _)), Some(l)) => {
                    let model = &sources[l.file].model;
                    let mut enclosing = Vec::new();
                    let mut o = d.outer;
                    while let Some(oi) = o {
                        enclosing.push(&model.classes[oi]);
                        o = model.classes[oi].outer;
                    }
                    link_methods(d, &enclosing, cf)
                }
                (Some(d), _, _) => vec![None; d.methods.len()],
                _ => Vec::new(),
            };
            let mut source_of: BTreeMap<usize, usize> = BTreeMap::new();
            for (k, j) in links.iter().enumerate() {
                if let Some(j) = j {
                    source_of.insert(*j, k);
                }
            }
            let method_annotations = annotations.get(name);
            if let Some((cf, _)) = cf {
                for (j, mi) in cf.methods.iter().enumerate() {
                    let id = method_id(name, &mi.name, &mi.descriptor);
                    let src = source_of.get(&j).copied();
                    methods.insert(
                        id.clone(),
                        MethodEntry {
                            id: id.clone(),
                            owner: name.clone(),
                            name: mi.name.clone(),
                            descriptor: Some(mi.descriptor.clone()),
                            access_flags: mi.access_flags,
                            annotations: src
                                .and_then(|k| method_annotations.map(|a| a[k].clone()))
                                .unwrap_or_default(),
                            source: src,
                            bytecode: Some(j),
                        },
                    );
                    entry.methods.push(id);
                }
                for fi in &cf.fields {
                    let id = field_id(name, &fi.name);
                    let src = decl.and_then(|d| d.fields.iter().position(|f| f.name == fi.name));
                    fields.insert(
                        id.clone(),
                        FieldEntry {
                            id: id.clone(),
                            owner: name.clone(),
                            name: fi.name.clone(),
                            descriptor: Some(fi.descriptor.clone()),
                            access_flags: fi.access_flags,
                            has_initializer: match (decl, src) {
                                (Some(d), Some(k)) => d.fields[k].has_initializer,
                                _ => false,
                            },
                            source: src,
                        },
                    );
                    entry.fields.push(id);
                }
            }
            if let Some(d) = decl {
                for (k, m) in d.methods.iter().enumerate() {
                    if links[k].is_some() {
                        continue;
                    }
                    if cf.is_some() {
                        warnings.push(StoreWarning::UnlinkedMethod {
                            class: name.clone(),
                            method: m.name.clone(),
                        });
                    }
                    let id = format!("{name}.{}#{k}", m.name);
                    let mut flags = 0;
                    if m.is_static() {
                        flags |= ACC_STATIC;
                    }
                    methods.insert(
                        id.clone(),
                        MethodEntry {
                            id: id.clone(),
                            owner: name.clone(),
                            name: m.name.clone(),
                            descriptor: None,
                            access_flags: flags,
                            annotations: method_annotations.map(|a| a[k].clone()).unwrap_or_default(),
                            source: Some(k),
                            bytecode: None,
                        },
                    );
                    entry.methods.push(id);
                }
                if cf.is_none() {
                    for (k, f) in d.fields.iter().enumerate() {
                        let id = field_id(name, &f.name);
                        let flags = if f.is_static() { ACC_STATIC } else { 0 };
                        fields.insert(
                            id.clone(),
                            FieldEntry {
                                id: id.clone(),
                                owner: name.clone(),
                                name: f.name.clone(),
                                descriptor: None,
                                access_flags: flags,
                                has_initializer: f.has_initializer,
                                source: Some(k),
                            },
                        );
                        entry.fields.push(id);
                    }
                }
            }
            classes.insert(name.clone(), entry);
        }

        for dep in &archive.dependencies {
            if classes.contains_key(&dep.name) {
                if classes[&dep.name].kind != ClassKind::Dependency {
                    warnings.push(StoreWarning::ShadowedDependency {
                        class: dep.name.clone(),
                        origin: dep.origin.clone(),
                    });
                }
                continue;
            }
            let (entry, ms, fs) = dependency_entry(dep);
            for m in ms {
                methods.insert(m.id.clone(), m);
            }
            for f in fs {
                fields.insert(f.id.clone(), f);
            }
            classes.insert(dep.name.clone(), entry);
        }

        Ok(CodeElementStore {
            archive,
            sources,
            classes,
            methods,
            fields,
            warnings,
        })
    }

    pub fn project(&self) -> &str {
        &self.archive.project
    }

    pub fn archive(&self) -> &StoreArchive {
        &self.archive
    }

    pub fn warnings(&self) -> &[StoreWarning] {
        &self.warnings
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sources(&self) -> &[SourceFile] {
        &self.sources
    }

    pub fn class(&self, name: &str) -> Option<&ClassEntry> {
        self.classes.get(name)
    }

    pub fn classes(&self) -> impl Iterator<Item = &ClassEntry> {
        self.classes.values()
    }

    pub fn method(&self, id: &str) -> Option<&MethodEntry> {
        self.methods.get(id)
    }

    pub fn methods(&self) -> impl Iterator<Item = &MethodEntry> {
        self.methods.values()
    }

    pub fn field(&self, id: &str) -> Option<&FieldEntry> {
        self.fields.get(id)
    }

    pub fn fields(&self) -> impl Iterator<Item = &FieldEntry> {
        self.fields.values()
    }

    pub fn methods_of<'a>(&'a self, class: &str) -> impl Iterator<Item = &'a MethodEntry> + 'a {
        self.classes
            .get(class)
            .into_iter()
            .flat_map(|c| c.methods.iter())
            .filter_map(|id| self.methods.get(id))
    }

    pub fn fields_of<'a>(&'a self, class: &str) -> impl Iterator<Item = &'a FieldEntry> + 'a {
        self.classes
            .get(class)
            .into_iter()
            .flat_map(|c| c.fields.iter())
            .filter_map(|id| self.fields.get(id))
    }

    /// Source file and declaration of a class.
    pub fn class_source(&self, name: &str) -> Option<(&SourceFile, &ClassDecl)> {
        let loc = self.classes.get(name)?.source?;
        let f = &self.sources[loc.file];
        Some((f, &f.model.classes[loc.class]))
    }

    pub fn method_decl(&self, id: &str) -> Option<&MethodDecl> {
        let m = self.methods.get(id)?;
        let (_, decl) = self.class_source(&m.owner)?;
        decl.methods.get(m.source?)
    }

    pub fn method_bytecode(&self, id: &str) -> Option<(&ClassFile, &MethodInfo)> {
        let m = self.methods.get(id)?;
        let cf = self.classes.get(&m.owner)?.classfile.as_deref()?;
        Some((cf, cf.methods.get(m.bytecode?)?))
    }

    pub fn classfile(&self, name: &str) -> Option<&ClassFile> {
        self.classes.get(name)?.classfile.as_deref()
    }

    /// Supertypes of `class` in lookup order: the class itself, its
    /// superclass chain, then interfaces breadth first.
    pub fn lookup_order(&self, class: &str) -> Vec<String> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        let mut cur = Some(class.to_string());
        let mut interfaces = VecDeque::new();
        while let Some(c) = cur {
            if !seen.insert(c.clone()) {
                break;
            }
            let shape = self.shape(&c);
            out.push(c);
            cur = shape.as_ref().and_then(|s| s.superclass.clone());
            if let Some(s) = shape {
                interfaces.extend(s.interfaces);
            }
        }
        while let Some(i) = interfaces.pop_front() {
            if !seen.insert(i.clone()) {
                continue;
            }
            if let Some(s) = self.shape(&i) {
                interfaces.extend(s.interfaces);
            }
            out.push(i);
        }
        out
    }

    /// The method a reference `class.name descriptor` resolves to.
    pub fn resolve_method(&self, class: &str, name: &str, descriptor: &str) -> Option<&MethodEntry> {
        self.lookup_order(class)
            .iter()
            .find_map(|c| self.methods.get(&method_id(c, name, descriptor)))
    }

    pub fn resolve_field(&self, class: &str, name: &str) -> Option<&FieldEntry> {
        self.lookup_order(class)
            .iter()
            .find_map(|c| self.fields.get(&field_id(c, name)))
    }

    /// Project and dependency classes that are strict subtypes of `name`.
    pub fn subtypes(&self, name: &str) -> Vec<&ClassEntry> {
        self.classes
            .values()
            .filter(|c| c.name != name && is_subclass(self, &c.name, name))
            .collect()
    }
}

fn dependency_entry(dep: &DependencyClass) -> (ClassEntry, Vec<MethodEntry>, Vec<FieldEntry>) {
    let methods: Vec<MethodEntry> = dep
        .methods
        .iter()
        .map(|m| MethodEntry {
            id: method_id(&dep.name, &m.name, &m.descriptor),
            owner: dep.name.clone(),
            name: m.name.clone(),
            descriptor: Some(m.descriptor.clone()),
            access_flags: m.access_flags,
            annotations: Vec::new(),
            source: None,
            bytecode: None,
        })
        .collect();
    let fields: Vec<FieldEntry> = dep
        .fields
        .iter()
        .map(|f| FieldEntry {
            id: field_id(&dep.name, &f.name),
            owner: dep.name.clone(),
            name: f.name.clone(),
            descriptor: Some(f.descriptor.clone()),
            access_flags: f.access_flags,
            has_initializer: false,
            source: None,
        })
        .collect();
    let entry = ClassEntry {
        name: dep.name.clone(),
        kind: ClassKind::Dependency,
        superclass: dep.superclass.clone(),
        interfaces: dep.interfaces.clone(),
        access_flags: dep.access_flags,
        source: None,
        classfile: None,
        classfile_path: None,
        methods: methods.iter().map(|m| m.id.clone()).collect(),
        fields: fields.iter().map(|f| f.id.clone()).collect(),
    };
    (entry, methods, fields)
}

impl ClassHierarchy for CodeElementStore {
    fn shape(&self, name: &str) -> Option<ClassShape> {
        match self.classes.get(name) {
            Some(c) => Some(ClassShape {
                superclass: c.superclass.clone(),
                interfaces: c.interfaces.clone(),
                is_interface: c.is_interface(),
            }),
            None => jdk_shape(name),
        }
    }
}
