//! Serializable project inputs from which a store is rebuilt.

use serde::{Deserialize, Serialize};

use crate::jclass::ClassFile;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArchivedSource {
    /// Path relative to the project root, `/`-separated.
    pub path: String,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArchivedClass {
    pub path: String,
    #[serde(with = "b64")]
    pub bytes: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberMeta {
    pub name: String,
    pub descriptor: String,
    pub access_flags: u16,
}

/// Metadata of a class found only on the dependency classpath.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DependencyClass {
    pub name: String,
    pub superclass: Option<String>,
    pub interfaces: Vec<String>,
    pub access_flags: u16,
    pub fields: Vec<MemberMeta>,
    pub methods: Vec<MemberMeta>,
    /// Jar or directory the class was read from.
    pub origin: String,
}

impl DependencyClass {
    pub fn from_classfile(cf: &ClassFile, origin: &str) -> DependencyClass {
        let meta = |name: &str, descriptor: &str, access_flags: u16| MemberMeta {
            name: name.to_string(),
            descriptor: descriptor.to_string(),
            access_flags,
        };
        DependencyClass {
            name: cf.binary_name.clone(),
            superclass: cf.superclass.clone(),
            interfaces: cf.interface_names.clone(),
            access_flags: cf.access_flags,
            fields: cf
                .fields
                .iter()
                .map(|f| meta(&f.name, &f.descriptor, f.access_flags))
                .collect(),
            methods: cf
                .methods
                .iter()
                .map(|m| meta(&m.name, &m.descriptor, m.access_flags))
                .collect(),
            origin: origin.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct StoreArchive {
    pub project: String,
    pub sources: Vec<ArchivedSource>,
    pub classfiles: Vec<ArchivedClass>,
    pub dependencies: Vec<DependencyClass>,
}

impl StoreArchive {
    /// Sorts every list so equal inputs serialize identically.
    pub fn normalize(&mut self) {
        self.sources.sort_by(|a, b| a.path.cmp(&b.path));
        self.classfiles.sort_by(|a, b| a.path.cmp(&b.path));
        self.dependencies
            .sort_by(|a, b| (&a.name, &a.origin).cmp(&(&b.name, &b.origin)));
    }
}

mod b64 {
    use base64::engine::general_purpose::STANDARD;
    use base64::Engine;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(bytes: &[u8], s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&STANDARD.encode(bytes))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<u8>, D::Error> {
        let text = String::deserialize(d)?;
        STANDARD.decode(text).map_err(serde::de::Error::custom)
    }
}
