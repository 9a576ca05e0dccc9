//! Classfile model, decoder and encoder.
//!
//! The decoder keeps every attribute it does not model as raw bytes, so
//! `ClassFile::to_bytes` reproduces the input image for well-formed files.

use std::fmt;

use super::descriptor::{parse_method_descriptor, MethodDescriptor};
use super::instr::{decode_instructions, Instruction, Operand};

pub const CLASSFILE_MAGIC: u32 = 0xCAFE_BABE;

/// Major version of Java 25, the most recent LTS release.
pub const DEFAULT_MAX_MAJOR: u16 = 69;

pub const ACC_PUBLIC: u16 = 0x0001;
pub const ACC_PRIVATE: u16 = 0x0002;
pub const ACC_PROTECTED: u16 = 0x0004;
pub const ACC_STATIC: u16 = 0x0008;
pub const ACC_FINAL: u16 = 0x0010;
pub const ACC_INTERFACE: u16 = 0x0200;
pub const ACC_ABSTRACT: u16 = 0x0400;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ClassFileError {
    #[error("bad magic number {0:#010x}")]
    BadMagic(u32),
    #[error("unsupported classfile version {major} (ceiling {ceiling})")]
    UnsupportedVersion { major: u16, ceiling: u16 },
    #[error("truncated input at offset {offset}")]
    TruncatedInput { offset: usize },
    #[error("malformed classfile: {0}")]
    Malformed(String),
}

type Result<T> = std::result::Result<T, ClassFileError>;

#[derive(Debug, Clone, Copy)]
pub struct ParseOptions {
    pub max_major: u16,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            max_major: DEFAULT_MAX_MAJOR,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Constant {
    /// Slot 0 and the second slot of long/double entries.
    Unusable,
    Utf8(Utf8Const),
    Integer(i32),
    Float(u32),
    Long(i64),
    Double(u64),
    Class {
        name_index: u16,
    },
    String {
        string_index: u16,
    },
    FieldRef {
        class_index: u16,
        name_and_type_index: u16,
    },
    MethodRef {
        class_index: u16,
        name_and_type_index: u16,
    },
    InterfaceMethodRef {
        class_index: u16,
        name_and_type_index: u16,
    },
    NameAndType {
        name_index: u16,
        descriptor_index: u16,
    },
    MethodHandle {
        reference_kind: u8,
        reference_index: u16,
    },
    MethodType {
        descriptor_index: u16,
    },
    Dynamic {
        bootstrap_method_attr_index: u16,
        name_and_type_index: u16,
    },
    InvokeDynamic {
        bootstrap_method_attr_index: u16,
        name_and_type_index: u16,
    },
    Module {
        name_index: u16,
    },
    Package {
        name_index: u16,
    },
}

/// A CONSTANT_Utf8 entry. `raw` holds the modified UTF-8 bytes as stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Utf8Const {
    pub text: String,
    pub raw: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConstantPool {
    entries: Vec<Constant>,
}

/// A resolved field or method reference.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MemberRef {
    pub class: String,
    pub name: String,
    pub descriptor: String,
}

impl ConstantPool {
    pub fn new(entries: Vec<Constant>) -> Self {
        ConstantPool { entries }
    }

    /// Number of slots including the unusable slot 0.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.len() <= 1
    }

    pub fn get(&self, index: u16) -> Option<&Constant> {
        match self.entries.get(index as usize) {
            None | Some(Constant::Unusable) => None,
            Some(c) => Some(c),
        }
    }

    pub fn entries(&self) -> &[Constant] {
        &self.entries
    }

    pub fn utf8(&self, index: u16) -> Option<&str> {
        match self.get(index)? {
            Constant::Utf8(u) => Some(&u.text),
            _ => None,
        }
    }

    pub fn class_name(&self, index: u16) -> Option<&str> {
        match self.get(index)? {
            Constant::Class { name_index } => self.utf8(*name_index),
            _ => None,
        }
    }

    pub fn name_and_type(&self, index: u16) -> Option<(&str, &str)> {
        match self.get(index)? {
            Constant::NameAndType {
                name_index,
                descriptor_index,
            } => Some((self.utf8(*name_index)?, self.utf8(*descriptor_index)?)),
            _ => None,
        }
    }

    /// Resolves a Fieldref, Methodref or InterfaceMethodref entry.
    pub fn member_ref(&self, index: u16) -> Option<MemberRef> {
        let (class_index, nat) = match self.get(index)? {
            Constant::FieldRef {
                class_index,
                name_and_type_index,
            }
            | Constant::MethodRef {
                class_index,
                name_and_type_index,
            }
            | Constant::InterfaceMethodRef {
                class_index,
                name_and_type_index,
            } => (*class_index, *name_and_type_index),
            _ => return None,
        };
        let (name, descriptor) = self.name_and_type(nat)?;
        Some(MemberRef {
            class: self.class_name(class_index)?.to_string(),
            name: name.to_string(),
            descriptor: descriptor.to_string(),
        })
    }

    /// Name and descriptor of an InvokeDynamic or Dynamic entry.
    pub fn dynamic_name_and_type(&self, index: u16) -> Option<(&str, &str)> {
        match self.get(index)? {
            Constant::InvokeDynamic {
                name_and_type_index, ..
            }
            | Constant::Dynamic {
                name_and_type_index, ..
            } => self.name_and_type(*name_and_type_index),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Attribute {
    pub name_index: u16,
    pub body: AttributeBody,
}

#[derive(Debug, Clone, PartialEq)]
pub enum AttributeBody {
    Code(CodeAttribute),
    LineNumberTable(Vec<LineNumber>),
    LocalVariableTable(Vec<LocalVariable>),
    Other(Vec<u8>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LineNumber {
    pub start_pc: u16,
    pub line: u16,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalVariable {
    pub start_pc: u16,
    pub length: u16,
    pub name_index: u16,
    pub descriptor_index: u16,
    pub index: u16,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExceptionHandler {
    pub start_pc: u16,
    pub end_pc: u16,
    pub handler_pc: u16,
    pub catch_type: u16,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CodeAttribute {
    pub max_stack: u16,
    pub max_locals: u16,
    pub code: Vec<u8>,
    pub exception_table: Vec<ExceptionHandler>,
    pub attributes: Vec<Attribute>,
    instructions: Vec<Instruction>,
}

impl CodeAttribute {
    pub fn instructions(&self) -> &[Instruction] {
        &self.instructions
    }

    /// Line-number entries from every LineNumberTable, sorted by start pc.
    pub fn line_numbers(&self) -> Vec<LineNumber> {
        let mut out: Vec<LineNumber> = self
            .attributes
            .iter()
            .filter_map(|a| match &a.body {
                AttributeBody::LineNumberTable(t) => Some(t.iter().copied()),
                _ => None,
            })
            .flatten()
            .collect();
        out.sort_by_key(|l| l.start_pc);
        out
    }

    pub fn local_variables(&self) -> impl Iterator<Item = &LocalVariable> {
        self.attributes
            .iter()
            .filter_map(|a| match &a.body {
                AttributeBody::LocalVariableTable(t) => Some(t.iter()),
                _ => None,
            })
            .flatten()
    }

    pub fn code_length(&self) -> u32 {
        self.code.len() as u32
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldInfo {
    pub access_flags: u16,
    pub name: String,
    pub descriptor: String,
    pub name_index: u16,
    pub descriptor_index: u16,
    pub attributes: Vec<Attribute>,
}

impl FieldInfo {
    pub fn is_static(&self) -> bool {
        self.access_flags & ACC_STATIC != 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MethodInfo {
    pub access_flags: u16,
    pub name: String,
    pub descriptor: String,
    pub name_index: u16,
    pub descriptor_index: u16,
    pub attributes: Vec<Attribute>,
    parsed_descriptor: MethodDescriptor,
}

impl MethodInfo {
    pub fn is_static(&self) -> bool {
        self.access_flags & ACC_STATIC != 0
    }

    pub fn signature(&self) -> &MethodDescriptor {
        &self.parsed_descriptor
    }

    pub fn code(&self) -> Option<&CodeAttribute> {
        self.attributes.iter().find_map(|a| match &a.body {
            AttributeBody::Code(c) => Some(c),
            _ => None,
        })
    }

    /// Local slots taken by the receiver and parameters.
    pub fn parameter_slots(&self) -> u16 {
        let receiver = if self.is_static() { 0 } else { 1 };
        receiver
            + self
                .parsed_descriptor
                .params
                .iter()
                .map(|p| p.width() as u16)
                .sum::<u16>()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassFile {
    pub minor_version: u16,
    pub major_version: u16,
    pub constant_pool: ConstantPool,
    pub access_flags: u16,
    pub this_class: u16,
    pub super_class: u16,
    pub interfaces: Vec<u16>,
    pub fields: Vec<FieldInfo>,
    pub methods: Vec<MethodInfo>,
    pub attributes: Vec<Attribute>,
    /// Internal (slash-separated) name of this class.
    pub binary_name: String,
    pub superclass: Option<String>,
    pub interface_names: Vec<String>,
}

impl ClassFile {
    pub fn is_interface(&self) -> bool {
        self.access_flags & ACC_INTERFACE != 0
    }

    pub fn method(&self, name: &str, descriptor: &str) -> Option<&MethodInfo> {
        self.methods
            .iter()
            .find(|m| m.name == name && m.descriptor == descriptor)
    }

    pub fn field(&self, name: &str) -> Option<&FieldInfo> {
        self.fields.iter().find(|f| f.name == name)
    }

    /// Re-encodes the decoded structure.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::default();
        w.u4(CLASSFILE_MAGIC);
        w.u2(self.minor_version);
        w.u2(self.major_version);
        w.u2(self.constant_pool.len() as u16);
        for c in self.constant_pool.entries().iter().skip(1) {
            write_constant(&mut w, c);
        }
        w.u2(self.access_flags);
        w.u2(self.this_class);
        w.u2(self.super_class);
        w.u2(self.interfaces.len() as u16);
        for i in &self.interfaces {
            w.u2(*i);
        }
        w.u2(self.fields.len() as u16);
        for f in &self.fields {
            w.u2(f.access_flags);
            w.u2(f.name_index);
            w.u2(f.descriptor_index);
            write_attributes(&mut w, &f.attributes);
        }
        w.u2(self.methods.len() as u16);
        for m in &self.methods {
            w.u2(m.access_flags);
            w.u2(m.name_index);
            w.u2(m.descriptor_index);
            write_attributes(&mut w, &m.attributes);
        }
        write_attributes(&mut w, &self.attributes);
        w.buf
    }
}

impl fmt::Display for ClassFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "class {} ({} fields, {} methods)",
            self.binary_name,
            self.fields.len(),
            self.methods.len()
        )
    }
}

pub fn parse_classfile(bytes: &[u8]) -> Result<ClassFile> {
    parse_classfile_with(bytes, &ParseOptions::default())
}

pub fn parse_classfile_with(bytes: &[u8], opts: &ParseOptions) -> Result<ClassFile> {
    let mut r = Reader::new(bytes);
    let magic = r.u4()?;
    if magic != CLASSFILE_MAGIC {
        return Err(ClassFileError::BadMagic(magic));
    }
    let minor_version = r.u2()?;
    let major_version = r.u2()?;
    if major_version > opts.max_major {
        return Err(ClassFileError::UnsupportedVersion {
            major: major_version,
            ceiling: opts.max_major,
        });
    }
    let constant_pool = read_constant_pool(&mut r)?;
    let access_flags = r.u2()?;
    let this_class = r.u2()?;
    let super_class = r.u2()?;
    let interface_count = r.u2()?;
    let mut interfaces = Vec::with_capacity(interface_count as usize);
    for _ in 0..interface_count {
        interfaces.push(r.u2()?);
    }

    let binary_name = constant_pool
        .class_name(this_class)
        .ok_or_else(|| malformed("this_class is not a Class entry"))?
        .to_string();
    let superclass = if super_class == 0 {
        None
    } else {
        Some(
            constant_pool
                .class_name(super_class)
                .ok_or_else(|| malformed("super_class is not a Class entry"))?
                .to_string(),
        )
    };
    let interface_names = interfaces
        .iter()
        .map(|i| {
            constant_pool
                .class_name(*i)
                .map(str::to_string)
                .ok_or_else(|| malformed("interface is not a Class entry"))
        })
        .collect::<Result<Vec<_>>>()?;

    let field_count = r.u2()?;
    let mut fields = Vec::with_capacity(field_count.min(1024) as usize);
    for _ in 0..field_count {
        let access_flags = r.u2()?;
        let name_index = r.u2()?;
        let descriptor_index = r.u2()?;
        let attributes = read_attributes(&mut r, &constant_pool)?;
        fields.push(FieldInfo {
            access_flags,
            name: utf8_at(&constant_pool, name_index)?,
            descriptor: utf8_at(&constant_pool, descriptor_index)?,
            name_index,
            descriptor_index,
            attributes,
        });
    }

    let method_count = r.u2()?;
    let mut methods = Vec::with_capacity(method_count.min(1024) as usize);
    for _ in 0..method_count {
        let access_flags = r.u2()?;
        let name_index = r.u2()?;
        let descriptor_index = r.u2()?;
        let attributes = read_attributes(&mut r, &constant_pool)?;
        let name = utf8_at(&constant_pool, name_index)?;
        let descriptor = utf8_at(&constant_pool, descriptor_index)?;
        let parsed_descriptor =
            parse_method_descriptor(&descriptor).map_err(|e| malformed(&format!("method {name}: {e}")))?;
        let method = MethodInfo {
            access_flags,
            name,
            descriptor,
            name_index,
            descriptor_index,
            attributes,
            parsed_descriptor,
        };
        if let Some(code) = method.code() {
            if code.max_locals < method.parameter_slots() {
                return Err(malformed(&format!(
                    "method {}: max_locals {} below parameter slots {}",
                    method.name,
                    code.max_locals,
                    method.parameter_slots()
                )));
            }
        }
        methods.push(method);
    }

    let attributes = read_attributes(&mut r, &constant_pool)?;
    if !r.is_empty() {
        return Err(malformed("trailing bytes after class attributes"));
    }

    Ok(ClassFile {
        minor_version,
        major_version,
        constant_pool,
        access_flags,
        this_class,
        super_class,
        interfaces,
        fields,
        methods,
        attributes,
        binary_name,
        superclass,
        interface_names,
    })
}

fn malformed(msg: &str) -> ClassFileError {
    ClassFileError::Malformed(msg.to_string())
}

fn utf8_at(pool: &ConstantPool, index: u16) -> Result<String> {
    pool.utf8(index)
        .map(str::to_string)
        .ok_or_else(|| malformed(&format!("constant #{index} is not Utf8")))
}

struct Reader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn new(data: &'a [u8]) -> Self {
        Reader { data, pos: 0 }
    }

    fn is_empty(&self) -> bool {
        self.pos >= self.data.len()
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|end| *end <= self.data.len())
            .ok_or(ClassFileError::TruncatedInput { offset: self.pos })?;
        let out = &self.data[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    fn u1(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u2(&mut self) -> Result<u16> {
        let b = self.take(2)?;
        Ok(u16::from_be_bytes([b[0], b[1]]))
    }

    fn u4(&mut self) -> Result<u32> {
        let b = self.take(4)?;
        Ok(u32::from_be_bytes([b[0], b[1], b[2], b[3]]))
    }

    fn u8(&mut self) -> Result<u64> {
        let hi = self.u4()? as u64;
        let lo = self.u4()? as u64;
        Ok(hi << 32 | lo)
    }
}

fn read_constant_pool(r: &mut Reader<'_>) -> Result<ConstantPool> {
    let count = r.u2()?;
    if count == 0 {
        return Err(malformed("constant_pool_count is zero"));
    }
    let mut entries = Vec::with_capacity(count as usize);
    entries.push(Constant::Unusable);
    while entries.len() < count as usize {
        let tag = r.u1()?;
        let c = match tag {
            1 => {
                let len = r.u2()? as usize;
                let raw = r.take(len)?.to_vec();
                Constant::Utf8(Utf8Const {
                    text: decode_modified_utf8(&raw),
                    raw,
                })
            }
            3 => Constant::Integer(r.u4()? as i32),
            4 => Constant::Float(r.u4()?),
            5 => Constant::Long(r.u8()? as i64),
            6 => Constant::Double(r.u8()?),
            7 => Constant::Class { name_index: r.u2()? },
            8 => Constant::String { string_index: r.u2()? },
            9 => Constant::FieldRef {
                class_index: r.u2()?,
                name_and_type_index: r.u2()?,
            },
            10 => Constant::MethodRef {
                class_index: r.u2()?,
                name_and_type_index: r.u2()?,
            },
            11 => Constant::InterfaceMethodRef {
                class_index: r.u2()?,
                name_and_type_index: r.u2()?,
            },
            12 => Constant::NameAndType {
                name_index: r.u2()?,
                descriptor_index: r.u2()?,
            },
            15 => Constant::MethodHandle {
                reference_kind: r.u1()?,
                reference_index: r.u2()?,
            },
            16 => Constant::MethodType {
                descriptor_index: r.u2()?,
            },
            17 => Constant::Dynamic {
                bootstrap_method_attr_index: r.u2()?,
                name_and_type_index: r.u2()?,
            },
            18 => Constant::InvokeDynamic {
                bootstrap_method_attr_index: r.u2()?,
                name_and_type_index: r.u2()?,
            },
            19 => Constant::Module { name_index: r.u2()? },
            20 => Constant::Package { name_index: r.u2()? },
            other => return Err(malformed(&format!("unknown constant tag {other}"))),
        };
        let wide = matches!(c, Constant::Long(_) | Constant::Double(_));
        entries.push(c);
        if wide {
            if entries.len() >= count as usize {
                return Err(malformed("long/double constant in last pool slot"));
            }
            entries.push(Constant::Unusable);
        }
    }
    Ok(ConstantPool { entries })
}

fn read_attributes(r: &mut Reader<'_>, pool: &ConstantPool) -> Result<Vec<Attribute>> {
    let count = r.u2()?;
    let mut out = Vec::with_capacity(count.min(64) as usize);
    for _ in 0..count {
        let name_index = r.u2()?;
        let len = r.u4()? as usize;
        let data = r.take(len)?;
        let name = pool
            .utf8(name_index)
            .ok_or_else(|| malformed(&format!("attribute name #{name_index} is not Utf8")))?;
        let body = match name {
            "Code" => AttributeBody::Code(read_code(data, pool)?),
            "LineNumberTable" => AttributeBody::LineNumberTable(read_line_numbers(data)?),
            "LocalVariableTable" => AttributeBody::LocalVariableTable(read_local_variables(data)?),
            _ => AttributeBody::Other(data.to_vec()),
        };
        out.push(Attribute { name_index, body });
    }
    Ok(out)
}

fn read_code(data: &[u8], pool: &ConstantPool) -> Result<CodeAttribute> {
    let mut r = Reader::new(data);
    let max_stack = r.u2()?;
    let max_locals = r.u2()?;
    let code_len = r.u4()? as usize;
    let code = r.take(code_len)?.to_vec();
    let handler_count = r.u2()?;
    let mut exception_table = Vec::with_capacity(handler_count as usize);
    for _ in 0..handler_count {
        exception_table.push(ExceptionHandler {
            start_pc: r.u2()?,
            end_pc: r.u2()?,
            handler_pc: r.u2()?,
            catch_type: r.u2()?,
        });
    }
    let attributes = read_attributes(&mut r, pool)?;
    if !r.is_empty() {
        return Err(malformed("trailing bytes in Code attribute"));
    }
    let instructions = decode_instructions(&code).map_err(|e| malformed(&format!("bytecode: {e}")))?;

    for ins in &instructions {
        if let Some(index) = ins.operand.constant_index() {
            if pool.get(index).is_none() {
                return Err(malformed(&format!(
                    "instruction at {} references constant #{index} out of range",
                    ins.offset
                )));
            }
        }
        if let Operand::Local { index, .. } | Operand::Iinc { index, .. } = ins.operand {
            if index >= max_locals {
                return Err(malformed(&format!(
                    "instruction at {} uses local {index} >= max_locals {max_locals}",
                    ins.offset
                )));
            }
        }
    }
    let code_attr = CodeAttribute {
        max_stack,
        max_locals,
        code,
        exception_table,
        attributes,
        instructions,
    };
    for ln in code_attr.line_numbers() {
        let pc = ln.start_pc as u32;
        if code_attr.instructions.binary_search_by_key(&pc, |i| i.offset).is_err() {
            return Err(malformed(&format!(
                "line-number entry at pc {pc} is not an instruction boundary"
            )));
        }
    }
    Ok(code_attr)
}

fn read_line_numbers(data: &[u8]) -> Result<Vec<LineNumber>> {
    let mut r = Reader::new(data);
    let n = r.u2()?;
    let mut out = Vec::with_capacity(n as usize);
    for _ in 0..n {
        out.push(LineNumber {
            start_pc: r.u2()?,
            line: r.u2()?,
        });
    }
    if !r.is_empty() {
        return Err(malformed("trailing bytes in LineNumberTable"));
    }
    Ok(out)
}

fn read_local_variables(data: &[u8]) -> Result<Vec<LocalVariable>> {
    let mut r = Reader::new(data);
    let n = r.u2()?;
    let mut out = Vec::with_capacity(n as usize);
    for _ in 0..n {
        out.push(LocalVariable {
            start_pc: r.u2()?,
            length: r.u2()?,
            name_index: r.u2()?,
            descriptor_index: r.u2()?,
            index: r.u2()?,
        });
    }
    if !r.is_empty() {
        return Err(malformed("trailing bytes in LocalVariableTable"));
    }
    Ok(out)
}

/// Decodes modified UTF-8. Unpaired surrogates and invalid sequences become
/// U+FFFD; the raw bytes are kept alongside for re-encoding.
pub fn decode_modified_utf8(raw: &[u8]) -> String {
    let mut units: Vec<u16> = Vec::with_capacity(raw.len());
    let mut i = 0;
    while i < raw.len() {
        let b = raw[i];
        if b & 0x80 == 0 {
            units.push(b as u16);
            i += 1;
        } else if b & 0xE0 == 0xC0 && i + 1 < raw.len() && raw[i + 1] & 0xC0 == 0x80 {
            units.push(((b as u16 & 0x1F) << 6) | (raw[i + 1] as u16 & 0x3F));
            i += 2;
        } else if b & 0xF0 == 0xE0 && i + 2 < raw.len() && raw[i + 1] & 0xC0 == 0x80 && raw[i + 2] & 0xC0 == 0x80 {
            units.push(((b as u16 & 0x0F) << 12) | ((raw[i + 1] as u16 & 0x3F) << 6) | (raw[i + 2] as u16 & 0x3F));
            i += 3;
        } else {
            units.push(0xFFFD);
            i += 1;
        }
    }
    String::from_utf16_lossy(&units)
}

#[derive(Default)]
struct Writer {
    buf: Vec<u8>,
}

impl Writer {
    fn u1(&mut self, v: u8) {
        self.buf.push(v);
    }
    fn u2(&mut self, v: u16) {
        self.buf.extend_from_slice(&v.to_be_bytes());
    }
    fn u4(&mut self, v: u32) {
        self.buf.extend_from_slice(&v.to_be_bytes());
    }
    fn u8(&mut self, v: u64) {
        self.buf.extend_from_slice(&v.to_be_bytes());
    }
}

fn write_constant(w: &mut Writer, c: &Constant) {
    match c {
        Constant::Unusable => {}
        Constant::Utf8(u) => {
            w.u1(1);
            w.u2(u.raw.len() as u16);
            w.buf.extend_from_slice(&u.raw);
        }
        Constant::Integer(v) => {
            w.u1(3);
            w.u4(*v as u32);
        }
        Constant::Float(v) => {
            w.u1(4);
            w.u4(*v);
        }
        Constant::Long(v) => {
            w.u1(5);
            w.u8(*v as u64);
        }
        Constant::Double(v) => {
            w.u1(6);
            w.u8(*v);
        }
        Constant::Class { name_index } => {
            w.u1(7);
            w.u2(*name_index);
        }
        Constant::String { string_index } => {
            w.u1(8);
            w.u2(*string_index);
        }
        Constant::FieldRef {
            class_index,
            name_and_type_index,
        } => {
            w.u1(9);
            w.u2(*class_index);
            w.u2(*name_and_type_index);
        }
        Constant::MethodRef {
            class_index,
            name_and_type_index,
        } => {
            w.u1(10);
            w.u2(*class_index);
            w.u2(*name_and_type_index);
        }
        Constant::InterfaceMethodRef {
            class_index,
            name_and_type_index,
        } => {
            w.u1(11);
            w.u2(*class_index);
            w.u2(*name_and_type_index);
        }
        Constant::NameAndType {
            name_index,
            descriptor_index,
        } => {
            w.u1(12);
            w.u2(*name_index);
            w.u2(*descriptor_index);
        }
        Constant::MethodHandle {
            reference_kind,
            reference_index,
        } => {
            w.u1(15);
            w.u1(*reference_kind);
            w.u2(*reference_index);
        }
        Constant::MethodType { descriptor_index } => {
            w.u1(16);
            w.u2(*descriptor_index);
        }
        Constant::Dynamic {
            bootstrap_method_attr_index,
            name_and_type_index,
        } => {
            w.u1(17);
            w.u2(*bootstrap_method_attr_index);
            w.u2(*name_and_type_index);
        }
        Constant::InvokeDynamic {
            bootstrap_method_attr_index,
            name_and_type_index,
        } => {
            w.u1(18);
            w.u2(*bootstrap_method_attr_index);
            w.u2(*name_and_type_index);
        }
        Constant::Module { name_index } => {
            w.u1(19);
            w.u2(*name_index);
        }
        Constant::Package { name_index } => {
            w.u1(20);
            w.u2(*name_index);
        }
    }
}

fn write_attributes(w: &mut Writer, attrs: &[Attribute]) {
    w.u2(attrs.len() as u16);
    for a in attrs {
        w.u2(a.name_index);
        let mut body = Writer::default();
        match &a.body {
            AttributeBody::Code(c) => {
                body.u2(c.max_stack);
                body.u2(c.max_locals);
                body.u4(c.code.len() as u32);
                body.buf.extend_from_slice(&c.code);
                body.u2(c.exception_table.len() as u16);
                for h in &c.exception_table {
                    body.u2(h.start_pc);
                    body.u2(h.end_pc);
                    body.u2(h.handler_pc);
                    body.u2(h.catch_type);
                }
                write_attributes(&mut body, &c.attributes);
            }
            AttributeBody::LineNumberTable(t) => {
                body.u2(t.len() as u16);
                for l in t {
                    body.u2(l.start_pc);
                    body.u2(l.line);
                }
            }
            AttributeBody::LocalVariableTable(t) => {
                body.u2(t.len() as u16);
                for v in t {
                    body.u2(v.start_pc);
                    body.u2(v.length);
                    body.u2(v.name_index);
                    body.u2(v.descriptor_index);
                    body.u2(v.index);
                }
            }
            AttributeBody::Other(raw) => body.buf.extend_from_slice(raw),
        }
        w.u4(body.buf.len() as u32);
        w.buf.extend_from_slice(&body.buf);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_input_is_truncated() {
        assert_eq!(parse_classfile(&[]), Err(ClassFileError::TruncatedInput { offset: 0 }));
    }

    #[test]
    fn wrong_magic() {
        let err = parse_classfile(&[0xDE, 0xAD, 0xBE, 0xEF, 0, 0, 0, 52]).unwrap_err();
        assert_eq!(err, ClassFileError::BadMagic(0xDEAD_BEEF));
    }

    #[test]
    fn version_ceiling_is_configurable() {
        let bytes = [0xCA, 0xFE, 0xBA, 0xBE, 0, 0, 0, 70];
        assert_eq!(
            parse_classfile(&bytes).unwrap_err(),
            ClassFileError::UnsupportedVersion {
                major: 70,
                ceiling: DEFAULT_MAX_MAJOR
            }
        );
        let err = parse_classfile_with(&bytes, &ParseOptions { max_major: 70 }).unwrap_err();
        assert!(matches!(err, ClassFileError::TruncatedInput { .. }));
    }

    #[test]
    fn modified_utf8_null_and_supplementary() {
        assert_eq!(decode_modified_utf8(&[0xC0, 0x80]), "\0");
        // U+1F600 as a surrogate pair, each half three bytes
        let raw = [0xED, 0xA0, 0xBD, 0xED, 0xB8, 0x80];
        assert_eq!(decode_modified_utf8(&raw), "\u{1F600}");
    }
}
