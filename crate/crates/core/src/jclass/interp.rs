//! Type-level abstract interpretation of method bytecode.
//!
//! Values are ignored; only the types on the operand stack and in local
//! slots are tracked. Exception handlers are not entered.

use std::collections::{BTreeMap, BTreeSet};

use super::classfile::{ClassFile, Constant, MethodInfo};
use super::descriptor::{parse_field_descriptor, parse_method_descriptor, MethodDescriptor};
use super::hierarchy::{is_assignable, join, ClassHierarchy};
use super::instr::{op, Instruction, Operand};
use super::types::{Primitive, TypeDesc, JAVA_LANG_OBJECT};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InterpError {
    #[error("method {0} has no code attribute")]
    NoCode(String),
    #[error("offset {0} is not an instruction boundary")]
    BadOffset(u32),
    #[error("malformed bytecode at offset {offset}: {reason}")]
    MalformedBytecode { offset: u32, reason: String },
}

type Result<T> = std::result::Result<T, InterpError>;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Word {
    Unset,
    Value(TypeDesc),
    /// Upper half of a long or double.
    Hi,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Frame {
    locals: Vec<Word>,
    stack: Vec<Word>,
}

/// Fixpoint of the interpretation: the incoming state of every reachable
/// instruction.
#[derive(Debug, Clone)]
pub struct Analysis {
    instructions: Vec<Instruction>,
    states: Vec<Option<Frame>>,
    code_len: u32,
    pub warnings: Vec<String>,
}

impl Analysis {
    /// Types of bound local slots just before the instruction at `upto`.
    /// `upto` equal to the code length means "at method exit": the join of
    /// the states reaching every return or throw. Unreachable offsets yield
    /// an empty map.
    pub fn locals_at<H: ClassHierarchy + ?Sized>(&self, upto: u32, h: &H) -> Result<BTreeMap<u16, TypeDesc>> {
        let frame = if upto == self.code_len {
            let mut acc: Option<Frame> = None;
            for (i, ins) in self.instructions.iter().enumerate() {
                let terminal = (op::IRETURN..=op::RETURN).contains(&ins.opcode) || ins.opcode == op::ATHROW;
                if let (true, Some(f)) = (terminal, &self.states[i]) {
                    acc = Some(match acc {
                        None => f.clone(),
                        Some(a) => join_locals_only(h, &a, f),
                    });
                }
            }
            acc
        } else {
            let idx = self
                .instructions
                .binary_search_by_key(&upto, |i| i.offset)
                .map_err(|_| InterpError::BadOffset(upto))?;
            self.states[idx].clone()
        };
        let mut out = BTreeMap::new();
        if let Some(f) = frame {
            for (slot, w) in f.locals.iter().enumerate() {
                if let Word::Value(t) = w {
                    out.insert(slot as u16, t.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.instructions
    }
}

/// Runs the interpretation to a fixpoint over the whole method.
pub fn analyze<H: ClassHierarchy + ?Sized>(method: &MethodInfo, class: &ClassFile, h: &H) -> Result<Analysis> {
    let code = method.code().ok_or_else(|| InterpError::NoCode(method.name.clone()))?;
    let instructions = code.instructions().to_vec();
    let mut interp = Interp {
        class,
        h,
        warnings: Vec::new(),
        max_locals: code.max_locals as usize,
    };
    let entry = interp.entry_frame(method)?;
    let mut states: Vec<Option<Frame>> = vec![None; instructions.len()];
    if instructions.is_empty() {
        return Ok(Analysis {
            instructions,
            states,
            code_len: code.code_length(),
            warnings: interp.warnings,
        });
    }
    states[0] = Some(entry);
    let mut work: BTreeSet<usize> = BTreeSet::from([0]);
    let budget = 64 * instructions.len() + 64;
    let mut steps = 0usize;
    while let Some(idx) = work.pop_first() {
        steps += 1;
        if steps > budget {
            return Err(malformed(instructions[idx].offset, "no fixpoint reached"));
        }
        let ins = &instructions[idx];
        let frame = states[idx].clone().expect("queued states are set");
        let out = interp.step(&frame, ins)?;
        let mut succ: Vec<usize> = Vec::new();
        for t in ins.branch_targets() {
            succ.push(index_of(&instructions, t).ok_or_else(|| malformed(ins.offset, "bad target"))?);
        }
        if !ins.ends_flow() {
            if idx + 1 >= instructions.len() {
                return Err(malformed(ins.offset, "control falls off the end of the code"));
            }
            succ.push(idx + 1);
        }
        for s in succ {
            let merged = match &states[s] {
                None => out.clone(),
                Some(existing) => join_frames(h, existing, &out)
                    .ok_or_else(|| malformed(instructions[s].offset, "operand stack mismatch at merge"))?,
            };
            if states[s].as_ref() != Some(&merged) {
                states[s] = Some(merged);
                work.insert(s);
            }
        }
    }
    Ok(Analysis {
        instructions,
        states,
        code_len: code.code_length(),
        warnings: interp.warnings,
    })
}

/// Types of the bound local slots before the instruction at `upto`.
/// Wide values occupy two slots; only the lower slot is reported.
pub fn infer_local_types<H: ClassHierarchy + ?Sized>(
    method: &MethodInfo,
    class: &ClassFile,
    upto: u32,
    h: &H,
) -> Result<BTreeMap<u16, TypeDesc>> {
    let analysis = analyze(method, class, h)?;
    for w in &analysis.warnings {
        log::warn!("{}.{}: {w}", class.binary_name, method.name);
    }
    analysis.locals_at(upto, h)
}

fn index_of(ins: &[Instruction], offset: u32) -> Option<usize> {
    ins.binary_search_by_key(&offset, |i| i.offset).ok()
}

fn malformed(offset: u32, reason: &str) -> InterpError {
    InterpError::MalformedBytecode {
        offset,
        reason: reason.to_string(),
    }
}

fn join_word<H: ClassHierarchy + ?Sized>(h: &H, a: &Word, b: &Word) -> Word {
    match (a, b) {
        (Word::Value(x), Word::Value(y)) => {
            if x.width() != y.width() {
                Word::Unset
            } else {
                Word::Value(join(h, x, y))
            }
        }
        (Word::Hi, Word::Hi) => Word::Hi,
        _ => Word::Unset,
    }
}

fn fix_halves(words: &mut [Word]) {
    for i in 0..words.len() {
        let wide_ok =
            matches!(&words[i], Word::Value(t) if t.width() == 2) && matches!(words.get(i + 1), Some(Word::Hi));
        if let Word::Value(t) = &words[i] {
            if t.width() == 2 && !wide_ok {
                words[i] = Word::Unset;
            }
        }
        if words[i] == Word::Hi {
            let prev_ok = i > 0 && matches!(&words[i - 1], Word::Value(t) if t.width() == 2);
            if !prev_ok {
                words[i] = Word::Unset;
            }
        }
    }
}

fn join_locals_only<H: ClassHierarchy + ?Sized>(h: &H, a: &Frame, b: &Frame) -> Frame {
    let mut locals: Vec<Word> = a
        .locals
        .iter()
        .zip(&b.locals)
        .map(|(x, y)| join_word(h, x, y))
        .collect();
    fix_halves(&mut locals);
    Frame {
        locals,
        stack: Vec::new(),
    }
}

fn join_frames<H: ClassHierarchy + ?Sized>(h: &H, a: &Frame, b: &Frame) -> Option<Frame> {
    if a.stack.len() != b.stack.len() {
        return None;
    }
    let mut stack = Vec::with_capacity(a.stack.len());
    for (x, y) in a.stack.iter().zip(&b.stack) {
        match (x, y) {
            (Word::Hi, Word::Hi) => stack.push(Word::Hi),
            (Word::Value(p), Word::Value(q)) if p.width() == q.width() => stack.push(Word::Value(join(h, p, q))),
            _ => return None,
        }
    }
    let mut f = join_locals_only(h, a, b);
    f.stack = stack;
    Some(f)
}

struct Interp<'a, H: ?Sized> {
    class: &'a ClassFile,
    h: &'a H,
    warnings: Vec<String>,
    max_locals: usize,
}

struct Exec<'f> {
    frame: &'f mut Frame,
    offset: u32,
}

impl Exec<'_> {
    fn push(&mut self, t: TypeDesc) {
        let wide = t.width() == 2;
        self.frame.stack.push(Word::Value(t));
        if wide {
            self.frame.stack.push(Word::Hi);
        }
    }

    fn pop(&mut self) -> Result<TypeDesc> {
        match self.frame.stack.pop() {
            None => Err(malformed(self.offset, "operand stack underflow")),
            Some(Word::Hi) => match self.frame.stack.pop() {
                Some(Word::Value(t)) if t.width() == 2 => Ok(t),
                _ => Err(malformed(self.offset, "inconsistent value widths on stack")),
            },
            Some(Word::Value(t)) if t.width() == 1 => Ok(t),
            Some(_) => Err(malformed(self.offset, "inconsistent value widths on stack")),
        }
    }

    fn pop_n(&mut self, n: usize) -> Result<()> {
        for _ in 0..n {
            self.pop()?;
        }
        Ok(())
    }

    fn pop_words(&mut self, n: usize) -> Result<Vec<Word>> {
        if self.frame.stack.len() < n {
            return Err(malformed(self.offset, "operand stack underflow"));
        }
        let at = self.frame.stack.len() - n;
        Ok(self.frame.stack.split_off(at))
    }

    /// Copies the top `n` words and inserts them below the next `m` words.
    fn dup_x(&mut self, n: usize, m: usize) -> Result<()> {
        let below = self.pop_words(n + m)?;
        let top = below[m..].to_vec();
        self.frame.stack.extend(top.iter().cloned());
        self.frame.stack.extend(below);
        self.check_stack()
    }

    fn check_stack(&self) -> Result<()> {
        let s = &self.frame.stack;
        for (i, w) in s.iter().enumerate() {
            let ok = match w {
                Word::Hi => i > 0 && matches!(&s[i - 1], Word::Value(t) if t.width() == 2),
                Word::Value(t) if t.width() == 2 => matches!(s.get(i + 1), Some(Word::Hi)),
                Word::Value(_) => true,
                Word::Unset => false,
            };
            if !ok {
                return Err(malformed(self.offset, "stack operation splits a wide value"));
            }
        }
        Ok(())
    }

    fn load(&mut self, index: u16, expect: Option<Primitive>, reference: bool) -> Result<()> {
        let t = match self.frame.locals.get(index as usize) {
            Some(Word::Value(t)) => t.clone(),
            Some(_) => return Err(malformed(self.offset, "read of an unset local")),
            None => return Err(malformed(self.offset, "local index beyond max_locals")),
        };
        let t = match (expect, reference) {
            (_, true) => {
                if !(t.is_reference() || matches!(t, TypeDesc::Uninitialized { .. } | TypeDesc::Top)) {
                    return Err(malformed(self.offset, "aload of a primitive local"));
                }
                t
            }
            (Some(p), false) => match &t {
                TypeDesc::Primitive { prim } if *prim == p => t,
                TypeDesc::Primitive { prim } if p == Primitive::Int && prim.is_int_category() => t,
                TypeDesc::Top if p.is_wide() => return Err(malformed(self.offset, "inconsistent slot widths")),
                TypeDesc::Top => TypeDesc::prim(p),
                _ => return Err(malformed(self.offset, "load type does not match local")),
            },
            (None, false) => t,
        };
        self.push(t);
        Ok(())
    }

    fn store(&mut self, index: u16, t: TypeDesc, max_locals: usize) -> Result<()> {
        let n = index as usize;
        let w = t.width() as usize;
        if n + w > max_locals {
            return Err(malformed(self.offset, "local index beyond max_locals"));
        }
        let locals = &mut self.frame.locals;
        for p in n..n + w {
            match locals[p] {
                Word::Hi if p > 0 => locals[p - 1] = Word::Unset,
                Word::Value(ref v) if v.width() == 2 && p + 1 < locals.len() => locals[p + 1] = Word::Unset,
                _ => {}
            }
        }
        locals[n] = Word::Value(t);
        if w == 2 {
            locals[n + 1] = Word::Hi;
        }
        Ok(())
    }

    fn replace_uninitialized(&mut self, from: &TypeDesc, to: &TypeDesc) {
        for w in self.frame.locals.iter_mut().chain(self.frame.stack.iter_mut()) {
            if let Word::Value(t) = w {
                if t == from {
                    *t = to.clone();
                }
            }
        }
    }
}

impl<H: ClassHierarchy + ?Sized> Interp<'_, H> {
    fn entry_frame(&mut self, method: &MethodInfo) -> Result<Frame> {
        let mut frame = Frame {
            locals: vec![Word::Unset; self.max_locals],
            stack: Vec::new(),
        };
        let mut ex = Exec {
            frame: &mut frame,
            offset: 0,
        };
        let mut slot = 0u16;
        if !method.is_static() {
            let this = if method.name == "<init>" && self.class.binary_name != JAVA_LANG_OBJECT {
                TypeDesc::Uninitialized {
                    class: self.class.binary_name.clone(),
                    site: None,
                }
            } else {
                TypeDesc::object(self.class.binary_name.clone())
            };
            ex.store(0, this, self.max_locals)?;
            slot = 1;
        }
        for p in &method.signature().params {
            ex.store(slot, p.clone(), self.max_locals)?;
            slot += p.width() as u16;
        }
        Ok(frame)
    }

    fn warn(&mut self, offset: u32, msg: String) {
        self.warnings.push(format!("offset {offset}: {msg}"));
    }

    fn class_type(&mut self, index: u16, offset: u32) -> TypeDesc {
        match self
            .class
            .constant_pool
            .class_name(index)
            .and_then(TypeDesc::from_class_constant)
        {
            Some(t) => t,
            None => {
                self.warn(offset, format!("unresolvable class constant #{index}"));
                TypeDesc::Top
            }
        }
    }

    fn field_type(&mut self, index: u16, offset: u32) -> Result<TypeDesc> {
        let r = self
            .class
            .constant_pool
            .member_ref(index)
            .ok_or_else(|| malformed(offset, "field instruction without a field reference"))?;
        match parse_field_descriptor(&r.descriptor) {
            Ok(t) => Ok(t),
            Err(_) => Err(malformed(offset, "bad field descriptor")),
        }
    }

    fn method_ref(&mut self, ins: &Instruction) -> Result<(String, String, MethodDescriptor)> {
        let index = ins.operand.constant_index().unwrap_or(0);
        let pool = &self.class.constant_pool;
        let (class, name, desc) = if ins.opcode == op::INVOKEDYNAMIC {
            let (n, d) = pool
                .dynamic_name_and_type(index)
                .ok_or_else(|| malformed(ins.offset, "invokedynamic without call site"))?;
            (String::new(), n.to_string(), d.to_string())
        } else {
            let r = pool
                .member_ref(index)
                .ok_or_else(|| malformed(ins.offset, "invoke without a method reference"))?;
            (r.class, r.name, r.descriptor)
        };
        let md = parse_method_descriptor(&desc).map_err(|_| malformed(ins.offset, "bad method descriptor"))?;
        Ok((class, name, md))
    }

    fn ldc_type(&mut self, index: u16, offset: u32) -> Result<TypeDesc> {
        let c = self.class.constant_pool.get(index).cloned();
        Ok(match c {
            Some(Constant::Integer(_)) => TypeDesc::int(),
            Some(Constant::Float(_)) => TypeDesc::prim(Primitive::Float),
            Some(Constant::Long(_)) => TypeDesc::prim(Primitive::Long),
            Some(Constant::Double(_)) => TypeDesc::prim(Primitive::Double),
            Some(Constant::String { .. }) => TypeDesc::object("java/lang/String"),
            Some(Constant::Class { .. }) => TypeDesc::object("java/lang/Class"),
            Some(Constant::MethodType { .. }) => TypeDesc::object("java/lang/invoke/MethodType"),
            Some(Constant::MethodHandle { .. }) => TypeDesc::object("java/lang/invoke/MethodHandle"),
            Some(Constant::Dynamic { .. }) => {
                let d = self
                    .class
                    .constant_pool
                    .dynamic_name_and_type(index)
                    .map(|(_, d)| d.to_string());
                match d.as_deref().map(parse_field_descriptor) {
                    Some(Ok(t)) => t,
                    _ => {
                        self.warn(offset, format!("unresolvable dynamic constant #{index}"));
                        TypeDesc::Top
                    }
                }
            }
            _ => return Err(malformed(offset, "ldc of a non-loadable constant")),
        })
    }

    fn step(&mut self, input: &Frame, ins: &Instruction) -> Result<Frame> {
        let mut frame = input.clone();
        let max_locals = self.max_locals;
        let mut ex = Exec {
            frame: &mut frame,
            offset: ins.offset,
        };
        use Primitive::*;
        let opc = ins.opcode;
        let cat = |i: u8| [Int, Long, Float, Double][(i % 4) as usize];
        match opc {
            0x00 => {}
            op::ACONST_NULL => ex.push(TypeDesc::Null),
            op::ICONST_M1..=op::ICONST_5 | op::BIPUSH | op::SIPUSH => ex.push(TypeDesc::int()),
            op::LCONST_0 | op::LCONST_1 => ex.push(TypeDesc::prim(Long)),
            op::FCONST_0..=op::FCONST_2 => ex.push(TypeDesc::prim(Float)),
            op::DCONST_0 | op::DCONST_1 => ex.push(TypeDesc::prim(Double)),
            op::LDC | op::LDC_W | op::LDC2_W => {
                let t = self.ldc_type(ins.operand.constant_index().unwrap_or(0), ins.offset)?;
                ex.push(t)
            }
            op::ILOAD..=op::ALOAD | op::ILOAD_0..=op::ALOAD_3 => {
                let (kind, index) = if opc <= op::ALOAD {
                    let Operand::Local { index, .. } = ins.operand else {
                        return Err(malformed(ins.offset, "load without local index"));
                    };
                    (opc - op::ILOAD, index)
                } else {
                    ((opc - op::ILOAD_0) / 4, ((opc - op::ILOAD_0) % 4) as u16)
                };
                match kind {
                    4 => ex.load(index, None, true)?,
                    k => ex.load(index, Some(cat(k)), false)?,
                }
            }
            op::IALOAD..=op::SALOAD => {
                ex.pop()?;
                let arr = ex.pop()?;
                let elem = match (opc - op::IALOAD, &arr) {
                    (4, TypeDesc::Array { element }) => (**element).clone(),
                    (4, TypeDesc::Null) => TypeDesc::Null,
                    (4, _) => TypeDesc::Top,
                    (5, TypeDesc::Array { element }) if **element == TypeDesc::prim(Boolean) => TypeDesc::prim(Boolean),
                    (5, _) => TypeDesc::prim(Byte),
                    (6, _) => TypeDesc::prim(Char),
                    (7, _) => TypeDesc::prim(Short),
                    (k, _) => TypeDesc::prim(cat(k)),
                };
                ex.push(elem);
            }
            op::ISTORE..=op::ASTORE | op::ISTORE_0..=op::ASTORE_3 => {
                let (kind, index) = if opc <= op::ASTORE {
                    let Operand::Local { index, .. } = ins.operand else {
                        return Err(malformed(ins.offset, "store without local index"));
                    };
                    (opc - op::ISTORE, index)
                } else {
                    ((opc - op::ISTORE_0) / 4, ((opc - op::ISTORE_0) % 4) as u16)
                };
                let t = ex.pop()?;
                let consistent = match kind {
                    4 => !matches!(t, TypeDesc::Primitive { .. }),
                    k => match &t {
                        TypeDesc::Primitive { prim } => *prim == cat(k) || (k == 0 && prim.is_int_category()),
                        TypeDesc::Top => true,
                        _ => false,
                    },
                };
                if !consistent {
                    return Err(malformed(ins.offset, "store type does not match opcode"));
                }
                ex.store(index, t, max_locals)?;
            }
            op::IASTORE..=op::SASTORE => ex.pop_n(3)?,
            op::POP => {
                ex.pop_words(1)?;
                ex.check_stack()?;
            }
            op::POP2 => {
                ex.pop_words(2)?;
                ex.check_stack()?;
            }
            op::DUP => ex.dup_x(1, 0)?,
            op::DUP_X1 => ex.dup_x(1, 1)?,
            op::DUP_X2 => ex.dup_x(1, 2)?,
            op::DUP2 => ex.dup_x(2, 0)?,
            op::DUP2_X1 => ex.dup_x(2, 1)?,
            op::DUP2_X2 => ex.dup_x(2, 2)?,
            op::SWAP => {
                let a = ex.pop()?;
                let b = ex.pop()?;
                ex.push(a);
                ex.push(b);
                ex.check_stack()?;
            }
            op::IADD..=op::DREM => {
                ex.pop_n(2)?;
                ex.push(TypeDesc::prim(cat(opc - op::IADD)));
            }
            op::INEG..=op::DNEG => {
                ex.pop()?;
                ex.push(TypeDesc::prim(cat(opc - op::INEG)));
            }
            op::ISHL..=op::LUSHR => {
                ex.pop_n(2)?;
                ex.push(TypeDesc::prim(if (opc - op::ISHL).is_multiple_of(2) { Int } else { Long }));
            }
            op::IAND..=op::LXOR => {
                ex.pop_n(2)?;
                ex.push(TypeDesc::prim(if (opc - op::IAND).is_multiple_of(2) { Int } else { Long }));
            }
            op::IINC => {}
            op::I2L..=op::I2S => {
                ex.pop()?;
                let to = [
                    Long, Float, Double, Int, Float, Double, Int, Long, Double, Int, Long, Float, Byte, Char, Short,
                ][(opc - op::I2L) as usize];
                ex.push(TypeDesc::prim(to));
            }
            op::LCMP..=op::DCMPG => {
                ex.pop_n(2)?;
                ex.push(TypeDesc::int());
            }
            op::IFEQ..=op::IFLE | op::IFNULL | op::IFNONNULL => {
                ex.pop()?;
            }
            op::IF_ICMPEQ..=op::IF_ACMPNE => ex.pop_n(2)?,
            op::GOTO | op::GOTO_W => {}
            op::JSR | op::JSR_W => ex.push(TypeDesc::Top),
            op::RET => {}
            op::TABLESWITCH | op::LOOKUPSWITCH => {
                ex.pop()?;
            }
            op::IRETURN..=op::ARETURN => {
                ex.pop()?;
            }
            op::RETURN => {}
            op::GETSTATIC | op::GETFIELD => {
                let t = self.field_type(ins.operand.constant_index().unwrap_or(0), ins.offset)?;
                if opc == op::GETFIELD {
                    ex.pop()?;
                }
                ex.push(t);
            }
            op::PUTSTATIC | op::PUTFIELD => {
                self.field_type(ins.operand.constant_index().unwrap_or(0), ins.offset)?;
                ex.pop()?;
                if opc == op::PUTFIELD {
                    ex.pop()?;
                }
            }
            op::INVOKEVIRTUAL..=op::INVOKEDYNAMIC => {
                let (owner, name, md) = self.method_ref(ins)?;
                ex.pop_n(md.params.len())?;
                if opc != op::INVOKESTATIC && opc != op::INVOKEDYNAMIC {
                    let receiver = ex.pop()?;
                    if opc == op::INVOKESPECIAL && name == "<init>" {
                        match &receiver {
                            TypeDesc::Uninitialized { class, .. } => {
                                let init = TypeDesc::object(class.clone());
                                ex.replace_uninitialized(&receiver, &init);
                            }
                            TypeDesc::Object { .. } | TypeDesc::Top => {}
                            _ => {
                                return Err(malformed(
                                    ins.offset,
                                    &format!("constructor of {owner} invoked on {receiver}"),
                                ))
                            }
                        }
                    }
                }
                if let Some(r) = md.ret {
                    ex.push(r);
                }
            }
            op::NEW => {
                let t = self.class_type(ins.operand.constant_index().unwrap_or(0), ins.offset);
                match t {
                    TypeDesc::Object { name } => ex.push(TypeDesc::Uninitialized {
                        class: name,
                        site: Some(ins.offset),
                    }),
                    _ => ex.push(TypeDesc::Top),
                }
            }
            op::NEWARRAY => {
                ex.pop()?;
                let Operand::NewArray(atype) = ins.operand else {
                    return Err(malformed(ins.offset, "newarray without type"));
                };
                let p = match atype {
                    4 => Boolean,
                    5 => Char,
                    6 => Float,
                    7 => Double,
                    8 => Byte,
                    9 => Short,
                    10 => Int,
                    11 => Long,
                    _ => return Err(malformed(ins.offset, "bad newarray type")),
                };
                ex.push(TypeDesc::array(TypeDesc::prim(p)));
            }
            op::ANEWARRAY => {
                ex.pop()?;
                let t = self.class_type(ins.operand.constant_index().unwrap_or(0), ins.offset);
                ex.push(TypeDesc::array(t));
            }
            op::ARRAYLENGTH => {
                ex.pop()?;
                ex.push(TypeDesc::int());
            }
            op::ATHROW => {
                ex.pop()?;
            }
            op::CHECKCAST => {
                let v = ex.pop()?;
                let target = self.class_type(ins.operand.constant_index().unwrap_or(0), ins.offset);
                let keep = !matches!(v, TypeDesc::Null | TypeDesc::Top)
                    && target != TypeDesc::Top
                    && is_assignable(self.h, &v, &target);
                ex.push(if keep { v } else { target });
            }
            op::INSTANCEOF => {
                ex.pop()?;
                ex.push(TypeDesc::int());
            }
            op::MONITORENTER | op::MONITOREXIT => {
                ex.pop()?;
            }
            op::MULTIANEWARRAY => {
                let Operand::MultiANewArray { index, dims } = ins.operand else {
                    return Err(malformed(ins.offset, "multianewarray without operands"));
                };
                ex.pop_n(dims as usize)?;
                let t = self.class_type(index, ins.offset);
                ex.push(t);
            }
            other => return Err(malformed(ins.offset, &format!("unsupported opcode {other:#04x}"))),
        }
        Ok(frame)
    }
}
