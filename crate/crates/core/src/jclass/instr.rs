//! Bytecode instruction decoding.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecodeError {
    #[error("truncated instruction at offset {0}")]
    Truncated(u32),
    #[error("invalid opcode {opcode:#04x} at offset {offset}")]
    InvalidOpcode { opcode: u8, offset: u32 },
    #[error("invalid switch at offset {0}")]
    BadSwitch(u32),
    #[error("branch at offset {from} targets {target}, outside the code")]
    BadBranch { from: u32, target: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Operand {
    None,
    Local {
        index: u16,
        wide: bool,
    },
    Iinc {
        index: u16,
        delta: i16,
    },
    Byte(i8),
    Short(i16),
    /// Constant-pool index (ldc, field/method refs, class refs).
    Constant(u16),
    InvokeInterface {
        index: u16,
        count: u8,
    },
    MultiANewArray {
        index: u16,
        dims: u8,
    },
    NewArray(u8),
    Branch(u32),
    TableSwitch {
        default: u32,
        low: i32,
        targets: Vec<u32>,
    },
    LookupSwitch {
        default: u32,
        pairs: Vec<(i32, u32)>,
    },
}

impl Operand {
    pub fn constant_index(&self) -> Option<u16> {
        match self {
            Operand::Constant(i) => Some(*i),
            Operand::InvokeInterface { index, .. } | Operand::MultiANewArray { index, .. } => Some(*index),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instruction {
    pub offset: u32,
    pub opcode: u8,
    pub operand: Operand,
    pub length: u32,
}

impl Instruction {
    pub fn mnemonic(&self) -> &'static str {
        mnemonic(self.opcode)
    }

    pub fn next_offset(&self) -> u32 {
        self.offset + self.length
    }

    pub fn is_invoke(&self) -> bool {
        (op::INVOKEVIRTUAL..=op::INVOKEDYNAMIC).contains(&self.opcode)
    }

    pub fn is_field_store(&self) -> bool {
        self.opcode == op::PUTFIELD || self.opcode == op::PUTSTATIC
    }

    /// Control never falls through to the next instruction.
    pub fn ends_flow(&self) -> bool {
        matches!(
            self.opcode,
            op::GOTO | op::GOTO_W | op::TABLESWITCH | op::LOOKUPSWITCH | op::IRETURN
                ..=op::RETURN | op::ATHROW | op::RET
        )
    }

    pub fn branch_targets(&self) -> Vec<u32> {
        match &self.operand {
            Operand::Branch(t) => vec![*t],
            Operand::TableSwitch { default, targets, .. } => {
                std::iter::once(*default).chain(targets.iter().copied()).collect()
            }
            Operand::LookupSwitch { default, pairs } => {
                std::iter::once(*default).chain(pairs.iter().map(|(_, t)| *t)).collect()
            }
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:>5}: {}", self.offset, self.mnemonic())?;
        match &self.operand {
            Operand::None => Ok(()),
            Operand::Local { index, .. } => write!(f, " {index}"),
            Operand::Iinc { index, delta } => write!(f, " {index}, {delta}"),
            Operand::Byte(v) => write!(f, " {v}"),
            Operand::Short(v) => write!(f, " {v}"),
            Operand::Constant(i) => write!(f, " #{i}"),
            Operand::InvokeInterface { index, count } => write!(f, " #{index}, {count}"),
            Operand::MultiANewArray { index, dims } => write!(f, " #{index}, {dims}"),
            Operand::NewArray(t) => write!(f, " {t}"),
            Operand::Branch(t) => write!(f, " {t}"),
            Operand::TableSwitch { default, .. } | Operand::LookupSwitch { default, .. } => {
                write!(f, " default {default}")
            }
        }
    }
}

pub mod op {
    pub const ACONST_NULL: u8 = 0x01;
    pub const ICONST_M1: u8 = 0x02;
    pub const ICONST_5: u8 = 0x08;
    pub const LCONST_0: u8 = 0x09;
    pub const LCONST_1: u8 = 0x0a;
    pub const FCONST_0: u8 = 0x0b;
    pub const FCONST_2: u8 = 0x0d;
    pub const DCONST_0: u8 = 0x0e;
    pub const DCONST_1: u8 = 0x0f;
    pub const BIPUSH: u8 = 0x10;
    pub const SIPUSH: u8 = 0x11;
    pub const LDC: u8 = 0x12;
    pub const LDC_W: u8 = 0x13;
    pub const LDC2_W: u8 = 0x14;
    pub const ILOAD: u8 = 0x15;
    pub const ALOAD: u8 = 0x19;
    pub const ILOAD_0: u8 = 0x1a;
    pub const ALOAD_3: u8 = 0x2d;
    pub const IALOAD: u8 = 0x2e;
    pub const SALOAD: u8 = 0x35;
    pub const ISTORE: u8 = 0x36;
    pub const ASTORE: u8 = 0x3a;
    pub const ISTORE_0: u8 = 0x3b;
    pub const ASTORE_3: u8 = 0x4e;
    pub const IASTORE: u8 = 0x4f;
    pub const SASTORE: u8 = 0x56;
    pub const POP: u8 = 0x57;
    pub const POP2: u8 = 0x58;
    pub const DUP: u8 = 0x59;
    pub const DUP_X1: u8 = 0x5a;
    pub const DUP_X2: u8 = 0x5b;
    pub const DUP2: u8 = 0x5c;
    pub const DUP2_X1: u8 = 0x5d;
    pub const DUP2_X2: u8 = 0x5e;
    pub const SWAP: u8 = 0x5f;
    pub const IADD: u8 = 0x60;
    pub const DREM: u8 = 0x73;
    pub const INEG: u8 = 0x74;
    pub const DNEG: u8 = 0x77;
    pub const ISHL: u8 = 0x78;
    pub const LUSHR: u8 = 0x7d;
    pub const IAND: u8 = 0x7e;
    pub const LXOR: u8 = 0x83;
    pub const IINC: u8 = 0x84;
    pub const I2L: u8 = 0x85;
    pub const I2S: u8 = 0x93;
    pub const LCMP: u8 = 0x94;
    pub const DCMPG: u8 = 0x98;
    pub const IFEQ: u8 = 0x99;
    pub const IFLE: u8 = 0x9e;
    pub const IF_ICMPEQ: u8 = 0x9f;
    pub const IF_ACMPNE: u8 = 0xa6;
    pub const GOTO: u8 = 0xa7;
    pub const JSR: u8 = 0xa8;
    pub const RET: u8 = 0xa9;
    pub const TABLESWITCH: u8 = 0xaa;
    pub const LOOKUPSWITCH: u8 = 0xab;
    pub const IRETURN: u8 = 0xac;
    pub const ARETURN: u8 = 0xb0;
    pub const RETURN: u8 = 0xb1;
    pub const GETSTATIC: u8 = 0xb2;
    pub const PUTSTATIC: u8 = 0xb3;
    pub const GETFIELD: u8 = 0xb4;
    pub const PUTFIELD: u8 = 0xb5;
    pub const INVOKEVIRTUAL: u8 = 0xb6;
    pub const INVOKESPECIAL: u8 = 0xb7;
    pub const INVOKESTATIC: u8 = 0xb8;
    pub const INVOKEINTERFACE: u8 = 0xb9;
    pub const INVOKEDYNAMIC: u8 = 0xba;
    pub const NEW: u8 = 0xbb;
    pub const NEWARRAY: u8 = 0xbc;
    pub const ANEWARRAY: u8 = 0xbd;
    pub const ARRAYLENGTH: u8 = 0xbe;
    pub const ATHROW: u8 = 0xbf;
    pub const CHECKCAST: u8 = 0xc0;
    pub const INSTANCEOF: u8 = 0xc1;
    pub const MONITORENTER: u8 = 0xc2;
    pub const MONITOREXIT: u8 = 0xc3;
    pub const WIDE: u8 = 0xc4;
    pub const MULTIANEWARRAY: u8 = 0xc5;
    pub const IFNULL: u8 = 0xc6;
    pub const IFNONNULL: u8 = 0xc7;
    pub const GOTO_W: u8 = 0xc8;
    pub const JSR_W: u8 = 0xc9;
}

const MNEMONICS: [&str; 202] = [
    "nop",
    "aconst_null",
    "iconst_m1",
    "iconst_0",
    "iconst_1",
    "iconst_2",
    "iconst_3",
    "iconst_4",
    "iconst_5",
    "lconst_0",
    "lconst_1",
    "fconst_0",
    "fconst_1",
    "fconst_2",
    "dconst_0",
    "dconst_1",
    "bipush",
    "sipush",
    "ldc",
    "ldc_w",
    "ldc2_w",
    "iload",
    "lload",
    "fload",
    "dload",
    "aload",
    "iload_0",
    "iload_1",
    "iload_2",
    "iload_3",
    "lload_0",
    "lload_1",
    "lload_2",
    "lload_3",
    "fload_0",
    "fload_1",
    "fload_2",
    "fload_3",
    "dload_0",
    "dload_1",
    "dload_2",
    "dload_3",
    "aload_0",
    "aload_1",
    "aload_2",
    "aload_3",
    "iaload",
    "laload",
    "faload",
    "daload",
    "aaload",
    "baload",
    "caload",
    "saload",
    "istore",
    "lstore",
    "fstore",
    "dstore",
    "astore",
    "istore_0",
    "istore_1",
    "istore_2",
    "istore_3",
    "lstore_0",
    "lstore_1",
    "lstore_2",
    "lstore_3",
    "fstore_0",
    "fstore_1",
    "fstore_2",
    "fstore_3",
    "dstore_0",
    "dstore_1",
    "dstore_2",
    "dstore_3",
    "astore_0",
    "astore_1",
    "astore_2",
    "astore_3",
    "iastore",
    "lastore",
    "fastore",
    "dastore",
    "aastore",
    "bastore",
    "castore",
    "sastore",
    "pop",
    "pop2",
    "dup",
    "dup_x1",
    "dup_x2",
    "dup2",
    "dup2_x1",
    "dup2_x2",
    "swap",
    "iadd",
    "ladd",
    "fadd",
    "dadd",
    "isub",
    "lsub",
    "fsub",
    "dsub",
    "imul",
    "lmul",
    "fmul",
    "dmul",
    "idiv",
    "ldiv",
    "fdiv",
    "ddiv",
    "irem",
    "lrem",
    "frem",
    "drem",
    "ineg",
    "lneg",
    "fneg",
    "dneg",
    "ishl",
    "lshl",
    "ishr",
    "lshr",
    "iushr",
    "lushr",
    "iand",
    "land",
    "ior",
    "lor",
    "ixor",
    "lxor",
    "iinc",
    "i2l",
    "i2f",
    "i2d",
    "l2i",
    "l2f",
    "l2d",
    "f2i",
    "f2l",
    "f2d",
    "d2i",
    "d2l",
    "d2f",
    "i2b",
    "i2c",
    "i2s",
    "lcmp",
    "fcmpl",
    "fcmpg",
    "dcmpl",
    "dcmpg",
    "ifeq",
    "ifne",
    "iflt",
    "ifge",
    "ifgt",
    "ifle",
    "if_icmpeq",
    "if_icmpne",
    "if_icmplt",
    "if_icmpge",
    "if_icmpgt",
    "if_icmple",
    "if_acmpeq",
    "if_acmpne",
    "goto",
    "jsr",
    "ret",
    "tableswitch",
    "lookupswitch",
    "ireturn",
    "lreturn",
    "freturn",
    "dreturn",
    "areturn",
    "return",
    "getstatic",
    "putstatic",
    "getfield",
    "putfield",
    "invokevirtual",
    "invokespecial",
    "invokestatic",
    "invokeinterface",
    "invokedynamic",
    "new",
    "newarray",
    "anewarray",
    "arraylength",
    "athrow",
    "checkcast",
    "instanceof",
    "monitorenter",
    "monitorexit",
    "wide",
    "multianewarray",
    "ifnull",
    "ifnonnull",
    "goto_w",
    "jsr_w",
];

pub fn mnemonic(opcode: u8) -> &'static str {
    MNEMONICS.get(opcode as usize).copied().unwrap_or("invalid")
}

struct Cursor<'a> {
    code: &'a [u8],
    pos: usize,
    start: u32,
}

impl Cursor<'_> {
    fn bytes<const N: usize>(&mut self) -> Result<[u8; N], DecodeError> {
        let end = self.pos + N;
        let s = self.code.get(self.pos..end).ok_or(DecodeError::Truncated(self.start))?;
        self.pos = end;
        let mut out = [0u8; N];
        out.copy_from_slice(s);
        Ok(out)
    }
    fn u1(&mut self) -> Result<u8, DecodeError> {
        Ok(self.bytes::<1>()?[0])
    }
    fn u2(&mut self) -> Result<u16, DecodeError> {
        Ok(u16::from_be_bytes(self.bytes::<2>()?))
    }
    fn i2(&mut self) -> Result<i16, DecodeError> {
        Ok(i16::from_be_bytes(self.bytes::<2>()?))
    }
    fn i4(&mut self) -> Result<i32, DecodeError> {
        Ok(i32::from_be_bytes(self.bytes::<4>()?))
    }
}

fn target(code_len: usize, from: u32, delta: i64) -> Result<u32, DecodeError> {
    let t = from as i64 + delta;
    if t < 0 || t >= code_len as i64 {
        return Err(DecodeError::BadBranch { from, target: t });
    }
    Ok(t as u32)
}

/// Decodes a code array into instructions ordered by offset. Branch targets
/// are checked to land on instruction boundaries.
pub fn decode_instructions(code: &[u8]) -> Result<Vec<Instruction>, DecodeError> {
    let mut out = Vec::new();
    let mut c = Cursor { code, pos: 0, start: 0 };
    while c.pos < code.len() {
        let offset = c.pos as u32;
        c.start = offset;
        let opcode = c.u1()?;
        let operand = match opcode {
            op::BIPUSH => Operand::Byte(c.u1()? as i8),
            op::SIPUSH => Operand::Short(c.i2()?),
            op::LDC => Operand::Constant(c.u1()? as u16),
            op::LDC_W | op::LDC2_W => Operand::Constant(c.u2()?),
            0x15..=0x19 | 0x36..=0x3a | op::RET => Operand::Local {
                index: c.u1()? as u16,
                wide: false,
            },
            op::IINC => Operand::Iinc {
                index: c.u1()? as u16,
                delta: c.u1()? as i8 as i16,
            },
            op::IFEQ..=op::JSR | op::IFNULL | op::IFNONNULL => {
                Operand::Branch(target(code.len(), offset, c.i2()? as i64)?)
            }
            op::GOTO_W | op::JSR_W => Operand::Branch(target(code.len(), offset, c.i4()? as i64)?),
            op::TABLESWITCH | op::LOOKUPSWITCH => {
                while !c.pos.is_multiple_of(4) {
                    c.u1()?;
                }
                let default = target(code.len(), offset, c.i4()? as i64)?;
                if opcode == op::TABLESWITCH {
                    let low = c.i4()?;
                    let high = c.i4()?;
                    if high < low || (high as i64 - low as i64) > code.len() as i64 {
                        return Err(DecodeError::BadSwitch(offset));
                    }
                    let mut targets = Vec::new();
                    for _ in low..=high {
                        targets.push(target(code.len(), offset, c.i4()? as i64)?);
                    }
                    Operand::TableSwitch { default, low, targets }
                } else {
                    let n = c.i4()?;
                    if n < 0 || n as i64 > code.len() as i64 {
                        return Err(DecodeError::BadSwitch(offset));
                    }
                    let mut pairs = Vec::new();
                    for _ in 0..n {
                        let k = c.i4()?;
                        pairs.push((k, target(code.len(), offset, c.i4()? as i64)?));
                    }
                    Operand::LookupSwitch { default, pairs }
                }
            }
            op::GETSTATIC..=op::INVOKESTATIC | op::NEW | op::ANEWARRAY | op::CHECKCAST | op::INSTANCEOF => {
                Operand::Constant(c.u2()?)
            }
            op::INVOKEINTERFACE => {
                let index = c.u2()?;
                let count = c.u1()?;
                c.u1()?;
                Operand::InvokeInterface { index, count }
            }
            op::INVOKEDYNAMIC => {
                let index = c.u2()?;
                c.u2()?;
                Operand::Constant(index)
            }
            op::NEWARRAY => Operand::NewArray(c.u1()?),
            op::MULTIANEWARRAY => Operand::MultiANewArray {
                index: c.u2()?,
                dims: c.u1()?,
            },
            op::WIDE => {
                let inner = c.u1()?;
                let index = c.u2()?;
                let operand = match inner {
                    op::IINC => Operand::Iinc { index, delta: c.i2()? },
                    0x15..=0x19 | 0x36..=0x3a | op::RET => Operand::Local { index, wide: true },
                    _ => return Err(DecodeError::InvalidOpcode { opcode: inner, offset }),
                };
                out.push(Instruction {
                    offset,
                    opcode: inner,
                    operand,
                    length: c.pos as u32 - offset,
                });
                continue;
            }
            0x00..=0x0f | 0x1a..=0x35 | 0x3b..=0x83 | 0x85..=0x98 | 0xac..=0xb1 | 0xbe..=0xbf | 0xc2..=0xc3 => {
                Operand::None
            }
            _ => return Err(DecodeError::InvalidOpcode { opcode, offset }),
        };
        out.push(Instruction {
            offset,
            opcode,
            operand,
            length: c.pos as u32 - offset,
        });
    }
    for ins in &out {
        for t in ins.branch_targets() {
            if out.binary_search_by_key(&t, |i| i.offset).is_err() {
                return Err(DecodeError::BadBranch {
                    from: ins.offset,
                    target: t as i64,
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decodes_simple_sequence() {
        // aload_0; invokevirtual #2; iconst_1; istore_1; return
        let code = [0x2a, 0xb6, 0x00, 0x02, 0x04, 0x3c, 0xb1];
        let ins = decode_instructions(&code).unwrap();
        let offsets: Vec<u32> = ins.iter().map(|i| i.offset).collect();
        assert_eq!(offsets, vec![0, 1, 4, 5, 6]);
        assert_eq!(ins[1].operand.constant_index(), Some(2));
        assert_eq!(ins[1].mnemonic(), "invokevirtual");
    }

    #[test]
    fn wide_iinc_and_switch_padding() {
        // wide iinc 300 by -2; iconst_0; tableswitch at 7 (no padding); return at 24
        let mut code = vec![0xc4, 0x84, 0x01, 0x2c, 0xff, 0xfe, 0x03, 0xaa];
        code.extend_from_slice(&[0, 0, 0, 17, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 17, 0xb1]);
        let ins = decode_instructions(&code).unwrap();
        assert_eq!(ins[0].operand, Operand::Iinc { index: 300, delta: -2 });
        assert_eq!(ins[2].branch_targets(), vec![24, 24]);
        assert_eq!(ins[3].offset, 24);
    }

    #[test]
    fn branch_into_middle_of_instruction_is_rejected() {
        // goto +2 lands inside sipush
        let code = [0xa7, 0x00, 0x04, 0x11, 0x00, 0x01, 0xb1];
        assert!(matches!(decode_instructions(&code), Err(DecodeError::BadBranch { .. })));
    }

    #[test]
    fn truncated_operand() {
        assert_eq!(decode_instructions(&[0x11, 0x00]), Err(DecodeError::Truncated(0)));
    }
}
