use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Primitive {
    Boolean,
    Byte,
    Char,
    Short,
    Int,
    Long,
    Float,
    Double,
}

impl Primitive {
    pub fn from_descriptor_char(c: char) -> Option<Primitive> {
        Some(match c {
            'Z' => Primitive::Boolean,
            'B' => Primitive::Byte,
            'C' => Primitive::Char,
            'S' => Primitive::Short,
            'I' => Primitive::Int,
            'J' => Primitive::Long,
            'F' => Primitive::Float,
            'D' => Primitive::Double,
            _ => return None,
        })
    }

    pub fn descriptor_char(self) -> char {
        match self {
            Primitive::Boolean => 'Z',
            Primitive::Byte => 'B',
            Primitive::Char => 'C',
            Primitive::Short => 'S',
            Primitive::Int => 'I',
            Primitive::Long => 'J',
            Primitive::Float => 'F',
            Primitive::Double => 'D',
        }
    }

    pub fn java_name(self) -> &'static str {
        match self {
            Primitive::Boolean => "boolean",
            Primitive::Byte => "byte",
            Primitive::Char => "char",
            Primitive::Short => "short",
            Primitive::Int => "int",
            Primitive::Long => "long",
            Primitive::Float => "float",
            Primitive::Double => "double",
        }
    }

    pub fn from_java_name(name: &str) -> Option<Primitive> {
        Some(match name {
            "boolean" => Primitive::Boolean,
            "byte" => Primitive::Byte,
            "char" => Primitive::Char,
            "short" => Primitive::Short,
            "int" => Primitive::Int,
            "long" => Primitive::Long,
            "float" => Primitive::Float,
            "double" => Primitive::Double,
            _ => return None,
        })
    }

    /// Types the JVM represents as `int` on the operand stack.
    pub fn is_int_category(self) -> bool {
        matches!(
            self,
            Primitive::Boolean | Primitive::Byte | Primitive::Char | Primitive::Short | Primitive::Int
        )
    }

    pub fn is_wide(self) -> bool {
        matches!(self, Primitive::Long | Primitive::Double)
    }
}

/// Abstract type of a local slot or operand-stack entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TypeDesc {
    Primitive {
        prim: Primitive,
    },
    /// Internal (slash-separated) class name.
    Object {
        name: String,
    },
    Array {
        element: Box<TypeDesc>,
    },
    /// The type of the `null` constant: assignable to every reference type.
    Null,
    /// Result of `new` before its constructor runs. `site` is the offset of
    /// the `new` instruction, or `None` for the receiver of a constructor.
    Uninitialized {
        class: String,
        site: Option<u32>,
    },
    Top,
}

pub const JAVA_LANG_OBJECT: &str = "java/lang/Object";

impl TypeDesc {
    pub fn prim(p: Primitive) -> TypeDesc {
        TypeDesc::Primitive { prim: p }
    }

    pub fn int() -> TypeDesc {
        TypeDesc::prim(Primitive::Int)
    }

    pub fn object(name: impl Into<String>) -> TypeDesc {
        TypeDesc::Object { name: name.into() }
    }

    /// Builds an array type. A `Top` element widens to `java/lang/Object`.
    pub fn array(element: TypeDesc) -> TypeDesc {
        let element = match element {
            TypeDesc::Top | TypeDesc::Null | TypeDesc::Uninitialized { .. } => TypeDesc::object(JAVA_LANG_OBJECT),
            e => e,
        };
        TypeDesc::Array {
            element: Box::new(element),
        }
    }

    /// Number of local slots or stack words occupied.
    pub fn width(&self) -> u8 {
        match self {
            TypeDesc::Primitive { prim } if prim.is_wide() => 2,
            _ => 1,
        }
    }

    pub fn is_reference(&self) -> bool {
        matches!(self, TypeDesc::Object { .. } | TypeDesc::Array { .. } | TypeDesc::Null)
    }

    pub fn as_primitive(&self) -> Option<Primitive> {
        match self {
            TypeDesc::Primitive { prim } => Some(*prim),
            _ => None,
        }
    }

    /// Parses a class name as stored in a CONSTANT_Class entry, which is
    /// either an internal name or an array descriptor.
    pub fn from_class_constant(name: &str) -> Option<TypeDesc> {
        if name.starts_with('[') {
            super::descriptor::parse_field_descriptor(name).ok()
        } else if name.is_empty() {
            None
        } else {
            Some(TypeDesc::object(name))
        }
    }

    pub fn descriptor(&self) -> String {
        match self {
            TypeDesc::Primitive { prim } => prim.descriptor_char().to_string(),
            TypeDesc::Object { name } => format!("L{name};"),
            TypeDesc::Array { element } => format!("[{}", element.descriptor()),
            TypeDesc::Null => "null".to_string(),
            TypeDesc::Uninitialized { class, .. } => format!("uninitialized(L{class};)"),
            TypeDesc::Top => "top".to_string(),
        }
    }

    /// Source-style name with a fully qualified class, e.g. `java.io.File[]`.
    pub fn java_name(&self) -> String {
        match self {
            TypeDesc::Primitive { prim } => prim.java_name().to_string(),
            TypeDesc::Object { name } => name.replace(['/', '$'], "."),
            TypeDesc::Array { element } => format!("{}[]", element.java_name()),
            TypeDesc::Null => "null".to_string(),
            TypeDesc::Uninitialized { class, .. } => class.replace(['/', '$'], "."),
            TypeDesc::Top => "?".to_string(),
        }
    }

    /// Source-style name without the package, e.g. `File[]`.
    pub fn simple_name(&self) -> String {
        match self {
            TypeDesc::Object { name } | TypeDesc::Uninitialized { class: name, .. } => {
                simple_class_name(name).to_string()
            }
            TypeDesc::Array { element } => format!("{}[]", element.simple_name()),
            other => other.java_name(),
        }
    }
}

impl fmt::Display for TypeDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.java_name())
    }
}

/// `org/a/Outer$Inner` → `Inner`.
pub fn simple_class_name(internal: &str) -> &str {
    let tail = internal.rsplit('/').next().unwrap_or(internal);
    tail.rsplit('$').next().unwrap_or(tail)
}

/// `org/a/Outer$Inner` → `org/a`.
pub fn package_of(internal: &str) -> &str {
    internal.rsplit_once('/').map(|(p, _)| p).unwrap_or("")
}
