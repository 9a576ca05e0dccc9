//! Field and method descriptor grammar.

use serde::{Deserialize, Serialize};

use super::types::{Primitive, TypeDesc};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid descriptor {descriptor:?} at {position}")]
pub struct DescriptorError {
    pub descriptor: String,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MethodDescriptor {
    pub params: Vec<TypeDesc>,
    /// `None` for `void`.
    pub ret: Option<TypeDesc>,
}

pub fn parse_field_descriptor(s: &str) -> Result<TypeDesc, DescriptorError> {
    let (t, end) = parse_at(s, 0)?;
    if end != s.len() {
        return Err(err(s, end));
    }
    Ok(t)
}

pub fn parse_method_descriptor(s: &str) -> Result<MethodDescriptor, DescriptorError> {
    if !s.starts_with('(') {
        return Err(err(s, 0));
    }
    let mut pos = 1;
    let mut params = Vec::new();
    loop {
        match s.as_bytes().get(pos) {
            None => return Err(err(s, pos)),
            Some(b')') => {
                pos += 1;
                break;
            }
            Some(_) => {
                let (t, next) = parse_at(s, pos)?;
                params.push(t);
                pos = next;
            }
        }
    }
    let ret = if &s[pos..] == "V" {
        None
    } else {
        let (t, end) = parse_at(s, pos)?;
        if end != s.len() {
            return Err(err(s, end));
        }
        Some(t)
    };
    Ok(MethodDescriptor { params, ret })
}

fn err(s: &str, position: usize) -> DescriptorError {
    DescriptorError {
        descriptor: s.to_string(),
        position,
    }
}

fn parse_at(s: &str, pos: usize) -> Result<(TypeDesc, usize), DescriptorError> {
    let bytes = s.as_bytes();
    let mut dims = 0usize;
    let mut p = pos;
    while bytes.get(p) == Some(&b'[') {
        dims += 1;
        p += 1;
    }
    if dims > 255 {
        return Err(err(s, pos));
    }
    let c = *bytes.get(p).ok_or_else(|| err(s, p))?;
    let (mut t, end) = if c == b'L' {
        let semi = s[p..].find(';').map(|i| p + i).ok_or_else(|| err(s, p))?;
        let name = &s[p + 1..semi];
        if name.is_empty() || name.contains(['.', '[']) {
            return Err(err(s, p + 1));
        }
        (TypeDesc::object(name), semi + 1)
    } else {
        let prim = Primitive::from_descriptor_char(c as char).ok_or_else(|| err(s, p))?;
        (TypeDesc::prim(prim), p + 1)
    };
    for _ in 0..dims {
        t = TypeDesc::array(t);
    }
    Ok((t, end))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn method_with_mixed_params() {
        let d = parse_method_descriptor("(IJ[Ljava/lang/String;)Ljava/io/File;").unwrap();
        assert_eq!(d.params.len(), 3);
        assert_eq!(d.params[1].width(), 2);
        assert_eq!(d.params[2].java_name(), "java.lang.String[]");
        assert_eq!(d.ret, Some(TypeDesc::object("java/io/File")));
    }

    #[test]
    fn void_and_errors() {
        assert_eq!(parse_method_descriptor("()V").unwrap().ret, None);
        assert!(parse_method_descriptor("(I").is_err());
        assert!(parse_method_descriptor("()").is_err());
        assert!(parse_field_descriptor("Ljava/lang/String").is_err());
        assert!(parse_field_descriptor("II").is_err());
        assert!(parse_field_descriptor("X").is_err());
    }

    #[test]
    fn round_trips_through_descriptor() {
        for d in ["I", "[[J", "Lorg/a/B;", "[Ljava/lang/Object;"] {
            assert_eq!(parse_field_descriptor(d).unwrap().descriptor(), d);
        }
    }
}
