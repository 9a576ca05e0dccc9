//! Shallow structural parser: package, imports, type declarations and their
//! members. Method bodies are kept as tokens and split into statements;
//! expressions are not parsed.

use serde::{Deserialize, Serialize};

use super::lexer::{lex, LexError, Token, TokenKind};
use super::statements::{skip_balanced, split_statements, Statement};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error("syntax error at line {line}: {message}")]
    Syntax { line: u32, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Import {
    /// Dotted name without the trailing `.*`.
    pub name: String,
    pub is_static: bool,
    pub wildcard: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Annotation {
    /// Name as written, e.g. `Test` or `org.junit.Test`.
    pub name: String,
    pub tokens: Vec<Token>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TypeKind {
    Class,
    Interface,
    Enum,
    Annotation,
    Record,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MemberKind {
    Field,
    Method(usize),
    Class(usize),
    Initializer,
    EnumConstants,
}

/// A member declaration in source order with its byte span.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Member {
    pub kind: MemberKind,
    pub span: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDecl {
    pub name: String,
    pub type_tokens: Vec<Token>,
    /// Extra `[]` written after the declarator name.
    pub extra_dims: usize,
    pub annotations: Vec<Annotation>,
    pub modifiers: Vec<String>,
    pub has_initializer: bool,
    pub line: u32,
}

impl FieldDecl {
    pub fn is_static(&self) -> bool {
        self.modifiers.iter().any(|m| m == "static")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Param {
    pub type_tokens: Vec<Token>,
    pub name: String,
    pub varargs: bool,
    pub extra_dims: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodDecl {
    pub name: String,
    pub is_constructor: bool,
    pub type_params: Vec<String>,
    pub annotations: Vec<Annotation>,
    pub modifiers: Vec<String>,
    /// `None` for constructors.
    pub return_type: Option<Vec<Token>>,
    pub params: Vec<Param>,
    pub throws: Vec<String>,
    /// Annotations, modifiers, return type, name, parameters and throws
    /// clause: everything before the body.
    pub header: Vec<Token>,
    pub body_tokens: Option<Vec<Token>>,
    pub body: Vec<Statement>,
    pub body_error: Option<String>,
    /// Verbatim text from the first annotation or modifier to the end.
    pub raw: String,
    pub span: (usize, usize),
    pub line: u32,
    /// Lines of the opening and closing body braces.
    pub body_lines: Option<(u32, u32)>,
}

impl MethodDecl {
    pub fn is_static(&self) -> bool {
        self.modifiers.iter().any(|m| m == "static")
    }

    pub fn returns_void(&self) -> bool {
        matches!(&self.return_type, Some(t) if t.len() == 1 && t[0].is_keyword("void"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDecl {
    pub name: String,
    /// Internal name, e.g. `org/a/Outer$Inner`.
    pub binary_name: String,
    pub kind: TypeKind,
    pub type_params: Vec<String>,
    pub extends: Option<String>,
    pub implements: Vec<String>,
    pub annotations: Vec<Annotation>,
    pub modifiers: Vec<String>,
    pub fields: Vec<FieldDecl>,
    pub methods: Vec<MethodDecl>,
    pub members: Vec<Member>,
    pub outer: Option<usize>,
    pub span: (usize, usize),
    pub line: u32,
    /// Byte offset of the opening brace of the body.
    pub body_open: usize,
}

impl ClassDecl {
    pub fn is_static(&self) -> bool {
        self.modifiers.iter().any(|m| m == "static")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SourceModel {
    pub package: Option<String>,
    pub imports: Vec<Import>,
    /// All named classes, nested ones included, outer before inner.
    pub classes: Vec<ClassDecl>,
}

impl SourceModel {
    pub fn class(&self, binary_name: &str) -> Option<&ClassDecl> {
        self.classes.iter().find(|c| c.binary_name == binary_name)
    }

    /// Byte span of the package and import declarations.
    pub fn header_end(&self) -> usize {
        self.classes
            .iter()
            .filter(|c| c.outer.is_none())
            .map(|c| c.span.0)
            .min()
            .unwrap_or(0)
    }
}

const MODIFIERS: &[&str] = &[
    "public",
    "protected",
    "private",
    "static",
    "final",
    "abstract",
    "native",
    "synchronized",
    "transient",
    "volatile",
    "strictfp",
    "default",
];

struct Parser<'a> {
    text: &'a str,
    toks: Vec<Token>,
    pos: usize,
    classes: Vec<ClassDecl>,
    package: Option<String>,
}

pub fn parse_source(text: &str) -> Result<SourceModel, ModelError> {
    let toks = lex(text)?;
    let mut p = Parser {
        text,
        toks,
        pos: 0,
        classes: Vec::new(),
        package: None,
    };
    p.compilation_unit()
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn at(&self, i: usize) -> Option<&Token> {
        self.toks.get(i)
    }

    fn line(&self) -> u32 {
        self.peek().or_else(|| self.toks.last()).map(|t| t.line).unwrap_or(1)
    }

    fn err<T>(&self, message: &str) -> Result<T, ModelError> {
        Err(ModelError::Syntax {
            line: self.line(),
            message: message.to_string(),
        })
    }

    fn expect(&mut self, text: &str) -> Result<(), ModelError> {
        match self.peek() {
            Some(t) if t.text == text => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err(&format!("expected `{text}`")),
        }
    }

    fn ident(&mut self) -> Result<String, ModelError> {
        match self.peek() {
            Some(t) if t.is_ident() => {
                let s = t.text.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.err("expected identifier"),
        }
    }

    fn qualified_name(&mut self) -> Result<String, ModelError> {
        let mut name = self.ident()?;
        while self.peek().is_some_and(|t| t.is_sep(".")) && self.at(self.pos + 1).is_some_and(Token::is_ident) {
            self.pos += 1;
            name.push('.');
            name.push_str(&self.ident()?);
        }
        Ok(name)
    }

    fn compilation_unit(&mut self) -> Result<SourceModel, ModelError> {
        let mut imports = Vec::new();
        // annotations on the package declaration
        let save = self.pos;
        self.annotations()?;
        if self.peek().is_some_and(|t| t.is_keyword("package")) {
            self.pos += 1;
            self.package = Some(self.qualified_name()?);
            self.expect(";")?;
        } else {
            self.pos = save;
        }
        while let Some(t) = self.peek() {
            if t.is_sep(";") {
                self.pos += 1;
            } else if t.is_keyword("import") {
                self.pos += 1;
                let is_static = self.peek().is_some_and(|t| t.is_keyword("static"));
                if is_static {
                    self.pos += 1;
                }
                let name = self.qualified_name()?;
                let mut wildcard = false;
                if self.peek().is_some_and(|t| t.is_sep(".")) {
                    self.pos += 1;
                    self.expect("*")?;
                    wildcard = true;
                }
                self.expect(";")?;
                imports.push(Import {
                    name,
                    is_static,
                    wildcard,
                });
            } else {
                break;
            }
        }
        while self.peek().is_some() {
            if self.peek().is_some_and(|t| t.is_sep(";")) {
                self.pos += 1;
                continue;
            }
            let start = self.pos;
            let annotations = self.annotations()?;
            let modifiers = self.modifiers();
            self.type_decl(start, annotations, modifiers, None)?;
        }
        Ok(SourceModel {
            package: self.package.clone(),
            imports,
            classes: std::mem::take(&mut self.classes),
        })
    }

    fn annotations(&mut self) -> Result<Vec<Annotation>, ModelError> {
        let mut out = Vec::new();
        while self.peek().is_some_and(|t| t.is_sep("@"))
            && !self.at(self.pos + 1).is_some_and(|t| t.is_keyword("interface"))
        {
            let start = self.pos;
            self.pos += 1;
            let name = self.qualified_name()?;
            if self.peek().is_some_and(|t| t.is_sep("(")) {
                self.pos = skip_balanced(&self.toks, self.pos);
            }
            out.push(Annotation {
                name,
                tokens: self.toks[start..self.pos].to_vec(),
            });
        }
        Ok(out)
    }

    fn modifiers(&mut self) -> Vec<String> {
        let mut out = Vec::new();
        while let Some(t) = self.peek() {
            if t.kind == TokenKind::Keyword && MODIFIERS.contains(&t.text.as_str()) {
                // `default` in a switch never reaches here; in annotation
                // bodies it follows the parameter list instead
                out.push(t.text.clone());
                self.pos += 1;
            } else if t.is_ident() && t.text == "sealed" {
                out.push("sealed".into());
                self.pos += 1;
            } else if t.is_ident()
                && t.text == "non"
                && self.at(self.pos + 1).is_some_and(|t| t.is("-"))
                && self.at(self.pos + 2).is_some_and(|t| t.text == "sealed")
            {
                out.push("non-sealed".into());
                self.pos += 3;
            } else if t.is_sep("@") && !self.at(self.pos + 1).is_some_and(|t| t.is_keyword("interface")) {
                // annotations interleaved with modifiers are kept with them
                break;
            } else {
                break;
            }
        }
        out
    }

    fn is_type_decl_start(&self) -> bool {
        match self.peek() {
            Some(t) if t.is_keyword("class") || t.is_keyword("interface") || t.is_keyword("enum") => true,
            Some(t) if t.is_sep("@") => self.at(self.pos + 1).is_some_and(|t| t.is_keyword("interface")),
            Some(t) if t.is_ident() && t.text == "record" => {
                self.at(self.pos + 1).is_some_and(Token::is_ident)
                    && self.at(self.pos + 2).is_some_and(|t| t.is_sep("(") || t.is("<"))
            }
            _ => false,
        }
    }

    /// Skips a `<...>` group starting at the current token.
    fn skip_angles(&mut self) -> Result<(), ModelError> {
        let mut depth = 0i32;
        while let Some(t) = self.peek() {
            match t.text.as_str() {
                "<" => depth += 1,
                ">" => depth -= 1,
                ">>" => depth -= 2,
                ">>>" => depth -= 3,
                "(" | ")" | "{" | "}" | ";" if t.kind == TokenKind::Separator => {
                    return self.err("unbalanced type arguments")
                }
                _ => {}
            }
            self.pos += 1;
            if depth <= 0 {
                return Ok(());
            }
        }
        self.err("unterminated type arguments")
    }

    /// Names declared by an optional `<T extends X, U>` group.
    fn type_params(&mut self) -> Result<Vec<String>, ModelError> {
        if !self.peek().is_some_and(|t| t.is("<")) {
            return Ok(Vec::new());
        }
        let start = self.pos;
        self.skip_angles()?;
        let mut names = Vec::new();
        let mut depth = 0i32;
        for i in start..self.pos {
            let t = &self.toks[i];
            match t.text.as_str() {
                "<" => depth += 1,
                ">" => depth -= 1,
                ">>" => depth -= 2,
                ">>>" => depth -= 3,
                _ if depth == 1 && t.is_ident() => {
                    let prev = &self.toks[i - 1];
                    if prev.is("<") || prev.is_sep(",") {
                        names.push(t.text.clone());
                    }
                }
                _ => {}
            }
        }
        Ok(names)
    }

    /// Parses a type and returns its tokens.
    fn type_tokens(&mut self) -> Result<Vec<Token>, ModelError> {
        let start = self.pos;
        self.annotations()?;
        match self.peek() {
            Some(t)
                if t.kind == TokenKind::Keyword
                    && matches!(
                        t.text.as_str(),
                        "boolean" | "byte" | "char" | "short" | "int" | "long" | "float" | "double" | "void"
                    ) =>
            {
                self.pos += 1
            }
            Some(t) if t.is_ident() => {
                self.pos += 1;
                loop {
                    if self.peek().is_some_and(|t| t.is("<")) {
                        self.skip_angles()?;
                    }
                    if self.peek().is_some_and(|t| t.is_sep("."))
                        && self.at(self.pos + 1).is_some_and(|t| t.is_ident() || t.is_sep("@"))
                    {
                        self.pos += 1;
                        self.annotations()?;
                        self.ident()?;
                    } else {
                        break;
                    }
                }
            }
            Some(t) if t.is("?") => {
                self.pos += 1;
            }
            _ => return self.err("expected type"),
        }
        while self.peek().is_some_and(|t| t.is_sep("[")) && self.at(self.pos + 1).is_some_and(|t| t.is_sep("]")) {
            self.pos += 2;
        }
        Ok(self.toks[start..self.pos].to_vec())
    }

    fn dims(&mut self) -> usize {
        let mut n = 0;
        while self.peek().is_some_and(|t| t.is_sep("[")) && self.at(self.pos + 1).is_some_and(|t| t.is_sep("]")) {
            self.pos += 2;
            n += 1;
        }
        n
    }

    fn type_list(&mut self) -> Result<Vec<String>, ModelError> {
        let mut out = Vec::new();
        loop {
            let toks = self.type_tokens()?;
            out.push(erase(&toks));
            if self.peek().is_some_and(|t| t.is_sep(",")) {
                self.pos += 1;
            } else {
                return Ok(out);
            }
        }
    }

    fn type_decl(
        &mut self,
        start: usize,
        annotations: Vec<Annotation>,
        modifiers: Vec<String>,
        outer: Option<usize>,
    ) -> Result<usize, ModelError> {
        let kind = match self.peek() {
            Some(t) if t.is_keyword("class") => TypeKind::Class,
            Some(t) if t.is_keyword("interface") => TypeKind::Interface,
            Some(t) if t.is_keyword("enum") => TypeKind::Enum,
            Some(t) if t.is_sep("@") => {
                self.pos += 1;
                TypeKind::Annotation
            }
            Some(t) if t.text == "record" => TypeKind::Record,
            _ => return self.err("expected type declaration"),
        };
        self.pos += 1;
        let line = self.line();
        let name = self.ident()?;
        let binary_name = match outer {
            Some(o) => format!("{}${}", self.classes[o].binary_name, name),
            None => match &self.package {
                Some(p) => format!("{}/{}", p.replace('.', "/"), name),
                None => name.clone(),
            },
        };
        let type_params = self.type_params()?;
        let idx = self.classes.len();
        self.classes.push(ClassDecl {
            name: name.clone(),
            binary_name,
            kind,
            type_params,
            extends: None,
            implements: Vec::new(),
            annotations,
            modifiers,
            fields: Vec::new(),
            methods: Vec::new(),
            members: Vec::new(),
            outer,
            span: (self.toks[start].offset, 0),
            line,
            body_open: 0,
        });
        if kind == TypeKind::Record && self.peek().is_some_and(|t| t.is_sep("(")) {
            self.pos += 1;
            while !self.peek().is_some_and(|t| t.is_sep(")")) {
                self.annotations()?;
                let line = self.line();
                let type_tokens = self.type_tokens()?;
                if self.peek().is_some_and(|t| t.is_sep("...")) {
                    self.pos += 1;
                }
                let fname = self.ident()?;
                self.classes[idx].fields.push(FieldDecl {
                    name: fname,
                    type_tokens,
                    extra_dims: 0,
                    annotations: Vec::new(),
                    modifiers: vec!["private".into(), "final".into()],
                    has_initializer: false,
                    line,
                });
                if self.peek().is_some_and(|t| t.is_sep(",")) {
                    self.pos += 1;
                }
            }
            self.pos += 1;
        }
        loop {
            match self.peek() {
                Some(t) if t.is_keyword("extends") => {
                    self.pos += 1;
                    let list = self.type_list()?;
                    if kind == TypeKind::Interface {
                        self.classes[idx].implements.extend(list);
                    } else {
                        self.classes[idx].extends = list.into_iter().next();
                    }
                }
                Some(t) if t.is_keyword("implements") => {
                    self.pos += 1;
                    let list = self.type_list()?;
                    self.classes[idx].implements.extend(list);
                }
                Some(t) if t.is_ident() && t.text == "permits" => {
                    self.pos += 1;
                    self.type_list()?;
                }
                _ => break,
            }
        }
        if !self.peek().is_some_and(|t| t.is_sep("{")) {
            return self.err("expected class body");
        }
        self.classes[idx].body_open = self.toks[self.pos].offset;
        self.pos += 1;
        self.class_body(idx, kind, &name)?;
        let end = self.toks[self.pos - 1].end();
        self.classes[idx].span.1 = end;
        Ok(idx)
    }

    fn enum_constants(&mut self, idx: usize) -> Result<(), ModelError> {
        let start = self.pos;
        loop {
            match self.peek() {
                None => return self.err("unterminated enum body"),
                Some(t) if t.is_sep(";") => {
                    self.pos += 1;
                    break;
                }
                Some(t) if t.is_sep("}") => break,
                Some(t) if t.is_sep(",") => self.pos += 1,
                Some(_) => {
                    self.annotations()?;
                    self.ident()?;
                    if self.peek().is_some_and(|t| t.is_sep("(")) {
                        self.pos = skip_balanced(&self.toks, self.pos);
                    }
                    if self.peek().is_some_and(|t| t.is_sep("{")) {
                        self.pos = skip_balanced(&self.toks, self.pos);
                    }
                }
            }
        }
        if self.pos > start {
            let span = (self.toks[start].offset, self.toks[self.pos - 1].end());
            self.classes[idx].members.push(Member {
                kind: MemberKind::EnumConstants,
                span,
            });
        }
        Ok(())
    }

    fn class_body(&mut self, idx: usize, kind: TypeKind, class_name: &str) -> Result<(), ModelError> {
        if kind == TypeKind::Enum {
            self.enum_constants(idx)?;
        }
        loop {
            let Some(t) = self.peek() else {
                return self.err("unterminated class body");
            };
            if t.is_sep("}") {
                self.pos += 1;
                return Ok(());
            }
            if t.is_sep(";") {
                self.pos += 1;
                continue;
            }
            let start = self.pos;
            let mut annotations = self.annotations()?;
            let mut modifiers = self.modifiers();
            while self.peek().is_some_and(|t| t.is_sep("@"))
                && !self.at(self.pos + 1).is_some_and(|t| t.is_keyword("interface"))
            {
                annotations.extend(self.annotations()?);
                modifiers.extend(self.modifiers());
            }
            if self.peek().is_some_and(|t| t.is_sep("{")) {
                self.pos = skip_balanced(&self.toks, self.pos);
                let span = (self.toks[start].offset, self.toks[self.pos - 1].end());
                self.classes[idx].members.push(Member {
                    kind: MemberKind::Initializer,
                    span,
                });
                continue;
            }
            if self.is_type_decl_start() {
                let inner = self.type_decl(start, annotations, modifiers, Some(idx))?;
                let span = self.classes[inner].span;
                self.classes[idx].members.push(Member {
                    kind: MemberKind::Class(inner),
                    span,
                });
                continue;
            }
            let type_params = self.type_params()?;
            let name_line = self.line();
            let is_ctor = self.peek().is_some_and(|t| t.is_ident() && t.text == class_name)
                && self
                    .at(self.pos + 1)
                    .is_some_and(|t| t.is_sep("(") || (kind == TypeKind::Record && t.is_sep("{")));
            let (return_type, name) = if is_ctor {
                (None, self.ident()?)
            } else {
                let ty = self.type_tokens()?;
                (Some(ty), self.ident()?)
            };
            if is_ctor || self.peek().is_some_and(|t| t.is_sep("(")) {
                self.method_rest(
                    idx,
                    start,
                    annotations,
                    modifiers,
                    return_type,
                    name,
                    name_line,
                    is_ctor,
                )?;
                if let Some(m) = self.classes[idx].methods.last_mut() {
                    m.type_params = type_params;
                }
            } else {
                let ty = return_type.unwrap_or_default();
                self.field_rest(idx, start, annotations, modifiers, ty, name, name_line)?;
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn field_rest(
        &mut self,
        idx: usize,
        start: usize,
        annotations: Vec<Annotation>,
        modifiers: Vec<String>,
        type_tokens: Vec<Token>,
        first_name: String,
        first_line: u32,
    ) -> Result<(), ModelError> {
        let mut name = first_name;
        let mut line = first_line;
        loop {
            let extra_dims = self.dims();
            let mut has_initializer = false;
            if self.peek().is_some_and(|t| t.is("=")) {
                has_initializer = true;
                self.pos += 1;
                // skip the initializer expression up to `,` or `;` at depth 0
                loop {
                    match self.peek() {
                        None => return self.err("unterminated field initializer"),
                        Some(t) if t.kind == TokenKind::Separator && matches!(t.text.as_str(), "(" | "[" | "{") => {
                            self.pos = skip_balanced(&self.toks, self.pos)
                        }
                        Some(t) if t.is_sep(",") || t.is_sep(";") => break,
                        Some(t) if t.is_sep("}") => return self.err("unexpected `}` in initializer"),
                        Some(_) => self.pos += 1,
                    }
                }
            }
            self.classes[idx].fields.push(FieldDecl {
                name,
                type_tokens: type_tokens.clone(),
                extra_dims,
                annotations: annotations.clone(),
                modifiers: modifiers.clone(),
                has_initializer,
                line,
            });
            match self.peek() {
                Some(t) if t.is_sep(",") => {
                    self.pos += 1;
                    line = self.line();
                    name = self.ident()?;
                }
                Some(t) if t.is_sep(";") => {
                    self.pos += 1;
                    break;
                }
                _ => return self.err("expected `,` or `;` after field"),
            }
        }
        let span = (self.toks[start].offset, self.toks[self.pos - 1].end());
        self.classes[idx].members.push(Member {
            kind: MemberKind::Field,
            span,
        });
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn method_rest(
        &mut self,
        idx: usize,
        start: usize,
        annotations: Vec<Annotation>,
        modifiers: Vec<String>,
        return_type: Option<Vec<Token>>,
        name: String,
        line: u32,
        is_ctor: bool,
    ) -> Result<(), ModelError> {
        let mut params = Vec::new();
        if self.peek().is_some_and(|t| t.is_sep("(")) {
            self.pos += 1;
            while !self.peek().is_some_and(|t| t.is_sep(")")) {
                self.annotations()?;
                while self.peek().is_some_and(|t| t.is_keyword("final")) {
                    self.pos += 1;
                    self.annotations()?;
                }
                let type_tokens = self.type_tokens()?;
                let varargs = self.peek().is_some_and(|t| t.is_sep("..."));
                if varargs {
                    self.pos += 1;
                }
                // receiver parameter `Foo this`
                let pname = if self.peek().is_some_and(|t| t.is_keyword("this")) {
                    self.pos += 1;
                    "this".to_string()
                } else {
                    self.ident()?
                };
                let extra_dims = self.dims();
                if pname != "this" {
                    params.push(Param {
                        type_tokens,
                        name: pname,
                        varargs,
                        extra_dims,
                    });
                }
                match self.peek() {
                    Some(t) if t.is_sep(",") => self.pos += 1,
                    Some(t) if t.is_sep(")") => {}
                    _ => return self.err("expected `,` or `)` in parameters"),
                }
            }
            self.pos += 1;
        }
        let extra = self.dims();
        let return_type = return_type.map(|mut r| {
            for _ in 0..extra {
                let line = r.last().map(|t| t.line).unwrap_or(line);
                r.push(Token::new(TokenKind::Separator, "[", line, 0));
                r.push(Token::new(TokenKind::Separator, "]", line, 0));
            }
            r
        });
        let mut throws = Vec::new();
        if self.peek().is_some_and(|t| t.is_keyword("throws")) {
            self.pos += 1;
            throws = self.type_list()?;
        }
        let header = self.toks[start..self.pos].to_vec();
        let (body_tokens, body_lines) = match self.peek() {
            Some(t) if t.is_sep("{") => {
                let open = self.pos;
                let close = skip_balanced(&self.toks, open);
                if close > self.toks.len() || !self.toks[close - 1].is_sep("}") {
                    return self.err("unterminated method body");
                }
                self.pos = close;
                (
                    Some(self.toks[open + 1..close - 1].to_vec()),
                    Some((self.toks[open].line, self.toks[close - 1].line)),
                )
            }
            Some(t) if t.is_sep(";") => {
                self.pos += 1;
                (None, None)
            }
            Some(t) if t.is_keyword("default") => {
                while !self.peek().is_some_and(|t| t.is_sep(";")) {
                    if self.peek().is_none() {
                        return self.err("unterminated annotation default");
                    }
                    self.pos += 1;
                }
                self.pos += 1;
                (None, None)
            }
            _ => return self.err("expected method body"),
        };
        let (body, body_error) = match &body_tokens {
            Some(b) => match split_statements(b) {
                Ok(s) => (s, None),
                Err(e) => (Vec::new(), Some(e.to_string())),
            },
            None => (Vec::new(), None),
        };
        let span = (self.toks[start].offset, self.toks[self.pos - 1].end());
        let method_index = self.classes[idx].methods.len();
        self.classes[idx].methods.push(MethodDecl {
            name: if is_ctor { "<init>".to_string() } else { name },
            is_constructor: is_ctor,
            type_params: Vec::new(),
            annotations,
            modifiers,
            return_type,
            params,
            throws,
            header,
            body_tokens,
            body,
            body_error,
            raw: self.text[span.0..span.1].to_string(),
            span,
            line,
            body_lines,
        });
        self.classes[idx].members.push(Member {
            kind: MemberKind::Method(method_index),
            span,
        });
        Ok(())
    }
}

/// Type text without type arguments or annotations, e.g. `java.util.List[]`.
pub fn erase(tokens: &[Token]) -> String {
    let mut out = String::new();
    let mut depth = 0i32;
    let mut i = 0;
    while i < tokens.len() {
        let t = &tokens[i];
        match t.text.as_str() {
            "<" => depth += 1,
            ">" => depth -= 1,
            ">>" => depth -= 2,
            ">>>" => depth -= 3,
            "@" if depth == 0 => {
                // skip annotation name and arguments
                i += 2;
                while tokens.get(i).is_some_and(|t| t.is_sep(".")) && tokens.get(i + 1).is_some_and(Token::is_ident) {
                    i += 2;
                }
                if tokens.get(i).is_some_and(|t| t.is_sep("(")) {
                    i = skip_balanced(tokens, i);
                }
                continue;
            }
            _ if depth == 0 => out.push_str(&t.text),
            _ => {}
        }
        i += 1;
    }
    out
}
