//! Java lexer.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TokenKind {
    Identifier,
    Keyword,
    LiteralString,
    LiteralChar,
    LiteralNumber,
    Operator,
    Separator,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    /// 1-based source line of the first character.
    pub line: u32,
    /// Byte offset of the first character.
    pub offset: usize,
}

impl Token {
    pub fn new(kind: TokenKind, text: impl Into<String>, line: u32, offset: usize) -> Token {
        Token {
            kind,
            text: text.into(),
            line,
            offset,
        }
    }

    pub fn is(&self, text: &str) -> bool {
        self.text == text
    }

    pub fn is_keyword(&self, kw: &str) -> bool {
        self.kind == TokenKind::Keyword && self.text == kw
    }

    pub fn is_sep(&self, s: &str) -> bool {
        self.kind == TokenKind::Separator && self.text == s
    }

    pub fn is_ident(&self) -> bool {
        self.kind == TokenKind::Identifier
    }

    /// Byte offset just past the last character.
    pub fn end(&self) -> usize {
        self.offset + self.text.len()
    }

    /// Last line touched by the token (text blocks span lines).
    pub fn end_line(&self) -> u32 {
        self.line + self.text.matches('\n').count() as u32
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LexError {
    #[error("unterminated literal starting at line {line}")]
    UnterminatedLiteral { line: u32, offset: usize },
    #[error("unterminated comment starting at line {line}")]
    UnterminatedComment { line: u32, offset: usize },
    #[error("unexpected character {ch:?} at line {line}")]
    UnexpectedChar { ch: char, line: u32, offset: usize },
}

pub const KEYWORDS: &[&str] = &[
    "abstract",
    "assert",
    "boolean",
    "break",
    "byte",
    "case",
    "catch",
    "char",
    "class",
    "const",
    "continue",
    "default",
    "do",
    "double",
    "else",
    "enum",
    "extends",
    "final",
    "finally",
    "float",
    "for",
    "goto",
    "if",
    "implements",
    "import",
    "instanceof",
    "int",
    "interface",
    "long",
    "native",
    "new",
    "package",
    "private",
    "protected",
    "public",
    "return",
    "short",
    "static",
    "strictfp",
    "super",
    "switch",
    "synchronized",
    "this",
    "throw",
    "throws",
    "transient",
    "try",
    "void",
    "volatile",
    "while",
    "true",
    "false",
    "null",
];

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

const OPERATORS: &[&str] = &[
    ">>>=", "<<=", ">>=", ">>>", "->", "++", "--", "&&", "||", "==", "!=", "<=", ">=", "+=", "-=", "*=", "/=", "%=",
    "&=", "|=", "^=", "<<", ">>", "=", ">", "<", "!", "~", "?", ":", "+", "-", "*", "/", "&", "|", "^", "%",
];

const SEPARATORS: &[&str] = &["...", "::", "(", ")", "{", "}", "[", "]", ";", ",", ".", "@"];

struct Lexer<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    line: u32,
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_' || c == '$'
}

fn is_ident_part(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '$'
}

impl<'a> Lexer<'a> {
    fn peek_char(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn byte_at(&self, i: usize) -> Option<u8> {
        self.bytes.get(i).copied()
    }

    fn advance_to(&mut self, end: usize) {
        self.line += self.src[self.pos..end].matches('\n').count() as u32;
        self.pos = end;
    }

    fn skip_trivia(&mut self) -> Result<(), LexError> {
        loop {
            match self.peek_char() {
                Some(c) if c.is_whitespace() || c == '\u{feff}' => {
                    self.advance_to(self.pos + c.len_utf8());
                }
                Some('/') if self.byte_at(self.pos + 1) == Some(b'/') => {
                    let end = self.src[self.pos..]
                        .find('\n')
                        .map(|i| self.pos + i)
                        .unwrap_or(self.src.len());
                    self.advance_to(end);
                }
                Some('/') if self.byte_at(self.pos + 1) == Some(b'*') => {
                    let (line, offset) = (self.line, self.pos);
                    let end = self.src[self.pos + 2..]
                        .find("*/")
                        .map(|i| self.pos + 2 + i + 2)
                        .ok_or(LexError::UnterminatedComment { line, offset })?;
                    self.advance_to(end);
                }
                _ => return Ok(()),
            }
        }
    }

    fn quoted(&self, quote: u8) -> Result<usize, LexError> {
        let mut i = self.pos + 1;
        loop {
            match self.byte_at(i) {
                None | Some(b'\n') | Some(b'\r') => {
                    return Err(LexError::UnterminatedLiteral {
                        line: self.line,
                        offset: self.pos,
                    })
                }
                Some(b'\\') => i += 2,
                Some(b) if b == quote => return Ok(i + 1),
                Some(_) => i += 1,
            }
        }
    }

    fn text_block(&self) -> Result<usize, LexError> {
        let mut i = self.pos + 3;
        loop {
            match self.byte_at(i) {
                None => {
                    return Err(LexError::UnterminatedLiteral {
                        line: self.line,
                        offset: self.pos,
                    })
                }
                Some(b'\\') => i += 2,
                Some(b'"') if self.src[i..].starts_with("\"\"\"") => return Ok(i + 3),
                Some(_) => i += 1,
            }
        }
    }

    fn number(&self) -> usize {
        let b = self.bytes;
        let mut i = self.pos;
        let digits = |i: &mut usize, pred: &dyn Fn(u8) -> bool| {
            while *i < b.len() && (pred(b[*i]) || b[*i] == b'_') {
                *i += 1;
            }
        };
        let hex = |c: u8| c.is_ascii_hexdigit();
        let dec = |c: u8| c.is_ascii_digit();
        if b[i] == b'0' && matches!(b.get(i + 1), Some(b'x' | b'X')) {
            i += 2;
            digits(&mut i, &hex);
            if b.get(i) == Some(&b'.') {
                i += 1;
                digits(&mut i, &hex);
            }
            if matches!(b.get(i), Some(b'p' | b'P')) {
                i += 1;
                if matches!(b.get(i), Some(b'+' | b'-')) {
                    i += 1;
                }
                digits(&mut i, &dec);
                if matches!(b.get(i), Some(b'f' | b'F' | b'd' | b'D')) {
                    i += 1;
                }
            } else if matches!(b.get(i), Some(b'l' | b'L')) {
                i += 1;
            }
            return i;
        }
        if b[i] == b'0' && matches!(b.get(i + 1), Some(b'b' | b'B')) {
            i += 2;
            digits(&mut i, &|c| c == b'0' || c == b'1');
            if matches!(b.get(i), Some(b'l' | b'L')) {
                i += 1;
            }
            return i;
        }
        digits(&mut i, &dec);
        let mut float = false;
        if b.get(i) == Some(&b'.')
            && b.get(i + 1).is_none_or(|c| {
                c.is_ascii_digit() || !(c.is_ascii_alphabetic() || *c == b'_' || *c == b'$' || *c == b'.')
            })
        {
            float = true;
            i += 1;
            digits(&mut i, &dec);
        }
        if matches!(b.get(i), Some(b'e' | b'E')) {
            let mut j = i + 1;
            if matches!(b.get(j), Some(b'+' | b'-')) {
                j += 1;
            }
            if b.get(j).is_some_and(u8::is_ascii_digit) {
                i = j;
                digits(&mut i, &dec);
                float = true;
            }
        }
        match b.get(i) {
            Some(b'f' | b'F' | b'd' | b'D') => i + 1,
            Some(b'l' | b'L') if !float => i + 1,
            _ => i,
        }
    }

    fn next_token(&mut self) -> Result<Option<Token>, LexError> {
        self.skip_trivia()?;
        let Some(c) = self.peek_char() else {
            return Ok(None);
        };
        let start = self.pos;
        let line = self.line;
        let (kind, end) = if is_ident_start(c) {
            let len: usize = self.src[start..]
                .chars()
                .take_while(|c| is_ident_part(*c))
                .map(char::len_utf8)
                .sum();
            let word = &self.src[start..start + len];
            let kind = if is_keyword(word) {
                TokenKind::Keyword
            } else {
                TokenKind::Identifier
            };
            (kind, start + len)
        } else if c.is_ascii_digit() || (c == '.' && self.byte_at(start + 1).is_some_and(|b| b.is_ascii_digit())) {
            (TokenKind::LiteralNumber, self.number())
        } else if self.src[start..].starts_with("\"\"\"") {
            (TokenKind::LiteralString, self.text_block()?)
        } else if c == '"' {
            (TokenKind::LiteralString, self.quoted(b'"')?)
        } else if c == '\'' {
            (TokenKind::LiteralChar, self.quoted(b'\'')?)
        } else if let Some(s) = SEPARATORS.iter().find(|s| self.src[start..].starts_with(**s)) {
            (TokenKind::Separator, start + s.len())
        } else if let Some(o) = OPERATORS.iter().find(|o| self.src[start..].starts_with(**o)) {
            (TokenKind::Operator, start + o.len())
        } else if c == '\\' && self.src[start..].starts_with("\\u") {
            // a Unicode escape outside a literal is kept as an identifier part
            let len = 2 + self.src[start + 2..]
                .chars()
                .take_while(|c| c.is_ascii_hexdigit() || *c == 'u')
                .count();
            let rest: usize = self.src[start + len..]
                .chars()
                .take_while(|c| is_ident_part(*c))
                .map(char::len_utf8)
                .sum();
            (TokenKind::Identifier, start + len + rest)
        } else {
            return Err(LexError::UnexpectedChar {
                ch: c,
                line,
                offset: start,
            });
        };
        let text = self.src[start..end].to_string();
        self.advance_to(end);
        Ok(Some(Token {
            kind,
            text,
            line,
            offset: start,
        }))
    }
}

/// Splits source text into tokens, dropping whitespace and comments.
pub fn lex(text: &str) -> Result<Vec<Token>, LexError> {
    let mut lx = Lexer {
        src: text,
        bytes: text.as_bytes(),
        pos: 0,
        line: 1,
    };
    let mut out = Vec::new();
    while let Some(t) = lx.next_token()? {
        out.push(t);
    }
    Ok(out)
}

/// Joins token texts with single spaces.
pub fn print_tokens(tokens: &[Token]) -> String {
    join_texts(tokens.iter().map(|t| t.text.as_str()))
}

pub fn join_texts<'a>(texts: impl IntoIterator<Item = &'a str>) -> String {
    let mut out = String::new();
    for (i, t) in texts.into_iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(t);
    }
    out
}

pub fn texts(tokens: &[Token]) -> Vec<String> {
    tokens.iter().map(|t| t.text.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<(TokenKind, String)> {
        lex(src).unwrap().into_iter().map(|t| (t.kind, t.text)).collect()
    }

    #[test]
    fn simple_declaration() {
        use TokenKind::*;
        let got = kinds("int x = 1;");
        let want = vec![
            (Keyword, "int"),
            (Identifier, "x"),
            (Operator, "="),
            (LiteralNumber, "1"),
            (Separator, ";"),
        ];
        assert_eq!(
            got,
            want.into_iter().map(|(k, s)| (k, s.to_string())).collect::<Vec<_>>()
        );
    }

    #[test]
    fn string_with_semicolon_is_one_token() {
        let t = lex(r#"f("a;b");"#).unwrap();
        assert_eq!(t[2].kind, TokenKind::LiteralString);
        assert_eq!(t[2].text, "\"a;b\"");
        assert_eq!(t.len(), 5);
    }

    #[test]
    fn unterminated() {
        assert!(matches!(
            lex("\"abc"),
            Err(LexError::UnterminatedLiteral { line: 1, offset: 0 })
        ));
        assert!(matches!(lex("a /* b"), Err(LexError::UnterminatedComment { .. })));
    }

    #[test]
    fn comments_lines_and_escapes() {
        let t = lex("a // x\n/* y\n z */ b \"\\u0041\\\"\" 'c' '\\''").unwrap();
        assert_eq!(t[0].line, 1);
        assert_eq!(t[1].text, "b");
        assert_eq!(t[1].line, 3);
        assert_eq!(t[2].text, "\"\\u0041\\\"\"");
        assert_eq!(t[3].kind, TokenKind::LiteralChar);
        assert_eq!(t[4].text, "'\\''");
    }

    #[test]
    fn numbers() {
        for n in [
            "0x1F", "0b101L", "1_000", "3.14f", "1e10", "2.", ".5", "10L", "0x1.8p3", "7d",
        ] {
            let t = lex(n).unwrap();
            assert_eq!(t.len(), 1, "{n}");
            assert_eq!(t[0].kind, TokenKind::LiteralNumber, "{n}");
        }
        let t = lex("a.b(1).c").unwrap();
        assert_eq!(t.len(), 8);
    }

    #[test]
    fn operators_longest_match() {
        let got: Vec<String> = lex("a >>>= b -> c :: d ... e")
            .unwrap()
            .into_iter()
            .map(|t| t.text)
            .collect();
        assert_eq!(got, vec!["a", ">>>=", "b", "->", "c", "::", "d", "...", "e"]);
    }

    #[test]
    fn text_block() {
        let t = lex("s = \"\"\"\n  hi \"q\"\n  \"\"\";").unwrap();
        assert_eq!(t[2].kind, TokenKind::LiteralString);
        assert_eq!(t[3].line, 3);
    }
}
