//! Splitting a method body into top-level statements.

use serde::{Deserialize, Serialize};

use super::lexer::{Token, TokenKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Statement {
    pub tokens: Vec<Token>,
    /// Inclusive (first line, last line).
    pub line_span: (u32, u32),
    pub has_control_flow: bool,
    pub has_lambda: bool,
}

impl Statement {
    pub fn from_tokens(tokens: Vec<Token>) -> Statement {
        let first = tokens.first().map(|t| t.line).unwrap_or(0);
        let last = tokens.iter().map(Token::end_line).max().unwrap_or(first);
        let mut depth = 0i32;
        let mut has_control_flow = false;
        let mut has_lambda = false;
        for t in &tokens {
            match t.text.as_str() {
                "(" | "[" | "{" if t.kind == TokenKind::Separator => depth += 1,
                ")" | "]" | "}" if t.kind == TokenKind::Separator => depth -= 1,
                "->" if t.kind == TokenKind::Operator => has_lambda = true,
                "::" if t.kind == TokenKind::Separator => has_lambda = true,
                "if" | "for" | "while" | "do" | "switch" | "try" if t.kind == TokenKind::Keyword && depth == 0 => {
                    has_control_flow = true
                }
                _ => {}
            }
        }
        Statement {
            tokens,
            line_span: (first, last),
            has_control_flow,
            has_lambda,
        }
    }

    pub fn text(&self) -> String {
        super::lexer::print_tokens(&self.tokens)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SplitError {
    #[error("unbalanced brackets at line {line}")]
    UnbalancedBraces { line: u32 },
    #[error("statement starting at line {line} is not terminated")]
    UnterminatedStatement { line: u32 },
}

const BLOCK_KEYWORDS: &[&str] = &["if", "for", "while", "do", "switch", "try", "synchronized"];
const CONTINUATIONS: &[&str] = &["else", "catch", "finally"];
const TYPE_DECL: &[&str] = &["class", "interface", "enum"];
const DECL_MODIFIERS: &[&str] = &["final", "abstract", "static", "strictfp"];

/// Whether the statement starting at `start` ends at its first closing
/// brace at depth zero (blocks, control statements, local classes).
fn is_block_like(tokens: &[Token], start: usize) -> bool {
    let mut i = start;
    // labels
    while i + 1 < tokens.len() && tokens[i].is_ident() && tokens[i + 1].is(":") {
        i += 2;
    }
    let Some(t) = tokens.get(i) else {
        return false;
    };
    if t.is_sep("{") {
        return true;
    }
    if t.kind == TokenKind::Keyword && BLOCK_KEYWORDS.contains(&t.text.as_str()) {
        return true;
    }
    // local type declarations, possibly annotated or with modifiers
    let mut j = i;
    loop {
        match tokens.get(j) {
            Some(t) if t.is_sep("@") => {
                j += 2;
                if tokens.get(j).is_some_and(|t| t.is_sep("(")) {
                    j = skip_balanced(tokens, j);
                }
            }
            Some(t) if t.kind == TokenKind::Keyword && DECL_MODIFIERS.contains(&t.text.as_str()) => j += 1,
            Some(t) if t.kind == TokenKind::Keyword && TYPE_DECL.contains(&t.text.as_str()) => return true,
            Some(t) if t.is_ident() && t.text == "record" => {
                return tokens.get(j + 1).is_some_and(Token::is_ident)
                    && tokens.get(j + 2).is_some_and(|t| t.is_sep("(") || t.is("<"));
            }
            _ => return false,
        }
    }
}

/// Index just past the bracket group opening at `open`.
pub(crate) fn skip_balanced(tokens: &[Token], open: usize) -> usize {
    let mut depth = 0i32;
    let mut i = open;
    while i < tokens.len() {
        let t = &tokens[i];
        if t.kind == TokenKind::Separator {
            match t.text.as_str() {
                "(" | "[" | "{" => depth += 1,
                ")" | "]" | "}" => {
                    depth -= 1;
                    if depth <= 0 {
                        return i + 1;
                    }
                }
                _ => {}
            }
        }
        i += 1;
    }
    tokens.len()
}

/// Splits body tokens (without the enclosing braces) into statements at
/// top-level `;` and at the closing braces of block statements.
pub fn split_statements(body: &[Token]) -> Result<Vec<Statement>, SplitError> {
    let mut out = Vec::new();
    let mut start = 0usize;
    while start < body.len() {
        let block_like = is_block_like(body, start);
        let is_do = body[start].is_keyword("do");
        let mut seen_while = false;
        let mut depth = 0i32;
        let mut end = None;
        let mut i = start;
        while i < body.len() {
            let t = &body[i];
            if t.kind == TokenKind::Separator {
                match t.text.as_str() {
                    "(" | "[" | "{" => depth += 1,
                    ")" | "]" | "}" => {
                        depth -= 1;
                        if depth < 0 {
                            return Err(SplitError::UnbalancedBraces { line: t.line });
                        }
                    }
                    _ => {}
                }
            }
            if depth == 0 {
                if is_do && i > start && t.is_keyword("while") {
                    seen_while = true;
                }
                let closes_block = block_like && t.is_sep("}");
                let semi = t.is_sep(";") && (!is_do || seen_while);
                if closes_block || semi {
                    let next = body.get(i + 1);
                    let continues = next
                        .is_some_and(|n| n.kind == TokenKind::Keyword && CONTINUATIONS.contains(&n.text.as_str()))
                        || (is_do && !seen_while);
                    if !(block_like && continues) {
                        end = Some(i + 1);
                        break;
                    }
                }
            }
            i += 1;
        }
        match end {
            Some(e) => {
                out.push(Statement::from_tokens(body[start..e].to_vec()));
                start = e;
            }
            None if depth > 0 => return Err(SplitError::UnbalancedBraces { line: body[start].line }),
            None => return Err(SplitError::UnterminatedStatement { line: body[start].line }),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jsource::lexer::lex;

    fn split(src: &str) -> Vec<String> {
        split_statements(&lex(src).unwrap())
            .unwrap()
            .iter()
            .map(Statement::text)
            .collect()
    }

    #[test]
    fn straight_line() {
        assert_eq!(
            split("exception.expect(IllegalArgumentException.class);\nsut.addImage((File) null);"),
            vec![
                "exception . expect ( IllegalArgumentException . class ) ;",
                "sut . addImage ( ( File ) null ) ;"
            ]
        );
        assert!(split("").is_empty());
    }

    #[test]
    fn blocks_and_continuations() {
        let s = split("if (a) { b(); } else { c(); } d(); try { e(); } catch (E x) { } finally { f(); } g();");
        assert_eq!(s.len(), 4);
        let s = split("if (a) b(); else c(); do x(); while (y); do { z(); } while (w); { q(); }");
        assert_eq!(s.len(), 4);
        let s = split(
            "int[] a = {1, 2}; Runnable r = new Runnable() { public void run() {} }; class L {} lbl: for (;;) {}",
        );
        assert_eq!(s.len(), 4);
    }

    #[test]
    fn flags() {
        let b = split_statements(
            &lex("if (x) { y(); } Runnable r = () -> go(); f(this::g); h(new Object() { void m() { if (a) {} } });")
                .unwrap(),
        )
        .unwrap();
        assert!(b[0].has_control_flow && !b[0].has_lambda);
        assert!(b[1].has_lambda && !b[1].has_control_flow);
        assert!(b[2].has_lambda);
        assert!(!b[3].has_control_flow);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            split_statements(&lex("a(); }").unwrap()),
            Err(SplitError::UnbalancedBraces { .. })
        ));
        assert!(matches!(
            split_statements(&lex("a(").unwrap()),
            Err(SplitError::UnbalancedBraces { .. })
        ));
        assert!(matches!(
            split_statements(&lex("a()").unwrap()),
            Err(SplitError::UnterminatedStatement { .. })
        ));
    }

    #[test]
    fn line_spans() {
        let b = split_statements(&lex("a(\n1);\nb();").unwrap()).unwrap();
        assert_eq!(b[0].line_span, (1, 2));
        assert_eq!(b[1].line_span, (3, 3));
    }
}
