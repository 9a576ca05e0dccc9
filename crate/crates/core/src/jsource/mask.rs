use super::lexer::{Token, TokenKind};

pub const STR: &str = "STR";

/// Replaces every string literal with the identifier `STR`.
pub fn mask_strings(tokens: &[Token]) -> Vec<Token> {
    tokens
        .iter()
        .map(|t| {
            if t.kind == TokenKind::LiteralString {
                Token::new(TokenKind::Identifier, STR, t.line, t.offset)
            } else {
                t.clone()
            }
        })
        .collect()
}

pub fn mask_strings_in_place(tokens: &mut [Token]) {
    for t in tokens {
        if t.kind == TokenKind::LiteralString {
            t.kind = TokenKind::Identifier;
            t.text = STR.to_string();
        }
    }
}
