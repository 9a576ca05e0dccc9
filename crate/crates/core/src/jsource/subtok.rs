//! Identifier subtokenization with reversible split markers.

use serde::{Deserialize, Serialize};

use super::lexer::{Token, TokenKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Case {
    Lower,
    /// First character upper case, rest lower.
    Title,
    Upper,
    /// `text` holds the original spelling.
    Verbatim,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenStart {
    pub kind: TokenKind,
    pub line: u32,
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mark {
    /// Present on the first subtoken of each source token.
    pub start: Option<TokenStart>,
    /// Separator characters (`_`, `$`) dropped before this piece.
    pub prefix: String,
    /// Separator characters dropped after the last piece.
    pub suffix: String,
    pub case: Case,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subtoken {
    pub text: String,
    pub mark: Mark,
}

pub trait Subtokenizer: Send + Sync {
    fn subtokenize(&self, tokens: &[Token]) -> Vec<Subtoken>;
    fn detokenize(&self, subtokens: &[Subtoken]) -> Vec<Token>;
}

/// Splits identifiers on camel-case humps, underscores and letter/digit
/// boundaries, lower-casing each piece.
#[derive(Debug, Default, Clone, Copy)]
pub struct CamelCaseSubtokenizer;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Class {
    Upper,
    Lower,
    Digit,
    Sep,
}

fn class_of(c: char) -> Class {
    if c == '_' || c == '$' {
        Class::Sep
    } else if c.is_numeric() {
        Class::Digit
    } else if c.is_uppercase() {
        Class::Upper
    } else {
        Class::Lower
    }
}

fn restore(text: &str, case: Case) -> String {
    match case {
        Case::Lower | Case::Verbatim => text.to_string(),
        Case::Upper => text.to_uppercase(),
        Case::Title => {
            let mut cs = text.chars();
            match cs.next() {
                Some(f) => f.to_uppercase().chain(cs).collect(),
                None => String::new(),
            }
        }
    }
}

fn piece_subtoken(piece: &str, prefix: String) -> Subtoken {
    let lower = piece.to_lowercase();
    let case = [Case::Lower, Case::Title, Case::Upper]
        .into_iter()
        .find(|c| restore(&lower, *c) == piece);
    let (text, case) = match case {
        Some(c) => (lower, c),
        None => (piece.to_string(), Case::Verbatim),
    };
    Subtoken {
        text,
        mark: Mark {
            start: None,
            prefix,
            suffix: String::new(),
            case,
        },
    }
}

/// Pieces of an identifier with the separator run preceding each, plus any
/// trailing separators.
pub fn split_identifier(ident: &str) -> (Vec<(String, String)>, String) {
    let chars: Vec<char> = ident.chars().collect();
    let mut pieces: Vec<(String, String)> = Vec::new();
    let mut sep = String::new();
    let mut cur = String::new();
    for (i, &c) in chars.iter().enumerate() {
        let k = class_of(c);
        if k == Class::Sep {
            if !cur.is_empty() {
                pieces.push((std::mem::take(&mut sep), std::mem::take(&mut cur)));
            }
            sep.push(c);
            continue;
        }
        if let Some(&p) = cur.chars().last().as_ref() {
            let pk = class_of(p);
            let next_lower = chars.get(i + 1).is_some_and(|n| class_of(*n) == Class::Lower);
            let boundary = (pk == Class::Lower && k == Class::Upper)
                || (pk != Class::Digit && k == Class::Digit)
                || (pk == Class::Digit && k != Class::Digit)
                || (pk == Class::Upper && k == Class::Upper && next_lower);
            if boundary {
                pieces.push((std::mem::take(&mut sep), std::mem::take(&mut cur)));
            }
        }
        cur.push(c);
    }
    if !cur.is_empty() {
        pieces.push((std::mem::take(&mut sep), cur));
    }
    (pieces, sep)
}

impl Subtokenizer for CamelCaseSubtokenizer {
    fn subtokenize(&self, tokens: &[Token]) -> Vec<Subtoken> {
        let mut out = Vec::with_capacity(tokens.len() * 2);
        for t in tokens {
            let start = TokenStart {
                kind: t.kind,
                line: t.line,
                offset: t.offset,
            };
            let first = out.len();
            let (pieces, trailing) = if t.kind == TokenKind::Identifier {
                split_identifier(&t.text)
            } else {
                (Vec::new(), String::new())
            };
            if pieces.is_empty() {
                out.push(Subtoken {
                    text: t.text.clone(),
                    mark: Mark {
                        start: None,
                        prefix: String::new(),
                        suffix: String::new(),
                        case: Case::Verbatim,
                    },
                });
            } else {
                for (prefix, piece) in pieces {
                    out.push(piece_subtoken(&piece, prefix));
                }
                out.last_mut().expect("non-empty").mark.suffix = trailing;
            }
            out[first].mark.start = Some(start);
        }
        out
    }

    fn detokenize(&self, subtokens: &[Subtoken]) -> Vec<Token> {
        let mut out: Vec<Token> = Vec::new();
        for s in subtokens {
            if let Some(st) = &s.mark.start {
                out.push(Token::new(st.kind, String::new(), st.line, st.offset));
            }
            let Some(cur) = out.last_mut() else {
                continue;
            };
            cur.text.push_str(&s.mark.prefix);
            cur.text.push_str(&restore(&s.text, s.mark.case));
            cur.text.push_str(&s.mark.suffix);
        }
        out
    }
}

pub fn subtokenize(tokens: &[Token]) -> Vec<Subtoken> {
    CamelCaseSubtokenizer.subtokenize(tokens)
}

pub fn detokenize(subtokens: &[Subtoken]) -> Vec<Token> {
    CamelCaseSubtokenizer.detokenize(subtokens)
}

/// Subtoken texts only, the unit used for model input and metrics.
pub fn subtoken_texts(tokens: &[Token]) -> Vec<String> {
    subtokenize(tokens).into_iter().map(|s| s.text).collect()
}

/// Subtokens of token texts, relexed as one fragment. Texts that do not
/// lex are kept whole.
pub fn subtokens_of(texts: &[String]) -> Vec<String> {
    match crate::jsource::lex(&texts.join(" ")) {
        Ok(tokens) => subtoken_texts(&tokens),
        Err(_) => texts.to_vec(),
    }
}
