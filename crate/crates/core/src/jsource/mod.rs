//! Java source handling: lexing, statement splitting, string masking,
//! subtokenization and a shallow declaration model.

pub mod lexer;
pub mod mask;
pub mod model;
pub mod statements;
pub mod subtok;

pub use lexer::{lex, print_tokens, LexError, Token, TokenKind};
pub use mask::{mask_strings, STR};
pub use model::{
    parse_source, Annotation, ClassDecl, FieldDecl, Import, Member, MemberKind, MethodDecl, ModelError, Param,
    SourceModel, TypeKind,
};
pub use statements::{split_statements, SplitError, Statement};
pub use subtok::{
    detokenize, subtoken_texts, subtokenize, subtokens_of, CamelCaseSubtokenizer, Subtoken, Subtokenizer,
};
