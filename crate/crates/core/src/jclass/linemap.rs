//! Statement to instruction-range mapping via the line-number table.

use serde::{Deserialize, Serialize};

use super::classfile::MethodInfo;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LineMapError {
    #[error("method has no code attribute")]
    NoCode,
    #[error("method has no line-number table")]
    NoLineTable,
    #[error("statements {first} and {second} share source line {line}")]
    AmbiguousLineMapping { line: u32, first: usize, second: usize },
    #[error("instructions of statement {0} are not contiguous")]
    NonContiguous(usize),
}

/// Half-open instruction offset range `[start, end)` of one statement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatementRange {
    pub statement: usize,
    pub start: u32,
    pub end: u32,
}

impl StatementRange {
    pub fn contains(&self, offset: u32) -> bool {
        self.start <= offset && offset < self.end
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

/// Source line of the instruction at `pc`: the entry with the greatest
/// start pc not exceeding it.
pub fn line_of(table: &[(u32, u32)], pc: u32) -> Option<u32> {
    let i = table.partition_point(|(start, _)| *start <= pc);
    if i == 0 {
        None
    } else {
        Some(table[i - 1].1)
    }
}

/// Maps statements, given by their inclusive line spans, to disjoint
/// instruction ranges in statement order. Instructions on lines outside
/// every statement (such as the implicit return) belong to no range.
/// A statement without instructions gets an empty range where it sits.
pub fn map_statements_to_instructions(
    method: &MethodInfo,
    spans: &[(u32, u32)],
) -> Result<Vec<StatementRange>, LineMapError> {
    let code = method.code().ok_or(LineMapError::NoCode)?;
    let table: Vec<(u32, u32)> = code
        .line_numbers()
        .iter()
        .map(|l| (l.start_pc as u32, l.line as u32))
        .collect();
    if table.is_empty() && !spans.is_empty() {
        return Err(LineMapError::NoLineTable);
    }
    for i in 0..spans.len() {
        for j in i + 1..spans.len() {
            let (a, b) = (spans[i], spans[j]);
            if a.0 <= b.1 && b.0 <= a.1 {
                return Err(LineMapError::AmbiguousLineMapping {
                    line: a.0.max(b.0),
                    first: i,
                    second: j,
                });
            }
        }
    }
    let owner = |line: u32| spans.iter().position(|(lo, hi)| *lo <= line && line <= *hi);

    let instructions = code.instructions();
    // statement owning each instruction
    let owners: Vec<Option<usize>> = instructions
        .iter()
        .map(|ins| line_of(&table, ins.offset).and_then(owner))
        .collect();

    let mut ranges: Vec<Option<(usize, usize)>> = vec![None; spans.len()];
    for (k, o) in owners.iter().enumerate() {
        if let Some(s) = o {
            let r = ranges[*s].get_or_insert((k, k));
            r.1 = k;
        }
    }
    let mut out = Vec::with_capacity(spans.len());
    let body_start = owners
        .iter()
        .position(Option::is_some)
        .map(|k| instructions[k].offset)
        .unwrap_or(0);
    let mut prev_end = body_start;
    for (s, r) in ranges.iter().enumerate() {
        match r {
            None => out.push(StatementRange {
                statement: s,
                start: prev_end,
                end: prev_end,
            }),
            Some((first, last)) => {
                if owners[*first..=*last].iter().any(|o| *o != Some(s)) {
                    return Err(LineMapError::NonContiguous(s));
                }
                let start = instructions[*first].offset;
                let end = instructions[*last].next_offset();
                if start < prev_end {
                    return Err(LineMapError::NonContiguous(s));
                }
                out.push(StatementRange {
                    statement: s,
                    start,
                    end,
                });
                prev_end = end;
            }
        }
    }
    Ok(out)
}
