//! CodeBLEU over statement tokens with a bracket-tree syntax component.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::similarity::{bleu, bleu_from_precisions, ngram_overlap};
use crate::jsource::lexer::is_keyword;

pub const KEYWORD_WEIGHT: f64 = 1.0;
pub const OTHER_WEIGHT: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CodeBleuWeights {
    pub ngram: f64,
    pub weighted_ngram: f64,
    pub syntax: f64,
    pub dataflow: f64,
}

impl Default for CodeBleuWeights {
    fn default() -> Self {
        CodeBleuWeights {
            ngram: 0.25,
            weighted_ngram: 0.25,
            syntax: 0.25,
            dataflow: 0.25,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct CodeBleuScore {
    pub ngram: f64,
    pub weighted_ngram: f64,
    pub syntax: f64,
    pub dataflow: f64,
    pub total: f64,
}

fn token_weight(t: &str) -> f64 {
    if is_keyword(t) {
        KEYWORD_WEIGHT
    } else {
        OTHER_WEIGHT
    }
}

/// BLEU whose unigram precision weights keywords above other tokens.
pub fn weighted_bleu(pred: &[String], gold: &[String]) -> f64 {
    if pred.is_empty() && gold.is_empty() {
        return 1.0;
    }
    let mut gold_counts: HashMap<&str, usize> = HashMap::new();
    for t in gold {
        *gold_counts.entry(t).or_default() += 1;
    }
    let mut pred_counts: HashMap<&str, usize> = HashMap::new();
    for t in pred {
        *pred_counts.entry(t).or_default() += 1;
    }
    let (mut m, mut total) = (0.0, 0.0);
    for (t, c) in &pred_counts {
        let w = token_weight(t);
        m += w * (*c).min(gold_counts.get(t).copied().unwrap_or(0)) as f64;
        total += w * *c as f64;
    }
    let mut counts = [(m, total), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0)];
    for (i, c) in counts.iter_mut().enumerate().skip(1) {
        let (m, t) = ngram_overlap(pred, gold, i + 1);
        *c = (m as f64, t as f64);
    }
    bleu_from_precisions(counts, pred.len(), gold.len())
}

fn closing(open: &str) -> Option<&'static str> {
    match open {
        "(" => Some(")"),
        "[" => Some("]"),
        "{" => Some("}"),
        _ => None,
    }
}

/// Every bracketed group of a statement plus the whole statement, each
/// written as its token sequence with nested groups collapsed to their
/// bracket pair.
pub fn bracket_subtrees(tokens: &[String]) -> Vec<Vec<String>> {
    let mut out = Vec::new();
    let mut stack: Vec<(String, Vec<String>)> = vec![(String::new(), Vec::new())];
    for t in tokens {
        if closing(t).is_some() {
            stack.push((t.clone(), vec![t.clone()]));
            continue;
        }
        let top_open = stack.last().map(|(o, _)| o.clone()).unwrap_or_default();
        if !top_open.is_empty() && closing(&top_open) == Some(t.as_str()) {
            let (open, mut seq) = stack.pop().expect("open group");
            seq.push(t.clone());
            out.push(seq);
            let parent = &mut stack.last_mut().expect("root").1;
            parent.push(open);
            parent.push(t.clone());
        } else {
            stack.last_mut().expect("root").1.push(t.clone());
        }
    }
    while stack.len() > 1 {
        let (_, seq) = stack.pop().expect("group");
        stack.last_mut().expect("root").1.extend(seq);
    }
    out.push(stack.pop().expect("root").1);
    out
}

/// Share of the reference subtrees matched by distinct prediction subtrees.
pub fn syntax_match(pred: &[String], gold: &[String]) -> f64 {
    let gold_trees = bracket_subtrees(gold);
    let mut pool: HashMap<Vec<String>, usize> = HashMap::new();
    for t in bracket_subtrees(pred) {
        *pool.entry(t).or_default() += 1;
    }
    let mut matched = 0usize;
    for t in &gold_trees {
        if let Some(c) = pool.get_mut(t) {
            if *c > 0 {
                *c -= 1;
                matched += 1;
            }
        }
    }
    matched as f64 / gold_trees.len() as f64
}

fn is_variable(tokens: &[String], i: usize) -> bool {
    let t = &tokens[i];
    let starts_ok = t
        .chars()
        .next()
        .is_some_and(|c| c.is_lowercase() || c == '_' || c == '$');
    starts_ok
        && !is_keyword(t)
        && t.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '$')
        && !tokens.get(i + 1).is_some_and(|n| n == "(")
        && !(i > 0 && tokens[i - 1] == ".")
}

/// Def-use pairs `(defined, used)` of the assignments in a statement, with
/// variables renamed by order of first appearance.
pub fn dataflow_pairs(tokens: &[String]) -> Vec<(String, String)> {
    let mut names: HashMap<&str, String> = HashMap::new();
    for (i, t) in tokens.iter().enumerate() {
        if is_variable(tokens, i) && !names.contains_key(t.as_str()) {
            let n = format!("var_{}", names.len());
            names.insert(t, n);
        }
    }
    let mut out = Vec::new();
    for (i, t) in tokens.iter().enumerate() {
        let compound = t.len() >= 2 && t.ends_with('=') && !matches!(t.as_str(), "==" | "!=" | "<=" | ">=");
        if t != "=" && !compound {
            continue;
        }
        let Some(target) = (0..i).rev().find(|&j| is_variable(tokens, j)) else {
            continue;
        };
        if target + 1 != i && !tokens[target + 1..i].iter().all(|x| x == "]" || x == "[") {
            continue;
        }
        let def = names[tokens[target].as_str()].clone();
        let end = tokens[i + 1..]
            .iter()
            .position(|x| x == ";" || x == "," || x == "=")
            .map_or(tokens.len(), |p| i + 1 + p);
        if compound {
            out.push((def.clone(), def.clone()));
        }
        for j in i + 1..end {
            if is_variable(tokens, j) {
                out.push((def.clone(), names[tokens[j].as_str()].clone()));
            }
        }
    }
    out
}

/// Share of the reference def-use pairs present in the prediction. A
/// reference without pairs matches only a prediction without pairs.
pub fn dataflow_match(pred: &[String], gold: &[String]) -> f64 {
    let gold_pairs = dataflow_pairs(gold);
    let pred_pairs = dataflow_pairs(pred);
    if gold_pairs.is_empty() {
        return if pred_pairs.is_empty() { 1.0 } else { 0.0 };
    }
    let mut pool: HashMap<&(String, String), usize> = HashMap::new();
    for p in &pred_pairs {
        *pool.entry(p).or_default() += 1;
    }
    let mut matched = 0usize;
    for p in &gold_pairs {
        if let Some(c) = pool.get_mut(p) {
            if *c > 0 {
                *c -= 1;
                matched += 1;
            }
        }
    }
    matched as f64 / gold_pairs.len() as f64
}

/// Weighted combination of the four components. Components with zero
/// weight are not computed and report 0.
pub fn codebleu(pred: &[String], gold: &[String], weights: &CodeBleuWeights) -> CodeBleuScore {
    let part = |w: f64, f: &dyn Fn() -> f64| if w == 0.0 { 0.0 } else { f() };
    let ngram = part(weights.ngram, &|| bleu(pred, gold));
    let weighted_ngram = part(weights.weighted_ngram, &|| weighted_bleu(pred, gold));
    let syntax = part(weights.syntax, &|| syntax_match(pred, gold));
    let dataflow = part(weights.dataflow, &|| dataflow_match(pred, gold));
    let total = weights.ngram * ngram
        + weights.weighted_ngram * weighted_ngram
        + weights.syntax * syntax
        + weights.dataflow * dataflow;
    CodeBleuScore {
        ngram,
        weighted_ngram,
        syntax,
        dataflow,
        total,
    }
}
