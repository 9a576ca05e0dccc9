//! Token-level similarity metrics.

use std::collections::HashMap;

fn normalized(tokens: &[String]) -> Vec<&str> {
    tokens.iter().flat_map(|t| t.split_whitespace()).collect()
}

/// Token sequences equal up to whitespace.
pub fn exact_match(pred: &[String], gold: &[String]) -> bool {
    normalized(pred) == normalized(gold)
}

/// Any of the first `k` predictions matches exactly.
pub fn acc_at_k(preds: &[Vec<String>], gold: &[String], k: usize) -> bool {
    preds.iter().take(k).any(|p| exact_match(p, gold))
}

fn ngrams(tokens: &[String], n: usize) -> HashMap<&[String], usize> {
    let mut out: HashMap<&[String], usize> = HashMap::new();
    if tokens.len() >= n {
        for w in tokens.windows(n) {
            *out.entry(w).or_default() += 1;
        }
    }
    out
}

/// Clipped n-gram matches and the candidate's n-gram count.
pub fn ngram_overlap(pred: &[String], gold: &[String], n: usize) -> (usize, usize) {
    let p = ngrams(pred, n);
    let g = ngrams(gold, n);
    let matched = p.iter().map(|(k, c)| (*c).min(g.get(k).copied().unwrap_or(0))).sum();
    (matched, pred.len().saturating_sub(n - 1))
}

/// Brevity penalty for candidate length `c` against reference length `r`.
pub fn brevity_penalty(c: usize, r: usize) -> f64 {
    if c == 0 {
        0.0
    } else if c >= r {
        1.0
    } else {
        (1.0 - r as f64 / c as f64).exp()
    }
}

/// Geometric mean of the four smoothed precisions times the brevity
/// penalty. Orders above one add one to both counts.
pub fn bleu_from_precisions(counts: [(f64, f64); 4], c: usize, r: usize) -> f64 {
    let mut log_sum = 0.0;
    for (i, &(m, t)) in counts.iter().enumerate() {
        let (m, t) = if i == 0 { (m, t) } else { (m + 1.0, t + 1.0) };
        if m == 0.0 || t == 0.0 {
            return 0.0;
        }
        log_sum += (m / t).ln();
    }
    brevity_penalty(c, r) * (log_sum / 4.0).exp()
}

/// Sentence BLEU-4 with add-one smoothing of the 2- to 4-gram precisions.
pub fn bleu(pred: &[String], gold: &[String]) -> f64 {
    if pred.is_empty() && gold.is_empty() {
        return 1.0;
    }
    let mut counts = [(0.0, 0.0); 4];
    for (i, c) in counts.iter_mut().enumerate() {
        let (m, t) = ngram_overlap(pred, gold, i + 1);
        *c = (m as f64, t as f64);
    }
    bleu_from_precisions(counts, pred.len(), gold.len())
}

fn levenshtein(a: &[char], b: &[char]) -> usize {
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, ca) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, cb) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(ca != cb);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// One minus the character edit distance over the longer length.
pub fn edit_similarity_str(pred: &str, gold: &str) -> f64 {
    let a: Vec<char> = pred.chars().collect();
    let b: Vec<char> = gold.chars().collect();
    let longest = a.len().max(b.len());
    if longest == 0 {
        return 1.0;
    }
    1.0 - levenshtein(&a, &b) as f64 / longest as f64
}

/// Edit similarity of the token sequences joined by single spaces.
pub fn edit_similarity(pred: &[String], gold: &[String]) -> f64 {
    edit_similarity_str(&pred.join(" "), &gold.join(" "))
}

pub fn lcs_len(a: &[String], b: &[String]) -> usize {
    let mut prev = vec![0usize; b.len() + 1];
    let mut cur = vec![0usize; b.len() + 1];
    for x in a {
        for (j, y) in b.iter().enumerate() {
            cur[j + 1] = if x == y { prev[j] + 1 } else { prev[j + 1].max(cur[j]) };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// ROUGE-L F1 over the longest common subsequence.
pub fn rouge_l_f1(pred: &[String], gold: &[String]) -> f64 {
    if pred.is_empty() && gold.is_empty() {
        return 1.0;
    }
    let l = lcs_len(pred, gold) as f64;
    if l == 0.0 {
        return 0.0;
    }
    let p = l / pred.len() as f64;
    let r = l / gold.len() as f64;
    2.0 * p * r / (p + r)
}
