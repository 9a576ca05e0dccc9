//! Independent reference implementations used as test oracles.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use testcomp_core::exec::{rerank, rerank_with_outcomes, ExecOutcome, ExecStatus, Runner};
use testcomp_core::metrics::{bleu, edit_similarity, edit_similarity_str, rouge_l_f1};
use testcomp_core::predictor::{Candidate, CandidateList};

fn ngrams(t: &[String], n: usize) -> Vec<Vec<String>> {
    if t.len() < n {
        return Vec::new();
    }
    (0..=t.len() - n).map(|i| t[i..i + n].to_vec()).collect()
}

/// Smoothed BLEU-4 by direct enumeration of n-grams.
pub fn bleu_oracle(p: &[String], g: &[String]) -> f64 {
    if p.is_empty() && g.is_empty() {
        return 1.0;
    }
    if p.is_empty() {
        return 0.0;
    }
    let mut product = 1.0f64;
    for n in 1..=4 {
        let pn = ngrams(p, n);
        let gn = ngrams(g, n);
        let mut matched = 0.0;
        let mut seen: Vec<&Vec<String>> = Vec::new();
        for gram in &pn {
            if seen.contains(&gram) {
                continue;
            }
            seen.push(gram);
            let cp = pn.iter().filter(|x| *x == gram).count();
            let cg = gn.iter().filter(|x| *x == gram).count();
            matched += cp.min(cg) as f64;
        }
        let total = pn.len() as f64;
        product *= if n == 1 {
            matched / total
        } else {
            (matched + 1.0) / (total + 1.0)
        };
    }
    let bp = if p.len() >= g.len() {
        1.0
    } else {
        (1.0 - g.len() as f64 / p.len() as f64).exp()
    };
    bp * product.powf(0.25)
}

fn lev(a: &[char], b: &[char], memo: &mut HashMap<(usize, usize), usize>) -> usize {
    if a.is_empty() {
        return b.len();
    }
    if b.is_empty() {
        return a.len();
    }
    if let Some(&d) = memo.get(&(a.len(), b.len())) {
        return d;
    }
    let cost = usize::from(a[0] != b[0]);
    let d = (lev(&a[1..], &b[1..], memo) + cost)
        .min(lev(&a[1..], b, memo) + 1)
        .min(lev(a, &b[1..], memo) + 1);
    memo.insert((a.len(), b.len()), d);
    d
}

/// Edit similarity from a memoized recursive edit distance.
pub fn edit_oracle(p: &[String], g: &[String]) -> f64 {
    let a: Vec<char> = p.join(" ").chars().collect();
    let b: Vec<char> = g.join(" ").chars().collect();
    let m = a.len().max(b.len());
    if m == 0 {
        return 1.0;
    }
    1.0 - lev(&a, &b, &mut HashMap::new()) as f64 / m as f64
}

fn is_subsequence(s: &[&String], t: &[String]) -> bool {
    let mut it = t.iter();
    s.iter().all(|x| it.any(|y| y == *x))
}

/// ROUGE-L F1 with the LCS found by trying every subsequence of `p`.
pub fn rouge_oracle(p: &[String], g: &[String]) -> f64 {
    if p.is_empty() && g.is_empty() {
        return 1.0;
    }
    let mut best = 0;
    for mask in 0u32..(1 << p.len()) {
        let sub: Vec<&String> = (0..p.len()).filter(|i| mask & (1 << i) != 0).map(|i| &p[i]).collect();
        if sub.len() > best && is_subsequence(&sub, g) {
            best = sub.len();
        }
    }
    if best == 0 {
        return 0.0;
    }
    let (pr, rc) = (best as f64 / p.len() as f64, best as f64 / g.len() as f64);
    2.0 * pr * rc / (pr + rc)
}

pub fn random_pairs(n: usize, seed: u64) -> Vec<(Vec<String>, Vec<String>)> {
    let vocab = ["a", "b", "c", "d", "x", "(", ")", ";", "assert", "equals"];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gen = |rng: &mut ChaCha8Rng| -> Vec<String> {
        let len = rng.gen_range(0..=8);
        (0..len)
            .map(|_| vocab[rng.gen_range(0..vocab.len())].to_string())
            .collect()
    };
    (0..n).map(|_| (gen(&mut rng), gen(&mut rng))).collect()
}

fn w(s: &str) -> Vec<String> {
    s.split_whitespace().map(str::to_string).collect()
}

/// Worked examples plus `cases` random pairs against the oracles to 1e-9.
pub fn metric_suite(cases: usize, seed: u64) -> Result<String, String> {
    let es = edit_similarity_str("abc", "abd");
    if format!("{es:.4}") != "0.6667" || es != 1.0 - 1.0 / 3.0 {
        return Err(format!("EditSim(abc, abd) = {es}"));
    }
    let r = rouge_l_f1(&w("a b c"), &w("a c"));
    if r != 0.8 {
        return Err(format!("ROUGE-L(a b c, a c) = {r}"));
    }
    let hand = (0.75f64 * 0.75 * (2.0 / 3.0) * 0.5).powf(0.25);
    let b = bleu(&w("a b c d"), &w("a b c e"));
    if (b - hand).abs() > 1e-9 {
        return Err(format!("BLEU(a b c d, a b c e) = {b}, hand {hand}"));
    }
    let mut worst = 0.0f64;
    for (p, g) in random_pairs(cases, seed) {
        for (name, got, want) in [
            ("BLEU", bleu(&p, &g), bleu_oracle(&p, &g)),
            ("EditSim", edit_similarity(&p, &g), edit_oracle(&p, &g)),
            ("ROUGE-L", rouge_l_f1(&p, &g), rouge_oracle(&p, &g)),
        ] {
            let d = (got - want).abs();
            worst = worst.max(d);
            if d > 1e-9 {
                return Err(format!("{name}({p:?}, {g:?}) = {got}, oracle {want}"));
            }
        }
    }
    Ok(format!("{cases} pairs x 3 metrics, max deviation {worst:e}"))
}

pub fn outcome(status: ExecStatus) -> ExecOutcome {
    ExecOutcome {
        status,
        runner: if status == ExecStatus::NotCompilable {
            Runner::None
        } else {
            Runner::AdhocMain
        },
        diagnostics: String::new(),
        duration_ms: 0,
    }
}

pub fn status_of(i: u8) -> ExecStatus {
    [
        ExecStatus::NotCompilable,
        ExecStatus::CompilableNotRunnable,
        ExecStatus::Runnable,
    ][i as usize % 3]
}

/// Pairwise definition: `a` precedes `b` when only `a` runs, or neither
/// runs and only `a` compiles, or both share a status and `a` scores higher.
pub fn precedes(a: (ExecStatus, f64), b: (ExecStatus, f64)) -> bool {
    (a.0.runs() && !b.0.runs())
        || (!a.0.runs() && !b.0.runs() && a.0.compiles() && !b.0.compiles())
        || (a.0 == b.0 && a.1 > b.1)
}

/// Checks one reranking of `(status, score)` items, given in descending
/// score order, against the pairwise definition, stability and idempotence.
pub fn check_rerank(items: &[(u8, i32)]) -> Result<(), String> {
    let l = CandidateList {
        candidates: items
            .iter()
            .enumerate()
            .map(|(i, (_, s))| Candidate::new(vec![format!("c{i}")], *s as f64))
            .collect(),
    };
    let outcomes: Vec<ExecOutcome> = items.iter().map(|(st, _)| outcome(status_of(*st))).collect();
    let (r, ro) = rerank_with_outcomes(&l, &outcomes).map_err(|e| e.to_string())?;
    let pos: Vec<usize> = r.candidates.iter().map(|c| c.tokens[0][1..].parse().unwrap()).collect();
    let mut sorted = pos.clone();
    sorted.sort();
    if sorted != (0..l.len()).collect::<Vec<_>>() {
        return Err(format!("not a permutation: {pos:?}"));
    }
    for x in 0..pos.len() {
        for y in x + 1..pos.len() {
            let (i, j) = (pos[x], pos[y]);
            let a = (status_of(items[i].0), items[i].1 as f64);
            let b = (status_of(items[j].0), items[j].1 as f64);
            if precedes(b, a) {
                return Err(format!("{a:?} placed before {b:?} in {items:?}"));
            }
            if a == b && i > j {
                return Err(format!("unstable order of equal keys in {items:?}"));
            }
        }
        if ro[x].status != status_of(items[pos[x]].0) {
            return Err("outcomes not permuted with candidates".into());
        }
    }
    if rerank(&r, &ro).map_err(|e| e.to_string())? != r {
        return Err(format!("not idempotent on {items:?}"));
    }
    Ok(())
}

/// `cases` random lists of up to ten candidates.
pub fn rerank_suite(cases: usize, seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let n = rng.gen_range(0..=10);
        let mut items: Vec<(u8, i32)> = (0..n).map(|_| (rng.gen_range(0..3), rng.gen_range(-4..4))).collect();
        items.sort_by_key(|x| std::cmp::Reverse(x.1));
        check_rerank(&items)?;
    }
    Ok(format!(
        "{cases} random lists, pairwise order, stability and idempotence hold"
    ))
}
