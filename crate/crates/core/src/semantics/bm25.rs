//! Okapi BM25 over subtoken documents.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Bm25Params {
    pub k1: f64,
    pub b: f64,
}

impl Default for Bm25Params {
    fn default() -> Self {
        Bm25Params { k1: 1.2, b: 0.75 }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Bm25Stats {
    pub doc_count: usize,
    pub avg_doc_len: f64,
    pub doc_freq: BTreeMap<String, usize>,
}

impl Bm25Stats {
    pub fn from_docs<D: AsRef<[String]>>(docs: &[D]) -> Bm25Stats {
        let mut doc_freq: BTreeMap<String, usize> = BTreeMap::new();
        let mut total = 0usize;
        for d in docs {
            let d = d.as_ref();
            total += d.len();
            let mut terms: Vec<&String> = d.iter().collect();
            terms.sort();
            terms.dedup();
            for t in terms {
                *doc_freq.entry(t.clone()).or_default() += 1;
            }
        }
        let avg_doc_len = if docs.is_empty() {
            0.0
        } else {
            total as f64 / docs.len() as f64
        };
        Bm25Stats {
            doc_count: docs.len(),
            avg_doc_len,
            doc_freq,
        }
    }

    pub fn df(&self, term: &str) -> usize {
        self.doc_freq.get(term).copied().unwrap_or(0)
    }

    /// `ln((N - df + 0.5) / (df + 0.5))`, floored at zero.
    pub fn idf(&self, term: &str) -> f64 {
        let n = self.doc_count as f64;
        let df = self.df(term) as f64;
        ((n - df + 0.5) / (df + 0.5)).ln().max(0.0)
    }
}

fn term_weight(idf: f64, tf: f64, doc_len: f64, stats: &Bm25Stats, p: &Bm25Params) -> f64 {
    if tf == 0.0 || idf == 0.0 {
        return 0.0;
    }
    let norm = if stats.avg_doc_len > 0.0 {
        1.0 - p.b + p.b * doc_len / stats.avg_doc_len
    } else {
        1.0
    };
    idf * tf * (p.k1 + 1.0) / (tf + p.k1 * norm)
}

/// Score of `doc` for `query`; repeated query terms count repeatedly.
pub fn bm25_score(query: &[String], doc: &[String], stats: &Bm25Stats, params: &Bm25Params) -> f64 {
    let mut tf: HashMap<&str, usize> = HashMap::new();
    for t in doc {
        *tf.entry(t.as_str()).or_default() += 1;
    }
    query
        .iter()
        .map(|q| {
            let f = tf.get(q.as_str()).copied().unwrap_or(0) as f64;
            term_weight(stats.idf(q), f, doc.len() as f64, stats, params)
        })
        .sum()
}

/// Inverted index scoring a query against every document at once.
#[derive(Debug, Clone, Default)]
pub struct Bm25Index {
    stats: Bm25Stats,
    params: Bm25Params,
    doc_len: Vec<usize>,
    postings: HashMap<String, Vec<(u32, u32)>>,
}

impl Bm25Index {
    pub fn new<D: AsRef<[String]>>(docs: &[D], params: Bm25Params) -> Bm25Index {
        let stats = Bm25Stats::from_docs(docs);
        let mut postings: HashMap<String, Vec<(u32, u32)>> = HashMap::new();
        let mut doc_len = Vec::with_capacity(docs.len());
        for (i, d) in docs.iter().enumerate() {
            let d = d.as_ref();
            doc_len.push(d.len());
            let mut tf: BTreeMap<&str, u32> = BTreeMap::new();
            for t in d {
                *tf.entry(t.as_str()).or_default() += 1;
            }
            for (t, f) in tf {
                postings.entry(t.to_string()).or_default().push((i as u32, f));
            }
        }
        Bm25Index {
            stats,
            params,
            doc_len,
            postings,
        }
    }

    pub fn stats(&self) -> &Bm25Stats {
        &self.stats
    }

    pub fn params(&self) -> &Bm25Params {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.doc_len.len()
    }

    pub fn is_empty(&self) -> bool {
        self.doc_len.is_empty()
    }

    /// Score of every document, indexed by document id.
    pub fn scores(&self, query: &[String]) -> Vec<f64> {
        let mut out = vec![0.0; self.doc_len.len()];
        for q in query {
            let idf = self.stats.idf(q);
            if idf == 0.0 {
                continue;
            }
            if let Some(list) = self.postings.get(q) {
                for &(d, f) in list {
                    out[d as usize] += term_weight(
                        idf,
                        f as f64,
                        self.doc_len[d as usize] as f64,
                        &self.stats,
                        &self.params,
                    );
                }
            }
        }
        out
    }

    /// Document ids by descending score, ties by ascending id.
    pub fn ranked(&self, query: &[String]) -> Vec<(usize, f64)> {
        let mut r: Vec<(usize, f64)> = self.scores(query).into_iter().enumerate().collect();
        r.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        r
    }

    /// Highest-scoring document, absent when no document scores above zero.
    pub fn best(&self, query: &[String]) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        for (i, s) in self.scores(query).into_iter().enumerate() {
            if s > 0.0 && best.is_none_or(|(_, b)| s > b) {
                best = Some((i, s));
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(s: &str) -> Vec<String> {
        s.split_whitespace().map(str::to_string).collect()
    }

    #[test]
    fn empty_query_and_absent_terms() {
        let docs = vec![doc("a b"), doc("c d"), doc("e f")];
        let stats = Bm25Stats::from_docs(&docs);
        let p = Bm25Params::default();
        assert_eq!(bm25_score(&[], &docs[0], &stats, &p), 0.0);
        assert_eq!(bm25_score(&doc("z"), &docs[0], &stats, &p), 0.0);
        assert_eq!(bm25_score(&doc("c"), &docs[0], &stats, &p), 0.0);
    }

    #[test]
    fn hand_computed_three_documents() {
        let docs = vec![doc("a a b"), doc("b c"), doc("c d e f")];
        let stats = Bm25Stats::from_docs(&docs);
        let p = Bm25Params::default();
        assert_eq!(stats.df("b"), 2);
        assert!((stats.avg_doc_len - 3.0).abs() < 1e-12);
        // idf(a) = ln(2.5 / 1.5); tf 2, |d| = avgdl
        let idf_a = (2.5f64 / 1.5).ln();
        let want = idf_a * 2.0 * 2.2 / (2.0 + 1.2);
        assert!((bm25_score(&doc("a"), &docs[0], &stats, &p) - want).abs() < 1e-9);
        // b is in 2 of 3 documents: idf floored at zero
        assert_eq!(stats.idf("b"), 0.0);
        // d in doc 2 (|d| = 4): norm = 0.25 + 0.75 * 4 / 3
        let idf_d = (2.5f64 / 1.5).ln();
        let want = idf_d * 2.2 / (1.0 + 1.2 * (0.25 + 0.75 * 4.0 / 3.0));
        assert!((bm25_score(&doc("d"), &docs[2], &stats, &p) - want).abs() < 1e-9);
        // repeated query terms count twice
        let twice = bm25_score(&doc("d d"), &docs[2], &stats, &p);
        assert!((twice - 2.0 * want).abs() < 1e-9);
        let index = Bm25Index::new(&docs, p);
        let dense = index.scores(&doc("a d d"));
        for (i, d) in docs.iter().enumerate() {
            assert!((dense[i] - bm25_score(&doc("a d d"), d, &stats, &p)).abs() < 1e-12);
        }
        assert_eq!(index.best(&doc("b")), None);
        assert_eq!(index.best(&doc("d")).map(|b| b.0), Some(2));
    }
}
