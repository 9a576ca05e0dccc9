//! Evaluation records, subsets and aggregate reports.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::bootstrap::{bootstrap_test, BootstrapConfig, BootstrapResult};
use super::codebleu::{codebleu, CodeBleuWeights};
use super::similarity::{acc_at_k, bleu, edit_similarity, exact_match, rouge_l_f1};
use super::MetricsError;
use crate::exec::ExecStatus;
use crate::jsource::subtokens_of;

pub const TOP_K: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRecord {
    pub task_id: String,
    /// Gold statement tokens.
    pub gold: Vec<String>,
    /// Ranked predictions, at most ten.
    pub predictions: Vec<Vec<String>>,
    /// Execution status per prediction, when executed.
    #[serde(default)]
    pub outcomes: Vec<Option<ExecStatus>>,
    pub runnable_gold: bool,
    pub first_assertion: bool,
}

impl EvalRecord {
    pub fn top1(&self) -> &[String] {
        self.predictions.first().map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn top1_status(&self) -> Option<ExecStatus> {
        self.outcomes.first().copied().flatten()
    }

    pub fn in_subset(&self, subset: Subset) -> bool {
        match subset {
            Subset::All => true,
            Subset::Runnable => self.runnable_gold,
            Subset::Oracle => self.first_assertion,
            Subset::OracleRunnable => self.first_assertion && self.runnable_gold,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Subset {
    All,
    Runnable,
    Oracle,
    OracleRunnable,
}

impl Subset {
    pub const ALL: [Subset; 4] = [Subset::All, Subset::Runnable, Subset::Oracle, Subset::OracleRunnable];

    pub fn name(self) -> &'static str {
        match self {
            Subset::All => "all",
            Subset::Runnable => "runnable",
            Subset::Oracle => "oracle",
            Subset::OracleRunnable => "oracle-runnable",
        }
    }
}

impl FromStr for Subset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Subset::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown subset {s:?}"))
    }
}

/// Top-1 %Compile and %Run, as percentages, over records whose gold
/// statement is runnable. A record without predictions counts as a top-1
/// that neither compiles nor runs.
pub fn pct_compile_run(records: &[&EvalRecord]) -> Result<(f64, f64), MetricsError> {
    let runnable: Vec<&&EvalRecord> = records.iter().filter(|r| r.runnable_gold).collect();
    if runnable.is_empty() {
        return Err(MetricsError::EmptySubset);
    }
    let (mut compiled, mut ran) = (0usize, 0usize);
    for r in runnable.iter().filter(|r| !r.predictions.is_empty()) {
        let s = r
            .top1_status()
            .ok_or_else(|| MetricsError::MissingOutcome(r.task_id.clone()))?;
        compiled += usize::from(s.compiles());
        ran += usize::from(s.runs());
    }
    let n = runnable.len() as f64;
    Ok((100.0 * compiled as f64 / n, 100.0 * ran as f64 / n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Metric {
    Xm,
    AccAt10,
    Bleu,
    CodeBleu,
    EditSim,
    RougeL,
}

impl Metric {
    pub const ALL: [Metric; 6] = [
        Metric::Xm,
        Metric::AccAt10,
        Metric::Bleu,
        Metric::CodeBleu,
        Metric::EditSim,
        Metric::RougeL,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Xm => "XM",
            Metric::AccAt10 => "Acc@10",
            Metric::Bleu => "BLEU",
            Metric::CodeBleu => "CodeBLEU",
            Metric::EditSim => "EditSim",
            Metric::RougeL => "ROUGE-L",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExampleScores {
    pub task_id: String,
    pub xm: f64,
    pub acc_at_10: f64,
    pub bleu: f64,
    pub codebleu: f64,
    pub edit_sim: f64,
    pub rouge_l: f64,
}

impl ExampleScores {
    pub fn get(&self, m: Metric) -> f64 {
        match m {
            Metric::Xm => self.xm,
            Metric::AccAt10 => self.acc_at_10,
            Metric::Bleu => self.bleu,
            Metric::CodeBleu => self.codebleu,
            Metric::EditSim => self.edit_sim,
            Metric::RougeL => self.rouge_l,
        }
    }
}

/// Similarity scores of the top-1 prediction. BLEU and ROUGE-L use
/// subtokens, the others statement tokens.
pub fn score_record(r: &EvalRecord, weights: &CodeBleuWeights) -> ExampleScores {
    let pred = r.top1();
    let pred_sub = subtokens_of(pred);
    let gold_sub = subtokens_of(&r.gold);
    let b = |x: bool| if x { 1.0 } else { 0.0 };
    ExampleScores {
        task_id: r.task_id.clone(),
        xm: b(exact_match(pred, &r.gold)),
        acc_at_10: b(acc_at_k(&r.predictions, &r.gold, TOP_K)),
        bleu: bleu(&pred_sub, &gold_sub),
        codebleu: codebleu(pred, &r.gold, weights).total,
        edit_sim: edit_similarity(pred, &r.gold),
        rouge_l: rouge_l_f1(&pred_sub, &gold_sub),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubsetReport {
    pub subset: Subset,
    pub count: usize,
    pub xm: f64,
    pub acc_at_10: f64,
    pub bleu: f64,
    pub codebleu: f64,
    pub edit_sim: f64,
    pub rouge_l: f64,
    /// Absent when no record of the subset has a runnable gold or any
    /// top-1 outcome is missing.
    pub pct_compile: Option<f64>,
    pub pct_run: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Significance {
    pub subset: Subset,
    pub metric: Metric,
    pub result: BootstrapResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    /// Factor applied to the similarity metrics, 1 or 100.
    pub scale: f64,
    pub subsets: Vec<SubsetReport>,
    pub examples: Vec<ExampleScores>,
    #[serde(default)]
    pub significance: Vec<Significance>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EvalConfig {
    pub subsets: Vec<Subset>,
    pub codebleu: CodeBleuWeights,
    pub scale: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            subsets: Subset::ALL.to_vec(),
            codebleu: CodeBleuWeights::default(),
            scale: 1.0,
        }
    }
}

fn mean(values: impl Iterator<Item = f64>, n: usize) -> f64 {
    if n == 0 {
        0.0
    } else {
        values.sum::<f64>() / n as f64
    }
}

pub fn evaluate(records: &[EvalRecord], config: &EvalConfig) -> EvalReport {
    let examples: Vec<ExampleScores> = records.iter().map(|r| score_record(r, &config.codebleu)).collect();
    let subsets = config
        .subsets
        .iter()
        .map(|&subset| {
            let idx: Vec<usize> = (0..records.len()).filter(|&i| records[i].in_subset(subset)).collect();
            let n = idx.len();
            let avg = |m: Metric| config.scale * mean(idx.iter().map(|&i| examples[i].get(m)), n);
            let members: Vec<&EvalRecord> = idx.iter().map(|&i| &records[i]).collect();
            let pct = pct_compile_run(&members).ok();
            SubsetReport {
                subset,
                count: n,
                xm: avg(Metric::Xm),
                acc_at_10: avg(Metric::AccAt10),
                bleu: avg(Metric::Bleu),
                codebleu: avg(Metric::CodeBleu),
                edit_sim: avg(Metric::EditSim),
                rouge_l: avg(Metric::RougeL),
                pct_compile: pct.map(|p| p.0),
                pct_run: pct.map(|p| p.1),
            }
        })
        .collect();
    EvalReport {
        scale: config.scale,
        subsets,
        examples,
        significance: Vec::new(),
    }
}

/// Paired bootstrap of every metric between two evaluations of the same
/// records, per subset.
pub fn compare(
    records: &[EvalRecord],
    a: &EvalReport,
    b: &EvalReport,
    subsets: &[Subset],
    config: &BootstrapConfig,
) -> Result<Vec<Significance>, MetricsError> {
    if a.examples.len() != records.len() || b.examples.len() != records.len() {
        return Err(MetricsError::LengthMismatch {
            left: a.examples.len(),
            right: b.examples.len(),
        });
    }
    let mut out = Vec::new();
    for &subset in subsets {
        let idx: Vec<usize> = (0..records.len()).filter(|&i| records[i].in_subset(subset)).collect();
        if idx.is_empty() {
            continue;
        }
        for metric in Metric::ALL {
            let xs: Vec<f64> = idx.iter().map(|&i| a.examples[i].get(metric)).collect();
            let ys: Vec<f64> = idx.iter().map(|&i| b.examples[i].get(metric)).collect();
            out.push(Significance {
                subset,
                metric,
                result: bootstrap_test(&xs, &ys, config)?,
            });
        }
    }
    Ok(out)
}

impl EvalReport {
    pub fn subset(&self, s: Subset) -> Option<&SubsetReport> {
        self.subsets.iter().find(|r| r.subset == s)
    }

    /// Fixed-width text table, one row per subset.
    pub fn table(&self) -> String {
        let mut out = String::new();
        let header = [
            "subset", "n", "XM", "Acc@10", "BLEU", "CodeBLEU", "EditSim", "ROUGE-L", "%Compile", "%Run",
        ];
        let _ = writeln!(
            out,
            "{:<16}{:>7}{:>9}{:>9}{:>9}{:>9}{:>9}{:>9}{:>10}{:>9}",
            header[0],
            header[1],
            header[2],
            header[3],
            header[4],
            header[5],
            header[6],
            header[7],
            header[8],
            header[9]
        );
        let digits = if self.scale == 1.0 { 4 } else { 2 };
        let pct = |p: Option<f64>| p.map_or("-".to_string(), |v| format!("{v:.2}"));
        for r in &self.subsets {
            let _ = writeln!(
                out,
                "{:<16}{:>7}{:>9.d$}{:>9.d$}{:>9.d$}{:>9.d$}{:>9.d$}{:>9.d$}{:>10}{:>9}",
                r.subset.name(),
                r.count,
                r.xm,
                r.acc_at_10,
                r.bleu,
                r.codebleu,
                r.edit_sim,
                r.rouge_l,
                pct(r.pct_compile),
                pct(r.pct_run),
                d = digits
            );
        }
        for s in &self.significance {
            let _ = writeln!(
                out,
                "{} {}: diff {:.4} CI [{:.4}, {:.4}] {}",
                s.subset.name(),
                s.metric.name(),
                s.result.mean_diff,
                s.result.lower,
                s.result.upper,
                if s.result.significant {
                    "significant"
                } else {
                    "not significant"
                }
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(status: Option<ExecStatus>, runnable_gold: bool) -> EvalRecord {
        EvalRecord {
            task_id: "t".into(),
            gold: vec!["x".into(), ";".into()],
            predictions: vec![vec!["x".into(), ";".into()]],
            outcomes: vec![status],
            runnable_gold,
            first_assertion: false,
        }
    }

    #[test]
    fn percentages() {
        use ExecStatus::*;
        let rs = [
            rec(Some(NotCompilable), true),
            rec(Some(CompilableNotRunnable), true),
            rec(Some(Runnable), true),
        ];
        let refs: Vec<&EvalRecord> = rs.iter().collect();
        let (c, r) = pct_compile_run(&refs).unwrap();
        assert!((c - 200.0 / 3.0).abs() < 1e-9 && (r - 100.0 / 3.0).abs() < 1e-9);
        let all = [rec(Some(Runnable), true), rec(Some(Runnable), true)];
        assert_eq!(
            pct_compile_run(&all.iter().collect::<Vec<_>>()).unwrap(),
            (100.0, 100.0)
        );
        assert_eq!(pct_compile_run(&[]), Err(MetricsError::EmptySubset));
        let outside = rec(None, false);
        assert_eq!(pct_compile_run(&[&outside]), Err(MetricsError::EmptySubset));
        let missing = rec(None, true);
        assert!(matches!(
            pct_compile_run(&[&missing]),
            Err(MetricsError::MissingOutcome(_))
        ));
        let empty = EvalRecord {
            predictions: vec![],
            outcomes: vec![],
            ..rec(None, true)
        };
        assert_eq!(pct_compile_run(&[&empty, &rs[2]]).unwrap(), (50.0, 50.0));
    }

    #[test]
    fn subset_names_round_trip() {
        for s in Subset::ALL {
            assert_eq!(s.name().parse::<Subset>().unwrap(), s);
        }
        assert!("other".parse::<Subset>().is_err());
    }
}
