use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};
use testcomp_core::elements::{
    default_classpath, read_project, CodeElementStore, CompletionTask, Partition, StoreArchive,
};
use testcomp_core::exec::{Executor, Toolchain};
use testcomp_core::metrics::{compare, evaluate, EvalConfig, EvalRecord, EvalReport, Subset};
use testcomp_core::pipeline::{eval_records, execute_and_rerank, extract_corpus, predict_all, ExecutionRecord};
use testcomp_core::predictor::{
    build_retrieval_index, parse_predictions_with, CandidateList, ListOrder, PredictionRecord,
};

use crate::config::{PipelineConfig, PredictorChoice};
use crate::output::{read_json, read_records, Run};

pub fn collect(config: &PipelineConfig, run: &Run, roots: &[PathBuf], out: &Path) -> anyhow::Result<()> {
    for root in roots {
        let mut classpath = default_classpath(root);
        classpath.extend(config.classpath.iter().cloned());
        let mut archive = read_project(root, &classpath).with_context(|| format!("collecting {}", root.display()))?;
        archive.normalize();
        let path = out.join(format!("{}.store.json", archive.project));
        run.write_json(&path, &archive)?;
        log::info!(
            "{}: {} sources, {} classfiles",
            archive.project,
            archive.sources.len(),
            archive.classfiles.len()
        );
    }
    Ok(())
}

pub fn load_stores(paths: &[PathBuf]) -> anyhow::Result<Vec<CodeElementStore>> {
    paths
        .iter()
        .map(|p| {
            let archive: StoreArchive = read_json(p)?;
            CodeElementStore::from_archive(archive).with_context(|| format!("rebuilding {}", p.display()))
        })
        .collect()
}

pub fn extract(config: &PipelineConfig, run: &Run, stores: &[PathBuf], out: &Path) -> anyhow::Result<()> {
    let stores = load_stores(stores)?;
    let (split, report) = extract_corpus(&stores, &config.split, &config.filter, &config.semantics)?;
    for p in [Partition::Train, Partition::Val, Partition::Eval] {
        run.write_jsonl(&out.join(format!("{}.jsonl", p.name())), split.get(p))?;
    }
    run.write_with(&out.join("filter-report.tsv"), |w| Ok(report.write_tsv(w)?))?;
    log::info!(
        "{} kept tests; {} train, {} val, {} eval tasks",
        report.kept(),
        split.train.len(),
        split.val.len(),
        split.eval.len()
    );
    Ok(())
}

fn load_predictions(
    path: &Path,
    tasks: &[CompletionTask],
    k: usize,
    order: ListOrder,
) -> anyhow::Result<BTreeMap<String, CandidateList>> {
    let known: HashSet<&str> = tasks.iter().map(|t| t.id.as_str()).collect();
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let parsed = parse_predictions_with(BufReader::new(file), &known, k, order)
        .with_context(|| format!("reading {}", path.display()))?;
    Ok(parsed.lists)
}

fn in_task_order(tasks: &[CompletionTask], lists: &BTreeMap<String, CandidateList>) -> Vec<PredictionRecord> {
    tasks
        .iter()
        .filter_map(|t| {
            lists.get(&t.id).map(|l| PredictionRecord {
                task_id: t.id.clone(),
                candidates: l.candidates.clone(),
            })
        })
        .collect()
}

pub struct PredictArgs<'a> {
    pub train: Option<&'a Path>,
    pub tasks: &'a Path,
    pub stores: &'a [PathBuf],
    pub external: Option<&'a Path>,
    pub out: &'a Path,
}

pub fn predict(config: &PipelineConfig, run: &Run, args: PredictArgs) -> anyhow::Result<()> {
    let tasks: Vec<CompletionTask> = read_records(args.tasks)?;
    let k = config.input.k;
    let records = match (config.predictor, args.external) {
        (_, Some(path)) => in_task_order(&tasks, &load_predictions(path, &tasks, k, ListOrder::ByScore)?),
        (PredictorChoice::External, None) => bail!("the external predictor needs --external"),
        (PredictorChoice::Retrieval, None) => {
            let Some(train_path) = args.train else {
                bail!("retrieval needs --train")
            };
            let train: Vec<CompletionTask> = read_records(train_path)?;
            let stores = load_stores(args.stores)?;
            let train_stores: Vec<&CodeElementStore> = stores
                .iter()
                .filter(|s| {
                    let ok = config.split.get(s.project()) == Some(&Partition::Train);
                    if !ok {
                        log::info!("{} is not a training project; not indexed", s.project());
                    }
                    ok
                })
                .collect();
            let index = build_retrieval_index(&train_stores, &train, config.semantics.bm25);
            predict_all(&tasks, &index, k)
        }
    };
    run.write_jsonl(args.out, &records)
}

pub struct RerankArgs<'a> {
    pub predictions: &'a Path,
    pub tasks: &'a Path,
    pub stores: &'a [PathBuf],
    pub out: &'a Path,
    pub outcomes: &'a Path,
}

pub fn rerank(config: &PipelineConfig, run: &Run, args: RerankArgs) -> anyhow::Result<()> {
    let tasks: Vec<CompletionTask> = read_records(args.tasks)?;
    let lists = load_predictions(args.predictions, &tasks, config.input.k, ListOrder::ByScore)?;
    let stores = load_stores(args.stores)?;
    let by_project: HashMap<&str, &CodeElementStore> = stores.iter().map(|s| (s.project(), s)).collect();
    let toolchain = Toolchain::discover(config.toolchain.as_deref())?;
    let mut executors: HashMap<&str, Executor> = HashMap::new();
    let mut reranked = BTreeMap::new();
    let mut executions = Vec::new();
    for task in &tasks {
        let Some(list) = lists.get(&task.id) else { continue };
        let store = *by_project
            .get(task.project.as_str())
            .with_context(|| format!("no store for project {}", task.project))?;
        if !executors.contains_key(store.project()) {
            let ex = Executor::new(store, &[], toolchain.clone(), config.exec.clone())?;
            executors.insert(store.project(), ex);
        }
        let (list, record) = execute_and_rerank(&executors[store.project()], task, list, config.rerank)?;
        log::info!("{}: gold {:?}", task.id, record.gold.status);
        reranked.insert(task.id.clone(), list);
        executions.push(record);
    }
    run.write_jsonl(args.out, &in_task_order(&tasks, &reranked))?;
    run.write_jsonl(args.outcomes, &executions)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ReportFile {
    pub config_hash: String,
    pub seed: u64,
    pub report: EvalReport,
}

fn load_outcomes(path: Option<&Path>, tasks: &[CompletionTask]) -> anyhow::Result<BTreeMap<String, ExecutionRecord>> {
    let Some(path) = path else { return Ok(BTreeMap::new()) };
    let known: HashSet<&str> = tasks.iter().map(|t| t.id.as_str()).collect();
    let mut out = BTreeMap::new();
    for r in read_records::<ExecutionRecord>(path)? {
        if !known.contains(r.task_id.as_str()) {
            bail!("{}: unknown task id {}", path.display(), r.task_id);
        }
        out.insert(r.task_id.clone(), r);
    }
    Ok(out)
}

pub struct EvalArgs<'a> {
    pub predictions: &'a Path,
    pub outcomes: Option<&'a Path>,
    pub baseline: Option<&'a Path>,
    pub baseline_outcomes: Option<&'a Path>,
    pub tasks: &'a Path,
    pub subsets: Vec<Subset>,
    pub scale: Option<f64>,
    pub out: &'a Path,
}

fn records_for(
    tasks: &[CompletionTask],
    predictions: &Path,
    outcomes: Option<&Path>,
    k: usize,
) -> anyhow::Result<Vec<EvalRecord>> {
    let lists = load_predictions(predictions, tasks, k, ListOrder::AsGiven)?;
    let executions = load_outcomes(outcomes, tasks)?;
    for (id, e) in &executions {
        let ranked: Vec<&Vec<String>> = lists
            .get(id)
            .map_or_else(Vec::new, |l| l.candidates.iter().map(|c| &c.tokens).collect());
        if e.tokens.iter().collect::<Vec<_>>() != ranked || e.candidates.len() != ranked.len() {
            bail!(
                "{id}: outcomes do not follow the candidate order of {}",
                predictions.display()
            );
        }
    }
    Ok(eval_records(tasks, &lists, &executions))
}

pub fn eval(config: &PipelineConfig, run: &Run, args: EvalArgs) -> anyhow::Result<String> {
    let tasks: Vec<CompletionTask> = read_records(args.tasks)?;
    let k = config.input.k;
    let eval_config = EvalConfig {
        subsets: if args.subsets.is_empty() {
            config.eval.subsets.clone()
        } else {
            args.subsets
        },
        scale: args.scale.unwrap_or(config.eval.scale),
        ..config.eval.clone()
    };
    let records = records_for(&tasks, args.predictions, args.outcomes, k)?;
    let mut report = evaluate(&records, &eval_config);
    if let Some(baseline) = args.baseline {
        let base_records = records_for(&tasks, baseline, args.baseline_outcomes, k)?;
        let base = evaluate(&base_records, &eval_config);
        report.significance = compare(&records, &report, &base, &eval_config.subsets, &config.bootstrap())?;
    }
    let table = report.table();
    run.write_json(
        args.out,
        &ReportFile {
            config_hash: run.config_hash.clone(),
            seed: run.seed,
            report,
        },
    )?;
    Ok(table)
}
