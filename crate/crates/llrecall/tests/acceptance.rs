//! Acceptance suite: one test per acceptance criterion, each printing a
//! single PASS/FAIL line (visible with `--nocapture`).

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::sync::OnceLock;
use std::time::Instant;

use llrecall::corpus::{self, GoldSet, LessonRecord, QueryRecord};
use llrecall::harness::{
    enumerate_configs, parameter_impact, run_sweep, top_performer_comparison, Grid, Metric,
    ModelFamily, Parameter, SweepReport,
};
use llrecall::lda::{train_lda, LdaConfig};
use llrecall::lsi::{build_lsi, fold_query, reconstruction_error, LsiConfig};
use llrecall::metrics::{avp, topk_hit, MetricConfig};
use llrecall::ranked::{RankedEntry, RankedList};
use llrecall::stats::{tukey_hsd, wilcoxon_signed_rank, SampleGroup};
use llrecall::textprep::{porter_stem, preprocess, PipelineConfig, Stoplist};
use llrecall::vsm::{build_vsm_index, query_vsm, SimilarityKind, WeightScheme};

fn fixture(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(rel)
}

fn report(name: &str, result: Result<(), String>) {
    match &result {
        Ok(()) => println!("PASS {name}"),
        Err(e) => println!("FAIL {name}: {e}"),
    }
    if let Err(e) = result {
        panic!("{name}: {e}");
    }
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn load_fixture_data() -> (Vec<LessonRecord>, Vec<QueryRecord>, GoldSet) {
    let lessons = corpus::load_lessons(&fixture("lessons.jsonl")).expect("lessons fixture");
    let queries = corpus::load_queries(&fixture("queries.jsonl")).expect("queries fixture");
    let gold = corpus::load_goldset(&fixture("goldset.json"), &lessons, &queries)
        .expect("gold set fixture");
    (lessons, queries, gold)
}

struct SharedSweep {
    report: SweepReport,
    wall_secs: f64,
}

fn shared_sweep() -> &'static SharedSweep {
    static SWEEP: OnceLock<SharedSweep> = OnceLock::new();
    SWEEP.get_or_init(|| {
        let (lessons, queries, gold) = load_fixture_data();
        let start = Instant::now();
        let report = run_sweep(
            &lessons,
            &queries,
            &gold,
            &Grid::paper(),
            &MetricConfig::default(),
            20,
            1,
            &Stoplist::default(),
        )
        .expect("sweep");
        SharedSweep {
            report,
            wall_secs: start.elapsed().as_secs_f64(),
        }
    })
}

#[test]
fn criterion_01_grid_fidelity() {
    let check = || -> Result<(), String> {
        let configs = enumerate_configs(&Grid::paper());
        ensure!(configs.len() == 88, "expected 88 configs, got {}", configs.len());
        let count = |f: ModelFamily| configs.iter().filter(|c| c.model == f).count();
        let (v, l, d) = (
            count(ModelFamily::Vsm),
            count(ModelFamily::Lsi),
            count(ModelFamily::Lda),
        );
        ensure!(v == 24, "expected 24 VSM configs, got {v}");
        ensure!(l == 48, "expected 48 LSI configs, got {l}");
        ensure!(d == 16, "expected 16 LDA configs, got {d}");
        let mut ids: Vec<String> = configs.iter().map(|c| c.id()).collect();
        ids.dedup();
        ensure!(ids.len() == 88, "config ids are not unique");
        Ok(())
    };
    report("criterion 1: paper grid enumerates 88 configs (24 VSM / 48 LSI / 16 LDA)", check());
}

fn list(ids: &[&str]) -> RankedList {
    RankedList {
        query_id: "Q".to_string(),
        entries: ids
            .iter()
            .enumerate()
            .map(|(i, id)| RankedEntry {
                lesson_id: id.to_string(),
                score: 1.0 / (i + 1) as f64,
            })
            .collect(),
    }
}

#[test]
fn criterion_02_map_formula_fidelity() {
    let check = || -> Result<(), String> {
        // 7-entry ranking whose 7th entry is the 4th relevant document
        let ranked = list(&["a", "b", "c", "x", "y", "z", "d"]);
        let relevant: BTreeSet<String> =
            ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let got = avp(&ranked, &relevant);
        let expected = (1.0 + 1.0 + 1.0 + 4.0 / 7.0) / 4.0;
        ensure!(got == expected, "avp with p(7)=4/7: got {got}, expected {expected}");

        // avp([rel, non, rel]) with |Rel| = 2 is (1/1 + 2/3)/2 = 5/6
        let ranked = list(&["r1", "n1", "r2"]);
        let relevant: BTreeSet<String> = ["r1", "r2"].iter().map(|s| s.to_string()).collect();
        let got = avp(&ranked, &relevant);
        let expected = (1.0 + 2.0 / 3.0) / 2.0;
        ensure!(got == expected, "avp([rel,non,rel]): got {got}, expected {expected}");
        ensure!((got - 5.0 / 6.0).abs() < 1e-15, "avp([rel,non,rel]) != 5/6");
        Ok(())
    };
    report("criterion 2: MAP worked examples p(7)=4/7 and avp=5/6 hold exactly", check());
}

#[test]
fn criterion_03_topk_boundary() {
    let check = || -> Result<(), String> {
        let ids: Vec<String> = (1..=21).map(|i| format!("L{i:02}")).collect();
        let id_refs: Vec<&str> = ids.iter().map(String::as_str).collect();
        let ranked = list(&id_refs);
        let rank20: BTreeSet<String> = [ids[19].clone()].into_iter().collect();
        let rank21: BTreeSet<String> = [ids[20].clone()].into_iter().collect();
        ensure!(topk_hit(&ranked, &rank20, 20) == 1, "relevant at rank 20 must hit at k=20");
        ensure!(topk_hit(&ranked, &rank21, 20) == 0, "relevant at rank 21 must miss at k=20");
        Ok(())
    };
    report("criterion 3: top-20 hit at rank 20, miss at rank 21", check());
}

#[test]
fn criterion_04_porter_oracle() {
    let check = || -> Result<(), String> {
        let voc = std::fs::read_to_string(fixture("porter/voc.txt")).map_err(|e| e.to_string())?;
        let out = std::fs::read_to_string(fixture("porter/output.txt")).map_err(|e| e.to_string())?;
        let words: Vec<&str> = voc.lines().collect();
        let expected: Vec<&str> = out.lines().collect();
        ensure!(words.len() == expected.len(), "voc/output line counts differ");
        ensure!(words.len() >= 20_000, "need >= 20000 words, got {}", words.len());
        let start = Instant::now();
        let mut mismatches = 0usize;
        for (w, e) in words.iter().zip(&expected) {
            if porter_stem(w) != *e {
                mismatches += 1;
            }
        }
        let elapsed = start.elapsed().as_secs_f64();
        ensure!(
            mismatches == 0,
            "{mismatches} of {} words disagree with the oracle",
            words.len()
        );
        ensure!(elapsed < 5.0, "stemming took {elapsed:.2}s, limit 5s");
        Ok(())
    };
    report("criterion 4: Porter stemmer matches 23k-word oracle pair 100% in < 5s", check());
}

/// Independent dense full-scan VSM oracle used only by the acceptance suite.
mod vsm_oracle {
    use super::*;

    pub fn rank(
        lessons: &[LessonRecord],
        query_text: &str,
        pipeline: PipelineConfig,
        scheme: WeightScheme,
        sim: SimilarityKind,
        stoplist: &Stoplist,
        limit: usize,
    ) -> Vec<(String, f64)> {
        let docs: Vec<Vec<String>> = lessons
            .iter()
            .map(|l| preprocess(&l.text, pipeline, stoplist))
            .collect();
        let n = docs.len() as f64;
        let mut df: BTreeMap<String, usize> = BTreeMap::new();
        for doc in &docs {
            for term in doc.iter().collect::<BTreeSet<_>>() {
                *df.entry(term.clone()).or_insert(0) += 1;
            }
        }
        let weigh = |tf: usize, term: &str| -> f64 {
            if tf == 0 {
                return 0.0;
            }
            let idf = (n / df[term] as f64).log10();
            match scheme {
                WeightScheme::Boolean => 1.0,
                WeightScheme::TfIdf => tf as f64 * idf,
                WeightScheme::SublinearTfIdf => (1.0 + (tf as f64).log10()) * idf,
            }
        };
        let counts = |tokens: &[String]| -> BTreeMap<String, usize> {
            let mut c = BTreeMap::new();
            for t in tokens {
                if df.contains_key(t) {
                    *c.entry(t.clone()).or_insert(0) += 1;
                }
            }
            c
        };
        let vecs: Vec<BTreeMap<String, f64>> = docs
            .iter()
            .map(|doc| {
                counts(doc)
                    .into_iter()
                    .map(|(t, tf)| {
                        let w = weigh(tf, &t);
                        (t, w)
                    })
                    .filter(|&(_, w)| w != 0.0)
                    .collect()
            })
            .collect();
        let q: BTreeMap<String, f64> = counts(&preprocess(query_text, pipeline, stoplist))
            .into_iter()
            .map(|(t, tf)| {
                let w = weigh(tf, &t);
                (t, w)
            })
            .filter(|&(_, w)| w != 0.0)
            .collect();

        let mut scored: Vec<(String, f64)> = Vec::new();
        for (lesson, d) in lessons.iter().zip(&vecs) {
            let s = match sim {
                SimilarityKind::Cosine => {
                    let dot: f64 = q
                        .iter()
                        .filter_map(|(t, &w)| d.get(t).map(|&dw| w * dw))
                        .sum();
                    let nq: f64 = q.values().map(|w| w * w).sum::<f64>().sqrt();
                    let nd: f64 = d.values().map(|w| w * w).sum::<f64>().sqrt();
                    if nq == 0.0 || nd == 0.0 {
                        0.0
                    } else {
                        dot / (nq * nd)
                    }
                }
                SimilarityKind::Overlap => {
                    let inter = q.keys().filter(|t| d.contains_key(*t)).count();
                    if q.is_empty() || d.is_empty() {
                        0.0
                    } else {
                        inter as f64 / q.len().min(d.len()) as f64
                    }
                }
            };
            if s > 0.0 {
                scored.push((lesson.id.clone(), s));
            }
        }
        scored.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then_with(|| a.0.cmp(&b.0)));
        scored.truncate(limit);
        scored
    }
}

#[test]
fn criterion_05_vsm_oracle_equivalence() {
    let check = || -> Result<(), String> {
        let (lessons, queries, _) = load_fixture_data();
        let stoplist = Stoplist::default();
        for pipeline in PipelineConfig::ALL {
            for scheme in WeightScheme::ALL {
                for sim in SimilarityKind::ALL {
                    let index =
                        build_vsm_index(&lessons, pipeline, scheme, sim, &stoplist)
                            .map_err(|e| e.to_string())?;
                    for q in &queries {
                        let engine = query_vsm(&index, &q.text, 20, &stoplist);
                        let oracle = vsm_oracle::rank(
                            &lessons, &q.text, pipeline, scheme, sim, &stoplist, 20,
                        );
                        let tag = format!(
                            "{}/{}/{} query {}",
                            pipeline.label(),
                            scheme.label(),
                            sim.label(),
                            q.id
                        );
                        ensure!(
                            engine.entries.len() == oracle.len(),
                            "{tag}: lengths {} vs {}",
                            engine.entries.len(),
                            oracle.len()
                        );
                        for (e, (oid, oscore)) in engine.entries.iter().zip(&oracle) {
                            ensure!(e.lesson_id == *oid, "{tag}: order differs at {oid}");
                            ensure!(
                                (e.score - oscore).abs() <= 1e-12,
                                "{tag}: score {} vs {}",
                                e.score,
                                oscore
                            );
                        }
                    }
                }
            }
        }
        Ok(())
    };
    report("criterion 5: all 24 VSM configs match the independent full-scan oracle", check());
}

#[test]
fn criterion_06_lsi_numerics() {
    let check = || -> Result<(), String> {
        let (lessons, _, _) = load_fixture_data();
        let stoplist = Stoplist::default();
        let config = |k: usize| LsiConfig {
            k,
            scheme: WeightScheme::TfIdf,
            pipeline: PipelineConfig::NONE,
        };
        let full = build_lsi(&lessons, &config(lessons.len()), &stoplist)
            .map_err(|e| e.to_string())?;
        let full_err = reconstruction_error(&full);
        ensure!(full_err < 1e-8, "full-rank reconstruction error {full_err}");

        let mut prev = f64::INFINITY;
        for k in [1, 2, 4, 8, full.k_eff] {
            let space = build_lsi(&lessons, &config(k), &stoplist).map_err(|e| e.to_string())?;
            let err = reconstruction_error(&space);
            ensure!(
                err <= prev + 1e-12,
                "reconstruction error increased at k={k}: {err} > {prev}"
            );
            prev = err;
        }

        for (j, coords) in full.doc_coords.iter().enumerate() {
            let folded = fold_query(&full.source.matrix.columns[j], &full);
            for (f, c) in folded.iter().zip(coords) {
                ensure!(
                    (f - c).abs() < 1e-8,
                    "folding doc {j} differs from its coordinates: {f} vs {c}"
                );
            }
        }
        Ok(())
    };
    report(
        "criterion 6: LSI reconstruction < 1e-8 at full rank, monotone in k, folding exact",
        check(),
    );
}

#[derive(serde::Deserialize)]
struct PurityFixture {
    topics: usize,
    min_purity: f64,
    min_passing: usize,
    seeds: Vec<u64>,
    documents: Vec<PurityDoc>,
}

#[derive(serde::Deserialize)]
struct PurityDoc {
    id: String,
    block: usize,
    text: String,
}

#[test]
fn criterion_07_lda_properties() {
    let check = || -> Result<(), String> {
        let (lessons, _, _) = load_fixture_data();
        let stoplist = Stoplist::default();
        let config = LdaConfig::with_defaults(32, 42, PipelineConfig::STEM_STOP);

        let start = Instant::now();
        let model = train_lda(&lessons, &config, &stoplist).map_err(|e| e.to_string())?;
        let train_secs = start.elapsed().as_secs_f64();
        ensure!(train_secs < 30.0, "training took {train_secs:.1}s, limit 30s");

        for (k, row) in model.phi.iter().enumerate() {
            let s: f64 = row.iter().sum();
            ensure!((s - 1.0).abs() <= 1e-9, "phi row {k} sums to {s}");
        }
        for (d, row) in model.theta.iter().enumerate() {
            let s: f64 = row.iter().sum();
            ensure!((s - 1.0).abs() <= 1e-9, "theta row {d} sums to {s}");
        }

        let rerun = train_lda(&lessons, &config, &stoplist).map_err(|e| e.to_string())?;
        ensure!(
            model.phi == rerun.phi && model.theta == rerun.theta
                && model.assignments == rerun.assignments,
            "fixed-seed retraining is not bit-identical"
        );

        let purity: PurityFixture = serde_json::from_str(
            &std::fs::read_to_string(fixture("golden/lda_purity.json"))
                .map_err(|e| e.to_string())?,
        )
        .map_err(|e| e.to_string())?;
        ensure!(purity.seeds.len() == 10, "expected 10 committed seeds");
        let docs: Vec<LessonRecord> = purity
            .documents
            .iter()
            .map(|d| LessonRecord {
                id: d.id.clone(),
                project_id: "PX".to_string(),
                text: d.text.clone(),
            })
            .collect();
        let mut passing = 0usize;
        for &seed in &purity.seeds {
            let cfg = LdaConfig::with_defaults(purity.topics, seed, PipelineConfig::NONE);
            let m = train_lda(&docs, &cfg, &stoplist).map_err(|e| e.to_string())?;
            let dominant: Vec<usize> = m
                .theta
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
                        .unwrap()
                        .0
                })
                .collect();
            // best block-to-topic assignment over the two possible mappings
            let correct: usize = purity
                .documents
                .iter()
                .zip(&dominant)
                .filter(|(d, &t)| t == d.block)
                .count();
            let best = correct.max(dominant.len() - correct);
            if best as f64 / dominant.len() as f64 >= purity.min_purity {
                passing += 1;
            }
        }
        ensure!(
            passing >= purity.min_passing,
            "only {passing} of {} seeds reach {}% purity",
            purity.seeds.len(),
            purity.min_purity * 100.0
        );
        Ok(())
    };
    report(
        "criterion 7: LDA rows normalized, seed-deterministic, 2-block purity on committed seeds",
        check(),
    );
}

#[derive(serde::Deserialize)]
struct StatsGolden {
    hsd: HsdGolden,
    wilcoxon_n6: WilcoxonGolden,
}

#[derive(serde::Deserialize)]
struct HsdGolden {
    alpha: f64,
    groups: BTreeMap<String, Vec<f64>>,
    expected_letters: BTreeMap<String, String>,
}

#[derive(serde::Deserialize)]
struct WilcoxonGolden {
    a: Vec<f64>,
    b: Vec<f64>,
    expected_w: f64,
    expected_p: f64,
}

#[test]
fn criterion_08_statistics_oracles() {
    let check = || -> Result<(), String> {
        let golden: StatsGolden = serde_json::from_str(
            &std::fs::read_to_string(fixture("golden/stats_golden.json"))
                .map_err(|e| e.to_string())?,
        )
        .map_err(|e| e.to_string())?;

        let groups: Vec<SampleGroup> = golden
            .hsd
            .groups
            .iter()
            .map(|(label, samples)| SampleGroup::new(label.clone(), samples.clone()))
            .collect();
        let hsd = tukey_hsd(&groups, golden.hsd.alpha).map_err(|e| e.to_string())?;
        for g in &hsd.groups {
            let expected = &golden.hsd.expected_letters[&g.label];
            ensure!(
                &g.letters == expected,
                "HSD letters for {}: got {}, expected {}",
                g.label,
                g.letters,
                expected
            );
        }

        let five = wilcoxon_signed_rank(&[1.0, 2.0, 3.0, 4.0, 5.0], &[0.0; 5])
            .map_err(|e| e.to_string())?;
        ensure!(
            five.p_value == 0.0625,
            "exact p for 5 all-positive differences: got {}, expected 0.0625",
            five.p_value
        );

        let n6 = wilcoxon_signed_rank(&golden.wilcoxon_n6.a, &golden.wilcoxon_n6.b)
            .map_err(|e| e.to_string())?;
        ensure!(
            (n6.statistic - golden.wilcoxon_n6.expected_w).abs() < 1e-9,
            "n=6 W: got {}, expected {}",
            n6.statistic,
            golden.wilcoxon_n6.expected_w
        );
        ensure!(
            (n6.p_value - golden.wilcoxon_n6.expected_p).abs() < 1e-6,
            "n=6 p: got {}, expected {}",
            n6.p_value,
            golden.wilcoxon_n6.expected_p
        );
        Ok(())
    };
    report("criterion 8: Tukey HSD letters and Wilcoxon p-values match the oracles", check());
}

#[test]
fn criterion_09_end_to_end_sweep() {
    let check = || -> Result<(), String> {
        let shared = shared_sweep();
        ensure!(
            shared.wall_secs < 300.0,
            "sweep took {:.1}s, limit 300s",
            shared.wall_secs
        );
        ensure!(
            shared.report.results.len() == 88,
            "expected 88 results, got {}",
            shared.report.results.len()
        );
        for r in &shared.report.results {
            ensure!(r.eval.is_some(), "config {} failed: {:?}", r.config_id, r.error);
        }

        // golden metrics produced by the independent oracle
        let golden_text = std::fs::read_to_string(fixture("golden/sweep_golden.csv"))
            .map_err(|e| e.to_string())?;
        let mut golden: BTreeMap<&str, [&str; 4]> = BTreeMap::new();
        for line in golden_text.lines().skip(1) {
            let cols: Vec<&str> = line.split(',').collect();
            golden.insert(cols[0], [cols[1], cols[2], cols[3], cols[4]]);
        }
        ensure!(golden.len() == 88, "golden file has {} configs", golden.len());
        for r in &shared.report.results {
            let eval = r.eval.as_ref().unwrap();
            let expect = golden
                .get(r.config_id.as_str())
                .ok_or_else(|| format!("config {} missing from golden", r.config_id))?;
            let got = [
                format!("{:.12}", eval.top_k_accuracy),
                format!("{:.12}", eval.map),
                format!("{:.12}", eval.mean_precision_at_k),
                format!("{:.12}", eval.mean_recall_at_k),
            ];
            for (name, (g, e)) in ["top20", "map", "p_at_10", "r_at_10"]
                .iter()
                .zip(got.iter().zip(expect.iter()))
            {
                ensure!(
                    g == e,
                    "config {} metric {name}: got {g}, golden {e}",
                    r.config_id
                );
            }
        }

        // worker-count invariance: a 4-worker rerun must match field-for-field
        // (wall_ms excluded — it is timing, not output)
        let (lessons, queries, gold) = load_fixture_data();
        let rerun = run_sweep(
            &lessons,
            &queries,
            &gold,
            &Grid::paper(),
            &MetricConfig::default(),
            20,
            4,
            &Stoplist::default(),
        )
        .map_err(|e| e.to_string())?;
        ensure!(rerun.results.len() == shared.report.results.len(), "rerun size differs");
        for (a, b) in shared.report.results.iter().zip(&rerun.results) {
            ensure!(a.config_id == b.config_id, "rerun order differs at {}", b.config_id);
            ensure!(a.eval == b.eval, "rerun eval differs for {}", a.config_id);
            ensure!(a.rankings == b.rankings, "rerun rankings differ for {}", a.config_id);
        }
        Ok(())
    };
    report(
        "criterion 9: paper-grid sweep emits 88 reports matching the golden, worker-invariant",
        check(),
    );
}

#[test]
fn criterion_10_methodology_shape() {
    let check = || -> Result<(), String> {
        let sweep = &shared_sweep().report;
        let cases: [(ModelFamily, Parameter, usize); 8] = [
            (ModelFamily::Vsm, Parameter::Pipeline, 4),
            (ModelFamily::Vsm, Parameter::Weight, 3),
            (ModelFamily::Vsm, Parameter::Similarity, 2),
            (ModelFamily::Lsi, Parameter::Pipeline, 4),
            (ModelFamily::Lsi, Parameter::Weight, 3),
            (ModelFamily::Lsi, Parameter::Topics, 4),
            (ModelFamily::Lda, Parameter::Pipeline, 4),
            (ModelFamily::Lda, Parameter::Topics, 4),
        ];
        for metric in [Metric::Top20, Metric::Map] {
            for (family, param, n_groups) in cases {
                let hsd = parameter_impact(sweep, family, param, metric)
                    .map_err(|e| e.to_string())?;
                let tag = format!("{}/{}/{}", family.label(), param.label(), metric.label());
                ensure!(
                    hsd.groups.len() == n_groups,
                    "{tag}: expected {n_groups} letter groups, got {}",
                    hsd.groups.len()
                );
                for g in &hsd.groups {
                    ensure!(!g.letters.is_empty(), "{tag}: group {} has no letters", g.label);
                    ensure!(
                        g.letters.chars().all(|c| c.is_ascii_uppercase()),
                        "{tag}: group {} letters {:?} not A-Z",
                        g.label,
                        g.letters
                    );
                }
                let mut means: Vec<f64> = hsd.groups.iter().map(|g| g.mean).collect();
                let sorted = {
                    let mut s = means.clone();
                    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
                    s
                };
                ensure!(means == sorted, "{tag}: groups not sorted by mean descending");
                means.clear();
            }
            for family in [ModelFamily::Vsm, ModelFamily::Lsi, ModelFamily::Lda] {
                let cmps = top_performer_comparison(sweep, family, metric)
                    .map_err(|e| e.to_string())?;
                let tag = format!("{}/{}", family.label(), metric.label());
                ensure!(
                    cmps.len() == 3,
                    "{tag}: expected 3 comparisons, got {}",
                    cmps.len()
                );
                let pipelines: Vec<&str> =
                    cmps.iter().map(|c| c.pipeline.as_str()).collect();
                ensure!(
                    pipelines == ["stem", "stop", "stem_stop"],
                    "{tag}: comparisons are {pipelines:?}"
                );
                for c in &cmps {
                    ensure!(
                        (0.0..=1.0).contains(&c.result.p_value),
                        "{tag}: p-value {} out of range",
                        c.result.p_value
                    );
                }
            }
        }
        Ok(())
    };
    report(
        "criterion 10: HSD letter tables and three-comparison Wilcoxon tables for top-20 and MAP",
        check(),
    );
}
