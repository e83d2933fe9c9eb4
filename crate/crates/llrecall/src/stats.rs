//! Parameter-impact statistics: Tukey HSD with compact letter display and
//! the Wilcoxon signed-rank test.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Bundled critical values of the studentized range distribution at
/// alpha = 0.05 (k = 2..20; df rows 2..30, 40, 60, 120, inf).
const QTABLE_0_05: &str = include_str!("../fixtures/qtable_0.05.csv");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleGroup {
    pub label: String,
    pub samples: Vec<f64>,
}

impl SampleGroup {
    pub fn new(label: impl Into<String>, samples: Vec<f64>) -> SampleGroup {
        SampleGroup {
            label: label.into(),
            samples,
        }
    }

    fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.samples.len() as f64
    }
}

/// One row of the letter display: groups sharing a letter are statistically
/// indistinguishable at the chosen alpha.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HsdGroupResult {
    pub label: String,
    pub mean: f64,
    /// e.g. "A", "AB"
    pub letters: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HsdResult {
    /// sorted by mean descending
    pub groups: Vec<HsdGroupResult>,
    pub alpha: f64,
    pub critical_difference: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WilcoxonMethod {
    Exact,
    NormalApproximation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WilcoxonResult {
    pub n_effective: usize,
    pub w_plus: f64,
    pub w_minus: f64,
    /// min(W+, W-)
    pub statistic: f64,
    pub p_value: f64,
    pub method: WilcoxonMethod,
}

struct QTable {
    dfs: Vec<f64>, // f64::INFINITY for the last row
    rows: Vec<Vec<f64>>,
    k_min: usize,
}

fn parse_qtable() -> QTable {
    let mut lines = QTABLE_0_05.lines();
    let header = lines.next().expect("qtable header");
    let k_min: usize = header
        .split(',')
        .nth(1)
        .expect("qtable k columns")
        .parse()
        .expect("qtable k_min");
    let mut dfs = Vec::new();
    let mut rows = Vec::new();
    for line in lines {
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split(',');
        let df_s = parts.next().unwrap();
        dfs.push(if df_s == "inf" {
            f64::INFINITY
        } else {
            df_s.parse().expect("qtable df")
        });
        rows.push(parts.map(|v| v.parse().expect("qtable value")).collect());
    }
    QTable { dfs, rows, k_min }
}

/// Critical value q(alpha, k_groups, df) from the bundled table, with linear
/// interpolation in 1/df between tabulated rows.
pub fn studentized_range_q(alpha: f64, k_groups: usize, df: usize) -> Result<f64> {
    if (alpha - 0.05).abs() > 1e-12 {
        return Err(Error::Stats(format!(
            "only alpha = 0.05 is tabulated (got {alpha})"
        )));
    }
    if df < 2 {
        return Err(Error::Stats(format!("df {df} < 2")));
    }
    let table = parse_qtable();
    let col = k_groups
        .checked_sub(table.k_min)
        .filter(|&c| c < table.rows[0].len())
        .ok_or_else(|| Error::Stats(format!("k_groups {k_groups} outside tabulated 2..=20")))?;
    let df = df as f64;
    // exact row match
    if let Some(i) = table.dfs.iter().position(|&d| d == df) {
        return Ok(table.rows[i][col]);
    }
    // bracket df between tabulated rows; interpolate linearly in 1/df
    let mut lo = 0;
    while lo + 1 < table.dfs.len() && table.dfs[lo + 1] < df {
        lo += 1;
    }
    let hi = lo + 1;
    let (df_lo, df_hi) = (table.dfs[lo], table.dfs[hi]);
    let (inv_lo, inv_hi) = (1.0 / df_lo, if df_hi.is_infinite() { 0.0 } else { 1.0 / df_hi });
    let t = (1.0 / df - inv_lo) / (inv_hi - inv_lo);
    Ok(table.rows[lo][col] + t * (table.rows[hi][col] - table.rows[lo][col]))
}

/// Compact letter display via insert-and-absorb over the significant pairs.
fn compact_letter_display(n: usize, significant: &[(usize, usize)]) -> Vec<BTreeSet<usize>> {
    let mut letters: Vec<BTreeSet<usize>> = vec![(0..n).collect()];
    for &(i, j) in significant {
        let mut next = Vec::new();
        for letter in letters {
            if letter.contains(&i) && letter.contains(&j) {
                let mut without_i = letter.clone();
                without_i.remove(&i);
                let mut without_j = letter;
                without_j.remove(&j);
                next.push(without_i);
                next.push(without_j);
            } else {
                next.push(letter);
            }
        }
        // absorb letters contained in another
        let mut kept: Vec<BTreeSet<usize>> = Vec::new();
        for cand in next {
            if kept.iter().any(|k| cand.is_subset(k)) {
                continue;
            }
            kept.retain(|k| !k.is_subset(&cand));
            kept.push(cand);
        }
        letters = kept;
    }
    // order letters by their highest-mean (lowest index) member
    letters.sort_by_key(|l| l.iter().next().copied().unwrap_or(usize::MAX));
    letters
}

/// One-way balanced Tukey HSD with compact letter display.
pub fn tukey_hsd(groups: &[SampleGroup], alpha: f64) -> Result<HsdResult> {
    if groups.len() < 2 {
        return Err(Error::Stats("tukey_hsd needs at least 2 groups".into()));
    }
    let n = groups[0].samples.len();
    if n < 2 {
        return Err(Error::Stats("tukey_hsd needs at least 2 samples per group".into()));
    }
    if groups.iter().any(|g| g.samples.len() != n) {
        return Err(Error::Stats("tukey_hsd requires balanced groups".into()));
    }
    let g = groups.len();
    let df_error = g * n - g;
    let mse: f64 = groups
        .iter()
        .map(|grp| {
            let m = grp.mean();
            grp.samples.iter().map(|x| (x - m).powi(2)).sum::<f64>()
        })
        .sum::<f64>()
        / df_error as f64;
    let q = studentized_range_q(alpha, g, df_error)?;
    let critical_difference = q * (mse / n as f64).sqrt();

    // sort by mean descending; ties by label for determinism
    let mut order: Vec<usize> = (0..g).collect();
    let means: Vec<f64> = groups.iter().map(|grp| grp.mean()).collect();
    order.sort_by(|&a, &b| {
        means[b]
            .partial_cmp(&means[a])
            .unwrap()
            .then_with(|| groups[a].label.cmp(&groups[b].label))
    });

    let mut significant = Vec::new();
    for a in 0..g {
        for b in (a + 1)..g {
            let diff = (means[order[a]] - means[order[b]]).abs();
            if diff > critical_difference {
                significant.push((a, b));
            }
        }
    }
    let letters = compact_letter_display(g, &significant);
    let alphabet: Vec<char> = ('A'..='Z').collect();
    let result_groups = order
        .iter()
        .enumerate()
        .map(|(pos, &idx)| {
            let mut ls = String::new();
            for (li, letter) in letters.iter().enumerate() {
                if letter.contains(&pos) {
                    ls.push(alphabet[li % alphabet.len()]);
                }
            }
            HsdGroupResult {
                label: groups[idx].label.clone(),
                mean: means[idx],
                letters: ls,
            }
        })
        .collect();
    Ok(HsdResult {
        groups: result_groups,
        alpha,
        critical_difference,
    })
}

fn average_ranks(abs_diffs: &[f64]) -> Vec<f64> {
    let n = abs_diffs.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| abs_diffs[a].partial_cmp(&abs_diffs[b]).unwrap());
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && abs_diffs[order[j + 1]] == abs_diffs[order[i]] {
            j += 1;
        }
        let avg = (i + 1 + j + 1) as f64 / 2.0;
        for &idx in &order[i..=j] {
            ranks[idx] = avg;
        }
        i = j + 1;
    }
    ranks
}

/// Exact two-sided p over all 2^n sign assignments, computed by dynamic
/// programming over doubled ranks (ties make ranks half-integers).
fn exact_p(ranks: &[f64], w_obs: f64) -> f64 {
    let doubled: Vec<usize> = ranks.iter().map(|&r| (2.0 * r).round() as usize).collect();
    let total: usize = doubled.iter().sum();
    let mut counts = vec![0.0f64; total + 1];
    counts[0] = 1.0;
    for &r in &doubled {
        for s in (r..=total).rev() {
            counts[s] += counts[s - r];
        }
    }
    let w2 = (2.0 * w_obs).round() as usize;
    let n_assign = 2f64.powi(ranks.len() as i32);
    let low: f64 = counts[..=w2.min(total)].iter().sum();
    let hi_start = total.saturating_sub(w2);
    let high: f64 = if hi_start <= total {
        counts[hi_start..].iter().sum()
    } else {
        0.0
    };
    let mut p = (low + high) / n_assign;
    if w2 >= total.saturating_sub(w2) {
        // tail regions overlap: every assignment counted once is enough
        p = 1.0f64.min(p);
    }
    p.min(1.0)
}

const EXACT_LIMIT: usize = 25;

/// Two-sided Wilcoxon signed-rank test on paired samples. Zero differences
/// are dropped; ties get average ranks.
pub fn wilcoxon_signed_rank(a: &[f64], b: &[f64]) -> Result<WilcoxonResult> {
    if a.len() != b.len() {
        return Err(Error::Stats(format!(
            "paired samples have different lengths ({} vs {})",
            a.len(),
            b.len()
        )));
    }
    if a.is_empty() {
        return Err(Error::Stats("paired samples are empty".into()));
    }
    let diffs: Vec<f64> = a
        .iter()
        .zip(b)
        .map(|(x, y)| x - y)
        .filter(|d| *d != 0.0)
        .collect();
    let n = diffs.len();
    if n == 0 {
        return Ok(WilcoxonResult {
            n_effective: 0,
            w_plus: 0.0,
            w_minus: 0.0,
            statistic: 0.0,
            p_value: 1.0,
            method: WilcoxonMethod::Exact,
        });
    }
    let abs: Vec<f64> = diffs.iter().map(|d| d.abs()).collect();
    let ranks = average_ranks(&abs);
    let w_plus: f64 = diffs
        .iter()
        .zip(&ranks)
        .filter(|(d, _)| **d > 0.0)
        .map(|(_, r)| r)
        .sum();
    let w_minus: f64 = ranks.iter().sum::<f64>() - w_plus;
    let statistic = w_plus.min(w_minus);

    let (p_value, method) = if n <= EXACT_LIMIT {
        (exact_p(&ranks, statistic), WilcoxonMethod::Exact)
    } else {
        let nf = n as f64;
        let mean = nf * (nf + 1.0) / 4.0;
        // tie correction over groups of equal |differences|
        let mut tie_term = 0.0;
        let mut sorted = abs.clone();
        sorted.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let mut i = 0;
        while i < sorted.len() {
            let mut j = i;
            while j + 1 < sorted.len() && sorted[j + 1] == sorted[i] {
                j += 1;
            }
            let t = (j - i + 1) as f64;
            tie_term += t * t * t - t;
            i = j + 1;
        }
        let var = nf * (nf + 1.0) * (2.0 * nf + 1.0) / 24.0 - tie_term / 48.0;
        let z = (statistic - mean + 0.5) / var.sqrt();
        let normal = Normal::new(0.0, 1.0).expect("unit normal");
        let p = (2.0 * normal.cdf(z)).min(1.0);
        (p, WilcoxonMethod::NormalApproximation)
    };
    Ok(WilcoxonResult {
        n_effective: n,
        w_plus,
        w_minus,
        statistic,
        p_value,
        method,
    })
}
