//! Random-intercept linear mixed model comparing two classifiers'
//! misclassification patterns over headline groups.
//!
//! The model is `y = mu + beta * x + alpha_group + eps` with
//! `alpha_group ~ N(0, sigma_alpha^2)` and `eps ~ N(0, sigma_eps^2)`, where
//! `y` stacks prediction deviations (prediction minus human label) for the
//! same headlines under model a (`x = 1`) and model b (`x = 0`), grouped by
//! target word.
//!
//! Estimation is REML with the variance ratio `lambda =
//! sigma_alpha^2/sigma_eps^2` profiled out: for fixed lambda the covariance
//! is `sigma_eps^2 (I + lambda Z Z')`, whose grouped structure reduces the
//! generalized-least-squares solve and both log-determinants to sums over
//! per-group sufficient statistics. A golden-section search minimizes the
//! profiled criterion over `ln lambda` in `[-12, 12]` to tolerance 1e-8.
//! The fixed-effect p-value is a two-sided Wald normal test.

use std::io::Write;

use crate::error::{Error, Result};
use crate::io::Label;

/// Variance floor for the group-intercept component.
pub const SIGMA_ALPHA_FLOOR: f64 = 1e-10;
/// Variance floor for the residual component (keeps degenerate noiseless
/// fits finite).
pub const SIGMA_EPS_FLOOR: f64 = 1e-12;

const LOG_LAMBDA_RANGE: (f64, f64) = (-12.0, 12.0);
const GOLDEN_TOL: f64 = 1e-8;
const MAX_ITER: usize = 200;

/// Stacked prediction deviations for one category.
#[derive(Debug, Clone)]
pub struct MisclassDataset {
    pub category: String,
    /// 2N deviations: model a's half first.
    pub y: Vec<f64>,
    /// Model-a indicator: 1.0 for the first half, 0.0 for the second.
    pub x: Vec<f64>,
    /// Group index per row (indices into `group_names`), repeated across halves.
    pub group: Vec<usize>,
    pub group_names: Vec<String>,
    pub n_headlines: usize,
}

/// Build the stacked dataset from matched prediction lists.
///
/// All lists run over the same N headlines in the same order; deviations are
/// numeric label differences, so entries live in {-2..2}.
pub fn build_dataset(
    preds_a: &[Label],
    preds_b: &[Label],
    human: &[Label],
    target_words: &[String],
    category: &str,
) -> Result<MisclassDataset> {
    let n = human.len();
    if preds_a.len() != n || preds_b.len() != n || target_words.len() != n {
        return Err(Error::MisclassLengthMismatch {
            category: category.to_string(),
        });
    }
    if n == 0 {
        return Err(Error::EmptyDataset {
            category: category.to_string(),
        });
    }
    let mut group_names: Vec<String> = Vec::new();
    let mut group_of: std::collections::HashMap<&str, usize> = std::collections::HashMap::new();
    let mut half_groups = Vec::with_capacity(n);
    for word in target_words {
        let id = *group_of.entry(word.as_str()).or_insert_with(|| {
            group_names.push(word.clone());
            group_names.len() - 1
        });
        half_groups.push(id);
    }

    let mut y = Vec::with_capacity(2 * n);
    let mut x = Vec::with_capacity(2 * n);
    let mut group = Vec::with_capacity(2 * n);
    for (pred, human_label) in preds_a.iter().zip(human) {
        y.push(pred.as_f64() - human_label.as_f64());
        x.push(1.0);
    }
    for (pred, human_label) in preds_b.iter().zip(human) {
        y.push(pred.as_f64() - human_label.as_f64());
        x.push(0.0);
    }
    group.extend_from_slice(&half_groups);
    group.extend_from_slice(&half_groups);

    Ok(MisclassDataset {
        category: category.to_string(),
        y,
        x,
        group,
        group_names,
        n_headlines: n,
    })
}

/// A fitted random-intercept model.
#[derive(Debug, Clone)]
pub struct MixedFit {
    pub category: String,
    /// Fixed effect of the model-a indicator; positive means model a rates
    /// the category more positively.
    pub beta: f64,
    pub se_beta: f64,
    /// Two-sided Wald normal p-value, clamped into (0, 1).
    pub p_value: f64,
    pub sigma_alpha2: f64,
    pub sigma_eps2: f64,
    pub intercept: f64,
    /// Fitted variance ratio sigma_alpha^2 / sigma_eps^2.
    pub lambda: f64,
    pub converged: bool,
    pub n_rows: usize,
    pub n_groups: usize,
}

struct Sufficient {
    n: f64,
    sx: f64,
    sxx: f64,
    sy: f64,
    sxy: f64,
    syy: f64,
    groups: Vec<GroupSums>,
}

#[derive(Debug, Clone, Copy)]
struct GroupSums {
    n: f64,
    sx: f64,
    sy: f64,
}

struct Evaluation {
    objective: f64,
    beta: f64,
    mu: f64,
    q: f64,
    a11: f64,
    det: f64,
}

fn sufficient_stats(data: &MisclassDataset) -> Sufficient {
    let mut groups = vec![
        GroupSums {
            n: 0.0,
            sx: 0.0,
            sy: 0.0
        };
        data.group_names.len()
    ];
    let (mut sx, mut sxx, mut sy, mut sxy, mut syy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for i in 0..data.y.len() {
        let (xi, yi, g) = (data.x[i], data.y[i], data.group[i]);
        sx += xi;
        sxx += xi * xi;
        sy += yi;
        sxy += xi * yi;
        syy += yi * yi;
        groups[g].n += 1.0;
        groups[g].sx += xi;
        groups[g].sy += yi;
    }
    Sufficient {
        n: data.y.len() as f64,
        sx,
        sxx,
        sy,
        sxy,
        syy,
        groups,
    }
}

/// Profiled REML criterion and GLS solution at a fixed variance ratio.
fn evaluate(suff: &Sufficient, lambda: f64) -> Evaluation {
    let mut a11 = suff.n;
    let mut a12 = suff.sx;
    let mut a22 = suff.sxx;
    let mut b1 = suff.sy;
    let mut b2 = suff.sxy;
    let mut yhy = suff.syy;
    let mut logdet_h = 0.0;
    for g in &suff.groups {
        let c = lambda / (1.0 + lambda * g.n);
        a11 -= c * g.n * g.n;
        a12 -= c * g.n * g.sx;
        a22 -= c * g.sx * g.sx;
        b1 -= c * g.n * g.sy;
        b2 -= c * g.sx * g.sy;
        yhy -= c * g.sy * g.sy;
        logdet_h += (1.0 + lambda * g.n).ln();
    }
    let det = a11 * a22 - a12 * a12;
    if det <= 0.0 || !det.is_finite() {
        return Evaluation {
            objective: f64::INFINITY,
            beta: f64::NAN,
            mu: f64::NAN,
            q: f64::NAN,
            a11,
            det,
        };
    }
    let mu = (a22 * b1 - a12 * b2) / det;
    let beta = (a11 * b2 - a12 * b1) / det;
    let q = (yhy - (b1 * mu + b2 * beta)).max(0.0);
    let objective = (suff.n - 2.0) * q.max(1e-300).ln() + logdet_h + det.ln();
    Evaluation {
        objective,
        beta,
        mu,
        q,
        a11,
        det,
    }
}

/// The profiled REML criterion at an arbitrary variance ratio, exposed for
/// optimality checks.
pub fn reml_objective(data: &MisclassDataset, lambda: f64) -> f64 {
    evaluate(&sufficient_stats(data), lambda).objective
}

/// Fit the random-intercept model by profiled REML.
pub fn fit_random_intercept(data: &MisclassDataset) -> Result<MixedFit> {
    let n = data.y.len();
    if n < 4 {
        return Err(Error::TooFewRows {
            category: data.category.clone(),
            what: "rows",
            n,
            need: 4,
        });
    }
    let n_groups = data.group_names.len();
    if n_groups < 2 {
        return Err(Error::TooFewRows {
            category: data.category.clone(),
            what: "groups",
            n: n_groups,
            need: 2,
        });
    }
    let x0 = data.x[0];
    if data.x.iter().all(|&x| x == x0) {
        return Err(Error::ConstantIndicator {
            category: data.category.clone(),
        });
    }
    // Singular when the indicator never varies inside any group: the fixed
    // effect is then indistinguishable from the random intercepts.
    let varies_within_some_group = data.group_names.iter().enumerate().any(|(g, _)| {
        let mut seen: Option<f64> = None;
        data.group.iter().zip(&data.x).any(|(&gi, &xi)| {
            if gi != g {
                return false;
            }
            match seen {
                None => {
                    seen = Some(xi);
                    false
                }
                Some(prev) => prev != xi,
            }
        })
    });
    if !varies_within_some_group {
        return Err(Error::SingularDesign {
            category: data.category.clone(),
        });
    }

    let suff = sufficient_stats(data);
    let objective = |u: f64| evaluate(&suff, u.exp()).objective;

    // Golden-section search on u = ln(lambda).
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = LOG_LAMBDA_RANGE;
    let mut c = hi - golden * (hi - lo);
    let mut d = lo + golden * (hi - lo);
    let mut fc = objective(c);
    let mut fd = objective(d);
    let mut converged = false;
    for _ in 0..MAX_ITER {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - golden * (hi - lo);
            fc = objective(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + golden * (hi - lo);
            fd = objective(d);
        }
        if hi - lo < GOLDEN_TOL {
            converged = true;
            break;
        }
    }
    let u_hat = 0.5 * (lo + hi);
    let lambda = u_hat.exp();
    let at_opt = evaluate(&suff, lambda);
    if !at_opt.objective.is_finite() {
        return Err(Error::SingularDesign {
            category: data.category.clone(),
        });
    }

    let sigma_eps2 = (at_opt.q / (suff.n - 2.0)).max(SIGMA_EPS_FLOOR);
    let sigma_alpha2 = (lambda * sigma_eps2).max(SIGMA_ALPHA_FLOOR);
    let se_beta = (sigma_eps2 * at_opt.a11 / at_opt.det).sqrt();
    let z = at_opt.beta / se_beta;
    let p_value = libm::erfc(z.abs() / std::f64::consts::SQRT_2)
        .clamp(1e-300, 1.0 - f64::EPSILON);

    Ok(MixedFit {
        category: data.category.clone(),
        beta: at_opt.beta,
        se_beta,
        p_value,
        sigma_alpha2,
        sigma_eps2,
        intercept: at_opt.mu,
        lambda,
        converged,
        n_rows: n,
        n_groups,
    })
}

/// Per-category comparison table between two named models.
#[derive(Debug, Clone)]
pub struct ComparisonTable {
    pub model_a: String,
    pub model_b: String,
    pub rows: Vec<ComparisonRow>,
}

#[derive(Debug, Clone)]
pub struct ComparisonRow {
    pub category: String,
    pub outcome: std::result::Result<MixedFit, String>,
}

/// Fit every category dataset; failures become per-row markers.
pub fn compare_models(
    datasets: &[MisclassDataset],
    model_a: &str,
    model_b: &str,
) -> ComparisonTable {
    let rows = datasets
        .iter()
        .map(|data| ComparisonRow {
            category: data.category.clone(),
            outcome: fit_random_intercept(data).map_err(|e| e.to_string()),
        })
        .collect();
    ComparisonTable {
        model_a: model_a.to_string(),
        model_b: model_b.to_string(),
        rows,
    }
}

/// Export a comparison table as RFC-4180 CSV.
pub fn write_comparison_csv<W: Write>(table: &ComparisonTable, writer: W) -> Result<()> {
    let mut csv = csv::Writer::from_writer(writer);
    csv.write_record([
        "category",
        "model_a",
        "model_b",
        "estimate",
        "se",
        "p_value",
        "sigma_alpha2",
        "sigma_eps2",
        "n_rows",
        "n_groups",
        "converged",
        "error",
    ])
    .map_err(csv_io)?;
    for row in &table.rows {
        match &row.outcome {
            Ok(fit) => csv
                .write_record([
                    row.category.as_str(),
                    table.model_a.as_str(),
                    table.model_b.as_str(),
                    &fit.beta.to_string(),
                    &fit.se_beta.to_string(),
                    &fit.p_value.to_string(),
                    &fit.sigma_alpha2.to_string(),
                    &fit.sigma_eps2.to_string(),
                    &fit.n_rows.to_string(),
                    &fit.n_groups.to_string(),
                    &fit.converged.to_string(),
                    "",
                ])
                .map_err(csv_io)?,
            Err(message) => csv
                .write_record([
                    row.category.as_str(),
                    table.model_a.as_str(),
                    table.model_b.as_str(),
                    "",
                    "",
                    "",
                    "",
                    "",
                    "",
                    "",
                    "",
                    message.as_str(),
                ])
                .map_err(csv_io)?,
        }
    }
    csv.flush()?;
    Ok(())
}

fn csv_io(err: csv::Error) -> Error {
    Error::Io(std::io::Error::other(err))
}
