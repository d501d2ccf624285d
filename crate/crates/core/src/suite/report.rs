//! Verification reports: per-degree statistics, slope fits and the verdict
//! rule that turns them into pass / fail / inconclusive.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::thresholds::Thresholds;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How a series of ratios enters the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    /// Cumulative sup must have slope below `slope_pass`.
    Bounded,
    /// Bounded above and below, with max/min at most the named spread threshold.
    Equivalent,
    /// Every value is an error that must not exceed the named tolerance.
    Exact,
    /// One value per degree that must grow linearly in `ln N`.
    LogLinear,
    /// Per-degree max/min at most the named band threshold.
    Band,
    /// Fail-by-construction: expected to grow with slope above `slope_fail`,
    /// or, when a threshold key is attached, to exceed that tolerance.
    Control,
    /// Reported only.
    Probe,
}

/// One evaluated ratio.
#[derive(Debug, Clone, PartialEq)]
pub struct Observation {
    pub series: String,
    pub degree: usize,
    pub generator: String,
    pub ratio: f64,
}

/// Per-series, per-degree aggregate. `sup_ratio` and `inf_ratio` are
/// cumulative over all degrees up to and including this one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatRow {
    pub series: String,
    pub role: Role,
    pub threshold_key: Option<String>,
    pub degree: usize,
    pub count: usize,
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub sup_ratio: f64,
    pub inf_ratio: f64,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_id: String,
    #[serde(with = "ext_real_map")]
    pub params: BTreeMap<String, f64>,
    pub degrees: Vec<usize>,
    pub statistics: Vec<StatRow>,
    pub slope_fit: BTreeMap<String, f64>,
    pub fit_quality: BTreeMap<String, f64>,
    pub verdict: Verdict,
    pub thresholds_used: BTreeMap<String, f64>,
    pub config: BTreeMap<String, String>,
    #[serde(skip)]
    pub samples: Vec<Observation>,
}

/// Reals that may be infinite are written as numbers or the strings
/// `"inf"` / `"-inf"`.
mod ext_real_map {
    use std::collections::BTreeMap;

    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::Value;

    pub fn serialize<S: Serializer>(map: &BTreeMap<String, f64>, ser: S) -> Result<S::Ok, S::Error> {
        let out: BTreeMap<&String, Value> = map
            .iter()
            .map(|(k, &v)| {
                let json = if v == f64::INFINITY {
                    Value::from("inf")
                } else if v == f64::NEG_INFINITY {
                    Value::from("-inf")
                } else {
                    Value::from(v)
                };
                (k, json)
            })
            .collect();
        out.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<BTreeMap<String, f64>, D::Error> {
        let raw = BTreeMap::<String, Value>::deserialize(de)?;
        raw.into_iter()
            .map(|(k, v)| {
                let x = match &v {
                    Value::Number(n) => n.as_f64(),
                    Value::String(s) if s == "inf" => Some(f64::INFINITY),
                    Value::String(s) if s == "-inf" => Some(f64::NEG_INFINITY),
                    _ => None,
                };
                x.map(|x| (k.clone(), x))
                    .ok_or_else(|| D::Error::custom(format!("bad real for {k}: {v}")))
            })
            .collect()
    }
}

/// Declares a series before observations are added, fixing its role and
/// report order.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesDecl {
    pub name: String,
    pub role: Role,
    pub threshold_key: Option<String>,
}

/// Collects observations for a check and assembles the report.
#[derive(Debug, Default)]
pub struct ReportBuilder {
    series: Vec<SeriesDecl>,
    samples: Vec<Observation>,
}

impl ReportBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare(&mut self, name: &str, role: Role, threshold_key: Option<&str>) {
        if !self.series.iter().any(|s| s.name == name) {
            self.series.push(SeriesDecl {
                name: name.into(),
                role,
                threshold_key: threshold_key.map(Into::into),
            });
        }
    }

    pub fn push(&mut self, series: &str, degree: usize, generator: impl Into<String>, ratio: f64) {
        debug_assert!(self.series.iter().any(|s| s.name == series), "undeclared series {series}");
        self.samples.push(Observation {
            series: series.into(),
            degree,
            generator: generator.into(),
            ratio,
        });
    }

    /// Re-labels every control series as a claim of the matching kind.
    pub fn invert_controls(&mut self) {
        for s in &mut self.series {
            if s.role == Role::Control {
                s.role = if s.threshold_key.is_some() { Role::Exact } else { Role::Bounded };
            }
        }
    }

    pub fn finish(
        self,
        check_id: &str,
        params: BTreeMap<String, f64>,
        degrees: Vec<usize>,
        thresholds: &Thresholds,
        config: BTreeMap<String, String>,
    ) -> Result<VerificationReport> {
        let statistics = aggregate(&self.series, &self.samples);
        let evaluation = evaluate(&statistics, thresholds)?;
        let mut thresholds_used = BTreeMap::new();
        for key in &evaluation.keys_used {
            thresholds_used.insert(key.clone(), thresholds.get(key)?);
        }
        Ok(VerificationReport {
            check_id: check_id.into(),
            params,
            degrees,
            statistics,
            slope_fit: evaluation.slope_fit,
            fit_quality: evaluation.fit_quality,
            verdict: evaluation.verdict,
            thresholds_used,
            config,
            samples: self.samples,
        })
    }
}

fn aggregate(series: &[SeriesDecl], samples: &[Observation]) -> Vec<StatRow> {
    let mut rows = Vec::new();
    for decl in series {
        let mut by_degree: BTreeMap<usize, Vec<&Observation>> = BTreeMap::new();
        for o in samples.iter().filter(|o| o.series == decl.name) {
            by_degree.entry(o.degree).or_default().push(o);
        }
        let (mut sup, mut inf) = (f64::NEG_INFINITY, f64::INFINITY);
        for (degree, obs) in by_degree {
            let mut min_ratio = f64::INFINITY;
            let mut max_ratio = f64::NEG_INFINITY;
            let mut witness = String::new();
            for o in &obs {
                min_ratio = min_ratio.min(o.ratio);
                if o.ratio > max_ratio {
                    max_ratio = o.ratio;
                    witness = o.generator.clone();
                }
            }
            sup = sup.max(max_ratio);
            inf = inf.min(min_ratio);
            rows.push(StatRow {
                series: decl.name.clone(),
                role: decl.role,
                threshold_key: decl.threshold_key.clone(),
                degree,
                count: obs.len(),
                min_ratio,
                max_ratio,
                sup_ratio: sup,
                inf_ratio: inf,
                witness,
            });
        }
    }
    rows
}

/// Least-squares slope, intercept and R² of `y` against `x`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> Option<(f64, f64, f64)> {
    let n = x.len();
    if n < 2 || n != y.len() {
        return None;
    }
    let mx = x.iter().sum::<f64>() / n as f64;
    let my = y.iter().sum::<f64>() / n as f64;
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Some((slope, my - slope * mx, r2))
}

/// Slope of `ln(value)` against `ln(degree)`; zero values are dropped.
pub fn log_log_slope(points: &[(usize, f64)]) -> Option<f64> {
    let (x, y): (Vec<f64>, Vec<f64>) = points
        .iter()
        .filter(|(_, v)| *v > 0.0)
        .map(|&(d, v)| ((d as f64).ln(), v.ln()))
        .unzip();
    linear_fit(&x, &y).map(|(s, _, _)| s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Violated,
    Undecided,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesOutcome {
    pub series: String,
    pub role: Role,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub verdict: Verdict,
    pub outcomes: Vec<SeriesOutcome>,
    pub slope_fit: BTreeMap<String, f64>,
    pub fit_quality: BTreeMap<String, f64>,
    pub keys_used: Vec<String>,
}

fn slope_outcome(slope: Option<f64>, pass: f64, fail: f64) -> Outcome {
    match slope {
        Some(s) if s < pass => Outcome::Holds,
        Some(s) if s > fail => Outcome::Violated,
        _ => Outcome::Undecided,
    }
}

fn exact_outcome(rows: &[&StatRow], tol: f64, name: &str, fit_quality: &mut BTreeMap<String, f64>) -> Outcome {
    let worst = rows.iter().map(|r| r.max_ratio).fold(f64::NEG_INFINITY, f64::max);
    fit_quality.insert(format!("{name}.max_error"), worst);
    if worst <= tol {
        Outcome::Holds
    } else {
        Outcome::Violated
    }
}

/// Re-derives every series outcome and the verdict from statistics and
/// thresholds alone.
pub fn evaluate(statistics: &[StatRow], thresholds: &Thresholds) -> Result<Evaluation> {
    let mut keys_used: Vec<String> = Vec::new();
    let mut use_key = |k: &str| -> Result<f64> {
        if !keys_used.iter().any(|u| u == k) {
            keys_used.push(k.to_string());
        }
        thresholds.get(k)
    };
    let pass = use_key("slope_pass")?;
    let fail = use_key("slope_fail")?;

    let mut order: Vec<&str> = Vec::new();
    for r in statistics {
        if !order.contains(&r.series.as_str()) {
            order.push(&r.series);
        }
    }

    let mut outcomes = Vec::new();
    let mut slope_fit = BTreeMap::new();
    let mut fit_quality = BTreeMap::new();
    for name in order {
        let rows: Vec<&StatRow> = statistics.iter().filter(|r| r.series == name).collect();
        let role = rows[0].role;
        let key = rows[0].threshold_key.as_deref();
        let sups: Vec<(usize, f64)> = rows.iter().map(|r| (r.degree, r.sup_ratio)).collect();
        let sup_slope = log_log_slope(&sups);
        if let Some(s) = sup_slope {
            slope_fit.insert(name.to_string(), s);
        }
        let outcome = match role {
            Role::Control if key.is_some() => exact_outcome(&rows, use_key(key.unwrap())?, name, &mut fit_quality),
            Role::Bounded | Role::Control => slope_outcome(sup_slope, pass, fail),
            Role::Probe => Outcome::Undecided,
            Role::Exact => exact_outcome(&rows, use_key(key.unwrap_or("pairing_rel_tol"))?, name, &mut fit_quality),
            Role::Equivalent => {
                let spread_max = use_key(key.unwrap_or("equivalence_spread_max"))?;
                let hi = rows.iter().map(|r| r.max_ratio).fold(f64::NEG_INFINITY, f64::max);
                let lo = rows.iter().map(|r| r.min_ratio).fold(f64::INFINITY, f64::min);
                let spread = hi / lo;
                fit_quality.insert(format!("{name}.spread"), spread);
                // reciprocal of the cumulative inf, so growth means the lower bound degrades
                let infs: Vec<(usize, f64)> = rows.iter().map(|r| (r.degree, 1.0 / r.inf_ratio)).collect();
                let inf_slope = log_log_slope(&infs);
                if let Some(s) = inf_slope {
                    slope_fit.insert(format!("{name}.inverse_inf"), s);
                }
                let upper = slope_outcome(sup_slope, pass, fail);
                let lower = slope_outcome(inf_slope, pass, fail);
                if !(lo > 0.0) || !(spread <= spread_max) || upper == Outcome::Violated || lower == Outcome::Violated {
                    Outcome::Violated
                } else if upper == Outcome::Holds && lower == Outcome::Holds {
                    Outcome::Holds
                } else {
                    Outcome::Undecided
                }
            }
            Role::Band => {
                let band = use_key(key.unwrap_or("rearrangement_band"))?;
                let worst = rows.iter().map(|r| r.max_ratio / r.min_ratio).fold(f64::NEG_INFINITY, f64::max);
                fit_quality.insert(format!("{name}.band"), worst);
                if worst <= band {
                    Outcome::Holds
                } else {
                    Outcome::Violated
                }
            }
            Role::LogLinear => {
                let r2_min = use_key("log_growth_r2_min")?;
                let drift = use_key("log_growth_coeff_drift")?;
                let x: Vec<f64> = rows.iter().map(|r| (r.degree as f64).ln()).collect();
                let y: Vec<f64> = rows.iter().map(|r| r.max_ratio).collect();
                if x.len() < 4 {
                    Outcome::Undecided
                } else {
                    let (coef, _, r2) = linear_fit(&x, &y).expect("distinct degrees");
                    let half = x.len().div_ceil(2);
                    let (lo, _, _) = linear_fit(&x[..half], &y[..half]).expect("two points");
                    let (hi, _, _) = linear_fit(&x[x.len() - half..], &y[y.len() - half..]).expect("two points");
                    let worst_drift = ((lo - coef) / coef).abs().max(((hi - coef) / coef).abs());
                    fit_quality.insert(format!("{name}.r2"), r2);
                    fit_quality.insert(format!("{name}.log_coefficient"), coef);
                    fit_quality.insert(format!("{name}.coefficient_drift"), worst_drift);
                    if coef > 0.0 && r2 >= r2_min && worst_drift <= drift {
                        Outcome::Holds
                    } else {
                        Outcome::Violated
                    }
                }
            }
        };
        outcomes.push(SeriesOutcome {
            series: name.to_string(),
            role,
            outcome,
        });
    }

    let claims = outcomes.iter().filter(|o| !matches!(o.role, Role::Control | Role::Probe));
    let controls = outcomes.iter().filter(|o| o.role == Role::Control);
    let verdict = if claims.clone().any(|o| o.outcome == Outcome::Violated) {
        Verdict::Fail
    } else if claims.clone().any(|o| o.outcome == Outcome::Undecided) || controls.clone().any(|o| o.outcome != Outcome::Violated) {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };
    Ok(Evaluation {
        verdict,
        outcomes,
        slope_fit,
        fit_quality,
        keys_used,
    })
}

/// The verdict implied by a report's statistics and the given thresholds.
pub fn derive_verdict(statistics: &[StatRow], thresholds: &Thresholds) -> Result<Verdict> {
    Ok(evaluate(statistics, thresholds)?.verdict)
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// One row per observation: `check_id,degree,generator,ratio,verdict`,
    /// where `generator` is `series/tag`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("check_id,degree,generator,ratio,verdict\n");
        for o in &self.samples {
            out.push_str(&format!(
                "{},{},{}/{},{:e},{}\n",
                self.check_id, o.degree, o.series, o.generator, o.ratio, self.verdict
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report_with(role: Role, values: &[(usize, f64)]) -> VerificationReport {
        let mut b = ReportBuilder::new();
        b.declare("s", role, None);
        for &(d, v) in values {
            b.push("s", d, "g", v);
        }
        b.finish(
            "t",
            BTreeMap::new(),
            values.iter().map(|v| v.0).collect(),
            &Thresholds::frozen(),
            BTreeMap::new(),
        )
        .unwrap()
    }

    #[test]
    fn slope_thresholds() {
        let flat = [(64, 1.0), (128, 1.01), (256, 1.0), (512, 1.02)];
        assert_eq!(report_with(Role::Bounded, &flat).verdict, Verdict::Pass);
        let growing: Vec<(usize, f64)> = [64usize, 128, 256, 512].iter().map(|&d| (d, (d as f64).sqrt())).collect();
        assert_eq!(report_with(Role::Bounded, &growing).verdict, Verdict::Fail);
        // between the two thresholds
        let middling: Vec<(usize, f64)> = [64usize, 128, 256, 512].iter().map(|&d| (d, (d as f64).powf(0.07))).collect();
        assert_eq!(report_with(Role::Bounded, &middling).verdict, Verdict::Inconclusive);
        assert_eq!(report_with(Role::Bounded, &[(64, 1.0)]).verdict, Verdict::Inconclusive);
    }

    #[test]
    fn cumulative_sup_and_inf() {
        let r = report_with(Role::Equivalent, &[(64, 2.0), (128, 1.0), (256, 3.0)]);
        let sups: Vec<f64> = r.statistics.iter().map(|s| s.sup_ratio).collect();
        let infs: Vec<f64> = r.statistics.iter().map(|s| s.inf_ratio).collect();
        assert_eq!(sups, vec![2.0, 2.0, 3.0]);
        assert_eq!(infs, vec![2.0, 1.0, 1.0]);
    }

    #[test]
    fn controls_must_fail() {
        let mut b = ReportBuilder::new();
        b.declare("claim", Role::Bounded, None);
        b.declare("control", Role::Control, None);
        for d in [64usize, 128, 256, 512] {
            b.push("claim", d, "g", 1.0);
            b.push("control", d, "g", d as f64);
        }
        let t = Thresholds::frozen();
        let r = b.finish("t", BTreeMap::new(), vec![], &t, BTreeMap::new()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);

        let mut weak = r.statistics.clone();
        for row in weak.iter_mut().filter(|row| row.series == "control") {
            row.sup_ratio = 1.0;
        }
        assert_eq!(derive_verdict(&weak, &t).unwrap(), Verdict::Inconclusive);
    }

    #[test]
    fn log_linear_fit() {
        let values: Vec<(usize, f64)> = [64usize, 256, 1024, 4096]
            .iter()
            .map(|&d| (d, 0.1 + 0.2 * (d as f64).ln()))
            .collect();
        let r = report_with(Role::LogLinear, &values);
        assert_eq!(r.verdict, Verdict::Pass);
        assert!((r.fit_quality["s.log_coefficient"] - 0.2).abs() < 1e-12);
        let power: Vec<(usize, f64)> = [64usize, 256, 1024, 4096].iter().map(|&d| (d, d as f64)).collect();
        assert_eq!(report_with(Role::LogLinear, &power).verdict, Verdict::Fail);
    }

    #[test]
    fn json_round_trip_preserves_verdict() {
        let mut r = report_with(Role::Bounded, &[(64, 1.0), (128, 1.0)]);
        r.params.insert("s".into(), f64::INFINITY);
        r.params.insert("p".into(), 0.5);
        let back = VerificationReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back.params, r.params);
        assert_eq!(back.statistics, r.statistics);
        assert_eq!(derive_verdict(&back.statistics, &Thresholds::frozen()).unwrap(), r.verdict);
    }
}
