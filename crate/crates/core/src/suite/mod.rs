//! Registry of theorem checks, the runner that turns a check id plus
//! parameters into a [`VerificationReport`], and the default battery.

pub mod checks;
pub mod report;
pub mod thresholds;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::multiplier::Resolution;
use checks::{CheckContext, Params};
pub use report::{derive_verdict, Observation, ReportBuilder, Role, StatRow, Verdict, VerificationReport};
pub use thresholds::Thresholds;

pub const DEFAULT_DEGREES: [usize; 4] = [64, 128, 256, 512];
pub const SHARPNESS_DEGREES: [usize; 7] = [64, 128, 256, 512, 1024, 2048, 4096];
pub const DEFAULT_SEED: u64 = 1;

type CheckFn = fn(&CheckContext, &Params, &mut ReportBuilder) -> Result<()>;

pub struct CheckInfo {
    pub id: &'static str,
    /// Parameter names with their defaults.
    pub params: &'static [(&'static str, f64)],
    pub default_degrees: &'static [usize],
    run: CheckFn,
}

const INF: f64 = f64::INFINITY;

pub static REGISTRY: &[CheckInfo] = &[
    CheckInfo {
        id: "nested_embedding",
        params: &[("p0", 0.25), ("p", 0.5), ("s", 1.0), ("q", 1.0), ("t", 1.0), ("beta", 3.0)],
        default_degrees: &DEFAULT_DEGREES,
        run: checks::nested_embedding,
    },
    CheckInfo {
        id: "hl_coefficient_inequality",
        params: &[("p", 0.5), ("q", 1.0)],
        default_degrees: &DEFAULT_DEGREES,
        run: checks::hl_coefficient_inequality,
    },
    CheckInfo {
        id: "sharpness_cauchy",
        params: &[("p", 0.5)],
        default_degrees: &SHARPNESS_DEGREES,
        run: checks::sharpness_cauchy,
    },
    CheckInfo {
        id: "blocked_parseval",
        params: &[("q", 2.0), ("alpha", 1.0), ("beta", 0.0)],
        default_degrees: &DEFAULT_DEGREES,
        run: checks::blocked_parseval,
    },
    CheckInfo {
        id: "seq_multiplier",
        params: &[("p", 0.5), ("q", 1.0), ("s", 2.0)],
        default_degrees: &DEFAULT_DEGREES,
        run: checks::seq_multiplier,
    },
    CheckInfo {
        id: "mixed_multiplier",
        params: &[
            ("p", 0.5),
            ("q", 1.0),
            ("s", 2.0),
            ("t", 2.0),
            ("alpha", 0.0),
            ("beta", 1.0),
            ("gamma", 0.0),
        ],
        default_degrees: &DEFAULT_DEGREES,
        run: checks::mixed_multiplier,
    },
    CheckInfo {
        id: "hardy_multiplier",
        params: &[("p", 0.5), ("q", 1.0), ("s", 1.0)],
        default_degrees: &DEFAULT_DEGREES,
        run: checks::hardy_multiplier,
    },
    CheckInfo {
        id: "duality_pairing",
        params: &[("p", 0.5), ("q", 2.0)],
        default_degrees: &DEFAULT_DEGREES,
        run: checks::duality_pairing_check,
    },
    CheckInfo {
        id: "lipschitz_identifications",
        params: &[("alpha", 0.5), ("s", INF)],
        default_degrees: &DEFAULT_DEGREES,
        run: checks::lipschitz_identifications,
    },
    CheckInfo {
        id: "pairing_identity",
        params: &[("alpha", 1.0), ("p", 0.5)],
        default_degrees: &DEFAULT_DEGREES,
        run: checks::pairing_identity,
    },
];

pub fn lookup(id: &str) -> Result<&'static CheckInfo> {
    REGISTRY
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownCheck(id.to_string()))
}

/// Settings for a run, echoed into every report.
#[derive(Debug, Clone)]
pub struct RunOptions {
    pub degrees: Option<Vec<usize>>,
    pub seed: u64,
    pub resolution: Resolution,
    pub control_inverted: bool,
    pub thresholds: Thresholds,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            degrees: None,
            seed: DEFAULT_SEED,
            resolution: Resolution::default(),
            control_inverted: false,
            thresholds: Thresholds::frozen(),
        }
    }
}

fn fmt_real(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{x}")
    }
}

impl RunOptions {
    pub fn config_map(&self, degrees: &[usize]) -> BTreeMap<String, String> {
        let r = &self.resolution;
        let mut c = BTreeMap::new();
        c.insert("seed".into(), self.seed.to_string());
        c.insert(
            "degrees".into(),
            degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","),
        );
        c.insert("m".into(), r.m.map_or("auto".into(), |m| m.to_string()));
        c.insert("oversample".into(), r.oversample.to_string());
        c.insert("k".into(), r.k.to_string());
        c.insert("grade".into(), fmt_real(r.grade));
        c.insert(
            "control".into(),
            if self.control_inverted {
                "inverted".into()
            } else {
                "normal".into()
            },
        );
        c
    }
}

/// Merges overrides into the check's defaults; unknown names are rejected.
pub fn effective_params(info: &CheckInfo, overrides: &BTreeMap<String, f64>) -> Result<Params> {
    let mut params: Params = info.params.iter().map(|&(k, v)| (k.to_string(), v)).collect();
    for (k, &v) in overrides {
        match params.get_mut(k) {
            Some(slot) => *slot = v,
            None => return Err(Error::InvalidParameter(format!("check {} takes no parameter {k}", info.id))),
        }
    }
    Ok(params)
}

pub fn run_check(id: &str, overrides: &BTreeMap<String, f64>, options: &RunOptions) -> Result<VerificationReport> {
    let info = lookup(id)?;
    let params = effective_params(info, overrides)?;
    let mut degrees = options.degrees.clone().unwrap_or_else(|| info.default_degrees.to_vec());
    degrees.sort_unstable();
    degrees.dedup();
    if degrees.is_empty() || degrees[0] < 2 {
        return Err(Error::InvalidParameter("degrees must be nonempty and at least 2".into()));
    }
    let ctx = CheckContext {
        degrees: degrees.clone(),
        seed: options.seed,
        resolution: options.resolution,
    };
    let mut builder = ReportBuilder::new();
    (info.run)(&ctx, &params, &mut builder)?;
    if options.control_inverted {
        builder.invert_controls();
    }
    let config = options.config_map(&degrees);
    builder.finish(id, params, degrees, &options.thresholds, config)
}

/// One entry of the default battery.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub name: String,
    pub check_id: &'static str,
    pub params: BTreeMap<String, f64>,
}

fn instance(name: &str, check_id: &'static str, params: &[(&str, f64)]) -> Instance {
    Instance {
        name: name.into(),
        check_id,
        params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
    }
}

/// The full battery run by the suite command, in a fixed order.
pub fn default_battery() -> Vec<Instance> {
    vec![
        instance(
            "nested_embedding.1",
            "nested_embedding",
            &[("p0", 0.25), ("p", 0.5), ("s", 1.0), ("q", 1.0), ("t", 1.0), ("beta", 3.0)],
        ),
        instance(
            "nested_embedding.2",
            "nested_embedding",
            &[("p0", 0.5), ("p", 0.75), ("s", 2.0), ("q", 2.0), ("t", 2.0), ("beta", 2.0)],
        ),
        instance("hl_coefficient_inequality", "hl_coefficient_inequality", &[("p", 0.5), ("q", 1.0)]),
        instance("sharpness_cauchy.1", "sharpness_cauchy", &[("p", 0.5)]),
        instance("sharpness_cauchy.2", "sharpness_cauchy", &[("p", 0.75)]),
        instance(
            "blocked_parseval.1",
            "blocked_parseval",
            &[("q", 2.0), ("alpha", 1.0), ("beta", 0.0)],
        ),
        instance(
            "blocked_parseval.2",
            "blocked_parseval",
            &[("q", INF), ("alpha", 1.0), ("beta", 1.0)],
        ),
        instance(
            "blocked_parseval.3",
            "blocked_parseval",
            &[("q", 1.0), ("alpha", 0.5), ("beta", 0.0)],
        ),
        instance("seq_multiplier", "seq_multiplier", &[("p", 0.5), ("q", 1.0), ("s", 2.0)]),
        instance(
            "mixed_multiplier",
            "mixed_multiplier",
            &[
                ("p", 0.5),
                ("q", 1.0),
                ("s", 2.0),
                ("t", 2.0),
                ("alpha", 0.0),
                ("beta", 1.0),
                ("gamma", 0.0),
            ],
        ),
        instance("hardy_multiplier.1", "hardy_multiplier", &[("p", 0.5), ("q", 1.0), ("s", 1.0)]),
        instance("hardy_multiplier.2", "hardy_multiplier", &[("p", 0.5), ("q", 1.0), ("s", 2.0)]),
        instance("duality_pairing", "duality_pairing", &[("p", 0.5), ("q", 2.0)]),
        instance(
            "lipschitz_identifications",
            "lipschitz_identifications",
            &[("alpha", 0.5), ("s", INF)],
        ),
        instance("pairing_identity.1", "pairing_identity", &[("alpha", 1.0), ("p", 0.5)]),
        instance("pairing_identity.2", "pairing_identity", &[("alpha", 0.5), ("p", 0.75)]),
    ]
}
