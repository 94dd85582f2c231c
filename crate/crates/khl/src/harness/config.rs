//! Scenario files: JSON descriptions of a verification run — which suite,
//! over which ring and ideal, at which rank, power, window and seed.

use super::HarnessError;
use crate::arith::{BaseField, PolyRing, Ring, Scalar};
use crate::koszul::{conormal_data, ConormalData};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

/// Every runnable suite name, plus `all`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Thm32,
    Rem36,
    Thm51,
    Ex52,
    Thm64,
    Cor63,
    Lemma61,
    Lemma22,
    Prop24,
    DoldKan,
    CrossEffects,
    Lambda,
    Rem65,
    Ex66Conjecture,
    All,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Thm32 => "thm32",
            Suite::Rem36 => "rem36",
            Suite::Thm51 => "thm51",
            Suite::Ex52 => "ex52",
            Suite::Thm64 => "thm64",
            Suite::Cor63 => "cor63",
            Suite::Lemma61 => "lemma61",
            Suite::Lemma22 => "lemma22",
            Suite::Prop24 => "prop24",
            Suite::DoldKan => "doldkan",
            Suite::CrossEffects => "crosseffects",
            Suite::Lambda => "lambda",
            Suite::Rem65 => "rem65",
            Suite::Ex66Conjecture => "ex66_conjecture",
            Suite::All => "all",
        }
    }

    /// The individually runnable suites, in catalogue order.
    pub fn catalogue() -> &'static [Suite] {
        &[
            Suite::Thm32,
            Suite::Rem36,
            Suite::Thm51,
            Suite::Ex52,
            Suite::Thm64,
            Suite::Cor63,
            Suite::Lemma61,
            Suite::Lemma22,
            Suite::Prop24,
            Suite::DoldKan,
            Suite::CrossEffects,
            Suite::Lambda,
            Suite::Rem65,
            Suite::Ex66Conjecture,
        ]
    }
}

impl FromStr for Suite {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, HarnessError> {
        Suite::catalogue()
            .iter()
            .chain(std::iter::once(&Suite::All))
            .find(|v| v.name() == s)
            .copied()
            .ok_or_else(|| HarnessError::Validation {
                message: format!(
                    "unknown suite '{s}'; run `khl list-suites` for the catalogue"
                ),
            })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Ring description as it appears in scenario files.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingSpec {
    Int,
    Rat,
    GradedPoly { base: String, vars: Vec<String> },
}

impl Default for RingSpec {
    fn default() -> Self {
        RingSpec::Int
    }
}

impl RingSpec {
    pub fn build(&self) -> Result<Ring, HarnessError> {
        match self {
            RingSpec::Int => Ok(Ring::Int),
            RingSpec::Rat => Ok(Ring::Rat),
            RingSpec::GradedPoly { base, vars } => {
                if vars.is_empty() {
                    return Err(HarnessError::Validation {
                        message: "graded_poly ring needs a nonempty vars list".into(),
                    });
                }
                let base = match base.as_str() {
                    "Q" => BaseField::Rat,
                    s => {
                        let p = s
                            .strip_prefix('F')
                            .and_then(|t| t.parse::<u64>().ok())
                            .filter(|&p| p >= 2);
                        match p {
                            Some(p) => BaseField::Fp(p),
                            None => {
                                return Err(HarnessError::Validation {
                                    message: format!(
                                        "unknown base field '{s}' (use \"Q\" or \"F<p>\")"
                                    ),
                                })
                            }
                        }
                    }
                };
                Ok(Ring::Poly(PolyRing {
                    base,
                    vars: vars.clone(),
                }))
            }
        }
    }
}

/// The raw scenario file shape; optional fields get defaults at validation.
#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawScenario {
    suite: String,
    #[serde(default)]
    ring: RingSpec,
    #[serde(default)]
    ideal: Vec<String>,
    #[serde(default)]
    rank: Option<usize>,
    #[serde(default)]
    n: Option<usize>,
    #[serde(default)]
    window: Option<i64>,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    out: Option<String>,
}

/// A validated scenario: defaults are filled in and echoed into reports.
#[derive(Clone, Debug, Serialize)]
pub struct ScenarioConfig {
    #[serde(serialize_with = "ser_suite")]
    pub suite: Suite,
    pub ring: RingSpec,
    pub ideal: Vec<String>,
    pub rank: usize,
    pub n: usize,
    pub window: i64,
    pub seed: u64,
    #[serde(skip)]
    pub out: Option<String>,
}

fn ser_suite<S: serde::Serializer>(s: &Suite, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(s.name())
}

/// Parse and validate a scenario file.
pub fn parse_scenario(path: &Path) -> Result<ScenarioConfig, HarnessError> {
    let text = std::fs::read_to_string(path)?;
    scenario_from_str(&text)
}

/// Parse and validate scenario JSON text.
pub fn scenario_from_str(text: &str) -> Result<ScenarioConfig, HarnessError> {
    let raw: RawScenario = serde_json::from_str(text).map_err(|e| HarnessError::Parse {
        message: e.to_string(),
    })?;
    validate(raw)
}

fn validate(raw: RawScenario) -> Result<ScenarioConfig, HarnessError> {
    let suite: Suite = raw.suite.parse()?;
    let rank = raw.rank.unwrap_or(2);
    let n = raw.n.unwrap_or(2);
    if rank == 0 {
        return Err(HarnessError::Validation {
            message: "missing or zero parameter: rank must be at least 1".into(),
        });
    }
    if n == 0 {
        return Err(HarnessError::Validation {
            message: "missing or zero parameter: n must be at least 1".into(),
        });
    }
    let cfg = ScenarioConfig {
        suite,
        ring: raw.ring,
        ideal: raw.ideal,
        rank,
        n,
        window: 0,
        seed: raw.seed.unwrap_or(0),
        out: raw.out,
    };
    let cfg = ScenarioConfig {
        window: raw.window.unwrap_or_else(|| cfg.default_window()),
        ..cfg
    };
    cfg.check_suite_requirements()?;
    Ok(cfg)
}

impl ScenarioConfig {
    /// Re-target a parsed scenario at a different suite (the CLI positional
    /// argument wins over the file), re-checking suite requirements.
    pub fn with_suite(mut self, suite: Suite) -> Result<ScenarioConfig, HarnessError> {
        self.suite = suite;
        self.check_suite_requirements()?;
        Ok(self)
    }

    /// Default degree window: twice the top ideal-generator degree plus a
    /// margin, so the predicted homology fits strictly inside; the cubic
    /// conjecture suite reaches internal degree 4 and gets a wider default.
    pub fn default_window(&self) -> i64 {
        let top_gen_degree = match &self.ring {
            RingSpec::GradedPoly { .. } => 1,
            _ => 1,
        };
        match self.suite {
            Suite::Ex66Conjecture => 6,
            _ => 2 * top_gen_degree + 2,
        }
    }

    /// The ambient ring of the configured scenario.
    pub fn build_ring(&self) -> Result<Ring, HarnessError> {
        self.ring.build()
    }

    /// Parse the ideal generator strings against the ambient ring: integer
    /// literals over the integers, plain variable names over a graded ring.
    pub fn ideal_scalars(&self, ring: &Ring) -> Result<Vec<Scalar>, HarnessError> {
        if self.ideal.is_empty() {
            return Err(HarnessError::Validation {
                message: "missing parameter: ideal (a nonempty list of generators)".into(),
            });
        }
        let mut out = Vec::with_capacity(self.ideal.len());
        for g in &self.ideal {
            let s = match ring {
                Ring::Int => {
                    let v: i64 = g.trim().parse().map_err(|_| HarnessError::Validation {
                        message: format!("ideal generator '{g}' is not an integer"),
                    })?;
                    ring.from_i64(v)
                }
                Ring::Poly(p) => {
                    let idx = p.vars.iter().position(|v| v == g.trim());
                    match idx {
                        Some(i) => ring.var(i),
                        None => {
                            return Err(HarnessError::Validation {
                                message: format!(
                                    "ideal generator '{g}' is not a variable of the ring"
                                ),
                            })
                        }
                    }
                }
                other => {
                    return Err(HarnessError::Validation {
                        message: format!("ideals over {other:?} are not supported"),
                    })
                }
            };
            out.push(s);
        }
        Ok(out)
    }

    /// Build the conormal setup for the configured ring and ideal.
    pub fn conormal(&self) -> Result<ConormalData, HarnessError> {
        let ring = self.build_ring()?;
        let gens = self.ideal_scalars(&ring)?;
        conormal_data(&ring, &gens).map_err(|e| HarnessError::Validation {
            message: format!("invalid ring/ideal configuration: {e}"),
        })
    }

    /// Suite-specific parameter completeness.
    fn check_suite_requirements(&self) -> Result<(), HarnessError> {
        let needs_instance = matches!(
            self.suite,
            Suite::Thm32
                | Suite::Rem36
                | Suite::Thm51
                | Suite::Ex52
                | Suite::Thm64
                | Suite::Cor63
                | Suite::Lemma22
                | Suite::Prop24
                | Suite::Ex66Conjecture
        );
        if needs_instance && self.ideal.is_empty() {
            return Err(HarnessError::Validation {
                message: format!(
                    "missing parameter: ideal (suite {} needs ideal generators)",
                    self.suite
                ),
            });
        }
        match self.suite {
            Suite::Thm64 | Suite::Ex66Conjecture => {
                let graded_gens = match &self.ring {
                    RingSpec::GradedPoly { vars, .. } => {
                        vars.len() == 2 && self.ideal.len() == 2
                    }
                    _ => false,
                };
                if !graded_gens {
                    return Err(HarnessError::Validation {
                        message: format!(
                            "missing parameter: suite {} needs a 2-generator graded ideal \
                             (second ideal generator absent or ring not graded_poly in 2 vars)",
                            self.suite
                        ),
                    });
                }
            }
            Suite::Cor63 => {
                match &self.ring {
                    RingSpec::GradedPoly { base, .. } if base != "F2" => {}
                    _ => {
                        return Err(HarnessError::Validation {
                            message:
                                "suite cor63 needs a graded_poly ring with 2 invertible in the base"
                                    .into(),
                        })
                    }
                }
            }
            Suite::Ex52 | Suite::Thm51 => {
                if let RingSpec::GradedPoly { base, .. } = &self.ring {
                    if base != "Q" {
                        return Err(HarnessError::Validation {
                            message: format!(
                                "suite {} compares characters over the rationals; use base \"Q\"",
                                self.suite
                            ),
                        });
                    }
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Canonical scenario for a suite under `all`: a fixed instance per
    /// suite (seed and jobs come from the caller).
    pub fn canonical(suite: Suite, seed: u64) -> ScenarioConfig {
        let (ring, ideal, rank, n) = match suite {
            Suite::Thm32 | Suite::Rem36 | Suite::Thm51 | Suite::Lemma22 | Suite::Prop24 => {
                (RingSpec::Int, vec!["2".to_string()], 2, 2)
            }
            Suite::Ex52 => (
                RingSpec::GradedPoly {
                    base: "Q".into(),
                    vars: vec!["x".into()],
                },
                vec!["x".to_string()],
                1,
                2,
            ),
            Suite::Thm64 | Suite::Cor63 | Suite::Ex66Conjecture => (
                RingSpec::GradedPoly {
                    base: "Q".into(),
                    vars: vec!["x".into(), "y".into()],
                },
                vec!["x".to_string(), "y".to_string()],
                if suite == Suite::Ex66Conjecture { 1 } else { 2 },
                if suite == Suite::Ex66Conjecture { 3 } else { 2 },
            ),
            Suite::Lemma61 | Suite::Rem65 => (
                RingSpec::GradedPoly {
                    base: "Q".into(),
                    vars: vec!["x".into()],
                },
                vec!["x".to_string()],
                1,
                2,
            ),
            Suite::DoldKan | Suite::CrossEffects | Suite::Lambda | Suite::All => {
                (RingSpec::Int, vec!["2".to_string()], 2, 2)
            }
        };
        let mut cfg = ScenarioConfig {
            suite,
            ring,
            ideal,
            rank,
            n,
            window: 0,
            seed,
            out: None,
        };
        cfg.window = cfg.default_window();
        cfg
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_scenario_parses_with_defaults() {
        let cfg = scenario_from_str(
            r#"{"suite":"thm32","ring":{"kind":"int"},"ideal":["2"],"rank":2,"n":2}"#,
        )
        .unwrap();
        assert_eq!(cfg.suite, Suite::Thm32);
        assert_eq!(cfg.seed, 0);
        assert_eq!(cfg.window, 4);
        let ring = cfg.build_ring().unwrap();
        assert_eq!(ring, Ring::Int);
        assert_eq!(cfg.ideal_scalars(&ring).unwrap(), vec![Ring::Int.from_i64(2)]);
    }

    #[test]
    fn missing_second_generator_is_a_validation_error() {
        let err = scenario_from_str(
            r#"{"suite":"thm64","ring":{"kind":"graded_poly","base":"Q","vars":["x","y"]},"ideal":["x"]}"#,
        )
        .unwrap_err();
        match err {
            HarnessError::Validation { message } => {
                assert!(message.contains("second ideal generator"), "{message}");
            }
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_json_is_a_parse_error_with_position() {
        let err = scenario_from_str("{\"suite\": \"thm32\",\n  oops}").unwrap_err();
        match err {
            HarnessError::Parse { message } => {
                assert!(message.contains("line"), "{message}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_suite_is_rejected() {
        let err = scenario_from_str(r#"{"suite":"thm99"}"#).unwrap_err();
        assert!(matches!(err, HarnessError::Validation { .. }));
    }

    #[test]
    fn graded_ring_builds_and_checks_generators() {
        let cfg = scenario_from_str(
            r#"{"suite":"thm64","ring":{"kind":"graded_poly","base":"Q","vars":["x","y"]},"ideal":["x","y"],"rank":2,"n":2,"window":4,"seed":7}"#,
        )
        .unwrap();
        let ring = cfg.build_ring().unwrap();
        assert!(ring.is_graded());
        assert_eq!(cfg.seed, 7);
        let gens = cfg.ideal_scalars(&ring).unwrap();
        assert_eq!(gens, vec![ring.var(0), ring.var(1)]);
        // a non-variable generator is named in the error
        let bad = ScenarioConfig {
            ideal: vec!["z".into()],
            ..cfg
        };
        let err = bad.ideal_scalars(&ring).unwrap_err();
        assert!(matches!(err, HarnessError::Validation { .. }));
    }

    #[test]
    fn every_canonical_config_validates() {
        for &s in Suite::catalogue() {
            let cfg = ScenarioConfig::canonical(s, 0);
            cfg.check_suite_requirements().unwrap();
            if !cfg.ideal.is_empty() {
                let ring = cfg.build_ring().unwrap();
                cfg.ideal_scalars(&ring).unwrap();
            }
        }
    }

    #[test]
    fn f2_base_parses() {
        let spec = RingSpec::GradedPoly {
            base: "F2".into(),
            vars: vec!["x".into()],
        };
        let ring = spec.build().unwrap();
        match ring {
            Ring::Poly(p) => assert_eq!(p.base, BaseField::Fp(2)),
            other => panic!("expected graded ring, got {other:?}"),
        }
    }
}
