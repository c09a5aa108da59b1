//! The JSON report emitted by `verdict`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use kummer_core::engine::{Equivalences, MinimalityReport};

pub const SCHEMA: &str = "kummer-kit/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub input: String,
    #[serde(rename = "R")]
    pub r: String,
    pub case: String,
    pub galois: Option<String>,
    pub certificate: Option<CertificateJson>,
    /// `None` when the engine could not decide.
    pub equivalences: Option<EquivalencesJson>,
    pub verify: Option<VerifyJson>,
    pub inconclusive: bool,
    pub timings_ms: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub kind: String,
    pub value: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalencesJson {
    pub riccati: bool,
    pub groupoid: bool,
    pub galois_sl2: bool,
    pub strong_minimality: bool,
    pub liouvillian: bool,
}

impl From<Equivalences> for EquivalencesJson {
    fn from(e: Equivalences) -> Self {
        EquivalencesJson {
            riccati: e.riccati_no_algebraic_solution,
            groupoid: e.kummer_groupoid_minimal,
            galois_sl2: e.galois_is_sl2,
            strong_minimality: e.schwarzian_strongly_minimal,
            liouvillian: e.no_liouvillian_solutions,
        }
    }
}

impl EquivalencesJson {
    pub fn all_equal(&self) -> bool {
        let v = [self.riccati, self.groupoid, self.galois_sl2, self.strong_minimality, self.liouvillian];
        v.iter().all(|b| *b == v[0])
    }
}

/// Residuals of the numeric checks; `None` for checks that were not run.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VerifyJson {
    pub projective_residual: Option<f64>,
    pub closure_residual: Option<f64>,
}

impl Report {
    pub fn from_engine(input: &str, rep: &MinimalityReport) -> Self {
        Report {
            schema: SCHEMA.into(),
            input: input.into(),
            r: rep.r.to_string(),
            case: rep.case.label.as_str().into(),
            galois: rep.case.galois_tag.map(|g| g.as_str().into()),
            certificate: rep.case.certificate.as_ref().map(|c| CertificateJson { kind: c.kind().into(), value: c.value() }),
            equivalences: rep.equivalences.map(Into::into),
            verify: None,
            inconclusive: rep.is_inconclusive(),
            timings_ms: BTreeMap::new(),
        }
    }

    pub fn minimality(&self) -> &'static str {
        match self.equivalences {
            Some(e) if e.groupoid => "Minimal",
            Some(_) => "NotMinimal",
            None => "Inconclusive",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use kummer_core::algebra::parse_rational_function;
    use kummer_core::engine::verdict;

    fn report(src: &str) -> Report {
        Report::from_engine(src, &verdict(&parse_rational_function(src).unwrap()).unwrap())
    }

    #[test]
    fn json_round_trip() {
        let mut rep = report("-2*(1+l^2)");
        rep.verify = Some(VerifyJson { projective_residual: Some(1.234_567_890_123e-9), closure_residual: None });
        rep.timings_ms.insert("classify".into(), 0.1 + 0.2);
        let text = serde_json::to_string(&rep).unwrap();
        assert_eq!(serde_json::from_str::<Report>(&text).unwrap(), rep);
    }

    #[test]
    fn field_names() {
        let v: serde_json::Value = serde_json::to_value(report("l")).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        for k in ["schema", "input", "R", "case", "galois", "certificate", "equivalences", "verify", "inconclusive", "timings_ms"] {
            assert!(keys.contains(&k), "{k}");
        }
        assert_eq!(v["schema"], SCHEMA);
        let eq = v["equivalences"].as_object().unwrap();
        assert_eq!(eq.len(), 5);
        assert!(eq.values().all(|b| b == true));
    }

    #[test]
    fn equivalences_agree() {
        for src in ["0", "l", "1/(2*l^2)", "-2/l + 3/(8*l^2)"] {
            let rep = report(src);
            assert!(rep.equivalences.unwrap().all_equal());
        }
    }
}
