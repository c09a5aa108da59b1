//! Decides which of the four Galois cases holds for `ψ'' = −(R/2)ψ` and
//! turns the answer into a minimality verdict for the Kummer groupoid.
//!
//! Case searches follow Kovacic's recipes for the reducible and imprimitive
//! cases. The finite case is only screened by necessary conditions, so any
//! instance that passes the screen is reported as inconclusive.

mod ansatz;
pub mod case1;
pub mod case2;
pub mod ext;
pub mod local;
pub mod order_one;
pub mod registry;
pub mod subgroupoid;

use std::fmt;

use thiserror::Error;

pub use case1::case1_search;
pub use case2::case2_search;
pub use ext::ExtRatFunc;
pub use local::{potential, LocalExponentData};
pub use order_one::{first_contradiction, order_one_relaxation, OrderOneCheck};
pub use registry::{case3_screen, CaseRegistry, CaseSearch, Screen};
pub use subgroupoid::{affine_sigma_residual, affine_structure_residual, containment_residual, schwarzian_reduction};

use crate::algebra::field::Q;
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::AlgebraError;
use crate::jet::DiffExpr;
use crate::ode::OdeError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("R = 0 has no poles or exponents to compute")]
    ZeroPotential,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Ode(#[from] OdeError),
    #[error("certificate failed exact re-verification: {0}")]
    CertificateRejected(String),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    /// `u ∈ ℚ̄(λ)` with `u' + u² + R/2 = 0`.
    RiccatiSolution(ExtRatFunc),
    /// `u² + p u + q`, irreducible, whose roots solve the Riccati equation.
    MinimalPolynomial { p: ExtRatFunc, q: ExtRatFunc },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::RiccatiSolution(_) => "riccati_solution",
            Certificate::MinimalPolynomial { .. } => "minimal_polynomial",
        }
    }

    pub fn value(&self) -> String {
        match self {
            Certificate::RiccatiSolution(u) => u.to_string(),
            Certificate::MinimalPolynomial { p, q } => format!("u^2 + ({p})*u + ({q})"),
        }
    }

    /// Exact substitution check against `R`.
    pub fn verify(&self, big_r: &RatFunc) -> bool {
        let half_r = ExtRatFunc::rational(big_r.scale(&Q::new(1.into(), 2.into())));
        match self {
            Certificate::RiccatiSolution(u) => u.derivative().add(&u.mul(u)).add(&half_r).is_zero(),
            Certificate::MinimalPolynomial { p, q } => {
                // eliminating u: remainder A·u + B of the derivative of u² + pu + q
                let r = ExtRatFunc::rational(big_r.clone());
                let a = p.mul(p).neg().add(&q.add(q)).sub(&r).add(&p.derivative());
                let b = q.derivative().sub(&p.mul(q)).sub(&p.mul(&half_r));
                a.is_zero() && b.is_zero()
            }
        }
    }
}

/// Result of one registered search.
#[derive(Clone, Debug, PartialEq)]
pub enum SearchOutcome {
    Certified(Certificate),
    /// The candidate set was exhausted; the case cannot hold.
    Exhausted(String),
    /// Neither certified nor excluded.
    Undecided(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseLabel {
    Case1,
    Case2,
    Case3,
    Case4,
    Inconclusive,
    UnsupportedField,
}

impl CaseLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseLabel::Case1 => "Case1",
            CaseLabel::Case2 => "Case2",
            CaseLabel::Case3 => "Case3",
            CaseLabel::Case4 => "Case4",
            CaseLabel::Inconclusive => "Inconclusive",
            CaseLabel::UnsupportedField => "UnsupportedField",
        }
    }

    pub fn galois_tag(&self) -> Option<GaloisTag> {
        match self {
            CaseLabel::Case1 => Some(GaloisTag::Triangular),
            CaseLabel::Case2 => Some(GaloisTag::Dihedral),
            CaseLabel::Case3 => Some(GaloisTag::FiniteCrystallographic),
            CaseLabel::Case4 => Some(GaloisTag::Sl2),
            _ => None,
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaloisTag {
    Triangular,
    Dihedral,
    FiniteCrystallographic,
    Sl2,
}

impl GaloisTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            GaloisTag::Triangular => "triangular",
            GaloisTag::Dihedral => "dihedral",
            GaloisTag::FiniteCrystallographic => "finite-crystallographic",
            GaloisTag::Sl2 => "SL2/PSL2",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseVerdict {
    pub label: CaseLabel,
    pub galois_tag: Option<GaloisTag>,
    pub certificate: Option<Certificate>,
    /// `(search name, outcome summary)` for every search that ran.
    pub trail: Vec<(String, String)>,
}

/// Runs the standard registry.
pub fn classify(big_r: &RatFunc) -> Result<CaseVerdict, EngineError> {
    classify_with(&CaseRegistry::standard(), big_r)
}

/// Runs the searches in order. A certificate ends the run; the run is
/// conclusive only when every earlier search exhausted its candidates.
pub fn classify_with(registry: &CaseRegistry, big_r: &RatFunc) -> Result<CaseVerdict, EngineError> {
    let mut trail = Vec::new();
    let mut undecided = false;
    for search in registry.iter() {
        match search.run(big_r)? {
            SearchOutcome::Certified(cert) => {
                if !cert.verify(big_r) {
                    return Err(EngineError::CertificateRejected(cert.value()));
                }
                trail.push((search.name().to_string(), format!("certified {}", cert.kind())));
                let label = match cert {
                    Certificate::RiccatiSolution(_) => CaseLabel::Case1,
                    _ if undecided => CaseLabel::Inconclusive,
                    _ => search.label(),
                };
                return Ok(CaseVerdict { label, galois_tag: label.galois_tag(), certificate: Some(cert), trail });
            }
            SearchOutcome::Exhausted(why) => trail.push((search.name().to_string(), format!("exhausted: {why}"))),
            SearchOutcome::Undecided(why) => {
                undecided = true;
                trail.push((search.name().to_string(), format!("undecided: {why}")));
            }
        }
    }
    let label = if undecided { CaseLabel::Inconclusive } else { CaseLabel::Case4 };
    Ok(CaseVerdict { label, galois_tag: label.galois_tag(), certificate: None, trail })
}

/// The five equivalent statements; all equal by construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Equivalences {
    pub riccati_no_algebraic_solution: bool,
    pub kummer_groupoid_minimal: bool,
    pub galois_is_sl2: bool,
    pub schwarzian_strongly_minimal: bool,
    pub no_liouvillian_solutions: bool,
}

impl Equivalences {
    pub fn all(value: bool) -> Self {
        Equivalences {
            riccati_no_algebraic_solution: value,
            kummer_groupoid_minimal: value,
            galois_is_sl2: value,
            schwarzian_strongly_minimal: value,
            no_liouvillian_solutions: value,
        }
    }

    pub fn as_array(&self) -> [bool; 5] {
        [
            self.riccati_no_algebraic_solution,
            self.kummer_groupoid_minimal,
            self.galois_is_sl2,
            self.schwarzian_strongly_minimal,
            self.no_liouvillian_solutions,
        ]
    }
}

/// Order-2 sub-groupoid of the Kummer groupoid from a rational `u`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubGroupoid {
    pub u: RatFunc,
    /// `2u(φ)φ' − 2u(λ) − φ''/φ'`.
    pub residual: DiffExpr,
    /// `τ''/τ' + 2u(λ)`.
    pub affine: DiffExpr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Minimality {
    Minimal,
    NotMinimal,
    Inconclusive,
}

impl Minimality {
    pub fn as_str(&self) -> &'static str {
        match self {
            Minimality::Minimal => "Minimal",
            Minimality::NotMinimal => "NotMinimal",
            Minimality::Inconclusive => "Inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinimalityReport {
    pub r: RatFunc,
    pub case: CaseVerdict,
    /// `None` when nothing was decided.
    pub equivalences: Option<Equivalences>,
    pub subgroupoid: Option<SubGroupoid>,
}

impl MinimalityReport {
    pub fn minimality(&self) -> Minimality {
        match self.equivalences {
            Some(e) if e.kummer_groupoid_minimal => Minimality::Minimal,
            Some(_) => Minimality::NotMinimal,
            None => Minimality::Inconclusive,
        }
    }

    pub fn is_inconclusive(&self) -> bool {
        self.case.label == CaseLabel::Inconclusive
    }
}

pub fn verdict(big_r: &RatFunc) -> Result<MinimalityReport, EngineError> {
    verdict_with(&CaseRegistry::standard(), big_r)
}

pub fn verdict_with(registry: &CaseRegistry, big_r: &RatFunc) -> Result<MinimalityReport, EngineError> {
    let case = classify_with(registry, big_r)?;
    let equivalences = match (case.label, &case.certificate) {
        (CaseLabel::Case4, _) => Some(Equivalences::all(true)),
        // any certificate exhibits Liouvillian solutions
        (_, Some(_)) => Some(Equivalences::all(false)),
        _ => None,
    };
    let mut subgroupoid = None;
    if let Some(Certificate::RiccatiSolution(u)) = &case.certificate {
        if !subgroupoid::reduces_schwarzian(u, big_r) {
            return Err(EngineError::CertificateRejected(format!("S(τ) ≠ R for τ''/τ' = −2({u})")));
        }
        if let Some(u) = u.as_rational() {
            subgroupoid = Some(SubGroupoid {
                u: u.clone(),
                residual: affine_sigma_residual(u),
                affine: affine_structure_residual(u),
            });
        }
    }
    Ok(MinimalityReport { r: big_r.clone(), case, equivalences, subgroupoid })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_rational_function as parse;

    fn report(src: &str) -> MinimalityReport {
        verdict(&parse(src).unwrap()).unwrap()
    }

    #[test]
    fn verdict_examples() {
        let zero = report("0");
        assert_eq!(zero.case.label, CaseLabel::Case1);
        assert_eq!(zero.minimality(), Minimality::NotMinimal);
        assert_eq!(zero.case.certificate.as_ref().unwrap().value(), "0");

        let harm = report("-2*(1+l^2)");
        assert_eq!(harm.case.certificate.as_ref().unwrap().value(), "l");
        assert_eq!(harm.subgroupoid.as_ref().unwrap().u, RatFunc::x());

        let airy = report("l");
        assert_eq!(airy.case.label, CaseLabel::Case4);
        assert_eq!(airy.case.galois_tag, Some(GaloisTag::Sl2));
        assert_eq!(airy.equivalences, Some(Equivalences::all(true)));
        assert!(airy.subgroupoid.is_none());
    }

    #[test]
    fn dihedral_instance() {
        let rep = report("-2/l + 3/(8*l^2)");
        assert_eq!(rep.case.label, CaseLabel::Case2);
        assert_eq!(rep.case.galois_tag, Some(GaloisTag::Dihedral));
        assert_eq!(rep.minimality(), Minimality::NotMinimal);
    }

    #[test]
    fn screen_leaves_inconclusive() {
        // finite-monodromy example: r = −3/(16λ²) − 2/(9(λ−1)²) + 3/(16λ(λ−1))
        let rep = report("3/(8*l^2) + 4/(9*(l-1)^2) - 3/(8*l*(l-1))");
        assert_eq!(rep.case.label, CaseLabel::Inconclusive);
        assert!(rep.case.certificate.is_none());
        assert!(rep.equivalences.is_none());
        assert_eq!(rep.minimality(), Minimality::Inconclusive);
    }

    #[test]
    fn unsupported_field_propagates() {
        assert!(matches!(verdict(&parse("1/(l^3-2)^2").unwrap()), Err(EngineError::UnsupportedField(_))));
    }

    #[test]
    fn rejects_false_certificates() {
        let r = parse("l").unwrap();
        assert!(!Certificate::RiccatiSolution(ExtRatFunc::rational(RatFunc::x())).verify(&r));
    }
}
