//! Case searches behind a common trait, registered by name and run in
//! registration order.

use super::case1::case1_search;
use super::case2::case2_search;
use super::local::potential;
use super::{CaseLabel, EngineError, SearchOutcome};
use crate::algebra::factor::pole_orders;
use crate::algebra::ratfunc::RatFunc;

pub trait CaseSearch: Send + Sync {
    fn name(&self) -> &'static str;
    /// The case a certificate from this search establishes.
    fn label(&self) -> CaseLabel;
    fn run(&self, big_r: &RatFunc) -> Result<SearchOutcome, EngineError>;
}

pub struct Case1Search;
pub struct Case2Search;
pub struct Case3Screen;

impl CaseSearch for Case1Search {
    fn name(&self) -> &'static str {
        "case1"
    }
    fn label(&self) -> CaseLabel {
        CaseLabel::Case1
    }
    fn run(&self, big_r: &RatFunc) -> Result<SearchOutcome, EngineError> {
        case1_search(big_r)
    }
}

impl CaseSearch for Case2Search {
    fn name(&self) -> &'static str {
        "case2"
    }
    fn label(&self) -> CaseLabel {
        CaseLabel::Case2
    }
    fn run(&self, big_r: &RatFunc) -> Result<SearchOutcome, EngineError> {
        case2_search(big_r)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Screen {
    Possible,
    Impossible,
}

/// Necessary conditions for finite monodromy: poles of `r` of order at most
/// 2 and order at least 2 at infinity.
pub fn case3_screen(big_r: &RatFunc) -> Screen {
    let r = potential(big_r);
    if r.is_zero() {
        return Screen::Possible;
    }
    let poles_ok = pole_orders(r.den()).into_iter().all(|o| o <= 2);
    let inf_ok = r.order_at_infinity().map_or(true, |o| o >= 2);
    if poles_ok && inf_ok {
        Screen::Possible
    } else {
        Screen::Impossible
    }
}

impl CaseSearch for Case3Screen {
    fn name(&self) -> &'static str {
        "case3-screen"
    }
    fn label(&self) -> CaseLabel {
        CaseLabel::Case3
    }
    fn run(&self, big_r: &RatFunc) -> Result<SearchOutcome, EngineError> {
        Ok(match case3_screen(big_r) {
            Screen::Impossible => SearchOutcome::Exhausted("pole orders or the order at infinity exclude finite groups".into()),
            Screen::Possible => {
                SearchOutcome::Undecided("finite groups pass the necessary conditions and are not recognized further".into())
            }
        })
    }
}

pub struct CaseRegistry {
    searches: Vec<Box<dyn CaseSearch>>,
}

impl Default for CaseRegistry {
    fn default() -> Self {
        Self::standard()
    }
}

impl CaseRegistry {
    pub fn empty() -> Self {
        CaseRegistry { searches: Vec::new() }
    }

    /// `case1`, `case2`, `case3-screen`.
    pub fn standard() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(Case1Search));
        r.register(Box::new(Case2Search));
        r.register(Box::new(Case3Screen));
        r
    }

    /// Adds a search, replacing any search with the same name in place.
    pub fn register(&mut self, s: Box<dyn CaseSearch>) {
        match self.searches.iter().position(|e| e.name() == s.name()) {
            Some(i) => self.searches[i] = s,
            None => self.searches.push(s),
        }
    }

    pub fn get(&self, name: &str) -> Option<&dyn CaseSearch> {
        self.searches.iter().find(|s| s.name() == name).map(|b| b.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.searches.iter().map(|s| s.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn CaseSearch> {
        self.searches.iter().map(|b| b.as_ref())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_rational_function as parse;

    #[test]
    fn screen_examples() {
        assert_eq!(case3_screen(&parse("l").unwrap()), Screen::Impossible);
        assert_eq!(case3_screen(&parse("1/(2*l^2)").unwrap()), Screen::Possible);
        assert_eq!(case3_screen(&parse("1/l^3").unwrap()), Screen::Impossible);
    }

    #[test]
    fn registry_order_and_lookup() {
        let reg = CaseRegistry::standard();
        assert_eq!(reg.names(), vec!["case1", "case2", "case3-screen"]);
        assert_eq!(reg.get("case2").unwrap().label(), CaseLabel::Case2);
        assert!(reg.get("case5").is_none());
    }
}
