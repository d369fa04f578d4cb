use nearsub_core::fixtures;
use nearsub_core::rational::Rational;
use nearsub_core::WeightSpec;

use crate::specfile::SpecFile;

pub const NEAR_SUBNORMAL_NOTE: &str = "near subnormal, not subnormal (unverified here)";
pub const PROBLEM_160_NOTE: &str = "answer to Hilbert space problem 160";

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub spec: WeightSpec,
    pub notes: String,
}

impl Fixture {
    pub fn file_name(&self) -> String {
        format!("{}.json", self.name)
    }

    pub fn spec_file(&self) -> SpecFile {
        SpecFile::from_spec(&self.spec, Some(self.name), Some(&self.notes))
    }
}

pub fn example1() -> Fixture {
    Fixture {
        name: "ex1",
        spec: fixtures::example1(),
        notes: format!("{NEAR_SUBNORMAL_NOTE}; left tail stores the modulus -1/n of beta_n = 1/n"),
    }
}

pub fn example2() -> Fixture {
    Fixture { name: "ex2", spec: fixtures::example2(), notes: NEAR_SUBNORMAL_NOTE.to_string() }
}

pub fn example3(lambda: Rational, mu: Rational) -> Fixture {
    let notes = format!("{PROBLEM_160_NOTE}; lambda = {lambda}, mu = {mu}");
    Fixture { name: "ex3", spec: fixtures::example3_with(lambda, mu), notes }
}

pub fn theorem4() -> Fixture {
    Fixture {
        name: "thm4",
        spec: fixtures::theorem4(),
        notes: format!("{PROBLEM_160_NOTE}; pattern 1 < 2 = 2 < 3 at j0 = 0"),
    }
}
