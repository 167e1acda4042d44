//! Builds a [`Report`] for each subcommand.

use std::fmt;

use deformed::bicyclic::{self, BicyclicElement};
use deformed::maps::DEFAULT_ENUMERATION_CAP;
use deformed::oracle::{self, Verdict};
use deformed::table::{CayleyTable, FiniteSemigroup};
use deformed::verify::{self, Bounds, SuiteId, DEFAULT_TABLE_CAP};
use deformed::{
    isn, partitions, tn, Error, Family, MapElement, PartialInjection, Permutation, Transformation, Witness,
};

use crate::report::{ChainRow, ClassRow, CountRow, IsoOutcome, Payload, Report};

/// How a failed command should exit.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments, literals or files (exit 2).
    Usage(String),
    /// The inputs violate the classification criterion (exit 1).
    Mismatch(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Mismatch(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Mismatch(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::RankMismatch(..)
            | Error::TypeMismatch(..)
            | Error::NonAssociative(..)
            | Error::InconsistentMultiset(_)
            | Error::InconsistentCardinalities(_) => Failure::Mismatch(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

pub type Outcome = Result<Report, Failure>;

/// Family argument, including the bicyclic monoid `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyArg {
    Finite(Family),
    Bicyclic,
}

impl std::str::FromStr for FamilyArg {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if s.eq_ignore_ascii_case("B") {
            Ok(FamilyArg::Bicyclic)
        } else {
            s.parse().map(FamilyArg::Finite)
        }
    }
}

/// Enumeration limits after applying `--cap`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub table: usize,
    pub elements: usize,
}

impl Caps {
    pub fn new(cap: Option<usize>) -> Self {
        Caps {
            table: cap.unwrap_or(DEFAULT_TABLE_CAP),
            elements: cap.map_or(DEFAULT_ENUMERATION_CAP, |c| c.max(DEFAULT_ENUMERATION_CAP)),
        }
    }

    fn table_limit(&self, n: usize) -> Result<(), Failure> {
        if n > self.table {
            return Err(Error::CapExceeded { n, cap: self.table }.into());
        }
        Ok(())
    }
}

fn parse_element<E: MapElement>(n: usize, literal: &str) -> Result<E, Failure> {
    let e: E = literal.parse()?;
    if e.degree() != n {
        return Err(Failure::Usage(format!(
            "literal {literal} has degree {}, expected n = {n}",
            e.degree()
        )));
    }
    Ok(e)
}

fn report(
    command: &str,
    family: Option<Family>,
    n: Option<usize>,
    sandwich: Option<String>,
    passed: bool,
    result: Payload,
) -> Report {
    Report {
        command: command.to_string(),
        family,
        n,
        sandwich,
        passed,
        result,
        elapsed_ms: None,
    }
}

pub fn idempotents(family: FamilyArg, args: &[String], chain: u64, caps: Caps) -> Outcome {
    match (family, args) {
        (FamilyArg::Bicyclic, [literal]) => bicyclic_chain(literal, chain),
        (FamilyArg::Finite(f), [n, literal]) => {
            let n: usize = n.parse().map_err(|_| Failure::Usage(format!("invalid degree {n:?}")))?;
            match f {
                Family::Transformations => finite_idempotents::<Transformation>(n, literal, caps, |_| None),
                Family::PartialInjections => finite_idempotents::<PartialInjection>(n, literal, caps, |a| {
                    u64::try_from(isn::idempotent_count_formula(a)).ok()
                }),
                Family::Permutations => finite_idempotents::<Permutation>(n, literal, caps, |_| Some(1)),
            }
        }
        (FamilyArg::Bicyclic, _) => Err(Failure::Usage("usage: idempotents B <literal> [--chain J]".into())),
        (FamilyArg::Finite(_), _) => Err(Failure::Usage("usage: idempotents <T|IS|S> <n> <literal>".into())),
    }
}

fn finite_idempotents<E: MapElement>(
    n: usize,
    literal: &str,
    caps: Caps,
    formula: impl Fn(&E) -> Option<u64>,
) -> Outcome {
    caps.table_limit(n)?;
    let a: E = parse_element(n, literal)?;
    let s = FiniteSemigroup::<E>::new(n, caps.elements)?;
    let idx = s.index_of(&a).expect("every element is enumerated");
    let found = s.deformed_idempotents(idx);
    let formula = formula(&a);
    let brute_force = found.len() as u64;
    let passed = formula.is_none_or(|f| f == brute_force);
    let idempotents = found.into_iter().map(|i| s.element(i).to_string()).collect();
    Ok(report(
        "idempotents",
        Some(E::FAMILY),
        Some(n),
        Some(a.to_string()),
        passed,
        Payload::Idempotents {
            idempotents,
            brute_force,
            formula,
        },
    ))
}

fn bicyclic_chain(literal: &str, length: u64) -> Outcome {
    let alpha: BicyclicElement = literal.parse()?;
    let chain = (0..length)
        .map(|i| {
            let e = bicyclic::epsilon(alpha, i)?;
            Ok(ChainRow {
                index: i,
                element: e.to_string(),
                idempotent: bicyclic::is_deformed_idempotent(e, alpha)?,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let passed = chain.iter().all(|r| r.idempotent);
    Ok(report(
        "idempotents",
        None,
        None,
        Some(alpha.to_string()),
        passed,
        Payload::Chain { chain },
    ))
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn classify(family: FamilyArg, n: usize, caps: Caps) -> Outcome {
    let (family, classes, expected) = match family {
        FamilyArg::Finite(Family::PartialInjections) => {
            let rows = isn::classify(n, caps.elements)?
                .into_iter()
                .map(|c| {
                    let r = c.rank as u64;
                    let formula = binomial(n as u64, r).pow(2) * (1..=r).product::<u64>();
                    ClassRow {
                        invariant: format!("rank {}", c.rank),
                        representative: c.representative.to_string(),
                        members: c.members as u64,
                        formula,
                    }
                })
                .collect::<Vec<_>>();
            (Family::PartialInjections, rows, isn::isn_class_count(n) as u64)
        }
        FamilyArg::Finite(Family::Transformations) => {
            let rows = tn::classify(n, caps.elements)?
                .into_iter()
                .map(|c| ClassRow {
                    invariant: format!("type {}", c.type_vector),
                    representative: c.representative.to_string(),
                    members: c.members,
                    formula: c.formula_count,
                })
                .collect::<Vec<_>>();
            let expected = u64::try_from(partitions::partition_count(n)).map_err(|_| Error::Overflow)?;
            (Family::Transformations, rows, expected)
        }
        _ => return Err(Failure::Usage("classify supports the families T and IS".into())),
    };
    let passed = classes.len() as u64 == expected && classes.iter().all(|c| c.members == c.formula);
    Ok(report(
        "classify",
        Some(family),
        Some(n),
        None,
        passed,
        Payload::Classes {
            classes,
            expected_classes: expected,
        },
    ))
}

pub fn witness(family: FamilyArg, n: usize, a: &str, b: &str, check: bool, caps: Caps) -> Outcome {
    match family {
        FamilyArg::Finite(Family::PartialInjections) => {
            finite_witness::<PartialInjection>(n, a, b, check, caps, isn::isn_witness)
        }
        FamilyArg::Finite(Family::Transformations) => {
            finite_witness::<Transformation>(n, a, b, check, caps, tn::tn_witness)
        }
        _ => Err(Failure::Usage("witness supports the families T and IS".into())),
    }
}

fn finite_witness<E: MapElement + serde::Serialize>(
    n: usize,
    a: &str,
    b: &str,
    check: bool,
    caps: Caps,
    build: fn(&E, &E) -> deformed::Result<Witness<E>>,
) -> Outcome {
    let alpha: E = parse_element(n, a)?;
    let beta: E = parse_element(n, b)?;
    let w = build(&alpha, &beta)?;
    let sandwich_identity = w.is_valid();
    let homomorphism = if check {
        caps.table_limit(n)?;
        let s = FiniteSemigroup::<E>::new(n, caps.elements)?;
        Some(w.verify_isomorphism(&s)?.is_none())
    } else {
        None
    };
    let passed = sandwich_identity && homomorphism != Some(false);
    Ok(report(
        "witness",
        Some(E::FAMILY),
        Some(n),
        Some(alpha.to_string()),
        passed,
        Payload::Witness {
            alpha: alpha.to_string(),
            beta: beta.to_string(),
            tau: w.tau.to_string(),
            pi: w.pi.to_string(),
            sandwich_identity,
            homomorphism,
        },
    ))
}

pub fn verify(suite: SuiteId, bounds: &Bounds) -> Outcome {
    let checks = verify::run(suite, bounds)?;
    let passed = checks.iter().all(|c| c.passed);
    Ok(report(
        "verify",
        None,
        bounds.n,
        None,
        passed,
        Payload::Checks { checks },
    ))
}

pub fn count(n: usize) -> Outcome {
    if n > tn::MAX_COUNT_DEGREE {
        return Err(Error::CapExceeded {
            n,
            cap: tn::MAX_COUNT_DEGREE,
        }
        .into());
    }
    let rows = tn::enumerate_types(n)?
        .into_iter()
        .map(|t| {
            let partition = t.parts().iter().map(usize::to_string).collect::<Vec<_>>().join("+");
            Ok(CountRow {
                partition,
                count: tn::count_of_type(&t)?,
                type_vector: t.to_string(),
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let total = rows
        .iter()
        .try_fold(0u64, |acc, r| acc.checked_add(r.count))
        .ok_or(Error::Overflow)?;
    let expected_total = (n as u64).pow(n as u32);
    let partition_count = partitions::partition_count(n) as u64;
    let classes = rows.len() as u64;
    Ok(report(
        "count",
        Some(Family::Transformations),
        Some(n),
        None,
        total == expected_total && classes == partition_count,
        Payload::Counts {
            rows,
            total,
            expected_total,
            partition_count,
            classes,
        },
    ))
}

/// The deformed Cayley table in the text table format.
pub fn table(family: FamilyArg, n: usize, a: &str, caps: Caps) -> Result<String, Failure> {
    fn build<E: MapElement>(n: usize, a: &str, caps: Caps) -> Result<CayleyTable, Failure> {
        caps.table_limit(n)?;
        let alpha: E = parse_element(n, a)?;
        let s = FiniteSemigroup::<E>::new(n, caps.elements)?;
        Ok(s.deformed_table(s.index_of(&alpha).expect("every element is enumerated"))?)
    }
    let t = match family {
        FamilyArg::Finite(Family::Transformations) => build::<Transformation>(n, a, caps)?,
        FamilyArg::Finite(Family::PartialInjections) => build::<PartialInjection>(n, a, caps)?,
        FamilyArg::Finite(Family::Permutations) => build::<Permutation>(n, a, caps)?,
        FamilyArg::Bicyclic => return Err(Failure::Usage("the bicyclic monoid has no finite table".into())),
    };
    Ok(t.to_text())
}

pub fn iso(left: &CayleyTable, right: &CayleyTable, anti: bool, budget: u64) -> Report {
    let verdict = if anti {
        oracle::find_isomorphism_with_budget(left, &right.transpose(), budget)
    } else {
        oracle::find_isomorphism_with_budget(left, right, budget)
    };
    let (outcome, pairs, nodes) = match verdict {
        Verdict::Isomorphic { mapping } => (IsoOutcome::Isomorphic, mapping.into_iter().enumerate().collect(), None),
        Verdict::NotIsomorphic => (IsoOutcome::NotIsomorphic, Vec::new(), None),
        Verdict::BudgetExceeded { nodes } => (IsoOutcome::BudgetExceeded, Vec::new(), Some(nodes)),
    };
    report(
        "iso",
        None,
        None,
        None,
        outcome != IsoOutcome::BudgetExceeded,
        Payload::Isomorphism {
            outcome,
            anti,
            pairs,
            nodes,
        },
    )
}
