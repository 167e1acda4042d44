//! The report value shared by every output format.

use std::fmt::Write as _;
use std::io;

use deformed::verify::CheckOutcome;
use deformed::Family;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Outcome of one command. Text, JSON and CSV are all rendered from this.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sandwich: Option<String>,
    pub passed: bool,
    pub result: Payload,
    /// Wall-clock time; only present with `--timing`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Idempotents {
        idempotents: Vec<String>,
        brute_force: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        formula: Option<u64>,
    },
    Chain {
        chain: Vec<ChainRow>,
    },
    Classes {
        classes: Vec<ClassRow>,
        expected_classes: u64,
    },
    Witness {
        alpha: String,
        beta: String,
        tau: String,
        pi: String,
        sandwich_identity: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        homomorphism: Option<bool>,
    },
    Checks {
        checks: Vec<CheckOutcome>,
    },
    Counts {
        rows: Vec<CountRow>,
        total: u64,
        expected_total: u64,
        partition_count: u64,
        classes: u64,
    },
    Isomorphism {
        outcome: IsoOutcome,
        anti: bool,
        pairs: Vec<(usize, usize)>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        nodes: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoOutcome {
    Isomorphic,
    NotIsomorphic,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainRow {
    pub index: u64,
    pub element: String,
    pub idempotent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRow {
    /// Rank (IS) or type vector (T).
    pub invariant: String,
    pub representative: String,
    pub members: u64,
    pub formula: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub partition: String,
    pub type_vector: String,
    pub count: u64,
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

impl Report {
    pub fn render(&self, format: Format) -> io::Result<String> {
        match format {
            Format::Text => Ok(self.to_text()),
            Format::Json => Ok(serde_json::to_string_pretty(self)? + "\n"),
            Format::Csv => self.to_csv(),
        }
    }

    fn header(&self) -> String {
        let mut h = self.command.clone();
        if let Some(f) = self.family {
            let _ = write!(h, " {f}");
        }
        if let Some(n) = self.n {
            let _ = write!(h, " n={n}");
        }
        if let Some(a) = &self.sandwich {
            let _ = write!(h, " a={a}");
        }
        h
    }

    pub fn to_text(&self) -> String {
        let mut out = self.header();
        out.push('\n');
        let w = &mut out;
        match &self.result {
            Payload::Idempotents {
                idempotents,
                brute_force,
                formula,
            } => {
                for e in idempotents {
                    let _ = writeln!(w, "  {e}");
                }
                let _ = writeln!(w, "brute force: {brute_force} idempotents");
                if let Some(f) = formula {
                    let _ = writeln!(w, "formula: {f}");
                }
            }
            Payload::Chain { chain } => {
                for row in chain {
                    let _ = writeln!(w, "  ε_{} = {} ({})", row.index, row.element, verdict(row.idempotent));
                }
            }
            Payload::Classes {
                classes,
                expected_classes,
            } => {
                for c in classes {
                    let _ = writeln!(
                        w,
                        "  {}: {} elements (formula {}), representative {}",
                        c.invariant, c.members, c.formula, c.representative
                    );
                }
                let _ = writeln!(w, "{} classes (expected {expected_classes})", classes.len());
            }
            Payload::Witness {
                alpha,
                beta,
                tau,
                pi,
                sandwich_identity,
                homomorphism,
            } => {
                let _ = writeln!(w, "alpha = {alpha}\nbeta  = {beta}\ntau   = {tau}\npi    = {pi}");
                let _ = writeln!(w, "beta = tau·alpha·pi: {}", verdict(*sandwich_identity));
                let hom = homomorphism.map_or("skipped (use --check)", verdict);
                let _ = writeln!(w, "homomorphism check: {hom}");
            }
            Payload::Checks { checks } => {
                for c in checks {
                    let _ = writeln!(w, "{c}");
                }
            }
            Payload::Counts {
                rows,
                total,
                expected_total,
                partition_count,
                classes,
            } => {
                let _ = writeln!(w, "{:<16} {:<24} count", "partition", "type");
                for r in rows {
                    let _ = writeln!(w, "{:<16} {:<24} {}", r.partition, r.type_vector, r.count);
                }
                let _ = writeln!(w, "total {total} (n^n = {expected_total})");
                let _ = writeln!(w, "classes {classes} (p(n) = {partition_count})");
            }
            Payload::Isomorphism {
                outcome,
                anti,
                pairs,
                nodes,
            } => {
                let what = if *anti { "anti-isomorphism" } else { "isomorphism" };
                match outcome {
                    IsoOutcome::Isomorphic => {
                        let _ = writeln!(w, "{what} found");
                        for (i, j) in pairs {
                            let _ = writeln!(w, "  {i} -> {j}");
                        }
                    }
                    IsoOutcome::NotIsomorphic => {
                        let _ = writeln!(w, "no {what} exists");
                    }
                    IsoOutcome::BudgetExceeded => {
                        let _ = writeln!(w, "node budget exceeded after {} nodes", nodes.unwrap_or(0));
                    }
                }
            }
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(w, "elapsed {ms} ms");
        }
        let _ = writeln!(w, "{}", verdict(self.passed));
        out
    }

    /// One row per item of the payload; metadata is left to JSON.
    pub fn to_csv(&self) -> io::Result<String> {
        let mut wtr = csv::Writer::from_writer(Vec::new());
        match &self.result {
            Payload::Idempotents { idempotents, .. } => {
                wtr.write_record(["idempotent"])?;
                for e in idempotents {
                    wtr.write_record([e])?;
                }
            }
            Payload::Chain { chain } => chain.iter().try_for_each(|r| wtr.serialize(r))?,
            Payload::Classes { classes, .. } => classes.iter().try_for_each(|r| wtr.serialize(r))?,
            Payload::Witness {
                alpha,
                beta,
                tau,
                pi,
                sandwich_identity,
                homomorphism,
            } => {
                wtr.write_record(["alpha", "beta", "tau", "pi", "sandwich_identity", "homomorphism"])?;
                let hom = homomorphism.map(|h| h.to_string()).unwrap_or_default();
                wtr.write_record([alpha, beta, tau, pi, &sandwich_identity.to_string(), &hom])?;
            }
            Payload::Checks { checks } => {
                wtr.write_record(["suite", "check", "passed", "checked", "detail", "counterexample"])?;
                for c in checks {
                    wtr.write_record([
                        c.suite.as_str(),
                        &c.check,
                        &c.passed.to_string(),
                        &c.checked.to_string(),
                        &c.detail,
                        c.counterexample.as_deref().unwrap_or(""),
                    ])?;
                }
            }
            Payload::Counts { rows, .. } => rows.iter().try_for_each(|r| wtr.serialize(r))?,
            Payload::Isomorphism { pairs, .. } => {
                wtr.write_record(["source", "target"])?;
                for (i, j) in pairs {
                    wtr.write_record([i.to_string(), j.to_string()])?;
                }
            }
        }
        let bytes = wtr.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}
