//! Built-in worked examples with their expected results.
//!
//! Each check is a command line plus the exact output it must produce, so
//! a failing check can be rerun by hand from the echoed command.

use std::fmt::Write as _;

use serde::Serialize;

use crate::cli;
use crate::error::{Error, Result};

const WEYL: &str = include_str!("../fixtures/weyl.qalg");
const COLOR_PLANE: &str = include_str!("../fixtures/color_plane.qalg");
const HEISENBERG_COMMUTING: &str = include_str!("../fixtures/heisenberg_commuting.qalg");
const HEISENBERG_SKEW: &str = include_str!("../fixtures/heisenberg_skew.qalg");
const FILTERED: &str = include_str!("../fixtures/filtered.qalg");

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    /// Stated in the published example.
    Published,
    /// Immediate from the definitions.
    Trivial,
    /// Worked out independently, by hand or by a separate computation.
    Derived,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Match {
    /// Output equals the expected text.
    Exact,
    /// Output contains the expected text.
    Contains,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub origin: Origin,
    pub argv: Vec<String>,
    pub code: u8,
    pub matching: Match,
    /// Compared against stdout followed by stderr.
    pub expected: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Fixture {
    pub id: &'static str,
    pub title: &'static str,
    #[serde(skip)]
    pub source: &'static str,
    pub checks: Vec<Check>,
}

fn check(name: &str, origin: Origin, argv: &[&str], code: u8, matching: Match, expected: &str) -> Check {
    Check {
        name: name.to_string(),
        origin,
        argv: argv.iter().map(|s| s.to_string()).collect(),
        code,
        matching,
        expected: expected.to_string(),
    }
}

fn exact(name: &str, origin: Origin, argv: &[&str], expected: &str) -> Check {
    check(name, origin, argv, 0, Match::Exact, expected)
}

fn contains(name: &str, origin: Origin, argv: &[&str], code: u8, expected: &str) -> Check {
    check(name, origin, argv, code, Match::Contains, expected)
}

/// Source text of a fixture by id.
pub fn source(id: &str) -> Option<&'static str> {
    Some(match id {
        "Ex2.4" | "Ex4.5" => FILTERED,
        "Ex2.6" | "Ex4.2" => COLOR_PLANE,
        "Ex4.1" => WEYL,
        "Ex4.3" => HEISENBERG_COMMUTING,
        "Ex4.4" => HEISENBERG_SKEW,
        _ => return None,
    })
}

/// Every fixture, in id order.
pub fn all() -> Vec<Fixture> {
    use Origin::*;
    vec![
        Fixture {
            id: "Ex2.4",
            title: "filtered algebra with d(x) = 2",
            source: FILTERED,
            checks: vec![
                contains("validates", Published, &["validate", "@Ex2.4"], 0, "pass termination"),
                exact(
                    "conjugation_by_y",
                    Published,
                    &["conj", "@Ex2.4", "y"],
                    "y -> y\nz -> z\nx -> q*x + y + z + 1\n",
                ),
                exact("nf_xy", Trivial, &["nf", "@Ex2.4", "x*y"], "q*y*x + y^2 + y*z + y\n"),
            ],
        },
        Fixture {
            id: "Ex2.6",
            title: "color Lie algebra on x, y, z",
            source: COLOR_PLANE,
            checks: vec![
                exact("nf_xy", Published, &["nf", "@Ex2.6", "x*y"], "y*x + y\n"),
                exact("nf_zy", Published, &["nf", "@Ex2.6", "z*y"], "q^-1*y*z\n"),
                contains("validates", Derived, &["validate", "@Ex2.6"], 0, "pass color_jacobi"),
                exact(
                    "y_semi_invariant",
                    Derived,
                    &["semiinv", "@Ex2.6", "y"],
                    "homogeneous: true\ngrade: (1,0)\nsemi-invariant: true\nweights: y: 0, z: 0, x: 1\n",
                ),
            ],
        },
        Fixture {
            id: "Ex4.1",
            title: "quantum Weyl algebra",
            source: WEYL,
            checks: vec![
                exact("nf_xy", Published, &["nf", "@Ex4.1", "x*y"], "q*y*x + 1\n"),
                exact("nf_one", Trivial, &["nf", "@Ex4.1", "1"], "1\n"),
                exact("y_conjugates_x", Published, &["nf", "@Ex4.1", "y^-1*x*y"], "q*x + y^-1\n"),
                contains("y_not_stabilizing", Published, &["conj", "@Ex4.1", "y"], 1, "q*x + y^-1"),
                exact("witness", Published, &["der-solve", "@Ex4.1", "--box", "1"], "c = (1-q)^-1 * y^-1\n"),
                contains(
                    "sigma_1",
                    Published,
                    &["thm32", "@Ex4.1", "--case", "2", "--w", "y", "--m", "1"],
                    0,
                    "accepted\ny -> q^-1*y\nx -> q*x\n",
                ),
                contains(
                    "sigma_-1",
                    Published,
                    &["thm32", "@Ex4.1", "--case", "2", "--w", "y^-1", "--m", "-1"],
                    0,
                    "accepted\ny -> q*y\nx -> q^-1*x\n",
                ),
                contains(
                    "p_alone_rejected",
                    Published,
                    &["thm32", "@Ex4.1", "--case", "2", "--w", "1", "--m", "1"],
                    1,
                    "rejected: c_closure = -y^-1",
                ),
                exact(
                    "p_conjugates_x",
                    Derived,
                    &["nf", "@Ex4.1", "x*(x - (1-q)^-1*y^-1) - (x - (1-q)^-1*y^-1)*(x - y^-1)"],
                    "0\n",
                ),
                exact(
                    "p_conjugates_y",
                    Derived,
                    &["nf", "@Ex4.1", "y*(x - (1-q)^-1*y^-1) - q^-1*(x - (1-q)^-1*y^-1)*y"],
                    "0\n",
                ),
                contains(
                    "mismatched_m_rejected",
                    Published,
                    &["thm32", "@Ex4.1", "--case", "2", "--w", "y^2", "--m", "1"],
                    1,
                    "rejected",
                ),
                exact(
                    "commutator_induces",
                    Published,
                    &["verify", "@Ex4.1", "--a", "x*y - y*x", "--b", "1", "--sigma", "x = q*x, y = q^-1*y"],
                    "true\n",
                ),
                exact(
                    "infinite_order",
                    Published,
                    &["order", "@Ex4.1", "--sigma", "x = q*x, y = q^-1*y"],
                    "infinite\n",
                ),
            ],
        },
        Fixture {
            id: "Ex4.2",
            title: "color plane, conjugation by y^n z^m",
            source: COLOR_PLANE,
            checks: vec![
                exact("sigma_2_3", Published, &["conj", "@Ex4.2", "y^2*z^3"], "y -> q^3*y\nz -> q^-2*z\nx -> x + 2\n"),
                exact("sigma_-1_1", Published, &["conj", "@Ex4.2", "y^-1*z"], "y -> q*y\nz -> q*z\nx -> x - 1\n"),
                contains("no_witness", Published, &["der-solve", "@Ex4.2", "--box", "3"], 0, "none in box [-3,3]"),
            ],
        },
        Fixture {
            id: "Ex4.3",
            title: "q-Heisenberg algebra, commuting case",
            source: HEISENBERG_COMMUTING,
            checks: vec![
                contains("no_witness", Published, &["der-solve", "@Ex4.3", "--box", "3"], 0, "none in box [-3,3]"),
                contains(
                    "sigma_2",
                    Published,
                    &["thm32", "@Ex4.3", "--case", "1", "--w", "z^2"],
                    0,
                    "accepted\ny -> q^-2*y\nz -> z\nx -> q^2*x\n",
                ),
                contains(
                    "y_rejected",
                    Published,
                    &["thm32", "@Ex4.3", "--case", "1", "--w", "y*z"],
                    1,
                    "w_inv_delta_w",
                ),
            ],
        },
        Fixture {
            id: "Ex4.4",
            title: "q-Heisenberg algebra, skew case",
            source: HEISENBERG_SKEW,
            checks: vec![
                contains(
                    "witness",
                    Published,
                    &["der-solve", "@Ex4.4", "--box", "1"],
                    0,
                    "c = q*(1-q^2)^-1 * y^-1*z\n",
                ),
                contains(
                    "sigma_n0_m1",
                    Derived,
                    &["thm32", "@Ex4.4", "--case", "2", "--w", "y", "--m", "1"],
                    0,
                    "accepted\ny -> q^-1*y\nz -> z\nx -> q*x\n",
                ),
                contains(
                    "sigma_n1_m0",
                    Derived,
                    &["thm32", "@Ex4.4", "--case", "2", "--w", "z", "--m", "0"],
                    0,
                    "accepted\ny -> q*y\nz -> z\nx -> q^-1*x\n",
                ),
                contains(
                    "sigma_n1_m1",
                    Derived,
                    &["thm32", "@Ex4.4", "--case", "2", "--w", "y*z", "--m", "1"],
                    0,
                    "accepted\ny -> y\nz -> z\nx -> x\n",
                ),
                contains(
                    "w_exponent_must_match_m",
                    Published,
                    &["thm32", "@Ex4.4", "--case", "2", "--w", "y^2*z", "--m", "1"],
                    1,
                    "rejected: c_closure",
                ),
                exact(
                    "p_conjugates_x",
                    Published,
                    &["nf", "@Ex4.4", "x*(x - q*(1-q^2)^-1*y^-1*z) - (x - q*(1-q^2)^-1*y^-1*z)*(x - q*y^-1*z)"],
                    "0\n",
                ),
                exact("y_conjugates_x", Published, &["nf", "@Ex4.4", "y^-1*x*y"], "q*x + y^-1*z\n"),
            ],
        },
        Fixture {
            id: "Ex4.5",
            title: "filtered algebra as an Ore extension",
            source: FILTERED,
            checks: vec![
                contains(
                    "y_case_1",
                    Published,
                    &["thm32", "@Ex4.5", "--case", "1", "--w", "y"],
                    0,
                    "accepted\ny -> y\nz -> z\nx -> q*x + y + z + 1\n",
                ),
                contains(
                    "p_case_2",
                    Derived,
                    &["thm32", "@Ex4.5", "--case", "2", "--w", "1", "--m", "1"],
                    0,
                    "accepted\ny -> q^-1*y\nz -> z\nx -> x + q^-1*y\n",
                ),
                exact(
                    "p_conjugates_x",
                    Published,
                    &["nf", "@Ex4.5", "x*(x - (1-q)^-1*(z + y + 1)) - (x - (1-q)^-1*(z + y + 1))*(x + q^-1*y)"],
                    "0\n",
                ),
            ],
        },
    ]
}

/// Fixtures with the given ids, or all of them for an empty list.
pub fn select(ids: &[String]) -> Result<Vec<Fixture>> {
    let every = all();
    if ids.is_empty() {
        return Ok(every);
    }
    ids.iter()
        .map(|id| {
            every
                .iter()
                .find(|f| f.id == id)
                .cloned()
                .ok_or_else(|| Error::InvalidArgument(format!("no fixture named {id}")))
        })
        .collect()
}

/// Replace the expected text of the check `fixture/check`.
pub fn mutate(fixtures: &mut [Fixture], path: &str, expected: &str) -> Result<()> {
    let (fid, name) =
        path.split_once('/').ok_or_else(|| Error::InvalidArgument(format!("expected FIXTURE/CHECK, got {path}")))?;
    let c = fixtures
        .iter_mut()
        .filter(|f| f.id == fid)
        .flat_map(|f| f.checks.iter_mut())
        .find(|c| c.name == name)
        .ok_or_else(|| Error::InvalidArgument(format!("no check {path}")))?;
    c.expected = expected.to_string();
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub fixture: String,
    pub check: String,
    pub origin: Origin,
    pub command: String,
    pub passed: bool,
    pub expected_code: u8,
    pub code: u8,
    pub expected: String,
    pub computed: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub results: Vec<CheckOutcome>,
}

impl Summary {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> Vec<&CheckOutcome> {
        self.results.iter().filter(|r| !r.passed).collect()
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for r in &self.results {
            let status = if r.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "{status} {}/{} [{:?}] $ {}", r.fixture, r.check, r.origin, r.command);
            if !r.passed {
                if r.code != r.expected_code {
                    let _ = writeln!(s, "  exit: expected {}, got {}", r.expected_code, r.code);
                }
                for l in r.expected.lines() {
                    let _ = writeln!(s, "  - {l}");
                }
                for l in r.computed.lines() {
                    let _ = writeln!(s, "  + {l}");
                }
            }
        }
        let failed = self.failures().len();
        let _ = writeln!(s, "{} checks, {} passed, {} failed", self.results.len(), self.results.len() - failed, failed);
        s
    }
}

fn quote(arg: &str) -> String {
    if !arg.is_empty() && arg.chars().all(|c| c.is_ascii_alphanumeric() || "@._-=/,".contains(c)) {
        arg.to_string()
    } else {
        format!("'{}'", arg.replace('\'', r"'\''"))
    }
}

/// The shell command line for a check.
pub fn command_line(c: &Check) -> String {
    std::iter::once("qalg".to_string()).chain(c.argv.iter().map(|a| quote(a))).collect::<Vec<_>>().join(" ")
}

fn run_check(fixture: &str, c: &Check) -> CheckOutcome {
    let o = cli::run(c.argv.iter().cloned());
    let computed = format!("{}{}", o.stdout, o.stderr);
    let text_ok = match c.matching {
        Match::Exact => computed == c.expected,
        Match::Contains => computed.contains(&c.expected),
    };
    CheckOutcome {
        fixture: fixture.to_string(),
        check: c.name.clone(),
        origin: c.origin,
        command: command_line(c),
        passed: text_ok && o.code == c.code,
        expected_code: c.code,
        code: o.code,
        expected: c.expected.clone(),
        computed,
    }
}

/// Run every check, in parallel, reporting in fixture order.
pub fn run_all(fixtures: &[Fixture]) -> Summary {
    let jobs: Vec<(&str, &Check)> = fixtures.iter().flat_map(|f| f.checks.iter().map(move |c| (f.id, c))).collect();
    let results = std::thread::scope(|s| {
        let handles: Vec<_> = jobs.iter().map(|&(id, c)| s.spawn(move || run_check(id, c))).collect();
        handles.into_iter().map(|h| h.join().expect("check panicked")).collect()
    });
    Summary { results }
}
