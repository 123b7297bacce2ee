//! One line per acceptance criterion. Criteria listed in `KNOWN_FAILURES`
//! are expected to fail (the analysis lives with the project notes); the test
//! fails if any other criterion fails or if a known failure starts passing.

use indcomplex::pipeline::{Budget, DEFAULT_SEED};
use indcomplex::reproduce::{self, Check, Target, TargetReport};

/// The Kagome tile census has 270 residual isomorphism classes, not 217.
const KNOWN_FAILURES: &[u32] = &[2];

struct Criterion {
    id: u32,
    title: &'static str,
    checks: Vec<Check>,
}

impl Criterion {
    fn pass(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass)
    }

    fn line(&self) -> String {
        let status = if self.pass() { "PASS" } else { "FAIL" };
        let detail: Vec<String> = self
            .checks
            .iter()
            .map(|c| {
                let mut s = format!("{}: {}", c.name, c.computed);
                if !c.pass {
                    s += &format!(" (expected {})", c.expected);
                }
                if let Some(n) = c.note.as_ref().filter(|_| !c.pass || c.name.contains("upper rate")) {
                    s += &format!(" [{n}]");
                }
                s
            })
            .collect();
        format!("criterion {} {status} {}: {}", self.id, self.title, detail.join("; "))
    }
}

fn pick(r: &TargetReport, names: &[&str]) -> Vec<Check> {
    names.iter().map(|n| r.check(n).unwrap_or_else(|| panic!("missing check {n}")).clone()).collect()
}

fn main() {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let budget = Budget { workers, ..Budget::default() };
    let run = |t| reproduce::run(t, DEFAULT_SEED, &budget).expect("target runs");

    let c6 = run(Target::C6);
    let kagome = run(Target::Kagome);
    let d3 = run(Target::Delta3);
    let d4 = run(Target::Delta4);
    let mut delta = d3.checks.clone();
    for c in &mut delta {
        c.name = format!("delta3 {}", c.name);
    }
    delta.extend(d4.checks.iter().cloned().map(|mut c| {
        c.name = format!("delta4 {}", c.name);
        c
    }));

    let criteria = vec![
        Criterion { id: 1, title: "C6 suite", checks: c6.checks.clone() },
        Criterion {
            id: 2,
            title: "Kagome residual enumeration",
            checks: pick(&kagome, &["residuals enumerated", "isomorphism classes", "max total Betti", "a residual attains 14"]),
        },
        Criterion {
            id: 3,
            title: "Kagome bounds on H(6,4)",
            checks: pick(
                &kagome,
                &["pairing rank = 2^(72/36)", "upper raw bound", "lower rate", "upper rate", "lower rate ≤ upper rate"],
            ),
        },
        Criterion { id: 4, title: "forest suite", checks: run(Target::Forests).checks },
        Criterion { id: 5, title: "filtration inequality suite", checks: run(Target::Filtration).checks },
        Criterion { id: 6, title: "join multiplicativity", checks: run(Target::Join).checks },
        Criterion { id: 7, title: "splitting Betti ledger", checks: run(Target::Splitting).checks },
        Criterion { id: 8, title: "absolute bound", checks: run(Target::Absolute).checks },
        Criterion { id: 9, title: "Δ-lattice bounds", checks: delta },
    ];

    let mut failing = Vec::new();
    println!();
    for c in &criteria {
        println!("{}", c.line());
        if !c.pass() {
            failing.push(c.id);
        }
    }
    if failing != KNOWN_FAILURES {
        eprintln!("failing criteria {failing:?} differ from the recorded known failures {KNOWN_FAILURES:?}");
        std::process::exit(1);
    }
}
