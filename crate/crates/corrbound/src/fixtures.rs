//! Built-in reference matrices with their published values.
//!
//! Each fixture pins the printed values of its source to the tolerance those
//! values were printed at (four significant figures unless noted), plus the
//! ordering relations the example was constructed to demonstrate.

use serde::Serialize;

use crate::bounds::{self, BoundsReport};
use crate::corr::{self, CorrelationMatrix};
use crate::error::Result;
use crate::linalg::SymMatrix;

/// A derived quantity a fixture can pin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    R1,
    R2,
    RInf,
    DetR,
    DetRtilde,
    DetRhat,
    DetRbar,
    /// f(n, r_inf): the limiting power-mean bound.
    BoundAtRInf,
}

impl Quantity {
    pub fn label(self) -> &'static str {
        match self {
            Quantity::R1 => "r1",
            Quantity::R2 => "r2",
            Quantity::RInf => "r_inf",
            Quantity::DetR => "det_R",
            Quantity::DetRtilde => "det_Rtilde",
            Quantity::DetRhat => "det_Rhat",
            Quantity::DetRbar => "det_Rbar",
            Quantity::BoundAtRInf => "f(n, r_inf)",
        }
    }

    fn eval(self, b: &BoundsReport) -> f64 {
        match self {
            Quantity::R1 => b.stats.r1,
            Quantity::R2 => b.stats.r2,
            Quantity::RInf => b.stats.r_inf,
            Quantity::DetR => b.det_r,
            Quantity::DetRtilde => b.det_rtilde,
            Quantity::DetRhat => b.det_rhat,
            Quantity::DetRbar => b.det_rbar,
            Quantity::BoundAtRInf => corr::f_bound(b.n, b.stats.r_inf),
        }
    }
}

/// One pinned value.
#[derive(Debug, Clone)]
pub struct ValueCheck {
    pub quantity: Quantity,
    pub expected: f64,
    pub tol: f64,
}

/// One pinned strict ordering between two quantities.
#[derive(Debug, Clone)]
pub struct RelationCheck {
    pub smaller: Quantity,
    pub larger: Quantity,
}

/// A reference matrix plus everything it is expected to reproduce.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub rows: [[f64; 3]; 3],
    pub values: Vec<ValueCheck>,
    pub relations: Vec<RelationCheck>,
}

impl Fixture {
    pub fn matrix(&self) -> Result<CorrelationMatrix> {
        let rows: Vec<Vec<f64>> = self.rows.iter().map(|r| r.to_vec()).collect();
        CorrelationMatrix::validate(SymMatrix::from_rows(&rows)?)
    }
}

fn check(quantity: Quantity, expected: f64, tol: f64) -> ValueCheck {
    ValueCheck {
        quantity,
        expected,
        tol,
    }
}

/// The three built-in examples.
pub fn builtin_fixtures() -> Vec<Fixture> {
    vec![
        Fixture {
            name: "example-1",
            rows: [[1.0, 0.0, -0.5], [0.0, 1.0, 0.5], [-0.5, 0.5, 1.0]],
            values: vec![
                check(Quantity::DetR, 0.5, 1e-9),
                check(Quantity::R1, 0.0, 1e-9),
                check(Quantity::DetRtilde, 1.0, 1e-9),
                check(Quantity::R2, 0.4082, 1e-3),
                check(Quantity::DetRhat, 0.6361, 1e-3),
            ],
            relations: vec![RelationCheck {
                smaller: Quantity::DetRhat,
                larger: Quantity::DetRtilde,
            }],
        },
        Fixture {
            name: "example-2",
            rows: [[1.0, -0.3, -0.3], [-0.3, 1.0, -0.5], [-0.3, -0.5, 1.0]],
            values: vec![
                check(Quantity::DetR, 0.48, 1e-9),
                check(Quantity::R1, -0.3667, 1e-3),
                check(Quantity::DetRtilde, 0.4981, 1e-3),
                check(Quantity::R2, 0.3786, 1e-3),
                check(Quantity::DetRhat, 0.6785, 1e-3),
            ],
            relations: vec![RelationCheck {
                smaller: Quantity::DetRtilde,
                larger: Quantity::DetRhat,
            }],
        },
        Fixture {
            name: "example-3",
            rows: [[1.0, 0.0, 0.8], [0.0, 1.0, -0.5], [0.8, -0.5, 1.0]],
            values: vec![
                check(Quantity::RInf, 0.8, 1e-9),
                check(Quantity::DetR, 0.11, 1e-6),
                check(Quantity::BoundAtRInf, 0.104, 1e-6),
            ],
            relations: vec![RelationCheck {
                smaller: Quantity::BoundAtRInf,
                larger: Quantity::DetR,
            }],
        },
    ]
}

/// Outcome of one check within a fixture.
#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub label: String,
    pub detail: String,
    pub pass: bool,
}

/// Outcome of a whole fixture.
#[derive(Debug, Clone, Serialize)]
pub struct FixtureOutcome {
    pub name: &'static str,
    pub checks: Vec<CheckOutcome>,
    pub pass: bool,
}

/// Evaluate a fixture against its pinned values and relations.
pub fn run_fixture(fixture: &Fixture) -> Result<FixtureOutcome> {
    let r = fixture.matrix()?;
    let b = bounds::bounds_report(&r);
    let mut checks = Vec::new();

    for v in &fixture.values {
        let actual = v.quantity.eval(&b);
        let pass = (actual - v.expected).abs() <= v.tol;
        checks.push(CheckOutcome {
            label: v.quantity.label().to_string(),
            detail: format!(
                "expected {} +- {:.0e}, got {:.6}",
                v.expected, v.tol, actual
            ),
            pass,
        });
    }
    for rel in &fixture.relations {
        let lo = rel.smaller.eval(&b);
        let hi = rel.larger.eval(&b);
        checks.push(CheckOutcome {
            label: format!("{} < {}", rel.smaller.label(), rel.larger.label()),
            detail: format!("{lo:.6} vs {hi:.6}"),
            pass: lo < hi,
        });
    }

    let pass = checks.iter().all(|c| c.pass);
    Ok(FixtureOutcome {
        name: fixture.name,
        checks,
        pass,
    })
}
