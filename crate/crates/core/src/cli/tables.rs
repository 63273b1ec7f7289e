//! Reference tables of the observables for the named states.

use serde::Serialize;

use crate::error::Result;
use crate::ket::{permute_qubits, Permutation};
use crate::observables::{report, PurityEngine, DEFAULT_EPSILON};
use crate::states::{
    dicke_expr, named, schrodinger_expr, B1, B2, B3, BSSB4, BSSB5, GHZ, HS, SEP3, W3,
};

use super::format::{aligned, num};

/// Tolerance for comparing a computed value with its expected fraction.
pub const TABLE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Fraction {
    pub num: i64,
    pub den: i64,
}

impl Fraction {
    pub const fn new(num: i64, den: i64) -> Self {
        Self { num, den }
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn render(&self) -> String {
        if self.den == 1 {
            self.num.to_string()
        } else {
            format!("{}/{}", self.num, self.den)
        }
    }
}

const fn f(num: i64, den: i64) -> Fraction {
    Fraction::new(num, den)
}

#[derive(Debug, Clone, Serialize)]
pub struct Cell {
    pub state: String,
    pub quantity: String,
    pub computed: f64,
    pub expected: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub description: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub title: String,
    pub order: Option<String>,
    pub cells: Vec<Cell>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TablesReport {
    pub tolerance: f64,
    pub tables: Vec<Table>,
}

impl TablesReport {
    pub fn all_passed(&self) -> bool {
        self.tables
            .iter()
            .all(|t| t.cells.iter().all(|c| c.pass) && t.checks.iter().all(|c| c.pass))
    }

    pub fn failures(&self) -> usize {
        self.tables
            .iter()
            .map(|t| {
                t.cells.iter().filter(|c| !c.pass).count()
                    + t.checks.iter().filter(|c| !c.pass).count()
            })
            .sum()
    }

    pub fn table(&self, title: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.title == title)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for (i, t) in self.tables.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.push_str(&format!("== {} ==\n", t.title));
            let mut rows = vec![vec![
                "state".to_string(),
                "quantity".to_string(),
                "computed".to_string(),
                "expected".to_string(),
                "status".to_string(),
            ]];
            for c in &t.cells {
                rows.push(vec![
                    c.state.clone(),
                    c.quantity.clone(),
                    num(c.computed),
                    c.expected.clone(),
                    status(c.pass).to_string(),
                ]);
            }
            out.push_str(&aligned(&rows));
            for c in &t.checks {
                out.push_str(&format!("check {}: {}\n", c.description, status(c.pass)));
            }
            for n in &t.notes {
                out.push_str(&format!("{n}\n"));
            }
        }
        let failures = self.failures();
        out.push_str(&format!(
            "\n{} at tolerance {}: {}\n",
            if failures == 0 { "all PASS" } else { "FAIL" },
            num(self.tolerance),
            if failures == 0 {
                "every entry matches".to_string()
            } else {
                format!("{failures} entries differ")
            }
        ));
        out
    }
}

fn status(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

struct Row<'a> {
    label: &'a str,
    expr: String,
    expected: Vec<Fraction>,
    average: Fraction,
}

fn row<'a>(label: &'a str, expr: impl Into<String>, expected: &[Fraction], average: Fraction) -> Row<'a> {
    Row {
        label,
        expr: expr.into(),
        expected: expected.to_vec(),
        average,
    }
}

/// Computed `(J_{n,1..n-1}, average)` of `expr` after an optional reordering.
pub fn observables_of(expr: &str, order: Option<&str>) -> Result<(Vec<f64>, f64)> {
    let mut psi = named(expr)?;
    if let Some(word) = order {
        psi = permute_qubits(&psi, &Permutation::from_order(word)?)?;
    }
    let rep = report(&psi, &PurityEngine, DEFAULT_EPSILON)?;
    Ok((rep.values, rep.average))
}

fn build(title: &str, order: Option<&str>, rows: &[Row]) -> Result<(Table, Vec<(String, Vec<f64>, f64)>)> {
    let mut cells = Vec::new();
    let mut computed = Vec::new();
    for r in rows {
        let (values, average) = observables_of(&r.expr, order)?;
        let n = values.len() + 1;
        for (ell, (v, e)) in values.iter().zip(&r.expected).enumerate() {
            cells.push(Cell {
                state: r.label.to_string(),
                quantity: format!("J_{{{},{}}}", n, ell + 1),
                computed: *v,
                expected: e.render(),
                pass: (v - e.value()).abs() <= TABLE_TOL,
            });
        }
        cells.push(Cell {
            state: r.label.to_string(),
            quantity: "average".to_string(),
            computed: average,
            expected: r.average.render(),
            pass: (average - r.average.value()).abs() <= TABLE_TOL,
        });
        computed.push((r.label.to_string(), values, average));
    }
    let table = Table {
        title: title.to_string(),
        order: order.map(str::to_string),
        cells,
        checks: Vec::new(),
        notes: Vec::new(),
    };
    Ok((table, computed))
}

fn lookup<'a>(computed: &'a [(String, Vec<f64>, f64)], label: &str) -> &'a (String, Vec<f64>, f64) {
    computed
        .iter()
        .find(|c| c.0 == label)
        .expect("label present in table")
}

fn same_values(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= TABLE_TOL)
}

const B_NOTE: &str = "* B1 = |0>(x)(|00>+|11>)/sqrt(2) factors after qubit 1, so J_{3,1}(B1) = 0; \
likewise J_{3,2}(B3) = 0. Tables listing J_{3,1}(B1) = 1 have the B1 and B3 columns transposed.";

fn three_qubit_rows(acb: bool) -> Vec<Row<'static>> {
    let (b2, b3) = if acb {
        ([f(1, 1), f(0, 1)], [f(1, 1), f(1, 1)])
    } else {
        ([f(1, 1), f(1, 1)], [f(1, 1), f(0, 1)])
    };
    let avg = |v: [Fraction; 2]| f(v[0].num * v[1].den + v[1].num * v[0].den, 2 * v[0].den * v[1].den);
    let reduce = |x: Fraction| {
        let g = gcd(x.num.abs(), x.den);
        f(x.num / g, x.den / g)
    };
    vec![
        row("Sep", SEP3, &[f(0, 1), f(0, 1)], f(0, 1)),
        row("B1*", B1, &[f(0, 1), f(1, 1)], f(1, 2)),
        row("B2", B2, &b2, reduce(avg(b2))),
        row("B3*", B3, &b3, reduce(avg(b3))),
        row("W", W3, &[f(8, 9), f(8, 9)], f(8, 9)),
        row("GHZ", GHZ, &[f(1, 1), f(1, 1)], f(1, 1)),
    ]
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

/// Builds every table from scratch.
pub fn tables() -> Result<TablesReport> {
    let mut out = Vec::new();

    let (mut abc, abc_vals) = build("Three qubits, order ABC", None, &three_qubit_rows(false))?;
    abc.notes.push(B_NOTE.to_string());
    let (mut acb, acb_vals) = build("Three qubits, order ACB", Some("ACB"), &three_qubit_rows(true))?;
    acb.notes.push(B_NOTE.to_string());
    let swapped = same_values(&lookup(&abc_vals, "B2").1, &lookup(&acb_vals, "B3*").1)
        && same_values(&lookup(&abc_vals, "B3*").1, &lookup(&acb_vals, "B2").1);
    acb.checks.push(Check {
        description: "B2 and B3 columns exchange between ABC and ACB".to_string(),
        pass: swapped,
    });
    let invariant = ["Sep", "W", "GHZ"]
        .iter()
        .all(|l| same_values(&lookup(&abc_vals, l).1, &lookup(&acb_vals, l).1));
    acb.checks.push(Check {
        description: "Sep, W and GHZ unchanged by the reordering".to_string(),
        pass: invariant,
    });
    out.push(abc);
    out.push(acb);

    let d4 = [
        row("D_{4,1}", dicke_expr(4, 1), &[f(3, 4), f(1, 1), f(3, 4)], f(5, 6)),
        row("D_{4,2}", dicke_expr(4, 2), &[f(1, 1), f(1, 1), f(1, 1)], f(1, 1)),
        row("D_{4,3}", dicke_expr(4, 3), &[f(3, 4), f(1, 1), f(3, 4)], f(5, 6)),
    ];
    let (mut t4, v4) = build("Dicke states, n = 4", None, &d4)?;
    t4.checks.push(Check {
        description: "D_{4,1} and D_{4,3} identical".to_string(),
        pass: same_values(&lookup(&v4, "D_{4,1}").1, &lookup(&v4, "D_{4,3}").1),
    });
    out.push(t4);

    let low = [f(16, 25), f(24, 25), f(24, 25), f(16, 25)];
    let mid = [f(24, 25), f(27, 25), f(27, 25), f(24, 25)];
    let d5 = [
        row("D_{5,1}", dicke_expr(5, 1), &low, f(4, 5)),
        row("D_{5,2}", dicke_expr(5, 2), &mid, f(51, 50)),
        row("D_{5,3}", dicke_expr(5, 3), &mid, f(51, 50)),
        row("D_{5,4}", dicke_expr(5, 4), &low, f(4, 5)),
    ];
    let (mut t5, v5) = build("Dicke states, n = 5", None, &d5)?;
    for (a, b) in [("D_{5,1}", "D_{5,4}"), ("D_{5,2}", "D_{5,3}")] {
        t5.checks.push(Check {
            description: format!("{a} and {b} identical"),
            pass: same_values(&lookup(&v5, a).1, &lookup(&v5, b).1),
        });
    }
    out.push(t5);

    let four = [
        row("S_4", schrodinger_expr(4), &[f(1, 1), f(1, 1), f(1, 1)], f(1, 1)),
        row("D_{4,2}", dicke_expr(4, 2), &[f(1, 1), f(1, 1), f(1, 1)], f(1, 1)),
        row("BSSB_4", BSSB4, &[f(3, 4), f(5, 4), f(1, 1)], f(1, 1)),
        row("HS", HS, &[f(1, 1), f(4, 3), f(1, 1)], f(10, 9)),
    ];
    let (mut tf, vf) = build("Four qubits", None, &four)?;
    tf.checks.push(Check {
        description: "average J(BSSB_4) < average J(HS)".to_string(),
        pass: lookup(&vf, "BSSB_4").2 < lookup(&vf, "HS").2,
    });
    out.push(tf);

    let five = [
        row("S_5", schrodinger_expr(5), &[f(1, 1), f(1, 1), f(1, 1), f(1, 1)], f(1, 1)),
        row("D_{5,2}", dicke_expr(5, 2), &mid, f(51, 50)),
        row("BSSB_5", BSSB5, &[f(1, 1), f(3, 2), f(5, 4), f(1, 1)], f(19, 16)),
    ];
    let (mut tv, vv) = build("Five qubits", None, &five)?;
    let (s5, d52, b5) = (
        lookup(&vv, "S_5").2,
        lookup(&vv, "D_{5,2}").2,
        lookup(&vv, "BSSB_5").2,
    );
    tv.checks.push(Check {
        description: "1 = average J(S_5) < average J(D_{5,2}) < average J(BSSB_5)".to_string(),
        pass: (s5 - 1.0).abs() <= TABLE_TOL && s5 < d52 && d52 < b5,
    });
    out.push(tv);

    Ok(TablesReport {
        tolerance: TABLE_TOL,
        tables: out,
    })
}
