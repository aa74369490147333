use std::fmt::Write as _;
use std::time::Duration;

use serde_json::{json, Value};

use crate::pbw::Sign;
use crate::rootdata::Weight;
use crate::scalars::{LaurentInt, RatFunc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theorem {
    Factorization,
    FactorizationOpposite,
    MultiplicityFree,
    Omega,
    TruncatedProducts,
    TripleIntersection,
}

impl Theorem {
    pub const ALL: [Theorem; 6] = [
        Theorem::Factorization,
        Theorem::FactorizationOpposite,
        Theorem::MultiplicityFree,
        Theorem::Omega,
        Theorem::TruncatedProducts,
        Theorem::TripleIntersection,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Theorem::Factorization => "factorization",
            Theorem::FactorizationOpposite => "factorization-opposite",
            Theorem::MultiplicityFree => "multiplicity-free",
            Theorem::Omega => "omega",
            Theorem::TruncatedProducts => "truncated-products",
            Theorem::TripleIntersection => "triple-intersection",
        }
    }

    pub fn from_tag(s: &str) -> Option<Theorem> {
        Theorem::ALL.into_iter().find(|t| t.tag() == s)
    }
}

/// Concrete evidence attached to a failing record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub kind: &'static str,
    pub row: Option<String>,
    pub column: Option<String>,
    pub coefficient: Option<String>,
    pub message: String,
}

impl Witness {
    pub fn new(kind: &'static str, message: impl Into<String>) -> Self {
        Witness { kind, row: None, column: None, coefficient: None, message: message.into() }
    }

    pub fn at(mut self, row: impl Into<String>, column: impl Into<String>, coefficient: &RatFunc) -> Self {
        self.row = Some(row.into());
        self.column = Some(column.into());
        self.coefficient = Some(coefficient.to_string());
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind,
            "row": self.row,
            "column": self.column,
            "coefficient": self.coefficient,
            "message": self.message,
        })
    }
}

/// One weight of a sweep.
#[derive(Clone, Debug)]
pub struct WeightRecord {
    pub weight: Weight,
    pub dim: usize,
    pub rows: Vec<String>,
    pub columns: Vec<String>,
    pub matrix: Vec<Vec<RatFunc>>,
    pub det: Option<LaurentInt>,
    pub witness: Option<Witness>,
    pub findings: Vec<String>,
}

impl WeightRecord {
    pub fn new(weight: Weight, dim: usize) -> Self {
        WeightRecord { weight, dim, rows: Vec::new(), columns: Vec::new(), matrix: Vec::new(), det: None, witness: None, findings: Vec::new() }
    }

    pub fn pass(&self) -> bool {
        self.witness.is_none()
    }

    /// Keeps the first failure.
    pub fn fail(&mut self, w: Witness) {
        if self.witness.is_none() {
            self.witness = Some(w);
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "weight": self.weight,
            "dim": self.dim,
            "pass": self.pass(),
            "witness": self.witness.as_ref().map(Witness::to_json),
            "rows": self.rows,
            "columns": self.columns,
            "matrix": self.matrix.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "det": self.det.as_ref().map(ToString::to_string),
            "findings": self.findings,
        })
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub theorem: Theorem,
    pub type_name: String,
    pub word: Vec<String>,
    pub epsilon: Sign,
    pub split: Option<usize>,
    pub max_height: u32,
    pub records: Vec<WeightRecord>,
    pub elapsed: Duration,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.records.iter().all(WeightRecord::pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &WeightRecord> {
        self.records.iter().filter(|r| !r.pass())
    }

    pub fn findings(&self) -> impl Iterator<Item = (&Weight, &String)> {
        self.records.iter().flat_map(|r| r.findings.iter().map(move |f| (&r.weight, f)))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "theorem": self.theorem.tag(),
            "type": self.type_name,
            "word": self.word,
            "epsilon": self.epsilon.as_int(),
            "p": self.split,
            "max_height": self.max_height,
            "weights": self.records.iter().map(WeightRecord::to_json).collect::<Vec<_>>(),
            "pass": self.pass(),
        })
    }

    /// One line per matrix entry, row-major, with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("theorem,type,word,epsilon,weight,dim,pass,row,column,value,witness\n");
        let word = self.word.join(" ");
        for r in &self.records {
            let head = format!(
                "{},{},{},{},{},{},{}",
                self.theorem.tag(),
                csv_field(&self.type_name),
                csv_field(&word),
                self.epsilon.as_int(),
                csv_field(&r.weight.to_string()),
                r.dim,
                r.pass()
            );
            let wit = r.witness.as_ref().map(|w| csv_field(&w.message)).unwrap_or_default();
            if r.matrix.is_empty() {
                let _ = writeln!(out, "{head},,,,{wit}");
            }
            for (i, row) in r.matrix.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    let rl = r.rows.get(i).map(String::as_str).unwrap_or("");
                    let cl = r.columns.get(j).map(String::as_str).unwrap_or("");
                    let _ = writeln!(out, "{head},{},{},{},{wit}", csv_field(rl), csv_field(cl), csv_field(&x.to_string()));
                }
            }
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
