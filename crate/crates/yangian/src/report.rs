//! JSON report assembly for the command-line front end.
//!
//! Everything here is deterministic: struct fields serialize in declaration
//! order and all collections are built in a fixed order, so identical runs
//! produce byte-identical output.

use serde::Serialize;
use serde_json::{json, Value};

use crate::field::{FieldDesc, Fq};
use crate::matrix::Mat;
use crate::module::{HighestWeight, Irreducibility, SuperModule};
use crate::pbw::Element;
use crate::series::{Compare, Tail};
use crate::shifted::ClassReport;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// The parameter block every report embeds.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Params {
    pub p: u32,
    pub m: u32,
    #[serde(rename = "N")]
    pub order: usize,
    pub seed: u64,
    pub version: &'static str,
}

/// Outcome of a single named check inside a suite.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: Params,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// Equality held, but only through a smaller order than requested
    /// (series of mismatched lengths are compared on the overlap).
    Partial,
    Fail,
}

impl CheckReport {
    pub fn pass(name: &str, params: Params) -> CheckReport {
        CheckReport {
            check: name.into(),
            params,
            status: Status::Pass,
            witness: None,
        }
    }

    pub fn fail(name: &str, params: Params, witness: Value) -> CheckReport {
        CheckReport {
            check: name.into(),
            params,
            status: Status::Fail,
            witness: Some(witness),
        }
    }

    pub fn from_compare(name: &str, params: Params, cmp: &Compare, want: usize) -> CheckReport {
        match cmp {
            Compare::Equal { through } if *through >= want => CheckReport::pass(name, params),
            Compare::Equal { through } => CheckReport {
                check: name.into(),
                params,
                status: Status::Partial,
                witness: Some(json!({ "through": through, "requested": want })),
            },
            Compare::Differs { index } => {
                CheckReport::fail(name, params, json!({ "coefficient": index }))
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn text_line(&self) -> String {
        let tag = match self.status {
            Status::Pass => "pass",
            Status::Partial => "partial",
            Status::Fail => "FAIL",
        };
        match &self.witness {
            Some(w) => format!("{:<40} {tag}  {w}", self.check),
            None => format!("{:<40} {tag}", self.check),
        }
    }
}

pub fn element_string(x: &Fq) -> String {
    x.coeff_string()
}

/// A truncated series as an array of coefficient strings; index = power of u^-1.
pub fn series_value(t: &Tail<Fq>) -> Value {
    Value::Array(
        t.coeffs()
            .iter()
            .map(|c| Value::String(element_string(c)))
            .collect(),
    )
}

pub fn matrix_value(m: &Mat) -> Value {
    let rows: Vec<Value> = (0..m.nrows())
        .map(|r| {
            Value::Array(
                (0..m.ncols())
                    .map(|c| Value::String(element_string(&m[(r, c)])))
                    .collect(),
            )
        })
        .collect();
    Value::Array(rows)
}

pub fn vector_value(v: &[Fq]) -> Value {
    Value::Array(v.iter().map(|c| Value::String(element_string(c))).collect())
}

/// A PBW-normal element as a list of terms; each monomial is a list of
/// [generator, superscript, exponent] triples.
pub fn element_value(x: &Element<Fq>) -> Value {
    let terms: Vec<Value> = x
        .iter()
        .map(|(m, c)| {
            let factors: Vec<Value> = m
                .factors()
                .iter()
                .map(|(g, e)| json!([g.kind.name(), g.sup, e]))
                .collect();
            json!({ "monomial": factors, "coeff": element_string(c) })
        })
        .collect();
    Value::Array(terms)
}

pub fn parity_signature(parity: &[u8]) -> String {
    parity
        .iter()
        .map(|&x| if x == 0 { '+' } else { '-' })
        .collect()
}

pub fn irreducibility_value(v: &Irreducibility) -> Value {
    match v {
        Irreducibility::Absolutely => json!("absolutely irreducible"),
        Irreducibility::RelativeOnly => json!("irreducible (not absolutely)"),
        Irreducibility::Reducible { invariant } => json!({
            "reducible": { "invariant_subspace": invariant.iter().map(|v| vector_value(v)).collect::<Vec<_>>() }
        }),
        Irreducibility::Undetermined => json!("undetermined"),
    }
}

/// Full matrix dump of a module: dim, parity, degree, and the action
/// matrices per (i, j, r) with zero matrices beyond the degree omitted.
pub fn module_value(m: &SuperModule) -> Value {
    let mut mats = Vec::new();
    for i in 1..=2u8 {
        for j in 1..=2u8 {
            for r in 1..=m.degree() {
                let mat = m.t_mat(i, j, r);
                if !mat.is_zero() {
                    mats.push(json!({
                        "i": i,
                        "j": j,
                        "r": r,
                        "entries": matrix_value(&mat),
                    }));
                }
            }
        }
    }
    json!({
        "dim": m.dim(),
        "parity": parity_signature(m.parity()),
        "degree": m.degree(),
        "matrices": mats,
    })
}

pub fn highest_weight_value(hw: &HighestWeight) -> Value {
    json!({
        "lambda1": series_value(&hw.lambda1),
        "lambda2": series_value(&hw.lambda2),
        "vector": vector_value(&hw.vector),
    })
}

/// One classification row: {tableau, h, dim, lambda1, lambda2}.
pub fn class_row_value(row: &ClassReport) -> Value {
    let fmt = |xs: &[Fq]| {
        xs.iter()
            .map(element_string)
            .collect::<Vec<_>>()
            .join(",")
    };
    json!({
        "tableau": format!("{};{}", fmt(&row.a), fmt(&row.b)),
        "h": row.h,
        "dim": row.dim,
        "lambda1": series_value(&row.lambda1),
        "lambda2": series_value(&row.lambda2),
    })
}

pub fn params_for(desc: FieldDesc, order: usize, seed: u64) -> Params {
    Params {
        p: desc.p,
        m: desc.m,
        order,
        seed,
        version: VERSION,
    }
}

/// A whole suite as one JSON document.
pub fn suite_value(suite: &str, params: Params, checks: &[CheckReport]) -> Value {
    json!({
        "suite": suite,
        "params": params,
        "checks": checks.iter().map(|c| serde_json::to_value(c).unwrap()).collect::<Vec<_>>(),
        "status": if checks.iter().all(|c| c.ok()) { "pass" } else { "fail" },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_strings_and_partial_marking() {
        let desc = FieldDesc::new(3, 1).unwrap();
        let params = params_for(desc, 4, 7);
        let a = Tail::new(vec![desc.one(), desc.from_int(2)]);
        let b = Tail::new(vec![desc.one(), desc.from_int(2), desc.one()]);
        let r = CheckReport::from_compare("overlap", params, &a.compare(&b), 2);
        assert_eq!(r.status, Status::Partial);
        assert!(r.ok());
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"status\":\"partial\""));
        assert!(s.contains("\"version\""));
        let c = Tail::new(vec![desc.one(), desc.one()]);
        let r = CheckReport::from_compare("mismatch", params, &a.compare(&c), 1);
        assert_eq!(r.status, Status::Fail);
        assert!(r.text_line().contains("FAIL"));
    }

    #[test]
    fn serialized_field_order_is_declaration_order() {
        let desc = FieldDesc::new(3, 2).unwrap();
        let params = params_for(desc, 6, 1);
        let s = serde_json::to_string(&params).unwrap();
        assert_eq!(
            s,
            format!("{{\"p\":3,\"m\":2,\"N\":6,\"seed\":1,\"version\":\"{VERSION}\"}}")
        );
    }

    #[test]
    fn module_dump_lists_nonzero_matrices() {
        let desc = FieldDesc::new(5, 1).unwrap();
        let m = SuperModule::eval(desc, &desc.from_int(1), &desc.from_int(2));
        let v = module_value(&m);
        assert_eq!(v["dim"], 2);
        assert_eq!(v["parity"], "+-");
        let mats = v["matrices"].as_array().unwrap();
        assert!(mats.iter().any(|e| e["i"] == 1 && e["j"] == 2));
        assert!(mats.iter().all(|e| e["r"] == 1));
    }
}
