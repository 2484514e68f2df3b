//! Operations shared by the subcommands and the JSON server. Each returns a
//! JSON object; the CLI pretty-prints it and the server adds the request id.

use quivermut::blocks::is_block_decomposable_with;
use quivermut::canon::{self, Canonicalizer};
use quivermut::catalog::catalog;
use quivermut::io::parse_quiver;
use quivermut::mutclass::{apply_sequence, check_obstructive, enumerate_class_with, ClassOptions};
use quivermut::seeds::{enumerate_seeds, Seed};
use quivermut::verify::{claims, VerificationReport};
use quivermut::{Quiver, VertexSet};
use serde_json::{json, Value};

pub const DEFAULT_BUDGET: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OpError {
    /// Bad input: malformed quiver, vertex out of range, unknown name.
    Input(String),
    /// The input was fine but the computation cannot give the requested
    /// answer: budget exhausted, infinite class, failed claim.
    Domain {
        message: String,
        detail: Option<Value>,
    },
}

impl OpError {
    pub fn code(&self) -> &'static str {
        match self {
            OpError::Input(_) => "bad_input",
            OpError::Domain { .. } => "domain_error",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            OpError::Input(m) => m,
            OpError::Domain { message, .. } => message,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            OpError::Input(_) => 2,
            OpError::Domain { .. } => 1,
        }
    }

    fn domain(message: impl Into<String>) -> Self {
        OpError::Domain {
            message: message.into(),
            detail: None,
        }
    }
}

pub type OpResult = Result<Value, OpError>;

/// Parses a quiver file. Besides the plain formats, accepts any JSON object
/// with a `quiver` field, so one command's output can feed the next.
pub fn parse_input(text: &str) -> Result<Quiver, quivermut::QuiverError> {
    if let Ok(Value::Object(obj)) = serde_json::from_str::<Value>(text) {
        if let Some(inner) = obj.get("quiver") {
            return match inner {
                Value::String(s) => parse_quiver(s),
                other => parse_quiver(&other.to_string()),
            };
        }
    }
    parse_quiver(text)
}

fn input<E: std::fmt::Display>(e: E) -> OpError {
    OpError::Input(e.to_string())
}

fn canonicalizer(name: Option<&str>) -> Result<&'static dyn Canonicalizer, OpError> {
    let name = name.unwrap_or("refined");
    canon::registry().get(name).ok_or_else(|| {
        OpError::Input(format!(
            "unknown canonicalizer {name:?}; available: {}",
            canon::registry().names().join(", ")
        ))
    })
}

pub fn mutate(q: &Quiver, vertex: usize) -> OpResult {
    let m = q.mutate(vertex).map_err(input)?;
    Ok(json!({ "quiver": m }))
}

pub fn apply_seq(q: &Quiver, seq: &[usize]) -> OpResult {
    let m = apply_sequence(q, seq).map_err(input)?;
    let obstructive = check_obstructive(q, seq).map_err(input)?;
    Ok(json!({ "quiver": m, "obstructive": obstructive }))
}

/// Fails with a domain error carrying the witness when the class is infinite.
pub fn class(q: &Quiver, budget: usize, strategy: Option<&str>) -> OpResult {
    let opts = ClassOptions::default()
        .with_cap(budget)
        .with_canonicalizer(canonicalizer(strategy)?);
    let c = enumerate_class_with(q, opts).map_err(|e| OpError::domain(e.to_string()))?;
    let value = serde_json::to_value(c.dump()).expect("serializable");
    match c.witness {
        None => Ok(value),
        Some(w) => Err(OpError::Domain {
            message: format!(
                "mutation class is infinite: sequence {:?} gives {} arrows between {} and {}",
                w.sequence,
                w.quiver.get(w.pair.0, w.pair.1).abs(),
                w.pair.0,
                w.pair.1
            ),
            detail: Some(json!({ "status": "infinite", "witness": w })),
        }),
    }
}

pub fn finite(q: &Quiver, budget: usize) -> OpResult {
    let opts = ClassOptions::default().with_cap(budget);
    let c = enumerate_class_with(q, opts).map_err(|e| OpError::domain(e.to_string()))?;
    Ok(match c.witness {
        None => json!({ "finite": true, "class_size": c.len() }),
        Some(w) => json!({ "finite": false, "witness": w }),
    })
}

pub fn blockdecomp(q: &Quiver, budget: usize) -> OpResult {
    let d = is_block_decomposable_with(q, budget).map_err(|e| OpError::domain(e.to_string()))?;
    Ok(match d {
        None => json!({ "decomposable": false }),
        Some(w) => json!({ "decomposable": true, "witness": w }),
    })
}

pub fn subquiver(q: &Quiver, vertices: Vec<usize>) -> OpResult {
    let vs = VertexSet::new(vertices, Some(q.n())).map_err(input)?;
    let sub = q.full_subquiver(&vs).map_err(input)?;
    Ok(json!({ "quiver": sub, "connected": sub.is_connected() }))
}

pub fn canon(q: &Quiver, strategy: Option<&str>) -> OpResult {
    let c = canonicalizer(strategy)?;
    Ok(serde_json::to_value(c.canonical_form(q)).expect("serializable"))
}

pub fn catalog_list() -> OpResult {
    let entries: Vec<Value> = catalog()
        .entries()
        .map(|e| json!({ "name": e.name(), "params": e.arity(), "domain": e.domain(), "vertices": e.vertex_count() }))
        .collect();
    Ok(json!({ "entries": entries }))
}

pub fn catalog_make(name: &str, params: &[i64]) -> OpResult {
    let q = catalog().make(name, params).map_err(input)?;
    let labels = catalog().get(name).and_then(|e| e.labels());
    let mut v = json!({ "name": name, "params": params, "quiver": q });
    if let Some(l) = labels {
        v["labels"] = json!(l);
    }
    Ok(v)
}

pub fn seeds(q: &Quiver, cap: usize, apply: Option<&[usize]>) -> OpResult {
    let s0 = Seed::initial(q.clone());
    if let Some(seq) = apply {
        let s = s0.apply(seq).map_err(|e| OpError::domain(e.to_string()))?;
        return Ok(json!({ "seed": s.view() }));
    }
    let all = enumerate_seeds(&s0, cap).map_err(|e| OpError::domain(e.to_string()))?;
    let views: Vec<_> = all.iter().map(|s| s.view()).collect();
    Ok(json!({ "count": views.len(), "seeds": views }))
}

pub fn verify(ids: &[String]) -> Result<(Vec<VerificationReport>, bool), OpError> {
    let reg = claims();
    let selected: Vec<&str> = if ids.is_empty() {
        reg.ids()
    } else {
        ids.iter().map(|s| s.as_str()).collect()
    };
    let mut reports = Vec::new();
    for id in selected {
        let claim = reg.get(id).ok_or_else(|| {
            OpError::Input(format!(
                "unknown claim {id:?}; available: {}",
                reg.ids().join(", ")
            ))
        })?;
        reports.push(claim.run());
    }
    let all_pass = reports.iter().all(|r| r.passed());
    Ok((reports, all_pass))
}
