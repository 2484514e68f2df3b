//! Newline-delimited JSON over TCP. One request object per line, one
//! response object per line, in order. See docs/protocol.md.

use std::io::{BufRead, BufReader, Write};
use std::net::{TcpListener, TcpStream};

use quivermut::Quiver;
use serde_json::{json, Map, Value};

use crate::ops::{self, OpError, DEFAULT_BUDGET};

pub fn serve(port: u16) -> std::io::Result<()> {
    let listener = TcpListener::bind(("127.0.0.1", port))?;
    println!("listening on {}", listener.local_addr()?);
    std::io::stdout().flush()?;
    for stream in listener.incoming() {
        let stream = stream?;
        std::thread::spawn(move || {
            let _ = handle(stream);
        });
    }
    Ok(())
}

fn handle(stream: TcpStream) -> std::io::Result<()> {
    let mut writer = stream.try_clone()?;
    for line in BufReader::new(stream).lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let response = respond(&line);
        writeln!(writer, "{response}")?;
        writer.flush()?;
    }
    Ok(())
}

/// Answers one request line. Never fails: problems become error objects.
pub fn respond(line: &str) -> Value {
    let request: Value = match serde_json::from_str(line) {
        Ok(v) => v,
        Err(e) => {
            return error_response(
                Value::Null,
                "parse_error",
                &format!("line 1, column {}: {e}", e.column()),
            )
        }
    };
    let id = request.get("id").cloned().unwrap_or(Value::Null);
    let Some(obj) = request.as_object() else {
        return error_response(id, "bad_request", "request must be a JSON object");
    };
    match dispatch(obj) {
        Ok(mut v) => {
            v["id"] = id;
            v
        }
        Err(Reject::Request(msg)) => error_response(id, "bad_request", &msg),
        Err(Reject::Op(e)) => {
            let mut v = error_response(id, e.code(), e.message());
            if let OpError::Domain {
                detail: Some(d), ..
            } = e
            {
                v["error"]["detail"] = d;
            }
            v
        }
    }
}

fn error_response(id: Value, code: &str, message: &str) -> Value {
    json!({ "id": id, "error": { "code": code, "message": message } })
}

enum Reject {
    Request(String),
    Op(OpError),
}

impl From<OpError> for Reject {
    fn from(e: OpError) -> Self {
        Reject::Op(e)
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, Reject> {
    obj.get(key)
        .ok_or_else(|| Reject::Request(format!("missing field {key:?}")))
}

fn quiver(obj: &Map<String, Value>) -> Result<Quiver, Reject> {
    let text = match field(obj, "quiver")? {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    ops::parse_input(&text).map_err(|e| Reject::Op(OpError::Input(e.to_string())))
}

fn usize_field(obj: &Map<String, Value>, key: &str) -> Result<usize, Reject> {
    field(obj, key)?
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| Reject::Request(format!("{key:?} must be a non-negative integer")))
}

fn usize_list(obj: &Map<String, Value>, key: &str) -> Result<Vec<usize>, Reject> {
    let arr = field(obj, key)?
        .as_array()
        .ok_or_else(|| Reject::Request(format!("{key:?} must be an array")))?;
    arr.iter()
        .map(|v| {
            v.as_u64()
                .map(|x| x as usize)
                .ok_or_else(|| Reject::Request(format!("{key:?} must hold non-negative integers")))
        })
        .collect()
}

fn budget(obj: &Map<String, Value>, default: usize) -> Result<usize, Reject> {
    match obj.get("budget") {
        None => Ok(default),
        Some(_) => usize_field(obj, "budget"),
    }
}

fn dispatch(obj: &Map<String, Value>) -> Result<Value, Reject> {
    let op = field(obj, "op")?
        .as_str()
        .ok_or_else(|| Reject::Request("\"op\" must be a string".into()))?;
    let out = match op {
        "mutate" => ops::mutate(&quiver(obj)?, usize_field(obj, "vertex")?)?,
        "apply_seq" => ops::apply_seq(&quiver(obj)?, &usize_list(obj, "sequence")?)?,
        "class" => ops::class(
            &quiver(obj)?,
            budget(obj, DEFAULT_BUDGET)?,
            obj.get("strategy").and_then(Value::as_str),
        )?,
        "finite" => ops::finite(&quiver(obj)?, budget(obj, DEFAULT_BUDGET)?)?,
        "blockdecomp" => ops::blockdecomp(
            &quiver(obj)?,
            budget(obj, quivermut::blocks::DEFAULT_BUDGET)?,
        )?,
        "subquiver" => ops::subquiver(&quiver(obj)?, usize_list(obj, "vertices")?)?,
        "canon" => ops::canon(&quiver(obj)?, obj.get("strategy").and_then(Value::as_str))?,
        "catalog" => match obj.get("name").and_then(Value::as_str) {
            None => ops::catalog_list()?,
            Some(name) => {
                let params: Vec<i64> = match obj.get("params") {
                    None => Vec::new(),
                    Some(p) => serde_json::from_value(p.clone()).map_err(|_| {
                        Reject::Request("\"params\" must be an array of integers".into())
                    })?,
                };
                ops::catalog_make(name, &params)?
            }
        },
        "seeds" => ops::seeds(
            &quiver(obj)?,
            obj.get("cap").and_then(Value::as_u64).unwrap_or(1000) as usize,
            None,
        )?,
        other => return Err(Reject::Request(format!("unknown op {other:?}"))),
    };
    Ok(out)
}
