use std::io::{BufRead, BufReader, Write};
use std::net::TcpStream;
use std::process::{Child, Command, Stdio};

use serde_json::{json, Value};

const X6_EDGES: &str = "0 1 1\n1 2 1\n2 3 2\n";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quivermut"))
}

/// Runs with `stdin` piped to `--in -`; returns (exit code, parsed stdout).
fn run(args: &[&str], stdin: &str) -> (i32, Value) {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let v =
        serde_json::from_str(&text).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {text}"));
    (out.status.code().unwrap(), v)
}

fn x6_json() -> String {
    let (code, v) = run(&["catalog", "make", "X6"], "");
    assert_eq!(code, 0);
    v.to_string()
}

#[test]
fn mutate_reads_edge_list_from_stdin() {
    let (code, v) = run(&["mutate", "--in", "-", "--at", "1"], "0 1 1\n1 2 1\n");
    assert_eq!(code, 0);
    assert_eq!(
        v["quiver"]["b"],
        json!([[0, 1, -1], [-1, 0, 1], [1, -1, 0]])
    );
}

#[test]
fn output_of_one_command_feeds_the_next() {
    let (_, m) = run(&["mutate", "--in", "-", "--at", "1"], "0 1 1\n1 2 1\n");
    let (code, back) = run(&["mutate", "--in", "-", "--at", "1"], &m.to_string());
    assert_eq!(code, 0);
    assert_eq!(
        back["quiver"]["b"],
        json!([[0, -1, 0], [1, 0, -1], [0, 1, 0]])
    );
}

#[test]
fn x6_class_and_finiteness() {
    let x6 = x6_json();
    let (code, v) = run(&["class", "--in", "-"], &x6);
    assert_eq!(code, 0);
    assert_eq!(v["size"], 5);
    assert_eq!(v["status"], "finite");
    let (code, v) = run(&["finite", "--in", "-"], &x6);
    assert_eq!((code, v), (0, json!({ "finite": true, "class_size": 5 })));
    let (code, v) = run(&["blockdecomp", "--in", "-"], &x6);
    assert_eq!((code, v), (0, json!({ "decomposable": false })));
}

#[test]
fn infinite_class_is_a_domain_error_with_witness() {
    let (code, v) = run(
        &["class", "--in", "-"],
        X6_EDGES.replace("2 3 2", "2 3 3").as_str(),
    );
    assert_eq!(code, 1);
    assert_eq!(v["error"]["code"], "domain_error");
    assert_eq!(v["error"]["detail"]["status"], "infinite");
    let (code, v) = run(&["finite", "--in", "-"], "0 1 3\n1 2 1\n");
    assert_eq!(code, 0);
    assert_eq!(v["finite"], false);
}

#[test]
fn parse_errors_exit_2_with_line() {
    let (code, v) = run(&["canon", "--in", "-"], "0 1 1\n1 2 x\n");
    assert_eq!(code, 2);
    assert_eq!(v["error"]["code"], "bad_input");
    assert!(
        v["error"]["message"].as_str().unwrap().contains("line 2"),
        "{v}"
    );
    let (code, _) = run(&["canon", "--in", "-"], "{\"n\": 2, \"b\": [[0,1],[1,0]]}");
    assert_eq!(code, 2);
    let (code, _) = run(&["mutate", "--in", "-", "--at", "7"], "0 1 1\n");
    assert_eq!(code, 2);
    let (code, _) = run(&["catalog", "make", "D", "2"], "");
    assert_eq!(code, 2);
}

#[test]
fn canon_strategies_agree() {
    let x6 = x6_json();
    let (_, a) = run(&["canon", "--in", "-"], &x6);
    let (_, b) = run(&["canon", "--in", "-", "--canon", "brute"], &x6);
    assert_eq!(a["matrix"], b["matrix"]);
    let (code, _) = run(&["canon", "--in", "-", "--canon", "nope"], &x6);
    assert_eq!(code, 2);
}

#[test]
fn seeds_and_apply() {
    let a2 = "{\"n\": 2, \"b\": [[0,-1],[1,0]]}";
    let (code, v) = run(&["seeds", "--in", "-"], a2);
    assert_eq!((code, v["count"].clone()), (0, json!(5)));
    let (code, v) = run(&["seeds", "--in", "-", "--apply", "0"], a2);
    assert_eq!(code, 0);
    assert_eq!(v["seed"]["cluster"][0], "(1 + x2)/x1");
    let (code, v) = run(&["seeds", "--in", "-", "--cap", "50"], "0 1 2\n");
    assert_eq!(code, 1);
    assert!(v["error"]["message"]
        .as_str()
        .unwrap()
        .contains("cap exceeded"));
}

#[test]
fn subquiver_and_apply_seq() {
    let x6 = x6_json();
    let (code, v) = run(&["subquiver", "--in", "-", "--vertices", "0,1,2"], &x6);
    assert_eq!(code, 0);
    assert_eq!(v["quiver"]["n"], 3);
    let (code, v) = run(&["apply-seq", "--in", "-", "--seq", "0,1,0"], &x6);
    assert_eq!(code, 0);
    assert!(v["obstructive"].is_boolean());
}

#[test]
fn verify_reports_and_exit_code() {
    let (code, v) = run(
        &[
            "verify",
            "--claim",
            "x6_x7_finite",
            "--claim",
            "not_block_decomposable",
        ],
        "",
    );
    assert_eq!(code, 0);
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert!(reports.iter().all(|r| r["status"] == "pass"), "{v}");
    let (code, v) = run(&["verify", "--claim", "no_such_claim"], "");
    assert_eq!((code, v["error"]["code"].clone()), (2, json!("bad_input")));
}

struct Server {
    child: Child,
    port: u16,
}

impl Server {
    fn start() -> Server {
        let mut child = bin()
            .args(["serve", "--port", "0"])
            .stdout(Stdio::piped())
            .spawn()
            .unwrap();
        let mut line = String::new();
        BufReader::new(child.stdout.take().unwrap())
            .read_line(&mut line)
            .unwrap();
        let port = line.trim().rsplit(':').next().unwrap().parse().unwrap();
        Server { child, port }
    }

    fn connect(&self) -> (TcpStream, BufReader<TcpStream>) {
        let s = TcpStream::connect(("127.0.0.1", self.port)).unwrap();
        let r = BufReader::new(s.try_clone().unwrap());
        (s, r)
    }
}

impl Drop for Server {
    fn drop(&mut self) {
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}

fn ask(conn: &mut (TcpStream, BufReader<TcpStream>), request: &str) -> Value {
    writeln!(conn.0, "{request}").unwrap();
    let mut line = String::new();
    conn.1.read_line(&mut line).unwrap();
    serde_json::from_str(&line).unwrap()
}

fn without_id(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("id");
    v
}

#[test]
fn serve_matches_cli_output() {
    let server = Server::start();
    let mut conn = server.connect();
    let x6 = x6_json();
    let q: Value = serde_json::from_str(&x6).unwrap();
    let cases: Vec<(Value, Vec<&str>, String)> = vec![
        (
            json!({"op": "mutate", "quiver": q, "vertex": 2}),
            vec!["mutate", "--in", "-", "--at", "2"],
            x6.clone(),
        ),
        (
            json!({"op": "class", "quiver": q}),
            vec!["class", "--in", "-"],
            x6.clone(),
        ),
        (
            json!({"op": "finite", "quiver": q}),
            vec!["finite", "--in", "-"],
            x6.clone(),
        ),
        (
            json!({"op": "blockdecomp", "quiver": X6_EDGES}),
            vec!["blockdecomp", "--in", "-"],
            X6_EDGES.into(),
        ),
        (
            json!({"op": "canon", "quiver": q}),
            vec!["canon", "--in", "-"],
            x6.clone(),
        ),
        (
            json!({"op": "catalog"}),
            vec!["catalog", "list"],
            String::new(),
        ),
        (
            json!({"op": "catalog", "name": "D_hat", "params": [5]}),
            vec!["catalog", "make", "D_hat", "5"],
            String::new(),
        ),
        (
            json!({"op": "class", "quiver": "0 1 3\n1 2 1\n"}),
            vec!["class", "--in", "-"],
            "0 1 3\n1 2 1\n".into(),
        ),
    ];
    for (i, (request, args, stdin)) in cases.into_iter().enumerate() {
        let mut request = request;
        request["id"] = json!(i);
        let response = ask(&mut conn, &request.to_string());
        assert_eq!(response["id"], json!(i));
        let (_, cli) = run(&args, &stdin);
        // Errors have the same `{error: {..}}` shape on both sides.
        assert_eq!(without_id(response), cli, "{args:?}");
    }
}

#[test]
fn serve_survives_bad_requests() {
    let server = Server::start();
    let mut conn = server.connect();
    let v = ask(&mut conn, "{not json");
    assert_eq!(v["error"]["code"], "parse_error");
    assert_eq!(v["id"], Value::Null);
    let v = ask(&mut conn, r#"{"id": "a", "op": "explode"}"#);
    assert_eq!(
        (v["id"].clone(), v["error"]["code"].clone()),
        (json!("a"), json!("bad_request"))
    );
    let v = ask(
        &mut conn,
        r#"{"id": 1, "op": "mutate", "quiver": "0 1 1", "vertex": 5}"#,
    );
    assert_eq!(v["error"]["code"], "bad_input");
    let v = ask(&mut conn, r#"{"id": 2, "op": "mutate", "quiver": "0 1 1"}"#);
    assert_eq!(v["error"]["code"], "bad_request");
    let v = ask(
        &mut conn,
        r#"{"id": 3, "op": "mutate", "quiver": "0 1 1", "vertex": 0}"#,
    );
    assert_eq!(v["quiver"]["b"], json!([[0, 1], [-1, 0]]));
    assert_eq!(v["id"], 3);
}

#[test]
fn serve_handles_concurrent_connections() {
    let server = Server::start();
    let handles: Vec<_> = (0..4)
        .map(|i| {
            let mut conn = server.connect();
            std::thread::spawn(move || {
                let v = ask(
                    &mut conn,
                    &json!({"id": i, "op": "catalog", "name": "A", "params": [i + 2]}).to_string(),
                );
                assert_eq!(v["id"], i);
                assert_eq!(v["quiver"]["n"], i + 2);
            })
        })
        .collect();
    for h in handles {
        h.join().unwrap();
    }
}
