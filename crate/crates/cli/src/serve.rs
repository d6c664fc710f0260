//! JSON-over-HTTP session for the explorer.
//!
//! POSTs go through one mutex and are totally ordered by the revision
//! counter. GETs read the last published snapshot without taking it.

use std::sync::{Arc as Shared, Mutex};
use std::thread;

use arc_swap::ArcSwap;
use cosilt_core::annulus::{strip_geometry, Arc};
use cosilt_core::cosilting::{
    exchange_graph, mutate, tuple_to_pair, tuple_to_rigid, validate_tuple, CosiltingTuple,
    MutationEdge, RigidPoint, PARAMETER_MODEL_NOTE,
};
use cosilt_core::triangulation::SearchBound;
use cosilt_core::{Error, Result};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::commands::{graph_json, parse_arc};

/// Deepest exchange graph served by `GET /graph`.
pub const MAX_GRAPH_DEPTH: usize = 6;

#[derive(Clone, Debug)]
pub enum Step {
    Mutation {
        point: RigidPoint,
        edge: Box<MutationEdge>,
    },
    Reset {
        tuple: CosiltingTuple,
    },
}

impl Step {
    fn to_json(&self) -> Value {
        match self {
            Step::Mutation { point, edge } => json!({
                "action": "mutate",
                "point": point,
                "removed": edge.removed,
                "added": edge.added,
                "kind": edge.kind,
            }),
            Step::Reset { .. } => json!({ "action": "reset" }),
        }
    }
}

/// The state owner. `history` holds each step with the tuple it replaced.
#[derive(Clone, Debug)]
pub struct Session {
    pub initial: CosiltingTuple,
    pub current: CosiltingTuple,
    pub history: Vec<(Step, CosiltingTuple)>,
    pub revision: u64,
    pub bound: SearchBound,
}

impl Session {
    pub fn new(tuple: CosiltingTuple, bound: SearchBound) -> Self {
        Self {
            initial: tuple.clone(),
            current: tuple,
            history: Vec::new(),
            revision: 0,
            bound,
        }
    }

    /// Reapplies the history to the initial tuple.
    pub fn replay(&self) -> Result<CosiltingTuple> {
        let mut t = self.initial.clone();
        for (step, _) in &self.history {
            t = match step {
                Step::Mutation { point, .. } => mutate(&t, point, self.bound)?.0,
                Step::Reset { tuple } => tuple.clone(),
            };
        }
        Ok(t)
    }

    fn apply(&mut self, step: Step, next: CosiltingTuple) {
        let prev = std::mem::replace(&mut self.current, next);
        self.history.push((step, prev));
        self.revision += 1;
    }

    fn undo(&mut self) -> bool {
        match self.history.pop() {
            Some((_, prev)) => {
                self.current = prev;
                self.revision += 1;
                true
            }
            None => false,
        }
    }
}

/// Full `GET /state` payload for a session.
pub fn state_json(s: &Session) -> Value {
    let t = &s.current;
    let points: Vec<Value> = tuple_to_rigid(t)
        .map(|set| {
            set.into_iter()
                .map(|x| json!({ "point": x, "mutable": x.is_mutable(), "kind": point_kind(&x) }))
                .collect()
        })
        .unwrap_or_default();
    let mutable: Vec<Value> = points
        .iter()
        .filter(|p| p["mutable"] == true)
        .map(|p| p["point"].clone())
        .collect();
    let pair = tuple_to_pair(t).map(|p| json!(p)).unwrap_or(Value::Null);
    let mut shown: Vec<Arc> = t.c.iter().copied().collect();
    shown.extend(t.gamma.iter().filter(|g| !t.c.contains(g)));
    let arcs: Vec<Value> = shown
        .iter()
        .map(|a| {
            json!({
                "arc": a,
                "name": a.to_string(),
                "in_c": t.c.contains(a),
                "gamma": t.gamma_index(a),
                "strip": strip_geometry(*a, t.annulus),
            })
        })
        .collect();
    json!({
        "revision": s.revision,
        "tuple": t,
        "hash": t.hash_label(),
        "case": if t.is_finite_case() { "finite" } else { "asymptotic" },
        "pair": pair,
        "points": points,
        "mutable": mutable,
        "history": s.history.iter().map(|(step, _)| step.to_json()).collect::<Vec<_>>(),
        "can_undo": !s.history.is_empty(),
        "parameter_model": PARAMETER_MODEL_NOTE,
        "geometry": {
            "annulus": { "outer": t.annulus.outer(), "inner": t.annulus.inner() },
            "arcs": arcs,
        },
    })
}

fn point_kind(x: &RigidPoint) -> &'static str {
    match x {
        RigidPoint::String(_) => "string",
        RigidPoint::Prufer(_) => "prufer",
        RigidPoint::Adic(_) => "adic",
        RigidPoint::Rest(_) => "rest",
        RigidPoint::Generic => "generic",
        RigidPoint::ShiftedInjective(_) => "injective",
    }
}

struct Snapshot {
    revision: u64,
    tuple: CosiltingTuple,
    state: Value,
}

pub struct App {
    session: Mutex<Session>,
    snapshot: ArcSwap<Snapshot>,
    bound: SearchBound,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reply {
    pub status: u16,
    pub body: Value,
}

#[derive(Deserialize, Default)]
struct PostBody {
    revision: Option<u64>,
    point: Option<String>,
    arc: Option<Value>,
    tuple: Option<Value>,
}

impl App {
    pub fn new(tuple: CosiltingTuple, bound: SearchBound) -> Result<Self> {
        let report = validate_tuple(&tuple, bound)?;
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidTuple(v.message.clone()));
        }
        let session = Session::new(tuple, bound);
        let snapshot = ArcSwap::from_pointee(Self::publish(&session));
        Ok(Self {
            session: Mutex::new(session),
            snapshot,
            bound,
        })
    }

    fn publish(s: &Session) -> Snapshot {
        Snapshot {
            revision: s.revision,
            tuple: s.current.clone(),
            state: state_json(s),
        }
    }

    pub fn revision(&self) -> u64 {
        self.snapshot.load().revision
    }

    /// A copy of the session, for tests and export.
    pub fn session(&self) -> Session {
        self.session.lock().expect("session lock").clone()
    }

    pub fn handle(&self, method: &str, url: &str, body: &str) -> Reply {
        let (path, query) = url.split_once('?').unwrap_or((url, ""));
        match (method, path) {
            ("GET", "/state") => Reply {
                status: 200,
                body: self.snapshot.load().state.clone(),
            },
            ("GET", "/graph") => self.graph(query),
            ("GET", "/schema") => Reply {
                status: 200,
                body: with_revision(schema(), self.revision()),
            },
            ("POST", "/mutate" | "/flip" | "/undo" | "/reset") => self.post(path, body),
            (_, "/state" | "/graph" | "/schema" | "/mutate" | "/flip" | "/undo" | "/reset") => {
                self.error(405, json!({ "error": "method not allowed" }))
            }
            _ => self.error(404, json!({ "error": "not found", "path": path })),
        }
    }

    fn error(&self, status: u16, body: Value) -> Reply {
        Reply {
            status,
            body: with_revision(body, self.revision()),
        }
    }

    fn graph(&self, query: &str) -> Reply {
        let mut depth = 1;
        for (k, v) in url::form_urlencoded::parse(query.as_bytes()) {
            if k == "depth" {
                match v.parse::<usize>() {
                    Ok(d) if d <= MAX_GRAPH_DEPTH => depth = d,
                    _ => {
                        return self.error(
                            422,
                            json!({ "error": "invalid depth", "max": MAX_GRAPH_DEPTH }),
                        )
                    }
                }
            }
        }
        let snap = self.snapshot.load_full();
        match exchange_graph(&snap.tuple, depth, self.bound) {
            Ok(g) => {
                let mut body = graph_json(&g);
                body["depth"] = json!(depth);
                body["dot"] = json!(g.to_dot());
                Reply {
                    status: 200,
                    body: with_revision(body, snap.revision),
                }
            }
            Err(e) => Reply {
                status: 422,
                body: with_revision(json!({ "error": e.to_string() }), snap.revision),
            },
        }
    }

    fn post(&self, path: &str, body: &str) -> Reply {
        let req: PostBody = if body.trim().is_empty() {
            PostBody::default()
        } else {
            match serde_json::from_str(body) {
                Ok(r) => r,
                Err(e) => {
                    return self.error(
                        400,
                        json!({ "error": "malformed body", "detail": e.to_string() }),
                    )
                }
            }
        };
        let mut s = self.session.lock().expect("session lock");
        if let Some(r) = req.revision {
            if r != s.revision {
                return Reply {
                    status: 409,
                    body: json!({ "error": "stale revision", "revision": s.revision }),
                };
            }
        }
        let outcome = match path {
            "/mutate" => mutate_request(&mut s, req.point.as_deref()),
            "/flip" => flip_request(&mut s, req.arc.as_ref()),
            "/undo" => {
                if s.undo() {
                    Ok(())
                } else {
                    Err(json!({ "error": "nothing to undo" }))
                }
            }
            _ => reset_request(&mut s, req.tuple),
        };
        match outcome {
            Ok(()) => {
                let snap = Self::publish(&s);
                let state = snap.state.clone();
                self.snapshot.store(Shared::new(snap));
                Reply {
                    status: 200,
                    body: state,
                }
            }
            Err(body) => Reply {
                status: 422,
                body: with_revision(body, s.revision),
            },
        }
    }
}

fn with_revision(mut body: Value, revision: u64) -> Value {
    if let Value::Object(m) = &mut body {
        m.insert("revision".into(), json!(revision));
    }
    body
}

fn mutate_at(s: &mut Session, x: RigidPoint) -> std::result::Result<(), Value> {
    let points = tuple_to_rigid(&s.current).map_err(|e| json!({ "error": e.to_string() }))?;
    if !points.contains(&x) {
        return Err(json!({ "error": "unknown point", "point": x }));
    }
    if !x.is_mutable() {
        return Err(json!({ "error": "immutable", "point": x }));
    }
    let (next, edge) = mutate(&s.current, &x, s.bound)
        .map_err(|e| json!({ "error": e.to_string(), "point": x }))?;
    s.apply(
        Step::Mutation {
            point: x,
            edge: Box::new(edge),
        },
        next,
    );
    Ok(())
}

fn mutate_request(s: &mut Session, point: Option<&str>) -> std::result::Result<(), Value> {
    let text = point.ok_or_else(|| json!({ "error": "missing point" }))?;
    let x = RigidPoint::parse_on(text, s.current.annulus)
        .map_err(|_| json!({ "error": "invalid point", "point": text }))?;
    mutate_at(s, x)
}

fn flip_request(s: &mut Session, arc: Option<&Value>) -> std::result::Result<(), Value> {
    let raw = arc.ok_or_else(|| json!({ "error": "missing arc" }))?;
    let text = match raw {
        Value::String(t) => t.clone(),
        other => other.to_string(),
    };
    let a = parse_arc(&text, s.current.annulus)
        .map_err(|e| json!({ "error": "invalid arc", "detail": e.to_string() }))?;
    if !s.current.c.contains(&a) {
        return Err(json!({ "error": "arc not in C", "arc": a }));
    }
    let x = match s.current.gamma_index(&a) {
        Some(i) => RigidPoint::ShiftedInjective(i),
        None => RigidPoint::String(a),
    };
    mutate_at(s, x)
}

fn reset_request(s: &mut Session, tuple: Option<Value>) -> std::result::Result<(), Value> {
    let t = match tuple {
        None => s.initial.clone(),
        Some(v) => serde_json::from_value::<CosiltingTuple>(v)
            .map_err(|e| json!({ "error": "invalid tuple", "detail": e.to_string() }))?,
    };
    let report = validate_tuple(&t, s.bound)
        .map_err(|e| json!({ "error": "invalid tuple", "detail": e.to_string() }))?;
    if !report.is_valid() {
        return Err(json!({ "error": "invalid tuple", "violations": report.violations }));
    }
    s.apply(Step::Reset { tuple: t.clone() }, t);
    Ok(())
}

/// JSON schemas of the documents the server reads and writes.
pub fn schema() -> Value {
    let arc = json!({
        "oneOf": [
            { "type": "object", "required": ["kind", "outer", "inner", "winding"],
              "properties": { "kind": { "const": "bridging" }, "outer": { "type": "integer" }, "inner": { "type": "integer" }, "winding": { "type": "integer" } } },
            { "type": "object", "required": ["kind", "boundary", "start", "span"],
              "properties": { "kind": { "const": "peripheral" }, "boundary": { "enum": ["outer", "inner"] }, "start": { "type": "integer" }, "span": { "type": "integer", "minimum": 2 } } },
            { "type": "object", "required": ["kind", "boundary", "index", "spiral"],
              "properties": { "kind": { "const": "asymptotic" }, "boundary": { "enum": ["outer", "inner"] }, "index": { "type": "integer" }, "spiral": { "enum": ["cw", "ccw"] } } }
        ]
    });
    let annulus = json!({
        "type": "object", "required": ["outer", "inner"],
        "properties": { "outer": { "type": "integer", "minimum": 1 }, "inner": { "type": "integer", "minimum": 1 } }
    });
    let labels = json!({ "type": "array", "items": { "type": "string" } });
    let tuple = json!({
        "type": "object", "required": ["annulus", "C", "P", "A", "star", "rest_side", "gamma"],
        "properties": {
            "annulus": annulus, "C": { "type": "array", "items": arc }, "P": labels, "A": labels,
            "star": { "enum": ["G", "noG"] }, "rest_side": { "enum": ["prufer", "adic"] },
            "labels": labels, "gamma": { "type": "array", "items": arc }
        }
    });
    let point = json!({
        "type": "string",
        "description": "M:<arc>, I<i>, prufer:<label>, adic:<label>, rest:prufer, rest:adic or G"
    });
    json!({
        "arc": arc,
        "triangulation": { "type": "object", "required": ["annulus", "arcs"], "properties": { "annulus": annulus, "arcs": { "type": "array", "items": arc } } },
        "tuple": tuple,
        "point": point,
        "representation": {
            "type": "object", "required": ["dims", "arrows"],
            "properties": {
                "dims": { "type": "object", "additionalProperties": { "type": "integer", "minimum": 0 } },
                "arrows": { "type": "object", "additionalProperties": { "type": "array", "items": { "type": "array", "items": { "type": "string" } } } }
            }
        },
        "requests": {
            "/mutate": { "type": "object", "required": ["point"], "properties": { "point": point, "revision": { "type": "integer" } } },
            "/flip": { "type": "object", "required": ["arc"], "properties": { "arc": arc, "revision": { "type": "integer" } } },
            "/undo": { "type": "object", "properties": { "revision": { "type": "integer" } } },
            "/reset": { "type": "object", "properties": { "tuple": tuple, "revision": { "type": "integer" } } }
        }
    })
}

pub fn bind(
    addr: &str,
) -> std::result::Result<tiny_http::Server, Box<dyn std::error::Error + Send + Sync>> {
    tiny_http::Server::http(addr)
}

/// Serves requests on `workers` threads until the server is dropped.
pub fn run(app: Shared<App>, server: tiny_http::Server, workers: usize) {
    let server = Shared::new(server);
    let handles: Vec<_> = (0..workers.max(1))
        .map(|_| {
            let (app, server) = (app.clone(), server.clone());
            thread::spawn(move || {
                while let Ok(mut req) = server.recv() {
                    let mut body = String::new();
                    let reply = if req.as_reader().read_to_string(&mut body).is_err() {
                        app.error(400, json!({ "error": "body is not UTF-8" }))
                    } else if *req.method() == tiny_http::Method::Options {
                        Reply {
                            status: 204,
                            body: Value::Null,
                        }
                    } else {
                        app.handle(req.method().as_str(), req.url(), &body)
                    };
                    let text = if reply.body.is_null() {
                        String::new()
                    } else {
                        reply.body.to_string()
                    };
                    let mut resp =
                        tiny_http::Response::from_string(text).with_status_code(reply.status);
                    for (k, v) in [
                        ("Content-Type", "application/json"),
                        ("Access-Control-Allow-Origin", "*"),
                        ("Access-Control-Allow-Methods", "GET, POST, OPTIONS"),
                        ("Access-Control-Allow-Headers", "Content-Type"),
                    ] {
                        resp.add_header(
                            tiny_http::Header::from_bytes(k, v).expect("static header"),
                        );
                    }
                    let _ = req.respond(resp);
                }
            })
        })
        .collect();
    for h in handles {
        let _ = h.join();
    }
}
