use serde_json::{json, Map, Value};

use sp6flags::matrix::Matrix;
use sp6flags::qforms::{qform_invariants, QForm};
use sp6flags::scalars::{Field, FieldCtx};
use sp6flags::wedge::TriVector;

pub fn scalar<F: Field>(x: &F) -> Value {
    Value::String(x.to_string())
}

pub fn scalars<F: Field>(xs: &[F]) -> Value {
    Value::Array(xs.iter().map(scalar).collect())
}

pub fn matrix<F: Field>(m: &Matrix<F>) -> Value {
    Value::Array((0..m.rows()).map(|r| Value::Array((0..m.cols()).map(|c| scalar(&m[(r, c)])).collect())).collect())
}

pub fn trivector<F: Field>(t: &TriVector<F>) -> Value {
    let map: Map<String, Value> = t.to_json_map().into_iter().map(|(k, v)| (k, Value::String(v))).collect();
    json!({ "text": t.to_text(), "coords": map })
}

/// `{"field": .., "diag": [..]}`, with invariants over Q.
pub fn qform<F: Field>(q: &QForm<F>) -> Value {
    let mut out = json!({
        "field": F::describe(q.ctx()).to_string(),
        "diag": scalars(q.diag()),
    });
    if let (FieldCtx::Rationals, Ok(inv)) = (F::describe(q.ctx()), qform_invariants(q)) {
        let hasse: Map<String, Value> = inv.hasse.iter().map(|(p, s)| (p.to_string(), json!(s))).collect();
        out["invariants"] = json!({
            "dim": inv.dim,
            "disc": inv.disc.to_string(),
            "signature": [inv.signature.0, inv.signature.1],
            "hasse": hasse,
        });
    }
    out
}
