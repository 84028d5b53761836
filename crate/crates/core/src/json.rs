//! JSON encodings of the domain types, shared by the CLI and external
//! callers. Integers are emitted as JSON numbers when they fit in i64 and
//! as decimal strings otherwise; groups are `{"factors":[...]}`, elements
//! `{"coords":[...]}`, Q/Z values `"p/q"` strings, and wedge elements carry
//! 1-based index subsets per component.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use std::str::FromStr;

use crate::abelian::{FinGenAbGroup, GroupElement, QmodZ};
use crate::error::{Error, Result};
use crate::exterior::{ElementaryOp, WedgeElement, WedgePower};
use crate::matrix::{IntMatrix, SnfResult};
use crate::qtorus::QuantumTorusSpec;

pub fn bigint_to_value(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

pub fn value_to_bigint(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::InvalidInput(format!("not an integer: {n}"))),
        Value::String(s) => {
            BigInt::from_str(s).map_err(|_| Error::InvalidInput(format!("not an integer: {s:?}")))
        }
        other => Err(Error::InvalidInput(format!("expected an integer, got {other}"))),
    }
}

fn bigints_to_value(ns: &[BigInt]) -> Value {
    Value::Array(ns.iter().map(bigint_to_value).collect())
}

fn value_to_bigints(v: &Value) -> Result<Vec<BigInt>> {
    v.as_array()
        .ok_or_else(|| Error::InvalidInput(format!("expected an array, got {v}")))?
        .iter()
        .map(value_to_bigint)
        .collect()
}

pub fn group_to_value(g: &FinGenAbGroup) -> Value {
    json!({ "factors": bigints_to_value(g.factors()) })
}

pub fn value_to_group(v: &Value) -> Result<FinGenAbGroup> {
    let factors = v
        .get("factors")
        .ok_or_else(|| Error::InvalidInput("group object needs a \"factors\" field".into()))?;
    FinGenAbGroup::new(value_to_bigints(factors)?)
}

pub fn element_to_value(e: &GroupElement) -> Value {
    json!({ "coords": bigints_to_value(e.coords()) })
}

pub fn value_to_element(v: &Value, g: &FinGenAbGroup) -> Result<GroupElement> {
    let coords = v
        .get("coords")
        .ok_or_else(|| Error::InvalidInput("element object needs a \"coords\" field".into()))?;
    g.element(value_to_bigints(coords)?)
}

pub fn matrix_to_value(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| bigints_to_value(&m.row(i)))
            .collect(),
    )
}

pub fn value_to_matrix(v: &Value) -> Result<IntMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::InvalidInput("matrix must be an array of rows".into()))?;
    let parsed: Vec<Vec<BigInt>> = rows.iter().map(value_to_bigints).collect::<Result<_>>()?;
    if parsed.is_empty() {
        return Ok(IntMatrix::identity(0));
    }
    IntMatrix::from_bigint_rows(&parsed)
}

pub fn snf_to_value(s: &SnfResult) -> Value {
    json!({
        "s": matrix_to_value(&s.s),
        "u": matrix_to_value(&s.u),
        "v": matrix_to_value(&s.v),
        "diagonal": bigints_to_value(&s.diagonal()),
    })
}

pub fn qmodz_to_value(q: &QmodZ) -> Value {
    json!(format!("{}/{}", q.num(), q.den()))
}

pub fn value_to_qmodz(v: &Value) -> Result<QmodZ> {
    let s = v
        .as_str()
        .ok_or_else(|| Error::InvalidInput(format!("expected a \"p/q\" string, got {v}")))?;
    let (num, den) = s
        .split_once('/')
        .ok_or_else(|| Error::InvalidInput(format!("expected \"p/q\", got {s:?}")))?;
    let num = BigInt::from_str(num.trim())
        .map_err(|_| Error::InvalidInput(format!("bad numerator in {s:?}")))?;
    let den = BigInt::from_str(den.trim())
        .map_err(|_| Error::InvalidInput(format!("bad denominator in {s:?}")))?;
    QmodZ::new(num, den)
}

/// Wedge elements list their components with 1-based index subsets.
pub fn wedge_to_value(w: &WedgeElement) -> Value {
    let components: Vec<Value> = w
        .power()
        .components()
        .iter()
        .zip(w.coords())
        .map(|(c, coord)| {
            json!({
                "subset": c.subset.iter().map(|&i| i + 1).collect::<Vec<usize>>(),
                "modulus": bigint_to_value(&c.modulus),
                "coord": bigint_to_value(coord),
            })
        })
        .collect();
    json!({ "degree": w.power().degree(), "components": components })
}

pub fn wedge_power_to_value(p: &WedgePower) -> Value {
    let components: Vec<Value> = p
        .components()
        .iter()
        .map(|c| {
            json!({
                "subset": c.subset.iter().map(|&i| i + 1).collect::<Vec<usize>>(),
                "modulus": bigint_to_value(&c.modulus),
            })
        })
        .collect();
    json!({ "degree": p.degree(), "components": components })
}

pub fn elem_op_to_value(op: &ElementaryOp) -> Value {
    json!({
        "target": op.target,
        "source": op.source,
        "mult": bigint_to_value(&op.mult),
    })
}

pub fn value_to_elem_op(v: &Value) -> Result<ElementaryOp> {
    let idx = |key: &str| -> Result<usize> {
        v.get(key)
            .and_then(Value::as_u64)
            .map(|u| u as usize)
            .ok_or_else(|| Error::InvalidInput(format!("operation needs an index field {key:?}")))
    };
    let mult = v
        .get("mult")
        .ok_or_else(|| Error::InvalidInput("operation needs a \"mult\" field".into()))?;
    ElementaryOp::new(idx("target")?, idx("source")?, value_to_bigint(mult)?)
}

pub fn char_tuple_to_value(chars: &[GroupElement]) -> Value {
    Value::Array(chars.iter().map(element_to_value).collect())
}

pub fn value_to_char_tuple(v: &Value, g: &FinGenAbGroup) -> Result<Vec<GroupElement>> {
    v.as_array()
        .ok_or_else(|| Error::InvalidInput("expected an array of elements".into()))?
        .iter()
        .map(|e| value_to_element(e, g))
        .collect()
}

pub fn qtorus_spec_to_value(s: &QuantumTorusSpec) -> Value {
    json!({
        "degrees": bigints_to_value(s.degrees()),
        "exponents": bigints_to_value(s.exponents()),
    })
}

pub fn value_to_qtorus_spec(v: &Value) -> Result<QuantumTorusSpec> {
    let get = |key: &str| -> Result<Vec<BigInt>> {
        value_to_bigints(
            v.get(key)
                .ok_or_else(|| Error::InvalidInput(format!("spec needs a {key:?} field")))?,
        )
    };
    QuantumTorusSpec::new(get("degrees")?, get("exponents")?)
}

pub fn gram_to_value(gram: &[Vec<QmodZ>]) -> Value {
    Value::Array(
        gram.iter()
            .map(|row| Value::Array(row.iter().map(qmodz_to_value).collect()))
            .collect(),
    )
}

/// Build an object with deterministic (sorted) keys from pairs.
pub fn object(pairs: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in pairs {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}
