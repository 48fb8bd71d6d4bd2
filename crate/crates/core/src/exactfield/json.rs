//! JSON forms of field descriptors and field elements.
//!
//! Descriptors: `{"kind":"prime","p":3}`, `{"kind":"Q"}`, `{"kind":"Fp_t","p":2}`
//! and `{"kind":"ext","base":<descriptor>,"modulus":[c0,c1,...]}`.
//!
//! Elements: integers for `F_p`, coefficient arrays for extensions,
//! `{"num":..,"den":..}` for `Q` (integers or decimal strings) and for `F_p(t)`
//! (coefficient arrays in `t`).

use serde_json::{json, Value};

use super::ext::ext_make;
use super::field::{reduce_signed, Elem, Field, FieldKind, RatFun};
use super::fpoly::{self, FPoly};
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::rational::{bigint_from_json, q_from_json, q_to_json};

pub fn field_to_json(field: &Field) -> Value {
    match field.kind() {
        FieldKind::Prime(p) => json!({"kind": "prime", "p": p}),
        FieldKind::Rationals => json!({"kind": "Q"}),
        FieldKind::RationalFunctions(p) => json!({"kind": "Fp_t", "p": p}),
        FieldKind::Ext(e) => json!({
            "kind": "ext",
            "base": field_to_json(&e.base),
            "modulus": e.modulus.to_json(),
        }),
    }
}

/// Parses a descriptor. Extension moduli go through the checked constructor.
pub fn field_from_json(v: &Value) -> Result<Field> {
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Input("field descriptor needs a \"kind\"".into()))?;
    let get_p = || -> Result<u64> {
        v.get("p")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Input(format!("field kind {kind:?} needs an integer \"p\"")))
    };
    match kind {
        "prime" => Field::prime(get_p()?),
        "Q" => Ok(Field::rationals()),
        "Fp_t" => Field::rational_functions(get_p()?),
        "ext" => {
            let base = field_from_json(v.get("base").ok_or_else(|| Error::Input("ext needs a \"base\"".into()))?)?;
            let modulus = Poly::from_json(
                &base,
                v.get("modulus").ok_or_else(|| Error::Input("ext needs a \"modulus\"".into()))?,
            )?;
            Ok(ext_make(&base, &modulus)?.field)
        }
        other => Err(Error::Input(format!("unknown field kind {other:?}"))),
    }
}

fn fpoly_to_json(a: &[u64]) -> Value {
    Value::Array(a.iter().map(|&c| json!(c)).collect())
}

fn fpoly_from_json(v: &Value, p: u64) -> Result<FPoly> {
    match v {
        Value::Array(a) => {
            let mut out = a.iter().map(|c| Ok(reduce_signed(&bigint_from_json(c)?, p))).collect::<Result<FPoly>>()?;
            fpoly::trim(&mut out);
            Ok(out)
        }
        _ => Ok(fpoly::constant(reduce_signed(&bigint_from_json(v)?, p), p)),
    }
}

pub fn elem_to_json(field: &Field, a: &Elem) -> Value {
    match a {
        Elem::Int(x) => json!(x),
        Elem::Rat(r) => {
            if r.is_integer() {
                crate::rational::bigint_to_json(r.numer())
            } else {
                q_to_json(r)
            }
        }
        Elem::Fun(f) => {
            if f.is_polynomial() {
                fpoly_to_json(&f.num)
            } else {
                json!({"num": fpoly_to_json(&f.num), "den": fpoly_to_json(&f.den)})
            }
        }
        Elem::Coeffs(v) => {
            let base = field.base().expect("extension element");
            Value::Array(v.iter().map(|c| elem_to_json(base, c)).collect())
        }
    }
}

pub fn elem_from_json(field: &Field, v: &Value) -> Result<Elem> {
    match field.kind() {
        FieldKind::Prime(p) => Ok(Elem::Int(reduce_signed(&bigint_from_json(v)?, *p))),
        FieldKind::Rationals => Ok(Elem::Rat(Box::new(q_from_json(v)?))),
        FieldKind::RationalFunctions(p) => {
            let (num, den) = match v {
                Value::Object(m) => {
                    let num = fpoly_from_json(m.get("num").ok_or_else(|| Error::Input("missing num".into()))?, *p)?;
                    let den = match m.get("den") {
                        Some(d) => fpoly_from_json(d, *p)?,
                        None => vec![1],
                    };
                    (num, den)
                }
                _ => (fpoly_from_json(v, *p)?, vec![1]),
            };
            Ok(Elem::Fun(Box::new(RatFun::normalized(num, den, *p)?)))
        }
        FieldKind::Ext(e) => match v {
            Value::Array(a) => {
                let coeffs = a.iter().map(|c| elem_from_json(&e.base, c)).collect::<Result<Vec<_>>>()?;
                field.from_coeffs(coeffs)
            }
            _ => field.embed_base(&elem_from_json(&e.base, v)?),
        },
    }
}

/// Parses a rational written as an integer, `"a/b"` or `{"num","den"}` and maps
/// it into the field.
pub fn rational_elem(field: &Field, v: &Value) -> Result<Elem> {
    field.rational(&q_from_json(v)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_round_trip() {
        for v in [
            json!({"kind":"prime","p":3}),
            json!({"kind":"Q"}),
            json!({"kind":"Fp_t","p":2}),
            json!({"kind":"ext","base":{"kind":"prime","p":3},"modulus":[1,0,1]}),
        ] {
            let f = field_from_json(&v).unwrap();
            assert_eq!(field_to_json(&f), v);
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        let v = json!({"kind":"ext","base":{"kind":"prime","p":5},"modulus":[1,0,1]});
        assert!(matches!(field_from_json(&v), Err(Error::Reducible(_))));
        assert!(matches!(field_from_json(&json!({"kind":"prime","p":4})), Err(Error::NotPrime(4))));
    }

    #[test]
    fn element_round_trip() {
        let f = Field::rational_functions(3).unwrap();
        let e = elem_from_json(&f, &json!({"num":[1,2],"den":[0,1]})).unwrap();
        assert_eq!(elem_from_json(&f, &elem_to_json(&f, &e)).unwrap(), e);
        let qf = Field::rationals();
        let r = elem_from_json(&qf, &json!({"num":"-3","den":6})).unwrap();
        assert_eq!(elem_to_json(&qf, &r), json!({"num":-1,"den":2}));
        let f9 = field_from_json(&json!({"kind":"ext","base":{"kind":"prime","p":3},"modulus":[1,0,1]})).unwrap();
        let a = elem_from_json(&f9, &json!([2, 1])).unwrap();
        assert_eq!(elem_to_json(&f9, &a), json!([2, 1]));
        // a^2 = -1 reduced modulo x^2 + 1
        let x2 = elem_from_json(&f9, &json!([0, 0, 1])).unwrap();
        assert_eq!(x2, f9.from_int(-1));
    }
}
