use serde_json::{json, Value};

use crate::almosthom::AlmostHom;
use crate::error::{Error, Result};
use crate::jordanlen::iota;
use crate::par::Exec;
use crate::rational::{q_to_json, Q};

/// A bound asserted on a construction's output.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundCheck {
    pub name: String,
    pub value: Q,
    /// `value <= bound` when true, `value >= bound` otherwise.
    pub upper: bool,
    pub bound: Q,
}

impl BoundCheck {
    pub fn at_most(name: impl Into<String>, value: Q, bound: Q) -> BoundCheck {
        BoundCheck { name: name.into(), value, upper: true, bound }
    }

    pub fn at_least(name: impl Into<String>, value: Q, bound: Q) -> BoundCheck {
        BoundCheck { name: name.into(), value, upper: false, bound }
    }

    pub fn holds(&self) -> bool {
        if self.upper {
            self.value <= self.bound
        } else {
            self.value >= self.bound
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "value": q_to_json(&self.value),
            "relation": if self.upper { "<=" } else { ">=" },
            "bound": q_to_json(&self.bound),
            "holds": self.holds(),
        })
    }
}

/// Metrics of one construction stage.
#[derive(Clone, Debug, PartialEq)]
pub struct StageRecord {
    pub k: u32,
    pub dim: usize,
    pub defect: Q,
    pub min_separation: Option<Q>,
    /// Largest `iota` over non-identity images.
    pub max_iota: Option<Q>,
}

impl StageRecord {
    pub fn measure(k: u32, hom: &AlmostHom, exec: Exec) -> Result<StageRecord> {
        let q = hom.quality_with(exec)?;
        let id = hom.window.identity();
        let mut max_iota: Option<Q> = None;
        for g in (0..hom.window.len()).filter(|&g| g != id) {
            let v = iota(&hom.images[g], &[])?;
            if max_iota.as_ref().is_none_or(|m| v > *m) {
                max_iota = Some(v);
            }
        }
        Ok(StageRecord { k, dim: hom.dim, defect: q.defect, min_separation: q.min_separation, max_iota })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "dim": self.dim,
            "defect": q_to_json(&self.defect),
            "min_separation": self.min_separation.as_ref().map(q_to_json),
            "max_iota": self.max_iota.as_ref().map(q_to_json),
        })
    }
}

/// Stage metrics and asserted bounds of a construction.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AmplifyTrace {
    pub operation: String,
    pub stages: Vec<StageRecord>,
    pub checks: Vec<BoundCheck>,
}

impl AmplifyTrace {
    pub fn new(operation: &str) -> AmplifyTrace {
        AmplifyTrace { operation: operation.to_string(), ..Default::default() }
    }

    /// Records `c`, failing if it does not hold.
    pub fn assert(&mut self, c: BoundCheck) -> Result<()> {
        let ok = c.holds();
        let msg = if ok {
            String::new()
        } else {
            format!("{}: {} {} {}", c.name, c.value, if c.upper { "<=" } else { ">=" }, c.bound)
        };
        self.checks.push(c);
        if ok {
            Ok(())
        } else {
            Err(Error::BoundViolated(msg))
        }
    }

    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(BoundCheck::holds)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "operation": self.operation,
            "stages": self.stages.iter().map(StageRecord::to_json).collect::<Vec<_>>(),
            "checks": self.checks.iter().map(BoundCheck::to_json).collect::<Vec<_>>(),
        })
    }
}
