//! Recorder for the exact comparisons made by one scenario.

use std::fmt::Display;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Item {
    pub name: String,
    pub computed: String,
    pub expected: String,
    pub ok: bool,
}

/// Comparisons, recorded values and stated assumptions of one run.
#[derive(Clone, Debug, Default)]
pub struct Check {
    pub items: Vec<Item>,
    pub values: Map<String, Value>,
    pub assumed: Vec<String>,
}

impl Check {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn eq<T: PartialEq + Display>(&mut self, name: impl Into<String>, computed: T, expected: T) -> bool {
        let ok = computed == expected;
        self.items.push(Item { name: name.into(), computed: computed.to_string(), expected: expected.to_string(), ok });
        ok
    }

    pub fn holds(&mut self, name: impl Into<String>, cond: bool) -> bool {
        self.eq(name, cond, true)
    }

    pub fn record(&mut self, name: &str, v: impl Serialize) {
        self.values.insert(name.into(), serde_json::to_value(v).unwrap_or(Value::Null));
    }

    pub fn assume(&mut self, text: &str) {
        self.assumed.push(text.into());
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.ok)
    }

    pub fn first_failure(&self) -> Option<&Item> {
        self.items.iter().find(|i| !i.ok)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_both_sides() {
        let mut c = Check::new();
        assert!(c.eq("det", -64, -64));
        assert!(!c.eq("rank", 17, 18));
        assert!(!c.passed());
        let f = c.first_failure().unwrap();
        assert_eq!((f.computed.as_str(), f.expected.as_str()), ("17", "18"));
    }
}
