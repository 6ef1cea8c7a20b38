use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

pub fn check(name: impl Into<String>, passed: bool) -> Check {
    Check { name: name.into(), passed }
}

/// Output of one command. Field order is fixed by declaration; maps inside `data`
/// serialize with sorted keys, so equal inputs give equal bytes.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub data: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<u64>,
}

impl RunReport {
    pub fn new(command: &str, parameters: &[(&str, String)], checks: Vec<Check>, data: impl Serialize) -> anyhow::Result<Self> {
        Ok(Self {
            command: command.to_string(),
            parameters: parameters.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            passed: checks.iter().all(|c| c.passed),
            checks,
            data: serde_json::to_value(data)?,
            duration_ms: None,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports hold plain data");
        s.push('\n');
        s
    }
}
