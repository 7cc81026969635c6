use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{LpError, LpSeed};
use crate::laurent::{parse, LaurentPoly, Role, VariableTable};

/// JSON seed file. `initial` and `expressions` are optional and let a
/// mutated seed be written out and read back with its history.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedFile {
    pub cluster: Vec<String>,
    #[serde(default)]
    pub frozen: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lamination: Vec<String>,
    pub exchange: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expressions: Option<BTreeMap<String, String>>,
}

pub fn seed_from_json(text: &str) -> Result<LpSeed, LpError> {
    let file: SeedFile =
        serde_json::from_str(text).map_err(|e| LpError::InvalidSeed(e.to_string()))?;
    let roles = file
        .cluster
        .iter()
        .map(|s| (s.clone(), Role::Cluster))
        .chain(file.frozen.iter().map(|s| (s.clone(), Role::BoundaryFrozen)))
        .chain(file.lamination.iter().map(|s| (s.clone(), Role::LaminationFrozen)));
    let table = VariableTable::new(roles)?;
    let mut exchange = Vec::new();
    for name in &file.cluster {
        let text = file
            .exchange
            .get(name)
            .ok_or_else(|| LpError::InvalidSeed(format!("no exchange polynomial for `{name}`")))?;
        exchange.push(parse(text, &table)?);
    }
    if let Some(extra) = file.exchange.keys().find(|k| !file.cluster.contains(k)) {
        return Err(LpError::InvalidSeed(format!("`{extra}` is not a cluster variable")));
    }
    let mut seed = LpSeed::unchecked(table.clone(), exchange)?;
    if let Some(initial) = &file.initial {
        if initial.len() != file.cluster.len() {
            return Err(LpError::InvalidSeed("initial names must match cluster size".into()));
        }
        let mut init = table.clone();
        for (k, name) in initial.iter().enumerate() {
            init = init.renamed(k, name)?;
        }
        let exprs = file
            .expressions
            .as_ref()
            .ok_or_else(|| LpError::InvalidSeed("`initial` given without `expressions`".into()))?;
        let mut out = Vec::new();
        for name in &file.cluster {
            let text = exprs
                .get(name)
                .ok_or_else(|| LpError::InvalidSeed(format!("no expression for `{name}`")))?;
            out.push(parse(text, &init)?);
        }
        seed.init = init;
        seed.exprs = out;
    }
    if let Some(k) = (0..seed.n).find(|&k| !seed.status[k].accepted()) {
        return Err(LpError::InvalidSeed(format!(
            "exchange polynomial of `{}` is {:?}",
            seed.table.name(k),
            seed.status[k]
        )));
    }
    Ok(seed)
}

pub fn seed_to_file(seed: &LpSeed) -> SeedFile {
    let t = &seed.table;
    let names = |role: Role| -> Vec<String> {
        (seed.n..t.len()).filter(|&k| t.role(k) == role).map(|k| t.name(k).to_string()).collect()
    };
    let frozen = names(Role::BoundaryFrozen);
    let lamination = names(Role::LaminationFrozen);
    let identity = (0..seed.n).all(|k| seed.exprs[k] == LaurentPoly::var(t.len(), k))
        && (0..seed.n).all(|k| seed.init.name(k) == t.name(k));
    SeedFile {
        cluster: (0..seed.n).map(|k| t.name(k).to_string()).collect(),
        frozen,
        lamination,
        exchange: (0..seed.n)
            .map(|k| (t.name(k).to_string(), seed.exchange[k].display(t).to_string()))
            .collect(),
        initial: (!identity).then(|| (0..seed.n).map(|k| seed.init.name(k).to_string()).collect()),
        expressions: (!identity).then(|| {
            (0..seed.n)
                .map(|k| (t.name(k).to_string(), seed.exprs[k].display(&seed.init).to_string()))
                .collect()
        }),
    }
}

pub fn seed_to_json(seed: &LpSeed) -> String {
    serde_json::to_string_pretty(&seed_to_file(seed)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::seeds_equal;

    #[test]
    fn round_trip_with_history() {
        let text = r#"{"cluster": ["a","b","c"], "frozen": [],
            "exchange": {"a": "1+b*c", "b": "1+a", "c": "(1+a)^2+a*b^2"}}"#;
        let s = seed_from_json(text).unwrap();
        let m = s.mutate(1).unwrap();
        let back = seed_from_json(&seed_to_json(&m)).unwrap();
        assert!(seeds_equal(&m, &back));
        assert!(seeds_equal(&back.mutate(1).unwrap(), &s));
    }

    #[test]
    fn rejects_missing_polynomial() {
        let text = r#"{"cluster": ["a","b"], "exchange": {"a": "1+b"}}"#;
        assert!(seed_from_json(text).is_err());
    }
}
