use serde::{Deserialize, Serialize};

use super::{AntiSymQuiver, PairRole, QuiverError};

/// JSON form of a quiver. Vertices `0..pairs` are the first lifts and
/// `pairs..2*pairs` their partners.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverFile {
    pub pairs: usize,
    pub mutable: usize,
    pub roles: Vec<PairRole>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    pub matrix: Vec<Vec<i64>>,
}

impl QuiverFile {
    pub fn into_quiver(self) -> Result<AntiSymQuiver, QuiverError> {
        if self.roles.len() != self.pairs {
            return Err(QuiverError::Invalid("one role per pair".into()));
        }
        let q = AntiSymQuiver::new(self.roles, self.names, self.matrix)?;
        if q.mutable() != self.mutable {
            return Err(QuiverError::Invalid(format!(
                "`mutable` is {} but {} arc pairs are listed",
                self.mutable,
                q.mutable()
            )));
        }
        Ok(q)
    }

    pub fn of(q: &AntiSymQuiver) -> Self {
        QuiverFile {
            pairs: q.pairs(),
            mutable: q.mutable(),
            roles: q.roles().to_vec(),
            names: Some(q.names().to_vec()),
            matrix: q.matrix().to_vec(),
        }
    }
}

pub fn quiver_from_json(text: &str) -> Result<AntiSymQuiver, QuiverError> {
    let file: QuiverFile =
        serde_json::from_str(text).map_err(|e| QuiverError::Invalid(e.to_string()))?;
    file.into_quiver()
}

pub fn quiver_to_json(q: &AntiSymQuiver) -> String {
    serde_json::to_string_pretty(&QuiverFile::of(q)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_validation() {
        let mut q = AntiSymQuiver::zero(vec![PairRole::Arc, PairRole::Boundary]);
        q.set_orbit(0, 1, 1);
        let back = quiver_from_json(&quiver_to_json(&q)).unwrap();
        assert_eq!(back, q);
        let bad = r#"{"pairs":1,"mutable":1,"roles":["arc"],"matrix":[[0,1],[-1,0]]}"#;
        assert!(quiver_from_json(bad).is_err());
        let wrong_n = r#"{"pairs":1,"mutable":0,"roles":["arc"],"matrix":[[0,0],[0,0]]}"#;
        assert!(quiver_from_json(wrong_n).is_err());
    }
}
