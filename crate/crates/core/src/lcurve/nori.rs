use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Singularity types of a plane curve relevant to the abelianity criterion.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SingularityType {
    /// Four smooth branches meeting pairwise transversally.
    X9,
    Node,
    Cusp,
    Other(String),
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularityType::X9 => f.write_str("X9"),
            SingularityType::Node => f.write_str("node"),
            SingularityType::Cusp => f.write_str("cusp"),
            SingularityType::Other(s) => f.write_str(s),
        }
    }
}

impl FromStr for SingularityType {
    type Err = std::convert::Infallible;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "x9" | "x_9" => SingularityType::X9,
            "node" | "a1" => SingularityType::Node,
            "cusp" | "a2" => SingularityType::Cusp,
            _ => SingularityType::Other(s.trim().to_string()),
        })
    }
}

/// Sufficient condition for an abelian complement: the only singularity is
/// a single `X₉` point and the self-intersection exceeds 16.
pub fn nori_abelian_guaranteed(self_intersection: i64, singularities: &[SingularityType]) -> bool {
    singularities == [SingularityType::X9] && self_intersection > 16
}

#[cfg(test)]
mod tests {
    use super::*;
    use SingularityType::*;

    #[test]
    fn examples() {
        // degree 5 plane curve: A∘A = 25
        assert!(nori_abelian_guaranteed(25, &[X9]));
        assert!(!nori_abelian_guaranteed(16, &[X9]));
        assert!(!nori_abelian_guaranteed(25, &[X9, Node]));
        assert!(!nori_abelian_guaranteed(25, &[]));
        assert!(!nori_abelian_guaranteed(17, &[Cusp]));
        assert!(nori_abelian_guaranteed(17, &["x9".parse().unwrap()]));
    }
}
