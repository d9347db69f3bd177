use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DefectError {
    #[error("inconsistent dimensions: {0}")]
    InconsistentDims(String),
}

/// How far two subspaces `V, W ⊂ U` are from being transverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TransversalityDefect {
    pub dim_u: u32,
    pub dim_v: u32,
    pub dim_w: u32,
    pub dim_intersection: u32,
    pub defect: i64,
}

impl TransversalityDefect {
    pub fn is_transverse(&self) -> bool {
        self.defect == 0
    }
}

/// `dim U − (dim V + dim W) + dim(V ∩ W)`, which vanishes iff `V + W = U`.
pub fn transversality_defect(
    dim_u: u32,
    dim_v: u32,
    dim_w: u32,
    dim_int: u32,
) -> Result<TransversalityDefect, DefectError> {
    if dim_v > dim_u || dim_w > dim_u {
        return Err(DefectError::InconsistentDims(format!("subspace larger than {dim_u}")));
    }
    if dim_int > dim_v.min(dim_w) {
        return Err(DefectError::InconsistentDims(format!(
            "intersection of dimension {dim_int} exceeds a factor"
        )));
    }
    let defect = dim_u as i64 - (dim_v as i64 + dim_w as i64) + dim_int as i64;
    if defect < 0 {
        return Err(DefectError::InconsistentDims(format!(
            "V + W would have dimension {} > {dim_u}",
            dim_v + dim_w - dim_int
        )));
    }
    Ok(TransversalityDefect { dim_u, dim_v, dim_w, dim_intersection: dim_int, defect })
}

/// Defect of `T ℂY` against `T ℝX` inside `T ℂX` for a real submanifold pair
/// with `dim ℝX = n` and `dim ℝY = k`; it equals `n − k`.
pub fn real_pair_defect(n: u32, k: u32) -> Result<TransversalityDefect, DefectError> {
    if k > n {
        return Err(DefectError::InconsistentDims(format!("dim Y = {k} exceeds dim X = {n}")));
    }
    transversality_defect(2 * n, 2 * k, n, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(transversality_defect(4, 2, 2, 1).unwrap().defect, 1);
        assert!(transversality_defect(4, 2, 2, 0).unwrap().is_transverse());
        assert_eq!(real_pair_defect(2, 0).unwrap().defect, 2);
        assert!(transversality_defect(2, 3, 1, 0).is_err());
        assert!(transversality_defect(4, 2, 2, 3).is_err());
        assert!(transversality_defect(2, 2, 2, 0).is_err());
    }
}
