//! Inputs shared by the benchmarks.

use floordiag_core::HTransversePolygon;

/// Polygons timed by the invariant benchmarks, smallest first.
pub fn polygons() -> Vec<(&'static str, HTransversePolygon)> {
    [("delta3", "abn:3,0,1"), ("delta4", "abn:4,0,1"), ("delta_3_2_1", "abn:3,2,1"), ("delta5", "abn:5,0,1")]
        .into_iter()
        .map(|(name, lit)| (name, lit.parse().expect("valid polygon literal")))
        .collect()
}
