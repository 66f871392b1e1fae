//! The three label transforms behind every construction in the library.
//!
//! Shifting by a constant and complementing against a constant both preserve
//! induced edge labels. Complementing at c = m maps graceful labellings to
//! graceful labellings. The near graceful complement h = (m+1) - f maps
//! omit-m near graceful labellings to omit-m near graceful labellings, but
//! only when 1 is absent from the labelling: f(v) = 1 would give h(v) = m,
//! which the omit-m convention forbids.

use crate::error::TransformError;
use crate::topology::LabelledGraph;
use crate::verifier::{classify, Classification};

fn map_labels(
    g: &LabelledGraph,
    f: impl Fn(u64) -> Result<u64, TransformError>,
) -> Result<LabelledGraph, TransformError> {
    let mut out = g.clone();
    for v in 0..g.vertex_count() {
        if let Some(l) = g.label(v) {
            out.set_label(v, f(l)?);
        }
    }
    Ok(out)
}

/// h(v) = f(v) + c. Edge labels are unchanged.
pub fn shift(g: &LabelledGraph, c: i64) -> Result<LabelledGraph, TransformError> {
    map_labels(g, |l| {
        let shifted = l as i64 + c;
        if shifted < 0 {
            Err(TransformError::NegativeLabel { label: l, shift: c })
        } else {
            Ok(shifted as u64)
        }
    })
}

/// h(v) = c - f(v). Edge labels are unchanged; with c = m a graceful
/// labelling stays graceful.
pub fn complement(g: &LabelledGraph, c: u64) -> Result<LabelledGraph, TransformError> {
    map_labels(g, |l| {
        if l > c {
            Err(TransformError::ComplementUnderflow { c, max: l })
        } else {
            Ok(c - l)
        }
    })
}

/// h(v) = (m+1) - f(v) on an omit-m near graceful labelling avoiding 1.
pub fn near_complement(g: &LabelledGraph, m: u64) -> Result<LabelledGraph, TransformError> {
    let report = classify(g)?;
    if report.classification != Classification::NearGracefulOmitM || report.m != m {
        return Err(TransformError::NotNearGraceful);
    }
    if g.find_label(1).is_some() {
        return Err(TransformError::LabelOnePresent);
    }
    map_labels(g, |l| Ok(m + 1 - l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::LabelledGraph;
    use crate::verifier::induced_edge_labels;

    fn cycle(labels: &[u64]) -> LabelledGraph {
        LabelledGraph::from_cycle_labels(&[labels.to_vec()], &[]).unwrap()
    }

    #[test]
    fn shift_preserves_edges() {
        let g = cycle(&[0, 4, 1, 2]);
        let h = shift(&g, 3).unwrap();
        let labels: Vec<u64> = (0..4).map(|v| h.label(v).unwrap()).collect();
        assert_eq!(labels, vec![3, 7, 4, 5]);
        assert_eq!(
            induced_edge_labels(&h).unwrap(),
            induced_edge_labels(&g).unwrap()
        );
    }

    #[test]
    fn shift_zero_is_identity() {
        let g = cycle(&[0, 4, 1, 2]);
        assert_eq!(shift(&g, 0).unwrap(), g);
    }

    #[test]
    fn shift_below_zero_rejected() {
        let g = cycle(&[0, 4, 1, 2]);
        assert!(matches!(
            shift(&g, -1),
            Err(TransformError::NegativeLabel { .. })
        ));
    }

    #[test]
    fn complement_keeps_graceful() {
        let g = cycle(&[0, 4, 1, 2]);
        let h = complement(&g, 4).unwrap();
        let labels: Vec<u64> = (0..4).map(|v| h.label(v).unwrap()).collect();
        assert_eq!(labels, vec![4, 0, 3, 2]);
        assert_eq!(
            classify(&h).unwrap().classification,
            Classification::Graceful
        );
    }

    #[test]
    fn complement_is_involution() {
        let g = cycle(&[0, 8, 1, 7, 2, 5, 3, 4]);
        let h = complement(&complement(&g, 11).unwrap(), 11).unwrap();
        assert_eq!(h, g);
    }

    #[test]
    fn complement_underflow() {
        let g = cycle(&[0, 4, 1, 2]);
        assert!(matches!(
            complement(&g, 3),
            Err(TransformError::ComplementUnderflow { .. })
        ));
    }

    #[test]
    fn near_complement_c6() {
        let g = cycle(&[0, 7, 2, 5, 3, 4]);
        let h = near_complement(&g, 6).unwrap();
        let labels: Vec<u64> = (0..6).map(|v| h.label(v).unwrap()).collect();
        assert_eq!(labels, vec![7, 0, 5, 2, 4, 3]);
        assert_eq!(
            classify(&h).unwrap().classification,
            Classification::NearGracefulOmitM
        );
    }

    #[test]
    fn near_complement_is_involution() {
        let g = cycle(&[0, 7, 2, 5, 3, 4]);
        let h = near_complement(&near_complement(&g, 6).unwrap(), 6).unwrap();
        assert_eq!(h, g);
    }

    #[test]
    fn near_complement_rejects_label_one() {
        // (0, 7, 3, 1, 2, 5) is near graceful but contains 1, so its
        // complement would place m on a vertex.
        let g = cycle(&[0, 7, 3, 1, 2, 5]);
        assert_eq!(
            near_complement(&g, 6).unwrap_err(),
            TransformError::LabelOnePresent
        );
    }

    #[test]
    fn near_complement_rejects_graceful_input() {
        let g = cycle(&[0, 4, 1, 2]);
        assert_eq!(
            near_complement(&g, 4).unwrap_err(),
            TransformError::NotNearGraceful
        );
    }
}
