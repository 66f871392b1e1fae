//! The constructive families: kC_{4n} snakes from complete useful-cycle
//! sets, strings over {2,3,4} at any scale, variable snakes, the kC_6,
//! kC_10 and kC_14 families, and attachment of a snake to an arbitrary
//! gracefully labelled graph.
//!
//! All builders fold iteratively over cycles. Attaching cycle j means:
//! relabel the prefix (shift or complement) so its tracked landmark takes
//! the incoming row's cut label, then glue the instantiated row. The
//! landmark placed inside cycle j must sit at distance d_{j-1} from the new
//! cut (string bookkeeping), or at the requested final placement for the
//! last cycle. Every output is re-classified before it is returned.

use crate::cycles::{
    eq2_cycle, odd_from_even, rosa_labels, strict_c4_row, table1, table2_c6, table3_c10,
    table4_c14, Parity, SymbolicCycleLabelling,
};
use crate::error::{BuildError, TopologyError};
use crate::topology::{LabelledGraph, SnakeShape};
use crate::verifier::{classify, Classification, VerificationReport};

/// Requested distance of the landmark (label 0, or the top label where the
/// construction tracks it) from the last cut vertex, inside the last cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZeroPlacement {
    pub d: u64,
}

/// A constructed snake together with its verification report. Builders
/// never hand back an unverified labelling.
#[derive(Debug, Clone)]
pub struct BuiltSnake {
    pub graph: LabelledGraph,
    pub report: VerificationReport,
}

// ============================================================================
// Assembly of labelled cycles
// ============================================================================

#[derive(Debug, Clone)]
struct Assembly {
    cycles: Vec<Vec<u64>>,
    joins: Vec<(usize, usize)>,
    extra_marks: Vec<(usize, usize)>,
}

impl Assembly {
    fn single(labels: Vec<u64>) -> Self {
        Assembly {
            cycles: vec![labels],
            joins: Vec::new(),
            extra_marks: Vec::new(),
        }
    }

    fn pair(first: Vec<u64>, exit: usize, second: Vec<u64>, entry: usize) -> Self {
        Assembly {
            cycles: vec![first, second],
            joins: vec![(exit, entry)],
            extra_marks: Vec::new(),
        }
    }

    fn shift_all(&mut self, c: u64) {
        for cyc in &mut self.cycles {
            for l in cyc.iter_mut() {
                *l += c;
            }
        }
    }

    fn complement_all(&mut self, c: u64) {
        for cyc in &mut self.cycles {
            for l in cyc.iter_mut() {
                debug_assert!(*l <= c);
                *l = c - *l;
            }
        }
    }

    /// Position of `label` in the last cycle. The inductions keep both 0
    /// and the top label inside the most recently attached cycle.
    fn find_in_last(&self, label: u64) -> (usize, usize) {
        let ci = self.cycles.len() - 1;
        let pos = self.cycles[ci]
            .iter()
            .position(|&l| l == label)
            .unwrap_or_else(|| panic!("label {label} not in last cycle"));
        (ci, pos)
    }

    fn contains_label(&self, label: u64) -> bool {
        self.cycles.iter().flatten().any(|&l| l == label)
    }

    fn attach(&mut self, row: Vec<u64>, row_cut: usize, glue: (usize, usize)) {
        assert_eq!(
            glue.0,
            self.cycles.len() - 1,
            "glue vertex must be in the last cycle"
        );
        self.joins.push((glue.1, row_cut));
        self.cycles.push(row);
    }

    #[allow(clippy::wrong_self_convention)]
    fn to_graph(self) -> Result<LabelledGraph, TopologyError> {
        let mut g = LabelledGraph::from_cycle_labels(&self.cycles, &self.joins)?;
        for (ci, pos) in self.extra_marks {
            g.set_extra_mark(ci, pos);
        }
        Ok(g)
    }
}

fn finish(asm: Assembly, expected: Classification) -> Result<BuiltSnake, BuildError> {
    let graph = asm.to_graph()?;
    let report = classify(&graph)?;
    if report.classification != expected {
        return Err(BuildError::VerificationFailed {
            got: report.classification.to_string(),
            expected: expected.to_string(),
        });
    }
    Ok(BuiltSnake { graph, report })
}

/// Promised parity for the 4n+2 families: graceful for even k, omit-m near
/// graceful for odd k.
fn parity_promise(k: u64) -> Classification {
    if k.is_multiple_of(2) {
        Classification::Graceful
    } else {
        Classification::NearGracefulOmitM
    }
}

// ============================================================================
// The kC_{4n} machinery
// ============================================================================

#[derive(Debug, Clone, Copy)]
enum RowSet {
    /// Stored table rows (complete sets, n <= 6).
    Table,
    /// The shifted-Rosa family: distances 2, 3, 4 at any n.
    D234,
}

fn useful_row(set: RowSet, quarter: u64, d: u64) -> Result<SymbolicCycleLabelling, BuildError> {
    let row = match set {
        RowSet::Table => {
            if d.is_multiple_of(2) {
                table1(quarter, d / 2)?
            } else {
                odd_from_even(&table1(quarter, d.div_ceil(2))?)
            }
        }
        RowSet::D234 => match d {
            2 => eq2_cycle(quarter),
            3 => odd_from_even(&eq2_cycle(quarter)),
            4 => strict_c4_row(quarter)?,
            _ => {
                return Err(BuildError::StringInvalid(format!(
                    "distance {d} outside {{2, 3, 4}}"
                )))
            }
        },
    };
    debug_assert_eq!(row.distance, d);
    Ok(row)
}

/// One attachment step of the even/odd useful-cycle induction. `m_after`
/// is the edge count once the cycle is in; `quarter` is a quarter of the
/// incoming cycle's length.
fn attach_useful(
    asm: &mut Assembly,
    m_after: u64,
    quarter: u64,
    row: &SymbolicCycleLabelling,
) -> Result<(), BuildError> {
    let half = 2 * quarter;
    let labels = row.instantiate(m_after)?;
    let glue = asm.find_in_last(0);
    match row.parity {
        Parity::Even => {
            debug_assert_eq!(labels[row.cut_index], half - 1);
            asm.shift_all(half - 1);
        }
        Parity::Odd => {
            debug_assert_eq!(labels[row.cut_index], m_after - half + 1);
            asm.complement_all(m_after - half + 1);
        }
    }
    asm.attach(labels, row.cut_index, glue);
    Ok(())
}

/// Distance to place when attaching cycle j of k: the string entry d_{j-1}
/// while further cycles follow, the requested final placement for the last.
fn delta_for(j: u64, k: u64, string: &[u64], d_final: u64) -> u64 {
    if j < k {
        string[(j - 2) as usize]
    } else {
        d_final
    }
}

fn shape_checked(lengths: Vec<usize>, string: &[u64]) -> Result<SnakeShape, BuildError> {
    SnakeShape::new(lengths, string.to_vec()).map_err(|e| BuildError::StringInvalid(e.to_string()))
}

/// Graceful labelling of kC_{4n} for n in 1..=6, any string over [1, 2n].
///
/// Base case is the Rosa cycle; even placements shift the prefix by 2n-1
/// and glue a stored row, odd placements complement the prefix at
/// 4kn-2n+1 and glue the row's odd companion.
pub fn build_kc4n(
    n: u64,
    k: u64,
    string: &[u64],
    final_zero: Option<ZeroPlacement>,
) -> Result<BuiltSnake, BuildError> {
    if !(1..=6).contains(&n) {
        return Err(BuildError::UnsupportedCycleLength(format!(
            "kC_{{4n}} building requires n in 1..=6, got {n}"
        )));
    }
    if k < 1 {
        return Err(BuildError::StringInvalid("k must be at least 1".into()));
    }
    shape_checked(vec![(4 * n) as usize; k as usize], string)?;
    let d_final = final_zero.map_or(2, |z| z.d);
    if !(1..=2 * n).contains(&d_final) {
        return Err(BuildError::PlacementOutOfRange {
            d: d_final,
            allowed: format!("1..={}", 2 * n),
        });
    }
    let mut asm = Assembly::single(rosa_labels(n));
    for j in 2..=k {
        let d = delta_for(j, k, string, d_final);
        let row = useful_row(RowSet::Table, n, d)?;
        attach_useful(&mut asm, 4 * j * n, n, &row)?;
    }
    finish(asm, Classification::Graceful)
}

/// Graceful labelling of kC_{4n} for arbitrary n when every string entry is
/// 2, 3 or 4, using the shifted-Rosa row family.
pub fn build_d234(
    n: u64,
    k: u64,
    string: &[u64],
    final_zero: Option<ZeroPlacement>,
) -> Result<BuiltSnake, BuildError> {
    if n < 1 {
        return Err(BuildError::UnsupportedCycleLength(
            "n must be positive".into(),
        ));
    }
    for &d in string {
        if !matches!(d, 2..=4) {
            return Err(BuildError::StringInvalid(format!(
                "string entry {d} outside {{2, 3, 4}}"
            )));
        }
    }
    shape_checked(vec![(4 * n) as usize; k as usize], string)?;
    let d_final = final_zero.map_or(2, |z| z.d);
    if !matches!(d_final, 2..=4) || d_final > 2 * n {
        return Err(BuildError::PlacementOutOfRange {
            d: d_final,
            allowed: "2, 3 or 4 (at most half the cycle length)".into(),
        });
    }
    let mut asm = Assembly::single(rosa_labels(n));
    for j in 2..=k {
        let d = delta_for(j, k, string, d_final);
        let row = useful_row(RowSet::D234, n, d)?;
        attach_useful(&mut asm, 4 * j * n, n, &row)?;
    }
    finish(asm, Classification::Graceful)
}

/// Graceful labelling of a variable snake n_1 C_{4m_1} ... n_j C_{4m_j}.
///
/// `specs` lists (cycle length, count) groups in snake order; every length
/// must be 4m with m in 1..=6.
pub fn build_variable(
    specs: &[(u64, u64)],
    string: &[u64],
    final_zero: Option<ZeroPlacement>,
) -> Result<BuiltSnake, BuildError> {
    let mut lengths: Vec<u64> = Vec::new();
    for &(len, count) in specs {
        if len % 4 != 0 || !(1..=6).contains(&(len / 4)) {
            return Err(BuildError::UnsupportedCycleLength(format!(
                "cycle length {len} is not 4m with m in 1..=6"
            )));
        }
        for _ in 0..count {
            lengths.push(len);
        }
    }
    if lengths.is_empty() {
        return Err(BuildError::StringInvalid("no cycles requested".into()));
    }
    shape_checked(lengths.iter().map(|&l| l as usize).collect(), string)?;
    let k = lengths.len() as u64;
    let last_half = lengths[lengths.len() - 1] / 2;
    let d_final = final_zero.map_or_else(|| 2.min(last_half), |z| z.d);
    if !(1..=last_half).contains(&d_final) {
        return Err(BuildError::PlacementOutOfRange {
            d: d_final,
            allowed: format!("1..={last_half}"),
        });
    }
    let mut asm = Assembly::single(rosa_labels(lengths[0] / 4));
    let mut m = lengths[0];
    for j in 2..=k {
        let len = lengths[(j - 1) as usize];
        m += len;
        let d = delta_for(j, k, string, d_final);
        let row = useful_row(RowSet::Table, len / 4, d)?;
        attach_useful(&mut asm, m, len / 4, &row)?;
    }
    finish(asm, Classification::Graceful)
}

// ============================================================================
// kC_6
// ============================================================================

/// The proof's explicit 2C_6 pairs, keyed by the distance of 0 from the cut.
fn kc6_pair(d: u64) -> (Vec<u64>, usize, Vec<u64>, usize) {
    match d {
        1 => (vec![4, 7, 2, 9, 5, 6], 3, vec![9, 0, 12, 1, 11, 3], 0),
        2 => (vec![8, 5, 10, 3, 7, 6], 3, vec![3, 12, 0, 11, 1, 9], 0),
        3 => (vec![4, 7, 2, 9, 5, 6], 3, vec![9, 1, 11, 0, 12, 3], 0),
        _ => unreachable!("kc6 distances are 1..=3"),
    }
}

/// (Near) graceful labelling of any kC_6: graceful for even k, omit-m near
/// graceful for odd k. All strings over {1, 2, 3} are admissible.
pub fn build_kc6(
    k: u64,
    string: &[u64],
    final_zero: Option<ZeroPlacement>,
) -> Result<BuiltSnake, BuildError> {
    if k < 1 {
        return Err(BuildError::StringInvalid("k must be at least 1".into()));
    }
    shape_checked(vec![6; k as usize], string)?;
    let d_final = final_zero.map_or(2, |z| z.d);
    if !(1..=3).contains(&d_final) {
        return Err(BuildError::PlacementOutOfRange {
            d: d_final,
            allowed: "1..=3".into(),
        });
    }
    if k == 1 {
        let row = table2_c6('a')?;
        let mut asm = Assembly::single(row.instantiate(6)?);
        asm.extra_marks.push((0, row.cut_index));
        return finish(asm, Classification::NearGracefulOmitM);
    }
    let d2 = delta_for(2, k, string, d_final);
    let (first, exit, second, entry) = kc6_pair(d2);
    let mut asm = Assembly::pair(first, exit, second, entry);
    for j in 3..=k {
        let d = delta_for(j, k, string, d_final);
        let m = 6 * j;
        let glue = asm.find_in_last(0);
        asm.shift_all(3);
        if j % 2 == 1 {
            // Odd step: rows a/b complete the near window [1, 6j+1] \ {6j}.
            let row = if d == 1 {
                table2_c6('b')?
            } else {
                table2_c6('a')?
            };
            asm.attach(row.instantiate(m)?, row.cut_index, glue);
            if d == 1 || d == 3 {
                // Near complement (m+1) - f; the assembled labelling avoids 1.
                debug_assert!(!asm.contains_label(1));
                asm.complement_all(m + 1);
            }
        } else {
            // Even step: rows c/d complete the graceful window [1, 6j].
            let row = if d == 3 {
                table2_c6('d')?
            } else {
                table2_c6('c')?
            };
            asm.attach(row.instantiate(m)?, row.cut_index, glue);
            if d == 1 || d == 3 {
                asm.complement_all(m);
            }
        }
    }
    finish(asm, parity_promise(k))
}

// ============================================================================
// kC_10
// ============================================================================

/// String patterns of the four kC_10 cases: entries at odd positions may
/// take either value of the pair, entries at even positions are fixed.
fn kc10_pattern(case: u8) -> ([u64; 2], u64) {
    match case {
        1 => ([4, 5], 5),
        2 => ([3, 4], 4),
        3 => ([2, 3], 3),
        4 => ([1, 2], 2),
        _ => unreachable!(),
    }
}

fn kc10_matches(case: u8, string: &[u64]) -> bool {
    let (odd_pair, even_val) = kc10_pattern(case);
    string.iter().enumerate().all(|(idx, &d)| {
        let i = idx as u64 + 1; // 1-based string index
        if i % 2 == 1 {
            odd_pair.contains(&d)
        } else {
            d == even_val
        }
    })
}

/// Explicit 2C_10 base pairs per case; the second tuple holds 0 at the
/// case's plain distance from the cut.
fn kc10_pair(case: u8) -> (Vec<u64>, usize, Vec<u64>, usize) {
    match case {
        1 => (
            vec![11, 8, 13, 9, 16, 5, 14, 6, 12, 10],
            4,
            vec![0, 20, 2, 18, 1, 16, 3, 17, 7, 19],
            5,
        ),
        2 => (
            vec![10, 9, 11, 5, 13, 4, 15, 8, 12, 7],
            5,
            vec![0, 20, 2, 16, 4, 14, 1, 18, 3, 19],
            4,
        ),
        3 => (
            vec![12, 6, 13, 8, 16, 5, 14, 10, 11, 9],
            4,
            vec![0, 20, 1, 16, 3, 17, 7, 19, 2, 18],
            3,
        ),
        4 => (
            vec![8, 14, 7, 12, 4, 15, 6, 10, 9, 11],
            4,
            vec![0, 20, 2, 18, 1, 13, 3, 17, 4, 19],
            8,
        ),
        _ => unreachable!(),
    }
}

/// Rows and placements per case: (odd-step row, even-step row, even step
/// uses the prefix complement, plain 0-distances for k = 2 / even k / odd k).
struct Kc10Case {
    odd_row: char,
    even_row: char,
    even_step_complements: bool,
    plain_k2: u64,
    plain_even: u64,
    fixed_odd: u64,
}

fn kc10_case(case: u8) -> Kc10Case {
    match case {
        1 => Kc10Case {
            odd_row: 'a',
            even_row: 'b',
            even_step_complements: true,
            plain_k2: 5,
            plain_even: 4,
            fixed_odd: 4,
        },
        2 => Kc10Case {
            odd_row: 'a',
            even_row: 'c',
            even_step_complements: false,
            plain_k2: 4,
            plain_even: 4,
            fixed_odd: 4,
        },
        3 => Kc10Case {
            odd_row: 'd',
            even_row: 'e',
            even_step_complements: true,
            plain_k2: 3,
            plain_even: 2,
            fixed_odd: 2,
        },
        4 => Kc10Case {
            odd_row: 'f',
            even_row: 'g',
            even_step_complements: false,
            plain_k2: 2,
            plain_even: 2,
            fixed_odd: 2,
        },
        _ => unreachable!(),
    }
}

/// (Near) graceful labelling of kC_10 for the four admissible string
/// patterns: graceful for even k, omit-m near graceful for odd k.
///
/// When `case` is omitted it is inferred from the string; strings matching
/// several patterns take the lowest case number.
pub fn build_kc10(
    k: u64,
    string: &[u64],
    case: Option<u8>,
    final_zero: Option<ZeroPlacement>,
) -> Result<BuiltSnake, BuildError> {
    if k < 1 {
        return Err(BuildError::StringInvalid("k must be at least 1".into()));
    }
    shape_checked(vec![10; k as usize], string)?;
    let case = match case {
        Some(c) => {
            if !(1..=4).contains(&c) {
                return Err(BuildError::CaseMismatch { case: c });
            }
            if !kc10_matches(c, string) {
                return Err(BuildError::CaseMismatch { case: c });
            }
            c
        }
        None => (1..=4).find(|&c| kc10_matches(c, string)).ok_or_else(|| {
            BuildError::StringInvalid("string fits none of the four kC_10 patterns".into())
        })?,
    };
    let spec = kc10_case(case);
    let (odd_pair, even_val) = kc10_pattern(case);

    if k == 1 {
        let row = table3_c10(spec.odd_row)?;
        let mut asm = Assembly::single(row.instantiate(10)?);
        asm.extra_marks.push((0, row.cut_index));
        return finish(asm, Classification::NearGracefulOmitM);
    }

    // Allowed final placements of 0.
    let allowed: Vec<u64> = if k % 2 == 1 {
        vec![spec.fixed_odd]
    } else if k == 2 {
        vec![spec.plain_k2, spec.plain_k2 - 1]
    } else {
        odd_pair.to_vec()
    };
    let d_final = final_zero.map_or_else(
        || {
            if k == 2 {
                spec.plain_k2
            } else if k.is_multiple_of(2) {
                spec.plain_even
            } else {
                spec.fixed_odd
            }
        },
        |z| z.d,
    );
    if !allowed.contains(&d_final) {
        return Err(BuildError::PlacementOutOfRange {
            d: d_final,
            allowed: format!("{allowed:?} for case {case}, k = {k}"),
        });
    }

    let d2 = delta_for(2, k, string, d_final);
    let (first, exit, second, entry) = kc10_pair(case);
    let mut asm = Assembly::pair(first, exit, second, entry);
    if d2 == spec.plain_k2 - 1 {
        asm.complement_all(20);
    }

    for j in 3..=k {
        let d = delta_for(j, k, string, d_final);
        let m = 10 * j;
        if j % 2 == 1 {
            // Odd step: shift by 5, glue the case's near row at label 5.
            if d != even_val && j < k {
                return Err(BuildError::CaseMismatch { case });
            }
            if j == k && d != spec.fixed_odd {
                return Err(BuildError::PlacementOutOfRange {
                    d,
                    allowed: format!("{}", spec.fixed_odd),
                });
            }
            let glue = asm.find_in_last(0);
            asm.shift_all(5);
            let row = table3_c10(spec.odd_row)?;
            asm.attach(row.instantiate(m)?, row.cut_index, glue);
        } else {
            // Even step: the prefix is near graceful. Cases 1 and 3 send
            // the old top label m'+1 onto the cut by complementing at
            // 10j-5; cases 2 and 4 shift the old 0 up by 4.
            let row = table3_c10(spec.even_row)?;
            if spec.even_step_complements {
                let top = 10 * (j - 1) + 1;
                let glue = asm.find_in_last(top);
                // The near prefix avoids 2, so complementing at 10j-5
                // cannot collide with the row's 10j-7 entry.
                debug_assert!(!asm.contains_label(2));
                asm.complement_all(m - 5);
                asm.attach(row.instantiate(m)?, row.cut_index, glue);
            } else {
                let glue = asm.find_in_last(0);
                asm.shift_all(4);
                asm.attach(row.instantiate(m)?, row.cut_index, glue);
            }
            if d != spec.plain_even {
                // The companion placement comes from the whole-snake
                // complement at c = m.
                asm.complement_all(m);
            }
        }
    }
    finish(asm, parity_promise(k))
}

// ============================================================================
// kC_14
// ============================================================================

/// (Near) graceful labelling of kC_14 with string entries 6 or 7 at odd
/// positions and 7 at even positions.
pub fn build_kc14(
    k: u64,
    string: &[u64],
    final_zero: Option<ZeroPlacement>,
) -> Result<BuiltSnake, BuildError> {
    if k < 1 {
        return Err(BuildError::StringInvalid("k must be at least 1".into()));
    }
    shape_checked(vec![14; k as usize], string)?;
    for (idx, &d) in string.iter().enumerate() {
        let i = idx as u64 + 1;
        let ok = if i % 2 == 1 {
            matches!(d, 6 | 7)
        } else {
            d == 7
        };
        if !ok {
            return Err(BuildError::StringInvalid(format!(
                "entry d_{i} = {d} violates the kC_14 pattern"
            )));
        }
    }
    if k == 1 {
        let row = table4_c14('a')?;
        let mut asm = Assembly::single(row.instantiate(14)?);
        asm.extra_marks.push((0, row.cut_index));
        return finish(asm, Classification::NearGracefulOmitM);
    }
    let allowed: Vec<u64> = if k % 2 == 1 { vec![6] } else { vec![6, 7] };
    let d_final = final_zero.map_or(6, |z| z.d);
    if !allowed.contains(&d_final) {
        return Err(BuildError::PlacementOutOfRange {
            d: d_final,
            allowed: format!("{allowed:?}"),
        });
    }

    let d2 = delta_for(2, k, string, d_final);
    let first = vec![21, 8, 20, 10, 19, 13, 14, 12, 15, 11, 16, 9, 17, 6];
    let second = vec![0, 28, 4, 18, 2, 25, 3, 23, 6, 24, 5, 26, 1, 27];
    let mut asm = Assembly::pair(first, 13, second, 8);
    if d2 == 7 {
        asm.complement_all(28);
    }

    for j in 3..=k {
        let d = delta_for(j, k, string, d_final);
        let m = 14 * j;
        if j % 2 == 1 {
            // Odd step: shift by 7, glue row a at label 7.
            let glue = asm.find_in_last(0);
            asm.shift_all(7);
            let row = table4_c14('a')?;
            asm.attach(row.instantiate(m)?, row.cut_index, glue);
            debug_assert!(if j < k { d == 7 } else { d == 6 });
        } else {
            // Even step: complement at 14j-7 sends the old top onto 6,
            // then row b completes the graceful window.
            let top = 14 * (j - 1) + 1;
            let glue = asm.find_in_last(top);
            // The near prefix avoids 3: complementing at 14j-7 keeps the
            // row's 14j-10 entry free.
            debug_assert!(!asm.contains_label(3));
            asm.complement_all(m - 7);
            let row = table4_c14('b')?;
            asm.attach(row.instantiate(m)?, row.cut_index, glue);
            if d == 7 {
                asm.complement_all(m);
            }
        }
    }
    finish(asm, parity_promise(k))
}

/// Linear snakes: every string entry is half the cycle length.
pub fn build_linear(n: u64, k: u64) -> Result<BuiltSnake, BuildError> {
    let entries = k.saturating_sub(2) as usize;
    match n {
        10 => build_kc10(k, &vec![5; entries], Some(1), None),
        14 => build_kc14(k, &vec![7; entries], None),
        _ => Err(BuildError::UnsupportedCycleLength(format!(
            "linear builder covers n = 10 and 14, got {n}"
        ))),
    }
}

// ============================================================================
// Attachment to a graceful graph
// ============================================================================

/// Glues a kC_{4n} snake onto a gracefully labelled graph G at a designated
/// vertex labelled 0, producing a graceful labelling of the combined graph.
///
/// `first_d` picks the attachment position inside the first cycle (the
/// distance from the glue vertex to the next landmark); it defaults to 2.
/// The result is verified on every call.
pub fn attach_graceful(
    g: &LabelledGraph,
    zero_vertex: usize,
    shape: &SnakeShape,
    n: u64,
    first_d: Option<u64>,
    final_zero: Option<ZeroPlacement>,
) -> Result<BuiltSnake, BuildError> {
    if !(1..=6).contains(&n) {
        return Err(BuildError::UnsupportedCycleLength(format!(
            "attachment requires n in 1..=6, got {n}"
        )));
    }
    if shape.cycle_lengths().iter().any(|&l| l != (4 * n) as usize) {
        return Err(BuildError::UnsupportedCycleLength(
            "attached snake must be a kC_{4n}".into(),
        ));
    }
    if !g.fully_labelled() {
        return Err(BuildError::NotGraceful);
    }
    if g.label(zero_vertex) != Some(0) {
        return Err(BuildError::NoZeroVertex);
    }
    let base_report = classify(g)?;
    if base_report.classification != Classification::Graceful {
        return Err(BuildError::NotGraceful);
    }

    let k = shape.cycle_count() as u64;
    let m_g = g.edge_count();
    if m_g == 0 && g.vertex_count() == 1 {
        // Degenerate base: a lone 0-vertex adds nothing, so the result is
        // the plain snake construction (first_d is moot without a base).
        return build_kc4n(n, k, shape.string(), final_zero);
    }
    let first_d = first_d.unwrap_or(2);
    let d_final = final_zero.map_or(2, |z| z.d);
    for (label, d) in [("first", first_d), ("final", d_final)] {
        if !(1..=2 * n).contains(&d) {
            return Err(BuildError::PlacementOutOfRange {
                d,
                allowed: format!("1..={} ({label} cycle)", 2 * n),
            });
        }
    }

    let mut labels: Vec<u64> = (0..g.vertex_count()).map(|v| g.label(v).unwrap()).collect();
    let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut cuts: Vec<usize> = Vec::new();
    let mut zero_at = zero_vertex;

    for j in 1..=k {
        let t = m_g + 4 * j * n;
        let d = if j == 1 {
            first_d
        } else if j < k {
            shape.string()[(j - 2) as usize]
        } else {
            d_final
        };
        let row = useful_row(RowSet::Table, n, d)?;
        let row_labels = row.instantiate(t)?;
        match row.parity {
            Parity::Even => {
                for l in labels.iter_mut() {
                    *l += 2 * n - 1;
                }
            }
            Parity::Odd => {
                let c = t - 2 * n + 1;
                for l in labels.iter_mut() {
                    debug_assert!(*l <= c);
                    *l = c - *l;
                }
            }
        }
        // Fresh vertices for the row, reusing the glue vertex at the cut.
        let mut ids = Vec::with_capacity(row_labels.len());
        for (pos, &lab) in row_labels.iter().enumerate() {
            if pos == row.cut_index {
                ids.push(zero_at);
            } else {
                ids.push(labels.len());
                labels.push(lab);
            }
        }
        let l = ids.len();
        for p in 0..l {
            let (u, v) = (ids[p], ids[(p + 1) % l]);
            edges.push(if u <= v { (u, v) } else { (v, u) });
        }
        cuts.push(zero_at);
        zero_at = ids[row_labels.iter().position(|&x| x == 0).unwrap()];
        cycles.push(ids);
    }

    let mut combined = LabelledGraph::from_edges(labels.len(), &edges);
    for (v, &l) in labels.iter().enumerate() {
        combined.set_label(v, l);
    }
    combined = combined.with_cycles(cycles, cuts);
    let report = classify(&combined)?;
    if report.classification != Classification::Graceful {
        return Err(BuildError::VerificationFailed {
            got: report.classification.to_string(),
            expected: "Graceful".to_string(),
        });
    }
    Ok(BuiltSnake {
        graph: combined,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::emit_tuple_form;

    fn labels_of(b: &BuiltSnake) -> Vec<Vec<u64>> {
        b.graph.cycle_labels()
    }

    #[test]
    fn kc4n_base_case_is_rosa() {
        let b = build_kc4n(2, 1, &[], None).unwrap();
        assert_eq!(labels_of(&b), vec![vec![0, 8, 1, 7, 2, 5, 3, 4]]);
        assert_eq!(b.report.m, 8);
    }

    #[test]
    fn kc4n_3c4_string_2() {
        let b = build_kc4n(1, 3, &[2], None).unwrap();
        assert_eq!(b.report.classification, Classification::Graceful);
        assert_eq!(b.report.m, 12);
    }

    #[test]
    fn kc4n_5c24_mixed_string() {
        let b = build_kc4n(6, 5, &[3, 6, 1], None).unwrap();
        assert_eq!(b.report.classification, Classification::Graceful);
        assert_eq!(b.report.m, 120);
    }

    #[test]
    fn kc4n_zero_placement() {
        for n in 1..=3u64 {
            for d in 1..=2 * n {
                let b = build_kc4n(n, 3, &[1], Some(ZeroPlacement { d })).unwrap();
                let g = &b.graph;
                let zero = g.find_label(0).unwrap();
                let last_cut = *g.cut_vertices().last().unwrap();
                assert_eq!(g.distance(last_cut, zero), Some(d as usize), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn kc4n_rejects_bad_string() {
        assert!(matches!(
            build_kc4n(1, 3, &[3], None),
            Err(BuildError::StringInvalid(_))
        ));
        assert!(matches!(
            build_kc4n(7, 1, &[], None),
            Err(BuildError::UnsupportedCycleLength(_))
        ));
        assert!(matches!(
            build_kc4n(2, 2, &[], Some(ZeroPlacement { d: 5 })),
            Err(BuildError::PlacementOutOfRange { .. })
        ));
    }

    #[test]
    fn d234_small_and_large() {
        let b = build_d234(3, 3, &[3], None).unwrap();
        assert_eq!(b.report.classification, Classification::Graceful);
        assert_eq!(b.report.m, 36);
        let b = build_d234(7, 4, &[2, 4], None).unwrap();
        assert_eq!(b.report.classification, Classification::Graceful);
        assert_eq!(b.report.m, 112);
    }

    #[test]
    fn d234_rejects_entry_five() {
        assert!(matches!(
            build_d234(7, 4, &[5, 4], None),
            Err(BuildError::StringInvalid(_))
        ));
    }

    #[test]
    fn variable_worked_example_3c8_1c12() {
        let b = build_variable(&[(8, 3), (12, 1)], &[2, 2], None).unwrap();
        assert_eq!(b.report.classification, Classification::Graceful);
        assert_eq!(b.report.m, 36);
    }

    #[test]
    fn variable_degenerate_equals_kc4n() {
        let a = build_variable(&[(8, 3)], &[2], None).unwrap();
        let b = build_kc4n(2, 3, &[2], None).unwrap();
        assert_eq!(labels_of(&a), labels_of(&b));
    }

    #[test]
    fn variable_mixed_2c4_1c24_1c8() {
        let b = build_variable(&[(4, 2), (24, 1), (8, 1)], &[1, 2], None).unwrap();
        assert_eq!(b.report.classification, Classification::Graceful);
        assert_eq!(b.report.m, 40);
    }

    #[test]
    fn variable_rejects_length_10() {
        assert!(matches!(
            build_variable(&[(10, 2)], &[], None),
            Err(BuildError::UnsupportedCycleLength(_))
        ));
    }

    #[test]
    fn kc6_reference_5c6_class() {
        let b = build_kc6(5, &[3, 1, 2], None).unwrap();
        assert_eq!(b.report.classification, Classification::NearGracefulOmitM);
        assert_eq!(b.report.m, 30);
    }

    #[test]
    fn kc6_k2_emits_proof_pair_verbatim() {
        let b = build_kc6(2, &[], Some(ZeroPlacement { d: 2 })).unwrap();
        assert_eq!(
            emit_tuple_form(&b.graph).unwrap(),
            "(8, 5, 10, 3*, 7, 6); (3*, 12, 0, 11, 1, 9)"
        );
        assert_eq!(b.report.classification, Classification::Graceful);
        assert_eq!(b.report.m, 12);
    }

    #[test]
    fn kc6_k1_is_table_row_a() {
        let b = build_kc6(1, &[], None).unwrap();
        assert_eq!(labels_of(&b), vec![vec![0, 7, 2, 5, 3, 4]]);
        assert_eq!(b.report.classification, Classification::NearGracefulOmitM);
    }

    #[test]
    fn kc6_even_k_graceful() {
        let b = build_kc6(6, &[1, 1, 1, 1], None).unwrap();
        assert_eq!(b.report.classification, Classification::Graceful);
        assert_eq!(b.report.m, 36);
    }

    #[test]
    fn kc6_all_strings_k_up_to_5() {
        for k in 1..=5u64 {
            let entries = k.saturating_sub(2) as usize;
            let mut strings = vec![vec![]];
            for _ in 0..entries {
                strings = strings
                    .into_iter()
                    .flat_map(|s: Vec<u64>| {
                        [1, 2, 3].iter().map(move |&d| {
                            let mut t = s.clone();
                            t.push(d);
                            t
                        })
                    })
                    .collect();
            }
            for string in strings {
                let b = build_kc6(k, &string, None).unwrap();
                assert_eq!(
                    b.report.classification,
                    parity_promise(k),
                    "k={k} {string:?}"
                );
                assert_eq!(b.report.m, 6 * k);
            }
        }
    }

    #[test]
    fn kc10_k2_emits_proof_pair() {
        let b = build_kc10(2, &[], Some(1), None).unwrap();
        assert_eq!(
            emit_tuple_form(&b.graph).unwrap(),
            "(11, 8, 13, 9, 16*, 5, 14, 6, 12, 10); (0, 20, 2, 18, 1, 16*, 3, 17, 7, 19)"
        );
        assert_eq!(b.report.classification, Classification::Graceful);
        assert_eq!(b.report.m, 20);
    }

    #[test]
    fn kc10_k1_near() {
        let b = build_kc10(1, &[], None, None).unwrap();
        assert_eq!(b.report.classification, Classification::NearGracefulOmitM);
        assert_eq!(b.report.m, 10);
        assert_eq!(labels_of(&b), vec![vec![0, 11, 4, 8, 3, 6, 5, 7, 1, 9]]);
    }

    #[test]
    fn kc10_case4_k5() {
        let b = build_kc10(5, &[1, 2, 2], Some(4), None).unwrap();
        assert_eq!(b.report.classification, Classification::NearGracefulOmitM);
        assert_eq!(b.report.m, 50);
    }

    #[test]
    fn kc10_case_inference() {
        // String (4,5) only fits case 1; (3,4) only case 2.
        let b = build_kc10(4, &[4, 5], None, None).unwrap();
        assert_eq!(b.report.m, 40);
        let b = build_kc10(4, &[3, 4], None, None).unwrap();
        assert_eq!(b.report.m, 40);
        assert!(matches!(
            build_kc10(4, &[4, 5], Some(2), None),
            Err(BuildError::CaseMismatch { .. })
        ));
        assert!(matches!(
            build_kc10(4, &[5, 4], None, None),
            Err(BuildError::StringInvalid(_))
        ));
    }

    #[test]
    fn kc14_k2_emits_proof_pair() {
        let b = build_kc14(2, &[], None).unwrap();
        assert_eq!(
            emit_tuple_form(&b.graph).unwrap(),
            "(21, 8, 20, 10, 19, 13, 14, 12, 15, 11, 16, 9, 17, 6*); \
             (0, 28, 4, 18, 2, 25, 3, 23, 6*, 24, 5, 26, 1, 27)"
        );
        assert_eq!(b.report.classification, Classification::Graceful);
        assert_eq!(b.report.m, 28);
    }

    #[test]
    fn kc14_k1_and_k4() {
        let b = build_kc14(1, &[], None).unwrap();
        assert_eq!(b.report.classification, Classification::NearGracefulOmitM);
        assert_eq!(b.report.m, 14);
        let b = build_kc14(4, &[6, 7], None).unwrap();
        assert_eq!(b.report.classification, Classification::Graceful);
        assert_eq!(b.report.m, 56);
    }

    #[test]
    fn linear_families() {
        let b = build_linear(10, 4).unwrap();
        assert_eq!(b.report.classification, Classification::Graceful);
        assert_eq!(b.report.m, 40);
        let string = crate::topology::recover_string(&b.graph).unwrap();
        assert_eq!(string, vec![5, 5]);
        let b = build_linear(14, 3).unwrap();
        assert_eq!(b.report.classification, Classification::NearGracefulOmitM);
        assert_eq!(b.report.m, 42);
        let a = build_linear(10, 1).unwrap();
        let c = build_kc10(1, &[], Some(1), None).unwrap();
        assert_eq!(labels_of(&a), labels_of(&c));
    }

    #[test]
    fn attach_k34_reproduces_known_graft() {
        // K_{3,4} labelled 12, 8, 4 against 3, 2, 1, 0.
        let mut g = LabelledGraph::from_edges(
            7,
            &[
                (0, 3),
                (0, 4),
                (0, 5),
                (0, 6),
                (1, 3),
                (1, 4),
                (1, 5),
                (1, 6),
                (2, 3),
                (2, 4),
                (2, 5),
                (2, 6),
            ],
        );
        for (v, l) in [(0, 12), (1, 8), (2, 4), (3, 3), (4, 2), (5, 1), (6, 0)] {
            g.set_label(v, l);
        }
        let shape = SnakeShape::uniform(8, 1, vec![]).unwrap();
        let b = attach_graceful(&g, 6, &shape, 2, None, None).unwrap();
        assert_eq!(b.report.classification, Classification::Graceful);
        assert_eq!(b.report.m, 20);
        // Base shifted by 3.
        let shifted: Vec<u64> = (0..7).map(|v| b.graph.label(v).unwrap()).collect();
        assert_eq!(shifted, vec![15, 11, 7, 6, 5, 4, 3]);
        // The attached cycle is the stored distance-2 row at T = 20.
        let cycle: Vec<u64> = b.graph.cycles()[0]
            .iter()
            .map(|&v| b.graph.label(v).unwrap())
            .collect();
        assert_eq!(cycle, vec![0, 20, 3, 16, 2, 17, 1, 19]);
    }

    #[test]
    fn attach_single_vertex_equals_kc4n() {
        let mut point = LabelledGraph::from_edges(1, &[]);
        point.set_label(0, 0);
        let shape = SnakeShape::uniform(8, 3, vec![2]).unwrap();
        let a = attach_graceful(&point, 0, &shape, 2, None, None).unwrap();
        let b = build_kc4n(2, 3, &[2], None).unwrap();
        let a_cycles: Vec<Vec<u64>> = a
            .graph
            .cycles()
            .iter()
            .map(|ids| ids.iter().map(|&v| a.graph.label(v).unwrap()).collect())
            .collect();
        assert_eq!(a_cycles, labels_of(&b));
    }

    #[test]
    fn attach_p3_cases() {
        let mut p3 = LabelledGraph::from_edges(3, &[(0, 1), (1, 2)]);
        for (v, l) in [(0, 0u64), (1, 2), (2, 1)] {
            p3.set_label(v, l);
        }
        let shape = SnakeShape::uniform(4, 1, vec![]).unwrap();
        let b = attach_graceful(&p3, 0, &shape, 1, None, None).unwrap();
        assert_eq!(b.report.classification, Classification::Graceful);
        assert_eq!(b.report.m, 6);
        // Designating a vertex not labelled 0 is rejected.
        assert!(matches!(
            attach_graceful(&p3, 1, &shape, 1, None, None),
            Err(BuildError::NoZeroVertex)
        ));
        // A non-graceful base is rejected.
        let mut bad = LabelledGraph::from_edges(3, &[(0, 1), (1, 2)]);
        for (v, l) in [(0, 0u64), (1, 3), (2, 1)] {
            bad.set_label(v, l);
        }
        assert!(matches!(
            attach_graceful(&bad, 0, &shape, 1, None, None),
            Err(BuildError::NotGraceful)
        ));
    }

    #[test]
    fn kc6_zero_placement() {
        for k in 2..=6u64 {
            for d in 1..=3u64 {
                let string = vec![2; k.saturating_sub(2) as usize];
                let b = build_kc6(k, &string, Some(ZeroPlacement { d })).unwrap();
                let g = &b.graph;
                let zero = g.find_label(0).unwrap();
                let last_cut = *g.cut_vertices().last().unwrap();
                assert_eq!(g.distance(last_cut, zero), Some(d as usize), "k={k} d={d}");
            }
        }
    }

    #[test]
    fn kc10_kc14_even_k_zero_placement() {
        for (case, pair) in [(1u8, [4u64, 5]), (2, [3, 4]), (3, [2, 3]), (4, [1, 2])] {
            for d in pair {
                let b = build_kc10(4, &[pair[1], pair[1]], Some(case), Some(ZeroPlacement { d }))
                    .unwrap();
                let g = &b.graph;
                let zero = g.find_label(0).unwrap();
                let last_cut = *g.cut_vertices().last().unwrap();
                assert_eq!(
                    g.distance(last_cut, zero),
                    Some(d as usize),
                    "case {case} d={d}"
                );
            }
        }
        for d in [6u64, 7] {
            let b = build_kc14(4, &[7, 7], Some(ZeroPlacement { d })).unwrap();
            let g = &b.graph;
            let zero = g.find_label(0).unwrap();
            let last_cut = *g.cut_vertices().last().unwrap();
            assert_eq!(g.distance(last_cut, zero), Some(d as usize), "kc14 d={d}");
        }
    }

    #[test]
    fn deep_inductions_stay_sound() {
        let b = build_kc10(9, &[5, 5, 4, 5, 5, 5, 4], Some(1), None).unwrap();
        assert_eq!(b.report.classification, Classification::NearGracefulOmitM);
        assert_eq!(b.report.m, 90);
        let b = build_kc14(8, &[6, 7, 7, 7, 6, 7], None).unwrap();
        assert_eq!(b.report.classification, Classification::Graceful);
        assert_eq!(b.report.m, 112);
        let b = build_kc6(10, &(1..=8).map(|i| 1 + i % 3).collect::<Vec<u64>>(), None).unwrap();
        assert_eq!(b.report.classification, Classification::Graceful);
        assert_eq!(b.report.m, 60);
    }

    #[test]
    fn builder_outputs_satisfy_rosa_parity() {
        // Graceful iff m = 0 or 3 (mod 4) across a small grid.
        for k in 1..=6u64 {
            let b = build_kc6(k, &vec![2; k.saturating_sub(2) as usize], None).unwrap();
            let graceful = b.report.classification == Classification::Graceful;
            assert_eq!(graceful, matches!((6 * k) % 4, 0 | 3), "k={k}");
        }
    }
}
