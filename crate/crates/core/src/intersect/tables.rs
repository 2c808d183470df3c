//! Decomposition-type tables for the cubic and dihedral quintic families.

use super::{GroupLabel, Relation};
use GroupLabel::*;
use Relation::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub group_a: GroupLabel,
    pub group_b: GroupLabel,
    pub dt1: &'static [usize],
    pub dt2: Option<&'static [usize]>,
    pub relation: Relation,
}

const fn row1(group_a: GroupLabel, group_b: GroupLabel, dt1: &'static [usize], relation: Relation) -> TableRow {
    TableRow { group_a, group_b, dt1, dt2: None, relation }
}

const fn row2(
    group_a: GroupLabel,
    group_b: GroupLabel,
    dt1: &'static [usize],
    dt2: &'static [usize],
    relation: Relation,
) -> TableRow {
    TableRow { group_a, group_b, dt1, dt2: Some(dt2), relation }
}

/// `F_{a,b}` for `X³ + sX + s`.
pub const S3_TABLE: &[TableRow] = &[
    row1(S3, S3, &[6], TrivialMeet),
    row1(S3, S3, &[3, 3], QuadraticMeet),
    row1(S3, S3, &[3, 2, 1], Equal),
    row1(S3, C3, &[6], TrivialMeet),
    row1(S3, C2, &[6], NotComparableTrivialMeet),
    row1(S3, C2, &[3, 3], AContainsB),
    row1(C3, C3, &[3, 3], TrivialMeet),
    row1(C3, C3, &[3, 1, 1, 1], Equal),
    row1(C3, C2, &[6], TrivialMeet),
    row1(C2, C2, &[4, 2], TrivialMeet),
    row1(C2, C2, &[2, 2, 1, 1], Equal),
];

/// `(F¹, F²)` for Brumer's quintic.
pub const D5_TABLE: &[TableRow] = &[
    row2(D5, D5, &[10], &[10], TrivialMeet),
    row2(D5, D5, &[5, 5], &[5, 5], QuadraticMeet),
    row2(D5, D5, &[5, 2, 2, 1], &[5, 5], Equal),
    row2(D5, D5, &[5, 5], &[5, 2, 2, 1], Equal),
    row2(D5, C5, &[10], &[10], TrivialMeet),
    row2(D5, C2, &[10], &[10], NotComparableTrivialMeet),
    row2(D5, C2, &[5, 5], &[5, 5], AContainsB),
    row2(C5, C5, &[5, 5], &[5, 5], TrivialMeet),
    row2(C5, C5, &[5, 1, 1, 1, 1, 1], &[5, 5], Equal),
    row2(C5, C5, &[5, 5], &[5, 1, 1, 1, 1, 1], Equal),
    row2(C5, C2, &[10], &[10], TrivialMeet),
    row2(C2, C2, &[4, 4, 2], &[4, 4, 2], TrivialMeet),
    row2(C2, C2, &[2, 2, 2, 2, 1, 1], &[2, 2, 2, 2, 1, 1], Equal),
];

pub fn rows_for(table: &'static [TableRow], ga: GroupLabel, gb: GroupLabel) -> Vec<&'static TableRow> {
    table.iter().filter(|r| r.group_a == ga && r.group_b == gb).collect()
}

/// Distinct first-resolvent partitions among the rows.
pub fn dt1_context(rows: &[&TableRow]) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = rows.iter().map(|r| r.dt1.to_vec()).collect();
    v.sort();
    v.dedup();
    v
}

pub fn dt2_context(rows: &[&TableRow], dt1: &[usize]) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = rows.iter().filter(|r| r.dt1 == dt1).filter_map(|r| r.dt2.map(<[usize]>::to_vec)).collect();
    v.sort();
    v.dedup();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_have_the_right_size() {
        for r in S3_TABLE {
            assert_eq!(r.dt1.iter().sum::<usize>(), 6);
        }
        for r in D5_TABLE {
            assert_eq!(r.dt1.iter().sum::<usize>(), 10);
            assert_eq!(r.dt2.unwrap().iter().sum::<usize>(), 10);
        }
    }

    #[test]
    fn equality_rows_are_exactly_those_with_a_one() {
        for r in S3_TABLE {
            assert_eq!(r.relation == Equal, r.dt1.contains(&1), "{r:?}");
        }
        for r in D5_TABLE {
            let has_one = r.dt1.contains(&1) || r.dt2.unwrap().contains(&1);
            assert_eq!(r.relation == Equal, has_one, "{r:?}");
        }
    }

    #[test]
    fn rows_are_unambiguous() {
        for t in [S3_TABLE, D5_TABLE] {
            for (i, r) in t.iter().enumerate() {
                for s in &t[i + 1..] {
                    assert!(
                        (r.group_a, r.group_b, r.dt1, r.dt2) != (s.group_a, s.group_b, s.dt1, s.dt2),
                        "{r:?}"
                    );
                }
            }
        }
    }
}
