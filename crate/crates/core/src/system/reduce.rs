//! Fraction-free row reduction of the reversed coefficient matrix.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{NormalizedSystem, SymmetricSystem};
use crate::error::{Error, Result};
use crate::int::{self, Int};

/// Brings `sys` to triangular form with the same rational row space, hence
/// the same integer solutions in every box.
///
/// Columns are processed from `σ_k` downwards. In each column the remaining
/// row with the smallest nonzero entry becomes the pivot and the column is
/// cleared from the other remaining rows by cross-multiplication. A second
/// pass clears the lower pivot columns out of every pivot row so that only
/// columns in `R` carry off-diagonal entries. Rows are kept primitive with
/// a positive leading coefficient; rows that vanish are dropped.
pub fn normalize(sys: &SymmetricSystem) -> Result<NormalizedSystem> {
    let k = sys.k();
    let mut remaining: Vec<Vec<Int>> = sys.rows().to_vec();
    if remaining.is_empty() {
        return Err(Error::DegenerateSystem);
    }
    let mut pivots: Vec<(usize, Vec<Int>)> = Vec::new();

    for col in (0..k).rev() {
        let Some(idx) = remaining
            .iter()
            .enumerate()
            .filter(|(_, row)| row[col] != 0)
            .min_by_key(|(_, row)| row[col].unsigned_abs())
            .map(|(i, _)| i)
        else {
            continue;
        };
        let pivot = remaining.remove(idx);
        for row in remaining.iter_mut() {
            if row[col] != 0 {
                eliminate(row, &pivot, col)?;
            }
        }
        remaining.retain(|row| row.iter().any(|&c| c != 0));
        pivots.push((col, pivot));
    }

    // ascending degree
    pivots.reverse();
    for j in 0..pivots.len() {
        let (lower, rest) = pivots.split_at_mut(j);
        let (_, row) = &mut rest[0];
        for (col, pivot) in lower.iter() {
            if row[*col] != 0 {
                eliminate(row, pivot, *col)?;
            }
        }
        make_primitive(row);
    }

    let degrees: Vec<usize> = pivots.iter().map(|(col, _)| col + 1).collect();
    let leading: Vec<Int> = pivots.iter().map(|(col, row)| row[*col]).collect();
    let mut offdiag = BTreeMap::new();
    for (j, (col, row)) in pivots.iter().enumerate() {
        for (l0, &c) in row.iter().enumerate().take(*col) {
            if c != 0 {
                offdiag.insert((j, l0 + 1), int::neg(c)?);
            }
        }
    }
    NormalizedSystem::new(k, degrees, leading, offdiag)
}

/// `row ← (p/g)·row − (r/g)·pivot` where `p`, `r` are the entries in `col`.
fn eliminate(row: &mut [Int], pivot: &[Int], col: usize) -> Result<()> {
    let g = int::gcd(row[col], pivot[col]);
    let row_scale = pivot[col] / g;
    let pivot_scale = row[col] / g;
    for (r, &p) in row.iter_mut().zip(pivot) {
        *r = int::sub(int::mul(*r, row_scale)?, int::mul(p, pivot_scale)?)?;
    }
    debug_assert_eq!(row[col], 0);
    make_primitive(row);
    Ok(())
}

/// Divides by the content and makes the highest nonzero entry positive.
fn make_primitive(row: &mut [Int]) {
    let g = row.iter().fold(0, |g, &c| int::gcd(g, c));
    if g == 0 {
        return;
    }
    let negate = row.iter().rev().find(|&&c| c != 0).is_some_and(|&c| c < 0);
    for c in row.iter_mut() {
        *c /= g;
        if negate {
            *c = -*c;
        }
    }
}
