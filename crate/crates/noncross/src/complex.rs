//! The quotient complex of an interval: a single vertex with one `k`-cell
//! for every strictly increasing chain `w_1 < .. < w_k` of non-identity
//! interval elements. Faces follow the bar convention on the successive
//! quotients of a chain, which makes `∂∂ = 0` mechanical. The universal
//! cover is never materialized.

use std::collections::HashMap;

use thiserror::Error;

use crate::absolute_order::{ElemId, Interval};
use crate::smith::{AbelianGroup, IntMatrix};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("homology is computed only up to dimension 2, requested {0}")]
    DimensionTooLarge(usize),
    #[error("boundary matrix {rows}x{cols} exceeds the size limit")]
    MatrixLimit { rows: usize, cols: usize },
}

/// Cells of the quotient complex, listed per dimension; dimension zero holds
/// the single base vertex (the empty chain).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexDescription {
    cells_by_dim: Vec<Vec<Vec<ElemId>>>,
}

impl ComplexDescription {
    pub fn top_dimension(&self) -> usize {
        self.cells_by_dim.len() - 1
    }

    pub fn cells(&self, dim: usize) -> &[Vec<ElemId>] {
        &self.cells_by_dim[dim]
    }

    pub fn face_vector(&self) -> Vec<usize> {
        self.cells_by_dim.iter().map(Vec::len).collect()
    }
}

/// Enumerates all chains in `(I, gamma]` in lexicographic order of element
/// ids; the grading bounds the chain length by the length of the top.
pub fn build_complex(iv: &Interval) -> ComplexDescription {
    let top = iv.length(iv.gamma_id());
    let ids: Vec<ElemId> = (0..iv.len()).filter(|&i| i != iv.identity_id()).collect();
    let mut cells_by_dim: Vec<Vec<Vec<ElemId>>> = vec![vec![vec![]]];
    let mut current: Vec<Vec<ElemId>> = ids.iter().map(|&i| vec![i]).collect();
    for _ in 1..=top {
        if current.is_empty() {
            break;
        }
        cells_by_dim.push(current.clone());
        let mut next = Vec::new();
        for chain in &current {
            let last = *chain.last().unwrap();
            for &w in &ids {
                if w != last && iv.le(last, w) {
                    let mut longer = chain.clone();
                    longer.push(w);
                    next.push(longer);
                }
            }
        }
        current = next;
    }
    debug_assert!(current.is_empty(), "chains beyond the top length cannot exist");
    ComplexDescription { cells_by_dim }
}

pub fn euler_characteristic(cx: &ComplexDescription) -> i64 {
    cx.face_vector()
        .iter()
        .enumerate()
        .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}

/// Independent chain counter: counts `k`-chains by dynamic programming over
/// the order matrix instead of enumerating them.
pub fn chain_counts_recursive(iv: &Interval) -> Vec<u64> {
    let top = iv.length(iv.gamma_id());
    let ids: Vec<ElemId> = (0..iv.len()).filter(|&i| i != iv.identity_id()).collect();
    let mut counts = vec![1u64];
    // ending[w] = number of chains of the current length with top element w
    let mut ending: HashMap<ElemId, u64> = ids.iter().map(|&i| (i, 1)).collect();
    for _ in 1..=top {
        counts.push(ending.values().sum());
        let mut next: HashMap<ElemId, u64> = HashMap::new();
        for &w in &ids {
            let total: u64 = ids
                .iter()
                .filter(|&&u| u != w && iv.le(u, w))
                .map(|u| ending.get(u).copied().unwrap_or(0))
                .sum();
            if total > 0 {
                next.insert(w, total);
            }
        }
        ending = next;
    }
    counts
}

/// Integer matrices of the first boundary maps under the bar-style face
/// maps: a chain `w_1 < .. < w_k` is read through its successive quotients
/// `x_i = w_{i-1}^{-1} w_i`; faces drop `x_1`, merge `x_i x_{i+1}` (which
/// deletes `w_i` from the chain), or drop `x_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryData {
    /// `matrices[k-1]` is `∂_k`, with `c_{k-1}` rows and `c_k` columns.
    pub matrices: Vec<IntMatrix>,
}

pub fn boundary_data(
    cx: &ComplexDescription,
    iv: &Interval,
    up_to: usize,
) -> Result<BoundaryData, ComplexError> {
    let top = cx.top_dimension();
    let mut matrices = Vec::new();
    for k in 1..=up_to.min(top) {
        matrices.push(boundary_matrix(cx, iv, k)?);
    }
    Ok(BoundaryData { matrices })
}

fn face_of(chain: &[ElemId], drop: usize, iv: &Interval) -> Vec<ElemId> {
    let k = chain.len();
    if drop == 0 {
        // Dropping the first bar letter divides the whole chain by w_1.
        let w1_inv = iv.element(chain[0]).inverse();
        chain[1..]
            .iter()
            .map(|&w| {
                let q = w1_inv.compose(iv.element(w)).expect("same rank");
                iv.id_of(&q).expect("quotients along a chain stay in the interval")
            })
            .collect()
    } else if drop == k {
        chain[..k - 1].to_vec()
    } else {
        let mut c = chain.to_vec();
        c.remove(drop - 1);
        c
    }
}

fn boundary_matrix(
    cx: &ComplexDescription,
    iv: &Interval,
    k: usize,
) -> Result<IntMatrix, ComplexError> {
    let rows = cx.cells(k - 1).len();
    let cols = cx.cells(k).len();
    if rows.saturating_mul(cols) > 25_000_000 {
        return Err(ComplexError::MatrixLimit { rows, cols });
    }
    let row_index: HashMap<&[ElemId], usize> =
        cx.cells(k - 1).iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
    let mut m = IntMatrix::zeros(rows, cols);
    for (col, chain) in cx.cells(k).iter().enumerate() {
        for drop in 0..=k {
            let face = face_of(chain, drop, iv);
            let row = row_index[face.as_slice()];
            let sign = if drop % 2 == 0 { 1 } else { -1 };
            m.add_to(row, col, sign);
        }
    }
    Ok(m)
}

/// Homology of the quotient complex in dimensions `0..=up_to` (`up_to <= 2`)
/// from integer normal forms of the boundary matrices.
pub fn homology(
    cx: &ComplexDescription,
    iv: &Interval,
    up_to: usize,
) -> Result<Vec<AbelianGroup>, ComplexError> {
    if up_to > 2 {
        return Err(ComplexError::DimensionTooLarge(up_to));
    }
    let top = cx.top_dimension();
    let data = boundary_data(cx, iv, (up_to + 1).min(top))?;
    let face = cx.face_vector();
    let rank_of = |k: usize| -> usize {
        if k == 0 || k > data.matrices.len() {
            0
        } else {
            data.matrices[k - 1].rank()
        }
    };
    let mut out = Vec::new();
    #[allow(clippy::needless_range_loop)]
    for k in 0..=up_to {
        if k > top {
            out.push(AbelianGroup::free(0));
            continue;
        }
        let rank = face[k] - rank_of(k) - rank_of(k + 1);
        let torsion = if k < data.matrices.len() {
            data.matrices[k].smith_diagonal().into_iter().filter(|&d| d > 1).collect()
        } else {
            Vec::new()
        };
        out.push(AbelianGroup { rank, torsion });
    }
    Ok(out)
}

/// JSON document with the face vector, the cells as printed chains, and the
/// boundary matrices in coordinate form.
pub fn export_json(cx: &ComplexDescription, iv: &Interval) -> serde_json::Value {
    let cells: Vec<Vec<Vec<String>>> = cx
        .cells_by_dim
        .iter()
        .map(|dim| {
            dim.iter()
                .map(|chain| chain.iter().map(|&w| iv.name(w).to_string()).collect())
                .collect()
        })
        .collect();
    let boundaries: Vec<serde_json::Value> = boundary_data(cx, iv, cx.top_dimension().min(3))
        .map(|data| {
            data.matrices
                .iter()
                .enumerate()
                .map(|(i, m)| {
                    serde_json::json!({
                        "dim": i + 1,
                        "rows": m.rows,
                        "cols": m.cols,
                        "entries": m.entries(),
                    })
                })
                .collect()
        })
        .unwrap_or_default();
    serde_json::json!({
        "face_vector": cx.face_vector(),
        "cells": cells,
        "boundaries": boundaries,
    })
}
