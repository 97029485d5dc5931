//! Smith normal form for small dense integer matrices, enough to read off
//! ranks and torsion of finitely generated abelian groups.

use std::fmt;

/// Dense integer matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] += v;
    }

    /// Nonzero entries as `(row, col, value)` triples in row-major order.
    pub fn entries(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if v != 0 {
                    out.push((r, c, v));
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    fn add_row_multiple(&mut self, target: usize, source: usize, k: i64) {
        for c in 0..self.cols {
            let v = self.get(source, c);
            self.add_to(target, c, k * v);
        }
    }

    fn add_col_multiple(&mut self, target: usize, source: usize, k: i64) {
        for r in 0..self.rows {
            let v = self.get(r, source);
            self.add_to(r, target, k * v);
        }
    }

    /// Diagonal of the Smith normal form: nonnegative `d_1 | d_2 | ..`,
    /// trailing zeros trimmed.
    pub fn smith_diagonal(&self) -> Vec<i64> {
        let mut m = self.clone();
        let bound = m.rows.min(m.cols);
        let mut diag = Vec::new();
        let mut t = 0;
        while t < bound {
            // Pivot: the entry of least nonzero magnitude in the remaining block.
            let mut pivot: Option<(usize, usize)> = None;
            for r in t..m.rows {
                for c in t..m.cols {
                    let v = m.get(r, c).unsigned_abs();
                    if v != 0 && pivot.is_none_or(|(pr, pc)| v < m.get(pr, pc).unsigned_abs()) {
                        pivot = Some((r, c));
                    }
                }
            }
            let Some((pr, pc)) = pivot else { break };
            m.swap_rows(t, pr);
            m.swap_cols(t, pc);

            let mut clean = true;
            for r in t + 1..m.rows {
                let q = m.get(r, t).div_euclid(m.get(t, t));
                if q != 0 {
                    m.add_row_multiple(r, t, -q);
                }
                if m.get(r, t) != 0 {
                    clean = false;
                }
            }
            for c in t + 1..m.cols {
                let q = m.get(t, c).div_euclid(m.get(t, t));
                if q != 0 {
                    m.add_col_multiple(c, t, -q);
                }
                if m.get(t, c) != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Enforce the divisibility chain: fold any non-multiple into the
            // pivot's row and retry this position.
            let d = m.get(t, t);
            let mut offender = None;
            'scan: for r in t + 1..m.rows {
                for c in t + 1..m.cols {
                    if m.get(r, c) % d != 0 {
                        offender = Some(r);
                        break 'scan;
                    }
                }
            }
            if let Some(r) = offender {
                m.add_row_multiple(t, r, 1);
                continue;
            }
            diag.push(d.abs());
            t += 1;
        }
        diag
    }

    pub fn rank(&self) -> usize {
        self.smith_diagonal().len()
    }
}

/// Finitely generated abelian group, `Z^rank ⊕ Z/d_1 ⊕ ..` with each
/// `d_i > 1` and `d_1 | d_2 | ..`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<i64>,
}

impl AbelianGroup {
    pub fn free(rank: usize) -> Self {
        AbelianGroup { rank, torsion: Vec::new() }
    }

    /// Cokernel data for `Z^generators / columns-of-relations`.
    pub fn from_relation_matrix(generators: usize, relations: &IntMatrix) -> Self {
        assert_eq!(relations.rows, generators);
        let diag = relations.smith_diagonal();
        let rank = generators - diag.len();
        let torsion = diag.into_iter().filter(|&d| d > 1).collect();
        AbelianGroup { rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join("+"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(rows: usize, cols: usize, vals: &[i64]) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, vals[r * cols + c]);
            }
        }
        m
    }

    #[test]
    fn smith_known_forms() {
        let m = matrix(2, 2, &[2, 4, 4, 8]);
        assert_eq!(m.smith_diagonal(), vec![2]);
        let m = matrix(2, 2, &[2, 0, 0, 3]);
        assert_eq!(m.smith_diagonal(), vec![1, 6]);
        let m = matrix(3, 3, &[1, 0, 0, 0, 2, 0, 0, 0, 4]);
        assert_eq!(m.smith_diagonal(), vec![1, 2, 4]);
        assert_eq!(IntMatrix::zeros(3, 2).smith_diagonal(), Vec::<i64>::new());
    }

    #[test]
    fn divisibility_chain_holds() {
        let m = matrix(3, 3, &[6, 4, 2, 4, 6, 8, 2, 8, 6]);
        let d = m.smith_diagonal();
        for w in d.windows(2) {
            assert_eq!(w[1] % w[0], 0, "{d:?}");
        }
    }

    #[test]
    fn abelian_group_display() {
        assert_eq!(AbelianGroup::free(0).to_string(), "0");
        assert_eq!(AbelianGroup::free(1).to_string(), "Z");
        assert_eq!(AbelianGroup { rank: 2, torsion: vec![] }.to_string(), "Z^2");
        assert_eq!(AbelianGroup { rank: 1, torsion: vec![2] }.to_string(), "Z+Z/2");
    }

    #[test]
    fn relation_matrix_quotient() {
        // Z^2 / <(2,0)> = Z + Z/2
        let mut m = IntMatrix::zeros(2, 1);
        m.set(0, 0, 2);
        let g = AbelianGroup::from_relation_matrix(2, &m);
        assert_eq!(g, AbelianGroup { rank: 1, torsion: vec![2] });
    }
}
