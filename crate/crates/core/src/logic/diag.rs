use super::LogicError;

/// The antidiagonal of a table of functions on `0..=m`: `g(n) = rows[n](n) + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Antidiagonal {
    pub values: Vec<u64>,
}

impl Antidiagonal {
    /// True when `g` differs from row `n` at index `n`, for every row.
    pub fn differs_from_all(&self, rows: &[Vec<u64>]) -> bool {
        rows.len() == self.values.len()
            && rows.iter().enumerate().all(|(n, row)| row[n] != self.values[n])
    }
}

/// Each row must have `m + 1` entries and there may be at most `m + 1` rows.
pub fn diag_table(rows: &[Vec<u64>], m: usize) -> Result<Antidiagonal, LogicError> {
    if rows.len() > m + 1 {
        return Err(LogicError::TooManyRows {
            rows: rows.len(),
            m,
        });
    }
    let mut values = Vec::with_capacity(rows.len());
    for (n, row) in rows.iter().enumerate() {
        if row.len() != m + 1 {
            return Err(LogicError::RowLength {
                row: n,
                len: row.len(),
                m,
            });
        }
        values.push(row[n].checked_add(1).ok_or(LogicError::Overflow)?);
    }
    let g = Antidiagonal { values };
    debug_assert!(g.differs_from_all(rows));
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_rows() {
        let rows = vec![vec![0; 3], vec![1; 3], vec![2; 3]];
        let g = diag_table(&rows, 2).unwrap();
        assert_eq!(g.values, vec![1, 2, 3]);
        assert!(g.differs_from_all(&rows));
    }

    #[test]
    fn single_identity_row() {
        let rows = vec![vec![0]];
        let g = diag_table(&rows, 0).unwrap();
        assert_eq!(g.values, vec![1]);
        assert!(g.differs_from_all(&rows));
    }

    #[test]
    fn malformed_tables() {
        assert!(matches!(
            diag_table(&[vec![0, 1], vec![0, 1], vec![0, 1]], 1),
            Err(LogicError::TooManyRows { .. })
        ));
        assert!(matches!(
            diag_table(&[vec![0]], 1),
            Err(LogicError::RowLength { row: 0, .. })
        ));
        assert_eq!(diag_table(&[vec![u64::MAX]], 0), Err(LogicError::Overflow));
    }
}
