//! Normalized compression distance and pairwise distance matrices.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alphabet::{PStr, Symbol};
use crate::compress::Compressor;
use crate::error::{Error, Result};

/// `max(C(xy) - C(x), C(yx) - C(y)) / max(C(x), C(y))`, with negative
/// numerators clamped to 0 and `ncd(ε, ε) = 0`.
pub fn ncd<C: Compressor + ?Sized>(c: &C, x: &[Symbol], y: &[Symbol]) -> f64 {
    ncd_with_lengths(c, x, y, c.code_len(x).0, c.code_len(y).0)
}

fn ncd_with_lengths<C: Compressor + ?Sized>(c: &C, x: &[Symbol], y: &[Symbol], cx: u64, cy: u64) -> f64 {
    let denom = cx.max(cy);
    if denom == 0 {
        return 0.0;
    }
    let mut buf = Vec::with_capacity(x.len() + y.len());
    buf.extend_from_slice(x);
    buf.extend_from_slice(y);
    let cxy = c.code_len(&buf).0;
    buf.clear();
    buf.extend_from_slice(y);
    buf.extend_from_slice(x);
    let cyx = c.code_len(&buf).0;
    let num = (cxy as i64 - cx as i64).max(cyx as i64 - cy as i64).max(0);
    num as f64 / denom as f64
}

/// Symmetric matrix of pairwise distances with a zero diagonal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistMatrix {
    /// Builds a matrix from full rows. Rows must be square, symmetric,
    /// finite, non-negative, with a zero diagonal.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::argument("distance matrix is empty"));
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::argument(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        let m = DistMatrix { n, data };
        for i in 0..n {
            if m.get(i, i) != 0.0 {
                return Err(Error::argument(format!("diagonal entry {i} is not 0")));
            }
            for j in 0..n {
                let v = m.get(i, j);
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::argument(format!("entry ({i}, {j}) = {v} is invalid")));
                }
                if v != m.get(j, i) {
                    return Err(Error::argument(format!("entries ({i}, {j}) and ({j}, {i}) differ")));
                }
            }
        }
        Ok(m)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks(self.n)
    }

    /// Row-major CSV with a header row of string indices.
    pub fn to_csv(&self) -> String {
        let mut out = (0..self.n).map(|i| i.to_string()).collect::<Vec<_>>().join(",");
        out.push('\n');
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<&[f64]> = self.rows().collect();
        serde_json::json!({ "n": self.n, "rows": rows }).to_string()
    }
}

/// All pairwise NCDs of `corpus`. Pairs are evaluated in parallel; each
/// unordered pair is computed once, so the result does not depend on
/// scheduling.
pub fn distance_matrix<C: Compressor + ?Sized>(c: &C, corpus: &[PStr]) -> Result<DistMatrix> {
    let n = corpus.len();
    if n == 0 {
        return Err(Error::argument("corpus is empty"));
    }
    let lens: Vec<u64> = corpus.par_iter().map(|x| c.code_len(x).0).collect();
    let upper: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            ((i + 1)..n)
                .map(|j| ncd_with_lengths(c, &corpus[i], &corpus[j], lens[i], lens[j]))
                .collect()
        })
        .collect();
    let mut data = vec![0.0; n * n];
    for (i, row) in upper.iter().enumerate() {
        for (off, &v) in row.iter().enumerate() {
            let j = i + 1 + off;
            data[i * n + j] = v;
            data[j * n + i] = v;
        }
    }
    Ok(DistMatrix { n, data })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::compress::DictCoder;

    fn rep(unit: &str, times: usize) -> PStr {
        Alphabet::first_letters(2).unwrap().parse(&unit.repeat(times)).unwrap()
    }

    #[test]
    fn degenerate_and_self_distance() {
        let c = DictCoder::new(2);
        assert_eq!(ncd(&c, &[], &[]), 0.0);
        let x = rep("ab", 20);
        let d = ncd(&c, &x, &x);
        assert!(d > 0.0 && d < ncd(&c, &x, &rep("a", 40)), "{d}");
    }

    #[test]
    fn same_language_is_closer() {
        let c = DictCoder::new(2);
        let x = rep("ab", 30);
        let y = rep("ab", 27);
        let z = rep("a", 60);
        assert!(ncd(&c, &x, &y) < ncd(&c, &x, &z));
    }

    #[test]
    fn matrix_shapes() {
        let c = DictCoder::new(2);
        let m = distance_matrix(&c, &[rep("ab", 4)]).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.get(0, 0), 0.0);

        let x = rep("ab", 20);
        let m = distance_matrix(&c, &[x.clone(), x]).unwrap();
        assert_eq!(m.get(0, 1), m.get(1, 0));
        assert!(m.get(0, 1) > 0.0 && m.get(0, 1) < 1.0);
        assert!(distance_matrix(&c, &[]).is_err());
    }

    #[test]
    fn from_rows_validates() {
        assert!(DistMatrix::from_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).is_ok());
        assert!(DistMatrix::from_rows(vec![vec![0.0, 1.0], vec![0.5, 0.0]]).is_err());
        assert!(DistMatrix::from_rows(vec![vec![0.1]]).is_err());
        assert!(DistMatrix::from_rows(vec![vec![0.0, -1.0], vec![-1.0, 0.0]]).is_err());
        assert!(DistMatrix::from_rows(vec![]).is_err());
    }

    #[test]
    fn csv_layout() {
        let m = DistMatrix::from_rows(vec![vec![0.0, 0.25], vec![0.25, 0.0]]).unwrap();
        assert_eq!(m.to_csv(), "0,1\n0,0.25\n0.25,0\n");
        let v: serde_json::Value = serde_json::from_str(&m.to_json()).unwrap();
        assert_eq!(v["n"], 2);
        assert_eq!(v["rows"][0][1], 0.25);
    }
}
