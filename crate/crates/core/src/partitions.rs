//! Young diagrams and their statistics.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{factorial, ExactScalar, Pochhammer};
use crate::error::{Error, Result};

/// Default size cap for brute-force tableau enumeration.
pub const DEFAULT_TABLEAU_CAP: usize = 10;

/// A box `(row, col)` of a diagram, both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        assert!(row >= 1 && col >= 1, "cells are 1-based");
        Cell { row, col }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

impl FromStr for Cell {
    type Err = Error;

    /// `"i,j"`, optionally parenthesized.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (t, off) = match t.strip_prefix('(').and_then(|x| x.strip_suffix(')')) {
            Some(inner) => (inner, 1),
            None => (t, 0),
        };
        let (a, b) = t
            .split_once(',')
            .ok_or_else(|| Error::parse(off, "expected \"row,col\""))?;
        let row: usize = a
            .trim()
            .parse()
            .map_err(|_| Error::parse(off, format!("invalid row {a:?}")))?;
        let col: usize = b
            .trim()
            .parse()
            .map_err(|_| Error::parse(off + a.len() + 1, format!("invalid column {b:?}")))?;
        if row == 0 || col == 0 {
            return Err(Error::parse(off, "rows and columns are 1-based"));
        }
        Ok(Cell { row, col })
    }
}

/// Weakly decreasing sequence of positive integers. The empty sequence is
/// the empty diagram.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Validates weak decrease. Trailing zeros are stripped; a zero followed
    /// by a positive part is rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if let Some(k) = parts.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::InvalidIndexTuple(format!(
                "parts {parts:?} are not weakly decreasing at index {}",
                k + 1
            )));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidIndexTuple(format!(
                "parts {parts:?} contain an interior zero"
            )));
        }
        Ok(Partition { parts })
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&p| p > 0));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of nonzero rows.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Length of row `i` (1-based); zero beyond the last row.
    pub fn row(&self, i: usize) -> usize {
        debug_assert!(i >= 1);
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// Length of column `j` (1-based).
    pub fn column(&self, j: usize) -> usize {
        self.parts.iter().take_while(|&&p| p >= j).count()
    }

    /// Number of parts equal to `k`.
    pub fn multiplicity(&self, k: usize) -> usize {
        self.parts.iter().filter(|&&p| p == k).count()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        Partition::from_parts_unchecked((1..=width).map(|j| self.column(j)).collect())
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.row(cell.row) >= cell.col
    }

    /// Boxes in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |j| Cell::new(i + 1, j)))
    }

    fn check_contains(&self, cell: Cell) -> Result<()> {
        if self.contains(cell) {
            Ok(())
        } else {
            Err(Error::BoxOutsideDiagram {
                partition: self.clone(),
                cell,
            })
        }
    }

    pub fn arm(&self, cell: Cell) -> Result<usize> {
        self.check_contains(cell)?;
        Ok(self.row(cell.row) - cell.col)
    }

    pub fn leg(&self, cell: Cell) -> Result<usize> {
        self.check_contains(cell)?;
        Ok(self.column(cell.col) - cell.row)
    }

    /// Boxes whose addition gives a diagram, in increasing row order.
    pub fn addable_cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for i in 1..=self.length() + 1 {
            let len = self.row(i);
            if i == 1 || self.row(i - 1) > len {
                out.push(Cell::new(i, len + 1));
            }
        }
        out
    }

    /// Boxes whose removal gives a diagram, in increasing row order.
    pub fn removable_cells(&self) -> Vec<Cell> {
        (1..=self.length())
            .filter(|&i| self.row(i) > self.row(i + 1))
            .map(|i| Cell::new(i, self.row(i)))
            .collect()
    }

    pub fn is_addable(&self, cell: Cell) -> bool {
        self.row(cell.row) + 1 == cell.col && (cell.row == 1 || self.row(cell.row - 1) >= cell.col)
    }

    /// `self ∪ cell`; errors unless the result is a diagram.
    pub fn with_cell(&self, cell: Cell) -> Result<Partition> {
        if !self.is_addable(cell) {
            return Err(Error::InvalidIndexTuple(format!(
                "box {cell} cannot be added to {self}"
            )));
        }
        let mut parts = self.parts.clone();
        if cell.row > parts.len() {
            parts.push(1);
        } else {
            parts[cell.row - 1] += 1;
        }
        Ok(Partition::from_parts_unchecked(parts))
    }

    /// `self ∖ cell`; errors unless `cell` is a removable corner.
    pub fn without_cell(&self, cell: Cell) -> Result<Partition> {
        if !(self.row(cell.row) == cell.col && self.row(cell.row + 1) < cell.col) {
            return Err(Error::BoxOutsideDiagram {
                partition: self.clone(),
                cell,
            });
        }
        let mut parts = self.parts.clone();
        parts[cell.row - 1] -= 1;
        if parts[cell.row - 1] == 0 {
            parts.pop();
        }
        Ok(Partition::from_parts_unchecked(parts))
    }

    /// The box `upper ∖ lower` when `lower ↗ upper` is an edge.
    pub fn added_cell(lower: &Partition, upper: &Partition) -> Option<Cell> {
        if upper.size() != lower.size() + 1 || upper.length() > lower.length() + 1 {
            return None;
        }
        let mut found = None;
        for i in 1..=upper.length() {
            match upper.row(i).checked_sub(lower.row(i)) {
                Some(0) => {}
                Some(1) if found.is_none() => found = Some(Cell::new(i, upper.row(i))),
                _ => return None,
            }
        }
        found
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("-");
        }
        let mut first = true;
        for p in &self.parts {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma-separated parts, `"-"` or `""` for the empty diagram.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "-" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        let mut pos = 0;
        for piece in t.split(',') {
            let v: usize = piece
                .trim()
                .parse()
                .map_err(|_| Error::parse(pos, format!("invalid part {piece:?}")))?;
            if v == 0 {
                return Err(Error::parse(pos, "parts must be positive"));
            }
            if parts.last().is_some_and(|&prev| prev < v) {
                return Err(Error::parse(pos, "parts must be weakly decreasing"));
            }
            parts.push(v);
            pos += piece.len() + 1;
        }
        Ok(Partition::from_parts_unchecked(parts))
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// All partitions of `n` with every part `<= max_part` and at most
/// `max_len` parts, in reverse lexicographic order.
pub fn partitions_bounded(n: usize, max_part: usize, max_len: usize) -> Vec<Partition> {
    fn rec(n: usize, max_part: usize, max_len: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition::from_parts_unchecked(prefix.clone()));
            return;
        }
        if max_len == 0 {
            return;
        }
        for p in (1..=max_part.min(n)).rev() {
            // the remaining rows can hold at most p * (max_len - 1)
            if p.saturating_mul(max_len) < n {
                break;
            }
            prefix.push(p);
            rec(n - p, p, max_len - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_part, max_len, &mut Vec::new(), &mut out);
    out
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    partitions_bounded(n, n, n)
}

/// Partitions of `n` with exactly `k` parts.
pub fn partitions_with_length(n: usize, k: usize) -> Vec<Partition> {
    if k == 0 {
        return if n == 0 { vec![Partition::empty()] } else { Vec::new() };
    }
    if n < k {
        return Vec::new();
    }
    // subtract one from each of the k parts
    partitions_bounded(n - k, n - k, k)
        .into_iter()
        .map(|p| {
            let mut parts: Vec<usize> = p.parts().iter().map(|x| x + 1).collect();
            parts.resize(k, 1);
            Partition::from_parts_unchecked(parts)
        })
        .collect()
}

/// `(j-1) - (i-1) θ`.
pub fn content_theta(cell: Cell, theta: &ExactScalar) -> ExactScalar {
    ExactScalar::from(cell.col - 1) - ExactScalar::from(cell.row - 1) * theta
}

/// `a + θ ℓ + 1`.
pub fn hook_theta(mu: &Partition, cell: Cell, theta: &ExactScalar) -> Result<ExactScalar> {
    let a = mu.arm(cell)?;
    let l = mu.leg(cell)?;
    Ok(ExactScalar::from(a + 1) + ExactScalar::from(l) * theta)
}

/// `a + θ ℓ + θ`.
pub fn hook_prime_theta(mu: &Partition, cell: Cell, theta: &ExactScalar) -> Result<ExactScalar> {
    let a = mu.arm(cell)?;
    let l = mu.leg(cell)?;
    Ok(ExactScalar::from(a) + ExactScalar::from(l + 1) * theta)
}

pub fn big_h_theta(mu: &Partition, theta: &ExactScalar) -> ExactScalar {
    mu.cells()
        .map(|c| hook_theta(mu, c, theta).expect("cell of mu"))
        .product()
}

pub fn big_h_prime_theta(mu: &Partition, theta: &ExactScalar) -> ExactScalar {
    mu.cells()
        .map(|c| hook_prime_theta(mu, c, theta).expect("cell of mu"))
        .product()
}

/// Row-pair Pochhammer form of [`big_h_theta`].
pub fn big_h_theta_alt(mu: &Partition, theta: &ExactScalar) -> ExactScalar {
    let len = mu.length();
    let one = ExactScalar::one();
    let mut acc = ExactScalar::one();
    for i in 1..=len {
        for j in i + 1..=len {
            let d = mu.row(i) - mu.row(j);
            let num = (&one + ExactScalar::from(j - i - 1) * theta).pochhammer(d);
            let den = (&one + ExactScalar::from(j - i) * theta).pochhammer(d);
            acc = acc * num / den;
        }
        acc *= (&one + ExactScalar::from(len - i) * theta).pochhammer(mu.row(i));
    }
    acc
}

/// Row-pair Pochhammer form of [`big_h_prime_theta`].
pub fn big_h_prime_theta_alt(mu: &Partition, theta: &ExactScalar) -> ExactScalar {
    let len = mu.length();
    let mut acc = ExactScalar::one();
    for i in 1..=len {
        for j in i + 1..=len {
            let d = mu.row(i) - mu.row(j);
            let num = (ExactScalar::from(j - i) * theta).pochhammer(d);
            let den = (ExactScalar::from(j - i + 1) * theta).pochhammer(d);
            acc = acc * num / den;
        }
        acc *= (ExactScalar::from(len + 1 - i) * theta).pochhammer(mu.row(i));
    }
    acc
}

/// `|μ|! / H_θ(μ)`.
pub fn dim_theta_hook(mu: &Partition, theta: &ExactScalar) -> ExactScalar {
    ExactScalar::from(factorial(mu.size())) / big_h_theta(mu, theta)
}

/// `|μ|! / (μ_1! μ_2! ...)`.
pub fn dim_kingman(mu: &Partition) -> BigInt {
    mu.parts()
        .iter()
        .fold(factorial(mu.size()), |acc, &p| acc / factorial(p))
}

/// A standard filling of a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardTableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn entry(&self, cell: Cell) -> Option<usize> {
        self.rows.get(cell.row - 1)?.get(cell.col - 1).copied()
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// The path `∅ ↗ τ¹ ↗ ... ↗ shape`.
    pub fn path(&self) -> Vec<Partition> {
        let n = self.shape.size();
        (0..=n)
            .map(|k| {
                let parts = self
                    .rows
                    .iter()
                    .map(|r| r.iter().filter(|&&x| x <= k).count())
                    .filter(|&c| c > 0)
                    .collect();
                Partition::from_parts_unchecked(parts)
            })
            .collect()
    }

    fn is_standard(&self) -> bool {
        let mut seen = vec![false; self.shape.size() + 1];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if x == 0 || x >= seen.len() || std::mem::replace(&mut seen[x], true) {
                    return false;
                }
                if j > 0 && row[j - 1] >= x {
                    return false;
                }
                if i > 0 && self.rows[i - 1][j] >= x {
                    return false;
                }
            }
        }
        true
    }
}

/// All standard tableaux of shape `lambda`, built by removing the corner
/// holding the largest label. Errors when `|lambda| > cap`.
pub fn enumerate_standard_tableaux(lambda: &Partition, cap: usize) -> Result<Vec<StandardTableau>> {
    if lambda.size() > cap {
        return Err(Error::CapExceeded {
            size: lambda.size(),
            cap,
        });
    }
    fn rec(shape: &Partition) -> Vec<StandardTableau> {
        let n = shape.size();
        if n == 0 {
            return vec![StandardTableau {
                shape: Partition::empty(),
                rows: Vec::new(),
            }];
        }
        let mut out = Vec::new();
        for corner in shape.removable_cells() {
            let smaller = shape.without_cell(corner).expect("removable corner");
            for mut t in rec(&smaller) {
                if corner.row > t.rows.len() {
                    t.rows.push(Vec::new());
                }
                t.rows[corner.row - 1].push(n);
                t.shape = shape.clone();
                out.push(t);
            }
        }
        out
    }
    let out = rec(lambda);
    debug_assert!(out.iter().all(StandardTableau::is_standard));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> ExactScalar {
        ExactScalar::new(n, d)
    }

    #[test]
    fn conjugates() {
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p("5").conjugate(), p("1,1,1,1,1"));
        assert_eq!(p("4,3,1").conjugate(), p("3,2,2,1"));
    }

    #[test]
    fn arm_and_leg() {
        assert_eq!(p("1").arm(Cell::new(1, 1)), Ok(0));
        assert_eq!(p("1").leg(Cell::new(1, 1)), Ok(0));
        assert_eq!(p("4,3,1").arm(Cell::new(1, 2)), Ok(2));
        assert_eq!(p("4,3,1").leg(Cell::new(1, 2)), Ok(1));
        assert_eq!(p("2,1").arm(Cell::new(1, 1)), Ok(1));
        assert_eq!(p("2,1").leg(Cell::new(1, 1)), Ok(1));
        assert!(matches!(
            p("2,1").arm(Cell::new(2, 2)),
            Err(Error::BoxOutsideDiagram { .. })
        ));
    }

    #[test]
    fn contents() {
        assert_eq!(content_theta(Cell::new(1, 1), &q(7, 3)), ExactScalar::zero());
        assert_eq!(content_theta(Cell::new(2, 1), &q(1, 1)), q(-1, 1));
        assert_eq!(content_theta(Cell::new(1, 3), &q(1, 2)), q(2, 1));
    }

    #[test]
    fn corners() {
        assert_eq!(Partition::empty().addable_cells(), vec![Cell::new(1, 1)]);
        assert_eq!(
            p("2,1").addable_cells(),
            vec![Cell::new(1, 3), Cell::new(2, 2), Cell::new(3, 1)]
        );
        assert_eq!(p("2,2").removable_cells(), vec![Cell::new(2, 2)]);
        assert!(Partition::empty().removable_cells().is_empty());
    }

    #[test]
    fn hooks() {
        let th = q(3, 7);
        assert_eq!(hook_theta(&p("1"), Cell::new(1, 1), &th), Ok(q(1, 1)));
        assert_eq!(hook_prime_theta(&p("1"), Cell::new(1, 1), &th), Ok(th.clone()));
        assert_eq!(
            hook_theta(&p("2,1"), Cell::new(1, 1), &th),
            Ok(&th + &q(2, 1))
        );
        assert_eq!(
            hook_prime_theta(&p("1,1"), Cell::new(1, 1), &th),
            Ok(&th * &q(2, 1))
        );
        assert!(hook_theta(&p("1"), Cell::new(1, 2), &th).is_err());
    }

    #[test]
    fn hook_products() {
        let th = q(3, 7);
        assert_eq!(big_h_theta(&Partition::empty(), &th), ExactScalar::one());
        assert_eq!(big_h_prime_theta(&Partition::empty(), &th), ExactScalar::one());
        assert_eq!(big_h_theta(&p("2,1"), &q(1, 1)), q(3, 1));
        assert_eq!(big_h_prime_theta(&p("2,1"), &q(1, 1)), q(3, 1));
        assert_eq!(big_h_theta(&p("1,1"), &th), &th + &q(1, 1));
        assert_eq!(big_h_prime_theta(&p("1,1"), &th), &th * &th * q(2, 1));
        assert_eq!(big_h_theta_alt(&p("1,1"), &th), &th + &q(1, 1));
        assert_eq!(big_h_prime_theta_alt(&p("1,1"), &th), &th * &th * q(2, 1));
        assert_eq!(big_h_theta_alt(&Partition::empty(), &th), ExactScalar::one());
        assert_eq!(big_h_prime_theta_alt(&Partition::empty(), &th), ExactScalar::one());
    }

    #[test]
    fn dimensions() {
        let th = q(3, 7);
        assert_eq!(dim_theta_hook(&p("1"), &th), ExactScalar::one());
        assert_eq!(dim_theta_hook(&p("2,1"), &th), q(6, 1) / (&th + &q(2, 1)));
        assert_eq!(dim_theta_hook(&p("2,1"), &q(1, 1)), q(2, 1));
        assert_eq!(dim_theta_hook(&p("1,1"), &th), q(2, 1) / (&th + &q(1, 1)));
        assert_eq!(dim_kingman(&p("4")), BigInt::from(1));
        assert_eq!(dim_kingman(&p("2,1")), BigInt::from(3));
        assert_eq!(dim_kingman(&p("2,2")), BigInt::from(6));
    }

    #[test]
    fn tableaux() {
        assert_eq!(enumerate_standard_tableaux(&p("1"), 10).unwrap().len(), 1);
        assert_eq!(enumerate_standard_tableaux(&p("2,1"), 10).unwrap().len(), 2);
        assert_eq!(enumerate_standard_tableaux(&p("2,2"), 10).unwrap().len(), 2);
        assert_eq!(
            enumerate_standard_tableaux(&p("6,5"), 10),
            Err(Error::CapExceeded { size: 11, cap: 10 })
        );
        let ts = enumerate_standard_tableaux(&p("3,2"), 10).unwrap();
        assert_eq!(ts.len(), 5);
        for t in &ts {
            let path = t.path();
            assert_eq!(path.first(), Some(&Partition::empty()));
            assert_eq!(path.last(), Some(&p("3,2")));
            for w in path.windows(2) {
                assert!(Partition::added_cell(&w[0], &w[1]).is_some());
            }
        }
    }

    #[test]
    fn parse_partitions() {
        assert_eq!(p("4,3,1").parts(), &[4, 3, 1]);
        assert_eq!(p("-"), Partition::empty());
        assert_eq!(p(""), Partition::empty());
        assert!(matches!(
            "3,4".parse::<Partition>(),
            Err(Error::Parse { position: 2, .. })
        ));
        assert!(matches!("3,x".parse::<Partition>(), Err(Error::Parse { .. })));
        assert_eq!(Partition::new(vec![3, 1, 0, 0]).unwrap(), p("3,1"));
        assert!(Partition::new(vec![3, 0, 1]).is_err());
        assert_eq!(Partition::empty().to_string(), "-");
    }

    #[test]
    fn edges() {
        assert_eq!(Partition::added_cell(&p("2"), &p("2,1")), Some(Cell::new(2, 1)));
        assert_eq!(Partition::added_cell(&p("-"), &p("1")), Some(Cell::new(1, 1)));
        assert_eq!(Partition::added_cell(&p("2"), &p("1,1,1")), None);
        assert_eq!(Partition::added_cell(&p("2"), &p("2,2")), None);
        assert_eq!(Partition::added_cell(&p("2,1"), &p("1,1,1,1")), None);
    }

    #[test]
    fn enumerations() {
        let counts: Vec<usize> = (0..=10).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(partitions_with_length(5, 2), vec![p("4,1"), p("3,2")]);
        assert_eq!(partitions_with_length(0, 0), vec![Partition::empty()]);
        assert!(partitions_with_length(2, 3).is_empty());
        assert_eq!(partitions_bounded(4, 2, 4), vec![p("2,2"), p("2,1,1"), p("1,1,1,1")]);
    }
}
