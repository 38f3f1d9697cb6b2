//! Box-entry probabilities from the measure itself, with no closed form.

use crate::arith::ExactScalar;
use crate::error::Result;
use crate::measures::CentralMeasure;
use crate::partitions::{partitions_bounded, partitions_with_length, Cell, Partition};

/// Diagrams `μ ⊢ m` that miss `cell` but to which `cell` can be added:
/// rows above `cell` reach past its column, its own row stops just before
/// it, and rows below are no longer than that.
pub fn upper_hook_set(cell: Cell, m: usize) -> Vec<Partition> {
    let (i, j) = (cell.row, cell.col);
    let fixed = i * (j - 1);
    if m < fixed {
        return Vec::new();
    }
    let rest = m - fixed;
    let mut out = Vec::new();
    for above in 0..=rest {
        let tops = partitions_with_length(above, i - 1);
        if tops.is_empty() {
            continue;
        }
        let below = rest - above;
        let bottoms = if j == 1 {
            if below == 0 {
                vec![Partition::empty()]
            } else {
                Vec::new()
            }
        } else {
            partitions_bounded(below, j - 1, below)
        };
        for top in &tops {
            for bottom in &bottoms {
                let mut parts: Vec<usize> = top.parts().iter().map(|x| x + j - 1).collect();
                if j > 1 {
                    parts.push(j - 1);
                }
                parts.extend_from_slice(bottom.parts());
                out.push(Partition::new(parts).expect("hook-set rows are weakly decreasing"));
            }
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Probability that the `n`-th box of the random tableau lands at `cell`:
/// `Σ dim(μ) κ(μ, μ ∪ cell) φ(μ ∪ cell)` over the hook set at size `n − 1`.
pub fn box_probability_term(measure: &CentralMeasure, cell: Cell, n: usize) -> Result<ExactScalar> {
    if n == 0 {
        return Ok(ExactScalar::zero());
    }
    let mut total = ExactScalar::zero();
    for mu in upper_hook_set(cell, n - 1) {
        let lambda = mu.with_cell(cell)?;
        total += measure.dim(&mu) * measure.kappa(&mu, &lambda)? * measure.phi(&lambda);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::MeasureSpec;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn hook_set_examples() {
        assert_eq!(upper_hook_set(Cell::new(1, 1), 0), vec![Partition::empty()]);
        assert_eq!(upper_hook_set(Cell::new(1, 1), 1), Vec::<Partition>::new());
        assert_eq!(upper_hook_set(Cell::new(2, 1), 2), vec![p("2")]);
        assert_eq!(upper_hook_set(Cell::new(2, 2), 3), vec![p("2,1")]);
        assert_eq!(upper_hook_set(Cell::new(2, 2), 4), vec![p("3,1"), p("2,1,1")]);
        assert_eq!(upper_hook_set(Cell::new(1, 3), 2), vec![p("2")]);
        assert_eq!(upper_hook_set(Cell::new(1, 3), 4), vec![p("2,2"), p("2,1,1")]);
    }

    #[test]
    fn box_probability_examples() {
        let m = CentralMeasure::new(MeasureSpec::PlancherelJack {
            theta: ExactScalar::one(),
        })
        .unwrap();
        let q = |n: i64, d: i64| ExactScalar::new(n, d);
        assert_eq!(box_probability_term(&m, Cell::new(1, 1), 1), Ok(q(1, 1)));
        assert_eq!(box_probability_term(&m, Cell::new(1, 1), 2), Ok(q(0, 1)));
        assert_eq!(box_probability_term(&m, Cell::new(2, 1), 2), Ok(q(1, 2)));
        assert_eq!(box_probability_term(&m, Cell::new(2, 1), 3), Ok(q(1, 3)));
    }
}
