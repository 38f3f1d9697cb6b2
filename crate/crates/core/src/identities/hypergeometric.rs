//! Truncated ₃F₂ series at unit argument and the closed form for the
//! hook box (2,1) of the z-measures.

use crate::arith::{ExactScalar, GaussianExact};
use crate::error::{Error, Result};

/// The terms `(a₁)_m(a₂)_m(a₃)_m / ((b₁)_m(b₂)_m m!)` for `m = 0..=n`.
pub fn hyp3f2_terms(a: [&GaussianExact; 3], b: [&GaussianExact; 2], n: usize) -> Result<Vec<GaussianExact>> {
    let mut terms = Vec::with_capacity(n + 1);
    let mut term = GaussianExact::one();
    terms.push(term.clone());
    for m in 0..n {
        let mm = ExactScalar::from(m);
        let den_b = &(b[0] + &mm) * &(b[1] + &mm);
        if den_b.is_zero() {
            return Err(Error::PoleInDenominator(m));
        }
        let num = &(&(a[0] + &mm) * &(a[1] + &mm)) * &(a[2] + &mm);
        let den = &den_b * &GaussianExact::real(ExactScalar::from(m + 1));
        term = &(&term * &num) / &den;
        terms.push(term.clone());
    }
    Ok(terms)
}

/// `Σ_{m=0}^{n} (a₁)_m(a₂)_m(a₃)_m / ((b₁)_m(b₂)_m m!)`, exact.
pub fn hyp3f2_partial_sum(a: [&GaussianExact; 3], b: [&GaussianExact; 2], n: usize) -> Result<GaussianExact> {
    let terms = hyp3f2_terms(a, b, n)?;
    Ok(terms
        .iter()
        .fold(GaussianExact::zero(), |acc, t| &acc + t))
}

/// The parameters `(z+1, z̄+1, 2; θ+2, zz̄/θ+2)` of the series for the box (2,1).
pub fn hook21_parameters(theta: &ExactScalar, z: &GaussianExact) -> ([GaussianExact; 3], [GaussianExact; 2]) {
    let one = ExactScalar::one();
    let two = ExactScalar::from(2);
    (
        [
            z + &one,
            &z.conj() + &one,
            GaussianExact::real(two.clone()),
        ],
        [
            GaussianExact::real(theta + &two),
            GaussianExact::real(z.norm_sq() / theta + two),
        ],
    )
}

/// `(θ+1)(zz̄+θ) / ((z−θ)(z̄−θ))`.
pub fn closed_form_261(theta: &ExactScalar, z: &GaussianExact) -> Result<ExactScalar> {
    let denom = (z - theta).norm_sq();
    if denom.is_zero() {
        return Err(Error::ZeroDenominator(format!("z = theta = {theta}")));
    }
    let one = ExactScalar::one();
    Ok((theta + &one) * (z.norm_sq() + theta) / denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> GaussianExact {
        s.parse().unwrap()
    }

    #[test]
    fn trivial_sums() {
        let (a, b) = hook21_parameters(&ExactScalar::one(), &c("i"));
        assert_eq!(
            hyp3f2_partial_sum([&a[0], &a[1], &a[2]], [&b[0], &b[1]], 0),
            Ok(GaussianExact::one())
        );
        let zero = GaussianExact::zero();
        for n in 0..6 {
            assert_eq!(
                hyp3f2_partial_sum([&a[0], &a[1], &zero], [&b[0], &b[1]], n),
                Ok(GaussianExact::one())
            );
        }
    }

    #[test]
    fn pole() {
        let one = GaussianExact::one();
        let neg = c("-2");
        assert_eq!(
            hyp3f2_partial_sum([&one, &one, &one], [&neg, &one], 5),
            Err(Error::PoleInDenominator(2))
        );
        assert!(hyp3f2_partial_sum([&one, &one, &one], [&neg, &one], 2).is_ok());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_261(&ExactScalar::one(), &c("i")), Ok(ExactScalar::from(2)));
        assert_eq!(
            closed_form_261(&ExactScalar::one(), &c("3/2+1/2i")),
            Ok(ExactScalar::from(14))
        );
        assert!(closed_form_261(&ExactScalar::one(), &c("1")).is_err());
    }

    #[test]
    fn first_terms() {
        // θ = 1, z = i: term_1 = (1+i)(1−i)·2 / (3·3·1)
        let (a, b) = hook21_parameters(&ExactScalar::one(), &c("i"));
        let terms = hyp3f2_terms([&a[0], &a[1], &a[2]], [&b[0], &b[1]], 1).unwrap();
        assert_eq!(terms[1], GaussianExact::real(ExactScalar::new(4, 9)));
    }
}
