//! Summands of the printed box-entry identities.
//!
//! Every function validates its index tuple and returns the exact summand.

use std::fmt;
use std::str::FromStr;

use crate::arith::{factorial, ExactScalar, GaussianExact, Pochhammer};
use crate::error::{Error, Result};
use crate::measures::is_degenerate_z;
use crate::partitions::Cell;

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidIndexTuple(msg.into())
}

fn fact(n: usize) -> ExactScalar {
    ExactScalar::from(factorial(n))
}

fn int(n: i64) -> ExactScalar {
    ExactScalar::from(n)
}

fn check_len(name: &str, xs: &[usize], len: usize) -> Result<()> {
    if xs.len() != len {
        return Err(invalid(format!("{name} has length {}, expected {len}", xs.len())));
    }
    Ok(())
}

fn check_strict(name: &str, xs: &[usize]) -> Result<()> {
    if xs.contains(&0) || xs.windows(2).any(|w| w[0] <= w[1]) {
        return Err(invalid(format!(
            "{name} = {xs:?} must be strictly decreasing positive integers"
        )));
    }
    Ok(())
}

fn check_weak(name: &str, xs: &[usize]) -> Result<()> {
    if xs.contains(&0) || xs.windows(2).any(|w| w[0] < w[1]) {
        return Err(invalid(format!(
            "{name} = {xs:?} must be weakly decreasing positive integers"
        )));
    }
    Ok(())
}

fn vandermonde_sq(xs: &[usize]) -> ExactScalar {
    let mut acc = ExactScalar::one();
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            let d = int(xs[i] as i64 - xs[j] as i64);
            acc *= &d * &d;
        }
    }
    acc
}

/// The size `|μ|` of the hook-set diagram indexed by `(p, q)`; the summand
/// sits at level `|μ| + 1`.
pub fn plancherel_young_size(p: &[usize], q: &[usize]) -> Option<usize> {
    let (k, l) = (p.len() as i64, q.len() as i64);
    let total = p.iter().chain(q).sum::<usize>() as i64;
    let shift = k + l - (k - l) * (k - l);
    let m = total + shift / 2;
    usize::try_from(m).ok()
}

/// Summand for the Plancherel measure on the Young graph and the box
/// `(k+1, l+1)`. `p` and `q` are strictly decreasing of lengths `k`, `l`.
pub fn term_plancherel_young(k: usize, l: usize, p: &[usize], q: &[usize]) -> Result<ExactScalar> {
    if k + l == 0 {
        return Err(invalid("k + l must be at least 1"));
    }
    check_len("p", p, k)?;
    check_len("q", q, l)?;
    check_strict("p", p)?;
    check_strict("q", q)?;
    let m = plancherel_young_size(p, q).ok_or_else(|| invalid("negative factorial argument"))?;
    let mut denom = ExactScalar::one();
    let mut tail = ExactScalar::one();
    for &x in p.iter().chain(q) {
        let f = fact(x);
        denom *= &f * &f;
        tail *= ExactScalar::new(x as i64, x as i64 + 1);
    }
    for &a in p {
        for &b in q {
            let s = int((a + b + 1) as i64);
            denom *= &s * &s;
        }
    }
    Ok(fact(m) * vandermonde_sq(p) * vandermonde_sq(q) / denom * tail)
}

/// `a` extended by `a_{k+1} = 1` and zeros beyond, read 1-based.
fn extended(a: &[usize]) -> impl Fn(usize) -> i64 + '_ {
    let k = a.len();
    move |i| {
        if i <= k {
            a[i - 1] as i64
        } else if i == k + 1 {
            1
        } else {
            0
        }
    }
}

/// The factor shared by the hook-box summands:
///
/// `|a|! ∏_{i<j≤k}((j−i)θ + a_i − a_j)
///   / (∏_i (a_i − a_{i+1})! ∏_{i<j≤k+1} ((j−i)θ + a_i − a_{j−1})_{a_{j−1} − a_{j+1} + 1})`.
fn hook_core(theta: &ExactScalar, a: &[usize]) -> ExactScalar {
    let k = a.len();
    let x = extended(a);
    let size: usize = a.iter().sum();
    let shift = |d: usize| ExactScalar::from(d) * theta;
    let mut numer = fact(size);
    for i in 1..=k {
        for j in i + 1..=k {
            numer *= shift(j - i) + int(x(i) - x(j));
        }
    }
    let mut denom = ExactScalar::one();
    for i in 1..=k {
        denom *= fact((x(i) - x(i + 1)) as usize);
    }
    for i in 1..=k + 1 {
        for j in i + 1..=k + 1 {
            let base = shift(j - i) + int(x(i) - x(j - 1));
            let n = (x(j - 1) - x(j + 1) + 1) as usize;
            denom *= base.pochhammer(n);
        }
    }
    numer / denom
}

/// θ-Plancherel summand for the box `(k+1, 1)`.
pub fn term_theta_plancherel_hook(k: usize, theta: &ExactScalar, a: &[usize]) -> Result<ExactScalar> {
    check_len("a", a, k)?;
    check_weak("a", a)?;
    let size: usize = a.iter().sum();
    Ok(hook_core(theta, a) * theta.pow(size as i32))
}

/// z-measure summand for the box `(k+1, 1)`.
pub fn term_z_measure_hook(
    k: usize,
    theta: &ExactScalar,
    z: &GaussianExact,
    mu: &[usize],
) -> Result<ExactScalar> {
    check_len("mu", mu, k)?;
    check_weak("mu", mu)?;
    if is_degenerate_z(theta, z) {
        return Err(Error::DegenerateParameter(format!(
            "z = {z} lies in Z + Z*theta for theta = {theta}"
        )));
    }
    let zbar = z.conj();
    let kth = ExactScalar::from(k) * theta;
    let mut prod = &(z - &kth) * &(&zbar - &kth);
    for (idx, &m) in mu.iter().enumerate() {
        let sh = ExactScalar::from(idx) * theta;
        prod = &prod * &(z - &sh).pochhammer(m);
        prod = &prod * &(&zbar - &sh).pochhammer(m);
    }
    let numer = prod
        .into_real()
        .expect("conjugate pairing leaves no imaginary part");
    let size: usize = mu.iter().sum();
    let denom = (z.norm_sq() / theta).pochhammer(size + 1);
    Ok(hook_core(theta, mu) / theta * numer / denom)
}

/// Level of a Kingman summand: `Σs + Σ j·r_j + kl + k + l + 1`.
pub fn kingman_level(k: usize, l: usize, r: &[usize], s: &[usize]) -> usize {
    let weighted: usize = r.iter().enumerate().map(|(j, &x)| (j + 1) * x).sum();
    s.iter().sum::<usize>() + weighted + k * l + k + l + 1
}

/// Kingman t-measure summand for the box `(k+1, l+1)`, including the
/// overall `1/k!`. `r` has length `l`, `s` has length `k`.
pub fn term_kingman_t(k: usize, l: usize, t: &ExactScalar, r: &[usize], s: &[usize]) -> Result<ExactScalar> {
    if l == 0 {
        return Err(Error::UnsupportedParameter("l = 0 is not covered; need l >= 1".into()));
    }
    check_len("r", r, l)?;
    check_len("s", s, k)?;
    let m = kingman_level(k, l, r, s) - 1;
    let mut denom = fact(k);
    for &x in s {
        denom *= ExactScalar::from(x + l + 1);
    }
    for (j, &x) in r.iter().enumerate() {
        denom *= ExactScalar::from(j + 1).pow(x as i32) * fact(x);
    }
    let power = k + r.iter().sum::<usize>() + 1;
    Ok(fact(m) / denom * t.pow(power as i32) / t.pochhammer(m + 1))
}

/// `(|p| − k(k−1)/2)! V²(p) / ∏ (p_i − 1)!(p_i + 1)!`.
pub fn f_k(k: usize, p: &[usize]) -> Result<ExactScalar> {
    check_len("p", p, k)?;
    check_strict("p", p)?;
    let m = p.iter().sum::<usize>() - k * (k.saturating_sub(1)) / 2;
    let mut denom = ExactScalar::one();
    for &x in p {
        denom *= fact(x - 1) * fact(x + 1);
    }
    Ok(fact(m) * vandermonde_sq(p) / denom)
}

/// The θ = 1 hook-box summand, with `μ_{k+1} = 1`.
pub fn g_k(k: usize, mu: &[usize]) -> Result<ExactScalar> {
    check_len("mu", mu, k)?;
    check_weak("mu", mu)?;
    Ok(hook_core(&ExactScalar::one(), mu))
}

/// The special boxes for which closed-form summands are listed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpecialCase {
    /// Box (2,2), indices `(r, s)`.
    Box22,
    /// Box (2,1), index `r`.
    Box21,
    /// Box (3,1), indices `s ≥ r ≥ 0`.
    Box31,
    /// Box (4,1), indices `u ≥ s ≥ r ≥ 0`.
    Box41,
    /// Box (5,1), indices `v ≥ u ≥ s ≥ r ≥ 0`.
    Box51,
}

impl SpecialCase {
    pub const ALL: [SpecialCase; 5] = [
        SpecialCase::Box22,
        SpecialCase::Box21,
        SpecialCase::Box31,
        SpecialCase::Box41,
        SpecialCase::Box51,
    ];

    pub fn cell(self) -> Cell {
        match self {
            SpecialCase::Box22 => Cell::new(2, 2),
            SpecialCase::Box21 => Cell::new(2, 1),
            SpecialCase::Box31 => Cell::new(3, 1),
            SpecialCase::Box41 => Cell::new(4, 1),
            SpecialCase::Box51 => Cell::new(5, 1),
        }
    }

    pub fn arity(self) -> usize {
        match self {
            SpecialCase::Box21 => 1,
            SpecialCase::Box22 | SpecialCase::Box31 => 2,
            SpecialCase::Box41 => 3,
            SpecialCase::Box51 => 4,
        }
    }

    /// Diagram size at which the summand with these indices is entered.
    pub fn level(self, idx: &[usize]) -> usize {
        let sum: usize = idx.iter().sum();
        match self {
            SpecialCase::Box22 => sum + 4,
            SpecialCase::Box21 => sum + 2,
            SpecialCase::Box31 => sum + 3,
            SpecialCase::Box41 => sum + 4,
            SpecialCase::Box51 => sum + 5,
        }
    }

    /// Every valid index tuple at the given level.
    pub fn indices_at_level(self, n: usize) -> Vec<Vec<usize>> {
        let base = self.level(&vec![0; self.arity()]);
        if n < base {
            return Vec::new();
        }
        let total = n - base;
        let mut out = Vec::new();
        match self {
            SpecialCase::Box21 => out.push(vec![total]),
            SpecialCase::Box22 => {
                for r in 0..=total {
                    out.push(vec![r, total - r]);
                }
            }
            _ => {
                // weakly increasing tuples of the given arity and sum
                fn rec(len: usize, rest: usize, min: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
                    if len == 1 {
                        if rest >= min {
                            prefix.push(rest);
                            out.push(prefix.clone());
                            prefix.pop();
                        }
                        return;
                    }
                    let mut x = min;
                    while x * len <= rest {
                        prefix.push(x);
                        rec(len - 1, rest - x, x, prefix, out);
                        prefix.pop();
                        x += 1;
                    }
                }
                rec(self.arity(), total, 0, &mut Vec::new(), &mut out);
            }
        }
        out
    }
}

impl fmt::Display for SpecialCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.cell();
        write!(f, "{},{}", c.row, c.col)
    }
}

impl FromStr for SpecialCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cell: Cell = s.parse()?;
        SpecialCase::ALL
            .into_iter()
            .find(|c| c.cell() == cell)
            .ok_or_else(|| Error::parse(0, format!("no special case for box {cell}")))
    }
}

/// The listed closed-form summand for a special box.
pub fn special_case_term(case: SpecialCase, theta: &ExactScalar, idx: &[usize]) -> Result<ExactScalar> {
    if idx.len() != case.arity() {
        return Err(invalid(format!(
            "box {case} takes {} indices, got {}",
            case.arity(),
            idx.len()
        )));
    }
    if case != SpecialCase::Box22 && idx.windows(2).any(|w| w[0] > w[1]) {
        return Err(invalid(format!("indices {idx:?} must be weakly increasing")));
    }
    let th = theta;
    let n = |x: usize| ExactScalar::from(x);
    // c·θ + x
    let lin = |c: usize, x: i64| ExactScalar::from(c) * th + int(x);
    let poch = |c: usize, x: i64, m: usize| lin(c, x).pochhammer(m);
    let d = |a: usize, b: usize| a as i64 - b as i64;
    let value = match case {
        SpecialCase::Box21 => {
            let r = idx[0];
            n(r + 1) * th.pow(r as i32 + 1) / th.pochhammer(r + 2)
        }
        SpecialCase::Box22 => {
            let (r, s) = (idx[0], idx[1]);
            let (ri, si) = (r as i64, s as i64);
            let numer = fact(r + s + 3) * th.pow(ri as i32 - si as i32 + 2);
            let denom = (lin(s + 1, ri + 2))
                * fact(r + 1)
                * th.recip().pochhammer(s + 1)
                * lin(s + 2, ri + 1)
                * lin(2, ri)
                * lin(s + 1, 1)
                * th.pochhammer(r)
                * fact(s);
            let tail = lin(2, ri) * n(r + 1) / (lin(1, ri + 1) * lin(1, ri));
            numer / denom * tail
        }
        SpecialCase::Box31 => {
            let (r, s) = (idx[0], idx[1]);
            fact(s + r + 2) * th.pow((s + r + 2) as i32) * lin(1, d(s, r))
                / (fact(r)
                    * fact(s - r)
                    * th.pochhammer(r + 2)
                    * th.pochhammer(s + 1)
                    * poch(2, d(s, r), r + 2))
        }
        SpecialCase::Box41 | SpecialCase::Box51 => {
            let (r, s, u) = (idx[0], idx[1], idx[2]);
            let top = idx.iter().sum::<usize>() + case.arity();
            let mut value = fact(top)
                * th.pow(top as i32)
                * lin(1, d(s, r))
                * lin(1, d(u, s))
                * lin(2, d(u, r))
                / (fact(r)
                    * fact(s - r)
                    * fact(u - s)
                    * th.pochhammer(r + 2)
                    * th.pochhammer(s + 1)
                    * th.pochhammer(u - r + 1))
                / (poch(2, d(s, r), r + 2) * poch(2, d(u, s), s + 1) * poch(3, d(u, r), r + 2));
            if case == SpecialCase::Box51 {
                let v = idx[3];
                value = value * lin(1, d(v, u)) * lin(2, d(v, s)) * lin(3, d(v, r))
                    / (fact(v - u)
                        * th.pochhammer(v - s + 1)
                        * poch(2, d(v, u), u - r + 1)
                        * poch(3, d(v, s), s + 1)
                        * poch(4, d(v, r), r + 2));
            }
            value
        }
    };
    Ok(value)
}
