//! Closed forms: Stirling numbers, binomials, and the path, complete graph
//! and grid coloring counts.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};

pub fn factorial(n: u32) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

pub fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

/// Stirling numbers of the second kind, `S(n, k)`, from
/// `S(n, k) = k S(n-1, k) + S(n-1, k-1)` with `S(0, 0) = 1`.
pub fn stirling2(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k as usize;
    let mut row = vec![BigUint::zero(); k + 1];
    row[0] = BigUint::one();
    for _ in 1..=n {
        for j in (1..=k).rev() {
            row[j] = &row[j] * BigUint::from(j) + &row[j - 1];
        }
        row[0] = BigUint::zero();
    }
    row.swap_remove(k)
}

fn pow(k: u32, e: u64) -> BigInt {
    num_traits::pow(
        BigInt::from(k),
        e.to_usize().expect("exponent fits in usize"),
    )
}

fn ceil_half(x: u64) -> u64 {
    x.div_ceil(2)
}

fn exact_quotient(num: BigInt, den: u32, what: &str) -> Result<BigUint> {
    let (q, r) = num.div_rem(&BigInt::from(den));
    if !r.is_zero() || q.is_negative() {
        return Err(Error::Invariant(format!(
            "{what}: numerator {num} is not a non-negative multiple of {den}"
        )));
    }
    Ok(q.magnitude().clone())
}

/// `Φ_k(P_n) = (k^n − k^⌈n/2⌉) / 2`.
pub fn phi_path(n: u32, k: u32) -> Result<BigUint> {
    if n == 0 {
        return domain("paths need at least one vertex");
    }
    let n = u64::from(n);
    exact_quotient(pow(k, n) - pow(k, ceil_half(n)), 2, "Φ_k(P_n)")
}

/// `Φ_k(K_n) = C(k, n)`.
pub fn phi_complete(n: u32, k: u32) -> BigUint {
    binomial(k, n)
}

/// `θ(P_m) = ⌈m/2⌉ + 1` for `m ≥ 2`.
pub fn theta_path(m: u32) -> Result<u32> {
    if m < 2 {
        return domain("threshold formula for paths needs m ≥ 2");
    }
    Ok(m.div_ceil(2) + 1)
}

/// `θ(C_n) = ⌊n/2⌋ + 2` for `n ≥ 3`.
pub fn theta_cycle(n: u32) -> Result<u32> {
    if n < 3 {
        return domain("threshold formula for cycles needs n ≥ 3");
    }
    Ok(n / 2 + 2)
}

/// `Φ_k(P_m □ P_n)` for distinct `m, n ≥ 2`:
///
/// `(k^{mn} − k^{m⌈n/2⌉} − k^{n⌈m/2⌉} − k^{⌈mn/2⌉} + 2 k^{⌈m/2⌉⌈n/2⌉}) / 4`.
///
/// The four terms are the colourings fixed by the identity, the two
/// reflections and the half-turn of a rectangular grid.
pub fn phi_grid(m: u32, n: u32, k: u32) -> Result<BigUint> {
    if m == n {
        return domain("phi_grid needs distinct side lengths; use phi_square_grid");
    }
    if m < 2 || n < 2 {
        return domain("grid sides must be at least 2");
    }
    let (m, n) = (u64::from(m), u64::from(n));
    let num = pow(k, m * n)
        - pow(k, m * ceil_half(n))
        - pow(k, n * ceil_half(m))
        - pow(k, ceil_half(m * n))
        + 2 * pow(k, ceil_half(m) * ceil_half(n));
    exact_quotient(num, 4, "Φ_k(P_m □ P_n)")
}

/// `Φ_k(P_n □ P_n)` for `n ≥ 3`:
///
/// `(k^{n²} − k^{⌈n²/2⌉} − 2k^{n⌈n/2⌉} − 2k^{n(n+1)/2} + 2k^{⌈n/2⌉²}
///   + 2k^{⌈n/2⌉⌈(n+1)/2⌉}) / 8`.
pub fn phi_square_grid(n: u32, k: u32) -> Result<BigUint> {
    if n < 3 {
        return domain("phi_square_grid needs n ≥ 3");
    }
    let n = u64::from(n);
    let h = ceil_half(n);
    let num =
        pow(k, n * n) - pow(k, ceil_half(n * n)) - 2 * pow(k, n * h) - 2 * pow(k, n * (n + 1) / 2)
            + 2 * pow(k, h * h)
            + 2 * pow(k, h * ceil_half(n + 1));
    exact_quotient(num, 8, "Φ_k(P_n²)")
}
