//! One-dimensional bracketing root finder and golden-section maximizer.

use crate::error::{Error, Result};

/// Default bracket width for roots in inverse temperature.
pub const ROOT_TOL: f64 = 1e-10;
/// Default location tolerance for field extrema.
pub const EXTREMUM_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root {
    pub x: f64,
    pub iterations: u32,
    /// Width of the final bracket.
    pub bracket_width: f64,
}

/// Bisection on a sign-changing bracket. The midpoint schedule is fixed, so
/// the result depends only on `f`, the bracket and `tol`.
pub fn bisect_root(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Result<Root> {
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
        return Err(Error::InvalidInterval { lo, hi });
    }
    let (mut a, mut b) = (lo, hi);
    let (mut fa, fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(Root { x: a, iterations: 0, bracket_width: 0.0 });
    }
    if fb == 0.0 {
        return Ok(Root { x: b, iterations: 0, bracket_width: 0.0 });
    }
    if !(fa * fb < 0.0) {
        return Err(Error::BracketFailure { f_lo: fa, f_hi: fb });
    }

    let mut iterations = 0;
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        iterations += 1;
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(Root { x: mid, iterations, bracket_width: 0.0 });
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Ok(Root {
        x: 0.5 * (a + b),
        iterations,
        bracket_width: b - a,
    })
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the maximum of a unimodal function.
///
/// Returns `(argmax, max)`. On a function that is not unimodal this lands on
/// some local maximum.
pub fn maximize_unimodal(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Result<(f64, f64)> {
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
        return Err(Error::InvalidInterval { lo, hi });
    }
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let mid = 0.5 * (a + b);
    let fm = f(mid);
    // The surviving probes can beat the midpoint on a flat-topped function.
    let best = [(mid, fm), (c, fc), (d, fd)]
        .into_iter()
        .fold((mid, fm), |best, p| if p.1 > best.1 { p } else { best });
    Ok(best)
}
