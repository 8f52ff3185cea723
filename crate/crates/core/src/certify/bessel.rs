//! Bessel functions of the first kind of real order and their zeros.
//!
//! Small arguments (`x^2/4 <= nu + 1` or `x < 2`) use the ascending series,
//! where all terms decrease from the start. Everything else uses Steed's
//! method: the continued fraction for `J'_nu / J_nu`, downward recurrence to
//! an order `mu` with `|mu| <= 1/2`, the complex continued fraction for
//! `H^(1)_mu`, and the Wronskian to fix the normalization.

use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const MAX_ORDER: f64 = 50.0;
pub const MAX_ARGUMENT: f64 = 100.0;
/// Zeros are searched up to this argument.
const ZERO_SEARCH_LIMIT: f64 = 250.0;
const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;
const MAX_TERMS: usize = 100_000;

/// `J_nu(x)` for `0 <= nu <= 50`, `0 <= x <= 100`.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    if !(0.0..=MAX_ORDER).contains(&nu) {
        return Err(Error::domain("nu", nu, "0 <= nu <= 50"));
    }
    if !(0.0..=MAX_ARGUMENT).contains(&x) {
        return Err(Error::domain("x", x, "0 <= x <= 100"));
    }
    Ok(bessel_j_unchecked(nu, x))
}

pub(crate) fn bessel_j_unchecked(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    if x < 2.0 || 0.25 * x * x <= nu + 1.0 {
        series(nu, x)
    } else {
        steed(nu, x)
    }
}

fn series(nu: f64, x: f64) -> f64 {
    let z = -0.25 * x * x;
    let mut term = (0.5 * x).powf(nu) / libm::tgamma(nu + 1.0);
    let mut sum = term;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        term *= z / (kf * (nu + kf));
        sum += term;
        if term.abs() <= EPS * sum.abs() {
            break;
        }
    }
    sum
}

fn steed(nu: f64, x: f64) -> f64 {
    let nl = (nu - x + 1.5).floor().max(0.0) as usize;
    let mu = nu - nl as f64;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // continued fraction for J'_nu / J_nu
    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    for _ in 0..MAX_TERMS {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            break;
        }
    }

    // downward recurrence from nu to mu, on an arbitrary scale
    let mut rjl = isign * 1e-30;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let t = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * t - rjl;
        rjl = t;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    // p + iq = (H'_mu / H_mu)
    let mut a = 0.25 - mu * mu;
    let mut p = -0.5 * xi;
    let mut q = 1.0;
    let br = 2.0 * x;
    let mut bi = 2.0;
    let mut fct = a * xi / (p * p + q * q);
    let mut cr = br + q * fct;
    let mut ci = bi + p * fct;
    let mut den = br * br + bi * bi;
    let mut dr = br / den;
    let mut di = -bi / den;
    let mut dlr = cr * dr - ci * di;
    let mut dli = cr * di + ci * dr;
    let mut t = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = t;
    for i in 2..MAX_TERMS {
        a += 2.0 * (i as f64 - 1.0);
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if dr.abs() + di.abs() < FPMIN {
            dr = FPMIN;
        }
        fct = a / (cr * cr + ci * ci);
        cr = br + cr * fct;
        ci = bi - ci * fct;
        if cr.abs() + ci.abs() < FPMIN {
            cr = FPMIN;
        }
        den = dr * dr + di * di;
        dr /= den;
        di = -di / den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        t = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = t;
        if (dlr - 1.0).abs() + dli.abs() < EPS {
            break;
        }
    }
    let gam = (p - f) / q;
    let rjmu = (w / ((p - f) * gam + q)).sqrt().copysign(rjl);
    rjl1 * (rjmu / rjl)
}

/// The `k`-th positive zero `j_{nu,k}` of `J_nu`, `nu <= 50`, `k <= 20`.
///
/// Sign changes are located on a grid of spacing 0.1 starting at `x = nu`
/// (no positive zero lies below `nu`) and refined by bisection.
pub fn bessel_zero(nu: f64, k: usize) -> Result<f64> {
    if !(0.0..=MAX_ORDER).contains(&nu) {
        return Err(Error::domain("nu", nu, "0 <= nu <= 50"));
    }
    if k == 0 || k > 20 {
        return Err(Error::domain("k", k as f64, "1 <= k <= 20"));
    }
    let step = 0.1;
    let mut lo = nu.max(step);
    let mut flo = bessel_j_unchecked(nu, lo);
    let mut found = 0;
    while lo < ZERO_SEARCH_LIMIT {
        let hi = lo + step;
        let fhi = bessel_j_unchecked(nu, hi);
        if flo == 0.0 || flo * fhi < 0.0 {
            found += 1;
            if found == k {
                return Ok(if flo == 0.0 { lo } else { bisect(nu, lo, hi, flo) });
            }
        }
        lo = hi;
        flo = fhi;
    }
    Err(Error::BracketFailure { nu, k })
}

fn bisect(nu: f64, mut lo: f64, mut hi: f64, mut flo: f64) -> f64 {
    while hi - lo > 4.0 * f64::EPSILON * hi {
        let mid = 0.5 * (lo + hi);
        let fm = bessel_j_unchecked(nu, mid);
        if fm == 0.0 {
            return mid;
        }
        if flo * fm < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    0.5 * (lo + hi)
}
