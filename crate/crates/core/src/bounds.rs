//! Measurement bounds (Hamming and Gilbert–Varshamov type), the Singleton
//! bound, and the exploratory comparison with the general Hamming bound.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pauli::error_count;
use crate::qsc::QsqcCertificate;
use crate::quotient::{NormMode, QuotientSpace};
use crate::stabilizer::StabilizerCode;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BoundDetail {
    pub n: usize,
    pub k: usize,
    #[serde(rename = "L")]
    pub l: usize,
    pub d: usize,
    pub s: usize,
    pub t: Option<usize>,
    /// `|ME(t)|`.
    pub me: Option<usize>,
    /// `log2 L` when `L` is a power of two.
    pub log2_l: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub bound_name: &'static str,
    pub lhs: u128,
    pub rhs: u128,
    /// `None` when the bound does not apply.
    pub holds: Option<bool>,
    pub applicable: bool,
    /// Human-readable form of the inequality that was evaluated.
    pub relation: String,
    /// The same inequality divided through by `2^k`, where that applies.
    pub normalized: Option<(u128, u128)>,
    pub detail: BoundDetail,
}

fn pow2(e: usize) -> Result<u128> {
    if e >= 127 {
        return Err(Error::TooLarge {
            what: "bound value",
            log2_size: e,
            limit: 126,
        });
    }
    Ok(1u128 << e)
}

fn me(code: &StabilizerCode, d: usize, t: usize) -> Result<(usize, usize)> {
    let profile = code.degeneracy_profile(d);
    let space = QuotientSpace::new(code.dual().clone(), NormMode::Quantum);
    Ok((space.me_count(&profile.span_dual, t)?, profile.s))
}

/// `2^k · L · |ME(⌊(d-1)/2⌋)| <= 2^(n-s)` for a certified code.
pub fn hamming_type(code: &StabilizerCode, cert: &QsqcCertificate) -> Result<BoundReport> {
    let d = cert.claimed_d;
    let t = (d - 1) / 2;
    let (me_t, s) = me(code, d, t)?;
    let lhs = pow2(code.k())? * cert.l as u128 * me_t as u128;
    let rhs = pow2(code.n() - s)?;
    Ok(BoundReport {
        bound_name: "hamming_type",
        lhs,
        rhs,
        holds: Some(lhs <= rhs),
        applicable: true,
        relation: format!(
            "2^{} * {} * |ME({t})| = {lhs} <= 2^{} = {rhs}",
            code.k(),
            cert.l,
            code.n() - s
        ),
        normalized: Some((cert.l as u128 * me_t as u128, pow2(code.n() - code.k() - s)?)),
        detail: BoundDetail {
            n: code.n(),
            k: code.k(),
            l: cert.l,
            d,
            s,
            t: Some(t),
            me: Some(me_t),
            log2_l: None,
        },
    })
}

/// If `2^k · L · |ME(d-1)| < 2^(n-s)`, a code with `L + 1` cosets at
/// distance at least `d` exists. `holds` reports whether the hypothesis
/// holds, i.e. whether the extension is promised.
pub fn gv_type(code: &StabilizerCode, d: usize, l: usize) -> Result<BoundReport> {
    if d == 0 || l == 0 {
        return Err(Error::InvalidArgument("need d >= 1 and L >= 1".into()));
    }
    let (me_t, s) = me(code, d, d - 1)?;
    let lhs = pow2(code.k())? * l as u128 * me_t as u128;
    let rhs = pow2(code.n() - s)?;
    Ok(BoundReport {
        bound_name: "gv_type",
        lhs,
        rhs,
        holds: Some(lhs < rhs),
        applicable: true,
        relation: format!(
            "2^{} * {l} * |ME({})| = {lhs} < 2^{} = {rhs}",
            code.k(),
            d - 1,
            code.n() - s
        ),
        normalized: Some((l as u128 * me_t as u128, pow2(code.n() - code.k() - s)?)),
        detail: BoundDetail {
            n: code.n(),
            k: code.k(),
            l,
            d,
            s,
            t: Some(d - 1),
            me: Some(me_t),
            log2_l: None,
        },
    })
}

/// `n >= k + l + 2d - 2`, applicable when `n ≡ k (mod 2)` and `l` is an
/// even integer.
pub fn singleton(n: usize, k: usize, l: u32, d: usize) -> BoundReport {
    let applicable = (n % 2 == k % 2) && l % 2 == 0;
    let lhs = n as u128;
    let rhs = (k + l as usize + 2 * d) as u128 - 2;
    BoundReport {
        bound_name: "singleton",
        lhs,
        rhs,
        holds: applicable.then_some(lhs >= rhs),
        applicable,
        relation: format!("{n} >= {k} + {l} + 2*{d} - 2 = {rhs}"),
        normalized: None,
        detail: BoundDetail {
            n,
            k,
            l: 1usize << l,
            d,
            s: 0,
            t: None,
            me: None,
            log2_l: Some(l),
        },
    }
}

/// Singleton check for a certificate; not applicable unless `L` is a power
/// of two.
pub fn singleton_for(cert: &QsqcCertificate) -> BoundReport {
    if cert.l.is_power_of_two() {
        let mut r = singleton(cert.n, cert.k, cert.l.trailing_zeros(), cert.claimed_d);
        r.detail.s = cert.s;
        r
    } else {
        BoundReport {
            bound_name: "singleton",
            lhs: cert.n as u128,
            rhs: 0,
            holds: None,
            applicable: false,
            relation: format!("L = {} is not a power of two", cert.l),
            normalized: None,
            detail: BoundDetail {
                n: cert.n,
                k: cert.k,
                l: cert.l,
                d: cert.claimed_d,
                s: cert.s,
                t: None,
                me: None,
                log2_l: None,
            },
        }
    }
}

/// Compares `Σ_{i<=t} 3^i C(n,i)` with `2^s · |ME(t)|` at
/// `t = ⌊(d-1)/2⌋`. Exploratory: `holds` records which way the comparison
/// fell, nothing is asserted.
pub fn general_hamming_compare(code: &StabilizerCode, d: usize) -> Result<BoundReport> {
    if d == 0 {
        return Err(Error::InvalidArgument("distance must be at least 1".into()));
    }
    general_hamming_compare_at(code, d, (d - 1) / 2)
}

/// [`general_hamming_compare`] at an explicit radius `t`.
pub fn general_hamming_compare_at(code: &StabilizerCode, d: usize, t: usize) -> Result<BoundReport> {
    let (me_t, s) = me(code, d, t)?;
    let lhs = error_count(code.n(), t);
    let rhs = pow2(s)? * me_t as u128;
    Ok(BoundReport {
        bound_name: "general_hamming_compare",
        lhs,
        rhs,
        holds: Some(lhs <= rhs),
        applicable: true,
        relation: format!("sum 3^i C({}, i), i <= {t} = {lhs} vs 2^{s} * |ME({t})| = {rhs}", code.n()),
        normalized: None,
        detail: BoundDetail {
            n: code.n(),
            k: code.k(),
            l: 0,
            d,
            s,
            t: Some(t),
            me: Some(me_t),
            log2_l: None,
        },
    })
}
