//! Local Lemma parameters for the edge-sparsification step and the six
//! sufficient inequalities behind the two Local Lemma conditions, all in the
//! natural-log domain.
//!
//! With `L = ln q` and `ll = ln ln q`:
//!
//! ```text
//! alpha = L^2          beta = L^(4s^2)      gamma = L^8
//! m     = alpha beta^2 q / 16
//! x     = alpha^(-2s^2)                     y = L^(-4s^2) q^(-64 s beta q)
//! d_AA  = C(s+1,2) 6^s alpha^(2s-2)         d_AB = d_BB = q^(64 s beta q)
//! d_BA  = m C(s,2) 6^s alpha^(2s-2)
//! ```
//!
//! `ln d_AB = 64 s beta q L` is itself too large for a float once `s` grows,
//! so it is also kept one logarithm further down, and `y d_AB = L^(-4s^2)` is
//! used in cancelled form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::primes_in;

/// Largest `x` (and `y`) for which `exp(-2x) <= 1 - x`.
pub const RELAXATION_LIMIT: f64 = 0.79;

fn binom2(n: usize) -> f64 {
    (n * (n - 1) / 2) as f64
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LllParams {
    pub q: u64,
    pub s: usize,
    /// `ln ln q`.
    pub ll: f64,
    pub ln_q: f64,
    pub ln_alpha: f64,
    pub ln_beta: f64,
    pub ln_gamma: f64,
    pub ln_m: f64,
    pub ln_x: f64,
    /// `ln(1/y)`; infinite when it does not fit in a float.
    pub ln_inv_y: f64,
    pub ln_ln_inv_y: f64,
    pub ln_d_aa: f64,
    /// `ln d_AB = ln d_BB`; infinite when it does not fit in a float.
    pub ln_d_ab: f64,
    pub ln_ln_d_ab: f64,
    pub ln_d_ba: f64,
}

impl LllParams {
    pub fn ln_d_bb(&self) -> f64 {
        self.ln_d_ab
    }

    pub fn x(&self) -> f64 {
        self.ln_x.exp()
    }

    /// `y`, which underflows to 0 for all but the smallest `q`.
    pub fn y(&self) -> f64 {
        (-self.ln_inv_y).exp()
    }

    /// `ln(2 y d_AB) = ln 2 - 4 s^2 ll`, the two huge factors cancelled.
    pub fn ln_two_y_d_ab(&self) -> f64 {
        std::f64::consts::LN_2 - 4.0 * (self.s * self.s) as f64 * self.ll
    }
}

pub fn compute_params(q: u64, s: usize) -> Result<LllParams> {
    if q < 3 {
        return Err(Error::BadRange(format!("q = {q} must be at least 3")));
    }
    if s < 3 {
        return Err(Error::BadRange(format!("s = {s} must be at least 3")));
    }
    let sf = s as f64;
    let ln_q = (q as f64).ln();
    let ll = ln_q.ln();
    let ln_alpha = 2.0 * ll;
    let ln_beta = 4.0 * sf * sf * ll;
    let ln_gamma = 8.0 * ll;
    let ln_m = ln_alpha + 2.0 * ln_beta + ln_q - 16f64.ln();
    let ln_x = -2.0 * sf * sf * ln_alpha;
    let ln_ln_d_ab = (64.0 * sf).ln() + ln_beta + ln_q + ll;
    let ln_d_ab = ln_ln_d_ab.exp();
    let ln_inv_y = 4.0 * sf * sf * ll + ln_d_ab;
    // ln(a + e^b) = b + ln(1 + a e^-b)
    let ln_ln_inv_y = ln_ln_d_ab + (4.0 * sf * sf * ll * (-ln_ln_d_ab).exp()).ln_1p();
    let tail = sf * 6f64.ln() + (2.0 * sf - 2.0) * ln_alpha;
    let ln_d_aa = binom2(s + 1).ln() + tail;
    let ln_d_ba = ln_m + binom2(s).ln() + tail;
    Ok(LllParams {
        q,
        s,
        ll,
        ln_q,
        ln_alpha,
        ln_beta,
        ln_gamma,
        ln_m,
        ln_x,
        ln_inv_y,
        ln_ln_inv_y,
        ln_d_aa,
        ln_d_ab,
        ln_ln_d_ab,
        ln_d_ba,
    })
}

/// One inequality `LHS >= RHS`, both sides as natural logs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Margin {
    pub name: String,
    pub ln_lhs: f64,
    pub ln_rhs: f64,
    /// `ln_lhs - ln_rhs`.
    pub margin: f64,
}

impl Margin {
    fn new(name: &str, ln_lhs: f64, ln_rhs: f64) -> Self {
        Margin { name: name.into(), ln_lhs, ln_rhs, margin: ln_lhs - ln_rhs }
    }

    pub fn holds(&self) -> bool {
        self.margin >= 0.0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarginReport {
    pub q: u64,
    pub s: usize,
    /// A1, A2, A3, B1, B2, B3 in that order.
    pub margins: Vec<Margin>,
    pub all_satisfied: bool,
    pub x: f64,
    /// Both `x` and `y` are at most [`RELAXATION_LIMIT`].
    pub relaxation_ok: bool,
}

impl MarginReport {
    /// Margins hold and the exponential relaxation is valid.
    pub fn certified(&self) -> bool {
        self.all_satisfied && self.relaxation_ok
    }

    pub fn margin(&self, name: &str) -> Option<&Margin> {
        self.margins.iter().find(|m| m.name == name)
    }
}

pub const INEQUALITY_NAMES: [&str; 6] = ["A1", "A2", "A3", "B1", "B2", "B3"];

pub fn check_inequalities(p: &LllParams) -> Result<MarginReport> {
    let s = p.s;
    let ln2 = std::f64::consts::LN_2;

    // C(s+1,2) ln gamma scaled by 2s^2/(2s^2+2s) and s/(2s^2+2s); both
    // coefficients are integers times ll after cancelling: 4s^2 and 2s
    let c_s1 = (s * (s + 1) / 2) as u64;
    let den = (2 * s * s + 2 * s) as u64;
    let coef_a1 = ((2 * s * s) as u64 * c_s1 * 8) / den;
    let coef_a23 = (s as u64 * c_s1 * 8) / den;
    debug_assert_eq!(coef_a1 * den, (2 * s * s) as u64 * c_s1 * 8);
    let lhs_a1 = coef_a1 as f64 * p.ll;
    let lhs_a23 = coef_a23 as f64 * p.ll;
    let ln_inv_x = -p.ln_x;

    let a1 = Margin::new("A1", lhs_a1.ln(), ln_inv_x.ln());
    let a2 = Margin::new("A2", lhs_a23.ln(), ln2 + p.ln_x + p.ln_d_aa);
    let a3 = Margin::new("A3", lhs_a23.ln(), p.ln_two_y_d_ab());

    // (1/3) m gamma^-C(s,2)
    let ln_lhs_b = p.ln_m - binom2(s) * p.ln_gamma - 3f64.ln();
    let b1 = Margin::new("B1", ln_lhs_b, p.ln_ln_inv_y);
    let b2 = Margin::new("B2", ln_lhs_b, ln2 + p.ln_x + p.ln_d_ba);
    let b3 = Margin::new("B3", ln_lhs_b, p.ln_two_y_d_ab());

    let margins = vec![a1, a2, a3, b1, b2, b3];
    if let Some(bad) = margins.iter().find(|m| !m.margin.is_finite()) {
        return Err(Error::Overflow(format!("{} at q = {}, s = {}", bad.name, p.q, s)));
    }
    let all_satisfied = margins.iter().all(Margin::holds);
    let x = p.x();
    Ok(MarginReport {
        q: p.q,
        s,
        margins,
        all_satisfied,
        x,
        relaxation_ok: x <= RELAXATION_LIMIT && p.y() <= RELAXATION_LIMIT,
    })
}

/// Both Local Lemma conditions evaluated directly, without the sufficient
/// splits: `ln RHS - ln LHS` for each. `None` when a term leaves the float
/// range.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirectReport {
    pub lllx_margin: Option<f64>,
    pub llly_margin: Option<f64>,
}

/// `d ln(1 - z)` for `d = e^ln_d`, `z = e^ln_z`, stable for tiny `z`.
fn scaled_log_complement(ln_d: f64, ln_z: f64) -> f64 {
    let z = ln_z.exp();
    let ratio = if z == 0.0 { 1.0 } else { -(-z).ln_1p() / z };
    -(ln_d + ln_z).exp() * ratio
}

pub fn check_direct(p: &LllParams) -> DirectReport {
    let c_s1 = binom2(p.s + 1);
    let c_s = binom2(p.s);
    let ln_y = -p.ln_inv_y;
    // y d_AB = L^(-4s^2) whatever the size of either factor
    let y_dab = -(p.ln_two_y_d_ab() - std::f64::consts::LN_2).exp()
        * if p.y() == 0.0 { 1.0 } else { -(-p.y()).ln_1p() / p.y() };

    let lhs_x = -c_s1 * p.ln_gamma;
    let rhs_x = p.ln_x + scaled_log_complement(p.ln_d_aa, p.ln_x) + y_dab;
    let lllx = Some(rhs_x - lhs_x).filter(|v| v.is_finite());

    let lhs_y = p.ln_m.exp() * (-(-c_s * p.ln_gamma).exp()).ln_1p();
    let rhs_y = ln_y + scaled_log_complement(p.ln_d_ba, p.ln_x) + y_dab;
    let llly = Some(rhs_y - lhs_y).filter(|v| v.is_finite());
    DirectReport { lllx_margin: lllx, llly_margin: llly }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FirstSatisfied {
    pub name: String,
    /// Smallest scanned prime at which the inequality holds.
    pub q: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub s: usize,
    pub q_min: u64,
    pub q_max: u64,
    pub primes_scanned: usize,
    /// Smallest prime with every margin non-negative and `x` in range.
    pub threshold: Option<u64>,
    pub per_inequality: Vec<FirstSatisfied>,
    /// Inequalities failing at the largest scanned prime.
    pub blocking: Vec<String>,
    /// Once certified, every larger scanned prime is certified too.
    pub monotone: bool,
    /// Margin table at the threshold, or at `q_max`'s prime if none.
    pub table: MarginReport,
}

/// Linear scan over the primes in `[q_min, q_max]`.
pub fn scan_threshold(s: usize, q_min: u64, q_max: u64) -> Result<ScanResult> {
    if q_min < 3 {
        return Err(Error::BadRange(format!("q_min = {q_min} must be at least 3")));
    }
    if s < 3 {
        return Err(Error::BadRange(format!("s = {s} must be at least 3")));
    }
    if q_min > q_max {
        return Err(Error::EmptyRange(q_min, q_max));
    }
    let mut first: Vec<Option<u64>> = vec![None; 6];
    let mut threshold = None;
    let mut table = None;
    let mut last = None;
    let mut monotone = true;
    let mut scanned = 0;
    for q in primes_in(q_min, q_max) {
        scanned += 1;
        let rep = check_inequalities(&compute_params(q, s)?)?;
        for (slot, m) in first.iter_mut().zip(&rep.margins) {
            if slot.is_none() && m.holds() {
                *slot = Some(q);
            }
        }
        match (threshold, rep.certified()) {
            (None, true) => {
                threshold = Some(q);
                table = Some(rep.clone());
            }
            (Some(_), false) => monotone = false,
            _ => {}
        }
        last = Some(rep);
    }
    let last = last.ok_or(Error::EmptyRange(q_min, q_max))?;
    let blocking = last.margins.iter().filter(|m| !m.holds()).map(|m| m.name.clone()).collect();
    let per_inequality = INEQUALITY_NAMES
        .iter()
        .zip(first)
        .map(|(n, q)| FirstSatisfied { name: n.to_string(), q })
        .collect();
    Ok(ScanResult {
        s,
        q_min,
        q_max,
        primes_scanned: scanned,
        threshold,
        per_inequality,
        blocking,
        monotone,
        table: table.unwrap_or(last),
    })
}
