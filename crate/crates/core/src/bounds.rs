//! The numeric backbone: the exponent r = 0.8, the constant
//! c = 1/(8^r − 6^r), the six power-sum inequalities that justify every
//! cycle-merge bound, the named constants appearing in those derivations,
//! and the optimal-exponent root.
//!
//! All arithmetic is double precision. Conclusions are accepted with a
//! −1e−12 slack; the smallest genuine margin in the suite is ≈2.9e−5, five
//! orders of magnitude above the noise floor.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

pub const R: f64 = 0.8;

/// Slack for inequality conclusions.
pub const CONCLUSION_SLACK: f64 = 1e-12;

/// Additive tolerance when comparing an integer cycle weight against a
/// floating-point bound.
pub const WEIGHT_TOLERANCE: f64 = 1e-9;

pub fn pow_r(x: f64) -> f64 {
    x.powf(R)
}

/// c = 1/(8^r − 6^r) ≈ 0.922.
pub fn c() -> f64 {
    1.0 / (8f64.powf(R) - 6f64.powf(R))
}

/// α = d/(1−d) with d = c^(1/(1−r)); the turning point of cx^r + y^r.
pub fn alpha() -> f64 {
    let d = c().powf(1.0 / (1.0 - R));
    d / (1.0 - d)
}

/// The six inequality schemas. Parameters are non-negative reals; each
/// schema has a hypothesis and a conclusion of the form
/// "sum of r-th powers ≥ r-th power of the total".
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum WeightRule {
    I,
    Ii,
    Iii,
    Iv,
    V,
    Vi,
}

impl WeightRule {
    pub fn all() -> [WeightRule; 6] {
        [
            WeightRule::I,
            WeightRule::Ii,
            WeightRule::Iii,
            WeightRule::Iv,
            WeightRule::V,
            WeightRule::Vi,
        ]
    }

    pub fn arity(self) -> usize {
        match self {
            WeightRule::I => 3,
            WeightRule::Ii => 2,
            WeightRule::Iii => 2,
            WeightRule::Iv => 5,
            WeightRule::V => 4,
            WeightRule::Vi => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            WeightRule::I => "i",
            WeightRule::Ii => "ii",
            WeightRule::Iii => "iii",
            WeightRule::Iv => "iv",
            WeightRule::V => "v",
            WeightRule::Vi => "vi",
        }
    }
}

/// Conclusion margin (LHS − RHS) of a rule at given parameters, or
/// `HypothesisFailed` when the rule's hypothesis does not hold. The
/// conclusion is considered satisfied when the margin is ≥ −1e−12.
pub fn rule_margin(rule: WeightRule, params: &[f64]) -> Result<f64> {
    if params.len() != rule.arity() {
        return Err(Error::PreconditionViolated(format!(
            "rule {} takes {} parameters, got {}",
            rule.name(),
            rule.arity(),
            params.len()
        )));
    }
    if params.iter().any(|&p| p < 0.0 || !p.is_finite()) {
        return Err(Error::PreconditionViolated(
            "parameters must be non-negative reals".into(),
        ));
    }
    let c = c();
    match rule {
        WeightRule::I => {
            let (x, y, z) = (params[0], params[1], params[2]);
            if x < 8.956 * z || y < 1.036 * z {
                return Err(Error::HypothesisFailed);
            }
            Ok(pow_r(x) + pow_r(y) - pow_r(x + y + z))
        }
        WeightRule::Ii => {
            let (x, y) = (params[0], params[1]);
            if x > 10.174 * y {
                return Err(Error::HypothesisFailed);
            }
            Ok(c * pow_r(x) + pow_r(y) - pow_r(x + y))
        }
        WeightRule::Iii => {
            let (x, y) = (params[0], params[1]);
            if x < 0.5 * y || x > 8.884 * y {
                return Err(Error::HypothesisFailed);
            }
            let beta = (1.0 + 1.0 / 10.174f64).powf(R);
            Ok(pow_r(x) + pow_r(y) - beta * pow_r(x + y))
        }
        WeightRule::Iv => {
            let (t, w, x, y, z) = (params[0], params[1], params[2], params[3], params[4]);
            let cap = 2.072 * (w / 1.036).min(x).min(y).min(z / 5.884);
            if z >= 1.98 * (t + w + x + y) || t <= 0.0 || t > cap {
                return Err(Error::HypothesisFailed);
            }
            Ok(pow_r(w) + pow_r(x) + pow_r(y) + c * pow_r(z) - pow_r(t + w + x + y + z))
        }
        WeightRule::V => {
            let (w, x, y, z) = (params[0], params[1], params[2], params[3]);
            if w > x.min(y).min(z) {
                return Err(Error::HypothesisFailed);
            }
            Ok(c * pow_r(x) + pow_r(y) + pow_r(z) - c * pow_r(w + x + y + z))
        }
        WeightRule::Vi => {
            let (x, y, z) = (params[0], params[1], params[2]);
            if x < 6.0 * z || y < z {
                return Err(Error::HypothesisFailed);
            }
            Ok(c * pow_r(x) + pow_r(y) - c * pow_r(x + y + z))
        }
    }
}

/// True iff the rule's conclusion holds (within slack) at the parameters;
/// `HypothesisFailed` is distinguished from a conclusion failure so
/// vacuous cases are never mistaken for successes.
pub fn check_rule(rule: WeightRule, params: &[f64]) -> Result<bool> {
    Ok(rule_margin(rule, params)? >= -CONCLUSION_SLACK)
}

/// Every inline numeric constant of the derivations, recomputed from its
/// defining expression.
pub fn constants_report() -> BTreeMap<&'static str, f64> {
    let c = c();
    let r = R;
    let beta = (1.0 + 1.0 / 10.174f64).powf(r);
    let mut m: BTreeMap<&'static str, f64> = BTreeMap::new();
    m.insert("c", c);
    m.insert("alpha", alpha());
    m.insert("beta", beta);
    m.insert("d", c.powf(1.0 / (1.0 - r)));
    m.insert("beta_root", beta.powf(1.0 / (1.0 - r)));
    m.insert("two_c_root", (2.0 * c).powf(1.0 / (1.0 - r)));
    m.insert(
        "rule_i_margin",
        8.956f64.powf(r) + 1.036f64.powf(r) - 10.992f64.powf(r),
    );
    m.insert(
        "rule_iii_margin",
        8.884f64.powf(r) + 1.0 - 9.884f64.powf(r) * beta,
    );
    m.insert(
        "rule_iv_margin",
        1.036f64.powf(r) + 2.0 + 5.884f64.powf(r) * c - 10.992f64.powf(r),
    );
    m.insert("rule_v_margin", c + 2.0 - 4f64.powf(r) * c);
    m.insert("adj_case1_f1", 9.92f64.powf(r) + 1.0 - 11.92f64.powf(r));
    m.insert("adj_case1_f1b", 9.536f64.powf(r) + 1.0 - 11.536f64.powf(r));
    m.insert(
        "adj_case1_x2big",
        2f64.powf(r) + 6f64.powf(r) - 9f64.powf(r),
    );
    m.insert(
        "adj_case1_x2mid",
        7f64.powf(r) + 2f64.powf(r) - 10f64.powf(r),
    );
    m.insert(
        "adj_case1_x5small",
        3f64.powf(r) + 6f64.powf(r) - 10.5f64.powf(r),
    );
    m.insert("adj_case1_x5big", 13.76f64.powf(r) + 1.0 - 15.76f64.powf(r));
    m.insert("adj_case2_balanced", 2.0 + 2f64.powf(r) - 5f64.powf(r));
    m.insert("nonadj_twin_sides", 4.0 - 5f64.powf(r));
    m.insert(
        "nonadj_q1_final",
        3f64.powf(r) * c + 2f64.powf(r) + 1.0 - 8f64.powf(r) * c,
    );
    m.insert(
        "nonadj_q2_final",
        c * 2f64.powf(r) + 1.0 + 0.5f64.powf(r) - c * 4.5f64.powf(r),
    );
    m
}

/// Residual of the defining equation of the optimal exponent.
pub fn exponent_residual(r: f64) -> f64 {
    8.956f64.powf(r) + 1.036f64.powf(r) - 10.992f64.powf(r)
}

/// Bisection root of 8.956^r + 1.036^r = 10.992^r on [0.8, 0.9]; the
/// largest exponent the inequality suite supports. Strictly above 0.800008.
pub fn optimal_exponent(tol: f64) -> Result<f64> {
    if !(tol > 0.0 && tol < 1e-6) {
        return Err(Error::PreconditionViolated(
            "tolerance must lie in (0, 1e-6)".into(),
        ));
    }
    let (mut lo, mut hi) = (0.8f64, 0.9f64);
    let (flo, fhi) = (exponent_residual(lo), exponent_residual(hi));
    if !(flo > 0.0 && fhi < 0.0) {
        return Err(Error::Internal("bisection bracket failed".into()));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = exponent_residual(mid);
        if fm.abs() < tol {
            return Ok(mid);
        }
        if fm > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(actual: f64, printed: f64, decimals: i32) {
        let half_ulp = 0.5 * 10f64.powi(-decimals);
        let tol = half_ulp.max(0.01 * printed.abs());
        assert!(
            (actual - printed).abs() <= tol,
            "computed {actual} vs printed {printed} (tol {tol})"
        );
    }

    #[test]
    fn headline_constants() {
        close(c(), 0.922, 3);
        close(alpha(), 1.983, 3);
        close(constants_report()["beta_root"], 1.455, 3);
        close(constants_report()["two_c_root"], 21.275, 3);
    }

    #[test]
    fn rule_margins_match_printed_values() {
        let m = rule_margin(WeightRule::I, &[8.956, 1.036, 1.0]).unwrap();
        close(m, 2.918e-5, 8);
        let m = rule_margin(WeightRule::V, &[1.0, 1.0, 1.0, 1.0]).unwrap();
        close(m, 0.128, 3);
        let m = rule_margin(WeightRule::Iv, &[2.072, 1.036, 1.0, 1.0, 5.884]).unwrap();
        close(m, 0.0275, 4);
        let m = rule_margin(WeightRule::Iii, &[8.884, 1.0]).unwrap();
        close(m, 0.0018, 4);
    }

    #[test]
    fn spot_constants_match_printed_values() {
        let rep = constants_report();
        close(rep["adj_case1_f1"], 0.00775, 5);
        close(rep["adj_case1_x2big"], 0.134, 3);
        close(rep["adj_case1_x2mid"], 0.175, 3);
        close(rep["adj_case1_x5small"], 0.04, 2);
        close(rep["adj_case1_x5big"], 0.066, 3);
        close(rep["adj_case2_balanced"], 0.117, 3);
        close(rep["nonadj_twin_sides"], 0.376, 3);
        close(rep["nonadj_q1_final"], 0.096, 3);
        close(rep["nonadj_q2_final"], 0.109, 3);
    }

    #[test]
    fn rule_vi_tight_at_definition_of_c() {
        // 6^r·c + 1 − 8^r·c = 0 exactly, by the definition of c.
        let m = rule_margin(WeightRule::Vi, &[6.0, 1.0, 1.0]).unwrap();
        assert!(m.abs() < 1e-12, "margin {m}");
    }

    #[test]
    fn hypothesis_failures_are_distinguished() {
        assert!(matches!(
            rule_margin(WeightRule::I, &[1.0, 1.0, 1.0]),
            Err(Error::HypothesisFailed)
        ));
        assert!(matches!(
            rule_margin(WeightRule::Vi, &[5.9, 1.0, 1.0]),
            Err(Error::HypothesisFailed)
        ));
    }

    #[test]
    fn optimal_exponent_above_claimed() {
        let r = optimal_exponent(1e-12).unwrap();
        assert!(r > 0.800008, "root {r}");
        assert!(r < 0.81, "root {r}");
        assert!(exponent_residual(r).abs() < 1e-12);
        assert!(exponent_residual(0.8) > 0.0);
        assert!(exponent_residual(0.9) < 0.0);
    }
}
