//! Riemann–Hurwitz arithmetic, orbifold-signature optimization, and a
//! brute-force realizability oracle for cyclic group actions on curves.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rat::{rat, rint, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbifoldError {
    #[error("search limits too small: the minimum {value} is attained on the box boundary by {witness:?}")]
    LimitsTooSmall {
        value: Rat,
        witness: OrbifoldSignature,
    },
    #[error("group order {order} is not divisible by {divisor} as required for {context}")]
    IndivisibleOrder {
        order: u64,
        divisor: u64,
        context: &'static str,
    },
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
}

/// Branch data of a quotient map: quotient genus `h`, branch periods
/// `r_1 <= ... <= r_s` (all `>= 2`), and optionally one marked ramification
/// index `r` (either `1`, meaning the marked point is unramified, or one of
/// the periods).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OrbifoldSignature {
    pub quotient_genus: u32,
    pub periods: Vec<u64>,
    pub marked_period: Option<u64>,
}

impl OrbifoldSignature {
    pub fn new(
        quotient_genus: u32,
        mut periods: Vec<u64>,
        marked_period: Option<u64>,
    ) -> Result<Self, OrbifoldError> {
        periods.sort_unstable();
        if periods.first().is_some_and(|&r| r < 2) {
            return Err(OrbifoldError::InvalidSignature(
                "periods must be >= 2".into(),
            ));
        }
        if let Some(r) = marked_period {
            if r != 1 && !periods.contains(&r) {
                return Err(OrbifoldError::InvalidSignature(format!(
                    "marked period {r} is neither 1 nor one of the periods"
                )));
            }
        }
        Ok(OrbifoldSignature {
            quotient_genus,
            periods,
            marked_period,
        })
    }

    /// `2h - 2 + sum(1 - 1/r_i)`, the negative of the orbifold Euler
    /// characteristic. Positive exactly for hyperbolic signatures.
    pub fn characteristic_sum(&self) -> Rat {
        let mut total = rint(2 * i64::from(self.quotient_genus) - 2);
        for &r in &self.periods {
            total += rint(1) - rat(1, r as i64);
        }
        total
    }
}

/// Genus of a degree-`n` cover with the given quotient data, as an exact
/// rational: `2g - 2 = n (2h - 2) + n sum(1 - 1/r_i)`. The caller checks
/// integrality.
pub fn hurwitz_genus(n: u64, sig: &OrbifoldSignature) -> Rat {
    (rint(n as i64) * sig.characteristic_sum() + rint(2)) / rint(2)
}

/// Search box for the signature optimizer. Upper limits only; the defaults
/// comfortably contain the optima of both objectives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub min_quotient_genus: u32,
    pub max_quotient_genus: u32,
    pub max_periods: usize,
    pub max_period: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            min_quotient_genus: 0,
            max_quotient_genus: 2,
            max_periods: 5,
            max_period: 100,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minimum {
    pub value: Rat,
    pub witness: OrbifoldSignature,
}

/// Exhaustively minimize over hyperbolic signatures in the box:
///
/// * `half_term = false`: the characteristic sum `2h - 2 + sum(1 - 1/r_i)`
///   itself, subject to positivity. The global minimum is `1/42` at
///   `(0; 2, 3, 7)`.
/// * `half_term = true`: the sum plus `1/(2r)` with the marked index `r`
///   ranging over the periods and 1. The global minimum is `2/21`, again at
///   `(0; 2, 3, 7)` with `r = 7`.
///
/// The objective strictly increases when any period grows, when a period is
/// appended, and when the quotient genus grows, so a minimum away from the
/// box boundary is a certified interior optimum; a minimum touching the
/// boundary returns `LimitsTooSmall`. Ties break to the lexicographically
/// smallest witness.
pub fn minimize_orbifold(
    half_term: bool,
    limits: &SearchLimits,
) -> Result<Minimum, OrbifoldError> {
    struct Search<'a> {
        half_term: bool,
        limits: &'a SearchLimits,
        best: Option<Minimum>,
    }

    impl Search<'_> {
        fn offer(&mut self, value: Rat, h: u32, periods: &[u64], marked: Option<u64>) {
            let candidate_key = (h, periods, marked);
            let replace = match &self.best {
                None => true,
                Some(b) => {
                    value < b.value
                        || (value == b.value
                            && candidate_key
                                < (
                                    b.witness.quotient_genus,
                                    b.witness.periods.as_slice(),
                                    b.witness.marked_period,
                                ))
                }
            };
            if replace {
                self.best = Some(Minimum {
                    value,
                    witness: OrbifoldSignature {
                        quotient_genus: h,
                        periods: periods.to_vec(),
                        marked_period: marked,
                    },
                });
            }
        }

        fn visit(&mut self, h: u32, periods: &mut Vec<u64>, sum: Rat) {
            if sum > rint(0) {
                // Descendants only increase the objective, so record and stop.
                if self.half_term {
                    let r = periods.last().copied().unwrap_or(1);
                    self.offer(sum + rat(1, 2 * r as i64), h, periods, Some(r));
                } else {
                    self.offer(sum, h, periods, None);
                }
                return;
            }
            if periods.len() >= self.limits.max_periods {
                return;
            }
            let lo = periods.last().copied().unwrap_or(2);
            for r in lo..=self.limits.max_period {
                periods.push(r);
                self.visit(h, periods, sum + rint(1) - rat(1, r as i64));
                periods.pop();
            }
        }
    }

    let mut search = Search {
        half_term,
        limits,
        best: None,
    };
    for h in limits.min_quotient_genus..=limits.max_quotient_genus {
        let base = rint(2 * i64::from(h) - 2);
        search.visit(h, &mut Vec::new(), base);
    }
    let best = search.best.ok_or_else(|| {
        OrbifoldError::InvalidSignature("empty search box contains no hyperbolic signature".into())
    })?;
    // Raising the quotient genus adds exactly 2 to the objective, so the
    // h-limit can never hide a smaller optimum; only the period limits can.
    let w = &best.witness;
    let on_boundary = w.periods.len() == limits.max_periods
        || w.periods.last() == Some(&limits.max_period);
    if on_boundary {
        return Err(OrbifoldError::LimitsTooSmall {
            value: best.value,
            witness: best.witness,
        });
    }
    Ok(best)
}

/// `j`-invariant class of an elliptic base curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JClass {
    Generic,
    J1728,
    J0,
}

/// Number of points in a smallest orbit of an order-`h_order` automorphism
/// group of an elliptic curve: `|H|/2`, `|H|/4`, `|H|/6` according to the
/// `j`-invariant.
pub fn elliptic_min_orbit(h_order: u64, j: JClass) -> Result<u64, OrbifoldError> {
    let (divisor, context) = match j {
        JClass::Generic => (2, "j not 0 or 1728"),
        JClass::J1728 => (4, "j = 1728"),
        JClass::J0 => (6, "j = 0"),
    };
    if h_order % divisor != 0 {
        return Err(OrbifoldError::IndivisibleOrder {
            order: h_order,
            divisor,
            context,
        });
    }
    Ok(h_order / divisor)
}

/// Largest order of a cyclic automorphism group of a genus-`g` curve:
/// `4g + 2` in general, `3g + 3` when every point stabilizer has odd order.
pub fn wiman_bound(genus: u32, odd_stabilizers_only: bool) -> u64 {
    assert!(genus >= 2, "the bound applies to genus >= 2");
    let g = u64::from(genus);
    if odd_stabilizers_only {
        3 * g + 3
    } else {
        4 * g + 2
    }
}

/// Genus from the fixed-point count of a cyclic quotient: solves
/// `2g - 2 = 2k g' - 2k + n (k - 1)` for `g`.
pub fn eq1_genus(k: u64, g_prime: u32, n_fixed: u64) -> Rat {
    let k = k as i64;
    let gp = i64::from(g_prime);
    let n = n_fixed as i64;
    (rint(2 * k * gp - 2 * k + n * (k - 1)) + rint(2)) / rint(2)
}

/// A realized cyclic action: group order, branch signature, and one rotation
/// residue per period.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicActionDatum {
    pub group_order: u64,
    pub signature: OrbifoldSignature,
    pub generating_elements: Vec<u64>,
}

fn order_mod(c: u64, n: u64) -> u64 {
    n / c.gcd(&n)
}

/// Independent re-check of a witness: Riemann–Hurwitz for the target genus,
/// element orders matching the periods, zero residue sum, generation when the
/// quotient genus is 0, and the odd-stabilizer filter when requested.
pub fn validate_cyclic_action(d: &CyclicActionDatum, genus: u32, odd_only: bool) -> bool {
    let n = d.group_order;
    let sig = &d.signature;
    if n == 0 || d.generating_elements.len() != sig.periods.len() {
        return false;
    }
    if sig.periods.windows(2).any(|w| w[0] > w[1]) || sig.periods.iter().any(|&r| r < 2) {
        return false;
    }
    if odd_only && sig.periods.iter().any(|&r| r % 2 == 0) {
        return false;
    }
    if hurwitz_genus(n, sig) != rint(i64::from(genus)) {
        return false;
    }
    let mut sum = 0u64;
    let mut span = n;
    for (&c, &r) in d.generating_elements.iter().zip(&sig.periods) {
        if c == 0 || c >= n || order_mod(c, n) != r {
            return false;
        }
        sum = (sum + c) % n;
        span = span.gcd(&c);
    }
    if sum != 0 {
        return false;
    }
    if sig.quotient_genus == 0 && span != 1 && n != 1 {
        return false;
    }
    true
}

/// Search for residues with the prescribed orders summing to zero mod `n`
/// (generating when `h = 0`). Residue lists are explored in lexicographic
/// order with equal-period slots nondecreasing, so the first hit is the
/// canonical witness.
fn find_residues(n: u64, periods: &[u64], need_generation: bool) -> Option<Vec<u64>> {
    fn elements_of_order(n: u64, r: u64) -> Vec<u64> {
        let step = n / r;
        (1..r).filter(|u| u.gcd(&r) == 1).map(|u| u * step).collect()
    }

    fn step(
        n: u64,
        periods: &[u64],
        idx: usize,
        min_same: u64,
        sum: u64,
        span: u64,
        chosen: &mut Vec<u64>,
        need_generation: bool,
    ) -> bool {
        if idx == periods.len() {
            return sum % n == 0 && (!need_generation || span == 1 || n == 1);
        }
        let same_as_prev = idx > 0 && periods[idx] == periods[idx - 1];
        for c in elements_of_order(n, periods[idx]) {
            if same_as_prev && c < min_same {
                continue;
            }
            chosen.push(c);
            if step(
                n,
                periods,
                idx + 1,
                c,
                (sum + c) % n,
                span.gcd(&c),
                chosen,
                need_generation,
            ) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    let mut chosen = Vec::with_capacity(periods.len());
    if step(n, periods, 0, 0, 0, n, &mut chosen, need_generation) {
        Some(chosen)
    } else {
        None
    }
}

/// Try to realize `Z_n` on a genus-`genus` curve, returning the
/// lexicographically first witness (by quotient genus, then periods, then
/// residues).
fn realize_cyclic(n: u64, genus: u32, odd_only: bool) -> Option<CyclicActionDatum> {
    let target = 2 * i64::from(genus) - 2;
    let divisors: Vec<u64> = (2..=n)
        .filter(|d| n % d == 0 && (!odd_only || d % 2 == 1))
        .collect();

    // multisets of divisors with sum of (n - n/d) equal to `t`
    fn signatures(divisors: &[u64], n: u64, t: i64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if t == 0 {
            out.push(prefix.clone());
            return;
        }
        for (i, &d) in divisors.iter().enumerate() {
            let term = (n - n / d) as i64;
            if term <= t {
                prefix.push(d);
                signatures(&divisors[i..], n, t - term, prefix, out);
                prefix.pop();
            }
        }
    }

    let mut h = 0u32;
    loop {
        let t = target - n as i64 * (2 * i64::from(h) - 2);
        if t < 0 {
            break;
        }
        let mut sigs = Vec::new();
        signatures(&divisors, n, t, &mut Vec::new(), &mut sigs);
        for periods in sigs {
            if h == 0 && periods.is_empty() && n != 1 {
                continue;
            }
            if let Some(elems) = find_residues(n, &periods, h == 0) {
                let signature = OrbifoldSignature {
                    quotient_genus: h,
                    periods,
                    marked_period: None,
                };
                return Some(CyclicActionDatum {
                    group_order: n,
                    signature,
                    generating_elements: elems,
                });
            }
        }
        h += 1;
    }
    None
}

/// Brute-force the largest cyclic group order `<= max_order` realizable on a
/// genus-`genus` curve, optionally restricted to actions with all point
/// stabilizers of odd order. The result is a checked witness; pass
/// `max_order >= 4*genus + 2` so the search region certainly contains the
/// maximum.
pub fn cyclic_action_oracle(
    genus: u32,
    odd_stabilizers_only: bool,
    max_order: u64,
) -> (u64, CyclicActionDatum) {
    assert!(genus >= 2);
    for n in (1..=max_order.max(1)).rev() {
        if let Some(d) = realize_cyclic(n, genus, odd_stabilizers_only) {
            debug_assert!(validate_cyclic_action(&d, genus, odd_stabilizers_only));
            return (n, d);
        }
    }
    unreachable!("the trivial group always acts");
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(h: u32, periods: &[u64]) -> OrbifoldSignature {
        OrbifoldSignature::new(h, periods.to_vec(), None).unwrap()
    }

    #[test]
    fn hurwitz_reference_values() {
        assert_eq!(hurwitz_genus(84, &sig(0, &[2, 3, 7])), rint(2));
        assert_eq!(hurwitz_genus(1, &sig(3, &[])), rint(3));
        assert_eq!(hurwitz_genus(15, &sig(0, &[3, 5, 15])), rint(4));
        // triangle group (2, 3, 7) at degree 84(g - 1)
        for g in 2..=10 {
            assert_eq!(
                hurwitz_genus(84 * (g as u64 - 1), &sig(0, &[2, 3, 7])),
                rint(g)
            );
        }
    }

    #[test]
    fn minimize_without_half_term() {
        let m = minimize_orbifold(false, &SearchLimits::default()).unwrap();
        assert_eq!(m.value, rat(1, 42));
        assert_eq!(m.witness, sig(0, &[2, 3, 7]));
    }

    #[test]
    fn minimize_with_half_term() {
        let m = minimize_orbifold(true, &SearchLimits::default()).unwrap();
        assert_eq!(m.value, rat(2, 21));
        assert_eq!(m.witness.quotient_genus, 0);
        assert_eq!(m.witness.periods, vec![2, 3, 7]);
        assert_eq!(m.witness.marked_period, Some(7));
        // 4n * (2/21) reproduces the (8/21) |H| lower bound for K^2
        assert_eq!(rint(4) * m.value, rat(8, 21));
    }

    #[test]
    fn minimize_with_forced_positive_quotient_genus() {
        let limits = SearchLimits {
            min_quotient_genus: 1,
            ..SearchLimits::default()
        };
        let m = minimize_orbifold(false, &limits).unwrap();
        assert_eq!(m.value, rat(1, 2));
        assert_eq!(m.witness, sig(1, &[2]));
    }

    #[test]
    fn minimize_flags_boundary_optimum() {
        let limits = SearchLimits {
            max_period: 7,
            ..SearchLimits::default()
        };
        match minimize_orbifold(false, &limits) {
            Err(OrbifoldError::LimitsTooSmall { value, .. }) => assert_eq!(value, rat(1, 42)),
            other => panic!("expected LimitsTooSmall, got {other:?}"),
        }
    }

    #[test]
    fn elliptic_orbit_sizes() {
        assert_eq!(elliptic_min_orbit(12, JClass::J0).unwrap(), 2);
        assert_eq!(elliptic_min_orbit(4, JClass::J1728).unwrap(), 1);
        assert_eq!(elliptic_min_orbit(2, JClass::Generic).unwrap(), 1);
        assert!(elliptic_min_orbit(9, JClass::Generic).is_err());
        assert!(elliptic_min_orbit(8, JClass::J0).is_err());
    }

    #[test]
    fn wiman_bounds() {
        assert_eq!(wiman_bound(2, true), 9);
        assert_eq!(wiman_bound(2, false), 10);
        assert_eq!(wiman_bound(4, true), 15);
    }

    #[test]
    fn eq1_reference_values() {
        assert_eq!(eq1_genus(3, 0, 4), rint(2));
        assert_eq!(eq1_genus(2, 1, 0), rint(1));
        assert_eq!(eq1_genus(5, 0, 3), rint(2));
    }

    #[test]
    fn eq1_is_the_full_period_special_case() {
        for k in 2..=7u64 {
            for gp in 0..3u32 {
                for n in 0..6u64 {
                    let s = OrbifoldSignature::new(gp, vec![k; n as usize], None).unwrap();
                    assert_eq!(eq1_genus(k, gp, n), hurwitz_genus(k, &s));
                }
            }
        }
    }

    #[test]
    fn oracle_genus_two() {
        let (n, d) = cyclic_action_oracle(2, false, 50);
        assert_eq!(n, 10);
        assert!(validate_cyclic_action(&d, 2, false));

        let (n_odd, d_odd) = cyclic_action_oracle(2, true, 50);
        assert!(n_odd <= 9);
        assert!(validate_cyclic_action(&d_odd, 2, true));
    }

    #[test]
    fn oracle_genus_four_odd_attains_wiman_variant() {
        let (n, d) = cyclic_action_oracle(4, true, 50);
        assert_eq!(n, 15);
        assert_eq!(d.signature.quotient_genus, 0);
        assert_eq!(d.signature.periods, vec![3, 5, 15]);
        assert!(validate_cyclic_action(&d, 4, true));
    }

    #[test]
    fn witness_rejected_when_tampered() {
        let (_, mut d) = cyclic_action_oracle(2, false, 50);
        d.generating_elements[0] = (d.generating_elements[0] + 1) % d.group_order;
        assert!(!validate_cyclic_action(&d, 2, false));
    }

    #[test]
    fn signature_constructor_validates() {
        assert!(OrbifoldSignature::new(0, vec![1, 2], None).is_err());
        assert!(OrbifoldSignature::new(0, vec![2, 3], Some(5)).is_err());
        assert!(OrbifoldSignature::new(0, vec![3, 2], Some(1)).is_ok());
        let s = OrbifoldSignature::new(0, vec![7, 2, 3], None).unwrap();
        assert_eq!(s.periods, vec![2, 3, 7]);
    }
}
