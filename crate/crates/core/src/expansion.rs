//! Signed base-d expansions of the entangler parameter.
//!
//! An expansion writes `l = sum_i s_i * d^(m_i)` with `s_i = +-1` and
//! nondecreasing exponents. Every suffix sum must stay in `(0, d^n]`; that is
//! exactly what keeps the interval endpoints of the induced multi-controlled
//! gates inside `[0, d^n]`. Fewer control levels on those gates mean fewer
//! elementary gates after lowering, so expansion choice is the central
//! optimization knob.

use crate::error::{Error, Result};
use std::cmp::Ordering;

/// Sign of one expansion term. `Neg` orders before `Pos`, matching the
/// numeric order of -1 and +1 used for tie-breaking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Neg,
    Pos,
}

impl Sign {
    pub fn unit(&self) -> i64 {
        match self {
            Sign::Neg => -1,
            Sign::Pos => 1,
        }
    }

    pub fn of(value: i64) -> Sign {
        if value < 0 {
            Sign::Neg
        } else {
            Sign::Pos
        }
    }
}

/// One term `sign * d^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedTerm {
    pub sign: Sign,
    pub exponent: u32,
}

impl SignedTerm {
    pub fn new(sign: Sign, exponent: u32) -> Self {
        SignedTerm { sign, exponent }
    }
}

/// A candidate signed base-d expansion over an n-qudit register.
///
/// Plain data: construction does not validate, so tests and searches can
/// build ill-formed candidates and probe them with [`SignedExpansion::is_valid_for`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedExpansion {
    pub terms: Vec<SignedTerm>,
    pub d: u32,
    pub n: u32,
}

impl SignedExpansion {
    pub fn new(terms: Vec<SignedTerm>, d: u32, n: u32) -> Self {
        SignedExpansion { terms, d, n }
    }

    /// `sum_i s_i * d^(m_i)`; i128 to keep intermediate sums exact.
    pub fn value(&self) -> i128 {
        self.terms
            .iter()
            .map(|t| t.sign.unit() as i128 * (self.d as i128).pow(t.exponent))
            .sum()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Checks all three invariants against the target value `l`:
    /// nondecreasing exponents within `[0, n]`, value `l >= 1`, and every
    /// suffix sum in `(0, d^n]`.
    pub fn is_valid_for(&self, l: u64) -> bool {
        if l < 1 || self.terms.is_empty() {
            return false;
        }
        if self.terms.iter().any(|t| t.exponent > self.n) {
            return false;
        }
        if self.terms.windows(2).any(|w| w[0].exponent > w[1].exponent) {
            return false;
        }
        if self.value() != l as i128 {
            return false;
        }
        let bound = (self.d as i128).pow(self.n);
        let mut suffix = 0i128;
        for term in self.terms.iter().rev() {
            suffix += term.sign.unit() as i128 * (self.d as i128).pow(term.exponent);
            if suffix <= 0 || suffix > bound {
                return false;
            }
        }
        true
    }
}

/// Cost of realizing an expansion as a circuit. `control_levels` totals the
/// controls over all induced gates; `ladder_gates` totals conditioned gates
/// after the two-control lowering (one gate for 1 or 2 controls, `2c - 3`
/// for `c > 2`, none for an unconditioned increment).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Cost {
    pub control_levels: u64,
    pub ladder_gates: u64,
}

/// Objective used to rank expansions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostModel {
    ControlLevels,
    LadderGates,
    /// Control levels first, ladder gates as tie-breaker.
    Lexicographic,
}

impl CostModel {
    pub fn compare(&self, a: &Cost, b: &Cost) -> Ordering {
        match self {
            CostModel::ControlLevels => a.control_levels.cmp(&b.control_levels),
            CostModel::LadderGates => a.ladder_gates.cmp(&b.ladder_gates),
            CostModel::Lexicographic => {
                (a.control_levels, a.ladder_gates).cmp(&(b.control_levels, b.ladder_gates))
            }
        }
    }
}

/// Conditioned gates left after lowering a gate with `c` control levels.
fn ladder_gates_for_controls(c: u64) -> u64 {
    match c {
        0 => 0,
        1 | 2 => 1,
        c => 2 * c - 3,
    }
}

/// Cost of a valid expansion; the target value is recomputed from the terms.
pub fn expansion_cost(e: &SignedExpansion) -> Result<Cost> {
    let value = e.value();
    if value < 1 || value > u64::MAX as i128 || !e.is_valid_for(value as u64) {
        return Err(Error::InvalidExpansion("cost of an invalid expansion"));
    }
    let mut cost = Cost::default();
    for term in &e.terms {
        let controls = (e.n - term.exponent) as u64;
        cost.control_levels += controls;
        cost.ladder_gates += ladder_gates_for_controls(controls);
    }
    Ok(cost)
}

fn check_range(l: u64, d: u32, n: u32) -> Result<u64> {
    let max = (d as u64)
        .checked_pow(n)
        .ok_or(Error::DimensionOverflow { d, n })?;
    if l < 1 || l > max {
        return Err(Error::EntanglerOutOfRange { l, max });
    }
    Ok(max)
}

/// Plain base-d expansion: digit `c` at position `j` contributes `c` copies
/// of `+d^j`.
pub fn standard_expansion(l: u64, d: u32, n: u32) -> Result<SignedExpansion> {
    check_range(l, d, n)?;
    let mut terms = Vec::new();
    let mut rest = l;
    let mut exponent = 0u32;
    while rest > 0 {
        let digit = (rest % d as u64) as u32;
        for _ in 0..digit {
            terms.push(SignedTerm::new(Sign::Pos, exponent));
        }
        rest /= d as u64;
        exponent += 1;
    }
    Ok(SignedExpansion::new(terms, d, n))
}

/// Balanced base-d recoding, scanning digits least significant first.
///
/// A digit `c` becomes `c - d` with a carry into the next position when
/// `c > d/2`, or when `c = d/2` (even d) and the next digit is at least
/// `d/2`. This pushes weight toward high exponents, which carry fewer
/// control levels. Falls back to the standard expansion whenever the
/// recoding violates the suffix-sum bound or fails to improve the
/// control-level count.
pub fn greedy_expansion(l: u64, d: u32, n: u32) -> Result<SignedExpansion> {
    check_range(l, d, n)?;
    let standard = standard_expansion(l, d, n)?;

    let width = n as usize + 1;
    let mut digits = vec![0i64; width];
    let mut rest = l;
    for slot in digits.iter_mut() {
        *slot = (rest % d as u64) as i64;
        rest /= d as u64;
    }
    debug_assert_eq!(rest, 0);

    let half = d as i64 / 2;
    let mut signed = vec![0i64; width + 1];
    let mut carry = 0i64;
    for j in 0..width {
        let c = digits[j] + carry;
        carry = 0;
        let next = if j + 1 < width { digits[j + 1] } else { 0 };
        let recode = c > half || (d.is_multiple_of(2) && c == half && next >= half);
        if recode {
            signed[j] = c - d as i64;
            carry = 1;
        } else {
            signed[j] = c;
        }
    }
    signed[width] = carry;

    let mut terms = Vec::new();
    for (j, &c) in signed.iter().enumerate() {
        for _ in 0..c.unsigned_abs() {
            terms.push(SignedTerm::new(Sign::of(c), j as u32));
        }
    }
    if terms.iter().any(|t| t.exponent > n) {
        return Ok(standard);
    }
    let candidate = SignedExpansion::new(terms, d, n);
    if !candidate.is_valid_for(l) {
        return Ok(standard);
    }
    let model = CostModel::ControlLevels;
    if model.compare(&expansion_cost(&candidate)?, &expansion_cost(&standard)?) == Ordering::Greater
    {
        return Ok(standard);
    }
    Ok(candidate)
}

/// Resource guards for the exhaustive search.
#[derive(Debug, Clone)]
pub struct SearchLimits {
    /// Reject instances with `d^n` above this.
    pub max_dimension: u64,
    /// Reject instances whose standard expansion already costs more than this
    /// many control levels.
    pub max_standard_cost: u64,
    /// Cap on the term count; `None` uses the standard expansion's term count.
    pub term_cap: Option<usize>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_dimension: 1_000_000,
            max_standard_cost: 128,
            term_cap: None,
        }
    }
}

/// Exhaustive minimum-cost expansion under the default [`SearchLimits`].
pub fn brute_force_optimal(l: u64, d: u32, n: u32, model: CostModel) -> Result<SignedExpansion> {
    brute_force_optimal_with(l, d, n, model, &SearchLimits::default())
}

/// Exhaustive search over signed digit vectors `(c_0..c_n)` with
/// `sum_j c_j d^j = l` and `sum_j |c_j| <= term_cap`, each vector read as the
/// expansion with `|c_j|` terms of `sign(c_j)` at exponent `j`.
///
/// Mixed-sign term pairs at one exponent never help: dropping such a pair
/// keeps the expansion valid, never raises either cost component, and
/// strictly lowers the term count, so the digit-vector space contains an
/// optimum under the deterministic tie-break (fewest terms, then smallest
/// `(sign, exponent)` sequence).
pub fn brute_force_optimal_with(
    l: u64,
    d: u32,
    n: u32,
    model: CostModel,
    limits: &SearchLimits,
) -> Result<SignedExpansion> {
    let max = check_range(l, d, n)?;
    if max > limits.max_dimension {
        return Err(Error::SearchInfeasible(format!(
            "d^n = {max} exceeds the search bound {}",
            limits.max_dimension
        )));
    }
    let standard = standard_expansion(l, d, n)?;
    let standard_cost = expansion_cost(&standard)?;
    if standard_cost.control_levels > limits.max_standard_cost {
        return Err(Error::SearchInfeasible(format!(
            "standard expansion costs {} control levels, bound is {}",
            standard_cost.control_levels, limits.max_standard_cost
        )));
    }
    let cap = limits.term_cap.unwrap_or(standard.term_count());

    struct Search {
        d: i128,
        n: u32,
        l: u64,
        model: CostModel,
        best: Option<(Cost, SignedExpansion)>,
    }

    impl Search {
        fn consider(&mut self, digits: &[i64]) {
            let mut terms = Vec::new();
            for (j, &c) in digits.iter().enumerate() {
                for _ in 0..c.unsigned_abs() {
                    terms.push(SignedTerm::new(Sign::of(c), j as u32));
                }
            }
            let candidate = SignedExpansion::new(terms, self.d as u32, self.n);
            if !candidate.is_valid_for(self.l) {
                return;
            }
            let cost = match expansion_cost(&candidate) {
                Ok(cost) => cost,
                Err(_) => return,
            };
            let better = match &self.best {
                None => true,
                Some((best_cost, best)) => match self.model.compare(&cost, best_cost) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => match candidate.term_count().cmp(&best.term_count()) {
                        Ordering::Less => true,
                        Ordering::Greater => false,
                        Ordering::Equal => candidate.terms < best.terms,
                    },
                },
            };
            if better {
                self.best = Some((cost, candidate));
            }
        }

        /// `remaining` is the value still to be represented, in units of
        /// `d^position`.
        fn descend(&mut self, position: u32, remaining: i128, budget: i64, digits: &mut Vec<i64>) {
            if position == self.n {
                // Last position: the digit is forced.
                if remaining.unsigned_abs() <= budget as u128 {
                    digits.push(remaining as i64);
                    self.consider(digits);
                    digits.pop();
                }
                return;
            }
            // Max value representable by positions above this one.
            let headroom = budget as i128 * self.d.pow(self.n - position);
            if remaining.abs() > headroom {
                return;
            }
            // Digits congruent to the remainder mod d, magnitude within budget.
            let residue = remaining.rem_euclid(self.d);
            let mut digit = residue - self.d * ((residue + budget as i128) / self.d);
            while digit <= budget as i128 {
                digits.push(digit as i64);
                self.descend(
                    position + 1,
                    (remaining - digit) / self.d,
                    budget - digit.abs() as i64,
                    digits,
                );
                digits.pop();
                digit += self.d;
            }
        }
    }

    let mut search = Search {
        d: d as i128,
        n,
        l,
        model,
        best: None,
    };
    let mut digits = Vec::with_capacity(n as usize + 1);
    search.descend(0, l as i128, cap as i64, &mut digits);
    let (_, best) = search
        .best
        .expect("the standard expansion is always reachable");
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn term(sign: Sign, exponent: u32) -> SignedTerm {
        SignedTerm::new(sign, exponent)
    }

    #[test]
    fn standard_expansion_of_7_base_2() {
        let e = standard_expansion(7, 2, 3).unwrap();
        assert_eq!(
            e.terms,
            vec![term(Sign::Pos, 0), term(Sign::Pos, 1), term(Sign::Pos, 2)]
        );
        assert!(e.is_valid_for(7));
    }

    #[test]
    fn standard_expansion_of_14_base_5() {
        let e = standard_expansion(14, 5, 4).unwrap();
        assert_eq!(
            e.terms,
            vec![
                term(Sign::Pos, 0),
                term(Sign::Pos, 0),
                term(Sign::Pos, 0),
                term(Sign::Pos, 0),
                term(Sign::Pos, 1),
                term(Sign::Pos, 1),
            ]
        );
    }

    #[test]
    fn standard_expansion_of_full_range() {
        let e = standard_expansion(625, 5, 4).unwrap();
        assert_eq!(e.terms, vec![term(Sign::Pos, 4)]);
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(matches!(
            standard_expansion(0, 2, 3),
            Err(Error::EntanglerOutOfRange { .. })
        ));
        assert!(matches!(
            standard_expansion(9, 2, 3),
            Err(Error::EntanglerOutOfRange { .. })
        ));
    }

    #[test]
    fn validation_accepts_the_signed_forms() {
        let e = SignedExpansion::new(vec![term(Sign::Neg, 0), term(Sign::Pos, 3)], 2, 3);
        assert!(e.is_valid_for(7));

        let e = SignedExpansion::new(
            vec![
                term(Sign::Neg, 0),
                term(Sign::Neg, 1),
                term(Sign::Neg, 1),
                term(Sign::Pos, 2),
            ],
            5,
            4,
        );
        assert!(e.is_valid_for(14));
    }

    #[test]
    fn validation_rejects_disorder_and_wrong_value() {
        let unsorted = SignedExpansion::new(vec![term(Sign::Pos, 3), term(Sign::Neg, 0)], 2, 3);
        assert!(!unsorted.is_valid_for(7));

        let wrong = SignedExpansion::new(vec![term(Sign::Pos, 1)], 2, 3);
        assert!(!wrong.is_valid_for(7));
    }

    #[test]
    fn validation_rejects_suffix_bound_violations() {
        // +2^3 - 2^3 + 2^3 = 8: middle suffix -8 + 8 = 0 is out of (0, 8].
        let e = SignedExpansion::new(
            vec![term(Sign::Pos, 3), term(Sign::Neg, 3), term(Sign::Pos, 3)],
            2,
            3,
        );
        assert!(!e.is_valid_for(8));
    }

    #[test]
    fn cost_of_the_worked_examples() {
        let signed = SignedExpansion::new(vec![term(Sign::Neg, 0), term(Sign::Pos, 3)], 2, 3);
        assert_eq!(expansion_cost(&signed).unwrap().control_levels, 3);

        let standard = standard_expansion(7, 2, 3).unwrap();
        assert_eq!(expansion_cost(&standard).unwrap().control_levels, 6);

        let signed = SignedExpansion::new(
            vec![
                term(Sign::Neg, 0),
                term(Sign::Neg, 1),
                term(Sign::Neg, 1),
                term(Sign::Pos, 2),
            ],
            5,
            4,
        );
        let cost = expansion_cost(&signed).unwrap();
        assert_eq!(cost.control_levels, 12);
        // f(4) + f(3) + f(3) + f(2) = 5 + 3 + 3 + 1.
        assert_eq!(cost.ladder_gates, 12);

        let standard = standard_expansion(14, 5, 4).unwrap();
        assert_eq!(expansion_cost(&standard).unwrap().control_levels, 22);
    }

    #[test]
    fn cost_rejects_invalid_expansion() {
        let e = SignedExpansion::new(vec![term(Sign::Pos, 3), term(Sign::Neg, 0)], 2, 3);
        assert!(matches!(
            expansion_cost(&e),
            Err(Error::InvalidExpansion(_))
        ));
    }

    #[test]
    fn greedy_recovers_the_signed_forms() {
        let e = greedy_expansion(7, 2, 3).unwrap();
        assert_eq!(e.terms, vec![term(Sign::Neg, 0), term(Sign::Pos, 3)]);

        let e = greedy_expansion(14, 5, 4).unwrap();
        assert_eq!(
            e.terms,
            vec![
                term(Sign::Neg, 0),
                term(Sign::Neg, 1),
                term(Sign::Neg, 1),
                term(Sign::Pos, 2),
            ]
        );
    }

    #[test]
    fn greedy_unit_value() {
        let e = greedy_expansion(1, 7, 3).unwrap();
        assert_eq!(e.terms, vec![term(Sign::Pos, 0)]);
    }

    #[test]
    fn greedy_never_beats_standard_on_cost_contract() {
        let standard = expansion_cost(&standard_expansion(14, 5, 4).unwrap()).unwrap();
        let greedy = expansion_cost(&greedy_expansion(14, 5, 4).unwrap()).unwrap();
        assert!(greedy.control_levels <= standard.control_levels);
        assert!(greedy.control_levels <= 22);
    }

    #[test]
    fn brute_force_matches_the_known_optima() {
        let e = brute_force_optimal(7, 2, 3, CostModel::ControlLevels).unwrap();
        assert_eq!(e.terms, vec![term(Sign::Neg, 0), term(Sign::Pos, 3)]);
        assert_eq!(expansion_cost(&e).unwrap().control_levels, 3);

        let e = brute_force_optimal(14, 5, 4, CostModel::ControlLevels).unwrap();
        assert_eq!(
            e.terms,
            vec![
                term(Sign::Neg, 0),
                term(Sign::Neg, 1),
                term(Sign::Neg, 1),
                term(Sign::Pos, 2),
            ]
        );
        assert_eq!(expansion_cost(&e).unwrap().control_levels, 12);
    }

    #[test]
    fn brute_force_unit_value_is_unique() {
        for model in [
            CostModel::ControlLevels,
            CostModel::LadderGates,
            CostModel::Lexicographic,
        ] {
            let e = brute_force_optimal(1, 3, 2, model).unwrap();
            assert_eq!(e.terms, vec![term(Sign::Pos, 0)]);
        }
    }

    #[test]
    fn brute_force_guards_capacity() {
        let limits = SearchLimits {
            max_dimension: 100,
            ..SearchLimits::default()
        };
        let err =
            brute_force_optimal_with(14, 5, 4, CostModel::ControlLevels, &limits).unwrap_err();
        assert!(err.is_capacity());

        let limits = SearchLimits {
            max_standard_cost: 5,
            ..SearchLimits::default()
        };
        let err =
            brute_force_optimal_with(624, 5, 4, CostModel::ControlLevels, &limits).unwrap_err();
        assert!(err.is_capacity());
    }

    #[test]
    fn term_cap_widens_the_search() {
        // Under LadderGates a larger term budget may pay off; the cap is the
        // knob for that.
        let capped = brute_force_optimal(7, 2, 3, CostModel::LadderGates).unwrap();
        let limits = SearchLimits {
            term_cap: Some(5),
            ..SearchLimits::default()
        };
        let wide = brute_force_optimal_with(7, 2, 3, CostModel::LadderGates, &limits).unwrap();
        let capped_cost = expansion_cost(&capped).unwrap();
        let wide_cost = expansion_cost(&wide).unwrap();
        assert!(wide_cost.ladder_gates <= capped_cost.ladder_gates);
    }
}
