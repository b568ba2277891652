use crate::frame::Frame;
use crate::rational::Q;
use crate::rl::{cell_reps, ExplicitFamily, Rl, Step};

use super::verdict::check_pointwise_sup;
use super::PwError;

/// How a sequence continues after its explicit prefix `g_1 … g_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tail<E> {
    /// `g_n = g_m` for `n > m`.
    Stable,
    /// `g_n = g_m + (n − m)·d` for `n > m`.
    Ramp(Step<E>),
}

/// A sequence `g_1, g_2, …` in R(L) given by a prefix and a tail rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeq<E> {
    pub prefix: Vec<Step<E>>,
    pub tail: Tail<E>,
}

impl<E: Clone + Eq> TruncSeq<E> {
    pub fn len_prefix(&self) -> usize {
        self.prefix.len()
    }

    /// `g_n`, 1-based.
    pub fn term<F: Frame<Elem = E>>(&self, rl: Rl<'_, F>, n: usize) -> Step<E> {
        assert!(n >= 1, "sequence is 1-based");
        let m = self.prefix.len();
        if n <= m {
            return self.prefix[n - 1].clone();
        }
        let last = &self.prefix[m - 1];
        match &self.tail {
            Tail::Stable => last.clone(),
            Tail::Ramp(d) => rl.add(last, &rl.scale(Q::int((n - m) as i64), d)),
        }
    }

    /// The truncates `h ∧ n`, listed until they become constant (at least two
    /// terms so that a non-final term always exists).
    pub fn of<F: Frame<Elem = E>>(rl: Rl<'_, F>, h: &Step<E>) -> TruncSeq<E> {
        let m = h.max_threshold().map_or(2, |t| t.ceil().max(2) as usize);
        TruncSeq {
            prefix: (1..=m).map(|n| rl.truncate(h, Q::int(n as i64))).collect(),
            tail: Tail::Stable,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncReport {
    /// Condition (1) was checked for `n = 1 ..= checked_to`.
    pub checked_to: usize,
    /// Index from which the partial joins of condition (2) no longer move.
    pub settle: usize,
}

/// Checks `g_{n+1} ∧ n = g_n` for all `n ≥ 1` and `⋁_n g_n(−∞,n) = ⊤`.
///
/// For `n ≥ m` the tail is affine in `n` at every point: with `g_m = γ` and
/// `d = δ` there, condition (1) reads `min(γ + (n+1−m)δ, n) = γ + (n−m)δ`.
/// It holds for all `n ≥ m` iff it holds at `n = m` and `n = m + 1` (then
/// either `δ = 0, γ ≤ m` or `δ = 1, γ = m`), so checking `n ≤ m + 1` is
/// exhaustive. In either case `g_n(−∞,n)` stops growing once `n > γ_max`,
/// which bounds the join in condition (2).
pub fn validate_truncate_seq<F: Frame>(rl: Rl<'_, F>, seq: &TruncSeq<F::Elem>) -> Result<TruncReport, PwError> {
    let fr = rl.frame();
    let m = seq.prefix.len();
    if m == 0 {
        return Err(PwError::HypothesisFailed("empty prefix".into()));
    }
    for n in 1..=m + 1 {
        let lhs = rl.truncate(&seq.term(rl, n + 1), Q::int(n as i64));
        if lhs != seq.term(rl, n) {
            return Err(PwError::NotATruncateSequence {
                condition: 1,
                witness: n,
            });
        }
    }
    let gamma = seq.prefix[m - 1].max_threshold().unwrap_or(Q::ZERO);
    let settle = m.max((gamma.floor() + 1).max(1) as usize);
    let mut joins = Vec::with_capacity(settle);
    let mut acc = fr.bottom();
    for n in 1..=settle {
        acc = fr.join(&acc, &rl.left_ray(&seq.term(rl, n), Q::int(n as i64)));
        joins.push(acc.clone());
    }
    if !fr.is_top(&acc) {
        let first = joins.iter().position(|j| *j == acc).unwrap() + 1;
        return Err(PwError::NotATruncateSequence {
            condition: 2,
            witness: first,
        });
    }
    Ok(TruncReport {
        checked_to: m + 1,
        settle,
    })
}

/// The element whose truncates are `seq`, with the checks that confirm it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reconstruction<E> {
    pub h: Step<E>,
    pub checks: Vec<(String, bool)>,
}

impl<E> Reconstruction<E> {
    pub fn valid(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// Builds `h` from its left rays `h(−∞,r) = g_n(−∞,r)` for any `n > r`, then
/// confirms `h ∧ n = g_n` and that `h` is the pointwise join of the `g_n`.
pub fn reconstruct<F: Frame>(rl: Rl<'_, F>, seq: &TruncSeq<F::Elem>) -> Result<Reconstruction<F::Elem>, PwError> {
    let fr = rl.frame();
    let report = validate_truncate_seq(rl, seq)?;
    let upto = report.settle + 1;
    let terms: Vec<Step<F::Elem>> = (1..=upto).map(|n| seq.term(rl, n)).collect();
    let mut ts: Vec<Q> = terms.iter().flat_map(|g| g.thresholds().iter().copied()).collect();
    ts.sort();
    ts.dedup();
    let left = |r: Q| {
        let n = (r.floor() + 1).max(1) as usize;
        rl.left_ray(&seq.term(rl, n), r)
    };
    // Off the grid, h(r,∞) is the complement of h(−∞,r).
    let values: Vec<F::Elem> = cell_reps(&ts)
        .into_iter()
        .map(|r| fr.pseudocomplement(&left(r)))
        .collect();
    let h = rl.validate(ts, values)?;

    let mut checks = Vec::new();
    for (i, g) in terms.iter().enumerate() {
        let n = i + 1;
        checks.push((format!("h&{n}=g{n}"), rl.truncate(&h, Q::int(n as i64)) == *g));
    }
    let verdict = check_pointwise_sup(rl, &h, &ExplicitFamily::new(terms))?;
    checks.push(("h=pointwise-join".into(), verdict.is_pointwise));
    Ok(Reconstruction { h, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{FiniteFrame, OmegaElem, OmegaFrame};
    use crate::rational::q;

    #[test]
    fn constant_five_round_trips() {
        let f = FiniteFrame::discrete("B2", ["a", "b"]);
        let rl = Rl::new(&f);
        let h = rl.constant(q(5, 1));
        let seq = TruncSeq::of(rl, &h);
        assert_eq!(seq.len_prefix(), 5);
        assert_eq!(seq.term(rl, 3), rl.constant(q(3, 1)));
        let rec = reconstruct(rl, &seq).unwrap();
        assert_eq!(rec.h, h);
        assert!(rec.valid());
    }

    #[test]
    fn condition_one_violation() {
        let f = FiniteFrame::discrete("B2", ["a", "b"]);
        let rl = Rl::new(&f);
        let mut seq = TruncSeq::of(rl, &rl.constant(q(5, 1)));
        // g₂ ∧ 1 ≠ g₁.
        seq.prefix[0] = rl.constant(q(1, 2));
        assert_eq!(
            validate_truncate_seq(rl, &seq),
            Err(PwError::NotATruncateSequence {
                condition: 1,
                witness: 1
            })
        );
    }

    #[test]
    fn ramp_violates_condition_two() {
        let f = FiniteFrame::discrete("B2", ["a", "b"]);
        let rl = Rl::new(&f);
        let a = f.elem(&["a"]).unwrap();
        let chi = rl.characteristic(&a).unwrap();
        let base = TruncSeq::of(rl, &rl.constant(q(3, 2)));
        let prefix = base
            .prefix
            .iter()
            .enumerate()
            .map(|(i, g)| rl.glue(&a, &rl.constant(Q::int(i as i64 + 1)), g))
            .collect();
        let seq = TruncSeq {
            prefix,
            tail: Tail::Ramp(chi),
        };
        assert_eq!(
            validate_truncate_seq(rl, &seq),
            Err(PwError::NotATruncateSequence {
                condition: 2,
                witness: 2
            })
        );
    }

    #[test]
    fn omega_eventually_constant() {
        let rl = Rl::new(&OmegaFrame);
        // n ↦ min(n, 3) with tail 3.
        let h = rl
            .validate(
                vec![Q::ZERO, Q::ONE, q(2, 1), q(3, 1)],
                vec![
                    OmegaFrame.top(),
                    OmegaElem::cofin([0]),
                    OmegaElem::cofin([0, 1]),
                    OmegaElem::cofin([0, 1, 2]),
                    OmegaFrame.bottom(),
                ],
            )
            .unwrap();
        let rec = reconstruct(rl, &TruncSeq::of(rl, &h)).unwrap();
        assert_eq!(rec.h, h);
        assert!(rec.valid());
    }
}
