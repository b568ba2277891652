use std::fmt;

use crate::frame::Frame;
use crate::rational::Q;

use super::RlError;

/// An element of R(L) with finitely many values, presented by its right rays.
///
/// `f(r,∞) = values[i]` for `r ∈ [thresholds[i-1], thresholds[i])`, with
/// `values[0]` below the first threshold and the last value from the last
/// threshold on. Canonical: `values[0] = ⊤`, the last value is `⊥`, values
/// strictly decrease and are complemented. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Step<E> {
    thresholds: Vec<Q>,
    values: Vec<E>,
}

impl<E> Step<E> {
    /// Unchecked constructor; callers canonicalize or validate.
    pub(crate) fn from_parts(thresholds: Vec<Q>, values: Vec<E>) -> Step<E> {
        debug_assert_eq!(values.len(), thresholds.len() + 1);
        Step { thresholds, values }
    }

    pub fn thresholds(&self) -> &[Q] {
        &self.thresholds
    }

    pub fn values(&self) -> &[E] {
        &self.values
    }

    /// Number of values at or below which `r` sits: index into `values`.
    fn ray_index(&self, r: Q) -> usize {
        self.thresholds.partition_point(|t| *t <= r)
    }

    pub fn min_threshold(&self) -> Option<Q> {
        self.thresholds.first().copied()
    }

    pub fn max_threshold(&self) -> Option<Q> {
        self.thresholds.last().copied()
    }

    /// Maps every value, e.g. through a frame morphism. The result is not
    /// re-canonicalized; use [`Rl::canonicalize`] on the target frame.
    pub fn map_values<G>(&self, f: impl Fn(&E) -> G) -> Step<G> {
        Step {
            thresholds: self.thresholds.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }
}

impl<E: fmt::Debug> fmt::Debug for Step<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.values[0])?;
        for (t, v) in self.thresholds.iter().zip(&self.values[1..]) {
            write!(f, " | {t} {v:?}")?;
        }
        Ok(())
    }
}

/// A rational open interval, either end possibly unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Option<Q>,
    pub hi: Option<Q>,
}

impl Interval {
    pub fn new(lo: Option<Q>, hi: Option<Q>) -> Interval {
        Interval { lo, hi }
    }

    pub fn bounded(lo: Q, hi: Q) -> Interval {
        Interval {
            lo: Some(lo),
            hi: Some(hi),
        }
    }

    pub fn above(lo: Q) -> Interval {
        Interval { lo: Some(lo), hi: None }
    }

    pub fn below(hi: Q) -> Interval {
        Interval { lo: None, hi: Some(hi) }
    }

    pub fn everything() -> Interval {
        Interval { lo: None, hi: None }
    }

    pub fn contains(&self, x: Q) -> bool {
        self.lo.is_none_or(|l| l < x) && self.hi.is_none_or(|h| x < h)
    }

    pub fn is_empty(&self) -> bool {
        matches!((self.lo, self.hi), (Some(l), Some(h)) if l >= h)
    }
}

/// Arithmetic and ray evaluation in R(L) over a fixed frame.
pub struct Rl<'a, F: Frame> {
    frame: &'a F,
}

impl<'a, F: Frame> Clone for Rl<'a, F> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<'a, F: Frame> Copy for Rl<'a, F> {}

type StepOf<F> = Step<<F as Frame>::Elem>;

impl<'a, F: Frame> Rl<'a, F> {
    pub fn new(frame: &'a F) -> Rl<'a, F> {
        Rl { frame }
    }

    pub fn frame(&self) -> &'a F {
        self.frame
    }

    /// Checks the extension conditions and returns the canonical element.
    ///
    /// Equal neighbouring values are merged. Errors: values outside the frame,
    /// thresholds not strictly increasing, `values[0] ≠ ⊤` or last `≠ ⊥`, and
    /// `NotRatherBelow(i)` when `v_i` is not complemented or not below
    /// `v_{i-1}` (so `v_i ≺ v_{i-1}` fails).
    pub fn validate(&self, thresholds: Vec<Q>, values: Vec<F::Elem>) -> Result<StepOf<F>, RlError> {
        let fr = self.frame;
        if values.len() != thresholds.len() + 1 {
            return Err(RlError::Malformed(format!(
                "{} thresholds need {} values, got {}",
                thresholds.len(),
                thresholds.len() + 1,
                values.len()
            )));
        }
        for v in &values {
            fr.check(v)?;
        }
        if let Some(w) = thresholds.windows(2).find(|w| w[0] >= w[1]) {
            return Err(RlError::Malformed(format!(
                "thresholds not strictly increasing at {} >= {}",
                w[0], w[1]
            )));
        }
        let last = values.last().expect("at least one value");
        if !fr.is_top(&values[0]) || !fr.is_bottom(last) {
            return Err(RlError::BoundaryNotTopBottom(format!(
                "first={} last={}",
                fr.render(&values[0]),
                fr.render(last)
            )));
        }
        for i in 1..values.len() {
            let (v, prev) = (&values[i], &values[i - 1]);
            if !fr.rather_below(v, v) || !fr.rather_below(v, prev) {
                return Err(RlError::NotRatherBelow(i));
            }
        }
        Ok(self.canonicalize(Step { thresholds, values }))
    }

    /// Merges equal neighbouring values. Does not check the other invariants.
    pub fn canonicalize(&self, f: StepOf<F>) -> StepOf<F> {
        let mut thresholds = Vec::with_capacity(f.thresholds.len());
        let mut values = Vec::with_capacity(f.values.len());
        let mut it = f.values.into_iter();
        values.push(it.next().expect("at least one value"));
        for (t, v) in f.thresholds.into_iter().zip(it) {
            if *values.last().unwrap() != v {
                thresholds.push(t);
                values.push(v);
            }
        }
        Step { thresholds, values }
    }

    /// Builds an element from candidate thresholds and its ray function, which
    /// must be constant on each `[t_i, t_{i+1})` and on `(-∞, t_1)`.
    pub fn from_rays(&self, mut candidates: Vec<Q>, ray: impl Fn(Q) -> F::Elem) -> StepOf<F> {
        candidates.sort();
        candidates.dedup();
        let first = match candidates.first() {
            Some(&t) => ray(t - Q::ONE),
            None => ray(Q::ZERO),
        };
        let mut values = vec![first];
        values.extend(candidates.iter().map(|&t| ray(t)));
        self.canonicalize(Step {
            thresholds: candidates,
            values,
        })
    }

    pub fn constant(&self, c: Q) -> StepOf<F> {
        self.canonicalize(Step {
            thresholds: vec![c],
            values: vec![self.frame.top(), self.frame.bottom()],
        })
    }

    pub fn zero(&self) -> StepOf<F> {
        self.constant(Q::ZERO)
    }

    pub fn one(&self) -> StepOf<F> {
        self.constant(Q::ONE)
    }

    /// Takes value 1 on `a` and 0 on `a*`.
    pub fn characteristic(&self, a: &F::Elem) -> Result<StepOf<F>, RlError> {
        self.frame.check(a)?;
        if !self.frame.is_complemented(a) {
            return Err(RlError::NotComplemented(self.frame.render(a)));
        }
        Ok(self.canonicalize(Step {
            thresholds: vec![Q::ZERO, Q::ONE],
            values: vec![self.frame.top(), a.clone(), self.frame.bottom()],
        }))
    }

    /// `f(r,∞)`.
    pub fn ray(&self, f: &StepOf<F>, r: Q) -> F::Elem {
        f.values[f.ray_index(r)].clone()
    }

    /// `f(−∞,r) = ⋁_{s<r} f(s,∞)*`. The rays below `r` are `v_0 ≥ … ≥ v_j`
    /// with `j = #{t < r}`, so the join of their pseudocomplements is `v_j*`.
    pub fn left_ray(&self, f: &StepOf<F>, r: Q) -> F::Elem {
        let j = f.thresholds.partition_point(|t| *t < r);
        self.frame.pseudocomplement(&f.values[j])
    }

    /// `f(U) = ⋁ f(−∞,q) ∧ f(p,∞)` over the components `(p,q)` of `U`.
    pub fn eval_open(&self, f: &StepOf<F>, u: &[Interval]) -> F::Elem {
        let fr = self.frame;
        u.iter().fold(fr.bottom(), |acc, iv| {
            let lo = iv.lo.map_or_else(|| fr.top(), |p| self.ray(f, p));
            let hi = iv.hi.map_or_else(|| fr.top(), |q| self.left_ray(f, q));
            fr.join(&acc, &fr.meet(&lo, &hi))
        })
    }

    /// Ray comparison on the merged threshold grid.
    pub fn leq(&self, f: &StepOf<F>, g: &StepOf<F>) -> bool {
        self.reps(&[f, g])
            .into_iter()
            .all(|r| self.frame.leq(&self.ray(f, r), &self.ray(g, r)))
    }

    /// One rational in each cell `(-∞,t_1)`, `[t_i,t_{i+1})`, `[t_k,∞)` of the
    /// merged threshold grid: `t_1 − 1`, midpoints, `t_k + 1`.
    pub fn reps(&self, fs: &[&StepOf<F>]) -> Vec<Q> {
        let mut ts: Vec<Q> = fs.iter().flat_map(|f| f.thresholds.iter().copied()).collect();
        ts.sort();
        ts.dedup();
        cell_reps(&ts)
    }

    fn pointwise(&self, f: &StepOf<F>, g: &StepOf<F>, op: impl Fn(&F::Elem, &F::Elem) -> F::Elem) -> StepOf<F> {
        let cands: Vec<Q> = f.thresholds.iter().chain(&g.thresholds).copied().collect();
        self.from_rays(cands, |r| op(&self.ray(f, r), &self.ray(g, r)))
    }

    pub fn meet(&self, f: &StepOf<F>, g: &StepOf<F>) -> StepOf<F> {
        self.pointwise(f, g, |a, b| self.frame.meet(a, b))
    }

    pub fn join(&self, f: &StepOf<F>, g: &StepOf<F>) -> StepOf<F> {
        self.pointwise(f, g, |a, b| self.frame.join(a, b))
    }

    /// Thresholds `−t_k … −t_1`, values `v_k* … v_0*`.
    pub fn neg(&self, f: &StepOf<F>) -> StepOf<F> {
        Step {
            thresholds: f.thresholds.iter().rev().map(|&t| -t).collect(),
            values: f.values.iter().rev().map(|v| self.frame.pseudocomplement(v)).collect(),
        }
    }

    /// `(f+g)(r,∞) = ⋁_{i<k} v_i ∧ g(r − t_{i+1}, ∞)`; on `[t_i, t_{i+1})`
    /// the largest ray of `g` paired with `v_i` comes from `s → t_{i+1}`.
    pub fn add(&self, f: &StepOf<F>, g: &StepOf<F>) -> StepOf<F> {
        let fr = self.frame;
        let mut cands = Vec::with_capacity(f.thresholds.len() * g.thresholds.len());
        for &t in &f.thresholds {
            for &s in &g.thresholds {
                cands.push(t + s);
            }
        }
        self.from_rays(cands, |r| {
            f.thresholds.iter().enumerate().fold(fr.bottom(), |acc, (i, &t)| {
                fr.join(&acc, &fr.meet(&f.values[i], &self.ray(g, r - t)))
            })
        })
    }

    pub fn sub(&self, f: &StepOf<F>, g: &StepOf<F>) -> StepOf<F> {
        self.add(f, &self.neg(g))
    }

    /// `(qf)(s,∞) = f(s/q,∞)` for `q > 0`.
    pub fn scale(&self, q: Q, f: &StepOf<F>) -> StepOf<F> {
        if q.is_zero() {
            self.zero()
        } else if q.is_negative() {
            self.neg(&self.scale(-q, f))
        } else {
            Step {
                thresholds: f.thresholds.iter().map(|&t| t * q).collect(),
                values: f.values.clone(),
            }
        }
    }

    pub fn add_const(&self, f: &StepOf<F>, c: Q) -> StepOf<F> {
        Step {
            thresholds: f.thresholds.iter().map(|&t| t + c).collect(),
            values: f.values.clone(),
        }
    }

    pub fn abs(&self, f: &StepOf<F>) -> StepOf<F> {
        self.join(f, &self.neg(f))
    }

    pub fn pos(&self, f: &StepOf<F>) -> StepOf<F> {
        self.join(f, &self.zero())
    }

    /// `coz f = |f|(0,∞)`.
    pub fn coz(&self, f: &StepOf<F>) -> F::Elem {
        self.ray(&self.abs(f), Q::ZERO)
    }

    /// `f ∧ n`.
    pub fn truncate(&self, f: &StepOf<F>, n: Q) -> StepOf<F> {
        self.meet(f, &self.constant(n))
    }

    pub fn is_nonnegative(&self, f: &StepOf<F>) -> bool {
        f.thresholds.first().is_none_or(|t| !t.is_negative())
    }

    /// Smallest positive value taken by `f`, i.e. its least positive threshold.
    pub fn min_positive_threshold(&self, f: &StepOf<F>) -> Option<Q> {
        f.thresholds.iter().copied().find(|t| t.is_positive())
    }

    /// `g = ⋁_n (nf ∧ 1)` for `f ≥ 0`, computed by partial joins up to the
    /// index `n* = ⌈1/p⌉` at which they settle (`p` the least positive value
    /// of `f`). Returns `g` and `n*`.
    pub fn unit_component(&self, f: &StepOf<F>, max_n: usize) -> Result<(StepOf<F>, usize), RlError> {
        if !self.is_nonnegative(f) {
            return Err(RlError::NotNonNegative);
        }
        let n_star = match self.min_positive_threshold(f) {
            None => 1,
            Some(p) => (Q::ONE / p).ceil().max(1) as usize,
        };
        if n_star > max_n {
            return Err(RlError::StabilizationNotReached(max_n));
        }
        let one = self.one();
        let mut g = self.zero();
        for n in 1..=n_star {
            let term = self.meet(&self.scale(Q::int(n as i64), f), &one);
            g = self.join(&g, &term);
        }
        let next = self.meet(&self.scale(Q::int(n_star as i64 + 1), f), &one);
        debug_assert_eq!(self.join(&g, &next), g);
        Ok((g, n_star))
    }

    /// `u` on the complemented `c`, `v` on `c*`.
    pub fn glue(&self, c: &F::Elem, u: &StepOf<F>, v: &StepOf<F>) -> StepOf<F> {
        let fr = self.frame;
        let cs = fr.pseudocomplement(c);
        let cands: Vec<Q> = u.thresholds.iter().chain(&v.thresholds).copied().collect();
        self.from_rays(cands, |r| {
            fr.join(&fr.meet(&self.ray(u, r), c), &fr.meet(&self.ray(v, r), &cs))
        })
    }

    /// Rays at each cell representative, for diagnostics.
    pub fn ray_table(&self, f: &StepOf<F>) -> Vec<(Q, F::Elem)> {
        self.reps(&[f]).into_iter().map(|r| (r, self.ray(f, r))).collect()
    }

    /// `TOP | 0 {a} | 1 BOT`.
    pub fn render(&self, f: &StepOf<F>) -> String {
        let mut s = self.frame.render(&f.values[0]);
        for (t, v) in f.thresholds.iter().zip(&f.values[1..]) {
            s.push_str(&format!(" | {t} {}", self.frame.render(v)));
        }
        s
    }

    /// The value `f` takes on each part: `(t_i, v_{i-1} ∧ v_i*)`, omitting
    /// empty parts. The parts partition ⊤.
    pub fn atoms(&self, f: &StepOf<F>) -> Vec<(Q, F::Elem)> {
        let fr = self.frame;
        f.thresholds
            .iter()
            .enumerate()
            .map(|(i, &t)| (t, fr.meet(&f.values[i], &fr.pseudocomplement(&f.values[i + 1]))))
            .filter(|(_, a)| !fr.is_bottom(a))
            .collect()
    }
}

/// Cell representatives of a sorted, deduplicated grid.
pub fn cell_reps(ts: &[Q]) -> Vec<Q> {
    match (ts.first(), ts.last()) {
        (Some(&lo), Some(&hi)) => {
            let mut out = Vec::with_capacity(ts.len() + 1);
            out.push(lo - Q::ONE);
            out.extend(ts.windows(2).map(|w| Q::midpoint(w[0], w[1])));
            out.push(hi + Q::ONE);
            out
        }
        _ => vec![Q::ZERO],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{FiniteFrame, Poset};
    use crate::rational::q;

    fn b2() -> FiniteFrame {
        FiniteFrame::discrete("B2", ["a", "b"])
    }

    #[test]
    fn validate_examples() {
        let two = FiniteFrame::discrete("two", ["p"]);
        let rl = Rl::new(&two);
        let f = rl.validate(vec![Q::ZERO], vec![two.top(), two.bottom()]).unwrap();
        assert_eq!(f, rl.zero());

        let chain = FiniteFrame::new("chain3", Poset::chain(["a", "b"])).unwrap();
        let rl = Rl::new(&chain);
        let a = chain.elem(&["a"]).unwrap();
        let err = rl
            .validate(vec![Q::ZERO, Q::ONE], vec![chain.top(), a, chain.bottom()])
            .unwrap_err();
        assert_eq!(err, RlError::NotRatherBelow(1));

        let f = b2();
        let rl = Rl::new(&f);
        let a = f.elem(&["a"]).unwrap();
        let chi = rl
            .validate(vec![Q::ZERO, Q::ONE], vec![f.top(), a, f.bottom()])
            .unwrap();
        assert_eq!(chi, rl.characteristic(&a).unwrap());
        assert_eq!(rl.render(&chi), "TOP | 0 {a} | 1 BOT");
    }

    #[test]
    fn validate_rejects_bad_shapes() {
        let f = b2();
        let rl = Rl::new(&f);
        let a = f.elem(&["a"]).unwrap();
        assert!(matches!(
            rl.validate(vec![Q::ONE, Q::ZERO], vec![f.top(), a, f.bottom()]),
            Err(RlError::Malformed(_))
        ));
        assert!(matches!(
            rl.validate(vec![Q::ZERO], vec![a, f.bottom()]),
            Err(RlError::BoundaryNotTopBottom(_))
        ));
        // Increasing values violate v_i ≺ v_{i-1}.
        let b = f.elem(&["b"]).unwrap();
        assert_eq!(
            rl.validate(vec![Q::ZERO, Q::ONE, q(2, 1)], vec![f.top(), a, b, f.bottom()]),
            Err(RlError::NotRatherBelow(2))
        );
        // Repeated values merge.
        let g = rl
            .validate(vec![Q::ZERO, q(1, 2), Q::ONE], vec![f.top(), a, a, f.bottom()])
            .unwrap();
        assert_eq!(g.thresholds(), &[Q::ZERO, Q::ONE]);
    }

    #[test]
    fn rays_of_constants_and_characteristics() {
        let f = b2();
        let rl = Rl::new(&f);
        let three = rl.constant(q(3, 1));
        assert_eq!(rl.ray(&three, q(29, 10)), f.top());
        assert_eq!(rl.ray(&three, q(3, 1)), f.bottom());
        assert_eq!(rl.left_ray(&three, q(3, 1)), f.bottom());
        assert_eq!(rl.left_ray(&three, q(31, 10)), f.top());
        let a = f.elem(&["a"]).unwrap();
        let b = f.elem(&["b"]).unwrap();
        let chi = rl.characteristic(&a).unwrap();
        assert_eq!(rl.left_ray(&chi, q(1, 2)), b);
        assert_eq!(rl.eval_open(&chi, &[Interval::bounded(q(1, 4), q(3, 4))]), f.bottom());
        assert_eq!(rl.eval_open(&chi, &[Interval::bounded(q(-1, 2), q(1, 2))]), b);
        assert_eq!(rl.eval_open(&three, &[Interval::bounded(q(2, 1), q(4, 1))]), f.top());
        assert_eq!(rl.eval_open(&chi, &[Interval::everything()]), f.top());
    }

    #[test]
    fn arithmetic_examples() {
        let f = b2();
        let rl = Rl::new(&f);
        let a = f.elem(&["a"]).unwrap();
        let chi = rl.characteristic(&a).unwrap();
        let two_chi = rl.add(&chi, &chi);
        assert_eq!(rl.render(&two_chi), "TOP | 0 {a} | 2 BOT");
        assert_eq!(rl.scale(q(2, 1), &chi), two_chi);
        assert_eq!(rl.add(&chi, &rl.zero()), chi);
        assert_eq!(rl.meet(&chi, &chi), chi);
        assert_eq!(
            rl.add(&rl.constant(Q::ONE), &rl.constant(q(2, 1))),
            rl.constant(q(3, 1))
        );
        assert_eq!(rl.neg(&rl.neg(&chi)), chi);
        assert!(rl.leq(&chi, &rl.one()));
        assert!(!rl.leq(&chi, &rl.constant(q(1, 2))));
        assert!(rl.leq(&rl.one(), &rl.constant(q(2, 1))));
        // 1 − χ_a = χ_b.
        let b = f.elem(&["b"]).unwrap();
        assert_eq!(rl.sub(&rl.one(), &chi), rl.characteristic(&b).unwrap());
    }

    #[test]
    fn coz_truncate_and_unit_component() {
        let f = b2();
        let rl = Rl::new(&f);
        assert_eq!(rl.coz(&rl.zero()), f.bottom());
        assert_eq!(rl.coz(&rl.one()), f.top());
        assert_eq!(rl.truncate(&rl.constant(q(5, 1)), q(3, 1)), rl.constant(q(3, 1)));
        assert_eq!(rl.truncate(&rl.constant(q(5, 1)), q(7, 1)), rl.constant(q(5, 1)));
        let a = f.elem(&["a"]).unwrap();
        let chi = rl.characteristic(&a).unwrap();
        let (g, n) = rl.unit_component(&rl.scale(q(1, 3), &chi), 64).unwrap();
        assert_eq!(g, chi);
        assert_eq!(n, 3);
        let one_minus = rl.sub(&rl.one(), &g);
        assert_eq!(rl.meet(&g, &one_minus), rl.zero());
        assert_eq!(rl.add(&g, &one_minus), rl.one());
        assert_eq!(
            rl.unit_component(&rl.scale(q(1, 100), &chi), 64),
            Err(RlError::StabilizationNotReached(64))
        );
    }

    #[test]
    fn atoms_partition_top() {
        let f = FiniteFrame::discrete("B3", ["x", "y", "z"]);
        let rl = Rl::new(&f);
        let x = f.elem(&["x"]).unwrap();
        let xy = f.elem(&["x", "y"]).unwrap();
        let g = rl
            .validate(vec![q(-1, 1), Q::ZERO, q(5, 2)], vec![f.top(), xy, x, f.bottom()])
            .unwrap();
        let atoms = rl.atoms(&g);
        let vals: Vec<Q> = atoms.iter().map(|(t, _)| *t).collect();
        assert_eq!(vals, [q(-1, 1), Q::ZERO, q(5, 2)]);
        assert_eq!(f.join_all(atoms.iter().map(|(_, a)| a)), f.top());
    }
}
