use crate::frame::Frame;
use crate::rational::Q;

use super::lift::{lift, PlTerm};
use super::step::{Rl, Step};
use super::RlError;

/// Short names of the five identities, in order:
/// 1. `(f−c)(r,∞) = f(c+r,∞)`
/// 2. `coz f⁺ = f(0,∞)`
/// 3. `coz (f−c)⁺ = f(c,∞)`
/// 4. `(f∧g)(r,∞) = f(r,∞) ∧ g(r,∞)`
/// 5. `⋁_n coz (nf−g)⁺ = coz f` for `f, g ≥ 0`
pub const COR1_IDENTITIES: [&str; 5] = ["shift", "coz-pos", "coz-shift", "meet", "coz-join"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cor1Case<E> {
    pub f: Step<E>,
    /// Must be `≥ 0`.
    pub g: Step<E>,
    pub c: Q,
    pub r: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cor1Report {
    pub passed: [bool; 5],
    /// Failing ray for identities 1 and 4; `None` otherwise.
    pub witness: [Option<Q>; 5],
    /// Index at which the partial joins of identity 5 settle.
    pub n_star: usize,
}

impl Cor1Report {
    pub fn all_passed(&self) -> bool {
        self.passed.iter().all(|&p| p)
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.passed.iter().position(|&p| !p)
    }
}

/// Checks the identities with left-hand sides computed by [`lift`] and
/// right-hand sides read directly from rays, so that neither side reuses the
/// other's arithmetic. Identity 5 uses `f⁺` when `f` is not `≥ 0`.
pub fn cor1_check<F: Frame>(
    rl: Rl<'_, F>,
    case: &Cor1Case<F::Elem>,
    max_n: usize,
    max_grid: usize,
) -> Result<Cor1Report, RlError> {
    let fr = rl.frame();
    let Cor1Case { f, g, c, r } = case;
    if !rl.is_nonnegative(g) {
        return Err(RlError::NotNonNegative);
    }
    let x = PlTerm::var(0);
    let mut passed = [true; 5];
    let mut witness = [None; 5];

    let mut probes = vec![*r];
    probes.extend(rl.reps(&[f, g]));

    let shifted = lift(rl, &x.clone().sub(PlTerm::constant(*c)), &[f], max_grid)?;
    for &s in &probes {
        let probe = s - *c;
        if rl.ray(&shifted, probe) != rl.ray(f, *c + probe) {
            passed[0] = false;
            witness[0] = Some(probe);
            break;
        }
    }

    let pos_abs = lift(rl, &x.clone().max(PlTerm::constant(Q::ZERO)).abs(), &[f], max_grid)?;
    passed[1] = rl.ray(&pos_abs, Q::ZERO) == rl.ray(f, Q::ZERO);

    let shift_pos_abs = lift(
        rl,
        &x.clone().sub(PlTerm::constant(*c)).max(PlTerm::constant(Q::ZERO)).abs(),
        &[f],
        max_grid,
    )?;
    passed[2] = rl.ray(&shift_pos_abs, Q::ZERO) == rl.ray(f, *c);

    let meet = lift(rl, &x.min(PlTerm::var(1)), &[f, g], max_grid)?;
    for &s in &probes {
        if rl.ray(&meet, s) != fr.meet(&rl.ray(f, s), &rl.ray(g, s)) {
            passed[3] = false;
            witness[3] = Some(s);
            break;
        }
    }

    let fp = if rl.is_nonnegative(f) { f.clone() } else { rl.pos(f) };
    let max_g = g.max_threshold().unwrap_or(Q::ZERO).max(Q::ZERO);
    // Where fp > 0 it is at least p, so n·p > max g puts that part in coz(nf−g)⁺.
    let n_star = match rl.min_positive_threshold(&fp) {
        None => 1,
        Some(p) => ((max_g / p).floor() + 1) as usize,
    };
    if n_star > max_n {
        return Err(RlError::StabilizationNotReached(max_n));
    }
    let term = |n: usize| rl.coz(&rl.pos(&rl.sub(&rl.scale(Q::int(n as i64), &fp), g)));
    let mut joined = fr.bottom();
    for n in 1..=n_star {
        joined = fr.join(&joined, &term(n));
    }
    let settled = fr.join(&joined, &term(n_star + 1)) == joined;
    passed[4] = settled && joined == rl.coz(&fp);

    Ok(Cor1Report {
        passed,
        witness,
        n_star,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::FiniteFrame;
    use crate::rational::q;
    use crate::rl::DEFAULT_MAX_GRID;

    #[test]
    fn constants_pass() {
        let f = FiniteFrame::discrete("B2", ["a", "b"]);
        let rl = Rl::new(&f);
        let case = Cor1Case {
            f: rl.one(),
            g: rl.one(),
            c: q(1, 2),
            r: Q::ZERO,
        };
        let rep = cor1_check(rl, &case, 64, DEFAULT_MAX_GRID).unwrap();
        assert!(rep.all_passed());
        assert_eq!(rep.n_star, 2);
    }

    #[test]
    fn shift_identity_on_characteristic() {
        let f = FiniteFrame::discrete("B2", ["a", "b"]);
        let rl = Rl::new(&f);
        let a = f.elem(&["a"]).unwrap();
        let chi = rl.characteristic(&a).unwrap();
        let shifted = rl.add_const(&chi, q(-1, 2));
        assert_eq!(rl.ray(&shifted, Q::ZERO), a);
        let case = Cor1Case {
            f: chi,
            g: rl.constant(q(3, 1)),
            c: q(1, 2),
            r: Q::ZERO,
        };
        let rep = cor1_check(rl, &case, 64, DEFAULT_MAX_GRID).unwrap();
        assert!(rep.all_passed(), "{rep:?}");
        assert_eq!(rep.n_star, 4);
    }

    #[test]
    fn stabilization_bound_is_enforced() {
        let f = FiniteFrame::discrete("B2", ["a", "b"]);
        let rl = Rl::new(&f);
        let case = Cor1Case {
            f: rl.constant(q(1, 100)),
            g: rl.one(),
            c: Q::ZERO,
            r: Q::ZERO,
        };
        assert_eq!(
            cor1_check(rl, &case, 64, DEFAULT_MAX_GRID),
            Err(RlError::StabilizationNotReached(64))
        );
    }
}
