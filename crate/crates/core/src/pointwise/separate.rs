use crate::frame::{compose, BooleanEmbed, Composite, Frame, FrameHom, OpenQuotient};
use crate::rational::Q;
use crate::rl::{ExplicitFamily, RayFamily, Rl, Shifted, Step};

use super::verdict::{check_pointwise_sup, translate_family, verdict_grid};
use super::PwError;

/// `ψ = k ∘ i`: boolean embedding followed by an open quotient.
pub type Separator<F> =
    Composite<<F as BooleanEmbed>::Embedding, <<F as BooleanEmbed>::Target as OpenQuotient>::Quotient>;

type QuotientFrame<F> = <<<F as BooleanEmbed>::Target as OpenQuotient>::Quotient as FrameHom>::Cod;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeparationKind {
    /// `⋁ψ[K] ≤ r/2 < 0 = ψ(f₀)` after translating the candidate to 0.
    Separated,
    /// The candidate is not an upper bound; `ψ` is the plain embedding and a
    /// member already exceeds it at ray `r`.
    NotUpperBound { member: usize },
}

/// Evidence that `ψ` destroys the supremum, with every check recorded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationCertificate {
    pub kind: SeparationKind,
    /// Failing ray of the translated problem (candidate 0).
    pub r: Q,
    /// `a = ⋁_K (k − f₀)(r,∞)` and the quotient point `b`, rendered.
    pub a: String,
    pub b: String,
    /// Named checks and whether they hold.
    pub checks: Vec<(String, bool)>,
}

impl SeparationCertificate {
    pub fn valid(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// Separating morphism for an explicit finite family.
pub fn separating_morphism<F>(
    rl: Rl<'_, F>,
    fam: &ExplicitFamily<F::Elem>,
    f0: &Step<F::Elem>,
) -> Result<(Separator<F>, SeparationCertificate), PwError>
where
    F: BooleanEmbed,
{
    if check_pointwise_sup(rl, f0, fam)?.is_pointwise {
        return Err(PwError::IsPointwise);
    }
    let moved = translate_family(rl, fam, f0);
    let (psi, mut cert) = separate_at_zero(rl, &moved)?;
    // Untranslated form: ψ(k) ≤ ψ(f₀) + r/2.
    if cert.kind == SeparationKind::Separated {
        let cod = psi.codomain();
        let rc = Rl::new(cod);
        let pf0 = push(&psi, rc, f0);
        let bound = rc.add_const(&pf0, cert.r / Q::int(2));
        for (n, k) in fam.members.iter().enumerate() {
            let ok = rc.leq(&push(&psi, rc, k), &bound);
            cert.checks.push((format!("psi(k{n})<=psi(f0)+r/2"), ok));
        }
    }
    Ok((psi, cert))
}

/// Separating morphism for a template family against a constant candidate,
/// translated with [`Shifted`] so the family may be countable.
pub fn separating_morphism_const<F, K>(
    rl: Rl<'_, F>,
    fam: K,
    c: Q,
) -> Result<(Separator<F>, SeparationCertificate), PwError>
where
    F: BooleanEmbed,
    K: RayFamily<F>,
{
    if check_pointwise_sup(rl, &rl.constant(c), &fam)?.is_pointwise {
        return Err(PwError::IsPointwise);
    }
    separate_at_zero(rl, &Shifted::new(fam, c))
}

/// `ψ(f)`: values pushed through `ψ` and re-canonicalized.
pub fn push<M: FrameHom>(
    psi: &M,
    rc: Rl<'_, M::Cod>,
    f: &Step<<M::Dom as Frame>::Elem>,
) -> Step<<M::Cod as Frame>::Elem> {
    rc.canonicalize(f.map_values(|v| psi.apply(v)))
}

/// Core construction with candidate 0. At the smallest failing ray `r`:
/// if `r < 0` then `a = ⋁ k(r,∞) ≠ ⊤`; embed into the boolean target, let `b`
/// complement `i(a)` and quotient to `↓b`. Every `ψ(k)` then has
/// `ψ(k)(r,∞) ≤ ψ(a) = ⊥`, so `ψ(k) ≤ r < r/2 < 0 = ψ(0)` while the quotient is
/// nontrivial. If `r ≥ 0` some member is positive somewhere and 0 is not an
/// upper bound at all.
fn separate_at_zero<F, K>(rl: Rl<'_, F>, fam: &K) -> Result<(Separator<F>, SeparationCertificate), PwError>
where
    F: BooleanEmbed,
    K: RayFamily<F> + ?Sized,
{
    let fr = rl.frame();
    let zero = rl.zero();
    let verdict = check_pointwise_sup(rl, &zero, fam)?;
    let Some(fail) = verdict.failing else {
        return Err(PwError::IsPointwise);
    };
    let r = fail.r;
    let i = fr.boolean_embedding();

    if r.is_negative() {
        let a = fail.lhs;
        let target = i.codomain();
        let b = target.pseudocomplement(&i.apply(&a));
        let k = target.open_quotient(&b);
        let b_shown = target.render(&b);
        let psi = compose(i, k);
        let cod: &QuotientFrame<F> = psi.codomain();
        let rc = Rl::new(cod);
        let half = r / Q::int(2);
        let mut checks = vec![
            ("psi(a)=BOT".to_string(), cod.is_bottom(&psi.apply(&a))),
            ("quotient-nontrivial".to_string(), !cod.is_bottom(&cod.top())),
            ("r/2<0".to_string(), half.is_negative()),
        ];
        let bound = rc.constant(half);
        for (n, m) in fam.sample(rl).iter().enumerate() {
            checks.push((format!("psi(k{n})<=r/2"), rc.leq(&push(&psi, rc, m), &bound)));
        }
        let cert = SeparationCertificate {
            kind: SeparationKind::Separated,
            r,
            a: fr.render(&a),
            b: b_shown,
            checks,
        };
        return Ok((psi, cert));
    }

    // r ≥ 0: find a member exceeding 0 at some grid ray.
    let members = fam.sample(rl);
    let grid = verdict_grid(rl, &zero, fam);
    let k = i.codomain().open_quotient(&i.codomain().top());
    let psi = compose(i, k);
    let cod: &QuotientFrame<F> = psi.codomain();
    let found = members.iter().enumerate().find_map(|(n, m)| {
        grid.iter()
            .copied()
            .find(|&s| !s.is_negative() && !fr.is_bottom(&rl.ray(m, s)))
            .map(|s| (n, s, psi.apply(&rl.ray(m, s))))
    });
    let (member, s, image) =
        found.ok_or_else(|| PwError::HypothesisFailed(format!("no sampled member exceeds 0 at r={r}")))?;
    let cert = SeparationCertificate {
        kind: SeparationKind::NotUpperBound { member },
        r: s,
        a: fr.render(&fail.lhs),
        b: "TOP".into(),
        checks: vec![(format!("psi(k{member})(r,inf)!=BOT"), !cod.is_bottom(&image))],
    };
    Ok((psi, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{FiniteFrame, OmegaFrame, Poset, PowElem};
    use crate::rational::q;
    use crate::rl::PrefixIndicators;

    #[test]
    fn chain3_minus_one_against_zero() {
        let f = FiniteFrame::new("chain3", Poset::chain(["a", "b"])).unwrap();
        let rl = Rl::new(&f);
        let fam = ExplicitFamily::new(vec![rl.constant(q(-1, 1))]);
        let (psi, cert) = separating_morphism(rl, &fam, &rl.zero()).unwrap();
        assert_eq!(cert.kind, SeparationKind::Separated);
        assert_eq!(cert.r, q(-1, 2));
        assert_eq!(cert.a, "BOT");
        assert_eq!(cert.b, "TOP");
        assert!(cert.valid(), "{cert:?}");
        let rc = Rl::new(psi.codomain());
        assert_eq!(push(&psi, rc, &rl.constant(q(-1, 1))), rc.constant(q(-1, 1)));
    }

    #[test]
    fn omega_demo_collapses_to_the_point_omega() {
        let rl = Rl::new(&OmegaFrame);
        let (psi, cert) = separating_morphism_const(rl, PrefixIndicators, Q::ONE).unwrap();
        assert!(cert.valid(), "{cert:?}");
        assert_eq!(cert.r, q(-1, 2));
        assert_eq!(cert.a, "natcofin{}");
        assert_eq!(psi.codomain().top(), PowElem::omega_point());
        let rc = Rl::new(psi.codomain());
        let f5 = PrefixIndicators.member(rl, 5).unwrap();
        assert_eq!(push(&psi, rc, &rl.add_const(&f5, -Q::ONE)), rc.constant(q(-1, 1)));
        assert_eq!(push(&psi, rc, &rl.zero()), rc.zero());
    }

    #[test]
    fn pointwise_instances_are_refused() {
        let f = FiniteFrame::discrete("B2", ["a", "b"]);
        let rl = Rl::new(&f);
        let fam = ExplicitFamily::new(vec![rl.one()]);
        assert_eq!(
            separating_morphism(rl, &fam, &rl.one()).unwrap_err(),
            PwError::IsPointwise
        );
    }

    #[test]
    fn non_upper_bound_gets_its_own_certificate() {
        let f = FiniteFrame::discrete("B2", ["a", "b"]);
        let rl = Rl::new(&f);
        let a = f.elem(&["a"]).unwrap();
        let fam = ExplicitFamily::new(vec![rl.characteristic(&a).unwrap()]);
        let (_, cert) = separating_morphism(rl, &fam, &rl.zero()).unwrap();
        assert_eq!(cert.kind, SeparationKind::NotUpperBound { member: 0 });
        assert!(cert.valid());
    }

    #[test]
    fn separated_family_on_b2() {
        let f = FiniteFrame::discrete("B2", ["a", "b"]);
        let rl = Rl::new(&f);
        let a = f.elem(&["a"]).unwrap();
        let fam = ExplicitFamily::new(vec![rl.characteristic(&a).unwrap()]);
        let (psi, cert) = separating_morphism(rl, &fam, &rl.one()).unwrap();
        assert_eq!(cert.kind, SeparationKind::Separated);
        assert!(cert.valid(), "{cert:?}");
        assert_eq!(psi.codomain().len(), 2);
    }
}
