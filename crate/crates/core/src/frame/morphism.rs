use std::collections::BTreeMap;

use super::finite::{Down, FiniteFrame, Poset};
use super::omega::{OmegaElem, OmegaFrame, OmegaPowerset, PowElem};
use super::{Frame, FrameError};

/// A map between frames. Whether it preserves the frame operations is a
/// property checked by [`morphism_check`], not assumed.
pub trait FrameHom {
    type Dom: Frame;
    type Cod: Frame;

    fn domain(&self) -> &Self::Dom;
    fn codomain(&self) -> &Self::Cod;
    fn apply(&self, a: &<Self::Dom as Frame>::Elem) -> <Self::Cod as Frame>::Elem;
}

/// Extensional map between finite frames.
#[derive(Clone, Debug)]
pub struct FiniteMorphism {
    domain: FiniteFrame,
    codomain: FiniteFrame,
    /// Image of `domain.elements()[i]`.
    table: Vec<Down>,
}

impl FiniteMorphism {
    pub fn from_fn(
        domain: FiniteFrame,
        codomain: FiniteFrame,
        f: impl Fn(&Down) -> Down,
    ) -> Result<FiniteMorphism, FrameError> {
        let table: Vec<Down> = domain.elements().iter().map(f).collect();
        for img in &table {
            codomain.check(img)?;
        }
        Ok(FiniteMorphism {
            domain,
            codomain,
            table,
        })
    }

    pub fn identity(frame: &FiniteFrame) -> FiniteMorphism {
        FiniteMorphism::from_fn(frame.clone(), frame.clone(), |a| *a).expect("identity")
    }

    pub fn table(&self) -> impl Iterator<Item = (Down, Down)> + '_ {
        self.domain.elements().iter().copied().zip(self.table.iter().copied())
    }

    pub fn check(&self) -> MorphismReport {
        morphism_check(self, self.domain.elements())
    }
}

impl FrameHom for FiniteMorphism {
    type Dom = FiniteFrame;
    type Cod = FiniteFrame;

    fn domain(&self) -> &FiniteFrame {
        &self.domain
    }

    fn codomain(&self) -> &FiniteFrame {
        &self.codomain
    }

    fn apply(&self, a: &Down) -> Down {
        let i = self
            .domain
            .index_of(a)
            .unwrap_or_else(|| panic!("{} is not in the domain", self.domain.render(a)));
        self.table[i]
    }
}

/// `second ∘ first`.
#[derive(Clone, Debug)]
pub struct Composite<A, B> {
    pub first: A,
    pub second: B,
}

pub fn compose<A, B>(first: A, second: B) -> Composite<A, B>
where
    A: FrameHom,
    B: FrameHom<Dom = A::Cod>,
{
    Composite { first, second }
}

impl<A, B> FrameHom for Composite<A, B>
where
    A: FrameHom,
    B: FrameHom<Dom = A::Cod>,
{
    type Dom = A::Dom;
    type Cod = B::Cod;

    fn domain(&self) -> &A::Dom {
        self.first.domain()
    }

    fn codomain(&self) -> &B::Cod {
        self.second.codomain()
    }

    fn apply(&self, a: &<A::Dom as Frame>::Elem) -> <B::Cod as Frame>::Elem {
        self.second.apply(&self.first.apply(a))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismReport {
    pub frame_map: bool,
    pub injective: bool,
    pub surjective: bool,
    /// `m(a) = ⊥ ⇒ a = ⊥`.
    pub dense: bool,
    /// `m(a) = ⊤ ⇒ a = ⊤`.
    pub codense: bool,
    /// First violated equation, rendered with its witnesses.
    pub violation: Option<String>,
}

impl MorphismReport {
    pub fn require_frame_map(&self) -> Result<(), FrameError> {
        match &self.violation {
            None => Ok(()),
            Some(v) => Err(FrameError::NotAFrameMap(v.clone())),
        }
    }
}

/// Checks `m` on the given domain elements. For a finite domain pass all
/// elements; binary joins plus the empty join then cover every join.
/// Surjectivity is only meaningful when the codomain is finite and is judged
/// against the images of `elems`.
pub fn morphism_check<M: FrameHom>(m: &M, elems: &[<M::Dom as Frame>::Elem]) -> MorphismReport {
    let (dom, cod) = (m.domain(), m.codomain());
    let image: Vec<_> = elems.iter().map(|a| m.apply(a)).collect();
    let r = |x: &<M::Dom as Frame>::Elem| dom.render(x);
    let rc = |x: &<M::Cod as Frame>::Elem| cod.render(x);

    let mut violation = None;
    let bot = m.apply(&dom.bottom());
    let top = m.apply(&dom.top());
    if bot != cod.bottom() {
        violation = Some(format!("m(BOT)={}!=BOT", rc(&bot)));
    } else if top != cod.top() {
        violation = Some(format!("m(TOP)={}!=TOP", rc(&top)));
    }
    'pairs: for (i, a) in elems.iter().enumerate() {
        if violation.is_some() {
            break;
        }
        for (j, b) in elems.iter().enumerate().skip(i) {
            let meet = m.apply(&dom.meet(a, b));
            let want = cod.meet(&image[i], &image[j]);
            if meet != want {
                violation = Some(format!("m({}&{})={}!={}", r(a), r(b), rc(&meet), rc(&want)));
                break 'pairs;
            }
            let join = m.apply(&dom.join(a, b));
            let want = cod.join(&image[i], &image[j]);
            if join != want {
                violation = Some(format!("m({}|{})={}!={}", r(a), r(b), rc(&join), rc(&want)));
                break 'pairs;
            }
        }
    }

    let mut seen = BTreeMap::new();
    let mut injective = true;
    for (a, img) in elems.iter().zip(&image) {
        if let Some(prev) = seen.insert(img.clone(), a.clone()) {
            if prev != *a {
                injective = false;
            }
        }
    }
    let dense = elems
        .iter()
        .zip(&image)
        .all(|(a, img)| !cod.is_bottom(img) || dom.is_bottom(a));
    let codense = elems
        .iter()
        .zip(&image)
        .all(|(a, img)| !cod.is_top(img) || dom.is_top(a));
    MorphismReport {
        frame_map: violation.is_none(),
        injective,
        surjective: false,
        dense,
        codense,
        violation,
    }
}

/// [`morphism_check`] over all elements of a finite domain, with surjectivity
/// judged against the finite codomain.
pub fn finite_morphism_check(m: &FiniteMorphism) -> MorphismReport {
    let mut rep = morphism_check(m, m.domain.elements());
    let hit: std::collections::BTreeSet<Down> = m.table.iter().copied().collect();
    rep.surjective = hit.len() == m.codomain.len();
    rep
}

/// `b: F → F**`, `a ↦ a**`, with the regular elements as a boolean frame.
#[derive(Clone, Debug)]
pub struct Booleanization {
    pub frame: FiniteFrame,
    pub map: FiniteMorphism,
    /// For each point of `frame`, the atom of `F**` it stands for.
    pub atoms: Vec<Down>,
}

impl Booleanization {
    /// The regular element of the original frame represented by `x`.
    pub fn regular(&self, x: &Down) -> Down {
        let source = self.map.domain();
        let joined = source.join_all(x.points().map(|p| &self.atoms[p]).collect::<Vec<_>>());
        source.pseudocomplement(&source.pseudocomplement(&joined))
    }

    /// All regular elements `a = a**` of the source frame.
    pub fn regular_elements(&self) -> Vec<Down> {
        self.frame.elements().iter().map(|x| self.regular(x)).collect()
    }
}

/// Booleanization of a finite frame. `F**` is a finite boolean algebra, so it
/// is represented as the powerset of its atoms; point names concatenate the
/// source points of each atom with `_`.
pub fn booleanize(f: &FiniteFrame) -> Booleanization {
    let dd = |a: &Down| f.pseudocomplement(&f.pseudocomplement(a));
    let mut regular: Vec<Down> = f.elements().iter().map(dd).collect();
    regular.sort_by_key(|d| (d.count(), d.0));
    regular.dedup();
    let atoms: Vec<Down> = regular
        .iter()
        .copied()
        .filter(|a| a.0 != 0)
        .filter(|a| !regular.iter().any(|b| b.0 != 0 && b != a && f.leq(b, a)))
        .collect();
    let names: Vec<String> = atoms
        .iter()
        .map(|a| {
            a.points()
                .map(|p| f.poset().name(p).to_string())
                .collect::<Vec<_>>()
                .join("_")
        })
        .collect();
    let frame =
        FiniteFrame::new(format!("{}**", f.name()), Poset::antichain(names)).expect("atoms of a nontrivial frame");
    let atoms_for_map = atoms.clone();
    let map = FiniteMorphism::from_fn(f.clone(), frame.clone(), move |a| {
        let r = dd(a);
        let bits = atoms_for_map
            .iter()
            .enumerate()
            .filter(|(_, at)| at.0 & !r.0 == 0)
            .fold(0u64, |m, (i, _)| m | (1 << i));
        Down(bits)
    })
    .expect("images are subsets of atoms");
    Booleanization { frame, map, atoms }
}

/// Inclusion `Down(P) → 2^P`.
pub fn boolean_embedding(f: &FiniteFrame) -> FiniteMorphism {
    let names = f.poset().names().to_vec();
    let target =
        FiniteFrame::new(format!("2^{}", f.name()), Poset::antichain(names)).expect("same carrier as a valid frame");
    FiniteMorphism::from_fn(f.clone(), target, |a| *a).expect("downsets are subsets")
}

/// `c ↦ c ∧ b` onto `↓b`.
pub fn open_quotient(f: &FiniteFrame, b: Down) -> Result<FiniteMorphism, FrameError> {
    f.check(&b)?;
    let (target, map) = f.down_frame(b);
    FiniteMorphism::from_fn(f.clone(), target, move |c| {
        let bits = map
            .iter()
            .enumerate()
            .filter(|(_, &p)| c.0 & b.0 & (1 << p) != 0)
            .fold(0u64, |m, (i, _)| m | (1 << i));
        Down(bits)
    })
}

/// Frames with a canonical injective frame map into a boolean frame.
pub trait BooleanEmbed: Frame + Sized {
    type Target: OpenQuotient;
    type Embedding: FrameHom<Dom = Self, Cod = Self::Target>;

    fn boolean_embedding(&self) -> Self::Embedding;
}

/// Frames whose open quotients `c ↦ c ∧ b` are available as morphisms.
pub trait OpenQuotient: Frame + Sized {
    type Quotient: FrameHom<Dom = Self>;

    fn open_quotient(&self, b: &Self::Elem) -> Self::Quotient;
}

impl BooleanEmbed for FiniteFrame {
    type Target = FiniteFrame;
    type Embedding = FiniteMorphism;

    fn boolean_embedding(&self) -> FiniteMorphism {
        boolean_embedding(self)
    }
}

impl OpenQuotient for FiniteFrame {
    type Quotient = FiniteMorphism;

    fn open_quotient(&self, b: &Down) -> FiniteMorphism {
        open_quotient(self, *b).expect("element of the frame")
    }
}

/// `O(ω+1) ⊆ P(ω+1)`.
#[derive(Clone, Debug, Default)]
pub struct OmegaInclusion {
    domain: OmegaFrame,
    codomain: OmegaPowerset,
}

impl OmegaInclusion {
    pub fn new() -> OmegaInclusion {
        OmegaInclusion {
            domain: OmegaFrame,
            codomain: OmegaPowerset::full(),
        }
    }
}

impl Default for OmegaPowerset {
    fn default() -> Self {
        OmegaPowerset::full()
    }
}

impl FrameHom for OmegaInclusion {
    type Dom = OmegaFrame;
    type Cod = OmegaPowerset;

    fn domain(&self) -> &OmegaFrame {
        &self.domain
    }

    fn codomain(&self) -> &OmegaPowerset {
        &self.codomain
    }

    fn apply(&self, a: &OmegaElem) -> PowElem {
        PowElem::new(a.nat_part(), a.contains_omega())
    }
}

/// `c ↦ c ∩ b` from an [`OmegaPowerset`] onto `↓b`.
#[derive(Clone, Debug)]
pub struct PowersetRestriction {
    domain: OmegaPowerset,
    codomain: OmegaPowerset,
}

impl FrameHom for PowersetRestriction {
    type Dom = OmegaPowerset;
    type Cod = OmegaPowerset;

    fn domain(&self) -> &OmegaPowerset {
        &self.domain
    }

    fn codomain(&self) -> &OmegaPowerset {
        &self.codomain
    }

    fn apply(&self, a: &PowElem) -> PowElem {
        a.intersect(&self.codomain.top())
    }
}

impl BooleanEmbed for OmegaFrame {
    type Target = OmegaPowerset;
    type Embedding = OmegaInclusion;

    fn boolean_embedding(&self) -> OmegaInclusion {
        OmegaInclusion::new()
    }
}

impl OpenQuotient for OmegaPowerset {
    type Quotient = PowersetRestriction;

    fn open_quotient(&self, b: &PowElem) -> PowersetRestriction {
        PowersetRestriction {
            domain: self.clone(),
            codomain: OmegaPowerset::below(self.meet(&self.top(), b)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> FiniteFrame {
        FiniteFrame::new("chain3", Poset::chain(["a", "b"])).unwrap()
    }

    fn vee() -> FiniteFrame {
        let p = Poset::from_relations(vec!["a".into(), "b".into(), "c".into()], &[(0, 2), (1, 2)]).unwrap();
        FiniteFrame::new("vee", p).unwrap()
    }

    #[test]
    fn identity_has_every_flag() {
        let f = vee();
        let rep = finite_morphism_check(&FiniteMorphism::identity(&f));
        assert!(rep.frame_map && rep.injective && rep.surjective && rep.dense && rep.codense);
    }

    #[test]
    fn booleanize_chain3_collapses_a() {
        let f = chain3();
        let b = booleanize(&f);
        assert_eq!(b.frame.len(), 2);
        let a = f.elem(&["a"]).unwrap();
        assert_eq!(b.map.apply(&a), b.frame.top());
        let rep = finite_morphism_check(&b.map);
        assert!(rep.frame_map);
        assert!(!rep.injective);
        assert!(rep.surjective);
    }

    #[test]
    fn booleanize_vee_counts_regular_elements() {
        let f = vee();
        let b = booleanize(&f);
        let brute = f
            .elements()
            .iter()
            .filter(|a| f.pseudocomplement(&f.pseudocomplement(a)) == **a)
            .count();
        assert_eq!(b.frame.len(), brute);
        assert!(b.frame.classify().boolean);
        assert!(finite_morphism_check(&b.map).frame_map);
        for a in f.elements() {
            let ba = b.map.apply(a);
            assert_eq!(b.map.apply(&b.regular(&ba)), ba);
        }
    }

    #[test]
    fn boolean_embedding_of_chain3() {
        let f = chain3();
        let e = boolean_embedding(&f);
        assert_eq!(e.codomain().len(), 4);
        let rep = finite_morphism_check(&e);
        assert!(rep.frame_map && rep.injective && !rep.surjective);
        assert!(e.codomain().classify().boolean);
    }

    #[test]
    fn open_quotient_examples() {
        let f = FiniteFrame::discrete("2x2", ["a", "b"]);
        let id = open_quotient(&f, f.top()).unwrap();
        for a in f.elements() {
            assert_eq!(f.render(a), id.codomain().render(&id.apply(a)));
        }
        let a = f.elem(&["a"]).unwrap();
        let q = open_quotient(&f, a).unwrap();
        assert_eq!(q.codomain().len(), 2);
        assert_eq!(q.apply(&f.elem(&["b"]).unwrap()), q.codomain().bottom());
        let rep = finite_morphism_check(&q);
        assert!(rep.frame_map && rep.surjective && !rep.injective);
        let bot = open_quotient(&f, f.bottom()).unwrap();
        assert_eq!(bot.codomain().len(), 1);
        assert!(finite_morphism_check(&bot).frame_map);
    }

    #[test]
    fn constant_top_is_rejected() {
        let f = chain3();
        let m = FiniteMorphism::from_fn(f.clone(), f.clone(), |_| f.top()).unwrap();
        let rep = finite_morphism_check(&m);
        assert!(!rep.frame_map);
        assert_eq!(rep.violation.as_deref(), Some("m(BOT)=TOP!=BOT"));
        assert!(matches!(rep.require_frame_map(), Err(FrameError::NotAFrameMap(_))));
    }

    #[test]
    fn omega_embedding_then_quotient_at_omega() {
        let inc = OmegaFrame.boolean_embedding();
        let q = inc.codomain().open_quotient(&PowElem::omega_point());
        let psi = compose(inc, q);
        assert_eq!(psi.apply(&OmegaElem::cofin([1, 2])), PowElem::omega_point());
        assert_eq!(psi.apply(&OmegaElem::cofin_nat([])), PowElem::empty());
        let sample = vec![
            OmegaElem::fin([]),
            OmegaElem::fin([0, 3]),
            OmegaElem::cofin([]),
            OmegaElem::cofin([3]),
            OmegaElem::cofin_nat([0]),
        ];
        assert!(morphism_check(&psi, &sample).frame_map);
        assert!(morphism_check(&OmegaInclusion::new(), &sample).injective);
    }
}
