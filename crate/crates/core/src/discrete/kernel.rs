use std::fmt;

use crate::frame::{Down, FiniteFrame, Frame};
use crate::pointwise::check_pointwise_sup;
use crate::rational::Q;
use crate::rl::ExplicitFamily;

use super::vector::{
    render_vec, support, vec_abs, vec_add_const, vec_join, vec_meet, vec_pos, vec_scale, vec_sub, DiscreteSpace, QVec,
};
use super::DiscreteError;

/// `K_Z = {g : g(x) = 0 for x ∈ Z}`, a convex ℓ-subgroup of `ℚ^X`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportSubgroup {
    pub dim: usize,
    /// Bit mask of `Z`.
    pub zero_set: u64,
}

impl fmt::Debug for SupportSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = (0..self.dim)
            .filter(|x| self.zero_set >> x & 1 == 1)
            .map(|x| format!("x{}", x + 1))
            .collect();
        write!(f, "K_{{{}}}", pts.join(","))
    }
}

impl SupportSubgroup {
    pub fn new(dim: usize, zero_set: u64) -> SupportSubgroup {
        assert_eq!(zero_set >> dim, 0, "zero set outside X");
        SupportSubgroup { dim, zero_set }
    }

    /// `K_∅ = G`.
    pub fn whole(dim: usize) -> SupportSubgroup {
        SupportSubgroup::new(dim, 0)
    }

    /// `K_X = {0}`.
    pub fn trivial(dim: usize) -> SupportSubgroup {
        SupportSubgroup::new(dim, (1 << dim) - 1)
    }

    pub fn contains(&self, g: &[Q]) -> bool {
        support(g) & self.zero_set == 0
    }

    /// `{e_x : x ∉ Z}`.
    pub fn generators(&self) -> Vec<QVec> {
        (0..self.dim)
            .filter(|x| self.zero_set >> x & 1 == 0)
            .map(|x| unit_vec(self.dim, x))
            .collect()
    }

    /// Inclusion tested on generators only.
    pub fn is_subgroup_of(&self, o: &SupportSubgroup) -> bool {
        self.generators().iter().all(|g| o.contains(g))
    }

    /// The open set `X ∖ Z` corresponding to `K_Z`.
    pub fn open(&self) -> Down {
        Down(!self.zero_set & ((1 << self.dim) - 1))
    }
}

fn unit_vec(dim: usize, x: usize) -> QVec {
    let mut v = vec![Q::ZERO; dim];
    v[x] = Q::ONE;
    v
}

/// How a subgroup of `ℚ^X` is presented.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupSpec {
    Support(SupportSubgroup),
    /// `ℤ^X`, never convex.
    IntegerLattice {
        dim: usize,
    },
    /// The rational span of the given vectors.
    Span {
        dim: usize,
        gens: Vec<QVec>,
    },
}

impl SubgroupSpec {
    pub fn dim(&self) -> usize {
        match self {
            SubgroupSpec::Support(k) => k.dim,
            SubgroupSpec::IntegerLattice { dim } | SubgroupSpec::Span { dim, .. } => *dim,
        }
    }

    /// The support subgroup presented, or `NotConvex` with a violation.
    pub fn resolve(&self) -> Result<SupportSubgroup, DiscreteError> {
        match self {
            SubgroupSpec::Support(k) => Ok(*k),
            SubgroupSpec::IntegerLattice { dim } => {
                let v = unit_vec(*dim, 0);
                let u = vec_scale(Q::new(1, 2), &v);
                Err(DiscreteError::NotConvex(format!(
                    "0 <= {} <= {} with {} outside the lattice",
                    render_vec(&u),
                    render_vec(&v),
                    render_vec(&u)
                )))
            }
            SubgroupSpec::Span { dim, gens } => resolve_span(*dim, gens),
        }
    }
}

/// A span is a convex ℓ-subgroup iff it contains `e_x` for every `x` in the
/// union of supports. Otherwise take such an `x` and a generator `v` with
/// `v(x) ≠ 0`: either `|v|` leaves the span, or `0 ≤ |v(x)|·e_x ≤ |v|`
/// breaks convexity.
fn resolve_span(dim: usize, gens: &[QVec]) -> Result<SupportSubgroup, DiscreteError> {
    if let Some(g) = gens.iter().find(|g| g.len() != dim) {
        return Err(DiscreteError::DimensionMismatch(format!(
            "vector {} in dimension {dim}",
            render_vec(g)
        )));
    }
    let s = gens.iter().fold(0u64, |m, g| m | support(g));
    let base = rank(gens);
    let in_span = |w: &QVec| {
        let mut all = gens.to_vec();
        all.push(w.clone());
        rank(&all) == base
    };
    let missing = (0..dim).find(|&x| s >> x & 1 == 1 && !in_span(&unit_vec(dim, x)));
    let Some(x) = missing else {
        return Ok(SupportSubgroup::new(dim, !s & ((1 << dim) - 1)));
    };
    let v = gens.iter().find(|g| !g[x].is_zero()).expect("x is in some support");
    let av = vec_abs(v);
    if !in_span(&av) {
        return Err(DiscreteError::NotConvex(format!(
            "|{}| = {} outside the span",
            render_vec(v),
            render_vec(&av)
        )));
    }
    let u = vec_scale(v[x].abs(), &unit_vec(dim, x));
    Err(DiscreteError::NotConvex(format!(
        "0 <= {} <= {} with {} outside the span",
        render_vec(&u),
        render_vec(&av),
        render_vec(&u)
    )))
}

/// Rank over ℚ by Gaussian elimination.
fn rank(rows: &[QVec]) -> usize {
    let mut m: Vec<QVec> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c] / m[r][c];
                let pivot = m[r].clone();
                for (a, b) in m[i].iter_mut().zip(&pivot) {
                    *a -= factor * *b;
                }
            }
        }
        r += 1;
    }
    r
}

/// `[S]`: the smallest support kernel containing `S`, with `Z` the common
/// zero set.
pub fn kernel_generated(dim: usize, s: &[QVec]) -> SupportSubgroup {
    let supp = s.iter().fold(0u64, |m, g| m | support(g));
    SupportSubgroup::new(dim, !supp & ((1 << dim) - 1))
}

/// Levels for `G⁺` test vectors.
pub fn pos_levels() -> [Q; 4] {
    [Q::ZERO, Q::new(1, 2), Q::ONE, Q::int(2)]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelReport {
    pub kernel: SupportSubgroup,
    pub is_w_kernel: bool,
    /// Number of `(f, g)` and `g` instances checked.
    pub checked: usize,
    pub violation: Option<String>,
}

/// Checks the archimedean-quotient condition (`(nf − g)⁺ ∈ K` for all `n`
/// forces `f ∈ K`) and the unit condition (`g ∧ 1 ∈ K` forces `g ∈ K`) for
/// `f, g` on the positive grid. For a pair, `nf ≤ g` at every point of `Z`
/// where `f > 0` fails once `n > max g / min⁺ f`, so testing `n` up to that
/// bound is exhaustive.
pub fn is_w_kernel(spec: &SubgroupSpec) -> Result<KernelReport, DiscreteError> {
    let k = spec.resolve()?;
    let sp = DiscreteSpace::new(k.dim);
    let grid = sp.grid(&pos_levels());
    let mut checked = 0;
    let mut violation = None;
    let one = vec![Q::ONE; k.dim];
    'outer: for f in &grid {
        let min_pos = f.iter().copied().filter(|q| q.is_positive()).min();
        for g in &grid {
            checked += 1;
            let Some(mp) = min_pos else { continue };
            let max_g = g.iter().copied().max().unwrap_or(Q::ZERO);
            let n_max = (max_g / mp).floor() + 1;
            let premise = (1..=n_max).all(|n| k.contains(&vec_pos(&vec_sub(&vec_scale(Q::from(n as i64), f), g))));
            if premise && !k.contains(f) {
                violation = Some(format!(
                    "archimedean: (nf-g)+ in K for n<={n_max} but f not in K; f={} g={}",
                    render_vec(f),
                    render_vec(g)
                ));
                break 'outer;
            }
        }
    }
    if violation.is_none() {
        for g in &grid {
            checked += 1;
            if k.contains(&vec_meet(g, &one)) && !k.contains(g) {
                violation = Some(format!("unit: g&1 in K but g not in K; g={}", render_vec(g)));
                break;
            }
        }
    }
    Ok(KernelReport {
        kernel: k,
        is_w_kernel: violation.is_none(),
        checked,
        violation,
    })
}

/// Bounded form of `h ∈ [g]` for bounded `G`: for every `n ≤ n_max` some
/// `m ≤ m_max` has `(n|h| − 1)⁺ ≤ m·g`. The least `m` is computed directly.
pub fn cor4_member(g: &[Q], h: &[Q], n_max: u32, m_max: u32) -> bool {
    (1..=n_max).all(|n| {
        let lhs = vec_pos(&vec_add_const(&vec_scale(Q::from(n as i64), &vec_abs(h)), -Q::ONE));
        lhs.iter().zip(g).all(|(l, gx)| {
            if gx.is_zero() {
                l.is_zero()
            } else {
                (*l / *gx).ceil() <= m_max as i128
            }
        })
    })
}

/// Compares [`cor4_member`] (`n ≤ 20`, `m ≤ 200`) with `h ∈ [g]` for `g` on
/// the positive grid and `h` with entries in `{0, ±1/2, ±1, ±2}`. Returns the
/// number of pairs and the first disagreement.
pub fn cor4_check(dim: usize) -> (usize, Option<(QVec, QVec)>) {
    let sp = DiscreteSpace::new(dim);
    let signed: Vec<Q> = pos_levels().iter().flat_map(|q| [*q, -*q]).skip(1).collect();
    let hs = sp.grid(&signed);
    let mut n = 0;
    for g in sp.grid(&pos_levels()) {
        let kg = kernel_generated(dim, std::slice::from_ref(&g));
        for h in &hs {
            n += 1;
            if cor4_member(&g, h, 20, 200) != kg.contains(h) {
                return (n, Some((g, h.clone())));
            }
        }
    }
    (n, None)
}

/// The frame of W-kernels of `ℚ^X` with its isomorphism to `2^X`.
#[derive(Clone, Debug)]
pub struct MaddenFrame {
    pub space: DiscreteSpace,
    pub kernels: Vec<SupportSubgroup>,
    /// `K_Z ↦ X ∖ Z`, aligned with `kernels`.
    pub iso: Vec<Down>,
    pub checks: Vec<(String, bool)>,
}

impl MaddenFrame {
    pub fn valid(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn frame(&self) -> &FiniteFrame {
        self.space.frame()
    }
}

/// Enumerates the support kernels, orders them by inclusion and checks that
/// `K_Z ↦ X ∖ Z` is a lattice isomorphism onto `2^X`: bijective, order
/// preserving and reflecting, with `K ∩ K'` to meets and `[K ∪ K']` to joins.
pub fn madden_frame(dim: usize) -> MaddenFrame {
    let space = DiscreteSpace::new(dim);
    let fr = space.frame();
    let kernels: Vec<SupportSubgroup> = (0..=space.full_mask()).map(|z| SupportSubgroup::new(dim, z)).collect();
    let iso: Vec<Down> = kernels.iter().map(|k| k.open()).collect();

    let mut sorted = iso.clone();
    sorted.sort();
    sorted.dedup();
    let bijective = sorted.len() == fr.len() && iso.iter().all(|d| fr.contains(d));

    let mut order = true;
    let mut meets = true;
    let mut joins = true;
    for (i, k) in kernels.iter().enumerate() {
        for (j, l) in kernels.iter().enumerate() {
            order &= k.is_subgroup_of(l) == fr.leq(&iso[i], &iso[j]);
            let cap = SupportSubgroup::new(dim, k.zero_set | l.zero_set);
            meets &= cap.open() == fr.meet(&iso[i], &iso[j]);
            let mut gens = k.generators();
            gens.extend(l.generators());
            joins &= kernel_generated(dim, &gens).open() == fr.join(&iso[i], &iso[j]);
        }
    }
    let checks = vec![
        ("bijective".to_string(), bijective),
        ("order-iso".to_string(), order),
        ("meet=intersection".to_string(), meets),
        ("join=generated-by-union".to_string(), joins),
        ("boolean".to_string(), fr.classify().boolean),
    ];
    MaddenFrame {
        space,
        kernels,
        iso,
        checks,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    /// `true` means closed up to the search bound.
    pub closed: bool,
    pub families_checked: usize,
    /// A family inside `K⁺` whose pointwise join leaves `K`.
    pub witness: Option<(Vec<QVec>, QVec)>,
}

/// Searches families `K₀ ⊆ K⁺` of size at most `max_size` drawn from the
/// positive grid. Each family's coordinatewise join is confirmed to be its
/// pointwise supremum through the frame-level check before testing
/// membership.
pub fn is_pointwise_closed(spec: &SubgroupSpec, max_size: usize) -> Result<ClosureReport, DiscreteError> {
    let k = spec.resolve()?;
    let sp = DiscreteSpace::new(k.dim);
    let rl = sp.rl();
    let pool: Vec<QVec> = sp.grid(&pos_levels()).into_iter().filter(|g| k.contains(g)).collect();
    let mut checked = 0;
    let mut witness = None;
    let mut visit = |members: &[&QVec]| -> Result<bool, DiscreteError> {
        checked += 1;
        let g = members[1..].iter().fold(members[0].clone(), |a, b| vec_join(&a, b));
        let hats = ExplicitFamily::new(members.iter().map(|m| sp.hat(m)).collect());
        let verdict = check_pointwise_sup(rl, &sp.hat(&g), &hats)?;
        assert!(verdict.is_pointwise, "coordinatewise join is not pointwise");
        if k.contains(&g) {
            return Ok(true);
        }
        witness = Some((members.iter().map(|m| (*m).clone()).collect(), g));
        Ok(false)
    };
    multisets(&pool, max_size, &mut Vec::new(), 0, &mut visit)?;
    Ok(ClosureReport {
        closed: witness.is_none(),
        families_checked: checked,
        witness,
    })
}

/// Visits every nonempty multiset of size at most `max` from `pool` as a
/// nondecreasing index sequence; stops when `visit` returns `false`.
fn multisets<'a, T>(
    pool: &'a [T],
    max: usize,
    cur: &mut Vec<&'a T>,
    from: usize,
    visit: &mut impl FnMut(&[&'a T]) -> Result<bool, DiscreteError>,
) -> Result<bool, DiscreteError> {
    for i in from..pool.len() {
        cur.push(&pool[i]);
        let go = visit(cur)? && (cur.len() == max || multisets(pool, max, cur, i, visit)?);
        cur.pop();
        if !go {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `f₀ = ⋁• F` iff `[(k − r)⁺ : k ∈ F] = [(f₀ − r)⁺]` for every `r` on the
/// grid of values and midpoints.
pub fn prop1_holds(dim: usize, f0: &[Q], fam: &[QVec]) -> bool {
    let mut ts: Vec<Q> = f0.iter().chain(fam.iter().flatten()).copied().collect();
    ts.sort();
    ts.dedup();
    crate::rl::cell_reps(&ts).into_iter().all(|r| {
        let lhs: Vec<QVec> = fam.iter().map(|k| vec_pos(&vec_add_const(k, -r))).collect();
        let rhs = vec_pos(&vec_add_const(f0, -r));
        kernel_generated(dim, &lhs) == kernel_generated(dim, &[rhs])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn v(xs: &[i64]) -> QVec {
        xs.iter().map(|&x| Q::from(x)).collect()
    }

    #[test]
    fn generated_kernels() {
        assert_eq!(kernel_generated(2, &[v(&[0, 0])]), SupportSubgroup::trivial(2));
        let k = kernel_generated(2, &[v(&[1, 0])]);
        assert_eq!(k.zero_set, 0b10);
        assert!(k.contains(&[q(7, 3), Q::ZERO]));
        assert!(!k.contains(&[Q::ZERO, Q::ONE]));
        assert_eq!(format!("{k:?}"), "K_{x2}");
    }

    #[test]
    fn support_subgroups_are_w_kernels() {
        let r = is_w_kernel(&SubgroupSpec::Support(SupportSubgroup::new(2, 0b10))).unwrap();
        assert!(r.is_w_kernel, "{r:?}");
        assert_eq!(r.checked, 16 * 16 + 16);
    }

    #[test]
    fn integer_lattice_is_not_convex() {
        let e = is_w_kernel(&SubgroupSpec::IntegerLattice { dim: 2 }).unwrap_err();
        assert_eq!(e.kind(), "NotConvex");
        assert!(e.to_string().contains("0 <= (1/2,0) <= (1,0)"), "{e}");
    }

    #[test]
    fn spans() {
        let ok = SubgroupSpec::Span {
            dim: 3,
            gens: vec![v(&[1, 1, 0]), v(&[0, 1, 0])],
        };
        assert_eq!(ok.resolve().unwrap(), SupportSubgroup::new(3, 0b100));
        let diag = SubgroupSpec::Span {
            dim: 2,
            gens: vec![v(&[1, 1])],
        };
        assert!(diag.resolve().unwrap_err().to_string().contains("0 <= (1,0) <= (1,1)"));
        let anti = SubgroupSpec::Span {
            dim: 2,
            gens: vec![v(&[1, -1])],
        };
        assert!(anti.resolve().unwrap_err().to_string().contains("outside the span"));
    }

    #[test]
    fn cor4_agrees_with_generation() {
        let (n, bad) = cor4_check(2);
        assert_eq!(bad, None);
        assert_eq!(n, 16 * 49);
        assert!(!cor4_member(&v(&[1, 0]), &v(&[0, 1]), 20, 200));
        assert!(cor4_member(&v(&[1, 0]), &v(&[2, 0]), 20, 200));
    }

    #[test]
    fn madden_frames() {
        let m1 = madden_frame(1);
        assert_eq!(m1.frame().len(), 2);
        assert!(m1.valid());
        let m3 = madden_frame(3);
        assert_eq!(m3.kernels.len(), 8);
        assert!(m3.valid(), "{:?}", m3.checks);
    }

    #[test]
    fn closure_search() {
        let whole = SubgroupSpec::Support(SupportSubgroup::whole(2));
        let r = is_pointwise_closed(&whole, 2).unwrap();
        assert!(r.closed);
        assert_eq!(r.families_checked, 16 + 16 * 17 / 2);
        assert!(is_pointwise_closed(&SubgroupSpec::IntegerLattice { dim: 1 }, 2).is_err());
    }

    #[test]
    fn prop1_instances() {
        assert!(prop1_holds(2, &v(&[1, 2]), &[v(&[1, 0]), v(&[0, 2])]));
        assert!(!prop1_holds(2, &v(&[1, 3]), &[v(&[1, 0]), v(&[0, 2])]));
    }
}
