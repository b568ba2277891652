use std::fmt;

use crate::rational::Q;

use super::PwError;

/// `Z = ↓(F + cone D)` in `ℚ^X`: everything below some generator plus a
/// nonnegative combination of recession directions. With no directions this
/// is the finitely generated downset `↓F`.
#[derive(Clone, PartialEq, Eq)]
pub struct DownsetSpec {
    pub dim: usize,
    pub generators: Vec<Vec<Q>>,
    /// Each direction is `≥ 0`.
    pub directions: Vec<Vec<Q>>,
}

impl fmt::Debug for DownsetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &Vec<Q>| {
            let parts: Vec<String> = v.iter().map(|q| q.to_string()).collect();
            format!("({})", parts.join(","))
        };
        let gens: Vec<String> = self.generators.iter().map(show).collect();
        let dirs: Vec<String> = self.directions.iter().map(show).collect();
        write!(f, "gen {} dir {}", gens.join(" "), dirs.join(" "))
    }
}

impl DownsetSpec {
    pub fn new(dim: usize, generators: Vec<Vec<Q>>, directions: Vec<Vec<Q>>) -> Result<DownsetSpec, PwError> {
        for v in generators.iter().chain(&directions) {
            if v.len() != dim {
                return Err(PwError::DimensionMismatch(format!(
                    "vector of length {} in dimension {dim}",
                    v.len()
                )));
            }
        }
        if let Some(d) = directions.iter().find(|d| d.iter().any(|q| q.is_negative())) {
            return Err(PwError::DimensionMismatch(format!(
                "direction {d:?} has a negative entry"
            )));
        }
        Ok(DownsetSpec {
            dim,
            generators,
            directions,
        })
    }

    pub fn bounded(dim: usize, generators: Vec<Vec<Q>>) -> Result<DownsetSpec, PwError> {
        DownsetSpec::new(dim, generators, Vec::new())
    }

    /// `↓{g₀ ∧ n : n ≥ 1}`. The truncates stop changing once `n ≥ max g₀`.
    pub fn from_truncates(g0: &[Q]) -> DownsetSpec {
        let top = g0.iter().copied().max().unwrap_or(Q::ZERO).ceil().max(1);
        let generators = (1..=top)
            .map(|n| g0.iter().map(|&x| x.min(Q::int(n as i64))).collect())
            .collect();
        DownsetSpec {
            dim: g0.len(),
            generators,
            directions: Vec::new(),
        }
    }

    /// Exact membership: `y ≤ z + Σ λ_k d_k` for some generator `z` and
    /// `λ ≥ 0`. With nonnegative directions this holds iff every coordinate
    /// where `y` exceeds `z` is raised by some direction.
    pub fn contains(&self, y: &[Q]) -> bool {
        self.generators
            .iter()
            .any(|z| (0..self.dim).all(|x| y[x] <= z[x] || self.directions.iter().any(|d| d[x].is_positive())))
    }

    /// Membership using a single multiplier from `{0, 1, 2, 4, …, 2^20}` on
    /// the sum of all directions; an underestimate of [`Self::contains`].
    pub fn contains_bounded(&self, y: &[Q]) -> bool {
        let sum: Vec<Q> = (0..self.dim)
            .map(|x| self.directions.iter().map(|d| d[x]).sum())
            .collect();
        std::iter::once(Q::ZERO)
            .chain((0..=20).map(|e| Q::int(1i64 << e)))
            .any(|lam| {
                self.generators
                    .iter()
                    .any(|z| (0..self.dim).all(|x| y[x] <= z[x] + lam * sum[x]))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mobility {
    Mobile,
    /// `Z + g ⊆ Z` for this `g > 0`.
    Immobile {
        g: Vec<Q>,
    },
}

/// `Z` is immobile iff it is a union of cosets of a nontrivial subgroup
/// `ℚ^S`. For `S ≠ ∅`, `Z + ℚ^S ⊆ Z` holds iff every coordinate in `S` is
/// raised by some direction: a generator `z` has `z + t·e_x ∈ Z` for all `t`
/// only through the directions, since `↓F` alone is bounded above. The first
/// such coordinate gives the witness `g = e_x`; the witness is re-verified
/// on every generator.
pub fn is_mobile(z: &DownsetSpec) -> Result<Mobility, PwError> {
    if z.generators.is_empty() {
        return Err(PwError::EmptyDownset);
    }
    let covered: Vec<usize> = (0..z.dim)
        .filter(|&x| z.directions.iter().any(|d| d[x].is_positive()))
        .collect();
    let Some(&x) = covered.first() else {
        return Ok(Mobility::Mobile);
    };
    let mut g = vec![Q::ZERO; z.dim];
    g[x] = Q::ONE;
    let shifts_in = z.generators.iter().all(|p| {
        let moved: Vec<Q> = p.iter().zip(&g).map(|(a, b)| *a + *b).collect();
        z.contains(&moved)
    });
    assert!(shifts_in, "coset witness failed to verify");
    Ok(Mobility::Immobile { g })
}

/// Direct simulation: searches `g ∈ {0, 1/2, 1, 2}^X ∖ {0}` with every
/// `z_i + g` in `Z`, using bounded-multiplier membership.
pub fn mobility_by_simulation(z: &DownsetSpec) -> Option<Vec<Q>> {
    let steps = [Q::ZERO, Q::new(1, 2), Q::ONE, Q::int(2)];
    let total = steps.len().pow(z.dim as u32);
    (1..total).find_map(|code| {
        let mut c = code;
        let g: Vec<Q> = (0..z.dim)
            .map(|_| {
                let v = steps[c % steps.len()];
                c /= steps.len();
                v
            })
            .collect();
        let ok = z.generators.iter().all(|p| {
            let moved: Vec<Q> = p.iter().zip(&g).map(|(a, b)| *a + *b).collect();
            z.contains_bounded(&moved)
        });
        ok.then_some(g)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn single_point_downset_is_mobile() {
        let z = DownsetSpec::bounded(1, vec![vec![Q::ZERO]]).unwrap();
        assert_eq!(is_mobile(&z).unwrap(), Mobility::Mobile);
        assert_eq!(mobility_by_simulation(&z), None);
    }

    #[test]
    fn half_plane_is_immobile() {
        // {(x,y) : x ≤ 0}
        let z = DownsetSpec::new(2, vec![vec![Q::ZERO, Q::ZERO]], vec![vec![Q::ZERO, Q::ONE]]).unwrap();
        assert_eq!(
            is_mobile(&z).unwrap(),
            Mobility::Immobile {
                g: vec![Q::ZERO, Q::ONE]
            }
        );
        assert!(mobility_by_simulation(&z).is_some());
        assert!(z.contains(&[q(-1, 1), q(100, 1)]));
        assert!(!z.contains(&[q(1, 2), Q::ZERO]));
    }

    #[test]
    fn truncates_generate_a_mobile_downset() {
        let z = DownsetSpec::from_truncates(&[q(5, 2), q(-1, 1), Q::ZERO]);
        assert_eq!(z.generators.len(), 3);
        assert_eq!(is_mobile(&z).unwrap(), Mobility::Mobile);
        assert_eq!(mobility_by_simulation(&z), None);
    }

    #[test]
    fn bad_inputs() {
        assert_eq!(
            is_mobile(&DownsetSpec::bounded(2, vec![]).unwrap()),
            Err(PwError::EmptyDownset)
        );
        assert!(DownsetSpec::bounded(2, vec![vec![Q::ZERO]]).is_err());
        assert!(DownsetSpec::new(1, vec![vec![Q::ZERO]], vec![vec![q(-1, 1)]]).is_err());
    }
}
