use std::fmt;

use crate::frame::{Down, FiniteFrame, Frame};
use crate::rational::Q;
use crate::rl::{Rl, Step};

use super::DiscreteError;

/// An element of `ℚ^X`, coordinates indexed by the points of `X`.
pub type QVec = Vec<Q>;

/// `(1,3/2,0)`.
pub fn render_vec(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(|q| q.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn vec_add(f: &[Q], g: &[Q]) -> QVec {
    f.iter().zip(g).map(|(a, b)| *a + *b).collect()
}

pub fn vec_sub(f: &[Q], g: &[Q]) -> QVec {
    f.iter().zip(g).map(|(a, b)| *a - *b).collect()
}

pub fn vec_join(f: &[Q], g: &[Q]) -> QVec {
    f.iter().zip(g).map(|(a, b)| Q::max(*a, *b)).collect()
}

pub fn vec_meet(f: &[Q], g: &[Q]) -> QVec {
    f.iter().zip(g).map(|(a, b)| Q::min(*a, *b)).collect()
}

pub fn vec_scale(c: Q, f: &[Q]) -> QVec {
    f.iter().map(|a| c * *a).collect()
}

pub fn vec_add_const(f: &[Q], c: Q) -> QVec {
    f.iter().map(|a| *a + c).collect()
}

pub fn vec_pos(f: &[Q]) -> QVec {
    f.iter().map(|a| Q::max(*a, Q::ZERO)).collect()
}

pub fn vec_abs(f: &[Q]) -> QVec {
    f.iter().map(|a| a.abs()).collect()
}

pub fn vec_leq(f: &[Q], g: &[Q]) -> bool {
    f.iter().zip(g).all(|(a, b)| a <= b)
}

/// Bit mask of the coordinates where `f` is nonzero.
pub fn support(f: &[Q]) -> u64 {
    f.iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .fold(0, |m, (x, _)| m | 1 << x)
}

/// Finite discrete `X = {x1, …, xd}` with its open-set frame `2^X`.
#[derive(Clone)]
pub struct DiscreteSpace {
    dim: usize,
    frame: FiniteFrame,
}

impl fmt::Debug for DiscreteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiscreteSpace({})", self.dim)
    }
}

impl DiscreteSpace {
    /// `1 ≤ dim ≤ 6` keeps `2^X` within the enumerated frame limit.
    pub fn new(dim: usize) -> DiscreteSpace {
        assert!((1..=6).contains(&dim), "dimension {dim} outside 1..=6");
        let names = (1..=dim).map(|i| format!("x{i}"));
        DiscreteSpace {
            dim,
            frame: FiniteFrame::discrete(format!("2^{dim}"), names),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn frame(&self) -> &FiniteFrame {
        &self.frame
    }

    pub fn rl(&self) -> Rl<'_, FiniteFrame> {
        Rl::new(&self.frame)
    }

    pub fn full_mask(&self) -> u64 {
        (1u64 << self.dim) - 1
    }

    /// The open set with the given points; bit `x` is point `x`.
    pub fn open(&self, mask: u64) -> Down {
        debug_assert_eq!(mask & !self.full_mask(), 0);
        Down(mask)
    }

    pub fn check(&self, f: &[Q]) -> Result<(), DiscreteError> {
        if f.len() == self.dim {
            Ok(())
        } else {
            Err(DiscreteError::DimensionMismatch(format!(
                "vector {} in dimension {}",
                render_vec(f),
                self.dim
            )))
        }
    }

    /// `ĝ(r,∞) = {x : g(x) > r}`.
    pub fn hat(&self, g: &[Q]) -> Step<Down> {
        assert_eq!(g.len(), self.dim, "vector dimension");
        let ray = |r: Q| {
            let m = g
                .iter()
                .enumerate()
                .filter(|(_, v)| **v > r)
                .fold(0, |m, (x, _)| m | 1 << x);
            Down(m)
        };
        self.rl().from_rays(g.to_vec(), ray)
    }

    /// Inverse of [`Self::hat`]: `g(x) = sup{r : x ∈ f(r,∞)}`, read off the
    /// thresholds. `None` unless every point sits at exactly one level.
    pub fn unhat(&self, f: &Step<Down>) -> Option<QVec> {
        let rl = self.rl();
        let ts = f.thresholds();
        let below = ts.first().map_or(Q::ZERO, |t| *t - Q::ONE);
        if rl.ray(f, below).bits() != self.full_mask() {
            return None;
        }
        let above = ts.last().map_or(Q::ZERO, |t| *t);
        if rl.ray(f, above).bits() != 0 {
            return None;
        }
        let g: QVec = (0..self.dim)
            .map(|x| {
                ts.iter()
                    .copied()
                    .find(|&t| rl.ray(f, t).bits() & 1 << x == 0)
                    .unwrap_or(Q::ZERO)
            })
            .collect();
        (self.hat(&g) == *f).then_some(g)
    }

    /// All vectors with entries from `levels`, in lexicographic order.
    pub fn grid(&self, levels: &[Q]) -> Vec<QVec> {
        let total = levels.len().pow(self.dim as u32);
        (0..total)
            .map(|code| {
                let mut c = code;
                let mut v = vec![Q::ZERO; self.dim];
                for slot in v.iter_mut().rev() {
                    *slot = levels[c % levels.len()];
                    c /= levels.len();
                }
                v
            })
            .collect()
    }

    /// Every open set is `coz ĝ` for its indicator `g`.
    pub fn cozero_dense(&self) -> bool {
        let rl = self.rl();
        (0..=self.full_mask()).all(|m| {
            let g: QVec = (0..self.dim)
                .map(|x| if m >> x & 1 == 1 { Q::ONE } else { Q::ZERO })
                .collect();
            rl.coz(&self.hat(&g)) == self.open(m) && self.frame.contains(&self.open(m))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn hat_of_zero_is_zero() {
        let sp = DiscreteSpace::new(2);
        let h = sp.hat(&[Q::ZERO, Q::ZERO]);
        assert_eq!(h, sp.rl().zero());
        assert_eq!(sp.rl().ray(&h, q(-1, 2)), sp.frame().top());
        assert_eq!(sp.rl().ray(&h, Q::ZERO), sp.frame().bottom());
    }

    #[test]
    fn hat_rays_are_strict_superlevel_sets() {
        let sp = DiscreteSpace::new(2);
        let h = sp.hat(&[Q::ONE, q(3, 1)]);
        let rl = sp.rl();
        assert_eq!(rl.ray(&h, q(2, 1)), sp.open(0b10));
        assert_eq!(rl.ray(&h, q(1, 2)), sp.frame().top());
        assert_eq!(rl.ray(&h, Q::ONE), sp.open(0b10));
        assert_eq!(rl.ray(&h, q(3, 1)), sp.frame().bottom());
        assert_eq!(sp.unhat(&h), Some(vec![Q::ONE, q(3, 1)]));
    }

    #[test]
    fn every_step_over_2x_is_a_hat() {
        let sp = DiscreteSpace::new(2);
        let rl = sp.rl();
        let g = rl
            .validate(
                vec![Q::ZERO, Q::ONE],
                vec![sp.frame().top(), sp.open(0b01), sp.frame().bottom()],
            )
            .unwrap();
        assert_eq!(sp.unhat(&g), Some(vec![Q::ONE, Q::ZERO]));
    }

    #[test]
    fn grid_and_density() {
        let sp = DiscreteSpace::new(3);
        let g = sp.grid(&[Q::ZERO, Q::ONE]);
        assert_eq!(g.len(), 8);
        assert_eq!(g[1], vec![Q::ZERO, Q::ZERO, Q::ONE]);
        assert!(sp.cozero_dense());
        assert_eq!(support(&[Q::ZERO, Q::ONE, q(-1, 1)]), 0b110);
        assert_eq!(render_vec(&[Q::ONE, q(3, 2), Q::ZERO]), "(1,3/2,0)");
    }
}
