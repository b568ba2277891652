use std::fmt;

use crate::frame::Frame;
use crate::rational::Q;

use super::step::{cell_reps, Interval, Rl, Step};
use super::RlError;

/// Default cap on boxes × ray representatives evaluated by [`lift`].
pub const DEFAULT_MAX_GRID: usize = 10_000;

/// A piecewise-linear rational function of `n` variables.
#[derive(Clone, PartialEq, Eq)]
pub enum PlTerm {
    Var(usize),
    Const(Q),
    Add(Box<PlTerm>, Box<PlTerm>),
    Neg(Box<PlTerm>),
    Scale(Q, Box<PlTerm>),
    Max(Box<PlTerm>, Box<PlTerm>),
    Min(Box<PlTerm>, Box<PlTerm>),
}

impl PlTerm {
    pub fn var(i: usize) -> PlTerm {
        PlTerm::Var(i)
    }

    pub fn constant(c: Q) -> PlTerm {
        PlTerm::Const(c)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, o: PlTerm) -> PlTerm {
        PlTerm::Add(Box::new(self), Box::new(o))
    }

    pub fn sub(self, o: PlTerm) -> PlTerm {
        self.add(o.neg())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> PlTerm {
        PlTerm::Neg(Box::new(self))
    }

    pub fn scale(self, q: Q) -> PlTerm {
        PlTerm::Scale(q, Box::new(self))
    }

    pub fn max(self, o: PlTerm) -> PlTerm {
        PlTerm::Max(Box::new(self), Box::new(o))
    }

    pub fn min(self, o: PlTerm) -> PlTerm {
        PlTerm::Min(Box::new(self), Box::new(o))
    }

    pub fn abs(self) -> PlTerm {
        self.clone().max(self.neg())
    }

    /// Number of variables referenced: one more than the largest index.
    pub fn arity(&self) -> usize {
        match self {
            PlTerm::Var(i) => i + 1,
            PlTerm::Const(_) => 0,
            PlTerm::Neg(a) | PlTerm::Scale(_, a) => a.arity(),
            PlTerm::Add(a, b) | PlTerm::Max(a, b) | PlTerm::Min(a, b) => a.arity().max(b.arity()),
        }
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        match self {
            PlTerm::Var(i) => x[*i],
            PlTerm::Const(c) => *c,
            PlTerm::Add(a, b) => a.eval(x) + b.eval(x),
            PlTerm::Neg(a) => -a.eval(x),
            PlTerm::Scale(q, a) => *q * a.eval(x),
            PlTerm::Max(a, b) => a.eval(x).max(b.eval(x)),
            PlTerm::Min(a, b) => a.eval(x).min(b.eval(x)),
        }
    }

    /// Interval extension over the closed box `∏ [lo_i, hi_i]`. Every subterm's
    /// interval lies within `Lε` of its value at any point of a box of radius ε.
    pub fn interval(&self, b: &[(Q, Q)]) -> (Q, Q) {
        match self {
            PlTerm::Var(i) => b[*i],
            PlTerm::Const(c) => (*c, *c),
            PlTerm::Add(x, y) => {
                let (a, c) = (x.interval(b), y.interval(b));
                (a.0 + c.0, a.1 + c.1)
            }
            PlTerm::Neg(x) => {
                let (lo, hi) = x.interval(b);
                (-hi, -lo)
            }
            PlTerm::Scale(q, x) => {
                let (lo, hi) = x.interval(b);
                if q.is_negative() {
                    (*q * hi, *q * lo)
                } else {
                    (*q * lo, *q * hi)
                }
            }
            PlTerm::Max(x, y) => {
                let (a, c) = (x.interval(b), y.interval(b));
                (a.0.max(c.0), a.1.max(c.1))
            }
            PlTerm::Min(x, y) => {
                let (a, c) = (x.interval(b), y.interval(b));
                (a.0.min(c.0), a.1.min(c.1))
            }
        }
    }

    /// Lipschitz constant for the sup norm.
    pub fn lipschitz(&self) -> Q {
        match self {
            PlTerm::Var(_) => Q::ONE,
            PlTerm::Const(_) => Q::ZERO,
            PlTerm::Add(a, b) => a.lipschitz() + b.lipschitz(),
            PlTerm::Neg(a) => a.lipschitz(),
            PlTerm::Scale(q, a) => q.abs() * a.lipschitz(),
            PlTerm::Max(a, b) | PlTerm::Min(a, b) => a.lipschitz().max(b.lipschitz()),
        }
    }
}

impl fmt::Debug for PlTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlTerm::Var(i) => write!(f, "x{i}"),
            PlTerm::Const(c) => write!(f, "{c}"),
            PlTerm::Add(a, b) => write!(f, "({a:?} + {b:?})"),
            PlTerm::Neg(a) => write!(f, "-{a:?}"),
            PlTerm::Scale(q, a) => write!(f, "{q}*{a:?}"),
            PlTerm::Max(a, b) => write!(f, "max({a:?}, {b:?})"),
            PlTerm::Min(a, b) => write!(f, "min({a:?}, {b:?})"),
        }
    }
}

/// The canonical lifting `w(f⃗)(r,∞) = ⋁ { ⋀_i f_i(U_i) : w(∏U_i) ⊆ (r,∞) }`,
/// evaluated over a finite family of boxes.
///
/// Each coordinate is cut into open intervals of radius ε around its
/// thresholds and the gaps between them; boxes are products of these. A box
/// is admitted when the interval extension of `w` on its closure stays above
/// `r`. Only boxes around threshold tuples carry non-⊥ meets, and ε is chosen
/// so that such a box is admitted exactly when `w > r` at its centre, so the
/// finite join equals the full one.
pub fn lift<F: Frame>(
    rl: Rl<'_, F>,
    w: &PlTerm,
    fs: &[&Step<F::Elem>],
    max_grid: usize,
) -> Result<Step<F::Elem>, RlError> {
    let fr = rl.frame();
    if w.arity() > fs.len() {
        return Err(RlError::Malformed(format!(
            "term uses {} variables but {} elements were given",
            w.arity(),
            fs.len()
        )));
    }
    let grids: Vec<&[Q]> = fs.iter().map(|f| f.thresholds()).collect();
    let tuples = product(&grids);
    let mut cands: Vec<Q> = tuples.iter().map(|x| w.eval(x)).collect();
    cands.sort();
    cands.dedup();
    let reps = cell_reps(&cands);

    let boxes_per_rep: usize = grids.iter().map(|g| (2 * g.len()).saturating_sub(1).max(1)).product();
    let needed = boxes_per_rep.saturating_mul(reps.len());
    if needed > max_grid {
        return Err(RlError::GridOverflow { needed, cap: max_grid });
    }

    let min_gap = grids.iter().flat_map(|g| g.windows(2).map(|p| p[1] - p[0])).min();
    let lip = w.lipschitz();

    let ray = |r: Q| -> F::Elem {
        // Smallest positive margin w(x) − r over threshold tuples.
        let d_min = tuples.iter().map(|x| w.eval(x) - r).filter(|d| d.is_positive()).min();
        let Some(d_min) = d_min else {
            return fr.bottom();
        };
        let mut eps = d_min / (Q::int(2) * lip + Q::ONE) / Q::int(2);
        if let Some(g) = min_gap {
            eps = eps.min(g / Q::int(4));
        }
        let coords: Vec<Vec<Cell>> = grids.iter().map(|g| elementary_intervals(g, eps)).collect();
        let mut acc = fr.bottom();
        for_each_box(&coords, &mut |bx| {
            let closure: Vec<(Q, Q)> = bx.iter().map(|(_, c)| *c).collect();
            if w.interval(&closure).0 <= r {
                return;
            }
            let mut m = fr.top();
            for (f, (iv, _)) in fs.iter().zip(bx) {
                m = fr.meet(&m, &rl.eval_open(f, std::slice::from_ref(iv)));
                if fr.is_bottom(&m) {
                    return;
                }
            }
            acc = fr.join(&acc, &m);
        });
        acc
    };
    // The value on each cell of the candidate grid is read at its representative.
    let values = reps.iter().map(|&r| ray(r)).collect();
    Ok(rl.canonicalize(Step::from_parts(cands, values)))
}

/// An elementary interval with the range of values it allows.
type Cell = (Interval, (Q, Q));

/// Intervals of radius `eps` around each threshold and the open gaps between
/// them, each with the closed hull used for interval evaluation.

fn elementary_intervals(ts: &[Q], eps: Q) -> Vec<Cell> {
    let mut out = Vec::with_capacity(2 * ts.len());
    for (i, &t) in ts.iter().enumerate() {
        out.push((Interval::bounded(t - eps, t + eps), (t - eps, t + eps)));
        if let Some(&next) = ts.get(i + 1) {
            let (lo, hi) = (t + eps, next - eps);
            out.push((Interval::bounded(lo, hi), (lo, hi)));
        }
    }
    if ts.is_empty() {
        // Only for the trivial frame; any bounded box will do.
        out.push((Interval::bounded(-Q::ONE, Q::ONE), (-Q::ONE, Q::ONE)));
    }
    out
}

fn for_each_box<'a>(coords: &'a [Vec<Cell>], visit: &mut dyn FnMut(&[&'a Cell])) {
    fn go<'a>(coords: &'a [Vec<Cell>], cur: &mut Vec<&'a Cell>, visit: &mut dyn FnMut(&[&'a Cell])) {
        if cur.len() == coords.len() {
            visit(cur);
            return;
        }
        for iv in &coords[cur.len()] {
            cur.push(iv);
            go(coords, cur, visit);
            cur.pop();
        }
    }
    go(coords, &mut Vec::with_capacity(coords.len()), visit);
}

fn product(grids: &[&[Q]]) -> Vec<Vec<Q>> {
    grids.iter().fold(vec![Vec::new()], |acc, g| {
        let g: &[Q] = if g.is_empty() { &[Q::ZERO] } else { g };
        acc.iter()
            .flat_map(|prefix| {
                g.iter().map(move |&t| {
                    let mut v = prefix.clone();
                    v.push(t);
                    v
                })
            })
            .collect()
    })
}
