//! Exact suprema and infima over `x ∈ ℝ` of pointwise expressions built
//! from functions that are affine or constant-infinite between finitely many
//! breakpoints.
//!
//! ℝ is cut into the breakpoints themselves and the open gaps between them.
//! On each cell every operand is a single [`Piece`], so the expression is a
//! single piece too and its sup/inf over the cell is closed form.

use crate::extreal::{DownReal, Ext, UpReal};
use crate::scalar_fn::{AffineDual, DualElem, UpFunction};

/// `x ↦ a·x + b` or a constant `±∞`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Piece {
    Affine { a: f64, b: f64 },
    PosInf,
    NegInf,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Cell {
    Point(f64),
    Open(f64, f64),
}

impl Cell {
    /// A point strictly inside the cell.
    pub fn sample(&self) -> f64 {
        match *self {
            Cell::Point(x) => x,
            Cell::Open(lo, hi) => match (lo.is_finite(), hi.is_finite()) {
                (true, true) => 0.5 * (lo + hi),
                (true, false) => lo + 1.0,
                (false, true) => hi - 1.0,
                (false, false) => 0.0,
            },
        }
    }
}

impl Piece {
    pub fn constant(e: Ext) -> Piece {
        match e {
            Ext::NegInf => Piece::NegInf,
            Ext::PosInf => Piece::PosInf,
            Ext::Finite(b) => Piece::Affine { a: 0.0, b },
        }
    }

    /// The tag of the piece, with finite values represented by 0.
    fn kind(self) -> Ext {
        match self {
            Piece::Affine { .. } => Ext::ZERO,
            Piece::PosInf => Ext::PosInf,
            Piece::NegInf => Ext::NegInf,
        }
    }

    /// Applies an extended-real operation: the infinity table decides the
    /// tag, and finite results combine the affine parts with `lin`.
    fn combine(self, o: Piece, op: impl Fn(Ext, Ext) -> Ext, lin: impl Fn(f64, f64) -> f64) -> Piece {
        match op(self.kind(), o.kind()) {
            Ext::Finite(_) => {
                let (Piece::Affine { a: a1, b: b1 }, Piece::Affine { a: a2, b: b2 }) = (self, o) else {
                    unreachable!("finite result needs finite operands")
                };
                Piece::Affine { a: lin(a1, a2), b: lin(b1, b2) }
            }
            e => Piece::constant(e),
        }
    }

    pub fn isum(self, o: Piece) -> Piece {
        self.combine(o, |p, q| UpReal::from_ext(p).isum(UpReal::from_ext(q)).ext(), |p, q| p + q)
    }

    pub fn ssum(self, o: Piece) -> Piece {
        self.combine(o, |p, q| DownReal::from_ext(p).ssum(DownReal::from_ext(q)).ext(), |p, q| p + q)
    }

    pub fn idif(self, o: Piece) -> Piece {
        self.combine(o, |p, q| UpReal::from_ext(p).idif(UpReal::from_ext(q)).ext(), |p, q| p - q)
    }

    pub fn sdif(self, o: Piece) -> Piece {
        self.combine(o, |p, q| DownReal::from_ext(p).sdif(DownReal::from_ext(q)).ext(), |p, q| p - q)
    }

    pub fn neg(self) -> Piece {
        match self {
            Piece::Affine { a, b } => Piece::Affine { a: -a, b: -b },
            Piece::PosInf => Piece::NegInf,
            Piece::NegInf => Piece::PosInf,
        }
    }

    pub fn at(self, x: f64) -> Ext {
        match self {
            Piece::Affine { a, b } => Ext::of(a * x + b),
            Piece::PosInf => Ext::PosInf,
            Piece::NegInf => Ext::NegInf,
        }
    }

    pub fn sup_over(self, c: Cell) -> Ext {
        match (self, c) {
            (Piece::Affine { a, b }, Cell::Open(lo, hi)) => {
                if a > 0.0 {
                    Ext::of(a * hi + b)
                } else if a < 0.0 {
                    Ext::of(a * lo + b)
                } else {
                    Ext::Finite(b)
                }
            }
            (p, Cell::Point(x)) => p.at(x),
            (p, _) => p.kind(),
        }
    }

    pub fn inf_over(self, c: Cell) -> Ext {
        self.neg().sup_over(c).negate()
    }
}

/// Something that is a single [`Piece`] on every cell of a partition that
/// contains its breakpoints.
pub trait Piecewise {
    fn breakpoints(&self) -> Vec<f64>;
    fn piece(&self, c: Cell) -> Piece;
}

impl Piecewise for UpFunction {
    fn breakpoints(&self) -> Vec<f64> {
        let mut b: Vec<f64> = match self {
            UpFunction::Pl(p) => p.knots().iter().map(|k| k.x).collect(),
            _ => vec![],
        };
        let d = self.dom();
        if !d.is_empty() {
            b.extend([d.lo, d.hi].into_iter().filter(|e| e.is_finite()));
        }
        b
    }

    fn piece(&self, c: Cell) -> Piece {
        let x = c.sample();
        match (self, c) {
            (UpFunction::Pl(p), Cell::Open(..)) => match p.eval(x) {
                None => Piece::PosInf,
                Some(v) => {
                    let a = p.right_slope_at(x);
                    Piece::Affine { a, b: v - a * x }
                }
            },
            _ => Piece::constant(self.eval(x).ext()),
        }
    }
}

impl Piecewise for AffineDual {
    fn breakpoints(&self) -> Vec<f64> {
        match self.xi {
            DualElem::Hat(a) if a != 0.0 => vec![self.r / a],
            _ => vec![],
        }
    }

    fn piece(&self, c: Cell) -> Piece {
        match self.xi {
            DualElem::Proper(a) => Piece::Affine { a, b: -self.r },
            DualElem::Hat(_) => Piece::constant(self.eval(c.sample()).ext()),
        }
    }
}

impl Piecewise for Ext {
    fn breakpoints(&self) -> Vec<f64> {
        vec![]
    }

    fn piece(&self, _: Cell) -> Piece {
        Piece::constant(*self)
    }
}

/// Cells of ℝ cut at the given points.
pub fn partition(mut pts: Vec<f64>) -> Vec<Cell> {
    pts.retain(|p| p.is_finite());
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let mut cells = Vec::with_capacity(2 * pts.len() + 1);
    let mut lo = f64::NEG_INFINITY;
    for &p in &pts {
        // gaps holding no float between adjacent breakpoints are skipped
        let mid = 0.5 * (lo + p);
        if !(lo.is_finite() && (mid == lo || mid == p)) {
            cells.push(Cell::Open(lo, p));
        }
        cells.push(Cell::Point(p));
        lo = p;
    }
    cells.push(Cell::Open(lo, f64::INFINITY));
    cells
}

fn cells_for(ops: &[&dyn Piecewise]) -> Vec<Cell> {
    partition(ops.iter().flat_map(|o| o.breakpoints()).collect())
}

/// `sup_x expr(op₁(x), …, opₙ(x))`.
pub fn sup_expr(ops: &[&dyn Piecewise], expr: impl Fn(&[Piece]) -> Piece) -> Ext {
    cells_for(ops)
        .into_iter()
        .map(|c| {
            let ps: Vec<Piece> = ops.iter().map(|o| o.piece(c)).collect();
            expr(&ps).sup_over(c)
        })
        .max()
        .expect("at least one cell")
}

/// `inf_x expr(op₁(x), …, opₙ(x))`.
pub fn inf_expr(ops: &[&dyn Piecewise], expr: impl Fn(&[Piece]) -> Piece) -> Ext {
    sup_expr(ops, |ps| expr(ps).neg()).negate()
}

/// `∀x: lhs(x) ≤ rhs(x)`, decided cell by cell. Finite comparisons allow
/// a relative slack of `1e-12` so that touching lines built from rounded
/// knots are not rejected.
pub fn forall_le(lhs: &dyn Piecewise, rhs: &dyn Piecewise) -> bool {
    const EPS: f64 = 1e-12;
    cells_for(&[lhs, rhs]).into_iter().all(|c| {
        match (lhs.piece(c), rhs.piece(c)) {
            (Piece::Affine { a: a1, b: b1 }, Piece::Affine { a: a2, b: b2 }) => {
                let mut da = a1 - a2;
                if da.abs() <= EPS * (1.0 + a1.abs() + a2.abs()) {
                    da = 0.0;
                }
                // the difference is largest at one end of the cell
                let x = match c {
                    Cell::Point(x) => x,
                    Cell::Open(lo, hi) => {
                        if da > 0.0 {
                            hi
                        } else if da < 0.0 {
                            lo
                        } else {
                            c.sample()
                        }
                    }
                };
                if !x.is_finite() {
                    return false;
                }
                let (l, r) = (a1 * x + b1, a2 * x + b2);
                l - r <= EPS * (1.0 + l.abs() + r.abs() + (a1 * x).abs() + (a2 * x).abs() + b1.abs() + b2.abs())
            }
            (p, q) => p.sup_over(c) <= q.inf_over(c),
        }
    })
}
