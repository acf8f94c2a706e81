//! Polyhedra in `ℝ³ = X × Z` given by halfspaces `n·(x, z₁, z₂) ≤ c`:
//! Fourier–Motzkin projection, vertex enumeration, linear maximization by
//! LP duality and the halfspace description of a V-represented hull.

use serde::{Deserialize, Serialize};

use super::vec::*;
use crate::extreal::Ext;

/// `{y : n·y ≤ c}` in `ℝ³`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Halfspace3 {
    pub n: P3,
    pub c: f64,
}

impl Halfspace3 {
    pub fn new(n: P3, c: f64) -> Halfspace3 {
        Halfspace3 { n, c }
    }

    pub fn contains(&self, y: P3, tol: f64) -> bool {
        dot3(self.n, y) <= self.c + tol * (1.0 + self.c.abs() + norm3(self.n))
    }
}

/// A linear inequality `a·v ≤ c` in any number of variables.
#[derive(Clone, Debug, PartialEq)]
pub struct Ineq {
    pub a: Vec<f64>,
    pub c: f64,
}

const FM_TOL: f64 = 1e-12;

/// Eliminates variable `k` by pairing positive and negative coefficients.
/// The result no longer mentions `k` (its coefficient is removed).
pub fn fm_eliminate(sys: &[Ineq], k: usize) -> Vec<Ineq> {
    let scale = |q: &Ineq| q.a.iter().fold(q.c.abs(), |m, v| m.max(v.abs())).max(1e-300);
    let (mut pos, mut neg, mut out) = (Vec::new(), Vec::new(), Vec::new());
    for q in sys {
        let t = q.a[k] / scale(q);
        if t > FM_TOL {
            pos.push(q);
        } else if t < -FM_TOL {
            neg.push(q);
        } else {
            out.push(drop_var(q, k, 1.0));
        }
    }
    for p in &pos {
        for n in &neg {
            let (ap, an) = (p.a[k], -n.a[k]);
            let mut a: Vec<f64> = p.a.iter().zip(&n.a).map(|(x, y)| x * an + y * ap).collect();
            a.remove(k);
            let c = p.c * an + n.c * ap;
            let s = a.iter().fold(c.abs(), |m, v| m.max(v.abs())).max(1e-300);
            out.push(Ineq { a: a.iter().map(|v| v / s).collect(), c: c / s });
        }
    }
    dedup_ineqs(out)
}

fn drop_var(q: &Ineq, k: usize, s: f64) -> Ineq {
    let mut a = q.a.clone();
    a.remove(k);
    Ineq { a: a.iter().map(|v| v / s).collect(), c: q.c / s }
}

/// Removes exact duplicates and trivially true rows (zero normal with
/// `c ≥ 0`); keeps one infeasible row if present.
fn dedup_ineqs(sys: Vec<Ineq>) -> Vec<Ineq> {
    let mut out: Vec<Ineq> = Vec::with_capacity(sys.len());
    for q in sys {
        let zero = q.a.iter().all(|v| v.abs() <= FM_TOL);
        if zero && q.c >= -1e-9 {
            continue;
        }
        let norm = q.a.iter().map(|v| v * v).sum::<f64>().sqrt();
        let q = if zero {
            Ineq { a: q.a.iter().map(|_| 0.0).collect(), c: -1.0 }
        } else {
            Ineq { a: q.a.iter().map(|v| v / norm).collect(), c: q.c / norm }
        };
        let same = |o: &Ineq| o.a.iter().zip(&q.a).all(|(x, y)| (x - y).abs() <= 1e-12);
        match out.iter_mut().find(|o| same(o)) {
            Some(o) => o.c = o.c.min(q.c),
            None => out.push(q),
        }
    }
    out
}

/// A polyhedron in `ℝ³` in H-representation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Poly3 {
    pub h: Vec<Halfspace3>,
}

impl Poly3 {
    pub fn new(h: Vec<Halfspace3>) -> Poly3 {
        Poly3 { h }
    }

    fn ineqs(&self) -> Vec<Ineq> {
        self.h.iter().map(|s| Ineq { a: s.n.to_vec(), c: s.c }).collect()
    }

    pub fn contains(&self, y: P3, tol: f64) -> bool {
        self.h.iter().all(|s| s.contains(y, tol))
    }

    /// Emptiness by eliminating all three variables.
    pub fn is_empty(&self) -> bool {
        let mut sys = self.ineqs();
        for _ in 0..3 {
            sys = fm_eliminate(&sys, 0);
        }
        sys.iter().any(|q| q.c < -1e-9)
    }

    /// Orthonormal basis of `{d : n_i·d = 0 for all i}`.
    pub fn lineality(&self) -> Vec<P3> {
        let rows: Vec<P3> = self.h.iter().map(|s| s.n).collect();
        let row_basis = span_basis(&rows, 1e-9);
        let mut all = row_basis.clone();
        all.extend([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
        span_basis(&all, 1e-9).split_off(row_basis.len())
    }

    /// Vertices of `P ∩ L^⊥` where `L` is the lineality space; every
    /// non-empty face of `P` meets this set.
    pub fn vertices(&self) -> Vec<P3> {
        let mut hs = self.h.clone();
        for l in self.lineality() {
            hs.push(Halfspace3::new(l, 0.0));
            hs.push(Halfspace3::new([-l[0], -l[1], -l[2]], 0.0));
        }
        let mut out: Vec<P3> = Vec::new();
        let m = hs.len();
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    let Some(y) = solve([hs[i].n, hs[j].n, hs[k].n], [hs[i].c, hs[j].c, hs[k].c]) else { continue };
                    if hs.iter().all(|s| s.contains(y, 1e-9))
                        && !out.iter().any(|o| norm3(sub3(*o, y)) <= 1e-9 * (1.0 + norm3(y)))
                    {
                        out.push(y);
                    }
                }
            }
        }
        out
    }

    /// Generators of the recession cone: extreme rays of its pointed part
    /// plus both orientations of each lineality direction.
    pub fn recession_rays(&self) -> Vec<P3> {
        let lin = self.lineality();
        let mut normals: Vec<P3> = self.h.iter().map(|s| s.n).collect();
        let mut eqs: Vec<P3> = Vec::new();
        for l in &lin {
            eqs.push(*l);
            normals.push(*l);
        }
        let ok = |d: P3| {
            self.h.iter().all(|s| dot3(s.n, d) <= 1e-9 * norm3(s.n).max(1.0))
                && eqs.iter().all(|l| dot3(*l, d).abs() <= 1e-9)
        };
        let mut out: Vec<P3> = Vec::new();
        for i in 0..normals.len() {
            for j in i + 1..normals.len() {
                let Some(d) = unit3(cross3(normals[i], normals[j])) else { continue };
                for d in [d, [-d[0], -d[1], -d[2]]] {
                    if ok(d) && !out.iter().any(|o| norm3(sub3(*o, d)) <= 1e-9) {
                        out.push(d);
                    }
                }
            }
        }
        for l in lin {
            out.push(l);
            out.push([-l[0], -l[1], -l[2]]);
        }
        out
    }

    /// `sup_{y ∈ P} ℓ·y` via the dual `min {c·λ : λ ≥ 0, Nᵀλ = ℓ}`, whose
    /// optimum sits at a basic solution with at most three rows.
    pub fn sup_linear(&self, l: P3) -> Ext {
        if self.is_empty() {
            return Ext::NegInf;
        }
        if norm3(l) == 0.0 {
            return Ext::ZERO;
        }
        let hs = &self.h;
        let m = hs.len();
        let tol = 1e-9 * (1.0 + norm3(l));
        let mut best = f64::INFINITY;
        let mut try_basis = |idx: &[usize]| {
            let k = idx.len();
            // least-squares solve of Σ λ_i n_i = ℓ on the chosen rows
            let mut g = [[0.0; 3]; 3];
            let mut rhs = [0.0; 3];
            for a in 0..k {
                for b in 0..k {
                    g[a][b] = dot3(hs[idx[a]].n, hs[idx[b]].n);
                }
                rhs[a] = dot3(hs[idx[a]].n, l);
            }
            let lam: Vec<f64> = match k {
                1 => {
                    if g[0][0] <= 1e-300 {
                        return;
                    }
                    vec![rhs[0] / g[0][0]]
                }
                2 => match solve([[g[0][0], g[0][1]], [g[1][0], g[1][1]]], [rhs[0], rhs[1]]) {
                    Some(x) => x.to_vec(),
                    None => return,
                },
                _ => match solve(g, rhs) {
                    Some(x) => x.to_vec(),
                    None => return,
                },
            };
            if lam.iter().any(|&v| v < -1e-12) {
                return;
            }
            let mut res = l;
            for (a, &v) in lam.iter().enumerate() {
                for t in 0..3 {
                    res[t] -= v * hs[idx[a]].n[t];
                }
            }
            if norm3(res) > tol {
                return;
            }
            let val: f64 = lam.iter().enumerate().map(|(a, &v)| v.max(0.0) * hs[idx[a]].c).sum();
            best = best.min(val);
        };
        for i in 0..m {
            try_basis(&[i]);
            for j in i + 1..m {
                try_basis(&[i, j]);
                for k in j + 1..m {
                    try_basis(&[i, j, k]);
                }
            }
        }
        Ext::of(best)
    }

    /// Halfspace description of `conv(points) + cone(rays)`; requires the
    /// result to be full-dimensional.
    pub fn from_vrep(points: &[P3], rays: &[P3]) -> Option<Poly3> {
        if points.is_empty() {
            return None;
        }
        let mut dirs: Vec<P3> = Vec::new();
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                dirs.push(sub3(points[j], points[i]));
            }
        }
        dirs.extend(rays.iter().copied());
        if span_basis(&dirs, 1e-9).len() < 3 {
            return None;
        }
        let mut hs: Vec<Halfspace3> = Vec::new();
        for i in 0..dirs.len() {
            for j in i + 1..dirs.len() {
                let Some(n) = unit3(cross3(dirs[i], dirs[j])) else { continue };
                for n in [n, [-n[0], -n[1], -n[2]]] {
                    if rays.iter().any(|&r| dot3(n, r) > 1e-9 * norm3(r)) {
                        continue;
                    }
                    if hs.iter().any(|h| norm3(sub3(h.n, n)) <= 1e-9) {
                        continue;
                    }
                    let c = points.iter().map(|&p| dot3(n, p)).fold(f64::NEG_INFINITY, f64::max);
                    // a facet contains a 2-dimensional piece of the generators
                    let on: Vec<P3> =
                        points.iter().copied().filter(|&p| (dot3(n, p) - c).abs() <= 1e-9 * (1.0 + c.abs())).collect();
                    let mut span: Vec<P3> = on.iter().map(|&p| sub3(p, on[0])).collect();
                    span.extend(rays.iter().copied().filter(|&r| dot3(n, r).abs() <= 1e-9 * norm3(r)));
                    if span_basis(&span, 1e-9).len() >= 2 {
                        hs.push(Halfspace3::new(n, c));
                    }
                }
            }
        }
        Some(Poly3::new(hs))
    }
}
