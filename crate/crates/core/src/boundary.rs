//! Positions and arc sets along the polygon boundary.
//!
//! The boundary of an `n`-gon is linearised as `[0, n)`: edge `i` covers
//! `[i, i + 1]`, vertex `i` sits at `i`. Arcs run counterclockwise.

use crate::geom::{BoundaryPoint, Polygon};
use crate::rational::Rational;

/// Linear boundary coordinate of a boundary point.
pub fn linear(bp: &BoundaryPoint) -> Rational {
    Rational::from(bp.edge.0) + &bp.param
}

/// Linear coordinate of vertex `i`.
pub fn vertex_linear(i: usize) -> Rational {
    Rational::from(i)
}

/// Boundary point at linear coordinate `x` (reduced modulo `n`).
pub fn at_linear(poly: &Polygon, x: &Rational) -> BoundaryPoint {
    let n = poly.n();
    let nn = Rational::from(n);
    let mut x = x.clone();
    while x >= nn {
        x = x - &nn;
    }
    while x.is_negative() {
        x = x + &nn;
    }
    let e: usize = x.floor().try_into().expect("edge index");
    let t = x - Rational::from(e);
    BoundaryPoint::on_edge(poly, e, t)
}

/// A closed subset of the boundary made of finitely many arcs of positive
/// length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcSet {
    n: usize,
    /// Sorted, pairwise separated closed intervals of `[0, n]`.
    ivs: Vec<(Rational, Rational)>,
}

impl ArcSet {
    pub fn empty(n: usize) -> Self {
        ArcSet { n, ivs: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        ArcSet { n, ivs: vec![(Rational::zero(), Rational::from(n))] }
    }

    /// The counterclockwise arc from `from` to `to`.
    pub fn arc(n: usize, from: &Rational, to: &Rational) -> Self {
        let mut s = ArcSet::empty(n);
        s.add_arc(from, to);
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn intervals(&self) -> &[(Rational, Rational)] {
        &self.ivs
    }

    pub fn is_empty(&self) -> bool {
        self.ivs.is_empty()
    }

    pub fn add_arc(&mut self, from: &Rational, to: &Rational) {
        match from.cmp(to) {
            std::cmp::Ordering::Less => self.insert(from.clone(), to.clone()),
            std::cmp::Ordering::Greater => {
                self.insert(from.clone(), Rational::from(self.n));
                self.insert(Rational::zero(), to.clone());
            }
            std::cmp::Ordering::Equal => {}
        }
    }

    fn insert(&mut self, lo: Rational, hi: Rational) {
        if lo >= hi {
            return;
        }
        let mut lo = lo;
        let mut hi = hi;
        let mut out = Vec::with_capacity(self.ivs.len() + 1);
        let mut placed = false;
        for (a, b) in self.ivs.drain(..) {
            if b < lo {
                out.push((a, b));
            } else if hi < a {
                if !placed {
                    out.push((lo.clone(), hi.clone()));
                    placed = true;
                }
                out.push((a, b));
            } else {
                if a < lo {
                    lo = a;
                }
                if b > hi {
                    hi = b;
                }
            }
        }
        if !placed {
            out.push((lo, hi));
        }
        self.ivs = out;
    }

    pub fn union(&self, other: &ArcSet) -> ArcSet {
        let mut s = self.clone();
        for (a, b) in &other.ivs {
            s.insert(a.clone(), b.clone());
        }
        s
    }

    /// Closure of the complement.
    pub fn complement(&self) -> ArcSet {
        let mut out = Vec::new();
        let mut cur = Rational::zero();
        for (a, b) in &self.ivs {
            if &cur < a {
                out.push((cur.clone(), a.clone()));
            }
            cur = b.clone();
        }
        let end = Rational::from(self.n);
        if cur < end {
            out.push((cur, end));
        }
        ArcSet { n: self.n, ivs: out }
    }

    /// Closure of `self` minus `other`.
    pub fn minus(&self, other: &ArcSet) -> ArcSet {
        self.intersect(&other.complement())
    }

    /// Intersection, dropping isolated points.
    pub fn intersect(&self, other: &ArcSet) -> ArcSet {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.ivs.len() && j < other.ivs.len() {
            let (a0, a1) = &self.ivs[i];
            let (b0, b1) = &other.ivs[j];
            let lo = if a0 > b0 { a0 } else { b0 };
            let hi = if a1 < b1 { a1 } else { b1 };
            if lo < hi {
                out.push((lo.clone(), hi.clone()));
            }
            if a1 < b1 {
                i += 1;
            } else {
                j += 1;
            }
        }
        ArcSet { n: self.n, ivs: out }
    }

    /// `x` lies strictly inside one of the arcs.
    pub fn contains_open(&self, x: &Rational) -> bool {
        let nn = Rational::from(self.n);
        if x.is_zero() || x == &nn {
            // The seam: inside when arcs meet there from both sides.
            return self.ivs.first().is_some_and(|f| f.0.is_zero()) && self.ivs.last().is_some_and(|l| l.1 == nn);
        }
        self.ivs.iter().any(|(a, b)| a < x && x < b)
    }

    pub fn contains_closed(&self, x: &Rational) -> bool {
        self.ivs.iter().any(|(a, b)| a <= x && x <= b)
    }

    /// Every arc of `other` is contained in `self`.
    pub fn covers(&self, other: &ArcSet) -> bool {
        other.ivs.iter().all(|(lo, hi)| self.ivs.iter().any(|(a, b)| a <= lo && hi <= b))
    }

    /// Parameter intervals (positive length) of edge `e` inside the set.
    pub fn edge_intervals(&self, e: usize) -> Vec<(Rational, Rational)> {
        let e0 = Rational::from(e);
        let e1 = Rational::from(e + 1);
        self.ivs
            .iter()
            .filter_map(|(a, b)| {
                let lo = if a > &e0 { a } else { &e0 };
                let hi = if b < &e1 { b } else { &e1 };
                (lo < hi).then(|| (lo - &e0, hi - &e0))
            })
            .collect()
    }

    /// Edges meeting the set in a piece of positive length.
    pub fn touched_edges(&self) -> Vec<bool> {
        (0..self.n).map(|e| !self.edge_intervals(e).is_empty()).collect()
    }
}
