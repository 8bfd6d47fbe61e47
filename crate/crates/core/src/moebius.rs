//! Points of the projective line of pencil directions and the fractional
//! linear maps induced on them by the 2x2 factor of a local operator.
//!
//! A point `lambda` stands for the direction where `gamma2 - lambda gamma1`
//! is singular; infinity is the direction where `gamma1` itself drops rank.
//! Mixing the slices by `T` moves `lambda` to
//! `(t21 + t22 lambda) / (t11 + t12 lambda)`.

use std::cmp::Ordering;
use std::fmt;

use crate::linalg::numeric::round_complex;
use crate::linalg::{ExactMatrix, GaussianRational as Q, Value};

#[derive(Clone, Debug, PartialEq)]
pub enum ProjPoint {
    Finite(Value),
    Infinity,
}

impl ProjPoint {
    pub fn exact(q: Q) -> Self {
        ProjPoint::Finite(Value::Exact(q))
    }

    pub fn int(v: i64) -> Self {
        Self::exact(Q::from_int(v))
    }

    pub fn is_exact(&self) -> bool {
        match self {
            ProjPoint::Finite(v) => v.is_exact(),
            ProjPoint::Infinity => true,
        }
    }

    pub fn finite(&self) -> Option<&Value> {
        match self {
            ProjPoint::Finite(v) => Some(v),
            ProjPoint::Infinity => None,
        }
    }

    /// Finite exact, then finite approximate, then infinity.
    pub fn order(&self, o: &Self) -> Ordering {
        match (self, o) {
            (ProjPoint::Finite(a), ProjPoint::Finite(b)) => a.order(b),
            (ProjPoint::Finite(_), ProjPoint::Infinity) => Ordering::Less,
            (ProjPoint::Infinity, ProjPoint::Finite(_)) => Ordering::Greater,
            (ProjPoint::Infinity, ProjPoint::Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(v) => write!(f, "{v}"),
            ProjPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// `z -> (a z + b) / (c z + d)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mobius {
    a: Value,
    b: Value,
    c: Value,
    d: Value,
}

fn q(v: i64) -> Value {
    Value::int(v)
}

impl Mobius {
    pub fn new(a: Value, b: Value, c: Value, d: Value) -> Self {
        Self { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::new(q(1), q(0), q(0), q(1))
    }

    /// The map a slice-mixing matrix induces on pencil points.
    pub fn from_t(t: &ExactMatrix) -> Self {
        let e = |i, j| Value::Exact(t[(i, j)].clone());
        Self::new(e(1, 1), e(1, 0), e(0, 1), e(0, 0))
    }

    /// The slice-mixing matrix realizing this map, when it is exact.
    pub fn to_t(&self) -> Option<ExactMatrix> {
        let [a, b, c, d] = [&self.a, &self.b, &self.c, &self.d].map(|v| v.exact().cloned());
        Some(ExactMatrix::from_rows(vec![vec![d?, c?], vec![b?, a?]]))
    }

    pub fn is_exact(&self) -> bool {
        [&self.a, &self.b, &self.c, &self.d].iter().all(|v| v.is_exact())
    }

    /// A nearby exact slice-mixing matrix; equal to `to_t` for exact maps.
    pub fn to_t_rounded(&self) -> ExactMatrix {
        let r = |v: &Value| v.exact().cloned().unwrap_or_else(|| round_complex(v.to_complex()));
        ExactMatrix::from_rows(vec![vec![r(&self.d), r(&self.c)], vec![r(&self.b), r(&self.a)]])
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        match p {
            ProjPoint::Finite(z) => {
                let den = self.c.mul(z).add(&self.d);
                if den.is_zero() {
                    ProjPoint::Infinity
                } else {
                    ProjPoint::Finite(self.a.mul(z).add(&self.b).div(&den))
                }
            }
            ProjPoint::Infinity => {
                if self.c.is_zero() {
                    ProjPoint::Infinity
                } else {
                    ProjPoint::Finite(self.a.div(&self.c))
                }
            }
        }
    }

    /// `self` after `inner`.
    pub fn compose(&self, inner: &Mobius) -> Mobius {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (e, f, g, h) = (&inner.a, &inner.b, &inner.c, &inner.d);
        Mobius::new(a.mul(e).add(&b.mul(g)), a.mul(f).add(&b.mul(h)), c.mul(e).add(&d.mul(g)), c.mul(f).add(&d.mul(h)))
    }

    pub fn inverse(&self) -> Mobius {
        let neg = |v: &Value| q(0).sub(v);
        Mobius::new(self.d.clone(), neg(&self.b), neg(&self.c), self.a.clone())
    }

    /// The map sending the given anchors to 0, 1, infinity in that order.
    /// With fewer than three anchors the remaining freedom is fixed by a
    /// documented convention; the anchors must be pairwise distinct.
    pub fn sending(anchors: &[&ProjPoint]) -> Mobius {
        use ProjPoint::{Finite, Infinity};
        let neg = |v: &Value| q(0).sub(v);
        match anchors {
            [Finite(p)] => Mobius::new(q(1), neg(p), q(0), q(1)),
            [Infinity] => Mobius::new(q(0), q(1), q(1), q(0)),
            [Finite(p0), Finite(p1)] => Mobius::new(q(1), neg(p0), q(0), p1.sub(p0)),
            [Finite(p0), Infinity] => Mobius::new(q(1), neg(p0), q(1), q(1).sub(p0)),
            [Infinity, Finite(p1)] => Mobius::new(q(0), q(1), q(1), q(1).sub(p1)),
            [Finite(p0), Finite(p1), Finite(pi)] => {
                let u = p1.sub(pi);
                let w = p1.sub(p0);
                Mobius::new(u.clone(), neg(&p0.mul(&u)), w.clone(), neg(&pi.mul(&w)))
            }
            [Infinity, Finite(p1), Finite(pi)] => Mobius::new(q(0), p1.sub(pi), q(1), neg(pi)),
            [Finite(p0), Infinity, Finite(pi)] => Mobius::new(q(1), neg(p0), q(1), neg(pi)),
            [Finite(p0), Finite(p1), Infinity] => Mobius::new(q(1), neg(p0), q(0), p1.sub(p0)),
            _ => panic!("anchors must be one to three distinct points"),
        }
    }

    /// `z -> t z / (z + t - 1)`: fixes 0 and 1, sends infinity to `t`.
    pub fn finite_chart(t: i64) -> Mobius {
        Mobius::new(q(t), q(0), q(1), q(t - 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> ProjPoint {
        if s == "inf" {
            ProjPoint::Infinity
        } else {
            ProjPoint::exact(s.parse().unwrap())
        }
    }

    #[test]
    fn anchors_land_on_zero_one_infinity() {
        let cases = [["2", "5", "-1"], ["inf", "3", "1/2"], ["0", "inf", "7"], ["1+i", "2", "inf"]];
        for [a, b, c] in cases {
            let m = Mobius::sending(&[&p(a), &p(b), &p(c)]);
            assert_eq!(m.apply(&p(a)), p("0"));
            assert_eq!(m.apply(&p(b)), p("1"));
            assert_eq!(m.apply(&p(c)), p("inf"));
        }
        for [a, b] in [["2", "5"], ["inf", "3"], ["4", "inf"]] {
            let m = Mobius::sending(&[&p(a), &p(b)]);
            assert_eq!((m.apply(&p(a)), m.apply(&p(b))), (p("0"), p("1")));
        }
        assert_eq!(Mobius::sending(&[&p("inf")]).apply(&p("inf")), p("0"));
    }

    #[test]
    fn t_matrix_round_trip_and_composition() {
        let t = ExactMatrix::from_ints(&[[2, 1], [3, 5]]);
        let m = Mobius::from_t(&t);
        assert_eq!(m.to_t().unwrap(), t);
        // lambda = 1: (3 + 5) / (2 + 1)
        assert_eq!(m.apply(&p("1")), p("8/3"));
        let u = ExactMatrix::from_ints(&[[1, -1], [0, 4]]);
        let composed = Mobius::from_t(&(&u * &t));
        let z = p("7/2");
        assert_eq!(composed.apply(&z), Mobius::from_t(&u).apply(&m.apply(&z)));
        assert_eq!(m.inverse().apply(&m.apply(&z)), z);
        assert_eq!(m.apply(&p("-2")), p("inf"));
    }

    #[test]
    fn finite_chart_fixes_zero_and_one() {
        let m = Mobius::finite_chart(3);
        assert_eq!(m.apply(&p("0")), p("0"));
        assert_eq!(m.apply(&p("1")), p("1"));
        assert_eq!(m.apply(&p("inf")), p("3"));
        assert!(Mobius::identity().compose(&m) == m);
    }
}
