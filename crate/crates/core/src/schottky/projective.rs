//! Points and closed arcs of the rational projective line, with the cyclic
//! order `… < −1 < 0 < 1 < … < ∞`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::rational::{from_bigint, lcm_of_denominators};
use crate::exact::{Rational, RationalMatrix};

/// `(p : q)` with `gcd(|p|, |q|) = 1` and leading nonzero coordinate positive.
/// Affine coordinate `p/q`; `(1 : 0)` is `∞`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[String; 2]", into = "[String; 2]")]
pub struct ProjectivePoint {
    p: BigInt,
    q: BigInt,
}

impl TryFrom<[String; 2]> for ProjectivePoint {
    type Error = String;

    fn try_from(raw: [String; 2]) -> Result<Self, String> {
        let parse = |t: &String| t.parse::<BigInt>().map_err(|_| format!("malformed integer {t:?}"));
        let (p, q) = (parse(&raw[0])?, parse(&raw[1])?);
        let point = ProjectivePoint::new(p.clone(), q.clone()).ok_or("point (0, 0)")?;
        if point.p != p || point.q != q {
            return Err(format!("point ({p}, {q}) is not normalized"));
        }
        Ok(point)
    }
}

impl From<ProjectivePoint> for [String; 2] {
    fn from(x: ProjectivePoint) -> Self {
        [x.p.to_string(), x.q.to_string()]
    }
}

impl ProjectivePoint {
    pub fn new(p: BigInt, q: BigInt) -> Option<Self> {
        if p.is_zero() && q.is_zero() {
            return None;
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / &g, q / &g);
        let lead_negative = if p.is_zero() { q.is_negative() } else { p.is_negative() };
        if lead_negative {
            p = -p;
            q = -q;
        }
        Some(ProjectivePoint { p, q })
    }

    pub fn from_rationals(p: &Rational, q: &Rational) -> Option<Self> {
        let den = from_bigint(lcm_of_denominators([p, q]));
        Self::new((p * &den).to_integer(), (q * &den).to_integer())
    }

    pub fn from_rational(x: &Rational) -> Self {
        Self::new(x.numer().clone(), x.denom().clone()).expect("denominator nonzero")
    }

    pub fn from_i64(x: i64) -> Self {
        Self::new(x.into(), BigInt::one()).expect("nonzero")
    }

    pub fn infinity() -> Self {
        ProjectivePoint { p: BigInt::one(), q: BigInt::zero() }
    }

    pub fn coordinates(&self) -> (&BigInt, &BigInt) {
        (&self.p, &self.q)
    }

    pub fn is_infinity(&self) -> bool {
        self.q.is_zero()
    }

    /// Affine coordinate, `None` at `∞`.
    pub fn value(&self) -> Option<Rational> {
        (!self.is_infinity()).then(|| Rational::new(self.p.clone(), self.q.clone()))
    }

    /// Image under the projective map of a 2×2 matrix; `None` if singular at this point.
    pub fn apply(&self, m: &RationalMatrix) -> Option<Self> {
        let (p, q) = (from_bigint(self.p.clone()), from_bigint(self.q.clone()));
        let p2 = m.get(0, 0) * &p + m.get(0, 1) * &q;
        let q2 = m.get(1, 0) * &p + m.get(1, 1) * &q;
        Self::from_rationals(&p2, &q2)
    }

    /// Linear order on the affine line with `∞` placed last.
    fn line_cmp(&self, other: &Self) -> Ordering {
        match (self.value(), other.value()) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Greater,
            (Some(_), None) => Ordering::Less,
            (Some(a), Some(b)) => a.cmp(&b),
        }
    }

    pub fn to_text(&self) -> String {
        match self.value() {
            None => "∞".into(),
            Some(v) => crate::exact::rational_text(&v),
        }
    }
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {})", self.p, self.q)
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Is `x` strictly inside the arc running in increasing direction from `a` to
/// `b`? All three points must be distinct for a `true` answer.
pub fn strictly_between(a: &ProjectivePoint, x: &ProjectivePoint, b: &ProjectivePoint) -> bool {
    use Ordering::Less;
    let lt = |u: &ProjectivePoint, v: &ProjectivePoint| u.line_cmp(v) == Less;
    (lt(a, x) && lt(x, b)) || (lt(x, b) && lt(b, a)) || (lt(b, a) && lt(a, x))
}

/// Canonical interior point of the increasing arc from `lo` to `hi`.
pub fn arc_interior(lo: &ProjectivePoint, hi: &ProjectivePoint) -> ProjectivePoint {
    let one = Rational::one();
    match (lo.value(), hi.value()) {
        (Some(u), Some(v)) if u < v => ProjectivePoint::from_rational(&((u + v) / Rational::from_integer(2.into()))),
        (Some(_), Some(_)) => ProjectivePoint::infinity(),
        (Some(u), None) => ProjectivePoint::from_rational(&(u + one)),
        (None, Some(v)) => ProjectivePoint::from_rational(&(v - one)),
        (None, None) => unreachable!("arc endpoints are distinct"),
    }
}

/// Closed arc from `endpoints[0]` to `endpoints[1]` (in either direction)
/// that contains `witness` in its interior.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProjectiveInterval {
    pub endpoints: [ProjectivePoint; 2],
    pub witness: ProjectivePoint,
}

impl ProjectiveInterval {
    pub fn new(start: ProjectivePoint, end: ProjectivePoint, witness: ProjectivePoint) -> Result<Self, String> {
        let i = ProjectiveInterval { endpoints: [start, end], witness };
        i.validate()?;
        Ok(i)
    }

    /// The increasing arc from `lo` to `hi`, witnessed canonically.
    pub fn increasing(lo: ProjectivePoint, hi: ProjectivePoint) -> Result<Self, String> {
        if lo == hi {
            return Err(format!("degenerate arc at {lo}"));
        }
        let w = arc_interior(&lo, &hi);
        Self::new(lo, hi, w)
    }

    pub fn validate(&self) -> Result<(), String> {
        let [a, b] = &self.endpoints;
        if a == b {
            return Err(format!("endpoints coincide at {a}"));
        }
        if &self.witness == a || &self.witness == b {
            return Err(format!("witness {} is an endpoint", self.witness));
        }
        Ok(())
    }

    /// `(lo, hi)` with the arc running in increasing direction from `lo` to `hi`.
    pub fn oriented(&self) -> (&ProjectivePoint, &ProjectivePoint) {
        let [a, b] = &self.endpoints;
        if strictly_between(a, &self.witness, b) {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn contains_interior(&self, x: &ProjectivePoint) -> bool {
        let (lo, hi) = self.oriented();
        strictly_between(lo, x, hi)
    }

    pub fn contains(&self, x: &ProjectivePoint) -> bool {
        self.endpoints.contains(x) || self.contains_interior(x)
    }

    /// The same arc, stored as `[lo, hi]` in increasing direction with the
    /// canonical witness.
    pub fn canonical(&self) -> Self {
        let (lo, hi) = self.oriented();
        Self::increasing(lo.clone(), hi.clone()).expect("distinct endpoints")
    }

    /// The closure of the complement, canonically witnessed.
    pub fn complement(&self) -> Self {
        let (lo, hi) = self.oriented();
        Self::increasing(hi.clone(), lo.clone()).expect("distinct endpoints")
    }

    /// Image under a projective map; `None` if the map is singular.
    pub fn image(&self, m: &RationalMatrix) -> Option<Self> {
        let [a, b] = &self.endpoints;
        let out = ProjectiveInterval {
            endpoints: [a.apply(m)?, b.apply(m)?],
            witness: self.witness.apply(m)?,
        };
        out.validate().ok()?;
        Some(out)
    }

    /// A point of `self ∩ other` if the closed arcs meet.
    pub fn meets(&self, other: &Self) -> Option<ProjectivePoint> {
        let (olo, ohi) = other.oriented();
        let (lo, _) = self.oriented();
        [olo, ohi]
            .into_iter()
            .find(|x| self.contains(x))
            .or_else(|| other.contains(lo).then_some(lo))
            .cloned()
    }

    /// A point of `inner` outside the interior of `self`, if any.
    pub fn escapes_interior(&self, inner: &Self) -> Option<ProjectivePoint> {
        let (ilo, ihi) = inner.oriented();
        let (lo, _) = self.oriented();
        [ilo, ihi]
            .into_iter()
            .find(|x| !self.contains_interior(x))
            .or_else(|| inner.contains(lo).then_some(lo))
            .cloned()
    }
}

impl fmt::Display for ProjectiveInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.oriented();
        write!(f, "[{lo}, {hi}]")
    }
}
