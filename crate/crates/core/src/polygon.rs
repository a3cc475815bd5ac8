//! Newton polygons: sorted (slope, multiplicity) data with exact rational
//! slopes, plus the lower-convex-hull construction that reads them off the
//! coefficient valuations of a monic polynomial.
//!
//! Conventions, fixed once and unit-tested: for a monic polynomial
//! Σ aᵢ·Xⁱ the hull is taken over the points (i, v(aᵢ)); a hull segment of
//! slope −s and horizontal length ℓ records ℓ roots of valuation s. Polygon
//! data is stored sorted by ascending slope with equal slopes merged.

use crate::error::{Error, Result};
use num_rational::Ratio;

pub type Slope = Ratio<i64>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NewtonPolygon {
    /// ascending slopes, equal slopes merged, multiplicities ≥ 1
    pub segments: Vec<(Slope, usize)>,
}

impl NewtonPolygon {
    pub fn from_slopes(pairs: impl IntoIterator<Item = (Slope, usize)>) -> NewtonPolygon {
        let mut v: Vec<(Slope, usize)> = pairs.into_iter().filter(|&(_, m)| m > 0).collect();
        v.sort_by_key(|&(s, _)| s);
        let mut segments: Vec<(Slope, usize)> = vec![];
        for (s, m) in v {
            match segments.last_mut() {
                Some((ls, lm)) if *ls == s => *lm += m,
                _ => segments.push((s, m)),
            }
        }
        NewtonPolygon { segments }
    }

    /// Pure polygon: a single slope with full multiplicity.
    pub fn pure(slope: Slope, mult: usize) -> NewtonPolygon {
        NewtonPolygon::from_slopes([(slope, mult)])
    }

    pub fn rank(&self) -> usize {
        self.segments.iter().map(|&(_, m)| m).sum()
    }

    /// Σ slope·multiplicity (the ordinate of the right endpoint).
    pub fn total(&self) -> Slope {
        self.segments
            .iter()
            .map(|&(s, m)| s * Ratio::from_integer(m as i64))
            .sum()
    }

    pub fn smallest_slope(&self) -> Option<Slope> {
        self.segments.first().map(|&(s, _)| s)
    }

    /// Slopes with multiplicity, expanded to a multiset of length rank().
    pub fn slope_multiset(&self) -> Vec<Slope> {
        let mut out = vec![];
        for &(s, m) in &self.segments {
            out.extend(std::iter::repeat(s).take(m));
        }
        out
    }

    /// Multiply every slope by a rational factor (coefficient-field
    /// restriction and place-degree rescalings).
    pub fn scale(&self, f: Slope) -> NewtonPolygon {
        NewtonPolygon::from_slopes(self.segments.iter().map(|&(s, m)| (s * f, m)))
    }

    /// Polygon of the dual: slopes negated (order reverses automatically).
    pub fn dual(&self) -> NewtonPolygon {
        NewtonPolygon::from_slopes(self.segments.iter().map(|&(s, m)| (-s, m)))
    }

    /// Polygon of a tensor product: the multiset {α+β} with multiplicities
    /// mult(α)·mult(β).
    pub fn tensor(&self, other: &NewtonPolygon) -> NewtonPolygon {
        let mut pairs = vec![];
        for &(a, ma) in &self.segments {
            for &(b, mb) in &other.segments {
                pairs.push((a + b, ma * mb));
            }
        }
        NewtonPolygon::from_slopes(pairs)
    }

    /// Break points of the polygon drawn from (0, 0) with ascending slopes.
    /// Every break point has integer coordinates (slope denominators divide
    /// multiplicities); errors if not.
    pub fn vertices(&self) -> Result<Vec<(i64, i64)>> {
        let mut out = vec![(0i64, 0i64)];
        let (mut x, mut y) = (Ratio::from_integer(0), Ratio::from_integer(0));
        for &(s, m) in &self.segments {
            x += Ratio::from_integer(m as i64);
            y += s * Ratio::from_integer(m as i64);
            if !x.is_integer() || !y.is_integer() {
                return Err(Error::domain(format!(
                    "polygon break point ({x}, {y}) is not integral"
                )));
            }
            out.push((x.to_integer(), y.to_integer()));
        }
        Ok(out)
    }

    /// Value of the piecewise-linear polygon function (drawn from (0,0) with
    /// ascending slopes) at abscissa x ∈ [0, rank].
    pub fn value_at(&self, x: Slope) -> Slope {
        let mut acc = Ratio::from_integer(0);
        let mut rem = x;
        for &(s, m) in &self.segments {
            let w = Ratio::from_integer(m as i64);
            if rem <= w {
                return acc + s * rem;
            }
            acc += s * w;
            rem -= w;
        }
        acc
    }

    /// True iff self lies on or above `other` pointwise (same rank assumed);
    /// the comparison runs over all break abscissas of both polygons.
    pub fn lies_on_or_above(&self, other: &NewtonPolygon) -> bool {
        if self.rank() != other.rank() {
            return false;
        }
        let mut xs: Vec<Slope> = vec![Ratio::from_integer(0)];
        for poly in [self, other] {
            let mut acc = Ratio::from_integer(0);
            for &(_, m) in &poly.segments {
                acc += Ratio::from_integer(m as i64);
                xs.push(acc);
            }
        }
        xs.iter().all(|&x| self.value_at(x) >= other.value_at(x))
    }

    /// Structural invariants against independently known data: total
    /// multiplicity = rank, endpoint ordinate = ord(det), denominators
    /// divide multiplicities.
    pub fn check(&self, rank: usize, det_ord: Slope) -> Result<()> {
        if self.rank() != rank {
            return Err(Error::domain(format!(
                "polygon multiplicities sum to {} but rank is {rank}",
                self.rank()
            )));
        }
        if self.total() != det_ord {
            return Err(Error::domain(format!(
                "polygon endpoint {} does not match ord(det) = {det_ord}",
                self.total()
            )));
        }
        for &(s, m) in &self.segments {
            if m as i64 % s.denom() != 0 {
                return Err(Error::domain(format!(
                    "slope {s} has denominator not dividing its multiplicity {m}"
                )));
            }
        }
        Ok(())
    }
}

impl std::fmt::Display for NewtonPolygon {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .segments
            .iter()
            .map(|&(s, m)| format!("({s}, {m})"))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Slope with its multiplicity and the Hasse-invariant label [−α] mod 1,
/// normalized into [0, 1).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SlopeDatum {
    pub slope: Slope,
    pub mult: usize,
    pub hasse_label: Slope,
}

impl SlopeDatum {
    pub fn new(slope: Slope, mult: usize) -> SlopeDatum {
        let neg = -slope;
        let label = neg - neg.floor();
        SlopeDatum {
            slope,
            mult,
            hasse_label: label,
        }
    }
}

/// Lower convex hull of points with strictly increasing abscissas
/// (monotone-chain; input must be sorted by x).
pub fn lower_hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut hull: Vec<(i64, i64)> = vec![];
    for &p in points {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // keep b only if it is strictly below segment a—p
            let cross = (b.0 - a.0) as i128 * (p.1 - a.1) as i128
                - (b.1 - a.1) as i128 * (p.0 - a.0) as i128;
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

/// Root-valuation polygon of a monic polynomial from its coefficient
/// valuations: `vals[i]` = v(aᵢ), None for a (visibly) zero coefficient.
/// Requires nonzero constant and leading coefficients. A hull segment of
/// slope −s over length ℓ yields (s, ℓ).
pub fn polygon_from_valuations(vals: &[Option<i64>]) -> Result<NewtonPolygon> {
    let n = vals.len() - 1;
    if vals[n].is_none() {
        return Err(Error::domain("leading coefficient has no valuation"));
    }
    if vals[0].is_none() {
        return Err(Error::domain(
            "zero constant coefficient: a root of infinite valuation",
        ));
    }
    let points: Vec<(i64, i64)> = vals
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|v| (i as i64, v)))
        .collect();
    let hull = lower_hull(&points);
    let mut pairs = vec![];
    for w in hull.windows(2) {
        let (x1, y1) = w[0];
        let (x2, y2) = w[1];
        let s = Ratio::new(y1 - y2, x2 - x1); // −(hull slope)
        pairs.push((s, (x2 - x1) as usize));
    }
    Ok(NewtonPolygon::from_slopes(pairs))
}

/// Hull vertices themselves (for serialization of the coefficient hull).
pub fn hull_vertices(vals: &[Option<i64>]) -> Vec<(i64, i64)> {
    let points: Vec<(i64, i64)> = vals
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|v| (i as i64, v)))
        .collect();
    lower_hull(&points)
}
