//! Exact planar geometry over the rationals.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: BigRational,
    pub y: BigRational,
}

impl Point {
    pub fn new(x: BigRational, y: BigRational) -> Point {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Point {
        Point {
            x: BigRational::from_integer(x.into()),
            y: BigRational::from_integer(y.into()),
        }
    }

    pub fn sub(&self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn add(&self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn scale(&self, k: &BigRational) -> Point {
        Point::new(&self.x * k, &self.y * k)
    }

    /// `self + t (other - self)`.
    pub fn lerp(&self, other: &Point, t: &BigRational) -> Point {
        self.add(&other.sub(self).scale(t))
    }
}

/// Sign of the cross product `(b - a) × (c - a)`: positive for a left turn.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Ordering {
    let ab = b.sub(a);
    let ac = c.sub(a);
    let cross = &ab.x * &ac.y - &ab.y * &ac.x;
    cross.cmp(&BigRational::zero())
}

/// For `p` collinear with `a, b`: is it within the closed segment?
fn within(a: &Point, b: &Point, p: &Point) -> bool {
    let (lx, hx) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (ly, hy) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    lx <= &p.x && &p.x <= hx && ly <= &p.y && &p.y <= hy
}

pub fn on_segment(a: &Point, b: &Point, p: &Point) -> bool {
    orient(a, b, p) == Ordering::Equal && within(a, b, p)
}

/// Closed-segment intersection test.
pub fn segments_intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 != o2 && o3 != o4 && o1 != Ordering::Equal && o2 != Ordering::Equal
        && o3 != Ordering::Equal && o4 != Ordering::Equal
    {
        return true;
    }
    (o1 == Ordering::Equal && within(a, b, c))
        || (o2 == Ordering::Equal && within(a, b, d))
        || (o3 == Ordering::Equal && within(c, d, a))
        || (o4 == Ordering::Equal && within(c, d, b))
}

/// Strict convex hull in clockwise order (collinear boundary points dropped).
pub fn convex_hull_cw(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p) != Ordering::Greater
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p) != Ordering::Greater
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower.reverse();
    lower
}

/// Position of `p` on the closed polygon boundary as `(edge index, fraction in [0,1))`.
pub fn boundary_position(hull: &[Point], p: &Point) -> Option<(usize, BigRational)> {
    let k = hull.len();
    for i in 0..k {
        let a = &hull[i];
        let b = &hull[(i + 1) % k];
        if on_segment(a, b, p) && p != b {
            let d = b.sub(a);
            let t = if !d.x.is_zero() {
                (&p.x - &a.x) / &d.x
            } else {
                (&p.y - &a.y) / &d.y
            };
            return Some((i, t));
        }
    }
    None
}

/// Scalar coordinate along the line through collinear points.
pub fn line_parameter(origin: &Point, dir: &Point, p: &Point) -> BigRational {
    let d = p.sub(origin);
    if !dir.x.is_zero() {
        d.x / &dir.x
    } else {
        d.y / &dir.y
    }
}

pub fn all_collinear(points: &[Point]) -> bool {
    let Some(a) = points.first() else { return true };
    let Some(b) = points.iter().find(|p| *p != a) else { return true };
    points.iter().all(|p| orient(a, b, p) == Ordering::Equal)
}
