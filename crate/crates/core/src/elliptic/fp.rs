//! Affine arithmetic on `y^2 = x^3 + ax + b` over a prime field `F_p`, `p < 2^32`.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Point {
    Infinity,
    Affine(u64, u64),
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct CurveFp {
    pub p: u64,
    pub a: u64,
    pub b: u64,
}

impl CurveFp {
    pub fn new(p: u64, a: i64, b: i64) -> Self {
        assert!(p < (1 << 32), "field arithmetic assumes p < 2^32");
        CurveFp {
            p,
            a: crate::arith::rem_euclid_u64(a, p),
            b: crate::arith::rem_euclid_u64(b, p),
        }
    }

    #[inline]
    pub fn mul(&self, x: u64, y: u64) -> u64 {
        x * y % self.p
    }

    #[inline]
    fn add_f(&self, x: u64, y: u64) -> u64 {
        let s = x + y;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn sub_f(&self, x: u64, y: u64) -> u64 {
        if x >= y {
            x - y
        } else {
            x + self.p - y
        }
    }

    fn inv(&self, x: u64) -> u64 {
        let (mut r0, mut r1) = (x as i64, self.p as i64);
        let (mut s0, mut s1) = (1i64, 0i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        s0.rem_euclid(self.p as i64) as u64
    }

    /// `x^3 + ax + b`.
    pub fn rhs(&self, x: u64) -> u64 {
        let x2 = self.mul(x, x);
        self.add_f(self.add_f(self.mul(x2, x), self.mul(self.a, x)), self.b)
    }

    pub fn contains(&self, pt: Point) -> bool {
        match pt {
            Point::Infinity => true,
            Point::Affine(x, y) => self.mul(y, y) == self.rhs(x),
        }
    }

    #[cfg(test)]
    pub fn neg(&self, pt: Point) -> Point {
        match pt {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x, self.sub_f(0, y)),
        }
    }

    pub fn double(&self, pt: Point) -> Point {
        match pt {
            Point::Infinity => Point::Infinity,
            Point::Affine(_, 0) => Point::Infinity,
            Point::Affine(x, y) => {
                let num = self.add_f(self.mul(3, self.mul(x, x)), self.a);
                let lambda = self.mul(num, self.inv(self.add_f(y, y)));
                let x3 = self.sub_f(self.mul(lambda, lambda), self.add_f(x, x));
                let y3 = self.sub_f(self.mul(lambda, self.sub_f(x, x3)), y);
                Point::Affine(x3, y3)
            }
        }
    }

    pub fn add(&self, p1: Point, p2: Point) -> Point {
        match (p1, p2) {
            (Point::Infinity, q) | (q, Point::Infinity) => q,
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => {
                if x1 == x2 {
                    if y1 == y2 {
                        return self.double(p1);
                    }
                    return Point::Infinity;
                }
                let lambda = self.mul(self.sub_f(y2, y1), self.inv(self.sub_f(x2, x1)));
                let x3 = self.sub_f(self.sub_f(self.mul(lambda, lambda), x1), x2);
                let y3 = self.sub_f(self.mul(lambda, self.sub_f(x1, x3)), y1);
                Point::Affine(x3, y3)
            }
        }
    }

    pub fn scalar(&self, mut k: u64, pt: Point) -> Point {
        let mut acc = Point::Infinity;
        let mut base = pt;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.double(base);
            k >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_law_closes_on_small_curve() {
        // y^2 = x^3 + 2x + 3 over F_97
        let c = CurveFp::new(97, 2, 3);
        let pts: Vec<Point> = (0..97u64)
            .flat_map(|x| (0..97u64).map(move |y| (x, y)))
            .filter(|&(x, y)| c.mul(y, y) == c.rhs(x))
            .map(|(x, y)| Point::Affine(x, y))
            .chain(std::iter::once(Point::Infinity))
            .collect();
        let n = pts.len() as u64;
        for &p1 in pts.iter().step_by(7) {
            assert_eq!(c.scalar(n, p1), Point::Infinity);
            for &p2 in pts.iter().step_by(11) {
                let s = c.add(p1, p2);
                assert!(c.contains(s));
                assert_eq!(s, c.add(p2, p1));
                assert_eq!(c.add(s, c.neg(p2)), p1);
            }
        }
    }
}
