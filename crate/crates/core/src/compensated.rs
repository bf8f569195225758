//! Double-double accumulation for sums that cancel to nearly zero.
//!
//! A value is kept as an unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`,
//! giving roughly 106 bits of significand. Products are split exactly with a
//! fused multiply-add.

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub(crate) struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd {
        hi: s,
        lo: b - (s - a),
    }
}

impl Dd {
    pub(crate) fn value(self) -> f64 {
        self.hi + self.lo
    }

    pub(crate) fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        quick_two_sum(s, e + self.lo + o.lo)
    }

    pub(crate) fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    /// `self + a * b` with the product split exactly.
    pub(crate) fn add_prod(self, a: f64, b: f64) -> Dd {
        let p = a * b;
        let pe = a.mul_add(b, -p);
        let (s, e) = two_sum(self.hi, p);
        quick_two_sum(s, e + pe + self.lo)
    }

    pub(crate) fn sqr(self) -> Dd {
        let p = self.hi * self.hi;
        let e = self.hi.mul_add(self.hi, -p) + 2.0 * self.hi * self.lo;
        quick_two_sum(p, e)
    }

    pub(crate) fn scale2(self) -> Dd {
        Dd {
            hi: 2.0 * self.hi,
            lo: 2.0 * self.lo,
        }
    }
}
