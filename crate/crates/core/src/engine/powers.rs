use std::collections::BTreeMap;

use crate::arith::{BigComplex, Magnitude, Precision};

/// Powers of one point computed on demand during a single evaluation.
///
/// Each entry carries a bound on its relative error. `z^(2^j)` are built by
/// squaring; any other power `n` is the product of the largest cached power
/// not exceeding `n` and, recursively, the remainder.
pub(crate) struct PowerCache<'a> {
    z: &'a BigComplex,
    prec: Precision,
    unit: Magnitude,
    map: BTreeMap<usize, (BigComplex, Magnitude)>,
    top_square: usize,
    pub(crate) multiplications: u64,
}

impl<'a> PowerCache<'a> {
    pub(crate) fn new(z: &'a BigComplex, prec: Precision, unit: Magnitude) -> PowerCache<'a> {
        let mut map = BTreeMap::new();
        map.insert(1, (z.clone(), Magnitude::ZERO));
        PowerCache { z, prec, unit, map, top_square: 1, multiplications: 0 }
    }

    pub(crate) fn base(&self) -> &'a BigComplex {
        self.z
    }

    /// `z^n` for `n >= 1` and its relative error bound.
    pub(crate) fn get(&mut self, n: usize) -> (&BigComplex, Magnitude) {
        assert!(n >= 1);
        self.compute(n);
        let (v, r) = &self.map[&n];
        (v, *r)
    }

    fn compute(&mut self, n: usize) {
        if self.map.contains_key(&n) {
            return;
        }
        while self.top_square <= n / 2 {
            let t = self.top_square;
            let (v, r) = &self.map[&t];
            let sq = v.square(self.prec);
            let rel = self.product_error(*r, *r);
            self.map.insert(2 * t, (sq, rel));
            self.top_square = 2 * t;
            self.multiplications += 1;
        }
        let c = *self.map.range(..=n).next_back().unwrap().0;
        if c == n {
            return;
        }
        self.compute(n - c);
        let (a, ra) = &self.map[&c];
        let (b, rb) = &self.map[&(n - c)];
        let v = a.mul(b, self.prec);
        let rel = self.product_error(*ra, *rb);
        self.map.insert(n, (v, rel));
        self.multiplications += 1;
    }

    /// `(1 + a)(1 + b)(1 + u) - 1`.
    fn product_error(&self, a: Magnitude, b: Magnitude) -> Magnitude {
        let ab = a + b + a * b;
        ab + self.unit * (Magnitude::ONE + ab)
    }
}
