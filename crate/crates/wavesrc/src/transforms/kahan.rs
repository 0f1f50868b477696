//! Compensated summation.
//!
//! Every quadrature reduction in the crate runs in a fixed node order with
//! one of these accumulators, so results are bit-identical from run to run
//! and independent of how callers parallelize *across* reductions.

use num_complex::Complex64;

/// Kahan–Neumaier compensated sum of f64 terms.
#[derive(Debug, Clone, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        KahanSum::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated sum of complex terms (independent real/imaginary parts).
#[derive(Debug, Clone, Default)]
pub struct KahanComplex {
    re: KahanSum,
    im: KahanSum,
}

impl KahanComplex {
    pub fn new() -> Self {
        KahanComplex::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Number of terms summed plainly before the partial is pushed into the
/// compensated accumulator. Chosen so block-local rounding stays near machine
/// epsilon while hot loops avoid the 4x cost of full per-term compensation.
const BLOCK: usize = 4096;

/// Blocked compensated sum: plain f64 addition within fixed-size blocks,
/// Kahan across blocks. Same fixed-order determinism as [`KahanSum`] at a
/// fraction of the cost; accuracy loss is bounded by BLOCK * eps per block.
#[derive(Debug, Clone, Default)]
pub struct BlockedSum {
    block: f64,
    filled: usize,
    carry: KahanSum,
}

impl BlockedSum {
    pub fn new() -> Self {
        BlockedSum::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        self.block += x;
        self.filled += 1;
        if self.filled == BLOCK {
            self.carry.add(self.block);
            self.block = 0.0;
            self.filled = 0;
        }
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.carry.value() + self.block
    }
}

/// Complex counterpart of [`BlockedSum`].
#[derive(Debug, Clone, Default)]
pub struct BlockedComplex {
    re: BlockedSum,
    im: BlockedSum,
}

impl BlockedComplex {
    pub fn new() -> Self {
        BlockedComplex::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

// ---------------------------------------------------------------------------
