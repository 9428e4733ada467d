//! Deterministic instance sampling for the verification suites.
//!
//! A fixed-seed SplitMix64 stream keeps every random suite byte-reproducible
//! across runs and platforms. Demands are drawn as multiples of a small
//! denominator so exact ties between agents actually occur.

use crate::model::{Instance, Tightness};
use crate::rational::{q, Q};

#[derive(Debug, Clone)]
pub struct Sampler {
    state: u64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform-ish value in `0..bound` (`bound >= 1`).
    pub fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound >= 1);
        self.next_u64() % bound
    }

    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below((hi - lo + 1) as u64) as usize
    }

    /// A rational in `[0,1]` with denominator at most `denom`.
    pub fn unit_rational(&mut self, denom: i64) -> Q {
        let d = 1 + self.below(denom as u64) as i64;
        let n = self.below(d as u64 + 1) as i64;
        q(n, d)
    }

    /// Picks a working denominator for one instance.
    fn pick_denominator(&mut self) -> i64 {
        [6, 8, 12, 20, 60][self.below(5) as usize]
    }

    /// A composition of `target` into `parts` non-negative integers, drawn by
    /// sorting random cut points.
    fn composition(&mut self, target: u64, parts: usize) -> Vec<u64> {
        let mut cuts: Vec<u64> = (0..parts - 1).map(|_| self.below(target + 1)).collect();
        cuts.sort_unstable();
        let mut out = Vec::with_capacity(parts);
        let mut prev = 0;
        for c in cuts {
            out.push(c - prev);
            prev = c;
        }
        out.push(target - prev);
        out
    }

    /// A row of `m` demands summing to exactly 1, in multiples of `1/denom`.
    pub fn tight_row(&mut self, m: usize, denom: i64) -> Vec<Q> {
        self.composition(denom as u64, m)
            .into_iter()
            .map(|g| q(g as i64, denom))
            .collect()
    }

    /// A row of `m` demands summing to at most 1.
    pub fn general_row(&mut self, m: usize, denom: i64) -> Vec<Q> {
        let mut parts = self.composition(denom as u64, m + 1);
        parts.pop();
        parts.into_iter().map(|g| q(g as i64, denom)).collect()
    }

    pub fn instance(&mut self, n: usize, m: usize, tightness: Tightness) -> Instance {
        let denom = self.pick_denominator();
        let rows = (0..n)
            .map(|_| match tightness {
                Tightness::Tight => self.tight_row(m, denom),
                Tightness::General => self.general_row(m, denom),
            })
            .collect();
        Instance::validate(rows, tightness).expect("sampled rows satisfy the mass constraint")
    }

    /// Random sizes in the given inclusive ranges.
    pub fn sized_instance(
        &mut self,
        n_range: (usize, usize),
        m_range: (usize, usize),
        tightness: Tightness,
    ) -> Instance {
        let n = self.range(n_range.0, n_range.1);
        let m = self.range(m_range.0, m_range.1);
        self.instance(n, m, tightness)
    }
}
