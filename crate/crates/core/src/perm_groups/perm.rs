use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Bijection of `{0, ..., n-1}` stored as its image list.
///
/// Products act on the right: `a.mul(&b)` applies `a` first, then `b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (0..n as u32).collect() }
    }

    /// Validates that `images` is a bijection.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::Parse(format!("image list is not a bijection on {n} points")));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    /// Product of disjoint or overlapping cycles, applied left to right.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut p = Self::identity(n);
        for cyc in cycles {
            let mut c = Self::identity(n);
            for (k, &a) in cyc.iter().enumerate() {
                let b = cyc[(k + 1) % cyc.len()];
                if a as usize >= n || b as usize >= n {
                    return Err(Error::Range(format!("cycle entry outside 0..{n}")));
                }
                c.images[a as usize] = b;
            }
            p = p.mul(&Self::from_images(c.images)?);
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn image(&self, i: u32) -> u32 {
        self.images[i as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Apply `self`, then `other`.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Self { images: self.images.iter().map(|&i| other.images[i as usize]).collect() }
    }

    /// Function composition `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Self) -> Self {
        other.mul(self)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Self { images: inv }
    }

    pub fn pow(&self, e: i64) -> Self {
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `other⁻¹ · self · other`.
    pub fn conjugate_by(&self, other: &Self) -> Self {
        let mut out = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            out[other.images[i] as usize] = other.images[j as usize];
        }
        Self { images: out }
    }

    /// Cycles of length at least 2, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start as u32];
            seen[start] = true;
            let mut j = self.images[start] as usize;
            while j != start {
                seen[j] = true;
                cyc.push(j as u32);
                j = self.images[j] as usize;
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.images[j] as usize;
                len += 1;
            }
            lens.push(len);
        }
        CycleType::from_lengths(lens)
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|&(i, &j)| i as u32 == j).count()
    }

    /// Element order, the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_type().lcm()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, i) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("permutation must be bracketed: {s:?}")))?;
        let images = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad image {t:?}"))))
                .collect::<Result<Vec<_>>>()?
        };
        Self::from_images(images)
    }
}

/// Multiset of cycle lengths, fixed points included as 1-cycles.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CycleType {
    parts: BTreeMap<u32, u32>,
}

impl CycleType {
    pub fn from_lengths(lengths: impl IntoIterator<Item = u32>) -> Self {
        let mut parts = BTreeMap::new();
        for l in lengths {
            if l > 0 {
                *parts.entry(l).or_insert(0) += 1;
            }
        }
        Self { parts }
    }

    /// Pairs `(cycle length, count)` in increasing length.
    pub fn parts(&self) -> &BTreeMap<u32, u32> {
        &self.parts
    }

    /// Sum of `length · count`.
    pub fn degree(&self) -> u32 {
        self.parts.iter().map(|(l, c)| l * c).sum()
    }

    pub fn lcm(&self) -> u64 {
        self.parts.keys().fold(1u64, |acc, &l| {
            let l = l as u64;
            acc / gcd(acc, l) * l
        })
    }

    /// Even permutations have an even number of even-length cycles.
    pub fn is_even(&self) -> bool {
        self.parts.iter().filter(|(l, _)| *l % 2 == 0).map(|(_, c)| c).sum::<u32>() % 2 == 0
    }

    pub fn lengths(&self) -> Vec<u32> {
        self.parts.iter().flat_map(|(&l, &c)| std::iter::repeat_n(l, c as usize)).collect()
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Compact exponent notation, e.g. `1^2 7`.
impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (l, c) in &self.parts {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if *c == 1 {
                write!(f, "{l}")?;
            } else {
                write!(f, "{l}^{c}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycleType({self})")
    }
}

impl FromStr for CycleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = BTreeMap::new();
        for tok in s.split_whitespace() {
            let (l, c) = match tok.split_once('^') {
                Some((l, c)) => (l, c),
                None => (tok, "1"),
            };
            let l: u32 = l.parse().map_err(|_| Error::Parse(format!("bad cycle length {tok:?}")))?;
            let c: u32 = c.parse().map_err(|_| Error::Parse(format!("bad cycle count {tok:?}")))?;
            if l == 0 || c == 0 {
                return Err(Error::Parse(format!("empty cycle part {tok:?}")));
            }
            *parts.entry(l).or_insert(0) += c;
        }
        Ok(Self { parts })
    }
}
