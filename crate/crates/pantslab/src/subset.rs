//! Subsets of `{0,...,n}` stored as bitmasks.
//!
//! Ground sets stay small (n <= ~12, plus one ghost slot), so a `u32` mask
//! keeps every exhaustive enumeration cheap and every value `Copy`.

use std::fmt;

/// The ground set `{0,...,n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    n: u32,
}

impl GroundSet {
    /// Ground set `{0,...,n}`; requires `n >= 1`.
    pub fn new(n: u32) -> crate::Result<Self> {
        if n == 0 {
            return Err(crate::Error::Invalid("ground set needs n >= 1".into()));
        }
        if n > 30 {
            return Err(crate::Error::Invalid(format!(
                "n = {n} exceeds the supported bitmask width"
            )));
        }
        Ok(GroundSet { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of elements, `n + 1`.
    pub fn size(&self) -> u32 {
        self.n + 1
    }

    /// All elements as a subset.
    pub fn elements(&self) -> Subset {
        Subset::full(self.n + 1)
    }
}

/// A subset of `{0,...,31}` as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// `{0,...,width-1}`.
    pub fn full(width: u32) -> Self {
        debug_assert!(width <= 31);
        Subset((1u32 << width) - 1)
    }

    pub fn singleton(e: u32) -> Self {
        Subset(1 << e)
    }

    pub fn contains(self, e: u32) -> bool {
        self.0 >> e & 1 == 1
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[must_use]
    pub fn with(self, e: u32) -> Self {
        Subset(self.0 | 1 << e)
    }

    #[must_use]
    pub fn without(self, e: u32) -> Self {
        Subset(self.0 & !(1 << e))
    }

    #[must_use]
    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    #[must_use]
    pub fn intersect(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    #[must_use]
    pub fn minus(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn meets(self, other: Subset) -> bool {
        self.0 & other.0 != 0
    }

    pub fn min_elem(self) -> Option<u32> {
        if self.is_empty() {
            None
        } else {
            Some(self.0.trailing_zeros())
        }
    }

    pub fn max_elem(self) -> Option<u32> {
        if self.is_empty() {
            None
        } else {
            Some(31 - self.0.leading_zeros())
        }
    }

    /// Elements in ascending order.
    pub fn iter(self) -> impl Iterator<Item = u32> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let e = bits.trailing_zeros();
                bits &= bits - 1;
                Some(e)
            }
        })
    }

    /// All subsets of `self`, ascending by bitmask value.
    pub fn subsets(self) -> Vec<Subset> {
        let m = self.0;
        let mut out = Vec::with_capacity(1 << self.len());
        // ascending enumeration of submasks of m
        let mut s: u32 = 0;
        loop {
            out.push(Subset(s));
            if s == m {
                break;
            }
            s = (s.wrapping_sub(m)) & m;
        }
        out
    }

    /// All non-empty subsets of `self`, ascending by bitmask value.
    pub fn subsets_nonempty(self) -> Vec<Subset> {
        self.subsets().into_iter().filter(|s| !s.is_empty()).collect()
    }

    /// Subsets of `self` with exactly `k` elements, ascending.
    pub fn subsets_of_size(self, k: u32) -> Vec<Subset> {
        self.subsets().into_iter().filter(|s| s.len() == k).collect()
    }
}

impl FromIterator<u32> for Subset {
    fn from_iter<T: IntoIterator<Item = u32>>(iter: T) -> Self {
        let mut bits = 0u32;
        for e in iter {
            bits |= 1 << e;
        }
        Subset(bits)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
