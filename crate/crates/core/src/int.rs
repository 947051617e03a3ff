//! Exact integer vectors.
//!
//! Entries are stored as `i64` while every entry fits, and promoted to
//! [`BigInt`] as soon as one does not. The two representations never coexist
//! for the same value: a vector whose entries all fit in `i64` is always held
//! in the small form, so derived equality and hashing are value based.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

/// A dense vector of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntVec(Repr);

impl IntVec {
    pub fn zeros(len: usize) -> Self {
        IntVec(Repr::Small(vec![0; len]))
    }

    pub fn from_i64(entries: Vec<i64>) -> Self {
        IntVec(Repr::Small(entries))
    }

    pub fn from_big(entries: Vec<BigInt>) -> Self {
        let small: Option<Vec<i64>> = entries.iter().map(|e| e.to_i64()).collect();
        match small {
            Some(s) => IntVec(Repr::Small(s)),
            None => IntVec(Repr::Big(entries)),
        }
    }

    fn from_i128(entries: Vec<i128>) -> Self {
        let small: Option<Vec<i64>> = entries.iter().map(|&e| i64::try_from(e).ok()).collect();
        match small {
            Some(s) => IntVec(Repr::Small(s)),
            None => IntVec(Repr::Big(entries.into_iter().map(BigInt::from).collect())),
        }
    }

    pub fn len(&self) -> usize {
        match &self.0 {
            Repr::Small(v) => v.len(),
            Repr::Big(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, i: usize) -> BigInt {
        match &self.0 {
            Repr::Small(v) => BigInt::from(v[i]),
            Repr::Big(v) => v[i].clone(),
        }
    }

    /// The entry at `i` if it fits in an `i64`.
    pub fn get_i64(&self, i: usize) -> Option<i64> {
        match &self.0 {
            Repr::Small(v) => Some(v[i]),
            Repr::Big(v) => v[i].to_i64(),
        }
    }

    pub fn signum(&self, i: usize) -> Ordering {
        match &self.0 {
            Repr::Small(v) => v[i].cmp(&0),
            Repr::Big(v) => v[i].sign_cmp_zero(),
        }
    }

    pub fn is_zero_at(&self, i: usize) -> bool {
        self.signum(i) == Ordering::Equal
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(v) => v.iter().all(|&e| e == 0),
            Repr::Big(v) => v.iter().all(Zero::is_zero),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        (0..self.len()).all(|i| self.signum(i) != Ordering::Less)
    }

    pub fn to_big_vec(&self) -> Vec<BigInt> {
        match &self.0 {
            Repr::Small(v) => v.iter().map(|&e| BigInt::from(e)).collect(),
            Repr::Big(v) => v.clone(),
        }
    }

    /// The entries as `i64`, if every one of them fits.
    pub fn as_i64_slice(&self) -> Option<&[i64]> {
        match &self.0 {
            Repr::Small(v) => Some(v),
            Repr::Big(_) => None,
        }
    }

    pub fn set(&mut self, i: usize, value: BigInt) {
        match (&mut self.0, value.to_i64()) {
            (Repr::Small(v), Some(x)) => v[i] = x,
            (Repr::Big(v), _) => {
                v[i] = value;
                self.demote();
            }
            (Repr::Small(_), None) => {
                let mut big = self.to_big_vec();
                big[i] = value;
                self.0 = Repr::Big(big);
            }
        }
    }

    pub fn add_at(&mut self, i: usize, delta: &BigInt) {
        if let (Repr::Small(v), Some(d)) = (&mut self.0, delta.to_i64()) {
            if let Some(x) = v[i].checked_add(d) {
                v[i] = x;
                return;
            }
        }
        let value = self.get(i) + delta;
        self.set(i, value);
    }

    fn demote(&mut self) {
        if let Repr::Big(v) = &self.0 {
            if let Some(s) = v.iter().map(|e| e.to_i64()).collect::<Option<Vec<i64>>>() {
                self.0 = Repr::Small(s);
            }
        }
    }

    /// Gcd of the absolute values of all entries; zero for the zero vector.
    pub fn content(&self) -> BigInt {
        match &self.0 {
            Repr::Small(v) => {
                let g = v.iter().fold(0u64, |g, &e| g.gcd(&e.unsigned_abs()));
                BigInt::from(g)
            }
            Repr::Big(v) => v.iter().fold(BigInt::zero(), |g, e| g.gcd(e)),
        }
    }

    /// Divides by the content, keeping signs. The zero vector is unchanged.
    pub fn primitive(&self) -> IntVec {
        let mut out = self.clone();
        out.make_primitive();
        out
    }

    pub fn make_primitive(&mut self) {
        match &mut self.0 {
            Repr::Small(v) => {
                let g = v.iter().fold(0u64, |g, &e| g.gcd(&e.unsigned_abs()));
                if g > 1 {
                    // g > 1 divides every entry, so each quotient fits in i64
                    for e in v.iter_mut() {
                        *e = (i128::from(*e) / i128::from(g)) as i64;
                    }
                }
            }
            Repr::Big(v) => {
                let g = v.iter().fold(BigInt::zero(), |g, e| g.gcd(e));
                if !g.is_zero() && !g.is_one() {
                    for e in v.iter_mut() {
                        *e = &*e / &g;
                    }
                }
                self.demote();
            }
        }
    }

    pub fn scaled(&self, factor: &BigInt) -> IntVec {
        if let (Repr::Small(v), Some(f)) = (&self.0, factor.to_i64()) {
            let out: Vec<i128> = v.iter().map(|&e| i128::from(e) * i128::from(f)).collect();
            return IntVec::from_i128(out);
        }
        IntVec::from_big(self.to_big_vec().into_iter().map(|e| e * factor).collect())
    }

    /// `self + factor * other`, without normalisation.
    pub fn add_scaled(&self, factor: &BigInt, other: &IntVec) -> IntVec {
        debug_assert_eq!(self.len(), other.len());
        if let (Repr::Small(a), Repr::Small(b), Some(f)) = (&self.0, &other.0, factor.to_i64()) {
            let out: Option<Vec<i128>> = a
                .iter()
                .zip(b)
                .map(|(&x, &y)| i128::from(x).checked_add(i128::from(y) * i128::from(f)))
                .collect();
            if let Some(out) = out {
                return IntVec::from_i128(out);
            }
        }
        let a = self.to_big_vec();
        let b = other.to_big_vec();
        IntVec::from_big(a.into_iter().zip(b).map(|(x, y)| x + factor * y).collect())
    }

    /// The primitive form of `a * w - b * u`.
    ///
    /// This is the ray-combination kernel shared by the enumeration and
    /// conversion routines; the raw combination is formed exactly and then
    /// divided by its content.
    pub fn combine_primitive(a: &BigInt, w: &IntVec, b: &BigInt, u: &IntVec) -> IntVec {
        debug_assert_eq!(w.len(), u.len());
        if let (Repr::Small(wv), Repr::Small(uv), Some(a), Some(b)) =
            (&w.0, &u.0, a.to_i64(), b.to_i64())
        {
            let (a, b) = (i128::from(a), i128::from(b));
            let raw: Option<Vec<i128>> = wv
                .iter()
                .zip(uv)
                .map(|(&x, &y)| (a * i128::from(x)).checked_sub(b * i128::from(y)))
                .collect();
            if let Some(mut raw) = raw {
                let g = raw.iter().fold(0u128, |g, &e| g.gcd(&e.unsigned_abs()));
                if g > 1 {
                    let g = g as i128;
                    for e in raw.iter_mut() {
                        *e /= g;
                    }
                }
                return IntVec::from_i128(raw);
            }
        }
        let wv = w.to_big_vec();
        let uv = u.to_big_vec();
        let mut out = IntVec::from_big(wv.into_iter().zip(uv).map(|(x, y)| a * x - b * y).collect());
        out.make_primitive();
        out
    }

    /// Dot product with a sparse row of small coefficients.
    pub fn dot_sparse(&self, row: &[(usize, i64)]) -> BigInt {
        if let Repr::Small(v) = &self.0 {
            let mut acc: i128 = 0;
            let mut ok = true;
            for &(i, c) in row {
                match acc.checked_add(i128::from(v[i]) * i128::from(c)) {
                    Some(x) => acc = x,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                return BigInt::from(acc);
            }
        }
        row.iter()
            .map(|&(i, c)| self.get(i) * BigInt::from(c))
            .fold(BigInt::zero(), |a, b| a + b)
    }

    /// Restriction to a list of positions, in the given order.
    pub fn select(&self, positions: &[usize]) -> IntVec {
        match &self.0 {
            Repr::Small(v) => IntVec::from_i64(positions.iter().map(|&p| v[p]).collect()),
            Repr::Big(v) => IntVec::from_big(positions.iter().map(|&p| v[p].clone()).collect()),
        }
    }

    pub fn iter_big(&self) -> impl Iterator<Item = BigInt> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }
}

trait SignCmp {
    fn sign_cmp_zero(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp_zero(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

impl Ord for IntVec {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self
                .iter_big()
                .cmp(other.iter_big())
                .then(self.len().cmp(&other.len())),
        }
    }
}

impl PartialOrd for IntVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..self.len() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.get(i))?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.get(i))?;
        }
        Ok(())
    }
}

impl From<Vec<i64>> for IntVec {
    fn from(v: Vec<i64>) -> Self {
        IntVec::from_i64(v)
    }
}

/// A fixed-length set of coordinate positions, stored as a bitmask.
///
/// Used for zero sets of rays and for the restriction masks of the
/// conversion algorithm.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PositionMask {
    words: Vec<u64>,
}

impl PositionMask {
    pub fn empty(len: usize) -> Self {
        PositionMask { words: vec![0; len.div_ceil(64)] }
    }

    pub fn zero_set(v: &IntVec) -> Self {
        let mut m = PositionMask::empty(v.len());
        match &v.0 {
            Repr::Small(s) => {
                for (i, &e) in s.iter().enumerate() {
                    if e == 0 {
                        m.insert(i);
                    }
                }
            }
            Repr::Big(b) => {
                for (i, e) in b.iter().enumerate() {
                    if e.is_zero() {
                        m.insert(i);
                    }
                }
            }
        }
        m
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn intersection(&self, other: &PositionMask) -> PositionMask {
        PositionMask {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn intersect_with(&mut self, other: &PositionMask) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn is_subset_of(&self, other: &PositionMask) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn primitive_divides_by_gcd() {
        let v = IntVec::from_i64(vec![2, 2, 4]);
        assert_eq!(v.primitive(), IntVec::from_i64(vec![1, 1, 2]));
        assert_eq!(IntVec::zeros(3).primitive(), IntVec::zeros(3));
        let n = IntVec::from_i64(vec![-6, 0, 9]);
        assert_eq!(n.primitive(), IntVec::from_i64(vec![-2, 0, 3]));
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let v = IntVec::from_i64(vec![i64::MAX, 1]);
        let w = v.add_scaled(&big(1), &IntVec::from_i64(vec![i64::MAX, 1]));
        assert_eq!(w.get(0), big(i64::MAX) * 2);
        assert!(w.as_i64_slice().is_none());
        // 2 * MAX and 2 share the factor 2
        assert_eq!(w.primitive(), IntVec::from_i64(vec![i64::MAX, 1]));
        assert!(w.primitive().as_i64_slice().is_some());
    }

    #[test]
    fn combine_matches_bigint_path() {
        let w = IntVec::from_i64(vec![3, 0, -5]);
        let u = IntVec::from_i64(vec![1, 4, 2]);
        let c = IntVec::combine_primitive(&big(2), &w, &big(-3), &u);
        // 2w + 3u = (9, 12, -4)
        assert_eq!(c, IntVec::from_i64(vec![9, 12, -4]));
        let huge = IntVec::from_big(vec![big(i64::MAX) * 4, big(0), big(8)]);
        let c = IntVec::combine_primitive(&big(1), &huge, &big(0), &u);
        assert_eq!(c, IntVec::from_big(vec![big(i64::MAX), big(0), big(2)]));
    }

    #[test]
    fn ordering_is_lexicographic_across_representations() {
        let a = IntVec::from_i64(vec![1, 2]);
        let b = IntVec::from_big(vec![big(i64::MAX) * 3, big(0)]);
        assert!(a < b);
        assert_eq!(a.cmp(&a.clone()), Ordering::Equal);
    }

    #[test]
    fn zero_masks() {
        let v = IntVec::from_i64(vec![0, 3, 0, -1]);
        let z = PositionMask::zero_set(&v);
        assert!(z.contains(0) && z.contains(2) && !z.contains(1));
        assert_eq!(z.count(), 2);
        let all = PositionMask::zero_set(&IntVec::zeros(4));
        assert!(z.is_subset_of(&all));
        assert!(!all.is_subset_of(&z));
    }
}
