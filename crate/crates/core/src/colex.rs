//! Colex and r-partite colex orders on k-sets, ranking, initial segments and shadows.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt::Write as _;

use itertools::Itertools;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColexError {
    #[error("sets have different sizes ({0} and {1})")]
    SizeMismatch(usize, usize),
    #[error("set elements must be positive and strictly increasing: {0:?}")]
    NotStrictlyIncreasing(Vec<u32>),
    #[error("shadow level {p} must satisfy 1 <= p < k = {k}")]
    ShadowLevel { p: usize, k: usize },
    #[error("k = {k} exceeds r = {r}: no r-partite k-sets exist")]
    TooManyParts { k: usize, r: usize },
    #[error("r must be at least 2, got {0}")]
    PartCount(usize),
    #[error("k must be at least 1")]
    ZeroK,
    #[error("family mixes set sizes {0} and {1}")]
    MixedSizes(usize, usize),
    #[error("duplicate set {0:?}")]
    DuplicateSet(Vec<u32>),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// `binom(n, k)`, or `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        let num = acc.checked_mul((n - i) as u128)?;
        acc = num / (i as u128 + 1);
    }
    Some(acc)
}

fn binom_exact(n: u64, k: u64) -> u128 {
    binomial(n, k).expect("binomial coefficient overflowed 128 bits")
}

/// A finite set of positive integers, stored in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KSet(Vec<u32>);

impl KSet {
    pub fn new(elements: Vec<u32>) -> Result<Self, ColexError> {
        if elements.first() == Some(&0) || elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ColexError::NotStrictlyIncreasing(elements));
        }
        Ok(KSet(elements))
    }

    /// Sorts and deduplicates-checks arbitrary input.
    pub fn from_unsorted(mut elements: Vec<u32>) -> Result<Self, ColexError> {
        elements.sort_unstable();
        KSet::new(elements)
    }

    pub fn elements(&self) -> &[u32] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn max(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn is_subset(&self, other: &KSet) -> bool {
        self.0.iter().all(|x| other.0.binary_search(x).is_ok())
    }

    /// The next k-set in colex order.
    pub fn colex_successor(&self) -> KSet {
        let a = &self.0;
        let k = a.len();
        let mut next = a.clone();
        for i in 0..k {
            let bumpable = i + 1 == k || a[i] + 1 < a[i + 1];
            if bumpable {
                next[i] += 1;
                for (j, x) in next.iter_mut().enumerate().take(i) {
                    *x = j as u32 + 1;
                }
                return KSet(next);
            }
        }
        KSet(next)
    }

    /// Whether the elements lie in pairwise distinct residue classes mod `r`.
    pub fn is_rpartite(&self, r: usize) -> bool {
        let r = r as u32;
        let mut seen = BTreeSet::new();
        self.0.iter().all(|&x| seen.insert(x % r))
    }
}

impl std::fmt::Display for KSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

impl Ord for KSet {
    /// Colex on equal sizes; smaller sets first otherwise.
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| {
            for (a, b) in self.0.iter().rev().zip(other.0.iter().rev()) {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for KSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `A < B` iff the largest element of `A △ B` lies in `B`.
pub fn colex_compare(a: &KSet, b: &KSet) -> Result<Ordering, ColexError> {
    if a.k() != b.k() {
        return Err(ColexError::SizeMismatch(a.k(), b.k()));
    }
    Ok(a.cmp(b))
}

/// 0-based position of `a` among all `|a|`-sets of positive integers in colex order.
pub fn colex_rank(a: &KSet) -> u128 {
    a.0.iter()
        .enumerate()
        .map(|(i, &x)| binom_exact(x as u64 - 1, i as u64 + 1))
        .fold(0u128, |acc, b| acc.checked_add(b).expect("colex rank overflowed 128 bits"))
}

/// Inverse of [`colex_rank`].
pub fn colex_unrank(mut rank: u128, k: usize) -> Result<KSet, ColexError> {
    if k == 0 {
        return Err(ColexError::ZeroK);
    }
    let mut out = vec![0u32; k];
    for i in (1..=k as u64).rev() {
        // largest c with binom(c, i) <= rank
        let fits = |c: u64| binomial(c, i).is_some_and(|b| b <= rank);
        let mut lo = i - 1;
        let mut hi = i;
        while fits(hi) {
            lo = hi;
            hi *= 2;
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if fits(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        rank -= binom_exact(lo, i);
        out[i as usize - 1] = lo as u32 + 1;
    }
    Ok(KSet(out))
}

/// A family of distinct k-sets, kept sorted in colex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KSetFamily {
    k: usize,
    sets: Vec<KSet>,
}

impl KSetFamily {
    pub fn new(k: usize, sets: Vec<KSet>) -> Result<Self, ColexError> {
        for s in &sets {
            if s.k() != k {
                return Err(ColexError::MixedSizes(k, s.k()));
            }
        }
        let mut sets = sets;
        sets.sort();
        if let Some(w) = sets.windows(2).find(|w| w[0] == w[1]) {
            return Err(ColexError::DuplicateSet(w[0].0.clone()));
        }
        Ok(KSetFamily { k, sets })
    }

    fn from_sorted(k: usize, sets: Vec<KSet>) -> Self {
        debug_assert!(sets.windows(2).all(|w| w[0] < w[1]));
        KSetFamily { k, sets }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[KSet] {
        &self.sets
    }

    pub fn contains(&self, s: &KSet) -> bool {
        self.sets.binary_search(s).is_ok()
    }

    pub fn is_subfamily(&self, other: &KSetFamily) -> bool {
        self.sets.iter().all(|s| other.contains(s))
    }

    /// `∂_p`: every p-subset of some member.
    pub fn shadow(&self, p: usize) -> Result<KSetFamily, ColexError> {
        if p == 0 || p >= self.k {
            return Err(ColexError::ShadowLevel { p, k: self.k });
        }
        let all: BTreeSet<KSet> = self
            .sets
            .iter()
            .flat_map(|s| s.0.iter().copied().combinations(p).map(KSet))
            .collect();
        Ok(KSetFamily::from_sorted(p, all.into_iter().collect()))
    }

    /// Parses one set per line, elements separated by whitespace. `k` is taken
    /// from the first set; an empty input needs `k` supplied.
    pub fn parse(text: &str, k: Option<usize>) -> Result<KSetFamily, ColexError> {
        let mut sets = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let elems = line
                .split_whitespace()
                .map(|t| t.parse::<u32>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| ColexError::Parse { line: i + 1, msg: e.to_string() })?;
            sets.push(KSet::new(elems)?);
        }
        let k = k.or_else(|| sets.first().map(KSet::k)).ok_or(ColexError::ZeroK)?;
        KSetFamily::new(k, sets)
    }

    /// One set per line, ascending elements, families in colex order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.sets {
            writeln!(out, "{}", s.0.iter().join(" ")).unwrap();
        }
        out
    }
}

/// Convenience for `KSetFamily::shadow`.
pub fn shadow(family: &KSetFamily, p: usize) -> Result<KSetFamily, ColexError> {
    family.shadow(p)
}

fn first_kset(k: usize) -> KSet {
    KSet((1..=k as u32).collect())
}

/// The first `size` k-sets in colex order.
pub fn colex_initial_segment(k: usize, size: usize) -> Result<KSetFamily, ColexError> {
    if k == 0 {
        return Err(ColexError::ZeroK);
    }
    let sets = std::iter::successors(Some(first_kset(k)), |s| Some(s.colex_successor()))
        .take(size)
        .collect();
    Ok(KSetFamily::from_sorted(k, sets))
}

/// `|∂_p|` of the colex initial segment of the given size: the least shadow
/// any family of that size can have.
pub fn kk_min_shadow(k: usize, size: usize, p: usize) -> Result<usize, ColexError> {
    if p == 0 || p >= k {
        return Err(ColexError::ShadowLevel { p, k });
    }
    Ok(colex_initial_segment(k, size)?.shadow(p)?.len())
}

/// Whether `a` has one element in each of distinct residue classes mod `r`.
pub fn rpartite_valid(a: &KSet, r: usize) -> bool {
    a.is_rpartite(r)
}

/// Valid k-sets in colex order, filtered from the full colex stream.
pub fn rpartite_colex_iter(r: usize, k: usize) -> Result<impl Iterator<Item = KSet>, ColexError> {
    if r < 2 {
        return Err(ColexError::PartCount(r));
    }
    if k == 0 {
        return Err(ColexError::ZeroK);
    }
    if k > r {
        return Err(ColexError::TooManyParts { k, r });
    }
    Ok(std::iter::successors(Some(first_kset(k)), |s| Some(s.colex_successor())).filter(move |s| s.is_rpartite(r)))
}

/// The first `size` k-sets in r-partite colex order.
pub fn rpartite_colex_initial_segment(r: usize, k: usize, size: usize) -> Result<KSetFamily, ColexError> {
    let sets = rpartite_colex_iter(r, k)?.take(size).collect();
    Ok(KSetFamily::from_sorted(k, sets))
}

/// `|∂_p|` of the r-partite colex initial segment: the least shadow of an
/// r-partite family of that size.
pub fn ffk_min_shadow(r: usize, k: usize, size: usize, p: usize) -> Result<usize, ColexError> {
    if p == 0 || p >= k {
        return Err(ColexError::ShadowLevel { p, k });
    }
    Ok(rpartite_colex_initial_segment(r, k, size)?.shadow(p)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ks(v: &[u32]) -> KSet {
        KSet::new(v.to_vec()).unwrap()
    }

    fn fam(k: usize, v: &[&[u32]]) -> KSetFamily {
        KSetFamily::new(k, v.iter().map(|s| ks(s)).collect()).unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), Some(10));
        assert_eq!(binomial(2, 5), Some(0));
        assert_eq!(binomial(0, 0), Some(1));
        assert_eq!(binomial(60, 30), Some(118264581564861424));
        assert_eq!(binomial(200, 100), None);
    }

    #[test]
    fn kset_validation() {
        assert!(KSet::new(vec![2, 2]).is_err());
        assert!(KSet::new(vec![0, 2]).is_err());
        assert!(KSet::new(vec![3, 1]).is_err());
        assert_eq!(KSet::from_unsorted(vec![3, 1]).unwrap(), ks(&[1, 3]));
    }

    #[test]
    fn compare() {
        assert_eq!(colex_compare(&ks(&[1, 3]), &ks(&[2, 3])), Ok(Ordering::Less));
        assert_eq!(colex_compare(&ks(&[2, 3]), &ks(&[1, 4])), Ok(Ordering::Less));
        assert_eq!(colex_compare(&ks(&[2, 5]), &ks(&[2, 5])), Ok(Ordering::Equal));
        assert_eq!(colex_compare(&ks(&[1]), &ks(&[1, 2])), Err(ColexError::SizeMismatch(1, 2)));
    }

    #[test]
    fn rank_and_unrank() {
        assert_eq!(colex_rank(&ks(&[1, 2])), 0);
        assert_eq!(colex_rank(&ks(&[2, 4])), 4);
        assert_eq!(colex_unrank(4, 2).unwrap(), ks(&[2, 4]));
        assert_eq!(colex_unrank(0, 3).unwrap(), ks(&[1, 2, 3]));
        assert!(colex_unrank(0, 0).is_err());
    }

    #[test]
    fn successor_matches_listing() {
        let listed: Vec<KSet> = colex_initial_segment(2, 5).unwrap().sets().to_vec();
        assert_eq!(listed, vec![ks(&[1, 2]), ks(&[1, 3]), ks(&[2, 3]), ks(&[1, 4]), ks(&[2, 4])]);
    }

    #[test]
    fn rank_unrank_on_first_ranks() {
        for k in 1..=5 {
            let mut s = first_kset(k);
            for r in 0..10_000u128 {
                assert_eq!(colex_rank(&s), r);
                assert_eq!(colex_unrank(r, k).unwrap(), s);
                s = s.colex_successor();
            }
        }
    }

    #[test]
    fn shadows() {
        assert_eq!(fam(3, &[&[1, 2, 3]]).shadow(2).unwrap().len(), 3);
        let sh = fam(3, &[&[1, 2, 3], &[1, 2, 4]]).shadow(2).unwrap();
        assert_eq!(sh, fam(2, &[&[1, 2], &[1, 3], &[2, 3], &[1, 4], &[2, 4]]));
        assert_eq!(fam(4, &[&[2, 3, 5, 9]]).shadow(3).unwrap().len(), 4);
        assert_eq!(fam(3, &[&[1, 2, 3]]).shadow(3), Err(ColexError::ShadowLevel { p: 3, k: 3 }));
        assert_eq!(fam(3, &[&[1, 2, 3]]).shadow(0), Err(ColexError::ShadowLevel { p: 0, k: 3 }));
    }

    #[test]
    fn kruskal_katona_segments() {
        assert_eq!(kk_min_shadow(3, 10, 2).unwrap(), 10);
        assert_eq!(kk_min_shadow(3, 2, 2).unwrap(), 5);
        assert_eq!(kk_min_shadow(2, 3, 1).unwrap(), 3);
    }

    #[test]
    fn rpartite_segments() {
        assert!(!rpartite_valid(&ks(&[3, 9]), 3));
        assert!(rpartite_valid(&ks(&[1, 9]), 3));
        assert_eq!(
            rpartite_colex_initial_segment(3, 2, 4).unwrap(),
            fam(2, &[&[1, 2], &[1, 3], &[2, 3], &[2, 4]])
        );
        for (r, k) in [(3, 2), (4, 3), (5, 5)] {
            for p in 1..k {
                assert_eq!(ffk_min_shadow(r, k, 1, p).unwrap() as u128, binomial(k as u64, p as u64).unwrap());
            }
        }
        assert!(matches!(rpartite_colex_initial_segment(2, 3, 1), Err(ColexError::TooManyParts { k: 3, r: 2 })));
    }

    #[test]
    fn family_text_round_trip() {
        let f = fam(3, &[&[1, 2, 4], &[1, 2, 3]]);
        assert_eq!(f.to_text(), "1 2 3\n1 2 4\n");
        assert_eq!(KSetFamily::parse(&f.to_text(), None).unwrap(), f);
        assert!(KSetFamily::parse("1 2\n1 2 3\n", None).is_err());
        assert!(KSetFamily::parse("1 2\n2 1\n", None).is_err());
    }

    #[test]
    fn shadow_of_segment_is_segment() {
        for k in 2..=4 {
            for size in 0..40 {
                let seg = colex_initial_segment(k, size).unwrap();
                for p in 1..k {
                    let sh = seg.shadow(p).unwrap();
                    assert_eq!(sh, colex_initial_segment(p, sh.len()).unwrap());
                }
            }
        }
        for r in 2..=4 {
            for k in 2..=r {
                for size in 0..40 {
                    let seg = rpartite_colex_initial_segment(r, k, size).unwrap();
                    for p in 1..k {
                        let sh = seg.shadow(p).unwrap();
                        assert_eq!(sh, rpartite_colex_initial_segment(r, p, sh.len()).unwrap(), "r={r} k={k} size={size} p={p}");
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn unrank_inverts_rank(mut elems in proptest::collection::btree_set(1u32..300, 1..6)) {
            let s = KSet::new(std::mem::take(&mut elems).into_iter().collect()).unwrap();
            prop_assert_eq!(colex_unrank(colex_rank(&s), s.k()).unwrap(), s);
        }

        #[test]
        fn rank_order_matches_colex(
            a in proptest::collection::btree_set(1u32..60, 3),
            b in proptest::collection::btree_set(1u32..60, 3),
        ) {
            let a = KSet::new(a.into_iter().collect()).unwrap();
            let b = KSet::new(b.into_iter().collect()).unwrap();
            prop_assert_eq!(colex_rank(&a).cmp(&colex_rank(&b)), colex_compare(&a, &b).unwrap());
        }

        #[test]
        fn shadow_is_monotone(
            small in proptest::collection::btree_set(proptest::collection::btree_set(1u32..9, 3), 0..6),
            extra in proptest::collection::btree_set(proptest::collection::btree_set(1u32..9, 3), 0..6),
        ) {
            let to_sets = |s: &BTreeSet<BTreeSet<u32>>| -> Vec<KSet> {
                s.iter().map(|x| KSet::new(x.iter().copied().collect()).unwrap()).collect()
            };
            let f = KSetFamily::new(3, to_sets(&small)).unwrap();
            let union: BTreeSet<_> = small.union(&extra).cloned().collect();
            let g = KSetFamily::new(3, to_sets(&union)).unwrap();
            prop_assert!(f.is_subfamily(&g));
            for p in 1..3 {
                prop_assert!(f.shadow(p).unwrap().is_subfamily(&g.shadow(p).unwrap()));
            }
        }
    }
}
