//! Extended naturals with one infinite level and the fiber-profile calculus.
//!
//! A [`FiberProfile`] records the fiber sizes of a surjection of `Y` onto itself,
//! indexed by the points of `Y`. Entries may be `ω`, and a profile may carry a
//! "rest" flag standing for infinitely many further points whose fibers are
//! singletons. This is enough to express the separations between `D` and `J`
//! that only appear when `Y` is infinite.

use std::fmt;
use std::iter::Sum;
use std::ops::Add;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::transform::{Context, Family, Transformation};

/// Largest index set the exhaustive cover search will explore.
pub const COVER_SEARCH_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtNat {
    Finite(u64),
    /// The countable infinite cardinal.
    Omega,
}

impl ExtNat {
    pub const ZERO: ExtNat = ExtNat::Finite(0);
    pub const ONE: ExtNat = ExtNat::Finite(1);

    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtNat::Finite(k) => Some(k),
            ExtNat::Omega => None,
        }
    }
}

impl From<u64> for ExtNat {
    fn from(k: u64) -> Self {
        ExtNat::Finite(k)
    }
}

impl From<usize> for ExtNat {
    fn from(k: usize) -> Self {
        ExtNat::Finite(k as u64)
    }
}

impl Add for ExtNat {
    type Output = ExtNat;

    fn add(self, rhs: ExtNat) -> ExtNat {
        match (self, rhs) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) => {
                a.checked_add(b).map_or(ExtNat::Omega, ExtNat::Finite)
            }
            _ => ExtNat::Omega,
        }
    }
}

impl Sum for ExtNat {
    fn sum<I: Iterator<Item = ExtNat>>(iter: I) -> ExtNat {
        iter.fold(ExtNat::ZERO, Add::add)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(k) => write!(f, "{k}"),
            ExtNat::Omega => f.write_str("w"),
        }
    }
}

impl FromStr for ExtNat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "w" | "ω" | "omega" => Ok(ExtNat::Omega),
            tok => tok
                .parse::<u64>()
                .map(ExtNat::Finite)
                .map_err(|_| Error::Parse(format!("bad extended natural `{tok}`"))),
        }
    }
}

impl Serialize for ExtNat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtNat::Finite(k) => serializer.serialize_u64(*k),
            ExtNat::Omega => serializer.serialize_str("w"),
        }
    }
}

/// Fiber sizes of a surjection, each at least one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiberProfile {
    sizes: Vec<ExtNat>,
    rest_ones: bool,
}

impl FiberProfile {
    pub fn new(sizes: Vec<ExtNat>, rest_ones: bool) -> Result<Self> {
        if let Some(i) = sizes.iter().position(|&s| s < ExtNat::ONE) {
            return Err(Error::InvalidProfile(format!("entry {i} is zero")));
        }
        if sizes.is_empty() && !rest_ones {
            return Err(Error::InvalidProfile("empty index set".into()));
        }
        Ok(FiberProfile { sizes, rest_ones })
    }

    pub fn finite(sizes: &[u64]) -> Result<Self> {
        FiberProfile::new(sizes.iter().map(|&k| ExtNat::Finite(k)).collect(), false)
    }

    pub fn all_ones(len: usize) -> Self {
        FiberProfile {
            sizes: vec![ExtNat::ONE; len],
            rest_ones: false,
        }
    }

    pub fn sizes(&self) -> &[ExtNat] {
        &self.sizes
    }

    /// True when the profile continues with infinitely many singleton fibers.
    pub fn has_rest(&self) -> bool {
        self.rest_ones
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn is_all_finite(&self) -> bool {
        self.sizes.iter().all(|s| s.is_finite())
    }

    pub fn total(&self) -> ExtNat {
        if self.rest_ones {
            ExtNat::Omega
        } else {
            self.sizes.iter().copied().sum()
        }
    }

    fn count_ones(&self) -> usize {
        self.sizes.iter().filter(|&&s| s == ExtNat::ONE).count()
    }

    fn padded_to(&self, len: usize) -> Vec<ExtNat> {
        let mut sizes = self.sizes.clone();
        sizes.resize(len.max(sizes.len()), ExtNat::ONE);
        sizes
    }
}

impl fmt::Display for FiberProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, s) in self.sizes.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("]")?;
        if self.rest_ones {
            f.write_str("+rest1")?;
        }
        Ok(())
    }
}

impl FromStr for FiberProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (body, rest_ones) = match s.strip_suffix("+rest1") {
            Some(body) => (body.trim_end(), true),
            None => (s, false),
        };
        let inner = body
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected `[w 1 ...]`, got `{s}`")))?;
        let sizes = inner
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<ExtNat>>>()?;
        FiberProfile::new(sizes, rest_ones)
    }
}

impl Serialize for FiberProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Where the rest part of the covered profile is sent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RestPlacement {
    /// The covered profile has no rest part.
    None,
    /// Matched one-to-one with the rest part of the dominating profile.
    Rest,
    /// Absorbed by one infinite entry of the dominating profile.
    Index(usize),
}

/// A disjoint cover `{P_y}` of the covered profile's indices, indexed by the dominating
/// profile's indices. Blocks may be empty.
///
/// When the dominating profile has a rest part, its index list is extended by singleton
/// entries drawn from that rest, one for every explicit singleton of the covered profile,
/// so `blocks` may be longer than the dominating profile's explicit list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexedCover {
    pub blocks: Vec<Vec<usize>>,
    pub rest: RestPlacement,
}

impl IndexedCover {
    pub fn singletons(len: usize) -> Self {
        IndexedCover {
            blocks: (0..len).map(|i| vec![i]).collect(),
            rest: RestPlacement::None,
        }
    }

    /// Checks the cover is disjoint, covers `0..covered_len`, and that
    /// `dominating[y] ≥ Σ_{w ∈ P_y} covered[w]` for every `y`.
    pub fn certifies(&self, dominating: &FiberProfile, covered: &FiberProfile) -> bool {
        let big = dominating_sizes(dominating, covered);
        if self.blocks.len() != big.len() {
            return false;
        }
        let mut seen = vec![false; covered.len()];
        for block in &self.blocks {
            for &w in block {
                if w >= seen.len() || seen[w] {
                    return false;
                }
                seen[w] = true;
            }
        }
        if seen.iter().any(|&s| !s) {
            return false;
        }
        let mut rest_load = vec![ExtNat::ZERO; big.len()];
        match (covered.has_rest(), self.rest) {
            (false, RestPlacement::None) => {}
            (true, RestPlacement::Rest) if dominating.has_rest() => {}
            (true, RestPlacement::Index(y)) if y < big.len() => rest_load[y] = ExtNat::Omega,
            _ => return false,
        }
        self.blocks.iter().enumerate().all(|(y, block)| {
            let load: ExtNat = block.iter().map(|&w| covered.sizes[w]).sum();
            big[y] >= load + rest_load[y]
        })
    }

    /// Composes `self: p ≥ q` with `next: q ≥ r` into a cover certifying `p ≥ r`.
    /// Only defined for profiles without rest parts.
    pub fn then(&self, next: &IndexedCover) -> IndexedCover {
        IndexedCover {
            blocks: self
                .blocks
                .iter()
                .map(|block| {
                    let mut merged: Vec<usize> = block
                        .iter()
                        .flat_map(|&w| next.blocks[w].iter().copied())
                        .collect();
                    merged.sort_unstable();
                    merged
                })
                .collect(),
            rest: RestPlacement::None,
        }
    }
}

fn dominating_sizes(dominating: &FiberProfile, covered: &FiberProfile) -> Vec<ExtNat> {
    if dominating.has_rest() {
        dominating.padded_to(dominating.len() + covered.count_ones())
    } else {
        dominating.sizes.clone()
    }
}

/// Looks for a bijection `α` of index sets with `p[i] = q[α(i)]` for every `i`.
///
/// Returns the lexicographically least such bijection. Profiles with rest parts are
/// padded with singletons from their rest to a common length first; both must agree on
/// having a rest part, since a finite index set is never in bijection with an infinite one.
pub fn d_condition(p: &FiberProfile, q: &FiberProfile) -> Result<Option<Transformation>> {
    if p.has_rest() != q.has_rest() || (!p.has_rest() && p.len() != q.len()) {
        return Err(Error::DimensionMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    let len = p.len().max(q.len());
    let (ps, qs) = (p.padded_to(len), q.padded_to(len));
    let mut used = vec![false; len];
    let mut map = Vec::with_capacity(len);
    for &size in &ps {
        match (0..len).find(|&j| !used[j] && qs[j] == size) {
            Some(j) => {
                used[j] = true;
                map.push(j);
            }
            None => return Ok(None),
        }
    }
    Ok(Some(Transformation::from_images_unchecked(map)))
}

/// Looks for an indexed cover `{P_y}` of `q`'s indices with `p[y] ≥ Σ_{w ∈ P_y} q[w]`.
///
/// Finite profiles whose totals rule out any cover are rejected at once, equal multisets
/// are answered with the matching singleton cover, and everything else goes to an
/// exhaustive search in lexicographic order of the block assignment of `q`'s indices.
pub fn j_condition(p: &FiberProfile, q: &FiberProfile) -> Result<Option<IndexedCover>> {
    let big = dominating_sizes(p, q);

    let rest = match (q.has_rest(), p.has_rest()) {
        (false, _) => RestPlacement::None,
        (true, true) => RestPlacement::Rest,
        (true, false) => match big.iter().position(|&s| s == ExtNat::Omega) {
            Some(y) => RestPlacement::Index(y),
            None => return Ok(None),
        },
    };

    if !p.has_rest()
        && !q.has_rest()
        && p.is_all_finite()
        && q.is_all_finite()
        && p.total() < q.total()
    {
        return Ok(None);
    }

    if big.len() == q.len() {
        let mut sorted_big = big.clone();
        let mut sorted_q = q.sizes.clone();
        sorted_big.sort_unstable();
        sorted_q.sort_unstable();
        let absorber_ok = !matches!(rest, RestPlacement::Index(_));
        if sorted_big == sorted_q && absorber_ok {
            let padded_p = FiberProfile {
                sizes: big.clone(),
                rest_ones: false,
            };
            let padded_q = FiberProfile {
                sizes: q.sizes.clone(),
                rest_ones: false,
            };
            if let Some(alpha) = d_condition(&padded_p, &padded_q)? {
                let cover = IndexedCover {
                    blocks: alpha.images().iter().map(|&j| vec![j]).collect(),
                    rest,
                };
                return Ok(Some(cover));
            }
        }
    }

    if big.len() > COVER_SEARCH_CAP || q.len() > COVER_SEARCH_CAP {
        return Err(Error::SearchTooLarge {
            len: big.len().max(q.len()),
            cap: COVER_SEARCH_CAP,
        });
    }

    let mut capacity = big.clone();
    if let RestPlacement::Index(y) = rest {
        // ω absorbs the rest and stays ω
        debug_assert_eq!(capacity[y], ExtNat::Omega);
    }
    let mut assignment = vec![0usize; q.len()];
    if search_cover(&q.sizes, 0, &mut capacity, &mut assignment) {
        let mut blocks = vec![Vec::new(); big.len()];
        for (w, &y) in assignment.iter().enumerate() {
            blocks[y].push(w);
        }
        Ok(Some(IndexedCover { blocks, rest }))
    } else {
        Ok(None)
    }
}

fn search_cover(
    demand: &[ExtNat],
    w: usize,
    capacity: &mut [ExtNat],
    assignment: &mut [usize],
) -> bool {
    if w == demand.len() {
        return true;
    }
    if let Some(remaining) = demand[w..].iter().map(|d| d.finite()).sum::<Option<u64>>() {
        let spare: ExtNat = capacity.iter().copied().sum();
        if spare < ExtNat::Finite(remaining) {
            return false;
        }
    }
    for y in 0..capacity.len() {
        let before = capacity[y];
        let after = match (before, demand[w]) {
            (ExtNat::Omega, _) => ExtNat::Omega,
            (ExtNat::Finite(_), ExtNat::Omega) => continue,
            (ExtNat::Finite(c), ExtNat::Finite(d)) if c >= d => ExtNat::Finite(c - d),
            _ => continue,
        };
        capacity[y] = after;
        assignment[w] = y;
        if search_cover(demand, w + 1, capacity, assignment) {
            return true;
        }
        capacity[y] = before;
    }
    false
}

/// `n(α)`: the number of indices whose fiber is smaller than `ambient = |A|`.
///
/// A rest part contributes infinitely many singleton fibers, so the count is `ω`
/// whenever `ambient > 1`.
pub fn n_value(p: &FiberProfile, ambient: ExtNat) -> ExtNat {
    if p.has_rest() && ambient > ExtNat::ONE {
        return ExtNat::Omega;
    }
    ExtNat::from(p.sizes.iter().filter(|&&s| s < ambient).count())
}

/// Fiber sizes of `f` restricted to `Y`, indexed by the sorted `Y`.
pub fn profile_of(ctx: &Context, f: &Transformation) -> Result<FiberProfile> {
    ctx.require(Family::OmegaBar, f)?;
    let mut sizes = vec![0u64; ctx.y().len()];
    for &y in ctx.y() {
        let pos = ctx.y_position(f.apply(y)).expect("Yf ⊆ Y");
        sizes[pos] += 1;
    }
    FiberProfile::finite(&sizes)
}
