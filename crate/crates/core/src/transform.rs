//! Transformations of a finite set `X = {0, .., n-1}` and the invariant-set context.
//!
//! Maps are composed left to right: `x(fg) = (xf)g`, so `f.then(&g)` applies `f`
//! first. Every other module and the text format follow this convention.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A total self-map of `{0, .., n-1}` stored as its image sequence.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "TransformationRepr", into = "TransformationRepr")]
pub struct Transformation {
    images: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct TransformationRepr {
    n: usize,
    images: Vec<usize>,
}

impl TryFrom<TransformationRepr> for Transformation {
    type Error = Error;

    fn try_from(repr: TransformationRepr) -> Result<Self> {
        if repr.n != repr.images.len() {
            return Err(Error::DimensionMismatch {
                left: repr.n,
                right: repr.images.len(),
            });
        }
        Transformation::new(repr.images)
    }
}

impl From<Transformation> for TransformationRepr {
    fn from(f: Transformation) -> Self {
        TransformationRepr {
            n: f.n(),
            images: f.images,
        }
    }
}

impl Transformation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidContext(
                "a transformation needs at least one point".into(),
            ));
        }
        if let Some((index, &value)) = images.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(Error::ImageOutOfRange { index, value, n });
        }
        Ok(Transformation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(images.iter().all(|&v| v < images.len()));
        Transformation { images }
    }

    pub fn identity(n: usize) -> Self {
        Transformation {
            images: (0..n).collect(),
        }
    }

    pub fn constant(n: usize, value: usize) -> Self {
        assert!(value < n);
        Transformation {
            images: vec![value; n],
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// Left-to-right composition: the result sends `x` to `g(f(x))`.
    pub fn compose(&self, g: &Transformation) -> Result<Transformation> {
        if self.n() != g.n() {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: g.n(),
            });
        }
        Ok(self.then(g))
    }

    /// Infallible [`compose`](Self::compose) for maps known to share a ground set.
    ///
    /// Panics if the ground sets differ.
    pub fn then(&self, g: &Transformation) -> Transformation {
        assert_eq!(self.n(), g.n(), "composing maps on different ground sets");
        Transformation {
            images: self.images.iter().map(|&x| g.images[x]).collect(),
        }
    }

    /// Membership mask of the image `Xf`.
    pub fn image_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.n()];
        for &v in &self.images {
            mask[v] = true;
        }
        mask
    }

    /// The image `Xf`, sorted.
    pub fn image(&self) -> Vec<usize> {
        self.image_mask()
            .into_iter()
            .enumerate()
            .filter_map(|(x, hit)| hit.then_some(x))
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.image_mask().into_iter().filter(|&hit| hit).count()
    }

    /// The fiber `z f^-1`, sorted.
    pub fn fiber(&self, z: usize) -> Vec<usize> {
        (0..self.n()).filter(|&x| self.images[x] == z).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.n()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.n()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn is_idempotent(&self) -> bool {
        self.images.iter().all(|&v| self.images[v] == v)
    }

    pub fn inverse(&self) -> Option<Transformation> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.n()];
        for (x, &v) in self.images.iter().enumerate() {
            inv[v] = x;
        }
        Some(Transformation { images: inv })
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Transformation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected `[i0 i1 ...]`, got `{s}`")))?;
        let images = inner
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad image `{tok}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Transformation::new(images)
    }
}

/// One of the four subsemigroups `Fix ⊆ S̄ ⊆ Ω̄ ⊆ T̄` of the full transformation semigroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `Yf ⊆ Y`
    TBar,
    /// `Yf = Y`
    OmegaBar,
    /// `f` restricted to `Y` is a permutation of `Y`
    SBar,
    /// `f` restricted to `Y` is the identity
    Fix,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::TBar, Family::OmegaBar, Family::SBar, Family::Fix];

    pub fn name(self) -> &'static str {
        match self {
            Family::TBar => "tbar",
            Family::OmegaBar => "omegabar",
            Family::SBar => "sbar",
            Family::Fix => "fix",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tbar" => Ok(Family::TBar),
            "omegabar" => Ok(Family::OmegaBar),
            "sbar" => Ok(Family::SBar),
            "fix" => Ok(Family::Fix),
            other => Err(Error::Parse(format!("unknown family `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipFlags {
    pub in_tbar: bool,
    pub in_omegabar: bool,
    pub in_sbar: bool,
    pub in_fix: bool,
    pub is_unit_of_omegabar: bool,
}

impl MembershipFlags {
    pub fn contains(&self, family: Family) -> bool {
        match family {
            Family::TBar => self.in_tbar,
            Family::OmegaBar => self.in_omegabar,
            Family::SBar => self.in_sbar,
            Family::Fix => self.in_fix,
        }
    }
}

/// The ground set `X = {0, .., n-1}` together with a fixed nonempty subset `Y`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ContextRepr", into = "ContextRepr")]
pub struct Context {
    n: usize,
    y: Vec<usize>,
    in_y: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct ContextRepr {
    n: usize,
    y: Vec<usize>,
}

impl TryFrom<ContextRepr> for Context {
    type Error = Error;

    fn try_from(repr: ContextRepr) -> Result<Self> {
        Context::new(repr.n, repr.y)
    }
}

impl From<Context> for ContextRepr {
    fn from(ctx: Context) -> Self {
        ContextRepr { n: ctx.n, y: ctx.y }
    }
}

impl Context {
    pub fn new(n: usize, y: impl IntoIterator<Item = usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidContext("n must be at least 1".into()));
        }
        let mut in_y = vec![false; n];
        for v in y {
            if v >= n {
                return Err(Error::InvalidContext(format!("{v} is not in 0..{n}")));
            }
            in_y[v] = true;
        }
        let y: Vec<usize> = (0..n).filter(|&x| in_y[x]).collect();
        if y.is_empty() {
            return Err(Error::InvalidContext("Y must be nonempty".into()));
        }
        Ok(Context { n, y, in_y })
    }

    /// Parses a comma list such as `0,1`.
    pub fn parse(n: usize, y_spec: &str) -> Result<Self> {
        let ys = y_spec
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad element `{s}` in Y spec `{y_spec}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Context::new(n, ys)
    }

    /// Every nonempty `Y ⊆ {0, .., n-1}`, ordered by size and then lexicographically.
    pub fn all_for(n: usize) -> Vec<Context> {
        assert!((1..usize::BITS as usize).contains(&n));
        let mut subsets: Vec<Vec<usize>> = (1u64..(1 << n))
            .map(|mask| (0..n).filter(|&x| mask >> x & 1 == 1).collect())
            .collect();
        subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        subsets
            .into_iter()
            .map(|y| Context::new(n, y).expect("valid subset"))
            .collect()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// `Y`, sorted ascending.
    #[inline]
    pub fn y(&self) -> &[usize] {
        &self.y
    }

    #[inline]
    pub fn in_y(&self, x: usize) -> bool {
        self.in_y[x]
    }

    /// `X \ Y`, sorted ascending.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| !self.in_y[x]).collect()
    }

    /// Position of `x` in the sorted `Y`.
    pub fn y_position(&self, x: usize) -> Option<usize> {
        self.y.binary_search(&x).ok()
    }

    pub fn y_spec(&self) -> String {
        self.y
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    fn check_dim(&self, f: &Transformation) -> Result<()> {
        if f.n() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: f.n(),
            });
        }
        Ok(())
    }

    pub fn classify(&self, f: &Transformation) -> MembershipFlags {
        if f.n() != self.n {
            return MembershipFlags::default();
        }
        let in_tbar = self.y.iter().all(|&y| self.in_y[f.apply(y)]);
        let mut hit = vec![false; self.n];
        for &y in &self.y {
            hit[f.apply(y)] = true;
        }
        let onto_y = self.y.iter().all(|&y| hit[y]);
        let in_omegabar = in_tbar && onto_y;
        let injective_on_y = self.y.iter().filter(|&&y| hit[y]).count() == self.y.len();
        let in_sbar = in_tbar && onto_y && injective_on_y;
        let in_fix = self.y.iter().all(|&y| f.apply(y) == y);
        MembershipFlags {
            in_tbar,
            in_omegabar,
            in_sbar,
            in_fix,
            is_unit_of_omegabar: in_omegabar && f.is_bijective(),
        }
    }

    pub fn contains(&self, family: Family, f: &Transformation) -> bool {
        self.classify(f).contains(family)
    }

    /// Errors with a domain error unless `f` belongs to `family`.
    pub fn require(&self, family: Family, f: &Transformation) -> Result<()> {
        self.check_dim(f)?;
        if self.contains(family, f) {
            Ok(())
        } else {
            Err(Error::NotInFamily {
                family: family.name(),
                f: f.to_string(),
            })
        }
    }

    /// `f` restricted to `Y`, re-indexed by position in the sorted `Y`.
    pub fn restrict_to_y(&self, f: &Transformation) -> Result<Transformation> {
        self.check_dim(f)?;
        let images = self
            .y
            .iter()
            .map(|&y| self.y_position(f.apply(y)))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::NotInvariant { f: f.to_string() })?;
        Ok(Transformation::from_images_unchecked(images))
    }

    /// `|Xf \ Y|`.
    pub fn image_outside_y(&self, f: &Transformation) -> usize {
        f.image().into_iter().filter(|&v| !self.in_y[v]).count()
    }
}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Context(n={}, Y={{{}}})", self.n, self.y_spec())
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} Y={{{}}}", self.n, self.y_spec())
    }
}
