//! Ground sets, subsets as 64-bit masks, weak (partial) compositions, shapes,
//! and the JSON family document.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_GROUND: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    n: u32,
}

impl GroundSet {
    pub fn new(n: u32) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::GroundTooLarge(n));
        }
        Ok(GroundSet { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.n)
    }

    pub fn contains(&self, s: Subset) -> bool {
        s.is_subset_of(self.full())
    }
}

/// A subset of `{0, .., 63}` stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    /// The first `n` elements.
    pub fn full(n: u32) -> Self {
        if n >= 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(e: u32) -> Self {
        assert!(e < 64, "element {e} does not fit a 64-bit subset");
        Subset(1u64 << e)
    }

    pub fn from_elements<I: IntoIterator<Item = u32>>(elements: I) -> Self {
        elements
            .into_iter()
            .fold(Subset::EMPTY, |acc, e| acc.union(Subset::singleton(e)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: u32) -> bool {
        e < 64 && self.0 >> e & 1 == 1
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset_of(self, other: Subset) -> bool {
        self != other && self.is_subset_of(other)
    }

    pub fn comparable(self, other: Subset) -> bool {
        self.is_subset_of(other) || other.is_subset_of(self)
    }

    pub fn intersects(self, other: Subset) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn min_element(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros())
    }

    pub fn max_element(self) -> Option<u32> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros())
    }

    /// Elements in ascending order.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let e = rest.trailing_zeros();
            rest &= rest - 1;
            Some(e)
        })
    }

    /// Image under an element relabeling `e -> perm[e]`.
    pub fn relabel(self, perm: &[u32]) -> Subset {
        Subset::from_elements(self.elements().map(|e| perm[e as usize]))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Part sizes `(a_1, .., a_p)` of a composition, or the index of a
/// multinomial coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Shape(Vec<u32>);

impl Shape {
    pub fn new(sizes: Vec<u32>) -> Self {
        Shape(sizes)
    }

    pub fn sizes(&self) -> &[u32] {
        &self.0
    }

    pub fn p(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The multiset of sizes, listed in descending order.
    pub fn form(&self) -> Vec<u32> {
        let mut f = self.0.clone();
        f.sort_unstable_by(|a, b| b.cmp(a));
        f
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// An ordered tuple of pairwise disjoint, possibly empty parts. The union of
/// the parts may be a proper subset of the ground set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeakComposition {
    parts: Vec<Subset>,
}

impl WeakComposition {
    pub fn new(parts: Vec<Subset>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::NoParts);
        }
        let mut seen = Subset::EMPTY;
        for part in &parts {
            if let Some(e) = seen.intersection(*part).min_element() {
                return Err(Error::OverlappingParts { item: 0, element: e });
            }
            seen = seen.union(*part);
        }
        Ok(WeakComposition { parts })
    }

    /// A pair `(A, B)` as a two-part composition.
    pub fn pair(a: Subset, b: Subset) -> Result<Self> {
        WeakComposition::new(vec![a, b])
    }

    pub fn p(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[Subset] {
        &self.parts
    }

    pub fn part(&self, k: usize) -> Subset {
        self.parts[k]
    }

    pub fn support(&self) -> Subset {
        self.parts.iter().fold(Subset::EMPTY, |acc, s| acc.union(*s))
    }

    /// Union of every part except part `k`.
    pub fn union_except(&self, k: usize) -> Subset {
        self.parts
            .iter()
            .enumerate()
            .filter(|&(l, _)| l != k)
            .fold(Subset::EMPTY, |acc, (_, s)| acc.union(*s))
    }

    pub fn total(&self) -> u32 {
        self.support().len()
    }

    pub fn shape(&self) -> Shape {
        shape_of(self)
    }

    pub fn is_full(&self, ground: GroundSet) -> bool {
        self.support() == ground.full()
    }

    pub fn relabel(&self, perm: &[u32]) -> WeakComposition {
        WeakComposition {
            parts: self.parts.iter().map(|s| s.relabel(perm)).collect(),
        }
    }
}

impl fmt::Debug for WeakComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for WeakComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

pub fn shape_of(c: &WeakComposition) -> Shape {
    Shape(c.parts.iter().map(|s| s.len()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    ground: GroundSet,
    sets: Vec<Subset>,
}

impl SetFamily {
    pub fn new(ground: GroundSet, sets: Vec<Subset>) -> Result<Self> {
        let mut first_seen = HashMap::with_capacity(sets.len());
        for (i, s) in sets.iter().enumerate() {
            check_fits(ground, *s)?;
            if let Some(&first) = first_seen.get(s) {
                return Err(Error::DuplicateItem { first, second: i });
            }
            first_seen.insert(*s, i);
        }
        Ok(SetFamily { ground, sets })
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn n(&self) -> u32 {
        self.ground.n
    }

    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionFamily {
    ground: GroundSet,
    p: usize,
    items: Vec<WeakComposition>,
}

/// One coordinate of a composition family: the `k`-th part of every item,
/// with repetition, and the distinct values in order of first appearance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateSlice {
    pub all: Vec<Subset>,
    pub distinct: Vec<Subset>,
}

impl CompositionFamily {
    pub fn new(ground: GroundSet, p: usize, items: Vec<WeakComposition>) -> Result<Self> {
        if p == 0 {
            return Err(Error::NoParts);
        }
        let mut first_seen: HashMap<&WeakComposition, usize> = HashMap::with_capacity(items.len());
        for (i, c) in items.iter().enumerate() {
            if c.p() != p {
                return Err(Error::PartCount { item: i, expected: p, found: c.p() });
            }
            for s in c.parts() {
                check_fits(ground, *s)?;
            }
            if let Some(&first) = first_seen.get(c) {
                return Err(Error::DuplicateItem { first, second: i });
            }
            first_seen.insert(c, i);
        }
        Ok(CompositionFamily { ground, p, items })
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn n(&self) -> u32 {
        self.ground.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn items(&self) -> &[WeakComposition] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Coordinate `k` is 0-based.
    pub fn coordinate_slice(&self, k: usize) -> Result<CoordinateSlice> {
        if k >= self.p {
            return Err(Error::CoordinateOutOfRange { k, p: self.p });
        }
        let all: Vec<Subset> = self.items.iter().map(|c| c.part(k)).collect();
        let mut distinct = Vec::new();
        for s in &all {
            if !distinct.contains(s) {
                distinct.push(*s);
            }
        }
        Ok(CoordinateSlice { all, distinct })
    }

    /// Index of the first item that does not cover the ground set.
    pub fn first_partial_item(&self) -> Option<usize> {
        self.items.iter().position(|c| !c.is_full(self.ground))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Subsets(SetFamily),
    Compositions(CompositionFamily),
}

impl Family {
    pub fn n(&self) -> u32 {
        match self {
            Family::Subsets(f) => f.n(),
            Family::Compositions(f) => f.n(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Family::Subsets(f) => f.len(),
            Family::Compositions(f) => f.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&FamilyDoc::from(self)).expect("family documents always serialize")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(FamilyDoc::from(self)).expect("family documents always serialize")
    }
}

impl From<SetFamily> for Family {
    fn from(f: SetFamily) -> Self {
        Family::Subsets(f)
    }
}

impl From<CompositionFamily> for Family {
    fn from(f: CompositionFamily) -> Self {
        Family::Compositions(f)
    }
}

fn check_fits(ground: GroundSet, s: Subset) -> Result<()> {
    match s.difference(ground.full()).min_element() {
        Some(e) => Err(Error::ElementOutOfRange { element: e as u64, n: ground.n }),
        None => Ok(()),
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyDoc {
    n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sets: Option<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    compositions: Option<Vec<Vec<Vec<u64>>>>,
}

impl From<&Family> for FamilyDoc {
    fn from(f: &Family) -> Self {
        let list = |s: &Subset| s.elements().map(u64::from).collect::<Vec<_>>();
        match f {
            Family::Subsets(f) => FamilyDoc {
                n: f.n(),
                p: None,
                kind: Some("subsets".into()),
                sets: Some(f.sets.iter().map(list).collect()),
                compositions: None,
            },
            Family::Compositions(f) => FamilyDoc {
                n: f.n(),
                p: Some(f.p),
                kind: Some("compositions".into()),
                sets: None,
                compositions: Some(
                    f.items.iter().map(|c| c.parts.iter().map(list).collect()).collect(),
                ),
            },
        }
    }
}

fn subset_from_list(ground: GroundSet, list: &[u64]) -> Result<Subset> {
    let mut s = Subset::EMPTY;
    for &e in list {
        if e >= u64::from(ground.n) {
            return Err(Error::ElementOutOfRange { element: e, n: ground.n });
        }
        let e = e as u32;
        if s.contains(e) {
            return Err(Error::RepeatedElement { element: u64::from(e) });
        }
        s = s.union(Subset::singleton(e));
    }
    Ok(s)
}

/// Parses and validates a family document. Element lists may arrive in any
/// order; they are normalized to ascending order. A report carrying
/// `results.family` is accepted too.
pub fn parse_family(document: &str) -> Result<Family> {
    let mut value: serde_json::Value = serde_json::from_str(document)?;
    if value.get("n").is_none() {
        if let Some(inner) = value.pointer_mut("/results/family") {
            value = inner.take();
        }
    }
    let doc: FamilyDoc = serde_json::from_value(value)?;
    let ground = GroundSet::new(doc.n)?;
    let kind = match (doc.kind.as_deref(), &doc.sets, &doc.compositions) {
        (_, Some(_), Some(_)) => {
            return Err(Error::Schema("both \"sets\" and \"compositions\" present".into()))
        }
        (Some("subsets"), _, None) | (None, Some(_), None) => "subsets",
        (Some("compositions"), None, _) | (None, None, Some(_)) => "compositions",
        (Some(other), _, _) if other != "subsets" && other != "compositions" => {
            return Err(Error::Schema(format!("unknown kind {other:?}")))
        }
        (Some(k), _, _) => {
            return Err(Error::Schema(format!("kind {k:?} does not match the item key")))
        }
        (None, None, None) => {
            return Err(Error::Schema("missing \"sets\" or \"compositions\"".into()))
        }
    };
    if kind == "subsets" {
        if doc.p.is_some() {
            return Err(Error::Schema("\"p\" is only meaningful for compositions".into()));
        }
        let sets = doc
            .sets
            .unwrap_or_default()
            .iter()
            .map(|l| subset_from_list(ground, l))
            .collect::<Result<Vec<_>>>()?;
        return Ok(SetFamily::new(ground, sets)?.into());
    }

    let p = doc.p.ok_or_else(|| Error::Schema("compositions need \"p\"".into()))?;
    let mut items = Vec::new();
    for (i, raw) in doc.compositions.unwrap_or_default().iter().enumerate() {
        if raw.len() != p {
            return Err(Error::PartCount { item: i, expected: p, found: raw.len() });
        }
        let parts = raw
            .iter()
            .map(|l| subset_from_list(ground, l))
            .collect::<Result<Vec<_>>>()?;
        let c = WeakComposition::new(parts).map_err(|e| match e {
            Error::OverlappingParts { element, .. } => Error::OverlappingParts { item: i, element },
            other => other,
        })?;
        items.push(c);
    }
    Ok(CompositionFamily::new(ground, p, items)?.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(elements: &[u32]) -> Subset {
        Subset::from_elements(elements.iter().copied())
    }

    fn comp(parts: &[&[u32]]) -> WeakComposition {
        WeakComposition::new(parts.iter().map(|p| s(p)).collect()).unwrap()
    }

    #[test]
    fn minimal_document_parses() {
        let f = parse_family(r#"{"n":2,"p":2,"compositions":[[[0],[1]]]}"#).unwrap();
        assert_eq!(f.len(), 1);
        match f {
            Family::Compositions(c) => assert_eq!(c.items()[0], comp(&[&[0], &[1]])),
            _ => panic!("expected compositions"),
        }
    }

    #[test]
    fn overlapping_parts_rejected() {
        let err = parse_family(r#"{"n":2,"p":2,"compositions":[[[0],[0]]]}"#).unwrap_err();
        assert!(matches!(err, Error::OverlappingParts { item: 0, element: 0 }));
    }

    #[test]
    fn duplicate_item_rejected() {
        let doc = r#"{"n":4,"p":2,"compositions":[[[0,1],[2,3]],[[0,1],[2,3]]]}"#;
        assert!(matches!(
            parse_family(doc).unwrap_err(),
            Error::DuplicateItem { first: 0, second: 1 }
        ));
    }

    #[test]
    fn schema_errors() {
        let bad = [
            r#"{"n":3,"sets":[[3]]}"#,
            r#"{"n":3,"sets":[[1,1]]}"#,
            r#"{"n":3,"p":2,"compositions":[[[0],[1]],[[2]]]}"#,
            r#"{"n":3,"compositions":[[[0],[1]]]}"#,
            r#"{"n":3,"p":2,"sets":[[0]]}"#,
            r#"{"n":65,"sets":[]}"#,
            r#"{"n":3,"kind":"pairs","sets":[]}"#,
            r#"{"n":3,"kind":"subsets","compositions":[]}"#,
            r#"{"n":3}"#,
            r#"{"n":3,"sets":[],"extra":1}"#,
            r#"{"n":3,"sets":[[0],[0]]}"#,
        ];
        for doc in bad {
            assert!(parse_family(doc).is_err(), "{doc} should be rejected");
        }
    }

    #[test]
    fn elements_normalized_ascending() {
        let f = parse_family(r#"{"n":4,"kind":"subsets","sets":[[3,1],[2]]}"#).unwrap();
        assert_eq!(f.to_json(), r#"{"n":4,"kind":"subsets","sets":[[1,3],[2]]}"#);
    }

    #[test]
    fn family_inside_a_report() {
        let report = r#"{"command":"construct","results":{"family":{"n":2,"sets":[[0]]}}}"#;
        assert_eq!(parse_family(report).unwrap().len(), 1);
        assert!(parse_family(r#"{"command":"construct","results":{}}"#).is_err());
    }

    #[test]
    fn shapes() {
        assert_eq!(shape_of(&comp(&[&[0, 1], &[2]])).sizes(), &[2, 1]);
        assert_eq!(shape_of(&comp(&[&[], &[], &[]])).sizes(), &[0, 0, 0]);
        assert_eq!(shape_of(&comp(&[&[0], &[1], &[2, 3]])).sizes(), &[1, 1, 2]);
        assert_eq!(Shape::new(vec![1, 3, 2]).form(), vec![3, 2, 1]);
    }

    #[test]
    fn coordinate_slices() {
        let g = GroundSet::new(3).unwrap();
        let f = CompositionFamily::new(g, 2, vec![comp(&[&[0], &[1]]), comp(&[&[0], &[2]])]).unwrap();
        assert_eq!(f.coordinate_slice(0).unwrap().distinct, vec![s(&[0])]);
        assert_eq!(f.coordinate_slice(0).unwrap().all.len(), 2);

        let f = CompositionFamily::new(g, 2, vec![comp(&[&[0], &[1]]), comp(&[&[1], &[0]])]).unwrap();
        assert_eq!(f.coordinate_slice(0).unwrap().distinct, vec![s(&[0]), s(&[1])]);

        let empty = CompositionFamily::new(g, 2, vec![]).unwrap();
        let slice = empty.coordinate_slice(1).unwrap();
        assert!(slice.all.is_empty() && slice.distinct.is_empty());
        assert!(matches!(
            empty.coordinate_slice(2),
            Err(Error::CoordinateOutOfRange { k: 2, p: 2 })
        ));
    }

    #[test]
    fn subset_ops() {
        let a = s(&[0, 2, 5]);
        assert_eq!(a.elements().collect::<Vec<_>>(), vec![0, 2, 5]);
        assert_eq!(a.len(), 3);
        assert_eq!(a.max_element(), Some(5));
        assert!(s(&[2]).is_proper_subset_of(a));
        assert!(!a.is_proper_subset_of(a));
        assert_eq!(Subset::full(64).len(), 64);
        assert_eq!(a.to_string(), "{0,2,5}");
        assert_eq!(s(&[0, 1]).relabel(&[2, 0, 1]), s(&[0, 2]));
    }
}
