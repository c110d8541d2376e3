//! Finite families of subsets of a labeled universe of at most 64 elements.
//! Members are single-word bitmasks over universe positions.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numset::{at_least_half, at_most_half};
use crate::Verdict;

pub const MAX_UNIVERSE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
#[serde(transparent)]
pub struct Universe {
    labels: Vec<String>,
}

impl Universe {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_UNIVERSE {
            return Err(Error::UniverseTooLarge(labels.len()));
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Universe { labels })
    }

    /// Universe labelled `"1"..="n"`.
    pub fn numbered(n: usize) -> Result<Self> {
        Universe::new((1..=n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Mask with one bit per label.
    pub fn full_mask(&self) -> u64 {
        if self.labels.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.labels.len()) - 1
        }
    }
}

/// A member of a family as a bitmask over universe positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MemberSet(pub u64);

impl MemberSet {
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, index: usize) -> bool {
        self.0 >> index & 1 == 1
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |i| bits >> i & 1 == 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    universe: Universe,
    members: BTreeSet<MemberSet>,
}

#[derive(Deserialize)]
struct FamilyJson {
    universe: Vec<String>,
    members: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct FamilyJsonOut<'a> {
    universe: &'a [String],
    members: Vec<Vec<&'a str>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementCount {
    pub label: String,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementAbundanceReport {
    pub total: usize,
    /// Counts for every element of the union of the members, in universe order.
    pub element_counts: Vec<ElementCount>,
    pub abundant_elements: Vec<String>,
    pub verdict: Verdict,
}

impl ElementAbundanceReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn count(&self, label: &str) -> usize {
        self.element_counts.iter().find(|c| c.label == label).map_or(0, |c| c.count)
    }
}

/// Isomorphism invariants: sorted member cardinalities and sorted per-element
/// membership counts (elements of the union only).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilySignature {
    pub member_cardinalities: Vec<usize>,
    pub column_counts: Vec<usize>,
}

impl SetFamily {
    pub fn new<I: IntoIterator<Item = u64>>(universe: Universe, members: I) -> Result<Self> {
        let full = universe.full_mask();
        let mut set = BTreeSet::new();
        for bits in members {
            if bits & !full != 0 {
                return Err(Error::InvalidArgument(format!("member bitmask {bits:#x} lies outside the universe")));
            }
            set.insert(MemberSet(bits));
        }
        Ok(SetFamily { universe, members: set })
    }

    /// Builds a family from label lists; repeated labels or members are rejected.
    pub fn from_labels<S: AsRef<str>>(universe: Universe, members: &[Vec<S>]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for member in members {
            let mut bits = 0u64;
            for label in member {
                let label = label.as_ref();
                let i = universe.index_of(label).ok_or_else(|| Error::UnknownLabel(label.into()))?;
                if bits >> i & 1 == 1 {
                    return Err(Error::DuplicateLabel(label.into()));
                }
                bits |= 1 << i;
            }
            if !set.insert(MemberSet(bits)) {
                let names: Vec<&str> = member.iter().map(AsRef::as_ref).collect();
                return Err(Error::DuplicateMember(format!("{{{}}}", names.join(","))));
            }
        }
        Ok(SetFamily { universe, members: set })
    }

    /// Parses `{"universe": [...], "members": [[...], ...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: FamilyJson = serde_json::from_str(text)
            .map_err(|e| Error::Parse { input: text.trim().into(), reason: e.to_string() })?;
        SetFamily::from_labels(Universe::new(raw.universe)?, &raw.members)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> impl Iterator<Item = MemberSet> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, m: MemberSet) -> bool {
        self.members.contains(&m)
    }

    pub fn member_labels(&self, m: MemberSet) -> Vec<&str> {
        m.indices().map(|i| self.universe.label(i)).collect()
    }

    pub fn render_member(&self, m: MemberSet) -> String {
        format!("{{{}}}", self.member_labels(m).join(","))
    }

    fn require_nonempty(&self, op: &'static str) -> Result<()> {
        if self.is_empty() {
            Err(Error::Empty(op))
        } else {
            Ok(())
        }
    }

    /// Union of all members.
    pub fn union_mask(&self) -> u64 {
        self.members.iter().fold(0, |acc, m| acc | m.0)
    }

    /// Intersection of all members (0 for the empty family).
    pub fn intersection_mask(&self) -> u64 {
        let mut it = self.members.iter();
        match it.next() {
            None => 0,
            Some(first) => it.fold(first.0, |acc, m| acc & m.0),
        }
    }

    fn first_violation(&self, op: fn(u64, u64) -> u64) -> Option<(MemberSet, MemberSet)> {
        let members: Vec<MemberSet> = self.members.iter().copied().collect();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                if !self.members.contains(&MemberSet(op(a.0, b.0))) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_union_closed(&self) -> Result<bool> {
        self.require_nonempty("is_union_closed")?;
        Ok(self.first_violation(|a, b| a | b).is_none())
    }

    pub fn is_intersection_closed(&self) -> Result<bool> {
        self.require_nonempty("is_intersection_closed")?;
        Ok(self.first_violation(|a, b| a & b).is_none())
    }

    pub fn require_union_closed(&self) -> Result<()> {
        self.require_nonempty("union-closed input")?;
        match self.first_violation(|a, b| a | b) {
            None => Ok(()),
            Some((a, b)) => Err(Error::NotUnionClosed { a: self.render_member(a), b: self.render_member(b) }),
        }
    }

    fn closure(&self, op: fn(u64, u64) -> u64) -> SetFamily {
        let mut all = self.members.clone();
        let mut pending: Vec<MemberSet> = all.iter().copied().collect();
        while let Some(x) = pending.pop() {
            let snapshot: Vec<MemberSet> = all.iter().copied().collect();
            for y in snapshot {
                let z = MemberSet(op(x.0, y.0));
                if all.insert(z) {
                    pending.push(z);
                }
            }
        }
        SetFamily { universe: self.universe.clone(), members: all }
    }

    pub fn union_closure(&self) -> Result<SetFamily> {
        self.require_nonempty("union_closure")?;
        Ok(self.closure(|a, b| a | b))
    }

    pub fn intersection_closure(&self) -> Result<SetFamily> {
        self.require_nonempty("intersection_closure")?;
        Ok(self.closure(|a, b| a & b))
    }

    /// Number of members containing each universe position.
    pub fn element_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.universe.len()];
        for m in &self.members {
            for i in m.indices() {
                counts[i] += 1;
            }
        }
        counts
    }

    pub fn abundant_elements(&self) -> Result<ElementAbundanceReport> {
        self.require_nonempty("abundant_elements")?;
        let total = self.len();
        let union = self.union_mask();
        let counts = self.element_counts();
        let element_counts: Vec<ElementCount> = MemberSet(union)
            .indices()
            .map(|i| ElementCount { label: self.universe.label(i).to_string(), count: counts[i] })
            .collect();
        let abundant_elements: Vec<String> =
            element_counts.iter().filter(|c| at_least_half(c.count, total)).map(|c| c.label.clone()).collect();
        let verdict = if union == 0 {
            Verdict::NotApplicable
        } else if abundant_elements.is_empty() {
            Verdict::Violated
        } else {
            Verdict::Holds
        };
        Ok(ElementAbundanceReport { total, element_counts, abundant_elements, verdict })
    }

    /// Elements of the union contained in at most half of the members.
    pub fn rare_elements(&self) -> Result<Vec<ElementCount>> {
        self.require_nonempty("rare_elements")?;
        let counts = self.element_counts();
        Ok(MemberSet(self.union_mask())
            .indices()
            .filter(|&i| at_most_half(counts[i], self.len()))
            .map(|i| ElementCount { label: self.universe.label(i).to_string(), count: counts[i] })
            .collect())
    }

    /// Replaces every member by its complement within the union of all
    /// members.
    pub fn complement_dual(&self) -> Result<SetFamily> {
        self.require_nonempty("complement_dual")?;
        let union = self.union_mask();
        Ok(SetFamily {
            universe: self.universe.clone(),
            members: self.members.iter().map(|m| MemberSet(union & !m.0)).collect(),
        })
    }

    /// Every pair of distinct elements of the union is split by some
    /// member containing the first but not the second, and vice versa.
    pub fn is_separating(&self) -> Result<bool> {
        self.require_nonempty("is_separating")?;
        Ok(separating_within(&self.members, self.union_mask()))
    }

    /// Merges elements contained in exactly the same members. Elements
    /// outside the union are dropped. Each class is named by its first label
    /// in universe order.
    pub fn identify_elements(&self) -> Result<(SetFamily, BTreeMap<String, String>)> {
        self.require_nonempty("identify_elements")?;
        let members: Vec<MemberSet> = self.members.iter().copied().collect();
        let column = |i: usize| -> Vec<bool> { members.iter().map(|m| m.contains(i)).collect() };
        let mut classes: Vec<(Vec<bool>, usize)> = Vec::new();
        let mut class_of = vec![usize::MAX; self.universe.len()];
        for i in MemberSet(self.union_mask()).indices() {
            let col = column(i);
            match classes.iter().position(|(c, _)| *c == col) {
                Some(k) => class_of[i] = k,
                None => {
                    class_of[i] = classes.len();
                    classes.push((col, i));
                }
            }
        }
        let universe = Universe::new(classes.iter().map(|&(_, rep)| self.universe.label(rep).to_string()))?;
        let quotient: Vec<u64> =
            members.iter().map(|m| m.indices().fold(0u64, |acc, i| acc | 1 << class_of[i])).collect();
        let mapping = MemberSet(self.union_mask())
            .indices()
            .map(|i| (self.universe.label(i).to_string(), universe.label(class_of[i]).to_string()))
            .collect();
        Ok((SetFamily::new(universe, quotient)?, mapping))
    }

    pub fn signature(&self) -> FamilySignature {
        let mut member_cardinalities: Vec<usize> = self.members.iter().map(|m| m.len()).collect();
        member_cardinalities.sort_unstable();
        let counts = self.element_counts();
        let mut column_counts: Vec<usize> = MemberSet(self.union_mask()).indices().map(|i| counts[i]).collect();
        column_counts.sort_unstable();
        FamilySignature { member_cardinalities, column_counts }
    }

    /// Same family restricted to the labels in `mask`, with the universe
    /// shrunk to those labels.
    pub fn restrict(&self, mask: u64) -> Result<SetFamily> {
        let kept: Vec<usize> = MemberSet(mask & self.universe.full_mask()).indices().collect();
        let universe = Universe::new(kept.iter().map(|&i| self.universe.label(i).to_string()))?;
        let members = self
            .members
            .iter()
            .map(|m| kept.iter().enumerate().fold(0u64, |acc, (k, &i)| if m.contains(i) { acc | 1 << k } else { acc }));
        Ok(SetFamily { universe, members: members.map(MemberSet).collect() })
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("family serializes")
    }
}

pub(crate) fn separating_within(members: &BTreeSet<MemberSet>, union: u64) -> bool {
    let elements: Vec<usize> = MemberSet(union).indices().collect();
    for (k, &x) in elements.iter().enumerate() {
        for &y in &elements[k + 1..] {
            let x_without_y = members.iter().any(|m| m.contains(x) && !m.contains(y));
            let y_without_x = members.iter().any(|m| m.contains(y) && !m.contains(x));
            if !(x_without_y && y_without_x) {
                return false;
            }
        }
    }
    true
}

impl Serialize for SetFamily {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        FamilyJsonOut {
            universe: self.universe.labels(),
            members: self.members.iter().map(|&m| self.member_labels(m)).collect(),
        }
        .serialize(serializer)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn frankl8() -> SetFamily {
        let members: Vec<Vec<&str>> = vec![
            vec![],
            vec!["1"],
            vec!["1", "2"],
            vec!["1", "2", "3"],
            vec!["4"],
            vec!["1", "4"],
            vec!["1", "2", "4"],
            vec!["1", "2", "3", "4"],
        ];
        SetFamily::from_labels(Universe::numbered(4).unwrap(), &members).unwrap()
    }

    fn fam(n: usize, members: &[&[usize]]) -> SetFamily {
        let bits = members.iter().map(|m| m.iter().fold(0u64, |acc, &i| acc | 1 << (i - 1)));
        SetFamily::new(Universe::numbered(n).unwrap(), bits).unwrap()
    }

    #[test]
    fn union_closed_examples() {
        let s = frankl8();
        assert_eq!(s.len(), 8);
        assert!(s.is_union_closed().unwrap());
        let without_top =
            SetFamily::new(s.universe().clone(), s.members().map(|m| m.0).filter(|&b| b != 0b1111)).unwrap();
        assert!(!without_top.is_union_closed().unwrap());
        assert!(matches!(without_top.require_union_closed(), Err(Error::NotUnionClosed { .. })));
        assert!(fam(1, &[&[1]]).is_union_closed().unwrap());
        let empty = SetFamily::new(Universe::numbered(2).unwrap(), []).unwrap();
        assert_eq!(empty.is_union_closed(), Err(Error::Empty("is_union_closed")));
    }

    #[test]
    fn intersection_closed_examples() {
        assert!(frankl8().complement_dual().unwrap().is_intersection_closed().unwrap());
        assert!(!fam(2, &[&[1], &[2]]).is_intersection_closed().unwrap());
        assert!(fam(2, &[&[], &[1], &[2]]).is_intersection_closed().unwrap());
    }

    #[test]
    fn closures() {
        assert_eq!(fam(2, &[&[1], &[2]]).union_closure().unwrap(), fam(2, &[&[1], &[2], &[1, 2]]));
        assert_eq!(fam(3, &[&[1, 2], &[2, 3]]).intersection_closure().unwrap(), fam(3, &[&[1, 2], &[2, 3], &[2]]));
        assert_eq!(frankl8().union_closure().unwrap(), frankl8());
    }

    #[test]
    fn abundance_examples() {
        let r = frankl8().abundant_elements().unwrap();
        assert_eq!(r.abundant_elements, vec!["1", "2", "4"]);
        assert_eq!(r.count("1"), 6);
        assert!(r.holds());
        let r = fam(2, &[&[]]).abundant_elements().unwrap();
        assert_eq!(r.verdict, Verdict::NotApplicable);
    }

    #[test]
    fn complement_dual_properties() {
        let s = frankl8();
        let d = s.complement_dual().unwrap();
        assert_eq!(d.len(), s.len());
        assert_eq!(d.complement_dual().unwrap(), s);
        let (a, b) = (s.element_counts(), d.element_counts());
        for i in 0..4 {
            assert_eq!(a[i] + b[i], s.len());
        }
        let complements: BTreeSet<u64> = s.members().map(|m| 0b1111 & !m.0).collect();
        assert_eq!(d.members().map(|m| m.0).collect::<BTreeSet<_>>(), complements);
    }

    #[test]
    fn separating_examples() {
        assert!(!frankl8().is_separating().unwrap());
        assert!(fam(2, &[&[1], &[2]]).is_separating().unwrap());
        assert!(!fam(2, &[&[1, 2]]).is_separating().unwrap());
    }

    #[test]
    fn identify_examples() {
        let (q, map) = fam(3, &[&[1, 2], &[1, 2, 3]]).identify_elements().unwrap();
        assert_eq!(map["1"], "1");
        assert_eq!(map["2"], "1");
        assert_eq!(map["3"], "3");
        assert_eq!(q.universe().len(), 2);
        assert_eq!(q.len(), 2);

        let (q, map) = frankl8().identify_elements().unwrap();
        assert_eq!(q, frankl8());
        assert!(map.iter().all(|(k, v)| k == v));

        let (q, map) = fam(2, &[&[]]).identify_elements().unwrap();
        assert_eq!(q.len(), 1);
        assert!(map.is_empty());
    }

    #[test]
    fn json_round_trip_and_rejections() {
        let text = r#"{"universe":["1","2","3","4"],"members":[[],["1"],["1","2"],["1","2","3"],["4"],["1","4"],["1","2","4"],["1","2","3","4"]]}"#;
        let s = SetFamily::from_json(text).unwrap();
        assert_eq!(s, frankl8());
        assert_eq!(SetFamily::from_json(&serde_json::to_string(&s).unwrap()).unwrap(), s);
        assert!(matches!(
            SetFamily::from_json(r#"{"universe":["1"],"members":[["1"],["1"]]}"#),
            Err(Error::DuplicateMember(_))
        ));
        assert!(matches!(
            SetFamily::from_json(r#"{"universe":["1"],"members":[["1","1"]]}"#),
            Err(Error::DuplicateLabel(_))
        ));
        assert!(matches!(
            SetFamily::from_json(r#"{"universe":["1","1"],"members":[]}"#),
            Err(Error::DuplicateLabel(_))
        ));
        assert!(matches!(SetFamily::from_json(r#"{"universe":["1"],"members":[["2"]]}"#), Err(Error::UnknownLabel(_))));
        let big: Vec<String> = (0..65).map(|i| i.to_string()).collect();
        assert_eq!(Universe::new(big), Err(Error::UniverseTooLarge(65)));
    }

    #[test]
    fn restrict_drops_labels() {
        let s = fam(3, &[&[1, 2], &[1, 2, 3]]);
        let r = s.restrict(0b100).unwrap();
        assert_eq!(r.universe().labels(), ["3"]);
        assert_eq!(r.members().map(|m| m.0).collect::<Vec<_>>(), vec![0, 1]);
    }
}
