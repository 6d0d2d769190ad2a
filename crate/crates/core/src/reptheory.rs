//! Characters of cyclic stabilizers and the point tables of weighted
//! projective stacks.
//!
//! A zero-dimensional point object is recorded by the order `a` of its
//! stabilizer `μ_a` together with the representation of `μ_a` on the fiber
//! of its structure sheaf, given as a multiset of residues mod `a`. Twisting
//! by `O(-i)` shifts every character by `-i`, so the invariant part of
//! `O_Z ⊗ O(-i)` has dimension equal to the multiplicity of `i mod a`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite multiset of characters of `μ_a`, stored as residues in `[0, a)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRep")]
pub struct CharacterRep {
    modulus: u64,
    chars: Vec<u64>,
}

#[derive(Deserialize)]
struct RawRep {
    modulus: u64,
    chars: Vec<i64>,
}

impl TryFrom<RawRep> for CharacterRep {
    type Error = Error;
    fn try_from(raw: RawRep) -> Result<CharacterRep> {
        CharacterRep::new(raw.modulus, &raw.chars)
    }
}

impl CharacterRep {
    /// Characters are reduced mod `modulus`; negative inputs are allowed.
    pub fn new(modulus: u64, chars: &[i64]) -> Result<CharacterRep> {
        if modulus == 0 {
            return Err(Error::InvalidInput("stabilizer order must be positive".into()));
        }
        if chars.is_empty() {
            return Err(Error::InvalidInput("a point object needs at least one character".into()));
        }
        let mut chars: Vec<u64> = chars.iter().map(|&c| c.rem_euclid(modulus as i64) as u64).collect();
        chars.sort_unstable();
        Ok(CharacterRep { modulus, chars })
    }

    /// The trivial one-dimensional representation.
    pub fn trivial(modulus: u64) -> CharacterRep {
        CharacterRep::new(modulus, &[0]).expect("modulus is positive")
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn chars(&self) -> &[u64] {
        &self.chars
    }

    pub fn dim(&self) -> usize {
        self.chars.len()
    }

    /// Multiset union of two representations of the same group.
    pub fn union(&self, other: &CharacterRep) -> Result<CharacterRep> {
        if self.modulus != other.modulus {
            return Err(Error::ShapeMismatch(format!(
                "cannot add representations of mu_{} and mu_{}",
                self.modulus, other.modulus
            )));
        }
        let mut chars = self.chars.clone();
        chars.extend_from_slice(&other.chars);
        chars.sort_unstable();
        Ok(CharacterRep { modulus: self.modulus, chars })
    }

    /// `n_i`: the dimension of the invariant part of `rep ⊗ χ^{-twist}`.
    pub fn n_i(&self, twist: i64) -> u64 {
        let target = twist.rem_euclid(self.modulus as i64) as u64;
        self.chars.iter().filter(|&&c| c == target).count() as u64
    }

    /// `n = Σ_t n_t` over the summands `O(t)` of the generating sheaf.
    pub fn modified_length(&self, twists: &TwistList) -> u64 {
        twists.iter().map(|t| self.n_i(t)).sum()
    }
}

/// The twists `i` of the summands `O(i)` of a generating sheaf, in column order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct TwistList(Vec<i64>);

impl TwistList {
    pub fn new(twists: Vec<i64>) -> Result<TwistList> {
        if twists.is_empty() {
            return Err(Error::InvalidInput("twist list must be nonempty".into()));
        }
        Ok(TwistList(twists))
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

impl TryFrom<Vec<i64>> for TwistList {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<TwistList> {
        TwistList::new(v)
    }
}

impl From<TwistList> for Vec<i64> {
    fn from(t: TwistList) -> Vec<i64> {
        t.0
    }
}

pub fn n_i(rep: &CharacterRep, twist: i64) -> u64 {
    rep.n_i(twist)
}

pub fn modified_length(rep: &CharacterRep, twists: &TwistList) -> u64 {
    rep.modified_length(twists)
}

/// A labelled point object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointObject {
    pub label: String,
    pub rep: CharacterRep,
}

impl PointObject {
    pub fn new(label: impl Into<String>, rep: CharacterRep) -> PointObject {
        PointObject { label: label.into(), rep }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRow {
    pub label: String,
    /// One entry per twist, in the order of the twist list.
    pub n_i: Vec<u64>,
    pub n: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointTable {
    pub twists: TwistList,
    pub rows: Vec<PointRow>,
}

impl PointTable {
    /// CSV with header `label,n_<t0>,...,n_<tk>,n`, LF line endings.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        let mut header = vec!["label".to_string()];
        header.extend(self.twists.iter().map(|t| format!("n_{t}")));
        header.push("n".into());
        w.write_record(&header).expect("in-memory write");
        for row in &self.rows {
            let mut rec = vec![row.label.clone()];
            rec.extend(row.n_i.iter().map(u64::to_string));
            rec.push(row.n.to_string());
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }
}

pub fn point_table(points: &[PointObject], twists: &TwistList) -> PointTable {
    let rows = points
        .iter()
        .map(|p| {
            let n_i: Vec<u64> = twists.iter().map(|t| p.rep.n_i(t)).collect();
            let n = n_i.iter().sum();
            PointRow { label: p.label.clone(), n_i, n }
        })
        .collect();
    PointTable { twists: twists.clone(), rows }
}

/// True iff the vectors `(n_t)_t` are pairwise distinct across `points`.
pub fn distinguishes(points: &[CharacterRep], twists: &TwistList) -> bool {
    let mut seen = std::collections::HashSet::new();
    points.iter().all(|p| seen.insert(twists.iter().map(|t| p.n_i(t)).collect::<Vec<_>>()))
}

/// The four points of `P(3,3,2)` lying over a reduced point of the coarse space.
pub fn p332_points() -> Vec<PointObject> {
    vec![
        PointObject::new("P(1)", CharacterRep::trivial(1)),
        PointObject::new("P(2)", CharacterRep::trivial(2)),
        PointObject::new("P(3)", CharacterRep::trivial(3)),
        // inferred from its table rows: the non-reduced direction carries weight 2
        PointObject::new("2P(3)", CharacterRep::new(3, &[0, 2]).expect("valid")),
    ]
}

/// Named point-table presets: `p332-minimal` uses `O ⊕ O(1) ⊕ O(2)`,
/// `p332-separating` uses `O ⊕ O(2) ⊕ O(4) ⊕ O(3)`.
pub fn preset(name: &str) -> Option<(Vec<PointObject>, TwistList)> {
    let twists = match name {
        "p332-minimal" => vec![0, 1, 2],
        "p332-separating" => vec![0, 2, 4, 3],
        _ => return None,
    };
    Some((p332_points(), TwistList::new(twists).expect("nonempty")))
}

pub const PRESET_NAMES: &[&str] = &["p332-minimal", "p332-separating"];

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tw(v: &[i64]) -> TwistList {
        TwistList::new(v.to_vec()).unwrap()
    }

    #[test]
    fn n_i_examples() {
        let p2 = CharacterRep::trivial(2);
        assert_eq!([0, 1, 2].map(|t| p2.n_i(t)), [1, 0, 1]);
        let dbl = CharacterRep::new(3, &[0, 2]).unwrap();
        assert_eq!([0, 2, 4, 3].map(|t| dbl.n_i(t)), [1, 1, 0, 1]);
        let generic = CharacterRep::trivial(1);
        assert!((-5..5).all(|t| generic.n_i(t) == 1));
    }

    #[test]
    fn modified_length_examples() {
        assert_eq!(CharacterRep::trivial(1).modified_length(&tw(&[0, 1, 2])), 3);
        assert_eq!(CharacterRep::trivial(3).modified_length(&tw(&[0, 2, 4, 3])), 2);
        assert!(CharacterRep::new(3, &[]).is_err());
        assert!(TwistList::new(vec![]).is_err());
    }

    #[test]
    fn tables() {
        let (points, twists) = preset("p332-minimal").unwrap();
        let table = point_table(&points, &twists);
        let rows: Vec<_> = table.rows.iter().map(|r| (r.n_i.clone(), r.n)).collect();
        assert_eq!(rows, vec![(vec![1, 1, 1], 3), (vec![1, 0, 1], 2), (vec![1, 0, 0], 1), (vec![1, 0, 1], 2)]);
        assert_eq!(table.to_csv(), "label,n_0,n_1,n_2,n\nP(1),1,1,1,3\nP(2),1,0,1,2\nP(3),1,0,0,1\n2P(3),1,0,1,2\n");

        let (points, twists) = preset("p332-separating").unwrap();
        let table = point_table(&points, &twists);
        let rows: Vec<_> = table.rows.iter().map(|r| (r.n_i.clone(), r.n)).collect();
        assert_eq!(
            rows,
            vec![(vec![1, 1, 1, 1], 4), (vec![1, 1, 1, 0], 3), (vec![1, 0, 0, 1], 2), (vec![1, 1, 0, 1], 3)]
        );
        assert!(point_table(&[], &twists).rows.is_empty());
    }

    #[test]
    fn distinguishing() {
        let reps = |name| -> Vec<CharacterRep> { preset(name).unwrap().0.into_iter().map(|p| p.rep).collect() };
        assert!(!distinguishes(&reps("p332-minimal"), &tw(&[0, 1, 2])));
        assert!(distinguishes(&reps("p332-separating"), &tw(&[0, 2, 4, 3])));
        assert!(distinguishes(&[CharacterRep::trivial(5)], &tw(&[0])));
    }

    fn rep_strategy() -> impl Strategy<Value = CharacterRep> {
        (1u64..8).prop_flat_map(|a| {
            prop::collection::vec(0i64..(a as i64), 1..6).prop_map(move |chars| CharacterRep::new(a, &chars).unwrap())
        })
    }

    proptest! {
        #[test]
        fn periodic(rep in rep_strategy(), t in -20i64..20) {
            prop_assert_eq!(rep.n_i(t), rep.n_i(t + rep.modulus() as i64));
        }

        #[test]
        fn complete_twists_count_dimension(rep in rep_strategy(), shift in -10i64..10) {
            let a = rep.modulus() as i64;
            let twists = TwistList::new((0..a).map(|t| t + shift * a).collect()).unwrap();
            prop_assert_eq!(rep.modified_length(&twists), rep.dim() as u64);
        }

        #[test]
        fn additive_under_union(a in 1u64..7, x in prop::collection::vec(0i64..7, 1..5),
                                y in prop::collection::vec(0i64..7, 1..5), t in -10i64..10) {
            let r1 = CharacterRep::new(a, &x).unwrap();
            let r2 = CharacterRep::new(a, &y).unwrap();
            prop_assert_eq!(r1.union(&r2).unwrap().n_i(t), r1.n_i(t) + r2.n_i(t));
        }
    }
}
