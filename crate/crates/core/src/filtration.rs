//! Harder–Narasimhan, Jordan–Hölder and torsion filtrations over a finite
//! lattice of formal subobjects.
//!
//! The engine never looks at sheaves. It sees a finite poset of nodes, each
//! tagged with its modified Hilbert polynomial, and trusts that poset to be
//! the universe of subobjects. Every node carries a bitset `content` and the
//! order is inclusion of contents: for sub-sums of a direct sum the bits are
//! the summands, for an abstract poset they are the down-set of the node.
//!
//! Semistability compares reduced polynomials in the eventual order of
//! [`QPoly::lex_at_infinity`]. When several nodes attain the maximal reduced
//! polynomial the engine takes the one containing all the others, and
//! reports [`Error::InconsistentLattice`] if there is none, rather than
//! picking one.

use std::cmp::Ordering;
use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::QPoly;
use crate::rootcurve::{summand_hilbert, DecomposableSheaf, GeneratingSheaf, Stability, StackyCurve, Summand};

pub const MAX_SUMMANDS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeNode {
    pub label: String,
    pub content: FixedBitSet,
    pub hilbert: QPoly,
}

#[derive(Clone, Debug)]
pub struct SubobjectLattice {
    /// Present when nodes are sub-sums of labelled atoms.
    atoms: Option<Vec<String>>,
    /// Isomorphism-class keys of the atoms, when known.
    keys: Option<Vec<String>>,
    nodes: Vec<LatticeNode>,
    index: HashMap<FixedBitSet, usize>,
    bottom: usize,
    top: usize,
}

impl SubobjectLattice {
    /// The Boolean lattice of all sub-sums of `atoms`, with additive polynomials.
    pub fn from_atoms(atoms: Vec<(String, QPoly)>) -> Result<SubobjectLattice> {
        let n = atoms.len();
        if n > MAX_SUMMANDS {
            return Err(Error::TooLarge(n));
        }
        if n == 0 {
            return Err(Error::ZeroSheaf);
        }
        let size = 1usize << n;
        let mut polys: Vec<QPoly> = Vec::with_capacity(size);
        polys.push(QPoly::zero());
        for mask in 1..size {
            let low = mask.trailing_zeros() as usize;
            let p = &polys[mask & (mask - 1)] + &atoms[low].1;
            polys.push(p);
        }
        let labels: Vec<String> = atoms.iter().map(|(l, _)| l.clone()).collect();
        let nodes = polys
            .into_iter()
            .enumerate()
            .map(|(mask, hilbert)| {
                let mut content = FixedBitSet::with_capacity(n);
                for i in 0..n {
                    content.set(i, mask >> i & 1 == 1);
                }
                LatticeNode { label: join_labels(&labels, &content), content, hilbert }
            })
            .collect();
        Self::assemble(Some(labels), nodes)
    }

    /// An explicitly listed family of sub-sums. `nodes` are subsets of atom
    /// indices; the empty set and the full set must both be present.
    pub fn from_subsets(atom_labels: Vec<String>, nodes: Vec<(Vec<usize>, QPoly)>) -> Result<SubobjectLattice> {
        let n = atom_labels.len();
        let nodes = nodes
            .into_iter()
            .map(|(members, hilbert)| {
                let mut content = FixedBitSet::with_capacity(n);
                for i in members {
                    if i >= n {
                        return Err(Error::InvalidInput(format!("atom index {i} out of range")));
                    }
                    content.insert(i);
                }
                Ok(LatticeNode { label: join_labels(&atom_labels, &content), content, hilbert })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::assemble(Some(atom_labels), nodes)
    }

    /// An abstract finite poset: `relations` lists pairs `(a, b)` with
    /// `a ≤ b`; the order is their reflexive-transitive closure. The full
    /// set of lattice invariants is checked.
    pub fn from_relation(
        labels: Vec<String>,
        hilbert: Vec<QPoly>,
        relations: &[(usize, usize)],
    ) -> Result<SubobjectLattice> {
        let n = labels.len();
        if hilbert.len() != n {
            return Err(Error::ShapeMismatch("one polynomial per node is required".into()));
        }
        // below[b] = { a : a ≤ b }
        let mut below: Vec<FixedBitSet> = (0..n)
            .map(|i| {
                let mut s = FixedBitSet::with_capacity(n);
                s.insert(i);
                s
            })
            .collect();
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::InvalidInput(format!("relation ({a}, {b}) out of range")));
            }
            below[b].insert(a);
        }
        // transitive closure
        let mut changed = true;
        while changed {
            changed = false;
            for b in 0..n {
                let mut acc = below[b].clone();
                for a in below[b].ones() {
                    acc.union_with(&below[a]);
                }
                if acc != below[b] {
                    below[b] = acc;
                    changed = true;
                }
            }
        }
        for a in 0..n {
            for b in below[a].ones() {
                if b != a && below[b].contains(a) {
                    return Err(Error::InconsistentLattice(format!(
                        "nodes {} and {} are mutually included",
                        labels[a], labels[b]
                    )));
                }
            }
        }
        let nodes = labels
            .into_iter()
            .zip(hilbert)
            .zip(below)
            .map(|((label, hilbert), content)| LatticeNode { label, content, hilbert })
            .collect();
        let lattice = Self::assemble(None, nodes)?;
        lattice.validate()?;
        Ok(lattice)
    }

    fn assemble(atoms: Option<Vec<String>>, nodes: Vec<LatticeNode>) -> Result<SubobjectLattice> {
        let mut index = HashMap::with_capacity(nodes.len());
        for (i, node) in nodes.iter().enumerate() {
            if index.insert(node.content.clone(), i).is_some() {
                return Err(Error::InconsistentLattice("duplicate node".into()));
            }
        }
        let bottom = (0..nodes.len())
            .find(|&i| nodes.iter().all(|m| nodes[i].content.is_subset(&m.content)))
            .ok_or_else(|| Error::InconsistentLattice("no bottom node".into()))?;
        let top = (0..nodes.len())
            .find(|&i| nodes.iter().all(|m| m.content.is_subset(&nodes[i].content)))
            .ok_or_else(|| Error::InconsistentLattice("no top node".into()))?;
        if !nodes[bottom].hilbert.is_zero() {
            return Err(Error::InconsistentLattice("the bottom node must have polynomial 0".into()));
        }
        if nodes[top].hilbert.is_zero() {
            return Err(Error::ZeroSheaf);
        }
        if let Some(n) = nodes.iter().find(|n| !n.hilbert.eventually_nonnegative()) {
            return Err(Error::InconsistentLattice(format!("node {} has a negative polynomial", n.label)));
        }
        Ok(SubobjectLattice { atoms, keys: None, nodes, index, bottom, top })
    }

    /// Attaches to each atom a key naming its isomorphism class. Graded
    /// pieces then carry keys, and [`s_equivalent`] compares them.
    pub fn with_atom_keys(mut self, keys: Vec<String>) -> Result<SubobjectLattice> {
        match &self.atoms {
            Some(atoms) if atoms.len() == keys.len() => {
                self.keys = Some(keys);
                Ok(self)
            }
            _ => Err(Error::ShapeMismatch("one key per atom is required".into())),
        }
    }

    /// Checks every pair `a ≤ b` for an eventually nonnegative quotient, and
    /// that joins, where they exist, dominate both arguments.
    pub fn validate(&self) -> Result<()> {
        for a in 0..self.len() {
            for b in 0..self.len() {
                if self.leq(a, b) {
                    let q = &self.nodes[b].hilbert - &self.nodes[a].hilbert;
                    if !q.eventually_nonnegative() {
                        return Err(Error::InconsistentLattice(format!(
                            "quotient {}/{} has a negative polynomial",
                            self.nodes[b].label, self.nodes[a].label
                        )));
                    }
                } else if let Some(j) = self.join(a, b) {
                    let pj = &self.nodes[j].hilbert;
                    if pj < &self.nodes[a].hilbert || pj < &self.nodes[b].hilbert {
                        return Err(Error::InconsistentLattice(format!(
                            "join of {} and {} is too small",
                            self.nodes[a].label, self.nodes[b].label
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[LatticeNode] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &LatticeNode {
        &self.nodes[i]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn hilbert(&self, i: usize) -> &QPoly {
        &self.nodes[i].hilbert
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.nodes[a].content.is_subset(&self.nodes[b].content)
    }

    /// Node index for a given content, if present.
    pub fn find(&self, content: &FixedBitSet) -> Option<usize> {
        self.index.get(content).copied()
    }

    /// Node index for a sub-sum given by atom indices.
    pub fn find_atoms(&self, atoms: &[usize]) -> Option<usize> {
        let mut content = FixedBitSet::with_capacity(self.nodes[self.top].content.len());
        for &i in atoms {
            if i >= content.len() {
                return None;
            }
            content.insert(i);
        }
        self.find(&content)
    }

    /// Least upper bound of two nodes, if unique.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let mut union = self.nodes[a].content.clone();
        union.union_with(&self.nodes[b].content);
        if let Some(i) = self.find(&union) {
            return Some(i);
        }
        let uppers: Vec<usize> = (0..self.len()).filter(|&i| union.is_subset(&self.nodes[i].content)).collect();
        let minimal: Vec<usize> =
            uppers.iter().copied().filter(|&u| !uppers.iter().any(|&v| v != u && self.leq(v, u))).collect();
        match minimal.as_slice() {
            [one] => Some(*one),
            _ => None,
        }
    }

    /// The node among `candidates` containing all the others.
    fn greatest_of(&self, candidates: &[usize]) -> Option<usize> {
        let first = *candidates.first()?;
        let mut union = self.nodes[first].content.clone();
        for &c in candidates {
            union.union_with(&self.nodes[c].content);
        }
        candidates.iter().copied().find(|&c| self.nodes[c].content.is_superset(&union))
    }

    fn quotient(&self, upper: usize, lower: usize) -> QPoly {
        &self.nodes[upper].hilbert - &self.nodes[lower].hilbert
    }

    /// Nodes strictly above `base`.
    fn strictly_above(&self, base: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| i != base && self.leq(base, i))
    }

    /// The maximal destabilizing subobject of `top / base`: the inclusion-largest
    /// node above `base` whose quotient by `base` has maximal reduced polynomial.
    pub fn max_destabilizing_above(&self, base: usize) -> Result<usize> {
        let total = self.quotient(self.top, base);
        let d =
            total.degree().ok_or_else(|| Error::InconsistentLattice("quotient of the top has polynomial 0".into()))?;
        let mut best: Option<QPoly> = None;
        let mut best_nodes = Vec::new();
        for n in self.strictly_above(base) {
            let q = self.quotient(n, base);
            match q.degree() {
                None => {
                    return Err(Error::InconsistentLattice(format!(
                        "{} and {} are distinct but have equal polynomials",
                        self.nodes[n].label, self.nodes[base].label
                    )))
                }
                Some(k) if k < d => {
                    return Err(Error::NotPure(format!("subobject {} has dimension {k} < {d}", self.nodes[n].label)))
                }
                Some(_) => {}
            }
            let red = q.reduced().map_err(|_| {
                Error::InconsistentLattice(format!("node {} has non-positive multiplicity", self.nodes[n].label))
            })?;
            match best.as_ref().map(|b| red.lex_at_infinity(b)) {
                None | Some(Ordering::Greater) => {
                    best = Some(red);
                    best_nodes.clear();
                    best_nodes.push(n);
                }
                Some(Ordering::Equal) => best_nodes.push(n),
                Some(Ordering::Less) => {}
            }
        }
        self.greatest_of(&best_nodes).ok_or_else(|| {
            Error::InconsistentLattice("maximal reduced polynomial attained by incomparable nodes".into())
        })
    }

    pub fn max_destabilizing(&self) -> Result<usize> {
        self.max_destabilizing_above(self.bottom)
    }

    pub fn is_semistable(&self) -> Result<bool> {
        Ok(self.max_destabilizing()? == self.top)
    }

    /// Stable when, beyond semistability, no proper nonzero node attains the reduced polynomial.
    pub fn stability(&self) -> Result<Stability> {
        if !self.is_semistable()? {
            return Ok(Stability::Unstable);
        }
        let p = self.hilbert(self.top).reduced()?;
        let strict = (0..self.len())
            .filter(|&n| n != self.top && n != self.bottom)
            .any(|n| self.hilbert(n).reduced().is_ok_and(|r| r == p));
        Ok(if strict { Stability::StrictlySemistable } else { Stability::Stable })
    }

    /// The Harder–Narasimhan filtration.
    pub fn hn(&self) -> Result<Filtration> {
        let mut chain = vec![self.bottom];
        let mut current = self.bottom;
        while current != self.top {
            current = self.max_destabilizing_above(current)?;
            chain.push(current);
        }
        Ok(self.filtration(chain))
    }

    fn filtration(&self, nodes: Vec<usize>) -> Filtration {
        let graded = nodes.windows(2).map(|w| self.quotient(w[1], w[0])).collect();
        let labels = nodes.iter().map(|&i| self.nodes[i].label.clone()).collect();
        Filtration { nodes, labels, graded }
    }

    fn piece_label(&self, upper: usize, lower: usize) -> String {
        match &self.atoms {
            Some(atoms) => {
                let mut diff = self.nodes[upper].content.clone();
                diff.difference_with(&self.nodes[lower].content);
                join_labels(atoms, &diff)
            }
            None => format!("{}/{}", self.nodes[upper].label, self.nodes[lower].label),
        }
    }

    fn piece_key(&self, upper: usize, lower: usize) -> Option<String> {
        let keys = self.keys.as_ref()?;
        let mut diff = self.nodes[upper].content.clone();
        diff.difference_with(&self.nodes[lower].content);
        let mut parts: Vec<&str> = diff.ones().map(|i| keys[i].as_str()).collect();
        parts.sort_unstable();
        Some(parts.join(" + "))
    }

    /// A Jordan–Hölder filtration of a semistable object. Where several
    /// stable subquotients are available, `seed` picks one; the graded
    /// multiset does not depend on it.
    pub fn jh(&self, seed: u64) -> Result<JordanHolder> {
        if !self.is_semistable()? {
            return Err(Error::NotSemistable);
        }
        let p = self.hilbert(self.top).reduced()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut chain = vec![self.bottom];
        let mut current = self.bottom;
        while current != self.top {
            let candidates: Vec<(usize, QPoly)> = self
                .strictly_above(current)
                .filter_map(|n| {
                    let q = self.quotient(n, current);
                    let same_p = q.reduced().is_ok_and(|r| r == p);
                    same_p.then_some((n, q))
                })
                .collect();
            let least = candidates
                .iter()
                .map(|(_, q)| q.top_alpha().expect("reduced succeeded"))
                .min()
                .ok_or_else(|| Error::InconsistentLattice("no subquotient with the reduced polynomial".into()))?;
            let smallest: Vec<usize> = candidates
                .iter()
                .filter(|(_, q)| q.top_alpha().expect("reduced succeeded") == least)
                .map(|(n, _)| *n)
                .collect();
            let minimal: Vec<usize> =
                smallest.iter().copied().filter(|&a| !smallest.iter().any(|&b| b != a && self.leq(b, a))).collect();
            let next = minimal[rng.gen_range(0..minimal.len())];
            chain.push(next);
            current = next;
        }
        let mut pieces: Vec<GradedPiece> = chain
            .windows(2)
            .map(|w| GradedPiece {
                hilbert: self.quotient(w[1], w[0]),
                key: self.piece_key(w[1], w[0]),
                label: self.piece_label(w[1], w[0]),
            })
            .collect();
        pieces.sort();
        Ok(JordanHolder { filtration: self.filtration(chain), pieces })
    }

    /// `T_i` = the largest node whose polynomial has degree at most `i`.
    pub fn torsion_filtration(&self) -> Result<TorsionFiltration> {
        let d = self.hilbert(self.top).degree().ok_or(Error::ZeroSheaf)?;
        let mut levels = Vec::with_capacity(d + 1);
        for i in 0..d {
            let low: Vec<usize> =
                (0..self.len()).filter(|&n| self.hilbert(n).degree().is_none_or(|k| k <= i)).collect();
            let t = self
                .greatest_of(&low)
                .ok_or_else(|| Error::InconsistentLattice(format!("no unique maximal subobject of dimension ≤ {i}")))?;
            levels.push(t);
        }
        levels.push(self.top);
        let mut chain = vec![self.bottom];
        for (i, &t) in levels.iter().enumerate() {
            if t != *chain.last().expect("nonempty") {
                let piece = self.quotient(t, *chain.last().expect("nonempty"));
                if piece.degree() != Some(i) {
                    return Err(Error::InconsistentLattice(format!(
                        "torsion graded piece {i} is not pure of dimension {i}"
                    )));
                }
                chain.push(t);
            }
        }
        Ok(TorsionFiltration { levels, filtration: self.filtration(chain) })
    }
}

fn join_labels(labels: &[String], content: &FixedBitSet) -> String {
    let parts: Vec<&str> = content.ones().map(|i| labels[i].as_str()).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// A strictly increasing chain from the bottom to the top.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Filtration {
    pub nodes: Vec<usize>,
    pub labels: Vec<String>,
    /// `P(N_i) - P(N_{i-1})`, one per step.
    pub graded: Vec<QPoly>,
}

impl Filtration {
    pub fn steps(&self) -> usize {
        self.graded.len()
    }

    pub fn graded_reduced(&self) -> Result<Vec<QPoly>> {
        self.graded.iter().map(QPoly::reduced).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GradedPiece {
    pub hilbert: QPoly,
    /// Isomorphism class of the piece, for lattices built from sheaves.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub key: Option<String>,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanHolder {
    pub filtration: Filtration,
    /// Sorted, so that equal multisets compare equal.
    pub pieces: Vec<GradedPiece>,
}

impl JordanHolder {
    /// The graded polynomials as a sorted multiset.
    pub fn graded_multiset(&self) -> Vec<QPoly> {
        graded_polys(&self.pieces)
    }
}

fn graded_polys(pieces: &[GradedPiece]) -> Vec<QPoly> {
    let mut v: Vec<QPoly> = pieces.iter().map(|p| p.hilbert.clone()).collect();
    v.sort();
    v
}

/// S-equivalence of two semistable objects from their JH graded pieces.
///
/// When every piece on both sides has a key the pieces are compared as
/// isomorphism classes; otherwise only their polynomials are compared.
/// Labels are descriptive and never compared.
pub fn s_equivalent(a: &[GradedPiece], b: &[GradedPiece]) -> Result<bool> {
    let total = |ps: &[GradedPiece]| -> Result<QPoly> { ps.iter().map(|p| &p.hilbert).sum::<QPoly>().reduced() };
    if total(a)? != total(b)? {
        return Err(Error::ReducedMismatch);
    }
    if a.iter().chain(b).all(|p| p.key.is_some()) {
        fn keyed(ps: &[GradedPiece]) -> Vec<(&QPoly, &Option<String>)> {
            let mut v: Vec<_> = ps.iter().map(|p| (&p.hilbert, &p.key)).collect();
            v.sort();
            v
        }
        return Ok(keyed(a) == keyed(b));
    }
    Ok(graded_polys(a) == graded_polys(b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionFiltration {
    /// `levels[i]` is the node `T_i`, for `i = 0..=d`.
    pub levels: Vec<usize>,
    /// The distinct nodes of `0 ⊆ T_0 ⊆ ... ⊆ T_d`.
    pub filtration: Filtration,
}

/// The lattice of all sub-sums of a decomposable sheaf.
pub fn build_lattice(f: &DecomposableSheaf, e: &GeneratingSheaf, curve: &StackyCurve) -> Result<SubobjectLattice> {
    let summands = f.summands();
    if summands.len() > MAX_SUMMANDS {
        return Err(Error::TooLarge(summands.len()));
    }
    // validates shapes and rejects the zero sheaf
    crate::rootcurve::modified_hilbert(f, e, curve)?;
    let keys = summands
        .iter()
        .map(|s| match s {
            Summand::Line(l) => l.normalize(curve).map(|n| n.to_string()),
            Summand::Torsion(t) => Ok(t.to_string()),
        })
        .collect::<Result<Vec<_>>>()?;
    SubobjectLattice::from_atoms(summands.iter().map(|s| (s.to_string(), summand_hilbert(s, e, curve))).collect())?
        .with_atom_keys(keys)
}
