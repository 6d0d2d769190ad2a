//! Sheaves on the trivial `μ_a`-gerbe over a curve.
//!
//! Every sheaf on `C × Bμ_a` splits as `⊕_χ F_χ ⊗ χ`, one honest sheaf on
//! `C` per character. The generating sheaf is `⊕_t E ⊗ χ^t` over a list of
//! twists `t`; only the summands whose character matches `χ` see `F_χ`, so
//! the polynomial of `F_χ` is counted once per twist congruent to `χ`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{QPoly, Rational};
use crate::filtration::SubobjectLattice;
use crate::reptheory::TwistList;
use crate::rootcurve::{
    modified_hilbert, semistable, summand_hilbert, DecomposableSheaf, GeneratingSheaf, Stability, StackyCurve,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GerbeSheaf {
    pub band_order: u64,
    pub base: StackyCurve,
    /// Generating sheaf of the base; defaults to the balanced one.
    #[serde(default)]
    pub base_generating: Option<GeneratingSheaf>,
    pub twists: TwistList,
    /// Character (in `[0, a)`) to eigensheaf. Empty sheaves may be listed or omitted.
    pub components: BTreeMap<u64, DecomposableSheaf>,
}

/// One nonzero eigensheaf with its polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitEntry {
    pub character: u64,
    pub component: DecomposableSheaf,
    pub hilbert: QPoly,
}

impl GerbeSheaf {
    pub fn validate(&self) -> Result<()> {
        if self.band_order == 0 {
            return Err(Error::InvalidInput("band order must be positive".into()));
        }
        self.base.validate()?;
        self.generating().validate(&self.base)?;
        if let Some(&chi) = self.components.keys().find(|&&chi| chi >= self.band_order) {
            return Err(Error::InvalidInput(format!(
                "character {chi} is not below the band order {}",
                self.band_order
            )));
        }
        for f in self.components.values() {
            f.check_shape(&self.base)?;
        }
        if self.components.values().all(DecomposableSheaf::is_zero) {
            return Err(Error::ZeroSheaf);
        }
        if let Some(chi) = (0..self.band_order).find(|&chi| self.multiplicity(chi) == 0) {
            return Err(Error::NotGenerating { point: 0, character: chi });
        }
        Ok(())
    }

    pub fn generating(&self) -> GeneratingSheaf {
        self.base_generating.clone().unwrap_or_else(|| GeneratingSheaf::balanced(&self.base))
    }

    /// Number of generating twists congruent to `chi`.
    pub fn multiplicity(&self, chi: u64) -> u64 {
        let a = self.band_order as i64;
        self.twists.iter().filter(|t| t.rem_euclid(a) as u64 == chi).count() as u64
    }

    fn nonzero(&self) -> impl Iterator<Item = (u64, &DecomposableSheaf)> {
        self.components.iter().filter(|(_, f)| !f.is_zero()).map(|(&chi, f)| (chi, f))
    }

    /// `P_χ` for each nonzero eigensheaf, by increasing character.
    pub fn split(&self) -> Result<Vec<SplitEntry>> {
        self.validate()?;
        let e = self.generating();
        self.nonzero()
            .map(|(chi, f)| {
                let p = modified_hilbert(f, &e, &self.base)?;
                Ok(SplitEntry {
                    character: chi,
                    component: f.clone(),
                    hilbert: p.scale(&Rational::from(self.multiplicity(chi) as i64)),
                })
            })
            .collect()
    }

    /// The total polynomial, summed twist by twist over the generating summands.
    pub fn total_hilbert(&self) -> Result<QPoly> {
        self.validate()?;
        let e = self.generating();
        let a = self.band_order as i64;
        let mut total = QPoly::zero();
        for t in self.twists.iter() {
            for (chi, f) in self.nonzero() {
                if t.rem_euclid(a) as u64 == chi {
                    for s in f.summands() {
                        total += &summand_hilbert(&s, &e, &self.base);
                    }
                }
            }
        }
        Ok(total)
    }

    /// `(P_0, ..., P_{a-1})`, zeros for empty eigensheaves.
    pub fn component_label(&self) -> Result<Vec<QPoly>> {
        let mut label = vec![QPoly::zero(); self.band_order as usize];
        for entry in self.split()? {
            label[entry.character as usize] = entry.hilbert;
        }
        Ok(label)
    }

    /// Tensor by the character `s`: eigensheaves and generating twists both move by `s`.
    pub fn twist(&self, s: i64) -> GerbeSheaf {
        let a = self.band_order as i64;
        let shift = |chi: i64| (chi + s).rem_euclid(a) as u64;
        GerbeSheaf {
            components: self.components.iter().map(|(&chi, f)| (shift(chi as i64), f.clone())).collect(),
            twists: TwistList::new(self.twists.iter().map(|t| t + s).collect()).expect("nonempty"),
            ..self.clone()
        }
    }
}

pub fn split(f: &GerbeSheaf) -> Result<Vec<SplitEntry>> {
    f.split()
}

/// `Σ_χ P_χ` against the total polynomial.
pub fn poly_split_check(f: &GerbeSheaf) -> Result<bool> {
    let sum: QPoly = f.split()?.iter().map(|e| &e.hilbert).sum();
    Ok(sum == f.total_hilbert()?)
}

pub fn component_label(f: &GerbeSheaf) -> Result<Vec<QPoly>> {
    f.component_label()
}

pub fn twist(f: &GerbeSheaf, s: i64) -> GerbeSheaf {
    f.twist(s)
}

/// Direct-sum criterion: no morphisms between different characters.
pub fn semistable_gerbe(f: &GerbeSheaf) -> Result<Stability> {
    let entries = f.split()?;
    let e = f.generating();
    let mut verdicts = Vec::with_capacity(entries.len());
    for entry in &entries {
        verdicts.push(semistable(&entry.component, &e, &f.base)?);
    }
    if verdicts.contains(&Stability::Unstable) {
        return Ok(Stability::Unstable);
    }
    let reduced = entries.iter().map(|x| x.hilbert.reduced()).collect::<Result<Vec<_>>>()?;
    if reduced.iter().any(|p| p != &reduced[0]) {
        return Ok(Stability::Unstable);
    }
    Ok(if verdicts == [Stability::Stable] { Stability::Stable } else { Stability::StrictlySemistable })
}

/// Sub-sums of all eigensheaf summands: the product of the componentwise lattices.
pub fn build_gerbe_lattice(f: &GerbeSheaf) -> Result<SubobjectLattice> {
    f.validate()?;
    let e = f.generating();
    let mut atoms = Vec::new();
    for (chi, sheaf) in f.nonzero() {
        let n = Rational::from(f.multiplicity(chi) as i64);
        for s in sheaf.summands() {
            atoms.push((format!("{s}@{chi}"), summand_hilbert(&s, &e, &f.base).scale(&n)));
        }
    }
    if atoms.len() > crate::filtration::MAX_SUMMANDS {
        return Err(Error::TooLarge(atoms.len()));
    }
    SubobjectLattice::from_atoms(atoms)
}
