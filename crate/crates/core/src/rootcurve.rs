//! Root stacks over smooth projective curves and their decomposable sheaves.
//!
//! A [`StackyCurve`] is a smooth curve of genus `g` whose polarization
//! `O_X(1)` has degree `c`, with a root of order `r_i` adjoined at each
//! marked point `p_i`. An orbifold line bundle `O(e·q + Σ k_i 𝒟_i)` (with
//! `q` a point of degree one on the coarse curve, up to numerical
//! equivalence) pushes forward to a line bundle of degree
//! `e + Σ ⌊k_i / r_i⌋`, and since pushforward to the coarse curve is exact
//! every Euler characteristic here is Riemann–Roch on the coarse curve.
//!
//! Torsion summands are skyscrapers at a point, carrying a representation of
//! the stabilizer; the fiber of `O(k𝒟_i)` at the `i`-th stacky point is the
//! character `k mod r_i`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{QPoly, Rational};
use crate::reptheory::CharacterRep;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StackyCurve {
    pub genus: u32,
    /// Degree `c` of `O_X(1)` on the coarse curve.
    pub polarization_degree: u32,
    /// Root orders `r_i`, one per marked point.
    #[serde(default)]
    pub stacky_points: Vec<u32>,
}

impl StackyCurve {
    pub fn new(genus: u32, polarization_degree: u32, stacky_points: Vec<u32>) -> Result<StackyCurve> {
        let curve = StackyCurve { genus, polarization_degree, stacky_points };
        curve.validate()?;
        Ok(curve)
    }

    /// `P^1` with `O(1)` of degree one and the given root orders.
    pub fn projective_line(stacky_points: Vec<u32>) -> StackyCurve {
        StackyCurve::new(0, 1, stacky_points).expect("root orders must be positive")
    }

    pub fn validate(&self) -> Result<()> {
        if self.polarization_degree == 0 {
            return Err(Error::InvalidInput("polarization degree must be at least 1".into()));
        }
        if self.stacky_points.contains(&0) {
            return Err(Error::InvalidInput("root orders must be at least 1".into()));
        }
        Ok(())
    }

    pub fn num_points(&self) -> usize {
        self.stacky_points.len()
    }

    pub fn root_order(&self, i: usize) -> i64 {
        self.stacky_points[i] as i64
    }

    fn c(&self) -> i64 {
        self.polarization_degree as i64
    }

    fn chi_offset(&self) -> i64 {
        1 - self.genus as i64
    }
}

/// The line bundle `O(e·q + Σ k_i 𝒟_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrbiLineBundle {
    pub base_degree: i64,
    #[serde(default)]
    pub exponents: Vec<i64>,
}

impl OrbiLineBundle {
    pub fn new(base_degree: i64, exponents: Vec<i64>) -> OrbiLineBundle {
        OrbiLineBundle { base_degree, exponents }
    }

    pub fn structure_sheaf(curve: &StackyCurve) -> OrbiLineBundle {
        OrbiLineBundle::new(0, vec![0; curve.num_points()])
    }

    /// `O(𝒟_i)`, the tautological root at the `i`-th point.
    pub fn tautological(curve: &StackyCurve, i: usize) -> OrbiLineBundle {
        let mut k = vec![0; curve.num_points()];
        k[i] = 1;
        OrbiLineBundle::new(0, k)
    }

    /// Pullback of a degree-`degree` line bundle on the coarse curve.
    pub fn from_coarse(curve: &StackyCurve, degree: i64) -> OrbiLineBundle {
        OrbiLineBundle::new(degree, vec![0; curve.num_points()])
    }

    pub fn check_shape(&self, curve: &StackyCurve) -> Result<()> {
        if self.exponents.len() != curve.num_points() {
            return Err(Error::ShapeMismatch(format!(
                "line bundle has {} exponents but the curve has {} stacky points",
                self.exponents.len(),
                curve.num_points()
            )));
        }
        Ok(())
    }

    pub fn tensor(&self, other: &OrbiLineBundle) -> OrbiLineBundle {
        OrbiLineBundle {
            base_degree: self.base_degree + other.base_degree,
            exponents: self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn dual(&self) -> OrbiLineBundle {
        OrbiLineBundle { base_degree: -self.base_degree, exponents: self.exponents.iter().map(|k| -k).collect() }
    }

    /// `self ⊗ O(l·𝒟_i)`.
    pub fn twist_point(&self, i: usize, l: i64) -> OrbiLineBundle {
        let mut out = self.clone();
        out.exponents[i] += l;
        out
    }

    /// `self ⊗ π^*M` for `M` of degree `n` on the coarse curve.
    pub fn twist_coarse(&self, n: i64) -> OrbiLineBundle {
        OrbiLineBundle { base_degree: self.base_degree + n, exponents: self.exponents.clone() }
    }

    /// Canonical form with `0 ≤ k_i < r_i`, using `O(r_i 𝒟_i) = π^*O(p_i)`.
    pub fn normalize(&self, curve: &StackyCurve) -> Result<OrbiLineBundle> {
        self.check_shape(curve)?;
        let mut e = self.base_degree;
        let exponents = self
            .exponents
            .iter()
            .enumerate()
            .map(|(i, &k)| {
                let r = curve.root_order(i);
                e += k.div_euclid(r);
                k.rem_euclid(r)
            })
            .collect();
        Ok(OrbiLineBundle { base_degree: e, exponents })
    }

    /// Degree of `π_* L` on the coarse curve: `e + Σ ⌊k_i / r_i⌋`.
    pub fn pushforward_degree(&self, curve: &StackyCurve) -> i64 {
        self.base_degree
            + self.exponents.iter().enumerate().map(|(i, &k)| k.div_euclid(curve.root_order(i))).sum::<i64>()
    }

    /// `χ(X, L) = deg π_*L + 1 - g`.
    pub fn euler_char(&self, curve: &StackyCurve) -> i64 {
        self.pushforward_degree(curve) + curve.chi_offset()
    }

    /// `e + Σ k_i / r_i`, equal to the parabolic degree.
    pub fn degree_stacky(&self, curve: &StackyCurve) -> Rational {
        self.exponents
            .iter()
            .enumerate()
            .fold(Rational::from(self.base_degree), |acc, (i, &k)| acc + Rational::new(k, curve.root_order(i)))
    }

    /// The character of the fiber at the `i`-th stacky point.
    pub fn fiber_character(&self, curve: &StackyCurve, i: usize) -> u64 {
        self.exponents[i].rem_euclid(curve.root_order(i)) as u64
    }
}

impl fmt::Display for OrbiLineBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O({}", self.base_degree)?;
        if !self.exponents.is_empty() {
            let ks: Vec<String> = self.exponents.iter().map(i64::to_string).collect();
            write!(f, ";{}", ks.join(","))?;
        }
        f.write_str(")")
    }
}

/// Where a skyscraper summand sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "LocationRepr", into = "LocationRepr")]
pub enum PointLocation {
    Stacky(usize),
    Generic,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum LocationRepr {
    Index(usize),
    Name(String),
}

impl TryFrom<LocationRepr> for PointLocation {
    type Error = String;
    fn try_from(r: LocationRepr) -> std::result::Result<Self, String> {
        match r {
            LocationRepr::Index(i) => Ok(PointLocation::Stacky(i)),
            LocationRepr::Name(s) if s == "generic" => Ok(PointLocation::Generic),
            LocationRepr::Name(s) => Err(format!("unknown location {s:?}; use an index or \"generic\"")),
        }
    }
}

impl From<PointLocation> for LocationRepr {
    fn from(p: PointLocation) -> Self {
        match p {
            PointLocation::Stacky(i) => LocationRepr::Index(i),
            PointLocation::Generic => LocationRepr::Name("generic".into()),
        }
    }
}

/// A skyscraper carrying a stabilizer representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorsionSummand {
    pub location: PointLocation,
    pub rep: CharacterRep,
}

impl TorsionSummand {
    pub fn check_shape(&self, curve: &StackyCurve) -> Result<()> {
        let expected = match self.location {
            PointLocation::Generic => 1,
            PointLocation::Stacky(i) => {
                if i >= curve.num_points() {
                    return Err(Error::ShapeMismatch(format!("no stacky point with index {i}")));
                }
                curve.root_order(i) as u64
            }
        };
        if self.rep.modulus() != expected {
            return Err(Error::ShapeMismatch(format!(
                "skyscraper representation has modulus {} but the stabilizer has order {expected}",
                self.rep.modulus()
            )));
        }
        Ok(())
    }

    /// `χ(T ⊗ E_j^∨)` for a single generating summand.
    fn length_against(&self, curve: &StackyCurve, e: &OrbiLineBundle) -> i64 {
        match self.location {
            PointLocation::Generic => self.rep.dim() as i64,
            PointLocation::Stacky(i) => self.rep.n_i(e.fiber_character(curve, i) as i64) as i64,
        }
    }
}

impl fmt::Display for TorsionSummand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let chars: Vec<String> = self.rep.chars().iter().map(u64::to_string).collect();
        match self.location {
            PointLocation::Generic => write!(f, "k(generic)[{}]", chars.join(",")),
            PointLocation::Stacky(i) => write!(f, "k(p{i})[{}]", chars.join(",")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Summand {
    Line(OrbiLineBundle),
    Torsion(TorsionSummand),
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Summand::Line(l) => l.fmt(f),
            Summand::Torsion(t) => t.fmt(f),
        }
    }
}

/// A direct sum of orbifold line bundles and skyscrapers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DecomposableSheaf {
    #[serde(default)]
    pub lines: Vec<OrbiLineBundle>,
    #[serde(default)]
    pub torsion: Vec<TorsionSummand>,
}

impl DecomposableSheaf {
    pub fn from_lines(lines: Vec<OrbiLineBundle>) -> DecomposableSheaf {
        DecomposableSheaf { lines, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.lines.is_empty() && self.torsion.is_empty()
    }

    pub fn is_locally_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.lines.len()
    }

    /// Line summands first, then torsion summands.
    pub fn summands(&self) -> Vec<Summand> {
        self.lines
            .iter()
            .cloned()
            .map(Summand::Line)
            .chain(self.torsion.iter().cloned().map(Summand::Torsion))
            .collect()
    }

    pub fn from_summands<I: IntoIterator<Item = Summand>>(summands: I) -> DecomposableSheaf {
        let mut out = DecomposableSheaf::default();
        for s in summands {
            match s {
                Summand::Line(l) => out.lines.push(l),
                Summand::Torsion(t) => out.torsion.push(t),
            }
        }
        out
    }

    pub fn direct_sum(&self, other: &DecomposableSheaf) -> DecomposableSheaf {
        let mut out = self.clone();
        out.lines.extend_from_slice(&other.lines);
        out.torsion.extend_from_slice(&other.torsion);
        out
    }

    pub fn check_shape(&self, curve: &StackyCurve) -> Result<()> {
        self.lines.iter().try_for_each(|l| l.check_shape(curve))?;
        self.torsion.iter().try_for_each(|t| t.check_shape(curve))
    }

    /// Sum of the stacky degrees of the line summands.
    pub fn degree_stacky(&self, curve: &StackyCurve) -> Rational {
        self.lines.iter().map(|l| l.degree_stacky(curve)).sum()
    }

    fn require_locally_free(&self) -> Result<()> {
        if self.is_locally_free() {
            Ok(())
        } else {
            Err(Error::TorsionNotSupported)
        }
    }
}

/// A generating sheaf given as a direct sum of orbifold line bundles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratingSheaf {
    pub summands: Vec<OrbiLineBundle>,
}

impl GeneratingSheaf {
    pub fn new(summands: Vec<OrbiLineBundle>, curve: &StackyCurve) -> Result<GeneratingSheaf> {
        let e = GeneratingSheaf { summands };
        e.validate(curve)?;
        Ok(e)
    }

    /// `⊗_i ⊕_{l=0}^{r_i-1} O(l𝒟_i)`: every character appears equally often at every point.
    pub fn balanced(curve: &StackyCurve) -> GeneratingSheaf {
        Self::product(curve, |r| r - 1)
    }

    /// `⊗_i ⊕_{l=0}^{r_i} O(l𝒟_i)`, one summand more per point than [`balanced`](Self::balanced).
    ///
    /// The trivial character appears twice at each point (`O(r_i 𝒟_i) = π^*O(p_i)`),
    /// so this choice is never balanced.
    pub fn parabolic(curve: &StackyCurve) -> GeneratingSheaf {
        Self::product(curve, |r| r)
    }

    pub fn trivial(curve: &StackyCurve) -> GeneratingSheaf {
        GeneratingSheaf { summands: vec![OrbiLineBundle::structure_sheaf(curve)] }
    }

    fn product(curve: &StackyCurve, top: impl Fn(i64) -> i64) -> GeneratingSheaf {
        let mut summands = vec![OrbiLineBundle::structure_sheaf(curve)];
        for i in 0..curve.num_points() {
            let top = top(curve.root_order(i));
            summands = summands.iter().flat_map(|s| (0..=top).map(move |l| s.twist_point(i, l))).collect();
        }
        GeneratingSheaf { summands }
    }

    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    /// Shapes match and every character of every stabilizer occurs in some fiber.
    pub fn validate(&self, curve: &StackyCurve) -> Result<()> {
        if self.summands.is_empty() {
            return Err(Error::InvalidInput("generating sheaf needs at least one summand".into()));
        }
        self.summands.iter().try_for_each(|s| s.check_shape(curve))?;
        for (i, counts) in self.character_counts(curve).iter().enumerate() {
            if let Some(c) = counts.iter().position(|&n| n == 0) {
                return Err(Error::NotGenerating { point: i, character: c as u64 });
            }
        }
        Ok(())
    }

    /// `counts[i][c]` = number of summands whose fiber at point `i` is the character `c`.
    pub fn character_counts(&self, curve: &StackyCurve) -> Vec<Vec<usize>> {
        (0..curve.num_points())
            .map(|i| {
                let mut counts = vec![0; curve.root_order(i) as usize];
                for s in &self.summands {
                    counts[s.fiber_character(curve, i) as usize] += 1;
                }
                counts
            })
            .collect()
    }

    /// Errors unless every character occurs with the same multiplicity at every point.
    pub fn check_balanced(&self, curve: &StackyCurve) -> Result<()> {
        for (i, counts) in self.character_counts(curve).iter().enumerate() {
            if counts.iter().any(|&n| n != counts[0]) {
                return Err(Error::UnbalancedGeneratingSheaf { point: i });
            }
        }
        Ok(())
    }
}

fn line_hilbert(l: &OrbiLineBundle, e: &GeneratingSheaf, curve: &StackyCurve) -> QPoly {
    let c = Rational::from(curve.c());
    e.summands
        .iter()
        .map(|ej| {
            let chi0 = l.tensor(&ej.dual()).euler_char(curve);
            QPoly::linear(c.clone(), Rational::from(chi0))
        })
        .sum()
}

fn torsion_hilbert(t: &TorsionSummand, e: &GeneratingSheaf, curve: &StackyCurve) -> QPoly {
    let len: i64 = e.summands.iter().map(|ej| t.length_against(curve, ej)).sum();
    QPoly::constant(Rational::from(len))
}

/// `P_E(S, m)` of a single summand.
pub fn summand_hilbert(s: &Summand, e: &GeneratingSheaf, curve: &StackyCurve) -> QPoly {
    match s {
        Summand::Line(l) => line_hilbert(l, e, curve),
        Summand::Torsion(t) => torsion_hilbert(t, e, curve),
    }
}

/// The modified Hilbert polynomial `P_E(F, m) = χ(X, F ⊗ E^∨ ⊗ π^*O_X(m))`.
pub fn modified_hilbert(f: &DecomposableSheaf, e: &GeneratingSheaf, curve: &StackyCurve) -> Result<QPoly> {
    if f.is_zero() {
        return Err(Error::ZeroSheaf);
    }
    curve.validate()?;
    f.check_shape(curve)?;
    e.validate(curve)?;
    Ok(f.lines
        .iter()
        .map(|l| line_hilbert(l, e, curve))
        .chain(f.torsion.iter().map(|t| torsion_hilbert(t, e, curve)))
        .sum())
}

/// Residual of the degree identity
/// `deg F / r = α_0(F) / (r·e) - α_0(O_X) / e`; zero whenever `E` is balanced.
pub fn degree_identity_residual(f: &DecomposableSheaf, e: &GeneratingSheaf, curve: &StackyCurve) -> Result<Rational> {
    f.require_locally_free()?;
    let hilbert = modified_hilbert(f, e, curve)?;
    e.check_balanced(curve)?;
    let structure = DecomposableSheaf::from_lines(vec![OrbiLineBundle::structure_sheaf(curve)]);
    let hilbert_o = modified_hilbert(&structure, e, curve)?;
    let r = Rational::from(f.rank() as i64);
    let rank_e = Rational::from(e.rank() as i64);
    let alpha0 = hilbert.coeff(0);
    let alpha0_o = hilbert_o.coeff(0);
    let lhs = f.degree_stacky(curve) / &r;
    let rhs = alpha0 / (&r * &rank_e) - alpha0_o / rank_e;
    Ok(lhs - rhs)
}

/// Coarse degrees of the summands of `F_E(F) = π_*(F ⊗ E^∨)`, line-major.
pub fn f_e_summand_degrees(f: &DecomposableSheaf, e: &GeneratingSheaf, curve: &StackyCurve) -> Result<Vec<i64>> {
    f.require_locally_free()?;
    f.check_shape(curve)?;
    // pushforward degrees make sense for any E, generating or not
    if e.summands.is_empty() {
        return Err(Error::InvalidInput("generating sheaf needs at least one summand".into()));
    }
    e.summands.iter().try_for_each(|s| s.check_shape(curve))?;
    Ok(f.lines
        .iter()
        .flat_map(|l| e.summands.iter().map(move |ej| l.tensor(&ej.dual()).pushforward_degree(curve)))
        .collect())
}

/// One level `F_l = π_*(F ⊗ O(-l𝒟_i))` of the parabolic filtration at a point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolicLevel {
    pub level: i64,
    /// Coarse degree of each line summand's contribution.
    pub degrees: Vec<i64>,
}

/// Parabolic level data at the `i`-th stacky point, for levels `0..=r_i`.
pub fn parabolic_levels(f: &DecomposableSheaf, curve: &StackyCurve, point: usize) -> Result<Vec<ParabolicLevel>> {
    f.require_locally_free()?;
    f.check_shape(curve)?;
    if point >= curve.num_points() {
        return Err(Error::ShapeMismatch(format!("no stacky point with index {point}")));
    }
    Ok((0..=curve.root_order(point))
        .map(|l| ParabolicLevel {
            level: l,
            degrees: f.lines.iter().map(|line| line.twist_point(point, -l).pushforward_degree(curve)).collect(),
        })
        .collect())
}

/// Parabolic data of a single line bundle: for each stacky point, the
/// coarse degrees of its levels `0..=r_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolicLineData {
    pub levels: Vec<Vec<i64>>,
}

pub fn parabolic_line_data(l: &OrbiLineBundle, curve: &StackyCurve) -> Result<ParabolicLineData> {
    let single = DecomposableSheaf::from_lines(vec![l.clone()]);
    let levels = (0..curve.num_points())
        .map(|i| parabolic_levels(&single, curve, i).map(|lv| lv.into_iter().map(|x| x.degrees[0]).collect()))
        .collect::<Result<_>>()?;
    Ok(ParabolicLineData { levels })
}

/// Reassembles the orbifold line bundle from its parabolic level data.
///
/// At each point the degrees must start at a common `e`, stay at `e` up to
/// some level `k`, and drop to `e - 1` from level `k + 1` through `r_i`.
/// The result is in canonical form.
pub fn g_d_line(data: &ParabolicLineData, curve: &StackyCurve) -> Result<OrbiLineBundle> {
    if data.levels.len() != curve.num_points() {
        return Err(Error::ShapeMismatch(format!(
            "level data for {} points, curve has {}",
            data.levels.len(),
            curve.num_points()
        )));
    }
    if data.levels.is_empty() {
        return Err(Error::NotRealizable("no stacky points; nothing to reconstruct".into()));
    }
    let e = data.levels[0].first().copied().ok_or_else(|| Error::NotRealizable("empty level list".into()))?;
    let exponents = data
        .levels
        .iter()
        .enumerate()
        .map(|(i, lv)| {
            let r = curve.root_order(i) as usize;
            if lv.len() != r + 1 {
                return Err(Error::ShapeMismatch(format!("point {i} needs {} levels, got {}", r + 1, lv.len())));
            }
            if lv[0] != e {
                return Err(Error::NotRealizable(format!("level 0 degrees disagree at point {i}")));
            }
            if lv[r] != e - 1 {
                return Err(Error::NotRealizable(format!("level {r} must be level 0 shifted by -1 at point {i}")));
            }
            if lv.windows(2).any(|w| w[1] > w[0] || w[0] - w[1] > 1) {
                return Err(Error::NotRealizable(format!("filtration must descend by steps of 0 or 1 at point {i}")));
            }
            // the drop happens right after level k
            let k = lv.iter().rposition(|&d| d == e).expect("level 0 equals e");
            Ok(k as i64)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OrbiLineBundle { base_degree: e, exponents })
}

/// Stability verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stability {
    Stable,
    StrictlySemistable,
    Unstable,
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stability::Stable => "stable",
            Stability::StrictlySemistable => "strictly_semistable",
            Stability::Unstable => "unstable",
        })
    }
}

fn line_slopes(f: &DecomposableSheaf, e: &GeneratingSheaf, curve: &StackyCurve) -> Result<Vec<Rational>> {
    f.require_locally_free()?;
    if f.is_zero() {
        return Err(Error::ZeroSheaf);
    }
    modified_hilbert(f, e, curve)?;
    f.lines.iter().map(|l| line_hilbert(l, e, curve).slope()).collect()
}

/// Semistability of a direct sum of line bundles: all summands share one slope.
pub fn semistable(f: &DecomposableSheaf, e: &GeneratingSheaf, curve: &StackyCurve) -> Result<Stability> {
    let slopes = line_slopes(f, e, curve)?;
    Ok(if slopes.iter().any(|s| s != &slopes[0]) {
        Stability::Unstable
    } else if slopes.len() == 1 {
        Stability::Stable
    } else {
        Stability::StrictlySemistable
    })
}

/// HN filtration of a direct sum: line-summand indices grouped by strictly
/// decreasing slope. `HN_j` is the sum of the first `j` groups.
pub fn hn_direct(f: &DecomposableSheaf, e: &GeneratingSheaf, curve: &StackyCurve) -> Result<Vec<Vec<usize>>> {
    let slopes = line_slopes(f, e, curve)?;
    let mut groups: BTreeMap<std::cmp::Reverse<Rational>, Vec<usize>> = BTreeMap::new();
    for (i, s) in slopes.into_iter().enumerate() {
        groups.entry(std::cmp::Reverse(s)).or_default().push(i);
    }
    Ok(groups.into_values().collect())
}
