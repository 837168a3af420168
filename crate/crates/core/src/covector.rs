//! Sign vectors, the face lattice, matroid products and the complexified
//! covectors that index Salvetti cells.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exactla::cone_feasible;
use crate::sign::Sign;

/// A face of a real arrangement as its map from hyperplanes to `{−,0,+}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector(Vec<Sign>);

impl SignVector {
    pub fn new(entries: Vec<Sign>) -> Self {
        SignVector(entries)
    }

    pub fn zero(len: usize) -> Self {
        SignVector(vec![Sign::Zero; len])
    }

    pub fn entries(&self) -> &[Sign] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> Sign {
        self.0[v]
    }

    pub fn zero_set(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, s)| s.is_zero()).map(|(v, _)| v)
    }

    pub fn is_chamber(&self) -> bool {
        self.0.iter().all(|s| !s.is_zero())
    }

    pub fn neg(&self) -> SignVector {
        SignVector(self.0.iter().map(|s| s.neg()).collect())
    }

    /// Renders with a `|` after the first `sep` entries.
    pub fn format(&self, sep: Option<usize>) -> String {
        render(self.0.iter().map(|s| s.to_char()), sep)
    }
}

fn render(chars: impl Iterator<Item = char>, sep: Option<usize>) -> String {
    let mut out = String::new();
    for (k, c) in chars.enumerate() {
        if Some(k) == sep {
            out.push('|');
        }
        out.push(c);
    }
    out
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(None))
    }
}

impl FromStr for SignVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|&c| c != '|')
            .map(|c| Sign::from_char(c).ok_or_else(|| Error::input(format!("bad sign character {c:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(SignVector)
    }
}

impl Serialize for SignVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SignVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An element of `S_2 = {0, ±1, ±i}` ordered by `0 < ±1 < ±i`, with the
/// two real units incomparable and the two imaginary units incomparable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComplexSign {
    Zero,
    Pos,
    Neg,
    PosI,
    NegI,
}

impl ComplexSign {
    pub fn leq(self, other: ComplexSign) -> bool {
        use ComplexSign::*;
        match (self, other) {
            (a, b) if a == b => true,
            (Zero, _) => true,
            (Pos | Neg, PosI | NegI) => true,
            _ => false,
        }
    }

    pub fn real(s: Sign) -> ComplexSign {
        match s {
            Sign::Zero => ComplexSign::Zero,
            Sign::Pos => ComplexSign::Pos,
            Sign::Neg => ComplexSign::Neg,
        }
    }

    pub fn imaginary(s: Sign) -> ComplexSign {
        match s {
            Sign::Zero => ComplexSign::Zero,
            Sign::Pos => ComplexSign::PosI,
            Sign::Neg => ComplexSign::NegI,
        }
    }

    pub fn neg(self) -> ComplexSign {
        use ComplexSign::*;
        match self {
            Zero => Zero,
            Pos => Neg,
            Neg => Pos,
            PosI => NegI,
            NegI => PosI,
        }
    }

    pub fn is_imaginary(self) -> bool {
        matches!(self, ComplexSign::PosI | ComplexSign::NegI)
    }

    pub fn to_char(self) -> char {
        match self {
            ComplexSign::Zero => '0',
            ComplexSign::Pos => '+',
            ComplexSign::Neg => '-',
            ComplexSign::PosI => 'I',
            ComplexSign::NegI => 'J',
        }
    }

    pub fn from_char(c: char) -> Option<ComplexSign> {
        Some(match c {
            '0' => ComplexSign::Zero,
            '+' => ComplexSign::Pos,
            '-' => ComplexSign::Neg,
            'I' => ComplexSign::PosI,
            'J' => ComplexSign::NegI,
            _ => return None,
        })
    }

    /// Position in the string order `+ < - < 0 < I < J` used to pick orbit
    /// representatives.
    pub fn string_rank(self) -> u8 {
        match self {
            ComplexSign::Pos => 0,
            ComplexSign::Neg => 1,
            ComplexSign::Zero => 2,
            ComplexSign::PosI => 3,
            ComplexSign::NegI => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ComplexCovector(Vec<ComplexSign>);

impl ComplexCovector {
    pub fn new(entries: Vec<ComplexSign>) -> Self {
        ComplexCovector(entries)
    }

    /// `i_1(F)`: real entries kept as real units.
    pub fn real(f: &SignVector) -> Self {
        ComplexCovector(f.entries().iter().map(|&s| ComplexSign::real(s)).collect())
    }

    /// `i_2(F)`: real units sent to imaginary units.
    pub fn imaginary(f: &SignVector) -> Self {
        ComplexCovector(f.entries().iter().map(|&s| ComplexSign::imaginary(s)).collect())
    }

    pub fn entries(&self) -> &[ComplexSign] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_nowhere_zero(&self) -> bool {
        self.0.iter().all(|&c| c != ComplexSign::Zero)
    }

    /// Entrywise `S_2` order.
    pub fn leq(&self, other: &ComplexCovector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a.leq(*b))
    }

    pub fn format(&self, sep: Option<usize>) -> String {
        render(self.0.iter().map(|s| s.to_char()), sep)
    }

    pub fn string_key(&self) -> Vec<u8> {
        self.0.iter().map(|s| s.string_rank()).collect()
    }
}

impl fmt::Display for ComplexCovector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(None))
    }
}

impl FromStr for ComplexCovector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|&c| c != '|')
            .map(|c| ComplexSign::from_char(c).ok_or_else(|| Error::input(format!("bad covector character {c:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(ComplexCovector)
    }
}

fn check_len(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: a, found: b })
    }
}

/// `(φ∘ψ)(v) = φ(v)` if nonzero, else `ψ(v)`.
pub fn matroid_product_real(phi: &SignVector, psi: &SignVector) -> Result<SignVector> {
    check_len(phi.len(), psi.len())?;
    Ok(SignVector(phi.0.iter().zip(&psi.0).map(|(&a, &b)| if a.is_zero() { b } else { a }).collect()))
}

/// Keeps `φ(v)` unless `φ(v) ≤ ψ(v)`, in which case takes `ψ(v)`.
pub fn matroid_product_complex(phi: &ComplexCovector, psi: &ComplexCovector) -> Result<ComplexCovector> {
    check_len(phi.len(), psi.len())?;
    Ok(ComplexCovector(phi.0.iter().zip(&psi.0).map(|(&a, &b)| if a.leq(b) { b } else { a }).collect()))
}

/// `F ≤ G` iff `F` lies in the closure of `G`.
pub fn face_leq(f: &SignVector, g: &SignVector) -> Result<bool> {
    check_len(f.len(), g.len())?;
    Ok(f.0.iter().zip(&g.0).all(|(&a, &b)| a.is_zero() || a == b))
}

/// The entries of `f` at the indices listed in `idxmap`.
pub fn restrict_covector(f: &SignVector, idxmap: &[usize]) -> Result<SignVector> {
    idxmap
        .iter()
        .map(|&v| f.0.get(v).copied().ok_or_else(|| Error::input(format!("index {v} out of range"))))
        .collect::<Result<Vec<_>>>()
        .map(SignVector)
}

/// All realized sign vectors of an arrangement, with their dimensions.
#[derive(Debug, Clone)]
pub struct FaceLattice {
    arrangement: Arrangement,
    faces: Vec<SignVector>,
    dims: Vec<usize>,
    index: HashMap<SignVector, usize>,
}

impl FaceLattice {
    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn faces(&self) -> &[SignVector] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn face(&self, id: usize) -> &SignVector {
        &self.faces[id]
    }

    pub fn dim(&self, id: usize) -> usize {
        self.dims[id]
    }

    pub fn codim(&self, id: usize) -> usize {
        self.arrangement.dim() - self.dims[id]
    }

    pub fn find(&self, f: &SignVector) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn chambers(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&k| self.faces[k].is_chamber())
    }

    pub fn chamber_count(&self) -> usize {
        self.chambers().count()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        face_leq(&self.faces[a], &self.faces[b]).expect("faces share a length")
    }

    /// Faces `G > F` with `dim G = dim F + 1`.
    pub fn covers(&self, f: usize) -> Vec<usize> {
        (0..self.len()).filter(|&g| self.dims[g] == self.dims[f] + 1 && self.leq(f, g)).collect()
    }

    /// Per-dimension face counts, indexed by face dimension.
    pub fn counts_by_dim(&self) -> Vec<usize> {
        let mut counts = vec![0; self.arrangement.dim() + 1];
        for &d in &self.dims {
            counts[d] += 1;
        }
        counts
    }

    /// `Σ_F (−1)^{dim F}`.
    pub fn euler_sum(&self) -> i64 {
        self.dims.iter().map(|&d| if d % 2 == 0 { 1 } else { -1 }).sum()
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        let p = matroid_product_real(&self.faces[a], &self.faces[b]).expect("faces share a length");
        self.find(&p).expect("face set is closed under the product")
    }

    pub fn format(&self, f: &SignVector) -> String {
        f.format(self.arrangement.separator())
    }
}

/// Enumerates the realized sign vectors by inserting one hyperplane at a
/// time and keeping each extension that is still feasible.
pub fn enumerate_faces(arr: &Arrangement) -> Result<FaceLattice> {
    if arr.is_empty() {
        return Err(Error::input("arrangement has no hyperplanes"));
    }
    let normals = arr.normals();
    let mut partial: Vec<Vec<Sign>> = vec![Vec::new()];
    for k in 0..normals.len() {
        let mut next = Vec::new();
        for prefix in &partial {
            for s in [Sign::Neg, Sign::Zero, Sign::Pos] {
                let mut candidate = prefix.clone();
                candidate.push(s);
                if cone_feasible(&normals[..=k], &candidate)? {
                    next.push(candidate);
                }
            }
        }
        partial = next;
    }
    let faces: BTreeSet<SignVector> = partial.into_iter().map(SignVector).collect();
    let faces: Vec<SignVector> = faces.into_iter().collect();
    let dims = faces.iter().map(|f| arr.dim() - arr.rank_of(f.zero_set())).collect();
    let index = faces.iter().cloned().enumerate().map(|(k, f)| (f, k)).collect();
    Ok(FaceLattice { arrangement: arr.clone(), faces, dims, index })
}

/// One element `i_1(F)∘i_2(C)` of the Salvetti poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SalvettiElement {
    pub face: usize,
    pub chamber: usize,
    pub dim: usize,
    pub covector: ComplexCovector,
}

/// `i_1(F)∘i_2(C)`: real entries of `F`, and `±i` from `C` where `F` vanishes.
pub fn cell_covector(f: &SignVector, c: &SignVector) -> ComplexCovector {
    ComplexCovector(
        f.entries()
            .iter()
            .zip(c.entries())
            .map(|(&a, &b)| if a.is_zero() { ComplexSign::imaginary(b) } else { ComplexSign::real(a) })
            .collect(),
    )
}

/// All pairs `(F, C)` with `C` a chamber and `F ≤ C`, as complex covectors.
pub fn salvetti_poset(fl: &FaceLattice) -> Vec<SalvettiElement> {
    let chambers: Vec<usize> = fl.chambers().collect();
    let mut out = Vec::new();
    for f in 0..fl.len() {
        for &c in &chambers {
            if fl.leq(f, c) {
                out.push(SalvettiElement {
                    face: f,
                    chamber: c,
                    dim: fl.codim(f),
                    covector: cell_covector(fl.face(f), fl.face(c)),
                });
            }
        }
    }
    out
}
