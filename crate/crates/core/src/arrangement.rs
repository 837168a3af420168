//! Central hyperplane arrangements given by integer normals, with the braid
//! and center-of-mass families built in.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::covector::SignVector;
use crate::error::{Error, Result};
use crate::exactla::MatrixQ;
use crate::sign::Sign;

/// A linear hyperplane `{x : ⟨a, x⟩ = 0}` with a primitive, sign-canonical
/// normal `a` (entries coprime, first nonzero entry positive).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Hyperplane {
    normal: Vec<i64>,
}

impl Hyperplane {
    /// Canonicalizes `normal`; rejects the zero vector.
    pub fn new(normal: Vec<i64>) -> Result<Self> {
        Self::canonical(normal).map(|(h, _)| h)
    }

    /// The canonical hyperplane together with the unit `ε` such that the
    /// input normal is a positive multiple of `ε · canonical`.
    pub fn canonical(mut normal: Vec<i64>) -> Result<(Self, i8)> {
        let g = normal.iter().fold(0i64, |g, &x| g.gcd(&x));
        if g == 0 {
            return Err(Error::input("hyperplane normal must be nonzero"));
        }
        let first = *normal.iter().find(|&&x| x != 0).unwrap();
        let eps: i8 = if first < 0 { -1 } else { 1 };
        for x in &mut normal {
            *x /= g * eps as i64;
        }
        Ok((Hyperplane { normal }, eps))
    }

    pub fn normal(&self) -> &[i64] {
        &self.normal
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn pairing(&self, point: &[i64]) -> i64 {
        self.normal.iter().zip(point).map(|(a, x)| a * x).sum()
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.normal.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Which construction an arrangement came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Braid { n: usize },
    CenterOfMass { n: usize, l: usize },
    Custom,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
    family: Family,
    index: HashMap<Hyperplane, usize>,
}

/// On-disk description of an arrangement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ArrangementSpec {
    Explicit { dimension: usize, normals: Vec<Vec<i64>> },
    Family { family: FamilyName, n: usize, #[serde(default, skip_serializing_if = "Option::is_none")] l: Option<usize> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyName {
    Braid,
    CenterOfMass,
}

impl ArrangementSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(Error::from)
    }

    pub fn build(&self) -> Result<Arrangement> {
        match *self {
            ArrangementSpec::Explicit { dimension, ref normals } => Arrangement::from_normals(dimension, normals.clone()),
            ArrangementSpec::Family { family: FamilyName::Braid, n, .. } => Arrangement::braid(n),
            ArrangementSpec::Family { family: FamilyName::CenterOfMass, n, l } => {
                let l = l.ok_or_else(|| Error::input("center_of_mass needs \"l\""))?;
                Arrangement::center_of_mass(n, l)
            }
        }
    }
}

/// The reduced normal `1_I − 1_J` of `L_{I,J}` after cancelling common
/// elements, keyed for ordering by `(|I'|, I', J')`.
fn com_key(n: usize, i: &[usize], j: &[usize]) -> Option<(usize, Vec<usize>, Vec<usize>, Vec<i64>)> {
    let mut normal = vec![0i64; n];
    for &x in i {
        normal[x] += 1;
    }
    for &x in j {
        normal[x] -= 1;
    }
    let first = *normal.iter().find(|&&x| x != 0)?;
    if first < 0 {
        normal.iter_mut().for_each(|x| *x = -*x);
    }
    let pos: Vec<usize> = (0..n).filter(|&k| normal[k] > 0).collect();
    let neg: Vec<usize> = (0..n).filter(|&k| normal[k] < 0).collect();
    Some((pos.len(), pos, neg, normal))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl Arrangement {
    /// Builds an arrangement from raw normals, canonicalizing each and
    /// dropping repeats (first occurrence wins).
    pub fn from_normals(dim: usize, normals: Vec<Vec<i64>>) -> Result<Self> {
        Self::with_family(dim, normals, Family::Custom)
    }

    fn with_family(dim: usize, normals: Vec<Vec<i64>>, family: Family) -> Result<Self> {
        if dim == 0 {
            return Err(Error::input("ambient dimension must be positive"));
        }
        let mut hyperplanes = Vec::new();
        let mut index = HashMap::new();
        for normal in normals {
            if normal.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: normal.len() });
            }
            let h = Hyperplane::new(normal)?;
            if !index.contains_key(&h) {
                index.insert(h.clone(), hyperplanes.len());
                hyperplanes.push(h);
            }
        }
        Ok(Arrangement { dim, hyperplanes, family, index })
    }

    /// The braid arrangement `x_i = x_j` in `R^n`.
    pub fn braid(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::input(format!("braid arrangement needs n >= 2, got {n}")));
        }
        let mut normals = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut a = vec![0i64; n];
                a[i] = 1;
                a[j] = -1;
                normals.push(a);
            }
        }
        Self::with_family(n, normals, Family::Braid { n })
    }

    /// The center-of-mass arrangement: all hyperplanes equating the averages
    /// of two distinct `l`-element coordinate subsets.
    pub fn center_of_mass(n: usize, l: usize) -> Result<Self> {
        if l == 0 || l >= n {
            return Err(Error::input(format!("center_of_mass needs 1 <= l < n, got n={n}, l={l}")));
        }
        let subs = subsets(n, l);
        let mut keyed = BTreeSet::new();
        for i in &subs {
            for j in &subs {
                if i != j {
                    keyed.extend(com_key(n, i, j));
                }
            }
        }
        let normals = keyed.into_iter().map(|(_, _, _, normal)| normal).collect();
        let family = if l == 1 { Family::Braid { n } } else { Family::CenterOfMass { n, l } };
        Self::with_family(n, normals, family)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn normals(&self) -> Vec<Vec<i64>> {
        self.hyperplanes.iter().map(|h| h.normal.clone()).collect()
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn position(&self, h: &Hyperplane) -> Option<usize> {
        self.index.get(h).copied()
    }

    /// Number of leading braid hyperplanes when the arrangement also has
    /// others; used to print the cosmetic `|` in sign vectors.
    pub fn separator(&self) -> Option<usize> {
        let braid = self
            .hyperplanes
            .iter()
            .take_while(|h| h.normal.iter().filter(|&&x| x != 0).count() == 2 && h.normal.iter().sum::<i64>() == 0)
            .count();
        (braid > 0 && braid < self.len()).then_some(braid)
    }

    pub fn hyperplane_set(&self) -> BTreeSet<Hyperplane> {
        self.hyperplanes.iter().cloned().collect()
    }

    /// Sign of each normal at an integer point.
    pub fn sign_vector_at(&self, point: &[i64]) -> Result<SignVector> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: point.len() });
        }
        Ok(SignVector::new(self.hyperplanes.iter().map(|h| Sign::of(h.pairing(point))).collect()))
    }

    /// Rank over `Q` of the normals with the given indices.
    pub fn rank_of(&self, indices: impl IntoIterator<Item = usize>) -> usize {
        let rows: Vec<Vec<i64>> = indices.into_iter().map(|k| self.hyperplanes[k].normal.clone()).collect();
        if rows.is_empty() {
            return 0;
        }
        MatrixQ::from_integer_rows(self.dim, &rows).expect("normals have ambient length").rank()
    }

    pub fn rank(&self) -> usize {
        self.rank_of(0..self.len())
    }

    /// Coefficients of `Σ_X μ(0,X)(−t)^{rank X}` over the intersection
    /// lattice, computed from the flats directly.
    pub fn poincare_polynomial(&self) -> Vec<i64> {
        let flats = self.flats();
        let mut mobius: Vec<i64> = Vec::with_capacity(flats.len());
        for (k, (x, _)) in flats.iter().enumerate() {
            let value = if x.is_empty() {
                1
            } else {
                -flats[..k]
                    .iter()
                    .zip(&mobius)
                    .filter(|((y, _), _)| y.is_subset(x))
                    .map(|(_, m)| *m)
                    .sum::<i64>()
            };
            mobius.push(value);
        }
        let mut coeffs = vec![0i64; self.rank() + 1];
        for ((_, r), m) in flats.iter().zip(&mobius) {
            coeffs[*r] += if r % 2 == 0 { *m } else { -*m };
        }
        coeffs
    }

    /// All flats as closed index sets with their rank, in rank order.
    fn flats(&self) -> Vec<(BTreeSet<usize>, usize)> {
        let mut by_rank: Vec<BTreeSet<BTreeSet<usize>>> = vec![BTreeSet::from([BTreeSet::new()])];
        for r in 0..self.rank() {
            let mut next = BTreeSet::new();
            for x in &by_rank[r] {
                for h in 0..self.len() {
                    if x.contains(&h) {
                        continue;
                    }
                    let mut gens: Vec<usize> = x.iter().copied().collect();
                    gens.push(h);
                    let rank = self.rank_of(gens.iter().copied());
                    let closure: BTreeSet<usize> = (0..self.len())
                        .filter(|&v| gens.contains(&v) || self.rank_of(gens.iter().copied().chain([v])) == rank)
                        .collect();
                    next.insert(closure);
                }
            }
            by_rank.push(next);
        }
        by_rank
            .into_iter()
            .enumerate()
            .flat_map(|(r, set)| set.into_iter().map(move |x| (x, r)))
            .collect()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Braid { n } => write!(f, "braid({n})"),
            Family::CenterOfMass { n, l } => write!(f, "center_of_mass({n},{l})"),
            Family::Custom => write!(f, "custom"),
        }
    }
}

/// For each hyperplane of `sub`, its index in `sup`.
pub fn subarrangement_map(sup: &Arrangement, sub: &Arrangement) -> Result<Vec<usize>> {
    if sup.dim != sub.dim {
        return Err(Error::DimensionMismatch { expected: sup.dim, found: sub.dim });
    }
    sub.hyperplanes
        .iter()
        .map(|h| sup.position(h).ok_or_else(|| Error::NotSubarrangement(format!("hyperplane {h} is missing"))))
        .collect()
}
