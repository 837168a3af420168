//! The symmetric group acting on arrangements by permuting coordinates:
//! the induced action on hyperplanes and cells, orbit data, and the
//! quotient chain complex twisted by a character.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, Family, Hyperplane};
use crate::braidsym;
use crate::covector::{enumerate_faces, ComplexCovector, FaceLattice, SignVector};
use crate::error::{Error, Result};
use crate::exactla::{is_prime, MatrixFp};
use crate::homology::ChainComplexFp;
use crate::salvetti::{build_salvetti, CWData};

/// A bijection of `{0..n}`; displayed 1-based in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// `images[i]` is the image of `i` (0-based).
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || std::mem::replace(&mut seen[x], true) {
                return Err(Error::input(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation { images })
    }

    /// One-line notation with 1-based entries.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::input("one-line notation is 1-based"));
        }
        Self::from_images(images.iter().map(|&x| x - 1).collect())
    }

    /// All of `Σ_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut cur: Vec<usize> = (0..n).collect();
        let mut out = vec![Permutation { images: cur.clone() }];
        loop {
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                return out;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
            out.push(Permutation { images: cur.clone() });
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    pub fn inversions(&self) -> usize {
        let n = self.n();
        (0..n).map(|i| (i + 1..n).filter(|&j| self.images[i] > self.images[j]).count()).sum()
    }

    pub fn sign(&self) -> i64 {
        if self.inversions() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `(g·x)_{g(i)} = x_i`.
    pub fn act_on_point<T: Clone + Default>(&self, x: &[T]) -> Vec<T> {
        let mut y = vec![T::default(); x.len()];
        for (i, v) in x.iter().enumerate() {
            y[self.images[i]] = v.clone();
        }
        y
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// For every group element `g` and hyperplane `v`: `g·a_v = ε·a_w`.
#[derive(Debug, Clone)]
pub struct HyperplaneAction {
    perms: Vec<Permutation>,
    lookup: HashMap<Permutation, usize>,
    table: Vec<Vec<(usize, i8)>>,
}

impl HyperplaneAction {
    pub fn new(arr: &Arrangement) -> Result<Self> {
        let perms = Permutation::all(arr.dim());
        let mut table = Vec::with_capacity(perms.len());
        for g in &perms {
            let row = arr
                .hyperplanes()
                .iter()
                .map(|h| {
                    let (image, eps) = Hyperplane::canonical(g.act_on_point(h.normal()))?;
                    let w = arr.position(&image).ok_or_else(|| {
                        Error::input(format!("arrangement is not invariant: {g} sends {h} outside it"))
                    })?;
                    Ok((w, eps))
                })
                .collect::<Result<Vec<_>>>()?;
            table.push(row);
        }
        let lookup = perms.iter().cloned().enumerate().map(|(k, g)| (g, k)).collect();
        Ok(HyperplaneAction { perms, lookup, table })
    }

    pub fn group(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.lookup.get(g).copied()
    }

    pub fn image(&self, g: usize, v: usize) -> (usize, i8) {
        self.table[g][v]
    }

    /// The index of `g ∘ h`.
    pub fn compose(&self, g: usize, h: usize) -> usize {
        self.lookup[&self.perms[g].compose(&self.perms[h])]
    }
}

/// `(g·F)(w) = ε·F(v)` where `g·a_v = ε·a_w`.
pub fn act_on_covector(g: usize, f: &SignVector, act: &HyperplaneAction) -> SignVector {
    let mut out = f.entries().to_vec();
    for (v, &s) in f.entries().iter().enumerate() {
        let (w, eps) = act.image(g, v);
        out[w] = s.times(eps);
    }
    SignVector::new(out)
}

pub fn act_on_complex(g: usize, x: &ComplexCovector, act: &HyperplaneAction) -> ComplexCovector {
    let mut out = x.entries().to_vec();
    for (v, &s) in x.entries().iter().enumerate() {
        let (w, eps) = act.image(g, v);
        out[w] = if eps < 0 { s.neg() } else { s };
    }
    ComplexCovector::new(out)
}

/// Which character the quotient is twisted by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Twist {
    Sign,
    Trivial,
}

impl Twist {
    pub fn character(self, g: &Permutation) -> i64 {
        match self {
            Twist::Sign => g.sign(),
            Twist::Trivial => 1,
        }
    }
}

impl FromStr for Twist {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sign" => Ok(Twist::Sign),
            "trivial" => Ok(Twist::Trivial),
            _ => Err(Error::input(format!("unknown twist {s:?}; expected sign or trivial"))),
        }
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Twist::Sign => "sign",
            Twist::Trivial => "trivial",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub dim: usize,
    pub rep: usize,
    pub members: Vec<usize>,
    pub stabilizer: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct OrbitData {
    orbits: Vec<Orbit>,
    by_dim: Vec<Vec<usize>>,
    orbit_of: Vec<usize>,
    transporter: Vec<usize>,
}

impl OrbitData {
    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn orbit(&self, o: usize) -> &Orbit {
        &self.orbits[o]
    }

    pub fn of_dim(&self, k: usize) -> &[usize] {
        self.by_dim.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn orbit_of(&self, cell: usize) -> usize {
        self.orbit_of[cell]
    }

    /// The group element carrying the representative to `cell`.
    pub fn transporter(&self, cell: usize) -> usize {
        self.transporter[cell]
    }
}

/// Orbits of cells; the representative of each is its member with the
/// lexicographically smallest covector string.
pub fn cell_orbits(cw: &CWData, cell_image: &[Vec<usize>]) -> OrbitData {
    let n = cw.len();
    let mut orbit_of = vec![usize::MAX; n];
    let mut transporter = vec![usize::MAX; n];
    let mut orbits = Vec::new();
    let mut by_dim = vec![Vec::new(); cw.top_dim() + 1];
    // Cells are sorted by (dim, covector string), so the first unvisited
    // cell of an orbit is its representative.
    for rep in 0..n {
        if orbit_of[rep] != usize::MAX {
            continue;
        }
        let o = orbits.len();
        let mut members = Vec::new();
        let mut stabilizer = Vec::new();
        for (g, images) in cell_image.iter().enumerate() {
            let c = images[rep];
            if c == rep {
                stabilizer.push(g);
            }
            if orbit_of[c] == usize::MAX {
                orbit_of[c] = o;
                transporter[c] = g;
                members.push(c);
            }
        }
        members.sort_unstable();
        let dim = cw.cell(rep).dim;
        by_dim[dim].push(o);
        orbits.push(Orbit { dim, rep, members, stabilizer });
    }
    OrbitData { orbits, by_dim, orbit_of, transporter }
}

/// A Salvetti complex together with its symmetric-group action.
#[derive(Debug, Clone)]
pub struct EquivariantSalvetti {
    cw: CWData,
    action: HyperplaneAction,
    cell_image: Vec<Vec<usize>>,
    orientation: Vec<Vec<i8>>,
    orbits: OrbitData,
}

impl EquivariantSalvetti {
    pub fn new(arr: &Arrangement) -> Result<Self> {
        let fl = enumerate_faces(arr)?;
        Self::from_faces(&fl)
    }

    pub fn from_faces(fl: &FaceLattice) -> Result<Self> {
        let cw = build_salvetti(fl)?;
        let action = HyperplaneAction::new(fl.arrangement())?;
        let mut cell_image = Vec::with_capacity(action.order());
        for g in 0..action.order() {
            let row = (0..cw.len())
                .map(|c| {
                    let image = act_on_complex(g, &cw.cell(c).covector, &action);
                    match cw.find_covector(&image) {
                        Some(d) if cw.cell(d).dim == cw.cell(c).dim => Ok(d),
                        _ => Err(Error::inconsistent(format!("action does not preserve cell {}", cw.label(c)))),
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            cell_image.push(row);
        }
        let orientation = (0..action.order())
            .map(|g| (0..cw.len()).map(|c| transport_sign(&cw, &cell_image[g], c)).collect())
            .collect();
        let orbits = cell_orbits(&cw, &cell_image);
        Ok(EquivariantSalvetti { cw, action, cell_image, orientation, orbits })
    }

    pub fn cw(&self) -> &CWData {
        &self.cw
    }

    pub fn faces(&self) -> &FaceLattice {
        self.cw.faces()
    }

    pub fn arrangement(&self) -> &Arrangement {
        self.cw.faces().arrangement()
    }

    pub fn action(&self) -> &HyperplaneAction {
        &self.action
    }

    pub fn orbits(&self) -> &OrbitData {
        &self.orbits
    }

    pub fn act(&self, g: usize, cell: usize) -> usize {
        self.cell_image[g][cell]
    }

    /// Sign relating `g` applied to the chosen orientation of `cell` to
    /// the chosen orientation of `g·cell`.
    pub fn orientation_sign(&self, g: usize, cell: usize) -> i64 {
        self.orientation[g][cell] as i64
    }

    /// `[c] = κ_c·[rep]` in the twisted quotient.
    pub fn kappa(&self, cell: usize, twist: Twist) -> i64 {
        let g = self.orbits.transporter(cell);
        let rep = self.orbits.orbit(self.orbits.orbit_of(cell)).rep;
        twist.character(&self.action.group()[g]) * self.orientation_sign(g, rep)
    }

    /// An orbit dies at odd `p` when its representative is sent to minus
    /// itself by some stabilizer element.
    pub fn orbit_dies(&self, orbit: usize, p: u32, twist: Twist) -> bool {
        let o = self.orbits.orbit(orbit);
        p % 2 == 1
            && o.stabilizer
                .iter()
                .any(|&h| twist.character(&self.action.group()[h]) * self.orientation_sign(h, o.rep) == -1)
    }

    /// Generator label: partition symbol for braid arrangements, covector
    /// string otherwise.
    pub fn cell_label(&self, cell: usize) -> String {
        match self.arrangement().family() {
            Family::Braid { .. } => braidsym::cell_to_symbol(self, cell)
                .map(|s| s.to_string())
                .unwrap_or_else(|_| self.cw.label(cell)),
            _ => self.cw.label(cell),
        }
    }

    pub fn twisted_quotient(&self, p: u32, twist: Twist) -> Result<TwistedQuotientComplex> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        let top = self.cw.top_dim();
        let mut generators: Vec<Vec<usize>> = Vec::with_capacity(top + 1);
        let mut dead = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let (live, gone): (Vec<usize>, Vec<usize>) =
                self.orbits.of_dim(k).iter().partition(|&&o| !self.orbit_dies(o, p, twist));
            generators.push(live);
            dead.push(gone.len());
        }
        let position: HashMap<usize, usize> =
            generators.iter().flat_map(|g| g.iter().enumerate().map(|(i, &o)| (o, i))).collect();

        let mut integer_boundaries = Vec::with_capacity(top);
        let mut boundaries = Vec::with_capacity(top);
        for k in 1..=top {
            let mut m = vec![vec![0i64; generators[k].len()]; generators[k - 1].len()];
            for (j, &o) in generators[k].iter().enumerate() {
                for &(f, inc) in self.cw.boundary(self.orbits.orbit(o).rep) {
                    if let Some(&i) = position.get(&self.orbits.orbit_of(f)) {
                        m[i][j] += inc * self.kappa(f, twist);
                    }
                }
            }
            let flat: Vec<i64> = m.iter().flatten().copied().collect();
            boundaries.push(MatrixFp::from_i64(p, generators[k - 1].len(), generators[k].len(), &flat)?);
            integer_boundaries.push(m);
        }
        let dims = generators.iter().map(Vec::len).collect();
        let labels = generators
            .iter()
            .map(|gens| gens.iter().map(|&o| self.cell_label(self.orbits.orbit(o).rep)).collect())
            .collect();
        let complex = ChainComplexFp::new(p, dims, boundaries, labels)
            .map_err(|e| Error::inconsistent(format!("twisted quotient: {e}")))?;
        Ok(TwistedQuotientComplex { p, twist, generators, position, dead, integer_boundaries, complex })
    }
}

fn transport_sign(cw: &CWData, image: &[usize], cell: usize) -> i8 {
    let flag = cw.first_flag(cell);
    let moved: Vec<usize> = flag.iter().map(|&c| image[c]).collect();
    (cw.flag_orientation(&moved) * cw.flag_orientation(&flag)) as i8
}

/// `C_*(Sal) ⊗_{Σ_n} F_p(χ)`: one generator per surviving cell orbit.
#[derive(Debug, Clone)]
pub struct TwistedQuotientComplex {
    p: u32,
    twist: Twist,
    generators: Vec<Vec<usize>>,
    position: HashMap<usize, usize>,
    dead: Vec<usize>,
    integer_boundaries: Vec<Vec<Vec<i64>>>,
    complex: ChainComplexFp,
}

impl TwistedQuotientComplex {
    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn twist(&self) -> Twist {
        self.twist
    }

    pub fn complex(&self) -> &ChainComplexFp {
        &self.complex
    }

    /// Orbit ids of the generators in degree `k`.
    pub fn generators(&self, k: usize) -> &[usize] {
        self.generators.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn generator_position(&self, orbit: usize) -> Option<usize> {
        self.position.get(&orbit).copied()
    }

    pub fn dead_counts(&self) -> &[usize] {
        &self.dead
    }

    pub fn counts(&self) -> Vec<usize> {
        self.generators.iter().map(Vec::len).collect()
    }

    /// `∂_k` before reduction mod `p`.
    pub fn integer_boundary(&self, k: usize) -> &[Vec<i64>] {
        &self.integer_boundaries[k - 1]
    }

    pub fn dump(&self) -> QuotientDump {
        QuotientDump {
            p: self.p,
            twist: self.twist,
            counts: self.counts(),
            generators: self.complex.labels().to_vec(),
            boundaries: (1..self.generators.len()).map(|k| self.integer_boundary(k).to_vec()).collect(),
            boundaries_mod_p: (1..self.generators.len())
                .map(|k| {
                    let m = self.complex.boundary(k);
                    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct QuotientDump {
    pub p: u32,
    pub twist: Twist,
    pub counts: Vec<usize>,
    pub generators: Vec<Vec<String>>,
    pub boundaries: Vec<Vec<Vec<i64>>>,
    pub boundaries_mod_p: Vec<Vec<Vec<u32>>>,
}
