//! The Salvetti complex as a regular CW complex with integer incidence
//! numbers, and its barycentric subdivision.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::covector::{cell_covector, salvetti_poset, ComplexCovector, FaceLattice};
use crate::error::{Error, Result};
use crate::exactla::{MatrixFp, SparseMatrixFp};
use crate::homology::ChainComplexFp;

/// The cell `D(F, C)` for a face `F` below a chamber `C` (both face ids).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SalCell {
    pub face: usize,
    pub chamber: usize,
    pub dim: usize,
    pub covector: ComplexCovector,
}

#[derive(Debug, Clone)]
pub struct CWData {
    faces: FaceLattice,
    cells: Vec<SalCell>,
    by_dim: Vec<Vec<usize>>,
    boundary: Vec<Vec<(usize, i64)>>,
    closure: Vec<BTreeSet<usize>>,
    by_pair: HashMap<(usize, usize), usize>,
    by_covector: HashMap<ComplexCovector, usize>,
}

/// The facets `D(G, G∘C)` of `D(F, C)`, one per face `G` covering `F`.
pub fn cell_facets(cell: &SalCell, fl: &FaceLattice) -> Vec<SalCell> {
    fl.covers(cell.face)
        .into_iter()
        .map(|g| {
            let chamber = fl.product(g, cell.chamber);
            SalCell {
                face: g,
                chamber,
                dim: fl.codim(g),
                covector: cell_covector(fl.face(g), fl.face(chamber)),
            }
        })
        .collect()
}

/// Builds all cells, then orients them in increasing dimension: edges get
/// `+1/−1` on their two vertices, and a higher cell's facet signs are
/// propagated across shared ridges so that `∂∂ = 0` holds at every ridge.
pub fn build_salvetti(fl: &FaceLattice) -> Result<CWData> {
    let mut cells: Vec<SalCell> = salvetti_poset(fl)
        .into_iter()
        .map(|e| SalCell { face: e.face, chamber: e.chamber, dim: e.dim, covector: e.covector })
        .collect();
    cells.sort_by(|a, b| (a.dim, a.covector.string_key()).cmp(&(b.dim, b.covector.string_key())));

    let top = cells.iter().map(|c| c.dim).max().unwrap_or(0);
    let mut by_dim = vec![Vec::new(); top + 1];
    let mut by_pair = HashMap::new();
    let mut by_covector = HashMap::new();
    for (id, c) in cells.iter().enumerate() {
        by_dim[c.dim].push(id);
        by_pair.insert((c.face, c.chamber), id);
        by_covector.insert(c.covector.clone(), id);
    }

    let covers: Vec<Vec<usize>> = (0..fl.len()).map(|f| fl.covers(f)).collect();
    let mut boundary: Vec<Vec<(usize, i64)>> = vec![Vec::new(); cells.len()];
    for id in 0..cells.len() {
        let cell = &cells[id];
        let facets: Vec<usize> = covers[cell.face]
            .iter()
            .map(|&g| by_pair[&(g, fl.product(g, cell.chamber))])
            .collect();
        boundary[id] = match cell.dim {
            0 => Vec::new(),
            1 => {
                if facets.len() != 2 {
                    return Err(Error::inconsistent(format!("edge {} has {} vertices", cell.covector, facets.len())));
                }
                vec![(facets[0], 1), (facets[1], -1)]
            }
            _ => orient_facets(id, &facets, &boundary, &cells)?,
        };
    }

    let mut closure: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); cells.len()];
    for id in 0..cells.len() {
        let mut set = BTreeSet::from([id]);
        for &(f, _) in &boundary[id] {
            set.extend(closure[f].iter().copied());
        }
        closure[id] = set;
    }

    let cw = CWData { faces: fl.clone(), cells, by_dim, boundary, closure, by_pair, by_covector };
    cw.check_boundary_squared()?;
    Ok(cw)
}

fn orient_facets(
    id: usize,
    facets: &[usize],
    boundary: &[Vec<(usize, i64)>],
    cells: &[SalCell],
) -> Result<Vec<(usize, i64)>> {
    let mut ridges: HashMap<usize, Vec<(usize, i64)>> = HashMap::new();
    for (a, &f) in facets.iter().enumerate() {
        for &(g, inc) in &boundary[f] {
            ridges.entry(g).or_default().push((a, inc));
        }
    }
    let mut adjacent: Vec<Vec<(usize, i64)>> = vec![Vec::new(); facets.len()];
    for (g, lying) in &ridges {
        let [(a, ia), (b, ib)] = lying[..] else {
            return Err(Error::inconsistent(format!(
                "ridge {} lies in {} facets of {}",
                cells[*g].covector,
                lying.len(),
                cells[id].covector
            )));
        };
        // [e:f_b]·[f_b:g] = −[e:f_a]·[f_a:g]
        adjacent[a].push((b, -ia * ib));
        adjacent[b].push((a, -ia * ib));
    }
    let mut signs = vec![0i64; facets.len()];
    signs[0] = 1;
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        for &(b, rel) in &adjacent[a] {
            let want = signs[a] * rel;
            if signs[b] == 0 {
                signs[b] = want;
                queue.push_back(b);
            } else if signs[b] != want {
                return Err(Error::inconsistent(format!("cell {} is not orientable", cells[id].covector)));
            }
        }
    }
    if signs.contains(&0) {
        return Err(Error::inconsistent(format!("boundary of {} is disconnected", cells[id].covector)));
    }
    Ok(facets.iter().copied().zip(signs).collect())
}

impl CWData {
    pub fn faces(&self) -> &FaceLattice {
        &self.faces
    }

    pub fn cells(&self) -> &[SalCell] {
        &self.cells
    }

    pub fn cell(&self, id: usize) -> &SalCell {
        &self.cells[id]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn top_dim(&self) -> usize {
        self.by_dim.len() - 1
    }

    pub fn cells_of_dim(&self, k: usize) -> &[usize] {
        self.by_dim.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    /// Facets of a cell with their incidence numbers.
    pub fn boundary(&self, id: usize) -> &[(usize, i64)] {
        &self.boundary[id]
    }

    pub fn incidence(&self, cell: usize, facet: usize) -> i64 {
        self.boundary[cell].iter().find(|&&(f, _)| f == facet).map_or(0, |&(_, s)| s)
    }

    /// All cells in the closure, including the cell itself.
    pub fn closure(&self, id: usize) -> &BTreeSet<usize> {
        &self.closure[id]
    }

    pub fn find_pair(&self, face: usize, chamber: usize) -> Option<usize> {
        self.by_pair.get(&(face, chamber)).copied()
    }

    pub fn find_covector(&self, covector: &ComplexCovector) -> Option<usize> {
        self.by_covector.get(covector).copied()
    }

    pub fn label(&self, id: usize) -> String {
        self.cells[id].covector.format(self.faces.arrangement().separator())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(k, cells)| if k % 2 == 0 { cells.len() as i64 } else { -(cells.len() as i64) })
            .sum()
    }

    /// The flag `c_0 < c_1 < … < c_k = id` obtained by always following the
    /// first listed facet.
    pub fn first_flag(&self, id: usize) -> Vec<usize> {
        let mut flag = vec![id];
        let mut cur = id;
        while let Some(&(f, _)) = self.boundary[cur].first() {
            flag.push(f);
            cur = f;
        }
        flag.reverse();
        flag
    }

    /// Every complete flag ending at `id`, lowest cell first.
    pub fn all_flags(&self, id: usize) -> Vec<Vec<usize>> {
        if self.cells[id].dim == 0 {
            return vec![vec![id]];
        }
        let mut out = Vec::new();
        for &(f, _) in &self.boundary[id] {
            for mut flag in self.all_flags(f) {
                flag.push(id);
                out.push(flag);
            }
        }
        out
    }

    /// `Π_j [c_j : c_{j−1}]` along a complete flag; this is the sign of the
    /// flag's top simplex relative to the chosen orientation of its cell.
    pub fn flag_orientation(&self, flag: &[usize]) -> i64 {
        flag.windows(2).map(|w| self.incidence(w[1], w[0])).product()
    }

    /// Integer matrix of `∂_k` (rows: `(k−1)`-cells, columns: `k`-cells).
    pub fn boundary_matrix(&self, k: usize) -> Vec<Vec<i64>> {
        let rows = self.cells_of_dim(k.wrapping_sub(1));
        let cols = self.cells_of_dim(k);
        let pos: HashMap<usize, usize> = rows.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut m = vec![vec![0i64; cols.len()]; if k == 0 { 0 } else { rows.len() }];
        for (j, &c) in cols.iter().enumerate() {
            for &(f, s) in &self.boundary[c] {
                m[pos[&f]][j] += s;
            }
        }
        m
    }

    fn check_boundary_squared(&self) -> Result<()> {
        for id in 0..self.cells.len() {
            let mut acc: HashMap<usize, i64> = HashMap::new();
            for &(f, s) in &self.boundary[id] {
                for &(g, t) in &self.boundary[f] {
                    *acc.entry(g).or_default() += s * t;
                }
            }
            if acc.values().any(|&v| v != 0) {
                return Err(Error::inconsistent(format!("∂∂ ≠ 0 on cell {}", self.cells[id].covector)));
            }
        }
        Ok(())
    }

    /// Each `(k−2)`-face of a `k`-cell lies under exactly two of its facets.
    pub fn diamond_property_holds(&self) -> bool {
        self.cells.iter().enumerate().filter(|(_, c)| c.dim >= 2).all(|(id, _)| {
            let mut count: HashMap<usize, usize> = HashMap::new();
            for &(f, _) in &self.boundary[id] {
                for &(g, _) in &self.boundary[f] {
                    *count.entry(g).or_default() += 1;
                }
            }
            count.values().all(|&c| c == 2)
        })
    }

    /// Cellular chain complex over `F_p` without any group action.
    pub fn chain_complex(&self, p: u32) -> Result<ChainComplexFp> {
        let dims = self.counts();
        let mut boundaries = Vec::new();
        for k in 1..dims.len() {
            let m = self.boundary_matrix(k);
            let flat: Vec<i64> = m.iter().flatten().copied().collect();
            boundaries.push(MatrixFp::from_i64(p, dims[k - 1], dims[k], &flat)?);
        }
        let labels = self.by_dim.iter().map(|ids| ids.iter().map(|&c| self.label(c)).collect()).collect();
        ChainComplexFp::new(p, dims, boundaries, labels)
    }

    pub fn dump(&self) -> CwDump {
        let sep = self.faces.arrangement().separator();
        CwDump {
            counts: self.counts(),
            cells: self
                .cells
                .iter()
                .enumerate()
                .map(|(id, c)| CellDump {
                    id,
                    dim: c.dim,
                    face: self.faces.face(c.face).format(sep),
                    chamber: self.faces.face(c.chamber).format(sep),
                    covector: c.covector.format(sep),
                    boundary: self.boundary[id].clone(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CwDump {
    pub counts: Vec<usize>,
    pub cells: Vec<CellDump>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CellDump {
    pub id: usize,
    pub dim: usize,
    pub face: String,
    pub chamber: String,
    pub covector: String,
    pub boundary: Vec<(usize, i64)>,
}

/// Order complex of the cell poset: simplices are strictly increasing
/// chains of cells, oriented by their order.
#[derive(Debug, Clone)]
pub struct BarycentricComplex {
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

pub fn barycentric(cw: &CWData) -> BarycentricComplex {
    let mut simplices: Vec<Vec<Vec<usize>>> = vec![Vec::new(); cw.top_dim() + 1];
    for top in 0..cw.len() {
        let mut stack = vec![vec![top]];
        while let Some(chain) = stack.pop() {
            let last = *chain.last().unwrap();
            let mut ascending = chain.clone();
            ascending.reverse();
            simplices[chain.len() - 1].push(ascending);
            for &below in cw.closure(last) {
                if below != last {
                    let mut next = chain.clone();
                    next.push(below);
                    stack.push(next);
                }
            }
        }
    }
    for level in &mut simplices {
        level.sort();
    }
    let index = simplices
        .iter()
        .map(|level| level.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect())
        .collect();
    BarycentricComplex { simplices, index }
}

impl BarycentricComplex {
    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts().iter().enumerate().map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }

    /// `∂(c_0 < … < c_k) = Σ_j (−1)^j (c_0 < … ĉ_j … < c_k)` as row/coefficient pairs.
    pub fn boundary_column(&self, k: usize, simplex: usize) -> Vec<(usize, i64)> {
        if k == 0 {
            return Vec::new();
        }
        let s = &self.simplices[k][simplex];
        (0..s.len())
            .map(|j| {
                let mut face = s.clone();
                face.remove(j);
                (self.index[k - 1][&face], if j % 2 == 0 { 1 } else { -1 })
            })
            .collect()
    }

    fn rank(&self, k: usize, p: u32) -> usize {
        if k == 0 || k >= self.simplices.len() {
            return 0;
        }
        let mut m = SparseMatrixFp::new(p, self.simplices[k - 1].len());
        for j in 0..self.simplices[k].len() {
            m.push_column(self.boundary_column(k, j));
        }
        m.rank()
    }

    pub fn betti(&self, p: u32) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=self.simplices.len()).map(|k| self.rank(k, p)).collect();
        (0..self.simplices.len()).map(|k| self.simplices[k].len() - ranks[k] - ranks[k + 1]).collect()
    }
}
