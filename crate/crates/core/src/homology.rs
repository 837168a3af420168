//! Chain complexes and chain maps over `F_p`: homology, kernel
//! subcomplexes, induced maps, and the chain map induced by an inclusion of
//! arrangements.

use serde::Serialize;

use crate::action::{EquivariantSalvetti, TwistedQuotientComplex};
use crate::covector::restrict_covector;
use crate::error::{Error, Result};
use crate::exactla::{is_prime, MatrixFp};

/// A bounded chain complex `C_0 ← C_1 ← … ← C_top` over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplexFp {
    p: u32,
    dims: Vec<usize>,
    // boundaries[k] = ∂_k : C_k → C_{k−1}, for k = 0..=top+1 (ends are empty)
    boundaries: Vec<MatrixFp>,
    labels: Vec<Vec<String>>,
}

impl ChainComplexFp {
    /// `interior[k−1]` is `∂_k` for `k = 1..=top`. Rejects wrong shapes and
    /// `∂∂ ≠ 0`.
    pub fn new(p: u32, dims: Vec<usize>, interior: Vec<MatrixFp>, labels: Vec<Vec<String>>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if dims.is_empty() || interior.len() + 1 != dims.len() {
            return Err(Error::input("need one boundary matrix per positive degree"));
        }
        let top = dims.len() - 1;
        let mut boundaries = vec![MatrixFp::zeros(p, 0, dims[0])];
        for (k, m) in interior.into_iter().enumerate().map(|(i, m)| (i + 1, m)) {
            if m.prime() != p || m.rows() != dims[k - 1] || m.cols() != dims[k] {
                return Err(Error::input(format!(
                    "∂_{k} has shape {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dims[k - 1],
                    dims[k]
                )));
            }
            boundaries.push(m);
        }
        boundaries.push(MatrixFp::zeros(p, dims[top], 0));
        let labels = if labels.len() == dims.len() && labels.iter().zip(&dims).all(|(l, &d)| l.len() == d) {
            labels
        } else {
            dims.iter().map(|&d| (0..d).map(|i| format!("e{i}")).collect()).collect()
        };
        let c = ChainComplexFp { p, dims, boundaries, labels };
        for k in 1..=top {
            if !c.boundary(k).mul(c.boundary(k + 1))?.is_zero() {
                return Err(Error::input(format!("∂_{k}∂_{} ≠ 0", k + 1)));
            }
        }
        Ok(c)
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    /// `∂_k` for `0 ≤ k ≤ top + 1`.
    pub fn boundary(&self, k: usize) -> &MatrixFp {
        &self.boundaries[k]
    }

    pub fn labels(&self) -> &[Vec<String>] {
        &self.labels
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().enumerate().map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologySummary {
    pub p: u32,
    pub betti: Vec<usize>,
    pub cycle_basis: Vec<Vec<Vec<u32>>>,
    pub boundary_basis: Vec<Vec<Vec<u32>>>,
    pub representatives: Vec<Vec<Vec<u32>>>,
}

impl HomologySummary {
    pub fn euler_characteristic(&self) -> i64 {
        self.betti.iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }
}

/// Independent columns of `m`, taken greedily left to right.
fn column_space_basis(m: &MatrixFp) -> Vec<Vec<u32>> {
    let (_, pivots) = m.rref();
    pivots.into_iter().map(|j| m.column(j)).collect()
}

/// Extends `base` by those `candidates` that raise the rank, in order;
/// returns only the added vectors.
fn extend_basis(p: u32, len: usize, base: &[Vec<u32>], candidates: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut current = base.to_vec();
    let mut rank = MatrixFp::from_columns(p, len, &current).rank();
    let mut added = Vec::new();
    for v in candidates {
        current.push(v.clone());
        let r = MatrixFp::from_columns(p, len, &current).rank();
        if r > rank {
            rank = r;
            added.push(v.clone());
        } else {
            current.pop();
        }
    }
    added
}

pub fn homology_fp(c: &ChainComplexFp) -> Result<HomologySummary> {
    let p = c.p;
    let mut summary = HomologySummary {
        p,
        betti: Vec::new(),
        cycle_basis: Vec::new(),
        boundary_basis: Vec::new(),
        representatives: Vec::new(),
    };
    for k in 0..=c.top() {
        let cycles = c.boundary(k).nullspace_basis();
        let bounds = column_space_basis(c.boundary(k + 1));
        let reps = extend_basis(p, c.dims[k], &bounds, &cycles);
        if cycles.len() < bounds.len() {
            return Err(Error::input(format!("boundaries exceed cycles in degree {k}")));
        }
        summary.betti.push(cycles.len() - bounds.len());
        debug_assert_eq!(reps.len(), cycles.len() - bounds.len());
        summary.cycle_basis.push(cycles);
        summary.boundary_basis.push(bounds);
        summary.representatives.push(reps);
    }
    Ok(summary)
}

/// A degree-preserving map of chain complexes, `maps[k] : source_k → target_k`.
#[derive(Debug, Clone)]
pub struct ChainMapFp {
    source: ChainComplexFp,
    target: ChainComplexFp,
    maps: Vec<MatrixFp>,
}

impl ChainMapFp {
    /// Rejects shape mismatches and maps that do not commute with `∂`.
    pub fn new(source: ChainComplexFp, target: ChainComplexFp, maps: Vec<MatrixFp>) -> Result<Self> {
        if source.p != target.p || source.dims.len() != target.dims.len() || maps.len() != source.dims.len() {
            return Err(Error::input("chain map between incompatible complexes"));
        }
        for (k, m) in maps.iter().enumerate() {
            if m.rows() != target.dims[k] || m.cols() != source.dims[k] {
                return Err(Error::DimensionMismatch { expected: target.dims[k] * source.dims[k], found: m.rows() * m.cols() });
            }
        }
        for k in 1..maps.len() {
            let lhs = target.boundary(k).mul(&maps[k])?;
            let rhs = maps[k - 1].mul(source.boundary(k))?;
            if lhs != rhs {
                return Err(Error::inconsistent(format!("chain map does not commute with ∂_{k}")));
            }
        }
        Ok(ChainMapFp { source, target, maps })
    }

    pub fn identity(c: &ChainComplexFp) -> Self {
        let maps = c.dims.iter().map(|&d| MatrixFp::identity(c.p, d)).collect();
        ChainMapFp { source: c.clone(), target: c.clone(), maps }
    }

    pub fn source(&self) -> &ChainComplexFp {
        &self.source
    }

    pub fn target(&self) -> &ChainComplexFp {
        &self.target
    }

    pub fn map(&self, k: usize) -> &MatrixFp {
        &self.maps[k]
    }

    pub fn is_surjective(&self, k: usize) -> bool {
        self.maps[k].rank() == self.target.dims[k]
    }
}

/// The kernel subcomplex together with the basis (as source vectors) it
/// was built on.
#[derive(Debug, Clone)]
pub struct KernelComplex {
    pub complex: ChainComplexFp,
    pub basis: Vec<Vec<Vec<u32>>>,
}

pub fn kernel_complex(f: &ChainMapFp) -> Result<KernelComplex> {
    let p = f.source.p;
    let basis: Vec<Vec<Vec<u32>>> = f.maps.iter().map(MatrixFp::nullspace_basis).collect();
    let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
    let mut interior = Vec::new();
    for k in 1..dims.len() {
        let lower = MatrixFp::from_columns(p, f.source.dims[k - 1], &basis[k - 1]);
        let mut m = MatrixFp::zeros(p, dims[k - 1], dims[k]);
        for (j, v) in basis[k].iter().enumerate() {
            let image = f.source.boundary(k).apply(v);
            let x = lower
                .solve(&image)
                .ok_or_else(|| Error::inconsistent(format!("∂_{k} leaves the kernel")))?;
            for (i, &e) in x.iter().enumerate() {
                m.set(i, j, e);
            }
        }
        interior.push(m);
    }
    let labels = dims.iter().enumerate().map(|(k, &d)| (0..d).map(|i| format!("k{k}.{i}")).collect()).collect();
    let complex = ChainComplexFp::new(p, dims, interior, labels)?;
    Ok(KernelComplex { complex, basis })
}

/// Matrices of `H_k(f)` in the representative bases of the source and
/// target homology summaries.
pub fn induced_map_on_homology(f: &ChainMapFp) -> Result<Vec<MatrixFp>> {
    let p = f.source.p;
    let hs = homology_fp(&f.source)?;
    let ht = homology_fp(&f.target)?;
    let mut out = Vec::new();
    for k in 0..f.maps.len() {
        let reps_t = &ht.representatives[k];
        let mut basis = reps_t.clone();
        basis.extend(ht.boundary_basis[k].iter().cloned());
        let solver = MatrixFp::from_columns(p, f.target.dims[k], &basis);
        let mut m = MatrixFp::zeros(p, reps_t.len(), hs.representatives[k].len());
        for (j, r) in hs.representatives[k].iter().enumerate() {
            let image = f.maps[k].apply(r);
            let x = solver
                .solve(&image)
                .ok_or_else(|| Error::inconsistent(format!("image of a cycle is not a cycle in degree {k}")))?;
            for i in 0..reps_t.len() {
                m.set(i, j, x[i]);
            }
        }
        out.push(m);
    }
    Ok(out)
}

/// Degree of the restriction map from the source cell onto `target_cell`,
/// counted over flags of the source lying over `target_flag`.
pub fn cell_map_degree(
    sup: &EquivariantSalvetti,
    sub: &EquivariantSalvetti,
    idxmap: &[usize],
    cell: usize,
    target_flag: &[usize],
) -> Result<i64> {
    fn count(
        sup: &EquivariantSalvetti,
        sub: &EquivariantSalvetti,
        idxmap: &[usize],
        cell: usize,
        target_flag: &[usize],
    ) -> Result<i64> {
        let level = target_flag.len() - 1;
        if restrict_cell(sup, sub, idxmap, cell)? != Some(target_flag[level]) {
            return Ok(0);
        }
        if level == 0 {
            return Ok(1);
        }
        let mut total = 0;
        for &(f, inc) in sup.cw().boundary(cell) {
            total += inc * count(sup, sub, idxmap, f, &target_flag[..level])?;
        }
        Ok(total)
    }
    Ok(count(sup, sub, idxmap, cell, target_flag)? * sub.cw().flag_orientation(target_flag))
}

/// `D(F, C) ↦ D(F|, C|)` when the dimension is preserved.
pub fn restrict_cell(
    sup: &EquivariantSalvetti,
    sub: &EquivariantSalvetti,
    idxmap: &[usize],
    cell: usize,
) -> Result<Option<usize>> {
    let c = sup.cw().cell(cell);
    let fl = sup.faces();
    let sfl = sub.faces();
    let face = restrict_covector(fl.face(c.face), idxmap)?;
    let chamber = restrict_covector(fl.face(c.chamber), idxmap)?;
    let (Some(f), Some(ch)) = (sfl.find(&face), sfl.find(&chamber)) else {
        return Err(Error::inconsistent("restricted covector is not a face of the subarrangement"));
    };
    if sfl.codim(f) != c.dim {
        return Ok(None);
    }
    Ok(sub.cw().find_pair(f, ch))
}

/// The chain map `C_*(Sal(sup)) ⊗ F_p(χ) → C_*(Sal(sub)) ⊗ F_p(χ)` induced
/// by restricting covectors to the subarrangement.
pub fn inclusion_chain_map(
    sup: &EquivariantSalvetti,
    sup_q: &TwistedQuotientComplex,
    sub: &EquivariantSalvetti,
    sub_q: &TwistedQuotientComplex,
    idxmap: &[usize],
) -> Result<ChainMapFp> {
    if sup_q.prime() != sub_q.prime() || sup_q.twist() != sub_q.twist() {
        return Err(Error::input("quotients must share prime and twist"));
    }
    if sup.action().group() != sub.action().group() {
        return Err(Error::input("arrangements must carry the same group action"));
    }
    let p = sup_q.prime();
    let twist = sup_q.twist();
    let source = sup_q.complex();
    let target = sub_q.complex();
    if source.dims.len() != target.dims.len() {
        return Err(Error::input("arrangements have different ranks"));
    }
    let mut maps = Vec::new();
    for k in 0..source.dims.len() {
        let mut m = MatrixFp::zeros(p, target.dims[k], source.dims[k]);
        for (j, &o) in sup_q.generators(k).iter().enumerate() {
            let rep = sup.orbits().orbit(o).rep;
            let Some(image) = restrict_cell(sup, sub, idxmap, rep)? else {
                continue;
            };
            let Some(i) = sub_q.generator_position(sub.orbits().orbit_of(image)) else {
                continue;
            };
            let flag = sub.cw().first_flag(image);
            let degree = cell_map_degree(sup, sub, idxmap, rep, &flag)?;
            m.add_to(i, j, degree * sub.kappa(image, twist));
        }
        maps.push(m);
    }
    ChainMapFp::new(source.clone(), target.clone(), maps)
}
