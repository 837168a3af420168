//! Ordered-partition symbols for cells of braid arrangements and the
//! shuffle formula for boundaries of the cells `D(λ, id)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::action::{EquivariantSalvetti, Permutation};
use crate::arrangement::{Arrangement, Family};
use crate::error::{Error, Result};
use crate::sign::Sign;

/// Disjoint nonempty blocks covering `{1..n}`, in order; elements within a
/// block are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedPartition {
    blocks: Vec<Vec<usize>>,
}

impl OrderedPartition {
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        for b in &mut blocks {
            b.sort_unstable();
        }
        let mut all: Vec<usize> = blocks.iter().flatten().copied().collect();
        all.sort_unstable();
        if blocks.iter().any(Vec::is_empty) || all != (1..=all.len()).collect::<Vec<_>>() {
            return Err(Error::input(format!("{blocks:?} is not an ordered partition of 1..n")));
        }
        Ok(OrderedPartition { blocks })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn rank(&self) -> usize {
        self.n() - self.blocks.len()
    }

    /// Whether the blocks are consecutive intervals of `1..n` in increasing
    /// order, i.e. `λ` lies below the identity chamber.
    pub fn is_interval(&self) -> bool {
        let flat: Vec<usize> = self.blocks.iter().flatten().copied().collect();
        flat == (1..=flat.len()).collect::<Vec<_>>()
    }

    /// All ordered partitions of `{1..n}`.
    pub fn all(n: usize) -> Vec<OrderedPartition> {
        let mut out = Vec::new();
        let mut labels = vec![0usize; n];
        loop {
            let used = labels.iter().max().map_or(0, |m| m + 1);
            if (0..used).all(|b| labels.contains(&b)) {
                let blocks = (0..used)
                    .map(|b| (0..n).filter(|&i| labels[i] == b).map(|i| i + 1).collect())
                    .collect();
                out.push(OrderedPartition { blocks });
            }
            let Some(i) = (0..n).find(|&i| labels[i] + 1 < n) else {
                break;
            };
            labels[i] += 1;
            labels[..i].iter_mut().for_each(|x| *x = 0);
        }
        out.sort();
        out
    }
}

fn join_elements(elements: &[usize], wide: bool) -> String {
    let parts: Vec<String> = elements.iter().map(usize::to_string).collect();
    parts.join(if wide { "," } else { "" })
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.n() >= 10;
        let parts: Vec<String> = self.blocks.iter().map(|b| join_elements(b, wide)).collect();
        f.write_str(&parts.join("|"))
    }
}

impl FromStr for OrderedPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let blocks = s
            .split('|')
            .map(|block| {
                let items: Vec<&str> = if block.contains(',') {
                    block.split(',').collect()
                } else {
                    block.split("").filter(|t| !t.is_empty()).collect()
                };
                items
                    .into_iter()
                    .map(|t| t.trim().parse::<usize>().map_err(|_| Error::input(format!("bad partition symbol {s:?}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        OrderedPartition::new(blocks)
    }
}

/// A cell `D(λ, σ)`: `λ` from the face, `σ` (elements in increasing order
/// of the chamber's coordinates) from the chamber.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionSymbol {
    pub partition: OrderedPartition,
    pub sigma: Permutation,
}

impl PartitionSymbol {
    pub fn new(partition: OrderedPartition, sigma: Permutation) -> Result<Self> {
        let flat: Vec<usize> = sigma.images().iter().map(|x| x + 1).collect();
        let mut start = 0;
        for b in partition.blocks() {
            let mut chunk = flat[start..start + b.len()].to_vec();
            chunk.sort_unstable();
            if &chunk != b {
                return Err(Error::input(format!("{sigma} does not refine {partition}")));
            }
            start += b.len();
        }
        Ok(PartitionSymbol { partition, sigma })
    }

    /// Blocks listed with elements in `σ`-order.
    pub fn columns(&self) -> Vec<Vec<usize>> {
        let flat: Vec<usize> = self.sigma.images().iter().map(|x| x + 1).collect();
        let mut start = 0;
        self.partition
            .blocks()
            .iter()
            .map(|b| {
                let col = flat[start..start + b.len()].to_vec();
                start += b.len();
                col
            })
            .collect()
    }

    /// Blocks drawn as column stacks, first element at the bottom.
    pub fn box_art(&self) -> String {
        let cols = self.columns();
        let width = self.partition.n().to_string().len();
        let height = cols.iter().map(Vec::len).max().unwrap_or(0);
        let mut lines = Vec::new();
        for level in (0..height).rev() {
            let cells: Vec<String> = cols
                .iter()
                .map(|c| c.get(level).map_or(" ".repeat(width), |x| format!("{x:>width$}")))
                .collect();
            lines.push(format!("|{}|", cells.join("|")));
        }
        lines.join("\n")
    }
}

impl fmt::Display for PartitionSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.partition.n() >= 10;
        let parts: Vec<String> = self.columns().iter().map(|b| join_elements(b, wide)).collect();
        f.write_str(&parts.join("|"))
    }
}

/// Coxeter length in `Σ_n`: the inversion count.
pub fn perm_length(sigma: &Permutation) -> usize {
    sigma.inversions()
}

/// Sign of `x_i − x_j` on faces of a braid arrangement.
struct PairSigns {
    index: HashMap<(usize, usize), usize>,
}

impl PairSigns {
    fn new(arr: &Arrangement) -> Result<Self> {
        let Family::Braid { .. } = arr.family() else {
            return Err(Error::input("partition symbols exist only for braid arrangements"));
        };
        let index = arr
            .hyperplanes()
            .iter()
            .enumerate()
            .map(|(k, h)| {
                let i = h.normal().iter().position(|&x| x == 1).unwrap();
                let j = h.normal().iter().position(|&x| x == -1).unwrap();
                ((i, j), k)
            })
            .collect();
        Ok(PairSigns { index })
    }

    fn cmp(&self, f: &[Sign], i: usize, j: usize) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        if i == j {
            return Ordering::Equal;
        }
        let (a, b, flip) = if i < j { (i, j, false) } else { (j, i, true) };
        let s = f[self.index[&(a, b)]];
        let s = if flip { s.neg() } else { s };
        match s {
            Sign::Neg => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Pos => Ordering::Greater,
        }
    }
}

pub fn cell_to_symbol(es: &EquivariantSalvetti, cell: usize) -> Result<PartitionSymbol> {
    let arr = es.arrangement();
    let pairs = PairSigns::new(arr)?;
    let n = arr.dim();
    let c = es.cw().cell(cell);
    let face = es.faces().face(c.face).entries();
    let chamber = es.faces().face(c.chamber).entries();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| pairs.cmp(chamber, i, j));
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (k, &i) in order.iter().enumerate() {
        if k > 0 && pairs.cmp(face, order[k - 1], i).is_eq() {
            blocks.last_mut().unwrap().push(i + 1);
        } else {
            blocks.push(vec![i + 1]);
        }
    }
    PartitionSymbol::new(OrderedPartition::new(blocks)?, Permutation::from_images(order)?)
}

pub fn symbol_to_cell(es: &EquivariantSalvetti, symbol: &PartitionSymbol) -> Result<usize> {
    let arr = es.arrangement();
    let n = arr.dim();
    let mut face_point = vec![0i64; n];
    for (b, block) in symbol.partition.blocks().iter().enumerate() {
        for &x in block {
            face_point[x - 1] = b as i64;
        }
    }
    let mut chamber_point = vec![0i64; n];
    for (pos, &x) in symbol.sigma.images().iter().enumerate() {
        chamber_point[x] = pos as i64;
    }
    let fl = es.faces();
    let f = fl.find(&arr.sign_vector_at(&face_point)?);
    let c = fl.find(&arr.sign_vector_at(&chamber_point)?);
    match (f, c) {
        (Some(f), Some(c)) => es.cw().find_pair(f, c).ok_or_else(|| Error::input(format!("no cell {symbol}"))),
        _ => Err(Error::input(format!("symbol {symbol} does not match the arrangement"))),
    }
}

/// `D(λ, id)`.
pub fn identity_cell(es: &EquivariantSalvetti, lambda: &OrderedPartition) -> Result<usize> {
    let sigma = Permutation::identity(lambda.n());
    symbol_to_cell(es, &PartitionSymbol::new(lambda.clone(), sigma)?)
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// `∂D(λ, id)` in the basis of cells `D(τ, id)`, where `τ` ranges over
/// splittings of one block of `λ` into a front and a back interval. The
/// `|B| choose |front|` shuffles that carry a facet onto `D(τ, id)` all
/// contribute the same sign; that sign is taken from the CW incidence
/// `[D(λ, id) : D(τ, id)]`.
pub fn reference_boundary(
    es: &EquivariantSalvetti,
    lambda: &OrderedPartition,
) -> Result<BTreeMap<OrderedPartition, i64>> {
    if !lambda.is_interval() {
        return Err(Error::input(format!("{lambda} is not below the identity chamber")));
    }
    let e = identity_cell(es, lambda)?;
    let mut out = BTreeMap::new();
    for (b, block) in lambda.blocks().iter().enumerate() {
        for m in 1..block.len() {
            let mut blocks = lambda.blocks().to_vec();
            blocks.splice(b..=b, [block[..m].to_vec(), block[m..].to_vec()]);
            let tau = OrderedPartition::new(blocks)?;
            let f = identity_cell(es, &tau)?;
            let eps = es.cw().incidence(e, f);
            if eps == 0 {
                return Err(Error::inconsistent(format!("{tau} is not a facet of {lambda}")));
            }
            *out.entry(tau).or_insert(0) += binomial(block.len(), m) * eps;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::Twist;
    use std::collections::BTreeSet;
    use std::sync::OnceLock;

    fn braid(n: usize) -> &'static EquivariantSalvetti {
        static ES: [OnceLock<EquivariantSalvetti>; 6] =
            [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
        ES[n].get_or_init(|| EquivariantSalvetti::new(&Arrangement::braid(n).unwrap()).unwrap())
    }

    fn op(s: &str) -> OrderedPartition {
        s.parse().unwrap()
    }

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn partition_parsing() {
        assert_eq!(op("12|3|4").rank(), 1);
        assert_eq!(op("1|234").rank(), 2);
        assert_eq!(op("31|2").blocks(), &[vec![1, 3], vec![2]]);
        assert!("12|2".parse::<OrderedPartition>().is_err());
        assert_eq!(OrderedPartition::all(4).len(), 75);
    }

    #[test]
    fn vertex_and_edge_symbols() {
        let es = braid(4);
        let arr = es.arrangement();
        let fl = es.faces();
        let c0 = fl.find(&arr.sign_vector_at(&[1, 2, 3, 4]).unwrap()).unwrap();
        let v = es.cw().find_pair(c0, c0).unwrap();
        assert_eq!(cell_to_symbol(es, v).unwrap().to_string(), "1|2|3|4");
        let f = fl.find(&arr.sign_vector_at(&[1, 1, 3, 4]).unwrap()).unwrap();
        let e = es.cw().find_pair(f, c0).unwrap();
        let sym = cell_to_symbol(es, e).unwrap();
        assert_eq!(sym.to_string(), "12|3|4");
        assert_eq!(sym.columns()[0], vec![1, 2]);
        assert_eq!(sym.box_art(), "|2| | |\n|1|3|4|");
    }

    #[test]
    fn symbols_are_a_bijection() {
        for n in 2..=5 {
            let es = braid(n);
            let mut seen = BTreeSet::new();
            let mut by_rank = vec![0usize; n];
            for c in 0..es.cw().len() {
                let sym = cell_to_symbol(es, c).unwrap();
                assert_eq!(sym.partition.rank(), es.cw().cell(c).dim);
                assert_eq!(symbol_to_cell(es, &sym).unwrap(), c);
                by_rank[sym.partition.rank()] += 1;
                seen.insert(sym);
            }
            // Oracle: each ordered partition admits Π |B|! compatible orders.
            let expected: usize = OrderedPartition::all(n)
                .iter()
                .map(|l| l.blocks().iter().map(|b| factorial(b.len())).product::<usize>())
                .sum();
            assert_eq!(seen.len(), expected);
            assert_eq!(seen.len(), es.cw().len());
            if n == 4 {
                assert_eq!(by_rank, vec![24, 72, 72, 24]);
            }
        }
    }

    #[test]
    fn lengths() {
        assert_eq!(perm_length(&Permutation::identity(4)), 0);
        assert_eq!(perm_length(&Permutation::from_one_line(&[1, 3, 2, 4]).unwrap()), 1);
        assert_eq!(perm_length(&Permutation::from_one_line(&[4, 3, 2, 1]).unwrap()), 6);
        for g in Permutation::all(4) {
            assert_eq!(g.sign(), if perm_length(&g) % 2 == 0 { 1 } else { -1 });
        }
    }

    #[test]
    fn reference_coefficients() {
        let es = braid(4);
        let abs = |l: &str| -> BTreeMap<String, i64> {
            reference_boundary(es, &op(l)).unwrap().into_iter().map(|(t, c)| (t.to_string(), c.abs())).collect()
        };
        assert_eq!(abs("12|3|4"), BTreeMap::from([("1|2|3|4".into(), 2)]));
        assert_eq!(abs("1|234"), BTreeMap::from([("1|2|34".into(), 3), ("1|23|4".into(), 3)]));
        assert_eq!(abs("1234"), BTreeMap::from([("1|234".into(), 4), ("12|34".into(), 6), ("123|4".into(), 4)]));
        let r = reference_boundary(es, &op("1|234")).unwrap();
        assert_eq!(r[&op("1|2|34")], -r[&op("1|23|4")]);
        assert!(reference_boundary(es, &op("2|1|34")).is_err());
    }

    /// The shuffle formula equals the pipeline's boundary of `D(λ, id)`
    /// exactly, once both are written on orbit representatives.
    #[test]
    fn reference_matches_pipeline() {
        for n in [3, 4] {
            let es = braid(n);
            let twist = Twist::Sign;
            for lambda in OrderedPartition::all(n).into_iter().filter(|l| l.is_interval() && l.rank() > 0) {
                let e = identity_cell(es, &lambda).unwrap();
                let mut pipeline: BTreeMap<usize, i64> = BTreeMap::new();
                for &(f, inc) in es.cw().boundary(e) {
                    *pipeline.entry(es.orbits().orbit_of(f)).or_default() += inc * es.kappa(f, twist);
                }
                let mut reference: BTreeMap<usize, i64> = BTreeMap::new();
                for (tau, coeff) in reference_boundary(es, &lambda).unwrap() {
                    let f = identity_cell(es, &tau).unwrap();
                    *reference.entry(es.orbits().orbit_of(f)).or_default() += coeff * es.kappa(f, twist);
                }
                pipeline.retain(|_, v| *v != 0);
                reference.retain(|_, v| *v != 0);
                assert_eq!(pipeline, reference, "boundary of {lambda}");
            }
        }
    }

    #[test]
    fn rejects_other_families() {
        let es = EquivariantSalvetti::new(&Arrangement::center_of_mass(4, 2).unwrap()).unwrap();
        assert!(cell_to_symbol(&es, 0).is_err());
    }
}
