//! Independent checks of the sign-twisted quotient homology.
//!
//! Two oracles that share nothing with the CW orientation machinery:
//! the coinvariants of the barycentric subdivision (the group permutes
//! chains of cells without any orientation signs), and, away from the
//! group order, the sign-isotypic part of the Orlik–Solomon algebra.

use std::collections::HashMap;
use std::sync::OnceLock;

use salkit::action::{EquivariantSalvetti, Twist};
use salkit::arrangement::Arrangement;
use salkit::exactla::SparseMatrixFp;
use salkit::homology::homology_fp;
use salkit::salvetti::barycentric;
use salkit::MatrixFp;

fn braid4() -> &'static EquivariantSalvetti {
    static ES: OnceLock<EquivariantSalvetti> = OnceLock::new();
    ES.get_or_init(|| EquivariantSalvetti::new(&Arrangement::braid(4).unwrap()).unwrap())
}

fn com42() -> &'static EquivariantSalvetti {
    static ES: OnceLock<EquivariantSalvetti> = OnceLock::new();
    ES.get_or_init(|| EquivariantSalvetti::new(&Arrangement::center_of_mass(4, 2).unwrap()).unwrap())
}

fn cellular_betti(es: &EquivariantSalvetti, p: u32) -> Vec<usize> {
    homology_fp(es.twisted_quotient(p, Twist::Sign).unwrap().complex()).unwrap().betti
}

/// Betti numbers of `C_*(Δ) ⊗_G F_p(sgn)` for the order complex `Δ`.
fn barycentric_betti(es: &EquivariantSalvetti, p: u32) -> Vec<usize> {
    let bary = barycentric(es.cw());
    let group = es.action().group();
    let top = es.cw().top_dim();

    // canonical representative and the sign relating a simplex to it
    let mut orbit: Vec<HashMap<Vec<usize>, (usize, i64)>> = vec![HashMap::new(); top + 1];
    let mut reps: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top + 1];
    for k in 0..=top {
        for s in bary.simplices(k) {
            if orbit[k].contains_key(s) {
                continue;
            }
            let id = reps[k].len();
            reps[k].push(s.clone());
            for (g, perm) in group.iter().enumerate() {
                let image: Vec<usize> = s.iter().map(|&c| es.act(g, c)).collect();
                let chi = perm.sign();
                match orbit[k].get(&image) {
                    Some(&(_, old)) => assert_eq!(old, chi, "nontrivial stabilizer with odd sign"),
                    None => {
                        orbit[k].insert(image, (id, chi));
                    }
                }
            }
        }
    }
    let rank = |k: usize| -> usize {
        if k == 0 || k > top {
            return 0;
        }
        let mut m = SparseMatrixFp::new(p, reps[k - 1].len());
        for s in &reps[k] {
            let mut col: HashMap<usize, i64> = HashMap::new();
            for j in 0..s.len() {
                let mut face = s.clone();
                face.remove(j);
                let (o, chi) = orbit[k - 1][&face];
                *col.entry(o).or_default() += if j % 2 == 0 { chi } else { -chi };
            }
            let mut entries: Vec<(usize, i64)> = col.into_iter().filter(|&(_, c)| c != 0).collect();
            entries.sort_unstable();
            m.push_column(entries);
        }
        m.rank()
    };
    let ranks: Vec<usize> = (0..=top + 1).map(rank).collect();
    (0..=top).map(|k| reps[k].len() - ranks[k] - ranks[k + 1]).collect()
}

#[test]
fn barycentric_coinvariants_agree_with_the_cellular_quotient() {
    for es in [braid4(), com42()] {
        for p in [2, 3, 5, 7] {
            assert_eq!(barycentric_betti(es, p), cellular_betti(es, p), "p = {p}");
        }
    }
}

#[test]
fn center_of_mass_quotient_is_not_acyclic() {
    for p in [5, 7] {
        assert_eq!(cellular_betti(braid4(), p), vec![0, 0, 0, 0]);
        assert_eq!(cellular_betti(com42(), p), vec![0, 0, 1, 1]);
    }
}

const BIG: u32 = 1_000_003;

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// `e_a ∧ e_b` as a sorted monomial with its sign, or `None` if it vanishes.
fn wedge(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut v: Vec<usize> = a.iter().chain(b).copied().collect();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// Dimensions of the Orlik–Solomon algebra in each degree, and the
/// multiplicity of the sign character there, with `Σ_n` permuting the
/// generators `e_H ↦ e_{gH}`.
fn orlik_solomon(arr: &Arrangement) -> (Vec<i64>, Vec<i64>) {
    let es = EquivariantSalvetti::new(arr).unwrap();
    let act = es.action();
    let m = arr.len();
    let top = arr.rank();
    let circuits: Vec<Vec<usize>> = (2..=top + 1)
        .flat_map(|k| subsets(m, k))
        .filter(|s| arr.rank_of(s.iter().copied()) < s.len())
        .filter(|s| (0..s.len()).all(|j| {
            let mut t = s.clone();
            t.remove(j);
            arr.rank_of(t.iter().copied()) == t.len()
        }))
        .collect();

    let mut dims = Vec::new();
    let mut out = Vec::new();
    for k in 0..=top {
        let basis = subsets(m, k);
        let index: HashMap<&Vec<usize>, usize> = basis.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut relations: Vec<Vec<u32>> = Vec::new();
        for c in circuits.iter().filter(|c| c.len() <= k + 1) {
            for t in subsets(m, k + 1 - c.len()) {
                let mut v = vec![0i64; basis.len()];
                for j in 0..c.len() {
                    let mut face = c.clone();
                    face.remove(j);
                    if let Some((mono, s)) = wedge(&t, &face) {
                        v[index[&mono]] += if j % 2 == 0 { s } else { -s };
                    }
                }
                relations.push(v.iter().map(|&x| salkit::exactla::reduce_mod(x, BIG)).collect());
            }
        }
        let ideal = if relations.is_empty() {
            Vec::new()
        } else {
            let r = MatrixFp::from_columns(BIG, basis.len(), &relations);
            let (_, pivots) = r.rref();
            pivots.iter().map(|&j| relations[j].clone()).collect::<Vec<_>>()
        };

        let mut weighted = 0i64;
        for (g, perm) in act.group().iter().enumerate() {
            let image = |s: &Vec<usize>| -> (usize, i64) {
                let mapped: Vec<usize> = s.iter().map(|&v| act.image(g, v).0).collect();
                let (mono, sign) = wedge(&[], &mapped).unwrap();
                (index[&mono], sign)
            };
            let trace_ambient: i64 = basis.iter().enumerate().map(|(i, s)| {
                let (j, sign) = image(s);
                if i == j { sign } else { 0 }
            }).sum();
            // coordinates of g·I in the basis of I, from one reduction of [I | g·I]
            let d = ideal.len();
            let mut aug = MatrixFp::zeros(BIG, basis.len(), 2 * d);
            for (col, v) in ideal.iter().enumerate() {
                for (i, s) in basis.iter().enumerate() {
                    if v[i] != 0 {
                        let (j, sign) = image(s);
                        aug.set(i, col, v[i]);
                        aug.add_to(j, d + col, sign * v[i] as i64);
                    }
                }
            }
            let (r, pivots) = aug.rref();
            assert_eq!(pivots, (0..d).collect::<Vec<_>>(), "the ideal is invariant");
            let trace_ideal: i64 = (0..d).map(|c| r.get(c, d + c) as i64).sum();
            let trace_ideal = trace_ideal.rem_euclid(BIG as i64);
            let trace_ideal = if trace_ideal > BIG as i64 / 2 { trace_ideal - BIG as i64 } else { trace_ideal };
            if perm.inversions() == 0 {
                dims.push(trace_ambient - trace_ideal);
            }
            weighted += perm.sign() * (trace_ambient - trace_ideal);
        }
        assert_eq!(weighted % act.order() as i64, 0);
        out.push(weighted / act.order() as i64);
    }
    (dims, out)
}

#[test]
fn orlik_solomon_sign_part_matches_homology_away_from_the_group_order() {
    let (_, braid) = orlik_solomon(&Arrangement::braid(4).unwrap());
    let (_, com) = orlik_solomon(&Arrangement::center_of_mass(4, 2).unwrap());
    assert_eq!(braid, vec![0, 0, 0, 0]);
    assert_eq!(com, vec![0, 0, 1, 1]);
    for p in [5, 7] {
        let as_usize = |v: &[i64]| v.iter().map(|&x| x as usize).collect::<Vec<_>>();
        assert_eq!(cellular_betti(braid4(), p), as_usize(&braid));
        assert_eq!(cellular_betti(com42(), p), as_usize(&com));
    }
}

#[test]
fn orlik_solomon_dimensions_match_the_poincare_polynomial() {
    for arr in [Arrangement::braid(3).unwrap(), Arrangement::braid(4).unwrap(), Arrangement::center_of_mass(4, 2).unwrap()] {
        let (dims, _) = orlik_solomon(&arr);
        assert_eq!(dims, arr.poincare_polynomial());
    }
}
