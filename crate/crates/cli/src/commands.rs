use serde::Serialize;

use salkit::action::{EquivariantSalvetti, TwistedQuotientComplex};
use salkit::arrangement::{subarrangement_map, ArrangementSpec};
use salkit::braidsym::cell_to_symbol;
use salkit::covector::enumerate_faces;
use salkit::homology::{homology_fp, induced_map_on_homology, inclusion_chain_map, kernel_complex, ChainMapFp};
use salkit::salvetti::{build_salvetti, CellDump};
use salkit::{Arrangement, Family, MatrixFp, Twist};

use crate::config::{check_prime, CliError, CliResult, RunConfig};

#[derive(Debug, Clone, Serialize)]
pub struct ArrangementInfo {
    pub family: Family,
    pub dimension: usize,
    pub hyperplanes: usize,
    pub normals: Vec<Vec<i64>>,
}

impl ArrangementInfo {
    fn of(arr: &Arrangement) -> Self {
        ArrangementInfo { family: arr.family(), dimension: arr.dim(), hyperplanes: arr.len(), normals: arr.normals() }
    }

    pub fn name(&self) -> String {
        match self.family {
            Family::Braid { n } => format!("braid({n})"),
            Family::CenterOfMass { n, l } => format!("center_of_mass({n},{l})"),
            Family::Custom => format!("custom arrangement in R^{}", self.dimension),
        }
    }
}

pub fn build_arrangement(spec: &ArrangementSpec, max_dim: usize) -> CliResult<Arrangement> {
    let dim = match spec {
        ArrangementSpec::Explicit { dimension, .. } => *dimension,
        ArrangementSpec::Family { n, .. } => *n,
    };
    if dim > max_dim {
        return Err(CliError::Usage(format!(
            "ambient dimension {dim} exceeds the limit {max_dim} (raise SALKIT_MAX_DIM to allow it)"
        )));
    }
    Ok(spec.build()?)
}

fn main_arrangement(cfg: &RunConfig) -> CliResult<Arrangement> {
    let spec = cfg.arrangement.as_ref().ok_or_else(|| CliError::Usage("an arrangement is required".into()))?;
    build_arrangement(spec, cfg.max_dim)
}

#[derive(Debug, Clone, Serialize)]
pub struct FacesReport {
    pub arrangement: ArrangementInfo,
    pub faces: usize,
    pub chambers: usize,
    pub faces_by_dimension: Vec<usize>,
    pub rank: usize,
    pub poincare_polynomial: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub covectors: Option<Vec<String>>,
}

pub fn cmd_faces(cfg: &RunConfig) -> CliResult<FacesReport> {
    let arr = main_arrangement(cfg)?;
    let fl = enumerate_faces(&arr)?;
    Ok(FacesReport {
        arrangement: ArrangementInfo::of(&arr),
        faces: fl.len(),
        chambers: fl.chamber_count(),
        faces_by_dimension: fl.counts_by_dim(),
        rank: arr.rank(),
        poincare_polynomial: arr.poincare_polynomial(),
        covectors: cfg.covectors.then(|| fl.faces().iter().map(|f| fl.format(f)).collect()),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Generator {
    /// Partition symbol for braid arrangements, covector string otherwise.
    pub label: String,
    /// Covector of the orbit representative.
    pub representative: String,
    #[serde(skip)]
    pub box_art: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuotientReport {
    pub p: u32,
    pub twist: Twist,
    pub counts: Vec<usize>,
    pub dead_orbits: Vec<usize>,
    pub generators: Vec<Vec<Generator>>,
    /// `∂_k` for `k = 1..top`, rows indexed by generators of degree `k − 1`.
    pub boundaries: Vec<Vec<Vec<i64>>>,
    pub boundaries_mod_p: Vec<Vec<Vec<u32>>>,
}

/// Braid generators are named by the interval partition `λ` of the unique
/// orbit member `D(λ, id)`.
fn generator(es: &EquivariantSalvetti, orbit: usize) -> Generator {
    let o = es.orbits().orbit(orbit);
    let representative = es.cw().label(o.rep);
    if let Family::Braid { .. } = es.arrangement().family() {
        for &c in &o.members {
            if let Ok(sym) = cell_to_symbol(es, c) {
                if sym.sigma.inversions() == 0 {
                    return Generator { label: sym.partition.to_string(), representative, box_art: Some(sym.box_art()) };
                }
            }
        }
    }
    Generator { label: representative.clone(), representative, box_art: None }
}

fn quotient_report(es: &EquivariantSalvetti, q: &TwistedQuotientComplex) -> QuotientReport {
    let dump = q.dump();
    let generators = (0..dump.counts.len())
        .map(|k| q.generators(k).iter().map(|&o| generator(es, o)).collect())
        .collect();
    QuotientReport {
        p: dump.p,
        twist: dump.twist,
        counts: dump.counts,
        dead_orbits: q.dead_counts().to_vec(),
        generators,
        boundaries: dump.boundaries,
        boundaries_mod_p: dump.boundaries_mod_p,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SalvettiReport {
    pub arrangement: ArrangementInfo,
    pub counts: Vec<usize>,
    pub euler_characteristic: i64,
    pub cells: Vec<CellDump>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient: Option<QuotientReport>,
}

pub fn cmd_salvetti(cfg: &RunConfig) -> CliResult<SalvettiReport> {
    let arr = main_arrangement(cfg)?;
    let info = ArrangementInfo::of(&arr);
    let (cw, quotient) = match cfg.p {
        None => (build_salvetti(&enumerate_faces(&arr)?)?, None),
        Some(_) => {
            let p = cfg.prime()?;
            let es = EquivariantSalvetti::new(&arr)?;
            let q = es.twisted_quotient(p, cfg.twist)?;
            (es.cw().clone(), Some(quotient_report(&es, &q)))
        }
    };
    let dump = cw.dump();
    Ok(SalvettiReport {
        arrangement: info,
        counts: dump.counts,
        euler_characteristic: cw.euler_characteristic(),
        cells: dump.cells,
        quotient,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeReport {
    pub degree: usize,
    pub betti: usize,
    /// Representative cycles written in the chain generators.
    pub cycles: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HomologyReport {
    pub arrangement: ArrangementInfo,
    pub p: u32,
    pub quotient: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twist: Option<Twist>,
    pub chain_dims: Vec<usize>,
    pub betti: Vec<usize>,
    pub euler_characteristic: i64,
    pub degrees: Vec<DegreeReport>,
}

fn lift(x: u32, p: u32) -> i64 {
    if x > p / 2 {
        x as i64 - p as i64
    } else {
        x as i64
    }
}

/// `2·[12|3|4] - [1|23|4]`, with coefficients lifted to `(−p/2, p/2]`.
pub fn linear_combination(v: &[u32], labels: &[String], p: u32) -> String {
    let mut out = String::new();
    for (i, &x) in v.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let c = lift(x, p);
        let sep = match (out.is_empty(), c < 0) {
            (true, false) => "",
            (true, true) => "-",
            (false, false) => " + ",
            (false, true) => " - ",
        };
        let mag = c.unsigned_abs();
        let coeff = if mag == 1 { String::new() } else { format!("{mag}·") };
        out.push_str(&format!("{sep}{coeff}[{}]", labels[i]));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn homology_of(complex: &salkit::ChainComplexFp) -> CliResult<(Vec<usize>, Vec<DegreeReport>)> {
    let h = homology_fp(complex)?;
    let p = complex.prime();
    let degrees = (0..h.betti.len())
        .map(|k| {
            let labels = &complex.labels()[k];
            DegreeReport {
                degree: k,
                betti: h.betti[k],
                cycles: h.representatives[k].iter().map(|r| linear_combination(r, labels, p)).collect(),
            }
        })
        .collect();
    Ok((h.betti, degrees))
}

fn euler(betti: &[usize]) -> i64 {
    betti.iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
}

pub fn cmd_homology(cfg: &RunConfig) -> CliResult<HomologyReport> {
    let arr = main_arrangement(cfg)?;
    let p = cfg.prime()?;
    let (complex, twist) = if cfg.unquotiented {
        (build_salvetti(&enumerate_faces(&arr)?)?.chain_complex(p)?, None)
    } else {
        let es = EquivariantSalvetti::new(&arr).map_err(|e| {
            CliError::Usage(format!("{e}; use --unquotiented for arrangements without the symmetric-group action"))
        })?;
        let q = es.twisted_quotient(p, cfg.twist)?;
        let mut c = q.complex().clone();
        if let Family::Braid { .. } = arr.family() {
            let labels: Vec<Vec<String>> = (0..c.dims().len())
                .map(|k| q.generators(k).iter().map(|&o| generator(&es, o).label).collect())
                .collect();
            c = relabel(&c, labels)?;
        }
        (c, Some(cfg.twist))
    };
    let (betti, degrees) = homology_of(&complex)?;
    Ok(HomologyReport {
        arrangement: ArrangementInfo::of(&arr),
        p,
        quotient: twist.is_some(),
        twist,
        chain_dims: complex.dims().to_vec(),
        euler_characteristic: euler(&betti),
        betti,
        degrees,
    })
}

fn relabel(c: &salkit::ChainComplexFp, labels: Vec<Vec<String>>) -> CliResult<salkit::ChainComplexFp> {
    let interior = (1..c.dims().len()).map(|k| c.boundary(k).clone()).collect();
    Ok(salkit::ChainComplexFp::new(c.prime(), c.dims().to_vec(), interior, labels)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct InducedMap {
    pub degree: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub matrix: Vec<Vec<u32>>,
    pub rank: usize,
    pub isomorphism: bool,
    pub zero: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompareReport {
    pub arrangement: ArrangementInfo,
    pub subarrangement: ArrangementInfo,
    pub p: u32,
    pub twist: Twist,
    pub source_dims: Vec<usize>,
    pub target_dims: Vec<usize>,
    pub surjective: Vec<bool>,
    pub kernel_dims: Vec<usize>,
    pub kernel_betti: Vec<usize>,
    pub source_betti: Vec<usize>,
    pub target_betti: Vec<usize>,
    pub induced_maps: Vec<InducedMap>,
}

fn matrix_rows(m: &MatrixFp) -> Vec<Vec<u32>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn compare_report(sup: &EquivariantSalvetti, sub: &EquivariantSalvetti, p: u32, twist: Twist) -> CliResult<(CompareReport, ChainMapFp)> {
    let idxmap = subarrangement_map(sup.arrangement(), sub.arrangement())?;
    if sup.arrangement().dim() != sub.arrangement().dim() {
        return Err(CliError::Usage("arrangements live in different dimensions".into()));
    }
    let sup_q = sup.twisted_quotient(p, twist)?;
    let sub_q = sub.twisted_quotient(p, twist)?;
    let f = inclusion_chain_map(sup, &sup_q, sub, &sub_q, &idxmap)?;
    let kernel = kernel_complex(&f)?;
    let induced = induced_map_on_homology(&f)?;
    let induced_maps = induced
        .iter()
        .enumerate()
        .map(|(k, m)| InducedMap {
            degree: k,
            source_dim: m.cols(),
            target_dim: m.rows(),
            matrix: matrix_rows(m),
            rank: m.rank(),
            isomorphism: m.rows() == m.cols() && m.rank() == m.rows(),
            zero: m.is_zero(),
        })
        .collect();
    let report = CompareReport {
        arrangement: ArrangementInfo::of(sup.arrangement()),
        subarrangement: ArrangementInfo::of(sub.arrangement()),
        p,
        twist,
        source_dims: f.source().dims().to_vec(),
        target_dims: f.target().dims().to_vec(),
        surjective: (0..f.source().dims().len()).map(|k| f.is_surjective(k)).collect(),
        kernel_dims: kernel.complex.dims().to_vec(),
        kernel_betti: homology_fp(&kernel.complex)?.betti,
        source_betti: homology_fp(f.source())?.betti,
        target_betti: homology_fp(f.target())?.betti,
        induced_maps,
    };
    Ok((report, f))
}

pub fn cmd_compare(cfg: &RunConfig) -> CliResult<CompareReport> {
    let sup_arr = main_arrangement(cfg)?;
    let sub_spec = cfg.sub.as_ref().ok_or_else(|| CliError::Usage("a subarrangement is required".into()))?;
    let sub_arr = build_arrangement(sub_spec, cfg.max_dim)?;
    let p = cfg.prime()?;
    // reject non-subarrangements before the expensive construction
    subarrangement_map(&sup_arr, &sub_arr)?;
    let sup = EquivariantSalvetti::new(&sup_arr)?;
    let separate;
    let sub = if sub_arr.normals() == sup_arr.normals() {
        &sup
    } else {
        separate = EquivariantSalvetti::new(&sub_arr)?;
        &separate
    };
    Ok(compare_report(&sup, sub, p, cfg.twist)?.0)
}

#[derive(Debug, Clone, Serialize)]
pub struct ArrangementSummary {
    pub name: String,
    pub faces: usize,
    pub chambers: usize,
    pub cells: Vec<usize>,
    pub poincare_polynomial: Vec<i64>,
    pub betti_unquotiented_f2: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuotientSection {
    pub quotient: QuotientReport,
    pub betti: Vec<usize>,
    pub cycles: Vec<DegreeReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PrimeSection {
    pub p: u32,
    pub braid: QuotientSection,
    pub center_of_mass: QuotientSection,
    pub comparison: CompareReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    /// `invariant` for structural identities, `reference` for comparisons
    /// against known tabulated values.
    pub kind: &'static str,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Bundle {
    pub arrangements: Vec<ArrangementSummary>,
    pub primes: Vec<PrimeSection>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

struct Checks(Vec<Check>);

impl Checks {
    fn push<T: std::fmt::Debug + PartialEq>(&mut self, name: String, kind: &'static str, expected: T, actual: T) {
        let passed = expected == actual;
        self.0.push(Check { name, kind, expected: format!("{expected:?}"), actual: format!("{actual:?}"), passed });
    }
}

fn int_square_is_zero(a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
    let cols = b.first().map_or(0, Vec::len);
    a.iter().all(|row| (0..cols).all(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum::<i64>() == 0))
}

fn quotient_section(es: &EquivariantSalvetti, p: u32) -> CliResult<QuotientSection> {
    let q = es.twisted_quotient(p, Twist::Sign)?;
    let report = quotient_report(es, &q);
    let labels: Vec<Vec<String>> =
        report.generators.iter().map(|level| level.iter().map(|g| g.label.clone()).collect()).collect();
    let (betti, cycles) = homology_of(&relabel(q.complex(), labels)?)?;
    Ok(QuotientSection { quotient: report, betti, cycles })
}

fn reference_braid_betti(p: u32) -> Vec<usize> {
    match p {
        2 => vec![1, 1, 1, 1],
        3 => vec![0, 1, 1, 0],
        _ => vec![0, 0, 0, 0],
    }
}

pub fn cmd_report(cfg: &RunConfig) -> CliResult<Bundle> {
    let mut primes = vec![2, 3, 5];
    for &p in &cfg.extra_primes {
        check_prime(p)?;
        if !primes.contains(&p) {
            primes.push(p);
        }
    }
    primes.sort_unstable();

    let braid = EquivariantSalvetti::new(&Arrangement::braid(4)?)?;
    let com = EquivariantSalvetti::new(&Arrangement::center_of_mass(4, 2)?)?;
    let mut checks = Checks(Vec::new());

    let mut arrangements = Vec::new();
    for (name, es) in [("braid(4)", &braid), ("center_of_mass(4,2)", &com)] {
        let cw = es.cw();
        let fl = es.faces();
        let betti = homology_fp(&cw.chain_complex(2)?)?.betti;
        let poly = es.arrangement().poincare_polynomial();
        checks.push(
            format!("{name}: cellular F_2 Betti numbers equal the Poincaré polynomial"),
            "invariant",
            poly.iter().map(|&c| c as usize).collect::<Vec<_>>(),
            betti.clone(),
        );
        checks.push(format!("{name}: diamond property"), "invariant", true, cw.diamond_property_holds());
        let squares = (2..=cw.top_dim()).all(|k| int_square_is_zero(&cw.boundary_matrix(k - 1), &cw.boundary_matrix(k)));
        checks.push(format!("{name}: ∂∂ = 0 over Z"), "invariant", true, squares);
        arrangements.push(ArrangementSummary {
            name: name.to_string(),
            faces: fl.len(),
            chambers: fl.chamber_count(),
            cells: cw.counts(),
            poincare_polynomial: poly,
            betti_unquotiented_f2: betti,
        });
    }
    checks.push("braid(4): faces and chambers".into(), "reference", (75, 24), (arrangements[0].faces, arrangements[0].chambers));
    checks.push("center_of_mass(4,2): chambers".into(), "reference", 48, arrangements[1].chambers);

    let mut sections = Vec::new();
    for &p in &primes {
        let b = quotient_section(&braid, p)?;
        let c = quotient_section(&com, p)?;
        let (cmp, f) = compare_report(&com, &braid, p, Twist::Sign)?;

        for (name, s) in [("braid(4)", &b), ("center_of_mass(4,2)", &c)] {
            let bs = &s.quotient.boundaries;
            let squares = (1..bs.len()).all(|k| int_square_is_zero(&bs[k - 1], &bs[k]));
            checks.push(format!("p={p}: {name} quotient ∂∂ = 0 over Z"), "invariant", true, squares);
        }
        let commutes = (1..f.source().dims().len()).all(|k| {
            f.target().boundary(k).mul(f.map(k)).ok() == f.map(k - 1).mul(f.source().boundary(k)).ok()
        });
        checks.push(format!("p={p}: inclusion chain map commutes with ∂"), "invariant", true, commutes);
        checks.push(format!("p={p}: braid(4) quotient generators"), "reference", vec![1, 3, 3, 1], b.quotient.counts.clone());
        checks.push(format!("p={p}: center_of_mass(4,2) quotient generators"), "reference", vec![2, 6, 6, 2], c.quotient.counts.clone());
        checks.push(format!("p={p}: braid(4) quotient homology"), "reference", reference_braid_betti(p), b.betti.clone());
        checks.push(format!("p={p}: inclusion surjective in every degree"), "reference", vec![true; 4], cmp.surjective.clone());
        if p == 2 {
            checks.push("p=2: dim H_3 of the center_of_mass(4,2) quotient".into(), "reference", 1, c.betti[3]);
            checks.push("p=2: H_3 of the inclusion is zero".into(), "reference", true, cmp.induced_maps[3].zero);
        } else {
            checks.push(format!("p={p}: kernel complex generators"), "reference", vec![1, 3, 3, 1], cmp.kernel_dims.clone());
            checks.push(format!("p={p}: kernel complex acyclic"), "reference", vec![0; 4], cmp.kernel_betti.clone());
            checks.push(format!("p={p}: center_of_mass(4,2) quotient homology"), "reference", reference_braid_betti(p), c.betti.clone());
            checks.push(
                format!("p={p}: inclusion induces isomorphisms on homology"),
                "reference",
                vec![true; 4],
                cmp.induced_maps.iter().map(|m| m.isomorphism).collect(),
            );
        }
        sections.push(PrimeSection { p, braid: b, center_of_mass: c, comparison: cmp });
    }

    let passed = checks.0.iter().all(|c| c.passed);
    Ok(Bundle { arrangements, primes: sections, checks: checks.0, passed })
}
