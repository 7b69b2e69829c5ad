//! The cross-verification suite behind `pinrank verify`.
//!
//! Runs the invariants of every module over a corpus of groups (trivial,
//! cyclic, dihedral, symmetric, alternating, hyperoctahedral) and reports
//! one pass/fail outcome per named check, with a counterexample payload on
//! failure. The expensive per-group work (cover construction, both rank
//! computations) fans out across the corpus and aggregates in corpus order,
//! so the output is deterministic.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::clifford::{volume_element, BladeElement};
use crate::cover::{build_double_cover_with, CoverOptions, DoubleCoverGroup};
use crate::exec::{map_indexed, ExecMode};
use crate::groups;
use crate::ktheory::{compute_from_cover, karoubi_ranks_with, ranks_pinc, KRankReport};
use crate::matgroup::FiniteOrthogonalGroup;
use crate::onfamily::{self, OnActionSpec, SymbolicRank};
use crate::partitions;
use crate::Result;

const RNG_SEED: u64 = 0x9e3779b97f4a7c15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Small,
    Full,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    /// Summary, or the counterexample payload on failure.
    pub detail: String,
}

impl CheckOutcome {
    fn pass(name: &str, detail: String) -> Self {
        CheckOutcome {
            name: name.into(),
            passed: true,
            detail,
        }
    }

    fn fail(name: &str, detail: String) -> Self {
        CheckOutcome {
            name: name.into(),
            passed: false,
            detail,
        }
    }

    fn from_result(name: &str, result: Result<String>) -> Self {
        match result {
            Ok(detail) => Self::pass(name, detail),
            Err(e) => Self::fail(name, e.to_string()),
        }
    }
}

/// A corpus member with everything the checks need, computed once.
pub struct CorpusEval {
    pub label: String,
    pub group: FiniteOrthogonalGroup,
    pub cover: DoubleCoverGroup,
    pub pipeline: KRankReport,
    pub karoubi: KRankReport,
}

struct SuiteLimits {
    cyclic_max: u64,
    dihedral_max: u64,
    sym_max: usize,
    alt_max: usize,
    hyperoct_max: usize,
    partitions_max: u32,
    include_s7: bool,
}

fn limits(suite: Suite) -> SuiteLimits {
    match suite {
        Suite::Small => SuiteLimits {
            cyclic_max: 8,
            dihedral_max: 6,
            sym_max: 5,
            alt_max: 5,
            hyperoct_max: 2,
            partitions_max: 30,
            include_s7: false,
        },
        Suite::Full => SuiteLimits {
            cyclic_max: 12,
            dihedral_max: 8,
            sym_max: 6,
            alt_max: 6,
            hyperoct_max: 3,
            partitions_max: 60,
            include_s7: true,
        },
    }
}

fn corpus_groups(lim: &SuiteLimits) -> Result<Vec<(String, FiniteOrthogonalGroup)>> {
    let mut out = Vec::new();
    for dim in 1..=4 {
        out.push((format!("trivial(R^{dim})"), groups::trivial(dim)?));
    }
    for m in 2..=lim.cyclic_max {
        out.push((format!("cyclic-rot({m})"), groups::cyclic_rotation(m, 2)?));
        if m % 2 == 0 {
            let ambient = groups::cyclic_default_ambient(m, true);
            out.push((
                format!("cyclic-refl({m})"),
                groups::cyclic_reflection(m, ambient)?,
            ));
        }
    }
    for m in 3..=lim.dihedral_max {
        out.push((format!("dihedral({m})"), groups::dihedral(m, 2)?));
    }
    for n in 2..=lim.sym_max {
        out.push((format!("sym({n})"), groups::symmetric(n)?));
    }
    for n in 3..=lim.alt_max {
        out.push((format!("alt({n})"), groups::alternating(n)?));
    }
    for n in 1..=lim.hyperoct_max {
        out.push((format!("hyperoct({n})"), groups::hyperoctahedral(n)?));
    }
    Ok(out)
}

fn evaluate_corpus(
    named: Vec<(String, FiniteOrthogonalGroup)>,
    exec: ExecMode,
) -> Result<Vec<CorpusEval>> {
    let evals = map_indexed(exec, named.len(), |i| -> Result<CorpusEval> {
        let (label, group) = (&named[i].0, &named[i].1);
        let cover = build_double_cover_with(
            group,
            CoverOptions {
                exec: ExecMode::Sequential,
                ..CoverOptions::default()
            },
        )?;
        let pipeline = compute_from_cover(&cover)?;
        let karoubi = karoubi_ranks_with(group, ExecMode::Sequential)?;
        Ok(CorpusEval {
            label: label.clone(),
            group: group.clone(),
            cover,
            pipeline,
            karoubi,
        })
    });
    evals.into_iter().collect()
}

/// Runs the suite and returns one outcome per check.
pub fn run_suite(suite: Suite, exec: ExecMode) -> Result<Vec<CheckOutcome>> {
    let lim = limits(suite);
    let evals = evaluate_corpus(corpus_groups(&lim)?, exec)?;
    let mut outcomes = standard_checks(&evals, &lim);
    if lim.include_s7 {
        outcomes.push(s7_triple_agreement());
    }
    Ok(outcomes)
}

/// The checks over the acceptance corpus, without the S7 extension.
fn standard_checks(evals: &[CorpusEval], lim: &SuiteLimits) -> Vec<CheckOutcome> {
    vec![
        clifford_defining_relation(),
        clifford_associativity(),
        clifford_star_antiautomorphism(),
        grading_identity(evals),
        adjoint_orthogonality(evals),
        cover_order_doubling(evals),
        cocycle_associativity(evals),
        decomposition_criterion(evals),
        class_partition_sanity(evals),
        kernel_index(evals),
        group_closure(evals),
        fixed_subspace_properties(evals),
        nonoriented_divisibility(evals),
        karoubi_pipeline_agreement(evals),
        pinc_cyclic_agreement(evals),
        parity_concentration(evals),
        sym_triple_agreement(evals),
        alt_restriction(evals),
        prop_decomposing_counts(evals),
        partition_identities(lim.partitions_max),
        gl_table_closed_form(),
        on_standard_family(),
    ]
}

/// Runs exactly the acceptance-corpus checks (full limits, no S7).
pub fn acceptance_checks(exec: ExecMode) -> Result<Vec<CheckOutcome>> {
    let lim = limits(Suite::Full);
    let evals = evaluate_corpus(corpus_groups(&lim)?, exec)?;
    Ok(standard_checks(&evals, &lim))
}

fn clifford_defining_relation() -> CheckOutcome {
    let name = "clifford_defining_relation";
    let mut rng = StdRng::seed_from_u64(RNG_SEED);
    for trial in 0..100 {
        let dim = rng.random_range(1..=6usize);
        let mut coords: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
        let norm: f64 = coords.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-3 {
            continue;
        }
        for c in coords.iter_mut() {
            *c /= norm;
        }
        let v = BladeElement::vector(dim, &coords).unwrap();
        let sq = v.product(&v).unwrap();
        let minus_one = BladeElement::scalar(dim, -1.0).unwrap();
        if !sq.approx_eq(&minus_one, 1e-9) {
            return CheckOutcome::fail(
                name,
                format!("trial {trial}: v*v != -1 for v = {coords:?}"),
            );
        }
    }
    CheckOutcome::pass(name, "100 random unit vectors square to -1".into())
}

fn random_sparse(rng: &mut StdRng, dim: usize) -> BladeElement {
    let size = 1usize << dim;
    let mut coeffs = vec![0.0; size];
    for _ in 0..rng.random_range(1..=4usize) {
        coeffs[rng.random_range(0..size)] += rng.random_range(-2.0..2.0);
    }
    BladeElement::from_coeffs(dim, coeffs).unwrap()
}

fn clifford_associativity() -> CheckOutcome {
    let name = "clifford_associativity";
    let mut rng = StdRng::seed_from_u64(RNG_SEED ^ 1);
    for trial in 0..200 {
        let dim = rng.random_range(2..=6usize);
        let a = random_sparse(&mut rng, dim);
        let b = random_sparse(&mut rng, dim);
        let c = random_sparse(&mut rng, dim);
        let left = a.product(&b).unwrap().product(&c).unwrap();
        let right = a.product(&b.product(&c).unwrap()).unwrap();
        if !left.approx_eq(&right, 1e-9) {
            return CheckOutcome::fail(name, format!("trial {trial} in dim {dim}"));
        }
    }
    CheckOutcome::pass(name, "200 random triples associate within 1e-9".into())
}

fn clifford_star_antiautomorphism() -> CheckOutcome {
    let name = "clifford_star_antiautomorphism";
    let mut rng = StdRng::seed_from_u64(RNG_SEED ^ 2);
    for trial in 0..200 {
        let dim = rng.random_range(2..=6usize);
        let a = random_sparse(&mut rng, dim);
        let b = random_sparse(&mut rng, dim);
        let left = a.product(&b).unwrap().star();
        let right = b.star().product(&a.star()).unwrap();
        if !left.approx_eq(&right, 1e-9) {
            return CheckOutcome::fail(name, format!("trial {trial} in dim {dim}"));
        }
    }
    CheckOutcome::pass(name, "star reverses 200 random products".into())
}

fn grading_identity(evals: &[CorpusEval]) -> CheckOutcome {
    let name = "grading_identity";
    for eval in evals {
        let j = match volume_element(eval.cover.lift_dim()) {
            Ok(j) => j,
            Err(e) => return CheckOutcome::fail(name, e.to_string()),
        };
        let j_star = j.star();
        for g in 0..eval.group.order() {
            let x = eval.cover.reference_lift(g).element();
            let conj = j.product(x).unwrap().product(&j_star).unwrap();
            let det = match eval.cover.stabilized_matrix(g).det_sign() {
                Ok(d) => d as f64,
                Err(e) => return CheckOutcome::fail(name, e.to_string()),
            };
            if !conj.approx_eq(&x.scale(det), 1e-9) {
                return CheckOutcome::fail(
                    name,
                    format!("{}: J u J* != det(rho) u at element {g}", eval.label),
                );
            }
        }
    }
    CheckOutcome::pass(name, "J u J* = det(rho) u for every reference lift".into())
}

fn adjoint_orthogonality(evals: &[CorpusEval]) -> CheckOutcome {
    let name = "adjoint_orthogonality";
    for eval in evals {
        for g in 0..eval.group.order() {
            match crate::clifford::adjoint_action(eval.cover.reference_lift(g)) {
                Ok(q) => {
                    let residual = q.orthogonality_residual();
                    if residual > 1e-8 {
                        return CheckOutcome::fail(
                            name,
                            format!("{}: residual {residual:e} at element {g}", eval.label),
                        );
                    }
                }
                Err(e) => {
                    return CheckOutcome::fail(name, format!("{}: {e}", eval.label));
                }
            }
        }
    }
    CheckOutcome::pass(name, "Ad(lift) orthogonal within 1e-8 everywhere".into())
}

fn cover_order_doubling(evals: &[CorpusEval]) -> CheckOutcome {
    let name = "cover_order_doubling";
    for eval in evals {
        if eval.cover.order() != 2 * eval.group.order() {
            return CheckOutcome::fail(
                name,
                format!(
                    "{}: |cover| = {} but 2|G| = {}",
                    eval.label,
                    eval.cover.order(),
                    2 * eval.group.order()
                ),
            );
        }
    }
    CheckOutcome::pass(name, "|G_rho| = 2 |G| on the whole corpus".into())
}

fn cocycle_associativity(evals: &[CorpusEval]) -> CheckOutcome {
    let name = "cocycle_associativity";
    let mut rng = StdRng::seed_from_u64(RNG_SEED ^ 3);
    for eval in evals {
        let n = eval.group.order();
        let triples: Vec<(usize, usize, usize)> = (0..60)
            .map(|_| {
                (
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                )
            })
            .collect();
        if let Err(e) = eval.cover.cocycle_associativity_check(&triples) {
            return CheckOutcome::fail(name, format!("{}: {e}", eval.label));
        }
    }
    CheckOutcome::pass(name, "c(g,h)c(gh,k) = c(h,k)c(g,hk) exactly".into())
}

fn decomposition_criterion(evals: &[CorpusEval]) -> CheckOutcome {
    let name = "decomposition_criterion";
    for eval in evals {
        if let Err(e) = eval.cover.decomposition_check() {
            return CheckOutcome::fail(name, format!("{}: {e}", eval.label));
        }
    }
    CheckOutcome::pass(
        name,
        "split base classes match C_Grho - C_G on the whole corpus".into(),
    )
}

fn class_partition_sanity(evals: &[CorpusEval]) -> CheckOutcome {
    let name = "class_partition_sanity";
    for eval in evals {
        let g = &eval.group;
        let total: usize = g.conjugacy_classes().iter().map(|c| c.len()).sum();
        if total != g.order() {
            return CheckOutcome::fail(
                name,
                format!(
                    "{}: class sizes sum to {total} != {}",
                    eval.label,
                    g.order()
                ),
            );
        }
        for class in g.conjugacy_classes() {
            if g.order() % class.len() != 0 {
                return CheckOutcome::fail(
                    name,
                    format!(
                        "{}: class size {} does not divide |G|",
                        eval.label,
                        class.len()
                    ),
                );
            }
        }
        if g.order() <= 48 {
            // brute force: all-pairs conjugation
            for class in g.conjugacy_classes() {
                let rep = class[0];
                let mut brute: Vec<usize> = (0..g.order())
                    .map(|h| g.conjugate_index(h, rep))
                    .collect::<Result<Vec<_>>>()
                    .unwrap_or_default();
                brute.sort_unstable();
                brute.dedup();
                if &brute != class {
                    return CheckOutcome::fail(
                        name,
                        format!(
                            "{}: BFS class of {rep} differs from brute force",
                            eval.label
                        ),
                    );
                }
            }
        }
    }
    CheckOutcome::pass(
        name,
        "partition sums, divisibility, brute-force agreement".into(),
    )
}

fn kernel_index(evals: &[CorpusEval]) -> CheckOutcome {
    let name = "kernel_index";
    for eval in evals {
        match eval.group.kernel_subgroup(eval.group.det_character()) {
            Ok(k) => {
                let index = eval.group.order() / k.order();
                if index != 1 && index != 2 {
                    return CheckOutcome::fail(
                        name,
                        format!("{}: kernel index {index}", eval.label),
                    );
                }
            }
            Err(e) => return CheckOutcome::fail(name, format!("{}: {e}", eval.label)),
        }
    }
    CheckOutcome::pass(name, "[G : ker(det)] ∈ {1, 2} on the whole corpus".into())
}

fn group_closure(evals: &[CorpusEval]) -> CheckOutcome {
    let name = "group_closure";
    let mut rng = StdRng::seed_from_u64(RNG_SEED ^ 4);
    for eval in evals {
        let n = eval.group.order();
        for _ in 0..50.min(n * n) {
            let a = rng.random_range(0..n);
            let b = rng.random_range(0..n);
            if eval.group.mul_index(a, b).is_err() {
                return CheckOutcome::fail(
                    name,
                    format!("{}: product of {a} and {b} missing", eval.label),
                );
            }
        }
    }
    CheckOutcome::pass(name, "random products land in the element table".into())
}

fn fixed_subspace_properties(evals: &[CorpusEval]) -> CheckOutcome {
    let name = "fixed_subspace_properties";
    for eval in evals {
        for rep in eval.group.class_representatives() {
            let q = eval.group.matrix(rep);
            let basis = crate::matgroup::fixed_subspace(q);
            for (i, v) in basis.iter().enumerate() {
                let image = q.apply(v);
                if image.iter().zip(v).any(|(a, b)| (a - b).abs() > 1e-7) {
                    return CheckOutcome::fail(
                        name,
                        format!(
                            "{}: Qv != v for basis vector {i} of element {rep}",
                            eval.label
                        ),
                    );
                }
                for (j, w) in basis.iter().enumerate() {
                    let dot: f64 = v.iter().zip(w).map(|(x, y)| x * y).sum();
                    let want = if i == j { 1.0 } else { 0.0 };
                    if (dot - want).abs() > 1e-8 {
                        return CheckOutcome::fail(
                            name,
                            format!("{}: basis not orthonormal at element {rep}", eval.label),
                        );
                    }
                }
            }
        }
    }
    CheckOutcome::pass(
        name,
        "fixed-space bases orthonormal and pointwise fixed".into(),
    )
}

fn nonoriented_divisibility(evals: &[CorpusEval]) -> CheckOutcome {
    let name = "nonoriented_divisibility";
    for eval in evals {
        if eval.group.is_orientation_preserving() {
            continue;
        }
        let c = eval.cover.class_counts();
        let a = (c.c_g_rho - c.c_g) as i64;
        let b = (c.c_k_rho - c.c_k) as i64;
        if (2 * b - a) % 3 != 0 || (2 * a - b) % 3 != 0 || 2 * b < a || 2 * a < b {
            return CheckOutcome::fail(
                name,
                format!("{}: counts {c:?} violate divisibility", eval.label),
            );
        }
    }
    CheckOutcome::pass(
        name,
        "both rank numerators are nonnegative multiples of 3".into(),
    )
}

fn karoubi_pipeline_agreement(evals: &[CorpusEval]) -> CheckOutcome {
    let name = "karoubi_pipeline_agreement";
    for eval in evals {
        if eval.pipeline.ranks() != eval.karoubi.ranks() {
            return CheckOutcome::fail(
                name,
                format!(
                    "{}: pipeline {:?} vs karoubi {:?}",
                    eval.label,
                    eval.pipeline.ranks(),
                    eval.karoubi.ranks()
                ),
            );
        }
    }
    CheckOutcome::pass(name, "class-count pipeline equals the Karoubi count".into())
}

fn pinc_cyclic_agreement(evals: &[CorpusEval]) -> CheckOutcome {
    let name = "pinc_cyclic_agreement";
    for eval in evals {
        if !eval.label.starts_with("cyclic-") {
            continue;
        }
        let g = &eval.group;
        let k = match g.kernel_subgroup(g.det_character()) {
            Ok(k) => k,
            Err(e) => return CheckOutcome::fail(name, format!("{}: {e}", eval.label)),
        };
        let pinc = match ranks_pinc(
            g.class_count(),
            k.class_count(),
            g.is_orientation_preserving(),
            g.dim(),
        ) {
            Ok(r) => r,
            Err(e) => return CheckOutcome::fail(name, format!("{}: {e}", eval.label)),
        };
        if pinc.ranks() != eval.pipeline.ranks() {
            return CheckOutcome::fail(
                name,
                format!(
                    "{}: pinc {:?} vs pipeline {:?}",
                    eval.label,
                    pinc.ranks(),
                    eval.pipeline.ranks()
                ),
            );
        }
    }
    CheckOutcome::pass(
        name,
        "Pin^c formula matches the pipeline on cyclic actions".into(),
    )
}

fn parity_concentration(evals: &[CorpusEval]) -> CheckOutcome {
    let name = "parity_concentration";
    for eval in evals {
        if !eval.group.is_orientation_preserving() {
            continue;
        }
        let r = &eval.pipeline;
        let odd_slot_rank = if r.dim_v % 2 == 0 {
            r.rank_k1
        } else {
            r.rank_k0
        };
        if odd_slot_rank != 0 {
            return CheckOutcome::fail(
                name,
                format!("{}: nonzero rank in the * + dim odd slot", eval.label),
            );
        }
    }
    CheckOutcome::pass(
        name,
        "oriented actions vanish in the * + dim odd slot".into(),
    )
}

fn sym_triple_agreement(evals: &[CorpusEval]) -> CheckOutcome {
    let name = "sym_triple_agreement";
    for eval in evals {
        let Some(n) = eval
            .label
            .strip_prefix("sym(")
            .and_then(|s| s.strip_suffix(')'))
            .and_then(|s| s.parse::<u32>().ok())
        else {
            continue;
        };
        let formula = match partitions::sym_ranks(n) {
            Ok(r) => r,
            Err(e) => return CheckOutcome::fail(name, e.to_string()),
        };
        if eval.pipeline.ranks() != formula.ranks() || eval.karoubi.ranks() != formula.ranks() {
            return CheckOutcome::fail(
                name,
                format!(
                    "{}: pipeline {:?}, karoubi {:?}, partition formula {:?}",
                    eval.label,
                    eval.pipeline.ranks(),
                    eval.karoubi.ranks(),
                    formula.ranks()
                ),
            );
        }
    }
    CheckOutcome::pass(name, "pipeline = Karoubi = partition formula on S_n".into())
}

fn alt_restriction(evals: &[CorpusEval]) -> CheckOutcome {
    let name = "alt_restriction";
    for eval in evals {
        let Some(n) = eval
            .label
            .strip_prefix("alt(")
            .and_then(|s| s.strip_suffix(')'))
            .and_then(|s| s.parse::<u32>().ok())
        else {
            continue;
        };
        let formula = match partitions::alt_ranks(n) {
            Ok(r) => r,
            Err(e) => return CheckOutcome::fail(name, e.to_string()),
        };
        if eval.pipeline.ranks() != formula.ranks() {
            return CheckOutcome::fail(
                name,
                format!(
                    "{}: pipeline {:?} vs 2a+b formula {:?}",
                    eval.label,
                    eval.pipeline.ranks(),
                    formula.ranks()
                ),
            );
        }
    }
    CheckOutcome::pass(name, "A_n ranks equal 2a_n + b_n in the even slot".into())
}

fn prop_decomposing_counts(evals: &[CorpusEval]) -> CheckOutcome {
    let name = "prop_decomposing_counts";
    for eval in evals {
        let (prefix, is_sym) = if eval.label.starts_with("sym(") {
            ("sym(", true)
        } else if eval.label.starts_with("alt(") {
            ("alt(", false)
        } else {
            continue;
        };
        let Some(n) = eval
            .label
            .strip_prefix(prefix)
            .and_then(|s| s.strip_suffix(')'))
            .and_then(|s| s.parse::<u32>().ok())
        else {
            continue;
        };
        if !is_sym && n < 3 {
            continue;
        }
        let (sym_dec, alt_dec) = match partitions::decomposing_class_counts(n) {
            Ok(v) => v,
            Err(e) => return CheckOutcome::fail(name, e.to_string()),
        };
        let counts = eval.cover.class_counts();
        let got = (counts.c_g_rho - counts.c_g) as u64;
        let want = if is_sym { sym_dec } else { alt_dec };
        if got != want {
            return CheckOutcome::fail(
                name,
                format!(
                    "{}: C_cover - C_base = {got}, formula gives {want}",
                    eval.label
                ),
            );
        }
        // For S_n the preimage of A_n inside the cover must match too.
        if is_sym && n >= 3 {
            let got_alt = (counts.c_k_rho - counts.c_k) as u64;
            if got_alt != alt_dec {
                return CheckOutcome::fail(
                    name,
                    format!(
                        "{}: C_Krho - C_K = {got_alt}, formula gives {alt_dec}",
                        eval.label
                    ),
                );
            }
        }
    }
    CheckOutcome::pass(
        name,
        "decomposing-class counts match a_n + 2b_n and 2a_n + b_n".into(),
    )
}

fn partition_identities(n_max: u32) -> CheckOutcome {
    let name = "partition_identities";
    for n in 2..=n_max {
        let c = match partitions::partition_counts(n) {
            Ok(c) => c,
            Err(e) => return CheckOutcome::fail(name, e.to_string()),
        };
        let ok = if n % 2 == 1 {
            c.a == c.i && c.b == c.p
        } else {
            c.a == c.p && c.b == c.i
        };
        if !ok || c.a + c.b != c.p + c.i {
            return CheckOutcome::fail(name, format!("n = {n}: {c:?}"));
        }
    }
    CheckOutcome::pass(
        name,
        format!("a/b vs p/i parity identities up to n = {n_max}"),
    )
}

fn gl_table_closed_form() -> CheckOutcome {
    use SymbolicRank::*;
    let name = "gl_table_closed_form";
    let table = match onfamily::gl_table(8) {
        Ok(t) => t,
        Err(e) => return CheckOutcome::fail(name, e.to_string()),
    };
    for row in &table {
        let want = if row.n == 2 {
            (FiniteFree(1), CountablyInfinite)
        } else if row.n % 2 == 0 {
            (CountablyInfinite, CountablyInfinite)
        } else {
            let m = (row.n - 1) / 2;
            if m % 2 == 1 {
                (CountablyInfinite, Zero)
            } else {
                (Zero, CountablyInfinite)
            }
        };
        if (row.k0, row.k1) != want {
            return CheckOutcome::fail(
                name,
                format!("n = {}: got ({}, {})", row.n, row.k0, row.k1),
            );
        }
    }
    CheckOutcome::pass(
        name,
        "gl_table(8) matches the closed form row for row".into(),
    )
}

fn on_standard_family() -> CheckOutcome {
    use SymbolicRank::*;
    let name = "on_standard_family";
    for n in 2..=8 {
        let spec = match OnActionSpec::standard(n) {
            Ok(s) => s,
            Err(e) => return CheckOutcome::fail(name, e.to_string()),
        };
        match onfamily::symbolic_ranks(&spec) {
            Ok((CountablyInfinite, Zero)) => {}
            Ok(other) => {
                return CheckOutcome::fail(name, format!("n = {n}: got ({}, {})", other.0, other.1))
            }
            Err(e) => return CheckOutcome::fail(name, e.to_string()),
        }
        let sym_spec = OnActionSpec::symmetric_matrices(n).unwrap();
        match onfamily::minus_eigenspace_dim(&sym_spec) {
            Ok(d) if d == 2 * (n - 2) => {}
            Ok(d) => {
                return CheckOutcome::fail(name, format!("n = {n}: dim V^- = {d}"));
            }
            Err(e) => return CheckOutcome::fail(name, e.to_string()),
        }
    }
    CheckOutcome::pass(name, "O(n) on R^n gives (⊕Z, 0); dim V^- = 2(n-2)".into())
}

fn s7_triple_agreement() -> CheckOutcome {
    let name = "s7_triple_agreement";
    CheckOutcome::from_result(
        name,
        || -> Result<String> {
            let group = groups::symmetric(7)?;
            let cover = build_double_cover_with(&group, CoverOptions::default())?;
            let pipeline = compute_from_cover(&cover)?;
            let karoubi = karoubi_ranks_with(&group, ExecMode::default())?;
            let formula = partitions::sym_ranks(7)?;
            if pipeline.ranks() != formula.ranks() || karoubi.ranks() != formula.ranks() {
                return Err(crate::Error::InconsistentCounts(format!(
                    "pipeline {:?}, karoubi {:?}, formula {:?}",
                    pipeline.ranks(),
                    karoubi.ranks(),
                    formula.ranks()
                )));
            }
            let (sym_dec, _) = partitions::decomposing_class_counts(7)?;
            let counts = cover.class_counts();
            if (counts.c_g_rho - counts.c_g) as u64 != sym_dec {
                return Err(crate::Error::InconsistentCounts(format!(
                    "C_cover - C_base = {} but a_7 + 2 b_7 = {sym_dec}",
                    counts.c_g_rho - counts.c_g
                )));
            }
            Ok(format!(
                "S_7 (order 5040): ranks {:?} by all three methods",
                pipeline.ranks()
            ))
        }(),
    )
}

/// A single pair check used by the fault-injection test.
#[cfg(test)]
pub(crate) fn decomposition_outcome(cover: &DoubleCoverGroup) -> CheckOutcome {
    CheckOutcome::from_result(
        "decomposition_criterion",
        cover.decomposition_check().map(|_| "ok".into()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::pair;

    #[test]
    fn small_suite_passes() {
        let outcomes = run_suite(Suite::Small, ExecMode::default()).unwrap();
        assert!(outcomes.len() >= 20);
        for o in &outcomes {
            assert!(o.passed, "{}: {}", o.name, o.detail);
        }
    }

    #[test]
    fn tampered_cover_fails_decomposition_check() {
        let base = groups::symmetric(3).unwrap();
        let mut cover = build_double_cover_with(&base, CoverOptions::default()).unwrap();
        let rep = base
            .class_representatives()
            .into_iter()
            .find(|&r| cover.class_of_pair(pair(r, false)) != cover.class_of_pair(pair(r, true)))
            .unwrap();
        cover.tamper_merge_classes_for_test(pair(rep, false), pair(rep, true));
        let outcome = decomposition_outcome(&cover);
        assert!(!outcome.passed);
        assert!(outcome.detail.contains("decomposing"));
    }
}
