//! Two-sided checks of the trace, partial-trace, character and dimension
//! identities. Each check walks a grid, compares both sides exactly and
//! reports the first disagreement in grid order.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::characters::{
    branching_rhs, character_on_perm, degree, reciprocal_lhs, reciprocal_rhs,
};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::par;
use crate::partitions::{enumerate_partitions, remove_corner, removable_corners, Composition, Partition};
use crate::symgroup::{class_representative, factorial, permutation_from_rank, permutations, Permutation};
use crate::tensorop::{
    dim_symmetry_class, fast_trace_symmetrizer_prime, format_scalar, partial_trace,
    perm_operator, rank_exact, scalar, symmetrizer, symmetrizer_prime, symmetrizer_scale,
    tensor_dim, tensor_product, ExactOperator, Scalar,
};

pub const DEFAULT_SEED: u64 = 0x5EED_0001;
pub const DEFAULT_SAMPLES: usize = 100;
/// Matrix-unit sweeps run only when `d_A · d_B` is at most this.
pub const MATRIX_UNIT_MAX_DIM: usize = 36;
pub const MAX_COSET_DEGREE: usize = 7;
/// Compositions (not just partitions) are fed to the reciprocal identity up
/// to this `m`.
pub const COMPOSITION_SWEEP_MAX: usize = 5;
const RANDOM_ENTRY_BOUND: i64 = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityId {
    TraceOfPartialTrace,
    PartialTraceProduct,
    PartialTraceGroupElement,
    MainTheorem,
    Corollary,
    DimensionTheorem,
    CharacterIdentities,
    CosetDecomposition,
}

impl IdentityId {
    pub const ALL: [IdentityId; 8] = [
        IdentityId::TraceOfPartialTrace,
        IdentityId::PartialTraceProduct,
        IdentityId::PartialTraceGroupElement,
        IdentityId::MainTheorem,
        IdentityId::Corollary,
        IdentityId::DimensionTheorem,
        IdentityId::CharacterIdentities,
        IdentityId::CosetDecomposition,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityId::TraceOfPartialTrace => "trace-of-partial-trace",
            IdentityId::PartialTraceProduct => "partial-trace-product",
            IdentityId::PartialTraceGroupElement => "partial-trace-group-element",
            IdentityId::MainTheorem => "main-theorem",
            IdentityId::Corollary => "corollary",
            IdentityId::DimensionTheorem => "dimension-theorem",
            IdentityId::CharacterIdentities => "character-identities",
            IdentityId::CosetDecomposition => "coset-decomposition",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown identity {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// The grid point and both sides where an identity first failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub parameters: BTreeMap<String, String>,
    /// First differing `(row, col)` when the sides are operators.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entry: Option<(usize, usize)>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity_id: IdentityId,
    pub domain: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub config: Config,
    pub seed: u64,
    pub samples: usize,
    /// Adds 1 to one entry of the left-hand side at the first grid point.
    /// Negative control: the report must then fail.
    pub inject_fault: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            config: Config::default(),
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            inject_fault: false,
        }
    }
}

impl VerifyOptions {
    pub fn with_fault(mut self) -> Self {
        self.inject_fault = true;
        self
    }
}

/// Operator shapes `(d_A, d_B)` for the linear-algebra lemmas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearGrid {
    pub shapes: Vec<(usize, usize)>,
}

impl Default for LinearGrid {
    fn default() -> Self {
        LinearGrid {
            shapes: vec![(2, 2), (3, 2), (4, 3)],
        }
    }
}

/// `(m, n)` points for the tensor identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorGrid {
    pub points: Vec<(usize, usize)>,
}

impl TensorGrid {
    pub fn point(m: usize, n: usize) -> Self {
        TensorGrid {
            points: vec![(m, n)],
        }
    }

    /// All `1 <= m <= m_max`, `1 <= n <= n_max`.
    pub fn upto(m_max: usize, n_max: usize) -> Self {
        TensorGrid {
            points: (1..=m_max)
                .flat_map(|m| (1..=n_max).map(move |n| (m, n)))
                .collect(),
        }
    }

    /// `m <= 4, n <= 3`, or `m <= 5` for the extended tier.
    pub fn default_tier(extended: bool) -> Self {
        TensorGrid::upto(if extended { 5 } else { 4 }, 3)
    }

    fn describe(&self) -> String {
        let pts: Vec<String> = self.points.iter().map(|(m, n)| format!("({m},{n})")).collect();
        format!("(m,n) in [{}]", pts.join(","))
    }
}

fn check_dim(dim: Option<usize>, config: &Config) -> Result<()> {
    match dim {
        Some(d) if d <= config.max_dim => Ok(()),
        other => Err(Error::LimitExceeded {
            what: "operator dimension",
            value: other.unwrap_or(usize::MAX),
            limit: config.max_dim,
        }),
    }
}

fn check_tensor_grid(grid: &TensorGrid, config: &Config) -> Result<()> {
    for &(m, n) in &grid.points {
        if m > config.max_sym_degree {
            return Err(Error::LimitExceeded {
                what: "symmetric group degree",
                value: m,
                limit: config.max_sym_degree,
            });
        }
        check_dim(tensor_dim(m, n), config)?;
    }
    Ok(())
}

fn check_linear_grid(grid: &LinearGrid, config: &Config) -> Result<()> {
    for &(da, db) in &grid.shapes {
        check_dim(da.checked_mul(db), config)?;
    }
    Ok(())
}

// Grid walking -------------------------------------------------------------

type Params = Vec<(&'static str, String)>;

fn cx(params: Params, entry: Option<(usize, usize)>, lhs: String, rhs: String) -> Counterexample {
    Counterexample {
        parameters: params.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        entry,
        lhs,
        rhs,
    }
}

fn compare_ops(params: Params, lhs: &ExactOperator, rhs: &ExactOperator) -> Option<Counterexample> {
    let (r, c) = lhs.first_difference(rhs)?;
    let show = |t: &ExactOperator| {
        if r < t.dim() && c < t.dim() {
            format_scalar(&t.entry(r, c))
        } else {
            format!("dim {}", t.dim())
        }
    };
    Some(cx(params, Some((r, c)), show(lhs), show(rhs)))
}

fn compare_scalars(params: Params, lhs: &Scalar, rhs: &Scalar) -> Option<Counterexample> {
    (lhs != rhs).then(|| cx(params, None, format_scalar(lhs), format_scalar(rhs)))
}

fn fault_op(t: ExactOperator, on: bool) -> ExactOperator {
    if on && t.dim() > 0 {
        t.perturb(0, 0, &scalar(1))
    } else {
        t
    }
}

fn fault_int(x: BigInt, on: bool) -> BigInt {
    if on {
        x + 1
    } else {
        x
    }
}

/// Runs `check` over the grid; `check` gets the item and whether to inject
/// the fault (first item only). Errors inside a check become failures.
fn run_grid<T, F>(
    id: IdentityId,
    domain: String,
    seed: Option<u64>,
    opts: &VerifyOptions,
    items: Vec<T>,
    check: F,
) -> IdentityReport
where
    T: Sync + Send,
    F: Fn(&T, bool) -> Result<Option<Counterexample>> + Sync + Send,
{
    let start = Instant::now();
    let indexed: Vec<(usize, T)> = items.into_iter().enumerate().collect();
    let found = par::find_map_first(opts.config.execution, &indexed, |(k, item)| {
        match check(item, opts.inject_fault && *k == 0) {
            Ok(found) => found,
            Err(e) => Some(cx(
                vec![("grid_index", k.to_string())],
                None,
                format!("error: {e}"),
                "no error".into(),
            )),
        }
    });
    IdentityReport {
        identity_id: id,
        domain,
        status: if found.is_some() { Status::Fail } else { Status::Pass },
        counterexample: found,
        elapsed_ms: start.elapsed().as_millis() as u64,
        seed,
    }
}

fn random_operator(seed: u64, stream: u64, dim: usize) -> ExactOperator {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let entries = (0..dim * dim)
        .map(|_| scalar(rng.gen_range(-RANDOM_ENTRY_BOUND..=RANDOM_ENTRY_BOUND)))
        .collect();
    ExactOperator::from_dense(dim, entries).expect("square")
}

fn stream_id(shape_idx: usize, sample: usize, slot: u64) -> u64 {
    ((shape_idx as u64) << 40) | ((sample as u64) << 8) | slot
}

// Lemma: tr T = tr(tr_B T) --------------------------------------------------

#[derive(Debug, Clone)]
enum LinearItem {
    Unit { da: usize, db: usize, row: usize, col: usize },
    Random { shape: usize, da: usize, db: usize, sample: usize },
}

fn linear_items(grid: &LinearGrid, samples: usize, units: impl Fn(usize, usize) -> Vec<(usize, usize)>) -> Vec<LinearItem> {
    let mut items = Vec::new();
    for (shape, &(da, db)) in grid.shapes.iter().enumerate() {
        if da * db <= MATRIX_UNIT_MAX_DIM {
            items.extend(units(da, db).into_iter().map(|(row, col)| LinearItem::Unit { da, db, row, col }));
        }
        items.extend((0..samples).map(|sample| LinearItem::Random { shape, da, db, sample }));
    }
    items
}

fn linear_domain(grid: &LinearGrid, samples: usize) -> String {
    let shapes: Vec<String> = grid.shapes.iter().map(|(a, b)| format!("({a},{b})")).collect();
    format!(
        "(d_A,d_B) in [{}]; matrix units exhaustive when d_A*d_B <= {MATRIX_UNIT_MAX_DIM}; {samples} random operators per shape, integer entries in [-{RANDOM_ENTRY_BOUND},{RANDOM_ENTRY_BOUND}]",
        shapes.join(",")
    )
}

pub fn verify_trace_of_partial_trace(grid: &LinearGrid, opts: &VerifyOptions) -> Result<IdentityReport> {
    check_linear_grid(grid, &opts.config)?;
    let items = linear_items(grid, opts.samples, |da, db| {
        let d = da * db;
        (0..d).flat_map(|r| (0..d).map(move |c| (r, c))).collect()
    });
    let seed = opts.seed;
    Ok(run_grid(
        IdentityId::TraceOfPartialTrace,
        linear_domain(grid, opts.samples),
        Some(seed),
        opts,
        items,
        |item, fault| {
            let (t, da, db, label) = match *item {
                LinearItem::Unit { da, db, row, col } => (
                    ExactOperator::matrix_unit(da * db, row, col),
                    da,
                    db,
                    format!("E({row},{col})"),
                ),
                LinearItem::Random { shape, da, db, sample } => (
                    random_operator(seed, stream_id(shape, sample, 0), da * db),
                    da,
                    db,
                    format!("random #{sample}"),
                ),
            };
            let reduced = fault_op(partial_trace(&t, da, db)?, fault);
            Ok(compare_scalars(
                vec![("d_A", da.to_string()), ("d_B", db.to_string()), ("T", label)],
                &reduced.trace(),
                &t.trace(),
            ))
        },
    ))
}

// Lemma: tr_B(S ⊗ R) = (tr R) S -----------------------------------------------

pub fn verify_partial_trace_product(grid: &LinearGrid, opts: &VerifyOptions) -> Result<IdentityReport> {
    check_linear_grid(grid, &opts.config)?;
    // unit items encode (S unit index, R unit index); R index d_B² means 1_B
    let items = linear_items(grid, opts.samples, |da, db| {
        (0..da * da)
            .flat_map(|s| (0..=db * db).map(move |r| (s, r)))
            .collect()
    });
    let seed = opts.seed;
    let config = opts.config;
    Ok(run_grid(
        IdentityId::PartialTraceProduct,
        linear_domain(grid, opts.samples) + "; S,R matrix-unit pairs plus R = identity",
        Some(seed),
        opts,
        items,
        |item, fault| {
            let (s, r, da, db, label) = match *item {
                LinearItem::Unit { da, db, row: si, col: ri } => {
                    let s = ExactOperator::matrix_unit(da, si / da, si % da);
                    let (r, rl) = if ri == db * db {
                        (ExactOperator::identity(db), "I".to_string())
                    } else {
                        (
                            ExactOperator::matrix_unit(db, ri / db, ri % db),
                            format!("E({},{})", ri / db, ri % db),
                        )
                    };
                    (s, r, da, db, format!("S=E({},{}), R={rl}", si / da, si % da))
                }
                LinearItem::Random { shape, da, db, sample } => (
                    random_operator(seed, stream_id(shape, sample, 1), da),
                    random_operator(seed, stream_id(shape, sample, 2), db),
                    da,
                    db,
                    format!("random pair #{sample}"),
                ),
            };
            let lhs = fault_op(partial_trace(&tensor_product(&s, &r, &config)?, da, db)?, fault);
            let rhs = s.scale(&r.trace());
            Ok(compare_ops(
                vec![("d_A", da.to_string()), ("d_B", db.to_string()), ("operands", label)],
                &lhs,
                &rhs,
            ))
        },
    ))
}

// Lemma: tr_B P_m(τ(i,m)) = κ_i P_{m-1}(τ) ----------------------------------

pub fn verify_partial_trace_group_element(grid: &TensorGrid, opts: &VerifyOptions) -> Result<IdentityReport> {
    check_tensor_grid(grid, &opts.config)?;
    let mut items = Vec::new();
    for &(m, n) in &grid.points {
        if m == 0 {
            continue;
        }
        for rank in 0..factorial(m - 1) {
            items.extend((1..=m).map(|i| (m, n, rank, i)));
        }
    }
    let config = opts.config;
    Ok(run_grid(
        IdentityId::PartialTraceGroupElement,
        format!("{}; all tau in S_(m-1), 1 <= i <= m", grid.describe()),
        None,
        opts,
        items,
        |&(m, n, rank, i), fault| {
            let tau = permutation_from_rank(m - 1, rank);
            let sigma = tau.extend(m)?.compose(&Permutation::transposition(m, i, m)?)?;
            let dim_a = tensor_dim(m - 1, n).expect("guarded below");
            let lhs = fault_op(partial_trace(&perm_operator(&sigma, n, &config)?, dim_a, n)?, fault);
            let kappa = if i == m { n as i64 } else { 1 };
            let rhs = perm_operator(&tau, n, &config)?.scale(&scalar(kappa));
            Ok(compare_ops(
                vec![
                    ("m", m.to_string()),
                    ("n", n.to_string()),
                    ("tau", tau.to_string()),
                    ("i", i.to_string()),
                ],
                &lhs,
                &rhs,
            ))
        },
    ))
}

// Main theorem and corollary -------------------------------------------------

/// `T'_β`, with `T'_() = 1` on `V^{⊗0}`.
fn prime_or_unit(b: &Partition, n: usize, config: &Config) -> Result<ExactOperator> {
    if b.is_empty() {
        Ok(ExactOperator::identity(1))
    } else {
        symmetrizer_prime(b, n, config)
    }
}

fn symmetrizer_or_unit(b: &Partition, n: usize, config: &Config) -> Result<ExactOperator> {
    if b.is_empty() {
        Ok(ExactOperator::identity(1))
    } else {
        symmetrizer(b, n, config)
    }
}

fn shape_items(grid: &TensorGrid) -> Result<Vec<(usize, usize, Partition)>> {
    let mut items = Vec::new();
    for &(m, n) in &grid.points {
        if m == 0 {
            continue;
        }
        for a in enumerate_partitions(m)? {
            items.push((m, n, a));
        }
    }
    Ok(items)
}

fn shape_params(m: usize, n: usize, a: &Partition) -> Params {
    vec![("m", m.to_string()), ("n", n.to_string()), ("alpha", a.to_string())]
}

fn shape_grid_report<F>(
    id: IdentityId,
    domain: String,
    grid: &TensorGrid,
    opts: &VerifyOptions,
    check: F,
) -> Result<IdentityReport>
where
    F: Fn(usize, usize, &Partition, bool) -> Result<Option<Counterexample>> + Sync + Send,
{
    check_tensor_grid(grid, &opts.config)?;
    let items = shape_items(grid)?;
    Ok(run_grid(id, domain, None, opts, items, |(m, n, a), fault| {
        check(*m, *n, a, fault)
    }))
}

/// `tr_B T'_α = Σ_{i corner} (n + α_i - i) T'_{α-ε_i}`.
pub fn verify_main_theorem(grid: &TensorGrid, opts: &VerifyOptions) -> Result<IdentityReport> {
    let config = opts.config;
    shape_grid_report(
        IdentityId::MainTheorem,
        format!("{}; all alpha |- m", grid.describe()),
        grid,
        opts,
        |m, n, a, fault| {
            let dim_a = tensor_dim(m - 1, n).expect("guarded");
            let lhs = fault_op(partial_trace(&symmetrizer_prime(a, n, &config)?, dim_a, n)?, fault);
            let mut rhs = ExactOperator::zero(dim_a);
            for i in removable_corners(a) {
                let coeff = scalar(n as i64 + a.part(i) as i64 - i as i64);
                let term = prime_or_unit(&remove_corner(a, i)?, n, &config)?.scale(&coeff);
                rhs = rhs.add(&term)?;
            }
            Ok(compare_ops(shape_params(m, n, a), &lhs, &rhs))
        },
    )
}

/// The corollary coefficient `χ_α(1)(n + α_i - i) / (m χ_{α-ε_i}(1))`.
pub fn corollary_coefficient(a: &Partition, i: usize, n: usize) -> Result<Scalar> {
    let smaller = remove_corner(a, i)?;
    let numer = degree(a) * (n as i64 + a.part(i) as i64 - i as i64);
    let denom = a.weight() as i64 * degree(&smaller);
    Ok(Scalar::new(BigInt::from(numer), BigInt::from(denom)))
}

/// `tr_B T_α = Σ_{i corner} [χ_α(1)(n + α_i - i) / (m χ_{α-ε_i}(1))] T_{α-ε_i}`.
pub fn verify_corollary(grid: &TensorGrid, opts: &VerifyOptions) -> Result<IdentityReport> {
    let config = opts.config;
    shape_grid_report(
        IdentityId::Corollary,
        format!("{}; all alpha |- m", grid.describe()),
        grid,
        opts,
        |m, n, a, fault| {
            let dim_a = tensor_dim(m - 1, n).expect("guarded");
            let lhs = fault_op(partial_trace(&symmetrizer(a, n, &config)?, dim_a, n)?, fault);
            let mut rhs = ExactOperator::zero(dim_a);
            for i in removable_corners(a) {
                let term = symmetrizer_or_unit(&remove_corner(a, i)?, n, &config)?
                    .scale(&corollary_coefficient(a, i, n)?);
                rhs = rhs.add(&term)?;
            }
            Ok(compare_ops(shape_params(m, n, a), &lhs, &rhs))
        },
    )
}

// Dimension of a symmetry class ------------------------------------------------

/// Formula, exact rank of `T_α`, and trace of `T_α` via class sums must agree.
pub fn verify_dimension_theorem(grid: &TensorGrid, opts: &VerifyOptions) -> Result<IdentityReport> {
    let config = opts.config;
    shape_grid_report(
        IdentityId::DimensionTheorem,
        format!("{}; all alpha |- m; formula vs rank(T_alpha) vs trace(T_alpha)", grid.describe()),
        grid,
        opts,
        |m, n, a, fault| {
            let formula = fault_int(dim_symmetry_class(a, n)?, fault);
            let rank = BigInt::from(rank_exact(&symmetrizer(a, n, &config)?));
            let trace = symmetrizer_scale(a) * fast_trace_symmetrizer_prime(a, n, &config)?;
            let formula_q = Scalar::from_integer(formula.clone());
            let mut params = shape_params(m, n, a);
            params.push(("formula", formula.to_string()));
            params.push(("rank", rank.to_string()));
            params.push(("trace", format_scalar(&trace)));
            if formula != rank {
                return Ok(Some(cx(params, None, formula.to_string(), rank.to_string())));
            }
            Ok(compare_scalars(params, &formula_q, &trace))
        },
    )
}

// Character identities ---------------------------------------------------------

#[derive(Debug, Clone)]
enum CharItem {
    Reciprocal(Partition, Composition),
    Branching(Partition, Permutation),
}

/// Distinct orderings of the parts of `b`.
fn distinct_orderings(b: &Partition) -> Vec<Composition> {
    let parts = b.parts();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for s in permutations(parts.len()) {
        let arranged: Vec<usize> = s.one_line().iter().map(|&k| parts[k - 1]).collect();
        if seen.insert(arranged.clone()) {
            out.push(Composition::new(arranged));
        }
    }
    out
}

/// Reciprocal identity and branching rule for all `α ⊢ m <= m_max`.
pub fn verify_character_identities(m_max: usize, opts: &VerifyOptions) -> Result<IdentityReport> {
    let domain = format!(
        "1 <= m <= {m_max}; all alpha |- m; reciprocal over beta |- m-1 (all orderings of beta for m <= {COMPOSITION_SWEEP_MAX}); branching over one tau per class of S_(m-1)"
    );
    if m_max > opts.config.max_char_degree {
        return Err(Error::LimitExceeded {
            what: "character degree",
            value: m_max,
            limit: opts.config.max_char_degree,
        });
    }
    let mut items = Vec::new();
    for m in 1..=m_max {
        let shapes = enumerate_partitions(m)?;
        let smaller = enumerate_partitions(m - 1)?;
        for a in &shapes {
            for b in &smaller {
                if m <= COMPOSITION_SWEEP_MAX {
                    items.extend(
                        distinct_orderings(b)
                            .into_iter()
                            .map(|c| CharItem::Reciprocal(a.clone(), c)),
                    );
                } else {
                    items.push(CharItem::Reciprocal(a.clone(), b.to_composition()));
                }
            }
            for b in &smaller {
                items.push(CharItem::Branching(a.clone(), class_representative(b)));
            }
        }
    }
    Ok(run_grid(IdentityId::CharacterIdentities, domain, None, opts, items, |item, fault| {
        let bump = if fault { 1 } else { 0 };
        Ok(match item {
            CharItem::Reciprocal(a, b) => {
                let lhs = reciprocal_lhs(a, b)? + bump;
                let rhs = reciprocal_rhs(a, b)?;
                (lhs != rhs).then(|| {
                    cx(
                        vec![("identity", "reciprocal".into()), ("alpha", a.to_string()), ("beta", b.to_string())],
                        None,
                        lhs.to_string(),
                        rhs.to_string(),
                    )
                })
            }
            CharItem::Branching(a, tau) => {
                let lhs = character_on_perm(a, &tau.extend(a.weight())?)? + bump;
                let rhs = branching_rhs(a, tau)?;
                (lhs != rhs).then(|| {
                    cx(
                        vec![("identity", "branching".into()), ("alpha", a.to_string()), ("tau", tau.to_string())],
                        None,
                        lhs.to_string(),
                        rhs.to_string(),
                    )
                })
            }
        })
    }))
}

// Coset decomposition ------------------------------------------------------------

/// `σ ↦ (τ, i)` with `σ = τ(i, m)` is a bijection `S_m → S_{m-1} × {1..m}`.
pub fn verify_coset_decomposition(m_max: usize, opts: &VerifyOptions) -> Result<IdentityReport> {
    if m_max > MAX_COSET_DEGREE {
        return Err(Error::LimitExceeded {
            what: "coset decomposition degree",
            value: m_max,
            limit: MAX_COSET_DEGREE,
        });
    }
    let domain = format!("1 <= m <= {m_max}; every sigma in S_m");
    let items: Vec<usize> = (1..=m_max).collect();
    Ok(run_grid(IdentityId::CosetDecomposition, domain, None, opts, items, |&m, fault| {
        let mut cells = HashSet::new();
        for sigma in permutations(m) {
            let (tau, i) = sigma.coset_decompose()?;
            let rebuilt = tau.extend(m)?.compose(&Permutation::transposition(m, i, m)?)?;
            if rebuilt != sigma {
                return Ok(Some(cx(
                    vec![("m", m.to_string()), ("tau", tau.to_string()), ("i", i.to_string())],
                    None,
                    rebuilt.to_string(),
                    sigma.to_string(),
                )));
            }
            cells.insert((tau, i));
        }
        let hit = cells.len() as u64 + if fault { 1 } else { 0 };
        let expected = factorial(m - 1) * m as u64;
        Ok((hit != expected || factorial(m) != expected).then(|| {
            cx(
                vec![("m", m.to_string()), ("quantity", "distinct cells hit".into())],
                None,
                hit.to_string(),
                expected.to_string(),
            )
        }))
    }))
}

// Suites ---------------------------------------------------------------------

/// Which grids the full suite runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuitePlan {
    pub linear: LinearGrid,
    pub tensor: TensorGrid,
    pub character_max: usize,
    pub coset_max: usize,
}

impl SuitePlan {
    /// The default grids; `extended` raises the tensor tier to `m = 5`.
    pub fn default_tier(extended: bool) -> Self {
        SuitePlan {
            linear: LinearGrid::default(),
            tensor: TensorGrid::default_tier(extended),
            character_max: 7,
            coset_max: MAX_COSET_DEGREE,
        }
    }

    /// A single `(m, n)`: the linear lemmas run at `(n^{m-1}, n)`.
    pub fn at_point(m: usize, n: usize) -> Self {
        let da = tensor_dim(m.saturating_sub(1), n).unwrap_or(usize::MAX);
        SuitePlan {
            linear: LinearGrid { shapes: vec![(da, n)] },
            tensor: TensorGrid::point(m, n),
            character_max: m,
            coset_max: m,
        }
    }
}

pub fn verify(id: IdentityId, plan: &SuitePlan, opts: &VerifyOptions) -> Result<IdentityReport> {
    match id {
        IdentityId::TraceOfPartialTrace => verify_trace_of_partial_trace(&plan.linear, opts),
        IdentityId::PartialTraceProduct => verify_partial_trace_product(&plan.linear, opts),
        IdentityId::PartialTraceGroupElement => verify_partial_trace_group_element(&plan.tensor, opts),
        IdentityId::MainTheorem => verify_main_theorem(&plan.tensor, opts),
        IdentityId::Corollary => verify_corollary(&plan.tensor, opts),
        IdentityId::DimensionTheorem => verify_dimension_theorem(&plan.tensor, opts),
        IdentityId::CharacterIdentities => verify_character_identities(plan.character_max, opts),
        IdentityId::CosetDecomposition => verify_coset_decomposition(plan.coset_max, opts),
    }
}

pub fn verify_all(plan: &SuitePlan, opts: &VerifyOptions) -> Result<Vec<IdentityReport>> {
    IdentityId::ALL.iter().map(|&id| verify(id, plan, opts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> VerifyOptions {
        VerifyOptions {
            samples: 20,
            ..VerifyOptions::default()
        }
    }

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn assert_fail_reproduces(report: &IdentityReport) {
        assert_eq!(report.status, Status::Fail, "{report:?}");
        let c = report.counterexample.as_ref().unwrap();
        assert_ne!(c.lhs, c.rhs);
    }

    #[test]
    fn ids_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(id.as_str().parse::<IdentityId>().unwrap(), id);
        }
        assert!("nosuch".parse::<IdentityId>().is_err());
    }

    #[test]
    fn linear_lemmas_pass_and_catch_faults() {
        let grid = LinearGrid { shapes: vec![(2, 2), (3, 2)] };
        assert!(verify_trace_of_partial_trace(&grid, &opts()).unwrap().passed());
        assert!(verify_partial_trace_product(&grid, &opts()).unwrap().passed());
        assert_fail_reproduces(&verify_trace_of_partial_trace(&grid, &opts().with_fault()).unwrap());
        assert_fail_reproduces(&verify_partial_trace_product(&grid, &opts().with_fault()).unwrap());
    }

    #[test]
    fn group_element_lemma() {
        for (m, n) in [(2, 2), (3, 2)] {
            let r = verify_partial_trace_group_element(&TensorGrid::point(m, n), &opts()).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        let r = verify_partial_trace_group_element(&TensorGrid::point(2, 2), &opts().with_fault()).unwrap();
        assert_fail_reproduces(&r);
    }

    #[test]
    fn main_theorem_small_instances() {
        let config = Config::default();
        for n in 1..=3 {
            let lhs = partial_trace(&symmetrizer_prime(&p(&[2]), n, &config).unwrap(), n, n).unwrap();
            assert_eq!(lhs, ExactOperator::identity(n).scale(&scalar(n as i64 + 1)));
        }
        let lhs = partial_trace(&symmetrizer_prime(&p(&[1, 1]), 2, &config).unwrap(), 2, 2).unwrap();
        assert_eq!(lhs, ExactOperator::identity(2));
        let r = verify_main_theorem(&TensorGrid::upto(3, 2), &opts()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_fail_reproduces(&verify_main_theorem(&TensorGrid::point(2, 2), &opts().with_fault()).unwrap());
    }

    #[test]
    fn corollary_small_instances() {
        let config = Config::default();
        assert_eq!(corollary_coefficient(&p(&[2]), 1, 2).unwrap(), Scalar::new(3.into(), 2.into()));
        let lhs = partial_trace(&symmetrizer(&p(&[1, 1]), 2, &config).unwrap(), 2, 2).unwrap();
        assert_eq!(lhs, ExactOperator::identity(2).scale(&Scalar::new(1.into(), 2.into())));
        assert_eq!(lhs.trace(), scalar(1));
        let r = verify_corollary(&TensorGrid::upto(3, 2), &opts()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_fail_reproduces(&verify_corollary(&TensorGrid::point(2, 2), &opts().with_fault()).unwrap());
    }

    #[test]
    fn dimension_theorem() {
        let r = verify_dimension_theorem(&TensorGrid::upto(3, 2), &opts()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_fail_reproduces(&verify_dimension_theorem(&TensorGrid::point(2, 2), &opts().with_fault()).unwrap());
    }

    #[test]
    fn character_and_coset() {
        for m in [1, 3] {
            assert!(verify_character_identities(m, &opts()).unwrap().passed());
            assert!(verify_coset_decomposition(m, &opts()).unwrap().passed());
        }
        assert_fail_reproduces(&verify_character_identities(3, &opts().with_fault()).unwrap());
        assert_fail_reproduces(&verify_coset_decomposition(1, &opts().with_fault()).unwrap());
        assert!(verify_character_identities(13, &opts()).is_err());
        assert!(verify_coset_decomposition(8, &opts()).is_err());
    }

    #[test]
    fn guards_are_errors() {
        let tight = VerifyOptions {
            config: Config::default().with_max_dim(8),
            ..opts()
        };
        assert!(verify_main_theorem(&TensorGrid::point(4, 2), &tight).is_err());
        assert!(verify_trace_of_partial_trace(&LinearGrid { shapes: vec![(3, 3)] }, &tight).is_err());
    }

    #[test]
    fn reports_are_deterministic() {
        let a = verify_all(&SuitePlan::at_point(3, 2), &opts()).unwrap();
        let b = verify_all(&SuitePlan::at_point(3, 2), &opts()).unwrap();
        assert_eq!(a.len(), 8);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(
                IdentityReport { elapsed_ms: 0, ..x.clone() },
                IdentityReport { elapsed_ms: 0, ..y.clone() }
            );
        }
        let json = serde_json::to_value(&a[0]).unwrap();
        assert_eq!(json["identity_id"], "trace-of-partial-trace");
        assert_eq!(json["status"], "pass");
        assert!(json.get("counterexample").is_none());
        assert_eq!(json["seed"], DEFAULT_SEED);
    }
}
