//! Classification tables as embedded data, plus the dimension formulas and
//! smallness/density bookkeeping that tie them to the root-system layer.
//!
//! The data file is line-oriented: one record per printed table row, fields
//! as `key=value` tokens. Rank-parameterized rows carry small expression
//! strings (`2*l^2-l-1-[p|l]`) that are evaluated when a row is expanded
//! over concrete ranks and characteristics.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use crate::rootsys::{RootSystem, TypeLabel};
use crate::verify::VerificationReport;
use crate::{Error, Result};

/// Default bound when expanding rank-parameterized rows in sweeps.
pub const DEFAULT_EXPAND_RANK: u32 = 12;

/// Environment variable the CLI consults for a data-path override.
pub const TABLES_ENV: &str = "GENSTAB_TABLES";

const EMBEDDED_TABLES: &str = include_str!("../data/tables.txt");

/// Primes used when sampling a characteristic condition.
const SAMPLE_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn err(msg: impl Into<String>) -> Error {
    Error::Catalog(msg.into())
}

/// The two non-degenerate form geometries.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Hash)]
pub enum FormType {
    Orthogonal,
    Symplectic,
}

impl FormType {
    pub fn parse(s: &str) -> Result<FormType> {
        match s {
            "orth" | "orthogonal" => Ok(FormType::Orthogonal),
            "sympl" | "symplectic" => Ok(FormType::Symplectic),
            _ => Err(err(format!("unknown form type {s:?}"))),
        }
    }
}

impl fmt::Display for FormType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormType::Orthogonal => "orthogonal",
            FormType::Symplectic => "symplectic",
        })
    }
}

/// Component marker for half-dimension totally singular spaces, where the
/// variety splits into two families (written k' and k'').
#[derive(Copy, Clone, PartialEq, Eq, Debug, Hash)]
pub enum Component {
    Whole,
    Prime,
    DoublePrime,
}

/// A concrete subspace dimension, optionally tagged with a component.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Hash)]
pub struct KValue {
    pub k: u32,
    pub component: Component,
}

impl KValue {
    pub fn plain(k: u32) -> KValue {
        KValue {
            k,
            component: Component::Whole,
        }
    }

    pub fn parse(s: &str) -> Result<KValue> {
        let (digits, component) = if let Some(d) = s.strip_suffix("''") {
            (d, Component::DoublePrime)
        } else if let Some(d) = s.strip_suffix('\'') {
            (d, Component::Prime)
        } else {
            (s, Component::Whole)
        };
        let k = digits
            .parse::<u32>()
            .map_err(|_| err(format!("bad k value {s:?}")))?;
        Ok(KValue { k, component })
    }
}

impl fmt::Display for KValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = match self.component {
            Component::Whole => "",
            Component::Prime => "'",
            Component::DoublePrime => "''",
        };
        write!(f, "{}{}", self.k, mark)
    }
}

/// The `k` column of a table row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KSpec {
    Any,
    AnyExceptLm1,
    Lm1,
    List(Vec<KValue>),
}

impl KSpec {
    pub fn parse(s: &str) -> Result<KSpec> {
        match s {
            "any" => Ok(KSpec::Any),
            "any!=l-1" => Ok(KSpec::AnyExceptLm1),
            "l-1" => Ok(KSpec::Lm1),
            _ => {
                let vals = s
                    .split(',')
                    .map(KValue::parse)
                    .collect::<Result<Vec<_>>>()?;
                if vals.is_empty() {
                    return Err(err(format!("empty k spec {s:?}")));
                }
                Ok(KSpec::List(vals))
            }
        }
    }

    /// Concrete k values for a module of dimension `n` at the given rank.
    pub fn values(&self, rank: u32, n: i64) -> Vec<KValue> {
        let max_k = (n / 2) as u32;
        match self {
            KSpec::Any => (1..=max_k).map(KValue::plain).collect(),
            KSpec::AnyExceptLm1 => (1..=max_k)
                .filter(|&k| k != rank - 1)
                .map(KValue::plain)
                .collect(),
            KSpec::Lm1 => vec![KValue::plain(rank - 1)],
            KSpec::List(vals) => vals.clone(),
        }
    }
}

/// The rank column: either an exact rank or a conjunction of conditions
/// on `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankSpec {
    source: String,
    kind: RankKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum RankKind {
    Exact(u32),
    Cond(Vec<RankAtom>),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum RankAtom {
    Ge(u32),
    ModEq(u32, u32),
    ModNe(u32, u32),
}

/// Smallest rank at which each series is defined.
fn series_min_rank(series: TypeLabel) -> u32 {
    match series {
        TypeLabel::A => 1,
        TypeLabel::B | TypeLabel::C | TypeLabel::G => 2,
        TypeLabel::D => 3,
        TypeLabel::F => 4,
        TypeLabel::E => 6,
    }
}

impl RankSpec {
    pub fn parse(s: &str) -> Result<RankSpec> {
        let kind = if let Ok(n) = s.parse::<u32>() {
            RankKind::Exact(n)
        } else if s == "any" {
            RankKind::Cond(Vec::new())
        } else {
            let atoms = s
                .split(',')
                .map(|atom| {
                    if let Some(rest) = atom.strip_prefix("l>=") {
                        let n = rest
                            .parse::<u32>()
                            .map_err(|_| err(format!("bad rank atom {atom:?}")))?;
                        Ok(RankAtom::Ge(n))
                    } else if let Some(rest) = atom.strip_prefix("l%") {
                        let (m, r, ne) = if let Some((m, r)) = rest.split_once("!=") {
                            (m, r, true)
                        } else if let Some((m, r)) = rest.split_once('=') {
                            (m, r, false)
                        } else {
                            return Err(err(format!("bad rank atom {atom:?}")));
                        };
                        let m = m
                            .parse::<u32>()
                            .map_err(|_| err(format!("bad modulus in {atom:?}")))?;
                        let r = r
                            .parse::<u32>()
                            .map_err(|_| err(format!("bad residue in {atom:?}")))?;
                        Ok(if ne {
                            RankAtom::ModNe(m, r)
                        } else {
                            RankAtom::ModEq(m, r)
                        })
                    } else {
                        Err(err(format!("bad rank atom {atom:?}")))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            RankKind::Cond(atoms)
        };
        Ok(RankSpec {
            source: s.to_owned(),
            kind,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn admits(&self, l: u32) -> bool {
        match &self.kind {
            RankKind::Exact(n) => l == *n,
            RankKind::Cond(atoms) => atoms.iter().all(|a| match *a {
                RankAtom::Ge(n) => l >= n,
                RankAtom::ModEq(m, r) => l % m == r,
                RankAtom::ModNe(m, r) => l % m != r,
            }),
        }
    }

    /// Concrete ranks up to `bound` (exact ranks are kept even above it).
    pub fn expand(&self, series: TypeLabel, bound: u32) -> Vec<u32> {
        match &self.kind {
            RankKind::Exact(n) => vec![*n],
            RankKind::Cond(_) => (series_min_rank(series)..=bound)
                .filter(|&l| self.admits(l))
                .collect(),
        }
    }
}

/// The characteristic column: a conjunction of conditions on `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PCondition {
    source: String,
    atoms: Vec<PAtom>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum PAtom {
    Any,
    /// Any prime; the row involves a Frobenius twist, so "p finite".
    Finite,
    Eq(u64),
    Ne(u64),
    Gt(u64),
    Divides {
        plus_one: bool,
    },
    NotDivides {
        plus_one: bool,
    },
}

impl PCondition {
    pub fn parse(s: &str) -> Result<PCondition> {
        let atoms = s
            .split(',')
            .map(|atom| match atom {
                "any" => Ok(PAtom::Any),
                "<inf" => Ok(PAtom::Finite),
                "p|l" => Ok(PAtom::Divides { plus_one: false }),
                "p|l+1" => Ok(PAtom::Divides { plus_one: true }),
                "p!|l" => Ok(PAtom::NotDivides { plus_one: false }),
                "p!|l+1" => Ok(PAtom::NotDivides { plus_one: true }),
                _ => {
                    if let Some(rest) = atom.strip_prefix("!=") {
                        rest.parse().map(PAtom::Ne)
                    } else if let Some(rest) = atom.strip_prefix('=') {
                        rest.parse().map(PAtom::Eq)
                    } else if let Some(rest) = atom.strip_prefix('>') {
                        rest.parse().map(PAtom::Gt)
                    } else {
                        return Err(err(format!("bad characteristic atom {atom:?}")));
                    }
                    .map_err(|_| err(format!("bad characteristic atom {atom:?}")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PCondition {
            source: s.to_owned(),
            atoms,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// True when the row involves a Frobenius-twisted weight.
    pub fn is_twist(&self) -> bool {
        self.atoms.contains(&PAtom::Finite)
    }

    pub fn admits(&self, p: u64, rank: u32) -> bool {
        let l = rank as u64;
        self.atoms.iter().all(|a| match *a {
            PAtom::Any | PAtom::Finite => true,
            PAtom::Eq(q) => p == q,
            PAtom::Ne(q) => p != q,
            PAtom::Gt(q) => p > q,
            PAtom::Divides { plus_one } => (l + u64::from(plus_one)) % p == 0,
            PAtom::NotDivides { plus_one } => (l + u64::from(plus_one)) % p != 0,
        })
    }

    /// Small sample primes satisfying the condition at the given rank.
    pub fn sample_primes(&self, rank: u32) -> Vec<u64> {
        SAMPLE_PRIMES
            .iter()
            .copied()
            .filter(|&p| self.admits(p, rank))
            .collect()
    }
}

/// A highest weight as a sum of fundamental-weight terms; `wl` denotes the
/// last fundamental weight. A `p^i*...` chunk marks a Frobenius-twist
/// tensor factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSpec {
    source: String,
    terms: Vec<(i64, WeightIndex)>,
    twist_terms: Vec<(i64, WeightIndex)>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum WeightIndex {
    At(u32),
    Last,
}

fn parse_weight_term(term: &str) -> Result<(i64, WeightIndex)> {
    let (coeff, w) = match term.split_once('*') {
        Some((c, w)) => (
            c.parse::<i64>()
                .map_err(|_| err(format!("bad weight coefficient in {term:?}")))?,
            w,
        ),
        None => (1, term),
    };
    let idx = match w.strip_prefix('w') {
        Some("l") => WeightIndex::Last,
        Some(d) => WeightIndex::At(
            d.parse::<u32>()
                .map_err(|_| err(format!("bad weight index in {term:?}")))?,
        ),
        None => return Err(err(format!("bad weight term {term:?}"))),
    };
    if coeff <= 0 {
        return Err(err(format!("weight coefficients must be positive: {term:?}")));
    }
    Ok((coeff, idx))
}

impl WeightSpec {
    pub fn parse(s: &str) -> Result<WeightSpec> {
        let mut terms = Vec::new();
        let mut twist_terms = Vec::new();
        for chunk in s.split('+') {
            if let Some(rest) = chunk.strip_prefix("p^i*") {
                twist_terms.push(parse_weight_term(rest)?);
            } else {
                terms.push(parse_weight_term(chunk)?);
            }
        }
        if terms.is_empty() {
            return Err(err(format!("empty weight {s:?}")));
        }
        Ok(WeightSpec {
            source: s.to_owned(),
            terms,
            twist_terms,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn is_twisted(&self) -> bool {
        !self.twist_terms.is_empty()
    }

    /// Fundamental-weight coefficients at a concrete rank. A twist chunk
    /// contributes `p` times its weight (twist exponent one), which is all
    /// the central-character parity computations need.
    pub fn coeffs(&self, rank: u32, p: Option<u64>) -> Result<Vec<i64>> {
        let mut out = vec![0i64; rank as usize];
        self.add_terms(&mut out, &self.terms, 1, rank)?;
        if !self.twist_terms.is_empty() {
            let p = p.ok_or_else(|| {
                err(format!(
                    "weight {} needs a characteristic for its twist",
                    self.source
                ))
            })?;
            self.add_terms(&mut out, &self.twist_terms, p as i64, rank)?;
        }
        Ok(out)
    }

    fn add_terms(
        &self,
        coeffs: &mut [i64],
        terms: &[(i64, WeightIndex)],
        scale: i64,
        rank: u32,
    ) -> Result<()> {
        for &(c, idx) in terms {
            let i = match idx {
                WeightIndex::At(i) => i as usize,
                WeightIndex::Last => rank as usize,
            };
            if i < 1 || i > rank as usize {
                return Err(err(format!(
                    "weight {} has no index {} at rank {}",
                    self.source, i, rank
                )));
            }
            coeffs[i - 1] += scale * c;
        }
        Ok(())
    }
}

/// A module dimension as a signed sum of rank and characteristic terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimExpr {
    source: String,
    terms: Vec<(i64, DimAtom)>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum DimAtom {
    Unit,
    Rank,
    RankSquared,
    PDividesRank,
    PDividesRankPlusOne,
    PEquals(u64),
}

impl DimExpr {
    pub fn parse(s: &str) -> Result<DimExpr> {
        // Split into signed chunks at top level; '+'/'-' inside indicator
        // brackets belong to the indicator.
        let mut chunks: Vec<(i64, String)> = Vec::new();
        let mut current = String::new();
        let mut sign = 1i64;
        let mut depth = 0i32;
        for c in s.chars() {
            match c {
                '[' => {
                    depth += 1;
                    current.push(c);
                }
                ']' => {
                    depth -= 1;
                    current.push(c);
                }
                '+' | '-' if depth == 0 => {
                    if !current.is_empty() {
                        chunks.push((sign, std::mem::take(&mut current)));
                    } else if sign != 1 || c == '+' {
                        return Err(err(format!("misplaced sign in dimension {s:?}")));
                    }
                    sign = if c == '+' { 1 } else { -1 };
                }
                _ => current.push(c),
            }
        }
        if depth != 0 || current.is_empty() {
            return Err(err(format!("malformed dimension expression {s:?}")));
        }
        chunks.push((sign, current));

        let mut terms = Vec::new();
        for (sign, chunk) in chunks {
            let atom_err = || err(format!("bad dimension term {chunk:?} in {s:?}"));
            let (coeff, var) = match chunk.split_once('*') {
                Some((c, v)) => (c.parse::<i64>().map_err(|_| atom_err())?, v.to_owned()),
                None => (1, chunk.clone()),
            };
            let (coeff, atom) = match var.as_str() {
                "l" => (coeff, DimAtom::Rank),
                "l^2" => (coeff, DimAtom::RankSquared),
                "[p|l]" => (coeff, DimAtom::PDividesRank),
                "[p|l+1]" => (coeff, DimAtom::PDividesRankPlusOne),
                _ => {
                    if let Some(q) = var.strip_prefix("[p=").and_then(|r| r.strip_suffix(']')) {
                        (coeff, DimAtom::PEquals(q.parse().map_err(|_| atom_err())?))
                    } else {
                        (coeff * var.parse::<i64>().map_err(|_| atom_err())?, DimAtom::Unit)
                    }
                }
            };
            terms.push((sign * coeff, atom));
        }
        Ok(DimExpr {
            source: s.to_owned(),
            terms,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn needs_p(&self) -> bool {
        self.terms.iter().any(|(_, a)| {
            matches!(
                a,
                DimAtom::PDividesRank | DimAtom::PDividesRankPlusOne | DimAtom::PEquals(_)
            )
        })
    }

    pub fn eval(&self, rank: u32, p: Option<u64>) -> Result<i64> {
        let l = rank as i64;
        let need_p = || {
            p.ok_or_else(|| {
                err(format!(
                    "dimension {} needs a characteristic to evaluate",
                    self.source
                ))
            })
        };
        let mut total = 0i64;
        for &(c, atom) in &self.terms {
            total += c * match atom {
                DimAtom::Unit => 1,
                DimAtom::Rank => l,
                DimAtom::RankSquared => l * l,
                DimAtom::PDividesRank => i64::from(rank as u64 % need_p()? == 0),
                DimAtom::PDividesRankPlusOne => i64::from((rank as u64 + 1) % need_p()? == 0),
                DimAtom::PEquals(q) => i64::from(need_p()? == q),
            };
        }
        Ok(total)
    }
}

/// Closed-form dimension of the simple group of the given type.
pub fn simple_group_dim(series: TypeLabel, rank: u32) -> Result<i64> {
    let l = rank as i64;
    let bad = || err(format!("invalid simple type {series}{rank}"));
    Ok(match series {
        TypeLabel::A if rank >= 1 => l * (l + 2),
        TypeLabel::B | TypeLabel::C if rank >= 2 => 2 * l * l + l,
        TypeLabel::D if rank >= 3 => 2 * l * l - l,
        TypeLabel::G if rank == 2 => 14,
        TypeLabel::F if rank == 4 => 52,
        TypeLabel::E if rank == 6 => 78,
        TypeLabel::E if rank == 7 => 133,
        TypeLabel::E if rank == 8 => 248,
        _ => return Err(bad()),
    })
}

fn simple_rank_ok(series: TypeLabel, rank: u32) -> bool {
    simple_group_dim(series, rank).is_ok()
}

/// Dimension of the variety of totally singular k-spaces of an
/// n-dimensional formed space. Component markers (k', k'') are accepted for
/// half-dimension orthogonal spaces, where each of the two families has the
/// dimension the formula gives. For the D-type natural module, totally
/// singular (l-1)-spaces form a single orbit under the parabolic deleting
/// both fork nodes; passing `d_special = Some(l)` computes the dimension by
/// that route instead of the closed formula.
pub fn grass_dim(n: i64, k: KValue, form: FormType, d_special: Option<u32>) -> Result<i64> {
    let kk = i64::from(k.k);
    if kk < 1 {
        return Err(err("k must be at least 1".to_owned()));
    }
    if 2 * kk > n {
        return Err(err(format!(
            "no totally singular {kk}-spaces in dimension {n}"
        )));
    }
    if form == FormType::Symplectic && n % 2 != 0 {
        return Err(err(format!(
            "symplectic spaces have even dimension, got {n}"
        )));
    }
    if k.component != Component::Whole && !(form == FormType::Orthogonal && 2 * kk == n) {
        return Err(err(format!(
            "component marker on k={k} applies only to half-dimension orthogonal spaces"
        )));
    }
    if let Some(l) = d_special {
        let l_us = l as usize;
        if form != FormType::Orthogonal || n != 2 * i64::from(l) || kk != i64::from(l) - 1 {
            return Err(err(format!(
                "D-type special route needs an orthogonal space of dimension 2*{l} with k={}",
                l - 1
            )));
        }
        let rs = RootSystem::new(TypeLabel::D, l_us)?;
        return Ok((rs.group_dim() - rs.parabolic_dim(&[l_us - 2, l_us - 1])) as i64);
    }
    Ok(match form {
        FormType::Symplectic => kk * n + (kk - 3 * kk * kk) / 2,
        FormType::Orthogonal => kk * n - (kk + 3 * kk * kk) / 2,
    })
}

/// Smallness test: the group dimension is at least the dimension of the
/// variety of totally singular k-spaces.
pub fn is_small_quadruple(
    series: TypeLabel,
    rank: u32,
    dim_v: i64,
    form: FormType,
    k: KValue,
) -> Result<bool> {
    let g = simple_group_dim(series, rank)?;
    let s = grass_dim(dim_v, k, form, None)?;
    Ok(g >= s)
}

/// Self-dual form classification by the parity of the pairing of the
/// highest weight with the sum of positive coroots. Characteristic 2 is
/// refused: there the table data is authoritative.
pub fn form_type(series: TypeLabel, rank: u32, weight: &[i64], p: u64) -> Result<FormType> {
    if p == 2 {
        return Err(err(
            "characteristic 2 form types come from the table data, not the pairing parity"
                .to_owned(),
        ));
    }
    let rs = RootSystem::new(series, rank as usize)?;
    Ok(parity_form(&rs, weight))
}

fn parity_form(rs: &RootSystem, weight: &[i64]) -> FormType {
    if rs.two_rho_coroot_pairing(weight) % 2 == 0 {
        FormType::Orthogonal
    } else {
        FormType::Symplectic
    }
}

/// Which nodes a parabolic stabilizer string deletes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParabolicNodes {
    /// A fixed node, as in `P_1`.
    Node(u32),
    /// The node matching the row's k value, as in `P_k`.
    RowK,
    /// Both fork nodes of a D-type diagram, as in `P_{l-1,l}`.
    LastTwo,
}

/// A simple factor of a composition series, possibly raised to a power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleFactor {
    pub series: TypeLabel,
    pub rank: u32,
    pub power: Count,
}

/// A count that may depend on the ambient rank (`A_1^l`, `T_l`).
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Count {
    Fixed(i64),
    Rank,
}

/// Parsed composition-series data for a stabilizer string.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompositionSeries {
    pub unipotent: i64,
    pub simples: Vec<SimpleFactor>,
    pub torus: i64,
    /// Number of rank-sized torus tokens (`T_l`).
    pub torus_rank_units: i64,
    pub finite: Vec<String>,
    pub semi_generic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum StabKind {
    Parabolic(ParabolicNodes),
    Composition(CompositionSeries),
}

/// A stabilizer column entry: either a parabolic token or a composition
/// series whose dimension is the sum of its unipotent, simple, and torus
/// parts (finite pieces contribute nothing).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerStructure {
    source: String,
    kind: StabKind,
}

impl StabilizerStructure {
    pub fn parse(s: &str) -> Result<StabilizerStructure> {
        let kind = if let Some(rest) = s.strip_prefix("P_") {
            let nodes = match rest {
                "k" => ParabolicNodes::RowK,
                "{l-1,l}" => ParabolicNodes::LastTwo,
                _ => ParabolicNodes::Node(
                    rest.parse::<u32>()
                        .map_err(|_| err(format!("bad parabolic token {s:?}")))?,
                ),
            };
            StabKind::Parabolic(nodes)
        } else {
            StabKind::Composition(parse_composition(s)?)
        };
        Ok(StabilizerStructure {
            source: s.to_owned(),
            kind,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn parabolic(&self) -> Option<&ParabolicNodes> {
        match &self.kind {
            StabKind::Parabolic(nodes) => Some(nodes),
            StabKind::Composition(_) => None,
        }
    }

    pub fn composition(&self) -> Option<&CompositionSeries> {
        match &self.kind {
            StabKind::Composition(c) => Some(c),
            StabKind::Parabolic(_) => None,
        }
    }

    pub fn is_semi_generic(&self) -> bool {
        matches!(&self.kind, StabKind::Composition(c) if c.semi_generic)
    }

    /// Dimension of the stabilizer. `rank` is required when the string has
    /// rank-sized parts; parabolic tokens need ambient context and are
    /// rejected here.
    pub fn dimension(&self, rank: Option<u32>) -> Result<i64> {
        let comp = match &self.kind {
            StabKind::Parabolic(_) => {
                return Err(err(format!(
                    "parabolic stabilizer {} needs its ambient group for a dimension",
                    self.source
                )))
            }
            StabKind::Composition(c) => c,
        };
        let need_rank = || {
            rank.map(i64::from).ok_or_else(|| {
                err(format!(
                    "stabilizer {} needs an ambient rank for its dimension",
                    self.source
                ))
            })
        };
        let mut total = comp.unipotent + comp.torus;
        if comp.torus_rank_units != 0 {
            total += comp.torus_rank_units * need_rank()?;
        }
        for f in &comp.simples {
            let power = match f.power {
                Count::Fixed(e) => e,
                Count::Rank => need_rank()?,
            };
            total += power * simple_group_dim(f.series, f.rank)?;
        }
        Ok(total)
    }
}

fn series_letter(c: char) -> Option<TypeLabel> {
    Some(match c {
        'A' => TypeLabel::A,
        'B' => TypeLabel::B,
        'C' => TypeLabel::C,
        'D' => TypeLabel::D,
        'E' => TypeLabel::E,
        'F' => TypeLabel::F,
        'G' => TypeLabel::G,
        _ => return None,
    })
}

fn parse_composition(s: &str) -> Result<CompositionSeries> {
    let mut comp = CompositionSeries::default();
    let mut body = s;
    if let Some(stripped) = body.strip_suffix("(*)") {
        comp.semi_generic = true;
        body = stripped;
    }
    let chars: Vec<char> = body.chars().collect();
    let mut i = 0usize;
    let mut tail = String::new();
    let flush_tail = |tail: &mut String, finite: &mut Vec<String>| {
        let token: String = tail
            .trim_matches(|c: char| matches!(c, '.' | '(' | ')'))
            .to_owned();
        if !token.is_empty() {
            finite.push(token);
        }
        tail.clear();
    };

    let read_number = |chars: &[char], mut j: usize| -> (Option<i64>, usize) {
        let start = j;
        while j < chars.len() && chars[j].is_ascii_digit() {
            j += 1;
        }
        match chars[start..j].iter().collect::<String>().parse::<i64>() {
            Ok(n) => (Some(n), j),
            Err(_) => (None, start),
        }
    };

    while i < chars.len() {
        let c = chars[i];
        let sub = (i + 1 < chars.len() && chars[i + 1] == '_').then_some(i + 2);
        // U_a: a unipotent part of the stated dimension.
        if c == 'U' {
            if let Some(j) = sub {
                if let (Some(n), j2) = read_number(&chars, j) {
                    flush_tail(&mut tail, &mut comp.finite);
                    comp.unipotent += n;
                    i = j2;
                    continue;
                }
            }
        }
        // T_b or T_l: a torus of fixed or rank-sized dimension.
        if c == 'T' {
            if let Some(j) = sub {
                if j < chars.len() && chars[j] == 'l' {
                    flush_tail(&mut tail, &mut comp.finite);
                    comp.torus_rank_units += 1;
                    i = j + 1;
                    continue;
                }
                if let (Some(n), j2) = read_number(&chars, j) {
                    flush_tail(&mut tail, &mut comp.finite);
                    comp.torus += n;
                    i = j2;
                    continue;
                }
            }
        }
        // X_r with an optional ^e power: a simple factor when X_r names a
        // simple type; otherwise a finite token (F_5, F_7).
        if let Some(series) = series_letter(c) {
            if let Some(j) = sub {
                if let (Some(r), mut j2) = read_number(&chars, j) {
                    let r = r as u32;
                    let mut power = Count::Fixed(1);
                    if j2 < chars.len() && chars[j2] == '^' {
                        if j2 + 1 < chars.len() && chars[j2 + 1] == 'l' {
                            power = Count::Rank;
                            j2 += 2;
                        } else if let (Some(e), j3) = read_number(&chars, j2 + 1) {
                            power = Count::Fixed(e);
                            j2 = j3;
                        }
                    }
                    if simple_rank_ok(series, r) {
                        flush_tail(&mut tail, &mut comp.finite);
                        comp.simples.push(SimpleFactor {
                            series,
                            rank: r,
                            power,
                        });
                    } else {
                        flush_tail(&mut tail, &mut comp.finite);
                        comp.finite.push(chars[i..j2].iter().collect());
                    }
                    i = j2;
                    continue;
                }
            }
        }
        tail.push(c);
        i += 1;
    }
    flush_tail(&mut tail, &mut comp.finite);
    Ok(comp)
}

/// Parses a composition-series string and returns its dimension; strings
/// with rank-sized parts are rejected (no ambient rank available here).
pub fn stabilizer_dim(s: &str) -> Result<i64> {
    StabilizerStructure::parse(s)?.dimension(None)
}

/// One self-dual module row from the data tables.
#[derive(Clone, Debug)]
pub struct ModuleRecord {
    pub series: TypeLabel,
    pub rank: RankSpec,
    pub weight: WeightSpec,
    pub p: PCondition,
    pub dim: DimExpr,
    pub form: FormType,
    pub k: KSpec,
    pub table: u8,
}

impl ModuleRecord {
    pub fn dim_at(&self, rank: u32, p: Option<u64>) -> Result<i64> {
        self.dim.eval(rank, p)
    }

    /// Short human-readable handle used in report entries.
    pub fn label(&self) -> String {
        format!(
            "{}[{}] {} p={}",
            self.series,
            self.rank.source(),
            self.weight.source(),
            self.p.source()
        )
    }
}

/// One classified row: a module, its k spec, the stabilizer, and whether
/// the orbit is dense.
#[derive(Clone, Debug)]
pub struct QuadrupleRow {
    pub module: ModuleRecord,
    pub stab: StabilizerStructure,
    pub dense: bool,
}

/// The loaded classification data.
#[derive(Clone, Debug)]
pub struct Catalog {
    rows: Vec<QuadrupleRow>,
    modules: Vec<ModuleRecord>,
}

fn parse_fields<'a>(line: &'a str, allowed: &[&str]) -> Result<HashMap<&'a str, &'a str>> {
    let mut map = HashMap::new();
    for token in line.split_whitespace() {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| err(format!("expected key=value, got {token:?}")))?;
        if !allowed.contains(&key) {
            return Err(err(format!("unknown field {key:?} in {line:?}")));
        }
        if map.insert(key, value).is_some() {
            return Err(err(format!("duplicate field {key:?} in {line:?}")));
        }
    }
    Ok(map)
}

fn parse_module_fields(map: &HashMap<&str, &str>, line: &str) -> Result<ModuleRecord> {
    let get = |key: &str| -> Result<&str> {
        map.get(key)
            .copied()
            .ok_or_else(|| err(format!("missing field {key:?} in {line:?}")))
    };
    let series_str = get("series")?;
    let series = series_letter(series_str.chars().next().unwrap_or(' '))
        .filter(|_| series_str.len() == 1)
        .ok_or_else(|| err(format!("bad series {series_str:?}")))?;
    let table = get("table")?
        .parse::<u8>()
        .map_err(|_| err(format!("bad table id in {line:?}")))?;
    Ok(ModuleRecord {
        series,
        rank: RankSpec::parse(get("rank")?)?,
        weight: WeightSpec::parse(get("weight")?)?,
        p: PCondition::parse(get("p")?)?,
        dim: DimExpr::parse(get("dim")?)?,
        form: FormType::parse(get("form")?)?,
        k: KSpec::parse(get("k")?)?,
        table,
    })
}

impl Catalog {
    pub fn parse(text: &str) -> Result<Catalog> {
        let mut rows = Vec::new();
        let mut modules = Vec::new();
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (kind, rest) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| err(format!("bare record kind {line:?}")))?;
            match kind {
                "case" => {
                    let map = parse_fields(
                        rest,
                        &[
                            "series", "rank", "weight", "p", "k", "dim", "form", "stab", "dense",
                            "table",
                        ],
                    )?;
                    let module = parse_module_fields(&map, line)?;
                    if module.table != 1 {
                        return Err(err(format!("case rows belong to table 1: {line:?}")));
                    }
                    let stab_str = map
                        .get("stab")
                        .ok_or_else(|| err(format!("missing field \"stab\" in {line:?}")))?;
                    let stab = StabilizerStructure::parse(stab_str)?;
                    let dense = match map.get("dense") {
                        Some(&"yes") => true,
                        Some(&"no") => false,
                        Some(other) => return Err(err(format!("bad dense flag {other:?}"))),
                        None => return Err(err(format!("missing field \"dense\" in {line:?}"))),
                    };
                    rows.push(QuadrupleRow {
                        module,
                        stab,
                        dense,
                    });
                }
                "module" => {
                    let map = parse_fields(
                        rest,
                        &["series", "rank", "weight", "p", "k", "dim", "form", "table"],
                    )?;
                    let module = parse_module_fields(&map, line)?;
                    if !(2..=4).contains(&module.table) {
                        return Err(err(format!("module rows belong to tables 2-4: {line:?}")));
                    }
                    modules.push(module);
                }
                _ => return Err(err(format!("unknown record kind {kind:?}"))),
            }
        }
        Ok(Catalog { rows, modules })
    }

    /// The data shipped with the library.
    pub fn load_default() -> Result<Catalog> {
        Catalog::parse(EMBEDDED_TABLES)
    }

    pub fn load_path(path: &Path) -> Result<Catalog> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| err(format!("reading {}: {e}", path.display())))?;
        Catalog::parse(&text)
    }

    /// Honors the data-path override environment variable, falling back to
    /// the embedded tables.
    pub fn load_env_or_default() -> Result<Catalog> {
        match std::env::var_os(TABLES_ENV) {
            Some(path) => Catalog::load_path(Path::new(&path)),
            None => Catalog::load_default(),
        }
    }

    pub fn rows(&self) -> &[QuadrupleRow] {
        &self.rows
    }

    pub fn modules(&self) -> &[ModuleRecord] {
        &self.modules
    }

    pub fn modules_in_table(&self, table: u8) -> impl Iterator<Item = &ModuleRecord> {
        self.modules.iter().filter(move |m| m.table == table)
    }

    /// Density and dimension bookkeeping for every classified row: the
    /// stabilizer dimension can never be smaller than group dimension minus
    /// variety dimension, with equality exactly on the dense rows;
    /// parabolic rows must match the root-system parabolic dimension; and
    /// away from characteristic 2 the form column must match the pairing
    /// parity. One report entry per row.
    pub fn table1_consistency(&self, max_rank: u32) -> Result<VerificationReport> {
        let mut report = VerificationReport::new("TABLE1");
        let mut cache: HashMap<(TypeLabel, u32), RootSystem> = HashMap::new();
        for (idx, row) in self.rows.iter().enumerate() {
            let mut instances = 0usize;
            let mut violation: Option<String> = None;
            let note = |v: String, slot: &mut Option<String>| {
                if slot.is_none() {
                    *slot = Some(v);
                }
            };
            'row: for rank in row.module.rank.expand(row.module.series, max_rank) {
                let g = simple_group_dim(row.module.series, rank)?;
                for p in row.module.p.sample_primes(rank) {
                    let dim_v = row.module.dim_at(rank, Some(p))?;
                    if p != 2 {
                        let rs = cached_rs(&mut cache, row.module.series, rank)?;
                        let coeffs = row.module.weight.coeffs(rank, Some(p))?;
                        let ft = parity_form(rs, &coeffs);
                        if ft != row.module.form {
                            note(
                                format!("l={rank} p={p}: pairing parity gives {ft}"),
                                &mut violation,
                            );
                            break 'row;
                        }
                    }
                    for k in row.module.k.values(rank, dim_v) {
                        instances += 1;
                        let d_special = (row.module.series == TypeLabel::D
                            && row.module.k == KSpec::Lm1)
                            .then_some(rank);
                        let s = grass_dim(dim_v, k, row.module.form, d_special)?;
                        match &row.stab.kind {
                            StabKind::Parabolic(nodes) => {
                                let omitted: Vec<usize> = match nodes {
                                    ParabolicNodes::Node(n) => vec![*n as usize - 1],
                                    ParabolicNodes::RowK => vec![k.k as usize - 1],
                                    ParabolicNodes::LastTwo => {
                                        vec![rank as usize - 2, rank as usize - 1]
                                    }
                                };
                                let rs = cached_rs(&mut cache, row.module.series, rank)?;
                                let pd = rs.parabolic_dim(&omitted) as i64;
                                if g - pd != s {
                                    note(
                                        format!(
                                            "l={rank} p={p} k={k}: parabolic gives {}, variety has {s}",
                                            g - pd
                                        ),
                                        &mut violation,
                                    );
                                    break 'row;
                                }
                                if !row.dense {
                                    note(
                                        format!("l={rank} k={k}: transitive parabolic row marked non-dense"),
                                        &mut violation,
                                    );
                                    break 'row;
                                }
                            }
                            StabKind::Composition(_) => {
                                let sd = row.stab.dimension(Some(rank))?;
                                if sd < g - s {
                                    note(
                                        format!(
                                            "l={rank} p={p} k={k}: stabilizer dim {sd} below bound {}",
                                            g - s
                                        ),
                                        &mut violation,
                                    );
                                    break 'row;
                                }
                                let dense = sd == g - s;
                                if dense != row.dense {
                                    note(
                                        format!(
                                            "l={rank} p={p} k={k}: stabilizer dim {sd}, bound {}, dense flag wrong",
                                            g - s
                                        ),
                                        &mut violation,
                                    );
                                    break 'row;
                                }
                            }
                        }
                    }
                }
            }
            let computed = match &violation {
                Some(v) => v.clone(),
                None => format!("consistent ({instances} instances)"),
            };
            report.record_flag(
                &format!(
                    "row{:02} {} k={} stab={}",
                    idx + 1,
                    row.module.label(),
                    kspec_text(&row.module.k),
                    row.stab.source()
                ),
                "consistent",
                computed,
                violation.is_none(),
            );
        }
        Ok(report)
    }

    /// Smallness of every candidate module row for its listed k values,
    /// plus the form-parity agreement away from characteristic 2. One
    /// report entry per record.
    pub fn candidate_consistency(&self, max_rank: u32) -> Result<VerificationReport> {
        let mut report = VerificationReport::new("CANDIDATES");
        let mut cache: HashMap<(TypeLabel, u32), RootSystem> = HashMap::new();
        for (idx, m) in self.modules.iter().enumerate() {
            let mut instances = 0usize;
            let mut violation: Option<String> = None;
            'rec: for rank in m.rank.expand(m.series, max_rank) {
                for p in m.p.sample_primes(rank) {
                    let dim_v = m.dim_at(rank, Some(p))?;
                    if p != 2 {
                        let rs = cached_rs(&mut cache, m.series, rank)?;
                        let coeffs = m.weight.coeffs(rank, Some(p))?;
                        let ft = parity_form(rs, &coeffs);
                        if ft != m.form {
                            violation =
                                Some(format!("l={rank} p={p}: pairing parity gives {ft}"));
                            break 'rec;
                        }
                    }
                    for k in m.k.values(rank, dim_v) {
                        instances += 1;
                        if !is_small_quadruple(m.series, rank, dim_v, m.form, k)? {
                            violation = Some(format!("l={rank} p={p} k={k}: not small"));
                            break 'rec;
                        }
                    }
                }
            }
            let computed = match &violation {
                Some(v) => v.clone(),
                None => format!("consistent ({instances} instances)"),
            };
            report.record_flag(
                &format!("table{} record{:02} {}", m.table, idx + 1, m.label()),
                "consistent",
                computed,
                violation.is_none(),
            );
        }
        Ok(report)
    }
}

fn kspec_text(k: &KSpec) -> String {
    match k {
        KSpec::Any => "any".to_owned(),
        KSpec::AnyExceptLm1 => "any!=l-1".to_owned(),
        KSpec::Lm1 => "l-1".to_owned(),
        KSpec::List(vals) => vals
            .iter()
            .map(KValue::to_string)
            .collect::<Vec<_>>()
            .join(","),
    }
}

fn cached_rs<'a>(
    cache: &'a mut HashMap<(TypeLabel, u32), RootSystem>,
    series: TypeLabel,
    rank: u32,
) -> Result<&'a RootSystem> {
    use std::collections::hash_map::Entry;
    Ok(match cache.entry((series, rank)) {
        Entry::Occupied(e) => e.into_mut(),
        Entry::Vacant(e) => e.insert(RootSystem::new(series, rank as usize)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grass_dim_known_values() {
        let orth = FormType::Orthogonal;
        let sympl = FormType::Symplectic;
        assert_eq!(grass_dim(14, KValue::parse("7'").unwrap(), orth, None).unwrap(), 21);
        assert_eq!(grass_dim(7, KValue::plain(2), orth, None).unwrap(), 7);
        assert_eq!(grass_dim(16, KValue::plain(3), orth, None).unwrap(), 33);
        assert_eq!(grass_dim(2, KValue::plain(1), sympl, None).unwrap(), 1);
        assert_eq!(grass_dim(16, KValue::parse("8''").unwrap(), orth, None).unwrap(), 28);
        assert_eq!(grass_dim(16, KValue::plain(7), orth, None).unwrap(), 35);
        assert_eq!(grass_dim(10, KValue::parse("5'").unwrap(), orth, None).unwrap(), 10);
        assert_eq!(grass_dim(20, KValue::plain(2), sympl, None).unwrap(), 35);
    }

    #[test]
    fn grass_dim_rejects_bad_input() {
        let orth = FormType::Orthogonal;
        assert!(grass_dim(8, KValue::plain(0), orth, None).is_err());
        assert!(grass_dim(8, KValue::plain(5), orth, None).is_err());
        assert!(grass_dim(7, KValue::plain(1), FormType::Symplectic, None).is_err());
        assert!(grass_dim(14, KValue::parse("6'").unwrap(), orth, None).is_err());
        assert!(grass_dim(14, KValue::parse("7'").unwrap(), FormType::Symplectic, None).is_err());
        assert!(grass_dim(8, KValue::plain(3), orth, Some(5)).is_err());
    }

    #[test]
    fn d_special_route_matches_formula() {
        for l in 4u32..=12 {
            let n = 2 * i64::from(l);
            let k = KValue::plain(l - 1);
            let special = grass_dim(n, k, FormType::Orthogonal, Some(l)).unwrap();
            let formula = grass_dim(n, k, FormType::Orthogonal, None).unwrap();
            assert_eq!(special, formula, "D{l}");
        }
    }

    #[test]
    fn grass_dim_matches_parabolic_dimensions() {
        // Cross-validates the closed formulas against root-system data for
        // every classical ambient of module dimension at most 32.
        for l in 2usize..=15 {
            let rs = RootSystem::new(TypeLabel::B, l).unwrap();
            let n = 2 * l as i64 + 1;
            for k in 1..=l {
                let s = grass_dim(n, KValue::plain(k as u32), FormType::Orthogonal, None).unwrap();
                assert_eq!(s, (rs.group_dim() - rs.parabolic_dim(&[k - 1])) as i64, "B{l} k={k}");
            }
        }
        for l in 2usize..=16 {
            let rs = RootSystem::new(TypeLabel::C, l).unwrap();
            let n = 2 * l as i64;
            for k in 1..=l {
                let s = grass_dim(n, KValue::plain(k as u32), FormType::Symplectic, None).unwrap();
                assert_eq!(s, (rs.group_dim() - rs.parabolic_dim(&[k - 1])) as i64, "C{l} k={k}");
            }
        }
        for l in 4usize..=16 {
            let rs = RootSystem::new(TypeLabel::D, l).unwrap();
            let n = 2 * l as i64;
            for k in 1..=l {
                let s = grass_dim(n, KValue::plain(k as u32), FormType::Orthogonal, None).unwrap();
                let parabolic = if k == l - 1 {
                    rs.parabolic_dim(&[l - 2, l - 1])
                } else {
                    rs.parabolic_dim(&[k - 1])
                };
                assert_eq!(s, (rs.group_dim() - parabolic) as i64, "D{l} k={k}");
            }
        }
    }

    #[test]
    fn stabilizer_dimensions() {
        assert_eq!(stabilizer_dim("U_6A_2T_1").unwrap(), 15);
        assert_eq!(stabilizer_dim("T_2.3").unwrap(), 2);
        assert_eq!(stabilizer_dim("F_5").unwrap(), 0);
        assert_eq!(stabilizer_dim("F_7").unwrap(), 0);
        assert_eq!(stabilizer_dim("U_26F_4T_1").unwrap(), 79);
        assert_eq!(stabilizer_dim("((A_2.Z_2)(A_2.Z_2)).Z_2").unwrap(), 16);
        assert_eq!(stabilizer_dim("A_1(A_2.Z_2)").unwrap(), 11);
        assert_eq!(stabilizer_dim("T_4.(Z_2^3.Alt(4))").unwrap(), 4);
        assert_eq!(stabilizer_dim("A_1^3.3").unwrap(), 9);
        assert_eq!(stabilizer_dim("A_1^4.Alt(4)").unwrap(), 12);
        assert_eq!(stabilizer_dim("U_14B_2T_1").unwrap(), 25);
        assert_eq!(stabilizer_dim("T_2.U_1.Z_2").unwrap(), 3);
        assert_eq!(stabilizer_dim("D_4.Z_3").unwrap(), 28);
    }

    #[test]
    fn rank_sized_stabilizers_need_a_rank() {
        let s = StabilizerStructure::parse("A_1^l").unwrap();
        assert_eq!(s.dimension(Some(5)).unwrap(), 15);
        assert!(s.dimension(None).is_err());
        let t = StabilizerStructure::parse("T_l.Z_2").unwrap();
        assert_eq!(t.dimension(Some(7)).unwrap(), 7);
    }

    #[test]
    fn semi_generic_marker_is_detected() {
        let s = StabilizerStructure::parse("A_1^3(*)").unwrap();
        assert!(s.is_semi_generic());
        assert_eq!(s.dimension(None).unwrap(), 9);
        let t = StabilizerStructure::parse("T_2.U_1.Z_2(*)").unwrap();
        assert!(t.is_semi_generic());
        assert_eq!(t.dimension(None).unwrap(), 3);
        assert!(!StabilizerStructure::parse("A_1^3").unwrap().is_semi_generic());
    }

    #[test]
    fn parabolic_tokens_parse_but_have_no_free_dimension() {
        let p = StabilizerStructure::parse("P_k").unwrap();
        assert_eq!(p.parabolic(), Some(&ParabolicNodes::RowK));
        assert!(p.dimension(Some(3)).is_err());
        let q = StabilizerStructure::parse("P_{l-1,l}").unwrap();
        assert_eq!(q.parabolic(), Some(&ParabolicNodes::LastTwo));
        let r = StabilizerStructure::parse("P_1").unwrap();
        assert_eq!(r.parabolic(), Some(&ParabolicNodes::Node(1)));
    }

    #[test]
    fn smallness_examples() {
        assert!(is_small_quadruple(
            TypeLabel::E,
            8,
            248,
            FormType::Orthogonal,
            KValue::plain(1)
        )
        .unwrap());
        assert!(!is_small_quadruple(
            TypeLabel::A,
            5,
            20,
            FormType::Orthogonal,
            KValue::plain(3)
        )
        .unwrap());
        for l in 3..=12 {
            assert!(is_small_quadruple(
                TypeLabel::C,
                l,
                2 * i64::from(l),
                FormType::Symplectic,
                KValue::plain(l)
            )
            .unwrap());
        }
    }

    #[test]
    fn form_types_from_pairing_parity() {
        assert_eq!(
            form_type(TypeLabel::C, 3, &[0, 1, 0], 5).unwrap(),
            FormType::Orthogonal
        );
        assert_eq!(
            form_type(TypeLabel::A, 1, &[3], 5).unwrap(),
            FormType::Symplectic
        );
        for l in 2..=6 {
            let mut w = vec![0i64; l];
            w[0] = 1;
            assert_eq!(
                form_type(TypeLabel::B, l as u32, &w, 3).unwrap(),
                FormType::Orthogonal
            );
        }
        assert_eq!(
            form_type(TypeLabel::A, 5, &[0, 0, 1, 0, 0], 3).unwrap(),
            FormType::Symplectic
        );
        assert!(form_type(TypeLabel::C, 3, &[0, 1, 0], 2).is_err());
    }

    #[test]
    fn simple_group_dims_match_root_systems() {
        let samples = [
            (TypeLabel::A, 1),
            (TypeLabel::A, 5),
            (TypeLabel::B, 4),
            (TypeLabel::C, 3),
            (TypeLabel::D, 6),
            (TypeLabel::G, 2),
            (TypeLabel::F, 4),
            (TypeLabel::E, 6),
            (TypeLabel::E, 7),
            (TypeLabel::E, 8),
        ];
        for (series, rank) in samples {
            let rs = RootSystem::new(series, rank).unwrap();
            assert_eq!(
                simple_group_dim(series, rank as u32).unwrap(),
                rs.group_dim() as i64
            );
        }
        assert!(simple_group_dim(TypeLabel::F, 5).is_err());
        assert!(simple_group_dim(TypeLabel::E, 9).is_err());
    }

    #[test]
    fn dim_expressions_evaluate() {
        let e = DimExpr::parse("l^2+2*l-[p|l+1]").unwrap();
        assert_eq!(e.eval(5, Some(3)).unwrap(), 34);
        assert_eq!(e.eval(5, Some(7)).unwrap(), 35);
        assert!(e.needs_p());
        assert!(e.eval(5, None).is_err());

        let f = DimExpr::parse("78-[p=3]").unwrap();
        assert_eq!(f.eval(6, Some(3)).unwrap(), 77);
        assert_eq!(f.eval(6, Some(5)).unwrap(), 78);

        let g = DimExpr::parse("2*l^2-l-1-[p|l]").unwrap();
        assert_eq!(g.eval(8, Some(2)).unwrap(), 118);
        assert_eq!(g.eval(5, Some(2)).unwrap(), 44);

        let h = DimExpr::parse("248").unwrap();
        assert_eq!(h.eval(8, None).unwrap(), 248);
        assert!(!h.needs_p());

        assert!(DimExpr::parse("2**l").is_err());
        assert!(DimExpr::parse("l^3").is_err());
    }

    #[test]
    fn weight_specs_evaluate() {
        let w = WeightSpec::parse("w1+wl").unwrap();
        assert_eq!(w.coeffs(5, None).unwrap(), vec![1, 0, 0, 0, 1]);
        assert_eq!(w.coeffs(1, None).unwrap(), vec![2]);

        let t = WeightSpec::parse("w1+p^i*w1").unwrap();
        assert!(t.is_twisted());
        assert_eq!(t.coeffs(1, Some(3)).unwrap(), vec![4]);
        assert!(t.coeffs(1, None).is_err());

        let s = WeightSpec::parse("2*w2").unwrap();
        assert_eq!(s.coeffs(2, None).unwrap(), vec![0, 2]);
        assert!(s.coeffs(1, None).is_err());
    }

    #[test]
    fn rank_specs_expand() {
        let r = RankSpec::parse("l>=4,l%4!=1").unwrap();
        assert_eq!(r.expand(TypeLabel::A, 12), vec![4, 6, 7, 8, 10, 11, 12]);
        let s = RankSpec::parse("l%4=3").unwrap();
        assert_eq!(s.expand(TypeLabel::A, 12), vec![3, 7, 11]);
        let t = RankSpec::parse("any").unwrap();
        assert_eq!(t.expand(TypeLabel::A, 4), vec![1, 2, 3, 4]);
        let x = RankSpec::parse("6").unwrap();
        assert_eq!(x.expand(TypeLabel::D, 4), vec![6]);
        let o = RankSpec::parse("l%2=1,l>=5").unwrap();
        assert_eq!(o.expand(TypeLabel::C, 12), vec![5, 7, 9, 11]);
    }

    #[test]
    fn p_conditions_sample() {
        let c = PCondition::parse("p|l+1,!=2").unwrap();
        assert_eq!(c.sample_primes(4), vec![5]);
        assert_eq!(c.sample_primes(5), vec![3]);
        assert!(c.admits(5, 4));
        assert!(!c.admits(2, 4));

        let twist = PCondition::parse("<inf").unwrap();
        assert!(twist.is_twist());
        assert_eq!(twist.sample_primes(1), SAMPLE_PRIMES.to_vec());

        let gt = PCondition::parse(">3").unwrap();
        assert_eq!(gt.sample_primes(1), vec![5, 7, 11, 13]);

        let ne = PCondition::parse("!=2,!=3").unwrap();
        assert_eq!(ne.sample_primes(1), vec![5, 7, 11, 13]);

        let div = PCondition::parse("p|l,!=2").unwrap();
        assert_eq!(div.sample_primes(9), vec![3]);
        assert_eq!(div.sample_primes(11), vec![11]);
    }

    #[test]
    fn k_specs_expand() {
        let any = KSpec::parse("any").unwrap();
        assert_eq!(any.values(3, 7).len(), 3);
        let not_lm1 = KSpec::parse("any!=l-1").unwrap();
        let vals = not_lm1.values(4, 8);
        assert_eq!(vals, vec![KValue::plain(1), KValue::plain(2), KValue::plain(4)]);
        let lm1 = KSpec::parse("l-1").unwrap();
        assert_eq!(lm1.values(4, 8), vec![KValue::plain(3)]);
        let list = KSpec::parse("4',4''").unwrap();
        assert_eq!(
            list.values(2, 8),
            vec![KValue::parse("4'").unwrap(), KValue::parse("4''").unwrap()]
        );
    }

    #[test]
    fn embedded_data_loads() {
        let cat = Catalog::load_default().unwrap();
        assert_eq!(cat.rows().len(), 70);
        assert_eq!(cat.modules_in_table(2).count(), 16);
        assert_eq!(cat.modules_in_table(3).count(), 16);
        assert_eq!(cat.modules_in_table(4).count(), 21);
    }

    #[test]
    fn classified_rows_are_consistent() {
        let cat = Catalog::load_default().unwrap();
        let report = cat.table1_consistency(DEFAULT_EXPAND_RANK).unwrap();
        assert_eq!(report.entries().len(), 70);
        for e in report.entries() {
            assert!(e.pass, "{}: {}", e.name, e.computed);
        }
        assert!(report.pass());
    }

    #[test]
    fn candidate_rows_are_small_with_matching_forms() {
        let cat = Catalog::load_default().unwrap();
        let report = cat.candidate_consistency(DEFAULT_EXPAND_RANK).unwrap();
        assert_eq!(report.entries().len(), 53);
        for e in report.entries() {
            assert!(e.pass, "{}: {}", e.name, e.computed);
        }
    }

    #[test]
    fn catalog_rejects_malformed_lines() {
        assert!(Catalog::parse("case series=A").is_err());
        assert!(Catalog::parse("gibberish foo=1").is_err());
        assert!(Catalog::parse(
            "module series=A rank=1 weight=w1 p=any k=1 dim=2 form=sympl table=9"
        )
        .is_err());
        assert!(Catalog::parse(
            "case series=A rank=1 weight=w1 p=any k=1 dim=2 form=sympl stab=P_1 dense=maybe table=1"
        )
        .is_err());
        assert!(Catalog::parse(
            "case series=A rank=1 weight=w1 p=any k=1 dim=2 form=sympl stab=P_1 dense=yes table=1 bogus=1"
        )
        .is_err());
    }
}
