//! Even Clifford algebra machinery for spin representations of odd
//! orthogonal groups.
//!
//! The Clifford algebra of a hyperbolic quadratic space of rank `n` is
//! presented on generators `e_1..e_n` (indices `1..=n`) and `f_1..f_n`
//! (indices `n+1..=2n`) with `e_i^2 = f_i^2 = 0`, `e_i f_i + f_i e_i = 1`,
//! and anticommutation for all other pairs. A basis consists of strictly
//! increasing products of generators. The spin module is the left ideal
//! generated by `f_1 ... f_n`; identifying `m * f_1...f_n` with the pure
//! `e`-monomial `m` realizes it on `e`-subsets, and left multiplication
//! followed by discarding monomials containing any `f` is the exact action
//! (every `f` annihilates the ideal generator, and distinct `e`-monomials
//! stay independent).

use std::collections::BTreeMap;

use crate::chevmod::{coeff_label, GeneratorFamily, GeneratorRule};
use crate::field::{Field, FieldElement};
use crate::linalg::Matrix;
use crate::rootsys::{RootSystem, TypeLabel};
use crate::{Error, Result};

/// An element of the Clifford algebra on `2n` generators: a map from
/// strictly increasing index monomials to coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordElement {
    field: Field,
    n: usize,
    terms: BTreeMap<Vec<u8>, FieldElement>,
}

/// Multiplies a basis monomial by one generator on the right, pushing the
/// resulting signed monomials. Recursion: a trailing generator below `g`
/// just extends the monomial; equal generators square to zero; otherwise
/// `g` moves left with a sign flip, and passing its partner additionally
/// splits off the shortened monomial.
fn gen_mul(mono: &[u8], g: u8, n: usize, sign: i64, out: &mut Vec<(Vec<u8>, i64)>) {
    match mono.last() {
        None => out.push((vec![g], sign)),
        Some(&last) if last < g => {
            let mut m = mono.to_vec();
            m.push(g);
            out.push((m, sign));
        }
        Some(&last) if last == g => {}
        Some(&last) => {
            let prefix = &mono[..mono.len() - 1];
            if last == g + n as u8 {
                out.push((prefix.to_vec(), sign));
            }
            let mut sub = Vec::new();
            gen_mul(prefix, g, n, -sign, &mut sub);
            for (mut m, s) in sub {
                m.push(last);
                out.push((m, s));
            }
        }
    }
}

fn check_monomial(n: usize, mono: &[u8]) -> Result<()> {
    for w in mono.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::Clifford(format!(
                "monomial {mono:?} is not strictly increasing"
            )));
        }
    }
    if let Some(&last) = mono.last() {
        if last as usize > 2 * n || mono[0] == 0 {
            return Err(Error::Clifford(format!(
                "monomial {mono:?} out of range for rank {n}"
            )));
        }
    }
    Ok(())
}

impl CliffordElement {
    pub fn zero(field: &Field, n: usize) -> CliffordElement {
        CliffordElement {
            field: *field,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: &Field, n: usize) -> CliffordElement {
        Self::monomial(field, n, &[], &field.one()).expect("empty monomial")
    }

    pub fn monomial(
        field: &Field,
        n: usize,
        mono: &[u8],
        coeff: &FieldElement,
    ) -> Result<CliffordElement> {
        check_monomial(n, mono)?;
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono.to_vec(), coeff.clone());
        }
        Ok(CliffordElement {
            field: *field,
            n,
            terms,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u8>, FieldElement> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, mono: Vec<u8>, delta: &FieldElement) -> Result<()> {
        if delta.is_zero() {
            return Ok(());
        }
        let cur = match self.terms.get(&mono) {
            Some(c) => c.checked_add(delta)?,
            None => delta.clone(),
        };
        if cur.is_zero() {
            self.terms.remove(&mono);
        } else {
            self.terms.insert(mono, cur);
        }
        Ok(())
    }

    pub fn add(&self, other: &CliffordElement) -> Result<CliffordElement> {
        if self.n != other.n {
            return Err(Error::Clifford("rank mismatch".into()));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldElement) -> Result<CliffordElement> {
        let mut out = Self::zero(&self.field, self.n);
        for (m, x) in &self.terms {
            out.insert(m.clone(), &x.checked_mul(c)?)?;
        }
        Ok(out)
    }

    /// The Clifford product, reducing against the defining relations.
    pub fn mul(&self, other: &CliffordElement) -> Result<CliffordElement> {
        if self.n != other.n {
            return Err(Error::Clifford("rank mismatch".into()));
        }
        let mut out = Self::zero(&self.field, self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut cur: Vec<(Vec<u8>, i64)> = vec![(ma.clone(), 1)];
                for &g in mb {
                    let mut next = Vec::new();
                    for (m, s) in &cur {
                        gen_mul(m, g, self.n, *s, &mut next);
                    }
                    cur = next;
                }
                let scale = ca.checked_mul(cb)?;
                for (m, s) in cur {
                    let delta = scale.checked_mul(&self.field.integer(s))?;
                    out.insert(m, &delta)?;
                }
            }
        }
        Ok(out)
    }
}

/// Multiplies out a word of generators left to right.
pub fn reduce_word(field: &Field, n: usize, word: &[u8]) -> Result<CliffordElement> {
    let mut acc = CliffordElement::one(field, n);
    for &g in word {
        if g == 0 || g as usize > 2 * n {
            return Err(Error::Clifford(format!("generator {g} out of range")));
        }
        acc = acc.mul(&CliffordElement::monomial(field, n, &[g], &field.one())?)?;
    }
    Ok(acc)
}

/// Reduces a generator word by rewriting randomly chosen adjacent pairs
/// until every summand is sorted. The result never depends on the order
/// the rules fire, which makes this an independent check of `reduce_word`.
pub fn reduce_word_shuffled(
    field: &Field,
    n: usize,
    word: &[u8],
    rng: &mut impl rand::Rng,
) -> Result<CliffordElement> {
    for &g in word {
        if g == 0 || g as usize > 2 * n {
            return Err(Error::Clifford(format!("generator {g} out of range")));
        }
    }
    let mut out = CliffordElement::zero(field, n);
    let mut work: Vec<(Vec<u8>, FieldElement)> = vec![(word.to_vec(), field.one())];
    while let Some((w, c)) = work.pop() {
        let spots: Vec<usize> = (0..w.len().saturating_sub(1))
            .filter(|&k| w[k] >= w[k + 1])
            .collect();
        if spots.is_empty() {
            out.insert(w, &c)?;
            continue;
        }
        let k = spots[rng.gen_range(0..spots.len())];
        if w[k] == w[k + 1] {
            continue; // squares vanish
        }
        // Partner pair f_i e_i rewrites to 1 - e_i f_i; all other inverted
        // pairs anticommute.
        if w[k] == w[k + 1] + n as u8 {
            let mut dropped = w.clone();
            dropped.drain(k..k + 2);
            work.push((dropped, c.clone()));
        }
        let mut swapped = w.clone();
        swapped.swap(k, k + 1);
        work.push((swapped, -&c));
    }
    Ok(out)
}

/// Left multiplication on the spin module: multiply, then keep only the
/// monomials free of `f`-generators. The projection is exact because every
/// dropped monomial annihilates the ideal generator `f_1 ... f_n`.
pub fn spin_action(s: &CliffordElement, x: &CliffordElement) -> Result<CliffordElement> {
    let prod = s.mul(x)?;
    let n = s.rank() as u8;
    let mut out = CliffordElement::zero(s.field(), s.rank());
    for (m, c) in prod.terms() {
        if m.iter().all(|&g| g <= n) {
            out.insert(m.clone(), c)?;
        }
    }
    Ok(out)
}

/// The matrix of left multiplication by `s` on the span of the given spin
/// basis monomials; errors when the image leaves the span.
pub fn spin_matrix(basis: &[Vec<u8>], s: &CliffordElement) -> Result<Matrix> {
    let field = *s.field();
    let dim = basis.len();
    let index: BTreeMap<&[u8], usize> = basis
        .iter()
        .enumerate()
        .map(|(i, m)| (m.as_slice(), i))
        .collect();
    let mut out = Matrix::zero(field, dim, dim);
    for (j, mono) in basis.iter().enumerate() {
        let x = CliffordElement::monomial(&field, s.rank(), mono, &field.one())?;
        let image = spin_action(s, &x)?;
        for (m, c) in image.terms() {
            let i = index.get(m.as_slice()).ok_or_else(|| {
                Error::Clifford(format!("image monomial {m:?} outside the spin basis"))
            })?;
            out[(*i, j)] = c.clone();
        }
    }
    Ok(out)
}

/// A product of unit factors `1 + c * m` with `m^2 = 0`, kept in factored
/// form so the inverse is the reversed product of `1 - c * m`.
#[derive(Clone, Debug)]
pub struct CliffordGroupElement {
    field: Field,
    n: usize,
    factors: Vec<(FieldElement, Vec<u8>)>,
}

impl CliffordGroupElement {
    pub fn identity(field: &Field, n: usize) -> CliffordGroupElement {
        CliffordGroupElement {
            field: *field,
            n,
            factors: Vec::new(),
        }
    }

    pub fn factors(&self) -> &[(FieldElement, Vec<u8>)] {
        &self.factors
    }

    /// Appends the factor `1 + c * m`, checking that `m` squares to zero
    /// (partner pairs like `e_i f_i` square to themselves and are rejected).
    pub fn push_factor(&mut self, coeff: &FieldElement, mono: &[u8]) -> Result<()> {
        check_monomial(self.n, mono)?;
        if coeff.is_zero() {
            return Ok(());
        }
        let m = CliffordElement::monomial(&self.field, self.n, mono, &self.field.one())?;
        if !m.mul(&m)?.is_zero() {
            return Err(Error::Clifford(format!(
                "factor monomial {mono:?} does not square to zero"
            )));
        }
        self.factors.push((coeff.clone(), mono.to_vec()));
        Ok(())
    }

    /// Appends all factors of another element (right multiplication).
    pub fn push_element(&mut self, other: &CliffordGroupElement) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Clifford("rank mismatch".into()));
        }
        self.factors.extend(other.factors.iter().cloned());
        Ok(())
    }

    /// The expanded algebra element.
    pub fn element(&self) -> Result<CliffordElement> {
        let mut acc = CliffordElement::one(&self.field, self.n);
        for (c, m) in &self.factors {
            let term = CliffordElement::monomial(&self.field, self.n, m, c)?;
            acc = acc.add(&acc.mul(&term)?)?;
        }
        Ok(acc)
    }

    /// The expanded inverse: reversed product of the factor inverses.
    pub fn inverse_element(&self) -> Result<CliffordElement> {
        let mut acc = CliffordElement::one(&self.field, self.n);
        for (c, m) in self.factors.iter().rev() {
            let term = CliffordElement::monomial(&self.field, self.n, m, &(-c))?;
            acc = acc.add(&acc.mul(&term)?)?;
        }
        Ok(acc)
    }
}

/// Conjugation action on the degree-1 span, as a matrix in the interleaved
/// basis `e1, f1, e2, f2, ...` (the even orthogonal natural module order);
/// errors when some image is not of degree 1.
pub fn vector_rep(g: &CliffordGroupElement) -> Result<Matrix> {
    let n = g.n;
    let field = g.field;
    let elem = g.element()?;
    let inv = g.inverse_element()?;
    let col_of = |idx: u8| -> usize {
        if (idx as usize) <= n {
            2 * (idx as usize - 1)
        } else {
            2 * (idx as usize - n - 1) + 1
        }
    };
    let mut out = Matrix::zero(field, 2 * n, 2 * n);
    for idx in 1..=(2 * n) as u8 {
        let v = CliffordElement::monomial(&field, n, &[idx], &field.one())?;
        let image = elem.mul(&v)?.mul(&inv)?;
        for (m, c) in image.terms() {
            if m.len() != 1 {
                return Err(Error::Clifford(
                    "conjugation does not preserve the degree-1 span".into(),
                ));
            }
            out[(col_of(m[0]), col_of(idx))] = c.clone();
        }
    }
    Ok(out)
}

/// Expands a product of `t`-linear unit factors `prod_k (1 + c_k t m_k)`
/// into coefficients by degree in `t`.
pub fn unit_product_expansion(
    field: &Field,
    n: usize,
    factors: &[(FieldElement, Vec<u8>)],
) -> Result<Vec<CliffordElement>> {
    let mut coeffs = vec![CliffordElement::one(field, n)];
    for (c, m) in factors {
        let term = CliffordElement::monomial(field, n, m, c)?;
        let mut next = Vec::with_capacity(coeffs.len() + 1);
        next.push(coeffs[0].clone());
        for j in 1..=coeffs.len() {
            let mut entry = if j < coeffs.len() {
                coeffs[j].clone()
            } else {
                CliffordElement::zero(field, n)
            };
            entry = entry.add(&coeffs[j - 1].mul(&term)?)?;
            next.push(entry);
        }
        while next.len() > 1 && next.last().map(|e| e.is_zero()) == Some(true) {
            next.pop();
        }
        coeffs = next;
    }
    Ok(coeffs)
}

/// Sorts a generator word into a strictly increasing monomial, tracking the
/// anticommutation sign; rejects repeated indices and partner pairs, which
/// do not reduce to a single monomial.
pub fn sorted_monomial(word: &[u8], n: usize) -> Result<(Vec<u8>, i64)> {
    let mut m = word.to_vec();
    let mut sign = 1i64;
    for i in 1..m.len() {
        let mut j = i;
        while j > 0 && m[j - 1] > m[j] {
            m.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    for w in m.windows(2) {
        if w[0] == w[1] || w[1] == w[0] + n as u8 {
            return Err(Error::Clifford(format!(
                "word {word:?} contains a repeated or partnered pair"
            )));
        }
    }
    Ok((m, sign))
}

/// The `t`-linear factored form of a root element of the odd orthogonal
/// group of rank `n` inside the Clifford algebra of rank `n + 1`, from the
/// epsilon coordinates of the root. Long roots give one factor, short roots
/// two, matching:
/// `x_{ei-ej}(t) = 1 + t e_i f_j`, `x_{ei+ej}(t) = 1 + t e_i e_j`,
/// `x_{-ei-ej}(t) = 1 - t f_i f_j`,
/// `x_{ei}(t) = (1 + t e_i e_{n+1})(1 + t e_i f_{n+1})`,
/// `x_{-ei}(t) = (1 - t f_i e_{n+1})(1 - t f_i f_{n+1})`.
pub fn bn_root_factors(
    field: &Field,
    n: usize,
    eps: &[i64],
) -> Result<Vec<(FieldElement, Vec<u8>)>> {
    if eps.len() != n {
        return Err(Error::Clifford("epsilon coordinate length mismatch".into()));
    }
    let ncl = n + 1;
    let e = |i: usize| i as u8;
    let f = |i: usize| (ncl + i) as u8;
    let support: Vec<(usize, i64)> = eps
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| (k + 1, c))
        .collect();
    let mut raw: Vec<(i64, Vec<u8>)> = Vec::new();
    match support.as_slice() {
        [(i, 1), (j, -1)] => raw.push((1, vec![e(*i), f(*j)])),
        [(i, -1), (j, 1)] => raw.push((1, vec![e(*j), f(*i)])),
        [(i, 1), (j, 1)] => raw.push((1, vec![e(*i), e(*j)])),
        [(i, -1), (j, -1)] => raw.push((-1, vec![f(*i), f(*j)])),
        [(i, 1)] => {
            raw.push((1, vec![e(*i), e(ncl)]));
            raw.push((1, vec![e(*i), f(ncl)]));
        }
        [(i, -1)] => {
            raw.push((-1, vec![f(*i), e(ncl)]));
            raw.push((-1, vec![f(*i), f(ncl)]));
        }
        _ => {
            return Err(Error::Clifford(format!(
                "epsilon coordinates {eps:?} are not a root"
            )))
        }
    }
    let mut out = Vec::with_capacity(raw.len());
    for (sign, word) in raw {
        let (mono, s) = sorted_monomial(&word, ncl)?;
        out.push((field.integer(sign * s), mono));
    }
    Ok(out)
}

/// The root element at a parameter value, in factored group form.
pub fn bn_root_element(
    field: &Field,
    n: usize,
    eps: &[i64],
    t: &FieldElement,
) -> Result<CliffordGroupElement> {
    let mut g = CliffordGroupElement::identity(field, n + 1);
    for (c, m) in bn_root_factors(field, n, eps)? {
        g.push_factor(&c.checked_mul(t)?, &m)?;
    }
    Ok(g)
}

/// The standard Weyl representative `n_a(t) = x_a(t) x_{-a}(-1/t) x_a(t)`.
pub fn bn_n_alpha(
    field: &Field,
    n: usize,
    eps: &[i64],
    t: &FieldElement,
) -> Result<CliffordGroupElement> {
    let neg: Vec<i64> = eps.iter().map(|&c| -c).collect();
    let minus_inv = -&t.inverse()?;
    let mut g = bn_root_element(field, n, eps, t)?;
    g.push_element(&bn_root_element(field, n, &neg, &minus_inv)?)?;
    g.push_element(&bn_root_element(field, n, eps, t)?)?;
    Ok(g)
}

/// The torus element `h_a(k) = n_a(k) n_a(-1)`.
pub fn bn_h_alpha(
    field: &Field,
    n: usize,
    eps: &[i64],
    kappa: &FieldElement,
) -> Result<CliffordGroupElement> {
    let mut g = bn_n_alpha(field, n, eps, kappa)?;
    g.push_element(&bn_n_alpha(field, n, eps, &(-&field.one()))?)?;
    Ok(g)
}

/// Spin basis monomials of the rank-4 spin module (dimension 16), in the
/// fixed reference order.
pub fn b4_spin_basis() -> Vec<Vec<u8>> {
    vec![
        vec![],
        vec![1, 2],
        vec![1, 3],
        vec![2, 3],
        vec![1, 5],
        vec![2, 5],
        vec![3, 5],
        vec![4, 5],
        vec![1, 2, 3, 5],
        vec![1, 2, 4, 5],
        vec![1, 3, 4, 5],
        vec![2, 3, 4, 5],
        vec![1, 4],
        vec![2, 4],
        vec![3, 4],
        vec![1, 2, 3, 4],
    ]
}

/// Spin basis monomials of the rank-3 spin module (dimension 8): all even
/// `e`-subsets in size, then lexicographic order.
pub fn b3_spin_basis() -> Vec<Vec<u8>> {
    vec![
        vec![],
        vec![1, 2],
        vec![1, 3],
        vec![2, 3],
        vec![1, 4],
        vec![2, 4],
        vec![3, 4],
        vec![1, 2, 3, 4],
    ]
}

/// Positions of the spin basis vectors free of the extra generator
/// `e_{n+1}`; for rank 4 this is the fixed space of the split subalgebra.
pub fn b4_v8_indices() -> [usize; 8] {
    [0, 1, 2, 3, 12, 13, 14, 15]
}

fn halved_eps(rs: &RootSystem, a: usize) -> Vec<i64> {
    rs.root_eps(a)
        .iter()
        .map(|&c| {
            debug_assert_eq!(c % 2, 0);
            c / 2
        })
        .collect()
}

/// Generator families of the rank-`n` odd orthogonal group on the given
/// spin basis: one additive family per root in the pinned order, then the
/// simple coroot tori with exponents extracted over the rationals.
fn bn_spin_families(
    field: &Field,
    n: usize,
    basis: &[Vec<u8>],
) -> Result<Vec<GeneratorFamily>> {
    let rs = RootSystem::new(TypeLabel::B, n)?;
    let mut families = Vec::new();
    for a in 0..rs.n_roots() {
        let eps = halved_eps(&rs, a);
        let factors = bn_root_factors(field, n, &eps)?;
        let expansion = unit_product_expansion(field, n + 1, &factors)?;
        let coeffs = expansion
            .iter()
            .map(|e| spin_matrix(basis, e))
            .collect::<Result<Vec<_>>>()?;
        families.push(GeneratorFamily {
            label: format!("x[{}]", coeff_label(rs.coeffs(a))),
            rule: GeneratorRule::Additive(coeffs),
        });
    }
    let rat = Field::rational();
    let two = rat.integer(2);
    for i in 0..n {
        let eps = halved_eps(&rs, rs.simple(i));
        let h = bn_h_alpha(&rat, n, &eps, &two)?;
        let mat = spin_matrix(basis, &h.element()?)?;
        let mut exps = Vec::with_capacity(basis.len());
        for r in 0..basis.len() {
            for c in 0..basis.len() {
                if r != c && !mat[(r, c)].is_zero() {
                    return Err(Error::Clifford(
                        "torus element is not diagonal on the spin basis".into(),
                    ));
                }
            }
            let d = (-12..=12)
                .find(|&d| mat[(r, r)] == two.pow(d).expect("power of two"))
                .ok_or_else(|| {
                    Error::Clifford("torus eigenvalue is not a power of the parameter".into())
                })?;
            exps.push(d);
        }
        families.push(GeneratorFamily {
            label: format!("h[{}]", i + 1),
            rule: GeneratorRule::Diagonal(exps),
        });
    }
    Ok(families)
}

/// Builds an additive generator family on a spin basis of the rank-`ncl`
/// Clifford algebra from `t`-linear unit factors.
pub fn spin_additive_family(
    field: &Field,
    ncl: usize,
    basis: &[Vec<u8>],
    label: &str,
    factors: &[(FieldElement, Vec<u8>)],
) -> Result<GeneratorFamily> {
    let expansion = unit_product_expansion(field, ncl, factors)?;
    let coeffs = expansion
        .iter()
        .map(|e| spin_matrix(basis, e))
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneratorFamily {
        label: label.to_string(),
        rule: GeneratorRule::Additive(coeffs),
    })
}

/// The 16-dimensional spin module of the rank-4 odd orthogonal group, with
/// its quadratic form pairing `v_i` with `v_{17-i}` with alternating signs.
pub fn b4_spin_module(field: &Field) -> Result<crate::chevmod::ExplicitModule> {
    let basis = b4_spin_basis();
    let families = bn_spin_families(field, 4, &basis)?;
    let mut gram = Matrix::zero(*field, 16, 16);
    for i in 0..8 {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        gram[(i, 15 - i)] = field.integer(sign);
        gram[(15 - i, i)] = field.integer(sign);
    }
    let quad = vec![field.zero(); 16];
    let labels = (1..=16).map(|i| format!("v{i}")).collect();
    Ok(crate::chevmod::ExplicitModule::from_parts(
        *field,
        labels,
        families,
        gram,
        Some(quad),
    ))
}

/// The 8-dimensional spin module of the rank-3 odd orthogonal group. The
/// invariant form is not copied from anywhere: it is derived at build time
/// as the unique symmetric solution of the Lie invariance equations over
/// the rationals, normalized by pairing the first and last basis vectors
/// to 1.
pub fn b3_spin_module(field: &Field) -> Result<crate::chevmod::ExplicitModule> {
    let basis = b3_spin_basis();
    let rat = Field::rational();
    let rat_families = bn_spin_families(&rat, 3, &basis)?;
    let lie: Vec<Matrix> = rat_families.iter().map(|f| f.linear_part(&rat)).collect();
    let sols = crate::linalg::invariant_symmetric_forms(&rat, &lie);
    if sols.len() != 1 {
        return Err(Error::Clifford(format!(
            "invariant form space has dimension {}",
            sols.len()
        )));
    }
    let scale = sols[0][(0, 7)].inverse()?;
    let normalized = sols[0].scale(&scale);
    let mut gram = Matrix::zero(*field, 8, 8);
    for i in 0..8 {
        for j in 0..8 {
            let k = (-4..=4)
                .find(|&k| normalized[(i, j)] == rat.integer(k))
                .ok_or_else(|| Error::Clifford("non-integral invariant form entry".into()))?;
            gram[(i, j)] = field.integer(k);
        }
    }
    let families = bn_spin_families(field, 3, &basis)?;
    let quad = vec![field.zero(); 8];
    let labels = (1..=8).map(|i| format!("v{i}")).collect();
    Ok(crate::chevmod::ExplicitModule::from_parts(
        *field,
        labels,
        families,
        gram,
        Some(quad),
    ))
}

/// The three rank-4 spin stabilizer configurations with hand-entered data.
#[derive(Clone, Debug)]
pub enum B4Case {
    /// Characteristic not 2 or 3: the fixed subalgebra of a triality-like
    /// graph symmetry, with the twisted 8-space `W_lambda`.
    K8PrimeNot3,
    /// Characteristic 3 over a field with a fourth root of unity.
    K8PrimeIs3,
    /// Characteristic 2 with three twist parameters.
    K8DoublePrime {
        a: FieldElement,
        b: FieldElement,
        c: FieldElement,
    },
}

/// Explicit data for a rank-4 spin case: one-parameter generator factor
/// lists, labeled subspaces in spin coordinates, the half-space
/// intertwining map when the case has one, and a monomial-normalizing
/// group element when the case checks one.
#[derive(Clone, Debug)]
pub struct B4CaseData {
    pub generators: Vec<(String, Vec<(FieldElement, Vec<u8>)>)>,
    pub subspaces: Vec<(String, Vec<Vec<FieldElement>>)>,
    pub phi: Option<Matrix>,
    pub normalizer: Option<CliffordGroupElement>,
}

fn spin_vector(field: &Field, parts: &[(usize, FieldElement)]) -> Vec<FieldElement> {
    let mut v = vec![field.zero(); 16];
    for (idx, c) in parts {
        v[*idx] = c.clone();
    }
    v
}

fn b4_simple_eps(i: usize) -> Vec<i64> {
    match i {
        0 => vec![1, -1, 0, 0],
        1 => vec![0, 1, -1, 0],
        2 => vec![0, 0, 1, -1],
        _ => vec![0, 0, 0, 1],
    }
}

/// Data for the chosen rank-4 spin case over the given field.
pub fn b4_case_data(field: &Field, case: &B4Case) -> Result<B4CaseData> {
    let sorted = |word: &[u8], c: &FieldElement| -> Result<(FieldElement, Vec<u8>)> {
        let (m, s) = sorted_monomial(word, 5)?;
        Ok((c.checked_mul(&field.integer(s))?, m))
    };
    let e = |i: usize| i as u8;
    let f = |i: usize| (5 + i) as u8;
    match case {
        B4Case::K8PrimeNot3 => {
            let p = field.characteristic();
            if p == 2 || p == 3 {
                return Err(Error::Module(
                    "this configuration needs characteristic away from 2 and 3".into(),
                ));
            }
            let w = field.root_of_unity(3)?;
            let w2 = w.checked_mul(&w)?;
            let lam = field.root_of_unity(4)?;
            let one = field.one();
            let generators = vec![
                (
                    "a1".to_string(),
                    vec![
                        sorted(&[e(1), f(2)], &one)?,
                        sorted(&[e(3), f(4)], &w2)?,
                        sorted(&[f(1), f(2)], &(-&w))?,
                    ],
                ),
                (
                    "a2".to_string(),
                    vec![
                        sorted(&[e(2), f(1)], &one)?,
                        // The mixed factor names the root monomial e4*f3;
                        // machine-checked as the choice fixing both spaces.
                        sorted(&[e(4), f(3)], &w)?,
                        sorted(&[e(1), e(2)], &w2)?,
                    ],
                ),
                (
                    "a3".to_string(),
                    vec![
                        sorted(&[e(1), f(3)], &one)?,
                        sorted(&[e(2), f(4)], &(-&w))?,
                        sorted(&[f(1), f(3)], &(-&w2))?,
                    ],
                ),
                (
                    "a4".to_string(),
                    vec![
                        sorted(&[e(3), f(1)], &one)?,
                        // Root monomial e4*f2, same adjudication as in a2.
                        sorted(&[e(4), f(2)], &(-&w2))?,
                        sorted(&[e(1), e(3)], &w)?,
                    ],
                ),
            ];
            // The intertwining map sends the e5-free half onto the e5-half.
            let mut phi = Matrix::zero(*field, 16, 16);
            let assign = |m: &mut Matrix, from: usize, to: usize, c: &FieldElement| {
                m[(to, from)] = c.clone();
            };
            assign(&mut phi, 0, 4, &one);
            assign(&mut phi, 1, 5, &w);
            assign(&mut phi, 2, 6, &w2);
            assign(&mut phi, 3, 7, &one);
            assign(&mut phi, 12, 8, &one);
            assign(&mut phi, 13, 9, &w);
            assign(&mut phi, 14, 10, &w2);
            assign(&mut phi, 15, 11, &one);
            let w_of = |l: &FieldElement| -> Result<Vec<Vec<FieldElement>>> {
                let mut vs = Vec::with_capacity(8);
                for &i in b4_v8_indices().iter() {
                    let mut v = vec![field.zero(); 16];
                    v[i] = field.one();
                    for r in 0..16 {
                        if !phi[(r, i)].is_zero() {
                            v[r] = l.checked_mul(&phi[(r, i)])?;
                        }
                    }
                    vs.push(v);
                }
                Ok(vs)
            };
            let subspaces = vec![
                ("W_root".to_string(), w_of(&lam)?),
                ("W_unit".to_string(), w_of(&one)?),
            ];
            let mut tau = bn_h_alpha(field, 4, &b4_simple_eps(0), &(-&one))?;
            for k in [0usize, 1, 0, 2, 3, 2, 1, 0] {
                tau.push_element(&bn_n_alpha(field, 4, &b4_simple_eps(k), &one)?)?;
            }
            Ok(B4CaseData {
                generators,
                subspaces,
                phi: Some(phi),
                normalizer: Some(tau),
            })
        }
        B4Case::K8PrimeIs3 => {
            if field.characteristic() != 3 {
                return Err(Error::Module("this configuration needs characteristic 3".into()));
            }
            let i4 = field.root_of_unity(4)?;
            let one = field.one();
            let generators = vec![
                (
                    "g1+".to_string(),
                    vec![
                        sorted(&[e(2), f(3)], &one)?,
                        sorted(&[e(4), e(5)], &(-&one))?,
                        sorted(&[e(4), f(5)], &(-&one))?,
                    ],
                ),
                (
                    "g1-".to_string(),
                    vec![
                        sorted(&[e(3), f(2)], &one)?,
                        sorted(&[f(4), e(5)], &one)?,
                        sorted(&[f(4), f(5)], &one)?,
                    ],
                ),
                (
                    "g2+".to_string(),
                    vec![
                        sorted(&[e(2), f(4)], &one)?,
                        sorted(&[e(3), e(5)], &one)?,
                        sorted(&[e(3), f(5)], &one)?,
                        sorted(&[e(1), e(3)], &one)?,
                    ],
                ),
                (
                    "g2-".to_string(),
                    vec![
                        sorted(&[e(4), f(2)], &one)?,
                        sorted(&[f(3), e(5)], &(-&one))?,
                        sorted(&[f(3), f(5)], &(-&one))?,
                        sorted(&[e(1), f(3)], &(-&one))?,
                    ],
                ),
            ];
            let neg = field.integer(-1);
            let vs = vec![
                spin_vector(field, &[(6, one.clone())]),
                spin_vector(field, &[(5, one.clone()), (14, neg.clone())]),
                spin_vector(field, &[(13, one.clone())]),
                spin_vector(field, &[(0, one.clone()), (4, neg.clone())]),
                spin_vector(field, &[(15, one.clone()), (11, one.clone())]),
                spin_vector(field, &[(3, one.clone()), (8, one.clone())]),
                spin_vector(field, &[(1, one.clone()), (10, one.clone())]),
                spin_vector(field, &[(12, one.clone()), (7, neg.clone())]),
            ];
            let mut tau = bn_h_alpha(field, 4, &b4_simple_eps(0), &neg)?;
            tau.push_element(&bn_h_alpha(field, 4, &b4_simple_eps(1), &neg)?)?;
            tau.push_element(&bn_h_alpha(field, 4, &b4_simple_eps(2), &neg)?)?;
            tau.push_element(&bn_h_alpha(field, 4, &b4_simple_eps(3), &i4)?)?;
            // The reflection root has coefficients (0,1,2,2): eps (0,1,1,0).
            tau.push_element(&bn_n_alpha(field, 4, &[0, 1, 1, 0], &one)?)?;
            Ok(B4CaseData {
                generators,
                subspaces: vec![("W".to_string(), vs)],
                phi: None,
                normalizer: Some(tau),
            })
        }
        B4Case::K8DoublePrime { a, b, c } => {
            if field.characteristic() != 2 {
                return Err(Error::Module("this configuration needs characteristic 2".into()));
            }
            let one = field.one();
            let mut generators = Vec::new();
            for (i, lam) in [(2usize, a), (3, b), (4, c)] {
                generators.push((
                    format!("A{}+", i - 1),
                    vec![
                        sorted(&[f(i), e(5)], &one)?,
                        sorted(&[f(i), f(5)], &one)?,
                        sorted(&[f(i), e(1)], lam)?,
                    ],
                ));
                generators.push((
                    format!("A{}-", i - 1),
                    vec![
                        sorted(&[e(i), e(5)], &one)?,
                        sorted(&[e(i), f(5)], &one)?,
                        sorted(&[e(i), e(1)], lam)?,
                    ],
                ));
            }
            let add = |x: &FieldElement, y: &FieldElement| x.checked_add(y);
            let a1 = add(a, &one)?;
            let ab1 = add(&add(a, b)?, &one)?;
            let b1 = add(b, &one)?;
            let ac1 = add(&add(a, c)?, &one)?;
            let c1 = add(c, &one)?;
            let bc1 = add(&add(b, c)?, &one)?;
            let abc1 = add(&add(&add(a, b)?, c)?, &one)?;
            // The second and third parameter enter the basis coefficients in
            // the opposite order from the generator list; machine-checked as
            // the unique pairing the six one-parameter families all fix.
            let vs = vec![
                spin_vector(field, &[(10, one.clone()), (14, one.clone())]),
                spin_vector(field, &[(15, a1), (11, one.clone())]),
                spin_vector(field, &[(3, one.clone()), (8, ac1)]),
                spin_vector(field, &[(6, one.clone()), (2, c1)]),
                spin_vector(field, &[(9, ab1), (13, one.clone())]),
                spin_vector(field, &[(12, b1), (7, one.clone())]),
                spin_vector(field, &[(0, one.clone()), (4, bc1)]),
                spin_vector(field, &[(5, one.clone()), (1, abc1)]),
            ];
            Ok(B4CaseData {
                generators,
                subspaces: vec![("W".to_string(), vs)],
                phi: None,
                normalizer: None,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevmod::natural_module;
    use crate::DEFAULT_SEED;
    use rand::SeedableRng;

    fn gf(p: u64, k: u32) -> Field {
        Field::finite(p, k).unwrap()
    }

    #[test]
    fn defining_relations() {
        let f = Field::rational();
        let n = 3;
        let gen = |i: u8| CliffordElement::monomial(&f, n, &[i], &f.one()).unwrap();
        for i in 1..=(2 * n as u8) {
            assert!(gen(i).mul(&gen(i)).unwrap().is_zero(), "square of {i}");
        }
        // Partner pair sums to 1.
        for i in 1..=(n as u8) {
            let ef = gen(i).mul(&gen(i + n as u8)).unwrap();
            let fe = gen(i + n as u8).mul(&gen(i)).unwrap();
            assert_eq!(ef.add(&fe).unwrap(), CliffordElement::one(&f, n));
        }
        // Distinct non-partners anticommute.
        let a = gen(1).mul(&gen(2)).unwrap();
        let b = gen(2).mul(&gen(1)).unwrap();
        assert!(a.add(&b).unwrap().is_zero());
    }

    #[test]
    fn unit_factor_moves_spinor_index() {
        // (1 + t e1 f2) sends e2 e3 to e2 e3 + t e1 e3 on the spin module.
        let f = gf(7, 1);
        let n = 3;
        let t = f.integer(3);
        let mut g = CliffordGroupElement::identity(&f, n);
        g.push_factor(&t, &[1, n as u8 + 2]).unwrap();
        let x = CliffordElement::monomial(&f, n, &[2, 3], &f.one()).unwrap();
        let image = spin_action(&g.element().unwrap(), &x).unwrap();
        let mut expected = x.clone();
        expected = expected
            .add(&CliffordElement::monomial(&f, n, &[1, 3], &t).unwrap())
            .unwrap();
        assert_eq!(image, expected);
    }

    #[test]
    fn associativity_on_random_elements() {
        let f = gf(7, 1);
        let n = 4;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
        use rand::Rng;
        let mut random_elem = |rng: &mut rand_chacha::ChaCha8Rng| {
            let mut acc = CliffordElement::zero(&f, n);
            for _ in 0..4 {
                let len = rng.gen_range(0..4usize);
                let mut mono: Vec<u8> = (0..len)
                    .map(|_| rng.gen_range(1..=(2 * n) as u8))
                    .collect();
                mono.sort_unstable();
                mono.dedup();
                let c = f.integer(rng.gen_range(-6..7));
                if let Ok(m) = CliffordElement::monomial(&f, n, &mono, &c) {
                    acc = acc.add(&m).unwrap();
                }
            }
            acc
        };
        for _ in 0..25 {
            let a = random_elem(&mut rng);
            let b = random_elem(&mut rng);
            let c = random_elem(&mut rng);
            let left = a.mul(&b).unwrap().mul(&c).unwrap();
            let right = a.mul(&b.mul(&c).unwrap()).unwrap();
            assert_eq!(left, right);
        }
    }

    #[test]
    fn shuffled_reduction_agrees_with_folding() {
        let f = gf(5, 1);
        let n = 3;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(DEFAULT_SEED ^ 0x11);
        use rand::Rng;
        for _ in 0..60 {
            let len = rng.gen_range(0..8usize);
            let word: Vec<u8> = (0..len)
                .map(|_| rng.gen_range(1..=(2 * n) as u8))
                .collect();
            let direct = reduce_word(&f, n, &word).unwrap();
            for _ in 0..3 {
                let shuffled = reduce_word_shuffled(&f, n, &word, &mut rng).unwrap();
                assert_eq!(direct, shuffled, "word {word:?}");
            }
        }
    }

    #[test]
    fn action_is_a_homomorphism() {
        let f = gf(7, 1);
        let n = 4;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(DEFAULT_SEED ^ 0x22);
        use rand::Rng;
        let basis = b3_spin_basis();
        for _ in 0..20 {
            let word: Vec<u8> = (0..4)
                .map(|_| rng.gen_range(1..=(2 * n) as u8))
                .collect();
            let a = reduce_word(&f, n, &word[..2].to_vec().as_slice()).unwrap();
            let b = reduce_word(&f, n, &word[2..].to_vec().as_slice()).unwrap();
            let x = CliffordElement::monomial(
                &f,
                n,
                &basis[rng.gen_range(0..basis.len())],
                &f.one(),
            )
            .unwrap();
            let joint = spin_action(&a.mul(&b).unwrap(), &x).unwrap();
            let staged = spin_action(&a, &spin_action(&b, &x).unwrap()).unwrap();
            assert_eq!(joint, staged);
        }
    }

    #[test]
    fn group_inverse_really_inverts() {
        let f = gf(13, 1);
        let mut g = CliffordGroupElement::identity(&f, 5);
        g.push_factor(&f.integer(3), &[1, 7]).unwrap();
        g.push_factor(&f.integer(5), &[2, 3]).unwrap();
        g.push_factor(&f.integer(-2), &[6, 7]).unwrap();
        let prod = g.element().unwrap().mul(&g.inverse_element().unwrap()).unwrap();
        assert_eq!(prod, CliffordElement::one(&f, 5));
    }

    #[test]
    fn partner_monomials_are_rejected_as_factors() {
        let f = Field::rational();
        let mut g = CliffordGroupElement::identity(&f, 3);
        assert!(g.push_factor(&f.one(), &[1, 4]).is_err());
        assert!(g.push_factor(&f.one(), &[1, 2]).is_ok());
    }

    /// Every root element's conjugation action on the degree-1 span matches
    /// the even orthogonal natural module: the product over the defining
    /// factors of the corresponding natural root elements.
    #[test]
    fn vector_rep_matches_natural_action_for_all_roots() {
        let f = gf(13, 1);
        let rs = RootSystem::new(TypeLabel::B, 4).unwrap();
        let nat = natural_module(TypeLabel::D, 5, &f).unwrap();
        let t = f.integer(5);
        for a in 0..rs.n_roots() {
            let eps = halved_eps(&rs, a);
            let g = bn_root_element(&f, 4, &eps, &t).unwrap();
            let vr = vector_rep(&g).unwrap();
            // Expected: product of natural root elements per factor.
            let support: Vec<(usize, i64)> = eps
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(k, &c)| (k + 1, c))
                .collect();
            let expected = match support.as_slice() {
                [(i, si), (j, sj)] => {
                    let mut e5 = vec![0i64; 5];
                    e5[i - 1] = *si;
                    e5[j - 1] = *sj;
                    nat.generator(&format!("x[{}]", crate::chevmod::eps_label(&e5)), &t)
                        .unwrap()
                }
                [(i, s)] => {
                    let mut plus = vec![0i64; 5];
                    plus[i - 1] = *s;
                    plus[4] = 1;
                    let mut minus = vec![0i64; 5];
                    minus[i - 1] = *s;
                    minus[4] = -1;
                    let gp = nat
                        .generator(&format!("x[{}]", crate::chevmod::eps_label(&plus)), &t)
                        .unwrap();
                    let gm = nat
                        .generator(&format!("x[{}]", crate::chevmod::eps_label(&minus)), &t)
                        .unwrap();
                    gp.checked_mul(&gm).unwrap()
                }
                _ => unreachable!(),
            };
            assert_eq!(vr, expected, "root {:?}", rs.coeffs(a));
            // The fixed anisotropic vector e5 - f5 stays fixed.
            let mut v = vec![f.zero(); 10];
            v[8] = f.one();
            v[9] = f.integer(-1);
            assert_eq!(vr.mul_vec(&v).unwrap(), v, "root {:?}", rs.coeffs(a));
        }
    }

    #[test]
    fn spin_module_families_preserve_the_form() {
        let f = gf(13, 1);
        let m = b4_spin_module(&f).unwrap();
        assert_eq!(m.dimension(), 16);
        assert_eq!(m.families().len(), 36);
        for fam in m.families() {
            let g = fam.matrix(&f, &f.integer(2)).unwrap();
            assert!(m.preserves_form(&g).unwrap(), "{}", fam.label);
        }
    }

    #[test]
    fn spin_module_form_is_the_invariant_one() {
        let rat = Field::rational();
        let m = b4_spin_module(&rat).unwrap();
        let sols = crate::linalg::invariant_symmetric_forms(&rat, &m.lie_basis());
        assert_eq!(sols.len(), 1);
        let scale = sols[0][(0, 15)].inverse().unwrap();
        assert_eq!(&sols[0].scale(&scale), m.gram());
    }

    #[test]
    fn spin_one_parameter_law() {
        let f = gf(13, 1);
        let m = b4_spin_module(&f).unwrap();
        let (s, t) = (f.integer(4), f.integer(7));
        for label in ["x[1000]", "x[0111]", "x[-1222]", "x[0001]"] {
            let a = m.generator(label, &s).unwrap();
            let b = m.generator(label, &t).unwrap();
            let c = m.generator(label, &s.checked_add(&t).unwrap()).unwrap();
            assert_eq!(a.checked_mul(&b).unwrap(), c, "{label}");
        }
    }

    #[test]
    fn small_spin_module_derives_its_form() {
        let f = gf(2, 1);
        let m = b3_spin_module(&f).unwrap();
        assert_eq!(m.dimension(), 8);
        assert_eq!(m.families().len(), 21);
        for fam in m.families() {
            let g = fam.matrix(&f, &f.one()).unwrap();
            assert!(m.preserves_form(&g).unwrap(), "{}", fam.label);
        }
        // Over the rationals the derived pairing is antidiagonal up to sign.
        let rat = Field::rational();
        let mq = b3_spin_module(&rat).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                if i + j == 7 {
                    assert!(!mq.gram()[(i, j)].is_zero());
                } else {
                    assert!(mq.gram()[(i, j)].is_zero(), "({i},{j})");
                }
            }
        }
        assert_eq!(mq.gram()[(0, 7)], rat.one());
    }

    #[test]
    fn torus_exponents_are_weights() {
        let f = gf(13, 1);
        let m = b4_spin_module(&f).unwrap();
        // The empty monomial is the lowest weight vector, the full product
        // the highest; both pair only against the last coroot.
        assert_eq!(m.weight_exponents(0), vec![0, 0, 0, -1]);
        assert_eq!(m.weight_exponents(15), vec![0, 0, 0, 1]);
        let g = m.generator("h[4]", &f.integer(2)).unwrap();
        assert_eq!(g[(15, 15)], f.integer(2));
    }

    #[test]
    fn case_generators_fix_their_spaces() {
        let f = gf(13, 1);
        let data = b4_case_data(&f, &B4Case::K8PrimeNot3).unwrap();
        assert_eq!(data.generators.len(), 4);
        assert_eq!(data.subspaces.len(), 2);
        let basis = b4_spin_basis();
        let (_, w_root) = &data.subspaces[0];
        let rows: Vec<Vec<FieldElement>> = w_root.clone();
        let sub = crate::linalg::Subspace::span(f, 16, &rows).unwrap();
        assert_eq!(sub.dim(), 8);
        for (label, factors) in &data.generators {
            let fam = spin_additive_family(&f, 5, &basis, label, factors).unwrap();
            for raw in [1i64, 2, 5] {
                let g = fam.matrix(&f, &f.integer(raw)).unwrap();
                let image = sub.map(&g).unwrap();
                assert!(sub.contains(&image).unwrap(), "{label} at {raw}");
            }
        }
    }

    fn assert_generators_fix(f: &Field, data: &B4CaseData, params: &[i64]) {
        let basis = b4_spin_basis();
        for (sname, vs) in &data.subspaces {
            let sub = crate::linalg::Subspace::span(*f, 16, vs).unwrap();
            assert_eq!(sub.dim(), 8, "{sname}");
            for (label, factors) in &data.generators {
                let fam = spin_additive_family(f, 5, &basis, label, factors).unwrap();
                for &raw in params {
                    let g = fam.matrix(f, &f.integer(raw)).unwrap();
                    let image = sub.map(&g).unwrap();
                    assert!(sub.contains(&image).unwrap(), "{sname} {label} at {raw}");
                }
            }
        }
    }

    #[test]
    fn char_three_case_data_fixes_its_space() {
        let f = gf(3, 2);
        let data = b4_case_data(&f, &B4Case::K8PrimeIs3).unwrap();
        assert_eq!(data.generators.len(), 4);
        assert!(data.normalizer.is_some());
        assert_generators_fix(&f, &data, &[1, 2]);
    }

    #[test]
    fn char_two_case_data_fixes_its_space() {
        let f = gf(2, 2);
        let w = f.root_of_unity(3).unwrap();
        let case = B4Case::K8DoublePrime {
            a: f.one(),
            b: w.clone(),
            c: w.checked_mul(&w).unwrap(),
        };
        let data = b4_case_data(&f, &case).unwrap();
        assert_eq!(data.generators.len(), 6);
        assert_generators_fix(&f, &data, &[1]);
    }
}
