//! Explicit matrix models of the modules the case checks act on.
//!
//! Every module carries an ordered labeled basis, one-parameter generator
//! families (unipotent families polynomial in `t`, diagonal families given
//! by exponent vectors in `kappa`), the invariant bilinear form, and
//! quadratic values on basis vectors so quadratic forms stay meaningful in
//! characteristic 2.

use crate::field::{Field, FieldElement};
use crate::linalg::Matrix;
use crate::rootsys::{RootSystem, TypeLabel};
use crate::{Error, Result};

/// How a one-parameter generator family produces matrices.
#[derive(Clone, Debug)]
pub enum GeneratorRule {
    /// `g(t) = sum_k t^k M_k` with `M_0 = I`; defined for every `t`.
    Additive(Vec<Matrix>),
    /// `g(kappa) = diag(kappa^{d_i})`; defined for `kappa != 0`.
    Diagonal(Vec<i64>),
}

/// A labeled one-parameter family of module automorphisms.
#[derive(Clone, Debug)]
pub struct GeneratorFamily {
    pub label: String,
    pub rule: GeneratorRule,
}

impl GeneratorFamily {
    /// The matrix at a given parameter value.
    pub fn matrix(&self, field: &Field, param: &FieldElement) -> Result<Matrix> {
        match &self.rule {
            GeneratorRule::Additive(coeffs) => {
                let n = coeffs[0].rows();
                let mut out = Matrix::zero(*field, n, n);
                let mut power = field.one();
                for m in coeffs {
                    out = out.checked_add(&m.scale(&power))?;
                    power = power.checked_mul(param)?;
                }
                Ok(out)
            }
            GeneratorRule::Diagonal(exps) => {
                if param.is_zero() {
                    return Err(Error::Module(format!(
                        "torus parameter for {} must be nonzero",
                        self.label
                    )));
                }
                let n = exps.len();
                let mut out = Matrix::zero(*field, n, n);
                for (i, &d) in exps.iter().enumerate() {
                    out[(i, i)] = param.pow(d)?;
                }
                Ok(out)
            }
        }
    }

    /// Derivative at the identity: `M_1` for additive families, the exponent
    /// diagonal for torus families.
    pub fn linear_part(&self, field: &Field) -> Matrix {
        match &self.rule {
            GeneratorRule::Additive(coeffs) => {
                let n = coeffs[0].rows();
                if coeffs.len() > 1 {
                    coeffs[1].clone()
                } else {
                    Matrix::zero(*field, n, n)
                }
            }
            GeneratorRule::Diagonal(exps) => {
                let n = exps.len();
                Matrix::from_fn(*field, n, n, |i, j| {
                    if i == j {
                        field.integer(exps[i])
                    } else {
                        field.zero()
                    }
                })
            }
        }
    }

    pub fn is_diagonal(&self) -> bool {
        matches!(self.rule, GeneratorRule::Diagonal(_))
    }
}

/// A module given by explicit matrices: labeled basis, generator families,
/// invariant bilinear form, and (for orthogonal modules) quadratic values on
/// basis vectors.
#[derive(Clone, Debug)]
pub struct ExplicitModule {
    field: Field,
    basis: Vec<String>,
    families: Vec<GeneratorFamily>,
    gram: Matrix,
    quad: Option<Vec<FieldElement>>,
}

impl ExplicitModule {
    fn new(
        field: Field,
        basis: Vec<String>,
        families: Vec<GeneratorFamily>,
        gram: Matrix,
        quad: Option<Vec<FieldElement>>,
    ) -> ExplicitModule {
        debug_assert_eq!(gram.rows(), basis.len());
        debug_assert_eq!(gram.cols(), basis.len());
        if let Some(q) = &quad {
            debug_assert_eq!(q.len(), basis.len());
        }
        ExplicitModule {
            field,
            basis,
            families,
            gram,
            quad,
        }
    }

    /// Assembles a module from prebuilt parts; for sibling constructors.
    pub(crate) fn from_parts(
        field: Field,
        basis: Vec<String>,
        families: Vec<GeneratorFamily>,
        gram: Matrix,
        quad: Option<Vec<FieldElement>>,
    ) -> ExplicitModule {
        ExplicitModule::new(field, basis, families, gram, quad)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis
    }

    pub fn basis_index(&self, label: &str) -> Result<usize> {
        self.basis
            .iter()
            .position(|b| b == label)
            .ok_or_else(|| Error::Module(format!("no basis vector labeled {label}")))
    }

    /// Coordinate vector of the `i`-th basis vector.
    pub fn basis_vector(&self, i: usize) -> Vec<FieldElement> {
        let mut v = vec![self.field.zero(); self.dimension()];
        v[i] = self.field.one();
        v
    }

    pub fn families(&self) -> &[GeneratorFamily] {
        &self.families
    }

    pub fn family(&self, label: &str) -> Result<&GeneratorFamily> {
        self.families
            .iter()
            .find(|f| f.label == label)
            .ok_or_else(|| Error::Module(format!("no generator family labeled {label}")))
    }

    /// Generator matrix for the family with the given label.
    pub fn generator(&self, label: &str, param: &FieldElement) -> Result<Matrix> {
        self.family(label)?.matrix(&self.field, param)
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn bilinear(&self, u: &[FieldElement], v: &[FieldElement]) -> Result<FieldElement> {
        let gv = self.gram.mul_vec(v)?;
        if u.len() != gv.len() {
            return Err(Error::Shape(format!(
                "bilinear form on vectors of length {} and {}",
                u.len(),
                v.len()
            )));
        }
        let mut acc = self.field.zero();
        for (a, b) in u.iter().zip(&gv) {
            acc = acc.checked_add(&a.checked_mul(b)?)?;
        }
        Ok(acc)
    }

    pub fn has_quadratic(&self) -> bool {
        self.quad.is_some()
    }

    /// Quadratic values on basis vectors, when the module is orthogonal.
    pub fn quadratic_values(&self) -> Option<&[FieldElement]> {
        self.quad.as_deref()
    }

    /// `Q(sum a_i b_i) = sum a_i^2 Q(b_i) + sum_{i<j} a_i a_j B(b_i, b_j)`.
    pub fn quadratic(&self, v: &[FieldElement]) -> Result<FieldElement> {
        let quad = self
            .quad
            .as_ref()
            .ok_or_else(|| Error::Module("module carries no quadratic form".into()))?;
        if v.len() != quad.len() {
            return Err(Error::Shape(format!(
                "quadratic form on vector of length {}",
                v.len()
            )));
        }
        let mut acc = self.field.zero();
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            acc = acc.checked_add(&a.checked_mul(a)?.checked_mul(&quad[i])?)?;
            for (j, b) in v.iter().enumerate().skip(i + 1) {
                if b.is_zero() || self.gram[(i, j)].is_zero() {
                    continue;
                }
                let cross = a.checked_mul(b)?.checked_mul(&self.gram[(i, j)])?;
                acc = acc.checked_add(&cross)?;
            }
        }
        Ok(acc)
    }

    /// Whether `g` preserves the bilinear form, and the quadratic form when
    /// present (checked on basis vectors and pairwise sums, which determines
    /// it in every characteristic).
    pub fn preserves_form(&self, g: &Matrix) -> Result<bool> {
        let lhs = g.transpose().checked_mul(&self.gram)?.checked_mul(g)?;
        if lhs != self.gram {
            return Ok(false);
        }
        if self.quad.is_some() {
            let n = self.dimension();
            let mut images = Vec::with_capacity(n);
            for j in 0..n {
                images.push(g.mul_vec(&self.basis_vector(j))?);
            }
            for i in 0..n {
                if self.quadratic(&images[i])? != self.quad.as_ref().unwrap()[i] {
                    return Ok(false);
                }
                for j in i + 1..n {
                    let mut sum = images[i].clone();
                    for (s, x) in sum.iter_mut().zip(&images[j]) {
                        *s = s.checked_add(x)?;
                    }
                    let mut direct = self.basis_vector(i);
                    direct[j] = self.field.one();
                    if self.quadratic(&sum)? != self.quadratic(&direct)? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Linear parts of all generator families, in family order.
    pub fn lie_basis(&self) -> Vec<Matrix> {
        self.families
            .iter()
            .map(|f| f.linear_part(&self.field))
            .collect()
    }

    /// Exponent vector of a basis vector across the diagonal families, in
    /// family order; the weight in the coordinates these tori provide.
    pub fn weight_exponents(&self, i: usize) -> Vec<i64> {
        self.families
            .iter()
            .filter_map(|f| match &f.rule {
                GeneratorRule::Diagonal(exps) => Some(exps[i]),
                _ => None,
            })
            .collect()
    }
}

/// Formats an epsilon-coordinate root as a label like `e1-e2`, `2e1`, `-e1`.
pub fn eps_label(eps: &[i64]) -> String {
    let mut s = String::new();
    for (i, &c) in eps.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if c > 0 && !s.is_empty() {
            s.push('+');
        }
        match c {
            1 => {}
            -1 => s.push('-'),
            _ => s.push_str(&c.to_string()),
        }
        s.push_str(&format!("e{}", i + 1));
    }
    s
}

/// Formats a simple-root coefficient vector as a digit string, e.g. `0111`
/// for a positive root and `-0111` for its negative.
pub fn coeff_label(coeffs: &[i64]) -> String {
    let negative = coeffs.iter().any(|&c| c < 0);
    let mut s = String::new();
    if negative {
        s.push('-');
    }
    for &c in coeffs {
        s.push_str(&c.abs().to_string());
    }
    s
}

struct NaturalLayout {
    label: TypeLabel,
    rank: usize,
    dim: usize,
}

impl NaturalLayout {
    fn v0(&self) -> usize {
        debug_assert!(matches!(self.label, TypeLabel::B));
        0
    }

    fn e(&self, i: usize) -> usize {
        match self.label {
            TypeLabel::B => 2 * i - 1,
            TypeLabel::D => 2 * (i - 1),
            TypeLabel::C => i - 1,
            _ => unreachable!(),
        }
    }

    fn f(&self, i: usize) -> usize {
        match self.label {
            TypeLabel::B => 2 * i,
            TypeLabel::D => 2 * i - 1,
            TypeLabel::C => self.rank + i - 1,
            _ => unreachable!(),
        }
    }
}

/// The vector module of `SO_{2l+1}` (basis `v0,e1,f1,...`), `Sp_{2l}`
/// (basis `e1..el,f1..fl`) or `SO_{2l}` (basis `e1,f1,...`), with root
/// subgroups labeled by epsilon coordinates (`x[e1-e2]`, `x[e1]`, `x[2e1]`)
/// and the simple coroot tori `h[1]..h[l]`.
pub fn natural_module(label: TypeLabel, rank: usize, field: &Field) -> Result<ExplicitModule> {
    let dim = match label {
        TypeLabel::B => {
            if field.characteristic() == 2 {
                return Err(Error::Module(
                    "odd orthogonal vector module degenerates in characteristic 2".into(),
                ));
            }
            if rank == 0 {
                return Err(Error::Module("rank must be positive".into()));
            }
            2 * rank + 1
        }
        TypeLabel::C => {
            if rank == 0 {
                return Err(Error::Module("rank must be positive".into()));
            }
            2 * rank
        }
        TypeLabel::D => {
            if rank < 2 {
                return Err(Error::Module("even orthogonal rank must be at least 2".into()));
            }
            2 * rank
        }
        _ => {
            return Err(Error::Module(
                "natural module is defined for types B, C and D".into(),
            ))
        }
    };
    let lay = NaturalLayout { label, rank, dim };

    let mut basis = Vec::with_capacity(dim);
    match label {
        TypeLabel::B => {
            basis.push("v0".to_string());
            for i in 1..=rank {
                basis.push(format!("e{i}"));
                basis.push(format!("f{i}"));
            }
        }
        TypeLabel::D => {
            for i in 1..=rank {
                basis.push(format!("e{i}"));
                basis.push(format!("f{i}"));
            }
        }
        TypeLabel::C => {
            for i in 1..=rank {
                basis.push(format!("e{i}"));
            }
            for i in 1..=rank {
                basis.push(format!("f{i}"));
            }
        }
        _ => unreachable!(),
    }

    // Epsilon coordinate vectors of all roots, in a fixed enumeration.
    let mut roots: Vec<Vec<i64>> = Vec::new();
    let unit = |i: usize, c: i64| {
        let mut v = vec![0i64; rank];
        v[i - 1] = c;
        v
    };
    for i in 1..=rank {
        for j in i + 1..=rank {
            for (a, b) in [(1, -1), (-1, 1), (1, 1), (-1, -1)] {
                let mut v = unit(i, a);
                v[j - 1] = b;
                roots.push(v);
            }
        }
    }
    match label {
        TypeLabel::B => {
            for i in 1..=rank {
                roots.push(unit(i, 1));
                roots.push(unit(i, -1));
            }
        }
        TypeLabel::C => {
            for i in 1..=rank {
                roots.push(unit(i, 2));
                roots.push(unit(i, -2));
            }
        }
        _ => {}
    }

    let mut families = Vec::new();
    for eps in &roots {
        families.push(GeneratorFamily {
            label: format!("x[{}]", eps_label(eps)),
            rule: GeneratorRule::Additive(natural_root_action(field, &lay, eps)?),
        });
    }

    // Simple coroot tori; a basis vector of weight `mu` scales by
    // `kappa^{<mu, alpha_i^vee>}`.
    let simple = simple_roots_eps(label, rank);
    for (i, alpha) in simple.iter().enumerate() {
        let norm2: i64 = alpha.iter().map(|&x| x * x).sum();
        let mut exps = vec![0i64; dim];
        for k in 1..=rank {
            let pairing = 2 * alpha[k - 1] / norm2;
            debug_assert_eq!(2 * alpha[k - 1] % norm2, 0);
            exps[lay.e(k)] = pairing;
            exps[lay.f(k)] = -pairing;
        }
        families.push(GeneratorFamily {
            label: format!("h[{}]", i + 1),
            rule: GeneratorRule::Diagonal(exps),
        });
    }

    let mut gram = Matrix::zero(*field, dim, dim);
    let mut quad = vec![field.zero(); dim];
    match label {
        TypeLabel::B => {
            gram[(0, 0)] = field.integer(2);
            quad[0] = field.one();
            for i in 1..=rank {
                gram[(lay.e(i), lay.f(i))] = field.one();
                gram[(lay.f(i), lay.e(i))] = field.one();
            }
        }
        TypeLabel::D => {
            for i in 1..=rank {
                gram[(lay.e(i), lay.f(i))] = field.one();
                gram[(lay.f(i), lay.e(i))] = field.one();
            }
        }
        TypeLabel::C => {
            for i in 1..=rank {
                gram[(lay.e(i), lay.f(i))] = field.one();
                gram[(lay.f(i), lay.e(i))] = field.integer(-1);
            }
        }
        _ => unreachable!(),
    }
    let quad = match label {
        TypeLabel::C => None,
        _ => Some(quad),
    };

    Ok(ExplicitModule::new(
        *field,
        basis,
        families,
        gram,
        quad,
    ))
}

/// Epsilon coordinates of the simple roots for the natural constructions.
fn simple_roots_eps(label: TypeLabel, rank: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::with_capacity(rank);
    for i in 0..rank.saturating_sub(1) {
        let mut v = vec![0i64; rank];
        v[i] = 1;
        v[i + 1] = -1;
        out.push(v);
    }
    let mut last = vec![0i64; rank];
    match label {
        TypeLabel::B => last[rank - 1] = 1,
        TypeLabel::C => last[rank - 1] = 2,
        TypeLabel::D => {
            last[rank - 2] = 1;
            last[rank - 1] = 1;
        }
        _ => unreachable!(),
    }
    out.push(last);
    out
}

/// Coefficient matrices of the root subgroup attached to an epsilon root.
fn natural_root_action(
    field: &Field,
    lay: &NaturalLayout,
    eps: &[i64],
) -> Result<Vec<Matrix>> {
    let dim = lay.dim;
    let mut m1 = Matrix::zero(*field, dim, dim);
    let mut m2: Option<Matrix> = None;
    let support: Vec<(usize, i64)> = eps
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| (k + 1, c))
        .collect();
    let one = field.one();
    let neg = field.integer(-1);
    match (support.as_slice(), lay.label) {
        // e_j gains t e_i, f_i loses t f_j.
        ([(i, 1), (j, -1)], _) | ([(j, -1), (i, 1)], _) => {
            m1[(lay.e(*i), lay.e(*j))] = one.clone();
            m1[(lay.f(*j), lay.f(*i))] = neg.clone();
        }
        ([(i, 1), (j, 1)], TypeLabel::B | TypeLabel::D) => {
            m1[(lay.e(*i), lay.f(*j))] = one.clone();
            m1[(lay.e(*j), lay.f(*i))] = neg.clone();
        }
        ([(i, -1), (j, -1)], TypeLabel::B | TypeLabel::D) => {
            m1[(lay.f(*i), lay.e(*j))] = neg.clone();
            m1[(lay.f(*j), lay.e(*i))] = one.clone();
        }
        ([(i, 1), (j, 1)], TypeLabel::C) => {
            m1[(lay.e(*i), lay.f(*j))] = one.clone();
            m1[(lay.e(*j), lay.f(*i))] = one.clone();
        }
        ([(i, -1), (j, -1)], TypeLabel::C) => {
            m1[(lay.f(*i), lay.e(*j))] = one.clone();
            m1[(lay.f(*j), lay.e(*i))] = one.clone();
        }
        ([(i, 1)], TypeLabel::B) => {
            m1[(lay.e(*i), lay.v0())] = field.integer(2);
            m1[(lay.v0(), lay.f(*i))] = neg.clone();
            let mut q = Matrix::zero(*field, dim, dim);
            q[(lay.e(*i), lay.f(*i))] = neg.clone();
            m2 = Some(q);
        }
        ([(i, -1)], TypeLabel::B) => {
            m1[(lay.f(*i), lay.v0())] = field.integer(-2);
            m1[(lay.v0(), lay.e(*i))] = one.clone();
            let mut q = Matrix::zero(*field, dim, dim);
            q[(lay.f(*i), lay.e(*i))] = neg.clone();
            m2 = Some(q);
        }
        ([(i, 2)], TypeLabel::C) => {
            m1[(lay.e(*i), lay.f(*i))] = one.clone();
        }
        ([(i, -2)], TypeLabel::C) => {
            m1[(lay.f(*i), lay.e(*i))] = one.clone();
        }
        _ => {
            return Err(Error::Module(format!(
                "unsupported root pattern {eps:?} for this form type"
            )))
        }
    }
    let mut coeffs = vec![Matrix::identity(*field, dim), m1];
    if let Some(q) = m2 {
        coeffs.push(q);
    }
    Ok(coeffs)
}

/// The adjoint module of a simple group in a Chevalley basis: root vectors
/// `e[coeffs]` in the pinned root order, then Cartan vectors `h[i]`. Root
/// families are `x[coeffs]`, tori `h[i]`. The invariant form pairs `e_a`
/// with `e_{-a}` with value `norm2max/norm2(a)` and restricts to the
/// symmetrized Cartan matrix on the Cartan subalgebra.
pub fn adjoint_module(label: TypeLabel, rank: usize, field: &Field) -> Result<ExplicitModule> {
    let rs = RootSystem::new(label, rank)?;
    let nroots = rs.n_roots();
    let dim = nroots + rank;
    let row_h = |i: usize| nroots + i;

    let mut basis = Vec::with_capacity(dim);
    for r in 0..nroots {
        basis.push(format!("e[{}]", coeff_label(rs.coeffs(r))));
    }
    for i in 0..rank {
        basis.push(format!("h[{}]", i + 1));
    }

    let mut families = Vec::with_capacity(dim);
    for a in 0..nroots {
        let mut coeffs = vec![
            Matrix::identity(*field, dim),
            Matrix::zero(*field, dim, dim),
            Matrix::zero(*field, dim, dim),
        ];
        let mut top_power = 1usize;
        for b in 0..nroots {
            if b == rs.negative(a) {
                // x_a(t) e_{-a} = e_{-a} + t h_a - t^2 e_a.
                for (i, &c) in coroot_coeffs(&rs, a).iter().enumerate() {
                    if c != 0 {
                        coeffs[1][(row_h(i), b)] = field.integer(c);
                    }
                }
                coeffs[2][(a, b)] = field.integer(-1);
                top_power = top_power.max(2);
                continue;
            }
            // Along the chain b, b+a, b+2a, ...; the k-th coefficient is the
            // product of the first k structure constants divided by k!.
            let mut cur = b;
            let mut prod: i64 = 1;
            let mut factorial: i64 = 1;
            let mut k = 0usize;
            while let Some(next) = rs.add_roots(a, cur) {
                let n = rs
                    .structure_constant(a, cur)
                    .ok_or_else(|| Error::RootSystem("missing structure constant".into()))?;
                prod *= n;
                k += 1;
                factorial *= k as i64;
                if prod % factorial != 0 {
                    return Err(Error::RootSystem(
                        "non-integral divided power coefficient".into(),
                    ));
                }
                while coeffs.len() <= k {
                    coeffs.push(Matrix::zero(*field, dim, dim));
                }
                coeffs[k][(next, b)] = field.integer(prod / factorial);
                top_power = top_power.max(k);
                cur = next;
            }
        }
        for i in 0..rank {
            // x_a(t) h = h - t <a, alpha_i^vee> e_a.
            let pairing = rs.cartan_int(a, rs.simple(i));
            if pairing != 0 {
                coeffs[1][(a, row_h(i))] = field.integer(-pairing);
            }
        }
        coeffs.truncate(top_power + 1);
        families.push(GeneratorFamily {
            label: format!("x[{}]", coeff_label(rs.coeffs(a))),
            rule: GeneratorRule::Additive(coeffs),
        });
    }
    for i in 0..rank {
        let mut exps = vec![0i64; dim];
        for (b, e) in exps.iter_mut().enumerate().take(nroots) {
            *e = rs.cartan_int(b, rs.simple(i));
        }
        families.push(GeneratorFamily {
            label: format!("h[{}]", i + 1),
            rule: GeneratorRule::Diagonal(exps),
        });
    }

    let norm2max = (0..nroots).map(|r| rs.root_norm2(r)).max().unwrap();
    let mut gram = Matrix::zero(*field, dim, dim);
    let mut quad = vec![field.zero(); dim];
    for a in 0..nroots {
        gram[(a, rs.negative(a))] = field.integer(norm2max / rs.root_norm2(a));
    }
    for i in 0..rank {
        let di = norm2max / rs.root_norm2(rs.simple(i));
        for j in 0..rank {
            let v = di * rs.cartan_int(rs.simple(i), rs.simple(j));
            gram[(row_h(i), row_h(j))] = field.integer(v);
            if i == j {
                debug_assert_eq!(v % 2, 0);
                quad[row_h(i)] = field.integer(v / 2);
            }
        }
    }

    Ok(ExplicitModule::new(*field, basis, families, gram, Some(quad)))
}

/// Coefficients of the coroot of root `a` in the simple coroot basis:
/// scale the root coefficients by `norm2(alpha_i)/norm2(a)`.
fn coroot_coeffs(rs: &RootSystem, a: usize) -> Vec<i64> {
    rs.coeffs(a)
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let num = c * rs.root_norm2(rs.simple(i));
            debug_assert_eq!(num % rs.root_norm2(a), 0);
            num / rs.root_norm2(a)
        })
        .collect()
}

/// The 7-dimensional quotient of the adjoint module of `A_2` in
/// characteristic 3 by its 1-dimensional center. Basis `e1..e6` (root
/// vectors in the pinned order: both simple roots, their sum, then the
/// negatives) followed by `h`, the common image of the Cartan generators.
pub fn a2_adjoint_quotient(field: &Field) -> Result<ExplicitModule> {
    if field.characteristic() != 3 {
        return Err(Error::Module(
            "adjoint quotient requires characteristic 3".into(),
        ));
    }
    let full = adjoint_module(TypeLabel::A, 2, field)?;
    // Section picks h1 as the representative of h; projection sends both
    // Cartan coordinates to the h coordinate. Both are well defined here
    // because h1 - h2 is central and isotropic exactly in characteristic 3.
    let section = Matrix::from_fn(*field, 8, 7, |i, j| {
        if i == j && i < 6 || (i == 6 && j == 6) {
            field.one()
        } else {
            field.zero()
        }
    });
    let project = Matrix::from_fn(*field, 7, 8, |i, j| {
        if i == j && i < 6 || (i == 6 && (j == 6 || j == 7)) {
            field.one()
        } else {
            field.zero()
        }
    });

    let mut families = Vec::with_capacity(8);
    for fam in full.families() {
        let rule = match &fam.rule {
            GeneratorRule::Additive(coeffs) => GeneratorRule::Additive(
                coeffs
                    .iter()
                    .map(|m| project.checked_mul(m)?.checked_mul(&section))
                    .collect::<Result<Vec<_>>>()?,
            ),
            GeneratorRule::Diagonal(exps) => {
                let mut e = exps[..6].to_vec();
                e.push(0);
                GeneratorRule::Diagonal(e)
            }
        };
        families.push(GeneratorFamily {
            label: fam.label.clone(),
            rule,
        });
    }

    let gram = section.transpose().checked_mul(full.gram())?.checked_mul(&section)?;
    let mut quad = vec![field.zero(); 7];
    quad[6] = field.one();
    let basis = vec![
        "e1".into(),
        "e2".into(),
        "e3".into(),
        "e4".into(),
        "e5".into(),
        "e6".into(),
        "h".into(),
    ];
    Ok(ExplicitModule::new(*field, basis, families, gram, Some(quad)))
}

const SP4_DIM: usize = 10;

/// Positions in a 4x4 matrix (basis `e1,e2,f1,f2`) spanned by each basis
/// vector of the symplectic Lie algebra, plus the sign at the second
/// position. Order: root vectors for `e1-e2, -e1+e2, 2e1, -2e1, 2e2, -2e2,
/// e1+e2, -e1-e2`, then the two coroot diagonals.
const SP4_BASIS: [(usize, usize, Option<(usize, usize, i64)>); SP4_DIM] = [
    (0, 1, Some((3, 2, -1))),
    (1, 0, Some((2, 3, -1))),
    (0, 2, None),
    (2, 0, None),
    (1, 3, None),
    (3, 1, None),
    (0, 3, Some((1, 2, 1))),
    (3, 0, Some((2, 1, 1))),
    (0, 0, Some((2, 2, -1))),
    (1, 1, Some((3, 3, -1))),
];

const SP4_LABELS: [&str; SP4_DIM] = [
    "v[e1-e2]",
    "v[-e1+e2]",
    "v[2e1]",
    "v[-2e1]",
    "v[2e2]",
    "v[-2e2]",
    "v[e1+e2]",
    "v[-e1-e2]",
    "h1",
    "h2",
];

/// The 4x4 matrix with the support pattern of the `i`-th basis vector.
pub fn sp4_from_coords(field: &Field, coords: &[FieldElement]) -> Result<Matrix> {
    if coords.len() != SP4_DIM {
        return Err(Error::Shape(format!(
            "expected {} coordinates, got {}",
            SP4_DIM,
            coords.len()
        )));
    }
    let mut m = Matrix::zero(*field, 4, 4);
    for (c, (i, j, extra)) in coords.iter().zip(SP4_BASIS) {
        m[(i, j)] = m[(i, j)].checked_add(c)?;
        if let Some((k, l, s)) = extra {
            let signed = c.checked_mul(&field.integer(s))?;
            m[(k, l)] = m[(k, l)].checked_add(&signed)?;
        }
    }
    Ok(m)
}

/// Coordinates of a 4x4 matrix in the symplectic Lie algebra basis; errors
/// when the matrix does not satisfy the block symmetry constraints.
pub fn sp4_to_coords(m: &Matrix) -> Result<Vec<FieldElement>> {
    if m.rows() != 4 || m.cols() != 4 {
        return Err(Error::Shape("expected a 4x4 matrix".into()));
    }
    let field = m.field();
    let mut coords = Vec::with_capacity(SP4_DIM);
    for (i, j, extra) in SP4_BASIS {
        let c = m[(i, j)].clone();
        if let Some((k, l, s)) = extra {
            if m[(k, l)] != c.checked_mul(&field.integer(s))? {
                return Err(Error::Module(
                    "matrix is not in the symplectic Lie algebra".into(),
                ));
            }
        }
        coords.push(c);
    }
    Ok(coords)
}

/// The conjugation action `v -> g^{-1} v g` on the symplectic Lie algebra,
/// as a 10x10 matrix in the basis above.
pub fn sp4_adjoint_push(g: &Matrix) -> Result<Matrix> {
    let field = g.field();
    let ginv = g.inverse()?;
    let mut cols = Vec::with_capacity(SP4_DIM);
    for k in 0..SP4_DIM {
        let mut coords = vec![field.zero(); SP4_DIM];
        coords[k] = field.one();
        let v = sp4_from_coords(&field, &coords)?;
        let image = ginv.checked_mul(&v)?.checked_mul(g)?;
        cols.push(sp4_to_coords(&image)?);
    }
    Ok(Matrix::from_fn(field, SP4_DIM, SP4_DIM, |i, j| {
        cols[j][i].clone()
    }))
}

/// The adjoint module of `Sp_4` acting on its own Lie algebra by
/// `v -> g^{-1} v g`, with `Q(v) = Tr(v^2)`. Requires characteristic not 2.
pub fn sp4_adjoint(field: &Field) -> Result<ExplicitModule> {
    if field.characteristic() == 2 {
        return Err(Error::Module(
            "symplectic adjoint form degenerates in characteristic 2".into(),
        ));
    }
    let nat = natural_module(TypeLabel::C, 2, field)?;
    let mut families = Vec::new();
    for fam in nat.families() {
        let rule = match &fam.rule {
            GeneratorRule::Additive(coeffs) => {
                // g(t) = I + tE with E^2 = 0, so
                // g(t)^{-1} v g(t) = v + t(vE - Ev) - t^2 EvE.
                let e = &coeffs[1];
                let mut m1_cols = Vec::with_capacity(SP4_DIM);
                let mut m2_cols = Vec::with_capacity(SP4_DIM);
                for k in 0..SP4_DIM {
                    let mut c = vec![field.zero(); SP4_DIM];
                    c[k] = field.one();
                    let v = sp4_from_coords(field, &c)?;
                    let comm = v.checked_mul(e)?.checked_sub(&e.checked_mul(&v)?)?;
                    m1_cols.push(sp4_to_coords(&comm)?);
                    let sq = e.checked_mul(&v)?.checked_mul(e)?;
                    m2_cols.push(sp4_to_coords(&sq.scale(&field.integer(-1)))?);
                }
                let m1 = Matrix::from_fn(*field, SP4_DIM, SP4_DIM, |i, j| m1_cols[j][i].clone());
                let m2 = Matrix::from_fn(*field, SP4_DIM, SP4_DIM, |i, j| m2_cols[j][i].clone());
                GeneratorRule::Additive(vec![Matrix::identity(*field, SP4_DIM), m1, m2])
            }
            GeneratorRule::Diagonal(exps) => {
                // Conjugation by diag(kappa^{w_k}) scales each basis matrix
                // by kappa to the difference of column and row weights.
                let mut out = Vec::with_capacity(SP4_DIM);
                for (i, j, _) in SP4_BASIS {
                    out.push(exps[j] - exps[i]);
                }
                GeneratorRule::Diagonal(out)
            }
        };
        families.push(GeneratorFamily {
            label: fam.label.clone(),
            rule,
        });
    }

    let mut gram = Matrix::zero(*field, SP4_DIM, SP4_DIM);
    let mut quad = vec![field.zero(); SP4_DIM];
    let mut mats = Vec::with_capacity(SP4_DIM);
    for k in 0..SP4_DIM {
        let mut c = vec![field.zero(); SP4_DIM];
        c[k] = field.one();
        mats.push(sp4_from_coords(field, &c)?);
    }
    for i in 0..SP4_DIM {
        quad[i] = mats[i].checked_mul(&mats[i])?.trace()?;
        for j in 0..SP4_DIM {
            let tr = mats[i].checked_mul(&mats[j])?.trace()?;
            gram[(i, j)] = tr.checked_mul(&field.integer(2))?;
        }
    }

    let basis = SP4_LABELS.iter().map(|s| s.to_string()).collect();
    Ok(ExplicitModule::new(*field, basis, families, gram, Some(quad)))
}

/// Lexicographic pairs `(i, j)` with `i < j < n`: the wedge basis order.
fn wedge_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

/// The exterior square of a linear map, on the lexicographic wedge basis.
fn wedge_square(g: &Matrix) -> Matrix {
    let n = g.rows();
    let pairs = wedge_pairs(n);
    let field = g.field();
    Matrix::from_fn(field, pairs.len(), pairs.len(), |pq, ij| {
        let (p, q) = pairs[pq];
        let (i, j) = pairs[ij];
        &(&g[(p, i)] * &g[(q, j)]) - &(&g[(q, i)] * &g[(p, j)])
    })
}

/// The derivation `u ^ v -> Mu ^ v + u ^ Mv` on the wedge basis.
fn wedge_derivation(m: &Matrix) -> Matrix {
    let n = m.rows();
    let pairs = wedge_pairs(n);
    let field = m.field();
    let idx = |a: usize, b: usize| -> Option<(usize, i64)> {
        use std::cmp::Ordering;
        match a.cmp(&b) {
            Ordering::Less => Some((pairs.iter().position(|&p| p == (a, b)).unwrap(), 1)),
            Ordering::Greater => Some((pairs.iter().position(|&p| p == (b, a)).unwrap(), -1)),
            Ordering::Equal => None,
        }
    };
    let mut out = Matrix::zero(field, pairs.len(), pairs.len());
    for (col, &(i, j)) in pairs.iter().enumerate() {
        for p in 0..n {
            if !m[(p, i)].is_zero() {
                if let Some((row, s)) = idx(p, j) {
                    let v = &m[(p, i)] * &field.integer(s);
                    out[(row, col)] = &out[(row, col)] + &v;
                }
            }
            if !m[(p, j)].is_zero() {
                if let Some((row, s)) = idx(i, p) {
                    let v = &m[(p, j)] * &field.integer(s);
                    out[(row, col)] = &out[(row, col)] + &v;
                }
            }
        }
    }
    out
}

/// The 14 spanning vectors of the symplectic exterior-square module inside
/// the wedge basis of the rank-3 symplectic natural module, as columns of a
/// 15x14 matrix. `omega` must be a primitive cube root of unity.
fn c3_lambda2_columns(field: &Field, omega: &FieldElement) -> Matrix {
    let pairs = wedge_pairs(6);
    let pidx = |a: usize, b: usize| pairs.iter().position(|&p| p == (a, b)).unwrap();
    // Natural basis order e1,e2,e3,f1,f2,f3 = 0..5.
    let omega2 = omega * omega;
    let single: [(usize, usize); 14] = [
        (0, 1), // v1 = e1^e2
        (0, 2), // v2 = e1^e3
        (1, 2), // v3 = e2^e3
        (0, 5), // v4 = e1^f3
        (1, 5), // v5 = e2^f3
        (0, 4), // v6 = e1^f2
        (0, 3), // v7, v8 start from e1^f1
        (0, 3),
        (1, 3), // v9 = e2^f1
        (2, 4), // v10 = e3^f2
        (2, 3), // v11 = e3^f1
        (4, 5), // v12 = f2^f3
        (3, 5), // v13 = f1^f3
        (3, 4), // v14 = f1^f2
    ];
    let mut b = Matrix::zero(*field, 15, 14);
    for (col, &(i, j)) in single.iter().enumerate() {
        b[(pidx(i, j), col)] = field.one();
    }
    // v7 = e1^f1 + w e2^f2 + w^2 e3^f3, v8 the conjugate combination.
    b[(pidx(1, 4), 6)] = omega.clone();
    b[(pidx(2, 5), 6)] = omega2.clone();
    b[(pidx(1, 4), 7)] = omega2;
    b[(pidx(2, 5), 7)] = omega.clone();
    b
}

/// Restricts a wedge-space operator to the span of the given columns;
/// errors when the span is not preserved.
fn restrict_to_span(big: &Matrix, cols: &Matrix) -> Result<Matrix> {
    let field = big.field();
    let image = big.checked_mul(cols)?;
    let mut out = Matrix::zero(field, cols.cols(), cols.cols());
    for j in 0..cols.cols() {
        let target: Vec<FieldElement> = (0..image.rows()).map(|i| image[(i, j)].clone()).collect();
        let sol = cols
            .solve(&target)?
            .ok_or_else(|| Error::Module("operator does not preserve the submodule".into()))?;
        for i in 0..cols.cols() {
            out[(i, j)] = sol[i].clone();
        }
    }
    Ok(out)
}

/// The 14-dimensional exterior-square module of `Sp_6` in characteristic
/// not 3, on the basis `v1..v14`. The two zero-weight vectors `v7, v8` pair
/// to 3; all other basis vectors pair antidiagonally (`v_i` with
/// `v_{15-i}`) with value 1 and have quadratic value 0.
pub fn c3_lambda2(field: &Field) -> Result<ExplicitModule> {
    if field.characteristic() == 3 {
        return Err(Error::Module(
            "exterior-square construction requires characteristic not 3".into(),
        ));
    }
    let omega = field.root_of_unity(3)?;
    let cols = c3_lambda2_columns(field, &omega);
    let nat = natural_module(TypeLabel::C, 3, field)?;

    let mut families = Vec::new();
    for fam in nat.families() {
        let rule = match &fam.rule {
            GeneratorRule::Additive(coeffs) => {
                let m = &coeffs[1];
                let l1 = wedge_derivation(m);
                let l2 = wedge_square(m);
                GeneratorRule::Additive(vec![
                    Matrix::identity(*field, 14),
                    restrict_to_span(&l1, &cols)?,
                    restrict_to_span(&l2, &cols)?,
                ])
            }
            GeneratorRule::Diagonal(exps) => {
                let pairs = wedge_pairs(6);
                // Every v_i is a weight vector, so exponents add along its
                // support (v7, v8 have weight zero).
                let mut out = Vec::with_capacity(14);
                let colmat = &cols;
                for j in 0..14 {
                    let support: Vec<usize> = (0..15)
                        .filter(|&i| !colmat[(i, j)].is_zero())
                        .collect();
                    let (a, b) = pairs[support[0]];
                    let w = exps[a] + exps[b];
                    debug_assert!(support
                        .iter()
                        .all(|&s| exps[pairs[s].0] + exps[pairs[s].1] == w));
                    out.push(w);
                }
                GeneratorRule::Diagonal(out)
            }
        };
        families.push(GeneratorFamily {
            label: fam.label.clone(),
            rule,
        });
    }

    let mut gram = Matrix::zero(*field, 14, 14);
    for i in 0..6 {
        gram[(i, 13 - i)] = field.one();
        gram[(13 - i, i)] = field.one();
    }
    gram[(6, 7)] = field.integer(3);
    gram[(7, 6)] = field.integer(3);
    let quad = vec![field.zero(); 14];
    let basis = (1..=14).map(|i| format!("v{i}")).collect();
    Ok(ExplicitModule::new(*field, basis, families, gram, Some(quad)))
}

/// The action of a 6x6 matrix on the 14-dimensional exterior-square module,
/// in the `v1..v14` basis; errors when the matrix does not preserve the
/// submodule (it does whenever the matrix is symplectic).
pub fn c3_lambda2_induced(field: &Field, g: &Matrix) -> Result<Matrix> {
    if g.rows() != 6 || g.cols() != 6 {
        return Err(Error::Shape("expected a 6x6 matrix".into()));
    }
    let omega = field.root_of_unity(3)?;
    let cols = c3_lambda2_columns(field, &omega);
    restrict_to_span(&wedge_square(g), &cols)
}

/// A tensor product of two explicit modules, with the product module and
/// both factors.
#[derive(Clone, Debug)]
pub struct TensorModule {
    pub left: ExplicitModule,
    pub right: ExplicitModule,
    pub module: ExplicitModule,
}

/// Tensor product: basis `l*r` in lexicographic order, generator families
/// relabeled `L:...` and `R:...`, Gram matrix the Kronecker product. Two
/// alternating factors give an orthogonal module whose basis tensors have
/// quadratic value 0 (the characteristic-2 convention, consistent with the
/// polarization in all other characteristics); a mixed product is
/// alternating; two orthogonal factors require odd characteristic.
pub fn tensor_module(left: &ExplicitModule, right: &ExplicitModule) -> Result<TensorModule> {
    if left.field() != right.field() {
        return Err(Error::MixedFields(
            left.field().name(),
            right.field().name(),
        ));
    }
    let field = *left.field();
    let (dl, dr) = (left.dimension(), right.dimension());
    let dim = dl * dr;

    let mut basis = Vec::with_capacity(dim);
    for l in left.basis_labels() {
        for r in right.basis_labels() {
            basis.push(format!("{l}*{r}"));
        }
    }

    let idl = Matrix::identity(field, dl);
    let idr = Matrix::identity(field, dr);
    let mut families = Vec::new();
    for fam in left.families() {
        let rule = match &fam.rule {
            GeneratorRule::Additive(coeffs) => {
                GeneratorRule::Additive(coeffs.iter().map(|m| m.kronecker(&idr)).collect())
            }
            GeneratorRule::Diagonal(exps) => {
                GeneratorRule::Diagonal((0..dim).map(|k| exps[k / dr]).collect())
            }
        };
        families.push(GeneratorFamily {
            label: format!("L:{}", fam.label),
            rule,
        });
    }
    for fam in right.families() {
        let rule = match &fam.rule {
            GeneratorRule::Additive(coeffs) => {
                GeneratorRule::Additive(coeffs.iter().map(|m| idl.kronecker(m)).collect())
            }
            GeneratorRule::Diagonal(exps) => {
                GeneratorRule::Diagonal((0..dim).map(|k| exps[k % dr]).collect())
            }
        };
        families.push(GeneratorFamily {
            label: format!("R:{}", fam.label),
            rule,
        });
    }

    let gram = left.gram().kronecker(right.gram());
    let quad = match (left.quadratic_values(), right.quadratic_values()) {
        (None, None) => Some(vec![field.zero(); dim]),
        (Some(_), None) | (None, Some(_)) => None,
        (Some(ql), Some(qr)) => {
            if field.characteristic() == 2 {
                return Err(Error::Module(
                    "tensor of two orthogonal modules is undetermined in characteristic 2".into(),
                ));
            }
            let two = field.integer(2);
            let mut q = Vec::with_capacity(dim);
            for a in ql {
                for b in qr {
                    q.push(a.checked_mul(b)?.checked_mul(&two)?);
                }
            }
            Some(q)
        }
    };

    let module = ExplicitModule::new(field, basis, families, gram, quad);
    Ok(TensorModule {
        left: left.clone(),
        right: right.clone(),
        module,
    })
}

/// The rank-1 module twisted by a Frobenius power: 2x2 matrices `v` with
/// `g.v = g^T v g^{(q)}`, quadratic form the determinant. Basis
/// `m11,m12,m21,m22`; families `x+`, `x-` and the torus `h`.
pub fn a1_twisted_module(q: u64, field: &Field) -> Result<ExplicitModule> {
    let p = field.characteristic();
    if p == 0 {
        return Err(Error::Module(
            "twisted module requires positive characteristic".into(),
        ));
    }
    let mut power = p;
    while power < q {
        power = power.saturating_mul(p);
    }
    if power != q || q <= 1 {
        return Err(Error::Module(format!(
            "twist parameter {q} is not a proper power of the characteristic {p}"
        )));
    }
    if q > 4096 {
        return Err(Error::Module("twist parameter too large".into()));
    }
    let qs = q as usize;
    let dim = 4;
    let zero = || Matrix::zero(*field, dim, dim);

    // Coordinates (a,b,c,d) for v = [[a,b],[c,d]].
    // (I + tE12)^T v (I + t^q E12) = v + t E21 v + t^q v E12 + t^{q+1} E21 v E12.
    let mut plus = vec![zero(); qs + 2];
    plus[0] = Matrix::identity(*field, dim);
    plus[1][(2, 0)] = field.one();
    plus[1][(3, 1)] = field.one();
    plus[qs][(1, 0)] = field.one();
    plus[qs][(3, 2)] = field.one();
    plus[qs + 1][(3, 0)] = field.one();

    let mut minus = vec![zero(); qs + 2];
    minus[0] = Matrix::identity(*field, dim);
    minus[1][(0, 2)] = field.one();
    minus[1][(1, 3)] = field.one();
    minus[qs][(0, 1)] = field.one();
    minus[qs][(2, 3)] = field.one();
    minus[qs + 1][(0, 3)] = field.one();

    let qi = q as i64;
    let families = vec![
        GeneratorFamily {
            label: "x+".into(),
            rule: GeneratorRule::Additive(plus),
        },
        GeneratorFamily {
            label: "x-".into(),
            rule: GeneratorRule::Additive(minus),
        },
        GeneratorFamily {
            label: "h".into(),
            rule: GeneratorRule::Diagonal(vec![1 + qi, 1 - qi, qi - 1, -1 - qi]),
        },
    ];

    // Polarization of det: B(v, w) = det(v+w) - det v - det w.
    let mut gram = Matrix::zero(*field, dim, dim);
    gram[(0, 3)] = field.one();
    gram[(3, 0)] = field.one();
    gram[(1, 2)] = field.integer(-1);
    gram[(2, 1)] = field.integer(-1);
    let quad = vec![field.zero(); dim];

    let basis = vec!["m11".into(), "m12".into(), "m21".into(), "m22".into()];
    Ok(ExplicitModule::new(*field, basis, families, gram, Some(quad)))
}

/// Families of restricted quadratic forms on small zero-weight spaces, in
/// the natural diagonal coordinates of each module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZwFamily {
    /// Exterior square of the symplectic natural module; `l` coordinates
    /// summing to zero, `Q = sum a_i^2 + sum_{i<j} a_i a_j`.
    ClLambda2,
    /// Rank-2 special linear adjoint: `a^2 + b^2 + ab`.
    A2Adjoint,
    /// Rank-3 special linear adjoint in characteristic 2: `a^2 + b^2 + ab`.
    A3AdjointP2,
    /// The 14-dimensional exceptional module: `a^2 + b^2 + ab`.
    G2Lambda2,
    /// Rank-2 odd orthogonal adjoint: `a^2 + b^2`.
    B2Adjoint,
}

/// A zero-weight quadratic form evaluator.
#[derive(Clone, Debug)]
pub struct ZeroWeightForm {
    family: ZwFamily,
    vars: usize,
}

/// Builds the evaluator; `vars` is the coordinate count (free for the
/// exterior-square family, fixed at 2 for the others).
pub fn zero_weight_form(family: ZwFamily, vars: usize) -> Result<ZeroWeightForm> {
    match family {
        ZwFamily::ClLambda2 => {
            if vars < 2 {
                return Err(Error::Module(
                    "need at least two diagonal coordinates".into(),
                ));
            }
        }
        _ => {
            if vars != 2 {
                return Err(Error::Module("this family has two coordinates".into()));
            }
        }
    }
    Ok(ZeroWeightForm { family, vars })
}

impl ZeroWeightForm {
    pub fn family(&self) -> ZwFamily {
        self.family
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn eval(&self, a: &[FieldElement]) -> Result<FieldElement> {
        if a.len() != self.vars {
            return Err(Error::Shape(format!(
                "expected {} coordinates, got {}",
                self.vars,
                a.len()
            )));
        }
        let field = a[0].field();
        match self.family {
            ZwFamily::ClLambda2 => {
                let mut acc = field.zero();
                for (i, x) in a.iter().enumerate() {
                    acc = acc.checked_add(&x.checked_mul(x)?)?;
                    for y in &a[i + 1..] {
                        acc = acc.checked_add(&x.checked_mul(y)?)?;
                    }
                }
                Ok(acc)
            }
            ZwFamily::A2Adjoint | ZwFamily::A3AdjointP2 | ZwFamily::G2Lambda2 => {
                let (x, y) = (&a[0], &a[1]);
                let mut acc = x.checked_mul(x)?;
                acc = acc.checked_add(&y.checked_mul(y)?)?;
                acc.checked_add(&x.checked_mul(y)?)
            }
            ZwFamily::B2Adjoint => {
                let (x, y) = (&a[0], &a[1]);
                x.checked_mul(x)?.checked_add(&y.checked_mul(y)?)
            }
        }
    }

    pub fn is_singular(&self, a: &[FieldElement]) -> Result<bool> {
        Ok(self.eval(a)?.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, k: u32) -> Field {
        Field::finite(p, k).unwrap()
    }

    /// The structure constant table of the rank-2 special linear system in
    /// the pinned order (both simple roots, their sum, then negatives),
    /// normalized by N(a1, a2) = +1.
    #[test]
    fn a2_structure_constants_match_reference() {
        let rs = RootSystem::new(TypeLabel::A, 2).unwrap();
        let expected: [[i64; 6]; 6] = [
            [0, 1, 0, 0, 0, -1],
            [-1, 0, 0, 0, 0, 1],
            [0, 0, 0, -1, 1, 0],
            [0, 0, 1, 0, -1, 0],
            [0, 0, -1, 1, 0, 0],
            [1, -1, 0, 0, 0, 0],
        ];
        for i in 0..6 {
            for j in 0..6 {
                let got = rs.structure_constant(i, j).unwrap_or(0);
                assert_eq!(got, expected[i][j], "N[{i}][{j}]");
            }
        }
    }

    fn additive_coeffs(m: &ExplicitModule, label: &str) -> Vec<Matrix> {
        match &m.family(label).unwrap().rule {
            GeneratorRule::Additive(c) => c.clone(),
            _ => panic!("expected additive family"),
        }
    }

    fn diagonal_exps(m: &ExplicitModule, label: &str) -> Vec<i64> {
        match &m.family(label).unwrap().rule {
            GeneratorRule::Diagonal(e) => e.clone(),
            _ => panic!("expected diagonal family"),
        }
    }

    fn int_matrix(field: &Field, entries: &[(usize, usize, i64)]) -> Matrix {
        let mut m = Matrix::zero(*field, 7, 7);
        for &(i, j, v) in entries {
            m[(i, j)] = field.integer(v);
        }
        m
    }

    #[test]
    fn quotient_unipotent_matrices_are_the_known_ones() {
        let f = gf(3, 3);
        let m = a2_adjoint_quotient(&f).unwrap();
        let id = Matrix::identity(f, 7);
        // (label, degree-1 entries, degree-2 entries)
        let cases: Vec<(&str, Vec<(usize, usize, i64)>, Vec<(usize, usize, i64)>)> = vec![
            (
                "x[10]",
                vec![(0, 6, 1), (2, 1, 1), (4, 5, -1), (6, 3, 1)],
                vec![(0, 3, -1)],
            ),
            (
                "x[01]",
                vec![(1, 6, 1), (2, 0, -1), (3, 5, 1), (6, 4, 1)],
                vec![(1, 4, -1)],
            ),
            (
                "x[11]",
                vec![(0, 4, 1), (1, 3, -1), (2, 6, -1), (6, 5, -1)],
                vec![(2, 5, -1)],
            ),
            (
                "x[-10]",
                vec![(1, 2, 1), (3, 6, -1), (5, 4, -1), (6, 0, -1)],
                vec![(3, 0, -1)],
            ),
            (
                "x[-01]",
                vec![(0, 2, -1), (4, 6, -1), (5, 3, 1), (6, 1, -1)],
                vec![(4, 1, -1)],
            ),
            (
                "x[-11]",
                vec![(3, 1, -1), (4, 0, 1), (5, 6, 1), (6, 2, 1)],
                vec![(5, 2, -1)],
            ),
        ];
        for (label, deg1, deg2) in cases {
            let got = additive_coeffs(&m, label);
            assert_eq!(got.len(), 3, "{label} should have degree 2");
            assert_eq!(got[0], id, "{label} degree 0");
            assert_eq!(got[1], int_matrix(&f, &deg1), "{label} degree 1");
            assert_eq!(got[2], int_matrix(&f, &deg2), "{label} degree 2");
        }
    }

    #[test]
    fn quotient_torus_exponents_are_the_known_ones() {
        let f = gf(3, 3);
        let m = a2_adjoint_quotient(&f).unwrap();
        assert_eq!(diagonal_exps(&m, "h[1]"), vec![2, -1, 1, -2, 1, -1, 0]);
        assert_eq!(diagonal_exps(&m, "h[2]"), vec![-1, 2, 1, 1, -2, -1, 0]);
    }

    #[test]
    fn quotient_form_matches_the_known_one() {
        let f = gf(3, 3);
        let m = a2_adjoint_quotient(&f).unwrap();
        for i in 0..7 {
            for j in 0..7 {
                let expected = if i < 6 && j < 6 && (i + 3 == j || j + 3 == i) {
                    f.one()
                } else if i == 6 && j == 6 {
                    f.integer(-1)
                } else {
                    f.zero()
                };
                assert_eq!(m.gram()[(i, j)], expected, "gram[{i}][{j}]");
            }
        }
        let q = m.quadratic_values().unwrap();
        for (i, v) in q.iter().enumerate().take(6) {
            assert!(v.is_zero(), "Q(e{})", i + 1);
        }
        assert_eq!(q[6], f.one());
    }

    #[test]
    fn quotient_families_preserve_the_form() {
        let f = gf(3, 3);
        let m = a2_adjoint_quotient(&f).unwrap();
        let g = f.root_of_unity(26).unwrap();
        for fam in m.families() {
            let mat = fam.matrix(&f, &g).unwrap();
            assert!(m.preserves_form(&mat).unwrap(), "{}", fam.label);
        }
    }

    #[test]
    fn quotient_commutator_matches_structure_constant() {
        let f = gf(3, 3);
        let m = a2_adjoint_quotient(&f).unwrap();
        let s = f.root_of_unity(13).unwrap();
        let t = f.integer(2);
        let a = m.generator("x[10]", &s).unwrap();
        let b = m.generator("x[01]", &t).unwrap();
        let ai = m.generator("x[10]", &(-s.clone())).unwrap();
        let bi = m.generator("x[01]", &(-t.clone())).unwrap();
        let comm = a
            .checked_mul(&b)
            .unwrap()
            .checked_mul(&ai)
            .unwrap()
            .checked_mul(&bi)
            .unwrap();
        // [x_a1(s), x_a2(t)] = x_{a1+a2}(N(a1,a2) s t) with N(a1, a2) = 1.
        let st = s.checked_mul(&t).unwrap();
        let expected = m.generator("x[11]", &st).unwrap();
        assert_eq!(comm, expected);
    }

    /// Composing the three negative-root generators with parameters
    /// (t, -t, t^2) translates e1 + e2 by exactly t^3 e6 in characteristic
    /// 3: the cross terms carry coefficient 3.
    #[test]
    fn negative_unipotent_translates_sum_by_cube() {
        let f = gf(3, 3);
        let m = a2_adjoint_quotient(&f).unwrap();
        let t = f.root_of_unity(26).unwrap();
        let g = m
            .generator("x[-10]", &t)
            .unwrap()
            .checked_mul(&m.generator("x[-01]", &(-t.clone())).unwrap())
            .unwrap()
            .checked_mul(&m.generator("x[-11]", &t.checked_mul(&t).unwrap()).unwrap())
            .unwrap();
        let mut y = vec![f.zero(); 7];
        y[0] = f.one();
        y[1] = f.one();
        let image = g.mul_vec(&y).unwrap();
        let mut expected = y.clone();
        expected[5] = t.pow(3).unwrap();
        assert_eq!(image, expected);
    }

    #[test]
    fn quotient_needs_characteristic_three() {
        assert!(a2_adjoint_quotient(&gf(5, 1)).is_err());
        assert!(a2_adjoint_quotient(&Field::rational()).is_err());
    }

    #[test]
    fn odd_orthogonal_natural_action_columns() {
        let f = gf(7, 1);
        let m = natural_module(TypeLabel::B, 3, &f).unwrap();
        assert_eq!(m.dimension(), 7);
        let t = f.integer(2);
        // Short root e1: v0 gains 2t e1, f1 becomes f1 - t v0 - t^2 e1.
        let g = m.generator("x[e1]", &t).unwrap();
        let v0 = m.basis_index("v0").unwrap();
        let e1 = m.basis_index("e1").unwrap();
        let f1 = m.basis_index("f1").unwrap();
        assert_eq!(g[(e1, v0)], f.integer(4));
        assert_eq!(g[(v0, f1)], f.integer(-2));
        assert_eq!(g[(e1, f1)], f.integer(-4));
        assert_eq!(g[(v0, v0)], f.one());
        // Long root e1 - e2: e2 gains t e1, f1 loses t f2.
        let g = m.generator("x[e1-e2]", &t).unwrap();
        let e2 = m.basis_index("e2").unwrap();
        let f2 = m.basis_index("f2").unwrap();
        assert_eq!(g[(e1, e2)], t);
        assert_eq!(g[(f2, f1)], f.integer(-2));
        // e1 + e2: f2 gains t e1, f1 loses t e2.
        let g = m.generator("x[e1+e2]", &t).unwrap();
        assert_eq!(g[(e1, f2)], t);
        assert_eq!(g[(e2, f1)], f.integer(-2));
        // -e1 - e2: e2 loses t f1, e1 gains t f2.
        let g = m.generator("x[-e1-e2]", &t).unwrap();
        assert_eq!(g[(f1, e2)], f.integer(-2));
        assert_eq!(g[(f2, e1)], t);
    }

    #[test]
    fn natural_modules_have_group_dimension_many_families() {
        let f = Field::rational();
        assert_eq!(natural_module(TypeLabel::B, 3, &f).unwrap().families().len(), 21);
        assert_eq!(natural_module(TypeLabel::C, 3, &f).unwrap().families().len(), 21);
        assert_eq!(natural_module(TypeLabel::D, 4, &f).unwrap().families().len(), 28);
        assert_eq!(natural_module(TypeLabel::D, 5, &f).unwrap().families().len(), 45);
    }

    #[test]
    fn natural_families_preserve_forms() {
        let cases = [
            natural_module(TypeLabel::B, 3, &gf(7, 1)).unwrap(),
            natural_module(TypeLabel::C, 2, &gf(5, 2)).unwrap(),
            natural_module(TypeLabel::C, 3, &Field::rational()).unwrap(),
            natural_module(TypeLabel::D, 4, &gf(2, 2)).unwrap(),
            natural_module(TypeLabel::D, 5, &gf(3, 1)).unwrap(),
        ];
        for m in &cases {
            let f = m.field();
            for fam in m.families() {
                for raw in [1i64, 2, -3] {
                    let param = f.integer(raw);
                    if param.is_zero() {
                        continue;
                    }
                    let g = fam.matrix(f, &param).unwrap();
                    assert!(m.preserves_form(&g).unwrap(), "{} at {raw}", fam.label);
                }
            }
        }
    }

    #[test]
    fn one_parameter_laws() {
        let m = natural_module(TypeLabel::B, 2, &gf(7, 1)).unwrap();
        let f = m.field();
        let (s, t) = (f.integer(3), f.integer(5));
        for fam in m.families() {
            if fam.is_diagonal() {
                let g = fam.matrix(f, &s).unwrap();
                let h = fam.matrix(f, &t).unwrap();
                let st = fam.matrix(f, &s.checked_mul(&t).unwrap()).unwrap();
                assert_eq!(g.checked_mul(&h).unwrap(), st, "{}", fam.label);
            } else {
                let g = fam.matrix(f, &s).unwrap();
                let h = fam.matrix(f, &t).unwrap();
                let st = fam.matrix(f, &s.checked_add(&t).unwrap()).unwrap();
                assert_eq!(g.checked_mul(&h).unwrap(), st, "{}", fam.label);
            }
        }
    }

    #[test]
    fn odd_characteristic_guard_for_odd_orthogonal() {
        assert!(natural_module(TypeLabel::B, 3, &gf(2, 1)).is_err());
    }

    #[test]
    fn adjoint_modules_preserve_their_forms() {
        for (label, rank, field) in [
            (TypeLabel::A, 2, gf(7, 1)),
            (TypeLabel::B, 2, gf(5, 1)),
            (TypeLabel::G, 2, gf(7, 1)),
            (TypeLabel::A, 2, Field::rational()),
        ] {
            let m = adjoint_module(label, rank, &field).unwrap();
            for fam in m.families() {
                let g = fam.matrix(&field, &field.integer(2)).unwrap();
                assert!(m.preserves_form(&g).unwrap(), "{:?} {}", label, fam.label);
            }
        }
    }

    #[test]
    fn adjoint_cartan_quadratic_values() {
        let f = Field::rational();
        let a2 = adjoint_module(TypeLabel::A, 2, &f).unwrap();
        let q = a2.quadratic_values().unwrap();
        assert_eq!(q[6], f.one());
        assert_eq!(q[7], f.one());
        let b2 = adjoint_module(TypeLabel::B, 2, &f).unwrap();
        let q = b2.quadratic_values().unwrap();
        assert_eq!(q[8], f.one());
        assert_eq!(q[9], f.integer(2));
        let g2 = adjoint_module(TypeLabel::G, 2, &f).unwrap();
        let q = g2.quadratic_values().unwrap();
        assert_eq!(q[12], f.integer(3));
        assert_eq!(q[13], f.one());
    }

    #[test]
    fn exterior_square_matches_induced_action() {
        let f = gf(7, 1);
        let m = c3_lambda2(&f).unwrap();
        assert_eq!(m.dimension(), 14);
        let nat = natural_module(TypeLabel::C, 3, &f).unwrap();
        let t = f.integer(3);
        for label in ["x[e1-e2]", "x[e2+e3]", "x[2e1]", "x[-e1-e3]", "x[-2e3]"] {
            let small = nat.generator(label, &t).unwrap();
            let induced = c3_lambda2_induced(&f, &small).unwrap();
            let direct = m.generator(label, &t).unwrap();
            assert_eq!(induced, direct, "{label}");
        }
    }

    #[test]
    fn exterior_square_form_is_the_invariant_one() {
        // Derive the space of invariant symmetric forms from the Lie algebra
        // action and check it is spanned by the stored Gram matrix.
        let f = Field::cyclotomic(3).unwrap();
        let m = c3_lambda2(&f).unwrap();
        let lie = m.lie_basis();
        let sols = crate::linalg::invariant_symmetric_forms(&f, &lie);
        assert_eq!(sols.len(), 1);
        // Normalize both at the (v1, v14) entry.
        let scale = sols[0][(0, 13)].inverse().unwrap();
        assert_eq!(&sols[0].scale(&scale), m.gram());
    }

    #[test]
    fn exterior_square_families_preserve_the_form() {
        let f = gf(7, 1);
        let m = c3_lambda2(&f).unwrap();
        for fam in m.families() {
            let g = fam.matrix(&f, &f.integer(2)).unwrap();
            assert!(m.preserves_form(&g).unwrap(), "{}", fam.label);
        }
    }

    #[test]
    fn exterior_square_zero_weight_vectors() {
        let f = gf(7, 1);
        let m = c3_lambda2(&f).unwrap();
        assert_eq!(m.weight_exponents(6), vec![0, 0, 0]);
        assert_eq!(m.weight_exponents(7), vec![0, 0, 0]);
        assert_eq!(m.gram()[(6, 7)], f.integer(3));
        // v1 has weight eps1 + eps2, which pairs to (0, 1, 0) against the
        // three simple coroots.
        assert_eq!(m.weight_exponents(0), vec![0, 1, 0]);
    }

    #[test]
    fn symplectic_adjoint_membership_and_form() {
        let f = Field::rational();
        let m = sp4_adjoint(&f).unwrap();
        assert_eq!(m.dimension(), 10);
        // Non-member: E13 alone is fine, but E12 without its mirror fails.
        let mut bad = Matrix::zero(f, 4, 4);
        bad[(0, 1)] = f.one();
        assert!(sp4_to_coords(&bad).is_err());
        // Q is the trace of the square.
        let mut coords = vec![f.zero(); 10];
        coords[8] = f.integer(2);
        coords[9] = f.integer(-1);
        let v = sp4_from_coords(&f, &coords).unwrap();
        let q = m.quadratic(&coords).unwrap();
        assert_eq!(q, v.checked_mul(&v).unwrap().trace().unwrap());
        for fam in m.families() {
            let g = fam.matrix(&f, &f.integer(2)).unwrap();
            assert!(m.preserves_form(&g).unwrap(), "{}", fam.label);
        }
    }

    #[test]
    fn symplectic_adjoint_push_matches_families() {
        let f = gf(7, 1);
        let m = sp4_adjoint(&f).unwrap();
        let nat = natural_module(TypeLabel::C, 2, &f).unwrap();
        let t = f.integer(3);
        for label in ["x[e1-e2]", "x[e1+e2]", "x[2e1]", "x[-2e2]"] {
            let g = nat.generator(label, &t).unwrap();
            assert_eq!(
                sp4_adjoint_push(&g).unwrap(),
                m.generator(label, &t).unwrap(),
                "{label}"
            );
        }
    }

    #[test]
    fn tensor_symmetry_types() {
        let f = Field::rational();
        let c1 = natural_module(TypeLabel::C, 1, &f).unwrap();
        let c3 = natural_module(TypeLabel::C, 3, &f).unwrap();
        let both_alt = tensor_module(&c1, &c3).unwrap();
        assert!(both_alt.module.has_quadratic());
        assert_eq!(both_alt.module.dimension(), 12);
        assert!(both_alt
            .module
            .quadratic_values()
            .unwrap()
            .iter()
            .all(|q| q.is_zero()));
        let d4 = natural_module(TypeLabel::D, 4, &f).unwrap();
        let mixed = tensor_module(&c1, &d4).unwrap();
        assert!(!mixed.module.has_quadratic());
        let both_orth = tensor_module(&d4, &d4).unwrap();
        assert!(both_orth.module.has_quadratic());
        let f2 = gf(2, 1);
        let d4_2 = natural_module(TypeLabel::D, 4, &f2).unwrap();
        assert!(tensor_module(&d4_2, &d4_2).is_err());
    }

    #[test]
    fn tensor_families_preserve_forms() {
        let f = gf(5, 1);
        let c1 = natural_module(TypeLabel::C, 1, &f).unwrap();
        let c2 = natural_module(TypeLabel::C, 2, &f).unwrap();
        let t = tensor_module(&c1, &c2).unwrap();
        for fam in t.module.families() {
            let g = fam.matrix(&f, &f.integer(2)).unwrap();
            assert!(t.module.preserves_form(&g).unwrap(), "{}", fam.label);
        }
        let idx = t.module.basis_index("e1*f2").unwrap();
        assert_eq!(t.module.basis_labels()[idx], "e1*f2");
    }

    #[test]
    fn twisted_module_laws() {
        let f = gf(3, 2);
        let m = a1_twisted_module(3, &f).unwrap();
        let g = f.root_of_unity(8).unwrap();
        // Additivity still holds with the Frobenius-power entries.
        let s = g.clone();
        let t = g.checked_mul(&g).unwrap();
        let a = m.generator("x+", &s).unwrap();
        let b = m.generator("x+", &t).unwrap();
        let ab = m.generator("x+", &s.checked_add(&t).unwrap()).unwrap();
        assert_eq!(a.checked_mul(&b).unwrap(), ab);
        // The (m21, m11) slot carries t and the (m12, m11) slot carries t^3.
        let x = m.generator("x+", &g).unwrap();
        assert_eq!(x[(2, 0)], g);
        assert_eq!(x[(1, 0)], g.pow(3).unwrap());
        // Q agrees with the determinant.
        let coords: Vec<_> = (1..=4).map(|i| f.integer(i)).collect();
        let det = &(&coords[0] * &coords[3]) - &(&coords[1] * &coords[2]);
        assert_eq!(m.quadratic(&coords).unwrap(), det);
        assert_eq!(diagonal_exps(&m, "h"), vec![4, -2, 2, -4]);
        // All families preserve the form.
        for fam in m.families() {
            let mat = fam.matrix(&f, &g).unwrap();
            assert!(m.preserves_form(&mat).unwrap(), "{}", fam.label);
        }
    }

    #[test]
    fn twisted_module_guards() {
        assert!(a1_twisted_module(3, &Field::rational()).is_err());
        assert!(a1_twisted_module(5, &gf(3, 2)).is_err());
        assert!(a1_twisted_module(3, &gf(5, 1)).is_err());
        assert!(a1_twisted_module(1, &gf(3, 1)).is_err());
    }

    #[test]
    fn zero_weight_form_values() {
        let f = gf(7, 1);
        let zw = zero_weight_form(ZwFamily::ClLambda2, 5).unwrap();
        let mut a = vec![f.zero(); 5];
        a[0] = f.one();
        a[1] = f.integer(-1);
        assert_eq!(zw.eval(&a).unwrap(), f.one());

        let adj = zero_weight_form(ZwFamily::A2Adjoint, 2).unwrap();
        let omega = f.root_of_unity(3).unwrap();
        assert!(adj.is_singular(&[f.one(), omega.clone()]).unwrap());
        assert!(!adj.is_singular(&[f.one(), f.one()]).unwrap());

        let f5 = gf(5, 1);
        let b2 = zero_weight_form(ZwFamily::B2Adjoint, 2).unwrap();
        let i = f5.root_of_unity(4).unwrap();
        assert!(b2.is_singular(&[f5.one(), i]).unwrap());

        let f4 = gf(2, 2);
        let a3 = zero_weight_form(ZwFamily::A3AdjointP2, 2).unwrap();
        let w = f4.root_of_unity(3).unwrap();
        assert!(a3.is_singular(&[f4.one(), w]).unwrap());
        assert!(!a3.is_singular(&[f4.one(), f4.one()]).unwrap());
    }

    #[test]
    fn zero_weight_forms_are_invariant_under_their_cycles() {
        let f = gf(7, 1);
        let adj = zero_weight_form(ZwFamily::A2Adjoint, 2).unwrap();
        let b2 = zero_weight_form(ZwFamily::B2Adjoint, 2).unwrap();
        for a in 0..7i64 {
            for b in 0..7i64 {
                let (x, y) = (f.integer(a), f.integer(b));
                // 3-cycle (x, y) -> (y, -x-y).
                let nx = y.clone();
                let ny = -(x.checked_add(&y).unwrap());
                assert_eq!(
                    adj.eval(&[x.clone(), y.clone()]).unwrap(),
                    adj.eval(&[nx, ny]).unwrap()
                );
                // 4-cycle (x, y) -> (y, -x).
                assert_eq!(
                    b2.eval(&[x.clone(), y.clone()]).unwrap(),
                    b2.eval(&[y.clone(), -x.clone()]).unwrap()
                );
            }
        }
    }

    #[test]
    fn exterior_square_zero_weight_matches_module_form() {
        // A diagonal zero-sum vector lands in the v7, v8 plane, and the
        // module quadratic form agrees with the restricted evaluator.
        let f = gf(7, 1);
        let m = c3_lambda2(&f).unwrap();
        let omega = f.root_of_unity(3).unwrap();
        let zw = zero_weight_form(ZwFamily::ClLambda2, 3).unwrap();
        for a1 in 0..7i64 {
            for a2 in 0..7i64 {
                let x = f.integer(a1);
                let y = f.integer(a2);
                let z = -(x.checked_add(&y).unwrap());
                // Solve x = c7 + c8, y = c7 w + c8 w^2.
                let det = &omega - &(&omega * &omega);
                let num = &y - &(&x * &(&omega * &omega));
                let c7 = num.checked_div(&det).unwrap();
                let c8 = &x - &c7;
                let mut v = vec![f.zero(); 14];
                v[6] = c7;
                v[7] = c8;
                assert_eq!(
                    m.quadratic(&v).unwrap(),
                    zw.eval(&[x, y, z]).unwrap(),
                    "a = ({a1}, {a2})"
                );
            }
        }
    }

    #[test]
    fn eps_and_coeff_labels() {
        assert_eq!(eps_label(&[1, -1, 0]), "e1-e2");
        assert_eq!(eps_label(&[-1, 1]), "-e1+e2");
        assert_eq!(eps_label(&[0, 2]), "2e2");
        assert_eq!(eps_label(&[1, 0, 1]), "e1+e3");
        assert_eq!(coeff_label(&[0, 1, 1, 1]), "0111");
        assert_eq!(coeff_label(&[0, -1, -1, -1]), "-0111");
    }
}
