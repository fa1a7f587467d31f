//! Root systems of types A-G: root enumeration in a pinned total order,
//! structure constants with the extraspecial-pair sign convention, Weyl
//! group elements as root permutations, and parabolic root data.
//!
//! Roots are stored both in simple-root coordinates (integer coefficient
//! vectors) and in doubled epsilon coordinates (so half-integer systems like
//! F4 and E8 stay integral). The positive roots are ordered by height and
//! then by descending lexicographic comparison of coefficient vectors; the
//! negative of positive root `i` sits at index `n_pos + i`. This is the
//! ordering all root-index permutations and structure-constant tables refer
//! to.
//!
//! Structure constants follow the convention that fixes `N = +(p+1)` on
//! every extraspecial pair (the order-minimal decomposition of each
//! decomposable positive root); all remaining values are forced from those
//! by the standard rational identities.

use std::collections::HashMap;
use std::fmt;

use num_rational::Rational64;

use crate::{Error, Result};

/// Simple Lie type label.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            TypeLabel::A => 'A',
            TypeLabel::B => 'B',
            TypeLabel::C => 'C',
            TypeLabel::D => 'D',
            TypeLabel::E => 'E',
            TypeLabel::F => 'F',
            TypeLabel::G => 'G',
        };
        write!(f, "{c}")
    }
}

/// Parses a label like `"B4"` or `"E8"`.
pub fn parse_type(s: &str) -> Result<(TypeLabel, usize)> {
    let mut chars = s.chars();
    let label = match chars.next() {
        Some('A') => TypeLabel::A,
        Some('B') => TypeLabel::B,
        Some('C') => TypeLabel::C,
        Some('D') => TypeLabel::D,
        Some('E') => TypeLabel::E,
        Some('F') => TypeLabel::F,
        Some('G') => TypeLabel::G,
        _ => return Err(Error::Parse(format!("bad type label {s:?}"))),
    };
    let rank: usize = chars
        .as_str()
        .parse()
        .map_err(|_| Error::Parse(format!("bad rank in {s:?}")))?;
    Ok((label, rank))
}

/// A root system with its ordered roots and derived tables.
pub struct RootSystem {
    label: TypeLabel,
    rank: usize,
    n_pos: usize,
    /// Simple-root coefficient vectors, positives then negatives.
    coeffs: Vec<Vec<i64>>,
    /// Doubled epsilon coordinates, same indexing.
    eps: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    /// `N_{alpha,beta}` for positive pairs `alpha < beta` with root sum.
    npos: HashMap<(usize, usize), i64>,
}

impl RootSystem {
    pub fn new(label: TypeLabel, rank: usize) -> Result<RootSystem> {
        let simple_eps = simple_roots_eps(label, rank)?;
        let mut rs = close_roots(label, rank, simple_eps);
        rs.build_structure_constants();
        Ok(rs)
    }

    pub fn label(&self) -> TypeLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn n_positive(&self) -> usize {
        self.n_pos
    }

    pub fn n_roots(&self) -> usize {
        2 * self.n_pos
    }

    /// Dimension of the adjoint group: number of roots plus the rank.
    pub fn group_dim(&self) -> usize {
        self.n_roots() + self.rank
    }

    pub fn is_positive(&self, idx: usize) -> bool {
        idx < self.n_pos
    }

    pub fn negative(&self, idx: usize) -> usize {
        (idx + self.n_pos) % self.n_roots()
    }

    /// Index of the i-th simple root (they are the first `rank` positives
    /// only by accident of ordering in some types, so look up explicitly).
    pub fn simple(&self, i: usize) -> usize {
        let mut c = vec![0i64; self.rank];
        c[i] = 1;
        self.index[&c]
    }

    pub fn coeffs(&self, idx: usize) -> &[i64] {
        &self.coeffs[idx]
    }

    pub fn root_index(&self, coeffs: &[i64]) -> Option<usize> {
        self.index.get(coeffs).copied()
    }

    pub fn height(&self, idx: usize) -> i64 {
        self.coeffs[idx].iter().sum()
    }

    /// Squared length in the doubled coordinates; only ratios of these
    /// values are meaningful.
    pub fn root_norm2(&self, idx: usize) -> i64 {
        self.eps[idx].iter().map(|&x| x * x).sum()
    }

    /// Doubled epsilon coordinates of a root. For types B, C and D every
    /// entry is even, so halving gives the usual integral coordinates.
    pub fn root_eps(&self, idx: usize) -> &[i64] {
        &self.eps[idx]
    }

    fn norm2(&self, idx: usize) -> i64 {
        self.root_norm2(idx)
    }

    fn dot2(a: &[i64], b: &[i64]) -> i64 {
        a.iter().zip(b).map(|(&x, &y)| x * y).sum()
    }

    /// Cartan integer `<beta, alpha^vee> = 2(beta, alpha)/(alpha, alpha)`.
    pub fn cartan_int(&self, beta: usize, alpha: usize) -> i64 {
        let num = 2 * Self::dot2(&self.eps[beta], &self.eps[alpha]);
        let den = self.norm2(alpha);
        debug_assert_eq!(num % den, 0);
        num / den
    }

    /// Index of `root_i + root_j` when the sum is a root.
    pub fn add_roots(&self, i: usize, j: usize) -> Option<usize> {
        let sum: Vec<i64> = self.coeffs[i]
            .iter()
            .zip(&self.coeffs[j])
            .map(|(&a, &b)| a + b)
            .collect();
        self.index.get(&sum).copied()
    }

    /// Length of the string `beta, beta - alpha, ..., beta - p*alpha`.
    pub fn string_down(&self, alpha: usize, beta: usize) -> i64 {
        let mut p = 0;
        let mut cur: Vec<i64> = self.coeffs[beta].clone();
        loop {
            for (c, a) in cur.iter_mut().zip(&self.coeffs[alpha]) {
                *c -= a;
            }
            if self.index.contains_key(&cur) {
                p += 1;
            } else {
                return p;
            }
        }
    }

    /// Structure constant `N_{i,j}` with `[e_i, e_j] = N_{i,j} e_{i+j}`;
    /// `None` when `root_i + root_j` is not a root.
    pub fn structure_constant(&self, i: usize, j: usize) -> Option<i64> {
        self.add_roots(i, j)?;
        Some(self.n_any(i, j, &self.npos))
    }

    fn n_any(&self, i: usize, j: usize, table: &HashMap<(usize, usize), i64>) -> i64 {
        let Some(sum) = self.add_roots(i, j) else {
            return 0;
        };
        match (self.is_positive(i), self.is_positive(j)) {
            (true, true) => {
                if i < j {
                    *table.get(&(i, j)).expect("positive table entry")
                } else {
                    -*table.get(&(j, i)).expect("positive table entry")
                }
            }
            (false, false) => -self.n_any(self.negative(i), self.negative(j), table),
            (true, false) => {
                // N_{a,-b} with a + (-b) = sum.
                let a = i;
                let b = self.negative(j);
                if self.is_positive(sum) {
                    // a = b + c: N_{a,-b} = -(c,c)/(a,a) N_{b,c}
                    let c = sum;
                    let ratio = Rational64::new(self.norm2(c), self.norm2(a));
                    let v = Rational64::from_integer(-self.n_any(b, c, table)) * ratio;
                    debug_assert!(v.is_integer());
                    v.to_integer()
                } else {
                    // b = a + d: N_{a,-b} = -(d,d)/(b,b) N_{a,d}
                    let d = self.negative(sum);
                    let ratio = Rational64::new(self.norm2(d), self.norm2(b));
                    let v = Rational64::from_integer(-self.n_any(a, d, table)) * ratio;
                    debug_assert!(v.is_integer());
                    v.to_integer()
                }
            }
            (false, true) => -self.n_any(j, i, table),
        }
    }

    /// Fills the positive-pair table in increasing height of the sum, so
    /// every identity only consults constants already fixed.
    fn build_structure_constants(&mut self) {
        let mut table: HashMap<(usize, usize), i64> = HashMap::new();
        let mut by_height: Vec<usize> = (0..self.n_pos).collect();
        by_height.sort_by_key(|&g| self.height(g));
        for &gamma in &by_height {
            if self.height(gamma) < 2 {
                continue;
            }
            // The extraspecial pair: minimal first component in root order.
            let mut extraspecial: Option<(usize, usize)> = None;
            let mut others: Vec<(usize, usize)> = Vec::new();
            for alpha in 0..self.n_pos {
                let beta_coeffs: Vec<i64> = self.coeffs[gamma]
                    .iter()
                    .zip(&self.coeffs[alpha])
                    .map(|(&g, &a)| g - a)
                    .collect();
                let Some(&beta) = self.index.get(&beta_coeffs) else {
                    continue;
                };
                if !self.is_positive(beta) || alpha >= beta {
                    continue;
                }
                if extraspecial.is_none() {
                    extraspecial = Some((alpha, beta));
                } else {
                    others.push((alpha, beta));
                }
            }
            let (a_star, b_star) = extraspecial.expect("decomposable positive root");
            let p = self.string_down(a_star, b_star);
            table.insert((a_star, b_star), p + 1);
            for (alpha, beta) in others {
                let n = self.special_from_extraspecial(alpha, beta, a_star, b_star, &table);
                table.insert((alpha, beta), n);
            }
        }
        self.npos = table;
    }

    /// Resolves a non-extraspecial special pair `(alpha, beta)` from the
    /// extraspecial pair `(a*, b*)` of the same sum via the four-root
    /// relation on `(a*, -alpha, -beta, b*)`.
    fn special_from_extraspecial(
        &self,
        alpha: usize,
        beta: usize,
        a_star: usize,
        b_star: usize,
        table: &HashMap<(usize, usize), i64>,
    ) -> i64 {
        let gamma = self.add_roots(alpha, beta).expect("special pair");
        let gg = self.norm2(gamma);
        let mut total = Rational64::from_integer(0);
        // Term over a* - alpha.
        if let Some(diff) = self.add_roots(a_star, self.negative(alpha)) {
            let n1 = self.n_any(a_star, self.negative(alpha), table);
            let n2 = self.n_any(self.negative(beta), b_star, table);
            total += Rational64::new(n1 * n2, self.norm2(diff));
        }
        // Term over a* - beta.
        if let Some(diff) = self.add_roots(self.negative(beta), a_star) {
            let n1 = self.n_any(self.negative(beta), a_star, table);
            let n2 = self.n_any(self.negative(alpha), b_star, table);
            total += Rational64::new(n1 * n2, self.norm2(diff));
        }
        let n_star = *table.get(&(a_star, b_star)).expect("extraspecial first");
        let v = total * Rational64::from_integer(gg) / Rational64::from_integer(n_star);
        assert!(v.is_integer(), "structure constant identity must close");
        v.to_integer()
    }

    /// Root-index permutation of the simple reflection `s_i`.
    pub fn simple_reflection(&self, i: usize) -> Vec<usize> {
        let alpha = self.simple(i);
        (0..self.n_roots())
            .map(|r| {
                let c = self.cartan_int(r, alpha);
                let mut img = self.coeffs[r].clone();
                img[i] -= c;
                self.index[&img]
            })
            .collect()
    }

    /// Permutation of the word `s_{w[0]} s_{w[1]} ... s_{w[k-1]}` acting as
    /// a composition of functions (rightmost letter applied first).
    pub fn weyl_word_perm(&self, word: &[usize]) -> Vec<usize> {
        let refl: Vec<Vec<usize>> = (0..self.rank).map(|i| self.simple_reflection(i)).collect();
        (0..self.n_roots())
            .map(|r| {
                let mut x = r;
                for &i in word.iter().rev() {
                    x = refl[i][x];
                }
                x
            })
            .collect()
    }

    /// A reduced word for the longest Weyl element, found by driving the
    /// regular dominant weight `rho` antidominant.
    pub fn longest_element_word(&self) -> Vec<usize> {
        // Weight in fundamental coordinates c_i = <lambda, alpha_i^vee>.
        let cartan: Vec<Vec<i64>> = (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| self.cartan_int(self.simple(i), self.simple(j)))
                    .collect()
            })
            .collect();
        let mut c = vec![1i64; self.rank];
        let mut applied = Vec::new();
        loop {
            let Some(i) = (0..self.rank).find(|&i| c[i] > 0) else {
                break;
            };
            let ci = c[i];
            for j in 0..self.rank {
                c[j] -= ci * cartan[i][j];
            }
            applied.push(i);
        }
        // rho was hit by s_{i1} first, so the group element is the word read
        // in reverse application order.
        applied.reverse();
        applied
    }

    /// Root indices of the parabolic that omits the given simple roots:
    /// all positives plus the negatives supported away from `omitted`.
    pub fn parabolic_root_indices(&self, omitted: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.n_pos).collect();
        for r in 0..self.n_pos {
            if omitted.iter().all(|&k| self.coeffs[r][k] == 0) {
                out.push(self.negative(r));
            }
        }
        out
    }

    /// Dimension of that parabolic subgroup: its roots plus a maximal torus.
    pub fn parabolic_dim(&self, omitted: &[usize]) -> usize {
        self.parabolic_root_indices(omitted).len() + self.rank
    }

    /// Roots lying in both the parabolic and its conjugate under the given
    /// root permutation.
    pub fn common_parabolic_roots(&self, omitted: &[usize], perm: &[usize]) -> Vec<usize> {
        let own: std::collections::HashSet<usize> =
            self.parabolic_root_indices(omitted).into_iter().collect();
        let moved: std::collections::HashSet<usize> = own.iter().map(|&r| perm[r]).collect();
        let mut common: Vec<usize> = own.intersection(&moved).copied().collect();
        common.sort_unstable();
        common
    }

    /// `<lambda, 2 rho^vee> = sum over positive roots of <lambda, alpha^vee>`
    /// for `lambda` given in fundamental-weight coordinates. The parity of
    /// this integer separates orthogonal from symplectic self-dual modules.
    pub fn two_rho_coroot_pairing(&self, weight: &[i64]) -> i64 {
        assert_eq!(weight.len(), self.rank);
        let mut total = Rational64::from_integer(0);
        for alpha in 0..self.n_pos {
            let aa = self.norm2(alpha);
            for (k, &m) in weight.iter().enumerate() {
                if m != 0 {
                    let kk = self.norm2(self.simple(k));
                    total += Rational64::new(m * self.coeffs[alpha][k] * kk, aa);
                }
            }
        }
        assert!(total.is_integer(), "coroot pairing must be integral");
        total.to_integer()
    }
}

/// Doubled epsilon coordinates of the simple roots, Bourbaki numbering.
fn simple_roots_eps(label: TypeLabel, rank: usize) -> Result<Vec<Vec<i64>>> {
    let bad = |msg: &str| Err(Error::RootSystem(format!("{label}{rank}: {msg}")));
    let e = |dim: usize, entries: &[(usize, i64)]| -> Vec<i64> {
        let mut v = vec![0i64; dim];
        for &(i, x) in entries {
            v[i] = x;
        }
        v
    };
    match label {
        TypeLabel::A => {
            if rank < 1 {
                return bad("rank must be at least 1");
            }
            let dim = rank + 1;
            Ok((0..rank)
                .map(|i| e(dim, &[(i, 2), (i + 1, -2)]))
                .collect())
        }
        TypeLabel::B => {
            if rank < 2 {
                return bad("rank must be at least 2");
            }
            let mut v: Vec<Vec<i64>> = (0..rank - 1)
                .map(|i| e(rank, &[(i, 2), (i + 1, -2)]))
                .collect();
            v.push(e(rank, &[(rank - 1, 2)]));
            Ok(v)
        }
        TypeLabel::C => {
            if rank < 2 {
                return bad("rank must be at least 2");
            }
            let mut v: Vec<Vec<i64>> = (0..rank - 1)
                .map(|i| e(rank, &[(i, 2), (i + 1, -2)]))
                .collect();
            v.push(e(rank, &[(rank - 1, 4)]));
            Ok(v)
        }
        TypeLabel::D => {
            if rank < 3 {
                return bad("rank must be at least 3");
            }
            let mut v: Vec<Vec<i64>> = (0..rank - 1)
                .map(|i| e(rank, &[(i, 2), (i + 1, -2)]))
                .collect();
            v.push(e(rank, &[(rank - 2, 2), (rank - 1, 2)]));
            Ok(v)
        }
        TypeLabel::G => {
            if rank != 2 {
                return bad("rank must be 2");
            }
            Ok(vec![
                e(3, &[(0, 2), (1, -2)]),
                e(3, &[(0, -4), (1, 2), (2, 2)]),
            ])
        }
        TypeLabel::F => {
            if rank != 4 {
                return bad("rank must be 4");
            }
            Ok(vec![
                e(4, &[(1, 2), (2, -2)]),
                e(4, &[(2, 2), (3, -2)]),
                e(4, &[(3, 2)]),
                e(4, &[(0, 1), (1, -1), (2, -1), (3, -1)]),
            ])
        }
        TypeLabel::E => {
            if !(6..=8).contains(&rank) {
                return bad("rank must be 6, 7 or 8");
            }
            let mut v = vec![
                e(8, &[(0, 1), (1, -1), (2, -1), (3, -1), (4, -1), (5, -1), (6, -1), (7, 1)]),
                e(8, &[(0, 2), (1, 2)]),
                e(8, &[(0, -2), (1, 2)]),
                e(8, &[(1, -2), (2, 2)]),
                e(8, &[(2, -2), (3, 2)]),
                e(8, &[(3, -2), (4, 2)]),
                e(8, &[(4, -2), (5, 2)]),
                e(8, &[(5, -2), (6, 2)]),
            ];
            v.truncate(rank);
            Ok(v)
        }
    }
}

/// Generates all roots by closing the simples upward with the string
/// property, then fixes the pinned ordering and index map.
fn close_roots(label: TypeLabel, rank: usize, simple_eps: Vec<Vec<i64>>) -> RootSystem {
    let mut positives: HashMap<Vec<i64>, Vec<i64>> = HashMap::new(); // coeffs -> eps
    for (i, eps) in simple_eps.iter().enumerate() {
        let mut c = vec![0i64; rank];
        c[i] = 1;
        positives.insert(c, eps.clone());
    }
    let dot = |a: &[i64], b: &[i64]| -> i64 { a.iter().zip(b).map(|(&x, &y)| x * y).sum() };
    let mut frontier: Vec<Vec<i64>> = positives.keys().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for c in frontier {
            let eps = positives[&c].clone();
            for (i, alpha_eps) in simple_eps.iter().enumerate() {
                // beta + alpha_i is a root iff p > <beta, alpha_i^vee> where
                // p counts the descending string through beta.
                let cartan = 2 * dot(&eps, alpha_eps) / dot(alpha_eps, alpha_eps);
                let mut down = c.clone();
                let mut p = 0i64;
                loop {
                    down[i] -= 1;
                    if positives.contains_key(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - cartan > 0 {
                    let mut up = c.clone();
                    up[i] += 1;
                    if !positives.contains_key(&up) {
                        let mut up_eps = eps.clone();
                        for (x, a) in up_eps.iter_mut().zip(alpha_eps) {
                            *x += a;
                        }
                        positives.insert(up.clone(), up_eps);
                        next.push(up);
                    }
                }
            }
        }
        frontier = next;
    }
    // Pinned order: height ascending, then coefficient tuple descending.
    let mut ordered: Vec<Vec<i64>> = positives.keys().cloned().collect();
    ordered.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    let n_pos = ordered.len();
    let mut coeffs = Vec::with_capacity(2 * n_pos);
    let mut eps = Vec::with_capacity(2 * n_pos);
    for c in &ordered {
        eps.push(positives[c].clone());
        coeffs.push(c.clone());
    }
    for i in 0..n_pos {
        coeffs.push(coeffs[i].iter().map(|&x| -x).collect());
        eps.push(eps[i].iter().map(|&x| -x).collect());
    }
    let index: HashMap<Vec<i64>, usize> = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), i))
        .collect();
    debug_assert_eq!(index.len(), 2 * n_pos);
    RootSystem {
        label,
        rank,
        n_pos,
        coeffs,
        eps,
        index,
        npos: HashMap::new(),
    }
}
