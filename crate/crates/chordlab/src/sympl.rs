//! Concrete symplectic realization at genus g: sparse tensors over a
//! symplectic basis, the canonical 2-tensor, the diagram-to-tensor map Φ
//! and the full-contraction map K back, Gram matrices of the invariant
//! space, and the order-3 contraction operator with its subset-sum
//! extension over wedge blocks.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::chords::{
    enumerate_diagrams, intersection_matrix_with_limit, sign_of, ChordDiagram, ChordVector,
    Permutation,
};
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::rat_i64;

/// Work cap for Gram-matrix assembly: (2g)^(2k) must stay at or below
/// this unless the caller overrides.
pub const DEFAULT_GRAM_CAP: u64 = 100_000;

/// Genus-g symplectic space with basis labels 1..g for the x_i and
/// g+1..2g for the y_i.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SymplecticSpace {
    genus: usize,
}

impl SymplecticSpace {
    pub fn new(genus: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::GenusTooSmall {
                what: "symplectic space",
                got: 0,
                min: 1,
            });
        }
        if genus > 100 {
            return Err(Error::SizeGuard {
                what: "symplectic genus",
                requested: genus,
                limit: 100,
            });
        }
        Ok(SymplecticSpace { genus })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Dimension 2g of the underlying space.
    pub fn dim(&self) -> usize {
        2 * self.genus
    }

    fn g8(&self) -> u8 {
        self.genus as u8
    }

    /// μ on basis labels: μ(x_i, y_i) = 1, μ(y_i, x_i) = -1, else 0.
    pub fn mu(&self, a: u8, b: u8) -> i64 {
        let g = self.g8();
        if b == a + g {
            1
        } else if a == b + g {
            -1
        } else {
            0
        }
    }

    /// The unique label pairing nontrivially with `a`.
    pub fn partner(&self, a: u8) -> u8 {
        let g = self.g8();
        if a <= g {
            a + g
        } else {
            a - g
        }
    }

    pub fn label_name(&self, a: u8) -> String {
        let g = self.g8();
        if a <= g {
            format!("x{a}")
        } else {
            format!("y{}", a - g)
        }
    }
}

/// Sparse tensor of fixed order over the basis labels of some space;
/// words are label sequences, coefficients exact rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymplecticTensor {
    order: usize,
    terms: BTreeMap<Vec<u8>, BigRational>,
}

impl SymplecticTensor {
    pub fn new(order: usize) -> Self {
        SymplecticTensor {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero_tensor(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u8>, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &[u8]) -> BigRational {
        self.terms.get(word).cloned().unwrap_or_else(BigRational::zero)
    }

    fn get(&self, word: &[u8]) -> Option<&BigRational> {
        self.terms.get(word)
    }

    pub fn add_term(&mut self, word: Vec<u8>, coeff: BigRational) {
        debug_assert_eq!(word.len(), self.order);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        if self.order != other.order {
            return Err(Error::SizeMismatch(format!(
                "adding tensors of order {} and {}",
                self.order, other.order
            )));
        }
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = SymplecticTensor::new(self.order);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.plus(&other.neg())
    }

    pub fn scaled(&self, s: &BigRational) -> Self {
        let mut out = SymplecticTensor::new(self.order);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * s);
        }
        out
    }

    /// Tensor product: concatenated words, multiplied coefficients.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = SymplecticTensor::new(self.order + other.order);
        for (w, c) in &self.terms {
            for (v, d) in &other.terms {
                let mut word = Vec::with_capacity(self.order + other.order);
                word.extend_from_slice(w);
                word.extend_from_slice(v);
                out.add_term(word, c * d);
            }
        }
        out
    }
}

/// The canonical invariant 2-tensor Σ x_i⊗y_i − y_i⊗x_i.
pub fn omega0(space: &SymplecticSpace) -> SymplecticTensor {
    let g = space.g8();
    let mut out = SymplecticTensor::new(2);
    for i in 1..=g {
        out.add_term(vec![i, i + g], rat_i64(1));
        out.add_term(vec![i + g, i], rat_i64(-1));
    }
    out
}

/// The invariant tensor attached to a diagram: the sign of its pair word
/// times one copy of the canonical 2-tensor spread across the slots of
/// each chord.
pub fn phi(c: &ChordDiagram, space: &SymplecticSpace) -> SymplecticTensor {
    let n = c.points();
    let g = space.g8();
    let mut out = SymplecticTensor::new(n);
    let mut word = vec![0u8; n];
    fn rec(
        pairs: &[(u16, u16)],
        idx: usize,
        g: u8,
        word: &mut Vec<u8>,
        coeff: i64,
        out: &mut SymplecticTensor,
    ) {
        let Some(&(i, j)) = pairs.get(idx) else {
            out.add_term(word.clone(), rat_i64(coeff));
            return;
        };
        let (i, j) = (i as usize - 1, j as usize - 1);
        for t in 1..=g {
            word[i] = t;
            word[j] = t + g;
            rec(pairs, idx + 1, g, word, coeff, out);
            word[i] = t + g;
            word[j] = t;
            rec(pairs, idx + 1, g, word, -coeff, out);
        }
        word[i] = 0;
        word[j] = 0;
    }
    rec(c.pairs(), 0, g, &mut word, i64::from(sign_of(c)), &mut out);
    out
}

/// Linear extension of Φ to diagram vectors.
pub fn phi_vector(
    v: &ChordVector<BigRational>,
    space: &SymplecticSpace,
) -> SymplecticTensor {
    let mut out = SymplecticTensor::new(v.points());
    for (c, r) in v.iter() {
        for (w, q) in phi(c, space).iter() {
            out.add_term(w.clone(), q * r);
        }
    }
    out
}

/// Slot action: the content of slot s moves to slot γ(s).
pub fn permute_tensor(gamma: &Permutation, t: &SymplecticTensor) -> Result<SymplecticTensor> {
    if gamma.n() != t.order() {
        return Err(Error::SizeMismatch(format!(
            "permutation of {} slots on a tensor of order {}",
            gamma.n(),
            t.order()
        )));
    }
    let mut out = SymplecticTensor::new(t.order());
    for (w, c) in t.iter() {
        let mut word = vec![0u8; w.len()];
        for (s, &label) in w.iter().enumerate() {
            word[gamma.apply(s as u16 + 1) as usize - 1] = label;
        }
        out.add_term(word, c.clone());
    }
    Ok(out)
}

/// Full pairing of two equal-order tensors: the product of slotwise μ
/// values, extended bilinearly. For each word only its partner word can
/// contribute, with sign (-1)^(number of y-labels).
pub fn mu_pairing(
    s: &SymplecticTensor,
    t: &SymplecticTensor,
    space: &SymplecticSpace,
) -> Result<BigRational> {
    if s.order() != t.order() {
        return Err(Error::SizeMismatch(format!(
            "pairing tensors of order {} and {}",
            s.order(),
            t.order()
        )));
    }
    let g = space.g8();
    let mut acc = BigRational::zero();
    let mut buf: Vec<u8> = Vec::with_capacity(s.order());
    for (w, c) in s.iter() {
        buf.clear();
        buf.extend(w.iter().map(|&a| space.partner(a)));
        if let Some(d) = t.get(&buf) {
            let ys = w.iter().filter(|&&a| a > g).count();
            let prod = c * d;
            if ys % 2 == 1 {
                acc -= prod;
            } else {
                acc += prod;
            }
        }
    }
    Ok(acc)
}

/// Full contraction back to the diagram space: the coefficient of C is
/// sgn(C) times the sum over words of the product of μ across the chords
/// of C.
pub fn contract_k(
    t: &SymplecticTensor,
    space: &SymplecticSpace,
) -> Result<ChordVector<BigRational>> {
    let n = t.order();
    let diagrams = enumerate_diagrams(n)?;
    let mut out = ChordVector::new(n);
    for c in diagrams {
        let mut alpha = BigRational::zero();
        for (w, q) in t.iter() {
            let mut factor = 1i64;
            for &(i, j) in c.pairs() {
                factor *= space.mu(w[i as usize - 1], w[j as usize - 1]);
                if factor == 0 {
                    break;
                }
            }
            if factor != 0 {
                alpha += q * rat_i64(factor);
            }
        }
        let signed = if sign_of(&c) < 0 { -alpha } else { alpha };
        out.add_term(c, signed);
    }
    Ok(out)
}

fn gram_cap_check(space: &SymplecticSpace, n: usize, cap: u64) -> Result<()> {
    let mut work: u128 = 1;
    for _ in 0..n {
        work = work.saturating_mul(space.dim() as u128);
    }
    if work > cap as u128 {
        return Err(Error::SizeGuard {
            what: "gram matrix work (2g)^points",
            requested: work.min(usize::MAX as u128) as usize,
            limit: cap as usize,
        });
    }
    Ok(())
}

pub fn gram_matrix(space: &SymplecticSpace, n: usize) -> Result<Vec<Vec<BigRational>>> {
    gram_matrix_with_cap(space, n, DEFAULT_GRAM_CAP)
}

/// Pairing matrix of the Φ-images over the diagram enumeration; symmetric
/// by construction.
pub fn gram_matrix_with_cap(
    space: &SymplecticSpace,
    n: usize,
    cap: u64,
) -> Result<Vec<Vec<BigRational>>> {
    gram_cap_check(space, n, cap)?;
    let diagrams = enumerate_diagrams(n)?;
    let tensors: Vec<SymplecticTensor> = diagrams.iter().map(|c| phi(c, space)).collect();
    let m = tensors.len();
    let mut out = vec![vec![BigRational::zero(); m]; m];
    for i in 0..m {
        for j in i..m {
            let v = mu_pairing(&tensors[i], &tensors[j], space)?;
            out[i][j] = v.clone();
            out[j][i] = v;
        }
    }
    Ok(out)
}

pub fn invariant_rank(space: &SymplecticSpace, n: usize) -> Result<usize> {
    invariant_rank_with_cap(space, n, DEFAULT_GRAM_CAP)
}

/// Exact rank of the Gram matrix. A full modular rank already certifies
/// the exact answer; otherwise fraction-free elimination decides.
pub fn invariant_rank_with_cap(space: &SymplecticSpace, n: usize, cap: u64) -> Result<usize> {
    let gram = gram_matrix_with_cap(space, n, cap)?;
    let cleared = linalg::clear_denominators(&gram);
    let modular = linalg::rank_mod_p(&cleared, linalg::DEFAULT_PRIME);
    if modular == gram.len() {
        return Ok(modular);
    }
    Ok(linalg::rank_bigint(&cleared))
}

/// The 1/m! antisymmetrization of an order-3 tensor.
pub fn alt3(t: &SymplecticTensor) -> Result<SymplecticTensor> {
    if t.order() != 3 {
        return Err(Error::SizeMismatch(format!(
            "antisymmetrizer expects order 3, got {}",
            t.order()
        )));
    }
    let mut out = SymplecticTensor::new(3);
    let sixth = BigRational::new(BigInt::from(1), BigInt::from(6));
    for (images, sign) in [
        (vec![1u16, 2, 3], 1i64),
        (vec![1, 3, 2], -1),
        (vec![2, 1, 3], -1),
        (vec![2, 3, 1], 1),
        (vec![3, 1, 2], 1),
        (vec![3, 2, 1], -1),
    ] {
        let p = Permutation::from_images(images).expect("valid images");
        let moved = permute_tensor(&p, t)?;
        for (w, c) in moved.iter() {
            out.add_term(w.clone(), c * &sixth * rat_i64(sign));
        }
    }
    Ok(out)
}

fn check_antisymmetric3(t: &SymplecticTensor) -> Result<()> {
    for (a, b) in [(1u16, 2u16), (2, 3)] {
        let p = Permutation::transposition(3, a, b).expect("valid transposition");
        if permute_tensor(&p, t)? != t.neg() {
            return Err(Error::NotAntisymmetric(format!(
                "swapping slots {a} and {b} does not negate the tensor"
            )));
        }
    }
    Ok(())
}

/// The wedge of a basis vector with the canonical 2-tensor, embedded by
/// antisymmetrization.
fn label_wedge_omega0(label: u8, space: &SymplecticSpace) -> SymplecticTensor {
    let mut raw = SymplecticTensor::new(3);
    for (w, c) in omega0(space).iter() {
        raw.add_term(vec![label, w[0], w[1]], c.clone());
    }
    alt3(&raw).expect("order 3 by construction")
}

/// The order-3 contraction: on a wedge u∧v∧w it is
/// (μ(u,v)w + μ(v,w)u + μ(w,u)v)∧ω₀ / (g−1). The bracket is alternating
/// in (u,v,w), so applying it word by word to an antisymmetric tensor
/// computes exactly the wedge formula.
pub fn tilde_c(t: &SymplecticTensor, space: &SymplecticSpace) -> Result<SymplecticTensor> {
    if space.genus() < 2 {
        return Err(Error::GenusTooSmall {
            what: "order-3 contraction",
            got: space.genus() as i64,
            min: 2,
        });
    }
    if t.order() != 3 {
        return Err(Error::SizeMismatch(format!(
            "order-3 contraction on a tensor of order {}",
            t.order()
        )));
    }
    check_antisymmetric3(t)?;
    let scale = BigRational::new(BigInt::from(1), BigInt::from(space.genus() as i64 - 1));
    let mut out = SymplecticTensor::new(3);
    for (w, q) in t.iter() {
        let (a, b, c) = (w[0], w[1], w[2]);
        for (m, label) in [
            (space.mu(a, b), c),
            (space.mu(b, c), a),
            (space.mu(c, a), b),
        ] {
            if m == 0 {
                continue;
            }
            let factor = q * &scale * rat_i64(m);
            for (word, coeff) in label_wedge_omega0(label, space).iter() {
                out.add_term(word.clone(), coeff * &factor);
            }
        }
    }
    Ok(out)
}

fn permutations_of(m: usize) -> Vec<Vec<usize>> {
    fn rec(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            rec(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut rest: Vec<usize> = (0..m).collect();
    let mut out = Vec::new();
    rec(&mut rest, &mut Vec::new(), &mut out);
    out
}

fn perm_sign(perm: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Wedge of order-3 blocks inside the full tensor power: the signed
/// average over block permutations. Odd block order makes blocks
/// anticommute, so the block sign is the permutation sign.
pub fn wedge_blocks(blocks: &[SymplecticTensor]) -> Result<SymplecticTensor> {
    let m = blocks.len();
    if m == 0 {
        return Err(Error::SizeMismatch("wedge of zero blocks".into()));
    }
    for b in blocks {
        if b.order() != 3 {
            return Err(Error::SizeMismatch(format!(
                "wedge blocks must have order 3, got {}",
                b.order()
            )));
        }
    }
    if m > 6 {
        return Err(Error::WorkBudget {
            what: "wedge over block permutations".into(),
            estimate: factorial_u64(m),
            budget: factorial_u64(6),
        });
    }
    let mut out = SymplecticTensor::new(3 * m);
    let norm = BigRational::new(BigInt::from(1), BigInt::from(factorial_u64(m)));
    for perm in permutations_of(m) {
        let sign = perm_sign(&perm);
        let mut acc = blocks[perm[0]].clone();
        for &i in &perm[1..] {
            acc = acc.tensor(&blocks[i]);
        }
        for (w, c) in acc.iter() {
            out.add_term(w.clone(), c * &norm * rat_i64(sign));
        }
    }
    Ok(out)
}

fn factorial_u64(m: usize) -> u64 {
    (1..=m as u64).product()
}

fn subsets_of_size(m: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..=m.saturating_sub(left) {
            cur.push(i);
            rec(i + 1, m, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, p, &mut Vec::new(), &mut out);
    out
}

/// Sum over p-subsets of blocks with the order-3 contraction applied to
/// the chosen blocks, all wedged back together. p = 0 reproduces the
/// plain wedge of the input blocks.
pub fn xi_p(
    blocks: &[SymplecticTensor],
    p: usize,
    space: &SymplecticSpace,
) -> Result<SymplecticTensor> {
    if space.genus() < 2 {
        return Err(Error::GenusTooSmall {
            what: "block contraction sum",
            got: space.genus() as i64,
            min: 2,
        });
    }
    let m = blocks.len();
    if p > m {
        return Err(Error::SizeMismatch(format!(
            "contraction count {p} exceeds {m} blocks"
        )));
    }
    let contracted: Vec<SymplecticTensor> = blocks
        .iter()
        .map(|b| tilde_c(b, space))
        .collect::<Result<_>>()?;
    let mut out = SymplecticTensor::new(3 * m);
    for subset in subsets_of_size(m, p) {
        let mut chosen: Vec<SymplecticTensor> = blocks.to_vec();
        for i in subset {
            chosen[i] = contracted[i].clone();
        }
        out = out.plus(&wedge_blocks(&chosen)?)?;
    }
    Ok(out)
}

/// Compares the Gram matrix with the symbolic intersection matrix
/// evaluated at the space's genus; the two are computed by entirely
/// different routes.
pub fn gram_matches_intersection(space: &SymplecticSpace, n: usize, cap: u64) -> Result<bool> {
    let gram = gram_matrix_with_cap(space, n, cap)?;
    let symbolic = intersection_matrix_with_limit(n, n)?;
    let g = space.genus() as i64;
    for (grow, srow) in gram.iter().zip(&symbolic) {
        for (gv, sv) in grow.iter().zip(srow) {
            if *gv != sv.eval_int(g) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
