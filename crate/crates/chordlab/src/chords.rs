//! Linear chord diagrams on {1..2k}: enumeration, the symmetric-group
//! action, the genus-parametrized pairing and intersection matrix, the
//! rewiring operator p_ij, and relative types with respect to the base
//! diagram C0 = {{1,2},{3,4},...}.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::poly::PolyG;

/// Full enumeration is refused above this many points unless a caller
/// passes an explicit higher limit; (2k-1)!! growth makes larger sizes a
/// deliberate choice, not a default.
pub const MAX_ENUM_POINTS: usize = 12;
/// Dense symbolic matrices are refused above this many points by default;
/// 105 x 105 entries is the practical ceiling for full materialization.
pub const MAX_MATRIX_POINTS: usize = 8;

/// A perfect matching of {1..2k} in canonical form: pairs (i, j) with
/// i < j, sorted by first element.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ChordDiagram {
    pairs: Vec<(u16, u16)>,
}

impl ChordDiagram {
    /// Canonical form of an arbitrary list of pairs; rejects anything that
    /// is not a perfect matching of {1..2k}.
    pub fn canonicalize(pairs: &[(u16, u16)]) -> Result<Self> {
        let n = 2 * pairs.len();
        let mut seen = vec![false; n + 1];
        let mut sorted = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            if a == 0 || b == 0 || a as usize > n || b as usize > n {
                return Err(Error::InvalidDiagram(format!(
                    "point out of range 1..{n} in ({a},{b})"
                )));
            }
            if a == b {
                return Err(Error::InvalidDiagram(format!("degenerate pair ({a},{b})")));
            }
            for x in [a, b] {
                if seen[x as usize] {
                    return Err(Error::InvalidDiagram(format!("point {x} repeated")));
                }
                seen[x as usize] = true;
            }
            sorted.push((a.min(b), a.max(b)));
        }
        sorted.sort_unstable();
        Ok(ChordDiagram { pairs: sorted })
    }

    /// The base diagram {{1,2},{3,4},...} on n points.
    pub fn c0(n: usize) -> Result<Self> {
        if n == 0 || n % 2 != 0 {
            return Err(Error::OddPoints {
                what: "base diagram",
                got: n,
            });
        }
        let pairs = (0..n / 2)
            .map(|i| (2 * i as u16 + 1, 2 * i as u16 + 2))
            .collect();
        Ok(ChordDiagram { pairs })
    }

    pub fn pairs(&self) -> &[(u16, u16)] {
        &self.pairs
    }

    /// Number of points 2k.
    pub fn points(&self) -> usize {
        2 * self.pairs.len()
    }

    /// Number of chords k.
    pub fn chords(&self) -> usize {
        self.pairs.len()
    }

    pub fn contains_pair(&self, i: u16, j: u16) -> bool {
        let (a, b) = (i.min(j), i.max(j));
        self.pairs.binary_search(&(a, b)).is_ok()
    }

    /// The point matched with `i`.
    pub fn partner(&self, i: u16) -> u16 {
        for &(a, b) in &self.pairs {
            if a == i {
                return b;
            }
            if b == i {
                return a;
            }
        }
        panic!("point {i} not in a diagram on {} points", self.points());
    }
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{a}-{b}")?;
        }
        write!(f, "]")
    }
}

/// (n-1)!! for odd n, the diagram count on n+1 points.
pub fn double_factorial(n: usize) -> u128 {
    (1..=n as u128).filter(|x| x % 2 == 1).product()
}

pub fn enumerate_diagrams(n: usize) -> Result<Vec<ChordDiagram>> {
    enumerate_diagrams_with_limit(n, MAX_ENUM_POINTS)
}

/// All perfect matchings of {1..n} in the fixed deterministic order: the
/// smallest free point pairs with each larger free point in increasing
/// order, recursively. This is lexicographic order on the canonical pair
/// list, so the base diagram C0 always comes first.
pub fn enumerate_diagrams_with_limit(n: usize, limit: usize) -> Result<Vec<ChordDiagram>> {
    if n == 0 || n % 2 != 0 {
        return Err(Error::OddPoints {
            what: "diagram enumeration",
            got: n,
        });
    }
    if n > limit {
        return Err(Error::SizeGuard {
            what: "diagram enumeration points",
            requested: n,
            limit,
        });
    }
    let mut out = Vec::with_capacity(double_factorial(n - 1) as usize);
    let mut free: Vec<bool> = vec![true; n + 1];
    let mut stack: Vec<(u16, u16)> = Vec::with_capacity(n / 2);
    fn rec(
        n: usize,
        free: &mut Vec<bool>,
        stack: &mut Vec<(u16, u16)>,
        out: &mut Vec<ChordDiagram>,
    ) {
        let Some(i) = (1..=n).find(|&i| free[i]) else {
            out.push(ChordDiagram {
                pairs: stack.clone(),
            });
            return;
        };
        free[i] = false;
        for j in i + 1..=n {
            if free[j] {
                free[j] = false;
                stack.push((i as u16, j as u16));
                rec(n, free, stack, out);
                stack.pop();
                free[j] = true;
            }
        }
        free[i] = true;
    }
    rec(n, &mut free, &mut stack, &mut out);
    Ok(out)
}

/// A permutation of {1..n}, stored as the image sequence.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n as u16).collect(),
        }
    }

    pub fn from_images(images: Vec<u16>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x as usize > n || seen[x as usize] {
                return Err(Error::InvalidPermutation(format!(
                    "images {images:?} are not a bijection of 1..{n}"
                )));
            }
            seen[x as usize] = true;
        }
        Ok(Permutation { images })
    }

    /// The transposition (a b) on {1..n}.
    pub fn transposition(n: usize, a: u16, b: u16) -> Result<Self> {
        let mut images: Vec<u16> = (1..=n as u16).collect();
        if a == 0 || b == 0 || a as usize > n || b as usize > n || a == b {
            return Err(Error::InvalidPermutation(format!(
                "transposition ({a} {b}) on 1..{n}"
            )));
        }
        images.swap(a as usize - 1, b as usize - 1);
        Ok(Permutation { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: u16) -> u16 {
        self.images[x as usize - 1]
    }

    /// (self . other)(x) = self(other(x)).
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch(format!(
                "composing permutations of {} and {} points",
                self.n(),
                other.n()
            )));
        }
        Ok(Permutation {
            images: (1..=self.n() as u16)
                .map(|x| self.apply(other.apply(x)))
                .collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.n()];
        for (i, &y) in self.images.iter().enumerate() {
            images[y as usize - 1] = i as u16 + 1;
        }
        Permutation { images }
    }

    /// Sign by cycle parity.
    pub fn sign(&self) -> i8 {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut sign = 1i8;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.images[cur] as usize - 1;
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    /// Uniform random permutation from the given generator.
    pub fn random<R: rand::Rng>(n: usize, rng: &mut R) -> Permutation {
        use rand::seq::SliceRandom;
        let mut images: Vec<u16> = (1..=n as u16).collect();
        images.shuffle(rng);
        Permutation { images }
    }
}

/// Uniform random diagram: a shuffled point list read off in pairs.
pub fn random_diagram<R: rand::Rng>(n: usize, rng: &mut R) -> Result<ChordDiagram> {
    use rand::seq::SliceRandom;
    let mut pts: Vec<u16> = (1..=n as u16).collect();
    pts.shuffle(rng);
    let pairs: Vec<(u16, u16)> = pts.chunks(2).map(|w| (w[0], w[1])).collect();
    ChordDiagram::canonicalize(&pairs)
}

/// The natural action: relabel points and re-canonicalize.
pub fn permute(gamma: &Permutation, c: &ChordDiagram) -> Result<ChordDiagram> {
    if gamma.n() != c.points() {
        return Err(Error::SizeMismatch(format!(
            "permutation of {} points on a diagram of {}",
            gamma.n(),
            c.points()
        )));
    }
    let pairs: Vec<(u16, u16)> = c
        .pairs()
        .iter()
        .map(|&(a, b)| (gamma.apply(a), gamma.apply(b)))
        .collect();
    ChordDiagram::canonicalize(&pairs)
}

/// Sign of the permutation (1,...,2k) -> (i_1,j_1,...,i_k,j_k) reading the
/// canonical pairs in order.
pub fn sign_of(c: &ChordDiagram) -> i8 {
    let mut images = Vec::with_capacity(c.points());
    for &(a, b) in c.pairs() {
        images.push(a);
        images.push(b);
    }
    Permutation { images }.sign()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

fn check_same_points(c: &ChordDiagram, d: &ChordDiagram) -> Result<usize> {
    if c.points() != d.points() {
        return Err(Error::SizeMismatch(format!(
            "diagrams on {} and {} points",
            c.points(),
            d.points()
        )));
    }
    Ok(c.points())
}

/// Number of connected components of the multigraph C ⊎ D on {1..2k};
/// C = D gives k doubled edges, hence k components.
pub fn union_components(c: &ChordDiagram, d: &ChordDiagram) -> Result<usize> {
    let n = check_same_points(c, d)?;
    let mut uf = UnionFind::new(n);
    for &(a, b) in c.pairs().iter().chain(d.pairs()) {
        uf.union(a as usize - 1, b as usize - 1);
    }
    let mut roots: Vec<usize> = (0..n).map(|x| uf.find(x)).collect();
    roots.sort_unstable();
    roots.dedup();
    Ok(roots.len())
}

/// Component sizes of C ⊎ D, in decreasing order (each is even).
fn union_component_sizes(c: &ChordDiagram, d: &ChordDiagram) -> Result<Vec<usize>> {
    let n = check_same_points(c, d)?;
    let mut uf = UnionFind::new(n);
    for &(a, b) in c.pairs().iter().chain(d.pairs()) {
        uf.union(a as usize - 1, b as usize - 1);
    }
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for x in 0..n {
        *counts.entry(uf.find(x)).or_insert(0) += 1;
    }
    let mut sizes: Vec<usize> = counts.into_values().collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    Ok(sizes)
}

/// The pairing <C, D> = (-1)^(k-r) (2g)^r with r the component count of
/// C ∪ D, as a polynomial in g.
pub fn pairing(c: &ChordDiagram, d: &ChordDiagram) -> Result<PolyG> {
    let r = union_components(c, d)?;
    let k = c.chords();
    Ok(pairing_monomial(k, r))
}

fn pairing_monomial(k: usize, r: usize) -> PolyG {
    let mut coeff = BigRational::from_integer(BigInt::one() << r);
    if (k - r) % 2 == 1 {
        coeff = -coeff;
    }
    PolyG::monomial(coeff, r)
}

/// The pairing evaluated directly at integer genus, without going through
/// polynomials.
pub fn pairing_at(c: &ChordDiagram, d: &ChordDiagram, g: i64) -> Result<BigRational> {
    let r = union_components(c, d)?;
    let k = c.chords();
    let mut v = BigInt::from(2 * g).pow(r as u32);
    if (k - r) % 2 == 1 {
        v = -v;
    }
    Ok(BigRational::from_integer(v))
}

/// The multiplicative factor produced by one p_ij step.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PFactor {
    /// The chord {i,j} was already present: factor 2g.
    TwoG,
    /// Rewiring happened: factor -1.
    MinusOne,
}

/// One contraction step: if {i,j} ∈ C the diagram is fixed with factor 2g;
/// otherwise the two chords at i and j are rewired, {i,a},{j,b} becoming
/// {i,j},{a,b}, with factor -1.
pub fn p_ij(c: &ChordDiagram, i: u16, j: u16) -> Result<(PFactor, ChordDiagram)> {
    let n = c.points();
    if i >= j || i == 0 || j as usize > n {
        return Err(Error::InvalidDiagram(format!(
            "p_ij needs 1 <= i < j <= {n}, got ({i},{j})"
        )));
    }
    if c.contains_pair(i, j) {
        return Ok((PFactor::TwoG, c.clone()));
    }
    let a = c.partner(i);
    let b = c.partner(j);
    let mut pairs: Vec<(u16, u16)> = c
        .pairs()
        .iter()
        .copied()
        .filter(|&(x, y)| !(x == i || y == i || x == j || y == j))
        .collect();
    pairs.push((i, j));
    pairs.push((a, b));
    Ok((PFactor::MinusOne, ChordDiagram::canonicalize(&pairs)?))
}

/// Computes the pairing by iterating p_{i,j} over the chords of C applied
/// to D, accumulating one factor per step. Independent oracle for
/// `pairing`.
pub fn pairing_iterative(c: &ChordDiagram, d: &ChordDiagram) -> Result<PolyG> {
    check_same_points(c, d)?;
    let mut current = d.clone();
    let mut minus = 0usize;
    let mut twog = 0usize;
    for &(i, j) in c.pairs() {
        let (factor, next) = p_ij(&current, i, j)?;
        match factor {
            PFactor::TwoG => twog += 1,
            PFactor::MinusOne => minus += 1,
        }
        current = next;
    }
    debug_assert_eq!(&current, c);
    let mut coeff = BigRational::from_integer(BigInt::one() << twog);
    if minus % 2 == 1 {
        coeff = -coeff;
    }
    Ok(PolyG::monomial(coeff, twog))
}

pub fn intersection_matrix(n: usize) -> Result<Vec<Vec<PolyG>>> {
    intersection_matrix_with_limit(n, MAX_MATRIX_POINTS)
}

/// Dense symbolic matrix of all pairings, rows and columns in enumeration
/// order.
pub fn intersection_matrix_with_limit(n: usize, limit: usize) -> Result<Vec<Vec<PolyG>>> {
    if n > limit {
        return Err(Error::SizeGuard {
            what: "intersection matrix points",
            requested: n,
            limit,
        });
    }
    let diagrams = enumerate_diagrams_with_limit(n, limit.max(MAX_ENUM_POINTS))?;
    diagrams
        .iter()
        .map(|c| diagrams.iter().map(|d| pairing(c, d)).collect())
        .collect()
}

/// A sparse linear combination of chord diagrams with a shared point
/// count. The coefficient ring is generic: exact rationals for evaluated
/// work, polynomials in g for symbolic work.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChordVector<R> {
    points: usize,
    terms: BTreeMap<ChordDiagram, R>,
}

impl<R> ChordVector<R> {
    pub fn new(points: usize) -> Self {
        ChordVector {
            points,
            terms: BTreeMap::new(),
        }
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ChordDiagram, &R)> {
        self.terms.iter()
    }

    pub fn get(&self, c: &ChordDiagram) -> Option<&R> {
        self.terms.get(c)
    }
}

impl<R: Clone + Zero> ChordVector<R> {
    pub fn single(c: ChordDiagram) -> Self
    where
        R: One,
    {
        let points = c.points();
        let mut terms = BTreeMap::new();
        terms.insert(c, R::one());
        ChordVector { points, terms }
    }

    pub fn from_terms<I>(points: usize, items: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ChordDiagram, R)>,
    {
        let mut v = ChordVector::new(points);
        for (c, r) in items {
            if c.points() != points {
                return Err(Error::SizeMismatch(format!(
                    "diagram on {} points in a vector on {points}",
                    c.points()
                )));
            }
            v.add_term(c, r);
        }
        Ok(v)
    }

    /// Adds into the coefficient of `c`, dropping it when it becomes zero.
    pub fn add_term(&mut self, c: ChordDiagram, r: R) {
        debug_assert_eq!(c.points(), self.points);
        if r.is_zero() {
            return;
        }
        let entry = self.terms.entry(c);
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(r);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = std::mem::replace(e.get_mut(), R::zero()) + r;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn coeff(&self, c: &ChordDiagram) -> R {
        self.terms.get(c).cloned().unwrap_or_else(R::zero)
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        if self.points != other.points {
            return Err(Error::SizeMismatch(format!(
                "adding vectors on {} and {} points",
                self.points, other.points
            )));
        }
        let mut out = self.clone();
        for (c, r) in &other.terms {
            out.add_term(c.clone(), r.clone());
        }
        Ok(out)
    }

    pub fn map<S: Clone + Zero, F: Fn(&R) -> S>(&self, f: F) -> ChordVector<S> {
        let mut out = ChordVector::new(self.points);
        for (c, r) in &self.terms {
            out.add_term(c.clone(), f(r));
        }
        out
    }

    pub fn is_zero_vector(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<R> ChordVector<R>
where
    R: Clone + Zero + std::ops::Mul<Output = R>,
{
    pub fn scaled(&self, s: &R) -> Self {
        let mut out = ChordVector::new(self.points);
        for (c, r) in &self.terms {
            out.add_term(c.clone(), r.clone() * s.clone());
        }
        out
    }

    /// Euclidean dot product in the diagram basis.
    pub fn dot(&self, other: &Self) -> Result<R> {
        check_points(self.points, other.points)?;
        let mut acc = R::zero();
        for (c, r) in &self.terms {
            if let Some(s) = other.terms.get(c) {
                acc = acc + r.clone() * s.clone();
            }
        }
        Ok(acc)
    }
}

impl<R> ChordVector<R>
where
    R: Clone + Zero + std::ops::Neg<Output = R>,
{
    pub fn neg(&self) -> Self {
        let mut out = ChordVector::new(self.points);
        for (c, r) in &self.terms {
            out.add_term(c.clone(), -r.clone());
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.plus(&other.neg())
    }
}

fn check_points(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::SizeMismatch(format!(
            "vectors on {a} and {b} points"
        )));
    }
    Ok(())
}

/// The all-ones vector over the full diagram basis.
pub fn all_ones<R: Clone + Zero + One>(n: usize) -> Result<ChordVector<R>> {
    let mut v = ChordVector::new(n);
    for c in enumerate_diagrams(n)? {
        v.add_term(c, R::one());
    }
    Ok(v)
}

fn apply_m_with<R, F>(v: &ChordVector<R>, pair: F) -> Result<ChordVector<R>>
where
    R: Clone + Zero + std::ops::Mul<Output = R>,
    F: Fn(&ChordDiagram, &ChordDiagram) -> Result<R>,
{
    let diagrams = enumerate_diagrams(v.points())?;
    let mut out = ChordVector::new(v.points());
    for d in &diagrams {
        let mut acc = R::zero();
        for (c, r) in v.iter() {
            acc = acc + pair(c, d)? * r.clone();
        }
        out.add_term(d.clone(), acc);
    }
    Ok(out)
}

/// M(v) = sum over D of <C, D> D, extended linearly; symbolic
/// coefficients.
pub fn apply_m(v: &ChordVector<PolyG>) -> Result<ChordVector<PolyG>> {
    apply_m_with(v, pairing)
}

/// M(v) with the pairing evaluated at integer genus.
pub fn apply_m_at(v: &ChordVector<BigRational>, g: i64) -> Result<ChordVector<BigRational>> {
    apply_m_with(v, |c, d| pairing_at(c, d, g))
}

/// Bilinear extension of the pairing to vectors, symbolic.
pub fn pairing_form(v: &ChordVector<PolyG>, w: &ChordVector<PolyG>) -> Result<PolyG> {
    check_points(v.points(), w.points())?;
    let mut acc = PolyG::zero();
    for (c, r) in v.iter() {
        for (d, s) in w.iter() {
            acc = &acc + &(&pairing(c, d)? * &(r * s));
        }
    }
    Ok(acc)
}

/// Bilinear extension of the pairing, evaluated at integer genus.
pub fn pairing_form_at(
    v: &ChordVector<BigRational>,
    w: &ChordVector<BigRational>,
    g: i64,
) -> Result<BigRational> {
    check_points(v.points(), w.points())?;
    let mut acc = BigRational::zero();
    for (c, r) in v.iter() {
        for (d, s) in w.iter() {
            acc += pairing_at(c, d, g)? * r * s;
        }
    }
    Ok(acc)
}

/// The C0-relative type of C: half the component sizes of C0 ∪ C, as a
/// partition of k.
pub fn relative_type(c: &ChordDiagram) -> Partition {
    let c0 = ChordDiagram::c0(c.points()).expect("diagram has even points");
    let sizes = union_component_sizes(&c0, c).expect("same point count");
    let parts: Vec<u32> = sizes
        .iter()
        .map(|&s| {
            debug_assert!(s % 2 == 0);
            (s / 2) as u32
        })
        .collect();
    Partition::new(parts).expect("sizes sorted decreasing")
}
