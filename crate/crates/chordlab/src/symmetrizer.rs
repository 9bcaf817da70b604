//! Young symmetrizers acting on the diagram space: row/column group sums
//! applied orbit by orbit (never materializing the group algebra),
//! eigenspace bases indexed by standard tableaux, the base-diagram
//! coefficient, and spectral projection / decomposition at concrete genus.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::chords::{apply_m_at, enumerate_diagrams, permute, ChordDiagram, ChordVector, Permutation};
use crate::error::{Error, Result};
use crate::linalg;
use crate::partitions::{enumerate_partitions, eigenvalue_mu, hook_dim_usize, standard_tableaux, Partition, Tableau};

/// Which product order to use: c = a · b applies the signed column sum
/// first, c' = b · a the row sum first.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Variant {
    C,
    CPrime,
}

/// A Young symmetrizer: a standard tableau with even row lengths plus the
/// product order.
#[derive(Clone, Debug)]
pub struct SymmetrizerSpec {
    tableau: Tableau,
    variant: Variant,
}

impl SymmetrizerSpec {
    pub fn new(tableau: Tableau, variant: Variant) -> Result<Self> {
        if !tableau.is_standard() {
            return Err(Error::InvalidTableau(format!(
                "symmetrizer needs a standard tableau, got {tableau}"
            )));
        }
        if tableau.shape().parts().iter().any(|&p| p % 2 != 0) {
            return Err(Error::InvalidTableau(format!(
                "symmetrizer shape must have even rows, got {}",
                tableau.shape()
            )));
        }
        Ok(SymmetrizerSpec { tableau, variant })
    }

    pub fn tableau(&self) -> &Tableau {
        &self.tableau
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }
}

fn factorial_u128(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Adjacent transpositions generating the direct product of symmetric
/// groups on the given entry groups.
fn group_generators(n: usize, groups: &[Vec<u16>]) -> Vec<Permutation> {
    let mut gens = Vec::new();
    for group in groups {
        for w in group.windows(2) {
            gens.push(Permutation::transposition(n, w[0], w[1]).expect("entries in range"));
        }
    }
    gens
}

fn group_order(groups: &[Vec<u16>]) -> u128 {
    groups.iter().map(|g| factorial_u128(g.len())).product()
}

/// Sum of the orbit of one diagram under an unsigned group sum, weighted
/// by |group| / |orbit|, accumulated into `out` with coefficient `coeff`.
fn accumulate_orbit_sum(
    out: &mut ChordVector<BigRational>,
    start: &ChordDiagram,
    coeff: &BigRational,
    gens: &[Permutation],
    order: u128,
) {
    let mut orbit: BTreeMap<ChordDiagram, ()> = BTreeMap::new();
    let mut queue = VecDeque::new();
    orbit.insert(start.clone(), ());
    queue.push_back(start.clone());
    while let Some(cur) = queue.pop_front() {
        for gen in gens {
            let next = permute(gen, &cur).expect("generator size matches");
            if !orbit.contains_key(&next) {
                orbit.insert(next.clone(), ());
                queue.push_back(next);
            }
        }
    }
    let weight = BigRational::from_integer(BigInt::from(order / orbit.len() as u128));
    let scaled = coeff * &weight;
    for (d, ()) in orbit {
        out.add_term(d, scaled.clone());
    }
}

/// Signed version: tracks a relative sign per orbit element; any sign
/// conflict means the stabilizer contains an odd element and the whole
/// orbit cancels.
fn accumulate_signed_orbit_sum(
    out: &mut ChordVector<BigRational>,
    start: &ChordDiagram,
    coeff: &BigRational,
    gens: &[Permutation],
    order: u128,
) {
    let mut orbit: BTreeMap<ChordDiagram, i8> = BTreeMap::new();
    let mut queue = VecDeque::new();
    orbit.insert(start.clone(), 1);
    queue.push_back(start.clone());
    while let Some(cur) = queue.pop_front() {
        let sign = orbit[&cur];
        for gen in gens {
            let next = permute(gen, &cur).expect("generator size matches");
            match orbit.get(&next) {
                None => {
                    orbit.insert(next.clone(), -sign);
                    queue.push_back(next);
                }
                Some(&s) if s != -sign => return,
                Some(_) => {}
            }
        }
    }
    let weight = BigRational::from_integer(BigInt::from(order / orbit.len() as u128));
    let scaled = coeff * &weight;
    for (d, sign) in orbit {
        let term = if sign > 0 {
            scaled.clone()
        } else {
            -scaled.clone()
        };
        out.add_term(d, term);
    }
}

fn row_sum(tableau: &Tableau, v: &ChordVector<BigRational>) -> ChordVector<BigRational> {
    let groups: Vec<Vec<u16>> = tableau.rows().to_vec();
    let gens = group_generators(v.points(), &groups);
    let order = group_order(&groups);
    let mut out = ChordVector::new(v.points());
    for (c, r) in v.iter() {
        accumulate_orbit_sum(&mut out, c, r, &gens, order);
    }
    out
}

fn column_sum(tableau: &Tableau, v: &ChordVector<BigRational>) -> ChordVector<BigRational> {
    let groups = tableau.columns();
    let gens = group_generators(v.points(), &groups);
    let order = group_order(&groups);
    let mut out = ChordVector::new(v.points());
    for (c, r) in v.iter() {
        accumulate_signed_orbit_sum(&mut out, c, r, &gens, order);
    }
    out
}

/// Applies the symmetrizer to a vector: the signed column sum and the row
/// sum composed in the order the variant dictates.
pub fn apply_symmetrizer(
    spec: &SymmetrizerSpec,
    v: &ChordVector<BigRational>,
) -> Result<ChordVector<BigRational>> {
    if spec.tableau.n() != v.points() {
        return Err(Error::SizeMismatch(format!(
            "tableau on {} entries applied to a vector on {} points",
            spec.tableau.n(),
            v.points()
        )));
    }
    Ok(match spec.variant {
        Variant::C => row_sum(&spec.tableau, &column_sum(&spec.tableau, v)),
        Variant::CPrime => column_sum(&spec.tableau, &row_sum(&spec.tableau, v)),
    })
}

/// Basis of the eigenspace attached to λ: one vector per standard tableau
/// of the doubled shape, verified independent; `fallback` marks the
/// tableau-paired generators described at [`eigenbasis`].
#[derive(Clone, Debug)]
pub struct EigenBasis {
    lambda: Partition,
    tableaux: Vec<Tableau>,
    vectors: Vec<ChordVector<BigRational>>,
    fallback: bool,
}

impl EigenBasis {
    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    /// The standard tableaux indexing the vectors, in step with
    /// [`EigenBasis::vectors`].
    pub fn tableaux(&self) -> &[Tableau] {
        &self.tableaux
    }

    pub fn vectors(&self) -> &[ChordVector<BigRational>] {
        &self.vectors
    }

    pub fn is_fallback(&self) -> bool {
        self.fallback
    }
}

pub(crate) fn vector_coordinates(
    v: &ChordVector<BigRational>,
    diagrams: &[ChordDiagram],
) -> Vec<BigRational> {
    diagrams.iter().map(|d| v.coeff(d)).collect()
}

/// The diagram pairing consecutive entries within each row of the
/// tableau; for the row-filling tableau this is C0.
fn tableau_row_diagram(tau: &Tableau) -> Result<ChordDiagram> {
    let mut pairs = Vec::with_capacity(tau.n() / 2);
    for row in tau.rows() {
        for chunk in row.chunks(2) {
            pairs.push((chunk[0], chunk[1]));
        }
    }
    ChordDiagram::canonicalize(&pairs)
}

fn independent_rank(
    vectors: &[ChordVector<BigRational>],
    diagrams: &[ChordDiagram],
) -> bool {
    let rows: Vec<Vec<BigRational>> = vectors
        .iter()
        .map(|v| vector_coordinates(v, diagrams))
        .collect();
    let cleared = linalg::clear_denominators(&rows);
    linalg::rank_mod_p(&cleared, linalg::DEFAULT_PRIME) == vectors.len()
        || linalg::rank_bigint(&cleared) == vectors.len()
}

/// The eigenbasis {c'_τ(C0) : τ standard of shape 2λ}. The b·a form is
/// the one that works here: the a·b form annihilates C0 whenever a column
/// stabilizer of C0 contains an odd element (already at shape [2,2]).
/// Independence is certified by modular rank first and exact rank second.
///
/// Even in the b·a form some images of C0 vanish once the shape has two
/// rows below an overhanging first row (first at [4,2,2], where 12 of the
/// 56 standard tableaux annihilate C0 and the rest span only 44
/// dimensions). In that case the generator is replaced per tableau by the
/// diagram pairing consecutive entries in each row of τ — the
/// configuration the row group of τ symmetrizes without loss — and the
/// result is re-verified independent and flagged as a fallback rather
/// than silently substituted.
pub fn eigenbasis(lambda: &Partition, n: usize) -> Result<EigenBasis> {
    let k = lambda.weight();
    if k == 0 {
        return Err(Error::InvalidPartition(
            "eigenbasis needs a nonempty partition".into(),
        ));
    }
    if n != 2 * k {
        return Err(Error::SizeMismatch(format!(
            "eigenbasis of {lambda} lives on {} points, got {n}",
            2 * k
        )));
    }
    let shape = lambda.double();
    let c0: ChordVector<BigRational> = ChordVector::single(ChordDiagram::c0(n)?);
    let tableaux = standard_tableaux(&shape);
    let mut vectors = Vec::with_capacity(tableaux.len());
    for tau in &tableaux {
        let spec = SymmetrizerSpec::new(tau.clone(), Variant::CPrime)?;
        vectors.push(apply_symmetrizer(&spec, &c0)?);
    }
    debug_assert_eq!(vectors.len(), hook_dim_usize(&shape));

    let diagrams = enumerate_diagrams(n)?;
    if independent_rank(&vectors, &diagrams) {
        return Ok(EigenBasis {
            lambda: lambda.clone(),
            tableaux,
            vectors,
            fallback: false,
        });
    }

    let mut fallback_vectors = Vec::with_capacity(tableaux.len());
    for tau in &tableaux {
        let spec = SymmetrizerSpec::new(tau.clone(), Variant::CPrime)?;
        let generator: ChordVector<BigRational> =
            ChordVector::single(tableau_row_diagram(tau)?);
        fallback_vectors.push(apply_symmetrizer(&spec, &generator)?);
    }
    if !independent_rank(&fallback_vectors, &diagrams) {
        return Err(Error::Verification(format!(
            "neither generator family yields {} independent vectors for {lambda}",
            tableaux.len()
        )));
    }
    Ok(EigenBasis {
        lambda: lambda.clone(),
        tableaux,
        vectors: fallback_vectors,
        fallback: true,
    })
}

/// Coefficient of C0 in c'_{2λ}(C0), by direct application of the
/// symmetrizer with the row-filling tableau.
pub fn c0_coefficient(lambda: &Partition) -> Result<BigInt> {
    let k = lambda.weight();
    if k == 0 {
        return Err(Error::InvalidPartition(
            "coefficient needs a nonempty partition".into(),
        ));
    }
    let shape = lambda.double();
    let spec = SymmetrizerSpec::new(Tableau::row_filling(shape), Variant::CPrime)?;
    let c0 = ChordDiagram::c0(2 * k)?;
    let image = apply_symmetrizer(&spec, &ChordVector::single(c0.clone()))?;
    let coeff = image.coeff(&c0);
    debug_assert!(coeff.is_integer());
    Ok(coeff.to_integer())
}

/// Eigenvalues of all partitions of k at genus g0, erroring on any exact
/// collision.
fn distinct_eigenvalues(k: usize, g0: i64) -> Result<Vec<(Partition, BigRational)>> {
    let mut out: Vec<(Partition, BigRational)> = Vec::new();
    for mu in enumerate_partitions(k) {
        let value = eigenvalue_mu(&mu).eval_int(g0);
        if let Some((other, _)) = out.iter().find(|(_, v)| *v == value) {
            return Err(Error::EigenvalueCollision {
                genus: g0,
                lhs: other.to_string(),
                rhs: mu.to_string(),
            });
        }
        out.push((mu, value));
    }
    Ok(out)
}

/// Smallest genus ≥ k at which all eigenvalues for weight k are pairwise
/// distinct. k itself always works; the loop is defensive.
pub fn default_projection_genus(k: usize) -> i64 {
    let mut g0 = k.max(1) as i64;
    while distinct_eigenvalues(k, g0).is_err() {
        g0 += 1;
    }
    g0
}

/// Projects v onto the λ-eigenspace of the intersection operator at
/// genus g0, via the interpolation product over all other eigenvalues.
pub fn spectral_project(
    lambda: &Partition,
    g0: i64,
    v: &ChordVector<BigRational>,
) -> Result<ChordVector<BigRational>> {
    let k = v.points() / 2;
    if lambda.weight() != k {
        return Err(Error::SizeMismatch(format!(
            "projecting a vector on {} points onto {lambda}",
            v.points()
        )));
    }
    let values = distinct_eigenvalues(k, g0)?;
    let own = values
        .iter()
        .find(|(mu, _)| mu == lambda)
        .map(|(_, v)| v.clone())
        .expect("lambda is a partition of k");
    let mut w = v.clone();
    for (mu, value) in &values {
        if mu == lambda {
            continue;
        }
        let shifted = apply_m_at(&w, g0)?.minus(&w.scaled(value))?;
        let denom = &own - value;
        w = shifted.scaled(&denom.recip());
    }
    Ok(w)
}

/// Full eigen-decomposition of v at genus g0: one component per partition
/// of k, summing exactly to v.
pub fn decompose(
    v: &ChordVector<BigRational>,
    g0: i64,
) -> Result<BTreeMap<Partition, ChordVector<BigRational>>> {
    let k = v.points() / 2;
    let mut out = BTreeMap::new();
    let mut total: ChordVector<BigRational> = ChordVector::new(v.points());
    for lambda in enumerate_partitions(k) {
        let component = spectral_project(&lambda, g0, v)?;
        total = total.plus(&component)?;
        out.insert(lambda, component);
    }
    if &total != v {
        return Err(Error::Verification(format!(
            "eigencomponents at genus {g0} do not sum back to the input"
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chords::{all_ones, apply_m, pairing_form, sign_of};
    use crate::partitions::hook_dim_usize;
    use crate::poly::{rat_i64, PolyG};
    use itertools::Itertools;
    use num_traits::Zero;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn shape(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn row_spec(parts: &[u32], variant: Variant) -> SymmetrizerSpec {
        SymmetrizerSpec::new(Tableau::row_filling(shape(parts)), variant).unwrap()
    }

    #[test]
    fn spec_rejects_bad_tableaux() {
        // non-standard filling
        let t = Tableau::new(shape(&[2, 2]), vec![vec![1, 3], vec![2, 4]]).unwrap();
        assert!(SymmetrizerSpec::new(t, Variant::C).is_ok());
        let t = Tableau::new(shape(&[2, 2]), vec![vec![2, 3], vec![1, 4]]).unwrap();
        assert!(SymmetrizerSpec::new(t, Variant::C).is_err());
        // odd row length
        let t = Tableau::row_filling(shape(&[2, 1, 1]));
        assert!(SymmetrizerSpec::new(t, Variant::C).is_err());
    }

    #[test]
    fn single_row_symmetrizer_gives_scaled_all_ones() {
        for k in [1usize, 2, 3] {
            let spec = row_spec(&[2 * k as u32], Variant::C);
            let expected_scale = rat_i64((1i64 << k) * (1..=k as i64).product::<i64>());
            for c in enumerate_diagrams(2 * k).unwrap() {
                let image =
                    apply_symmetrizer(&spec, &ChordVector::single(c.clone())).unwrap();
                let expect = all_ones::<BigRational>(2 * k)
                    .unwrap()
                    .scaled(&expected_scale);
                assert_eq!(image, expect);
            }
        }
    }

    #[test]
    fn two_by_two_c_prime_image_is_an_eigenvector() {
        let spec = row_spec(&[2, 2], Variant::CPrime);
        let c0: ChordVector<BigRational> = ChordVector::single(ChordDiagram::c0(4).unwrap());
        let image = apply_symmetrizer(&spec, &c0).unwrap();
        assert!(!image.is_zero_vector());
        let symbolic = image.map(|r| PolyG::constant(r.clone()));
        let m_image = apply_m(&symbolic).unwrap();
        // eigenvalue 2g(2g+1)
        let expect = symbolic.scaled(&PolyG::from_ints(&[0, 2, 4]));
        assert_eq!(m_image, expect);
    }

    #[test]
    fn symmetrizers_are_idempotent_up_to_scalar() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for (parts, variant) in [
            (vec![4u32], Variant::C),
            (vec![2, 2], Variant::C),
            (vec![2, 2], Variant::CPrime),
            (vec![4, 2], Variant::C),
            (vec![4, 2], Variant::CPrime),
        ] {
            let spec = row_spec(&parts, variant);
            let n = spec.tableau().n();
            let diagrams = enumerate_diagrams(n).unwrap();
            let mut v: ChordVector<BigRational> = ChordVector::new(n);
            for c in &diagrams {
                v.add_term(c.clone(), rat_i64(rng.gen_range(-3..=3)));
            }
            let once = apply_symmetrizer(&spec, &v).unwrap();
            let twice = apply_symmetrizer(&spec, &once).unwrap();
            if once.is_zero_vector() {
                assert!(twice.is_zero_vector());
                continue;
            }
            let (c, r) = once.iter().next().unwrap();
            let scale = twice.coeff(c) / r;
            assert!(!scale.is_zero());
            assert_eq!(twice, once.scaled(&scale));
        }
    }

    /// Brute-force group algebra application for small shapes.
    fn naive_apply(
        tableau: &Tableau,
        variant: Variant,
        v: &ChordVector<BigRational>,
    ) -> ChordVector<BigRational> {
        let n = tableau.n();
        let all: Vec<Permutation> = (1..=n as u16)
            .permutations(n)
            .map(|images| Permutation::from_images(images).unwrap())
            .collect();
        let preserves = |p: &Permutation, groups: &[Vec<u16>]| {
            groups.iter().all(|group| {
                let img: std::collections::BTreeSet<u16> =
                    group.iter().map(|&x| p.apply(x)).collect();
                let set: std::collections::BTreeSet<u16> = group.iter().copied().collect();
                img == set
            })
        };
        let rows: Vec<Vec<u16>> = tableau.rows().to_vec();
        let cols = tableau.columns();
        let p_group: Vec<&Permutation> =
            all.iter().filter(|p| preserves(p, &rows)).collect();
        let q_group: Vec<&Permutation> =
            all.iter().filter(|p| preserves(p, &cols)).collect();
        let apply_sum = |elements: &[&Permutation],
                         signed: bool,
                         v: &ChordVector<BigRational>| {
            let mut out = ChordVector::new(n);
            for p in elements {
                let factor = if signed { i64::from(p.sign()) } else { 1 };
                for (c, r) in v.iter() {
                    out.add_term(permute(p, c).unwrap(), r * rat_i64(factor));
                }
            }
            out
        };
        match variant {
            Variant::C => apply_sum(&p_group, false, &apply_sum(&q_group, true, v)),
            Variant::CPrime => apply_sum(&q_group, true, &apply_sum(&p_group, false, v)),
        }
    }

    #[test]
    fn orbit_sums_match_naive_group_algebra() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for (parts, variant) in [
            (vec![4u32], Variant::C),
            (vec![4], Variant::CPrime),
            (vec![2, 2], Variant::C),
            (vec![2, 2], Variant::CPrime),
            (vec![4, 2], Variant::C),
            (vec![4, 2], Variant::CPrime),
            (vec![2, 2, 2], Variant::C),
        ] {
            let spec = row_spec(&parts, variant);
            let n = spec.tableau().n();
            let diagrams = enumerate_diagrams(n).unwrap();
            let mut v: ChordVector<BigRational> = ChordVector::new(n);
            for c in &diagrams {
                if rng.gen_bool(0.5) {
                    v.add_term(c.clone(), rat_i64(rng.gen_range(-2..=2)));
                }
            }
            assert_eq!(
                apply_symmetrizer(&spec, &v).unwrap(),
                naive_apply(spec.tableau(), variant, &v),
                "shape {parts:?} {variant:?}"
            );
        }
    }

    #[test]
    fn eigenbasis_counts_and_flags() {
        let basis = eigenbasis(&shape(&[2]), 4).unwrap();
        assert_eq!(basis.vectors().len(), 1);
        assert!(!basis.is_fallback());
        // proportional to the all-ones vector
        let ones: ChordVector<BigRational> = all_ones(4).unwrap();
        let v = &basis.vectors()[0];
        let scale = v.iter().next().unwrap().1.clone();
        assert_eq!(v, &ones.scaled(&scale));

        let basis = eigenbasis(&shape(&[1, 1]), 4).unwrap();
        assert_eq!(basis.vectors().len(), 2);
        assert!(!basis.is_fallback());

        for k in [2usize, 3] {
            let mut total = 0;
            for lambda in enumerate_partitions(k) {
                let b = eigenbasis(&lambda, 2 * k).unwrap();
                assert!(!b.is_fallback(), "{lambda}");
                assert_eq!(b.vectors().len(), hook_dim_usize(&lambda.double()));
                total += b.vectors().len();
            }
            assert_eq!(total, enumerate_diagrams(2 * k).unwrap().len());
        }

        assert!(eigenbasis(&shape(&[2]), 6).is_err());
    }

    /// At shape [4,2,2] some symmetrizer images of C0 vanish, so the
    /// basis must come from the tableau-paired generators and say so.
    #[test]
    fn eigenbasis_falls_back_to_tableau_paired_generators() {
        let lambda = shape(&[2, 1, 1]);
        let basis = eigenbasis(&lambda, 8).unwrap();
        assert!(basis.is_fallback());
        assert_eq!(basis.vectors().len(), 56);
        assert_eq!(basis.tableaux().len(), 56);
        assert!(basis.vectors().iter().all(|v| !v.is_zero_vector()));
        // still genuine eigenvectors
        let mu = eigenvalue_mu(&lambda).eval_int(2);
        for v in basis.vectors().iter().take(3) {
            assert_eq!(apply_m_at(v, 2).unwrap(), v.scaled(&mu));
        }
        // the vanishing that forces the fallback: c'_τ kills C0 for some
        // standard tableau of [4,2,2]
        let c0: ChordVector<BigRational> = ChordVector::single(ChordDiagram::c0(8).unwrap());
        let dead = basis.tableaux().iter().any(|tau| {
            let spec = SymmetrizerSpec::new(tau.clone(), Variant::CPrime).unwrap();
            apply_symmetrizer(&spec, &c0).unwrap().is_zero_vector()
        });
        assert!(dead);
    }

    #[test]
    fn tableau_row_diagram_examples() {
        // row filling of [4,2] pairs consecutively: C0
        let tau = Tableau::row_filling(shape(&[4, 2]));
        assert_eq!(
            tableau_row_diagram(&tau).unwrap(),
            ChordDiagram::c0(6).unwrap()
        );
        let other = Tableau::new(
            shape(&[4, 2]),
            vec![vec![1, 3, 4, 6], vec![2, 5]],
        )
        .unwrap();
        assert_eq!(
            tableau_row_diagram(&other).unwrap(),
            ChordDiagram::canonicalize(&[(1, 3), (4, 6), (2, 5)]).unwrap()
        );
    }

    #[test]
    fn eigenbasis_vectors_satisfy_symbolic_eigen_identity() {
        for k in 1..=3usize {
            for lambda in enumerate_partitions(k) {
                let mu = eigenvalue_mu(&lambda);
                for v in eigenbasis(&lambda, 2 * k).unwrap().vectors() {
                    let symbolic = v.map(|r| PolyG::constant(r.clone()));
                    assert_eq!(
                        apply_m(&symbolic).unwrap(),
                        symbolic.scaled(&mu),
                        "{lambda}"
                    );
                }
            }
        }
    }

    #[test]
    fn eigenspaces_are_orthogonal_both_ways() {
        for k in [2usize, 3] {
            let bases: Vec<EigenBasis> = enumerate_partitions(k)
                .iter()
                .map(|l| eigenbasis(l, 2 * k).unwrap())
                .collect();
            for (i, a) in bases.iter().enumerate() {
                for b in bases.iter().skip(i + 1) {
                    for v in a.vectors() {
                        for w in b.vectors() {
                            let vs = v.map(|r| PolyG::constant(r.clone()));
                            let ws = w.map(|r| PolyG::constant(r.clone()));
                            assert!(pairing_form(&vs, &ws).unwrap().is_zero());
                            assert!(v.dot(w).unwrap().is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pairing_is_adjoint_to_the_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for n in [4usize, 6] {
            let diagrams = enumerate_diagrams(n).unwrap();
            for _ in 0..10 {
                let mut xi: ChordVector<BigRational> = ChordVector::new(n);
                let mut eta: ChordVector<BigRational> = ChordVector::new(n);
                for c in &diagrams {
                    if rng.gen_bool(0.4) {
                        xi.add_term(c.clone(), rat_i64(rng.gen_range(-3..=3)));
                    }
                    if rng.gen_bool(0.4) {
                        eta.add_term(c.clone(), rat_i64(rng.gen_range(-3..=3)));
                    }
                }
                let x = Permutation::random(n, &mut rng);
                let x_eta = act(&x, &eta);
                let xhat_xi = act(&x.inverse(), &xi);
                for g in [1i64, 2, 3] {
                    assert_eq!(
                        crate::chords::pairing_form_at(&xi, &x_eta, g).unwrap(),
                        crate::chords::pairing_form_at(&xhat_xi, &eta, g).unwrap()
                    );
                }
            }
        }
    }

    fn act(x: &Permutation, v: &ChordVector<BigRational>) -> ChordVector<BigRational> {
        let mut out = ChordVector::new(v.points());
        for (c, r) in v.iter() {
            out.add_term(permute(x, c).unwrap(), r.clone());
        }
        out
    }

    #[test]
    fn c0_coefficients_match_closed_formula() {
        use crate::partitions::c0_coefficient_formula;
        assert_eq!(c0_coefficient(&shape(&[2, 1])).unwrap(), BigInt::from(32));
        for k in 1..=4usize {
            for lambda in enumerate_partitions(k) {
                assert_eq!(
                    c0_coefficient(&lambda).unwrap(),
                    c0_coefficient_formula(&lambda),
                    "{lambda}"
                );
            }
        }
    }

    #[test]
    fn spectral_projection_examples() {
        let ones: ChordVector<BigRational> = all_ones(4).unwrap();
        let g0 = default_projection_genus(2);
        assert_eq!(g0, 2);
        assert_eq!(spectral_project(&shape(&[2]), g0, &ones).unwrap(), ones);
        assert!(spectral_project(&shape(&[1, 1]), g0, &ones)
            .unwrap()
            .is_zero_vector());
        assert!(spectral_project(&shape(&[1, 1]), 2, &ones.scaled(&rat_i64(0))).is_ok());
        assert!(spectral_project(&shape(&[2, 1]), 2, &ones).is_err());
    }

    #[test]
    fn projections_land_in_eigenspaces() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for k in [2usize, 3] {
            let g0 = default_projection_genus(k);
            let diagrams = enumerate_diagrams(2 * k).unwrap();
            for _ in 0..5 {
                let mut v: ChordVector<BigRational> = ChordVector::new(2 * k);
                for c in &diagrams {
                    if rng.gen_bool(0.5) {
                        v.add_term(c.clone(), rat_i64(rng.gen_range(-5..=5)));
                    }
                }
                for lambda in enumerate_partitions(k) {
                    let p = spectral_project(&lambda, g0, &v).unwrap();
                    let mu = eigenvalue_mu(&lambda).eval_int(g0);
                    assert_eq!(apply_m_at(&p, g0).unwrap(), p.scaled(&mu), "{lambda}");
                    // projectors are idempotent
                    assert_eq!(spectral_project(&lambda, g0, &p).unwrap(), p);
                }
            }
        }
    }

    #[test]
    fn decomposition_of_the_base_diagram() {
        let c0: ChordVector<BigRational> = ChordVector::single(ChordDiagram::c0(4).unwrap());
        let parts = decompose(&c0, 2).unwrap();
        let ones: ChordVector<BigRational> = all_ones(4).unwrap();
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert_eq!(parts[&shape(&[2])], ones.scaled(&third));
        assert_eq!(
            parts[&shape(&[1, 1])],
            c0.minus(&ones.scaled(&third)).unwrap()
        );
        assert_eq!(parts.len(), 2);
    }

    #[test]
    fn decomposition_sums_to_the_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for k in [2usize, 3] {
            let g0 = default_projection_genus(k);
            let diagrams = enumerate_diagrams(2 * k).unwrap();
            let mut v: ChordVector<BigRational> = ChordVector::new(2 * k);
            for c in &diagrams {
                v.add_term(c.clone(), rat_i64(rng.gen_range(-4..=4)));
            }
            let parts = decompose(&v, g0).unwrap();
            let nonzero = parts.values().filter(|w| !w.is_zero_vector()).count();
            assert!(nonzero <= enumerate_partitions(k).len());
            let sum = parts
                .values()
                .fold(ChordVector::new(2 * k), |acc, w| acc.plus(w).unwrap());
            assert_eq!(sum, v);
        }
    }

    #[test]
    fn kernel_dimension_matches_eigenvalue_vanishing() {
        use crate::chords::intersection_matrix;
        for k in 1..=3usize {
            let m = intersection_matrix(2 * k).unwrap();
            for g in 1..=3i64 {
                let evaluated: Vec<Vec<BigRational>> = m
                    .iter()
                    .map(|row| row.iter().map(|p| p.eval_int(g)).collect())
                    .collect();
                let rank = linalg::rank_rational(&evaluated);
                let expect: usize = enumerate_partitions(k)
                    .iter()
                    .filter(|l| i64::from(l.first()) <= g)
                    .map(|l| hook_dim_usize(&l.double()))
                    .sum();
                assert_eq!(rank, expect, "k={k} g={g}");
            }
        }
    }

    #[test]
    fn symmetrized_vectors_stay_antisymmetric_in_sign_convention() {
        // sanity: a column-group sum annihilates any diagram fixed by an
        // odd column stabilizer element
        let t = Tableau::row_filling(shape(&[2, 2]));
        // diagram {1,3},{2,4}: swapping (1 3) fixes it, so the signed sum
        // cancels it
        let d = ChordDiagram::canonicalize(&[(1, 3), (2, 4)]).unwrap();
        assert_eq!(sign_of(&d), -1);
        let v = column_sum(&t, &ChordVector::single(d));
        assert!(v.is_zero_vector());
    }
}
