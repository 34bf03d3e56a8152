//! Finite graded commutative algebras with exact coefficients.
//!
//! An algebra is described by an explicit ordered basis of monomials, a
//! structure-constant table, and a distinguished fundamental monomial in the
//! top degree. The pairing against the fundamental class sends that monomial
//! to 1 and every other top-degree basis monomial to 0, so evaluating a
//! cohomology class on the fundamental class of the underlying space is a
//! single coefficient lookup.
//!
//! Rational algebras are restricted to even degrees, which keeps the graded
//! commutativity sign trivial; every class we ever store over the rationals
//! (Pontrjagin classes, Euler classes of even-rank bundles) is of even
//! degree.
//!
//! All values are immutable after construction and shared through `Arc`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{FieldTag, Scalar};

pub type AlgebraRef<K> = Arc<GradedAlgebra<K>>;

/// A basis monomial as a product of named generator powers. The empty
/// product is the unit monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub factors: Vec<(String, u32)>,
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial { factors: Vec::new() }
    }

    pub fn single(label: &str) -> Self {
        Monomial { factors: vec![(label.to_string(), 1)] }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (name, exp) in &self.factors {
            if *exp == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{exp}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

type SparseRow<K> = Vec<(usize, K)>;

/// A finite graded commutative algebra over an exact coefficient field,
/// with a fundamental-class pairing.
pub struct GradedAlgebra<K: Scalar> {
    top_degree: usize,
    degrees: Vec<usize>,
    monomials: Vec<Monomial>,
    degree_index: Vec<Vec<usize>>,
    table: Vec<SparseRow<K>>,
    fundamental: usize,
    generators: Vec<(String, usize)>,
}

impl<K: Scalar> fmt::Debug for GradedAlgebra<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GradedAlgebra<{}>(top {}, basis {})",
            K::FIELD,
            self.top_degree,
            self.degrees.len()
        )
    }
}

impl<K: Scalar> GradedAlgebra<K> {
    /// Builds an algebra from explicit structure constants, eagerly checking
    /// every invariant: the unit, the grading of products, commutativity and
    /// associativity on basis elements, and even degrees over the rationals.
    pub fn from_structure(
        basis: Vec<(Monomial, usize)>,
        products: Vec<Vec<SparseRow<K>>>,
        fundamental: usize,
        generators: Vec<(String, usize)>,
    ) -> Result<AlgebraRef<K>> {
        let m = basis.len();
        if m == 0 {
            return Err(Error::Invariant("algebra basis is empty".into()));
        }
        if products.len() != m || products.iter().any(|row| row.len() != m) {
            return Err(Error::Invariant("structure table has wrong shape".into()));
        }
        let (monomials, degrees): (Vec<_>, Vec<_>) = basis.into_iter().unzip();
        let mut table = Vec::with_capacity(m * m);
        for row in products {
            for mut entry in row {
                entry.retain(|(_, c)| !c.is_zero());
                entry.sort_by_key(|(i, _)| *i);
                table.push(entry);
            }
        }
        let algebra = Self::assemble(monomials, degrees, table, fundamental, generators)?;
        algebra.check_structure()?;
        Ok(algebra)
    }

    /// Internal constructor for tables that are correct by construction
    /// (the truncated-polynomial builder and tensor products). Skips the
    /// cubic associativity sweep; shape invariants are still validated.
    pub(crate) fn assemble(
        monomials: Vec<Monomial>,
        degrees: Vec<usize>,
        table: Vec<SparseRow<K>>,
        fundamental: usize,
        generators: Vec<(String, usize)>,
    ) -> Result<AlgebraRef<K>> {
        let m = degrees.len();
        if degrees[0] != 0 || degrees.iter().skip(1).any(|&d| d == 0) {
            return Err(Error::Invariant(
                "degree 0 part of the basis must be exactly the unit monomial".into(),
            ));
        }
        if degrees.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Invariant("basis must be sorted by degree".into()));
        }
        if K::FIELD == FieldTag::Rat && degrees.iter().any(|&d| d % 2 != 0) {
            return Err(Error::Invariant("RAT algebras must be evenly graded".into()));
        }
        let top_degree = *degrees.last().unwrap();
        if fundamental >= m || degrees[fundamental] != top_degree {
            return Err(Error::Invariant(
                "fundamental monomial must lie in the top degree".into(),
            ));
        }
        let mut degree_index = vec![Vec::new(); top_degree + 1];
        for (i, &d) in degrees.iter().enumerate() {
            degree_index[d].push(i);
        }
        for (name, idx) in &generators {
            if *idx >= m {
                return Err(Error::Invariant(format!("generator {name} out of range")));
            }
        }
        Ok(Arc::new(GradedAlgebra {
            top_degree,
            degrees,
            monomials,
            degree_index,
            table,
            fundamental,
            generators,
        }))
    }

    /// Verifies unit, grading, commutativity and associativity of the
    /// structure table. Cubic in the basis size.
    fn check_structure(self: &AlgebraRef<K>) -> Result<()> {
        let m = self.len();
        for j in 0..m {
            let row = &self.table[j];
            if row.len() != 1 || row[0] != (j, K::one()) {
                return Err(Error::Invariant("unit does not act as identity".into()));
            }
            let col = &self.table[j * m];
            if col.len() != 1 || col[0] != (j, K::one()) {
                return Err(Error::Invariant("unit does not act as identity".into()));
            }
        }
        for i in 0..m {
            for j in 0..m {
                let d = self.degrees[i] + self.degrees[j];
                for (t, _) in &self.table[i * m + j] {
                    if self.degrees[*t] != d {
                        return Err(Error::Invariant(format!(
                            "product {}*{} is not homogeneous of degree {d}",
                            self.monomials[i], self.monomials[j]
                        )));
                    }
                }
                if d > self.top_degree && !self.table[i * m + j].is_empty() {
                    return Err(Error::Invariant(
                        "products above the top degree must vanish".into(),
                    ));
                }
            }
        }
        for i in 0..m {
            for j in i..m {
                if self.table[i * m + j] != self.table[j * m + i] {
                    return Err(Error::Invariant(format!(
                        "multiplication is not commutative on {} and {}",
                        self.monomials[i], self.monomials[j]
                    )));
                }
            }
        }
        for i in 0..m {
            let ei = Element::basis(self, i);
            for j in i..m {
                let ej = Element::basis(self, j);
                let eij = ei.mul(&ej);
                for l in j..m {
                    let el = Element::basis(self, l);
                    let left = eij.mul(&el);
                    let right = ei.mul(&ej.mul(&el));
                    if left != right {
                        return Err(Error::Invariant(format!(
                            "multiplication is not associative on {}, {}, {}",
                            self.monomials[i], self.monomials[j], self.monomials[l]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Truncated polynomial model: basis monomials `prod g_i^{e_i}` with
    /// `e_i < nilpotency_i` and degree at most `dim`. The fundamental class
    /// is the unique top monomial with all exponents maximal, whose degree
    /// must equal `dim`. Covers the projective spaces and spheres used as
    /// desk-scale manifold models.
    pub fn truncated_polynomial(
        gens: &[(&str, usize, u32)],
        dim: usize,
    ) -> Result<AlgebraRef<K>> {
        for (name, degree, nilp) in gens {
            if *degree == 0 {
                return Err(Error::Invariant(format!("generator {name} has degree 0")));
            }
            if K::FIELD == FieldTag::Rat && degree % 2 != 0 {
                return Err(Error::Invariant("RAT algebras must be evenly graded".into()));
            }
            if *nilp == 0 {
                return Err(Error::Invariant(format!(
                    "generator {name} has nilpotency exponent 0"
                )));
            }
        }
        let mut names = std::collections::HashSet::new();
        for (name, _, _) in gens {
            if !names.insert(*name) {
                return Err(Error::Invariant(format!("duplicate generator name {name}")));
            }
        }

        // Enumerate all exponent vectors with e_i < n_i.
        let mut exps: Vec<Vec<u32>> = vec![Vec::new()];
        for (_, _, nilp) in gens {
            let mut next = Vec::new();
            for e in &exps {
                for v in 0..*nilp {
                    let mut e2 = e.clone();
                    e2.push(v);
                    next.push(e2);
                }
            }
            exps = next;
        }
        let degree_of = |e: &[u32]| -> usize {
            e.iter()
                .zip(gens)
                .map(|(&v, (_, d, _))| v as usize * d)
                .sum()
        };
        let full_top: usize = gens.iter().map(|(_, d, n)| d * (*n as usize - 1)).sum();
        if !exps.iter().any(|e| degree_of(e) == dim) {
            return Err(Error::Invariant(format!("no monomial of degree {dim}")));
        }
        if full_top != dim {
            return Err(Error::Invariant(format!(
                "fundamental monomial has degree {full_top}, not {dim}"
            )));
        }
        let mut kept: Vec<Vec<u32>> = exps.into_iter().filter(|e| degree_of(e) <= dim).collect();
        kept.sort_by(|a, b| degree_of(a).cmp(&degree_of(b)).then_with(|| a.cmp(b)));

        let mut index = std::collections::HashMap::new();
        for (i, e) in kept.iter().enumerate() {
            index.insert(e.clone(), i);
        }
        let monomials: Vec<Monomial> = kept
            .iter()
            .map(|e| Monomial {
                factors: e
                    .iter()
                    .zip(gens)
                    .filter(|(&v, _)| v > 0)
                    .map(|(&v, (name, _, _))| (name.to_string(), v))
                    .collect(),
            })
            .collect();
        let degrees: Vec<usize> = kept.iter().map(|e| degree_of(e)).collect();
        let m = kept.len();
        let mut table = Vec::with_capacity(m * m);
        for a in &kept {
            for b in &kept {
                let sum: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                let in_range = sum
                    .iter()
                    .zip(gens)
                    .all(|(&v, (_, _, n))| v < *n);
                if in_range && degree_of(&sum) <= dim {
                    table.push(vec![(index[&sum], K::one())]);
                } else {
                    table.push(Vec::new());
                }
            }
        }
        let fundamental = *index
            .get(&gens.iter().map(|(_, _, n)| n - 1).collect::<Vec<u32>>())
            .expect("top monomial present");
        let generators = gens
            .iter()
            .enumerate()
            .filter(|(_, (_, _, n))| *n >= 2)
            .map(|(gi, (name, _, _))| {
                let mut e = vec![0u32; gens.len()];
                e[gi] = 1;
                (name.to_string(), index[&e])
            })
            .collect();
        Self::assemble(monomials, degrees, table, fundamental, generators)
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn top_degree(&self) -> usize {
        self.top_degree
    }

    pub fn degree_of(&self, idx: usize) -> usize {
        self.degrees[idx]
    }

    pub fn monomial(&self, idx: usize) -> &Monomial {
        &self.monomials[idx]
    }

    pub fn fundamental_index(&self) -> usize {
        self.fundamental
    }

    pub fn basis_of_degree(&self, degree: usize) -> &[usize] {
        self.degree_index
            .get(degree)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    pub fn generators(&self) -> &[(String, usize)] {
        &self.generators
    }

    pub fn generator(self: &AlgebraRef<K>, name: &str) -> Option<Element<K>> {
        self.generators
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, idx)| Element::basis(self, *idx))
    }

    fn product_row(&self, i: usize, j: usize) -> &SparseRow<K> {
        &self.table[i * self.len() + j]
    }
}

pub(crate) fn same_algebra<K: Scalar>(a: &AlgebraRef<K>, b: &AlgebraRef<K>) {
    assert!(
        Arc::ptr_eq(a, b),
        "operands belong to different algebras"
    );
}

/// An element of a graded algebra: a sparse exact linear combination of
/// basis monomials. Zero coefficients are never stored.
#[derive(Clone)]
pub struct Element<K: Scalar> {
    owner: AlgebraRef<K>,
    coeffs: BTreeMap<usize, K>,
}

impl<K: Scalar> Element<K> {
    pub fn zero(owner: &AlgebraRef<K>) -> Self {
        Element { owner: owner.clone(), coeffs: BTreeMap::new() }
    }

    pub fn one(owner: &AlgebraRef<K>) -> Self {
        Element::basis(owner, 0)
    }

    pub fn basis(owner: &AlgebraRef<K>, idx: usize) -> Self {
        assert!(idx < owner.len(), "basis index out of range");
        let mut coeffs = BTreeMap::new();
        coeffs.insert(idx, K::one());
        Element { owner: owner.clone(), coeffs }
    }

    pub fn from_coeffs(owner: &AlgebraRef<K>, coeffs: BTreeMap<usize, K>) -> Self {
        let coeffs = coeffs
            .into_iter()
            .filter(|(i, c)| {
                assert!(*i < owner.len(), "basis index out of range");
                !c.is_zero()
            })
            .collect();
        Element { owner: owner.clone(), coeffs }
    }

    pub fn owner(&self) -> &AlgebraRef<K> {
        &self.owner
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, K> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        same_algebra(&self.owner, &rhs.owner);
        let mut coeffs = self.coeffs.clone();
        for (i, c) in &rhs.coeffs {
            let entry = coeffs.entry(*i).or_insert_with(K::zero);
            *entry = entry.add(c);
        }
        coeffs.retain(|_, c| !c.is_zero());
        Element { owner: self.owner.clone(), coeffs }
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|(i, c)| (*i, c.neg())).collect();
        Element { owner: self.owner.clone(), coeffs }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, k: &K) -> Self {
        if k.is_zero() {
            return Element::zero(&self.owner);
        }
        let coeffs = self.coeffs.iter().map(|(i, c)| (*i, c.mul(k))).collect();
        Element { owner: self.owner.clone(), coeffs }
    }

    /// Graded product via the structure constants.
    ///
    /// # Panics
    ///
    /// Panics if the operands belong to different algebras.
    pub fn mul(&self, rhs: &Self) -> Self {
        same_algebra(&self.owner, &rhs.owner);
        let mut acc: BTreeMap<usize, K> = BTreeMap::new();
        for (i, a) in &self.coeffs {
            for (j, b) in &rhs.coeffs {
                let ab = a.mul(b);
                for (t, c) in self.owner.product_row(*i, *j) {
                    let entry = acc.entry(*t).or_insert_with(K::zero);
                    *entry = entry.add(&ab.mul(c));
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Element { owner: self.owner.clone(), coeffs: acc }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Element::one(&self.owner);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Pairing against the fundamental class: the coefficient of the
    /// fundamental monomial. Components of lower degree contribute 0.
    pub fn pair(&self) -> K {
        self.coeffs
            .get(&self.owner.fundamental_index())
            .cloned()
            .unwrap_or_else(K::zero)
    }

    /// The homogeneous part of the given degree.
    pub fn component(&self, degree: usize) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(i, _)| self.owner.degree_of(**i) == degree)
            .map(|(i, c)| (*i, c.clone()))
            .collect();
        Element { owner: self.owner.clone(), coeffs }
    }

    /// Whether every stored term has the given degree. Zero is homogeneous
    /// of every degree.
    pub fn is_homogeneous_of(&self, degree: usize) -> bool {
        self.coeffs.keys().all(|i| self.owner.degree_of(*i) == degree)
    }

    /// Degree of a nonzero homogeneous element, `None` for zero or mixed.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.coeffs.keys();
        let first = self.owner.degree_of(*it.next()?);
        it.all(|i| self.owner.degree_of(*i) == first).then_some(first)
    }

    /// Canonical polynomial string over the generator names, e.g.
    /// `"3*x^2-1/2*x*y"`. Constant terms render as bare coefficients.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in &self.coeffs {
            let (negative, magnitude) = c.sign_split();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push(if negative { '-' } else { '+' });
            }
            if *i == 0 {
                out.push_str(&magnitude.to_string());
            } else {
                out.push_str(&format!("{}*{}", magnitude, self.owner.monomial(*i)));
            }
        }
        out
    }
}

impl<K: Scalar> PartialEq for Element<K> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.owner, &other.owner) && self.coeffs == other.coeffs
    }
}

impl<K: Scalar> Eq for Element<K> {}

impl<K: Scalar> fmt::Debug for Element<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// A degree-shifting linear map between algebras, stored column by column
/// on the source basis. A map flagged as a ring map additionally satisfies
/// `phi(1) = 1` and `phi(ab) = phi(a) phi(b)`, verified at construction.
///
/// Houses both pullbacks (ring maps, shift 0) and Gysin pushforwards
/// (shift equal to the codimension).
#[derive(Clone)]
pub struct LinearMap<K: Scalar> {
    source: AlgebraRef<K>,
    target: AlgebraRef<K>,
    shift: i64,
    cols: Vec<Element<K>>,
    ring_map: bool,
}

impl<K: Scalar> fmt::Debug for LinearMap<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LinearMap(shift {}, ring {}, {} -> {} basis columns)",
            self.shift,
            self.ring_map,
            self.source.len(),
            self.target.len()
        )
    }
}

impl<K: Scalar> LinearMap<K> {
    pub fn new(
        source: &AlgebraRef<K>,
        target: &AlgebraRef<K>,
        shift: i64,
        cols: Vec<Element<K>>,
        ring_map: bool,
    ) -> Result<Self> {
        if cols.len() != source.len() {
            return Err(Error::Invariant(
                "linear map needs one column per source basis monomial".into(),
            ));
        }
        for (i, col) in cols.iter().enumerate() {
            same_algebra(col.owner(), target);
            let d = source.degree_of(i) as i64 + shift;
            if d < 0 || d > target.top_degree() as i64 {
                if !col.is_zero() {
                    return Err(Error::Invariant(format!(
                        "column {i} must vanish: image degree {d} is out of range"
                    )));
                }
            } else if !col.is_homogeneous_of(d as usize) {
                return Err(Error::Invariant(format!(
                    "column {i} is not homogeneous of degree {d}"
                )));
            }
        }
        let map = LinearMap { source: source.clone(), target: target.clone(), shift, cols, ring_map };
        if ring_map {
            if shift != 0 {
                return Err(Error::Invariant("a ring map must have degree shift 0".into()));
            }
            if map.cols[0] != Element::one(target) {
                return Err(Error::Invariant("a ring map must send 1 to 1".into()));
            }
            let m = source.len();
            for i in 0..m {
                for j in i..m {
                    let lhs = map.apply(&Element::basis(source, i).mul(&Element::basis(source, j)));
                    let rhs = map.cols[i].mul(&map.cols[j]);
                    if lhs != rhs {
                        return Err(Error::Invariant(format!(
                            "ring map is not multiplicative on {} and {}",
                            source.monomial(i),
                            source.monomial(j)
                        )));
                    }
                }
            }
        }
        Ok(map)
    }

    pub fn identity(algebra: &AlgebraRef<K>) -> Self {
        let cols = (0..algebra.len()).map(|i| Element::basis(algebra, i)).collect();
        LinearMap {
            source: algebra.clone(),
            target: algebra.clone(),
            shift: 0,
            cols,
            ring_map: true,
        }
    }

    /// The map that is zero on every basis monomial, with the given shift.
    pub fn zero(source: &AlgebraRef<K>, target: &AlgebraRef<K>, shift: i64) -> Self {
        let cols = (0..source.len()).map(|_| Element::zero(target)).collect();
        LinearMap { source: source.clone(), target: target.clone(), shift, cols, ring_map: false }
    }

    /// Builds a ring map from images of the source generators, extended
    /// multiplicatively over basis monomials. Fails if the images do not
    /// respect the source relations.
    pub fn from_generator_images(
        source: &AlgebraRef<K>,
        target: &AlgebraRef<K>,
        images: &[(String, Element<K>)],
    ) -> Result<Self> {
        let mut cols = Vec::with_capacity(source.len());
        for i in 0..source.len() {
            let mut img = Element::one(target);
            for (name, exp) in &source.monomial(i).factors {
                let gen_img = images
                    .iter()
                    .find(|(n, _)| n == name)
                    .map(|(_, e)| e)
                    .ok_or_else(|| {
                        Error::Invariant(format!("no image given for generator {name}"))
                    })?;
                img = img.mul(&gen_img.pow(*exp));
            }
            cols.push(img);
        }
        Self::new(source, target, 0, cols, true)
    }

    pub fn apply(&self, x: &Element<K>) -> Element<K> {
        same_algebra(x.owner(), &self.source);
        let mut out = Element::zero(&self.target);
        for (i, c) in x.coeffs() {
            out = out.add(&self.cols[*i].scale(c));
        }
        out
    }

    pub fn source(&self) -> &AlgebraRef<K> {
        &self.source
    }

    pub fn target(&self) -> &AlgebraRef<K> {
        &self.target
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn is_ring_map(&self) -> bool {
        self.ring_map
    }
}

/// The tensor product of two algebras together with the Kunneth embeddings
/// and projections. Models the cohomology of a product of manifolds: the
/// basis is all pairs of basis monomials, the top degree is the sum, the
/// fundamental monomial is the pair of fundamentals, and the pairing is
/// multiplicative.
pub struct TensorAlgebra<K: Scalar> {
    algebra: AlgebraRef<K>,
    left: AlgebraRef<K>,
    right: AlgebraRef<K>,
    right_len: usize,
    index: Vec<usize>,
    pairs: Vec<(usize, usize)>,
}

/// Kunneth model of the product of two spaces over the same field.
pub fn tensor<K: Scalar>(left: &AlgebraRef<K>, right: &AlgebraRef<K>) -> TensorAlgebra<K> {
    let ml = left.len();
    let mr = right.len();

    // Rename clashing right-hand generator names with primes so rendered
    // monomials stay unambiguous.
    let left_names: std::collections::HashSet<&str> =
        left.generators().iter().map(|(n, _)| n.as_str()).collect();
    let mut rename: BTreeMap<String, String> = BTreeMap::new();
    let mut taken: std::collections::HashSet<String> =
        left_names.iter().map(|s| s.to_string()).collect();
    for (name, _) in right.generators() {
        let mut candidate = name.clone();
        while taken.contains(&candidate) {
            candidate.push('\'');
        }
        taken.insert(candidate.clone());
        if candidate != *name {
            rename.insert(name.clone(), candidate);
        }
    }
    let rename_monomial = |m: &Monomial| -> Monomial {
        Monomial {
            factors: m
                .factors
                .iter()
                .map(|(n, e)| (rename.get(n).cloned().unwrap_or_else(|| n.clone()), *e))
                .collect(),
        }
    };

    let mut pairs: Vec<(usize, usize)> = (0..ml)
        .flat_map(|i| (0..mr).map(move |j| (i, j)))
        .collect();
    pairs.sort_by_key(|&(i, j)| (left.degree_of(i) + right.degree_of(j), i, j));
    let mut index = vec![0usize; ml * mr];
    for (t, &(i, j)) in pairs.iter().enumerate() {
        index[i * mr + j] = t;
    }

    let monomials: Vec<Monomial> = pairs
        .iter()
        .map(|&(i, j)| {
            let mut factors = left.monomial(i).factors.clone();
            factors.extend(rename_monomial(right.monomial(j)).factors);
            Monomial { factors }
        })
        .collect();
    let degrees: Vec<usize> = pairs
        .iter()
        .map(|&(i, j)| left.degree_of(i) + right.degree_of(j))
        .collect();

    let m = pairs.len();
    let mut table = vec![Vec::new(); m * m];
    for (s, &(i, j)) in pairs.iter().enumerate() {
        for (t, &(i2, j2)) in pairs.iter().enumerate() {
            let mut row = Vec::new();
            for (li, lc) in left.product_row(i, i2) {
                for (rj, rc) in right.product_row(j, j2) {
                    row.push((index[li * mr + rj], lc.mul(rc)));
                }
            }
            row.sort_by_key(|(t, _)| *t);
            table[s * m + t] = row;
        }
    }

    let fundamental = index[left.fundamental_index() * mr + right.fundamental_index()];
    let mut generators: Vec<(String, usize)> = left
        .generators()
        .iter()
        .map(|(n, gi)| (n.clone(), index[gi * mr]))
        .collect();
    generators.extend(right.generators().iter().map(|(n, gj)| {
        let name = rename.get(n).cloned().unwrap_or_else(|| n.clone());
        (name, index[*gj])
    }));

    let algebra = GradedAlgebra::assemble(monomials, degrees, table, fundamental, generators)
        .expect("tensor table is well formed");
    TensorAlgebra {
        algebra,
        left: left.clone(),
        right: right.clone(),
        right_len: mr,
        index,
        pairs,
    }
}

impl<K: Scalar> TensorAlgebra<K> {
    pub fn algebra(&self) -> &AlgebraRef<K> {
        &self.algebra
    }

    pub fn left(&self) -> &AlgebraRef<K> {
        &self.left
    }

    pub fn right(&self) -> &AlgebraRef<K> {
        &self.right
    }

    pub fn embed_left(&self, x: &Element<K>) -> Element<K> {
        same_algebra(x.owner(), &self.left);
        let coeffs = x
            .coeffs()
            .iter()
            .map(|(i, c)| (self.index[i * self.right_len], c.clone()))
            .collect();
        Element::from_coeffs(&self.algebra, coeffs)
    }

    pub fn embed_right(&self, x: &Element<K>) -> Element<K> {
        same_algebra(x.owner(), &self.right);
        let coeffs = x
            .coeffs()
            .iter()
            .map(|(j, c)| (self.index[*j], c.clone()))
            .collect();
        Element::from_coeffs(&self.algebra, coeffs)
    }

    /// `x (x) y` as an element of the tensor algebra.
    pub fn pure(&self, x: &Element<K>, y: &Element<K>) -> Element<K> {
        self.embed_left(x).mul(&self.embed_right(y))
    }

    /// The ring map induced by restricting the right factor to a point:
    /// kills every positive-degree right component. This is the pullback
    /// along the inclusion of a slice `M x pt` into the product.
    pub fn project_left(&self) -> LinearMap<K> {
        let cols = self
            .pairs
            .iter()
            .map(|&(i, j)| {
                if j == 0 {
                    Element::basis(&self.left, i)
                } else {
                    Element::zero(&self.left)
                }
            })
            .collect();
        LinearMap::new(&self.algebra, &self.left, 0, cols, true)
            .expect("slice restriction is a ring map")
    }

    /// The (left, right) basis pair at a tensor basis index.
    pub fn unpair(&self, t: usize) -> (usize, usize) {
        self.pairs[t]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Mod2, Rat};

    pub(crate) fn cp2() -> AlgebraRef<Rat> {
        GradedAlgebra::truncated_polynomial(&[("x", 2, 3)], 4).unwrap()
    }

    fn rp2() -> AlgebraRef<Mod2> {
        GradedAlgebra::truncated_polynomial(&[("a", 1, 3)], 2).unwrap()
    }

    fn s2() -> AlgebraRef<Rat> {
        GradedAlgebra::truncated_polynomial(&[("s", 2, 2)], 2).unwrap()
    }

    #[test]
    fn builder_cp2_model() {
        let a = cp2();
        assert_eq!(a.len(), 3);
        assert_eq!(a.top_degree(), 4);
        assert_eq!(a.monomial(a.fundamental_index()).to_string(), "x^2");
        assert_eq!(
            (0..3).map(|i| a.degree_of(i)).collect::<Vec<_>>(),
            vec![0, 2, 4]
        );
    }

    #[test]
    fn builder_rp2_model() {
        let a = rp2();
        assert_eq!(a.len(), 3);
        assert_eq!(a.top_degree(), 2);
        assert_eq!(a.monomial(a.fundamental_index()).to_string(), "a^2");
    }

    #[test]
    fn builder_s2_model() {
        let a = s2();
        assert_eq!(a.len(), 2);
        assert_eq!(a.monomial(a.fundamental_index()).to_string(), "s");
    }

    #[test]
    fn builder_rejects_odd_rational_generator() {
        let err = GradedAlgebra::<Rat>::truncated_polynomial(&[("a", 1, 3)], 2).unwrap_err();
        assert!(err.to_string().contains("evenly graded"));
    }

    #[test]
    fn builder_rejects_dimension_mismatch() {
        // No monomial of odd degree exists in Q[x]/(x^3) with |x| = 2.
        let err = GradedAlgebra::<Rat>::truncated_polynomial(&[("x", 2, 3)], 3).unwrap_err();
        assert!(err.to_string().contains("no monomial of degree 3"));
        // Degree 2 exists but is not the top monomial.
        let err = GradedAlgebra::<Rat>::truncated_polynomial(&[("x", 2, 3)], 2).unwrap_err();
        assert!(err.to_string().contains("not 2"));
    }

    #[test]
    fn multiplication_and_truncation() {
        let a = cp2();
        let x = a.generator("x").unwrap();
        let x2 = x.mul(&x);
        assert_eq!(x2, Element::basis(&a, 2));
        assert!(x2.mul(&x).is_zero());
    }

    #[test]
    fn char_two_square() {
        let a = rp2();
        let one = Element::one(&a);
        let g = a.generator("a").unwrap();
        let u = one.add(&g);
        let sq = u.mul(&u);
        // (1+a)^2 = 1 + a^2 over F2
        assert_eq!(sq, one.add(&Element::basis(&a, 2)));
    }

    #[test]
    fn pairing_reads_fundamental_coefficient() {
        let a = cp2();
        let x = a.generator("x").unwrap();
        let x2 = x.pow(2);
        assert_eq!(x2.pair(), rat(1, 1));
        let mixed = x2.scale(&rat(3, 1)).add(&x.scale(&rat(5, 1)));
        assert_eq!(mixed.pair(), rat(3, 1));
        let b = rp2();
        assert_eq!(b.generator("a").unwrap().pow(2).pair(), Mod2(true));
    }

    #[test]
    fn tensor_model() {
        let a = cp2();
        let t = tensor(&a, &a);
        assert_eq!(t.algebra().top_degree(), 8);
        let fund = t.algebra().monomial(t.algebra().fundamental_index());
        assert_eq!(fund.to_string(), "x^2*x'^2");
        let x2 = a.generator("x").unwrap().pow(2);
        let y = a.generator("x").unwrap();
        assert_eq!(t.pure(&x2, &x2).pair(), rat(1, 1));
        assert_eq!(t.pure(&x2, &y).pair(), rat(0, 1));
    }

    #[test]
    fn structure_checks_reject_bad_tables() {
        // 1, g in degree 2 with g*g "=" g: not graded.
        let basis = vec![(Monomial::unit(), 0), (Monomial::single("g"), 2)];
        let products = vec![
            vec![vec![(0, rat(1, 1))], vec![(1, rat(1, 1))]],
            vec![vec![(1, rat(1, 1))], vec![(1, rat(1, 1))]],
        ];
        let err = GradedAlgebra::from_structure(basis, products, 1, vec![]).unwrap_err();
        assert!(err.to_string().contains("not homogeneous"));
    }

    #[test]
    fn structure_checks_reject_nonassociative() {
        // Degrees 0,2,2,4 with e1*e1 = f, e1*e2 = 0, e2*e2 = 0 is fine, but
        // making e1*e2 = f and e2*e2 = f breaks associativity:
        // (e1 e1) e2 = f e2 = 0 vs e1 (e1 e2) = e1 f = 0 -- still fine, so
        // instead break commutativity check with an asymmetric table.
        let basis = vec![
            (Monomial::unit(), 0),
            (Monomial::single("u"), 2),
            (Monomial::single("v"), 2),
            (Monomial::single("w"), 4),
        ];
        let one = || vec![(0, rat(1, 1))];
        let idm = |i: usize| vec![(i, rat(1, 1))];
        let w = || vec![(3, rat(1, 1))];
        let zero = Vec::new;
        let products = vec![
            vec![one(), idm(1), idm(2), idm(3)],
            vec![idm(1), w(), w(), zero()],
            vec![idm(2), zero(), w(), zero()],
            vec![idm(3), zero(), zero(), zero()],
        ];
        let err = GradedAlgebra::from_structure(basis, products, 3, vec![]).unwrap_err();
        assert!(err.to_string().contains("not commutative"));
    }

    #[test]
    fn ring_map_checks() {
        let a = cp2();
        let b = cp2();
        // x -> x is a ring map between two CP^2 models.
        let img = b.generator("x").unwrap();
        let phi =
            LinearMap::from_generator_images(&a, &b, &[("x".to_string(), img)]).unwrap();
        assert!(phi.is_ring_map());
        let x = a.generator("x").unwrap();
        assert_eq!(phi.apply(&x.pow(2)), b.generator("x").unwrap().pow(2));

        // Sending x to something that violates x^3 = 0 is caught: in the
        // CP^2 model itself every image satisfies the relation, so target a
        // bigger ring where x'^3 is nonzero.
        let big = GradedAlgebra::<Rat>::truncated_polynomial(&[("y", 2, 4)], 6).unwrap();
        let err = LinearMap::from_generator_images(
            &a,
            &big,
            &[("x".to_string(), big.generator("y").unwrap())],
        )
        .unwrap_err();
        assert!(err.to_string().contains("not multiplicative"));
    }

    #[test]
    fn projection_restricts_to_slice() {
        let a = cp2();
        let b = s2();
        let t = tensor(&a, &b);
        let proj = t.project_left();
        let x = a.generator("x").unwrap();
        let s = b.generator("s").unwrap();
        let mixed = t.pure(&x, &Element::one(&b)).add(&t.pure(&Element::one(&a), &s));
        assert_eq!(proj.apply(&mixed), x);
    }
}
