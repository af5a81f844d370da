//! Exhaustive oracles over small finite abelian groups.
//!
//! A homomorphism out of `Z/d_1 + ... + Z/d_s` is fixed by the images
//! `f_1, ..., f_s` of the canonical generators, subject to `ord(f_i) | d_i`.
//! It is an automorphism iff the images generate the whole group, and
//! injectivity forces `|<f_1, ..., f_k>| = d_1 ... d_k` at every prefix, which
//! is what prunes the searches below.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::group::{FGAbelianGroup, GroupElement};
use crate::linalg::{unimodular_check, IntMatrix};

/// Default cap on `|G|` for the exhaustive oracles.
pub const DEFAULT_SIZE_BOUND: u64 = 1024;

/// Largest group for which a full addition table is kept.
const ADD_TABLE_LIMIT: usize = 4096;

/// A finite abelian group with elements numbered `0..order` in mixed radix.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    moduli: Vec<usize>,
    strides: Vec<usize>,
    order: usize,
    add_table: Option<Arc<Vec<u32>>>,
}

impl FiniteGroup {
    /// Indexes a finite group, failing if `|G|` exceeds `size_bound`.
    pub fn new(g: &FGAbelianGroup, size_bound: u64) -> Result<Self> {
        if !g.is_finite() {
            return Err(Error::InfiniteGroup(g.free_rank()));
        }
        let order = g.torsion_order();
        if order > BigInt::from(size_bound) {
            return Err(Error::BoundExceeded {
                order: order.to_string(),
                bound: size_bound,
            });
        }
        let moduli: Vec<usize> = g
            .invariant_factors()
            .iter()
            .map(|d| d.to_usize().expect("factor bounded by size_bound"))
            .collect();
        Ok(Self::from_moduli(moduli))
    }

    fn from_moduli(moduli: Vec<usize>) -> Self {
        let mut strides = Vec::with_capacity(moduli.len());
        let mut order = 1usize;
        for &m in &moduli {
            strides.push(order);
            order *= m;
        }
        let mut group = Self {
            moduli,
            strides,
            order,
            add_table: None,
        };
        if order <= ADD_TABLE_LIMIT {
            let mut table = Vec::with_capacity(order * order);
            for a in 0..order {
                for b in 0..order {
                    table.push(group.add_digits(a, b) as u32);
                }
            }
            group.add_table = Some(Arc::new(table));
        }
        group
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn moduli(&self) -> &[usize] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn digit(&self, x: usize, i: usize) -> usize {
        (x / self.strides[i]) % self.moduli[i]
    }

    pub fn digits(&self, x: usize) -> Vec<usize> {
        (0..self.rank()).map(|i| self.digit(x, i)).collect()
    }

    pub fn from_digits(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(&self.moduli)
            .zip(&self.strides)
            .map(|((&d, &m), &s)| (d % m) * s)
            .sum()
    }

    /// Index of the `i`-th canonical generator.
    pub fn generator(&self, i: usize) -> usize {
        self.strides[i]
    }

    pub fn encode(&self, x: &GroupElement) -> usize {
        let digits: Vec<usize> = x
            .torsion()
            .iter()
            .map(|c| c.to_usize().expect("canonical coordinate"))
            .collect();
        self.from_digits(&digits)
    }

    pub fn decode(&self, g: &FGAbelianGroup, x: usize) -> GroupElement {
        let torsion = self.digits(x).into_iter().map(BigInt::from).collect();
        g.element(torsion, Vec::new())
            .expect("digits match the group rank")
    }

    fn add_digits(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        for i in 0..self.rank() {
            out += ((self.digit(a, i) + self.digit(b, i)) % self.moduli[i]) * self.strides[i];
        }
        out
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        match &self.add_table {
            Some(t) => t[a * self.order + b] as usize,
            None => self.add_digits(a, b),
        }
    }

    pub fn neg(&self, a: usize) -> usize {
        let digits: Vec<usize> = (0..self.rank())
            .map(|i| (self.moduli[i] - self.digit(a, i)) % self.moduli[i])
            .collect();
        self.from_digits(&digits)
    }

    pub fn mul(&self, k: usize, a: usize) -> usize {
        let digits: Vec<usize> = (0..self.rank())
            .map(|i| (self.digit(a, i) * k) % self.moduli[i])
            .collect();
        self.from_digits(&digits)
    }

    pub fn element_order(&self, a: usize) -> usize {
        (0..self.rank())
            .map(|i| self.moduli[i] / self.digit(a, i).gcd(&self.moduli[i]))
            .fold(1, |acc, m| acc.lcm(&m))
    }

    /// The subgroup generated by `span` and `f`.
    fn extend_span(&self, span: &BitSet, f: usize) -> BitSet {
        let mut out = span.clone();
        let mut shift = f;
        while shift != 0 {
            for x in span.iter() {
                out.insert(self.add(x, shift));
            }
            shift = self.add(shift, f);
        }
        out
    }

    fn trivial_span(&self) -> BitSet {
        let mut s = BitSet::new(self.order);
        s.insert(0);
        s
    }

    /// Elements allowed as the image of generator `i`.
    fn candidates(&self, i: usize) -> Vec<usize> {
        (0..self.order)
            .filter(|&f| self.moduli[i].is_multiple_of(self.element_order(f)))
            .collect()
    }

    fn prefix_orders(&self) -> Vec<usize> {
        let mut out = vec![1];
        for &m in &self.moduli {
            out.push(out.last().unwrap() * m);
        }
        out
    }

    /// Streams every automorphism in lexicographic order of generator images.
    pub fn automorphisms(&self) -> Automorphisms {
        let s = self.rank();
        Automorphisms {
            candidates: (0..s).map(|i| self.candidates(i)).collect(),
            prefix: self.prefix_orders(),
            pos: vec![0; s.max(1)],
            spans: vec![self.trivial_span(); s + 1],
            images: Vec::with_capacity(s),
            group: self.clone(),
            done: false,
        }
    }

    /// True iff the generator images define a bijective endomorphism.
    pub fn is_automorphism(&self, images: &[usize]) -> bool {
        if images.len() != self.rank() {
            return false;
        }
        let mut span = self.trivial_span();
        for (i, &f) in images.iter().enumerate() {
            if f >= self.order || !self.moduli[i].is_multiple_of(self.element_order(f)) {
                return false;
            }
            span = self.extend_span(&span, f);
        }
        span.len() == self.order
    }
}

/// An automorphism recorded by the images of the canonical generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    images: Vec<usize>,
}

impl Automorphism {
    pub fn identity(g: &FiniteGroup) -> Self {
        Self {
            images: (0..g.rank()).map(|i| g.generator(i)).collect(),
        }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, g: &FiniteGroup, x: usize) -> usize {
        let mut out = 0;
        for (i, &f) in self.images.iter().enumerate() {
            let k = g.digit(x, i);
            for _ in 0..k {
                out = g.add(out, f);
            }
        }
        out
    }

    /// Images of every element, indexed by element.
    pub fn image_table(&self, g: &FiniteGroup) -> Vec<usize> {
        let mut table = vec![0usize; g.order()];
        for x in 1..g.order() {
            // peel the lowest nonzero digit: phi(x) = phi(x - e_i) + f_i
            let i = (0..g.rank())
                .find(|&i| g.digit(x, i) != 0)
                .expect("x is nonzero");
            table[x] = g.add(table[x - g.generator(i)], self.images[i]);
        }
        table
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Automorphism, g: &FiniteGroup) -> Automorphism {
        Automorphism {
            images: other.images.iter().map(|&f| self.apply(g, f)).collect(),
        }
    }

    pub fn inverse(&self, g: &FiniteGroup) -> Automorphism {
        let table = self.image_table(g);
        let mut inv = vec![0; g.order()];
        for (x, &y) in table.iter().enumerate() {
            inv[y] = x;
        }
        Automorphism {
            images: (0..g.rank()).map(|i| inv[g.generator(i)]).collect(),
        }
    }

    /// Generator images as group elements.
    pub fn to_elements(&self, fg: &FiniteGroup, g: &FGAbelianGroup) -> Vec<GroupElement> {
        self.images.iter().map(|&f| fg.decode(g, f)).collect()
    }
}

/// Depth-first stream over all automorphisms of a [`FiniteGroup`].
pub struct Automorphisms {
    group: FiniteGroup,
    candidates: Vec<Vec<usize>>,
    prefix: Vec<usize>,
    pos: Vec<usize>,
    spans: Vec<BitSet>,
    images: Vec<usize>,
    done: bool,
}

impl Automorphisms {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }
}

impl Iterator for Automorphisms {
    type Item = Automorphism;

    fn next(&mut self) -> Option<Automorphism> {
        if self.done {
            return None;
        }
        let s = self.group.rank();
        if s == 0 {
            self.done = true;
            return Some(Automorphism { images: Vec::new() });
        }
        loop {
            let k = self.images.len();
            if self.pos[k] < self.candidates[k].len() {
                let f = self.candidates[k][self.pos[k]];
                self.pos[k] += 1;
                let span = self.group.extend_span(&self.spans[k], f);
                if span.len() != self.prefix[k + 1] {
                    continue;
                }
                self.spans[k + 1] = span;
                self.images.push(f);
                if k + 1 == s {
                    let out = Automorphism {
                        images: self.images.clone(),
                    };
                    self.images.pop();
                    return Some(out);
                }
                self.pos[k + 1] = 0;
            } else if k == 0 {
                self.done = true;
                return None;
            } else {
                self.images.pop();
            }
        }
    }
}

/// Streams every automorphism of a finite group with `|G| <= size_bound`.
pub fn enumerate_automorphisms(g: &FGAbelianGroup, size_bound: u64) -> Result<Automorphisms> {
    Ok(FiniteGroup::new(g, size_bound)?.automorphisms())
}

/// Exact orbits of `Aut(G)` on `G`.
///
/// Rather than walking every automorphism, the search runs over prefixes
/// `(f_1, ..., f_k)` of generator images and keeps only the pair
/// `(<f_1..f_k>, x_1 f_1 + ... + x_k f_k)`. Whether a prefix extends to an
/// automorphism depends only on the span it generates, and the later images
/// add to the partial sum independently of how it was reached, so prefixes
/// sharing that pair have identical futures. This collapses the search
/// without dropping any automorphism.
pub struct OrbitSolver {
    group: FiniteGroup,
    candidates: Vec<Vec<usize>>,
    prefix: Vec<usize>,
    spans: Vec<BitSet>,
    span_ids: HashMap<BitSet, usize>,
    transitions: HashMap<(usize, usize), Option<usize>>,
}

impl OrbitSolver {
    pub fn new(group: FiniteGroup) -> Self {
        let candidates = (0..group.rank()).map(|i| group.candidates(i)).collect();
        let prefix = group.prefix_orders();
        let mut solver = Self {
            candidates,
            prefix,
            spans: Vec::new(),
            span_ids: HashMap::new(),
            transitions: HashMap::new(),
            group,
        };
        let trivial = solver.group.trivial_span();
        solver.intern(trivial);
        solver
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    fn intern(&mut self, span: BitSet) -> usize {
        if let Some(&id) = self.span_ids.get(&span) {
            return id;
        }
        let id = self.spans.len();
        self.spans.push(span.clone());
        self.span_ids.insert(span, id);
        id
    }

    fn step(&mut self, span: usize, f: usize, level: usize) -> Option<usize> {
        if let Some(&t) = self.transitions.get(&(span, f)) {
            return t;
        }
        let next = self.group.extend_span(&self.spans[span], f);
        let out = (next.len() == self.prefix[level + 1]).then(|| self.intern(next));
        self.transitions.insert((span, f), out);
        out
    }

    /// Every `phi(x)` for `phi` in `Aut(G)`, each with the first automorphism
    /// (in lexicographic order of generator images) that produces it.
    pub fn orbit(&mut self, x: usize) -> BTreeMap<usize, Automorphism> {
        let coeffs = self.group.digits(x);
        // (span id, partial sum) -> first prefix reaching it
        let mut layer: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        layer.insert((0, 0), Vec::new());
        for (level, &coeff) in coeffs.iter().enumerate() {
            let mut next: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
            let candidates = self.candidates[level].clone();
            for ((span, sum), prefix) in layer {
                for &f in &candidates {
                    let Some(span2) = self.step(span, f, level) else {
                        continue;
                    };
                    let sum2 = self.group.add(sum, self.group.mul(coeff, f));
                    next.entry((span2, sum2)).or_insert_with(|| {
                        let mut p = prefix.clone();
                        p.push(f);
                        p
                    });
                }
            }
            layer = next;
        }
        let mut out = BTreeMap::new();
        for ((_, sum), images) in layer {
            out.entry(sum).or_insert(Automorphism { images });
        }
        out
    }

    /// Orbit label per element: the least element of its orbit.
    pub fn orbit_partition(&mut self) -> Vec<usize> {
        let n = self.group.order();
        let mut label = vec![usize::MAX; n];
        for x in 0..n {
            if label[x] != usize::MAX {
                continue;
            }
            for y in self.orbit(x).into_keys() {
                label[y] = x;
            }
        }
        label
    }
}

/// Searches for an automorphism of a finite group sending `x` to `y`.
pub fn find_automorphism(
    g: &FGAbelianGroup,
    x: &GroupElement,
    y: &GroupElement,
    size_bound: u64,
) -> Result<Option<Automorphism>> {
    let fg = FiniteGroup::new(g, size_bound)?;
    g.element_order(x)?;
    g.element_order(y)?;
    let (xi, yi) = (fg.encode(x), fg.encode(y));
    let mut solver = OrbitSolver::new(fg);
    Ok(solver.orbit(xi).remove(&yi))
}

/// True iff some automorphism of the finite group `g` maps `x` to `y`.
pub fn automorphism_maps_x_to_y(
    g: &FGAbelianGroup,
    x: &GroupElement,
    y: &GroupElement,
    size_bound: u64,
) -> Result<bool> {
    Ok(find_automorphism(g, x, y, size_bound)?.is_some())
}

/// Brute-force search for `sigma` in `GL(t, Z)` with entries in
/// `[-entry_bound, entry_bound]` and `n * sigma(x) = m * x`.
///
/// The identity is tried first; after it, matrices are visited in
/// lexicographic row-major order with entries ascending.
pub fn eigen_search(
    t: usize,
    entry_bound: u64,
    x: &[BigInt],
    m: &BigInt,
    n: &BigInt,
) -> Result<Option<IntMatrix>> {
    if t == 0 {
        return Err(Error::InvalidArgument("t must be positive".into()));
    }
    if x.len() != t {
        return Err(Error::InvalidArgument(format!(
            "x has {} entries, expected {t}",
            x.len()
        )));
    }
    if x.iter().all(Zero::is_zero) {
        return Err(Error::InvalidArgument("x must be nonzero".into()));
    }
    for v in [m, n] {
        if !v.is_positive() {
            return Err(Error::NonPositiveScalar(v.to_string()));
        }
    }
    let bound = i64::try_from(entry_bound)
        .map_err(|_| Error::InvalidArgument("entry bound too large".into()))?;
    let target: Vec<BigInt> = x.iter().map(|xi| m * xi).collect();
    let satisfies = |sigma: &[i64]| -> bool {
        (0..t).all(|i| {
            let row: BigInt = (0..t).map(|j| BigInt::from(sigma[i * t + j]) * &x[j]).sum();
            n * row == target[i]
        })
    };
    let to_matrix =
        |sigma: &[i64]| IntMatrix::new(t, t, sigma.iter().map(|&e| BigInt::from(e)).collect());
    let is_unimodular = |sigma: &[i64]| unimodular_check(&to_matrix(sigma)).unwrap_or(false);

    let mut identity = vec![0i64; t * t];
    for i in 0..t {
        identity[i * t + i] = 1;
    }
    if bound >= 1 && satisfies(&identity) {
        return Ok(Some(to_matrix(&identity)));
    }

    let mut sigma = vec![-bound; t * t];
    loop {
        if satisfies(&sigma) && is_unimodular(&sigma) {
            return Ok(Some(to_matrix(&sigma)));
        }
        // odometer increment, last entry fastest
        let mut k = t * t;
        loop {
            if k == 0 {
                return Ok(None);
            }
            k -= 1;
            if sigma[k] < bound {
                sigma[k] += 1;
                break;
            }
            sigma[k] = -bound;
        }
    }
}

/// Fixed-size bitset over group element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(size: usize) -> Self {
        Self {
            words: vec![0; size.div_ceil(64).max(1)],
        }
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

/// `|G|` of the finite group, checked against `size_bound`.
pub fn bounded_order(g: &FGAbelianGroup, size_bound: u64) -> Result<u64> {
    FiniteGroup::new(g, size_bound).map(|fg| fg.order() as u64)
}
