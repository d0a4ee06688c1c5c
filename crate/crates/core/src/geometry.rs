//! Projective points, incidence detection and incidence-pattern matching.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::arith::{kernel_vector_exact, IntMatrix, PrimeSet};
use crate::error::{Result, WaldError};

/// A point of P^2 in canonical form: primitive integer coordinates whose
/// first nonzero entry is positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pt {
    x: BigInt,
    y: BigInt,
    z: BigInt,
}

impl Pt {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>, z: impl Into<BigInt>) -> Result<Self> {
        canonicalize_point([x.into(), y.into(), z.into()])
    }

    /// Affine point (x, y) as (x : y : 1), rational inputs allowed.
    pub fn affine(x: BigRational, y: BigRational) -> Result<Self> {
        canonicalize_rational([x, y, BigRational::one()])
    }

    pub fn coords(&self) -> [&BigInt; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn to_array(&self) -> [BigInt; 3] {
        [self.x.clone(), self.y.clone(), self.z.clone()]
    }

    /// Image under the linear map `t` acting on column vectors.
    pub fn transform(&self, t: &[[BigInt; 3]; 3]) -> Result<Self> {
        let c = self.coords();
        let img = std::array::from_fn(|i| &t[i][0] * c[0] + &t[i][1] * c[1] + &t[i][2] * c[2]);
        canonicalize_point(img)
    }
}

impl fmt::Display for Pt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{}:{})", self.x, self.y, self.z)
    }
}

/// Canonical primitive representative of a nonzero integer triple.
pub fn canonicalize_point(raw: [BigInt; 3]) -> Result<Pt> {
    let g = raw.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return Err(WaldError::ZeroPoint);
    }
    let lead_negative = raw
        .iter()
        .find(|v| !v.is_zero())
        .is_some_and(|v| v.is_negative());
    let g = if lead_negative { -g } else { g };
    let [x, y, z] = raw.map(|v| v / &g);
    Ok(Pt { x, y, z })
}

/// Clear denominators, then canonicalize.
pub fn canonicalize_rational(raw: [BigRational; 3]) -> Result<Pt> {
    let lcm = raw.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    canonicalize_point(raw.map(|v| v.numer() * (&lcm / v.denom())))
}

fn det3(a: [&BigInt; 3], b: [&BigInt; 3], c: [&BigInt; 3]) -> BigInt {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}

pub fn collinear(p: &Pt, q: &Pt, r: &Pt) -> bool {
    det3(p.coords(), q.coords(), r.coords()).is_zero()
}

/// An ordered set of distinct canonical points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    label: String,
    points: Vec<Pt>,
}

impl Config {
    pub fn new(label: impl Into<String>, points: Vec<Pt>) -> Result<Self> {
        if points.is_empty() {
            return Err(WaldError::EmptyConfig);
        }
        for j in 1..points.len() {
            if let Some(i) = points[..j].iter().position(|p| p == &points[j]) {
                return Err(WaldError::DuplicatePoint {
                    first: i,
                    second: j,
                });
            }
        }
        Ok(Self {
            label: label.into(),
            points,
        })
    }

    /// Convenience constructor from small integer triples.
    pub fn from_triples(label: impl Into<String>, triples: &[[i64; 3]]) -> Result<Self> {
        let pts = triples
            .iter()
            .map(|&[x, y, z]| Pt::new(x, y, z))
            .collect::<Result<Vec<_>>>()?;
        Self::new(label, pts)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn points(&self) -> &[Pt] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// The configuration with point `idx` removed.
    pub fn without(&self, idx: usize) -> Result<Self> {
        let pts = self
            .points
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != idx)
            .map(|(_, p)| p.clone())
            .collect();
        Self::new(format!("{}-{}", self.label, idx), pts)
    }

    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        Self::new(
            self.label.clone(),
            order.iter().map(|&i| self.points[i].clone()).collect(),
        )
    }

    /// Apply an invertible projective transformation.
    pub fn transform(&self, t: &[[BigInt; 3]; 3]) -> Result<Self> {
        let d = det3(
            [&t[0][0], &t[0][1], &t[0][2]],
            [&t[1][0], &t[1][1], &t[1][2]],
            [&t[2][0], &t[2][1], &t[2][2]],
        );
        if d.is_zero() {
            return Err(WaldError::Parameter(
                "singular projective transformation".into(),
            ));
        }
        let pts = self
            .points
            .iter()
            .map(|p| p.transform(t))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.label.clone(), pts)
    }

    /// Order-independent hash of the point set (hex SHA-256).
    pub fn canonical_hash(&self) -> String {
        let mut sorted: Vec<&Pt> = self.points.iter().collect();
        sorted.sort();
        let mut h = Sha256::new();
        for p in sorted {
            h.update(format!("{},{},{};", p.x, p.y, p.z).as_bytes());
        }
        hex::encode(h.finalize())
    }
}

/// All maximal subsets of size >= 3 lying on one line, as sorted index lists
/// in lexicographic order.
pub fn maximal_collinear_sets(z: &Config) -> Vec<Vec<usize>> {
    let pts = z.points();
    let n = pts.len();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            let line: Vec<usize> = (0..n)
                .filter(|&k| k == i || k == j || collinear(&pts[i], &pts[j], &pts[k]))
                .collect();
            if line.len() >= 3 {
                found.insert(line);
            }
        }
    }
    found.into_iter().collect()
}

/// Evaluation matrix of the six degree-2 monomials x², xy, xz, y², yz, z².
pub fn veronese_matrix(pts: &[Pt]) -> IntMatrix {
    let mut entries = Vec::with_capacity(pts.len() * 6);
    for p in pts {
        let [x, y, z] = p.coords();
        entries.extend([x * x, x * y, x * z, y * y, y * z, z * z]);
    }
    IntMatrix::new(pts.len(), 6, entries).expect("shape is consistent")
}

/// Whether some (possibly degenerate) conic contains all the points, with
/// its coefficients on x², xy, xz, y², yz, z² as a witness.
pub fn conic_contained(z: &Config) -> (bool, Option<Vec<BigInt>>) {
    conic_through(z.points())
}

pub fn conic_through(pts: &[Pt]) -> (bool, Option<Vec<BigInt>>) {
    let m = veronese_matrix(pts);
    // containment is decided exactly; the witness lift can only fail for
    // coordinates far beyond the prime budget
    if crate::arith::rank_exact(&m) == 6 {
        return (false, None);
    }
    let witness = kernel_vector_exact(&m, &PrimeSet::standard())
        .ok()
        .flatten()
        .map(|v| crate::arith::lift::primitive_integer_vector(&v));
    (true, witness)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub s: usize,
    /// Sizes of maximal collinear subsets, descending.
    pub collinear_profile: Vec<usize>,
    pub on_conic: bool,
}

pub fn incidence_signature(z: &Config) -> Signature {
    let mut profile: Vec<usize> = maximal_collinear_sets(z).iter().map(Vec::len).collect();
    profile.sort_unstable_by(|a, b| b.cmp(a));
    Signature {
        s: z.len(),
        collinear_profile: profile,
        on_conic: conic_contained(z).0,
    }
}

/// Abstract incidence structure: labelled points, required maximal
/// collinear blocks, optional conic conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidencePattern {
    pub labels: Vec<String>,
    /// Label-index sets, each the full set of labels on one line.
    pub blocks: Vec<Vec<usize>>,
    /// Required value of whole-set conic containment, if constrained.
    pub on_conic: Option<bool>,
    /// Label subsets that must lie on a common conic.
    pub conic_subsets: Vec<Vec<usize>>,
}

impl IncidencePattern {
    /// Build from label names and blocks given by name.
    pub fn new(
        labels: &[&str],
        blocks: &[&[&str]],
        on_conic: Option<bool>,
        conic_subsets: &[&[&str]],
    ) -> Self {
        let idx = |name: &str| {
            labels
                .iter()
                .position(|l| *l == name)
                .unwrap_or_else(|| panic!("unknown label {name}"))
        };
        let to_idx = |set: &&[&str]| {
            let mut v: Vec<usize> = set.iter().map(|n| idx(n)).collect();
            v.sort_unstable();
            v
        };
        let pattern = Self {
            labels: labels.iter().map(|s| s.to_string()).collect(),
            blocks: blocks.iter().map(to_idx).collect(),
            on_conic,
            conic_subsets: conic_subsets.iter().map(to_idx).collect(),
        };
        debug_assert!(pattern.is_well_formed(), "malformed pattern");
        pattern
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Blocks have size >= 3 and pairwise share at most one label.
    pub fn is_well_formed(&self) -> bool {
        self.blocks
            .iter()
            .all(|b| b.len() >= 3 && b.iter().all(|&l| l < self.labels.len()))
            && self.blocks.iter().enumerate().all(|(i, a)| {
                self.blocks[i + 1..]
                    .iter()
                    .all(|b| a.iter().filter(|l| b.contains(l)).count() <= 1)
            })
    }

    pub fn profile(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.blocks.iter().map(Vec::len).collect();
        p.sort_unstable_by(|a, b| b.cmp(a));
        p
    }
}

/// Find a bijection (point index -> label index) under which the maximal
/// collinear sets of `z` are exactly the pattern's blocks and the conic
/// conditions hold. Returns `labeling[point] = label`.
pub fn abstract_incidence_match(z: &Config, pattern: &IncidencePattern) -> Option<Vec<usize>> {
    let n = z.len();
    if n != pattern.len() {
        return None;
    }
    let lines = maximal_collinear_sets(z);
    let mut profile: Vec<usize> = lines.iter().map(Vec::len).collect();
    profile.sort_unstable_by(|a, b| b.cmp(a));
    if profile != pattern.profile() {
        return None;
    }
    if let Some(flag) = pattern.on_conic {
        if conic_contained(z).0 != flag {
            return None;
        }
    }

    let mut line_of = vec![vec![None; n]; n];
    for (li, line) in lines.iter().enumerate() {
        for &a in line {
            for &b in line {
                if a != b {
                    line_of[a][b] = Some(li);
                }
            }
        }
    }
    let mut block_of = vec![vec![None; n]; n];
    for (bi, block) in pattern.blocks.iter().enumerate() {
        for &a in block {
            for &b in block {
                if a != b {
                    block_of[a][b] = Some(bi);
                }
            }
        }
    }

    // assign labels in order of decreasing block participation for pruning
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&l| {
        std::cmp::Reverse(pattern.blocks.iter().filter(|b| b.contains(&l)).count())
    });

    let mut search = Search {
        order: &order,
        line_of: &line_of,
        block_of: &block_of,
        line_sizes: lines.iter().map(Vec::len).collect(),
        block_sizes: pattern.blocks.iter().map(Vec::len).collect(),
        point_of: vec![usize::MAX; n],
        used: vec![false; n],
        block_img: vec![None; pattern.blocks.len()],
        pattern,
        z,
    };
    if search.assign(0) {
        let mut labeling = vec![0; n];
        for (label, &pt) in search.point_of.iter().enumerate() {
            labeling[pt] = label;
        }
        Some(labeling)
    } else {
        None
    }
}

struct Search<'a> {
    order: &'a [usize],
    line_of: &'a [Vec<Option<usize>>],
    block_of: &'a [Vec<Option<usize>>],
    line_sizes: Vec<usize>,
    block_sizes: Vec<usize>,
    point_of: Vec<usize>,
    used: Vec<bool>,
    block_img: Vec<Option<usize>>,
    pattern: &'a IncidencePattern,
    z: &'a Config,
}

impl Search<'_> {
    fn assign(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return self.conics_hold();
        }
        let label = self.order[depth];
        for pt in 0..self.z.len() {
            if self.used[pt] {
                continue;
            }
            let saved = self.block_img.clone();
            if self.consistent(label, pt, depth) {
                self.used[pt] = true;
                self.point_of[label] = pt;
                if self.assign(depth + 1) {
                    return true;
                }
                self.used[pt] = false;
            }
            self.block_img = saved;
        }
        false
    }

    /// Check `label -> pt` against every earlier assignment, extending the
    /// block -> line map as a side effect.
    fn consistent(&mut self, label: usize, pt: usize, depth: usize) -> bool {
        for &other in &self.order[..depth] {
            let opt = self.point_of[other];
            match (self.block_of[label][other], self.line_of[pt][opt]) {
                (None, None) => {}
                (Some(b), Some(l)) => {
                    if self.block_sizes[b] != self.line_sizes[l] {
                        return false;
                    }
                    match self.block_img[b] {
                        Some(prev) if prev != l => return false,
                        Some(_) => {}
                        None => {
                            if self.block_img.contains(&Some(l)) {
                                return false;
                            }
                            self.block_img[b] = Some(l);
                        }
                    }
                }
                _ => return false,
            }
        }
        true
    }

    fn conics_hold(&self) -> bool {
        self.pattern.conic_subsets.iter().all(|subset| {
            let pts: Vec<Pt> = subset
                .iter()
                .map(|&l| self.z.points()[self.point_of[l]].clone())
                .collect();
            conic_through(&pts).0
        })
    }
}
