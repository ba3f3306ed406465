//! Reduced simplicial homology over a field, computed from ranks of boundary
//! matrices, and the Betti number formula
//! `beta_{i,a}(A) = dim_K H~_{i-1}(Delta_a; K)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::{ExponentVector, ToricPresentation};

/// Coefficient field for homology.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum FieldChoice {
    #[default]
    Rationals,
    /// `F_p` with `p` prime and below `2^32`.
    PrimeField(u64),
}

impl FieldChoice {
    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^32")));
        }
        Ok(FieldChoice::PrimeField(p))
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldChoice::Rationals => write!(f, "rational"),
            FieldChoice::PrimeField(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" | "Q" => Ok(FieldChoice::Rationals),
            _ => {
                let p = s
                    .strip_prefix("fp:")
                    .and_then(|p| p.parse().ok())
                    .ok_or_else(|| Error::InvalidField(format!("expected 'rational' or 'fp:<p>', got '{s}'")))?;
                FieldChoice::prime(p)
            }
        }
    }
}

impl TryFrom<String> for FieldChoice {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<FieldChoice> for String {
    fn from(f: FieldChoice) -> String {
        f.to_string()
    }
}

/// An abstract simplicial complex stored by its facets. Vertices are indices
/// into `vertex_labels`.
///
/// The void complex has no faces at all; the irrelevant complex has only the
/// empty face. They differ in degree `-1` homology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplex {
    vertex_labels: Vec<String>,
    facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Normalises the facet list: sorts vertices, drops repeated and
    /// non-maximal faces, sorts facets lexicographically.
    pub fn new(vertex_labels: Vec<String>, facets: Vec<Vec<usize>>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for mut f in facets {
            f.sort_unstable();
            f.dedup();
            if let Some(&v) = f.iter().find(|&&v| v >= vertex_labels.len()) {
                return Err(Error::InvalidPresentation(format!(
                    "facet vertex {v} has no label ({} labels)",
                    vertex_labels.len()
                )));
            }
            set.insert(f);
        }
        let all: Vec<Vec<usize>> = set.into_iter().collect();
        let facets =
            all.iter().filter(|f| !all.iter().any(|g| g.len() > f.len() && is_subset(f, g))).cloned().collect();
        Ok(SimplicialComplex { vertex_labels, facets })
    }

    /// Complex on vertices `0..n` labelled `1..=n`.
    pub fn from_facets(n: usize, facets: Vec<Vec<usize>>) -> Result<Self> {
        Self::new((1..=n).map(|k| k.to_string()).collect(), facets)
    }

    pub fn void(vertex_labels: Vec<String>) -> Self {
        SimplicialComplex { vertex_labels, facets: vec![] }
    }

    pub fn irrelevant(vertex_labels: Vec<String>) -> Self {
        SimplicialComplex { vertex_labels, facets: vec![vec![]] }
    }

    /// Full simplex on `n` vertices.
    pub fn simplex(n: usize) -> Self {
        Self::from_facets(n, vec![(0..n).collect()]).unwrap()
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_irrelevant(&self) -> bool {
        self.facets == [Vec::<usize>::new()]
    }

    /// `None` for the void complex, `-1` for the irrelevant one.
    pub fn dimension(&self) -> Option<isize> {
        self.facets.iter().map(|f| f.len() as isize - 1).max()
    }

    /// Facets as label lists.
    pub fn labelled_facets(&self) -> Vec<Vec<String>> {
        self.facets.iter().map(|f| f.iter().map(|&v| self.vertex_labels[v].clone()).collect()).collect()
    }

    /// Adds a new vertex joined to every face.
    pub fn cone(&self, apex_label: &str) -> Self {
        let mut labels = self.vertex_labels.clone();
        let apex = labels.len();
        labels.push(apex_label.to_owned());
        let facets = self.facets.iter().map(|f| f.iter().copied().chain(std::iter::once(apex)).collect()).collect();
        Self::new(labels, facets).unwrap()
    }

    /// Some vertex lies in every facet, so the complex is a cone and acyclic.
    pub fn has_cone_point(&self) -> bool {
        match self.facets.split_first() {
            Some((first, rest)) => first.iter().any(|v| rest.iter().all(|f| f.binary_search(v).is_ok())),
            None => false,
        }
    }

    /// All faces grouped by dimension, each list sorted lexicographically.
    pub fn faces_by_dimension(&self) -> BTreeMap<isize, Vec<Vec<usize>>> {
        let mut by_dim: BTreeMap<isize, BTreeSet<Vec<usize>>> = BTreeMap::new();
        for f in &self.facets {
            assert!(f.len() < 64, "facet too large to enumerate");
            for sub in 0u64..(1u64 << f.len()) {
                let face: Vec<usize> = (0..f.len()).filter(|k| sub & (1 << k) != 0).map(|k| f[k]).collect();
                by_dim.entry(face.len() as isize - 1).or_default().insert(face);
            }
        }
        by_dim.into_iter().map(|(d, s)| (d, s.into_iter().collect())).collect()
    }

    /// `f_{-1}, f_0, ..., f_dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces_by_dimension().values().map(Vec::len).collect()
    }

    /// Matrix of `d_i` from `i`-faces (columns) to `(i-1)`-faces (rows).
    /// Removing the vertex in position `k` of a sorted face carries sign
    /// `(-1)^k`; `d_0` is the augmentation onto the empty face.
    pub fn boundary_matrix(&self, i: isize) -> IntMatrix {
        let faces = self.faces_by_dimension();
        boundary_from_faces(&faces, i)
    }

    /// `dim H~_i` for `-1 <= i <= dim`. Empty for the void complex.
    pub fn reduced_homology_dims(&self, field: FieldChoice) -> BTreeMap<isize, usize> {
        let Some(top) = self.dimension() else {
            return BTreeMap::new();
        };
        let faces = self.faces_by_dimension();
        // ranks[k] = rank of d_{k-1}, k = 0 ..= top + 2
        let ranks: Vec<usize> =
            (-1..=top + 1).map(|i| if i <= -1 { 0 } else { boundary_from_faces(&faces, i).rank(field) }).collect();
        (-1..=top)
            .map(|i| {
                let k = (i + 1) as usize;
                let n_faces = faces.get(&i).map_or(0, Vec::len);
                (i, n_faces - ranks[k] - ranks[k + 1])
            })
            .collect()
    }

    /// `sum (-1)^i dim H~_i`.
    pub fn reduced_euler_characteristic(&self, field: FieldChoice) -> i64 {
        self.reduced_homology_dims(field)
            .into_iter()
            .map(|(i, d)| if i.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|v| big.binary_search(v).is_ok())
}

fn boundary_from_faces(faces: &BTreeMap<isize, Vec<Vec<usize>>>, i: isize) -> IntMatrix {
    let empty = Vec::new();
    let cols = faces.get(&i).unwrap_or(&empty);
    let rows = faces.get(&(i - 1)).unwrap_or(&empty);
    let mut m = IntMatrix::zeros(rows.len(), cols.len());
    if i < 0 {
        return m;
    }
    for (c, face) in cols.iter().enumerate() {
        for k in 0..face.len() {
            let mut sub = face.clone();
            sub.remove(k);
            let r = rows.binary_search(&sub).expect("complex is closed under taking faces");
            m.set(r, c, if k % 2 == 0 { 1 } else { -1 });
        }
    }
    m
}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[i64]>::to_vec).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    out.data[r * other.cols + c] += a * other.get(k, c);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn rank(&self, field: FieldChoice) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        match field {
            FieldChoice::Rationals => self.rank_rational(),
            FieldChoice::PrimeField(p) => self.rank_mod(p),
        }
    }

    /// Rank over `Q` by fraction-free (Bareiss) elimination. Runs in `i128`
    /// and restarts with big integers on overflow.
    pub fn rank_rational(&self) -> usize {
        let small: Vec<Vec<i128>> =
            self.to_rows().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect();
        bareiss_rank_i128(small).unwrap_or_else(|| {
            let big = self.to_rows().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
            bareiss_rank_big(big)
        })
    }

    pub fn rank_mod(&self, p: u64) -> usize {
        let mut m: Vec<Vec<u64>> = self
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|v| v.rem_euclid(p as i64) as u64).collect())
            .collect();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..rows).find(|&r| m[r][c] != 0) else {
                continue;
            };
            m.swap(rank, piv);
            let inv = mod_pow(m[rank][c], p - 2, p);
            for r in rank + 1..rows {
                if m[r][c] == 0 {
                    continue;
                }
                let factor = m[r][c] * inv % p;
                for k in c..cols {
                    let sub = factor * m[rank][k] % p;
                    m[r][k] = (m[r][k] + p - sub) % p;
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn bareiss_rank_i128(mut m: Vec<Vec<i128>>) -> Option<usize> {
    let (rows, cols) = (m.len(), m[0].len());
    let mut prev: i128 = 1;
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let pivot = m[rank][c];
        for r in rank + 1..rows {
            let lead = m[r][c];
            for k in c + 1..cols {
                let v = pivot.checked_mul(m[r][k])?.checked_sub(lead.checked_mul(m[rank][k])?)?;
                m[r][k] = v / prev;
            }
            m[r][c] = 0;
        }
        prev = pivot;
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Some(rank)
}

fn bareiss_rank_big(mut m: Vec<Vec<BigInt>>) -> usize {
    let (rows, cols) = (m.len(), m[0].len());
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let pivot = m[rank][c].clone();
        for r in rank + 1..rows {
            let lead = m[r][c].clone();
            for k in c + 1..cols {
                let v = &pivot * &m[r][k] - &lead * &m[rank][k];
                m[r][k] = v / &prev;
            }
            m[r][c] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// `beta_i = dim H~_{i-1}(c)` for all `i` with a nonzero value. A complex
/// with a cone point is skipped without building any matrix.
pub fn betti_from_complex(c: &SimplicialComplex, field: FieldChoice) -> BTreeMap<usize, usize> {
    if c.has_cone_point() {
        return BTreeMap::new();
    }
    c.reduced_homology_dims(field).into_iter().filter(|&(_, d)| d > 0).map(|(i, d)| ((i + 1) as usize, d)).collect()
}

/// `beta_{i,a}(A) = dim H~_{i-1}(Delta_a(A))`.
pub fn multigraded_betti(p: &ToricPresentation, a: &ExponentVector, i: usize, field: FieldChoice) -> Result<usize> {
    let c = p.divisor_complex(a)?;
    Ok(betti_from_complex(&c, field).get(&i).copied().unwrap_or(0))
}
