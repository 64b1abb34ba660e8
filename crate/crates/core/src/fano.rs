//! Smooth Fano polytopes: the embedded table, facets, the coned
//! triangulation and the period integrand.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::algebra::{int, Monomial, Polynomial, RationalFunction};
use crate::error::{Error, Result};
use crate::invariants::AMatrix;

const TABLE: &str = include_str!("../data/fano_polytopes.json");

/// One row of the polytope table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanoTableEntry {
    pub dim: usize,
    pub index: usize,
    pub vertices: Vec<Vec<i64>>,
}

pub fn parse_table(json: &str) -> Result<Vec<FanoTableEntry>> {
    let rows: Vec<FanoTableEntry> = serde_json::from_str(json).map_err(|e| Error::Data(e.to_string()))?;
    for r in &rows {
        if r.vertices.iter().any(|v| v.len() != r.dim) {
            return Err(Error::Data(format!("row {}/{}: vertex of wrong dimension", r.dim, r.index)));
        }
    }
    Ok(rows)
}

/// The embedded dimension 2 and 3 table.
pub fn embedded_table() -> &'static [FanoTableEntry] {
    static ROWS: OnceLock<Vec<FanoTableEntry>> = OnceLock::new();
    ROWS.get_or_init(|| parse_table(TABLE).expect("embedded table is valid"))
}

pub fn embedded_table_source() -> &'static str {
    TABLE
}

pub fn find_polytope(table: &[FanoTableEntry], dim: usize, index: usize) -> Result<LatticePolytope> {
    let row = table
        .iter()
        .find(|r| r.dim == dim && r.index == index)
        .ok_or(Error::UnknownPolytope { dim, index })?;
    LatticePolytope::new(row.vertices.clone())
}

pub fn load_fano(dim: usize, index: usize) -> Result<LatticePolytope> {
    find_polytope(embedded_table(), dim, index)
}

/// Vertices `a_1..a_m`; the origin is the extra point `a_{m+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<Vec<i64>>,
}

impl LatticePolytope {
    pub fn new(vertices: Vec<Vec<i64>>) -> Result<Self> {
        let dim = vertices.first().map(|v| v.len()).ok_or(Error::Degenerate("no vertices".into()))?;
        if dim == 0 || vertices.iter().any(|v| v.len() != dim) {
            return Err(Error::Degenerate("inconsistent vertex dimensions".into()));
        }
        Ok(LatticePolytope { dim, vertices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    /// Vertices followed by the origin.
    pub fn points(&self) -> Vec<Vec<i64>> {
        let mut p = self.vertices.clone();
        p.push(vec![0; self.dim]);
        p
    }

    pub fn npoints(&self) -> usize {
        self.vertices.len() + 1
    }

    pub fn origin_index(&self) -> usize {
        self.vertices.len()
    }

    pub fn a_matrix(&self) -> AMatrix {
        AMatrix::from_points(&self.points()).expect("points have equal length")
    }
}

/// Integer determinant (fraction-free elimination).
pub fn determinant(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

// normal of the hyperplane through d points: cofactors of the difference matrix
fn hyperplane(points: &[&Vec<i64>]) -> Vec<i64> {
    let d = points[0].len();
    let diffs: Vec<Vec<i64>> =
        points[1..].iter().map(|p| p.iter().zip(points[0]).map(|(a, b)| a - b).collect()).collect();
    (0..d)
        .map(|j| {
            let minor: Vec<Vec<i64>> =
                diffs.iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, &x)| x).collect()).collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * determinant(&minor)
        })
        .collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Facets as sorted 0-based vertex index sets, by checking every hyperplane
/// spanned by `d` vertices. The origin must be strictly interior.
pub fn facets(p: &LatticePolytope) -> Result<Vec<Vec<usize>>> {
    let d = p.dim();
    let v = p.vertices();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    for s in subsets(v.len(), d) {
        let pts: Vec<&Vec<i64>> = s.iter().map(|&i| &v[i]).collect();
        let mut normal = hyperplane(&pts);
        if normal.iter().all(|&x| x == 0) {
            continue;
        }
        let mut c = dot(&normal, &v[s[0]]);
        let side: Vec<i64> = v.iter().map(|q| dot(&normal, q) - c).collect();
        if side.iter().all(|&x| x >= 0) {
            normal.iter_mut().for_each(|x| *x = -*x);
            c = -c;
        } else if !side.iter().all(|&x| x <= 0) {
            continue;
        }
        if c <= 0 {
            return Err(Error::Degenerate("origin is not an interior point".into()));
        }
        found.insert((0..v.len()).filter(|&i| dot(&normal, &v[i]) == c).collect());
    }
    if found.is_empty() {
        return Err(Error::Degenerate("polytope is not full-dimensional".into()));
    }
    Ok(found.into_iter().collect())
}

/// A simplicial complex on point indices, closed under faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    npoints: usize,
    maximal: Vec<Vec<usize>>,
    simplices: BTreeSet<Vec<usize>>,
}

impl Triangulation {
    /// The face closure of the given maximal simplices.
    pub fn from_maximal(npoints: usize, maximal: Vec<Vec<usize>>) -> Result<Self> {
        let mut simplices = BTreeSet::new();
        let mut mx = Vec::new();
        for s in maximal {
            let mut s = s;
            s.sort_unstable();
            s.dedup();
            if s.iter().any(|&i| i >= npoints) {
                return Err(Error::Invalid(format!("simplex {s:?} uses a missing point")));
            }
            for k in 1..=s.len() {
                for sub in subsets(s.len(), k) {
                    simplices.insert(sub.iter().map(|&i| s[i]).collect::<Vec<_>>());
                }
            }
            mx.push(s);
        }
        mx.sort();
        mx.dedup();
        Ok(Triangulation { npoints, maximal: mx, simplices })
    }

    pub fn npoints(&self) -> usize {
        self.npoints
    }

    pub fn maximal(&self) -> &[Vec<usize>] {
        &self.maximal
    }

    /// Nonempty simplices, each sorted.
    pub fn simplices(&self) -> &BTreeSet<Vec<usize>> {
        &self.simplices
    }

    /// Whether a sorted index set is a face; the empty set always is.
    pub fn is_face(&self, s: &[usize]) -> bool {
        s.is_empty() || self.simplices.contains(s)
    }
}

/// Each facet joined with the origin; every maximal simplex must be unimodular.
pub fn coned_triangulation(p: &LatticePolytope) -> Result<Triangulation> {
    let d = p.dim();
    let o = p.origin_index();
    let mut maximal = Vec::new();
    for f in facets(p)? {
        if f.len() != d {
            return Err(Error::NonSimplicial(f));
        }
        let m: Vec<Vec<i64>> = f.iter().map(|&i| p.vertices()[i].clone()).collect();
        if determinant(&m).abs() != 1 {
            return Err(Error::Degenerate(format!("simplex {f:?} with the origin is not unimodular")));
        }
        let mut s = f;
        s.push(o);
        maximal.push(s);
    }
    Triangulation::from_maximal(p.npoints(), maximal)
}

/// `t1..td, x1..x(m+1)`.
pub fn variable_names(p: &LatticePolytope) -> Vec<String> {
    let mut v: Vec<String> = (1..=p.dim()).map(|i| format!("t{i}")).collect();
    v.extend((1..=p.npoints()).map(|i| format!("x{i}")));
    v
}

/// `δ_j = max(0, -min_i a_ij)`: the monomial clearing negative exponents.
pub fn clearing_exponent(p: &LatticePolytope) -> Vec<i64> {
    (0..p.dim()).map(|j| p.vertices().iter().map(|v| -v[j]).max().unwrap_or(0).max(0)).collect()
}

/// `g = Σ x_i t^(a_i + δ)` over all points, in `variable_names` order.
pub fn denominator(p: &LatticePolytope) -> Polynomial {
    let d = p.dim();
    let l = p.npoints();
    let delta = clearing_exponent(p);
    let terms = p.points().into_iter().enumerate().map(|(i, a)| {
        let mut e = vec![0u16; d + l];
        for j in 0..d {
            e[j] = (a[j] + delta[j]) as u16;
        }
        e[d + i] = 1;
        (Monomial::from_exps(&e), int(1))
    });
    Polynomial::from_terms(d + l, terms)
}

/// The period integrand `1/g`.
pub fn integrand(p: &LatticePolytope) -> Result<RationalFunction> {
    if p.vertices().iter().all(|v| v.iter().all(|&x| x == 0)) {
        return Err(Error::Degenerate("polytope is the origin".into()));
    }
    RationalFunction::reciprocal_of(denominator(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_shape() {
        let t = embedded_table();
        assert_eq!(t.len(), 23);
        assert_eq!(t.iter().filter(|r| r.dim == 2).count(), 5);
        assert_eq!(load_fano(2, 0).unwrap().vertices(), &[vec![1, 0], vec![0, 1], vec![-1, -1]]);
        assert_eq!(load_fano(3, 0).unwrap().npoints(), 5);
        assert_eq!(load_fano(2, 9), Err(Error::UnknownPolytope { dim: 2, index: 9 }));
    }

    #[test]
    fn facets_of_small_polytopes() {
        let p = load_fano(2, 0).unwrap();
        assert_eq!(facets(&p).unwrap(), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        let p = load_fano(2, 1).unwrap();
        assert_eq!(facets(&p).unwrap(), vec![vec![0, 1], vec![0, 3], vec![1, 2], vec![2, 3]]);
        let seg = LatticePolytope::new(vec![vec![1], vec![-1]]).unwrap();
        assert_eq!(facets(&seg).unwrap(), vec![vec![0], vec![1]]);
        let flat = LatticePolytope::new(vec![vec![1, 0], vec![-1, 0]]).unwrap();
        assert!(facets(&flat).is_err());
    }

    #[test]
    fn example_triangulation() {
        let t = coned_triangulation(&load_fano(2, 0).unwrap()).unwrap();
        let want: BTreeSet<Vec<usize>> =
            [vec![0], vec![1], vec![2], vec![3], vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 1, 3], vec![1, 2, 3], vec![0, 2, 3]]
                .into_iter()
                .chain([vec![0, 3], vec![1, 3], vec![2, 3]])
                .collect();
        assert_eq!(t.simplices(), &want);
        let t = coned_triangulation(&load_fano(2, 1).unwrap()).unwrap();
        assert_eq!(t.maximal(), &[vec![0, 1, 4], vec![0, 3, 4], vec![1, 2, 4], vec![2, 3, 4]]);
    }

    #[test]
    fn non_simplicial_facet() {
        let cube: Vec<Vec<i64>> = (0..8).map(|b| (0..3).map(|k| if b >> k & 1 == 1 { 1 } else { -1 }).collect()).collect();
        let p = LatticePolytope::new(cube).unwrap();
        assert!(matches!(coned_triangulation(&p), Err(Error::NonSimplicial(_))));
    }

    #[test]
    fn integrand_of_triangle() {
        let p = load_fano(2, 0).unwrap();
        let v = variable_names(&p);
        let want = crate::parse::parse_rational_function("1/(x1*t1^2*t2 + x2*t1*t2^2 + x3 + x4*t1*t2)", &v).unwrap();
        assert_eq!(integrand(&p).unwrap(), want);
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&[vec![2, 1], vec![1, 1]]), 1);
        assert_eq!(determinant(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]), -1);
        assert_eq!(determinant(&[vec![1, 2], vec![2, 4]]), 0);
    }
}
