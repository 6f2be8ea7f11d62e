//! Weighted (partial) Motzkin paths and vertex-disjoint path collections.
//!
//! This is the brute-force oracle for matrix-power brackets and Hankel
//! determinant ratios.

use std::collections::HashSet;

use serde::Serialize;

use crate::ansatz::BandOperator;
use crate::error::{Error, Result};
use crate::exact::{cofactor_determinant, Domain, Matrix, Ring};
use crate::partition::Partition;
use crate::report::Report;

pub const DEFAULT_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Step {
    #[serde(rename = "U")]
    Up,
    #[serde(rename = "F")]
    Flat,
    #[serde(rename = "D")]
    Down,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct MotzkinPath {
    pub steps: Vec<Step>,
}

impl MotzkinPath {
    /// Heights before each step, followed by the final height.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0usize];
        for s in &self.steps {
            let last = *h.last().expect("nonempty");
            h.push(match s {
                Step::Up => last + 1,
                Step::Flat => last,
                Step::Down => last - 1,
            });
        }
        h
    }

    pub fn end_height(&self) -> usize {
        *self.heights().last().expect("nonempty")
    }

    /// Product of `c_{h, h'}` over the steps.
    pub fn weight<R: Ring>(&self, c: &BandOperator<R>) -> Result<R> {
        let h = self.heights();
        let mut w = R::one();
        for k in 0..self.steps.len() {
            w = w * c.entry(h[k], h[k + 1])?;
        }
        Ok(w)
    }
}

impl std::fmt::Display for MotzkinPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for s in &self.steps {
            let ch = match s {
                Step::Up => 'U',
                Step::Flat => 'F',
                Step::Down => 'D',
            };
            write!(f, "{ch}")?;
        }
        Ok(())
    }
}

/// All partial Motzkin paths from `(0,0)` to `(n, r)`.
pub fn enumerate_paths(n: usize, r: usize) -> Result<Vec<MotzkinPath>> {
    enumerate_paths_capped(n, r, DEFAULT_CAP)
}

pub fn enumerate_paths_capped(n: usize, r: usize, cap: usize) -> Result<Vec<MotzkinPath>> {
    if n > cap {
        return Err(Error::OverCap { requested: n, cap });
    }
    let mut out = Vec::new();
    if r > n {
        return Ok(out);
    }
    let mut steps = Vec::with_capacity(n);
    fn rec(steps: &mut Vec<Step>, h: usize, left: usize, r: usize, out: &mut Vec<MotzkinPath>) {
        if left == 0 {
            if h == r {
                out.push(MotzkinPath { steps: steps.clone() });
            }
            return;
        }
        // the target must stay reachable
        for (s, nh) in [(Step::Up, Some(h + 1)), (Step::Flat, Some(h)), (Step::Down, h.checked_sub(1))] {
            let Some(nh) = nh else { continue };
            if nh.abs_diff(r) > left - 1 {
                continue;
            }
            steps.push(s);
            rec(steps, nh, left - 1, r, out);
            steps.pop();
        }
    }
    rec(&mut steps, 0, n, r, &mut out);
    Ok(out)
}

fn require_tridiagonal<R: Ring>(c: &BandOperator<R>) -> Result<()> {
    if c.lower() > 1 || c.upper() > 1 {
        return Err(Error::precondition("path weights need a tridiagonal operator"));
    }
    Ok(())
}

/// Weighted generating function of partial Motzkin paths `(0,0) → (n, r)`.
pub fn path_gf<R: Ring>(c: &BandOperator<R>, n: usize, r: usize) -> Result<R> {
    require_tridiagonal(c)?;
    let mut acc = R::zero();
    for p in enumerate_paths(n, r)? {
        acc = acc + p.weight(c)?;
    }
    Ok(acc)
}

/// `det(Z_{λ_i+m-i+m-j}) / det(Z_{2m-i-j})` with `1 ≤ i, j ≤ m`.
///
/// The quotient must be exact; a nonzero remainder is an error.
pub fn hankel_ratio<R: Domain>(z: &dyn Fn(usize) -> Result<R>, lambda: &Partition) -> Result<R> {
    let m = lambda.len();
    let parts = lambda.parts();
    let num = Matrix::try_from_fn(m, m, |i, j| z(parts[i] + (m - 1 - i) + (m - 1 - j)))?;
    let den = Matrix::try_from_fn(m, m, |i, j| z((m - 1 - i) + (m - 1 - j)))?;
    let dn = R::determinant(&den)?;
    if dn.is_zero() {
        return Err(Error::degenerate("Hankel denominator determinant"));
    }
    R::determinant(&num)?.exact_div(&dn)
}

/// `𝒦_λ` for the operator `c`, from `𝒵_N = ⟨W|c^N|V⟩` counted as paths.
pub fn generic_k<R: Domain>(c: &BandOperator<R>, lambda: &Partition) -> Result<R> {
    let top = (lambda.parts().first().copied().unwrap_or(0) + 2 * lambda.len()).saturating_sub(2);
    let zs = (0..=top).map(|n| path_gf(c, n, 0)).collect::<Result<Vec<R>>>()?;
    hankel_ratio(&|n| zs.get(n).cloned().ok_or_else(|| Error::precondition("moment index")), lambda)
}

/// `k_r = ∏_{i<r} c_{i,i+1}`
pub fn k_r<R: Ring>(c: &BandOperator<R>, r: usize) -> Result<R> {
    (0..r).try_fold(R::one(), |acc, i| Ok(acc * c.entry(i, i + 1)?))
}

/// `path_gf(c, n, r) / k_r = 𝒦_{(n-r, 0^r)}`
pub fn verify_det_motzkin<R: Domain + std::fmt::Display>(
    c: &BandOperator<R>,
    n: usize,
    r: usize,
) -> Result<Report> {
    if r > n {
        return Err(Error::precondition("need r ≤ N"));
    }
    let mut rep = Report::new();
    let lhs = path_gf(c, n, r)?.exact_div(&k_r(c, r)?)?;
    let rhs = generic_k(c, &Partition::hook_row(n - r, r))?;
    rep.compare("det-Motzkin", format!("N={n}, r={r}"), &lhs, &rhs);
    Ok(rep)
}

/// Which of the two lattice-path networks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KmlgvConfig {
    /// Sources `(i, 0)`, sinks `(2r - j, 0)`.
    Denominator { r: usize },
    /// As above but the first source moved to `(-N + r, 0)`.
    Numerator { n: usize, r: usize },
}

impl KmlgvConfig {
    pub fn r(&self) -> usize {
        match *self {
            KmlgvConfig::Denominator { r } | KmlgvConfig::Numerator { r, .. } => r,
        }
    }

    pub fn sources(&self) -> Vec<i64> {
        let r = self.r() as i64;
        let mut xs: Vec<i64> = (0..=r).collect();
        if let KmlgvConfig::Numerator { n, .. } = *self {
            xs[0] = r - n as i64;
        }
        xs
    }

    pub fn sinks(&self) -> Vec<i64> {
        let r = self.r() as i64;
        (0..=r).map(|j| 2 * r - j).collect()
    }
}

/// A path placed in the plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlacedPath {
    pub start_x: i64,
    pub path: MotzkinPath,
}

impl PlacedPath {
    pub fn vertices(&self) -> Vec<(i64, usize)> {
        self.path
            .heights()
            .into_iter()
            .enumerate()
            .map(|(k, h)| (self.start_x + k as i64, h))
            .collect()
    }
}

/// Source `i` is joined to sink `perm[i]` by `paths[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collection {
    pub perm: Vec<usize>,
    pub paths: Vec<PlacedPath>,
}

impl Collection {
    pub fn sign(&self) -> i64 {
        let mut inv = 0;
        for i in 0..self.perm.len() {
            for j in i + 1..self.perm.len() {
                if self.perm[i] > self.perm[j] {
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

    pub fn weight<R: Ring>(&self, c: &BandOperator<R>) -> Result<R> {
        self.paths.iter().try_fold(R::one(), |acc, p| Ok(acc * p.path.weight(c)?))
    }
}

/// Every pairwise vertex-disjoint family of paths from the sources to the
/// sinks, over all permutations.
pub fn enumerate_disjoint_collections(config: KmlgvConfig) -> Result<Vec<Collection>> {
    let src = config.sources();
    let dst = config.sinks();
    let longest = (dst[0] - src[0]).max(0) as usize;
    if longest > DEFAULT_CAP {
        return Err(Error::OverCap { requested: longest, cap: DEFAULT_CAP });
    }
    let k = src.len();
    // all paths source i → sink j
    let mut table: Vec<Vec<Vec<PlacedPath>>> = vec![vec![Vec::new(); k]; k];
    for i in 0..k {
        for j in 0..k {
            let len = dst[j] - src[i];
            if len < 0 {
                continue;
            }
            table[i][j] = enumerate_paths(len as usize, 0)?
                .into_iter()
                .map(|path| PlacedPath { start_x: src[i], path })
                .collect();
        }
    }
    // shortest rows first: the last sources are the most constrained
    let order: Vec<usize> = (0..k).rev().collect();
    let mut out = Vec::new();
    let mut chosen: Vec<Option<(usize, PlacedPath)>> = vec![None; k];
    let mut used_sinks = vec![false; k];
    let mut occupied: HashSet<(i64, usize)> = HashSet::new();

    #[allow(clippy::too_many_arguments)]
    fn rec(
        depth: usize,
        order: &[usize],
        table: &[Vec<Vec<PlacedPath>>],
        chosen: &mut Vec<Option<(usize, PlacedPath)>>,
        used_sinks: &mut Vec<bool>,
        occupied: &mut HashSet<(i64, usize)>,
        out: &mut Vec<Collection>,
    ) {
        if depth == order.len() {
            let (perm, paths) = chosen.iter().map(|c| c.clone().expect("filled")).unzip();
            out.push(Collection { perm, paths });
            return;
        }
        let i = order[depth];
        for j in 0..table.len() {
            if used_sinks[j] {
                continue;
            }
            for p in &table[i][j] {
                let verts = p.vertices();
                if verts.iter().any(|v| occupied.contains(v)) {
                    continue;
                }
                verts.iter().for_each(|v| {
                    occupied.insert(*v);
                });
                used_sinks[j] = true;
                chosen[i] = Some((j, p.clone()));
                rec(depth + 1, order, table, chosen, used_sinks, occupied, out);
                chosen[i] = None;
                used_sinks[j] = false;
                verts.iter().for_each(|v| {
                    occupied.remove(v);
                });
            }
        }
    }
    rec(0, &order, &table, &mut chosen, &mut used_sinks, &mut occupied, &mut out);
    Ok(out)
}

/// Weight matrix `M_ij` = generating function of all paths source i → sink j.
pub fn kmlgv_weight_matrix<R: Ring>(c: &BandOperator<R>, config: KmlgvConfig) -> Result<Matrix<R>> {
    let (src, dst) = (config.sources(), config.sinks());
    let k = src.len();
    Matrix::try_from_fn(k, k, |i, j| {
        let len = dst[j] - src[i];
        if len < 0 {
            Ok(R::zero())
        } else {
            path_gf(c, len as usize, 0)
        }
    })
}

/// `det M = Σ sign(σ)·weight` over disjoint collections.
pub fn verify_kmlgv<R: Ring + std::fmt::Display>(c: &BandOperator<R>, config: KmlgvConfig) -> Result<Report> {
    let mut rep = Report::new();
    let det = cofactor_determinant(&kmlgv_weight_matrix(c, config)?)?;
    let cols = enumerate_disjoint_collections(config)?;
    let mut gf = R::zero();
    for col in &cols {
        let w = col.weight(c)?;
        gf = if col.sign() > 0 { gf + w } else { gf - w };
    }
    rep.compare("KMLGV", format!("{config:?}, {} collections", cols.len()), &det, &gf);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;

    fn unit() -> BandOperator<Rational> {
        BandOperator::tridiagonal(|_| Ok(Rational::one()), |_| Ok(Rational::one()), |_| Ok(Rational::one()))
    }

    fn sample() -> BandOperator<Rational> {
        BandOperator::tridiagonal(
            |n| Ok(Rational::new(n as i64 + 2, 3)),
            |n| Ok(Rational::new(1, n as i64 + 2)),
            |n| Ok(Rational::new(-3, n as i64 + 5)),
        )
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_paths(0, 0).unwrap().len(), 1);
        let up = enumerate_paths(1, 1).unwrap();
        assert_eq!(up, vec![MotzkinPath { steps: vec![Step::Up] }]);
        let names: Vec<String> = enumerate_paths(3, 0).unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(names.len(), 4);
        for s in ["FFF", "FUD", "UDF", "UFD"] {
            assert!(names.contains(&s.to_string()));
        }
    }

    #[test]
    fn motzkin_numbers() {
        let counts: Vec<usize> = (0..=6).map(|n| enumerate_paths(n, 0).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 9, 21, 51]);
    }

    #[test]
    fn over_cap() {
        assert!(matches!(enumerate_paths(13, 0), Err(Error::OverCap { .. })));
    }

    #[test]
    fn two_step_gf() {
        let c = sample();
        let expect = c.entry(0, 0).unwrap().pow(2) + c.entry(0, 1).unwrap() * c.entry(1, 0).unwrap();
        assert_eq!(path_gf(&c, 2, 0).unwrap(), expect);
    }

    #[test]
    fn generic_k_small_cases() {
        let c = sample();
        assert!(generic_k(&c, &Partition::hook_row(0, 3)).unwrap().is_one());
        assert_eq!(generic_k(&c, &Partition::hook_row(3, 0)).unwrap(), path_gf(&c, 3, 0).unwrap());
        let expect = c.entry(0, 0).unwrap() + c.entry(1, 1).unwrap();
        assert_eq!(generic_k(&c, &Partition::hook_row(1, 1)).unwrap(), expect);
    }

    #[test]
    fn det_motzkin_small() {
        let c = sample();
        for n in 0..=5 {
            for r in 0..=n {
                let rep = verify_det_motzkin(&c, n, r).unwrap();
                assert!(rep.all_hold(), "{rep}");
            }
        }
    }

    #[test]
    fn denominator_network_has_one_collection() {
        for r in 0..=3 {
            let cols = enumerate_disjoint_collections(KmlgvConfig::Denominator { r }).unwrap();
            assert_eq!(cols.len(), 1, "r={r}");
        }
    }

    #[test]
    fn numerator_collections_biject_with_partial_paths() {
        let cols = enumerate_disjoint_collections(KmlgvConfig::Numerator { n: 3, r: 1 }).unwrap();
        assert_eq!(cols.len(), enumerate_paths(3, 1).unwrap().len());
        let forced = enumerate_disjoint_collections(KmlgvConfig::Numerator { n: 2, r: 2 }).unwrap();
        assert_eq!(forced.len(), 1);
    }

    #[test]
    fn kmlgv_unit_and_weighted() {
        for c in [unit(), sample()] {
            for r in 0..=2 {
                assert!(verify_kmlgv(&c, KmlgvConfig::Denominator { r }).unwrap().all_hold());
                for n in r..=4 {
                    assert!(verify_kmlgv(&c, KmlgvConfig::Numerator { n, r }).unwrap().all_hold());
                }
            }
        }
    }
}
