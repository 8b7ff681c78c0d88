//! The boundary curve `psi(x) = min t(K2; W)` over infinite lexicographic
//! products `W` of two weighted stringent graphs at prescribed
//! `t(P4; W) = x`.
//!
//! Level `i` of `W` is `(F1, mu)` when `i` is in `T` and `(F2, mu)`
//! otherwise. With `lambda = sum_{i in T} 2^-i`,
//!
//! ```text
//! t(P4; W) = lambda * alpha1 + (1 - lambda) * alpha2
//! t(K2; W) = beta2 + (beta1 - beta2) (1 - gamma) g(lambda)
//! g(lambda) = sum_{i in T} gamma^(i-1)
//! ```
//!
//! where `m4(mu) = 1/2`, `gamma = m2(mu)`, `alpha_i = t(P4; F_i, mu) / (1 - m4)`
//! and `beta_i = t(K2; F_i, mu) / (1 - gamma)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::constructions::{moment, LexSpec};
use crate::density::weighted_density;
use crate::error::{Error, Result};
use crate::graph::{Graph, WeightedGraph};
use crate::random::{find_stringent, RngSeed, DEFAULT_ATTEMPT_CAP};
use crate::scalar::{format_real, rat};

pub const DEFAULT_N: usize = 16;
pub const DEFAULT_DEPTH: usize = 60;
/// Pairs `(F1, F2)` tried by [`theorem_setup`] before giving up.
pub const SETUP_ATTEMPT_CAP: u64 = 256;
/// Dyadic level of the `lambda` values injected into [`sample_curve`].
pub const DEFAULT_DYADIC_LEVEL: u32 = 8;

/// `mu = (a, b, ..., b)` with `a^4 + (n-1) b^4 = 1/2` and `a + (n-1) b = 1`,
/// by bisection on `a` in `(1/n, 1)`.
pub fn solve_mu(n: usize, tol: f64) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::InvalidParameter("n must be at least 2".into()));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter("tol must be positive".into()));
    }
    let m = (n - 1) as f64;
    let excess = |a: f64| {
        let b = (1.0 - a) / m;
        a.powi(4) + m * b.powi(4) - 0.5
    };
    let (mut lo, mut hi) = (1.0 / n as f64, 1.0);
    if excess(lo) >= 0.0 || excess(hi) <= 0.0 {
        return Err(Error::InvalidParameter("no sign change in the bisection bracket".into()));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if excess(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    let a = 0.5 * (lo + hi);
    if excess(a).abs() > tol {
        return Err(Error::InvalidParameter(format!("residual {} above tolerance {tol}", excess(a))));
    }
    let b = (1.0 - a) / m;
    let mut mu = vec![b; n];
    mu[0] = a;
    Ok(mu)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TheoremSetup {
    pub n: usize,
    pub f1: Graph,
    pub f2: Graph,
    pub mu: Vec<f64>,
    pub gamma: f64,
    /// Normalised so that `t(P4; W) = lambda alpha1 + (1 - lambda) alpha2`.
    pub alpha1: f64,
    pub alpha2: f64,
    /// `t(P4; F_i, mu)` before dividing by `1 - m4(mu)`.
    pub alpha1_raw: f64,
    pub alpha2_raw: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub seeds: (RngSeed, RngSeed),
    /// Number of `(F1, F2)` pairs drawn.
    pub attempts: u64,
}

#[derive(Serialize)]
struct SetupRecord {
    n: usize,
    f1: String,
    f2: String,
    f1_graph6: String,
    f2_graph6: String,
    mu: Vec<String>,
    m4: f64,
    gamma: f64,
    alpha1: f64,
    alpha2: f64,
    alpha1_raw: f64,
    alpha2_raw: f64,
    beta1: f64,
    beta2: f64,
    seeds: [u64; 2],
    attempts: u64,
}

impl Serialize for TheoremSetup {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        SetupRecord {
            n: self.n,
            f1: self.f1.to_edge_list(),
            f2: self.f2.to_edge_list(),
            f1_graph6: self.f1.to_graph6(),
            f2_graph6: self.f2.to_graph6(),
            mu: self.mu.iter().map(|m| format!("{m:.17e}")).collect(),
            m4: moment(&self.mu, 4),
            gamma: self.gamma,
            alpha1: self.alpha1,
            alpha2: self.alpha2,
            alpha1_raw: self.alpha1_raw,
            alpha2_raw: self.alpha2_raw,
            beta1: self.beta1,
            beta2: self.beta2,
            seeds: [self.seeds.0 .0, self.seeds.1 .0],
            attempts: self.attempts,
        }
        .serialize(s)
    }
}

impl TheoremSetup {
    /// Builds the setup from given graphs, checking every invariant.
    pub fn from_graphs(f1: Graph, f2: Graph, seeds: (RngSeed, RngSeed), attempts: u64) -> Result<Self> {
        let n = f1.order();
        if f2.order() != n {
            return Err(Error::DimensionMismatch { expected: n, got: f2.order() });
        }
        for g in [&f1, &f2] {
            if !crate::structure::is_stringent(g) {
                return Err(Error::NotStringent);
            }
        }
        let mu = solve_mu(n, 1e-13)?;
        let gamma = moment(&mu, 2);
        let m4 = moment(&mu, 4);
        let w1 = WeightedGraph::new(f1.clone(), mu.clone())?;
        let w2 = WeightedGraph::new(f2.clone(), mu.clone())?;
        let p4 = Graph::path(4);
        let k2 = Graph::complete(2);
        let alpha1_raw = weighted_density(&p4, &w1)?;
        let alpha2_raw = weighted_density(&p4, &w2)?;
        Ok(TheoremSetup {
            n,
            f1,
            f2,
            alpha1: alpha1_raw / (1.0 - m4),
            alpha2: alpha2_raw / (1.0 - m4),
            alpha1_raw,
            alpha2_raw,
            beta1: weighted_density(&k2, &w1)? / (1.0 - gamma),
            beta2: weighted_density(&k2, &w2)? / (1.0 - gamma),
            mu,
            gamma,
            seeds,
            attempts,
        })
    }

    /// `alpha1 < alpha2` and `beta1 < beta2`.
    pub fn is_ordered(&self) -> bool {
        self.alpha1 < self.alpha2 && self.beta1 < self.beta2
    }

    pub fn weighted(&self, which: Side) -> WeightedGraph<f64> {
        let g = match which {
            Side::F1 => self.f1.clone(),
            Side::F2 => self.f2.clone(),
        };
        WeightedGraph::new(g, self.mu.clone()).expect("mu was validated at construction")
    }

    /// `x = lambda alpha1 + (1 - lambda) alpha2`.
    pub fn x_of(&self, lambda: f64) -> f64 {
        lambda * self.alpha1 + (1.0 - lambda) * self.alpha2
    }

    /// `t(K2; W)` for a given value of `g`.
    pub fn edge_density(&self, g: f64) -> f64 {
        self.beta2 + (self.beta1 - self.beta2) * (1.0 - self.gamma) * g
    }

    /// Bound on the error in `psi` from truncating `g` at `depth`.
    pub fn psi_truncation_bound(&self, depth: usize) -> f64 {
        (self.beta1 - self.beta2).abs() * self.gamma.powi(depth as i32)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("setup serialises")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    F1,
    F2,
}

/// `F1` from `G(n, 1/3)` and `F2` from `G(n, 1/2)`, both stringent; pair
/// `r` uses the seeds `seed.derive(2r)` and `seed.derive(2r + 1)`. Pairs
/// are drawn until `alpha1 < alpha2` and `beta1 < beta2`.
pub fn theorem_setup(n: usize, seed: RngSeed) -> Result<TheoremSetup> {
    if n < 6 {
        return Err(Error::InvalidParameter(format!("n = {n}: stringent graphs need n >= 6")));
    }
    for r in 0..SETUP_ATTEMPT_CAP {
        let s1 = seed.derive(2 * r);
        let s2 = seed.derive(2 * r + 1);
        let (f1, _) = find_stringent(n, &rat(1, 3), s1, DEFAULT_ATTEMPT_CAP)?;
        let (f2, _) = find_stringent(n, &rat(1, 2), s2, DEFAULT_ATTEMPT_CAP)?;
        let setup = TheoremSetup::from_graphs(f1, f2, (s1, s2), r + 1)?;
        if setup.is_ordered() {
            return Ok(setup);
        }
    }
    Err(Error::GaveUp { attempts: SETUP_ATTEMPT_CAP, what: "no pair with alpha1 < alpha2 and beta1 < beta2".into() })
}

/// Which binary expansion of `lambda` defines `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expansion {
    /// The expansion read off the value; terminating when `lambda` is dyadic.
    Unique,
    /// The terminating expansion of a dyadic `lambda`.
    Finite,
    /// The expansion of a dyadic `lambda` ending in ones.
    Infinite,
}

/// The first `depth` binary digits of `lambda` in `[0, 1]`. `lambda = 1` is
/// all ones.
pub fn binary_digits(lambda: f64, depth: usize) -> Result<Vec<bool>> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::OutOfRange { x: lambda, lo: 0.0, hi: 1.0 });
    }
    if lambda == 1.0 {
        return Ok(vec![true; depth]);
    }
    let mut r = lambda;
    Ok((0..depth)
        .map(|_| {
            // doubling and subtracting one are exact in binary floating point
            r *= 2.0;
            let bit = r >= 1.0;
            if bit {
                r -= 1.0;
            }
            bit
        })
        .collect())
}

/// Position (1-based) of the last one in the terminating expansion of
/// `lambda`, if `0 < lambda < 1` terminates within `depth` digits.
pub fn dyadic_position(lambda: f64, depth: usize) -> Option<usize> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return None;
    }
    let mut r = lambda;
    for i in 1..=depth {
        r *= 2.0;
        if r >= 1.0 {
            r -= 1.0;
        }
        if r == 0.0 {
            return Some(i);
        }
    }
    None
}

pub fn is_dyadic(lambda: f64, depth: usize) -> bool {
    dyadic_position(lambda, depth).is_some()
}

/// The digits of `T` under the chosen expansion.
pub fn expansion_digits(lambda: f64, depth: usize, expansion: Expansion) -> Result<Vec<bool>> {
    let mut digits = binary_digits(lambda, depth)?;
    match expansion {
        Expansion::Unique => {}
        Expansion::Finite => {
            dyadic_position(lambda, depth).ok_or(Error::NotDyadic(lambda))?;
        }
        Expansion::Infinite => {
            let p = dyadic_position(lambda, depth).ok_or(Error::NotDyadic(lambda))?;
            digits[p - 1] = false;
            for d in &mut digits[p..] {
                *d = true;
            }
        }
    }
    Ok(digits)
}

/// `g = sum_{i in T} gamma^(i-1)` over the digits given.
pub fn g_from_digits(digits: &[bool], gamma: f64) -> f64 {
    let mut acc = 0.0;
    let mut w = 1.0;
    for &d in digits {
        if d {
            acc += w;
        }
        w *= gamma;
    }
    acc
}

/// `g(lambda)` truncated at `depth`; the error is at most
/// [`g_truncation_bound`].
pub fn g_value(lambda: f64, gamma: f64, depth: usize, expansion: Expansion) -> Result<f64> {
    check_depth(depth)?;
    Ok(g_from_digits(&expansion_digits(lambda, depth, expansion)?, gamma))
}

/// `gamma^depth / (1 - gamma)`.
pub fn g_truncation_bound(gamma: f64, depth: usize) -> f64 {
    gamma.powi(depth as i32) / (1.0 - gamma)
}

fn check_depth(depth: usize) -> Result<()> {
    if depth == 0 {
        return Err(Error::InvalidParameter("depth must be at least 1".into()));
    }
    Ok(())
}

/// `psi` at parameter `lambda`: at a dyadic `lambda` the smaller of the two
/// expansion values, elsewhere the unique one.
pub fn psi_at_lambda(setup: &TheoremSetup, lambda: f64, depth: usize) -> Result<f64> {
    check_depth(depth)?;
    if is_dyadic(lambda, depth) {
        let a = setup.edge_density(g_value(lambda, setup.gamma, depth, Expansion::Finite)?);
        let b = setup.edge_density(g_value(lambda, setup.gamma, depth, Expansion::Infinite)?);
        Ok(a.min(b))
    } else {
        Ok(setup.edge_density(g_value(lambda, setup.gamma, depth, Expansion::Unique)?))
    }
}

/// `lambda = (alpha2 - x) / (alpha2 - alpha1)` for `x` in `[alpha1, alpha2]`.
pub fn lambda_of(setup: &TheoremSetup, x: f64) -> Result<f64> {
    let (lo, hi) = (setup.alpha1, setup.alpha2);
    if !(lo..=hi).contains(&x) {
        return Err(Error::OutOfRange { x, lo, hi });
    }
    Ok(((hi - x) / (hi - lo)).clamp(0.0, 1.0))
}

pub fn psi(x: f64, setup: &TheoremSetup, depth: usize) -> Result<f64> {
    psi_at_lambda(setup, lambda_of(setup, x)?, depth)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurvePoint {
    pub x: f64,
    pub lambda: f64,
    pub psi: f64,
    pub trunc_bound: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveSeries {
    pub setup: TheoremSetup,
    pub depth: usize,
    pub points: Vec<CurvePoint>,
}

/// `psi` on `resolution` equally spaced values of `lambda` together with
/// every `lambda = m / 2^dyadic_level`, sorted by `x`, duplicates removed.
pub fn sample_curve(setup: &TheoremSetup, resolution: usize, depth: usize, dyadic_level: u32) -> Result<CurveSeries> {
    if resolution < 2 {
        return Err(Error::InvalidParameter("resolution must be at least 2".into()));
    }
    if dyadic_level > 52 {
        return Err(Error::InvalidParameter("dyadic level must be at most 52".into()));
    }
    check_depth(depth)?;
    let step = (resolution - 1) as f64;
    let mut lambdas: Vec<f64> = (0..resolution).map(|i| i as f64 / step).collect();
    let den = (1u64 << dyadic_level) as f64;
    lambdas.extend((0..=1u64 << dyadic_level).map(|m| m as f64 / den));
    // decreasing lambda is increasing x
    lambdas.sort_by(|a, b| b.total_cmp(a));
    lambdas.dedup();
    let bound = setup.psi_truncation_bound(depth);
    let mut points: Vec<CurvePoint> = Vec::with_capacity(lambdas.len());
    for lambda in lambdas {
        let x = setup.x_of(lambda);
        if points.last().is_some_and(|p| p.x >= x) {
            continue;
        }
        points.push(CurvePoint { x, lambda, psi: psi_at_lambda(setup, lambda, depth)?, trunc_bound: bound });
    }
    Ok(CurveSeries { setup: setup.clone(), depth, points })
}

impl CurveSeries {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,psi,trunc_bound\n");
        for p in &self.points {
            out += &format!("{},{},{}\n", format_real(p.x), format_real(p.psi), format_real(p.trunc_bound));
        }
        out
    }

    /// One polyline; the view box spans `[alpha1, alpha2]` by the range of
    /// `psi`, with `psi` increasing upwards.
    pub fn to_svg(&self) -> String {
        let (x0, x1) = (self.setup.alpha1, self.setup.alpha2);
        let (y0, y1) = self
            .points
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p.psi), hi.max(p.psi)));
        let (w, h) = (x1 - x0, (y1 - y0).max(f64::MIN_POSITIVE));
        let coords: Vec<String> = self.points.iter().map(|p| format!("{},{}", p.x, y0 + y1 - p.psi)).collect();
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{x0} {y0} {w} {h}\" preserveAspectRatio=\"none\" width=\"800\" height=\"500\">\n\
             <polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\" points=\"{pts}\"/>\n</svg>\n",
            pts = coords.join(" ")
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Quotient {
    pub j: u32,
    pub h: f64,
    pub max_quotient: f64,
}

/// `M_j = max_m |psi(x_m + h_j) - psi(x_m)| / h_j` over the grid
/// `x_m = alpha1 + m h_j`, `h_j = 2^-j (alpha2 - alpha1)`.
pub fn quotient_scan(setup: &TheoremSetup, j_min: u32, j_max: u32, depth: usize) -> Result<Vec<Quotient>> {
    if j_min < 1 || j_min > j_max || j_max > 40 {
        return Err(Error::InvalidParameter(format!("need 1 <= j_min <= j_max <= 40, got {j_min}..{j_max}")));
    }
    check_depth(depth)?;
    (j_min..=j_max)
        .map(|j| {
            let cells = 1u64 << j;
            let h = (setup.alpha2 - setup.alpha1) / cells as f64;
            let mut prev = psi_at_lambda(setup, 1.0, depth)?;
            let mut best = 0.0f64;
            for m in 1..=cells {
                // lambda = 1 - m / 2^j, exactly representable
                let next = psi_at_lambda(setup, (cells - m) as f64 / cells as f64, depth)?;
                best = best.max((next - prev).abs() / h);
                prev = next;
            }
            Ok(Quotient { j, h, max_quotient: best })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScatterPoint {
    /// The finite set `T`, 1-based.
    pub t_set: Vec<usize>,
    pub lambda: f64,
    pub t_p4: f64,
    pub t_k2: f64,
}

/// `(t(P4; W), t(K2; W))` for the product with the finite set `T`.
pub fn point_for_set(setup: &TheoremSetup, t_set: &[usize]) -> Result<ScatterPoint> {
    if t_set.iter().any(|&i| i == 0 || i > 1000) {
        return Err(Error::InvalidParameter("T must hold levels 1..=1000".into()));
    }
    let mut t: Vec<usize> = t_set.to_vec();
    t.sort_unstable();
    t.dedup();
    let lambda: f64 = t.iter().map(|&i| 0.5f64.powi(i as i32)).sum();
    let g: f64 = t.iter().map(|&i| setup.gamma.powi(i as i32 - 1)).sum();
    Ok(ScatterPoint { lambda, t_p4: setup.x_of(lambda), t_k2: setup.edge_density(g), t_set: t })
}

/// Points for `count` random finite sets `T` within the first `depth`
/// levels, drawn from `ChaCha8Rng` seeded with `seed`.
pub fn region_scatter(setup: &TheoremSetup, count: usize, depth: usize, seed: RngSeed) -> Result<Vec<ScatterPoint>> {
    if count == 0 {
        return Err(Error::InvalidParameter("count must be at least 1".into()));
    }
    check_depth(depth)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.0);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=depth);
            let t: Vec<usize> = (1..=len).filter(|_| rng.gen_bool(0.5)).collect();
            point_for_set(setup, &t)
        })
        .collect()
}

pub fn scatter_csv(points: &[ScatterPoint]) -> String {
    let mut out = String::from("t_p4,t_k2,t_set\n");
    for p in points {
        let t: Vec<String> = p.t_set.iter().map(usize::to_string).collect();
        out += &format!("{},{},{}\n", format_real(p.t_p4), format_real(p.t_k2), t.join(" "));
    }
    out
}

/// The product with level set `T` as a lex spec: `(F1, mu)` at the levels
/// in `T`, `(F2, mu)` elsewhere.
pub fn lex_spec_for_set(setup: &TheoremSetup, t_set: &[usize]) -> Result<LexSpec<f64>> {
    let top = t_set.iter().copied().max().unwrap_or(0);
    if t_set.contains(&0) {
        return Err(Error::InvalidParameter("levels are numbered from 1".into()));
    }
    let prefix = (1..=top)
        .map(|i| setup.weighted(if t_set.contains(&i) { Side::F1 } else { Side::F2 }))
        .collect();
    LexSpec::new(prefix, vec![setup.weighted(Side::F2)])
}
