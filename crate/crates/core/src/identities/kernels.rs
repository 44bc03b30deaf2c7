//! Kernel sums `Σ f_n/((n+r)(n+k))`, their integral representations, and
//! the shifted alternating sums `Σ f_n (−1)^{n−1}/(n+k)`.

use super::domain::Domain;
use super::helpers::*;
use super::params::{int_grid, rational_grid, Params};
use super::{Family, IdentityRecord};
use crate::combinatorics::{iterated_harmonic, rational, to_f64, ExactRational};
use crate::error::Result;
use crate::oracle::integrals::{
    alt_kernel_integral, log_moment, log_moment_to, log_over_x_integral, polylog_moment,
    stirling_kernel_integral, zeta_kernel_integral,
};

/// Kernels whose summand carries at most one power of `ln n`.
const LINEAR_KERNEL_TOL: f64 = 1e-8;

pub(crate) const KS: [i64; 5] = [1, 2, 3, 5, 10];
const MS: [i64; 3] = [1, 2, 3];

/// `(m, k, r)` points: every `k`, and `r ∈ {r_min, 1, k−1}` below `k`.
fn mkr_grid(ms: &[i64], r_min: i64) -> Vec<Params> {
    let mut out = Vec::new();
    for &m in ms {
        for &k in &KS {
            let mut rs: Vec<i64> = vec![r_min, 1, k - 1];
            rs.retain(|&r| r >= r_min && r < k);
            rs.dedup();
            rs.sort_unstable();
            rs.dedup();
            for r in rs {
                out.push(Params::new().with_int("m", m).with_int("k", k).with_int("r", r));
            }
        }
    }
    out
}

fn rename(grid: Vec<Params>, from: &str, to: &str) -> Vec<Params> {
    grid.into_iter()
        .map(|p| {
            let mut q = Params::new();
            for name in p.names() {
                q.set(if name == from { to } else { name }, p.rat(name));
            }
            q
        })
        .collect()
}

fn halves() -> Vec<ExactRational> {
    vec![rational(1, 2), rational(-1, 2)]
}

fn open_unit(p: &Params) -> bool {
    let x = p.rat("x");
    x < rational(1, 1) && x > rational(-1, 1)
}

fn below_one(p: &Params) -> bool {
    p.rat("x") < rational(1, 1)
}

/// `Σ_{j=1}^{m−1} (−1)^{j−1} c(m+1−j) f(j)`
fn zeta_ladder(m: i64, c: fn(u32) -> Result<R>, f: impl Fn(i64) -> f64) -> Result<R> {
    fin_r(1, m - 1, |j| Ok(c((m + 1 - j) as u32)? * (sgn(j - 1) * f(j))))
}

fn mk(p: &Params) -> (i64, i64) {
    (p.int("m"), p.int("k"))
}

pub(crate) fn records() -> Vec<IdentityRecord> {
    let k_dom = || Domain::new().int("k", 1);
    let k_grid = || int_grid(&[("k", &KS)]);
    let mk_dom = || Domain::new().int("m", 1).int("k", 1);
    let mk_grid = || int_grid(&[("m", &MS), ("k", &KS)]);
    let mkr_dom = |r_min: i64| Domain::new().int("m", 1).int("k", 1).int("r", r_min).less("r", "k");
    let mx_dom = || Domain::new().int("m", 1).unit("x").custom("|x| < 1", open_unit);
    let mx_grid = || rational_grid(int_grid(&[("m", &MS)]), &[("x", &halves())]);

    vec![
        IdentityRecord::new(
            "eq-1.2",
            "Σ H_n²/(n(n+k)) = (1/k){3ζ(3) + (H_k³+3H_kζ_k(2)+2ζ_k(3))/3 − (H_k²+ζ_k(2))/k − Σ_{i<k} H_i/i² + ζ(2)H_{k−1}}",
            Family::Kernel,
            k_dom(),
            k_grid(),
            |ctx, p| ctx.sum(kern(0, p.u("k")).h(2)),
            |_, p| {
                let k = p.int("k");
                let (h, z2, z3) = (hk(k), zk(k, 2), zk(k, 3));
                let finite = (h.powi(3) + 3.0 * h * z2 + 2.0 * z3) / 3.0 - (h * h + z2) / k as f64
                    - fin(1, k - 1, |i| hk(i) / ipow(i, 2));
                Ok((zeta(3)? * 3.0 + zeta(2)? * hk(k - 1) + finite) / k as f64)
            },
        ),
        IdentityRecord::new(
            "eq-2.1",
            "Σ ζ_n(m)/(n(n+k)) = (1/k){ζ(m+1) + Σ_{j<m} (−1)^{j−1}ζ(m+1−j)ζ_{k−1}(j) + (−1)^{m−1} Σ_{i<k} H_i/i^m}",
            Family::Kernel,
            mk_dom(),
            mk_grid(),
            |ctx, p| ctx.sum(kern(0, p.u("k")).z(p.u("m"))),
            |_, p| {
                let (m, k) = mk(p);
                let ladder = zeta_ladder(m, zeta, |j| zk(k - 1, j as u32))?;
                let tail = sgn(m - 1) * fin(1, k - 1, |i| hk(i) / ipow(i, m as u32));
                Ok((zeta(m as u32 + 1)? + ladder + tail) / k as f64)
            },
        )
        .tol(LINEAR_KERNEL_TOL),
        IdentityRecord::new(
            "eq-2.2",
            "Σ L_n(m)/(n(n+k)) = (1/k){ζ̄(m+1) + Σ_{j<m} (−1)^{j−1}ζ̄(m+1−j)ζ_{k−1}(j) + (−1)^{m−1}ln2(ζ_{k−1}(m)+L_{k−1}(m)) + (−1)^m Σ_{i<k} (−1)^{i−1}L_i(1)/i^m}",
            Family::Kernel,
            mk_dom(),
            mk_grid(),
            |ctx, p| ctx.sum(kern(0, p.u("k")).l(p.u("m"))),
            |_, p| {
                let (m, k) = mk(p);
                let mu = m as u32;
                let ladder = zeta_ladder(m, zbar, |j| zk(k - 1, j as u32))?;
                let log_part = ln2() * (sgn(m - 1) * (zk(k - 1, mu) + lk(k - 1, mu)));
                let tail = sgn(m) * fin(1, k - 1, |i| sgn(i - 1) * lk(i, 1) / ipow(i, mu));
                Ok((zbar(mu + 1)? + ladder + log_part + tail) / k as f64)
            },
        )
        .tol(LINEAR_KERNEL_TOL),
        IdentityRecord::new(
            "eq-2.3",
            "Li_m(x)/(1−x) = Σ ζ_n(m) x^n, |x| < 1",
            Family::Geometric,
            mx_dom(),
            mx_grid(),
            |_, p| {
                let x = p.rat("x");
                Ok(li(p.u("m"), &x)? / (1.0 - to_f64(&x)))
            },
            |ctx, p| ctx.sum(pw(0).z(p.u("m")).geo(&p.rat("x"))),
        ),
        IdentityRecord::new(
            "eq-2.4",
            "−Li_m(−x)/(1−x) = Σ L_n(m) x^n, |x| < 1",
            Family::Geometric,
            mx_dom(),
            mx_grid(),
            |_, p| {
                let x = p.rat("x");
                Ok(-li(p.u("m"), &-x.clone())? / (1.0 - to_f64(&x)))
            },
            |ctx, p| ctx.sum(pw(0).l(p.u("m")).geo(&p.rat("x"))),
        ),
        IdentityRecord::new(
            "eq-2.5",
            "∫₀¹ (x^{r−1} − x^{k−1}) Li_m(x)/(1−x) dx = (k−r) Σ ζ_n(m)/((n+r)(n+k)), 0 ≤ r < k",
            Family::Kernel,
            mkr_dom(0),
            mkr_grid(&MS, 0),
            |_, p| zeta_kernel_integral(p.u("m"), p.u("r"), p.u("k")),
            |ctx, p| {
                let (r, k) = (p.u("r"), p.u("k"));
                Ok(ctx.sum(kern(r, k).z(p.u("m")))? * (k - r) as f64)
            },
        )
        .tol(LINEAR_KERNEL_TOL),
        IdentityRecord::new(
            "eq-2.6",
            "∫₀¹ (x^{k−1} − x^{r−1}) Li_m(−x)/(1−x) dx = (k−r) Σ L_n(m)/((n+r)(n+k)), 0 ≤ r < k",
            Family::Kernel,
            mkr_dom(0),
            mkr_grid(&MS, 0),
            |_, p| alt_kernel_integral(p.u("m"), p.u("r"), p.u("k")),
            |ctx, p| {
                let (r, k) = (p.u("r"), p.u("k"));
                Ok(ctx.sum(kern(r, k).l(p.u("m")))? * (k - r) as f64)
            },
        )
        .tol(LINEAR_KERNEL_TOL),
        IdentityRecord::new(
            "eq-2.7",
            "∫₀¹ (x^{r−1} − x^{k−1}) Li_m(x)/(1−x) dx = Σ_{i=1}^{k−r} ∫₀¹ x^{r+i−2} Li_m(x) dx",
            Family::Quadrature,
            mkr_dom(0),
            mkr_grid(&MS, 0),
            |_, p| zeta_kernel_integral(p.u("m"), p.u("r"), p.u("k")),
            |_, p| {
                let (m, r, k) = (p.u("m"), p.int("r"), p.int("k"));
                fin_r(1, k - r, |i| polylog_moment((r + i - 1) as u32, m, 1.0))
            },
        ),
        IdentityRecord::new(
            "eq-2.8",
            "∫₀¹ (x^{k−1} − x^{r−1}) Li_m(−x)/(1−x) dx = Σ_{i=1}^{k−r} (−1)^{r+i} ∫₀^{−1} x^{r+i−2} Li_m(x) dx",
            Family::Quadrature,
            mkr_dom(0),
            mkr_grid(&MS, 0),
            |_, p| alt_kernel_integral(p.u("m"), p.u("r"), p.u("k")),
            |_, p| {
                let (m, r, k) = (p.u("m"), p.int("r"), p.int("k"));
                fin_r(1, k - r, |i| Ok(polylog_moment((r + i - 1) as u32, m, -1.0)? * sgn(r + i)))
            },
        ),
        IdentityRecord::new(
            "eq-2.9",
            "∫₀^x t^{n−1} Li_q(t) dt = Σ_{i<q} (−1)^{i−1} x^n/n^i Li_{q+1−i}(x) + (−1)^q/n^q ln(1−x)(x^n − 1) − (−1)^q/n^q Σ_{k≤n} x^k/k",
            Family::Quadrature,
            Domain::new().int("n", 1).int("q", 1).unit("x").custom("x < 1", below_one),
            rational_grid(
                int_grid(&[("n", &[1, 2, 3]), ("q", &[1, 2, 3])]),
                &[("x", &[rational(1, 2), rational(-1, 2), rational(-1, 1)])],
            ),
            |_, p| polylog_moment(p.u("n"), p.u("q"), p.real("x")),
            |_, p| {
                let (n, q, xr) = (p.int("n"), p.int("q"), p.rat("x"));
                let x = to_f64(&xr);
                let xn = x.powi(n as i32);
                let ladder = fin_r(1, q - 1, |i| {
                    Ok(li((q + 1 - i) as u32, &xr)? * (sgn(i - 1) * xn / ipow(n, i as u32)))
                })?;
                let c0 = sgn(q) / ipow(n, q as u32);
                let rest = c0 * (-x).ln_1p() * (xn - 1.0) - c0 * fin(1, n, |k| x.powi(k as i32) / k as f64);
                Ok(ladder + rest)
            },
        ),
        IdentityRecord::new(
            "eq-2.10",
            "Σ ζ_n(m)/((n+r)(n+k)) = 1/(k−r){Σ_{j<m} (−1)^{j−1}ζ(m+1−j)(ζ_{k−1}(j) − ζ_{r−1}(j)) + (−1)^{m−1}(Σ_{i<k} − Σ_{i<r}) H_i/i^m}, 1 ≤ r < k",
            Family::Kernel,
            mkr_dom(1),
            mkr_grid(&MS, 1),
            |ctx, p| ctx.sum(kern(p.u("r"), p.u("k")).z(p.u("m"))),
            |_, p| {
                let (m, k, r) = (p.int("m"), p.int("k"), p.int("r"));
                let ladder = zeta_ladder(m, zeta, |j| zk(k - 1, j as u32) - zk(r - 1, j as u32))?;
                let tail = sgn(m - 1) * fin(r, k - 1, |i| hk(i) / ipow(i, m as u32));
                Ok((ladder + tail) / (k - r) as f64)
            },
        )
        .tol(LINEAR_KERNEL_TOL),
        IdentityRecord::new(
            "eq-2.11",
            "Σ L_n(m)/((n+r)(n+k)) = 1/(k−r){Σ_{j<m} (−1)^{j−1}ζ̄(m+1−j)(ζ_{k−1}(j) − ζ_{r−1}(j)) + (−1)^{m−1}ln2(ζ_{k−1}(m) − ζ_{r−1}(m) + L_{k−1}(m) − L_{r−1}(m)) + (−1)^m Σ_{i=r}^{k−1} (−1)^{i−1}L_i(1)/i^m}, 1 ≤ r < k",
            Family::Kernel,
            mkr_dom(1),
            mkr_grid(&MS, 1),
            |ctx, p| ctx.sum(kern(p.u("r"), p.u("k")).l(p.u("m"))),
            |_, p| {
                let (m, k, r) = (p.int("m"), p.int("k"), p.int("r"));
                let mu = m as u32;
                let ladder = zeta_ladder(m, zbar, |j| zk(k - 1, j as u32) - zk(r - 1, j as u32))?;
                let log_part = ln2()
                    * (sgn(m - 1) * (zk(k - 1, mu) - zk(r - 1, mu) + lk(k - 1, mu) - lk(r - 1, mu)));
                let tail = sgn(m) * fin(r, k - 1, |i| sgn(i - 1) * lk(i, 1) / ipow(i, mu));
                Ok((ladder + log_part + tail) / (k - r) as f64)
            },
        )
        .tol(LINEAR_KERNEL_TOL),
        IdentityRecord::new(
            "eq-2.12",
            "Σ H_n/(n(n+k)) = (1/k)(H_k²/2 + ζ_k(2)/2 + ζ(2) − H_k/k)",
            Family::Kernel,
            k_dom(),
            k_grid(),
            |ctx, p| ctx.sum(kern(0, p.u("k")).h(1)),
            |_, p| {
                let k = p.int("k");
                let kf = k as f64;
                Ok((zeta(2)? + (0.5 * hk(k).powi(2) + 0.5 * zk(k, 2) - hk(k) / kf)) / kf)
            },
        )
        .tol(LINEAR_KERNEL_TOL),
        IdentityRecord::new(
            "eq-2.13",
            "Σ L_n(1)/(n(n+k)) = (1/k){ζ̄(2) + ln2(H_k + L_k(1)) − ln2(1 + (−1)^{k−1})/k − (L_k(1)² + ζ_k(2))/2 + (−1)^{k−1}L_k(1)/k}",
            Family::Kernel,
            k_dom(),
            k_grid(),
            |ctx, p| ctx.sum(kern(0, p.u("k")).l(1)),
            |_, p| {
                let k = p.int("k");
                let kf = k as f64;
                let l1 = lk(k, 1);
                let log_part = ln2() * (hk(k) + l1 - (1.0 + sgn(k - 1)) / kf);
                let finite = -0.5 * (l1 * l1 + zk(k, 2)) + sgn(k - 1) * l1 / kf;
                Ok((zbar(2)? + log_part + finite) / kf)
            },
        )
        .tol(LINEAR_KERNEL_TOL),
        IdentityRecord::new(
            "eq-2.14",
            "∫₀¹ t^{n−1} ln^k(1−t) dt = (−1)^k Y_k(n)/n",
            Family::Quadrature,
            Domain::new().int("n", 1).int("k", 0),
            int_grid(&[("n", &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10]), ("k", &[1, 2, 3, 4])]),
            |_, p| log_moment(p.u("n"), p.u("k")),
            |_, p| {
                let (n, k) = (p.int("n"), p.u("k"));
                Ok(c(sgn(k as i64) * yk(k, n) / n as f64))
            },
        ),
        IdentityRecord::new(
            "eq-2.17",
            "∫₀¹ t^{n−1} ln(1−t) dt = −H_n/n",
            Family::Quadrature,
            Domain::new().int("n", 1),
            int_grid(&[("n", &KS)]),
            |_, p| log_moment(p.u("n"), 1),
            |_, p| {
                let n = p.int("n");
                Ok(c(-hk(n) / n as f64))
            },
        ),
        IdentityRecord::new(
            "eq-2.18",
            "∫₀^x t^{n−1} ln²(1−t) dt = (x^n−1)ln²(1−x)/n − (2/n) Σ_{k≤n} (1/k){x^k ln(1−x) − Σ_{j≤k} x^j/j − ln(1−x)}",
            Family::Quadrature,
            Domain::new().int("n", 1).unit("x").custom("x < 1", below_one),
            rational_grid(
                int_grid(&[("n", &[1, 2, 3, 5])]),
                &[("x", &[rational(1, 2), rational(-1, 2), rational(-1, 1)])],
            ),
            |_, p| log_moment_to(p.u("n"), 2, p.real("x")),
            |_, p| {
                let (n, x) = (p.int("n"), p.real("x"));
                let nf = n as f64;
                let lg = (-x).ln_1p();
                let inner = fin(1, n, |k| {
                    (x.powi(k as i32) * lg - fin(1, k, |j| x.powi(j as i32) / j as f64) - lg) / k as f64
                });
                Ok(c((x.powi(n as i32) - 1.0) * lg * lg / nf - 2.0 / nf * inner))
            },
        ),
        IdentityRecord::new(
            "eq-2.19",
            "∫₀¹ t^{n−1} ln²(1−t) dt = (2/n) Σ_{k≤n} (1/k) Σ_{j≤k} 1/j",
            Family::Quadrature,
            Domain::new().int("n", 1),
            int_grid(&[("n", &KS)]),
            |_, p| log_moment(p.u("n"), 2),
            |_, p| {
                let n = p.int("n");
                Ok(c(2.0 / n as f64 * fin(1, n, |k| hk(k) / k as f64)))
            },
        ),
        IdentityRecord::new(
            "eq-2.20",
            "∫₀¹ t^{n−1} ln^m(1−t) dt = m!(−1)^m/n Σ_{k1≤n} 1/k1 Σ_{k2≤k1} 1/k2 ⋯ Σ_{km≤k(m−1)} 1/km",
            Family::Quadrature,
            Domain::new().int("n", 1).int("m", 1),
            int_grid(&[("n", &KS), ("m", &[1, 2, 3, 4])]),
            |_, p| log_moment(p.u("n"), p.u("m")),
            |_, p| {
                let (n, m) = (p.int("n"), p.u("m"));
                let nested = to_f64(&iterated_harmonic(n as u64, m));
                Ok(c(fact(m) * sgn(m as i64) / n as f64 * nested))
            },
        ),
        IdentityRecord::new(
            "eq-2.21",
            "(p−1)! Σ S(n+1,p)/(n!·n(n+k)) = (1/k){(p−1)!ζ(p) + Y_p(k)/p − Y_{p−1}(k)/k}",
            Family::Kernel,
            Domain::new().int("p", 2).int("k", 1),
            int_grid(&[("p", &[2, 3, 4]), ("k", &KS)]),
            |ctx, p| {
                let pp = p.u("p");
                Ok(ctx.sum(kern(0, p.u("k")).w(pp))? * fact(pp - 1))
            },
            |_, p| {
                let (pp, k) = (p.u("p"), p.int("k"));
                let kf = k as f64;
                let finite = yk(pp, k) / pp as f64 - yk(pp - 1, k) / kf;
                Ok((zeta(pp)? * fact(pp - 1) + finite) / kf)
            },
        ),
        IdentityRecord::new(
            "eq-2.22",
            "ln^p(1−x) = (−1)^p p! Σ_{n≥p} S(n,p) x^n/n!",
            Family::Geometric,
            Domain::new().int("p", 1).unit("x").custom("|x| < 1", open_unit),
            rational_grid(int_grid(&[("p", &[1, 2, 3])]), &[("x", &halves())]),
            |_, p| Ok(c((-p.real("x")).ln_1p().powi(p.int("p") as i32))),
            |ctx, p| {
                // S(n,p)/n! = w_p(n−1)/n; the n = 1 term is [p = 1]·x.
                let (pp, x) = (p.u("p"), p.rat("x"));
                let head = if pp == 1 { 1.0 } else { 0.0 };
                let series = ctx.sum(shift(1, 0).w(pp).geo(&x))? + head;
                Ok(series * (sgn(pp as i64) * fact(pp) * to_f64(&x)))
            },
        ),
        IdentityRecord::new(
            "eq-2.23",
            "ln^{p−1}(1−x)/(1−x) = (−1)^{p−1}(p−1)! Σ_{n≥p−1} S(n+1,p) x^n/n!",
            Family::Geometric,
            Domain::new().int("p", 2).unit("x").custom("|x| < 1", open_unit),
            rational_grid(int_grid(&[("p", &[2, 3, 4])]), &[("x", &halves())]),
            |_, p| {
                let x = p.real("x");
                Ok(c((-x).ln_1p().powi(p.int("p") as i32 - 1) / (1.0 - x)))
            },
            |ctx, p| {
                let pp = p.u("p");
                Ok(ctx.sum(pw(0).w(pp).geo(&p.rat("x")))? * (sgn(pp as i64 - 1) * fact(pp - 1)))
            },
        ),
        IdentityRecord::new(
            "eq-2.24",
            "∫₀¹ ln^{p−1}(1−x)/(1−x)·(x^{r−1} − x^{k−1}) dx = (−1)^{p−1}(p−1)!(k−r) Σ S(n+1,p)/(n!(n+r)(n+k)), 0 ≤ r < k",
            Family::Kernel,
            Domain::new().int("p", 2).int("k", 1).int("r", 0).less("r", "k"),
            rename(mkr_grid(&[2, 3], 0), "m", "p"),
            |_, p| stirling_kernel_integral(p.u("p"), p.u("r"), p.u("k")),
            |ctx, p| {
                let (pp, r, k) = (p.u("p"), p.u("r"), p.u("k"));
                let scale = sgn(pp as i64 - 1) * fact(pp - 1) * (k - r) as f64;
                Ok(ctx.sum(kern(r, k).w(pp))? * scale)
            },
        ),
        IdentityRecord::new(
            "eq-2.25",
            "∫₀¹ ln^{p−1}(1−x)/(1−x)·(x^{r−1} − x^{k−1}) dx = Σ_{i=1}^{k−r} ∫₀¹ x^{r+i−2} ln^{p−1}(1−x) dx",
            Family::Quadrature,
            Domain::new().int("p", 2).int("k", 1).int("r", 0).less("r", "k"),
            rename(mkr_grid(&[2, 3], 0), "m", "p"),
            |_, p| stirling_kernel_integral(p.u("p"), p.u("r"), p.u("k")),
            |_, p| {
                let (pp, r, k) = (p.u("p"), p.int("r"), p.int("k"));
                fin_r(1, k - r, |i| log_moment((r + i - 1) as u32, pp - 1))
            },
        ),
        IdentityRecord::new(
            "eq-2.26",
            "∫₀¹ ln^{p−1}(1−x)/x dx = (−1)^{p−1}(p−1)! ζ(p)",
            Family::Quadrature,
            Domain::new().int("p", 2),
            int_grid(&[("p", &[2, 3, 4, 5])]),
            |_, p| log_over_x_integral(p.u("p")),
            |_, p| {
                let pp = p.u("p");
                Ok(zeta(pp)? * (sgn(pp as i64 - 1) * fact(pp - 1)))
            },
        ),
        IdentityRecord::new(
            "eq-2.27",
            "(p−1)!(k−r) Σ S(n+1,p)/(n!(n+r)(n+k)) = (Y_p(k−1) − Y_p(r−1))/p, 1 ≤ r < k",
            Family::Kernel,
            Domain::new().int("p", 2).int("k", 1).int("r", 1).less("r", "k"),
            rename(mkr_grid(&[2, 3, 4], 1), "m", "p"),
            |ctx, p| {
                let (pp, r, k) = (p.u("p"), p.u("r"), p.u("k"));
                Ok(ctx.sum(kern(r, k).w(pp))? * (fact(pp - 1) * (k - r) as f64))
            },
            |_, p| {
                let (pp, r, k) = (p.u("p"), p.int("r"), p.int("k"));
                Ok(c((yk(pp, k - 1) - yk(pp, r - 1)) / pp as f64))
            },
        ),
        IdentityRecord::new(
            "eq-2.28",
            "Σ (H_n² − ζ_n(2))/(n(n+k)) = (1/k){2ζ(3) + (H_k³+3H_kζ_k(2)+2ζ_k(3))/3 − (H_k²+ζ_k(2))/k}",
            Family::Kernel,
            k_dom(),
            k_grid(),
            |ctx, p| {
                let k = p.u("k");
                Ok(ctx.sum(kern(0, k).h(2))? - ctx.sum(kern(0, k).z(2))?)
            },
            |_, p| {
                let k = p.int("k");
                let kf = k as f64;
                let (h, z2, z3) = (hk(k), zk(k, 2), zk(k, 3));
                let finite = (h.powi(3) + 3.0 * h * z2 + 2.0 * z3) / 3.0 - (h * h + z2) / kf;
                Ok((zeta(3)? * 2.0 + finite) / kf)
            },
        ),
        IdentityRecord::new(
            "eq-2.29",
            "Σ (H_n³ − 3H_nζ_n(2) + 2ζ_n(3))/(n(n+k)) = (1/k){(H_k⁴+8H_kζ_k(3)+6H_k²ζ_k(2)+3ζ_k(2)²+6ζ_k(4))/4 − (H_k³+3H_kζ_k(2)+2ζ_k(3))/k + 6ζ(4)}",
            Family::Kernel,
            k_dom(),
            k_grid(),
            |ctx, p| {
                let k = p.u("k");
                Ok(ctx.sum(kern(0, k).h(3))? - ctx.sum(kern(0, k).h(1).z(2))? * 3.0
                    + ctx.sum(kern(0, k).z(3))? * 2.0)
            },
            |_, p| {
                let k = p.int("k");
                let kf = k as f64;
                let (h, z2, z3, z4) = (hk(k), zk(k, 2), zk(k, 3), zk(k, 4));
                let y4 = h.powi(4) + 8.0 * h * z3 + 6.0 * h * h * z2 + 3.0 * z2 * z2 + 6.0 * z4;
                let y3 = h.powi(3) + 3.0 * h * z2 + 2.0 * z3;
                Ok((zeta(4)? * 6.0 + (y4 / 4.0 - y3 / kf)) / kf)
            },
        ),
        IdentityRecord::new(
            "eq-2.30",
            "Σ ζ_n(2)/(n(n+k)) = (1/k){ζ(3) + ζ(2)H_{k−1} − Σ_{i<k} H_i/i²}",
            Family::Kernel,
            k_dom(),
            k_grid(),
            |ctx, p| ctx.sum(kern(0, p.u("k")).z(2)),
            |_, p| {
                let k = p.int("k");
                let finite = -fin(1, k - 1, |i| hk(i) / ipow(i, 2));
                Ok((zeta(3)? + zeta(2)? * hk(k - 1) + finite) / k as f64)
            },
        )
        .tol(LINEAR_KERNEL_TOL),
        IdentityRecord::new(
            "eq-2.31",
            "Σ ζ_n(m)(−1)^{n−1}/(n+k) = (−1)^k(Σ ζ_n(m)(−1)^{n−1}/n − ζ̄(m+1)) + (−1)^{k+m+1}ln2(ζ_{k−1}(m) + L_{k−1}(m)) + (−1)^k Σ_{j<m} (−1)^{j−1}ζ̄(m+1−j)L_{k−1}(j) + (−1)^{m+k} Σ_{i<k} L_i(1)/i^m",
            Family::Alternating,
            mk_dom(),
            mk_grid(),
            |ctx, p| ctx.sum(shift(p.u("k"), 0).z(p.u("m")).alt()),
            |ctx, p| {
                let (m, k) = mk(p);
                let mu = m as u32;
                let head = (ctx.sum(pw(1).z(mu).alt())? - zbar(mu + 1)?) * sgn(k);
                let log_part = ln2() * (sgn(k + m + 1) * (zk(k - 1, mu) + lk(k - 1, mu)));
                let ladder = zeta_ladder(m, zbar, |j| lk(k - 1, j as u32))? * sgn(k);
                let tail = sgn(m + k) * fin(1, k - 1, |i| lk(i, 1) / ipow(i, mu));
                Ok(head + log_part + ladder + tail)
            },
        ),
        IdentityRecord::new(
            "eq-2.32",
            "Σ L_n(m)(−1)^{n−1}/(n+k) = (−1)^{k−1}(ζ(m+1) − Σ L_n(m)(−1)^{n−1}/n + (−1)^m Σ_{i<k} H_i(−1)^{i−1}/i^m) + (−1)^k Σ_{j<m} (−1)^{j−1}ζ(m+1−j)L_{k−1}(j)",
            Family::Alternating,
            mk_dom(),
            mk_grid(),
            |ctx, p| ctx.sum(shift(p.u("k"), 0).l(p.u("m")).alt()),
            |ctx, p| {
                let (m, k) = mk(p);
                let mu = m as u32;
                let finite = sgn(m) * fin(1, k - 1, |i| hk(i) * sgn(i - 1) / ipow(i, mu));
                let head = (zeta(mu + 1)? - ctx.sum(pw(1).l(mu).alt())? + finite) * sgn(k - 1);
                let ladder = zeta_ladder(m, zeta, |j| lk(k - 1, j as u32))? * sgn(k);
                Ok(head + ladder)
            },
        ),
        IdentityRecord::new(
            "eq-2.33",
            "Σ H_n(−1)^{n−1}/(n+k) = (−1)^{k−1}(ln²2/2 − ln2(H_{k−1} + L_{k−1}(1)) + Σ_{i<k} L_i(1)/i)",
            Family::Alternating,
            k_dom(),
            k_grid(),
            |ctx, p| ctx.sum(shift(p.u("k"), 0).h(1).alt()),
            |_, p| {
                let k = p.int("k");
                let l = ln2();
                let body = l * l * 0.5 - l * (hk(k - 1) + lk(k - 1, 1)) + fin(1, k - 1, |i| lk(i, 1) / i as f64);
                Ok(body * sgn(k - 1))
            },
        ),
        IdentityRecord::new(
            "eq-2.34",
            "Σ L_n(1)(−1)^{n−1}/(n+k) = (−1)^{k−1}((ζ(2) − ln²2)/2 − Σ_{i<k} H_i(−1)^{i−1}/i)",
            Family::Alternating,
            k_dom(),
            k_grid(),
            |ctx, p| ctx.sum(shift(p.u("k"), 0).l(1).alt()),
            |_, p| {
                let k = p.int("k");
                let l = ln2();
                let body = (zeta(2)? - l * l) * 0.5 - fin(1, k - 1, |i| hk(i) * sgn(i - 1) / i as f64);
                Ok(body * sgn(k - 1))
            },
        ),
    ]
}
