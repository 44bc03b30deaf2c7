//! Relations among products of partial polylogarithms and their limits.

use num_traits::One;

use super::domain::Domain;
use super::helpers::*;
use super::params::{int_grid, rational_grid, Params};
use super::{Family, IdentityRecord};
use crate::combinatorics::{rational, ExactRational};
use crate::error::Result;

fn halves() -> Vec<ExactRational> {
    vec![rational(1, 2), rational(-1, 2)]
}

fn is_one(v: &ExactRational) -> bool {
    v.is_one()
}

/// An argument equal to 1 needs order ≥ 2 for its polylogarithm to converge.
fn triple_converges(p: &Params) -> bool {
    [("x", "l1"), ("y", "l2"), ("z", "m")]
        .iter()
        .all(|(a, o)| !is_one(&p.rat(a)) || p.int(o) >= 2)
}

fn corners(l: i64, z: i64, ms: &[i64]) -> Vec<Params> {
    ms.iter()
        .map(|&m| {
            Params::new()
                .with_int("l1", l)
                .with_int("l2", l)
                .with_int("m", m)
                .with("x", rational(-1, 1))
                .with("y", rational(-1, 1))
                .with("z", rational(z, 1))
        })
        .collect()
}

struct Triple {
    l1: u32,
    l2: u32,
    m: u32,
    x: ExactRational,
    y: ExactRational,
    z: ExactRational,
}

impl Triple {
    fn of(p: &Params) -> Self {
        Self {
            l1: p.u("l1"),
            l2: p.u("l2"),
            m: p.u("m"),
            x: p.rat("x"),
            y: p.rat("y"),
            z: p.rat("z"),
        }
    }
}

fn lhs_2_35(ctx: &Ctx, p: &Params) -> Result<R> {
    let t = Triple::of(p);
    let a = ctx.sum(pw(t.m).pp(t.l1, &t.x).pp(t.l2, &t.y).geo(&t.z))?;
    let b = ctx.sum(pw(t.l2).pp(t.l1, &t.x).pp(t.m, &t.z).geo(&t.y))?;
    let c = ctx.sum(pw(t.l1).pp(t.l2, &t.y).pp(t.m, &t.z).geo(&t.x))?;
    Ok(a + b + c)
}

fn rhs_2_35(ctx: &Ctx, p: &Params) -> Result<R> {
    let t = Triple::of(p);
    let a = ctx.sum(pw(t.l1 + t.l2).pp(t.m, &t.z).geo(&(&t.x * &t.y)))?;
    let b = ctx.sum(pw(t.m + t.l2).pp(t.l1, &t.x).geo(&(&t.y * &t.z)))?;
    let c = ctx.sum(pw(t.l1 + t.m).pp(t.l2, &t.y).geo(&(&t.x * &t.z)))?;
    let product = li(t.m, &t.z)? * li(t.l1, &t.x)? * li(t.l2, &t.y)?;
    let corner = li(t.l1 + t.l2 + t.m, &(&t.x * &t.y * &t.z))?;
    Ok(a + b + c + product - corner)
}

/// Left side of the `(1−z)^{-1}`-integrated relation; `second` is the
/// argument of the second partial polylogarithm in the first sum (`y` as the
/// relation is derived, `x` as it is sometimes printed).
pub(crate) fn lhs_2_40_with(ctx: &Ctx, p: &Params, second: &ExactRational) -> Result<R> {
    let t = Triple::of(p);
    let a = ctx.sum(pw(t.m).pp(t.l1, &t.x).pp(t.l2, second).pp(1, &t.z))?;
    let b = ctx.sum(pw(t.l2).pp(t.l1, &t.x).np(t.m, &t.z).geo(&t.y))?;
    let c = ctx.sum(pw(t.l1).pp(t.l2, &t.y).np(t.m, &t.z).geo(&t.x))?;
    Ok(a + b + c)
}

fn rhs_2_40(ctx: &Ctx, p: &Params) -> Result<R> {
    let t = Triple::of(p);
    let xy = &t.x * &t.y;
    let a = ctx.sum(pw(t.l1 + t.l2).np(t.m, &t.z).geo(&xy))?;
    let b = ctx.sum(pw(t.m + t.l2).pp(t.l1, &t.x).pp(1, &t.z).geo(&t.y))?;
    let c = ctx.sum(pw(t.m + t.l1).pp(t.l2, &t.y).pp(1, &t.z).geo(&t.x))?;
    let product = li(t.l1, &t.x)? * li(t.l2, &t.y)? * ctx.sum(pw(t.m).pp(1, &t.z))?;
    let corner = ctx.sum(pw(t.m + t.l1 + t.l2).pp(1, &t.z).geo(&xy))?;
    Ok(a + b + c + product - corner)
}

/// `Σ H_n ζ_n(a) / n^q`
fn s1(ctx: &Ctx, a: u32, q: u32) -> Result<R> {
    ctx.sum(pw(q).h(1).z(a))
}

fn lmq(p: &Params) -> (u32, u32, u32) {
    (p.u("l1"), p.u("l2"), p.u("m"))
}

fn lhs_2_41(ctx: &Ctx, p: &Params) -> Result<R> {
    let (l1, l2, m) = lmq(p);
    Ok(ctx.sum(pw(m).h(1).z(l1).z(l2))?
        + ctx.sum(pw(l2).z(l1).nh(m))?
        + ctx.sum(pw(l1).z(l2).nh(m))?)
}

pub(crate) fn records() -> Vec<IdentityRecord> {
    let triple_domain = |m_min: i64| {
        Domain::new()
            .int("l1", 1)
            .int("l2", 1)
            .int("m", m_min)
            .unit("x")
            .unit("y")
            .unit("z")
            .custom("order ≥ 2 wherever the matching argument is 1", triple_converges)
    };
    let mut grid_2_35 = rational_grid(
        int_grid(&[("l1", &[1, 2]), ("l2", &[1, 2]), ("m", &[1, 2])]),
        &[("x", &halves()), ("y", &halves()), ("z", &halves())],
    );
    grid_2_35.extend(corners(1, 1, &[2, 3]));
    grid_2_35.extend(corners(1, -1, &[1, 2]));

    let mut grid_2_40 = rational_grid(
        int_grid(&[("l1", &[1, 2]), ("l2", &[1, 2]), ("m", &[2, 3])]),
        &[("x", &halves()), ("y", &halves()), ("z", &halves())],
    );
    grid_2_40.extend(corners(1, 1, &[2]));
    grid_2_40.extend(corners(1, -1, &[2]));

    let lmq_domain = || Domain::new().int("l1", 2).int("l2", 2).int("m", 2);
    let lmq_grid = || int_grid(&[("l1", &[2, 3]), ("l2", &[2, 3]), ("m", &[2, 3])]);

    vec![
        IdentityRecord::new(
            "eq-2.35",
            "Σ ζ_n(l1,x)ζ_n(l2,y)z^n/n^m + Σ ζ_n(l1,x)ζ_n(m,z)y^n/n^{l2} + Σ ζ_n(l2,y)ζ_n(m,z)x^n/n^{l1} = Σ ζ_n(m,z)(xy)^n/n^{l1+l2} + Σ ζ_n(l1,x)(yz)^n/n^{m+l2} + Σ ζ_n(l2,y)(xz)^n/n^{l1+m} + Li_m(z)Li_{l1}(x)Li_{l2}(y) − Li_{l1+l2+m}(xyz)",
            Family::Geometric,
            triple_domain(1),
            grid_2_35,
            lhs_2_35,
            rhs_2_35,
        ),
        IdentityRecord::new(
            "eq-2.38",
            "Σ L_n(1)²/n^m + 2 Σ L_n(1)ζ_n(m)(−1)^{n−1}/n = Σ ζ_n(m)/n² + 2 Σ L_n(1)(−1)^{n−1}/n^{m+1} + ζ(m)ln²2 − ζ(m+2), m > 1",
            Family::Alternating,
            Domain::new().int("m", 2),
            int_grid(&[("m", &[2, 3, 4])]),
            |ctx, p| {
                let m = p.u("m");
                Ok(ctx.sum(pw(m).l(1).l(1))? + ctx.sum(pw(1).l(1).z(m).alt())? * 2.0)
            },
            |ctx, p| {
                let m = p.u("m");
                let l = ln2();
                Ok(ctx.sum(pw(2).z(m))? + ctx.sum(pw(m + 1).l(1).alt())? * 2.0
                    + zeta(m)? * l * l
                    - zeta(m + 2)?)
            },
        ),
        IdentityRecord::new(
            "eq-2.39",
            "Σ L_n(1)²(−1)^{n−1}/n^m + 2 Σ L_n(1)L_n(m)(−1)^{n−1}/n = Σ L_n(m)/n² + 2 Σ L_n(1)/n^{m+1} + ζ̄(m)ln²2 − ζ̄(m+2), m > 0",
            Family::Alternating,
            Domain::new().int("m", 1),
            int_grid(&[("m", &[1, 2, 3])]),
            |ctx, p| {
                let m = p.u("m");
                Ok(ctx.sum(pw(m).l(1).l(1).alt())? + ctx.sum(pw(1).l(1).l(m).alt())? * 2.0)
            },
            |ctx, p| {
                let m = p.u("m");
                let l = ln2();
                Ok(ctx.sum(pw(2).l(m))? + ctx.sum(pw(m + 1).l(1))? * 2.0 + zbar(m)? * l * l
                    - zbar(m + 2)?)
            },
        ),
        IdentityRecord::new(
            "eq-2.40",
            "Σ ζ_n(l1,x)ζ_n(l2,y)ζ_n(1,z)/n^m + Σ ζ_n(l1,x)(Σ_{k≤n} ζ_k(1,z)/k^m)y^n/n^{l2} + Σ ζ_n(l2,y)(Σ_{k≤n} ζ_k(1,z)/k^m)x^n/n^{l1} = Σ (Σ_{k≤n} ζ_k(1,z)/k^m)(xy)^n/n^{l1+l2} + Σ ζ_n(l1,x)ζ_n(1,z)y^n/n^{m+l2} + Σ ζ_n(l2,y)ζ_n(1,z)x^n/n^{m+l1} + Li_{l1}(x)Li_{l2}(y) Σ ζ_n(1,z)/n^m − Σ ζ_n(1,z)(xy)^n/n^{m+l1+l2}, m > 1",
            Family::Cubic,
            triple_domain(2),
            grid_2_40,
            |ctx, p| lhs_2_40_with(ctx, p, &p.rat("y")),
            rhs_2_40,
        )
        .note("first sum read with ζ_n(l2, y); the ζ_n(l2, x) reading does not balance"),
        IdentityRecord::new(
            "eq-2.41",
            "Σ H_nζ_n(l1)ζ_n(l2)/n^m + Σ ζ_n(l1)(Σ_{k≤n} H_k/k^m)/n^{l2} + Σ ζ_n(l2)(Σ_{k≤n} H_k/k^m)/n^{l1} = Σ (Σ_{k≤n} H_k/k^m)/n^{l1+l2} + Σ H_nζ_n(l1)/n^{m+l2} + Σ H_nζ_n(l2)/n^{m+l1} + ζ(l1)ζ(l2) Σ H_n/n^m − Σ H_n/n^{m+l1+l2}",
            Family::Cubic,
            lmq_domain(),
            lmq_grid(),
            lhs_2_41,
            |ctx, p| {
                let (l1, l2, m) = lmq(p);
                Ok(ctx.sum(pw(l1 + l2).nh(m))? + s1(ctx, l1, m + l2)? + s1(ctx, l2, m + l1)?
                    + zeta(l1)? * zeta(l2)? * ctx.sum(pw(m).h(1))?
                    - ctx.sum(pw(m + l1 + l2).h(1))?)
            },
        )
        .note("third sum read with ζ_n(l2) (the y → 1 limit)"),
        IdentityRecord::new(
            "eq-2.42",
            "Σ (Σ_{k≤n} H_k/k^m)/n^{p+1} = Σ H_n/n^{m+p+1} + ζ(p+1) Σ H_n/n^m − Σ H_nζ_n(p+1)/n^m",
            Family::Quadratic,
            Domain::new().int("p", 1).int("m", 2),
            int_grid(&[("p", &[1, 2, 3]), ("m", &[2, 3, 4])]),
            |ctx, p| ctx.sum(pw(p.u("p") + 1).nh(p.u("m"))),
            |ctx, p| {
                let (pp, m) = (p.u("p"), p.u("m"));
                Ok(ctx.sum(pw(m + pp + 1).h(1))? + zeta(pp + 1)? * ctx.sum(pw(m).h(1))?
                    - s1(ctx, pp + 1, m)?)
            },
        ),
        IdentityRecord::new(
            "eq-2.43",
            "Σ H_nζ_n(l1)ζ_n(l2)/n^m + Σ ζ_n(l1)(Σ_{k≤n} H_k/k^m)/n^{l2} + Σ ζ_n(l2)(Σ_{k≤n} H_k/k^m)/n^{l1} = Σ {H_nζ_n(l1)/n^{m+l2} + H_nζ_n(l2)/n^{m+l1} − H_nζ_n(l1+l2)/n^m} + (ζ(l1+l2) + ζ(l1)ζ(l2)) Σ H_n/n^m",
            Family::Cubic,
            lmq_domain(),
            lmq_grid(),
            lhs_2_41,
            |ctx, p| {
                let (l1, l2, m) = lmq(p);
                Ok(s1(ctx, l1, m + l2)? + s1(ctx, l2, m + l1)? - s1(ctx, l1 + l2, m)?
                    + (zeta(l1 + l2)? + zeta(l1)? * zeta(l2)?) * ctx.sum(pw(m).h(1))?)
            },
        ),
        IdentityRecord::new(
            "eq-2.44",
            "Σ H_nζ_n(2l+1)²/n^{2l+1} + 2 Σ ζ_n(2l+1)(Σ_{k≤n} H_k/k^{2l+1})/n^{2l+1} = Σ {2H_nζ_n(2l+1)/n^{4l+2} − H_nζ_n(4l+2)/n^{2l+1}} + (ζ(4l+2) + ζ(2l+1)²) Σ H_n/n^{2l+1}",
            Family::Cubic,
            Domain::new().int("l", 1),
            int_grid(&[("l", &[1, 2, 3])]),
            |ctx, p| {
                let q = 2 * p.u("l") + 1;
                Ok(ctx.sum(pw(q).h(1).z(q).z(q))? + ctx.sum(pw(q).z(q).nh(q))? * 2.0)
            },
            |ctx, p| {
                let l = p.u("l");
                let q = 2 * l + 1;
                let z = zeta(q)?;
                Ok(s1(ctx, q, 2 * q)? * 2.0 - s1(ctx, 4 * l + 2, q)?
                    + (zeta(4 * l + 2)? + z * z) * ctx.sum(pw(q).h(1))?)
            },
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::EvalConfig;

    #[test]
    fn eq_2_40_x_reading_does_not_balance() {
        let ctx = Ctx::new(EvalConfig::new(100_000));
        let p = Params::new()
            .with_int("l1", 1)
            .with_int("l2", 2)
            .with_int("m", 2)
            .with("x", rational(1, 2))
            .with("y", rational(-1, 2))
            .with("z", rational(1, 2));
        let rhs = rhs_2_40(&ctx, &p).unwrap().value;
        let y_read = lhs_2_40_with(&ctx, &p, &p.rat("y")).unwrap().value;
        let x_read = lhs_2_40_with(&ctx, &p, &p.rat("x")).unwrap().value;
        assert!((y_read - rhs).abs() < 1e-9, "{y_read} vs {rhs}");
        assert!((x_read - rhs).abs() > 1e-3, "{x_read} vs {rhs}");
    }
}
