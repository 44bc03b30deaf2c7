//! Fixed closed forms: sums with no free parameter, compared against
//! polynomials in zeta values, `ln 2` and `Li_4(1/2)`.

use super::domain::Domain;
use super::helpers::*;
use super::params::Params;
use super::{Family, IdentityRecord};
use crate::combinatorics::rational;
use crate::error::Result;

fn li4_half() -> Result<R> {
    li(4, &rational(1, 2))
}

/// `ln^k 2`
fn lnp(k: u32) -> R {
    ln2().powi(k)
}

/// `Σ ζ_n(2)/n^6`, which has no known reduction to zeta values.
fn s26(ctx: &Ctx) -> Result<R> {
    ctx.sum(pw(6).z(2))
}

/// `Σ ζ_n(2)(−1)^{n−1}/n^4`
fn sbar24(ctx: &Ctx) -> Result<R> {
    ctx.sum(pw(4).z(2).alt())
}

fn fixed<L, Rh>(id: &'static str, statement: &'static str, family: Family, lhs: L, rhs: Rh) -> IdentityRecord
where
    L: Fn(&Ctx) -> Result<R> + Send + Sync + 'static,
    Rh: Fn(&Ctx) -> Result<R> + Send + Sync + 'static,
{
    IdentityRecord::new(
        id,
        statement,
        family,
        Domain::new(),
        vec![Params::new()],
        move |ctx, _| lhs(ctx),
        move |ctx, _| rhs(ctx),
    )
}

pub(crate) fn intro() -> Vec<IdentityRecord> {
    vec![
        fixed(
            "golden-1.Sbar103",
            "Σ H_n(−1)^{n−1}/n³ = −2Li_4(1/2) + (11/4)ζ(4) + (1/2)ζ(2)ln²2 − (1/12)ln⁴2 − (7/4)ζ(3)ln2",
            Family::Alternating,
            |ctx| ctx.sum(pw(3).h(1).alt()),
            |_| {
                Ok(li4_half()? * -2.0 + zeta(4)? * 2.75 + zeta(2)? * lnp(2) * 0.5 - lnp(4) / 12.0
                    - zeta(3)? * ln2() * 1.75)
            },
        ),
        fixed(
            "golden-1.Sbar013",
            "Σ L_n(1)(−1)^{n−1}/n³ = (3/2)ζ(4) + (1/2)ζ(2)ln²2 − (1/12)ln⁴2 − 2Li_4(1/2)",
            Family::Alternating,
            |ctx| ctx.sum(pw(3).l(1).alt()),
            |_| Ok(zeta(4)? * 1.5 + zeta(2)? * lnp(2) * 0.5 - lnp(4) / 12.0 - li4_half()? * 2.0),
        ),
    ]
}

fn s123_rhs(ctx: &Ctx) -> Result<R> {
    let z3 = zeta(3)?;
    Ok(z3 * zeta(5)? * 4.5 + zeta(2)? * z3 * z3 * 1.5 - zeta(8)? * (443.0 / 288.0)
        - s26(ctx)? * 5.75)
}

pub(crate) fn section3() -> Vec<IdentityRecord> {
    vec![
        fixed(
            "golden-3.s122",
            "Σ H_n²ζ_n(2)/n² = (41/12)ζ(6) + 2ζ(3)²",
            Family::Cubic,
            |ctx| ctx.sum(pw(2).h(2).z(2)),
            |_| {
                let z3 = zeta(3)?;
                Ok(zeta(6)? * (41.0 / 12.0) + z3 * z3 * 2.0)
            },
        )
        .quoted(),
        fixed(
            "golden-3.s123",
            "Σ H_n²ζ_n(3)/n³ = (9/2)ζ(3)ζ(5) + (3/2)ζ(2)ζ(3)² − (443/288)ζ(8) − (23/4) Σ ζ_n(2)/n⁶",
            Family::Cubic,
            |ctx| ctx.sum(pw(3).h(2).z(3)),
            s123_rhs,
        )
        .quoted(),
        fixed(
            "golden-3.s233",
            "Σ ζ_n(2)ζ_n(3)/n³ = (45/2)ζ(3)ζ(5) − (827/48)ζ(8) − (3/2)ζ(2)ζ(3)² − (23/4) Σ ζ_n(2)/n⁶",
            Family::Quadratic,
            |ctx| ctx.sum(pw(3).z(2).z(3)),
            |ctx| {
                let z3 = zeta(3)?;
                Ok(z3 * zeta(5)? * 22.5 - zeta(8)? * (827.0 / 48.0) - zeta(2)? * z3 * z3 * 1.5
                    - s26(ctx)? * 5.75)
            },
        )
        .quoted(),
    ]
}

pub(crate) fn examples() -> Vec<IdentityRecord> {
    vec![
        fixed(
            "golden-4.L1sq-n2",
            "Σ L_n(1)²(−1)^{n−1}/n² = −(41/16)ζ(4) + 2ζ(2)ln²2 + (1/6)ln⁴2 + (7/4)ζ(3)ln2 + 4Li_4(1/2)",
            Family::Alternating,
            |ctx| ctx.sum(pw(2).l(1).l(1).alt()),
            |_| {
                Ok(zeta(4)? * (-41.0 / 16.0) + zeta(2)? * lnp(2) * 2.0 + lnp(4) / 6.0
                    + zeta(3)? * ln2() * 1.75
                    + li4_half()? * 4.0)
            },
        ),
        fixed(
            "golden-4.L1sq-n3",
            "Σ L_n(1)²(−1)^{n−1}/n³ = −4Li_4(1/2)ln2 + (19/8)ζ(4)ln2 + ζ(2)ln³2 − (1/6)ln⁵2 + (3/8)ζ(2)ζ(3) − (19/32)ζ(5)",
            Family::Alternating,
            |ctx| ctx.sum(pw(3).l(1).l(1).alt()),
            |_| {
                Ok(li4_half()? * ln2() * -4.0 + zeta(4)? * ln2() * (19.0 / 8.0) + zeta(2)? * lnp(3)
                    - lnp(5) / 6.0
                    + zeta(2)? * zeta(3)? * 0.375
                    - zeta(5)? * (19.0 / 32.0))
            },
        ),
        fixed(
            "golden-4.L1sq-n4",
            "Σ L_n(1)²(−1)^{n−1}/n⁴ = (15/4)ln²2ζ(4) + (9/4)ζ(2)ζ(3)ln2 − (93/16)ζ(5)ln2 + (35/64)ζ(6) − (15/16)ζ(3)² + Σ ζ_n(2)(−1)^{n−1}/n⁴",
            Family::Alternating,
            |ctx| ctx.sum(pw(4).l(1).l(1).alt()),
            |ctx| {
                let z3 = zeta(3)?;
                Ok(lnp(2) * zeta(4)? * 3.75 + zeta(2)? * z3 * ln2() * 2.25
                    - zeta(5)? * ln2() * (93.0 / 16.0)
                    + zeta(6)? * (35.0 / 64.0)
                    - z3 * z3 * (15.0 / 16.0)
                    + sbar24(ctx)?)
            },
        ),
        fixed(
            "golden-4.L1L2",
            "Σ L_n(1)L_n(2)(−1)^{n−1}/n = (61/16)ζ(4) − (7/8)ζ(3)ln2 − (1/4)ζ(2)ln²2 − (1/6)ln⁴2 − 4Li_4(1/2)",
            Family::Alternating,
            |ctx| ctx.sum(pw(1).l(1).l(2).alt()),
            |_| {
                Ok(zeta(4)? * (61.0 / 16.0) - zeta(3)? * ln2() * 0.875 - zeta(2)? * lnp(2) * 0.25
                    - lnp(4) / 6.0
                    - li4_half()? * 4.0)
            },
        ),
        fixed(
            "golden-4.L1L3",
            "Σ L_n(1)L_n(3)(−1)^{n−1}/n = 2ln2Li_4(1/2) + (1/12)ln⁵2 + (3/8)ζ(3)ln²2 − (19/32)ζ(5) − (1/2)ζ(2)ln³2 + (11/16)ζ(4)ln2 + (1/4)ζ(2)ζ(3)",
            Family::Alternating,
            |ctx| ctx.sum(pw(1).l(1).l(3).alt()),
            |_| {
                Ok(li4_half()? * ln2() * 2.0 + lnp(5) / 12.0 + zeta(3)? * lnp(2) * 0.375
                    - zeta(5)? * (19.0 / 32.0)
                    - zeta(2)? * lnp(3) * 0.5
                    + zeta(4)? * ln2() * (11.0 / 16.0)
                    + zeta(2)? * zeta(3)? * 0.25)
            },
        ),
        fixed(
            "golden-4.L1L4",
            "Σ L_n(1)L_n(4)(−1)^{n−1}/n = −(35/128)ζ(6) + (3/4)ζ(3)² − (9/8)ζ(2)ζ(3)ln2 + (155/32)ζ(5)ln2 − (23/16)ζ(4)ln²2 − Σ ζ_n(2)(−1)^{n−1}/n⁴",
            Family::Alternating,
            |ctx| ctx.sum(pw(1).l(1).l(4).alt()),
            |ctx| {
                let z3 = zeta(3)?;
                Ok(zeta(6)? * (-35.0 / 128.0) + z3 * z3 * 0.75 - zeta(2)? * z3 * ln2() * 1.125
                    + zeta(5)? * ln2() * (155.0 / 32.0)
                    - zeta(4)? * lnp(2) * (23.0 / 16.0)
                    - sbar24(ctx)?)
            },
        ),
        fixed(
            "golden-4.Hn3n5",
            "Σ H_n³/n⁵ = (469/32)ζ(8) − 16ζ(3)ζ(5) + (3/2)ζ(2)ζ(3)² + (11/4) Σ ζ_n(2)/n⁶",
            Family::Cubic,
            |ctx| ctx.sum(pw(5).h(3)),
            |ctx| {
                let z3 = zeta(3)?;
                Ok(zeta(8)? * (469.0 / 32.0) - z3 * zeta(5)? * 16.0 + zeta(2)? * z3 * z3 * 1.5
                    + s26(ctx)? * 2.75)
            },
        ),
        fixed(
            "golden-4.Hnz2n5",
            "Σ H_nζ_n(2)/n⁵ = −(343/48)ζ(8) + 12ζ(3)ζ(5) − (5/2)ζ(2)ζ(3)² − (3/4) Σ ζ_n(2)/n⁶",
            Family::Quadratic,
            |ctx| ctx.sum(pw(5).h(1).z(2)),
            |ctx| {
                let z3 = zeta(3)?;
                Ok(zeta(8)? * (-343.0 / 48.0) + z3 * zeta(5)? * 12.0 - zeta(2)? * z3 * z3 * 2.5
                    - s26(ctx)? * 0.75)
            },
        ),
        fixed(
            "golden-4.Hn2z3n3",
            "Σ H_n²ζ_n(3)/n³ = (9/2)ζ(3)ζ(5) + (3/2)ζ(2)ζ(3)² − (443/288)ζ(8) − (23/4) Σ ζ_n(2)/n⁶",
            Family::Cubic,
            |ctx| ctx.sum(pw(3).h(2).z(3)),
            s123_rhs,
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::lookup;
    use crate::oracle::EvalConfig;

    // The printed ζ(4) coefficient −41/16 should read −61/16.
    #[test]
    fn l1sq_n2_balances_with_61() {
        let cfg = EvalConfig::default();
        let rec = lookup("golden-4.L1sq-n2").unwrap();
        let p = Params::new();
        let lhs = rec.lhs(&p, &cfg).unwrap().value;
        let rhs = rec.rhs(&p, &cfg).unwrap().value;
        let corrected = rhs - zeta(4).unwrap().value * (20.0 / 16.0);
        assert!((lhs - corrected).abs() < 1e-12, "{}", lhs - corrected);
        assert!((lhs - rhs).abs() > 1.0);
    }
}
