//! The chain of three fibrations on the product Kummer surface with a section of height `N`.

use num_bigint::BigInt;
use num_integer::Integer;

use super::common::draw_distinct;
use super::{Check, Ctx, DRAWS};
use crate::arith::ri;
use crate::error::Result;
use crate::lattice::{disc_form, disc_forms_isomorphic, parse_lattice_expr, smith_normal_form};
use crate::ns::kummer::{first_frame, first_po, second_frame, third_frame, D4Branch};
use crate::ns::{components_met, height, NSFrame};

fn two_length(f: &NSFrame) -> usize {
    smith_normal_form(&f.gram).factors().iter().filter(|d| d.is_even()).count()
}

fn odd_ns(ctx: &mut Ctx) -> Vec<i64> {
    let mut ns = vec![3, 5, 7];
    let extra: Vec<i64> = draw_distinct(ctx, DRAWS, 4, 11, &[]).into_iter().map(|k| 2 * k + 1).collect();
    ns.extend(extra);
    ns
}

pub fn first_fibration(ctx: &mut Ctx, c: &mut Check) -> Result<()> {
    let mut ns: Vec<i64> = (2..=9).collect();
    ns.extend(draw_distinct(ctx, DRAWS, 10, 30, &[]));
    c.record("N", &ns);
    for n in ns {
        let (branch, other) = if n % 2 == 1 { (D4Branch::One, D4Branch::Both) } else { (D4Branch::Both, D4Branch::One) };
        c.holds(format!("N={n} P.O integral on the {branch:?} branch"), first_po(n, branch).is_some());
        c.holds(format!("N={n} P.O not integral on the {other:?} branch"), first_po(n, other).is_none());
        let f = first_frame(n, branch)?;
        c.eq(format!("N={n} det"), f.det(), BigInt::from(16 * n));
        c.eq(format!("N={n} h(P)"), height(&f, &f.class("P")?)?, ri(n));
        let t = parse_lattice_expr(&format!("U(2)+<{}>", 4 * n))?;
        c.holds(format!("N={n} transcendental lattice U(2)+<4N>"), disc_forms_isomorphic(&disc_form(&f.lattice())?, &disc_form(&t)?.negate())?);
        // meeting neither I0* off the identity leaves too many 2-parts for rank 3 complement
        if let Some(po) = first_po(n, D4Branch::Neither) {
            let g = first_frame(n, D4Branch::Neither)?;
            c.record(&format!("N={n} P.O on the Neither branch"), po);
            c.holds(format!("N={n} Neither branch has 2-length >= 4"), two_length(&g) >= 4);
        }
    }
    Ok(())
}

pub fn second_fibration(ctx: &mut Ctx, c: &mut Check) -> Result<()> {
    let ns = odd_ns(ctx);
    c.record("N", &ns);
    for n in ns {
        let first = first_frame(n, D4Branch::One)?;
        let (f, d) = second_frame(&first, n)?;
        c.eq(format!("N={n} same determinant"), f.det(), first.det());
        c.eq(format!("N={n} D'^2"), f.square(&d), ri(-2));
        c.eq(format!("N={n} D'.F'"), f.pair(&d, &f.class("F")?), ri(1));
        c.eq(format!("N={n} D'.O'"), f.pair(&d, &f.class("O")?), ri((n - 3) / 2));
        c.eq(format!("N={n} components met by D'"), format!("{:?}", components_met(&f, &d)?), "[1, 0, 0, 0, 0]".into());
        c.eq(format!("N={n} h(D')"), height(&f, &d)?, ri(n));
        c.eq(format!("N={n} h(R')"), height(&f, &f.class("R")?)?, ri(0));
    }
    Ok(())
}

pub fn third_fibration(ctx: &mut Ctx, c: &mut Check) -> Result<()> {
    let ns = odd_ns(ctx);
    c.record("N", &ns);
    for n in ns {
        let first = first_frame(n, D4Branch::One)?;
        let (second, d) = second_frame(&first, n)?;
        let (f, p) = third_frame(&second, &d)?;
        c.eq(format!("N={n} same determinant"), f.det(), first.det());
        c.eq(format!("N={n} P''^2"), f.square(&p), ri(-2));
        c.eq(format!("N={n} P''.O''"), f.pair(&p, &f.class("O")?), ri((n - 1) / 2));
        c.eq(format!("N={n} h(P'')"), height(&f, &p)?, ri(n));
        c.eq(format!("N={n} h(R'')"), height(&f, &f.class("Rpp")?)?, ri(0));
        c.eq(format!("N={n} h(R')"), height(&f, &f.class("Rp")?)?, ri(0));
    }
    Ok(())
}
