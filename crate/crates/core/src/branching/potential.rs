//! Progress potentials: bucket-weighted products whose logarithm bounds the
//! remaining branching work.

use num::{BigUint, ToPrimitive};

use crate::buckets::{c_link_buckets, find_chip, path_buckets, tripod_buckets};
use crate::error::{Error, Result, Violation};
use crate::graph::{induced_subgraph, Graph};

use super::strategy::SecondaryCtx;
use super::{quota, Subproblem};

/// Which witness family the primary potential sums over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PotentialForm {
    /// Endpoint-pair buckets of induced paths (the `P_t`-free strategy).
    Paths,
    /// Tip-triple buckets of tripods (the long-cycle-free strategy).
    Tripods,
}

/// One active vertex's contribution: `1` plus its remaining quota at its
/// own floor. A clean subproblem never has a negative quota, so a negative
/// value means the caller skipped filtering.
fn credit(g: &Graph, sub: &Subproblem, v: usize, d: usize) -> Result<u64> {
    let q = quota(g, &sub.eta, v, sub.zeta[v], d);
    if q < 0 {
        return Err(Error::contract(
            "potential",
            format!("vertex {v} has negative quota at its floor; the subproblem is not clean"),
        ));
    }
    Ok(1 + q as u64)
}

/// The primary potential of a clean subproblem, returned as the exact
/// product whose base-2 logarithm is the potential value: one factor
/// `1 + Σ_witness Σ_vertex credit` per witness bucket of the active area.
/// Bucket pairs (or triples) with no witnesses contribute a factor of 1.
pub fn potential_mu(
    g: &Graph,
    sub: &Subproblem,
    d: usize,
    t: usize,
    form: PotentialForm,
) -> Result<BigUint> {
    let (gsub, map) = induced_subgraph(g, &sub.w);
    let mut product = BigUint::from(1u32);
    match form {
        PotentialForm::Paths => {
            let index = path_buckets(&gsub, t)?;
            for (_, paths) in index.iter() {
                let mut sum: u64 = 0;
                for p in paths {
                    for &u in &p.vertices {
                        sum += credit(g, sub, map[u], d)?;
                    }
                }
                product *= BigUint::from(1 + sum);
            }
        }
        PotentialForm::Tripods => {
            let index = tripod_buckets(&gsub, t)?;
            for (_, members) in index.iter() {
                let mut sum: u64 = 0;
                for &i in members {
                    for u in index.tripods[i].vertices().iter() {
                        sum += credit(g, sub, map[u], d)?;
                    }
                }
                product *= BigUint::from(1 + sum);
            }
        }
    }
    Ok(product)
}

/// The secondary potential: `None` when the subproblem has no chip, the
/// unit product when the chip touches fewer than two active neighbors, and
/// otherwise one factor `Σ_link Σ_vertex credit` per boundary pair — with
/// no leading `1 +`, since every pair of the chip's boundary must be joined
/// by at least one link.
pub fn potential_mu_secondary(
    g: &Graph,
    sub: &Subproblem,
    d: usize,
    t: usize,
    ctx: &SecondaryCtx,
) -> Result<Option<BigUint>> {
    let h = &sub.w;
    let Some(chip) = find_chip(g, h, &ctx.c2, &ctx.b, &ctx.k)? else {
        return Ok(None);
    };
    let boundary = g.neighborhood(&chip).intersection(h);
    if boundary.len() < 2 {
        return Ok(Some(BigUint::from(1u32)));
    }
    let index = c_link_buckets(g, h, &chip, t, false)?;
    let bvs = index.boundary.to_vec();
    let mut product = BigUint::from(1u32);
    for i in 0..bvs.len() {
        for j in i + 1..bvs.len() {
            let mut sum: u64 = 0;
            for link in index.bucket(bvs[i], bvs[j]) {
                for &q in &link.vertices {
                    sum += credit(g, sub, q, d)?;
                }
            }
            if sum == 0 {
                return Err(Violation::new(
                    "potential_mu_secondary",
                    "a boundary pair of the chip is joined by no link",
                    vec![bvs[i], bvs[j]],
                )
                .into());
            }
            product *= BigUint::from(sum);
        }
    }
    Ok(Some(product))
}

/// The base-2 logarithm of an exact product, for reporting. Accurate to
/// roughly double precision regardless of the product's size.
pub fn log2_of_product(product: &BigUint) -> f64 {
    let bits = product.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 53 {
        return (product.to_u64().expect("fits in 53 bits") as f64).log2();
    }
    let shift = bits - 53;
    let top: BigUint = product >> shift as usize;
    (top.to_u64().expect("fits in 53 bits") as f64).log2() + shift as f64
}
