//! Random instance generators shared by the integration tests and the
//! acceptance suite.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rrorder::plring::{upoly::q, PwPolyFunc, UPoly, Q};
use rrorder::zkring::CongruenceRing;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A congruence ring of the given width with moduli drawn from `moduli` and
/// up to `max_constraints` pairwise constraints; retries invalid draws.
pub fn random_ring(rng: &mut ChaCha8Rng, width: usize, moduli: &[i64], max_constraints: usize) -> CongruenceRing {
    loop {
        let ms: Vec<i64> = (0..width).map(|_| *moduli.choose(rng).unwrap()).collect();
        let n = rng.gen_range(0..=max_constraints);
        let cs: Vec<(usize, usize, i64)> = (0..n)
            .map(|_| {
                let i = rng.gen_range(0..width);
                let j = rng.gen_range(0..width);
                (i.min(j), i.max(j), *[0i64, 2, 3, 6].choose(rng).unwrap())
            })
            .filter(|(i, j, _)| i != j)
            .collect();
        if let Ok(r) = CongruenceRing::new(&ms, &cs) {
            return r;
        }
    }
}

/// Random ring until `keep` accepts it.
pub fn random_ring_where(
    rng: &mut ChaCha8Rng,
    width: usize,
    moduli: &[i64],
    max_constraints: usize,
    keep: impl Fn(&CongruenceRing) -> bool,
) -> CongruenceRing {
    loop {
        let r = random_ring(rng, width, moduli, max_constraints);
        if keep(&r) {
            return r;
        }
    }
}

/// A random element of the ring with entries in `[-b, b]` before reduction.
pub fn random_elem(rng: &mut ChaCha8Rng, ring: &CongruenceRing, b: i64) -> Vec<i64> {
    let basis = ring.basis();
    let mut v = vec![0i64; ring.width()];
    for g in &basis {
        let c = rng.gen_range(-b..=b);
        for (x, y) in v.iter_mut().zip(g) {
            *x += c * y;
        }
    }
    ring.reduce(&v)
}

pub const DOMAIN: (i64, i64) = (0, 4);

fn qq(n: i64) -> Q {
    q(n, 1)
}

/// `c (x - l)(r - x)` times `(x - rho)` when given.
pub fn bump(l: &Q, r: &Q, c: i64, rho: Option<&Q>) -> UPoly {
    let base = UPoly::linear_root(l).mul(&UPoly::linear_root(r)).scale(&qq(-c));
    match rho {
        Some(p) => base.mul(&UPoly::linear_root(p)),
        None => base,
    }
}

/// One piece between nodes with values `vl`, `vr`: linear when a node is
/// nonzero, otherwise zero or a bump. All zeros are rational.
fn random_piece(rng: &mut ChaCha8Rng, l: &Q, r: &Q, vl: i64, vr: i64) -> UPoly {
    if vl != 0 || vr != 0 {
        let slope = qq(vr - vl) / (r - l);
        return UPoly::new(vec![qq(vl) - &slope * l, slope]);
    }
    match rng.gen_range(0..4) {
        0 => UPoly::zero(),
        1 => bump(l, r, 1, None),
        2 => bump(l, r, -1, None),
        _ => {
            let rho = (l + r) / qq(2) + q(rng.gen_range(-1..=1), 4) * (r - l);
            bump(l, r, *[1, -1].choose(rng).unwrap(), Some(&rho))
        }
    }
}

/// A function on `[0, 4]` with at most four pieces of degree at most 3,
/// built on the integer grid so that independent draws often coincide.
pub fn random_pl(rng: &mut ChaCha8Rng) -> PwPolyFunc {
    let nodes: Vec<i64> = (0..=4).map(|_| *[0, 0, 0, 1, -1].choose(rng).unwrap()).collect();
    let pieces =
        (0..4).map(|i| random_piece(rng, &qq(i), &qq(i + 1), nodes[i as usize], nodes[i as usize + 1])).collect();
    PwPolyFunc::new(qq(DOMAIN.0), qq(DOMAIN.1), (1..4).map(qq).collect(), pieces).expect("continuous by construction")
}

/// A copy of `f` with each piece independently kept (probability `keep`)
/// or replaced by a fresh piece through the same node values.
pub fn perturb(rng: &mut ChaCha8Rng, f: &PwPolyFunc, keep: f64) -> PwPolyFunc {
    let mut breaks = Vec::new();
    let mut pieces = Vec::new();
    for i in 0..4 {
        let (l, r) = (qq(i), qq(i + 1));
        let p = f.piece_on(&l, &r).clone();
        let piece = if rng.gen_bool(keep) {
            p
        } else {
            let vl = p.eval(&l);
            let vr = p.eval(&r);
            if vl.is_integer() && vr.is_integer() {
                let to_i = |v: &Q| i64::try_from(v.to_integer()).unwrap();
                random_piece(rng, &l, &r, to_i(&vl), to_i(&vr))
            } else {
                p
            }
        };
        if i > 0 {
            breaks.push(l);
        }
        pieces.push(piece);
    }
    PwPolyFunc::new(qq(DOMAIN.0), qq(DOMAIN.1), breaks, pieces).expect("node values preserved")
}

/// Every point where a lower bound of `f` and `g` may start or stop: domain
/// ends, breakpoints, and rational zeros of `f`.
pub fn candidate_ends(f: &PwPolyFunc, g: &PwPolyFunc) -> Vec<Q> {
    let mut pts: Vec<Q> = vec![f.lo().clone(), f.hi().clone()];
    pts.extend(f.breakpoints().iter().cloned());
    pts.extend(g.breakpoints().iter().cloned());
    for (l, r, p) in f.intervals() {
        if !p.is_zero() {
            for z in p.roots_in(l, r) {
                if let rrorder::plring::Root::Rational(x) = z {
                    pts.push(x);
                }
            }
        }
    }
    pts.sort();
    pts.dedup();
    pts
}

/// `f` kept on up to three random closed intervals with ends in `ends`, if
/// that is continuous and below both `f` and `g`.
pub fn random_lower_bound(rng: &mut ChaCha8Rng, f: &PwPolyFunc, g: &PwPolyFunc, ends: &[Q]) -> Option<PwPolyFunc> {
    let k = rng.gen_range(1..=3);
    let mut ivs = Vec::new();
    for _ in 0..k {
        let i = rng.gen_range(0..ends.len());
        let j = rng.gen_range(0..ends.len());
        if i == j {
            continue;
        }
        ivs.push((ends[i.min(j)].clone(), ends[i.max(j)].clone()));
    }
    let h = f.keep_on(&ivs).ok()?;
    (h.rr_le(f).ok()? && h.rr_le(g).ok()?).then_some(h)
}

/// Pairwise orthogonal bumps on `[1, 3]`, each vanishing at both ends, plus
/// candidate extensions to `[0, 4]` whose tails are shared to force overlaps.
pub fn random_bump_family(rng: &mut ChaCha8Rng) -> (Vec<PwPolyFunc>, Vec<PwPolyFunc>) {
    let cells = 4;
    let step = q(1, 2);
    let n = rng.gen_range(1..=4);
    let mut owner: Vec<Option<usize>> = (0..cells).map(|_| None).collect();
    for (c, o) in owner.iter_mut().enumerate() {
        if c < n || rng.gen_bool(0.5) {
            *o = Some(if c < n { c } else { rng.gen_range(0..n) });
        }
    }
    owner.shuffle(rng);
    let cut = |c: i64| qq(1) + &step * qq(c);
    let funcs: Vec<PwPolyFunc> = (0..n)
        .map(|k| {
            let pieces = (0..cells)
                .map(|c| {
                    if owner[c] == Some(k) {
                        bump(&cut(c as i64), &cut(c as i64 + 1), rng.gen_range(1..=3), None)
                    } else {
                        UPoly::zero()
                    }
                })
                .collect();
            PwPolyFunc::new(qq(1), qq(3), (1..cells as i64).map(cut).collect(), pieces).unwrap()
        })
        .collect();
    let tails = [
        (bump(&qq(0), &qq(1), 1, None), bump(&qq(3), &qq(4), 1, None)),
        (bump(&qq(0), &qq(1), -2, None), UPoly::zero()),
        (UPoly::zero(), bump(&qq(3), &qq(4), 1, Some(&q(7, 2)))),
        (UPoly::zero(), UPoly::zero()),
    ];
    let exts = funcs
        .iter()
        .map(|f| {
            let (left, right) = tails.choose(rng).unwrap().clone();
            let mut breaks = vec![qq(1)];
            let mut pieces = vec![left];
            for (l, _, p) in f.intervals() {
                if l > &qq(1) {
                    breaks.push(l.clone());
                }
                pieces.push(p.clone());
            }
            breaks.push(qq(3));
            pieces.push(right);
            PwPolyFunc::new(qq(0), qq(4), breaks, pieces).unwrap()
        })
        .collect();
    (funcs, exts)
}

use rrorder::order::{rr_le, RrRing};

/// Outcome of a brute-force meet search over an explicit element list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BruteMeet {
    Meet(Vec<i64>),
    NoTop(usize),
}

/// Greatest common lower bound among `elems`, found by plain enumeration.
pub fn brute_meet(ring: &CongruenceRing, a: &Vec<i64>, b: &Vec<i64>, elems: &[Vec<i64>]) -> BruteMeet {
    let lower: Vec<&Vec<i64>> = elems.iter().filter(|c| rr_le(ring, *c, a) && rr_le(ring, *c, b)).collect();
    let tops: Vec<&Vec<i64>> = lower.iter().copied().filter(|c| lower.iter().all(|d| rr_le(ring, *d, *c))).collect();
    match tops.as_slice() {
        [t] => BruteMeet::Meet((*t).clone()),
        _ => BruteMeet::NoTop(lower.len()),
    }
}

pub fn zero_of(ring: &CongruenceRing) -> Vec<i64> {
    RrRing::zero(ring)
}
