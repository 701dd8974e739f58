//! Subalgebras of `K[x,y,z]^t` generated over `K[x,y,z]`, and degree-bounded
//! membership by exact linear algebra.

use std::collections::HashMap;

use serde::Serialize;

use super::field::Field;
use super::poly::{Mono, MultiPoly};
use super::PolysubError;

pub type Tuple<E> = Vec<MultiPoly<E>>;

pub fn tuple_mul<F: Field>(u: &Tuple<F::E>, v: &Tuple<F::E>, field: &F) -> Tuple<F::E> {
    u.iter().zip(v).map(|(a, b)| a.mul(b, field)).collect()
}

pub fn tuple_add<F: Field>(u: &Tuple<F::E>, v: &Tuple<F::E>, field: &F) -> Tuple<F::E> {
    u.iter().zip(v).map(|(a, b)| a.add(b, field)).collect()
}

pub fn tuple_sub<F: Field>(u: &Tuple<F::E>, v: &Tuple<F::E>, field: &F) -> Tuple<F::E> {
    u.iter().zip(v).map(|(a, b)| a.sub(b, field)).collect()
}

/// Componentwise: each `u_i` is zero or equals `v_i`. Exact in a product of
/// domains.
pub fn rr_le_tuple<E: Clone + PartialEq>(u: &Tuple<E>, v: &Tuple<E>) -> Result<bool, PolysubError> {
    if u.len() != v.len() {
        return Err(PolysubError::ArityMismatch { expected: u.len(), got: v.len() });
    }
    Ok(u.iter().zip(v).all(|(a, b)| a.is_zero() || a == b))
}

#[derive(Debug, Clone)]
pub struct TupleAlgebra<F: Field> {
    pub field: F,
    factors: usize,
    names: Vec<String>,
    gens: Vec<Tuple<F::E>>,
}

impl<F: Field> TupleAlgebra<F> {
    /// The all-ones tuple is always present as the unit and is not listed.
    pub fn new(field: F, factors: usize, named: Vec<(String, Tuple<F::E>)>) -> Result<Self, PolysubError> {
        if factors == 0 {
            return Err(PolysubError::ArityMismatch { expected: 1, got: 0 });
        }
        let mut names = Vec::new();
        let mut gens = Vec::new();
        for (n, g) in named {
            if g.len() != factors {
                return Err(PolysubError::ArityMismatch { expected: factors, got: g.len() });
            }
            names.push(n);
            gens.push(g);
        }
        Ok(TupleAlgebra { field, factors, names, gens })
    }

    pub fn factors(&self) -> usize {
        self.factors
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generators(&self) -> &[Tuple<F::E>] {
        &self.gens
    }

    pub fn generator(&self, name: &str) -> Option<&Tuple<F::E>> {
        self.names.iter().position(|n| n == name).map(|i| &self.gens[i])
    }

    pub fn unit(&self) -> Tuple<F::E> {
        vec![MultiPoly::constant(&self.field, self.field.one()); self.factors]
    }

    pub fn zero_tuple(&self) -> Tuple<F::E> {
        vec![MultiPoly::zero(); self.factors]
    }

    /// Product of generator powers; the empty exponent vector gives the unit.
    pub fn gen_monomial(&self, exps: &[u32]) -> Tuple<F::E> {
        let mut acc = self.unit();
        for (g, &e) in self.gens.iter().zip(exps) {
            for _ in 0..e {
                acc = tuple_mul(&acc, g, &self.field);
            }
        }
        acc
    }

    /// `c · m · Π gen^e`.
    pub fn evaluate_term(&self, term: &CertTerm<F::E>) -> Tuple<F::E> {
        self.gen_monomial(&term.gens).iter().map(|p| p.scale_mono(&term.base, &term.coeff, &self.field)).collect()
    }

    /// The same algebra with `z = 0`.
    pub fn at_z_zero(&self) -> Self {
        TupleAlgebra {
            field: self.field.clone(),
            factors: self.factors,
            names: self.names.clone(),
            gens: self.gens.iter().map(|g| g.iter().map(MultiPoly::at_z_zero).collect()).collect(),
        }
    }

    fn uses_z(&self) -> bool {
        self.gens.iter().flatten().any(MultiPoly::has_z)
    }
}

/// Exponent vectors over `n` generators with total degree at most `d`, in
/// increasing degree.
pub fn exponent_vectors(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = Vec::new();
    for total in 0..=d {
        let mut cur = vec![0u32; n];
        fill(&mut cur, 0, total, &mut out);
    }
    out
}

fn fill(cur: &mut Vec<u32>, i: usize, left: u32, out: &mut Vec<Vec<u32>>) {
    if i + 1 >= cur.len() {
        if let Some(last) = cur.last_mut() {
            *last = left;
            out.push(cur.clone());
        } else if left == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for e in (0..=left).rev() {
        cur[i] = e;
        fill(cur, i + 1, left - e, out);
    }
    cur[i] = 0;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MembershipOptions {
    /// Solve the `z = 0` image first; a refusal there is a refusal upstairs.
    pub reduce_z: bool,
    /// Largest number of stored nonzero entries in the echelon form.
    pub cap: usize,
}

impl Default for MembershipOptions {
    fn default() -> Self {
        MembershipOptions { reduce_z: true, cap: 200_000 }
    }
}

/// One summand `coeff · base · Π gen^gens` of a representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertTerm<E> {
    pub gens: Vec<u32>,
    pub base: Mono,
    pub coeff: E,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SystemStats {
    pub gen_degree: u32,
    pub coeff_degree: u32,
    pub reduced_z: bool,
    pub spanning_vectors: usize,
    pub columns: usize,
    pub rank: usize,
    pub entries: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MembershipCertificate<E> {
    Member { terms: Vec<CertTerm<E>>, stats: SystemStats },
    Refusal { stats: SystemStats },
}

impl<E> MembershipCertificate<E> {
    pub fn is_member(&self) -> bool {
        matches!(self, MembershipCertificate::Member { .. })
    }

    pub fn stats(&self) -> &SystemStats {
        match self {
            MembershipCertificate::Member { stats, .. } | MembershipCertificate::Refusal { stats } => stats,
        }
    }
}

impl<F: Field> TupleAlgebra<F> {
    /// Re-evaluates a representation.
    pub fn verify(&self, cert: &MembershipCertificate<F::E>, target: &Tuple<F::E>) -> bool {
        match cert {
            MembershipCertificate::Refusal { .. } => true,
            MembershipCertificate::Member { terms, .. } => {
                let sum =
                    terms.iter().fold(self.zero_tuple(), |acc, t| tuple_add(&acc, &self.evaluate_term(t), &self.field));
                &sum == target
            }
        }
    }
}

/// Whether `target` lies in the span of `c · Π gen^e` with `|e| <= gen_degree`
/// and `deg c <= coeff_degree`.
pub fn bounded_membership<F: Field>(
    alg: &TupleAlgebra<F>,
    target: &Tuple<F::E>,
    gen_degree: u32,
    coeff_degree: u32,
    opts: MembershipOptions,
) -> Result<MembershipCertificate<F::E>, PolysubError> {
    if target.len() != alg.factors {
        return Err(PolysubError::ArityMismatch { expected: alg.factors, got: target.len() });
    }
    let with_z = alg.uses_z() || target.iter().any(MultiPoly::has_z);
    if opts.reduce_z && with_z {
        let reduced = alg.at_z_zero();
        let t0: Tuple<F::E> = target.iter().map(MultiPoly::at_z_zero).collect();
        let sys = System::build(&reduced, gen_degree, coeff_degree, false);
        if let Solve::Outside(stats) = sys.solve(&t0, opts.cap, false, true)? {
            return Ok(MembershipCertificate::Refusal { stats });
        }
    }
    let sys = System::build(alg, gen_degree, coeff_degree, with_z);
    match sys.solve(target, opts.cap, true, false)? {
        Solve::Outside(stats) => Ok(MembershipCertificate::Refusal { stats }),
        Solve::Inside(terms, stats) => {
            let cert = MembershipCertificate::Member { terms, stats };
            if !alg.verify(&cert, target) {
                return Err(PolysubError::Internal("representation does not re-evaluate to the target".into()));
            }
            Ok(cert)
        }
    }
}

struct System<'a, F: Field> {
    alg: &'a TupleAlgebra<F>,
    gen_degree: u32,
    coeff_degree: u32,
    reduced_z: bool,
    labels: Vec<(Vec<u32>, Mono)>,
    vectors: Vec<Vec<(usize, F::E)>>,
    columns: HashMap<(usize, Mono), usize>,
}

enum Solve<E> {
    Inside(Vec<CertTerm<E>>, SystemStats),
    Outside(SystemStats),
}

impl<'a, F: Field> System<'a, F> {
    fn build(alg: &'a TupleAlgebra<F>, gen_degree: u32, coeff_degree: u32, with_z: bool) -> Self {
        let field = &alg.field;
        let bases = Mono::up_to(coeff_degree, with_z);
        let mut products: HashMap<Vec<u32>, Tuple<F::E>> = HashMap::new();
        let mut sys = System {
            alg,
            gen_degree,
            coeff_degree,
            reduced_z: !with_z,
            labels: Vec::new(),
            vectors: Vec::new(),
            columns: HashMap::new(),
        };
        for e in exponent_vectors(alg.gens.len(), gen_degree) {
            let prod = match e.iter().position(|&k| k > 0) {
                None => alg.unit(),
                Some(i) => {
                    let mut prev = e.clone();
                    prev[i] -= 1;
                    tuple_mul(&products[&prev], &alg.gens[i], field)
                }
            };
            if prod.iter().all(MultiPoly::is_zero) {
                products.insert(e, prod);
                continue;
            }
            for m in &bases {
                let mut v = Vec::new();
                for (comp, p) in prod.iter().enumerate() {
                    for (n, c) in p.terms() {
                        let key = (comp, n.mul(m));
                        let next = sys.columns.len();
                        let col = *sys.columns.entry(key).or_insert(next);
                        v.push((col, c.clone()));
                    }
                }
                sys.labels.push((e.clone(), *m));
                sys.vectors.push(v);
            }
            products.insert(e, prod);
        }
        sys
    }

    fn solve(
        &self,
        target: &Tuple<F::E>,
        cap: usize,
        want_terms: bool,
        reduced: bool,
    ) -> Result<Solve<F::E>, PolysubError> {
        let field = &self.alg.field;
        let mut tv = Vec::new();
        let mut outside_columns = false;
        for (comp, p) in target.iter().enumerate() {
            for (n, c) in p.terms() {
                match self.columns.get(&(comp, *n)) {
                    Some(&col) => tv.push((col, c.clone())),
                    None => outside_columns = true,
                }
            }
        }
        let ncols = self.columns.len();
        let nvec = self.vectors.len();
        let mut stats = SystemStats {
            gen_degree: self.gen_degree,
            coeff_degree: self.coeff_degree,
            reduced_z: reduced || self.reduced_z,
            spanning_vectors: nvec,
            columns: ncols,
            rank: 0,
            entries: 0,
        };
        let mut ech = Echelon::new(field, ncols, if want_terms { nvec } else { 0 });
        for (k, v) in self.vectors.iter().enumerate() {
            ech.insert(v, k)?;
            if ech.entries > cap {
                return Err(PolysubError::CapExceeded { entries: ech.entries, cap });
            }
        }
        stats.rank = ech.rank;
        stats.entries = ech.entries;
        if outside_columns {
            return Ok(Solve::Outside(stats));
        }
        match ech.express(&tv) {
            None => Ok(Solve::Outside(stats)),
            Some(combo) => {
                let terms = combo
                    .into_iter()
                    .map(|(k, c)| CertTerm { gens: self.labels[k].0.clone(), base: self.labels[k].1, coeff: c })
                    .collect();
                Ok(Solve::Inside(terms, stats))
            }
        }
    }
}

/// Row echelon form with pivot rows scaled to a leading one, optionally
/// tracking each row as a combination of the inserted vectors.
struct Echelon<'f, F: Field> {
    field: &'f F,
    ncols: usize,
    track: usize,
    rows: Vec<Option<(Vec<(usize, F::E)>, Vec<(usize, F::E)>)>>,
    rank: usize,
    entries: usize,
}

impl<'f, F: Field> Echelon<'f, F> {
    fn new(field: &'f F, ncols: usize, track: usize) -> Self {
        Echelon { field, ncols, track, rows: vec![None; ncols], rank: 0, entries: 0 }
    }

    /// Reduces a dense vector; returns the combination of rows subtracted.
    fn reduce(&self, w: &mut [F::E], combo: &mut [F::E]) {
        let f = self.field;
        for col in 0..self.ncols {
            if f.is_zero(&w[col]) {
                continue;
            }
            if let Some((row, rc)) = &self.rows[col] {
                let lam = w[col].clone();
                for (j, x) in row {
                    w[*j] = f.sub(&w[*j], &f.mul(&lam, x));
                }
                for (j, x) in rc {
                    combo[*j] = f.add(&combo[*j], &f.mul(&lam, x));
                }
            }
        }
    }

    fn insert(&mut self, v: &[(usize, F::E)], index: usize) -> Result<(), PolysubError> {
        let f = self.field;
        let mut w = vec![f.zero(); self.ncols];
        for (c, x) in v {
            w[*c] = f.add(&w[*c], x);
        }
        let mut combo = vec![f.zero(); self.track];
        self.reduce(&mut w, &mut combo);
        let Some(p) = w.iter().position(|x| !f.is_zero(x)) else { return Ok(()) };
        let inv = f.inv(&w[p]);
        let row: Vec<(usize, F::E)> =
            w.iter().enumerate().skip(p).filter(|(_, x)| !f.is_zero(x)).map(|(j, x)| (j, f.mul(x, &inv))).collect();
        let rc: Vec<(usize, F::E)> = if self.track > 0 {
            // row = v - Σ λ rows, so its combination is e_index - combo.
            let mut c: Vec<(usize, F::E)> = combo
                .iter()
                .enumerate()
                .filter(|(_, x)| !f.is_zero(x))
                .map(|(j, x)| (j, f.neg(&f.mul(x, &inv))))
                .collect();
            c.push((index, inv));
            c
        } else {
            Vec::new()
        };
        self.entries += row.len();
        self.rank += 1;
        self.rows[p] = Some((row, rc));
        Ok(())
    }

    /// Coefficients over the inserted vectors summing to `t`, if in the span.
    fn express(&self, t: &[(usize, F::E)]) -> Option<Vec<(usize, F::E)>> {
        let f = self.field;
        let mut w = vec![f.zero(); self.ncols];
        for (c, x) in t {
            w[*c] = f.add(&w[*c], x);
        }
        let mut combo = vec![f.zero(); self.track];
        self.reduce(&mut w, &mut combo);
        w.iter().all(|x| f.is_zero(x)).then(|| combo.into_iter().enumerate().filter(|(_, x)| !f.is_zero(x)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_vector_counts() {
        assert_eq!(exponent_vectors(3, 2).len(), 10);
        assert_eq!(exponent_vectors(7, 4).len(), 330);
        assert_eq!(exponent_vectors(2, 1), vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(exponent_vectors(0, 3), vec![Vec::<u32>::new()]);
    }
}
