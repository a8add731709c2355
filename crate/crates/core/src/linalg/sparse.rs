use super::field::{mulmod, powmod, FieldSpec, Scalar};
use super::rat::{rat_mod_p, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, HashMap};

/// Incremental row echelon form over sparse rows (leftmost pivot).
pub struct SparseEchelon {
    field: FieldSpec,
    ncols: usize,
    rows: HashMap<usize, BTreeMap<usize, Scalar>>,
}

impl SparseEchelon {
    pub fn new(field: FieldSpec, ncols: usize) -> SparseEchelon {
        SparseEchelon { field, ncols, rows: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a row; returns whether it increased the rank.
    pub fn push(&mut self, row: impl IntoIterator<Item = (usize, Scalar)>) -> bool {
        let mut v: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (c, x) in row {
            if x.is_zero() {
                continue;
            }
            match v.get_mut(&c) {
                Some(e) => {
                    *e = e.add(&x);
                    if e.is_zero() {
                        v.remove(&c);
                    }
                }
                None => {
                    v.insert(c, x);
                }
            }
        }
        loop {
            let Some((&lead, c)) = v.first_key_value() else { return false };
            match self.rows.get(&lead) {
                Some(r) => {
                    let c = c.neg();
                    for (k, x) in r {
                        let t = c.mul(x);
                        match v.get_mut(k) {
                            Some(e) => {
                                *e = e.add(&t);
                                if e.is_zero() {
                                    v.remove(k);
                                }
                            }
                            None => {
                                v.insert(*k, t);
                            }
                        }
                    }
                }
                None => {
                    let inv = c.inv().unwrap();
                    let r = v.into_iter().map(|(k, x)| (k, x.mul(&inv))).collect();
                    self.rows.insert(lead, r);
                    return true;
                }
            }
        }
    }

    /// Basis of {x : row·x = 0 for every pushed row}, ordered by free column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut pivots: Vec<usize> = self.rows.keys().copied().collect();
        pivots.sort_unstable();
        // Back-substitute so that each row only meets its own pivot column.
        let mut reduced: HashMap<usize, BTreeMap<usize, Scalar>> = HashMap::new();
        for &p in pivots.iter().rev() {
            let mut row = self.rows[&p].clone();
            let others: Vec<usize> = row.keys().copied().filter(|&k| k != p && reduced.contains_key(&k)).collect();
            for k in others {
                let Some(c) = row.get(&k).cloned() else { continue };
                let c = c.neg();
                for (j, x) in &reduced[&k] {
                    let t = c.mul(x);
                    match row.get_mut(j) {
                        Some(e) => {
                            *e = e.add(&t);
                            if e.is_zero() {
                                row.remove(j);
                            }
                        }
                        None => {
                            row.insert(*j, t);
                        }
                    }
                }
            }
            reduced.insert(p, row);
        }
        let mut out = Vec::new();
        let mut by_free: HashMap<usize, Vec<(usize, Scalar)>> = HashMap::new();
        for (&p, row) in &reduced {
            for (&j, x) in row {
                if j != p {
                    by_free.entry(j).or_default().push((p, x.neg()));
                }
            }
        }
        for f in 0..self.ncols {
            if reduced.contains_key(&f) {
                continue;
            }
            let mut v = vec![self.field.zero(); self.ncols];
            v[f] = self.field.one();
            if let Some(entries) = by_free.get(&f) {
                for (p, x) in entries {
                    v[*p] = x.clone();
                }
            }
            out.push(v);
        }
        out
    }
}

/// Primes just below 2³¹, largest first.
fn primes() -> impl Iterator<Item = u64> {
    (1u64 << 20..1u64 << 31).rev().filter(|&n| n % 2 == 1 && super::field::is_prime(n))
}

/// Leftmost-pivot echelon form mod p; returns pivot rows keyed by pivot.
fn echelon_mod_p(rows: &[Vec<(usize, u64)>], p: u64) -> BTreeMap<usize, BTreeMap<usize, u64>> {
    let mut piv: BTreeMap<usize, BTreeMap<usize, u64>> = BTreeMap::new();
    for row in rows {
        let mut v: BTreeMap<usize, u64> = BTreeMap::new();
        for &(c, x) in row {
            let e = v.entry(c).or_insert(0);
            *e = (*e + x) % p;
            if *e == 0 {
                v.remove(&c);
            }
        }
        while let Some((&lead, &c)) = v.first_key_value() {
            match piv.get(&lead) {
                Some(r) => {
                    let f = p - c;
                    for (&k, &x) in r {
                        let e = v.entry(k).or_insert(0);
                        *e = (*e + mulmod(f, x, p)) % p;
                        if *e == 0 {
                            v.remove(&k);
                        }
                    }
                }
                None => {
                    let inv = powmod(c, p - 2, p);
                    piv.insert(lead, v.into_iter().map(|(k, x)| (k, mulmod(x, inv, p))).collect());
                    break;
                }
            }
        }
    }
    // Back-substitute, last pivot first.
    let keys: Vec<usize> = piv.keys().rev().copied().collect();
    for &k in &keys {
        let mut row = piv.remove(&k).unwrap();
        let hits: Vec<(usize, u64)> = row.iter().filter(|(&j, _)| j != k && piv.contains_key(&j)).map(|(&j, &x)| (j, x)).collect();
        for (j, c) in hits {
            let f = p - c;
            for (&t, &x) in &piv[&j] {
                let e = row.entry(t).or_insert(0);
                *e = (*e + mulmod(f, x, p)) % p;
                if *e == 0 {
                    row.remove(&t);
                }
            }
        }
        piv.insert(k, row);
    }
    piv
}

/// a/b with |a|, b ≤ √(m/2) and a ≡ b·x (mod m), if one exists.
fn rational_reconstruct(x: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), x.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Kernel over ℚ by solving modulo several primes and lifting through
/// CRT and rational reconstruction. The lift is checked exactly; `None`
/// means no verified lift was found within `max_primes`.
pub fn kernel_multimodular(ncols: usize, rows: &[Vec<(usize, Rat)>], max_primes: usize) -> Option<Vec<Vec<Scalar>>> {
    let mut modulus = BigInt::one();
    let mut pivots: Option<Vec<usize>> = None;
    // residues[v][j]: CRT image of entry j of kernel vector v
    let mut residues: Vec<Vec<BigInt>> = Vec::new();
    let mut used = 0;
    let mut next_check = 1;
    for p in primes().take(4 * max_primes) {
        if used == max_primes {
            break;
        }
        let reduced: Option<Vec<Vec<(usize, u64)>>> =
            rows.iter().map(|r| r.iter().map(|(c, x)| rat_mod_p(x, p).map(|v| (*c, v))).collect()).collect();
        let Some(reduced) = reduced else { continue };
        let ech = echelon_mod_p(&reduced, p);
        let piv: Vec<usize> = ech.keys().copied().collect();
        match &pivots {
            // More pivots means the earlier primes were unlucky.
            Some(old) if piv.len() > old.len() => {
                modulus = BigInt::one();
                residues.clear();
                used = 0;
                next_check = 1;
            }
            Some(old) if *old != piv => continue,
            _ => {}
        }
        let free: Vec<usize> = (0..ncols).filter(|c| !ech.contains_key(c)).collect();
        let mut vecs: Vec<Vec<u64>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![0u64; ncols];
                v[f] = 1;
                v
            })
            .collect();
        let index: HashMap<usize, usize> = free.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        for (&k, row) in &ech {
            for (&j, &x) in row {
                if j != k {
                    vecs[index[&j]][k] = (p - x) % p;
                }
            }
        }
        let pb = BigInt::from(p);
        if residues.is_empty() {
            residues = vecs.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
        } else {
            // x ≡ a (mod M), x ≡ b (mod p)  ⇒  x = a + M·((b − a)·M⁻¹ mod p)
            let minv = BigInt::from(powmod((&modulus % &pb).to_u64().unwrap(), p - 2, p));
            for (acc, v) in residues.iter_mut().zip(&vecs) {
                for (a, &b) in acc.iter_mut().zip(v) {
                    let t = ((BigInt::from(b) - &*a) * &minv).mod_floor(&pb);
                    *a = &*a + &modulus * t;
                }
            }
        }
        modulus *= &pb;
        pivots = Some(piv);
        used += 1;
        if used < next_check {
            continue;
        }
        next_check *= 2;
        let lifted: Option<Vec<Vec<Rat>>> = residues
            .iter()
            .map(|v| v.iter().map(|x| rational_reconstruct(x, &modulus).map(Rat::from_big)).collect())
            .collect();
        let Some(lifted) = lifted else { continue };
        let ok = rows.iter().all(|r| {
            lifted.iter().all(|v| r.iter().fold(Rat::from_int(0), |acc, (c, x)| acc.add(&x.mul(&v[*c]))).is_zero())
        });
        if ok {
            return Some(lifted.into_iter().map(|v| v.into_iter().map(Scalar::Q).collect()).collect());
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    #[test]
    fn agrees_with_dense_kernel() {
        let f = FieldSpec::Rationals;
        let m = Matrix::from_i64(f, 3, 5, &[1, 2, 0, 1, 0, 0, 0, 1, 3, 1, 1, 2, 1, 4, 1]);
        let mut e = SparseEchelon::new(f, 5);
        for i in 0..3 {
            e.push(m.row(i).iter().cloned().enumerate());
        }
        assert_eq!(e.rank(), m.rank());
        let k = e.kernel();
        assert_eq!(k, m.kernel_basis());
    }

    #[test]
    fn multimodular_matches_direct() {
        let f = FieldSpec::Rationals;
        let q = |n: i64, d: i64| Rat::new(n, d).unwrap();
        let rows = vec![
            vec![(0, q(1, 3)), (1, q(-7, 5)), (3, q(100003, 7))],
            vec![(1, q(2, 9)), (2, q(1, 1)), (4, q(-3, 11))],
            vec![(0, q(2, 3)), (2, q(5, 2)), (3, q(1, 1)), (4, q(1, 1))],
        ];
        let mut e = SparseEchelon::new(f, 5);
        for r in &rows {
            e.push(r.iter().map(|(c, x)| (*c, Scalar::Q(x.clone()))));
        }
        assert_eq!(kernel_multimodular(5, &rows, 20).unwrap(), e.kernel());
    }

    #[test]
    fn reconstruction() {
        let m = BigInt::from(1_000_000_007u64);
        let x = BigInt::from(3) * BigInt::from(powmod(7, 1_000_000_005, 1_000_000_007));
        assert_eq!(rational_reconstruct(&x, &m), Some(BigRational::new(3.into(), 7.into())));
    }
}
