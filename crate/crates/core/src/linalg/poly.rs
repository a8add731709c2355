//! Univariate polynomials over a [`FieldSpec`], with the handful of
//! routines the decomposition engine needs: characteristic polynomials,
//! roots in the base field, and an irreducibility certificate over ℚ.

use super::field::{is_prime, FieldSpec, Scalar};
use super::matrix::Matrix;
use super::rat::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Scalar>,
    field: FieldSpec,
}

impl Poly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs, field }
    }

    pub fn zero(field: FieldSpec) -> Poly {
        Poly { coeffs: vec![], field }
    }

    pub fn constant(field: FieldSpec, c: Scalar) -> Poly {
        Poly::new(field, vec![c])
    }

    pub fn x(field: FieldSpec) -> Poly {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    /// x − r
    pub fn linear(field: FieldSpec, r: &Scalar) -> Poly {
        Poly::new(field, vec![r.neg(), field.one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = self.field.zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z).add(o.coeffs.get(i).unwrap_or(&z)))
            .collect();
        Poly::new(self.field, c)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.field);
        }
        let mut c = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        Poly::new(self.field, c)
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    /// Euclidean division: (quotient, remainder).
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let linv = d.lead().unwrap().inv().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(self.field), self.clone());
        }
        let mut q = vec![self.field.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].mul(&linv);
            if c.is_zero() {
                continue;
            }
            for (j, b) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].sub(&c.mul(b));
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(self.field, q), Poly::new(self.field, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| a.mul(&self.field.from_i64(i as i64)))
            .collect();
        Poly::new(self.field, c)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// p(m) for a square matrix, by Horner's rule.
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        let n = m.rows();
        let mut acc = Matrix::zeros(self.field, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m).add(&Matrix::identity(self.field, n).scale(c));
        }
        acc
    }

    /// self^e mod m
    pub fn powmod(&self, mut e: BigInt, m: &Poly) -> Poly {
        let mut r = Poly::constant(self.field, self.field.one()).rem(m);
        let mut b = self.rem(m);
        let two = BigInt::from(2);
        while e.is_positive() {
            if e.is_odd() {
                r = r.mul(&b).rem(m);
            }
            e /= &two;
            if e.is_positive() {
                b = b.mul(&b).rem(m);
            }
        }
        r
    }

    /// The roots lying in the base field, without multiplicity, sorted.
    pub fn roots(&self) -> Vec<Scalar> {
        if self.is_zero() {
            return vec![];
        }
        let mut out = match self.field {
            FieldSpec::Rationals => rational_roots(self),
            FieldSpec::PrimeField(p) => roots_mod_p(self, p),
        };
        out.sort_by(|a, b| format!("{a:?}").cmp(&format!("{b:?}")));
        out.dedup();
        out
    }

    /// Square-free decomposition over ℚ: `out[i]` is the product of the
    /// irreducible factors of multiplicity exactly i+1 (monic).
    pub fn squarefree_parts(&self) -> Vec<Poly> {
        assert_eq!(self.field, FieldSpec::Rationals);
        let f = self.monic();
        let mut out = Vec::new();
        let mut c = f.gcd(&f.derivative());
        let mut w = f.divrem(&c).0;
        while w.degree().unwrap_or(0) > 0 {
            let y = w.gcd(&c);
            out.push(w.divrem(&y).0.monic());
            c = c.divrem(&y).0;
            w = y;
        }
        out
    }

    /// Certifies irreducibility over ℚ by finding a prime modulo which the
    /// polynomial stays irreducible of the same degree. `false` means "not
    /// certified", not "reducible".
    pub fn certified_irreducible_over_q(&self) -> bool {
        assert_eq!(self.field, FieldSpec::Rationals);
        let Some(n) = self.degree() else { return false };
        if n <= 1 {
            return n == 1;
        }
        let ints = integer_coefficients(self);
        for l in (3u64..400).filter(|&l| is_prime(l)) {
            let lb = BigInt::from(l);
            if (ints[n].clone() % &lb).is_zero() {
                continue;
            }
            let fl = FieldSpec::PrimeField(l);
            let pl = Poly::new(
                fl,
                ints.iter().map(|c| fl.from_i64(c.mod_floor(&lb).to_i64().unwrap())).collect(),
            );
            if irreducible_mod_p(&pl) {
                return true;
            }
        }
        false
    }
}

/// Clears denominators: integer coefficients of a nonzero multiple.
fn integer_coefficients(f: &Poly) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in f.coeffs() {
        let d = c.as_rat().unwrap().denom();
        l = l.lcm(&d);
    }
    f.coeffs()
        .iter()
        .map(|c| {
            let r = c.as_rat().unwrap();
            r.numer() * (&l / r.denom())
        })
        .collect()
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

fn rational_roots(f: &Poly) -> Vec<Scalar> {
    let mut out = Vec::new();
    let mut g = f.clone();
    let q = FieldSpec::Rationals;
    while g.coeffs.first().is_some_and(|c| c.is_zero()) {
        g = Poly::new(q, g.coeffs[1..].to_vec());
        if !out.contains(&q.zero()) {
            out.push(q.zero());
        }
    }
    if g.degree().unwrap_or(0) == 0 {
        return out;
    }
    let ints = integer_coefficients(&g);
    let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
        return out;
    };
    for a in &ps {
        for b in &qs {
            for s in [1, -1] {
                let r = Rat::from_big(num_rational::BigRational::new(a * s, b.clone()));
                let x = Scalar::Q(r);
                if !out.contains(&x) && g.eval(&x).is_zero() {
                    out.push(x);
                }
            }
        }
    }
    out
}

fn roots_mod_p(f: &Poly, p: u64) -> Vec<Scalar> {
    let field = f.field;
    if p <= 4096 {
        return field.elements().unwrap().into_iter().filter(|x| f.eval(x).is_zero()).collect();
    }
    // Product of the distinct linear factors, then deterministic Rabin splitting.
    let x = Poly::x(field);
    let xp = x.powmod(BigInt::from(p), &f.monic());
    let lin = f.gcd(&xp.sub(&x));
    let mut out = Vec::new();
    split_linear(&lin, p, 0, &mut out);
    out
}

fn split_linear(f: &Poly, p: u64, mut shift: u64, out: &mut Vec<Scalar>) {
    let field = f.field;
    match f.degree() {
        None | Some(0) => {}
        Some(1) => {
            let m = f.monic();
            out.push(m.coeffs[0].neg());
        }
        Some(_) => loop {
            let a = Poly::new(field, vec![field.from_i64(shift as i64), field.one()]);
            let h = a.powmod(BigInt::from((p - 1) / 2), f).sub(&Poly::constant(field, field.one()));
            let g = f.gcd(&h);
            shift += 1;
            let d = g.degree().unwrap_or(0);
            if d > 0 && d < f.degree().unwrap() {
                split_linear(&g, p, shift, out);
                split_linear(&f.divrem(&g).0, p, shift, out);
                return;
            }
        },
    }
}

/// Rabin's irreducibility test over GF(p).
pub fn irreducible_mod_p(f: &Poly) -> bool {
    let FieldSpec::PrimeField(p) = f.field else { panic!("prime field expected") };
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    let f = f.monic();
    let x = Poly::x(f.field);
    let pb = BigInt::from(p);
    let frob = |k: usize| -> Poly {
        let mut r = x.clone();
        for _ in 0..k {
            r = r.powmod(pb.clone(), &f);
        }
        r
    };
    if !frob(n).sub(&x).rem(&f).is_zero() {
        return false;
    }
    let mut m = n;
    let mut r = 2;
    let mut primes = Vec::new();
    while m > 1 {
        if m % r == 0 {
            primes.push(r);
            while m % r == 0 {
                m /= r;
            }
        }
        r += 1;
    }
    primes.into_iter().all(|q| f.gcd(&frob(n / q).sub(&x)).degree() == Some(0))
}

/// Characteristic polynomial det(xI − m) via reduction to Hessenberg form.
pub fn charpoly(m: &Matrix) -> Poly {
    assert!(m.is_square());
    let field = m.field();
    let n = m.rows();
    let mut h: Vec<Vec<Scalar>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| !h[i][j].is_zero()) else { continue };
        if piv != j + 1 {
            h.swap(piv, j + 1);
            for row in h.iter_mut() {
                row.swap(piv, j + 1);
            }
        }
        let inv = h[j + 1][j].inv().unwrap();
        for k in j + 2..n {
            let f = h[k][j].mul(&inv);
            if f.is_zero() {
                continue;
            }
            for c in 0..n {
                let t = h[j + 1][c].mul(&f);
                h[k][c] = h[k][c].sub(&t);
            }
            for row in h.iter_mut() {
                let t = row[k].mul(&f);
                row[j + 1] = row[j + 1].add(&t);
            }
        }
    }
    let mut ps: Vec<Poly> = vec![Poly::constant(field, field.one())];
    for mm in 1..=n {
        let mut pm = Poly::linear(field, &h[mm - 1][mm - 1]).mul(&ps[mm - 1]);
        let mut prod = field.one();
        for i in 1..mm {
            prod = prod.mul(&h[mm - i][mm - i - 1]);
            let c = h[mm - 1 - i][mm - 1].mul(&prod);
            if !c.is_zero() {
                pm = pm.sub(&ps[mm - 1 - i].scale(&c));
            }
        }
        ps.push(pm);
    }
    ps.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn pz(f: FieldSpec, c: &[i64]) -> Poly {
        Poly::new(f, c.iter().map(|&x| f.from_i64(x)).collect())
    }

    #[test]
    fn charpoly_matches_cofactor_expansion() {
        let m = Matrix::from_i64(q(), 3, 3, &[2, 1, 0, 0, 2, 0, 1, 0, 3]);
        // det(xI - m) = (x-2)^2 (x-3) = x^3 - 7x^2 + 16x - 12
        assert_eq!(charpoly(&m), pz(q(), &[-12, 16, -7, 1]));
        assert!(charpoly(&m).eval_matrix(&m).is_zero());
    }

    #[test]
    fn roots_and_squarefree() {
        let f = pz(q(), &[-12, 16, -7, 1]);
        assert_eq!(f.roots(), vec![q().from_i64(2), q().from_i64(3)]);
        let parts = f.squarefree_parts();
        assert_eq!(parts[0], pz(q(), &[-3, 1]));
        assert_eq!(parts[1], pz(q(), &[-2, 1]));
        let g = Poly::new(q(), vec![q().parse_scalar("-1/4").unwrap(), q().zero(), q().one()]);
        assert_eq!(g.roots().len(), 2);
    }

    #[test]
    fn roots_large_prime() {
        let f = FieldSpec::prime(1_000_003).unwrap();
        let p = pz(f, &[5, 0, 0, 0, 0, 0]).add(&Poly::linear(f, &f.from_i64(17)).mul(&Poly::linear(f, &f.from_i64(99))));
        let brute: Vec<_> = [17i64, 99].iter().map(|&r| f.from_i64(r)).filter(|r| p.eval(r).is_zero()).collect();
        assert_eq!(p.roots().len(), brute.len());
        let p2 = Poly::linear(f, &f.from_i64(17)).mul(&Poly::linear(f, &f.from_i64(99))).mul(&pz(f, &[1, 0, 1]));
        let mut r = p2.roots();
        r.retain(|x| *x == f.from_i64(17) || *x == f.from_i64(99));
        assert_eq!(r.len(), 2);
    }

    #[test]
    fn irreducibility_certificates() {
        assert!(pz(q(), &[-2, 0, 1]).certified_irreducible_over_q());
        assert!(!pz(q(), &[-4, 0, 1]).certified_irreducible_over_q());
        let f2 = FieldSpec::prime(2).unwrap();
        assert!(irreducible_mod_p(&pz(f2, &[1, 1, 1])));
        assert!(!irreducible_mod_p(&pz(f2, &[1, 0, 1])));
    }
}
