use exact_math::integer::factor_integer;
use exact_math::{fmt_rat, hnf_rows, parse_rat, BigInt, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::{QuatAlgebra, QuatElt, QuatError, Result};

/// A full-rank lattice in a quaternion algebra that is a subring containing 1.
/// Basis rows are coordinates with respect to 1, i, j, ij.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuatOrder {
    alg: QuatAlgebra,
    basis: [[Rat; 4]; 4],
    inv: [[Rat; 4]; 4],
}

/// JSON form: `{"algebra": [a, b], "basis": 4x4 rational strings}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderDoc {
    pub algebra: [String; 2],
    pub basis: [[String; 4]; 4],
}

fn invert(m: &[[Rat; 4]; 4]) -> Option<[[Rat; 4]; 4]> {
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.to_vec();
            row.extend((0..4).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            row
        })
        .collect();
    for c in 0..4 {
        let p = (c..4).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let pv = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x /= &pv;
        }
        for r in 0..4 {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in 0..8 {
                    let s = &f * &a[c][k];
                    a[r][k] -= s;
                }
            }
        }
    }
    Some(std::array::from_fn(|i| std::array::from_fn(|j| a[i][j + 4].clone())))
}

fn is_integral(x: &Rat) -> bool {
    x.is_integer()
}

impl QuatOrder {
    /// Validates that the rows span an order.
    pub fn new(alg: QuatAlgebra, basis: [[Rat; 4]; 4]) -> Result<Self> {
        let inv = invert(&basis).ok_or_else(|| QuatError::Invariant("basis is singular".into()))?;
        let o = QuatOrder { alg, basis, inv };
        if !o.contains(&o.alg.one()) {
            return Err(QuatError::Invariant("1 is not in the lattice".into()));
        }
        for i in 0..4 {
            let ei = o.basis_elt(i);
            if !is_integral(&ei.trd()) || !is_integral(&ei.nrd()) {
                return Err(QuatError::Invariant(format!("basis element {ei} is not integral")));
            }
            for j in 0..4 {
                let p = ei.mul(&o.basis_elt(j));
                if !o.contains(&p) {
                    return Err(QuatError::Invariant(format!(
                        "product of basis elements {i},{j} leaves the lattice"
                    )));
                }
            }
        }
        Ok(o)
    }

    /// Z<1, i, j, ij> for integral a, b.
    pub fn standard(alg: &QuatAlgebra) -> Result<Self> {
        if !alg.a().is_integer() || !alg.b().is_integer() {
            return Err(QuatError::Domain("standard order needs integral a, b".into()));
        }
        let basis = std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { Rat::one() } else { Rat::zero() })
        });
        Self::new(alg.clone(), basis)
    }

    /// The order whose lattice is spanned by the given elements.
    pub fn from_generators(alg: &QuatAlgebra, gens: &[QuatElt]) -> Result<Self> {
        let den = gens
            .iter()
            .flat_map(|g| g.coords().iter())
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let rows: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| g.coords().iter().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect())
            .collect();
        let h = hnf_rows(&rows);
        if h.len() != 4 {
            return Err(QuatError::Invariant("generators do not span a full lattice".into()));
        }
        let basis = std::array::from_fn(|i| {
            std::array::from_fn(|j| Rat::new(h[i][j].clone(), den.clone()))
        });
        Self::new(alg.clone(), basis)
    }

    pub fn algebra(&self) -> &QuatAlgebra {
        &self.alg
    }

    pub fn basis(&self) -> &[[Rat; 4]; 4] {
        &self.basis
    }

    pub fn basis_elt(&self, i: usize) -> QuatElt {
        self.alg.elt_rat(self.basis[i].clone())
    }

    pub fn basis_elts(&self) -> [QuatElt; 4] {
        std::array::from_fn(|i| self.basis_elt(i))
    }

    /// Coordinates of x in the order basis.
    pub fn coords(&self, x: &QuatElt) -> [Rat; 4] {
        let c = x.coords();
        std::array::from_fn(|j| (0..4).map(|k| &c[k] * &self.inv[k][j]).sum())
    }

    pub fn int_coords(&self, x: &QuatElt) -> Option<[BigInt; 4]> {
        let c = self.coords(x);
        c.iter().all(Rat::is_integer).then(|| c.map(|r| r.to_integer()))
    }

    pub fn contains(&self, x: &QuatElt) -> bool {
        x.algebra() == &self.alg && self.coords(x).iter().all(Rat::is_integer)
    }

    /// The element with the given integer coordinates in the order basis.
    pub fn elt(&self, c: [i64; 4]) -> QuatElt {
        self.elt_big(&c.map(BigInt::from))
    }

    pub fn elt_big(&self, c: &[BigInt; 4]) -> QuatElt {
        let v = std::array::from_fn(|j| {
            (0..4).map(|k| &self.basis[k][j] * Rat::from_integer(c[k].clone())).sum()
        });
        self.alg.elt_rat(v)
    }

    /// Matrix of trd(e_i e_j).
    pub fn gram(&self) -> [[BigInt; 4]; 4] {
        let e = self.basis_elts();
        std::array::from_fn(|i| std::array::from_fn(|j| e[i].mul(&e[j]).trd().to_integer()))
    }

    /// Positive square root of |det(trd(e_i e_j))|.
    pub fn reduced_discriminant(&self) -> BigInt {
        let g = self.gram();
        let m: Vec<Vec<BigInt>> = g.iter().map(|r| r.to_vec()).collect();
        let d = det(&m).abs();
        let r = d.sqrt();
        assert_eq!(&r * &r, d, "Gram determinant of an order is a square");
        r
    }

    pub fn is_maximal(&self) -> bool {
        self.reduced_discriminant() == self.alg.discriminant()
    }

    /// Coordinates of e_i e_j in the order basis: `table[i][j][k]`.
    pub fn structure_constants(&self) -> [[[BigInt; 4]; 4]; 4] {
        let e = self.basis_elts();
        std::array::from_fn(|i| {
            std::array::from_fn(|j| self.int_coords(&e[i].mul(&e[j])).expect("order is closed"))
        })
    }

    /// trd as an integer linear form in order coordinates.
    pub fn trd_form(&self) -> [i64; 4] {
        std::array::from_fn(|i| self.basis_elt(i).trd().to_integer().to_i64().expect("small"))
    }

    /// nrd as an integral quadratic form: diagonal nrd(e_i), off-diagonal (i < j)
    /// trd(e_i conj(e_j)).
    pub fn nrd_form(&self) -> [[i64; 4]; 4] {
        let e = self.basis_elts();
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let v = if i == j {
                    e[i].nrd()
                } else if i < j {
                    e[i].mul(&e[j].conj()).trd()
                } else {
                    Rat::zero()
                };
                v.to_integer().to_i64().expect("small")
            })
        })
    }

    /// Scales a nonzero element to one whose order coordinates are coprime integers.
    pub fn primitive_multiple(&self, x: &QuatElt) -> Result<QuatElt> {
        if x.is_zero() {
            return Err(QuatError::Domain("zero element".into()));
        }
        let c = self.coords(x);
        let den = c.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
        let ints: Vec<BigInt> = c.iter().map(|r| (r * Rat::from_integer(den.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
        Ok(x.scale(&Rat::new(den, g)))
    }

    /// Whether b O b^-1 = O.
    pub fn is_in_normalizer(&self, b: &QuatElt) -> Result<bool> {
        if b.is_zero() {
            return Err(QuatError::Domain("zero element".into()));
        }
        if b.algebra() != &self.alg {
            return Err(QuatError::MixedAlgebras);
        }
        let bi = b.inverse()?;
        Ok(self.basis_elts().iter().all(|e| self.contains(&b.mul(e).mul(&bi))))
    }

    /// The reduced-norm test: the primitive multiple of b in O has |nrd| dividing disc(B).
    pub fn norm_criterion(&self, b: &QuatElt) -> Result<bool> {
        let x = self.primitive_multiple(b)?;
        let n = x.nrd().to_integer().abs();
        Ok((self.alg.discriminant() % n).is_zero())
    }

    /// Matrix over Z of x -> b x b^-1 in the order basis (column k = image of e_k).
    pub fn conjugation_matrix(&self, b: &QuatElt) -> Result<[[BigInt; 4]; 4]> {
        if !self.is_in_normalizer(b)? {
            return Err(QuatError::Domain(format!("{b} does not normalize the order")));
        }
        let bi = b.inverse()?;
        let cols: Vec<[BigInt; 4]> = self
            .basis_elts()
            .iter()
            .map(|e| self.int_coords(&b.mul(e).mul(&bi)).expect("normalizer"))
            .collect();
        Ok(std::array::from_fn(|r| std::array::from_fn(|c| cols[c][r].clone())))
    }

    /// A maximal order containing this one, by repeated p-saturation.
    pub fn saturate_to_maximal(&self) -> QuatOrder {
        let disc = self.alg.discriminant();
        let mut o = self.clone();
        loop {
            let d = o.reduced_discriminant();
            if d == disc {
                return o;
            }
            let excess = &d / disc.gcd(&d);
            let mut primes: Vec<BigInt> = factor_integer(&excess).into_iter().map(|(p, _)| p).collect();
            for (p, _) in factor_integer(&d) {
                if (&d % (&p * &p)).is_zero() && !primes.contains(&p) {
                    primes.push(p);
                }
            }
            primes.sort();
            let mut grown = None;
            for p in &primes {
                if let Some(bigger) = o.enlarge_at(p) {
                    grown = Some(bigger);
                    break;
                }
            }
            o = grown.expect("a non-maximal order has an integral overorder of p-power index");
        }
    }

    /// Searches O/pO for v with v/p generating a larger order.
    fn enlarge_at(&self, p: &BigInt) -> Option<QuatOrder> {
        let pi = p.to_u64().expect("small prime");
        let pr = Rat::from_integer(p.clone());
        let n = pi.pow(4);
        for code in 1..n {
            let c: [BigInt; 4] = std::array::from_fn(|k| BigInt::from((code / pi.pow(k as u32)) % pi));
            let x = self.elt_big(&c).scale(&pr.recip());
            if !x.trd().is_integer() || !x.nrd().is_integer() {
                continue;
            }
            if let Some(o) = self.ring_closure(&x) {
                return Some(o);
            }
        }
        None
    }

    fn ring_closure(&self, x: &QuatElt) -> Option<QuatOrder> {
        let mut gens: Vec<QuatElt> = self.basis_elts().to_vec();
        gens.push(x.clone());
        for _ in 0..8 {
            let lat = lattice_basis(&self.alg, &gens)?;
            if lat.iter().any(|e| !e.trd().is_integer() || !e.nrd().is_integer()) {
                return None;
            }
            let mut next = lat.clone();
            for a in &lat {
                for b in &lat {
                    next.push(a.mul(b));
                }
            }
            let closed = lattice_basis(&self.alg, &next)?;
            if closed == lat {
                return QuatOrder::from_generators(&self.alg, &lat).ok();
            }
            gens = closed;
        }
        None
    }

    pub fn to_doc(&self) -> OrderDoc {
        OrderDoc {
            algebra: [fmt_rat(self.alg.a()), fmt_rat(self.alg.b())],
            basis: std::array::from_fn(|i| std::array::from_fn(|j| fmt_rat(&self.basis[i][j]))),
        }
    }

    pub fn from_doc(doc: &OrderDoc) -> Result<Self> {
        let bad = |e: exact_math::MathError| QuatError::Document(e.to_string());
        let alg = QuatAlgebra::new(parse_rat(&doc.algebra[0]).map_err(bad)?, parse_rat(&doc.algebra[1]).map_err(bad)?)?;
        let mut basis: [[Rat; 4]; 4] = Default::default();
        for i in 0..4 {
            for j in 0..4 {
                basis[i][j] = parse_rat(&doc.basis[i][j]).map_err(bad)?;
            }
        }
        Self::new(alg, basis)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: OrderDoc = serde_json::from_str(s).map_err(|e| QuatError::Document(e.to_string()))?;
        Self::from_doc(&doc)
    }
}

fn lattice_basis(alg: &QuatAlgebra, gens: &[QuatElt]) -> Option<Vec<QuatElt>> {
    let den = gens
        .iter()
        .flat_map(|g| g.coords().iter())
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let rows: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|g| g.coords().iter().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect())
        .collect();
    let h = hnf_rows(&rows);
    (h.len() == 4).then(|| {
        h.iter()
            .map(|r| alg.elt_rat(std::array::from_fn(|j| Rat::new(r[j].clone(), den.clone()))))
            .collect()
    })
}

/// Determinant over Z by fraction-free elimination.
pub(crate) fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_math::{int, rat};

    pub(crate) fn disc6_maximal() -> QuatOrder {
        let alg = QuatAlgebra::from_ints(-1, 6);
        let h = rat(1, 2);
        let z = int(0);
        let o = int(1);
        let basis = [
            [o.clone(), z.clone(), z.clone(), z.clone()],
            [h.clone(), h.clone(), z.clone(), h.clone()],
            [h.clone(), -h.clone(), z.clone(), h.clone()],
            [z.clone(), z.clone(), h.clone(), h.clone()],
        ];
        QuatOrder::new(alg, basis).unwrap()
    }

    #[test]
    fn determinant() {
        let m = vec![
            vec![BigInt::from(2), BigInt::from(1), BigInt::from(0)],
            vec![BigInt::from(1), BigInt::from(3), BigInt::from(1)],
            vec![BigInt::from(0), BigInt::from(1), BigInt::from(4)],
        ];
        assert_eq!(det(&m), BigInt::from(18));
    }

    #[test]
    fn known_maximal_order() {
        let o = disc6_maximal();
        assert_eq!(o.reduced_discriminant(), BigInt::from(6));
        assert!(o.is_maximal());
        assert_eq!(o.saturate_to_maximal(), o);
    }

    #[test]
    fn standard_order_discriminant() {
        let o = QuatOrder::standard(&QuatAlgebra::from_ints(-1, 6)).unwrap();
        // |det diag(2, 2a, 2b, -2ab)| = 16 a^2 b^2, so the reduced discriminant is 4|ab|.
        assert_eq!(o.reduced_discriminant(), BigInt::from(24));
        assert!(!o.is_maximal());
    }

    #[test]
    fn saturation_reaches_discriminant() {
        for (a, b) in [(-1, 6), (-3, 6), (-1, 3), (2, 5), (-2, 5), (-1, 22), (-3, 10)] {
            let alg = QuatAlgebra::from_ints(a, b);
            let o = QuatOrder::standard(&alg).unwrap().saturate_to_maximal();
            assert_eq!(o.reduced_discriminant(), alg.discriminant(), "({a},{b})");
            for e in o.basis_elts() {
                assert!(e.trd().is_integer() && e.nrd().is_integer());
            }
            assert!(o.contains(&alg.i()) && o.contains(&alg.j()));
        }
    }

    #[test]
    fn saturation_contains_paper_element() {
        let alg = QuatAlgebra::from_ints(-1, 6);
        let o = QuatOrder::standard(&alg).unwrap().saturate_to_maximal();
        let x = alg.elt_rat([rat(1, 2), rat(1, 2), int(0), rat(1, 2)]);
        // Maximal orders containing the standard order need not be unique; check the
        // given one or record that ours differs.
        let m = disc6_maximal();
        assert!(m.contains(&x));
        assert!(o.is_maximal());
    }

    #[test]
    fn invalid_lattice_rejected() {
        let alg = QuatAlgebra::from_ints(-1, 6);
        let h = rat(1, 2);
        let z = int(0);
        let o = int(1);
        let basis = [
            [o.clone(), z.clone(), z.clone(), z.clone()],
            [z.clone(), h.clone(), z.clone(), z.clone()],
            [z.clone(), z.clone(), o.clone(), z.clone()],
            [z.clone(), z.clone(), z.clone(), o.clone()],
        ];
        assert!(matches!(QuatOrder::new(alg, basis), Err(QuatError::Invariant(_))));
    }

    #[test]
    fn normalizer_examples() {
        let o = disc6_maximal();
        let alg = o.algebra().clone();
        assert!(o.is_in_normalizer(&alg.j()).unwrap());
        assert!(o.is_in_normalizer(&alg.one()).unwrap());
        assert!(o.is_in_normalizer(&alg.one().add(&alg.i())).unwrap());
        let x = alg.one().add(&alg.j());
        assert_eq!(x.nrd(), int(-5));
        assert!(!o.is_in_normalizer(&x).unwrap());
        assert!(!o.norm_criterion(&x).unwrap());
        assert!(o.is_in_normalizer(&alg.elt([0, 0, 0, 0])).is_err());
    }

    #[test]
    fn json_round_trip() {
        let o = disc6_maximal();
        let s = o.to_json();
        assert!(s.contains("\"1/2\""));
        assert_eq!(QuatOrder::from_json(&s).unwrap(), o);
        assert!(QuatOrder::from_json("{\"algebra\":[\"0\",\"1\"]}").is_err());
    }
}
