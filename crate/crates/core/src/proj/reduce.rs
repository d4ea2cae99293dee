use super::map::RationalMap;
use crate::arith::modp::{ModPForm, PrimeField, ProjPointFp};
use crate::error::{Error, Result};

/// The map reduced mod p, with the common factor of `F_p` and `G_p` removed.
#[derive(Clone, Debug)]
pub struct ReducedMap<K: PrimeField> {
    field: K,
    raw_f: ModPForm<K>,
    raw_g: ModPForm<K>,
    f1: ModPForm<K>,
    g1: ModPForm<K>,
    stripped_degree: usize,
}

pub fn reduce_map<K: PrimeField>(phi: &RationalMap, k: &K) -> ReducedMap<K> {
    // The joint content is 1, so at least one of the two reductions is nonzero.
    let raw_f = ModPForm::reduce_unchecked(phi.f(), k);
    let raw_g = ModPForm::reduce_unchecked(phi.g(), k);
    let h = raw_f.gcd(&raw_g).expect("normalized map cannot reduce to (0, 0)");
    let f1 = raw_f.div_exact(&h).expect("gcd divides F_p");
    let g1 = raw_g.div_exact(&h).expect("gcd divides G_p");
    let (f1, g1) = if f1.is_zero() || g1.is_zero() {
        // The quotient of zero keeps the full degree; collapse to a point.
        let one = ModPForm::new(k, vec![k.one()]);
        let zero = ModPForm::new(k, vec![k.zero()]);
        if f1.is_zero() {
            (zero, one)
        } else {
            (one, zero)
        }
    } else {
        (f1, g1)
    };
    ReducedMap {
        field: k.clone(),
        raw_f,
        raw_g,
        stripped_degree: phi.degree() - f1.degree(),
        f1,
        g1,
    }
}

impl<K: PrimeField> ReducedMap<K> {
    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn f1(&self) -> &ModPForm<K> {
        &self.f1
    }

    pub fn g1(&self) -> &ModPForm<K> {
        &self.g1
    }

    /// Coefficientwise reductions before stripping.
    pub fn raw(&self) -> (&ModPForm<K>, &ModPForm<K>) {
        (&self.raw_f, &self.raw_g)
    }

    pub fn stripped_degree(&self) -> usize {
        self.stripped_degree
    }

    pub fn reduced_degree(&self) -> usize {
        self.f1.degree()
    }

    /// All 2×2 minors of the coefficient rows of `(F_p, G_p)` vanish.
    pub fn is_constant(&self) -> bool {
        let k = &self.field;
        let a = self.raw_f.coeffs();
        let b = self.raw_g.coeffs();
        let n = a.len();
        for i in 0..n {
            for j in i + 1..n {
                let m = k.sub(&k.mul(&a[i], &b[j]), &k.mul(&a[j], &b[i]));
                if !k.is_zero(&m) {
                    return false;
                }
            }
        }
        true
    }

    pub fn evaluate(&self, p: &ProjPointFp<K>) -> Result<ProjPointFp<K>> {
        let u = self.f1.eval(&p.x, &p.y);
        let v = self.g1.eval(&p.x, &p.y);
        ProjPointFp::new(&self.field, u, v)
            .ok_or_else(|| Error::internal("stripped reduction vanishes at a point"))
    }
}

pub fn is_constant<K: PrimeField>(phi_p: &ReducedMap<K>) -> bool {
    phi_p.is_constant()
}

pub fn evaluate_mod_p<K: PrimeField>(
    phi_p: &ReducedMap<K>,
    p: &ProjPointFp<K>,
) -> Result<ProjPointFp<K>> {
    phi_p.evaluate(p)
}
