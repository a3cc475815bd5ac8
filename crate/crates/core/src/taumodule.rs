//! τ-modules: free modules of finite rank over a difference ring with a
//! σ-semilinear structure map, stored as the structure matrix Φ.
//!
//! Convention, fixed globally and asserted in tests: column j of Φ holds the
//! coordinates of τ(e_j), so apply_tau(v) = Φ·σ(v). The module is dualizable
//! when det Φ is invertible (nonzero rational function globally, unit times
//! a z-power locally).

use crate::error::{Error, Result};
use crate::matrix::{self, Matrix};
use crate::ring::{Field, SigmaRing};

#[derive(Clone, PartialEq, Debug)]
pub struct TauModule<R: SigmaRing> {
    pub ring: R,
    pub phi: Matrix<R::Elem>,
}

/// σ applied entrywise to a matrix, n times.
pub fn mat_sigma<R: SigmaRing>(ring: &R, m: &Matrix<R::Elem>, n: u32) -> Matrix<R::Elem> {
    m.map(|x| ring.sigma_pow(x, n))
}

impl<R: SigmaRing> TauModule<R> {
    pub fn new(ring: R, phi: Matrix<R::Elem>) -> Result<Self> {
        if phi.rows != phi.cols {
            return Err(Error::domain("structure matrix must be square"));
        }
        Ok(TauModule { ring, phi })
    }

    pub fn rank(&self) -> usize {
        self.phi.rows
    }

    /// The unit object 1 of the tensor category: rank 1, Φ = (1).
    pub fn unit(ring: R) -> Self {
        let one = matrix::identity(&ring, 1);
        TauModule { ring, phi: one }
    }

    /// τ(v) = Φ·σ(v) for a coordinate vector v.
    pub fn apply_tau(&self, v: &[R::Elem]) -> Vec<R::Elem> {
        let sv: Vec<R::Elem> = v.iter().map(|x| self.ring.sigma(x)).collect();
        matrix::mat_vec(&self.ring, &self.phi, &sv)
    }

    /// Matrix of τ^n: Φ_n = Φ·σ(Φ)·σ²(Φ)···σ^(n−1)(Φ).
    pub fn tau_power_matrix(&self, n: u32) -> Result<Matrix<R::Elem>> {
        if n == 0 {
            return Err(Error::domain("tau power requires n ≥ 1"));
        }
        let mut acc = self.phi.clone();
        for i in 1..n {
            let s = mat_sigma(&self.ring, &self.phi, i);
            acc = matrix::mat_mul(&self.ring, &acc, &s);
        }
        Ok(acc)
    }

    /// M ⊗ N: structure matrix = Kronecker product, row-major basis order
    /// e_i⊗f_j.
    pub fn tensor(&self, other: &TauModule<R>) -> Result<TauModule<R>> {
        if self.ring != other.ring {
            return Err(Error::domain("tensor of modules over different rings"));
        }
        Ok(TauModule {
            ring: self.ring.clone(),
            phi: matrix::kronecker(&self.ring, &self.phi, &other.phi),
        })
    }

    /// ⋀ⁿM: n-th compound matrix, minors over lexicographic index subsets.
    pub fn exterior_power(&self, n: usize) -> Result<TauModule<R>> {
        if n > self.rank() {
            return Err(Error::domain(format!(
                "exterior power {n} exceeds rank {}",
                self.rank()
            )));
        }
        Ok(TauModule {
            ring: self.ring.clone(),
            phi: matrix::compound(&self.ring, &self.phi, n),
        })
    }

    pub fn det(&self) -> R::Elem {
        matrix::det(&self.ring, &self.phi)
    }
}

impl<R: SigmaRing + Field> TauModule<R> {
    /// M^∨ with structure matrix Ψ = (Φ^T)^(−1), the unique choice making
    /// the evaluation pairing τ-equivariant: ⟨τf, τm⟩ = σ⟨f, m⟩.
    pub fn dual(&self) -> Result<TauModule<R>> {
        let inv = matrix::inverse(&self.ring, &self.phi.transpose())?;
        Ok(TauModule {
            ring: self.ring.clone(),
            phi: inv,
        })
    }

    /// Inner hom: hom(M, N) ≅ M^∨ ⊗ N.
    pub fn inner_hom(&self, other: &TauModule<R>) -> Result<TauModule<R>> {
        self.dual()?.tensor(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::{Fq, FrobField};
    use crate::matrix::{mat_eq, mat_mul};
    use crate::ratfunc::{FuncField, GlobalRing, RatFunc};
    use crate::ring::{Field, Ring};

    type GR = GlobalRing<FrobField>;

    fn global_q2(q: u64) -> GR {
        // F_q(t) ⊗ GF(q²)
        let p = Fq::of_order(q).unwrap().p;
        let k = FrobField::new(Fq::new(p, 2 * crate::fq::q_log_p(p, q).unwrap()).unwrap(), q).unwrap();
        GlobalRing::new(k)
    }

    fn elem(e: &GR, c: crate::fq::FqElem) -> RatFunc<crate::fq::FqElem> {
        e.rf.from_poly(vec![c])
    }

    #[test]
    fn tau_power_two_by_two() {
        // Φ = [[0,t],[1,c]] over F_q(t)⊗GF(q²):
        // Φ₂ = Φ·σ(Φ) = [[t, t·c^q],[c, t + c^(q+1)]]
        let e = global_q2(3);
        let k = e.coeff_field().clone();
        let c = k.fq.gen();
        let t = e.rf.var_elem();
        let phi = Matrix::from_rows(vec![
            vec![e.zero(), t.clone()],
            vec![e.one(), elem(&e, c.clone())],
        ]);
        let m = TauModule::new(e.clone(), phi.clone()).unwrap();
        assert!(mat_eq(&e, &m.tau_power_matrix(1).unwrap(), &phi));
        let p2 = m.tau_power_matrix(2).unwrap();
        let cq = k.sigma(&c);
        let expected = Matrix::from_rows(vec![
            vec![t.clone(), e.mul(&t, &elem(&e, cq.clone()))],
            vec![
                elem(&e, c.clone()),
                e.add(&t, &elem(&e, k.mul(&c, &cq))),
            ],
        ]);
        assert!(mat_eq(&e, &p2, &expected));
    }

    #[test]
    fn tau_power_rank1_over_funcfield() {
        // Φ = (ξ), n=2 → (ξ^(q+1))
        let f = FuncField::new(Fq::new(3, 1).unwrap(), "xi");
        let xi = f.rf.var_elem();
        let m = TauModule::new(f.clone(), Matrix::from_rows(vec![vec![xi.clone()]])).unwrap();
        let p2 = m.tau_power_matrix(2).unwrap();
        assert_eq!(p2.at(0, 0), &f.pow(&xi, 4));
    }

    #[test]
    fn tau_power_additivity() {
        // Φ_{a+b} = Φ_a · σ^a(Φ_b)
        let e = global_q2(2);
        let k = e.coeff_field().clone();
        let t = e.rf.var_elem();
        let g = elem(&e, k.fq.gen());
        let phi = Matrix::from_rows(vec![
            vec![g.clone(), t.clone()],
            vec![e.one(), e.add(&t, &g)],
        ]);
        let m = TauModule::new(e.clone(), phi).unwrap();
        for a in 1..=3u32 {
            for b in 1..=3u32 {
                let lhs = m.tau_power_matrix(a + b).unwrap();
                let rhs = mat_mul(
                    &e,
                    &m.tau_power_matrix(a).unwrap(),
                    &mat_sigma(&e, &m.tau_power_matrix(b).unwrap(), a),
                );
                assert!(mat_eq(&e, &lhs, &rhs));
            }
        }
    }

    #[test]
    fn apply_tau_semilinear() {
        let e = global_q2(3);
        let k = e.coeff_field().clone();
        let t = e.rf.var_elem();
        let phi = Matrix::from_rows(vec![
            vec![e.zero(), t.clone()],
            vec![e.one(), elem(&e, k.fq.gen())],
        ]);
        let m = TauModule::new(e.clone(), phi).unwrap();
        let v = vec![e.one(), t.clone()];
        let c = e.mul(&elem(&e, k.fq.gen()), &t);
        let cv: Vec<_> = v.iter().map(|x| e.mul(&c, x)).collect();
        let lhs = m.apply_tau(&cv);
        let tau_v = m.apply_tau(&v);
        let sc = e.sigma(&c);
        let rhs: Vec<_> = tau_v.iter().map(|x| e.mul(&sc, x)).collect();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn dual_examples() {
        let e = global_q2(3);
        let k = e.coeff_field().clone();
        // unit object self-dual
        let u = TauModule::unit(e.clone());
        assert!(mat_eq(&e, &u.dual().unwrap().phi, &u.phi));
        // Φ = [[0,t],[1,c]] → Ψ = [[−c/t, 1],[1/t, 0]]
        let t = e.rf.var_elem();
        let c = elem(&e, k.fq.gen());
        let phi = Matrix::from_rows(vec![
            vec![e.zero(), t.clone()],
            vec![e.one(), c.clone()],
        ]);
        let m = TauModule::new(e.clone(), phi.clone()).unwrap();
        let psi = m.dual().unwrap().phi;
        let ti = e.inv(&t).unwrap();
        let expected = Matrix::from_rows(vec![
            vec![e.neg(&e.mul(&c, &ti)), ti.clone()],
            vec![e.one(), e.zero()],
        ]);
        assert!(mat_eq(&e, &psi, &expected));
        // pairing invariance: Ψ^T·Φ = I makes ⟨τf, τm⟩ = σ⟨f, m⟩
        assert!(mat_eq(
            &e,
            &mat_mul(&e, &psi.transpose(), &phi),
            &crate::matrix::identity(&e, 2)
        ));
        // double dual is the identity on structure matrices
        assert!(mat_eq(&e, &m.dual().unwrap().dual().unwrap().phi, &m.phi));
    }

    #[test]
    fn dual_rejects_singular() {
        let e = global_q2(3);
        let phi = Matrix::from_rows(vec![vec![e.zero()]]);
        let m = TauModule::new(e.clone(), phi).unwrap();
        assert!(m.dual().is_err());
    }

    #[test]
    fn tensor_and_exterior_examples() {
        let e = global_q2(3);
        let t = e.rf.var_elem();
        // Carlitz ⊗ Carlitz: (t−1) ⊗ (t−1) = ((t−1)²)
        let tm1 = e.sub(&t, &e.one());
        let car = TauModule::new(e.clone(), Matrix::from_rows(vec![vec![tm1.clone()]])).unwrap();
        let sq = car.tensor(&car).unwrap();
        assert_eq!(sq.phi.at(0, 0), &e.mul(&tm1, &tm1));
        // M ⊗ unit has the same matrix
        let phi = Matrix::from_rows(vec![
            vec![e.zero(), t.clone()],
            vec![e.one(), e.zero()],
        ]);
        let m = TauModule::new(e.clone(), phi.clone()).unwrap();
        let mu = m.tensor(&TauModule::unit(e.clone())).unwrap();
        assert!(mat_eq(&e, &mu.phi, &phi));
        // exterior powers: n=0 → unit, n=1 → M, n=r → det
        assert!(mat_eq(
            &e,
            &m.exterior_power(0).unwrap().phi,
            &TauModule::unit(e.clone()).phi
        ));
        assert!(mat_eq(&e, &m.exterior_power(1).unwrap().phi, &phi));
        let top = m.exterior_power(2).unwrap();
        assert_eq!(top.rank(), 1);
        assert_eq!(top.phi.at(0, 0), &e.neg(&t));
        assert!(m.exterior_power(3).is_err());
    }

    #[test]
    fn det_tensor_identity() {
        // det(Φ_M ⊗ Φ_N) = det(Φ_M)^rN · det(Φ_N)^rM
        let e = global_q2(2);
        let t = e.rf.var_elem();
        let a = TauModule::new(
            e.clone(),
            Matrix::from_rows(vec![
                vec![e.one(), t.clone()],
                vec![e.zero(), e.sub(&t, &e.one())],
            ]),
        )
        .unwrap();
        let b = TauModule::new(
            e.clone(),
            Matrix::from_rows(vec![
                vec![e.zero(), t.clone()],
                vec![e.one(), e.one()],
            ]),
        )
        .unwrap();
        let lhs = a.tensor(&b).unwrap().det();
        let rhs = e.mul(&e.pow(&a.det(), 2), &e.pow(&b.det(), 2));
        assert!(e.elem_eq(&lhs, &rhs));
    }
}
