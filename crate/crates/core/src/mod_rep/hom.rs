use super::meataxe::spin;
use super::module::GModule;
use crate::error::{Error, Result};
use crate::f2_linalg::{mat_mul, solve_sylvester_space, BitMatrix, EchelonBasis, Subspace};

/// Module homomorphisms `M → N` as k×n matrices `X` (k = dim M,
/// n = dim N) with `R^M_s·X = X·R^N_s`, by a direct Sylvester solve.
pub fn hom_space(m: &GModule, n: &GModule) -> Result<Subspace> {
    solve_sylvester_space(n.action(), m.action())
}

/// Dimension over GF(2) of the endomorphism ring, by a Sylvester solve
/// with both coefficient lists equal to the action matrices.
pub fn endo_ring_dim(m: &GModule) -> Result<usize> {
    Ok(hom_space(m, m)?.dim())
}

/// Dimension of `Hom(S, M)` for a module `S` generated by a single vector
/// `v`, without the k·n unknowns of the Sylvester system: a homomorphism
/// is fixed by the image `w` of `v`, and the spin-up of `v` turns every
/// relation among the spun vectors into a linear condition on `w`.
pub fn hom_dim_cyclic(s: &GModule, v: &[u64], m: &GModule) -> Result<usize> {
    let (k, n) = (s.dim(), m.dim());
    if spin(v, s.action()).dim() != k {
        return Err(Error::Precondition("vector does not generate the source module".into()));
    }
    // standard basis b_j (unreduced) with b_j = b_parent · R_gen, reduced
    // copies carry a tag recording their combination of standard vectors
    let tag_words = k.div_ceil(64);
    let mut std_vecs: Vec<Vec<u64>> = vec![v.to_vec()];
    let mut images: Vec<BitMatrix> = vec![BitMatrix::identity(n)];
    let mut red: Vec<(Vec<u64>, Vec<u64>, usize)> = Vec::new();
    let reduce = |x: &mut Vec<u64>, tag: &mut Vec<u64>, red: &[(Vec<u64>, Vec<u64>, usize)]| {
        for (row, t, p) in red {
            if (x[p / 64] >> (p % 64)) & 1 == 1 {
                x.iter_mut().zip(row).for_each(|(a, b)| *a ^= b);
                tag.iter_mut().zip(t).for_each(|(a, b)| *a ^= b);
            }
        }
    };
    let push_reduced = |x: Vec<u64>, tag: Vec<u64>, red: &mut Vec<(Vec<u64>, Vec<u64>, usize)>| {
        let wi = x.iter().position(|&w| w != 0).expect("independent vector");
        let p = wi * 64 + x[wi].trailing_zeros() as usize;
        red.push((x, tag, p));
    };
    let mut t0 = vec![0u64; tag_words];
    t0[0] = 1;
    push_reduced(v.to_vec(), t0, &mut red);

    let mut constraints = EchelonBasis::new(n);
    let mut j = 0;
    while j < std_vecs.len() {
        for (ga, gm) in s.action().iter().zip(m.action()) {
            let y = ga.vec_mul(&std_vecs[j]);
            let ty = mat_mul(&images[j], gm)?;
            let mut x = y.clone();
            let mut tag = vec![0u64; tag_words];
            reduce(&mut x, &mut tag, &red);
            if x.iter().any(|&w| w != 0) {
                let idx = std_vecs.len();
                tag[idx / 64] ^= 1 << (idx % 64);
                push_reduced(x, tag, &mut red);
                std_vecs.push(y);
                images.push(ty);
                continue;
            }
            // y = Σ_{c ∈ tag} b_c, so w·(T_y + Σ T_c) = 0 is required
            let mut c = ty;
            for idx in 0..std_vecs.len() {
                if (tag[idx / 64] >> (idx % 64)) & 1 == 1 {
                    c = c.add(&images[idx])?;
                }
            }
            let ct = c.transpose();
            for r in 0..n {
                if !ct.row_is_zero(r) {
                    constraints.insert(ct.row(r).to_vec());
                }
            }
            if constraints.dim() == n {
                return Ok(0);
            }
        }
        j += 1;
    }
    Ok(n - constraints.dim())
}

/// First standard basis vector, which generates any irreducible module.
pub(crate) fn first_basis_vector(dim: usize) -> Vec<u64> {
    let mut v = vec![0u64; dim.div_ceil(64)];
    v[0] = 1;
    v
}

/// Isomorphism of two irreducible modules: equal dimension and a nonzero
/// homomorphism, which by Schur's lemma is invertible.
pub fn irreducibles_isomorphic(a: &GModule, b: &GModule) -> Result<bool> {
    if a.dim() != b.dim() {
        return Ok(false);
    }
    Ok(hom_dim_cyclic(a, &first_basis_vector(a.dim()), b)? > 0)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::f2_linalg::vector_to_matrix;
    use crate::group_catalog::{make_psl2_char2, make_sym_alt};
    use crate::mod_rep::{build_qb, permutation_module};

    #[test]
    fn endo_dims_of_small_hearts() {
        let s3 = Arc::new(make_sym_alt(3, false).unwrap().group.unwrap());
        assert_eq!(endo_ring_dim(&build_qb(&s3).unwrap()).unwrap(), 1);
        let a4 = Arc::new(make_sym_alt(4, true).unwrap().group.unwrap());
        assert_eq!(endo_ring_dim(&build_qb(&a4).unwrap()).unwrap(), 2);
        let l2_8 = Arc::new(make_psl2_char2(3).unwrap().group.unwrap());
        assert_eq!(endo_ring_dim(&build_qb(&l2_8).unwrap()).unwrap(), 1);
    }

    #[test]
    fn hom_solutions_intertwine() {
        let g = Arc::new(make_psl2_char2(2).unwrap().group.unwrap());
        let f = permutation_module(&g).unwrap();
        let q = build_qb(&g).unwrap();
        let hs = hom_space(&q, &f).unwrap();
        for i in 0..hs.dim() {
            let x = vector_to_matrix(hs.basis().row(i), q.dim(), f.dim());
            for (a, b) in q.action().iter().zip(f.action()) {
                assert_eq!(mat_mul(a, &x).unwrap(), mat_mul(&x, b).unwrap());
            }
        }
    }

    /// The spin route and the Sylvester route agree on Hom dimensions.
    #[test]
    fn cyclic_route_matches_sylvester() {
        for (g, heart_cyclic) in [
            (make_sym_alt(3, false), true),
            (make_sym_alt(4, true), true),
            (make_psl2_char2(2), true),
            (make_psl2_char2(3), true),
        ] {
            let g = Arc::new(g.unwrap().group.unwrap());
            let q = build_qb(&g).unwrap();
            let f = permutation_module(&g).unwrap();
            let v = first_basis_vector(q.dim());
            assert!(heart_cyclic);
            for target in [&q, &f] {
                assert_eq!(
                    hom_dim_cyclic(&q, &v, target).unwrap(),
                    hom_space(&q, target).unwrap().dim(),
                    "{}",
                    g.degree()
                );
            }
            // F2^B is generated by a point indicator
            let e0 = first_basis_vector(f.dim());
            assert_eq!(hom_dim_cyclic(&f, &e0, &f).unwrap(), hom_space(&f, &f).unwrap().dim());
        }
    }

    #[test]
    fn rebased_module_is_isomorphic() {
        let g = Arc::new(make_psl2_char2(3).unwrap().group.unwrap());
        let q = build_qb(&g).unwrap();
        // upper unitriangular change of basis
        let mut p = BitMatrix::identity(8);
        for c in 1..8 {
            p.set(0, c, true);
            p.set(c - 1, c, true);
        }
        let r = q.change_basis(&p).unwrap();
        assert!(irreducibles_isomorphic(&q, &r).unwrap());
        assert!(irreducibles_isomorphic(&r, &q).unwrap());
    }
}
