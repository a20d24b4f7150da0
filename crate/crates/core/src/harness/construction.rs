//! Checks on the element `s₀` of the E6 dual torus and the groups built around it.

use crate::chevalley::{E6Elements, E6_SYMMETRY};
use crate::error::{Error, Result};
use crate::grouptool::examples::{cyclic, direct_product, symmetric};
use crate::rootsys::{classify_subsystem, RootSystem};
use crate::semisimple::{centralizer, relative_weyl_block, s0, DualTorusElement};
use crate::weyl::{longest_element, relative_weyl, WeylElement, WeylGroup};

use super::report::{Verdict, VerificationReport};
use super::table::levi_a2_a2;

/// Coroot coordinates of `3·s₀`.
pub const S0_COROOT: [i64; 6] = [2, 0, 1, 0, 1, 2];

pub fn odd_primes_below(n: u64) -> Vec<u64> {
    (3..n).filter(|&p| p % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

/// Facts about `s₀` for the field of `p` elements.
pub fn verify_construction(p: u64) -> Result<VerificationReport> {
    if p < 3 || odd_primes_below(p + 1).last() != Some(&p) {
        return Err(Error::Precondition(format!("{p} is not an odd prime")));
    }
    let phi = RootSystem::shared("E6")?;
    let s = s0(&phi)?;
    let from_vector = DualTorusElement::from_coroot_vector(&phi, &S0_COROOT, 3)?;
    let gamma_fixes_vector = E6_SYMMETRY.iter().enumerate().all(|(i, &j)| S0_COROOT[i] == S0_COROOT[j]);
    let gamma_fixes_s = s.apply_symmetry(&E6_SYMMETRY) == s;
    let p_i = i64::try_from(p).map_err(|_| Error::OutOfRange(p as usize))?;
    let central = s.power(p_i - 1).is_identity();
    let expected_central = p % 3 == 1;
    let all: Vec<usize> = (0..6).collect();
    let w0 = longest_element(&phi, &all);
    // F(s) = s^p twisted by w; for p = 3 neither twist applies
    let twist = match p % 3 {
        1 => Some(WeylElement::identity(&phi)),
        2 => Some(w0),
        _ => None,
    };
    let stable = twist.as_ref().map(|w| s.is_stable(&phi, w, p_i));
    let ok = from_vector == s && gamma_fixes_vector && gamma_fixes_s && central == expected_central && stable != Some(false);
    Ok(VerificationReport::new(
        format!("construction-p{p}"),
        "s0 is gamma-stable; (p-1)s0 is central iff p = 1 mod 3; s0 is F-stable for p = 1 mod 3 and w0F-stable for p = 2 mod 3",
        Verdict::from_bool(ok),
    )
    .input("type", "E6")
    .input("p", p)
    .witness("s0.pairing", format!("{:?}", s.pairing()))
    .witness("s0.coroot/3", format!("{S0_COROOT:?}"))
    .witness("coroot_vector_matches", from_vector == s)
    .witness("gamma_fixes_vector", gamma_fixes_vector)
    .witness("gamma_fixes_s0", gamma_fixes_s)
    .witness("p_mod_3", p % 3)
    .witness("(p-1)s0_central", central)
    .witness("stable_twist", ["none", "1", "w0"][(p % 3) as usize])
    .witness("twisted_stable", stable.map_or("n/a".to_string(), |b| b.to_string())))
}

/// `Δ(s₀)`, `|W(s₀)|` from the enumerated group and from the orbit, `|A(s₀)|`.
pub fn verify_s0_centralizer() -> Result<VerificationReport> {
    let weyl = WeylGroup::shared("E6")?;
    let phi = weyl.root_system();
    let s = s0(phi)?;
    let data = centralizer(phi, &s)?;
    let stab = s.stabilizer(&weyl).len() as u128;
    let ok = data.label == "A2+A2+A2"
        && stab == 648
        && data.stabilizer_order == 648
        && data.component_order == 3
        && data.isolated;
    Ok(VerificationReport::new(
        "construction-centralizer",
        "Delta(s0) has type A2+A2+A2, |W(s0)| = 648 and |A(s0)| = 3",
        Verdict::from_bool(ok),
    )
    .input("type", "E6")
    .witness("delta", &data.label)
    .witness("|W(s0)|.enumerated", stab)
    .witness("|W(s0)|.orbit", data.stabilizer_order)
    .witness("orbit", data.orbit_size)
    .witness("|W°(s0)|", data.reflection_order)
    .witness("|A(s0)|", data.component_order)
    .witness("isolated", data.isolated))
}

/// Relative Weyl group `N_W(W_L)/W_L` of the Levi `A2⁽¹⁾ + A2⁽²⁾`.
pub fn verify_howlett() -> Result<VerificationReport> {
    let weyl = WeylGroup::shared("E6")?;
    let phi = weyl.root_system();
    let roots = levi_a2_a2(phi)?;
    let sub = classify_subsystem(phi, &roots)?;
    let g = relative_weyl(&weyl, &sub)?;
    let fp = g.fingerprint();
    let reference = direct_product(&symmetric(3), &cyclic(2)).fingerprint();
    let ok = sub.label().to_string() == "A2+A2" && g.order() == 12 && fp == reference;
    Ok(VerificationReport::new(
        "howlett",
        "the relative Weyl group of the Levi subsystem A2(1)+A2(2) of E6 has order 12 and is S3 x C2",
        Verdict::from_bool(ok),
    )
    .input("type", "E6")
    .witness("levi", sub.label())
    .witness("order", g.order())
    .witness("fingerprint", fp)
    .witness("reference", reference))
}

/// `W(s₀)`-centralizer of the Weyl image of `v′` modulo the Levi part.
pub fn chevalley3_levi_order(el: &E6Elements) -> Result<usize> {
    let weyl = WeylGroup::shared("E6")?;
    let phi = weyl.root_system();
    let roots = levi_a2_a2(phi)?;
    let twist = el.adj.weyl_image(&el.v_prime)?;
    Ok(relative_weyl_block(&weyl, &s0(phi)?, &roots, &twist)?.order())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert_eq!(odd_primes_below(30), vec![3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn p7_and_p5() {
        for p in [3, 5, 7] {
            let r = verify_construction(p).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "{}", r.to_text());
        }
        assert!(verify_construction(9).is_err());
    }
}
