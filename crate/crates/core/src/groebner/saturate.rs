use super::buchberger::buchberger_unless_power;
use super::{buchberger, GbOptions, GroebnerError, Ideal};
use crate::exactpoly::{Monomial, Poly, PolyError, RingRef, VarRing, MAX_VARS};

/// Same variables as `ring`, with `var` moved to the end.
fn ring_with_last(ring: &RingRef, var: &str, tag: &str) -> Result<RingRef, PolyError> {
    let mut names: Vec<String> = ring.vars().iter().filter(|v| *v != var).cloned().collect();
    names.push(var.to_string());
    VarRing::from_names(format!("{}|{}", ring.name(), tag), names)
}

/// `I : v^∞` for homogeneous `I` in a ring whose last variable is `v`. Under
/// graded reverse lexicographic order with `v` last, stripping every power of
/// `v` from the elements of a Gröbner basis of `I` gives a Gröbner basis of
/// the saturation.
fn saturate_last_var(ideal: &Ideal, opts: &GbOptions) -> Result<Ideal, GroebnerError> {
    let ring = ideal.ring().clone();
    let v = ring.nvars() - 1;
    let Some(gb) = buchberger_unless_power(ideal, v, opts)? else {
        return Ideal::new(&ring, vec![Poly::one(&ring)]);
    };
    let gens: Vec<Poly> = gb
        .basis()
        .iter()
        .map(|g| g.div_var_power(v, g.var_power_dividing(v)).expect("divisible"))
        .collect();
    Ideal::new(&ring, gens)
}

fn homogenize(p: &Poly, target: &RingRef, t_index: usize) -> Result<Poly, PolyError> {
    let d = p.total_degree().unwrap_or(0);
    let lifted = p.embed_into(target)?;
    let terms = lifted.terms().map(|(m, c)| {
        let mut exps = m.exponents(target.nvars());
        exps[t_index] = d - m.degree();
        (Monomial::from_exponents(&exps), c.clone())
    });
    Ok(Poly::from_terms(target, terms))
}

/// `I : v^∞`, returned through its reduced Gröbner basis (in the original
/// ring's order) as generator list.
///
/// Inhomogeneous ideals are homogenized with an auxiliary variable first;
/// this needs one spare variable slot.
pub fn saturate_by(ideal: &Ideal, var: &str, opts: &GbOptions) -> Result<Ideal, GroebnerError> {
    let ring = ideal.ring().clone();
    ring.require_index(var)?;

    let saturated_gens: Vec<Poly> = if ideal.is_homogeneous() {
        let work_ring = ring_with_last(&ring, var, &format!("{var}-last"))?;
        let moved = ideal
            .gens()
            .iter()
            .map(|g| g.embed_into(&work_ring))
            .collect::<Result<Vec<_>, _>>()?;
        let sat = saturate_last_var(&Ideal::new(&work_ring, moved)?, opts)?;
        sat.gens()
            .iter()
            .map(|g| g.embed_into(&ring))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        if ring.nvars() >= MAX_VARS {
            return Err(PolyError::InvalidRing(format!(
                "no spare variable to homogenize {}",
                ring.name()
            ))
            .into());
        }
        let t_name = (0..)
            .map(|i| format!("T{i}_hom"))
            .find(|n| ring.index_of(n).is_none())
            .expect("fresh name");
        // order: original variables except v, then t, then v
        let mut names: Vec<String> = ring.vars().iter().filter(|x| *x != var).cloned().collect();
        names.push(t_name.clone());
        names.push(var.to_string());
        let hom_ring = VarRing::from_names(format!("{}|hom", ring.name()), names)?;
        let t_index = hom_ring.nvars() - 2;

        let gb = buchberger(ideal, opts)?;
        let hom_gens = gb
            .basis()
            .iter()
            .map(|g| homogenize(g, &hom_ring, t_index))
            .collect::<Result<Vec<_>, _>>()?;
        let sat = saturate_last_var(&Ideal::new(&hom_ring, hom_gens)?, opts)?;

        let images: Vec<Poly> = hom_ring
            .vars()
            .iter()
            .map(|name| {
                if *name == t_name {
                    Poly::one(&ring)
                } else {
                    Poly::var(&ring, name).expect("original variable")
                }
            })
            .collect();
        sat.gens().iter().map(|g| g.substitute_all(&images, &ring)).collect()
    };

    let gb = buchberger(&Ideal::new(&ring, saturated_gens)?, opts)?;
    Ideal::new(&ring, gb.basis().to_vec())
}
