//! Boundary laws: per-vertex pairs `(z1', z2')` in `E_p^2`.
//!
//! A law stores values for non-root vertices. The pair at the root is never
//! free: it is induced through the compatibility product over the root's
//! `k + 1` children, which is exactly what makes the depth-0 marginal agree
//! with deeper volumes. Translation-invariant and period-2 forms derive their
//! per-vertex values from the level (period-2 laws read only its parity);
//! explicit tables index by breadth-first vertex id, so a table built for a
//! deep layout serves every shallower volume unchanged.

use padic::{EpElement, PadicNumber, Prime};

use crate::error::HcError;
use crate::gibbs::params::ModelParams;
use crate::tree::TreeLayout;
use crate::Result;

#[derive(Debug, Clone)]
pub enum LawForm {
    TranslationInvariant {
        z1: EpElement,
        z2: EpElement,
    },
    /// Values keyed by level parity (root level 0 is even).
    PeriodTwo {
        even: (EpElement, EpElement),
        odd: (EpElement, EpElement),
    },
    /// One entry per breadth-first vertex id; the root entry is ignored.
    Table(Vec<(EpElement, EpElement)>),
}

/// The free per-vertex factor `z_{0,x}`; measures are invariant under it.
#[derive(Debug, Clone, Default)]
pub enum Gauge {
    #[default]
    Unit,
    PerVertex(Vec<EpElement>),
}

#[derive(Debug, Clone)]
pub struct BoundaryLaw {
    form: LawForm,
    gauge: Gauge,
}

impl BoundaryLaw {
    pub fn translation_invariant(z1: EpElement, z2: EpElement) -> Self {
        BoundaryLaw {
            form: LawForm::TranslationInvariant { z1, z2 },
            gauge: Gauge::Unit,
        }
    }

    /// The diagonal law `z1' = z2' = t`.
    pub fn diagonal(t: EpElement) -> Self {
        BoundaryLaw::translation_invariant(t.clone(), t)
    }

    /// The law `z' = (1, 1)`, exact for activity 1.
    pub fn trivial(p: Prime, digits: u32) -> Self {
        let one = EpElement::new(PadicNumber::one(p, digits)).expect("1 lies in E_p");
        BoundaryLaw::diagonal(one)
    }

    pub fn period_two(even: (EpElement, EpElement), odd: (EpElement, EpElement)) -> Self {
        BoundaryLaw {
            form: LawForm::PeriodTwo { even, odd },
            gauge: Gauge::Unit,
        }
    }

    pub fn table(entries: Vec<(EpElement, EpElement)>) -> Self {
        BoundaryLaw {
            form: LawForm::Table(entries),
            gauge: Gauge::Unit,
        }
    }

    pub fn with_gauge(mut self, gauge: Gauge) -> Self {
        self.gauge = gauge;
        self
    }

    pub fn form(&self) -> &LawForm {
        &self.form
    }

    /// The stored pair at a non-root vertex.
    pub fn z_prime(&self, layout: &TreeLayout, x: usize) -> Result<(PadicNumber, PadicNumber)> {
        assert!(x > 0, "the root pair is induced; use root_z_prime");
        let pair = match &self.form {
            LawForm::TranslationInvariant { z1, z2 } => (z1.clone(), z2.clone()),
            LawForm::PeriodTwo { even, odd } => {
                if layout.level_of(x).is_multiple_of(2) {
                    even.clone()
                } else {
                    odd.clone()
                }
            }
            LawForm::Table(entries) => entries
                .get(x)
                .cloned()
                .ok_or(HcError::LawMissingVertex(x))?,
        };
        Ok((pair.0.into_inner(), pair.1.into_inner()))
    }

    /// Level-1 pairs seen from the root, one per child.
    fn level_one_values(
        &self,
        m: &ModelParams,
        layout: &TreeLayout,
    ) -> Result<Vec<(PadicNumber, PadicNumber)>> {
        let arity = m.order() as usize + 1;
        if layout.depth() >= 1 {
            return layout
                .children(0)
                .map(|y| self.z_prime(layout, y))
                .collect();
        }
        // A depth-0 layout carries no child ids; formulaic laws synthesize.
        let pair = match &self.form {
            LawForm::TranslationInvariant { z1, z2 } => (z1.clone(), z2.clone()),
            LawForm::PeriodTwo { odd, .. } => odd.clone(),
            LawForm::Table(_) => return Err(HcError::LawMissingVertex(1)),
        };
        Ok(vec![(pair.0.into_inner(), pair.1.into_inner()); arity])
    }

    /// The induced pair at the root:
    /// `z_i' = lambda * prod_{y in S(root)} (1 + z_i'(y)) / (z1'(y) + z2'(y))`.
    pub fn root_z_prime(
        &self,
        m: &ModelParams,
        layout: &TreeLayout,
    ) -> Result<(PadicNumber, PadicNumber)> {
        let lambda = m.lambda().padic();
        let mut acc = (lambda.clone(), lambda.clone());
        let one = PadicNumber::one(m.prime(), m.digits());
        for (z1, z2) in self.level_one_values(m, layout)? {
            let denom = z1.add(&z2);
            acc.0 = acc.0.mul(&one.add(&z1)).div(&denom)?;
            acc.1 = acc.1.mul(&one.add(&z2)).div(&denom)?;
        }
        Ok(acc)
    }

    /// The gauge factor `z_{0,x}`.
    pub fn gauge_at(&self, p: Prime, digits: u32, x: usize) -> Result<PadicNumber> {
        match &self.gauge {
            Gauge::Unit => Ok(PadicNumber::one(p, digits)),
            Gauge::PerVertex(gs) => gs
                .get(x)
                .map(|g| g.value().clone())
                .ok_or(HcError::LawMissingVertex(x)),
        }
    }

    /// The boundary weight `z_{state,x}`: the gauge for a vacant vertex,
    /// `gauge * z_i' / lambda` for an occupied one.
    pub fn state_weight(
        &self,
        m: &ModelParams,
        layout: &TreeLayout,
        x: usize,
        state: u8,
    ) -> Result<PadicNumber> {
        let gauge = self.gauge_at(m.prime(), m.digits(), x)?;
        if state == 0 {
            return Ok(gauge);
        }
        let (z1, z2) = if x == 0 {
            self.root_z_prime(m, layout)?
        } else {
            self.z_prime(layout, x)?
        };
        let z = if state == 1 { z1 } else { z2 };
        Ok(gauge.mul(&z).div(m.lambda().padic())?)
    }

    /// Materializes the law as an explicit table over the layout.
    pub fn to_table(&self, layout: &TreeLayout) -> Result<Vec<(EpElement, EpElement)>> {
        let mut entries = Vec::with_capacity(layout.vertex_count());
        for x in 0..layout.vertex_count() {
            let pair = if x == 0 {
                // Placeholder; the root entry of a table is never read.
                match &self.form {
                    LawForm::TranslationInvariant { z1, z2 } => {
                        (z1.value().clone(), z2.value().clone())
                    }
                    LawForm::PeriodTwo { even, .. } => {
                        (even.0.value().clone(), even.1.value().clone())
                    }
                    LawForm::Table(t) => {
                        let e = t.first().ok_or(HcError::LawMissingVertex(0))?;
                        (e.0.value().clone(), e.1.value().clone())
                    }
                }
            } else {
                self.z_prime(layout, x)?
            };
            entries.push((EpElement::new(pair.0)?, EpElement::new(pair.1)?));
        }
        Ok(entries)
    }

    /// A copy of the law with `z1'` at one vertex multiplied by `1 + p`: the
    /// smallest `E_p`-preserving deviation off a compatibility solution.
    pub fn perturbed(&self, m: &ModelParams, layout: &TreeLayout, vertex: usize) -> Result<Self> {
        assert!(vertex > 0, "perturb a non-root vertex");
        let mut entries = self.to_table(layout)?;
        let bump = PadicNumber::from_integer(1 + m.prime().get() as i64, m.prime(), m.digits());
        let e = entries
            .get_mut(vertex)
            .ok_or(HcError::LawMissingVertex(vertex))?;
        e.0 = EpElement::new(e.0.value().mul(&bump))?;
        Ok(BoundaryLaw {
            form: LawForm::Table(entries),
            gauge: self.gauge.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gibbs::params::Activity;
    use crate::tree::build_tree;
    use num_bigint::BigInt;

    fn p5() -> Prime {
        Prime::new(5).unwrap()
    }

    fn ep(num: i64, den: i64) -> EpElement {
        EpElement::new(
            PadicNumber::from_rational(&BigInt::from(num), &BigInt::from(den), p5(), 32).unwrap(),
        )
        .unwrap()
    }

    fn model(num: i64, den: i64) -> ModelParams {
        ModelParams::new(
            2,
            Activity::from_rational(&num.into(), &den.into(), p5(), 32).unwrap(),
        )
    }

    #[test]
    fn period_two_reads_level_parity() {
        let law = BoundaryLaw::period_two((ep(6, 1), ep(6, 1)), (ep(11, 1), ep(11, 1)));
        let layout = build_tree(2, 2).unwrap();
        let w1 = layout.level_range(1).next().unwrap();
        let w2 = layout.level_range(2).next().unwrap();
        assert_eq!(law.z_prime(&layout, w1).unwrap().0.mantissa(), Some(&11u32.into()));
        assert_eq!(law.z_prime(&layout, w2).unwrap().0.mantissa(), Some(&6u32.into()));
    }

    #[test]
    fn induced_root_pair_for_trivial_law() {
        // lambda = 1, z' = (1, 1): the induced root pair is again (1, 1).
        let m = model(1, 1);
        let law = BoundaryLaw::trivial(p5(), 32);
        let layout = build_tree(2, 1).unwrap();
        let (z1, z2) = law.root_z_prime(&m, &layout).unwrap();
        let one = PadicNumber::one(p5(), 32);
        assert!(z1.sub(&one).is_zero_like());
        assert!(z2.sub(&one).is_zero_like());
    }

    #[test]
    fn table_form_restricts_to_prefixes() {
        let layout = build_tree(2, 2).unwrap();
        let law = BoundaryLaw::translation_invariant(ep(6, 1), ep(11, 1));
        let table = BoundaryLaw::table(law.to_table(&layout).unwrap());
        let shallow = build_tree(2, 1).unwrap();
        for x in 1..shallow.vertex_count() {
            let a = law.z_prime(&shallow, x).unwrap();
            let b = table.z_prime(&shallow, x).unwrap();
            assert!(a.0.sub(&b.0).is_zero_like());
            assert!(a.1.sub(&b.1).is_zero_like());
        }
    }

    #[test]
    fn perturbation_bumps_exactly_one_entry() {
        let m = model(1, 1);
        let layout = build_tree(2, 1).unwrap();
        let law = BoundaryLaw::trivial(p5(), 32);
        let bumped = law.perturbed(&m, &layout, 1).unwrap();
        let (z1, _) = bumped.z_prime(&layout, 1).unwrap();
        assert_eq!(z1.mantissa(), Some(&6u32.into())); // 1 * (1 + 5)
        let (z1_other, _) = bumped.z_prime(&layout, 2).unwrap();
        assert_eq!(z1_other.mantissa(), Some(&1u32.into()));
    }

    #[test]
    fn missing_table_entry_is_reported() {
        let layout = build_tree(2, 2).unwrap();
        let law = BoundaryLaw::table(vec![(ep(1, 1), ep(1, 1)); 4]);
        assert!(matches!(
            law.z_prime(&layout, 9),
            Err(HcError::LawMissingVertex(9))
        ));
    }
}
