use alloc::vec;
use alloc::vec::Vec;

use crate::angle::{check_degree, Angle};
use crate::error::{Error, Result};
use crate::kneading::{arc_label, cyclic_expression, CyclicExpression};
use crate::word::Word;

/// Itinerary of `t` with respect to the partition cut at `(theta+k)/d`:
/// digit `j` labels the arc containing `tau^j(t)`.
pub fn itinerary_of_angle(t: &Angle, theta: &Angle, length: usize) -> Result<Word> {
    t.same_degree(theta)?;
    if theta.is_zero() {
        return Err(Error::ZeroAngle);
    }
    let mut digits = Vec::with_capacity(length);
    let mut a = *t;
    for step in 0..length {
        digits.push(arc_label(&a, theta).ok_or(Error::BoundaryHit { angle: *t, step })?);
        a = a.tau();
    }
    Word::new(digits, theta.degree())
}

/// `(theta, eta)` with `theta = 1 - 1/(d^n - 1)` and `eta = tau(theta)`.
pub fn special_data(degree: u32, n: usize) -> Result<(Angle, Angle)> {
    check_degree(degree)?;
    if n < 2 {
        return Err(Error::PeriodOne);
    }
    let theta = Angle::from_word(&special_word(degree, n)?);
    Ok((theta, theta.tau()))
}

/// `(d-1)...(d-1)(d-2)`, the expansion of the special angle.
pub fn special_word(degree: u32, n: usize) -> Result<Word> {
    let mut digits = vec![(degree - 1) as u8; n];
    digits[n - 1] = (degree - 2) as u8;
    Word::new(digits, degree)
}

/// Outcome of the primitive/satellite criterion at a maximal angle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParabolicClass {
    /// The necessary conditions for a satellite root fail.
    PrimitiveCertified,
    /// The conditions hold; `last_digit = nu_t - 1`.
    SatelliteCandidate { expression: CyclicExpression, last_digit: u8 },
    /// `theta = 1 - 1/(d^n - 1)`, whose companion is `eta`.
    SpecialSatellite { eta: Angle },
}

impl ParabolicClass {
    pub fn verdict(&self) -> &'static str {
        match self {
            ParabolicClass::PrimitiveCertified => "PrimitiveCertified",
            ParabolicClass::SatelliteCandidate { .. } => "SatelliteCandidate",
            ParabolicClass::SpecialSatellite { .. } => "SpecialSatellite",
        }
    }
}

/// Properties (1) and (2) of the criterion, valid for any periodic
/// nonzero angle: the kneading sequence is cyclic and the last expansion
/// digit is `nu_t` or `nu_t - 1`.
pub fn satellite_conditions(theta: &Angle) -> Result<Option<CyclicExpression>> {
    let nu = theta.kneading_sequence()?;
    let Some(expr) = cyclic_expression(&nu) else {
        return Ok(None);
    };
    let last = theta.d_expansion()?.last();
    let nu_t = expr.nu_t();
    if last == nu_t || last + 1 == nu_t {
        Ok(Some(expr))
    } else {
        Ok(None)
    }
}

/// Classifies the landing point of the parameter ray at a maximal angle.
pub fn classify_angle(theta: &Angle) -> Result<ParabolicClass> {
    let n = theta.period()?;
    if n < 2 {
        return Err(Error::PeriodOne);
    }
    let (is_max, max) = theta.maximal_in_orbit()?;
    if !is_max {
        return Err(Error::NotMaximal { max });
    }
    let (special, eta) = special_data(theta.degree(), n)?;
    if *theta == special {
        return Ok(ParabolicClass::SpecialSatellite { eta });
    }
    let nu = theta.kneading_sequence()?;
    let Some(expression) = cyclic_expression(&nu) else {
        return Ok(ParabolicClass::PrimitiveCertified);
    };
    let last = theta.d_expansion()?.last();
    let nu_t = expression.nu_t();
    if nu_t >= 1 && last == nu_t - 1 {
        Ok(ParabolicClass::SatelliteCandidate { expression, last_digit: last })
    } else {
        Ok(ParabolicClass::PrimitiveCertified)
    }
}

/// One member of a beta family together with the pair of itineraries its
/// loop exchanges (`b` ends in the successor of `a`'s last digit mod d).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaAngle {
    pub index: i32,
    pub angle: Angle,
    pub a: Word,
    pub b: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaFamily {
    pub theta: Angle,
    pub betas: Vec<BetaAngle>,
}

/// The angles `beta_{nu_t-2}, ..., beta_0, beta_{-1}` attached to a
/// satellite candidate.
///
/// `beta_{-1}` is the expansion of `theta` with its last digit set to 0,
/// decreased by one in base `d`. For `t >= 2` and `nu_{t-1} >= 1` this is
/// `.w^(s-1) nu_1...(nu_{t-1}-1)(d-1)`; for `t = 1` it is
/// `.k...k(k-1)(d-1)` with `k = nu_1`.
pub fn beta_family(theta: &Angle) -> Result<BetaFamily> {
    let class = classify_angle(theta)?;
    let (expression, _) = match class {
        ParabolicClass::SatelliteCandidate { expression, last_digit } => (expression, last_digit),
        ParabolicClass::SpecialSatellite { .. } => return Err(Error::SpecialAngle),
        ParabolicClass::PrimitiveCertified => return Err(Error::NotCandidate(*theta)),
    };
    let d = theta.degree();
    let n = expression.n();
    let expansion = theta.d_expansion()?;
    let nu_t = expression.nu_t();
    let mut betas = Vec::new();
    for i in 2..=nu_t {
        let j = nu_t - i;
        let word = expansion.with_last(j)?;
        let angle = Angle::from_word(&word);
        if angle.period()? != n {
            return Err(Error::PeriodDrop(angle));
        }
        if classify_angle(&angle)? != ParabolicClass::PrimitiveCertified {
            return Err(Error::NotPrimitive(angle));
        }
        betas.push(BetaAngle { index: j as i32, angle, a: word.clone(), b: expansion.with_last(j + 1)? });
    }
    let word = expansion.with_last(0)?.decrement().ok_or(Error::Inconsistent("beta_{-1} underflows"))?;
    let angle = Angle::from_word(&word);
    if angle.period()? != n {
        return Err(Error::PeriodDrop(angle));
    }
    if satellite_conditions(&angle)?.is_some() {
        return Err(Error::NotPrimitive(angle));
    }
    let body = angle.kneading_sequence()?;
    if body.body() != &expansion.digits()[..n - 1] {
        return Err(Error::Inconsistent("beta_{-1} kneading body differs from theta's"));
    }
    betas.push(BetaAngle {
        index: -1,
        angle,
        a: expansion.with_last((d - 1) as u8)?,
        b: expansion.with_last(0)?,
    });
    Ok(BetaFamily { theta: *theta, betas })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn a(p: u64, q: u64, d: u32) -> Angle {
        Angle::new(p, q, d).unwrap()
    }

    #[test]
    fn itineraries() {
        let it = |t: Angle, th: Angle, l| itinerary_of_angle(&t, &th, l).unwrap().to_string();
        assert_eq!(it(a(2, 3, 2), a(6, 7, 2), 2), "10");
        assert_eq!(it(a(1, 7, 3), a(1, 7, 3), 5), "12102");
        assert_eq!(it(a(0, 1, 2), a(2, 3, 2), 3), "000");
        assert!(matches!(
            itinerary_of_angle(&a(3, 7, 2), &a(6, 7, 2), 2),
            Err(Error::BoundaryHit { step: 0, .. })
        ));
    }

    #[test]
    fn special() {
        assert_eq!(special_data(3, 4).unwrap(), (a(79, 80, 3), a(77, 80, 3)));
        assert_eq!(special_data(2, 3).unwrap(), (a(6, 7, 2), a(5, 7, 2)));
        assert_eq!(special_data(2, 2).unwrap(), (a(2, 3, 2), a(1, 3, 2)));
    }

    #[test]
    fn classification() {
        assert_eq!(classify_angle(&a(4, 7, 2)).unwrap(), ParabolicClass::PrimitiveCertified);
        assert_eq!(classify_angle(&a(6, 7, 2)).unwrap(), ParabolicClass::SpecialSatellite { eta: a(5, 7, 2) });
        // The orbit maximum of 19/80 lands at a primitive root; 19/80 itself
        // meets the satellite conditions.
        assert_eq!(classify_angle(&a(57, 80, 3)).unwrap(), ParabolicClass::PrimitiveCertified);
        assert!(satellite_conditions(&a(19, 80, 3)).unwrap().is_some());
        assert!(matches!(classify_angle(&a(19, 80, 3)), Err(Error::NotMaximal { .. })));
        assert_eq!(classify_angle(&a(1, 3, 4)), Err(Error::PeriodOne));
        assert_eq!(classify_angle(&a(3, 4, 3)).unwrap(), ParabolicClass::PrimitiveCertified);
        match classify_angle(&a(69, 80, 3)).unwrap() {
            ParabolicClass::SatelliteCandidate { expression, last_digit } => {
                assert_eq!(expression.w.to_string(), "21");
                assert_eq!(expression.s, 2);
                assert_eq!(last_digit, 0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn betas() {
        let fam = beta_family(&a(69, 80, 3)).unwrap();
        assert_eq!(fam.betas.len(), 1);
        assert_eq!(fam.betas[0].index, -1);
        assert_eq!(fam.betas[0].angle, Angle::from_word(&Word::parse("2112", 3).unwrap()));
        assert_eq!(beta_family(&a(3, 4, 3)), Err(Error::NotCandidate(a(3, 4, 3))));
        assert_eq!(beta_family(&a(14, 15, 4)), Err(Error::SpecialAngle));
        // t = 1: theta = .10 (d = 3) gives beta_{-1} = .02.
        let fam = beta_family(&a(3, 8, 3)).unwrap();
        assert_eq!(fam.betas.last().unwrap().angle, a(1, 4, 3));
        // nu_{t-1} = 0: the decrement borrows across two digits.
        let theta = Angle::from_word(&Word::parse("201200", 3).unwrap());
        let fam = beta_family(&theta).unwrap();
        let last = fam.betas.last().unwrap();
        assert_eq!(last.angle.d_expansion().unwrap().to_string(), "201122");
        assert_eq!((last.a.to_string(), last.b.to_string()), ("201202".into(), "201200".into()));
    }
}
