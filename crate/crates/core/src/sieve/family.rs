use std::cmp::Ordering;
use std::fmt;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::qfield::{FieldParams, OKElt};
use crate::residue::{coprime_residues, primes_up_to_norm};

/// Which base moduli `q` (with `0 < N(q) ≤ Q`) a family is built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyKind {
    /// Every nonzero `q`, modulus `q`.
    All,
    /// Every nonzero `q`, modulus `q^k`.
    Power(u32),
    /// Every nonzero `q`, modulus `q²`.
    Square,
    /// Prime elements `q`, modulus `q`.
    Prime,
    /// An explicit multiset of moduli, used as given.
    Custom(Vec<OKElt>),
}

impl FamilyKind {
    /// The exponent applied to each base modulus.
    pub fn exponent(&self) -> u32 {
        match self {
            FamilyKind::Power(k) => *k,
            FamilyKind::Square => 2,
            _ => 1,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::All => "all",
            FamilyKind::Power(_) => "power",
            FamilyKind::Square => "square",
            FamilyKind::Prime => "prime",
            FamilyKind::Custom(_) => "custom",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A sieve node `r/m` with `r` a reduced residue coprime to `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fraction {
    pub modulus: OKElt,
    pub residue: OKElt,
    pub modulus_norm: u64,
}

#[derive(Debug, Clone)]
pub struct FractionFamily {
    field: FieldParams,
    kind: FamilyKind,
    q: u64,
    dyadic: bool,
    base_moduli: Vec<OKElt>,
    fractions: Vec<Fraction>,
}

impl FractionFamily {
    pub fn field(&self) -> &FieldParams {
        &self.field
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn k(&self) -> u32 {
        self.kind.exponent()
    }

    pub fn dyadic(&self) -> bool {
        self.dyadic
    }

    /// The base moduli `q` before raising to the `k`-th power.
    pub fn base_moduli(&self) -> &[OKElt] {
        &self.base_moduli
    }

    pub fn fractions(&self) -> &[Fraction] {
        &self.fractions
    }

    pub fn len(&self) -> usize {
        self.fractions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fractions.is_empty()
    }

    /// Number of rows whose modulus is a unit; each such row is identically 1.
    pub fn unit_rows(&self) -> usize {
        self.fractions.iter().filter(|f| f.modulus_norm == 1).count()
    }
}

/// Builds the family with `N(q) ≤ Q`.
pub fn build_fractions(field: &FieldParams, kind: FamilyKind, q: u64) -> Result<FractionFamily> {
    build_fractions_with(field, kind, q, false)
}

/// As [`build_fractions`]; with `dyadic` only `Q/2 < N(q) ≤ Q` is kept.
pub fn build_fractions_with(field: &FieldParams, kind: FamilyKind, q: u64, dyadic: bool) -> Result<FractionFamily> {
    if q == 0 {
        return Err(Error::Precondition("family needs Q >= 1".into()));
    }
    let k = kind.exponent();
    if k == 0 {
        return Err(Error::Precondition("power family needs k >= 1".into()));
    }
    let mut base = match &kind {
        FamilyKind::All | FamilyKind::Power(_) | FamilyKind::Square => field.enumerate_by_norm(q, false),
        FamilyKind::Prime => primes_up_to_norm(field, q)?,
        FamilyKind::Custom(elems) => {
            for s in elems {
                let n = field.norm(s);
                if s.is_zero() || n > q.into() {
                    return Err(Error::Precondition(format!("custom modulus {s} has norm {n}, outside (0, {q}]")));
                }
            }
            elems.clone()
        }
    };
    if dyadic {
        base.retain(|b| field.norm(b) * 2 > q.into());
    }

    let mut fractions = Vec::new();
    for b in &base {
        let modulus = field.pow(b, k);
        let modulus_norm = field.norm(&modulus).to_u64().ok_or_else(|| Error::ModulusTooLarge(modulus.to_string()))?;
        let mut residues = coprime_residues(field, &modulus)?;
        residues.sort_by(|x, y| (&x.a, &x.b).cmp(&(&y.a, &y.b)));
        fractions.extend(residues.into_iter().map(|residue| Fraction {
            modulus: modulus.clone(),
            residue,
            modulus_norm,
        }));
    }
    // Stable, so repeated custom moduli keep adjacent duplicate rows.
    fractions.sort_by(|x, y| match x.modulus_norm.cmp(&y.modulus_norm) {
        Ordering::Equal => (&x.modulus.a, &x.modulus.b).cmp(&(&y.modulus.a, &y.modulus.b)),
        o => o,
    });

    Ok(FractionFamily { field: field.clone(), kind, q, dyadic, base_moduli: base, fractions })
}

/// The torus point `(y, x + y·Tr ω)` of `r/m = x + yω`, reduced to `[0,1)²`.
pub fn embed_fraction(field: &FieldParams, fr: &Fraction) -> [f64; 2] {
    let w = field.mul(&fr.residue, &field.conj(&fr.modulus));
    let den = field.norm(&fr.modulus);
    let p1 = crate::character::phase_of_quotient(&OKElt::new(0, w.b.clone()), &den).expect("nonzero modulus");
    let p2_num = &w.a + &w.b * field.omega_trace();
    let p2 = crate::character::phase_of_quotient(&OKElt::new(0, p2_num), &den).expect("nonzero modulus");
    [unit_interval(&p1), unit_interval(&p2)]
}

fn unit_interval(p: &crate::character::QPhase) -> f64 {
    let c = p.to_centered_f64();
    if c < 0.0 {
        c + 1.0
    } else {
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::phase;
    use crate::qfield::make_field;
    use crate::residue::totient;

    #[test]
    fn small_family_counts() {
        let f1 = make_field(-1).unwrap();
        assert_eq!(build_fractions(&f1, FamilyKind::All, 1).unwrap().len(), 4);
        assert_eq!(build_fractions(&f1, FamilyKind::Power(2), 2).unwrap().len(), 12);
        let f3 = make_field(-3).unwrap();
        assert_eq!(build_fractions(&f3, FamilyKind::All, 1).unwrap().len(), 6);
    }

    #[test]
    fn count_is_sum_of_totients() {
        for d in [-1, -2, -7] {
            let f = make_field(d).unwrap();
            for k in 1..=3 {
                let fam = build_fractions(&f, FamilyKind::Power(k), 5).unwrap();
                let expected: u64 =
                    f.enumerate_by_norm(5, false).iter().map(|q| totient(&f, &f.pow(q, k)).unwrap()).sum();
                assert_eq!(fam.len() as u64, expected);
            }
        }
    }

    #[test]
    fn square_equals_power_two() {
        let f = make_field(-7).unwrap();
        let a = build_fractions(&f, FamilyKind::Square, 6).unwrap();
        let b = build_fractions(&f, FamilyKind::Power(2), 6).unwrap();
        assert_eq!(a.fractions(), b.fractions());
    }

    #[test]
    fn prime_family_needs_class_number_one() {
        let f = make_field(-5).unwrap();
        assert!(matches!(build_fractions(&f, FamilyKind::Prime, 10), Err(Error::NotClassNumberOne(-5))));
        let f1 = make_field(-1).unwrap();
        let fam = build_fractions(&f1, FamilyKind::Prime, 5).unwrap();
        // primes of norm 2 (4 associates) and 5 (8 elements): 4·1 + 8·4
        assert_eq!(fam.len(), 36);
        assert_eq!(fam.unit_rows(), 0);
    }

    #[test]
    fn custom_family_validates_and_keeps_duplicates() {
        let f = make_field(-1).unwrap();
        let two = OKElt::new(2, 0);
        let fam = build_fractions(&f, FamilyKind::Custom(vec![two.clone(), two.clone()]), 4).unwrap();
        assert_eq!(fam.len(), 4);
        assert_eq!(fam.fractions()[0], fam.fractions()[2]);
        assert!(build_fractions(&f, FamilyKind::Custom(vec![OKElt::new(3, 0)]), 4).is_err());
        assert!(build_fractions(&f, FamilyKind::Custom(vec![OKElt::zero()]), 4).is_err());
    }

    #[test]
    fn dyadic_filter() {
        let f = make_field(-1).unwrap();
        let fam = build_fractions_with(&f, FamilyKind::All, 4, true).unwrap();
        assert!(fam.base_moduli().iter().all(|q| {
            let n = f.norm(q);
            n > 2.into() && n <= 4.into()
        }));
        assert_eq!(fam.base_moduli().len(), 4);
    }

    #[test]
    fn canonical_order_and_invariants() {
        let f = make_field(-2).unwrap();
        let fam = build_fractions(&f, FamilyKind::All, 8).unwrap();
        for w in fam.fractions().windows(2) {
            assert!(w[0].modulus_norm <= w[1].modulus_norm);
        }
        for fr in fam.fractions() {
            assert!(crate::residue::is_coprime(&f, &fr.residue, &fr.modulus).unwrap());
            let rs = crate::residue::residue_system(&f, &fr.modulus).unwrap();
            assert_eq!(rs.reduce(&fr.residue), fr.residue);
        }
    }

    #[test]
    fn embedding_examples() {
        let f = make_field(-1).unwrap();
        let fr = Fraction { modulus: OKElt::new(1, 1), residue: OKElt::one(), modulus_norm: 2 };
        assert_eq!(embed_fraction(&f, &fr), [0.5, 0.5]);
        let zero = Fraction { modulus: OKElt::new(3, 1), residue: OKElt::zero(), modulus_norm: 10 };
        assert_eq!(embed_fraction(&f, &zero), [0.0, 0.0]);
        let shifted = Fraction { residue: OKElt::new(4, 3), ..fr.clone() };
        assert_eq!(embed_fraction(&f, &shifted), embed_fraction(&f, &fr));
    }

    #[test]
    fn embedding_reproduces_character() {
        // e(n·x) at the embedded point equals ẽ_K(n·r/m) for n = s + tω
        for d in [-1, -3, -11] {
            let f = make_field(d).unwrap();
            let fam = build_fractions(&f, FamilyKind::All, 7).unwrap();
            for fr in fam.fractions() {
                let x = embed_fraction(&f, fr);
                for (s, t) in f.enumerate_by_norm_i64(9, true) {
                    let n = OKElt::new(s, t);
                    let exact = phase(&f, &n, &fr.residue, &fr.modulus).unwrap().to_centered_f64();
                    let via = s as f64 * x[0] + t as f64 * x[1];
                    let diff = via - exact;
                    assert!((diff - diff.round()).abs() < 1e-9);
                }
            }
        }
    }
}
