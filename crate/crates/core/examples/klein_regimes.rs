//! Klein bottle: settle the regime of α² from a few early positions, then
//! bracket α² or 1/α² from prime landmarks.

use nodalseq::reconstruct::{klein_four_test, klein_quarter_test, klein_regime, reconstruct_klein, RegimeDecision};
use nodalseq::spectra::{generate_separable, strip};
use nodalseq::{ManifoldClass, Rational};

fn main() -> nodalseq::Result<()> {
    for a in ["1/5", "1/3", "1/2", "1", "4/3", "2", "4", "9"] {
        let alpha2: Rational = a.parse()?;
        let ns = strip(&generate_separable(ManifoldClass::KleinBottle, &alpha2, &Rational::from(20000))?);
        let regime = klein_regime(&ns)?;
        let detail = match regime {
            RegimeDecision::Less1 => format!("{:?}", klein_quarter_test(&ns)?),
            RegimeDecision::Greater1 => format!("{:?}", klein_four_test(&ns)?),
            RegimeDecision::Exact(_) => String::new(),
        };
        let res = reconstruct_klein(&ns)?;
        println!(
            "alpha2 = {a:>4}  {:<10} {:<10} {} bracket {:?}  alpha2 in {:?}",
            format!("{regime:?}"),
            detail,
            res.target,
            res.bracket,
            res.alpha2_bracket().unwrap()
        );
    }
    Ok(())
}
