use nodalseq::reconstruct::reconstruct_separable_torus;
use nodalseq::spectra::{generate_separable, strip};
use nodalseq::{ManifoldClass, Rational};

fn main() -> nodalseq::Result<()> {
    for (a, cutoff) in [("3/7", 100), ("3/7", 10000), ("1/9", 100), ("1", 20)] {
        let alpha2: Rational = a.parse()?;
        let s = generate_separable(ManifoldClass::SeparableTorus, &alpha2, &Rational::from(cutoff))?;
        let res = reconstruct_separable_torus(&strip(&s))?;
        println!("alpha2 = {a:>4}, cutoff {cutoff:>5}: {:?} at h = {}", res.bracket, res.landmark_index);
    }
    Ok(())
}
