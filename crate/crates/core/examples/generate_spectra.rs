//! Print the opening lines of each spectrum with nodal counts and the
//! quantum numbers that produce them.

use nodalseq::spectra::{generate_flat_torus, generate_separable, QuantumNumbers};
use nodalseq::{GramMatrix, ManifoldClass, Rational, SpectralSequence};

fn show(title: &str, s: &SpectralSequence, lines: usize) {
    println!("{title} ({} distinct eigenvalues up to {})", s.len(), s.cutoff());
    for (i, line) in s.lines().iter().take(lines).enumerate() {
        let witnesses: Vec<String> = line
            .witnesses
            .iter()
            .flatten()
            .map(|q| match q {
                QuantumNumbers::Pair(m, n) => format!("({m},{n})"),
                QuantumNumbers::Vector(v) => format!("{v:?}"),
            })
            .collect();
        println!("  {:>8}  counts {:?}  from {}", s.value(i).to_string(), line.counts, witnesses.join(" "));
    }
}

fn main() -> nodalseq::Result<()> {
    let half: Rational = "1/2".parse()?;
    let cutoff = Rational::from(10);
    show("rectangle, alpha2 = 1/2", &generate_separable(ManifoldClass::Rectangle, &half, &cutoff)?, 6);
    show("torus, alpha2 = 1/2", &generate_separable(ManifoldClass::SeparableTorus, &half, &cutoff)?, 6);
    show("klein bottle, alpha2 = 1/3", &generate_separable(ManifoldClass::KleinBottle, &"1/3".parse()?, &cutoff)?, 6);

    let hex: GramMatrix = "1,1/2;1/2,1".parse()?;
    show("hexagonal torus", &generate_flat_torus(&hex, &Rational::from(4))?, 5);
    Ok(())
}
