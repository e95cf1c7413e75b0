//! Write a spectrum as a sequence file, read it back and reconstruct from
//! the counts-only version.

use nodalseq::cli::SequenceFile;
use nodalseq::reconstruct::reconstruct_klein;
use nodalseq::spectra::generate_separable;
use nodalseq::{ManifoldClass, Rational};

fn main() -> nodalseq::Result<()> {
    let s = generate_separable(ManifoldClass::KleinBottle, &"4".parse()?, &Rational::from(100))?;

    let disclosed = SequenceFile::from_spectrum(&s, true).to_text();
    println!("{}", disclosed.lines().take(4).collect::<Vec<_>>().join("\n"));

    let hidden = SequenceFile::from_spectrum(&s, false).to_text();
    println!("{}", hidden.lines().take(4).collect::<Vec<_>>().join("\n"));

    let ns = SequenceFile::parse(&hidden)?.nodal_sequence()?;
    println!("reconstructed: {:?}", reconstruct_klein(&ns)?.bracket);
    Ok(())
}
