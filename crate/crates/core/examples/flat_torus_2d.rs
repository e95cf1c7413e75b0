//! Reconstruct a 2-D flat torus up to isometry and scale.

use nodalseq::lattice::{canonical_dual_2d, is_isometric_2d};
use nodalseq::reconstruct::{reconstruct_basic_spectrum, reconstruct_flat_torus_2d, DEFAULT_DENOM_MAX};
use nodalseq::spectra::{generate_flat_torus, strip};
use nodalseq::{GramMatrix, Rational};

fn main() -> nodalseq::Result<()> {
    let gram: GramMatrix = std::env::args().nth(1).as_deref().unwrap_or("2/3,1/4;1/4,5/4").parse()?;
    let ns = strip(&generate_flat_torus(&gram, &Rational::from(3000))?);

    // Ratios of basic eigenvalues, bracketed by multiples up to the cutoff.
    for (i, b) in reconstruct_basic_spectrum(&ns, 6)?.iter().enumerate() {
        println!("basic {i}: {b:?}");
    }

    let fitted = reconstruct_flat_torus_2d(&ns, 12, DEFAULT_DENOM_MAX)?;
    let expected = canonical_dual_2d(&gram).to_gram();
    println!("input     {gram}");
    println!("fitted    {fitted}");
    println!("isometric to the canonical input: {}", is_isometric_2d(&fitted, &expected));
    Ok(())
}
