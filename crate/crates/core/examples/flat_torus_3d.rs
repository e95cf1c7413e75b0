//! Non-isometric 3-D flat tori have different nodal sequences; find where.

use nodalseq::reconstruct::{compare_nodal_sequences, reconstruct_basic_spectrum};
use nodalseq::spectra::{generate_flat_torus, strip};
use nodalseq::{GramMatrix, Rational};

fn main() -> nodalseq::Result<()> {
    let cutoff = Rational::from(200);
    let pairs = [
        ("1,0,0;0,1,0;0,0,1", "1,0,0;0,1,0;0,0,2"),
        ("1,0,0;0,1,0;0,0,1", "1,1/2,0;1/2,1,0;0,0,1"),
    ];
    for (a, b) in pairs {
        let ga: GramMatrix = a.parse()?;
        let gb: GramMatrix = b.parse()?;
        let na = strip(&generate_flat_torus(&ga, &cutoff)?);
        let nb = strip(&generate_flat_torus(&gb, &cutoff)?);
        println!("{a}  vs  {b}: {:?}", compare_nodal_sequences(&na, &nb)?);
    }

    let ns = strip(&generate_flat_torus(&"1,0,0;0,1,0;0,0,2".parse()?, &Rational::from(2000))?);
    println!("basic spectrum of diag(1,1,2), normalized:");
    for b in reconstruct_basic_spectrum(&ns, 5)? {
        println!("  {b:?}");
    }
    Ok(())
}
