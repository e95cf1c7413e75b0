//! Recover the aspect ratio of a rectangle from nodal counts alone.
//!
//! Run with `cargo run --release --example rectangle -- 5/13 40000`.

use nodalseq::reconstruct::reconstruct_rectangle;
use nodalseq::spectra::{generate_separable_with, strip, GenerateOptions};
use nodalseq::{ManifoldClass, Rational};

fn main() -> nodalseq::Result<()> {
    let mut args = std::env::args().skip(1);
    let alpha2: Rational = args.next().as_deref().unwrap_or("5/13").parse()?;
    let cutoff: Rational = args.next().as_deref().unwrap_or("40000").parse()?;

    let spectrum = generate_separable_with(ManifoldClass::Rectangle, &alpha2, &cutoff, GenerateOptions { witnesses: false })?;
    let ns = strip(&spectrum);
    let res = reconstruct_rectangle(&ns)?;

    println!("{} nodal count sets", ns.len());
    for lm in res.history.iter().filter(|l| [2, 3, 5, 11, 31, 101].contains(&l.index)) {
        println!("h = {:>4}  h- = {:>4}  h+ = {:>4}  {:?}", lm.index, lm.lower, lm.upper, lm.bracket);
    }
    println!("final (h = {}): {:?}", res.landmark_index, res.bracket);
    println!("width {}  contains {alpha2}: {}", res.bracket.width().to_decimal(6), res.bracket.contains(&alpha2));
    Ok(())
}
