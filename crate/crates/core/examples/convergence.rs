//! Bracket width against landmark index, written as CSV to stdout.

use nodalseq::cli::{convergence_cutoff, write_convergence_csv};
use nodalseq::reconstruct::reconstruct_rectangle;
use nodalseq::spectra::{generate_separable_with, strip, GenerateOptions};
use nodalseq::{ManifoldClass, Rational};

fn main() -> nodalseq::Result<()> {
    let alpha2: Rational = "1/2".parse()?;
    let cutoff = convergence_cutoff(&alpha2, 211);
    let s = generate_separable_with(ManifoldClass::Rectangle, &alpha2, &cutoff, GenerateOptions { witnesses: false })?;
    let res = reconstruct_rectangle(&strip(&s))?;
    let rows: Vec<_> = res.history.into_iter().filter(|l| l.index <= 211).collect();
    write_convergence_csv(&rows, std::io::stdout().lock())
}
