use crate::error::{Error, Result};
use crate::spectra::NodalSequence;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    /// Identical on the common prefix.
    EqualOnPrefix { len_a: usize, len_b: usize },
    /// Index of the first entry whose count sets differ.
    FirstDivergence(usize),
}

pub fn compare_nodal_sequences(a: &NodalSequence, b: &NodalSequence) -> Result<Comparison> {
    if a.class() != b.class() {
        return Err(Error::Domain(format!("cannot compare a {} sequence with a {} sequence", a.class(), b.class())));
    }
    Ok(match a.entries().iter().zip(b.entries()).position(|(x, y)| x != y) {
        Some(i) => Comparison::FirstDivergence(i),
        None => Comparison::EqualOnPrefix { len_a: a.len(), len_b: b.len() },
    })
}
