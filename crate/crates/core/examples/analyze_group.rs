//! Builds the dihedral group of order 8 from two permutations and prints its
//! lower central series.

use lienil::group::{Group, Permutation};

fn main() -> lienil::Result<()> {
    let rotation = Permutation::from_images(&[2, 3, 4, 1])?;
    let reflection = Permutation::from_images(&[3, 2, 1, 4])?;
    let d4 = Group::build(&[rotation, reflection], 64)?;

    let (r, s) = (d4.generators()[0], d4.generators()[1]);
    println!("|D4| = {}", d4.order());
    println!("(r, s) = {}", d4.name(d4.commutator(r, s)));
    for (i, term) in d4.lower_central_series().iter().enumerate() {
        let names: Vec<_> = term.members().iter().map(|&x| d4.name(x)).collect();
        println!("gamma_{} = {{{}}}", i + 1, names.join(", "));
    }
    let summary = d4.summary();
    println!("class {:?}, G' of type {:?}", summary.class, summary.derived_type);
    Ok(())
}
