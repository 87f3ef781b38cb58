//! Construction specs for `pamona gen`, e.g. `inflate cyclic 3` or `product a.sg b.sg`.

use pamona::construct::{
    adjoin_zero, brandt5, chain_semilattice, cyclic_group, dihedral, direct_product, inflate_at_identity,
    ladder_semilattice, left_zero, monogenic_mn, munn, null_semigroup, quaternion, right_zero, trivial,
};
use pamona::Semigroup;

use crate::{read_semigroup, Failure};

pub const USAGE: &str = "constructions: trivial | cyclic N | null N | mn M N | chain N | left-zero N | right-zero N | \
dihedral N | quaternion | brandt5 | ladder K | inflate X | adjoin-zero X | opposite X | munn X | product X Y, \
where X and Y are constructions or semigroup files";

struct Tokens<'a> {
    words: &'a [String],
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn next(&mut self) -> Result<&'a str, Failure> {
        let w = self.words.get(self.pos).ok_or_else(|| Failure::Usage(format!("incomplete construction\n{USAGE}")))?;
        self.pos += 1;
        Ok(w)
    }

    fn number(&mut self) -> Result<usize, Failure> {
        let w = self.next()?;
        w.parse().map_err(|_| Failure::Usage(format!("expected a number, found `{w}`")))
    }
}

fn operand(t: &mut Tokens<'_>) -> Result<Semigroup, Failure> {
    let name = t.next()?;
    let s = match name {
        "trivial" => trivial(),
        "cyclic" => cyclic_group(t.number()?)?,
        "null" => null_semigroup(t.number()?)?,
        "mn" => {
            let m = t.number()?;
            monogenic_mn(m, t.number()?)?
        }
        "chain" => chain_semilattice(t.number()?),
        "left-zero" => left_zero(t.number()?)?,
        "right-zero" => right_zero(t.number()?)?,
        "dihedral" => dihedral(t.number()?)?,
        "quaternion" => quaternion(),
        "brandt5" => brandt5(),
        "ladder" => ladder_semilattice(t.number()?)?,
        "inflate" => inflate_at_identity(&operand(t)?)?,
        "adjoin-zero" => adjoin_zero(&operand(t)?),
        "opposite" => operand(t)?.opposite(),
        "munn" => munn(&operand(t)?)?.semigroup,
        "product" => {
            let a = operand(t)?;
            direct_product(&a, &operand(t)?)
        }
        path => read_semigroup(path)?,
    };
    Ok(s)
}

pub fn build(words: &[String]) -> Result<Semigroup, Failure> {
    let mut t = Tokens { words, pos: 0 };
    let s = operand(&mut t)?;
    if t.pos != words.len() {
        return Err(Failure::Usage(format!("unexpected `{}` after the construction", words[t.pos])));
    }
    Ok(s)
}
