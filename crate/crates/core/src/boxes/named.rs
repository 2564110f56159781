use crate::error::{Error, Result};
use crate::scalar::{rat, Rational};

use super::ProbBox;

pub const NAMED_BOXES: [&str; 7] = [
    "pr",
    "pc2",
    "xyz",
    "nltri",
    "pc3",
    "biloc_activation",
    "genuine_nonbilocal",
];

fn delta(cond: bool, p: &Rational) -> Rational {
    if cond {
        p.clone()
    } else {
        Rational::from_integer(0.into())
    }
}

/// Exact named box by id.
pub fn named_box(id: &str) -> Result<ProbBox<Rational>> {
    let half = rat(1, 2);
    let quarter = rat(1, 4);
    let eighth = rat(1, 8);
    let b = match id {
        "pr" => ProbBox::from_fn(vec![2, 2], vec![2, 2], |x, a| {
            delta(a[0] ^ a[1] == x[0] & x[1], &half)
        }),
        "pc2" => ProbBox::from_fn(vec![2, 2], vec![2, 2], |_, a| delta(a[0] == a[1], &half)),
        "xyz" => ProbBox::from_fn(vec![2, 2, 2], vec![2, 2, 2], |x, a| {
            delta(a[0] ^ a[1] ^ a[2] == x[0] & x[1] & x[2], &quarter)
        }),
        "nltri" => ProbBox::from_fn(vec![2, 2, 2], vec![2, 2, 2], |x, a| {
            let (x, y, z) = (x[0], x[1], x[2]);
            delta(a[0] ^ a[1] ^ a[2] == (y & z) ^ x ^ y ^ z, &quarter)
        }),
        "pc3" => ProbBox::from_fn(vec![2, 2, 2], vec![2, 2, 2], |_, a| {
            delta(a[0] ^ a[1] ^ a[2] == 0, &quarter)
        }),
        "biloc_activation" => ProbBox::from_fn(vec![2, 1, 1], vec![2, 2, 2], |x, a| {
            delta(a[0] ^ a[1] == x[0] & a[2], &quarter)
        }),
        "genuine_nonbilocal" => ProbBox::from_fn(vec![2, 2, 2], vec![2, 2, 2], |x, a| {
            let (x, y, z) = (x[0], x[1], x[2]);
            let f = (x & y & z) ^ (x & y) ^ (x & z) ^ (y & z) ^ z ^ 1;
            let parity = a[0] ^ a[1] ^ a[2];
            delta(parity == f, &eighth) + delta(parity == 0, &eighth)
        }),
        _ => return Err(Error::UnknownId(id.to_string())),
    };
    Ok(b)
}
