use super::{sign_pow, ChainVector};
use crate::complexes::Composition;

/// Split one vertex of the string into two consecutive ones, `a = b + c`. The
/// new edge enters the orientation at the position of the split vertex,
/// which gives the sign `(-1)^(n - i)` for the `i`-th of `n` vertices.
pub fn d_aux(c: &Composition) -> ChainVector<Composition> {
    let n = c.0.len();
    let mut out = ChainVector::new();
    for (i, &a) in c.0.iter().enumerate() {
        let sign = sign_pow((n - 1 - i) as i64);
        for b in 1..a {
            let mut parts = Vec::with_capacity(n + 1);
            parts.extend_from_slice(&c.0[..i]);
            parts.push(b);
            parts.push(a - b);
            parts.extend_from_slice(&c.0[i + 1..]);
            out.add(Composition(parts), sign);
        }
    }
    out
}
