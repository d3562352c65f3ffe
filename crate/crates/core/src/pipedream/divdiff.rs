use crate::permutation::Permutation;
use crate::polynomial::{Monomial, Polynomial};

/// Schubert polynomial by divided differences, independent of pipe dreams.
///
/// Starts from `S_{w0} = x1^{n-1} x2^{n-2} ... x_{n-1}` and walks down to `w`
/// along a chain of ascents of `w`, applying `d_i` at each step.
pub fn schubert_divdiff(w: &Permutation) -> Polynomial {
    let n = w.stripped().len().max(1);
    let top = Monomial::new((0..n as u32).rev().collect());
    let longest = Permutation::longest(n);
    let mut chain = Vec::new();
    let mut v = w.padded(n).word().to_vec();
    while v != longest.word() {
        let i = (0..n - 1)
            .find(|&i| v[i] < v[i + 1])
            .expect("a non-longest permutation has an ascent");
        v.swap(i, i + 1);
        chain.push(i + 1);
    }
    chain.iter().rev().fold(Polynomial::monomial(top), |poly, &i| {
        poly.divided_difference(i)
            .expect("divided difference of a polynomial is exact")
    })
}
