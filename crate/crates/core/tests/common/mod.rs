//! Generators and oracles shared by the integration tests.
#![allow(dead_code)]

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sl3z::exact::{e13, IntMatrix, RatMatrix};
use sl3z::hypotheses::{GeneratorSet, RatPoly};
use sl3z::spectra::is_finite_order;
use sl3z::vcyc::VCTag;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `E_ij(±1)` with `j` chosen among the two indices different from `i`.
pub fn elementary(i: usize, other: usize, negative: bool) -> IntMatrix {
    let j = (i + 1 + other % 2) % 3;
    IntMatrix::elementary(3, i, j, if negative { (-1).into() } else { 1.into() })
}

/// Product of elementary matrices, so the determinant is 1 by construction.
pub fn elementary_product(steps: &[(usize, usize, bool)]) -> IntMatrix {
    steps.iter().fold(IntMatrix::identity(3), |acc, &(i, o, s)| &acc * &elementary(i, o, s))
}

pub fn random_unimodular(rng: &mut ChaCha8Rng, max_len: usize) -> IntMatrix {
    let len = rng.gen_range(1..=max_len);
    let steps: Vec<_> = (0..len).map(|_| (rng.gen_range(0..3), rng.gen_range(0..2), rng.gen())).collect();
    elementary_product(&steps)
}

/// Random product of elementary matrices of infinite order.
pub fn random_infinite_order(rng: &mut ChaCha8Rng, max_len: usize) -> IntMatrix {
    loop {
        let m = random_unimodular(rng, max_len);
        if !is_finite_order(&m) {
            return m;
        }
    }
}

pub fn lit(rows: [[i64; 3]; 3]) -> IntMatrix {
    IntMatrix::lit(rows)
}

/// One representative per class, in the order I1, I1t, I2, I2t, I3.
pub fn exemplars() -> Vec<(VCTag, IntMatrix)> {
    vec![
        (VCTag::I1, lit([[0, 0, 1], [1, 0, 1], [0, 1, 0]])),
        (VCTag::I1t, lit([[1, 0, 0], [0, 2, 1], [0, 1, 1]])),
        (VCTag::I2, lit([[0, 0, 1], [1, 0, 3], [0, 1, 0]])),
        (VCTag::I2t, lit([[1, 1, 0], [0, 1, 1], [0, 0, 1]])),
        (VCTag::I3, e13(1)),
    ]
}

/// Further members of each class, including ones that only become
/// unipotent after a power.
pub fn extra_exemplars() -> Vec<(VCTag, IntMatrix)> {
    vec![
        (VCTag::I1, lit([[0, 0, 1], [1, 0, -1], [0, 1, 2]])),
        (VCTag::I1t, lit([[1, 0, 0], [0, -2, -1], [0, -1, -1]])),
        (VCTag::I1t, lit([[-1, 0, 0], [0, 0, 1], [0, 1, 3]])),
        (VCTag::I2, lit([[0, 0, 1], [1, 0, -6], [0, 1, 5]])),
        (VCTag::I2t, lit([[1, 2, 0], [0, 1, 3], [0, 0, 1]])),
        (VCTag::I2t, lit([[1, 1, 1], [0, 1, -1], [0, 0, 1]])),
        (VCTag::I3, lit([[1, 0, 5], [0, 1, 0], [0, 0, 1]])),
        (VCTag::I3, lit([[1, 1, 0], [0, -1, 1], [0, 0, -1]])),
        (VCTag::I3, lit([[-1, 0, 1], [0, 1, 0], [0, 0, -1]])),
    ]
}

/// Random unipotent matrix `P T P^{-1}` with `T` upper unitriangular.
pub fn random_unipotent(rng: &mut ChaCha8Rng, entry: i64, conj_len: usize) -> IntMatrix {
    loop {
        let [a, b, c]: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-entry..=entry));
        if a == 0 && b == 0 && c == 0 {
            continue;
        }
        let t = lit([[1, a, c], [0, 1, b], [0, 0, 1]]);
        let p = random_unimodular(rng, conj_len);
        return t.conjugate_by(&p).expect("unimodular conjugator");
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Integral-characteristic check by plain enumeration of every reduced
/// word, with no deduplication of values.
pub fn integral_char_naive(gens: &GeneratorSet, max_length: usize) -> bool {
    fn go(gens: &GeneratorSet, word: &mut Vec<i32>, m: &RatMatrix, left: usize) -> bool {
        if !RatPoly::charpoly(m).is_integral() {
            return false;
        }
        if left == 0 {
            return true;
        }
        for l in gens.letters() {
            if word.last() == Some(&-l) {
                continue;
            }
            word.push(l);
            let ok = go(gens, word, &(m * gens.letter(l)), left - 1);
            word.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    go(gens, &mut Vec::new(), &RatMatrix::identity(gens.dimension), max_length)
}
