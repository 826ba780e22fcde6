use rand::Rng;

use crate::words::Word;

/// Uniform length in `0..=max_len`, then uniform letters without immediate
/// cancellation.
pub fn random_word<R: Rng>(rng: &mut R, rank: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let mut letters: Vec<i32> = Vec::with_capacity(len);
    while letters.len() < len {
        let g = rng.gen_range(1..=rank as i32);
        let x = if rng.gen_bool(0.5) { g } else { -g };
        if letters.last() == Some(&-x) {
            continue;
        }
        letters.push(x);
    }
    Word::reduce(&letters, rank).expect("letters are in range")
}
