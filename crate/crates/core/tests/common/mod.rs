//! Deterministic text corpus shared by the integration tests.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Sample {
    pub name: String,
    pub raw: Vec<u8>,
}

fn random(rng: &mut ChaCha8Rng, len: usize, alphabet: &[u8]) -> Vec<u8> {
    (0..len).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect()
}

const DNA: &[u8] = b"acgt";
const LOWER: &[u8] = b"abcdefghijklmnopqrstuvwxyz";

/// Random texts: lengths (sentinel included) uniform in `[2..=max_n]`,
/// alphabets of size 2, 4 and 26 in turn.
pub fn random_texts(count: usize, max_n: usize, seed: u64) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let alphabet = [&b"ab"[..], DNA, LOWER][i % 3];
            let n = rng.gen_range(2..=max_n);
            Sample {
                name: format!("random-{i}-s{}-n{n}", alphabet.len()),
                raw: random(&mut rng, n - 1, alphabet),
            }
        })
        .collect()
}

pub fn fibonacci(len: usize) -> Vec<u8> {
    let (mut a, mut b) = (b"a".to_vec(), b"ab".to_vec());
    while b.len() < len {
        let next = [b.as_slice(), a.as_slice()].concat();
        a = std::mem::replace(&mut b, next);
    }
    b.truncate(len);
    b
}

/// De Bruijn sequence of order `k` over `alphabet` (Lyndon word concatenation).
pub fn de_bruijn(alphabet: &[u8], k: usize) -> Vec<u8> {
    let s = alphabet.len();
    let mut a = vec![0usize; k * s];
    let mut seq = Vec::new();
    fn db(t: usize, p: usize, k: usize, s: usize, a: &mut Vec<usize>, seq: &mut Vec<usize>) {
        if t > k {
            if k.is_multiple_of(p) {
                seq.extend_from_slice(&a[1..=p]);
            }
        } else {
            a[t] = a[t - p];
            db(t + 1, p, k, s, a, seq);
            for j in a[t - p] + 1..s {
                a[t] = j;
                db(t + 1, t, k, s, a, seq);
            }
        }
    }
    db(1, 1, k, s, &mut a, &mut seq);
    seq.into_iter().map(|i| alphabet[i]).collect()
}

/// `copies` copies of a random unit; each site has one fixed alternate
/// symbol that a copy takes with probability `rate`.
pub fn periodic_with_mutations(unit: usize, copies: usize, rate: f64, seed: u64) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = random(&mut rng, unit, DNA);
    let alt: Vec<u8> = base
        .iter()
        .map(|&c| {
            let i = DNA.iter().position(|&d| d == c).unwrap();
            DNA[(i + rng.gen_range(1..4)) % 4]
        })
        .collect();
    let mut out = Vec::with_capacity(unit * copies);
    for _ in 0..copies {
        for j in 0..unit {
            out.push(if rng.gen_bool(rate) { alt[j] } else { base[j] });
        }
    }
    out
}

/// Unary, Fibonacci, de Bruijn, periodic-with-mutations and a few classics.
pub fn adversarial_texts() -> Vec<Sample> {
    let mut out = Vec::new();
    let mut push = |name: String, raw: Vec<u8>| out.push(Sample { name, raw });
    for len in [1, 2, 3, 10, 100, 1999] {
        push(format!("unary-{len}"), vec![b'a'; len]);
    }
    for len in [1, 2, 5, 13, 100, 610, 1597, 1999] {
        push(format!("fibonacci-{len}"), fibonacci(len));
    }
    for k in [1, 3, 6, 10] {
        push(format!("debruijn-2-{k}"), de_bruijn(b"ab", k));
    }
    push("debruijn-4-5".into(), de_bruijn(DNA, 5));
    push("debruijn-3-6".into(), de_bruijn(b"xyz", 6));
    push("debruijn-26-2".into(), de_bruijn(LOWER, 2));
    for (i, (unit, copies, rate)) in [
        (50, 30, 0.01),
        (100, 19, 0.01),
        (7, 200, 0.05),
        (300, 6, 0.02),
        (1, 500, 0.1),
    ]
    .into_iter()
    .enumerate()
    {
        push(
            format!("periodic-{unit}x{copies}"),
            periodic_with_mutations(unit, copies, rate, 100 + i as u64),
        );
    }
    for (name, s) in [
        ("running-example", &b"abcbbcbcabc"[..]),
        ("mississippi", b"mississippi"),
        ("abab", b"abababababab"),
        ("banana", b"banana"),
    ] {
        push(name.into(), s.to_vec());
    }
    out
}

/// The full sweep corpus: 300 random texts plus the adversarial families.
pub fn corpus() -> Vec<Sample> {
    let mut out = random_texts(300, 2000, 0x5eed);
    out.extend(adversarial_texts());
    out
}
