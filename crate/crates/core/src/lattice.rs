//! Tetrahedral-lattice geometry: turn encodings, per-axis displacements and
//! distances, and a Cartesian embedding for export.
//!
//! A conformation of an N-bead chain is a list of N-1 turns t_k in {0,1,2,3},
//! 1-indexed. Odd and even turns act on the two sublattices of the diamond
//! lattice, which shows up below as alternating (-1)^k signs. The first two
//! turns are pinned (t_1 = 1, t_2 = 0) and t_3 keeps only its low bit, which
//! quotients out global rotations; everything downstream assumes that reduced
//! space.

use crate::{Error, Result};

/// Direction vectors of the four lattice axes; steps alternate between +v and
/// -v on consecutive beads. Each has squared length 3, so a step of length
/// `scale` uses v/sqrt(3).
const AXIS_VECTORS: [[f64; 3]; 4] = [
    [1.0, 1.0, 1.0],
    [1.0, -1.0, -1.0],
    [-1.0, 1.0, -1.0],
    [-1.0, -1.0, 1.0],
];

/// Number of free conformation bits for an N-bead chain: one for t_3's low
/// bit plus two per turn t_4..t_{N-1}. N = 3 has no free bits at all.
pub fn conf_bit_count(n: usize) -> usize {
    if n <= 3 {
        0
    } else {
        2 * n - 7
    }
}

/// Parse a string of '0'/'1' characters into bits, leftmost first.
pub fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::BadBitChar(other)),
        })
        .collect()
}

/// Render bits as a '0'/'1' string, bit 0 leftmost.
pub fn format_bits(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// A validated turn sequence for an N-bead chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TurnSequence {
    n: usize,
    turns: Vec<u8>,
}

impl TurnSequence {
    /// Build from explicit turns: fixed prefix t_1 = 1, t_2 = 0, all turns in
    /// 0..=3. Note t_3 > 1 is geometrically valid but has no bit encoding.
    pub fn new(n: usize, turns: Vec<u8>) -> Result<Self> {
        if n < 3 {
            return Err(Error::BadTurns(format!("chain needs at least 3 beads, got {n}")));
        }
        if turns.len() != n - 1 {
            return Err(Error::BadTurns(format!(
                "expected {} turns for {} beads, got {}",
                n - 1,
                n,
                turns.len()
            )));
        }
        if let Some(&t) = turns.iter().find(|&&t| t > 3) {
            return Err(Error::BadTurns(format!("turn value {t} out of range 0..=3")));
        }
        if turns[0] != 1 || turns[1] != 0 {
            return Err(Error::BadTurns(format!(
                "prefix must be [1, 0], got [{}, {}]",
                turns[0], turns[1]
            )));
        }
        Ok(Self { n, turns })
    }

    pub fn n_beads(&self) -> usize {
        self.n
    }

    /// Turn t_k, 1-indexed, k in 1..=N-1.
    pub fn turn(&self, k: usize) -> u8 {
        self.turns[k - 1]
    }

    pub fn turns(&self) -> &[u8] {
        &self.turns
    }
}

/// Decode free conformation bits into the full turn list. Bit 0 is t_3's low
/// bit; each following (hi, lo) pair is one turn of t_4..t_{N-1}, with turn
/// value 2*hi + lo.
pub fn decode_turns(n: usize, bits: &[bool]) -> Result<TurnSequence> {
    let expected = conf_bit_count(n);
    if n < 3 {
        return Err(Error::BadTurns(format!("chain needs at least 3 beads, got {n}")));
    }
    if bits.len() != expected {
        return Err(Error::BitstringLength {
            got: bits.len(),
            expected,
        });
    }
    let mut turns = Vec::with_capacity(n - 1);
    turns.push(1);
    turns.push(0);
    if n > 3 {
        turns.push(bits[0] as u8);
        for k in 0..n.saturating_sub(4) {
            let hi = bits[1 + 2 * k] as u8;
            let lo = bits[2 + 2 * k] as u8;
            turns.push(2 * hi + lo);
        }
    }
    TurnSequence::new(n, turns)
}

/// Inverse of [`decode_turns`]: pack the free bits back out of a turn list.
/// Only t_3 in {0, 1} is representable; the symmetry-reduced encoding gives
/// t_3 a single bit.
pub fn encode_turns(turns: &TurnSequence) -> Result<Vec<bool>> {
    let n = turns.n_beads();
    let mut bits = Vec::with_capacity(conf_bit_count(n));
    if n > 3 {
        let t3 = turns.turn(3);
        if t3 > 1 {
            return Err(Error::BadTurns(format!(
                "t_3 = {t3} has no bit encoding (restricted to {{0, 1}})"
            )));
        }
        bits.push(t3 == 1);
        for k in 4..n {
            let t = turns.turn(k);
            bits.push(t & 2 == 2);
            bits.push(t & 1 == 1);
        }
    }
    Ok(bits)
}

fn check_bead(turns: &TurnSequence, j: usize) -> Result<()> {
    if j < 1 || j > turns.n_beads() {
        return Err(Error::BeadIndex(j, turns.n_beads()));
    }
    Ok(())
}

fn check_orientation(o: i8) -> Result<()> {
    if o == 1 || o == -1 {
        Ok(())
    } else {
        Err(Error::BadOrientation(o))
    }
}

/// Signed displacement of bead j along `axis`, in lattice units, relative to
/// the phase-separating plane: o * sum_{k<j} (-1)^k [t_k == axis] + delta_a.
/// Bead 1 sits at `delta_a`. The orientation flag picks which side of the
/// plane the pinned chain prefix points into.
pub fn axis_displacement(
    turns: &TurnSequence,
    j: usize,
    axis: u8,
    delta_a: f64,
    orientation: i8,
) -> Result<f64> {
    check_bead(turns, j)?;
    check_orientation(orientation)?;
    if axis > 3 {
        return Err(Error::BadAxis(axis));
    }
    let mut sum = 0i64;
    for k in 1..j {
        if turns.turn(k) == axis {
            sum += if k % 2 == 1 { -1 } else { 1 };
        }
    }
    Ok(orientation as f64 * sum as f64 + delta_a)
}

/// Per-axis signed step counts between beads i < j:
/// x_a = sum_{k=i}^{j-1} (-1)^k [t_k == a].
pub fn pair_axis_counts(turns: &TurnSequence, i: usize, j: usize) -> Result<[i32; 4]> {
    check_bead(turns, i)?;
    check_bead(turns, j)?;
    if i >= j {
        return Err(Error::BadBeadPair(i, j));
    }
    let mut x = [0i32; 4];
    for k in i..j {
        let sign = if k % 2 == 1 { -1 } else { 1 };
        x[turns.turn(k) as usize] += sign;
    }
    Ok(x)
}

/// Squared lattice distance between beads i < j: sum_a x_a^2. Zero exactly
/// when the two beads coincide; 1 exactly when they sit on adjacent sites.
pub fn lattice_distance_sq(turns: &TurnSequence, i: usize, j: usize) -> Result<u32> {
    let x = pair_axis_counts(turns, i, j)?;
    Ok(x.iter().map(|&v| (v * v) as u32).sum())
}

/// Embed the chain in Cartesian space with bond length `scale`; bead 1 at the
/// origin, step j adding (-1)^j * v_{t_j} * scale / sqrt(3).
pub fn cartesian_embed(turns: &TurnSequence, scale: f64) -> Vec<[f64; 3]> {
    let n = turns.n_beads();
    let step = scale / 3f64.sqrt();
    let mut coords = Vec::with_capacity(n);
    let mut r = [0.0f64; 3];
    coords.push(r);
    for k in 1..n {
        let sign = if k % 2 == 1 { -1.0 } else { 1.0 };
        let v = AXIS_VECTORS[turns.turn(k) as usize];
        for (axis, value) in r.iter_mut().zip(v) {
            *axis += sign * value * step;
        }
        coords.push(r);
    }
    coords
}
