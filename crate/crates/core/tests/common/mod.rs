#![allow(dead_code)]

use tiltlab::quiver::{parse_quiver, Quiver};

/// `A_n` on vertices `1..=n`; bit `i` of `mask` reverses the edge between `i+1` and `i+2`.
pub fn a_n(n: usize, mask: u32) -> Quiver {
    let mut text = format!(
        "vertices: {}\n",
        (1..=n).map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
    );
    for i in 1..n {
        if mask >> (i - 1) & 1 == 0 {
            text += &format!("{} -> {}\n", i, i + 1);
        } else {
            text += &format!("{} -> {}\n", i + 1, i);
        }
    }
    parse_quiver(&text).unwrap()
}

/// `D_4` with centre `2` and leaves `1 3 4`; bit `k` reverses the `k`-th leaf edge.
pub fn d4(mask: u32) -> Quiver {
    let mut text = String::from("vertices: 1 2 3 4\n");
    for (k, leaf) in [1, 3, 4].into_iter().enumerate() {
        if mask >> k & 1 == 0 {
            text += &format!("{leaf} -> 2\n");
        } else {
            text += &format!("2 -> {leaf}\n");
        }
    }
    parse_quiver(&text).unwrap()
}

pub fn e6() -> Quiver {
    parse_quiver("vertices: 1 2 3 4 5 6\n1 -> 2\n2 -> 3\n3 -> 4\n4 -> 5\n3 -> 6\n").unwrap()
}

pub const A5_SAMPLE: [u32; 4] = [0b0000, 0b1111, 0b0101, 0b0011];

/// Every `A_n` orientation for `n ≤ 4`, the `A_5` sample and every `D_4` orientation.
pub fn fixtures() -> Vec<(String, Quiver)> {
    let mut out = Vec::new();
    for n in 1..=4usize {
        for mask in 0..(1u32 << (n - 1)) {
            out.push((format!("A{n}/{mask:b}"), a_n(n, mask)));
        }
    }
    for mask in A5_SAMPLE {
        out.push((format!("A5/{mask:b}"), a_n(5, mask)));
    }
    for mask in 0..8 {
        out.push((format!("D4/{mask:b}"), d4(mask)));
    }
    out
}

pub fn catalan(n: u64) -> u64 {
    (0..n).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}
