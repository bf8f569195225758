#![allow(dead_code)]

use gconc::{Complex64, PureState, QuditDims};

/// Mixed-radix labels of `flat`, particle 0 most significant.
pub fn digits(dims: &[usize], mut flat: usize) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = flat % dims[k];
        flat /= dims[k];
    }
    out
}

fn pack(dims: &[usize], labels: &[usize]) -> usize {
    labels.iter().zip(dims).fold(0, |acc, (l, d)| acc * d + l)
}

/// Reduced density matrix on `keep` by summing `psi_x conj(psi_y)` over every
/// pair of basis states that agree outside `keep`.
pub fn brute_reduced(state: &PureState, keep: &[usize]) -> (usize, Vec<Complex64>) {
    let dims = state.dims().as_slice();
    let kd: Vec<usize> = keep.iter().map(|&k| dims[k]).collect();
    let dm: usize = kd.iter().product();
    let amps = state.amplitudes();
    let mut rho = vec![Complex64::new(0.0, 0.0); dm * dm];
    for x in 0..amps.len() {
        let lx = digits(dims, x);
        for y in 0..amps.len() {
            let ly = digits(dims, y);
            if (0..dims.len()).any(|k| !keep.contains(&k) && lx[k] != ly[k]) {
                continue;
            }
            let i = pack(&kd, &keep.iter().map(|&k| lx[k]).collect::<Vec<_>>());
            let j = pack(&kd, &keep.iter().map(|&k| ly[k]).collect::<Vec<_>>());
            rho[i * dm + j] += amps[x] * amps[y].conj();
        }
    }
    (dm, rho)
}

/// `E_M` from the brute-force reduction and the plain purity formula.
pub fn oracle_e(state: &PureState, keep: &[usize]) -> f64 {
    let (_, rho) = brute_reduced(state, keep);
    let purity: f64 = rho.iter().map(|z| z.norm_sqr()).sum();
    (2.0 * (1.0 - purity)).max(0.0).sqrt()
}

pub fn dims(d: &[usize]) -> QuditDims {
    QuditDims::new(d.to_vec()).unwrap()
}

/// Dimension sets used for randomized cross-checks.
pub const CORPUS: [&[usize]; 6] = [
    &[2, 2],
    &[2, 3],
    &[3, 3],
    &[2, 2, 2],
    &[2, 2, 2, 2],
    &[2, 3, 4],
];
