//! Binary snapshot files.
//!
//! Layout (little-endian): the magic bytes `GMHD2D\0\0`, format version
//! `u32 = 1`, `n: u32`, `t: f64`, then ν, κ, α, β as `f64`, then the
//! physical-space ω and a as two n×n row-major `f64` arrays.

use std::io::{Read, Write};
use std::path::Path;

use ndarray::Array2;

use super::{GmhdState, Params};
use crate::error::{GmhdError, Result};
use crate::spectral::{Grid, PhysicalField};

pub const MAGIC: &[u8; 8] = b"GMHD2D\0\0";
pub const FORMAT_VERSION: u32 = 1;

/// Header fields stored alongside the state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SnapshotHeader {
    pub n: usize,
    pub t: f64,
    pub nu: f64,
    pub kappa: f64,
    pub alpha: f64,
    pub beta: f64,
}

pub fn write_snapshot<W: Write>(mut w: W, state: &GmhdState, params: &Params) -> Result<()> {
    let n = state.grid().n();
    let n32 = u32::try_from(n).map_err(|_| GmhdError::Format(format!("grid size {n} too large")))?;
    w.write_all(MAGIC)?;
    w.write_all(&FORMAT_VERSION.to_le_bytes())?;
    w.write_all(&n32.to_le_bytes())?;
    for v in [state.t, params.nu, params.kappa, params.alpha, params.beta] {
        w.write_all(&v.to_le_bytes())?;
    }
    let mut buf = Vec::with_capacity(8 * n * n);
    for f in [&state.omega_hat, &state.a_hat] {
        buf.clear();
        for v in f.to_physical().values().iter() {
            buf.extend_from_slice(&v.to_le_bytes());
        }
        w.write_all(&buf)?;
    }
    w.flush()?;
    Ok(())
}

pub fn save_snapshot(path: &Path, state: &GmhdState, params: &Params) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_snapshot(std::io::BufWriter::new(file), state, params)
}

fn read_array<const N: usize, R: Read>(r: &mut R) -> Result<[u8; N]> {
    let mut b = [0u8; N];
    r.read_exact(&mut b).map_err(|e| match e.kind() {
        std::io::ErrorKind::UnexpectedEof => GmhdError::Format("truncated snapshot".into()),
        _ => GmhdError::Io(e),
    })?;
    Ok(b)
}

/// Reads a snapshot. The fields are transformed back to spectral space and
/// normalized (dealiased, Hermitian, zero mean).
pub fn read_snapshot<R: Read>(mut r: R) -> Result<(GmhdState, SnapshotHeader)> {
    if &read_array::<8, _>(&mut r)? != MAGIC {
        return Err(GmhdError::Format("bad magic".into()));
    }
    let version = u32::from_le_bytes(read_array(&mut r)?);
    if version != FORMAT_VERSION {
        return Err(GmhdError::Format(format!("unsupported version {version}")));
    }
    let n = u32::from_le_bytes(read_array(&mut r)?) as usize;
    let mut head = [0.0; 5];
    for v in &mut head {
        *v = f64::from_le_bytes(read_array(&mut r)?);
    }
    let grid = Grid::new(n).map_err(|e| GmhdError::Format(e.to_string()))?;
    let mut fields = Vec::with_capacity(2);
    for _ in 0..2 {
        let mut bytes = vec![0u8; 8 * n * n];
        r.read_exact(&mut bytes)
            .map_err(|_| GmhdError::Format("truncated snapshot".into()))?;
        let vals: Vec<f64> = bytes
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().expect("8-byte chunk")))
            .collect();
        let arr = Array2::from_shape_vec((n, n), vals).expect("n×n");
        fields.push(PhysicalField::from_values(&grid, arr)?.to_spectral());
    }
    let a = fields.pop().expect("two fields");
    let omega = fields.pop().expect("two fields");
    let [t, nu, kappa, alpha, beta] = head;
    let state = GmhdState::new(omega, a, t)?;
    Ok((
        state,
        SnapshotHeader {
            n,
            t,
            nu,
            kappa,
            alpha,
            beta,
        },
    ))
}

pub fn load_snapshot(path: &Path) -> Result<(GmhdState, SnapshotHeader)> {
    read_snapshot(std::io::BufReader::new(std::fs::File::open(path)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{initial_condition, InitialKind};

    #[test]
    fn round_trip() {
        let g = Grid::new(16).unwrap();
        let mut s = initial_condition(
            &InitialKind::RandomBandLimited {
                k_max: 4,
                amplitude: 1.0,
            },
            &g,
            9,
        )
        .unwrap();
        s.t = 0.75;
        let p = Params::new(0.5, 2.0, 0.25, 1.5).unwrap();
        let mut buf = Vec::new();
        write_snapshot(&mut buf, &s, &p).unwrap();
        assert_eq!(buf.len(), 8 + 4 + 4 + 5 * 8 + 2 * 8 * 16 * 16);
        assert_eq!(&buf[..8], MAGIC);
        let (back, h) = read_snapshot(buf.as_slice()).unwrap();
        assert_eq!((h.n, h.t, h.nu, h.kappa, h.alpha, h.beta), (16, 0.75, 0.5, 2.0, 0.25, 1.5));
        assert!((&back.omega_hat - &s.omega_hat).max_abs_coeff() < 1e-14);
        assert!((&back.a_hat - &s.a_hat).max_abs_coeff() < 1e-14);
    }

    #[test]
    fn rejects_unknown_version_and_truncation() {
        let g = Grid::new(8).unwrap();
        let mut buf = Vec::new();
        write_snapshot(&mut buf, &GmhdState::zero(&g), &Params::default()).unwrap();
        let mut bad = buf.clone();
        bad[8] = 2;
        assert!(matches!(read_snapshot(bad.as_slice()), Err(GmhdError::Format(_))));
        buf.truncate(buf.len() - 1);
        assert!(matches!(read_snapshot(buf.as_slice()), Err(GmhdError::Format(_))));
        assert!(read_snapshot(&b"NOTASNAP"[..]).is_err());
    }
}
