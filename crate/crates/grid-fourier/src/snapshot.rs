//! Binary grid snapshots for debugging and golden-file tests.
//!
//! Layout: magic "QGF1", q (u32 LE), side (u8: 0 space / 1 frequency),
//! axis count (u8 = 2), then per axis extent and cell exponents (i32 LE),
//! then row-major cells as interleaved re/im f64 LE.

use std::io::{Read, Write};

use num_complex::Complex64;

use crate::error::GridError;
use crate::function::GridFunction;
use crate::spec::{Axis, GridSpec, Side};

const MAGIC: &[u8; 4] = b"QGF1";

pub fn write_snapshot(f: &GridFunction, mut w: impl Write) -> Result<(), GridError> {
    w.write_all(MAGIC)?;
    w.write_all(&f.spec().q.to_le_bytes())?;
    w.write_all(&[match f.side() {
        Side::Space => 0u8,
        Side::Frequency => 1,
    }])?;
    w.write_all(&[2u8])?;
    for ax in &f.spec().axes {
        w.write_all(&ax.extent.to_le_bytes())?;
        w.write_all(&ax.cell.to_le_bytes())?;
    }
    for v in f.values() {
        w.write_all(&v.re.to_le_bytes())?;
        w.write_all(&v.im.to_le_bytes())?;
    }
    Ok(())
}

pub fn read_snapshot(mut r: impl Read) -> Result<GridFunction, GridError> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(GridError::SnapshotFormat("bad magic"));
    }
    let mut b4 = [0u8; 4];
    r.read_exact(&mut b4)?;
    let q = u32::from_le_bytes(b4);
    let mut b1 = [0u8; 1];
    r.read_exact(&mut b1)?;
    let side = match b1[0] {
        0 => Side::Space,
        1 => Side::Frequency,
        _ => return Err(GridError::SnapshotFormat("bad side tag")),
    };
    r.read_exact(&mut b1)?;
    if b1[0] != 2 {
        return Err(GridError::SnapshotFormat("unsupported axis count"));
    }
    let mut axes = [Axis::new(0, 0); 2];
    for ax in &mut axes {
        r.read_exact(&mut b4)?;
        ax.extent = i32::from_le_bytes(b4);
        r.read_exact(&mut b4)?;
        ax.cell = i32::from_le_bytes(b4);
    }
    let spec = GridSpec::new(q, axes)?;
    spec.check_budget()?;
    let mut values = Vec::with_capacity(spec.len());
    let mut b8 = [0u8; 8];
    for _ in 0..spec.len() {
        r.read_exact(&mut b8)?;
        let re = f64::from_le_bytes(b8);
        r.read_exact(&mut b8)?;
        let im = f64::from_le_bytes(b8);
        values.push(Complex64::new(re, im));
    }
    GridFunction::from_values(spec, side, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_golden_header() {
        let spec = GridSpec::new(3, [Axis::new(1, 1), Axis::new(0, 1)]).unwrap();
        let f = GridFunction::from_fn(spec, Side::Frequency, |i0, i1| {
            Complex64::new(i0 as f64, -(i1 as f64))
        })
        .unwrap();
        let mut buf = Vec::new();
        write_snapshot(&f, &mut buf).unwrap();
        // 4 magic + 4 q + 1 side + 1 ndim + 16 axes + 27 cells * 16 bytes.
        assert_eq!(buf.len(), 26 + 27 * 16);
        assert_eq!(&buf[..4], b"QGF1");
        assert_eq!(buf[8], 1);
        let back = read_snapshot(buf.as_slice()).unwrap();
        assert_eq!(&back, &f);
    }
}
