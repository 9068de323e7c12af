use super::EmitError;

/// Largest value a four-byte variable-length quantity can hold.
pub const VLQ_MAX: u32 = (1 << 28) - 1;

/// Encodes `n` as a MIDI variable-length quantity: big-endian groups of seven
/// bits, high bit set on every byte but the last.
pub fn encode_vlq(n: u32) -> Result<Vec<u8>, EmitError> {
    let mut out = Vec::with_capacity(4);
    write_vlq(&mut out, n)?;
    Ok(out)
}

pub(crate) fn write_vlq(buf: &mut Vec<u8>, n: u32) -> Result<(), EmitError> {
    if n > VLQ_MAX {
        return Err(EmitError::VlqOverflow(n as u64));
    }
    for shift in [21u32, 14, 7] {
        if n >> shift != 0 {
            buf.push(((n >> shift) & 0x7f) as u8 | 0x80);
        }
    }
    buf.push((n & 0x7f) as u8);
    Ok(())
}
