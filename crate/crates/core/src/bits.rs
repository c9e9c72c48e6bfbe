//! Fixed-width bit masks used by the exhaustive searches.

pub(crate) type Mask = u128;

pub(crate) const MASK_BITS: usize = 128;

#[inline]
pub(crate) fn bit(i: usize) -> Mask {
    1u128 << i
}

#[inline]
pub(crate) fn count(m: Mask) -> usize {
    m.count_ones() as usize
}

#[inline]
pub(crate) fn lowest(m: Mask) -> Option<usize> {
    if m == 0 {
        None
    } else {
        Some(m.trailing_zeros() as usize)
    }
}

pub(crate) fn iter(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        let i = lowest(m)?;
        m &= m - 1;
        Some(i)
    })
}
