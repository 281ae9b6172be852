use super::Anchor;
use crate::error::{Error, Result};
use crate::image::GrayImage;

/// Sets a side x side square to intensity 0, either centered or at the
/// top-left corner. Everything outside the square is untouched.
pub fn attack_zeroing(img: &GrayImage, side: u32, anchor: Anchor) -> Result<GrayImage> {
    let (w, h) = (img.width(), img.height());
    if side == 0 || side > w.min(h) {
        return Err(Error::InvalidAttack(format!(
            "zeroing side {side} outside [1, {}]",
            w.min(h)
        )));
    }
    let (x0, y0) = match anchor {
        Anchor::Center => ((w - side) / 2, (h - side) / 2),
        Anchor::TopLeft => (0, 0),
    };
    let mut out = img.clone();
    let w = w as usize;
    for y in y0..y0 + side {
        let row = y as usize * w;
        out.pixels_mut()[row + x0 as usize..row + (x0 + side) as usize].fill(0);
    }
    Ok(out)
}
