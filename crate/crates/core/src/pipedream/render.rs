use super::PipeDream;

/// One text line per grid row; row `r` shows `n - r + 1` cells, where `n` is
/// the size of the target permutation.
pub fn render_grid(dream: &PipeDream) -> String {
    let n = dream
        .crossings()
        .iter()
        .map(|c| (c.row + c.col) as usize)
        .max()
        .unwrap_or(0)
        .max(dream.target().n())
        .max(1);
    let cells = dream.cells();
    let mut out = String::new();
    for r in 1..=n {
        for c in 1..=(n - r + 1) {
            let glyph = if cells.binary_search(&(r as u32, c as u32)).is_ok() {
                '+'
            } else {
                '.'
            };
            out.push(glyph);
        }
        out.push('\n');
    }
    out
}
