#!/usr/bin/env python3
"""Generate src/font8x16.cpp from the glyph artwork below.

The font is an original fixed-pitch 8x16 design covering printable ASCII
plus a replacement glyph. Each glyph is drawn as up to 14 rows of art
('#' = ink) anchored at cell row 2; missing rows are blank. Run with
--specimen to print the whole set for eyeballing.
"""

import sys

W, H = 8, 16
TOP = 2  # first cell row used by the art


def g(*rows):
    return [r.ljust(W, ".") for r in rows]


ART = {
    " ": g(),
    "!": g("...#....", "...#....", "...#....", "...#....", "...#....",
           "...#....", "...#....", "........", "........", "...#....",
           "...#...."),
    '"': g("..#.#...", "..#.#...", "..#.#..."),
    "#": g("........", "..#..#..", "..#..#..", ".######.", "..#..#..",
           "..#..#..", ".######.", "..#..#..", "..#..#.."),
    "$": g("...#....", ".#####..", "#..#..#.", "#..#....", ".#####..",
           "...#..#.", "#..#..#.", ".#####..", "...#...."),
    "%": g("##....#.", "##...#..", "....#...", "...#....", "...#....",
           "..#.....", ".#......", ".#...##.", "#....##."),
    "&": g("..##....", ".#..#...", ".#..#...", "..##....", ".##.....",
           "#..#..#.", "#...#.#.", "#....#..", "#...#.#.", ".###..#."),
    "'": g("...#....", "...#....", "...#....", "...#...."),
    "(": g("....#...", "...#....", "..#.....", "..#.....", "..#.....",
           "..#.....", "..#.....", "..#.....", "..#.....", "...#....",
           "....#..."),
    ")": g("..#.....", "...#....", "....#...", "....#...", "....#...",
           "....#...", "....#...", "....#...", "....#...", "...#....",
           "..#....."),
    "*": g("........", "........", "...#....", ".#.#.#..", "..###...",
           ".#.#.#..", "...#...."),
    "+": g("........", "........", "........", "...#....", "...#....",
           ".#####..", "...#....", "...#...."),
    ",": g("........", "........", "........", "........", "........",
           "........", "........", "........", "........", "...##...",
           "...##...", "....#...", "...#...."),
    "-": g("........", "........", "........", "........", "........",
           ".#####..", ".#####.."),
    ".": g("........", "........", "........", "........", "........",
           "........", "........", "........", "........", "...##...",
           "...##..."),
    "/": g("......#.", "......#.", ".....#..", "....#...", "....#...",
           "...#....", "..#.....", "..#.....", ".#......", "#.......",
           "#......."),
    "0": g("..###...", ".#...#..", "#.....#.", "#....##.", "#...#.#.",
           "#..#..#.", "#.#...#.", "##....#.", "#.....#.", ".#...#..",
           "..###..."),
    "1": g("...#....", "..##....", ".#.#....", "...#....", "...#....",
           "...#....", "...#....", "...#....", "...#....", "...#....",
           ".#####.."),
    "2": g("..###...", ".#...#..", "#.....#.", "......#.", ".....#..",
           "....#...", "...#....", "..#.....", ".#......", "#.......",
           "#######."),
    "3": g("..###...", ".#...#..", "......#.", "......#.", "...##...",
           "......#.", "......#.", "......#.", "#.....#.", ".#...#..",
           "..###..."),
    "4": g(".....#..", "....##..", "...#.#..", "..#..#..", ".#...#..",
           "#....#..", "#######.", ".....#..", ".....#..", ".....#..",
           ".....#.."),
    "5": g("######..", "#.......", "#.......", "#.......", "#####...",
           ".....#..", "......#.", "......#.", "#.....#.", ".#...#..",
           "..###..."),
    "6": g("..###...", ".#...#..", "#.......", "#.......", "#.###...",
           "##...#..", "#.....#.", "#.....#.", "#.....#.", ".#...#..",
           "..###..."),
    "7": g("#######.", "......#.", ".....#..", "....#...", "....#...",
           "...#....", "...#....", "..#.....", "..#.....", "..#.....",
           "..#....."),
    "8": g("..###...", ".#...#..", "#.....#.", ".#...#..", "..###...",
           ".#...#..", "#.....#.", "#.....#.", "#.....#.", ".#...#..",
           "..###..."),
    "9": g("..###...", ".#...#..", "#.....#.", "#.....#.", ".#...##.",
           "..###.#.", "......#.", "......#.", ".....#..", "....#...",
           "..##...."),
    ":": g("........", "........", "........", "...##...", "...##...",
           "........", "........", "........", "...##...", "...##..."),
    ";": g("........", "........", "........", "...##...", "...##...",
           "........", "........", "........", "...##...", "...##...",
           "....#...", "...#...."),
    "<": g("........", "........", ".....#..", "....#...", "...#....",
           "..#.....", ".#......", "..#.....", "...#....", "....#...",
           ".....#.."),
    "=": g("........", "........", "........", "........", ".#####..",
           ".#####..", "........", ".#####..", ".#####.."),
    ">": g("........", "........", ".#......", "..#.....", "...#....",
           "....#...", ".....#..", "....#...", "...#....", "..#.....",
           ".#......"),
    "?": g("..###...", ".#...#..", "#.....#.", "......#.", ".....#..",
           "....#...", "...#....", "...#....", "........", "...#....",
           "...#...."),
    "@": g("..####..", ".#....#.", "#..##.#.", "#.#.#.#.", "#.#.#.#.",
           "#.#.#.#.", "#..###..", "#.......", ".#......", "..####.."),
    "A": g("...#....", "..#.#...", ".#...#..", "#.....#.", "#.....#.",
           "#######.", "#.....#.", "#.....#.", "#.....#.", "#.....#.",
           "#.....#."),
    "B": g("######..", "#.....#.", "#.....#.", "#.....#.", "######..",
           "#.....#.", "#.....#.", "#.....#.", "#.....#.", "#.....#.",
           "######.."),
    "C": g("..####..", ".#....#.", "#.......", "#.......", "#.......",
           "#.......", "#.......", "#.......", "#.......", ".#....#.",
           "..####.."),
    "D": g("#####...", "#....#..", "#.....#.", "#.....#.", "#.....#.",
           "#.....#.", "#.....#.", "#.....#.", "#.....#.", "#....#..",
           "#####..."),
    "E": g("#######.", "#.......", "#.......", "#.......", "#####...",
           "#.......", "#.......", "#.......", "#.......", "#.......",
           "#######."),
    "F": g("#######.", "#.......", "#.......", "#.......", "#####...",
           "#.......", "#.......", "#.......", "#.......", "#.......",
           "#......."),
    "G": g("..####..", ".#....#.", "#.......", "#.......", "#.......",
           "#..####.", "#.....#.", "#.....#.", "#.....#.", ".#....#.",
           "..####.."),
    "H": g("#.....#.", "#.....#.", "#.....#.", "#.....#.", "#######.",
           "#.....#.", "#.....#.", "#.....#.", "#.....#.", "#.....#.",
           "#.....#."),
    "I": g(".#####..", "...#....", "...#....", "...#....", "...#....",
           "...#....", "...#....", "...#....", "...#....", "...#....",
           ".#####.."),
    "J": g("..#####.", ".....#..", ".....#..", ".....#..", ".....#..",
           ".....#..", ".....#..", ".....#..", "#....#..", "#....#..",
           ".####..."),
    "K": g("#.....#.", "#....#..", "#...#...", "#..#....", "#.#.....",
           "##......", "#.#.....", "#..#....", "#...#...", "#....#..",
           "#.....#."),
    "L": g("#.......", "#.......", "#.......", "#.......", "#.......",
           "#.......", "#.......", "#.......", "#.......", "#.......",
           "#######."),
    "M": g("#.....#.", "##...##.", "#.#.#.#.", "#..#..#.", "#..#..#.",
           "#.....#.", "#.....#.", "#.....#.", "#.....#.", "#.....#.",
           "#.....#."),
    "N": g("#.....#.", "##....#.", "#.#...#.", "#.#...#.", "#..#..#.",
           "#..#..#.", "#...#.#.", "#...#.#.", "#....##.", "#.....#.",
           "#.....#."),
    "O": g("..###...", ".#...#..", "#.....#.", "#.....#.", "#.....#.",
           "#.....#.", "#.....#.", "#.....#.", "#.....#.", ".#...#..",
           "..###..."),
    "P": g("######..", "#.....#.", "#.....#.", "#.....#.", "######..",
           "#.......", "#.......", "#.......", "#.......", "#.......",
           "#......."),
    "Q": g("..###...", ".#...#..", "#.....#.", "#.....#.", "#.....#.",
           "#.....#.", "#.....#.", "#..#..#.", "#...#.#.", ".#...#..",
           "..###.#."),
    "R": g("######..", "#.....#.", "#.....#.", "#.....#.", "######..",
           "#.#.....", "#..#....", "#...#...", "#....#..", "#.....#.",
           "#.....#."),
    "S": g("..####..", ".#....#.", "#.......", "#.......", ".##.....",
           "...##...", ".....##.", "......#.", "#.....#.", ".#....#.",
           "..####.."),
    "T": g("#######.", "...#....", "...#....", "...#....", "...#....",
           "...#....", "...#....", "...#....", "...#....", "...#....",
           "...#...."),
    "U": g("#.....#.", "#.....#.", "#.....#.", "#.....#.", "#.....#.",
           "#.....#.", "#.....#.", "#.....#.", "#.....#.", ".#...#..",
           "..###..."),
    "V": g("#.....#.", "#.....#.", "#.....#.", "#.....#.", "#.....#.",
           "#.....#.", ".#...#..", ".#...#..", "..#.#...", "..#.#...",
           "...#...."),
    "W": g("#.....#.", "#.....#.", "#.....#.", "#.....#.", "#.....#.",
           "#.....#.", "#..#..#.", "#..#..#.", "#.#.#.#.", "##...##.",
           "#.....#."),
    "X": g("#.....#.", ".#...#..", "..#.#...", "..#.#...", "...#....",
           "...#....", "...#....", "..#.#...", "..#.#...", ".#...#..",
           "#.....#."),
    "Y": g("#.....#.", ".#...#..", "..#.#...", "...#....", "...#....",
           "...#....", "...#....", "...#....", "...#....", "...#....",
           "...#...."),
    "Z": g("#######.", "......#.", ".....#..", "....#...", "....#...",
           "...#....", "..#.....", "..#.....", ".#......", "#.......",
           "#######."),
    "[": g("..###...", "..#.....", "..#.....", "..#.....", "..#.....",
           "..#.....", "..#.....", "..#.....", "..#.....", "..#.....",
           "..###..."),
    "\\": g("#.......", "#.......", ".#......", "..#.....", "..#.....",
            "...#....", "....#...", "....#...", ".....#..", "......#.",
            "......#."),
    "]": g("..###...", "....#...", "....#...", "....#...", "....#...",
           "....#...", "....#...", "....#...", "....#...", "....#...",
           "..###..."),
    "^": g("...#....", "..#.#...", ".#...#..", "#.....#."),
    "_": g("........", "........", "........", "........", "........",
           "........", "........", "........", "........", "........",
           "........", "#######."),
    "`": g("..#.....", "..##....", "...#...."),
    "a": g("........", "........", "........", "........", "..####..",
           "......#.", "..#####.", ".#....#.", "#.....#.", "#....##.",
           ".####.#."),
    "b": g("#.......", "#.......", "#.......", "#.......", "#.####..",
           "##....#.", "#.....#.", "#.....#.", "#.....#.", "##....#.",
           "#.####.."),
    "c": g("........", "........", "........", "........", "..####..",
           ".#....#.", "#.......", "#.......", "#.......", ".#....#.",
           "..####.."),
    "d": g("......#.", "......#.", "......#.", "......#.", ".####.#.",
           "#....##.", "#.....#.", "#.....#.", "#.....#.", "#....##.",
           ".####.#."),
    "e": g("........", "........", "........", "........", "..####..",
           ".#....#.", "#.....#.", "#######.", "#.......", ".#....#.",
           "..####.."),
    "f": g("...###..", "..#.....", "..#.....", "..#.....", "#####...",
           "..#.....", "..#.....", "..#.....", "..#.....", "..#.....",
           "..#....."),
    "g": g("........", "........", "........", "........", "..###.#.",
           ".#...##.", "#.....#.", "#.....#.", ".#...##.", "..###.#.",
           "......#.", "......#.", ".#...#..", "..###..."),
    "h": g("#.......", "#.......", "#.......", "#.......", "#.###...",
           "##...#..", "#.....#.", "#.....#.", "#.....#.", "#.....#.",
           "#.....#."),
    "i": g("...#....", "...#....", "........", "........", "..##....",
           "...#....", "...#....", "...#....", "...#....", "...#....",
           ".#####.."),
    "j": g("....#...", "....#...", "........", "........", "...##...",
           "....#...", "....#...", "....#...", "....#...", "....#...",
           "....#...", "....#...", "#...#...", ".###...."),
    "k": g("#.......", "#.......", "#.......", "#.......", "#...#...",
           "#..#....", "#.#.....", "##......", "#.#.....", "#..#....",
           "#...#..."),
    "l": g("..##....", "...#....", "...#....", "...#....", "...#....",
           "...#....", "...#....", "...#....", "...#....", "...#....",
           "....##.."),
    "m": g("........", "........", "........", "........", "#.##.##.",
           "#..#..#.", "#..#..#.", "#..#..#.", "#..#..#.", "#..#..#.",
           "#..#..#."),
    "n": g("........", "........", "........", "........", "#.###...",
           "##...#..", "#....#..", "#....#..", "#....#..", "#....#..",
           "#....#.."),
    "o": g("........", "........", "........", "........", "..###...",
           ".#...#..", "#.....#.", "#.....#.", "#.....#.", ".#...#..",
           "..###..."),
    "p": g("........", "........", "........", "........", "#.####..",
           "##....#.", "#.....#.", "#.....#.", "##....#.", "#.####..",
           "#.......", "#.......", "#.......", "#......."),
    "q": g("........", "........", "........", "........", ".####.#.",
           "#....##.", "#.....#.", "#.....#.", "#....##.", ".####.#.",
           "......#.", "......#.", "......#.", "......#."),
    "r": g("........", "........", "........", "........", "#.###...",
           "##...#..", "#.......", "#.......", "#.......", "#.......",
           "#......."),
    "s": g("........", "........", "........", "........", ".#####..",
           "#.......", "#.......", ".####...", ".....#..", ".....#..",
           "#####..."),
    "t": g("........", "........", "..#.....", "..#.....", "#####...",
           "..#.....", "..#.....", "..#.....", "..#.....", "..#.....",
           "...##..."),
    "u": g("........", "........", "........", "........", "#....#..",
           "#....#..", "#....#..", "#....#..", "#....#..", "#...##..",
           ".###.#.."),
    "v": g("........", "........", "........", "........", "#.....#.",
           "#.....#.", ".#...#..", ".#...#..", "..#.#...", "..#.#...",
           "...#...."),
    "w": g("........", "........", "........", "........", "#..#..#.",
           "#..#..#.", "#..#..#.", "#..#..#.", "#..#..#.", "#..#..#.",
           ".##.##.."),
    "x": g("........", "........", "........", "........", "#.....#.",
           ".#...#..", "..#.#...", "...#....", "..#.#...", ".#...#..",
           "#.....#."),
    "y": g("........", "........", "........", "........", "#.....#.",
           "#.....#.", ".#...#..", ".#...#..", "..#.#...", "..#.#...",
           "...#....", "...#....", "..#.....", "##......"),
    "z": g("........", "........", "........", "........", "######..",
           ".....#..", "....#...", "...#....", "..#.....", ".#......",
           "######.."),
    "{": g("....##..", "...#....", "...#....", "...#....", "...#....",
           "..#.....", "...#....", "...#....", "...#....", "...#....",
           "....##.."),
    "|": g("...#....", "...#....", "...#....", "...#....", "...#....",
           "...#....", "...#....", "...#....", "...#....", "...#....",
           "...#...."),
    "}": g("..##....", "....#...", "....#...", "....#...", "....#...",
           ".....#..", "....#...", "....#...", "....#...", "....#...",
           "..##...."),
    "~": g("........", "........", "........", "........", "........",
           ".##...#.", "#..###.."),
}

REPLACEMENT = g("#######.", "#.....#.", "#.#.#.#.", "#..#..#.", "#.#.#.#.",
                "#.....#.", "#.#.#.#.", "#..#..#.", "#.#.#.#.", "#.....#.",
                "#######.")


def embolden(art):
    """Thicken 1px strokes to 2px (down, then right clamped off the spacing
    column) so glyphs survive blur and bleed-through binarization."""
    grid = [[c == "#" for c in row] for row in art]
    h = len(grid)
    down = [[grid[y][x] or (y > 0 and grid[y - 1][x]) for x in range(W)] for y in range(h)]
    out = [[down[y][x] or (x > 0 and x < W - 1 and down[y][x - 1]) for x in range(W)]
           for y in range(h)]
    return ["".join("#" if v else "." for v in row) for row in out]


def full_cell(art, bold=True):
    if bold:
        art = embolden(art)
    rows = ["." * W] * TOP + art
    rows += ["." * W] * (H - len(rows))
    if len(rows) != H:
        raise SystemExit("glyph art taller than the cell")
    for r in rows:
        if len(r) != W or any(c not in ".#" for c in r):
            raise SystemExit("bad art row: %r" % r)
    return rows


def row_mask(row):
    m = 0
    for x, c in enumerate(row):
        if c == "#":
            m |= 1 << (7 - x)
    return m


def build():
    glyphs = []
    for code in range(0x20, 0x7F):
        ch = chr(code)
        if ch not in ART:
            raise SystemExit("missing glyph for %r" % ch)
        glyphs.append((ch, full_cell(ART[ch])))
    glyphs.append(("REPLACEMENT", full_cell(REPLACEMENT)))

    seen = {}
    for ch, rows in glyphs:
        ink = sum(r.count("#") for r in rows)
        if ch != " " and ink < 4:
            raise SystemExit("glyph %r has only %d ink pixels" % (ch, ink))
        key = tuple(rows)
        if key in seen:
            raise SystemExit("glyphs %r and %r are identical" % (seen[key], ch))
        seen[key] = ch
    return glyphs


def emit(glyphs, path):
    lines = []
    lines.append("// Embedded 8x16 fixed-pitch bitmap font.")
    lines.append("// Generated by scripts/gen_font.py -- edit the artwork there.")
    lines.append("")
    lines.append('#include "docsynth/font.hpp"')
    lines.append("")
    lines.append("namespace docsynth {")
    lines.append("")
    lines.append("namespace {")
    lines.append("")
    lines.append("const uint8_t kFontRows[kNumGlyphs][kGlyphHeight] = {")
    for ch, rows in glyphs:
        masks = ", ".join("0x%02x" % row_mask(r) for r in rows)
        label = ch if ch == "REPLACEMENT" else repr(ch)
        lines.append("    {%s},  // %s" % (masks, label))
    lines.append("};")
    lines.append("")
    lines.append("}  // namespace")
    lines.append("")
    lines.append("const uint8_t* glyph_rows(int index) { return kFontRows[index]; }")
    lines.append("")
    lines.append("int glyph_index(uint32_t codepoint) {")
    lines.append("  if (codepoint < kFirstPrintable || codepoint > kLastPrintable)")
    lines.append("    return kReplacementGlyph;")
    lines.append("  return static_cast<int>(codepoint - kFirstPrintable);")
    lines.append("}")
    lines.append("")
    lines.append("char glyph_char(int index) {")
    lines.append("  if (index < 0 || index >= kReplacementGlyph) return '?';")
    lines.append("  return static_cast<char>(kFirstPrintable + index);")
    lines.append("}")
    lines.append("")
    lines.append("int glyph_ink_count(int index) {")
    lines.append("  int n = 0;")
    lines.append("  for (int y = 0; y < kGlyphHeight; ++y)")
    lines.append("    for (int x = 0; x < kGlyphWidth; ++x)")
    lines.append("      n += glyph_pixel(kFontRows[index], x, y);")
    lines.append("  return n;")
    lines.append("}")
    lines.append("")
    lines.append("}  // namespace docsynth")
    lines.append("")
    with open(path, "w") as f:
        f.write("\n".join(lines))


def specimen(glyphs):
    for ch, rows in glyphs:
        print("--- %r" % ch)
        for r in rows:
            print(r)


def main():
    glyphs = build()
    if "--specimen" in sys.argv:
        specimen(glyphs)
        return
    out = sys.argv[1] if len(sys.argv) > 1 else "src/font8x16.cpp"
    emit(glyphs, out)
    print("wrote %s (%d glyphs)" % (out, len(glyphs)))


if __name__ == "__main__":
    main()
