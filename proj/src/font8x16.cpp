// Embedded 8x16 fixed-pitch bitmap font.
// Generated by scripts/gen_font.py -- edit the artwork there.

#include "docsynth/font.hpp"

namespace docsynth {

namespace {

const uint8_t kFontRows[kNumGlyphs][kGlyphHeight] = {
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00},  // ' '
    {0x00, 0x00, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x00, 0x18, 0x18, 0x00, 0x00, 0x00},  // '!'
    {0x00, 0x00, 0x3c, 0x3c, 0x3c, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00},  // '"'
    {0x00, 0x00, 0x00, 0x36, 0x36, 0x7e, 0x7e, 0x36, 0x7e, 0x7e, 0x36, 0x00, 0x00, 0x00, 0x00, 0x00},  // '#'
    {0x00, 0x00, 0x18, 0x7e, 0xfe, 0xda, 0xfe, 0x7e, 0xda, 0xfe, 0x7e, 0x00, 0x00, 0x00, 0x00, 0x00},  // '$'
    {0x00, 0x00, 0xe2, 0xe6, 0xee, 0x1c, 0x18, 0x38, 0x70, 0x66, 0xe6, 0x00, 0x00, 0x00, 0x00, 0x00},  // '%'
    {0x00, 0x00, 0x38, 0x7c, 0x6c, 0x7c, 0x78, 0xfa, 0xde, 0xce, 0xce, 0xfe, 0x00, 0x00, 0x00, 0x00},  // '&'
    {0x00, 0x00, 0x18, 0x18, 0x18, 0x18, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00},  // "'"
    {0x00, 0x00, 0x0c, 0x1c, 0x38, 0x30, 0x30, 0x30, 0x30, 0x30, 0x30, 0x38, 0x1c, 0x00, 0x00, 0x00},  // '('
    {0x00, 0x00, 0x30, 0x38, 0x1c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x1c, 0x38, 0x00, 0x00, 0x00},  // ')'
    {0x00, 0x00, 0x00, 0x00, 0x18, 0x7e, 0x7e, 0x7e, 0x7e, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00},  // '*'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x18, 0x18, 0x7e, 0x7e, 0x18, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00},  // '+'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x1c, 0x1c, 0x1c, 0x1c, 0x00},  // ','
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x7e, 0x7e, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00},  // '-'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x1c, 0x1c, 0x00, 0x00, 0x00},  // '.'
    {0x00, 0x00, 0x02, 0x02, 0x06, 0x0e, 0x0c, 0x1c, 0x38, 0x30, 0x70, 0xe0, 0xc0, 0x00, 0x00, 0x00},  // '/'
    {0x00, 0x00, 0x3c, 0x7e, 0xe6, 0xc6, 0xce, 0xde, 0xfa, 0xf2, 0xe2, 0xe6, 0x7e, 0x00, 0x00, 0x00},  // '0'
    {0x00, 0x00, 0x18, 0x38, 0x78, 0x78, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x7e, 0x00, 0x00, 0x00},  // '1'
    {0x00, 0x00, 0x3c, 0x7e, 0xe6, 0xc2, 0x06, 0x0e, 0x1c, 0x38, 0x70, 0xe0, 0xfe, 0x00, 0x00, 0x00},  // '2'
    {0x00, 0x00, 0x3c, 0x7e, 0x66, 0x02, 0x1e, 0x1e, 0x02, 0x02, 0xc2, 0xe6, 0x7e, 0x00, 0x00, 0x00},  // '3'
    {0x00, 0x00, 0x06, 0x0e, 0x1e, 0x3e, 0x76, 0xe6, 0xfe, 0xfe, 0x06, 0x06, 0x06, 0x00, 0x00, 0x00},  // '4'
    {0x00, 0x00, 0xfe, 0xfe, 0xc0, 0xc0, 0xfc, 0xfe, 0x06, 0x02, 0xc2, 0xe6, 0x7e, 0x00, 0x00, 0x00},  // '5'
    {0x00, 0x00, 0x3c, 0x7e, 0xe6, 0xc0, 0xfc, 0xfe, 0xe6, 0xc2, 0xc2, 0xe6, 0x7e, 0x00, 0x00, 0x00},  // '6'
    {0x00, 0x00, 0xfe, 0xfe, 0x06, 0x0e, 0x0c, 0x1c, 0x18, 0x38, 0x30, 0x30, 0x30, 0x00, 0x00, 0x00},  // '7'
    {0x00, 0x00, 0x3c, 0x7e, 0xe6, 0xe6, 0x7e, 0x7e, 0xe6, 0xc2, 0xc2, 0xe6, 0x7e, 0x00, 0x00, 0x00},  // '8'
    {0x00, 0x00, 0x3c, 0x7e, 0xe6, 0xc2, 0xe6, 0x7e, 0x3e, 0x02, 0x06, 0x0e, 0x3c, 0x00, 0x00, 0x00},  // '9'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x1c, 0x1c, 0x1c, 0x00, 0x00, 0x1c, 0x1c, 0x00, 0x00, 0x00, 0x00},  // ':'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x1c, 0x1c, 0x1c, 0x00, 0x00, 0x1c, 0x1c, 0x1c, 0x1c, 0x00, 0x00},  // ';'
    {0x00, 0x00, 0x00, 0x00, 0x06, 0x0e, 0x1c, 0x38, 0x70, 0x70, 0x38, 0x1c, 0x0e, 0x00, 0x00, 0x00},  // '<'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x7e, 0x7e, 0x7e, 0x7e, 0x7e, 0x00, 0x00, 0x00, 0x00, 0x00},  // '='
    {0x00, 0x00, 0x00, 0x00, 0x60, 0x70, 0x38, 0x1c, 0x0e, 0x0e, 0x1c, 0x38, 0x70, 0x00, 0x00, 0x00},  // '>'
    {0x00, 0x00, 0x3c, 0x7e, 0xe6, 0xc2, 0x06, 0x0e, 0x1c, 0x18, 0x18, 0x18, 0x18, 0x00, 0x00, 0x00},  // '?'
    {0x00, 0x00, 0x3e, 0x7e, 0xfe, 0xfe, 0xfe, 0xfe, 0xfe, 0xde, 0xe0, 0x7e, 0x00, 0x00, 0x00, 0x00},  // '@'
    {0x00, 0x00, 0x18, 0x3c, 0x7e, 0xe6, 0xc2, 0xfe, 0xfe, 0xc2, 0xc2, 0xc2, 0xc2, 0x00, 0x00, 0x00},  // 'A'
    {0x00, 0x00, 0xfe, 0xfe, 0xc2, 0xc2, 0xfe, 0xfe, 0xc2, 0xc2, 0xc2, 0xc2, 0xfe, 0x00, 0x00, 0x00},  // 'B'
    {0x00, 0x00, 0x3e, 0x7e, 0xe2, 0xc0, 0xc0, 0xc0, 0xc0, 0xc0, 0xc0, 0xe2, 0x7e, 0x00, 0x00, 0x00},  // 'C'
    {0x00, 0x00, 0xfc, 0xfe, 0xc6, 0xc2, 0xc2, 0xc2, 0xc2, 0xc2, 0xc2, 0xc6, 0xfe, 0x00, 0x00, 0x00},  // 'D'
    {0x00, 0x00, 0xfe, 0xfe, 0xc0, 0xc0, 0xfc, 0xfc, 0xc0, 0xc0, 0xc0, 0xc0, 0xfe, 0x00, 0x00, 0x00},  // 'E'
    {0x00, 0x00, 0xfe, 0xfe, 0xc0, 0xc0, 0xfc, 0xfc, 0xc0, 0xc0, 0xc0, 0xc0, 0xc0, 0x00, 0x00, 0x00},  // 'F'
    {0x00, 0x00, 0x3e, 0x7e, 0xe2, 0xc0, 0xc0, 0xde, 0xde, 0xc2, 0xc2, 0xe2, 0x7e, 0x00, 0x00, 0x00},  // 'G'
    {0x00, 0x00, 0xc2, 0xc2, 0xc2, 0xc2, 0xfe, 0xfe, 0xc2, 0xc2, 0xc2, 0xc2, 0xc2, 0x00, 0x00, 0x00},  // 'H'
    {0x00, 0x00, 0x7e, 0x7e, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x7e, 0x00, 0x00, 0x00},  // 'I'
    {0x00, 0x00, 0x3e, 0x3e, 0x06, 0x06, 0x06, 0x06, 0x06, 0x06, 0xc6, 0xc6, 0xfe, 0x00, 0x00, 0x00},  // 'J'
    {0x00, 0x00, 0xc2, 0xc6, 0xce, 0xdc, 0xf8, 0xf0, 0xf0, 0xf8, 0xdc, 0xce, 0xc6, 0x00, 0x00, 0x00},  // 'K'
    {0x00, 0x00, 0xc0, 0xc0, 0xc0, 0xc0, 0xc0, 0xc0, 0xc0, 0xc0, 0xc0, 0xc0, 0xfe, 0x00, 0x00, 0x00},  // 'L'
    {0x00, 0x00, 0xc2, 0xe6, 0xfe, 0xfe, 0xda, 0xda, 0xc2, 0xc2, 0xc2, 0xc2, 0xc2, 0x00, 0x00, 0x00},  // 'M'
    {0x00, 0x00, 0xc2, 0xe2, 0xf2, 0xf2, 0xfa, 0xda, 0xde, 0xce, 0xce, 0xc6, 0xc2, 0x00, 0x00, 0x00},  // 'N'
    {0x00, 0x00, 0x3c, 0x7e, 0xe6, 0xc2, 0xc2, 0xc2, 0xc2, 0xc2, 0xc2, 0xe6, 0x7e, 0x00, 0x00, 0x00},  // 'O'
    {0x00, 0x00, 0xfe, 0xfe, 0xc2, 0xc2, 0xfe, 0xfe, 0xc0, 0xc0, 0xc0, 0xc0, 0xc0, 0x00, 0x00, 0x00},  // 'P'
    {0x00, 0x00, 0x3c, 0x7e, 0xe6, 0xc2, 0xc2, 0xc2, 0xc2, 0xda, 0xde, 0xee, 0x7e, 0x00, 0x00, 0x00},  // 'Q'
    {0x00, 0x00, 0xfe, 0xfe, 0xc2, 0xc2, 0xfe, 0xfe, 0xf8, 0xdc, 0xce, 0xc6, 0xc2, 0x00, 0x00, 0x00},  // 'R'
    {0x00, 0x00, 0x3e, 0x7e, 0xe2, 0xc0, 0xf0, 0x7c, 0x1e, 0x06, 0xc2, 0xe2, 0x7e, 0x00, 0x00, 0x00},  // 'S'
    {0x00, 0x00, 0xfe, 0xfe, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x00, 0x00, 0x00},  // 'T'
    {0x00, 0x00, 0xc2, 0xc2, 0xc2, 0xc2, 0xc2, 0xc2, 0xc2, 0xc2, 0xc2, 0xe6, 0x7e, 0x00, 0x00, 0x00},  // 'U'
    {0x00, 0x00, 0xc2, 0xc2, 0xc2, 0xc2, 0xc2, 0xc2, 0xe6, 0x66, 0x7e, 0x3c, 0x3c, 0x00, 0x00, 0x00},  // 'V'
    {0x00, 0x00, 0xc2, 0xc2, 0xc2, 0xc2, 0xc2, 0xc2, 0xda, 0xda, 0xfe, 0xfe, 0xe6, 0x00, 0x00, 0x00},  // 'W'
    {0x00, 0x00, 0xc2, 0xe6, 0x7e, 0x3c, 0x3c, 0x18, 0x18, 0x3c, 0x3c, 0x7e, 0xe6, 0x00, 0x00, 0x00},  // 'X'
    {0x00, 0x00, 0xc2, 0xe6, 0x7e, 0x3c, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x00, 0x00, 0x00},  // 'Y'
    {0x00, 0x00, 0xfe, 0xfe, 0x06, 0x0e, 0x0c, 0x1c, 0x38, 0x30, 0x70, 0xe0, 0xfe, 0x00, 0x00, 0x00},  // 'Z'
    {0x00, 0x00, 0x3c, 0x3c, 0x30, 0x30, 0x30, 0x30, 0x30, 0x30, 0x30, 0x30, 0x3c, 0x00, 0x00, 0x00},  // '['
    {0x00, 0x00, 0xc0, 0xc0, 0xe0, 0x70, 0x30, 0x38, 0x1c, 0x0c, 0x0e, 0x06, 0x02, 0x00, 0x00, 0x00},  // '\\'
    {0x00, 0x00, 0x3c, 0x3c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x3c, 0x00, 0x00, 0x00},  // ']'
    {0x00, 0x00, 0x18, 0x3c, 0x7e, 0xe6, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00},  // '^'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0xfe, 0x00, 0x00},  // '_'
    {0x00, 0x00, 0x30, 0x38, 0x38, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00},  // '`'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x3e, 0x3e, 0x3e, 0x7e, 0xe2, 0xc6, 0xfe, 0x00, 0x00, 0x00},  // 'a'
    {0x00, 0x00, 0xc0, 0xc0, 0xc0, 0xc0, 0xfe, 0xfe, 0xe2, 0xc2, 0xc2, 0xe2, 0xfe, 0x00, 0x00, 0x00},  // 'b'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x3e, 0x7e, 0xe2, 0xc0, 0xc0, 0xe2, 0x7e, 0x00, 0x00, 0x00},  // 'c'
    {0x00, 0x00, 0x02, 0x02, 0x02, 0x02, 0x7e, 0xfe, 0xc6, 0xc2, 0xc2, 0xc6, 0xfe, 0x00, 0x00, 0x00},  // 'd'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x3e, 0x7e, 0xe2, 0xfe, 0xfe, 0xe2, 0x7e, 0x00, 0x00, 0x00},  // 'e'
    {0x00, 0x00, 0x1e, 0x3e, 0x30, 0x30, 0xfc, 0xfc, 0x30, 0x30, 0x30, 0x30, 0x30, 0x00, 0x00, 0x00},  // 'f'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x3e, 0x7e, 0xe6, 0xc2, 0xe6, 0x7e, 0x3e, 0x02, 0x66, 0x7e},  // 'g'
    {0x00, 0x00, 0xc0, 0xc0, 0xc0, 0xc0, 0xfc, 0xfe, 0xe6, 0xc2, 0xc2, 0xc2, 0xc2, 0x00, 0x00, 0x00},  // 'h'
    {0x00, 0x00, 0x18, 0x18, 0x18, 0x00, 0x38, 0x38, 0x18, 0x18, 0x18, 0x18, 0x7e, 0x00, 0x00, 0x00},  // 'i'
    {0x00, 0x00, 0x0c, 0x0c, 0x0c, 0x00, 0x1c, 0x1c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0xcc, 0xfc},  // 'j'
    {0x00, 0x00, 0xc0, 0xc0, 0xc0, 0xc0, 0xcc, 0xdc, 0xf8, 0xf0, 0xf0, 0xf8, 0xdc, 0x00, 0x00, 0x00},  // 'k'
    {0x00, 0x00, 0x38, 0x38, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x1e, 0x00, 0x00, 0x00},  // 'l'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0xfe, 0xfe, 0xda, 0xda, 0xda, 0xda, 0xda, 0x00, 0x00, 0x00},  // 'm'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0xfc, 0xfe, 0xe6, 0xc6, 0xc6, 0xc6, 0xc6, 0x00, 0x00, 0x00},  // 'n'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x3c, 0x7e, 0xe6, 0xc2, 0xc2, 0xe6, 0x7e, 0x00, 0x00, 0x00},  // 'o'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0xfe, 0xfe, 0xe2, 0xc2, 0xe2, 0xfe, 0xfe, 0xc0, 0xc0, 0xc0},  // 'p'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x7e, 0xfe, 0xc6, 0xc2, 0xc6, 0xfe, 0x7e, 0x02, 0x02, 0x02},  // 'q'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0xfc, 0xfe, 0xe6, 0xc0, 0xc0, 0xc0, 0xc0, 0x00, 0x00, 0x00},  // 'r'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x7e, 0xfe, 0xc0, 0xfc, 0x7e, 0x06, 0xfe, 0x00, 0x00, 0x00},  // 's'
    {0x00, 0x00, 0x00, 0x00, 0x30, 0x30, 0xfc, 0xfc, 0x30, 0x30, 0x30, 0x30, 0x3c, 0x00, 0x00, 0x00},  // 't'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0xc6, 0xc6, 0xc6, 0xc6, 0xc6, 0xce, 0xfe, 0x00, 0x00, 0x00},  // 'u'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0xc2, 0xc2, 0xe6, 0x66, 0x7e, 0x3c, 0x3c, 0x00, 0x00, 0x00},  // 'v'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0xda, 0xda, 0xda, 0xda, 0xda, 0xda, 0xfe, 0x00, 0x00, 0x00},  // 'w'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0xc2, 0xe6, 0x7e, 0x3c, 0x3c, 0x7e, 0xe6, 0x00, 0x00, 0x00},  // 'x'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0xc2, 0xc2, 0xe6, 0x66, 0x7e, 0x3c, 0x3c, 0x18, 0x38, 0xf0},  // 'y'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0xfe, 0xfe, 0x0e, 0x1c, 0x38, 0x70, 0xfe, 0x00, 0x00, 0x00},  // 'z'
    {0x00, 0x00, 0x0e, 0x1e, 0x18, 0x18, 0x18, 0x38, 0x38, 0x18, 0x18, 0x18, 0x1e, 0x00, 0x00, 0x00},  // '{'
    {0x00, 0x00, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x18, 0x00, 0x00, 0x00},  // '|'
    {0x00, 0x00, 0x38, 0x3c, 0x0c, 0x0c, 0x0c, 0x0e, 0x0e, 0x0c, 0x0c, 0x0c, 0x3c, 0x00, 0x00, 0x00},  // '}'
    {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x72, 0xfe, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00},  // '~'
    {0x00, 0x00, 0xfe, 0xfe, 0xfe, 0xfe, 0xfe, 0xfe, 0xfe, 0xfe, 0xfe, 0xfe, 0xfe, 0x00, 0x00, 0x00},  // REPLACEMENT
};

}  // namespace

const uint8_t* glyph_rows(int index) { return kFontRows[index]; }

int glyph_index(uint32_t codepoint) {
  if (codepoint < kFirstPrintable || codepoint > kLastPrintable)
    return kReplacementGlyph;
  return static_cast<int>(codepoint - kFirstPrintable);
}

char glyph_char(int index) {
  if (index < 0 || index >= kReplacementGlyph) return '?';
  return static_cast<char>(kFirstPrintable + index);
}

int glyph_ink_count(int index) {
  int n = 0;
  for (int y = 0; y < kGlyphHeight; ++y)
    for (int x = 0; x < kGlyphWidth; ++x)
      n += glyph_pixel(kFontRows[index], x, y);
  return n;
}

}  // namespace docsynth
