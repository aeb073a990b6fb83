#!/usr/bin/env python3
"""Regenerates include/corpusmix/unicode_tables.hpp from the Python
unicodedata module. Run from the repository root:

    python3 tools/gen_unicode_tables.py > include/corpusmix/unicode_tables.hpp
"""

import sys
import unicodedata


def ranges(codepoints):
    out = []
    for cp in sorted(codepoints):
        if out and cp == out[-1][1] + 1:
            out[-1][1] = cp
        else:
            out.append([cp, cp])
    return out


def main():
    punct = [cp for cp in range(0x110000)
             if unicodedata.category(chr(cp)).startswith("P")]
    space = [cp for cp in range(0x110000) if chr(cp).isspace()]
    lower = []
    for cp in range(0x110000):
        lc = chr(cp).lower()
        if len(lc) == 1 and lc != chr(cp):
            lower.append((cp, ord(lc)))

    w = sys.stdout.write
    w("// Unicode classification tables. Generated by tools/gen_unicode_tables.py\n")
    w("// from the Unicode character database (unidata version %s).\n"
      % unicodedata.unidata_version)
    w("// Do not edit by hand.\n")
    w("#pragma once\n\n")
    w("#include <cstdint>\n\n")
    w("namespace corpusmix::detail {\n\n")

    w("struct CpRange { char32_t lo; char32_t hi; };\n")
    w("struct CpPair { char32_t from; char32_t to; };\n\n")

    pr = ranges(punct)
    w("// General category P* (punctuation), inclusive ranges.\n")
    w("inline constexpr CpRange kPunctRanges[] = {\n")
    for i, (lo, hi) in enumerate(pr):
        sep = "\n" if (i + 1) % 6 == 0 else " "
        w("    {0x%04X, 0x%04X},%s" % (lo, hi, sep) if sep == " "
          else "    {0x%04X, 0x%04X},%s" % (lo, hi, sep))
    w("\n};\n\n")

    sr = ranges(space)
    w("// Whitespace code points, inclusive ranges.\n")
    w("inline constexpr CpRange kSpaceRanges[] = {\n")
    for lo, hi in sr:
        w("    {0x%04X, 0x%04X},\n" % (lo, hi))
    w("};\n\n")

    w("// Single-code-point lowercase mappings, sorted by source code point.\n")
    w("inline constexpr CpPair kLowerMap[] = {\n")
    for i, (f, t) in enumerate(lower):
        sep = "\n" if (i + 1) % 6 == 0 else " "
        w("    {0x%04X, 0x%04X},%s" % (f, t, sep))
    w("\n};\n\n")

    w("}  // namespace corpusmix::detail\n")


if __name__ == "__main__":
    main()
