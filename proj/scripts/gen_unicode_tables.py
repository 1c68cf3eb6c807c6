#!/usr/bin/env python3
"""Regenerates src/unicode_tables.inc from the Python unicodedata module.

Emits three tables:
  - punctuation ranges (general categories Pc, Pd, Ps, Pe, Pi, Pf, Po)
  - White_Space ranges (the Unicode White_Space property list)
  - simple lowercase mapping pairs (single-scalar mappings only)

Run from the repository root:  python3 scripts/gen_unicode_tables.py
"""

import sys
import unicodedata

PUNCT_CATEGORIES = {"Pc", "Pd", "Ps", "Pe", "Pi", "Pf", "Po"}

# White_Space property code points (PropList.txt). Stable across Unicode
# versions for decades; unicodedata does not expose property lists, so the
# list is pinned here.
WHITESPACE = (
    list(range(0x0009, 0x000E))
    + [0x0020, 0x0085, 0x00A0, 0x1680]
    + list(range(0x2000, 0x200B))
    + [0x2028, 0x2029, 0x202F, 0x205F, 0x3000]
)


def to_ranges(codepoints):
    ranges = []
    lo = prev = None
    for cp in sorted(codepoints):
        if lo is None:
            lo = prev = cp
        elif cp == prev + 1:
            prev = cp
        else:
            ranges.append((lo, prev))
            lo = prev = cp
    if lo is not None:
        ranges.append((lo, prev))
    return ranges


def main():
    punct = [
        cp
        for cp in range(0x110000)
        if unicodedata.category(chr(cp)) in PUNCT_CATEGORIES
    ]
    punct_ranges = to_ranges(punct)
    ws_ranges = to_ranges(WHITESPACE)

    # str.lower() applies the full lowercase mapping; keeping only
    # single-scalar results matches the simple mapping everywhere except
    # U+0130, which is added explicitly (simple mapping: U+0069).
    lower = {}
    for cp in range(0x110000):
        low = chr(cp).lower()
        if len(low) == 1 and low != chr(cp):
            lower[cp] = ord(low)
    lower[0x0130] = 0x0069
    lower_pairs = sorted(lower.items())

    out = sys.stdout
    out.write("// Generated by scripts/gen_unicode_tables.py")
    out.write(" (Unicode %s). Do not edit.\n\n" % unicodedata.unidata_version)

    def emit_ranges(name, ranges):
        out.write("inline constexpr CodepointRange %s[] = {\n" % name)
        for i in range(0, len(ranges), 4):
            row = ", ".join(
                "{0x%X, 0x%X}" % (lo, hi) for lo, hi in ranges[i : i + 4]
            )
            out.write("    %s,\n" % row)
        out.write("};\n\n")

    emit_ranges("kPunctRanges", punct_ranges)
    emit_ranges("kWhitespaceRanges", ws_ranges)

    out.write("inline constexpr LowercasePair kLowercasePairs[] = {\n")
    for i in range(0, len(lower_pairs), 4):
        row = ", ".join(
            "{0x%X, 0x%X}" % (cp, low) for cp, low in lower_pairs[i : i + 4]
        )
        out.write("    %s,\n" % row)
    out.write("};\n")


if __name__ == "__main__":
    main()
