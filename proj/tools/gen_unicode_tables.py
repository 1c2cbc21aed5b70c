#!/usr/bin/env python3
"""Regenerates include/sarcbench/unicode_tables.hpp.

Emits compact interval tables for the character classes the featurizer
needs (word characters, uppercase letters, whitespace) and a run-length
encoded lowercase mapping. Run from the repository root:

    python3 tools/gen_unicode_tables.py
"""

import re
import sys
import unicodedata

MAX_CP = 0x110000
WORD_RE = re.compile(r"\w")


def intervals(pred):
    out = []
    start = None
    for cp in range(MAX_CP):
        if pred(cp):
            if start is None:
                start = cp
        else:
            if start is not None:
                out.append((start, cp - 1))
                start = None
    if start is not None:
        out.append((start, MAX_CP - 1))
    return out


def lower_runs():
    """Greedy (start, end, stride, delta) runs for 1:1 lowercase mappings,
    plus an exception list for mappings that expand to several codepoints."""
    simple = {}
    multi = []
    for cp in range(MAX_CP):
        ch = chr(cp)
        low = ch.lower()
        if low == ch:
            continue
        if len(low) == 1:
            simple[cp] = ord(low)
        else:
            multi.append((cp, [ord(c) for c in low]))

    runs = []
    covered = set()
    for cp in sorted(simple):
        if cp in covered:
            continue
        delta = simple[cp] - cp
        # try stride 1 then stride 2, keep the longer run
        best = (cp, cp, 1, delta)
        for stride in (1, 2):
            end = cp
            nxt = cp + stride
            while nxt in simple and nxt not in covered and simple[nxt] - nxt == delta:
                end = nxt
                nxt += stride
            if end - cp > best[1] - best[0]:
                best = (cp, end, stride, delta)
        runs.append(best)
        covered.update(range(best[0], best[1] + 1, best[2]))
    return runs, multi


def fmt_pairs(pairs, per_line=6):
    lines = []
    for i in range(0, len(pairs), per_line):
        chunk = pairs[i : i + per_line]
        lines.append("    " + " ".join(f"{{{a:#x}, {b:#x}}}," for a, b in chunk))
    return "\n".join(lines)


def main():
    is_word = intervals(lambda cp: WORD_RE.match(chr(cp)) is not None)
    is_upper = intervals(lambda cp: chr(cp).isupper())
    is_space = intervals(lambda cp: chr(cp).isspace())
    runs, multi = lower_runs()

    with open("include/sarcbench/unicode_tables.hpp", "w", encoding="utf-8") as f:
        w = f.write
        w("// Generated by tools/gen_unicode_tables.py -- do not edit.\n")
        w(f"// Unicode data version: {unicodedata.unidata_version}\n")
        w("#pragma once\n\n")
        w("#include <cstdint>\n\n")
        w("namespace sarcbench::unicode_tables {\n\n")
        w("struct Interval { char32_t lo; char32_t hi; };\n")
        w("struct LowerRun { char32_t lo; char32_t hi; std::int32_t stride; std::int32_t delta; };\n")
        w("struct LowerMulti { char32_t cp; char32_t out[3]; std::int32_t n; };\n\n")

        w(f"inline constexpr Interval kWordChar[] = {{\n{fmt_pairs(is_word)}\n}};\n\n")
        w(f"inline constexpr Interval kUppercase[] = {{\n{fmt_pairs(is_upper)}\n}};\n\n")
        w(f"inline constexpr Interval kWhitespace[] = {{\n{fmt_pairs(is_space)}\n}};\n\n")

        w("inline constexpr LowerRun kLowerRuns[] = {\n")
        for lo, hi, stride, delta in runs:
            w(f"    {{{lo:#x}, {hi:#x}, {stride}, {delta}}},\n")
        w("};\n\n")

        w("inline constexpr LowerMulti kLowerMulti[] = {\n")
        for cp, outs in multi:
            padded = outs + [0] * (3 - len(outs))
            w(f"    {{{cp:#x}, {{{padded[0]:#x}, {padded[1]:#x}, {padded[2]:#x}}}, {len(outs)}}},\n")
        w("};\n\n")
        w("}  // namespace sarcbench::unicode_tables\n")

    sys.stderr.write(
        f"word={len(is_word)} upper={len(is_upper)} space={len(is_space)} "
        f"runs={len(runs)} multi={len(multi)}\n"
    )


if __name__ == "__main__":
    main()
