#!/usr/bin/env python3
"""Regenerates the embedded English stop-word list (tag: en-classic-318 v1).

The list is the classic 318-entry Glasgow IR English stop list. Writes
resources/stopwords_en_v1.txt (one word per line) and the embedded header
include/sarcbench/stopwords.hpp. Run from the repository root.
"""

from sklearn.feature_extraction.text import ENGLISH_STOP_WORDS

words = sorted(ENGLISH_STOP_WORDS)
assert len(words) == 318

with open("resources/stopwords_en_v1.txt", "w", encoding="ascii") as f:
    for w in words:
        f.write(w + "\n")

with open("include/sarcbench/stopwords.hpp", "w", encoding="ascii") as f:
    f.write("// Generated by tools/gen_stopwords.py -- do not edit.\n")
    f.write("// English stop-word list, tag en-classic-318 v1 (318 entries).\n")
    f.write("#pragma once\n\n#include <string_view>\n\n")
    f.write("namespace sarcbench {\n\n")
    f.write("inline constexpr std::string_view kEnglishStopWords[] = {\n")
    for i in range(0, len(words), 6):
        f.write("    " + " ".join(f'"{w}",' for w in words[i : i + 6]) + "\n")
    f.write("};\n\n}  // namespace sarcbench\n")

print(f"wrote {len(words)} stop words")
