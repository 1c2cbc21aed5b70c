#!/usr/bin/env python3
"""Generate the checked-in test fixtures.

Outputs (under tests/fixtures/):
  sarc_fixture.tsv      200-line, 10-column TSV corpus, balanced labels,
                        a few whitespace-only texts, accented characters
  sarc_fixture.tsv.bz2  bzip2 copy of the same bytes
  bz2_multiblock.bz2    >250 KB formula text at compresslevel 1 (multi-block)
  bz2_empty.bz2         compression of the empty string
  bz2_corrupt.bz2       sarc_fixture.tsv.bz2 with one flipped payload byte
  bz2_random.bz2        64 KB of splitmix64 bytes (seed 7)

The multiblock and random payloads are reproducible by formula so the C++
tests regenerate the expected plaintext instead of shipping it.
"""

import bz2
import pathlib
import random

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"

MASK = (1 << 64) - 1


def splitmix64_stream(seed, count):
    state = seed & MASK
    for _ in range(count):
        state = (state + 0x9E3779B97F4A7C15) & MASK
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        yield (z ^ (z >> 31)) & MASK


PLAIN_OPENERS = [
    "I think the new update is",
    "The article says the measure was",
    "Honestly the game felt",
    "My commute this morning was",
    "The documentation here is",
    "That recipe turned out",
    "The meeting today was",
    "Her explanation of the bug was",
    "The weather forecast looks",
    "This library's API is",
]

PLAIN_CLOSERS = [
    "pretty reasonable overall.",
    "fine once you read the context.",
    "better than I expected.",
    "a bit slow but it works.",
    "clear and well organized.",
    "worth the effort in the end.",
    "about average for this subreddit.",
    "solid, no complaints from me.",
    "useful for beginners too.",
    "exactly what the changelog promised.",
]

SARCASTIC_OPENERS = [
    "Oh sure, because",
    "Yeah right, as if",
    "WOW, what a surprise that",
    "Oh great, another",
    "Totally shocked that",
    "Because OBVIOUSLY",
    "Wow!! Who knew",
    "Oh fantastic, now",
    "Sure, I bet",
    "AMAZING, truly groundbreaking that",
]

SARCASTIC_CLOSERS = [
    "that always works out great, right?",
    "nothing could possibly go wrong!",
    "what a brilliant plan!!",
    "clearly the experts know best?",
    "I'm SO impressed.",
    "my favorite thing ever!",
    "said no one ever.",
    "genius move, really?!",
    "can't wait for the sequel!!",
    "such a shocker, truly.",
]

MIDDLES = [
    "the committee",
    "the patch notes",
    "our landlord",
    "the café downtown",
    "the naïve approach",
    "the séance scene",
    "El Niño coverage",
    "the resumé filter",
    "the piñata budget",
    "the Zürich office",
    "the jalapeño special",
    "the new intern",
    "the quarterly report",
    "the parking garage",
    "the soufflé recipe",
]

SUBREDDITS = ["news", "gaming", "movies", "AskReddit", "politics", "worldnews", "funny"]
AUTHORS = ["quietbadger", "lemontree88", "nightowl_42", "papercrane", "mossboat", "tinfoilhat9"]

WHITESPACE_TEXTS = ["   ", "  ", " 　 ", "  ", "   ", "    "]


def build_corpus():
    rng = random.Random(20240817)
    rows = []
    # 100 rows per label; rows 30, 61, 95 (plain) and 130, 161, 195
    # (sarcastic) get whitespace-only texts. Twelve rows per side carry
    # the other side's label (label noise, balance preserved) so fixture
    # metrics land strictly inside (0, 1).
    blank_slots = {30, 61, 95, 130, 161, 195}
    noise_slots = set(range(4, 100, 8)) | set(range(108, 200, 8))
    assert not (blank_slots & noise_slots)
    for i in range(200):
        label = 0 if i < 100 else 1
        style = label
        if i in noise_slots:
            label = 1 - label
        if i in blank_slots:
            text = WHITESPACE_TEXTS[sorted(blank_slots).index(i)]
        elif style == 0:
            text = " ".join(
                [rng.choice(PLAIN_OPENERS), rng.choice(MIDDLES), rng.choice(PLAIN_CLOSERS)]
            )
        else:
            text = " ".join(
                [
                    rng.choice(SARCASTIC_OPENERS),
                    rng.choice(MIDDLES),
                    rng.choice(SARCASTIC_CLOSERS),
                ]
            )
        author = rng.choice(AUTHORS)
        subreddit = rng.choice(SUBREDDITS)
        score = rng.randint(-5, 120)
        ups = max(score, 0) + rng.randint(0, 10)
        downs = ups - score
        date = f"2016-{rng.randint(1, 12):02d}"
        created = 1451606400 + rng.randint(0, 31_000_000)
        parent = " ".join(rng.sample(MIDDLES, 2))
        rows.append(
            "\t".join(
                [
                    str(label),
                    author,
                    subreddit,
                    str(score),
                    str(ups),
                    str(downs),
                    date,
                    str(created),
                    parent,
                    text,
                ]
            )
        )
    rng.shuffle(rows)
    return "\n".join(rows) + "\n"


def multiblock_payload():
    lines = []
    for i in range(4000):
        lines.append(
            f"block stress line {i:06d}: the quick brown fox jumps over the lazy dog {i * 7}\n"
        )
    return "".join(lines).encode()


def random_payload():
    out = bytearray()
    for word in splitmix64_stream(7, 8192):
        out += word.to_bytes(8, "little")
    return bytes(out)


def main():
    OUT.mkdir(parents=True, exist_ok=True)

    corpus = build_corpus().encode()
    (OUT / "sarc_fixture.tsv").write_bytes(corpus)
    compressed = bz2.compress(corpus, 9)
    (OUT / "sarc_fixture.tsv.bz2").write_bytes(compressed)

    mb = multiblock_payload()
    assert len(mb) > 250_000
    (OUT / "bz2_multiblock.bz2").write_bytes(bz2.compress(mb, 1))

    (OUT / "bz2_empty.bz2").write_bytes(bz2.compress(b"", 9))

    corrupt = bytearray(compressed)
    corrupt[100] ^= 0x55
    (OUT / "bz2_corrupt.bz2").write_bytes(bytes(corrupt))

    (OUT / "bz2_random.bz2").write_bytes(bz2.compress(random_payload(), 9))

    print(f"wrote fixtures to {OUT}")


if __name__ == "__main__":
    main()
