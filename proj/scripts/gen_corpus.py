#!/usr/bin/env python3
"""Regenerate the puzzle corpora under data/.

Puzzles are dug out of random solution grids with a small bitmask solver that
is independent of the C++ library. Output is fully determined by --seed.
"""

import argparse
import random
from pathlib import Path

ALL = 0x1FF

PEERS = []
for i in range(81):
    r, c = divmod(i, 9)
    b = (r // 3) * 3 + c // 3
    PEERS.append(
        sorted(
            {j for j in range(81) if j != i and (j // 9 == r or j % 9 == c or ((j // 9) // 3) * 3 + (j % 9) // 3 == b)}
        )
    )
UNITS = (
    [[r * 9 + c for c in range(9)] for r in range(9)]
    + [[r * 9 + c for r in range(9)] for c in range(9)]
    + [[(br * 3 + r) * 9 + bc * 3 + c for r in range(3) for c in range(3)] for br in range(3) for bc in range(3)]
)

FAMOUS = [
    ("platinum-blonde", ".......12........3..23..4....18....5.6..7.8.......9.....85.....9...4.5..47...6..."),
    ("golden-nugget", ".......39.....1..5..3.5.8....8.9...6.7...2...1..4.......9.8..5..2....6..4..7....."),
    ("easter-monster", "1.......2.9.4...5...6...7...5.9.3.......7.......85..4.7.....6...3...9.8...2.....1"),
    ("ai-escargot", "1....7.9..3..2...8..96..5....53..9...1..8...26....4...3......1..4......7..7...3.."),
    ("inkala", "8..........36......7..9.2...5...7.......457.....1...3...1....68..85...1..9....4.."),
    ("red-dwarf", "12.3....435....1....4........54..2..6...7.........8.9...31..5.......9.7.....6...8"),
]


def parse(s):
    return [0 if ch in ".0" else int(ch) for ch in s]


def render(g):
    return "".join("." if d == 0 else str(d) for d in g)


def allowed(g, i):
    used = 0
    for j in PEERS[i]:
        if g[j]:
            used |= 1 << (g[j] - 1)
    return ALL & ~used


def count_solutions(g, cap=2, rng=None, out=None):
    """Depth-first search with fewest-candidates cell choice."""
    g = list(g)
    found = 0

    def rec():
        nonlocal found
        best, best_mask, best_n = -1, 0, 10
        for i in range(81):
            if g[i] == 0:
                m = allowed(g, i)
                n = bin(m).count("1")
                if n < best_n:
                    best, best_mask, best_n = i, m, n
                    if n <= 1:
                        break
        if best < 0:
            found += 1
            if out is not None and not out:
                out.extend(g)
            return found >= cap
        digits = [d for d in range(1, 10) if best_mask >> (d - 1) & 1]
        if rng is not None:
            rng.shuffle(digits)
        for d in digits:
            g[best] = d
            if rec():
                return True
        g[best] = 0
        return False

    rec()
    return found


def random_solution(rng):
    out = []
    count_solutions([0] * 81, cap=1, rng=rng, out=out)
    return out


def singles_solvable(g):
    """True when naked and hidden singles alone complete the grid."""
    g = list(g)
    while True:
        progress = False
        for i in range(81):
            if g[i] == 0:
                m = allowed(g, i)
                if m == 0:
                    return False
                if m & (m - 1) == 0:
                    g[i] = m.bit_length()
                    progress = True
        for unit in UNITS:
            for d in range(1, 10):
                if any(g[i] == d for i in unit):
                    continue
                spots = [i for i in unit if g[i] == 0 and allowed(g, i) >> (d - 1) & 1]
                if len(spots) == 1:
                    g[spots[0]] = d
                    progress = True
        if all(g):
            return True
        if not progress:
            return False


def dig(solution, rng, keep_min, accept):
    g = list(solution)
    order = list(range(81))
    rng.shuffle(order)
    for i in order:
        if sum(1 for d in g if d) <= keep_min:
            break
        saved, g[i] = g[i], 0
        if not accept(g):
            g[i] = saved
    return g


def unique(g):
    return count_solutions(g, cap=2) == 1


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=20240521)
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "data")
    args = ap.parse_args()
    rng = random.Random(args.seed)
    args.out.mkdir(parents=True, exist_ok=True)

    # Mixed corpus: famous hard puzzles, minimal puzzles, and lightly dug ones.
    mixed = [(name, p) for name, p in FAMOUS]
    for n in range(94):
        sol = random_solution(rng)
        if n % 3 == 0:
            g = dig(sol, rng, 0, unique)
        elif n % 3 == 1:
            g = dig(sol, rng, rng.randint(28, 34), unique)
        else:
            g = dig(sol, rng, rng.randint(36, 44), singles_solvable)
        mixed.append((f"gen{n:03d}", render(g)))
    with open(args.out / "mixed100.csv", "w") as f:
        f.write("id,puzzle\n")
        for name, p in mixed:
            assert unique(parse(p)), name
            f.write(f"{name},{p}\n")

    # Puzzles that naked and hidden singles solve outright.
    with open(args.out / "singles30.txt", "w") as f:
        for _ in range(30):
            g = dig(random_solution(rng), rng, 0, singles_solvable)
            assert unique(g)
            f.write(render(g) + "\n")

    # Small labelled corpus: two sites, levels ranked easy to hard.
    levels = [("easy", 1, 40, singles_solvable), ("medium", 2, 30, unique), ("hard", 3, 0, unique)]
    with open(args.out / "labelled.csv", "w") as f:
        f.write("id,puzzle,website,level,rank\n")
        for site in ("site-a", "site-b"):
            for level, rank, keep, accept in levels:
                for k in range(2):
                    g = dig(random_solution(rng), rng, keep, accept)
                    f.write(f"{site}-{level}-{k},{render(g)},{site},{level},{rank}\n")

    # Five-puzzle corpus for the golden report.
    with open(args.out / "golden5.txt", "w") as f:
        picks = [mixed[i][1] for i in (6, 16, 24, 18, 3)]
        for rank, p in enumerate(picks, start=1):
            f.write(f"{p},{rank}\n")


if __name__ == "__main__":
    main()
