#!/usr/bin/env python3
"""Reference exponents k for the three lower bounds, each of the form 2^-k.

For a bound 1/N with integer N, k = ceil(log2 N): the largest power of two
not exceeding 1/N. Everything here is plain Python integer arithmetic.
"""

import argparse
import json

E7_UPPER = 1097  # e^7 < 1097


def ceil_log2(n: int) -> int:
    return n.bit_length() - (1 if n & (n - 1) == 0 else 0)


def ev_den(d: int, L: int) -> int:
    a = (d**6 * 2 ** (L + 2 * d + 11)) ** (d * d - 1)
    b = (d ** (3 * d + 8) * 2 ** (3 * L + 5 * d)) ** d
    return max(a, b)


def delta3_den(d: int, L: int) -> int:
    a = (16 ** (d + 2) * 256**L * 81 ** (2 * d) * d**5) ** d
    b = (2 ** (8 * L + 21) * 3 ** (8 * d)) ** 2
    return max(a, b)


def delta4_den(d: int, L: int) -> int:
    c = 36 * E7_UPPER
    h = 256 * 6 * d * 2 ** (L + 1)
    a = c ** (30 * d**5) * h ** (5 * d**4)
    b = c ** (30 * 2**5) * h ** (5 * 2**4)
    return max(a, b)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--degrees", default="2,4,8")
    ap.add_argument("--heights", default="2,8,16")
    args = ap.parse_args()
    rows = []
    for d in map(int, args.degrees.split(",")):
        for L in map(int, args.heights.split(",")):
            rows.append(
                {
                    "d": d,
                    "L": L,
                    "ev": ceil_log2(ev_den(d, L)),
                    "delta3": ceil_log2(delta3_den(d, L)),
                    "delta4": ceil_log2(delta4_den(d, L)),
                }
            )
    print(json.dumps(rows, indent=1))


if __name__ == "__main__":
    main()
