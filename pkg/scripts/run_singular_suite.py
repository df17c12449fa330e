#!/usr/bin/env python3
"""Verify every explicit singular vector, printing one line per case.

Exit status 0 when all vectors verify (capped cases count as skipped),
1 otherwise.
"""

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from vkg.liealg import build_realization
from vkg.pbw import CapExceededError, is_singular
from vkg.vectors import (
    DEFAULT_COMPONENT_CAP,
    build_v_n,
    build_vE7,
    build_w1_B,
    build_w1_D,
    build_w3_D4,
    build_w_n,
    theta_image,
)

CAP = DEFAULT_COMPONENT_CAP


def cases():
    for l in (4, 5, 6):
        lr = build_realization("D", l)
        yield f"w1   D{l} level -2", lr, lambda lr=lr: build_w1_D(lr)
    lr4 = build_realization("D", 4)
    yield "w3   D4 level -2", lr4, lambda: build_w3_D4(lr4)
    for l, n in [(4, 1), (4, 2), (5, 1), (5, 2), (6, 1), (6, 3)]:
        lr = build_realization("D", l)
        yield (f"v_{n}  D{l} level {n - l + 1}", lr,
               lambda lr=lr, n=n: build_v_n(lr, n, cap=CAP))
    for half_l, n in [(2, 1), (2, 2), (3, 1)]:
        lr = build_realization("D", 2 * half_l)
        yield (f"w_{n}  D{2 * half_l} level {n - 2 * half_l + 1}", lr,
               lambda lr=lr, n=n: build_w_n(lr, n, cap=CAP))
    for l in (4, 6):
        lr = build_realization("D", l)
        yield (f"t(w1) D{l} level {2 - l}", lr,
               lambda lr=lr: theta_image(lr, build_w_n(lr, 1)))
    for l in (2, 3, 4):
        lr = build_realization("B", l)
        yield f"w1   B{l} level -2", lr, lambda lr=lr: build_w1_B(lr)
    lr7 = build_realization("E", 7)
    yield "vE7  E7 level -4", lr7, lambda: build_vE7(lr7)


def main() -> int:
    failures = 0
    t0 = time.monotonic()
    for name, lr, builder in cases():
        start = time.monotonic()
        try:
            v = builder()
        except CapExceededError as exc:
            print(f"{name:<24} capped ({exc})")
            continue
        ok, witness = is_singular(lr, v)
        dt = time.monotonic() - start
        status = "singular" if ok else "NOT SINGULAR"
        print(f"{name:<24} {status}  support {v.support_size():>3}  "
              f"degree {v.degree}  [{dt:.2f}s]")
        if not ok:
            failures += 1
            print(f"    witness generator: {witness[0]}")
    print(f"total {time.monotonic() - t0:.1f}s, failures: {failures}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
