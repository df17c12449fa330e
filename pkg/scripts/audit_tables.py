#!/usr/bin/env python3
"""Recompute the minimal-grading and collapsing-level tables and diff them
against the stored rows.  Exit status 1 when any row mismatches.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from vkg.collapsing import DEFAULT_AUDIT_ALGEBRAS, table1_audit, table5_audit
from vkg.serialize import frac_str


def main() -> int:
    t1 = table1_audit(DEFAULT_AUDIT_ALGEBRAS)
    print("minimal-grading rows:")
    for r in t1:
        mark = "ok " if r["ok"] else "BAD"
        print(f"  [{mark}] {r['algebra']:>7}  h^v={frac_str(r['h_dual'])}  "
              f"g_nat={'+'.join(r['components']) or 'center only'}  "
              f"center={r['center_dim']}  dim(g_1/2)={r['dim_g_half']}")
    t5 = table5_audit()
    print("collapsing rows:")
    for r in t5:
        mark = "ok " if r["ok"] else "BAD"
        print(f"  [{mark}] {r['algebra']:>7}  k={frac_str(r['k']):>6}  ->  "
              f"{r['stored']['target']:>7}  k'={frac_str(r['stored']['k_prime'])}")
    bad = [r for r in t1 if not r["ok"]] + [r for r in t5 if not r["ok"]]
    print(f"rows audited: {len(t1) + len(t5)}, failures: {len(bad)}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
