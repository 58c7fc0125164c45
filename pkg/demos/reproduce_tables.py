"""Regenerate the published simulation tables at 10,000 replicates.

Tables 1 and 2 give upper 5% points of I_P for p = (1/3, 1/3, 1/3) and
p = (3/6, 1/6, 2/6). Tables 5 and 6 do the same for I_N and set them
beside the normal approximation. Each row prints the published value, our
value and the difference. Rows with n = 20 in Tables 5 and 6 carry a flag:
I_N depends on (M, n) only through nM, so (5, 20) and (20, 5) must agree,
and the published rows do not.

Run with ``python3 demos/reproduce_tables.py [seed]``. The whole sweep takes
a few seconds.
"""

import sys
import time

from ordanova.reproduce import run, to_markdown


def main(seed=0):
    titles = {
        "table1": "I_P, case a (consistent dof)",
        "table2": "I_P, case b (consistent dof)",
        "table5": "I_N, case a: simulation and normal approximation",
        "table6": "I_N, case b: simulation and normal approximation",
        "chi2": "I_P for two categories against chi2/(M-1)",
    }
    for target, title in titles.items():
        start = time.perf_counter()
        rows = run(target, seed=seed)
        print(f"### {target}: {title}  ({time.perf_counter() - start:.1f} s, seed {seed})\n")
        print(to_markdown(rows))


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 0)
