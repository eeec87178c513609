"""End-to-end acceptance checks, one per criterion, each under a wall-clock budget.

Run with ``pytest -v tests/test_acceptance.py``; each test prints one
``CRITERION n: PASS|FAIL`` line.  ``python tests/test_acceptance.py`` prints
the same lines without pytest.
"""

import sys
import time

import pytest

from permuta import suites
from permuta.corpus import criteria_corpus
from permuta.report import Item


def _all_groups_small_and_c_p():
    return suites.maschke_items() + suites.cyclic_radical_items((2, 3, 5)) + suites.radical_oracle_items(max_dim=8)


CRITERIA = {
    1: ("GL(2,2) and GL(2,3): permutable implies normal", 10, suites.small_gl_items),
    2: ("GL(3,2) and GL(2,4): permutable implies normal, normal subgroups contain SL", 300, suites.gl_items),
    3: ("negative controls in M16 and D(4)", 1, suites.control_items),
    4: ("six permutability criteria agree across the corpus", 120, suites.criteria_items),
    5: ("transvection identities for n <= 3 over all supported fields", 30, suites.generator_calculus_items),
    6: ("radical vanishing, cyclic radical dimension, oracle agreement", 120, _all_groups_small_and_c_p),
    7: ("unipotent group elements form O_p(G)", 120, suites.radical_intersection_items),
    8: ("F_p[G]/J commutative when G' is a p-group", 60, lambda: suites.quotient_commutativity_items(criteria_corpus(), (2, 3, 5, 7))),
    9: ("Magnus order, valuation and injectivity suite (seed 0)", 60, lambda: suites.magnus_items(seed=0)),
    10: ("preimages of permutable subgroups are permutable", 60, suites.pullback_items),
}


def evaluate(n: int) -> tuple[bool, str, list[Item]]:
    title, limit, build = CRITERIA[n]
    start = time.perf_counter()
    items = build()
    elapsed = time.perf_counter() - start
    passed = bool(items) and all(it.verdict is not False for it in items) and elapsed < limit
    line = f"CRITERION {n}: {'PASS' if passed else 'FAIL'}  {title}  [{len(items)} items, {elapsed:.2f} s / {limit} s]"
    return passed, line, items


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    passed, line, items = evaluate(n)
    with capsys.disabled():
        print("\n" + line)
    failing = [f"{it.name}: {it.details}" for it in items if it.verdict is False]
    assert passed, "\n".join([line, *failing])


if __name__ == "__main__":
    results = [evaluate(n) for n in sorted(CRITERIA)]
    for _, line, _ in results:
        print(line)
    sys.exit(0 if all(ok for ok, _, _ in results) else 1)
