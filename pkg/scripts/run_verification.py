#!/usr/bin/env python3
"""Run the full verification battery and report per-suite timing.

Covers every preserved condition the library asserts: mutation
involution and coefficient-string legality, Laurent exactness over deep
random walks, block constancy (Hadamard) and the double-constant shape
of the unfolded matrix at every prefix, the coefficient product
formula, the embedding conditions, the subquotient realization, and the
root-extraction/homogeneity form of the exchange polynomials on
adjoined seeds.  Exits nonzero if any suite fails.
"""

import argparse
import random
import time

from gencluster.fixtures import FIXTURE_NAMES, fixture_seed
from gencluster.gca_seed import mutate_seed, root_formula_check
from gencluster.matrix_mutation import mutate_sequence
from gencluster.quotient_embedding import (
    embedding_check,
    product_formula_suite,
    subquotient_check,
)
from gencluster.randomgen import random_seed, random_sequence
from gencluster.root_adjoin import homogeneity_check, tau_tilde
from gencluster.unfolding import (
    build,
    double_constant_check,
    group_mutate,
    hadamard_check,
)


def suite_involution(rng, cases):
    for _ in range(cases):
        seed = random_seed(rng)
        k = rng.randrange(seed.matrix.n)
        back = mutate_seed(mutate_seed(seed, k), k)
        assert back.matrix == seed.matrix
        assert back.cluster == seed.cluster
        assert back.strings == seed.strings
        for i, row in enumerate(back.strings.rows):
            assert row[0].is_one() and row[-1].is_one(), i


def suite_laurent(rng, cases, depth):
    for _ in range(cases):
        seed = random_seed(rng)
        for k in random_sequence(rng, seed.matrix.n, depth):
            seed = mutate_seed(seed, k)


def suite_block_constancy(rng, cases, depth):
    for _ in range(cases):
        seed = random_seed(rng)
        fm = build(seed)
        reference = seed.matrix
        double_constant_check(fm)
        assert hadamard_check(fm, reference, seed.divisors).ok
        for k in random_sequence(rng, seed.matrix.n, depth):
            fm = group_mutate(fm, k)
            reference = mutate_sequence(reference, (k,))
            double_constant_check(fm)
            assert hadamard_check(fm, reference, seed.divisors).ok


def suite_product_formula(rng, cases, depth):
    for name in FIXTURE_NAMES:
        seed = fixture_seed(name)
        report = product_formula_suite(seed, (0,) * depth)
        assert report.ok, (name, report.failures)
    for _ in range(cases):
        seed = random_seed(rng)
        sequence = random_sequence(rng, seed.matrix.n, depth)
        report = product_formula_suite(seed, sequence)
        assert report.ok, report.failures


def suite_embedding():
    for sequence in [(), (0,), (0, 0), (0,) * 6]:
        report = embedding_check(fixture_seed("FIX-C"), sequence)
        assert report.ok, report.failures
    sequences = [()]
    for _ in range(3):
        sequences = [s + (k,) for s in sequences for k in range(2)]
    for sequence in sequences:
        report = embedding_check(fixture_seed("FIX-B"), sequence)
        assert report.ok, report.failures


def suite_subquotient():
    for name in FIXTURE_NAMES:
        report = subquotient_check(fixture_seed(name))
        assert report.ok, (name, report.failures)


def suite_root_homogeneity(rng, cases, depth):
    for name in FIXTURE_NAMES:
        seed = fixture_seed(name)
        for k in range(seed.matrix.n):
            assert root_formula_check(seed, k).ok
    for _ in range(cases):
        seed = random_seed(rng)
        adjoined = tau_tilde(seed)
        current = adjoined.seed
        for k in random_sequence(rng, seed.matrix.n, depth):
            current = mutate_seed(current, k)
        for k in range(seed.matrix.n):
            assert root_formula_check(current, k).ok
            homogeneity_check(current, k)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--cases", type=int, default=200)
    parser.add_argument("--depth", type=int, default=6)
    parser.add_argument("--rng-seed", type=int, default=0)
    args = parser.parse_args()

    suites = [
        ("involution", lambda r: suite_involution(r, args.cases)),
        ("laurent", lambda r: suite_laurent(r, args.cases, args.depth)),
        (
            "hadamard+double-constant",
            lambda r: suite_block_constancy(r, args.cases, min(args.depth, 5)),
        ),
        (
            "product-formula",
            lambda r: suite_product_formula(r, args.cases // 4, min(args.depth, 4)),
        ),
        ("embedding", lambda r: suite_embedding()),
        ("subquotient", lambda r: suite_subquotient()),
        (
            "root+homogeneity",
            lambda r: suite_root_homogeneity(r, args.cases // 2, min(args.depth, 4)),
        ),
    ]
    failed = False
    for name, run in suites:
        rng = random.Random(args.rng_seed)
        start = time.perf_counter()
        try:
            run(rng)
        except Exception as exc:  # report and keep going
            failed = True
            print(f"FAIL {name}: {type(exc).__name__}: {exc}")
            continue
        print(f"PASS {name} ({time.perf_counter() - start:.2f}s)")
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
