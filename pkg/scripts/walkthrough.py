#!/usr/bin/env python3
"""End-to-end tour of the library on the bundled seeds.

Prints every major object the package computes, in dependency order:
the seed files, the divisor-scaled matrix and its quiver, matrix and
seed mutation, the unfolded matrix with its block-structure witnesses,
root adjoining with the generalized coefficient rows, and the quotient
images of the cluster variables.  Everything here is recomputed from
the definitions; nothing is read from stored outputs.
"""

import argparse

from gencluster.cli_io import _seed_text
from gencluster.fixtures import fixture_seed
from gencluster.gca_seed import exchange_polynomial, mutate_seed
from gencluster.matrix_mutation import modify, mutate, write_matrix
from gencluster.quiver import from_matrix, write_quiver
from gencluster.quotient_embedding import QuotientContext, phi
from gencluster.root_adjoin import rho, tau_tilde, tau_variable
from gencluster.unfolding import build, double_constant_check, group_mutate


def show(title, text):
    print(f"== {title} ==")
    print(text if text.endswith("\n") else text + "\n", end="")
    print()


def tour_matrices():
    seed = fixture_seed("FIX-A")
    show("FIX-A seed file", _seed_text(seed))
    modified = modify(seed.matrix, seed.divisors)
    show("FIX-A divisor-scaled matrix", write_matrix(modified))
    show(
        "FIX-A quiver",
        write_quiver(
            from_matrix(modified, seed.divisors, names=("x1", "x2"))
        ),
    )
    show("mutation at 1: plain matrix", write_matrix(mutate(seed.matrix, 0)))

    fm = build(seed)
    show("FIX-A unfolded matrix", write_matrix(fm.matrix))
    after = group_mutate(fm, 0)
    show("unfolded matrix after group mutation 1", write_matrix(after.matrix))
    witness = double_constant_check(group_mutate(after, 1))
    show(
        "double-constant witness after groups 1,2",
        f"a = {witness.a}\nc = {witness.c}\nalpha = {witness.alpha}\n",
    )


def tour_exchange():
    seed = fixture_seed("FIX-B")
    for k, name in ((0, "x"), (1, "y")):
        show(f"FIX-B exchange polynomial at {name}", str(exchange_polynomial(seed, k)))
    adjoined = tau_tilde(seed)
    for k, name in ((0, "x"), (1, "y")):
        show(
            f"FIX-B adjoined exchange polynomial at {name}",
            str(exchange_polynomial(adjoined.seed, k)),
        )
        show(f"FIX-B carrier monomial at {name}", str(tau_variable(adjoined.seed, k)))
    show(
        "FIX-B generalized coefficient rows",
        "\n".join(
            "  ".join(str(entry) for entry in row) for row in rho(adjoined.seed).rows
        )
        + "\n",
    )
    mutated = mutate_seed(seed, 0)
    show("FIX-B cluster entry x after mutation at x", str(mutated.cluster[0]))


def tour_quotient():
    seed = fixture_seed("FIX-C")
    ctx = QuotientContext.create(seed)
    show("FIX-C folded matrix", write_matrix(ctx.fs.folded.matrix))
    image = phi(ctx.adjoined, 0, ctx.fs)
    show("FIX-C image of x under the embedding", str(image))
    ctx = ctx.mutate(0)
    image = phi(ctx.adjoined, 0, ctx.fs)
    show("FIX-C image of x' after one mutation", str(image))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.parse_args()
    tour_matrices()
    tour_exchange()
    tour_quotient()


if __name__ == "__main__":
    main()
