"""Nilpotent products of cyclic groups, their Baer invariants and covering groups."""

from ._core import (
    BoundsError,
    baer_invariant,
    basis,
    decide,
    nilpotent_product,
    run_cli,
    verify_cover,
    witt_rank,
)

__all__ = [
    "BoundsError",
    "baer_invariant",
    "basis",
    "decide",
    "nilpotent_product",
    "run_cli",
    "verify_cover",
    "witt_rank",
    "main",
]


def main(argv=None):
    """Entry point of the ``nilcover`` console script."""
    import sys

    code, out, err = run_cli(list(sys.argv[1:] if argv is None else argv))
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code
