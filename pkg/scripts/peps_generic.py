"""Smallest injective region side for random 2-D PEPS tensors (n = 2)."""

from _common import drive

from wielandt.lab import ExperimentKind

if __name__ == "__main__":
    drive(ExperimentKind.PEPS_GENERIC, [2], [4, 5, 8, 16], 10, __doc__, "results/peps_generic")
