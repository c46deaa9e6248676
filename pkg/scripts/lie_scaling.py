"""Lie-length of random su(n) pairs over n, with the Witt counting bound."""

from _common import drive

from wielandt.lab import ExperimentKind

if __name__ == "__main__":
    drive(ExperimentKind.LIE_SCALING, list(range(2, 21)), [2], 5, __doc__, "results/lie_scaling")
