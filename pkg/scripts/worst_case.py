"""Wie-length of the shift/rank-one worst-case pair, against the generic bound."""

from _common import drive

from wielandt.lab import ExperimentKind

if __name__ == "__main__":
    drive(ExperimentKind.WORST_CASE, list(range(2, 11)), [2], 1, __doc__, "results/worst_case")
