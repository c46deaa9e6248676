"""Wie-length of random Ginibre systems against the counting and generic bounds."""

from _common import drive

from wielandt.lab import ExperimentKind

if __name__ == "__main__":
    drive(ExperimentKind.WIE_SCALING, list(range(2, 17)), [2, 3], 10, __doc__, "results/wie_scaling")
