"""Index of eventual full Kraus rank of Haar-random channels."""

from _common import drive

from wielandt.lab import ExperimentKind

if __name__ == "__main__":
    drive(ExperimentKind.CHANNEL_SCALING, list(range(2, 11)), [2, 3, 4], 10, __doc__, "results/channel_scaling")
