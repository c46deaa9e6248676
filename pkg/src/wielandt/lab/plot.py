"""Static SVG scaling plots (matplotlib, Agg backend, never displayed)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .experiment import per_n_stats  # noqa: E402

# fixed salt and no date stamp keep the SVG byte-stable for equal input
_RC = {"svg.hashsalt": "wielandt", "svg.fonttype": "path"}


def emit_plot(rows, path, title: str | None = None, log_x: bool = False) -> None:
    path = Path(path)
    stats = per_n_stats(rows)
    bounds: dict[int, tuple[int, int]] = {}
    for r in rows:
        lo, hi = bounds.get(r.n, (r.lower_bound, r.upper_bound_generic))
        bounds[r.n] = (min(lo, r.lower_bound), max(hi, r.upper_bound_generic))
    ns = sorted(bounds)

    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(6, 4))
        try:
            if ns:
                ax.plot(ns, [bounds[n][0] for n in ns], "--", color="tab:blue", label="counting lower bound")
                ax.plot(ns, [bounds[n][1] for n in ns], "--", color="tab:red", label="generic upper bound")
            if stats:
                xs = list(stats)
                lo = [s[0] for s in stats.values()]
                med = [s[1] for s in stats.values()]
                hi = [s[2] for s in stats.values()]
                ax.vlines(xs, lo, hi, color="black", lw=1)
                ax.plot(xs, med, "o-", color="black", label="observed (median)")
                ax.plot(xs, lo, "v", color="gray", label="min")
                ax.plot(xs, hi, "^", color="gray", label="max")
            if log_x:
                ax.set_xscale("log")
            if len(ns) == 1:
                ax.set_xlim(ns[0] - 1, ns[0] + 1)
            ax.set_xlabel("n")
            ax.set_ylabel("observed length")
            if title:
                ax.set_title(title)
            ax.legend(loc="upper left", fontsize="small")
            fig.tight_layout()
            try:
                fig.savefig(path, format="svg", metadata={"Date": None})
            except OSError as exc:
                raise OSError(f"{path}: {exc.strerror or exc}") from exc
        finally:
            plt.close(fig)
