"""Figure rendering for recorded trajectories.

Figures are rendered with matplotlib to whatever format the output suffix
selects; the CLI uses SVG. Output is deterministic for fixed input: the
SVG hash salt is pinned and the date metadata stripped, so re-rendering
the same series reproduces the file byte for byte.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .dynamics import TimeSeries

matplotlib.rcParams["svg.hashsalt"] = "spinfreeze"


def render_timeseries(series: TimeSeries, path: str, title: str = "") -> None:
    """Population traces (and the discord trace, when present) to a file.

    One line per population column, labeled and tagged with a stable
    ``trace_<column>`` group id; legend labels match the CSV columns.
    """
    has_discord = series.discord is not None
    if has_discord:
        fig, (ax, ax_d) = plt.subplots(
            2, 1, figsize=(8.0, 6.0), sharex=True, constrained_layout=True
        )
    else:
        fig, ax = plt.subplots(figsize=(8.0, 4.0), constrained_layout=True)

    n_points = len(series.times)
    if n_points > 0:
        for j, label in enumerate(series.basis_labels):
            name = f"P_{label}"
            (line,) = ax.plot(series.times, series.populations[:, j], lw=1.2, label=name)
            line.set_gid(f"trace_{name}")
        ax.legend(loc="upper right", fontsize=8, ncol=2)
        ax.set_xlim(series.times[0], max(series.times[-1], series.times[0] + 1e-12))
    ax.set_ylabel("population")
    ax.set_ylim(-0.05, 1.05)
    ax.grid(True, alpha=0.3)
    if title:
        ax.set_title(title)

    if has_discord:
        (line,) = ax_d.plot(series.discord_times, series.discord, lw=1.2, color="tab:red",
                            label="discord")
        line.set_gid("trace_discord")
        ax_d.set_ylabel("discord")
        ax_d.set_xlabel("t (us)")
        ax_d.grid(True, alpha=0.3)
        ax_d.legend(loc="upper right", fontsize=8)
    else:
        ax.set_xlabel("t (us)")

    fig.savefig(path, metadata=_deterministic_metadata(path))
    plt.close(fig)


def _deterministic_metadata(path: str) -> dict | None:
    if str(path).endswith(".svg"):
        return {"Date": None}
    if str(path).endswith(".png"):
        return {"Software": None}
    return None
